//! Serialization of schedules: a JSON timeline and standalone SVG documents.

mod svg;
mod timeline;

pub use svg::{export_svg, RenderMode, SvgStyle};
pub use timeline::{export_timeline_json, parse_timeline, ParamsRecord, Timeline, TrackRecord};
