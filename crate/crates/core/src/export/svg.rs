//! Standalone SVG output. The animated form drives each stub tip with
//! declarative `<animate>` elements; no scripts.

use std::fmt::Write;

use crate::geometry::{point_at, Point};
use crate::graphgen::{LayoutGraph, NodeId};
use crate::scheduler::Schedule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RenderMode {
    /// Stubs morph over the schedule's period, repeating indefinitely.
    #[default]
    Animated,
    /// The rest frame: every edge drawn as a pair of stubs of ratio `delta`.
    StaticPed,
    /// Every edge drawn completely.
    StaticCed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    pub stroke: String,
    pub stroke_width: f64,
    pub node_fill: String,
    pub node_radius: f64,
    pub highlight_fill: String,
    pub highlighted: Vec<NodeId>,
    pub background: Option<String>,
    /// Padding around the bounding box of the nodes.
    pub margin: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            stroke: "#333333".into(),
            stroke_width: 1.5,
            node_fill: "#1f1f1f".into(),
            node_radius: 4.0,
            highlight_fill: "#ff8c00".into(),
            highlighted: Vec::new(),
            background: Some("#ffffff".into()),
            margin: 10.0,
        }
    }
}

fn line(out: &mut String, edge: usize, stub: usize, from: Point, to: Point) {
    let _ = write!(
        out,
        r#"<line data-edge="{edge}" data-stub="{stub}" x1="{}" y1="{}" x2="{}" y2="{}""#,
        from.x, from.y, to.x, to.y
    );
}

fn animate(out: &mut String, attr: &str, dur: f64, key_times: &str, values: &[f64]) {
    let values: Vec<String> = values.iter().map(f64::to_string).collect();
    let _ = write!(
        out,
        r#"<animate attributeName="{attr}" dur="{dur}s" repeatCount="indefinite" calcMode="linear" keyTimes="{key_times}" values="{}"/>"#,
        values.join(";")
    );
}

/// Keyframes `(fraction of period, stub-edge ratio)` for one edge: rest,
/// rise to `eta`, fall back to rest, with flat segments before and after.
fn keyframes(t_s: f64, d1: f64, period: f64, delta: f64, eta: f64) -> Vec<(f64, f64)> {
    let mut keys = Vec::with_capacity(5);
    if t_s > 0.0 {
        keys.push((0.0, delta));
    }
    keys.push((t_s / period, delta));
    keys.push(((t_s + d1) / period, eta));
    let end = (t_s + 2.0 * d1) / period;
    keys.push((end, delta));
    if end < 1.0 {
        keys.push((1.0, delta));
    }
    keys
}

pub fn export_svg(
    layout: &LayoutGraph,
    schedule: &Schedule,
    mode: RenderMode,
    style: &SvgStyle,
) -> Vec<u8> {
    let params = &schedule.params;
    let mode = match mode {
        RenderMode::Animated if params.delta >= params.eta || schedule.period <= 0.0 => {
            RenderMode::StaticCed
        }
        m => m,
    };

    let pos = layout.positions();
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in pos {
        min_x = min_x.min(p.x);
        min_y = min_y.min(p.y);
        max_x = max_x.max(p.x);
        max_y = max_y.max(p.y);
    }
    let pad = style.margin + style.node_radius;
    let (x0, y0) = (min_x - pad, min_y - pad);
    let (w, h) = (max_x - min_x + 2.0 * pad, max_y - min_y + 2.0 * pad);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="{x0} {y0} {w} {h}">"#
    );
    if let Some(bg) = &style.background {
        let _ = writeln!(
            out,
            r#"<rect x="{x0}" y="{y0}" width="{w}" height="{h}" fill="{bg}"/>"#
        );
    }
    let _ = writeln!(
        out,
        r#"<g class="edges" stroke="{}" stroke-width="{}" stroke-linecap="round">"#,
        style.stroke, style.stroke_width
    );
    for (e, seg) in layout.segments().enumerate() {
        match mode {
            RenderMode::StaticCed => {
                line(&mut out, e, 0, seg.a, seg.b);
                out.push_str("/>\n");
            }
            RenderMode::StaticPed => {
                line(&mut out, e, 0, seg.a, point_at(&seg, params.delta));
                out.push_str("/>\n");
                line(&mut out, e, 1, seg.b, point_at(&seg, 1.0 - params.delta));
                out.push_str("/>\n");
            }
            RenderMode::Animated => {
                let m = &schedule.motions[e];
                let keys = keyframes(m.t_s, m.d1, schedule.period, params.delta, params.eta);
                let key_times: Vec<String> = keys.iter().map(|k| k.0.to_string()).collect();
                let key_times = key_times.join(";");
                for (stub, anchor) in [(0, seg.a), (1, seg.b)] {
                    let tip = |r: f64| point_at(&seg, if stub == 0 { r } else { 1.0 - r });
                    let rest = tip(params.delta);
                    line(&mut out, e, stub, anchor, rest);
                    out.push('>');
                    let xs: Vec<f64> = keys.iter().map(|k| tip(k.1).x).collect();
                    let ys: Vec<f64> = keys.iter().map(|k| tip(k.1).y).collect();
                    animate(&mut out, "x2", schedule.period, &key_times, &xs);
                    animate(&mut out, "y2", schedule.period, &key_times, &ys);
                    out.push_str("</line>\n");
                }
            }
        }
    }
    out.push_str("</g>\n<g class=\"nodes\">\n");
    for (v, p) in pos.iter().enumerate() {
        let fill = if style.highlighted.contains(&v) {
            &style.highlight_fill
        } else {
            &style.node_fill
        };
        let _ = writeln!(
            out,
            r#"<circle data-node="{v}" cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
            p.x, p.y, style.node_radius
        );
    }
    out.push_str("</g>\n</svg>\n");
    out.into_bytes()
}
