//! Timeline JSON:
//!
//! ```json
//! {"period_s": P,
//!  "params": {"delta": .., "eta": .., "speed": .., "min_travel_s": ..},
//!  "tracks": [{"edge": 0, "length": .., "eff_speed": .., "t_s": .., "d1": ..}],
//!  "groups": [[0, 3], [1], ...]}
//! ```
//!
//! Numbers use the shortest representation that parses back to the same
//! `f64`, so a timeline reloads bit-exactly.

use serde::{Deserialize, Serialize};

use crate::error::{MedError, Result};
use crate::graphgen::{EdgeId, LayoutGraph};
use crate::scheduler::{crossing_catalog, EdgeMotion, MorphParams, MorphingGroup, Schedule};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsRecord {
    pub delta: f64,
    pub eta: f64,
    pub speed: f64,
    pub min_travel_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrackRecord {
    pub edge: EdgeId,
    pub length: f64,
    pub eff_speed: f64,
    pub t_s: f64,
    pub d1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timeline {
    pub period_s: f64,
    pub params: ParamsRecord,
    pub tracks: Vec<TrackRecord>,
    pub groups: Vec<Vec<EdgeId>>,
}

impl Timeline {
    pub fn from_schedule(schedule: &Schedule) -> Self {
        let p = &schedule.params;
        Timeline {
            period_s: schedule.period,
            params: ParamsRecord {
                delta: p.delta,
                eta: p.eta,
                speed: p.speed,
                min_travel_s: p.min_travel_s,
            },
            tracks: schedule
                .motions
                .iter()
                .map(|m| TrackRecord {
                    edge: m.edge,
                    length: m.length,
                    eff_speed: m.eff_speed,
                    t_s: m.t_s,
                    d1: m.d1,
                })
                .collect(),
            groups: schedule.groups.iter().map(|g| g.edges.clone()).collect(),
        }
    }

    pub fn params(&self) -> Result<MorphParams> {
        let p = &self.params;
        MorphParams::new(p.delta, p.eta, p.speed, p.min_travel_s)
    }

    pub fn motions(&self) -> Vec<EdgeMotion> {
        self.tracks
            .iter()
            .map(|t| EdgeMotion {
                edge: t.edge,
                length: t.length,
                eff_speed: t.eff_speed,
                d1: t.d1,
                t_s: t.t_s,
            })
            .collect()
    }

    /// Rebuilds a schedule against `layout`, checking that the tracks match
    /// its edges and that the groups partition them. Crossings are
    /// recomputed from the geometry.
    pub fn into_schedule(&self, layout: &LayoutGraph) -> Result<Schedule> {
        let params = self.params()?;
        let bad = |msg: String| Err(MedError::InvalidTimeline(msg));
        let m = layout.edge_count();
        if self.tracks.len() != m {
            return bad(format!("{} tracks for {m} edges", self.tracks.len()));
        }
        let mut problems = Vec::new();
        for (i, t) in self.tracks.iter().enumerate() {
            let l = layout.edge_length(i);
            if t.edge != i {
                problems.push(format!("track {i} names edge {}", t.edge));
            } else if (t.length - l).abs() > 1e-9 * l.max(1.0) {
                problems.push(format!(
                    "edge {i} length {} differs from layout {l}",
                    t.length
                ));
            } else if !t.eff_speed.is_finite()
                || t.eff_speed <= 0.0
                || t.t_s.is_nan()
                || t.t_s < 0.0
            {
                problems.push(format!(
                    "edge {i} has a non-positive speed or negative start"
                ));
            } else {
                let d1 = (params.eta - params.delta) * t.length / t.eff_speed;
                if (t.d1 - d1).abs() > 1e-9 * d1.max(1.0) {
                    problems.push(format!("edge {i} d1 {} inconsistent with its speed", t.d1));
                }
            }
        }
        let mut seen = vec![false; m];
        for &e in self.groups.iter().flatten() {
            match seen.get_mut(e) {
                Some(s) if !*s => *s = true,
                _ => problems.push(format!(
                    "edge {e} missing from layout or listed twice in groups"
                )),
            }
        }
        if let Some(e) = seen.iter().position(|s| !s) {
            problems.push(format!("edge {e} belongs to no group"));
        }
        let motions = self.motions();
        let latest = motions
            .iter()
            .map(EdgeMotion::cycle_end)
            .fold(0.0, f64::max);
        if self.period_s < latest {
            problems.push(format!(
                "period {} ends before edges come to rest ({latest})",
                self.period_s
            ));
        }
        if !problems.is_empty() {
            return bad(problems.join("; "));
        }

        let crossings = crossing_catalog(layout, &params)?;
        let mut group_of = vec![0; m];
        for (gi, g) in self.groups.iter().enumerate() {
            for &e in g {
                group_of[e] = gi;
            }
        }
        let groups = self
            .groups
            .iter()
            .enumerate()
            .map(|(gi, edges)| {
                let mut edges = edges.clone();
                edges.sort_unstable();
                let inside = crossings
                    .iter()
                    .filter(|x| x.schedulable && group_of[x.e] == gi && group_of[x.c] == gi)
                    .copied()
                    .collect();
                MorphingGroup::from_members(edges, inside)
            })
            .collect();
        Ok(Schedule {
            params,
            period: self.period_s,
            motions,
            groups,
            crossings,
        })
    }
}

pub fn export_timeline_json(schedule: &Schedule) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(&Timeline::from_schedule(schedule))
        .expect("in-memory serialization");
    out.push(b'\n');
    out
}

pub fn parse_timeline(bytes: &[u8]) -> Result<Timeline> {
    Ok(serde_json::from_slice(bytes)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::graphgen::Graph;
    use crate::scheduler::build_schedule;

    fn pair() -> LayoutGraph {
        let g = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        let pts = [(0., 0.), (100., 0.), (40., -40.), (40., 60.)];
        LayoutGraph::new(g, pts.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn singleton_track() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let l = LayoutGraph::new(g, vec![Point::new(0., 0.), Point::new(30., 40.)]).unwrap();
        let s = build_schedule(&l, &MorphParams::default()).unwrap();
        let t = parse_timeline(&export_timeline_json(&s)).unwrap();
        assert_eq!(t.tracks.len(), 1);
        assert_eq!(t.tracks[0].edge, 0);
        assert_eq!(t.tracks[0].t_s, 0.0);
        assert_eq!(t.params.delta, 0.25);
        assert_eq!(t.params.eta, 0.5);
        assert_eq!(t.groups, vec![vec![0]]);
    }

    #[test]
    fn worked_pair_round_trips() {
        let l = pair();
        let s = build_schedule(&l, &MorphParams::new(0.25, 0.5, 50.0, 0.0).unwrap()).unwrap();
        let bytes = export_timeline_json(&s);
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.contains("\"t_s\": 0.0"));
        let t = parse_timeline(&bytes).unwrap();
        assert!((t.tracks[1].t_s - 0.4).abs() < 1e-9);
        assert_eq!(t, Timeline::from_schedule(&s));
        assert_eq!(t.into_schedule(&l).unwrap(), s);
    }

    #[test]
    fn mismatched_layout_is_rejected() {
        let l = pair();
        let s = build_schedule(&l, &MorphParams::default()).unwrap();
        let mut t = Timeline::from_schedule(&s);
        t.groups = vec![vec![0]];
        let err = t.into_schedule(&l).unwrap_err().to_string();
        assert!(err.contains("edge 1 belongs to no group"), "{err}");

        let mut t = Timeline::from_schedule(&s);
        t.tracks[0].length = 5.0;
        assert!(t.into_schedule(&l).is_err());

        let mut t = Timeline::from_schedule(&s);
        t.period_s = 0.1;
        assert!(t.into_schedule(&l).is_err());
    }
}
