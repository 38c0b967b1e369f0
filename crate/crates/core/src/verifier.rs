//! Independent check that a schedule never lets two stubs cover the same
//! crossing point at once.
//!
//! Crossings are recomputed from the layout geometry and coverage from the
//! ratio function alone; nothing here consults forbidden intervals.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::geometry::segment_intersection;
use crate::graphgen::{EdgeId, LayoutGraph};
use crate::scheduler::{rho, EdgeMotion, MorphParams, Schedule};

/// Coverage margin, in parameter units, below which contact does not count.
pub const COVERAGE_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_DT: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Violation {
    pub t: f64,
    pub e: EdgeId,
    pub c: EdgeId,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub samples: usize,
    /// Unordered edge pairs crossing inside both blank areas.
    pub schedulable_crossings: usize,
    /// Unordered edge pairs crossing inside a rest stub.
    pub inevitable_crossings: usize,
    pub violation_count: usize,
    pub first_violation: Option<Violation>,
    #[serde(skip)]
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("in-memory serialization")
    }
}

struct Watch {
    e: EdgeId,
    c: EdgeId,
    /// Distance, as a fraction of each edge, from the nearer endpoint.
    reach_e: f64,
    reach_c: f64,
}

/// Tent times at which a stub tip sits exactly at `reach`.
fn contact_times(m: &EdgeMotion, p: &MorphParams, reach: f64) -> Option<[f64; 2]> {
    if reach > p.eta {
        return None;
    }
    let climb = (reach - p.delta) * m.length / m.eff_speed;
    Some([m.t_s + climb, m.t_s + 2.0 * m.d1 - climb])
}

pub fn verify_no_crossings(
    layout: &LayoutGraph,
    schedule: &Schedule,
    dt: f64,
) -> Result<VerifyReport> {
    assert!(dt > 0.0, "sampling step must be positive");
    let params = &schedule.params;
    let motions = &schedule.motions;

    let segments: Vec<_> = layout.segments().collect();
    let mut watches = Vec::new();
    let mut inevitable = 0;
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            if let Some(x) = segment_intersection(&segments[i], &segments[j])? {
                let reach_e = x.u1.min(1.0 - x.u1);
                let reach_c = x.u2.min(1.0 - x.u2);
                if reach_e > params.delta && reach_c > params.delta {
                    watches.push(Watch {
                        e: i,
                        c: j,
                        reach_e,
                        reach_c,
                    });
                } else {
                    inevitable += 1;
                }
            }
        }
    }

    let steps = (schedule.period / dt).floor() as usize;
    let mut times: Vec<f64> = (0..=steps).map(|k| k as f64 * dt).collect();
    times.push(schedule.period);
    for w in &watches {
        let mut events: Vec<f64> = [
            contact_times(&motions[w.e], params, w.reach_e),
            contact_times(&motions[w.c], params, w.reach_c),
        ]
        .into_iter()
        .flatten()
        .flatten()
        .collect();
        events.sort_by(f64::total_cmp);
        let mids: Vec<f64> = events.windows(2).map(|p| 0.5 * (p[0] + p[1])).collect();
        times.extend(events);
        times.extend(mids);
    }
    times.sort_by(f64::total_cmp);
    times.dedup();

    let covered = |edge: EdgeId, reach: f64, t: f64| {
        rho(&motions[edge], params, t) - reach > COVERAGE_TOLERANCE
    };
    let mut violations: Vec<Violation> = times
        .par_iter()
        .flat_map_iter(|&t| {
            watches
                .iter()
                .filter(move |w| covered(w.e, w.reach_e, t) && covered(w.c, w.reach_c, t))
                .map(move |w| Violation { t, e: w.e, c: w.c })
        })
        .collect();
    violations.sort_by(|a, b| a.t.total_cmp(&b.t).then(a.e.cmp(&b.e)).then(a.c.cmp(&b.c)));

    Ok(VerifyReport {
        ok: violations.is_empty(),
        samples: times.len(),
        schedulable_crossings: watches.len(),
        inevitable_crossings: inevitable,
        violation_count: violations.len(),
        first_violation: violations.first().copied(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::graphgen::Graph;
    use crate::scheduler::build_schedule;

    fn layout(points: &[(f64, f64)], edges: &[(usize, usize)]) -> LayoutGraph {
        let g = Graph::new(points.len(), edges.to_vec()).unwrap();
        LayoutGraph::new(g, points.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    fn pair() -> LayoutGraph {
        layout(
            &[(0., 0.), (100., 0.), (40., -40.), (40., 60.)],
            &[(0, 1), (2, 3)],
        )
    }

    #[test]
    fn built_schedule_passes() {
        let l = pair();
        let s = build_schedule(&l, &MorphParams::new(0.25, 0.5, 50.0, 0.0).unwrap()).unwrap();
        let r = verify_no_crossings(&l, &s, DEFAULT_DT).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.schedulable_crossings, 1);
        assert_eq!(r.inevitable_crossings, 0);
    }

    #[test]
    fn simultaneous_start_is_caught() {
        let l = pair();
        let mut s = build_schedule(&l, &MorphParams::new(0.25, 0.5, 50.0, 0.0).unwrap()).unwrap();
        s.motions[1].t_s = 0.0;
        let r = verify_no_crossings(&l, &s, DEFAULT_DT).unwrap();
        assert!(!r.ok);
        let first = r.first_violation.unwrap();
        assert!((first.t - 0.3).abs() < 2e-3, "{first:?}");
        assert_eq!((first.e, first.c), (0, 1));
    }

    #[test]
    fn overlap_between_grid_points_is_caught() {
        let l = pair();
        let mut s = build_schedule(&l, &MorphParams::new(0.25, 0.5, 50.0, 0.0).unwrap()).unwrap();
        // Overlap of 0.1 ms, far below the sampling step.
        s.motions[1].t_s = 0.4 - 1e-4;
        let r = verify_no_crossings(&l, &s, 0.05).unwrap();
        assert!(!r.ok);
    }

    #[test]
    fn crossing_free_layout_is_trivially_ok() {
        let l = layout(&[(0., 0.), (10., 0.), (0., 10.)], &[(0, 1), (1, 2), (0, 2)]);
        let s = build_schedule(&l, &MorphParams::default()).unwrap();
        let r = verify_no_crossings(&l, &s, DEFAULT_DT).unwrap();
        assert!(r.ok);
        assert_eq!(r.schedulable_crossings, 0);
    }

    #[test]
    fn inevitable_crossings_are_counted_not_flagged() {
        let l = layout(
            &[(0., 0.), (10., 0.), (1., -5.), (1., 5.)],
            &[(0, 1), (2, 3)],
        );
        let mut s = build_schedule(&l, &MorphParams::default()).unwrap();
        s.motions.iter_mut().for_each(|m| m.t_s = 0.0);
        let r = verify_no_crossings(&l, &s, DEFAULT_DT).unwrap();
        assert!(r.ok);
        assert_eq!(r.inevitable_crossings, 1);
        assert!(r.to_json().contains("\"inevitable_crossings\":1"));
    }
}
