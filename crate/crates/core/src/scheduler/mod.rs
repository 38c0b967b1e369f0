//! Crossing-free morphing schedules.
//!
//! Pipeline: crossing catalog → morphing groups → greedy start times per
//! group → one global period in which every edge morphs once.

mod groups;
mod motion;
mod start_time;

use rayon::prelude::*;

use crate::error::{MedError, Result};
use crate::graphgen::LayoutGraph;

pub use groups::{crossing_catalog, morphing_groups, Crossing, GroupPolicy, MorphingGroup};
pub use motion::{
    effective_speed, passage, rho, t_pass, t_return, visual_angle_speed, EdgeMotion, Passage,
};
pub use start_time::{earliest_space, find_start_times, forbidden_interval, ForbiddenInterval};

pub const DEFAULT_DELTA: f64 = 0.25;
pub const DEFAULT_ETA: f64 = 0.5;
pub const DEFAULT_MIN_TRAVEL_S: f64 = 0.3;
pub const DEFAULT_DEG_PER_S: f64 = 10.0;
pub const DEFAULT_VIEW_DISTANCE_CM: f64 = 40.0;
/// Screen density assumed when converting angular speed; not a measured value.
pub const DEFAULT_PX_PER_CM: f64 = 37.8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorphParams {
    /// Rest stub-edge ratio.
    pub delta: f64,
    /// Peak stub-edge ratio.
    pub eta: f64,
    /// Nominal stub-tip speed, drawing units per second.
    pub speed: f64,
    /// Lower bound on one-way travel time, seconds.
    pub min_travel_s: f64,
}

impl MorphParams {
    pub fn new(delta: f64, eta: f64, speed: f64, min_travel_s: f64) -> Result<Self> {
        let p = MorphParams {
            delta,
            eta,
            speed,
            min_travel_s,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0 <= self.delta && self.delta < self.eta && self.eta <= 0.5) {
            return Err(MedError::invalid(format!(
                "need 0 ≤ delta < eta ≤ 1/2 (got delta={}, eta={})",
                self.delta, self.eta
            )));
        }
        if !(self.speed > 0.0 && self.speed.is_finite()) {
            return Err(MedError::invalid(format!(
                "speed must be positive (got {})",
                self.speed
            )));
        }
        if !(self.min_travel_s >= 0.0 && self.min_travel_s.is_finite()) {
            return Err(MedError::invalid(format!(
                "minimum travel time must be non-negative (got {})",
                self.min_travel_s
            )));
        }
        Ok(())
    }
}

impl Default for MorphParams {
    fn default() -> Self {
        MorphParams {
            delta: DEFAULT_DELTA,
            eta: DEFAULT_ETA,
            speed: visual_angle_speed(
                DEFAULT_DEG_PER_S,
                DEFAULT_VIEW_DISTANCE_CM,
                DEFAULT_PX_PER_CM,
            ),
            min_travel_s: DEFAULT_MIN_TRAVEL_S,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub params: MorphParams,
    /// Every edge is at rest at multiples of the period.
    pub period: f64,
    /// Indexed by edge id.
    pub motions: Vec<EdgeMotion>,
    pub groups: Vec<MorphingGroup>,
    /// Full crossing catalog, including inevitable crossings.
    pub crossings: Vec<Crossing>,
}

impl Schedule {
    pub fn makespan(&self, group: &MorphingGroup) -> f64 {
        group
            .edges
            .iter()
            .map(|&e| self.motions[e].cycle_end())
            .fold(0.0, f64::max)
    }

    /// Duration of morphing the group's edges one after another.
    pub fn sequential_baseline(&self, group: &MorphingGroup) -> f64 {
        group.edges.iter().map(|&e| 2.0 * self.motions[e].d1).sum()
    }
}

/// Smallest whole millisecond not below the latest cycle end.
pub fn period_for(motions: &[EdgeMotion]) -> f64 {
    let latest = motions
        .iter()
        .map(EdgeMotion::cycle_end)
        .fold(0.0, f64::max);
    let rounded = ((latest * 1000.0) - 1e-6).ceil() / 1000.0;
    rounded.max(latest)
}

pub fn build_schedule(layout: &LayoutGraph, params: &MorphParams) -> Result<Schedule> {
    build_schedule_with(layout, params, GroupPolicy::default())
}

pub fn build_schedule_with(
    layout: &LayoutGraph,
    params: &MorphParams,
    policy: GroupPolicy,
) -> Result<Schedule> {
    params.validate()?;
    let crossings = crossing_catalog(layout, params)?;
    let groups = morphing_groups(layout, &crossings, params, policy);
    let per_group: Vec<Vec<EdgeMotion>> = groups
        .par_iter()
        .map(|g| find_start_times(g, layout, params))
        .collect::<Result<_>>()?;

    let mut motions: Vec<Option<EdgeMotion>> = vec![None; layout.edge_count()];
    for m in per_group.into_iter().flatten() {
        motions[m.edge] = Some(m);
    }
    let motions: Vec<EdgeMotion> = motions
        .into_iter()
        .map(|m| m.expect("groups partition the edges"))
        .collect();
    Ok(Schedule {
        params: *params,
        period: period_for(&motions),
        motions,
        groups,
        crossings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::graphgen::Graph;

    fn layout(points: &[(f64, f64)], edges: &[(usize, usize)]) -> LayoutGraph {
        let g = Graph::new(points.len(), edges.to_vec()).unwrap();
        LayoutGraph::new(g, points.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(MorphParams::new(0.25, 0.25, 1.0, 0.0).is_err());
        assert!(MorphParams::new(0.25, 0.6, 1.0, 0.0).is_err());
        assert!(MorphParams::new(-0.1, 0.5, 1.0, 0.0).is_err());
        assert!(MorphParams::new(0.25, 0.5, 0.0, 0.0).is_err());
        assert!(MorphParams::new(0.25, 0.5, 1.0, -1.0).is_err());
        MorphParams::default().validate().unwrap();
    }

    #[test]
    fn crossing_free_layout_runs_in_parallel() {
        let l = layout(&[(0., 0.), (100., 0.), (0., 50.)], &[(0, 1), (0, 2)]);
        let p = MorphParams::new(0.25, 0.5, 50.0, 0.0).unwrap();
        let s = build_schedule(&l, &p).unwrap();
        assert!(s.motions.iter().all(|m| m.t_s == 0.0));
        assert!((s.period - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_symmetric_edges() {
        // Edges of length 100 crossing at u = 0.4 on both.
        let l = layout(
            &[(0., 0.), (100., 0.), (40., -40.), (40., 60.)],
            &[(0, 1), (2, 3)],
        );
        let p = MorphParams::new(0.25, 0.5, 50.0, 0.0).unwrap();
        let s = build_schedule(&l, &p).unwrap();
        assert_eq!(s.motions[0].t_s, 0.0);
        assert!((s.motions[1].t_s - 0.4).abs() < 1e-9);
        assert!((s.period - 1.4).abs() < 1e-9);
        assert!(s.period >= s.motions[1].cycle_end());
        assert_eq!(s.groups.len(), 1);
        assert!(s.makespan(&s.groups[0]) <= s.sequential_baseline(&s.groups[0]));
    }

    #[test]
    fn dependency_configuration_parallelizes_the_short_edges() {
        let l = layout(
            &[
                (3.0, -2.0),
                (3.0, 2.0),
                (7.0, -2.0),
                (7.0, 2.0),
                (0.0, 0.0),
                (10.0, 0.0),
            ],
            &[(0, 1), (2, 3), (4, 5)],
        );
        let p = MorphParams::new(0.25, 0.5, 10.0, 0.0).unwrap();
        let s = build_schedule(&l, &p).unwrap();
        assert_eq!(s.motions[2].t_s, 0.0);
        assert!(s.motions[0].t_s > 0.0);
        assert_eq!(s.motions[0].t_s, s.motions[1].t_s);
    }

    #[test]
    fn period_rounds_up_to_milliseconds() {
        let p = MorphParams::new(0.25, 0.5, 50.0, 0.0).unwrap();
        let m = EdgeMotion::new(0, 100.0, &p).with_start(0.1234);
        assert!((period_for(&[m]) - 1.124).abs() < 1e-12);
        assert_eq!(period_for(&[]), 0.0);
    }
}
