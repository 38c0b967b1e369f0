//! Start-time assignment within a morphing group.

use std::collections::BTreeMap;

use super::groups::{Crossing, MorphingGroup};
use super::motion::{passage, EdgeMotion};
use super::MorphParams;
use crate::error::{MedError, Result};
use crate::graphgen::{EdgeId, LayoutGraph};

/// Start times `[r1, r2)` that would make an edge's stub cover a crossing
/// point while its partner's stub also covers it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForbiddenInterval {
    pub r1: f64,
    pub r2: f64,
}

impl ForbiddenInterval {
    pub const EMPTY: ForbiddenInterval = ForbiddenInterval { r1: 0.0, r2: 0.0 };

    pub fn is_empty(&self) -> bool {
        self.r1 >= self.r2
    }

    pub fn contains(&self, t: f64) -> bool {
        self.r1 <= t && t < self.r2
    }
}

/// Forbidden start range for `e` given its already-scheduled partner `c`:
///
/// ```text
/// r1 = t_s(c) + t_pass(c) − t_return(e)
/// r2 = t_s(c) + t_return(c) − t_pass(e)
/// ```
///
/// Starting `e` at or after `r2` means its stub arrives after `c`'s has left
/// (touching at one instant is allowed). Empty if either stub never reaches
/// the point.
pub fn forbidden_interval(
    e: &EdgeMotion,
    c: &EdgeMotion,
    crossing: &Crossing,
    params: &MorphParams,
) -> Result<ForbiddenInterval> {
    if crossing.e != e.edge || crossing.c != c.edge {
        return Err(MedError::invalid(format!(
            "crossing ({}, {}) does not join edges {} and {}",
            crossing.e, crossing.c, e.edge, c.edge
        )));
    }
    let pe = passage(e.length, e.eff_speed, crossing.u_e, params).map_err(|_| {
        MedError::NotSchedulable {
            edge: e.edge,
            u: crossing.u_e,
        }
    })?;
    let pc = passage(c.length, c.eff_speed, crossing.u_c, params).map_err(|_| {
        MedError::NotSchedulable {
            edge: c.edge,
            u: crossing.u_c,
        }
    })?;
    match (pe.window(), pc.window()) {
        (Some((pass_e, ret_e)), Some((pass_c, ret_c))) => Ok(ForbiddenInterval {
            r1: c.t_s + pass_c - ret_e,
            r2: c.t_s + ret_c - pass_e,
        }),
        _ => Ok(ForbiddenInterval::EMPTY),
    }
}

/// Smallest `t ≥ 0` outside every half-open interval `[r1, r2)`.
///
/// Sweeps the intervals in order of `r1`: skip those ending before the
/// candidate, stop at the first gap, otherwise push the candidate to `r2`.
pub fn earliest_space(intervals: &[ForbiddenInterval]) -> f64 {
    let mut sorted = intervals.to_vec();
    sorted.sort_by(|a, b| a.r1.total_cmp(&b.r1).then(a.r2.total_cmp(&b.r2)));
    let mut t = 0.0;
    for iv in sorted {
        if iv.r2 < t {
            continue;
        } else if t < iv.r1 {
            return t;
        } else {
            t = iv.r2;
        }
    }
    t
}

/// Greedy start times for one group, longest edges first (ties by edge id).
/// Each edge takes the earliest start that avoids all already-scheduled
/// crossing partners. Returned in the group's edge order.
pub fn find_start_times(
    group: &MorphingGroup,
    layout: &LayoutGraph,
    params: &MorphParams,
) -> Result<Vec<EdgeMotion>> {
    let mut order = group.edges.clone();
    order.sort_by(|&a, &b| {
        layout
            .edge_length(b)
            .total_cmp(&layout.edge_length(a))
            .then(a.cmp(&b))
    });

    let mut scheduled: BTreeMap<EdgeId, EdgeMotion> = BTreeMap::new();
    let mut intervals = Vec::new();
    for e in order {
        let motion = EdgeMotion::new(e, layout.edge_length(e), params);
        intervals.clear();
        for crossing in group.crossings_of(e) {
            if let Some(partner) = scheduled.get(&crossing.c) {
                intervals.push(forbidden_interval(&motion, partner, crossing, params)?);
            }
        }
        scheduled.insert(e, motion.with_start(earliest_space(&intervals)));
    }
    Ok(group.edges.iter().map(|e| scheduled[e]).collect())
}
