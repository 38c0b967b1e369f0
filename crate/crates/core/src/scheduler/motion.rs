//! Stub-tip kinematics of a symmetric morphing edge.

use serde::{Deserialize, Serialize};

use super::MorphParams;
use crate::error::{MedError, Result};
use crate::graphgen::EdgeId;

/// One edge's morphing cycle: the stubs grow from `delta` to `eta` over `d1`
/// seconds starting at `t_s`, then shrink back over another `d1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeMotion {
    pub edge: EdgeId,
    pub length: f64,
    pub eff_speed: f64,
    pub d1: f64,
    pub t_s: f64,
}

impl EdgeMotion {
    /// Motion for an edge of the given length, not yet scheduled (`t_s = 0`).
    pub fn new(edge: EdgeId, length: f64, params: &MorphParams) -> Self {
        let eff_speed = effective_speed(length, params);
        EdgeMotion {
            edge,
            length,
            eff_speed,
            d1: (params.eta - params.delta) * length / eff_speed,
            t_s: 0.0,
        }
    }

    pub fn with_start(mut self, t_s: f64) -> Self {
        self.t_s = t_s;
        self
    }

    /// Time at which the stubs are back at rest.
    pub fn cycle_end(&self) -> f64 {
        self.t_s + 2.0 * self.d1
    }
}

/// Stub-edge ratio of `motion` at time `t`: a tent rising from `delta` at
/// `t_s` to `eta` at `t_s + d1` and back to `delta` at `t_s + 2·d1`.
pub fn rho(motion: &EdgeMotion, params: &MorphParams, t: f64) -> f64 {
    let t0 = motion.t_s;
    let t1 = t0 + motion.d1;
    let t2 = t0 + 2.0 * motion.d1;
    let rate = motion.eff_speed / motion.length;
    let r = if t <= t0 || t > t2 {
        params.delta
    } else if t <= t1 {
        params.delta + (t - t0) * rate
    } else {
        params.eta - (t - t1) * rate
    };
    r.clamp(params.delta, params.eta)
}

/// Tip speed for an edge of `length`: the nominal speed, slowed down for
/// short edges so that one-way travel takes at least `min_travel_s`.
pub fn effective_speed(length: f64, params: &MorphParams) -> f64 {
    if params.min_travel_s > 0.0 {
        params
            .speed
            .min((params.eta - params.delta) * length / params.min_travel_s)
    } else {
        params.speed
    }
}

/// Converts an angular speed at a viewing distance into a screen speed:
/// `tan(deg_per_s) · view_dist_cm · px_per_cm`.
pub fn visual_angle_speed(deg_per_s: f64, view_dist_cm: f64, px_per_cm: f64) -> f64 {
    deg_per_s.to_radians().tan() * view_dist_cm * px_per_cm
}

/// When a stub tip covers a crossing point during one cycle, relative to `t_s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Passage {
    /// First reached while stretching at `pass`, released while shrinking at
    /// `ret`.
    Window { pass: f64, ret: f64 },
    /// The point lies beyond `eta`; the tip never gets there.
    Never,
}

impl Passage {
    pub fn window(&self) -> Option<(f64, f64)> {
        match *self {
            Passage::Window { pass, ret } => Some((pass, ret)),
            Passage::Never => None,
        }
    }
}

/// Passage times of the stub nearest to parameter `u` along an edge.
///
/// Errors when the point lies inside a rest stub (`min(u, 1 − u) ≤ delta`),
/// where it is always covered.
pub fn passage(length: f64, eff_speed: f64, u: f64, params: &MorphParams) -> Result<Passage> {
    let reach = u.min(1.0 - u);
    if reach <= params.delta {
        return Err(MedError::NotSchedulable {
            edge: usize::MAX,
            u,
        });
    }
    if reach > params.eta {
        return Ok(Passage::Never);
    }
    let d = reach * length;
    let pass = (d - params.delta * length) / eff_speed;
    let ret = ((params.eta - params.delta) * length + (params.eta * length - d)) / eff_speed;
    Ok(Passage::Window { pass, ret })
}

/// Time from morphing start until the tip first reaches `u` (while stretching).
pub fn t_pass(motion: &EdgeMotion, u: f64, params: &MorphParams) -> Result<Option<f64>> {
    let p = passage(motion.length, motion.eff_speed, u, params).map_err(|e| tag(e, motion.edge))?;
    Ok(p.window().map(|w| w.0))
}

/// Time from morphing start until the tip leaves `u` again (while shrinking).
pub fn t_return(motion: &EdgeMotion, u: f64, params: &MorphParams) -> Result<Option<f64>> {
    let p = passage(motion.length, motion.eff_speed, u, params).map_err(|e| tag(e, motion.edge))?;
    Ok(p.window().map(|w| w.1))
}

fn tag(e: MedError, edge: EdgeId) -> MedError {
    match e {
        MedError::NotSchedulable { u, .. } => MedError::NotSchedulable { edge, u },
        other => other,
    }
}
