use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, LayoutGraph};
use crate::error::{MedError, Result};
use crate::geometry::Point;

pub const DEFAULT_FR_CONSTANT: f64 = 0.9;
pub const DEFAULT_ITERATIONS: usize = 500;

/// Closest two node centers may lie before the post-pass separates them.
const MIN_SEPARATION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrOptions {
    pub width: f64,
    pub height: f64,
    pub iterations: usize,
    pub seed: u64,
    /// Scale `C` of the ideal edge length `k = C·sqrt(area / n)`.
    pub constant: f64,
}

impl FrOptions {
    pub fn new(width: f64, height: f64, iterations: usize, seed: u64) -> Self {
        FrOptions {
            width,
            height,
            iterations,
            seed,
            constant: DEFAULT_FR_CONSTANT,
        }
    }

    pub fn ideal_length(&self, node_count: usize) -> f64 {
        self.constant * (self.width * self.height / node_count as f64).sqrt()
    }
}

/// Fruchterman–Reingold force-directed placement inside a `width × height`
/// frame.
///
/// Repulsion `k²/d` acts between all node pairs and attraction `d²/k` along
/// edges. Per-iteration displacement is capped by a temperature that cools
/// linearly from a tenth of the frame to zero. A node pushed outside the
/// frame is placed just inside the violated border at a small seeded inset,
/// so clamped nodes never line up exactly along a border.
pub fn fr_layout(g: &Graph, opts: &FrOptions) -> Result<LayoutGraph> {
    if !(opts.width > 0.0 && opts.height > 0.0) || opts.iterations == 0 {
        return Err(MedError::invalid(format!(
            "layout needs a positive frame and at least one iteration (got {}×{}, {} iterations)",
            opts.width, opts.height, opts.iterations
        )));
    }
    let n = g.node_count();
    if n == 1 {
        return LayoutGraph::new(
            g.clone(),
            vec![Point::new(opts.width / 2.0, opts.height / 2.0)],
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (w, h) = (opts.width, opts.height);
    let mut pos: Vec<Point> = (0..n)
        .map(|_| Point::new(rng.gen::<f64>() * w, rng.gen::<f64>() * h))
        .collect();

    let k = opts.ideal_length(n);
    let k2 = k * k;
    let t0 = w.max(h) / 10.0;
    let inset = 0.01 * w.min(h);
    let mut disp = vec![(0.0f64, 0.0f64); n];

    for iter in 0..opts.iterations {
        let temperature = t0 * (1.0 - iter as f64 / opts.iterations as f64);
        disp.iter_mut().for_each(|d| *d = (0.0, 0.0));

        for i in 0..n {
            for j in i + 1..n {
                let (mut dx, mut dy) = (pos[i].x - pos[j].x, pos[i].y - pos[j].y);
                let mut d = dx.hypot(dy);
                if d < MIN_SEPARATION {
                    // Coincident pair: push apart along a fixed direction.
                    let angle = (i * 31 + j * 17) as f64;
                    (dx, dy) = (angle.cos() * MIN_SEPARATION, angle.sin() * MIN_SEPARATION);
                    d = MIN_SEPARATION;
                }
                let f = k2 / d;
                let (fx, fy) = (dx / d * f, dy / d * f);
                disp[i].0 += fx;
                disp[i].1 += fy;
                disp[j].0 -= fx;
                disp[j].1 -= fy;
            }
        }

        for &(u, v) in g.edges() {
            let (dx, dy) = (pos[u].x - pos[v].x, pos[u].y - pos[v].y);
            let d = dx.hypot(dy);
            if d < MIN_SEPARATION {
                continue;
            }
            let f = d * d / k;
            let (fx, fy) = (dx / d * f, dy / d * f);
            disp[u].0 -= fx;
            disp[u].1 -= fy;
            disp[v].0 += fx;
            disp[v].1 += fy;
        }

        for (p, &(dx, dy)) in pos.iter_mut().zip(&disp) {
            let len = dx.hypot(dy);
            if len > 0.0 {
                let step = len.min(temperature);
                p.x += dx / len * step;
                p.y += dy / len * step;
            }
            p.x = clamp_with_inset(p.x, w, inset, &mut rng);
            p.y = clamp_with_inset(p.y, h, inset, &mut rng);
        }
    }

    separate_coincident(&mut pos, w, h);
    LayoutGraph::new(g.clone(), pos)
}

fn clamp_with_inset(x: f64, max: f64, inset: f64, rng: &mut ChaCha8Rng) -> f64 {
    if x < 0.0 {
        rng.gen::<f64>() * inset
    } else if x > max {
        max - rng.gen::<f64>() * inset
    } else {
        x
    }
}

fn separate_coincident(pos: &mut [Point], w: f64, h: f64) {
    loop {
        let mut moved = false;
        for i in 0..pos.len() {
            for j in i + 1..pos.len() {
                if pos[i].distance(&pos[j]) < MIN_SEPARATION {
                    let p = &mut pos[j];
                    p.x += if p.x + 2.0 * MIN_SEPARATION <= w {
                        2.0
                    } else {
                        -2.0
                    } * MIN_SEPARATION;
                    p.y += if p.y + 2.0 * MIN_SEPARATION <= h {
                        2.0
                    } else {
                        -2.0
                    } * MIN_SEPARATION;
                    moved = true;
                }
            }
        }
        if !moved {
            break;
        }
    }
}
