use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{MedError, Result};

/// Barabási–Albert preferential attachment.
///
/// Starts from a clique on `m + 1` nodes; every later node attaches to `m`
/// distinct existing nodes drawn with probability proportional to degree.
/// The edge count is `m(m+1)/2 + m(n − m − 1)`; `n = 50, m = 3` gives 144.
///
/// Randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, and indices are
/// drawn as `u64`, so output is identical on every platform.
pub fn generate_ba(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m < 1 || n < m + 1 {
        return Err(MedError::invalid(format!(
            "Barabási–Albert requires n ≥ m + 1 ≥ 2 (got n={n}, m={m})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(m * (m + 1) / 2 + m * (n - m - 1));
    // Every node appears once per incident edge.
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * edges.capacity());

    for v in 0..=m {
        for u in 0..v {
            edges.push((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }

    let mut targets = Vec::with_capacity(m);
    for v in m + 1..n {
        targets.clear();
        while targets.len() < m {
            let pick = endpoints[rng.gen_range(0..endpoints.len() as u64) as usize];
            if !targets.contains(&pick) {
                targets.push(pick);
            }
        }
        for &t in &targets {
            edges.push((t, v));
            endpoints.push(t);
            endpoints.push(v);
        }
    }
    Graph::new(n, edges)
}
