//! Workloads shared by the benchmarks: seeded bounded-degree
//! interpretations and small instances for the naive oracle.

use dlbisim_core::graph::LabeledGraph;
use dlbisim_core::{random, Interpretation};

/// Out-degree bound per role, so the number of edges grows linearly in `n`.
pub const DEGREE: usize = 4;

/// A bounded-degree interpretation with `roles` role names and two concept
/// names, reproducible from `seed`.
pub fn bounded(n: usize, roles: usize, seed: u64) -> Interpretation {
    let sig = random::signature(2, roles, 0);
    random::bounded_degree(&mut random::rng(seed ^ n as u64), &sig, n, DEGREE)
}

/// The labelled graph of [`bounded`].
pub fn bounded_graph(n: usize, roles: usize, seed: u64) -> LabeledGraph {
    LabeledGraph::from_interpretation(&bounded(n, roles, seed))
}

/// `count` small random instances of the shape used by the oracle tests.
pub fn small_instances(count: usize, max_n: usize, seed: u64) -> Vec<Interpretation> {
    let mut rng = random::rng(seed);
    (0..count)
        .map(|_| random::small_instance(&mut rng, max_n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_are_reproducible() {
        assert_eq!(bounded(50, 3, 1), bounded(50, 3, 1));
        assert_eq!(bounded(50, 3, 1).signature().num_roles(), 3);
        assert_eq!(small_instances(5, 6, 2), small_instances(5, 6, 2));
    }
}
