//! The refinement engine against the naive greatest-fixpoint computation.

use dlbisim_core::bisim::{
    is_bisimulation, largest_bisimulation, naive_largest_bisimulation, partition_to_relation,
};
use dlbisim_core::graph::LabeledGraph;
use dlbisim_core::random;
use dlbisim_core::refine::compute_partition;
use dlbisim_core::FeatureSet;

#[test]
fn auto_bisimulation_matches_oracle() {
    let mut rng = random::rng(2024);
    for case in 0..300 {
        let i = random::small_instance(&mut rng, 12);
        let g = LabeledGraph::from_interpretation(&i);
        for phi in FeatureSet::all() {
            let (p, trace) = compute_partition(phi, &g);
            let oracle = naive_largest_bisimulation(phi, &i, &i).unwrap().unwrap();
            let z = partition_to_relation(&p);
            assert_eq!(z, oracle, "case {case}, phi {phi}");
            assert_eq!(trace.replay(), p);
            assert!(is_bisimulation(phi, &i, &i, &z).is_empty());
        }
    }
}

#[test]
fn cross_bisimulation_matches_oracle() {
    let mut rng = random::rng(77);
    for case in 0..300 {
        let i = random::small_instance(&mut rng, 8);
        let j = if case % 2 == 0 {
            random::expansion(&mut rng, &i).0
        } else {
            let n = i.size();
            random::interpretation(&mut rng, i.signature(), n, 0.2)
        };
        for phi in FeatureSet::all() {
            let fast = largest_bisimulation(phi, &i, &j).unwrap();
            let slow = naive_largest_bisimulation(phi, &i, &j).unwrap();
            assert_eq!(fast, slow, "case {case}, phi {phi}");
        }
    }
}
