//! Quotients of an interpretation by a partition, the counting
//! QS-quotient, and concepts separating elements of different blocks.

mod witness;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::interp::{
    BasicRoleId, ElementSet, Interpretation, InterpretationBuilder, QSInterpretation,
};
use crate::refine::Partition;

pub use witness::{separating_concept, witness, WitnessConcept};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("partition covers {found} elements but the domain has {expected}")]
    PartitionMismatch { expected: usize, found: usize },
    #[error("elements {x} and {y} are in the same block")]
    NotSeparated { x: usize, y: usize },
    #[error("element {0} is outside the domain")]
    OutOfRange(usize),
    #[error("constructed witness failed validation: {0}")]
    InvalidWitness(String),
}

fn check(interp: &Interpretation, p: &Partition) -> Result<(), QuotientError> {
    if p.num_nodes() != interp.size() {
        return Err(QuotientError::PartitionMismatch {
            expected: interp.size(),
            found: p.num_nodes(),
        });
    }
    Ok(())
}

/// `I/P`: one element per block, named after the block's least element;
/// concepts, roles and individuals are the images of those of `I`.
pub fn quotient_interpretation(
    interp: &Interpretation,
    p: &Partition,
) -> Result<Interpretation, QuotientError> {
    check(interp, p)?;
    let sig = interp.signature();
    let cls = |x: usize| p.block_of(x);
    let names: Vec<String> = p
        .blocks()
        .iter()
        .map(|b| interp.element_name(b[0] as usize).to_string())
        .collect();
    let mut b = InterpretationBuilder::new(sig.clone(), p.num_blocks()).element_names(names);
    for (c, name) in sig.concept_names().iter().enumerate() {
        b = b.concept(name, interp.concept(c).iter().map(cls).collect::<Vec<_>>());
    }
    for (r, name) in sig.role_names().iter().enumerate() {
        let pairs: Vec<_> = interp
            .role(r)
            .pairs()
            .map(|(x, y)| (cls(x), cls(y)))
            .collect();
        b = b.role(name, pairs);
    }
    for (a, name) in sig.individual_names().iter().enumerate() {
        b = b.individual(name, cls(interp.individual(a)));
    }
    Ok(b.build().expect("quotient of a valid interpretation"))
}

/// `max_{x' ∈ X} #{y' ∈ Y | R(x', y')}` for every block `X` and every
/// block `Y` it reaches, per basic role, as sorted maps.
fn block_counts(
    interp: &Interpretation,
    p: &Partition,
    b: BasicRoleId,
) -> Vec<BTreeMap<usize, u64>> {
    let rel = interp.basic_role(b);
    let mut out = vec![BTreeMap::new(); p.num_blocks()];
    for (xb, block) in p.blocks().iter().enumerate() {
        for &x in block {
            let mut here: BTreeMap<usize, u64> = BTreeMap::new();
            for &y in rel.successors(x as usize) {
                *here.entry(p.block_of(y as usize)).or_default() += 1;
            }
            for (yb, k) in here {
                let e = out[xb].entry(yb).or_insert(k);
                *e = (*e).max(k);
            }
        }
    }
    out
}

/// The quotient QS-interpretation: the quotient with multiplicities
/// `qu(R)([x],[y]) = max_{x' ∈ [x]} #{y' ∈ [y] | R(x', y')}` and
/// `se(r) = {[x] | r(x, x)}`.
pub fn qs_quotient(
    interp: &Interpretation,
    p: &Partition,
) -> Result<QSInterpretation, QuotientError> {
    let base = quotient_interpretation(interp, p)?;
    let nr = interp.signature().num_roles();
    let mut forward = Vec::with_capacity(nr);
    let mut backward = Vec::with_capacity(nr);
    for r in 0..nr {
        for inverse in [false, true] {
            let b = BasicRoleId { role: r, inverse };
            let counts = block_counts(interp, p, b);
            let qrel = base.basic_role(b);
            let rows: Vec<Vec<u64>> = (0..base.size())
                .map(|xb| {
                    qrel.successors(xb)
                        .iter()
                        .map(|&yb| counts[xb][&(yb as usize)])
                        .collect()
                })
                .collect();
            if inverse {
                backward.push(rows);
            } else {
                forward.push(rows);
            }
        }
    }
    let se = (0..nr)
        .map(|r| {
            ElementSet::from_elements(
                base.size(),
                interp
                    .role(r)
                    .reflexive_points()
                    .iter()
                    .map(|x| p.block_of(x)),
            )
        })
        .collect();
    Ok(QSInterpretation::from_rows(base, forward, backward, se))
}

/// Whether every member of a block has the same number of `R`-successors
/// in every block, for every basic role; then the multiplicities of the
/// QS-quotient do not depend on the representative.
pub fn counts_are_uniform(interp: &Interpretation, p: &Partition) -> bool {
    let nr = interp.signature().num_roles();
    for b in BasicRoleId::enumerate(nr, true) {
        let rel = interp.basic_role(b);
        for block in p.blocks() {
            let profile = |x: u32| {
                let mut m: BTreeMap<usize, u64> = BTreeMap::new();
                for &y in rel.successors(x as usize) {
                    *m.entry(p.block_of(y as usize)).or_default() += 1;
                }
                m
            };
            let first = profile(block[0]);
            if block.iter().any(|&x| profile(x) != first) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisim::largest_auto_bisimulation;
    use crate::fixtures;
    use crate::FeatureSet;

    #[test]
    fn two_cycle_collapses_to_a_loop() {
        let i = fixtures::two_cycle();
        let p = largest_auto_bisimulation("S".parse().unwrap(), &i);
        let q = quotient_interpretation(&i, &p).unwrap();
        assert_eq!(q.size(), 1);
        assert!(q.role(0).contains(0, 0));
        let qs = qs_quotient(&i, &p).unwrap();
        assert!(qs.se(0).is_empty());
        assert_eq!(qs.qu(BasicRoleId::forward(0), 0, 0), 1);
    }

    #[test]
    fn counting_multiplicities() {
        let i = fixtures::q_counterexample();
        // With Self, a (looping) is apart from b1 and b2.
        let p = largest_auto_bisimulation("S".parse().unwrap(), &i);
        let qs = qs_quotient(&i, &p).unwrap();
        let a = p.block_of(0);
        let b = p.block_of(1);
        assert_eq!(p.num_blocks(), 2);
        assert_eq!(qs.qu(BasicRoleId::forward(0), a, b), 2);
        assert_eq!(qs.qu(BasicRoleId::forward(0), a, a), 1);
        assert_eq!(qs.se(0).to_vec(), vec![a]);
    }

    #[test]
    fn singleton_partition_is_identity() {
        let i = fixtures::fig2_i3();
        let p = Partition::discrete(i.size());
        let q = quotient_interpretation(&i, &p).unwrap();
        assert_eq!(q, i);
        assert_eq!(
            qs_quotient(&i, &p).unwrap(),
            QSInterpretation::embed(i.clone())
        );
    }

    #[test]
    fn family_tree_leaves_merge() {
        let i2 = fixtures::fig2_i2();
        let p = largest_auto_bisimulation(FeatureSet::EMPTY, &i2);
        let q = quotient_interpretation(&i2, &p).unwrap();
        assert_eq!(q.size(), 6);
        assert_eq!(q.role(0).len(), 6);
        assert!(counts_are_uniform(
            &i2,
            &largest_auto_bisimulation("IQ".parse().unwrap(), &i2)
        ));
    }

    #[test]
    fn partition_must_cover_domain() {
        let i = fixtures::fig2_i1();
        assert!(matches!(
            quotient_interpretation(&i, &Partition::discrete(3)),
            Err(QuotientError::PartitionMismatch { .. })
        ));
    }
}
