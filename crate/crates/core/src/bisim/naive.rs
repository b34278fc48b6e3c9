//! Greatest-fixpoint computation of the largest bisimulation on a dense
//! matrix. Quadratic in space and slow; meant as an independent reference.

use super::{global_conditions_hold, has_perfect_matching, BisimError, BisimRelation};
use crate::features::FeatureSet;
use crate::interp::{BasicRoleId, Interpretation, Relation};

/// Largest number of pairs the dense matrix may hold.
pub const NAIVE_LIMIT: usize = 1_000_000;

/// Starts from every pair satisfying the pointwise conditions and deletes,
/// in lexicographic order and until nothing changes, pairs violating a
/// forth, back or bijection condition. Returns `None` if the result fails
/// the global conditions.
pub fn naive_largest_bisimulation(
    phi: FeatureSet,
    left: &Interpretation,
    right: &Interpretation,
) -> Result<Option<BisimRelation>, BisimError> {
    if left.signature() != right.signature() {
        return Err(crate::graph::SignatureMismatch.into());
    }
    let (n, m) = (left.size(), right.size());
    if n.saturating_mul(m) > NAIVE_LIMIT {
        return Err(BisimError::TooLarge {
            pairs: n.saturating_mul(m),
            limit: NAIVE_LIMIT,
        });
    }
    let sig = left.signature();
    let mut z = BisimRelation::empty(n, m);
    for x in 0..n {
        for y in 0..m {
            let atoms = (0..sig.num_concepts())
                .all(|c| left.concept(c).contains(x) == right.concept(c).contains(y));
            let nominals = !phi.nominal()
                || (0..sig.num_individuals())
                    .all(|a| (left.individual(a) == x) == (right.individual(a) == y));
            let loops = !phi.self_loop()
                || (0..sig.num_roles())
                    .all(|r| left.role(r).contains(x, x) == right.role(r).contains(y, y));
            if atoms && nominals && loops {
                z.insert(x, y);
            }
        }
    }
    let rels: Vec<(Relation, Relation)> = BasicRoleId::enumerate(sig.num_roles(), phi.inverse())
        .into_iter()
        .map(|b| (left.basic_role(b), right.basic_role(b)))
        .collect();
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..m {
                if z.contains(x, y) && !locally_ok(phi, &rels, &z, x, y) {
                    z.remove(x, y);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(global_conditions_hold(phi, left, right, &z).then_some(z))
}

fn locally_ok(
    phi: FeatureSet,
    rels: &[(Relation, Relation)],
    z: &BisimRelation,
    x: usize,
    y: usize,
) -> bool {
    rels.iter().all(|(l, r)| {
        let ls = l.successors(x);
        let rs = r.successors(y);
        let related = |s: u32, t: u32| z.contains(s as usize, t as usize);
        let forth = ls.iter().all(|&s| rs.iter().any(|&t| related(s, t)));
        let back = rs.iter().all(|&t| ls.iter().any(|&s| related(s, t)));
        forth && back && (!phi.counting() || has_perfect_matching(ls, rs, related))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_pair() {
        let (i, _) = fixtures::tbox_counterexample();
        let z = naive_largest_bisimulation(FeatureSet::FULL, &i, &i)
            .unwrap()
            .unwrap();
        assert_eq!(z.pairs().collect::<Vec<_>>(), [(0, 0)]);
    }

    #[test]
    fn family_trees() {
        let (i1, i2) = (fixtures::fig2_i1(), fixtures::fig2_i2());
        let z = naive_largest_bisimulation("IO".parse().unwrap(), &i1, &i2)
            .unwrap()
            .unwrap();
        assert!(z.contains(
            i1.element_index("u2").unwrap(),
            i2.element_index("v2").unwrap()
        ));
        assert!(naive_largest_bisimulation("Q".parse().unwrap(), &i1, &i2)
            .unwrap()
            .is_none());
    }
}
