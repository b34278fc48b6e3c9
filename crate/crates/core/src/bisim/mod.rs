//! Bisimulation relations between two interpretations: the condition
//! checker, the largest bisimulation via refinement of the disjoint union,
//! and a naive greatest-fixpoint computation used as a test oracle.

mod matching;
mod naive;

use std::fmt;

use thiserror::Error;

use crate::features::FeatureSet;
use crate::graph::{LabeledGraph, SignatureMismatch};
use crate::interp::{BasicRoleId, ElementSet, Interpretation};
use crate::refine::{compute_partition_untraced, Partition};

pub use matching::has_perfect_matching;
pub use naive::naive_largest_bisimulation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BisimError {
    #[error(transparent)]
    SignatureMismatch(#[from] SignatureMismatch),
    #[error("dense relation of {pairs} pairs exceeds the limit of {limit}")]
    TooLarge { pairs: usize, limit: usize },
}

/// `Z ⊆ Δ^I × Δ^I'`, stored as one bit row per left element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisimRelation {
    right: usize,
    rows: Vec<ElementSet>,
}

impl BisimRelation {
    pub fn empty(left: usize, right: usize) -> Self {
        BisimRelation {
            right,
            rows: vec![ElementSet::empty(right); left],
        }
    }

    pub fn full(left: usize, right: usize) -> Self {
        BisimRelation {
            right,
            rows: vec![ElementSet::full(right); left],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_pairs(n, n, (0..n).map(|x| (x, x)))
    }

    pub fn from_pairs(
        left: usize,
        right: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut z = Self::empty(left, right);
        for (x, y) in pairs {
            z.insert(x, y);
        }
        z
    }

    pub fn left_size(&self) -> usize {
        self.rows.len()
    }

    pub fn right_size(&self) -> usize {
        self.right
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.rows[x].insert(y);
    }

    pub fn remove(&mut self, x: usize, y: usize) {
        self.rows[x].remove(y);
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    /// Right partners of `x`.
    pub fn row(&self, x: usize) -> &ElementSet {
        &self.rows[x]
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(ElementSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(ElementSet::is_empty)
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |y| (x, y)))
    }

    pub fn transpose(&self) -> BisimRelation {
        Self::from_pairs(
            self.right,
            self.left_size(),
            self.pairs().map(|(x, y)| (y, x)),
        )
    }

    /// `{(x, z) | ∃y. (x, y) ∈ self, (y, z) ∈ other}`.
    pub fn compose(&self, other: &BisimRelation) -> BisimRelation {
        assert_eq!(self.right, other.left_size());
        let mut out = Self::empty(self.left_size(), other.right);
        for (x, row) in self.rows.iter().enumerate() {
            for y in row.iter() {
                out.rows[x].union_with(&other.rows[y]);
            }
        }
        out
    }

    pub fn union(&self, other: &BisimRelation) -> BisimRelation {
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.union_with(b);
        }
        out
    }

    pub fn is_subset(&self, other: &BisimRelation) -> bool {
        self.rows
            .iter()
            .zip(&other.rows)
            .all(|(a, b)| a.is_subset(b))
    }
}

/// One violated condition, with the elements and the name involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionFailure {
    pub condition: u8,
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub message: String,
}

/// All violated conditions; empty iff the relation is a bisimulation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConditionReport {
    pub failures: Vec<ConditionFailure>,
}

impl ConditionReport {
    pub fn is_empty(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn has_condition(&self, id: u8) -> bool {
        self.failures.iter().any(|f| f.condition == id)
    }

    pub fn at(&self, id: u8, left: usize, right: usize) -> bool {
        self.failures
            .iter()
            .any(|f| f.condition == id && f.left == Some(left) && f.right == Some(right))
    }
}

/// One line per failure: `condition (<id>) <message>`.
impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.failures {
            writeln!(f, "condition ({}) {}", c.condition, c.message)?;
        }
        Ok(())
    }
}

struct Checker<'a> {
    phi: FeatureSet,
    left: &'a Interpretation,
    right: &'a Interpretation,
    z: &'a BisimRelation,
    report: ConditionReport,
}

impl Checker<'_> {
    fn fail(&mut self, condition: u8, pair: Option<(usize, usize)>, what: String) {
        let message = match pair {
            Some((x, y)) => format!(
                "at ({}, {}): {what}",
                self.left.element_name(x),
                self.right.element_name(y)
            ),
            None => what,
        };
        self.report.failures.push(ConditionFailure {
            condition,
            left: pair.map(|p| p.0),
            right: pair.map(|p| p.1),
            message,
        });
    }

    fn role_name(&self, b: BasicRoleId) -> String {
        let name = &self.left.signature().role_names()[b.role];
        if b.inverse {
            format!("inv({name})")
        } else {
            name.clone()
        }
    }

    fn run(mut self) -> ConditionReport {
        let sig = self.left.signature();
        let (l, r, z) = (self.left, self.right, self.z);
        for (a, name) in sig.individual_names().iter().enumerate() {
            if !z.contains(l.individual(a), r.individual(a)) {
                self.fail(
                    1,
                    None,
                    format!("individual {name} is not related to itself"),
                );
            }
        }
        let roles = BasicRoleId::enumerate(sig.num_roles(), self.phi.inverse());
        let rels: Vec<_> = roles
            .iter()
            .map(|&b| (b, l.basic_role(b), r.basic_role(b)))
            .collect();
        let pairs: Vec<_> = z.pairs().collect();
        for &(x, y) in &pairs {
            for (c, name) in sig.concept_names().iter().enumerate() {
                if l.concept(c).contains(x) != r.concept(c).contains(y) {
                    self.fail(2, Some((x, y)), format!("concept {name} differs"));
                }
            }
            for (b, rl, rr) in &rels {
                let (forth, back) = if b.inverse { (5, 6) } else { (3, 4) };
                for &s in rl.successors(x) {
                    if !rr
                        .successors(y)
                        .iter()
                        .any(|&t| z.contains(s as usize, t as usize))
                    {
                        let what = format!(
                            "{}-successor {} has no partner",
                            self.role_name(*b),
                            l.element_name(s as usize)
                        );
                        self.fail(forth, Some((x, y)), what);
                    }
                }
                for &t in rr.successors(y) {
                    if !rl
                        .successors(x)
                        .iter()
                        .any(|&s| z.contains(s as usize, t as usize))
                    {
                        let what = format!(
                            "{}-successor {} has no partner",
                            self.role_name(*b),
                            r.element_name(t as usize)
                        );
                        self.fail(back, Some((x, y)), what);
                    }
                }
                if self.phi.counting() {
                    let ls = rl.successors(x);
                    let rs = rr.successors(y);
                    if !has_perfect_matching(ls, rs, |s, t| z.contains(s as usize, t as usize)) {
                        let id = if b.inverse { 9 } else { 8 };
                        let what = format!(
                            "no bijection between {} and {} {}-successors",
                            ls.len(),
                            rs.len(),
                            self.role_name(*b)
                        );
                        self.fail(id, Some((x, y)), what);
                    }
                }
            }
            if self.phi.nominal() {
                for (a, name) in sig.individual_names().iter().enumerate() {
                    if (l.individual(a) == x) != (r.individual(a) == y) {
                        self.fail(7, Some((x, y)), format!("individual {name} differs"));
                    }
                }
            }
            if self.phi.self_loop() {
                for (ri, name) in sig.role_names().iter().enumerate() {
                    if l.role(ri).contains(x, x) != r.role(ri).contains(y, y) {
                        self.fail(12, Some((x, y)), format!("self-loop of {name} differs"));
                    }
                }
            }
        }
        if self.phi.universal() {
            for x in 0..l.size() {
                if z.row(x).is_empty() {
                    let what = format!("left element {} has no partner", l.element_name(x));
                    self.fail(10, None, what);
                }
            }
            let covered = (0..l.size()).fold(ElementSet::empty(r.size()), |mut acc, x| {
                acc.union_with(z.row(x));
                acc
            });
            for y in 0..r.size() {
                if !covered.contains(y) {
                    let what = format!("right element {} has no partner", r.element_name(y));
                    self.fail(11, None, what);
                }
            }
        }
        self.report
    }
}

/// Checks conditions (1) to (12) as activated by `phi`. Successor
/// bijections are decided by exact bipartite matching, so `z` need not be
/// an equivalence. Both interpretations must share a signature and `z`
/// must have matching dimensions.
pub fn is_bisimulation(
    phi: FeatureSet,
    left: &Interpretation,
    right: &Interpretation,
    z: &BisimRelation,
) -> ConditionReport {
    assert_eq!(left.signature(), right.signature(), "signatures differ");
    assert_eq!((z.left_size(), z.right_size()), (left.size(), right.size()));
    Checker {
        phi,
        left,
        right,
        z,
        report: ConditionReport::default(),
    }
    .run()
}

/// The partition of the largest auto-bisimulation of `interp`.
pub fn largest_auto_bisimulation(phi: FeatureSet, interp: &Interpretation) -> Partition {
    compute_partition_untraced(phi, &LabeledGraph::from_interpretation(interp))
}

/// The equivalence relation of a partition.
pub fn partition_to_relation(p: &Partition) -> BisimRelation {
    let n = p.num_nodes();
    let mut z = BisimRelation::empty(n, n);
    for b in p.blocks() {
        for &x in b {
            for &y in b {
                z.insert(x as usize, y as usize);
            }
        }
    }
    z
}

/// The largest bisimulation between `left` and `right`, or `None` if there
/// is none (some individual or, with `U`, some element has no partner).
pub fn largest_bisimulation(
    phi: FeatureSet,
    left: &Interpretation,
    right: &Interpretation,
) -> Result<Option<BisimRelation>, BisimError> {
    let g = LabeledGraph::disjoint_union(left, right)?;
    let p = compute_partition_untraced(phi, &g);
    let n = left.size();
    let mut z = BisimRelation::empty(n, right.size());
    for b in p.blocks() {
        let split = b.partition_point(|&x| (x as usize) < n);
        for &x in &b[..split] {
            for &y in &b[split..] {
                z.insert(x as usize, y as usize - n);
            }
        }
    }
    Ok(global_conditions_hold(phi, left, right, &z).then_some(z))
}

/// Conditions (1), and (10)/(11) if `U ∈ phi`.
pub(crate) fn global_conditions_hold(
    phi: FeatureSet,
    left: &Interpretation,
    right: &Interpretation,
    z: &BisimRelation,
) -> bool {
    let named = left
        .individuals()
        .iter()
        .zip(right.individuals())
        .all(|(&x, &y)| z.contains(x, y));
    if !named {
        return false;
    }
    if phi.universal() {
        let total_left = (0..left.size()).all(|x| !z.row(x).is_empty());
        let total_right = z.transpose().rows.iter().all(|r| !r.is_empty());
        return total_left && total_right;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn phi(s: &str) -> FeatureSet {
        s.parse().unwrap()
    }

    #[test]
    fn identity_is_a_bisimulation() {
        let i = fixtures::fig2_i3();
        for p in FeatureSet::all() {
            assert!(is_bisimulation(p, &i, &i, &BisimRelation::identity(i.size())).is_empty());
        }
    }

    #[test]
    fn family_trees_bisimilar_only_without_counting() {
        let (i1, i2) = (fixtures::fig2_i1(), fixtures::fig2_i2());
        let z = largest_bisimulation(FeatureSet::EMPTY, &i1, &i2)
            .unwrap()
            .unwrap();
        assert!(is_bisimulation(FeatureSet::EMPTY, &i1, &i2, &z).is_empty());
        assert!(largest_bisimulation(phi("Q"), &i1, &i2).unwrap().is_none());
        let u1 = i1.element_index("u1").unwrap();
        let v1 = i2.element_index("v1").unwrap();
        assert!(z.contains(u1, v1));
        let report = is_bisimulation(phi("Q"), &i1, &i2, &z);
        assert!(report.at(8, u1, v1));
        let z = largest_bisimulation(phi("IO"), &i1, &i2).unwrap().unwrap();
        let u2 = i1.element_index("u2").unwrap();
        for v in ["v2", "v4"] {
            assert!(z.contains(u2, i2.element_index(v).unwrap()));
        }
    }

    #[test]
    fn tbox_counterexample_needs_universal_role() {
        let (i, j) = fixtures::tbox_counterexample();
        let z = BisimRelation::from_pairs(1, 2, [(0, 0)]);
        assert!(is_bisimulation(phi("IOQS"), &i, &j, &z).is_empty());
        let report = is_bisimulation(phi("U"), &i, &j, &z);
        assert!(report.has_condition(11) && !report.has_condition(10));
        assert!(largest_bisimulation(phi("U"), &i, &j).unwrap().is_none());
    }

    #[test]
    fn signature_mismatch() {
        let r = largest_bisimulation(
            FeatureSet::EMPTY,
            &fixtures::fig2_i1(),
            &fixtures::two_cycle(),
        );
        assert!(matches!(r, Err(BisimError::SignatureMismatch(_))));
    }

    #[test]
    fn relation_algebra() {
        let z = BisimRelation::from_pairs(2, 3, [(0, 1), (1, 2)]);
        let w = BisimRelation::from_pairs(3, 1, [(1, 0)]);
        assert_eq!(z.compose(&w).pairs().collect::<Vec<_>>(), [(0, 0)]);
        assert_eq!(z.transpose().pairs().collect::<Vec<_>>(), [(1, 0), (2, 1)]);
        assert_eq!(z.len(), 2);
        assert!(z.is_subset(&z.union(&BisimRelation::full(2, 3))));
    }

    #[test]
    fn report_lines() {
        let (i1, i2) = (fixtures::fig2_i1(), fixtures::fig2_i2());
        let z = BisimRelation::empty(i1.size(), i2.size());
        let text = is_bisimulation(FeatureSet::EMPTY, &i1, &i2, &z).to_string();
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("condition (1) individual a"));
    }
}
