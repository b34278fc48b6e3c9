//! Interpretation of roles and concepts, including the counting variant
//! used for quotients that must preserve number restrictions and `Self`.

mod kb;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::features::FeatureSet;
use crate::interp::{BasicRoleId, ElementSet, Interpretation, QSInterpretation, Relation};
use crate::syntax::{
    check_names, validate_in_language, BasicRole, Concept, Role, Syntax, UnknownName, Violation,
};

pub use kb::{check_assertion, check_gci, check_kb, check_role_axiom, least_r_extension, KbReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("expression is outside the language: {}", join(.0))]
    FeatureViolation(Vec<Violation>),
    #[error("{}", join(.0))]
    UnknownNames(Vec<UnknownName>),
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Checks that `expr` is in the language of `phi` and only uses names of
/// the signature of `interp`.
pub fn check_expression<'a>(
    interp: &Interpretation,
    phi: FeatureSet,
    expr: impl Into<Syntax<'a>>,
) -> Result<(), EvalError> {
    let expr = expr.into();
    let v = validate_in_language(phi, expr);
    if !v.is_empty() {
        return Err(EvalError::FeatureViolation(v));
    }
    let u = check_names(interp.signature(), expr);
    if !u.is_empty() {
        return Err(EvalError::UnknownNames(u));
    }
    Ok(())
}

/// `R^I` for a role expression of the language of `phi`.
pub fn eval_role(
    interp: &Interpretation,
    phi: FeatureSet,
    role: &Role,
) -> Result<Relation, EvalError> {
    check_expression(interp, phi, role)?;
    Ok(Evaluator::new(interp).role(role))
}

/// `C^I` for a concept of the language of `phi`.
pub fn eval_concept(
    interp: &Interpretation,
    phi: FeatureSet,
    concept: &Concept,
) -> Result<ElementSet, EvalError> {
    check_expression(interp, phi, concept)?;
    Ok(Evaluator::new(interp).concept(concept))
}

/// `C^I` in a QS-interpretation: number restrictions sum multiplicities and
/// `Self` reads the stored reflexivity sets.
pub fn eval_concept_qs(
    qs: &QSInterpretation,
    phi: FeatureSet,
    concept: &Concept,
) -> Result<ElementSet, EvalError> {
    check_expression(qs.base(), phi, concept)?;
    Ok(Evaluator::with_counts(qs).concept(concept))
}

/// Evaluator over one interpretation. Results for `Arc`-shared subterms are
/// memoised by node address across calls. Names must have
/// been checked against the signature beforehand; unknown names panic.
pub struct Evaluator<'a> {
    interp: &'a Interpretation,
    qs: Option<&'a QSInterpretation>,
    transposed: HashMap<usize, Relation>,
    /// Keyed by address; the stored `Arc` keeps the address from being
    /// reused by another concept while the entry lives.
    concepts: HashMap<*const Concept, (Arc<Concept>, ElementSet)>,
}

impl<'a> Evaluator<'a> {
    pub fn new(interp: &'a Interpretation) -> Self {
        Evaluator {
            interp,
            qs: None,
            transposed: HashMap::new(),
            concepts: HashMap::new(),
        }
    }

    pub fn with_counts(qs: &'a QSInterpretation) -> Self {
        Evaluator {
            qs: Some(qs),
            ..Evaluator::new(qs.base())
        }
    }

    fn n(&self) -> usize {
        self.interp.size()
    }

    fn role_id(&self, name: &str) -> usize {
        self.interp
            .signature()
            .role_id(name)
            .unwrap_or_else(|| panic!("unknown role {name:?}"))
    }

    fn successors(&mut self, role: usize, inverse: bool, x: usize) -> &[u32] {
        if inverse {
            let interp = self.interp;
            self.transposed
                .entry(role)
                .or_insert_with(|| interp.role(role).transpose())
                .successors(x)
        } else {
            self.interp.role(role).successors(x)
        }
    }

    fn image(&mut self, role: usize, inverse: bool, set: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.n());
        for x in set.iter() {
            for &y in self.successors(role, inverse, x) {
                out.insert(y as usize);
            }
        }
        out
    }

    /// `{x | ∃y ∈ set. (x, y) ∈ R}`.
    pub fn pre_image(&mut self, role: &Role, set: &ElementSet) -> ElementSet {
        self.transfer(role, set, true)
    }

    /// `{y | ∃x ∈ set. (x, y) ∈ R}`.
    pub fn post_image(&mut self, role: &Role, set: &ElementSet) -> ElementSet {
        self.transfer(role, set, false)
    }

    fn transfer(&mut self, role: &Role, set: &ElementSet, backward: bool) -> ElementSet {
        match role {
            Role::Atom(r) => {
                let id = self.role_id(r);
                self.image(id, backward, set)
            }
            Role::Inverse(inner) => self.transfer(inner, set, !backward),
            Role::Compose(a, b) => {
                let (first, second) = if backward { (b, a) } else { (a, b) };
                let mid = self.transfer(first, set, backward);
                self.transfer(second, &mid, backward)
            }
            Role::Union(a, b) => {
                let mut out = self.transfer(a, set, backward);
                out.union_with(&self.transfer(b, set, backward));
                out
            }
            Role::Star(inner) => {
                // Images distribute over union, so only the newly reached
                // elements need to be pushed through again.
                let mut reached = set.clone();
                let mut frontier = set.clone();
                while !frontier.is_empty() {
                    let next = self.transfer(inner, &frontier, backward);
                    let mut fresh = reached.complement();
                    fresh.intersect_with(&next);
                    reached.union_with(&fresh);
                    frontier = fresh;
                }
                reached
            }
            Role::Test(c) => {
                let mut out = self.shared(c);
                out.intersect_with(set);
                out
            }
            Role::Epsilon => set.clone(),
            Role::Universal => {
                if set.is_empty() {
                    ElementSet::empty(self.n())
                } else {
                    ElementSet::full(self.n())
                }
            }
        }
    }

    pub fn role(&mut self, role: &Role) -> Relation {
        let n = self.n();
        match role {
            Role::Atom(r) => self.interp.role(self.role_id(r)).clone(),
            Role::Inverse(inner) => self.role(inner).transpose(),
            Role::Compose(a, b) => self.role(a).compose(&self.role(b)),
            Role::Union(a, b) => self.role(a).union(&self.role(b)),
            Role::Star(inner) => self.role(inner).star(),
            Role::Test(c) => Relation::diagonal(&self.shared(c)),
            Role::Epsilon => Relation::identity(n),
            Role::Universal => Relation::full(n),
        }
    }

    fn basic(&self, b: &BasicRole) -> BasicRoleId {
        BasicRoleId {
            role: self.role_id(&b.name),
            inverse: b.inverse,
        }
    }

    fn count(&mut self, b: &BasicRole, filler: &ElementSet, x: usize) -> u64 {
        let id = self.basic(b);
        if let Some(qs) = self.qs {
            let mult = qs.multiplicity(id);
            let succ = self.successors(id.role, id.inverse, x).to_vec();
            succ.iter()
                .zip(mult.weights(x))
                .filter(|(y, _)| filler.contains(**y as usize))
                .map(|(_, w)| *w)
                .sum()
        } else {
            self.successors(id.role, id.inverse, x)
                .iter()
                .filter(|y| filler.contains(**y as usize))
                .count() as u64
        }
    }

    fn shared(&mut self, c: &Arc<Concept>) -> ElementSet {
        let key = Arc::as_ptr(c);
        if let Some((_, hit)) = self.concepts.get(&key) {
            return hit.clone();
        }
        let out = self.concept(c);
        self.concepts.insert(key, (c.clone(), out.clone()));
        out
    }

    pub fn concept(&mut self, c: &Concept) -> ElementSet {
        let n = self.n();
        let out = match c {
            Concept::Top => ElementSet::full(n),
            Concept::Bottom => ElementSet::empty(n),
            Concept::Atom(a) => {
                let id = self.interp.signature().concept_id(a);
                self.interp
                    .concept(id.unwrap_or_else(|| panic!("unknown concept {a:?}")))
                    .clone()
            }
            Concept::Nominal(a) => {
                let x = self
                    .interp
                    .individual_by_name(a)
                    .unwrap_or_else(|| panic!("unknown individual {a:?}"));
                ElementSet::from_elements(n, [x])
            }
            Concept::Not(d) => self.shared(d).complement(),
            Concept::And(a, b) => {
                let mut s = self.shared(a);
                s.intersect_with(&self.shared(b));
                s
            }
            Concept::Or(a, b) => {
                let mut s = self.shared(a);
                s.union_with(&self.shared(b));
                s
            }
            Concept::Some(r, d) => {
                let filler = self.shared(d);
                self.pre_image(r, &filler)
            }
            Concept::All(r, d) => {
                let outside = self.shared(d).complement();
                self.pre_image(r, &outside).complement()
            }
            Concept::AtLeast(k, b, d) => {
                let filler = self.shared(d);
                let mut s = ElementSet::empty(n);
                for x in 0..n {
                    if self.count(b, &filler, x) >= *k {
                        s.insert(x);
                    }
                }
                s
            }
            Concept::AtMost(k, b, d) => {
                let filler = self.shared(d);
                let mut s = ElementSet::empty(n);
                for x in 0..n {
                    if self.count(b, &filler, x) <= *k {
                        s.insert(x);
                    }
                }
                s
            }
            Concept::SelfLoop(r) => {
                let id = self.role_id(r);
                match self.qs {
                    Some(qs) => qs.se(id).clone(),
                    None => self.interp.role(id).reflexive_points(),
                }
            }
        };
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::syntax::parse_concept;

    fn names(interp: &Interpretation, s: &ElementSet) -> Vec<String> {
        s.iter()
            .map(|x| interp.element_name(x).to_string())
            .collect()
    }

    #[test]
    fn family_concepts() {
        let i1 = fixtures::fig2_i1();
        let iq: FeatureSet = "IOQ".parse().unwrap();
        let eval = |t: &str| {
            names(
                &i1,
                &eval_concept(&i1, iq, &parse_concept(t).unwrap()).unwrap(),
            )
        };
        assert_eq!(eval("some r top"), ["a", "b", "c", "u1"]);
        assert_eq!(eval("atleast 2 r F"), Vec::<String>::new());
        assert_eq!(eval("atleast 2 r top"), ["c", "u1"]);
        assert_eq!(eval("some inv(r) {b}"), ["u1"]);
        assert_eq!(
            eval("all (r)* ({a} or atleast 2 inv(r) top)"),
            ["a", "u1", "u2", "u3"]
        );
        assert_eq!(eval("all r bottom"), ["u2", "u3"]);
        assert_eq!(eval("some (r ; r) M"), ["a", "b"]);
    }

    #[test]
    fn language_is_enforced() {
        let i1 = fixtures::fig2_i1();
        let c = parse_concept("some inv(r) top").unwrap();
        assert!(matches!(
            eval_concept(&i1, FeatureSet::EMPTY, &c),
            Err(EvalError::FeatureViolation(_))
        ));
        let c = parse_concept("some s top").unwrap();
        assert!(matches!(
            eval_concept(&i1, FeatureSet::FULL, &c),
            Err(EvalError::UnknownNames(_))
        ));
    }

    #[test]
    fn star_and_tests_match_relational_semantics() {
        let i3 = fixtures::fig2_i3();
        let role = crate::syntax::parse_role("(inv(r) | test(F))*").unwrap();
        let rel = eval_role(&i3, FeatureSet::FULL, &role).unwrap();
        let mut ev = Evaluator::new(&i3);
        for x in 0..i3.size() {
            let single = ElementSet::from_elements(i3.size(), [x]);
            let via_pre = ev.pre_image(&role, &single);
            let expected: Vec<usize> = (0..i3.size()).filter(|&y| rel.contains(y, x)).collect();
            assert_eq!(via_pre.to_vec(), expected);
        }
    }

    #[test]
    fn universal_role() {
        let i1 = fixtures::fig2_i1();
        let c = parse_concept("some U (F and M)").unwrap();
        assert!(eval_concept(&i1, FeatureSet::FULL, &c).unwrap().is_empty());
        let c = parse_concept("all U (F or M)").unwrap();
        assert_eq!(eval_concept(&i1, FeatureSet::FULL, &c).unwrap().len(), 6);
    }

    #[test]
    fn self_loops() {
        let q = fixtures::q_counterexample();
        let c = parse_concept("self r").unwrap();
        assert_eq!(
            names(&q, &eval_concept(&q, FeatureSet::FULL, &c).unwrap()),
            ["a"]
        );
    }
}
