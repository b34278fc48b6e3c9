//! Satisfaction of axioms and knowledge bases, and closure of an
//! interpretation under role inclusion axioms.

use std::collections::HashSet;

use super::{check_expression, EvalError, Evaluator};
use crate::features::FeatureSet;
use crate::interp::{Interpretation, Relation};
use crate::syntax::{Assertion, BasicRole, Gci, KnowledgeBase, RoleAxiom};

fn chain_relation(interp: &Interpretation, chain: &[BasicRole]) -> Relation {
    let ev = Evaluator::new(interp);
    let mut rel: Option<Relation> = None;
    for b in chain {
        let r = interp.basic_role(ev.basic(b));
        rel = Some(match rel {
            None => r,
            Some(acc) => acc.compose(&r),
        });
    }
    rel.unwrap_or_else(|| Relation::identity(interp.size()))
}

/// `I ⊨ ax`. Names must belong to the signature of `interp`.
pub fn check_role_axiom(interp: &Interpretation, ax: &RoleAxiom) -> bool {
    let target = interp.role(
        interp
            .signature()
            .role_id(ax.target())
            .expect("checked role name"),
    );
    match ax {
        RoleAxiom::EpsSub(_) => (0..interp.size()).all(|x| target.contains(x, x)),
        RoleAxiom::ChainSub(chain, _) => chain_relation(interp, chain).is_subset(target),
    }
}

/// `I ⊨ C ⊑ D`.
pub fn check_gci(interp: &Interpretation, gci: &Gci) -> bool {
    let mut ev = Evaluator::new(interp);
    ev.concept(&gci.lhs).is_subset(&ev.concept(&gci.rhs))
}

/// `I ⊨ α` for an individual assertion.
pub fn check_assertion(interp: &Interpretation, a: &Assertion) -> bool {
    let ind = |name: &str| {
        interp
            .individual_by_name(name)
            .expect("checked individual name")
    };
    let mut ev = Evaluator::new(interp);
    match a {
        Assertion::ConceptOf(c, x) => ev.concept(c).contains(ind(x)),
        Assertion::RoleOf(r, x, y) => ev.role(r).contains(ind(x), ind(y)),
        Assertion::NegRoleOf(r, x, y) => !ev.role(r).contains(ind(x), ind(y)),
        Assertion::Eq(x, y) => ind(x) == ind(y),
        Assertion::Neq(x, y) => ind(x) != ind(y),
    }
}

/// Outcome of checking a knowledge base: the printed form of every axiom
/// the interpretation violates, in input order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KbReport {
    pub failures: Vec<String>,
}

impl KbReport {
    pub fn is_model(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every axiom of `kb` after validating it against `phi` and the
/// signature of `interp`.
pub fn check_kb(
    interp: &Interpretation,
    phi: FeatureSet,
    kb: &KnowledgeBase,
) -> Result<KbReport, EvalError> {
    check_expression(interp, phi, kb)?;
    let mut failures = Vec::new();
    for ax in &kb.rbox {
        if !check_role_axiom(interp, ax) {
            failures.push(format!("rbox: {ax}"));
        }
    }
    for g in &kb.tbox {
        if !check_gci(interp, g) {
            failures.push(format!("tbox: {g}"));
        }
    }
    for a in &kb.abox {
        if !check_assertion(interp, a) {
            failures.push(format!("abox: {a}"));
        }
    }
    Ok(KbReport { failures })
}

struct Closure {
    succ: Vec<Vec<Vec<u32>>>,
    pred: Vec<Vec<Vec<u32>>>,
    present: Vec<HashSet<(u32, u32)>>,
}

impl Closure {
    fn add(&mut self, r: usize, x: u32, y: u32) -> bool {
        if self.present[r].insert((x, y)) {
            self.succ[r][x as usize].push(y);
            self.pred[r][y as usize].push(x);
            true
        } else {
            false
        }
    }

    /// Elements reachable from `from` along `b`, or against it if
    /// `backward`.
    fn step(&self, b: (usize, bool), from: &[u32], backward: bool) -> Vec<u32> {
        let (r, inverse) = b;
        let lists = if inverse != backward {
            &self.pred[r]
        } else {
            &self.succ[r]
        };
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for &x in from {
            for &y in &lists[x as usize] {
                if seen.insert(y) {
                    out.push(y);
                }
            }
        }
        out
    }
}

/// The least extension of the role extensions of `interp` that satisfies
/// every role axiom of `rbox`. Concepts and individuals are unchanged.
pub fn least_r_extension(interp: &Interpretation, rbox: &[RoleAxiom]) -> Interpretation {
    let n = interp.size();
    let sig = interp.signature();
    let nr = sig.num_roles();
    let role_id = |name: &str| sig.role_id(name).expect("checked role name");
    let mut cl = Closure {
        succ: vec![vec![Vec::new(); n]; nr],
        pred: vec![vec![Vec::new(); n]; nr],
        present: vec![HashSet::new(); nr],
    };
    let mut work: Vec<(usize, u32, u32)> = Vec::new();
    for (r, rel) in interp.roles().iter().enumerate() {
        for (x, y) in rel.pairs() {
            cl.add(r, x as u32, y as u32);
            work.push((r, x as u32, y as u32));
        }
    }
    struct Ax {
        chain: Vec<(usize, bool)>,
        target: usize,
    }
    let mut axioms = Vec::new();
    for ax in rbox {
        match ax {
            RoleAxiom::EpsSub(t) => {
                let t = role_id(t);
                for x in 0..n as u32 {
                    if cl.add(t, x, x) {
                        work.push((t, x, x));
                    }
                }
            }
            RoleAxiom::ChainSub(chain, t) => axioms.push(Ax {
                chain: chain
                    .iter()
                    .map(|b| (role_id(&b.name), b.inverse))
                    .collect(),
                target: role_id(t),
            }),
        }
    }
    // Semi-naive: each derived pair is joined once, in every chain position
    // it can occupy, with the current extensions on both sides.
    while let Some((r, x, y)) = work.pop() {
        for ax in &axioms {
            for (i, &(br, inv)) in ax.chain.iter().enumerate() {
                if br != r {
                    continue;
                }
                let (from, to) = if inv { (y, x) } else { (x, y) };
                let mut left = vec![from];
                for &b in ax.chain[..i].iter().rev() {
                    left = cl.step(b, &left, true);
                }
                let mut right = vec![to];
                for &b in &ax.chain[i + 1..] {
                    right = cl.step(b, &right, false);
                }
                for &a in &left {
                    for &c in &right {
                        if cl.add(ax.target, a, c) {
                            work.push((ax.target, a, c));
                        }
                    }
                }
            }
        }
    }
    let roles = cl
        .succ
        .into_iter()
        .map(|rows| {
            Relation::from_pairs(
                n,
                rows.iter()
                    .enumerate()
                    .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y as usize))),
            )
        })
        .collect();
    interp.with_roles(roles)
}
