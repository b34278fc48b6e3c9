//! Concepts separating two elements that the refinement put into different
//! blocks, rebuilt from the refinement trace.
//!
//! Replaying the trace keeps a concept for every block and every
//! constellation whose extension is exactly that set of elements. The
//! first event that puts `x` and `y` apart then yields a single literal,
//! number restriction or existential over those concepts that holds at `x`
//! and fails at `y`. Subterms are shared, so the result is a DAG.

use std::sync::Arc;

use super::QuotientError;
use crate::features::FeatureSet;
use crate::graph::LabeledGraph;
use crate::interp::{BasicRoleId, Interpretation};
use crate::refine::{compute_partition, RefinementTrace, SplitKey, Splitter, TraceEvent};
use crate::semantics::Evaluator;
use crate::syntax::{validate_in_language, BasicRole, Concept, Role};

/// A concept `concept` with `x ∈ concept` and `y ∉ concept`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessConcept {
    pub concept: Arc<Concept>,
    pub x: usize,
    pub y: usize,
}

type C = Arc<Concept>;

fn top() -> C {
    Arc::new(Concept::Top)
}

fn and(a: &C, b: C) -> C {
    match (&**a, &*b) {
        (Concept::Top, _) => b,
        (_, Concept::Top) => a.clone(),
        _ => Arc::new(Concept::And(a.clone(), b)),
    }
}

fn not(a: C) -> C {
    Arc::new(Concept::Not(a))
}

struct Builder<'a> {
    interp: &'a Interpretation,
    roles: Vec<Arc<Role>>,
}

impl Builder<'_> {
    fn basic(&self, b: BasicRoleId) -> BasicRole {
        BasicRole {
            name: self.interp.signature().role_names()[b.role].clone(),
            inverse: b.inverse,
        }
    }

    fn role(&self, b: BasicRoleId) -> Arc<Role> {
        self.roles[2 * b.role + usize::from(b.inverse)].clone()
    }

    fn some(&self, b: BasicRoleId, filler: &C, holds: bool) -> C {
        let c = Arc::new(Concept::Some(self.role(b), filler.clone()));
        if holds {
            c
        } else {
            not(c)
        }
    }

    fn at_least(&self, k: u64, b: BasicRoleId, filler: &C) -> C {
        Arc::new(Concept::AtLeast(k, self.basic(b), filler.clone()))
    }

    fn at_most(&self, k: u64, b: BasicRoleId, filler: &C) -> C {
        Arc::new(Concept::AtMost(k, self.basic(b), filler.clone()))
    }

    /// The concept describing elements with key `key` against the given
    /// fillers.
    fn describe(&self, key: SplitKey, b: BasicRoleId, part: &C, rest: Option<&C>) -> C {
        match key {
            SplitKey::Count(0) => self.at_most(0, b, part),
            SplitKey::Count(k) => and(&self.at_least(k, b, part), self.at_most(k, b, part)),
            SplitKey::Exists { part: p, rest: r } => {
                let head = self.some(b, part, p);
                match (r, rest) {
                    (Some(r), Some(rest)) => and(&head, self.some(b, rest, r)),
                    _ => head,
                }
            }
        }
    }

    /// A concept true under key `kx` and false under `ky`.
    fn separate(
        &self,
        kx: SplitKey,
        ky: SplitKey,
        b: BasicRoleId,
        part: &C,
        rest: Option<&C>,
    ) -> C {
        match (kx, ky) {
            (SplitKey::Count(a), SplitKey::Count(c)) if a > c => self.at_least(a, b, part),
            (SplitKey::Count(a), SplitKey::Count(_)) => self.at_most(a, b, part),
            (SplitKey::Exists { part: p, .. }, SplitKey::Exists { part: q, .. }) if p != q => {
                self.some(b, part, p)
            }
            (SplitKey::Exists { rest: Some(r), .. }, SplitKey::Exists { .. }) => {
                let rest = rest.expect("rest key without a rest constellation");
                self.some(b, rest, r)
            }
            _ => unreachable!("keys {kx:?} and {ky:?} do not differ"),
        }
    }
}

/// Labels carried by some but not all of the given label lists.
fn varying<'a>(lists: impl ExactSizeIterator<Item = &'a [u32]>, n: usize) -> Vec<u32> {
    let total = lists.len();
    let mut count = vec![0usize; n];
    for list in lists {
        for &a in list {
            count[a as usize] += 1;
        }
    }
    (0..n as u32)
        .filter(|&a| count[a as usize] != 0 && count[a as usize] != total)
        .collect()
}

/// Literals over the labels that are not constant on the domain.
fn initial_concepts(interp: &Interpretation, trace: &RefinementTrace) -> Vec<C> {
    let sig = interp.signature();
    let atoms = varying(trace.init.iter().map(|b| &b.atoms[..]), sig.num_concepts());
    let nominals = varying(
        trace.init.iter().map(|b| &b.nominals[..]),
        sig.num_individuals(),
    );
    let loops = varying(
        trace.init.iter().map(|b| &b.self_loops[..]),
        sig.num_roles(),
    );
    trace
        .init
        .iter()
        .map(|b| {
            let mut c = top();
            let lit = |has: bool, atom: Concept| {
                let a = Arc::new(atom);
                if has {
                    a
                } else {
                    not(a)
                }
            };
            for &a in &atoms {
                let l = lit(
                    b.atoms.contains(&a),
                    Concept::atom(&sig.concept_names()[a as usize]),
                );
                c = and(&c, l);
            }
            for &a in &nominals {
                let l = lit(
                    b.nominals.contains(&a),
                    Concept::nominal(&sig.individual_names()[a as usize]),
                );
                c = and(&c, l);
            }
            for &r in &loops {
                let l = lit(
                    b.self_loops.contains(&r),
                    Concept::self_loop(&sig.role_names()[r as usize]),
                );
                c = and(&c, l);
            }
            c
        })
        .collect()
}

/// A literal telling apart two initial blocks.
fn initial_literal(interp: &Interpretation, trace: &RefinementTrace, bx: usize, by: usize) -> C {
    let sig = interp.signature();
    let (x, y) = (&trace.init[bx], &trace.init[by]);
    let pick = |xs: &[u32], ys: &[u32]| -> Option<(u32, bool)> {
        xs.iter()
            .find(|a| !ys.contains(a))
            .map(|&a| (a, true))
            .or_else(|| ys.iter().find(|a| !xs.contains(a)).map(|&a| (a, false)))
    };
    let lit = |(c, has): (Concept, bool)| {
        let a = Arc::new(c);
        if has {
            a
        } else {
            not(a)
        }
    };
    if let Some((a, has)) = pick(&x.atoms, &y.atoms) {
        return lit((Concept::atom(&sig.concept_names()[a as usize]), has));
    }
    if let Some((a, has)) = pick(&x.nominals, &y.nominals) {
        return lit((Concept::nominal(&sig.individual_names()[a as usize]), has));
    }
    let (r, has) = pick(&x.self_loops, &y.self_loops).expect("initial blocks differ");
    lit((Concept::self_loop(&sig.role_names()[r as usize]), has))
}

/// Builds a concept of the language of `phi` holding at `x` and not at `y`
/// from a trace of refining the graph of `interp` under `phi`. The result is
/// checked against the interpretation before it is returned.
pub fn separating_concept(
    phi: FeatureSet,
    interp: &Interpretation,
    trace: &RefinementTrace,
    x: usize,
    y: usize,
) -> Result<WitnessConcept, QuotientError> {
    let n = interp.size();
    for z in [x, y] {
        if z >= n || z >= trace.num_nodes {
            return Err(QuotientError::OutOfRange(z));
        }
    }
    let sig = interp.signature();
    let builder = Builder {
        interp,
        roles: (0..sig.num_roles())
            .flat_map(|r| {
                let name = &sig.role_names()[r];
                [Arc::new(Role::atom(name)), Arc::new(Role::atom(name).inv())]
            })
            .collect(),
    };

    let mut block_char = initial_concepts(interp, trace);
    let mut cons_char: Vec<C> = vec![top()];
    let init_of = |z: usize| {
        trace
            .init
            .iter()
            .position(|b| b.elements.contains(&(z as u32)))
    };
    let (mut lx, mut ly) = (
        init_of(x).ok_or(QuotientError::OutOfRange(x))?,
        init_of(y).ok_or(QuotientError::OutOfRange(y))?,
    );
    let mut found = (lx != ly).then(|| initial_literal(interp, trace, lx, ly));

    for ev in &trace.events {
        if found.is_some() {
            break;
        }
        match ev {
            TraceEvent::Carve { from, block, into } => {
                let (from, into) = (*from as usize, *into as usize);
                let b = block_char[*block as usize].clone();
                if cons_char.len() <= into {
                    cons_char.resize(into + 1, top());
                }
                cons_char[from] = and(&cons_char[from], not(b.clone()));
                cons_char[into] = b;
            }
            TraceEvent::Split {
                block,
                role,
                splitter,
                stay,
                moved,
            } => {
                let (part, rest) = match splitter {
                    Splitter::Whole => (top(), None),
                    Splitter::Part { part, rest } => (
                        cons_char[*part as usize].clone(),
                        Some(cons_char[*rest as usize].clone()),
                    ),
                };
                let parent = block_char[*block as usize].clone();
                let key_of = |z: usize| {
                    moved
                        .iter()
                        .find(|g| g.elements.contains(&(z as u32)))
                        .map_or((*stay, *block as usize), |g| (g.key, g.block as usize))
                };
                let (kx, bx) = if lx == *block as usize {
                    key_of(x)
                } else {
                    (*stay, lx)
                };
                let (ky, by) = if ly == *block as usize {
                    key_of(y)
                } else {
                    (*stay, ly)
                };
                for g in moved {
                    let id = g.block as usize;
                    if block_char.len() <= id {
                        block_char.resize(id + 1, top());
                    }
                    block_char[id] = and(
                        &parent,
                        builder.describe(g.key, *role, &part, rest.as_ref()),
                    );
                }
                block_char[*block as usize] = and(
                    &parent,
                    builder.describe(*stay, *role, &part, rest.as_ref()),
                );
                if lx == *block as usize && ly == lx && bx != by {
                    found = Some(builder.separate(kx, ky, *role, &part, rest.as_ref()));
                }
                lx = bx;
                ly = by;
            }
        }
    }

    let concept = found.ok_or(QuotientError::NotSeparated { x, y })?;
    let violations = validate_in_language(phi, &*concept);
    if let Some(v) = violations.first() {
        return Err(QuotientError::InvalidWitness(v.to_string()));
    }
    let ext = Evaluator::new(interp).concept(&concept);
    if !ext.contains(x) || ext.contains(y) {
        return Err(QuotientError::InvalidWitness(format!(
            "concept does not separate {} from {}",
            interp.element_name(x),
            interp.element_name(y)
        )));
    }
    Ok(WitnessConcept { concept, x, y })
}

/// Refines `interp` under `phi` and returns a concept separating `x` from
/// `y`, or [`QuotientError::NotSeparated`] when they are `phi`-bisimilar.
pub fn witness(
    phi: FeatureSet,
    interp: &Interpretation,
    x: usize,
    y: usize,
) -> Result<WitnessConcept, QuotientError> {
    let g = LabeledGraph::from_interpretation(interp);
    let (_, trace) = compute_partition(phi, &g);
    separating_concept(phi, interp, &trace, x, y)
}
