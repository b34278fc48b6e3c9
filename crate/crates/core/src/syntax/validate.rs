//! Membership of expressions in a sublanguage, and name resolution against a
//! signature.

use std::collections::HashSet;
use std::fmt;

use super::{Assertion, BasicRole, Concept, Gci, KnowledgeBase, Role, RoleAxiom};
use crate::features::{Feature, FeatureSet};
use crate::interp::Signature;

/// Any syntactic object that can be checked.
#[derive(Debug, Clone, Copy)]
pub enum Syntax<'a> {
    Concept(&'a Concept),
    Role(&'a Role),
    RoleAxiom(&'a RoleAxiom),
    Gci(&'a Gci),
    Assertion(&'a Assertion),
    Kb(&'a KnowledgeBase),
}

macro_rules! syntax_from {
    ($t:ty, $v:ident) => {
        impl<'a> From<&'a $t> for Syntax<'a> {
            fn from(x: &'a $t) -> Self {
                Syntax::$v(x)
            }
        }
    };
}
syntax_from!(Concept, Concept);
syntax_from!(Role, Role);
syntax_from!(RoleAxiom, RoleAxiom);
syntax_from!(Gci, Gci);
syntax_from!(Assertion, Assertion);
syntax_from!(KnowledgeBase, Kb);

/// A constructor used outside the admitted feature set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub feature: Feature,
    pub subterm: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.feature {
            Feature::Inverse => "inverse role",
            Feature::Nominal => "nominal",
            Feature::Counting => "number restriction",
            Feature::Universal => "universal role",
            Feature::SelfLoop => "local reflexivity",
        };
        write!(
            f,
            "{what} needs {}: {}",
            self.feature.letter(),
            self.subterm
        )
    }
}

/// A name that the signature does not declare.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownName {
    pub kind: &'static str,
    pub name: String,
}

impl fmt::Display for UnknownName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown {} name {:?}", self.kind, self.name)
    }
}

enum Item<'a> {
    Concept(&'a Concept),
    Role(&'a Role),
    Basic(&'a BasicRole),
    RoleName(&'a str),
    Individual(&'a str),
}

/// Visits every node once; subterms shared by pointer are not revisited,
/// so concepts built as DAGs are walked in linear time.
fn walk<'a>(s: Syntax<'a>, f: &mut dyn FnMut(Item<'a>)) {
    walk_in(s, &mut Seen::default(), f)
}

#[derive(Default)]
struct Seen {
    concepts: HashSet<*const Concept>,
    roles: HashSet<*const Role>,
}

fn walk_in<'a>(s: Syntax<'a>, seen: &mut Seen, f: &mut dyn FnMut(Item<'a>)) {
    match s {
        Syntax::Concept(c) => walk_concept(c, seen, f),
        Syntax::Role(r) => walk_role(r, seen, f),
        Syntax::RoleAxiom(ax) => {
            if let RoleAxiom::ChainSub(chain, _) = ax {
                for b in chain {
                    f(Item::Basic(b));
                }
            }
            f(Item::RoleName(ax.target()));
        }
        Syntax::Gci(g) => {
            walk_concept(&g.lhs, seen, f);
            walk_concept(&g.rhs, seen, f);
        }
        Syntax::Assertion(a) => match a {
            Assertion::ConceptOf(c, x) => {
                walk_concept(c, seen, f);
                f(Item::Individual(x));
            }
            Assertion::RoleOf(r, x, y) | Assertion::NegRoleOf(r, x, y) => {
                walk_role(r, seen, f);
                f(Item::Individual(x));
                f(Item::Individual(y));
            }
            Assertion::Eq(x, y) | Assertion::Neq(x, y) => {
                f(Item::Individual(x));
                f(Item::Individual(y));
            }
        },
        Syntax::Kb(kb) => {
            for ax in &kb.rbox {
                walk_in(Syntax::RoleAxiom(ax), seen, f);
            }
            for g in &kb.tbox {
                walk_in(Syntax::Gci(g), seen, f);
            }
            for a in &kb.abox {
                walk_in(Syntax::Assertion(a), seen, f);
            }
        }
    }
}

fn walk_concept<'a>(c: &'a Concept, seen: &mut Seen, f: &mut dyn FnMut(Item<'a>)) {
    if !seen.concepts.insert(c) {
        return;
    }
    f(Item::Concept(c));
    match c {
        Concept::Top | Concept::Bottom | Concept::Atom(_) => {}
        Concept::Nominal(a) => f(Item::Individual(a)),
        Concept::SelfLoop(r) => f(Item::RoleName(r)),
        Concept::Not(d) => walk_concept(d, seen, f),
        Concept::And(a, b) | Concept::Or(a, b) => {
            walk_concept(a, seen, f);
            walk_concept(b, seen, f);
        }
        Concept::All(r, d) | Concept::Some(r, d) => {
            walk_role(r, seen, f);
            walk_concept(d, seen, f);
        }
        Concept::AtLeast(_, b, d) | Concept::AtMost(_, b, d) => {
            f(Item::Basic(b));
            walk_concept(d, seen, f);
        }
    }
}

fn walk_role<'a>(r: &'a Role, seen: &mut Seen, f: &mut dyn FnMut(Item<'a>)) {
    if !seen.roles.insert(r) {
        return;
    }
    f(Item::Role(r));
    match r {
        Role::Atom(n) => f(Item::RoleName(n)),
        Role::Inverse(s) | Role::Star(s) => walk_role(s, seen, f),
        Role::Compose(a, b) | Role::Union(a, b) => {
            walk_role(a, seen, f);
            walk_role(b, seen, f);
        }
        Role::Test(c) => walk_concept(c, seen, f),
        Role::Epsilon | Role::Universal => {}
    }
}

/// Lists every use of a constructor outside `phi`, in traversal order.
/// An empty list means the expression belongs to the language.
pub fn validate_in_language<'a>(phi: FeatureSet, expr: impl Into<Syntax<'a>>) -> Vec<Violation> {
    let mut out = Vec::new();
    walk(expr.into(), &mut |item| {
        let (feature, subterm) = match item {
            Item::Concept(c @ Concept::Nominal(_)) => (Feature::Nominal, c.to_string()),
            Item::Concept(c @ (Concept::AtLeast(..) | Concept::AtMost(..))) => {
                (Feature::Counting, c.to_string())
            }
            Item::Concept(c @ Concept::SelfLoop(_)) => (Feature::SelfLoop, c.to_string()),
            Item::Role(r @ Role::Inverse(_)) => (Feature::Inverse, r.to_string()),
            Item::Role(r @ Role::Universal) => (Feature::Universal, r.to_string()),
            Item::Basic(b) if b.inverse => (Feature::Inverse, b.to_string()),
            _ => return,
        };
        if !phi.contains(feature) {
            out.push(Violation { feature, subterm });
        }
    });
    out
}

/// Lists every concept, role or individual name not declared in `sig`,
/// without duplicates, in order of first occurrence.
pub fn check_names<'a>(sig: &Signature, expr: impl Into<Syntax<'a>>) -> Vec<UnknownName> {
    let mut out: Vec<UnknownName> = Vec::new();
    walk(expr.into(), &mut |item| {
        let (kind, name, known) = match item {
            Item::Concept(Concept::Atom(a)) => ("concept", a.as_str(), sig.concept_id(a).is_some()),
            Item::RoleName(r) => ("role", r, sig.role_id(r).is_some()),
            Item::Basic(b) => ("role", b.name.as_str(), sig.role_id(&b.name).is_some()),
            Item::Individual(a) => ("individual", a, sig.individual_id(a).is_some()),
            _ => return,
        };
        if !known && !out.iter().any(|u| u.kind == kind && u.name == name) {
            out.push(UnknownName {
                kind,
                name: name.to_string(),
            });
        }
    });
    out
}
