//! Abstract syntax of concepts, roles, axioms and knowledge bases.
//!
//! Subterms are reference counted so that large generated concepts (for
//! example separating witnesses) can share structure.

mod cnf;
mod parse;
mod print;
mod validate;

use std::sync::Arc;

pub use cnf::{is_cnf, to_cnf, to_cnf_concept};
pub use parse::{
    parse_assertion, parse_concept, parse_gci, parse_kb, parse_role, parse_role_axiom, SyntaxError,
    MAX_NUMBER,
};
pub use print::{to_unicode, Unicode};
pub use validate::{check_names, validate_in_language, Syntax, UnknownName, Violation};

/// A role name or the inverse of one. Only basic roles may appear in number
/// restrictions and role axioms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicRole {
    pub name: String,
    pub inverse: bool,
}

impl BasicRole {
    pub fn new(name: impl Into<String>) -> Self {
        BasicRole {
            name: name.into(),
            inverse: false,
        }
    }

    pub fn inv(name: impl Into<String>) -> Self {
        BasicRole {
            name: name.into(),
            inverse: true,
        }
    }

    pub fn to_role(&self) -> Role {
        let atom = Role::Atom(self.name.clone());
        if self.inverse {
            Role::Inverse(Arc::new(atom))
        } else {
            atom
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Atom(String),
    Inverse(Arc<Role>),
    Compose(Arc<Role>, Arc<Role>),
    Union(Arc<Role>, Arc<Role>),
    Star(Arc<Role>),
    Test(Arc<Concept>),
    Epsilon,
    Universal,
}

impl Role {
    pub fn atom(name: impl Into<String>) -> Role {
        Role::Atom(name.into())
    }

    pub fn inv(self) -> Role {
        Role::Inverse(Arc::new(self))
    }

    pub fn then(self, next: Role) -> Role {
        Role::Compose(Arc::new(self), Arc::new(next))
    }

    pub fn or(self, other: Role) -> Role {
        Role::Union(Arc::new(self), Arc::new(other))
    }

    pub fn star(self) -> Role {
        Role::Star(Arc::new(self))
    }

    pub fn test(c: Concept) -> Role {
        Role::Test(Arc::new(c))
    }

    /// The basic role this expression denotes syntactically, if any.
    pub fn as_basic(&self) -> Option<BasicRole> {
        match self {
            Role::Atom(n) => Some(BasicRole::new(n.clone())),
            Role::Inverse(inner) => match &**inner {
                Role::Atom(n) => Some(BasicRole::inv(n.clone())),
                _ => None,
            },
            _ => None,
        }
    }

    /// Number of AST nodes, counting nested concepts.
    pub fn size(&self) -> usize {
        match self {
            Role::Atom(_) | Role::Epsilon | Role::Universal => 1,
            Role::Inverse(r) | Role::Star(r) => 1 + r.size(),
            Role::Compose(a, b) | Role::Union(a, b) => 1 + a.size() + b.size(),
            Role::Test(c) => 1 + c.size(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Concept {
    Top,
    Bottom,
    Atom(String),
    Not(Arc<Concept>),
    And(Arc<Concept>, Arc<Concept>),
    Or(Arc<Concept>, Arc<Concept>),
    All(Arc<Role>, Arc<Concept>),
    Some(Arc<Role>, Arc<Concept>),
    Nominal(String),
    AtLeast(u64, BasicRole, Arc<Concept>),
    AtMost(u64, BasicRole, Arc<Concept>),
    SelfLoop(String),
}

impl Concept {
    pub fn atom(name: impl Into<String>) -> Concept {
        Concept::Atom(name.into())
    }

    pub fn nominal(name: impl Into<String>) -> Concept {
        Concept::Nominal(name.into())
    }

    pub fn self_loop(role: impl Into<String>) -> Concept {
        Concept::SelfLoop(role.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Concept {
        Concept::Not(Arc::new(self))
    }

    pub fn and(self, other: Concept) -> Concept {
        Concept::And(Arc::new(self), Arc::new(other))
    }

    pub fn or(self, other: Concept) -> Concept {
        Concept::Or(Arc::new(self), Arc::new(other))
    }

    pub fn some(role: Role, filler: Concept) -> Concept {
        Concept::Some(Arc::new(role), Arc::new(filler))
    }

    pub fn all(role: Role, filler: Concept) -> Concept {
        Concept::All(Arc::new(role), Arc::new(filler))
    }

    pub fn at_least(n: u64, role: BasicRole, filler: Concept) -> Concept {
        Concept::AtLeast(n, role, Arc::new(filler))
    }

    pub fn at_most(n: u64, role: BasicRole, filler: Concept) -> Concept {
        Concept::AtMost(n, role, Arc::new(filler))
    }

    /// Number of AST nodes; a number restriction counts its basic role as
    /// one node (two when inverse).
    pub fn size(&self) -> usize {
        match self {
            Concept::Top
            | Concept::Bottom
            | Concept::Atom(_)
            | Concept::Nominal(_)
            | Concept::SelfLoop(_) => 1,
            Concept::Not(c) => 1 + c.size(),
            Concept::And(a, b) | Concept::Or(a, b) => 1 + a.size() + b.size(),
            Concept::All(r, c) | Concept::Some(r, c) => 1 + r.size() + c.size(),
            Concept::AtLeast(_, b, c) | Concept::AtMost(_, b, c) => {
                1 + 1 + usize::from(b.inverse) + c.size()
            }
        }
    }
}

/// `ε ⊑ r` or `R1 ∘ … ∘ Rk ⊑ r` with basic `Ri` and `k ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RoleAxiom {
    EpsSub(String),
    ChainSub(Vec<BasicRole>, String),
}

impl RoleAxiom {
    pub fn target(&self) -> &str {
        match self {
            RoleAxiom::EpsSub(r) | RoleAxiom::ChainSub(_, r) => r,
        }
    }
}

/// A general concept inclusion `lhs ⊑ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gci {
    pub lhs: Concept,
    pub rhs: Concept,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Assertion {
    ConceptOf(Concept, String),
    RoleOf(Role, String, String),
    NegRoleOf(Role, String, String),
    Eq(String, String),
    Neq(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KnowledgeBase {
    pub rbox: Vec<RoleAxiom>,
    pub tbox: Vec<Gci>,
    pub abox: Vec<Assertion>,
}

impl KnowledgeBase {
    pub fn is_empty(&self) -> bool {
        self.rbox.is_empty() && self.tbox.is_empty() && self.abox.is_empty()
    }
}
