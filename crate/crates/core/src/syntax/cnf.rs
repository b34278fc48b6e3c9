//! Converse normal form: inverses pushed down to role names.

use std::sync::Arc;

use super::{Concept, Role};

/// Rewrites `role` so that the inverse constructor is applied only to role
/// names. Roles nested inside test concepts are normalised as well.
pub fn to_cnf(role: &Role) -> Role {
    cnf_role(role, false)
}

/// Normalises every role occurring in `concept`.
pub fn to_cnf_concept(concept: &Concept) -> Concept {
    match concept {
        Concept::Top
        | Concept::Bottom
        | Concept::Atom(_)
        | Concept::Nominal(_)
        | Concept::SelfLoop(_) => concept.clone(),
        Concept::Not(c) => Concept::Not(Arc::new(to_cnf_concept(c))),
        Concept::And(a, b) => {
            Concept::And(Arc::new(to_cnf_concept(a)), Arc::new(to_cnf_concept(b)))
        }
        Concept::Or(a, b) => Concept::Or(Arc::new(to_cnf_concept(a)), Arc::new(to_cnf_concept(b))),
        Concept::All(r, c) => Concept::All(Arc::new(to_cnf(r)), Arc::new(to_cnf_concept(c))),
        Concept::Some(r, c) => Concept::Some(Arc::new(to_cnf(r)), Arc::new(to_cnf_concept(c))),
        Concept::AtLeast(n, b, c) => Concept::AtLeast(*n, b.clone(), Arc::new(to_cnf_concept(c))),
        Concept::AtMost(n, b, c) => Concept::AtMost(*n, b.clone(), Arc::new(to_cnf_concept(c))),
    }
}

fn cnf_role(role: &Role, inv: bool) -> Role {
    match role {
        Role::Atom(n) => {
            let atom = Role::Atom(n.clone());
            if inv {
                atom.inv()
            } else {
                atom
            }
        }
        Role::Inverse(r) => cnf_role(r, !inv),
        Role::Compose(a, b) => {
            if inv {
                Role::Compose(Arc::new(cnf_role(b, true)), Arc::new(cnf_role(a, true)))
            } else {
                Role::Compose(Arc::new(cnf_role(a, false)), Arc::new(cnf_role(b, false)))
            }
        }
        Role::Union(a, b) => Role::Union(Arc::new(cnf_role(a, inv)), Arc::new(cnf_role(b, inv))),
        Role::Star(r) => Role::Star(Arc::new(cnf_role(r, inv))),
        // Tests, ε and U are their own converses.
        Role::Test(c) => Role::Test(Arc::new(to_cnf_concept(c))),
        Role::Epsilon => Role::Epsilon,
        Role::Universal => Role::Universal,
    }
}

/// Whether the inverse constructor occurs only directly on role names,
/// including inside test concepts.
pub fn is_cnf(role: &Role) -> bool {
    match role {
        Role::Atom(_) | Role::Epsilon | Role::Universal => true,
        Role::Inverse(r) => matches!(&**r, Role::Atom(_)),
        Role::Compose(a, b) | Role::Union(a, b) => is_cnf(a) && is_cnf(b),
        Role::Star(r) => is_cnf(r),
        Role::Test(c) => concept_is_cnf(c),
    }
}

fn concept_is_cnf(c: &Concept) -> bool {
    match c {
        Concept::Top
        | Concept::Bottom
        | Concept::Atom(_)
        | Concept::Nominal(_)
        | Concept::SelfLoop(_) => true,
        Concept::Not(c) => concept_is_cnf(c),
        Concept::And(a, b) | Concept::Or(a, b) => concept_is_cnf(a) && concept_is_cnf(b),
        Concept::All(r, c) | Concept::Some(r, c) => is_cnf(r) && concept_is_cnf(c),
        Concept::AtLeast(_, _, c) | Concept::AtMost(_, _, c) => concept_is_cnf(c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_composition_with_star() {
        let r = Role::atom("r");
        let s = Role::atom("s");
        let input = r.clone().or(s.clone().inv()).then(r.clone().star()).inv();
        let expected = r.clone().inv().star().then(r.inv().or(s));
        assert_eq!(to_cnf(&input), expected);
        assert!(is_cnf(&expected));
        assert!(!is_cnf(&input));
    }

    #[test]
    fn double_inverse_cancels() {
        let r = Role::atom("r").inv().inv();
        assert_eq!(to_cnf(&r), Role::atom("r"));
    }

    #[test]
    fn tests_are_normalised() {
        let c = Concept::some(Role::atom("r").then(Role::atom("s")).inv(), Concept::Top);
        let role = Role::test(c).inv();
        let out = to_cnf(&role);
        assert!(is_cnf(&out));
        assert_eq!(to_cnf(&out), out);
    }
}
