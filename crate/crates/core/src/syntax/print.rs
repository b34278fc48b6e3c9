//! Printers. `Display` produces the ASCII syntax accepted by the parser;
//! [`to_unicode`] produces conventional DL notation for humans.

use std::fmt::{self, Display, Formatter};

use super::{Assertion, BasicRole, Concept, Gci, KnowledgeBase, Role, RoleAxiom, Syntax};

impl Display for BasicRole {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "inv({})", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

impl Display for Role {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Role::Atom(n) => f.write_str(n),
            Role::Inverse(r) => write!(f, "inv({r})"),
            Role::Compose(a, b) => write!(f, "({a} ; {b})"),
            Role::Union(a, b) => write!(f, "({a} | {b})"),
            Role::Star(r) => write!(f, "{r}*"),
            Role::Test(c) => write!(f, "test({c})"),
            Role::Epsilon => f.write_str("eps"),
            Role::Universal => f.write_str("U"),
        }
    }
}

impl Display for Concept {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Concept::Top => f.write_str("top"),
            Concept::Bottom => f.write_str("bottom"),
            Concept::Atom(a) => f.write_str(a),
            Concept::Nominal(a) => write!(f, "{{{a}}}"),
            Concept::Not(c) => write!(f, "not {c}"),
            Concept::And(a, b) => write!(f, "({a} and {b})"),
            Concept::Or(a, b) => write!(f, "({a} or {b})"),
            Concept::Some(r, c) => write!(f, "some {r} {c}"),
            Concept::All(r, c) => write!(f, "all {r} {c}"),
            Concept::AtLeast(n, b, c) => write!(f, "atleast {n} {b} {c}"),
            Concept::AtMost(n, b, c) => write!(f, "atmost {n} {b} {c}"),
            Concept::SelfLoop(r) => write!(f, "self {r}"),
        }
    }
}

impl Display for RoleAxiom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            RoleAxiom::EpsSub(r) => write!(f, "eps sub {r}"),
            RoleAxiom::ChainSub(chain, r) => {
                for (i, b) in chain.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ; ")?;
                    }
                    write!(f, "{b}")?;
                }
                write!(f, " sub {r}")
            }
        }
    }
}

impl Display for Gci {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{} sub {}", self.lhs, self.rhs)
    }
}

impl Display for Assertion {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Assertion::ConceptOf(c, a) => write!(f, "{a} : {c}"),
            Assertion::RoleOf(r, a, b) => write!(f, "({a}, {b}) : {r}"),
            Assertion::NegRoleOf(r, a, b) => write!(f, "({a}, {b}) : not {r}"),
            Assertion::Eq(a, b) => write!(f, "{a} = {b}"),
            Assertion::Neq(a, b) => write!(f, "{a} != {b}"),
        }
    }
}

/// One axiom per line, in the format read by `parse_kb`.
impl Display for KnowledgeBase {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for ax in &self.rbox {
            writeln!(f, "rbox: {ax}")?;
        }
        for g in &self.tbox {
            writeln!(f, "tbox: {g}")?;
        }
        for a in &self.abox {
            writeln!(f, "abox: {a}")?;
        }
        Ok(())
    }
}

/// Wrapper whose `Display` uses DL notation.
pub struct Unicode<'a>(pub Syntax<'a>);

pub fn to_unicode<'a>(expr: impl Into<Syntax<'a>>) -> String {
    Unicode(expr.into()).to_string()
}

struct U<'a, T>(&'a T);

impl Display for U<'_, BasicRole> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)?;
        if self.0.inverse {
            f.write_str("⁻")?;
        }
        Ok(())
    }
}

impl Display for U<'_, Role> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.0 {
            Role::Atom(n) => f.write_str(n),
            Role::Inverse(r) => match &**r {
                Role::Atom(n) => write!(f, "{n}⁻"),
                other => write!(f, "({})⁻", U(other)),
            },
            Role::Compose(a, b) => write!(f, "({} ∘ {})", U(&**a), U(&**b)),
            Role::Union(a, b) => write!(f, "({} ⊔ {})", U(&**a), U(&**b)),
            Role::Star(r) => write!(f, "{}*", U(&**r)),
            Role::Test(c) => write!(f, "{}?", U(&**c)),
            Role::Epsilon => f.write_str("ε"),
            Role::Universal => f.write_str("U"),
        }
    }
}

impl Display for U<'_, Concept> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.0 {
            Concept::Top => f.write_str("⊤"),
            Concept::Bottom => f.write_str("⊥"),
            Concept::Atom(a) => f.write_str(a),
            Concept::Nominal(a) => write!(f, "{{{a}}}"),
            Concept::Not(c) => write!(f, "¬{}", U(&**c)),
            Concept::And(a, b) => write!(f, "({} ⊓ {})", U(&**a), U(&**b)),
            Concept::Or(a, b) => write!(f, "({} ⊔ {})", U(&**a), U(&**b)),
            Concept::Some(r, c) => write!(f, "∃{}.{}", U(&**r), U(&**c)),
            Concept::All(r, c) => write!(f, "∀{}.{}", U(&**r), U(&**c)),
            Concept::AtLeast(n, b, c) => write!(f, "≥{n} {}.{}", U(b), U(&**c)),
            Concept::AtMost(n, b, c) => write!(f, "≤{n} {}.{}", U(b), U(&**c)),
            Concept::SelfLoop(r) => write!(f, "∃{r}.Self"),
        }
    }
}

impl Display for U<'_, RoleAxiom> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.0 {
            RoleAxiom::EpsSub(r) => write!(f, "ε ⊑ {r}"),
            RoleAxiom::ChainSub(chain, r) => {
                for (i, b) in chain.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ∘ ")?;
                    }
                    write!(f, "{}", U(b))?;
                }
                write!(f, " ⊑ {r}")
            }
        }
    }
}

impl Display for U<'_, Assertion> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.0 {
            Assertion::ConceptOf(c, a) => write!(f, "{}({a})", U(c)),
            Assertion::RoleOf(r, a, b) => write!(f, "{}({a}, {b})", U(r)),
            Assertion::NegRoleOf(r, a, b) => write!(f, "¬{}({a}, {b})", U(r)),
            Assertion::Eq(a, b) => write!(f, "{a} ≐ {b}"),
            Assertion::Neq(a, b) => write!(f, "{a} ≠ {b}"),
        }
    }
}

impl Display for Unicode<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.0 {
            Syntax::Concept(c) => U(c).fmt(f),
            Syntax::Role(r) => U(r).fmt(f),
            Syntax::RoleAxiom(ax) => U(ax).fmt(f),
            Syntax::Gci(g) => write!(f, "{} ⊑ {}", U(&g.lhs), U(&g.rhs)),
            Syntax::Assertion(a) => U(a).fmt(f),
            Syntax::Kb(kb) => {
                for ax in &kb.rbox {
                    writeln!(f, "{}", U(ax))?;
                }
                for g in &kb.tbox {
                    writeln!(f, "{} ⊑ {}", U(&g.lhs), U(&g.rhs))?;
                }
                for a in &kb.abox {
                    writeln!(f, "{}", U(a))?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_concept, parse_kb};

    #[test]
    fn ascii_round_trip() {
        for text in [
            "(not some r A and B)",
            "all (r ; inv(s))* {a}",
            "atmost 0 inv(r) (self r or bottom)",
            "some test(some U top)** not not A",
        ] {
            let c = parse_concept(text).unwrap();
            assert_eq!(c.to_string(), text);
        }
    }

    #[test]
    fn unicode_notation() {
        let c = parse_concept("(atleast 2 inv(r) {a} and all inv((r ; s)) self r)").unwrap();
        assert_eq!(to_unicode(&c), "(≥2 r⁻.{a} ⊓ ∀((r ∘ s))⁻.∃r.Self)");
    }

    #[test]
    fn kb_round_trip() {
        let kb = crate::fixtures::family_kb();
        assert_eq!(parse_kb(&kb.to_string()).unwrap(), kb);
    }
}
