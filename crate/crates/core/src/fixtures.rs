//! Small hand-built interpretations used across the test suites and shipped
//! as CLI fixtures: the three family trees, the two-element cycle, and the
//! counterexamples showing where invariance and quotient transfer break.

use crate::interp::{Interpretation, InterpretationBuilder, Signature};
use crate::syntax::{parse_kb, KnowledgeBase};

fn family_signature() -> Signature {
    Signature::new(["F", "M"], ["r"], ["a", "b", "c"]).expect("static signature")
}

fn named(
    sig: Signature,
    names: &[&str],
    concepts: &[(&str, &[&str])],
    roles: &[(&str, &[(&str, &str)])],
    individuals: &[(&str, &str)],
) -> Interpretation {
    let idx = |n: &str| names.iter().position(|m| *m == n).expect("known element");
    let mut b = InterpretationBuilder::new(sig, names.len()).element_names(names.iter().copied());
    for (c, xs) in concepts {
        b = b.concept(c, xs.iter().map(|x| idx(x)));
    }
    for (r, ps) in roles {
        b = b.role(r, ps.iter().map(|(x, y)| (idx(x), idx(y))));
    }
    for (a, x) in individuals {
        b = b.individual(a, idx(x));
    }
    b.build().expect("static fixture")
}

const ABC: [(&str, &str); 3] = [("a", "a"), ("b", "b"), ("c", "c")];

/// First family tree: `a:F → u1`, `b:M → u1`, `c:F → u2, u3`,
/// `u1:M → u2, u3`, with `u2:F`, `u3:M`.
pub fn fig2_i1() -> Interpretation {
    named(
        family_signature(),
        &["a", "b", "c", "u1", "u2", "u3"],
        &[("F", &["a", "c", "u2"]), ("M", &["b", "u1", "u3"])],
        &[(
            "r",
            &[
                ("a", "u1"),
                ("b", "u1"),
                ("c", "u2"),
                ("c", "u3"),
                ("u1", "u2"),
                ("u1", "u3"),
            ],
        )],
        &ABC,
    )
}

/// Second family tree: like the first but `c` and `v1` each have three
/// children `v2:F`, `v3:M`, `v4:F`.
pub fn fig2_i2() -> Interpretation {
    named(
        family_signature(),
        &["a", "b", "c", "v1", "v2", "v3", "v4"],
        &[("F", &["a", "c", "v2", "v4"]), ("M", &["b", "v1", "v3"])],
        &[(
            "r",
            &[
                ("a", "v1"),
                ("b", "v1"),
                ("c", "v2"),
                ("c", "v3"),
                ("c", "v4"),
                ("v1", "v2"),
                ("v1", "v3"),
                ("v1", "v4"),
            ],
        )],
        &ABC,
    )
}

/// Third family tree: `w1` has children `w2, w3, w4`, and an unnamed
/// `w5:F` is a second parent of `w4`.
pub fn fig2_i3() -> Interpretation {
    named(
        family_signature(),
        &["a", "b", "c", "w1", "w2", "w3", "w4", "w5"],
        &[
            ("F", &["a", "c", "w2", "w4", "w5"]),
            ("M", &["b", "w1", "w3"]),
        ],
        &[(
            "r",
            &[
                ("a", "w1"),
                ("b", "w1"),
                ("c", "w2"),
                ("c", "w3"),
                ("w1", "w2"),
                ("w1", "w3"),
                ("w1", "w4"),
                ("w5", "w4"),
            ],
        )],
        &ABC,
    )
}

/// The knowledge base every family tree is a model of.
pub fn family_kb() -> KnowledgeBase {
    parse_kb(
        "tbox: not F sub M\n\
         tbox: {a} sub all (r)* ({a} or atleast 2 inv(r) top)\n\
         abox: a : F\n\
         abox: b : M\n\
         abox: c : F\n\
         abox: a : some r (some inv(r) {b} and atleast 2 r some inv(r) {c})\n",
    )
    .expect("static knowledge base")
}

/// `a1 ⇄ a2`: two named elements linked by `r` both ways.
pub fn two_cycle() -> Interpretation {
    named(
        Signature::new(Vec::<&str>::new(), ["r"], ["a1", "a2"]).expect("static signature"),
        &["a1", "a2"],
        &[],
        &[("r", &[("a1", "a2"), ("a2", "a1")])],
        &[("a1", "a1"), ("a2", "a2")],
    )
}

/// `a` with a self-loop and edges to `b1`, `b2`, which point at each other.
pub fn q_counterexample() -> Interpretation {
    named(
        Signature::new(Vec::<&str>::new(), ["r"], ["a", "b1", "b2"]).expect("static signature"),
        &["a", "b1", "b2"],
        &[],
        &[(
            "r",
            &[
                ("a", "a"),
                ("a", "b1"),
                ("a", "b2"),
                ("b1", "b2"),
                ("b2", "b1"),
            ],
        )],
        &[("a", "a"), ("b1", "b1"), ("b2", "b2")],
    )
}

/// `({a}, {a, u})` with `A = {a}` on both sides: bisimilar without `U`, yet
/// only the first validates `⊤ ⊑ A`.
pub fn tbox_counterexample() -> (Interpretation, Interpretation) {
    let sig = || Signature::new(["A"], Vec::<&str>::new(), ["a"]).expect("static signature");
    (
        named(sig(), &["a"], &[("A", &["a"])], &[], &[("a", "a")]),
        named(sig(), &["a", "u"], &[("A", &["a"])], &[], &[("a", "a")]),
    )
}

/// Two interpretations over `{u, v}` with reflexive `r`; `a = b = u` on the
/// left, `b = v` on the right.
pub fn abox_counterexample() -> (Interpretation, Interpretation) {
    let sig = || Signature::new(Vec::<&str>::new(), ["r"], ["a", "b"]).expect("static signature");
    let loops: &[(&str, &[(&str, &str)])] = &[("r", &[("u", "u"), ("v", "v")])];
    (
        named(sig(), &["u", "v"], &[], loops, &[("a", "u"), ("b", "u")]),
        named(sig(), &["u", "v"], &[], loops, &[("a", "u"), ("b", "v")]),
    )
}

/// `a → u → v ⟲` and the same with the shortcut `a → v` added.
pub fn rbox_counterexample() -> (Interpretation, Interpretation) {
    let sig = || Signature::new(Vec::<&str>::new(), ["r"], ["a"]).expect("static signature");
    let base = [("a", "u"), ("u", "v"), ("v", "v")];
    let extended = [("a", "u"), ("u", "v"), ("v", "v"), ("a", "v")];
    (
        named(sig(), &["a", "u", "v"], &[], &[("r", &base)], &[("a", "a")]),
        named(
            sig(),
            &["a", "u", "v"],
            &[],
            &[("r", &extended)],
            &[("a", "a")],
        ),
    )
}
