//! Structural properties of bisimulations as executable checks on one
//! instance each. A check returns how many elementary comparisons it made,
//! or a description of the first violation found.

use std::sync::Arc;

use rand::Rng;

use crate::bisim::{
    is_bisimulation, largest_auto_bisimulation, largest_bisimulation, BisimRelation,
};
use crate::features::FeatureSet;
use crate::graph::is_unreachable_objects_free;
use crate::interp::Interpretation;
use crate::quotient::{qs_quotient, quotient_interpretation};
use crate::random;
use crate::semantics::{
    check_assertion, check_gci, check_role_axiom, least_r_extension, Evaluator,
};
use crate::syntax::{Assertion, Concept, Role};

pub type Outcome = Result<usize, String>;

fn verify(
    phi: FeatureSet,
    left: &Interpretation,
    right: &Interpretation,
    z: &BisimRelation,
    what: &str,
) -> Outcome {
    let report = is_bisimulation(phi, left, right, z);
    if report.is_empty() {
        Ok(1)
    } else {
        Err(format!(
            "{what} is not a bisimulation under {{{phi}}}:\n{report}"
        ))
    }
}

/// Identity, converse, composition and union of bisimulations are
/// bisimulations. `base` is related to a shuffled copy and to a further
/// copy that is an expansion (for features within `{I, O, U}`) or another
/// shuffle.
pub fn bisimulation_algebra<R: Rng>(
    phi: FeatureSet,
    base: &Interpretation,
    rng: &mut R,
) -> Outcome {
    let mut n = verify(
        phi,
        base,
        base,
        &BisimRelation::identity(base.size()),
        "identity",
    )?;
    let (copy, z1) = random::permuted(rng, base);
    n += verify(phi, base, &copy, &z1, "permutation")?;
    n += verify(phi, &copy, base, &z1.transpose(), "converse")?;
    let (far, z2) = if phi.is_subset(FeatureSet::IOU) {
        random::expansion(rng, &copy)
    } else {
        random::permuted(rng, &copy)
    };
    n += verify(phi, &copy, &far, &z2, "second step")?;
    n += verify(phi, base, &far, &z1.compose(&z2), "composition")?;
    let largest = largest_bisimulation(phi, base, &copy)
        .map_err(|e| e.to_string())?
        .ok_or("isomorphic copies not bisimilar")?;
    n += verify(phi, base, &copy, &largest, "largest bisimulation")?;
    n += verify(phi, base, &copy, &z1.union(&largest), "union")?;
    Ok(n)
}

/// Every related pair agrees on every concept.
pub fn concept_invariance(
    left: &Interpretation,
    right: &Interpretation,
    z: &BisimRelation,
    concepts: &[Arc<Concept>],
) -> Outcome {
    let (mut el, mut er) = (Evaluator::new(left), Evaluator::new(right));
    let pairs: Vec<(usize, usize)> = z.pairs().collect();
    for c in concepts {
        let (l, r) = (el.concept(c), er.concept(c));
        if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| l.contains(x) != r.contains(y)) {
            return Err(format!(
                "{c} holds at exactly one of {} and {}",
                left.element_name(x),
                right.element_name(y)
            ));
        }
    }
    Ok(pairs.len() * concepts.len())
}

/// Forth and back for arbitrary roles: every `R`-successor of `x` has a
/// related `R`-successor of `x'` and conversely.
pub fn role_invariance(
    left: &Interpretation,
    right: &Interpretation,
    z: &BisimRelation,
    roles: &[Role],
) -> Outcome {
    let (mut el, mut er) = (Evaluator::new(left), Evaluator::new(right));
    let mut n = 0;
    for r in roles {
        let (l, rr) = (el.role(r), er.role(r));
        for (x, x2) in z.pairs() {
            let forth = l.successors(x).iter().all(|&y| {
                rr.successors(x2)
                    .iter()
                    .any(|&y2| z.contains(y as usize, y2 as usize))
            });
            let back = rr.successors(x2).iter().all(|&y2| {
                l.successors(x)
                    .iter()
                    .any(|&y| z.contains(y as usize, y2 as usize))
            });
            if !forth || !back {
                return Err(format!(
                    "role {r} breaks {} at ({}, {})",
                    if forth { "back" } else { "forth" },
                    left.element_name(x),
                    right.element_name(x2)
                ));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// `{(x, [x])}` is a bisimulation between `interp` and its quotient;
/// `phi` must lie within `{I, O, U}`.
pub fn quotient_bisimulation(phi: FeatureSet, interp: &Interpretation) -> Outcome {
    let p = largest_auto_bisimulation(phi, interp);
    let q = quotient_interpretation(interp, &p).map_err(|e| e.to_string())?;
    let z = BisimRelation::from_pairs(
        interp.size(),
        q.size(),
        (0..interp.size()).map(|x| (x, p.block_of(x))),
    );
    verify(phi, interp, &q, &z, "the canonical map to the quotient")
}

/// Terminological axioms and concept assertions hold in `interp` iff they
/// hold in its quotient; role axioms, role assertions and equalities that
/// hold in `interp` hold in the quotient. `phi` must lie within `{I, O, U}`.
pub fn quotient_axioms<R: Rng>(
    phi: FeatureSet,
    interp: &Interpretation,
    rng: &mut R,
    samples: usize,
) -> Outcome {
    let p = largest_auto_bisimulation(phi, interp);
    let q = quotient_interpretation(interp, &p).map_err(|e| e.to_string())?;
    let sig = interp.signature();
    let mut n = 0;
    for _ in 0..samples {
        let g = random::gci(rng, sig, phi, 6);
        if check_gci(interp, &g) != check_gci(&q, &g) {
            return Err(format!(
                "{g} differs between the interpretation and its quotient"
            ));
        }
        n += 1;
    }
    for ax in random::rbox(rng, sig, phi, samples) {
        if check_role_axiom(interp, &ax) && !check_role_axiom(&q, &ax) {
            return Err(format!("{ax} is lost in the quotient"));
        }
        n += 1;
    }
    if sig.num_individuals() > 0 {
        for _ in 0..samples {
            let a = random::assertion(rng, sig, phi, 6);
            let (here, there) = (check_assertion(interp, &a), check_assertion(&q, &a));
            let ok = match a {
                Assertion::ConceptOf(..) => here == there,
                Assertion::RoleOf(..) | Assertion::Eq(..) => !here || there,
                Assertion::NegRoleOf(..) | Assertion::Neq(..) => true,
            };
            if !ok {
                return Err(format!("{a} does not transfer to the quotient"));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// With `phi` within `{I, O, U}`, `i0 ⊨ R` and `Z` a bisimulation between
/// `i0` and `i1`, `Z` is still one between `i0` and the least r-extension
/// of `i1` for `R`. `i0` is the least r-extension of `base` and `i1` a
/// shuffled expansion of it.
pub fn rbox_preservation<R: Rng>(phi: FeatureSet, base: &Interpretation, rng: &mut R) -> Outcome {
    let rbox = random::rbox(rng, base.signature(), phi, 3);
    let i0 = least_r_extension(base, &rbox);
    let (copy, z1) = random::permuted(rng, &i0);
    let (i1, z2) = random::expansion(rng, &copy);
    let z = z1.compose(&z2);
    verify(phi, &i0, &i1, &z, "the generated relation")?;
    let extended = least_r_extension(&i1, &rbox);
    let rules: Vec<String> = rbox.iter().map(|a| a.to_string()).collect();
    verify(
        phi,
        &i0,
        &extended,
        &z,
        &format!("Z after extending with [{}]", rules.join(", ")),
    )
}

/// `x ∈ C` iff `[x] ∈ C` in the QS-quotient, for sampled concepts of the
/// language of `phi`.
pub fn qs_quotient_agreement<R: Rng>(
    phi: FeatureSet,
    interp: &Interpretation,
    rng: &mut R,
    samples: usize,
) -> Outcome {
    let p = largest_auto_bisimulation(phi, interp);
    let qs = qs_quotient(interp, &p).map_err(|e| e.to_string())?;
    let (mut plain, mut counted) = (Evaluator::new(interp), Evaluator::with_counts(&qs));
    for _ in 0..samples {
        let c = random::concept(rng, interp.signature(), phi, 8);
        let (here, there) = (plain.concept(&c), counted.concept(&c));
        if let Some(x) =
            (0..interp.size()).find(|&x| here.contains(x) != there.contains(p.block_of(x)))
        {
            return Err(format!(
                "{c} differs at {} and its class",
                interp.element_name(x)
            ));
        }
    }
    Ok(samples * interp.size())
}

/// Sampled TBoxes agree between bisimilar interpretations when `U ∈ phi`
/// or both are unreachable-objects-free; sampled ABoxes agree when
/// `O ∈ phi`, concept assertions always.
pub fn axiom_invariance<R: Rng>(
    phi: FeatureSet,
    left: &Interpretation,
    right: &Interpretation,
    rng: &mut R,
    samples: usize,
) -> Outcome {
    let sig = left.signature();
    let mut n = 0;
    let tbox = phi.universal()
        || (is_unreachable_objects_free(left, phi) && is_unreachable_objects_free(right, phi));
    if tbox {
        for _ in 0..samples {
            let g = random::gci(rng, sig, phi, 6);
            if check_gci(left, &g) != check_gci(right, &g) {
                return Err(format!(
                    "{g} holds in only one of two bisimilar interpretations"
                ));
            }
            n += 1;
        }
    }
    if sig.num_individuals() > 0 {
        for _ in 0..samples {
            let a = random::assertion(rng, sig, phi, 6);
            if !phi.nominal() && !matches!(a, Assertion::ConceptOf(..)) {
                continue;
            }
            if check_assertion(left, &a) != check_assertion(right, &a) {
                return Err(format!(
                    "{a} holds in only one of two bisimilar interpretations"
                ));
            }
            n += 1;
        }
    }
    Ok(n)
}
