use dlbisim_core::bisim::{largest_auto_bisimulation, largest_bisimulation, partition_to_relation};
use dlbisim_core::checks;
use dlbisim_core::fixtures;
use dlbisim_core::graph::is_unreachable_objects_free;
use dlbisim_core::quotient::{qs_quotient, quotient_interpretation, witness, QuotientError};
use dlbisim_core::random;
use dlbisim_core::semantics::{check_gci, Evaluator};
use dlbisim_core::syntax::{parse_concept, parse_gci};
use dlbisim_core::{FeatureSet, Interpretation, InterpretationBuilder, Signature};

fn fail(what: &str, phi: FeatureSet, seed: u64, e: String) -> ! {
    panic!("{what} under {{{phi}}} (seed {seed}): {e}")
}

#[test]
fn algebra_of_bisimulations() {
    for seed in 0..100u64 {
        let mut rng = random::rng(seed);
        let base = random::small_instance(&mut rng, 8);
        for phi in FeatureSet::all() {
            checks::bisimulation_algebra(phi, &base, &mut rng)
                .unwrap_or_else(|e| fail("algebra", phi, seed, e));
        }
    }
}

#[test]
fn concepts_and_roles_are_invariant() {
    let mut total = 0;
    for seed in 0..60u64 {
        let mut rng = random::rng(1000 + seed);
        let left = random::small_instance(&mut rng, 7);
        let (right, _) = random::permuted(&mut rng, &left);
        let (right, _) = random::expansion(&mut rng, &right);
        for phi in FeatureSet::all() {
            let Some(z) = largest_bisimulation(phi, &left, &right).unwrap() else {
                continue;
            };
            let concepts = random::enumerate_concepts(left.signature(), phi, 4, 2);
            total += checks::concept_invariance(&left, &right, &z, &concepts)
                .unwrap_or_else(|e| fail("concept invariance", phi, seed, e));
            let roles: Vec<_> = (0..8)
                .map(|_| random::role(&mut rng, left.signature(), phi, 4))
                .collect();
            checks::role_invariance(&left, &right, &z, &roles)
                .unwrap_or_else(|e| fail("role invariance", phi, seed, e));
            checks::axiom_invariance(phi, &left, &right, &mut rng, 8)
                .unwrap_or_else(|e| fail("axiom invariance", phi, seed, e));
        }
    }
    assert!(total > 100_000, "only {total} checks");
}

#[test]
fn quotients_are_bisimilar_and_keep_axioms() {
    for seed in 0..150u64 {
        let mut rng = random::rng(2000 + seed);
        let i = random::small_instance(&mut rng, 10);
        for phi in FeatureSet::IOU.subsets() {
            checks::quotient_bisimulation(phi, &i)
                .unwrap_or_else(|e| fail("quotient bisimulation", phi, seed, e));
            checks::quotient_axioms(phi, &i, &mut rng, 6)
                .unwrap_or_else(|e| fail("quotient axioms", phi, seed, e));
            checks::rbox_preservation(phi, &i, &mut rng)
                .unwrap_or_else(|e| fail("rbox preservation", phi, seed, e));
        }
        for phi in FeatureSet::all() {
            checks::qs_quotient_agreement(phi, &i, &mut rng, 6)
                .unwrap_or_else(|e| fail("QS quotient agreement", phi, seed, e));
        }
    }
}

/// Every interpretation over `sig` with domain size `n`.
fn all_interpretations(sig: &Signature, n: usize) -> Vec<Interpretation> {
    let nc = sig.num_concepts() * n;
    let nr = sig.num_roles() * n * n;
    let ni = sig.num_individuals();
    let mut out = Vec::new();
    for bits in 0u64..1 << (nc + nr) {
        for mut code in 0..n.pow(ni as u32) {
            let mut b = InterpretationBuilder::new(sig.clone(), n);
            for (c, name) in sig.concept_names().iter().enumerate() {
                b = b.concept(
                    name,
                    (0..n)
                        .filter(|x| bits >> (c * n + x) & 1 == 1)
                        .collect::<Vec<_>>(),
                );
            }
            for (r, name) in sig.role_names().iter().enumerate() {
                let pairs: Vec<_> = (0..n * n)
                    .filter(|k| bits >> (nc + r * n * n + k) & 1 == 1)
                    .map(|k| (k / n, k % n))
                    .collect();
                b = b.role(name, pairs);
            }
            for name in sig.individual_names() {
                b = b.individual(name, code % n);
                code /= n;
            }
            out.push(b.build().unwrap());
        }
    }
    out
}

#[test]
fn quotients_are_minimal() {
    let sig = random::signature(1, 1, 1);
    let mut tried = 0;
    for seed in 0..400u64 {
        let mut rng = random::rng(3000 + seed);
        let i = random::interpretation(&mut rng, &sig, 5, 0.25);
        for phi in FeatureSet::IOU.subsets() {
            if !is_unreachable_objects_free(&i, phi) {
                continue;
            }
            let q = quotient_interpretation(&i, &largest_auto_bisimulation(phi, &i)).unwrap();
            if q.size() < 2 || q.size() > 3 {
                continue;
            }
            for k in 1..q.size() {
                for j in all_interpretations(&sig, k) {
                    assert!(
                        largest_bisimulation(phi, &i, &j).unwrap().is_none(),
                        "a {k}-element interpretation is bisimilar under {{{phi}}} (seed {seed})"
                    );
                }
            }
            tried += 1;
        }
        if tried >= 30 {
            break;
        }
    }
    assert!(tried >= 10, "only {tried} minimality instances");
}

#[test]
fn self_loops_need_the_qs_quotient() {
    let i = fixtures::two_cycle();
    let phi: FeatureSet = "S".parse().unwrap();
    let p = largest_auto_bisimulation(phi, &i);
    let q = quotient_interpretation(&i, &p).unwrap();
    let loops = parse_gci("top sub self r").unwrap();
    assert!(!check_gci(&i, &loops));
    assert!(check_gci(&q, &loops));
    let qs = qs_quotient(&i, &p).unwrap();
    let c = parse_concept("self r").unwrap();
    assert!(Evaluator::with_counts(&qs).concept(&c).is_empty());
    assert!(Evaluator::new(&i).concept(&c).is_empty());
}

#[test]
fn counting_needs_the_qs_quotient() {
    let i = fixtures::q_counterexample();
    let phi: FeatureSet = "Q".parse().unwrap();
    let p = largest_auto_bisimulation(phi, &i);
    let q = quotient_interpretation(&i, &p).unwrap();
    let qs = qs_quotient(&i, &p).unwrap();
    let c = parse_concept("atleast 3 r top").unwrap();
    let here = Evaluator::new(&i).concept(&c);
    let plain = Evaluator::new(&q).concept(&c);
    let counted = Evaluator::with_counts(&qs).concept(&c);
    let a = i.individual_by_name("a").unwrap();
    assert!(here.contains(a));
    assert!(!plain.contains(p.block_of(a)));
    assert!(counted.contains(p.block_of(a)));
}

#[test]
fn witness_examples() {
    let i1 = fixtures::fig2_i1();
    let (c, u2) = (
        i1.element_index("c").unwrap(),
        i1.element_index("u2").unwrap(),
    );
    let w = witness(FeatureSet::EMPTY, &i1, c, u2).unwrap();
    let ext = Evaluator::new(&i1).concept(&w.concept);
    assert!(ext.contains(c) && !ext.contains(u2));
    assert_eq!(
        witness(FeatureSet::EMPTY, &i1, c, c),
        Err(QuotientError::NotSeparated { x: c, y: c })
    );

    let (i, _) = fixtures::abox_counterexample();
    let (_, right) = fixtures::abox_counterexample();
    let o: FeatureSet = "O".parse().unwrap();
    let (u, v) = (
        right.element_index("u").unwrap(),
        right.element_index("v").unwrap(),
    );
    let w = witness(o, &right, u, v).unwrap();
    assert!(matches!(
        &*w.concept,
        dlbisim_core::Concept::Nominal(_) | dlbisim_core::Concept::Not(_)
    ));
    assert_eq!(
        partition_to_relation(&largest_auto_bisimulation(o, &i)).len(),
        2
    );
}
