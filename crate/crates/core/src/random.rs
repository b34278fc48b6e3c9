//! Seeded generators: random interpretations, bisimilar variants of a given
//! interpretation, and random or exhaustively enumerated concepts.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bisim::BisimRelation;
use crate::features::FeatureSet;
use crate::interp::{Interpretation, InterpretationBuilder, Signature};
use crate::syntax::{Assertion, BasicRole, Concept, Gci, Role, RoleAxiom};

/// The generator used everywhere a seed is accepted.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Signature with concept names `A0..`, role names `r0..` and individual
/// names `a0..`.
pub fn signature(concepts: usize, roles: usize, individuals: usize) -> Signature {
    Signature::new(
        (0..concepts).map(|i| format!("A{i}")),
        (0..roles).map(|i| format!("r{i}")),
        (0..individuals).map(|i| format!("a{i}")),
    )
    .expect("generated names are distinct")
}

/// Every element is in each concept with probability 1/2, every pair is in
/// each role with probability `density`, individuals are uniform.
pub fn interpretation<R: Rng>(
    rng: &mut R,
    sig: &Signature,
    n: usize,
    density: f64,
) -> Interpretation {
    let mut b = InterpretationBuilder::new(sig.clone(), n);
    for c in sig.concept_names() {
        let xs: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        b = b.concept(c, xs);
    }
    for r in sig.role_names() {
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if rng.gen_bool(density) {
                    pairs.push((x, y));
                }
            }
        }
        b = b.role(r, pairs);
    }
    for a in sig.individual_names() {
        b = b.individual(a, rng.gen_range(0..n));
    }
    b.build().expect("generated interpretation is valid")
}

/// A small instance in the shape used by the oracle comparisons: domain size
/// `1..=max_n`, up to two names of each kind, random density.
pub fn small_instance<R: Rng>(rng: &mut R, max_n: usize) -> Interpretation {
    let sig = signature(
        rng.gen_range(0..=2),
        rng.gen_range(0..=2),
        rng.gen_range(0..=2),
    );
    let n = rng.gen_range(1..=max_n);
    let density = [0.05, 0.1, 0.2, 0.35][rng.gen_range(0..4)];
    // Few concept names make many elements alike, which is where the
    // interesting splits happen; sometimes drop all labels.
    let mut i = interpretation(rng, &sig, n, density);
    if rng.gen_bool(0.2) {
        let mut b = InterpretationBuilder::new(sig.clone(), n);
        for (r, name) in sig.role_names().iter().enumerate() {
            b = b.role(name, i.role(r).pairs().collect::<Vec<_>>());
        }
        for (a, name) in sig.individual_names().iter().enumerate() {
            b = b.individual(name, i.individual(a));
        }
        i = b.build().expect("valid");
    }
    i
}

/// Every element gets between 0 and `degree` successors per role, chosen
/// uniformly; each concept holds with probability 1/2.
pub fn bounded_degree<R: Rng>(
    rng: &mut R,
    sig: &Signature,
    n: usize,
    degree: usize,
) -> Interpretation {
    let mut b = InterpretationBuilder::new(sig.clone(), n);
    for c in sig.concept_names() {
        let xs: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        b = b.concept(c, xs);
    }
    for r in sig.role_names() {
        let mut pairs = Vec::with_capacity(n * degree);
        for x in 0..n {
            let k = rng.gen_range(0..=degree);
            for _ in 0..k {
                pairs.push((x, rng.gen_range(0..n)));
            }
        }
        b = b.role(r, pairs);
    }
    for a in sig.individual_names() {
        b = b.individual(a, rng.gen_range(0..n));
    }
    b.build().expect("generated interpretation is valid")
}

/// A copy of `interp` with its elements renumbered by a random
/// permutation, and the permutation as a relation. Isomorphic copies are
/// bisimilar for every feature set.
pub fn permuted<R: Rng>(rng: &mut R, interp: &Interpretation) -> (Interpretation, BisimRelation) {
    let n = interp.size();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let sig = interp.signature();
    let mut names = vec![String::new(); n];
    for x in 0..n {
        names[perm[x]] = interp.element_name(x).to_string();
    }
    let mut b = InterpretationBuilder::new(sig.clone(), n).element_names(names);
    for (c, name) in sig.concept_names().iter().enumerate() {
        b = b.concept(
            name,
            interp
                .concept(c)
                .iter()
                .map(|x| perm[x])
                .collect::<Vec<_>>(),
        );
    }
    for (r, name) in sig.role_names().iter().enumerate() {
        let pairs: Vec<_> = interp
            .role(r)
            .pairs()
            .map(|(x, y)| (perm[x], perm[y]))
            .collect();
        b = b.role(name, pairs);
    }
    for (a, name) in sig.individual_names().iter().enumerate() {
        b = b.individual(name, perm[interp.individual(a)]);
    }
    let z = BisimRelation::from_pairs(n, n, (0..n).map(|x| (x, perm[x])));
    (b.build().expect("permutation of a valid interpretation"), z)
}

/// Replaces every unnamed element by one or two copies and distributes the
/// edges so that the copy relation is a bisimulation for every feature set
/// within `{I, O, U}`: each copy of `x` keeps an `r`-edge to some copy of
/// every `r`-successor of `x`, and each copy of `y` keeps an edge from some
/// copy of every `r`-predecessor. Extra edges between copies are added at
/// random.
pub fn expansion<R: Rng>(rng: &mut R, interp: &Interpretation) -> (Interpretation, BisimRelation) {
    let n = interp.size();
    let named: BTreeSet<usize> = interp.individuals().iter().copied().collect();
    let mut copies: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut names = Vec::new();
    for x in 0..n {
        let k = if named.contains(&x) {
            1
        } else {
            rng.gen_range(1..=2)
        };
        let mut ids = Vec::new();
        for i in 0..k {
            ids.push(names.len());
            let base = interp.element_name(x);
            names.push(if i == 0 {
                base.to_string()
            } else {
                format!("{base}'{i}")
            });
        }
        copies.push(ids);
    }
    let m = names.len();
    let sig = interp.signature();
    let mut b = InterpretationBuilder::new(sig.clone(), m).element_names(names);
    for (c, name) in sig.concept_names().iter().enumerate() {
        let xs: Vec<usize> = interp
            .concept(c)
            .iter()
            .flat_map(|x| copies[x].clone())
            .collect();
        b = b.concept(name, xs);
    }
    for (r, name) in sig.role_names().iter().enumerate() {
        let mut pairs = BTreeSet::new();
        for (x, y) in interp.role(r).pairs() {
            let (cx, cy) = (&copies[x], &copies[y]);
            for &u in cx {
                pairs.insert((u, *cy.choose(rng).expect("non-empty")));
            }
            for &v in cy {
                if !cx.iter().any(|&u| pairs.contains(&(u, v))) {
                    pairs.insert((*cx.choose(rng).expect("non-empty"), v));
                }
            }
            for &u in cx {
                for &v in cy {
                    if rng.gen_bool(0.25) {
                        pairs.insert((u, v));
                    }
                }
            }
        }
        b = b.role(name, pairs);
    }
    for (a, name) in sig.individual_names().iter().enumerate() {
        b = b.individual(name, copies[interp.individual(a)][0]);
    }
    let z = BisimRelation::from_pairs(
        n,
        m,
        copies
            .iter()
            .enumerate()
            .flat_map(|(x, cs)| cs.iter().map(move |&c| (x, c))),
    );
    (b.build().expect("expansion is valid"), z)
}

fn basic_roles(sig: &Signature, phi: FeatureSet) -> Vec<BasicRole> {
    let mut out = Vec::new();
    for r in sig.role_names() {
        out.push(BasicRole::new(r.clone()));
        if phi.inverse() {
            out.push(BasicRole::inv(r.clone()));
        }
    }
    out
}

/// A random role of the language of `phi` with roughly `budget` nodes.
pub fn role<R: Rng>(rng: &mut R, sig: &Signature, phi: FeatureSet, budget: usize) -> Role {
    let basics = basic_roles(sig, phi);
    let leaf = |rng: &mut R| -> Role {
        let k = rng.gen_range(0..basics.len() + 2);
        match k {
            k if k < basics.len() => basics[k].to_role(),
            k if k == basics.len() && phi.universal() => Role::Universal,
            _ if basics.is_empty() => Role::Epsilon,
            _ => basics[rng.gen_range(0..basics.len())].to_role(),
        }
    };
    if budget <= 1 {
        return leaf(rng);
    }
    match rng.gen_range(0..6) {
        0 => role(rng, sig, phi, budget / 2).then(role(rng, sig, phi, budget / 2)),
        1 => role(rng, sig, phi, budget / 2).or(role(rng, sig, phi, budget / 2)),
        2 => role(rng, sig, phi, budget - 1).star(),
        3 => Role::test(concept(rng, sig, phi, budget - 1)),
        4 if phi.inverse() => role(rng, sig, phi, budget - 1).inv(),
        _ => leaf(rng),
    }
}

/// A random concept of the language of `phi` with roughly `budget` nodes.
pub fn concept<R: Rng>(rng: &mut R, sig: &Signature, phi: FeatureSet, budget: usize) -> Concept {
    let mut leaves = vec![Concept::Top, Concept::Bottom];
    leaves.extend(sig.concept_names().iter().map(|a| Concept::atom(a.clone())));
    if phi.nominal() {
        leaves.extend(
            sig.individual_names()
                .iter()
                .map(|a| Concept::nominal(a.clone())),
        );
    }
    if phi.self_loop() {
        leaves.extend(
            sig.role_names()
                .iter()
                .map(|r| Concept::self_loop(r.clone())),
        );
    }
    if budget <= 1 {
        return leaves.choose(rng).expect("non-empty").clone();
    }
    let basics = basic_roles(sig, phi);
    let has_roles = !basics.is_empty() || phi.universal();
    match rng.gen_range(0..7) {
        0 => concept(rng, sig, phi, budget - 1).not(),
        1 => concept(rng, sig, phi, budget / 2).and(concept(rng, sig, phi, budget / 2)),
        2 => concept(rng, sig, phi, budget / 2).or(concept(rng, sig, phi, budget / 2)),
        3 | 4 if has_roles => {
            let r = role(rng, sig, phi, (budget / 3).max(1));
            let c = concept(rng, sig, phi, budget / 2);
            if rng.gen_bool(0.5) {
                Concept::some(r, c)
            } else {
                Concept::all(r, c)
            }
        }
        5 if phi.counting() && !basics.is_empty() => {
            let b = basics.choose(rng).expect("non-empty").clone();
            let k = rng.gen_range(0..4);
            let c = concept(rng, sig, phi, budget / 2);
            if rng.gen_bool(0.5) {
                Concept::at_least(k, b, c)
            } else {
                Concept::at_most(k, b, c)
            }
        }
        _ => leaves.choose(rng).expect("non-empty").clone(),
    }
}

/// Up to `count` role axioms over the role names of `sig`: `ε ⊑ r` or
/// chains of one to three basic roles (inverses only when `I ∈ phi`).
pub fn rbox<R: Rng>(rng: &mut R, sig: &Signature, phi: FeatureSet, count: usize) -> Vec<RoleAxiom> {
    let basics = basic_roles(sig, phi);
    if basics.is_empty() {
        return Vec::new();
    }
    let names: Vec<&String> = sig.role_names().iter().collect();
    (0..rng.gen_range(0..=count))
        .map(|_| {
            let target = names.choose(rng).expect("non-empty").to_string();
            if rng.gen_bool(0.15) {
                RoleAxiom::EpsSub(target)
            } else {
                let k = rng.gen_range(1..=3);
                let chain = (0..k)
                    .map(|_| basics.choose(rng).expect("non-empty").clone())
                    .collect();
                RoleAxiom::ChainSub(chain, target)
            }
        })
        .collect()
}

/// A random GCI of the language of `phi`.
pub fn gci<R: Rng>(rng: &mut R, sig: &Signature, phi: FeatureSet, budget: usize) -> Gci {
    Gci {
        lhs: concept(rng, sig, phi, budget),
        rhs: concept(rng, sig, phi, budget),
    }
}

/// A random individual assertion of the language of `phi`; needs at least
/// one individual name.
pub fn assertion<R: Rng>(
    rng: &mut R,
    sig: &Signature,
    phi: FeatureSet,
    budget: usize,
) -> Assertion {
    let names: Vec<&String> = sig.individual_names().iter().collect();
    let ind = |rng: &mut R| names.choose(rng).expect("individual names").to_string();
    match rng.gen_range(0..5) {
        0 | 1 => Assertion::ConceptOf(concept(rng, sig, phi, budget), ind(rng)),
        2 if !sig.role_names().is_empty() => {
            let r = role(rng, sig, phi, budget / 2);
            Assertion::RoleOf(r, ind(rng), ind(rng))
        }
        3 if !sig.role_names().is_empty() => {
            let r = role(rng, sig, phi, budget / 2);
            Assertion::NegRoleOf(r, ind(rng), ind(rng))
        }
        4 => Assertion::Eq(ind(rng), ind(rng)),
        _ => Assertion::Neq(ind(rng), ind(rng)),
    }
}

/// Every concept of the language of `phi` over `sig` with at most
/// `max_size` nodes, where roles inside quantifiers are basic roles or `U`
/// and number restrictions use cardinalities up to `max_count`. Subterms
/// are shared between the returned concepts.
pub fn enumerate_concepts(
    sig: &Signature,
    phi: FeatureSet,
    max_size: usize,
    max_count: u64,
) -> Vec<Arc<Concept>> {
    let basics = basic_roles(sig, phi);
    let mut roles: Vec<(usize, Arc<Role>)> = basics
        .iter()
        .map(|b| (1 + usize::from(b.inverse), Arc::new(b.to_role())))
        .collect();
    if phi.universal() {
        roles.push((1, Arc::new(Role::Universal)));
    }
    let mut by_size: Vec<Vec<Arc<Concept>>> = vec![Vec::new(); max_size + 1];
    if max_size == 0 {
        return Vec::new();
    }
    let mut leaves = vec![Concept::Top, Concept::Bottom];
    leaves.extend(sig.concept_names().iter().map(|a| Concept::atom(a.clone())));
    if phi.nominal() {
        leaves.extend(
            sig.individual_names()
                .iter()
                .map(|a| Concept::nominal(a.clone())),
        );
    }
    if phi.self_loop() {
        leaves.extend(
            sig.role_names()
                .iter()
                .map(|r| Concept::self_loop(r.clone())),
        );
    }
    by_size[1] = leaves.into_iter().map(Arc::new).collect();
    for s in 2..=max_size {
        let mut out = Vec::new();
        for c in &by_size[s - 1] {
            out.push(Arc::new(Concept::Not(c.clone())));
        }
        for left in 1..s - 1 {
            let right = s - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    out.push(Arc::new(Concept::And(a.clone(), b.clone())));
                    out.push(Arc::new(Concept::Or(a.clone(), b.clone())));
                }
            }
        }
        for (rs, r) in &roles {
            if *rs + 1 >= s {
                continue;
            }
            for c in &by_size[s - 1 - rs] {
                out.push(Arc::new(Concept::Some(r.clone(), c.clone())));
                out.push(Arc::new(Concept::All(r.clone(), c.clone())));
            }
        }
        if phi.counting() {
            for b in &basics {
                let bs = 1 + usize::from(b.inverse);
                if bs + 1 >= s {
                    continue;
                }
                for c in &by_size[s - 1 - bs] {
                    for k in 0..=max_count {
                        out.push(Arc::new(Concept::AtLeast(k, b.clone(), c.clone())));
                        out.push(Arc::new(Concept::AtMost(k, b.clone(), c.clone())));
                    }
                }
            }
        }
        by_size[s] = out;
    }
    by_size.into_iter().flatten().collect()
}
