//! Finite interpretations and QS-interpretations.
//!
//! Elements are dense indices `0..n`. Concept extensions are bit sets, role
//! extensions are sorted successor lists.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use indexmap::IndexSet;
use thiserror::Error;

/// Errors raised while assembling signatures and interpretations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("domain must be non-empty")]
    EmptyDomain,
    #[error("{field}: unknown name {name:?}")]
    UnknownName { field: &'static str, name: String },
    #[error("{field}: element {element} out of range for a domain of size {size}")]
    ElementOutOfRange {
        field: &'static str,
        element: usize,
        size: usize,
    },
    #[error("individuals: no element assigned to {0:?}")]
    PartialIndividualMap(String),
    #[error("signature: name {0:?} is declared more than once")]
    DuplicateName(String),
    #[error("signature: names must be non-empty")]
    EmptyName,
    #[error("domain: element name {0:?} is used twice")]
    DuplicateElementName(String),
    #[error("qs: multiplicity of ({x}, {y}) must be positive exactly on role edges")]
    MultiplicityMismatch { x: usize, y: usize },
}

/// The concept, role and individual names of a language.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    concepts: IndexSet<String>,
    roles: IndexSet<String>,
    individuals: IndexSet<String>,
}

impl Signature {
    pub fn new<C, R, I>(concepts: C, roles: R, individuals: I) -> Result<Signature, BuildError>
    where
        C: IntoIterator,
        C::Item: Into<String>,
        R: IntoIterator,
        R::Item: Into<String>,
        I: IntoIterator,
        I::Item: Into<String>,
    {
        let mut seen = IndexSet::new();
        let mut collect = |names: Vec<String>| -> Result<IndexSet<String>, BuildError> {
            let mut set = IndexSet::new();
            for n in names {
                if n.is_empty() {
                    return Err(BuildError::EmptyName);
                }
                if !seen.insert(n.clone()) {
                    return Err(BuildError::DuplicateName(n));
                }
                set.insert(n);
            }
            Ok(set)
        };
        let concepts = collect(concepts.into_iter().map(Into::into).collect())?;
        let roles = collect(roles.into_iter().map(Into::into).collect())?;
        let individuals = collect(individuals.into_iter().map(Into::into).collect())?;
        Ok(Signature {
            concepts,
            roles,
            individuals,
        })
    }

    pub fn concept_names(&self) -> &IndexSet<String> {
        &self.concepts
    }
    pub fn role_names(&self) -> &IndexSet<String> {
        &self.roles
    }
    pub fn individual_names(&self) -> &IndexSet<String> {
        &self.individuals
    }

    pub fn concept_id(&self, name: &str) -> Option<usize> {
        self.concepts.get_index_of(name)
    }
    pub fn role_id(&self, name: &str) -> Option<usize> {
        self.roles.get_index_of(name)
    }
    pub fn individual_id(&self, name: &str) -> Option<usize> {
        self.individuals.get_index_of(name)
    }

    pub fn num_concepts(&self) -> usize {
        self.concepts.len()
    }
    pub fn num_roles(&self) -> usize {
        self.roles.len()
    }
    pub fn num_individuals(&self) -> usize {
        self.individuals.len()
    }

    /// `|Σ|`: the total number of names.
    pub fn size(&self) -> usize {
        self.concepts.len() + self.roles.len() + self.individuals.len()
    }
}

/// A role name or the inverse of one, by index into the signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicRoleId {
    pub role: usize,
    pub inverse: bool,
}

impl BasicRoleId {
    pub fn forward(role: usize) -> Self {
        BasicRoleId {
            role,
            inverse: false,
        }
    }
    pub fn backward(role: usize) -> Self {
        BasicRoleId {
            role,
            inverse: true,
        }
    }

    /// All basic roles over `num_roles` role names: names first, then
    /// inverses when `with_inverse` holds.
    pub fn enumerate(num_roles: usize, with_inverse: bool) -> Vec<BasicRoleId> {
        let mut out: Vec<_> = (0..num_roles).map(BasicRoleId::forward).collect();
        if with_inverse {
            out.extend((0..num_roles).map(BasicRoleId::backward));
        }
        out
    }
}

/// A subset of a domain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet(FixedBitSet);

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        ElementSet(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut b = FixedBitSet::with_capacity(n);
        b.insert_range(..);
        ElementSet(b)
    }

    pub fn from_elements(n: usize, elems: impl IntoIterator<Item = usize>) -> Self {
        let mut s = ElementSet::empty(n);
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn domain_size(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, x: usize) {
        self.0.insert(x);
    }

    pub fn remove(&mut self, x: usize) {
        self.0.set(x, false);
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn complement(&self) -> ElementSet {
        let mut b = self.0.clone();
        b.toggle_range(..);
        ElementSet(b)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A binary relation over one domain, stored as sorted, duplicate-free
/// successor lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    succ: Vec<Vec<u32>>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            succ: vec![Vec::new(); n],
        }
    }

    /// Builds a relation from pairs; duplicates are dropped.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut succ = vec![Vec::new(); n];
        for (x, y) in pairs {
            succ[x].push(y as u32);
        }
        Self::from_successor_lists(succ)
    }

    pub fn from_successor_lists(mut succ: Vec<Vec<u32>>) -> Self {
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        Relation { succ }
    }

    pub fn identity(n: usize) -> Self {
        Relation {
            succ: (0..n as u32).map(|x| vec![x]).collect(),
        }
    }

    pub fn diagonal(set: &ElementSet) -> Self {
        let mut r = Relation::empty(set.domain_size());
        for x in set.iter() {
            r.succ[x].push(x as u32);
        }
        r
    }

    pub fn full(n: usize) -> Self {
        let all: Vec<u32> = (0..n as u32).collect();
        Relation { succ: vec![all; n] }
    }

    pub fn domain_size(&self) -> usize {
        self.succ.len()
    }

    pub fn successors(&self, x: usize) -> &[u32] {
        &self.succ[x]
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.succ[x].binary_search(&(y as u32)).is_ok()
    }

    /// Number of pairs.
    pub fn len(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.iter().all(Vec::is_empty)
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y as usize)))
    }

    pub fn transpose(&self) -> Relation {
        let mut succ = vec![Vec::new(); self.succ.len()];
        for (x, y) in self.pairs() {
            succ[y].push(x as u32);
        }
        // pairs() is ordered by x, so every list is already sorted
        Relation { succ }
    }

    pub fn compose(&self, other: &Relation) -> Relation {
        let n = self.succ.len();
        let mut mark = FixedBitSet::with_capacity(n);
        let mut succ = Vec::with_capacity(n);
        for ys in &self.succ {
            mark.clear();
            let mut out = Vec::new();
            for &y in ys {
                for &z in &other.succ[y as usize] {
                    if !mark.put(z as usize) {
                        out.push(z);
                    }
                }
            }
            out.sort_unstable();
            succ.push(out);
        }
        Relation { succ }
    }

    pub fn union(&self, other: &Relation) -> Relation {
        let succ = self
            .succ
            .iter()
            .zip(&other.succ)
            .map(|(a, b)| {
                let mut v = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    match a[i].cmp(&b[j]) {
                        std::cmp::Ordering::Less => {
                            v.push(a[i]);
                            i += 1;
                        }
                        std::cmp::Ordering::Greater => {
                            v.push(b[j]);
                            j += 1;
                        }
                        std::cmp::Ordering::Equal => {
                            v.push(a[i]);
                            i += 1;
                            j += 1;
                        }
                    }
                }
                v.extend_from_slice(&a[i..]);
                v.extend_from_slice(&b[j..]);
                v
            })
            .collect();
        Relation { succ }
    }

    /// Reflexive-transitive closure, one BFS per source.
    pub fn star(&self) -> Relation {
        let n = self.succ.len();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut queue = Vec::new();
        let mut succ = Vec::with_capacity(n);
        for x in 0..n {
            seen.clear();
            queue.clear();
            seen.insert(x);
            queue.push(x as u32);
            let mut head = 0;
            while head < queue.len() {
                let y = queue[head] as usize;
                head += 1;
                for &z in &self.succ[y] {
                    if !seen.put(z as usize) {
                        queue.push(z);
                    }
                }
            }
            let mut out = queue.clone();
            out.sort_unstable();
            succ.push(out);
        }
        Relation { succ }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.pairs().all(|(x, y)| other.contains(x, y))
    }

    /// Elements `x` with `⟨x, x⟩` in the relation.
    pub fn reflexive_points(&self) -> ElementSet {
        let n = self.succ.len();
        ElementSet::from_elements(n, (0..n).filter(|&x| self.contains(x, x)))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// A finite interpretation over a signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    signature: Signature,
    element_names: Vec<String>,
    concepts: Vec<ElementSet>,
    roles: Vec<Relation>,
    individuals: Vec<usize>,
}

impl Interpretation {
    /// Validates and assembles an interpretation over `0..n`.
    pub fn build(
        signature: Signature,
        n: usize,
        concept_ext: &BTreeMap<String, Vec<usize>>,
        role_ext: &BTreeMap<String, Vec<(usize, usize)>>,
        individual_map: &BTreeMap<String, usize>,
    ) -> Result<Interpretation, BuildError> {
        let mut b = InterpretationBuilder::new(signature, n);
        for (c, xs) in concept_ext {
            b = b.concept(c, xs.iter().copied());
        }
        for (r, ps) in role_ext {
            b = b.role(r, ps.iter().copied());
        }
        for (a, &x) in individual_map {
            b = b.individual(a, x);
        }
        b.build()
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// `|Δ|`.
    pub fn size(&self) -> usize {
        self.element_names.len()
    }

    pub fn element_name(&self, x: usize) -> &str {
        &self.element_names[x]
    }

    pub fn element_names(&self) -> &[String] {
        &self.element_names
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.element_names.iter().position(|n| n == name)
    }

    pub fn concept(&self, id: usize) -> &ElementSet {
        &self.concepts[id]
    }

    pub fn concept_by_name(&self, name: &str) -> Option<&ElementSet> {
        self.signature.concept_id(name).map(|i| &self.concepts[i])
    }

    pub fn role(&self, id: usize) -> &Relation {
        &self.roles[id]
    }

    pub fn role_by_name(&self, name: &str) -> Option<&Relation> {
        self.signature.role_id(name).map(|i| &self.roles[i])
    }

    pub fn roles(&self) -> &[Relation] {
        &self.roles
    }

    pub fn individual(&self, id: usize) -> usize {
        self.individuals[id]
    }

    pub fn individual_by_name(&self, name: &str) -> Option<usize> {
        self.signature
            .individual_id(name)
            .map(|i| self.individuals[i])
    }

    pub fn individuals(&self) -> &[usize] {
        &self.individuals
    }

    /// The relation of a basic role (transposed for inverses).
    pub fn basic_role(&self, b: BasicRoleId) -> Relation {
        if b.inverse {
            self.roles[b.role].transpose()
        } else {
            self.roles[b.role].clone()
        }
    }

    /// Same domain, concepts and individuals; role extensions replaced.
    pub fn with_roles(&self, roles: Vec<Relation>) -> Interpretation {
        assert_eq!(roles.len(), self.roles.len());
        assert!(roles.iter().all(|r| r.domain_size() == self.size()));
        Interpretation {
            roles,
            ..self.clone()
        }
    }

    /// Renames elements; `names` must be distinct and of length `|Δ|`.
    pub fn with_element_names(mut self, names: Vec<String>) -> Result<Interpretation, BuildError> {
        check_names(&names, self.size())?;
        self.element_names = names;
        Ok(self)
    }
}

fn check_names(names: &[String], n: usize) -> Result<(), BuildError> {
    if names.len() != n {
        return Err(BuildError::ElementOutOfRange {
            field: "domain",
            element: names.len(),
            size: n,
        });
    }
    let mut seen = std::collections::HashSet::new();
    for name in names {
        if !seen.insert(name) {
            return Err(BuildError::DuplicateElementName(name.clone()));
        }
    }
    Ok(())
}

/// Incremental construction of an [`Interpretation`]; the first error wins
/// and is reported by [`InterpretationBuilder::build`].
#[derive(Debug)]
pub struct InterpretationBuilder {
    signature: Signature,
    n: usize,
    names: Option<Vec<String>>,
    concepts: Vec<Vec<usize>>,
    roles: Vec<Vec<(usize, usize)>>,
    individuals: Vec<Option<usize>>,
    error: Option<BuildError>,
}

impl InterpretationBuilder {
    pub fn new(signature: Signature, n: usize) -> Self {
        InterpretationBuilder {
            concepts: vec![Vec::new(); signature.num_concepts()],
            roles: vec![Vec::new(); signature.num_roles()],
            individuals: vec![None; signature.num_individuals()],
            signature,
            n,
            names: None,
            error: None,
        }
    }

    fn fail(&mut self, e: BuildError) {
        if self.error.is_none() {
            self.error = Some(e);
        }
    }

    fn check(&mut self, field: &'static str, x: usize) -> bool {
        if x >= self.n {
            self.fail(BuildError::ElementOutOfRange {
                field,
                element: x,
                size: self.n,
            });
            false
        } else {
            true
        }
    }

    pub fn element_names<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.names = Some(names.into_iter().map(Into::into).collect());
        self
    }

    pub fn concept(mut self, name: &str, elems: impl IntoIterator<Item = usize>) -> Self {
        match self.signature.concept_id(name) {
            Some(id) => {
                for x in elems {
                    if self.check("concepts", x) {
                        self.concepts[id].push(x);
                    }
                }
            }
            None => self.fail(BuildError::UnknownName {
                field: "concepts",
                name: name.to_string(),
            }),
        }
        self
    }

    pub fn role(mut self, name: &str, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        match self.signature.role_id(name) {
            Some(id) => {
                for (x, y) in pairs {
                    if self.check("roles", x) && self.check("roles", y) {
                        self.roles[id].push((x, y));
                    }
                }
            }
            None => self.fail(BuildError::UnknownName {
                field: "roles",
                name: name.to_string(),
            }),
        }
        self
    }

    pub fn individual(mut self, name: &str, x: usize) -> Self {
        match self.signature.individual_id(name) {
            Some(id) => {
                if self.check("individuals", x) {
                    self.individuals[id] = Some(x);
                }
            }
            None => self.fail(BuildError::UnknownName {
                field: "individuals",
                name: name.to_string(),
            }),
        }
        self
    }

    pub fn build(self) -> Result<Interpretation, BuildError> {
        if self.n == 0 {
            return Err(BuildError::EmptyDomain);
        }
        if let Some(e) = self.error {
            return Err(e);
        }
        let n = self.n;
        let mut individuals = Vec::with_capacity(self.individuals.len());
        for (id, x) in self.individuals.into_iter().enumerate() {
            match x {
                Some(x) => individuals.push(x),
                None => {
                    let name = self.signature.individual_names()[id].clone();
                    return Err(BuildError::PartialIndividualMap(name));
                }
            }
        }
        let element_names = match self.names {
            Some(names) => {
                check_names(&names, n)?;
                names
            }
            None => (0..n).map(|x| x.to_string()).collect(),
        };
        Ok(Interpretation {
            signature: self.signature,
            element_names,
            concepts: self
                .concepts
                .into_iter()
                .map(|xs| ElementSet::from_elements(n, xs))
                .collect(),
            roles: self
                .roles
                .into_iter()
                .map(|ps| Relation::from_pairs(n, ps))
                .collect(),
            individuals,
        })
    }
}

/// Edge multiplicities of one basic role, aligned with the successor lists
/// of the underlying relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiplicity {
    /// `weights[x][i]` belongs to the `i`-th successor of `x`.
    weights: Vec<Vec<u64>>,
}

impl Multiplicity {
    pub fn weights(&self, x: usize) -> &[u64] {
        &self.weights[x]
    }
}

/// An interpretation enriched with edge multiplicities (`QU`) for every basic
/// role and a reflexivity set (`SE`) for every role name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSInterpretation {
    base: Interpretation,
    forward: Vec<Multiplicity>,
    backward: Vec<Multiplicity>,
    se: Vec<ElementSet>,
}

impl QSInterpretation {
    /// `qu(basic, x, y)` is queried for every pair; it must be positive
    /// exactly on edges of the basic role.
    pub fn new(
        base: Interpretation,
        qu: impl Fn(BasicRoleId, usize, usize) -> u64,
        se: Vec<ElementSet>,
    ) -> Result<QSInterpretation, BuildError> {
        let n = base.size();
        if se.len() != base.signature().num_roles() {
            return Err(BuildError::ElementOutOfRange {
                field: "se",
                element: se.len(),
                size: base.signature().num_roles(),
            });
        }
        let mut forward = Vec::new();
        let mut backward = Vec::new();
        for r in 0..base.signature().num_roles() {
            for inverse in [false, true] {
                let b = BasicRoleId { role: r, inverse };
                let rel = base.basic_role(b);
                let mut weights = Vec::with_capacity(n);
                for x in 0..n {
                    let succ = rel.successors(x);
                    let mut row = Vec::with_capacity(succ.len());
                    let mut k = 0;
                    for y in 0..n {
                        let w = qu(b, x, y);
                        let edge = k < succ.len() && succ[k] as usize == y;
                        if edge {
                            k += 1;
                        }
                        if (w > 0) != edge {
                            return Err(BuildError::MultiplicityMismatch { x, y });
                        }
                        if edge {
                            row.push(w);
                        }
                    }
                    weights.push(row);
                }
                let m = Multiplicity { weights };
                if inverse {
                    backward.push(m);
                } else {
                    forward.push(m);
                }
            }
        }
        Ok(QSInterpretation {
            base,
            forward,
            backward,
            se,
        })
    }

    /// Builds directly from aligned weight rows; used by quotient
    /// construction where the rows are computed alongside the edges.
    pub(crate) fn from_rows(
        base: Interpretation,
        forward: Vec<Vec<Vec<u64>>>,
        backward: Vec<Vec<Vec<u64>>>,
        se: Vec<ElementSet>,
    ) -> QSInterpretation {
        QSInterpretation {
            base,
            forward: forward
                .into_iter()
                .map(|weights| Multiplicity { weights })
                .collect(),
            backward: backward
                .into_iter()
                .map(|weights| Multiplicity { weights })
                .collect(),
            se,
        }
    }

    /// The canonical embedding: unit multiplicities and `SE(r)` the
    /// reflexive points of `r`.
    pub fn embed(base: Interpretation) -> QSInterpretation {
        let se = base
            .roles()
            .iter()
            .map(Relation::reflexive_points)
            .collect();
        let rows = |rel: &Relation| -> Vec<Vec<u64>> {
            (0..rel.domain_size())
                .map(|x| vec![1; rel.successors(x).len()])
                .collect()
        };
        let forward = base.roles().iter().map(rows).collect();
        let backward = base.roles().iter().map(|r| rows(&r.transpose())).collect();
        QSInterpretation::from_rows(base, forward, backward, se)
    }

    pub fn base(&self) -> &Interpretation {
        &self.base
    }

    pub fn multiplicity(&self, b: BasicRoleId) -> &Multiplicity {
        if b.inverse {
            &self.backward[b.role]
        } else {
            &self.forward[b.role]
        }
    }

    /// `QU(b)(x, y)`; zero off the edges.
    pub fn qu(&self, b: BasicRoleId, x: usize, y: usize) -> u64 {
        let rel = if b.inverse {
            self.base.role(b.role).transpose()
        } else {
            self.base.role(b.role).clone()
        };
        match rel.successors(x).binary_search(&(y as u32)) {
            Ok(i) => self.multiplicity(b).weights[x][i],
            Err(_) => 0,
        }
    }

    pub fn se(&self, role: usize) -> &ElementSet {
        &self.se[role]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::new(["F", "M"], ["r"], ["a", "b", "c"]).unwrap()
    }

    #[test]
    fn empty_domain_rejected() {
        let e = InterpretationBuilder::new(sig(), 0).build().unwrap_err();
        assert_eq!(e, BuildError::EmptyDomain);
    }

    #[test]
    fn partial_individual_map_rejected() {
        let e = InterpretationBuilder::new(sig(), 3)
            .individual("a", 0)
            .individual("b", 1)
            .build()
            .unwrap_err();
        assert_eq!(e, BuildError::PartialIndividualMap("c".into()));
    }

    #[test]
    fn out_of_range_and_unknown_names() {
        let e = InterpretationBuilder::new(sig(), 2)
            .concept("F", [5])
            .build()
            .unwrap_err();
        assert!(matches!(
            e,
            BuildError::ElementOutOfRange {
                field: "concepts",
                element: 5,
                ..
            }
        ));
        let e = InterpretationBuilder::new(sig(), 2)
            .role("s", [(0, 1)])
            .build()
            .unwrap_err();
        assert!(matches!(e, BuildError::UnknownName { field: "roles", .. }));
    }

    #[test]
    fn signature_names_disjoint() {
        assert_eq!(
            Signature::new(["A"], ["A"], Vec::<String>::new()),
            Err(BuildError::DuplicateName("A".into()))
        );
        assert_eq!(
            Signature::new([""], Vec::<String>::new(), Vec::<String>::new()),
            Err(BuildError::EmptyName)
        );
    }

    #[test]
    fn duplicate_pairs_are_deduplicated() {
        let i = InterpretationBuilder::new(sig(), 3)
            .role("r", [(0, 1), (0, 1), (1, 2)])
            .individual("a", 0)
            .individual("b", 1)
            .individual("c", 2)
            .build()
            .unwrap();
        assert_eq!(i.role(0).len(), 2);
    }

    #[test]
    fn relation_algebra() {
        let r = Relation::from_pairs(3, [(0, 1), (1, 2)]);
        assert_eq!(r.compose(&r).pairs().collect::<Vec<_>>(), vec![(0, 2)]);
        assert_eq!(r.star().len(), 6);
        assert_eq!(
            r.transpose().pairs().collect::<Vec<_>>(),
            vec![(1, 0), (2, 1)]
        );
        assert!(r.is_subset(&r.star()));
        assert_eq!(r.union(&Relation::identity(3)).len(), 5);
    }

    #[test]
    fn qs_multiplicity_must_match_edges() {
        let sig = Signature::new(Vec::<String>::new(), ["r"], Vec::<String>::new()).unwrap();
        let base = InterpretationBuilder::new(sig, 2)
            .role("r", [(0, 1)])
            .build()
            .unwrap();
        let se = vec![ElementSet::empty(2)];
        let bad = QSInterpretation::new(base.clone(), |_, _, _| 1, se.clone());
        assert!(matches!(bad, Err(BuildError::MultiplicityMismatch { .. })));
        let ok = QSInterpretation::new(
            base,
            |b, x, y| match (b.inverse, x, y) {
                (false, 0, 1) | (true, 1, 0) => 3,
                _ => 0,
            },
            se,
        )
        .unwrap();
        assert_eq!(ok.qu(BasicRoleId::forward(0), 0, 1), 3);
        assert_eq!(ok.qu(BasicRoleId::backward(0), 1, 0), 3);
        assert_eq!(ok.qu(BasicRoleId::forward(0), 1, 0), 0);
    }
}
