//! The labeled-graph view of an interpretation that the refinement engine and
//! the bisimulation checks work on.

use thiserror::Error;

use crate::features::FeatureSet;
use crate::interp::{BasicRoleId, Interpretation, InterpretationBuilder, Signature};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("interpretations do not share a signature")]
pub struct SignatureMismatch;

/// Compressed adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl Adjacency {
    fn from_lists<'a>(lists: impl IntoIterator<Item = &'a [u32]>) -> Adjacency {
        let mut offsets = vec![0u32];
        let mut targets = Vec::new();
        for l in lists {
            targets.extend_from_slice(l);
            offsets.push(targets.len() as u32);
        }
        Adjacency { offsets, targets }
    }

    fn transpose(&self) -> Adjacency {
        let n = self.offsets.len() - 1;
        let mut degree = vec![0u32; n + 1];
        for &t in &self.targets {
            degree[t as usize + 1] += 1;
        }
        for i in 0..n {
            degree[i + 1] += degree[i];
        }
        let offsets = degree.clone();
        let mut fill = degree;
        let mut targets = vec![0u32; self.targets.len()];
        for x in 0..n {
            for &y in self.neighbors(x) {
                let slot = &mut fill[y as usize];
                targets[*slot as usize] = x as u32;
                *slot += 1;
            }
        }
        Adjacency { offsets, targets }
    }

    pub fn neighbors(&self, x: usize) -> &[u32] {
        &self.targets[self.offsets[x] as usize..self.offsets[x + 1] as usize]
    }

    /// Start of `x`'s slice in the flat target array; edge ids are
    /// `range(x)`.
    pub fn range(&self, x: usize) -> std::ops::Range<usize> {
        self.offsets[x] as usize..self.offsets[x + 1] as usize
    }

    pub fn num_edges(&self) -> usize {
        self.targets.len()
    }

    pub fn num_nodes(&self) -> usize {
        self.offsets.len() - 1
    }
}

/// Where a node came from: which side of a disjoint union and which element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Origin {
    pub side: u8,
    pub element: u32,
}

/// Nodes with concept labels, nominal labels, self-loop labels and per-role
/// forward and reverse adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    signature: Signature,
    /// Sorted concept ids per node.
    atom_labels: Vec<Vec<u32>>,
    /// Sorted individual ids per node.
    nominal_labels: Vec<Vec<u32>>,
    /// Sorted role ids `r` with `r(x, x)` per node.
    self_loops: Vec<Vec<u32>>,
    forward: Vec<Adjacency>,
    reverse: Vec<Adjacency>,
    origin: Vec<Origin>,
}

impl LabeledGraph {
    /// Nominal and self-loop labels are always stored; consumers decide
    /// whether the feature set makes them relevant.
    pub fn from_interpretation(interp: &Interpretation) -> LabeledGraph {
        Self::union_of(&[interp])
    }

    pub fn disjoint_union(
        left: &Interpretation,
        right: &Interpretation,
    ) -> Result<LabeledGraph, SignatureMismatch> {
        if left.signature() != right.signature() {
            return Err(SignatureMismatch);
        }
        Ok(Self::union_of(&[left, right]))
    }

    fn union_of(parts: &[&Interpretation]) -> LabeledGraph {
        let signature = parts[0].signature().clone();
        let total: usize = parts.iter().map(|p| p.size()).sum();
        let mut atom_labels = vec![Vec::new(); total];
        let mut nominal_labels = vec![Vec::new(); total];
        let mut self_loops = vec![Vec::new(); total];
        let mut origin = Vec::with_capacity(total);
        let mut succ: Vec<Vec<Vec<u32>>> = vec![Vec::with_capacity(total); signature.num_roles()];
        let mut base = 0usize;
        for (side, part) in parts.iter().enumerate() {
            for x in 0..part.size() {
                origin.push(Origin {
                    side: side as u8,
                    element: x as u32,
                });
            }
            for c in 0..signature.num_concepts() {
                for x in part.concept(c).iter() {
                    atom_labels[base + x].push(c as u32);
                }
            }
            for (a, &x) in part.individuals().iter().enumerate() {
                nominal_labels[base + x].push(a as u32);
            }
            for (r, rel) in part.roles().iter().enumerate() {
                for x in 0..part.size() {
                    let ys: Vec<u32> = rel
                        .successors(x)
                        .iter()
                        .map(|&y| (base + y as usize) as u32)
                        .collect();
                    if rel.contains(x, x) {
                        self_loops[base + x].push(r as u32);
                    }
                    succ[r].push(ys);
                }
            }
            base += part.size();
        }
        let forward: Vec<Adjacency> = succ
            .iter()
            .map(|lists| Adjacency::from_lists(lists.iter().map(Vec::as_slice)))
            .collect();
        let reverse = forward.iter().map(Adjacency::transpose).collect();
        LabeledGraph {
            signature,
            atom_labels,
            nominal_labels,
            self_loops,
            forward,
            reverse,
            origin,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn num_nodes(&self) -> usize {
        self.origin.len()
    }

    pub fn atom_labels(&self, x: usize) -> &[u32] {
        &self.atom_labels[x]
    }

    pub fn nominal_labels(&self, x: usize) -> &[u32] {
        &self.nominal_labels[x]
    }

    pub fn self_loops(&self, x: usize) -> &[u32] {
        &self.self_loops[x]
    }

    pub fn origin(&self, x: usize) -> Origin {
        self.origin[x]
    }

    pub fn num_edges(&self, role: usize) -> usize {
        self.forward[role].num_edges()
    }

    /// Adjacency of a basic role in its own direction: `successors(b)` of
    /// `x` are the `y` with `b(x, y)`.
    pub fn successors_adj(&self, b: BasicRoleId) -> &Adjacency {
        if b.inverse {
            &self.reverse[b.role]
        } else {
            &self.forward[b.role]
        }
    }

    /// Adjacency of the transpose: `predecessors(b)` of `y` are the `x` with
    /// `b(x, y)`.
    pub fn predecessors_adj(&self, b: BasicRoleId) -> &Adjacency {
        if b.inverse {
            &self.forward[b.role]
        } else {
            &self.reverse[b.role]
        }
    }

    pub fn successors(&self, b: BasicRoleId, x: usize) -> &[u32] {
        self.successors_adj(b).neighbors(x)
    }

    pub fn predecessors(&self, b: BasicRoleId, y: usize) -> &[u32] {
        self.predecessors_adj(b).neighbors(y)
    }

    /// Basic roles relevant under `phi`: role names, plus inverses iff
    /// `I ∈ phi`.
    pub fn basic_roles(&self, phi: FeatureSet) -> Vec<BasicRoleId> {
        BasicRoleId::enumerate(self.signature.num_roles(), phi.inverse())
    }

    /// Nodes whose origin tag is `side`, in element order.
    pub fn nodes_of_side(&self, side: u8) -> Vec<usize> {
        (0..self.num_nodes())
            .filter(|&x| self.origin[x].side == side)
            .collect()
    }

    /// Rebuilds the interpretation on one side of the graph. Element names
    /// default to indices.
    pub fn extract(&self, side: u8) -> Interpretation {
        let nodes = self.nodes_of_side(side);
        let local = |x: usize| self.origin[x].element as usize;
        let mut b = InterpretationBuilder::new(self.signature.clone(), nodes.len());
        for (c, name) in self.signature.concept_names().iter().enumerate() {
            let xs = nodes
                .iter()
                .filter(|&&x| self.atom_labels[x].contains(&(c as u32)))
                .map(|&x| local(x));
            b = b.concept(name, xs.collect::<Vec<_>>());
        }
        for (r, name) in self.signature.role_names().iter().enumerate() {
            let mut pairs = Vec::new();
            for &x in &nodes {
                for &y in self.forward[r].neighbors(x) {
                    pairs.push((local(x), local(y as usize)));
                }
            }
            b = b.role(name, pairs);
        }
        for &x in &nodes {
            for &a in &self.nominal_labels[x] {
                b = b.individual(&self.signature.individual_names()[a as usize], local(x));
            }
        }
        b.build().expect("graph sides are valid interpretations")
    }
}

/// True iff every element is reachable from a named element along edges of
/// role names (and their inverses when `I ∈ phi`).
pub fn is_unreachable_objects_free(interp: &Interpretation, phi: FeatureSet) -> bool {
    let g = LabeledGraph::from_interpretation(interp);
    let n = g.num_nodes();
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    for &x in interp.individuals() {
        if !seen[x] {
            seen[x] = true;
            stack.push(x);
        }
    }
    let roles = g.basic_roles(phi);
    while let Some(x) = stack.pop() {
        for &b in &roles {
            for &y in g.successors(b, x) {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y as usize);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fig2_i1_graph() {
        let i1 = fixtures::fig2_i1();
        let g = LabeledGraph::from_interpretation(&i1);
        assert_eq!(g.num_nodes(), 6);
        assert_eq!(g.num_edges(0), 6);
        let r = BasicRoleId::forward(0);
        let out: usize = (0..6).map(|x| g.successors(r, x).len()).sum();
        let inn: usize = (0..6).map(|x| g.predecessors(r, x).len()).sum();
        assert_eq!((out, inn), (6, 6));
        let name = |x: u32| i1.element_name(x as usize).to_string();
        let mut edges = Vec::new();
        for x in 0..6 {
            for &y in g.successors(r, x) {
                edges.push((name(x as u32), name(y)));
            }
        }
        let expected = [
            ("a", "u1"),
            ("b", "u1"),
            ("c", "u2"),
            ("c", "u3"),
            ("u1", "u2"),
            ("u1", "u3"),
        ];
        let mut expected: Vec<_> = expected
            .iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect();
        expected.sort();
        edges.sort();
        assert_eq!(edges, expected);
    }

    #[test]
    fn reverse_is_transpose() {
        let i2 = fixtures::fig2_i2();
        let g = LabeledGraph::from_interpretation(&i2);
        let r = BasicRoleId::forward(0);
        for x in 0..g.num_nodes() {
            for &y in g.successors(r, x) {
                assert!(g.predecessors(r, y as usize).contains(&(x as u32)));
            }
            for &y in g.predecessors(r, x) {
                assert!(g.successors(r, y as usize).contains(&(x as u32)));
            }
        }
    }

    #[test]
    fn empty_role_and_self_loop() {
        let sig = Signature::new(Vec::<String>::new(), ["r"], Vec::<String>::new()).unwrap();
        let i = InterpretationBuilder::new(sig.clone(), 2).build().unwrap();
        let g = LabeledGraph::from_interpretation(&i);
        assert_eq!(g.num_edges(0), 0);
        assert!(g.predecessors(BasicRoleId::forward(0), 0).is_empty());

        let i = InterpretationBuilder::new(sig, 2)
            .role("r", [(1, 1)])
            .build()
            .unwrap();
        let g = LabeledGraph::from_interpretation(&i);
        assert_eq!(g.self_loops(1), &[0]);
        assert!(g.self_loops(0).is_empty());
        assert_eq!(g.successors(BasicRoleId::forward(0), 1), &[1]);
    }

    #[test]
    fn union_of_fig2_i1_i2() {
        let g = LabeledGraph::disjoint_union(&fixtures::fig2_i1(), &fixtures::fig2_i2()).unwrap();
        assert_eq!(g.num_nodes(), 13);
        // 6 arrows in I1, 8 in I2
        assert_eq!(g.num_edges(0), 14);
        for a in 0..3u32 {
            let labelled = (0..13)
                .filter(|&x| g.nominal_labels(x).contains(&a))
                .count();
            assert_eq!(labelled, 2);
        }
    }

    #[test]
    fn self_union_doubles() {
        let i = fixtures::fig2_i3();
        let g = LabeledGraph::disjoint_union(&i, &i).unwrap();
        assert_eq!(g.num_nodes(), 2 * i.size());
        assert_eq!(g.extract(0), g.extract(1));
    }

    #[test]
    fn mismatched_signatures() {
        let i = fixtures::fig2_i1();
        let other = fixtures::two_cycle();
        assert_eq!(
            LabeledGraph::disjoint_union(&i, &other),
            Err(SignatureMismatch)
        );
    }

    #[test]
    fn round_trip_extensions() {
        for i in [
            fixtures::fig2_i1(),
            fixtures::fig2_i2(),
            fixtures::q_counterexample(),
        ] {
            let g = LabeledGraph::from_interpretation(&i);
            let back = g
                .extract(0)
                .with_element_names(i.element_names().to_vec())
                .unwrap();
            assert_eq!(back, i);
        }
    }

    #[test]
    fn reachability() {
        assert!(is_unreachable_objects_free(
            &fixtures::fig2_i1(),
            FeatureSet::EMPTY
        ));
        // w5 in I3 only reaches w4; nothing named reaches w5 forwards
        assert!(!is_unreachable_objects_free(
            &fixtures::fig2_i3(),
            FeatureSet::EMPTY
        ));
        assert!(is_unreachable_objects_free(
            &fixtures::fig2_i3(),
            "I".parse().unwrap()
        ));
        let sig = Signature::new(Vec::<String>::new(), ["r"], ["a"]).unwrap();
        let i = InterpretationBuilder::new(sig.clone(), 1)
            .individual("a", 0)
            .build()
            .unwrap();
        assert!(is_unreachable_objects_free(&i, FeatureSet::EMPTY));
        let i = InterpretationBuilder::new(sig, 2)
            .individual("a", 0)
            .build()
            .unwrap();
        assert!(!is_unreachable_objects_free(&i, FeatureSet::FULL));
    }
}
