//! Coarsest stable partitions: the partition of the largest
//! auto-bisimulation of a labeled graph.
//!
//! The engine keeps, besides the partition into blocks, a coarser partition
//! into constellations (sets of blocks). Every block is stable with respect
//! to every constellation. A constellation with two or more blocks is
//! refined by carving out a block `B` holding at most half its elements and
//! splitting every block against `B` and the remainder. Without counting,
//! each element keeps one edge counter per (constellation, basic role) so
//! that "has a successor in the remainder" is known without scanning it.
//! Every element is scanned in at most `log2 n` carved blocks, which gives
//! the `O(|Σ|·m·log n)` bound.

mod engine;
mod trace;

use std::collections::HashMap;
use std::fmt;

use crate::features::FeatureSet;
use crate::graph::LabeledGraph;
use crate::interp::{Interpretation, Relation};

pub use trace::{InitBlock, RefinementTrace, SplitGroup, SplitKey, Splitter, TraceEvent};

/// A partition of `0..n` in canonical form: blocks ordered by their least
/// element, elements sorted within each block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<u32>,
    blocks: Vec<Vec<u32>>,
}

impl Partition {
    /// Canonical partition from any block labelling of the elements.
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Partition {
        let mut ids: HashMap<T, u32> = HashMap::new();
        let mut block_of = Vec::with_capacity(labels.len());
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        for (x, l) in labels.iter().enumerate() {
            let next = ids.len() as u32;
            let id = *ids.entry(*l).or_insert(next);
            if id as usize == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[id as usize].push(x as u32);
            block_of.push(id);
        }
        Partition { block_of, blocks }
    }

    /// Every element in its own block.
    pub fn discrete(n: usize) -> Partition {
        Partition::from_labels(&(0..n as u32).collect::<Vec<_>>())
    }

    /// All elements in one block.
    pub fn trivial(n: usize) -> Partition {
        Partition::from_labels(&vec![0u8; n])
    }

    /// Builds from explicit blocks; `None` unless they are non-empty,
    /// disjoint and cover `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Option<Partition> {
        let mut label = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return None;
            }
            for &x in b {
                if x >= n || label[x] != usize::MAX {
                    return None;
                }
                label[x] = i;
            }
        }
        if label.contains(&usize::MAX) {
            return None;
        }
        Some(Partition::from_labels(&label))
    }

    pub fn num_nodes(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x] as usize
    }

    pub fn block(&self, id: usize) -> &[u32] {
        &self.blocks[id]
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.num_nodes() == coarser.num_nodes()
            && self.blocks.iter().all(|b| {
                let first = coarser.block_of(b[0] as usize);
                b.iter().all(|&x| coarser.block_of(x as usize) == first)
            })
    }

    /// `{(x, y) | x and y share a block}`.
    pub fn to_relation(&self) -> Relation {
        let n = self.num_nodes();
        Relation::from_successor_lists(
            (0..n)
                .map(|x| self.blocks[self.block_of[x] as usize].clone())
                .collect(),
        )
    }

    /// Lines `block <id>: <names>` using the element names of `interp`.
    pub fn display_with<'a>(&'a self, interp: &'a Interpretation) -> impl fmt::Display + 'a {
        Named(self, interp)
    }
}

struct Named<'a>(&'a Partition, &'a Interpretation);

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.0.blocks.iter().enumerate() {
            write!(f, "block {i}:")?;
            for &x in b {
                write!(f, " {}", self.1.element_name(x as usize))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            write!(f, "block {i}:")?;
            for &x in b {
                write!(f, " {x}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Label key of a node: atoms, plus nominals if `O ∈ phi`, plus self-loop
/// roles if `Self ∈ phi`.
fn econd_key(g: &LabeledGraph, phi: FeatureSet, x: usize) -> (&[u32], &[u32], &[u32]) {
    (
        g.atom_labels(x),
        if phi.nominal() {
            g.nominal_labels(x)
        } else {
            &[]
        },
        if phi.self_loop() {
            g.self_loops(x)
        } else {
            &[]
        },
    )
}

/// Groups nodes that agree on every pointwise condition: concept names,
/// nominals (if `O ∈ phi`) and self-loops (if `Self ∈ phi`).
pub fn econd_partition(phi: FeatureSet, g: &LabeledGraph) -> Partition {
    let keys: Vec<_> = (0..g.num_nodes()).map(|x| econd_key(g, phi, x)).collect();
    Partition::from_labels(&keys)
}

/// The coarsest stable partition refining [`econd_partition`], with the
/// trace of splits that produced it.
pub fn compute_partition(phi: FeatureSet, g: &LabeledGraph) -> (Partition, RefinementTrace) {
    let (p, t) = engine::run(phi, g, true);
    (p, t.expect("trace requested"))
}

/// As [`compute_partition`] without recording a trace.
pub fn compute_partition_untraced(phi: FeatureSet, g: &LabeledGraph) -> Partition {
    engine::run(phi, g, false).0
}
