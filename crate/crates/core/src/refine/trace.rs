//! The log of a refinement run, detailed enough to replay the run and to
//! build concepts characterising every block.

use std::fmt;

use super::Partition;
use crate::interp::BasicRoleId;

/// An initial block with the labels all its elements share. Nominal and
/// self-loop labels are only recorded when the feature set makes them
/// relevant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitBlock {
    pub atoms: Vec<u32>,
    pub nominals: Vec<u32>,
    pub self_loops: Vec<u32>,
    pub elements: Vec<u32>,
}

/// What the elements of a block were split against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitter {
    /// The whole domain.
    Whole,
    /// The constellation `part` (holding one carved block) and the
    /// constellation `rest` it was carved from.
    Part { part: u32, rest: u32 },
}

/// How the elements of one sub-block relate to the splitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SplitKey {
    /// Exact number of successors in the part (counting mode).
    Count(u64),
    /// Whether there is a successor in the part and, when known, whether
    /// there is one in the rest.
    Exists { part: bool, rest: Option<bool> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitGroup {
    pub key: SplitKey,
    pub block: u32,
    pub elements: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    /// Block `block` was taken out of constellation `from` to form the new
    /// constellation `into`.
    Carve { from: u32, block: u32, into: u32 },
    /// Block `block` was split by `role` against `splitter`; the groups
    /// moved to fresh blocks, the remaining elements all have key `stay`.
    Split {
        block: u32,
        role: BasicRoleId,
        splitter: Splitter,
        stay: SplitKey,
        moved: Vec<SplitGroup>,
    },
}

/// Ordered log of a refinement run. Block ids are internal to the run:
/// initial blocks are numbered `0..init.len()` and every moved group gets
/// the next id. Constellation 0 is the whole domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementTrace {
    pub num_nodes: usize,
    pub init: Vec<InitBlock>,
    pub events: Vec<TraceEvent>,
}

impl RefinementTrace {
    /// Internal block id of every node after the whole run.
    pub fn final_labels(&self) -> Vec<u32> {
        let mut label = vec![0u32; self.num_nodes];
        for (i, b) in self.init.iter().enumerate() {
            for &x in &b.elements {
                label[x as usize] = i as u32;
            }
        }
        for ev in &self.events {
            if let TraceEvent::Split { moved, .. } = ev {
                for g in moved {
                    for &x in &g.elements {
                        label[x as usize] = g.block;
                    }
                }
            }
        }
        label
    }

    /// Replays the splits from the initial partition.
    pub fn replay(&self) -> Partition {
        Partition::from_labels(&self.final_labels())
    }

    pub fn num_splits(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, TraceEvent::Split { .. }))
            .count()
    }
}

impl fmt::Display for SplitKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitKey::Count(k) => write!(f, "count={k}"),
            SplitKey::Exists { part, rest } => {
                write!(f, "part={}", u8::from(*part))?;
                if let Some(r) = rest {
                    write!(f, ",rest={}", u8::from(*r))?;
                }
                Ok(())
            }
        }
    }
}

/// One record per line: `init`, `carve` and `split` entries.
impl fmt::Display for RefinementTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |xs: &[u32]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        for (i, b) in self.init.iter().enumerate() {
            writeln!(f, "init {i}: {}", list(&b.elements))?;
        }
        for ev in &self.events {
            match ev {
                TraceEvent::Carve { from, block, into } => writeln!(
                    f,
                    "carve block {block} from constellation {from} into {into}"
                )?,
                TraceEvent::Split {
                    block,
                    role,
                    splitter,
                    stay,
                    moved,
                } => {
                    let inv = if role.inverse { "-" } else { "" };
                    write!(f, "split block {block} by role {}{inv} against ", role.role)?;
                    match splitter {
                        Splitter::Whole => write!(f, "domain")?,
                        Splitter::Part { part, rest } => write!(f, "{part}/{rest}")?,
                    }
                    write!(f, ": stay {stay}")?;
                    for g in moved {
                        write!(f, "; block {} {}: {}", g.block, g.key, list(&g.elements))?;
                    }
                    writeln!(f)?;
                }
            }
        }
        Ok(())
    }
}
