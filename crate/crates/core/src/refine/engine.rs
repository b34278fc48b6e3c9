use std::collections::{HashMap, VecDeque};

use super::trace::{InitBlock, RefinementTrace, SplitGroup, SplitKey, Splitter, TraceEvent};
use super::{econd_key, Partition};
use crate::features::FeatureSet;
use crate::graph::{Adjacency, LabeledGraph};
use crate::interp::BasicRoleId;

const NONE: u32 = u32::MAX;

/// Reverse adjacency of one basic role that remembers, for every incoming
/// edge, its index in the forward adjacency.
struct RoleIndex<'g> {
    id: BasicRoleId,
    succ: &'g Adjacency,
    pred_off: Vec<u32>,
    pred_src: Vec<u32>,
    pred_edge: Vec<u32>,
}

impl<'g> RoleIndex<'g> {
    fn new(g: &'g LabeledGraph, id: BasicRoleId) -> Self {
        let succ = g.successors_adj(id);
        let n = g.num_nodes();
        let mut pred_off = vec![0u32; n + 1];
        for x in 0..n {
            for &y in succ.neighbors(x) {
                pred_off[y as usize + 1] += 1;
            }
        }
        for i in 0..n {
            pred_off[i + 1] += pred_off[i];
        }
        let mut fill = pred_off.clone();
        let m = succ.num_edges();
        let mut pred_src = vec![0u32; m];
        let mut pred_edge = vec![0u32; m];
        for x in 0..n {
            for e in succ.range(x) {
                let y = succ.neighbors(x)[e - succ.range(x).start] as usize;
                let slot = fill[y] as usize;
                pred_src[slot] = x as u32;
                pred_edge[slot] = e as u32;
                fill[y] += 1;
            }
        }
        RoleIndex {
            id,
            succ,
            pred_off,
            pred_src,
            pred_edge,
        }
    }

    fn preds(&self, y: usize) -> std::ops::Range<usize> {
        self.pred_off[y] as usize..self.pred_off[y + 1] as usize
    }
}

struct Engine<'g> {
    counting: bool,
    roles: Vec<RoleIndex<'g>>,
    // Blocks occupy contiguous ranges of `elems`.
    elems: Vec<u32>,
    pos: Vec<u32>,
    block_of: Vec<u32>,
    bstart: Vec<u32>,
    bend: Vec<u32>,
    bcons: Vec<u32>,
    // Constellations.
    cblocks: Vec<VecDeque<u32>>,
    queued: Vec<bool>,
    queue: VecDeque<u32>,
    // Edge counters per (element, constellation, role), non-counting mode.
    rec: Vec<Vec<u32>>,
    cnt: Vec<u32>,
    new_of: Vec<u32>,
    // Scratch for one split round.
    stamp: u32,
    mark: Vec<u32>,
    key: Vec<u64>,
    old_rec: Vec<u32>,
    tnodes: Vec<Vec<u32>>,
    tblocks: Vec<u32>,
    trace: Option<RefinementTrace>,
}

pub(super) fn run(
    phi: FeatureSet,
    g: &LabeledGraph,
    want_trace: bool,
) -> (Partition, Option<RefinementTrace>) {
    let mut e = Engine::new(phi, g, want_trace);
    e.pre_split();
    e.refine();
    let p = Partition::from_labels(&e.block_of);
    (p, e.trace)
}

impl<'g> Engine<'g> {
    fn new(phi: FeatureSet, g: &'g LabeledGraph, want_trace: bool) -> Self {
        let n = g.num_nodes();
        let mut ids = HashMap::new();
        let mut block_of = Vec::with_capacity(n);
        let mut init: Vec<InitBlock> = Vec::new();
        for x in 0..n {
            let k = econd_key(g, phi, x);
            let next = ids.len() as u32;
            let id = *ids.entry(k).or_insert(next);
            if id as usize == init.len() {
                init.push(InitBlock {
                    atoms: k.0.to_vec(),
                    nominals: k.1.to_vec(),
                    self_loops: k.2.to_vec(),
                    elements: Vec::new(),
                });
            }
            init[id as usize].elements.push(x as u32);
            block_of.push(id);
        }
        let nb = init.len();
        let mut elems = Vec::with_capacity(n);
        let mut bstart = Vec::with_capacity(nb);
        let mut bend = Vec::with_capacity(nb);
        for b in &init {
            bstart.push(elems.len() as u32);
            elems.extend_from_slice(&b.elements);
            bend.push(elems.len() as u32);
        }
        let mut pos = vec![0u32; n];
        for (i, &x) in elems.iter().enumerate() {
            pos[x as usize] = i as u32;
        }
        let roles: Vec<RoleIndex> = g
            .basic_roles(phi)
            .into_iter()
            .map(|b| RoleIndex::new(g, b))
            .collect();
        let mut e = Engine {
            counting: phi.counting(),
            roles,
            elems,
            pos,
            block_of,
            bstart,
            bend,
            bcons: vec![0; nb],
            cblocks: vec![(0..nb as u32).collect()],
            queued: vec![false],
            queue: VecDeque::new(),
            rec: Vec::new(),
            cnt: Vec::new(),
            new_of: Vec::new(),
            stamp: 0,
            mark: vec![0; n],
            key: vec![0; n],
            old_rec: vec![NONE; n],
            tnodes: vec![Vec::new(); nb],
            tblocks: Vec::new(),
            trace: want_trace.then(|| RefinementTrace {
                num_nodes: n,
                init,
                events: Vec::new(),
            }),
        };
        e.enqueue(0);
        e
    }

    fn enqueue(&mut self, c: u32) {
        if self.cblocks[c as usize].len() >= 2 && !self.queued[c as usize] {
            self.queued[c as usize] = true;
            self.queue.push_back(c);
        }
    }

    fn size(&self, b: u32) -> u32 {
        self.bend[b as usize] - self.bstart[b as usize]
    }

    fn touch(&mut self, x: usize) {
        if self.mark[x] != self.stamp {
            self.mark[x] = self.stamp;
            self.key[x] = 0;
            let b = self.block_of[x] as usize;
            if self.tnodes[b].is_empty() {
                self.tblocks.push(b as u32);
            }
            self.tnodes[b].push(x as u32);
        }
    }

    /// Splits every block by whether (or how often) its elements reach the
    /// domain at all, so that the partition is stable with respect to the
    /// single initial constellation. Also sets up the edge counters.
    fn pre_split(&mut self) {
        for ri in 0..self.roles.len() {
            self.stamp += 1;
            for x in 0..self.mark.len() {
                let deg = self.roles[ri].succ.neighbors(x).len() as u64;
                if deg > 0 {
                    self.touch(x);
                    self.key[x] = if self.counting { deg } else { 0 };
                }
            }
            self.split(ri, Splitter::Whole);
        }
        if !self.counting {
            for ri in 0..self.roles.len() {
                let succ = self.roles[ri].succ;
                let mut rec = vec![0u32; succ.num_edges()];
                for x in 0..succ.num_nodes() {
                    let range = succ.range(x);
                    if range.is_empty() {
                        continue;
                    }
                    let id = self.cnt.len() as u32;
                    self.cnt.push(range.len() as u32);
                    self.new_of.push(NONE);
                    for e in range {
                        rec[e] = id;
                    }
                }
                self.rec.push(rec);
            }
        }
    }

    fn refine(&mut self) {
        while let Some(c) = self.queue.pop_front() {
            self.queued[c as usize] = false;
            let blocks = &self.cblocks[c as usize];
            if blocks.len() < 2 {
                continue;
            }
            let (b1, b2) = (blocks[0], blocks[1]);
            let (s1, s2) = (self.size(b1), self.size(b2));
            let (b, idx) = if s2 < s1 || (s2 == s1 && b2 < b1) {
                (b2, 1)
            } else {
                (b1, 0)
            };
            self.cblocks[c as usize].remove(idx);
            let into = self.cblocks.len() as u32;
            self.cblocks.push(VecDeque::from([b]));
            self.queued.push(false);
            self.bcons[b as usize] = into;
            self.enqueue(c);
            if let Some(t) = &mut self.trace {
                t.events.push(TraceEvent::Carve {
                    from: c,
                    block: b,
                    into,
                });
            }
            let members: Vec<u32> = self.elems
                [self.bstart[b as usize] as usize..self.bend[b as usize] as usize]
                .to_vec();
            for ri in 0..self.roles.len() {
                self.stamp += 1;
                if self.counting {
                    self.scan_counting(ri, &members);
                } else {
                    self.scan_exists(ri, &members);
                }
                self.split(
                    ri,
                    Splitter::Part {
                        part: into,
                        rest: c,
                    },
                );
            }
        }
    }

    fn scan_counting(&mut self, ri: usize, members: &[u32]) {
        for &y in members {
            for k in self.roles[ri].preds(y as usize) {
                let x = self.roles[ri].pred_src[k] as usize;
                self.touch(x);
                self.key[x] += 1;
            }
        }
    }

    /// Moves the counters of edges into the carved block to fresh records;
    /// afterwards the key of a touched element says whether it still has an
    /// edge into the rest of the old constellation.
    fn scan_exists(&mut self, ri: usize, members: &[u32]) {
        let mut dirty = Vec::new();
        for &y in members {
            for k in self.roles[ri].preds(y as usize) {
                let x = self.roles[ri].pred_src[k] as usize;
                let e = self.roles[ri].pred_edge[k] as usize;
                let old = self.rec[ri][e];
                if self.mark[x] != self.stamp {
                    self.touch(x);
                    self.old_rec[x] = old;
                }
                let mut fresh = self.new_of[old as usize];
                if fresh == NONE {
                    fresh = self.cnt.len() as u32;
                    self.cnt.push(0);
                    self.new_of.push(NONE);
                    self.new_of[old as usize] = fresh;
                    dirty.push(old);
                }
                self.rec[ri][e] = fresh;
                self.cnt[fresh as usize] += 1;
                self.cnt[old as usize] -= 1;
            }
        }
        for &b in &self.tblocks {
            for &x in &self.tnodes[b as usize] {
                self.key[x as usize] = u64::from(self.cnt[self.old_rec[x as usize] as usize] > 0);
            }
        }
        for o in dirty {
            self.new_of[o as usize] = NONE;
        }
    }

    fn decode(&self, key: u64, touched: bool, splitter: Splitter) -> SplitKey {
        if self.counting {
            SplitKey::Count(if touched { key } else { 0 })
        } else if !touched {
            SplitKey::Exists {
                part: false,
                rest: None,
            }
        } else {
            SplitKey::Exists {
                part: true,
                rest: match splitter {
                    Splitter::Whole => None,
                    Splitter::Part { .. } => Some(key == 1),
                },
            }
        }
    }

    /// Splits every touched block by key. Untouched elements stay in the
    /// old block; if there are none, the group with the smallest key stays.
    fn split(&mut self, ri: usize, splitter: Splitter) {
        let tblocks = std::mem::take(&mut self.tblocks);
        for &x_block in &tblocks {
            let xb = x_block as usize;
            let mut touched = std::mem::take(&mut self.tnodes[xb]);
            let key = &self.key;
            touched.sort_by_key(|&x| key[x as usize]);
            let untouched = self.size(x_block) as usize - touched.len();
            let mut groups: Vec<&[u32]> = Vec::new();
            let mut start = 0;
            for i in 1..=touched.len() {
                if i == touched.len()
                    || self.key[touched[i] as usize] != self.key[touched[start] as usize]
                {
                    groups.push(&touched[start..i]);
                    start = i;
                }
            }
            if untouched == 0 && groups.len() <= 1 {
                continue;
            }
            let (stay, to_move) = if untouched > 0 {
                (self.decode(0, false, splitter), &groups[..])
            } else {
                let k = self.key[groups[0][0] as usize];
                (self.decode(k, true, splitter), &groups[1..])
            };
            let mut moved = Vec::with_capacity(to_move.len());
            for group in to_move {
                let nb = self.bstart.len() as u32;
                let old_end = self.bend[xb];
                for &x in group.iter() {
                    let p = self.pos[x as usize];
                    let last = self.bend[xb] - 1;
                    let z = self.elems[last as usize];
                    self.elems[p as usize] = z;
                    self.pos[z as usize] = p;
                    self.elems[last as usize] = x;
                    self.pos[x as usize] = last;
                    self.bend[xb] = last;
                    self.block_of[x as usize] = nb;
                }
                self.bstart.push(self.bend[xb]);
                self.bend.push(old_end);
                let c = self.bcons[xb];
                self.bcons.push(c);
                self.cblocks[c as usize].push_back(nb);
                self.tnodes.push(Vec::new());
                self.enqueue(c);
                if self.trace.is_some() {
                    let mut elements = group.to_vec();
                    elements.sort_unstable();
                    moved.push(SplitGroup {
                        key: self.decode(self.key[group[0] as usize], true, splitter),
                        block: nb,
                        elements,
                    });
                }
            }
            if let Some(t) = &mut self.trace {
                t.events.push(TraceEvent::Split {
                    block: x_block,
                    role: self.roles[ri].id,
                    splitter,
                    stay,
                    moved,
                });
            }
        }
        self.tblocks = tblocks;
        self.tblocks.clear();
    }
}
