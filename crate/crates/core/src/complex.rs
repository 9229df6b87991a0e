//! Finite cube complexes encoded by the halfspace sets of their vertices.
//!
//! A vertex `x` is stored as the set `F_x` of hyperplanes separating it from
//! the basepoint, so the basepoint is the empty set. Hyperplane `h` then has
//! positive side `V_h = {x : h ∈ F_x}` and every relation between two
//! hyperplanes is read off from the four quadrants of their positive sides.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::clique;
use crate::error::{Error, Result};

pub type HyperplaneId = usize;

/// A vertex, as the set of hyperplanes separating it from the basepoint.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vertex(FixedBitSet);

impl Vertex {
    pub fn empty(hyperplanes: usize) -> Self {
        Vertex(FixedBitSet::with_capacity(hyperplanes))
    }

    /// Panics if an id is not below `hyperplanes`.
    pub fn from_ids<I: IntoIterator<Item = HyperplaneId>>(hyperplanes: usize, ids: I) -> Self {
        let mut bits = FixedBitSet::with_capacity(hyperplanes);
        for id in ids {
            bits.insert(id);
        }
        Vertex(bits)
    }

    pub(crate) fn from_bits(bits: FixedBitSet) -> Self {
        Vertex(bits)
    }

    pub fn ids(&self) -> impl Iterator<Item = HyperplaneId> + '_ {
        self.0.ones()
    }

    pub fn to_vec(&self) -> Vec<HyperplaneId> {
        self.0.ones().collect()
    }

    pub fn contains(&self, h: HyperplaneId) -> bool {
        self.0.contains(h)
    }

    /// Number of separating hyperplanes, i.e. the distance to the basepoint.
    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    /// Capacity of the ambient hyperplane set.
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn with_toggled(&self, h: HyperplaneId) -> Self {
        let mut bits = self.0.clone();
        bits.toggle(h);
        Vertex(bits)
    }

    /// Ids in exactly one of the two sets, ascending.
    pub fn symmetric_difference(&self, other: &Vertex) -> Vec<HyperplaneId> {
        let mut ids: Vec<HyperplaneId> = self.0.symmetric_difference(&other.0).collect();
        ids.sort_unstable();
        ids
    }

    /// Coordinatewise majority of three halfspace sets.
    pub fn majority(x: &Vertex, y: &Vertex, z: &Vertex) -> Vertex {
        let mut xy = x.0.clone();
        xy.intersect_with(&y.0);
        let mut yz = y.0.clone();
        yz.intersect_with(&z.0);
        let mut zx = z.0.clone();
        zx.intersect_with(&x.0);
        xy.union_with(&yz);
        xy.union_with(&zx);
        Vertex(xy)
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.ones().cmp(other.0.ones()))
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, h) in self.0.ones().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.ones())
    }
}

/// How two distinct hyperplanes `h`, `k` sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    Crosses,
    /// `h < k`: `h` separates the basepoint from `k`.
    Less,
    /// `k < h`.
    Greater,
    /// The positive sides are disjoint.
    Opposite,
}

impl Relation {
    pub fn flip(self) -> Relation {
        match self {
            Relation::Less => Relation::Greater,
            Relation::Greater => Relation::Less,
            r => r,
        }
    }
}

/// A validated finite cube complex. Immutable once built.
#[derive(Clone)]
pub struct CubeComplex {
    hyperplanes: usize,
    vertices: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    positive: Vec<FixedBitSet>,
    relations: Vec<Relation>,
    below: Vec<FixedBitSet>,
    crossing: Vec<FixedBitSet>,
    opposite: Vec<FixedBitSet>,
    predecessors: Vec<Vec<HyperplaneId>>,
    pair_lengths: Vec<u32>,
    dimension: usize,
}

impl fmt::Debug for CubeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CubeComplex")
            .field("hyperplanes", &self.hyperplanes)
            .field("vertices", &self.vertices)
            .finish()
    }
}

impl CubeComplex {
    /// Builds and validates a complex from the halfspace sets of its vertices.
    pub fn new<I, S>(hyperplanes: usize, vertex_sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = HyperplaneId>,
    {
        let mut vertices = Vec::new();
        for set in vertex_sets {
            let mut bits = FixedBitSet::with_capacity(hyperplanes);
            for id in set {
                if id >= hyperplanes {
                    return Err(Error::IdOutOfRange { id, count: hyperplanes });
                }
                bits.insert(id);
            }
            vertices.push(Vertex(bits));
        }
        Self::from_vertices(hyperplanes, vertices)
    }

    pub fn from_vertices(hyperplanes: usize, mut vertices: Vec<Vertex>) -> Result<Self> {
        for v in &mut vertices {
            if let Some(id) = v.0.ones().find(|&id| id >= hyperplanes) {
                return Err(Error::IdOutOfRange { id, count: hyperplanes });
            }
            if v.0.len() != hyperplanes {
                *v = Vertex::from_ids(hyperplanes, v.0.ones());
            }
        }
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0].clone()));
        }
        if vertices.first().is_none_or(|v| !v.is_empty()) {
            return Err(Error::MissingBasepoint);
        }
        let index: HashMap<Vertex, usize> =
            vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();

        let nv = vertices.len();
        let mut positive = vec![FixedBitSet::with_capacity(nv); hyperplanes];
        for (i, v) in vertices.iter().enumerate() {
            for h in v.0.ones() {
                positive[h].insert(i);
            }
        }
        for (h, side) in positive.iter().enumerate() {
            let count = side.count_ones(..);
            if count == 0 || count == nv {
                return Err(Error::ImproperHyperplane(h));
            }
        }

        check_median_closed(&vertices, &index)?;
        check_connected(&vertices, &index)?;

        let mut relations = vec![Relation::Crosses; hyperplanes * hyperplanes];
        let mut below = vec![FixedBitSet::with_capacity(hyperplanes); hyperplanes];
        let mut crossing = vec![FixedBitSet::with_capacity(hyperplanes); hyperplanes];
        let mut opposite = vec![FixedBitSet::with_capacity(hyperplanes); hyperplanes];
        for h in 0..hyperplanes {
            for k in h + 1..hyperplanes {
                let r = classify_pair(&positive[h], &positive[k]);
                relations[h * hyperplanes + k] = r;
                relations[k * hyperplanes + h] = r.flip();
                match r {
                    Relation::Crosses => {
                        crossing[h].insert(k);
                        crossing[k].insert(h);
                    }
                    Relation::Opposite => {
                        opposite[h].insert(k);
                        opposite[k].insert(h);
                    }
                    Relation::Less => below[k].insert(h),
                    Relation::Greater => below[h].insert(k),
                }
            }
        }

        let predecessors: Vec<Vec<HyperplaneId>> = (0..hyperplanes)
            .map(|h| {
                below[h]
                    .ones()
                    .filter(|&k| !below[h].ones().any(|j| below[j].contains(k)))
                    .collect()
            })
            .collect();

        let pair_lengths = chain_lengths(hyperplanes, &below, &predecessors);

        let mut all = FixedBitSet::with_capacity(hyperplanes);
        all.insert_range(..);
        let dimension = clique::max_clique_size(&crossing, &all);

        Ok(CubeComplex {
            hyperplanes,
            vertices,
            index,
            positive,
            relations,
            below,
            crossing,
            opposite,
            predecessors,
            pair_lengths,
            dimension,
        })
    }

    pub fn hyperplane_count(&self) -> usize {
        self.hyperplanes
    }

    pub fn hyperplanes(&self) -> std::ops::Range<HyperplaneId> {
        0..self.hyperplanes
    }

    /// Vertices ordered by distance to the basepoint, then lexicographically.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, x: &Vertex) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &Vertex) -> bool {
        self.index.contains_key(x)
    }

    pub fn basepoint(&self) -> &Vertex {
        &self.vertices[0]
    }

    /// Builds a vertex of this complex from ids, checking membership.
    pub fn vertex(&self, ids: &[HyperplaneId]) -> Result<Vertex> {
        if let Some(&id) = ids.iter().find(|&&id| id >= self.hyperplanes) {
            return Err(Error::IdOutOfRange { id, count: self.hyperplanes });
        }
        let v = Vertex::from_ids(self.hyperplanes, ids.iter().copied());
        if self.contains(&v) {
            Ok(v)
        } else {
            Err(Error::NotAVertex(v))
        }
    }

    /// Indices of the vertices on the positive side of `h`.
    pub(crate) fn positive_side(&self, h: HyperplaneId) -> &FixedBitSet {
        &self.positive[h]
    }

    /// Relation of `h` to `k`; panics when `h == k`.
    pub fn relation(&self, h: HyperplaneId, k: HyperplaneId) -> Relation {
        assert_ne!(h, k, "relation of a hyperplane with itself");
        self.relations[h * self.hyperplanes + k]
    }

    /// `h < k`.
    pub fn is_less(&self, h: HyperplaneId, k: HyperplaneId) -> bool {
        self.below[k].contains(h)
    }

    /// All `k` with `k < h`.
    pub fn below(&self, h: HyperplaneId) -> &FixedBitSet {
        &self.below[h]
    }

    pub(crate) fn crossing_rows(&self) -> &[FixedBitSet] {
        &self.crossing
    }

    pub fn crossing(&self, h: HyperplaneId) -> &FixedBitSet {
        &self.crossing[h]
    }

    pub fn opposite(&self, h: HyperplaneId) -> &FixedBitSet {
        &self.opposite[h]
    }

    pub fn distance(&self, x: &Vertex, y: &Vertex) -> usize {
        x.0.symmetric_difference(&y.0).count()
    }

    pub fn median(&self, x: &Vertex, y: &Vertex, z: &Vertex) -> Vertex {
        Vertex::majority(x, y, z)
    }

    /// Vertices `v` with `F_x ∩ F_y ⊆ F_v ⊆ F_x ∪ F_y`.
    pub fn interval(&self, x: &Vertex, y: &Vertex) -> Vec<Vertex> {
        let mut lo = x.0.clone();
        lo.intersect_with(&y.0);
        let mut hi = x.0.clone();
        hi.union_with(&y.0);
        self.vertices
            .iter()
            .filter(|v| lo.is_subset(&v.0) && v.0.is_subset(&hi))
            .cloned()
            .collect()
    }

    /// Hyperplanes adjacent to `x` that separate it from the basepoint.
    pub fn adjacent_inward_set(&self, x: &Vertex) -> Vec<HyperplaneId> {
        x.ids().filter(|&h| self.contains(&x.with_toggled(h))).collect()
    }

    /// The vertex of `V_h` nearest the basepoint, and its neighbour across `h`.
    pub fn gate_vertex(&self, h: HyperplaneId) -> Result<(Vertex, Vertex)> {
        let mut best: Option<(usize, usize)> = None;
        let mut tied = false;
        for i in self.positive[h].ones() {
            let size = self.vertices[i].len();
            match best {
                None => best = Some((size, i)),
                Some((s, _)) if size < s => {
                    best = Some((size, i));
                    tied = false;
                }
                Some((s, _)) if size == s => tied = true,
                _ => {}
            }
        }
        let (_, i) = best.ok_or(Error::ImproperHyperplane(h))?;
        if tied {
            return Err(Error::AmbiguousGate(h));
        }
        let x = self.vertices[i].clone();
        let y = x.with_toggled(h);
        Ok((x, y))
    }

    /// Hyperplanes `k < h` with nothing strictly between.
    pub fn predecessors(&self, h: HyperplaneId) -> &[HyperplaneId] {
        &self.predecessors[h]
    }

    /// Length of the longest chain `h = h_0 < … < h_l = k`, zero unless `h < k`.
    pub fn pair_length(&self, h: HyperplaneId, k: HyperplaneId) -> usize {
        self.pair_lengths[h * self.hyperplanes + k] as usize
    }

    /// Maximum number of pairwise crossing hyperplanes.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> usize {
        let mut best = 0;
        for (i, x) in self.vertices.iter().enumerate() {
            for y in &self.vertices[i + 1..] {
                best = best.max(self.distance(x, y));
            }
        }
        best
    }

    /// Hyperplanes in an order compatible with `<`.
    pub fn linear_extension(&self) -> Vec<HyperplaneId> {
        let mut order: Vec<HyperplaneId> = self.hyperplanes().collect();
        order.sort_by_key(|&h| (self.below[h].count_ones(..), h));
        order
    }
}

fn classify_pair(vh: &FixedBitSet, vk: &FixedBitSet) -> Relation {
    let both = vh.intersection(vk).next().is_some();
    let h_only = vh.difference(vk).next().is_some();
    let k_only = vk.difference(vh).next().is_some();
    let empty = [!both, !h_only, !k_only].iter().filter(|&&e| e).count();
    // The quadrant outside both positive sides always holds the basepoint.
    assert!(empty <= 1, "hyperplane pair violates the four-way classification");
    if !both {
        Relation::Opposite
    } else if !k_only {
        Relation::Less
    } else if !h_only {
        Relation::Greater
    } else {
        Relation::Crosses
    }
}

fn check_median_closed(vertices: &[Vertex], index: &HashMap<Vertex, usize>) -> Result<()> {
    for (i, x) in vertices.iter().enumerate() {
        for (j, y) in vertices.iter().enumerate().skip(i + 1) {
            for z in &vertices[j + 1..] {
                let m = Vertex::majority(x, y, z);
                if !index.contains_key(&m) {
                    return Err(Error::NotMedianClosed { x: x.clone(), y: y.clone(), z: z.clone() });
                }
            }
        }
    }
    Ok(())
}

fn check_connected(vertices: &[Vertex], index: &HashMap<Vertex, usize>) -> Result<()> {
    let n = vertices.first().map_or(0, |v| v.universe());
    let mut seen = vec![false; vertices.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(i) = queue.pop_front() {
        for h in 0..n {
            if let Some(&j) = index.get(&vertices[i].with_toggled(h)) {
                if !seen[j] {
                    seen[j] = true;
                    reached += 1;
                    queue.push_back(j);
                }
            }
        }
    }
    if reached == vertices.len() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// Longest-chain lengths for every pair `h < k`, by dynamic programming over
/// the predecessor relation.
fn chain_lengths(n: usize, below: &[FixedBitSet], preds: &[Vec<HyperplaneId>]) -> Vec<u32> {
    let mut order: Vec<HyperplaneId> = (0..n).collect();
    order.sort_by_key(|&h| below[h].count_ones(..));
    let mut len = vec![0u32; n * n];
    for &k in &order {
        for h in below[k].ones() {
            let best = preds[k]
                .iter()
                .filter(|&&p| p == h || below[p].contains(h))
                .map(|&p| if p == h { 1 } else { len[h * n + p] + 1 })
                .max()
                .unwrap_or(1);
            len[h * n + k] = best;
        }
    }
    len
}
