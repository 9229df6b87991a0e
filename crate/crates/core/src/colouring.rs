//! The rank-driven two-colouring of hyperplanes and its measured control.
//!
//! `h` is coloured 1 exactly when every predecessor of maximal rank vector
//! is coloured 0 (vacuously so when `h` has no predecessors). Monochromatic
//! inward geodesics are then bounded in length by `3^(f-1) · D`.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::complex::{CubeComplex, HyperplaneId, Vertex};
use crate::error::{Error, Result};
use crate::rank::RankVectors;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Colouring {
    colours: Vec<u8>,
    /// Longest monochromatic inward geodesic, in edges.
    control: usize,
}

impl Colouring {
    /// Wraps an arbitrary 0/1 labelling, measuring its control value.
    pub fn from_colours(x: &CubeComplex, colours: Vec<u8>) -> Self {
        assert_eq!(colours.len(), x.hyperplane_count());
        assert!(colours.iter().all(|&c| c <= 1), "colours must be 0 or 1");
        let control = max_mono_inward(x, &colours);
        Colouring { colours, control }
    }

    pub fn colour(&self, h: HyperplaneId) -> u8 {
        self.colours[h]
    }

    pub fn colours(&self) -> &[u8] {
        &self.colours
    }

    pub fn control(&self) -> usize {
        self.control
    }

    /// Hyperplanes coloured 0, in increasing id order.
    pub fn zero_coloured(&self) -> Vec<HyperplaneId> {
        (0..self.colours.len()).filter(|&h| self.colours[h] == 0).collect()
    }
}

/// Colours hyperplanes along a linear extension of `<`.
pub fn colour(x: &CubeComplex, ranks: &RankVectors) -> Colouring {
    colour_along(x, ranks, &x.linear_extension())
}

/// Same rule, evaluated along a caller-supplied linear extension.
pub fn colour_along(x: &CubeComplex, ranks: &RankVectors, order: &[HyperplaneId]) -> Colouring {
    let mut colours: Vec<Option<u8>> = vec![None; x.hyperplane_count()];
    for &h in order {
        let preds = x.predecessors(h);
        let top = preds.iter().map(|&k| ranks.get(k)).max();
        let all_zero = preds
            .iter()
            .filter(|&&k| Some(ranks.get(k)) == top)
            .all(|&k| colours[k].expect("order is not a linear extension") == 0);
        colours[h] = Some(u8::from(all_zero));
    }
    let colours = colours.into_iter().map(|c| c.expect("order misses a hyperplane")).collect();
    Colouring::from_colours(x, colours)
}

/// Longest monochromatic inward path, maximised over both colours.
pub fn max_mono_inward(x: &CubeComplex, colours: &[u8]) -> usize {
    let mut best = 0;
    for chi in 0..=1u8 {
        let mut longest = vec![0usize; x.vertex_count()];
        for (i, v) in x.vertices().iter().enumerate() {
            let mut here = 0;
            for h in x.adjacent_inward_set(v) {
                if colours[h] == chi {
                    let j = x.vertex_index(&v.with_toggled(h)).expect("inward neighbour");
                    here = here.max(longest[j] + 1);
                }
            }
            longest[i] = here;
            best = best.max(here);
        }
    }
    best
}

/// Minimum chain cover of the hyperplanes separating `x` and `y`, ordered
/// by nesting as seen from `x`.
pub fn chain_partition(x: &CubeComplex, from: &Vertex, to: &Vertex) -> Vec<Vec<HyperplaneId>> {
    let separating = from.symmetric_difference(to);
    let n = separating.len();
    let start = x.vertex_index(from).expect("from is a vertex");
    let far_sides: Vec<FixedBitSet> = separating
        .iter()
        .map(|&h| {
            let mut side = x.positive_side(h).clone();
            if side.contains(start) {
                side.toggle_range(..);
            }
            side
        })
        .collect();
    // h precedes k when k's far side sits strictly inside h's.
    let precedes = |i: usize, j: usize| i != j && far_sides[j].is_subset(&far_sides[i]);
    let succ: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| precedes(i, j)).collect()).collect();

    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut match_left: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let mut visited = vec![false; n];
        augment(i, &succ, &mut visited, &mut match_left, &mut match_right);
    }

    let mut chains: Vec<Vec<HyperplaneId>> = Vec::new();
    for i in 0..n {
        if match_right[i].is_some() {
            continue;
        }
        let mut chain = vec![separating[i]];
        let mut cur = i;
        while let Some(next) = match_left[cur] {
            chain.push(separating[next]);
            cur = next;
        }
        chains.push(chain);
    }
    chains.sort();
    chains
}

fn augment(
    i: usize,
    succ: &[Vec<usize>],
    visited: &mut [bool],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
) -> bool {
    for &j in &succ[i] {
        if visited[j] {
            continue;
        }
        visited[j] = true;
        let free = match match_right[j] {
            None => true,
            Some(owner) => augment(owner, succ, visited, match_left, match_right),
        };
        if free {
            match_left[i] = Some(j);
            match_right[j] = Some(i);
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundnessAudit {
    pub is_geodesic: bool,
    pub is_inward: bool,
    pub is_monochromatic: bool,
    pub is_bound: bool,
    pub is_totally_bound: bool,
}

/// Checks a vertex path against the inward corners `∩ k⁻` of its crossed
/// hyperplanes, in `X` and in every rank-vector class quotient.
pub fn boundness_audit(
    x: &CubeComplex,
    colouring: &Colouring,
    ranks: &RankVectors,
    path: &[Vertex],
) -> Result<BoundnessAudit> {
    let mut crossed = Vec::new();
    let mut is_inward = true;
    for w in path.windows(2) {
        let diff = w[0].symmetric_difference(&w[1]);
        if diff.len() != 1 {
            return Err(Error::NotAPath(w[0].clone(), w[1].clone()));
        }
        is_inward &= w[0].contains(diff[0]);
        crossed.push(diff[0]);
    }
    let mut distinct = crossed.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let is_geodesic = distinct.len() == crossed.len();
    let is_monochromatic = crossed.windows(2).all(|w| colouring.colour(w[0]) == colouring.colour(w[1]));

    let everything: Vec<HyperplaneId> = x.hyperplanes().collect();
    let is_bound = bound_within(x, &everything, &distinct, path);
    let mut is_totally_bound = is_bound;
    for len in 1..=ranks.width() {
        for prefix in ranks.prefixes(len) {
            if !is_totally_bound {
                break;
            }
            is_totally_bound = bound_within(x, &ranks.class(&prefix), &distinct, path);
        }
    }
    Ok(BoundnessAudit { is_geodesic, is_inward, is_monochromatic, is_bound, is_totally_bound })
}

/// Predecessors of `h` in the quotient on `class`.
pub fn class_predecessors(x: &CubeComplex, class: &[HyperplaneId], h: HyperplaneId) -> Vec<HyperplaneId> {
    let lower: Vec<HyperplaneId> = class.iter().copied().filter(|&k| x.is_less(k, h)).collect();
    lower
        .iter()
        .copied()
        .filter(|&k| !lower.iter().any(|&j| x.is_less(k, j)))
        .collect()
}

fn bound_within(x: &CubeComplex, class: &[HyperplaneId], crossed: &[HyperplaneId], path: &[Vertex]) -> bool {
    crossed.iter().filter(|h| class.contains(h)).all(|&h| {
        let preds = class_predecessors(x, class, h);
        preds.len() < 2 || path.iter().all(|v| preds.iter().any(|&k| v.contains(k)))
    })
}

/// Largest number of distinct rank vectors on a chain (under `<`) inside
/// `hyperplanes`. Counts strict increases along chains, which equals the
/// number of distinct values wherever rank vectors are monotone.
pub fn max_chain_rank_values(x: &CubeComplex, ranks: &RankVectors, hyperplanes: &[HyperplaneId]) -> usize {
    let mut members = hyperplanes.to_vec();
    members.sort_by_key(|&h| (x.below(h).count_ones(..), h));
    let mut best = vec![0usize; members.len()];
    for i in 0..members.len() {
        let h = members[i];
        best[i] = 1;
        for j in 0..i {
            let k = members[j];
            if x.is_less(k, h) {
                let step = usize::from(ranks.get(k) != ranks.get(h));
                best[i] = best[i].max(best[j] + step);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// Every monochromatic inward geodesic with at least one edge, as vertex
/// sequences. Stops after `cap` paths.
pub fn monochromatic_inward_paths(x: &CubeComplex, colouring: &Colouring, cap: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for start in x.vertices() {
        for chi in 0..=1u8 {
            let mut stack = vec![start.clone()];
            extend_paths(x, colouring, chi, &mut stack, &mut out, cap);
            if out.len() >= cap {
                return out;
            }
        }
    }
    out
}

fn extend_paths(
    x: &CubeComplex,
    colouring: &Colouring,
    chi: u8,
    stack: &mut Vec<Vertex>,
    out: &mut Vec<Vec<Vertex>>,
    cap: usize,
) {
    let last = stack.last().expect("non-empty").clone();
    for h in x.adjacent_inward_set(&last) {
        if out.len() >= cap {
            return;
        }
        if colouring.colour(h) != chi {
            continue;
        }
        stack.push(last.with_toggled(h));
        out.push(stack.clone());
        extend_paths(x, colouring, chi, stack, out, cap);
        stack.pop();
    }
}
