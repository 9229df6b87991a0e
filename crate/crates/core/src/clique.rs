//! Branch-and-bound clique search over small graphs stored as bitset rows.

use fixedbitset::FixedBitSet;

/// Size of a maximum clique of `adj` using only vertices from `candidates`.
pub(crate) fn max_clique_size(adj: &[FixedBitSet], candidates: &FixedBitSet) -> usize {
    let mut best = 0;
    expand(adj, 0, candidates.clone(), &mut best, usize::MAX);
    best
}

/// Whether `adj` restricted to `candidates` has a clique with at least `size` vertices.
pub(crate) fn has_clique(adj: &[FixedBitSet], candidates: &FixedBitSet, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    let mut best = 0;
    expand(adj, 0, candidates.clone(), &mut best, size);
    best >= size
}

fn expand(adj: &[FixedBitSet], depth: usize, mut cand: FixedBitSet, best: &mut usize, stop: usize) {
    if *best >= stop {
        return;
    }
    let remaining = cand.count_ones(..);
    if remaining == 0 {
        *best = (*best).max(depth);
        return;
    }
    if depth + remaining <= *best {
        return;
    }
    let order: Vec<usize> = cand.ones().collect();
    for v in order {
        if depth + cand.count_ones(..) <= *best || *best >= stop {
            return;
        }
        let mut next = cand.clone();
        next.intersect_with(&adj[v]);
        expand(adj, depth + 1, next, best, stop);
        cand.set(v, false);
    }
}
