//! Corners, d-ranks, rank vectors and flatness.
//!
//! A hyperplane lies in the `d`-corner bounded by `h_1, …, h_d` when the
//! `h_i` pairwise cross and each `h_i < h`. Relations inside a hyperplane
//! subset are restrictions of the ambient relation table, so quotient
//! complexes never need to be built here.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::clique;
use crate::complex::{CubeComplex, HyperplaneId};
use crate::error::{Error, Result};

/// `(n_D, n_{D-1}, …, n_2)`, compared lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct RankVector(pub Vec<usize>);

impl RankVector {
    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// The first `len` entries, naming a class of the nested partition.
    pub fn prefix(&self, len: usize) -> &[usize] {
        &self.0[..len]
    }
}

impl fmt::Display for RankVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

/// Rank vector of every hyperplane, indexed by id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct RankVectors(Vec<RankVector>);

impl RankVectors {
    pub fn get(&self, h: HyperplaneId) -> &RankVector {
        &self.0[h]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &RankVector> {
        self.0.iter()
    }

    /// Length of every vector: `max(D, 2) - 1` entries, none when `D <= 1`.
    pub fn width(&self) -> usize {
        self.0.first().map_or(0, |v| v.0.len())
    }

    /// Members of the class whose vectors start with `prefix`.
    pub fn class(&self, prefix: &[usize]) -> Vec<HyperplaneId> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, v)| v.0.starts_with(prefix))
            .map(|(h, _)| h)
            .collect()
    }

    /// Distinct prefixes of length `len`, in increasing order.
    pub fn prefixes(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.0.iter().map(|v| v.0[..len].to_vec()).collect();
        out.sort();
        out.dedup();
        out
    }
}

fn subset_bits(x: &CubeComplex, subset: &[HyperplaneId]) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(x.hyperplane_count());
    for &h in subset {
        bits.insert(h);
    }
    bits
}

fn corner_candidates(x: &CubeComplex, h: HyperplaneId, subset: &FixedBitSet) -> FixedBitSet {
    let mut cand = x.below(h).clone();
    cand.intersect_with(subset);
    cand
}

/// Whether some `d` pairwise crossing members of `subset` all lie below `h`.
pub fn in_d_corner(x: &CubeComplex, h: HyperplaneId, d: usize, subset: &[HyperplaneId]) -> bool {
    in_corner_bits(x, h, d, &subset_bits(x, subset))
}

fn in_corner_bits(x: &CubeComplex, h: HyperplaneId, d: usize, subset: &FixedBitSet) -> bool {
    clique::has_clique(x.crossing_rows(), &corner_candidates(x, h, subset), d)
}

/// d-rank of each member of `subset`, relative to the quotient on `subset`.
pub fn d_ranks(x: &CubeComplex, d: usize, subset: &[HyperplaneId]) -> Result<BTreeMap<HyperplaneId, usize>> {
    let mut ranks = BTreeMap::new();
    let mut level = 0;
    let mut current = subset_bits(x, subset);
    while !current.is_clear() {
        let mut next = FixedBitSet::with_capacity(x.hyperplane_count());
        for h in current.ones() {
            if in_corner_bits(x, h, d, &current) {
                next.insert(h);
            } else {
                ranks.insert(h, level);
            }
        }
        if next == current {
            return Err(Error::NonTermination { d, level });
        }
        current = next;
        level += 1;
    }
    Ok(ranks)
}

/// Rank vectors by recursive refinement from `d = D` down to `d = 2`.
pub fn rank_vectors(x: &CubeComplex) -> Result<RankVectors> {
    let n = x.hyperplane_count();
    let mut vectors = vec![RankVector::default(); n];
    let mut classes: Vec<Vec<HyperplaneId>> = vec![x.hyperplanes().collect()];
    for d in (2..=x.dimension()).rev() {
        let mut refined = Vec::new();
        for class in &classes {
            let ranks = d_ranks(x, d, class)?;
            let mut groups: BTreeMap<usize, Vec<HyperplaneId>> = BTreeMap::new();
            for (&h, &r) in &ranks {
                vectors[h].0.push(r);
                groups.entry(r).or_default().push(h);
            }
            refined.extend(groups.into_values());
        }
        classes = refined;
    }
    Ok(RankVectors(vectors))
}

/// Least `d >= 1` with no hyperplane in a `(d+1)`-corner; zero for a point.
pub fn flatness(x: &CubeComplex) -> usize {
    if x.hyperplane_count() == 0 {
        return 0;
    }
    x.hyperplanes()
        .map(|h| clique::max_clique_size(x.crossing_rows(), x.below(h)))
        .max()
        .unwrap_or(0)
        .max(1)
}

/// Control bound `3^(f-1) · D` for flatness `f` and dimension `D`.
pub fn control_bound(x: &CubeComplex) -> usize {
    let f = flatness(x);
    if f == 0 {
        return 0;
    }
    3usize.pow(f as u32 - 1) * x.dimension()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{ell_grid, grid, path, tripod};

    fn all(x: &CubeComplex) -> Vec<HyperplaneId> {
        x.hyperplanes().collect()
    }

    #[test]
    fn corner_membership() {
        let seg = path(1);
        assert!(!in_d_corner(&seg, 0, 2, &all(&seg)));
        let e = ell_grid();
        assert!(in_d_corner(&e, 2, 2, &all(&e)));
        assert!(!in_d_corner(&e, 2, 2, &[0, 1, 2]));
        let g = grid(&[3, 3]).unwrap();
        assert!(!in_d_corner(&g, 1, 2, &all(&g)));
    }

    #[test]
    fn d_ranks_examples() {
        let e = ell_grid();
        let ranks = d_ranks(&e, 2, &all(&e)).unwrap();
        assert_eq!(ranks.values().copied().collect::<Vec<_>>(), vec![0, 0, 1, 0, 0, 1]);
        let g = grid(&[3, 3]).unwrap();
        assert!(d_ranks(&g, 2, &all(&g)).unwrap().values().all(|&r| r == 0));
        let ranks = d_ranks(&e, 3, &all(&e)).unwrap();
        assert!(ranks.values().all(|&r| r == 0));
    }

    #[test]
    fn rank_vector_examples() {
        let p = rank_vectors(&path(3)).unwrap();
        assert!(p.iter().all(|v| v.0.is_empty()));
        let g = rank_vectors(&grid(&[3, 3]).unwrap()).unwrap();
        assert!(g.iter().all(|v| v.0 == vec![0]));
        let e = rank_vectors(&ell_grid()).unwrap();
        let got: Vec<Vec<usize>> = e.iter().map(|v| v.0.clone()).collect();
        assert_eq!(got, vec![vec![0], vec![0], vec![1], vec![0], vec![0], vec![1]]);
        assert_eq!(e.class(&[1]), vec![2, 5]);
        assert_eq!(e.prefixes(1), vec![vec![0], vec![1]]);
    }

    #[test]
    fn flatness_examples() {
        assert_eq!(flatness(&path(1)), 1);
        assert_eq!(flatness(&grid(&[3, 3]).unwrap()), 1);
        assert_eq!(flatness(&ell_grid()), 2);
        assert_eq!(flatness(&tripod()), 1);
        assert_eq!(control_bound(&ell_grid()), 6);
    }

    #[test]
    fn flatness_matches_corner_definition() {
        for x in [path(4), tripod(), ell_grid(), grid(&[3, 3, 3]).unwrap(), grid(&[4, 4]).unwrap()] {
            let h = all(&x);
            let by_definition = (1..)
                .find(|&d| h.iter().all(|&k| !in_d_corner(&x, k, d + 1, &h)))
                .unwrap();
            assert_eq!(flatness(&x), by_definition);
        }
    }

    #[test]
    fn rank_vectors_are_lexicographic() {
        assert!(RankVector(vec![0, 5]) < RankVector(vec![1, 0]));
        assert_eq!(RankVector(vec![1, 0]).to_string(), "(1,0)");
    }
}
