//! Complex generators and median closure.
//!
//! Grid-like generators use threshold coordinates: a path factor with `m`
//! vertices contributes `m - 1` nested hyperplanes, and coordinate `c` in
//! that factor switches on its first `c` hyperplanes.

use std::collections::{BTreeSet, HashSet};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{CubeComplex, HyperplaneId, Vertex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// A line of `edges` edges leaving the basepoint.
    Path { edges: usize },
    /// Three edges meeting at the basepoint.
    Tripod,
    /// `parents[i]` is the parent of tree vertex `i + 1`; vertex 0 is the root.
    Tree { parents: Vec<usize> },
    /// Product of paths with the given vertex counts.
    Grid { dims: Vec<usize> },
    Product { left: Box<GeneratorSpec>, right: Box<GeneratorSpec> },
    EllGrid,
    RandomMedian { dims: Vec<usize>, samples: usize, seed: u64 },
}

pub fn generate(spec: &GeneratorSpec) -> Result<CubeComplex> {
    match spec {
        GeneratorSpec::Path { edges } => Ok(path(*edges)),
        GeneratorSpec::Tripod => Ok(tripod()),
        GeneratorSpec::Tree { parents } => tree(parents),
        GeneratorSpec::Grid { dims } => grid(dims),
        GeneratorSpec::Product { left, right } => Ok(product(&generate(left)?, &generate(right)?)),
        GeneratorSpec::EllGrid => Ok(ell_grid()),
        GeneratorSpec::RandomMedian { dims, samples, seed } => random_median(dims, *samples, *seed),
    }
}

/// Chain `0 < 1 < … < edges - 1`.
pub fn path(edges: usize) -> CubeComplex {
    CubeComplex::new(edges, (0..=edges).map(|c| 0..c)).expect("path complex is valid")
}

/// Three pairwise opposite hyperplanes.
pub fn tripod() -> CubeComplex {
    CubeComplex::new(3, vec![vec![], vec![0], vec![1], vec![2]]).expect("tripod complex is valid")
}

pub fn tree(parents: &[usize]) -> Result<CubeComplex> {
    let n = parents.len();
    let mut sets: Vec<Vec<HyperplaneId>> = vec![vec![]];
    for (i, &p) in parents.iter().enumerate() {
        if p > i {
            return Err(Error::InvalidArgument(format!(
                "tree vertex {} has parent {p}, which is not an earlier vertex",
                i + 1
            )));
        }
        let mut set = sets[p].clone();
        set.push(i);
        sets.push(set);
    }
    CubeComplex::new(n, sets)
}

fn check_dims(dims: &[usize]) -> Result<()> {
    if dims.contains(&0) {
        return Err(Error::InvalidArgument("grid dimensions must be positive".into()));
    }
    Ok(())
}

/// The vertex of the ambient grid with the given coordinates.
pub fn grid_vertex(dims: &[usize], coords: &[usize]) -> Vertex {
    let total: usize = dims.iter().map(|d| d - 1).sum();
    let mut bits = FixedBitSet::with_capacity(total);
    let mut offset = 0;
    for (&d, &c) in dims.iter().zip(coords) {
        bits.insert_range(offset..offset + c.min(d - 1));
        offset += d - 1;
    }
    Vertex::from_bits(bits)
}

fn grid_points(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut points = vec![vec![]];
    for &d in dims {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..d).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    points
}

/// Product of paths; `dims[i]` is the number of vertices along factor `i`.
pub fn grid(dims: &[usize]) -> Result<CubeComplex> {
    check_dims(dims)?;
    let total: usize = dims.iter().map(|d| d - 1).sum();
    let vertices = grid_points(dims).iter().map(|c| grid_vertex(dims, c)).collect();
    CubeComplex::from_vertices(total, vertices)
}

/// Hyperplanes of `x` keep their ids; those of `y` are shifted past them.
pub fn product(x: &CubeComplex, y: &CubeComplex) -> CubeComplex {
    let nx = x.hyperplane_count();
    let n = nx + y.hyperplane_count();
    let mut vertices = Vec::with_capacity(x.vertex_count() * y.vertex_count());
    for a in x.vertices() {
        for b in y.vertices() {
            vertices.push(Vertex::from_ids(n, a.ids().chain(b.ids().map(|h| h + nx))));
        }
    }
    CubeComplex::from_vertices(n, vertices).expect("product of valid complexes is valid")
}

/// The 3×3 grid with one more square glued at its far corner.
///
/// Hyperplanes `a1, a2, a3 = 0, 1, 2` and `b1, b2, b3 = 3, 4, 5`.
pub fn ell_grid() -> CubeComplex {
    let mut coords: Vec<(usize, usize)> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
    coords.extend([(3, 2), (2, 3), (3, 3)]);
    CubeComplex::new(6, coords.into_iter().map(|(i, j)| (0..i).chain(3..3 + j)))
        .expect("ell grid is valid")
}

/// Smallest superset of `seeds` (plus the basepoint) closed under majority.
pub fn median_closure(ambient_dims: &[usize], seeds: &[Vertex]) -> BTreeSet<Vertex> {
    let total: usize = ambient_dims.iter().map(|d| d.saturating_sub(1)).sum();
    let mut members: Vec<Vertex> = Vec::new();
    let mut seen: HashSet<Vertex> = HashSet::new();
    for v in std::iter::once(Vertex::empty(total)).chain(seeds.iter().cloned()) {
        let v = Vertex::from_ids(total, v.ids());
        if seen.insert(v.clone()) {
            members.push(v);
        }
    }
    let mut settled = 0;
    while settled < members.len() {
        let frontier = members.len();
        let mut found = Vec::new();
        for i in 0..frontier {
            for j in i + 1..frontier {
                for k in j + 1..frontier {
                    if k < settled {
                        continue;
                    }
                    let m = Vertex::majority(&members[i], &members[j], &members[k]);
                    if seen.insert(m.clone()) {
                        found.push(m);
                    }
                }
            }
        }
        settled = frontier;
        members.extend(found);
    }
    members.into_iter().collect()
}

/// Median closure of `samples` uniformly drawn grid vertices.
///
/// Coordinates that end up unused, or that induce the same split as an
/// earlier coordinate, are dropped so the result is a valid complex.
pub fn random_median(dims: &[usize], samples: usize, seed: u64) -> Result<CubeComplex> {
    check_dims(dims)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<Vertex> = (0..samples)
        .map(|_| {
            let coords: Vec<usize> = dims.iter().map(|&d| rng.gen_range(0..d)).collect();
            grid_vertex(dims, &coords)
        })
        .collect();
    let closure: Vec<Vertex> = median_closure(dims, &seeds).into_iter().collect();
    let total: usize = dims.iter().map(|d| d - 1).sum();
    let mut keep = Vec::new();
    let mut splits: HashSet<FixedBitSet> = HashSet::new();
    for h in 0..total {
        let mut side = FixedBitSet::with_capacity(closure.len());
        for (i, v) in closure.iter().enumerate() {
            side.set(i, v.contains(h));
        }
        if !side.is_clear() && splits.insert(side) {
            keep.push(h);
        }
    }
    let vertices = closure
        .iter()
        .map(|v| {
            Vertex::from_ids(
                keep.len(),
                keep.iter().enumerate().filter(|(_, &h)| v.contains(h)).map(|(i, _)| i),
            )
        })
        .collect();
    CubeComplex::from_vertices(keep.len(), vertices)
}
