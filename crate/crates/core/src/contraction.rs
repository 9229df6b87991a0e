//! Quotients over the 0-coloured hyperplanes and the contracting maps into them.
//!
//! For a colouring with control `l`, the map `ψ` sends a point `ξ` of the
//! embedded complex to `ζ_h = min(1, Σ_k w(h,k) ξ_k)` over the 0-coloured
//! hyperplanes, and `φ = P ∘ ψ` lands in the embedded quotient. Both are
//! `l/(l+1)`-Lipschitz. Iterating multiplies the factors together.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::colouring::{colour, Colouring};
use crate::complex::{CubeComplex, HyperplaneId, Vertex};
use crate::error::{Error, Result};
use crate::geometry::{classify_point, embed, CubePoint, Projector};
use crate::rank::{control_bound, flatness, rank_vectors, RankVectors};
use crate::rational::{self, Rational};

/// The complex over a subset of hyperplanes, relabelled densely.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub quotient: CubeComplex,
    /// `keep[i]` is the original id of quotient hyperplane `i`.
    pub keep: Vec<HyperplaneId>,
    /// Quotient vertex index of each source vertex, by source vertex index.
    pub pi: Vec<usize>,
    relabel: HashMap<HyperplaneId, HyperplaneId>,
}

impl QuotientResult {
    /// Quotient id of an original hyperplane, if kept.
    pub fn quotient_id(&self, h: HyperplaneId) -> Option<HyperplaneId> {
        self.relabel.get(&h).copied()
    }

    /// `F_x ∩ keep`, in quotient labels.
    pub fn project_vertex(&self, x: &Vertex) -> Vertex {
        Vertex::from_ids(self.keep.len(), x.ids().filter_map(|h| self.quotient_id(h)))
    }

    /// The image of source vertex number `i`.
    pub fn image(&self, i: usize) -> &Vertex {
        &self.quotient.vertices()[self.pi[i]]
    }
}

pub fn quotient(x: &CubeComplex, keep: &[HyperplaneId]) -> Result<QuotientResult> {
    if let Some(&id) = keep.iter().find(|&&h| h >= x.hyperplane_count()) {
        return Err(Error::IdOutOfRange { id, count: x.hyperplane_count() });
    }
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let relabel: HashMap<HyperplaneId, HyperplaneId> = keep.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let images: Vec<Vertex> = x
        .vertices()
        .iter()
        .map(|v| Vertex::from_ids(keep.len(), v.ids().filter_map(|h| relabel.get(&h).copied())))
        .collect();
    let mut distinct = images.clone();
    distinct.sort();
    distinct.dedup();
    let quotient = CubeComplex::from_vertices(keep.len(), distinct)?;
    let pi = images
        .iter()
        .map(|v| quotient.vertex_index(v).expect("image is a quotient vertex"))
        .collect();
    Ok(QuotientResult { quotient, keep, pi, relabel })
}

/// `w(h, k)` for a 0-coloured `h`; panics when `h` is coloured 1.
pub fn weight(x: &CubeComplex, colouring: &Colouring, l: usize, h: HyperplaneId, k: HyperplaneId) -> Rational {
    assert_eq!(colouring.colour(h), 0, "weights are defined for 0-coloured rows only");
    let denom = l as i64 + 1;
    if h == k {
        return rational::ratio(l as i64, denom);
    }
    if colouring.colour(k) == 1 && x.is_less(h, k) && !separated_by_one(x, colouring, h, k) {
        return rational::ratio(1, denom);
    }
    Rational::zero()
}

/// Some 1-coloured `j` with `h < j < k`.
fn separated_by_one(x: &CubeComplex, colouring: &Colouring, h: HyperplaneId, k: HyperplaneId) -> bool {
    x.below(k).ones().any(|j| colouring.colour(j) == 1 && x.is_less(h, j))
}

/// The map onto the quotient over the 0-coloured hyperplanes.
#[derive(Debug, Clone)]
pub struct ContractionMap<'a> {
    x: &'a CubeComplex,
    l: usize,
    quotient: QuotientResult,
    /// Nonzero weights of each quotient coordinate, as `(k, w(h,k))`.
    rows: Vec<Vec<(HyperplaneId, Rational)>>,
}

impl<'a> ContractionMap<'a> {
    pub fn new(x: &'a CubeComplex, colouring: &Colouring, l: usize) -> Result<Self> {
        let quotient = quotient(x, &colouring.zero_coloured())?;
        let rows = quotient
            .keep
            .iter()
            .map(|&h| {
                x.hyperplanes()
                    .map(|k| (k, weight(x, colouring, l, h, k)))
                    .filter(|(_, w)| !w.is_zero())
                    .collect()
            })
            .collect();
        Ok(ContractionMap { x, l, quotient, rows })
    }

    pub fn control(&self) -> usize {
        self.l
    }

    pub fn factor(&self) -> Rational {
        rational::ratio(self.l as i64, self.l as i64 + 1)
    }

    pub fn quotient(&self) -> &QuotientResult {
        &self.quotient
    }

    pub fn into_quotient(self) -> QuotientResult {
        self.quotient
    }

    /// Sum of `w(h, k)` over the quotient coordinates `h`.
    pub fn column_sum(&self, k: HyperplaneId) -> Rational {
        self.rows
            .iter()
            .flat_map(|row| row.iter().filter(|(j, _)| *j == k).map(|(_, w)| w.clone()))
            .fold(Rational::zero(), |acc, w| acc + w)
    }

    /// `ζ_h = min(1, Σ_k w(h,k) ξ_k)`, in quotient labels.
    pub fn psi(&self, p: &CubePoint) -> Result<CubePoint> {
        if !classify_point(self.x, p)?.in_complex() {
            return Err(Error::PointNotInComplex);
        }
        Ok(self.psi_unchecked(p))
    }

    fn psi_unchecked(&self, p: &CubePoint) -> CubePoint {
        let one = Rational::one();
        let coords = self.rows.iter().enumerate().map(|(i, row)| {
            let sum = row.iter().fold(Rational::zero(), |acc, (k, w)| acc + w * p.get(*k));
            (i, if sum > one { one.clone() } else { sum })
        });
        CubePoint::new(coords).expect("weighted sums lie in [0, 1]")
    }

    /// `P(ψ(p))`, a point of the embedded quotient.
    pub fn phi(&self, p: &CubePoint) -> Result<CubePoint> {
        Projector::new(&self.quotient.quotient).project(&self.psi(p)?)
    }

    /// `φ` of many points, sharing one projector.
    pub fn phi_all(&self, points: &[CubePoint]) -> Result<Vec<CubePoint>> {
        let projector = Projector::new(&self.quotient.quotient);
        points.par_iter().map(|p| projector.project(&self.psi(p)?)).collect()
    }
}

/// Follows 0-coloured inward edges, least id first, until none is left.
pub fn descend_zero(x: &CubeComplex, colouring: &Colouring, v: &Vertex) -> Vertex {
    let mut current = v.clone();
    while let Some(h) = x.adjacent_inward_set(&current).into_iter().find(|&h| colouring.colour(h) == 0) {
        current = current.with_toggled(h);
    }
    current
}

/// Largest `‖image_i − image_j‖₁ / d(source_i, source_j)` over pairs at
/// positive distance; zero with fewer than two sources.
pub fn lipschitz_ratio(images: &[CubePoint], sources: &[Vertex], x: &CubeComplex) -> Rational {
    assert_eq!(images.len(), sources.len());
    max_pair_ratio(images, |i, j| Rational::from_integer(x.distance(&sources[i], &sources[j]).into()))
}

/// Max of `‖a_i − a_j‖₁ / base(i, j)` over pairs with positive base.
fn max_pair_ratio<F>(images: &[CubePoint], base: F) -> Rational
where
    F: Fn(usize, usize) -> Rational + Sync,
{
    (0..images.len())
        .into_par_iter()
        .map(|i| {
            let mut best = Rational::zero();
            for j in i + 1..images.len() {
                let b = base(i, j);
                if b.is_zero() {
                    continue;
                }
                let r = images[i].l1_distance(&images[j]) / b;
                if r > best {
                    best = r;
                }
            }
            best
        })
        .reduce(Rational::zero, |a, b| if a >= b { a } else { b })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CobornologyAudit {
    pub radius: usize,
    pub max_source_distance: usize,
    pub bound: usize,
    pub pass: bool,
}

/// Largest source distance among vertex pairs whose images are within `r`,
/// against the bound `(l+1)(r+2)`.
pub fn cobornology_audit(x: &CubeComplex, q: &QuotientResult, l: usize, r: usize) -> CobornologyAudit {
    let vs = x.vertices();
    let max_source_distance = (0..vs.len())
        .into_par_iter()
        .map(|i| {
            (i + 1..vs.len())
                .filter(|&j| q.quotient.distance(q.image(i), q.image(j)) <= r)
                .map(|j| x.distance(&vs[i], &vs[j]))
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    let bound = (l + 1) * (r + 2);
    CobornologyAudit { radius: r, max_source_distance, bound, pass: max_source_distance <= bound }
}

/// Which points the pipeline follows through its rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tracking {
    All,
    /// At most `count` distinct vertices, drawn with `seed`.
    Sample { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// The composite factor dropped to `ε` or below.
    Reached,
    /// The current complex has no hyperplanes left.
    Collapsed,
    RoundsExhausted,
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundReport {
    pub round: usize,
    pub hyperplane_count: usize,
    pub vertex_count: usize,
    pub dimension: usize,
    pub flatness: usize,
    /// Measured control `l`, used for the weights.
    pub control: usize,
    pub control_bound: usize,
    #[serde(serialize_with = "rational::serialize")]
    pub factor: Rational,
    /// Largest ratio of output to input image distances this round.
    #[serde(serialize_with = "rational::serialize")]
    pub measured_max_ratio: Rational,
    pub quotient_hyperplanes: usize,
    pub quotient_dimension: usize,
    /// Original ids of the quotient hyperplanes, in quotient order.
    pub kept: Vec<HyperplaneId>,
}

/// Complex and colouring a round worked on.
#[derive(Debug, Clone)]
pub struct RoundStage {
    pub complex: CubeComplex,
    pub ranks: RankVectors,
    pub colouring: Colouring,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractionReport {
    #[serde(serialize_with = "rational::serialize")]
    pub epsilon: Rational,
    pub rounds: Vec<RoundReport>,
    #[serde(serialize_with = "rational::serialize")]
    pub composite_factor: Rational,
    /// Largest ratio of final image distances to original vertex distances.
    #[serde(serialize_with = "rational::serialize")]
    pub composite_measured: Rational,
    pub stop: StopReason,
    pub dimension_ok: bool,
    pub measured_ok: bool,
    pub pass: bool,
    pub tracked: Vec<Vertex>,
    /// Final points of the tracked vertices, in the last complex's labels.
    pub images: Vec<CubePoint>,
    #[serde(skip)]
    pub stages: Vec<RoundStage>,
    #[serde(skip)]
    pub final_complex: CubeComplex,
}

fn tracked_vertices(x: &CubeComplex, tracking: Tracking) -> Vec<Vertex> {
    match tracking {
        Tracking::Sample { count, seed } if count < x.vertex_count() => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked = sample(&mut rng, x.vertex_count(), count).into_vec();
            picked.sort_unstable();
            picked.into_iter().map(|i| x.vertices()[i].clone()).collect()
        }
        _ => x.vertices().to_vec(),
    }
}

/// Iterates `φ` until the composite factor is at most `epsilon`, the complex
/// collapses to a point, or `max_rounds` rounds have run.
pub fn contract_pipeline(
    x: &CubeComplex,
    epsilon: &Rational,
    max_rounds: usize,
    tracking: Tracking,
) -> Result<ContractionReport> {
    if *epsilon <= Rational::zero() || *epsilon >= Rational::one() {
        return Err(Error::InvalidArgument(format!("epsilon {} must lie strictly between 0 and 1", rational::format(epsilon))));
    }
    if max_rounds == 0 {
        return Err(Error::InvalidArgument("max_rounds must be at least 1".into()));
    }
    let tracked = tracked_vertices(x, tracking);
    let mut points: Vec<CubePoint> = tracked.iter().map(embed).collect();
    let mut current = x.clone();
    let mut composite = Rational::one();
    let mut rounds = Vec::new();
    let mut stages = Vec::new();
    let mut dimension_ok = true;
    let stop = loop {
        if composite <= *epsilon {
            break StopReason::Reached;
        }
        if current.hyperplane_count() == 0 {
            break StopReason::Collapsed;
        }
        if rounds.len() == max_rounds {
            break StopReason::RoundsExhausted;
        }
        let ranks = rank_vectors(&current)?;
        let colouring = colour(&current, &ranks);
        let map = ContractionMap::new(&current, &colouring, colouring.control())?;
        let next_points = map.phi_all(&points)?;
        let measured = max_pair_ratio(&next_points, |i, j| points[i].l1_distance(&points[j]));
        let factor = map.factor();
        composite *= &factor;
        let q = map.into_quotient();
        dimension_ok &= q.quotient.dimension() <= x.dimension();
        rounds.push(RoundReport {
            round: rounds.len() + 1,
            hyperplane_count: current.hyperplane_count(),
            vertex_count: current.vertex_count(),
            dimension: current.dimension(),
            flatness: flatness(&current),
            control: colouring.control(),
            control_bound: control_bound(&current),
            factor,
            measured_max_ratio: measured,
            quotient_hyperplanes: q.quotient.hyperplane_count(),
            quotient_dimension: q.quotient.dimension(),
            kept: q.keep.clone(),
        });
        let next = q.quotient;
        stages.push(RoundStage { complex: std::mem::replace(&mut current, next), ranks, colouring });
        points = next_points;
    };
    let composite_measured = lipschitz_ratio(&points, &tracked, x);
    let measured_ok = composite_measured <= composite;
    let pass = stop != StopReason::RoundsExhausted && dimension_ok && measured_ok;
    Ok(ContractionReport {
        epsilon: epsilon.clone(),
        rounds,
        composite_factor: composite,
        composite_measured,
        stop,
        dimension_ok,
        measured_ok,
        pass,
        tracked,
        images: points,
        stages,
        final_complex: current,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{grid, path};
    use crate::rational::{int, ratio};

    fn coloured(x: &CubeComplex) -> Colouring {
        colour(x, &rank_vectors(x).unwrap())
    }

    #[test]
    fn quotient_examples() {
        let g = grid(&[3, 3]).unwrap();
        let q = quotient(&g, &[1, 3]).unwrap();
        assert_eq!(q.quotient.vertex_count(), 4);
        assert_eq!(q.quotient.dimension(), 2);
        let i = g.vertex_index(&g.vertex(&[0, 2]).unwrap()).unwrap();
        assert!(q.image(i).is_empty());

        let p = path(3);
        let q = quotient(&p, &[1]).unwrap();
        assert_eq!(q.quotient.vertex_count(), 2);
        assert_eq!(q.pi[0], q.pi[1]);
        assert_ne!(q.pi[1], q.pi[2]);

        let q = quotient(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(q.quotient.vertices(), g.vertices());
        assert!(quotient(&g, &[9]).is_err());
    }

    #[test]
    fn weight_examples() {
        let p = path(3);
        let c = coloured(&p);
        assert_eq!(c.colours(), &[1, 0, 1]);
        assert_eq!(weight(&p, &c, 1, 1, 1), ratio(1, 2));
        assert_eq!(weight(&p, &c, 1, 1, 2), ratio(1, 2));
        assert_eq!(weight(&p, &c, 1, 1, 0), int(0));
        let g = grid(&[3, 3]).unwrap();
        let c = coloured(&g);
        assert_eq!(weight(&g, &c, 2, 1, 1), ratio(2, 3));
        for k in [0, 2, 3] {
            assert_eq!(weight(&g, &c, 2, 1, k), int(0));
        }
    }

    #[test]
    fn psi_and_phi_examples() {
        let p = path(3);
        let c = coloured(&p);
        let m = ContractionMap::new(&p, &c, c.control()).unwrap();
        assert!(m.psi(&embed(p.basepoint())).unwrap().is_zero());
        let top = embed(&p.vertex(&[0, 1, 2]).unwrap());
        assert_eq!(m.psi(&top).unwrap(), CubePoint::new([(0, int(1))]).unwrap());
        let images: Vec<_> = p.vertices().iter().map(|v| m.phi(&embed(v)).unwrap().get(0)).collect();
        assert_eq!(images, vec![int(0), int(0), ratio(1, 2), int(1)]);

        let g = grid(&[3, 3]).unwrap();
        let c = coloured(&g);
        assert_eq!(c.control(), 2);
        let m = ContractionMap::new(&g, &c, 2).unwrap();
        let v = embed(&g.vertex(&[0, 1, 2]).unwrap());
        assert_eq!(m.psi(&v).unwrap(), CubePoint::new([(0, ratio(2, 3))]).unwrap());
        let v = embed(&g.vertex(&[0, 1, 2, 3]).unwrap());
        assert_eq!(m.phi(&v).unwrap(), CubePoint::new([(0, ratio(2, 3)), (1, ratio(2, 3))]).unwrap());

        let off = CubePoint::new([(1, ratio(1, 2))]).unwrap();
        assert_eq!(m.psi(&off), Err(Error::PointNotInComplex));
    }

    #[test]
    fn descend_examples() {
        let g = grid(&[3, 3]).unwrap();
        let c = coloured(&g);
        assert_eq!(descend_zero(&g, &c, &g.vertex(&[0, 1]).unwrap()), g.vertex(&[0]).unwrap());
        assert_eq!(descend_zero(&g, &c, g.basepoint()), *g.basepoint());
        let p = path(3);
        let c = coloured(&p);
        assert_eq!(descend_zero(&p, &c, &p.vertex(&[0, 1]).unwrap()), p.vertex(&[0]).unwrap());
    }

    #[test]
    fn ratios_and_cobornology() {
        let p = path(3);
        let c = coloured(&p);
        let m = ContractionMap::new(&p, &c, c.control()).unwrap();
        let pts: Vec<_> = p.vertices().iter().map(embed).collect();
        let images = m.phi_all(&pts).unwrap();
        assert_eq!(lipschitz_ratio(&images, p.vertices(), &p), ratio(1, 2));
        let same = vec![CubePoint::zero(); p.vertex_count()];
        assert_eq!(lipschitz_ratio(&same, p.vertices(), &p), int(0));
        let a = cobornology_audit(&p, m.quotient(), 1, 0);
        assert_eq!((a.max_source_distance, a.bound, a.pass), (1, 4, true));

        let g = grid(&[3, 3]).unwrap();
        let c = coloured(&g);
        let m = ContractionMap::new(&g, &c, 2).unwrap();
        let pts: Vec<_> = g.vertices().iter().map(embed).collect();
        let images = m.phi_all(&pts).unwrap();
        assert_eq!(lipschitz_ratio(&images, g.vertices(), &g), ratio(2, 3));
        let a = cobornology_audit(&g, m.quotient(), 2, 0);
        assert_eq!((a.max_source_distance, a.bound, a.pass), (2, 6, true));
    }

    #[test]
    fn weight_columns_are_bounded() {
        for x in [path(5), grid(&[3, 3]).unwrap(), crate::generate::ell_grid()] {
            let c = coloured(&x);
            let m = ContractionMap::new(&x, &c, c.control()).unwrap();
            for k in x.hyperplanes() {
                assert!(m.column_sum(k) <= m.factor());
            }
        }
    }

    #[test]
    fn pipeline_examples() {
        let seg = path(1);
        let r = contract_pipeline(&seg, &ratio(1, 2), 10, Tracking::All).unwrap();
        assert_eq!(r.rounds.len(), 1);
        assert_eq!(r.rounds[0].control, 1);
        assert_eq!(r.composite_factor, ratio(1, 2));
        assert_eq!(r.rounds[0].quotient_hyperplanes, 0);
        assert!(r.pass);

        let g = grid(&[3, 3]).unwrap();
        let r = contract_pipeline(&g, &ratio(1, 2), 10, Tracking::All).unwrap();
        assert_eq!(r.rounds.len(), 2);
        assert_eq!(r.rounds[0].factor, ratio(2, 3));
        assert_eq!(r.rounds[0].quotient_hyperplanes, 2);
        assert_eq!(r.rounds[1].quotient_hyperplanes, 0);
        assert_eq!(r.composite_factor, ratio(4, 9));
        assert_eq!(r.composite_measured, int(0));
        assert_eq!(r.stop, StopReason::Reached);
        assert!(r.pass);

        let r = contract_pipeline(&path(6), &ratio(1, 100), 1, Tracking::All).unwrap();
        assert_eq!(r.stop, StopReason::RoundsExhausted);
        assert!(!r.pass);
        assert!(contract_pipeline(&g, &int(1), 3, Tracking::All).is_err());
    }

    #[test]
    fn sampled_tracking_is_seeded() {
        let g = grid(&[4, 4]).unwrap();
        let t = Tracking::Sample { count: 5, seed: 11 };
        let a = contract_pipeline(&g, &ratio(1, 4), 10, t).unwrap();
        let b = contract_pipeline(&g, &ratio(1, 4), 10, t).unwrap();
        assert_eq!(a.tracked.len(), 5);
        assert_eq!(a.tracked, b.tracked);
        assert!(a.measured_ok);
    }
}
