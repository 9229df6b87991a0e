//! Points of the cube `[0,1]^H` and the retraction onto the embedded complex.
//!
//! A vertex embeds as the characteristic function of its halfspace set. A
//! cube point lies in the embedded complex exactly when it is intervalic
//! (no opposite pair has both coordinates positive) and actual (every pair
//! `h < k` has `ξ_h = 1` or `ξ_k = 0`). The retraction `P = P_A ∘ P_I`
//! composes one elementary pair map per opposite pair, then one per nested
//! pair, through [`ordered_compose`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Debug};

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::complex::{CubeComplex, HyperplaneId, Vertex};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Finitely supported point of the cube; zero coordinates are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CubePoint(BTreeMap<HyperplaneId, Rational>);

impl CubePoint {
    pub fn zero() -> Self {
        CubePoint::default()
    }

    pub fn new<I: IntoIterator<Item = (HyperplaneId, Rational)>>(coords: I) -> Result<Self> {
        let mut p = CubePoint::zero();
        for (h, v) in coords {
            if v.is_negative() || v > Rational::one() {
                return Err(Error::CoordinateOutOfRange { id: h, value: rational::format(&v) });
            }
            p.set(h, v);
        }
        Ok(p)
    }

    pub fn get(&self, h: HyperplaneId) -> Rational {
        self.0.get(&h).cloned().unwrap_or_else(Rational::zero)
    }

    fn coord(&self, h: HyperplaneId) -> Option<&Rational> {
        self.0.get(&h)
    }

    pub fn set(&mut self, h: HyperplaneId, v: Rational) {
        if v.is_zero() {
            self.0.remove(&h);
        } else {
            self.0.insert(h, v);
        }
    }

    pub fn support(&self) -> impl Iterator<Item = HyperplaneId> + '_ {
        self.0.keys().copied()
    }

    pub fn coords(&self) -> impl Iterator<Item = (HyperplaneId, &Rational)> + '_ {
        self.0.iter().map(|(&h, v)| (h, v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm(&self) -> Rational {
        self.0.values().fold(Rational::zero(), |acc, v| acc + v)
    }

    pub fn l1_distance(&self, other: &CubePoint) -> Rational {
        let mut total = Rational::zero();
        for (h, a) in &self.0 {
            match other.0.get(h) {
                Some(b) => total += (a - b).abs(),
                None => total += a,
            }
        }
        for (h, b) in &other.0 {
            if !self.0.contains_key(h) {
                total += b;
            }
        }
        total
    }

    /// Applies `f` to the coordinate pair `(h, k)`.
    fn map_pair(&self, h: HyperplaneId, k: HyperplaneId, f: fn(&Rational, &Rational) -> (Rational, Rational)) -> CubePoint {
        let (a, b) = f(&self.get(h), &self.get(k));
        let mut out = self.clone();
        out.set(h, a);
        out.set(k, b);
        out
    }
}

impl fmt::Debug for CubePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (h, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{h}: {}", rational::format(v))?;
        }
        f.write_str("}")
    }
}

impl Serialize for CubePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_map(self.0.iter().map(|(h, v)| (h.to_string(), rational::format(v))))
    }
}

/// Characteristic function of the vertex's halfspace set.
pub fn embed(x: &Vertex) -> CubePoint {
    CubePoint(x.ids().map(|h| (h, Rational::one())).collect())
}

/// The vertex whose embedding is `p`, when `p` is 0/1-valued.
pub fn as_vertex(x: &CubeComplex, p: &CubePoint) -> Option<Vertex> {
    if p.0.values().any(|v| !v.is_one()) || p.support().any(|h| h >= x.hyperplane_count()) {
        return None;
    }
    let v = Vertex::from_ids(x.hyperplane_count(), p.support());
    x.contains(&v).then_some(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointClass {
    pub intervalic: bool,
    pub actual: bool,
    /// Opposite pairs with both coordinates positive.
    pub non_intervalic_pairs: Vec<(HyperplaneId, HyperplaneId)>,
    /// Pairs `h < k` with `ξ_h < 1` and `ξ_k > 0`.
    pub virtual_pairs: Vec<(HyperplaneId, HyperplaneId)>,
}

impl PointClass {
    pub fn in_complex(&self) -> bool {
        self.intervalic && self.actual
    }
}

fn check_support(x: &CubeComplex, p: &CubePoint) -> Result<()> {
    match p.support().find(|&h| h >= x.hyperplane_count()) {
        Some(id) => Err(Error::IdOutOfRange { id, count: x.hyperplane_count() }),
        None => Ok(()),
    }
}

fn opposite_violations(x: &CubeComplex, p: &CubePoint) -> Vec<(HyperplaneId, HyperplaneId)> {
    let support: Vec<HyperplaneId> = p.support().collect();
    let mut out = Vec::new();
    for (i, &h) in support.iter().enumerate() {
        for &k in &support[i + 1..] {
            if x.opposite(h).contains(k) {
                out.push((h, k));
            }
        }
    }
    out
}

fn virtual_pairs(x: &CubeComplex, p: &CubePoint) -> Vec<(HyperplaneId, HyperplaneId)> {
    let mut out = Vec::new();
    for k in p.support() {
        for h in x.below(k).ones() {
            if p.coord(h).is_none_or(|v| !v.is_one()) {
                out.push((h, k));
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn classify_point(x: &CubeComplex, p: &CubePoint) -> Result<PointClass> {
    check_support(x, p)?;
    let non_intervalic_pairs = opposite_violations(x, p);
    let virtual_pairs = virtual_pairs(x, p);
    Ok(PointClass {
        intervalic: non_intervalic_pairs.is_empty(),
        actual: virtual_pairs.is_empty(),
        non_intervalic_pairs,
        virtual_pairs,
    })
}

/// Cancels the smaller coordinate of an opposite pair against the larger.
pub fn p_op(a: &Rational, b: &Rational) -> (Rational, Rational) {
    if a >= b {
        (a - b, Rational::zero())
    } else {
        (Rational::zero(), b - a)
    }
}

/// Pushes mass from the outer coordinate of a nested pair to the inner one.
pub fn p_less(a: &Rational, b: &Rational) -> (Rational, Rational) {
    let sum = a + b;
    if sum <= Rational::one() {
        (sum, Rational::zero())
    } else {
        (Rational::one(), sum - Rational::one())
    }
}

/// A totally ordered family of self-maps of the cube.
pub trait TransformFamily {
    type Index: Ord + Clone + Debug;

    /// Indices whose map does not fix `p`.
    fn support(&self, p: &CubePoint) -> BTreeSet<Self::Index>;

    fn apply(&self, index: &Self::Index, p: &CubePoint) -> CubePoint;
}

/// Applies the least supported map until the support is empty.
///
/// Each application must shrink the support to a subset of the previous
/// support minus the applied index; otherwise [`Error::SupportGrew`].
pub fn ordered_compose<F: TransformFamily>(family: &F, p: &CubePoint) -> Result<CubePoint> {
    let mut current = p.clone();
    let mut support = family.support(&current);
    let limit = support.len() + 1;
    let mut steps = 0;
    while let Some(least) = support.iter().next().cloned() {
        if steps >= limit {
            return Err(Error::CompositionRunaway { steps });
        }
        let next = family.apply(&least, &current);
        let next_support = family.support(&next);
        if next_support.contains(&least) || !next_support.is_subset(&support) {
            return Err(Error::SupportGrew { index: format!("{least:?}") });
        }
        current = next;
        support = next_support;
        steps += 1;
    }
    Ok(current)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PairKind {
    Opposite,
    Less,
}

/// Elementary pair maps of one kind, ordered by a position table.
///
/// Indices are `(position, h, k)` so the least index is the earliest pair
/// in the chosen order.
#[derive(Debug, Clone)]
pub struct PairFamily<'a> {
    x: &'a CubeComplex,
    kind: PairKind,
    position: HashMap<(HyperplaneId, HyperplaneId), usize>,
}

impl<'a> PairFamily<'a> {
    /// Opposite pairs `(h, k)`, `h < k` as ids, in lexicographic order.
    pub fn opposite(x: &'a CubeComplex) -> Self {
        Self::opposite_with_order(x, opposite_pairs(x)).expect("lexicographic order is a permutation")
    }

    /// Opposite pairs in a caller-chosen order; must list each pair once.
    pub fn opposite_with_order(x: &'a CubeComplex, order: Vec<(HyperplaneId, HyperplaneId)>) -> Result<Self> {
        let mut expected = opposite_pairs(x);
        let mut given: Vec<_> = order.iter().map(|&(h, k)| (h.min(k), h.max(k))).collect();
        given.sort_unstable();
        expected.sort_unstable();
        if given != expected {
            return Err(Error::InvalidArgument("order is not a permutation of the opposite pairs".into()));
        }
        let position = order.into_iter().enumerate().map(|(i, (h, k))| ((h.min(k), h.max(k)), i)).collect();
        Ok(PairFamily { x, kind: PairKind::Opposite, position })
    }

    /// Nested pairs `h < k` by decreasing length, ties lexicographic.
    pub fn less(x: &'a CubeComplex) -> Self {
        Self::less_with_order(x, less_pairs(x)).expect("length order is a permutation")
    }

    /// Nested pairs in a caller-chosen order; must list each pair once.
    /// Orders that are not length-decreasing may trip [`Error::SupportGrew`].
    pub fn less_with_order(x: &'a CubeComplex, order: Vec<(HyperplaneId, HyperplaneId)>) -> Result<Self> {
        let mut expected = less_pairs(x);
        let mut given = order.clone();
        given.sort_unstable();
        expected.sort_unstable();
        if given != expected {
            return Err(Error::InvalidArgument("order is not a permutation of the nested pairs".into()));
        }
        let position = order.into_iter().enumerate().map(|(i, pair)| (pair, i)).collect();
        Ok(PairFamily { x, kind: PairKind::Less, position })
    }

    fn pairs(&self, p: &CubePoint) -> Vec<(HyperplaneId, HyperplaneId)> {
        match self.kind {
            PairKind::Opposite => opposite_violations(self.x, p),
            PairKind::Less => virtual_pairs(self.x, p),
        }
    }
}

impl TransformFamily for PairFamily<'_> {
    type Index = (usize, HyperplaneId, HyperplaneId);

    fn support(&self, p: &CubePoint) -> BTreeSet<Self::Index> {
        self.pairs(p).into_iter().map(|(h, k)| (self.position[&(h, k)], h, k)).collect()
    }

    fn apply(&self, &(_, h, k): &Self::Index, p: &CubePoint) -> CubePoint {
        match self.kind {
            PairKind::Opposite => p.map_pair(h, k, p_op),
            PairKind::Less => p.map_pair(h, k, p_less),
        }
    }
}

/// All opposite pairs `(h, k)` with `h < k` as ids, lexicographically.
pub fn opposite_pairs(x: &CubeComplex) -> Vec<(HyperplaneId, HyperplaneId)> {
    x.hyperplanes()
        .flat_map(|h| x.opposite(h).ones().filter(move |&k| k > h).map(move |k| (h, k)))
        .collect()
}

/// All nested pairs `h < k`, longest first, ties lexicographic.
pub fn less_pairs(x: &CubeComplex) -> Vec<(HyperplaneId, HyperplaneId)> {
    let mut pairs: Vec<(HyperplaneId, HyperplaneId)> =
        x.hyperplanes().flat_map(|k| x.below(k).ones().map(move |h| (h, k))).collect();
    pairs.sort_by_key(|&(h, k)| (std::cmp::Reverse(x.pair_length(h, k)), h, k));
    pairs
}

/// Both stages of the retraction for one complex, built once.
#[derive(Debug, Clone)]
pub struct Projector<'a> {
    x: &'a CubeComplex,
    intervalic: PairFamily<'a>,
    actual: PairFamily<'a>,
}

impl<'a> Projector<'a> {
    pub fn new(x: &'a CubeComplex) -> Self {
        Projector { x, intervalic: PairFamily::opposite(x), actual: PairFamily::less(x) }
    }

    pub fn with_families(x: &'a CubeComplex, intervalic: PairFamily<'a>, actual: PairFamily<'a>) -> Self {
        Projector { x, intervalic, actual }
    }

    pub fn project_intervalic(&self, p: &CubePoint) -> Result<CubePoint> {
        check_support(self.x, p)?;
        ordered_compose(&self.intervalic, p)
    }

    pub fn project_actual(&self, p: &CubePoint) -> Result<CubePoint> {
        check_support(self.x, p)?;
        if let Some(&(h, k)) = opposite_violations(self.x, p).first() {
            return Err(Error::NotIntervalic(h, k));
        }
        ordered_compose(&self.actual, p)
    }

    pub fn project(&self, p: &CubePoint) -> Result<CubePoint> {
        self.project_actual(&self.project_intervalic(p)?)
    }
}

/// Retraction of the cube onto its intervalic points.
pub fn project_intervalic(x: &CubeComplex, p: &CubePoint) -> Result<CubePoint> {
    Projector::new(x).project_intervalic(p)
}

/// Retraction of the intervalic points onto the embedded complex.
pub fn project_actual(x: &CubeComplex, p: &CubePoint) -> Result<CubePoint> {
    Projector::new(x).project_actual(p)
}

/// `P = P_A ∘ P_I`: contractive, identity on the complex, and
/// norm-preserving on intervalic points.
pub fn project(x: &CubeComplex, p: &CubePoint) -> Result<CubePoint> {
    Projector::new(x).project(p)
}
