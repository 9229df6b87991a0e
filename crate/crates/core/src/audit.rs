//! Invariant checks over a single complex, grouped by module.
//!
//! Each check reports how many cases it examined and, on failure, a witness
//! describing the first offending case. Advisory checks are reported but do
//! not affect the overall verdict.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::colouring::{
    boundness_audit, chain_partition, colour, colour_along, max_chain_rank_values, monochromatic_inward_paths,
    Colouring,
};
use crate::complex::{CubeComplex, HyperplaneId, Relation, Vertex};
use crate::contraction::{cobornology_audit, descend_zero, ContractionMap};
use crate::error::{Error, Result};
use crate::generate::{ell_grid, grid, path, random_median, tree, tripod};
use crate::geometry::{
    classify_point, embed, less_pairs, opposite_pairs, p_less, p_op, CubePoint, PairFamily, Projector,
};
use crate::rank::{control_bound, d_ranks, flatness, rank_vectors, RankVectors};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Core,
    Rank,
    Colouring,
    Geometry,
    Contraction,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" => Ok(Suite::Core),
            "rank" => Ok(Suite::Rank),
            "colouring" | "coloring" => Ok(Suite::Colouring),
            "geometry" => Ok(Suite::Geometry),
            "contraction" => Ok(Suite::Contraction),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidArgument(format!("unknown suite `{s}`"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Core => "core",
            Suite::Rank => "rank",
            Suite::Colouring => "colouring",
            Suite::Geometry => "geometry",
            Suite::Contraction => "contraction",
            Suite::All => "all",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    pub pass: bool,
    /// Informational only; a failure is reported but does not fail the audit.
    pub advisory: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub suite: Suite,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl AuditReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass && !c.advisory)
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = match (c.pass, c.advisory) {
                (true, _) => "pass",
                (false, true) => "note",
                (false, false) => "FAIL",
            };
            write!(f, "{verdict} {}/{} ({} cases)", c.suite, c.name, c.checked)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.pass { "audit passed" } else { "audit FAILED" })
    }
}

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, name: &'static str, checked: usize, witness: Option<String>) {
        self.push(name, checked, witness, false);
    }

    fn advise(&mut self, name: &'static str, checked: usize, witness: Option<String>) {
        self.push(name, checked, witness, true);
    }

    fn push(&mut self, name: &'static str, checked: usize, witness: Option<String>, advisory: bool) {
        self.checks.push(Check { suite: self.suite, name, pass: witness.is_none(), advisory, checked, witness });
    }
}

/// First failure (by index) among `count` independent cases.
fn first_failure<F>(count: usize, case: F) -> Option<String>
where
    F: Fn(usize) -> Option<String> + Sync,
{
    (0..count).into_par_iter().filter_map(|i| case(i).map(|w| (i, w))).min_by_key(|(i, _)| *i).map(|(_, w)| w)
}

/// Runs the checks of `suite` on `x`, drawing `samples` random points
/// with `seed` where sampling is needed.
pub fn run_audit(x: &CubeComplex, suite: Suite, samples: usize, seed: u64) -> Result<AuditReport> {
    let mut checks = Vec::new();
    let ranks = rank_vectors(x)?;
    let colouring = colour(x, &ranks);
    if suite.includes(Suite::Core) {
        checks.extend(core_checks(x, seed));
    }
    if suite.includes(Suite::Rank) {
        checks.extend(rank_checks(x, &ranks)?);
    }
    if suite.includes(Suite::Colouring) {
        checks.extend(colouring_checks(x, &ranks, &colouring, seed)?);
    }
    if suite.includes(Suite::Geometry) {
        checks.extend(geometry_checks(x, samples, seed)?);
    }
    if suite.includes(Suite::Contraction) {
        checks.extend(contraction_checks(x, &colouring, samples, seed)?);
    }
    let pass = checks.iter().all(|c| c.pass || c.advisory);
    Ok(AuditReport { suite, samples, seed, checks, pass })
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// All index triples when there are few vertices, otherwise a seeded sample.
fn triples(n: usize, seed: u64) -> Vec<(usize, usize, usize)> {
    if n <= 24 {
        return (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..20_000).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect()
}

/// Relation of `h` to `k` read off the vertex lists directly.
fn relations_from_sides(x: &CubeComplex, h: HyperplaneId, k: HyperplaneId) -> Vec<Relation> {
    let vs = x.vertices();
    let both = vs.iter().any(|v| v.contains(h) && v.contains(k));
    let h_only = vs.iter().any(|v| v.contains(h) && !v.contains(k));
    let k_only = vs.iter().any(|v| !v.contains(h) && v.contains(k));
    let mut out = Vec::new();
    if both && h_only && k_only {
        out.push(Relation::Crosses);
    }
    if both && h_only && !k_only {
        out.push(Relation::Less);
    }
    if both && !h_only && k_only {
        out.push(Relation::Greater);
    }
    if !both {
        out.push(Relation::Opposite);
    }
    out
}

fn core_checks(x: &CubeComplex, seed: u64) -> Vec<Check> {
    let mut r = Recorder { suite: Suite::Core, checks: Vec::new() };
    let n = x.hyperplane_count();
    let vs = x.vertices();

    let hk: Vec<(usize, usize)> = pairs(n).collect();
    r.record(
        "exactly_one_relation",
        hk.len(),
        first_failure(hk.len(), |i| {
            let (h, k) = hk[i];
            let found = relations_from_sides(x, h, k);
            (found != [x.relation(h, k)] || x.relation(k, h) != x.relation(h, k).flip())
                .then(|| format!("({h}, {k}): table says {:?}, sides give {found:?}", x.relation(h, k)))
        }),
    );

    r.record(
        "predecessor_duality",
        n,
        first_failure(n, |h| match x.gate_vertex(h) {
            Err(e) => Some(format!("hyperplane {h}: {e}")),
            Ok((_, below)) => {
                let mut preds = x.predecessors(h).to_vec();
                preds.sort_unstable();
                let inward = x.adjacent_inward_set(&below);
                (preds != inward).then(|| format!("hyperplane {h}: predecessors {preds:?}, inward set {inward:?}"))
            }
        }),
    );

    let ts = triples(vs.len(), seed);
    r.record(
        "median_axioms",
        ts.len(),
        first_failure(ts.len(), |i| {
            let (a, b, c) = (&vs[ts[i].0], &vs[ts[i].1], &vs[ts[i].2]);
            let m = x.median(a, b, c);
            let symmetric = m == x.median(b, a, c) && m == x.median(c, b, a) && m == x.median(a, c, b);
            let in_interval = x.interval(b, c).contains(a);
            let bad = !x.contains(&m) || !symmetric || (in_interval && m != *a);
            bad.then(|| format!("median({a}, {b}, {c}) = {m}"))
        }),
    );

    r.record(
        "distance_is_separation_count",
        ts.len(),
        first_failure(ts.len(), |i| {
            let (a, b, c) = (&vs[ts[i].0], &vs[ts[i].1], &vs[ts[i].2]);
            let separating = x.hyperplanes().filter(|&h| a.contains(h) != b.contains(h)).count();
            let d = x.distance(a, b);
            let bad = d != separating
                || d != x.distance(b, a)
                || (d == 0) != (a == b)
                || d > x.distance(a, c) + x.distance(c, b);
            bad.then(|| format!("d({a}, {b}) = {d}, separating count {separating}"))
        }),
    );

    r.record(
        "predecessors_cross",
        n,
        first_failure(n, |h| {
            let p = x.predecessors(h);
            if p.len() > x.dimension() {
                return Some(format!("hyperplane {h} has {} predecessors, dimension {}", p.len(), x.dimension()));
            }
            pairs(p.len())
                .find(|&(i, j)| x.relation(p[i], p[j]) != Relation::Crosses)
                .map(|(i, j)| format!("predecessors {} and {} of {h} do not cross", p[i], p[j]))
        }),
    );

    r.record(
        "monotone_separation",
        n,
        first_failure(n, |h| {
            let gh = x.gate_vertex(h).ok()?.0.len();
            x.below(h).ones().find_map(|k| {
                let gk = x.gate_vertex(k).ok()?.0.len();
                (gk >= gh).then(|| format!("{k} < {h} but gate depths {gk} >= {gh}"))
            })
        }),
    );
    r.checks
}

fn rank_checks(x: &CubeComplex, ranks: &RankVectors) -> Result<Vec<Check>> {
    let mut r = Recorder { suite: Suite::Rank, checks: Vec::new() };
    let n = x.hyperplane_count();
    let dim = x.dimension();
    let f = flatness(x);
    let all: Vec<HyperplaneId> = x.hyperplanes().collect();
    let nested: Vec<(HyperplaneId, HyperplaneId)> =
        x.hyperplanes().flat_map(|h| x.below(h).ones().map(move |k| (k, h))).collect();

    // Every subset the refinement works on: the whole set at d = D, then
    // each class of a length-j prefix at d = D - j.
    let mut subsets: Vec<(usize, Vec<HyperplaneId>)> = Vec::new();
    for d in (2..=dim).rev() {
        let j = dim - d;
        if j == 0 {
            subsets.push((d, all.clone()));
        } else {
            subsets.extend(ranks.prefixes(j).into_iter().map(|p| (d, ranks.class(&p))));
        }
    }
    let mut cases = 0;
    let mut witness = None;
    for (d, subset) in &subsets {
        let dr = d_ranks(x, *d, subset)?;
        for &(k, h) in &nested {
            if let (Some(rk), Some(rh)) = (dr.get(&k), dr.get(&h)) {
                cases += 1;
                if rk > rh && witness.is_none() {
                    witness = Some(format!("d = {d}: {k} < {h} but ranks {rk} > {rh}"));
                }
            }
        }
    }
    r.record("d_rank_monotone", cases, witness);

    r.record(
        "rank_vector_monotone",
        nested.len(),
        nested
            .iter()
            .find(|&&(k, h)| ranks.get(k) > ranks.get(h))
            .map(|&(k, h)| format!("{k} < {h} but {} > {}", ranks.get(k), ranks.get(h))),
    );

    r.record(
        "unique_equal_rank_predecessor",
        n,
        x.hyperplanes().find_map(|h| {
            let same: Vec<_> = x.predecessors(h).iter().filter(|&&k| ranks.get(k) == ranks.get(h)).collect();
            (same.len() > 1).then(|| format!("hyperplane {h} has equal-rank predecessors {same:?}"))
        }),
    );

    let mut cases = 0;
    let mut witness = None;
    for d in 2..=dim {
        let dr = d_ranks(x, d, &all)?;
        for h in x.hyperplanes() {
            let preds = x.predecessors(h);
            cases += 1;
            if d >= f && preds.iter().any(|k| dr[k] + 1 < dr[&h]) && witness.is_none() {
                witness = Some(format!("d = {d}: a predecessor of {h} has d-rank below {} - 1", dr[&h]));
            }
            if preds.len() == 1 && dr[&preds[0]] != dr[&h] && witness.is_none() {
                witness = Some(format!("d = {d}: {h} differs in rank from its only predecessor {}", preds[0]));
            }
        }
    }
    r.record("predecessor_rank_gap", cases, witness);

    let too_many = x.hyperplanes().find(|&h| x.predecessors(h).len() > f.max(1));
    r.record(
        "flat_predecessor_count",
        n,
        too_many.map(|h| format!("hyperplane {h} has {} predecessors, flatness {f}", x.predecessors(h).len())),
    );

    let mut witness = (f > dim).then(|| format!("flatness {f} exceeds dimension {dim}"));
    for d in (f + 1).max(2)..=dim {
        let entry = dim - d;
        if let Some(h) = x.hyperplanes().find(|&h| ranks.get(h).entries()[entry] != 0) {
            witness.get_or_insert_with(|| format!("hyperplane {h} has nonzero {d}-rank in a {f}-flat complex"));
        }
    }
    r.record("flatness_bounds", n, witness);
    Ok(r.checks)
}

/// A uniformly random linear extension of `<`.
fn random_linear_extension(x: &CubeComplex, rng: &mut ChaCha8Rng) -> Vec<HyperplaneId> {
    let mut placed = vec![false; x.hyperplane_count()];
    let mut order = Vec::new();
    while order.len() < x.hyperplane_count() {
        let ready: Vec<HyperplaneId> =
            x.hyperplanes().filter(|&h| !placed[h] && x.below(h).ones().all(|k| placed[k])).collect();
        let h = *ready.choose(rng).expect("the order is acyclic");
        placed[h] = true;
        order.push(h);
    }
    order
}

/// Vertices on the far side of `h` as seen from `from`.
fn far_side(x: &CubeComplex, from: &Vertex, h: HyperplaneId) -> Vec<usize> {
    (0..x.vertex_count()).filter(|&i| x.vertices()[i].contains(h) != from.contains(h)).collect()
}

fn is_strict_subset(a: &[usize], b: &[usize]) -> bool {
    a.len() < b.len() && a.iter().all(|i| b.binary_search(i).is_ok())
}

/// A witness if `chains` is not a valid chain cover of `F_a Δ F_b`.
fn chain_cover_problem(x: &CubeComplex, a: &Vertex, b: &Vertex, chains: &[Vec<HyperplaneId>]) -> Option<String> {
    let mut flat: Vec<HyperplaneId> = chains.iter().flatten().copied().collect();
    flat.sort_unstable();
    if flat != a.symmetric_difference(b) {
        return Some(format!("chains {chains:?} do not partition the hyperplanes separating {a} and {b}"));
    }
    if chains.len() > x.dimension() {
        return Some(format!("{} chains between {a} and {b}, dimension {}", chains.len(), x.dimension()));
    }
    for chain in chains {
        for w in chain.windows(2) {
            if !is_strict_subset(&far_side(x, a, w[1]), &far_side(x, a, w[0])) {
                return Some(format!("chain {chain:?} from {a} is not nested at {} then {}", w[0], w[1]));
            }
        }
    }
    None
}

fn colouring_checks(x: &CubeComplex, ranks: &RankVectors, colouring: &Colouring, seed: u64) -> Result<Vec<Check>> {
    let mut r = Recorder { suite: Suite::Colouring, checks: Vec::new() };
    let n = x.hyperplane_count();
    let bound = control_bound(x);
    r.record(
        "control_bound",
        1,
        (colouring.control() > bound).then(|| format!("control {} exceeds bound {bound}", colouring.control())),
    );

    r.record(
        "property_1",
        n,
        x.hyperplanes().find_map(|h| {
            let preds = x.predecessors(h);
            let same = preds.iter().any(|&k| colouring.colour(k) == colouring.colour(h));
            let other = preds.iter().any(|&k| colouring.colour(k) != colouring.colour(h));
            (same && !other).then(|| format!("every predecessor of {h} shares its colour"))
        }),
    );
    r.record(
        "property_2",
        n,
        x.hyperplanes().find_map(|h| {
            x.predecessors(h)
                .iter()
                .find(|&&k| ranks.get(k) == ranks.get(h) && colouring.colour(k) == colouring.colour(h))
                .map(|k| format!("{k} and {h} share rank vector {} and colour", ranks.get(h)))
        }),
    );

    let paths = monochromatic_inward_paths(x, colouring, 5_000);
    let limit = 3usize.pow(flatness(x).saturating_sub(1) as u32);
    let mut bound_witness = None;
    let mut values_witness = None;
    for p in &paths {
        let audit = boundness_audit(x, colouring, ranks, p)?;
        if !(audit.is_geodesic && audit.is_inward && audit.is_monochromatic && audit.is_totally_bound) {
            bound_witness.get_or_insert_with(|| format!("path {p:?}: {audit:?}"));
        }
        let crossed: Vec<HyperplaneId> = p.windows(2).map(|w| w[0].symmetric_difference(&w[1])[0]).collect();
        let values = max_chain_rank_values(x, ranks, &crossed);
        if values > limit {
            values_witness.get_or_insert_with(|| format!("path {p:?} carries {values} rank values on a chain"));
        }
    }
    r.record("monochromatic_paths_totally_bound", paths.len(), bound_witness);
    r.record("chain_rank_values", paths.len(), values_witness);

    let vs = x.vertices();
    let vp: Vec<(usize, usize)> = pairs(vs.len()).collect();
    r.record(
        "chain_partition",
        vp.len(),
        first_failure(vp.len(), |i| {
            let (a, b) = (&vs[vp[i].0], &vs[vp[i].1]);
            chain_cover_problem(x, a, b, &chain_partition(x, a, b))
        }),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = 5;
    r.record(
        "extension_independent",
        trials,
        (0..trials).find_map(|_| {
            let order = random_linear_extension(x, &mut rng);
            let other = colour_along(x, ranks, &order);
            (other.colours() != colouring.colours()).then(|| format!("extension {order:?} gives {:?}", other.colours()))
        }),
    );
    Ok(r.checks)
}

/// A random point of the cube over `x`'s hyperplanes, each coordinate
/// nonzero with probability 1/2 and of denominator at most 8.
pub fn random_point(x: &CubeComplex, rng: &mut ChaCha8Rng) -> CubePoint {
    let mut coords = Vec::new();
    for h in x.hyperplanes() {
        if rng.gen_bool(0.5) {
            let q = rng.gen_range(1..=8i64);
            coords.push((h, rational::ratio(rng.gen_range(0..=q), q)));
        }
    }
    CubePoint::new(coords).expect("coordinates lie in [0, 1]")
}

/// Each sampled point is compared with this many random partners.
const PARTNERS: usize = 5;

fn partners(count: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    if count < 2 {
        return Vec::new();
    }
    (0..count)
        .flat_map(|i| {
            (0..PARTNERS)
                .map(|_| {
                    let j = rng.gen_range(0..count - 1);
                    (i, if j >= i { j + 1 } else { j })
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Nested pairs shuffled within each run of equal length.
fn shuffled_less_order(x: &CubeComplex, rng: &mut ChaCha8Rng) -> Vec<(HyperplaneId, HyperplaneId)> {
    let mut order = less_pairs(x);
    let mut start = 0;
    while start < order.len() {
        let len = x.pair_length(order[start].0, order[start].1);
        let end = start + order[start..].iter().take_while(|&&(h, k)| x.pair_length(h, k) == len).count();
        order[start..end].shuffle(rng);
        start = end;
    }
    order
}

fn geometry_checks(x: &CubeComplex, samples: usize, seed: u64) -> Result<Vec<Check>> {
    let mut r = Recorder { suite: Suite::Geometry, checks: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<CubePoint> = (0..samples).map(|_| random_point(x, &mut rng)).collect();
    let partner_pairs = partners(samples, &mut rng);
    let projector = Projector::new(x);
    let stage_i: Vec<CubePoint> = points.par_iter().map(|p| projector.project_intervalic(p)).collect::<Result<_>>()?;
    let full: Vec<CubePoint> = stage_i.par_iter().map(|p| projector.project_actual(p)).collect::<Result<_>>()?;

    r.record(
        "range",
        samples,
        first_failure(samples, |i| {
            let class = classify_point(x, &full[i]).ok()?;
            (!class.in_complex()).then(|| format!("P({:?}) = {:?} is not in the complex", points[i], full[i]))
        }),
    );
    r.record(
        "idempotent",
        samples,
        first_failure(samples, |i| match projector.project(&full[i]) {
            Ok(again) if again == full[i] => None,
            other => Some(format!("P(P(p)) = {other:?} differs from P(p) = {:?}", full[i])),
        }),
    );
    r.record(
        "norm_preserved_on_intervalic",
        samples,
        first_failure(samples, |i| {
            (full[i].norm() != stage_i[i].norm())
                .then(|| format!("|P_A({:?})| = {} but |p| = {}", stage_i[i], full[i].norm(), stage_i[i].norm()))
        }),
    );
    let contractive = |name_pts: &[CubePoint], name_out: &[CubePoint], i: usize| {
        let (a, b) = partner_pairs[i];
        let before = name_pts[a].l1_distance(&name_pts[b]);
        let after = name_out[a].l1_distance(&name_out[b]);
        (after > before).then(|| format!("{:?}, {:?}: distance {} grew to {}", name_pts[a], name_pts[b], rational::format(&before), rational::format(&after)))
    };
    r.record("contractive", partner_pairs.len(), first_failure(partner_pairs.len(), |i| contractive(&points, &full, i)));
    r.record("contractive_intervalic_stage", partner_pairs.len(), first_failure(partner_pairs.len(), |i| contractive(&points, &stage_i, i)));
    r.record("contractive_actual_stage", partner_pairs.len(), first_failure(partner_pairs.len(), |i| contractive(&stage_i, &full, i)));

    let mut elementary = None;
    for &(a, b) in &partner_pairs {
        let (p, q) = (&points[a], &points[b]);
        for (h, k) in [(0, 1), (1, 2), (0, 2)].into_iter().filter(|&(_, k)| k < x.hyperplane_count()) {
            let (u, v) = ((p.get(h), p.get(k)), (q.get(h), q.get(k)));
            let before = (&u.0 - &v.0).abs() + (&u.1 - &v.1).abs();
            for f in [p_op as fn(&Rational, &Rational) -> (Rational, Rational), p_less] {
                let (fu, fv) = (f(&u.0, &u.1), f(&v.0, &v.1));
                if (&fu.0 - &fv.0).abs() + (&fu.1 - &fv.1).abs() > before {
                    elementary.get_or_insert_with(|| format!("pair map expands ({u:?}) vs ({v:?})"));
                }
            }
        }
    }
    r.record("elementary_maps_contractive", partner_pairs.len(), elementary);

    let vs = x.vertices();
    r.record(
        "identity_on_vertices",
        vs.len(),
        first_failure(vs.len(), |i| {
            let e = embed(&vs[i]);
            (projector.project(&e).ok()? != e).then(|| format!("P moves vertex {}", vs[i]))
        }),
    );
    let vp: Vec<(usize, usize)> = pairs(vs.len()).collect();
    r.record(
        "vertex_isometry",
        vp.len(),
        first_failure(vp.len(), |i| {
            let (a, b) = (&vs[vp[i].0], &vs[vp[i].1]);
            let d = embed(a).l1_distance(&embed(b));
            (d != Rational::from_integer(x.distance(a, b).into()))
                .then(|| format!("|{a} - {b}| = {} but d = {}", rational::format(&d), x.distance(a, b)))
        }),
    );

    let mut op_order = opposite_pairs(x);
    op_order.shuffle(&mut rng);
    let reordered = Projector::with_families(x, PairFamily::opposite_with_order(x, op_order)?, PairFamily::less(x));
    r.record(
        "any_opposite_order_retracts",
        samples,
        first_failure(samples, |i| match reordered.project(&points[i]) {
            Ok(q) => {
                let ok = classify_point(x, &q).map(|c| c.in_complex()).unwrap_or(false)
                    && reordered.project(&q).as_ref() == Ok(&q);
                (!ok).then(|| format!("reordered P({:?}) = {q:?} is not a retraction value", points[i]))
            }
            Err(e) => Some(format!("reordered P({:?}): {e}", points[i])),
        }),
    );
    let shuffled = Projector::with_families(x, PairFamily::opposite(x), PairFamily::less_with_order(x, shuffled_less_order(x, &mut rng))?);
    r.advise(
        "actual_stage_order_independent",
        samples,
        first_failure(samples, |i| match shuffled.project_actual(&stage_i[i]) {
            Ok(q) if q == full[i] => None,
            Ok(q) => Some(format!("P_A({:?}) is {q:?} under a shuffled order, {:?} canonically", stage_i[i], full[i])),
            Err(e) => Some(format!("P_A({:?}) under a shuffled order: {e}", stage_i[i])),
        }),
    );
    Ok(r.checks)
}

fn contraction_checks(x: &CubeComplex, colouring: &Colouring, samples: usize, seed: u64) -> Result<Vec<Check>> {
    let mut r = Recorder { suite: Suite::Contraction, checks: Vec::new() };
    let l = colouring.control();
    if x.hyperplane_count() == 0 {
        r.record("nothing_to_contract", 0, None);
        return Ok(r.checks);
    }
    let map = ContractionMap::new(x, colouring, l)?;
    let q = map.quotient();
    let factor = map.factor();
    let vs = x.vertices();
    let embedded: Vec<CubePoint> = vs.iter().map(embed).collect();
    let psi: Vec<CubePoint> = embedded.iter().map(|p| map.psi(p)).collect::<Result<_>>()?;
    let phi = map.phi_all(&embedded)?;
    let vp: Vec<(usize, usize)> = pairs(vs.len()).collect();
    let lipschitz = |images: &[CubePoint], i: usize| {
        let (a, b) = vp[i];
        let d = Rational::from_integer(x.distance(&vs[a], &vs[b]).into());
        let gap = images[a].l1_distance(&images[b]);
        (gap > &factor * &d).then(|| format!("{} and {}: image distance {} > {} * {d}", vs[a], vs[b], rational::format(&gap), rational::format(&factor)))
    };
    r.record("psi_lipschitz", vp.len(), first_failure(vp.len(), |i| lipschitz(&psi, i)));
    r.record("phi_lipschitz", vp.len(), first_failure(vp.len(), |i| lipschitz(&phi, i)));

    r.record(
        "weight_column_bound",
        x.hyperplane_count(),
        x.hyperplanes().find_map(|k| {
            let s = map.column_sum(k);
            (s > factor).then(|| format!("column {k} sums to {}", rational::format(&s)))
        }),
    );

    let fixed: Vec<usize> = (0..vs.len())
        .filter(|&i| x.adjacent_inward_set(&vs[i]).iter().all(|&h| colouring.colour(h) == 1))
        .collect();
    r.record(
        "fixed_vertex_identity",
        fixed.len(),
        first_failure(fixed.len(), |i| {
            let v = fixed[i];
            let target = embed(q.image(v));
            (phi[v] != target).then(|| format!("phi({}) = {:?}, expected {:?}", vs[v], phi[v], target))
        }),
    );
    r.record(
        "descend_zero",
        vs.len(),
        first_failure(vs.len(), |i| {
            let end = descend_zero(x, colouring, &vs[i]);
            let stuck = x.adjacent_inward_set(&end).iter().any(|&h| colouring.colour(h) == 0);
            let steps = x.distance(&vs[i], &end);
            (stuck || steps > l || !end.ids().all(|h| vs[i].contains(h)))
                .then(|| format!("descend_zero({}) = {end} after {steps} steps", vs[i]))
        }),
    );

    let diameter = x.diameter();
    let audits: Vec<_> = (0..=diameter).map(|radius| cobornology_audit(x, q, l, radius)).collect();
    r.record(
        "pi_cobornologous",
        audits.len(),
        audits.iter().find(|a| !a.pass).map(|a| {
            format!("R = {}: source distance {} exceeds {}", a.radius, a.max_source_distance, a.bound)
        }),
    );

    let shrinks = q.quotient.hyperplane_count() < x.hyperplane_count();
    let mut witness = (q.quotient.dimension() > x.dimension())
        .then(|| format!("quotient dimension {} exceeds {}", q.quotient.dimension(), x.dimension()));
    if !shrinks {
        witness.get_or_insert_with(|| "quotient keeps every hyperplane".to_string());
    }
    r.record("quotient_shrinks", 1, witness);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let projector = Projector::new(x);
    let inside: Vec<CubePoint> =
        (0..samples).map(|_| projector.project(&random_point(x, &mut rng))).collect::<Result<_>>()?;
    let support_problem = |p: &CubePoint, image: &CubePoint| {
        let expected: Vec<HyperplaneId> = p.support().filter_map(|h| q.quotient_id(h)).collect();
        let got: Vec<HyperplaneId> = image.support().collect();
        (expected != got).then(|| format!("support of psi({p:?}) is {got:?}, expected {expected:?}"))
    };
    let sampled_psi: Vec<CubePoint> = inside.iter().map(|p| map.psi(p)).collect::<Result<_>>()?;
    let mut witness = (0..vs.len()).find_map(|i| support_problem(&embedded[i], &psi[i]));
    if witness.is_none() {
        witness = (0..samples).find_map(|i| support_problem(&inside[i], &sampled_psi[i]));
    }
    r.record("support_identity", vs.len() + samples, witness);

    let sampled_phi = map.phi_all(&inside)?;
    let sp = partners(samples, &mut rng);
    r.record(
        "phi_lipschitz_on_points",
        sp.len(),
        first_failure(sp.len(), |i| {
            let (a, b) = sp[i];
            let d = inside[a].l1_distance(&inside[b]);
            let gap = sampled_phi[a].l1_distance(&sampled_phi[b]);
            (gap > &factor * &d).then(|| format!("{:?}, {:?}: {} > {} * {}", inside[a], inside[b], rational::format(&gap), rational::format(&factor), rational::format(&d)))
        }),
    );
    let one = Rational::one();
    r.record(
        "phi_lands_in_quotient",
        samples,
        first_failure(samples, |i| {
            let ok = classify_point(&q.quotient, &sampled_phi[i]).map(|c| c.in_complex()).unwrap_or(false)
                && sampled_phi[i].coords().all(|(_, v)| *v <= one);
            (!ok).then(|| format!("phi({:?}) = {:?}", inside[i], sampled_phi[i]))
        }),
    );
    Ok(r.checks)
}

/// The complexes every acceptance criterion is checked on, by name.
pub fn suite_complexes() -> Vec<(String, CubeComplex)> {
    let mut out: Vec<(String, CubeComplex)> = (1..=6).map(|n| (format!("path({n})"), path(n))).collect();
    out.push(("tripod".into(), tripod()));
    let trees: [&[usize]; 5] = [
        &[0, 0, 0, 0, 0, 0, 0],
        &[0, 1, 2, 3, 2, 1, 0, 7, 7, 9, 9],
        &[0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6],
        &[0, 1, 1, 3, 3, 3, 6, 6, 0, 9, 10, 11, 12, 13, 9, 15, 16, 16, 18],
        &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 0],
    ];
    for (i, parents) in trees.iter().enumerate() {
        out.push((format!("tree{}({} vertices)", i + 1, parents.len() + 1), tree(parents).expect("suite tree is valid")));
    }
    for dims in [&[3, 3][..], &[4, 4], &[3, 3, 3]] {
        out.push((format!("grid{dims:?}"), grid(dims).expect("suite grid is valid")));
    }
    out.push(("ell_grid".into(), ell_grid()));
    let shapes: [&[usize]; 5] = [&[4, 4, 3], &[5, 4, 3], &[3, 3, 3, 3], &[4, 4, 4], &[5, 5, 3]];
    for seed in 0..20u64 {
        let dims = shapes[seed as usize % shapes.len()];
        let samples = 4 + (seed as usize % 5);
        let x = random_median(dims, samples, seed).expect("random median is valid");
        out.push((format!("random_median({dims:?}, {samples}, seed {seed})"), x));
    }
    out
}
