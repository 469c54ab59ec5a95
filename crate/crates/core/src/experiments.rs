//! Reproducible experiment suites.
//!
//! Each function runs one computation end to end (encode, solve, decode,
//! re-check with the independent predicates) and returns plain data; the
//! acceptance target and the `reproduce` command format the results.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::CATALOG;
use crate::encode::{CnfInstance, EncodeError, EncodeOptions, Obstructions};
use crate::geometry::{random_general_position, rotation_from_points};
use crate::hamconvex::{
    check_nested_lemma, construct_unverified, nested_lemma_instances, plane_hc_convex_with, plane_hp_with_edge, HamError, NestedLemma,
};
use crate::oracle::{brute_force_plane_hamiltonian, Mode};
use crate::predicates::{
    all_edges, contains_pi4, crosses, crossing_relation, empty_triangles, has_uncrossed_edge, is_convex,
    is_drawable, is_hconvex, CrossingRelation,
};
use crate::solve::{self, decode, decoded_empty_triangles, enumerate_all, Budget, SolveError, Status};
use crate::system::{all_pre_rotation_systems, Edge, RotationSystem};

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Ham(#[from] HamError),
    #[error("{0}")]
    Check(String),
}

/// The property blocks of an enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Property {
    /// Any pre-rotation system.
    PreRotation,
    /// No 4-element obstruction.
    Pi4Free,
    Drawable,
    Convex,
    HConvex,
}

impl Property {
    pub const ALL: [Property; 5] =
        [Property::PreRotation, Property::Pi4Free, Property::Drawable, Property::Convex, Property::HConvex];

    pub fn options(self) -> EncodeOptions {
        let base = EncodeOptions::default();
        match self {
            Property::PreRotation => EncodeOptions { obstructions: Obstructions::None, ..base },
            Property::Pi4Free => EncodeOptions { obstructions: Obstructions::Pi4Only, ..base },
            Property::Drawable => base,
            Property::Convex => EncodeOptions { convex: true, ..base },
            Property::HConvex => EncodeOptions { convex: true, hconvex: true, ..base },
        }
    }

    /// The same property decided by the obstruction predicates.
    pub fn holds(self, rs: &RotationSystem) -> bool {
        match self {
            Property::PreRotation => true,
            Property::Pi4Free => !contains_pi4(rs),
            Property::Drawable => is_drawable(rs),
            Property::Convex => is_drawable(rs) && is_convex(rs).unwrap(),
            Property::HConvex => is_drawable(rs) && is_hconvex(rs).unwrap(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::PreRotation => "pre-rotation",
            Property::Pi4Free => "pi4-free",
            Property::Drawable => "drawable",
            Property::Convex => "convex",
            Property::HConvex => "h-convex",
        }
    }
}

/// Canonical systems with the property, by SAT enumeration.
pub fn enumerate_property(n: usize, prop: Property) -> Result<Vec<RotationSystem>, ExperimentError> {
    let inst = CnfInstance::new(n, prop.options())?;
    let mut out = Vec::new();
    enumerate_all(&inst, true, Budget::unlimited(), |rs| {
        out.push(rs.clone());
        true
    })?;
    out.sort();
    Ok(out)
}

/// Canonical systems with the property, by listing every pre-rotation
/// system (`n <= 6`).
pub fn brute_force_property(n: usize, prop: Property) -> Vec<RotationSystem> {
    let set: BTreeSet<RotationSystem> =
        all_pre_rotation_systems(n).into_iter().filter(|r| prop.holds(r)).map(|r| r.canonical_form()).collect();
    set.into_iter().collect()
}

/// Solves an instance with the embedded solver.
pub fn solve_status(inst: &CnfInstance) -> Result<(Status, Option<RotationSystem>), ExperimentError> {
    let res = solve::solve(inst, Budget::unlimited())?;
    let rs = match &res.model {
        Some(m) => Some(decode(inst, m)?),
        None => None,
    };
    Ok((res.status, rs))
}

fn base_options(convex: bool) -> EncodeOptions {
    EncodeOptions { convex, ..EncodeOptions::default() }
}

/// Drawable systems (convex ones if `convex`) without a plane Hamiltonian
/// cycle.
pub fn forbid_hc(n: usize, convex: bool) -> Result<(Status, Option<RotationSystem>), ExperimentError> {
    let mut inst = CnfInstance::new(n, base_options(convex))?;
    inst.forbid_plane_hamiltonian_cycle()?;
    solve_status(&inst)
}

/// Drawable systems without a plane Hamiltonian subdrawing on `2n-3` edges.
pub fn forbid_hc_2n3(n: usize, convex: bool) -> Result<(Status, Option<RotationSystem>), ExperimentError> {
    let mut inst = CnfInstance::new(n, base_options(convex))?;
    inst.forbid_plane_hamiltonian_2n3()?;
    solve_status(&inst)
}

/// Drawable systems in which every edge is crossed; a witness is re-checked
/// with [`has_uncrossed_edge`].
pub fn all_edges_crossed(n: usize, convex: bool) -> Result<(Status, Option<RotationSystem>), ExperimentError> {
    let mut inst = CnfInstance::new(n, base_options(convex))?;
    inst.assert_all_edges_crossed()?;
    let (status, rs) = solve_status(&inst)?;
    if let Some(r) = &rs {
        if has_uncrossed_edge(r) {
            return Err(ExperimentError::Check(format!("witness {r} has an uncrossed edge")));
        }
    }
    Ok((status, rs))
}

/// Outcome of an empty-triangle query.
#[derive(Clone, Debug, Serialize)]
pub struct EmptyTriangleRun {
    pub status: Status,
    /// Empty triangles of the witness, counted by the encoding and by the
    /// side predicates.
    pub counted: Option<(usize, usize)>,
}

/// Drawable systems with at most `k` empty triangles.
pub fn empty_triangles_atmost(n: usize, k: usize) -> Result<EmptyTriangleRun, ExperimentError> {
    let mut inst = CnfInstance::new(n, EncodeOptions::default())?;
    inst.assert_empty_triangles_atmost(k)?;
    let res = solve::solve(&inst, Budget::unlimited())?;
    let counted = match &res.model {
        None => None,
        Some(m) => {
            let rs = decode(&inst, m)?;
            Some((decoded_empty_triangles(&inst, m).len(), empty_triangles(&rs).unwrap().len()))
        }
    };
    Ok(EmptyTriangleRun { status: res.status, counted })
}

/// Labeled systems without the 4-element obstruction with equal crossing
/// pairs are equal or mirror images.
pub fn check_crossing_pairs(n: usize) -> bool {
    let mut groups: BTreeMap<Vec<(Edge, Edge)>, Vec<RotationSystem>> = BTreeMap::new();
    for rs in all_pre_rotation_systems(n) {
        if contains_pi4(&rs) {
            continue;
        }
        let rel: CrossingRelation = crossing_relation(&rs).unwrap();
        groups.entry(rel.pairs().collect()).or_default().push(rs);
    }
    groups.values().all(|g| match g.as_slice() {
        [_] => true,
        [a, b] => &a.reflect() == b,
        _ => false,
    })
}

/// Nested lemma part on every given system.
pub fn nested_lemma_holds(systems: &[RotationSystem], part: NestedLemma) -> bool {
    systems.par_iter().all(|rs| check_nested_lemma(rs, part))
}

/// Total number of configurations the lemma part was checked on, or `None`
/// on a violation.
pub fn nested_lemma_instances_total(systems: &[RotationSystem], part: NestedLemma) -> Option<usize> {
    systems.par_iter().map(|rs| nested_lemma_instances(rs, part)).sum()
}

/// Summary of running the cycle construction on many systems.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Algorithm1Summary {
    pub systems: usize,
    pub runs: usize,
    pub hconvex_systems: usize,
    pub max_bad_edges: usize,
    /// `(system, star, reason)` of failed runs.
    pub failures: Vec<(String, usize, String)>,
}

/// Runs the construction for every system and star vertex.
pub fn algorithm1_on(systems: &[RotationSystem]) -> Algorithm1Summary {
    let per: Vec<Algorithm1Summary> = systems
        .par_iter()
        .map(|rs| {
            let h = is_hconvex(rs).unwrap_or(false);
            let mut s = Algorithm1Summary { systems: 1, hconvex_systems: h as usize, ..Default::default() };
            for star in 0..rs.n() {
                s.runs += 1;
                match plane_hc_convex_with(rs, star, Some(h)) {
                    Ok(hc) => s.max_bad_edges = s.max_bad_edges.max(hc.bad_edges),
                    Err(e) => s.failures.push((crate::corpus::to_json_line(rs, None), star + 1, e.to_string())),
                }
            }
            s
        })
        .collect();
    per.into_iter().fold(Algorithm1Summary::default(), |mut acc, s| {
        acc.systems += s.systems;
        acc.runs += s.runs;
        acc.hconvex_systems += s.hconvex_systems;
        acc.max_bad_edges = acc.max_bad_edges.max(s.max_bad_edges);
        acc.failures.extend(s.failures);
        acc
    })
}

/// Timing of the construction on random point sets.
#[derive(Clone, Debug, Serialize)]
pub struct ScalingRun {
    pub n: usize,
    pub stars: usize,
    pub verified: bool,
    /// Best of a few repetitions, construction only.
    pub construction: Duration,
}

/// Constructs cycles on random point sets of the given sizes for `stars`
/// star vertices each, verifying every result.
pub fn algorithm1_scaling(sizes: &[usize], stars: usize, seed: u64) -> Result<Vec<ScalingRun>, ExperimentError> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for &n in sizes {
        let pts = random_general_position(n, 1 << 20, &mut rng);
        let rs = rotation_from_points(&pts).map_err(|e| ExperimentError::Check(e.to_string()))?;
        let chosen: Vec<usize> = (0..stars.min(n)).map(|i| i * n / stars.min(n)).collect();
        let mut verified = true;
        for &star in &chosen {
            let hc = plane_hc_convex_with(&rs, star, Some(true))?;
            verified &= hc.report.passed();
        }
        let mut best = Duration::MAX;
        for _ in 0..5 {
            let t = Instant::now();
            for &star in &chosen {
                std::hint::black_box(construct_unverified(&rs, star)?);
            }
            best = best.min(t.elapsed());
        }
        out.push(ScalingRun { n, stars: chosen.len(), verified, construction: best });
    }
    Ok(out)
}

/// Summary of the prescribed-edge path construction.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Theorem2Summary {
    pub systems: usize,
    pub edges: usize,
    pub failures: Vec<(String, Edge, String)>,
    /// Edges where the exhaustive search found no path (should be none).
    pub oracle_disagreements: usize,
}

pub fn theorem2_on(systems: &[RotationSystem]) -> Theorem2Summary {
    let per: Vec<Theorem2Summary> = systems
        .par_iter()
        .map(|rs| {
            let mut s = Theorem2Summary { systems: 1, ..Default::default() };
            for e in all_edges(rs.n()) {
                s.edges += 1;
                if let Err(err) = plane_hp_with_edge(rs, e) {
                    s.failures.push((crate::corpus::to_json_line(rs, None), e, err.to_string()));
                }
                if brute_force_plane_hamiltonian(rs, Mode::Path, Some(e)).ok().flatten().is_none() {
                    s.oracle_disagreements += 1;
                }
            }
            s
        })
        .collect();
    per.into_iter().fold(Theorem2Summary::default(), |mut acc, s| {
        acc.systems += s.systems;
        acc.edges += s.edges;
        acc.failures.extend(s.failures);
        acc.oracle_disagreements += s.oracle_disagreements;
        acc
    })
}

/// Non-star edges that cross no star edge.
pub fn star_free_edges(rs: &RotationSystem, star: usize) -> Vec<Edge> {
    let n = rs.n();
    all_edges(n)
        .into_iter()
        .filter(|e| !e.contains(star))
        .filter(|&e| (0..n).filter(|&w| w != star).all(|w| !crosses(rs, e, Edge::new(w, star))))
        .collect()
}

/// The three small counterexamples.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexamples {
    /// Plane Hamiltonian cycle of the convex pentagon through `{1,3}`.
    pub c5_cycle_13: Option<Vec<usize>>,
    /// Plane Hamiltonian path of the twisted drawing through `{1,5}`.
    pub t5_path_15: Option<Vec<usize>>,
    /// Star-free non-star edges of the twisted drawing around vertex 5, for
    /// the catalog labeling and the canonical labeling of the convexity
    /// obstruction it is isomorphic to.
    pub t5_star5_free: Vec<Edge>,
    pub convex5_1_star5_free: Vec<Edge>,
}

pub fn counterexamples() -> Counterexamples {
    let c = &*CATALOG;
    Counterexamples {
        c5_cycle_13: brute_force_plane_hamiltonian(&c.convex_c5, Mode::Cycle, Some(Edge::labeled(1, 3))).unwrap(),
        t5_path_15: brute_force_plane_hamiltonian(&c.twisted_t5, Mode::Path, Some(Edge::labeled(1, 5))).unwrap(),
        t5_star5_free: star_free_edges(&c.twisted_t5, 4),
        convex5_1_star5_free: star_free_edges(&c.convex5_1, 4),
    }
}

/// Canonical convex systems, enumerated once per `n` and shared between
/// suites.
pub fn convex_systems(n: usize) -> Result<Arc<Vec<RotationSystem>>, ExperimentError> {
    static CACHE: Mutex<BTreeMap<usize, Arc<Vec<RotationSystem>>>> = Mutex::new(BTreeMap::new());
    if let Some(v) = CACHE.lock().unwrap().get(&n) {
        return Ok(v.clone());
    }
    let v = Arc::new(enumerate_property(n, Property::Convex)?);
    CACHE.lock().unwrap().insert(n, v.clone());
    Ok(v)
}

/// Result of one acceptance criterion.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

struct Tally {
    ok: bool,
    parts: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { ok: true, parts: Vec::new() }
    }

    fn note(&mut self, ok: bool, text: impl Into<String>) {
        self.ok &= ok;
        let text = text.into();
        self.parts.push(if ok { text } else { format!("{text} [FAIL]") });
    }
}

const MINUTE: Duration = Duration::from_secs(60);

/// Number of acceptance criteria.
pub const CRITERIA: usize = 13;

pub fn criterion_title(id: usize) -> &'static str {
    match id {
        1 => "classification counts 3/7/5/102",
        2 => "two-level drawability agreement n=5,6",
        3 => "no plane-HC-free drawing for n=3..8",
        4 => "2n-3 Hamiltonian subdrawing for n=4..7",
        5 => "uncrossed edges: aec UNSAT n<=7, SAT n=8, convex UNSAT n=8",
        6 => "empty triangles: 2n-5 UNSAT, 2n-4 SAT for n=4..7",
        7 => "nested bad edges lemma",
        8 => "cycle construction on convex n<=8 and geometric n=100..400",
        9 => "prescribed-edge Hamiltonian paths, convex n<=7",
        10 => "crossing pairs determine the system up to reflection, n=5",
        11 => "SAT enumeration equals brute force at n=4,5",
        12 => "fixed-graph planarity of K4, K5, K3,3",
        13 => "small counterexamples C5 / T5",
        _ => "unknown criterion",
    }
}

fn criterion_limit(id: usize) -> Option<Duration> {
    match id {
        1 => Some(5 * MINUTE),
        2 => Some(30 * MINUTE),
        5 | 6 | 7 => Some(120 * MINUTE),
        _ => None,
    }
}

/// Runs one acceptance criterion. Errors count as failures.
pub fn run_criterion(id: usize) -> Check {
    let start = Instant::now();
    let mut t = Tally::new();
    let res = match id {
        1 => classification(&mut t),
        2 => drawability_agreement(&mut t),
        3 => rafla(&mut t, 3..=8),
        4 => hc_2n3(&mut t, 4..=7),
        5 => uncrossed(&mut t),
        6 => empty_triangles_small(&mut t, 4..=7),
        7 => nested(&mut t),
        8 => algorithm1(&mut t),
        9 => theorem2(&mut t),
        10 => {
            t.note(check_crossing_pairs(4), "n=4");
            t.note(check_crossing_pairs(5), "n=5");
            Ok(())
        }
        11 => oracle_equivalence(&mut t),
        12 => planarity(&mut t),
        13 => small_counterexamples(&mut t),
        _ => Err(ExperimentError::Check(format!("no criterion {id}"))),
    };
    if let Err(e) = res {
        t.note(false, format!("error: {e}"));
    }
    let elapsed = start.elapsed();
    let limit = criterion_limit(id);
    if let Some(l) = limit {
        t.note(elapsed <= l, format!("time {:.1}s (limit {}s)", elapsed.as_secs_f64(), l.as_secs()));
    }
    Check { id, title: criterion_title(id), passed: t.ok, detail: t.parts.join("; "), elapsed, limit }
}

fn classification(t: &mut Tally) -> Result<(), ExperimentError> {
    for (n, p, want) in [
        (4, Property::PreRotation, 3),
        (5, Property::Pi4Free, 7),
        (5, Property::Drawable, 5),
        (6, Property::Drawable, 102),
    ] {
        let got = enumerate_property(n, p)?.len();
        t.note(got == want, format!("n={n} {}: {got}", p.name()));
    }
    Ok(())
}

fn drawability_agreement(t: &mut Tally) -> Result<(), ExperimentError> {
    // all 4-obstruction-free systems at n = 5, all drawable ones at n = 6
    for (n, prop, want_sat, want_unsat) in [(5, Property::Pi4Free, 5, 2), (6, Property::Drawable, 102, 0)] {
        let systems = enumerate_property(n, prop)?;
        let verdicts: Vec<Result<(bool, bool), ExperimentError>> = systems
            .par_iter()
            .map(|rs| {
                let sat = crate::draw::drawability_witness(rs)
                    .map_err(|e| ExperimentError::Check(e.to_string()))?
                    .map(|p| {
                        let crossings = crossing_relation(rs).unwrap().len();
                        p.num_edges() == n * (n - 1) / 2 + 2 * crossings
                    });
                Ok(match sat {
                    Some(identity) => (true, identity && is_drawable(rs)),
                    None => (false, !is_drawable(rs)),
                })
            })
            .collect();
        let mut sat = 0;
        let mut agree = true;
        for v in verdicts {
            let (s, a) = v?;
            sat += s as usize;
            agree &= a;
        }
        t.note(
            agree && sat == want_sat && systems.len() - sat == want_unsat,
            format!("n={n}: {sat} SAT / {} UNSAT, agreement {agree}", systems.len() - sat),
        );
    }
    Ok(())
}

fn unsat_range(
    t: &mut Tally,
    label: &str,
    range: std::ops::RangeInclusive<usize>,
    f: impl Fn(usize) -> Result<(Status, Option<RotationSystem>), ExperimentError>,
) -> Result<(), ExperimentError> {
    for n in range {
        let s = Instant::now();
        let (status, _) = f(n)?;
        t.note(status == Status::Unsat, format!("{label} n={n}: {status:?} ({:.1}s)", s.elapsed().as_secs_f64()));
    }
    Ok(())
}

pub fn rafla_range(range: std::ops::RangeInclusive<usize>) -> Check {
    run_custom("forbid plane Hamiltonian cycle", |t| rafla(t, range))
}

pub fn hc_2n3_range(range: std::ops::RangeInclusive<usize>) -> Check {
    run_custom("forbid plane Hamiltonian 2n-3 subdrawing", |t| hc_2n3(t, range))
}

pub fn empty_triangles_range(range: std::ops::RangeInclusive<usize>) -> Check {
    run_custom("empty triangles 2n-5 / 2n-4", |t| empty_triangles_small(t, range))
}

fn run_custom(title: &'static str, f: impl FnOnce(&mut Tally) -> Result<(), ExperimentError>) -> Check {
    let start = Instant::now();
    let mut t = Tally::new();
    if let Err(e) = f(&mut t) {
        t.note(false, format!("error: {e}"));
    }
    Check { id: 0, title, passed: t.ok, detail: t.parts.join("; "), elapsed: start.elapsed(), limit: None }
}

fn rafla(t: &mut Tally, range: std::ops::RangeInclusive<usize>) -> Result<(), ExperimentError> {
    unsat_range(t, "forbid-hc", range, |n| forbid_hc(n, false))
}

fn hc_2n3(t: &mut Tally, range: std::ops::RangeInclusive<usize>) -> Result<(), ExperimentError> {
    unsat_range(t, "forbid-hc-2n3", range, |n| forbid_hc_2n3(n, false))
}

fn uncrossed(t: &mut Tally) -> Result<(), ExperimentError> {
    unsat_range(t, "aec", 3..=7, |n| all_edges_crossed(n, false))?;
    let (status, witness) = all_edges_crossed(8, false)?;
    let verified = witness.as_ref().is_some_and(|w| !has_uncrossed_edge(w) && is_drawable(w));
    t.note(status == Status::Sat && verified, format!("aec n=8: {status:?}, witness verified {verified}"));
    unsat_range(t, "aec convex", 8..=8, |n| all_edges_crossed(n, true))
}

fn empty_triangles_small(t: &mut Tally, range: std::ops::RangeInclusive<usize>) -> Result<(), ExperimentError> {
    for n in range {
        let low = empty_triangles_atmost(n, 2 * n - 5)?;
        let high = empty_triangles_atmost(n, 2 * n - 4)?;
        let recount = high.counted.is_some_and(|(a, b)| a == b && b == 2 * n - 4);
        t.note(
            low.status == Status::Unsat && high.status == Status::Sat && recount,
            format!("n={n}: {:?}/{:?}, witness count {:?}", low.status, high.status, high.counted),
        );
    }
    Ok(())
}

fn nested(t: &mut Tally) -> Result<(), ExperimentError> {
    // a part must hold everywhere and apply to at least one configuration
    let plan: [(NestedLemma, &[usize]); 4] = [
        (NestedLemma::Part1, &[5, 6, 7]),
        (NestedLemma::Part2Case1, &[7]),
        (NestedLemma::Part2Case2, &[7]),
        (NestedLemma::Part2Case3, &[6]),
    ];
    for (part, sizes) in plan {
        let mut total = 0;
        let mut holds = true;
        let mut counts = Vec::new();
        for &n in sizes {
            let got = nested_lemma_instances_total(&convex_systems(n)?, part);
            holds &= got.is_some();
            total += got.unwrap_or(0);
            counts.push(format!("n={n}: {}", got.map_or("violated".into(), |k| k.to_string())));
        }
        t.note(holds && total > 0, format!("{part:?} ({} configurations)", counts.join(", ")));
    }
    Ok(())
}

fn algorithm1(t: &mut Tally) -> Result<(), ExperimentError> {
    for n in 4..=8 {
        let s = algorithm1_on(&convex_systems(n)?);
        t.note(
            s.failures.is_empty(),
            format!(
                "n={n}: {} systems ({} h-convex), {} runs, {} failures, max {} bad edges",
                s.systems,
                s.hconvex_systems,
                s.runs,
                s.failures.len(),
                s.max_bad_edges
            ),
        );
    }
    let runs = algorithm1_scaling(&[100, 200, 400], 20, 11)?;
    for r in &runs {
        t.note(r.verified, format!("geometric n={}: {:.2}ms", r.n, r.construction.as_secs_f64() * 1e3));
    }
    for w in runs.windows(2) {
        let ratio = w[1].construction.as_secs_f64() / w[0].construction.as_secs_f64().max(1e-9);
        t.note(ratio <= 6.0, format!("ratio {}->{}: {ratio:.2}", w[0].n, w[1].n));
    }
    Ok(())
}

fn theorem2(t: &mut Tally) -> Result<(), ExperimentError> {
    for n in 4..=7 {
        let s = theorem2_on(&convex_systems(n)?);
        t.note(
            s.failures.is_empty() && s.oracle_disagreements == 0,
            format!("n={n}: {} edges, {} failures, {} oracle disagreements", s.edges, s.failures.len(), s.oracle_disagreements),
        );
    }
    Ok(())
}

fn oracle_equivalence(t: &mut Tally) -> Result<(), ExperimentError> {
    for n in [4, 5] {
        for p in [Property::Drawable, Property::Convex, Property::HConvex] {
            let sat = enumerate_property(n, p)?;
            let brute = brute_force_property(n, p);
            t.note(sat == brute, format!("n={n} {}: {} / {}", p.name(), sat.len(), brute.len()));
        }
    }
    Ok(())
}

fn planarity(t: &mut Tally) -> Result<(), ExperimentError> {
    use crate::draw::{complete_bipartite, complete_graph, planarity_fixed_graph};
    t.note(planarity_fixed_graph(4, &complete_graph(4))?, "K4 planar");
    t.note(!planarity_fixed_graph(5, &complete_graph(5))?, "K5 non-planar");
    t.note(!planarity_fixed_graph(6, &complete_bipartite(3, 3))?, "K3,3 non-planar");
    Ok(())
}

fn small_counterexamples(t: &mut Tally) -> Result<(), ExperimentError> {
    let c = counterexamples();
    t.note(c.c5_cycle_13.is_none(), "C5: no plane Hamiltonian cycle through {1,3}");
    t.note(c.t5_path_15.is_none(), "T5: no plane Hamiltonian path through {1,5}");
    let want = [Edge::labeled(1, 2), Edge::labeled(2, 3)];
    let show = |v: &[Edge]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
    let hit = c.t5_star5_free == want || c.convex5_1_star5_free == want;
    t.note(
        hit,
        format!(
            "T5 star 5: star-free edges [{}] (twisted labeling), [{}] (obstruction labeling), expected [{}]",
            show(&c.t5_star5_free),
            show(&c.convex5_1_star5_free),
            show(&want)
        ),
    );
    let no_cycle = [&CATALOG.twisted_t5, &CATALOG.convex5_1].iter().all(|rs| {
        (0..5).all(|s| crate::hamconvex::plane_hc_convex_with(rs, s, None).is_err())
    });
    t.note(no_cycle, "T5: no star vertex admits a cycle of star-free edges");
    Ok(())
}

/// A named group of criteria or extended runs.
pub struct Suite {
    pub name: &'static str,
    pub extended: bool,
    /// Expected runtime on a desktop, for extended suites.
    pub expected: &'static str,
    pub run: fn() -> Vec<Check>,
}

macro_rules! crit {
    ($($id:expr),*) => {
        || vec![$(run_criterion($id)),*]
    };
}

pub const SUITES: &[Suite] = &[
    Suite { name: "classification", extended: false, expected: "seconds", run: crit!(1) },
    Suite { name: "drawability", extended: false, expected: "minutes", run: crit!(2) },
    Suite { name: "rafla-small", extended: false, expected: "minutes", run: crit!(3) },
    Suite { name: "hc-2n3", extended: false, expected: "minutes", run: crit!(4) },
    Suite { name: "uncrossed", extended: false, expected: "minutes", run: crit!(5) },
    Suite { name: "empty-triangles", extended: false, expected: "minutes", run: crit!(6) },
    Suite { name: "nested-lemma", extended: false, expected: "seconds", run: crit!(7) },
    Suite { name: "algorithm1", extended: false, expected: "minutes", run: crit!(8) },
    Suite { name: "theorem2", extended: false, expected: "seconds", run: crit!(9) },
    Suite { name: "crossing-pairs", extended: false, expected: "seconds", run: crit!(10) },
    Suite { name: "oracle", extended: false, expected: "seconds", run: crit!(11) },
    Suite { name: "planarity", extended: false, expected: "seconds", run: crit!(12) },
    Suite { name: "counterexamples", extended: false, expected: "seconds", run: crit!(13) },
    Suite { name: "all", extended: false, expected: "under an hour", run: crit!(1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13) },
    Suite { name: "rafla-extended", extended: true, expected: "about 6 CPU days", run: || vec![rafla_range(9..=10)] },
    Suite { name: "hc-2n3-extended", extended: true, expected: "about 3 CPU days", run: || vec![hc_2n3_range(8..=8)] },
    Suite { name: "empty-triangles-extended", extended: true, expected: "CPU days", run: || vec![empty_triangles_range(8..=9)] },
];

pub fn suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

/// One line per check: `PASS`/`FAIL`, id, title, time and details.
pub fn format_check(c: &Check) -> String {
    format!(
        "{} [{:>2}] {} ({:.1}s): {}",
        if c.passed { "PASS" } else { "FAIL" },
        c.id,
        c.title,
        c.elapsed.as_secs_f64(),
        c.detail
    )
}
