//! Seeded experiments over random polytopes.
//!
//! Each trial draws a polytope `K`, a point set `X` fitting a translate of
//! `K`, and a query point `p` in the strong hull, all from a ChaCha stream
//! keyed by `(seed, trial_index)`. A trial checks:
//!
//! * the upper bound `w <= max(cara(H), |H| - 1)` on the minimal strong
//!   witness size `w` (a failure is a violation),
//! * the conjectured bound `w <= max(helly(H), relaxed_cone(H))`
//!   (a failure is a counterexample candidate, not a violation),
//! * existence of a guard assignment on the minimal witness,
//! * `conv_H X ⊆ conv_K X` on a random probe point,
//! * `conv_H X = conv_K X` for the unit cube,
//! * the lower bound `k >= cara(H)` by shrinking a Carathéodory witness.
//!
//! Reports are assembled in trial order, so serial and parallel runs
//! serialize identically.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus;
use crate::error::{input, precondition, Error, Result};
use crate::hconvex::{h_hull_contains, PointSet};
use crate::numbers::{
    caratheodory_number, is_conical_position, is_simplex_with_origin, InvariantReport,
};
use crate::rational::{RVector, Rational};
use crate::strong::{
    fits_in_translate, guard_assignment, is_minimal_strong_witness, minimal_strong_witness_indices,
    strong_hull_contains, Polytope,
};
use crate::witness::{caratheodory_witness, WitnessKind};

const REJECTION_BUDGET: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub trials: usize,
    pub dim: usize,
    pub max_normals: usize,
    pub max_points: usize,
    pub coordinate_bound: i64,
    pub scaling_depth: u32,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 42,
            trials: 100,
            dim: 2,
            max_normals: 6,
            max_points: 5,
            coordinate_bound: 4,
            scaling_depth: 8,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(input("trials must be at least 1"));
        }
        if !(2..=4).contains(&self.dim) {
            return Err(input(format!("dim must be in [2, 4], got {}", self.dim)));
        }
        if self.max_normals <= self.dim {
            return Err(input(format!(
                "max_normals must exceed dim to bound a polytope, got {}",
                self.max_normals
            )));
        }
        if self.max_points == 0 || self.coordinate_bound <= 0 || self.scaling_depth == 0 {
            return Err(input(
                "max_points, coordinate_bound and scaling_depth must be positive",
            ));
        }
        Ok(())
    }
}

/// The random stream of one trial. Independent of every other trial.
fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn random_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    Rational::new(
        rng.random_range(-bound..=bound),
        rng.random_range(1..=bound),
    )
}

fn random_point(rng: &mut impl Rng, dim: usize, bound: i64) -> RVector {
    RVector::new((0..dim).map(|_| random_rational(rng, bound)).collect())
}

fn sample_polytope(rng: &mut impl Rng, cfg: &ExperimentConfig) -> Result<Polytope> {
    let b = cfg.coordinate_bound;
    for _ in 0..REJECTION_BUDGET {
        let m = rng.random_range(cfg.dim + 1..=cfg.max_normals);
        let normals: Vec<RVector> = (0..m)
            .map(|_| {
                RVector::from_ints(
                    &(0..cfg.dim)
                        .map(|_| rng.random_range(-b..=b))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        if normals.iter().any(RVector::is_zero) {
            continue;
        }
        // positive offsets keep the origin interior
        let offsets = (0..m)
            .map(|_| Rational::from_int(rng.random_range(1..=b)))
            .collect();
        match Polytope::from_inequalities(cfg.dim, normals, offsets) {
            Ok(k) => return Ok(k),
            Err(Error::Input(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Sampling(format!(
        "no bounded polytope after {REJECTION_BUDGET} draws (dim {}, max_normals {})",
        cfg.dim, cfg.max_normals
    )))
}

/// Distinct points, halved toward the origin until they fit a translate.
fn sample_points(rng: &mut impl Rng, k: &Polytope, cfg: &ExperimentConfig) -> Result<PointSet> {
    let count = rng.random_range(1..=cfg.max_points);
    let mut pts: Vec<RVector> = Vec::with_capacity(count);
    let mut attempts = 0;
    while pts.len() < count {
        attempts += 1;
        if attempts > REJECTION_BUDGET {
            return Err(Error::Sampling("could not draw distinct points".into()));
        }
        let p = random_point(rng, cfg.dim, cfg.coordinate_bound);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let mut x = PointSet::new(cfg.dim, pts)?;
    let half = Rational::new(1, 2);
    for _ in 0..64 {
        if fits_in_translate(k, &x)?.is_some() {
            return Ok(x);
        }
        x = x.scaled(&half);
    }
    Err(Error::Sampling("point set never fit a translate".into()))
}

/// A random convex combination of the points, always inside the hull.
fn convex_combination(rng: &mut impl Rng, x: &PointSet) -> RVector {
    let weights: Vec<Rational> = (0..x.len())
        .map(|_| Rational::from_int(rng.random_range(0..=3)))
        .collect();
    let total: Rational = weights.iter().sum();
    if total.is_zero() {
        return x.points()[0].clone();
    }
    x.points()
        .iter()
        .zip(&weights)
        .fold(RVector::zeros(x.dim()), |acc, (p, w)| {
            acc.add(&p.scale(&(w / &total)))
        })
}

/// A point near the bounding box of `X`.
fn nearby_point(rng: &mut impl Rng, x: &PointSet) -> RVector {
    let dim = x.dim();
    let coords = (0..dim)
        .map(|c| {
            let lo = x
                .points()
                .iter()
                .map(|p| p[c].clone())
                .min()
                .expect("nonempty");
            let hi = x
                .points()
                .iter()
                .map(|p| p[c].clone())
                .max()
                .expect("nonempty");
            let span = &hi - &lo + Rational::one();
            let t = Rational::new(rng.random_range(-2..=10), 8);
            lo + span * t
        })
        .collect();
    RVector::new(coords)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub polytope: Polytope,
    pub points: PointSet,
    pub query: RVector,
}

/// Deterministic polytope and fitting point set for `(seed, trial)`.
pub fn random_instance(cfg: &ExperimentConfig, trial: usize) -> Result<(Polytope, PointSet)> {
    let mut rng = trial_rng(cfg.seed, trial);
    let k = sample_polytope(&mut rng, cfg)?;
    let x = sample_points(&mut rng, &k, cfg)?;
    Ok((k, x))
}

struct TrialDraw {
    instance: Instance,
    probe: RVector,
    cube_points: PointSet,
    cube_probe: RVector,
}

fn draw_trial(cfg: &ExperimentConfig, trial: usize) -> Result<TrialDraw> {
    let mut rng = trial_rng(cfg.seed, trial);
    let k = sample_polytope(&mut rng, cfg)?;
    let x = sample_points(&mut rng, &k, cfg)?;
    // Half the queries are probes kept only if they land in the strong hull.
    let candidate = nearby_point(&mut rng, &x);
    let combination = convex_combination(&mut rng, &x);
    let query = if rng.random_bool(0.5) && strong_hull_contains(&k, &x, &candidate)? {
        candidate
    } else {
        combination
    };
    let probe = nearby_point(&mut rng, &x);

    let unit_bound = cfg.coordinate_bound;
    let count = rng.random_range(1..=cfg.max_points);
    let mut cube_pts: Vec<RVector> = Vec::new();
    while cube_pts.len() < count {
        let p = RVector::new(
            (0..cfg.dim)
                .map(|_| Rational::new(rng.random_range(0..=unit_bound), unit_bound))
                .collect(),
        );
        if !cube_pts.contains(&p) {
            cube_pts.push(p);
        }
    }
    let cube_probe = RVector::new(
        (0..cfg.dim)
            .map(|_| Rational::new(rng.random_range(-unit_bound..=2 * unit_bound), unit_bound))
            .collect(),
    );
    Ok(TrialDraw {
        instance: Instance {
            polytope: k,
            points: x,
            query,
        },
        probe,
        cube_points: PointSet::new(cfg.dim, cube_pts)?,
        cube_probe,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingRecord {
    pub caratheodory: usize,
    pub witness_kind: WitnessKind,
    pub witness_points: PointSet,
    /// First `ε = 2^-i` in the schedule at which `εX` is a minimal strong
    /// witness for the origin.
    pub certified_epsilon: Option<Rational>,
    pub depth: u32,
    pub inconclusive: bool,
}

/// Shrinks a witness attaining `cara(H(K))` by `ε = 1, 1/2, …, 2^-depth`
/// until the shrunken set is a minimal strong witness for the origin,
/// certifying that the strong Carathéodory number is at least `cara(H)`.
pub fn check_lower_bound_scaling(k: &Polytope, depth: u32) -> Result<ScalingRecord> {
    let h = k.normal_set();
    let cara = caratheodory_number(&h)?.caratheodory;
    let witness = caratheodory_witness(&h)?;
    if witness.points.len() != cara {
        return Err(crate::error::internal(
            "witness size differs from the Carathéodory number",
        ));
    }
    let origin = RVector::zeros(k.dim());
    let mut eps = Rational::one();
    let half = Rational::new(1, 2);
    let mut certified = None;
    for _ in 0..=depth {
        let shrunk = witness.points.scaled(&eps);
        if fits_in_translate(k, &shrunk)?.is_some()
            && is_minimal_strong_witness(k, &shrunk, &origin)?
        {
            certified = Some(eps.clone());
            break;
        }
        eps = &eps * &half;
    }
    Ok(ScalingRecord {
        caratheodory: cara,
        witness_kind: witness.kind,
        witness_points: witness.points,
        inconclusive: certified.is_none(),
        certified_epsilon: certified,
        depth,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NearSimplexClass {
    /// `|H| - 1` normals in conical position.
    PyramidLike,
    /// `|H| - 1` normals forming a minimal positive circuit.
    SimplexPlusFacet,
    /// Both of the above.
    Both,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBoundRecord {
    pub witness: Vec<usize>,
    pub witness_size: usize,
    pub facets: usize,
    pub caratheodory: usize,
    pub facet_bound: usize,
    pub facet_bound_ok: bool,
    pub subset_bound: usize,
    pub subset_bound_ok: bool,
    /// Set when the witness size reaches `|H| - 1`.
    pub near_simplex_class: Option<NearSimplexClass>,
}

fn classify_near_simplex(k: &Polytope) -> Result<NearSimplexClass> {
    let h = k.normal_set();
    let n = h.len();
    let mut conical = false;
    let mut circuit = false;
    for skip in 0..n {
        let rest: Vec<RVector> = (0..n)
            .filter(|&i| i != skip)
            .map(|i| h.get(i).clone())
            .collect();
        conical |= is_conical_position(&rest)?;
        circuit |= is_simplex_with_origin(&rest)?;
    }
    Ok(match (conical, circuit) {
        (true, true) => NearSimplexClass::Both,
        (true, false) => NearSimplexClass::PyramidLike,
        (false, true) => NearSimplexClass::SimplexPlusFacet,
        (false, false) => NearSimplexClass::Neither,
    })
}

fn upper_bounds_with(
    k: &Polytope,
    invariants: &InvariantReport,
    witness: Vec<usize>,
) -> Result<UpperBoundRecord> {
    let facets = k.num_facets();
    let w = witness.len();
    let facet_bound = invariants.caratheodory.max(facets - 1);
    // max over H' ⊆ H of cara(H') = max(helly(H), relaxed_cone(H))
    let subset_bound = invariants.helly.max(invariants.relaxed_cone);
    let near_simplex_class = if w + 1 == facets {
        Some(classify_near_simplex(k)?)
    } else {
        None
    };
    Ok(UpperBoundRecord {
        witness,
        witness_size: w,
        facets,
        caratheodory: invariants.caratheodory,
        facet_bound,
        facet_bound_ok: w <= facet_bound,
        subset_bound,
        subset_bound_ok: w <= subset_bound,
        near_simplex_class,
    })
}

/// Minimal strong witness size against both upper bounds.
pub fn check_upper_bounds(k: &Polytope, x: &PointSet, p: &RVector) -> Result<UpperBoundRecord> {
    let invariants = caratheodory_number(&k.normal_set())?;
    let witness = minimal_strong_witness_indices(k, x, p)?;
    upper_bounds_with(k, &invariants, witness)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuardRecord {
    pub witness: Vec<usize>,
    pub assignment: Option<Vec<usize>>,
    pub ok: bool,
}

fn guard_with(k: &Polytope, x: &PointSet, p: &RVector, witness: Vec<usize>) -> Result<GuardRecord> {
    let assignment = guard_assignment(k, &x.subset(&witness), p)?;
    Ok(GuardRecord {
        ok: assignment.is_some(),
        witness,
        assignment,
    })
}

/// Minimizes `X` for `p` and then looks for a guard assignment.
pub fn check_guard_lemma(k: &Polytope, x: &PointSet, p: &RVector) -> Result<GuardRecord> {
    let witness = minimal_strong_witness_indices(k, x, p)?;
    guard_with(k, x, p, witness)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub instance: Instance,
    pub invariants: InvariantReport,
    pub upper: UpperBoundRecord,
    pub guard: GuardRecord,
    pub probe: RVector,
    pub h_subset_ok: bool,
    pub cube_points: PointSet,
    pub cube_probe: RVector,
    pub cube_equality_ok: bool,
    pub scaling: ScalingRecord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationKind {
    FacetBound,
    GuardAssignment,
    HullInclusion,
    CubeEquality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: usize,
    pub kind: ViolationKind,
    pub instance: Instance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleCandidate {
    pub tag: String,
    pub trial: usize,
    pub witness_size: usize,
    pub conjectured_bound: usize,
    pub instance: Instance,
}

pub const COUNTEREXAMPLE_TAG: &str = "COUNTEREXAMPLE-CANDIDATE";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    pub violations: usize,
    pub counterexample_candidates: usize,
    pub max_witness_size: usize,
    /// Entry `i` counts trials whose minimal witness has `i` points.
    pub witness_size_histogram: Vec<usize>,
    pub scaling_certified: usize,
    pub scaling_inconclusive: usize,
    pub near_simplex_instances: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub tool_version: String,
    pub config: ExperimentConfig,
    pub trials: Vec<TrialRecord>,
    pub violations: Vec<Violation>,
    pub counterexample_candidates: Vec<CounterexampleCandidate>,
    pub summary: Summary,
}

impl ExperimentReport {
    /// Violations or counterexample candidates were found.
    pub fn has_findings(&self) -> bool {
        !self.violations.is_empty() || !self.counterexample_candidates.is_empty()
    }
}

pub fn run_trial(cfg: &ExperimentConfig, trial: usize) -> Result<TrialRecord> {
    let draw = draw_trial(cfg, trial)?;
    let Instance {
        polytope: k,
        points: x,
        query: p,
    } = &draw.instance;
    if !strong_hull_contains(k, x, p)? {
        return Err(precondition("sampled query is outside the strong hull"));
    }
    let h = k.normal_set();
    let invariants = caratheodory_number(&h)?;
    let witness = minimal_strong_witness_indices(k, x, p)?;
    let upper = upper_bounds_with(k, &invariants, witness.clone())?;
    let guard = guard_with(k, x, p, witness)?;

    let h_subset_ok =
        !h_hull_contains(&h, x, &draw.probe)? || strong_hull_contains(k, x, &draw.probe)?;

    let cube = corpus::cube(cfg.dim);
    let cube_equality_ok =
        h_hull_contains(&cube.normal_set(), &draw.cube_points, &draw.cube_probe)?
            == strong_hull_contains(&cube, &draw.cube_points, &draw.cube_probe)?;

    let scaling = check_lower_bound_scaling(k, cfg.scaling_depth)?;

    Ok(TrialRecord {
        trial,
        instance: draw.instance.clone(),
        invariants,
        upper,
        guard,
        probe: draw.probe,
        h_subset_ok,
        cube_points: draw.cube_points,
        cube_probe: draw.cube_probe,
        cube_equality_ok,
        scaling,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Serial,
    Parallel,
}

pub fn run_suite(cfg: &ExperimentConfig, execution: Execution) -> Result<ExperimentReport> {
    cfg.validate()?;
    let trials: Vec<TrialRecord> = match execution {
        Execution::Serial => (0..cfg.trials)
            .map(|t| run_trial(cfg, t))
            .collect::<Result<_>>()?,
        Execution::Parallel => (0..cfg.trials)
            .into_par_iter()
            .map(|t| run_trial(cfg, t))
            .collect::<Result<_>>()?,
    };

    let mut violations = Vec::new();
    let mut candidates = Vec::new();
    for t in &trials {
        let checks = [
            (t.upper.facet_bound_ok, ViolationKind::FacetBound),
            (t.guard.ok, ViolationKind::GuardAssignment),
            (t.h_subset_ok, ViolationKind::HullInclusion),
            (t.cube_equality_ok, ViolationKind::CubeEquality),
        ];
        for (ok, kind) in checks {
            if !ok {
                violations.push(Violation {
                    trial: t.trial,
                    kind,
                    instance: t.instance.clone(),
                });
            }
        }
        if !t.upper.subset_bound_ok {
            candidates.push(CounterexampleCandidate {
                tag: COUNTEREXAMPLE_TAG.to_string(),
                trial: t.trial,
                witness_size: t.upper.witness_size,
                conjectured_bound: t.upper.subset_bound,
                instance: t.instance.clone(),
            });
        }
    }

    let max_witness_size = trials
        .iter()
        .map(|t| t.upper.witness_size)
        .max()
        .unwrap_or(0);
    let mut histogram = vec![0; max_witness_size + 1];
    for t in &trials {
        histogram[t.upper.witness_size] += 1;
    }
    let summary = Summary {
        trials: trials.len(),
        violations: violations.len(),
        counterexample_candidates: candidates.len(),
        max_witness_size,
        witness_size_histogram: histogram,
        scaling_certified: trials.iter().filter(|t| !t.scaling.inconclusive).count(),
        scaling_inconclusive: trials.iter().filter(|t| t.scaling.inconclusive).count(),
        near_simplex_instances: trials
            .iter()
            .filter(|t| t.upper.near_simplex_class.is_some())
            .count(),
    };
    Ok(ExperimentReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        trials,
        violations,
        counterexample_candidates: candidates,
        summary,
    })
}

/// Re-runs a serialized instance through the bound and guard checks.
pub fn replay(instance: &Instance) -> Result<(UpperBoundRecord, GuardRecord)> {
    let upper = check_upper_bounds(&instance.polytope, &instance.points, &instance.query)?;
    let guard = check_guard_lemma(&instance.polytope, &instance.points, &instance.query)?;
    Ok((upper, guard))
}
