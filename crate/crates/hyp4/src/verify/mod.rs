//! Monte-Carlo verification suites with deterministic seeding.
//!
//! Each suite draws random configurations satisfying the hypotheses of one
//! geometric statement, measures the quantity the statement controls, and
//! scores it against the corresponding registry bound. Hypotheses are
//! enforced by rejection inside a bounded attempt loop; a trial whose
//! hypotheses cannot be met within the budget is counted as a degeneracy
//! and never scored, so a passing report always reflects honestly sampled
//! configurations.
//!
//! Determinism: trial `k` of suite `i` always runs on a fresh ChaCha8
//! stream `(i << 32) | k` seeded from the config, so reports are
//! byte-identical across runs and independent of scheduling, apart from
//! the trailing wall-time field.

mod report;

pub use report::{SuiteConfig, SuiteRecorder, VerificationReport, Violation};

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use nalgebra::{Unit, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds;
use crate::films::{self, RuledFilm};
use crate::geom::{
    dist, dist_point_ray, dist_point_segment, BoundaryPoint, GeodesicRay, GeodesicSegment, Point4,
};
use crate::isometry::Isometry4;
use crate::margulis::{foliation_coordinate, ElementaryGroup, MargulisCone};
use crate::surface2d;
use crate::{Hyp4Error, Result};

/// Suite identifiers in their canonical run order.
const SUITES: [&str; 14] = [
    "lemma1", "lemma2", "lemma3", "lemma4", "prop4", "lemma5", "cor5", "prop6", "lemma6", "prop7",
    "thm4", "thm5", "lemma9", "lemma11",
];

/// Attempts allowed per trial to hit the hypotheses before the trial is
/// counted as degenerate.
const SAMPLE_ATTEMPTS: u32 = 400;

/// Attempts per trial for the film-pair suites, whose attempts are far
/// more expensive than point samples.
const FILM_ATTEMPTS: u32 = 30;

/// All suite identifiers, in the order `run_all` executes them.
pub fn suite_ids() -> &'static [&'static str] {
    &SUITES
}

/// Runs the suite named by `config.suite_id`.
///
/// # Errors
///
/// Rejects invalid configs and unknown suite ids with
/// [`Hyp4Error::InvalidInput`], and reports rejection starvation (every
/// trial degenerate) as [`Hyp4Error::NoConvergence`]. Errors other than
/// the documented degeneracies of the underlying solvers are propagated.
pub fn run_suite(config: &SuiteConfig) -> Result<VerificationReport> {
    config.validate()?;
    let index = SUITES
        .iter()
        .position(|id| *id == config.suite_id)
        .ok_or_else(|| {
            Hyp4Error::InvalidInput(format!(
                "unknown suite id {:?}; expected one of {}",
                config.suite_id,
                SUITES.join(", ")
            ))
        })?;
    let start = Instant::now();
    let mut report = match config.suite_id.as_str() {
        "lemma1" => orbit_count_suite(config, index, false),
        "lemma2" => orbit_count_suite(config, index, true),
        "lemma3" => suite_lemma3(config, index),
        "lemma4" => suite_lemma4(config, index),
        "prop4" => suite_prop4(config, index),
        "lemma5" => suite_lemma5(config, index),
        "cor5" => cor5_run(config, index).map(|(report, _)| report),
        "prop6" => suite_prop6(config),
        "lemma6" => suite_lemma6(config, index),
        "prop7" => suite_prop7(config, index),
        "thm4" => film_pair_suite(config, index, false),
        "thm5" => film_pair_suite(config, index, true),
        "lemma9" => suite_lemma9(config, index),
        "lemma11" => {
            let (gen_a, gen_b) = surface2d::punctured_torus_generators();
            surface2d::verify_lemma11(&gen_a, &gen_b, LEMMA11_SWEEP)
        }
        _ => unreachable!("membership was checked above"),
    }?;
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Runs every suite with the template's trials, seed and parameters,
/// in the order of [`suite_ids`]. The template's own `suite_id` is
/// ignored.
pub fn run_all(template: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    SUITES
        .iter()
        .map(|id| {
            let mut config = template.clone();
            config.suite_id = (*id).to_owned();
            run_suite(&config)
        })
        .collect()
}

/// Sweep depth of the curve-pair suite: all primitive classes with
/// `|p|, |q|` up to this value are enumerated, independently of the
/// configured trial count.
const LEMMA11_SWEEP: u32 = 12;

/// How often each alternative of the two-sided suite held, in trial
/// order: `(distance alternative, translation-length alternative)`. Both
/// counts must be positive for the suite to have exercised the
/// disjunction rather than a single branch.
pub fn cor5_alternative_tally(config: &SuiteConfig) -> Result<(u64, u64)> {
    config.validate()?;
    let index = SUITES
        .iter()
        .position(|id| *id == "cor5")
        .expect("cor5 is a registered suite");
    let mut config = config.clone();
    config.suite_id = "cor5".to_owned();
    cor5_run(&config, index).map(|(_, tally)| tally)
}

fn trial_rng(config: &SuiteConfig, suite: usize, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(((suite as u64) << 32) | trial);
    rng
}

fn inputs(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| ((*k).to_owned(), *v)).collect()
}

fn finish_checked(recorder: SuiteRecorder) -> Result<VerificationReport> {
    if recorder.trials() == 0 {
        return Err(Hyp4Error::NoConvergence(
            "every trial was degenerate; no sampled configuration satisfied the hypotheses".into(),
        ));
    }
    Ok(recorder.finish())
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

fn sample_point(rng: &mut ChaCha8Rng) -> Point4 {
    let h = Vector3::new(
        rng.gen_range(-5.0..5.0),
        rng.gen_range(-5.0..5.0),
        rng.gen_range(-5.0..5.0),
    );
    Point4::from_parts(h, log_uniform(rng, 0.1, 10.0)).expect("sampled heights are positive")
}

fn sample_unit(rng: &mut ChaCha8Rng) -> Unit<Vector3<f64>> {
    loop {
        let v = Vector3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return Unit::new_unchecked(v / n);
        }
    }
}

fn sample_frame(rng: &mut ChaCha8Rng) -> (Vector3<f64>, Vector3<f64>) {
    let p = sample_unit(rng);
    loop {
        let w = sample_unit(rng);
        let q = w.into_inner() - w.dot(&p) * p.into_inner();
        let n = q.norm();
        if n > 1e-3 {
            return (p.into_inner(), q / n);
        }
    }
}

fn sample_translation(rng: &mut ChaCha8Rng) -> Vector3<f64> {
    loop {
        let t = Vector3::new(
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
        );
        if t.norm() >= 0.5 {
            return t;
        }
    }
}

fn sample_loxodromic(rng: &mut ChaCha8Rng, ell_lo: f64, ell_hi: f64, theta_hi: f64) -> Isometry4 {
    let ell = log_uniform(rng, ell_lo, ell_hi);
    let theta = rng.gen_range(0.0..theta_hi);
    let plane = sample_frame(rng);
    let orientation = if rng.gen::<bool>() { 1.0 } else { -1.0 };
    Isometry4::loxodromic(ell.exp(), theta, plane, orientation)
        .expect("sampled loxodromic data is valid")
}

fn sample_parabolic(rng: &mut ChaCha8Rng) -> Isometry4 {
    if rng.gen::<bool>() {
        return Isometry4::translation(sample_translation(rng)).expect("translation is nonzero");
    }
    loop {
        let theta = rng.gen_range(0.2..PI - 0.2);
        let axis = sample_unit(rng);
        let tau = sample_translation(rng);
        if tau.dot(&axis).abs() < 0.1 {
            continue;
        }
        let orientation = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        if let Ok(g) = Isometry4::parabolic(theta, Some(axis), tau, orientation) {
            return g;
        }
    }
}

/// A discrete elementary group of one of the three sampled shapes: a
/// loxodromic cyclic group, a parabolic cyclic group, or a rank-2 lattice
/// of translations.
fn sample_group(rng: &mut ChaCha8Rng) -> ElementaryGroup {
    match rng.gen_range(0..3u8) {
        0 => ElementaryGroup::cyclic(sample_loxodromic(rng, 0.05, 2.0, PI), 192)
            .expect("cyclic group from a valid generator"),
        1 => ElementaryGroup::cyclic(sample_parabolic(rng), 192)
            .expect("cyclic group from a valid generator"),
        _ => loop {
            let g1 = Isometry4::translation(sample_translation(rng)).expect("nonzero");
            let g2 = Isometry4::translation(sample_translation(rng)).expect("nonzero");
            if let Ok(group) = ElementaryGroup::new(vec![g1, g2], vec![96, 96]) {
                return group;
            }
        },
    }
}

/// A point whose distance to a segment is below `radius` by construction:
/// a step of length under `radius` from a random segment point toward a
/// random target.
fn sample_near_segment(
    rng: &mut ChaCha8Rng,
    segment: &GeodesicSegment,
    radius: f64,
) -> Option<Point4> {
    let base = segment.eval(rng.gen_range(0.0..1.0));
    let target = sample_point(rng);
    if base.euclidean_dist(&target) < 1e-6 {
        return None;
    }
    let probe = GeodesicSegment::new(base, target).ok()?;
    let len = probe.length();
    if len < 1e-9 {
        return None;
    }
    let reach = rng.gen_range(0.0..radius.min(len));
    Some(probe.eval(reach / len))
}

/// The point at hyperbolic distance `rho` from the vertical axis over the
/// origin, at Euclidean 4-norm scale `scale`, in the horizontal direction
/// `dir`.
fn point_at_axis_distance(scale: f64, rho: f64, dir: &Unit<Vector3<f64>>) -> Point4 {
    Point4::from_parts(scale * rho.sinh() * dir.into_inner(), scale)
        .expect("positive scale keeps the point in the model")
}

/// The point on the radial ray through `b` (from the vertical axis over
/// the origin, orthogonally to it) at axis distance `rho`.
fn radial_point(b: &Point4, rho: f64) -> Option<Point4> {
    let hn = b.horizontal().norm();
    if hn < 1e-9 {
        return None;
    }
    let norm = (b.horizontal().norm_squared() + b.height() * b.height()).sqrt();
    let dir = b.horizontal() / hn;
    Point4::from_parts(norm * rho.tanh() * dir, norm / rho.cosh()).ok()
}

/// Orbit-count suites: on groups whose injectivity radius at the center
/// is at least `ν`, the number of orbit points in a ball (`movers =
/// false`) or of elements moving the ball across itself (`movers = true`)
/// stays under the corresponding triple-exponential count bound.
fn orbit_count_suite(
    config: &SuiteConfig,
    index: usize,
    movers: bool,
) -> Result<VerificationReport> {
    let mut recorder = SuiteRecorder::new(config.clone());
    for trial in 0..config.trials {
        let mut rng = trial_rng(config, index, trial);
        let mut scored = false;
        for _ in 0..SAMPLE_ATTEMPTS {
            let group = sample_group(&mut rng);
            let x = sample_point(&mut rng);
            let nu = rng.gen_range(0.05..1.0);
            let r = rng.gen_range(0.5..3.0);
            let Ok(ir) = group.injectivity_radius(&x) else {
                continue;
            };
            if ir < nu {
                continue;
            }
            let count = if movers {
                group.count_ball_movers(&x, r)
            } else {
                group.count_orbit_in_ball(&x, r)
            };
            let Ok(count) = count else {
                continue;
            };
            let bound = if movers {
                bounds::lemma2_count_bound(r, nu)?
            } else {
                bounds::lemma1_count_bound(r, nu)?
            };
            recorder.score(
                inputs(&[
                    ("count", count as f64),
                    ("injectivity_radius", ir),
                    ("nu", nu),
                    ("r", r),
                    ("rank", group.rank() as f64),
                ]),
                count as f64,
                bound.value,
            );
            scored = true;
            break;
        }
        if !scored {
            recorder.skip_degenerate();
        }
    }
    finish_checked(recorder)
}

/// Injectivity-radius propagation: with `ν` defined as twice the
/// injectivity radius at `x`, every point within `r` of `x` keeps an
/// injectivity radius above `C₁(r, ν) / 2`.
fn suite_lemma3(config: &SuiteConfig, index: usize) -> Result<VerificationReport> {
    let mut recorder = SuiteRecorder::new(config.clone());
    for trial in 0..config.trials {
        let mut rng = trial_rng(config, index, trial);
        let mut scored = false;
        for _ in 0..SAMPLE_ATTEMPTS {
            let group = sample_group(&mut rng);
            let x = sample_point(&mut rng);
            let Ok(ir_x) = group.injectivity_radius(&x) else {
                continue;
            };
            let nu = 2.0 * ir_x;
            if !(nu.is_finite() && nu > 0.0) {
                continue;
            }
            let r = rng.gen_range(0.5..3.0);
            let Some(y) = sample_near_segment_free(&mut rng, &x, r) else {
                continue;
            };
            let Ok(ir_y) = group.injectivity_radius(&y) else {
                continue;
            };
            let floor = 0.5 * bounds::c1(r, nu)?.value;
            recorder.score(
                inputs(&[("dist", dist(&x, &y)), ("nu", nu), ("r", r)]),
                floor,
                ir_y,
            );
            scored = true;
            break;
        }
        if !scored {
            recorder.skip_degenerate();
        }
    }
    finish_checked(recorder)
}

/// A point at distance under `radius` from `x`: a step along a random
/// geodesic through `x`.
fn sample_near_segment_free(rng: &mut ChaCha8Rng, x: &Point4, radius: f64) -> Option<Point4> {
    let target = sample_point(rng);
    if x.euclidean_dist(&target) < 1e-6 {
        return None;
    }
    let probe = GeodesicSegment::new(*x, target).ok()?;
    let len = probe.length();
    if len < 1e-9 {
        return None;
    }
    let reach = rng.gen_range(0.0..radius.min(len));
    Some(probe.eval(reach / len))
}

/// Vertical pairs under a loxodromic element in normal position: when `z`
/// sits off the axis by more than 2 and both `z` and the point `w`
/// vertically below it are displaced by at most `R`, while `z` is
/// displaced by at least `ν`, the vertical gap is at most `R + 1/ν`.
fn suite_lemma4(config: &SuiteConfig, index: usize) -> Result<VerificationReport> {
    let mut recorder = SuiteRecorder::new(config.clone());
    for trial in 0..config.trials {
        let mut rng = trial_rng(config, index, trial);
        let mut scored = false;
        for _ in 0..SAMPLE_ATTEMPTS {
            let g = sample_loxodromic(&mut rng, 0.01, 0.5, PI);
            let z = sample_point(&mut rng);
            let rho_z = g.dist_to_axis(&z).expect("loxodromic elements have an axis");
            if rho_z <= 2.0 {
                continue;
            }
            let ind_z = g.index(&z);
            let nu_hi = ind_z.min(1.0);
            if nu_hi <= 0.051 {
                continue;
            }
            let nu = rng.gen_range(0.05..nu_hi);
            let r_lo = ind_z.max(nu);
            let r_cap = rng.gen_range(r_lo..r_lo + 3.0);
            let bound = r_cap + 1.0 / nu;
            let t = rng.gen_range(1e-3..3.0 * bound);
            let w4 = z.height() * (-t).exp();
            if w4 < 1e-250 {
                continue;
            }
            let w = Point4::from_parts(z.horizontal(), w4).expect("positive height");
            let ind_w = g.index(&w);
            if ind_w > r_cap {
                continue;
            }
            recorder.score(
                inputs(&[
                    ("ind_w", ind_w),
                    ("ind_z", ind_z),
                    ("nu", nu),
                    ("r_cap", r_cap),
                    ("rho_z", rho_z),
                ]),
                dist(&z, &w),
                bound,
            );
            scored = true;
            break;
        }
        if !scored {
            recorder.skip_degenerate();
        }
    }
    finish_checked(recorder)
}

/// Points within `R` of a segment lie within `2 + R` of one of the
/// vertical rays through its endpoints.
fn suite_prop4(config: &SuiteConfig, index: usize) -> Result<VerificationReport> {
    let mut recorder = SuiteRecorder::new(config.clone());
    for trial in 0..config.trials {
        let mut rng = trial_rng(config, index, trial);
        let mut scored = false;
        for _ in 0..SAMPLE_ATTEMPTS {
            let a = sample_point(&mut rng);
            let b = sample_point(&mut rng);
            let Ok(segment) = GeodesicSegment::new(a, b) else {
                continue;
            };
            if segment.length() < 0.1 {
                continue;
            }
            let r_cap = rng.gen_range(0.1..5.0);
            let Some(z) = sample_near_segment(&mut rng, &segment, r_cap) else {
                continue;
            };
            let d_segment = dist_point_segment(&z, &segment);
            if d_segment > r_cap {
                continue;
            }
            let ray_a = GeodesicRay::new(a, BoundaryPoint::Infinity)?;
            let ray_b = GeodesicRay::new(b, BoundaryPoint::Infinity)?;
            let measured = dist_point_ray(&z, &ray_a).min(dist_point_ray(&z, &ray_b));
            recorder.score(
                inputs(&[
                    ("dist_segment", d_segment),
                    ("r_cap", r_cap),
                    ("segment_length", segment.length()),
                ]),
                measured,
                2.0 + r_cap,
            );
            scored = true;
            break;
        }
        if !scored {
            recorder.skip_degenerate();
        }
    }
    finish_checked(recorder)
}

/// Displacement-window points far from a loxodromic axis but near a
/// segment with small endpoint displacements sit near one of the
/// endpoints, within `4R + 6 + 1/k(R, ν)`.
fn suite_lemma5(config: &SuiteConfig, index: usize) -> Result<VerificationReport> {
    let mut recorder = SuiteRecorder::new(config.clone());
    for trial in 0..config.trials {
        let mut rng = trial_rng(config, index, trial);
        let mut scored = false;
        for _ in 0..SAMPLE_ATTEMPTS {
            let ell = log_uniform(&mut rng, 0.01, 0.2);
            let theta = rng.gen_range(0.0..0.15);
            let plane = sample_frame(&mut rng);
            let orientation = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            let g = Isometry4::loxodromic(ell.exp(), theta, plane, orientation)
                .expect("sampled loxodromic data is valid");
            let r_cap: f64 = rng.gen_range(1.0..4.0);

            // Corner proposal window: far enough from the axis for the
            // clearance hypothesis, close enough that the endpoint
            // displacements can stay under R.
            let reach = 0.9 * (0.5 * r_cap).sinh() / (0.5 * ell).sinh();
            if reach <= 1.05 {
                continue;
            }
            let rho_hi = reach.acosh();
            let rho_lo = 2.0 + r_cap + 0.1;
            if rho_lo >= rho_hi - 0.1 {
                continue;
            }
            let u_a = sample_unit(&mut rng);
            let cos_gap = rng.gen_range(0.5..1.0);
            let w = sample_unit(&mut rng);
            let t = w.into_inner() - w.dot(&u_a) * u_a.into_inner();
            if t.norm() < 1e-3 {
                continue;
            }
            let u_b = Unit::new_normalize(
                cos_gap * u_a.into_inner() + (1.0 - cos_gap * cos_gap).sqrt() * t.normalize(),
            );
            let s_a = log_uniform(&mut rng, 0.5, 2.0);
            let s_b = s_a * rng.gen_range(-1.0..1.0f64).exp();
            let a = point_at_axis_distance(s_a, rng.gen_range(rho_lo..rho_hi), &u_a);
            let b = point_at_axis_distance(s_b, rng.gen_range(rho_lo..rho_hi), &u_b);
            if g.index(&a) >= r_cap || g.index(&b) >= r_cap {
                continue;
            }
            let Ok(segment) = GeodesicSegment::new(a, b) else {
                continue;
            };
            let Some(z) = sample_near_segment(&mut rng, &segment, r_cap) else {
                continue;
            };
            if dist_point_segment(&z, &segment) > r_cap {
                continue;
            }
            let rho_z = g.dist_to_axis(&z).expect("loxodromic elements have an axis");
            if rho_z < 2.0 + r_cap {
                continue;
            }
            let ind_z = g.index(&z);
            if ind_z >= r_cap {
                continue;
            }
            let nu_hi = ind_z.min(1.0);
            if nu_hi <= 0.051 {
                continue;
            }
            let nu = rng.gen_range(0.05..nu_hi);
            let bound = bounds::c_plus(r_cap, nu)?.value;
            let measured = dist(&z, &a).min(dist(&z, &b));
            recorder.score(
                inputs(&[
                    ("ell", ell),
                    ("ind_z", ind_z),
                    ("nu", nu),
                    ("r_cap", r_cap),
                    ("rho_z", rho_z),
                    ("theta", theta),
                ]),
                measured,
                bound,
            );
            scored = true;
            break;
        }
        if !scored {
            recorder.skip_degenerate();
        }
    }
    finish_checked(recorder)
}

/// The two-sided alternative: a point with injectivity radius above `μ`
/// near a segment with small displacements is either close to an endpoint
/// (under `C₊(R, μ)`) or the element has translation length above
/// `C₋(R, μ)`. Parabolic trials can only satisfy the first branch,
/// loxodromic ones always satisfy the second, so both branches appear in
/// a mixed run.
fn cor5_run(config: &SuiteConfig, index: usize) -> Result<(VerificationReport, (u64, u64))> {
    let mut recorder = SuiteRecorder::new(config.clone());
    let mut tally = (0u64, 0u64);
    for trial in 0..config.trials {
        let mut rng = trial_rng(config, index, trial);
        let loxodromic = trial % 2 == 0;
        let mut scored = false;
        for _ in 0..SAMPLE_ATTEMPTS {
            let h = if loxodromic {
                sample_loxodromic(&mut rng, 0.01, 2.0, PI)
            } else {
                sample_parabolic(&mut rng)
            };
            let Ok(group) = ElementaryGroup::cyclic(h.clone(), 192) else {
                continue;
            };
            let a = sample_point(&mut rng);
            let b = sample_point(&mut rng);
            let Ok(segment) = GeodesicSegment::new(a, b) else {
                continue;
            };
            if segment.length() < 0.1 {
                continue;
            }
            let r_cap = rng.gen_range(0.5..5.0);
            let Some(x) = sample_near_segment(&mut rng, &segment, r_cap) else {
                continue;
            };
            let Ok(ir) = group.injectivity_radius(&x) else {
                continue;
            };
            if ir <= config.mu {
                continue;
            }
            let ind_max = h.index(&x).max(h.index(&a)).max(h.index(&b));
            if ind_max >= r_cap {
                continue;
            }
            let c_plus = bounds::c_plus(r_cap, config.mu)?.value;
            let c_minus = bounds::c_minus(r_cap, config.mu)?.value;
            let min_endpoint = dist(&x, &a).min(dist(&x, &b));
            let length = h.translation_length();
            let near_endpoint = min_endpoint < c_plus;
            let long_element = length > c_minus;
            if near_endpoint {
                tally.0 += 1;
            }
            if long_element {
                tally.1 += 1;
            }
            recorder.score_flag(
                inputs(&[
                    ("ind_max", ind_max),
                    ("min_endpoint_dist", min_endpoint),
                    ("parabolic", f64::from(u8::from(!loxodromic))),
                    ("r_cap", r_cap),
                    ("translation_length", length),
                ]),
                near_endpoint || long_element,
                (c_plus - min_endpoint).max(length - c_minus),
            );
            scored = true;
            break;
        }
        if !scored {
            recorder.skip_degenerate();
        }
    }
    finish_checked(recorder).map(|report| (report, tally))
}

/// Deterministic grid comparison of hypercycle arc length `log(r) cosh t`
/// against the chord term `2 sinh(d/2)` over `t ∈ [0, 5]`, `r ∈ [1, 100]`
/// on a 100 × 100 grid. The `r = 1` column degenerates to an exact
/// equality, so the worst margin of a passing run is zero.
fn suite_prop6(config: &SuiteConfig) -> Result<VerificationReport> {
    let mut recorder = SuiteRecorder::new(config.clone());
    let n = 100;
    for i in 0..n {
        let t = 5.0 * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let r = 1.0 + 99.0 * j as f64 / (n - 1) as f64;
            let arc = surface2d::hypercycle_arc_length(t, r)?;
            let p = surface2d::PointH2::new(t.tanh(), 1.0 / t.cosh())?;
            let q = surface2d::PointH2::new(r * t.tanh(), r / t.cosh())?;
            let chord = 2.0 * (0.5 * surface2d::dist_h2(p, q)).sinh();
            recorder.score(inputs(&[("r", r), ("t", t)]), arc, chord);
        }
    }
    finish_checked(recorder)
}

/// Boundary projection is well defined: the canonical ray from every
/// sampled point meets the thin-part cone boundary at a point whose
/// minimal displacement equals `ν` within the configured tolerance, and
/// membership is monotone along the ray on both sides of the boundary.
fn suite_lemma6(config: &SuiteConfig, index: usize) -> Result<VerificationReport> {
    let tol = config
        .tolerances
        .get("phi_residual")
        .copied()
        .unwrap_or(1e-8);
    let mut recorder = SuiteRecorder::new(config.clone());
    for trial in 0..config.trials {
        let mut rng = trial_rng(config, index, trial);
        let mut scored = false;
        for _ in 0..SAMPLE_ATTEMPTS {
            let kind = rng.gen_range(0..3u8);
            let loxodromic = kind == 0 && config.nu * 0.9 > 0.011;
            let group = if loxodromic {
                ElementaryGroup::cyclic(
                    sample_loxodromic(&mut rng, 0.01, 0.9 * config.nu, PI),
                    192,
                )
                .expect("cyclic group from a valid generator")
            } else if kind == 1 {
                ElementaryGroup::cyclic(sample_parabolic(&mut rng), 192)
                    .expect("cyclic group from a valid generator")
            } else {
                loop {
                    let g1 = Isometry4::translation(sample_translation(&mut rng)).expect("nonzero");
                    let g2 = Isometry4::translation(sample_translation(&mut rng)).expect("nonzero");
                    if let Ok(group) = ElementaryGroup::new(vec![g1, g2], vec![96, 96]) {
                        break group;
                    }
                }
            };
            let Ok(cone) = MargulisCone::new(group, config.nu) else {
                continue;
            };
            if cone.is_empty() {
                continue;
            }
            let a = sample_point(&mut rng);
            let Ok(b) = cone.project_phi(&a) else {
                continue;
            };
            let Ok(min_index) = cone.group().min_index(&b) else {
                continue;
            };
            let residual = (min_index - config.nu).abs();

            // Membership must flip exactly at the boundary point: one
            // probe deeper into the cone lies inside, one probe outward
            // lies outside.
            let probes = if loxodromic {
                let rho_b = (cone
                    .group()
                    .generators()[0]
                    .dist_to_axis(&b))
                .expect("loxodromic elements have an axis");
                if rho_b < 0.25 {
                    continue;
                }
                let Some(inner) = radial_point(&b, rho_b - 0.2) else {
                    continue;
                };
                let Some(outer) = radial_point(&b, rho_b + 0.2) else {
                    continue;
                };
                (inner, outer)
            } else {
                let up = Point4::from_parts(b.horizontal(), b.height() * 0.2f64.exp())
                    .expect("positive height");
                let down = Point4::from_parts(b.horizontal(), b.height() * (-0.2f64).exp())
                    .expect("positive height");
                (up, down)
            };
            let (Ok(inside), Ok(outside)) = (cone.contains(&probes.0), cone.contains(&probes.1))
            else {
                continue;
            };

            recorder.score(
                inputs(&[("check", 1.0), ("kind", f64::from(kind)), ("nu", config.nu)]),
                residual,
                tol,
            );
            recorder.score_flag(
                inputs(&[("check", 2.0), ("kind", f64::from(kind)), ("probe_offset", 0.2)]),
                inside && !outside,
                0.2,
            );
            scored = true;
            break;
        }
        if !scored {
            recorder.skip_degenerate();
        }
    }
    finish_checked(recorder)
}

/// Projection distance alternatives, with the tightest admissible `R`
/// (the larger of `ν` and the sampled point's displacement).
///
/// Parabolic trials score the distance to the projected boundary point
/// against `1 + R/2 − ν/2`. That bound fails on this sampler: the
/// distance to the boundary reaches `ln(sinh(R/2)/sinh(ν/2))`, which
/// exceeds the claimed bound once `ν` is small against `R`, and points
/// deep inside the cone exceed it at any `R`. The suite reports those
/// violations rather than narrowing the ranges around them.
///
/// Loxodromic trials score the disjunction: either the projection
/// distance is under `C₊(R, ν)`, or the translation length clears
/// `C₋(R, ν)` with the axis distance under
/// `acosh(2 sinh(R/2)/C₋(R, ν))`.
fn suite_prop7(config: &SuiteConfig, index: usize) -> Result<VerificationReport> {
    let mut recorder = SuiteRecorder::new(config.clone());
    for trial in 0..config.trials {
        let mut rng = trial_rng(config, index, trial);
        let parabolic = trial % 2 == 0;
        let mut scored = false;
        for _ in 0..SAMPLE_ATTEMPTS {
            let nu = rng.gen_range(0.05..1.0);
            if parabolic {
                let h = sample_parabolic(&mut rng);
                let a = sample_point(&mut rng);
                let ind_a = h.index(&a);
                let Ok(group) = ElementaryGroup::cyclic(h, 192) else {
                    continue;
                };
                let Ok(cone) = MargulisCone::new(group, nu) else {
                    continue;
                };
                let Ok(b) = cone.project_phi(&a) else {
                    continue;
                };
                let r_cap = ind_a.max(nu);
                recorder.score(
                    inputs(&[
                        ("ind_a", ind_a),
                        ("nu", nu),
                        ("parabolic", 1.0),
                        ("r_cap", r_cap),
                    ]),
                    dist(&a, &b),
                    1.0 + 0.5 * r_cap - 0.5 * nu,
                );
            } else {
                let g = sample_loxodromic(&mut rng, 0.005, 0.9 * nu, PI);
                let a = sample_point(&mut rng);
                let ind_a = g.index(&a);
                let rho_a = g.dist_to_axis(&a).expect("loxodromic elements have an axis");
                if rho_a < 0.05 {
                    continue;
                }
                let r_cap = ind_a.max(nu);
                let Ok(cone) = MargulisCone::new(
                    ElementaryGroup::cyclic(g.clone(), 192)
                        .expect("cyclic group from a valid generator"),
                    nu,
                ) else {
                    continue;
                };
                if cone.is_empty() {
                    continue;
                }
                let Ok(b) = cone.project_phi(&a) else {
                    continue;
                };
                let c_plus = bounds::c_plus(r_cap, nu)?.value;
                let c_minus = bounds::c_minus(r_cap, nu)?.value;
                let near_boundary = dist(&a, &b) <= c_plus;
                let axis_cap = 2.0 * (0.5 * r_cap).sinh() / c_minus;
                let long_and_close = g.translation_length() >= c_minus && rho_a.cosh() <= axis_cap;
                recorder.score_flag(
                    inputs(&[
                        ("ind_a", ind_a),
                        ("nu", nu),
                        ("parabolic", 0.0),
                        ("r_cap", r_cap),
                        ("rho_a", rho_a),
                    ]),
                    near_boundary || long_and_close,
                    (c_plus - dist(&a, &b)).max(axis_cap - rho_a.cosh()),
                );
            }
            scored = true;
            break;
        }
        if !scored {
            recorder.skip_degenerate();
        }
    }
    finish_checked(recorder)
}

/// Film-pair suites: two ruled films spanned between boundary points of
/// the same thin-part cone, normalized to a common fiber of the canonical
/// fibration and translated by the cyclic group of the underlying screw
/// element, meet in at most `N(C, ν)` (coarse) or `N′(C, ν)` (refined)
/// signed intersections, where `C` caps the corner displacements.
fn film_pair_suite(
    config: &SuiteConfig,
    index: usize,
    refined: bool,
) -> Result<VerificationReport> {
    let mut recorder = SuiteRecorder::new(config.clone());
    for trial in 0..config.trials {
        let mut rng = trial_rng(config, index, trial);
        let mut scored = false;
        for _ in 0..FILM_ATTEMPTS {
            let nu = config.nu;
            let theta = rng.gen_range(0.3..1.8);
            let ell = nu * rng.gen_range(0.4..0.85);
            let plane = sample_frame(&mut rng);
            let orientation = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            let q = Isometry4::loxodromic(ell.exp(), theta, plane, orientation)
                .expect("sampled loxodromic data is valid");
            let group = ElementaryGroup::cyclic(q.clone(), 64)
                .expect("cyclic group from a valid generator");
            let Ok(cone) = MargulisCone::new(group, nu) else {
                continue;
            };
            if cone.is_empty() {
                continue;
            }

            // Four corners on the cone boundary, flowed to a common fiber.
            let mut corners = Vec::with_capacity(4);
            for _ in 0..4 {
                let a = sample_point(&mut rng);
                match cone.project_phi(&a) {
                    Ok(b) => corners.push(b),
                    Err(_) => break,
                }
            }
            if corners.len() < 4 {
                continue;
            }
            let mut ok = true;
            let Ok(fiber) = foliation_coordinate(&q, &corners[0]) else {
                continue;
            };
            for corner in corners.iter_mut().skip(1) {
                let Ok(here) = foliation_coordinate(&q, corner) else {
                    ok = false;
                    break;
                };
                let s = (fiber.t - here.t) / ell;
                *corner = q.flow_translational(s).apply(corner);
            }
            if !ok {
                continue;
            }
            let (x, z, y, w) = (corners[0], corners[1], corners[2], corners[3]);

            let mut power = || loop {
                let m = rng.gen_range(-3..=3i64);
                if m != 0 {
                    break m;
                }
            };
            let m1 = power();
            let m2 = power();
            let Ok(g) = q.power(m1) else { continue };
            let Ok(h) = q.power(m2) else { continue };
            let c_disp = g
                .index(&x)
                .max(g.index(&z))
                .max(h.index(&y))
                .max(h.index(&w));
            let bound = if refined {
                bounds::n_prime_theorem5(c_disp, nu)?
            } else {
                bounds::n_theorem4(c_disp, nu)?
            };
            let Ok(f1) = RuledFilm::new(g, x, z) else {
                continue;
            };
            let Ok(f2) = RuledFilm::new(h, y, w) else {
                continue;
            };
            match films::count_film_film_intersections(&f1, &f2, cone.group()) {
                Ok(result) => {
                    recorder.score(
                        inputs(&[
                            ("c", c_disp),
                            ("ell", ell),
                            ("m1", m1 as f64),
                            ("m2", m2 as f64),
                            ("nu", nu),
                            ("roots", result.roots.len() as f64),
                            ("theta", theta),
                        ]),
                        result.total.abs() as f64,
                        bound.value,
                    );
                    scored = true;
                }
                Err(
                    Hyp4Error::NonTransversal(_)
                    | Hyp4Error::TruncationInsufficient(_)
                    | Hyp4Error::InvalidInput(_),
                ) => continue,
                Err(e) => return Err(e),
            }
            break;
        }
        if !scored {
            recorder.skip_degenerate();
        }
    }
    finish_checked(recorder)
}

/// Thin-tube geometry around a short loxodromic element: tube points with
/// displacement at most `μ` and axis distance at most `R + 2` lie within
/// `2 sinh(μ/2) / ℓ` of the axis, and the translation length itself stays
/// above `C₁(3R + 2, μ)`.
fn suite_lemma9(config: &SuiteConfig, index: usize) -> Result<VerificationReport> {
    let mut recorder = SuiteRecorder::new(config.clone());
    for trial in 0..config.trials {
        let mut rng = trial_rng(config, index, trial);
        let mut scored = false;
        for _ in 0..SAMPLE_ATTEMPTS {
            let mu = config.mu;
            let ell = log_uniform(&mut rng, 0.005, 0.95 * mu);
            let theta = rng.gen_range(0.0..PI);
            let plane = sample_frame(&mut rng);
            let orientation = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            let g = Isometry4::loxodromic(ell.exp(), theta, plane, orientation)
                .expect("sampled loxodromic data is valid");
            let r_cap = rng.gen_range(0.5..5.0);
            let tube_reach = ((0.5 * mu).sinh() / (0.5 * ell).sinh()).max(1.0);
            let rho_max = tube_reach.acosh().min(r_cap + 2.0);
            if rho_max < 1e-3 {
                continue;
            }
            let z = point_at_axis_distance(
                log_uniform(&mut rng, 0.1, 10.0),
                rng.gen_range(0.0..rho_max),
                &sample_unit(&mut rng),
            );
            let ind_z = g.index(&z);
            if ind_z > mu {
                continue;
            }
            let rho_z = g.dist_to_axis(&z).expect("loxodromic elements have an axis");
            recorder.score(
                inputs(&[
                    ("check", 1.0),
                    ("ell", ell),
                    ("ind_z", ind_z),
                    ("mu", mu),
                    ("theta", theta),
                ]),
                rho_z,
                2.0 * (0.5 * mu).sinh() / ell,
            );
            recorder.score(
                inputs(&[("check", 2.0), ("ell", ell), ("mu", mu), ("r_cap", r_cap)]),
                bounds::c1(3.0 * r_cap + 2.0, mu)?.value,
                ell,
            );
            scored = true;
            break;
        }
        if !scored {
            recorder.skip_degenerate();
        }
    }
    finish_checked(recorder)
}
