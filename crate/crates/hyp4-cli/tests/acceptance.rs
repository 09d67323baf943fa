//! End-to-end acceptance gate for the workspace.
//!
//! Ten criteria run sequentially inside a single test so the timed ones are
//! not distorted by parallel neighbors; each prints one `criterion N:
//! PASS/FAIL` line with a short account of what was measured. The test
//! fails if any criterion fails.
//!
//! Criterion 6 is expected to fail: the parabolic projection-distance bound
//! is exceeded by honestly sampled configurations that satisfy its
//! hypotheses, and the gate reports that rather than hiding it.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use nalgebra::{Unit, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyp4::bounds::{self, BoundValue};
use hyp4::films::{
    check_general_position, count_film_film_intersections, count_film_plane_intersections,
};
use hyp4::geom::plane_constraints;
use hyp4::surface2d;
use hyp4::verify::{self, SuiteConfig, VerificationReport};
use hyp4::{
    ElementaryGroup, FilmEnd, FilmSheet, GeodesicPlane2, Isometry4, MargulisCone, Point4,
    RuledFilm,
};

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Result<String, String>); 10] = [
        ("orbit counts stay under the exponential bounds", criterion_1_orbit_counts),
        ("short elements keep a definite index everywhere", criterion_2_index_lower_bound),
        ("the near-endpoint or long-translation alternative holds", criterion_3_alternative),
        ("hypercycle arcs never exceed their chord comparison", criterion_4_arc_chord),
        ("displacement identities agree with direct evaluation", criterion_5_displacement_audit),
        ("cone projection lands on the boundary within tolerance", criterion_6_projection),
        ("film crossing counts and signs are certified", criterion_7_films),
        ("the punctured-torus lattice passes the trace test", criterion_8_punctured_torus),
        ("closed-form bounds match frozen references", criterion_9_bound_registry),
        ("the verification binary is deterministic", criterion_10_determinism),
    ];
    let mut failed = Vec::new();
    for (index, (title, run)) in criteria.iter().enumerate() {
        let number = index + 1;
        match run() {
            Ok(detail) => println!("criterion {number}: PASS  {title}; {detail}"),
            Err(detail) => {
                println!("criterion {number}: FAIL  {title}; {detail}");
                failed.push(number);
            }
        }
    }
    assert!(failed.is_empty(), "failed acceptance criteria: {failed:?}");
}

fn check(ok: bool, detail: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail)
    }
}

fn run(suite: &str, trials: u64, seed: u64) -> Result<VerificationReport, String> {
    verify::run_suite(&SuiteConfig::new(suite, trials, seed)).map_err(|e| e.to_string())
}

fn criterion_1_orbit_counts() -> Result<String, String> {
    let start = Instant::now();
    let cyclic = run("lemma1", 1000, 101)?;
    let rank2 = run("lemma2", 1000, 102)?;
    let elapsed = start.elapsed().as_secs_f64();
    check(
        cyclic.pass,
        format!("cyclic orbit counts exceeded the bound {} times", cyclic.violations.len()),
    )?;
    check(
        rank2.pass,
        format!("rank-2 orbit counts exceeded the bound {} times", rank2.violations.len()),
    )?;
    check(elapsed < 60.0, format!("orbit suites took {elapsed:.1} s, over the 60 s budget"))?;
    Ok(format!(
        "{} cyclic and {} rank-2 groups in {elapsed:.1} s",
        cyclic.trials, rank2.trials
    ))
}

fn criterion_2_index_lower_bound() -> Result<String, String> {
    let report = run("lemma3", 1100, 201)?;
    check(report.trials >= 1000, format!("only {} scored pairs", report.trials))?;
    check(
        report.pass,
        format!("{} pairs fell to half the lower bound or below", report.violations.len()),
    )?;
    Ok(format!("{} pairs, worst margin {:.3e}", report.trials, report.worst_margin))
}

fn criterion_3_alternative() -> Result<String, String> {
    for (suite, trials) in [("lemma4", 1000), ("prop4", 1000), ("lemma5", 1400), ("cor5", 1000)] {
        let report = run(suite, trials, 301)?;
        check(
            report.trials >= 1000,
            format!("{suite} scored only {} of the required 1000 configurations", report.trials),
        )?;
        check(report.pass, format!("{suite} recorded {} violations", report.violations.len()))?;
    }
    let (near, long) = verify::cor5_alternative_tally(&SuiteConfig::new("cor5", 1000, 301))
        .map_err(|e| e.to_string())?;
    check(
        near >= 1 && long >= 1,
        format!("alternative tally near={near} long={long} never saw both sides"),
    )?;
    Ok(format!("four suites clean; alternative split {near} near-endpoint / {long} long-translation"))
}

fn criterion_4_arc_chord() -> Result<String, String> {
    let report = run("prop6", 10_000, 401)?;
    check(
        report.pass,
        format!("{} grid cells put the arc above the chord", report.violations.len()),
    )?;
    let mut boundary_gap: f64 = 0.0;
    for i in 0..100 {
        let t = 5.0 * f64::from(i) / 99.0;
        for r in [1.0, 1.0 + 1e-4] {
            let arc = surface2d::hypercycle_arc_length(t, r).map_err(|e| e.to_string())?;
            let top = surface2d::PointH2::new(t.tanh(), 1.0 / t.cosh()).map_err(|e| e.to_string())?;
            let far = surface2d::PointH2::new(r * t.tanh(), r / t.cosh()).map_err(|e| e.to_string())?;
            let chord = 2.0 * (surface2d::dist_h2(top, far) / 2.0).sinh();
            boundary_gap = boundary_gap.max((arc - chord).abs());
        }
    }
    check(
        boundary_gap <= 1e-6,
        format!("arc and chord differ by {boundary_gap:.3e} at the r = 1 edge"),
    )?;
    Ok(format!(
        "{} grid cells, worst margin {:.3e}; r = 1 edge gap {boundary_gap:.3e}",
        report.trials, report.worst_margin
    ))
}

fn criterion_5_displacement_audit() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    let mut worst_rel: f64 = 0.0;
    let mut ratio_min = f64::INFINITY;
    let mut ratio_max = f64::NEG_INFINITY;
    for trial in 0..10_000u32 {
        let g = if trial % 2 == 0 {
            sample_translation(&mut rng)
        } else {
            sample_parabolic_screw(&mut rng)
        };
        let x = sample_point(&mut rng);
        let audit = g.displacement_audit(&x);
        let scale = audit.direct_euclidean_sq.max(1.0);
        worst_rel = worst_rel.max((audit.euclidean_sq - audit.direct_euclidean_sq).abs() / scale);
        let ratio = audit.two_sinh_sq / audit.direct_two_sinh_sq;
        ratio_min = ratio_min.min(ratio);
        ratio_max = ratio_max.max(ratio);
    }
    check(
        worst_rel <= 1e-9,
        format!("structural and direct Euclidean displacement disagree by {worst_rel:.3e}"),
    )?;
    let spread = ratio_max - ratio_min;
    check(spread <= 1e-9, format!("the convention ratio drifts by {spread:.3e}"))?;
    Ok(format!(
        "10000 parabolic audits, worst mismatch {worst_rel:.2e}; convention ratio {ratio_max} (spread {spread:.2e})"
    ))
}

fn criterion_6_projection() -> Result<String, String> {
    let nu = 0.3;
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let mut worst_residual: f64 = 0.0;
    let mut projected = 0u32;
    let mut attempts = 0u32;
    while projected < 1000 {
        attempts += 1;
        if attempts > 50_000 {
            return Err(format!("projection sampling starved after {attempts} attempts"));
        }
        let group = sample_cone_group(&mut rng, nu);
        let cone = match MargulisCone::new(group.clone(), nu) {
            Ok(cone) => cone,
            Err(_) => continue,
        };
        if cone.is_empty() {
            continue;
        }
        let a = sample_point(&mut rng);
        let phi = match cone.project_phi(&a) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let index = group.min_index(&phi).map_err(|e| e.to_string())?;
        worst_residual = worst_residual.max((index - nu).abs());
        projected += 1;
    }
    check(
        worst_residual <= 1e-8,
        format!("projection misses the cone boundary by {worst_residual:.3e}"),
    )?;
    let report = run("prop7", 1000, 602)?;
    let parabolic = report
        .violations
        .iter()
        .filter(|v| v.inputs.get("parabolic") == Some(&1.0))
        .count();
    check(
        parabolic == 0,
        format!(
            "boundary residual holds (worst {worst_residual:.2e}) but the parabolic \
             projection-distance bound fails: {parabolic} of {} trials exceed \
             1 + R/2 - nu/2, worst margin {:.3}",
            report.trials, report.worst_margin
        ),
    )?;
    Ok(format!(
        "1000 projections, worst boundary residual {worst_residual:.2e}; distance bound clean"
    ))
}

fn criterion_7_films() -> Result<String, String> {
    let seam_gap = film_seam_and_corner_gap()?;
    check(seam_gap <= 1e-12, format!("seam or corner identities are off by {seam_gap:.3e}"))?;
    let (plane_trials, plane_max) = film_plane_census()?;
    check(plane_max <= 8, format!("a certified film-plane pair produced {plane_max} crossings"))?;
    let (library_total, oracle_total, oracle_roots) = film_film_oracle()?;
    check(
        library_total.abs() == 1,
        format!("the constructed pair counted {library_total}, expected a single signed crossing"),
    )?;
    check(
        library_total == oracle_total,
        format!("library count {library_total} disagrees with the dense-grid oracle {oracle_total}"),
    )?;
    let tubes = run("thm4", 12, 701)?;
    check(tubes.trials >= 10, format!("only {} tube pairs scored", tubes.trials))?;
    check(
        tubes.pass,
        format!("{} tube pairs exceeded the translate-count bound", tubes.violations.len()),
    )?;
    Ok(format!(
        "seam gap {seam_gap:.1e}; {plane_trials} certified plane counts, max {plane_max}; \
         signed crossing {library_total:+} matches the 2048-square oracle on {oracle_roots} root(s); \
         {} tube pairs within bound",
        tubes.trials
    ))
}

fn criterion_8_punctured_torus() -> Result<String, String> {
    let report = run("lemma11", 12, 801)?;
    check(
        report.pass,
        format!("{} curve pairs violated the collar product bound", report.violations.len()),
    )?;
    check(report.trials >= 1000, format!("the p/q sweep scored only {} pairs", report.trials))?;
    let (a, b) = surface2d::punctured_torus_generators();
    check(
        a.entries() == [1.0, 1.0, 1.0, 2.0] && b.entries() == [1.0, -1.0, -1.0, 2.0],
        "generator matrices drifted from the fixed lattice".to_owned(),
    )?;
    let sinh_a = ((a.trace() / 2.0).powi(2) - 1.0).sqrt();
    let sinh_b = ((b.trace() / 2.0).powi(2) - 1.0).sqrt();
    let product = sinh_a * sinh_b;
    check(
        (product - 1.25).abs() <= 1e-12,
        format!("trace-arithmetic product {product} strayed from 5/4"),
    )?;
    check(product >= 1.0, format!("generator product {product} fell below the threshold"))?;
    let la = surface2d::trace_length(&a).map_err(|e| e.to_string())?;
    let lb = surface2d::trace_length(&b).map_err(|e| e.to_string())?;
    let via_lengths = (la / 2.0).sinh() * (lb / 2.0).sinh();
    check(
        (via_lengths - 1.25).abs() <= 1e-12,
        format!("length-roundtrip product {via_lengths} strayed from 5/4"),
    )?;
    let verdict = eval("sinh_product_test", &[("l1", la), ("l2", lb)])?;
    check(verdict.value == 1.0, "the registry predicate rejected the generator pair".to_owned())?;
    Ok(format!("{} pairs clean; generator sinh-product {product:.12}", report.trials))
}

fn criterion_9_bound_registry() -> Result<String, String> {
    let spots: &[(&str, &[(&str, f64)], f64)] = &[
        ("curve_bound_K", &[("l1", 1.0), ("l2", 1.0)], 16.732438814898646),
        ("C1", &[("r", 0.1), ("nu", 1.0)], 0.2 / 45.0),
        ("C1", &[("r", 0.3), ("nu", 0.5)], 1.2461059190031153e-4),
        ("k_lemma5", &[("R", 1.0), ("nu", 1.0)], 2.8685357303312814e-24),
        ("C_plus", &[("R", 1.0), ("mu", 1.0)], 3.4860991600216603e23),
        ("C_plus", &[("R", 0.5), ("mu", 0.8)], 6.759006924622324e19),
        ("lemma1_count_bound", &[("r", 1.0), ("nu", 1.0)], 403.4287934927351),
        ("lemma2_count_bound", &[("r", 1.0), ("nu", 1.0)], 8103.083927575384),
        ("N_theorem4", &[("C", 0.5), ("nu", 1.0)], 65659969.13733051),
        ("Nprime_theorem5", &[("C", 0.5), ("nu", 1.0)], 5.173477856538267e20),
        ("Nprime_theorem5", &[("C", 0.1), ("nu", 0.5)], 1.2861440770400351e9),
        ("C2", &[("mu", 0.1), ("g", 2.0)], 20.601000500119064),
        ("C2", &[("mu", 0.5), ("g", 2.0)], 7.126571832962484),
        ("appendix_bound", &[("l1", 1.0), ("l2", 1.0)], 20.085536923187668),
        ("edge_bound_6g6", &[("mu", 0.1), ("g", 2.0)], 741.6360180042863),
        ("edge_bound_16g16", &[("mu", 0.1), ("g", 2.0)], 5273.85612803048),
    ];
    for (id, inputs, want) in spots {
        let got = eval(id, inputs)?;
        check(
            rel_gap(got.value, *want) <= 1e-12,
            format!("{id} evaluates to {:.17e}, frozen reference {want:.17e}", got.value),
        )?;
    }
    let log_spots: &[(&str, &[(&str, f64)], f64)] = &[
        ("C3", &[("mu", 0.1), ("g", 2.0)], -374.20727745798225),
        ("C4", &[("mu", 0.5), ("g", 2.0), ("nu", 0.5)], 804.2651452009908),
        ("C5", &[("mu", 0.5), ("g", 2.0), ("nu", 0.5)], 804.2651452009908),
        ("final_intersection_bound", &[("g", 2.0), ("mu", 0.1)], 40010.30895266064),
        ("link_count_bound", &[("g1", 2.0), ("g2", 3.0), ("mu", 1.0)], 40000.0),
        ("short_short_case_bound", &[("R", 1.0), ("mu", 0.5)], 10.908883083359672),
        ("short_long_case_bound", &[("C", 3.0), ("nu", 0.5)], 21.928053830347946),
        ("long_long_case_bound", &[("g", 2.0), ("C", 3.0), ("nu", 0.5)], 27.59101431048389),
    ];
    for (id, inputs, want_log) in log_spots {
        let got = eval(id, inputs)?;
        check(
            rel_gap(got.log_value, *want_log) <= 1e-12,
            format!("{id} log-evaluates to {:.17e}, frozen reference {want_log:.17e}", got.log_value),
        )?;
    }
    for i in 0..50 {
        for j in 0..50 {
            let r = 0.05 + 0.1 * f64::from(i);
            let nu = 0.05 + 0.02 * f64::from(j);
            let narrow = bounds::lemma1_count_bound(r, nu).map_err(|e| e.to_string())?;
            let wide = bounds::lemma2_count_bound(r, nu).map_err(|e| e.to_string())?;
            check(
                wide.log_value >= narrow.log_value,
                format!("rank-2 count bound dips below the cyclic one at r={r} nu={nu}"),
            )?;
            let c1 = bounds::c1(r, nu).map_err(|e| e.to_string())?;
            check(
                c1.value > 0.0 && c1.value < 2.0 * r,
                format!("C1 leaves (0, 2r) at r={r} nu={nu}"),
            )?;
        }
    }
    for i in 0..50 {
        let r_cap = 0.1 + 0.6 * f64::from(i);
        let mut prev = f64::INFINITY;
        for j in 0..50 {
            let mu = 0.05 + 0.027 * f64::from(j);
            let log = bounds::c_plus(r_cap, mu).map_err(|e| e.to_string())?.log_value;
            check(
                log < prev,
                format!("axis threshold stops shrinking in mu at R={r_cap} mu={mu}"),
            )?;
            prev = log;
        }
    }
    for i in 0..50 {
        for j in 0..50 {
            let c = 0.1 + 0.1 * f64::from(i);
            let nu = 0.05 + 0.019 * f64::from(j);
            let n_prime = bounds::n_prime_theorem5(c, nu).map_err(|e| e.to_string())?;
            check(
                n_prime.value >= 96.0 * c / nu,
                format!("refined translate count drops below its linear term at C={c} nu={nu}"),
            )?;
        }
    }
    for i in 0..20 {
        for j in 0..20 {
            let r_cap = 0.1 + 0.5 * f64::from(i);
            let mu = 0.05 + 0.05 * f64::from(j);
            let relabeled = bounds::c_minus(r_cap, mu).map_err(|e| e.to_string())?;
            let direct = bounds::c1(r_cap + 2.0, mu).map_err(|e| e.to_string())?;
            check(
                relabeled.log_value == direct.log_value,
                format!("C_minus and C1(R+2) split at R={r_cap} mu={mu}"),
            )?;
        }
    }
    for g in 2..8u32 {
        for j in 0..20 {
            let mu = 0.05 + 0.05 * f64::from(j);
            let composed = bounds::c3(mu, g).map_err(|e| e.to_string())?;
            let c2 = bounds::c2(mu, g).map_err(|e| e.to_string())?;
            let rebuilt = bounds::c1(c2.value, mu).map_err(|e| e.to_string())?;
            check(
                rel_gap(composed.log_value, rebuilt.log_value) <= 1e-12,
                format!("C3 and C1(C2, mu) split at g={g} mu={mu}"),
            )?;
        }
    }
    Ok(format!(
        "{} spot values, {} log-space values, four monotonicity grids, two composition identities",
        spots.len(),
        log_spots.len()
    ))
}

fn criterion_10_determinism() -> Result<String, String> {
    let exe = env!("CARGO_BIN_EXE_hyp4");
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let mut runs = Vec::new();
    let mut seconds = Vec::new();
    for pass in 0..2 {
        let json = tmp.join(format!("acceptance_verify_all_{pass}.json"));
        let start = Instant::now();
        let out = Command::new(exe)
            .args(["verify", "all", "--trials", "200", "--seed", "7"])
            .arg("--json")
            .arg(&json)
            .output()
            .map_err(|e| e.to_string())?;
        let elapsed = start.elapsed().as_secs_f64();
        check(elapsed < 600.0, format!("run {pass} took {elapsed:.0} s, over the 600 s budget"))?;
        let code = out.status.code();
        check(
            code == Some(0) || code == Some(1),
            format!("run {pass} exited with {code:?}"),
        )?;
        let report = std::fs::read_to_string(&json).map_err(|e| e.to_string())?;
        let stable: Vec<&str> = report
            .lines()
            .filter(|line| !line.contains("wall_time_ms"))
            .collect();
        runs.push((out.stdout, code, stable.join("\n")));
        seconds.push(elapsed);
    }
    check(runs[0].0 == runs[1].0, "the two runs printed different stdout".to_owned())?;
    check(runs[0].1 == runs[1].1, "the two runs exited differently".to_owned())?;
    check(
        runs[0].2 == runs[1].2,
        "the two reports differ beyond the wall-time field".to_owned(),
    )?;
    Ok(format!(
        "two byte-identical runs ({:.0} s and {:.0} s), exit code {:?}",
        seconds[0], seconds[1], runs[0].1
    ))
}

fn film_seam_and_corner_gap() -> Result<f64, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(703);
    let mut worst: f64 = 0.0;
    let mut built = 0u32;
    while built < 60 {
        let g = sample_seam_isometry(&mut rng);
        let x = sample_seam_point(&mut rng);
        let z = sample_seam_point(&mut rng);
        let film = match RuledFilm::new(g, x, z) {
            Ok(film) => film,
            Err(_) => continue,
        };
        for k in 0..=8 {
            let s = f64::from(k) / 8.0;
            worst = worst.max(point_gap(
                &film.point(FilmSheet::Translational, s, 1.0),
                &film.point(FilmSheet::Rotational, s, 0.0),
            ));
        }
        for (end, s) in [(FilmEnd::Start, 0.0), (FilmEnd::End, 1.0)] {
            let [corner, shifted, full] = film.corners(end);
            worst = worst.max(point_gap(&film.point(FilmSheet::Translational, s, 0.0), &corner));
            worst = worst.max(point_gap(&film.point(FilmSheet::Translational, s, 1.0), &shifted));
            worst = worst.max(point_gap(&film.point(FilmSheet::Rotational, s, 1.0), &full));
        }
        built += 1;
    }
    Ok(worst)
}

fn film_plane_census() -> Result<(u32, usize), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(704);
    let mut done = 0u32;
    let mut attempts = 0u32;
    let mut max_count = 0usize;
    while done < 1000 {
        attempts += 1;
        if attempts > 60_000 {
            return Err(format!("film-plane sampling starved after {attempts} attempts"));
        }
        let g = sample_any_isometry(&mut rng);
        let x = sample_point(&mut rng);
        let z = sample_point(&mut rng);
        let film = match RuledFilm::new(g, x, z) {
            Ok(film) => film,
            Err(_) => continue,
        };
        if !check_general_position(&film).certified {
            continue;
        }
        let plane = match sample_plane(&mut rng) {
            Ok(plane) => plane,
            Err(_) => continue,
        };
        let hits = match count_film_plane_intersections(&film, &plane) {
            Ok(hits) => hits,
            Err(_) => continue,
        };
        max_count = max_count.max(hits.count());
        done += 1;
    }
    Ok((done, max_count))
}

/// Counts the fixture pair independently: a dense sign scan over the first
/// film against the plane carrying the second, then a located sign per root.
///
/// Both fixture isometries are rotation-free, so each film is its
/// translational sheet alone and the second film lies in the vertical plane
/// over the first horizontal axis.
fn film_film_oracle() -> Result<(i64, i64, usize), String> {
    let f1 = RuledFilm::new(
        Isometry4::translation(Vector3::new(0.0, 0.5, 0.2)).map_err(|e| e.to_string())?,
        Point4::new(0.62, -0.34, -0.10, 0.78).map_err(|e| e.to_string())?,
        Point4::new(1.18, -0.06, -0.06, 1.16).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let f2 = RuledFilm::new(
        Isometry4::dilation(std::f64::consts::E).map_err(|e| e.to_string())?,
        Point4::new(0.6, 0.0, 0.0, 1.1).map_err(|e| e.to_string())?,
        Point4::new(1.2, 0.0, 0.0, 0.55).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let group = ElementaryGroup::cyclic(
        Isometry4::dilation(std::f64::consts::E).map_err(|e| e.to_string())?,
        4,
    )
    .map_err(|e| e.to_string())?;
    let hits = count_film_film_intersections(&f1, &f2, &group).map_err(|e| e.to_string())?;

    let plane = GeodesicPlane2::vertical(Vector3::zeros(), &Vector3::x_axis())
        .map_err(|e| e.to_string())?;
    let n = 2048usize;
    let mut cells = Vec::new();
    let mut prev = scan_row(&f1, &plane, 0, n);
    for j in 1..=n {
        let row = scan_row(&f1, &plane, j, n);
        for i in 0..n {
            let quad = [prev[i], prev[i + 1], row[i], row[i + 1]];
            if straddles(&quad, |v| v.0) && straddles(&quad, |v| v.1) {
                cells.push((i, j - 1));
            }
        }
        prev = row;
    }
    let scale = n as f64;
    let mut roots: Vec<(f64, f64)> = Vec::new();
    for (i, j) in cells {
        let s0 = (i as f64 + 0.5) / scale;
        let t0 = (j as f64 + 0.5) / scale;
        let Some((s, t)) = refine_on_film(&f1, &plane, s0, t0) else {
            continue;
        };
        if !(0.0..=1.0).contains(&s) || !(0.0..=1.0).contains(&t) {
            continue;
        }
        if roots.iter().any(|&(a, b)| (a - s).abs() < 1e-6 && (b - t).abs() < 1e-6) {
            continue;
        }
        roots.push((s, t));
    }
    let mut oracle_total = 0i64;
    let mut oracle_roots = 0usize;
    for &(s, t) in &roots {
        let target = film_point4(&f1, s, t);
        let Some((u, v)) = locate_on_second(&f2, &target) else {
            continue;
        };
        let frame = [
            film_tangent(&f1, s, t, true),
            film_tangent(&f1, s, t, false),
            film_tangent(&f2, u, v, true),
            film_tangent(&f2, u, v, false),
        ];
        oracle_total += det4(&frame).signum() as i64;
        oracle_roots += 1;
    }
    Ok((hits.total, oracle_total, oracle_roots))
}

fn film_point4(film: &RuledFilm, s: f64, t: f64) -> [f64; 4] {
    let p = film.point(FilmSheet::Translational, s, t);
    let h = p.horizontal();
    [h.x, h.y, h.z, p.height()]
}

fn film_values(film: &RuledFilm, plane: &GeodesicPlane2, s: f64, t: f64) -> (f64, f64) {
    plane_constraints(plane, &film.point(FilmSheet::Translational, s, t))
}

fn scan_row(film: &RuledFilm, plane: &GeodesicPlane2, j: usize, n: usize) -> Vec<(f64, f64)> {
    let t = j as f64 / n as f64;
    (0..=n).map(|i| film_values(film, plane, i as f64 / n as f64, t)).collect()
}

fn straddles(quad: &[(f64, f64); 4], component: impl Fn(&(f64, f64)) -> f64) -> bool {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for value in quad {
        lo = lo.min(component(value));
        hi = hi.max(component(value));
    }
    lo < 0.0 && hi > 0.0
}

fn refine_on_film(
    film: &RuledFilm,
    plane: &GeodesicPlane2,
    mut s: f64,
    mut t: f64,
) -> Option<(f64, f64)> {
    let h = 1e-6;
    for _ in 0..50 {
        let (f, g) = film_values(film, plane, s, t);
        if f.abs().max(g.abs()) < 1e-11 {
            return Some((s, t));
        }
        let (f_up, g_up) = film_values(film, plane, s + h, t);
        let (f_dn, g_dn) = film_values(film, plane, s - h, t);
        let (f_rt, g_rt) = film_values(film, plane, s, t + h);
        let (f_lt, g_lt) = film_values(film, plane, s, t - h);
        let j11 = (f_up - f_dn) / (2.0 * h);
        let j12 = (f_rt - f_lt) / (2.0 * h);
        let j21 = (g_up - g_dn) / (2.0 * h);
        let j22 = (g_rt - g_lt) / (2.0 * h);
        let det = j11 * j22 - j12 * j21;
        if det.abs() < 1e-14 {
            return None;
        }
        let ds = (f * j22 - g * j12) / det;
        let dt = (g * j11 - f * j21) / det;
        s -= ds.clamp(-0.05, 0.05);
        t -= dt.clamp(-0.05, 0.05);
        if !(-0.5..=1.5).contains(&s) || !(-0.5..=1.5).contains(&t) {
            return None;
        }
    }
    None
}

fn locate_on_second(film: &RuledFilm, target: &[f64; 4]) -> Option<(f64, f64)> {
    let h = 1e-6;
    let mut u = 0.5;
    let mut v = 0.5;
    for _ in 0..60 {
        let p = film_point4(film, u, v);
        let f = p[0] - target[0];
        let g = p[3] - target[3];
        if f.abs().max(g.abs()) < 1e-10 {
            let inside = (-1e-9..=1.0 + 1e-9).contains(&u) && (-1e-9..=1.0 + 1e-9).contains(&v);
            return inside.then_some((u, v));
        }
        let p_up = film_point4(film, u + h, v);
        let p_dn = film_point4(film, u - h, v);
        let p_rt = film_point4(film, u, v + h);
        let p_lt = film_point4(film, u, v - h);
        let j11 = (p_up[0] - p_dn[0]) / (2.0 * h);
        let j12 = (p_rt[0] - p_lt[0]) / (2.0 * h);
        let j21 = (p_up[3] - p_dn[3]) / (2.0 * h);
        let j22 = (p_rt[3] - p_lt[3]) / (2.0 * h);
        let det = j11 * j22 - j12 * j21;
        if det.abs() < 1e-14 {
            return None;
        }
        u -= (f * j22 - g * j12) / det;
        v -= (g * j11 - f * j21) / det;
        if !(-1.0..=2.0).contains(&u) || !(-1.0..=2.0).contains(&v) {
            return None;
        }
    }
    None
}

fn film_tangent(film: &RuledFilm, s: f64, t: f64, along_s: bool) -> [f64; 4] {
    let h = 1e-5;
    let (fwd, bwd) = if along_s {
        (film_point4(film, s + h, t), film_point4(film, s - h, t))
    } else {
        (film_point4(film, s, t + h), film_point4(film, s, t - h))
    };
    let mut out = [0.0; 4];
    for k in 0..4 {
        out[k] = (fwd[k] - bwd[k]) / (2.0 * h);
    }
    out
}

fn det4(columns: &[[f64; 4]; 4]) -> f64 {
    nalgebra::Matrix4::from_fn(|row, col| columns[col][row]).determinant()
}

fn point_gap(a: &Point4, b: &Point4) -> f64 {
    let horizontal = (a.horizontal() - b.horizontal()).amax();
    horizontal.max((a.height() - b.height()).abs())
}

fn eval(formula_id: &str, pairs: &[(&str, f64)]) -> Result<BoundValue, String> {
    let inputs: BTreeMap<String, f64> =
        pairs.iter().map(|(key, value)| ((*key).to_owned(), *value)).collect();
    bounds::evaluate(formula_id, &inputs).map_err(|e| e.to_string())
}

fn rel_gap(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1e-300)
}

fn sample_point(rng: &mut ChaCha8Rng) -> Point4 {
    let x1 = rng.gen_range(-5.0..5.0);
    let x2 = rng.gen_range(-5.0..5.0);
    let x3 = rng.gen_range(-5.0..5.0);
    let x4 = rng.gen_range(0.1f64.ln()..10.0f64.ln()).exp();
    Point4::new(x1, x2, x3, x4).expect("positive height stays in the model")
}

fn sample_unit(rng: &mut ChaCha8Rng) -> Unit<Vector3<f64>> {
    loop {
        let v = Vector3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if let Some(unit) = Unit::try_new(v, 1e-3) {
            return unit;
        }
    }
}

fn random_plane(rng: &mut ChaCha8Rng) -> (Vector3<f64>, Vector3<f64>) {
    let first = sample_unit(rng);
    loop {
        let raw = sample_unit(rng).into_inner();
        let projected = raw - first.into_inner() * raw.dot(&first);
        if let Some(second) = Unit::try_new(projected, 1e-6) {
            return (first.into_inner(), second.into_inner());
        }
    }
}

fn sample_translation(rng: &mut ChaCha8Rng) -> Isometry4 {
    let tau = sample_unit(rng).into_inner() * rng.gen_range(0.3..3.0);
    Isometry4::translation(tau).expect("nonzero translation")
}

fn sample_parabolic_screw(rng: &mut ChaCha8Rng) -> Isometry4 {
    let axis = sample_unit(rng);
    let theta = rng.gen_range(0.2..2.9);
    let along = rng.gen_range(0.3..2.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
    let raw = sample_unit(rng).into_inner();
    let perpendicular = raw - axis.into_inner() * raw.dot(&axis);
    let tau = axis.into_inner() * along + perpendicular * rng.gen_range(0.0..1.5);
    Isometry4::parabolic(theta, Some(axis), tau, 1.0).expect("screw keeps an axis component")
}

/// The seam and corner identities carry an absolute budget, so their films
/// must stay at order-one scale: endpoints in a unit-sized box and screw
/// centers bounded by keeping the rotation angle away from zero.
fn sample_seam_point(rng: &mut ChaCha8Rng) -> Point4 {
    let x1 = rng.gen_range(-1.5..1.5);
    let x2 = rng.gen_range(-1.5..1.5);
    let x3 = rng.gen_range(-1.5..1.5);
    let x4 = rng.gen_range(0.6..1.8);
    Point4::new(x1, x2, x3, x4).expect("positive height stays in the model")
}

fn sample_seam_isometry(rng: &mut ChaCha8Rng) -> Isometry4 {
    if rng.gen::<bool>() {
        let lambda = rng.gen_range(1.2..2.5);
        let theta = rng.gen_range(0.3..2.8);
        Isometry4::loxodromic(lambda, theta, random_plane(rng), 1.0)
            .expect("loxodromic parameters in range")
    } else {
        let axis = sample_unit(rng);
        let theta = rng.gen_range(0.5..2.9);
        let along = rng.gen_range(0.3..1.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let raw = sample_unit(rng).into_inner();
        let perpendicular = raw - axis.into_inner() * raw.dot(&axis);
        let tau = axis.into_inner() * along + perpendicular * rng.gen_range(0.0..0.8);
        Isometry4::parabolic(theta, Some(axis), tau, 1.0).expect("screw keeps an axis component")
    }
}

fn sample_any_isometry(rng: &mut ChaCha8Rng) -> Isometry4 {
    match rng.gen_range(0..3) {
        0 => {
            let lambda = rng.gen_range(1.1..4.0);
            let theta = rng.gen_range(0.0..3.0);
            Isometry4::loxodromic(lambda, theta, random_plane(rng), 1.0)
                .expect("loxodromic parameters in range")
        }
        1 => sample_parabolic_screw(rng),
        _ => sample_translation(rng),
    }
}

fn sample_plane(rng: &mut ChaCha8Rng) -> Result<GeodesicPlane2, String> {
    if rng.gen::<bool>() {
        GeodesicPlane2::vertical(sample_point(rng).horizontal(), &sample_unit(rng))
            .map_err(|e| e.to_string())
    } else {
        GeodesicPlane2::through_points(&sample_point(rng), &sample_point(rng), &sample_point(rng))
            .map_err(|e| e.to_string())
    }
}

fn sample_cone_group(rng: &mut ChaCha8Rng, nu: f64) -> ElementaryGroup {
    match rng.gen_range(0..4) {
        0 => {
            let ell = rng.gen_range(0.05..0.9) * nu;
            let g = Isometry4::dilation(ell.exp()).expect("dilation coefficient above 1");
            ElementaryGroup::cyclic(g, 24).expect("cyclic group")
        }
        1 => {
            let ell = rng.gen_range(0.05..0.9) * nu;
            let theta = rng.gen_range(0.0..0.15);
            let g = Isometry4::loxodromic(ell.exp(), theta, random_plane(rng), 1.0)
                .expect("loxodromic parameters in range");
            ElementaryGroup::cyclic(g, 24).expect("cyclic group")
        }
        2 => {
            let tau = sample_unit(rng).into_inner() * rng.gen_range(0.2..2.0);
            let g = Isometry4::translation(tau).expect("nonzero translation");
            ElementaryGroup::cyclic(g, 24).expect("cyclic group")
        }
        _ => {
            let t1 = Vector3::x() * rng.gen_range(0.3..1.5);
            let t2 = Vector3::y() * rng.gen_range(0.3..1.5);
            let g1 = Isometry4::translation(t1).expect("nonzero translation");
            let g2 = Isometry4::translation(t2).expect("nonzero translation");
            ElementaryGroup::new(vec![g1, g2], vec![16, 16]).expect("rank-2 lattice")
        }
    }
}
