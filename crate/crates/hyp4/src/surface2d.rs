//! Hyperbolic-plane utilities: the upper half-plane metric, hypercycle
//! arc lengths, trace-based geodesic lengths for Möbius transformations,
//! and intersection numbers of primitive curves on the once-punctured
//! torus.
//!
//! The punctured-torus machinery is deliberately narrow: primitive
//! homology classes `(p, q)` have Christoffel words in the two standard
//! generators and their geometric intersection numbers have the
//! determinant closed form `|p s − q r|`, which gives a trusted oracle for
//! the plane-intersection bound without a general geodesic-crossing
//! algorithm.

use serde::{Deserialize, Serialize};

use crate::verify::{SuiteConfig, SuiteRecorder, VerificationReport};
use crate::{Hyp4Error, Result};

const DET_TOL: f64 = 1e-12;
const COMMUTATOR_TRACE_TOL: f64 = 1e-9;

/// A point `u + iv` of the upper half-plane, `v > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointH2 {
    u: f64,
    v: f64,
}

impl PointH2 {
    pub fn new(u: f64, v: f64) -> Result<PointH2> {
        if !(u.is_finite() && v.is_finite() && v > 0.0) {
            return Err(Hyp4Error::InvalidInput(format!(
                "upper half-plane point needs finite u and v > 0, got ({u}, {v})"
            )));
        }
        Ok(PointH2 { u, v })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn v(&self) -> f64 {
        self.v
    }
}

/// Hyperbolic distance in the upper half-plane.
pub fn dist_h2(p: PointH2, q: PointH2) -> f64 {
    let du = p.u - q.u;
    let dv = p.v - q.v;
    let c = 1.0 + (du * du + dv * dv) / (2.0 * p.v * q.v);
    c.max(1.0).acosh()
}

/// Induced arc length along the hypercycle at distance `t` from a
/// geodesic, between two points whose orthogonal projections onto the
/// geodesic are `log r` apart: `log(r) · cosh(t)`.
pub fn hypercycle_arc_length(t: f64, r: f64) -> Result<f64> {
    if !(t.is_finite() && t >= 0.0 && r.is_finite() && r >= 1.0) {
        return Err(Hyp4Error::InvalidInput(format!(
            "hypercycle arc needs t >= 0 and r >= 1, got ({t}, {r})"
        )));
    }
    Ok(r.ln() * t.cosh())
}

/// A real Möbius transformation of the upper half-plane, stored as a
/// 2×2 matrix of determinant 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moebius2 {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Moebius2 {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Moebius2> {
        let det = a * d - b * c;
        if !det.is_finite() || (det - 1.0).abs() > DET_TOL {
            return Err(Hyp4Error::InvalidInput(format!(
                "Moebius matrix must have determinant 1 within {DET_TOL}, got {det}"
            )));
        }
        Ok(Moebius2 { a, b, c, d })
    }

    pub fn identity() -> Moebius2 {
        Moebius2 {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &Moebius2) -> Moebius2 {
        Moebius2 {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> Moebius2 {
        Moebius2 {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Action `z ↦ (az + b)/(cz + d)` on the upper half-plane.
    pub fn apply(&self, p: PointH2) -> PointH2 {
        let re = self.c * p.u + self.d;
        let im = self.c * p.v;
        let norm = re * re + im * im;
        PointH2 {
            u: ((self.a * p.u + self.b) * re + self.a * self.c * p.v * p.v) / norm,
            v: p.v / norm,
        }
    }
}

/// Translation length `2 arccosh(|tr|/2)` of a hyperbolic Möbius
/// transformation; parabolic and elliptic elements are rejected.
pub fn trace_length(m: &Moebius2) -> Result<f64> {
    let half = m.trace().abs() / 2.0;
    if half <= 1.0 {
        return Err(Hyp4Error::InvalidInput(format!(
            "translation length needs a hyperbolic element with |trace| > 2, got {}",
            m.trace()
        )));
    }
    Ok(2.0 * half.acosh())
}

/// A primitive homology class `(p, q)` on the once-punctured torus
/// together with the Christoffel word realizing it in the two standard
/// generators. Letters `A` and `B` are the generators, `a` and `b` their
/// inverses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PQCurve {
    p: i64,
    q: i64,
    word: String,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl PQCurve {
    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn word(&self) -> &str {
        &self.word
    }

    /// Evaluates the word in concrete generators.
    pub fn matrix(&self, gen_a: &Moebius2, gen_b: &Moebius2) -> Moebius2 {
        let mut out = Moebius2::identity();
        for letter in self.word.chars() {
            let factor = match letter {
                'A' => *gen_a,
                'B' => *gen_b,
                'a' => gen_a.inverse(),
                _ => gen_b.inverse(),
            };
            out = out.compose(&factor);
        }
        out
    }
}

/// Builds the Christoffel word for the primitive class `(p, q)`. The class
/// is normalized so its first nonzero coordinate is positive (an
/// unoriented curve and its reverse are the same class); non-coprime and
/// zero inputs are rejected.
pub fn pq_word(p: i64, q: i64) -> Result<PQCurve> {
    if (p, q) == (0, 0) || gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
        return Err(Hyp4Error::InvalidInput(format!(
            "({p}, {q}) is not a primitive class"
        )));
    }
    let (p, q) = if p < 0 || (p == 0 && q < 0) {
        (-p, -q)
    } else {
        (p, q)
    };
    let (qa, b_letter) = if q >= 0 { (q, 'B') } else { (-q, 'b') };
    let n = p + qa;
    let mut word = String::with_capacity(n as usize);
    for k in 1..=n {
        if k * qa / n == (k - 1) * qa / n {
            word.push('A');
        } else {
            word.push(b_letter);
        }
    }
    Ok(PQCurve { p, q, word })
}

/// Geometric intersection number of two primitive classes on the
/// once-punctured torus: `|p₁q₂ − q₁p₂|`.
pub fn pq_intersection(c1: &PQCurve, c2: &PQCurve) -> u64 {
    (c1.p * c2.q - c1.q * c2.p).unsigned_abs()
}

/// Sweeps all primitive classes with `|p|, |q| ≤ max_pq` on the
/// once-punctured torus generated by `gen_a`, `gen_b` and checks every
/// unordered pair of curves against the plane-intersection bound
/// `exp(l₁ + l₂ + 1)`, lengths taken from the word traces.
///
/// The generators must present a once-punctured torus: the commutator
/// trace has to be `−2` within `1e−9`. The sweep depth is echoed in the
/// report config as `trials`; pairs are scored in lexicographic order
/// and non-hyperbolic words are counted as degeneracies.
pub fn verify_lemma11(
    gen_a: &Moebius2,
    gen_b: &Moebius2,
    max_pq: u32,
) -> Result<VerificationReport> {
    let commutator = gen_a
        .compose(gen_b)
        .compose(&gen_a.inverse())
        .compose(&gen_b.inverse());
    if (commutator.trace() + 2.0).abs() > COMMUTATOR_TRACE_TOL {
        return Err(Hyp4Error::InvalidInput(format!(
            "generators must have commutator trace -2 within {COMMUTATOR_TRACE_TOL}, got {}",
            commutator.trace()
        )));
    }
    let mut config = SuiteConfig::new("lemma11", u64::from(max_pq.max(1)), 0);
    config
        .tolerances
        .insert("commutator_trace".to_owned(), COMMUTATOR_TRACE_TOL);
    let mut recorder = SuiteRecorder::new(config);

    let limit = i64::from(max_pq);
    let mut curves = Vec::new();
    for p in 0..=limit {
        for q in -limit..=limit {
            if (p > 0 || q > 0) && gcd(p.unsigned_abs(), q.unsigned_abs()) == 1 {
                let curve = pq_word(p, q)?;
                if curve.p == p && curve.q == q {
                    curves.push(curve);
                }
            }
        }
    }
    let mut lengths = Vec::with_capacity(curves.len());
    for curve in &curves {
        match trace_length(&curve.matrix(gen_a, gen_b)) {
            Ok(length) => lengths.push(Some(length)),
            Err(_) => {
                lengths.push(None);
                recorder.skip_degenerate();
            }
        }
    }
    for i in 0..curves.len() {
        for j in i..curves.len() {
            let (Some(l1), Some(l2)) = (lengths[i], lengths[j]) else {
                continue;
            };
            let measured = pq_intersection(&curves[i], &curves[j]) as f64;
            let bound = (l1 + l2 + 1.0).exp();
            let inputs = [
                ("p1", curves[i].p as f64),
                ("q1", curves[i].q as f64),
                ("p2", curves[j].p as f64),
                ("q2", curves[j].q as f64),
                ("l1", l1),
                ("l2", l2),
            ]
            .into_iter()
            .map(|(k, v)| (k.to_owned(), v))
            .collect();
            recorder.score(inputs, measured, bound);
        }
    }
    Ok(recorder.finish())
}

/// The standard once-punctured-torus generator pair, traces `3, 3, 3` and
/// commutator trace `−2`.
pub fn punctured_torus_generators() -> (Moebius2, Moebius2) {
    (
        Moebius2::new(1.0, 1.0, 1.0, 2.0).unwrap(),
        Moebius2::new(1.0, -1.0, -1.0, 2.0).unwrap(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::sinh_product_test;

    fn p2(u: f64, v: f64) -> PointH2 {
        PointH2::new(u, v).unwrap()
    }

    #[test]
    fn half_plane_distance_matches_known_values() {
        assert!((dist_h2(p2(0.0, 1.0), p2(0.0, std::f64::consts::E)) - 1.0).abs() < 1e-12);
        assert_eq!(dist_h2(p2(0.3, 0.7), p2(0.3, 0.7)), 0.0);
        let (p, q) = (p2(-1.2, 0.4), p2(2.0, 3.1));
        assert_eq!(dist_h2(p, q), dist_h2(q, p));
        let r = p2(0.5, 1.0);
        assert!(dist_h2(p, q) <= dist_h2(p, r) + dist_h2(r, q) + 1e-12);
        assert!(PointH2::new(0.0, 0.0).is_err());
        assert!(PointH2::new(0.0, -1.0).is_err());
    }

    #[test]
    fn moebius_action_is_isometric_and_composes() {
        let (a, b) = punctured_torus_generators();
        let m = a.compose(&b).compose(&a.inverse());
        let (p, q) = (p2(0.3, 0.8), p2(-1.1, 2.5));
        assert!((dist_h2(m.apply(p), m.apply(q)) - dist_h2(p, q)).abs() < 1e-12);
        let composed = a.compose(&b).apply(p);
        let stepwise = a.apply(b.apply(p));
        assert!((composed.u() - stepwise.u()).abs() < 1e-12);
        assert!((composed.v() - stepwise.v()).abs() < 1e-12);
        let round = m.compose(&m.inverse());
        assert_eq!(round.entries(), Moebius2::identity().entries());
        assert!(Moebius2::new(1.0, 0.0, 0.0, 1.1).is_err());
    }

    #[test]
    fn trace_length_matches_axis_displacement() {
        let (a, _) = punctured_torus_generators();
        let length = trace_length(&a).unwrap();
        assert!((length - 2.0 * 1.5_f64.acosh()).abs() < 1e-12);
        assert!((length - 1.9248473002384139).abs() < 1e-12);

        let on_axis = p2(-0.5, 5.0_f64.sqrt() / 2.0);
        let displaced = dist_h2(on_axis, a.apply(on_axis));
        assert!((displaced - length).abs() < 1e-9);

        let off_axis = p2(1.3, 0.4);
        assert!(dist_h2(off_axis, a.apply(off_axis)) > length);

        let conjugator = Moebius2::new(2.0, 0.3, 1.0, 0.65).unwrap();
        let conjugated = conjugator.compose(&a).compose(&conjugator.inverse());
        assert!((trace_length(&conjugated).unwrap() - length).abs() < 1e-9);

        assert!(trace_length(&Moebius2::identity()).is_err());
        let parabolic = Moebius2::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert!(trace_length(&parabolic).is_err());
        let elliptic = Moebius2::new(0.0, 1.0, -1.0, 0.0).unwrap();
        assert!(trace_length(&elliptic).is_err());
    }

    #[test]
    fn hypercycle_arc_length_reduces_to_the_geodesic_at_zero_offset() {
        assert_eq!(hypercycle_arc_length(0.0, 1.0).unwrap(), 0.0);
        assert!((hypercycle_arc_length(0.0, 7.0).unwrap() - 7.0_f64.ln()).abs() < 1e-15);
        assert!(hypercycle_arc_length(-0.1, 2.0).is_err());
        assert!(hypercycle_arc_length(1.0, 0.9).is_err());
    }

    fn hypercycle_chord(t: f64, r: f64) -> f64 {
        let sin_theta = 1.0 / t.cosh();
        let cos_theta = (1.0 - sin_theta * sin_theta).sqrt();
        let z1 = p2(cos_theta, sin_theta);
        let z = p2(r * cos_theta, r * sin_theta);
        dist_h2(z1, z)
    }

    #[test]
    fn hypercycle_arc_is_bounded_by_the_chord_term_on_a_grid() {
        for i in 0..=50 {
            let t = 5.0 * i as f64 / 50.0;
            let arc = hypercycle_arc_length(t, 1.0).unwrap();
            assert_eq!(arc, 0.0);
            for j in 1..=50 {
                let r = 1.01 + (100.0 - 1.01) * j as f64 / 50.0;
                let arc = hypercycle_arc_length(t, r).unwrap();
                let chord = hypercycle_chord(t, r);
                assert!(
                    arc <= 2.0 * (chord / 2.0).sinh() + 1e-9,
                    "arc {arc} above chord bound at t={t} r={r}"
                );
            }
        }
    }

    #[test]
    fn hypercycle_bound_tightens_as_the_ratio_approaches_one() {
        let t = 2.0;
        let r = 1.001;
        let arc = hypercycle_arc_length(t, r).unwrap();
        let rhs = 2.0 * (hypercycle_chord(t, r) / 2.0).sinh();
        let ratio = arc / rhs;
        assert!(ratio < 1.0);
        assert!(ratio > 1.0 - 1e-6);
    }

    #[test]
    fn hypercycle_remark_bounds_the_offset_factor() {
        for &(t, r) in &[(0.5, 2.0), (1.0, 2.0), (3.0, 10.0), (0.1, 1.5), (4.0, 50.0)] {
            let d = hypercycle_chord(t, r);
            assert!(t.cosh() <= 2.0 / r.ln() * (d / 2.0).sinh() + 1e-9);
        }
    }

    #[test]
    fn christoffel_words_realize_their_homology_class() {
        assert_eq!(pq_word(1, 0).unwrap().word(), "A");
        assert_eq!(pq_word(0, 1).unwrap().word(), "B");
        assert_eq!(pq_word(1, 1).unwrap().word(), "AB");
        assert_eq!(pq_word(2, 1).unwrap().word(), "AAB");
        assert_eq!(pq_word(1, 2).unwrap().word(), "ABB");
        assert_eq!(pq_word(2, -1).unwrap().word(), "AAb");
        let reversed = pq_word(-2, 1).unwrap();
        assert_eq!((reversed.p(), reversed.q()), (2, -1));
        assert_eq!(pq_word(0, -1).unwrap().word(), "B");

        for p in -9i64..=9 {
            for q in -9i64..=9 {
                let Ok(curve) = pq_word(p, q) else { continue };
                let mut count_a = 0i64;
                let mut count_b = 0i64;
                for letter in curve.word().chars() {
                    match letter {
                        'A' => count_a += 1,
                        'a' => count_a -= 1,
                        'B' => count_b += 1,
                        _ => count_b -= 1,
                    }
                }
                assert_eq!((count_a, count_b), (curve.p(), curve.q()));
            }
        }
        assert!(pq_word(0, 0).is_err());
        assert!(pq_word(2, 4).is_err());
        assert!(pq_word(-3, -6).is_err());
    }

    #[test]
    fn intersection_numbers_come_from_the_determinant() {
        let a = pq_word(1, 0).unwrap();
        let b = pq_word(0, 1).unwrap();
        assert_eq!(pq_intersection(&a, &b), 1);
        assert_eq!(pq_intersection(&a, &a), 0);
        let c21 = pq_word(2, 1).unwrap();
        let c11 = pq_word(1, 1).unwrap();
        assert_eq!(pq_intersection(&c21, &c11), 1);
        assert_eq!(pq_intersection(&pq_word(3, 2).unwrap(), &pq_word(2, -3).unwrap()), 13);
        assert_eq!(pq_intersection(&c21, &a), 1);
    }

    #[test]
    fn crossing_curves_satisfy_the_collar_criterion() {
        let (gen_a, gen_b) = punctured_torus_generators();
        let product = {
            let la = trace_length(&gen_a).unwrap();
            (la / 2.0).sinh().powi(2)
        };
        assert!((product - 1.25).abs() < 1e-12);
        for p in 0..=5i64 {
            for q in -5..=5i64 {
                let Ok(c1) = pq_word(p, q) else { continue };
                for p2 in 0..=5i64 {
                    for q2 in -5..=5i64 {
                        let Ok(c2) = pq_word(p2, q2) else { continue };
                        if pq_intersection(&c1, &c2) == 0 {
                            continue;
                        }
                        let l1 = trace_length(&c1.matrix(&gen_a, &gen_b)).unwrap();
                        let l2 = trace_length(&c2.matrix(&gen_a, &gen_b)).unwrap();
                        assert!(sinh_product_test(l1, l2).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn lemma11_sweep_passes_on_the_standard_torus() {
        let (gen_a, gen_b) = punctured_torus_generators();
        let commutator = gen_a
            .compose(&gen_b)
            .compose(&gen_a.inverse())
            .compose(&gen_b.inverse());
        assert_eq!(commutator.trace(), -2.0);
        assert_eq!(gen_a.compose(&gen_b).trace(), 3.0);

        let report = verify_lemma11(&gen_a, &gen_b, 12).unwrap();
        assert!(report.pass);
        assert!(report.violations.is_empty());
        assert!(report.worst_margin > 0.0);
        assert_eq!(report.degeneracies, 0);
        assert!(report.trials > 1000);
        assert_eq!(report.suite_id, "lemma11");
        assert_eq!(report.config.trials, 12);

        let generator_pair_bound = (2.0_f64 * 1.9248473002384139 + 1.0).exp();
        assert!((generator_pair_bound - 127.70138394837446).abs() < 1e-9);
        assert!(report.worst_margin <= generator_pair_bound - 1.0);
    }

    #[test]
    fn lemma11_rejects_generators_of_the_wrong_commutator_trace() {
        let (gen_a, _) = punctured_torus_generators();
        let inverse_partner = Moebius2::new(2.0, 1.0, 1.0, 1.0).unwrap();
        assert!(verify_lemma11(&gen_a, &inverse_partner, 4).is_ok());
        let translation = Moebius2::new(1.0, 2.0, 0.0, 1.0).unwrap();
        assert!(verify_lemma11(&gen_a, &translation, 4).is_err());
    }

    #[test]
    fn cyclic_orbit_ball_counts_stay_under_the_plane_margulis_bound() {
        for i in 0..8 {
            let translation = 2.0 + 0.5 * i as f64;
            let half = (translation / 2.0).exp();
            let m = Moebius2::new(half, 0.0, 0.0, 1.0 / half).unwrap();
            for &x in &[p2(0.0, 1.0), p2(0.3, 0.8), p2(-0.7, 2.0)] {
                if dist_h2(x, m.apply(x)) < 2.0 {
                    continue;
                }
                for j in 1..6 {
                    let l1 = 1.9 + 0.9 * j as f64;
                    let l2 = 2.1 + 0.7 * j as f64;
                    let radius = 2.0 * (l1 + l2);
                    let mut count = 1u64;
                    let mut power = m;
                    while dist_h2(x, power.apply(x)) <= radius {
                        count += 2;
                        power = power.compose(&m);
                    }
                    assert!(
                        (count as f64) <= (l1 + l2 + 1.0).exp(),
                        "count {count} above bound at translation {translation}"
                    );
                }
            }
        }
    }
}
