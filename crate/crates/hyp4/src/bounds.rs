//! Closed-form constants and count bounds as pure evaluators.
//!
//! Several of these formulas overflow `f64` at realistic inputs (nested
//! exponentials of composed constants), so every evaluator works in log
//! space internally and reports both the natural value and its natural
//! logarithm in a [`BoundValue`]. The natural value is `exp(log_value)` and
//! may round to `0` or `inf` when the logarithm leaves the representable
//! range; the logarithm itself stays finite on the whole domain.
//!
//! The string-keyed [`evaluate`] registry mirrors the typed functions one
//! to one and performs the domain checks (positivity, integrality, genus at
//! least 2) so that callers driving it from parsed input get errors instead
//! of NaNs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Hyp4Error, Result};

/// How the cubed-exponential notation `exp³(x)` occurring in the count
/// bounds is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exp3Reading {
    /// `exp³(x) = (e^x)³ = e^{3x}`.
    TripleArg,
    /// `exp³(x) = exp(exp(exp(x)))`.
    TripleCompose,
}

impl Exp3Reading {
    /// Natural logarithm of `exp³(x)` under this reading.
    pub fn log_apply(self, x: f64) -> f64 {
        match self {
            Exp3Reading::TripleArg => 3.0 * x,
            Exp3Reading::TripleCompose => x.exp().exp(),
        }
    }
}

/// The reading used by every evaluator in this crate. Verification reports
/// echo it so that exported numbers are self-describing.
pub const EXP3_READING: Exp3Reading = Exp3Reading::TripleArg;

/// Result of evaluating one closed-form bound: the identifier, the echoed
/// inputs, the natural value and its natural logarithm.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundValue {
    pub formula_id: String,
    pub inputs: BTreeMap<String, f64>,
    pub value: f64,
    pub log_value: f64,
}

impl BoundValue {
    fn from_log(formula_id: &str, inputs: &[(&str, f64)], log_value: f64) -> BoundValue {
        BoundValue {
            formula_id: formula_id.to_owned(),
            inputs: inputs
                .iter()
                .map(|&(k, v)| (k.to_owned(), v))
                .collect(),
            value: log_value.exp(),
            log_value,
        }
    }

    fn from_bool(formula_id: &str, inputs: &[(&str, f64)], flag: bool) -> BoundValue {
        BoundValue {
            formula_id: formula_id.to_owned(),
            inputs: inputs
                .iter()
                .map(|&(k, v)| (k.to_owned(), v))
                .collect(),
            value: if flag { 1.0 } else { 0.0 },
            log_value: if flag { 0.0 } else { f64::NEG_INFINITY },
        }
    }
}

/// `log(Σ exp(tᵢ))`, stable against overflow of the individual terms.
fn log_sum_exp(terms: &[f64]) -> f64 {
    let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

/// `log(sinh x)` for `x > 0` without forming `sinh x`.
fn log_sinh(x: f64) -> f64 {
    x + (-(-2.0 * x).exp()).ln_1p() - std::f64::consts::LN_2
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Hyp4Error::InvalidInput(format!(
            "{name} must be a positive finite real, got {v}"
        )))
    }
}

fn check_genus(name: &str, g: u32) -> Result<()> {
    if g >= 2 {
        Ok(())
    } else {
        Err(Hyp4Error::InvalidInput(format!(
            "{name} must be a genus >= 2, got {g}"
        )))
    }
}

/// Crossing-number bound `K(l₁, l₂)` for a pair of closed geodesics of the
/// given lengths on a hyperbolic surface:
/// `2 e^{l₂}(π/2 + l₁) + (π/2 + l₁) / (l₂/2 − log(e^{l₂/2} − 1))`.
///
/// The denominator equals `−log(1 − e^{−l₂/2})` and is positive for every
/// `l₂ > 0`, so the formula is total on the domain.
pub fn curve_bound_k(l1: f64, l2: f64) -> Result<BoundValue> {
    check_positive("l1", l1)?;
    check_positive("l2", l2)?;
    let lead = (std::f64::consts::FRAC_PI_2 + l1).ln();
    let denom = -(-(-l2 / 2.0).exp()).ln_1p();
    let log = log_sum_exp(&[std::f64::consts::LN_2 + l2 + lead, lead - denom.ln()]);
    Ok(BoundValue::from_log(
        "curve_bound_K",
        &[("l1", l1), ("l2", l2)],
        log,
    ))
}

/// Whether `sinh(l₁/2) · sinh(l₂/2) ≥ 1`, the collar-style criterion under
/// which two closed geodesics of these lengths must cross at most boundedly
/// often. Evaluated in log space so large lengths do not overflow.
pub fn sinh_product_test(l1: f64, l2: f64) -> Result<bool> {
    check_positive("l1", l1)?;
    check_positive("l2", l2)?;
    Ok(log_sinh(l1 / 2.0) + log_sinh(l2 / 2.0) >= 0.0)
}

/// Count bound `exp³(r + ν)/ν³` for orbit points of an elementary group in
/// a ball of radius `r` around a point of injectivity radius at least `ν`.
pub fn lemma1_count_bound(r: f64, nu: f64) -> Result<BoundValue> {
    check_positive("r", r)?;
    check_positive("nu", nu)?;
    let log = EXP3_READING.log_apply(r + nu) - 3.0 * nu.ln();
    Ok(BoundValue::from_log(
        "lemma1_count_bound",
        &[("r", r), ("nu", nu)],
        log,
    ))
}

/// Count bound `exp³(2r + ν)/ν³` for group elements moving some point of a
/// radius-`r` ball into the ball.
pub fn lemma2_count_bound(r: f64, nu: f64) -> Result<BoundValue> {
    check_positive("r", r)?;
    check_positive("nu", nu)?;
    let log = EXP3_READING.log_apply(2.0 * r + nu) - 3.0 * nu.ln();
    Ok(BoundValue::from_log(
        "lemma2_count_bound",
        &[("r", r), ("nu", nu)],
        log,
    ))
}

/// `log(⌊exp(18r + 2ν)/ν³⌋ + 1)`. The floor is formed exactly while the
/// quantity fits comfortably in a double; beyond that the `+1` and the
/// fractional part are far below the 1e−12 reporting resolution and the
/// exponent is returned directly.
fn log_floor_term(r: f64, nu: f64) -> f64 {
    let a = 18.0 * r + 2.0 * nu;
    let t = a - 3.0 * nu.ln();
    if t < 300.0 {
        let q = if a < 700.0 { a.exp() / nu.powi(3) } else { t.exp() };
        (q.floor() + 1.0).ln()
    } else {
        t
    }
}

/// Displacement constant `C₁(r, ν) = 2r / n(r, ν)` with
/// `n(r, ν) = ⌊exp(18r + 2ν)/ν³⌋ + 1`. Always positive and below `2r`.
pub fn c1(r: f64, nu: f64) -> Result<BoundValue> {
    check_positive("r", r)?;
    check_positive("nu", nu)?;
    let log = (2.0 * r).ln() - log_floor_term(r, nu);
    Ok(BoundValue::from_log("C1", &[("r", r), ("nu", nu)], log))
}

fn log_k(r_cap: f64, m: f64) -> f64 {
    (2.0 * (2.0 + r_cap)).ln() + 3.0 * m.ln() - 18.0 * (2.0 + r_cap) - 2.0 * m
}

/// Margin constant `k(R, ν) = 2(2 + R)ν³ / exp(18(2 + R) + 2ν)` entering
/// the axis-distance alternative.
pub fn k_lemma5(r_cap: f64, nu: f64) -> Result<BoundValue> {
    check_positive("R", r_cap)?;
    check_positive("nu", nu)?;
    Ok(BoundValue::from_log(
        "k_lemma5",
        &[("R", r_cap), ("nu", nu)],
        log_k(r_cap, nu),
    ))
}

/// Distance threshold `C₊(R, μ) = 4R + 6 + 1/k(R, μ)` of the axis
/// alternative: a point moved a bounded distance by a loxodromic element is
/// within `C₊` of one of the axis endpoints' representatives.
pub fn c_plus(r_cap: f64, mu: f64) -> Result<BoundValue> {
    check_positive("R", r_cap)?;
    check_positive("mu", mu)?;
    let log = log_sum_exp(&[(4.0 * r_cap + 6.0).ln(), -log_k(r_cap, mu)]);
    Ok(BoundValue::from_log(
        "C_plus",
        &[("R", r_cap), ("mu", mu)],
        log,
    ))
}

/// Translation-length threshold `C₋(R, μ) = C₁(R + 2, μ)` of the axis
/// alternative.
pub fn c_minus(r_cap: f64, mu: f64) -> Result<BoundValue> {
    check_positive("R", r_cap)?;
    check_positive("mu", mu)?;
    let mut b = c1(r_cap + 2.0, mu)?;
    b.formula_id = "C_minus".to_owned();
    b.inputs = [("R".to_owned(), r_cap), ("mu".to_owned(), mu)]
        .into_iter()
        .collect();
    Ok(b)
}

/// Window size `N(C, ν) = exp³(4C + 4)/ν³` bounding how many translates of
/// one ruled film can meet another when both stay within distance `C` of
/// base points of injectivity radius at least `ν`.
pub fn n_theorem4(c: f64, nu: f64) -> Result<BoundValue> {
    check_positive("C", c)?;
    check_positive("nu", nu)?;
    let log = EXP3_READING.log_apply(4.0 * c + 4.0) - 3.0 * nu.ln();
    Ok(BoundValue::from_log("N_theorem4", &[("C", c), ("nu", nu)], log))
}

/// Refined count `N′(C, ν) = exp(9ν + 6)/ν³ + 96C/ν + 120000·exp(72C)/ν³`
/// for the version of the window bound that tracks the thin part
/// separately.
pub fn n_prime_theorem5(c: f64, nu: f64) -> Result<BoundValue> {
    check_positive("C", c)?;
    check_positive("nu", nu)?;
    let log = log_sum_exp(&[
        9.0 * nu + 6.0 - 3.0 * nu.ln(),
        (96.0 * c / nu).ln(),
        120000.0_f64.ln() + 72.0 * c - 3.0 * nu.ln(),
    ]);
    Ok(BoundValue::from_log(
        "Nprime_theorem5",
        &[("C", c), ("nu", nu)],
        log,
    ))
}

fn c2_value(mu: f64, g: u32) -> f64 {
    let gm = f64::from(g) - 1.0;
    2.0 * gm / mu + 6.0 * gm * mu.sinh()
}

/// Diameter bound `C₂(μ, g) = (2g − 2)/μ + 6(g − 1) sinh μ` for the thick
/// part of a closed genus-`g` hyperbolic surface with Margulis parameter
/// `μ`.
pub fn c2(mu: f64, g: u32) -> Result<BoundValue> {
    check_positive("mu", mu)?;
    check_genus("g", g)?;
    let gm = f64::from(g) - 1.0;
    let log = log_sum_exp(&[(2.0 * gm).ln() - mu.ln(), (6.0 * gm).ln() + log_sinh(mu)]);
    Ok(BoundValue::from_log("C2", &[("mu", mu), ("g", f64::from(g))], log))
}

/// Injectivity-radius floor `C₃(μ, g) = C₁(C₂(μ, g), μ)` along the image
/// of a pleated surface.
pub fn c3(mu: f64, g: u32) -> Result<BoundValue> {
    check_positive("mu", mu)?;
    check_genus("g", g)?;
    let mut b = c1(c2_value(mu, g), mu)?;
    b.formula_id = "C3".to_owned();
    b.inputs = [("mu".to_owned(), mu), ("g".to_owned(), f64::from(g))]
        .into_iter()
        .collect();
    Ok(b)
}

fn log_c1(r: f64, nu: f64) -> f64 {
    (2.0 * r).ln() - log_floor_term(r, nu)
}

fn log_c4(mu: f64, g: u32, nu: f64) -> f64 {
    let r_cap = 2.0 * c2_value(mu, g);
    log_sum_exp(&[
        (4.0 * r_cap + 6.0).ln(),
        -log_k(r_cap, nu),
        4.0_f64.ln() + log_sinh(mu / 2.0) - log_c1(3.0 * r_cap + 2.0, mu),
    ])
}

/// Composite threshold
/// `C₄ = 4R + 6 + 1/k(R, ν) + 4 sinh(μ/2)/C₁(3R + 2, μ)` with
/// `R = 2C₂(μ, g)`, controlling distances to long-triangle vertices across
/// a Margulis tube.
pub fn c4(mu: f64, g: u32, nu: f64) -> Result<BoundValue> {
    check_positive("mu", mu)?;
    check_genus("g", g)?;
    check_positive("nu", nu)?;
    Ok(BoundValue::from_log(
        "C4",
        &[("mu", mu), ("g", f64::from(g)), ("nu", nu)],
        log_c4(mu, g, nu),
    ))
}

/// Final separation constant
/// `C₅ = max{4R + 6 + 1/C₁(R + 2, ν), C₄}` with `R = 2C₂(μ, g)`.
pub fn c5(mu: f64, g: u32, nu: f64) -> Result<BoundValue> {
    check_positive("mu", mu)?;
    check_genus("g", g)?;
    check_positive("nu", nu)?;
    let r_cap = 2.0 * c2_value(mu, g);
    let first = log_sum_exp(&[(4.0 * r_cap + 6.0).ln(), -log_c1(r_cap + 2.0, nu)]);
    let log = first.max(log_c4(mu, g, nu));
    Ok(BoundValue::from_log(
        "C5",
        &[("mu", mu), ("g", f64::from(g)), ("nu", nu)],
        log,
    ))
}

/// End-to-end intersection bound
/// `300(g − 1)² exp(4000(g − 1)/μ)/μ²` for homology classes carried by
/// pleated genus-`g` surfaces, `g` the larger of the two genera.
pub fn final_intersection_bound(g: u32, mu: f64) -> Result<BoundValue> {
    check_genus("g", g)?;
    check_positive("mu", mu)?;
    let gm = f64::from(g) - 1.0;
    let log = 300.0_f64.ln() + 2.0 * gm.ln() + 4000.0 * gm / mu - 2.0 * mu.ln();
    Ok(BoundValue::from_log(
        "final_intersection_bound",
        &[("g", f64::from(g)), ("mu", mu)],
        log,
    ))
}

/// Linking-number bound `exp(8000(g₁ + g₂)/μ)` for a pair of surface
/// classes.
pub fn link_count_bound(g1: u32, g2: u32, mu: f64) -> Result<BoundValue> {
    check_genus("g1", g1)?;
    check_genus("g2", g2)?;
    check_positive("mu", mu)?;
    let log = 8000.0 * f64::from(g1 + g2) / mu;
    Ok(BoundValue::from_log(
        "link_count_bound",
        &[("g1", f64::from(g1)), ("g2", f64::from(g2)), ("mu", mu)],
        log,
    ))
}

/// Plane-intersection bound `exp(l₁ + l₂ + 1)` for a pair of closed
/// geodesics of the given lengths on a hyperbolic surface.
pub fn appendix_bound(l1: f64, l2: f64) -> Result<BoundValue> {
    check_positive("l1", l1)?;
    check_positive("l2", l2)?;
    Ok(BoundValue::from_log(
        "appendix_bound",
        &[("l1", l1), ("l2", l2)],
        l1 + l2 + 1.0,
    ))
}

/// Whether `|e| ≤ 2g − 2`: the Euler number range every flat bundle over a
/// genus-`g` surface must satisfy.
pub fn milnor_wood_test(e: i64, g: u32) -> Result<bool> {
    check_genus("g", g)?;
    Ok(e.unsigned_abs() <= u64::from(2 * g - 2))
}

/// Whether `0 < e ≤ (2g − 2)/3`: the Euler-number range in which the
/// realization result applies.
pub fn theorem2_range_test(e: i64, g: u32) -> Result<bool> {
    check_genus("g", g)?;
    Ok(e > 0 && (e as f64) <= (2.0 * f64::from(g) - 2.0) / 3.0)
}

/// Triangulation edge-length bound `(6g − 6)² C₂(μ, g)`.
///
/// The construction this feeds states the same bound twice with different
/// leading factors; see [`edge_bound_16g16`] for the other one. Both are
/// kept and the discrepancy is left visible rather than reconciled.
pub fn edge_bound_6g6(mu: f64, g: u32) -> Result<BoundValue> {
    check_positive("mu", mu)?;
    check_genus("g", g)?;
    let lead = 6.0 * f64::from(g) - 6.0;
    let log = 2.0 * lead.ln() + c2(mu, g)?.log_value;
    Ok(BoundValue::from_log(
        "edge_bound_6g6",
        &[("mu", mu), ("g", f64::from(g))],
        log,
    ))
}

/// Triangulation edge-length bound `(16g − 16)² C₂(μ, g)`, the variant of
/// [`edge_bound_6g6`] with the larger leading factor.
pub fn edge_bound_16g16(mu: f64, g: u32) -> Result<BoundValue> {
    check_positive("mu", mu)?;
    check_genus("g", g)?;
    let lead = 16.0 * f64::from(g) - 16.0;
    let log = 2.0 * lead.ln() + c2(mu, g)?.log_value;
    Ok(BoundValue::from_log(
        "edge_bound_16g16",
        &[("mu", mu), ("g", f64::from(g))],
        log,
    ))
}

/// Per-case count `8 exp³(2R + μ/2)/μ³` for intersections of two short
/// triangles of diameter at most `R/2`.
pub fn short_short_case_bound(r_cap: f64, mu: f64) -> Result<BoundValue> {
    check_positive("R", r_cap)?;
    check_positive("mu", mu)?;
    let log = 8.0_f64.ln() + EXP3_READING.log_apply(2.0 * r_cap + mu / 2.0) - 3.0 * mu.ln();
    Ok(BoundValue::from_log(
        "short_short_case_bound",
        &[("R", r_cap), ("mu", mu)],
        log,
    ))
}

/// Per-case count `3 exp³(2C + ν/2)/ν³` for intersections of a short
/// triangle with a long one whose vertices are within `C` of the crossing.
pub fn short_long_case_bound(c: f64, nu: f64) -> Result<BoundValue> {
    check_positive("C", c)?;
    check_positive("nu", nu)?;
    let log = 3.0_f64.ln() + EXP3_READING.log_apply(2.0 * c + nu / 2.0) - 3.0 * nu.ln();
    Ok(BoundValue::from_log(
        "short_long_case_bound",
        &[("C", c), ("nu", nu)],
        log,
    ))
}

/// Per-case count `6(12(g − 1))² exp³(2C + ν/2)/ν³` for intersections of
/// two long triangles, summed over the triangles of both surfaces.
pub fn long_long_case_bound(g: u32, c: f64, nu: f64) -> Result<BoundValue> {
    check_genus("g", g)?;
    check_positive("C", c)?;
    check_positive("nu", nu)?;
    let log = 6.0_f64.ln()
        + 2.0 * (12.0 * (f64::from(g) - 1.0)).ln()
        + EXP3_READING.log_apply(2.0 * c + nu / 2.0)
        - 3.0 * nu.ln();
    Ok(BoundValue::from_log(
        "long_long_case_bound",
        &[("g", f64::from(g)), ("C", c), ("nu", nu)],
        log,
    ))
}

/// Every formula id accepted by [`evaluate`], in registry order.
pub fn formula_ids() -> &'static [&'static str] {
    &[
        "curve_bound_K",
        "sinh_product_test",
        "lemma1_count_bound",
        "lemma2_count_bound",
        "C1",
        "k_lemma5",
        "C_plus",
        "C_minus",
        "N_theorem4",
        "Nprime_theorem5",
        "C2",
        "C3",
        "C4",
        "C5",
        "final_intersection_bound",
        "link_count_bound",
        "appendix_bound",
        "milnor_wood_test",
        "theorem2_range_test",
        "edge_bound_6g6",
        "edge_bound_16g16",
        "short_short_case_bound",
        "short_long_case_bound",
        "long_long_case_bound",
    ]
}

struct Inputs<'a> {
    formula_id: &'a str,
    map: &'a BTreeMap<String, f64>,
    expected: Vec<&'static str>,
}

impl<'a> Inputs<'a> {
    fn new(formula_id: &'a str, map: &'a BTreeMap<String, f64>) -> Inputs<'a> {
        Inputs {
            formula_id,
            map,
            expected: Vec::new(),
        }
    }

    fn real(&mut self, key: &'static str) -> Result<f64> {
        self.expected.push(key);
        self.map.get(key).copied().ok_or_else(|| {
            Hyp4Error::InvalidInput(format!(
                "{} requires input `{key}`",
                self.formula_id
            ))
        })
    }

    fn genus(&mut self, key: &'static str) -> Result<u32> {
        let v = self.real(key)?;
        if v.fract() != 0.0 || !(2.0..=f64::from(u32::MAX)).contains(&v) {
            return Err(Hyp4Error::InvalidInput(format!(
                "{} requires `{key}` to be an integer genus >= 2, got {v}",
                self.formula_id
            )));
        }
        Ok(v as u32)
    }

    fn integer(&mut self, key: &'static str) -> Result<i64> {
        let v = self.real(key)?;
        if v.fract() != 0.0 || v.abs() > 9.0e15 {
            return Err(Hyp4Error::InvalidInput(format!(
                "{} requires `{key}` to be an integer, got {v}",
                self.formula_id
            )));
        }
        Ok(v as i64)
    }

    fn finish(self) -> Result<()> {
        for key in self.map.keys() {
            if !self.expected.contains(&key.as_str()) {
                return Err(Hyp4Error::InvalidInput(format!(
                    "{} does not take input `{key}` (expected {})",
                    self.formula_id,
                    self.expected.join(", ")
                )));
            }
        }
        Ok(())
    }
}

/// Evaluates the formula named by `formula_id` on named inputs. Unknown
/// ids, missing inputs and extraneous inputs are rejected. Boolean
/// predicates report value `1`/`0` with `log_value` `0`/`−inf`.
pub fn evaluate(formula_id: &str, inputs: &BTreeMap<String, f64>) -> Result<BoundValue> {
    let mut input = Inputs::new(formula_id, inputs);
    let value = match formula_id {
        "curve_bound_K" => curve_bound_k(input.real("l1")?, input.real("l2")?)?,
        "sinh_product_test" => {
            let (l1, l2) = (input.real("l1")?, input.real("l2")?);
            BoundValue::from_bool(
                formula_id,
                &[("l1", l1), ("l2", l2)],
                sinh_product_test(l1, l2)?,
            )
        }
        "lemma1_count_bound" => lemma1_count_bound(input.real("r")?, input.real("nu")?)?,
        "lemma2_count_bound" => lemma2_count_bound(input.real("r")?, input.real("nu")?)?,
        "C1" => c1(input.real("r")?, input.real("nu")?)?,
        "k_lemma5" => k_lemma5(input.real("R")?, input.real("nu")?)?,
        "C_plus" => c_plus(input.real("R")?, input.real("mu")?)?,
        "C_minus" => c_minus(input.real("R")?, input.real("mu")?)?,
        "N_theorem4" => n_theorem4(input.real("C")?, input.real("nu")?)?,
        "Nprime_theorem5" => n_prime_theorem5(input.real("C")?, input.real("nu")?)?,
        "C2" => c2(input.real("mu")?, input.genus("g")?)?,
        "C3" => c3(input.real("mu")?, input.genus("g")?)?,
        "C4" => c4(input.real("mu")?, input.genus("g")?, input.real("nu")?)?,
        "C5" => c5(input.real("mu")?, input.genus("g")?, input.real("nu")?)?,
        "final_intersection_bound" => {
            final_intersection_bound(input.genus("g")?, input.real("mu")?)?
        }
        "link_count_bound" => {
            link_count_bound(input.genus("g1")?, input.genus("g2")?, input.real("mu")?)?
        }
        "appendix_bound" => appendix_bound(input.real("l1")?, input.real("l2")?)?,
        "milnor_wood_test" => {
            let (e, g) = (input.integer("e")?, input.genus("g")?);
            BoundValue::from_bool(
                formula_id,
                &[("e", e as f64), ("g", f64::from(g))],
                milnor_wood_test(e, g)?,
            )
        }
        "theorem2_range_test" => {
            let (e, g) = (input.integer("e")?, input.genus("g")?);
            BoundValue::from_bool(
                formula_id,
                &[("e", e as f64), ("g", f64::from(g))],
                theorem2_range_test(e, g)?,
            )
        }
        "edge_bound_6g6" => edge_bound_6g6(input.real("mu")?, input.genus("g")?)?,
        "edge_bound_16g16" => edge_bound_16g16(input.real("mu")?, input.genus("g")?)?,
        "short_short_case_bound" => {
            short_short_case_bound(input.real("R")?, input.real("mu")?)?
        }
        "short_long_case_bound" => short_long_case_bound(input.real("C")?, input.real("nu")?)?,
        "long_long_case_bound" => {
            long_long_case_bound(input.genus("g")?, input.real("C")?, input.real("nu")?)?
        }
        _ => {
            return Err(Hyp4Error::InvalidInput(format!(
                "unknown formula id `{formula_id}`"
            )))
        }
    };
    input.finish()?;
    Ok(value)
}
