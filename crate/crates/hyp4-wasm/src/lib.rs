//! Browser bindings for the `hyp4` crate.
//!
//! Exposes three interactive operations behind flat `f64` buffers so a
//! static page can call them without a bundler or framework:
//!
//! - [`displacement_curve`]: how far an isometry moves points as they
//!   leave its invariant locus.
//! - [`cone_profile`]: a meridian of the thin-part cone boundary for the
//!   cyclic group of the same isometry.
//! - [`hypercycle_curve`]: hypercycle arc length next to its chord-length
//!   bound in the hyperbolic plane.
//!
//! All curves come back interleaved (`x0, y0, x1, y1, ...`, triples for
//! the hypercycle). Invalid parameters surface as JS exceptions carrying
//! the library error message. The exported functions are thin wrappers
//! over `String`-error cores because `JsError` cannot be constructed off
//! the wasm target, where this crate's unit tests run.

use nalgebra::{Unit, Vector3};
use wasm_bindgen::prelude::*;

use hyp4::geom::dist;
use hyp4::{ElementaryGroup, Isometry4, MargulisCone, Point4};

/// Word-length cap for the cyclic groups built by the demo.
const DEMO_TRUNCATION: u32 = 64;

fn msg(e: hyp4::Hyp4Error) -> String {
    e.to_string()
}

/// Builds the demo isometry from scalar controls.
///
/// `kind` is `"loxodromic"` (strength is the similarity coefficient
/// `λ > 1`) or `"parabolic"` (strength is the horizontal translation
/// length `|τ| > 0`); `theta` is the rotation angle in either case. The
/// loxodromic rotation acts in the horizontal 1-2 plane, the parabolic
/// rotation about the translation direction.
fn build_isometry(kind: &str, strength: f64, theta: f64) -> Result<Isometry4, String> {
    match kind {
        "loxodromic" => if theta == 0.0 {
            Isometry4::dilation(strength)
        } else {
            Isometry4::loxodromic(strength, theta, (Vector3::x(), Vector3::y()), 1.0)
        }
        .map_err(msg),
        "parabolic" => {
            let tau = Vector3::x() * strength;
            let axis = (theta != 0.0).then(|| Unit::new_normalize(Vector3::x()));
            Isometry4::parabolic(theta, axis, tau, 1.0).map_err(msg)
        }
        other => Err(format!(
            "unknown kind `{other}`; expected `loxodromic` or `parabolic`"
        )),
    }
}

fn displacement_curve_data(
    kind: &str,
    strength: f64,
    theta: f64,
    rho_max: f64,
    samples: usize,
) -> Result<Vec<f64>, String> {
    if !(rho_max.is_finite() && rho_max > 0.0) || samples < 2 {
        return Err("need rho_max > 0 and at least 2 samples".into());
    }
    let g = build_isometry(kind, strength, theta)?;
    let parabolic = kind == "parabolic";
    let mut out = Vec::with_capacity(2 * samples);
    for i in 0..samples {
        let rho = rho_max * i as f64 / (samples - 1) as f64;
        let p = if parabolic {
            Point4::new(0.0, 0.0, 0.0, (-rho).exp())
        } else {
            Point4::new(rho.sinh(), 0.0, 0.0, 1.0)
        }
        .map_err(msg)?;
        out.push(rho);
        out.push(dist(&p, &g.apply(&p)));
    }
    Ok(out)
}

fn cone_profile_data(
    kind: &str,
    strength: f64,
    theta: f64,
    nu: f64,
    samples: usize,
) -> Result<Vec<f64>, String> {
    if !(2..=512).contains(&samples) {
        return Err("samples must lie in 2..=512".into());
    }
    let g = build_isometry(kind, strength, theta)?;
    let group = ElementaryGroup::cyclic(g, DEMO_TRUNCATION).map_err(msg)?;
    let cone = MargulisCone::new(group, nu).map_err(msg)?;
    if cone.is_empty() {
        return Ok(Vec::new());
    }
    let mesh = cone.cone_boundary_mesh(samples).map_err(msg)?;
    let mut out = Vec::with_capacity(2 * samples);
    for i in 0..samples {
        let chart = mesh.vertices[i * samples].chart;
        out.push(chart[0]);
        out.push(chart[2]);
    }
    Ok(out)
}

fn hypercycle_curve_data(r: f64, t_max: f64, samples: usize) -> Result<Vec<f64>, String> {
    if !(t_max.is_finite() && t_max > 0.0) || samples < 2 {
        return Err("need t_max > 0 and at least 2 samples".into());
    }
    let mut out = Vec::with_capacity(3 * samples);
    for i in 0..samples {
        let t = t_max * i as f64 / (samples - 1) as f64;
        let arc = hyp4::surface2d::hypercycle_arc_length(t, r).map_err(msg)?;
        let p = hyp4::surface2d::PointH2::new(t.tanh(), 1.0 / t.cosh()).map_err(msg)?;
        let q = hyp4::surface2d::PointH2::new(r * t.tanh(), r / t.cosh()).map_err(msg)?;
        let chord = 2.0 * (hyp4::surface2d::dist_h2(p, q) / 2.0).sinh();
        out.push(t);
        out.push(arc);
        out.push(chord);
    }
    Ok(out)
}

/// Samples the displacement of points at distance `rho` from the
/// reference locus of the isometry: the axis for a loxodromic (points
/// move off it horizontally at unit height), the point `(0, 0, 0, 1)`
/// along the downward vertical for a parabolic.
///
/// Returns `samples` interleaved `(rho, displacement)` pairs with `rho`
/// running uniformly over `[0, rho_max]`.
#[wasm_bindgen]
pub fn displacement_curve(
    kind: &str,
    strength: f64,
    theta: f64,
    rho_max: f64,
    samples: usize,
) -> Result<Vec<f64>, JsError> {
    displacement_curve_data(kind, strength, theta, rho_max, samples)
        .map_err(|m| JsError::new(&m))
}

/// Samples one meridian of the thin-part cone boundary for the cyclic
/// group of the isometry at threshold `nu`.
///
/// Returns interleaved `(spread, height)` pairs: distance to the
/// invariant plane against `x4` for a loxodromic group, offset along the
/// translation direction against boundary height for a parabolic one. An
/// empty vector means the cone is empty (the translation length already
/// exceeds `nu`).
#[wasm_bindgen]
pub fn cone_profile(
    kind: &str,
    strength: f64,
    theta: f64,
    nu: f64,
    samples: usize,
) -> Result<Vec<f64>, JsError> {
    cone_profile_data(kind, strength, theta, nu, samples).map_err(|m| JsError::new(&m))
}

/// Samples the arc length of the hypercycle segment between heights `1`
/// and `r` at offset `t`, next to the chord-length bound `2 sinh(d/2)`
/// for the same endpoints.
///
/// Returns `samples` interleaved `(t, arc, chord)` triples with `t`
/// running uniformly over `[0, t_max]`; the two curves agree at `r = 1`.
#[wasm_bindgen]
pub fn hypercycle_curve(r: f64, t_max: f64, samples: usize) -> Result<Vec<f64>, JsError> {
    hypercycle_curve_data(r, t_max, samples).map_err(|m| JsError::new(&m))
}
