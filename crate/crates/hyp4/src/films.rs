//! Ruled films spanned between a geodesic segment and its isometric image.
//!
//! A film connects the segment `[x, z]` to its image `T[x, z]` through the
//! commuting factorization `T = T_θ ∘ T_λ`: the translational sheet sweeps
//! `[x, z]` along the translational flow up to `T_λ[x, z]`, and the
//! rotational sheet continues from there along the rotational flow up to
//! `T[x, z]`. The two sheets agree along the seam `T_λ[x, z]`.
//!
//! The module certifies general position of a film (segment clear of the
//! rotational fixed plane and axis, spanning hyperplane not orthogonal to
//! the fixed plane), counts transversal intersections of a film with a
//! geodesic 2-plane and with group translates of another film by Newton
//! iteration from dense seed grids (signs from the orientation of the
//! tangent 4-frame), and extends a film by geodesic caps and corner
//! triangles to a surface whose free boundary is the two arcs `[x, Tx]` and
//! `[z, Tz]`.

use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};

use crate::geom::{self, GeodesicPlane2, GeodesicSegment, Point4};
use crate::isometry::{Isometry4, IsometryKind, Motion};
use crate::margulis::ElementaryGroup;
use crate::{Hyp4Error, Result};

/// Seed-grid resolution per sheet for film-plane Newton searches.
pub const NEWTON_GRID: usize = 32;
/// Seed-grid resolution per sheet for film-film Newton searches (the seed
/// space is the product of two sheet squares).
const FILM_FILM_GRID: usize = 16;
/// Maximum Newton iterations per seed.
const NEWTON_MAX_ITER: usize = 50;
/// Residual norm below which a Newton iterate counts as a root.
const NEWTON_RESIDUAL_TOL: f64 = 1e-11;
/// Smallest singular value of the Jacobian below which an accepted root is
/// a non-transversal contact.
const NEWTON_SINGULAR_TOL: f64 = 1e-7;
/// Central-difference step for tangents and Jacobian columns.
const FD_STEP: f64 = 1e-6;
/// Newton iterates are confined to this box around the unit parameter
/// square, so diverging seeds cannot wander off.
const DOMAIN_MIN: f64 = -0.5;
const DOMAIN_MAX: f64 = 1.5;
/// Largest Newton step per iteration in parameter space.
const MAX_NEWTON_STEP: f64 = 0.5;
/// Roots are accepted when their parameters lie this close to `[0, 1]`.
const PARAM_ACCEPT_TOL: f64 = 1e-9;
/// Roots of the same sheet (pair) closer than this in every parameter are
/// duplicates.
const PARAM_DEDUP_TOL: f64 = 1e-6;
/// Roots closer than this in the ambient chart (relative to the coordinate
/// scale) are duplicates regardless of the sheet that produced them, which
/// catches seam roots found on both sheets.
const AMBIENT_DEDUP_TOL: f64 = 1e-8;
/// Seeds are kept only when their constraint values could plausibly reach
/// zero within a grid cell, estimated from the variation to neighbors.
const SEED_VARIATION_FACTOR: f64 = 4.0;
/// Margins must exceed this for a general-position certificate.
pub const GENERAL_POSITION_TOL: f64 = 1e-9;
/// Samples per edge for the boundary-disjointness precondition.
const BOUNDARY_SAMPLES: usize = 64;
/// Minimum ambient clearance between the boundaries of two films for the
/// signed count to be well defined.
const BOUNDARY_CLEARANCE: f64 = 1e-6;
/// Samples per axis when estimating a film's bounding ball.
const BALL_SAMPLES: usize = 17;
/// Multiplicative and additive slack on the sampled bounding radius.
const BALL_SLACK_FACTOR: f64 = 1.02;
const BALL_SLACK: f64 = 0.05;

/// The two ruled sheets of a film.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FilmSheet {
    /// Sweep of the base segment `[x, z]` along the translational flow.
    Translational,
    /// Sweep of the translated segment `T_λ[x, z]` along the rotational
    /// flow.
    Rotational,
}

impl FilmSheet {
    fn label(self) -> &'static str {
        match self {
            FilmSheet::Translational => "translational",
            FilmSheet::Rotational => "rotational",
        }
    }
}

/// Which side of a film: the `x` side (`s = 0`) or the `z` side (`s = 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilmEnd {
    /// The side of the first segment endpoint.
    Start,
    /// The side of the second segment endpoint.
    End,
}

impl FilmEnd {
    fn s(self) -> f64 {
        match self {
            FilmEnd::Start => 0.0,
            FilmEnd::End => 1.0,
        }
    }
}

/// A ruled film between a geodesic segment `[x, z]` and its image under an
/// isometry `T`.
///
/// The film is the union of two sheets, each a map `[0, 1]² → H⁴`: the
/// translational sheet `(s, t) ↦ exp(t ζ)(γ(s))` where `γ` parametrizes
/// `[x, z]` and `exp(t ζ)` is the translational flow of `T`, and the
/// rotational sheet `(s, t) ↦ exp(t ξ)(γ_λ(s))` where `γ_λ` parametrizes
/// `T_λ[x, z]` and `exp(t ξ)` is the rotational flow. Both flows commute
/// with geodesic interpolation, so the translational sheet at `t = 1` and
/// the rotational sheet at `t = 0` trace the same seam `T_λ[x, z]`.
#[derive(Clone, Debug)]
pub struct RuledFilm {
    isometry: Isometry4,
    base: GeodesicSegment,
    shifted: GeodesicSegment,
    tx: Point4,
    tz: Point4,
}

impl RuledFilm {
    /// Creates the film spanned between `[x, z]` and `T[x, z]`.
    ///
    /// # Errors
    ///
    /// Returns [`Hyp4Error::Invalid`] if `x = z`.
    pub fn new(isometry: Isometry4, x: Point4, z: Point4) -> Result<Self> {
        let base = GeodesicSegment::new(x, z)?;
        let t_lambda = isometry.flow_translational(1.0);
        let shifted = GeodesicSegment::new(t_lambda.apply(&x), t_lambda.apply(&z))?;
        let tx = isometry.apply(&x);
        let tz = isometry.apply(&z);
        Ok(Self {
            isometry,
            base,
            shifted,
            tx,
            tz,
        })
    }

    /// The isometry spanning the film.
    pub fn isometry(&self) -> &Isometry4 {
        &self.isometry
    }

    /// The first segment endpoint `x`.
    pub fn x(&self) -> &Point4 {
        self.base.a()
    }

    /// The second segment endpoint `z`.
    pub fn z(&self) -> &Point4 {
        self.base.b()
    }

    /// The base segment `[x, z]`.
    pub fn segment(&self) -> &GeodesicSegment {
        &self.base
    }

    /// The three corners on one side: the segment endpoint, its image under
    /// the translational component, and its image under the full isometry.
    pub fn corners(&self, end: FilmEnd) -> [Point4; 3] {
        match end {
            FilmEnd::Start => [*self.base.a(), *self.shifted.a(), self.tx],
            FilmEnd::End => [*self.base.b(), *self.shifted.b(), self.tz],
        }
    }

    /// Evaluates a sheet at `(s, t)`; `s` runs along the segment, `t` along
    /// the flow. Parameters outside `[0, 1]` extend the ruling.
    pub fn point(&self, sheet: FilmSheet, s: f64, t: f64) -> Point4 {
        match sheet {
            FilmSheet::Translational => self
                .isometry
                .flow_translational(t)
                .apply(&self.base.eval(s)),
            FilmSheet::Rotational => self
                .isometry
                .flow_rotational(t)
                .apply(&self.shifted.eval(s)),
        }
    }

    /// A side arc of the film boundary: the flow orbit of one segment
    /// endpoint. The side boundary on each end is the translational arc
    /// from the endpoint to its `T_λ`-image followed by the rotational arc
    /// on to its `T`-image, and the two side boundaries together make up
    /// the full film boundary apart from the segments `[x, z]` and
    /// `T[x, z]`.
    pub fn boundary_point(&self, end: FilmEnd, sheet: FilmSheet, t: f64) -> Point4 {
        self.point(sheet, end.s(), t)
    }

    /// Whether the rotational component of the isometry is trivial, which
    /// collapses the rotational sheet onto the translated segment.
    pub fn rotational_degenerate(&self) -> bool {
        self.isometry.rotation().is_identity()
    }

    fn active_sheets(&self) -> &'static [FilmSheet] {
        if self.rotational_degenerate() {
            &[FilmSheet::Translational]
        } else {
            &[FilmSheet::Translational, FilmSheet::Rotational]
        }
    }

    /// Center and hyperbolic radius of a sampled bounding ball of the film,
    /// with slack added for the finite sampling.
    pub fn bounding_ball(&self) -> (Point4, f64) {
        let center = self.point(FilmSheet::Translational, 0.5, 0.5);
        let mut radius: f64 = 0.0;
        for sheet in [FilmSheet::Translational, FilmSheet::Rotational] {
            for i in 0..BALL_SAMPLES {
                for j in 0..BALL_SAMPLES {
                    let s = i as f64 / (BALL_SAMPLES - 1) as f64;
                    let t = j as f64 / (BALL_SAMPLES - 1) as f64;
                    radius = radius.max(geom::dist(&center, &self.point(sheet, s, t)));
                }
            }
        }
        (center, BALL_SLACK_FACTOR * radius + BALL_SLACK)
    }

    /// Sampled points along the topological boundary of the film: the two
    /// segments `[x, z]` and `T[x, z]` and the four side arcs.
    fn boundary_samples(&self) -> Vec<Point4> {
        let mut pts = Vec::with_capacity(6 * (BOUNDARY_SAMPLES + 1));
        for k in 0..=BOUNDARY_SAMPLES {
            let t = k as f64 / BOUNDARY_SAMPLES as f64;
            pts.push(self.point(FilmSheet::Translational, 0.0, t));
            pts.push(self.point(FilmSheet::Translational, 1.0, t));
            pts.push(self.point(FilmSheet::Rotational, 0.0, t));
            pts.push(self.point(FilmSheet::Rotational, 1.0, t));
            pts.push(self.point(FilmSheet::Translational, t, 0.0));
            pts.push(self.point(FilmSheet::Rotational, t, 1.0));
        }
        pts
    }

    /// A hyperbolic radius within which the whole film stays around its two
    /// spanning segments: flow displacement grows monotonically in the flow
    /// parameter and is convex along geodesics, so it is bounded by its
    /// values at the four relevant corners.
    fn sweep_reach(&self) -> (f64, f64) {
        let [x, mx, tx] = self.corners(FilmEnd::Start);
        let [z, mz, tz] = self.corners(FilmEnd::End);
        let translational = geom::dist(&x, &mx).max(geom::dist(&z, &mz));
        let rotational = geom::dist(&mx, &tx).max(geom::dist(&mz, &tz));
        (translational, rotational)
    }
}

/// Evaluates a film sheet at `(s, t)`.
pub fn film_point(film: &RuledFilm, sheet: FilmSheet, s: f64, t: f64) -> Point4 {
    film.point(sheet, s, t)
}

/// Numeric certificate for the general-position conditions of a film.
///
/// Condition one asks the base segment to stay clear of the rotational
/// fixed plane of the spanning isometry (and of its axis, where one
/// exists); condition two asks the geodesic hyperplane spanned by the
/// segment together with the axis not to be orthogonal to the fixed plane.
/// Conditions that do not apply to the isometry kind (no rotational part,
/// parabolic with no axis) hold vacuously with infinite margin.
#[derive(Clone, Copy, Debug)]
pub struct GeneralPositionCertificate {
    /// The base segment stays clear of the rotational fixed plane and axis.
    pub segment_clear: bool,
    /// Minimal Euclidean distance from the base segment to the rotational
    /// fixed plane and axis.
    pub segment_margin: f64,
    /// The hyperplane spanned by the segment and the axis is not orthogonal
    /// to the rotational fixed plane.
    pub not_orthogonal: bool,
    /// Angular distance of that hyperplane from the orthogonal position.
    pub orthogonality_margin: f64,
    /// Both conditions hold with margin above [`GENERAL_POSITION_TOL`].
    pub certified: bool,
}

/// Computes the general-position certificate of a film.
pub fn check_general_position(film: &RuledFilm) -> GeneralPositionCertificate {
    let segment_margin = segment_clearance(film);
    let orthogonality_margin = orthogonality_clearance(film);
    let segment_clear = segment_margin > GENERAL_POSITION_TOL;
    let not_orthogonal = orthogonality_margin > GENERAL_POSITION_TOL;
    GeneralPositionCertificate {
        segment_clear,
        segment_margin,
        not_orthogonal,
        orthogonality_margin,
        certified: segment_clear && not_orthogonal,
    }
}

/// Minimal Euclidean distance from the base segment to the fixed set the
/// first condition excludes: the rotational fixed plane where the rotation
/// is nontrivial (it contains the axis in the loxodromic case), the axis
/// alone for a pure dilation, and nothing for a pure translation.
///
/// The horizontal part of a geodesic moves monotonically along the straight
/// chord between the endpoint horizontals, and the Euclidean distance to a
/// vertical plane or line is convex along that chord, so the minimum over
/// the segment is unimodal and a ternary search finds it.
fn segment_clearance(film: &RuledFilm) -> f64 {
    let g = film.isometry();
    let has_rotation = !g.rotation().is_identity();
    let pointwise: Box<dyn Fn(&Point4) -> f64> = match g.kind() {
        IsometryKind::Loxodromic => {
            if has_rotation {
                Box::new(|p: &Point4| g.euclidean_dist_to_fixed_plane(p))
            } else {
                Box::new(|p: &Point4| p.horizontal().norm())
            }
        }
        IsometryKind::Parabolic => {
            if has_rotation {
                Box::new(|p: &Point4| g.euclidean_dist_to_fixed_plane(p))
            } else {
                return f64::INFINITY;
            }
        }
    };
    let base = &film.base;
    geom::ternary_min(0.0, 1.0, |s| pointwise(&base.eval(s))).0
}

/// Angular margin of the second condition for loxodromic isometries with a
/// nontrivial rotation; infinite otherwise.
///
/// A geodesic hyperplane containing the vertical axis is a vertical
/// hyperplane with a horizontal unit normal `n`, and it contains the
/// segment exactly when `n` is orthogonal to both endpoint horizontals, so
/// `n` is their normalized cross product. The fixed plane meets the
/// hyperplane along the axis at angle `arcsin |u · n|` where `u` is the
/// rotation axis, so the angular distance from orthogonality is
/// `arccos |u · n|`. Segments whose endpoint horizontals are collinear do
/// not span a unique hyperplane and get margin zero.
fn orthogonality_clearance(film: &RuledFilm) -> f64 {
    let g = film.isometry();
    if g.kind() != IsometryKind::Loxodromic {
        return f64::INFINITY;
    }
    let Some(u) = g.rotation().axis().copied() else {
        return f64::INFINITY;
    };
    let hx = film.base.a().horizontal();
    let hz = film.base.b().horizontal();
    let n = hx.cross(&hz);
    let scale = (hx.norm() * hz.norm()).max(f64::MIN_POSITIVE);
    if n.norm() <= 1e-12 * scale {
        return 0.0;
    }
    let n_hat = n / n.norm();
    u.into_inner().dot(&n_hat).abs().min(1.0).acos()
}

/// A transversal intersection of a film sheet with a geodesic plane.
#[derive(Clone, Copy, Debug)]
pub struct FilmPlaneRoot {
    /// The sheet carrying the root.
    pub sheet: FilmSheet,
    /// Segment parameter of the root.
    pub s: f64,
    /// Flow parameter of the root.
    pub t: f64,
    /// The intersection point.
    pub point: Point4,
}

/// Transversal intersections of a film with a geodesic plane.
#[derive(Clone, Debug, Default)]
pub struct PlaneIntersections {
    /// Deduplicated roots in canonical order.
    pub roots: Vec<FilmPlaneRoot>,
}

impl PlaneIntersections {
    /// Number of distinct transversal intersection points.
    pub fn count(&self) -> usize {
        self.roots.len()
    }
}

/// Counts transversal intersections of a film with a geodesic 2-plane.
///
/// Solves the plane's two constraint equations over each sheet's parameter
/// square by Newton iteration seeded on a [`NEWTON_GRID`]² grid (seeds kept
/// only where the constraint values are small against their local grid
/// variation), accepts roots with parameters in `[0, 1]²`, and
/// deduplicates them within [`PARAM_DEDUP_TOL`] in parameters or
/// [`AMBIENT_DEDUP_TOL`] in the ambient chart. A fast path returns an
/// empty result when the plane stays farther from both spanning segments
/// than the flows can reach.
///
/// # Errors
///
/// Returns [`Hyp4Error::NonTransversal`] when an accepted root has a
/// Jacobian whose smallest singular value falls below the transversality
/// threshold; the count is unreliable in that case and the caller should
/// perturb the configuration.
pub fn count_film_plane_intersections(
    film: &RuledFilm,
    plane: &GeodesicPlane2,
) -> Result<PlaneIntersections> {
    let normals = plane.normals();
    let (reach_t, reach_r) = film.sweep_reach();
    let d_base = geom::dist_segment_to_span(&film.base, &normals);
    let d_shifted = geom::dist_segment_to_span(&film.shifted, &normals);
    if d_base > reach_t && d_shifted > reach_r {
        return Ok(PlaneIntersections::default());
    }

    let mut candidates: Vec<FilmPlaneRoot> = Vec::new();
    let mut degenerate = false;
    for &sheet in film.active_sheets() {
        let n = NEWTON_GRID;
        let step = 1.0 / (n - 1) as f64;
        let mut values = vec![(0.0f64, 0.0f64); n * n];
        for i in 0..n {
            for j in 0..n {
                let p = film.point(sheet, i as f64 * step, j as f64 * step);
                values[i * n + j] = plane.constraints(&p);
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (c1, c2) = values[i * n + j];
                let mut var1: f64 = 0.0;
                let mut var2: f64 = 0.0;
                for (ni, nj) in [
                    (i.wrapping_sub(1), j),
                    (i + 1, j),
                    (i, j.wrapping_sub(1)),
                    (i, j + 1),
                ] {
                    if ni < n && nj < n {
                        let (d1, d2) = values[ni * n + nj];
                        var1 = var1.max((c1 - d1).abs());
                        var2 = var2.max((c2 - d2).abs());
                    }
                }
                if c1.abs() > SEED_VARIATION_FACTOR * var1 + 1e-13
                    || c2.abs() > SEED_VARIATION_FACTOR * var2 + 1e-13
                {
                    continue;
                }
                let seed = (i as f64 * step, j as f64 * step);
                if let Some((s, t, singular)) = newton_plane(film, sheet, plane, seed) {
                    if in_unit_interval(s) && in_unit_interval(t) {
                        if singular {
                            degenerate = true;
                        }
                        candidates.push(FilmPlaneRoot {
                            sheet,
                            s,
                            t,
                            point: film.point(sheet, s, t),
                        });
                    }
                }
            }
        }
    }
    if degenerate {
        return Err(Hyp4Error::NonTransversal(
            "film-plane root with near-singular Jacobian; count unreliable".into(),
        ));
    }

    candidates.sort_by(|a, b| {
        (a.sheet, a.s, a.t)
            .partial_cmp(&(b.sheet, b.s, b.t))
            .expect("finite root parameters")
    });
    let mut roots: Vec<FilmPlaneRoot> = Vec::new();
    for c in candidates {
        let dup = roots.iter().any(|r| {
            (r.sheet == c.sheet
                && (r.s - c.s).abs() <= PARAM_DEDUP_TOL
                && (r.t - c.t).abs() <= PARAM_DEDUP_TOL)
                || ambient_close(&r.point, &c.point)
        });
        if !dup {
            roots.push(c);
        }
    }
    Ok(PlaneIntersections { roots })
}

fn in_unit_interval(v: f64) -> bool {
    (-PARAM_ACCEPT_TOL..=1.0 + PARAM_ACCEPT_TOL).contains(&v)
}

fn ambient_close(p: &Point4, q: &Point4) -> bool {
    let scale = p
        .coords()
        .iter()
        .chain(q.coords().iter())
        .fold(1.0f64, |m, c| m.max(c.abs()));
    p.euclidean_dist(q) <= AMBIENT_DEDUP_TOL * scale
}

/// One Newton run for the film-plane system from the given seed. Returns
/// the converged parameters and whether the Jacobian there is near
/// singular; `None` when the run does not converge.
fn newton_plane(
    film: &RuledFilm,
    sheet: FilmSheet,
    plane: &GeodesicPlane2,
    seed: (f64, f64),
) -> Option<(f64, f64, bool)> {
    let residual = |s: f64, t: f64| -> Vector2<f64> {
        let (c1, c2) = plane.constraints(&film.point(sheet, s, t));
        Vector2::new(c1, c2)
    };
    let jacobian = |s: f64, t: f64| -> Matrix2<f64> {
        let ds = (residual(s + FD_STEP, t) - residual(s - FD_STEP, t)) / (2.0 * FD_STEP);
        let dt = (residual(s, t + FD_STEP) - residual(s, t - FD_STEP)) / (2.0 * FD_STEP);
        Matrix2::from_columns(&[ds, dt])
    };
    let (mut s, mut t) = seed;
    for _ in 0..NEWTON_MAX_ITER {
        let r = residual(s, t);
        if !r.iter().all(|v| v.is_finite()) {
            return None;
        }
        if r.amax() <= NEWTON_RESIDUAL_TOL {
            let j = jacobian(s, t);
            let singular = min_singular_value(&j.svd(false, false).singular_values.as_slice())
                < NEWTON_SINGULAR_TOL;
            return Some((s, t, singular));
        }
        let j = jacobian(s, t);
        let delta = j.lu().solve(&(-r))?;
        let delta = delta.cap_magnitude(MAX_NEWTON_STEP);
        s = (s + delta.x).clamp(DOMAIN_MIN, DOMAIN_MAX);
        t = (t + delta.y).clamp(DOMAIN_MIN, DOMAIN_MAX);
    }
    None
}

fn min_singular_value(values: &[f64]) -> f64 {
    values.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// A signed transversal intersection between one film and a group translate
/// of another.
#[derive(Clone, Debug)]
pub struct FilmFilmRoot {
    /// Sheet of the first film carrying the root.
    pub sheet1: FilmSheet,
    /// Parameters on the first film.
    pub s: f64,
    /// Flow parameter on the first film.
    pub t: f64,
    /// Sheet of the translated second film.
    pub sheet2: FilmSheet,
    /// Segment parameter on the second film.
    pub u: f64,
    /// Flow parameter on the second film.
    pub v: f64,
    /// Exponents of the group word translating the second film.
    pub word: Vec<i64>,
    /// The intersection point.
    pub point: Point4,
    /// Orientation sign of the tangent 4-frame at the root.
    pub sign: i8,
}

/// Signed transversal intersections between a film and the group translates
/// of another film.
#[derive(Clone, Debug, Default)]
pub struct FilmFilmIntersections {
    /// Sum of the root signs.
    pub total: i64,
    /// Deduplicated roots in canonical order.
    pub roots: Vec<FilmFilmRoot>,
}

/// Counts signed transversal intersections between `f1` and the translates
/// `w · f2` for words `w` of `group` within its truncation window.
///
/// Translates are pruned by bounding balls: a word is searched only when
/// the hyperbolic distance between the films' sampled bounding balls is at
/// most the sum of their radii. For each surviving translate the
/// four-dimensional system `F1(s, t) = w · F2(u, v)` is solved by Newton
/// iteration from grid seeds prefiltered by ambient proximity, roots are
/// deduplicated canonically, and each root contributes the sign of the
/// determinant of the tangent 4-frame `(∂F1/∂s, ∂F1/∂t, ∂(wF2)/∂u,
/// ∂(wF2)/∂v)`.
///
/// # Errors
///
/// * [`Hyp4Error::InvalidInput`] when either film fails its
///   general-position certificate or the film boundaries come closer than
///   the clearance tolerance;
/// * [`Hyp4Error::NonTransversal`] on a near-singular accepted root;
/// * [`Hyp4Error::TruncationInsufficient`] when an unpruned word sits on
///   the edge of the truncation window, so the window may be too small.
pub fn count_film_film_intersections(
    f1: &RuledFilm,
    f2: &RuledFilm,
    group: &ElementaryGroup,
) -> Result<FilmFilmIntersections> {
    if !check_general_position(f1).certified {
        return Err(Hyp4Error::InvalidInput(
            "first film is not in general position".into(),
        ));
    }
    if !check_general_position(f2).certified {
        return Err(Hyp4Error::InvalidInput(
            "second film is not in general position".into(),
        ));
    }
    let (c1, r1) = f1.bounding_ball();
    let (c2, r2) = f2.bounding_ball();
    let boundary1 = f1.boundary_samples();
    let boundary2 = f2.boundary_samples();

    let rank = group.rank();
    let mut lims = [0i64; 3];
    for (k, &n) in group.truncation().iter().enumerate() {
        lims[k] = n as i64;
    }

    let mut candidates: Vec<FilmFilmRoot> = Vec::new();
    let mut degenerate = false;
    for e0 in -lims[0]..=lims[0] {
        for e1 in -lims[1]..=lims[1] {
            for e2 in -lims[2]..=lims[2] {
                let exps = [e0, e1, e2];
                let exps = &exps[..rank];
                let w = if exps.iter().all(|&e| e == 0) {
                    Motion::identity()
                } else {
                    group.word(exps)?.to_motion()
                };
                if geom::dist(&c1, &w.apply(&c2)) > r1 + r2 {
                    continue;
                }
                if exps
                    .iter()
                    .zip(lims.iter())
                    .any(|(&e, &l)| l > 0 && e.abs() == l)
                {
                    return Err(Hyp4Error::TruncationInsufficient(format!(
                        "translate at the window edge {exps:?} still overlaps the first film"
                    )));
                }
                let min_boundary_gap = boundary1
                    .iter()
                    .flat_map(|p| {
                        boundary2
                            .iter()
                            .map(move |q| p.euclidean_dist(&w.apply(q)))
                    })
                    .fold(f64::INFINITY, f64::min);
                if min_boundary_gap < BOUNDARY_CLEARANCE {
                    return Err(Hyp4Error::InvalidInput(format!(
                        "film boundaries are not disjoint for translate {exps:?}"
                    )));
                }
                search_translate(f1, f2, &w, exps, &mut candidates, &mut degenerate);
            }
        }
    }
    if degenerate {
        return Err(Hyp4Error::NonTransversal(
            "film-film root with near-singular Jacobian; count unreliable".into(),
        ));
    }

    candidates.sort_by(|a, b| {
        (&a.word, a.sheet1, a.sheet2, a.s, a.t, a.u, a.v)
            .partial_cmp(&(&b.word, b.sheet1, b.sheet2, b.s, b.t, b.u, b.v))
            .expect("finite root parameters")
    });
    let mut roots: Vec<FilmFilmRoot> = Vec::new();
    for c in candidates {
        let dup = roots.iter().any(|r| {
            r.word == c.word
                && ((r.sheet1 == c.sheet1
                    && r.sheet2 == c.sheet2
                    && (r.s - c.s).abs() <= PARAM_DEDUP_TOL
                    && (r.t - c.t).abs() <= PARAM_DEDUP_TOL
                    && (r.u - c.u).abs() <= PARAM_DEDUP_TOL
                    && (r.v - c.v).abs() <= PARAM_DEDUP_TOL)
                    || ambient_close(&r.point, &c.point))
        });
        if !dup {
            roots.push(c);
        }
    }
    let total = roots.iter().map(|r| r.sign as i64).sum();
    Ok(FilmFilmIntersections { total, roots })
}

/// Newton searches for one translate: seeds come from pairs of grid nodes
/// on the two films that are ambiently closer than the grids can resolve.
fn search_translate(
    f1: &RuledFilm,
    f2: &RuledFilm,
    w: &Motion,
    exps: &[i64],
    candidates: &mut Vec<FilmFilmRoot>,
    degenerate: &mut bool,
) {
    let n = FILM_FILM_GRID;
    let step = 1.0 / (n - 1) as f64;
    for &sheet1 in f1.active_sheets() {
        let (grid1, spacing1) = sheet_grid(|s, t| f1.point(sheet1, s, t), n, step);
        for &sheet2 in f2.active_sheets() {
            let (grid2, spacing2) =
                sheet_grid(|u, v| w.apply(&f2.point(sheet2, u, v)), n, step);
            let threshold = 1.5 * (spacing1 + spacing2);
            for i in 0..n {
                for j in 0..n {
                    let a = grid1[i * n + j];
                    for k in 0..n {
                        for l in 0..n {
                            if (a - grid2[k * n + l]).norm() > threshold {
                                continue;
                            }
                            let seed = [
                                i as f64 * step,
                                j as f64 * step,
                                k as f64 * step,
                                l as f64 * step,
                            ];
                            let Some((params, sign, singular)) =
                                newton_film_film(f1, sheet1, f2, sheet2, w, seed)
                            else {
                                continue;
                            };
                            if params.iter().all(|&p| in_unit_interval(p)) {
                                if singular {
                                    *degenerate = true;
                                }
                                let point =
                                    f1.point(sheet1, params[0], params[1]);
                                candidates.push(FilmFilmRoot {
                                    sheet1,
                                    s: params[0],
                                    t: params[1],
                                    sheet2,
                                    u: params[2],
                                    v: params[3],
                                    word: exps.to_vec(),
                                    point,
                                    sign,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
}

fn sheet_grid(
    point: impl Fn(f64, f64) -> Point4,
    n: usize,
    step: f64,
) -> (Vec<Vector4<f64>>, f64) {
    let mut grid = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            grid.push(coords4(&point(i as f64 * step, j as f64 * step)));
        }
    }
    let mut spacing: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i + 1 < n {
                spacing = spacing.max((grid[i * n + j] - grid[(i + 1) * n + j]).norm());
            }
            if j + 1 < n {
                spacing = spacing.max((grid[i * n + j] - grid[i * n + j + 1]).norm());
            }
        }
    }
    (grid, spacing)
}

fn coords4(p: &Point4) -> Vector4<f64> {
    let [x1, x2, x3, x4] = p.coords();
    Vector4::new(x1, x2, x3, x4)
}

/// One Newton run for the film-film system. Returns the parameters, the
/// orientation sign of the tangent frame, and the near-singularity flag.
fn newton_film_film(
    f1: &RuledFilm,
    sheet1: FilmSheet,
    f2: &RuledFilm,
    sheet2: FilmSheet,
    w: &Motion,
    seed: [f64; 4],
) -> Option<([f64; 4], i8, bool)> {
    let p1 = |s: f64, t: f64| coords4(&f1.point(sheet1, s, t));
    let p2 = |u: f64, v: f64| coords4(&w.apply(&f2.point(sheet2, u, v)));
    let residual = |q: &[f64; 4]| p1(q[0], q[1]) - p2(q[2], q[3]);
    let jacobian = |q: &[f64; 4]| -> Matrix4<f64> {
        let mut cols = [Vector4::zeros(); 4];
        for (k, col) in cols.iter_mut().enumerate() {
            let mut hi = *q;
            let mut lo = *q;
            hi[k] += FD_STEP;
            lo[k] -= FD_STEP;
            *col = (residual(&hi) - residual(&lo)) / (2.0 * FD_STEP);
        }
        Matrix4::from_columns(&cols)
    };
    let mut q = seed;
    for _ in 0..NEWTON_MAX_ITER {
        let r = residual(&q);
        if !r.iter().all(|v| v.is_finite()) {
            return None;
        }
        if r.amax() <= NEWTON_RESIDUAL_TOL {
            let j = jacobian(&q);
            let singular = min_singular_value(j.svd(false, false).singular_values.as_slice())
                < NEWTON_SINGULAR_TOL;
            // The residual Jacobian columns are (∂F1/∂s, ∂F1/∂t, −∂(wF2)/∂u,
            // −∂(wF2)/∂v); negating two columns leaves the determinant equal
            // to that of the tangent 4-frame.
            let sign = if j.determinant() >= 0.0 { 1 } else { -1 };
            return Some((q, sign, singular));
        }
        let j = jacobian(&q);
        let delta = j.lu().solve(&(-r))?;
        let delta = delta.cap_magnitude(MAX_NEWTON_STEP);
        for k in 0..4 {
            q[k] = (q[k] + delta[k]).clamp(DOMAIN_MIN, DOMAIN_MAX);
        }
    }
    None
}

/// Writes film-film roots as CSV with columns
/// `sheet1,s,t,sheet2,u,v,x1,x2,x3,x4,sign`.
///
/// # Errors
///
/// Propagates writer errors.
pub fn write_roots_csv<W: std::io::Write>(
    result: &FilmFilmIntersections,
    out: &mut W,
) -> std::io::Result<()> {
    writeln!(out, "sheet1,s,t,sheet2,u,v,x1,x2,x3,x4,sign")?;
    for r in &result.roots {
        let [x1, x2, x3, x4] = r.point.coords();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.sheet1.label(),
            r.s,
            r.t,
            r.sheet2.label(),
            r.u,
            r.v,
            x1,
            x2,
            x3,
            x4,
            r.sign
        )?;
    }
    Ok(())
}

/// Identifies a surface piece of an [`ExtendedRuledFilm`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilmRegion {
    /// One of the two ruled sheets of the base film.
    Sheet(FilmSheet),
    /// Geodesic cone from the segment endpoint of the given side over the
    /// side arc of the given sheet: the region bounded by the
    /// translational arc and the geodesic `[x, T_λx]`, or by the rotational
    /// arc and the geodesics `[T_λx, Tx]` (and the same on the `z` side).
    Cap {
        /// Side of the film.
        end: FilmEnd,
        /// Sheet whose side arc spans the cap.
        sheet: FilmSheet,
    },
    /// Geodesic triangle over the three corners of one side, realized as
    /// the cone from the segment endpoint over the geodesic between its
    /// two images.
    Triangle(FilmEnd),
}

/// A film extended by geodesic caps and corner triangles on both sides.
///
/// The caps close the region between each side arc and its chord, and the
/// triangles fill between the chords; the resulting surface's free
/// boundary is exactly the two geodesics `[x, Tx]` and `[z, Tz]`, each of
/// which closes into a loop in the quotient by the group generated by the
/// spanning isometry.
#[derive(Clone, Debug)]
pub struct ExtendedRuledFilm {
    film: RuledFilm,
}

impl ExtendedRuledFilm {
    /// Extends a film by its caps and corner triangles.
    pub fn new(film: RuledFilm) -> Self {
        Self { film }
    }

    /// The underlying film.
    pub fn film(&self) -> &RuledFilm {
        &self.film
    }

    /// Evaluates a piece at `(s, t) ∈ [0, 1]²`.
    ///
    /// Sheets use the film parameters. For a cap, `s` runs from the apex
    /// (the segment endpoint for the translational cap, its translational
    /// image for the rotational cap) to the side arc point at flow
    /// parameter `t`. For a triangle, `s` runs from the segment endpoint to
    /// the geodesic between its translational and full images at
    /// parameter `t`.
    pub fn point(&self, region: FilmRegion, s: f64, t: f64) -> Point4 {
        match region {
            FilmRegion::Sheet(sheet) => self.film.point(sheet, s, t),
            FilmRegion::Cap { end, sheet } => {
                let [corner, mid, _] = self.film.corners(end);
                let apex = match sheet {
                    FilmSheet::Translational => corner,
                    FilmSheet::Rotational => mid,
                };
                let target = self.film.boundary_point(end, sheet, t);
                cone_point(&apex, &target, s)
            }
            FilmRegion::Triangle(end) => {
                let [apex, mid, far] = self.film.corners(end);
                let target = segment_eval_or_point(&mid, &far, t);
                cone_point(&apex, &target, s)
            }
        }
    }

    /// The free boundary geodesic of one side (`[x, Tx]` or `[z, Tz]`) at
    /// parameter `t`.
    pub fn free_boundary(&self, end: FilmEnd, t: f64) -> Point4 {
        let [corner, _, far] = self.film.corners(end);
        segment_eval_or_point(&corner, &far, t)
    }
}

fn cone_point(apex: &Point4, target: &Point4, s: f64) -> Point4 {
    segment_eval_or_point(apex, target, s)
}

fn segment_eval_or_point(a: &Point4, b: &Point4, t: f64) -> Point4 {
    if a == b {
        *a
    } else {
        GeodesicSegment::new(*a, *b)
            .expect("distinct endpoints")
            .eval(t)
    }
}
