//! Metric geometry of the upper half-space model of hyperbolic 4-space.
//!
//! Points live in `{ (x1, x2, x3, x4) : x4 > 0 }` with the Riemannian metric
//! `|dx| / x4`. The module provides distances, geodesic segments and rays,
//! totally geodesic 2-planes, and the point-to-set distance searches used by
//! the thin-part and film modules.
//!
//! Geodesic evaluation lifts points to the hyperboloid model in Minkowski
//! space `R^{4,1}`, where geodesics are linear sections and distances reduce
//! to `arccosh` of the Minkowski pairing; results are mapped back to
//! half-space coordinates. The lift keeps segment evaluation branch-free and
//! uniformly accurate for both nearly vertical and nearly horizontal
//! configurations.

use nalgebra::{Matrix5, SVector, Unit, Vector3};
use serde::{Deserialize, Serialize};

use crate::{Hyp4Error, Result};

/// Points with height below this are rejected at construction: the metric
/// factor `1/x4` overflows and every downstream formula degenerates.
pub const MIN_HEIGHT: f64 = 1e-300;

/// Relative convergence tolerance for 1-D distance minimizations.
const TERNARY_TOL: f64 = 1e-12;

/// Iteration cap for 1-D distance minimizations.
const TERNARY_MAX_ITER: usize = 200;

/// A point of the upper half-space model.
///
/// Coordinates are `(x1, x2, x3, x4)` with `x4 > 0` the height above the
/// boundary. Serialized as a plain 4-array; deserialization re-validates the
/// invariants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct Point4 {
    h: Vector3<f64>,
    x4: f64,
}

impl Point4 {
    /// Creates a point from its four coordinates.
    ///
    /// # Errors
    ///
    /// Returns [`Hyp4Error::NotInHalfSpace`] if `x4 < MIN_HEIGHT` and
    /// [`Hyp4Error::Invalid`] if any coordinate is non-finite.
    pub fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Result<Self> {
        Self::from_parts(Vector3::new(x1, x2, x3), x4)
    }

    /// Creates a point from its horizontal part and height.
    pub fn from_parts(h: Vector3<f64>, x4: f64) -> Result<Self> {
        if !(h.x.is_finite() && h.y.is_finite() && h.z.is_finite() && x4.is_finite()) {
            return Err(Hyp4Error::Invalid(format!(
                "non-finite coordinates ({}, {}, {}, {})",
                h.x, h.y, h.z, x4
            )));
        }
        if x4 < MIN_HEIGHT {
            return Err(Hyp4Error::NotInHalfSpace { x4 });
        }
        Ok(Self { h, x4 })
    }

    /// The horizontal coordinates `(x1, x2, x3)`.
    pub fn horizontal(&self) -> Vector3<f64> {
        self.h
    }

    /// The height coordinate `x4`.
    pub fn height(&self) -> f64 {
        self.x4
    }

    /// All four coordinates as an array.
    pub fn coords(&self) -> [f64; 4] {
        [self.h.x, self.h.y, self.h.z, self.x4]
    }

    /// Euclidean distance to another point, in ambient coordinates.
    pub fn euclidean_dist(&self, other: &Point4) -> f64 {
        let dh = self.h - other.h;
        let d4 = self.x4 - other.x4;
        (dh.norm_squared() + d4 * d4).sqrt()
    }
}

impl TryFrom<[f64; 4]> for Point4 {
    type Error = Hyp4Error;

    fn try_from(c: [f64; 4]) -> Result<Self> {
        Point4::new(c[0], c[1], c[2], c[3])
    }
}

impl From<Point4> for [f64; 4] {
    fn from(p: Point4) -> [f64; 4] {
        p.coords()
    }
}

/// A point of the ideal boundary `R^3 ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum BoundaryPoint {
    /// A finite boundary point, identified with a point of `R^3` at height 0.
    Finite(Vector3<f64>),
    /// The distinguished point at infinity.
    Infinity,
}

impl BoundaryPoint {
    fn validate(&self) -> Result<()> {
        match self {
            BoundaryPoint::Finite(e) => {
                if e.iter().all(|c| c.is_finite()) {
                    Ok(())
                } else {
                    Err(Hyp4Error::Invalid(format!(
                        "non-finite boundary point ({}, {}, {})",
                        e.x, e.y, e.z
                    )))
                }
            }
            BoundaryPoint::Infinity => Ok(()),
        }
    }
}

/// Hyperbolic distance between two points.
///
/// Implements `arccosh(1 + |p−q|² / (2 p.x4 q.x4))` with the argument clamped
/// to `≥ 1`, since roundoff can push it below 1 for nearly equal points where
/// `arccosh` is ill-conditioned.
pub fn dist(p: &Point4, q: &Point4) -> f64 {
    let dh = p.h - q.h;
    let d4 = p.x4 - q.x4;
    let arg = 1.0 + (dh.norm_squared() + d4 * d4) / (2.0 * p.x4 * q.x4);
    arg.max(1.0).acosh()
}

/// A vector of the Minkowski space `R^{4,1}`; index 0 is the timelike
/// coordinate, indices 1..=4 are spacelike.
pub(crate) type Mink5 = SVector<f64, 5>;

/// The Minkowski pairing `⟨a, b⟩ = a·b (spacelike) − a0 b0`.
pub(crate) fn mink_dot(a: &Mink5, b: &Mink5) -> f64 {
    a[1] * b[1] + a[2] * b[2] + a[3] * b[3] + a[4] * b[4] - a[0] * b[0]
}

/// Lifts a half-space point onto the hyperboloid `⟨X, X⟩ = −1`, `X0 > 0`.
pub(crate) fn lift(p: &Point4) -> Mink5 {
    let n2 = p.h.norm_squared() + p.x4 * p.x4;
    let inv = 1.0 / (2.0 * p.x4);
    Mink5::from([
        (1.0 + n2) * inv,
        p.h.x / p.x4,
        p.h.y / p.x4,
        p.h.z / p.x4,
        (n2 - 1.0) * inv,
    ])
}

/// Maps a future-pointing timelike vector back to half-space coordinates,
/// normalizing onto the hyperboloid first.
pub(crate) fn unlift(v: &Mink5) -> Result<Point4> {
    let q = mink_dot(v, v);
    if !(q < 0.0) || v[0] <= 0.0 {
        return Err(Hyp4Error::Invalid(format!(
            "vector is not future-pointing timelike (⟨v,v⟩ = {q})"
        )));
    }
    let w = v / (-q).sqrt();
    let denom = w[0] - w[4];
    if !(denom > 0.0) {
        return Err(Hyp4Error::NotInHalfSpace { x4: denom });
    }
    let x4 = 1.0 / denom;
    Point4::from_parts(Vector3::new(w[1], w[2], w[3]) * x4, x4)
}

/// The null lift of a boundary point, scaled so that finite points `e` map to
/// `((1+|e|²)/2, e, (|e|²−1)/2)` and `∞` maps to `(1, 0, 0, 0, 1)`.
pub(crate) fn lift_boundary(b: &BoundaryPoint) -> Mink5 {
    match b {
        BoundaryPoint::Finite(e) => {
            let n2 = e.norm_squared();
            Mink5::from([(1.0 + n2) * 0.5, e.x, e.y, e.z, (n2 - 1.0) * 0.5])
        }
        BoundaryPoint::Infinity => Mink5::from([1.0, 0.0, 0.0, 0.0, 1.0]),
    }
}

/// The geodesic segment `[a, b]` between two distinct points.
///
/// Evaluation is proportional to arclength: `eval(0) = a`, `eval(1) = b`,
/// and parameters outside `[0, 1]` extend along the same geodesic.
#[derive(Clone, Debug)]
pub struct GeodesicSegment {
    a: Point4,
    b: Point4,
    la: Mink5,
    lb: Mink5,
    length: f64,
}

impl GeodesicSegment {
    /// Creates the segment `[a, b]`.
    ///
    /// # Errors
    ///
    /// Returns [`Hyp4Error::Invalid`] if `a = b`.
    pub fn new(a: Point4, b: Point4) -> Result<Self> {
        if a == b {
            return Err(Hyp4Error::Invalid(
                "degenerate segment: endpoints coincide".into(),
            ));
        }
        let la = lift(&a);
        let lb = lift(&b);
        let length = dist(&a, &b);
        Ok(Self { a, b, la, lb, length })
    }

    /// First endpoint.
    pub fn a(&self) -> &Point4 {
        &self.a
    }

    /// Second endpoint.
    pub fn b(&self) -> &Point4 {
        &self.b
    }

    /// Hyperbolic length of the segment.
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Point at parameter `s` (fraction of arclength from `a` to `b`).
    ///
    /// Valid for any `s` with `|s| · length` below the overflow range of
    /// `sinh` (about 700); parameters in `[0, 1]` cover the segment.
    pub fn eval(&self, s: f64) -> Point4 {
        let d = self.length;
        let v = if d < 1e-8 {
            self.la * (1.0 - s) + self.lb * s
        } else {
            self.la * ((1.0 - s) * d).sinh() + self.lb * (s * d).sinh()
        };
        unlift(&v).expect("geodesic interpolation stays in the model")
    }

    /// Midpoint of the segment.
    pub fn midpoint(&self) -> Point4 {
        self.eval(0.5)
    }

    /// Unit-speed frame `(point, tangent)` of the underlying geodesic at `a`,
    /// in Minkowski coordinates.
    pub(crate) fn frame(&self) -> (Mink5, Mink5) {
        let d = self.length;
        if d < 1e-8 {
            let u = self.lb - self.la;
            let n = mink_dot(&u, &u).sqrt().max(f64::MIN_POSITIVE);
            (self.la, u / n)
        } else {
            (self.la, (self.lb - self.la * d.cosh()) / d.sinh())
        }
    }
}

/// A geodesic ray from an interior base point to an ideal endpoint.
///
/// The unit-speed parametrization `Γ(t) = P cosh t + V sinh t` is stored in
/// the split basis `Γ(t) = E₊ e^t + E₋ e^{−t}` with `E₊ = (P+V)/2` computed
/// directly from the endpoint's null lift. In that form the forward
/// coefficient of a vertical ray vanishes identically, so evaluation stays
/// accurate for large `t` where the `cosh`/`sinh` form cancels
/// catastrophically.
#[derive(Clone, Debug)]
pub struct GeodesicRay {
    base: Point4,
    end: BoundaryPoint,
    ep: Mink5,
    em: Mink5,
    dp: f64,
    dm: f64,
}

impl GeodesicRay {
    /// Creates the ray from `base` toward the ideal point `end`.
    pub fn new(base: Point4, end: BoundaryPoint) -> Result<Self> {
        end.validate()?;
        let p = lift(&base);
        let n = lift_boundary(&end);
        let qnp = mink_dot(&n, &p);
        debug_assert!(qnp < 0.0, "null lift pairs negatively with interior points");
        // (P + V)/2 = −N / (2 ⟨N, P⟩) for the unit tangent V toward N.
        let ep = -n / (2.0 * qnp);
        let em = p - ep;
        Ok(Self {
            base,
            end,
            ep,
            em,
            dp: ep[0] - ep[4],
            dm: em[0] - em[4],
        })
    }

    /// The interior base point.
    pub fn base(&self) -> &Point4 {
        &self.base
    }

    /// The ideal endpoint.
    pub fn end(&self) -> &BoundaryPoint {
        &self.end
    }

    /// Point at arclength `t ≥ 0` from the base toward the ideal endpoint.
    /// Negative `t` extends the ray backward along the same geodesic.
    pub fn eval(&self, t: f64) -> Point4 {
        let fwd = t.exp();
        let bwd = (-t).exp();
        // x4 = 1 / (Γ0 − Γ4), with the difference taken per basis vector to
        // avoid cancellation between the large e^t terms.
        let denom = self.dp * fwd + self.dm * bwd;
        let x4 = 1.0 / denom;
        let h = Vector3::new(
            self.ep[1] * fwd + self.em[1] * bwd,
            self.ep[2] * fwd + self.em[2] * bwd,
            self.ep[3] * fwd + self.em[3] * bwd,
        ) * x4;
        Point4::from_parts(h, x4).expect("ray evaluation stays in the model")
    }
}

/// Distance from a point to a geodesic segment.
///
/// Ternary search over the arclength parameter; the distance to a point is
/// convex along a geodesic, so the search converges monotonically.
pub fn dist_point_segment(z: &Point4, s: &GeodesicSegment) -> f64 {
    dist_point_segment_with_param(z, s).0
}

/// As [`dist_point_segment`], but also returns the minimizing parameter.
pub(crate) fn dist_point_segment_with_param(z: &Point4, s: &GeodesicSegment) -> (f64, f64) {
    let (d, u) = ternary_min(0.0, 1.0, |u| dist(z, &s.eval(u)));
    (d, u)
}

/// Distance from a point to a geodesic ray.
pub fn dist_point_ray(z: &Point4, r: &GeodesicRay) -> f64 {
    dist_point_ray_with_param(z, r).0
}

/// As [`dist_point_ray`], but also returns the minimizing arclength.
pub(crate) fn dist_point_ray_with_param(z: &Point4, r: &GeodesicRay) -> (f64, f64) {
    // d(z, r(t)) ≥ t − d(z, base), so the minimizer lies in [0, 2 d(z, base)].
    let hi = 2.0 * dist(z, &r.base) + 1.0;
    ternary_min(0.0, hi, |t| dist(z, &r.eval(t)))
}

pub(crate) fn ternary_min(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    for _ in 0..TERNARY_MAX_ITER {
        if hi - lo < TERNARY_TOL * hi.abs().max(1.0) {
            break;
        }
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) <= f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let u = 0.5 * (lo + hi);
    (f(u), u)
}

/// A totally geodesic 2-plane, stored as a pair of independent hyperplane
/// constraints whose simultaneous zero set is the plane.
///
/// Each constraint is a unit spacelike Minkowski covector; its zero set is a
/// geodesic hyperplane (a vertical Euclidean plane or a hemisphere orthogonal
/// to the boundary), and the two covectors are Minkowski-orthonormal, which
/// makes the pair non-proportional and the distance formula below exact.
#[derive(Clone, Debug)]
pub struct GeodesicPlane2 {
    n1: Mink5,
    n2: Mink5,
}

impl GeodesicPlane2 {
    /// Creates the plane through three points.
    ///
    /// # Errors
    ///
    /// Returns [`Hyp4Error::Invalid`] if the points are (numerically)
    /// collinear or coincident, so that they do not span a unique 2-plane.
    pub fn through_points(a: &Point4, b: &Point4, c: &Point4) -> Result<Self> {
        let lifts = [lift(a), lift(b), lift(c)];
        // Null space of X ↦ (⟨X, A⟩, ⟨X, B⟩, ⟨X, C⟩): eigenvectors of the
        // positive semidefinite Gram matrix M with the two zero eigenvalues.
        let mut m = Matrix5::<f64>::zeros();
        for l in &lifts {
            let j = Mink5::from([-l[0], l[1], l[2], l[3], l[4]]);
            m += j * j.transpose();
        }
        let eig = m.symmetric_eigen();
        let mut order: Vec<usize> = (0..5).collect();
        order.sort_by(|&i, &j| {
            eig.eigenvalues[i]
                .abs()
                .partial_cmp(&eig.eigenvalues[j].abs())
                .unwrap()
        });
        let scale = eig.eigenvalues[order[4]].abs().max(1.0);
        if eig.eigenvalues[order[2]].abs() < 1e-10 * scale {
            return Err(Hyp4Error::Invalid(
                "points do not span a unique 2-plane (collinear or coincident)".into(),
            ));
        }
        let v1: Mink5 = eig.eigenvectors.column(order[0]).clone_owned();
        let v2: Mink5 = eig.eigenvectors.column(order[1]).clone_owned();
        Self::from_complement_basis(v1, v2)
    }

    /// Creates the vertical plane over the boundary line through `point` with
    /// direction `direction` (the set of points whose horizontal part lies on
    /// the line, at any height).
    pub fn vertical(point: Vector3<f64>, direction: &Unit<Vector3<f64>>) -> Result<Self> {
        if !point.iter().all(|c| c.is_finite()) {
            return Err(Hyp4Error::Invalid("non-finite line point".into()));
        }
        let u = direction.into_inner();
        let mut basis = Vec::with_capacity(2);
        Vector3::orthonormal_subspace_basis(&[u], |w| {
            basis.push(*w);
            true
        });
        let n = |w: Vector3<f64>| {
            let c = point.dot(&w);
            Mink5::from([c, w.x, w.y, w.z, c])
        };
        Ok(Self {
            n1: n(basis[0]),
            n2: n(basis[1]),
        })
    }

    fn from_complement_basis(v1: Mink5, v2: Mink5) -> Result<Self> {
        let q11 = mink_dot(&v1, &v1);
        if q11 <= 0.0 {
            return Err(Hyp4Error::Invalid(
                "constraint complement is not spacelike".into(),
            ));
        }
        let n1 = v1 / q11.sqrt();
        let w = v2 - n1 * mink_dot(&v2, &n1);
        let qww = mink_dot(&w, &w);
        if qww <= 0.0 {
            return Err(Hyp4Error::Invalid(
                "constraint complement is not spacelike".into(),
            ));
        }
        Ok(Self { n1, n2: w / qww.sqrt() })
    }

    /// Evaluates the two defining constraints at a point. Both vanish exactly
    /// on the plane, and their magnitudes grow linearly with the Euclidean
    /// distance from it.
    pub fn constraints(&self, p: &Point4) -> (f64, f64) {
        let x = lift(p);
        (mink_dot(&self.n1, &x), mink_dot(&self.n2, &x))
    }

    /// Hyperbolic distance from a point to the plane.
    ///
    /// With orthonormal constraints `(c1, c2)`, the distance satisfies
    /// `sinh d = √(c1² + c2²)`.
    pub fn dist_to_point(&self, z: &Point4) -> f64 {
        let (c1, c2) = self.constraints(z);
        c1.hypot(c2).asinh()
    }

    /// Whether the point lies on the plane up to the hyperbolic tolerance.
    pub fn contains(&self, p: &Point4, tol: f64) -> bool {
        self.dist_to_point(p) <= tol
    }

    pub(crate) fn normals(&self) -> [Mink5; 2] {
        [self.n1, self.n2]
    }
}

/// Evaluates the two defining constraint functions of a plane at a point.
pub fn plane_constraints(plane: &GeodesicPlane2, p: &Point4) -> (f64, f64) {
    plane.constraints(p)
}

/// Minimum hyperbolic distance from a segment to the totally geodesic
/// subspace cut out by Minkowski-orthonormal spacelike `normals`.
///
/// Along a unit-speed geodesic `Γ(t)`, each constraint is of the form
/// `α cosh t + β sinh t`, so the squared constraint sum is
/// `C + A cosh 2t + B sinh 2t` with `A ≥ |B|`: a single interior minimum,
/// available in closed form and clamped to the segment.
pub(crate) fn dist_segment_to_span(seg: &GeodesicSegment, normals: &[Mink5]) -> f64 {
    let (p, u) = seg.frame();
    let d = seg.length();
    let mut a_coef = 0.0;
    let mut b_coef = 0.0;
    let mut c_coef = 0.0;
    for n in normals {
        let alpha = mink_dot(n, &p);
        let beta = mink_dot(n, &u);
        a_coef += 0.5 * (alpha * alpha + beta * beta);
        b_coef += alpha * beta;
        c_coef += 0.5 * (alpha * alpha - beta * beta);
    }
    let f = |t: f64| c_coef + a_coef * (2.0 * t).cosh() + b_coef * (2.0 * t).sinh();
    let mut best = f(0.0).min(f(d));
    if a_coef > 0.0 {
        let ratio = (-b_coef / a_coef).clamp(-1.0 + 1e-15, 1.0 - 1e-15);
        let t_star = 0.5 * ratio.atanh();
        if t_star > 0.0 && t_star < d {
            best = best.min(f(t_star));
        }
    }
    best.max(0.0).sqrt().asinh()
}
