//! Thin-part cones for elementary groups fixing `∞`: minimal displacement
//! over the group, injectivity radius, cone membership, the first-return
//! exponent, projection to the cone boundary, canonical foliation
//! coordinates and boundary meshing.
//!
//! An [`ElementaryGroup`] is either cyclic loxodromic or a commuting family
//! of 1 to 3 parabolics. Every query that minimizes or counts over group
//! words works on a finite exponent window and certifies it: closed-form
//! lower bounds on the displacement of words outside the window guarantee
//! that nothing relevant was missed, and a window that would have to exceed
//! the configured truncation raises an error instead of silently truncating.
//!
//! Two displacement conventions coexist and both are exposed:
//! [`ElementaryGroup::min_index`] is the least displacement `d(x, wx)` over
//! nontrivial words, and [`ElementaryGroup::injectivity_radius`] is half of
//! it. Cone membership compares the minimal index against `ν` directly.

use nalgebra::{Unit, Vector3};

use crate::geom::Point4;
use crate::isometry::{Isometry4, IsometryKind, Motion};
use crate::mesh::{MeshVertex, QuadMesh};
use crate::{Hyp4Error, Result};

const COMMUTE_TOL: f64 = 1e-10;
const SEPARATION_TOL: f64 = 1e-9;
const BISECTION_TOL: f64 = 1e-10;
const BISECTION_MAX_ITER: usize = 200;

/// Hard cap on the number of words a single enumeration may visit.
const WORD_BUDGET: u128 = 50_000_000;

/// Hard cap on the scan length of [`q_function`].
const Q_SCAN_CAP: u64 = 1_000_000;

/// Incremental motion products are recomputed from an exact power this often
/// to keep accumulated rounding from drifting over long scans.
const REFRESH_PERIOD: i64 = 1024;

/// Which fiber of the canonical fibration contains a given point.
///
/// The fibration is by totally geodesic hyperplanes orthogonal to the axis
/// (loxodromic) or to the invariant horocycle direction (parabolic); `t` is
/// constant exactly on fibers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FoliationCoordinate {
    /// Fiber parameter: `log |x|` in the loxodromic case, the component of
    /// the horizontal part along the invariant direction in the parabolic
    /// case.
    pub t: f64,
}

#[derive(Clone, Debug)]
enum Lattice {
    /// Cyclic loxodromic: words `gⁿ` displace at least `|n| log λ`.
    Loxodromic { log_lambda: f64 },
    /// Commuting parabolics: the word `g₁^{n₁}…` moves every horizontal
    /// point by at least `|Σ nᵢ vᵢ|`, where `vᵢ` is the projection of the
    /// `i`-th translation onto the common rotation-fixed subspace. `sep[i]`
    /// is the distance from `vᵢ` to the span of the other `vⱼ`, so the norm
    /// above is at least `max |nᵢ| sep[i]`.
    Parabolic { sep: Vec<f64> },
}

/// A discrete elementary group fixing `∞`: either `⟨g⟩` for a loxodromic
/// `g`, or a rank-1..3 commuting family of parabolics.
#[derive(Clone, Debug)]
pub struct ElementaryGroup {
    generators: Vec<Isometry4>,
    truncation: Vec<u32>,
    lattice: Lattice,
}

impl ElementaryGroup {
    /// Creates a group from 1 to 3 generators with a per-generator exponent
    /// truncation (the largest window any query may use).
    ///
    /// # Errors
    ///
    /// Rejects loxodromic generators in rank above 1, non-commuting
    /// generators, and parabolic families whose translation lattice is
    /// degenerate (a generator's effective translation lies in the span of
    /// the others', so no finite window can bound word displacements).
    pub fn new(generators: Vec<Isometry4>, truncation: Vec<u32>) -> Result<Self> {
        if generators.is_empty() || generators.len() > 3 {
            return Err(Hyp4Error::Invalid(format!(
                "expected 1 to 3 generators, got {}",
                generators.len()
            )));
        }
        if truncation.len() != generators.len() || truncation.iter().any(|&n| n == 0) {
            return Err(Hyp4Error::Invalid(
                "truncation must give a positive window per generator".into(),
            ));
        }
        let any_loxodromic = generators
            .iter()
            .any(|g| g.kind() == IsometryKind::Loxodromic);
        if any_loxodromic && generators.len() > 1 {
            return Err(Hyp4Error::Invalid(
                "loxodromic elementary groups must be cyclic".into(),
            ));
        }
        check_commuting(&generators)?;
        let lattice = if any_loxodromic {
            Lattice::Loxodromic {
                log_lambda: generators[0].lambda().expect("loxodromic").ln().abs(),
            }
        } else {
            parabolic_lattice(&generators)?
        };
        Ok(Self {
            generators,
            truncation,
            lattice,
        })
    }

    /// Creates the cyclic group `⟨g⟩`.
    pub fn cyclic(g: Isometry4, truncation: u32) -> Result<Self> {
        Self::new(vec![g], vec![truncation])
    }

    /// The generators.
    pub fn generators(&self) -> &[Isometry4] {
        &self.generators
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Per-generator exponent truncation.
    pub fn truncation(&self) -> &[u32] {
        &self.truncation
    }

    /// Whether the group is cyclic loxodromic.
    pub fn is_loxodromic(&self) -> bool {
        matches!(self.lattice, Lattice::Loxodromic { .. })
    }

    /// The group element with the given generator exponents.
    pub fn word(&self, exps: &[i64]) -> Result<Isometry4> {
        if exps.len() != self.rank() {
            return Err(Hyp4Error::Invalid(format!(
                "expected {} exponents, got {}",
                self.rank(),
                exps.len()
            )));
        }
        if exps.iter().all(|&n| n == 0) {
            return Err(Hyp4Error::Identity);
        }
        if self.rank() == 1 {
            return self.generators[0].power(exps[0]);
        }
        // Multi-generator groups that pass lattice validation consist of
        // pure translations: commuting screws share an axis line, which
        // makes their effective translations collinear and is rejected.
        let mut tau = Vector3::zeros();
        for (g, &n) in self.generators.iter().zip(exps) {
            tau += n as f64
                * g.translation_vector()
                    .expect("multi-generator groups are parabolic");
        }
        Isometry4::translation(tau)
    }

    /// Smallest per-axis exponent window such that every word with an
    /// exponent outside it displaces `x`-height points by more than `d`.
    fn window(&self, x4: f64, d: f64) -> Result<[i64; 3]> {
        let mut n = [0i64; 3];
        match &self.lattice {
            Lattice::Loxodromic { log_lambda } => {
                let need = (d / log_lambda).floor();
                if need > self.truncation[0] as f64 {
                    return Err(Hyp4Error::TruncationInsufficient(format!(
                        "loxodromic window needs {need} exponents, truncation is {}",
                        self.truncation[0]
                    )));
                }
                n[0] = need as i64;
            }
            Lattice::Parabolic { sep, .. } => {
                let reach = 2.0 * x4 * (0.5 * d).sinh();
                for (i, s) in sep.iter().enumerate() {
                    let need = (reach / s).ceil();
                    if need > self.truncation[i] as f64 {
                        return Err(Hyp4Error::TruncationInsufficient(format!(
                            "generator {i} window needs {need} exponents, truncation is {}",
                            self.truncation[i]
                        )));
                    }
                    n[i] = need as i64;
                }
            }
        }
        let words: u128 = n[..self.rank()]
            .iter()
            .map(|&k| 2 * k as u128 + 1)
            .product();
        if words > WORD_BUDGET {
            return Err(Hyp4Error::BudgetExceeded(format!(
                "window holds {words} words, budget is {WORD_BUDGET}"
            )));
        }
        Ok(n)
    }

    /// Visits every word in the exponent box, identity included. The
    /// callback returns `false` to stop early.
    fn for_each_word(
        &self,
        window: &[i64; 3],
        visit: &mut impl FnMut(&[i64; 3], &Motion) -> bool,
    ) {
        let rank = self.rank();
        let gen_motion = |i: usize, n: i64| -> Motion {
            if n == 0 {
                Motion::identity()
            } else {
                self.generators[i].power(n).expect("n != 0").to_motion()
            }
        };
        let outer_range = |i: usize| -> std::ops::RangeInclusive<i64> {
            if i < rank {
                -window[i]..=window[i]
            } else {
                0..=0
            }
        };
        'outer: for n2 in outer_range(2) {
            let m2 = gen_motion(2.min(rank - 1), if rank > 2 { n2 } else { 0 });
            for n1 in outer_range(1) {
                let m12 = if rank > 1 {
                    gen_motion(1, n1).compose(&m2)
                } else {
                    m2
                };
                let lo = -window[0];
                let step = self.generators[0].to_motion();
                let mut m0 = gen_motion(0, lo);
                for n0 in lo..=window[0] {
                    if n0 > lo && (n0 - lo) % REFRESH_PERIOD == 0 {
                        m0 = gen_motion(0, n0);
                    }
                    let m = m0.compose(&m12);
                    if !visit(&[n0, n1, n2], &m) {
                        break 'outer;
                    }
                    if n0 < window[0] {
                        m0 = step.compose(&m0);
                    }
                }
            }
        }
    }

    /// Least displacement `d(x, wx)` over nontrivial words, together with
    /// the exponents of a word attaining it.
    ///
    /// The enumeration window is sized from the best single-generator
    /// displacement, so the returned value is certified to be the minimum
    /// over the whole group.
    pub fn min_index_witness(&self, x: &Point4) -> Result<(f64, [i64; 3])> {
        let d0 = self
            .generators
            .iter()
            .map(|g| g.index(x))
            .fold(f64::INFINITY, f64::min);
        let window = self.window(x.height(), d0)?;
        let mut best = f64::INFINITY;
        let mut best_exps = [0i64; 3];
        self.for_each_word(&window, &mut |exps, m| {
            // The identity and the inverse half of the box carry no new
            // information: d(x, wx) = d(x, w⁻¹x).
            match exps.iter().find(|&&n| n != 0) {
                None => return true,
                Some(&first) if first < 0 => return true,
                _ => {}
            }
            let ind = m.index(x);
            if ind < best {
                best = ind;
                best_exps = *exps;
            }
            true
        });
        Ok((best, best_exps))
    }

    /// Least displacement `d(x, wx)` over nontrivial words.
    pub fn min_index(&self, x: &Point4) -> Result<f64> {
        Ok(self.min_index_witness(x)?.0)
    }

    /// Injectivity radius `d(x, Gx) / 2`: half the minimal index.
    pub fn injectivity_radius(&self, x: &Point4) -> Result<f64> {
        Ok(self.min_index(x)? / 2.0)
    }

    /// Number of orbit points of `x` (identity included) within hyperbolic
    /// distance `r` of `x`.
    pub fn count_orbit_in_ball(&self, x: &Point4, r: f64) -> Result<u64> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Hyp4Error::Invalid(format!("ball radius {r} invalid")));
        }
        let window = self.window(x.height(), r)?;
        let mut count = 0u64;
        self.for_each_word(&window, &mut |_, m| {
            if m.index(x) <= r {
                count += 1;
            }
            true
        });
        Ok(count)
    }

    /// Number of group elements `h` (identity included) with
    /// `h·B(x,r) ∩ B(x,r) ≠ ∅`; since `h` is an isometry this is exactly
    /// `d(x, hx) ≤ 2r`.
    pub fn count_ball_movers(&self, x: &Point4, r: f64) -> Result<u64> {
        self.count_orbit_in_ball(x, 2.0 * r)
    }

    /// Whether some nontrivial word displaces `x` by at most `d`. The
    /// window is sized from `d` itself, so a `false` answer is certified.
    fn moves_within(&self, x: &Point4, d: f64) -> Result<bool> {
        // A single generator usually already answers yes (deep in a cusp
        // the window sized from `d` is enormous, while the witness is the
        // nearest generator); only a certified no needs the full window.
        if self.generators.iter().any(|g| g.index(x) <= d) {
            return Ok(true);
        }
        let window = self.window(x.height(), d)?;
        let mut found = false;
        self.for_each_word(&window, &mut |exps, m| {
            if exps.iter().all(|&n| n == 0) {
                return true;
            }
            if m.index(x) <= d {
                found = true;
                return false;
            }
            true
        });
        Ok(found)
    }
}

fn check_commuting(generators: &[Isometry4]) -> Result<()> {
    let probes = [
        Point4::new(0.3, -0.7, 0.41, 1.0).unwrap(),
        Point4::new(2.0, 1.0, -3.0, 0.5).unwrap(),
        Point4::new(-1.2, 0.8, 2.5, 3.0).unwrap(),
        Point4::new(0.0, 0.0, 0.0, 1.0).unwrap(),
        Point4::new(5.0, -5.0, 1.0, 0.2).unwrap(),
    ];
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            let gh = generators[i].to_motion().compose(&generators[j].to_motion());
            let hg = generators[j].to_motion().compose(&generators[i].to_motion());
            for x in &probes {
                if crate::geom::dist(&gh.apply(x), &hg.apply(x)) > COMMUTE_TOL {
                    return Err(Hyp4Error::Invalid(format!(
                        "generators {i} and {j} do not commute"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn parabolic_lattice(generators: &[Isometry4]) -> Result<Lattice> {
    // Common fixed subspace of the rotation parts: all of R³ when every
    // rotation is trivial, the shared axis line when screws are present.
    let mut shared_axis: Option<Unit<Vector3<f64>>> = None;
    for g in generators {
        if let Some(u) = g.rotation().axis() {
            match &shared_axis {
                None => shared_axis = Some(*u),
                Some(u0) => {
                    if u.cross(u0).norm() > SEPARATION_TOL {
                        return Err(Hyp4Error::UnsupportedGroup(
                            "screw generators with different rotation axes".into(),
                        ));
                    }
                }
            }
        }
    }
    let v: Vec<Vector3<f64>> = generators
        .iter()
        .map(|g| {
            let tau = g.translation_vector().expect("parabolic");
            match &shared_axis {
                None => tau,
                Some(u) => tau.dot(u) * u.into_inner(),
            }
        })
        .collect();
    let scale = v.iter().map(|w| w.norm()).fold(0.0, f64::max);
    let sep: Vec<f64> = (0..v.len())
        .map(|i| {
            let others: Vec<Vector3<f64>> = (0..v.len()).filter(|&j| j != i).map(|j| v[j]).collect();
            dist_to_span(&v[i], &others)
        })
        .collect();
    if sep.iter().any(|&s| s <= SEPARATION_TOL * scale.max(1e-300)) {
        return Err(Hyp4Error::UnsupportedGroup(
            "translation lattice is degenerate: a generator's effective translation \
             lies in the span of the others"
                .into(),
        ));
    }
    Ok(Lattice::Parabolic { sep })
}

/// Euclidean distance from `w` to the linear span of `others`.
fn dist_to_span(w: &Vector3<f64>, others: &[Vector3<f64>]) -> f64 {
    let mut basis: Vec<Vector3<f64>> = Vec::new();
    for o in others {
        let mut r = *o;
        for b in &basis {
            r -= r.dot(b) * *b;
        }
        if r.norm() > 1e-14 * o.norm().max(1.0) {
            basis.push(r.normalize());
        }
    }
    let mut r = *w;
    for b in &basis {
        r -= r.dot(b) * *b;
    }
    r.norm()
}

/// First-return exponent: the minimal `k > 0` with `d(x, gᵏx) ≤ μ`, or
/// `None` when no such `k` exists.
///
/// The scan length is certified from closed-form displacement growth
/// (`k log λ` for loxodromic, `k` times the axis translation for parabolic)
/// and capped at an internal budget that only near-degenerate inputs could
/// reach; beyond-budget scans report `None`.
pub fn q_function(g: &Isometry4, x: &Point4, mu: f64) -> Option<u32> {
    if !(mu.is_finite() && mu > 0.0) {
        return None;
    }
    let cap = match g.kind() {
        IsometryKind::Loxodromic => {
            let log_lambda = g.lambda().expect("loxodromic").ln().abs();
            (mu / log_lambda).floor()
        }
        IsometryKind::Parabolic => {
            let step = g.axis_translation().expect("parabolic").norm();
            (2.0 * x.height() * (0.5 * mu).sinh() / step).ceil()
        }
    };
    let cap = cap.min(Q_SCAN_CAP as f64) as i64;
    let step = g.to_motion();
    let mut m = step;
    for k in 1..=cap {
        if (k - 1) % REFRESH_PERIOD == 0 && k > 1 {
            m = g.power(k).expect("k > 0").to_motion();
        }
        if m.index(x) <= mu {
            return Some(k as u32);
        }
        m = step.compose(&m);
    }
    None
}

/// Canonical fibration coordinate of `x` for the fibration associated with
/// `g`: `log |x|` (Euclidean 4-norm) in the loxodromic case, the component
/// of the horizontal part along the invariant translation direction in the
/// parabolic case.
pub fn foliation_coordinate(g: &Isometry4, x: &Point4) -> Result<FoliationCoordinate> {
    let t = match g.kind() {
        IsometryKind::Loxodromic => {
            let n2 = x.horizontal().norm_squared() + x.height() * x.height();
            0.5 * n2.ln()
        }
        IsometryKind::Parabolic => {
            let u = g.axis_translation().expect("parabolic").normalize();
            x.horizontal().dot(&u)
        }
    };
    if !t.is_finite() {
        return Err(Hyp4Error::Invalid("degenerate fibration coordinate".into()));
    }
    Ok(FoliationCoordinate { t })
}

/// The thin-part cone `{x : min-index over the group ≤ ν}` of an elementary
/// group.
#[derive(Clone, Debug)]
pub struct MargulisCone {
    group: ElementaryGroup,
    nu: f64,
}

impl MargulisCone {
    /// Creates the cone with displacement threshold `ν > 0`.
    pub fn new(group: ElementaryGroup, nu: f64) -> Result<Self> {
        if !(nu.is_finite() && nu > 0.0) {
            return Err(Hyp4Error::Invalid(format!(
                "cone threshold must be positive, got {nu}"
            )));
        }
        Ok(Self { group, nu })
    }

    /// The underlying group.
    pub fn group(&self) -> &ElementaryGroup {
        &self.group
    }

    /// Displacement threshold.
    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Whether the cone is empty. Loxodromic cones are empty exactly when
    /// the translation length exceeds `ν`; parabolic cones never are
    /// (displacements vanish toward `∞`).
    pub fn is_empty(&self) -> bool {
        match &self.group.lattice {
            Lattice::Loxodromic { log_lambda } => *log_lambda > self.nu,
            Lattice::Parabolic { .. } => false,
        }
    }

    /// Membership: whether some nontrivial word displaces `x` by at most
    /// `ν`. Equivalent to `injectivity_radius(x) ≤ ν/2`.
    pub fn contains(&self, x: &Point4) -> Result<bool> {
        self.group.moves_within(x, self.nu)
    }

    /// Projects `a` to the cone boundary along the canonical ray: the
    /// vertical ray through `a` for parabolic groups, the ray from the axis
    /// through `a` orthogonal to the axis for loxodromic ones. Found by
    /// bracketing and bisection on the membership predicate.
    ///
    /// # Errors
    ///
    /// Loxodromic: rejects points on the axis (no unique orthogonal ray)
    /// and empty cones. Parabolic: rejects only when bracketing fails to
    /// leave or enter the cone within the iteration budget.
    pub fn project_phi(&self, a: &Point4) -> Result<Point4> {
        match &self.group.lattice {
            Lattice::Parabolic { .. } => self.project_vertical(a),
            Lattice::Loxodromic { .. } => self.project_radial(a),
        }
    }

    /// Parabolic case: membership along the vertical ray is monotone
    /// (indices shrink as the height grows), so the boundary is the unique
    /// sign change of the predicate in the log-height parameter.
    fn project_vertical(&self, a: &Point4) -> Result<Point4> {
        let h = a.horizontal();
        let at = |s: f64| Point4::from_parts(h, a.height() * s.exp()).expect("height > 0");
        let inside = |s: f64| self.contains(&at(s));
        let (mut lo, mut hi);
        if inside(0.0)? {
            // Walk down until outside.
            hi = 0.0;
            lo = -1.0;
            let mut step = 1.0;
            while inside(lo)? {
                hi = lo;
                step *= 2.0;
                lo -= step;
                if lo < -800.0 {
                    return Err(Hyp4Error::NoConvergence(
                        "cone extends below every probed height".into(),
                    ));
                }
            }
        } else {
            lo = 0.0;
            hi = 1.0;
            let mut step = 1.0;
            while !inside(hi)? {
                lo = hi;
                step *= 2.0;
                hi += step;
                if hi > 800.0 {
                    return Err(Hyp4Error::NoConvergence(
                        "ray never enters the cone".into(),
                    ));
                }
            }
        }
        // Invariant: lo outside, hi inside.
        let mut iters = 0;
        while hi - lo > BISECTION_TOL && iters < BISECTION_MAX_ITER {
            let mid = 0.5 * (lo + hi);
            if inside(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
            iters += 1;
        }
        Ok(at(0.5 * (lo + hi)))
    }

    /// Loxodromic case: along the ray leaving the axis through `a`,
    /// displacement grows with the distance from the axis, so membership
    /// holds on an initial interval.
    fn project_radial(&self, a: &Point4) -> Result<Point4> {
        if self.is_empty() {
            return Err(Hyp4Error::Invalid(
                "empty cone: translation length exceeds the threshold".into(),
            ));
        }
        let c = (a.horizontal().norm_squared() + a.height() * a.height()).sqrt();
        let hn = a.horizontal().norm();
        if hn <= 1e-12 * c {
            return Err(Hyp4Error::Invalid(
                "projection is not defined on the axis".into(),
            ));
        }
        let e = a.horizontal() / hn;
        let at = |d: f64| {
            Point4::from_parts(c * d.tanh() * e, c / d.cosh()).expect("height > 0")
        };
        let inside = |d: f64| self.contains(&at(d));
        let mut lo = 0.0;
        let mut hi = 1.0;
        while inside(hi)? {
            lo = hi;
            hi *= 2.0;
            if hi > 800.0 {
                return Err(Hyp4Error::NoConvergence(
                    "cone extends beyond every probed radius".into(),
                ));
            }
        }
        // Invariant: lo inside, hi outside.
        let mut iters = 0;
        while hi - lo > BISECTION_TOL && iters < BISECTION_MAX_ITER {
            let mid = 0.5 * (lo + hi);
            if inside(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
            iters += 1;
        }
        Ok(at(0.5 * (lo + hi)))
    }

    /// Meshes the cone boundary as a `resolution × resolution` grid of
    /// boundary projections.
    ///
    /// Loxodromic: the boundary is a cone over a surface invariant under
    /// rotation about the axis direction and scaling; the grid runs over
    /// the polar angle from the rotation axis and the azimuth at unit
    /// Euclidean norm, the chart per vertex is `(R_x, azimuth, x4)` where
    /// `R_x` is the Euclidean distance to the rotational fixed plane (to
    /// the axis line for trivial rotation). Parabolic: the grid runs over a
    /// square of horizontal positions spanned by the invariant direction
    /// and a perpendicular, the rays are vertical, and the chart is the two
    /// grid coordinates plus the height.
    pub fn cone_boundary_mesh(&self, resolution: usize) -> Result<QuadMesh> {
        if resolution < 2 {
            return Err(Hyp4Error::InvalidInput(
                "mesh resolution must be at least 2".into(),
            ));
        }
        match &self.group.lattice {
            Lattice::Loxodromic { .. } => self.mesh_radial(resolution),
            Lattice::Parabolic { .. } => self.mesh_vertical(resolution),
        }
    }

    fn mesh_radial(&self, resolution: usize) -> Result<QuadMesh> {
        if self.is_empty() {
            return Err(Hyp4Error::Invalid(
                "empty cone: translation length exceeds the threshold".into(),
            ));
        }
        let g = &self.group.generators[0];
        let u = g
            .rotation()
            .axis()
            .map(|u| u.into_inner())
            .unwrap_or_else(Vector3::z);
        let mut frame = Vec::new();
        Vector3::orthonormal_subspace_basis(&[u], |w| {
            frame.push(*w);
            true
        });
        let (w1, w2) = (frame[0], frame[1]);
        let mut failure = None;
        let mesh = QuadMesh::from_grid(resolution, resolution, true, |i, j| {
            let beta = std::f64::consts::PI * i as f64 / (resolution - 1) as f64;
            let psi = 2.0 * std::f64::consts::PI * j as f64 / resolution as f64;
            let e = beta.cos() * u + beta.sin() * (psi.cos() * w1 + psi.sin() * w2);
            let probe = Point4::from_parts(1.0f64.tanh() * e, 1.0 / 1.0f64.cosh()).unwrap();
            match self.project_phi(&probe) {
                Ok(v) => {
                    let r_x = if g.theta() > 0.0 {
                        g.euclidean_dist_to_fixed_plane(&v)
                    } else {
                        let h = v.horizontal();
                        (h - h.dot(&u) * u).norm()
                    };
                    MeshVertex {
                        position: v.coords(),
                        chart: [r_x, psi, v.height()],
                    }
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    MeshVertex {
                        position: [f64::NAN; 4],
                        chart: [f64::NAN; 3],
                    }
                }
            }
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(mesh),
        }
    }

    fn mesh_vertical(&self, resolution: usize) -> Result<QuadMesh> {
        let g = &self.group.generators[0];
        let center = g.screw_center().unwrap_or_else(Vector3::zeros);
        let e_a = g.axis_translation().expect("parabolic").normalize();
        let e_b = match self.group.rank() {
            1 => {
                let mut frame = Vec::new();
                Vector3::orthonormal_subspace_basis(&[e_a], |w| {
                    frame.push(*w);
                    true
                });
                frame[0]
            }
            _ => {
                let t2 = self.group.generators[1]
                    .translation_vector()
                    .expect("parabolic");
                (t2 - t2.dot(&e_a) * e_a).normalize()
            }
        };
        let range = self
            .group
            .generators
            .iter()
            .map(|g| g.translation_vector().expect("parabolic").norm())
            .fold(0.0, f64::max)
            * 2.0;
        let mut failure = None;
        let mesh = QuadMesh::from_grid(resolution, resolution, false, |i, j| {
            let s = -range + 2.0 * range * i as f64 / (resolution - 1) as f64;
            let t = -range + 2.0 * range * j as f64 / (resolution - 1) as f64;
            let probe = Point4::from_parts(center + s * e_a + t * e_b, 1.0).unwrap();
            match self.project_phi(&probe) {
                Ok(v) => MeshVertex {
                    position: v.coords(),
                    chart: [s, t, v.height()],
                },
                Err(e) => {
                    failure.get_or_insert(e);
                    MeshVertex {
                        position: [f64::NAN; 4],
                        chart: [f64::NAN; 3],
                    }
                }
            }
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(mesh),
        }
    }
}
