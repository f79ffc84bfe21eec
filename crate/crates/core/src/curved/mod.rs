//! Constant-curvature surfaces.
//!
//! Points live in embedding coordinates: a sphere of radius `R` centred at the
//! origin, the upper sheet `x0² − x1² − x2² = R²` of a hyperboloid in
//! Minkowski space, or the plane `x2 = 0`. Geodesic distances in all three are
//! single inner products, so the right-triangle construction below doubles as
//! an independent check on the closed forms.
//!
//! Disk areas and the proper-triangle relation are evaluated through
//! half-angle quantities `h(x) = 2 sin²(x/2R)` (sphere) or `2 sinh²(x/2R)`
//! (hyperboloid), i.e. `1 − cos` and `cosh − 1`, which keeps small
//! triangles accurate.

pub mod cities;

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Slack allowed when clamping `arccos`/`arccosh` arguments to their domain.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

/// Relative tolerance of the surface-membership check.
pub const SURFACE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryKind {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl fmt::Display for GeometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeometryKind::Spherical => "spherical",
            GeometryKind::Euclidean => "euclidean",
            GeometryKind::Hyperbolic => "hyperbolic",
        })
    }
}

/// A constant-curvature surface: curvature `K` and, when `K ≠ 0`, the
/// (pseudo-)radius `R = 1/√|K|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    kind: GeometryKind,
    radius: f64,
}

impl Geometry {
    pub fn spherical(radius: f64) -> Result<Self> {
        Self::curved(GeometryKind::Spherical, radius)
    }

    pub fn hyperbolic(radius: f64) -> Result<Self> {
        Self::curved(GeometryKind::Hyperbolic, radius)
    }

    pub fn euclidean() -> Self {
        Geometry { kind: GeometryKind::Euclidean, radius: f64::INFINITY }
    }

    /// Geometry of curvature `k`; the sign selects the kind.
    pub fn from_curvature(k: f64) -> Result<Self> {
        if !k.is_finite() {
            return domain(format!("curvature must be finite, got {k}"));
        }
        if k == 0.0 {
            Ok(Self::euclidean())
        } else if k > 0.0 {
            Self::spherical(1.0 / k.sqrt())
        } else {
            Self::hyperbolic(1.0 / (-k).sqrt())
        }
    }

    /// `radius` is ignored for [`GeometryKind::Euclidean`].
    pub fn new(kind: GeometryKind, radius: f64) -> Result<Self> {
        match kind {
            GeometryKind::Euclidean => Ok(Self::euclidean()),
            _ => Self::curved(kind, radius),
        }
    }

    fn curved(kind: GeometryKind, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return domain(format!("radius must be finite and positive, got {radius}"));
        }
        Ok(Geometry { kind, radius })
    }

    pub fn kind(&self) -> GeometryKind {
        self.kind
    }

    /// `R`, or `None` on the plane.
    pub fn radius(&self) -> Option<f64> {
        (self.kind != GeometryKind::Euclidean).then_some(self.radius)
    }

    /// Gaussian curvature `K = ±1/R²`, zero on the plane.
    pub fn curvature(&self) -> f64 {
        match self.kind {
            GeometryKind::Spherical => 1.0 / (self.radius * self.radius),
            GeometryKind::Euclidean => 0.0,
            GeometryKind::Hyperbolic => -1.0 / (self.radius * self.radius),
        }
    }

    /// `1 − cos(x/R)` or `cosh(x/R) − 1`, scaled by `R²` it is the
    /// disk area over `2π`. Returns `x²/2` on the plane, matching the limit.
    fn half_angle(&self, x: f64) -> f64 {
        let r = self.radius;
        match self.kind {
            GeometryKind::Spherical => {
                let s = (0.5 * x / r).sin();
                2.0 * s * s
            }
            GeometryKind::Hyperbolic => {
                let s = (0.5 * x / r).sinh();
                2.0 * s * s
            }
            GeometryKind::Euclidean => 0.5 * x * x,
        }
    }

    /// Inverse of [`half_angle`](Self::half_angle) on `[0, πR]` for the sphere.
    fn side_from_half_angle(&self, h: f64) -> f64 {
        let r = self.radius;
        match self.kind {
            GeometryKind::Spherical => {
                let h = h.clamp(0.0, 2.0);
                2.0 * r * h.sqrt().atan2((2.0 - h).sqrt())
            }
            GeometryKind::Hyperbolic => 2.0 * r * (0.5 * h).max(0.0).sqrt().asinh(),
            GeometryKind::Euclidean => (2.0 * h).max(0.0).sqrt(),
        }
    }

    fn check_leg(&self, name: &str, x: f64) -> Result<()> {
        if !x.is_finite() || x < 0.0 {
            return domain(format!("{name} must be finite and non-negative, got {x}"));
        }
        if self.kind == GeometryKind::Spherical && x >= PI * self.radius {
            return domain(format!("spherical side {name} = {x} must be below πR = {}", PI * self.radius));
        }
        Ok(())
    }

    /// Minkowski (`x0² − x1² − x2²`) or Euclidean inner product, whichever
    /// the embedding uses.
    pub fn inner(&self, p: &[f64; 3], q: &[f64; 3]) -> f64 {
        match self.kind {
            GeometryKind::Hyperbolic => p[0] * q[0] - p[1] * q[1] - p[2] * q[2],
            _ => dot(p, q),
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radius() {
            Some(r) => write!(f, "{} R={r}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

pub(crate) fn dot(p: &[f64; 3], q: &[f64; 3]) -> f64 {
    p[0] * q[0] + p[1] * q[1] + p[2] * q[2]
}

pub(crate) fn cross(p: &[f64; 3], q: &[f64; 3]) -> [f64; 3] {
    [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]]
}

pub(crate) fn norm(p: &[f64; 3]) -> f64 {
    p[0].hypot(p[1]).hypot(p[2])
}

/// A point of a constant-curvature surface in embedding coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint(pub [f64; 3]);

impl SurfacePoint {
    /// Checks the point against the surface of `g`.
    pub fn on(g: &Geometry, coords: [f64; 3]) -> Result<Self> {
        let p = SurfacePoint(coords);
        p.validate(g)?;
        Ok(p)
    }

    pub fn coords(&self) -> &[f64; 3] {
        &self.0
    }

    /// Sphere: `‖p‖ = R`; hyperboloid: `x0 > 0` and `x0² − x1² − x2² = R²`,
    /// both relative to the magnitude of the coordinates; plane: `x2 = 0`.
    pub fn validate(&self, g: &Geometry) -> Result<()> {
        let p = &self.0;
        if p.iter().any(|x| !x.is_finite()) {
            return domain(format!("point {p:?} has non-finite coordinates"));
        }
        match g.kind {
            GeometryKind::Spherical => {
                let r = g.radius;
                if (norm(p) - r).abs() > SURFACE_TOLERANCE * r {
                    return domain(format!("point {p:?} is not on the sphere of radius {r}"));
                }
            }
            GeometryKind::Hyperbolic => {
                let r2 = g.radius * g.radius;
                let form = g.inner(p, p);
                let scale = dot(p, p).max(r2);
                if p[0] <= 0.0 || (form - r2).abs() > SURFACE_TOLERANCE * scale {
                    return domain(format!("point {p:?} is not on the upper hyperboloid sheet of radius {}", g.radius));
                }
            }
            GeometryKind::Euclidean => {
                if p[2] != 0.0 {
                    return domain(format!("planar point {p:?} must have zero third coordinate"));
                }
            }
        }
        Ok(())
    }
}

/// Point at `latitude`, `longitude` (degrees) on the sphere of radius `r`:
/// `(R cos φ cos λ, R cos φ sin λ, R sin φ)`.
pub fn latlon_point(latitude: f64, longitude: f64, r: f64) -> Result<SurfacePoint> {
    if !(-90.0..=90.0).contains(&latitude) {
        return domain(format!("latitude {latitude} outside [-90, 90]"));
    }
    if !(-180.0..=180.0).contains(&longitude) {
        return domain(format!("longitude {longitude} outside [-180, 180]"));
    }
    if !(r.is_finite() && r > 0.0) {
        return domain(format!("radius must be finite and positive, got {r}"));
    }
    let (phi, lambda) = (latitude.to_radians(), longitude.to_radians());
    Ok(SurfacePoint([r * phi.cos() * lambda.cos(), r * phi.cos() * lambda.sin(), r * phi.sin()]))
}

/// Length of the shortest geodesic from `p` to `q`.
///
/// Sphere: `R·arccos(⟨p,q⟩/R²)`, evaluated as `R·atan2(‖p×q‖, p·q)`.
/// Hyperboloid: `R·arccosh(⟨p,q⟩/R²)`, switching to the chord form
/// `2R·asinh(‖p−q‖/2R)` for nearby points. Plane: straight-line distance.
pub fn geodesic_distance(g: &Geometry, p: &SurfacePoint, q: &SurfacePoint) -> Result<f64> {
    p.validate(g)?;
    q.validate(g)?;
    let (a, b) = (&p.0, &q.0);
    if a == b {
        return Ok(0.0);
    }
    let r = g.radius;
    Ok(match g.kind {
        GeometryKind::Spherical => r * norm(&cross(a, b)).atan2(dot(a, b)),
        GeometryKind::Hyperbolic => {
            let ratio = g.inner(a, b) / (r * r);
            if ratio < 1.0 - CLAMP_TOLERANCE {
                return domain(format!("Minkowski product ratio {ratio} below 1"));
            }
            if ratio > 2.0 {
                r * ratio.acosh()
            } else {
                let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
                let chord2 = (-g.inner(&d, &d)).max(0.0);
                2.0 * r * (chord2.sqrt() / (2.0 * r)).asinh()
            }
        }
        GeometryKind::Euclidean => norm(&[a[0] - b[0], a[1] - b[1], a[2] - b[2]]),
    })
}

/// Hypotenuse of a right triangle with legs `b` and `c`:
/// `cos(a/R) = cos(b/R)·cos(c/R)` on the sphere,
/// `cosh(a/R) = cosh(b/R)·cosh(c/R)` on the hyperboloid, `a² = b² + c²` on
/// the plane.
pub fn right_hypotenuse(g: &Geometry, b: f64, c: f64) -> Result<f64> {
    g.check_leg("b", b)?;
    g.check_leg("c", c)?;
    let r = g.radius;
    // sin a and sinh a as sums of non-negative terms, so that neither small
    // nor near-antipodal triangles lose digits to cancellation
    Ok(match g.kind {
        GeometryKind::Euclidean => b.hypot(c),
        GeometryKind::Spherical => {
            let (sb, cb) = (b / r).sin_cos();
            let (sc, cc) = (c / r).sin_cos();
            let sin_a = (sb * sb + cb * cb * sc * sc).sqrt();
            r * sin_a.atan2(cb * cc)
        }
        GeometryKind::Hyperbolic => {
            let (sb, cb) = ((b / r).sinh(), (b / r).cosh());
            let sc = (c / r).sinh();
            r * (sb * sb + cb * cb * sc * sc).sqrt().asinh()
        }
    })
}

/// The second solution `2πR − a` of the spherical right-triangle relation,
/// which is the long way round the same great circle. When one leg is `πR/2`
/// this is the `3πR/2` alternative. `None` off the sphere.
pub fn reflex_hypotenuse(g: &Geometry, b: f64, c: f64) -> Result<Option<f64>> {
    let a = right_hypotenuse(g, b, c)?;
    Ok((g.kind == GeometryKind::Spherical).then_some(TAU * g.radius - a))
}

/// Area of a geodesic disk of radius `r`: `2πR²(1 − cos(r/R))`,
/// `2πR²(cosh(r/R) − 1)` or `πr²`.
pub fn disk_area(g: &Geometry, r: f64) -> Result<f64> {
    if !r.is_finite() || r < 0.0 {
        return domain(format!("disk radius must be finite and non-negative, got {r}"));
    }
    if g.kind == GeometryKind::Spherical && r > PI * g.radius {
        return domain(format!("spherical disk radius {r} exceeds πR = {}", PI * g.radius));
    }
    Ok(match g.kind {
        GeometryKind::Euclidean => PI * r * r,
        _ => TAU * g.radius * g.radius * g.half_angle(r),
    })
}

fn check_area(g: &Geometry, name: &str, area: f64) -> Result<()> {
    if !area.is_finite() || area < 0.0 {
        return domain(format!("area {name} must be finite and non-negative, got {area}"));
    }
    if g.kind == GeometryKind::Spherical && area > 2.0 * TAU * g.radius * g.radius * (1.0 + 1e-15) {
        return domain(format!("area {name} = {area} exceeds the sphere's total area"));
    }
    Ok(())
}

/// Area of the disk on the hypotenuse from the disks on the legs:
/// `A = A1 + A2 − (K/2π)·A1·A2`.
pub fn unified_hypotenuse_area(g: &Geometry, a1: f64, a2: f64) -> Result<f64> {
    check_area(g, "A1", a1)?;
    check_area(g, "A2", a2)?;
    Ok(a1 + a2 - g.curvature() / TAU * a1 * a2)
}

/// Hypotenuse of a proper triangle (one angle equal to the sum of the other
/// two) with legs `b` and `c`: `1 + cos(a/R) = cos(b/R) + cos(c/R)`,
/// `1 + cosh(a/R) = cosh(b/R) + cosh(c/R)`, or `a² = b² + c²` on the plane.
pub fn proper_hypotenuse(g: &Geometry, b: f64, c: f64) -> Result<f64> {
    for (name, x) in [("b", b), ("c", c)] {
        if !x.is_finite() || x < 0.0 {
            return domain(format!("{name} must be finite and non-negative, got {x}"));
        }
    }
    if g.kind == GeometryKind::Euclidean {
        return Ok(b.hypot(c));
    }
    // In half-angle terms the relation is linear: h(a) = h(b) + h(c).
    let h = g.half_angle(b) + g.half_angle(c);
    if g.kind == GeometryKind::Spherical && h > 2.0 + CLAMP_TOLERANCE {
        return Err(Error::NoProperTriangle { argument: 1.0 - h });
    }
    Ok(g.side_from_half_angle(h))
}

/// A triangle on a constant-curvature surface. Vertex `A` is the
/// distinguished one; sides follow the usual labelling (`a = |BC|`,
/// `b = |CA|`, `c = |AB|`).
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicTriangle {
    pub geometry: Geometry,
    pub vertices: [SurfacePoint; 3],
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl GeodesicTriangle {
    /// Measures the sides of the triangle with vertices `A`, `B`, `C`.
    pub fn from_vertices(g: Geometry, vertices: [SurfacePoint; 3]) -> Result<Self> {
        let [pa, pb, pc] = &vertices;
        let a = geodesic_distance(&g, pb, pc)?;
        let b = geodesic_distance(&g, pc, pa)?;
        let c = geodesic_distance(&g, pa, pb)?;
        if g.kind == GeometryKind::Spherical && [a, b, c].iter().any(|&s| s >= PI * g.radius) {
            return domain("spherical triangle sides must be shorter than πR");
        }
        Ok(GeodesicTriangle { geometry: g, vertices, a, b, c })
    }
}

/// Point at distance `t` from the base point along the unit tangent
/// direction `dir` (which must be orthogonal to the base point).
pub(crate) fn along_geodesic(g: &Geometry, dir: [f64; 2], t: f64) -> [f64; 3] {
    let r = g.radius;
    match g.kind {
        GeometryKind::Spherical => {
            let (s, c) = (t / r).sin_cos();
            [r * c, r * s * dir[0], r * s * dir[1]]
        }
        GeometryKind::Hyperbolic => {
            let (s, c) = ((t / r).sinh(), (t / r).cosh());
            [r * c, r * s * dir[0], r * s * dir[1]]
        }
        GeometryKind::Euclidean => [t * dir[0], t * dir[1], 0.0],
    }
}

/// Base point of [`along_geodesic`]: `(R, 0, 0)` on curved surfaces, the
/// origin on the plane.
pub(crate) fn base_point(g: &Geometry) -> [f64; 3] {
    match g.kind {
        GeometryKind::Euclidean => [0.0, 0.0, 0.0],
        _ => [g.radius, 0.0, 0.0],
    }
}

/// Right triangle with legs `c = |AB|` and `b = |AC|` meeting at `A`.
///
/// `A = (R, 0, 0)`, `B` leaves along the `x1` direction and `C` along `x2`;
/// on the plane `A` is the origin, `C = (b, 0)` and `B = (0, c)`. Side `a` is
/// the measured geodesic distance from `B` to `C`.
pub fn build_right_triangle(g: &Geometry, b: f64, c: f64) -> Result<GeodesicTriangle> {
    g.check_leg("b", b)?;
    g.check_leg("c", c)?;
    let a_pt = SurfacePoint(base_point(g));
    let (b_pt, c_pt) = match g.kind {
        GeometryKind::Euclidean => (SurfacePoint([0.0, c, 0.0]), SurfacePoint([b, 0.0, 0.0])),
        _ => (SurfacePoint(along_geodesic(g, [1.0, 0.0], c)), SurfacePoint(along_geodesic(g, [0.0, 1.0], b))),
    };
    let a = geodesic_distance(g, &b_pt, &c_pt)?;
    Ok(GeodesicTriangle { geometry: *g, vertices: [a_pt, b_pt, c_pt], a, b, c })
}

/// Initial direction at `p` of the geodesic towards `q`: the component of `q`
/// orthogonal to `p` in the embedding's inner product.
fn tangent(g: &Geometry, p: &[f64; 3], q: &[f64; 3]) -> [f64; 3] {
    match g.kind {
        GeometryKind::Euclidean => [q[0] - p[0], q[1] - p[1], q[2] - p[2]],
        _ => {
            let k = g.inner(p, q) / g.inner(p, p);
            [q[0] - k * p[0], q[1] - k * p[1], q[2] - k * p[2]]
        }
    }
}

/// Angle between two tangent vectors at the same point, via
/// `atan2(|u ∧ v|, u·v)` in the positive-definite metric on the tangent plane.
fn tangent_angle(g: &Geometry, u: &[f64; 3], v: &[f64; 3]) -> f64 {
    // tangent vectors of the hyperboloid are spacelike: −⟨·,·⟩ is positive there
    let sign = if g.kind == GeometryKind::Hyperbolic { -1.0 } else { 1.0 };
    let uv = sign * g.inner(u, v);
    let uu = sign * g.inner(u, u);
    let vv = sign * g.inner(v, v);
    let wedge2 = (uu * vv - uv * uv).max(0.0);
    wedge2.sqrt().atan2(uv)
}

/// Interior angles `(α, β, γ)` at `A`, `B`, `C`.
pub fn triangle_angles(t: &GeodesicTriangle) -> Result<(f64, f64, f64)> {
    if [t.a, t.b, t.c].iter().any(|&s| !(s > 0.0)) {
        return domain("degenerate triangle: a side has zero length");
    }
    let g = &t.geometry;
    let [pa, pb, pc] = t.vertices.map(|p| p.0);
    let at = |p: &[f64; 3], q: &[f64; 3], r: &[f64; 3]| tangent_angle(g, &tangent(g, p, q), &tangent(g, p, r));
    Ok((at(&pa, &pb, &pc), at(&pb, &pc, &pa), at(&pc, &pa, &pb)))
}
