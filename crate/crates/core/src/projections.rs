//! Volumes of orthogonal projections onto coordinate subspaces.
//!
//! For an `m`-dimensional region in `Rⁿ` the squared volume is the sum of
//! the squared volumes of its projections onto the `C(n, m)` coordinate
//! subspaces. In `Cⁿ` the relation for a complex `m`-dimensional region is
//! linear instead: its `2m`-volume is the plain sum of the projected
//! `2m`-volumes.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{domain, Result};
use crate::linalg::{
    binomial, complex_gram_2m_volume, gram_determinant, gram_volume, minor, multiindices, realify_frame, ComplexFrame,
    MultiIndex, RealFrame,
};

/// A volume together with its projections and the identity relating them.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionReport {
    pub total: f64,
    pub per_index: BTreeMap<MultiIndex, f64>,
    pub identity_lhs: f64,
    pub identity_rhs: f64,
    pub residual: f64,
}

impl ProjectionReport {
    fn new(total: f64, per_index: BTreeMap<MultiIndex, f64>, identity_lhs: f64, identity_rhs: f64) -> Self {
        ProjectionReport {
            total,
            per_index,
            identity_lhs,
            identity_rhs,
            residual: crate::residual(identity_lhs, identity_rhs),
        }
    }
}

struct PerIndex<'a>(&'a BTreeMap<MultiIndex, f64>);

impl Serialize for PerIndex<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(&k.key(), v)?;
        }
        map.end()
    }
}

impl Serialize for ProjectionReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ProjectionReport", 5)?;
        st.serialize_field("total", &self.total)?;
        st.serialize_field("per_index", &PerIndex(&self.per_index))?;
        st.serialize_field("identity_lhs", &self.identity_lhs)?;
        st.serialize_field("identity_rhs", &self.identity_rhs)?;
        st.serialize_field("residual", &self.residual)?;
        st.end()
    }
}

fn projected<T, F>(n: usize, m: usize, f: F) -> BTreeMap<MultiIndex, T>
where
    T: Send,
    F: Fn(&MultiIndex) -> T + Sync,
{
    let indices = multiindices(n, m).expect("frame has 1 <= m <= n");
    indices.par_iter().map(|i| (i.clone(), f(i))).collect::<Vec<_>>().into_iter().collect()
}

/// Parallelotope volume and its projections, `V² = Σ_I V_I²`.
pub fn real_projection_volumes(frame: &RealFrame) -> ProjectionReport {
    let total = gram_volume(frame);
    let per_index = projected(frame.n(), frame.m(), |i| minor(frame, i).unwrap().abs());
    let rhs = per_index.values().map(|v| v * v).sum();
    ProjectionReport::new(total, per_index, total * total, rhs)
}

/// Both sides of `V² = C(n−p, n−m)⁻¹ · Σ_{I ∈ I_m} V_I²` for a `p`-frame
/// projected onto `m`-dimensional coordinate subspaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

pub fn corollary_residual(frame: &RealFrame, m: usize) -> Result<CorollaryCheck> {
    let (n, p) = (frame.n(), frame.m());
    if m < p || m > n {
        return domain(format!("target dimension must satisfy p <= m <= n, got p = {p}, m = {m}, n = {n}"));
    }
    let v = gram_volume(frame);
    let lhs = v * v;
    // p-volume of the frame after dropping every coordinate outside I
    let per_index = projected(n, m, |index| {
        let vectors =
            frame.vectors().iter().map(|vec| index.indices().iter().map(|&row| vec[row - 1]).collect()).collect();
        let sub = RealFrame::with_dim(m, vectors).expect("p <= m");
        gram_volume(&sub)
    });
    let sum: f64 = per_index.values().map(|v| v * v).sum();
    let rhs = sum / binomial((n - p) as u64, (n - m) as u64) as f64;
    Ok(CorollaryCheck { lhs, rhs, residual: crate::residual(lhs, rhs) })
}

/// Square spanned by `v` and `i·v` in the complex line `Cv`, and its
/// projections onto the lines `Ce_k`: `A = A_1 + … + A_n`.
///
/// Both the total and the projections are measured as real parallelogram
/// areas in `R²ⁿ`, so the identity is not a restatement of `‖v‖² = Σ|v_k|²`.
pub fn complex_line_areas(v: &[Complex64]) -> Result<ProjectionReport> {
    if v.is_empty() || v.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
        return domain("complex line needs a nonzero vector");
    }
    let frame = ComplexFrame::new(vec![v.to_vec()])?;
    let real = realify_frame(&frame);
    let total = gram_volume(&real);
    let per_index = projected(v.len(), 1, |i| {
        let k = i.indices()[0];
        let rows = MultiIndex::new(vec![2 * k - 1, 2 * k], 2 * v.len()).unwrap();
        minor(&real, &rows).unwrap().abs()
    });
    let rhs = per_index.values().sum();
    Ok(ProjectionReport::new(total, per_index, total, rhs))
}

/// `2m`-volume of a complex parallelotope and its projections,
/// `V = Σ_I V_I` with `V_I = |det(M_I)|²`.
pub fn complex_subspace_volumes(frame: &ComplexFrame) -> ProjectionReport {
    let total = complex_gram_2m_volume(frame);
    let per_index = projected(frame.n(), frame.m(), |i| minor(frame, i).unwrap().norm_sqr());
    let rhs = per_index.values().sum();
    ProjectionReport::new(total, per_index, total, rhs)
}

/// A simple polygon given by vertex coordinates in some 2-dimensional basis.
pub type Polygon = [[f64; 2]];

/// Signed shoelace area, taken about the first vertex to limit cancellation
/// for polygons far from the origin.
pub fn shoelace(poly: &Polygon) -> f64 {
    let Some(&[x0, y0]) = poly.first() else { return 0.0 };
    0.5 * poly
        .windows(2)
        .map(|w| {
            let (p, q) = ([w[0][0] - x0, w[0][1] - y0], [w[1][0] - x0, w[1][1] - y0]);
            p[0] * q[1] - q[0] * p[1]
        })
        .sum::<f64>()
}

fn segments_cross(p1: [f64; 2], p2: [f64; 2], q1: [f64; 2], q2: [f64; 2]) -> bool {
    let orient = |a: [f64; 2], b: [f64; 2], c: [f64; 2]| (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    let (d1, d2) = (orient(q1, q2, p1), orient(q1, q2, p2));
    let (d3, d4) = (orient(p1, p2, q1), orient(p1, p2, q2));
    (d1 * d2 < 0.0) && (d3 * d4 < 0.0)
}

fn check_polygon(poly: &Polygon) -> Result<()> {
    let n = poly.len();
    if n < 3 {
        return domain(format!("polygon needs at least 3 vertices, got {n}"));
    }
    if poly.iter().flatten().any(|x| !x.is_finite()) {
        return domain("polygon vertices must be finite");
    }
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]) {
                return domain(format!("polygon edges {i} and {j} intersect"));
            }
        }
    }
    Ok(())
}

fn check_plane(plane: &RealFrame) -> Result<()> {
    if plane.m() != 2 {
        return domain(format!("a plane is spanned by 2 vectors, got {}", plane.m()));
    }
    // squared sine of the angle between the two spanning vectors
    let norms: f64 = plane.vectors().iter().map(|v| v.iter().map(|x| x * x).sum::<f64>()).product();
    if !(gram_determinant(plane) > 1e-12 * norms) {
        return domain("plane vectors are linearly dependent");
    }
    Ok(())
}

/// Area of a polygon lying in the plane spanned by `plane`, with vertices
/// given as coefficients `(s, t)` of `s·u + t·w`.
pub fn region_area(plane: &RealFrame, region: &Polygon) -> Result<f64> {
    check_plane(plane)?;
    check_polygon(region)?;
    Ok(shoelace(region).abs() * gram_volume(plane))
}

/// Area of the projection of a planar polygon onto the coordinate plane
/// `C_I`, `|I| = 2`.
///
/// The projection restricted to the plane is the linear map `(s, t) ↦
/// (s·u_I + t·w_I)`, so the projected area is `|det(M_I)|` times the
/// shoelace area of the region in the plane's coordinates.
pub fn region_projection_area(plane: &RealFrame, region: &Polygon, index: &MultiIndex) -> Result<f64> {
    check_plane(plane)?;
    check_polygon(region)?;
    if index.len() != 2 {
        return domain(format!("projection of a plane region needs a 2-index, got {index}"));
    }
    Ok(minor(plane, index)?.abs() * shoelace(region).abs())
}

/// Exact check on integer frames: `det(MᵀM)` and the squared minors,
/// computed without rounding.
pub fn exact_projection_identity(vectors: &[Vec<i64>]) -> Result<(i128, Vec<(MultiIndex, i128)>)> {
    use crate::linalg::determinant_exact;
    let m = vectors.len();
    let n = vectors.first().map_or(0, Vec::len);
    if m == 0 || m > n || vectors.iter().any(|v| v.len() != n) {
        return domain("integer frame needs 1 <= m <= n vectors of equal length");
    }
    let gram = (0..m)
        .map(|a| (0..m).map(|b| (0..n).map(|k| vectors[a][k] as i128 * vectors[b][k] as i128).sum()).collect())
        .collect();
    let lhs = determinant_exact(gram);
    let minors = multiindices(n, m)?
        .iter()
        .map(|index| {
            let sub = index.indices().iter().map(|&row| vectors.iter().map(|v| v[row - 1] as i128).collect()).collect();
            (index.clone(), determinant_exact(sub))
        })
        .collect();
    Ok((lhs, minors))
}
