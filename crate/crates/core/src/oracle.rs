//! Independent estimators used to cross-check the closed forms.
//!
//! Nothing here calls the formulas it is meant to check: volumes come from
//! sampling, disk areas from integrating circumferences, and hypotenuses from
//! points placed on the embedded surface and measured with inner products.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curved::{geodesic_distance, triangle_angles, GeodesicTriangle, Geometry, GeometryKind, SurfacePoint};
use crate::error::{domain, Error, Result};
use crate::linalg::RealFrame;

/// Minimum sample count accepted by [`mc_parallelotope_volume`].
pub const MIN_SAMPLES: usize = 1000;

/// Minimum step count accepted by [`quadrature_disk_area`].
pub const MIN_STEPS: usize = 100;

/// Monte Carlo estimate with its standard error and provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

impl McEstimate {
    /// Whether `value ± k·stderr` contains `exact`.
    pub fn brackets(&self, exact: f64, k: f64) -> bool {
        (self.value - exact).abs() <= k * self.stderr
    }
}

/// Hit-or-miss estimate of a parallelotope's `m`-volume.
///
/// The frame is orthonormalised by modified Gram–Schmidt, `M = QR`, so the
/// parallelotope becomes `{R t : t ∈ [0,1]^m}` in the coordinates of `Q`.
/// Points are drawn uniformly from its bounding box and accepted when the
/// triangular solve `R t = y` lands in the unit cube.
pub fn mc_parallelotope_volume(frame: &RealFrame, samples: usize, seed: u64) -> Result<McEstimate> {
    if samples < MIN_SAMPLES {
        return domain(format!("need at least {MIN_SAMPLES} samples, got {samples}"));
    }
    let m = frame.m();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m);
    // r[i][j] = q_i · v_j, upper triangular
    let mut r = vec![vec![0.0; m]; m];
    for (j, v) in frame.vectors().iter().enumerate() {
        let mut w = v.clone();
        for (i, q) in basis.iter().enumerate() {
            let c: f64 = q.iter().zip(&w).map(|(a, b)| a * b).sum();
            r[i][j] = c;
            w.iter_mut().zip(q).for_each(|(x, qi)| *x -= c * qi);
        }
        let len = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let scale = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len <= 1e-12 * scale || len == 0.0 {
            return Ok(McEstimate { value: 0.0, stderr: 0.0, samples, seed });
        }
        r[j][j] = len;
        basis.push(w.into_iter().map(|x| x / len).collect());
    }

    let bounds: Vec<(f64, f64)> = r
        .iter()
        .map(|row| {
            let lo: f64 = row.iter().map(|x| x.min(0.0)).sum();
            let hi: f64 = row.iter().map(|x| x.max(0.0)).sum();
            (lo, hi)
        })
        .collect();
    let box_volume: f64 = bounds.iter().map(|(lo, hi)| hi - lo).product();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y = vec![0.0; m];
    let mut t = vec![0.0; m];
    let mut hits = 0usize;
    for _ in 0..samples {
        for (yi, &(lo, hi)) in y.iter_mut().zip(&bounds) {
            *yi = rng.gen_range(lo..hi);
        }
        let mut inside = true;
        for i in (0..m).rev() {
            let tail: f64 = (i + 1..m).map(|k| r[i][k] * t[k]).sum();
            t[i] = (y[i] - tail) / r[i][i];
            if !(0.0..=1.0).contains(&t[i]) {
                inside = false;
                break;
            }
        }
        hits += inside as usize;
    }
    let p = hits as f64 / samples as f64;
    Ok(McEstimate {
        value: box_volume * p,
        stderr: box_volume * (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        seed,
    })
}

/// Disk area as `∫_0^r C(t) dt`, with `C` the circumference of the geodesic
/// circle of radius `t`, by the composite trapezoid rule.
pub fn quadrature_disk_area(g: &Geometry, r: f64, steps: usize) -> Result<f64> {
    if steps < MIN_STEPS {
        return domain(format!("need at least {MIN_STEPS} steps, got {steps}"));
    }
    if !r.is_finite() || r < 0.0 {
        return domain(format!("disk radius must be finite and non-negative, got {r}"));
    }
    let circumference: Box<dyn Fn(f64) -> f64> = match (g.kind(), g.radius()) {
        (GeometryKind::Spherical, Some(big_r)) => {
            if r > PI * big_r {
                return domain(format!("spherical disk radius {r} exceeds πR = {}", PI * big_r));
            }
            Box::new(move |t| TAU * big_r * (t / big_r).sin())
        }
        (GeometryKind::Hyperbolic, Some(big_r)) => Box::new(move |t| TAU * big_r * (t / big_r).sinh()),
        _ => Box::new(|t| TAU * t),
    };
    let h = r / steps as f64;
    let inner: f64 = (1..steps).map(|i| circumference(i as f64 * h)).sum();
    Ok(h * (0.5 * (circumference(0.0) + circumference(r)) + inner))
}

fn check_legs(g: &Geometry, b: f64, c: f64) -> Result<()> {
    for (name, x) in [("b", b), ("c", c)] {
        if !x.is_finite() || x < 0.0 {
            return domain(format!("{name} must be finite and non-negative, got {x}"));
        }
        if let (GeometryKind::Spherical, Some(big_r)) = (g.kind(), g.radius()) {
            if x >= PI * big_r {
                return domain(format!("spherical side {name} = {x} must be below πR"));
            }
        }
    }
    Ok(())
}

/// Point at distance `t` from `(R, 0, 0)` (or the origin) heading along the
/// unit direction `(cos φ, sin φ)` of the tangent plane.
fn embed(g: &Geometry, t: f64, phi: f64) -> SurfacePoint {
    let (sp, cp) = phi.sin_cos();
    SurfacePoint(match (g.kind(), g.radius()) {
        (GeometryKind::Spherical, Some(r)) => {
            let (s, c) = (t / r).sin_cos();
            [r * c, r * s * cp, r * s * sp]
        }
        (GeometryKind::Hyperbolic, Some(r)) => [r * (t / r).cosh(), r * (t / r).sinh() * cp, r * (t / r).sinh() * sp],
        _ => [t * cp, t * sp, 0.0],
    })
}

/// Hypotenuse of the right triangle with legs `b`, `c`, measured on the
/// embedded surface: `A = (R,0,0)`, `B = (R cos θ, R sin θ, 0)`,
/// `C = (R cos β, 0, R sin β)` (hyperbolic functions on the hyperboloid),
/// then the geodesic distance from `B` to `C`.
pub fn embedded_hypotenuse(g: &Geometry, b: f64, c: f64) -> Result<f64> {
    check_legs(g, b, c)?;
    let pb = embed(g, c, 0.0);
    let pc = embed(g, b, 0.5 * PI);
    let pc = match g.kind() {
        // exact zero in the unused coordinate keeps the planar point valid
        GeometryKind::Euclidean => SurfacePoint([0.0, b, 0.0]),
        _ => SurfacePoint([pc.0[0], 0.0, pc.0[2]]),
    };
    geodesic_distance(g, &pb, &pc)
}

fn triangle_with_opening(g: &Geometry, b: f64, c: f64, phi: f64) -> Result<GeodesicTriangle> {
    let a_pt = embed(g, 0.0, 0.0);
    let b_pt = embed(g, c, 0.0);
    let c_pt = embed(g, b, phi);
    GeodesicTriangle::from_vertices(*g, [a_pt, b_pt, c_pt])
}

/// Proper triangle with legs `b = |AC|` and `c = |AB|`, found by bisecting
/// on the opening angle at `A` until `α = β + γ`. Side `a` is measured, so
/// this never uses the proper-triangle side relation.
pub fn proper_triangle_by_angles(g: &Geometry, b: f64, c: f64) -> Result<GeodesicTriangle> {
    check_legs(g, b, c)?;
    if !(b > 0.0 && c > 0.0) {
        return domain("proper triangle needs positive legs");
    }
    if let (GeometryKind::Spherical, Some(r)) = (g.kind(), g.radius()) {
        if b + c >= PI * r {
            return domain("spherical legs must satisfy b + c < πR");
        }
    }
    let excess = |phi: f64| -> Result<f64> {
        let t = triangle_with_opening(g, b, c, phi)?;
        let (alpha, beta, gamma) = triangle_angles(&t)?;
        Ok(alpha - beta - gamma)
    };
    let (mut lo, mut hi) = (1e-9, PI - 1e-9);
    let (f_lo, f_hi) = (excess(lo)?, excess(hi)?);
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(Error::NoProperTriangle { argument: f_lo.min(f_hi) });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if excess(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    triangle_with_opening(g, b, c, 0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn unit_square_is_exact() {
        let f = RealFrame::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let est = mc_parallelotope_volume(&f, 1000, 7).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.stderr, 0.0);
        assert_eq!(est.seed, 7);
    }

    #[test]
    fn tilted_parallelogram() {
        let f = RealFrame::new(vec![vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]]).unwrap();
        let est = mc_parallelotope_volume(&f, 1_000_000, 1).unwrap();
        assert!(est.brackets(3f64.sqrt(), 5.0), "{est:?}");
        assert!(est.stderr > 0.0 && est.stderr < 1e-2);
    }

    #[test]
    fn degenerate_and_reproducible() {
        let flat = RealFrame::new(vec![vec![1.0, 2.0, 3.0], vec![-2.0, -4.0, -6.0]]).unwrap();
        let est = mc_parallelotope_volume(&flat, 1000, 3).unwrap();
        assert_eq!((est.value, est.stderr), (0.0, 0.0));

        let f = RealFrame::new(vec![vec![1.0, 0.3], vec![0.4, 1.0]]).unwrap();
        let a = mc_parallelotope_volume(&f, 5000, 99).unwrap();
        let b = mc_parallelotope_volume(&f, 5000, 99).unwrap();
        assert_eq!(a, b);
        assert!(mc_parallelotope_volume(&f, 999, 0).is_err());
    }

    #[test]
    fn quadrature_examples() {
        let e = quadrature_disk_area(&Geometry::euclidean(), 1.0, 10_000).unwrap();
        assert!((e - PI).abs() < 1e-7);
        let s = quadrature_disk_area(&Geometry::spherical(1.0).unwrap(), PI, 10_000).unwrap();
        assert!((s - 4.0 * PI).abs() < 1e-6);
        let h = quadrature_disk_area(&Geometry::hyperbolic(1.0).unwrap(), 2.0, 10_000).unwrap();
        assert!((h - TAU * (2f64.cosh() - 1.0)).abs() < 1e-6);
        assert!(quadrature_disk_area(&Geometry::euclidean(), 1.0, 99).is_err());
        assert!(quadrature_disk_area(&Geometry::spherical(1.0).unwrap(), 3.2, 1000).is_err());
    }

    #[test]
    fn embedded_examples() {
        let s = Geometry::spherical(1.0).unwrap();
        assert_relative_eq!(embedded_hypotenuse(&s, FRAC_PI_2, FRAC_PI_2).unwrap(), FRAC_PI_2, max_relative = 1e-15);
        let h = Geometry::hyperbolic(1.0).unwrap();
        assert!((embedded_hypotenuse(&h, 2.0, 2.0).unwrap() - 3.34).abs() < 0.01);
        assert_eq!(embedded_hypotenuse(&Geometry::euclidean(), 3.0, 4.0).unwrap(), 5.0);
        assert!(embedded_hypotenuse(&s, 4.0, 1.0).is_err());
    }

    #[test]
    fn proper_triangle_angles() {
        let s = Geometry::spherical(1.0).unwrap();
        let t = proper_triangle_by_angles(&s, 1.22, 0.86).unwrap();
        let (al, be, ga) = triangle_angles(&t).unwrap();
        assert!((al - be - ga).abs() < 1e-12);
        assert!((t.a - FRAC_PI_2).abs() < 5e-3, "a = {}", t.a);

        let e = proper_triangle_by_angles(&Geometry::euclidean(), 3.0, 4.0).unwrap();
        assert_relative_eq!(e.a, 5.0, max_relative = 1e-12);
        assert!(proper_triangle_by_angles(&s, 2.0, 1.5).is_err());
    }
}
