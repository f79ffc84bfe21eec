//! Right-corner simplexes.
//!
//! Vertex `A_0` sits at the origin and `A_k` on the `k`-th axis at distance
//! `a_k`. Face `F_k` is spanned by every vertex except `A_k`; `F_0` is the
//! hypotenusal face. The squared `(n−1)`-volume of `F_0` equals the sum of
//! the squared volumes of the leg faces, which is checked here two ways:
//! directly from a Gram determinant, and through the face-normal closure
//! `Σ V_k n̂_k = 0`.

use crate::error::{domain, Result};
use crate::linalg::{gram_volume, RealFrame};

/// Largest supported dimension; `n!` stays exact in `f64` up to here.
pub const MAX_DIMENSION: usize = 20;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RightSimplex {
    legs: Vec<f64>,
}

impl RightSimplex {
    /// Needs `2 <= n <= 20` finite positive legs.
    pub fn new(legs: Vec<f64>) -> Result<Self> {
        if legs.len() < 2 || legs.len() > MAX_DIMENSION {
            return domain(format!("need between 2 and {MAX_DIMENSION} legs, got {}", legs.len()));
        }
        if let Some(bad) = legs.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
            return domain(format!("legs must be finite and positive, got {bad}"));
        }
        Ok(RightSimplex { legs })
    }

    pub fn legs(&self) -> &[f64] {
        &self.legs
    }

    pub fn dimension(&self) -> usize {
        self.legs.len()
    }

    fn check_leg_index(&self, k: usize) -> Result<()> {
        if k == 0 {
            return domain("face 0 is the hypotenusal face; use the hypotenusal volume routines");
        }
        if k > self.dimension() {
            return domain(format!("face index {k} exceeds n = {}", self.dimension()));
        }
        Ok(())
    }

    /// `(n−1)`-volume of the leg face `F_k`, `Π_{j≠k} a_j / (n−1)!`.
    pub fn leg_face_volume(&self, k: usize) -> Result<f64> {
        self.check_leg_index(k)?;
        let prod: f64 = self.legs.iter().enumerate().filter(|&(j, _)| j + 1 != k).map(|(_, a)| a).product();
        Ok(prod / factorial(self.dimension() - 1))
    }

    /// Volume of `F_0` from the Gram determinant of the edges `A_1A_2, …, A_1A_n`.
    pub fn hypotenusal_volume_gram(&self) -> f64 {
        let n = self.dimension();
        let edges = (1..n)
            .map(|k| {
                let mut e = vec![0.0; n];
                e[0] = -self.legs[0];
                e[k] = self.legs[k];
                e
            })
            .collect();
        let frame = RealFrame::with_dim(n, edges).expect("n − 1 edges in n-space");
        gram_volume(&frame) / factorial(n - 1)
    }

    /// Volume of `F_0` as `√(Σ V_k²)` over the leg faces.
    pub fn hypotenusal_volume_pythagoras(&self) -> f64 {
        let faces: Vec<f64> = (1..=self.dimension()).map(|k| self.leg_face_volume(k).unwrap()).collect();
        let scale = faces.iter().cloned().fold(0.0, f64::max);
        scale * faces.iter().map(|v| (v / scale).powi(2)).sum::<f64>().sqrt()
    }

    /// Height of `A_k` over the opposite face: `a_k` for `k >= 1`,
    /// `(Σ 1/a_j²)^(−1/2)` for the hypotenusal face.
    pub fn height(&self, k: usize) -> Result<f64> {
        match k {
            0 => Ok(self.legs.iter().map(|a| a.powi(-2)).sum::<f64>().sqrt().recip()),
            _ => {
                self.check_leg_index(k)?;
                Ok(self.legs[k - 1])
            }
        }
    }

    /// `n`-volume, `Π a_k / n!`.
    pub fn volume(&self) -> f64 {
        self.legs.iter().product::<f64>() / factorial(self.dimension())
    }

    /// Outward unit normals `n̂_0, …, n̂_n`: `n̂_k = −e_k` on the leg faces and
    /// `n̂_0 ∝ (1/a_1, …, 1/a_n)`, the normal of the hyperplane
    /// `x_1/a_1 + … + x_n/a_n = 1`.
    pub fn outward_normals(&self) -> Vec<Vec<f64>> {
        let n = self.dimension();
        let h0 = self.height(0).unwrap();
        // h0·(1/a_k) is already unit length
        let mut normals = vec![self.legs.iter().map(|a| h0 / a).collect::<Vec<_>>()];
        normals.extend((0..n).map(|k| {
            let mut e = vec![0.0; n];
            e[k] = -1.0;
            e
        }));
        normals
    }

    /// Face volumes `V_0, …, V_n`, with `V_0` from the Gram route.
    pub fn face_volumes(&self) -> Vec<f64> {
        std::iter::once(self.hypotenusal_volume_gram())
            .chain((1..=self.dimension()).map(|k| self.leg_face_volume(k).unwrap()))
            .collect()
    }

    /// `‖Σ_k V_k n̂_k‖ / Σ_k V_k`; zero for a closed polytope.
    pub fn normal_closure_residual(&self) -> f64 {
        let volumes = self.face_volumes();
        let normals = self.outward_normals();
        let n = self.dimension();
        let mut sum = vec![0.0; n];
        for (v, nk) in volumes.iter().zip(&normals) {
            for (s, x) in sum.iter_mut().zip(nk) {
                *s += v * x;
            }
        }
        let total: f64 = volumes.iter().sum();
        sum.iter().map(|x| x * x).sum::<f64>().sqrt() / total
    }

    /// Relative gap between the Gram and Pythagorean hypotenusal volumes.
    pub fn pythagoras_residual(&self) -> f64 {
        let gram = self.hypotenusal_volume_gram();
        (gram - self.hypotenusal_volume_pythagoras()).abs() / gram
    }
}
