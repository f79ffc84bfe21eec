//! Randomized verification suites behind `pythagoras verify`.
//!
//! Each case draws its inputs from a ChaCha8 stream seeded by
//! `(seed, suite, case)`, so cases can run in any order on any number of
//! threads and still produce identical reports.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::json::format_g17;
use crate::curved::{disk_area, right_hypotenuse, unified_hypotenuse_area, Geometry, GeometryKind};
use crate::linalg::{ComplexFrame, RealFrame};
use crate::oracle::{embedded_hypotenuse, proper_triangle_by_angles};
use crate::projections::{complex_line_areas, complex_subspace_volumes, corollary_residual, real_projection_volumes};
use crate::simplex::RightSimplex;
use crate::Result;

/// Residual recorded for a case whose computation raised an error.
pub const ERROR_RESIDUAL: f64 = f64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Euclid,
    Spherical,
    Hyperbolic,
    Unified,
    Proper,
    Simplex,
    DeGua,
    Projection,
    Corollary,
    ComplexLine,
    ComplexSubspace,
    All,
}

impl Suite {
    /// Every concrete suite, in the order `all` runs them.
    pub const CONCRETE: [Suite; 11] = [
        Suite::Euclid,
        Suite::Spherical,
        Suite::Hyperbolic,
        Suite::Unified,
        Suite::Proper,
        Suite::Simplex,
        Suite::DeGua,
        Suite::Projection,
        Suite::Corollary,
        Suite::ComplexLine,
        Suite::ComplexSubspace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Euclid => "euclid",
            Suite::Spherical => "spherical",
            Suite::Hyperbolic => "hyperbolic",
            Suite::Unified => "unified",
            Suite::Proper => "proper",
            Suite::Simplex => "simplex",
            Suite::DeGua => "degua",
            Suite::Projection => "projection",
            Suite::Corollary => "corollary",
            Suite::ComplexLine => "complex-line",
            Suite::ComplexSubspace => "complex-subspace",
            Suite::All => "all",
        }
    }

    fn id(self) -> u64 {
        Suite::CONCRETE.iter().position(|&s| s == self).map_or(u64::MAX, |p| p as u64)
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::CONCRETE.iter().chain([Suite::All].iter()).find(|suite| suite.name() == s).copied().ok_or_else(|| {
            let names: Vec<&str> = Suite::CONCRETE.iter().map(|s| s.name()).collect();
            format!("unknown suite {s:?}; expected one of {}, all", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub digest: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// Outcome of one `verify` run. Field order is part of the output format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub tolerance: f64,
    pub cases: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub per_case: Vec<CaseResult>,
}

impl VerifyReport {
    fn from_cases(suite: Suite, seed: u64, tolerance: f64, per_case: Vec<CaseResult>) -> Self {
        VerifyReport {
            suite: suite.name().to_string(),
            seed,
            tolerance,
            cases: per_case.len(),
            failures: per_case.iter().filter(|c| !(c.residual <= tolerance)).count(),
            max_residual: per_case.iter().map(|c| c.residual).fold(0.0, f64::max),
            per_case,
        }
    }
}

/// SplitMix64 finaliser, used to derive per-case seeds.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn case_rng(seed: u64, suite: Suite, case: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(mix(seed) ^ mix(suite.id()) ^ (case as u64).wrapping_mul(0x2545_f491_4f6c_dd1d)))
}

/// Inputs of a case, kept for the digest.
#[derive(Default)]
struct Inputs(String);

impl Inputs {
    fn num(&mut self, x: f64) -> f64 {
        let _ = write!(self.0, "{} ", format_g17(x));
        x
    }

    fn tag(&mut self, t: &str) {
        let _ = write!(self.0, "{t} ");
    }

    fn digest(&self, suite: Suite, case: usize) -> String {
        let mut h = Sha256::new();
        h.update(format!("{}|{case}|{}", suite.name(), self.0).as_bytes());
        h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    10f64.powf(rng.gen_range(lo.log10()..hi.log10()))
}

fn random_geometry(rng: &mut ChaCha8Rng, inputs: &mut Inputs, kind: GeometryKind) -> Geometry {
    inputs.tag(&kind.to_string());
    let r = inputs.num(log_uniform(rng, 0.1, 1e4));
    Geometry::new(kind, r).expect("positive radius")
}

fn kind_for(case: usize) -> GeometryKind {
    [GeometryKind::Spherical, GeometryKind::Euclidean, GeometryKind::Hyperbolic][case % 3]
}

/// Leg length scale: `R` on curved surfaces, a random length on the plane.
fn leg_scale(rng: &mut ChaCha8Rng, g: &Geometry) -> f64 {
    g.radius().unwrap_or_else(|| log_uniform(rng, 0.1, 1e4))
}

fn real_frame(rng: &mut ChaCha8Rng, inputs: &mut Inputs, n: usize, m: usize) -> RealFrame {
    inputs.tag(&format!("n={n} m={m}"));
    let vectors = (0..m).map(|_| (0..n).map(|_| inputs.num(rng.gen_range(-1.0..1.0))).collect()).collect();
    RealFrame::with_dim(n, vectors).expect("valid random frame")
}

fn complex_vector(rng: &mut ChaCha8Rng, inputs: &mut Inputs, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| Complex64::new(inputs.num(rng.gen_range(-1.0..1.0)), inputs.num(rng.gen_range(-1.0..1.0)))).collect()
}

/// Draws the inputs of one case and returns `(lhs, rhs)`.
fn run_case(suite: Suite, rng: &mut ChaCha8Rng, inputs: &mut Inputs, case: usize) -> Result<(f64, f64)> {
    match suite {
        Suite::Euclid => {
            let b = inputs.num(rng.gen_range(0.0..1e6));
            let c = inputs.num(rng.gen_range(0.0..1e6));
            Ok((crate::euclid::law_of_cosines(b, c, PI / 2.0)?, crate::euclid::pythagoras_hypotenuse(b, c)?))
        }
        Suite::Spherical | Suite::Hyperbolic => {
            let (kind, span) = match suite {
                Suite::Spherical => (GeometryKind::Spherical, PI),
                _ => (GeometryKind::Hyperbolic, 5.0),
            };
            let g = random_geometry(rng, inputs, kind);
            let r = g.radius().unwrap();
            let b = inputs.num(rng.gen_range(0.0..span) * r);
            let c = inputs.num(rng.gen_range(0.0..span) * r);
            Ok((right_hypotenuse(&g, b, c)?, embedded_hypotenuse(&g, b, c)?))
        }
        Suite::Unified => {
            let g = random_geometry(rng, inputs, kind_for(case));
            let scale = leg_scale(rng, &g);
            let span = if g.kind() == GeometryKind::Spherical { PI } else { 4.0 };
            let b = inputs.num(rng.gen_range(0.0..span) * scale);
            let c = inputs.num(rng.gen_range(0.0..span) * scale);
            let a = embedded_hypotenuse(&g, b, c)?;
            let rhs = unified_hypotenuse_area(&g, disk_area(&g, b)?, disk_area(&g, c)?)?;
            Ok((disk_area(&g, a)?, rhs))
        }
        Suite::Proper => {
            let g = random_geometry(rng, inputs, kind_for(case));
            let scale = leg_scale(rng, &g);
            // spherical legs below πR/2 always admit a proper triangle
            let span = if g.kind() == GeometryKind::Spherical { 0.5 * PI } else { 3.0 };
            let b = inputs.num(rng.gen_range(0.01..span) * scale);
            let c = inputs.num(rng.gen_range(0.01..span) * scale);
            let t = proper_triangle_by_angles(&g, b, c)?;
            Ok((disk_area(&g, t.a)?, disk_area(&g, b)? + disk_area(&g, c)?))
        }
        Suite::Simplex | Suite::DeGua => {
            let n = if suite == Suite::DeGua { 3 } else { rng.gen_range(2..=8) };
            let legs: Vec<f64> = if suite == Suite::DeGua && case == 0 {
                vec![1.0; 3]
            } else {
                (0..n).map(|_| log_uniform(rng, 0.1, 10.0)).collect()
            };
            legs.iter().for_each(|&a| {
                inputs.num(a);
            });
            let s = RightSimplex::new(legs)?;
            Ok((s.hypotenusal_volume_gram(), s.hypotenusal_volume_pythagoras()))
        }
        Suite::Projection => {
            let n = rng.gen_range(1..=8);
            let m = rng.gen_range(1..=n.min(4));
            let r = real_projection_volumes(&real_frame(rng, inputs, n, m));
            Ok((r.identity_lhs, r.identity_rhs))
        }
        Suite::Corollary => {
            let n = rng.gen_range(1..=6);
            let p = rng.gen_range(1..=n);
            let m = rng.gen_range(p..=n);
            inputs.tag(&format!("target={m}"));
            let chk = corollary_residual(&real_frame(rng, inputs, n, p), m)?;
            Ok((chk.lhs, chk.rhs))
        }
        Suite::ComplexLine => {
            let n = rng.gen_range(1..=8);
            let r = complex_line_areas(&complex_vector(rng, inputs, n))?;
            Ok((r.identity_lhs, r.identity_rhs))
        }
        Suite::ComplexSubspace => {
            let n = rng.gen_range(1..=6);
            let m = rng.gen_range(1..=n.min(4));
            inputs.tag(&format!("n={n} m={m}"));
            let vectors = (0..m).map(|_| complex_vector(rng, inputs, n)).collect();
            let r = complex_subspace_volumes(&ComplexFrame::with_dim(n, vectors)?);
            Ok((r.identity_lhs, r.identity_rhs))
        }
        Suite::All => unreachable!("`all` is expanded before running cases"),
    }
}

fn run_concrete(suite: Suite, seed: u64, cases: usize) -> Vec<CaseResult> {
    (0..cases)
        .into_par_iter()
        .map(|case| {
            let mut rng = case_rng(seed, suite, case);
            let mut inputs = Inputs::default();
            let outcome = run_case(suite, &mut rng, &mut inputs, case);
            let digest = inputs.digest(suite, case);
            match outcome {
                Ok((lhs, rhs)) => CaseResult { digest, lhs, rhs, residual: crate::residual(lhs, rhs) },
                Err(_) => CaseResult { digest, lhs: 0.0, rhs: 0.0, residual: ERROR_RESIDUAL },
            }
        })
        .collect()
}

/// Runs `cases` randomized cases of `suite` (of every suite for `all`).
pub fn verify(suite: Suite, seed: u64, tolerance: f64, cases: usize) -> VerifyReport {
    let per_case = match suite {
        Suite::All => Suite::CONCRETE.iter().flat_map(|&s| run_concrete(s, seed, cases)).collect(),
        s => run_concrete(s, seed, cases),
    };
    VerifyReport::from_cases(suite, seed, tolerance, per_case)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::CONCRETE.iter().chain([Suite::All].iter()) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("pythagoras".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_passes_small_runs() {
        for s in Suite::CONCRETE {
            let r = verify(s, 3, 1e-9, 40);
            assert_eq!(r.cases, 40);
            assert_eq!(r.failures, 0, "{} max residual {}", s.name(), r.max_residual);
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = verify(Suite::Corollary, 11, 1e-9, 25);
        let b = verify(Suite::Corollary, 11, 1e-9, 25);
        assert_eq!(a, b);
        let c = verify(Suite::Corollary, 12, 1e-9, 25);
        assert_ne!(a.per_case[0].digest, c.per_case[0].digest);
    }

    #[test]
    fn degua_first_case_is_unit_tetrahedron() {
        let r = verify(Suite::DeGua, 0, 1e-9, 1);
        assert!((r.per_case[0].lhs - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!(r.per_case[0].residual < 1e-15);
    }

    #[test]
    fn zero_tolerance_fails() {
        let r = verify(Suite::Spherical, 0, 0.0, 200);
        assert!(r.failures > 0);
    }

    #[test]
    fn all_concatenates() {
        let r = verify(Suite::All, 1, 1e-9, 3);
        assert_eq!(r.cases, 3 * Suite::CONCRETE.len());
        assert_eq!(r.suite, "all");
    }
}
