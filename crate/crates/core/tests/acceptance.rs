//! Acceptance criteria. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion; exits nonzero if any fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pythagoras::cli::suites::{verify, Suite};
use pythagoras::curved::{disk_area, proper_hypotenuse, right_hypotenuse, Geometry, GeometryKind};
use pythagoras::linalg::RealFrame;
use pythagoras::oracle::{mc_parallelotope_volume, quadrature_disk_area};
use pythagoras::projections::exact_projection_identity;
use pythagoras::simplex::RightSimplex;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn earth_example() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_pythagoras"))
        .args(["distance", "--radius", "6371", "--cities", "quito,portoalegre", "--via", "macapa", "--compare"])
        .arg("--json")
        .output()
        .expect("run pythagoras");
    let elapsed = start.elapsed();
    if !out.status.success() {
        return outcome(false, format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("JSON report");
    let curved = v["right_hypotenuse"].as_f64().unwrap();
    let flat = v["flat_estimate"].as_f64().unwrap();
    let passed = rel(curved, 4414.0) <= 0.01 && rel(flat, 4511.0) <= 0.01 && elapsed < Duration::from_secs(1);
    outcome(
        passed,
        format!(
            "spherical {curved:.1} km ({:+.2}% vs 4414), flat {flat:.1} km ({:+.2}% vs 4511), {:.0} ms",
            100.0 * (curved / 4414.0 - 1.0),
            100.0 * (flat / 4511.0 - 1.0),
            elapsed.as_secs_f64() * 1e3
        ),
    )
}

fn hyperbolic_figure() -> Outcome {
    let g = Geometry::hyperbolic(1.0).unwrap();
    let a = right_hypotenuse(&g, 2.0, 2.0).unwrap();
    let (lhs, rhs) = (3.34f64.cosh(), 2f64.cosh() * 2f64.cosh());
    let computed = rel(a.cosh(), rhs);
    outcome(
        rel(lhs, rhs) <= 0.002 && computed <= 1e-12,
        format!("cosh(3.34) = {lhs:.4}, cosh²(2) = {rhs:.4}, gap {:.3}%; computed a = {a:.4}", 100.0 * rel(lhs, rhs)),
    )
}

fn proper_spherical_figure() -> Outcome {
    let g = Geometry::spherical(1.0).unwrap();
    let (lhs, rhs) = (1.0 + FRAC_PI_2.cos(), 1.22f64.cos() + 0.86f64.cos());
    let a = proper_hypotenuse(&g, 1.22, 0.86).unwrap();
    outcome(
        rel(lhs, rhs) <= 0.005,
        format!(
            "1 + cos(π/2) = {lhs:.4}, cos(1.22) + cos(0.86) = {rhs:.4}, gap {:.3}%; computed a = {a:.4}",
            100.0 * rel(lhs, rhs)
        ),
    )
}

fn octant() -> Outcome {
    let worst = [1e-3, 1.0, 6371.0, 1e6]
        .iter()
        .map(|&r| {
            let g = Geometry::spherical(r).unwrap();
            rel(right_hypotenuse(&g, PI * r / 2.0, PI * r / 2.0).unwrap(), PI * r / 2.0)
        })
        .fold(0.0, f64::max);
    outcome(worst <= 1e-12, format!("worst relative error {worst:.1e} over R ∈ {{1e-3, 1, 6371, 1e6}}"))
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let mut failures = 0;
    let mut worst = 0.0f64;
    let mut lines = Vec::new();
    for suite in Suite::CONCRETE {
        let r = verify(suite, 42, 1e-9, 1000);
        failures += r.failures;
        worst = worst.max(r.max_residual);
        lines.push(format!("{}={:.0e}", r.suite, r.max_residual));
    }
    // normal closure over random right simplexes
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let closure = (0..1000)
        .map(|_| {
            let n = rng.gen_range(2..=8);
            let legs = (0..n).map(|_| 10f64.powf(rng.gen_range(-1.0..1.0))).collect();
            RightSimplex::new(legs).unwrap().normal_closure_residual()
        })
        .fold(0.0, f64::max);
    let elapsed = start.elapsed();
    outcome(
        failures == 0 && worst <= 1e-9 && closure <= 1e-9 && elapsed < Duration::from_secs(30),
        format!(
            "{failures} failures, max residual {worst:.1e}, closure {closure:.1e}, {:.1} s [{}]",
            elapsed.as_secs_f64(),
            lines.join(" ")
        ),
    )
}

fn small_triangles() -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for kind in [GeometryKind::Spherical, GeometryKind::Hyperbolic] {
        let g = Geometry::new(kind, 1.0).unwrap();
        let devs: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&s| {
                let a = right_hypotenuse(&g, s, s).unwrap();
                (a - s * 2f64.sqrt()).abs() / a
            })
            .collect();
        let bounded = devs.iter().zip([1e-4, 1e-6, 1e-8]).all(|(d, bound)| *d <= bound);
        let ratios: Vec<f64> = devs.windows(2).map(|w| w[0] / w[1]).collect();
        passed &= bounded && ratios.iter().all(|r| (50.0..=200.0).contains(r));
        parts.push(format!(
            "{kind}: {:.2e} {:.2e} {:.2e}, ratios {:.1} {:.1}",
            devs[0], devs[1], devs[2], ratios[0], ratios[1]
        ));
    }
    outcome(passed, parts.join("; "))
}

fn r4_example() -> Outcome {
    let (a, b, c, d) = (1, 2, 3, 4);
    // the square spanned by v and i·v, with v = (a + ib, c + id)
    let (lhs, minors) = exact_projection_identity(&[vec![a, b, c, d], vec![-b, a, -d, c]]).unwrap();
    let rhs: i128 = minors.iter().map(|(_, m)| m * m).sum();
    let mut areas: Vec<i128> = minors.iter().map(|(_, m)| m.abs()).collect();
    areas.sort_unstable();
    outcome(
        lhs == rhs && lhs == 900 && areas == [2, 2, 5, 11, 11, 25],
        format!("A² = {lhs}, Σ A_I² = {rhs}, areas {areas:?}"),
    )
}

fn calibration() -> Outcome {
    let frames = [
        (vec![vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]], 3f64.sqrt()),
        (vec![vec![2.0, 1.0], vec![1.0, 3.0]], 5.0),
        (vec![vec![1.0, 0.0, 0.0], vec![1.0, 1.0, 0.0], vec![1.0, 1.0, 1.0]], 1.0),
        (vec![vec![1.0, 2.0, 2.0, 0.0]], 3.0),
    ];
    let hits = (0..100u64)
        .filter(|&seed| {
            let (vectors, exact) = &frames[seed as usize % frames.len()];
            let f = RealFrame::new(vectors.clone()).unwrap();
            mc_parallelotope_volume(&f, 20_000, seed).unwrap().brackets(*exact, 2.0)
        })
        .count();
    let mut orders = Vec::new();
    for g in [Geometry::spherical(1.0).unwrap(), Geometry::hyperbolic(1.0).unwrap()] {
        let exact = disk_area(&g, 1.0).unwrap();
        let err = |steps| (quadrature_disk_area(&g, 1.0, steps).unwrap() - exact).abs();
        orders.push((err(200) / err(400)).log2());
    }
    let order = orders.iter().cloned().fold(f64::INFINITY, f64::min);
    outcome(
        hits >= 95 && order >= 1.9,
        format!(
            "{hits}/100 runs within 2σ; quadrature order {:.3} (sphere), {:.3} (hyperboloid)",
            orders[0], orders[1]
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 earth example", earth_example),
        ("2 hyperbolic figure", hyperbolic_figure),
        ("3 proper spherical figure", proper_spherical_figure),
        ("4 trirectangular octant", octant),
        ("5 property suites", property_suites),
        ("6 small-triangle limit", small_triangles),
        ("7 R4 worked example", r4_example),
        ("8 Monte Carlo and quadrature calibration", calibration),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let o = check();
        failed += usize::from(!o.passed);
        println!("{} criterion {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
