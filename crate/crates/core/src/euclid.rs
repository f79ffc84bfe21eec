//! Plane results: the right triangle, the law of cosines and integer triples.

use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Integer side lengths `m1 <= m2 < m3` with `m1² + m2² = m3²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub m1: u64,
    pub m2: u64,
    pub m3: u64,
}

impl Triple {
    /// Returns `None` unless the three numbers form an ordered Pythagorean triple.
    pub fn new(m1: u64, m2: u64, m3: u64) -> Option<Self> {
        let t = Triple { m1, m2, m3 };
        t.is_valid().then_some(t)
    }

    /// Exact integer check of ordering and of `m1² + m2² = m3²`.
    pub fn is_valid(&self) -> bool {
        let (a, b, c) = (self.m1 as u128, self.m2 as u128, self.m3 as u128);
        a >= 1 && a <= b && b < c && a * a + b * b == c * c
    }
}

fn check_length(name: &str, x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return domain(format!("{name} must be finite and non-negative, got {x}"));
    }
    Ok(())
}

/// Hypotenuse of a right triangle with legs `b` and `c`.
pub fn pythagoras_hypotenuse(b: f64, c: f64) -> Result<f64> {
    check_length("b", b)?;
    check_length("c", c)?;
    Ok(b.hypot(c))
}

/// Side opposite the angle `theta` (radians, in `[0, π]`) between sides `b` and `c`.
pub fn law_of_cosines(b: f64, c: f64, theta: f64) -> Result<f64> {
    check_length("b", b)?;
    check_length("c", c)?;
    if !(0.0..=PI).contains(&theta) {
        return domain(format!("angle must lie in [0, π], got {theta}"));
    }
    // (b - c)² + 4bc·sin²(θ/2) avoids the cancellation of b² + c² - 2bc·cosθ
    // for small angles and is exact at θ = 0.
    let s = (0.5 * theta).sin();
    let sq = (b - c) * (b - c) + 4.0 * b * c * s * s;
    Ok(sq.max(0.0).sqrt())
}

/// All Pythagorean triples with hypotenuse at most `limit`, sorted
/// lexicographically. Non-primitive triples are included.
pub fn pythagorean_triples(limit: u64) -> Vec<Triple> {
    let mut out = Vec::new();
    for m1 in 1..=limit {
        for m2 in m1..=limit {
            let lhs = m1 as u128 * m1 as u128 + m2 as u128 * m2 as u128;
            if lhs > limit as u128 * limit as u128 {
                break;
            }
            for m3 in (m2 + 1)..=limit {
                let rhs = m3 as u128 * m3 as u128;
                if rhs == lhs {
                    out.push(Triple { m1, m2, m3 });
                }
                if rhs >= lhs {
                    break;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn classic_triples() {
        assert_eq!(pythagoras_hypotenuse(3.0, 4.0).unwrap(), 5.0);
        assert_eq!(pythagoras_hypotenuse(5.0, 12.0).unwrap(), 13.0);
        assert_eq!(pythagoras_hypotenuse(0.0, 7.5).unwrap(), 7.5);
    }

    #[test]
    fn rejects_bad_lengths() {
        assert!(pythagoras_hypotenuse(-1.0, 2.0).is_err());
        assert!(pythagoras_hypotenuse(1.0, f64::NAN).is_err());
        assert!(pythagoras_hypotenuse(f64::INFINITY, 1.0).is_err());
        assert!(law_of_cosines(1.0, 1.0, -0.1).is_err());
        assert!(law_of_cosines(1.0, 1.0, 3.2).is_err());
    }

    #[test]
    fn cosine_law_cases() {
        assert_relative_eq!(law_of_cosines(3.0, 4.0, FRAC_PI_2).unwrap(), 5.0, max_relative = 1e-15);
        assert_relative_eq!(law_of_cosines(1.0, 1.0, PI / 3.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(law_of_cosines(2.0, 7.0, PI).unwrap(), 9.0, max_relative = 1e-15);
        assert_eq!(law_of_cosines(2.0, 7.0, 0.0).unwrap(), 5.0);
    }

    #[test]
    fn triples_up_to_thirteen() {
        let brute: Vec<Triple> = (1..=13u64)
            .flat_map(|a| (a..=13).flat_map(move |b| (b + 1..=13).map(move |c| (a, b, c))))
            .filter(|&(a, b, c)| a * a + b * b == c * c)
            .map(|(m1, m2, m3)| Triple { m1, m2, m3 })
            .collect();
        assert_eq!(brute.len(), 3);
        assert_eq!(pythagorean_triples(13), brute);
        assert_eq!(
            pythagorean_triples(13),
            vec![Triple { m1: 3, m2: 4, m3: 5 }, Triple { m1: 5, m2: 12, m3: 13 }, Triple { m1: 6, m2: 8, m3: 10 },]
        );
    }

    #[test]
    fn small_limits() {
        assert!(pythagorean_triples(0).is_empty());
        assert!(pythagorean_triples(4).is_empty());
        assert_eq!(pythagorean_triples(5), vec![Triple { m1: 3, m2: 4, m3: 5 }]);
    }

    #[test]
    fn triple_constructor() {
        assert!(Triple::new(3, 4, 5).is_some());
        assert!(Triple::new(4, 3, 5).is_none());
        assert!(Triple::new(3, 4, 6).is_none());
    }

    #[test]
    fn brute_force_agrees_to_200() {
        let limit = 200u64;
        let mut brute = Vec::new();
        for a in 1..=limit {
            for b in a..=limit {
                for c in b + 1..=limit {
                    if a * a + b * b == c * c {
                        brute.push(Triple { m1: a, m2: b, m3: c });
                    }
                }
            }
        }
        let got = pythagorean_triples(limit);
        assert_eq!(got, brute);
        assert!(got.iter().all(Triple::is_valid));
        assert!(got.windows(2).all(|w| w[0] < w[1]));
    }
}
