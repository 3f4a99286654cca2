//! Grundmann–Möller cubature on the standard simplex, normalized to volume
//! one, with adaptive escalation of the polynomial degree.
//!
//! The rule with index `s` integrates polynomials of degree `2s + 1` exactly.
//! Points are given in barycentric coordinates.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::monomials_of_degree;
use crate::scalar::{Field, Rational, Scalar};

#[derive(Clone, Debug)]
pub struct SimplexRule {
    pub dim: usize,
    pub index: usize,
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl SimplexRule {
    pub fn degree(&self) -> usize {
        2 * self.index + 1
    }

    pub fn integrate<F>(&self, f: F) -> Vec<f64>
    where
        F: Fn(&[f64]) -> Vec<f64>,
    {
        let mut acc: Vec<f64> = Vec::new();
        for (p, w) in self.points.iter().zip(&self.weights) {
            let v = f(p);
            if acc.is_empty() {
                acc = vec![0.0; v.len()];
            }
            for (a, x) in acc.iter_mut().zip(v) {
                *a += w * x;
            }
        }
        acc
    }
}

/// The Grundmann–Möller rule of index `s` on the `n`-simplex.
pub fn grundmann_moller(n: usize, s: usize) -> SimplexRule {
    if n == 0 {
        return SimplexRule {
            dim: 0,
            index: s,
            points: vec![vec![1.0]],
            weights: vec![1.0],
        };
    }
    let d = 2 * s + 1;
    let n_fact: Rational = Scalar::factorial(n as u32);
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for i in 0..=s {
        let denom_pt = (d + n - 2 * i) as i64;
        // (-1)^i 2^{-2s} (d+n-2i)^d / (i! (d+n-i)!), times n! for unit volume
        let mut w = Rational::from_i64(denom_pt).pow_n(d as u32);
        w /= Rational::from_i64(2).pow_n(2 * s as u32);
        w /= <Rational as Scalar>::factorial(i as u32) * <Rational as Scalar>::factorial((d + n - i) as u32);
        w *= n_fact.clone();
        if i % 2 == 1 {
            w = -w;
        }
        let wf = w.to_f64();
        for beta in monomials_of_degree(n + 1, (s - i) as u32) {
            let p: Vec<f64> = beta
                .iter()
                .map(|&b| (2 * b as i64 + 1) as f64 / denom_pt as f64)
                .collect();
            points.push(p);
            weights.push(wf);
        }
    }
    SimplexRule {
        dim: n,
        index: s,
        points,
        weights,
    }
}

/// Outcome of an adaptive integration.
#[derive(Clone, Debug)]
pub struct AdaptiveResult {
    pub value: Vec<f64>,
    pub index: usize,
    pub change: f64,
}

/// Applies rules of increasing index until two consecutive results agree
/// within `tol` (relative to `max(1, |value|)`), up to `max_index`.
pub fn integrate_adaptive<F>(n: usize, tol: f64, max_index: usize, f: F) -> Result<AdaptiveResult>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    if n == 0 {
        let value = grundmann_moller(0, 0).integrate(&f);
        return Ok(AdaptiveResult {
            value,
            index: 0,
            change: 0.0,
        });
    }
    let mut prev = grundmann_moller(n, 0).integrate(&f);
    let mut change = f64::INFINITY;
    for s in 1..=max_index {
        let cur = grundmann_moller(n, s).integrate(&f);
        let scale = cur.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        change = cur.iter().zip(&prev).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if change <= tol * scale {
            return Ok(AdaptiveResult {
                value: cur,
                index: s,
                change,
            });
        }
        prev = cur;
    }
    Err(Error::QuadratureNotConverged { tol, change })
}

/// `∫ t_0^{a_0} ... t_n^{a_n}` over the unit-volume `n`-simplex in
/// barycentric coordinates: `n! a_0! ... a_n! / (n + |a|)!`.
pub fn barycentric_moment(a: &[u32]) -> Rational {
    let n = a.len().saturating_sub(1) as u32;
    let total: u32 = a.iter().sum();
    let mut num: Rational = Scalar::factorial(n);
    for &k in a {
        num *= <Rational as Scalar>::factorial(k);
    }
    let den: Rational = Scalar::factorial(n + total);
    if den.is_zero() {
        return Rational::one();
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_unit_volume() {
        for n in 1..=4 {
            for s in 0..=6 {
                let rule = grundmann_moller(n, s);
                let total: f64 = rule.weights.iter().sum();
                assert!((total - 1.0).abs() < 1e-11, "n={n} s={s} total={total}");
                for p in &rule.points {
                    assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn exact_up_to_rule_degree() {
        for n in 1..=3usize {
            for s in 0..=4usize {
                let rule = grundmann_moller(n, s);
                for deg in 0..=rule.degree() as u32 {
                    for a in monomials_of_degree(n + 1, deg) {
                        let got =
                            rule.integrate(|t| vec![t.iter().zip(&a).map(|(x, &k)| x.powi(k as i32)).product()])[0];
                        let want = barycentric_moment(&a).to_f64();
                        assert!((got - want).abs() < 1e-12, "n={n} s={s} a={a:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn adaptive_converges_on_smooth_integrand() {
        // ∫ exp(t_1) over the unit-volume segment is e - 1
        let r = integrate_adaptive(1, 1e-12, 20, |t| vec![t[1].exp()]).unwrap();
        assert!((r.value[0] - (std::f64::consts::E - 1.0)).abs() < 1e-11);
    }

    #[test]
    fn moment_formula_small_cases() {
        // ∫_0^1 t dt over the unit segment is 1/2; the 2-simplex area-one moment of t_1 is 1/3
        assert_eq!(barycentric_moment(&[0, 1]), Rational::from_ratio(1, 2));
        assert_eq!(barycentric_moment(&[0, 1, 0]), Rational::from_ratio(1, 3));
        assert_eq!(barycentric_moment(&[0, 0, 0]), Rational::from_i64(1));
    }
}
