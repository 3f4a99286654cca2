//! Reference values computed without the simplex machinery: closed forms for
//! exponential sums and recursive divided difference tables.

use num_complex::Complex64;

use crate::path::PathFunction;
use crate::poly::{Exponent, Polynomial};
use crate::scalar::{Rational, Scalar};
use crate::simplex::BlackBox;

/// `f(x) = Re sum_j w_j exp(c_j · x)` with complex weights and frequencies.
#[derive(Clone, Debug)]
pub struct ExpSum {
    pub terms: Vec<(Complex64, Vec<Complex64>)>,
}

impl ExpSum {
    fn phase(c: &[Complex64], x: &[f64]) -> Complex64 {
        c.iter().zip(x).map(|(ci, xi)| ci * xi).sum::<Complex64>().exp()
    }
}

fn power(c: &[Complex64], a: &[u32]) -> Complex64 {
    c.iter().zip(a).map(|(ci, &k)| ci.powu(k)).product()
}

impl BlackBox for ExpSum {
    fn dim(&self) -> usize {
        self.terms[0].1.len()
    }

    fn max_order(&self) -> usize {
        usize::MAX
    }

    fn partial(&self, a: &[u32], x: &[f64]) -> Vec<f64> {
        let v: Complex64 = self
            .terms
            .iter()
            .map(|(w, c)| w * power(c, a) * Self::phase(c, x))
            .sum();
        vec![v.re]
    }
}

/// Divided difference of `exp` at complex nodes (repeats allowed), summed
/// from `exp[z_0..z_r] = sum_n h_n(z_0..z_r) / (n + r)!` with `h_n` the
/// complete homogeneous symmetric polynomials.
pub fn exp_divided_difference(z: &[Complex64]) -> Complex64 {
    let r = z.len() - 1;
    let radius = z.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let terms = 40 + (4.0 * radius) as usize;
    // h[n] over the nodes seen so far
    let mut h = vec![Complex64::new(0.0, 0.0); terms];
    h[0] = Complex64::new(1.0, 0.0);
    for zi in z {
        for n in 1..terms {
            let prev = h[n - 1];
            h[n] += zi * prev;
        }
    }
    let mut inv_fact = 1.0;
    for k in 1..=r {
        inv_fact /= k as f64;
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for (n, hn) in h.iter().enumerate() {
        sum += hn * inv_fact;
        inv_fact /= (n + r + 1) as f64;
    }
    sum
}

/// Entries `(a, value)` of `I(f, [x_0..x_r])` for an exponential sum:
/// `Re sum_j w_j c_j^a r! exp[c_j·x_0, ..., c_j·x_r]`.
pub fn exp_sum_simplex_integral(f: &ExpSum, vertices: &[Vec<f64>], entries: &[Exponent]) -> Vec<f64> {
    let r = vertices.len() - 1;
    let fact: f64 = (1..=r).map(|k| k as f64).product();
    entries
        .iter()
        .map(|a| {
            f.terms
                .iter()
                .map(|(w, c)| {
                    let nodes: Vec<Complex64> = vertices
                        .iter()
                        .map(|x| c.iter().zip(x).map(|(ci, xi)| ci * xi).sum())
                        .collect();
                    w * power(c, a) * exp_divided_difference(&nodes) * fact
                })
                .sum::<Complex64>()
                .re
        })
        .collect()
}

/// Confluent divided difference `f[y_0..y_k]` of a univariate polynomial by
/// the recursive table; repeated nodes use `f^(k)(y) / k!`.
pub fn divided_difference(f: &Polynomial<Rational>, nodes: &[Rational]) -> Rational {
    let mut sorted = nodes.to_vec();
    sorted.sort();
    table(f, &sorted)
}

fn table(f: &Polynomial<Rational>, y: &[Rational]) -> Rational {
    let k = y.len() - 1;
    let (first, last) = (&y[0], &y[k]);
    if first == last {
        let d = f.derivative(&[k as u32]).expect("univariate");
        return d.eval(std::slice::from_ref(first)).expect("univariate") / Rational::factorial(k as u32);
    }
    (table(f, &y[1..]) - table(f, &y[..k])) / (last.clone() - first.clone())
}

/// A time path `f(x, t) = Re sum_j w_j exp(a_j · x + b_j t)`.
#[derive(Clone, Debug)]
pub struct ExpPath {
    pub terms: Vec<(Complex64, Vec<Complex64>, Complex64)>,
}

impl ExpPath {
    pub fn value(&self, x: &[f64], t: f64) -> f64 {
        self.t_jet(x, t, 0)[0]
    }
}

impl PathFunction for ExpPath {
    fn dim(&self) -> usize {
        self.terms[0].1.len()
    }

    fn max_t_order(&self) -> u32 {
        u32::MAX
    }

    fn t_jet(&self, x: &[f64], t: f64, order: u32) -> Vec<f64> {
        let mut out = vec![0.0; order as usize + 1];
        for (w, a, b) in &self.terms {
            let base = w * (a.iter().zip(x).map(|(ai, xi)| ai * xi).sum::<Complex64>() + b * t).exp();
            let mut coeff = base;
            for (k, slot) in out.iter_mut().enumerate() {
                *slot += coeff.re;
                coeff = coeff * b / (k + 1) as f64;
            }
        }
        out
    }
}

/// `n` nodes evenly spaced on `[a, b]`.
pub fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn exp_divided_difference_small_cases() {
        let one = |v: f64| Complex64::new(v, 0.0);
        assert!((exp_divided_difference(&[one(0.3)]) - one(0.3f64.exp())).norm() < 1e-15);
        let dd = (1.0f64.exp() - 1.0) / 1.0;
        assert!((exp_divided_difference(&[one(0.0), one(1.0)]) - one(dd)).norm() < 1e-14);
        // confluent pair is the derivative
        assert!((exp_divided_difference(&[one(2.0), one(2.0)]) - one(2.0f64.exp())).norm() < 1e-13);
    }

    #[test]
    fn divided_difference_table() {
        let q = |v: i64| Rational::from_i64(v);
        let cube = Polynomial::monomial(vec![3], q(1));
        assert_eq!(divided_difference(&cube, &[q(0), q(1), q(2)]), q(3));
        assert_eq!(divided_difference(&cube, &[q(1), q(1)]), q(3));
        assert_eq!(divided_difference(&cube, &[q(2), q(0), q(2), q(0)]), q(1));
        assert_eq!(divided_difference(&cube, &[q(2), q(0), q(2)]), q(4));
    }
}
