//! Sparse multivariate polynomials over a [`Scalar`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};

/// Exponent multi-index; its length is the number of variables.
pub type Exponent = Vec<u32>;

pub fn total_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// `a!` for a multi-index.
pub fn multi_factorial<S: Scalar>(e: &[u32]) -> S {
    e.iter().fold(S::one(), |acc, &k| acc * S::factorial(k))
}

/// All exponents of total degree exactly `d` in `m` variables, ordered so that
/// `x1` precedes `x2` (`x1^2, x1 x2, x2^2, ...`).
pub fn monomials_of_degree(m: usize, d: u32) -> Vec<Exponent> {
    fn rec(m: usize, d: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == m {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(m, d - k, prefix, out);
            prefix.pop();
        }
    }
    if m == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(m, d, &mut Vec::with_capacity(m), &mut out);
    out
}

/// Graded basis of monomials of total degree `<= d`.
pub fn monomials_up_to(m: usize, d: u32) -> Vec<Exponent> {
    (0..=d).flat_map(|k| monomials_of_degree(m, k)).collect()
}

/// Binomial coefficient as usize.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, PartialEq)]
pub struct Polynomial<S> {
    nvars: usize,
    terms: BTreeMap<Exponent, S>,
}

impl<S: Scalar> fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest degree first reads naturally
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| total_degree(b.0).cmp(&total_degree(a.0)).then(b.0.cmp(a.0)));
        for (e, c) in terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, S::one())
    }

    /// The coordinate function `x_i` (zero based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, S::one())
    }

    pub fn monomial(exp: Exponent, c: S) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Polynomial { nvars, terms }
    }

    /// Sums repeated exponents and drops zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (Exponent, S)>>(nvars: usize, terms: I) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch {
                    context: "polynomial exponent",
                    expected: nvars,
                    found: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Linear form `sum c_i x_i + c0`.
    pub fn affine(coeffs: &[S], c0: S) -> Self {
        let n = coeffs.len();
        let mut p = Self::constant(n, c0);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &[u32]) -> S {
        self.terms.get(e).cloned().unwrap_or_else(S::zero)
    }

    /// Maximum total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    fn check_point(&self, x: &[S], context: &'static str) -> Result<()> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.nvars,
                found: x.len(),
            });
        }
        Ok(())
    }

    pub fn eval(&self, x: &[S]) -> Result<S> {
        self.check_point(x, "polynomial evaluation")?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[S]) -> S {
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    term *= xi.pow_n(k);
                }
            }
            acc += term;
        }
        acc
    }

    /// Evaluates at a floating point location regardless of the scalar type.
    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .fold(c.to_f64(), |acc, (&k, xi)| acc * xi.powi(k as i32))
            })
            .sum()
    }

    /// Partial derivative with respect to `x_var`.
    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c.clone() * S::from_i64(e[var] as i64));
        }
        out
    }

    /// The mixed partial `∂^a`.
    pub fn derivative(&self, a: &[u32]) -> Result<Self> {
        if a.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                context: "derivative multi-index",
                expected: self.nvars,
                found: a.len(),
            });
        }
        let mut out = Self::zero(self.nvars);
        'terms: for (e, c) in &self.terms {
            let mut coef = c.clone();
            let mut e2 = e.clone();
            for (i, &k) in a.iter().enumerate() {
                if e[i] < k {
                    continue 'terms;
                }
                for j in 0..k {
                    coef *= S::from_i64((e[i] - j) as i64);
                }
                e2[i] -= k;
            }
            out.add_term(e2, coef);
        }
        Ok(out)
    }

    /// Value of `∂^a p` at `x`; `a = 0` is plain evaluation.
    pub fn eval_deriv(&self, a: &[u32], x: &[S]) -> Result<S> {
        self.check_point(x, "derivative evaluation")?;
        Ok(self.derivative(a)?.eval_unchecked(x))
    }

    /// Substitutes polynomial `subs[i]` for `x_i`; all substitutes share a
    /// common number of variables.
    pub fn substitute(&self, subs: &[Polynomial<S>]) -> Result<Self> {
        if subs.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                context: "substitution",
                expected: self.nvars,
                found: subs.len(),
            });
        }
        let target = subs.first().map(|p| p.nvars).unwrap_or(0);
        // cache powers of each substitute
        let mut powers: Vec<Vec<Polynomial<S>>> = subs.iter().map(|s| vec![Self::one(s.nvars)]).collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &subs[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    term = &term * &powers[i][k as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `x ↦ p(x + c)`.
    pub fn shift(&self, c: &[S]) -> Result<Self> {
        self.check_point(c, "shift")?;
        let subs: Vec<_> = (0..self.nvars)
            .map(|i| &Self::var(self.nvars, i) + &Self::constant(self.nvars, c[i].clone()))
            .collect();
        self.substitute(&subs)
    }

    /// Drops all monomials of total degree above `deg`.
    pub fn truncate(&self, deg: u32) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) <= deg)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Appends `extra` new variables (all exponents zero in them).
    pub fn extend_vars(&self, extra: usize) -> Self {
        Polynomial {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.extend(std::iter::repeat_n(0, extra));
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Converts coefficients into another scalar type.
    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Polynomial<T> {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn to_f64(&self) -> Polynomial<f64> {
        self.map_scalar(|c| c.to_f64())
    }

    /// Divides by `x_var - root`: returns `(q, r)` with `p = (x_var - root) q + r`
    /// where `r` does not involve `x_var`.
    pub fn div_rem_linear(&self, var: usize, root: &S) -> (Self, Self) {
        // group by the exponents of the other variables
        let mut groups: BTreeMap<Exponent, BTreeMap<u32, S>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[var];
            rest[var] = 0;
            groups.entry(rest).or_default().insert(k, c.clone());
        }
        let mut q = Self::zero(self.nvars);
        let mut r = Self::zero(self.nvars);
        for (rest, coeffs) in groups {
            let top = *coeffs.keys().max().unwrap();
            // synthetic division from the top coefficient down
            let mut carry = S::zero();
            for k in (0..=top).rev() {
                let a = coeffs.get(&k).cloned().unwrap_or_else(S::zero) + carry.clone();
                if k == 0 {
                    let mut e = rest.clone();
                    e[var] = 0;
                    r.add_term(e, a);
                } else {
                    let mut e = rest.clone();
                    e[var] = k - 1;
                    q.add_term(e, a.clone());
                    carry = a * root.clone();
                }
            }
        }
        (q, r)
    }

    /// Coefficient vector with respect to a list of monomials; fails if the
    /// polynomial has a monomial outside the list.
    pub fn coords_in(&self, basis: &[Exponent]) -> Option<Vec<S>> {
        let v: Vec<S> = basis.iter().map(|e| self.coefficient(e)).collect();
        let covered = self.terms.keys().all(|e| basis.contains(e));
        covered.then_some(v)
    }

    pub fn from_coords(nvars: usize, basis: &[Exponent], coords: &[S]) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in basis.iter().zip(coords) {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    /// Coefficient-wise comparison with a tolerance.
    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        (self - other).terms.values().all(|c| c.is_negligible(tol))
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }
}

impl<S: Scalar> Add for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn add(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        assert_eq!(self.nvars, rhs.nvars, "adding polynomials in different rings");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn sub(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        assert_eq!(self.nvars, rhs.nvars, "subtracting polynomials in different rings");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn mul(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        assert_eq!(self.nvars, rhs.nvars, "multiplying polynomials in different rings");
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Add for Polynomial<S> {
    type Output = Polynomial<S>;
    fn add(self, rhs: Polynomial<S>) -> Polynomial<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for Polynomial<S> {
    type Output = Polynomial<S>;
    fn sub(self, rhs: Polynomial<S>) -> Polynomial<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for Polynomial<S> {
    type Output = Polynomial<S>;
    fn mul(self, rhs: Polynomial<S>) -> Polynomial<S> {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, Rational};

    type P = Polynomial<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn x1sq_x2() -> P {
        P::monomial(vec![2, 1], q(1))
    }

    #[test]
    fn eval_deriv_examples() {
        let p = x1sq_x2();
        assert_eq!(p.eval_deriv(&[0, 0], &[q(2), q(3)]).unwrap(), q(12));
        assert_eq!(p.eval_deriv(&[1, 1], &[q(1), q(1)]).unwrap(), q(2));
        assert_eq!(P::zero(2).eval_deriv(&[3, 1], &[q(5), q(-1)]).unwrap(), q(0));
        assert!(matches!(
            p.eval_deriv(&[0, 0], &[q(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(p.eval_deriv(&[1], &[q(1), q(1)]).is_err());
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(P::zero(3).degree(), None);
        assert_eq!(P::constant(3, q(0)).num_terms(), 0);
        assert_eq!(x1sq_x2().degree(), Some(3));
    }

    #[test]
    fn monomial_orderings() {
        assert_eq!(monomials_of_degree(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials_up_to(3, 3).len(), binomial(6, 3));
        assert_eq!(monomials_of_degree(0, 0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn shift_is_taylor_recentering() {
        // x^2 at 1: 1 + 2h + h^2
        let p = P::monomial(vec![2], q(1));
        let s = p.shift(&[q(1)]).unwrap();
        assert_eq!(s.coefficient(&[0]), q(1));
        assert_eq!(s.coefficient(&[1]), q(2));
        assert_eq!(s.coefficient(&[2]), q(1));
    }

    #[test]
    fn linear_division() {
        // t^3 - t = (t - 1)(t^2 + t)
        let t3 = P::monomial(vec![0, 3], q(1));
        let t = P::var(2, 1);
        let p = &t3 - &t;
        let (quo, rem) = p.div_rem_linear(1, &q(1));
        assert!(rem.is_zero());
        let back = &(&t - &P::one(2)) * &quo;
        assert_eq!(back, p);
        // remainder is the value at the root
        let x = P::var(2, 0);
        let (_, rem) = (&x * &t3).div_rem_linear(1, &q(2));
        assert_eq!(rem, x.scale(&q(8)));
    }

    #[test]
    fn substitution_composes() {
        // p(x, y) = x*y with x -> s + 1, y -> s - 1 gives s^2 - 1
        let p = P::monomial(vec![1, 1], q(1));
        let s = P::var(1, 0);
        let r = p.substitute(&[&s + &P::one(1), &s - &P::one(1)]).unwrap();
        assert_eq!(r, &s.pow(2) - &P::one(1));
    }
}
