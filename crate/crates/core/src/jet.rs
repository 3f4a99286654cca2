//! Jets: truncated Taylor expansions living in the truncated polynomial
//! algebra at a base point.
//!
//! A jet of order `k` at `y` stores the polynomial `sum_a c_a h^a` in the local
//! coordinate `h = x - y`, with `|a| <= k` and `c_a = ∂^a f(y) / a!`. With this
//! indexing jet multiplication is truncated polynomial multiplication.

use crate::error::{Error, Result};
use crate::poly::{Exponent, Polynomial};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Jet<S: Scalar> {
    base: Vec<S>,
    order: u32,
    local: Polynomial<S>,
}

impl<S: Scalar> Jet<S> {
    /// Wraps a polynomial in the local coordinate `x - base`, truncating it.
    pub fn from_local(base: Vec<S>, order: u32, local: Polynomial<S>) -> Result<Self> {
        if local.nvars() != base.len() {
            return Err(Error::DimensionMismatch {
                context: "jet coefficients",
                expected: base.len(),
                found: local.nvars(),
            });
        }
        Ok(Jet {
            local: local.truncate(order),
            base,
            order,
        })
    }

    pub fn zero(base: Vec<S>, order: u32) -> Self {
        let m = base.len();
        Jet {
            base,
            order,
            local: Polynomial::zero(m),
        }
    }

    pub fn constant(base: Vec<S>, order: u32, c: S) -> Self {
        let m = base.len();
        Jet {
            base,
            order,
            local: Polynomial::constant(m, c),
        }
    }

    pub fn one(base: Vec<S>, order: u32) -> Self {
        Self::constant(base, order, S::one())
    }

    pub fn base(&self) -> &[S] {
        &self.base
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    /// The truncated polynomial in `h = x - base`.
    pub fn local(&self) -> &Polynomial<S> {
        &self.local
    }

    /// Taylor coefficient `∂^a f(y) / a!`.
    pub fn coefficient(&self, a: &[u32]) -> S {
        self.local.coefficient(a)
    }

    pub fn constant_term(&self) -> S {
        self.local.coefficient(&vec![0; self.dim()])
    }

    pub fn is_zero(&self) -> bool {
        self.local.is_zero()
    }

    /// The Taylor polynomial re-expressed in global coordinates `x`.
    pub fn to_global(&self) -> Polynomial<S> {
        let neg: Vec<S> = self.base.iter().map(|c| -c.clone()).collect();
        self.local.shift(&neg).expect("base has the jet dimension")
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.base != other.base || self.order != other.order {
            return Err(Error::JetMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Jet {
            base: self.base.clone(),
            order: self.order,
            local: &self.local + &other.local,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Jet {
            base: self.base.clone(),
            order: self.order,
            local: &self.local - &other.local,
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        Jet {
            base: self.base.clone(),
            order: self.order,
            local: self.local.scale(c),
        }
    }

    /// Truncated product in the jet algebra.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        // truncate during the product instead of after it
        let mut terms: Vec<(Exponent, S)> = Vec::new();
        for (e1, c1) in self.local.terms() {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in other.local.terms() {
                let d2: u32 = e2.iter().sum();
                if d1 + d2 > self.order {
                    continue;
                }
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                terms.push((e, c1.clone() * c2.clone()));
            }
        }
        Jet {
            base: self.base.clone(),
            order: self.order,
            local: Polynomial::from_terms(self.dim(), terms).expect("matching dimensions"),
        }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let c0_inv = c0.inv();
        // self = c0 (1 + n) with n nilpotent, so 1/self = c0^-1 sum (-n)^k
        let n = Jet {
            base: self.base.clone(),
            order: self.order,
            local: &self.local.scale(&c0_inv) - &Polynomial::one(self.dim()),
        };
        let neg_n = n.scale(&-S::one());
        let mut acc = Self::one(self.base.clone(), self.order);
        let mut power = Self::one(self.base.clone(), self.order);
        for _ in 0..self.order {
            power = power.mul_unchecked(&neg_n);
            if power.is_zero() {
                break;
            }
            acc.local = &acc.local + &power.local;
        }
        Ok(acc.scale(&c0_inv))
    }

    /// Composes an outer univariate series with this jet: given the Taylor
    /// coefficients `g_k = g^(k)(c)/k!` at `c = self.constant_term()`, returns
    /// the jet of `g ∘ self`. Coefficients beyond the jet order are ignored.
    pub fn compose_outer(&self, outer: &[S]) -> Self {
        let c0 = self.constant_term();
        let mut n = self.clone();
        n.local = &n.local - &Polynomial::constant(self.dim(), c0);
        let mut acc = Self::zero(self.base.clone(), self.order);
        let mut power = Self::one(self.base.clone(), self.order);
        for (k, g) in outer.iter().enumerate() {
            if k > 0 {
                power = power.mul_unchecked(&n);
            }
            if power.is_zero() {
                break;
            }
            acc.local = &acc.local + &power.local.scale(g);
        }
        acc
    }
}

impl Jet<f64> {
    /// `exp` in the truncated algebra.
    pub fn exp(&self) -> Self {
        let c = self.constant_term().exp();
        let mut outer = Vec::with_capacity(self.order as usize + 1);
        let mut fact = 1.0;
        for k in 0..=self.order {
            if k > 0 {
                fact *= k as f64;
            }
            outer.push(c / fact);
        }
        self.compose_outer(&outer)
    }
}

/// The jet `j^order_y p`: Taylor expansion of `p` at `y` truncated at total
/// degree `order`.
pub fn jet_of<S: Scalar>(p: &Polynomial<S>, y: &[S], order: u32) -> Result<Jet<S>> {
    if y.len() != p.nvars() {
        return Err(Error::DimensionMismatch {
            context: "jet base point",
            expected: p.nvars(),
            found: y.len(),
        });
    }
    let local = p.shift(y)?.truncate(order);
    Ok(Jet {
        base: y.to_vec(),
        order,
        local,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, Rational};

    type P = Polynomial<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn t_jet(coeffs: &[i64], order: u32) -> Jet<Rational> {
        let local = P::from_terms(1, coeffs.iter().enumerate().map(|(k, &c)| (vec![k as u32], q(c)))).unwrap();
        Jet::from_local(vec![q(0)], order, local).unwrap()
    }

    #[test]
    fn jet_of_examples() {
        let x2 = P::monomial(vec![2], q(1));
        let j = jet_of(&x2, &[q(1)], 2).unwrap();
        assert_eq!(j, t_jet(&[1, 2, 1], 2).rebased(vec![q(1)]));
        let x3 = P::monomial(vec![3], q(1));
        assert!(jet_of(&x3, &[q(0)], 2).unwrap().is_zero());
        let x1x2 = P::monomial(vec![1, 1], q(1));
        let j = jet_of(&x1x2, &[q(1), q(1)], 1).unwrap();
        assert_eq!(j.coefficient(&[0, 0]), q(1));
        assert_eq!(j.coefficient(&[1, 0]), q(1));
        assert_eq!(j.coefficient(&[0, 1]), q(1));
        assert_eq!(j.local().num_terms(), 3);
        assert!(jet_of(&x1x2, &[q(1)], 1).is_err());
    }

    #[test]
    fn mul_examples() {
        let a = t_jet(&[1, 1], 1);
        let b = t_jet(&[1, -1], 1);
        assert_eq!(a.mul(&b).unwrap(), t_jet(&[1], 1));
        let a = t_jet(&[1, 1], 2);
        let b = t_jet(&[1, -1], 2);
        assert_eq!(a.mul(&b).unwrap(), t_jet(&[1, 0, -1], 2));
        let t = t_jet(&[0, 1], 1);
        assert!(t.mul(&t).unwrap().is_zero());
        assert_eq!(a.mul(&t_jet(&[1], 1)), Err(Error::JetMismatch));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(t_jet(&[1, -1], 2).invert().unwrap(), t_jet(&[1, 1, 1], 2));
        let two = t_jet(&[2], 3);
        assert_eq!(
            two.invert().unwrap(),
            Jet::constant(vec![q(0)], 3, Rational::from_ratio(1, 2))
        );
        assert_eq!(t_jet(&[0, 1], 2).invert(), Err(Error::NotInvertible));
    }

    #[test]
    fn global_form_recovers_taylor_polynomial() {
        let p = P::from_terms(2, vec![(vec![1, 0], q(3)), (vec![0, 2], q(-2)), (vec![0, 0], q(5))]).unwrap();
        let j = jet_of(&p, &[q(2), q(-1)], 2).unwrap();
        assert_eq!(j.to_global(), p);
    }

    #[test]
    fn float_exp_jet() {
        // exp(t) around t = 0.5 has all Taylor coefficients e^0.5 / k!
        let j = Jet::from_local(
            vec![0.5],
            4,
            Polynomial::from_terms(1, vec![(vec![0], 0.5), (vec![1], 1.0)]).unwrap(),
        )
        .unwrap()
        .exp();
        let e = 0.5f64.exp();
        assert!((j.coefficient(&[0]) - e).abs() < 1e-15);
        assert!((j.coefficient(&[3]) - e / 6.0).abs() < 1e-15);
    }

    impl Jet<Rational> {
        fn rebased(mut self, base: Vec<Rational>) -> Self {
            self.base = base;
            self
        }
    }
}
