//! Paths of functions `f(x, t)`, `t ∈ [0, 1]`, and the operators on them:
//! the splitting `p` with `t (t - 1) p(f) = f - (1 - t) f(., 0) - t f(., 1)`,
//! reparametrization, reversal and smoothed concatenation.
//!
//! Polynomial paths are kept symbolic as long as the operation allows it.
//! Everything else is evaluated through Taylor jets in `t`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::poly::Polynomial;
use crate::scalar::{Scalar, Tolerance};

/// A smooth function of `(x, t)` known through its `t`-jets.
pub trait PathFunction: Send + Sync {
    fn dim(&self) -> usize;

    /// Highest `t`-derivative available.
    fn max_t_order(&self) -> u32;

    /// Taylor coefficients of `h ↦ f(x, t + h)` up to `order`.
    fn t_jet(&self, x: &[f64], t: f64, order: u32) -> Vec<f64>;
}

/// A smooth map `[0, 1] -> [0, 1]` known through its jets.
pub trait TimeProfile: Send + Sync {
    /// Taylor coefficients of `h ↦ λ(t + h)` up to `order`.
    fn jet(&self, t: f64, order: u32) -> Vec<f64>;

    fn eval(&self, t: f64) -> f64 {
        self.jet(t, 0)[0]
    }
}

/// An element of `C^∞(R^m × [0, 1])`: symbolic polynomial in `(x_1..x_m, t)`
/// with `t` the last variable, or a function.
#[derive(Clone)]
pub enum TimePath<S: Scalar> {
    Polynomial(Polynomial<S>),
    Function(Arc<dyn PathFunction>),
}

impl<S: Scalar> fmt::Debug for TimePath<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimePath::Polynomial(p) => write!(f, "TimePath({p})"),
            TimePath::Function(g) => write!(f, "TimePath(<function, m={}>)", g.dim()),
        }
    }
}

fn taylor_shift_1d(coeffs: &[f64], t: f64, order: u32) -> Vec<f64> {
    // Taylor coefficients at t of the polynomial sum c_k s^k
    let mut out = Vec::with_capacity(order as usize + 1);
    let mut d: Vec<f64> = coeffs.to_vec();
    let mut fact = 1.0;
    for k in 0..=order {
        if k > 0 {
            fact *= k as f64;
            d = d.iter().enumerate().skip(1).map(|(j, c)| c * j as f64).collect();
        }
        let v = d.iter().rev().fold(0.0, |acc, c| acc * t + c);
        out.push(v / fact);
    }
    out
}

impl<S: Scalar> TimePath<S> {
    /// A polynomial path; `p` has `m + 1` variables with `t` last.
    pub fn polynomial(p: Polynomial<S>) -> Result<Self> {
        if p.nvars() == 0 {
            return Err(Error::InvalidInput("a time path needs the t variable".into()));
        }
        Ok(TimePath::Polynomial(p))
    }

    pub fn function(f: impl PathFunction + 'static) -> Self {
        TimePath::Function(Arc::new(f))
    }

    /// The path constant in `t`.
    pub fn constant(p: &Polynomial<S>) -> Self {
        TimePath::Polynomial(p.extend_vars(1))
    }

    pub fn dim(&self) -> usize {
        match self {
            TimePath::Polynomial(p) => p.nvars() - 1,
            TimePath::Function(f) => f.dim(),
        }
    }

    pub fn max_t_order(&self) -> u32 {
        match self {
            TimePath::Polynomial(_) => u32::MAX,
            TimePath::Function(f) => f.max_t_order(),
        }
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial<S>> {
        match self {
            TimePath::Polynomial(p) => Some(p),
            TimePath::Function(_) => None,
        }
    }

    pub fn t_jet(&self, x: &[f64], t: f64, order: u32) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                context: "path evaluation point",
                expected: self.dim(),
                found: x.len(),
            });
        }
        match self {
            TimePath::Polynomial(p) => {
                let deg = p.degree_in(self.dim()).unwrap_or(0) as usize;
                let mut coeffs = vec![0.0; deg + 1];
                for (e, c) in p.terms() {
                    let v = e[..self.dim()]
                        .iter()
                        .zip(x)
                        .fold(c.to_f64(), |acc, (&k, xi)| acc * xi.powi(k as i32));
                    coeffs[e[self.dim()] as usize] += v;
                }
                Ok(taylor_shift_1d(&coeffs, t, order))
            }
            TimePath::Function(f) => {
                if order > f.max_t_order() {
                    return Err(Error::InsufficientDerivatives {
                        needed: order as usize,
                        available: f.max_t_order() as usize,
                    });
                }
                Ok(f.t_jet(x, t, order))
            }
        }
    }

    pub fn eval(&self, x: &[f64], t: f64) -> Result<f64> {
        Ok(self.t_jet(x, t, 0)?[0])
    }

    /// `f(., end)` as a polynomial in `x`, for polynomial paths.
    pub fn endpoint_polynomial(&self, end: &S) -> Option<Polynomial<S>> {
        let p = self.as_polynomial()?;
        let m = self.dim();
        let mut subs: Vec<Polynomial<S>> = (0..m).map(|i| Polynomial::var(m, i)).collect();
        subs.push(Polynomial::constant(m, end.clone()));
        Some(p.substitute(&subs).expect("matching variables"))
    }

    fn to_function(&self) -> Arc<dyn PathFunction> {
        match self {
            TimePath::Function(f) => f.clone(),
            TimePath::Polynomial(_) => Arc::new(AsFunction(self.clone())),
        }
    }
}

struct AsFunction<S: Scalar>(TimePath<S>);

impl<S: Scalar> PathFunction for AsFunction<S> {
    fn dim(&self) -> usize {
        self.0.dim()
    }
    fn max_t_order(&self) -> u32 {
        u32::MAX
    }
    fn t_jet(&self, x: &[f64], t: f64, order: u32) -> Vec<f64> {
        self.0
            .t_jet(x, t, order)
            .expect("polynomial paths have every derivative")
    }
}

/// Smooth nondecreasing `λ: [0, 1] -> [0, 1]`, zero on `[0, ε]` and one on
/// `[1 - ε, 1]`, built from `ψ(s) = exp(-1/s)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BumpProfile {
    eps: f64,
}

impl BumpProfile {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 0.5) {
            return Err(Error::InvalidInput(format!(
                "flatness radius {eps} must lie in (0, 1/2)"
            )));
        }
        Ok(BumpProfile { eps })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// The smallest `t` with `λ(t) = v`, by bisection.
    pub fn inverse(&self, v: f64) -> f64 {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.eval(mid) < v {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-17 {
                break;
            }
        }
        hi
    }
}

fn psi_jet(s: &Jet<f64>) -> Jet<f64> {
    if s.constant_term() <= 0.0 {
        return Jet::zero(s.base().to_vec(), s.order());
    }
    s.invert().expect("positive").scale(&-1.0).exp()
}

impl TimeProfile for BumpProfile {
    fn jet(&self, t: f64, order: u32) -> Vec<f64> {
        let w = 1.0 - 2.0 * self.eps;
        let u = (t - self.eps) / w;
        let mut out = vec![0.0; order as usize + 1];
        if u <= 0.0 {
            return out;
        }
        if u >= 1.0 {
            out[0] = 1.0;
            return out;
        }
        let h = |c0: f64, c1: f64| {
            Jet::from_local(
                vec![t],
                order,
                Polynomial::from_terms(1, vec![(vec![0], c0), (vec![1], c1)]).expect("one variable"),
            )
            .expect("one variable")
        };
        let a = psi_jet(&h(u, 1.0 / w));
        let b = psi_jet(&h(1.0 - u, -1.0 / w));
        let s = a
            .mul(&a.add(&b).expect("same base").invert().expect("positive"))
            .expect("same base");
        for (k, o) in out.iter_mut().enumerate() {
            *o = s.coefficient(&[k as u32]);
        }
        out
    }
}

/// A polynomial time change `λ(t)` in one variable.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialProfile(pub Polynomial<f64>);

impl TimeProfile for PolynomialProfile {
    fn jet(&self, t: f64, order: u32) -> Vec<f64> {
        let deg = self.0.degree().unwrap_or(0) as usize;
        let mut coeffs = vec![0.0; deg + 1];
        for (e, c) in self.0.terms() {
            coeffs[e[0] as usize] += c;
        }
        taylor_shift_1d(&coeffs, t, order)
    }
}

/// A path with no spatial variables, used as a time change.
pub struct PathProfile<S: Scalar>(pub TimePath<S>);

impl<S: Scalar> TimeProfile for PathProfile<S> {
    fn jet(&self, t: f64, order: u32) -> Vec<f64> {
        self.0
            .t_jet(&[], t, order)
            .expect("time changes are paths over a point")
    }
}

/// A reparametrization `λ: [0, 1] -> [0, 1]`.
#[derive(Clone)]
pub enum TimeChange<S: Scalar> {
    Polynomial(Polynomial<S>),
    Profile(Arc<dyn TimeProfile>),
}

impl<S: Scalar> TimeChange<S> {
    pub fn identity() -> Self {
        TimeChange::Polynomial(Polynomial::var(1, 0))
    }

    /// `t ↦ 1 - t`.
    pub fn reversal() -> Self {
        TimeChange::Polynomial(Polynomial::affine(&[-S::one()], S::one()))
    }

    pub fn profile(p: impl TimeProfile + 'static) -> Self {
        TimeChange::Profile(Arc::new(p))
    }

    /// Uses a path over a point as a time change.
    pub fn from_path(path: TimePath<S>) -> Result<Self> {
        if path.dim() != 0 {
            return Err(Error::DimensionMismatch {
                context: "time change path",
                expected: 0,
                found: path.dim(),
            });
        }
        Ok(match path {
            TimePath::Polynomial(p) => TimeChange::Polynomial(p),
            other => TimeChange::Profile(Arc::new(PathProfile(other))),
        })
    }

    pub fn jet(&self, t: f64, order: u32) -> Vec<f64> {
        match self {
            TimeChange::Polynomial(p) => PolynomialProfile(p.to_f64()).jet(t, order),
            TimeChange::Profile(p) => p.jet(t, order),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.jet(t, 0)[0]
    }
}

/// Composes an outer `t`-jet at `λ(t)` with the jet of `λ` at `t`.
fn compose_jets(inner: &[f64], t: f64, outer: &[f64]) -> Vec<f64> {
    let order = inner.len() as u32 - 1;
    let local =
        Polynomial::from_terms(1, inner.iter().enumerate().map(|(k, c)| (vec![k as u32], *c))).expect("one variable");
    let j = Jet::from_local(vec![t], order, local)
        .expect("one variable")
        .compose_outer(outer);
    (0..=order).map(|k| j.coefficient(&[k])).collect()
}

struct Reparametrized {
    change: Arc<dyn Fn(f64, u32) -> Vec<f64> + Send + Sync>,
    path: Arc<dyn PathFunction>,
}

impl PathFunction for Reparametrized {
    fn dim(&self) -> usize {
        self.path.dim()
    }
    fn max_t_order(&self) -> u32 {
        self.path.max_t_order()
    }
    fn t_jet(&self, x: &[f64], t: f64, order: u32) -> Vec<f64> {
        let inner = (self.change)(t, order);
        let outer = self.path.t_jet(x, inner[0], order);
        compose_jets(&inner, t, &outer)
    }
}

/// `(x, t) ↦ f(x, λ(t))`. Symbolic when both are polynomial.
pub fn reparametrize<S: Scalar>(change: &TimeChange<S>, f: &TimePath<S>) -> TimePath<S> {
    if let (TimeChange::Polynomial(l), TimePath::Polynomial(p)) = (change, f) {
        let m = f.dim();
        let t = Polynomial::var(m + 1, m);
        let mut subs: Vec<Polynomial<S>> = (0..m).map(|i| Polynomial::var(m + 1, i)).collect();
        subs.push(l.substitute(&[t]).expect("one variable"));
        return TimePath::Polynomial(p.substitute(&subs).expect("matching variables"));
    }
    let change = change.clone();
    TimePath::Function(Arc::new(Reparametrized {
        change: Arc::new(move |t, order| change.jet(t, order)),
        path: f.to_function(),
    }))
}

/// `ι f = (x, t) ↦ f(x, 1 - t)`.
pub fn reverse_iota<S: Scalar>(f: &TimePath<S>) -> TimePath<S> {
    reparametrize(&TimeChange::reversal(), f)
}

/// Sample points used to compare path endpoints of function paths.
pub fn probe_points(m: usize) -> Vec<Vec<f64>> {
    (0..9)
        .map(|j| (0..m).map(|k| ((j * (k + 2)) as f64 * 0.7).sin()).collect())
        .collect()
}

fn check_endpoints<S: Scalar>(a: &TimePath<S>, b: &TimePath<S>, junction: usize, tol: Tolerance) -> Result<()> {
    if let (Some(end), Some(start)) = (a.endpoint_polynomial(&S::one()), b.endpoint_polynomial(&S::zero())) {
        if end.approx_eq(&start, tol) {
            return Ok(());
        }
        return Err(Error::EndpointMismatch(junction));
    }
    for x in probe_points(a.dim()) {
        let diff = a.eval(&x, 1.0)? - b.eval(&x, 0.0)?;
        if diff.abs() > tol.value().max(1e-12) {
            return Err(Error::EndpointMismatch(junction));
        }
    }
    Ok(())
}

struct Concatenation {
    dim: usize,
    pieces: Vec<Arc<dyn PathFunction>>,
    breaks: Vec<f64>,
    profiles: Vec<BumpProfile>,
}

impl PathFunction for Concatenation {
    fn dim(&self) -> usize {
        self.dim
    }
    fn max_t_order(&self) -> u32 {
        self.pieces.iter().map(|p| p.max_t_order()).min().unwrap_or(0)
    }
    fn t_jet(&self, x: &[f64], t: f64, order: u32) -> Vec<f64> {
        let n = self.pieces.len();
        let i = (1..=n).find(|&i| t <= self.breaks[i]).unwrap_or(n) - 1;
        let (a, b) = (self.breaks[i], self.breaks[i + 1]);
        // u = (t - a) / (b - a), then λ_i(u), then the piece
        let scale = 1.0 / (b - a);
        let mut inner = self.profiles[i].jet((t - a) * scale, order);
        let mut f = 1.0;
        for c in inner.iter_mut() {
            *c *= f;
            f *= scale;
        }
        let outer = self.pieces[i].t_jet(x, inner[0], order);
        compose_jets(&inner, t, &outer)
    }
}

/// `μ_n(f_1, ..., f_n)`: piece `i` is `f_i(x, λ_i((t - s_{i-1}) / (s_i - s_{i-1})))`
/// on `[s_{i-1}, s_i]`.
pub fn concat_mu<S: Scalar>(
    paths: &[TimePath<S>],
    breakpoints: &[f64],
    profiles: &[BumpProfile],
    tol: Tolerance,
) -> Result<TimePath<S>> {
    let n = paths.len();
    if n == 0 {
        return Err(Error::InvalidInput("nothing to concatenate".into()));
    }
    if breakpoints.len() != n + 1 || profiles.len() != n {
        return Err(Error::InvalidBreakpoints(format!(
            "{n} paths need {} breakpoints and {n} profiles",
            n + 1
        )));
    }
    if breakpoints[0] != 0.0 || breakpoints[n] != 1.0 || breakpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidBreakpoints(format!(
            "{breakpoints:?} must increase strictly from 0 to 1"
        )));
    }
    let dim = paths[0].dim();
    if let Some(p) = paths.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch {
            context: "concatenated path",
            expected: dim,
            found: p.dim(),
        });
    }
    for (i, w) in paths.windows(2).enumerate() {
        check_endpoints(&w[0], &w[1], i + 1, tol)?;
    }
    Ok(TimePath::Function(Arc::new(Concatenation {
        dim,
        pieces: paths.iter().map(|p| p.to_function()).collect(),
        breaks: breakpoints.to_vec(),
        profiles: profiles.to_vec(),
    })))
}

/// `μ_2(f, g)` with the midpoint break and one profile for both halves.
pub fn concat2<S: Scalar>(
    f: &TimePath<S>,
    g: &TimePath<S>,
    profile: BumpProfile,
    tol: Tolerance,
) -> Result<TimePath<S>> {
    concat_mu(&[f.clone(), g.clone()], &[0.0, 0.5, 1.0], &[profile, profile], tol)
}

/// The time change `τ` with `μ_2(μ_2(f, g), h) = μ_2(f, μ_2(g, h)) ∘ τ` for
/// midpoint concatenation with the profile `λ`.
pub fn associativity_time_change(profile: BumpProfile) -> impl Fn(f64) -> f64 {
    move |t: f64| {
        if t <= 0.5 {
            let v = profile.eval(2.0 * t);
            if v <= 0.5 {
                v
            } else {
                0.5 * (1.0 + profile.inverse(v - 0.5))
            }
        } else {
            0.5 * (1.0 + profile.inverse(t))
        }
    }
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x) and P_n'(x) by the three-term recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes.push(0.5 * (1.0 - x));
        weights.push(1.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

/// `f[0, t, 1]` for a scalar function of `t` with second derivative `d2`, as
/// the Peano-kernel integral split at `t`.
fn second_divided_difference(d2: &dyn Fn(f64) -> f64, t: f64, nodes: &(Vec<f64>, Vec<f64>)) -> f64 {
    let (xs, ws) = nodes;
    let mut left = 0.0;
    let mut right = 0.0;
    for (s, w) in xs.iter().zip(ws) {
        left += w * d2(t * s) * t * s;
        right += w * d2(t + (1.0 - t) * s) * (1.0 - t) * (1.0 - s);
    }
    left + right
}

struct SplitFunction {
    path: Arc<dyn PathFunction>,
    nodes: (Vec<f64>, Vec<f64>),
}

impl PathFunction for SplitFunction {
    fn dim(&self) -> usize {
        self.path.dim()
    }
    fn max_t_order(&self) -> u32 {
        0
    }
    fn t_jet(&self, x: &[f64], t: f64, _order: u32) -> Vec<f64> {
        // Taylor coefficient of order 2 is f_tt / 2
        let d2 = |s: f64| 2.0 * self.path.t_jet(x, s, 2)[2];
        vec![second_divided_difference(&d2, t, &self.nodes)]
    }
}

/// Number of Gauss–Legendre nodes per half interval for function paths.
pub const SPLIT_NODES: usize = 40;

/// The splitting operator `p`: `t (t - 1) p(f) = f - (1 - t) f(., 0) - t f(., 1)`.
/// Exact polynomial division for polynomial paths, quadrature of the second
/// `t`-derivative otherwise.
pub fn split_p<S: Scalar>(f: &TimePath<S>) -> Result<TimePath<S>> {
    match f {
        TimePath::Polynomial(p) => {
            let m = f.dim();
            let f0 = f.endpoint_polynomial(&S::zero()).expect("polynomial").extend_vars(1);
            let f1 = f.endpoint_polynomial(&S::one()).expect("polynomial").extend_vars(1);
            let t = Polynomial::var(m + 1, m);
            let one_minus_t = &Polynomial::one(m + 1) - &t;
            let g = &(p - &(&one_minus_t * &f0)) - &(&t * &f1);
            let (q, r0) = g.div_rem_linear(m, &S::zero());
            let (quot, r1) = q.div_rem_linear(m, &S::one());
            let tol = Tolerance::new(if S::is_exact() {
                0.0
            } else {
                1e-9 * (1.0 + p.max_abs_coefficient())
            });
            if !r0.approx_eq(&Polynomial::zero(m + 1), tol) || !r1.approx_eq(&Polynomial::zero(m + 1), tol) {
                return Err(Error::InvalidInput(
                    "endpoint correction is not divisible by t(t-1)".into(),
                ));
            }
            Ok(TimePath::Polynomial(quot))
        }
        TimePath::Function(g) => {
            if g.max_t_order() < 2 {
                return Err(Error::InsufficientDerivatives {
                    needed: 2,
                    available: g.max_t_order() as usize,
                });
            }
            Ok(TimePath::Function(Arc::new(SplitFunction {
                path: g.clone(),
                nodes: gauss_legendre(SPLIT_NODES),
            })))
        }
    }
}

/// The pieces `(p(f), f(., 0), f(., 1))` of a polynomial path.
pub fn decompose<S: Scalar>(f: &TimePath<S>) -> Result<(Polynomial<S>, Polynomial<S>, Polynomial<S>)> {
    let split = split_p(f)?;
    match (
        split,
        f.endpoint_polynomial(&S::zero()),
        f.endpoint_polynomial(&S::one()),
    ) {
        (TimePath::Polynomial(q), Some(a), Some(b)) => Ok((q, a, b)),
        _ => Err(Error::InvalidInput("decomposition needs a polynomial path".into())),
    }
}

/// `t (t - 1) q + (1 - t) a + t b`, inverse to [`decompose`].
pub fn reassemble<S: Scalar>(split: &Polynomial<S>, start: &Polynomial<S>, end: &Polynomial<S>) -> Polynomial<S> {
    let n = split.nvars();
    let m = n - 1;
    let t = Polynomial::var(n, m);
    let one = Polynomial::one(n);
    let bump = &t * &(&t - &one);
    &(&(&bump * split) + &(&(&one - &t) * &start.extend_vars(1))) + &(&t * &end.extend_vars(1))
}

/// Residual of the splitting identity at `(x, t)`:
/// `t (t - 1) p(x, t) - (f(x, t) - (1 - t) f(x, 0) - t f(x, 1))`.
pub fn splitting_residual<S: Scalar>(f: &TimePath<S>, p: &TimePath<S>, x: &[f64], t: f64) -> Result<f64> {
    let lhs = t * (t - 1.0) * p.eval(x, t)?;
    let rhs = f.eval(x, t)? - (1.0 - t) * f.eval(x, 0.0)? - t * f.eval(x, 1.0)?;
    Ok(lhs - rhs)
}

/// One-sided difference quotients of orders 0, 1, 2 from the left and the
/// right of `t` with step `h`.
pub fn one_sided_derivatives<S: Scalar>(f: &TimePath<S>, x: &[f64], t: f64, h: f64) -> Result<([f64; 3], [f64; 3])> {
    let v = |s: f64| f.eval(x, s);
    let (c, l1, l2, r1, r2) = (v(t)?, v(t - h)?, v(t - 2.0 * h)?, v(t + h)?, v(t + 2.0 * h)?);
    Ok((
        [c, (c - l1) / h, (c - 2.0 * l1 + l2) / (h * h)],
        [c, (r1 - c) / h, (r2 - 2.0 * r1 + c) / (h * h)],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, Rational};

    type P = Polynomial<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    /// Polynomial path in (x, t) from (x exponent, t exponent, coefficient).
    fn path(terms: &[(u32, u32, i64)]) -> TimePath<Rational> {
        TimePath::Polynomial(P::from_terms(2, terms.iter().map(|&(a, b, c)| (vec![a, b], q(c)))).unwrap())
    }

    fn tpath(terms: &[(u32, i64)]) -> TimePath<Rational> {
        TimePath::Polynomial(P::from_terms(1, terms.iter().map(|&(b, c)| (vec![b], q(c)))).unwrap())
    }

    #[test]
    fn decompose_reassembles() {
        let f = path(&[(2, 3, 1), (1, 1, -2), (0, 4, 5), (3, 0, 1)]);
        let (q, a, b) = decompose(&f).unwrap();
        assert_eq!(&reassemble(&q, &a, &b), f.as_polynomial().unwrap());
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_p(&tpath(&[(2, 1)])).unwrap().as_polynomial().unwrap(), &P::one(1));
        assert_eq!(
            split_p(&tpath(&[(3, 1)])).unwrap().as_polynomial().unwrap(),
            &P::from_terms(1, vec![(vec![1], q(1)), (vec![0], q(1))]).unwrap()
        );
        // (1 - t) a(x) + t b(x) with a = x^2, b = 3x
        let lin = path(&[(2, 0, 1), (2, 1, -1), (1, 1, 3)]);
        assert!(split_p(&lin).unwrap().as_polynomial().unwrap().is_zero());
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (xs, ws) = gauss_legendre(6);
        for k in 0..12 {
            let got: f64 = xs.iter().zip(&ws).map(|(x, w)| w * x.powi(k)).sum();
            assert!((got - 1.0 / (k as f64 + 1.0)).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn function_split_matches_exact() {
        let f = path(&[(1, 3, 2), (0, 5, 1), (2, 2, -3)]);
        let exact = split_p(&f).unwrap();
        let as_fn: TimePath<Rational> = TimePath::Function(f.to_function());
        let approx = split_p(&as_fn).unwrap();
        for &t in &[0.0, 0.1, 0.37, 0.5, 0.93, 1.0] {
            for x in [-1.0, 0.3, 2.0] {
                let a = exact.eval(&[x], t).unwrap();
                let b = approx.eval(&[x], t).unwrap();
                assert!((a - b).abs() < 1e-12, "t={t} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn bump_profile_shape() {
        let b = BumpProfile::new(0.1).unwrap();
        assert_eq!(b.eval(0.05), 0.0);
        assert_eq!(b.eval(0.95), 1.0);
        assert!((b.eval(0.5) - 0.5).abs() < 1e-15);
        let mut last = 0.0;
        for k in 0..=100 {
            let v = b.eval(k as f64 / 100.0);
            assert!(v >= last);
            last = v;
        }
        for t in [0.1 + 1e-3, 0.9 - 1e-3] {
            let j = b.jet(t, 6);
            assert!(j[1..].iter().all(|c| c.abs() < 1e-10), "{j:?}");
        }
        // derivative agrees with a centered difference in the middle
        let h = 1e-5;
        let fd = (b.eval(0.4 + h) - b.eval(0.4 - h)) / (2.0 * h);
        assert!((b.jet(0.4, 1)[1] - fd).abs() < 1e-7);
        assert!((b.eval(b.inverse(0.3)) - 0.3).abs() < 1e-14);
        assert!(BumpProfile::new(0.5).is_err());
    }

    #[test]
    fn reparametrize_examples() {
        let f = path(&[(1, 2, 1), (0, 1, 3), (2, 0, -1)]);
        assert_eq!(
            reparametrize(&TimeChange::identity(), &f).as_polynomial(),
            f.as_polynomial()
        );
        let zero = TimeChange::Polynomial(P::zero(1));
        let g = reparametrize(&zero, &f);
        assert_eq!(
            g.as_polynomial().unwrap(),
            &path(&[(2, 0, -1)]).as_polynomial().unwrap().clone()
        );
        assert_eq!(reverse_iota(&reverse_iota(&f)).as_polynomial(), f.as_polynomial());
        let r = reverse_iota(&f);
        assert_eq!(r.endpoint_polynomial(&q(0)), f.endpoint_polynomial(&q(1)));
    }

    #[test]
    fn concatenation_basics() {
        let b = BumpProfile::new(0.1).unwrap();
        let c = path(&[(1, 0, 2), (0, 0, 1)]);
        let cc = concat2(&c, &c, b, Tolerance::EXACT).unwrap();
        for t in [0.0, 0.2, 0.5, 0.77, 1.0] {
            assert!((cc.eval(&[0.5], t).unwrap() - 2.0).abs() < 1e-15);
        }
        let f = path(&[(0, 1, 1)]);
        let g = path(&[(0, 0, 1), (1, 1, 1)]);
        let fg = concat2(&f, &g, b, Tolerance::EXACT).unwrap();
        assert_eq!(fg.eval(&[3.0], 0.0).unwrap(), 0.0);
        assert_eq!(fg.eval(&[3.0], 1.0).unwrap(), 4.0);
        assert_eq!(
            concat2(&g, &f, b, Tolerance::EXACT).unwrap_err(),
            Error::EndpointMismatch(1)
        );
        assert!(matches!(
            concat_mu(&[f.clone(), g.clone()], &[0.0, 0.7, 0.6], &[b, b], Tolerance::EXACT),
            Err(Error::InvalidBreakpoints(_))
        ));
    }
}
