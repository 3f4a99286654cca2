//! Simplex integrals of higher derivatives and the calculus built on them.
//!
//! For `σ = [x_0, ..., x_r]` the integral `I(f, σ)` is the symmetric `r`-form
//! obtained by integrating the `r`-th derivative of `f` over the affine image
//! of the standard simplex, whose measure is normalized to total volume one.
//! In one dimension `I(f, [y_0..y_r]) = r! f[y_0..y_r]`, the classical
//! (confluent) divided difference.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::jet_of;
use crate::poly::{monomials_of_degree, Exponent, Polynomial};
use crate::quadrature::{barycentric_moment, integrate_adaptive};
use crate::scalar::{Scalar, Tolerance};

/// Highest Grundmann–Möller index tried before giving up.
pub const MAX_RULE_INDEX: usize = 18;

/// Ordered vertex list `[x_0, ..., x_r]`; repeated vertices are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSimplex<S> {
    vertices: Vec<Vec<S>>,
}

impl<S: Scalar> AffineSimplex<S> {
    pub fn new(vertices: Vec<Vec<S>>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidInput("a simplex needs at least one vertex".into()));
        };
        let m = first.len();
        if let Some(bad) = vertices.iter().find(|v| v.len() != m) {
            return Err(Error::DimensionMismatch {
                context: "simplex vertex",
                expected: m,
                found: bad.len(),
            });
        }
        Ok(AffineSimplex { vertices })
    }

    /// Simplex on the real line.
    pub fn on_line(nodes: &[S]) -> Result<Self> {
        Self::new(nodes.iter().map(|y| vec![y.clone()]).collect())
    }

    pub fn vertices(&self) -> &[Vec<S>] {
        &self.vertices
    }

    /// Ambient dimension `m`.
    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    /// Simplex dimension `r`.
    pub fn order(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The face `∂_i σ` omitting vertex `i`.
    pub fn face(&self, i: usize) -> Result<Self> {
        if i > self.order() || self.order() == 0 {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.order(),
            });
        }
        let mut v = self.vertices.clone();
        v.remove(i);
        Ok(AffineSimplex { vertices: v })
    }

    /// `[x_0, ..., x_k]`.
    pub fn prefix(&self, k: usize) -> Self {
        AffineSimplex {
            vertices: self.vertices[..=k].to_vec(),
        }
    }

    /// Distinct vertices with their multiplicities, in order of first
    /// appearance.
    pub fn multiplicities(&self) -> Vec<(Vec<S>, usize)> {
        let mut out: Vec<(Vec<S>, usize)> = Vec::new();
        for v in &self.vertices {
            match out.iter_mut().find(|(p, _)| p == v) {
                Some((_, k)) => *k += 1,
                None => out.push((v.clone(), 1)),
            }
        }
        out
    }

    fn point_f64(&self, t: &[f64]) -> Vec<f64> {
        let m = self.dim();
        let mut x = vec![0.0; m];
        for (ti, v) in t.iter().zip(&self.vertices) {
            for k in 0..m {
                x[k] += ti * v[k].to_f64();
            }
        }
        x
    }
}

/// A symmetric `r`-form on `R^m` with values in `R^e`, stored by its tensor
/// entries: the entry for multi-index `a` is the form evaluated on basis
/// vectors where `e_i` appears `a_i` times.
#[derive(Clone, PartialEq)]
pub struct SymmetricForm<S> {
    degree: u32,
    dim: usize,
    value_dim: usize,
    index: Vec<Exponent>,
    values: Vec<Vec<S>>,
}

impl<S: Scalar> fmt::Debug for SymmetricForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricForm(r={}) {{", self.degree)?;
        for (a, v) in self.index.iter().zip(&self.values) {
            write!(f, " {a:?}: [")?;
            for (k, x) in v.iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, " }}")
    }
}

impl<S: Scalar> SymmetricForm<S> {
    pub fn zero(degree: u32, dim: usize, value_dim: usize) -> Self {
        let index = monomials_of_degree(dim, degree);
        let values = vec![vec![S::zero(); value_dim]; index.len()];
        SymmetricForm {
            degree,
            dim,
            value_dim,
            index,
            values,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value_dim(&self) -> usize {
        self.value_dim
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Exponent, &Vec<S>)> {
        self.index.iter().zip(&self.values)
    }

    pub fn entry(&self, a: &[u32]) -> &[S] {
        let pos = self.position(a).expect("multi-index of the form degree");
        &self.values[pos]
    }

    fn position(&self, a: &[u32]) -> Option<usize> {
        self.index.iter().position(|e| e.as_slice() == a)
    }

    pub(crate) fn set(&mut self, a: &[u32], v: Vec<S>) {
        let pos = self.position(a).expect("multi-index of the form degree");
        self.values[pos] = v;
    }

    /// Inserts `v` into the last slot, giving a form of degree `r - 1`.
    pub fn contract(&self, v: &[S]) -> Result<Self> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "form argument",
                expected: self.dim,
                found: v.len(),
            });
        }
        if self.degree == 0 {
            return Err(Error::InvalidInput("cannot contract a 0-form".into()));
        }
        let mut out = Self::zero(self.degree - 1, self.dim, self.value_dim);
        for (b, slot) in out.index.iter().zip(out.values.iter_mut()) {
            for (k, vk) in v.iter().enumerate() {
                if vk.is_zero() {
                    continue;
                }
                let mut a = b.clone();
                a[k] += 1;
                let pos = self.position(&a).expect("raised index");
                for (s, x) in slot.iter_mut().zip(&self.values[pos]) {
                    *s += x.clone() * vk.clone();
                }
            }
        }
        Ok(out)
    }

    /// Multilinear evaluation on `r` vectors.
    pub fn eval(&self, args: &[Vec<S>]) -> Result<Vec<S>> {
        if args.len() != self.degree as usize {
            return Err(Error::DimensionMismatch {
                context: "number of form arguments",
                expected: self.degree as usize,
                found: args.len(),
            });
        }
        let mut f = self.clone();
        for v in args.iter().rev() {
            f = f.contract(v)?;
        }
        Ok(f.values.into_iter().next().expect("0-form has one entry"))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            for (x, y) in a.iter_mut().zip(b) {
                *x -= y.clone();
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            for x in v.iter_mut() {
                *x *= c.clone();
            }
        }
        out
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree || self.dim != other.dim || self.value_dim != other.value_dim {
            return Err(Error::DimensionMismatch {
                context: "symmetric form shape",
                expected: self.index.len() * self.value_dim,
                found: other.index.len() * other.value_dim,
            });
        }
        Ok(())
    }

    pub fn is_zero(&self, tol: Tolerance) -> bool {
        self.values.iter().flatten().all(|x| x.is_negligible(tol))
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        self.check_shape(other).is_ok() && self.sub(other).map(|d| d.is_zero(tol)).unwrap_or(false)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .flatten()
            .zip(other.values.iter().flatten())
            .map(|(a, b)| (a.to_f64() - b.to_f64()).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> SymmetricForm<f64> {
        SymmetricForm {
            degree: self.degree,
            dim: self.dim,
            value_dim: self.value_dim,
            index: self.index.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.iter().map(|x| x.to_f64()).collect())
                .collect(),
        }
    }

    /// The value of a scalar-valued 0-form.
    pub fn scalar_value(&self) -> S {
        self.values[0][0].clone()
    }
}

/// A smooth map `R^m -> R^e` known only through evaluations of its partial
/// derivatives.
pub trait BlackBox: Send + Sync {
    fn dim(&self) -> usize;

    fn value_dim(&self) -> usize {
        1
    }

    /// Highest total derivative order the evaluator supports.
    fn max_order(&self) -> usize;

    /// `∂^a f(x)`, one entry per value coordinate.
    fn partial(&self, a: &[u32], x: &[f64]) -> Vec<f64>;
}

/// The integrand: polynomial components (exact path) or a black box.
#[derive(Clone)]
pub enum SmoothFunction<S> {
    Polynomial(Vec<Polynomial<S>>),
    BlackBox(Arc<dyn BlackBox>),
}

impl<S: Scalar> fmt::Debug for SmoothFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmoothFunction::Polynomial(ps) => f.debug_tuple("Polynomial").field(ps).finish(),
            SmoothFunction::BlackBox(b) => write!(f, "BlackBox(m={}, order<={})", b.dim(), b.max_order()),
        }
    }
}

impl<S: Scalar> From<Polynomial<S>> for SmoothFunction<S> {
    fn from(p: Polynomial<S>) -> Self {
        SmoothFunction::Polynomial(vec![p])
    }
}

impl<S: Scalar> SmoothFunction<S> {
    pub fn black_box(b: impl BlackBox + 'static) -> Self {
        SmoothFunction::BlackBox(Arc::new(b))
    }

    pub fn dim(&self) -> usize {
        match self {
            SmoothFunction::Polynomial(ps) => ps[0].nvars(),
            SmoothFunction::BlackBox(b) => b.dim(),
        }
    }

    pub fn value_dim(&self) -> usize {
        match self {
            SmoothFunction::Polynomial(ps) => ps.len(),
            SmoothFunction::BlackBox(b) => b.value_dim(),
        }
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial<S>> {
        match self {
            SmoothFunction::Polynomial(ps) if ps.len() == 1 => Some(&ps[0]),
            _ => None,
        }
    }

    /// `∂^a f(x)` for the scalar profile of `x`.
    pub fn partial_at(&self, a: &[u32], x: &[S]) -> Result<Vec<S>> {
        match self {
            SmoothFunction::Polynomial(ps) => ps.iter().map(|p| p.eval_deriv(a, x)).collect(),
            SmoothFunction::BlackBox(b) => {
                let order: u32 = a.iter().sum();
                if order as usize > b.max_order() {
                    return Err(Error::InsufficientDerivatives {
                        needed: order as usize,
                        available: b.max_order(),
                    });
                }
                let xf: Vec<f64> = x.iter().map(|v| v.to_f64()).collect();
                Ok(b.partial(a, &xf).into_iter().map(S::from_f64).collect())
            }
        }
    }

    fn check_scalar(&self) -> Result<()> {
        if self.value_dim() != 1 {
            return Err(Error::DimensionMismatch {
                context: "scalar-valued function",
                expected: 1,
                found: self.value_dim(),
            });
        }
        Ok(())
    }
}

/// How `I(f, σ)` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IntegrationMode {
    /// Symbolic integration; polynomial functions only.
    Exact,
    /// Adaptive Grundmann–Möller cubature to the given tolerance.
    Quadrature { tol: f64 },
}

impl IntegrationMode {
    /// Exact for polynomials, quadrature otherwise.
    pub fn auto<S: Scalar>(f: &SmoothFunction<S>, tol: f64) -> Self {
        match f {
            SmoothFunction::Polynomial(_) => IntegrationMode::Exact,
            SmoothFunction::BlackBox(_) => IntegrationMode::Quadrature { tol },
        }
    }
}

type Integrand<'a> = Box<dyn Fn(&[f64]) -> Vec<f64> + 'a>;

/// `I(f, σ) = ∫_{Δ^r} f^{(r)} ∘ σ` with the unit-volume measure.
pub fn simplex_integral<S: Scalar>(
    f: &SmoothFunction<S>,
    sigma: &AffineSimplex<S>,
    mode: IntegrationMode,
) -> Result<SymmetricForm<S>> {
    let m = sigma.dim();
    if f.dim() != m {
        return Err(Error::DimensionMismatch {
            context: "function and simplex dimension",
            expected: f.dim(),
            found: m,
        });
    }
    let r = sigma.order() as u32;
    if let SmoothFunction::BlackBox(b) = f {
        if b.max_order() < r as usize {
            return Err(Error::InsufficientDerivatives {
                needed: r as usize,
                available: b.max_order(),
            });
        }
    }
    match (mode, f) {
        (IntegrationMode::Exact, SmoothFunction::Polynomial(ps)) => Ok(exact_integral(ps, sigma)),
        (IntegrationMode::Exact, SmoothFunction::BlackBox(_)) => Err(Error::ExactRequiresPolynomial),
        (IntegrationMode::Quadrature { tol }, _) => quadrature_integral(f, sigma, tol),
    }
}

fn exact_integral<S: Scalar>(ps: &[Polynomial<S>], sigma: &AffineSimplex<S>) -> SymmetricForm<S> {
    let m = sigma.dim();
    let r = sigma.order();
    let e = ps.len();
    // x_k = sum_i t_i x_i[k] in barycentric coordinates t_0..t_r
    let subs: Vec<Polynomial<S>> = (0..m)
        .map(|k| {
            let coeffs: Vec<S> = sigma.vertices.iter().map(|v| v[k].clone()).collect();
            Polynomial::affine(&coeffs, S::zero())
        })
        .collect();
    let mut form = SymmetricForm::zero(r as u32, m, e);
    for a in monomials_of_degree(m, r as u32) {
        let mut value = Vec::with_capacity(e);
        for p in ps {
            let g = p.derivative(&a).expect("matching dimension");
            let composed = if m == 0 {
                g.clone()
            } else {
                g.substitute(&subs).expect("matching dimension")
            };
            let mut acc = S::zero();
            for (b, c) in composed.terms() {
                let b = if m == 0 { vec![0; r + 1] } else { b.clone() };
                acc += c.clone() * S::from_rational(&barycentric_moment(&b));
            }
            value.push(acc);
        }
        form.set(&a, value);
    }
    form
}

fn quadrature_integral<S: Scalar>(
    f: &SmoothFunction<S>,
    sigma: &AffineSimplex<S>,
    tol: f64,
) -> Result<SymmetricForm<S>> {
    let m = sigma.dim();
    let r = sigma.order();
    let e = f.value_dim();
    let index = monomials_of_degree(m, r as u32);
    let integrand: Integrand = match f {
        SmoothFunction::Polynomial(ps) => {
            let derivs: Vec<Vec<Polynomial<f64>>> = index
                .iter()
                .map(|a| {
                    ps.iter()
                        .map(|p| p.derivative(a).expect("dimension").to_f64())
                        .collect()
                })
                .collect();
            Box::new(move |t: &[f64]| {
                let x = sigma.point_f64(t);
                derivs.iter().flatten().map(|d| d.eval_f64(&x)).collect()
            })
        }
        SmoothFunction::BlackBox(b) => {
            let b = b.clone();
            let index = index.clone();
            Box::new(move |t: &[f64]| {
                let x = sigma.point_f64(t);
                index.iter().flat_map(|a| b.partial(a, &x)).collect()
            })
        }
    };
    let res = integrate_adaptive(r, tol, MAX_RULE_INDEX, integrand)?;
    let mut form = SymmetricForm::zero(r as u32, m, e);
    for (k, a) in index.iter().enumerate() {
        let v = res.value[k * e..(k + 1) * e].iter().map(|x| S::from_f64(*x)).collect();
        form.set(a, v);
    }
    Ok(form)
}

/// Both sides of the face recurrence: the form contracted with `x_j - x_i`
/// and `r (I(f, ∂_i σ) - I(f, ∂_j σ))`. They agree for every smooth `f`.
pub fn face_recurrence_check<S: Scalar>(
    f: &SmoothFunction<S>,
    sigma: &AffineSimplex<S>,
    i: usize,
    j: usize,
    mode: IntegrationMode,
) -> Result<(SymmetricForm<S>, SymmetricForm<S>)> {
    let r = sigma.order();
    for idx in [i, j] {
        if idx > r || r == 0 {
            return Err(Error::IndexOutOfRange { index: idx, max: r });
        }
    }
    let xi = &sigma.vertices[i];
    let xj = &sigma.vertices[j];
    let dir: Vec<S> = xj.iter().zip(xi).map(|(a, b)| a.clone() - b.clone()).collect();
    let lhs = simplex_integral(f, sigma, mode)?.contract(&dir)?;
    let fi = simplex_integral(f, &sigma.face(i)?, mode)?;
    let fj = simplex_integral(f, &sigma.face(j)?, mode)?;
    let rhs = fi.sub(&fj)?.scale(&S::from_i64(r as i64));
    Ok((lhs, rhs))
}

/// Terms of the generalized Taylor expansion along a chain of nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonExpansion<S> {
    pub terms: Vec<S>,
    pub total: S,
}

/// `f(x) = sum_i (1/i!) I(f, [x_0..x_i])(x - x_0, ..., x - x_{i-1})` with the
/// chain `x_0..x_{r-1} = nodes` and `x_r = x`.
pub fn newton_expansion<S: Scalar>(
    f: &SmoothFunction<S>,
    nodes: &[Vec<S>],
    x: &[S],
    mode: IntegrationMode,
) -> Result<NewtonExpansion<S>> {
    f.check_scalar()?;
    if nodes.is_empty() {
        return Err(Error::InvalidInput("newton expansion needs at least one node".into()));
    }
    let mut chain = nodes.to_vec();
    chain.push(x.to_vec());
    let sigma = AffineSimplex::new(chain)?;
    if sigma.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            context: "newton expansion point",
            expected: f.dim(),
            found: sigma.dim(),
        });
    }
    let diffs: Vec<Vec<S>> = sigma
        .vertices
        .iter()
        .map(|v| x.iter().zip(v).map(|(a, b)| a.clone() - b.clone()).collect())
        .collect();
    let mut terms = Vec::with_capacity(sigma.order() + 1);
    for i in 0..=sigma.order() {
        let form = simplex_integral(f, &sigma.prefix(i), mode)?;
        let value = form.eval(&diffs[..i])?[0].clone();
        terms.push(value / S::factorial(i as u32));
    }
    let total = terms.iter().fold(S::zero(), |acc, t| acc + t.clone());
    Ok(NewtonExpansion { terms, total })
}

/// Result of checking the prefix chain `I(f, [x_0]), ..., I(f, σ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VanishingReport<S> {
    /// Whether each prefix integral vanishes.
    pub chain_vanishes: Vec<bool>,
    /// First prefix length index with a nonvanishing integral.
    pub first_nonvanishing: Option<usize>,
    /// For each distinct vertex `y` of multiplicity `k`: whether `j^{k-1}_y f = 0`.
    pub jets: Vec<(Vec<S>, usize, bool)>,
}

impl<S> VanishingReport<S> {
    /// The chain vanishes entirely.
    pub fn predicate(&self) -> bool {
        self.first_nonvanishing.is_none()
    }

    /// Every jet condition implied by a vanishing chain holds.
    pub fn consistent(&self) -> bool {
        !self.predicate() || self.jets.iter().all(|(_, _, ok)| *ok)
    }
}

/// Evaluates the prefix chain of `σ` and, when it vanishes, confirms that the
/// `(k-1)`-jet of `f` vanishes at every vertex of multiplicity `k`.
pub fn vanishing_implies_jets<S: Scalar>(
    f: &SmoothFunction<S>,
    sigma: &AffineSimplex<S>,
    mode: IntegrationMode,
    tol: Tolerance,
) -> Result<VanishingReport<S>> {
    let mut chain_vanishes = Vec::with_capacity(sigma.order() + 1);
    for i in 0..=sigma.order() {
        chain_vanishes.push(simplex_integral(f, &sigma.prefix(i), mode)?.is_zero(tol));
    }
    let first_nonvanishing = chain_vanishes.iter().position(|v| !v);
    let mut jets = Vec::new();
    if first_nonvanishing.is_none() {
        for (y, k) in sigma.multiplicities() {
            let ok = match f {
                SmoothFunction::Polynomial(ps) => ps
                    .iter()
                    .all(|p| jet_of(p, &y, k as u32 - 1).map(|j| j.is_zero()).unwrap_or(false)),
                SmoothFunction::BlackBox(_) => {
                    let mut ok = true;
                    for d in 0..k as u32 {
                        for a in monomials_of_degree(y.len(), d) {
                            ok &= f.partial_at(&a, &y)?.iter().all(|v| v.is_negligible(tol));
                        }
                    }
                    ok
                }
            };
            jets.push((y, k, ok));
        }
    }
    Ok(VanishingReport {
        chain_vanishes,
        first_nonvanishing,
        jets,
    })
}

/// The one-dimensional Newton (Hermite when nodes repeat) interpolant
/// `sum_j 1/(j-1)! I(f, [y_1..y_j]) (x - y_1)...(x - y_{j-1})`.
pub fn newton_interpolant_1d<S: Scalar>(
    f: &SmoothFunction<S>,
    nodes: &[S],
    mode: IntegrationMode,
) -> Result<Polynomial<S>> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            context: "one-dimensional interpolation",
            expected: 1,
            found: f.dim(),
        });
    }
    f.check_scalar()?;
    let sigma = AffineSimplex::on_line(nodes)?;
    let x = Polynomial::<S>::var(1, 0);
    let mut basis = Polynomial::one(1);
    let mut out = Polynomial::zero(1);
    for j in 0..nodes.len() {
        if j > 0 {
            basis = &basis * &(&x - &Polynomial::constant(1, nodes[j - 1].clone()));
        }
        let coeff = simplex_integral(f, &sigma.prefix(j), mode)?.scalar_value() / S::factorial(j as u32);
        out = &out + &basis.scale(&coeff);
    }
    Ok(out)
}
