//! Finite-dimensional models of the space of ideals.
//!
//! An ideal of finite codimension is represented by its trace on a fixed
//! space `D` of polynomials, a point of a Grassmannian. Limits of collapsing
//! configurations become limits of subspaces.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hermite::{multi_jet_matrix, PolySpace, WeightedSpectrum};
use crate::linalg::{canonical_span, in_span, Matrix};
use crate::poly::{monomials_up_to, Exponent, Polynomial};
use crate::scalar::{Rational, Scalar, Tolerance};

/// Where an ideal point came from; informational only.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Spectrum(String),
    TangentLimit(String),
    Given,
}

/// A subspace of `D` in canonical echelon form. Rows are coordinate vectors
/// in the basis of `D`; each row is monic in its highest basis monomial.
#[derive(Clone, Debug)]
pub struct IdealPoint<S> {
    ambient: PolySpace,
    basis: Vec<Vec<S>>,
    pub provenance: Provenance,
}

impl<S: Scalar> PartialEq for IdealPoint<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl<S: Scalar> IdealPoint<S> {
    /// Canonicalizes the span of the given coordinate vectors.
    pub fn from_vectors(ambient: PolySpace, vectors: &[Vec<S>], tol: Tolerance) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient.len()) {
            return Err(Error::DimensionMismatch {
                context: "ideal point vector",
                expected: ambient.len(),
                found: v.len(),
            });
        }
        let basis = canonical_span(ambient.len(), vectors, true, tol);
        Ok(IdealPoint {
            ambient,
            basis,
            provenance: Provenance::Given,
        })
    }

    pub fn from_polynomials(ambient: PolySpace, polys: &[Polynomial<S>], tol: Tolerance) -> Result<Self> {
        let vectors = polys
            .iter()
            .map(|p| {
                ambient
                    .coordinates(p)
                    .ok_or_else(|| Error::InvalidInput(format!("{p} does not lie in the ambient space")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_vectors(ambient, &vectors, tol)
    }

    pub fn ambient(&self) -> &PolySpace {
        &self.ambient
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    pub fn polynomials(&self) -> Vec<Polynomial<S>> {
        self.basis.iter().map(|v| self.ambient.element(v)).collect()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient.len() - self.basis.len()
    }

    pub fn contains(&self, p: &Polynomial<S>, tol: Tolerance) -> bool {
        match self.ambient.coordinates(p) {
            Some(v) => in_span(self.ambient.len(), &self.basis, &v, tol),
            None => false,
        }
    }

    pub fn to_f64(&self) -> IdealPoint<f64> {
        IdealPoint {
            ambient: self.ambient.clone(),
            basis: self
                .basis
                .iter()
                .map(|v| v.iter().map(|x| x.to_f64()).collect())
                .collect(),
            provenance: self.provenance.clone(),
        }
    }
}

fn kernel_point<S: Scalar>(
    rows: Matrix<S>,
    ambient: &PolySpace,
    required: usize,
    tol: Tolerance,
) -> Result<IdealPoint<S>> {
    let rank = rows.rank(tol);
    if rank != required {
        return Err(Error::NotTransverse { rank, required });
    }
    IdealPoint::from_vectors(ambient.clone(), &rows.kernel(tol), tol)
}

/// `D ∩ m_Y` as a point of the Grassmannian; `D` must be transverse to `Y`.
pub fn ideal_point_from_spectrum<S: Scalar>(
    spectrum: &WeightedSpectrum<S>,
    ambient: &PolySpace,
    tol: Tolerance,
) -> Result<IdealPoint<S>> {
    if spectrum.dim() != ambient.dim() {
        return Err(Error::DimensionMismatch {
            context: "spectrum and polynomial space",
            expected: ambient.dim(),
            found: spectrum.dim(),
        });
    }
    let rows = multi_jet_matrix(spectrum, ambient);
    let mut point = kernel_point(rows, ambient, spectrum.ideal_codim(), tol)?;
    let desc = spectrum
        .points()
        .iter()
        .map(|(y, k)| format!("({:?}, {k})", y.iter().map(|v| v.to_string()).collect::<Vec<_>>()))
        .collect::<Vec<_>>()
        .join(", ");
    point.provenance = Provenance::Spectrum(desc);
    Ok(point)
}

/// `{f ∈ D : f(x) = 0, df(x)(v) = 0}`, the limit of the ideals of the pairs
/// `{x, x + t v}` as `t → 0`.
pub fn tangent_limit_ideal<S: Scalar>(x: &[S], v: &[S], ambient: &PolySpace, tol: Tolerance) -> Result<IdealPoint<S>> {
    let m = ambient.dim();
    for len in [x.len(), v.len()] {
        if len != m {
            return Err(Error::DimensionMismatch {
                context: "tangent limit point",
                expected: m,
                found: len,
            });
        }
    }
    if v.iter().all(|c| c.is_negligible(tol)) {
        return Err(Error::ZeroDirection);
    }
    let mut values = Vec::with_capacity(ambient.len());
    let mut slopes = Vec::with_capacity(ambient.len());
    for j in 0..ambient.len() {
        let p: Polynomial<S> = ambient.basis_polynomial(j);
        values.push(p.eval(x)?);
        let mut s = S::zero();
        for (k, vk) in v.iter().enumerate() {
            s += p.partial(k).eval(x)? * vk.clone();
        }
        slopes.push(s);
    }
    let rows = Matrix::from_rows(ambient.len(), vec![values, slopes]);
    let mut point = kernel_point(rows, ambient, 2, tol)?;
    point.provenance = Provenance::TangentLimit(format!(
        "x = {:?}, v = {:?}",
        x.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        v.iter().map(|c| c.to_string()).collect::<Vec<_>>()
    ));
    Ok(point)
}

fn orthonormal_columns<S: Scalar>(p: &IdealPoint<S>) -> DMatrix<f64> {
    let n = p.ambient.len();
    let k = p.basis.len();
    let a = DMatrix::from_fn(n, k, |i, j| p.basis[j][i].to_f64());
    if k == 0 {
        return a;
    }
    a.qr().q().columns(0, k).into_owned()
}

/// Largest principal angle between two subspaces of the same ambient space,
/// using the inner product in which the monomials are orthonormal.
pub fn grassmann_distance<S: Scalar>(a: &IdealPoint<S>, b: &IdealPoint<S>) -> Result<f64> {
    if a.ambient != b.ambient || a.dim() != b.dim() {
        return Err(Error::AmbientMismatch);
    }
    if a.dim() == 0 || a == b {
        return Ok(0.0);
    }
    let qa = orthonormal_columns(a);
    let qb = orthonormal_columns(b);
    // the component of b orthogonal to a has norm sin(largest angle)
    let resid = &qb - &qa * (qa.transpose() * &qb);
    let sigma = resid.svd(false, false).singular_values.max();
    Ok(sigma.clamp(0.0, 1.0).asin())
}

/// A spectrum recovered from a one-dimensional ideal point.
#[derive(Clone, Debug, PartialEq)]
pub struct RecoveredSpectrum<S> {
    pub spectrum: WeightedSpectrum<S>,
    /// Some root could not be verified exactly and is a floating approximation.
    pub approximate: bool,
}

// univariate helpers on coefficient vectors, lowest degree first

fn trim<S: Scalar>(mut p: Vec<S>, tol: Tolerance) -> Vec<S> {
    while p.last().is_some_and(|c| c.is_negligible(tol)) {
        p.pop();
    }
    p
}

fn monic<S: Scalar>(p: Vec<S>) -> Vec<S> {
    let lead = p.last().cloned().expect("nonzero polynomial").inv();
    p.into_iter().map(|c| c * lead.clone()).collect()
}

fn div_rem<S: Scalar>(a: &[S], b: &[S], tol: Tolerance) -> (Vec<S>, Vec<S>) {
    let mut r = a.to_vec();
    if a.len() < b.len() {
        return (Vec::new(), trim(r, tol));
    }
    let lead = b.last().expect("nonzero divisor").inv();
    let mut q = vec![S::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + b.len() - 1].clone() * lead.clone();
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= c.clone() * bj.clone();
        }
        q[k] = c;
    }
    r.truncate(b.len() - 1);
    (q, trim(r, tol))
}

fn gcd<S: Scalar>(a: &[S], b: &[S], tol: Tolerance) -> Vec<S> {
    let (mut a, mut b) = (trim(a.to_vec(), tol), trim(b.to_vec(), tol));
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b, tol);
        a = b;
        b = r;
    }
    monic(a)
}

fn derivative<S: Scalar>(p: &[S]) -> Vec<S> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.clone() * S::from_i64(k as i64))
        .collect()
}

fn eval<S: Scalar>(p: &[S], x: &S) -> S {
    p.iter().rev().fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// Square-free factorization `p = prod a_i^i` by Yun's algorithm; returns the
/// nonconstant factors with their multiplicities.
fn square_free<S: Scalar>(p: &[S], tol: Tolerance) -> Vec<(Vec<S>, u32)> {
    let dp = derivative(p);
    let a0 = gcd(p, &dp, tol);
    let mut b = div_rem(p, &a0, tol).0;
    let mut c = div_rem(&dp, &a0, tol).0;
    let mut out = Vec::new();
    let mut i = 1;
    loop {
        let db = derivative(&b);
        let d: Vec<S> = {
            let mut d = c.clone();
            d.resize(d.len().max(db.len()), S::zero());
            for (k, x) in db.iter().enumerate() {
                d[k] -= x.clone();
            }
            trim(d, tol)
        };
        if b.len() <= 1 {
            break;
        }
        let a = if d.is_empty() {
            monic(b.clone())
        } else {
            gcd(&b, &d, tol)
        };
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = div_rem(&b, &a, tol).0;
        c = if d.is_empty() {
            Vec::new()
        } else {
            div_rem(&d, &a, tol).0
        };
        i += 1;
    }
    out
}

/// All complex roots of a monic polynomial by simultaneous iteration.
fn complex_roots(p: &[f64]) -> Vec<Complex64> {
    let n = p.len() - 1;
    let coeffs: Vec<Complex64> = p.iter().map(|&c| Complex64::new(c / p[n], 0.0)).collect();
    let horner = |z: Complex64| coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * z + c);
    let radius = 1.0 + p[..n].iter().map(|c| (c / p[n]).abs()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius.min(2.0)).collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = horner(roots[i]) / denom;
            roots[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    roots
}

/// Best rational approximations of `x` by continued fractions.
fn convergents(x: f64, max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        out.push(Rational::new(h2.into(), k2.into()));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a as f64;
        if frac.abs() < 1e-15 {
            break;
        }
        y = 1.0 / frac;
    }
    out
}

/// Recovers the weighted spectrum of a one-dimensional ideal point whose
/// subspace is the set of multiples of a single monic generator.
pub fn weighted_spectrum_1d<S: Scalar>(point: &IdealPoint<S>, tol: Tolerance) -> Result<RecoveredSpectrum<S>> {
    let ambient = point.ambient();
    if ambient.dim() != 1 {
        return Err(Error::DimensionMismatch {
            context: "spectrum recovery",
            expected: 1,
            found: ambient.dim(),
        });
    }
    let top = ambient.basis().iter().map(|e| e[0]).max().unwrap_or(0);
    if *ambient != PolySpace::up_to_degree(1, top) {
        return Err(Error::NotInImage(
            "ambient space must be all polynomials up to a degree".into(),
        ));
    }
    let polys = point.polynomials();
    let generator = polys
        .iter()
        .filter(|p| !p.is_zero())
        .min_by_key(|p| p.degree())
        .ok_or_else(|| Error::NotInImage("the zero subspace has no generator".into()))?;
    let d = generator.degree().unwrap_or(0);
    if d == 0 || d as usize != point.codim() {
        return Err(Error::NotInImage(format!(
            "lowest degree {d} differs from the codimension {}",
            point.codim()
        )));
    }
    let lead = generator.coefficient(&[d]).inv();
    let g = generator.scale(&lead);
    let multiples: Vec<Polynomial<S>> = (0..=top - d)
        .map(|j| &g * &Polynomial::monomial(vec![j], S::one()))
        .collect();
    if IdealPoint::from_polynomials(ambient.clone(), &multiples, tol)? != *point {
        let approx = point.to_f64();
        let other = IdealPoint::from_polynomials(ambient.clone(), &multiples, tol)?.to_f64();
        if S::is_exact() || grassmann_distance(&approx, &other)? > tol.value().max(1e-12) {
            return Err(Error::NotInImage("the subspace is not principal".into()));
        }
    }
    let coeffs: Vec<S> = (0..=d).map(|k| g.coefficient(&[k])).collect();
    let mut approximate = false;
    let mut points: Vec<(Vec<S>, u32)> = Vec::new();
    for (factor, mult) in square_free(&coeffs, tol) {
        let mut rest = factor;
        let roots = complex_roots(&rest.iter().map(|c| c.to_f64()).collect::<Vec<_>>());
        for z in roots {
            if rest.len() <= 1 {
                break;
            }
            if z.im.abs() > 1e-7 * z.norm().max(1.0) {
                return Err(Error::NotInImage(format!("the generator has a non-real root {z}")));
            }
            let exact = convergents(z.re, 1_000_000)
                .into_iter()
                .map(|r| S::from_rational(&r))
                .find(|r| (r.to_f64() - z.re).abs() <= 1e-6 * z.re.abs().max(1.0) && eval(&rest, r).is_negligible(tol));
            let root = match exact {
                Some(r) => r,
                None => {
                    approximate = true;
                    S::from_f64(z.re)
                }
            };
            rest = div_rem(&rest, &[-root.clone(), S::one()], Tolerance::new(f64::INFINITY)).0;
            points.push((vec![root], mult));
        }
    }
    let spectrum = WeightedSpectrum::new(points).map_err(|e| Error::NotInImage(e.to_string()))?;
    Ok(RecoveredSpectrum { spectrum, approximate })
}

/// An ideal of the truncated polynomial algebra `J^order_0(R^m)`, stored as
/// an echelon basis over the monomials of degree `<= order`.
#[derive(Clone, Debug)]
pub struct JetIdeal<S> {
    dim: usize,
    order: u32,
    monomials: Vec<Exponent>,
    basis: Vec<Vec<S>>,
}

impl<S: Scalar> PartialEq for JetIdeal<S> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.order == other.order && self.basis == other.basis
    }
}

impl<S: Scalar> JetIdeal<S> {
    /// The ideal generated by `generators`, truncated at `order`.
    pub fn generated_by(dim: usize, order: u32, generators: &[Polynomial<S>], tol: Tolerance) -> Result<Self> {
        let monomials = monomials_up_to(dim, order);
        let mut vectors = Vec::new();
        for g in generators {
            if g.nvars() != dim {
                return Err(Error::DimensionMismatch {
                    context: "ideal generator",
                    expected: dim,
                    found: g.nvars(),
                });
            }
            for e in &monomials {
                let p = (g * &Polynomial::monomial(e.clone(), S::one())).truncate(order);
                vectors.push(p.coords_in(&monomials).expect("truncated"));
            }
        }
        Ok(JetIdeal {
            dim,
            order,
            basis: canonical_span(monomials.len(), &vectors, true, tol),
            monomials,
        })
    }

    /// The linear span of `spanning`; fails unless it is an ideal.
    pub fn from_span(dim: usize, order: u32, spanning: &[Polynomial<S>], tol: Tolerance) -> Result<Self> {
        let monomials = monomials_up_to(dim, order);
        let vectors = spanning
            .iter()
            .map(|p| {
                if p.nvars() != dim {
                    return Err(Error::DimensionMismatch {
                        context: "ideal element",
                        expected: dim,
                        found: p.nvars(),
                    });
                }
                Ok(p.truncate(order).coords_in(&monomials).expect("truncated"))
            })
            .collect::<Result<Vec<_>>>()?;
        let ideal = JetIdeal {
            dim,
            order,
            basis: canonical_span(monomials.len(), &vectors, true, tol),
            monomials,
        };
        ideal.check_closed(tol)?;
        Ok(ideal)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    pub fn elements(&self) -> Vec<Polynomial<S>> {
        self.basis
            .iter()
            .map(|v| Polynomial::from_coords(self.dim, &self.monomials, v))
            .collect()
    }

    pub fn codim(&self) -> usize {
        self.monomials.len() - self.basis.len()
    }

    pub fn contains(&self, p: &Polynomial<S>, tol: Tolerance) -> bool {
        let v = p.truncate(self.order).coords_in(&self.monomials).expect("truncated");
        in_span(self.monomials.len(), &self.basis, &v, tol)
    }

    /// Closure under multiplication by each coordinate function, which
    /// generate the algebra.
    pub fn check_closed(&self, tol: Tolerance) -> Result<()> {
        for p in self.elements() {
            for k in 0..self.dim {
                let q = (&p * &Polynomial::var(self.dim, k)).truncate(self.order);
                if !self.contains(&q, tol) {
                    return Err(Error::NotAnIdeal(format!("x{} * ({p}) leaves the span", k + 1)));
                }
            }
        }
        Ok(())
    }

    /// The ideal `{f ∘ L : f ∈ I}` for an invertible linear map `L`.
    pub fn pull_back(&self, map: &Matrix<S>, tol: Tolerance) -> Result<Self> {
        if map.rows() != self.dim || map.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "linear coordinate change",
                expected: self.dim,
                found: map.rows(),
            });
        }
        let subs: Vec<Polynomial<S>> = (0..self.dim)
            .map(|k| Polynomial::affine(map.row(k), S::zero()))
            .collect();
        let images = self
            .elements()
            .iter()
            .map(|p| p.substitute(&subs).map(|q| q.truncate(self.order)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_span(self.dim, self.order, &images, tol)
    }

    fn coordinates_of_degree(&self, v: &[S], degree: u32) -> Vec<(Exponent, S)> {
        self.monomials
            .iter()
            .zip(v)
            .filter(|(e, _)| e.iter().sum::<u32>() == degree)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect()
    }

    /// Linear part of a basis vector as a vector in `R^m`.
    fn linear_part(&self, v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (e, c) in self.coordinates_of_degree(v, 1) {
            let k = e.iter().position(|&x| x == 1).expect("degree one");
            out[k] = c;
        }
        out
    }

    /// Quadratic part of a basis vector evaluated at `u`.
    fn quadratic_at(&self, v: &[S], u: &[S]) -> S {
        self.coordinates_of_degree(v, 2)
            .into_iter()
            .fold(S::zero(), |acc, (e, c)| {
                let mono = e.iter().zip(u).fold(S::one(), |m, (&k, x)| m * x.pow_n(k));
                acc + c * mono
            })
    }
}

/// The 2-jet of a curve through the origin, `γ(t) = t u + t^2 w`, normalized
/// so that `u` has a unit pivot entry and `w` vanishes at that entry.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveJet<S: Scalar> {
    pub tangent: Vec<S>,
    pub acceleration: Vec<S>,
    /// `c` in the normal form `γ(t) = (t, -c t^2, 0, ..., 0)`; zero or one.
    pub normal_form_c: u8,
    /// Columns form the adapted basis: `x = A y` takes normal-form
    /// coordinates `y` to the original ones.
    pub adapting_map: Matrix<S>,
}

/// Codimension-3 ideals of `J^2_0(R^m)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Codim3Type<S: Scalar> {
    /// Functions vanishing to first order along a 2-plane: echelon basis of the plane.
    Plane(Vec<Vec<S>>),
    /// Functions vanishing to second order along a curve.
    Curve(CurveJet<S>),
}

fn linear_parts_matrix<S: Scalar>(ideal: &JetIdeal<S>) -> Matrix<S> {
    Matrix::from_rows(ideal.dim, ideal.basis.iter().map(|v| ideal.linear_part(v)).collect())
}

fn adapted_basis<S: Scalar>(first: &[Vec<S>], dim: usize, tol: Tolerance) -> Matrix<S> {
    let mut cols: Vec<Vec<S>> = first.to_vec();
    for k in 0..dim {
        let mut e = vec![S::zero(); dim];
        e[k] = S::one();
        let mut trial = cols.clone();
        trial.push(e);
        if Matrix::from_columns(dim, &trial).rank(tol) == trial.len() {
            cols = trial;
        }
    }
    Matrix::from_columns(dim, &cols)
}

/// Classifies a codimension-3 ideal of `J^2_0(R^m)` as the ideal of a 2-plane
/// or of the 2-jet of a curve.
pub fn classify_codim3<S: Scalar>(ideal: &JetIdeal<S>, tol: Tolerance) -> Result<Codim3Type<S>> {
    if ideal.order != 2 {
        return Err(Error::InvalidInput("classification works in the 2-jet algebra".into()));
    }
    if ideal.codim() != 3 {
        return Err(Error::WrongCodimension {
            expected: 3,
            found: ideal.codim(),
        });
    }
    ideal.check_closed(tol)?;
    let m = ideal.dim;
    let lin = linear_parts_matrix(ideal);
    let rank = lin.rank(tol);
    if m >= 2 && rank == m - 2 {
        let plane = canonical_span(m, &lin.kernel(tol), false, tol);
        return Ok(Codim3Type::Plane(plane));
    }
    if rank + 1 != m {
        return Err(Error::NotAnIdeal(format!(
            "linear parts have rank {rank} in dimension {m}"
        )));
    }
    let tangent = lin.kernel(tol).pop().expect("one-dimensional kernel");
    let rhs: Vec<S> = ideal.basis.iter().map(|v| -ideal.quadratic_at(v, &tangent)).collect();
    let acceleration = lin
        .solve(&rhs, tol)
        .ok_or_else(|| Error::NotAnIdeal("no curve has this 2-jet ideal".into()))?;
    let bent = acceleration.iter().any(|c| !c.is_negligible(tol));
    let mut first = vec![tangent.clone()];
    if bent {
        first.push(acceleration.iter().map(|c| -c.clone()).collect());
    }
    Ok(Codim3Type::Curve(CurveJet {
        adapting_map: adapted_basis(&first, m, tol),
        normal_form_c: bent as u8,
        tangent,
        acceleration,
    }))
}

/// The ideal described by a classification datum.
pub fn reconstruct<S: Scalar>(dim: usize, datum: &Codim3Type<S>, tol: Tolerance) -> Result<JetIdeal<S>> {
    let monomials = monomials_up_to(dim, 2);
    let n = monomials.len();
    let position = |e: &Exponent| monomials.iter().position(|x| x == e).expect("monomial of degree <= 2");
    let linear_row = |v: &[S]| {
        let mut row = vec![S::zero(); n];
        for (k, c) in v.iter().enumerate() {
            let mut e = vec![0; dim];
            e[k] = 1;
            row[position(&e)] = c.clone();
        }
        row
    };
    let mut constant = vec![S::zero(); n];
    constant[position(&vec![0; dim])] = S::one();
    let mut rows = vec![constant];
    match datum {
        Codim3Type::Plane(plane) => {
            if plane.len() != 2 {
                return Err(Error::WrongCodimension {
                    expected: 2,
                    found: plane.len(),
                });
            }
            rows.extend(plane.iter().map(|p| linear_row(p)));
        }
        Codim3Type::Curve(c) => {
            if c.tangent.iter().all(|x| x.is_negligible(tol)) {
                return Err(Error::ZeroDirection);
            }
            rows.push(linear_row(&c.tangent));
            let mut second = linear_row(&c.acceleration);
            for e in monomials.iter().filter(|e| e.iter().sum::<u32>() == 2) {
                let mono = e.iter().zip(&c.tangent).fold(S::one(), |m, (&k, x)| m * x.pow_n(k));
                second[position(e)] += mono;
            }
            rows.push(second);
        }
    }
    let kernel = Matrix::from_rows(n, rows).kernel(tol);
    let elements: Vec<Polynomial<S>> = kernel
        .iter()
        .map(|v| Polynomial::from_coords(dim, &monomials, v))
        .collect();
    let ideal = JetIdeal::from_span(dim, 2, &elements, tol)?;
    if ideal.codim() != 3 {
        return Err(Error::WrongCodimension {
            expected: 3,
            found: ideal.codim(),
        });
    }
    Ok(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    type P = Polynomial<Rational>;
    const EXACT: Tolerance = Tolerance::EXACT;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn poly1(coeffs: &[i64]) -> P {
        P::from_terms(1, coeffs.iter().enumerate().map(|(k, &c)| (vec![k as u32], q(c)))).unwrap()
    }

    fn line(points: &[(i64, u32)]) -> WeightedSpectrum<Rational> {
        WeightedSpectrum::on_line(&points.iter().map(|(y, k)| (q(*y), *k)).collect::<Vec<_>>()).unwrap()
    }

    fn x(m: usize, i: usize) -> P {
        P::var(m, i)
    }

    #[test]
    fn spectrum_points() {
        let d2 = PolySpace::up_to_degree(1, 2);
        let p = ideal_point_from_spectrum(&line(&[(0, 1), (1, 1)]), &d2, EXACT).unwrap();
        assert_eq!(p.polynomials(), vec![poly1(&[0, -1, 1])]);
        let p = ideal_point_from_spectrum(&line(&[(0, 2)]), &d2, EXACT).unwrap();
        assert_eq!(p.polynomials(), vec![poly1(&[0, 0, 1])]);
        let d1 = PolySpace::up_to_degree(1, 1);
        assert!(matches!(
            ideal_point_from_spectrum(&line(&[(0, 2), (1, 1)]), &d1, EXACT),
            Err(Error::NotTransverse { .. })
        ));
    }

    #[test]
    fn distances() {
        let d2 = PolySpace::up_to_degree(1, 2);
        let a = IdealPoint::from_polynomials(d2.clone(), &[poly1(&[0, 1])], EXACT).unwrap();
        let b = IdealPoint::from_polynomials(d2.clone(), &[poly1(&[0, 0, 1])], EXACT).unwrap();
        assert_eq!(grassmann_distance(&a, &a).unwrap(), 0.0);
        assert!((grassmann_distance(&a, &b).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        let mut last = f64::INFINITY;
        for k in 1..8 {
            let t = 0.5f64.powi(k);
            let c = IdealPoint::from_polynomials(
                d2.clone(),
                &[Polynomial::from_terms(1, vec![(vec![2], 1.0), (vec![1], -t)]).unwrap()],
                Tolerance::default(),
            )
            .unwrap();
            let dist = grassmann_distance(&c, &b.to_f64()).unwrap();
            assert!((dist - t.atan()).abs() < 1e-12);
            assert!(dist < last);
            last = dist;
        }
        let d1 = PolySpace::up_to_degree(1, 1);
        let c = IdealPoint::from_polynomials(d1, &[poly1(&[0, 1])], EXACT).unwrap();
        assert_eq!(grassmann_distance(&a, &c), Err(Error::AmbientMismatch));
    }

    #[test]
    fn tangent_limits() {
        let d = PolySpace::up_to_degree(2, 2);
        let p = tangent_limit_ideal(&[q(0), q(0)], &[q(1), q(0)], &d, EXACT).unwrap();
        assert_eq!(p.dim(), 4);
        let d1 = PolySpace::up_to_degree(1, 2);
        let t = tangent_limit_ideal(&[q(0)], &[q(1)], &d1, EXACT).unwrap();
        assert_eq!(t, ideal_point_from_spectrum(&line(&[(0, 2)]), &d1, EXACT).unwrap());
        assert_eq!(
            tangent_limit_ideal(&[q(0)], &[q(0)], &d1, EXACT),
            Err(Error::ZeroDirection)
        );
    }

    #[test]
    fn spectrum_recovery() {
        let d3 = PolySpace::up_to_degree(1, 3);
        let p = IdealPoint::from_polynomials(d3.clone(), &[poly1(&[0, -1, 1]), poly1(&[0, 0, -1, 1])], EXACT).unwrap();
        let r = weighted_spectrum_1d(&p, EXACT).unwrap();
        assert_eq!(r.spectrum, line(&[(0, 1), (1, 1)]));
        assert!(!r.approximate);
        let p = IdealPoint::from_polynomials(d3.clone(), &[poly1(&[0, 0, 1]), poly1(&[0, 0, 0, 1])], EXACT).unwrap();
        assert_eq!(weighted_spectrum_1d(&p, EXACT).unwrap().spectrum, line(&[(0, 2)]));
        let p = IdealPoint::from_polynomials(d3.clone(), &[poly1(&[1, 0, 1]), poly1(&[0, 1, 0, 1])], EXACT).unwrap();
        assert!(matches!(weighted_spectrum_1d(&p, EXACT), Err(Error::NotInImage(_))));
        // not principal: x^2 and x^3 - 1 do not share a generator
        let p = IdealPoint::from_polynomials(d3, &[poly1(&[0, 0, 1]), poly1(&[-1, 0, 0, 1])], EXACT).unwrap();
        assert!(matches!(weighted_spectrum_1d(&p, EXACT), Err(Error::NotInImage(_))));
    }

    #[test]
    fn recovery_with_repeated_fractional_roots() {
        let y = WeightedSpectrum::on_line(&[
            (Rational::from_ratio(-3, 2), 3),
            (Rational::from_ratio(1, 3), 1),
            (q(2), 2),
        ])
        .unwrap();
        let d = PolySpace::up_to_degree(1, 7);
        let p = ideal_point_from_spectrum(&y, &d, EXACT).unwrap();
        let r = weighted_spectrum_1d(&p, EXACT).unwrap();
        assert_eq!(r.spectrum, y);
        assert!(!r.approximate);
    }

    #[test]
    fn recovery_skips_distant_convergents() {
        // 0 is a convergent of 1/2 and also a root
        let y = WeightedSpectrum::on_line(&[(q(0), 1), (Rational::from_ratio(1, 2), 1)]).unwrap();
        let p = ideal_point_from_spectrum(&y, &PolySpace::up_to_degree(1, 4), EXACT).unwrap();
        assert_eq!(weighted_spectrum_1d(&p, EXACT).unwrap().spectrum, y);
    }

    #[test]
    fn classify_examples() {
        let m = 4;
        let plane_gens = vec![
            x(m, 2),
            x(m, 3),
            &x(m, 0) * &x(m, 0),
            &x(m, 0) * &x(m, 1),
            &x(m, 1) * &x(m, 1),
        ];
        let ideal = JetIdeal::generated_by(m, 2, &plane_gens, EXACT).unwrap();
        assert_eq!(ideal.codim(), 3);
        let t = classify_codim3(&ideal, EXACT).unwrap();
        assert_eq!(
            t,
            Codim3Type::Plane(vec![vec![q(1), q(0), q(0), q(0)], vec![q(0), q(1), q(0), q(0)]])
        );
        assert_eq!(reconstruct(m, &t, EXACT).unwrap(), ideal);

        for c in [0, 3] {
            let gens = vec![&x(m, 1) + &(&x(m, 0) * &x(m, 0)).scale(&q(c)), x(m, 2), x(m, 3)];
            let ideal = JetIdeal::generated_by(m, 2, &gens, EXACT).unwrap();
            let Codim3Type::Curve(curve) = classify_codim3(&ideal, EXACT).unwrap() else {
                panic!("expected a curve");
            };
            assert_eq!(curve.tangent, vec![q(1), q(0), q(0), q(0)]);
            assert_eq!(curve.acceleration, vec![q(0), q(-c), q(0), q(0)]);
            assert_eq!(curve.normal_form_c, (c != 0) as u8);
            assert_eq!(reconstruct(m, &Codim3Type::Curve(curve), EXACT).unwrap(), ideal);
        }

        let m2 = JetIdeal::generated_by(
            2,
            2,
            &[&x(2, 0) * &x(2, 0), &x(2, 0) * &x(2, 1), &x(2, 1) * &x(2, 1)],
            EXACT,
        )
        .unwrap();
        assert_eq!(
            classify_codim3(&m2, EXACT).unwrap(),
            Codim3Type::Plane(vec![vec![q(1), q(0)], vec![q(0), q(1)]])
        );
    }

    #[test]
    fn classify_errors() {
        let m = 3;
        let max_ideal = JetIdeal::generated_by(m, 2, &[x(m, 0), x(m, 1), x(m, 2)], EXACT).unwrap();
        assert_eq!(
            classify_codim3(&max_ideal, EXACT),
            Err(Error::WrongCodimension { expected: 3, found: 1 })
        );
        assert!(matches!(
            JetIdeal::from_span(2, 2, &[x(2, 0)], EXACT),
            Err(Error::NotAnIdeal(_))
        ));
    }

    #[test]
    fn classification_is_coordinate_free() {
        let m = 3;
        let gens = vec![&x(m, 1) + &(&x(m, 0) * &x(m, 0)).scale(&q(2)), x(m, 2)];
        let ideal = JetIdeal::generated_by(m, 2, &gens, EXACT).unwrap();
        let change = Matrix::from_rows(
            3,
            vec![vec![q(1), q(2), q(0)], vec![q(0), q(1), q(-1)], vec![q(3), q(0), q(1)]],
        );
        let moved = ideal.pull_back(&change, EXACT).unwrap();
        let t = classify_codim3(&moved, EXACT).unwrap();
        assert!(matches!(t, Codim3Type::Curve(ref c) if c.normal_form_c == 1));
        assert_eq!(reconstruct(m, &t, EXACT).unwrap(), moved);
        // the adapting map takes the normal form ideal to the moved one
        let Codim3Type::Curve(c) = &t else { unreachable!() };
        let normal = JetIdeal::generated_by(m, 2, &[&x(m, 1) + &(&x(m, 0) * &x(m, 0)), x(m, 2)], EXACT).unwrap();
        let inverse = c.adapting_map.inverse(EXACT).unwrap();
        assert_eq!(moved.pull_back(&c.adapting_map, EXACT).unwrap(), normal);
        assert_eq!(normal.pull_back(&inverse, EXACT).unwrap(), moved);
    }
}
