//! Hermite interpolation on weighted point sets.
//!
//! A weighted spectrum `Y = {(y_1, k_1), ..., (y_n, k_n)}` prescribes the
//! `(k_i - 1)`-jet at each `y_i`. The polynomials with vanishing jets form the
//! spectral ideal; within a finite-dimensional space of polynomials it is the
//! kernel of the multi-jet map.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::jet::{jet_of, Jet};
use crate::linalg::Matrix;
use crate::poly::{binomial, monomials_up_to, Exponent, Polynomial};
use crate::scalar::{Scalar, Tolerance};
use crate::simplex::{simplex_integral, AffineSimplex, IntegrationMode, SmoothFunction};

/// Distinct points with positive integer weights, kept in lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedSpectrum<S> {
    dim: usize,
    points: Vec<(Vec<S>, u32)>,
}

fn lex_cmp<S: Scalar>(a: &[S], b: &[S]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

impl<S: Scalar> WeightedSpectrum<S> {
    pub fn new(points: Vec<(Vec<S>, u32)>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidSpectrum("empty spectrum".into()));
        };
        let dim = first.0.len();
        let mut points = points;
        for (y, k) in &points {
            if y.len() != dim {
                return Err(Error::DimensionMismatch {
                    context: "spectrum point",
                    expected: dim,
                    found: y.len(),
                });
            }
            if *k == 0 {
                return Err(Error::InvalidSpectrum("weights must be positive".into()));
            }
        }
        points.sort_by(|a, b| lex_cmp(&a.0, &b.0));
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidSpectrum("points must be distinct".into()));
        }
        Ok(WeightedSpectrum { dim, points })
    }

    /// Groups a list of points with repetitions; the weight of a point is its
    /// multiplicity.
    pub fn from_multiset(points: &[Vec<S>]) -> Result<Self> {
        let mut grouped: Vec<(Vec<S>, u32)> = Vec::new();
        for p in points {
            match grouped.iter_mut().find(|(q, _)| q == p) {
                Some((_, k)) => *k += 1,
                None => grouped.push((p.clone(), 1)),
            }
        }
        Self::new(grouped)
    }

    /// Points on the real line.
    pub fn on_line(points: &[(S, u32)]) -> Result<Self> {
        Self::new(points.iter().map(|(y, k)| (vec![y.clone()], *k)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[(Vec<S>, u32)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `d = sum k_i`.
    pub fn total_weight(&self) -> u32 {
        self.points.iter().map(|(_, k)| k).sum()
    }

    /// Codimension of the spectral ideal: the number of Taylor coefficients of
    /// order `< k_i` at each point, `sum_i C(m + k_i - 1, m)`.
    pub fn ideal_codim(&self) -> usize {
        self.points
            .iter()
            .map(|(_, k)| binomial(self.dim + *k as usize - 1, self.dim))
            .sum()
    }

    /// Each point repeated by its weight.
    pub fn expanded(&self) -> Vec<Vec<S>> {
        self.points
            .iter()
            .flat_map(|(y, k)| std::iter::repeat_n(y.clone(), *k as usize))
            .collect()
    }
}

/// One jet of order `k_i - 1` per spectrum point.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiJet<S: Scalar> {
    jets: Vec<Jet<S>>,
}

impl<S: Scalar> MultiJet<S> {
    pub fn new(spectrum: &WeightedSpectrum<S>, jets: Vec<Jet<S>>) -> Result<Self> {
        if jets.len() != spectrum.len() {
            return Err(Error::DimensionMismatch {
                context: "multi-jet length",
                expected: spectrum.len(),
                found: jets.len(),
            });
        }
        for ((y, k), j) in spectrum.points.iter().zip(&jets) {
            if j.base() != y.as_slice() || j.order() + 1 != *k {
                return Err(Error::JetMismatch);
            }
        }
        Ok(MultiJet { jets })
    }

    /// The multi-jet of a polynomial.
    pub fn of_polynomial(spectrum: &WeightedSpectrum<S>, p: &Polynomial<S>) -> Result<Self> {
        let jets = spectrum
            .points
            .iter()
            .map(|(y, k)| jet_of(p, y, k - 1))
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiJet { jets })
    }

    pub fn jets(&self) -> &[Jet<S>] {
        &self.jets
    }

    /// Jet coefficients in row order: points in spectrum order, graded
    /// multi-indices within a point.
    pub fn coordinates(&self) -> Vec<S> {
        self.jets
            .iter()
            .flat_map(|j| {
                monomials_up_to(j.dim(), j.order())
                    .into_iter()
                    .map(move |a| j.coefficient(&a))
            })
            .collect()
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        self.jets.len() == other.jets.len()
            && self
                .jets
                .iter()
                .zip(&other.jets)
                .all(|(a, b)| a.base() == b.base() && a.order() == b.order() && a.local().approx_eq(b.local(), tol))
    }
}

/// A finite-dimensional space of polynomials spanned by monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySpace {
    dim: usize,
    basis: Vec<Exponent>,
}

impl PolySpace {
    /// All monomials of total degree `<= degree`, graded.
    pub fn up_to_degree(dim: usize, degree: u32) -> Self {
        PolySpace {
            dim,
            basis: monomials_up_to(dim, degree),
        }
    }

    pub fn from_monomials(dim: usize, basis: Vec<Exponent>) -> Result<Self> {
        for (i, e) in basis.iter().enumerate() {
            if e.len() != dim {
                return Err(Error::DimensionMismatch {
                    context: "monomial exponent",
                    expected: dim,
                    found: e.len(),
                });
            }
            if basis[..i].contains(e) {
                return Err(Error::InvalidInput(format!("repeated monomial {e:?}")));
            }
        }
        Ok(PolySpace { dim, basis })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Exponent] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis_polynomial<S: Scalar>(&self, i: usize) -> Polynomial<S> {
        Polynomial::monomial(self.basis[i].clone(), S::one())
    }

    pub fn element<S: Scalar>(&self, coords: &[S]) -> Polynomial<S> {
        Polynomial::from_coords(self.dim, &self.basis, coords)
    }

    /// Coordinates of `p`, if it lies in the space.
    pub fn coordinates<S: Scalar>(&self, p: &Polynomial<S>) -> Option<Vec<S>> {
        p.coords_in(&self.basis)
    }

    /// Monomials of this space whose jets are independent modulo the spectral
    /// ideal of `spectrum`: the pivot columns of the multi-jet matrix. When the
    /// space is transverse they span a complement of the ideal.
    pub fn complement_of<S: Scalar>(&self, spectrum: &WeightedSpectrum<S>, tol: Tolerance) -> PolySpace {
        let mut a = multi_jet_matrix(spectrum, self);
        let pivots = a.rref(tol);
        PolySpace {
            dim: self.dim,
            basis: pivots.into_iter().map(|j| self.basis[j].clone()).collect(),
        }
    }
}

/// Rows: Taylor coefficients at `(y_i, |a| <= k_i - 1)`; columns: the basis of `space`.
pub fn multi_jet_matrix<S: Scalar>(spectrum: &WeightedSpectrum<S>, space: &PolySpace) -> Matrix<S> {
    let columns: Vec<Vec<S>> = (0..space.len())
        .map(|j| {
            MultiJet::of_polynomial(spectrum, &space.basis_polynomial(j))
                .expect("spectrum and space share the dimension")
                .coordinates()
        })
        .collect();
    Matrix::from_columns(spectrum.ideal_codim(), &columns)
}

fn check_dims<S: Scalar>(spectrum: &WeightedSpectrum<S>, space: &PolySpace) -> Result<()> {
    if spectrum.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            context: "spectrum and polynomial space",
            expected: space.dim(),
            found: spectrum.dim(),
        });
    }
    Ok(())
}

/// Basis of `D ∩ m_Y`: the kernel of the multi-jet map in reduced echelon form.
pub fn spectral_ideal_kernel<S: Scalar>(
    spectrum: &WeightedSpectrum<S>,
    space: &PolySpace,
    tol: Tolerance,
) -> Result<Vec<Polynomial<S>>> {
    check_dims(spectrum, space)?;
    let a = multi_jet_matrix(spectrum, space);
    Ok(a.kernel(tol).iter().map(|v| space.element(v)).collect())
}

/// Rank of the multi-jet map on `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transversality {
    pub rank: usize,
    /// Number of jet conditions, the codimension of `m_Y`.
    pub conditions: usize,
    pub total_weight: u32,
    /// `D + m_Y` is everything: the multi-jet map is onto.
    pub is_transverse: bool,
}

pub fn transversality_rank<S: Scalar>(
    space: &PolySpace,
    spectrum: &WeightedSpectrum<S>,
    tol: Tolerance,
) -> Result<Transversality> {
    check_dims(spectrum, space)?;
    let rank = multi_jet_matrix(spectrum, space).rank(tol);
    let conditions = spectrum.ideal_codim();
    Ok(Transversality {
        rank,
        conditions,
        total_weight: spectrum.total_weight(),
        is_transverse: rank == conditions,
    })
}

/// Coefficient vector `(1, c, c^2, ...)` of the first linear form in the
/// sequence `α_c(x) = sum_i c^(i-1) x_i` that separates the points.
pub fn separating_form<S: Scalar>(spectrum: &WeightedSpectrum<S>) -> Vec<S> {
    let m = spectrum.dim();
    for c in 1i64.. {
        let coeffs: Vec<S> = (0..m).map(|i| S::from_i64(c).pow_n(i as u32)).collect();
        let values: Vec<S> = spectrum
            .points
            .iter()
            .map(|(y, _)| {
                y.iter()
                    .zip(&coeffs)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect();
        let injective = values
            .iter()
            .enumerate()
            .all(|(i, v)| values[..i].iter().all(|w| w != v));
        if injective {
            return coeffs;
        }
    }
    unreachable!("finitely many forms fail to separate finitely many points")
}

/// Polynomial of degree `<= d - 1` with the prescribed jets, built cluster by
/// cluster from a separating linear form.
pub fn interpolate_jets<S: Scalar>(
    spectrum: &WeightedSpectrum<S>,
    targets: &MultiJet<S>,
    tol: Tolerance,
) -> Result<Polynomial<S>> {
    if targets.jets.len() != spectrum.len() {
        return Err(Error::DimensionMismatch {
            context: "multi-jet length",
            expected: spectrum.len(),
            found: targets.jets.len(),
        });
    }
    let m = spectrum.dim();
    let coeffs = separating_form(spectrum);
    let alpha = Polynomial::affine(&coeffs, S::zero());
    let alpha_at: Vec<S> = spectrum.points.iter().map(|(y, _)| alpha.eval_unchecked(y)).collect();
    let mut out = Polynomial::zero(m);
    for (i, ((y, k), target)) in spectrum.points.iter().zip(&targets.jets).enumerate() {
        if target.base() != y.as_slice() || target.order() + 1 != *k {
            return Err(Error::JetMismatch);
        }
        let mut q = Polynomial::one(m);
        for (j, (_, kj)) in spectrum.points.iter().enumerate() {
            if j != i {
                let factor = &alpha - &Polynomial::constant(m, alpha_at[j].clone());
                q = &q * &factor.pow(*kj);
            }
        }
        let q_jet = jet_of(&q, y, k - 1)?;
        let r = target.mul(&q_jet.invert()?)?;
        out = &out + &(&q * &r.to_global());
    }
    let achieved = MultiJet::of_polynomial(spectrum, &out)?;
    if !achieved.approx_eq(targets, tol) {
        return Err(Error::InvalidInput("interpolant misses a prescribed jet".into()));
    }
    Ok(out)
}

/// How the interpolation operator sorted `Y` into clusters around `base`.
#[derive(Clone, Debug, PartialEq)]
pub struct Clusters<S> {
    /// For each base point, the points of `Y` (with repetition) near it.
    pub members: Vec<Vec<Vec<S>>>,
}

fn dist2<S: Scalar>(a: &[S], b: &[S]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x.to_f64() - y.to_f64()).powi(2)).sum()
}

/// Assigns each point of `Y` (repeated by weight) to the nearest base point;
/// every base point `(z, k)` must receive exactly `k` points.
pub fn cluster<S: Scalar>(spectrum: &WeightedSpectrum<S>, base: &WeightedSpectrum<S>) -> Result<Clusters<S>> {
    if spectrum.dim() != base.dim() {
        return Err(Error::DimensionMismatch {
            context: "spectrum and base spectrum",
            expected: base.dim(),
            found: spectrum.dim(),
        });
    }
    let mut members = vec![Vec::new(); base.len()];
    for y in spectrum.expanded() {
        let nearest = base
            .points
            .iter()
            .enumerate()
            .map(|(i, (z, _))| (i, dist2(&y, z)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
            .expect("base is nonempty");
        members[nearest].push(y);
    }
    for (ms, (z, k)) in members.iter().zip(&base.points) {
        if ms.len() != *k as usize {
            return Err(Error::OutsideChart(format!(
                "{} points of the spectrum lie near base point {:?} of weight {}",
                ms.len(),
                z.iter().map(|v| v.to_f64()).collect::<Vec<_>>(),
                k
            )));
        }
    }
    Ok(Clusters { members })
}

/// The local data map `G`: for each cluster `(z_1..z_k)` and `j = 1..k`, all
/// tensor entries of `I(f, [z_1..z_j])`.
pub fn cluster_data<S: Scalar>(f: &SmoothFunction<S>, clusters: &Clusters<S>, mode: IntegrationMode) -> Result<Vec<S>> {
    let mut out = Vec::new();
    for ms in &clusters.members {
        let sigma = AffineSimplex::new(ms.clone())?;
        for j in 0..ms.len() {
            let form = simplex_integral(f, &sigma.prefix(j), mode)?;
            out.extend(form.entries().flat_map(|(_, v)| v.iter().cloned()));
        }
    }
    Ok(out)
}

/// The local interpolation operator: the unique `A(f, Y)` in `complement`
/// whose cluster data agrees with that of `f`. `complement` must be a
/// complement of the spectral ideal of `base`.
pub fn interp_operator<S: Scalar>(
    f: &SmoothFunction<S>,
    spectrum: &WeightedSpectrum<S>,
    base: &WeightedSpectrum<S>,
    complement: &PolySpace,
    mode: IntegrationMode,
    tol: Tolerance,
) -> Result<Polynomial<S>> {
    check_dims(base, complement)?;
    let codim = base.ideal_codim();
    let rank = multi_jet_matrix(base, complement).rank(tol);
    if complement.len() != codim || rank != codim {
        return Err(Error::NotTransverse { rank, required: codim });
    }
    let clusters = cluster(spectrum, base)?;
    let columns = (0..complement.len())
        .map(|j| {
            let b: SmoothFunction<S> = complement.basis_polynomial::<S>(j).into();
            cluster_data(&b, &clusters, IntegrationMode::Exact)
        })
        .collect::<Result<Vec<_>>>()?;
    let g = Matrix::from_columns(codim, &columns);
    let rhs = cluster_data(f, &clusters, mode)?;
    let c = g
        .solve(&rhs, tol)
        .ok_or_else(|| Error::OutsideChart("the local data system is singular".into()))?;
    Ok(complement.element(&c))
}

/// Monomial basis of degree `<= d - 1` on `R^m`, transverse to every spectrum
/// of total weight `d`.
pub fn standard_transversal(dim: usize, total_weight: u32) -> PolySpace {
    PolySpace::up_to_degree(dim, total_weight.saturating_sub(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, Rational};

    type P = Polynomial<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn line(points: &[(i64, u32)]) -> WeightedSpectrum<Rational> {
        WeightedSpectrum::on_line(&points.iter().map(|(y, k)| (q(*y), *k)).collect::<Vec<_>>()).unwrap()
    }

    fn poly1(coeffs: &[i64]) -> P {
        P::from_terms(1, coeffs.iter().enumerate().map(|(k, &c)| (vec![k as u32], q(c)))).unwrap()
    }

    #[test]
    fn spectrum_validation() {
        assert!(WeightedSpectrum::on_line(&[(q(0), 1), (q(0), 2)]).is_err());
        assert!(WeightedSpectrum::on_line(&[(q(0), 0)]).is_err());
        assert_eq!(line(&[(3, 1), (1, 2)]), line(&[(1, 2), (3, 1)]));
        assert_eq!(line(&[(1, 2), (3, 1)]).total_weight(), 3);
    }

    #[test]
    fn kernel_examples() {
        let tol = Tolerance::EXACT;
        assert!(
            spectral_ideal_kernel(&line(&[(0, 2)]), &PolySpace::up_to_degree(1, 1), tol)
                .unwrap()
                .is_empty()
        );
        let k = spectral_ideal_kernel(&line(&[(0, 1), (1, 1)]), &PolySpace::up_to_degree(1, 2), tol).unwrap();
        assert_eq!(k, vec![poly1(&[0, -1, 1])]);
        let t = transversality_rank(&PolySpace::up_to_degree(1, 2), &line(&[(0, 3)]), tol).unwrap();
        assert_eq!(t.rank, 3);
    }

    #[test]
    fn rank_examples() {
        let tol = Tolerance::EXACT;
        let d = PolySpace::from_monomials(1, vec![vec![0], vec![2]]).unwrap();
        let t = transversality_rank(&d, &line(&[(0, 2)]), tol).unwrap();
        assert_eq!((t.rank, t.is_transverse), (1, false));
        let t = transversality_rank(&PolySpace::up_to_degree(1, 0), &line(&[(5, 1)]), tol).unwrap();
        assert_eq!((t.rank, t.is_transverse), (1, true));
    }

    #[test]
    fn interpolation_examples() {
        let tol = Tolerance::EXACT;
        let y = line(&[(0, 2), (1, 1)]);
        let targets = MultiJet::new(
            &y,
            vec![
                Jet::from_local(vec![q(0)], 1, poly1(&[0, 1])).unwrap(),
                Jet::constant(vec![q(1)], 0, q(0)),
            ],
        )
        .unwrap();
        assert_eq!(interpolate_jets(&y, &targets, tol).unwrap(), poly1(&[0, 1, -1]));

        let g = poly1(&[1, -2, 0, 4, 7]);
        let y = line(&[(2, 3)]);
        let p = interpolate_jets(&y, &MultiJet::of_polynomial(&y, &g).unwrap(), tol).unwrap();
        assert_eq!(p, jet_of(&g, &[q(2)], 2).unwrap().to_global());

        let y = WeightedSpectrum::new(vec![
            (vec![q(0), q(0)], 1),
            (vec![q(1), q(0)], 1),
            (vec![q(0), q(1)], 1),
        ])
        .unwrap();
        let jets = y
            .points()
            .iter()
            .zip([0, 1, 2])
            .map(|((p, _), v)| Jet::constant(p.clone(), 0, q(v)))
            .collect();
        let targets = MultiJet::new(&y, jets).unwrap();
        let p = interpolate_jets(&y, &targets, tol).unwrap();
        assert!(p.degree().unwrap_or(0) <= 2);
        assert_eq!(MultiJet::of_polynomial(&y, &p).unwrap(), targets);
    }

    #[test]
    fn operator_examples() {
        let tol = Tolerance::EXACT;
        let y = line(&[(0, 1), (1, 1)]);
        let f = PolySpace::up_to_degree(1, 1);
        let x2mx: SmoothFunction<Rational> = poly1(&[0, -1, 1]).into();
        let a = interp_operator(&x2mx, &y, &y, &f, IntegrationMode::Exact, tol).unwrap();
        assert!(a.is_zero());
        let x3: SmoothFunction<Rational> = poly1(&[0, 0, 0, 1]).into();
        let a = interp_operator(&x3, &y, &y, &f, IntegrationMode::Exact, tol).unwrap();
        assert_eq!(a, poly1(&[0, 1]));
    }

    #[test]
    fn operator_converges_to_confluent_limit() {
        let tol = Tolerance::EXACT;
        let base = line(&[(0, 2)]);
        let f = PolySpace::up_to_degree(1, 1);
        let x2: SmoothFunction<Rational> = poly1(&[0, 0, 1]).into();
        let at_base = interp_operator(&x2, &base, &base, &f, IntegrationMode::Exact, tol).unwrap();
        assert!(at_base.is_zero());
        for e in 1..=6 {
            let n = 2i64.pow(e);
            let y = WeightedSpectrum::on_line(&[(q(0), 1), (Rational::from_ratio(1, n), 1)]).unwrap();
            let a = interp_operator(&x2, &y, &base, &f, IntegrationMode::Exact, tol).unwrap();
            assert_eq!(a, P::monomial(vec![1], Rational::from_ratio(1, n)));
        }
    }

    #[test]
    fn operator_rejects_wrong_clusters() {
        let base = line(&[(0, 2)]);
        let y = line(&[(0, 1)]);
        let f = PolySpace::up_to_degree(1, 1);
        let x2: SmoothFunction<Rational> = poly1(&[0, 0, 1]).into();
        assert!(matches!(
            interp_operator(&x2, &y, &base, &f, IntegrationMode::Exact, Tolerance::EXACT),
            Err(Error::OutsideChart(_))
        ));
        let bad = PolySpace::from_monomials(1, vec![vec![0], vec![2]]).unwrap();
        assert!(matches!(
            interp_operator(&x2, &base, &base, &bad, IntegrationMode::Exact, Tolerance::EXACT),
            Err(Error::NotTransverse { .. })
        ));
    }
}
