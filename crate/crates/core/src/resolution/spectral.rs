//! Spectral sequence of a filtered cochain complex with a basis adapted to
//! the filtration.
//!
//! `F^p C^n` is spanned by the generators of degree `n` with filtration index
//! at least `p`; the differential may only raise the index. Pages use
//! cohomological indexing, `d_r : E_r^{p,q} -> E_r^{p+r,q-r+1}`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, Tolerance};

const EXACT: Tolerance = Tolerance::EXACT;

#[derive(Clone, Debug, PartialEq)]
pub struct FilteredCochainComplex<F: Field> {
    dims: Vec<usize>,
    d: Vec<Matrix<F>>,
    filtration: Vec<Vec<i64>>,
    labels: Vec<Vec<String>>,
}

impl<F: Field> FilteredCochainComplex<F> {
    /// `d[n]` maps `C^n` to `C^{n+1}`; missing trailing maps are zero.
    pub fn new(
        dims: Vec<usize>,
        d: Vec<Matrix<F>>,
        filtration: Vec<Vec<i64>>,
        labels: Vec<Vec<String>>,
    ) -> Result<Self> {
        if filtration.len() != dims.len() || d.len() > dims.len().saturating_sub(1) {
            return Err(Error::DimensionMismatch {
                context: "filtered complex degrees",
                expected: dims.len(),
                found: filtration.len(),
            });
        }
        for (n, f) in filtration.iter().enumerate() {
            if f.len() != dims[n] {
                return Err(Error::DimensionMismatch {
                    context: "filtration indices",
                    expected: dims[n],
                    found: f.len(),
                });
            }
        }
        let mut d = d;
        while d.len() + 1 < dims.len() {
            let n = d.len();
            d.push(Matrix::zeros(dims[n + 1], dims[n]));
        }
        for (n, m) in d.iter().enumerate() {
            if m.rows() != dims[n + 1] || m.cols() != dims[n] {
                return Err(Error::DimensionMismatch {
                    context: "differential shape",
                    expected: dims[n],
                    found: m.cols(),
                });
            }
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    if !m[(i, j)].is_zero() && filtration[n + 1][i] < filtration[n][j] {
                        return Err(Error::FiltrationViolation(n));
                    }
                }
            }
        }
        for n in 1..d.len() {
            if !d[n].mul(&d[n - 1]).is_zero_within(EXACT) {
                return Err(Error::NotAComplex(n - 1));
            }
        }
        let labels = if labels.is_empty() {
            dims.iter()
                .enumerate()
                .map(|(n, &k)| (0..k).map(|i| format!("e{n}_{i}")).collect())
                .collect()
        } else {
            labels
        };
        Ok(FilteredCochainComplex {
            dims,
            d,
            filtration,
            labels,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn differential(&self, n: usize) -> &Matrix<F> {
        &self.d[n]
    }

    pub fn filtration(&self, n: usize) -> &[i64] {
        &self.filtration[n]
    }

    pub fn labels(&self, n: usize) -> &[String] {
        &self.labels[n]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(n, &k)| if n % 2 == 0 { k as i64 } else { -(k as i64) })
            .sum()
    }

    fn filtration_range(&self) -> Option<(i64, i64)> {
        let all = self.filtration.iter().flatten();
        Some((*all.clone().min()?, *all.max()?))
    }

    fn dim(&self, n: i64) -> usize {
        if n < 0 {
            0
        } else {
            self.dims.get(n as usize).copied().unwrap_or(0)
        }
    }

    /// `d` applied to a vector of `C^n`; zero above the top degree.
    fn apply(&self, n: i64, x: &[F]) -> Vec<F> {
        match self.d.get(n as usize) {
            Some(m) => m.mul_vec(x),
            None => vec![F::zero(); self.dim(n + 1)],
        }
    }

    /// Basis of `Z_r^{p,n} = {x in F^p C^n : d x in F^{p+r} C^{n+1}}`, with
    /// `Z_{-1}^p = F^p`.
    fn cycles(&self, n: i64, p: i64, r: i64) -> Vec<Vec<F>> {
        let dim = self.dim(n);
        if dim == 0 {
            return Vec::new();
        }
        let filt = &self.filtration[n as usize];
        let cols: Vec<usize> = (0..dim).filter(|&j| filt[j] >= p).collect();
        let mut out = Vec::new();
        if cols.is_empty() {
            return out;
        }
        let embed = |local: &[F]| {
            let mut v = vec![F::zero(); dim];
            for (k, &j) in cols.iter().enumerate() {
                v[j] = local[k].clone();
            }
            v
        };
        let rows: Vec<usize> = if r < 0 || (n as usize) >= self.d.len() {
            Vec::new()
        } else {
            let next = &self.filtration[n as usize + 1];
            (0..next.len()).filter(|&i| next[i] < p + r).collect()
        };
        if rows.is_empty() {
            for k in 0..cols.len() {
                let mut e = vec![F::zero(); cols.len()];
                e[k] = F::one();
                out.push(embed(&e));
            }
            return out;
        }
        let m = self.d[n as usize].select_rows(&rows).select_columns(&cols);
        m.kernel(EXACT).iter().map(|k| embed(k)).collect()
    }

    /// Basis of `Z_{r-1}^{p+1,n} + d Z_{r-1}^{p-r+1,n-1}`.
    fn boundaries(&self, n: i64, p: i64, r: i64) -> Vec<Vec<F>> {
        let mut gens = self.cycles(n, p + 1, r - 1);
        if n >= 1 {
            for z in self.cycles(n - 1, p - r + 1, r - 1) {
                gens.push(self.apply(n - 1, &z));
            }
        }
        basis_of(self.dim(n), &gens)
    }
}

fn basis_of<F: Field>(dim: usize, vecs: &[Vec<F>]) -> Vec<Vec<F>> {
    if vecs.is_empty() || dim == 0 {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(dim, vecs.to_vec());
    let rank = m.rref(EXACT).len();
    (0..rank).map(|i| m.row(i).to_vec()).collect()
}

fn span_rank<F: Field>(dim: usize, vecs: &[Vec<F>]) -> usize {
    basis_of(dim, vecs).len()
}

/// Dimensions of the cohomology of the unfiltered complex, by degree.
pub fn total_cohomology<F: Field>(c: &FilteredCochainComplex<F>) -> Vec<usize> {
    let ranks: Vec<usize> = c.d.iter().map(|m| m.rank(EXACT)).collect();
    (0..c.dims.len())
        .map(|n| {
            let out = ranks.get(n).copied().unwrap_or(0);
            let inc = if n > 0 { ranks[n - 1] } else { 0 };
            c.dims[n] - out - inc
        })
        .collect()
}

/// One page: `E_r^{p,q}` dimensions and the differentials leaving each
/// position, in the bases of chosen representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct SSPage<F: Field> {
    pub r: usize,
    pub dims: BTreeMap<(i64, i64), usize>,
    pub differentials: BTreeMap<(i64, i64), Matrix<F>>,
}

impl<F: Field> SSPage<F> {
    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Rank of `d_r` leaving `(p, q)`.
    pub fn rank_from(&self, p: i64, q: i64) -> usize {
        self.differentials.get(&(p, q)).map_or(0, |m| m.rank(EXACT))
    }

    pub fn has_nonzero_differential(&self) -> bool {
        self.differentials.values().any(|m| !m.is_zero_within(EXACT))
    }

    /// `Σ_p dim E^{p, n-p}`.
    pub fn total(&self, n: i64) -> usize {
        self.dims.iter().filter(|((p, q), _)| p + q == n).map(|(_, &v)| v).sum()
    }

    /// Homology dimensions of `(E_r, d_r)` computed from ranks alone.
    pub fn homology_dims(&self) -> BTreeMap<(i64, i64), usize> {
        let r = self.r as i64;
        self.dims
            .iter()
            .map(|(&(p, q), &dim)| {
                let out = self.rank_from(p, q);
                let inc = self.rank_from(p - r, q + r - 1);
                ((p, q), dim - out - inc)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSequence<F: Field> {
    pub pages: Vec<SSPage<F>>,
    /// `dim E_∞^{p,q}`.
    pub limit: BTreeMap<(i64, i64), usize>,
}

impl<F: Field> SpectralSequence<F> {
    pub fn page(&self, r: usize) -> Option<&SSPage<F>> {
        self.pages.iter().find(|pg| pg.r == r)
    }

    /// `Σ_p dim E_∞^{p,n-p}` for `n = 0..=top`.
    pub fn limit_totals(&self, top: usize) -> Vec<usize> {
        (0..=top as i64)
            .map(|n| {
                self.limit
                    .iter()
                    .filter(|((p, q), _)| p + q == n)
                    .map(|(_, &v)| v)
                    .sum()
            })
            .collect()
    }

    /// Whether every page is the homology of its predecessor and dimensions
    /// never increase.
    pub fn transitions_consistent(&self) -> bool {
        self.pages.windows(2).all(|w| {
            let h = w[0].homology_dims();
            h.iter().all(|(k, &v)| w[1].dims.get(k).copied().unwrap_or(0) == v)
                && w[1]
                    .dims
                    .iter()
                    .all(|(k, &v)| v <= w[0].dims.get(k).copied().unwrap_or(0))
        }) && self.pages.last().is_none_or(|pg| {
            pg.dims
                .iter()
                .all(|(k, &v)| self.limit.get(k).copied().unwrap_or(0) == v)
        })
    }
}

struct Position<F> {
    denominators: Vec<Vec<F>>,
    reps: Vec<Vec<F>>,
}

/// Computes pages `E_0, E_1, ...` until the differentials can no longer be
/// nonzero, then records `E_∞`.
pub fn run_spectral_sequence<F: Field>(c: &FilteredCochainComplex<F>) -> SpectralSequence<F> {
    let Some((pmin, pmax)) = c.filtration_range() else {
        return SpectralSequence {
            pages: Vec::new(),
            limit: BTreeMap::new(),
        };
    };
    let top = c.top_degree() as i64;
    // d_r vanishes once r exceeds the filtration length
    let last = (pmax - pmin + 1) as usize;
    let mut pages = Vec::new();
    for r in 0..=last {
        let ri = r as i64;
        let mut positions: BTreeMap<(i64, i64), Position<F>> = BTreeMap::new();
        for n in 0..=top {
            for p in pmin..=pmax {
                let dim = c.dim(n);
                let z = c.cycles(n, p, ri);
                let b = c.boundaries(n, p, ri);
                let mut basis = b.clone();
                let mut reps = Vec::new();
                let mut rank = basis.len();
                for v in z {
                    basis.push(v.clone());
                    let nr = span_rank(dim, &basis);
                    if nr > rank {
                        rank = nr;
                        reps.push(v);
                    } else {
                        basis.pop();
                    }
                }
                positions.insert((p, n - p), Position { denominators: b, reps });
            }
        }
        let mut differentials = BTreeMap::new();
        for (&(p, q), pos) in &positions {
            let target = (p + ri, q - ri + 1);
            let Some(tpos) = positions.get(&target) else {
                continue;
            };
            if pos.reps.is_empty() || tpos.reps.is_empty() {
                continue;
            }
            let n = p + q;
            let mut cols = tpos.denominators.clone();
            cols.extend(tpos.reps.iter().cloned());
            let system = Matrix::from_columns(c.dim(n + 1), &cols);
            let nb = tpos.denominators.len();
            let mut m = Matrix::zeros(tpos.reps.len(), pos.reps.len());
            for (j, x) in pos.reps.iter().enumerate() {
                let dx = c.apply(n, x);
                let coeffs = system
                    .solve(&dx, EXACT)
                    .expect("image of a representative lies in the target cycles");
                for i in 0..tpos.reps.len() {
                    m[(i, j)] = coeffs[nb + i].clone();
                }
            }
            differentials.insert((p, q), m);
        }
        let dims = positions
            .iter()
            .filter(|(_, pos)| !pos.reps.is_empty())
            .map(|(&k, pos)| (k, pos.reps.len()))
            .collect();
        pages.push(SSPage { r, dims, differentials });
    }
    let limit = pages.last().expect("at least one page").homology_dims();
    let limit = limit.into_iter().filter(|&(_, v)| v > 0).collect();
    SpectralSequence { pages, limit }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn single_column_is_cohomology() {
        // interval: two vertices, one edge
        let d = Matrix::from_rows(2, vec![vec![q(-1), q(1)]]);
        let c = FilteredCochainComplex::new(vec![2, 1], vec![d], vec![vec![0, 0], vec![0]], vec![]).unwrap();
        let ss = run_spectral_sequence(&c);
        assert_eq!(ss.page(1).unwrap().dim(0, 0), 1);
        assert_eq!(ss.limit_totals(1), total_cohomology(&c));
        assert!(ss.transitions_consistent());
    }

    #[test]
    fn cancelling_pair_across_filtration() {
        let d = Matrix::from_rows(1, vec![vec![q(1)]]);
        let c = FilteredCochainComplex::new(vec![1, 1], vec![d], vec![vec![0], vec![1]], vec![]).unwrap();
        let ss = run_spectral_sequence(&c);
        assert_eq!(ss.page(1).unwrap().dim(0, 0), 1);
        assert_eq!(ss.page(1).unwrap().rank_from(0, 0), 1);
        assert!(ss.limit.is_empty());
        assert!(ss.transitions_consistent());
    }

    #[test]
    fn rejects_bad_complexes() {
        let d = Matrix::from_rows(1, vec![vec![q(1)]]);
        assert_eq!(
            FilteredCochainComplex::new(vec![1, 1], vec![d.clone()], vec![vec![1], vec![0]], vec![]).unwrap_err(),
            Error::FiltrationViolation(0)
        );
        let c = FilteredCochainComplex::new(
            vec![1, 1, 1],
            vec![d.clone(), d],
            vec![vec![0], vec![0], vec![0]],
            vec![],
        );
        assert_eq!(c.unwrap_err(), Error::NotAComplex(0));
    }
}
