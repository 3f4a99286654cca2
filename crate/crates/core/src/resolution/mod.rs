//! Fibrewise simplex resolutions of finite coverings of Δ-complexes.
//!
//! Conventions, fixed once:
//! - An edge `e` goes from `∂_1 e` to `∂_0 e`; its vertices in order are `[∂_1 e, ∂_0 e]`.
//! - A triangle `T` has faces `∂_0 T = [v1, v2]`, `∂_1 T = [v0, v2]`, `∂_2 T = [v0, v1]`.
//! - The monodromy permutation of an edge carries sheet `i` over its first
//!   vertex to sheet `π_e(i)` over its second vertex. On a triangle the
//!   cocycle condition reads `π_{∂0 T} ∘ π_{∂2 T} = π_{∂1 T}`.
//! - Cochains on a cell take values in the fibre over its first vertex.

mod fixtures;
mod spectral;

pub use fixtures::{fixtures, CoverFixture};
pub use spectral::{run_spectral_sequence, total_cohomology, FilteredCochainComplex, SSPage, SpectralSequence};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, Tolerance};

/// A finite Δ-complex of dimension at most two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaComplex {
    vertices: usize,
    /// `(from, to)` per edge, i.e. `(∂_1 e, ∂_0 e)`.
    edges: Vec<[usize; 2]>,
    /// `(∂_0 T, ∂_1 T, ∂_2 T)` per triangle.
    triangles: Vec<[usize; 3]>,
}

impl DeltaComplex {
    pub fn new(vertices: usize, edges: Vec<[usize; 2]>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        for (i, e) in edges.iter().enumerate() {
            if e.iter().any(|&v| v >= vertices) {
                return Err(Error::InvalidComplex(format!("edge {i} has a vertex out of range")));
            }
        }
        for (i, t) in triangles.iter().enumerate() {
            if t.iter().any(|&e| e >= edges.len()) {
                return Err(Error::InvalidComplex(format!("triangle {i} has an edge out of range")));
            }
            let [d0, d1, d2] = t.map(|e| edges[e]);
            // simplicial identities ∂_i ∂_j = ∂_{j-1} ∂_i for i < j
            let ok = d1[1] == d0[1] && d2[1] == d0[0] && d2[0] == d1[0];
            if !ok {
                return Err(Error::InvalidComplex(format!(
                    "faces of triangle {i} do not fit together"
                )));
            }
        }
        Ok(DeltaComplex {
            vertices,
            edges,
            triangles,
        })
    }

    pub fn dim(&self) -> usize {
        if !self.triangles.is_empty() {
            2
        } else if !self.edges.is_empty() {
            1
        } else {
            0
        }
    }

    pub fn cell_count(&self, k: usize) -> usize {
        match k {
            0 => self.vertices,
            1 => self.edges.len(),
            2 => self.triangles.len(),
            _ => 0,
        }
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Face `∂_i` of the `k`-cell `c`, as an index of a `(k-1)`-cell.
    pub fn face(&self, k: usize, c: usize, i: usize) -> usize {
        match k {
            1 => self.edges[c][1 - i],
            2 => self.triangles[c][i],
            _ => panic!("cells of dimension {k} have no faces"),
        }
    }

    /// The first vertex of a cell.
    pub fn leading_vertex(&self, k: usize, c: usize) -> usize {
        match k {
            0 => c,
            1 => self.edges[c][0],
            _ => self.edges[self.triangles[c][2]][0],
        }
    }

    /// The edge from vertex 0 to vertex 1 of a cell of dimension at least one.
    pub fn leading_edge(&self, k: usize, c: usize) -> usize {
        match k {
            1 => c,
            2 => self.triangles[c][2],
            _ => panic!("vertices have no leading edge"),
        }
    }

    fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }
}

/// Permutation representation of a covering: one permutation of the sheets
/// per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monodromy {
    degree: usize,
    perms: Vec<Vec<usize>>,
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a ∘ b)(i) = a(b(i))
    b.iter().map(|&i| a[i]).collect()
}

impl Monodromy {
    pub fn new(base: &DeltaComplex, degree: usize, perms: Vec<Vec<usize>>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("covering degree must be positive".into()));
        }
        if perms.len() != base.edges.len() {
            return Err(Error::DimensionMismatch {
                context: "monodromy edges",
                expected: base.edges.len(),
                found: perms.len(),
            });
        }
        for (e, p) in perms.iter().enumerate() {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::InvalidInput(format!(
                    "edge {e} does not carry a permutation of {degree} sheets"
                )));
            }
        }
        for (t, faces) in base.triangles.iter().enumerate() {
            if compose(&perms[faces[0]], &perms[faces[2]]) != perms[faces[1]] {
                return Err(Error::CocycleViolation(t));
            }
        }
        Ok(Monodromy { degree, perms })
    }

    /// The trivial covering with `degree` sheets.
    pub fn trivial(base: &DeltaComplex, degree: usize) -> Self {
        Monodromy {
            degree,
            perms: vec![(0..degree).collect(); base.edges.len()],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perm(&self, edge: usize) -> &[usize] {
        &self.perms[edge]
    }
}

/// Subsets of the sheets as bit masks.
fn subsets_of_size(n: usize, size: usize) -> Vec<u32> {
    (0u32..(1 << n)).filter(|s| s.count_ones() as usize == size).collect()
}

fn elements(s: u32) -> Vec<usize> {
    (0..32).filter(|i| s & (1 << i) != 0).collect()
}

fn image(perm: &[usize], s: u32) -> u32 {
    elements(s).into_iter().fold(0, |acc, i| acc | (1 << perm[i]))
}

/// Sign of the permutation `perm` induces between the sorted elements of `s`
/// and the sorted elements of its image.
fn induced_sign(perm: &[usize], s: u32) -> i64 {
    let imgs: Vec<usize> = elements(s).into_iter().map(|i| perm[i]).collect();
    let mut inversions = 0;
    for i in 0..imgs.len() {
        for j in i + 1..imgs.len() {
            if imgs[i] > imgs[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A local coefficient system: an invertible matrix per edge transporting the
/// fibre over its first vertex to the fibre over its second vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalSystem<F: Field> {
    rank: usize,
    transports: Vec<Matrix<F>>,
    inverses: Vec<Matrix<F>>,
}

impl<F: Field> LocalSystem<F> {
    pub fn new(base: &DeltaComplex, rank: usize, transports: Vec<Matrix<F>>) -> Result<Self> {
        if transports.len() != base.edges.len() {
            return Err(Error::DimensionMismatch {
                context: "local system edges",
                expected: base.edges.len(),
                found: transports.len(),
            });
        }
        let mut inverses = Vec::with_capacity(transports.len());
        for (e, g) in transports.iter().enumerate() {
            if g.rows() != rank || g.cols() != rank {
                return Err(Error::DimensionMismatch {
                    context: "local system transport",
                    expected: rank,
                    found: g.rows(),
                });
            }
            inverses.push(
                g.inverse(Tolerance::EXACT)
                    .ok_or_else(|| Error::InvalidInput(format!("transport on edge {e} is singular")))?,
            );
        }
        for (t, faces) in base.triangles.iter().enumerate() {
            if transports[faces[0]].mul(&transports[faces[2]]) != transports[faces[1]] {
                return Err(Error::CocycleViolation(t));
            }
        }
        Ok(LocalSystem {
            rank,
            transports,
            inverses,
        })
    }

    pub fn trivial(base: &DeltaComplex, rank: usize) -> Self {
        LocalSystem {
            rank,
            transports: vec![Matrix::identity(rank); base.edges.len()],
            inverses: vec![Matrix::identity(rank); base.edges.len()],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn transport(&self, edge: usize) -> &Matrix<F> {
        &self.transports[edge]
    }
}

/// The covering whose fibre over a vertex is the set of `(p+1)`-element
/// subsets of the sheets, and its sign system.
pub fn build_subset_cover<F: Field>(
    base: &DeltaComplex,
    mono: &Monodromy,
    p: usize,
) -> Result<(DeltaComplex, LocalSystem<F>)> {
    let n = mono.degree;
    if p >= n {
        return Err(Error::IndexOutOfRange { index: p, max: n - 1 });
    }
    let subsets = subsets_of_size(n, p + 1);
    let pos: HashMap<u32, usize> = subsets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let ns = subsets.len();
    let vertices = base.vertices * ns;
    let mut edges = Vec::with_capacity(base.edges.len() * ns);
    let mut signs = Vec::with_capacity(edges.capacity());
    for (e, &[from, to]) in base.edges.iter().enumerate() {
        let perm = mono.perm(e);
        for &s in &subsets {
            edges.push([from * ns + pos[&s], to * ns + pos[&image(perm, s)]]);
            let mut g = Matrix::zeros(1, 1);
            g[(0, 0)] = F::from_i64(induced_sign(perm, s));
            signs.push(g);
        }
    }
    let mut triangles = Vec::with_capacity(base.triangles.len() * ns);
    for faces in &base.triangles {
        let lead = mono.perm(faces[2]);
        for &s in &subsets {
            triangles.push([
                faces[0] * ns + pos[&image(lead, s)],
                faces[1] * ns + pos[&s],
                faces[2] * ns + pos[&s],
            ]);
        }
    }
    let cover = DeltaComplex::new(vertices, edges, triangles)?;
    let system = LocalSystem::new(&cover, 1, signs)?;
    Ok((cover, system))
}

/// Coboundary `C^k -> C^{k+1}` with coefficients in a local system.
pub fn twisted_coboundary<F: Field>(c: &DeltaComplex, sys: &LocalSystem<F>, k: usize) -> Matrix<F> {
    let w = sys.rank;
    let rows = c.cell_count(k + 1) * w;
    let cols = c.cell_count(k) * w;
    let mut d: Matrix<F> = Matrix::zeros(rows, cols);
    for tau in 0..c.cell_count(k + 1) {
        let g_inv = &sys.inverses[c.leading_edge(k + 1, tau)];
        for i in 0..=k + 1 {
            let face = c.face(k + 1, tau, i);
            for a in 0..w {
                for b in 0..w {
                    let v = if i == 0 {
                        g_inv[(a, b)].clone()
                    } else if a == b {
                        F::from_i64(if i % 2 == 0 { 1 } else { -1 })
                    } else {
                        continue;
                    };
                    let cur = d[(tau * w + a, face * w + b)].clone();
                    d[(tau * w + a, face * w + b)] = cur + v;
                }
            }
        }
    }
    d
}

/// Dimensions of `H^k(c; sys)` for `k = 0..=dim c`.
pub fn twisted_cohomology<F: Field>(c: &DeltaComplex, sys: &LocalSystem<F>) -> Result<Vec<usize>> {
    if sys.transports.len() != c.edges.len() {
        return Err(Error::DimensionMismatch {
            context: "local system base",
            expected: c.edges.len(),
            found: sys.transports.len(),
        });
    }
    let top = c.dim();
    let ranks: Vec<usize> = (0..top)
        .map(|k| twisted_coboundary(c, sys, k).rank(Tolerance::EXACT))
        .collect();
    Ok((0..=top)
        .map(|k| {
            let dim = c.cell_count(k) * sys.rank;
            let out = if k < top { ranks[k] } else { 0 };
            let inc = if k > 0 { ranks[k - 1] } else { 0 };
            dim - out - inc
        })
        .collect())
}

/// Generator of the resolution complex: a base cell and a nonempty subset of
/// the sheets over its first vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResolutionCell {
    pub base_dim: usize,
    pub cell: usize,
    pub subset: u32,
}

impl ResolutionCell {
    pub fn fibre_dim(&self) -> usize {
        self.subset.count_ones() as usize - 1
    }

    pub fn degree(&self) -> usize {
        self.base_dim + self.fibre_dim()
    }

    pub fn label(&self) -> String {
        let sheets: Vec<String> = elements(self.subset).iter().map(|i| (i + 1).to_string()).collect();
        format!("c{}_{}[{}]", self.base_dim, self.cell, sheets.join(","))
    }
}

/// Cellular cochains of the simplex bundle `Δ_Y X`, filtered by fibre
/// dimension.
pub fn build_resolution_complex<F: Field>(base: &DeltaComplex, mono: &Monodromy) -> Result<FilteredCochainComplex<F>> {
    let n = mono.degree;
    let top = base.dim() + n - 1;
    let mut gens: Vec<Vec<ResolutionCell>> = vec![Vec::new(); top + 1];
    for k in 0..=base.dim() {
        for cell in 0..base.cell_count(k) {
            for size in 1..=n {
                for subset in subsets_of_size(n, size) {
                    let g = ResolutionCell {
                        base_dim: k,
                        cell,
                        subset,
                    };
                    gens[g.degree()].push(g);
                }
            }
        }
    }
    let index: HashMap<ResolutionCell, usize> = gens
        .iter()
        .flat_map(|gs| gs.iter().enumerate().map(|(i, g)| (*g, i)))
        .collect();
    let mut ds = Vec::with_capacity(top);
    for deg in 0..top {
        let mut d = Matrix::zeros(gens[deg + 1].len(), gens[deg].len());
        for (row, target) in gens[deg + 1].iter().enumerate() {
            let k = target.base_dim;
            if k >= 1 {
                // base direction
                let e = base.leading_edge(k, target.cell);
                let perm = mono.perm(e);
                let src = ResolutionCell {
                    base_dim: k - 1,
                    cell: base.face(k, target.cell, 0),
                    subset: image(perm, target.subset),
                };
                d[(row, index[&src])] += F::from_i64(induced_sign(perm, target.subset));
                for i in 1..=k {
                    let src = ResolutionCell {
                        base_dim: k - 1,
                        cell: base.face(k, target.cell, i),
                        subset: target.subset,
                    };
                    d[(row, index[&src])] += F::from_i64(if i % 2 == 0 { 1 } else { -1 });
                }
            }
            if target.subset.count_ones() >= 2 {
                // fibre direction, with the Koszul sign of the base degree
                let base_sign = if k % 2 == 0 { 1 } else { -1 };
                for (j, s) in elements(target.subset).into_iter().enumerate() {
                    let src = ResolutionCell {
                        base_dim: k,
                        cell: target.cell,
                        subset: target.subset & !(1 << s),
                    };
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    d[(row, index[&src])] += F::from_i64(base_sign * sign);
                }
            }
        }
        ds.push(d);
    }
    let filtration = gens
        .iter()
        .map(|gs| gs.iter().map(|g| g.fibre_dim() as i64).collect())
        .collect();
    let labels = gens.iter().map(|gs| gs.iter().map(|g| g.label()).collect()).collect();
    FilteredCochainComplex::new(gens.iter().map(|g| g.len()).collect(), ds, filtration, labels)
}

/// Cohomology of the base with constant coefficients.
pub fn base_cohomology<F: Field>(base: &DeltaComplex) -> Vec<usize> {
    twisted_cohomology(base, &LocalSystem::<F>::trivial(base, 1)).expect("trivial system fits its base")
}

/// Euler characteristic of the resolution complex, which equals that of the
/// base times that of a simplex.
pub fn expected_euler_characteristic(base: &DeltaComplex) -> i64 {
    base.euler_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, F2};

    fn circle() -> DeltaComplex {
        DeltaComplex::new(1, vec![[0, 0]], vec![]).unwrap()
    }

    #[test]
    fn subset_cover_examples() {
        let c = circle();
        let swap = Monodromy::new(&c, 2, vec![vec![1, 0]]).unwrap();
        let (cover, sys) = build_subset_cover::<Rational>(&c, &swap, 0).unwrap();
        assert_eq!((cover.cell_count(0), cover.cell_count(1)), (2, 2));
        assert_eq!(twisted_cohomology(&cover, &sys).unwrap(), vec![1, 1]);
        let (cover, sys) = build_subset_cover::<Rational>(&c, &swap, 1).unwrap();
        assert_eq!(cover.cell_count(0), 1);
        assert_eq!(sys.transport(0)[(0, 0)], Rational::from_integer((-1).into()));
        assert_eq!(twisted_cohomology(&cover, &sys).unwrap(), vec![0, 0]);
        let (cover, sys) = build_subset_cover::<F2>(&c, &swap, 1).unwrap();
        assert_eq!(twisted_cohomology(&cover, &sys).unwrap(), vec![1, 1]);

        let cyc = Monodromy::new(&c, 3, vec![vec![1, 2, 0]]).unwrap();
        let (_, sys) = build_subset_cover::<Rational>(&c, &cyc, 2).unwrap();
        assert_eq!(sys.transport(0)[(0, 0)], Rational::from_integer(1.into()));
        assert!(build_subset_cover::<Rational>(&c, &cyc, 3).is_err());
    }

    #[test]
    fn cocycle_is_enforced() {
        let c = DeltaComplex::new(1, vec![[0, 0], [0, 0], [0, 0]], vec![[1, 2, 0]]).unwrap();
        assert_eq!(
            Monodromy::new(&c, 2, vec![vec![1, 0], vec![1, 0], vec![1, 0]]).unwrap_err(),
            Error::CocycleViolation(0)
        );
        assert!(Monodromy::new(&c, 2, vec![vec![1, 0], vec![0, 1], vec![1, 0]]).is_ok());
        assert!(DeltaComplex::new(3, vec![[0, 1], [0, 2], [1, 2]], vec![[0, 1, 2]]).is_err());
    }

    #[test]
    fn double_cover_resolution() {
        let c = circle();
        let swap = Monodromy::new(&c, 2, vec![vec![1, 0]]).unwrap();
        let res = build_resolution_complex::<Rational>(&c, &swap).unwrap();
        assert_eq!(res.dims(), &[2, 3, 1]);
        assert_eq!(total_cohomology(&res), vec![1, 1, 0]);
        let trivial = Monodromy::trivial(&c, 1);
        let res = build_resolution_complex::<Rational>(&c, &trivial).unwrap();
        assert_eq!(res.dims(), &[1, 1]);
        assert_eq!(total_cohomology(&res), vec![1, 1]);
    }

    fn check_fixtures<F: Field>() {
        for fx in fixtures() {
            let res = build_resolution_complex::<F>(&fx.base, &fx.mono).unwrap();
            let ss = run_spectral_sequence(&res);
            assert!(ss.transitions_consistent(), "{}", fx.name);
            let e1 = ss.page(1).unwrap();
            for p in 0..fx.mono.degree() {
                let (cover, sys) = build_subset_cover::<F>(&fx.base, &fx.mono, p).unwrap();
                let h = twisted_cohomology(&cover, &sys).unwrap();
                for (q, &dim) in h.iter().enumerate() {
                    assert_eq!(e1.dim(p as i64, q as i64), dim, "{} p={p} q={q}", fx.name);
                }
            }
            let total = total_cohomology(&res);
            assert_eq!(ss.limit_totals(res.top_degree()), total, "{}", fx.name);
            let mut base = base_cohomology::<F>(&fx.base);
            base.resize(total.len(), 0);
            assert_eq!(total, base, "{}", fx.name);
            assert_eq!(res.euler_characteristic(), expected_euler_characteristic(&fx.base));
        }
    }

    #[test]
    fn fixtures_over_both_fields() {
        check_fixtures::<Rational>();
        check_fixtures::<F2>();
        for fx in fixtures() {
            assert_eq!(base_cohomology::<Rational>(&fx.base), fx.base_betti, "{}", fx.name);
        }
    }

    #[test]
    fn double_cover_pages() {
        let c = circle();
        let swap = Monodromy::new(&c, 2, vec![vec![1, 0]]).unwrap();
        let ss = run_spectral_sequence(&build_resolution_complex::<Rational>(&c, &swap).unwrap());
        let e1 = ss.page(1).unwrap();
        assert_eq!((e1.dim(0, 0), e1.dim(0, 1), e1.dim(1, 0), e1.dim(1, 1)), (1, 1, 0, 0));
        let ss = run_spectral_sequence(&build_resolution_complex::<F2>(&c, &swap).unwrap());
        let e1 = ss.page(1).unwrap();
        assert_eq!((e1.dim(0, 0), e1.dim(0, 1), e1.dim(1, 0), e1.dim(1, 1)), (1, 1, 1, 1));
        assert!(e1.has_nonzero_differential());
        assert_eq!(ss.limit_totals(2), vec![1, 1, 0]);
    }
}
