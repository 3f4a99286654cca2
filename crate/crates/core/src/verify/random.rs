//! Seeded generators for the randomized suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hermite::WeightedSpectrum;
use crate::linalg::Matrix;
use crate::poly::{monomials_up_to, Polynomial};
use crate::scalar::{Field, Rational, Tolerance};

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// `p / q` with `|p| <= num`, `1 <= q <= den`.
pub fn rational(rng: &mut impl Rng, num: i64, den: i64) -> Rational {
    Rational::new(rng.gen_range(-num..=num).into(), rng.gen_range(1..=den).into())
}

pub fn point(rng: &mut impl Rng, m: usize, num: i64, den: i64) -> Vec<Rational> {
    (0..m).map(|_| rational(rng, num, den)).collect()
}

/// A polynomial with up to `terms` random monomials of degree `<= degree`.
pub fn polynomial(rng: &mut impl Rng, m: usize, degree: u32, terms: usize) -> Polynomial<Rational> {
    let monos = monomials_up_to(m, degree);
    let picked: Vec<_> = monos.choose_multiple(rng, terms.min(monos.len())).cloned().collect();
    let coeffs: Vec<_> = picked.iter().map(|_| rational(rng, 5, 3)).collect();
    Polynomial::from_terms(m, picked.into_iter().zip(coeffs)).expect("exponents have length m")
}

/// A polynomial of exact total degree `degree` in the first variable mix.
pub fn polynomial_of_degree(rng: &mut impl Rng, m: usize, degree: u32, terms: usize) -> Polynomial<Rational> {
    loop {
        let mut p = polynomial(rng, m, degree, terms);
        let mut lead = vec![0; m];
        lead[rng.gen_range(0..m)] = degree;
        p = &p + &Polynomial::monomial(lead, Rational::from_i64(rng.gen_range(1..=3)));
        if p.degree() == Some(degree) {
            return p;
        }
    }
}

/// A weighted spectrum with distinct points and total weight `<= max_weight`.
pub fn spectrum(rng: &mut impl Rng, m: usize, max_weight: u32) -> WeightedSpectrum<Rational> {
    let total = rng.gen_range(1..=max_weight);
    let mut weights = Vec::new();
    let mut left = total;
    while left > 0 {
        let k = rng.gen_range(1..=left.min(3));
        weights.push(k);
        left -= k;
    }
    let mut points: Vec<(Vec<Rational>, u32)> = Vec::new();
    for k in weights {
        loop {
            let y = point(rng, m, 4, 2);
            if points.iter().all(|(z, _)| *z != y) {
                points.push((y, k));
                break;
            }
        }
    }
    WeightedSpectrum::new(points).expect("distinct points with positive weights")
}

/// A random invertible matrix with small integer entries.
pub fn invertible(rng: &mut impl Rng, m: usize) -> Matrix<Rational> {
    loop {
        let rows = (0..m)
            .map(|_| (0..m).map(|_| Rational::from_i64(rng.gen_range(-3..=3))).collect())
            .collect();
        let a = Matrix::from_rows(m, rows);
        if a.rank(Tolerance::EXACT) == m {
            return a;
        }
    }
}
