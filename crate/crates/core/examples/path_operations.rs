//! Time-dependent families: splitting off the endpoints, reversal and smooth
//! concatenation.

use jetform::path::{concat_mu, decompose, one_sided_derivatives, reverse_iota, BumpProfile, TimePath};
use jetform::poly::Polynomial;
use jetform::scalar::{Field, Rational, Tolerance};

fn main() -> jetform::Result<()> {
    let q = Rational::from_i64;
    // f(x, t) = x^2 t^3 + 2 x t + 5, with t the last variable
    let f = Polynomial::from_terms(2, vec![(vec![2, 3], q(1)), (vec![1, 1], q(2)), (vec![0, 0], q(5))])?;
    let path = TimePath::polynomial(f)?;
    let (split, start, end) = decompose(&path)?;
    println!("f(., 0) = {start}");
    println!("f(., 1) = {end}");
    println!("p(f)    = {split}   so f = t(t-1) p(f) + (1-t) f(.,0) + t f(.,1)");
    let reversed = reverse_iota(&path);
    println!("reversed: {}", reversed.as_polynomial().unwrap());

    // x t from 0 to x, then x + t from x to x + 1
    let g = TimePath::polynomial(Polynomial::from_terms(2, vec![(vec![1, 1], 1.0)])?)?;
    let h = TimePath::polynomial(Polynomial::from_terms(2, vec![(vec![1, 0], 1.0), (vec![0, 1], 1.0)])?)?;
    let profile = BumpProfile::new(0.1)?;
    let mu = concat_mu(&[g, h], &[0.0, 0.5, 1.0], &[profile; 2], Tolerance::new(1e-12))?;
    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        println!("mu(0.7, {t:.2}) = {:.6}", mu.eval(&[0.7], t)?);
    }
    let (left, right) = one_sided_derivatives(&mu, &[0.7], 0.5, 1e-4)?;
    println!("at the junction: left {left:.6?}, right {right:.6?}");
    Ok(())
}
