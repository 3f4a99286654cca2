//! Ideals of finite codimension as points of a Grassmannian: a colliding pair
//! converging to its tangent limit, and recovering a spectrum on the line.

use jetform::hermite::{PolySpace, WeightedSpectrum};
use jetform::ideal::{grassmann_distance, ideal_point_from_spectrum, tangent_limit_ideal, weighted_spectrum_1d};
use jetform::scalar::{Field, Rational, Tolerance};

fn main() -> jetform::Result<()> {
    let q = Rational::from_i64;
    let exact = Tolerance::EXACT;
    let ambient = PolySpace::up_to_degree(2, 2);
    let x = vec![q(1), q(0)];
    let v = vec![q(1), q(2)];
    let limit = tangent_limit_ideal(&x, &v, &ambient, exact)?;
    println!("tangent limit at (1, 0) along (1, 2):");
    for p in limit.polynomials() {
        println!("  {p}");
    }
    for e in 1..=5 {
        let t = Rational::new(1.into(), 10i64.pow(e).into());
        let moved: Vec<Rational> = x
            .iter()
            .zip(&v)
            .map(|(a, b)| a.clone() + t.clone() * b.clone())
            .collect();
        let pair = WeightedSpectrum::from_multiset(&[x.clone(), moved])?;
        let point = ideal_point_from_spectrum(&pair, &ambient, exact)?;
        println!("t = 1e-{e}: angle {:.3e}", grassmann_distance(&point, &limit)?);
    }

    let y = WeightedSpectrum::on_line(&[(q(-1), 1), (Rational::new(1.into(), 3.into()), 2), (q(2), 3)])?;
    let point = ideal_point_from_spectrum(&y, &PolySpace::up_to_degree(1, 6), exact)?;
    let back = weighted_spectrum_1d(&point, exact)?;
    println!(
        "spectrum recovered from its ideal: {:?}",
        back.spectrum
            .points()
            .iter()
            .map(|(p, k)| (p[0].to_string(), *k))
            .collect::<Vec<_>>()
    );
    println!("same as the original: {}", back.spectrum == y);
    Ok(())
}
