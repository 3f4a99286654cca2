//! Interpolating prescribed jets on a weighted configuration of points.

use jetform::hermite::{interpolate_jets, standard_transversal, transversality_rank, MultiJet, WeightedSpectrum};
use jetform::poly::Polynomial;
use jetform::scalar::{Field, Rational, Tolerance};

fn main() -> jetform::Result<()> {
    let q = Rational::from_i64;
    let exact = Tolerance::EXACT;

    // a double point at 0 and a simple point at 1
    let y = WeightedSpectrum::on_line(&[(q(0), 2), (q(1), 1)])?;
    let f = &Polynomial::monomial(vec![3], q(1)) + &Polynomial::constant(1, Rational::new(1.into(), 2.into()));
    let targets = MultiJet::of_polynomial(&y, &f)?;
    let p = interpolate_jets(&y, &targets, exact)?;
    println!("Y = {{(0, 2), (1, 1)}}, f = {f}");
    println!("interpolant: {p}");
    println!("jets match: {}", MultiJet::of_polynomial(&y, &p)? == targets);

    // two points in the plane, one carrying a 1-jet
    let y = WeightedSpectrum::new(vec![(vec![q(0), q(0)], 2), (vec![q(1), q(2)], 1)])?;
    let f = Polynomial::from_terms(2, vec![(vec![2, 2], q(1)), (vec![0, 1], q(-3))])?;
    let p = interpolate_jets(&y, &MultiJet::of_polynomial(&y, &f)?, exact)?;
    println!("planar interpolant of {f}: {p}");
    let tr = transversality_rank(&standard_transversal(2, y.total_weight()), &y, exact)?;
    println!(
        "multi-jet map on degree <= {}: rank {} of {} conditions",
        y.total_weight() - 1,
        tr.rank,
        tr.conditions
    );
    Ok(())
}
