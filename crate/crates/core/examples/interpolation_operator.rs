//! The interpolation operator as two simple nodes collide into a double one.

use jetform::hermite::{interp_operator, PolySpace, WeightedSpectrum};
use jetform::poly::Polynomial;
use jetform::scalar::Tolerance;
use jetform::simplex::{IntegrationMode, SmoothFunction};

fn main() -> jetform::Result<()> {
    let tol = Tolerance::new(1e-12);
    let f: SmoothFunction<f64> = Polynomial::monomial(vec![2], 1.0).into();
    let base = WeightedSpectrum::on_line(&[(0.0, 2)])?;
    let complement = PolySpace::up_to_degree(1, 1);
    let limit = interp_operator(&f, &base, &base, &complement, IntegrationMode::Exact, tol)?;
    println!("limit at the double node: {limit}");

    let grid: Vec<f64> = (0..=200).map(|i| -1.0 + i as f64 / 100.0).collect();
    for e in (4..=14).step_by(2) {
        let n = (1u32 << e) as f64;
        let y = WeightedSpectrum::on_line(&[(0.0, 1), (1.0 / n, 1)])?;
        let a = interp_operator(&f, &y, &base, &complement, IntegrationMode::Exact, tol)?;
        let sup = grid
            .iter()
            .map(|&x| (a.eval_f64(&[x]) - limit.eval_f64(&[x])).abs())
            .fold(0.0, f64::max);
        println!("n = 2^{e:<2}  sup |A - A_lim| = {sup:.3e}");
    }
    Ok(())
}
