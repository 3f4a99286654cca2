//! Adaptive simplex quadrature for functions known only through derivatives.

use jetform::simplex::{simplex_integral, AffineSimplex, BlackBox, IntegrationMode, SmoothFunction};

/// `sin(x) cos(2y)` with all partial derivatives.
struct Wave;

impl BlackBox for Wave {
    fn dim(&self) -> usize {
        2
    }

    fn max_order(&self) -> usize {
        usize::MAX
    }

    fn partial(&self, a: &[u32], x: &[f64]) -> Vec<f64> {
        let phase = |k: u32, v: f64| match k % 4 {
            0 => v.sin(),
            1 => v.cos(),
            2 => -v.sin(),
            _ => -v.cos(),
        };
        // d^k cos(2y) = 2^k cos(2y + k pi/2) = 2^k sin(2y + (k+1) pi/2)
        let dy = 2f64.powi(a[1] as i32) * phase(a[1] + 1, 2.0 * x[1]);
        vec![phase(a[0], x[0]) * dy]
    }
}

fn main() -> jetform::Result<()> {
    let f = SmoothFunction::black_box(Wave);
    let sigma = AffineSimplex::new(vec![vec![0.0, 0.0], vec![1.0, 0.2], vec![0.3, 0.8]])?;
    for tol in [1e-4, 1e-8, 1e-12] {
        let form = simplex_integral(&f, &sigma, IntegrationMode::Quadrature { tol })?;
        let values: Vec<String> = form.entries().map(|(a, v)| format!("{a:?}={:.12}", v[0])).collect();
        println!("tol {tol:e}: {}", values.join("  "));
    }
    Ok(())
}
