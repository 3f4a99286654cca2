//! Library results against references computed without the simplex code:
//! nested Gauss–Legendre integrals, divided difference tables and closed
//! forms for exponentials.

use jetform::poly::Polynomial;
use jetform::scalar::{Field, Rational, Scalar};
use jetform::simplex::{simplex_integral, AffineSimplex, IntegrationMode, SmoothFunction};
use jetform::verify::oracles::{divided_difference, exp_divided_difference, exp_sum_simplex_integral, ExpSum};
use jetform::verify::random;
use num_complex::Complex64;
use rand::Rng;

const GAUSS_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GAUSS_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189,
    0.478_628_670_499_366,
    0.568_888_888_888_889,
    0.478_628_670_499_366,
    0.236_926_885_056_189,
];

/// `∫_a^b g` with 5-point Gauss–Legendre, exact through degree 9.
fn gauss(a: f64, b: f64, g: impl Fn(f64) -> f64) -> f64 {
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    GAUSS_NODES
        .iter()
        .zip(GAUSS_WEIGHTS)
        .map(|(x, w)| w * half * g(mid + half * x))
        .sum()
}

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

/// `D^r f(v, ..., v)` as a polynomial.
fn directional(f: &Polynomial<f64>, v: &[f64], r: usize) -> Polynomial<f64> {
    let mut g = f.clone();
    for _ in 0..r {
        let mut next = Polynomial::zero(f.nvars());
        for (i, vi) in v.iter().enumerate() {
            next = &next + &g.partial(i).scale(vi);
        }
        g = next;
    }
    g
}

#[test]
fn triangle_integral_matches_iterated_integral() {
    let mut rng = random::rng(11, 0);
    for _ in 0..25 {
        let f = random::polynomial(&mut rng, 2, 5, 6);
        let verts: Vec<Vec<Rational>> = (0..3).map(|_| random::point(&mut rng, 2, 4, 3)).collect();
        let sigma = AffineSimplex::new(verts.clone()).unwrap();
        let form = simplex_integral(&f.clone().into(), &sigma, IntegrationMode::Exact).unwrap();
        let v: Vec<f64> = vec![0.3, -1.1];
        let value = form
            .eval(&[
                v.iter().map(|x| Rational::from_f64(*x)).collect(),
                v.iter().map(|x| Rational::from_f64(*x)).collect(),
            ])
            .unwrap()[0]
            .to_f64();

        let g = directional(&f.to_f64(), &v, 2);
        let y: Vec<Vec<f64>> = verts.iter().map(|p| p.iter().map(Scalar::to_f64).collect()).collect();
        // unit-volume measure on the standard triangle: twice the Lebesgue integral
        let reference = 2.0
            * gauss(0.0, 1.0, |s| {
                gauss(0.0, 1.0 - s, |u| {
                    let x: Vec<f64> = (0..2)
                        .map(|k| y[0][k] + s * (y[1][k] - y[0][k]) + u * (y[2][k] - y[0][k]))
                        .collect();
                    g.eval_f64(&x)
                })
            });
        assert!(
            (value - reference).abs() <= 1e-9 * reference.abs().max(1.0),
            "{value} vs {reference}"
        );
    }
}

#[test]
fn segment_integral_is_a_gradient_average() {
    let mut rng = random::rng(12, 0);
    for _ in 0..25 {
        let f = random::polynomial(&mut rng, 3, 6, 8);
        let verts: Vec<Vec<Rational>> = (0..2).map(|_| random::point(&mut rng, 3, 5, 2)).collect();
        let sigma = AffineSimplex::new(verts.clone()).unwrap();
        let form = simplex_integral(&f.clone().into(), &sigma, IntegrationMode::Exact).unwrap();
        let y: Vec<Vec<f64>> = verts.iter().map(|p| p.iter().map(Scalar::to_f64).collect()).collect();
        let ff = f.to_f64();
        for i in 0..3 {
            let mut e = [0u32; 3];
            e[i] = 1;
            let value = form.entry(&e)[0].to_f64();
            let di = ff.partial(i);
            let reference = gauss(0.0, 1.0, |s| {
                let x: Vec<f64> = (0..3).map(|k| y[0][k] + s * (y[1][k] - y[0][k])).collect();
                di.eval_f64(&x)
            });
            assert!((value - reference).abs() <= 1e-9 * reference.abs().max(1.0));
        }
    }
}

#[test]
fn line_integrals_are_scaled_divided_differences() {
    let mut rng = random::rng(13, 0);
    for _ in 0..100 {
        let r = rng.gen_range(0..=5usize);
        let nodes: Vec<Rational> = (0..=r)
            .map(|_| q(rng.gen_range(-3..=3)) / q(rng.gen_range(1..=2)))
            .collect();
        let f = random::polynomial(&mut rng, 1, 8, 5);
        let sigma = AffineSimplex::on_line(&nodes).unwrap();
        let value = simplex_integral(&f.clone().into(), &sigma, IntegrationMode::Exact)
            .unwrap()
            .scalar_value();
        assert_eq!(value, Rational::factorial(r as u32) * divided_difference(&f, &nodes));
    }
}

#[test]
fn divided_difference_table_known_values() {
    let cube = Polynomial::monomial(vec![3], q(1));
    // x^3 at 0, 0, 2, 2: the coefficient of x^3 in the Hermite cubic
    assert_eq!(divided_difference(&cube, &[q(0), q(0), q(2), q(2)]), q(1));
    assert_eq!(divided_difference(&cube, &[q(0), q(2), q(2)]), q(4));
    assert_eq!(divided_difference(&cube, &[q(1), q(1), q(1)]), q(3));
}

#[test]
fn exponential_closed_form_agrees_with_the_table() {
    // exp[0, z] = (e^z - 1) / z and exp[z, z] = e^z
    let z = Complex64::new(0.7, -0.4);
    let zero = Complex64::new(0.0, 0.0);
    assert!((exp_divided_difference(&[zero, z]) - (z.exp() - 1.0) / z).norm() < 1e-14);
    assert!((exp_divided_difference(&[z, z]) - z.exp()).norm() < 1e-14);
    let w = Complex64::new(-1.2, 0.5);
    let expected = ((w.exp() - z.exp()) / (w - z) - (z.exp() - 1.0) / z) / w;
    assert!((exp_divided_difference(&[zero, z, w]) - expected).norm() < 1e-13);
}

#[test]
fn exponential_black_box_against_closed_form() {
    let f = ExpSum {
        terms: vec![
            (
                Complex64::new(1.0, 0.0),
                vec![Complex64::new(0.5, 1.0), Complex64::new(-0.3, 0.0)],
            ),
            (
                Complex64::new(0.0, -0.7),
                vec![Complex64::new(0.0, 2.0), Complex64::new(0.4, 0.4)],
            ),
        ],
    };
    let vertices = vec![vec![0.0, 0.1], vec![0.8, -0.2], vec![0.3, 0.9]];
    let sigma = AffineSimplex::new(vertices.clone()).unwrap();
    let form = simplex_integral(
        &SmoothFunction::black_box(f.clone()),
        &sigma,
        IntegrationMode::Quadrature { tol: 1e-12 },
    )
    .unwrap();
    let entries: Vec<_> = form.entries().map(|(a, _)| a.clone()).collect();
    let reference = exp_sum_simplex_integral(&f, &vertices, &entries);
    for ((_, v), r) in form.entries().zip(reference) {
        assert!((v[0] - r).abs() < 1e-9, "{} vs {r}", v[0]);
    }
}
