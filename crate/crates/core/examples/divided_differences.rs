//! Simplex integrals as multivariate divided differences.

use jetform::poly::Polynomial;
use jetform::scalar::{Field, Rational};
use jetform::simplex::{
    face_recurrence_check, newton_expansion, newton_interpolant_1d, simplex_integral, AffineSimplex, IntegrationMode,
    SmoothFunction,
};

fn main() -> jetform::Result<()> {
    let q = Rational::from_i64;
    // f(x) = x^4 on the line, nodes 0, 0, 1, 2
    let f: SmoothFunction<Rational> = Polynomial::monomial(vec![4], q(1)).into();
    let nodes = [q(0), q(0), q(1), q(2)];
    let line = AffineSimplex::on_line(&nodes)?;
    let value = simplex_integral(&f, &line, IntegrationMode::Exact)?.scalar_value();
    println!("I(x^4, [0, 0, 1, 2]) = {value}  (3! times the divided difference)");
    let p = newton_interpolant_1d(&f, &nodes, IntegrationMode::Exact)?;
    println!("Hermite interpolant through those nodes: {p}");

    // a degenerate triangle in the plane
    let g: SmoothFunction<Rational> =
        Polynomial::from_terms(2, vec![(vec![3, 1], q(1)), (vec![0, 2], q(-2)), (vec![1, 0], q(5))])?.into();
    let sigma = AffineSimplex::new(vec![vec![q(0), q(0)], vec![q(1), q(0)], vec![q(0), q(0)]])?;
    let form = simplex_integral(&g, &sigma, IntegrationMode::Exact)?;
    for (a, v) in form.entries() {
        println!("  entry {a:?}: {}", v[0]);
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let (lhs, rhs) = face_recurrence_check(&g, &sigma, i, j, IntegrationMode::Exact)?;
        println!(
            "face recurrence ({i}, {j}): {}",
            if lhs == rhs { "holds" } else { "FAILS" }
        );
    }

    let chain = vec![vec![q(0), q(0)], vec![q(1), q(0)], vec![q(0), q(1)], vec![q(1), q(1)]];
    let x = vec![q(2), q(1)];
    let e = newton_expansion(&g, &chain, &x, IntegrationMode::Exact)?;
    println!(
        "Newton expansion at (2, 1): terms {:?}",
        e.terms.iter().map(|t| t.to_string()).collect::<Vec<_>>()
    );
    println!(
        "sum {} against g(2, 1) = {}",
        e.total,
        g.as_polynomial().unwrap().eval(&x)?
    );
    Ok(())
}
