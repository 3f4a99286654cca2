//! Codimension-3 ideals of the 2-jet algebra: planes and curves.

use jetform::ideal::{classify_codim3, reconstruct, Codim3Type, JetIdeal};
use jetform::poly::Polynomial;
use jetform::scalar::{Field, Rational, Tolerance};

fn describe(ideal: &JetIdeal<Rational>) -> jetform::Result<()> {
    let exact = Tolerance::EXACT;
    match classify_codim3(ideal, exact)? {
        datum @ Codim3Type::Plane(_) => {
            if let Codim3Type::Plane(plane) = &datum {
                let rows: Vec<Vec<String>> = plane
                    .iter()
                    .map(|v| v.iter().map(|x| x.to_string()).collect())
                    .collect();
                println!("  plane spanned by {rows:?}");
            }
            println!("  reconstructs: {}", reconstruct(ideal.dim(), &datum, exact)? == *ideal);
        }
        datum @ Codim3Type::Curve(_) => {
            if let Codim3Type::Curve(c) = &datum {
                let show = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
                println!(
                    "  curve with tangent {:?}, acceleration {:?}, normal form c = {}",
                    show(&c.tangent),
                    show(&c.acceleration),
                    c.normal_form_c
                );
            }
            println!("  reconstructs: {}", reconstruct(ideal.dim(), &datum, exact)? == *ideal);
        }
    }
    Ok(())
}

fn main() -> jetform::Result<()> {
    let q = Rational::from_i64;
    let var = |i| Polynomial::<Rational>::var(3, i);
    let exact = Tolerance::EXACT;

    println!("functions vanishing to first order along the plane z = x + y:");
    let mut gens = vec![&(&var(2) - &var(0)) - &var(1)];
    gens.extend([var(0).pow(2), &var(0) * &var(1), var(1).pow(2)]);
    describe(&JetIdeal::generated_by(3, 2, &gens, exact)?)?;

    println!("ideal of the parabola y = x^2 + x, z = y:");
    let gens = [&(&var(1) - &var(0).pow(2)) - &var(0), &var(2) - &var(1)];
    describe(&JetIdeal::generated_by(3, 2, &gens, exact)?)?;

    println!("ideal of the line through (1, 2, 3):");
    let gens = [&var(1) - &var(0).scale(&q(2)), &var(2) - &var(0).scale(&q(3))];
    describe(&JetIdeal::generated_by(3, 2, &gens, exact)?)?;
    Ok(())
}
