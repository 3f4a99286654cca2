//! Truncated Taylor expansions: products, inverses and exponentials of jets.

use jetform::jet::jet_of;
use jetform::poly::Polynomial;
use jetform::scalar::{Field, Rational};

fn main() -> jetform::Result<()> {
    let q = Rational::from_i64;
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let p = &(&x * &y) + &Polynomial::constant(2, q(1));
    let r = &x.pow(2) - &y;
    let base = vec![q(1), q(-1)];

    let jp = jet_of(&p, &base, 2)?;
    let jr = jet_of(&r, &base, 2)?;
    println!("j2 p   = {}", jp.local());
    println!("j2 r   = {}", jr.local());
    println!("j2 p*r = {}", jp.mul(&jr)?.local());
    println!("j2 of the product = {}", jet_of(&(&p * &r), &base, 2)?.local());

    let unit = jet_of(&(&p + &Polynomial::constant(2, q(2))), &base, 3)?;
    let inv = unit.invert()?;
    println!("inverse of {} is {}", unit.local(), inv.local());
    println!("check: {}", unit.mul(&inv)?.local());

    let xf = Polynomial::<f64>::var(2, 0);
    let j = jet_of(&xf, &[0.5, 0.0], 3)?;
    println!("exp of {} is {}", j.local(), j.exp().local());
    Ok(())
}
