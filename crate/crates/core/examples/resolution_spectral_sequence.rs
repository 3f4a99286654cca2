//! The simplicial resolution of a finite covering and its spectral sequence,
//! over the rationals and over F2.

use jetform::resolution::{
    base_cohomology, build_resolution_complex, fixtures, run_spectral_sequence, total_cohomology,
};
use jetform::scalar::{Field, Rational, F2};

fn report<F: Field>(label: &str) {
    println!("over {label}:");
    for fx in fixtures() {
        let res = build_resolution_complex::<F>(&fx.base, &fx.mono).expect("fixture covers are valid");
        let ss = run_spectral_sequence(&res);
        let e1 = ss.page(1).unwrap();
        let entries: Vec<String> = e1
            .dims
            .iter()
            .filter(|(_, &d)| d > 0)
            .map(|((p, q), d)| format!("E1[{p},{q}]={d}"))
            .collect();
        let total = total_cohomology(&res);
        let mut base = base_cohomology::<F>(&fx.base);
        base.resize(total.len(), 0);
        println!(
            "  {:<24} generators {:?}  {}  H* {:?}  base {:?}",
            fx.name,
            res.dims(),
            entries.join(" "),
            total,
            base
        );
    }
}

fn main() {
    report::<Rational>("Q");
    report::<F2>("F2");
}
