//! Small coverings used by the examples, the CLI and the tests.

use super::{DeltaComplex, Monodromy};

#[derive(Clone, Debug)]
pub struct CoverFixture {
    pub name: &'static str,
    pub base: DeltaComplex,
    pub mono: Monodromy,
    /// Rational Betti numbers of the base.
    pub base_betti: Vec<usize>,
}

fn circle() -> DeltaComplex {
    DeltaComplex::new(1, vec![[0, 0]], vec![]).unwrap()
}

fn wedge() -> DeltaComplex {
    DeltaComplex::new(1, vec![[0, 0], [0, 0]], vec![]).unwrap()
}

/// One vertex, edges `a, b, c`, triangles with boundaries `b c a` and `a c b`.
fn torus() -> DeltaComplex {
    DeltaComplex::new(1, vec![[0, 0]; 3], vec![[1, 2, 0], [0, 2, 1]]).unwrap()
}

/// Two triangles glued along their boundary.
fn sphere() -> DeltaComplex {
    DeltaComplex::new(3, vec![[0, 1], [0, 2], [1, 2]], vec![[2, 1, 0], [2, 1, 0]]).unwrap()
}

fn fixture(
    name: &'static str,
    base: DeltaComplex,
    degree: usize,
    perms: Vec<Vec<usize>>,
    betti: &[usize],
) -> CoverFixture {
    let mono = Monodromy::new(&base, degree, perms).unwrap();
    CoverFixture {
        name,
        base,
        mono,
        base_betti: betti.to_vec(),
    }
}

pub fn fixtures() -> Vec<CoverFixture> {
    vec![
        fixture("circle-double", circle(), 2, vec![vec![1, 0]], &[1, 1]),
        fixture("circle-cyclic-3", circle(), 3, vec![vec![1, 2, 0]], &[1, 1]),
        fixture("circle-transposition-3", circle(), 3, vec![vec![1, 0, 2]], &[1, 1]),
        fixture("circle-cyclic-4", circle(), 4, vec![vec![1, 2, 3, 0]], &[1, 1]),
        fixture("circle-trivial-2", circle(), 2, vec![vec![0, 1]], &[1, 1]),
        fixture("wedge-3", wedge(), 3, vec![vec![1, 0, 2], vec![1, 2, 0]], &[1, 2]),
        fixture(
            "torus-cyclic-3",
            torus(),
            3,
            vec![vec![1, 2, 0], vec![1, 2, 0], vec![2, 0, 1]],
            &[1, 2, 1],
        ),
        fixture(
            "torus-double",
            torus(),
            2,
            vec![vec![1, 0], vec![0, 1], vec![1, 0]],
            &[1, 2, 1],
        ),
        fixture("sphere-trivial-2", sphere(), 2, vec![vec![0, 1]; 3], &[1, 0, 1]),
    ]
}
