//! Algebraic invariants as property tests. Structured inputs come from the
//! seeded generators in `verify::random`, so proptest drives the seed.

use jetform::hermite::{
    interp_operator, interpolate_jets, multi_jet_matrix, spectral_ideal_kernel, standard_transversal, MultiJet,
    PolySpace, WeightedSpectrum,
};
use jetform::ideal::{ideal_point_from_spectrum, weighted_spectrum_1d};
use jetform::jet::jet_of;
use jetform::linalg::Matrix;
use jetform::path::{associativity_time_change, concat2, decompose, reassemble, split_p, BumpProfile, TimePath};
use jetform::poly::Polynomial;
use jetform::resolution::{
    build_resolution_complex, build_subset_cover, expected_euler_characteristic, run_spectral_sequence,
    total_cohomology, twisted_cohomology, DeltaComplex, Monodromy,
};
use jetform::scalar::{Field, Rational, Tolerance, F2};
use jetform::simplex::{
    face_recurrence_check, newton_expansion, simplex_integral, AffineSimplex, IntegrationMode, SmoothFunction,
};
use jetform::verify::random;
use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

const EXACT: Tolerance = Tolerance::EXACT;

type P = Polynomial<Rational>;

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn jet_of_product_is_product_of_jets(seed in any::<u64>(), m in 1usize..=3, order in 0u32..=4) {
        let mut rng = random::rng(seed, 0);
        let (p, r) = (random::polynomial(&mut rng, m, 4, 5), random::polynomial(&mut rng, m, 4, 5));
        let y = random::point(&mut rng, m, 3, 2);
        let lhs = jet_of(&(&p * &r), &y, order).unwrap();
        let rhs = jet_of(&p, &y, order).unwrap().mul(&jet_of(&r, &y, order).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jet_of_is_linear(seed in any::<u64>(), m in 1usize..=3, order in 0u32..=4) {
        let mut rng = random::rng(seed, 0);
        let (p, r) = (random::polynomial(&mut rng, m, 5, 6), random::polynomial(&mut rng, m, 5, 6));
        let (a, b) = (random::rational(&mut rng, 5, 3), random::rational(&mut rng, 5, 3));
        let y = random::point(&mut rng, m, 3, 2);
        let lhs = jet_of(&(&p.scale(&a) + &r.scale(&b)), &y, order).unwrap();
        let rhs = jet_of(&p, &y, order).unwrap().scale(&a).add(&jet_of(&r, &y, order).unwrap().scale(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jet_inversion_is_an_involution(seed in any::<u64>(), m in 1usize..=3, order in 0u32..=4) {
        let mut rng = random::rng(seed, 0);
        let p = &random::polynomial(&mut rng, m, 4, 5) + &P::constant(m, q(rng.gen_range(1..=4)));
        let y = random::point(&mut rng, m, 3, 2);
        let j = jet_of(&p, &y, order).unwrap();
        prop_assume!(!j.constant_term().is_zero());
        let inv = j.invert().unwrap();
        prop_assert_eq!(inv.invert().unwrap(), j.clone());
        prop_assert_eq!(inv.mul(&j).unwrap(), jetform::jet::Jet::one(y, order));
    }

    #[test]
    fn low_degree_polynomials_are_their_own_jets(seed in any::<u64>(), m in 1usize..=3, order in 0u32..=5) {
        let mut rng = random::rng(seed, 0);
        let p = random::polynomial(&mut rng, m, order, 6);
        let y = random::point(&mut rng, m, 4, 3);
        prop_assert_eq!(jet_of(&p, &y, order).unwrap().to_global(), p);
    }

    #[test]
    fn simplex_integral_is_symmetric_in_vertices(seed in any::<u64>(), m in 1usize..=3, r in 0usize..=4) {
        let mut rng = random::rng(seed, 0);
        let f: SmoothFunction<Rational> = random::polynomial(&mut rng, m, 5, 6).into();
        let mut verts: Vec<_> = (0..=r).map(|_| random::point(&mut rng, m, 3, 2)).collect();
        let before = simplex_integral(&f, &AffineSimplex::new(verts.clone()).unwrap(), IntegrationMode::Exact).unwrap();
        verts.shuffle(&mut rng);
        let after = simplex_integral(&f, &AffineSimplex::new(verts).unwrap(), IntegrationMode::Exact).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn simplex_integral_is_linear(seed in any::<u64>(), m in 1usize..=3, r in 0usize..=3) {
        let mut rng = random::rng(seed, 0);
        let (f, g) = (random::polynomial(&mut rng, m, 5, 6), random::polynomial(&mut rng, m, 5, 6));
        let (a, b) = (random::rational(&mut rng, 4, 3), random::rational(&mut rng, 4, 3));
        let sigma = AffineSimplex::new((0..=r).map(|_| random::point(&mut rng, m, 3, 2)).collect()).unwrap();
        let integral = |p: P| simplex_integral(&p.into(), &sigma, IntegrationMode::Exact).unwrap();
        let lhs = integral(&f.scale(&a) + &g.scale(&b));
        let rhs = integral(f).scale(&a);
        let rhs = rhs.sub(&integral(g).scale(&b).scale(&q(-1))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn face_recurrence_holds_on_polynomials(seed in any::<u64>(), m in 1usize..=3, r in 1usize..=4) {
        let mut rng = random::rng(seed, 0);
        let f: SmoothFunction<Rational> = random::polynomial(&mut rng, m, 5, 6).into();
        let mut verts: Vec<_> = (0..=r).map(|_| random::point(&mut rng, m, 3, 2)).collect();
        if rng.gen_bool(0.3) {
            verts[r] = verts[0].clone();
        }
        let sigma = AffineSimplex::new(verts).unwrap();
        for i in 0..r {
            for j in i + 1..=r {
                let (lhs, rhs) = face_recurrence_check(&f, &sigma, i, j, IntegrationMode::Exact).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn newton_expansion_reproduces_polynomials(seed in any::<u64>(), m in 1usize..=3, deg in 0u32..=5) {
        let mut rng = random::rng(seed, 0);
        let p = random::polynomial(&mut rng, m, deg, 6);
        let nodes: Vec<_> = (0..=deg).map(|_| random::point(&mut rng, m, 3, 2)).collect();
        let x = random::point(&mut rng, m, 3, 2);
        let e = newton_expansion(&p.clone().into(), &nodes, &x, IntegrationMode::Exact).unwrap();
        prop_assert_eq!(e.total, p.eval(&x).unwrap());
    }
}

fn spectrum_and_ambient(seed: u64, m: usize) -> (WeightedSpectrum<Rational>, PolySpace) {
    let mut rng = random::rng(seed, 1);
    let y = random::spectrum(&mut rng, m, 8);
    let ambient = standard_transversal(m, y.total_weight());
    (y, ambient)
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn interpolation_is_a_right_inverse(seed in any::<u64>(), m in 1usize..=3) {
        let (y, _) = spectrum_and_ambient(seed, m);
        let mut rng = random::rng(seed, 2);
        let targets = MultiJet::of_polynomial(&y, &random::polynomial(&mut rng, m, 9, 8)).unwrap();
        let p = interpolate_jets(&y, &targets, EXACT).unwrap();
        prop_assert_eq!(MultiJet::of_polynomial(&y, &p).unwrap(), targets);
        prop_assert!(p.degree().is_none_or(|d| d < y.total_weight()));
    }

    #[test]
    fn kernel_dimension_complements_the_rank(seed in any::<u64>(), m in 1usize..=3) {
        let (y, ambient) = spectrum_and_ambient(seed, m);
        let rank = multi_jet_matrix(&y, &ambient).rank(EXACT);
        prop_assert_eq!(rank, y.ideal_codim());
        let kernel = spectral_ideal_kernel(&y, &ambient, EXACT).unwrap();
        prop_assert_eq!(kernel.len(), ambient.len() - y.ideal_codim());
    }

    #[test]
    fn operator_kills_the_ideal_and_keeps_jets(seed in any::<u64>(), m in 1usize..=2) {
        let mut rng = random::rng(seed, 3);
        let y = random::spectrum(&mut rng, m, 5);
        let ambient = PolySpace::up_to_degree(m, y.total_weight());
        let complement = standard_transversal(m, y.total_weight()).complement_of(&y, EXACT);
        let op = |f: &P| interp_operator(&f.clone().into(), &y, &y, &complement, IntegrationMode::Exact, EXACT).unwrap();

        let kernel = spectral_ideal_kernel(&y, &ambient, EXACT).unwrap();
        let vanishing = &kernel[rng.gen_range(0..kernel.len())] * &random::polynomial(&mut rng, m, 2, 3);
        prop_assert!(op(&vanishing).is_zero());

        let (f, g) = (random::polynomial(&mut rng, m, 6, 6), random::polynomial(&mut rng, m, 6, 6));
        let (a, b) = (random::rational(&mut rng, 4, 3), random::rational(&mut rng, 4, 3));
        prop_assert_eq!(op(&(&f.scale(&a) + &g.scale(&b))), &op(&f).scale(&a) + &op(&g).scale(&b));

        let jets = MultiJet::of_polynomial(&y, &f).unwrap();
        prop_assert_eq!(MultiJet::of_polynomial(&y, &op(&f)).unwrap(), jets.clone());
        let interpolant = interpolate_jets(&y, &jets, EXACT).unwrap();
        prop_assert_eq!(MultiJet::of_polynomial(&y, &interpolant).unwrap(), jets);
    }

    #[test]
    fn distinct_spectra_give_distinct_ideal_points(seed in any::<u64>(), m in 1usize..=2) {
        let mut rng = random::rng(seed, 4);
        let y = random::spectrum(&mut rng, m, 5);
        let mut points = y.points().to_vec();
        let moved = rng.gen_range(0..points.len());
        points[moved].0[0] += Rational::new(1.into(), 7.into());
        prop_assume!(points.iter().enumerate().all(|(i, p)| points[..i].iter().all(|o| o.0 != p.0)));
        let z = WeightedSpectrum::new(points).unwrap();
        let ambient = PolySpace::up_to_degree(m, y.total_weight());
        let a = ideal_point_from_spectrum(&y, &ambient, EXACT).unwrap();
        let b = ideal_point_from_spectrum(&z, &ambient, EXACT).unwrap();
        prop_assert_ne!(a, b);
    }

    #[test]
    fn line_spectra_round_trip(seed in any::<u64>()) {
        let mut rng = random::rng(seed, 5);
        let y = random::spectrum(&mut rng, 1, 6);
        let ambient = PolySpace::up_to_degree(1, y.total_weight());
        let point = ideal_point_from_spectrum(&y, &ambient, EXACT).unwrap();
        let back = weighted_spectrum_1d(&point, EXACT).unwrap();
        prop_assert!(!back.approximate);
        prop_assert_eq!(back.spectrum, y);
    }
}

fn random_path(rng: &mut impl Rng, m: usize) -> TimePath<Rational> {
    let p = random::polynomial(rng, m + 1, 6, 8);
    TimePath::polynomial(p).unwrap()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn splitting_identity_and_biproduct(seed in any::<u64>(), m in 1usize..=2) {
        let mut rng = random::rng(seed, 6);
        let f = random_path(&mut rng, m);
        let (split, start, end) = decompose(&f).unwrap();
        let whole = f.as_polynomial().unwrap();
        let t = P::var(m + 1, m);
        let one = P::one(m + 1);
        let lhs = &(&t * &(&t - &one)) * &split;
        let rhs = &(whole - &(&(&one - &t) * &start.extend_vars(1))) - &(&t * &end.extend_vars(1));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(&reassemble(&split, &start, &end), whole);
    }

    #[test]
    fn splitting_is_linear(seed in any::<u64>(), m in 1usize..=2) {
        let mut rng = random::rng(seed, 7);
        let (f, g) = (random_path(&mut rng, m), random_path(&mut rng, m));
        let a = random::rational(&mut rng, 4, 3);
        let combined = TimePath::polynomial(&f.as_polynomial().unwrap().scale(&a) + g.as_polynomial().unwrap()).unwrap();
        let lhs = split_p(&combined).unwrap();
        let pf = split_p(&f).unwrap();
        let pg = split_p(&g).unwrap();
        let rhs = &pf.as_polynomial().unwrap().scale(&a) + pg.as_polynomial().unwrap();
        prop_assert_eq!(lhs.as_polynomial().unwrap(), &rhs);
    }
}

/// `(1 - t) a + t b + t (1 - t) c` in one space variable.
fn segment(a: &P, b: &P, c: &P) -> TimePath<Rational> {
    let t = P::var(2, 1);
    let one = P::one(2);
    let s = &one - &t;
    let p = &(&(&s * &a.extend_vars(1)) + &(&t * &b.extend_vars(1))) + &(&(&t * &s) * &c.extend_vars(1));
    TimePath::polynomial(p).unwrap()
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn concatenation_is_associative_up_to_time_change(seed in any::<u64>(), eps in 0.1f64..=0.3) {
        let mut rng = random::rng(seed, 8);
        let ends: Vec<P> = (0..4).map(|_| random::polynomial(&mut rng, 1, 2, 3)).collect();
        let bends: Vec<P> = (0..3).map(|_| random::polynomial(&mut rng, 1, 2, 2)).collect();
        let f = segment(&ends[0], &ends[1], &bends[0]);
        let g = segment(&ends[1], &ends[2], &bends[1]);
        let h = segment(&ends[2], &ends[3], &bends[2]);
        let profile = BumpProfile::new(eps).unwrap();
        let left = concat2(&concat2(&f, &g, profile, EXACT).unwrap(), &h, profile, EXACT).unwrap();
        let right = concat2(&f, &concat2(&g, &h, profile, EXACT).unwrap(), profile, EXACT).unwrap();
        let tau = associativity_time_change(profile);
        for x in [-1.0, 0.25, 1.5] {
            for i in 0..=100 {
                let t = i as f64 / 100.0;
                let d = (left.eval(&[x], t).unwrap() - right.eval(&[x], tau(t)).unwrap()).abs();
                prop_assert!(d <= 1e-8, "x={} t={} differs by {}", x, t, d);
            }
        }
    }

    #[test]
    fn rank_nullity(seed in any::<u64>(), rows in 1usize..=6, cols in 1usize..=6) {
        let mut rng = random::rng(seed, 9);
        let rank_cap = rng.gen_range(1..=rows.min(cols));
        let left = Matrix::from_rows(rank_cap, (0..rows).map(|_| random::point(&mut rng, rank_cap, 3, 2)).collect());
        let right = Matrix::from_rows(cols, (0..rank_cap).map(|_| random::point(&mut rng, cols, 3, 2)).collect());
        let a = left.mul(&right);
        let kernel = a.kernel(EXACT);
        prop_assert_eq!(a.rank(EXACT) + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }
}

fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

fn check_cover<F: Field>(base: &DeltaComplex, mono: &Monodromy) -> Result<i64, TestCaseError> {
    let res = build_resolution_complex::<F>(base, mono).unwrap();
    let ss = run_spectral_sequence(&res);
    let e1 = ss.page(1).unwrap();
    for p in 0..mono.degree() {
        let (cover, sys) = build_subset_cover::<F>(base, mono, p).unwrap();
        for (qd, &dim) in twisted_cohomology(&cover, &sys).unwrap().iter().enumerate() {
            prop_assert_eq!(e1.dim(p as i64, qd as i64), dim, "E1 at p={} q={}", p, qd);
        }
    }
    let total = total_cohomology(&res);
    prop_assert_eq!(ss.limit_totals(res.top_degree()), total.clone());
    let mut base_h = jetform::resolution::base_cohomology::<F>(base);
    base_h.resize(total.len(), 0);
    prop_assert_eq!(total, base_h);
    prop_assert!(ss.transitions_consistent());
    Ok(res.euler_characteristic())
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn random_graph_covers(seed in any::<u64>(), loops in 1usize..=3, degree in 2usize..=4) {
        let mut rng = random::rng(seed, 10);
        let base = DeltaComplex::new(1, vec![[0, 0]; loops], vec![]).unwrap();
        let perms = (0..loops).map(|_| random_perm(&mut rng, degree)).collect();
        let mono = Monodromy::new(&base, degree, perms).unwrap();
        let chi_q = check_cover::<Rational>(&base, &mono)?;
        let chi_2 = check_cover::<F2>(&base, &mono)?;
        prop_assert_eq!(chi_q, chi_2);
        prop_assert_eq!(chi_q, expected_euler_characteristic(&base));
    }

    #[test]
    fn random_torus_covers(seed in any::<u64>(), degree in 2usize..=3) {
        // commuting generators a, b and the diagonal c = b a keep the cocycle condition
        let mut rng = random::rng(seed, 11);
        let a = random_perm(&mut rng, degree);
        let power = rng.gen_range(0..degree);
        let mut b: Vec<usize> = (0..degree).collect();
        for _ in 0..power {
            b = b.iter().map(|&i| a[i]).collect();
        }
        let c: Vec<usize> = (0..degree).map(|i| b[a[i]]).collect();
        let base = DeltaComplex::new(1, vec![[0, 0]; 3], vec![[1, 2, 0], [0, 2, 1]]).unwrap();
        let mono = match Monodromy::new(&base, degree, vec![a, b, c]) {
            Ok(mono) => mono,
            Err(_) => return Err(TestCaseError::reject("cocycle")),
        };
        let chi_q = check_cover::<Rational>(&base, &mono)?;
        let chi_2 = check_cover::<F2>(&base, &mono)?;
        prop_assert_eq!(chi_q, chi_2);
    }
}
