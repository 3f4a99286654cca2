//! The verification harness: randomized and fixture-based checks of every
//! identity the library implements, grouped into numbered criteria.

pub mod oracles;
pub mod random;

use std::fmt;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::hermite::{
    interp_operator, interpolate_jets, spectral_ideal_kernel, standard_transversal, transversality_rank, MultiJet,
    PolySpace, WeightedSpectrum,
};
use crate::ideal::{
    classify_codim3, grassmann_distance, ideal_point_from_spectrum, reconstruct, tangent_limit_ideal,
    weighted_spectrum_1d, Codim3Type, JetIdeal,
};
use crate::jet::Jet;
use crate::path::{
    concat2, concat_mu, decompose, one_sided_derivatives, probe_points, reassemble, reparametrize, reverse_iota,
    split_p, splitting_residual, BumpProfile, TimeChange, TimePath,
};
use crate::poly::{monomials_of_degree, Polynomial};
use crate::resolution::{
    base_cohomology, build_resolution_complex, build_subset_cover, fixtures, run_spectral_sequence, total_cohomology,
    twisted_cohomology,
};
use crate::scalar::{Field, Rational, Scalar, Tolerance, F2};
use crate::simplex::{
    face_recurrence_check, newton_expansion, simplex_integral, AffineSimplex, IntegrationMode, SmoothFunction,
};
use oracles::{ExpPath, ExpSum};

/// Thresholds the criteria are judged against.
pub mod tolerances {
    /// Quadrature against exact integration on polynomial inputs.
    pub const QUADRATURE_VS_EXACT: f64 = 1e-8;
    /// Interpolation operator at `n = 2^14` against its confluent limit.
    pub const CONVERGENCE_SUP: f64 = 1e-3;
    /// Principal angle between the pair ideal at `t = 1e-5` and its tangent limit.
    pub const TANGENT_ANGLE: f64 = 1e-4;
    /// Splitting identity on black-box paths.
    pub const SPLIT_RESIDUAL: f64 = 1e-8;
    /// `μ_2(f, ι f)` against the single reparametrization of `f`.
    pub const REVERSE_CONCAT: f64 = 1e-10;
    /// One-sided derivatives across a junction.
    pub const JUNCTION: f64 = 1e-6;
    /// Adaptive quadrature against closed forms on exponential sums.
    pub const BLACK_BOX: f64 = 1e-6;
    /// Finite-difference step at junctions.
    pub const JUNCTION_STEP: f64 = 1e-4;
}

const EXACT: Tolerance = Tolerance::EXACT;

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {:<24} {}  cases={:<4} {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.cases,
            self.detail
        )
    }
}

struct Tally {
    cases: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn case(&mut self, label: impl FnOnce() -> String, outcome: crate::Result<bool>) {
        self.cases += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.failures.push(label()),
            Err(e) => self.failures.push(format!("{}: {e}", label())),
        }
    }

    fn finish(self, id: u8, name: &'static str) -> CriterionReport {
        let mut detail = self.notes.join("; ");
        if !self.failures.is_empty() {
            let shown: Vec<_> = self.failures.iter().take(3).cloned().collect();
            if !detail.is_empty() {
                detail.push_str("; ");
            }
            detail.push_str(&format!("{} failing, e.g. {}", self.failures.len(), shown.join(" | ")));
        }
        CriterionReport {
            id,
            name,
            passed: self.failures.is_empty() && self.cases > 0,
            cases: self.cases,
            detail,
        }
    }
}

fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

/// `(x - y_0) ... (x - y_{i-1}) / i!`.
fn newton_basis(nodes: &[Rational], i: usize) -> Polynomial<Rational> {
    let x = Polynomial::var(1, 0);
    let mut p = Polynomial::constant(1, Rational::factorial(i as u32).inv());
    for y in &nodes[..i] {
        p = &p * &(&x - &Polynomial::constant(1, y.clone()));
    }
    p
}

/// Newton basis functions integrate to the Kronecker delta over the node prefixes.
pub fn newton_delta(seed: u64) -> CriterionReport {
    let mut rng = random::rng(seed, 1);
    let mut t = Tally::new();
    for case in 0..100 {
        let k = rng.gen_range(1..=6);
        let pool: Vec<Rational> = (0..rng.gen_range(1..=k))
            .map(|_| random::rational(&mut rng, 6, 3))
            .collect();
        let nodes: Vec<Rational> = (0..k).map(|_| pool.choose(&mut rng).unwrap().clone()).collect();
        let outcome = (|| {
            let sigma = AffineSimplex::on_line(&nodes)?;
            for i in 0..k {
                let e = newton_basis(&nodes, i);
                let f: SmoothFunction<Rational> = e.clone().into();
                for j in 0..k {
                    let v = simplex_integral(&f, &sigma.prefix(j), IntegrationMode::Exact)?.scalar_value();
                    let delta = if i == j { q(1) } else { q(0) };
                    let oracle = Rational::factorial(j as u32) * oracles::divided_difference(&e, &nodes[..=j]);
                    if v != delta || oracle != delta {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })();
        t.case(|| format!("case {case} nodes {nodes:?}"), outcome);
    }
    t.finish(1, "newton-basis delta")
}

/// Both sides of the face recurrence agree exactly.
pub fn face_recurrence(seed: u64) -> CriterionReport {
    let mut rng = random::rng(seed, 2);
    let mut t = Tally::new();
    for case in 0..200 {
        let m = rng.gen_range(1..=3);
        let r = rng.gen_range(1..=4);
        let deg = rng.gen_range(0..=5);
        let terms = rng.gen_range(1..=6);
        let f: SmoothFunction<Rational> = random::polynomial(&mut rng, m, deg, terms).into();
        let vertices: Vec<Vec<Rational>> = (0..=r).map(|_| random::point(&mut rng, m, 4, 3)).collect();
        let i = rng.gen_range(0..r);
        let j = rng.gen_range(i + 1..=r);
        let outcome = AffineSimplex::new(vertices)
            .and_then(|s| face_recurrence_check(&f, &s, i, j, IntegrationMode::Exact))
            .map(|(lhs, rhs)| lhs.approx_eq(&rhs, EXACT));
        t.case(|| format!("case {case} (m={m}, r={r}, faces {i},{j})"), outcome);
    }
    let mut degenerate = 0;
    for case in 0..40 {
        let m = rng.gen_range(1..=3);
        let r = rng.gen_range(1..=4);
        let f: SmoothFunction<Rational> = random::polynomial(&mut rng, m, 5, 5).into();
        let mut vertices: Vec<Vec<Rational>> = (0..=r).map(|_| random::point(&mut rng, m, 4, 3)).collect();
        let i = rng.gen_range(0..r);
        let j = rng.gen_range(i + 1..=r);
        vertices[j] = vertices[i].clone();
        let outcome = AffineSimplex::new(vertices)
            .and_then(|s| face_recurrence_check(&f, &s, i, j, IntegrationMode::Exact))
            .map(|(lhs, rhs)| lhs.is_zero(EXACT) && rhs.is_zero(EXACT));
        degenerate += 1;
        t.case(|| format!("degenerate case {case}"), outcome);
    }
    t.notes.push(format!("{degenerate} with a repeated vertex pair"));
    t.finish(2, "face recurrence")
}

/// The generalized Taylor expansion reproduces `f(x)`; quadrature matches
/// exact integration term by term.
pub fn taylor_expansion(seed: u64) -> CriterionReport {
    let mut rng = random::rng(seed, 3);
    let mut t = Tally::new();
    let mut worst: f64 = 0.0;
    for case in 0..200 {
        let m = rng.gen_range(1..=3);
        let deg = rng.gen_range(0..=8);
        let terms = rng.gen_range(1..=6);
        let p = random::polynomial(&mut rng, m, deg, terms);
        let nodes: Vec<Vec<Rational>> = (0..rng.gen_range(1..=4))
            .map(|_| random::point(&mut rng, m, 3, 3))
            .collect();
        let x = random::point(&mut rng, m, 3, 3);
        let f: SmoothFunction<Rational> = p.clone().into();
        let outcome = (|| {
            let exact = newton_expansion(&f, &nodes, &x, IntegrationMode::Exact)?;
            if exact.total != p.eval(&x)? {
                return Ok(false);
            }
            let ff: SmoothFunction<f64> = p.to_f64().into();
            let nf: Vec<Vec<f64>> = nodes.iter().map(|v| v.iter().map(Scalar::to_f64).collect()).collect();
            let xf: Vec<f64> = x.iter().map(Scalar::to_f64).collect();
            let quad = newton_expansion(&ff, &nf, &xf, IntegrationMode::Quadrature { tol: 1e-13 })?;
            let diff = exact
                .terms
                .iter()
                .zip(&quad.terms)
                .map(|(a, b)| (a.to_f64() - b).abs())
                .fold(0.0, f64::max);
            worst = worst.max(diff);
            Ok(diff <= tolerances::QUADRATURE_VS_EXACT)
        })();
        t.case(|| format!("case {case} (m={m}, deg={deg})"), outcome);
    }
    t.notes.push(format!("max quadrature deviation {worst:.2e}"));
    t.finish(3, "newton/taylor expansion")
}

fn random_targets(rng: &mut impl Rng, spectrum: &WeightedSpectrum<Rational>) -> crate::Result<MultiJet<Rational>> {
    let m = spectrum.dim();
    let jets = spectrum
        .points()
        .iter()
        .map(|(y, k)| {
            let local = random::polynomial(rng, m, k - 1, 4);
            Jet::from_local(y.clone(), k - 1, local)
        })
        .collect::<crate::Result<Vec<_>>>()?;
    MultiJet::new(spectrum, jets)
}

/// Hermite interpolation hits every prescribed jet with degree below the
/// total weight, and the multi-jet map is onto from that space.
pub fn hermite_interpolation(seed: u64) -> CriterionReport {
    let mut rng = random::rng(seed, 4);
    let mut t = Tally::new();
    let mut simple = 0;
    for case in 0..200 {
        let m = rng.gen_range(1..=3);
        let y = random::spectrum(&mut rng, m, 8);
        let d = y.total_weight();
        if y.ideal_codim() == d as usize {
            simple += 1;
        }
        let targets = random_targets(&mut rng, &y);
        let outcome = (|| {
            let targets = targets?;
            let p = interpolate_jets(&y, &targets, EXACT)?;
            let jets_ok = MultiJet::of_polynomial(&y, &p)?.approx_eq(&targets, EXACT);
            let degree_ok = p.degree().is_none_or(|g| g < d);
            let tr = transversality_rank(&standard_transversal(m, d), &y, EXACT)?;
            Ok(jets_ok && degree_ok && tr.is_transverse && tr.rank == y.ideal_codim())
        })();
        t.case(|| format!("case {case} (m={m}, d={d})"), outcome);
    }
    t.notes.push(format!(
        "rank equals the number of jet conditions everywhere; that number equals the total weight in {simple} cases"
    ));
    t.finish(4, "hermite interpolation")
}

/// A spectrum near `base` in which every point of weight `k` splits into
/// points whose weights sum to `k`. In dimension above one only simple base
/// points split.
fn perturb(rng: &mut impl Rng, base: &WeightedSpectrum<Rational>) -> crate::Result<WeightedSpectrum<Rational>> {
    let m = base.dim();
    let mut points: Vec<(Vec<Rational>, u32)> = Vec::new();
    for (z, k) in base.points() {
        if m > 1 && *k > 1 {
            points.push((z.clone(), *k));
            continue;
        }
        let mut left = *k;
        let mut first = true;
        while left > 0 {
            let w = rng.gen_range(1..=left);
            let y: Vec<Rational> = if first && rng.gen_bool(0.5) {
                z.clone()
            } else {
                z.iter()
                    .map(|c| c.clone() + Rational::new(rng.gen_range(-3..=3).into(), 1000.into()))
                    .collect()
            };
            first = false;
            if let Some(slot) = points.iter_mut().find(|(p, _)| *p == y) {
                slot.1 += w;
            } else {
                points.push((y, w));
            }
            left -= w;
        }
    }
    WeightedSpectrum::new(points)
}

/// The interpolation operator kills the spectral ideal, reproduces jets, and
/// converges as two nodes collide.
pub fn interpolation_operator(seed: u64) -> CriterionReport {
    let mut rng = random::rng(seed, 5);
    let mut t = Tally::new();
    for case in 0..60 {
        let m = [1, 1, 2, 3][case % 4];
        let base = random::spectrum(&mut rng, m, 5);
        let y = if case % 3 == 0 {
            Ok(base.clone())
        } else {
            perturb(&mut rng, &base)
        };
        let f = random::polynomial(&mut rng, m, base.total_weight() + 1, 5);
        let coeffs: Vec<Rational> = (0..8).map(|_| random::rational(&mut rng, 4, 2)).collect();
        let outcome = (|| {
            let y = y?;
            let d = base.total_weight();
            let complement = standard_transversal(m, d).complement_of(&base, EXACT);
            let mode = IntegrationMode::Exact;
            // a member of m_Y
            let ideal = spectral_ideal_kernel(&y, &PolySpace::up_to_degree(m, y.total_weight() + 1), EXACT)?;
            let g = ideal
                .iter()
                .zip(&coeffs)
                .fold(Polynomial::zero(m), |acc, (p, c)| &acc + &p.scale(c));
            let a_g = interp_operator(&g.clone().into(), &y, &base, &complement, mode, EXACT)?;
            // jets of f - A(f, Y) vanish on Y
            let a_f = interp_operator(&f.clone().into(), &y, &base, &complement, mode, EXACT)?;
            let residual = MultiJet::of_polynomial(&y, &(&f - &a_f))?;
            Ok(a_g.is_zero() && residual.jets().iter().all(|j| j.is_zero()))
        })();
        t.case(|| format!("case {case} (m={m})"), outcome);
    }
    // two nodes colliding at 0 on the line, f = x^2
    let f: SmoothFunction<f64> = Polynomial::monomial(vec![2], 1.0).into();
    let base = WeightedSpectrum::on_line(&[(0.0, 2)]).unwrap();
    let complement = PolySpace::up_to_degree(1, 1);
    let tol = Tolerance::new(1e-12);
    let limit = interp_operator(&f, &base, &base, &complement, IntegrationMode::Exact, tol);
    let grid = oracles::grid(-1.0, 1.0, 201);
    let mut distances = Vec::new();
    let outcome = (|| {
        let limit = limit?;
        for e in 4..=14 {
            let n = (1u32 << e) as f64;
            let y = WeightedSpectrum::on_line(&[(0.0, 1), (1.0 / n, 1)])?;
            let a = interp_operator(&f, &y, &base, &complement, IntegrationMode::Exact, tol)?;
            let sup = grid
                .iter()
                .map(|&x| (a.eval_f64(&[x]) - limit.eval_f64(&[x])).abs())
                .fold(0.0, f64::max);
            distances.push(sup);
        }
        let monotone = distances.windows(2).all(|w| w[1] < w[0]);
        Ok(monotone && *distances.last().unwrap() < tolerances::CONVERGENCE_SUP)
    })();
    t.case(|| format!("collision sequence {distances:?}"), outcome);
    if let Some(last) = distances.last() {
        t.notes.push(format!("sup-distance at n=2^14: {last:.3e}"));
    }
    t.finish(5, "interpolation operator")
}

/// Pair ideals converge to the tangent-direction ideal; one-dimensional
/// spectra survive the round trip through the ideal space.
pub fn grassmann_limits(seed: u64) -> CriterionReport {
    let mut rng = random::rng(seed, 6);
    let mut t = Tally::new();
    let mut worst: f64 = 0.0;
    for case in 0..100 {
        let m = 2 + case % 2;
        let x = random::point(&mut rng, m, 3, 2);
        let v = loop {
            let v = random::point(&mut rng, m, 3, 2);
            if v.iter().any(|c| !c.is_negligible(EXACT)) {
                break v;
            }
        };
        let ambient = PolySpace::up_to_degree(m, 2);
        let outcome = (|| {
            let limit = tangent_limit_ideal(&x, &v, &ambient, EXACT)?;
            let mut angles = Vec::new();
            for e in 1..=5 {
                let step = Rational::new(1.into(), 10i64.pow(e).into());
                let moved: Vec<Rational> = x
                    .iter()
                    .zip(&v)
                    .map(|(a, b)| a.clone() + step.clone() * b.clone())
                    .collect();
                let pair = WeightedSpectrum::from_multiset(&[x.clone(), moved])?;
                let point = ideal_point_from_spectrum(&pair, &ambient, EXACT)?;
                angles.push(grassmann_distance(&point, &limit)?);
            }
            let last = *angles.last().unwrap();
            worst = worst.max(last);
            Ok(angles.windows(2).all(|w| w[1] < w[0]) && last < tolerances::TANGENT_ANGLE)
        })();
        t.case(|| format!("case {case} (m={m})"), outcome);
    }
    for case in 0..50 {
        let y = random::spectrum(&mut rng, 1, 6);
        let ambient = PolySpace::up_to_degree(1, y.total_weight() + 2);
        let outcome = (|| {
            let point = ideal_point_from_spectrum(&y, &ambient, EXACT)?;
            let back = weighted_spectrum_1d(&point, EXACT)?;
            Ok(!back.approximate && back.spectrum == y)
        })();
        t.case(|| format!("round trip {case}"), outcome);
    }
    t.notes.push(format!("largest angle at t=1e-5: {worst:.2e}"));
    t.finish(6, "grassmannian limits")
}

/// Ideals of the normal forms: the 2-plane `{x_3 = ... = 0}` and the curves
/// `(t, -c t^2, 0, ...)` for `c = 0, 1`.
pub fn codim3_normal_forms(m: usize) -> Vec<(JetIdeal<Rational>, Option<u8>)> {
    let var = |i: usize| Polynomial::<Rational>::var(m, i);
    let mut out = Vec::new();
    if m >= 2 {
        let plane: Vec<_> = (2..m).map(var).collect();
        let mut gens = plane.clone();
        gens.extend(monomials_of_degree(2, 2).into_iter().map(|e| {
            let mut full = e.clone();
            full.resize(m, 0);
            Polynomial::monomial(full, q(1))
        }));
        out.push((JetIdeal::generated_by(m, 2, &gens, EXACT).unwrap(), None));
    }
    let rest: Vec<_> = (1..m).map(var).collect();
    out.push((JetIdeal::generated_by(m, 2, &rest, EXACT).unwrap(), Some(0)));
    if m >= 2 {
        let mut gens = vec![&var(1) + &var(0).pow(2)];
        gens.extend((2..m).map(var));
        out.push((JetIdeal::generated_by(m, 2, &gens, EXACT).unwrap(), Some(1)));
    }
    out
}

/// Classification followed by reconstruction returns the ideal, after
/// random linear coordinate changes of the normal forms.
pub fn codim3_classification(seed: u64) -> CriterionReport {
    let mut rng = random::rng(seed, 7);
    let mut t = Tally::new();
    for case in 0..100 {
        let m = rng.gen_range(1..=4);
        let forms = codim3_normal_forms(m);
        let (normal, kind) = forms.choose(&mut rng).unwrap().clone();
        let change = random::invertible(&mut rng, m);
        let outcome = (|| {
            let ideal = normal.pull_back(&change, EXACT)?;
            let datum = classify_codim3(&ideal, EXACT)?;
            let back = reconstruct(m, &datum, EXACT)?;
            let kind_ok = match (&datum, kind) {
                (Codim3Type::Plane(_), None) => true,
                (Codim3Type::Curve(c), Some(k)) => {
                    c.normal_form_c == k && ideal.pull_back(&c.adapting_map, EXACT)? == normal
                }
                _ => false,
            };
            Ok(kind_ok && back == ideal)
        })();
        t.case(|| format!("case {case} (m={m}, form {kind:?})"), outcome);
    }
    t.finish(7, "codim-3 classification")
}

/// A random polynomial path in `m` space variables, `deg_x <= 3`, `deg_t <= 6`.
fn random_path(rng: &mut impl Rng, m: usize) -> Polynomial<Rational> {
    let terms: Vec<(Vec<u32>, Rational)> = (0..rng.gen_range(1..=8))
        .map(|_| {
            let mut e = vec![0; m + 1];
            let mut left = rng.gen_range(0..=3);
            while left > 0 {
                e[rng.gen_range(0..m)] += 1;
                left -= 1;
            }
            e[m] = rng.gen_range(0..=6);
            (e, random::rational(rng, 5, 3))
        })
        .collect();
    Polynomial::from_terms(m + 1, terms).unwrap()
}

fn random_exp_path(rng: &mut impl Rng, m: usize) -> ExpPath {
    let c = |rng: &mut dyn rand::RngCore| Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-2.0..2.0));
    ExpPath {
        terms: (0..rng.gen_range(1..=3))
            .map(|_| {
                let w = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let a = (0..m).map(|_| c(rng)).collect();
                (w, a, c(rng))
            })
            .collect(),
    }
}

/// The splitting operator satisfies its defining identity and, with the
/// endpoint restrictions, reassembles the path.
pub fn splitting(seed: u64) -> CriterionReport {
    let mut rng = random::rng(seed, 8);
    let mut t = Tally::new();
    for case in 0..200 {
        let m = rng.gen_range(1..=2);
        let f = random_path(&mut rng, m);
        let outcome = (|| {
            let path = TimePath::polynomial(f.clone())?;
            let p = split_p(&path)?;
            let p = p.as_polynomial().expect("polynomial in, polynomial out");
            let tv = Polynomial::var(m + 1, m);
            let one = Polynomial::one(m + 1);
            let f0 = path.endpoint_polynomial(&q(0)).unwrap().extend_vars(1);
            let f1 = path.endpoint_polynomial(&q(1)).unwrap().extend_vars(1);
            let lhs = &(&tv * &(&tv - &one)) * p;
            let rhs = &(&f - &(&(&one - &tv) * &f0)) - &(&tv * &f1);
            let (split, a, b) = decompose(&path)?;
            Ok(lhs == rhs && reassemble(&split, &a, &b) == f)
        })();
        t.case(|| format!("case {case} (m={m})"), outcome);
    }
    let mut worst: f64 = 0.0;
    for case in 0..12 {
        let m = rng.gen_range(1..=2);
        let path: TimePath<f64> = TimePath::function(random_exp_path(&mut rng, m));
        let outcome = (|| {
            let p = split_p(&path)?;
            for x in probe_points(m).iter().take(3) {
                for tt in oracles::grid(0.0, 1.0, 101) {
                    let r = splitting_residual(&path, &p, x, tt)?.abs();
                    worst = worst.max(r);
                }
            }
            Ok(worst <= tolerances::SPLIT_RESIDUAL)
        })();
        t.case(|| format!("black-box path {case}"), outcome);
    }
    t.notes.push(format!("black-box residual max {worst:.2e}"));
    t.finish(8, "splitting identity")
}

/// Path `g` with `g(., 0) = f(., 1)`.
fn matching_path(rng: &mut impl Rng, f: &Polynomial<Rational>, m: usize) -> Polynomial<Rational> {
    let g = random_path(rng, m);
    let fp = TimePath::Polynomial(f.clone());
    let gp = TimePath::Polynomial(g.clone());
    let shift = &fp.endpoint_polynomial(&q(1)).unwrap() - &gp.endpoint_polynomial(&q(0)).unwrap();
    &g + &shift.extend_vars(1)
}

/// Endpoints, reversal and junction smoothness of smoothed concatenation.
pub fn concatenation(seed: u64) -> CriterionReport {
    let mut rng = random::rng(seed, 9);
    let mut t = Tally::new();
    let tol = Tolerance::new(1e-12);
    let mut worst_rev: f64 = 0.0;
    let mut worst_junction: f64 = 0.0;
    for case in 0..30 {
        let m = 1;
        let f = random_path(&mut rng, m);
        let g = matching_path(&mut rng, &f, m);
        let h = matching_path(&mut rng, &g, m);
        let (ff, gf, hf) = (
            TimePath::Polynomial(f.to_f64()),
            TimePath::Polynomial(g.to_f64()),
            TimePath::Polynomial(h.to_f64()),
        );
        let eps = [0.1, 0.2, 0.3][case % 3];
        let profile = BumpProfile::new(eps).unwrap();
        let outcome = (|| {
            // endpoint contracts
            let mu2 = concat2(&ff, &gf, profile, tol)?;
            let s1 = rng.gen_range(0.2..0.45);
            let s2 = rng.gen_range(0.55..0.8);
            let mu3 = concat_mu(
                &[ff.clone(), gf.clone(), hf.clone()],
                &[0.0, s1, s2, 1.0],
                &[profile; 3],
                tol,
            )?;
            let mut ok = true;
            for x in probe_points(m) {
                ok &= mu2.eval(&x, 0.0)? == ff.eval(&x, 0.0)? && mu2.eval(&x, 1.0)? == gf.eval(&x, 1.0)?;
                ok &= mu3.eval(&x, 0.0)? == ff.eval(&x, 0.0)? && mu3.eval(&x, 1.0)? == hf.eval(&x, 1.0)?;
            }
            // μ_2(f, ι f) against f reparametrized by μ_2(t, 1 - t)
            let rev = concat2(&ff, &reverse_iota(&ff), profile, tol)?;
            let id = TimePath::polynomial(Polynomial::var(1, 0))?;
            let back = TimePath::polynomial(Polynomial::affine(&[-1.0], 1.0))?;
            let rho = TimeChange::from_path(concat2(&id, &back, profile, tol)?)?;
            let single = reparametrize(&rho, &ff);
            for x in oracles::grid(-1.0, 1.0, 101) {
                for tt in oracles::grid(0.0, 1.0, 101) {
                    let d = (rev.eval(&[x], tt)? - single.eval(&[x], tt)?).abs();
                    worst_rev = worst_rev.max(d);
                }
            }
            ok &= worst_rev <= tolerances::REVERSE_CONCAT;
            // junction derivatives
            for (path, breaks) in [(&mu2, vec![0.5]), (&mu3, vec![s1, s2])] {
                for s in breaks {
                    for x in probe_points(m).iter().take(3) {
                        let (left, right) = one_sided_derivatives(path, x, s, tolerances::JUNCTION_STEP)?;
                        for k in 0..3 {
                            worst_junction = worst_junction.max((left[k] - right[k]).abs());
                        }
                    }
                }
            }
            ok &= worst_junction <= tolerances::JUNCTION;
            Ok(ok)
        })();
        t.case(|| format!("case {case} (eps={eps})"), outcome);
    }
    t.notes.push(format!(
        "reversal deviation {worst_rev:.2e}, junction deviation {worst_junction:.2e}"
    ));
    t.finish(9, "concatenation")
}

fn resolution_checks<F: Field>(t: &mut Tally, field: &str) {
    for fx in fixtures() {
        let outcome = (|| {
            let res = build_resolution_complex::<F>(&fx.base, &fx.mono)?;
            let ss = run_spectral_sequence(&res);
            let e1 = ss.page(1).expect("first page");
            let mut e1_ok = true;
            for p in 0..fx.mono.degree() {
                let (cover, sys) = build_subset_cover::<F>(&fx.base, &fx.mono, p)?;
                let h = twisted_cohomology(&cover, &sys)?;
                for (qd, &dim) in h.iter().enumerate() {
                    e1_ok &= e1.dim(p as i64, qd as i64) == dim;
                }
                // nothing outside the base dimensions
                e1_ok &= e1
                    .dims
                    .keys()
                    .filter(|(pp, _)| *pp == p as i64)
                    .all(|(_, qd)| (*qd as usize) < h.len());
            }
            let mut base = base_cohomology::<F>(&fx.base);
            let total = total_cohomology(&res);
            base.resize(total.len(), 0);
            let limit_ok = ss.limit_totals(res.top_degree()) == base;
            let vb_ok = total == base;
            Ok(e1_ok && limit_ok && vb_ok && ss.transitions_consistent())
        })();
        t.case(|| format!("{} over {field}", fx.name), outcome);
    }
}

/// The resolution spectral sequence of covering fixtures over Q and F2.
pub fn resolution_spectral_sequence(_seed: u64) -> CriterionReport {
    let mut t = Tally::new();
    resolution_checks::<Rational>(&mut t, "Q");
    resolution_checks::<F2>(&mut t, "F2");
    t.notes.push(format!("{} covers", fixtures().len()));
    t.finish(10, "resolution spectral seq")
}

fn random_exp_sum(rng: &mut impl Rng, m: usize) -> ExpSum {
    ExpSum {
        terms: (0..rng.gen_range(1..=3))
            .map(|_| {
                let w = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let c = (0..m)
                    .map(|_| Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-2.0..2.0)))
                    .collect();
                (w, c)
            })
            .collect(),
    }
}

/// Adaptive quadrature of black-box exponential sums against closed forms.
pub fn black_box_quadrature(seed: u64) -> CriterionReport {
    let mut rng = random::rng(seed, 11);
    let mut t = Tally::new();
    let mut worst: f64 = 0.0;
    for case in 0..50 {
        let m = rng.gen_range(1..=3);
        let r = rng.gen_range(0..=3);
        let f = random_exp_sum(&mut rng, m);
        let vertices: Vec<Vec<f64>> = (0..=r)
            .map(|_| (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let outcome = (|| {
            let sigma = AffineSimplex::new(vertices.clone())?;
            let form = simplex_integral(
                &SmoothFunction::black_box(f.clone()),
                &sigma,
                IntegrationMode::Quadrature { tol: 1e-10 },
            )?;
            let entries = monomials_of_degree(m, r as u32);
            let oracle = oracles::exp_sum_simplex_integral(&f, &vertices, &entries);
            let diff = entries
                .iter()
                .zip(&oracle)
                .map(|(a, v)| (form.entry(a)[0] - v).abs())
                .fold(0.0, f64::max);
            worst = worst.max(diff);
            Ok(diff <= tolerances::BLACK_BOX)
        })();
        t.case(|| format!("fixture {case} (m={m}, r={r})"), outcome);
    }
    t.notes.push(format!("max deviation {worst:.2e}"));
    t.finish(11, "black-box quadrature")
}

pub type Criterion = fn(u64) -> CriterionReport;

/// All criteria in order, with their short names.
pub const CRITERIA: [(u8, &str, Criterion); 11] = [
    (1, "newton", newton_delta),
    (2, "face", face_recurrence),
    (3, "taylor", taylor_expansion),
    (4, "hermite", hermite_interpolation),
    (5, "operator", interpolation_operator),
    (6, "grassmann", grassmann_limits),
    (7, "codim3", codim3_classification),
    (8, "split", splitting),
    (9, "concat", concatenation),
    (10, "resolution", resolution_spectral_sequence),
    (11, "quadrature", black_box_quadrature),
];

/// Selects criteria by `all`, number or short name.
pub fn select(suite: &str) -> Option<Vec<(u8, Criterion)>> {
    if suite == "all" {
        return Some(CRITERIA.iter().map(|&(id, _, f)| (id, f)).collect());
    }
    let mut out = Vec::new();
    for part in suite.split(',') {
        let part = part.trim();
        let found = CRITERIA
            .iter()
            .find(|(id, name, _)| *name == part || id.to_string() == part)?;
        out.push((found.0, found.2));
    }
    Some(out)
}

/// Runs the criteria on separate threads; each is deterministic in `seed`.
pub fn run(criteria: &[(u8, Criterion)], seed: u64) -> Vec<CriterionReport> {
    let mut reports: Vec<CriterionReport> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|&(_, f)| s.spawn(move || f(seed))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion panicked"))
            .collect()
    });
    reports.sort_by_key(|r| r.id);
    reports
}
