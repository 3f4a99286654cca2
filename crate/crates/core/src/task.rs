//! Task files: one JSON object naming a verb, its inputs, a scalar profile
//! and a tolerance. Running a task produces a report echoing the inputs,
//! the outputs, and every check performed.

use std::fmt;

use serde_json::{json, Value};

use crate::error::Error;
use crate::hermite::{
    cluster, cluster_data, interp_operator, interpolate_jets, multi_jet_matrix, standard_transversal,
    transversality_rank, MultiJet, PolySpace,
};
use crate::ideal::{
    classify_codim3, grassmann_distance, ideal_point_from_spectrum, reconstruct, tangent_limit_ideal,
    weighted_spectrum_1d, Codim3Type, IdealPoint, JetIdeal,
};
use crate::json::{self, schema_error, Parsed, SchemaError};
use crate::path::{
    concat_mu, decompose, one_sided_derivatives, probe_points, reassemble, reverse_iota, split_p, BumpProfile, TimePath,
};
use crate::poly::Polynomial;
use crate::resolution::{
    base_cohomology, build_resolution_complex, build_subset_cover, fixtures, run_spectral_sequence, total_cohomology,
    twisted_cohomology, DeltaComplex, Monodromy, SpectralSequence,
};
use crate::scalar::{Field, Rational, Scalar, Tolerance, F2};
use crate::simplex::{face_recurrence_check, simplex_integral, AffineSimplex, IntegrationMode, SmoothFunction};
use crate::verify;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Q,
    F2,
}

/// Command-line overrides; `None` defers to the task file.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub profile: Option<Profile>,
    pub tol: Option<f64>,
    pub field: Option<FieldChoice>,
    pub seed: Option<u64>,
}

pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    /// Page table for `resolve`, written next to the report.
    pub csv: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TaskError {
    Schema(SchemaError),
    Module { module: &'static str, source: Error },
}

impl fmt::Display for TaskError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TaskError::Schema(e) => write!(f, "schema violation at {e}"),
            TaskError::Module { module, source } => write!(f, "{module}: {source}"),
        }
    }
}

impl std::error::Error for TaskError {}

impl From<SchemaError> for TaskError {
    fn from(e: SchemaError) -> Self {
        TaskError::Schema(e)
    }
}

impl TaskError {
    pub fn to_json(&self) -> Value {
        match self {
            TaskError::Schema(e) => json!({"error": {"kind": "schema", "pointer": e.pointer, "message": e.message}}),
            TaskError::Module { module, source } => {
                json!({"error": {"kind": "module", "module": module, "message": source.to_string()}})
            }
        }
    }
}

type Run<T> = std::result::Result<T, TaskError>;

fn in_module(module: &'static str) -> impl Fn(Error) -> TaskError {
    move |source| TaskError::Module { module, source }
}

struct Checks(Vec<Value>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        let detail = detail.into();
        let mut entry = json!({"name": name.into(), "passed": passed});
        if !detail.is_empty() {
            entry["detail"] = json!(detail);
        }
        self.0.push(entry);
    }

    fn passed(&self) -> bool {
        self.0.iter().all(|c| c["passed"] == json!(true))
    }
}

struct Context {
    profile: Profile,
    tol: Tolerance,
    field: FieldChoice,
    seed: u64,
}

fn read_context(task: &Value, opts: &Options) -> Parsed<Context> {
    let profile = match opts.profile {
        Some(p) => p,
        None => match task
            .get("profile")
            .map(|p| json::str_value(p, "/profile"))
            .transpose()?
        {
            None | Some("exact") => Profile::Exact,
            Some("float") => Profile::Float,
            Some(other) => return Err(schema_error("/profile", format!("unknown profile \"{other}\""))),
        },
    };
    let tol = match opts.tol {
        Some(t) => Some(t),
        None => task.get("tol").map(|t| json::f64_value(t, "/tol")).transpose()?,
    };
    let tol = match (profile, tol) {
        (Profile::Exact, None) => Tolerance::EXACT,
        (Profile::Exact, Some(_)) => {
            return Err(schema_error("/tol", "the exact profile takes no tolerance"));
        }
        (Profile::Float, None) => return Err(schema_error("/tol", "the float profile requires a tolerance")),
        (Profile::Float, Some(t)) if t > 0.0 && t.is_finite() => Tolerance::new(t),
        (Profile::Float, Some(t)) => return Err(schema_error("/tol", format!("tolerance {t} must be positive"))),
    };
    let field = match opts.field {
        Some(f) => f,
        None => match task.get("field").map(|f| json::str_value(f, "/field")).transpose()? {
            None | Some("Q") => FieldChoice::Q,
            Some("F2") => FieldChoice::F2,
            Some(other) => return Err(schema_error("/field", format!("unknown field \"{other}\""))),
        },
    };
    let seed = match opts.seed {
        Some(s) => s,
        None => task
            .get("seed")
            .map(|s| {
                s.as_u64()
                    .ok_or_else(|| schema_error("/seed", "expected a non-negative integer"))
            })
            .transpose()?
            .unwrap_or(DEFAULT_SEED),
    };
    Ok(Context {
        profile,
        tol,
        field,
        seed,
    })
}

/// Runs a task. Schema violations and module errors are returned as errors;
/// failed checks are reported in the outcome.
pub fn run_task(task: &Value, opts: &Options) -> Run<Outcome> {
    if !task.is_object() {
        return Err(schema_error("", "a task is a JSON object").into());
    }
    let verb = json::str_value(json::field(task, "", "verb")?, "/verb")?;
    let ctx = read_context(task, opts)?;
    let mut checks = Checks::new();
    let mut csv = None;
    let output = match (verb, ctx.profile) {
        ("simplex", Profile::Exact) => run_simplex::<Rational>(task, &ctx, &mut checks)?,
        ("simplex", Profile::Float) => run_simplex::<f64>(task, &ctx, &mut checks)?,
        ("interp", Profile::Exact) => run_interp::<Rational>(task, &ctx, &mut checks)?,
        ("interp", Profile::Float) => run_interp::<f64>(task, &ctx, &mut checks)?,
        ("ideal", Profile::Exact) => run_ideal::<Rational>(task, &ctx, &mut checks)?,
        ("ideal", Profile::Float) => run_ideal::<f64>(task, &ctx, &mut checks)?,
        ("path", Profile::Exact) => run_path::<Rational>(task, &ctx, &mut checks)?,
        ("path", Profile::Float) => run_path::<f64>(task, &ctx, &mut checks)?,
        ("resolve", _) => {
            let (out, table) = match ctx.field {
                FieldChoice::Q => run_resolve::<Rational>(task, "Q", &mut checks)?,
                FieldChoice::F2 => run_resolve::<F2>(task, "F2", &mut checks)?,
            };
            csv = Some(table);
            out
        }
        ("verify", _) => {
            let suite = task.get("suite").map_or(Ok("all"), |s| json::str_value(s, "/suite"))?;
            run_verify(suite, ctx.seed, &mut checks)?
        }
        (other, _) => return Err(schema_error("/verb", format!("unknown verb \"{other}\"")).into()),
    };
    let mut output = output;
    if let Some(table) = &csv {
        output["pages_csv"] = json!(table);
    }
    let passed = checks.passed();
    let report = json!({
        "verb": verb,
        "profile": match ctx.profile { Profile::Exact => "exact", Profile::Float => "float" },
        "tol": ctx.tol.value(),
        "input": task,
        "output": output,
        "checks": checks.0,
        "passed": passed,
    });
    Ok(Outcome { report, csv, passed })
}

/// The `verify` report for a suite selector.
pub fn run_verify_suite(suite: &str, seed: u64) -> Run<Outcome> {
    let mut checks = Checks::new();
    let output = run_verify(suite, seed, &mut checks)?;
    let passed = checks.passed();
    let report = json!({
        "verb": "verify",
        "input": {"suite": suite, "seed": seed},
        "output": output,
        "checks": checks.0,
        "passed": passed,
    });
    Ok(Outcome {
        report,
        csv: None,
        passed,
    })
}

fn run_verify(suite: &str, seed: u64, checks: &mut Checks) -> Run<Value> {
    let selected = verify::select(suite).ok_or_else(|| schema_error("/suite", format!("unknown suite \"{suite}\"")))?;
    let reports = verify::run(&selected, seed);
    for r in &reports {
        checks.push(format!("criterion {} {}", r.id, r.name), r.passed, r.detail.clone());
    }
    Ok(json!({
        "seed": seed,
        "criteria": reports
            .iter()
            .map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "cases": r.cases}))
            .collect::<Vec<_>>(),
    }))
}

fn function<S: Scalar>(task: &Value, key: &str) -> Parsed<SmoothFunction<S>> {
    let ptr = format!("/{key}");
    let v = json::field(task, "", key)?;
    if v.is_array() {
        let ps = json::array(v, &ptr)?
            .iter()
            .enumerate()
            .map(|(i, p)| json::polynomial(p, &format!("{ptr}/{i}")))
            .collect::<Parsed<Vec<Polynomial<S>>>>()?;
        if ps.is_empty() || ps.iter().any(|p| p.nvars() != ps[0].nvars()) {
            return Err(schema_error(
                &ptr,
                "components must be nonempty with a common dimension",
            ));
        }
        Ok(SmoothFunction::Polynomial(ps))
    } else {
        Ok(json::polynomial(v, &ptr)?.into())
    }
}

fn form_json<S: Scalar>(form: &crate::simplex::SymmetricForm<S>) -> Value {
    Value::Array(
        form.entries()
            .map(|(a, v)| json!({"index": a, "value": json::vector_json(v)}))
            .collect(),
    )
}

fn run_simplex<S: Scalar>(task: &Value, ctx: &Context, checks: &mut Checks) -> Run<Value> {
    const M: &str = "simplex";
    let f = function::<S>(task, "function")?;
    let vp = json::field(task, "", "simplex")?;
    let vertices = json::array(vp, "/simplex")?
        .iter()
        .enumerate()
        .map(|(i, v)| json::vector::<S>(v, &format!("/simplex/{i}")))
        .collect::<Parsed<Vec<_>>>()?;
    let sigma = AffineSimplex::new(vertices).map_err(in_module(M))?;
    let mode = match task.get("mode").map(|m| json::str_value(m, "/mode")).transpose()? {
        None | Some("exact") => IntegrationMode::Exact,
        Some("quad") => IntegrationMode::Quadrature {
            tol: match task.get("quad_tol") {
                Some(t) => json::f64_value(t, "/quad_tol")?,
                None if ctx.profile == Profile::Float => ctx.tol.value(),
                None => 1e-10,
            },
        },
        Some(other) => return Err(schema_error("/mode", format!("unknown mode \"{other}\"")).into()),
    };
    let form = simplex_integral(&f, &sigma, mode).map_err(in_module(M))?;
    let r = sigma.order();
    let check_tol = match mode {
        IntegrationMode::Exact => ctx.tol,
        IntegrationMode::Quadrature { tol } => Tolerance::new(ctx.tol.value().max(tol * 100.0)),
    };
    for i in 0..r {
        for j in i + 1..=r {
            let (lhs, rhs) = face_recurrence_check(&f, &sigma, i, j, mode).map_err(in_module(M))?;
            let passed = lhs.approx_eq(&rhs, check_tol);
            let detail = if S::is_exact() {
                String::new()
            } else {
                format!("max difference {:.3e}", lhs.max_abs_diff(&rhs))
            };
            checks.push(format!("face recurrence ({i}, {j})"), passed, detail);
        }
    }
    Ok(json!({
        "order": r,
        "dimension": sigma.dim(),
        "form": form_json(&form),
    }))
}

fn run_interp<S: Scalar>(task: &Value, ctx: &Context, checks: &mut Checks) -> Run<Value> {
    const M: &str = "hermite";
    let y = json::spectrum::<S>(json::field(task, "", "spectrum")?, "/spectrum")?;
    let m = y.dim();
    let d = y.total_weight();
    let targets = match (task.get("targets"), task.get("function")) {
        (Some(j), _) => json::multi_jet(j, "/targets", &y)?,
        (None, Some(f)) => {
            let p = json::polynomial::<S>(f, "/function")?;
            MultiJet::of_polynomial(&y, &p).map_err(in_module(M))?
        }
        (None, None) => return Err(schema_error("", "give either \"targets\" or \"function\"").into()),
    };
    let p = interpolate_jets(&y, &targets, ctx.tol).map_err(in_module(M))?;
    let achieved = MultiJet::of_polynomial(&y, &p).map_err(in_module(M))?;
    checks.push("jets match", achieved.approx_eq(&targets, ctx.tol), "");
    let degree = p.degree();
    checks.push(
        "degree below total weight",
        degree.is_none_or(|g| g < d),
        format!(
            "degree {}, total weight {d}",
            degree.map_or("-inf".to_string(), |g| g.to_string())
        ),
    );
    let ambient = match task.get("ambient_degree") {
        Some(v) => PolySpace::up_to_degree(m, json::usize_value(v, "/ambient_degree")? as u32),
        None => standard_transversal(m, d),
    };
    let tr = transversality_rank(&ambient, &y, ctx.tol).map_err(in_module(M))?;
    checks.push(
        "ambient polynomials are transverse to the spectral ideal",
        tr.is_transverse,
        format!("rank {} of {} jet conditions", tr.rank, tr.conditions),
    );
    let mut out = json!({
        "interpolant": json::polynomial_json(&p),
        "degree": degree,
        "total_weight": d,
        "jet_conditions": tr.conditions,
        "rank": tr.rank,
    });
    if let Some(bv) = task.get("base") {
        let base = json::spectrum::<S>(bv, "/base")?;
        let fv = json::field(task, "", "function")
            .map_err(|_| schema_error("/function", "the interpolation operator needs \"function\""))?;
        let f: SmoothFunction<S> = json::polynomial::<S>(fv, "/function")?.into();
        let complement = standard_transversal(m, base.total_weight()).complement_of(&base, ctx.tol);
        let a = interp_operator(&f, &y, &base, &complement, IntegrationMode::Exact, ctx.tol).map_err(in_module(M))?;
        let clusters = cluster(&y, &base).map_err(in_module(M))?;
        let lhs = cluster_data(&a.clone().into(), &clusters, IntegrationMode::Exact).map_err(in_module(M))?;
        let rhs = cluster_data(&f, &clusters, IntegrationMode::Exact).map_err(in_module(M))?;
        checks.push(
            "operator matches the cluster data of the function",
            lhs.iter().zip(&rhs).all(|(a, b)| a.approx_eq(b, ctx.tol)),
            "",
        );
        let rank = multi_jet_matrix(&base, &complement).rank(ctx.tol);
        out["operator"] = json!({
            "complement": complement.basis(),
            "value": json::polynomial_json(&a),
            "rank": rank,
        });
    }
    Ok(out)
}

fn point_json<S: Scalar>(p: &IdealPoint<S>) -> Value {
    json!({
        "ambient": p.ambient().basis(),
        "codim": p.codim(),
        "basis": p.polynomials().iter().map(json::polynomial_json).collect::<Vec<_>>(),
    })
}

fn ambient_degree(task: &Value, default: u32) -> Parsed<u32> {
    task.get("degree")
        .map_or(Ok(default as usize), |v| json::usize_value(v, "/degree"))
        .map(|d| d as u32)
}

fn run_ideal<S: Scalar>(task: &Value, ctx: &Context, checks: &mut Checks) -> Run<Value> {
    const M: &str = "ideal";
    let op = json::str_value(json::field(task, "", "op")?, "/op")?;
    match op {
        "from-spectrum" => {
            let y = json::spectrum::<S>(json::field(task, "", "spectrum")?, "/spectrum")?;
            let ambient = PolySpace::up_to_degree(y.dim(), ambient_degree(task, y.total_weight())?);
            let point = ideal_point_from_spectrum(&y, &ambient, ctx.tol).map_err(in_module(M))?;
            checks.push(
                "codimension equals the number of jet conditions",
                point.codim() == y.ideal_codim(),
                format!("{} and {}", point.codim(), y.ideal_codim()),
            );
            let vanish = point.polynomials().iter().all(|p| {
                MultiJet::of_polynomial(&y, p)
                    .map(|j| {
                        j.jets()
                            .iter()
                            .all(|jet| jet.local().approx_eq(&Polynomial::zero(y.dim()), ctx.tol))
                    })
                    .unwrap_or(false)
            });
            checks.push("basis lies in the spectral ideal", vanish, "");
            Ok(json!({"point": point_json(&point)}))
        }
        "limit" => {
            let x = json::vector::<S>(json::field(task, "", "x")?, "/x")?;
            let v = json::vector::<S>(json::field(task, "", "v")?, "/v")?;
            let ambient = PolySpace::up_to_degree(x.len(), ambient_degree(task, 2)?);
            let limit = tangent_limit_ideal(&x, &v, &ambient, ctx.tol).map_err(in_module(M))?;
            let mut angles = Vec::new();
            for e in 1..=5 {
                let step = S::from_ratio(1, 10i64.pow(e));
                let moved: Vec<S> = x
                    .iter()
                    .zip(&v)
                    .map(|(a, b)| a.clone() + step.clone() * b.clone())
                    .collect();
                let pair =
                    crate::hermite::WeightedSpectrum::from_multiset(&[x.clone(), moved]).map_err(in_module(M))?;
                let point = ideal_point_from_spectrum(&pair, &ambient, ctx.tol).map_err(in_module(M))?;
                angles.push(grassmann_distance(&point, &limit).map_err(in_module(M))?);
            }
            checks.push(
                "pair ideals approach the limit",
                angles.windows(2).all(|w| w[1] <= w[0]) && angles[4] < verify::tolerances::TANGENT_ANGLE,
                format!(
                    "angles {:?}",
                    angles.iter().map(|a| format!("{a:.3e}")).collect::<Vec<_>>()
                ),
            );
            Ok(json!({"point": point_json(&limit), "angles": angles}))
        }
        "spectrum" => {
            let degree = json::usize_value(json::field(task, "", "degree")?, "/degree")? as u32;
            let ambient = PolySpace::up_to_degree(1, degree);
            let basis = json::array(json::field(task, "", "basis")?, "/basis")?
                .iter()
                .enumerate()
                .map(|(i, p)| json::polynomial::<S>(p, &format!("/basis/{i}")))
                .collect::<Parsed<Vec<_>>>()?;
            let point = IdealPoint::from_polynomials(ambient.clone(), &basis, ctx.tol).map_err(in_module(M))?;
            let rec = weighted_spectrum_1d(&point, ctx.tol).map_err(in_module(M))?;
            let again = ideal_point_from_spectrum(&rec.spectrum, &ambient, ctx.tol).map_err(in_module(M))?;
            let distance = grassmann_distance(&again.to_f64(), &point.to_f64()).map_err(in_module(M))?;
            let same = if S::is_exact() && !rec.approximate {
                again == point
            } else {
                distance <= ctx.tol.value().max(1e-9)
            };
            checks.push("spectrum maps back to the ideal", same, format!("angle {distance:.3e}"));
            Ok(json!({"spectrum": json::spectrum_json(&rec.spectrum), "approximate": rec.approximate}))
        }
        "classify" => {
            let m = json::usize_value(json::field(task, "", "m")?, "/m")?;
            let gens = json::array(json::field(task, "", "generators")?, "/generators")?
                .iter()
                .enumerate()
                .map(|(i, p)| json::polynomial::<S>(p, &format!("/generators/{i}")))
                .collect::<Parsed<Vec<_>>>()?;
            if let Some(i) = gens.iter().position(|g| g.nvars() != m) {
                return Err(schema_error(&format!("/generators/{i}/m"), format!("expected {m} variables")).into());
            }
            let ideal = JetIdeal::generated_by(m, 2, &gens, ctx.tol).map_err(in_module(M))?;
            let datum = classify_codim3(&ideal, ctx.tol).map_err(in_module(M))?;
            let back = reconstruct(m, &datum, ctx.tol).map_err(in_module(M))?;
            checks.push("reconstruction returns the ideal", back == ideal, "");
            let out = match &datum {
                Codim3Type::Plane(plane) => json!({
                    "type": "plane",
                    "plane": plane.iter().map(|v| json::vector_json(v)).collect::<Vec<_>>(),
                }),
                Codim3Type::Curve(c) => {
                    let normal = ideal.pull_back(&c.adapting_map, ctx.tol).map_err(in_module(M))?;
                    let expected = curve_normal_form::<S>(m, c.normal_form_c, ctx.tol).map_err(in_module(M))?;
                    checks.push("adapted coordinates give the normal form", normal == expected, "");
                    json!({
                        "type": "curve",
                        "tangent": json::vector_json(&c.tangent),
                        "acceleration": json::vector_json(&c.acceleration),
                        "normal_form_c": c.normal_form_c,
                        "adapting_map": c.adapting_map.to_rows().iter().map(|r| json::vector_json(r)).collect::<Vec<_>>(),
                    })
                }
            };
            Ok(out)
        }
        other => Err(schema_error("/op", format!("unknown ideal operation \"{other}\"")).into()),
    }
}

/// The ideal of the curve `(t, -c t^2, 0, ..., 0)` in the 2-jet algebra.
fn curve_normal_form<S: Scalar>(m: usize, c: u8, tol: Tolerance) -> crate::Result<JetIdeal<S>> {
    let var = |i: usize| Polynomial::<S>::var(m, i);
    let mut gens: Vec<Polynomial<S>> = (1..m).map(var).collect();
    if c == 1 && m >= 2 {
        gens[0] = &var(1) + &var(0).pow(2);
    }
    JetIdeal::generated_by(m, 2, &gens, tol)
}

fn time_path<S: Scalar>(v: &Value, pointer: &str) -> Parsed<TimePath<S>> {
    let p = json::path_polynomial::<S>(v, pointer)?;
    TimePath::polynomial(p).map_err(|e| schema_error(pointer, e.to_string()))
}

fn run_path<S: Scalar>(task: &Value, ctx: &Context, checks: &mut Checks) -> Run<Value> {
    const M: &str = "path";
    let op = json::str_value(json::field(task, "", "op")?, "/op")?;
    match op {
        "split" => {
            let f = time_path::<S>(json::field(task, "", "path")?, "/path")?;
            let (q, a, b) = decompose(&f).map_err(in_module(M))?;
            let whole = f.as_polynomial().unwrap();
            let m = f.dim();
            let t = Polynomial::var(m + 1, m);
            let one = Polynomial::one(m + 1);
            let lhs = &(&t * &(&t - &one)) * &q;
            let rhs = &(whole - &(&(&one - &t) * &a.extend_vars(1))) - &(&t * &b.extend_vars(1));
            checks.push(
                "t(t-1) p(f) = f - (1-t) f(.,0) - t f(.,1)",
                lhs.approx_eq(&rhs, ctx.tol),
                "",
            );
            checks.push(
                "decomposition reassembles f",
                reassemble(&q, &a, &b).approx_eq(whole, ctx.tol),
                "",
            );
            let _ = split_p(&f).map_err(in_module(M))?;
            Ok(json!({
                "split": json::path_json(&q),
                "start": json::polynomial_json(&a),
                "end": json::polynomial_json(&b),
            }))
        }
        "reverse" => {
            let f = time_path::<S>(json::field(task, "", "path")?, "/path")?;
            let r = reverse_iota(&f);
            let rp = r.as_polynomial().expect("reversal of a polynomial path");
            let twice = reverse_iota(&r);
            checks.push(
                "reversal is an involution",
                twice
                    .as_polynomial()
                    .unwrap()
                    .approx_eq(f.as_polynomial().unwrap(), ctx.tol),
                "",
            );
            let swapped = r
                .endpoint_polynomial(&S::zero())
                .unwrap()
                .approx_eq(&f.endpoint_polynomial(&S::one()).unwrap(), ctx.tol);
            checks.push("reversed path starts at the old end", swapped, "");
            Ok(json!({"reversed": json::path_json(rp)}))
        }
        "concat" => {
            let pv = json::array(json::field(task, "", "paths")?, "/paths")?;
            let paths = pv
                .iter()
                .enumerate()
                .map(|(i, p)| time_path::<S>(p, &format!("/paths/{i}")))
                .collect::<Parsed<Vec<_>>>()?;
            let n = paths.len();
            let breaks = match task.get("breakpoints") {
                Some(b) => json::array(b, "/breakpoints")?
                    .iter()
                    .enumerate()
                    .map(|(i, x)| json::f64_value(x, &format!("/breakpoints/{i}")))
                    .collect::<Parsed<Vec<_>>>()?,
                None => (0..=n).map(|i| i as f64 / n.max(1) as f64).collect(),
            };
            let eps = task.get("eps").map_or(Ok(0.1), |e| json::f64_value(e, "/eps"))?;
            let profile = BumpProfile::new(eps).map_err(|e| schema_error("/eps", e.to_string()))?;
            let endpoint_tol = if S::is_exact() { Tolerance::new(0.0) } else { ctx.tol };
            let mu = concat_mu(&paths, &breaks, &vec![profile; n], endpoint_tol).map_err(in_module(M))?;
            let m = mu.dim();
            let samples = task
                .get("samples")
                .map_or(Ok(11), |s| json::usize_value(s, "/samples"))?
                .max(2);
            let xs = probe_points(m);
            let ts: Vec<f64> = (0..samples).map(|i| i as f64 / (samples - 1) as f64).collect();
            let mut values = Vec::new();
            for x in &xs {
                let row = ts
                    .iter()
                    .map(|&t| mu.eval(x, t))
                    .collect::<crate::Result<Vec<_>>>()
                    .map_err(in_module(M))?;
                values.push(row);
            }
            let mut ends_ok = true;
            for x in &xs {
                let ev = |p: &TimePath<S>, t| p.eval(x, t);
                let (a0, b0) = (ev(&mu, 0.0), ev(&paths[0], 0.0));
                let (a1, b1) = (ev(&mu, 1.0), ev(&paths[n - 1], 1.0));
                ends_ok &= matches!((a0, b0, a1, b1), (Ok(a0), Ok(b0), Ok(a1), Ok(b1)) if a0 == b0 && a1 == b1);
            }
            checks.push("endpoints are the outer endpoints", ends_ok, "");
            let mut worst: f64 = 0.0;
            for &s in &breaks[1..n] {
                for x in &xs {
                    let (l, r) =
                        one_sided_derivatives(&mu, x, s, verify::tolerances::JUNCTION_STEP).map_err(in_module(M))?;
                    for k in 0..3 {
                        worst = worst.max((l[k] - r[k]).abs());
                    }
                }
            }
            checks.push(
                "junction derivatives up to order 2 agree",
                worst <= verify::tolerances::JUNCTION,
                format!("max difference {worst:.3e}"),
            );
            Ok(json!({
                "breakpoints": breaks,
                "eps": eps,
                "x": xs,
                "t": ts,
                "values": values,
            }))
        }
        other => Err(schema_error("/op", format!("unknown path operation \"{other}\"")).into()),
    }
}

fn cover_input(task: &Value) -> Parsed<(String, DeltaComplex, Monodromy)> {
    if let Some(name) = task.get("fixture") {
        let name = json::str_value(name, "/fixture")?;
        let fx = fixtures()
            .into_iter()
            .find(|f| f.name == name)
            .ok_or_else(|| schema_error("/fixture", format!("unknown fixture \"{name}\"")))?;
        return Ok((fx.name.to_string(), fx.base, fx.mono));
    }
    let base = json::delta_complex(json::field(task, "", "base")?, "/base")?;
    let mono = json::monodromy(json::field(task, "", "monodromy")?, "/monodromy", &base)?;
    let name = task.get("name").and_then(Value::as_str).unwrap_or("cover").to_string();
    Ok((name, base, mono))
}

fn pages_csv<F: Field>(ss: &SpectralSequence<F>, field: &str) -> String {
    let mut out = String::from("field,page,p,q,dim,rank_d\n");
    for page in &ss.pages {
        for (&(p, q), &dim) in &page.dims {
            out.push_str(&format!("{field},{},{p},{q},{dim},{}\n", page.r, page.rank_from(p, q)));
        }
    }
    for (&(p, q), &dim) in &ss.limit {
        out.push_str(&format!("{field},inf,{p},{q},{dim},0\n"));
    }
    out
}

fn run_resolve<F: Field>(task: &Value, field: &str, checks: &mut Checks) -> Run<(Value, String)> {
    const M: &str = "resolution";
    let (name, base, mono) = cover_input(task)?;
    let res = build_resolution_complex::<F>(&base, &mono).map_err(in_module(M))?;
    let ss = run_spectral_sequence(&res);
    let e1 = ss.page(1).expect("first page");
    let mut twisted = Vec::new();
    let mut e1_ok = true;
    for p in 0..mono.degree() {
        let (cover, sys) = build_subset_cover::<F>(&base, &mono, p).map_err(in_module(M))?;
        let h = twisted_cohomology(&cover, &sys).map_err(in_module(M))?;
        for (q, &dim) in h.iter().enumerate() {
            e1_ok &= e1.dim(p as i64, q as i64) == dim;
        }
        twisted.push(h);
    }
    checks.push("E1 equals twisted cohomology of the subset covers", e1_ok, "");
    let total = total_cohomology(&res);
    let mut base_h = base_cohomology::<F>(&base);
    base_h.resize(total.len(), 0);
    let limit = ss.limit_totals(res.top_degree());
    checks.push(
        "E-infinity totals equal the base cohomology",
        limit == base_h,
        format!("{limit:?}"),
    );
    checks.push(
        "resolution cohomology equals the base cohomology",
        total == base_h,
        format!("{total:?}"),
    );
    checks.push(
        "each page is the cohomology of the previous one",
        ss.transitions_consistent(),
        "",
    );
    let csv = pages_csv(&ss, field);
    let out = json!({
        "name": name,
        "field": field,
        "base": json::delta_complex_json(&base),
        "monodromy": json::monodromy_json(&mono, base.cell_count(1)),
        "generators": res.dims(),
        "euler_characteristic": res.euler_characteristic(),
        "total_cohomology": total,
        "base_cohomology": base_h,
        "subset_cover_cohomology": twisted,
        "pages": ss.pages.iter().map(|pg| json!({
            "r": pg.r,
            "entries": pg.dims.iter().map(|(&(p, q), &d)| json!({"p": p, "q": q, "dim": d, "rank_d": pg.rank_from(p, q)})).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "limit": ss.limit.iter().map(|(&(p, q), &d)| json!({"p": p, "q": q, "dim": d})).collect::<Vec<_>>(),
    });
    Ok((out, csv))
}

/// Names of the built-in covering fixtures.
pub fn fixture_names() -> Vec<&'static str> {
    fixtures().iter().map(|f| f.name).collect()
}
