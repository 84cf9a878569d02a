//! The subcommands, as pure functions from input bytes to a [`Report`].

use medium_classify::{
    canonical_params, classify, classify_exact, metaclass_template, random_jacobian, random_params, realize,
    sim_witness_check, skewon_gate, ArithmeticPath, ClassificationResult, ClassifyError, MetaclassId, MetaclassParams,
    DEFAULT_TOL,
};
use medium_classify::golden::class_data;
use medium_exact::linalg::det;
use medium_exact::{Field, Mat, OrderedField, QSqrt2, Rational};
use medium_exterior::{
    decompose, factor_frame, hodge_star_matrix, kappa_component, wedge_gram, PseudoMetric4, TwoForm,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::document::{parse_matrix, parse_raw, parse_tensor_document, Number, Tensor, TensorDocument};
use crate::report::{render_fields, render_matrix, CliError, Failure, Report};

#[derive(Debug, Clone, Default)]
pub struct Flags {
    /// Overrides the document's tolerance; default 1e-9.
    pub tol: Option<f64>,
    pub exact: bool,
    pub seed: u64,
}

impl Flags {
    fn tol(&self, doc: Option<f64>) -> f64 {
        self.tol.or(doc).unwrap_or(DEFAULT_TOL)
    }

    fn no_exact(&self, command: &str) -> Result<(), CliError> {
        if self.exact {
            return Err(CliError::precondition(format!("`{command}` has no rational path")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GenerateArgs {
    pub class: MetaclassId,
    pub variant: Option<u8>,
    pub separation: f64,
}

pub fn rows<T: Field>(m: &Mat<T>, f: impl Fn(&T) -> Number) -> Vec<Vec<Number>> {
    (0..m.nrows()).map(|i| m.row(i).iter().map(&f).collect()).collect()
}

fn rational_rows(m: &Mat<Rational>) -> Vec<Vec<Number>> {
    rows(m, |x| Number::from_exact(&QSqrt2::rational(x.clone())))
}

fn diagnostics(a: &Mat<f64>, tol: f64) -> Value {
    let (skewon, threshold) = skewon_gate(a, tol);
    json!({
        "skewon_residual": skewon,
        "skewon_threshold": threshold,
        "axion_coefficient": decompose(a).axion_coefficient,
    })
}

fn describe(r: &ClassificationResult) -> String {
    let mut text = format!(
        "metaclass {} {}  (variant {}, {} path)\n",
        r.metaclass,
        r.label,
        r.variant,
        match r.path {
            ArithmeticPath::Exact => "exact",
            ArithmeticPath::Floating => "floating",
        }
    );
    text.push_str(&render_fields(&json!({ "params": r.params, "signs": r.signs, "margin": r.margin }), 1));
    text.push_str("residuals:\n");
    text.push_str(&render_fields(&serde_json::to_value(&r.residuals).unwrap_or_default(), 2));
    text.push_str(&render_matrix("template", &r.template));
    text.push_str(&render_matrix("coordinate jacobian", &r.coordinate.jacobian));
    text
}

/// The classification of a tensor, exact when the input allows it.
pub fn classify_tensor(t: &Tensor, tol: f64, force_exact: bool) -> Result<ClassificationResult, CliError> {
    let diag = diagnostics(&t.float, tol);
    let attach = |e: ClassifyError| CliError::from(e).with_diagnostics(diag.clone());
    match t.rational() {
        Some(q) => match classify_exact(&q, tol) {
            Ok(r) => Ok(r),
            // Exact checks have no tolerance, so decimal input with rounding
            // noise gets a second chance on the floating path.
            Err(e) if !force_exact && !e.is_ambiguity() => classify(&t.float, tol).map_err(attach),
            Err(e) => Err(attach(e)),
        },
        None if force_exact => Err(CliError::precondition("--exact needs an input with rational entries")),
        None => classify(&t.float, tol).map_err(attach),
    }
}

pub fn run_classify(input: &[u8], flags: &Flags) -> Result<Report, CliError> {
    let doc = parse_tensor_document(input)?;
    let tol = flags.tol(doc.tol);
    let r = classify_tensor(&doc.tensor, tol, flags.exact)?;
    let json = json!({
        "command": "classify",
        "tol": tol,
        "input": doc.echo(),
        "diagnostics": diagnostics(&doc.tensor.float, tol),
        "result": r,
    });
    Ok(Report::new(json, describe(&r)))
}

pub fn run_decompose(input: &[u8], flags: &Flags) -> Result<Report, CliError> {
    let doc = parse_tensor_document(input)?;
    let tol = flags.tol(doc.tol);
    let exact = doc.tensor.exact.clone();
    if flags.exact && exact.is_none() {
        return Err(CliError::precondition("--exact needs an input with exact entries"));
    }
    let (parts, residual, path, text) = match exact {
        Some(e) => {
            let d = decompose(&e);
            let residual = (&d.reconstruct() - &e).max_abs();
            let num = |x: &QSqrt2| Number::from_exact(x);
            let text = render_matrix("principal", &d.principal.to_f64()) + &render_matrix("skewon", &d.skewon.to_f64());
            let parts = json!({
                "principal": rows(&d.principal, num),
                "skewon": rows(&d.skewon, num),
                "axion_coefficient": num(&d.axion_coefficient),
            });
            (parts, residual, ArithmeticPath::Exact, text + &format!("axion          {}\n", d.axion_coefficient.to_f64()))
        }
        None => {
            let d = decompose(&doc.tensor.float);
            let residual = d.reconstruct().max_diff(&doc.tensor.float);
            let text = render_matrix("principal", &d.principal) + &render_matrix("skewon", &d.skewon);
            let parts = json!({ "principal": d.principal, "skewon": d.skewon, "axion_coefficient": d.axion_coefficient });
            (parts, residual, ArithmeticPath::Floating, text + &format!("axion          {}\n", d.axion_coefficient))
        }
    };
    let json = json!({
        "command": "decompose",
        "tol": tol,
        "input": doc.echo(),
        "parts": parts,
        "residuals": { "reconstruction": residual },
        "path": path,
    });
    Ok(Report::new(json, text + &format!("reconstruction residual {residual:e}\n")))
}

pub fn run_hodge(input: &[u8], flags: &Flags) -> Result<Report, CliError> {
    flags.no_exact("hodge")?;
    let raw = parse_raw(input)?;
    let g = PseudoMetric4::new(&raw.metric()?)?;
    let star = hodge_star_matrix(&g);
    let square = (&star * &star).max_diff(&Mat::identity(6).scale(&g.det().signum()));
    let json = json!({
        "command": "hodge",
        "metric": g.matrix(),
        "hodge_star": star,
        "residuals": { "square": square },
        "path": ArithmeticPath::Floating,
    });
    let text = render_matrix("hodge star", &star) + &format!("square residual {square:e}\n");
    Ok(Report::new(json, text))
}

pub fn run_generate(args: &GenerateArgs, flags: &Flags) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(flags.seed);
    let params = random_params(args.class, &mut rng, args.separation);
    let jacobian = random_jacobian(&mut rng, 10.0);
    let variant = args.variant.unwrap_or_else(|| rng.random_range(1..=3));
    let tensor = realize(args.class, &params, variant, Some(&jacobian), args.separation)?;
    // An orientation-reversing change of coordinates flips the sign data.
    let orientation = det(&jacobian).signum_i() as i8;
    let expected = canonical_params(args.class, &params, orientation)?;
    let t = Tensor::from_exact(tensor);
    let label = format!("generated {} (seed {})", args.class, flags.seed);
    let json = json!({
        "command": "generate",
        "label": label,
        "seed": flags.seed,
        "matrix6": t.entries(),
        "ground_truth": {
            "metaclass": args.class,
            "variant": variant,
            "separation": args.separation,
            "params": params,
            "expected_params": expected,
            "jacobian": rational_rows(&jacobian),
        },
    });
    let text = format!("{label}\n") + &render_matrix("tensor", &t.float)
        + &render_fields(&json!({ "variant": variant, "expected_params": expected.to_f64() }), 0);
    Ok(Report::new(json, text))
}

pub fn run_factor(input: &[u8], flags: &Flags) -> Result<Report, CliError> {
    flags.no_exact("factor")?;
    let doc = parse_tensor_document(input)?;
    let tol = flags.tol(doc.tol);
    let m = &doc.tensor.float;
    // Column J of the matrix holds the two-form T^J.
    let t: [TwoForm; 6] = std::array::from_fn(|c| std::array::from_fn(|i| m[(i, c)]));
    let gram = wedge_gram(&t);
    let frame = factor_frame(&t, tol)?;
    let json = json!({
        "command": "factor",
        "tol": tol,
        "input": doc.echo(),
        "frame": frame,
        "jacobian": frame.jacobian(),
        "residuals": { "wedge_gram": gram.residual, "reconstruction": frame.residual },
        "path": ArithmeticPath::Floating,
    });
    let text = format!("alpha {}  branch {:?}  det {:.6}\n", frame.alpha, frame.branch, frame.det)
        + &render_matrix("jacobian", &frame.jacobian())
        + &format!("reconstruction residual {:e}\n", frame.residual);
    Ok(Report::new(json, text))
}

/// Reads `A` from `input` (or the document itself) and `V`, `M` from
/// `result` (or the document itself), so a classify report verifies as is.
pub fn run_verify(input: &[u8], flags: &Flags) -> Result<Report, CliError> {
    flags.no_exact("verify")?;
    let value: Value = serde_json::from_slice(input).map_err(crate::document::DocumentError::from)?;
    let tensor_part = value.get("input").unwrap_or(&value);
    let doc: TensorDocument = serde_json::from_value::<crate::document::RawDocument>(tensor_part.clone())
        .map_err(crate::document::DocumentError::from)?
        .tensor()?;
    let witness_part = value.get("result").unwrap_or(&value);
    let field = |k: &str| witness_part.get(k).ok_or_else(|| CliError::precondition(format!("expected `{k}`")));
    let v = parse_matrix(field("template")?, "template")?;
    let m = parse_matrix(field("witness_m")?, "witness_m")?;
    let tol = flags.tol(doc.tol.or_else(|| value.get("tol").and_then(Value::as_f64)));
    let a = &doc.tensor.float;
    let report = sim_witness_check(a, &v, &m)?;
    let threshold = tol * a.max_abs().max(1.0);
    let accepted = report.accepts(threshold);
    let json = json!({
        "command": "verify",
        "tol": tol,
        "accepted": accepted,
        "threshold": threshold,
        "residuals": { "similarity": report.a_residual, "congruence": report.b_residual },
        "path": ArithmeticPath::Floating,
    });
    let text = format!(
        "witness {}\n  similarity residual {:e}\n  congruence residual {:e}\n  threshold {:e}\n",
        if accepted { "accepted" } else { "rejected" },
        report.a_residual,
        report.b_residual,
        threshold
    );
    Ok(Report::new(json, text))
}

/// Lorentz Hodge star written componentwise: `κ^{ij}_{kl}` for the six pairs.
pub const LORENTZ_COMPONENTS: &str = r#"{"components": [
    {"i": 2, "j": 3, "k": 0, "l": 1, "value": 1},
    {"i": 3, "j": 1, "k": 0, "l": 2, "value": 1},
    {"i": 1, "j": 2, "k": 0, "l": 3, "value": 1},
    {"i": 0, "j": 1, "k": 2, "l": 3, "value": -1},
    {"i": 0, "j": 2, "k": 3, "l": 1, "value": -1},
    {"i": 0, "j": 3, "k": 1, "l": 2, "value": -1}
]}"#;

/// Checks the index convention and a few golden facts.
pub fn run_selftest(flags: &Flags) -> Result<Report, CliError> {
    let tol = flags.tol(None);
    let mut checks = Vec::new();
    let mut push = |name: &str, residual: f64, ok: bool| {
        checks.push(json!({ "name": name, "passed": ok, "residual": residual }));
    };

    let g = PseudoMetric4::diagonal([-1.0, 1.0, 1.0, 1.0])?;
    let doc = parse_tensor_document(LORENTZ_COMPONENTS.as_bytes())?;
    let r = doc.tensor.float.max_diff(&hodge_star_matrix(&g));
    push("components map onto rows = output, columns = input", r, r == 0.0);

    // A matrix entry (row I, column J) is κ^J_I.
    let mut rng = ChaCha8Rng::seed_from_u64(flags.seed);
    let a = Mat::from_fn(6, 6, |_, _| rng.random_range(-1.0..1.0));
    let b = Mat::from_fn(6, 6, |_, _| rng.random_range(-1.0..1.0));
    let ab = &a * &b;
    let mut worst = 0.0f64;
    for (i, j, k, l) in index_quads() {
        // (a∘b)^{ij}_{kl} = ½ Σ_{mn} a^{mn}_{kl} b^{ij}_{mn}
        let mut s = 0.0;
        for m in 0..4 {
            for n in 0..4 {
                s += 0.5 * kappa_component(&a, m, n, k, l) * kappa_component(&b, i, j, m, n);
            }
        }
        worst = worst.max((s - kappa_component(&ab, i, j, k, l)).abs());
    }
    push("matrix product is composition of tensors", worst, worst < 1e-12);

    let id = Tensor::from_exact(Mat::identity(6));
    let ok = classify_tensor(&id, tol, true)
        .map(|r| r.metaclass.name() == "VII" && r.params.alphas == [1.0, 1.0, 1.0, 0.0, 0.0, 0.0])
        .unwrap_or(false);
    push("identity classifies as VII (1,1,1,0,0,0)", 0.0, ok);

    let lorentz = classify_tensor(&doc.tensor, tol, true);
    let ok = lorentz.as_ref().is_ok_and(|r| r.metaclass.name() == "I" && r.variant == 1);
    push("Lorentz Hodge star classifies as I, variant 1", lorentz.map_or(f64::NAN, |r| r.residuals.witness_a), ok);

    let built = MetaclassId::all()
        .filter(|&id| {
            let d = class_data(id);
            let p = MetaclassParams {
                alphas: vec![0.5; d.alphas],
                betas: vec![1.0; d.betas],
                epsilons: d.patterns[0].epsilons.clone(),
            };
            metaclass_template(id, &p).is_ok()
        })
        .count();
    push("all 23 templates build from the golden data", 0.0, built == 23);

    let passed = checks.iter().all(|c| c["passed"] == true);
    let mut text = String::new();
    for c in &checks {
        text.push_str(&format!(
            "{}  {}\n",
            if c["passed"] == true { "PASS" } else { "FAIL" },
            c["name"].as_str().unwrap_or_default()
        ));
    }
    let mut report = Report::new(json!({ "command": "selftest", "passed": passed, "checks": checks }), text);
    if !passed {
        report.failure = Some(Failure::SelfTest);
    }
    Ok(report)
}

fn index_quads() -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..256).map(|n| (n >> 6, (n >> 4) & 3, (n >> 2) & 3, n & 3))
}
