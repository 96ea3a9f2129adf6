//! One function per subcommand. Each parses its inputs, calls into
//! `aybe_core`, and packs the outcome into a [`RunReport`].

use std::path::{Path, PathBuf};

use aybe_core::poisson::{compare_brackets, jacobi_residual, matrix_bracket_from_r, scalar_bracket_closed_2m};
use aybe_core::{
    build_basis, check_skew, cocycle_residual, compare_tensors, gl_transform, int, parse_rational,
    parse_rational_list, r_closed, r_closed_distinct, r_from_algebra, sample, scalar_bracket_from_r,
    transpose_dual, verify as verify_tensor, ClosedFormVariant, Error, LambdaSpec, RatMatrix, Rational, Tensor4,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{read_file, write_file, CliError, RunReport, Verdict};
use crate::Params;

fn report(command: &'static str, inputs: Value, verdict: Verdict, details: Value) -> RunReport {
    RunReport {
        command,
        inputs,
        verdict,
        details,
        timing_ms: 0,
    }
}

fn lambda_spec(n: usize, m: usize, lambda: &str) -> Result<LambdaSpec, CliError> {
    Ok(LambdaSpec::new(n, m, parse_rational_list(lambda)?)?)
}

fn read_tensor(path: &Path) -> Result<Tensor4, CliError> {
    Tensor4::from_json_str(&read_file(path)?)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn write_tensor(out: Option<&Path>, r: &Tensor4) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, &r.to_json_string()),
        None => Ok(()),
    }
}

fn path_value(p: Option<&Path>) -> Value {
    p.map_or(Value::Null, |p| Value::String(p.display().to_string()))
}

fn params_inputs(p: &Params) -> Value {
    json!({ "n": p.n, "m": p.m, "lambda": p.lambda })
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn construct(p: &Params, out: Option<&Path>) -> Result<RunReport, CliError> {
    let lam = lambda_spec(p.n, p.m, &p.lambda)?;
    let basis = build_basis(p.n, p.m)?;
    let mut inputs = params_inputs(p);
    inputs["out"] = path_value(out);
    match r_from_algebra(&basis, &lam) {
        Ok(r) => {
            write_tensor(out, &r)?;
            Ok(report(
                "construct",
                inputs,
                Verdict::Pass,
                json!({ "mode": lam.mode(), "basis_dim": basis.len(), "entries": r.nnz() }),
            ))
        }
        Err(Error::DegenerateForm { rank, dim }) => Ok(report(
            "construct",
            inputs,
            Verdict::Degenerate,
            json!({ "mode": lam.mode(), "basis_dim": dim, "gram_rank": rank }),
        )),
        Err(e) => Err(e.into()),
    }
}

pub fn verify(path: &Path) -> Result<RunReport, CliError> {
    let r = read_tensor(path)?;
    let rep = verify_tensor(&r);
    Ok(report(
        "verify",
        json!({ "tensor": path.display().to_string() }),
        Verdict::from_pass(rep.passed),
        to_value(&rep),
    ))
}

pub fn closed_form(
    p: &Params,
    variant: &str,
    compare: Option<&Path>,
    out: Option<&Path>,
) -> Result<RunReport, CliError> {
    let variant: ClosedFormVariant = variant.parse()?;
    let lam = lambda_spec(p.n, p.m, &p.lambda)?;
    let r = r_closed(variant, &lam)?;
    write_tensor(out, &r)?;
    let mut inputs = params_inputs(p);
    inputs["variant"] = json!(variant.to_string());
    inputs["compare"] = path_value(compare);
    inputs["out"] = path_value(out);
    let mut details = json!({ "mode": lam.mode(), "entries": r.nnz() });
    let verdict = match compare {
        Some(path) => {
            let other = read_tensor(path)?;
            let diffs = compare_tensors(&r, &other)?;
            let v = Verdict::from_pass(diffs.is_empty());
            details["diffs"] = to_value(&diffs);
            v
        }
        None => Verdict::Pass,
    };
    Ok(report("closed-form", inputs, verdict, details))
}

pub fn cocycle(p: &Params) -> Result<RunReport, CliError> {
    let lam = lambda_spec(p.n, p.m, &p.lambda)?;
    let basis = build_basis(p.n, p.m)?;
    let violations = cocycle_residual(&basis, &lam)?;
    Ok(report(
        "cocycle",
        params_inputs(p),
        Verdict::from_pass(violations.is_empty()),
        json!({
            "mode": lam.mode(),
            "basis_dim": basis.len(),
            "triples": basis.len().pow(3),
            "violations": to_value(&violations),
        }),
    ))
}

pub fn bracket(path: &Path, m_size: usize, check_jacobi: bool, out: Option<&Path>) -> Result<RunReport, CliError> {
    let r = read_tensor(path)?;
    let inputs = json!({
        "tensor": path.display().to_string(),
        "m_size": m_size,
        "check_jacobi": check_jacobi,
        "out": path_value(out),
    });
    let skew = check_skew(&r);
    if !skew.is_empty() {
        return Ok(report(
            "bracket",
            inputs,
            Verdict::Fail,
            json!({
                "reason": "tensor is not skew-symmetric, so the bracket would not be antisymmetric",
                "skew_violations": to_value(&skew),
            }),
        ));
    }
    let b = if m_size == 1 {
        scalar_bracket_from_r(&r)?
    } else {
        matrix_bracket_from_r(&r, m_size)?
    };
    if let Some(path) = out {
        let mut text = serde_json::to_string_pretty(&b.to_json()).expect("bracket serializes");
        text.push('\n');
        write_file(path, &text)?;
    }
    let mut details = json!({ "generators": b.generators(), "zero": b.is_zero() });
    let verdict = if check_jacobi {
        let names = b.names();
        let violations: Vec<Value> = jacobi_residual(&b)
            .iter()
            .map(|v| json!({ "triple": v.triple, "residual": v.residual.display(names) }))
            .collect();
        let pass = violations.is_empty();
        details["jacobi_violations"] = Value::Array(violations);
        Verdict::from_pass(pass)
    } else {
        Verdict::Pass
    };
    Ok(report("bracket", inputs, verdict, details))
}

pub fn bracket_2m(n: usize, lambda: &str) -> Result<RunReport, CliError> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(CliError::usage(format!("N = {n} must be even and at least 2")));
    }
    let lam = lambda_spec(n, n / 2, lambda)?;
    let literal = scalar_bracket_closed_2m(&lam)?;
    let derived = scalar_bracket_from_r(&r_closed_distinct(&lam)?)?;
    let jacobi = jacobi_residual(&derived);
    let cmp = compare_brackets(&literal, &derived)?;
    Ok(report(
        "bracket-2m",
        json!({ "n": n, "m": n / 2, "lambda": lambda }),
        Verdict::from_pass(cmp.verdict == "match"),
        json!({
            "comparison": to_value(&cmp),
            "derived_jacobi_violations": jacobi.len(),
        }),
    ))
}

pub enum Transform {
    Matrix(PathBuf),
    Dual,
    Random(u64),
}

fn read_matrix(path: &Path) -> Result<RatMatrix, CliError> {
    let bad = |msg: &str| CliError::usage(format!("{}: {msg}", path.display()));
    let value: Value = serde_json::from_str(&read_file(path)?).map_err(|e| bad(&e.to_string()))?;
    let rows = value.as_array().ok_or_else(|| bad("expected a list of rows"))?;
    let parsed = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad("expected a list of entries"))?
                .iter()
                .map(|e| match e {
                    Value::String(s) => parse_rational(s).map_err(CliError::from),
                    Value::Number(x) => x.as_i64().map(int).ok_or_else(|| bad("non-integer number; use \"p/q\"")),
                    _ => Err(bad("entries must be strings or integers")),
                })
                .collect::<Result<Vec<Rational>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RatMatrix::from_rows(parsed)?)
}

pub fn transform(path: &Path, how: Transform, out: Option<&Path>) -> Result<RunReport, CliError> {
    let r = read_tensor(path)?;
    let mut inputs = json!({ "tensor": path.display().to_string(), "out": path_value(out) });
    let result = match &how {
        Transform::Dual => {
            inputs["transpose_dual"] = json!(true);
            Ok(transpose_dual(&r))
        }
        Transform::Matrix(g_path) => {
            inputs["g"] = json!(g_path.display().to_string());
            gl_transform(&r, &read_matrix(g_path)?)
        }
        Transform::Random(seed) => {
            inputs["random_g"] = json!(true);
            inputs["seed"] = json!(seed);
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            gl_transform(&r, &sample::random_invertible(&mut rng, r.n(), 10))
        }
    };
    match result {
        Ok(t) => {
            write_tensor(out, &t)?;
            let rep = verify_tensor(&t);
            Ok(report(
                "transform",
                inputs,
                Verdict::from_pass(rep.passed),
                json!({ "entries": t.nnz(), "verification": to_value(&rep) }),
            ))
        }
        Err(Error::SingularMatrix { rank }) => Ok(report(
            "transform",
            inputs,
            Verdict::Degenerate,
            json!({ "reason": "change-of-basis matrix is singular", "rank": rank }),
        )),
        Err(e) => Err(e.into()),
    }
}
