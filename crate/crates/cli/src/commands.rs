use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use superq::catalog::{Catalog, Params};
use superq::derivations::{
    derivation_space, generic_invertibility, omega_from_delta, skew_derivation_space, DerivationFamily,
};
use superq::extensions::ExtensionRegistry;
use superq::forms::{check_quadratic, check_symplectic};
use superq::io::{matrix_rows, parse_specs, AlgebraData};
use superq::report::{Report, EXIT_PARSE};
use superq::structure::{
    central_series, derived_series, filiform_flag, filiform_lemma_checks, is_nilpotent, is_solvable, super_nilindex,
    CentralSeries,
};
use superq::superalg::Parity;
use superq::{Error, Matrix, Poly, Result, Scalar};

use crate::ParityArg;

pub enum Output {
    Report(Report),
    /// Printed verbatim, exit 0.
    Raw(String),
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("cannot read {}: {e}", path.display())))
}

/// Parses an algebra file, recording the failure on `report`.
fn load(report: &mut Report, path: &Path) -> Option<AlgebraData> {
    match read(path).and_then(|t| AlgebraData::from_json(&t)) {
        Ok(d) => {
            report.check(
                "build",
                true,
                json!({ "name": d.algebra.name(), "dim": [d.algebra.n_even(), d.algebra.n_odd()] }),
            );
            Some(d)
        }
        Err(e) => {
            report.error("build", &e);
            None
        }
    }
}

fn forms(report: &mut Report, data: &AlgebraData) {
    if let Some(b) = &data.form_b {
        let r = check_quadratic(&data.algebra, b);
        report.check("form_B quadratic", r.all(), json!(r));
    }
    if let Some(w) = &data.omega {
        let r = check_symplectic(&data.algebra, w);
        report.check("omega symplectic", r.all(), json!(r));
    }
}

fn poly_rows(m: &Matrix<Poly>) -> Vec<Vec<String>> {
    m.to_rows().into_iter().map(|r| r.iter().map(Poly::to_string).collect()).collect()
}

fn family_json(fam: &DerivationFamily) -> Value {
    json!({
        "dim": fam.dim(),
        "params": fam.params(),
        "general_element": poly_rows(&fam.general_element()),
        "basis": fam.basis().iter().map(matrix_rows).collect::<Vec<_>>(),
    })
}

fn dims(series: &[superq::subspace::Subspace]) -> Vec<usize> {
    CentralSeries::dims(series)
}

pub fn check(echo: Vec<String>, file: &Path) -> Output {
    let mut report = Report::new(echo);
    if let Some(data) = load(&mut report, file) {
        forms(&mut report, &data);
    }
    Output::Report(report)
}

pub fn analyze(echo: Vec<String>, file: &Path) -> Output {
    let mut report = Report::new(echo);
    let Some(data) = load(&mut report, file) else { return Output::Report(report) };
    forms(&mut report, &data);
    let g = &data.algebra;
    let z = g.center();
    report.info(
        "center",
        json!({ "dim": z.dim(), "basis": z.basis().iter().map(|v| g.format_vector(v)).collect::<Vec<_>>() }),
    );
    let cs = central_series(g);
    report.info("central series dims", json!({ "full": dims(&cs.full), "even": dims(&cs.even), "odd": dims(&cs.odd) }));
    report.info("derived series dims", json!(dims(&derived_series(g))));
    report.info("nilpotent", json!(is_nilpotent(g)));
    report.info("solvable", json!(is_solvable(g)));
    report.info("forget_odd_brackets nilpotent", json!(is_nilpotent(&g.forget_odd_brackets())));
    match super_nilindex(g) {
        Ok((p, q)) => report.info("s-nilindex", json!([p, q])),
        Err(e) => report.info("s-nilindex", json!(e.to_string())),
    }
    let flag = filiform_flag(g);
    report.info("filiform flag dims", json!(flag.as_ref().map(|f| f.dims())));
    if let Some(b) = &data.form_b {
        if flag.is_some() {
            match filiform_lemma_checks(g, b, data.omega.as_ref()) {
                Ok(r) => report.check("filiform lemma", r.all(), json!(r)),
                Err(e) => report.error("filiform lemma", &e),
            }
        }
        match skew_derivation_space(g, b, Parity::Even) {
            Ok(fam) => report.info(
                "even skew derivations",
                json!({ "dim": fam.dim(), "invertibility": generic_invertibility(&fam) }),
            ),
            Err(e) => report.error("even skew derivations", &e),
        }
    }
    Output::Report(report)
}

pub fn derivations(echo: Vec<String>, file: &Path, parity: ParityArg, skew: bool) -> Output {
    let mut report = Report::new(echo);
    let Some(data) = load(&mut report, file) else { return Output::Report(report) };
    let parity = match parity {
        ParityArg::Even => Parity::Even,
        ParityArg::Odd => Parity::Odd,
    };
    let fam = if skew {
        data.form_b().and_then(|b| skew_derivation_space(&data.algebra, b, parity))
    } else {
        Ok(derivation_space(&data.algebra, parity))
    };
    match fam {
        Ok(fam) => {
            report.info("derivations", family_json(&fam));
            if skew && parity == Parity::Even {
                report.info("invertibility", json!(generic_invertibility(&fam)));
            }
        }
        Err(e) => report.error("derivations", &e),
    }
    Output::Report(report)
}

/// A member with nonzero determinant, sampled from small integer coefficients.
fn invertible_member(fam: &DerivationFamily, seed: u64) -> Option<Vec<Scalar>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..500).find_map(|_| {
        let c: Vec<Scalar> = (0..fam.dim()).map(|_| Scalar::int(rng.gen_range(-3..=3))).collect();
        fam.member(&c).is_invertible().then_some(c)
    })
}

pub fn symplectic_search(echo: Vec<String>, file: &Path, seed: u64) -> Output {
    let mut report = Report::new(echo);
    let Some(data) = load(&mut report, file) else { return Output::Report(report) };
    let g = &data.algebra;
    let found = data.form_b().and_then(|b| Ok((b, skew_derivation_space(g, b, Parity::Even)?)));
    let (b, fam) = match found {
        Ok(x) => x,
        Err(e) => {
            report.error("even skew derivations", &e);
            return Output::Report(report);
        }
    };
    let inv = generic_invertibility(&fam);
    report.info("even skew derivations", json!({ "dim": fam.dim(), "params": fam.params() }));
    let Some(det) = inv.det() else {
        report.info("identically_singular", json!("no symplectic structure"));
        return Output::Report(report);
    };
    report.info("invertible_on", json!({ "det": det.to_string() }));
    let Some(coeffs) = invertible_member(&fam, seed) else {
        report.info("witness", json!("no invertible member among sampled points"));
        return Output::Report(report);
    };
    let delta = fam.member(&coeffs);
    match omega_from_delta(g.basis(), b, &delta) {
        Ok(w) => {
            let r = check_symplectic(g, &w);
            let pairs: Vec<Value> =
                w.pairs(g.basis()).into_iter().map(|(l, r, c)| json!({ "lhs": l, "rhs": r, "coeff": c })).collect();
            report.check(
                "omega = B(delta ., .) symplectic",
                r.all(),
                json!({
                    "at": fam.params().iter().zip(&coeffs).map(|(p, c)| (p.clone(), c.to_canonical_string())).collect::<std::collections::BTreeMap<_, _>>(),
                    "delta": matrix_rows(&delta.matrix),
                    "omega": pairs,
                    "report": r,
                }),
            );
        }
        Err(e) => report.error("omega = B(delta ., .)", &e),
    }
    Output::Report(report)
}

pub fn extend(echo: Vec<String>, file: &Path, spec_file: &Path) -> Output {
    let mut report = Report::new(echo);
    let Some(mut current) = load(&mut report, file) else { return Output::Report(report) };
    let specs = match read(spec_file).and_then(|t| parse_specs(&t)) {
        Ok(s) => s,
        Err(e) => {
            report.error("spec", &e);
            return Output::Report(report);
        }
    };
    let registry = ExtensionRegistry::standard();
    for (k, spec) in specs.iter().enumerate() {
        let step = format!("step {k} ({})", spec.kind);
        match registry.apply(&current, spec) {
            Ok(cert) => {
                for c in &cert.checks {
                    report.check(
                        format!("{step}: {}", c.name),
                        c.passed,
                        c.detail.clone().map(Value::String).unwrap_or(Value::Null),
                    );
                }
                report.info(format!("{step}: certificate"), cert.to_json());
                current = cert.result;
            }
            Err(e) => {
                report.error(step, &e);
                return Output::Report(report);
            }
        }
    }
    report.info("result", serde_json::to_value(current.to_file()).expect("algebra files serialize"));
    Output::Report(report)
}

pub fn peel(echo: Vec<String>, file: &Path) -> Output {
    let mut report = Report::new(echo);
    let Some(data) = load(&mut report, file) else { return Output::Report(report) };
    match superq::extensions::peel(&data) {
        Ok(p) => {
            report.check("rebuilt extension verifies", p.rebuilt.is_valid(), Value::Null);
            report.info("decomposition", p.to_json(&data.algebra));
        }
        Err(e) => report.error("peel", &e),
    }
    Output::Report(report)
}

pub fn catalog_list(echo: Vec<String>) -> Output {
    let mut report = Report::new(echo);
    for e in Catalog::standard().entries() {
        let params: Vec<Value> = e.params().iter().map(|p| json!({ "name": p.name, "default": p.default })).collect();
        report.info(e.name(), json!({ "description": e.description(), "params": params }));
    }
    Output::Report(report)
}

fn parse_param(text: &str) -> Result<(String, Scalar)> {
    let (k, v) = text.split_once('=').ok_or_else(|| Error::Schema(format!("parameter {text:?} is not k=v")))?;
    Ok((k.trim().to_string(), v.parse()?))
}

pub fn catalog_emit(echo: Vec<String>, name: &str, raw: &[String]) -> Output {
    let built = raw
        .iter()
        .map(|t| parse_param(t))
        .collect::<Result<Params>>()
        .and_then(|p| Catalog::standard().build(name, &p));
    match built {
        Ok(data) => Output::Raw(serde_json::to_string_pretty(&data.to_file()).expect("algebra files serialize")),
        Err(e) => {
            let mut report = Report::new(echo);
            report.error("catalog emit", &e);
            debug_assert!(report.exit_code == EXIT_PARSE);
            Output::Report(report)
        }
    }
}

pub fn verify_paper(echo: Vec<String>, seed: u64) -> Output {
    Output::Report(superq::regression::suite_report(echo, seed))
}
