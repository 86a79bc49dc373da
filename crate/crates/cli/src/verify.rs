//! Re-checks the payload of any report from its recorded inputs, without
//! trusting the recorded conclusions.

use std::path::Path;

use nivat_core::annihilator::{binomial_product, find_binomial_product_annihilator, verify};
use nivat_core::applications::{antenna_classify, antenna_polynomial, antenna_verify, cotiler_sft, exact_cover};
use nivat_core::lines::{classify, eliminate_and_classify_fp, is_line_free};
use nivat_core::sft::{verify_decision, verify_empty, Decision};
use nivat_core::Source;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::commands::*;
use crate::input::{load_json, load_source, CliError, CliResult};
use crate::report::RunReport;

#[derive(Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyResult {
    pub pass: bool,
    pub checks: Vec<Check>,
    pub certificate: Box<RunReport>,
}

fn check(name: &str, pass: bool) -> Check {
    Check { name: name.to_string(), pass }
}

fn payload<T: DeserializeOwned>(report: &RunReport) -> CliResult<T> {
    serde_json::from_value(report.result.clone())
        .map_err(|e| CliError::Input(format!("{} payload: {e}", report.command)))
}

/// Loads the grid a grid-based report refers to and checks it is the one
/// that was hashed.
fn grid_for(report: &RunReport, input: Option<&Path>, patch: bool, checks: &mut Vec<Check>) -> CliResult<Source> {
    let path = input.ok_or_else(|| CliError::Usage(format!("verifying {} needs the grid file", report.command)))?;
    let (source, d) = load_source(path, patch)?;
    checks.push(check("grid matches recorded hash", report.input("grid") == Some(&d)));
    Ok(source)
}

fn check_report(report: &RunReport, input: Option<&Path>, seed: u64) -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();
    match report.command.as_str() {
        "complexity" => {
            let r: ComplexityResult = payload(report)?;
            let source = grid_for(report, input, r.patch, &mut checks)?;
            checks.push(check("pattern count", source.complexity(&r.shape)? == r.complexity));
        }
        "profile" => {
            let r: ProfileResult = payload(report)?;
            let source = grid_for(report, input, r.patch, &mut checks)?;
            checks.push(check("rectangle profile", source.rectangle_profile(r.max_n, r.max_m)? == r.profile));
        }
        "annihilate" if report.result.get("found").is_some() => {
            let r: BinomialResult = payload(report)?;
            let source = grid_for(report, input, r.patch, &mut checks)?;
            match &r.found {
                Some(b) => {
                    checks.push(check("product of the listed binomials", binomial_product(&b.vectors) == b.annihilator));
                    checks.push(check("annihilates the grid", source.is_annihilated(&b.annihilator)?.holds()));
                }
                None => {
                    let again = find_binomial_product_annihilator(&source, r.max_t, r.max_m)?;
                    checks.push(check("no product within the bounds", again.is_none()));
                }
            }
        }
        "annihilate" => {
            let r: AnnihilateResult = payload(report)?;
            let source = grid_for(report, input, r.patch, &mut checks)?;
            checks.push(check("non-zero annihilator", !r.annihilator.f.is_zero()));
            checks.push(check("annihilates the grid", verify(&r.annihilator, &source)?.pass));
        }
        "factor-lines" => {
            let r: FactorLinesResult = payload(report)?;
            let d = &r.decomposition;
            checks.push(check("product equals input", d.check(&r.input)?));
            checks.push(check("remainder is line-free", is_line_free(&d.remainder)?));
            checks.push(check(
                "factors lie on their lines",
                d.factors.iter().all(|f| f.poly.line_direction() == Some(f.direction)),
            ));
        }
        "classify" => {
            let r: ClassifyResult = payload(report)?;
            checks.push(check("verdict", classify(&r.input, r.role)? == r.verdict));
        }
        "eliminate-fp" => {
            let r: EliminateResult = payload(report)?;
            checks.push(check("elimination", eliminate_and_classify_fp(&r.f, &r.g)? == r.report));
            if let Some(path) = input {
                let (source, _) = load_source(path, false)?;
                let common = source.is_annihilated(&r.f)?.holds() && source.is_annihilated(&r.g)?.holds();
                let mut ok = true;
                for step in r.report.steps.iter().filter(|s| !s.result.is_zero()) {
                    ok &= !common || source.is_annihilated(&step.result)?.holds();
                }
                checks.push(check("eliminants annihilate common solutions", ok));
            }
        }
        "decide-sft" => {
            let r: DecideResult = payload(report)?;
            match &r.decision {
                Decision::Unknown { .. } => checks.push(check("no certificate to check", true)),
                d => checks.push(check("decision certificate", verify_decision(&r.spec, d, seed)?)),
            }
        }
        "antenna classify" => {
            let r: AntennaClassifyResult = payload(report)?;
            checks.push(check("polynomial", antenna_polynomial(&r.problem) == r.polynomial));
            checks.push(check("verdict", antenna_classify(&r.problem)? == r.verdict));
        }
        "antenna verify" => {
            let r: AntennaVerifyResult = payload(report)?;
            checks.push(check("antenna condition", antenna_verify(&r.torus, &r.problem)? == r.pass));
        }
        "cotiler find" => {
            let r: CotilerFindResult = payload(report)?;
            let spec = cotiler_sft(&r.tile);
            match &r.outcome.decision {
                Decision::Nonempty { witness } => {
                    checks.push(check("witness satisfies the co-tiler rules", spec.accepts(witness)));
                    checks.push(check("exact cover", exact_cover(&r.tile, witness)?));
                }
                Decision::Empty { window } => checks.push(check("no window fill", verify_empty(&spec, *window, seed)?)),
                Decision::Unknown { .. } => checks.push(check("no certificate to check", true)),
            }
        }
        "cotiler verify" => {
            let r: CotilerVerifyResult = payload(report)?;
            checks.push(check("exact cover", exact_cover(&r.tile, &r.torus)? == r.exact_cover));
        }
        "verify" => {
            let r: VerifyResult = payload(report)?;
            checks.extend(check_report(&r.certificate, input, seed)?);
        }
        other => return Err(CliError::Input(format!("unknown report command {other:?}"))),
    }
    Ok(checks)
}

pub fn run(cert: &Path, input: Option<&Path>, seed: u64) -> CliResult<Run> {
    let (report, d): (RunReport, _) = load_json("cert", cert)?;
    let checks = check_report(&report, input, seed)?;
    let pass = checks.iter().all(|c| c.pass);
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    let summary = if pass {
        format!("{} certificate verified ({} checks)", report.command, checks.len())
    } else {
        format!("{} certificate rejected: {}", report.command, failed.join(", "))
    };
    let mut inputs = vec![d];
    if let Some(path) = input {
        inputs.push(crate::input::digest("input", crate::input::read_file(path)?.as_bytes()));
    }
    let result = VerifyResult { pass, checks, certificate: Box::new(report) };
    Ok(Run {
        command: "verify".into(),
        inputs,
        result: serde_json::to_value(&result).expect("payloads serialize"),
        budget_spent: None,
        exit: i32::from(!pass),
        summary,
    })
}

