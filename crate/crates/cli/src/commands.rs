//! One function per subcommand. Each returns a [`Run`] whose `result` is the
//! deterministic payload; payload types double as certificate formats for
//! `verify`.

use nivat_core::annihilator::{
    find_annihilator, find_binomial_product_annihilator, verify, AnnihilatorResult, BinomialProduct, VerifyReport,
};
use nivat_core::applications::{
    antenna_classify, antenna_polynomial, antenna_verify, exact_cover, find_periodic_cotiler, AntennaProblem,
    ClusterTile, CotilerOutcome,
};
use nivat_core::configuration::{Complexity, ProfileEntry};
use nivat_core::lines::{
    classify, eliminate_and_classify_fp, line_factor_decomposition, EliminationReport, LineDecomposition,
    PeriodicityVerdict, Role,
};
use nivat_core::sft::{decide, Budget, BudgetSpent, Decision, SftSpec};
use nivat_core::{LaurentPoly, Shape, TorusConfig};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::{AntennaAction, AntennaArgs, Cli, Command, CotilerAction, RoleArg};
use crate::input::{load_json, load_poly, load_shape, load_source, load_torus, parse_field, CliResult, InputDigest};

pub struct Run {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub result: Value,
    pub budget_spent: Option<BudgetSpent>,
    pub exit: i32,
    pub summary: String,
}

impl Run {
    fn new(command: &str, inputs: Vec<InputDigest>, result: &impl Serialize, summary: String) -> Self {
        Run {
            command: command.to_string(),
            inputs,
            result: serde_json::to_value(result).expect("payloads serialize"),
            budget_spent: None,
            exit: 0,
            summary,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ComplexityResult {
    pub patch: bool,
    pub shape: Shape,
    pub complexity: Complexity,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ProfileResult {
    pub patch: bool,
    pub max_n: usize,
    pub max_m: usize,
    pub profile: Vec<ProfileEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AnnihilateResult {
    pub patch: bool,
    pub shape: Shape,
    pub annihilator: AnnihilatorResult,
    pub check: VerifyReport,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BinomialResult {
    pub patch: bool,
    pub max_t: i64,
    pub max_m: usize,
    pub found: Option<BinomialProduct>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FactorLinesResult {
    pub input: LaurentPoly,
    pub decomposition: LineDecomposition,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClassifyResult {
    pub input: LaurentPoly,
    pub role: Role,
    pub verdict: PeriodicityVerdict,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EliminateResult {
    pub f: LaurentPoly,
    pub g: LaurentPoly,
    pub report: EliminationReport,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DecideResult {
    pub spec: SftSpec,
    pub budget: Budget,
    pub decision: Decision,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AntennaClassifyResult {
    pub problem: AntennaProblem,
    pub polynomial: LaurentPoly,
    pub verdict: PeriodicityVerdict,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AntennaVerifyResult {
    pub problem: AntennaProblem,
    pub torus: TorusConfig,
    pub pass: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CotilerFindResult {
    pub tile: ClusterTile,
    pub budget: Budget,
    pub outcome: CotilerOutcome,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CotilerVerifyResult {
    pub tile: ClusterTile,
    pub torus: TorusConfig,
    pub exact_cover: bool,
}

pub fn decision_exit(d: &Decision) -> i32 {
    match d {
        Decision::Nonempty { .. } => 0,
        Decision::Empty { .. } => 1,
        Decision::Unknown { .. } => 2,
    }
}

fn decision_summary(d: &Decision) -> String {
    match d {
        Decision::Nonempty { witness } => format!("nonempty: {}x{} periodic witness", witness.k(), witness.l()),
        Decision::Empty { window } => format!("empty: no {window}x{window} window can be filled"),
        Decision::Unknown { .. } => "unknown: budget exhausted".into(),
    }
}

fn antenna_problem(a: &AntennaArgs) -> CliResult<(AntennaProblem, InputDigest)> {
    let (shape, d) = load_shape(&a.shape)?;
    Ok((AntennaProblem { shape, a: a.a, b: a.b }, d))
}

pub fn run(cli: &Cli) -> CliResult<Run> {
    let field = parse_field(&cli.field)?;
    Ok(match &cli.command {
        Command::Complexity { grid, shape } => {
            let (source, dg) = load_source(&grid.grid, grid.patch)?;
            let (shape, ds) = load_shape(shape)?;
            let complexity = source.complexity(&shape)?;
            let summary = format!(
                "{} patterns on a shape of size {} ({})",
                complexity.count,
                complexity.shape_size,
                if complexity.low { "low complexity" } else { "not low complexity" }
            );
            Run::new("complexity", vec![dg, ds], &ComplexityResult { patch: grid.patch, shape, complexity }, summary)
        }
        Command::Profile { grid, max_n, max_m } => {
            let (source, dg) = load_source(&grid.grid, grid.patch)?;
            let profile = source.rectangle_profile(*max_n, *max_m)?;
            let low = profile.iter().filter(|e| e.low).count();
            let summary = format!("{low} of {} rectangles have low complexity", profile.len());
            let r = ProfileResult { patch: grid.patch, max_n: *max_n, max_m: *max_m, profile };
            Run::new("profile", vec![dg], &r, summary)
        }
        Command::Annihilate { grid, shape, binomial, max_t, max_m } => {
            let (source, dg) = load_source(&grid.grid, grid.patch)?;
            if *binomial {
                let found = find_binomial_product_annihilator(&source, *max_t, *max_m)?;
                let summary = match &found {
                    Some(b) => format!("annihilated by {}", b.annihilator),
                    None => "no binomial product within the bounds".into(),
                };
                let r = BinomialResult { patch: grid.patch, max_t: *max_t, max_m: *max_m, found };
                Run::new("annihilate", vec![dg], &r, summary)
            } else {
                let (shape, ds) = load_shape(shape.as_deref().expect("required by clap"))?;
                let patterns = source.extract_patterns(&shape)?;
                let annihilator = find_annihilator(&patterns)?;
                let check = verify(&annihilator, &source)?;
                let summary = format!("{:?}: f = {}", annihilator.kind, annihilator.f);
                let r = AnnihilateResult { patch: grid.patch, shape, annihilator, check };
                Run::new("annihilate", vec![dg, ds], &r, summary)
            }
        }
        Command::FactorLines { poly } => {
            let (input, d) = load_poly("poly", poly, field)?;
            let decomposition = line_factor_decomposition(&input)?;
            let summary = format!(
                "{} line factors in directions {:?}, remainder {}",
                decomposition.factors.len(),
                decomposition.directions().iter().map(|e| (e.x, e.y)).collect::<Vec<_>>(),
                decomposition.remainder
            );
            Run::new("factor-lines", vec![d], &FactorLinesResult { input, decomposition }, summary)
        }
        Command::Classify { poly, role } => {
            let (input, d) = load_poly("poly", poly, field)?;
            let role = match role {
                RoleArg::Annihilates => Role::Annihilates,
                RoleArg::Periodizes => Role::Periodizes,
            };
            let verdict = classify(&input, role)?;
            let summary = format!("{verdict:?}");
            Run::new("classify", vec![d], &ClassifyResult { input, role, verdict }, summary)
        }
        Command::EliminateFp { f, g } => {
            let (f, df) = load_poly("f", f, field)?;
            let (g, dg) = load_poly("g", g, field)?;
            let report = eliminate_and_classify_fp(&f, &g)?;
            let summary = format!("{:?}", report.conclusion);
            Run::new("eliminate-fp", vec![df, dg], &EliminateResult { f, g, report }, summary)
        }
        Command::DecideSft { spec, budget } => {
            let (spec, d): (SftSpec, _) = load_json("spec", spec)?;
            let budget = budget.budget();
            let out = decide(&spec, budget);
            let mut run = Run::new(
                "decide-sft",
                vec![d],
                &DecideResult { spec, budget, decision: out.decision.clone() },
                decision_summary(&out.decision),
            );
            run.exit = decision_exit(&out.decision);
            run.budget_spent = Some(out.spent);
            run
        }
        Command::Antenna { action: AntennaAction::Classify { problem } } => {
            let (problem, d) = antenna_problem(problem)?;
            let verdict = antenna_classify(&problem)?;
            let polynomial = antenna_polynomial(&problem);
            let summary = format!("{verdict:?}");
            Run::new("antenna classify", vec![d], &AntennaClassifyResult { problem, polynomial, verdict }, summary)
        }
        Command::Antenna { action: AntennaAction::Verify { torus, problem } } => {
            let (torus, dt) = load_torus(torus)?;
            let (problem, ds) = antenna_problem(problem)?;
            let pass = antenna_verify(&torus, &problem)?;
            let summary = if pass { "antenna condition holds" } else { "antenna condition fails" }.to_string();
            let mut run = Run::new("antenna verify", vec![dt, ds], &AntennaVerifyResult { problem, torus, pass }, summary);
            run.exit = i32::from(!pass);
            run
        }
        Command::Cotiler { action: CotilerAction::Find { shape, budget } } => {
            let (shape, d) = load_shape(shape)?;
            let tile = ClusterTile { shape };
            let budget = budget.budget();
            let outcome = find_periodic_cotiler(&tile, budget)?;
            let mut summary = decision_summary(&outcome.decision);
            if let Some(w) = outcome.witness() {
                summary += &format!(", period lattice index {}", w.period_lattice_index());
            }
            let exit = decision_exit(&outcome.decision);
            let spent = outcome.spent;
            let mut run = Run::new("cotiler find", vec![d], &CotilerFindResult { tile, budget, outcome }, summary);
            run.exit = exit;
            run.budget_spent = Some(spent);
            run
        }
        Command::Cotiler { action: CotilerAction::Verify { torus, shape } } => {
            let (torus, dt) = load_torus(torus)?;
            let (shape, ds) = load_shape(shape)?;
            let tile = ClusterTile { shape };
            let ok = exact_cover(&tile, &torus)?;
            let summary = if ok { "exact cover" } else { "not an exact cover" }.to_string();
            let mut run =
                Run::new("cotiler verify", vec![dt, ds], &CotilerVerifyResult { tile, torus, exact_cover: ok }, summary);
            run.exit = i32::from(!ok);
            run
        }
        Command::Verify { cert, input } => crate::verify::run(cert, input.as_deref(), cli.seed)?,
    })
}
