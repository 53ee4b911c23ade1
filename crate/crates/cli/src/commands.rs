//! The five subcommands.
//!
//! Exit statuses: 0 success, 1 operational error, 2 no applicable bound,
//! 3 a check failed (a bound below the oracle, a lemma violation or a
//! failed error certificate).

use std::path::PathBuf;

use nekrasov_lcp::lcp::trial_point;
use nekrasov_lcp::{
    bplus_decompose, classify, epsilon_sweep, gp_bnekrasov_bound, gp_nekrasov_bound,
    is_b_nekrasov, is_nekrasov, kolotilina_bound, lemma_property_suite, new_bnekrasov_bound,
    new_nekrasov_bound, oracle_max_norm, solve_lcp, BoundReport, ErrorCertificate, LcpInstance,
    Matrix, Theorem,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::parse::{parse_matrix, parse_vector};
use crate::render;

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_NO_BOUND: u8 = 2;
pub const EXIT_CHECK_FAILED: u8 = 3;

/// Random `d` vectors checked by the lemma suite in `verify` by default.
pub const DEFAULT_LEMMA_TRIALS: usize = 1000;
/// Trial points certified by `lcp` by default.
pub const DEFAULT_LCP_TRIALS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Matrix class diagnostics.
    Classify,
    /// All bounds for the matrix.
    Bound,
    /// Parameterized bound over its epsilon interval (CSV).
    Sweep,
    /// Bounds against the brute-force oracle, plus the lemma suite.
    Verify,
    /// Solve LCP(M, q) and certify the error bound at random trial points.
    Lcp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Restricts `bound` to one theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TheoremChoice {
    GpNekrasov,
    NewNekrasov,
    GpBnekrasov,
    NewBnekrasov,
    Kolotilina,
}

impl TheoremChoice {
    fn theorem(self) -> Theorem {
        match self {
            TheoremChoice::GpNekrasov => Theorem::GpNekrasov,
            TheoremChoice::NewNekrasov => Theorem::NewNekrasov,
            TheoremChoice::GpBnekrasov => Theorem::GpBNekrasov,
            TheoremChoice::NewBnekrasov => Theorem::NewBNekrasov,
            TheoremChoice::Kolotilina => Theorem::Kolotilina,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub matrix_path: PathBuf,
    pub q_path: Option<PathBuf>,
    pub epsilon: Option<f64>,
    pub theorem: Option<TheoremChoice>,
    pub grid: usize,
    pub samples: usize,
    pub trials: Option<usize>,
    pub seed: u64,
    /// `None` picks CSV for `sweep` and JSON otherwise.
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn new(command: Command, matrix_path: impl Into<PathBuf>) -> Self {
        Self {
            command,
            matrix_path: matrix_path.into(),
            q_path: None,
            epsilon: None,
            theorem: None,
            grid: 101,
            samples: nekrasov_lcp::oracle::DEFAULT_SAMPLES,
            trials: None,
            seed: 42,
            format: None,
        }
    }

    fn format(&self) -> Format {
        self.format.unwrap_or(match self.command {
            Command::Sweep => Format::Csv,
            _ => Format::Json,
        })
    }

    fn path_label(&self) -> String {
        self.matrix_path.display().to_string()
    }
}

/// Rendered output plus the process exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub exit: u8,
    /// Machine-readable form of the output (absent for CSV sweeps).
    pub json: Option<Value>,
}

impl Outcome {
    fn new(cfg: &RunConfig, json: Value, text: String, exit: u8) -> Self {
        let output = match cfg.format() {
            Format::Text => text,
            _ => format!("{}\n", serde_json::to_string_pretty(&json).expect("serializable")),
        };
        Self {
            output,
            exit,
            json: Some(json),
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.format() == Format::Csv && cfg.command != Command::Sweep {
        return Err(CliError::Usage("csv output is only available for sweep".into()));
    }
    let m = parse_matrix(&cfg.matrix_path)?;
    match cfg.command {
        Command::Classify => Ok(cmd_classify(cfg, &m)),
        Command::Bound => cmd_bound(cfg, &m),
        Command::Sweep => cmd_sweep(cfg, &m),
        Command::Verify => cmd_verify(cfg, &m),
        Command::Lcp => {
            let q_path = cfg
                .q_path
                .as_ref()
                .ok_or_else(|| CliError::Usage("lcp needs --q FILE".into()))?;
            let q = parse_vector(q_path)?;
            cmd_lcp(cfg, &m, q)
        }
    }
}

pub fn cmd_classify(cfg: &RunConfig, m: &Matrix) -> Outcome {
    let c = classify(m);
    let json = json!({
        "matrix": cfg.path_label(),
        "n": m.n(),
        "classification": render::classification_json(&c),
    });
    Outcome::new(cfg, json, render::classification_text(&c), EXIT_OK)
}

fn epsilon_required(theorem: Theorem) -> Value {
    json!({"theorem": theorem.name(), "applicable": false, "reason": "EpsilonRequired"})
}

/// The four LCP bounds, gp variants at `epsilon` when given.
fn lcp_bounds(m: &Matrix, epsilon: Option<f64>) -> Vec<Result<BoundReport, Theorem>> {
    let gp = |t: Theorem, f: fn(&Matrix, f64) -> BoundReport| epsilon.map(|e| f(m, e)).ok_or(t);
    vec![
        gp(Theorem::GpNekrasov, gp_nekrasov_bound),
        Ok(new_nekrasov_bound(m)),
        gp(Theorem::GpBNekrasov, gp_bnekrasov_bound),
        Ok(new_bnekrasov_bound(m)),
    ]
}

fn best_bound(reports: &[Result<BoundReport, Theorem>]) -> Option<&BoundReport> {
    reports
        .iter()
        .filter_map(|r| r.as_ref().ok())
        .filter(|r| r.applicable())
        .min_by(|a, b| a.value().unwrap().total_cmp(&b.value().unwrap()))
}

pub fn cmd_bound(cfg: &RunConfig, m: &Matrix) -> Result<Outcome, CliError> {
    let mut reports = lcp_bounds(m, cfg.epsilon);
    reports.push(Ok(kolotilina_bound(m)));
    if let Some(choice) = cfg.theorem {
        let t = choice.theorem();
        if t.is_parameterized() && cfg.epsilon.is_none() {
            return Err(CliError::Usage(format!("--theorem {} needs --epsilon", t.name())));
        }
        reports.retain(|r| match r {
            Ok(r) => r.theorem == t,
            Err(th) => *th == t,
        });
    }
    let any = reports.iter().any(|r| r.as_ref().is_ok_and(BoundReport::applicable));
    let bounds: Vec<Value> = reports
        .iter()
        .map(|r| match r {
            Ok(r) => render::bound_json(r),
            Err(t) => epsilon_required(*t),
        })
        .collect();
    let c = classify(m);
    let json = json!({
        "matrix": cfg.path_label(),
        "n": m.n(),
        "bounds": bounds,
        "classification": render::classification_json(&c),
    });
    let mut text = String::new();
    for r in &reports {
        match r {
            Ok(r) => text.push_str(&render::bound_line(r)),
            Err(t) => text.push_str(&format!("{:<14} needs --epsilon", t.name())),
        }
        text.push('\n');
    }
    let exit = if any { EXIT_OK } else { EXIT_NO_BOUND };
    Ok(Outcome::new(cfg, json, text, exit))
}

pub fn cmd_sweep(cfg: &RunConfig, m: &Matrix) -> Result<Outcome, CliError> {
    let sweep = match epsilon_sweep(m, cfg.grid) {
        Ok(s) => s,
        Err(nekrasov_lcp::Error::NoParameterizedBound) => {
            let msg = "no epsilon-parameterized bound applies to this matrix";
            let json = json!({"matrix": cfg.path_label(), "error": "NotApplicable"});
            return Ok(Outcome {
                output: format!("{msg}\n"),
                exit: EXIT_NO_BOUND,
                json: Some(json),
            });
        }
        Err(e) => return Err(e.into()),
    };
    Ok(match cfg.format() {
        Format::Csv => Outcome {
            output: render::sweep_csv(&sweep),
            exit: EXIT_OK,
            json: None,
        },
        _ => Outcome::new(
            cfg,
            render::sweep_json(&cfg.path_label(), &sweep),
            render::sweep_text(&sweep),
            EXIT_OK,
        ),
    })
}

/// Domination slack: a bound passes when `max_observed <= value * (1 + 1e-9)`.
pub const DOMINATION_RTOL: f64 = 1e-9;

pub fn cmd_verify(cfg: &RunConfig, m: &Matrix) -> Result<Outcome, CliError> {
    let oracle = oracle_max_norm(m, cfg.samples, cfg.seed)?;
    let reports = lcp_bounds(m, cfg.epsilon);
    let mut all_dominated = true;
    let mut any = false;
    let mut text = format!("oracle max observed: {:.6}\n", oracle.max_observed);
    let bounds: Vec<Value> = reports
        .iter()
        .map(|r| match r {
            Ok(r) => {
                let mut v = render::bound_json(r);
                if let Some(value) = r.value() {
                    any = true;
                    let dominated = oracle.max_observed <= value * (1.0 + DOMINATION_RTOL);
                    all_dominated &= dominated;
                    v["dominated"] = json!(dominated);
                    text.push_str(&format!("{}  dominated: {dominated}\n", render::bound_line(r)));
                } else {
                    text.push_str(&render::bound_line(r));
                    text.push('\n');
                }
                v
            }
            Err(t) => {
                text.push_str(&format!("{:<14} needs --epsilon\n", t.name()));
                epsilon_required(*t)
            }
        })
        .collect();

    let trials = cfg.trials.unwrap_or(DEFAULT_LEMMA_TRIALS);
    let positive_diagonal = (0..m.n()).all(|i| m.diag(i) > 0.0);
    let (target, subject) = if positive_diagonal && is_nekrasov(m).is_nekrasov {
        (Some("M"), Some(m.clone()))
    } else if is_b_nekrasov(m) {
        (Some("B+"), Some(bplus_decompose(m)?.b_plus))
    } else {
        (None, None)
    };
    let lemma_json = match subject {
        Some(s) => {
            let report = lemma_property_suite(&s, trials, cfg.seed)?;
            text.push_str(&format!(
                "lemma suite on {}: {} trials, {} violations\n",
                target.unwrap(),
                report.trials,
                report.violations.len()
            ));
            let details: Vec<Value> = report
                .violations
                .iter()
                .take(20)
                .map(|v| {
                    json!({"trial": v.trial, "d": v.d, "check": format!("{:?}", v.check),
                           "row": v.row, "lhs": v.lhs, "rhs": v.rhs})
                })
                .collect();
            all_dominated &= report.is_clean();
            json!({"target": target, "trials": report.trials,
                   "violations": report.violations.len(), "details": details})
        }
        None => {
            text.push_str("lemma suite skipped: matrix is neither Nekrasov nor B-Nekrasov\n");
            json!({"target": null, "trials": 0, "violations": 0,
                   "skipped": "matrix is neither Nekrasov with positive diagonal nor B-Nekrasov"})
        }
    };
    let json = json!({
        "matrix": cfg.path_label(),
        "n": m.n(),
        "oracle": render::oracle_json(&oracle),
        "bounds": bounds,
        "lemma_suite": lemma_json,
    });
    let exit = match (any, all_dominated) {
        (false, _) => EXIT_NO_BOUND,
        (true, true) => EXIT_OK,
        (true, false) => EXIT_CHECK_FAILED,
    };
    Ok(Outcome::new(cfg, json, text, exit))
}

pub fn cmd_lcp(cfg: &RunConfig, m: &Matrix, q: Vec<f64>) -> Result<Outcome, CliError> {
    let inst = LcpInstance::new(m.clone(), q)?;
    let solution = solve_lcp(&inst)?;
    let reports = lcp_bounds(m, cfg.epsilon);
    let best = best_bound(&reports);
    let trials = cfg.trials.unwrap_or(DEFAULT_LCP_TRIALS);
    let certificates = match best.and_then(BoundReport::value) {
        Some(v) => (0..trials as u64)
            .map(|k| {
                let x = trial_point(&solution.x_star, cfg.seed, k);
                ErrorCertificate::evaluate(&inst, &solution, &x, v)
            })
            .collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    let all_hold = certificates.iter().all(|c| c.holds);
    let basis: Vec<usize> = solution.basis.iter().map(|i| i + 1).collect();
    let json = json!({
        "matrix": cfg.path_label(),
        "n": m.n(),
        "q": inst.q,
        "x_star": solution.x_star,
        "w_star": solution.w_star,
        "basis": basis,
        "complementarity_gap": solution.complementarity_gap,
        "bound": best.map(|b| json!({"theorem": b.theorem.name(), "value": b.value()})),
        "certificates": certificates.iter().map(render::certificate_json).collect::<Vec<_>>(),
        "all_hold": all_hold,
    });
    let mut text = format!(
        "x* = {:?}\nw* = {:?}\ncomplementarity gap = {:e}\n",
        solution.x_star, solution.w_star, solution.complementarity_gap
    );
    match best {
        Some(b) => text.push_str(&format!(
            "bound {} = {:.6}; {} of {} certificates hold\n",
            b.theorem,
            b.value().unwrap(),
            certificates.iter().filter(|c| c.holds).count(),
            certificates.len()
        )),
        None => text.push_str("no applicable bound\n"),
    }
    let exit = match (best.is_some(), all_hold) {
        (false, _) => EXIT_NO_BOUND,
        (true, true) => EXIT_OK,
        (true, false) => EXIT_CHECK_FAILED,
    };
    Ok(Outcome::new(cfg, json, text, exit))
}
