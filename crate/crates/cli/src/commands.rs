use std::fmt::Write as _;
use std::fs::File;
use std::io::Write as _;
use std::path::Path;

use astar::acceptance::{all_pass, format_table, run_with, AcceptanceConfig};
use astar::geometry::{is_orthogonal, is_parallel, normaloid_equivalences, GeometryConfig};
use astar::weight::DEFAULT_EPS_PD;
use astar::{a_norm as core_a_norm, a_numradius, a_numrange_boundary, al_norm, validate_weight, Error, NormResult, SolverConfig, Weight};

use crate::problem::{check_lambda, Diagnostics, Envelope, Problem, ProblemFile, WitnessObject};
use crate::SolverArgs;

#[derive(Debug)]
pub enum Failure {
    /// The suite ran but some criterion failed; carries the table for stdout.
    Verification(String),
    Input(String),
    Math(String),
    Io(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input(_) => 2,
            Failure::Math(_) => 3,
            Failure::Io(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Verification(_) => "acceptance criteria failed",
            Failure::Input(m) | Failure::Math(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::InvalidDimension(_)
            | Error::WrongLength { .. }
            | Error::NonFinite
            | Error::DimensionMismatch { .. }
            | Error::LambdaOutOfRange(_)
            | Error::DimensionTooLarge { .. }
            | Error::InvalidArgument(_) => Failure::Input(msg),
            _ => Failure::Math(msg),
        }
    }
}

fn load(path: &Path) -> Result<Problem, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    ProblemFile::parse(&text)
        .and_then(ProblemFile::into_problem)
        .map_err(Failure::Input)
}

fn weight(p: &Problem) -> Result<Weight, Failure> {
    Ok(validate_weight(&p.a, DEFAULT_EPS_PD)?)
}

fn lambda(p: &Problem, args: &SolverArgs) -> Result<f64, Failure> {
    check_lambda(args.lambda.unwrap_or(p.lambda)).map_err(Failure::Input)
}

fn solver(args: &SolverArgs) -> SolverConfig {
    let d = SolverConfig::default();
    SolverConfig {
        random_starts: args.starts.unwrap_or(d.random_starts),
        max_iter: args.max_iter.unwrap_or(d.max_iter),
        rng_seed: args.seed.unwrap_or(d.rng_seed),
        ..d
    }
}

fn geometry(cfg: SolverConfig, tol: Option<f64>) -> Result<GeometryConfig, Failure> {
    let d = GeometryConfig::default();
    let tol_decision = match tol {
        Some(t) if !(t.is_finite() && t > 0.0) => return Err(Failure::Input(format!("--tol must be positive, got {t}"))),
        Some(t) => t,
        None => d.tol_decision,
    };
    Ok(GeometryConfig {
        tol_decision,
        solver: cfg,
        ..d
    })
}

fn require_y(p: &Problem) -> Result<&astar::ComplexMatrix, Failure> {
    p.y.as_ref().ok_or_else(|| Failure::Input("problem file has no y".into()))
}

fn diagnostics(r: &NormResult, seed: u64, w: &Weight, extra: &[String]) -> Diagnostics {
    Diagnostics {
        starts_used: r.starts_used,
        iterations: r.iterations,
        converged: r.converged,
        seed,
        warnings: w.warnings().iter().chain(extra).cloned().collect(),
    }
}

pub fn norm(file: &Path, args: &SolverArgs) -> Result<String, Failure> {
    let p = load(file)?;
    let w = weight(&p)?;
    let lambda = lambda(&p, args)?;
    let cfg = solver(args);
    let r = al_norm(&w, lambda, &p.x, &cfg)?;
    let mut e = Envelope::new("norm", diagnostics(&r, cfg.rng_seed, &w, &[]))
        .value("lambda", lambda)
        .value("value", r.value)
        .value("value_squared", r.value * r.value);
    e.witness = Some(WitnessObject::from_state(&r.witness));
    Ok(e.to_json())
}

fn plain_value(command: &str, w: &Weight, r: &NormResult) -> String {
    let mut e = Envelope::new(command, diagnostics(r, 0, w, &[])).value("value", r.value);
    e.witness = Some(WitnessObject::from_state(&r.witness));
    e.to_json()
}

pub fn a_norm(file: &Path) -> Result<String, Failure> {
    let p = load(file)?;
    let w = weight(&p)?;
    Ok(plain_value("a-norm", &w, &core_a_norm(&w, &p.x)?))
}

pub fn numradius(file: &Path, angles: usize) -> Result<String, Failure> {
    let p = load(file)?;
    let w = weight(&p)?;
    Ok(plain_value("numradius", &w, &a_numradius(&w, &p.x, angles)?))
}

pub fn range(file: &Path, angles: usize, out: Option<&Path>) -> Result<String, Failure> {
    let p = load(file)?;
    let w = weight(&p)?;
    let b = a_numrange_boundary(&w, &p.x, angles)?;
    let mut csv = String::from("theta,re,im\n");
    for (theta, z) in b.angles.iter().zip(&b.points) {
        let _ = writeln!(csv, "{theta:.16e},{:.16e},{:.16e}", z.re, z.im);
    }
    let Some(path) = out else {
        return Ok(csv);
    };
    std::fs::write(path, &csv).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
    let max_modulus = b.points.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let diag = Diagnostics {
        starts_used: 1,
        converged: true,
        warnings: w.warnings().to_vec(),
        ..Diagnostics::default()
    };
    Ok(Envelope::new("range", diag)
        .value("angles", angles)
        .value("max_modulus", max_modulus)
        .to_json())
}

pub fn ortho(file: &Path, args: &SolverArgs, tol: Option<f64>) -> Result<String, Failure> {
    let p = load(file)?;
    let y = require_y(&p)?;
    let w = weight(&p)?;
    let lambda = lambda(&p, args)?;
    let cfg = geometry(solver(args), tol)?;
    let r = is_orthogonal(&w, lambda, &p.x, y, &cfg)?;
    let nx = al_norm(&w, lambda, &p.x, &cfg.solver)?;
    let mut e = Envelope::new("ortho", diagnostics(&nx, cfg.solver.rng_seed, &w, &r.warnings))
        .value("orthogonal", r.orthogonal)
        .value("lambda", lambda)
        .value("min_value", r.min_value)
        .complex("argmin_xi", r.argmin_xi)
        .value("defect", r.defect)
        .value("norm_x", r.norm_x)
        .value("tol", cfg.tol_decision)
        .value("witnesses_hold", r.witnesses_hold(cfg.tol_decision.max(1e-5)));
    if let Some(first) = r.theta_witnesses.first() {
        e.witness = Some(WitnessObject::from_state(&first.witness));
        let worst = r.theta_witnesses.iter().map(|t| t.residual_x).fold(0.0, f64::max);
        let min_signed = r.theta_witnesses.iter().map(|t| t.signed_real).fold(f64::INFINITY, f64::min);
        e.certificate = Some(
            [
                ("max_residual_x".to_string(), worst),
                ("min_signed_real".to_string(), min_signed),
                ("n_theta".to_string(), r.theta_witnesses.len() as f64),
            ]
            .into(),
        );
    }
    Ok(e.to_json())
}

pub fn parallel(file: &Path, args: &SolverArgs, tol: Option<f64>) -> Result<String, Failure> {
    let p = load(file)?;
    let y = require_y(&p)?;
    let w = weight(&p)?;
    let lambda = lambda(&p, args)?;
    let cfg = geometry(solver(args), tol)?;
    let r = is_parallel(&w, lambda, &p.x, y, &cfg)?;
    let nx = al_norm(&w, lambda, &p.x, &cfg.solver)?;
    let mut e = Envelope::new("parallel", diagnostics(&nx, cfg.solver.rng_seed, &w, &r.warnings))
        .value("parallel", r.parallel)
        .value("lambda", lambda)
        .complex("mu", r.mu)
        .value("defect", r.defect)
        .value("norm_x", r.norm_x)
        .value("norm_y", r.norm_y)
        .value("tol", cfg.tol_decision);
    e.witness = r.witness.as_ref().map(WitnessObject::from_state);
    e.certificate = Some(
        [
            ("residual_pairing".to_string(), r.cert.residual_pairing),
            ("residual_x".to_string(), r.cert.residual_x),
            ("residual_y".to_string(), r.cert.residual_y),
        ]
        .into(),
    );
    Ok(e.to_json())
}

pub fn normaloid(file: &Path, args: &SolverArgs, tol: Option<f64>) -> Result<String, Failure> {
    let p = load(file)?;
    let w = weight(&p)?;
    let lambda = lambda(&p, args)?;
    let cfg = geometry(solver(args), tol)?;
    let r = normaloid_equivalences(&w, lambda, &p.x, cfg.tol_decision, &cfg)?;
    let nx = al_norm(&w, lambda, &p.x, &cfg.solver)?;
    Ok(Envelope::new("normaloid", diagnostics(&nx, cfg.solver.rng_seed, &w, &[]))
        .value("lambda", lambda)
        .value("parallel_to_unit", r.parallel_to_unit)
        .value("normaloid", r.normaloid)
        .value("parallel_to_adjoint", r.parallel_to_adjoint)
        .value("agree", r.agree())
        .value("numradius", r.numradius)
        .value("a_norm", r.a_norm)
        .value("defect_unit", r.defect_unit)
        .value("defect_adjoint", r.defect_adjoint)
        .to_json())
}

pub fn verify_paper(report: Option<&Path>, tol: Option<f64>, seed: Option<u64>, criteria: Option<Vec<usize>>) -> Result<String, Failure> {
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Failure::Input(format!("--tol must be positive, got {t}")));
        }
    }
    // fail on an unwritable report before spending minutes on the suite
    let mut file = report
        .map(|path| File::create(path).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))))
        .transpose()?;
    let cfg = AcceptanceConfig {
        seed: seed.unwrap_or(AcceptanceConfig::default().seed),
        tol_override: tol,
        only: criteria,
    };
    let reports = run_with(&cfg, |r| eprintln!("{}", r.line()))?;
    let table = format_table(&reports);
    if let (Some(f), Some(path)) = (file.as_mut(), report) {
        f.write_all(table.as_bytes())
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    if all_pass(&reports) {
        Ok(table)
    } else {
        Err(Failure::Verification(table))
    }
}
