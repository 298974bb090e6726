//! The acceptance suite: ten criteria, each reduced to one table row.
//!
//! Random instances are drawn from a seeded ChaCha8 stream before any
//! solver runs, so the table is reproducible. Instances are then evaluated
//! in parallel and folded back in order.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{
    is_orthogonal, is_parallel, normaloid_equivalences, parallelism_implies_orthogonality_check, GeometryConfig,
    OrthoResult, ParallelResult,
};
use crate::linalg::{inner, normalize, ComplexMatrix};
use crate::oracle::{grid_max_mu, grid_min_xi, sphere_sample_max, OracleConfig};
use crate::seminorm::{a_norm, a_numradius, al_norm, SolverConfig, DEFAULT_NUMRADIUS_ANGLES};
use crate::weight::{Weight, DEFAULT_EPS_PD};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq)]
pub struct AcceptanceConfig {
    pub seed: u64,
    /// Replaces every criterion tolerance, including the decision tolerance
    /// of the agreement criteria.
    pub tol_override: Option<f64>,
    /// Criterion ids to report; `None` runs all ten. Criterion 8 audits the
    /// decisions of 5, 7, 9 and 10, so it runs them without reporting them.
    pub only: Option<Vec<usize>>,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            tol_override: None,
            only: None,
        }
    }
}

impl AcceptanceConfig {
    fn tol(&self, default: f64) -> f64 {
        self.tol_override.unwrap_or(default)
    }

    fn reports(&self, id: usize) -> bool {
        self.only.as_ref().is_none_or(|ids| ids.contains(&id))
    }

    fn needs(&self, id: usize) -> bool {
        self.reports(id) || (matches!(id, 5 | 7 | 9 | 10) && self.reports(8))
    }
}

pub const CRITERIA: usize = 10;

/// One row of the acceptance table.
#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub expected: String,
    pub got: String,
    pub tol: f64,
    pub pass: bool,
}

impl CriterionReport {
    /// `PASS`/`FAIL` line for logs.
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {}: expected {}; got {}; tol {:.0e}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.expected,
            self.got,
            self.tol
        )
    }
}

/// Plain-text table with columns criterion, expected, got, tol, pass.
pub fn format_table(reports: &[CriterionReport]) -> String {
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            [
                format!("{:>2} {}", r.id, r.name),
                r.expected.clone(),
                r.got.clone(),
                format!("{:.0e}", r.tol),
                if r.pass { "pass".into() } else { "FAIL".into() },
            ]
        })
        .collect();
    let header = ["criterion", "expected", "got", "tol", "pass"].map(String::from);
    let mut widths = header.clone().map(|h| h.len());
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&rows) {
        let cells: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}

pub fn all_pass(reports: &[CriterionReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

/// Runs the selected criteria in order, calling `on_report` as each row is ready.
pub fn run_with(cfg: &AcceptanceConfig, mut on_report: impl FnMut(&CriterionReport)) -> Result<Vec<CriterionReport>> {
    if let Some(bad) = cfg.only.iter().flatten().find(|&&id| id == 0 || id > CRITERIA) {
        return Err(Error::InvalidArgument(format!("no criterion {bad}; ids run from 1 to {CRITERIA}")));
    }
    let mut certs = CertificateLog::default();
    let mut out = Vec::with_capacity(CRITERIA);
    let mut emit = |r: Option<CriterionReport>, out: &mut Vec<CriterionReport>| {
        if let Some(r) = r.filter(|r| cfg.reports(r.id)) {
            on_report(&r);
            out.push(r);
        }
    };
    macro_rules! step {
        ($id:expr, $e:expr) => {
            if cfg.needs($id) {
                Some($e?)
            } else {
                None
            }
        };
    }
    emit(step!(1, nilpotent_example(cfg)), &mut out);
    emit(step!(2, sandwich(cfg)), &mut out);
    emit(step!(3, selfadjoint_collapse(cfg)), &mut out);
    emit(step!(4, adjoint_and_product(cfg)), &mut out);
    emit(step!(5, oracle_equivalence(cfg, &mut certs)), &mut out);
    emit(step!(6, classical_limit(cfg)), &mut out);
    emit(step!(7, normaloid_predicates(cfg, &mut certs)), &mut out);
    // 8 audits the decisions of 9 and 10 as well, so those run first
    let implication = step!(9, parallel_implies_orthogonal(cfg, &mut certs));
    let homogeneity = step!(10, homogeneity(cfg, &mut certs));
    emit(cfg.reports(8).then(|| certificates(cfg, &certs)), &mut out);
    emit(implication, &mut out);
    emit(homogeneity, &mut out);
    Ok(out)
}

pub fn run(cfg: &AcceptanceConfig) -> Result<Vec<CriterionReport>> {
    run_with(cfg, |_| {})
}

// ---- instance generators --------------------------------------------------

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let s = 1.0 / (n as f64).sqrt();
    ComplexMatrix::from_fn(n, |_, _| gaussian(rng) * s)
}

fn random_weight(rng: &mut ChaCha8Rng, n: usize) -> Weight {
    let b = random_matrix(rng, n);
    let a = (&(&b * &b.adjoint()) + &ComplexMatrix::identity(n).scale_real(0.5)).hermitian_part();
    Weight::validate(&a, DEFAULT_EPS_PD).expect("b b* + I/2 is positive definite")
}

fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
        for c in &cols {
            let p = inner(c, &v);
            v.iter_mut().zip(c).for_each(|(a, b)| *a -= p * b);
        }
        if normalize(&mut v) > 1e-6 {
            cols.push(v);
        }
    }
    ComplexMatrix::from_fn(n, |i, j| cols[j][i])
}

fn random_lambda(rng: &mut ChaCha8Rng) -> f64 {
    const LAMBDAS: [f64; 5] = [0.0, 0.3, 0.5, 0.8, 1.0];
    LAMBDAS[rng.gen_range(0..LAMBDAS.len())]
}

fn nonzero_real(rng: &mut ChaCha8Rng) -> f64 {
    let m = rng.gen_range(0.2..3.0);
    if rng.gen_bool(0.5) {
        m
    } else {
        -m
    }
}

fn nonzero_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.2..3.0), rng.gen_range(0.0..std::f64::consts::TAU))
}

/// `a^{-1/2} (U D U*) a^{1/2}` with a strictly dominant eigenvalue in `D`.
fn normaloid_element(rng: &mut ChaCha8Rng, w: &Weight) -> ComplexMatrix {
    let n = w.dim();
    let u = random_unitary(rng, n);
    let top = nonzero_complex(rng);
    let d: Vec<Complex64> = (0..n)
        .map(|k| {
            if k == 0 {
                top
            } else {
                Complex64::from_polar(top.norm() * rng.gen_range(0.0..0.8), rng.gen_range(0.0..std::f64::consts::TAU))
            }
        })
        .collect();
    let y = ComplexMatrix::from_fn(n, |i, j| (0..n).map(|k| u[(i, k)] * d[k] * u[(j, k)].conj()).sum());
    w.unreduce(&y).expect("dimensions match")
}

/// Random element whose a-numerical radius is below 95% of its a-norm.
fn non_normaloid_element(rng: &mut ChaCha8Rng, w: &Weight) -> Result<ComplexMatrix> {
    loop {
        let x = random_matrix(rng, w.dim());
        let v = a_numradius(w, &x, DEFAULT_NUMRADIUS_ANGLES)?.value;
        let n = a_norm(w, &x)?.value;
        if n - v > 0.05 * n {
            return Ok(x);
        }
    }
}

/// Removes from `y0` its component along `x` in the pairing of the state
/// attaining `|x|_{a,lambda}`, which makes `x _|_ y` at smooth points.
fn orthogonal_partner(w: &Weight, lambda: f64, x: &ComplexMatrix, y0: &ComplexMatrix) -> Result<ComplexMatrix> {
    let nx = al_norm(w, lambda, x, &SolverConfig::default())?;
    let p = nx.witness.pairing(w, lambda, x, y0);
    Ok(y0 - &x.scale(p / (nx.value * nx.value)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PairKind {
    Random,
    Parallel,
    Orthogonal,
}

struct Instance {
    w: Weight,
    lambda: f64,
    x: ComplexMatrix,
    y: ComplexMatrix,
}

fn parallel_pair(rng: &mut ChaCha8Rng, w: &Weight, variant: usize) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let n = w.dim();
    Ok(match variant % 3 {
        0 => {
            let x = random_matrix(rng, n);
            let y = x.scale(nonzero_complex(rng));
            (x, y)
        }
        1 => {
            let x = normaloid_element(rng, w);
            (x, ComplexMatrix::identity(n).scale_real(rng.gen_range(0.2..3.0)))
        }
        _ => {
            let x = normaloid_element(rng, w);
            let y = w.a_adjoint(&x)?.scale_real(rng.gen_range(0.2..3.0));
            (x, y)
        }
    })
}

fn pair_instance(rng: &mut ChaCha8Rng, n: usize, kind: PairKind, variant: usize) -> Result<Instance> {
    let w = random_weight(rng, n);
    let lambda = random_lambda(rng);
    let (x, y) = match kind {
        PairKind::Random => (random_matrix(rng, n), random_matrix(rng, n)),
        PairKind::Parallel => parallel_pair(rng, &w, variant)?,
        PairKind::Orthogonal => {
            let x = random_matrix(rng, n);
            let y0 = random_matrix(rng, n);
            let y = orthogonal_partner(&w, lambda, &x, &y0)?;
            (x, y)
        }
    };
    Ok(Instance { w, lambda, x, y })
}

fn kind_for(i: usize) -> PairKind {
    match i % 3 {
        0 => PairKind::Random,
        1 => PairKind::Parallel,
        _ => PairKind::Orthogonal,
    }
}

fn rng_for(cfg: &AcceptanceConfig, criterion: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(criterion);
    rng
}

fn geometry(tol_decision: f64) -> GeometryConfig {
    GeometryConfig {
        tol_decision,
        ..GeometryConfig::default()
    }
}

// ---- certificate log ----------------------------------------------------------

#[derive(Default)]
struct CertificateLog {
    parallel_count: usize,
    /// Largest `residual / (1 + |x| |y|)`.
    parallel_worst: f64,
    ortho_count: usize,
    ortho_worst_residual: f64,
    ortho_min_signed: f64,
    ortho_short: usize,
    n_theta: usize,
}

impl CertificateLog {
    fn parallel(&mut self, r: &ParallelResult) {
        if r.parallel {
            self.parallel_count += 1;
            let rel = r.cert.max_residual() / (1.0 + r.norm_x * r.norm_y);
            self.parallel_worst = self.parallel_worst.max(rel);
        }
    }

    fn ortho(&mut self, r: &OrthoResult, n_theta: usize) {
        if r.orthogonal {
            self.ortho_count += 1;
            self.n_theta = n_theta;
            if r.theta_witnesses.len() != n_theta {
                self.ortho_short += 1;
            }
            for t in &r.theta_witnesses {
                self.ortho_worst_residual = self.ortho_worst_residual.max(t.residual_x);
                self.ortho_min_signed = self.ortho_min_signed.min(t.signed_real);
            }
        }
    }
}

// ---- criteria ----------------------------------------------------------------

fn max_abs(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

/// `a = diag(2,1)`, `x = [[0,1],[0,0]]`: squared norms from the one-dimensional reduction.
fn nilpotent_example(cfg: &AcceptanceConfig) -> Result<CriterionReport> {
    let w = Weight::validate(&ComplexMatrix::from_real_diag(&[2.0, 1.0]), DEFAULT_EPS_PD)?;
    let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
    let solver = SolverConfig::default();
    let sq = |lambda: f64| -> Result<f64> { Ok(al_norm(&w, lambda, &x, &solver)?.value.powi(2)) };
    let tol_one = cfg.tol(1e-8);
    let tol = cfg.tol(1e-6);

    let err_one = (sq(1.0)? - 2.0).abs();
    let mut err = 0.0f64;
    let mut below_two = true;
    for lambda in [0.0, 0.1, 0.25, 0.5, 0.6, 0.7, 0.9] {
        let expected = if lambda <= 0.5 { 0.5 / (1.0 - lambda) } else { 2.0 * lambda };
        let got = sq(lambda)?;
        err = err.max((got - expected).abs());
        if lambda < 0.75 {
            below_two &= got < 2.0;
        }
    }
    Ok(CriterionReport {
        id: 1,
        name: "weighted nilpotent example",
        expected: "|x|^2 = 2 at lambda=1; 1/(2(1-lambda)) or 2 lambda; < 2 below 0.75".into(),
        got: format!("err at 1 {err_one:.2e}; max err {err:.2e}; below 2: {below_two}"),
        tol,
        pass: err_one <= tol_one && err <= tol && below_two,
    })
}

/// `v_a <= |.|_{a,lambda} <= |.|_a` and `|.|_a / 2 <= v_a` on random triples.
fn sandwich(cfg: &AcceptanceConfig) -> Result<CriterionReport> {
    let tol = cfg.tol(1e-7);
    let mut rng = rng_for(cfg, 2);
    let cases: Vec<(Weight, ComplexMatrix, f64)> = (0..200)
        .map(|i| {
            let n = 2 + i % 3;
            let w = random_weight(&mut rng, n);
            let x = random_matrix(&mut rng, n);
            (w, x, rng.gen_range(0.0..=1.0))
        })
        .collect();
    let violations: Vec<f64> = cases
        .par_iter()
        .map(|(w, x, lambda)| -> Result<f64> {
            let v = a_numradius(w, x, DEFAULT_NUMRADIUS_ANGLES)?.value;
            let al = al_norm(w, *lambda, x, &SolverConfig::default())?.value;
            let an = a_norm(w, x)?.value;
            Ok((v - al).max(al - an).max(0.5 * an - v))
        })
        .collect::<Result<_>>()?;
    let worst = violations.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(CriterionReport {
        id: 2,
        name: "sandwich inequalities",
        expected: "v_a <= |x|_{a,lambda} <= |x|_a and |x|_a/2 <= v_a on 200 triples".into(),
        got: format!("largest violation {worst:.2e}"),
        tol,
        pass: worst <= tol,
    })
}

/// For `x = a^{-1} H`, all three seminorms coincide.
fn selfadjoint_collapse(cfg: &AcceptanceConfig) -> Result<CriterionReport> {
    let tol = cfg.tol(1e-6);
    let mut rng = rng_for(cfg, 3);
    let cases: Vec<(Weight, ComplexMatrix)> = (0..50)
        .map(|i| {
            let n = 2 + i % 3;
            let w = random_weight(&mut rng, n);
            let h = random_matrix(&mut rng, n).hermitian_part();
            let x = w.inv_a() * &h;
            (w, x)
        })
        .collect();
    let errors: Vec<f64> = cases
        .par_iter()
        .map(|(w, x)| -> Result<f64> {
            let v = a_numradius(w, x, DEFAULT_NUMRADIUS_ANGLES)?.value;
            let an = a_norm(w, x)?.value;
            let mut worst = 0.0f64;
            for lambda in [0.0, 0.3, 0.7, 1.0] {
                let al = al_norm(w, lambda, x, &SolverConfig::default())?.value;
                worst = worst.max((v - al).abs().max((an - al).abs()) / (1.0 + an));
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    let worst = max_abs(errors);
    Ok(CriterionReport {
        id: 3,
        name: "a-selfadjoint collapse",
        expected: "v_a = |x|_a = |x|_{a,lambda} for x = a^{-1} H".into(),
        got: format!("largest relative gap {worst:.2e}"),
        tol,
        pass: worst <= tol,
    })
}

/// `|x^#| = |x|` and `|x x^#|_{a,lambda} = |x|_a^2`.
fn adjoint_and_product(cfg: &AcceptanceConfig) -> Result<CriterionReport> {
    let tol = cfg.tol(1e-6);
    let mut rng = rng_for(cfg, 4);
    let cases: Vec<(Weight, ComplexMatrix, f64)> = (0..50)
        .map(|i| {
            let n = 2 + i % 3;
            let w = random_weight(&mut rng, n);
            let x = random_matrix(&mut rng, n);
            (w, x, rng.gen_range(0.0..=1.0))
        })
        .collect();
    let errors: Vec<(f64, f64)> = cases
        .par_iter()
        .map(|(w, x, lambda)| -> Result<(f64, f64)> {
            let solver = SolverConfig::default();
            let xs = w.a_adjoint(x)?;
            let sym = (al_norm(w, *lambda, &xs, &solver)?.value - al_norm(w, *lambda, x, &solver)?.value).abs();
            let an = a_norm(w, x)?.value;
            let prod = al_norm(w, *lambda, &(x * &xs), &solver)?.value;
            Ok((sym, (prod - an * an).abs() / (1.0 + an * an)))
        })
        .collect::<Result<_>>()?;
    let sym = max_abs(errors.iter().map(|e| e.0));
    let prod = max_abs(errors.iter().map(|e| e.1));
    Ok(CriterionReport {
        id: 4,
        name: "adjoint symmetry and product identity",
        expected: "|x^#|_{a,lambda} = |x|_{a,lambda}; |x x^#|_{a,lambda} = |x|_a^2".into(),
        got: format!("symmetry err {sym:.2e}; product rel err {prod:.2e}"),
        tol,
        pass: sym <= tol && prod <= tol,
    })
}

struct OracleOutcome {
    norm_err: f64,
    ortho: (bool, bool),
    parallel: (bool, bool),
    ortho_result: OrthoResult,
    parallel_result: ParallelResult,
}

/// Main solvers against the brute-force oracles on the same instances.
fn oracle_equivalence(cfg: &AcceptanceConfig, certs: &mut CertificateLog) -> Result<CriterionReport> {
    let tol = cfg.tol(1e-6);
    let gcfg = geometry(tol);
    let ocfg = OracleConfig::default();
    let mut rng = rng_for(cfg, 5);
    let instances: Vec<Instance> = (0..125)
        .map(|i| pair_instance(&mut rng, if i < 100 { 2 } else { 3 }, kind_for(i), i / 3))
        .collect::<Result<_>>()?;
    let outcomes: Vec<OracleOutcome> = instances
        .par_iter()
        .map(|t| -> Result<OracleOutcome> {
            let (w, lambda) = (&t.w, t.lambda);
            let solver = &gcfg.solver;
            let nx = al_norm(w, lambda, &t.x, solver)?.value;
            let ny = al_norm(w, lambda, &t.y, solver)?.value;
            let sampled = sphere_sample_max(w, lambda, &t.x, &ocfg)?;
            let norm_err = (nx - sampled).abs() / nx.max(1e-300);

            let xh = t.x.scale_real(1.0 / nx);
            let yh = t.y.scale_real(1.0 / ny);
            let base = al_norm(w, lambda, &xh, solver)?.value;
            let (min_xi, _) = grid_min_xi(w, lambda, &xh, &yh, &ocfg)?;
            let (max_mu, _) = grid_max_mu(w, lambda, &xh, &yh, &ocfg)?;
            let ortho_result = is_orthogonal(w, lambda, &t.x, &t.y, &gcfg)?;
            let parallel_result = is_parallel(w, lambda, &t.x, &t.y, &gcfg)?;
            Ok(OracleOutcome {
                norm_err,
                ortho: (ortho_result.orthogonal, base - min_xi <= tol),
                parallel: (parallel_result.parallel, 2.0 - max_mu <= tol),
                ortho_result,
                parallel_result,
            })
        })
        .collect::<Result<_>>()?;
    let worst = max_abs(outcomes.iter().map(|o| o.norm_err));
    let ortho_mismatch = outcomes.iter().filter(|o| o.ortho.0 != o.ortho.1).count();
    let parallel_mismatch = outcomes.iter().filter(|o| o.parallel.0 != o.parallel.1).count();
    let n_ortho = outcomes.iter().filter(|o| o.ortho.0).count();
    let n_parallel = outcomes.iter().filter(|o| o.parallel.0).count();
    for o in &outcomes {
        certs.ortho(&o.ortho_result, gcfg.n_theta);
        certs.parallel(&o.parallel_result);
    }
    Ok(CriterionReport {
        id: 5,
        name: "oracle equivalence",
        expected: "norm rel err small; decisions agree with grid oracles on 125 instances".into(),
        got: format!(
            "max rel err {worst:.2e}; ortho mismatches {ortho_mismatch} ({n_ortho} true); parallel mismatches {parallel_mismatch} ({n_parallel} true)"
        ),
        tol,
        pass: worst <= tol && ortho_mismatch == 0 && parallel_mismatch == 0,
    })
}

/// Top eigenvalue of a Hermitian 2x2 or 3x3 matrix in closed form.
fn closed_form_top_eigenvalue(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let d = |i: usize| m[(i, i)].re;
    if n == 2 {
        let mean = 0.5 * (d(0) + d(1));
        let half = 0.5 * (d(0) - d(1));
        return mean + (half * half + m[(0, 1)].norm_sqr()).sqrt();
    }
    assert_eq!(n, 3, "closed form covers n = 2, 3");
    let off = m[(0, 1)].norm_sqr() + m[(0, 2)].norm_sqr() + m[(1, 2)].norm_sqr();
    let q = (d(0) + d(1) + d(2)) / 3.0;
    let p2 = (d(0) - q).powi(2) + (d(1) - q).powi(2) + (d(2) - q).powi(2) + 2.0 * off;
    if p2 <= 0.0 {
        return q;
    }
    let p = (p2 / 6.0).sqrt();
    let b = ComplexMatrix::from_fn(3, |i, j| {
        let shift = if i == j { q } else { 0.0 };
        (m[(i, j)] - shift) / p
    });
    let det = b[(0, 0)] * (b[(1, 1)] * b[(2, 2)] - b[(1, 2)] * b[(2, 1)])
        - b[(0, 1)] * (b[(1, 0)] * b[(2, 2)] - b[(1, 2)] * b[(2, 0)])
        + b[(0, 2)] * (b[(1, 0)] * b[(2, 1)] - b[(1, 1)] * b[(2, 0)]);
    let r = (0.5 * det.re).clamp(-1.0, 1.0);
    q + 2.0 * p * (r.acos() / 3.0).cos()
}

/// `a = I`: the operator norm and the classical numerical radius.
fn classical_limit(cfg: &AcceptanceConfig) -> Result<CriterionReport> {
    let tol = cfg.tol(1e-8);
    let mut rng = rng_for(cfg, 6);
    let mut err = 0.0f64;
    for i in 0..40 {
        let n = 2 + i % 2;
        let w = Weight::identity(n);
        let x = random_matrix(&mut rng, n);
        let sigma = closed_form_top_eigenvalue(&(&x.adjoint() * &x)).max(0.0).sqrt();
        let got = al_norm(&w, 1.0, &x, &SolverConfig::default())?.value;
        err = err.max((got - sigma).abs());
    }
    let w = Weight::identity(2);
    let shift = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
    let radius = a_numradius(&w, &shift, DEFAULT_NUMRADIUS_ANGLES)?.value;
    let sampled = sphere_sample_max(&w, 0.0, &shift, &OracleConfig::default())?;
    let radius_err = (radius - 0.5).abs();
    let oracle_err = (sampled - 0.5).abs();
    Ok(CriterionReport {
        id: 6,
        name: "classical limit a = I",
        expected: "|x|_{I,1} = sigma_max (closed form); v([[0,1],[0,0]]) = 0.5".into(),
        got: format!("sigma err {err:.2e}; radius err {radius_err:.2e}; oracle err {oracle_err:.2e}"),
        tol,
        pass: err <= tol && radius_err <= tol && oracle_err <= tol,
    })
}

/// `x || 1`, `v_a(x) = |x|_a` and `x || x^#` agree on constructed elements.
fn normaloid_predicates(cfg: &AcceptanceConfig, certs: &mut CertificateLog) -> Result<CriterionReport> {
    let tol = cfg.tol(1e-6);
    let gcfg = geometry(tol);
    let mut rng = rng_for(cfg, 7);
    let mut cases: Vec<(Weight, ComplexMatrix, bool)> = Vec::with_capacity(40);
    for i in 0..40 {
        let n = 2 + i % 2;
        let w = random_weight(&mut rng, n);
        let normaloid = i < 20;
        let x = if normaloid {
            normaloid_element(&mut rng, &w)
        } else {
            non_normaloid_element(&mut rng, &w)?
        };
        cases.push((w, x, normaloid));
    }
    let checks: Vec<(bool, bool)> = cases
        .par_iter()
        .map(|(w, x, normaloid)| -> Result<(bool, bool)> {
            let mut agree = true;
            let mut matches = true;
            for lambda in [0.2, 0.8] {
                let r = normaloid_equivalences(w, lambda, x, tol, &gcfg)?;
                agree &= r.agree();
                matches &= r.normaloid == *normaloid;
            }
            Ok((agree, matches))
        })
        .collect::<Result<_>>()?;
    // certificates of the positive parallelism decisions
    for (w, x, _) in cases.iter().filter(|c| c.2) {
        let unit = ComplexMatrix::identity(w.dim());
        certs.parallel(&is_parallel(w, 0.8, x, &unit, &gcfg)?);
    }
    let disagreements = checks.iter().filter(|c| !c.0).count();
    let misclassified = checks.iter().filter(|c| !c.1).count();
    Ok(CriterionReport {
        id: 7,
        name: "normaloid equivalences",
        expected: "three predicates agree for 20 normaloid + 20 non-normaloid at lambda 0.2, 0.8".into(),
        got: format!("disagreements {disagreements}/40; misclassified {misclassified}/40"),
        tol,
        pass: disagreements == 0 && misclassified == 0,
    })
}

/// Residuals and per-angle witnesses of every positive decision above.
fn certificates(cfg: &AcceptanceConfig, certs: &CertificateLog) -> CriterionReport {
    let tol = cfg.tol(1e-5);
    let pass = certs.parallel_count > 0
        && certs.ortho_count > 0
        && certs.parallel_worst <= tol
        && certs.ortho_worst_residual <= tol
        && certs.ortho_min_signed >= -tol
        && certs.ortho_short == 0;
    CriterionReport {
        id: 8,
        name: "decision certificates",
        expected: format!(
            "parallel residual <= tol (1 + |x||y|); {} witnesses with residual <= tol, signed real >= -tol",
            certs.n_theta
        ),
        got: format!(
            "{} parallel, worst {:.2e}; {} orthogonal, worst residual {:.2e}, min signed {:.2e}, incomplete {}",
            certs.parallel_count,
            certs.parallel_worst,
            certs.ortho_count,
            certs.ortho_worst_residual,
            certs.ortho_min_signed,
            certs.ortho_short
        ),
        tol,
        pass,
    }
}

/// For parallel pairs, `x` and `y` are both orthogonal to `|y| x - mu |x| y`.
fn parallel_implies_orthogonal(cfg: &AcceptanceConfig, certs: &mut CertificateLog) -> Result<CriterionReport> {
    let tol = cfg.tol(1e-5);
    let gcfg = GeometryConfig::default();
    let mut rng = rng_for(cfg, 9);
    let instances: Vec<Instance> = (0..20)
        .map(|i| pair_instance(&mut rng, 2 + i % 2, PairKind::Parallel, i))
        .collect::<Result<_>>()?;
    let reports: Vec<_> = instances
        .par_iter()
        .map(|t| parallelism_implies_orthogonality_check(&t.w, t.lambda, &t.x, &t.y, &gcfg))
        .collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    let mut failures = 0;
    for r in &reports {
        worst = worst.max(r.first.defect).max(r.second.defect);
        if !(r.holds && r.first.defect <= tol && r.second.defect <= tol) {
            failures += 1;
        }
        certs.parallel(&r.parallel);
        certs.ortho(&r.first, gcfg.n_theta);
        certs.ortho(&r.second, gcfg.n_theta);
    }
    Ok(CriterionReport {
        id: 9,
        name: "parallelism implies orthogonality",
        expected: "both relations hold on 20 parallel pairs".into(),
        got: format!("failures {failures}/20; worst defect {worst:.2e}"),
        tol,
        pass: failures == 0 && worst <= tol,
    })
}

/// Decisions are unchanged by `x -> alpha x`, `y -> beta y` and by `#`.
fn homogeneity(cfg: &AcceptanceConfig, certs: &mut CertificateLog) -> Result<CriterionReport> {
    let tol = cfg.tol(1e-6);
    let gcfg = geometry(tol);
    let mut rng = rng_for(cfg, 10);
    let mut cases = Vec::with_capacity(50);
    for i in 0..50 {
        let t = pair_instance(&mut rng, 2 + i % 2, kind_for(i), i / 3)?;
        let (ar, br) = (nonzero_real(&mut rng), nonzero_real(&mut rng));
        let (ac, bc) = (nonzero_complex(&mut rng), nonzero_complex(&mut rng));
        cases.push((t, ar, br, ac, bc));
    }
    let outcomes: Vec<(bool, bool, Vec<ParallelResult>, Vec<OrthoResult>)> = cases
        .par_iter()
        .map(|(t, ar, br, ac, bc)| {
            let (w, lambda) = (&t.w, t.lambda);
            let xs = w.a_adjoint(&t.x)?;
            let ys = w.a_adjoint(&t.y)?;
            let parallel = vec![
                is_parallel(w, lambda, &t.x, &t.y, &gcfg)?,
                is_parallel(w, lambda, &t.x.scale_real(*ar), &t.y.scale_real(*br), &gcfg)?,
                is_parallel(w, lambda, &xs, &ys, &gcfg)?,
            ];
            let ortho = vec![
                is_orthogonal(w, lambda, &t.x, &t.y, &gcfg)?,
                is_orthogonal(w, lambda, &t.x.scale(*ac), &t.y.scale(*bc), &gcfg)?,
                is_orthogonal(w, lambda, &xs, &ys, &gcfg)?,
            ];
            let p_same = parallel.iter().all(|r| r.parallel == parallel[0].parallel);
            let o_same = ortho.iter().all(|r| r.orthogonal == ortho[0].orthogonal);
            Ok((p_same, o_same, parallel, ortho))
        })
        .collect::<Result<_>>()?;
    let p_bad = outcomes.iter().filter(|o| !o.0).count();
    let o_bad = outcomes.iter().filter(|o| !o.1).count();
    let p_true = outcomes.iter().filter(|o| o.2[0].parallel).count();
    let o_true = outcomes.iter().filter(|o| o.3[0].orthogonal).count();
    for (_, _, parallel, ortho) in &outcomes {
        parallel.iter().for_each(|r| certs.parallel(r));
        ortho.iter().for_each(|r| certs.ortho(r, gcfg.n_theta));
    }
    Ok(CriterionReport {
        id: 10,
        name: "homogeneity and adjoint invariance",
        expected: "decisions invariant under scaling and # on 50 instances".into(),
        got: format!("parallel changes {p_bad} ({p_true} true); ortho changes {o_bad} ({o_true} true)"),
        tol,
        pass: p_bad == 0 && o_bad == 0,
    })
}
