//! The a-operator seminorm, the a-numerical radius and range, and the
//! interpolating (a,lambda)-norm.
//!
//! All quantities are computed on `y = a^{1/2} x a^{-1/2}` against the
//! standard unit sphere; a maximizing unit vector `u` is turned back into a
//! state of `S_a` via [`Weight::state_from_unit_vector`].
//!
//! The (a,lambda)-norm is the square root of the maximum over unit `u` of
//!
//! ```text
//! f(u) = lambda |y u|^2 + (1 - lambda) |u* y u|^2
//! ```
//!
//! which has no closed form for `0 < lambda < 1`; it is found by multistart
//! ascent on the sphere (see [`SolverConfig`]).

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{herm_eig, inner, normalize, phase_normalize, unit_basis, ComplexMatrix, ZERO};
use crate::weight::{StateWitness, Weight};

pub const DEFAULT_NUMRADIUS_ANGLES: usize = 720;
pub const MIN_RANGE_ANGLES: usize = 8;

/// Width at which golden-section refinement of a support angle stops.
const ANGLE_REFINE_WIDTH: f64 = 1e-10;
/// Angle grid used for the numerical-radius seed inside the (a,lambda) solver.
const SEED_ANGLES: usize = 32;
/// Coarser refinement for the seed; the ascent polishes it afterwards.
const SEED_REFINE_WIDTH: f64 = 1e-6;
/// Number of `Re(e^{i theta} y)` eigenvector seeds.
const ROTATION_SEEDS: usize = 8;
const GAIN_TOL: f64 = 1e-14;
/// Local maxima within this of the best are kept as attaining candidates.
const ATTAINING_GAP: f64 = 1e-9;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Knobs of the multistart sphere ascent.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub random_starts: usize,
    pub max_iter: usize,
    pub rng_seed: u64,
    pub refine_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            random_starts: 32,
            max_iter: 500,
            rng_seed: 0,
            refine_tol: 1e-12,
        }
    }
}

/// A seminorm value with the state that attains it.
#[derive(Clone, Debug)]
pub struct NormResult {
    pub value: f64,
    pub witness: StateWitness,
    /// 1 for the a-operator seminorm, 0 for the a-numerical radius.
    pub lambda: f64,
    pub iterations: usize,
    pub starts_used: usize,
    pub converged: bool,
}

/// Boundary polyline of the a-numerical range.
#[derive(Clone, Debug)]
pub struct RangeBoundary {
    pub points: Vec<Complex64>,
    /// Support angles in `[0, 2 pi)`.
    pub angles: Vec<f64>,
    /// Unit vectors `u` with `points[k] = u* y u`.
    pub vectors: Vec<Vec<Complex64>>,
}

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(())
    } else {
        Err(Error::LambdaOutOfRange(lambda))
    }
}

// ---- a-operator seminorm --------------------------------------------------

/// Largest singular value of `y` with its right singular vector.
pub(crate) fn top_singular(y: &ComplexMatrix) -> Result<(f64, Vec<Complex64>)> {
    let gram = (&y.adjoint() * y).hermitian_part();
    let eig = herm_eig(&gram)?;
    Ok((eig.max().max(0.0).sqrt(), eig.top_vector()))
}

/// `|x|_a`, the largest singular value of the reduced matrix.
pub fn a_norm(w: &Weight, x: &ComplexMatrix) -> Result<NormResult> {
    let y = w.reduce(x)?;
    let (value, u) = top_singular(&y)?;
    Ok(NormResult {
        value,
        witness: w.state_from_unit_vector(&u)?,
        lambda: 1.0,
        iterations: 0,
        starts_used: 1,
        converged: true,
    })
}

// ---- a-numerical radius and range ---------------------------------------

/// Top eigenpair of `Re(e^{i theta} y)`.
fn rotated_top(y: &ComplexMatrix, theta: f64) -> Result<(f64, Vec<Complex64>)> {
    let eig = herm_eig(&y.rotated_real_part(theta))?;
    Ok((eig.max(), eig.top_vector()))
}

pub(crate) struct RadiusSweep {
    pub value: f64,
    pub theta: f64,
    pub vector: Vec<Complex64>,
    /// Top eigenvectors on the uniform grid, in grid order.
    pub grid_vectors: Vec<Vec<Complex64>>,
}

/// Maximizes `lambda_max(Re(e^{i theta} y))` over a uniform grid, then
/// golden-section refines around the best grid angle.
pub(crate) fn radius_sweep(y: &ComplexMatrix, n_angles: usize, width: f64) -> Result<RadiusSweep> {
    let step = TAU / n_angles as f64;
    let grid: Vec<(f64, Vec<Complex64>)> = (0..n_angles)
        .map(|k| rotated_top(y, k as f64 * step))
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (k, (val, _)) in grid.iter().enumerate() {
        if *val > grid[best].0 {
            best = k;
        }
    }
    let center = best as f64 * step;
    let objective = |t: f64| rotated_top(y, t).map(|(v, _)| v);
    let (theta, _) = golden_max(objective, center - step, center + step, width)?;
    let (refined, refined_vec) = rotated_top(y, theta)?;
    let (theta, vector) = if refined >= grid[best].0 {
        (theta.rem_euclid(TAU), refined_vec)
    } else {
        (center, grid[best].1.clone())
    };
    let mut vector = vector;
    phase_normalize(&mut vector);
    let value = y.quadratic_form(&vector).norm();
    Ok(RadiusSweep {
        value,
        theta,
        vector,
        grid_vectors: grid.into_iter().map(|(_, v)| v).collect(),
    })
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`. Returns the
/// best abscissa seen and its value.
pub(crate) fn golden_max(
    mut f: impl FnMut(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    width: f64,
) -> Result<(f64, f64)> {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let (mut best_x, mut best_f) = if f2 > f1 { (x2, f2) } else { (x1, f1) };
    while hi - lo > width {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
            if f2 > best_f {
                best_x = x2;
                best_f = f2;
            }
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
            if f1 > best_f {
                best_x = x1;
                best_f = f1;
            }
        }
    }
    Ok((best_x, best_f))
}

/// `v_a(x)`, the largest modulus in the a-numerical range.
pub fn a_numradius(w: &Weight, x: &ComplexMatrix, n_angles: usize) -> Result<NormResult> {
    a_numradius_with_angle(w, x, n_angles).map(|(r, _)| r)
}

/// [`a_numradius`] together with the support angle `theta` maximizing
/// `lambda_max(Re(e^{i theta} y))`; the attained point of the range is
/// `v_a(x) e^{-i theta}`.
pub fn a_numradius_with_angle(w: &Weight, x: &ComplexMatrix, n_angles: usize) -> Result<(NormResult, f64)> {
    if n_angles == 0 {
        return Err(Error::InvalidArgument("n_angles must be positive".into()));
    }
    let y = w.reduce(x)?;
    let sweep = radius_sweep(&y, n_angles, ANGLE_REFINE_WIDTH)?;
    let result = NormResult {
        value: sweep.value,
        witness: w.state_from_unit_vector(&sweep.vector)?,
        lambda: 0.0,
        iterations: 0,
        starts_used: 1,
        converged: true,
    };
    Ok((result, sweep.theta))
}

/// Support points of the a-numerical range on a uniform angle grid; the
/// convex hull of the polyline approximates the range from inside.
pub fn a_numrange_boundary(w: &Weight, x: &ComplexMatrix, n_angles: usize) -> Result<RangeBoundary> {
    if n_angles < MIN_RANGE_ANGLES {
        return Err(Error::InvalidArgument(format!(
            "n_angles must be at least {MIN_RANGE_ANGLES}, got {n_angles}"
        )));
    }
    let y = w.reduce(x)?;
    let step = TAU / n_angles as f64;
    let mut out = RangeBoundary {
        points: Vec::with_capacity(n_angles),
        angles: Vec::with_capacity(n_angles),
        vectors: Vec::with_capacity(n_angles),
    };
    for k in 0..n_angles {
        let theta = k as f64 * step;
        let (_, u) = rotated_top(&y, -theta)?;
        out.points.push(y.quadratic_form(&u));
        out.angles.push(theta);
        out.vectors.push(u);
    }
    Ok(out)
}

// ---- (a,lambda)-norm -----------------------------------------------------

/// `f(u) = lambda |y u|^2 + (1 - lambda) |u* y u|^2` on the unit sphere.
pub(crate) struct SphereObjective<'a> {
    y: &'a ComplexMatrix,
    y_adj: ComplexMatrix,
    lambda: f64,
}

#[derive(Clone, Debug)]
pub(crate) struct LocalMax {
    pub value: f64,
    pub vector: Vec<Complex64>,
    pub iterations: usize,
    pub converged: bool,
}

impl<'a> SphereObjective<'a> {
    pub fn new(y: &'a ComplexMatrix, lambda: f64) -> Self {
        Self {
            y,
            y_adj: y.adjoint(),
            lambda,
        }
    }

    pub fn value(&self, u: &[Complex64], yu: &mut [Complex64]) -> f64 {
        self.y.matvec_into(u, yu);
        let quad: f64 = yu.iter().map(|z| z.norm_sqr()).sum();
        let g = inner(u, yu);
        self.lambda * quad + (1.0 - self.lambda) * g.norm_sqr()
    }

    /// `lambda y*(y u) + (1 - lambda)(conj(g) y u + g y* u)`, `g = u* y u`.
    fn direction(&self, u: &[Complex64], yu: &[Complex64], out: &mut [Complex64], tmp: &mut [Complex64]) {
        let g = inner(u, yu);
        self.y_adj.matvec_into(yu, out);
        self.y_adj.matvec_into(u, tmp);
        let mu = 1.0 - self.lambda;
        for i in 0..u.len() {
            out[i] = out[i] * self.lambda + (g.conj() * yu[i] + g * tmp[i]) * mu;
        }
    }

    /// Backtracking ascent `u <- normalize(u + eta d)` from `start`.
    pub fn ascend(&self, start: &[Complex64], eta0: f64, max_iter: usize) -> LocalMax {
        let n = start.len();
        let mut u = start.to_vec();
        normalize(&mut u);
        let mut yu = vec![ZERO; n];
        let mut d = vec![ZERO; n];
        let mut tmp = vec![ZERO; n];
        let mut cand = vec![ZERO; n];
        let mut f = self.value(&u, &mut yu);
        let mut eta = eta0;
        let eta_min = eta0 * 1e-16;
        let eta_max = eta0 * 1e8;
        let mut iterations = 0;
        let mut converged = false;

        while iterations < max_iter {
            iterations += 1;
            self.direction(&u, &yu, &mut d, &mut tmp);
            // tangent component: d - Re(u* d) u drops the radial part
            let radial = inner(&u, &d).re;
            let tangent: f64 = d
                .iter()
                .zip(&u)
                .map(|(di, ui)| (di - ui * radial).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if tangent <= 1e-15 * (1.0 + f) {
                converged = true;
                break;
            }
            let mut accepted = None;
            while eta >= eta_min {
                for i in 0..n {
                    cand[i] = u[i] + d[i] * eta;
                }
                normalize(&mut cand);
                let fc = self.value(&cand, &mut tmp);
                if fc > f {
                    accepted = Some(fc);
                    break;
                }
                eta *= 0.5;
            }
            let Some(fc) = accepted else {
                converged = true;
                break;
            };
            let gain = fc - f;
            u.copy_from_slice(&cand);
            f = self.value(&u, &mut yu);
            eta = (eta * 2.0).min(eta_max);
            if gain < GAIN_TOL * (1.0 + f) {
                converged = true;
                break;
            }
        }
        phase_normalize(&mut u);
        LocalMax {
            value: f,
            vector: u,
            iterations,
            converged,
        }
    }
}

/// Every local maximum found by the multistart, best first.
pub(crate) struct MultistartOutcome {
    pub best: LocalMax,
    pub starts_used: usize,
    /// Maximizers whose value is within `ATTAINING_GAP` (relative) of the best.
    pub attaining: Vec<Vec<Complex64>>,
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    loop {
        let mut v: Vec<Complex64> = (0..n)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                Complex64::new(re, im)
            })
            .collect();
        if normalize(&mut v) > 1e-8 {
            return v;
        }
    }
}

/// Starting vectors: top right singular vector, the numerical-radius
/// vector, rotated-real-part eigenvectors, then seeded random vectors.
fn starts(y: &ComplexMatrix, cfg: &SolverConfig, extra: &[Vec<Complex64>]) -> Result<(Vec<Vec<Complex64>>, f64)> {
    let n = y.dim();
    let (sigma, top) = top_singular(y)?;
    let sweep = radius_sweep(y, SEED_ANGLES, SEED_REFINE_WIDTH)?;
    let mut out = Vec::with_capacity(2 + ROTATION_SEEDS + cfg.random_starts + extra.len());
    out.push(top);
    out.push(sweep.vector);
    let stride = SEED_ANGLES / ROTATION_SEEDS;
    out.extend(sweep.grid_vectors.into_iter().step_by(stride));
    out.extend(extra.iter().cloned());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    for _ in 0..cfg.random_starts {
        out.push(random_unit(&mut rng, n));
    }
    Ok((out, sigma))
}

pub(crate) fn multistart(
    y: &ComplexMatrix,
    lambda: f64,
    cfg: &SolverConfig,
    extra: &[Vec<Complex64>],
) -> Result<MultistartOutcome> {
    check_lambda(lambda)?;
    let n = y.dim();
    if y.is_zero() {
        return Ok(MultistartOutcome {
            best: LocalMax {
                value: 0.0,
                vector: unit_basis(n, 0),
                iterations: 0,
                converged: true,
            },
            starts_used: 1,
            attaining: vec![unit_basis(n, 0)],
        });
    }
    if lambda == 1.0 {
        // exact: top eigenspace of y* y
        let eig = herm_eig(&(&y.adjoint() * y).hermitian_part())?;
        let top = eig.max().max(0.0);
        let attaining: Vec<Vec<Complex64>> = (0..n)
            .rev()
            .filter(|&k| top - eig.eigenvalues[k] <= ATTAINING_GAP * (1.0 + top))
            .map(|k| eig.eigenvectors.column(k))
            .collect();
        return Ok(MultistartOutcome {
            best: LocalMax {
                value: top,
                vector: eig.top_vector(),
                iterations: 0,
                converged: true,
            },
            starts_used: 1,
            attaining,
        });
    }
    // ascend on y / |y| so step sizes and stopping tolerances do not depend on scale
    let (sigma, _) = top_singular(y)?;
    // subnormal entries can underflow the Gram matrix
    let sigma = if sigma > 0.0 { sigma } else { 1.0 };
    let unit = y.scale_real(1.0 / sigma);
    let (starts, unit_sigma) = starts(&unit, cfg, extra)?;
    let objective = SphereObjective::new(&unit, lambda);
    let eta0 = 1.0 / (2.0 * unit_sigma * unit_sigma + 1.0);
    let results: Vec<LocalMax> = starts
        .par_iter()
        .map(|s| {
            let mut r = objective.ascend(s, eta0, cfg.max_iter);
            r.value *= sigma * sigma;
            r
        })
        .collect();
    // first index wins ties
    let mut best = 0;
    for (k, r) in results.iter().enumerate() {
        if r.value > results[best].value {
            best = k;
        }
    }
    let top = results[best].value;
    let mut attaining: Vec<Vec<Complex64>> = vec![results[best].vector.clone()];
    for (k, r) in results.iter().enumerate() {
        if k != best && top - r.value <= ATTAINING_GAP * (1.0 + top) {
            attaining.push(r.vector.clone());
        }
    }
    Ok(MultistartOutcome {
        best: results[best].clone(),
        starts_used: results.len(),
        attaining,
    })
}

/// `|x|_{a,lambda}`: square root of the best local maximum of the sphere
/// objective over all starts.
pub fn al_norm(w: &Weight, lambda: f64, x: &ComplexMatrix, cfg: &SolverConfig) -> Result<NormResult> {
    check_lambda(lambda)?;
    let y = w.reduce(x)?;
    let out = multistart(&y, lambda, cfg, &[])?;
    Ok(NormResult {
        value: out.best.value.max(0.0).sqrt(),
        witness: w.state_from_unit_vector(&out.best.vector)?,
        lambda,
        iterations: out.best.iterations,
        starts_used: out.starts_used,
        converged: out.best.converged,
    })
}

/// `|x + coeff y|_{a,lambda}`.
pub fn al_norm_of_sum(
    w: &Weight,
    lambda: f64,
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    coeff: Complex64,
    cfg: &SolverConfig,
) -> Result<NormResult> {
    x.check_same_dim(y)?;
    let sum = x + &y.scale(coeff);
    al_norm(w, lambda, &sum, cfg)
}

/// `|x|_{a,lambda}` with extra starting vectors and all attaining maximizers.
pub(crate) fn al_norm_detailed(
    w: &Weight,
    lambda: f64,
    x: &ComplexMatrix,
    cfg: &SolverConfig,
    extra: &[Vec<Complex64>],
) -> Result<(NormResult, Vec<Vec<Complex64>>)> {
    check_lambda(lambda)?;
    let y = w.reduce(x)?;
    let out = multistart(&y, lambda, cfg, extra)?;
    let result = NormResult {
        value: out.best.value.max(0.0).sqrt(),
        witness: w.state_from_unit_vector(&out.best.vector)?,
        lambda,
        iterations: out.best.iterations,
        starts_used: out.starts_used,
        converged: out.best.converged,
    };
    Ok((result, out.attaining))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::DEFAULT_EPS_PD;
    use approx::assert_abs_diff_eq;

    fn diag21() -> Weight {
        Weight::validate(&ComplexMatrix::from_real_diag(&[2.0, 1.0]), DEFAULT_EPS_PD).unwrap()
    }

    fn nilpotent() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])
    }

    fn a_selfadjoint() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 0.5], &[1.0, 0.0]])
    }

    fn objective_at_witness(w: &Weight, r: &NormResult, x: &ComplexMatrix) -> f64 {
        r.witness.objective(w, r.lambda, x)
    }

    #[test]
    fn a_norm_examples() {
        let w = diag21();
        let r = a_norm(&w, &nilpotent()).unwrap();
        assert_abs_diff_eq!(r.value * r.value, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(objective_at_witness(&w, &r, &nilpotent()), 2.0, epsilon = 1e-13);
        let r = a_norm(&Weight::identity(2), &ComplexMatrix::identity(2)).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-15);
        let r = a_norm(&w, &a_selfadjoint()).unwrap();
        assert_abs_diff_eq!(r.value, 0.5f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn numradius_examples() {
        let w = diag21();
        let r = a_numradius(&w, &nilpotent(), DEFAULT_NUMRADIUS_ANGLES).unwrap();
        assert_abs_diff_eq!(r.value, 0.5f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(objective_at_witness(&w, &r, &nilpotent()), 0.5, epsilon = 1e-11);

        let h = ComplexMatrix::from_complex_rows(&[
            &[Complex64::new(-3.0, 0.0), Complex64::new(1.0, 1.0)],
            &[Complex64::new(1.0, -1.0), Complex64::new(1.0, 0.0)],
        ]);
        let eig = herm_eig(&h).unwrap();
        let expected = eig.min().abs().max(eig.max().abs());
        let r = a_numradius(&Weight::identity(2), &h, DEFAULT_NUMRADIUS_ANGLES).unwrap();
        assert_abs_diff_eq!(r.value, expected, epsilon = 1e-12);

        let r = a_numradius(&w, &a_selfadjoint(), DEFAULT_NUMRADIUS_ANGLES).unwrap();
        let n = a_norm(&w, &a_selfadjoint()).unwrap();
        assert_abs_diff_eq!(r.value, n.value, epsilon = 1e-12);
    }

    #[test]
    fn range_examples() {
        let w = diag21();
        let b = a_numrange_boundary(&w, &nilpotent(), 64).unwrap();
        for p in &b.points {
            assert_abs_diff_eq!(p.norm(), 0.5f64.sqrt(), epsilon = 1e-12);
        }
        let b = a_numrange_boundary(&Weight::identity(2), &ComplexMatrix::from_real_diag(&[1.0, 0.0]), 16).unwrap();
        for (p, t) in b.points.iter().zip(&b.angles) {
            assert_abs_diff_eq!(p.im, 0.0, epsilon = 1e-14);
            assert!(p.re > -1e-14 && p.re < 1.0 + 1e-14);
            if t.cos() > 1e-9 {
                assert_abs_diff_eq!(p.re, 1.0, epsilon = 1e-14);
            } else if t.cos() < -1e-9 {
                assert_abs_diff_eq!(p.re, 0.0, epsilon = 1e-14);
            }
        }
        let b = a_numrange_boundary(&Weight::identity(3), &ComplexMatrix::identity(3), 8).unwrap();
        assert!(b.points.iter().all(|p| (p - Complex64::new(1.0, 0.0)).norm() < 1e-14));
        assert!(matches!(
            a_numrange_boundary(&w, &nilpotent(), 4),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn al_norm_example_values() {
        // sup over h22 in [0,1] of 2 lambda h22 + 2 (1 - lambda) h22 (1 - h22)
        let w = diag21();
        let cfg = SolverConfig::default();
        let cases = [(0.0, 0.5), (0.25, 2.0 / 3.0), (1.0, 2.0)];
        for (lambda, sq) in cases {
            let r = al_norm(&w, lambda, &nilpotent(), &cfg).unwrap();
            assert_abs_diff_eq!(r.value * r.value, sq, epsilon = 1e-9);
            assert_abs_diff_eq!(objective_at_witness(&w, &r, &nilpotent()), sq, epsilon = 1e-9);
            assert_abs_diff_eq!(r.witness.trace_ha, 1.0, epsilon = 1e-12);
        }
        for lambda in [0.0, 0.3, 0.8, 1.0] {
            let r = al_norm(&w, lambda, &a_selfadjoint(), &cfg).unwrap();
            assert_abs_diff_eq!(r.value, 0.5f64.sqrt(), epsilon = 1e-9);
        }
    }

    #[test]
    fn al_norm_rejects_bad_lambda() {
        let w = diag21();
        let cfg = SolverConfig::default();
        assert!(matches!(
            al_norm(&w, 1.5, &nilpotent(), &cfg),
            Err(Error::LambdaOutOfRange(_))
        ));
        assert!(matches!(
            al_norm(&w, -0.1, &nilpotent(), &cfg),
            Err(Error::LambdaOutOfRange(_))
        ));
    }

    #[test]
    fn al_norm_of_sum_examples() {
        let w = diag21();
        let cfg = SolverConfig::default();
        let x = a_selfadjoint();
        let i2 = ComplexMatrix::identity(2);
        let r = al_norm_of_sum(&w, 1.0, &x, &i2, Complex64::new(1.0, 0.0), &cfg).unwrap();
        assert_abs_diff_eq!(r.value, 1.0 + 0.5f64.sqrt(), epsilon = 1e-12);
        let r0 = al_norm_of_sum(&w, 0.4, &x, &i2, ZERO, &cfg).unwrap();
        let rx = al_norm(&w, 0.4, &x, &cfg).unwrap();
        assert_abs_diff_eq!(r0.value, rx.value, epsilon = 1e-15);
        let z = ComplexMatrix::zeros(2);
        let ry = al_norm_of_sum(&w, 0.4, &z, &x, Complex64::new(1.0, 0.0), &cfg).unwrap();
        assert_abs_diff_eq!(ry.value, rx.value, epsilon = 1e-15);
    }

    #[test]
    fn tiny_scale_is_homogeneous() {
        let w = diag21();
        let x = nilpotent();
        for lambda in [0.0, 0.3, 0.5] {
            let base = al_norm(&w, lambda, &x, &SolverConfig::default()).unwrap().value;
            let tiny = al_norm(&w, lambda, &x.scale_real(1e-6), &SolverConfig::default()).unwrap().value;
            assert!((tiny / 1e-6 - base).abs() < 1e-10, "lambda {lambda}: {} vs {base}", tiny / 1e-6);
        }
    }

    #[test]
    fn zero_matrix_has_zero_norm() {
        let w = diag21();
        let r = al_norm(&w, 0.5, &ComplexMatrix::zeros(2), &SolverConfig::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_abs_diff_eq!(r.witness.trace_ha, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, fx) = golden_max(|t| Ok(-(t - 0.3) * (t - 0.3)), -1.0, 1.0, 1e-10).unwrap();
        assert_abs_diff_eq!(x, 0.3, epsilon = 1e-9);
        assert!(fx <= 0.0);
    }
}
