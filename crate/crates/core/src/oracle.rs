//! Brute-force reference computations for small dimensions.
//!
//! These are deliberately naive and share no search strategy with the main
//! solvers: [`sphere_sample_max`] evaluates the defining supremum directly at
//! vector states `z -> v* z v / v* a v` of the *unreduced* problem, and the
//! grid oracles scan polar / angular grids where the geometry module uses
//! simplex descent and golden-section search.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{inner, ComplexMatrix, ZERO};
use crate::seminorm::{al_norm, check_lambda, SolverConfig};
use crate::weight::Weight;

pub const MAX_ORACLE_DIM: usize = 4;
const MIN_SAMPLES: usize = 1000;
const CHUNK: usize = 4096;
/// Random starts of the norm evaluations inside the grid oracles.
const GRID_RANDOM_STARTS: usize = 8;
/// Samples polished after the sampling pass.
const POLISH_CANDIDATES: usize = 4;
const XI_ANGLES: usize = 128;
const XI_RUNGS: usize = 16;
const XI_RATIO: f64 = 0.6;
const MU_ANGLES: usize = 720;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleConfig {
    pub n_samples: usize,
    pub rng_seed: u64,
    pub polish_steps: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            n_samples: 200_000,
            rng_seed: 42,
            polish_steps: 200,
        }
    }
}

impl OracleConfig {
    fn check(&self) -> Result<()> {
        if self.n_samples < MIN_SAMPLES {
            return Err(Error::InvalidArgument(format!(
                "oracle needs at least {MIN_SAMPLES} samples, got {}",
                self.n_samples
            )));
        }
        Ok(())
    }

    /// Solver used for norm evaluations inside the grid oracles.
    fn norm_solver(&self) -> SolverConfig {
        SolverConfig {
            rng_seed: self.rng_seed,
            random_starts: GRID_RANDOM_STARTS,
            ..SolverConfig::default()
        }
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n > MAX_ORACLE_DIM {
        Err(Error::DimensionTooLarge { n, max: MAX_ORACLE_DIM })
    } else {
        Ok(())
    }
}

/// The objective on unnormalized vectors:
/// `lambda (v* P v)/(v* a v) + (1 - lambda) |v* Q v|^2 / (v* a v)^2`
/// with `P = x* a x` and `Q = a x`.
struct StateObjective {
    a: ComplexMatrix,
    p: ComplexMatrix,
    q: ComplexMatrix,
    q_adj: ComplexMatrix,
    lambda: f64,
}

impl StateObjective {
    fn new(w: &Weight, lambda: f64, x: &ComplexMatrix) -> Self {
        let a = w.a().clone();
        let q = &a * x;
        let p = &x.adjoint() * &q;
        Self {
            q_adj: q.adjoint(),
            a,
            p,
            q,
            lambda,
        }
    }

    fn value(&self, v: &[Complex64]) -> f64 {
        let d = self.a.quadratic_form(v).re;
        let p = self.p.quadratic_form(v).re;
        let q = self.q.quadratic_form(v);
        self.lambda * p / d + (1.0 - self.lambda) * q.norm_sqr() / (d * d)
    }

    /// Rescales `v` so that `v* a v = 1`.
    fn to_state(&self, v: &mut [Complex64]) {
        let d = self.a.quadratic_form(v).re;
        let s = 1.0 / d.sqrt();
        v.iter_mut().for_each(|z| *z *= s);
    }

    /// Gradient with respect to `conj(v)` at a vector with `v* a v = 1`.
    fn gradient(&self, v: &[Complex64]) -> Vec<Complex64> {
        let av = self.a.matvec(v);
        let pv = self.p.matvec(v);
        let qv = self.q.matvec(v);
        let qhv = self.q_adj.matvec(v);
        let r = inner(v, &pv).re;
        let q = inner(v, &qv);
        let l = self.lambda;
        (0..v.len())
            .map(|i| (pv[i] - av[i] * r) * l + (q.conj() * qv[i] + q * qhv[i] - av[i] * (2.0 * q.norm_sqr())) * (1.0 - l))
            .collect()
    }

    fn polish(&self, start: &[Complex64], steps: usize) -> f64 {
        let mut v = start.to_vec();
        self.to_state(&mut v);
        let mut f = self.value(&v);
        let scale = 1.0 + self.p.frobenius_norm() + self.q.frobenius_norm().powi(2);
        let mut eta = 0.1 / scale;
        for _ in 0..steps {
            let g = self.gradient(&v);
            let mut improved = false;
            while eta > 1e-18 / scale {
                let mut cand: Vec<Complex64> = v.iter().zip(&g).map(|(a, b)| a + b * eta).collect();
                self.to_state(&mut cand);
                let fc = self.value(&cand);
                if fc > f {
                    v = cand;
                    let gain = fc - f;
                    f = fc;
                    eta *= 2.0;
                    improved = gain > 1e-16 * (1.0 + f);
                    break;
                }
                eta *= 0.5;
            }
            if !improved {
                break;
            }
        }
        f
    }
}

fn gaussian_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect()
}

/// `|x|_{a,lambda}` by uniform sampling of vector states followed by local
/// polish of the best few samples.
pub fn sphere_sample_max(w: &Weight, lambda: f64, x: &ComplexMatrix, cfg: &OracleConfig) -> Result<f64> {
    check_lambda(lambda)?;
    cfg.check()?;
    w.check_dim(x)?;
    let n = x.dim();
    check_dim(n)?;
    if x.is_zero() {
        return Ok(0.0);
    }
    let objective = StateObjective::new(w, lambda, x);
    let n_chunks = cfg.n_samples.div_ceil(CHUNK);
    let per_chunk: Vec<Vec<(f64, Vec<Complex64>)>> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
            rng.set_stream(c as u64);
            let count = CHUNK.min(cfg.n_samples - c * CHUNK);
            let mut top: Vec<(f64, Vec<Complex64>)> = Vec::with_capacity(POLISH_CANDIDATES + 1);
            for _ in 0..count {
                let v = gaussian_vector(&mut rng, n);
                let f = objective.value(&v);
                if top.len() < POLISH_CANDIDATES || f > top[top.len() - 1].0 {
                    top.push((f, v));
                    top.sort_by(|a, b| b.0.total_cmp(&a.0));
                    top.truncate(POLISH_CANDIDATES);
                }
            }
            top
        })
        .collect();
    let mut candidates: Vec<(f64, Vec<Complex64>)> = per_chunk.into_iter().flatten().collect();
    // stable sort keeps chunk order among ties
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0));
    candidates.truncate(POLISH_CANDIDATES);
    let best = candidates
        .iter()
        .map(|(f, v)| objective.polish(v, cfg.polish_steps).max(*f))
        .fold(0.0, f64::max);
    Ok(best.max(0.0).sqrt())
}

/// `min over xi of |x + xi y|_{a,lambda}` on a polar grid
/// `xi = r e^{i theta}`, `r` on a geometric ladder in `(0, 4 |x|/|y|]` plus
/// `r = 0`, followed by compass-search polish.
pub fn grid_min_xi(w: &Weight, lambda: f64, x: &ComplexMatrix, y: &ComplexMatrix, cfg: &OracleConfig) -> Result<(f64, Complex64)> {
    check_lambda(lambda)?;
    w.check_dim(x)?;
    w.check_dim(y)?;
    check_dim(x.dim())?;
    let solver = cfg.norm_solver();
    let norm = |m: &ComplexMatrix| -> Result<f64> { Ok(al_norm(w, lambda, m, &solver)?.value) };
    let norm_y = norm(y)?;
    if norm_y <= 1e-12 {
        return Err(Error::ZeroDirection);
    }
    let norm_x = norm(x)?;
    let g = |xi: Complex64| norm(&(x + &y.scale(xi)));

    let radius = 4.0 * norm_x.max(1e-12) / norm_y;
    let mut grid: Vec<Complex64> = vec![ZERO];
    for k in 0..XI_RUNGS {
        let r = radius * XI_RATIO.powi(k as i32);
        for j in 0..XI_ANGLES {
            grid.push(Complex64::from_polar(r, j as f64 * TAU / XI_ANGLES as f64));
        }
    }
    let values: Vec<f64> = grid.par_iter().map(|&xi| g(xi)).collect::<Result<_>>()?;
    let mut best = 0;
    // ties (up to rounding) go to the smaller rung index, so xi = 0 first
    for (k, &v) in values.iter().enumerate() {
        if v < values[best] - 1e-14 * (1.0 + values[best]) {
            best = k;
        }
    }
    let (mut xi, mut val) = (grid[best], values[best]);
    let mut step = radius * (1.0 - XI_RATIO).max(TAU / XI_ANGLES as f64);
    if xi != ZERO {
        step = step.min(xi.norm());
    }
    let dirs = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)];
    while step > 1e-10 * (1.0 + xi.norm()) {
        let mut moved = false;
        for d in dirs {
            let cand = xi + d * step;
            let v = g(cand)?;
            if v < val - 1e-15 * (1.0 + val) {
                xi = cand;
                val = v;
                moved = true;
                break;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    Ok((val, xi))
}

/// `max over unimodular mu of |x + mu y|_{a,lambda}` on a fine angular grid
/// with a step-halving hill climb around the best grid angle.
pub fn grid_max_mu(w: &Weight, lambda: f64, x: &ComplexMatrix, y: &ComplexMatrix, cfg: &OracleConfig) -> Result<(f64, Complex64)> {
    check_lambda(lambda)?;
    w.check_dim(x)?;
    w.check_dim(y)?;
    check_dim(x.dim())?;
    let solver = cfg.norm_solver();
    let h = |theta: f64| -> Result<f64> {
        let m = x + &y.scale(Complex64::from_polar(1.0, theta));
        Ok(al_norm(w, lambda, &m, &solver)?.value)
    };
    let step0 = TAU / MU_ANGLES as f64;
    let values: Vec<f64> = (0..MU_ANGLES)
        .into_par_iter()
        .map(|k| h(k as f64 * step0))
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (k, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = k;
        }
    }
    let (mut theta, mut val) = (best as f64 * step0, values[best]);
    let mut step = step0 / 2.0;
    while step > 1e-11 {
        let up = h(theta + step)?;
        let down = h(theta - step)?;
        if up > val && up >= down {
            theta += step;
            val = up;
        } else if down > val {
            theta -= step;
            val = down;
        } else {
            step *= 0.5;
        }
    }
    Ok((val, Complex64::from_polar(1.0, theta.rem_euclid(TAU))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seminorm::a_norm;
    use crate::weight::DEFAULT_EPS_PD;

    fn diag21() -> Weight {
        Weight::validate(&ComplexMatrix::from_real_diag(&[2.0, 1.0]), DEFAULT_EPS_PD).unwrap()
    }

    fn small() -> OracleConfig {
        OracleConfig {
            n_samples: 20_000,
            ..OracleConfig::default()
        }
    }

    #[test]
    fn sampled_example_value() {
        // 1D reduction: max over t in [0,1] of 2 lambda t + 2 (1 - lambda) t (1 - t) = 1 / (2 (1 - lambda))
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let v = sphere_sample_max(&diag21(), 0.25, &x, &small()).unwrap();
        assert!((v - (2.0f64 / 3.0).sqrt()).abs() < 1e-7, "{v}");
    }

    #[test]
    fn sampled_lambda_one_is_a_norm() {
        let w = diag21();
        let x = ComplexMatrix::from_complex_rows(&[
            &[Complex64::new(0.3, 1.0), Complex64::new(-1.0, 0.2)],
            &[Complex64::new(0.5, 0.0), Complex64::new(0.1, -0.7)],
        ]);
        let v = sphere_sample_max(&w, 1.0, &x, &small()).unwrap();
        let exact = a_norm(&w, &x).unwrap().value;
        assert!((v - exact).abs() <= 1e-6 * exact, "{v} vs {exact}");
    }

    #[test]
    fn zero_and_limits() {
        assert_eq!(sphere_sample_max(&diag21(), 0.5, &ComplexMatrix::zeros(2), &small()).unwrap(), 0.0);
        let big = Weight::identity(5);
        assert!(matches!(
            sphere_sample_max(&big, 0.5, &ComplexMatrix::identity(5), &small()),
            Err(Error::DimensionTooLarge { .. })
        ));
        let few = OracleConfig {
            n_samples: 10,
            ..OracleConfig::default()
        };
        assert!(matches!(
            sphere_sample_max(&diag21(), 0.5, &ComplexMatrix::identity(2), &few),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn sampling_is_deterministic() {
        let x = ComplexMatrix::from_real_rows(&[&[0.2, 1.0], &[-0.4, 0.3]]);
        let a = sphere_sample_max(&diag21(), 0.4, &x, &small()).unwrap();
        let b = sphere_sample_max(&diag21(), 0.4, &x, &small()).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn xi_grid_examples() {
        let w = Weight::identity(2);
        let x = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let y = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
        let (v, xi) = grid_min_xi(&w, 0.7, &x, &y, &small()).unwrap();
        assert!((v - 1.0).abs() < 1e-9 && xi == ZERO, "{v} {xi}");

        let z = ComplexMatrix::from_real_rows(&[&[0.3, 1.0], &[-0.5, 0.2]]);
        let (v, xi) = grid_min_xi(&diag21(), 0.6, &z, &z, &small()).unwrap();
        assert!(v < 1e-8 && (xi + 1.0).norm() < 1e-8, "{v} {xi}");

        assert!(matches!(
            grid_min_xi(&w, 0.5, &x, &ComplexMatrix::zeros(2), &small()),
            Err(Error::ZeroDirection)
        ));
    }

    #[test]
    fn mu_grid_examples() {
        let w = Weight::identity(2);
        let x = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let y = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
        let (v, _) = grid_max_mu(&w, 1.0, &x, &y, &small()).unwrap();
        assert!((v - 1.0).abs() < 1e-12);

        let z = ComplexMatrix::from_real_rows(&[&[0.3, 1.0], &[-0.5, 0.2]]);
        let (v, mu) = grid_max_mu(&diag21(), 0.3, &z, &z, &small()).unwrap();
        let nz = al_norm(&diag21(), 0.3, &z, &SolverConfig::default()).unwrap().value;
        assert!((v - 2.0 * nz).abs() < 1e-9 && (mu - 1.0).norm() < 1e-6);
    }
}
