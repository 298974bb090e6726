//! The weight `a` and everything that depends on it: the similarity
//! `x -> a^{1/2} x a^{-1/2}` that turns weighted quantities into ordinary
//! ones, the a-adjoint, a-selfadjointness and a-positivity tests, and the
//! vector states of `S_a`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{herm_eig, inner, norm2, ComplexMatrix};

pub const DEFAULT_EPS_PD: f64 = 1e-8;
pub const DEFAULT_TOL: f64 = 1e-8;
/// Condition numbers above this are reported as a warning on the weight.
pub const COND_WARNING: f64 = 1e10;

const UNIT_TOL: f64 = 1e-10;

/// A validated positive invertible weight with cached spectral functions.
#[derive(Clone, Debug)]
pub struct Weight {
    a: ComplexMatrix,
    sqrt_a: ComplexMatrix,
    inv_sqrt_a: ComplexMatrix,
    inv_a: ComplexMatrix,
    min_eig: f64,
    max_eig: f64,
    eps_pd: f64,
    warnings: Vec<String>,
}

impl Weight {
    pub fn validate(a: &ComplexMatrix, eps_pd: f64) -> Result<Self> {
        let eig = herm_eig(a)?;
        let min_eig = eig.min();
        let max_eig = eig.max();
        if min_eig <= eps_pd {
            return Err(Error::NotPositiveDefinite {
                min_eig,
                eps: eps_pd,
            });
        }
        let mut warnings = Vec::new();
        let cond = max_eig / min_eig;
        if cond > COND_WARNING {
            warnings.push(format!("weight condition number {cond:.3e} exceeds {COND_WARNING:.0e}"));
        }
        Ok(Self {
            a: a.hermitian_part(),
            sqrt_a: eig.apply(f64::sqrt),
            inv_sqrt_a: eig.apply(|l| 1.0 / l.sqrt()),
            inv_a: eig.apply(|l| 1.0 / l),
            min_eig,
            max_eig,
            eps_pd,
            warnings,
        })
    }

    /// The trivial weight `1_A`.
    pub fn identity(n: usize) -> Self {
        let i = ComplexMatrix::identity(n);
        Self {
            a: i.clone(),
            sqrt_a: i.clone(),
            inv_sqrt_a: i.clone(),
            inv_a: i,
            min_eig: 1.0,
            max_eig: 1.0,
            eps_pd: DEFAULT_EPS_PD,
            warnings: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn sqrt_a(&self) -> &ComplexMatrix {
        &self.sqrt_a
    }

    pub fn inv_sqrt_a(&self) -> &ComplexMatrix {
        &self.inv_sqrt_a
    }

    pub fn inv_a(&self) -> &ComplexMatrix {
        &self.inv_a
    }

    pub fn min_eig(&self) -> f64 {
        self.min_eig
    }

    pub fn max_eig(&self) -> f64 {
        self.max_eig
    }

    pub fn eps_pd(&self) -> f64 {
        self.eps_pd
    }

    pub fn condition(&self) -> f64 {
        self.max_eig / self.min_eig
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn check_dim(&self, x: &ComplexMatrix) -> Result<()> {
        self.a.check_same_dim(x)
    }

    /// `a^{1/2} x a^{-1/2}`. Weighted seminorms of `x` equal the ordinary
    /// ones of this matrix.
    pub fn reduce(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_dim(x)?;
        Ok(&(&self.sqrt_a * x) * &self.inv_sqrt_a)
    }

    /// Inverse of [`Weight::reduce`].
    pub fn unreduce(&self, y: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_dim(y)?;
        Ok(&(&self.inv_sqrt_a * y) * &self.sqrt_a)
    }

    /// The a-adjoint `a^{-1} x* a`, the unique solution of `a s = x* a`.
    pub fn a_adjoint(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_dim(x)?;
        Ok(&(&self.inv_a * &x.adjoint()) * &self.a)
    }

    /// `a x` is Hermitian, relative to `1 + |a x|_F`.
    pub fn is_a_selfadjoint(&self, x: &ComplexMatrix, tol: f64) -> Result<bool> {
        self.check_dim(x)?;
        let ax = &self.a * x;
        Ok(ax.hermitian_defect() <= tol * (1.0 + ax.frobenius_norm()))
    }

    /// `a x` is positive semidefinite up to `tol`.
    pub fn is_a_positive(&self, x: &ComplexMatrix, tol: f64) -> Result<bool> {
        self.check_dim(x)?;
        let ax = &self.a * x;
        if ax.hermitian_defect() > tol * (1.0 + ax.frobenius_norm()) {
            return Ok(false);
        }
        let eig = herm_eig(&ax.hermitian_part())?;
        Ok(eig.min() >= -tol)
    }

    /// The state `z -> (a^{-1/2} u)* z (a^{-1/2} u)` of `S_a` built from a unit vector.
    pub fn state_from_unit_vector(&self, u: &[Complex64]) -> Result<StateWitness> {
        if u.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.len(),
            });
        }
        let norm = norm2(u);
        if (norm - 1.0).abs() > UNIT_TOL || !norm.is_finite() {
            return Err(Error::NotUnitVector { norm });
        }
        let a_vector = self.inv_sqrt_a.matvec(u);
        let h = ComplexMatrix::outer(&a_vector, &a_vector);
        let trace_ha = (&h * &self.a).trace().re;
        Ok(StateWitness {
            h,
            u: u.to_vec(),
            a_vector,
            trace_ha,
        })
    }
}

/// A rank-one state `phi_h(z) = Tr(h z)` with `h >= 0` and `Tr(h a) = 1`.
#[derive(Clone, Debug)]
pub struct StateWitness {
    pub h: ComplexMatrix,
    /// Unit vector on the standard sphere the state was built from.
    pub u: Vec<Complex64>,
    /// `a^{-1/2} u`, the a-unit vector with `h = a_vector a_vector*`.
    pub a_vector: Vec<Complex64>,
    pub trace_ha: f64,
}

impl StateWitness {
    /// `Tr(h z)`.
    pub fn evaluate(&self, z: &ComplexMatrix) -> Complex64 {
        (&self.h * z).trace()
    }

    /// `phi(z)` through the vector form, `v* z v`.
    pub fn evaluate_vector(&self, z: &ComplexMatrix) -> Complex64 {
        z.quadratic_form(&self.a_vector)
    }

    /// `lambda phi(x* a x) + (1 - lambda) |phi(a x)|^2`.
    pub fn objective(&self, w: &Weight, lambda: f64, x: &ComplexMatrix) -> f64 {
        let v = &self.a_vector;
        let xv = x.matvec(v);
        let axv = w.a().matvec(&xv);
        let quad = inner(&xv, &axv).re;
        let lin = inner(v, &axv);
        lambda * quad + (1.0 - lambda) * lin.norm_sqr()
    }

    /// `lambda phi(x* a y) + (1 - lambda) conj(phi(a x)) phi(a y)`.
    pub fn pairing(&self, w: &Weight, lambda: f64, x: &ComplexMatrix, y: &ComplexMatrix) -> Complex64 {
        let v = &self.a_vector;
        let xv = x.matvec(v);
        let yv = y.matvec(v);
        let axv = w.a().matvec(&xv);
        let ayv = w.a().matvec(&yv);
        let cross = inner(&xv, &ayv);
        let phi_ax = inner(v, &axv);
        let phi_ay = inner(v, &ayv);
        cross * lambda + phi_ax.conj() * phi_ay * (1.0 - lambda)
    }
}

/// Validates `a` as a weight: Hermitian, with smallest eigenvalue above `eps_pd`.
pub fn validate_weight(a: &ComplexMatrix, eps_pd: f64) -> Result<Weight> {
    Weight::validate(a, eps_pd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{unit_basis, ONE, ZERO};
    use approx::assert_abs_diff_eq;

    fn diag21() -> Weight {
        validate_weight(&ComplexMatrix::from_real_diag(&[2.0, 1.0]), DEFAULT_EPS_PD).unwrap()
    }

    fn nilpotent() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])
    }

    fn a_selfadjoint() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 0.5], &[1.0, 0.0]])
    }

    fn dist(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        (a - b).frobenius_norm()
    }

    #[test]
    fn validate_examples() {
        let w = diag21();
        assert_abs_diff_eq!(w.min_eig(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w.max_eig(), 2.0, epsilon = 1e-15);
        assert!(dist(&(w.sqrt_a() * w.sqrt_a()), w.a()) < 1e-14);
        assert!(dist(&(w.inv_sqrt_a() * w.sqrt_a()), &ComplexMatrix::identity(2)) < 1e-14);
        assert!(dist(&(w.inv_a() * w.a()), &ComplexMatrix::identity(2)) < 1e-14);

        let wi = validate_weight(&ComplexMatrix::identity(3), DEFAULT_EPS_PD).unwrap();
        assert!(dist(wi.sqrt_a(), &ComplexMatrix::identity(3)) < 1e-15);
        assert!(dist(wi.inv_a(), &ComplexMatrix::identity(3)) < 1e-15);

        let bad = ComplexMatrix::from_real_diag(&[1.0, 1e-12]);
        assert!(matches!(
            validate_weight(&bad, DEFAULT_EPS_PD),
            Err(Error::NotPositiveDefinite { .. })
        ));
        let nonherm = nilpotent();
        assert!(matches!(
            validate_weight(&nonherm, DEFAULT_EPS_PD),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn ill_conditioned_weight_warns() {
        let w = validate_weight(&ComplexMatrix::from_real_diag(&[1.0, 1e-11]), 1e-12).unwrap();
        assert_eq!(w.warnings().len(), 1);
        assert!(diag21().warnings().is_empty());
    }

    #[test]
    fn reduce_examples() {
        let w = diag21();
        let s = 2f64.sqrt();
        let y = w.reduce(&nilpotent()).unwrap();
        assert!(dist(&y, &ComplexMatrix::from_real_rows(&[&[0.0, s], &[0.0, 0.0]])) < 1e-15);

        let y = w.reduce(&a_selfadjoint()).unwrap();
        let r = 1.0 / s;
        assert!(dist(&y, &ComplexMatrix::from_real_rows(&[&[0.0, r], &[r, 0.0]])) < 1e-15);

        let x = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert!(dist(&Weight::identity(2).reduce(&x).unwrap(), &x) < 1e-15);
        assert!(matches!(
            w.reduce(&ComplexMatrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn adjoint_examples() {
        let w = diag21();
        let s = w.a_adjoint(&nilpotent()).unwrap();
        assert!(dist(&s, &ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[2.0, 0.0]])) < 1e-15);
        assert!(dist(&w.a_adjoint(&a_selfadjoint()).unwrap(), &a_selfadjoint()) < 1e-15);
        let x = ComplexMatrix::from_complex_rows(&[
            &[Complex64::new(1.0, 1.0), Complex64::new(0.0, 2.0)],
            &[Complex64::new(3.0, 0.0), Complex64::new(0.0, -1.0)],
        ]);
        assert!(dist(&Weight::identity(2).a_adjoint(&x).unwrap(), &x.adjoint()) < 1e-15);
    }

    #[test]
    fn selfadjoint_and_positive_predicates() {
        let w = diag21();
        assert!(w.is_a_selfadjoint(&a_selfadjoint(), DEFAULT_TOL).unwrap());
        assert!(!Weight::identity(2).is_a_selfadjoint(&nilpotent(), DEFAULT_TOL).unwrap());
        assert!(w.is_a_selfadjoint(&ComplexMatrix::zeros(2), DEFAULT_TOL).unwrap());

        assert!(w.is_a_positive(&w.inv_a().clone(), DEFAULT_TOL).unwrap());
        assert!(!w.is_a_positive(&a_selfadjoint(), DEFAULT_TOL).unwrap());
        assert!(w.is_a_positive(&ComplexMatrix::zeros(2), DEFAULT_TOL).unwrap());
        assert!(!w.is_a_positive(&nilpotent(), DEFAULT_TOL).unwrap());
    }

    #[test]
    fn vector_states() {
        let wi = Weight::identity(2);
        let st = wi.state_from_unit_vector(&unit_basis(2, 0)).unwrap();
        assert!(dist(&st.h, &ComplexMatrix::from_real_diag(&[1.0, 0.0])) < 1e-15);
        let z = ComplexMatrix::from_real_rows(&[&[5.0, 1.0], &[2.0, 7.0]]);
        assert_abs_diff_eq!(st.evaluate(&z).re, 5.0, epsilon = 1e-15);

        let w = diag21();
        let st = w.state_from_unit_vector(&unit_basis(2, 0)).unwrap();
        assert!(dist(&st.h, &ComplexMatrix::from_real_diag(&[0.5, 0.0])) < 1e-15);
        assert_abs_diff_eq!(st.trace_ha, 1.0, epsilon = 1e-15);
        let st = w.state_from_unit_vector(&unit_basis(2, 1)).unwrap();
        assert!(dist(&st.h, &ComplexMatrix::from_real_diag(&[0.0, 1.0])) < 1e-15);
        assert_abs_diff_eq!(st.trace_ha, 1.0, epsilon = 1e-15);

        assert!(matches!(
            w.state_from_unit_vector(&[ONE, ONE]),
            Err(Error::NotUnitVector { .. })
        ));
        assert!(matches!(
            w.state_from_unit_vector(&[ONE, ZERO, ZERO]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn objective_at_example_states() {
        // a = diag(2,1), x = e_1 e_2^T: phi(x* a x) = 2 h_22.
        let w = diag21();
        let st = w.state_from_unit_vector(&unit_basis(2, 1)).unwrap();
        assert_abs_diff_eq!(st.objective(&w, 1.0, &nilpotent()), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(st.objective(&w, 0.0, &nilpotent()), 0.0, epsilon = 1e-15);
        let p = st.pairing(&w, 0.3, &nilpotent(), &nilpotent());
        assert_abs_diff_eq!(p.re, st.objective(&w, 0.3, &nilpotent()), epsilon = 1e-15);
    }
}
