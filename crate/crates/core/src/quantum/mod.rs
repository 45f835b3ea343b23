//! Qubit realizations `p(ab|xy) = Tr ρ M_x^a ⊗ M_y^b` with projective
//! dichotomic measurements, Bell operators and the sign-functional witness.
//!
//! Outcome label `a ∈ {0, 1}` of an observable `n·σ` is the eigenvalue
//! `(-1)^a`, so `M^a = (1 + (-1)^a n·σ) / 2`. This matches
//! [`crate::scenario::outcome_value`] and the Fourier phase `(-1)^{a+b}`.

pub mod jacobi;
pub mod matrix;
pub mod seesaw;

use num_complex::Complex;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::fourier::{fourier_phase, SignFunctional, OUTCOMES};
use crate::scalar::Real;
use crate::scenario::{outcome_value, Behavior, Scenario};

pub use jacobi::{hermitian_eigen, Eigen};
pub use matrix::{paulis, ComplexMatrix};
pub use seesaw::{
    maximize_bell_expression, maximize_chsh, maximize_chsh_product, maximize_sign_functional, seesaw, start_grid,
    BlochPlane, SeesawOptions, SeesawResult, StateFamily,
};

/// A dichotomic qubit observable `n·σ` with unit Bloch vector `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitObservable<T> {
    bloch: [T; 3],
}

fn norm3<T: Real>(v: &[T; 3]) -> T {
    Float::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
}

impl<T: Real> QubitObservable<T> {
    /// Rejects vectors whose norm differs from one by more than the strict
    /// tolerance.
    pub fn new(bloch: [T; 3]) -> Result<Self> {
        if bloch.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidObservable("non-finite Bloch vector".into()));
        }
        let n = norm3(&bloch);
        if Float::abs(n - T::one()) > T::strict_tol() {
            return Err(Error::InvalidObservable(format!("Bloch vector norm {n} is not 1")));
        }
        Ok(QubitObservable { bloch })
    }

    /// Normalizes `v`; `None` for the zero vector.
    pub fn from_direction(v: [T; 3]) -> Option<Self> {
        let n = norm3(&v);
        if n.is_nan() || n <= T::min_positive_value() || !n.is_finite() {
            return None;
        }
        Some(QubitObservable {
            bloch: v.map(|x| x / n),
        })
    }

    /// `cos θ σ_z + sin θ σ_x`.
    pub fn from_angle_xz(theta: T) -> Self {
        let (s, c) = Float::sin_cos(theta);
        QubitObservable {
            bloch: [s, T::zero(), c],
        }
    }

    pub fn sigma_x() -> Self {
        QubitObservable {
            bloch: [T::one(), T::zero(), T::zero()],
        }
    }

    pub fn sigma_y() -> Self {
        QubitObservable {
            bloch: [T::zero(), T::one(), T::zero()],
        }
    }

    pub fn sigma_z() -> Self {
        QubitObservable {
            bloch: [T::zero(), T::zero(), T::one()],
        }
    }

    pub fn bloch(&self) -> [T; 3] {
        self.bloch
    }

    pub fn operator(&self) -> ComplexMatrix<T> {
        let p = paulis::<T>();
        let mut m = ComplexMatrix::zeros(2);
        for (k, s) in p.iter().enumerate() {
            m = &m + &s.scale(self.bloch[k]);
        }
        m
    }

    /// `M^label = (1 + (-1)^label n·σ) / 2`.
    pub fn projector(&self, label: usize) -> ComplexMatrix<T> {
        let half = T::from_ratio(1, 2);
        let sign = T::from_int(outcome_value(label));
        (&ComplexMatrix::identity(2) + &self.operator().scale(sign)).scale(half)
    }
}

/// Two observables per party.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings<T> {
    pub alice: [QubitObservable<T>; 2],
    pub bob: [QubitObservable<T>; 2],
}

impl<T: Real> Settings<T> {
    /// Angles `(θ_A0, θ_A1, θ_B0, θ_B1)` in the x–z plane.
    pub fn from_angles_xz(angles: [T; 4]) -> Self {
        Settings {
            alice: [0, 1].map(|x| QubitObservable::from_angle_xz(angles[x])),
            bob: [2, 3].map(|y| QubitObservable::from_angle_xz(angles[y])),
        }
    }

    /// `A0 = σ_z, A1 = σ_x, B_y = (σ_z ± σ_x)/√2`.
    pub fn tsirelson() -> Self {
        let q = T::FRAC_PI_4();
        Self::from_angles_xz([T::zero(), T::FRAC_PI_2(), q, -q])
    }
}

/// A two-qubit density operator together with measurement settings.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumModel<T> {
    state: ComplexMatrix<T>,
    settings: Settings<T>,
}

/// Checks that `rho` is a 4×4 Hermitian, unit-trace, positive semidefinite
/// matrix. Hermiticity uses the strict tolerance, trace and spectrum the
/// default one.
pub fn validate_state<T: Real>(rho: &ComplexMatrix<T>) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::InvalidState(format!(
            "expected a 4x4 matrix, got {0}x{0}",
            rho.dim()
        )));
    }
    if rho.data().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidState("non-finite entry".into()));
    }
    let herm = rho.hermiticity_error();
    if herm > T::strict_tol() {
        return Err(Error::InvalidState(format!("not Hermitian (max |ρ - ρ†| = {herm})")));
    }
    let tr = rho.trace().re;
    if Float::abs(tr - T::one()) > T::default_tol() {
        return Err(Error::InvalidState(format!("trace {tr} is not 1")));
    }
    let min = hermitian_eigen(rho).min_value();
    if min < -T::default_tol() {
        return Err(Error::InvalidState(format!(
            "not positive semidefinite (eigenvalue {min})"
        )));
    }
    Ok(())
}

impl<T: Real> QuantumModel<T> {
    pub fn new(state: ComplexMatrix<T>, settings: Settings<T>) -> Result<Self> {
        validate_state(&state)?;
        Ok(QuantumModel { state, settings })
    }

    /// `|ψ⟩⟨ψ|` after normalizing `psi` (length 4).
    pub fn pure(psi: &[Complex<T>], settings: Settings<T>) -> Result<Self> {
        if psi.len() != 4 {
            return Err(Error::InvalidState(format!("state vector has length {}", psi.len())));
        }
        let n = Float::sqrt(psi.iter().fold(T::zero(), |s, z| s + z.norm_sqr()));
        if n.is_nan() || n <= T::zero() {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let v: Vec<Complex<T>> = psi.iter().map(|z| z.unscale(n)).collect();
        Self::new(ComplexMatrix::outer(&v), settings)
    }

    pub fn state(&self) -> &ComplexMatrix<T> {
        &self.state
    }

    pub fn settings(&self) -> &Settings<T> {
        &self.settings
    }

    pub fn alice(&self) -> &[QubitObservable<T>; 2] {
        &self.settings.alice
    }

    pub fn bob(&self) -> &[QubitObservable<T>; 2] {
        &self.settings.bob
    }

    pub fn with_settings(&self, settings: Settings<T>) -> Self {
        QuantumModel {
            state: self.state.clone(),
            settings,
        }
    }
}

/// `(|01⟩ - |10⟩)/√2`.
pub fn singlet<T: Real>() -> ComplexMatrix<T> {
    let h = T::FRAC_1_SQRT_2();
    let z = Complex::zero();
    ComplexMatrix::outer(&[z, Complex::new(h, T::zero()), Complex::new(-h, T::zero()), z])
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn phi_plus<T: Real>() -> ComplexMatrix<T> {
    let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    let z = Complex::zero();
    ComplexMatrix::outer(&[h, z, z, h])
}

pub fn maximally_mixed<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::identity(4).scale(T::from_ratio(1, 4))
}

/// `Re Tr(ρ M_x^a ⊗ M_y^b)` for every event, in table index order.
pub fn behavior_from_quantum<T: Real>(qm: &QuantumModel<T>) -> Result<Behavior<T>> {
    validate_state(&qm.state)?;
    let s = Scenario::CHSH;
    let mut probs = vec![T::zero(); s.len()];
    for x in 0..2 {
        for y in 0..2 {
            for a in 0..2 {
                let ma = qm.settings.alice[x].projector(a);
                for b in 0..2 {
                    let op = ma.kron(&qm.settings.bob[y].projector(b));
                    probs[s.index(a, b, x, y)] = op.trace_product_re(&qm.state);
                }
            }
        }
    }
    Behavior::new(s, probs)
}

/// `T_ij = Tr ρ σ_i ⊗ σ_j`; `⟨a·σ ⊗ b·σ⟩ = aᵀ T b`.
pub fn correlation_tensor<T: Real>(rho: &ComplexMatrix<T>) -> [[T; 3]; 3] {
    let p = paulis::<T>();
    std::array::from_fn(|i| std::array::from_fn(|j| p[i].kron(&p[j]).trace_product_re(rho)))
}

/// Local Bloch vectors `Tr ρ σ_i ⊗ 1` and `Tr ρ 1 ⊗ σ_j`.
pub fn local_bloch_vectors<T: Real>(rho: &ComplexMatrix<T>) -> ([T; 3], [T; 3]) {
    let p = paulis::<T>();
    let id = ComplexMatrix::identity(2);
    (
        std::array::from_fn(|i| p[i].kron(&id).trace_product_re(rho)),
        std::array::from_fn(|j| id.kron(&p[j]).trace_product_re(rho)),
    )
}

/// `Σ g_xy A_x ⊗ B_y`.
pub fn correlation_operator<T: Real>(settings: &Settings<T>, g: &[[T; 2]; 2]) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::zeros(4);
    for x in 0..2 {
        let a = settings.alice[x].operator();
        for y in 0..2 {
            if g[x][y].is_zero() {
                continue;
            }
            m = &m + &a.kron(&settings.bob[y].operator()).scale(g[x][y]);
        }
    }
    m
}

/// `A0 ⊗ (B0 + B1) + A1 ⊗ (B0 - B1)`.
pub fn chsh_operator<T: Real>(settings: &Settings<T>) -> ComplexMatrix<T> {
    correlation_operator(settings, &chsh_coefficients())
}

pub(crate) fn chsh_coefficients<T: Real>() -> [[T; 2]; 2] {
    let (p, m) = (T::one(), -T::one());
    [[p, p], [p, m]]
}

/// `B^{xy} = Σ_{a,b} e^{i2π(a+b)/d} M_x^a ⊗ M_y^b` with `d = 2`.
pub fn bell_operator<T: Real>(settings: &Settings<T>, x: usize, y: usize) -> Result<ComplexMatrix<T>> {
    if x > 1 {
        return Err(Error::InvalidLabel(x));
    }
    if y > 1 {
        return Err(Error::InvalidLabel(y));
    }
    let mut m = ComplexMatrix::zeros(4);
    for a in 0..2 {
        let ma = settings.alice[x].projector(a);
        for b in 0..2 {
            let phase = T::from_int(fourier_phase(OUTCOMES, a + b)?);
            m = &m + &ma.kron(&settings.bob[y].projector(b)).scale(phase);
        }
    }
    Ok(m)
}

/// `W = 4 (1 ⊗ 1) - Σ_{xy} q^{xy} B^{xy}`.
pub fn witness<T: Real>(settings: &Settings<T>, q: &SignFunctional) -> Result<ComplexMatrix<T>> {
    let mut w = ComplexMatrix::identity(4).scale(T::from_int(4));
    for x in 0..2 {
        for y in 0..2 {
            let b = bell_operator(settings, x, y)?;
            w = &w - &b.scale(T::from_int(q.get(x, y)));
        }
    }
    Ok(w)
}

/// `Re Tr(W ρ)`.
pub fn witness_value<T: Real>(w: &ComplexMatrix<T>, rho: &ComplexMatrix<T>) -> T {
    w.trace_product_re(rho)
}

/// Reduced states `(ρ_A, ρ_B)`.
pub fn reduced_states<T: Real>(rho: &ComplexMatrix<T>) -> (ComplexMatrix<T>, ComplexMatrix<T>) {
    (rho.partial_trace_second(), rho.partial_trace_first())
}
