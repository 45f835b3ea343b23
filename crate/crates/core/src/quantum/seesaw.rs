//! Seesaw ascent for `Σ g_xy ⟨A_x ⊗ B_y⟩` over two-qubit models.
//!
//! Each iteration maximizes one block with the others fixed: the state (top
//! eigenvector of the correlation operator, or a product of Bloch vectors),
//! then Alice's observables, then Bob's. Every block update is an exact
//! maximization, so the objective cannot decrease; a step that loses value
//! to rounding is rejected.

use super::{
    chsh_coefficients, correlation_operator, correlation_tensor, hermitian_eigen, ComplexMatrix, QuantumModel,
    QubitObservable, Settings,
};
use crate::fourier::SignFunctional;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateFamily {
    /// Any pure two-qubit state.
    Entangled,
    /// `|α⟩ ⊗ |β⟩` only.
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlochPlane {
    /// Observables restricted to the x–z plane.
    Xz,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeesawOptions<T> {
    pub state: StateFamily,
    pub plane: BlochPlane,
    pub max_iterations: usize,
    /// Stop once an iteration improves the value by less than this.
    pub tolerance: T,
}

impl<T: Real> Default for SeesawOptions<T> {
    fn default() -> Self {
        SeesawOptions {
            state: StateFamily::Entangled,
            plane: BlochPlane::Xz,
            max_iterations: 500,
            tolerance: T::from_ratio(1, 10_000_000_000),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SeesawResult<T> {
    pub value: T,
    pub model: QuantumModel<T>,
    pub iterations: usize,
    /// Objective after the initial state step and after every iteration.
    pub history: Vec<T>,
}

/// Eight fixed starting angle tuples `(θ_A0, θ_A1, θ_B0, θ_B1)` in the x–z
/// plane. The offsets avoid the degenerate configurations where both of a
/// party's observables coincide.
pub fn start_grid<T: Real>() -> Vec<Settings<T>> {
    let offsets = [0.1, 1.3, 0.7, 2.9];
    (0..8)
        .map(|k| {
            let base = k as f64 * std::f64::consts::PI / 8.0;
            let angles =
                offsets.map(|o| num_traits::cast::<f64, T>(base + o * (1.0 + k as f64 / 16.0)).expect("finite angle"));
            Settings::from_angles_xz(angles)
        })
        .collect()
}

fn dot3<T: Real>(a: &[T; 3], b: &[T; 3]) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn mat_vec<T: Real>(t: &[[T; 3]; 3], v: &[T; 3]) -> [T; 3] {
    std::array::from_fn(|i| dot3(&t[i], v))
}

fn transpose<T: Real>(t: &[[T; 3]; 3]) -> [[T; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| t[j][i]))
}

fn in_plane<T: Real>(plane: BlochPlane, mut v: [T; 3]) -> [T; 3] {
    if plane == BlochPlane::Xz {
        v[1] = T::zero();
    }
    v
}

fn product_state<T: Real>(u: &QubitObservable<T>, v: &QubitObservable<T>) -> ComplexMatrix<T> {
    u.projector(0).kron(&v.projector(0))
}

struct Ascent<'a, T> {
    g: &'a [[T; 2]; 2],
    opts: &'a SeesawOptions<T>,
}

impl<T: Real> Ascent<'_, T> {
    fn objective(&self, rho: &ComplexMatrix<T>, s: &Settings<T>) -> T {
        correlation_operator(s, self.g).trace_product_re(rho)
    }

    fn state_step(&self, rho: &ComplexMatrix<T>, s: &Settings<T>) -> ComplexMatrix<T> {
        match self.opts.state {
            StateFamily::Entangled => {
                let eig = hermitian_eigen(&correlation_operator(s, self.g));
                ComplexMatrix::outer(&eig.vector(3))
            }
            StateFamily::Product => {
                // Alternate the two local Bloch vectors; the objective is
                // bilinear in them: Σ g_xy (a_x·u)(b_y·v).
                let (mut u, mut v) = product_bloch(rho);
                for _ in 0..2 {
                    let du = (0..2).fold([T::zero(); 3], |acc, x| {
                        let w = (0..2).fold(T::zero(), |w, y| w + self.g[x][y] * dot3(&s.bob[y].bloch(), &v.bloch()));
                        add3(acc, s.alice[x].bloch().map(|c| c * w))
                    });
                    u = QubitObservable::from_direction(du).unwrap_or(u);
                    let dv = (0..2).fold([T::zero(); 3], |acc, y| {
                        let w = (0..2).fold(T::zero(), |w, x| {
                            w + self.g[x][y] * dot3(&s.alice[x].bloch(), &u.bloch())
                        });
                        add3(acc, s.bob[y].bloch().map(|c| c * w))
                    });
                    v = QubitObservable::from_direction(dv).unwrap_or(v);
                }
                product_state(&u, &v)
            }
        }
    }

    fn alice_step(&self, rho: &ComplexMatrix<T>, s: &Settings<T>) -> Settings<T> {
        let t = correlation_tensor(rho);
        let mut next = *s;
        for x in 0..2 {
            let target = (0..2).fold([T::zero(); 3], |acc, y| {
                add3(acc, mat_vec(&t, &s.bob[y].bloch()).map(|c| c * self.g[x][y]))
            });
            if let Some(o) = QubitObservable::from_direction(in_plane(self.opts.plane, target)) {
                next.alice[x] = o;
            }
        }
        next
    }

    fn bob_step(&self, rho: &ComplexMatrix<T>, s: &Settings<T>) -> Settings<T> {
        let tt = transpose(&correlation_tensor(rho));
        let mut next = *s;
        for y in 0..2 {
            let target = (0..2).fold([T::zero(); 3], |acc, x| {
                add3(acc, mat_vec(&tt, &s.alice[x].bloch()).map(|c| c * self.g[x][y]))
            });
            if let Some(o) = QubitObservable::from_direction(in_plane(self.opts.plane, target)) {
                next.bob[y] = o;
            }
        }
        next
    }
}

fn add3<T: Real>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    std::array::from_fn(|i| a[i] + b[i])
}

/// Local Bloch vectors of a product state, falling back to `σ_z` for a
/// maximally mixed marginal.
fn product_bloch<T: Real>(rho: &ComplexMatrix<T>) -> (QubitObservable<T>, QubitObservable<T>) {
    let (a, b) = super::local_bloch_vectors(rho);
    (
        QubitObservable::from_direction(a).unwrap_or_else(QubitObservable::sigma_z),
        QubitObservable::from_direction(b).unwrap_or_else(QubitObservable::sigma_z),
    )
}

/// One seesaw run from `start`.
pub fn seesaw<T: Real>(g: &[[T; 2]; 2], start: Settings<T>, opts: &SeesawOptions<T>) -> SeesawResult<T> {
    let ascent = Ascent { g, opts };
    let mut settings = start;
    let initial = match opts.state {
        StateFamily::Entangled => ComplexMatrix::identity(4).scale(T::from_ratio(1, 4)),
        StateFamily::Product => product_state(&start.alice[0], &start.bob[0]),
    };
    let mut rho = ascent.state_step(&initial, &settings);
    let mut value = ascent.objective(&rho, &settings);
    let mut history = vec![value];
    let mut iterations = 0;

    while iterations < opts.max_iterations {
        iterations += 1;
        let before = value;

        let s = ascent.alice_step(&rho, &settings);
        let v = ascent.objective(&rho, &s);
        if v >= value {
            settings = s;
            value = v;
        }
        let s = ascent.bob_step(&rho, &settings);
        let v = ascent.objective(&rho, &s);
        if v >= value {
            settings = s;
            value = v;
        }
        let r = ascent.state_step(&rho, &settings);
        let v = ascent.objective(&r, &settings);
        if v >= value {
            rho = r;
            value = v;
        }

        history.push(value);
        if value - before < opts.tolerance {
            break;
        }
    }

    let model = QuantumModel::new(rho, settings).expect("seesaw states are valid density operators");
    SeesawResult {
        value,
        model,
        iterations,
        history,
    }
}

/// Best seesaw run over [`start_grid`]. `iterations` is the total over all
/// restarts.
pub fn maximize_bell_expression<T: Real>(g: &[[T; 2]; 2], opts: &SeesawOptions<T>) -> SeesawResult<T> {
    let mut best: Option<SeesawResult<T>> = None;
    let mut total = 0;
    for start in start_grid() {
        let run = seesaw(g, start, opts);
        total += run.iterations;
        if best.as_ref().is_none_or(|b| run.value > b.value) {
            best = Some(run);
        }
    }
    let mut best = best.expect("non-empty start grid");
    best.iterations = total;
    best
}

/// Maximal CHSH value over entangled qubit models with x–z observables.
pub fn maximize_chsh<T: Real>() -> SeesawResult<T> {
    maximize_bell_expression(&chsh_coefficients(), &SeesawOptions::default())
}

/// Same engine restricted to product states.
pub fn maximize_chsh_product<T: Real>() -> SeesawResult<T> {
    let opts = SeesawOptions {
        state: StateFamily::Product,
        ..SeesawOptions::default()
    };
    maximize_bell_expression(&chsh_coefficients(), &opts)
}

/// Maximizes `⟨E|q⟩_HS = Σ q^{xy} ⟨A_x ⊗ B_y⟩`, i.e. minimizes `Tr(Wρ)`.
pub fn maximize_sign_functional<T: Real>(q: &SignFunctional, opts: &SeesawOptions<T>) -> SeesawResult<T> {
    let g = std::array::from_fn(|x| std::array::from_fn(|y| T::from_int(q.get(x, y))));
    maximize_bell_expression(&g, opts)
}
