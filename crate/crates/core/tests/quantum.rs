mod common;

use bellpoly::fourier::SignFunctional;
use bellpoly::localset::chsh_value;
use bellpoly::quantum::{
    behavior_from_quantum, chsh_operator, hermitian_eigen, maximize_chsh, maximize_chsh_product,
    maximize_sign_functional, phi_plus, reduced_states, seesaw, start_grid, witness, witness_value, ComplexMatrix,
    QuantumModel, SeesawOptions, Settings, StateFamily,
};
use bellpoly::scenario::to_correlators;
use bellpoly::Scenario;
use common::*;
use num_complex::Complex;
use rand::Rng;

type C = Complex<f64>;

/// `(I + (-1)^a n·σ) / 2` written out entrywise.
fn projector_oracle(n: [f64; 3], a: usize) -> [[C; 2]; 2] {
    let s = if a == 0 { 1.0 } else { -1.0 };
    [
        [
            C::new((1.0 + s * n[2]) / 2.0, 0.0),
            C::new(s * n[0] / 2.0, -s * n[1] / 2.0),
        ],
        [
            C::new(s * n[0] / 2.0, s * n[1] / 2.0),
            C::new((1.0 - s * n[2]) / 2.0, 0.0),
        ],
    ]
}

/// `Tr(ρ (P ⊗ Q))` with `ρ` given row-major.
fn born(rho: &[C], p: [[C; 2]; 2], q: [[C; 2]; 2]) -> f64 {
    let mut tr = C::new(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            let pq = p[i / 2][j / 2] * q[i % 2][j % 2];
            tr += rho[j * 4 + i] * pq;
        }
    }
    tr.re
}

#[test]
fn behaviors_match_born_rule_oracle() {
    let mut g = rng(21);
    let s = Scenario::CHSH;
    for _ in 0..200 {
        let qm = random_model(&mut g);
        let b = behavior_from_quantum(&qm).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                for a in 0..2 {
                    for bb in 0..2 {
                        let expected = born(
                            qm.state().data(),
                            projector_oracle(qm.alice()[x].bloch(), a),
                            projector_oracle(qm.bob()[y].bloch(), bb),
                        );
                        let got = b.probs()[s.index(a, bb, x, y)];
                        assert!((got - expected).abs() < 1e-12, "{got} vs {expected}");
                    }
                }
            }
        }
    }
}

#[test]
fn quantum_behaviors_are_no_signaling() {
    let mut g = rng(22);
    for _ in 0..1000 {
        let b = behavior_from_quantum(&random_model(&mut g)).unwrap();
        assert!(b.is_no_signaling(&1e-9));
        assert!(b.probs().iter().all(|p| *p >= -1e-12));
    }
}

#[test]
fn chsh_operator_expectation_matches_correlators() {
    let mut g = rng(23);
    let ceiling = 2.0 * 2f64.sqrt();
    for _ in 0..1000 {
        let qm = random_model(&mut g);
        let from_behavior = chsh_value(&to_correlators(&behavior_from_quantum(&qm).unwrap()).unwrap());
        let op = chsh_operator(qm.settings());
        assert!((op.trace_product_re(qm.state()) - from_behavior).abs() < 1e-10);
        assert!(from_behavior.abs() <= ceiling + 1e-9);
        let eig = hermitian_eigen(&op);
        assert!(eig.max_value() <= ceiling + 1e-9 && eig.min_value() >= -ceiling - 1e-9);
    }
}

#[test]
fn projectors_form_a_measurement() {
    let mut g = rng(24);
    let id = ComplexMatrix::<f64>::identity(2);
    for _ in 0..100 {
        let o = random_observable(&mut g);
        let (m0, m1) = (o.projector(0), o.projector(1));
        assert!((&m0 + &m1).max_abs_diff(&id) < 1e-12);
        assert!((&m0 * &m0).max_abs_diff(&m0) < 1e-12);
        assert!((&m0 * &m1).max_abs_diff(&ComplexMatrix::zeros(2)) < 1e-12);
        assert!((&m0 - &m1).max_abs_diff(&o.operator()) < 1e-12);
        let oracle = projector_oracle(o.bloch(), 0);
        for i in 0..2 {
            for j in 0..2 {
                assert!((m0[(i, j)] - oracle[i][j]).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn jacobi_matches_closed_form_on_two_by_two() {
    let mut g = rng(25);
    for _ in 0..500 {
        let (a, d) = (g.gen_range(-3.0..3.0), g.gen_range(-3.0..3.0));
        let b = C::new(g.gen_range(-2.0..2.0), g.gen_range(-2.0..2.0));
        let m = ComplexMatrix::from_vec(vec![C::new(a, 0.0), b, b.conj(), C::new(d, 0.0)]);
        let r = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
        let eig = hermitian_eigen(&m);
        assert!((eig.min_value() - ((a + d) / 2.0 - r)).abs() < 1e-10);
        assert!((eig.max_value() - ((a + d) / 2.0 + r)).abs() < 1e-10);
    }
}

#[test]
fn jacobi_eigenpairs_satisfy_definition() {
    let mut g = rng(26);
    for _ in 0..200 {
        let m = random_state(&mut g, 3);
        let eig = hermitian_eigen(&m);
        let mut sum = 0.0;
        for k in 0..4 {
            let v = eig.vector(k);
            let lambda = eig.values[k];
            sum += lambda;
            for i in 0..4 {
                let mv: C = (0..4).map(|j| m[(i, j)] * v[j]).sum();
                assert!((mv - v[i] * lambda).norm() < 1e-10);
            }
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-10);
        }
        assert!((sum - m.trace().re).abs() < 1e-10);
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn seesaw_reaches_tsirelson_and_is_monotone() {
    let best = maximize_chsh::<f64>();
    assert!((best.value - 2.0 * 2f64.sqrt()).abs() < 1e-8);
    let g = [[1.0, 1.0], [1.0, -1.0]];
    for start in start_grid::<f64>() {
        let run = seesaw(&g, start, &SeesawOptions::default());
        assert!(
            run.history.windows(2).all(|w| w[1] >= w[0] - 1e-12),
            "{:?}",
            run.history
        );
    }
    // The optimal state is locally maximally mixed.
    let (ra, rb) = reduced_states(best.model.state());
    let half = ComplexMatrix::<f64>::identity(2).scale(0.5);
    assert!(ra.max_abs_diff(&half) < 1e-6 && rb.max_abs_diff(&half) < 1e-6);
}

#[test]
fn product_states_stay_local() {
    let best = maximize_chsh_product::<f64>();
    assert!(best.value <= 2.0 + 1e-9);
    assert!((best.value - 2.0).abs() < 1e-6);
    let opts = SeesawOptions {
        state: StateFamily::Product,
        ..SeesawOptions::default()
    };
    let g = [[1.0, 1.0], [1.0, -1.0]];
    for start in start_grid::<f64>() {
        assert!(seesaw(&g, start, &opts).value <= 2.0 + 1e-9);
    }
}

#[test]
fn witnesses_are_nonnegative_and_minimized_to_zero() {
    let mut g = rng(27);
    for _ in 0..500 {
        let qm = random_model(&mut g);
        for qf in SignFunctional::all() {
            let w = witness(qm.settings(), &qf).unwrap();
            assert!(witness_value(&w, qm.state()) >= -1e-9);
        }
    }
    for qf in SignFunctional::all() {
        let res = maximize_sign_functional::<f64>(&qf, &SeesawOptions::default());
        let w = witness(res.model.settings(), &qf).unwrap();
        let v = witness_value(&w, res.model.state());
        assert!(v.abs() < 1e-6, "{qf}: {v}");
    }
}

#[test]
fn tsirelson_settings_on_phi_plus() {
    let qm = QuantumModel::new(phi_plus::<f64>(), Settings::tsirelson()).unwrap();
    let v = chsh_value(&to_correlators(&behavior_from_quantum(&qm).unwrap()).unwrap());
    assert!((v - 2.0 * 2f64.sqrt()).abs() < 1e-12);
}
