use std::f64::consts::TAU;

use legflow_core::diffalg::{generate_hierarchy, rational, DiffPoly, HierarchyLevel, Monomial};
use legflow_core::ellip::{complete_k, complete_pi, jacobi_cn_dn_sn, EllipticParameter};
use legflow_core::flow::{evolve_with_snapshots, symplectic_pairing, FlowConfig, FlowState};
use legflow_core::geom::{clifford_point, curvature_of, frenet_frames, sigma, torus_knot_curve, CurvatureProfile, Frame};
use legflow_core::invariants::maslov_index;
use legflow_core::linalg::{ComplexPair, Mat2};
use legflow_core::stationary::{is_exceptional, monodromy, phi2_regularized, Modulus};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

pub fn elliptic_args() -> impl Strategy<Value = (f64, f64)> {
    (0.0..0.999f64, -30.0..30.0f64)
}

pub fn elliptic_identities((m, u): (f64, f64)) -> Result<(), TestCaseError> {
    let p = EllipticParameter::new(m).unwrap();
    let j = jacobi_cn_dn_sn(u, p);
    ensure((j.sn * j.sn + j.cn * j.cn - 1.0).abs() <= 1e-11, || format!("sn²+cn² at m={m}, u={u}"))?;
    ensure((j.dn * j.dn + m * j.sn * j.sn - 1.0).abs() <= 1e-11, || format!("dn²+m sn² at m={m}, u={u}"))?;
    let k = complete_k(p);
    let shifted = jacobi_cn_dn_sn(u + 4.0 * k, p);
    ensure((shifted.cn - j.cn).abs() <= 1e-9, || format!("cn not 4K-periodic at m={m}"))?;
    let pi0 = complete_pi(0.0, p).unwrap();
    ensure((pi0 - k).abs() <= 1e-13 * k, || format!("Π(0,m) = {pi0} but K = {k}"))
}

pub fn diff_poly() -> impl Strategy<Value = DiffPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, 1..=6), -6i64..=6, 1i64..=5), 1..=5)
        .prop_map(|terms| DiffPoly::from_terms(terms.into_iter().map(|(e, n, d)| (Monomial::new(e), rational(n, d)))))
}

pub fn euler_annihilates_total_derivatives(p: DiffPoly) -> Result<(), TestCaseError> {
    ensure(p.total_derivative().euler_operator().is_zero(), || format!("E(D({p})) != 0"))
}

fn levels() -> &'static [HierarchyLevel] {
    use std::sync::OnceLock;
    static LEVELS: OnceLock<Vec<HierarchyLevel>> = OnceLock::new();
    LEVELS.get_or_init(|| generate_hierarchy(4).unwrap())
}

pub fn hierarchy_structure(j: usize) -> Result<(), TestCaseError> {
    let l = &levels()[j - 1];
    ensure(l.verify().is_ok(), || format!("level {j} fails its identities"))?;
    ensure(l.m.is_odd() && l.rho.is_even(), || format!("parity of level {j}"))?;
    ensure(l.m.max_jet_order() == Some(2 * j - 1), || format!("order of M_{j}"))
}

/// Random real trigonometric profile on `[0, period)`.
pub fn trig_profile(n: usize) -> impl Strategy<Value = CurvatureProfile> {
    trig_profile_with(n, 2.0..8.0)
}

pub fn trig_profile_with(n: usize, periods: std::ops::Range<f64>) -> impl Strategy<Value = CurvatureProfile> {
    (prop::collection::vec(-0.6..0.6f64, 6), -0.5..0.5f64, periods).prop_map(move |(c, mean, period)| {
        CurvatureProfile::from_fn(n, period, |s| {
            let w = TAU * s / period;
            mean + c
                .chunks(2)
                .enumerate()
                .map(|(j, ab)| {
                    let x = (j + 1) as f64 * w;
                    ab[0] * x.cos() + ab[1] * x.sin()
                })
                .sum::<f64>()
        })
        .unwrap()
    })
}

pub fn pairings_vanish(k: CurvatureProfile) -> Result<(), TestCaseError> {
    for m in 2..=3 {
        for j in 1..m {
            let p = symplectic_pairing(levels(), m, j, &k).unwrap();
            ensure(p.value.abs() <= 1e-8 * p.integrand_l1.max(1.0), || format!("∫L_{m} D L_{j} = {:e}", p.value))?;
        }
    }
    Ok(())
}

pub fn random_unitary() -> impl Strategy<Value = Mat2> {
    prop::array::uniform4(-3.0..3.0f64).prop_map(|[a, b, c, d]| {
        let i = Complex64::i();
        Mat2::new(i * a, Complex64::new(b, c), Complex64::new(-b, c), i * d).exp()
    })
}

pub fn frenet_frames_are_unitary_and_legendrian((k, g): (CurvatureProfile, Mat2)) -> Result<(), TestCaseError> {
    let start = Frame::from_columns(g.column(0), g.column(1));
    for f in frenet_frames(&k, &start) {
        ensure(f.unitarity_defect() <= 1e-10, || format!("unitarity defect {:e}", f.unitarity_defect()))?;
        let r = f.gamma_s().inner(&f.gamma()).norm();
        ensure(r <= 1e-8, || format!("Legendrian residual {r:e}"))?;
    }
    Ok(())
}

pub fn fiber_invariance((w, phi): (Mat2, f64)) -> Result<(), TestCaseError> {
    let w = w.column(0);
    let rotated = w.scale(Complex64::from_polar(1.0, phi));
    let (a, b) = (clifford_point(&w), clifford_point(&rotated));
    ensure((0..3).all(|i| (a[i] - b[i]).abs() <= 1e-12), || "Clifford map is not fiber invariant".into())?;
    let (s, t) = (sigma(&w), sigma(&w.scale(Complex64::new(-1.0, 0.0))));
    ensure((0..3).all(|i| (0..3).all(|j| (s[i][j] - t[i][j]).abs() <= 1e-12)), || "σ(−w) != σ(w)".into())?;
    let det = s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1]) - s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0])
        + s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]);
    ensure((det - 1.0).abs() <= 1e-12, || format!("det σ(w) = {det}"))
}

pub fn knot_args() -> impl Strategy<Value = ((u32, u32), Mat2, f64)> {
    (prop::sample::select(vec![(1u32, 1u32), (1, 2), (2, 3), (3, 5), (1, 4)]), random_unitary(), 0.0..10.0f64)
}

pub fn maslov_is_invariant(((m, n), a, shift): ((u32, u32), Mat2, f64)) -> Result<(), TestCaseError> {
    let c = torus_knot_curve(m, n, 512).unwrap();
    let base = maslov_index(&curvature_of(&c).unwrap()).unwrap();
    let moved = maslov_index(&curvature_of(&c.transformed(&a)).unwrap()).unwrap();
    let shifted = maslov_index(&curvature_of(&c.phase_shifted(shift)).unwrap()).unwrap();
    ensure(base == moved && base == shifted, || format!("Maslov {base}, {moved}, {shifted} for ({m},{n})"))?;
    ensure(c.transformed(&a).legendrian_residual() <= 1e-8, || "U(2) image is not Legendrian".into())
}

pub fn conservation_args() -> impl Strategy<Value = (usize, CurvatureProfile)> {
    (1usize..=2, trig_profile_with(64, 6.0..10.0))
}

pub fn integrals_are_conserved((n, k): (usize, CurvatureProfile)) -> Result<(), TestCaseError> {
    let run = evolve_with_snapshots(&FlowState::new(k), n, 0.05, 2, &FlowConfig::default()).unwrap();
    let drift = run.relative_drift();
    ensure(drift.iter().all(|d| *d <= 1e-7), || format!("drift {drift:?} under flow {n}"))
}

pub fn generic_symmetric_modulus() -> impl Strategy<Value = Modulus> {
    (0.1..6.0f64, 0.1..12.0f64)
        .prop_filter("away from the exceptional circle", |(e1, e3)| (e1.hypot(*e3) - 4.0).abs() > 0.05)
        .prop_map(|(e1, e3)| Modulus::symmetric(e1, e3).unwrap())
}

pub fn monodromy_is_diagonal_unitary(md: Modulus) -> Result<(), TestCaseError> {
    ensure(!is_exceptional(&md).unwrap(), || "exceptional".into())?;
    let mono = monodromy(&md, 512).unwrap();
    ensure(mono.unitarity_defect() <= 1e-9, || format!("monodromy unitarity {:e}", mono.unitarity_defect()))?;
    let phase = TAU * phi2_regularized(&md).unwrap();
    let expect = Mat2::diag(Complex64::from_polar(1.0, phase), Complex64::from_polar(1.0, -phase));
    let err = (mono - expect).max_abs();
    ensure(err <= 1e-6, || format!("monodromy off its closed form by {err:e} at {md:?}"))
}

fn complex_pair() -> impl Strategy<Value = ComplexPair> {
    prop::array::uniform4(-1.0..1.0f64).prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3).prop_map(|[a, b, c, d]| {
        let w = ComplexPair::new(Complex64::new(a, b), Complex64::new(c, d));
        w.scale(Complex64::new(1.0 / w.norm(), 0.0))
    })
}

pub fn fiber_args() -> impl Strategy<Value = (Mat2, f64)> {
    (complex_pair(), 0.0..TAU).prop_map(|(w, phi)| (Mat2::from_columns(w, w.star()), phi))
}

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

/// Every property suite with its outcome.
pub fn run_all(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    let few = (cases / 4).max(4);
    vec![
        ("elliptic identities", run(cases, elliptic_args(), elliptic_identities)),
        ("Euler annihilates D", run(cases, diff_poly(), euler_annihilates_total_derivatives)),
        ("hierarchy structure", run(8, 1usize..=4, hierarchy_structure)),
        ("symplectic pairing", run(few, trig_profile(128), pairings_vanish)),
        ("Frenet unitarity", run(few, (trig_profile(128), random_unitary()), frenet_frames_are_unitary_and_legendrian)),
        ("fiber invariance", run(cases, fiber_args(), fiber_invariance)),
        ("Maslov invariance", run(few, knot_args(), maslov_is_invariant)),
        ("conservation", run(few, conservation_args(), integrals_are_conserved)),
        ("stationary monodromy", run(few, generic_symmetric_modulus(), monodromy_is_diagonal_unitary)),
    ]
}
