mod common;

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use legflow_core::diffalg::{generate_hierarchy, DiffPoly};
use legflow_core::flow::{evolve_with_snapshots, z1_frame_evolution, FlowConfig, FlowState};
use legflow_core::geom::sphere::speed_and_geodesic_curvature;
use legflow_core::geom::{
    clifford_projection, curvature_of, epicycloid_point, heisenberg_projection, lagrangian_projection, torus_knot_curve,
};
use legflow_core::invariants::{invariant_report, Spin};
use legflow_core::linalg::Mat2;
use legflow_core::stationary::{
    curvature_profile, hamiltonian, is_exceptional, minimize_period_function, phi2_regularized, quartic_from_modulus,
    reconstruct_frame_by_quadrature, scan_modular_curve, snap_to_modular_curve, standard_frame, standard_phi_loop,
    time_periodicity_function, ClosureConfig, Modulus, ScanConfig,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, what: String) -> Result<String, String> {
    if ok {
        Ok(what)
    } else {
        Err(what)
    }
}

fn within(elapsed: Duration, limit: f64) -> Result<(), String> {
    if elapsed.as_secs_f64() < limit {
        Ok(())
    } else {
        Err(format!("took {:.2} s, limit {limit} s", elapsed.as_secs_f64()))
    }
}

fn poly(s: &str) -> DiffPoly {
    s.parse().expect("valid polynomial")
}

fn hierarchy_exactness() -> Outcome {
    let t = Instant::now();
    let h = generate_hierarchy(3).map_err(|e| e.to_string())?;
    let checks = [
        ("M_2", h[1].m == poly("u3 + 3/2 * u0^2 u1")),
        ("M_3", h[2].m == poly("u5 + 5/2 * u0^2 u3 + 10 * u0 u1 u2 + 5/2 * u1^3 + 15/8 * u0^4 u1")),
        ("rho_2", h[1].rho.euler_operator() == poly("-1/2 * u1^2 + 1/8 * u0^4").euler_operator()),
        ("rho_3", h[2].rho.euler_operator() == poly("1/2 * u2^2 + 5/6 * u0^3 u2 + 5/4 * u0^2 u1^2 + 1/16 * u0^6").euler_operator()),
    ];
    within(t.elapsed(), 1.0)?;
    let bad: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    check(bad.is_empty(), if bad.is_empty() { "M_2, M_3, rho_2, rho_3 exact".into() } else { format!("mismatch in {bad:?}") })
}

fn torus_knot_invariants() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    for (m, n) in [(1u32, 1u32), (3, 5), (2, 3)] {
        let c = torus_knot_curve(m, n, 4096).map_err(|e| e.to_string())?;
        let r = invariant_report(&c).map_err(|e| e.to_string())?;
        let (mi, ni) = (m as i64, n as i64);
        let ok = r.maslov.abs() == (mi - ni).abs()
            && r.maslov_residual <= 1e-4
            && r.clifford_index == m + n
            && r.spin == Spin::Half
            && r.bennequin == Some(-mi * ni);
        notes.push(format!("({m},{n}): mu={} cl={} tb={:?}", r.maslov, r.clifford_index, r.bennequin));
        if !ok {
            return Err(format!("{} with spin {:?}", notes.join("; "), r.spin));
        }
    }
    within(t.elapsed(), 10.0)?;
    Ok(notes.join("; "))
}

fn epicycloid_oracle() -> Outcome {
    let c = torus_knot_curve(3, 5, 4096).map_err(|e| e.to_string())?;
    let planar = lagrangian_projection(&heisenberg_projection(&c).map_err(|e| e.to_string())?);
    let scale = (3.0f64 / 5.0).sqrt();
    let err = c
        .nodes()
        .into_iter()
        .zip(&planar)
        .map(|(s, p)| {
            let e = epicycloid_point(3, 5, scale * s);
            (p[0] - e[0]).abs().max((p[1] - e[1]).abs())
        })
        .fold(0.0, f64::max);
    check(err <= 1e-9, format!("max deviation {err:.2e}"))
}

fn clifford_projection_property() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut speed_err, mut k_err) = (0.0f64, 0.0f64);
    for _ in 0..10 {
        let lift = common::random_lift(&mut rng, 256);
        let eta = clifford_projection(&lift.curve);
        let (speed, kg) = speed_and_geodesic_curvature(&eta, lift.curve.period);
        let k = curvature_of(&lift.curve).map_err(|e| e.to_string())?;
        let half: Vec<f64> = k.values.iter().map(|x| 0.5 * x).collect();
        speed_err = speed.iter().map(|v| (v - 2.0).abs()).fold(speed_err, f64::max);
        k_err = k_err.max(common::max_abs_diff(&kg, &half));
    }
    check(speed_err <= 1e-7 && k_err <= 1e-6, format!("speed error {speed_err:.2e}, curvature error {k_err:.2e}"))
}

const WAVE_SAMPLES: usize = 128;

/// Evolves one wavelength of travel, or one wavelength of time for a standing wave.
fn travel(e1: f64, e3: f64) -> Result<(f64, f64, [f64; 3]), String> {
    let md = Modulus::symmetric(e1, e3).map_err(|e| e.to_string())?;
    let q = quartic_from_modulus(&md).map_err(|e| e.to_string())?;
    let k0 = curvature_profile(&md, WAVE_SAMPLES).map_err(|e| e.to_string())?;
    let t_end = if q.a.abs() > 1e-12 { q.omega / q.a.abs() } else { q.omega };
    let run = evolve_with_snapshots(&FlowState::new(k0.clone()), 1, t_end, 4, &FlowConfig::default()).map_err(|e| e.to_string())?;
    let expected = k0.grid().shift(&k0.values, -q.a * t_end);
    let last = run.snapshots.last().expect("snapshots");
    Ok((t_end, common::max_abs_diff(&last.k.values, &expected), run.relative_drift()))
}

fn traveling_wave() -> Outcome {
    let t = Instant::now();
    let (t_end, err, drift) = travel(2.0, 2.0)?;
    let (t_move, err_move, drift_move) = travel(1.0, 2.5)?;
    within(t.elapsed(), 30.0)?;
    let worst = drift.iter().chain(&drift_move).fold(0.0f64, |a, d| a.max(*d));
    check(
        err <= 1e-5 && err_move <= 1e-5 && worst <= 1e-7,
        format!("(2,2) t={t_end:.4} err {err:.2e}; (1,2.5) t={t_move:.4} err {err_move:.2e}; max drift {worst:.2e}"),
    )
}

fn route_gap(e1: f64, e3: f64) -> Result<(f64, f64), String> {
    let md = Modulus::symmetric(e1, e3).map_err(|e| e.to_string())?;
    let q = quartic_from_modulus(&md).map_err(|e| e.to_string())?;
    let k0 = curvature_profile(&md, 64).map_err(|e| e.to_string())?;
    let frame = standard_frame(&md).map_err(|e| e.to_string())?;
    let evo = z1_frame_evolution(&FlowState::with_frame(k0, frame), q.omega, &FlowConfig::default()).map_err(|e| e.to_string())?;
    Ok((evo.route_discrepancy(), evo.compatibility_residual))
}

fn route_independence() -> Outcome {
    let t = Instant::now();
    let (gap, compat) = route_gap(2.0, 2.0)?;
    let (gap_move, compat_move) = route_gap(1.0, 2.5)?;
    within(t.elapsed(), 60.0)?;
    check(
        gap <= 1e-5 && gap_move <= 1e-5,
        format!("(2,2) discrepancy {gap:.2e}; (1,2.5) discrepancy {gap_move:.2e}; compatibility {:.2e}", compat.max(compat_move)),
    )
}

fn stationary_closure() -> Outcome {
    let reference = Modulus::symmetric(0.600642, 2.44722).map_err(|e| e.to_string())?;
    let exceptional = Modulus::symmetric(2.39412, 3.2044).map_err(|e| e.to_string())?;
    let p1 = phi2_regularized(&reference).map_err(|e| e.to_string())?;
    let p2 = phi2_regularized(&exceptional).map_err(|e| e.to_string())?;
    let snapped = snap_to_modular_curve(&reference, 5.0 / 6.0).map_err(|e| e.to_string())?;
    let lp = standard_phi_loop(&snapped, &ClosureConfig::default()).map_err(|e| e.to_string())?;
    let phase = 5.0 * PI / 3.0;
    let target = Mat2::diag(Complex64::from_polar(1.0, phase), Complex64::from_polar(1.0, -phase));
    let mono = (lp.monodromy - target).max_abs();
    check(
        (p1 - 5.0 / 6.0).abs() <= 1e-4 && (p2 - 5.0 / 6.0).abs() <= 1e-3 && mono <= 1e-6,
        format!("reference {p1:.7}, exceptional {p2:.7}, monodromy error {mono:.2e}, wave number {}", lp.wave_number),
    )
}

fn modular_scan() -> Outcome {
    let t = Instant::now();
    let trace = scan_modular_curve(5.0 / 6.0, &ScanConfig::default()).map_err(|e| e.to_string())?;
    let lower = trace.lower_limit[1];
    let upper = trace.upper_limit.map(|u| u[1]).ok_or("trace has no upper limit")?;
    let min = minimize_period_function(&trace).map_err(|e| e.to_string())?;
    let check_md = Modulus::symmetric(3.245612, 10.568031).map_err(|e| e.to_string())?;
    let p_check = time_periodicity_function(&check_md).map_err(|e| e.to_string())?;
    within(t.elapsed(), 300.0)?;
    let ok = (lower - 2.4).abs() <= 1e-3
        && (upper - 12.0).abs() <= 1e-3
        && (min.period_function - 0.408156).abs() <= 1e-3
        && (min.e1 - 2.7904).abs() <= 1e-2
        && (min.e3 - 3.5253).abs() <= 1e-2
        && (p_check - 5.0).abs() <= 1e-3;
    check(
        ok,
        format!(
            "limits {lower:.6}, {upper:.6}; min P {:.7} at ({:.5}, {:.5}); P = {p_check:.6}; {} points",
            min.period_function,
            min.e1,
            min.e3,
            trace.points.len()
        ),
    )
}

fn quadrature_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let (mut frenet_gap, mut diag_gap) = (0.0f64, 0.0f64);
    let mut tested = 0;
    while tested < 20 {
        let md = Modulus::symmetric(rng.gen_range(0.1..6.0), rng.gen_range(0.1..12.0)).map_err(|e| e.to_string())?;
        if (md.norm() - 4.0).abs() < 0.05 || is_exceptional(&md).map_err(|e| e.to_string())? {
            continue;
        }
        tested += 1;
        let qf = reconstruct_frame_by_quadrature(&md, 256).map_err(|e| e.to_string())?;
        frenet_gap = frenet_gap.max(qf.frenet_discrepancy());
        let q = quartic_from_modulus(&md).map_err(|e| e.to_string())?;
        let ks = qf.profile.grid().derivative(&qf.profile.values, 1);
        let target = Mat2::diag(Complex64::new(-q.lambda, 0.0), Complex64::new(q.lambda, 0.0));
        for (i, f) in qf.frames.iter().enumerate() {
            let g = f.matrix();
            let m = g * hamiltonian(&q, qf.profile.values[i], ks[i]) * g.adjoint();
            diag_gap = diag_gap.max((m - target).max_abs());
        }
    }
    check(frenet_gap <= 1e-6 && diag_gap <= 1e-7, format!("Frenet gap {frenet_gap:.2e}, momentum gap {diag_gap:.2e}"))
}

fn property_suites() -> Outcome {
    let results = common::props::run_all(64);
    let failed: Vec<String> = results.iter().filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}"))).collect();
    if failed.is_empty() {
        Ok(format!("{} suites", results.len()))
    } else {
        Err(failed.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("hierarchy exactness", hierarchy_exactness),
        ("torus knot invariants", torus_knot_invariants),
        ("epicycloid oracle", epicycloid_oracle),
        ("Clifford projection", clifford_projection_property),
        ("traveling wave", traveling_wave),
        ("route independence", route_independence),
        ("stationary closure", stationary_closure),
        ("modular curve scan", modular_scan),
        ("quadrature consistency", quadrature_consistency),
        ("property suites", property_suites),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag}: {name}: {detail} ({secs:.2} s)", i + 1);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
