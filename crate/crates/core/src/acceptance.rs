//! End-to-end quantitative checks bundled for the CLI `verify` subcommand and
//! the `acceptance` integration test. Every tolerance is pinned here.
//!
//! Two checks fail by design and are reported as such (see the repository
//! notes): the fitted amplitude of the return-probability iteration and the
//! small-n braid return-probability formula both inherit a constant from the
//! source analysis, `(9 + 4 sqrt 2)/(7 pi)`, that disagrees with the exact
//! iterations and with exhaustive enumeration by a factor of about 7.5. The
//! faithful computations are kept and the comparison is reported honestly.

use crate::error::Result;
use crate::group::{Framing, Matrix2};
use crate::hyperbolic::{
    self, aggregate_bins, l1_distance, lyapunov_from_invariant_measure, lyapunov_mc,
    mc_theta_histogram, point_pair_distance, table1, BackboneSpec, HyperbolicPoint, TableRowId,
};
use crate::spectral::{
    backbone_drift_of_system, fit_geometric_decay, hecke_drift, honeycomb_c_paper,
    honeycomb_lambda_exact, honeycomb_return_profile, sigma_bar_root_closed_form,
    sigma_return_probability_exact, smallest_root, TransferSystem,
};
use crate::walk::{
    enumerate_return_probability, estimate_return_probability, simulate_drift, simulate_flux,
    ClosureFilter, FluxBasis, LengthFunctional, WalkConfig, WalkKind,
};
use crate::{alexander, walk};
use serde::Serialize;
use std::time::Instant;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    /// The faithful verdict of the criterion exactly as stated.
    pub passed: bool,
    pub details: String,
    pub seconds: f64,
    /// Sub-checks that fail because the printed source constant disagrees
    /// with the exact computation (see notes/decisions); empty elsewhere.
    pub expected_discrepancies: Vec<String>,
}

impl CriterionResult {
    /// Passed, or failed only through the documented constant discrepancies.
    pub fn acceptable(&self) -> bool {
        self.passed || !self.expected_discrepancies.is_empty()
    }
}

fn result(id: u32, name: &str, passed: bool, details: String, t0: Instant) -> CriterionResult {
    CriterionResult {
        id,
        name: name.to_string(),
        passed,
        details,
        seconds: t0.elapsed().as_secs_f64(),
        expected_discrepancies: Vec::new(),
    }
}

fn scaled(full: u64, quick: bool, min: u64) -> u64 {
    if quick {
        (full / 16).max(min)
    } else {
        full
    }
}

/// 1. H3 drift: MC 2/15 within 0.004; spectral 2/15 within 1e-8; < 60 s.
pub fn criterion_1(quick: bool) -> Result<CriterionResult> {
    let t0 = Instant::now();
    let samples = scaled(10_000, quick, 500);
    let cfg = WalkConfig::simple(Framing::PSL2Z, 10_000, samples, 0x5eed_0001);
    let mc = simulate_drift(&cfg, LengthFunctional::GraphLength)?;
    let target = 2.0 / 15.0;
    let mc_ok = (mc.mean - target).abs() <= 0.004;
    let spectral = hecke_drift(3)?;
    let sp_ok = (spectral.graph_drift - target).abs() <= 1e-8;
    let fast = t0.elapsed().as_secs_f64() < 60.0;
    Ok(result(
        1,
        "H3 drift (word metric): MC and spectral route",
        mc_ok && sp_ok && fast,
        format!(
            "MC <L>/n = {:.6} +- {:.1e} (target {:.6}, tol 4e-3); spectral l3 = {:.10} (|err| {:.2e}, tol 1e-8); {:.1}s",
            mc.mean,
            mc.standard_error,
            target,
            spectral.graph_drift,
            (spectral.graph_drift - target).abs(),
            t0.elapsed().as_secs_f64()
        ),
        t0,
    ))
}

/// 2. PSL(2,Z) sigma-bar drift: MC 0.250 +- 0.004; closed form s_- = 1 - ix/4
/// reproduced to 1e-9.
pub fn criterion_2(quick: bool) -> Result<CriterionResult> {
    let t0 = Instant::now();
    let samples = scaled(10_000, quick, 500);
    let cfg = WalkConfig::simple(Framing::modular_sigma(), 10_000, samples, 0x5eed_0002);
    let mc = simulate_drift(&cfg, LengthFunctional::BackboneGeneration)?;
    let mc_ok = (mc.mean - 0.25).abs() <= 0.004;
    let sys = TransferSystem::SigmaBar;
    let mut closed_ok = true;
    let mut max_err = 0.0f64;
    for &x in &[0.0, 1e-4, -1e-4, 1e-3, -2e-3, 0.01] {
        let err = (smallest_root(&sys, x)? - sigma_bar_root_closed_form(x)).norm();
        max_err = max_err.max(err);
        closed_ok &= err <= 1e-9;
    }
    let drift = backbone_drift_of_system(&sys)?;
    let drift_ok = (drift - 0.25).abs() <= 1e-9;
    Ok(result(
        2,
        "PSL(2,Z) sigma-bar drift: MC and closed-form root",
        mc_ok && closed_ok && drift_ok,
        format!(
            "MC <k>/n = {:.6} +- {:.1e} (target 0.25, tol 4e-3); max|root - closed form| = {:.2e} (tol 1e-9); implicit drift {:.12}",
            mc.mean, mc.standard_error, max_err, drift
        ),
        t0,
    ))
}

/// 3. Free-group drifts: 1/3 (idempotent triple) and 1/2 (rank-2 symmetric).
pub fn criterion_3(quick: bool) -> Result<CriterionResult> {
    let t0 = Instant::now();
    let samples = scaled(10_000, quick, 500);
    let f3 = simulate_drift(
        &WalkConfig::simple(Framing::FreeIdempotent { rank: 3 }, 10_000, samples, 3),
        LengthFunctional::GraphLength,
    )?;
    let f4 = simulate_drift(
        &WalkConfig::simple(Framing::FreeSymmetric { rank: 2 }, 10_000, samples, 4),
        LengthFunctional::GraphLength,
    )?;
    let ok3 = (f3.mean - 1.0 / 3.0).abs() <= 0.004;
    let ok4 = (f4.mean - 0.5).abs() <= 0.004;
    Ok(result(
        3,
        "Free-group drifts (3-regular and 4-regular trees)",
        ok3 && ok4,
        format!(
            "F3 idempotent: {:.6} (target 1/3, tol 4e-3); F4 letters: {:.6} (target 1/2, tol 4e-3)",
            f3.mean, f4.mean
        ),
        t0,
    ))
}

/// 4. B3 drift bounds both -> 0.25 +- 0.005 at n = 1e4; gap decays ~ n^-1/2.
pub fn criterion_4(quick: bool) -> Result<CriterionResult> {
    let t0 = Instant::now();
    let samples = scaled(10_000, quick, 500);
    let at = |n: u64, seed: u64| -> Result<(f64, f64)> {
        let cfg = WalkConfig::simple(Framing::braid_sigma(), n, samples, seed);
        let lo = simulate_drift(&cfg, LengthFunctional::B3LowerBound)?;
        let hi = simulate_drift(&cfg, LengthFunctional::B3UpperBound)?;
        Ok((lo.mean, hi.mean))
    };
    let (lo4, hi4) = at(10_000, 0x5eed_0004)?;
    let bounds_ok = (lo4 - 0.25).abs() <= 0.005 && (hi4 - 0.25).abs() <= 0.005;
    // gap ~ 6<|f|>/n ~ c n^{-1/2}: log-log slope across two decades
    let ns = [100u64, 316, 1000, 3162, 10_000];
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (i, &n) in ns.iter().enumerate() {
        let (lo, hi) = at(n, 0x5eed_0040 + i as u64)?;
        xs.push((n as f64).ln());
        ys.push((hi - lo).max(1e-12).ln());
    }
    let m = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    let slope_ok = (slope + 0.5).abs() <= 0.1;
    Ok(result(
        4,
        "B3 drift bounds converge to 1/4 with O(n^-1/2) gap",
        bounds_ok && slope_ok,
        format!(
            "lower {:.5}, upper {:.5} at n=1e4 (target 0.25, tol 5e-3); gap log-log slope {:.3} (target -0.5 +- 0.1)",
            lo4, hi4, slope
        ),
        t0,
    ))
}

/// 5. H3 Gaussian profile of the backbone generation at n = 1e4.
pub fn criterion_5(quick: bool) -> Result<CriterionResult> {
    let t0 = Instant::now();
    let n = 10_000u64;
    let samples = scaled(10_000, quick, 1000);
    let cfg = WalkConfig::simple(Framing::PSL2Z, n, samples, 0x5eed_0005);
    // <k> and Var(k): reuse the drift machinery on k/n, then rescale
    let est = simulate_drift(&cfg, LengthFunctional::BackboneGeneration)?;
    let mean_k = est.mean * n as f64;
    let var_k = est.variance * (n as f64) * (n as f64);
    let (mean_t, var_t) = crate::spectral::h3_gaussian_profile(n);
    let mean_ok = (mean_k - mean_t).abs() <= 0.01 * mean_t;
    let var_ok = (var_k - var_t).abs() <= 0.03 * var_t;
    Ok(result(
        5,
        "H3 backbone-generation profile: mean n/15, variance 214n/1125",
        mean_ok && var_ok,
        format!(
            "<k> = {:.2} (target {:.2}, tol 1%); Var k = {:.1} (target {:.1}, tol 3%)",
            mean_k, mean_t, var_k, var_t
        ),
        t0,
    ))
}

/// 6. Flux variances: ab 13/72 +- 1% at n=1e5; sigma 1/36 analytic and MC;
/// closure-conditioned ab at n = 24 within 5%.
pub fn criterion_6(quick: bool) -> Result<CriterionResult> {
    let t0 = Instant::now();
    let ab_target = 13.0 / 72.0;
    let sg_target = 1.0 / 36.0;
    let analytic_ok =
        walk::theoretical_flux_variance_per_step(FluxBasis::Ab) == ab_target
            && walk::theoretical_flux_variance_per_step(FluxBasis::Sigma) == sg_target;
    let mk = |n: u64, samples: u64, closed: bool, seed: u64| WalkConfig {
        framing: Framing::PSL2Z,
        walk_kind: WalkKind::Magnetic,
        steps: n,
        samples,
        seed,
        closure_filter: if closed {
            ClosureFilter::ProjectionClosed
        } else {
            ClosureFilter::None
        },
    };
    let ab = simulate_flux(&mk(100_000, scaled(100_000, quick, 2000), false, 61), FluxBasis::Ab)?;
    let ab_ok = (ab.variance_per_step.mean - ab_target).abs() <= 0.01 * ab_target;
    let sg = simulate_flux(&mk(10_000, scaled(50_000, quick, 2000), false, 62), FluxBasis::Sigma)?;
    let sg_ok = (sg.variance_per_step.mean - sg_target).abs() <= 0.01 * sg_target;
    let closed = simulate_flux(&mk(24, scaled(20_000, quick, 2000), true, 63), FluxBasis::Ab)?;
    let closed_ok = (closed.variance_per_step.mean - ab_target).abs() <= 0.05 * ab_target;
    Ok(result(
        6,
        "Flux variances: 13/72 (ab), 1/36 (sigma), closure-conditioned",
        analytic_ok && ab_ok && sg_ok && closed_ok,
        format!(
            "ab var/n = {:.6} (13/72 = {:.6}, tol 1%); sigma var/n = {:.6} (1/36 = {:.6}, tol 1%); closed ab at n=24: {:.6} (tol 5%, acceptance rate {:.2e})",
            ab.variance_per_step.mean,
            ab_target,
            sg.variance_per_step.mean,
            sg_target,
            closed.variance_per_step.mean,
            closed.accepted as f64 / closed.proposals as f64
        ),
        t0,
    ))
}

/// 7. PSL(2,Z) return probability: iteration fit and MC agreement.
///
/// The lambda fit passes; the amplitude fit against the printed constant
/// (9+4sqrt2)/(7pi) fails for the faithful iterations (exact amplitude ~ 5.03
/// for trivial words, 9+4sqrt2 for the cell chain) and is reported as a
/// documented discrepancy.
pub fn criterion_7(quick: bool) -> Result<CriterionResult> {
    let t0 = Instant::now();
    let exact = sigma_return_probability_exact(2000)?;
    let (lambda_exact, c_exact) = fit_geometric_decay(&exact, 500, 2000, 1.5)?;
    let cell = honeycomb_return_profile(2000)?;
    let (lambda_cell, _c_cell) = fit_geometric_decay(&cell, 500, 2000, 1.5)?;
    let lambda_target = honeycomb_lambda_exact();
    let lambda_ok = (lambda_exact - lambda_target).abs() <= 1e-3
        && (lambda_cell - lambda_target).abs() <= 1e-3;
    let c_target = honeycomb_c_paper();
    let c_ok = (c_exact - c_target).abs() <= 0.05 * c_target; // fails: see notes
    // MC vs exhaustive enumeration (n <= 8) and the exact iteration (n <= 16)
    let samples = scaled(400_000, quick, 20_000);
    let rows = estimate_return_probability(
        Framing::modular_sigma(),
        &[2, 4, 6, 8, 10, 12, 14, 16],
        samples,
        0x5eed_0007,
    )?;
    let mut mc_ok = true;
    let mut worst = 0.0f64;
    for row in &rows {
        let reference = if row.n <= 8 {
            enumerate_return_probability(Framing::modular_sigma(), row.n as u32)?
        } else {
            exact[row.n as usize]
        };
        let se = row.standard_error_proxy();
        let pull = (row.p_hat - reference).abs() / se.max(1e-12);
        worst = worst.max(pull);
        mc_ok &= pull <= 4.0;
    }
    let mut r = result(
        7,
        "PSL(2,Z) return probability: lambda/C fit + MC vs exact",
        lambda_ok && c_ok && mc_ok,
        format!(
            "lambda fit: exact-chain {:.6}, cell-chain {:.6} (target {:.6}, tol 1e-3) [{}]; C fit {:.4} vs printed {:.4} [{}] (known discrepancy, see notes); MC vs exact worst pull {:.2} sigma [{}]",
            lambda_exact,
            lambda_cell,
            lambda_target,
            if lambda_ok { "ok" } else { "FAIL" },
            c_exact,
            c_target,
            if c_ok { "ok" } else { "FAIL" },
            worst,
            if mc_ok { "ok" } else { "FAIL" }
        ),
        t0,
    );
    if !c_ok && lambda_ok && mc_ok {
        r.expected_discrepancies.push(
            "amplitude C: exact iteration gives ~5.03 (cell chain 9+4*sqrt(2)); the printed (9+4*sqrt(2))/(7*pi) is inconsistent with both".into(),
        );
    }
    Ok(r)
}

/// 8. B3 return probability: the printed-formula factor-2 check (fails, see
/// notes) and the fitted decay rate within 0.01 of (2 sqrt 2 + 1)/4.
pub fn criterion_8(quick: bool) -> Result<CriterionResult> {
    let t0 = Instant::now();
    let lambda = honeycomb_lambda_exact();
    let amp = honeycomb_c_paper() / ((1.0 / 6.0) * (2.0 * std::f64::consts::PI).sqrt());
    // (a) printed formula at even n in [12, 24]
    let ns_a: Vec<u64> = (12..=24).step_by(2).map(|n| n as u64).collect();
    let samples_a = scaled(2_000_000, quick, 100_000);
    let rows_a =
        estimate_return_probability(Framing::braid_sigma(), &ns_a, samples_a, 0x5eed_0008)?;
    let mut formula_ok = true;
    let mut worst_ratio: f64 = 1.0;
    for row in &rows_a {
        let formula = amp * lambda.powi(row.n as i32) / (row.n * row.n) as f64;
        let ratio = row.p_hat / formula;
        if ratio > worst_ratio {
            worst_ratio = ratio;
        }
        formula_ok &= (0.5..=2.0).contains(&ratio);
    }
    // (b) decay-rate fit on a window deep enough to kill the preasymptotic
    // amplitude drift
    let ns_b: Vec<u64> = (24..=80).step_by(8).map(|n| n as u64).collect();
    let samples_b = scaled(20_000_000, quick, 500_000);
    let rows_b =
        estimate_return_probability(Framing::braid_sigma(), &ns_b, samples_b, 0x5eed_0080)?;
    let mut vals = vec![0.0f64; 81];
    for row in &rows_b {
        vals[row.n as usize] = row.p_hat;
    }
    let (lambda_hat, _) = fit_geometric_decay(&vals, 24, 80, 2.0)?;
    let lambda_ok = (lambda_hat - lambda).abs() <= 0.01;
    let mut r = result(
        8,
        "B3 return probability: printed asymptotic formula + decay rate",
        formula_ok && lambda_ok,
        format!(
            "worst p_hat/formula = {:.2} on even n in [12,24], factor-2 band [{}] (known discrepancy, see notes); fitted lambda {:.5} vs {:.5} (tol 0.01) [{}]",
            worst_ratio,
            if formula_ok { "ok" } else { "FAIL" },
            lambda_hat,
            lambda,
            if lambda_ok { "ok" } else { "FAIL" }
        ),
        t0,
    );
    if !formula_ok && lambda_ok {
        r.expected_discrepancies.push(
            "factor-2 band vs the printed amplitude: exact enumeration already sits 2.6x above it at n = 12".into(),
        );
    }
    Ok(r)
}

/// 9. Hyperbolic distance: exact anchors and two-route agreement.
pub fn criterion_9(quick: bool) -> Result<CriterionResult> {
    let t0 = Instant::now();
    let d_id = hyperbolic::hyperbolic_distance_of_matrix(&Matrix2::<f64>::identity())?;
    let t_hat = Matrix2::new(1.0, 1.0, 0.0, 1.0);
    let d_t = hyperbolic::hyperbolic_distance_of_matrix(&t_hat)?;
    let anchors_ok = d_id == 0.0 && (d_t - 1.5f64.acosh()).abs() <= 1e-12;
    // two-route agreement on random sigma-bar words of length <= 50
    let gens = hyperbolic::sigma_letter_matrices(1.0)?;
    let trials = scaled(10_000, quick, 1000);
    let mut worst = 0.0f64;
    for i in 0..trials {
        let mut rng = walk::sample_rng(0x5eed_0009, i);
        use rand::Rng;
        let len = rng.gen_range(1..=50);
        let mut m = Matrix2::<f64>::identity();
        for _ in 0..len {
            m = m.mul_ref(&gens[rng.gen_range(0..4)]);
        }
        let d1 = hyperbolic::hyperbolic_distance_of_matrix(&m)?;
        let img = hyperbolic::mobius_apply(&m, HyperbolicPoint::i())?;
        let d2 = point_pair_distance(HyperbolicPoint::i(), img);
        worst = worst.max((d1 - d2).abs());
    }
    let routes_ok = worst <= 1e-9;
    Ok(result(
        9,
        "Hyperbolic distance: anchors and trace vs point-pair routes",
        anchors_ok && routes_ok,
        format!(
            "d(I) = {d_id}; |d(T) - arccosh(3/2)| = {:.2e} (tol 1e-12); worst route disagreement {:.2e} over {} words (tol 1e-9)",
            (d_t - 1.5f64.acosh()).abs(),
            worst,
            trials
        ),
        t0,
    ))
}

/// 10. The cross-metric table: s_f gamma1^s/gamma1^d vs graph drifts.
pub fn criterion_10(quick: bool) -> Result<CriterionResult> {
    let t0 = Instant::now();
    let samples = scaled(1600, quick, 200);
    let rows = table1(10_000, samples, 0x5eed_0010)?;
    let tol = |id: TableRowId| -> f64 { match id {
        TableRowId::F4Symmetric => 0.01,
        _ => 0.005,
    }};
    let mut ok = true;
    let mut details = String::new();
    for row in &rows {
        let t = tol(row.id);
        let hit = (row.ratio - row.graph_drift).abs() <= t.max(3.0 * row.ratio_standard_error);
        ok &= hit;
        details.push_str(&format!(
            "{}: ratio {:.4} vs drift {:.4} (tol {t}) [{}]; ",
            row.group,
            row.ratio,
            row.graph_drift,
            if hit { "ok" } else { "FAIL" }
        ));
    }
    let fast = t0.elapsed().as_secs_f64() < 1200.0;
    Ok(result(
        10,
        "Cross-metric identity: Lyapunov ratios reproduce the graph drifts",
        ok && fast,
        format!("{details}{:.1}s", t0.elapsed().as_secs_f64()),
        t0,
    ))
}

/// 11. Invariant measure: iterated mu matches the MC theta histogram and the
/// measure-route gamma1 matches MC within 1% (Sanov free generators).
pub fn criterion_11(quick: bool) -> Result<CriterionResult> {
    let t0 = Instant::now();
    let bb = BackboneSpec::sanov()?;
    let gens = bb.generators.clone();
    let bins = 4096;
    let (measure_route, grid, sweeps) =
        lyapunov_from_invariant_measure(&gens, bins, 1e-9, 4000)?;
    let steps = scaled(20_000_000, quick, 1_000_000);
    let hist = mc_theta_histogram(&gens, bins, steps, 0x5eed_0011);
    let coarse = 32;
    let l1 = l1_distance(
        &aggregate_bins(&grid.weights, coarse),
        &aggregate_bins(&hist, coarse),
    );
    let l1_ok = l1 < 0.05;
    let mc = lyapunov_mc(&gens, 4000, scaled(3000, quick, 300), 0x5eed_0012)?;
    let gamma_ok = (measure_route.gamma1 - mc.gamma1).abs() <= 0.01 * mc.gamma1.abs();
    Ok(result(
        11,
        "Invariant measure (Sanov set): histogram match and gamma1 agreement",
        l1_ok && gamma_ok,
        format!(
            "L1(mu, MC) = {:.4} on {coarse} cells after {sweeps} sweeps (tol 0.05); gamma1 measure {:.5} vs MC {:.5} ({:.2}% apart, tol 1%)",
            l1,
            measure_route.gamma1,
            mc.gamma1,
            100.0 * (measure_route.gamma1 - mc.gamma1).abs() / mc.gamma1.abs()
        ),
        t0,
    ))
}

/// 12. Alexander invariants: exact divisibility, the torus-knot value, and
/// the growth rate at u = 1.2.
pub fn criterion_12(quick: bool) -> Result<CriterionResult> {
    let t0 = Instant::now();
    // (a) exact (1+t+t^2)-divisibility on random braids of length <= 40
    let trials = scaled(10_000, quick, 500);
    let mut failures = 0u64;
    for i in 0..trials {
        let mut rng = walk::sample_rng(0x5eed_0012, i);
        use rand::Rng;
        let len = rng.gen_range(1..=40);
        let letters: Vec<i32> = (0..len)
            .map(|_| [1, 2, -1, -2][rng.gen_range(0..4)])
            .collect();
        let word = crate::group::Word::new(Framing::braid_sigma(), letters).expect("letters");
        if alexander::alexander_polynomial(&word).is_err() {
            failures += 1;
        }
    }
    let div_ok = failures == 0;
    // (b) the torus value
    let d2 = crate::group::Word::new(Framing::braid_sigma(), vec![1, 2, 1, 2, 1, 2]).unwrap();
    let nabla = alexander::alexander_polynomial(&d2)?;
    let t = crate::laurent::LaurentPoly::t();
    let tm1 = t.clone() - crate::laurent::LaurentPoly::one();
    let torus_ok = nabla == tm1.clone() * tm1 * alexander::cyclotomic_factor();
    // (c) slope of <ln |nabla(u)|> vs n equals gamma1(u)/2 within 5% at u=1.2
    let u = 1.2;
    let gens = hyperbolic::sigma_letter_matrices(u)?;
    let gamma = lyapunov_mc(&gens, 4000, scaled(2000, quick, 200), 0x5eed_0120)?;
    let ns = [2000u64, 4000, 6000, 8000];
    let samples = scaled(2000, quick, 200);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (j, &n) in ns.iter().enumerate() {
        let stats = alexander::alexander_statistics(n, samples, u, 0x5eed_0121 + j as u64)?;
        xs.push(n as f64);
        ys.push(stats.mean_log_abs_nabla.mean);
    }
    let m = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    let slope_ok = (slope - gamma.gamma1 / 2.0).abs() <= 0.05 * (gamma.gamma1 / 2.0);
    Ok(result(
        12,
        "Alexander invariants: exact division, torus value, growth rate",
        div_ok && torus_ok && slope_ok,
        format!(
            "divisibility failures {failures}/{trials}; (s1 s2)^3 -> (t-1)^2(t^2+t+1) [{}]; slope {:.5} vs gamma1(1.2)/2 = {:.5} (tol 5%)",
            if torus_ok { "ok" } else { "FAIL" },
            slope,
            gamma.gamma1 / 2.0
        ),
        t0,
    ))
}

/// Run every criterion; `quick` trades sample counts for speed.
pub fn run_all(quick: bool) -> Vec<CriterionResult> {
    let runners: Vec<fn(bool) -> Result<CriterionResult>> = vec![
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
        criterion_12,
    ];
    runners
        .into_iter()
        .enumerate()
        .map(|(i, f)| match f(quick) {
            Ok(r) => r,
            Err(e) => CriterionResult {
                id: i as u32 + 1,
                name: format!("criterion {}", i + 1),
                passed: false,
                details: format!("error: {e}"),
                seconds: 0.0,
                expected_discrepancies: Vec::new(),
            },
        })
        .collect()
}

impl walk::ReturnProbRow {
    /// Binomial standard error with a half-count floor for zero hits.
    pub fn standard_error_proxy(&self) -> f64 {
        let p = (self.hits as f64 + 0.5) / (self.samples as f64 + 1.0);
        (p * (1.0 - p) / self.samples as f64).sqrt()
    }
}
