//! Monte Carlo Lyapunov exponents and the cross-metric drift identity.
//!
//! `gamma_1 = lim <ln Tr(w_n w_n^T)>/n` over random products of the letter
//! matrices. The directed backbone walk calibrates the hyperbolic length of
//! one backbone step; `s_f gamma_1^s / gamma_1^d` then reproduces the graph
//! drift of the corresponding framing (the cross-metric identity).

use super::measure::{iterate_invariant_measure, lyapunov_from_measure, DensityGrid};
use crate::error::{Error, Result};
use crate::group::{rep_f64, Framing, Matrix2};
use crate::walk::{parallel_estimate, LengthFunctional, WalkState};
use rand::Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LyapunovMethod {
    MeasureIntegral,
    MonteCarlo,
}

#[derive(Clone, Debug, Serialize)]
pub struct LyapunovResult {
    pub gamma1: f64,
    pub gamma2: f64,
    pub sigma2: f64,
    pub method: LyapunovMethod,
    /// Standard error of gamma1 (Monte Carlo only).
    pub standard_error: Option<f64>,
}

const RENORM_EVERY: u64 = 32;

/// `arccosh(Tr(w w^T)/2)` in log scale: the exact hyperbolic displacement of
/// one random product (0 at the identity), renormalized every 32 steps so the
/// accumulator stays inside the double range for any n used here.
fn product_displacement<R: Rng>(
    gens: &[Matrix2<f64>],
    inverse_of: Option<&[usize]>,
    n: u64,
    rng: &mut R,
) -> f64 {
    let k = gens.len();
    let mut m = Matrix2::<f64>::identity();
    let mut log_scale = 0.0f64;
    let mut prev: Option<usize> = None;
    for step in 0..n {
        let idx = match (inverse_of, prev) {
            (Some(inv), Some(p)) => {
                let r = rng.gen_range(0..k - 1);
                if r >= inv[p] {
                    r + 1
                } else {
                    r
                }
            }
            _ => rng.gen_range(0..k),
        };
        m = m.mul_ref(&gens[idx]);
        prev = Some(idx);
        if (step + 1) % RENORM_EVERY == 0 {
            let s = m.max_abs();
            assert!(s.is_finite() && s > 0.0, "renormalization failed: {s}");
            m = m.scale(1.0 / s);
            log_scale += s.ln();
        }
    }
    let ln_tr = m.trace_mmt().ln() + 2.0 * log_scale;
    // arccosh(e^x / 2) = x + ln((1 + sqrt(1 - 4 e^{-2x}))/2)
    if ln_tr > 40.0 {
        ln_tr - std::f64::consts::LN_2 + (1.0f64 + (1.0 - 4.0 * (-2.0 * ln_tr).exp()).sqrt()).ln()
    } else {
        (ln_tr.exp() / 2.0).max(1.0).acosh()
    }
}

fn finish_mc(mean: f64, variance_of_dn_over_n: f64, n: u64, se: f64) -> LyapunovResult {
    // Var(d_n/n) = sigma^2/n, so the per-step variance is n * sample variance
    let sigma2 = variance_of_dn_over_n * n as f64;
    LyapunovResult {
        gamma1: mean,
        gamma2: mean * mean + sigma2,
        sigma2,
        method: LyapunovMethod::MonteCarlo,
        standard_error: Some(se),
    }
}

/// `gamma_1` of the simple walk over the given letter matrices.
pub fn lyapunov_mc(
    gens: &[Matrix2<f64>],
    n: u64,
    samples: u64,
    seed: u64,
) -> Result<LyapunovResult> {
    if gens.is_empty() {
        return Err(Error::Config("empty generator set".into()));
    }
    let est = parallel_estimate(samples, seed, |_, rng| {
        product_displacement(gens, None, n, rng) / n as f64
    });
    Ok(finish_mc(est.mean, est.variance, n, est.standard_error))
}

/// `gamma_1` of the directed walk (no immediate backtracking). `inverse_of`
/// maps a generator index to the index of its inverse (itself for
/// idempotents).
pub fn lyapunov_mc_directed(
    gens: &[Matrix2<f64>],
    inverse_of: &[usize],
    n: u64,
    samples: u64,
    seed: u64,
) -> Result<LyapunovResult> {
    if gens.len() < 2 || inverse_of.len() != gens.len() {
        return Err(Error::Config("directed walk needs >= 2 generators".into()));
    }
    let est = parallel_estimate(samples, seed, |_, rng| {
        product_displacement(gens, Some(inverse_of), n, rng) / n as f64
    });
    Ok(finish_mc(est.mean, est.variance, n, est.standard_error))
}

/// Measure-integral route: iterate the invariant measure, then quadrature.
pub fn lyapunov_from_invariant_measure(
    gens: &[Matrix2<f64>],
    bins: usize,
    tol: f64,
    max_sweeps: usize,
) -> Result<(LyapunovResult, DensityGrid, usize)> {
    let (grid, sweeps) = iterate_invariant_measure(gens, bins, tol, max_sweeps)?;
    let (g1, g2, s2) = lyapunov_from_measure(gens, &grid);
    Ok((
        LyapunovResult {
            gamma1: g1,
            gamma2: g2,
            sigma2: s2,
            method: LyapunovMethod::MeasureIntegral,
            standard_error: None,
        },
        grid,
        sweeps,
    ))
}

/// The backbone free subgroup of a framing, with its scale factor.
#[derive(Clone, Debug)]
pub struct BackboneSpec {
    pub name: &'static str,
    pub generators: Vec<Matrix2<f64>>,
    pub inverse_of: Vec<usize>,
    pub scale_factor: f64,
}

impl BackboneSpec {
    /// `Psi(g_i) = b_q^{-i} a_2 b_q^i`: the idempotent free generators of the
    /// backbone tree of H_q (shared by the sigma-bar framing of PSL(2,Z)).
    pub fn hecke_backbone(q: u32) -> Result<BackboneSpec> {
        let rep = rep_f64(Framing::Hecke { q })?;
        let get = |l: i32| rep.iter().find(|(k, _)| *k == l).unwrap().1.clone();
        let a = get(1);
        let b = get(2);
        let binv = get(-2);
        let mut generators = Vec::with_capacity(q as usize);
        let mut bi = Matrix2::identity();
        let mut bmi = Matrix2::identity();
        for _ in 0..q {
            bi = bi.mul_ref(&b);
            bmi = binv.mul_ref(&bmi);
            generators.push(bmi.mul_ref(&a).mul_ref(&bi));
        }
        let inverse_of = (0..q as usize).collect();
        Ok(BackboneSpec {
            name: "F_q idempotent backbone",
            generators,
            inverse_of,
            scale_factor: 1.0,
        })
    }

    /// The Sanov pair and inverses: the free rank-2 backbone of the
    /// 4-regular-tree framing.
    pub fn sanov() -> Result<BackboneSpec> {
        let rep = rep_f64(Framing::FreeSymmetric { rank: 2 })?;
        let get = |l: i32| rep.iter().find(|(k, _)| *k == l).unwrap().1.clone();
        Ok(BackboneSpec {
            name: "F_2 symmetric (Sanov)",
            generators: vec![get(1), get(2), get(-1), get(-2)],
            inverse_of: vec![2, 3, 0, 1],
            scale_factor: 1.0,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TableRowId {
    F3Idempotent,
    F4Symmetric,
    H3,
    PslSigma,
}

impl TableRowId {
    pub fn all() -> [TableRowId; 4] {
        [
            TableRowId::F3Idempotent,
            TableRowId::F4Symmetric,
            TableRowId::H3,
            TableRowId::PslSigma,
        ]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub id: TableRowId,
    pub group: String,
    pub generators: String,
    pub backbone: String,
    pub scale_factor: f64,
    pub gamma1_simple: f64,
    pub gamma1_directed: f64,
    pub ratio: f64,
    pub ratio_standard_error: f64,
    pub graph_drift: f64,
}

fn row_config(id: TableRowId) -> Result<(&'static str, &'static str, Framing, BackboneSpec, f64, f64)> {
    Ok(match id {
        TableRowId::F3Idempotent => (
            "F3",
            "g1,g2,g3",
            Framing::FreeIdempotent { rank: 3 },
            BackboneSpec::hecke_backbone(3)?,
            1.0,
            1.0 / 3.0,
        ),
        TableRowId::F4Symmetric => (
            "F4",
            "h1,h2,h1^-1,h2^-1",
            Framing::FreeSymmetric { rank: 2 },
            BackboneSpec::sanov()?,
            1.0,
            0.5,
        ),
        TableRowId::H3 => (
            "H3",
            "a2,b3,b3^-1",
            Framing::PSL2Z,
            BackboneSpec::hecke_backbone(3)?,
            2.0,
            2.0 / 15.0,
        ),
        TableRowId::PslSigma => (
            "PSL(2,Z)",
            "sb1,sb2,sb1^-1,sb2^-1",
            Framing::modular_sigma(),
            BackboneSpec::hecke_backbone(3)?,
            1.0,
            0.25,
        ),
    })
}

/// One row of the cross-metric table: `s_f gamma_1^s / gamma_1^d` compared to
/// the graph drift of the same framing.
pub fn table1_row(id: TableRowId, n: u64, samples: u64, seed: u64) -> Result<Table1Row> {
    let (group, gens_name, framing, backbone, s_f, drift) = row_config(id)?;
    let rep = rep_f64(framing)?;
    let letter_matrices: Vec<Matrix2<f64>> = rep.into_iter().map(|(_, m)| m).collect();
    let simple = lyapunov_mc(&letter_matrices, n, samples, seed)?;
    let directed = lyapunov_mc_directed(
        &backbone.generators,
        &backbone.inverse_of,
        n,
        samples,
        seed.wrapping_add(1),
    )?;
    let ratio = s_f * simple.gamma1 / directed.gamma1;
    let rel = (simple.standard_error.unwrap() / simple.gamma1)
        .hypot(directed.standard_error.unwrap() / directed.gamma1);
    Ok(Table1Row {
        id,
        group: group.into(),
        generators: gens_name.into(),
        backbone: backbone.name.into(),
        scale_factor: s_f,
        gamma1_simple: simple.gamma1,
        gamma1_directed: directed.gamma1,
        ratio,
        ratio_standard_error: ratio.abs() * rel,
        graph_drift: drift,
    })
}

/// All four rows.
pub fn table1(n: u64, samples: u64, seed: u64) -> Result<Vec<Table1Row>> {
    TableRowId::all()
        .into_iter()
        .map(|id| table1_row(id, n, samples, seed))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub framing: String,
    pub n: u64,
    pub samples: u64,
    pub mean_length_over_n: f64,
    pub mean_log_trace_over_n: f64,
    pub gamma1_directed: f64,
    pub scale_factor: f64,
    /// `<L> / ((s_f/gamma_1^d) <ln Tr(w w^T)>)`.
    pub ratio: f64,
    pub ratio_standard_error: f64,
}

/// Check `<L(w)> = (s_f / gamma_1^d) <ln Tr(w w^T)>` on matched samples:
/// the same letter sequences feed both the word length and the matrix product.
pub fn check_length_trace_relation(
    id: TableRowId,
    n: u64,
    samples: u64,
    seed: u64,
) -> Result<RelationReport> {
    let (_, _, framing, backbone, s_f, _) = row_config(id)?;
    let functional = match id {
        TableRowId::PslSigma => LengthFunctional::BackboneGeneration,
        _ => LengthFunctional::GraphLength,
    };
    let rep = rep_f64(framing)?;
    let moves = framing.moves();
    let mats: Vec<Matrix2<f64>> = moves
        .iter()
        .map(|l| rep.iter().find(|(k, _)| k == l).unwrap().1.clone())
        .collect();

    let len_est = parallel_estimate(samples, seed, |_, rng| {
        let mut st = WalkState::new(framing).expect("framing");
        for _ in 0..n {
            st.apply(moves[rng.gen_range(0..moves.len())]);
        }
        functional.evaluate(&st) / n as f64
    });
    let tr_est = parallel_estimate(samples, seed, |_, rng| {
        let mut m = Matrix2::<f64>::identity();
        let mut log_scale = 0.0;
        for step in 0..n {
            m = m.mul_ref(&mats[rng.gen_range(0..moves.len())]);
            if (step + 1) % RENORM_EVERY == 0 {
                let s = m.max_abs();
                m = m.scale(1.0 / s);
                log_scale += s.ln();
            }
        }
        (m.trace_mmt().ln() + 2.0 * log_scale) / n as f64
    });
    let directed = lyapunov_mc_directed(
        &backbone.generators,
        &backbone.inverse_of,
        n,
        samples,
        seed.wrapping_add(2),
    )?;
    let rhs = s_f / directed.gamma1 * tr_est.mean;
    let ratio = len_est.mean / rhs;
    let rel = (len_est.standard_error / len_est.mean)
        .hypot(tr_est.standard_error / tr_est.mean)
        .hypot(directed.standard_error.unwrap() / directed.gamma1);
    Ok(RelationReport {
        framing: framing.to_string(),
        n,
        samples,
        mean_length_over_n: len_est.mean,
        mean_log_trace_over_n: tr_est.mean,
        gamma1_directed: directed.gamma1,
        scale_factor: s_f,
        ratio,
        ratio_standard_error: ratio.abs() * rel,
    })
}

/// The sigma letter matrices of PSL(2,Z)_u / B3 at deformation u (det 1).
pub fn sigma_letter_matrices(u: f64) -> Result<Vec<Matrix2<f64>>> {
    let rep = rep_f64(Framing::ModularSigma { u })?;
    Ok(rep.into_iter().map(|(_, m)| m).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::sample_rng;

    #[test]
    fn directed_on_tree_is_tightly_concentrated() {
        let bb = BackboneSpec::sanov().unwrap();
        let r = lyapunov_mc_directed(&bb.generators, &bb.inverse_of, 400, 200, 5).unwrap();
        assert!(r.gamma1 > 0.5, "gamma1^d = {}", r.gamma1);
        assert!(r.standard_error.unwrap() < 0.05);
    }

    #[test]
    fn identity_generators_give_zero() {
        let gens = vec![Matrix2::identity(), Matrix2::identity()];
        let r = lyapunov_mc(&gens, 100, 50, 3).unwrap();
        assert_eq!(r.gamma1, 0.0);
        assert_eq!(r.sigma2, 0.0);
    }

    #[test]
    fn gamma2_dominates_gamma1_squared() {
        let gens = sigma_letter_matrices(1.0).unwrap();
        let r = lyapunov_mc(&gens, 200, 400, 7).unwrap();
        assert!(r.gamma2 >= r.gamma1 * r.gamma1);
    }

    #[test]
    fn product_displacement_deterministic() {
        let gens = sigma_letter_matrices(1.0).unwrap();
        let mut r1 = sample_rng(9, 4);
        let mut r2 = sample_rng(9, 4);
        let a = product_displacement(&gens, None, 333, &mut r1);
        let b = product_displacement(&gens, None, 333, &mut r2);
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
