//! Desk-scale verification harness: Laguerre zero statistics against the
//! free unitary Poisson law, the derivative flow on general root multisets,
//! finite-n log-growth against the limit formulas, the minimal-angle
//! comparison, and Monte Carlo products of random reflections.

use crate::error::{Error, Result};
use crate::poisson::{self, CircularLaw};
use crate::poly::{ffm_conv, laguerre, EmpiricalAngles};
use crate::roots::{angle_deriv_roots, laguerre_roots};
use crate::series::conv_moments;
use crate::trig::laguerre_log_w;
use crate::zeta;
use crate::eigen::symmetric_eigenvalues;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::time::Instant;

/// Summary of one convergence experiment.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ConvergenceReport {
    pub n: usize,
    pub k: usize,
    pub t: f64,
    /// |m_l(empirical) - m_l(reference)| for l = 1..=lmax.
    pub moment_errors: Vec<f64>,
    pub kolmogorov: f64,
    pub min_positive_angle: f64,
    pub runtime_ms: u128,
    /// k = 0 input passes through unchanged.
    pub passthrough: bool,
    /// Set when the input first moment vanishes and the moment comparison
    /// is not available.
    pub degraded: bool,
}

/// Kolmogorov distance on the circle with the cut at -pi; the reference
/// atom at angle 0 is matched against the empirical jump there.
pub fn kolmogorov_circle(empirical: &EmpiricalAngles, law: &CircularLaw) -> f64 {
    let n = empirical.total() as f64;
    let mut below = 0usize;
    let mut d: f64 = 0.0;
    for &(a, m) in empirical.entries() {
        let upto = below + m;
        d = d.max((law.cdf_left(a) - below as f64 / n).abs());
        d = d.max((law.cdf(a) - upto as f64 / n).abs());
        below = upto;
    }
    d
}

/// Zeros of L_{n, round(t n)} against the free unitary Poisson law.
pub fn laguerre_convergence(n: usize, t: f64, lmax: usize) -> Result<ConvergenceReport> {
    let start = Instant::now();
    let k = (t * n as f64).round() as usize;
    let t_eff = k as f64 / n as f64;
    if k == 0 {
        return Ok(ConvergenceReport {
            n,
            k,
            t,
            moment_errors: vec![0.0; lmax],
            kolmogorov: 0.0,
            min_positive_angle: f64::NAN,
            runtime_ms: start.elapsed().as_millis(),
            passthrough: true,
            degraded: false,
        });
    }
    let roots = laguerre_roots(n, k, 0)?;
    let law = CircularLaw::new(t_eff)?;
    let ms = roots.moments(lmax);
    let moment_errors = ms
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let want = poisson::moment(t_eff, (i + 1) as i64).unwrap_or(f64::NAN);
            (m - want).norm()
        })
        .collect();
    let kolmogorov = kolmogorov_circle(&roots, &law);
    Ok(ConvergenceReport {
        n,
        k,
        t,
        moment_errors,
        kolmogorov,
        min_positive_angle: min_positive(&roots),
        runtime_ms: start.elapsed().as_millis(),
        passthrough: false,
        degraded: false,
    })
}

fn min_positive(angles: &EmpiricalAngles) -> f64 {
    angles
        .entries()
        .iter()
        .filter(|&&(a, _)| a > 1e-9)
        .map(|&(a, _)| a)
        .fold(f64::INFINITY, f64::min)
}

/// Smallest positive zero angle of L_{n, round(t n)}, excluding the angle-0
/// root; the conjectured limit is 2 x_t.
pub fn minimal_angle(n: usize, t: f64) -> Result<f64> {
    let k = (t * n as f64).round() as usize;
    if k == 0 || k >= n {
        return Err(Error::InvalidInput(format!("minimal_angle needs 0 < round(t n) < n, got k={k}")));
    }
    Ok(min_positive(&laguerre_roots(n, k, 0)?))
}

/// Apply the derivative flow (k = round(t * total) differentiations) to a
/// root multiset and compare against the series-engine prediction for
/// nu boxtimes Pi_t.
pub fn derivative_flow(input: &EmpiricalAngles, t: f64, lmax: usize) -> Result<ConvergenceReport> {
    let start = Instant::now();
    let n = input.total();
    let k = (t * n as f64).round() as usize;
    let t_eff = k as f64 / n as f64;
    if k == 0 {
        return Ok(ConvergenceReport {
            n,
            k,
            t,
            moment_errors: vec![0.0; lmax],
            kolmogorov: 0.0,
            min_positive_angle: f64::NAN,
            runtime_ms: start.elapsed().as_millis(),
            passthrough: true,
            degraded: false,
        });
    }
    let roots = angle_deriv_roots(input, k, 0)?;
    let got = roots.moments(lmax);
    let input_moments = input.moments(lmax.max(2) * 2);
    let degraded = input_moments[0].norm() < 1e-9;
    let (moment_errors, kolmogorov) = if degraded {
        let law = CircularLaw::new(t_eff)?;
        (Vec::new(), kolmogorov_circle(&roots, &law))
    } else {
        let want = conv_moments(&input_moments, t_eff, lmax)?;
        let errs = got.iter().zip(&want).map(|(g, w)| (g - w).norm()).collect();
        (errs, f64::NAN)
    };
    Ok(ConvergenceReport {
        n,
        k,
        t,
        moment_errors,
        kolmogorov,
        min_positive_angle: min_positive(&roots),
        runtime_ms: start.elapsed().as_millis(),
        passthrough: false,
        degraded,
    })
}

/// Finite-n log-growth data against the limit formulas.
#[derive(Clone, Debug, serde::Serialize)]
pub struct LogGrowthReport {
    pub n: usize,
    pub k: usize,
    pub lhs_log: f64,
    pub lhs_logderiv: (f64, f64),
    pub rhs_log: f64,
    pub rhs_logderiv: (f64, f64),
}

/// (1/n) ln |W_{n,k}| and (1/n) W'/W at a complex point, next to the limits
/// ln|sin zeta_t(theta/2)| - t ln|2 zeta - theta| and t/(2 zeta - theta).
pub fn log_growth_check(n: usize, k: usize, theta: Complex64) -> Result<LogGrowthReport> {
    if theta.im < 0.2 {
        return Err(Error::InvalidInput("log growth check needs Im theta >= 0.2".into()));
    }
    let (lhs_log, lhs_d) = laguerre_log_w(n, k, theta)?;
    let t = k as f64 / n as f64;
    let z = zeta::zeta(t, theta / 2.0)?.zeta;
    let rhs_log = z.sin().norm().ln() - t * (2.0 * z - theta).norm().ln();
    let rhs_d = t / (2.0 * z - theta);
    Ok(LogGrowthReport {
        n,
        k,
        lhs_log,
        lhs_logderiv: (lhs_d.re, lhs_d.im),
        rhs_log,
        rhs_logderiv: (rhs_d.re, rhs_d.im),
    })
}

/// Monte Carlo study of products of k random reflections in O(n).
#[derive(Clone, Debug, serde::Serialize)]
pub struct ReflectionRun {
    pub n: usize,
    pub k: usize,
    pub samples: usize,
    pub seed: u64,
    /// Pooled eigenvalue angles over all samples, sorted.
    pub eigen_angles: Vec<f64>,
    /// Sample mean of the (monic) characteristic polynomial, a_0..a_n.
    pub estimated_charpoly: Vec<f64>,
    /// Standard error per coefficient.
    pub charpoly_se: Vec<f64>,
    pub skipped: usize,
}

pub fn reflections_mc(n: usize, k: usize, samples: usize, seed: u64) -> Result<ReflectionRun> {
    if n < 1 || n > 64 {
        return Err(Error::InvalidInput(format!("reflections need 1 <= n <= 64, got {n}")));
    }
    if samples == 0 || samples > 1_000_000 {
        return Err(Error::InvalidInput(format!("samples must be in 1..=1e6, got {samples}")));
    }
    let per_sample: Vec<Option<(Vec<f64>, Vec<f64>)>> = (0..samples)
        .into_par_iter()
        .map(|i| one_reflection_sample(n, k, seed, i as u64))
        .collect();
    let mut eigen_angles = Vec::with_capacity(samples * n);
    let mut mean = vec![0.0f64; n + 1];
    let mut m2 = vec![0.0f64; n + 1];
    let mut kept = 0usize;
    for s in per_sample.into_iter().flatten() {
        let (angles, charpoly) = s;
        kept += 1;
        eigen_angles.extend(angles);
        // Welford per coefficient
        for j in 0..=n {
            let delta = charpoly[j] - mean[j];
            mean[j] += delta / kept as f64;
            m2[j] += delta * (charpoly[j] - mean[j]);
        }
    }
    let skipped = samples - kept;
    if skipped * 100 > samples {
        return Err(Error::NonConvergence {
            context: format!("{skipped} of {samples} reflection samples skipped"),
            residual: skipped as f64 / samples as f64,
            iterations: samples,
        });
    }
    eigen_angles.sort_by(f64::total_cmp);
    let charpoly_se = m2
        .iter()
        .map(|&v| if kept > 1 { (v / (kept as f64 - 1.0)).sqrt() / (kept as f64).sqrt() } else { 0.0 })
        .collect();
    Ok(ReflectionRun {
        n,
        k,
        samples,
        seed,
        eigen_angles,
        estimated_charpoly: mean,
        charpoly_se,
        skipped,
    })
}

/// One product of k reflections: eigen angles and monic charpoly (a_0..a_n),
/// or None when the eigenvalue routine leaves the unit circle.
fn one_reflection_sample(n: usize, k: usize, seed: u64, stream: u64) -> Option<(Vec<f64>, Vec<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream.wrapping_add(1));
    let mut p = DMatrix::<f64>::identity(n, n);
    for _ in 0..k {
        let u = random_unit_vector(n, &mut rng);
        // p <- (I - 2 u u^T) p
        let up = u.transpose() * &p;
        p -= 2.0 * &u * up;
    }
    let eig = p.complex_eigenvalues();
    let mut angles = Vec::with_capacity(n);
    for lam in eig.iter() {
        if (lam.norm() - 1.0).abs() > 1e-8 {
            return None;
        }
        angles.push(crate::util::wrap_angle(lam.arg()));
    }
    // monic charpoly from eigenvalues; coefficients are real for a real matrix
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);
    let mut deg = 0;
    for lam in eig.iter() {
        coeffs[deg + 1] = coeffs[deg];
        for j in (1..=deg).rev() {
            let t = coeffs[j];
            coeffs[j] = coeffs[j - 1] - lam * t;
        }
        coeffs[0] *= -lam;
        deg += 1;
    }
    angles.sort_by(f64::total_cmp);
    Some((angles, coeffs.iter().map(|c| c.re).collect()))
}

fn random_unit_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Box-Muller standard normal.
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

/// The expected characteristic polynomial of k reflections through the
/// finite free convolution: ((z+1)(z-1)^{n-1})^{boxtimes k}, normalized monic.
pub fn reflection_charpoly_target(n: usize, k: usize) -> Result<Vec<f64>> {
    let base = laguerre(n, 1);
    let mut acc = laguerre(n, 0);
    for _ in 0..k {
        acc = ffm_conv(&acc, &base)?;
    }
    // normalize monic in log form
    let lead = acc.log_form()[n];
    let coeffs: Vec<f64> = acc
        .log_form()
        .iter()
        .map(|c| {
            if c.is_zero() {
                0.0
            } else {
                let v = (c.phase / lead.phase) * (c.log_mag - lead.log_mag).exp();
                v.re
            }
        })
        .collect();
    Ok(coeffs)
}

/// Laguerre polynomial built through repeated finite free convolution of
/// L_{n,1}, validated against the closed form, then compared to the law.
pub fn poisson_limit_finite_n(n: usize, t: f64, lmax: usize) -> Result<Vec<f64>> {
    let k = (t * n as f64).round() as usize;
    let base = laguerre(n, 1);
    let mut acc = laguerre(n, 0);
    for _ in 0..k {
        acc = ffm_conv(&acc, &base)?;
    }
    let closed = laguerre(n, k);
    for j in 0..=n {
        let (a, b) = (acc.log_form()[j], closed.log_form()[j]);
        if a.is_zero() || b.is_zero() {
            if !(a.is_zero() && b.is_zero()) {
                return Err(Error::InvalidInput(format!("convolution power mismatch at coefficient {j}")));
            }
            continue;
        }
        if (a.log_mag - b.log_mag).abs() > 1e-9 || (a.phase - b.phase).norm() > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "convolution power disagrees with the closed form at coefficient {j}"
            )));
        }
    }
    let t_eff = k as f64 / n as f64;
    let roots = laguerre_roots(n, k, 0)?;
    Ok(roots
        .moments(lmax)
        .iter()
        .enumerate()
        .map(|(i, m)| (m - poisson::moment(t_eff, (i + 1) as i64).unwrap_or(f64::NAN)).norm())
        .collect())
}
