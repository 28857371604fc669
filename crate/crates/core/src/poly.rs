//! Algebraic polynomials with roots on the unit circle.
//!
//! Coefficients are carried in a log-scaled form (unit phase plus natural-log
//! magnitude) so that the differentiation operator, circular Laguerre
//! polynomials and finite free multiplicative convolutions stay usable far
//! beyond the range of direct f64 coefficients. A direct coefficient vector
//! is kept alongside whenever it is representable.

use crate::error::{Error, Result};
use crate::util::{ln_binomial, wrap_angle, NeumaierSumC};
use num_complex::Complex64;

/// Largest log-magnitude for which the direct coefficient form is kept.
pub const DIRECT_LOG_CAP: f64 = 700.0;
/// Degree cap for direct expansion in `poly_from_angles`.
pub const FROM_ANGLES_CAP: usize = 64;

/// One coefficient in sign-phase / log-magnitude form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogCoeff {
    /// Unit-modulus phase, or 0 for a vanishing coefficient.
    pub phase: Complex64,
    /// ln |a_j|; -inf for a vanishing coefficient.
    pub log_mag: f64,
}

impl LogCoeff {
    pub fn zero() -> Self {
        LogCoeff { phase: Complex64::new(0.0, 0.0), log_mag: f64::NEG_INFINITY }
    }

    pub fn from_complex(a: Complex64) -> Self {
        let m = a.norm();
        if m == 0.0 {
            Self::zero()
        } else {
            LogCoeff { phase: a / m, log_mag: m.ln() }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    /// Direct value; may overflow to inf for log_mag > ~709.
    pub fn value(&self) -> Complex64 {
        if self.is_zero() {
            Complex64::new(0.0, 0.0)
        } else {
            self.phase * self.log_mag.exp()
        }
    }
}

/// Degree-n polynomial with all roots on the unit circle.
#[derive(Clone, Debug)]
pub struct UnitPoly {
    n: usize,
    log: Vec<LogCoeff>,
    coeffs: Option<Vec<Complex64>>,
    self_inversive: bool,
}

impl UnitPoly {
    /// Build from direct coefficients; a_n must be nonzero.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidInput("degree must be at least 1".into()));
        }
        let n = coeffs.len() - 1;
        if coeffs[n].norm() == 0.0 {
            return Err(Error::InvalidInput("leading coefficient is zero".into()));
        }
        let log = coeffs.iter().map(|&a| LogCoeff::from_complex(a)).collect();
        let mut p = UnitPoly { n, log, coeffs: Some(coeffs), self_inversive: false };
        p.self_inversive = p.check_self_inversive(1e-12);
        Ok(p)
    }

    pub(crate) fn from_log(log: Vec<LogCoeff>, self_inversive: bool) -> Self {
        let n = log.len() - 1;
        let mut p = UnitPoly { n, log, coeffs: None, self_inversive };
        p.refresh_coeffs();
        p
    }

    fn refresh_coeffs(&mut self) {
        let representable = self
            .log
            .iter()
            .all(|c| c.is_zero() || c.log_mag.abs() <= DIRECT_LOG_CAP);
        self.coeffs = representable.then(|| self.log.iter().map(|c| c.value()).collect());
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn log_form(&self) -> &[LogCoeff] {
        &self.log
    }

    /// Direct coefficients, when representable in f64.
    pub fn coeffs(&self) -> Result<&[Complex64]> {
        self.coeffs.as_deref().ok_or(Error::CoeffsUnavailable)
    }

    pub fn is_self_inversive(&self) -> bool {
        self.self_inversive
    }

    fn check_self_inversive(&self, tol: f64) -> bool {
        (0..=self.n).all(|j| {
            let a = &self.log[j];
            let b = &self.log[self.n - j];
            if a.is_zero() || b.is_zero() {
                return a.is_zero() && b.is_zero();
            }
            // a_j = conj(a_{n-j}): compare logs and phases
            let dl = a.log_mag - b.log_mag;
            (a.phase - b.phase.conj()).norm() < tol && dl.abs() < tol
        })
    }

    /// Evaluate P at a point from the log form (rescaled internally).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let m = self
            .log
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.log_mag)
            .fold(f64::NEG_INFINITY, f64::max);
        let mut acc = NeumaierSumC::new();
        let mut zj = Complex64::new(1.0, 0.0);
        for c in &self.log {
            if !c.is_zero() {
                acc.add(c.phase * (c.log_mag - m).exp() * zj);
            }
            zj *= z;
        }
        acc.value() * m.exp()
    }
}

/// Circular Laguerre polynomial L_{n,k}(z) = i^k sum_j (-1)^{n-j} C(n,j) (j - n/2)^k z^j.
pub fn laguerre(n: usize, k: usize) -> UnitPoly {
    assert!(n >= 1, "degree must be positive");
    let i_pow_k = i_pow(k);
    let mut lnfacts = Vec::with_capacity(n + 2);
    lnfacts.push(0.0);
    for i in 1..=n {
        lnfacts.push(lnfacts[i - 1] + (i as f64).ln());
    }
    let lnc = |j: usize| lnfacts[n] - lnfacts[j] - lnfacts[n - j];
    let log = (0..=n)
        .map(|j| {
            let two_m = 2 * j as i64 - n as i64; // 2(j - n/2)
            if two_m == 0 && k > 0 {
                return LogCoeff::zero();
            }
            let mag = lnc(j)
                + if k > 0 {
                    k as f64 * ((two_m.unsigned_abs() as f64).ln() - std::f64::consts::LN_2)
                } else {
                    0.0
                };
            let sign_m = if two_m < 0 && k % 2 == 1 { -1.0 } else { 1.0 };
            let sign_nj = if (n - j) % 2 == 1 { -1.0 } else { 1.0 };
            LogCoeff { phase: i_pow_k * sign_m * sign_nj, log_mag: mag }
        })
        .collect();
    UnitPoly::from_log(log, n % 2 == 0)
}

fn i_pow(k: usize) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// The operator D_n: coefficient-wise a_j -> i (j - n/2) a_j.
pub fn apply_d(p: &UnitPoly) -> UnitPoly {
    let n = p.degree();
    let log = p
        .log_form()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            if c.is_zero() {
                return LogCoeff::zero();
            }
            let two_m = 2 * j as i64 - n as i64;
            if two_m == 0 {
                return LogCoeff::zero();
            }
            let s = if two_m < 0 { -1.0 } else { 1.0 };
            LogCoeff {
                phase: c.phase * Complex64::new(0.0, s),
                log_mag: c.log_mag + (two_m.unsigned_abs() as f64).ln() - std::f64::consts::LN_2,
            }
        })
        .collect();
    UnitPoly::from_log(log, p.is_self_inversive())
}

/// Finite free multiplicative convolution: coefficients (-1)^{n-j} alpha_j beta_j / C(n,j).
pub fn ffm_conv(p: &UnitPoly, q: &UnitPoly) -> Result<UnitPoly> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch { left: p.degree(), right: q.degree() });
    }
    let n = p.degree();
    let log = (0..=n)
        .map(|j| {
            let a = &p.log_form()[j];
            let b = &q.log_form()[j];
            if a.is_zero() || b.is_zero() {
                return LogCoeff::zero();
            }
            let sign = if (n - j) % 2 == 1 { -1.0 } else { 1.0 };
            LogCoeff {
                phase: a.phase * b.phase * sign,
                log_mag: a.log_mag + b.log_mag - ln_binomial(n, j),
            }
        })
        .collect();
    Ok(UnitPoly::from_log(log, p.is_self_inversive() && q.is_self_inversive()))
}

/// Multiset of root angles in [-pi, pi) with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalAngles {
    entries: Vec<(f64, usize)>,
    total: usize,
}

impl EmpiricalAngles {
    /// Build from (angle, multiplicity) pairs; angles are wrapped, merged and sorted.
    pub fn new(pairs: impl IntoIterator<Item = (f64, usize)>) -> Result<Self> {
        let mut entries: Vec<(f64, usize)> = Vec::new();
        for (a, m) in pairs {
            if m == 0 {
                continue;
            }
            if !a.is_finite() {
                return Err(Error::InvalidInput("non-finite angle".into()));
            }
            entries.push((wrap_angle(a), m));
        }
        entries.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut merged: Vec<(f64, usize)> = Vec::with_capacity(entries.len());
        for (a, m) in entries {
            match merged.last_mut() {
                Some((b, mm)) if *b == a => *mm += m,
                _ => merged.push((a, m)),
            }
        }
        let total = merged.iter().map(|e| e.1).sum();
        if total == 0 {
            return Err(Error::InvalidInput("empty angle multiset".into()));
        }
        Ok(EmpiricalAngles { entries: merged, total })
    }

    pub fn from_simple(angles: impl IntoIterator<Item = f64>) -> Result<Self> {
        Self::new(angles.into_iter().map(|a| (a, 1)))
    }

    pub fn entries(&self) -> &[(f64, usize)] {
        &self.entries
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Angles repeated by multiplicity, ascending.
    pub fn expanded(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.total);
        for &(a, m) in &self.entries {
            v.extend(std::iter::repeat(a).take(m));
        }
        v
    }

    /// m_l = (1/total) sum mult_j e^{i l theta_j} for l = 1..=lmax.
    pub fn moments(&self, lmax: usize) -> Vec<Complex64> {
        assert!(lmax >= 1);
        (1..=lmax)
            .map(|l| {
                let mut acc = NeumaierSumC::new();
                for &(a, m) in &self.entries {
                    acc.add(Complex64::from_polar(m as f64, l as f64 * a));
                }
                acc.value() / self.total as f64
            })
            .collect()
    }

    /// Empirical psi-transform (i / 2 total) sum mult cot((theta - theta_j)/2) - 1/2,
    /// for Im theta > 0.
    pub fn psi(&self, theta: Complex64) -> Result<Complex64> {
        if theta.im <= 0.0 {
            return Err(Error::InvalidInput("psi requires Im theta > 0".into()));
        }
        let mut acc = NeumaierSumC::new();
        for &(a, m) in &self.entries {
            acc.add(crate::util::cot_upper((theta - a) / 2.0) * m as f64);
        }
        Ok(Complex64::i() / (2.0 * self.total as f64) * acc.value() - 0.5)
    }
}

/// Self-inversive polynomial with the canonical normalization
/// a_n = (2i)^{-n} prod e^{-i theta_j / 2}, expanded directly.
pub fn poly_from_angles(angles: &EmpiricalAngles) -> Result<UnitPoly> {
    let n = angles.total();
    if n > FROM_ANGLES_CAP {
        return Err(Error::DegreeCap(n, FROM_ANGLES_CAP));
    }
    let mut coeffs = expand_roots(angles);
    // canonical leading coefficient
    let half_sum: f64 = angles.entries().iter().map(|&(a, m)| a * m as f64).sum::<f64>() / 2.0;
    let lead = i_pow(4 - n % 4) * 2f64.powi(-(n as i32)) * Complex64::from_polar(1.0, -half_sum);
    for c in coeffs.iter_mut() {
        *c *= lead;
    }
    // enforce a_j = conj(a_{n-j}) exactly
    for j in 0..=(n / 2) {
        let avg = (coeffs[j] + coeffs[n - j].conj()) / 2.0;
        coeffs[j] = avg;
        coeffs[n - j] = avg.conj();
    }
    let log = coeffs.iter().map(|&a| LogCoeff::from_complex(a)).collect();
    Ok(UnitPoly::from_log(log, true))
}

/// Monic expansion of prod (z - e^{i theta_j}).
pub(crate) fn expand_roots(angles: &EmpiricalAngles) -> Vec<Complex64> {
    let n = angles.total();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);
    let mut deg = 0;
    for &(a, m) in angles.entries() {
        let u = Complex64::from_polar(1.0, a);
        for _ in 0..m {
            // multiply by (z - u) in place, descending
            coeffs[deg + 1] = coeffs[deg];
            for j in (1..=deg).rev() {
                let t = coeffs[j];
                coeffs[j] = coeffs[j - 1] - u * t;
            }
            coeffs[0] *= -u;
            deg += 1;
        }
    }
    coeffs
}
