//! The free unitary Poisson law: atoms, density, support, moments,
//! transforms, CDF/quantiles/sampling and the Fourier-series density.

use crate::error::{Error, Result};
use crate::quad::integrate;
use crate::util::wrap_angle;
use crate::zeta::{self, x_gap};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::sync::OnceLock;

const CRIT_WINDOW: f64 = 1e-12;

/// Atom weight at angle 0: 1-t below the critical point, 0 at and above it.
pub fn atom_weight(t: f64) -> f64 {
    if t < 1.0 {
        1.0 - t
    } else {
        0.0
    }
}

/// Density of the absolutely continuous part w.r.t. the length measure,
/// f(theta) = -(1/2pi) Im cot zeta_t(theta/2). Exactly 0 inside the
/// sub-critical gap; +inf at the critical singularity (t=1, theta=0).
pub fn density(t: f64, theta: f64) -> Result<f64> {
    if !(t > 0.0) || !theta.is_finite() {
        return Err(Error::InvalidInput(format!("density needs t > 0, finite theta; got {t}, {theta}")));
    }
    let th = wrap_angle(theta);
    if t < 1.0 - CRIT_WINDOW && th.abs() <= 2.0 * x_gap(t) {
        return Ok(0.0);
    }
    if (t - 1.0).abs() <= CRIT_WINDOW && th == 0.0 {
        return Ok(f64::INFINITY);
    }
    let z = zeta::zeta(t, Complex64::new(th / 2.0, 0.0))?;
    if z.zeta.im == 0.0 {
        return Ok(0.0);
    }
    let f = -crate::util::cot_upper(z.zeta).im / (2.0 * PI);
    Ok(f.max(0.0))
}

/// Exact moment polynomial p_l(t) as a rational number at the dyadic t.
fn p_poly(l: usize, t: &BigRational) -> BigRational {
    let mut acc = BigRational::from_integer(BigInt::from(1));
    if l == 0 {
        return acc;
    }
    let fact = |m: usize| -> BigInt {
        let mut f = BigInt::from(1);
        for i in 2..=m {
            f *= BigInt::from(i as u64);
        }
        f
    };
    let fl1 = fact(l - 1);
    let two_lt = BigRational::from_integer(BigInt::from(2 * l as u64)) * t;
    for a in 1..l {
        // (2lt)^a
        let mut pow_a = BigRational::from_integer(BigInt::from(1));
        for _ in 0..a {
            pow_a *= &two_lt;
        }
        for b in 0..=(l - 1 - a) {
            let c = l - 1 - a - b;
            let multinom = &fl1 / (fact(a) * fact(b) * fact(c));
            let num = multinom * (BigInt::from(1) << (a + b + 1)) * if b % 2 == 1 { -1 } else { 1 };
            let den = fact(a - 1) * BigInt::from((a + b) as u64) * BigInt::from((a + b + 1) as u64);
            acc += BigRational::new(num, den * 2) * &pow_a;
        }
    }
    acc
}

/// l-th moment of the law: e^{-2|l|t} p_|l|(t); moments of negative order
/// coincide by conjugation symmetry.
pub fn moment(t: f64, l: i64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::InvalidInput(format!("moment needs t > 0, got {t}")));
    }
    let l = l.unsigned_abs() as usize;
    if l == 0 {
        return Ok(1.0);
    }
    let tr = BigRational::from_float(t).ok_or_else(|| Error::InvalidInput("non-finite t".into()))?;
    let p = p_poly(l, &tr);
    let (sign, ln_p) = rational_sign_ln(&p);
    if sign == 0 {
        return Ok(0.0);
    }
    Ok(sign as f64 * (ln_p - 2.0 * l as f64 * t).exp())
}

fn rational_sign_ln(q: &BigRational) -> (i8, f64) {
    if q.is_zero() {
        return (0, f64::NEG_INFINITY);
    }
    (if q.is_negative() { -1 } else { 1 }, ln_big(q.numer()) - ln_big(q.denom()))
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let top: BigInt = if bits > 63 { x.abs() >> (bits - 63) } else { x.abs() << (63 - bits) };
    top.to_f64().unwrap_or(f64::MAX).ln() + (bits as f64 - 63.0) * std::f64::consts::LN_2
}

/// One row of a moment table.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct MomentEntry {
    pub ell: usize,
    pub p_ell: f64,
    pub moment: f64,
    /// Set when the moment falls below 1e-50.
    pub denormal_risk: bool,
}

/// Table of p_l(t) values and moments for l = 0..=lmax (lmax capped at 64).
pub fn moment_table(t: f64, lmax: usize) -> Result<Vec<MomentEntry>> {
    if lmax > 64 {
        return Err(Error::InvalidInput(format!("moment table capped at l = 64, got {lmax}")));
    }
    let tr = BigRational::from_float(t).ok_or_else(|| Error::InvalidInput("non-finite t".into()))?;
    (0..=lmax)
        .map(|l| {
            let p = p_poly(l, &tr);
            let (sign, ln_p) = rational_sign_ln(&p);
            let m = if sign == 0 { 0.0 } else { sign as f64 * (ln_p - 2.0 * l as f64 * t).exp() };
            Ok(MomentEntry {
                ell: l,
                p_ell: if sign == 0 { 0.0 } else { sign as f64 * ln_p.exp() },
                moment: m,
                denormal_risk: m.abs() < 1e-50 && l > 0,
            })
        })
        .collect()
}

/// psi-transform of the law on the open disk: 1/(2 r_t(z)) - 1/2.
pub fn psi(t: f64, z: Complex64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::InvalidInput("psi needs |z| < 1".into()));
    }
    let r = zeta::r_func(t, z)?;
    Ok(0.5 / r - 0.5)
}

/// S- and Sigma-transforms: S(z) = exp(t/(z+1/2)), Sigma(z) = exp(2t(1-z)/(1+z)).
pub fn s_sigma(t: f64, z: Complex64) -> Result<(Complex64, Complex64)> {
    if (z + 0.5).norm() < 1e-12 || (z + 1.0).norm() < 1e-12 {
        return Err(Error::InvalidInput("S/Sigma pole at z".into()));
    }
    let s = (t / (z + 0.5)).exp();
    let sigma = (2.0 * t * (1.0 - z) / (1.0 + z)).exp();
    Ok((s, sigma))
}

/// Density through the Fourier series of the moments. For t > 1 this is the
/// density of the law itself; for t < 1 it is the density of the absolutely
/// continuous part (the atom removed); at t = 1 the series only converges
/// pointwise away from 0.
pub fn density_fourier(t: f64, theta: f64, order: usize) -> Result<f64> {
    if order == 0 {
        return Err(Error::InvalidInput("density_fourier needs order >= 1".into()));
    }
    let sub = t < 1.0 - CRIT_WINDOW;
    let mut acc = if sub { t / (2.0 * PI) } else { 1.0 / (2.0 * PI) };
    let tr = BigRational::from_float(t).ok_or_else(|| Error::InvalidInput("non-finite t".into()))?;
    for l in 1..=order {
        let p = p_poly(l, &tr);
        let (sign, ln_p) = rational_sign_ln(&p);
        let m = if sign == 0 { 0.0 } else { sign as f64 * (ln_p - 2.0 * l as f64 * t).exp() };
        let coeff = if sub { m - 1.0 + t } else { m };
        acc += coeff * (l as f64 * theta).cos() / PI;
    }
    Ok(acc)
}

/// Smooth integration pieces of [0, pi] in a substituted variable that
/// removes the edge singularity: theta = map(u), weight jac(u).
struct Piece {
    u_hi: f64,
    map: Box<dyn Fn(f64) -> f64>,
    jac: Box<dyn Fn(f64) -> f64>,
}

fn positive_pieces(t: f64) -> Vec<Piece> {
    if t < 1.0 - CRIT_WINDOW {
        let edge = 2.0 * x_gap(t);
        vec![Piece {
            u_hi: (PI - edge).sqrt(),
            map: Box::new(move |u| edge + u * u),
            jac: Box::new(|u| 2.0 * u),
        }]
    } else if (t - 1.0).abs() <= CRIT_WINDOW {
        vec![Piece {
            u_hi: PI.cbrt(),
            map: Box::new(|u| u * u * u),
            jac: Box::new(|u| 3.0 * u * u),
        }]
    } else {
        vec![Piece { u_hi: PI, map: Box::new(|u| u), jac: Box::new(|_| 1.0) }]
    }
}

/// Integral of g(theta) f(theta) d theta over [-pi, pi] (absolutely
/// continuous part only), with singularity-aware substitutions.
pub fn ac_integral(t: f64, g: impl Fn(f64) -> f64, tol: f64) -> Result<f64> {
    let mut total = 0.0;
    for piece in positive_pieces(t) {
        for sgn in [1.0, -1.0] {
            let v = integrate(
                |u| {
                    let th = sgn * (piece.map)(u);
                    let f = density(t, th).unwrap_or(0.0);
                    g(th) * f * (piece.jac)(u)
                },
                0.0,
                piece.u_hi,
                tol / 2.0,
            )?;
            total += v;
        }
    }
    Ok(total)
}

/// Moment of the full law by quadrature: atom + integral of cos(l theta) f.
pub fn moment_quad(t: f64, l: i64, tol: f64) -> Result<f64> {
    let ac = ac_integral(t, |th| (l as f64 * th).cos(), tol)?;
    Ok(ac + atom_weight(t))
}

/// The law at parameter t with a lazily built CDF table for quantiles and
/// sampling.
pub struct CircularLaw {
    t: f64,
    atoms: Vec<(f64, f64)>,
    ac_total: f64,
    support_gap: Option<(f64, f64)>,
    table: OnceLock<CdfTable>,
}

struct CdfTable {
    /// Substituted coordinate grid on the positive side and cumulative mass.
    us: Vec<f64>,
    cum: Vec<f64>,
    edge_kind: EdgeKind,
}

#[derive(Clone, Copy)]
enum EdgeKind {
    Sqrt(f64),
    Cbrt,
    None,
}

impl CircularLaw {
    pub fn new(t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::InvalidInput(format!("law needs t > 0, got {t}")));
        }
        let aw = atom_weight(t);
        let atoms = if aw > 0.0 { vec![(0.0, aw)] } else { Vec::new() };
        let support_gap = (t < 1.0 - CRIT_WINDOW).then(|| {
            let e = 2.0 * x_gap(t);
            (-e, e)
        });
        Ok(CircularLaw { t, atoms, ac_total: 1.0 - aw, support_gap, table: OnceLock::new() })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn ac_total(&self) -> f64 {
        self.ac_total
    }

    pub fn support_gap(&self) -> Option<(f64, f64)> {
        self.support_gap
    }

    pub fn density(&self, theta: f64) -> Result<f64> {
        density(self.t, theta)
    }

    pub fn moment(&self, l: i64) -> Result<f64> {
        moment(self.t, l)
    }

    fn table(&self) -> &CdfTable {
        self.table.get_or_init(|| build_table(self.t))
    }

    /// Right-continuous CDF on [-pi, pi] with the cut at -pi.
    pub fn cdf(&self, theta: f64) -> f64 {
        let tab = self.table();
        let half = tab.cum.last().copied().unwrap_or(0.0);
        let atom = atom_weight(self.t);
        if theta >= 0.0 {
            half + atom + tab.positive_mass(theta.min(PI))
        } else {
            half - tab.positive_mass((-theta).min(PI))
        }
    }

    /// Left limit of the CDF.
    pub fn cdf_left(&self, theta: f64) -> f64 {
        if theta <= -PI {
            return 0.0;
        }
        self.cdf(theta) - if theta == 0.0 { atom_weight(self.t) } else { 0.0 }
    }

    /// Monotone inverse of the CDF on (0, 1).
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(0.0 < u && u < 1.0) {
            return Err(Error::InvalidInput(format!("quantile needs u in (0,1), got {u}")));
        }
        let tab = self.table();
        let half = tab.cum.last().copied().unwrap_or(0.0);
        let atom = atom_weight(self.t);
        let total = 2.0 * half + atom;
        let u = u * total; // guard tiny normalization defects
        if u >= half && u <= half + atom {
            return Ok(0.0);
        }
        let (target, sign) = if u > half + atom { (u - half - atom, 1.0) } else { (half - u, -1.0) };
        Ok(sign * tab.invert_positive(target, self.t))
    }

    /// Deterministic inverse-CDF sample of size n.
    pub fn sample(&self, n: usize, seed: u64) -> Result<crate::EmpiricalAngles> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut angles = Vec::with_capacity(n);
        for _ in 0..n {
            let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            angles.push(self.quantile(u)?);
        }
        crate::EmpiricalAngles::new(angles.into_iter().map(|a| (a, 1)))
    }
}

fn build_table(t: f64) -> CdfTable {
    let (edge_kind, u_hi) = if t < 1.0 - CRIT_WINDOW {
        let e = 2.0 * x_gap(t);
        (EdgeKind::Sqrt(e), (PI - e).sqrt())
    } else if (t - 1.0).abs() <= CRIT_WINDOW {
        (EdgeKind::Cbrt, PI.cbrt())
    } else {
        (EdgeKind::None, PI)
    };
    let n = 1024usize;
    let mut us = Vec::with_capacity(n + 1);
    let mut cum = Vec::with_capacity(n + 1);
    us.push(0.0);
    cum.push(0.0);
    let integrand = |u: f64| -> f64 {
        let (th, jac) = match edge_kind {
            EdgeKind::Sqrt(e) => (e + u * u, 2.0 * u),
            EdgeKind::Cbrt => (u * u * u, 3.0 * u * u),
            EdgeKind::None => (u, 1.0),
        };
        density(t, th).unwrap_or(0.0) * jac
    };
    let mut acc = 0.0;
    for i in 1..=n {
        let a = u_hi * (i - 1) as f64 / n as f64;
        let b = u_hi * i as f64 / n as f64;
        acc += integrate(|u| integrand(u), a, b, 1e-11).unwrap_or(0.0);
        us.push(b);
        cum.push(acc);
    }
    CdfTable { us, cum, edge_kind }
}

impl CdfTable {
    fn theta_of_u(&self, u: f64) -> f64 {
        match self.edge_kind {
            EdgeKind::Sqrt(e) => e + u * u,
            EdgeKind::Cbrt => u * u * u,
            EdgeKind::None => u,
        }
    }

    fn u_of_theta(&self, th: f64) -> f64 {
        match self.edge_kind {
            EdgeKind::Sqrt(e) => (th - e).max(0.0).sqrt(),
            EdgeKind::Cbrt => th.max(0.0).cbrt(),
            EdgeKind::None => th.max(0.0),
        }
    }

    /// Mass of the a.c. part on [0, theta].
    fn positive_mass(&self, theta: f64) -> f64 {
        let u = self.u_of_theta(theta);
        match self.us.binary_search_by(|x| x.total_cmp(&u)) {
            Ok(i) => self.cum[i],
            Err(0) => 0.0,
            Err(i) if i > self.us.len() - 1 => *self.cum.last().unwrap(),
            Err(i) => {
                let (u0, u1) = (self.us[i - 1], self.us[i]);
                let w = (u - u0) / (u1 - u0);
                self.cum[i - 1] * (1.0 - w) + self.cum[i] * w
            }
        }
    }

    /// Inverse of positive_mass by table bisection plus linear interpolation.
    fn invert_positive(&self, target: f64, _t: f64) -> f64 {
        let idx = self.cum.partition_point(|&c| c < target);
        if idx == 0 {
            return self.theta_of_u(self.us[0]);
        }
        if idx >= self.cum.len() {
            return PI;
        }
        let (c0, c1) = (self.cum[idx - 1], self.cum[idx]);
        let w = if c1 > c0 { (target - c0) / (c1 - c0) } else { 0.5 };
        let u = self.us[idx - 1] * (1.0 - w) + self.us[idx] * w;
        self.theta_of_u(u).min(PI)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn atom_weights() {
        assert_eq!(atom_weight(0.25), 0.75);
        assert_eq!(atom_weight(1.0), 0.0);
        assert_eq!(atom_weight(3.0), 0.0);
    }

    #[test]
    fn density_vanishes_in_gap_and_is_symmetric() {
        assert_eq!(density(0.5, 0.3).unwrap(), 0.0);
        for &th in &[0.9, 1.7, 2.8] {
            let a = density(0.5, th).unwrap();
            let b = density(0.5, -th).unwrap();
            assert_relative_eq!(a, b, epsilon = 1e-12);
            assert!(a >= 0.0);
        }
        for &th in &[0.1, 1.0, 3.0] {
            let a = density(2.0, th).unwrap();
            assert!(a > 0.0);
            assert_relative_eq!(a, density(2.0, -th).unwrap(), epsilon = 1e-12);
        }
    }

    #[test]
    fn density_critical_cube_root() {
        let th = 1e-3;
        let f = density(1.0, th).unwrap();
        let ratio = f * 2.0 * PI * (4.0 * th / 3f64.sqrt()).powf(1.0 / 3.0);
        assert!((0.95..1.05).contains(&ratio), "{ratio}");
        assert!(density(1.0, 0.0).unwrap().is_infinite());
    }

    #[test]
    fn moments_match_displayed_polynomials() {
        let t = 0.37;
        assert_relative_eq!(moment(t, 1).unwrap(), (-2.0 * t).exp(), epsilon = 1e-14);
        assert_relative_eq!(moment(t, 2).unwrap(), (-4.0 * t).exp() * (1.0 + 4.0 * t), epsilon = 1e-13);
        assert_relative_eq!(
            moment(t, 3).unwrap(),
            (-6.0 * t).exp() * (1.0 + 4.0 * t + 24.0 * t * t),
            epsilon = 1e-13
        );
        assert_relative_eq!(
            moment(t, 4).unwrap(),
            (-8.0 * t).exp() * (1.0 + 8.0 * t + 512.0 / 3.0 * t.powi(3)),
            epsilon = 1e-13
        );
        assert_relative_eq!(
            moment(t, 5).unwrap(),
            (-10.0 * t).exp()
                * (1.0 + 8.0 * t + 80.0 * t * t - 800.0 / 3.0 * t.powi(3) + 4000.0 / 3.0 * t.powi(4)),
            epsilon = 1e-13
        );
        // negative order coincides
        assert_eq!(moment(t, -3).unwrap(), moment(t, 3).unwrap());
        assert_eq!(moment(t, 0).unwrap(), 1.0);
    }

    #[test]
    fn moment_magnitudes_bounded() {
        for &t in &[0.3, 1.0, 2.5] {
            for l in 1..=20 {
                let m = moment(t, l).unwrap();
                assert!(m.abs() <= 1.0 + 1e-12, "t={t} l={l}: {m}");
            }
        }
    }

    #[test]
    fn moment_quad_matches_exact() {
        for &t in &[0.6, 1.5] {
            for l in 0..=4 {
                let q = moment_quad(t, l, 1e-9).unwrap();
                let e = moment(t, l).unwrap();
                assert!((q - e).abs() < 1e-7, "t={t} l={l}: {q} vs {e}");
            }
        }
    }

    #[test]
    fn psi_basics() {
        let t = 0.7;
        assert!(psi(t, Complex64::new(0.0, 0.0)).unwrap().norm() < 1e-14);
        // defining relation y = psi(y/(1+y) e^{t/(y+1/2)})
        let y = Complex64::new(0.05, 0.02);
        let t = 0.6;
        let z = y / (1.0 + y) * (t / (y + 0.5)).exp();
        let back = psi(t, z).unwrap();
        assert!((back - y).norm() < 1e-9, "{back} vs {y}");
    }

    #[test]
    fn psi_matches_moment_series() {
        let t = 0.8;
        let z = Complex64::new(0.35, 0.35);
        let direct = psi(t, z).unwrap();
        // |z| < 0.5, so 64 exact moments put the tail far below 1e-8
        let mut series = Complex64::new(0.0, 0.0);
        let mut zl = Complex64::new(1.0, 0.0);
        for l in 1..=64 {
            zl *= z;
            series += zl * moment(t, l).unwrap();
        }
        assert!((direct - series).norm() < 1e-8, "{direct} vs {series}");
    }

    #[test]
    fn s_sigma_relations() {
        let t = 0.9;
        let (s_half, _) = s_sigma(t, Complex64::new(0.5, 0.0)).unwrap();
        assert_relative_eq!(s_half.re, t.exp(), epsilon = 1e-12);
        let (_, sigma0) = s_sigma(t, Complex64::new(0.0, 0.0)).unwrap();
        assert_relative_eq!(sigma0.re, (2.0 * t).exp(), epsilon = 1e-12);
        // Sigma(z) = S(z/(1-z))
        let z = Complex64::new(0.2, 0.1);
        let (_, sig) = s_sigma(t, z).unwrap();
        let (s, _) = s_sigma(t, z / (1.0 - z)).unwrap();
        assert!((sig - s).norm() < 1e-12);
        assert!(s_sigma(t, Complex64::new(-0.5, 0.0)).is_err());
        assert!(s_sigma(t, Complex64::new(-1.0, 0.0)).is_err());
    }

    #[test]
    fn fourier_density_matches_solver_supercritical() {
        let t = 2.0;
        for i in 0..=24 {
            let th = -PI + 2.0 * PI * i as f64 / 24.0;
            let a = density_fourier(t, th, 60).unwrap();
            let b = density(t, th).unwrap();
            assert!((a - b).abs() < 1e-6, "theta={th}: {a} vs {b}");
        }
    }

    #[test]
    fn fourier_density_vanishes_in_gap() {
        let t = 0.5;
        let f = density_fourier(t, 0.2, 400).unwrap();
        assert!(f.abs() < 5e-3, "{f}");
    }

    #[test]
    fn law_normalization_and_cdf() {
        for &t in &[0.3, 0.7, 1.0, 1.5, 3.0] {
            let law = CircularLaw::new(t).unwrap();
            let total = law.cdf(PI);
            assert!((total - 1.0).abs() < 1e-7, "t={t}: {total}");
            assert_eq!(law.cdf_left(-PI), 0.0);
            // symmetry of the continuous part around the atom
            let below = law.cdf_left(0.0);
            assert_relative_eq!(below, (1.0 - atom_weight(t)) / 2.0, epsilon = 1e-7);
        }
    }

    #[test]
    fn quantile_inverts_cdf() {
        let law = CircularLaw::new(1.5).unwrap();
        for &u in &[0.05, 0.3, 0.5, 0.77, 0.99] {
            let q = law.quantile(u).unwrap();
            assert!((law.cdf(q) - u).abs() < 1e-6, "u={u}: q={q}");
        }
        // atom band maps to 0
        let law = CircularLaw::new(0.4).unwrap();
        let q = law.quantile(0.5).unwrap();
        assert_eq!(q, 0.0);
    }

    #[test]
    fn sampled_moments_match() {
        let law = CircularLaw::new(2.0).unwrap();
        let s = law.sample(20000, 7).unwrap();
        let m = s.moments(1)[0];
        let want = moment(2.0, 1).unwrap();
        // 3 sigma of a bounded variable: sigma <= 1/sqrt(n)
        assert!((m.re - want).abs() < 3.0 / (20000f64).sqrt(), "{} vs {want}", m.re);
        assert!(m.im.abs() < 3.0 / (20000f64).sqrt());
    }

    #[test]
    fn support_edge_behavior() {
        let t = 0.5;
        let edge = 2.0 * x_gap(t);
        assert_eq!(density(t, edge - 1e-3).unwrap(), 0.0);
        assert!(density(t, edge + 1e-3).unwrap() > 0.0);
        let mut ratios = Vec::new();
        for &eps in &[1e-3, 1e-4, 1e-5] {
            ratios.push(density(t, edge + eps).unwrap() / eps.sqrt());
        }
        let (lo, hi) = (ratios.iter().cloned().fold(f64::MAX, f64::min), ratios.iter().cloned().fold(0.0, f64::max));
        assert!(hi / lo < 1.3, "edge ratios {ratios:?}");
    }
}
