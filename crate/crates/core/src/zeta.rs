//! The principal branch of `zeta - t tan(zeta) = theta` on the closed upper
//! half-plane, the disk functions r_t and v_t, Taylor coefficients of r_t,
//! imaginary-axis profiles and branch-point data.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

/// How a zeta value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaMethod {
    FixedPoint,
    Newton,
    PuiseuxSeeded,
    RealBranch,
}

/// Solution record for `zeta - t tan(zeta) = theta`.
#[derive(Clone, Copy, Debug)]
pub struct ZetaValue {
    pub zeta: Complex64,
    pub residual: f64,
    pub iterations: usize,
    pub method: ZetaMethod,
}

/// Support regime of the law at parameter t.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Sub,
    Crit,
    Super,
}

/// Branch-point data of the principal branch at parameter t.
#[derive(Clone, Copy, Debug)]
pub struct BranchData {
    pub t: f64,
    pub regime: Regime,
    /// Half-gap parameter arccos sqrt(t) - sqrt(t(1-t)); sub-critical only.
    pub x_t: Option<f64>,
    /// Positive solution of y = t tanh y; super-critical only.
    pub y0: Option<f64>,
    /// Positive solution of y = t coth y.
    pub ytilde0: f64,
}

const CRIT_WINDOW: f64 = 1e-12;
const EDGE_WINDOW: f64 = 0.05;
const RESIDUAL_TOL: f64 = 1e-13;

/// tan through exponentials; never overflows for Im z >= 0.
fn tan_upper(z: Complex64) -> Complex64 {
    let w = (Complex64::i() * 2.0 * z).exp(); // |w| <= 1 in the closed upper half-plane
    Complex64::i() * (1.0 - w) / (1.0 + w)
}

/// 1/cos^2 through exponentials.
fn sec2_upper(z: Complex64) -> Complex64 {
    let w = (Complex64::i() * 2.0 * z).exp();
    let d = 1.0 + w;
    4.0 * w / (d * d)
}

fn g_residual(t: f64, zeta: Complex64, theta: Complex64) -> Complex64 {
    zeta - t * tan_upper(zeta) - theta
}

/// Principal-branch solve. Requires t > 0 and Im theta >= 0.
pub fn zeta(t: f64, theta: Complex64) -> Result<ZetaValue> {
    if !(t > 0.0) || !theta.re.is_finite() || !theta.im.is_finite() {
        return Err(Error::InvalidInput(format!(
            "zeta needs t > 0 and finite theta; got t={t}, theta={theta}"
        )));
    }
    if theta.im < 0.0 {
        return Err(Error::InvalidInput("zeta is defined on the closed upper half-plane".into()));
    }
    // pi-periodicity: reduce Re theta into [-pi/2, pi/2)
    let shift = (theta.re / std::f64::consts::PI).round();
    let reduced = Complex64::new(theta.re - shift * std::f64::consts::PI, theta.im);
    let mut out = zeta_reduced(t, reduced)?;
    out.zeta += shift * std::f64::consts::PI;
    Ok(out)
}

fn zeta_reduced(t: f64, theta: Complex64) -> Result<ZetaValue> {
    let sub = t < 1.0 - CRIT_WINDOW;
    let crit = (t - 1.0).abs() <= CRIT_WINDOW;
    if theta.im == 0.0 {
        let th = theta.re;
        if sub {
            let acst = t.sqrt().acos();
            let x_t = acst - (t * (1.0 - t)).sqrt();
            if (th.abs() - x_t).abs() < 1e-14 {
                let z = Complex64::new(th.signum() * acst, 0.0);
                return Ok(ZetaValue {
                    zeta: z,
                    residual: g_residual(t, z, theta).norm(),
                    iterations: 0,
                    method: ZetaMethod::RealBranch,
                });
            }
            if th.abs() <= x_t - EDGE_WINDOW {
                return real_branch(t, th, acst);
            }
            if th.abs() < x_t + EDGE_WINDOW {
                return edge_seeded(t, theta, x_t, acst);
            }
        } else if crit {
            if th == 0.0 {
                return Ok(ZetaValue {
                    zeta: Complex64::new(0.0, 0.0),
                    residual: 0.0,
                    iterations: 0,
                    method: ZetaMethod::RealBranch,
                });
            }
            if th.abs() < EDGE_WINDOW {
                return cubic_seeded(t, theta);
            }
        }
    }
    iterate_then_newton(t, theta)
}

/// Real increasing branch on [-arccos sqrt t, arccos sqrt t] for t < 1 and
/// theta inside the gap: plain bisection plus a short Newton polish.
fn real_branch(t: f64, th: f64, acst: f64) -> Result<ZetaValue> {
    let g = |z: f64| z - t * z.tan() - th;
    let (mut a, mut b) = (-acst, acst);
    if g(a) > 0.0 || g(b) < 0.0 {
        return Err(Error::NonConvergence {
            context: format!("real branch bracket failed at t={t}, theta={th}"),
            residual: g(a).abs().min(g(b).abs()),
            iterations: 0,
        });
    }
    let mut it = 0;
    while b - a > 1e-16 * (1.0 + b.abs()) && it < 200 {
        let m = 0.5 * (a + b);
        if g(m) <= 0.0 {
            a = m;
        } else {
            b = m;
        }
        it += 1;
    }
    let mut z = 0.5 * (a + b);
    for _ in 0..3 {
        let gp = 1.0 - t / z.cos().powi(2);
        if gp.abs() < 1e-14 {
            break;
        }
        z = (z - g(z) / gp).clamp(-acst, acst);
    }
    Ok(ZetaValue {
        zeta: Complex64::new(z, 0.0),
        residual: g(z).abs(),
        iterations: it,
        method: ZetaMethod::RealBranch,
    })
}

/// Square-root Puiseux seed near the sub-critical branch points +-x_t,
/// followed by Newton.
fn edge_seeded(t: f64, theta: Complex64, x_t: f64, acst: f64) -> Result<ZetaValue> {
    let s = theta.re.signum();
    let gap = Complex64::new(x_t - s * theta.re, 0.0);
    let root = sqrt_lower(gap);
    let seed = s * (Complex64::new(acst, 0.0) - (t / (1.0 - t)).powf(0.25) * root);
    let mut v = newton(t, theta, seed, ZetaMethod::PuiseuxSeeded, 1e-12)?;
    if theta.im == 0.0 && s * theta.re <= x_t {
        // inside the gap the branch is real; suppress sign noise downstream
        v.zeta = Complex64::new(v.zeta.re, 0.0);
        v.residual = g_residual(t, v.zeta, theta).norm();
    }
    Ok(v)
}

/// sqrt on the closure of the lower half-plane with sqrt(1) = 1, sqrt(-1) = -i.
fn sqrt_lower(w: Complex64) -> Complex64 {
    let r = w.sqrt();
    if w.re < 0.0 && w.im == 0.0 {
        return r.conj(); // principal branch puts these on +i; flip
    }
    if r.im > 0.0 && w.im < 0.0 {
        -r
    } else {
        r
    }
}

/// Cube-root Puiseux branch at t = 1 near theta = 0 with the branch fixed by
/// cbrt(-i) = i (so cbrt(1) = e^{2 pi i/3}). Very close to the branch point
/// the truncated Puiseux series beats Newton, whose accuracy degrades with
/// the vanishing derivative; beyond that it seeds Newton.
fn cubic_seeded(t: f64, theta: Complex64) -> Result<ZetaValue> {
    let wfull = -3.0 * theta; // Im w <= 0 for Im theta >= 0
    let phi = wfull.arg(); // (-pi, pi]; nonpositive here apart from the +pi edge
    let phi_adj = if phi > 0.0 { phi - 2.0 * std::f64::consts::PI } else { phi };
    let w = Complex64::from_polar(wfull.norm().cbrt(), phi_adj / 3.0 + 2.0 * std::f64::consts::FRAC_PI_3);
    // zeta_1 = w - (2/15) w^3 + (3/175) w^5 - (2/1575) w^7 - (16/202125) w^9 + ...
    let w2 = w * w;
    let series = w * (1.0 + w2 * (-2.0 / 15.0 + w2 * (3.0 / 175.0 + w2 * (-2.0 / 1575.0 + w2 * (-16.0 / 202125.0)))));
    if theta.norm() <= 2e-3 {
        return Ok(ZetaValue {
            zeta: series,
            residual: g_residual(t, series, theta).norm(),
            iterations: 0,
            method: ZetaMethod::PuiseuxSeeded,
        });
    }
    newton(t, theta, series, ZetaMethod::PuiseuxSeeded, 1e-13)
}

fn iterate_then_newton(t: f64, theta: Complex64) -> Result<ZetaValue> {
    let mut x = theta + Complex64::new(0.0, t);
    let mut it = 0;
    for _ in 0..64 {
        let next = theta + t * tan_upper(x);
        it += 1;
        if (next - x).norm() < 1e-15 * (1.0 + next.norm()) {
            x = next;
            break;
        }
        x = next;
    }
    let res = g_residual(t, x, theta).norm();
    if res <= RESIDUAL_TOL {
        return Ok(ZetaValue { zeta: x, residual: res, iterations: it, method: ZetaMethod::FixedPoint });
    }
    if let Ok(mut v) = newton(t, theta, x, ZetaMethod::Newton, RESIDUAL_TOL) {
        // Newton does not respect the upper half-plane; reject parasitic
        // real-branch limits (principal branch has Im zeta >= Im theta).
        if v.zeta.im >= theta.im - 1e-12 && (theta.im > 0.0 || v.zeta.im > -1e-12) {
            v.iterations += it;
            return Ok(v);
        }
    }
    // fall back to the bare iteration, which stays in the closed upper
    // half-plane and converges by Denjoy-Wolff (slowly near the window edge)
    for _ in 0..20000 {
        let next = theta + t * tan_upper(x);
        it += 1;
        if (next - x).norm() < 1e-16 * (1.0 + next.norm()) {
            x = next;
            break;
        }
        x = next;
    }
    let mut v = newton(t, theta, x, ZetaMethod::FixedPoint, RESIDUAL_TOL)
        .unwrap_or(ZetaValue { zeta: x, residual: g_residual(t, x, theta).norm(), iterations: it, method: ZetaMethod::FixedPoint });
    if v.zeta.im < theta.im - 1e-12 || v.zeta.im < -1e-12 {
        v = ZetaValue { zeta: x, residual: g_residual(t, x, theta).norm(), iterations: it, method: ZetaMethod::FixedPoint };
    }
    if v.residual > 1e-9 {
        return Err(Error::NonConvergence {
            context: format!("zeta iteration stalled at t={t}, theta={theta}"),
            residual: v.residual,
            iterations: it,
        });
    }
    v.iterations = it;
    Ok(v)
}

fn newton(
    t: f64,
    theta: Complex64,
    seed: Complex64,
    method: ZetaMethod,
    tol: f64,
) -> Result<ZetaValue> {
    let mut z = seed;
    let mut g = g_residual(t, z, theta);
    let mut it = 0;
    for _ in 0..80 {
        if g.norm() <= tol {
            break;
        }
        let gp = 1.0 - t * sec2_upper(z);
        if gp.norm() < 1e-300 {
            break;
        }
        let full = g / gp;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let cand = z - lambda * full;
            let gc = g_residual(t, cand, theta);
            if gc.norm() < g.norm() {
                z = cand;
                g = gc;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        it += 1;
        if !accepted {
            break;
        }
    }
    let res = g.norm();
    if res > tol.max(1e-9) {
        return Err(Error::NonConvergence {
            context: format!("zeta Newton stalled at t={t}, theta={theta}"),
            residual: res,
            iterations: it,
        });
    }
    Ok(ZetaValue { zeta: z, residual: res, iterations: it, method })
}

/// Unique y > tau solving y - t tanh y = tau (tau > 0).
pub fn y_axis(t: f64, tau: f64) -> f64 {
    assert!(t > 0.0 && tau > 0.0);
    let h = |y: f64| y - t * y.tanh() - tau;
    let mut lo = if t > 1.0 { y_zero(t).max(tau) } else { tau };
    if h(lo) > 0.0 {
        return lo;
    }
    let mut hi = tau + t + 1.0;
    while h(hi) < 0.0 {
        hi += t + 1.0;
    }
    bisect_monotone(h, lo, hi)
}

fn bisect_monotone(h: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if h(m) < 0.0 {
            lo = m;
        } else {
            hi = m;
        }
        if hi - lo < 1e-16 * (1.0 + hi.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Positive zero of y - t tanh y for t > 1.
fn y_zero(t: f64) -> f64 {
    debug_assert!(t > 1.0);
    let h = |y: f64| y - t * y.tanh();
    let mut lo = (3.0 * (t - 1.0) / t).sqrt() * 0.5;
    while h(lo) >= 0.0 {
        lo *= 0.5;
    }
    let mut hi = t + 1.0;
    while h(hi) < 0.0 {
        hi += 1.0;
    }
    bisect_monotone(h, lo, hi)
}

/// Unique positive solution of ytilde - t coth(ytilde) = tau (tau >= 0).
pub fn y_tilde_axis(t: f64, tau: f64) -> f64 {
    assert!(t > 0.0 && tau >= 0.0);
    let h = |y: f64| y - t / y.tanh() - tau;
    let mut lo = t.max(tau).max(1e-8);
    while h(lo) >= 0.0 && lo > 1e-300 {
        lo *= 0.5;
    }
    let mut hi = lo.max(tau + t) + 1.0;
    while h(hi) < 0.0 {
        hi += t + 1.0;
    }
    bisect_monotone(h, lo, hi)
}

/// Regime classification and branch constants at parameter t.
pub fn branch_data(t: f64) -> Result<BranchData> {
    if !(t > 0.0) {
        return Err(Error::InvalidInput(format!("branch data needs t > 0, got {t}")));
    }
    let regime = if (t - 1.0).abs() <= CRIT_WINDOW {
        Regime::Crit
    } else if t < 1.0 {
        Regime::Sub
    } else {
        Regime::Super
    };
    let x_t = (regime == Regime::Sub).then(|| t.sqrt().acos() - (t * (1.0 - t)).sqrt());
    let y0 = (regime == Regime::Super).then(|| y_zero(t));
    Ok(BranchData { t, regime, x_t, y0, ytilde0: y_tilde_axis(t, 0.0) })
}

/// Half-gap parameter for t in (0,1); 0 at and above the critical point.
pub fn x_gap(t: f64) -> f64 {
    if t >= 1.0 {
        0.0
    } else {
        t.sqrt().acos() - (t * (1.0 - t)).sqrt()
    }
}

/// r_t(z) on the closed unit disk: zeta_t(theta) = theta + i t r_t(e^{2 i theta}).
pub fn r_func(t: f64, z: Complex64) -> Result<Complex64> {
    if z.norm() > 1.0 + 1e-12 {
        return Err(Error::InvalidInput(format!("r_t needs |z| <= 1, got |z| = {}", z.norm())));
    }
    if z.norm() == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let theta = Complex64::new(z.arg() / 2.0, -(z.norm().ln()) / 2.0);
    let v = zeta(t, theta)?;
    Ok((v.zeta - theta) / Complex64::new(0.0, t))
}

/// v_t(z) = (1 - r_t(z)) / (1 + r_t(z)), the unique disk solution of
/// v e^{2t(1-v)/(1+v)} = z.
pub fn v_func(t: f64, z: Complex64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::InvalidInput(format!("v_t needs |z| < 1, got |z| = {}", z.norm())));
    }
    let r = r_func(t, z)?;
    Ok((1.0 - r) / (1.0 + r))
}

/// Truncated Taylor coefficients of r_t: c_0 = 1 and
/// c_l = 2 (-1)^l l^{-1} e^{-2lt} q_{l-1}(-4lt). The alternating q-sum
/// cancels catastrophically in floats, so it is evaluated in exact rationals
/// at the dyadic value of t and only then combined in log scale.
pub fn r_taylor(t: f64, order: usize) -> Result<Vec<f64>> {
    if order > 200 {
        return Err(Error::InvalidInput(format!("r_taylor order capped at 200, got {order}")));
    }
    if !(t > 0.0) {
        return Err(Error::InvalidInput("r_taylor needs t > 0".into()));
    }
    let tr = BigRational::from_float(t).ok_or_else(|| Error::InvalidInput("non-finite t".into()))?;
    let mut out = Vec::with_capacity(order + 1);
    out.push(1.0);
    for l in 1..=order {
        let x = -BigRational::from_integer(BigInt::from(4 * l as i64)) * &tr;
        let q = q_poly_eval(l - 1, &x);
        let (sign, ln_q) = rational_sign_ln(&q);
        if sign == 0 {
            out.push(0.0);
            continue;
        }
        let ln_c = std::f64::consts::LN_2 - (l as f64).ln() - 2.0 * l as f64 * t + ln_q;
        let s = sign as f64 * if l % 2 == 1 { -1.0 } else { 1.0 };
        out.push(s * ln_c.exp());
    }
    Ok(out)
}

/// q_m(x) = sum_{j=0}^m x^j / j! * C(m+1, j+1), exact in rationals.
fn q_poly_eval(m: usize, x: &BigRational) -> BigRational {
    let mut term = BigRational::from_integer(BigInt::from(1));
    let mut binom = BigInt::from(m as i64 + 1);
    let mut acc = &term * BigRational::from_integer(binom.clone());
    for j in 1..=m {
        term = term * x / BigRational::from_integer(BigInt::from(j as i64));
        binom = binom * BigInt::from((m + 1 - j) as i64) / BigInt::from(j as i64 + 1);
        acc += &term * BigRational::from_integer(binom.clone());
    }
    acc
}

fn rational_sign_ln(q: &BigRational) -> (i8, f64) {
    if q.is_zero() {
        return (0, f64::NEG_INFINITY);
    }
    let sign = if q.is_negative() { -1 } else { 1 };
    (sign, ln_big(q.numer()) - ln_big(q.denom()))
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let top: BigInt = if bits > 63 { x.abs() >> (bits - 63) } else { x.abs() << (63 - bits) };
    let v = top.to_f64().unwrap_or(f64::MAX);
    v.ln() + (bits as f64 - 63.0) * std::f64::consts::LN_2
}

/// Evaluate the truncated r_t Taylor series at z by Horner.
pub fn r_taylor_eval(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}
