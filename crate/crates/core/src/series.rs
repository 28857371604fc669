//! Truncated formal power series over complex coefficients: composition,
//! compositional inversion by series Newton, exp/log, the psi -> S pipeline,
//! moments of free multiplicative convolutions with the free unitary Poisson
//! law, and the formal solution of the periodic root-flow PDE.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const INVERT_C1_FLOOR: f64 = 1e-14;

/// Series kind: psi-type has vanishing constant term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Psi,
    S,
}

/// Truncated power series c_0 + c_1 z + ... + c_L z^L.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries {
    c: Vec<Complex64>,
    kind: Kind,
}

impl TruncSeries {
    /// psi-type series from coefficients c_1..c_L.
    pub fn psi_from_moments(moments: &[Complex64], order: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
        for (i, &m) in moments.iter().enumerate().take(order) {
            c[i + 1] = m;
        }
        TruncSeries { c, kind: Kind::Psi }
    }

    pub fn from_coeffs(c: Vec<Complex64>) -> Self {
        let kind = if c.first().map_or(true, |x| x.norm() == 0.0) { Kind::Psi } else { Kind::S };
        TruncSeries { c, kind }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn coeff(&self, j: usize) -> Complex64 {
        self.c.get(j).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.c
    }

    fn zero(order: usize) -> Self {
        TruncSeries { c: vec![Complex64::new(0.0, 0.0); order + 1], kind: Kind::Psi }
    }

    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.c[1] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn truncated(&self, order: usize) -> Self {
        let mut c = self.c.clone();
        c.resize(order + 1, Complex64::new(0.0, 0.0));
        TruncSeries { c, kind: self.kind }
    }

    pub fn mul(&self, other: &Self, order: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
        for i in 0..=order.min(self.order()) {
            if self.c[i].norm() == 0.0 {
                continue;
            }
            for j in 0..=(order - i).min(other.order()) {
                c[i + j] += self.c[i] * other.c[j];
            }
        }
        TruncSeries::from_coeffs(c)
    }

    pub fn derivative(&self) -> Self {
        let mut c = Vec::with_capacity(self.c.len().saturating_sub(1).max(1));
        for j in 1..self.c.len() {
            c.push(self.c[j] * j as f64);
        }
        if c.is_empty() {
            c.push(Complex64::new(0.0, 0.0));
        }
        TruncSeries::from_coeffs(c)
    }

    /// Composition self(inner); the inner series must be psi-type.
    pub fn compose(&self, inner: &Self, order: usize) -> Result<Self> {
        if inner.coeff(0).norm() != 0.0 {
            return Err(Error::InvalidInput("composition needs inner series with c0 = 0".into()));
        }
        let mut acc = Self::zero(order);
        for j in (0..=self.order()).rev() {
            acc = acc.mul(inner, order);
            acc.c[0] += self.c[j];
        }
        acc.kind = if acc.c[0].norm() == 0.0 { Kind::Psi } else { Kind::S };
        Ok(acc)
    }

    /// Multiplicative reciprocal; needs c0 != 0.
    pub fn recip(&self, order: usize) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0.norm() < 1e-300 {
            return Err(Error::InvalidInput("reciprocal needs nonzero constant term".into()));
        }
        let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
        c[0] = 1.0 / c0;
        for m in 1..=order {
            let mut s = Complex64::new(0.0, 0.0);
            for j in 1..=m.min(self.order()) {
                s += self.c[j] * c[m - j];
            }
            c[m] = -s / c0;
        }
        Ok(TruncSeries::from_coeffs(c))
    }

    /// exp of a psi-type series through the ODE recurrence.
    pub fn exp_psi(&self, order: usize) -> Result<Self> {
        if self.coeff(0).norm() != 0.0 {
            return Err(Error::InvalidInput("exp_psi needs c0 = 0".into()));
        }
        let mut e = vec![Complex64::new(0.0, 0.0); order + 1];
        e[0] = Complex64::new(1.0, 0.0);
        for m in 1..=order {
            let mut s = Complex64::new(0.0, 0.0);
            for j in 1..=m.min(self.order()) {
                s += self.c[j] * j as f64 * e[m - j];
            }
            e[m] = s / m as f64;
        }
        Ok(TruncSeries::from_coeffs(e))
    }

    /// exp of a general series: e^{c0} * exp_psi(rest).
    pub fn exp(&self, order: usize) -> Result<Self> {
        let c0 = self.coeff(0);
        let mut rest = self.truncated(order);
        rest.c[0] = Complex64::new(0.0, 0.0);
        rest.kind = Kind::Psi;
        let mut e = rest.exp_psi(order)?;
        let scale = c0.exp();
        for c in e.c.iter_mut() {
            *c *= scale;
        }
        Ok(e)
    }

    /// log of a series with c0 != 0: ln(c0) + integral of s'/s.
    pub fn log(&self, order: usize) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0.norm() < 1e-300 {
            return Err(Error::InvalidInput("log needs nonzero constant term".into()));
        }
        let d = self.derivative();
        let r = self.recip(order)?;
        let dr = d.mul(&r, order.saturating_sub(1));
        let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
        c[0] = c0.ln();
        for m in 1..=order {
            c[m] = dr.coeff(m - 1) / m as f64;
        }
        Ok(TruncSeries::from_coeffs(c))
    }

    /// Compositional inverse of a psi-type series with c1 != 0, by Newton
    /// iteration with order doubling on g <- g - (self(g) - z)/self'(g).
    pub fn invert(&self) -> Result<Self> {
        if self.kind != Kind::Psi || self.coeff(0).norm() != 0.0 {
            return Err(Error::InvalidInput("inversion needs a psi-type series (c0 = 0)".into()));
        }
        let c1 = self.coeff(1);
        if c1.norm() <= INVERT_C1_FLOOR {
            return Err(Error::NotInvertible { c1_abs: c1.norm() });
        }
        let order = self.order();
        let mut g = Self::zero(1);
        g.c[1] = 1.0 / c1;
        let dself = self.derivative();
        let mut prec = 1usize;
        while prec < order {
            prec = (2 * prec).min(order);
            let gg = g.truncated(prec);
            let mut num = self.truncated(prec).compose(&gg, prec)?;
            num.c[1] -= 1.0; // self(g) - z
            let den = dself.truncated(prec.saturating_sub(1)).compose(&gg, prec)?;
            let corr = num.mul(&den.recip(prec)?, prec);
            let mut next = gg;
            for j in 0..=prec {
                next.c[j] -= corr.coeff(j);
            }
            next.c[0] = Complex64::new(0.0, 0.0);
            g = next;
        }
        g.kind = Kind::Psi;
        Ok(g.truncated(order))
    }

    /// S-transform series from a psi-type series: S(z) = (1+z)/z * psi^{-1}(z).
    pub fn psi_to_s(&self) -> Result<Self> {
        let inv = self.invert()?;
        let order = self.order();
        // inv/z then * (1+z)
        let mut shifted = vec![Complex64::new(0.0, 0.0); order + 1];
        for j in 1..=order {
            shifted[j - 1] = inv.c[j];
        }
        let shifted = TruncSeries::from_coeffs(shifted);
        let one_plus_z = TruncSeries::from_coeffs(vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]);
        Ok(one_plus_z.mul(&shifted, order))
    }
}

/// Truncated series of exp(t/(z + 1/2)) = e^{2t} exp(2t sum_{j>=1} (-2z)^j),
/// the S-transform of the free unitary Poisson law.
pub fn poisson_s_series(t: f64, order: usize) -> TruncSeries {
    let mut g = TruncSeries::zero(order);
    let mut p = 1.0f64;
    for j in 1..=order {
        p *= -2.0;
        g.c[j] = Complex64::new(2.0 * t * p, 0.0);
    }
    let mut e = g.exp_psi(order).expect("c0 = 0 by construction");
    let scale = (2.0 * t).exp();
    for c in e.c.iter_mut() {
        *c *= scale;
    }
    e
}

/// Moments m_1..m_L of nu boxtimes Pi_t from the moments of nu:
/// psi_nu -> S_nu -> multiply by exp(t/(z+1/2)) -> invert back.
pub fn conv_moments(moments: &[Complex64], t: f64, order: usize) -> Result<Vec<Complex64>> {
    if !(t >= 0.0) {
        return Err(Error::InvalidInput(format!("conv_moments needs t >= 0, got {t}")));
    }
    if moments.len() < order {
        return Err(Error::InvalidInput(format!(
            "need at least {order} input moments, got {}",
            moments.len()
        )));
    }
    // Haar fixed point: all moments zero stays uniform under boxtimes
    if moments.iter().take(order).all(|m| m.norm() == 0.0) {
        return Ok(vec![Complex64::new(0.0, 0.0); order]);
    }
    let psi_nu = TruncSeries::psi_from_moments(moments, order);
    if psi_nu.coeff(1).norm() <= INVERT_C1_FLOOR {
        return Err(Error::NotInvertible { c1_abs: psi_nu.coeff(1).norm() });
    }
    let s_nu = psi_nu.psi_to_s()?;
    let s_out = s_nu.mul(&poisson_s_series(t, order), order);
    // psi_t^{-1}(z) = z S_out(z) / (1+z)
    let one_plus_z = TruncSeries::from_coeffs(vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]);
    let frac = s_out.mul(&one_plus_z.recip(order)?, order);
    let mut inv_psi = vec![Complex64::new(0.0, 0.0); order + 1];
    for j in 0..order {
        inv_psi[j + 1] = frac.coeff(j);
    }
    let psi_t = TruncSeries::from_coeffs(inv_psi).invert()?;
    Ok((1..=order).map(|j| psi_t.coeff(j)).collect())
}

/// Truncated Fourier density u_t(x) = (1/2pi) Re(1 + 2 psi_t(e^{-ix})).
pub fn pde_density(moments: &[Complex64], t: f64, x: f64, order: usize) -> Result<f64> {
    if order > 128 {
        return Err(Error::InvalidInput(format!("pde_density order capped at 128, got {order}")));
    }
    let cs = conv_moments(moments, t, order)?;
    Ok(u_val(&cs, x))
}

fn u_val(cs: &[Complex64], x: f64) -> f64 {
    let mut acc = 1.0;
    for (l, c) in cs.iter().enumerate() {
        acc += 2.0 * (c * Complex64::from_polar(1.0, -((l + 1) as f64) * x)).re;
    }
    acc / (2.0 * PI)
}

/// Conjugate-function (periodic Hilbert transform) value of the truncated
/// density: coefficient map c_l -> -i sgn(l) c_l.
fn hu_val(cs: &[Complex64], x: f64) -> f64 {
    let mut acc = 0.0;
    for (l, c) in cs.iter().enumerate() {
        // frequency -(l+1) carries coefficient c_l/2pi: H multiplies by +i there
        acc += 2.0 * (Complex64::i() * c * Complex64::from_polar(1.0, -((l + 1) as f64) * x)).re;
    }
    acc / (2.0 * PI)
}

fn u_dx(cs: &[Complex64], x: f64) -> f64 {
    let mut acc = 0.0;
    for (l, c) in cs.iter().enumerate() {
        let w = (l + 1) as f64;
        acc += 2.0 * (Complex64::new(0.0, -w) * c * Complex64::from_polar(1.0, -w * x)).re;
    }
    acc / (2.0 * PI)
}

fn hu_dx(cs: &[Complex64], x: f64) -> f64 {
    let mut acc = 0.0;
    for (l, c) in cs.iter().enumerate() {
        let w = (l + 1) as f64;
        acc += 2.0 * (Complex64::i() * Complex64::new(0.0, -w) * c * Complex64::from_polar(1.0, -w * x)).re;
    }
    acc / (2.0 * PI)
}

/// Absolute residual of the periodic root-flow PDE
/// du/dt + (1/pi) d/dx arctan(Hu/u) = 0 at a probe point, with du/dt by
/// central differences in t and the x-derivative taken analytically from the
/// truncated series. Requires t > 1 (no atom) and u bounded away from 0.
pub fn pde_residual(
    moments: &[Complex64],
    t: f64,
    x: f64,
    h_t: f64,
    order: usize,
) -> Result<f64> {
    if !(t > 1.0) {
        return Err(Error::InvalidInput(format!("pde_residual needs t > 1, got {t}")));
    }
    if !(h_t > 0.0 && h_t < t - 1.0) {
        return Err(Error::InvalidInput("pde_residual needs 0 < h_t < t - 1".into()));
    }
    let c0 = conv_moments(moments, t, order)?;
    let u = u_val(&c0, x);
    if u <= 1e-6 {
        return Err(Error::InvalidInput(format!("probe density {u} too small for arctan conditioning")));
    }
    let cp = conv_moments(moments, t + h_t, order)?;
    let cm = conv_moments(moments, t - h_t, order)?;
    let dudt = (u_val(&cp, x) - u_val(&cm, x)) / (2.0 * h_t);
    let h = hu_val(&c0, x);
    let darctan = (hu_dx(&c0, x) * u - u_dx(&c0, x) * h) / (u * u + h * h);
    Ok((dudt + darctan / PI).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    /// Independent Lagrange-inversion oracle:
    /// [z^l] s^{-1} = (1/l) [w^{l-1}] (w / s(w))^l.
    fn lagrange_inverse_coeff(s: &TruncSeries, l: usize) -> Complex64 {
        let order = l;
        // w/s(w) = 1 / (s/w)
        let mut shifted = vec![Complex64::new(0.0, 0.0); order + 1];
        for j in 1..=s.order().min(order + 1) {
            shifted[j - 1] = s.coeff(j);
        }
        let base = TruncSeries::from_coeffs(shifted).recip(order).unwrap();
        let mut p = TruncSeries::from_coeffs(vec![Complex64::new(1.0, 0.0)]);
        for _ in 0..l {
            p = p.mul(&base, order);
        }
        p.coeff(l - 1) / l as f64
    }

    #[test]
    fn invert_identity() {
        let id = TruncSeries::identity(8);
        let inv = id.invert().unwrap();
        assert_eq!(inv.coeffs(), TruncSeries::identity(8).coeffs());
    }

    #[test]
    fn invert_moebius() {
        // z/(1-z) has inverse z/(1+z): coefficients 1, -1, 1, -1, ...
        let s = TruncSeries::from_coeffs(
            (0..=10).map(|j| if j == 0 { c(0.0, 0.0) } else { c(1.0, 0.0) }).collect(),
        );
        let inv = s.invert().unwrap();
        for j in 1..=10 {
            let want = if j % 2 == 1 { 1.0 } else { -1.0 };
            assert!(close(inv.coeff(j), c(want, 0.0), 1e-12), "j={j}: {:?}", inv.coeff(j));
        }
    }

    #[test]
    fn invert_matches_lagrange_oracle() {
        let s = TruncSeries::from_coeffs(vec![
            c(0.0, 0.0),
            c(0.9, 0.3),
            c(-0.4, 0.1),
            c(0.2, -0.7),
            c(0.05, 0.0),
            c(-0.3, 0.2),
            c(0.0, 0.1),
            c(0.1, 0.0),
            c(0.02, -0.03),
        ]);
        let inv = s.invert().unwrap();
        for l in 1..=8 {
            let want = lagrange_inverse_coeff(&s, l);
            assert!(close(inv.coeff(l), want, 1e-10), "l={l}: {:?} vs {want:?}", inv.coeff(l));
        }
    }

    #[test]
    fn invert_roundtrip() {
        let s = TruncSeries::from_coeffs(vec![
            c(0.0, 0.0),
            c(1.4, -0.2),
            c(0.3, 0.3),
            c(-0.2, 0.0),
            c(0.0, -0.5),
            c(0.25, 0.1),
        ]);
        let back = s.invert().unwrap().invert().unwrap();
        for j in 0..=5 {
            assert!(close(back.coeff(j), s.coeff(j), 1e-10), "j={j}");
        }
    }

    #[test]
    fn invert_rejects_flat_series() {
        let s = TruncSeries::from_coeffs(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(s.invert(), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn compose_identities_and_associativity() {
        let s = TruncSeries::from_coeffs(vec![c(0.3, 0.0), c(1.0, 0.2), c(-0.5, 0.1), c(0.2, 0.0)]);
        let id = TruncSeries::identity(3);
        let left = s.compose(&id, 3).unwrap();
        for j in 0..=3 {
            assert!(close(left.coeff(j), s.coeff(j), 1e-13));
        }
        // (a o b) o c = a o (b o c) on random psi-type triples
        let a = TruncSeries::from_coeffs(vec![c(0.0, 0.0), c(1.1, 0.0), c(0.3, -0.2), c(0.0, 0.4), c(0.2, 0.0)]);
        let b = TruncSeries::from_coeffs(vec![c(0.0, 0.0), c(0.8, 0.1), c(-0.1, 0.0), c(0.3, 0.3), c(0.0, 0.0)]);
        let cc = TruncSeries::from_coeffs(vec![c(0.0, 0.0), c(1.0, -0.4), c(0.2, 0.2), c(-0.3, 0.0), c(0.1, 0.1)]);
        let l = a.compose(&b, 8).unwrap().compose(&cc, 8).unwrap();
        let r = a.compose(&b.compose(&cc, 8).unwrap(), 8).unwrap();
        for j in 0..=8 {
            assert!(close(l.coeff(j), r.coeff(j), 1e-10), "j={j}");
        }
    }

    #[test]
    fn psi_to_s_point_masses() {
        // delta_1: all moments 1 -> S = 1
        let ms = vec![c(1.0, 0.0); 8];
        let s = TruncSeries::psi_from_moments(&ms, 8).psi_to_s().unwrap();
        assert!(close(s.coeff(0), c(1.0, 0.0), 1e-12));
        for j in 1..=7 {
            assert!(s.coeff(j).norm() < 1e-11, "j={j}: {:?}", s.coeff(j));
        }
        // delta_{e^{i a}}: moments e^{i l a} -> S constant e^{-i a}
        let alpha = 0.85f64;
        let ms: Vec<Complex64> = (1..=8).map(|l| Complex64::from_polar(1.0, alpha * l as f64)).collect();
        let s = TruncSeries::psi_from_moments(&ms, 8).psi_to_s().unwrap();
        assert!(close(s.coeff(0), Complex64::from_polar(1.0, -alpha), 1e-12));
        for j in 1..=7 {
            assert!(s.coeff(j).norm() < 1e-10, "j={j}");
        }
    }

    #[test]
    fn poisson_s_series_matches_closed_form() {
        // invert psi series of Pi_t and compare S against exp(t/(z+1/2))
        let t = 0.73;
        let order = 10;
        let ms: Vec<Complex64> =
            (1..=order).map(|l| c(poisson::moment(t, l as i64).unwrap(), 0.0)).collect();
        let s = TruncSeries::psi_from_moments(&ms, order).psi_to_s().unwrap();
        let want = poisson_s_series(t, order);
        for j in 0..order {
            assert!(close(s.coeff(j), want.coeff(j), 1e-9), "j={j}: {:?} vs {:?}", s.coeff(j), want.coeff(j));
        }
    }

    #[test]
    fn conv_moments_displayed_coefficients() {
        let t = 0.8;
        let (m1, m2, m3) = (c(0.7, 0.2), c(0.5, -0.1), c(0.3, 0.05));
        let got = conv_moments(&[m1, m2, m3], t, 3).unwrap();
        let e = |l: f64| (-2.0 * l * t).exp();
        assert!(close(got[0], e(1.0) * m1, 1e-12));
        assert!(close(got[1], e(2.0) * (4.0 * t * m1 * m1 + m2), 1e-12));
        assert!(close(
            got[2],
            e(3.0) * ((24.0 * t * t - 8.0 * t) * m1 * m1 * m1 + 12.0 * t * m1 * m2 + m3),
            1e-12
        ));
    }

    #[test]
    fn conv_moments_delta_one_gives_poisson() {
        let t = 0.6;
        let ms = vec![c(1.0, 0.0); 10];
        let got = conv_moments(&ms, t, 10).unwrap();
        for l in 1..=10 {
            let want = poisson::moment(t, l as i64).unwrap();
            assert!(close(got[l - 1], c(want, 0.0), 1e-11), "l={l}: {:?} vs {want}", got[l - 1]);
        }
    }

    #[test]
    fn conv_moments_rotation_covariance() {
        let t = 0.5;
        let alpha = 1.2f64;
        let ms: Vec<Complex64> = (1..=6).map(|l| Complex64::from_polar(1.0, alpha * l as f64)).collect();
        let got = conv_moments(&ms, t, 6).unwrap();
        for l in 1..=6 {
            let want = Complex64::from_polar(poisson::moment(t, l as i64).unwrap(), alpha * l as f64);
            assert!(close(got[l - 1], want, 1e-10), "l={l}");
        }
    }

    #[test]
    fn conv_moments_rejects_balanced_two_atom_measure() {
        // nu = (delta_1 + delta_{-1})/2 has m1 = 0 and lies outside M_T*
        let ms: Vec<Complex64> = (1..=6).map(|l| c(if l % 2 == 0 { 1.0 } else { 0.0 }, 0.0)).collect();
        assert!(matches!(conv_moments(&ms, 0.5, 6), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn conv_moments_semigroup() {
        let ms: Vec<Complex64> = vec![c(0.8, 0.1), c(0.5, 0.0), c(0.3, -0.2), c(0.2, 0.0), c(0.1, 0.1), c(0.05, 0.0)];
        let (t1, t2) = (0.4, 0.9);
        let step = conv_moments(&conv_moments(&ms, t1, 6).unwrap(), t2, 6).unwrap();
        let once = conv_moments(&ms, t1 + t2, 6).unwrap();
        for l in 0..6 {
            assert!(close(step[l], once[l], 1e-9), "l={l}: {:?} vs {:?}", step[l], once[l]);
        }
    }

    #[test]
    fn conv_moments_realness_symmetry() {
        // real angular density: m_l real here; outputs stay real
        let ms = vec![c(0.6, 0.0), c(0.3, 0.0), c(0.1, 0.0), c(0.05, 0.0)];
        let got = conv_moments(&ms, 0.7, 4).unwrap();
        for g in got {
            assert!(g.im.abs() < 1e-12);
        }
    }

    #[test]
    fn pde_density_limits() {
        // large t: uniform limit
        let ms = vec![c(0.9, 0.0), c(0.4, 0.0), c(0.2, 0.0)];
        let u = pde_density(&ms, 40.0, 0.7, 3).unwrap();
        assert_relative_eq!(u, 1.0 / (2.0 * PI), epsilon = 1e-10);
        // delta_1 at t=2 matches the solver density
        let ms = vec![c(1.0, 0.0); 60];
        for &x in &[0.4f64, 1.3, 2.9] {
            let u = pde_density(&ms, 2.0, x, 60).unwrap();
            let f = poisson::density(2.0, x).unwrap();
            assert!((u - f).abs() < 1e-5, "x={x}: {u} vs {f}");
        }
    }

    #[test]
    fn pde_residual_steady_state_exact_zero() {
        let ms = vec![c(0.0, 0.0); 16];
        let r = pde_residual(&ms, 2.0, 1.0, 1e-3, 16).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn pde_residual_delta_one_small() {
        let ms = vec![c(1.0, 0.0); 80];
        let r = pde_residual(&ms, 2.0, 1.0, 1e-3, 80).unwrap();
        assert!(r <= 1e-4, "{r}");
        let ms = vec![c(1.0, 0.0); 160];
        let r2 = pde_residual(&ms, 2.0, 1.0, 1e-3, 160).unwrap();
        assert!(r2 <= r + 1e-12, "{r2} vs {r}");
    }
}
