//! Fixed-point big-integer kernel for sign-certain evaluation of scaled
//! trigonometric sums.
//!
//! Values are `BigInt` mantissas with an implicit scale of `2^-bits`.
//! Trigonometric seeds are produced by argument reduction against an
//! embedded 8192-bit value of pi followed by a Taylor series; tables of
//! cos/sin at integer (or half-integer) multiples of an angle come from the
//! Chebyshev three-term recurrence, whose error grows only linearly in the
//! index. All routines carry 32 internal guard bits.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::sync::OnceLock;

/// floor(pi * 2^8192) as hex.
const PI_HEX: &str = include_str!("consts/pi_hex.txt");
/// floor(ln(2) * 2^8192) as hex.
const LN2_HEX: &str = include_str!("consts/ln2_hex.txt");
const CONST_BITS: u32 = 8192;
const GUARD: u32 = 32;

fn pi_full() -> &'static BigInt {
    static PI: OnceLock<BigInt> = OnceLock::new();
    PI.get_or_init(|| BigInt::parse_bytes(PI_HEX.trim().as_bytes(), 16).unwrap())
}

fn ln2_full() -> &'static BigInt {
    static LN2: OnceLock<BigInt> = OnceLock::new();
    LN2.get_or_init(|| BigInt::parse_bytes(LN2_HEX.trim().as_bytes(), 16).unwrap())
}

/// pi at `bits` fractional bits (rounded down).
pub fn pi_fx(bits: u32) -> BigInt {
    assert!(bits <= CONST_BITS - 8, "precision exceeds embedded constants");
    pi_full() >> (CONST_BITS - bits)
}

fn ln2_fx(bits: u32) -> BigInt {
    assert!(bits <= CONST_BITS - 8);
    ln2_full() >> (CONST_BITS - bits)
}

/// Exact conversion of a (finite) f64 into fixed point at `bits`.
pub fn f64_to_fx(x: f64, bits: u32) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    let b = x.to_bits();
    let sign = if b >> 63 == 1 { -1 } else { 1 };
    let biased = ((b >> 52) & 0x7ff) as i64;
    let (mant, exp) = if biased == 0 {
        (b & ((1u64 << 52) - 1), -1074i64)
    } else {
        ((b & ((1u64 << 52) - 1)) | (1u64 << 52), biased - 1075)
    };
    let m = BigInt::from(mant) * sign;
    let shift = exp + bits as i64;
    if shift >= 0 {
        m << shift as u64
    } else {
        m >> (-shift) as u64
    }
}

/// Round-to-nearest conversion back to f64 of `mant * 2^-bits`. Saturates on
/// overflow; only used for diagnostics.
pub fn fx_to_f64(mant: &BigInt, bits: u32) -> f64 {
    let (top, nbits) = top_bits(mant);
    if nbits == 0 {
        return 0.0;
    }
    top * 2f64.powi(nbits as i32 - 63 - bits as i32)
}

/// Natural log of |mant * 2^-bits|, or -inf for zero.
pub fn fx_ln_abs(mant: &BigInt, bits: u32) -> f64 {
    let (top, nbits) = top_bits(mant);
    if nbits == 0 {
        return f64::NEG_INFINITY;
    }
    top.abs().ln() + (nbits as f64 - 63.0 - bits as f64) * std::f64::consts::LN_2
}

/// Leading 63 bits of |x| as f64 (signed), and the total bit length.
fn top_bits(x: &BigInt) -> (f64, u64) {
    let nbits = x.bits();
    if nbits == 0 {
        return (0.0, 0);
    }
    let shifted: BigInt = if nbits > 63 { x >> (nbits - 63) } else { x << (63 - nbits) };
    let v: i64 = shifted.try_into().unwrap_or(i64::MAX);
    (v as f64, nbits)
}

fn mul_fx(a: &BigInt, b: &BigInt, bits: u32) -> BigInt {
    (a * b) >> bits
}

/// cos and sin of an f64 angle, each accurate to a few ulps of `2^-bits`.
pub fn cos_sin_fx(theta: f64, bits: u32) -> (BigInt, BigInt) {
    let wb = bits + GUARD;
    let th = f64_to_fx(theta, wb);
    let pi2 = pi_fx(wb) >> 1;
    // quadrant reduction: r = theta - q * pi/2, |r| <= pi/4 (+ rounding)
    let q = (theta / std::f64::consts::FRAC_PI_2).round();
    let qi = q as i64;
    let r = th - &pi2 * BigInt::from(qi);
    let (c, s) = cos_sin_taylor(&r, wb);
    let (c, s) = match qi.rem_euclid(4) {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    };
    (c >> GUARD, s >> GUARD)
}

/// Taylor evaluation on the reduced range |r| <= pi/4 + eps.
fn cos_sin_taylor(r: &BigInt, bits: u32) -> (BigInt, BigInt) {
    let r2 = mul_fx(r, r, bits);
    let one = BigInt::from(1) << bits;
    let mut cos = one.clone();
    let mut sin = r.clone();
    let mut term_c = one;
    let mut term_s = r.clone();
    let mut k: u64 = 0;
    loop {
        k += 2;
        term_c = mul_fx(&term_c, &r2, bits) / BigInt::from(k * (k - 1));
        term_s = mul_fx(&term_s, &r2, bits) / BigInt::from(k * (k + 1));
        let done = term_c.is_zero() && term_s.is_zero();
        if k % 4 == 2 {
            cos -= &term_c;
            sin -= &term_s;
        } else {
            cos += &term_c;
            sin += &term_s;
        }
        if done {
            break;
        }
    }
    (cos, sin)
}

/// e^-y for y >= 0, accurate to a few ulps of `2^-bits`.
pub fn exp_neg_fx(y: f64, bits: u32) -> BigInt {
    assert!(y >= 0.0);
    let wb = bits + GUARD;
    let n2 = (y / std::f64::consts::LN_2).floor();
    let r = f64_to_fx(y, wb) - (ln2_fx(wb) * BigInt::from(n2 as i64));
    // e^-r on r in [0, ln2): alternating Taylor
    let one = BigInt::from(1) << wb;
    let mut acc = one.clone();
    let mut term = one;
    let mut k: u64 = 0;
    loop {
        k += 1;
        term = mul_fx(&term, &r, wb) / BigInt::from(k);
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            acc -= &term;
        } else {
            acc += &term;
        }
    }
    acc >> (GUARD + n2 as u32)
}

/// Table of cos(w_m * theta), sin(w_m * theta) for m = 0..count-1 with
/// w_m = m (half = false) or w_m = m + 1/2 (half = true).
pub struct TrigTable {
    pub cos: Vec<BigInt>,
    pub sin: Vec<BigInt>,
    pub bits: u32,
}

pub fn trig_table(theta: f64, count: usize, half: bool, bits: u32) -> TrigTable {
    let (c1, s1) = cos_sin_fx(theta, bits);
    let two_c1 = &c1 << 1;
    let mut cos = Vec::with_capacity(count);
    let mut sin = Vec::with_capacity(count);
    let (mut cm1, mut sm1, mut cm, mut sm);
    if half {
        let (ch, sh) = cos_sin_fx(theta / 2.0, bits);
        // entry -1 is cos(-theta/2), sin(-theta/2)
        cm1 = ch.clone();
        sm1 = -sh.clone();
        cm = ch;
        sm = sh;
    } else {
        cm1 = c1.clone();
        sm1 = -s1.clone();
        cm = BigInt::from(1) << bits;
        sm = BigInt::zero();
    }
    for _ in 0..count {
        cos.push(cm.clone());
        sin.push(sm.clone());
        let cnext = mul_fx(&two_c1, &cm, bits) - &cm1;
        let snext = mul_fx(&two_c1, &sm, bits) - &sm1;
        cm1 = std::mem::replace(&mut cm, cnext);
        sm1 = std::mem::replace(&mut sm, snext);
    }
    TrigTable { cos, sin, bits }
}

/// Conservative ulp bound for entry m of a Chebyshev table (unit-magnitude
/// seed values, a few ulps of seed error, linear growth).
pub fn table_err_ulps(m: usize) -> u64 {
    6 * (m as u64 + 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fx_err(a: &BigInt, x: f64, bits: u32) -> f64 {
        (fx_to_f64(a, bits) - x).abs()
    }

    #[test]
    fn f64_roundtrip_exact() {
        for &x in &[0.0, 1.0, -1.5, std::f64::consts::PI, 1e-30, -3.7e10] {
            let fx = f64_to_fx(x, 200);
            assert_eq!(fx_to_f64(&fx, 200), x);
        }
    }

    #[test]
    fn cos_sin_matches_f64() {
        for &th in &[0.0, 0.1, -0.7, 1.5, 3.14159, -3.1, 2.0, 0.5] {
            let (c, s) = cos_sin_fx(th, 128);
            assert!(fx_err(&c, th.cos(), 128) < 1e-15, "cos({th})");
            assert!(fx_err(&s, th.sin(), 128) < 1e-15, "sin({th})");
        }
    }

    #[test]
    fn cos_sin_high_precision_pythagoras() {
        // c^2 + s^2 = 1 to ~2^-bits at 1024 bits
        let bits = 1024;
        let (c, s) = cos_sin_fx(0.8372, bits);
        let one = BigInt::from(1) << bits;
        let r = (&c * &c + &s * &s) >> bits;
        let diff: BigInt = &r - &one;
        assert!(diff.magnitude().bits() < 16, "pythagoras residue {} bits", diff.magnitude().bits());
    }

    #[test]
    fn exp_neg_matches_f64() {
        for &y in &[0.0, 0.3, 1.0, 5.5, 40.0] {
            let e = exp_neg_fx(y, 128);
            let want = (-y).exp();
            assert!((fx_to_f64(&e, 128) - want).abs() < 1e-15 * want.max(1e-300), "exp(-{y})");
        }
    }

    #[test]
    fn trig_table_matches_direct() {
        let th = 0.3517;
        let t = trig_table(th, 50, false, 192);
        for m in 0..50 {
            assert!(fx_err(&t.cos[m], (m as f64 * th).cos(), 192) < 1e-14);
            assert!(fx_err(&t.sin[m], (m as f64 * th).sin(), 192) < 1e-14);
        }
        let t = trig_table(th, 50, true, 192);
        for m in 0..50 {
            let w = m as f64 + 0.5;
            assert!(fx_err(&t.cos[m], (w * th).cos(), 192) < 1e-14);
            assert!(fx_err(&t.sin[m], (w * th).sin(), 192) < 1e-14);
        }
    }

    #[test]
    fn table_error_stays_linear_at_high_index() {
        // against f64 only loosely; against recurrence invariant tightly:
        // cos(m th)^2 + sin(m th)^2 = 1
        let bits = 256;
        let t = trig_table(1.234567, 2000, false, bits);
        let one = BigInt::from(1) << bits;
        for m in [500usize, 1999] {
            let r = (&t.cos[m] * &t.cos[m] + &t.sin[m] * &t.sin[m]) >> bits;
            let diff = (&r - &one).magnitude().bits();
            assert!(diff < 32, "m={m}: {diff} bits of drift");
        }
    }
}
