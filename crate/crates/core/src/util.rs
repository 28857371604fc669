//! Small numeric helpers shared across modules.

use num_complex::Complex64;

/// ln(n!) by direct summation (exact to f64 accumulation error).
pub fn ln_factorial(n: usize) -> f64 {
    let mut acc = NeumaierSum::new();
    for i in 2..=n {
        acc.add((i as f64).ln());
    }
    acc.value()
}

/// ln(C(n, j)).
pub fn ln_binomial(n: usize, j: usize) -> f64 {
    debug_assert!(j <= n);
    ln_factorial(n) - ln_factorial(j) - ln_factorial(n - j)
}

/// Compensated (Neumaier) accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSumC {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl NeumaierSumC {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Wrap an angle into [-pi, pi).
pub fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(std::f64::consts::TAU);
    if t >= std::f64::consts::PI {
        t -= std::f64::consts::TAU;
    }
    t
}

/// cot(z) evaluated through exponentials; stable for Im z > 0.
pub fn cot_upper(z: Complex64) -> Complex64 {
    let w = (Complex64::i() * 2.0 * z).exp(); // |w| < 1 for Im z > 0
    Complex64::i() * (w + 1.0) / (w - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_binom_small() {
        assert!((ln_binomial(4, 2) - 6f64.ln()).abs() < 1e-14);
        assert!((ln_binomial(10, 3) - 120f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn neumaier_recovers_cancellation() {
        let mut s = NeumaierSum::new();
        s.add(1e16);
        s.add(1.0);
        s.add(-1e16);
        assert_eq!(s.value(), 1.0);
    }

    #[test]
    fn wrap_angle_range() {
        for &t in &[0.0, 3.2, -3.2, 10.0, -10.0, std::f64::consts::PI] {
            let w = wrap_angle(t);
            assert!((-std::f64::consts::PI..std::f64::consts::PI).contains(&w));
            assert!(((w - t) / std::f64::consts::TAU - ((w - t) / std::f64::consts::TAU).round()).abs() < 1e-12);
        }
    }

    #[test]
    fn cot_matches_naive_in_upper_half() {
        let z = Complex64::new(0.3, 0.4);
        let naive = z.cos() / z.sin();
        let c = cot_upper(z);
        assert!((c - naive).norm() < 1e-12);
    }
}
