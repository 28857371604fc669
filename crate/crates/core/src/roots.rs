//! Root extraction on the unit circle by certified sign-change bracketing.
//!
//! Known roots (the multiplicity n-k zero of a Laguerre polynomial at angle
//! 0, or surviving input atoms under the derivative flow) are divided out of
//! the sign function analytically, never located numerically. The remaining
//! roots are assumed simple; a count check is the safety net, with up to
//! four grid-doubling refinements before giving up.

use crate::error::{Error, Result};
use crate::poly::{EmpiricalAngles, UnitPoly};
use crate::trig::{unit_poly_paired, FixedPaired, PairedF64, SeriesProvider};
use std::f64::consts::PI;

const BISECT_TOL: f64 = 1e-12;
const MAX_REFINE: usize = 4;

/// Roots of a general polynomial with all roots on the unit circle.
/// `grid` is the initial number of sample points (0 picks 8n; at least 4n).
pub fn roots_on_circle(p: &UnitPoly, grid: usize) -> Result<EmpiricalAngles> {
    let provider = SeriesProvider::Float { n: p.degree(), paired: unit_poly_paired(p) };
    find_roots(&provider, &[], grid)
}

/// Roots of the circular Laguerre polynomial L_{n,k}; the angle-0 root of
/// multiplicity n-k (k <= n) is assigned analytically.
pub fn laguerre_roots(n: usize, k: usize, grid: usize) -> Result<EmpiricalAngles> {
    let provider = SeriesProvider::Laguerre { n, k };
    let deflations: &[(f64, usize)] = if k < n { &[(0.0, n - k)] } else { &[] };
    find_roots(&provider, deflations, grid)
}

/// Roots of D^k applied to the polynomial with the given root multiset
/// (exact-coefficient pathway; input atoms of multiplicity m survive with
/// multiplicity m - k).
pub fn angle_deriv_roots(input: &EmpiricalAngles, k: usize, grid: usize) -> Result<EmpiricalAngles> {
    let deflations: Vec<(f64, usize)> = input
        .entries()
        .iter()
        .filter_map(|&(a, m)| (m > k).then(|| (a, m - k)))
        .collect();
    let provider = SeriesProvider::AngleDeriv { angles: input.clone(), k };
    find_roots(&provider, &deflations, grid)
}

struct SignEngine<'a> {
    provider: &'a SeriesProvider,
    f64_series: PairedF64,
    fixed: Vec<Option<FixedPaired>>, // lazily built per tier
    deflations: &'a [(f64, usize)],
    wrap_parity: i8,
}

impl<'a> SignEngine<'a> {
    fn new(provider: &'a SeriesProvider, deflations: &'a [(f64, usize)], remaining: usize) -> Self {
        SignEngine {
            provider,
            f64_series: provider.f64_series(),
            fixed: (0..provider.tiers().len()).map(|_| None).collect(),
            deflations,
            wrap_parity: if remaining % 2 == 1 { -1 } else { 1 },
        }
    }

    /// Sign of the deflated function at an unwrapped angle in [-pi, 3pi).
    /// None when unresolvable at every precision tier.
    fn sign(&mut self, theta_unwrapped: f64) -> Option<i8> {
        let (theta, parity) = if theta_unwrapped >= PI {
            (theta_unwrapped - 2.0 * PI, self.wrap_parity)
        } else {
            (theta_unwrapped, 1)
        };
        let mut defl: i8 = parity;
        for &(a, m) in self.deflations {
            let s = (theta - a) / 2.0;
            if s == 0.0 {
                return None; // exactly on a deflated root
            }
            if s.sin() < 0.0 && m % 2 == 1 {
                defl = -defl;
            }
        }
        let (v, err) = self.f64_series.eval(theta);
        if v.abs() > 16.0 * err {
            return Some(if v > 0.0 { defl } else { -defl });
        }
        for (i, &bits) in self.provider.tiers().iter().enumerate() {
            let fx = self.fixed[i].get_or_insert_with(|| self.provider.build(bits));
            let (s, _) = fx.sign_eval(theta);
            if let Some(s) = s {
                return Some(s * defl);
            }
        }
        None
    }
}

fn find_roots(
    provider: &SeriesProvider,
    deflations: &[(f64, usize)],
    grid: usize,
) -> Result<EmpiricalAngles> {
    let n = provider.degree();
    let deflated: usize = deflations.iter().map(|d| d.1).sum();
    debug_assert!(deflated <= n);
    let remaining = n - deflated;
    if remaining == 0 {
        return EmpiricalAngles::new(deflations.iter().copied());
    }
    let base_grid = grid.max(8 * n).max(16);
    let mut engine = SignEngine::new(provider, deflations, remaining);
    let mut refinements = 0;
    let mut found = Vec::new();
    loop {
        let g = base_grid << refinements;
        found = bracket_and_bisect(&mut engine, g, remaining);
        if found.len() == remaining || refinements >= MAX_REFINE {
            break;
        }
        refinements += 1;
    }
    if found.len() != remaining {
        return Err(Error::RootCountDeficit {
            found: found.len() + deflated,
            expected: n,
            refinements,
        });
    }
    EmpiricalAngles::new(deflations.iter().copied().chain(found.into_iter().map(|a| (a, 1))))
}

fn bracket_and_bisect(engine: &mut SignEngine, grid: usize, want: usize) -> Vec<f64> {
    // resolved grid signs in circular order
    let mut pts: Vec<(f64, i8)> = Vec::new();
    for i in 0..grid {
        let th = -PI + 2.0 * PI * i as f64 / grid as f64;
        if let Some(s) = engine.sign(th) {
            pts.push((th, s));
        }
    }
    if pts.len() < 2 {
        return Vec::new();
    }
    let mut roots = Vec::with_capacity(want);
    for w in 0..pts.len() {
        let (a, sa) = pts[w];
        let (b, sb) = if w + 1 < pts.len() {
            pts[w + 1]
        } else {
            // wrap bracket: compare against the first point shifted by 2 pi,
            // whose sign picks up the parity of the remaining root count
            (pts[0].0 + 2.0 * PI, pts[0].1 * engine.wrap_parity)
        };
        if sa != sb {
            if let Some(r) = bisect(engine, a, b, sa) {
                roots.push(crate::util::wrap_angle(r));
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

fn bisect(engine: &mut SignEngine, mut a: f64, mut b: f64, sa: i8) -> Option<f64> {
    let mut stall = 0;
    while b - a > BISECT_TOL {
        let mid = 0.5 * (a + b);
        match engine.sign(mid) {
            Some(s) if s == sa => a = mid,
            Some(_) => b = mid,
            None => {
                // midpoint numerically on the root: nudge once, then accept
                stall += 1;
                if stall > 2 {
                    return Some(mid);
                }
                let nudge = (b - a) / 8.0;
                match engine.sign(mid + nudge) {
                    Some(s) if s == sa => a = mid + nudge,
                    Some(_) => b = mid + nudge,
                    None => return Some(mid),
                }
            }
        }
    }
    Some(0.5 * (a + b))
}
