//! Seeded generators shared by the integration and acceptance targets.
#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewberk::berktree::BerkPoint;
use skewberk::ratcalc::{RationalFunc, YPoly};
use skewberk::valcore::{rat, PuiseuxSeries, Rat, ValExp};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(r: &mut ChaCha8Rng) -> Rat {
    loop {
        let n = r.gen_range(-9i64..=9);
        if n != 0 {
            return rat(n, r.gen_range(1i64..=4));
        }
    }
}

/// An exponent in `[lo, hi]` with denominator at most 3.
pub fn exponent(r: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rat {
    let d = r.gen_range(1i64..=3);
    rat(r.gen_range(lo * d..=hi * d), d)
}

/// A nonzero exact Puiseux polynomial with exponents in `[lo, hi]`.
pub fn series(r: &mut ChaCha8Rng, lo: i64, hi: i64) -> PuiseuxSeries {
    loop {
        let n = r.gen_range(1..=3);
        let ts = (0..n).map(|_| (exponent(r, lo, hi), small_rat(r))).collect();
        let s = PuiseuxSeries::new(ts, None);
        if !s.is_exact_zero() {
            return s;
        }
    }
}

/// A polynomial in `y` of degree exactly `d`, coefficients possibly zero
/// below the top.
pub fn ypoly(r: &mut ChaCha8Rng, d: usize) -> YPoly {
    let mut cs: Vec<PuiseuxSeries> =
        (0..d).map(|_| if r.gen_bool(0.7) { series(r, -3, 3) } else { PuiseuxSeries::zero() }).collect();
    cs.push(series(r, -3, 3));
    YPoly::new(cs)
}

/// A rational function in `y` of degree between 1 and `max_deg`.
pub fn rational(r: &mut ChaCha8Rng, max_deg: usize) -> RationalFunc {
    loop {
        let (dn, dd) = (r.gen_range(0..=max_deg), r.gen_range(0..=max_deg));
        let n = ypoly(r, dn);
        let d = ypoly(r, dd);
        if let Ok(f) = RationalFunc::new(n, d) {
            if !f.is_y_free() && f.rdeg() <= max_deg {
                return f;
            }
        }
    }
}

pub fn polynomial(r: &mut ChaCha8Rng, max_deg: usize) -> RationalFunc {
    let d = r.gen_range(1..=max_deg);
    RationalFunc::poly(ypoly(r, d))
}

/// A Type II point, or a Type III point when `r` says so.
pub fn disk_point(r: &mut ChaCha8Rng) -> BerkPoint {
    let c = if r.gen_bool(0.3) { PuiseuxSeries::zero() } else { series(r, -2, 3) };
    let rho = if r.gen_bool(0.3) {
        ValExp::new(exponent(r, -2, 2), rat(r.gen_range(-3i64..=3).max(1), r.gen_range(1i64..=4)))
    } else {
        ValExp::from_rat(exponent(r, -3, 3))
    };
    BerkPoint::disk(&c, rho).expect("finite radius")
}

/// `x^k` plus higher terms.
pub fn phi1(r: &mut ChaCha8Rng) -> PuiseuxSeries {
    let k = r.gen_range(1i64..=3);
    let mut ts = vec![(rat(k, 1), rat(1, 1))];
    for _ in 0..r.gen_range(0..=2) {
        ts.push((rat(k + r.gen_range(1i64..=5), 1), small_rat(r)));
    }
    PuiseuxSeries::new(ts, None)
}
