use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rat;
use crate::error::{Error, Result};

/// An exponent `rat + irr*sqrt2`.
///
/// Absolute values are `eps^e` for a fixed `0 < eps < 1`, so a larger
/// exponent is a smaller absolute value. The irrational part only ever
/// shows up in radii of Type III points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValExp {
    pub rat: Rat,
    pub irr: Rat,
}

/// Sign of `a + b*sqrt2`, decided with one squaring.
fn sign_of(a: &Rat, b: &Rat) -> Ordering {
    let sa = a.cmp(&Rat::zero());
    let sb = b.cmp(&Rat::zero());
    if sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    // opposite signs: compare a^2 with 2 b^2
    let a2 = a * a;
    let b2 = b * b * Rat::from_integer(BigInt::from(2));
    match a2.cmp(&b2) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal, // impossible for rationals, kept total
    }
}

impl ValExp {
    pub fn new(rat: Rat, irr: Rat) -> Self {
        ValExp { rat, irr }
    }

    pub fn zero() -> Self {
        ValExp::from_rat(Rat::zero())
    }

    pub fn from_rat(rat: Rat) -> Self {
        ValExp { rat, irr: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        ValExp::from_rat(Rat::from_integer(n.into()))
    }

    /// `sqrt2` itself.
    pub fn theta() -> Self {
        ValExp { rat: Rat::zero(), irr: Rat::one() }
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.rat)
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        sign_of(&self.rat, &self.irr)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        ValExp { rat: &self.rat * k, irr: &self.irr * k }
    }

    pub fn add_rat(&self, r: &Rat) -> Self {
        ValExp { rat: &self.rat + r, irr: self.irr.clone() }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64().unwrap_or(f64::NAN)
            + self.irr.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }

    /// Largest integer `n` with `n <= self`.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.rat.floor().to_integer();
        }
        let approx = self.to_f64();
        let mut n = if approx.is_finite() {
            BigInt::from(approx.floor() as i64)
        } else {
            self.rat.floor().to_integer()
        };
        loop {
            let nv = ValExp::from_rat(Rat::from_integer(n.clone()));
            if nv > *self {
                n -= 1;
                continue;
            }
            let n1 = ValExp::from_rat(Rat::from_integer(&n + 1));
            if n1 <= *self {
                n += 1;
                continue;
            }
            return n;
        }
    }

    /// Some rational strictly between `lo` and `hi` (requires `lo < hi`).
    pub fn rational_between(lo: &ValExp, hi: &ValExp) -> Rat {
        assert!(lo < hi, "rational_between needs lo < hi");
        let mut den = BigInt::one();
        loop {
            let scaled = lo.scale(&Rat::from_integer(den.clone()));
            let cand = Rat::new(scaled.floor() + 1, den.clone());
            if ValExp::from_rat(cand.clone()) < *hi {
                return cand;
            }
            den *= 2;
        }
    }
}

impl Ord for ValExp {
    fn cmp(&self, other: &Self) -> Ordering {
        sign_of(&(&self.rat - &other.rat), &(&self.irr - &other.irr))
    }
}

impl PartialOrd for ValExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rat> for ValExp {
    fn from(r: Rat) -> Self {
        ValExp::from_rat(r)
    }
}

impl From<&Rat> for ValExp {
    fn from(r: &Rat) -> Self {
        ValExp::from_rat(r.clone())
    }
}

impl Add for &ValExp {
    type Output = ValExp;
    fn add(self, o: &ValExp) -> ValExp {
        ValExp { rat: &self.rat + &o.rat, irr: &self.irr + &o.irr }
    }
}

impl Add for ValExp {
    type Output = ValExp;
    fn add(self, o: ValExp) -> ValExp {
        &self + &o
    }
}

impl Sub for &ValExp {
    type Output = ValExp;
    fn sub(self, o: &ValExp) -> ValExp {
        ValExp { rat: &self.rat - &o.rat, irr: &self.irr - &o.irr }
    }
}

impl Sub for ValExp {
    type Output = ValExp;
    fn sub(self, o: ValExp) -> ValExp {
        &self - &o
    }
}

impl Neg for ValExp {
    type Output = ValExp;
    fn neg(self) -> ValExp {
        ValExp { rat: -self.rat, irr: -self.irr }
    }
}

/// Exact ordering on exponents.
pub fn exp_compare(a: &ValExp, b: &ValExp) -> Ordering {
    a.cmp(b)
}

impl fmt::Display for ValExp {
    /// `p/q` or `p/q+r/s*sqrt2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return write!(f, "{}", self.rat);
        }
        let neg = self.irr.is_negative();
        if !self.rat.is_zero() {
            write!(f, "{}{}", self.rat, if neg { '-' } else { '+' })?;
        } else if neg {
            write!(f, "-")?;
        }
        if !self.irr.abs().is_one() {
            write!(f, "{}*", self.irr.abs())?;
        }
        write!(f, "sqrt2")
    }
}

fn parse_rat_token(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for ValExp {
    type Err = Error;

    /// Accepts sums of terms `r` and `r*sqrt2` (also `sqrt2`, `theta`).
    fn from_str(src: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("bad exponent literal `{src}`"));
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut out = ValExp::zero();
        // split into signed terms
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        terms.push((neg, cur));
        for (neg, t) in terms {
            let (coef, irr) = match t.strip_suffix("sqrt2").or_else(|| t.strip_suffix("theta")) {
                Some(head) => {
                    let head = head.strip_suffix('*').unwrap_or(head);
                    let c = if head.is_empty() { Rat::one() } else { parse_rat_token(head).ok_or_else(bad)? };
                    (c, true)
                }
                None => (parse_rat_token(&t).ok_or_else(bad)?, false),
            };
            let coef = if neg { -coef } else { coef };
            if irr {
                out.irr += coef;
            } else {
                out.rat += coef;
            }
        }
        Ok(out)
    }
}

/// `lcm` helper on big integers.
pub(crate) fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}
