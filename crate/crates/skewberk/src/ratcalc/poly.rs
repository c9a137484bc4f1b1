use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::valcore::{PuiseuxSeries, Rat};

/// Polynomial in `y` with Puiseux-series coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YPoly {
    coeffs: Vec<PuiseuxSeries>,
}

impl YPoly {
    /// Trailing coefficients that are the exact zero series are dropped.
    pub fn new(mut coeffs: Vec<PuiseuxSeries>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            coeffs.pop();
        }
        YPoly { coeffs }
    }

    pub fn zero() -> Self {
        YPoly { coeffs: vec![] }
    }

    pub fn constant(c: PuiseuxSeries) -> Self {
        YPoly::new(vec![c])
    }

    pub fn one() -> Self {
        YPoly::constant(PuiseuxSeries::one())
    }

    pub fn y() -> Self {
        YPoly::new(vec![PuiseuxSeries::zero(), PuiseuxSeries::one()])
    }

    /// `y - a`
    pub fn linear(a: &PuiseuxSeries) -> Self {
        YPoly::new(vec![-a, PuiseuxSeries::one()])
    }

    pub fn from_rats(cs: &[Rat]) -> Self {
        YPoly::new(cs.iter().map(|c| PuiseuxSeries::constant(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[PuiseuxSeries] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> PuiseuxSeries {
        self.coeffs.get(k).cloned().unwrap_or_else(PuiseuxSeries::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exact())
    }

    /// Index of the last stored coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> PuiseuxSeries {
        self.coeffs.last().cloned().unwrap_or_else(PuiseuxSeries::zero)
    }

    pub fn add(&self, o: &YPoly) -> YPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        YPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn neg(&self) -> YPoly {
        YPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &YPoly) -> YPoly {
        self.add(&o.neg())
    }

    pub fn mul_capped(&self, o: &YPoly, cap: Option<&Rat>) -> YPoly {
        if self.is_zero() || o.is_zero() {
            return YPoly::zero();
        }
        let mut out = vec![PuiseuxSeries::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &a.mul_capped(b, cap);
            }
        }
        YPoly::new(out)
    }

    pub fn mul(&self, o: &YPoly) -> YPoly {
        self.mul_capped(o, None)
    }

    pub fn scale(&self, c: &PuiseuxSeries) -> YPoly {
        YPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> YPoly {
        (0..n).fold(YPoly::one(), |acc, _| acc.mul(self))
    }

    /// Horner evaluation.
    pub fn eval(&self, a: &PuiseuxSeries, cap: Option<&Rat>) -> PuiseuxSeries {
        self.coeffs
            .iter()
            .rev()
            .fold(PuiseuxSeries::zero(), |acc, c| &acc.mul_capped(a, cap) + c)
    }

    /// Coefficients of `p(y + a)`.
    pub fn shift(&self, a: &PuiseuxSeries, cap: Option<&Rat>) -> YPoly {
        if a.is_exact_zero() {
            return self.clone();
        }
        let lin = YPoly::new(vec![a.clone(), PuiseuxSeries::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(YPoly::zero(), |acc, c| acc.mul_capped(&lin, cap).add(&YPoly::constant(c.clone())))
    }

    /// `y^m p(1/y)`, for `m >= degree`.
    pub fn reversed(&self, m: usize) -> YPoly {
        let mut cs = vec![PuiseuxSeries::zero(); m + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            cs[m - k] = c.clone();
        }
        YPoly::new(cs)
    }

    pub fn derivative(&self) -> YPoly {
        YPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rat::from_integer(k.into())))
                .collect(),
        )
    }

    pub fn truncate(&self, t: &Rat) -> YPoly {
        YPoly::new(self.coeffs.iter().map(|c| c.truncate(t)).collect())
    }
}

/// How a coefficient prints in front of `y^k`.
fn coeff_factor(c: &PuiseuxSeries) -> (bool, Option<String>) {
    if let Some((k, e)) = c.as_monomial() {
        let neg = k.is_negative();
        if e.is_zero() && k.abs().is_one() {
            return (neg, None);
        }
        let s = PuiseuxSeries::monomial(k.abs(), e.clone()).to_string();
        return (neg, Some(s));
    }
    (false, Some(format!("({c})")))
}

impl fmt::Display for YPoly {
    /// Highest power of `y` first, e.g. `y^2 - x` or `(1 + x)*y + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<(bool, String)> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_exact_zero() {
                continue;
            }
            let mono = match k {
                0 => None,
                1 => Some("y".to_string()),
                _ => Some(format!("y^{k}")),
            };
            let (neg, factor) = coeff_factor(c);
            let body = match (factor, mono) {
                (Some(fa), Some(m)) => format!("{fa}*{m}"),
                (Some(fa), None) => fa,
                (None, Some(m)) => m,
                (None, None) => "1".to_string(),
            };
            pieces.push((neg, body));
        }
        if pieces.is_empty() {
            return write!(f, "0");
        }
        let many = pieces.len() > 1;
        for (i, (neg, body)) in pieces.iter().enumerate() {
            if i == 0 {
                match (neg, many) {
                    (true, true) => write!(f, "(-{body})")?,
                    (true, false) => write!(f, "-{body}")?,
                    _ => write!(f, "{body}")?,
                }
            } else {
                write!(f, " {} {body}", if *neg { '-' } else { '+' })?;
            }
        }
        Ok(())
    }
}

/// A ratio `num/den` of polynomials in `y`. Not kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunc {
    num: YPoly,
    den: YPoly,
}

impl RationalFunc {
    /// A constant exact-monomial denominator is folded into the numerator.
    pub fn new(num: YPoly, den: YPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivision);
        }
        if den.degree() == Some(0) {
            if let Some((c, e)) = den.coeff(0).as_monomial() {
                let (ci, en) = (c.recip(), -e.clone());
                let num = YPoly::new(num.coeffs().iter().map(|a| a.mul_monomial(&ci, &en)).collect());
                return Ok(RationalFunc { num, den: YPoly::one() });
            }
        }
        Ok(RationalFunc { num, den })
    }

    pub fn poly(p: YPoly) -> Self {
        RationalFunc { num: p, den: YPoly::one() }
    }

    pub fn constant(c: PuiseuxSeries) -> Self {
        RationalFunc::poly(YPoly::constant(c))
    }

    pub fn y() -> Self {
        RationalFunc::poly(YPoly::y())
    }

    pub fn num(&self) -> &YPoly {
        &self.num
    }

    pub fn den(&self) -> &YPoly {
        &self.den
    }

    /// `max(deg num, deg den)`.
    pub fn rdeg(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when no `y` appears.
    pub fn is_y_free(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree().unwrap_or(0) == 0
    }

    pub fn add(&self, o: &RationalFunc) -> RationalFunc {
        if self.den == o.den {
            return RationalFunc { num: self.num.add(&o.num), den: self.den.clone() };
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RationalFunc::new(num, self.den.mul(&o.den)).expect("product of nonzero denominators")
    }

    pub fn neg(&self) -> RationalFunc {
        RationalFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RationalFunc) -> RationalFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RationalFunc) -> RationalFunc {
        RationalFunc::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("product of nonzero denominators")
    }

    pub fn div(&self, o: &RationalFunc) -> Result<RationalFunc> {
        if o.num.is_zero() {
            return Err(Error::ZeroDivision);
        }
        RationalFunc::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn powi(&self, n: i64) -> Result<RationalFunc> {
        let k = n.unsigned_abs() as u32;
        let p = RationalFunc::new(self.num.pow(k), self.den.pow(k))?;
        if n >= 0 {
            Ok(p)
        } else {
            RationalFunc::poly(YPoly::one()).div(&p)
        }
    }

    /// `f - c`
    pub fn minus_const(&self, c: &PuiseuxSeries) -> RationalFunc {
        RationalFunc { num: self.num.sub(&self.den.scale(c)), den: self.den.clone() }
    }

    /// `1/f`
    pub fn recip(&self) -> Result<RationalFunc> {
        RationalFunc::new(self.den.clone(), self.num.clone())
    }

    /// `g(w) = f(a + 1/w)`, the chart swap around `a`.
    pub fn swap_at(&self, a: &PuiseuxSeries) -> RationalFunc {
        let m = self.rdeg();
        let num = self.num.shift(a, None).reversed(m);
        let den = self.den.shift(a, None).reversed(m);
        RationalFunc { num, den }
    }

    /// `1/f(1/y)`: conjugation by the involution `y -> 1/y`.
    pub fn conj_swap(&self) -> RationalFunc {
        let m = self.rdeg();
        RationalFunc { num: self.den.reversed(m), den: self.num.reversed(m) }
    }

    /// Substitute `y -> p(y)` (a polynomial).
    pub fn compose_poly(&self, p: &YPoly) -> Result<RationalFunc> {
        let sub = |q: &YPoly| {
            q.coeffs()
                .iter()
                .rev()
                .fold(YPoly::zero(), |acc, c| acc.mul(p).add(&YPoly::constant(c.clone())))
        };
        RationalFunc::new(sub(&self.num), sub(&self.den))
    }

    /// Substitute `y -> g(y)` for a rational function `g`.
    pub fn compose(&self, g: &RationalFunc) -> Result<RationalFunc> {
        // homogenise: num(g) = sum c_k G^k H^(m-k) / H^m
        let m = self.rdeg();
        let (gn, gd) = (&g.num, &g.den);
        let hom = |q: &YPoly| {
            let mut acc = YPoly::zero();
            for (k, c) in q.coeffs().iter().enumerate() {
                if c.is_exact_zero() {
                    continue;
                }
                acc = acc.add(&gn.pow(k as u32).mul(&gd.pow((m - k) as u32)).scale(c));
            }
            acc
        };
        RationalFunc::new(hom(&self.num), hom(&self.den))
    }
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == YPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
