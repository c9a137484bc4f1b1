use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::valexp::{lcm, ValExp};
use super::Rat;
use crate::error::{Error, Result};

/// A truncated Puiseux series `sum c_e x^e` with rational exponents.
///
/// `order = Some(T)` means the series is only known modulo terms of
/// exponent `>= T`; `None` means the listed terms are the whole series.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PuiseuxSeries {
    terms: Vec<(Rat, Rat)>,
    order: Option<Rat>,
}

/// What is known about a valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValBound {
    Exact(Rat),
    /// the exact zero series
    Infinite,
    /// zero modulo `x^T`: the valuation is at least `T`
    AtLeast(Rat),
}

fn min_opt(a: Option<Rat>, b: Option<Rat>) -> Option<Rat> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(if a < b { a } else { b }),
    }
}

fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Rational `q`-th root of `c`, if it exists.
pub fn rat_root(c: &Rat, q: &BigInt) -> Option<Rat> {
    if c.is_zero() {
        return Some(Rat::zero());
    }
    let q32: u32 = q.try_into().ok()?;
    if q32 == 1 {
        return Some(c.clone());
    }
    let neg = c.is_negative();
    if neg && q32.is_multiple_of(2) {
        return None;
    }
    let root_int = |n: &BigInt| -> Option<BigInt> {
        let r = n.nth_root(q32);
        (num_traits::pow(r.clone(), q32 as usize) == *n).then_some(r)
    };
    let n = root_int(&c.numer().abs())?;
    let d = root_int(c.denom())?;
    let r = Rat::new(n, d);
    Some(if neg { -r } else { r })
}

/// `c^e` for rational `e`, if it is rational.
pub fn rat_pow(c: &Rat, e: &Rat) -> Result<Rat> {
    let root = rat_root(c, e.denom())
        .ok_or_else(|| Error::CoeffRootUnavailable(format!("({c})^({e})")))?;
    let p = e.numer();
    if p.is_zero() {
        return Ok(Rat::one());
    }
    if root.is_zero() {
        return if p.is_negative() { Err(Error::ZeroDivision) } else { Ok(Rat::zero()) };
    }
    let k: usize = p
        .abs()
        .try_into()
        .map_err(|_| Error::Invalid(format!("exponent {e} too large")))?;
    let v = num_traits::pow(root, k);
    Ok(if p.is_negative() { v.recip() } else { v })
}

impl PuiseuxSeries {
    /// Builds a series, sorting and merging terms and dropping anything at or
    /// beyond the truncation order.
    pub fn new(mut terms: Vec<(Rat, Rat)>, order: Option<Rat>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Rat, Rat)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if let Some(t) = &order {
                if &e >= t {
                    continue;
                }
            }
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        PuiseuxSeries { terms: out, order }
    }

    fn from_sorted(terms: Vec<(Rat, Rat)>, order: Option<Rat>) -> Self {
        PuiseuxSeries { terms, order }
    }

    pub fn zero() -> Self {
        PuiseuxSeries { terms: vec![], order: None }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, Rat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn monomial(c: Rat, e: Rat) -> Self {
        Self::new(vec![(e, c)], None)
    }

    /// The series `x`.
    pub fn x() -> Self {
        Self::monomial(Rat::one(), Rat::one())
    }

    /// `O(x^T)`: zero modulo `x^T`.
    pub fn big_o(t: Rat) -> Self {
        PuiseuxSeries { terms: vec![], order: Some(t) }
    }

    pub fn terms(&self) -> &[(Rat, Rat)] {
        &self.terms
    }

    pub fn order(&self) -> Option<&Rat> {
        self.order.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.order.is_none()
    }

    /// No certified terms at all (exact zero or `O(x^T)`).
    pub fn is_zero_mod_order(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.order.is_none() && self.terms.len() == 1 && self.terms[0].0.is_zero() && self.terms[0].1.is_one()
    }

    /// Exact single term `c x^e`.
    pub fn as_monomial(&self) -> Option<(&Rat, &Rat)> {
        if self.order.is_none() && self.terms.len() == 1 {
            Some((&self.terms[0].1, &self.terms[0].0))
        } else {
            None
        }
    }

    /// Exact constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_exact_zero() {
            return Some(Rat::zero());
        }
        match self.as_monomial() {
            Some((c, e)) if e.is_zero() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn val_bound(&self) -> ValBound {
        match (self.terms.first(), &self.order) {
            (Some((e, _)), _) => ValBound::Exact(e.clone()),
            (None, None) => ValBound::Infinite,
            (None, Some(t)) => ValBound::AtLeast(t.clone()),
        }
    }

    /// Valuation; `None` is `+inf` (the exact zero series).
    pub fn valuation(&self) -> Result<Option<Rat>> {
        match self.val_bound() {
            ValBound::Exact(v) => Ok(Some(v)),
            ValBound::Infinite => Ok(None),
            ValBound::AtLeast(t) => Err(Error::precision(format!("series is O(x^({t})), valuation unknown"))),
        }
    }

    /// Valuation of a series that must be nonzero.
    pub fn val_nonzero(&self) -> Result<Rat> {
        self.valuation()?.ok_or(Error::ZeroDivision)
    }

    /// A lower bound for the valuation (`None` = `+inf`).
    pub fn low(&self) -> Option<Rat> {
        match self.val_bound() {
            ValBound::Exact(v) | ValBound::AtLeast(v) => Some(v),
            ValBound::Infinite => None,
        }
    }

    pub fn leading(&self) -> Result<(Rat, Rat)> {
        match self.val_bound() {
            ValBound::Exact(_) => Ok(self.terms[0].clone()),
            ValBound::Infinite => Err(Error::ZeroDivision),
            ValBound::AtLeast(t) => Err(Error::precision(format!("leading term of O(x^({t})) unknown"))),
        }
    }

    /// Coefficient of `x^e` (zero if absent and certified).
    pub fn coeff(&self, e: &Rat) -> Result<Rat> {
        if let Some(t) = &self.order {
            if e >= t {
                return Err(Error::precision(format!("coefficient of x^({e}) beyond order {t}")));
            }
        }
        Ok(self.terms.iter().find(|(f, _)| f == e).map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero))
    }

    /// Is `val(self) >= rho`?
    pub fn val_at_least(&self, rho: &ValExp) -> Result<bool> {
        if let Some((e, _)) = self.terms.first() {
            if ValExp::from(e) < *rho {
                return Ok(false);
            }
        }
        match &self.order {
            None => Ok(true),
            Some(t) if ValExp::from(t) >= *rho => Ok(true),
            Some(t) => Err(Error::precision(format!("cannot certify valuation >= {rho} from O(x^({t}))"))),
        }
    }

    /// Is `val(self) > rho`?
    pub fn val_greater(&self, rho: &ValExp) -> Result<bool> {
        if let Some((e, _)) = self.terms.first() {
            if ValExp::from(e) <= *rho {
                return Ok(false);
            }
        }
        match &self.order {
            None => Ok(true),
            Some(t) if ValExp::from(t) > *rho => Ok(true),
            Some(t) => Err(Error::precision(format!("cannot certify valuation > {rho} from O(x^({t}))"))),
        }
    }

    /// Least common denominator of the exponents (the ramification index).
    pub fn ramification(&self) -> BigInt {
        self.terms.iter().fold(BigInt::one(), |acc, (e, _)| lcm(&acc, e.denom()))
    }

    pub fn truncate(&self, t: &Rat) -> Self {
        let order = min_opt(self.order.clone(), Some(t.clone()));
        let terms = self.terms.iter().filter(|(e, _)| e < t).cloned().collect();
        Self::from_sorted(terms, order)
    }

    /// Drops the truncation marker: the listed terms become the whole series.
    pub fn exactify(&self) -> Self {
        Self::from_sorted(self.terms.clone(), None)
    }

    /// Keep only terms with exponent strictly below `rho`, as an exact series.
    pub fn terms_below(&self, rho: &ValExp) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| ValExp::from(e) < *rho).cloned().collect();
        Self::from_sorted(terms, None)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::from_sorted(vec![], self.order.clone());
        }
        Self::from_sorted(self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(), self.order.clone())
    }

    /// Multiply by `c x^e` (exact monomial).
    pub fn mul_monomial(&self, c: &Rat, e: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_sorted(
            self.terms.iter().map(|(f, d)| (f + e, d * c)).collect(),
            self.order.as_ref().map(|t| t + e),
        )
    }

    /// Product, keeping only terms below `cap` when given.
    pub fn mul_capped(&self, other: &Self, cap: Option<&Rat>) -> Self {
        let ord_a = self.order.as_ref().and_then(|t| other.low().map(|v| t + v));
        let ord_b = other.order.as_ref().and_then(|t| self.low().map(|v| t + v));
        // when one factor is the exact zero the product is exactly zero
        let mut order = if self.is_exact_zero() || other.is_exact_zero() {
            None
        } else {
            min_opt(ord_a, ord_b)
        };
        if let Some(c) = cap {
            order = min_opt(order, Some(c.clone()));
        }
        let mut acc: std::collections::BTreeMap<Rat, Rat> = std::collections::BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if let Some(t) = &order {
                    if &e >= t {
                        // terms of `other` are increasing, the rest are larger
                        break;
                    }
                }
                let entry = acc.entry(e).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self::from_sorted(terms, order)
    }

    /// Formal derivative in `x`.
    pub fn derivative(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| !e.is_zero())
            .map(|(e, c)| (e - Rat::one(), c * e))
            .collect();
        Self::from_sorted(terms, self.order.as_ref().map(|t| t - Rat::one()))
    }

    /// Nonnegative integer power by repeated squaring.
    pub fn pow_u(&self, n: u32, cap: Option<&Rat>) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_capped(&base, cap);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_capped(&base, cap);
            }
        }
        result
    }

    /// Splits a nonzero series as `c x^v (1 + u)`, with `u` dense in
    /// `t = x^(1/n)`: returns `(c, v, n, u)` where `u[k]` is the coefficient of
    /// `t^k` (`u[0] = 0`) for `k < len`.
    fn unit_split(&self, len: usize, n: &BigInt) -> Result<(Rat, Rat, Vec<Rat>)> {
        let (v, c) = self.leading()?;
        let mut u = vec![Rat::zero(); len];
        let nr = Rat::from_integer(n.clone());
        for (e, d) in &self.terms[1..] {
            let k = ((e - &v) * &nr).to_integer();
            let k: usize = match k.try_into() {
                Ok(k) => k,
                Err(_) => continue,
            };
            if k < len {
                u[k] = d / &c;
            }
        }
        Ok((c, v, u))
    }

    /// `self^e` for rational `e`, computed to absolute order about `prec`.
    pub fn pow_rat(&self, e: &Rat, prec: &Rat) -> Result<Self> {
        if e.is_zero() {
            return Ok(Self::one());
        }
        if self.is_exact_zero() {
            return if e.is_positive() { Ok(Self::zero()) } else { Err(Error::ZeroDivision) };
        }
        let (v, c) = self.leading()?;
        let ce = rat_pow(&c, e)?;
        let ev = e * &v;
        if self.order.is_none() && self.terms.len() == 1 {
            return Ok(Self::monomial(ce, ev));
        }
        if self.order.is_none() && e.is_integer() && e.is_positive() {
            let n: u32 = e
                .to_integer()
                .try_into()
                .map_err(|_| Error::Invalid(format!("exponent {e} too large")))?;
            return Ok(self.pow_u(n, None));
        }
        // relative precision of the input, and of the output
        let rel_in = self.order.as_ref().map(|t| t - &v);
        let n = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (f, _)| lcm(&acc, (f - &v).denom()));
        let step = Rat::new(BigInt::one(), n.clone());
        let want = if prec - &ev > step { prec - &ev } else { step.clone() };
        let rel_out = match rel_in {
            Some(r) if r < want => r,
            _ => want,
        };
        let nr = Rat::from_integer(n.clone());
        let len_big = (&rel_out * &nr).ceil().to_integer();
        let len: usize = len_big
            .try_into()
            .map_err(|_| Error::Invalid("series too long".into()))?;
        let (_, _, u) = self.unit_split(len, &n)?;
        let f = pow_unit(&u, e, len);
        let terms = f
            .into_iter()
            .enumerate()
            .filter(|(_, fk)| !fk.is_zero())
            .map(|(k, fk)| (&ev + Rat::new(BigInt::from(k), n.clone()), fk * &ce))
            .collect();
        Ok(Self::from_sorted(terms, Some(&ev + &rel_out)))
    }

    pub fn inv(&self, prec: &Rat) -> Result<Self> {
        if self.is_exact_zero() {
            return Err(Error::ZeroDivision);
        }
        self.pow_rat(&-Rat::one(), prec)
    }

    /// Substitution `self(g(x))`, for `val(g) > 0`.
    pub fn compose(&self, g: &Self, prec: &Rat) -> Result<Self> {
        let s = g.val_nonzero().map_err(|e| match e {
            Error::ZeroDivision => Error::Invalid("cannot substitute the zero series".into()),
            e => e,
        })?;
        if !s.is_positive() {
            return Err(Error::Invalid(format!("substituted series must have positive valuation, got {s}")));
        }
        if self.is_exact_zero() {
            return Ok(Self::zero());
        }
        let mut order: Option<Rat> = self.order.as_ref().map(|t| t * &s);
        if let Some(tg) = &g.order {
            if let Some(emin) = self.terms.iter().map(|(e, _)| e).find(|e| !e.is_zero()) {
                order = min_opt(order, Some(emin * &s + tg - &s));
            }
        }
        let all_exact = order.is_none();
        let target = min_opt(order.clone(), Some(prec.clone())).unwrap();
        let mut acc = Self::zero();
        for (e, c) in &self.terms {
            if !all_exact && e * &s >= target {
                break;
            }
            let p = g.pow_rat(e, &target)?;
            acc = &acc + &p.scale(c);
        }
        let acc = if all_exact && acc.is_exact() { acc } else { acc.truncate(&target) };
        Ok(match order {
            Some(t) => acc.truncate(&t),
            None => acc,
        })
    }
}

/// `(1 + u)^e` in `t`, first `len` coefficients (`u[0]` must be 0).
fn pow_unit(u: &[Rat], e: &Rat, len: usize) -> Vec<Rat> {
    let mut f = vec![Rat::zero(); len];
    if len == 0 {
        return f;
    }
    f[0] = Rat::one();
    let e1 = e + Rat::one();
    for k in 1..len {
        let kr = Rat::from_integer(BigInt::from(k));
        let mut s = Rat::zero();
        for j in 1..=k {
            if u[j].is_zero() {
                continue;
            }
            let w = &e1 * Rat::from_integer(BigInt::from(j)) - &kr;
            if w.is_zero() {
                continue;
            }
            s += w * &u[j] * &f[k - j];
        }
        f[k] = s / kr;
    }
    f
}

impl Add for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn add(self, other: &PuiseuxSeries) -> PuiseuxSeries {
        let order = min_opt(self.order.clone(), other.order.clone());
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        PuiseuxSeries::new(terms, order)
    }
}

impl Neg for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn neg(self) -> PuiseuxSeries {
        PuiseuxSeries::from_sorted(self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(), self.order.clone())
    }
}

impl Sub for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn sub(self, other: &PuiseuxSeries) -> PuiseuxSeries {
        self + &(-other)
    }
}

impl Mul for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn mul(self, other: &PuiseuxSeries) -> PuiseuxSeries {
        self.mul_capped(other, None)
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for PuiseuxSeries {
            type Output = PuiseuxSeries;
            fn $m(self, o: PuiseuxSeries) -> PuiseuxSeries {
                (&self).$m(&o)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl Neg for PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn neg(self) -> PuiseuxSeries {
        -&self
    }
}

/// Which arithmetic operation [`ps_arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Neg,
    Mul,
}

/// `a op b` (`b` is ignored for `Neg`).
pub fn ps_arith(op: ArithOp, a: &PuiseuxSeries, b: &PuiseuxSeries) -> PuiseuxSeries {
    match op {
        ArithOp::Add => a + b,
        ArithOp::Neg => -a,
        ArithOp::Mul => a * b,
    }
}

pub fn ps_inv(a: &PuiseuxSeries, prec: &Rat) -> Result<PuiseuxSeries> {
    a.inv(prec)
}

pub fn ps_pow_rational(a: &PuiseuxSeries, e: &Rat, prec: &Rat) -> Result<PuiseuxSeries> {
    a.pow_rat(e, prec)
}

pub fn ps_compose(a: &PuiseuxSeries, g: &PuiseuxSeries, prec: &Rat) -> Result<PuiseuxSeries> {
    a.compose(g, prec)
}

/// Valuation as an exponent; `None` is `+inf`.
pub fn ps_val(a: &PuiseuxSeries) -> Result<Option<ValExp>> {
    Ok(a.valuation()?.map(ValExp::from_rat))
}

fn write_exp(f: &mut fmt::Formatter<'_>, e: &Rat) -> fmt::Result {
    if e.is_one() {
        write!(f, "x")
    } else {
        write!(f, "x^({e})")
    }
}

/// Writes one term without its sign.
fn write_term(f: &mut fmt::Formatter<'_>, e: &Rat, c: &Rat) -> fmt::Result {
    let a = c.abs();
    if e.is_zero() {
        write!(f, "{a}")
    } else if a.is_one() {
        write_exp(f, e)
    } else {
        write!(f, "{a}*")?;
        write_exp(f, e)
    }
}

impl fmt::Display for PuiseuxSeries {
    /// `1 + 2*x^(1/2) - x^(3) + O(x^(4))`. A negative first term of a longer
    /// sum is parenthesised, since unary minus binds loosest in the grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pieces = self.terms.len() + usize::from(self.order.is_some());
        if pieces == 0 {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    if pieces > 1 {
                        write!(f, "(-")?;
                        write_term(f, e, c)?;
                        write!(f, ")")?;
                    } else {
                        write!(f, "-")?;
                        write_term(f, e, c)?;
                    }
                } else {
                    write_term(f, e, c)?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
                write_term(f, e, c)?;
            }
        }
        if let Some(t) = &self.order {
            if !self.terms.is_empty() {
                write!(f, " + ")?;
            }
            write!(f, "O(x^({t}))")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }
    fn ser(ts: &[(i64, i64, i64)]) -> PuiseuxSeries {
        // (coef, exp_num, exp_den)
        PuiseuxSeries::new(ts.iter().map(|&(c, n, d)| (r(n, d), int(c))).collect(), None)
    }
    fn t24() -> Rat {
        int(24)
    }

    #[test]
    fn product_of_conjugates() {
        let a = ser(&[(1, 0, 1), (1, 1, 1)]);
        let b = ser(&[(1, 0, 1), (-1, 1, 1)]);
        assert_eq!(&a * &b, ser(&[(1, 0, 1), (-1, 2, 1)]));
    }

    #[test]
    fn mixed_exponent_valuation() {
        let a = ser(&[(1, 3, 2), (1, 2, 1)]);
        assert_eq!(a.valuation().unwrap(), Some(r(3, 2)));
    }

    #[test]
    fn square_of_half_power() {
        let a = ser(&[(1, 0, 1), (1, 1, 2)]);
        assert_eq!(&a * &a, ser(&[(1, 0, 1), (2, 1, 2), (1, 1, 1)]));
    }

    #[test]
    fn geometric_inverse() {
        let a = ser(&[(1, 0, 1), (-1, 1, 1)]);
        let inv = a.inv(&int(6)).unwrap();
        assert_eq!(inv.order(), Some(&int(6)));
        assert_eq!(inv.terms().len(), 6);
        assert!(inv.terms().iter().all(|(_, c)| c.is_one()));
    }

    #[test]
    fn monomial_inverse_is_exact() {
        assert_eq!(PuiseuxSeries::x().inv(&t24()).unwrap(), ser(&[(1, -1, 1)]));
    }

    #[test]
    fn inverse_with_pole() {
        // (x^2 (1 + x))^-1 = x^-2 - x^-1 + 1 - x + ...
        let a = ser(&[(1, 2, 1), (1, 3, 1)]);
        let inv = a.inv(&int(3)).unwrap();
        assert_eq!(inv, PuiseuxSeries::new(vec![(int(-2), int(1)), (int(-1), int(-1)), (int(0), int(1)), (int(1), int(-1)), (int(2), int(1))], Some(int(3))));
        let back = &a * &inv;
        let one = &back - &PuiseuxSeries::one();
        assert!(one.val_at_least(&ValExp::from_int(3)).unwrap());
    }

    #[test]
    fn square_root() {
        let a = ser(&[(1, 2, 1)]);
        assert_eq!(a.pow_rat(&r(1, 2), &t24()).unwrap(), PuiseuxSeries::x());
        let b = ser(&[(1, 0, 1), (1, 1, 1)]);
        let s = b.pow_rat(&r(1, 2), &int(4)).unwrap();
        assert_eq!(s.coeff(&int(1)).unwrap(), r(1, 2));
        assert_eq!(s.coeff(&int(2)).unwrap(), r(-1, 8));
        let back = &(&s * &s) - &b;
        assert!(back.val_at_least(&ValExp::from_int(4)).unwrap());
    }

    #[test]
    fn root_of_two_is_unavailable() {
        let a = ser(&[(2, 1, 1)]);
        assert!(matches!(a.pow_rat(&r(1, 2), &t24()), Err(Error::CoeffRootUnavailable(_))));
    }

    #[test]
    fn composition_examples() {
        let a = ser(&[(1, 1, 2)]);
        assert_eq!(a.compose(&ser(&[(1, 2, 1)]), &t24()).unwrap(), PuiseuxSeries::x());
        let a = ser(&[(1, 0, 1), (1, 1, 1)]);
        let g = ser(&[(1, 1, 1), (1, 2, 1)]);
        assert_eq!(a.compose(&g, &t24()).unwrap(), ser(&[(1, 0, 1), (1, 1, 1), (1, 2, 1)]));
        let a = ser(&[(1, 1, 1), (1, 3, 1)]);
        assert_eq!(a.compose(&ser(&[(2, 1, 1)]), &t24()).unwrap(), ser(&[(2, 1, 1), (8, 3, 1)]));
    }

    #[test]
    fn compose_tracks_order() {
        let a = PuiseuxSeries::new(vec![(int(1), int(1))], Some(int(5)));
        let g = ser(&[(1, 2, 1)]);
        let c = a.compose(&g, &t24()).unwrap();
        assert_eq!(c.order(), Some(&int(10)));
    }

    #[test]
    fn valuation_cases() {
        assert_eq!(ser(&[(1, 3, 2), (1, 5, 2)]).valuation().unwrap(), Some(r(3, 2)));
        assert_eq!(PuiseuxSeries::zero().valuation().unwrap(), None);
        let d = &ser(&[(1, 0, 1), (1, 1, 1)]) - &PuiseuxSeries::one();
        assert_eq!(d.valuation().unwrap(), Some(int(1)));
        assert!(PuiseuxSeries::big_o(int(3)).valuation().is_err());
    }

    #[test]
    fn rendering() {
        let a = ser(&[(1, 0, 1), (2, 1, 2), (-1, 3, 1)]);
        assert_eq!(a.to_string(), "1 + 2*x^(1/2) - x^(3)");
        let b = a.truncate(&int(2));
        assert_eq!(b.to_string(), "1 + 2*x^(1/2) + O(x^(2))");
        assert_eq!(ser(&[(-1, 1, 1), (1, 2, 1)]).to_string(), "(-x) + x^(2)");
        assert_eq!(ser(&[(-3, 1, 1)]).to_string(), "-3*x");
        assert_eq!(PuiseuxSeries::new(vec![(int(0), r(-1, 2))], None).to_string(), "-1/2");
    }
}
