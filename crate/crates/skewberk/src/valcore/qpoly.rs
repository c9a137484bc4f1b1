use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rat;

/// Dense polynomial over the residue field `Q`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    c: Vec<Rat>,
}

impl QPoly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn zero() -> Self {
        QPoly { c: vec![] }
    }

    pub fn constant(a: Rat) -> Self {
        QPoly::new(vec![a])
    }

    /// `y - r`
    pub fn linear_root(r: &Rat) -> Self {
        QPoly::new(vec![-r.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, y: &Rat) -> Rat {
        self.c.iter().rev().fold(Rat::zero(), |acc, a| acc * y + a)
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        let z = Rat::zero();
        QPoly::new((0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn scale(&self, k: &Rat) -> QPoly {
        QPoly::new(self.c.iter().map(|a| a * k).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn pow(&self, n: u32) -> QPoly {
        (0..n).fold(QPoly::constant(Rat::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.lc();
        let mut r = self.c.clone();
        let mut q = vec![Rat::zero(); self.c.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let t = r.last().unwrap() / &lc;
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] -= &t * b;
            }
            q[k] = t;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Substitute `y -> y + a`.
    pub fn shift(&self, a: &Rat) -> QPoly {
        let lin = QPoly::new(vec![a.clone(), Rat::one()]);
        self.c
            .iter()
            .rev()
            .fold(QPoly::zero(), |acc, k| acc.mul(&lin).add(&QPoly::constant(k.clone())))
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Rat) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut p = self.clone();
        let lin = QPoly::linear_root(r);
        let mut m = 0;
        loop {
            let (q, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                return m;
            }
            m += 1;
            p = q;
        }
    }

    /// Rational roots with multiplicity, plus the degree of the leftover factor
    /// that has no rational roots.
    pub fn rational_roots(&self) -> (Vec<(Rat, usize)>, usize) {
        let Some(deg) = self.degree() else { return (vec![], 0) };
        let mut roots: Vec<(Rat, usize)> = Vec::new();
        let mut p = self.clone();
        // zero root
        let m0 = p.c.iter().take_while(|a| a.is_zero()).count();
        if m0 > 0 {
            roots.push((Rat::zero(), m0));
            p = QPoly::new(p.c[m0..].to_vec());
        }
        // square-free part carries every distinct root once
        let sf = if p.degree().unwrap_or(0) > 0 {
            let g = p.gcd(&p.derivative());
            p.div_rem(&g).0
        } else {
            p.clone()
        };
        for r in squarefree_rational_roots(&sf) {
            let m = p.root_multiplicity(&r);
            roots.push((r, m));
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        let found: usize = roots.iter().map(|(_, m)| m).sum();
        (roots, deg - found)
    }
}

/// Clears denominators: integer coefficients with the same roots.
fn integer_coeffs(p: &QPoly) -> Vec<BigInt> {
    let l = p.c.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    p.c.iter().map(|a| (a * Rat::from_integer(l.clone())).to_integer()).collect()
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return None;
    }
    let small = n.to_u64().filter(|&v| v <= 1_000_000_000_000)?;
    let mut ds = Vec::new();
    let mut i = 1u64;
    while i * i <= small {
        if small % i == 0 {
            ds.push(BigInt::from(i));
            if i * i != small {
                ds.push(BigInt::from(small / i));
            }
        }
        i += 1;
    }
    Some(ds)
}

/// Rational roots of a square-free polynomial with nonzero constant term.
fn squarefree_rational_roots(p: &QPoly) -> Vec<Rat> {
    match p.degree() {
        None | Some(0) => return vec![],
        Some(1) => return vec![-&p.c[0] / &p.c[1]],
        Some(2) => {
            let (a, b, c) = (&p.c[2], &p.c[1], &p.c[0]);
            let disc = b * b - Rat::from_integer(4.into()) * a * c;
            return match super::series::rat_root(&disc, &BigInt::from(2)) {
                None => vec![],
                Some(s) if s.is_zero() => vec![-b / (Rat::from_integer(2.into()) * a)],
                Some(s) => {
                    let two_a = Rat::from_integer(2.into()) * a;
                    vec![(-b - &s) / &two_a, (-b + &s) / &two_a]
                }
            };
        }
        _ => {}
    }
    let ic = integer_coeffs(p);
    let (a0, an) = (ic[0].clone(), ic.last().unwrap().clone());
    let mut out = Vec::new();
    match (divisors(&a0), divisors(&an)) {
        (Some(ps), Some(qs)) => {
            for num in &ps {
                for den in &qs {
                    for sgn in [1, -1] {
                        let cand = Rat::new(num * sgn, den.clone());
                        if !out.contains(&cand) && p.eval(&cand).is_zero() {
                            out.push(cand);
                        }
                    }
                }
            }
        }
        _ => {
            // coefficients too large to factor: locate real roots numerically and
            // confirm each candidate exactly
            for approx in real_roots_f64(p) {
                for cand in convergents(approx, 64) {
                    if !out.contains(&cand) && p.eval(&cand).is_zero() {
                        out.push(cand);
                        break;
                    }
                }
            }
        }
    }
    out
}

fn real_roots_f64(p: &QPoly) -> Vec<f64> {
    // Durand-Kerner on the monic polynomial
    let m = p.monic();
    let n = m.degree().unwrap_or(0);
    let a: Vec<f64> = m.c.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect();
    let eval = |z: (f64, f64)| {
        let mut acc = (0.0, 0.0);
        for k in (0..=n).rev() {
            acc = (acc.0 * z.0 - acc.1 * z.1 + a[k], acc.0 * z.1 + acc.1 * z.0);
        }
        acc
    };
    let mut zs: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 0.4 + 0.9 * k as f64;
            (t.cos() * (1.0 + k as f64 * 0.1), t.sin() * (1.0 + k as f64 * 0.1))
        })
        .collect();
    for _ in 0..2000 {
        for i in 0..n {
            let num = eval(zs[i]);
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    let d = (zs[i].0 - zs[j].0, zs[i].1 - zs[j].1);
                    den = (den.0 * d.0 - den.1 * d.1, den.0 * d.1 + den.1 * d.0);
                }
            }
            let mag = den.0 * den.0 + den.1 * den.1;
            if mag == 0.0 {
                continue;
            }
            let q = ((num.0 * den.0 + num.1 * den.1) / mag, (num.1 * den.0 - num.0 * den.1) / mag);
            zs[i] = (zs[i].0 - q.0, zs[i].1 - q.1);
        }
    }
    zs.into_iter().filter(|z| z.1.abs() < 1e-6 * (1.0 + z.0.abs())).map(|z| z.0).collect()
}

fn convergents(x: f64, max: usize) -> Vec<Rat> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut v = x;
    for _ in 0..max {
        if !v.is_finite() {
            break;
        }
        let a = v.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        out.push(Rat::new(h2.clone(), k2.clone()));
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = v - a;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    out
}

impl fmt::Display for QPoly {
    /// Highest degree first, in the variable `y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let m = a.abs();
            match k {
                0 => write!(f, "{m}")?,
                _ => {
                    if !m.is_one() {
                        write!(f, "{m}*")?;
                    }
                    if k == 1 {
                        write!(f, "y")?;
                    } else {
                        write!(f, "y^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
