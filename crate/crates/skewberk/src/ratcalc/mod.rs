//! Rational functions in `y` over the Puiseux field: evaluation, Taylor
//! expansion, Newton polygons, zero and pole counts on disks, Weierstrass
//! degrees, images of disks and annuli, and Puiseux roots.

mod poly;
mod roots;

pub use poly::{RationalFunc, YPoly};
pub use roots::{newton_polygon, newton_puiseux_roots, NewtonPolygon, PuiseuxRoot, PuiseuxRoots, Segment, Unresolved};

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::valcore::{Classical, PuiseuxSeries, Rat, ValBound, ValExp};

/// `a / b`, truncated at `prec` unless the quotient is exact.
pub(crate) fn sdiv(a: &PuiseuxSeries, b: &PuiseuxSeries, prec: &Rat) -> Result<PuiseuxSeries> {
    if a.is_exact_zero() {
        if b.is_exact_zero() {
            return Err(Error::ZeroDivision);
        }
        return Ok(PuiseuxSeries::zero());
    }
    // the error of the inverse is scaled by the size of `a`
    let need = match a.low() {
        Some(v) => prec - v,
        None => prec.clone(),
    };
    let q = a * &b.inv(&need)?;
    Ok(if q.is_exact() { q } else { q.truncate(prec) })
}

/// Minimum of `val(c_k) + k*rho` and the first and last indices reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dominant {
    pub min: ValExp,
    pub lo: usize,
    pub hi: usize,
}

/// `None` when every coefficient is the exact zero. Coefficients that are
/// only known modulo `x^T` count as lower bounds; if such a bound could move
/// the minimum or the set of indices reaching it, the answer is a precision
/// error.
pub(crate) fn dominant(cs: &[PuiseuxSeries], rho: &ValExp) -> Result<Option<Dominant>> {
    let mut best: Option<Dominant> = None;
    let mut unsure = Vec::new();
    for (k, c) in cs.iter().enumerate() {
        let shift = rho.scale(&Rat::from_integer(k.into()));
        match c.val_bound() {
            ValBound::Infinite => {}
            ValBound::AtLeast(t) => unsure.push((k, &ValExp::from(t) + &shift)),
            ValBound::Exact(v) => {
                let w = &ValExp::from(v) + &shift;
                best = Some(match best {
                    None => Dominant { min: w, lo: k, hi: k },
                    Some(d) => match w.cmp(&d.min) {
                        Ordering::Less => Dominant { min: w, lo: k, hi: k },
                        Ordering::Equal => Dominant { hi: k, ..d },
                        Ordering::Greater => d,
                    },
                });
            }
        }
    }
    let Some(d) = best else {
        return if unsure.is_empty() {
            Ok(None)
        } else {
            Err(Error::precision("every coefficient is below the truncation order"))
        };
    };
    for (k, b) in unsure {
        if b < d.min || (b == d.min && (k < d.lo || k > d.hi)) {
            return Err(Error::precision(format!(
                "coefficient {k} is too coarsely known to decide the dominant term"
            )));
        }
    }
    Ok(Some(d))
}

/// Number of leading exact-zero coefficients.
pub(crate) fn vanishing_order(cs: &[PuiseuxSeries]) -> Result<usize> {
    for (k, c) in cs.iter().enumerate() {
        match c.val_bound() {
            ValBound::Infinite => continue,
            ValBound::Exact(_) => return Ok(k),
            ValBound::AtLeast(_) => return Err(Error::precision("cannot tell whether a coefficient vanishes")),
        }
    }
    Ok(cs.len())
}

/// First `count` coefficients of `g/h` as power series in `y`; `h[0]` must be
/// a nonzero series.
fn series_quotient(g: &[PuiseuxSeries], h: &[PuiseuxSeries], count: usize, prec: &Rat) -> Result<Vec<PuiseuxSeries>> {
    let h0 = h.first().cloned().unwrap_or_else(PuiseuxSeries::zero);
    match h0.val_bound() {
        ValBound::Exact(_) => {}
        ValBound::Infinite => return Err(Error::PoleAtCenter),
        ValBound::AtLeast(_) => return Err(Error::precision("cannot tell whether the center is a pole")),
    }
    let inv0 = h0.inv(prec)?;
    let get = |v: &[PuiseuxSeries], k: usize| v.get(k).cloned().unwrap_or_else(PuiseuxSeries::zero);
    let mut out: Vec<PuiseuxSeries> = Vec::with_capacity(count);
    for k in 0..count {
        let mut acc = get(g, k);
        for j in 1..=k.min(h.len().saturating_sub(1)) {
            acc = &acc - &(&h[j] * &out[k - j]);
        }
        let c = &acc * &inv0;
        out.push(if c.is_exact() { c } else { c.truncate(prec) });
    }
    Ok(out)
}

/// Value of `f` at a classical point.
pub fn rf_eval(f: &RationalFunc, a: &Classical, prec: &Rat) -> Result<Classical> {
    let a = match a {
        Classical::Infinity => {
            let g = f.swap_at(&PuiseuxSeries::zero());
            return rf_eval(&g, &Classical::Finite(PuiseuxSeries::zero()), prec);
        }
        Classical::Finite(a) => a,
    };
    let d = f.den().eval(a, None);
    if matches!(d.val_bound(), ValBound::Exact(_)) {
        let n = f.num().eval(a, None);
        return Ok(Classical::Finite(sdiv(&n, &d, prec)?));
    }
    let g = f.num().shift(a, None);
    let h = f.den().shift(a, None);
    let kg = vanishing_order(g.coeffs())?;
    let kh = vanishing_order(h.coeffs())?;
    match kg.cmp(&kh) {
        Ordering::Less => Ok(Classical::Infinity),
        Ordering::Greater => Ok(Classical::Finite(PuiseuxSeries::zero())),
        Ordering::Equal => Ok(Classical::Finite(sdiv(&g.coeff(kg), &h.coeff(kh), prec)?)),
    }
}

/// Taylor coefficients `c_0, .., c_{count-1}` of `f` about `a`.
pub fn taylor_expand(f: &RationalFunc, a: &PuiseuxSeries, count: usize, prec: &Rat) -> Result<Vec<PuiseuxSeries>> {
    let g = f.num().shift(a, None);
    let h = f.den().shift(a, None);
    series_quotient(g.coeffs(), h.coeffs(), count, prec)
}

fn shifted(f: &RationalFunc, a: &PuiseuxSeries) -> (YPoly, YPoly) {
    (f.num().shift(a, None), f.den().shift(a, None))
}

fn count_in(cs: &[PuiseuxSeries], rho: &ValExp, closed: bool) -> Result<Option<usize>> {
    Ok(dominant(cs, rho)?.map(|d| if closed { d.hi } else { d.lo }))
}

/// Zeros and poles of `f` (with multiplicity) in the disk `val(y - a) >= rho`
/// (closed) or `val(y - a) > rho` (open).
pub fn count_zeros_poles(f: &RationalFunc, a: &PuiseuxSeries, rho: &ValExp, closed: bool) -> Result<(usize, usize)> {
    let (g, h) = shifted(f, a);
    let z = count_in(g.coeffs(), rho, closed)?.ok_or_else(|| Error::Invalid("the zero function has no zero count".into()))?;
    let p = count_in(h.coeffs(), rho, closed)?.ok_or(Error::ZeroDivision)?;
    Ok((z, p))
}

/// Which boundary a Weierstrass degree is taken at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// the closed disk of radius `rho`
    Inner,
    /// the open disk of radius `rho`
    Outer,
}

/// `N0 - Ninf` on the closed (inner) or open (outer) disk.
pub fn wdeg(f: &RationalFunc, a: &PuiseuxSeries, rho: &ValExp, side: Side) -> Result<i64> {
    let (z, p) = count_zeros_poles(f, a, rho, side == Side::Inner)?;
    Ok(z as i64 - p as i64)
}

/// Exponent of the sup-norm of `f` on the circle `val(y - a) = rho`.
pub fn gauss_norm(f: &RationalFunc, a: &PuiseuxSeries, rho: &ValExp) -> Result<ValExp> {
    let (g, h) = shifted(f, a);
    let gm = dominant(g.coeffs(), rho)?.ok_or_else(|| Error::Invalid("the zero function has no norm".into()))?;
    let hm = dominant(h.coeffs(), rho)?.ok_or(Error::ZeroDivision)?;
    Ok(&gm.min - &hm.min)
}

/// `val(y - center) >= radius` (closed) or `> radius` (open); with
/// `complemented` the set is the complement of that, together with infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disk {
    pub center: PuiseuxSeries,
    pub radius: ValExp,
    pub closed: bool,
    pub complemented: bool,
}

impl Disk {
    pub fn closed(center: PuiseuxSeries, radius: ValExp) -> Self {
        Disk { center, radius, closed: true, complemented: false }
    }

    pub fn open(center: PuiseuxSeries, radius: ValExp) -> Self {
        Disk { center, radius, closed: false, complemented: false }
    }

    pub fn complement(&self) -> Self {
        Disk { complemented: !self.complemented, ..self.clone() }
    }

    /// Membership of a classical point.
    pub fn contains(&self, p: &Classical) -> Result<bool> {
        let inside = match p {
            Classical::Infinity => false,
            Classical::Finite(y) => {
                let d = y - &self.center;
                if self.closed {
                    d.val_at_least(&self.radius)?
                } else {
                    d.val_greater(&self.radius)?
                }
            }
        };
        Ok(inside != self.complemented)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskImage {
    pub disk: Disk,
    /// how many times each point of the image is hit
    pub degree: usize,
}

/// `f(D)` for a disk containing no pole of `f`.
pub fn image_of_disk(f: &RationalFunc, d: &Disk, prec: &Rat) -> Result<DiskImage> {
    if d.complemented {
        // w = 1/(y - a) turns the complement into a disk about 0
        let g = f.swap_at(&d.center);
        // the complement of a closed disk is open, and vice versa
        let inner = Disk { center: PuiseuxSeries::zero(), radius: -d.radius.clone(), closed: !d.closed, complemented: false };
        return image_of_disk(&g, &inner, prec);
    }
    let (g, h) = shifted(f, &d.center);
    let poles = count_in(h.coeffs(), &d.radius, d.closed)?.ok_or(Error::ZeroDivision)?;
    if poles > 0 {
        return Err(Error::PoleInDisk);
    }
    let h0 = h.coeff(0);
    let c0 = sdiv(&g.coeff(0), &h0, prec)?;
    let mut diff: Vec<PuiseuxSeries> = (0..g.coeffs().len().max(h.coeffs().len()))
        .map(|k| &g.coeff(k) - &(&c0 * &h.coeff(k)))
        .collect();
    diff[0] = PuiseuxSeries::zero();
    let dm = dominant(&diff, &d.radius)?.ok_or(Error::InfiniteWdeg)?;
    let hm = dominant(h.coeffs(), &d.radius)?.ok_or(Error::ZeroDivision)?;
    let degree = if d.closed { dm.hi } else { dm.lo };
    Ok(DiskImage {
        disk: Disk { center: c0, radius: &dm.min - &hm.min, closed: d.closed, complemented: false },
        degree,
    })
}

/// Shape of `f(U)` for an open annulus `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnnulusShape {
    /// `val(z - center) > radius`
    Disk { radius: ValExp },
    /// `outer < val(z - center) < inner`
    Annulus { outer: ValExp, inner: ValExp },
}

impl fmt::Display for AnnulusShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnnulusShape::Disk { radius } => write!(f, "disk v > {radius}"),
            AnnulusShape::Annulus { outer, inner } => write!(f, "annulus {outer} < v < {inner}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnulusImage {
    pub center: PuiseuxSeries,
    /// inner Weierstrass degree of `f - center`
    pub m: i64,
    /// outer Weierstrass degree of `f - center`
    pub n: i64,
    pub shape: AnnulusShape,
}

/// Constant Laurent coefficient of `g/h` about `y = 0`.
fn laurent_constant(g: &YPoly, h: &YPoly, prec: &Rat) -> Result<PuiseuxSeries> {
    let k0 = vanishing_order(h.coeffs())?;
    let ht = &h.coeffs()[k0..];
    let cs = series_quotient(g.coeffs(), ht, k0 + 1, prec)?;
    Ok(cs[k0].clone())
}

/// `f(U)` for `U = { rho_out < val(y - a) < rho_in }` when `f` has no pole
/// in `U`.
pub fn image_of_annulus(
    f: &RationalFunc,
    a: &PuiseuxSeries,
    rho_out: &ValExp,
    rho_in: &ValExp,
    prec: &Rat,
) -> Result<AnnulusImage> {
    if rho_out >= rho_in {
        return Err(Error::Invalid("annulus needs rho_out < rho_in".into()));
    }
    let (g, h) = shifted(f, a);
    let closed_in = count_in(h.coeffs(), rho_in, true)?.ok_or(Error::ZeroDivision)?;
    let open_out = count_in(h.coeffs(), rho_out, false)?.ok_or(Error::ZeroDivision)?;
    if open_out > closed_in {
        return Err(Error::HypothesisFailed("f has a pole inside the annulus".into()));
    }
    let at_center = vanishing_order(h.coeffs())?;
    let finite_poles = h.degree().unwrap_or(0);
    let c0 = if closed_in == at_center {
        laurent_constant(&g, &h, prec)?
    } else if closed_in == finite_poles {
        let sw = f.swap_at(a);
        laurent_constant(sw.num(), sw.den(), prec)?
    } else {
        return Err(Error::Indeterminate("poles on both sides of the annulus".into()));
    };
    let fc = f.minus_const(&c0);
    if fc.num().coeffs().iter().all(|c| c.is_exact_zero()) {
        return Err(Error::InfiniteWdeg);
    }
    let m = wdeg(&fc, a, rho_in, Side::Inner)?;
    let n = wdeg(&fc, a, rho_out, Side::Outer)?;
    let s = gauss_norm(&fc, a, rho_in)?;
    let t = gauss_norm(&fc, a, rho_out)?;
    let shape = match m.cmp(&n) {
        Ordering::Less => AnnulusShape::Disk { radius: s.clone().min(t.clone()) },
        Ordering::Equal if m > 0 => AnnulusShape::Annulus { outer: t, inner: s },
        Ordering::Equal if m < 0 => AnnulusShape::Annulus { outer: s, inner: t },
        _ => return Err(Error::Indeterminate(format!("unexpected Weierstrass degrees {m}, {n}"))),
    };
    Ok(AnnulusImage { center: c0, m, n, shape })
}

struct Candidate {
    center: PuiseuxSeries,
    dom: Dominant,
}

/// For every `j` with `h_j != 0`, the candidate center `g_j/h_j` together
/// with the dominant data of `g - (g_j/h_j) h` on the circle of radius `rho`.
///
/// Works at increasing orders up to `prec` and stops at the first one that
/// certifies every dominant term and knows each center past its radius.
fn candidates(f: &RationalFunc, a: &PuiseuxSeries, rho: &ValExp, prec: &Rat) -> Result<(Vec<Candidate>, Dominant)> {
    let mut p = Rat::from_integer(4.into());
    loop {
        if &p >= prec {
            return candidates_at(f, a, rho, prec);
        }
        match candidates_at(f, a, rho, &p) {
            Ok((cs, hd)) => {
                let known = cs.iter().all(|c| match c.center.order() {
                    Some(t) => ValExp::from(t) > &c.dom.min - &hd.min,
                    None => true,
                });
                if known {
                    return Ok((cs, hd));
                }
            }
            Err(Error::PrecisionLoss(_)) => {}
            Err(e) => return Err(e),
        }
        p = &p * Rat::from_integer(2.into());
    }
}

fn candidates_at(f: &RationalFunc, a: &PuiseuxSeries, rho: &ValExp, prec: &Rat) -> Result<(Vec<Candidate>, Dominant)> {
    let (g, h) = shifted(f, a);
    let hd = dominant(h.coeffs(), rho)?.ok_or(Error::ZeroDivision)?;
    let len = g.coeffs().len().max(h.coeffs().len());
    let mut out = Vec::new();
    for j in 0..h.coeffs().len() {
        let hj = h.coeff(j);
        if !matches!(hj.val_bound(), ValBound::Exact(_)) {
            continue;
        }
        let r = sdiv(&g.coeff(j), &hj, prec)?;
        let e: Vec<PuiseuxSeries> = (0..len)
            .map(|k| if k == j { PuiseuxSeries::zero() } else { &g.coeff(k) - &(&r * &h.coeff(k)) })
            .collect();
        let dom = dominant(&e, rho)?.ok_or(Error::InfiniteWdeg)?;
        out.push(Candidate { center: r, dom });
    }
    if out.is_empty() {
        return Err(Error::ZeroDivision);
    }
    Ok((out, hd))
}

/// The image of the disk point of center `a` and radius `rho`, returned as
/// `(center, radius)`. Works when the disk contains poles.
pub fn disk_point_image(f: &RationalFunc, a: &PuiseuxSeries, rho: &ValExp, prec: &Rat) -> Result<(PuiseuxSeries, ValExp)> {
    let (cs, hd) = candidates(f, a, rho, prec)?;
    let best = cs.into_iter().max_by(|x, y| x.dom.min.cmp(&y.dom.min)).expect("nonempty");
    let radius = &best.dom.min - &hd.min;
    Ok((best.center, radius))
}

/// How the image radius moves when leaving the disk point `(a, rho)` in one
/// direction: along residue classes of `a` (`outward = false`) or toward
/// larger disks (`outward = true`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    /// rate of change of the image radius against `rho`
    pub slope: i64,
    /// image center selected on that side
    pub center: PuiseuxSeries,
}

pub fn branch_at(f: &RationalFunc, a: &PuiseuxSeries, rho: &ValExp, outward: bool, prec: &Rat) -> Result<Branch> {
    let (cs, hd) = candidates(f, a, rho, prec)?;
    let top = cs.iter().map(|c| c.dom.min.clone()).max().expect("nonempty");
    let tied = cs.into_iter().filter(|c| c.dom.min == top);
    let (best, slope) = if outward {
        let b = tied.min_by_key(|c| c.dom.hi).expect("nonempty");
        let s = b.dom.hi as i64 - hd.hi as i64;
        (b, s)
    } else {
        let b = tied.max_by_key(|c| c.dom.lo).expect("nonempty");
        let s = b.dom.lo as i64 - hd.lo as i64;
        (b, s)
    };
    Ok(Branch { slope, center: best.center })
}
