//! Orbits, cycles and their classification: multipliers, the Julia/Fatou
//! test for hyperbolic cycles, classical fixed points, the contraction
//! attractor and exceptional classical points.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::berktree::{hyp_dist, BerkPoint, DirKind, Direction, Tri};
use crate::error::{Error, Result};
use crate::ratcalc::{image_of_disk, newton_puiseux_roots, taylor_expand, Disk, YPoly};
use crate::skewmap::SkewProduct;
use crate::valcore::{Classical, PuiseuxSeries, Rat, ValBound, ValExp};

/// Default bound on how many periods a direction may take to come back.
pub const DIRECTION_SEARCH_BOUND: usize = 12;

/// `[z, f(z), .., f^n(z)]`; `stopped` holds the error that cut it short.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<BerkPoint>,
    pub stopped: Option<Error>,
}

pub fn orbit(phi: &SkewProduct, z: &BerkPoint, n: usize) -> Orbit {
    let mut points = vec![z.clone()];
    for _ in 0..n {
        match phi.apply_point(points.last().expect("nonempty")) {
            Ok(p) => points.push(p),
            Err(e) => return Orbit { points, stopped: Some(e) },
        }
    }
    Orbit { points, stopped: None }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleReport {
    /// the cycle itself, starting at the first periodic point of the orbit
    pub points: Vec<BerkPoint>,
    pub period: usize,
    /// steps before the orbit enters the cycle
    pub preperiod: usize,
    /// product of local degrees over the cycle
    pub degree_product: usize,
    /// `q^period`
    pub q_power: Rat,
}

impl CycleReport {
    /// `D * Q`.
    pub fn multiplier(&self) -> Rat {
        Rat::from_integer(self.degree_product.into()) * &self.q_power
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleSearch {
    Cycle(CycleReport),
    NotPeriodicWithin(usize),
}

fn q_pow(phi: &SkewProduct, n: usize) -> Rat {
    (0..n).fold(Rat::one(), |acc, _| acc * phi.q())
}

/// Builds the report for a known cycle.
pub fn cycle_report(phi: &SkewProduct, points: Vec<BerkPoint>, preperiod: usize) -> Result<CycleReport> {
    let mut d = 1usize;
    for p in &points {
        d *= phi.local_degree(p)?;
    }
    let period = points.len();
    Ok(CycleReport { points, period, preperiod, degree_product: d, q_power: q_pow(phi, period) })
}

pub fn detect_cycle(phi: &SkewProduct, z: &BerkPoint, max_n: usize) -> Result<CycleSearch> {
    if max_n == 0 {
        return Err(Error::Invalid("max_n must be at least 1".into()));
    }
    let mut seen = vec![z.clone()];
    for _ in 0..max_n {
        let next = phi.apply_point(seen.last().expect("nonempty"))?;
        for (i, p) in seen.iter().enumerate() {
            match p.same_point(&next)? {
                Tri::Equal => {
                    let cycle = seen[i..].to_vec();
                    return Ok(CycleSearch::Cycle(cycle_report(phi, cycle, i)?));
                }
                Tri::EqualSoFar => {
                    return Err(Error::Indeterminate("Type IV prefixes agree but do not certify a cycle".into()))
                }
                Tri::Distinct => {}
            }
        }
        seen.push(next);
    }
    Ok(CycleSearch::NotPeriodicWithin(max_n))
}

/// Classes of a hyperbolic cycle, by its directional multipliers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypClass {
    Indifferent,
    Attracting,
    Repelling,
    Saddle,
}

/// Class by the multiplier `D * Q` alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumClass {
    NumAttracting,
    NumIndifferent,
    NumRepelling,
}

impl NumClass {
    fn of(m: &Rat) -> Self {
        match m.cmp(&Rat::one()) {
            std::cmp::Ordering::Less => NumClass::NumAttracting,
            std::cmp::Ordering::Equal => NumClass::NumIndifferent,
            std::cmp::Ordering::Greater => NumClass::NumRepelling,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicReport {
    pub class: HypClass,
    pub numerical: NumClass,
    pub multiplier: Rat,
    /// multiplier of each candidate direction at the first cycle point
    pub directions: Vec<(Direction, Rat)>,
    /// multiplier of all remaining directions (Type II only)
    pub generic: Option<Rat>,
}

/// Directions `v` at `z` with `phi_#(v) = w`.
pub fn tangent_preimages(phi: &SkewProduct, z: &BerkPoint, w: &Direction) -> Result<(Vec<Direction>, usize)> {
    let (a, rho) = z.as_disk().ok_or_else(|| Error::Invalid("directions live at disk points".into()))?;
    let mut out = Vec::new();
    let Some(rho_q) = rho.as_rat() else {
        for v in Direction::all_at_type_iii(z)? {
            if phi.tangent_map(&v)? == *w {
                out.push(v);
            }
        }
        return Ok((out, 0));
    };
    let red = phi.image_reduction(z)?;
    let bad = phi.bad_directions(z)?;
    let (img_c, img_s) = {
        let (c, s) = crate::ratcalc::disk_point_image(phi.phi2(), a, rho, phi.prec())?;
        let s = s.as_rat().expect("Type II").clone();
        (c.terms_below(&ValExp::from(&s)), s)
    };
    let (n, d) = (red.num(), red.den());
    let (eq, outward_hit) = match &w.kind {
        DirKind::Outward => (d.clone(), n.degree().unwrap_or(0) > d.degree().unwrap_or(0)),
        DirKind::Residue(b) => {
            let diff = &phi.push(b)? - &img_c;
            let wbar = diff.coeff(&img_s)?;
            let eq = n.sub(&d.scale(&wbar));
            let at_inf = match n.degree().unwrap_or(0).cmp(&d.degree().unwrap_or(0)) {
                std::cmp::Ordering::Less => wbar.is_zero(),
                std::cmp::Ordering::Equal => n.lc() / d.lc() == wbar,
                std::cmp::Ordering::Greater => false,
            };
            (eq, at_inf)
        }
    };
    let (roots, unresolved) = eq.rational_roots();
    for (r, _) in roots {
        let b = a + &PuiseuxSeries::monomial(r, rho_q.clone());
        out.push(Direction::residue(z.clone(), &b)?);
    }
    if outward_hit {
        out.push(Direction::outward(z.clone()));
    }
    out.retain(|v| !bad.directions.contains(v));
    for v in &bad.directions {
        if phi.tangent_map(v)? == *w {
            out.push(v.clone());
        }
    }
    let mut checked = Vec::new();
    for v in out {
        if phi.tangent_map(&v)? == *w && !checked.contains(&v) {
            checked.push(v);
        }
    }
    Ok((checked, unresolved + bad.unresolved))
}

/// Directions at a cycle point whose directional degree may exceed 1.
fn special_directions(phi: &SkewProduct, z: &BerkPoint) -> Result<(Vec<Direction>, usize)> {
    let (a, rho) = z.as_disk().ok_or_else(|| Error::Invalid("not a disk point".into()))?;
    if rho.as_rat().is_none() {
        return Ok((Direction::all_at_type_iii(z)?, 0));
    }
    let rho = rho.as_rat().expect("rational").clone();
    let mut out = vec![Direction::residue(z.clone(), a)?, Direction::outward(z.clone())];
    let red = phi.image_reduction(z)?;
    let w = red.num().derivative().mul(red.den()).sub(&red.num().mul(&red.den().derivative()));
    let (crit, unresolved) = w.rational_roots();
    for (r, _) in crit {
        out.push(Direction::residue(z.clone(), &(a + &PuiseuxSeries::monomial(r, rho.clone())))?);
    }
    let bad = phi.bad_directions(z)?;
    out.extend(bad.directions);
    let mut uniq: Vec<Direction> = Vec::new();
    for v in out {
        if !uniq.contains(&v) {
            uniq.push(v);
        }
    }
    Ok((uniq, unresolved + bad.unresolved))
}

/// Candidate directions at the first cycle point: everything whose forward
/// orbit meets a special direction of some cycle point.
fn cycle_candidates(phi: &SkewProduct, cycle: &CycleReport) -> Result<(Vec<Direction>, usize)> {
    let n = cycle.period;
    let mut all: Vec<Direction> = Vec::new();
    let mut unresolved = 0;
    for i in 0..n {
        let (mut layer, u) = special_directions(phi, &cycle.points[i])?;
        unresolved += u;
        // pull back to the first point, one step at a time
        for j in (0..i).rev() {
            let mut prev = Vec::new();
            for w in &layer {
                let (pre, u) = tangent_preimages(phi, &cycle.points[j], w)?;
                unresolved += u;
                prev.extend(pre);
            }
            layer = prev;
        }
        for v in layer {
            if !all.contains(&v) {
                all.push(v);
            }
        }
    }
    Ok((all, unresolved))
}

/// Follows `v` once around the cycle: the direction reached and the product
/// of directional degrees on the way.
fn around(phi: &SkewProduct, v: &Direction, period: usize) -> Result<(Direction, usize)> {
    let mut cur = v.clone();
    let mut deg = 1usize;
    for _ in 0..period {
        deg *= phi.directional_degree(&cur)?;
        cur = phi.tangent_map(&cur)?;
    }
    Ok((cur, deg))
}

pub fn classify_fixed_hyperbolic(phi: &SkewProduct, cycle: &CycleReport) -> Result<HyperbolicReport> {
    let first = cycle.points.first().ok_or_else(|| Error::Invalid("empty cycle".into()))?;
    if first.as_disk().is_none() {
        return Err(Error::Invalid("hyperbolic classification needs Type II or III points".into()));
    }
    let (cands, unresolved) = cycle_candidates(phi, cycle)?;
    if unresolved > 0 {
        return Err(Error::Indeterminate(format!(
            "{unresolved} critical or bad residue classes are not defined over Q"
        )));
    }
    let mut dirs = Vec::new();
    for v in cands {
        let (_, deg) = around(phi, &v, cycle.period)?;
        dirs.push((v, Rat::from_integer(deg.into()) * &cycle.q_power));
    }
    let generic = (first.kind() == 2).then(|| cycle.q_power.clone());
    let one = Rat::one();
    let all: Vec<&Rat> = dirs.iter().map(|(_, m)| m).chain(generic.iter()).collect();
    let lt = all.iter().any(|m| **m < one);
    let gt = all.iter().any(|m| **m > one);
    let class = match (lt, gt) {
        (true, true) => HypClass::Saddle,
        (true, false) => HypClass::Attracting,
        (false, true) => HypClass::Repelling,
        (false, false) => HypClass::Indifferent,
    };
    let multiplier = cycle.multiplier();
    Ok(HyperbolicReport { class, numerical: NumClass::of(&multiplier), multiplier, directions: dirs, generic })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Julia,
    Fatou,
    Indeterminate(String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Julia => write!(f, "Julia"),
            Verdict::Fatou => write!(f, "Fatou"),
            Verdict::Indeterminate(r) => write!(f, "Indeterminate({r})"),
        }
    }
}

/// Is `v` periodic under the cycle's tangent map with full degree?
fn is_exceptional(phi: &SkewProduct, v: &Direction, cycle: &CycleReport, bound: usize) -> Result<Option<bool>> {
    let mut cur = v.clone();
    let mut deg = 1usize;
    for k in 1..=bound {
        let (next, d) = around(phi, &cur, cycle.period)?;
        deg *= d;
        if next == *v {
            let full = (0..k).fold(1usize, |acc, _| acc * cycle.degree_product);
            return Ok(Some(deg == full));
        }
        cur = next;
    }
    Ok(None)
}

/// Bad directions of every cycle point, carried to the first point's cycle
/// of directions when possible.
pub fn julia_test(phi: &SkewProduct, cycle: &CycleReport, bound: usize) -> Result<Verdict> {
    if cycle.multiplier() > Rat::one() {
        return Ok(Verdict::Julia);
    }
    let first = cycle.points.first().ok_or_else(|| Error::Invalid("empty cycle".into()))?;
    if first.kind() != 2 {
        return Ok(Verdict::Fatou);
    }
    // every bad direction along the cycle must be exceptional
    let mut bad_unresolved = 0;
    for (i, z) in cycle.points.iter().enumerate() {
        let bad = phi.bad_directions(z)?;
        bad_unresolved += bad.unresolved;
        let rotated = rotate(cycle, i);
        for v in &bad.directions {
            match is_exceptional(phi, v, &rotated, bound)? {
                Some(true) => {}
                Some(false) => return Ok(Verdict::Julia),
                None => return Ok(Verdict::Indeterminate(format!("direction {v} not periodic within {bound} periods"))),
            }
        }
    }
    if bad_unresolved > 0 {
        return Ok(Verdict::Indeterminate("bad residue classes not defined over Q".into()));
    }
    // some direction must be exceptional; with D = 1 one always is
    if cycle.degree_product == 1 {
        return Ok(Verdict::Fatou);
    }
    let (cands, unresolved) = cycle_candidates(phi, cycle)?;
    for v in &cands {
        if is_exceptional(phi, v, cycle, bound)? == Some(true) {
            return Ok(Verdict::Fatou);
        }
    }
    if unresolved > 0 {
        return Ok(Verdict::Indeterminate("candidate residue classes not defined over Q".into()));
    }
    Ok(Verdict::Julia)
}

fn rotate(cycle: &CycleReport, i: usize) -> CycleReport {
    let mut pts = cycle.points.clone();
    pts.rotate_left(i);
    CycleReport { points: pts, ..cycle.clone() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeIClass {
    Superattracting,
    Superrepelling,
    Attracting,
    Repelling,
    Indifferent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIReport {
    pub class: TypeIClass,
    pub degree: usize,
    /// `degree * q`
    pub dq: Rat,
    /// `q * val(b_d)` when `dq = 1`
    pub multiplier_exp: Option<Rat>,
}

/// Leading Taylor coefficient `b_d` of `phi2` at `a` (in the chart at
/// infinity when `a` is infinity).
fn leading_taylor(phi: &SkewProduct, a: &Classical, d: usize) -> Result<PuiseuxSeries> {
    match a {
        Classical::Finite(a) => Ok(taylor_expand(phi.phi2(), a, d + 1, phi.prec())?.swap_remove(d)),
        Classical::Infinity => {
            let g = phi.phi2().conj_swap();
            Ok(taylor_expand(&g, &PuiseuxSeries::zero(), d + 1, phi.prec())?.swap_remove(d))
        }
    }
}

pub fn classify_fixed_type_i(phi: &SkewProduct, a: &Classical) -> Result<TypeIReport> {
    if !phi.apply_type_i(a)?.agrees_with(a) {
        return Err(Error::NotFixed);
    }
    let degree = phi.local_degree(&BerkPoint::TypeI(a.clone()))?;
    let dq = Rat::from_integer(degree.into()) * phi.q();
    let one = Rat::one();
    if dq > one {
        return Ok(TypeIReport { class: TypeIClass::Superattracting, degree, dq, multiplier_exp: None });
    }
    if dq < one {
        return Ok(TypeIReport { class: TypeIClass::Superrepelling, degree, dq, multiplier_exp: None });
    }
    let b = leading_taylor(phi, a, degree)?;
    let e = phi.q() * b.val_nonzero()?;
    let class = if e.is_positive() {
        TypeIClass::Attracting
    } else if e.is_negative() {
        TypeIClass::Repelling
    } else {
        TypeIClass::Indifferent
    };
    Ok(TypeIReport { class, degree, dq, multiplier_exp: Some(e) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeIVerdict {
    Julia,
    /// not certified either way; `superrepelling` flags the case where
    /// such points are known to be Fatou sometimes
    FatouPlausible { superrepelling: bool },
}

impl fmt::Display for TypeIVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeIVerdict::Julia => write!(f, "julia"),
            TypeIVerdict::FatouPlausible { superrepelling: true } => write!(f, "possibly fatou (superrepelling)"),
            TypeIVerdict::FatouPlausible { superrepelling: false } => write!(f, "possibly fatou"),
        }
    }
}

pub fn classify_repelling_type_i(phi: &SkewProduct, a: &Classical) -> Result<TypeIVerdict> {
    let r = classify_fixed_type_i(phi, a)?;
    Ok(match r.class {
        TypeIClass::Repelling => TypeIVerdict::Julia,
        TypeIClass::Superrepelling => TypeIVerdict::FatouPlausible { superrepelling: true },
        _ => TypeIVerdict::FatouPlausible { superrepelling: false },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Attractor {
    /// an exact fixed point, reached after `steps` iterations
    Fixed { point: BerkPoint, steps: usize },
    /// consecutive points came within the tolerance; `prefix` holds the
    /// nested chain when the iterates were shrinking disks
    Approximate { last: BerkPoint, steps: usize, prefix: Option<BerkPoint> },
}

impl fmt::Display for Attractor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Attractor::Fixed { point, steps } => write!(f, "fixed point {point} after {steps} steps"),
            Attractor::Approximate { last, steps, .. } => write!(f, "approximately {last} after {steps} steps"),
        }
    }
}

pub fn contraction_attractor(phi: &SkewProduct, tol: &Rat, max_n: usize) -> Result<Attractor> {
    contraction_attractor_from(phi, &BerkPoint::gauss(), tol, max_n)
}

pub fn contraction_attractor_from(phi: &SkewProduct, start: &BerkPoint, tol: &Rat, max_n: usize) -> Result<Attractor> {
    let rq = Rat::from_integer(phi.rdeg().into()) * phi.q();
    if rq >= Rat::one() {
        return Err(Error::NotContracting(rq.to_string()));
    }
    let tol = ValExp::from(tol);
    let mut pts = vec![start.clone()];
    for step in 1..=max_n {
        let cur = pts.last().expect("nonempty").clone();
        let next = phi.apply_point(&cur)?;
        if next.same_point(&cur)? == Tri::Equal {
            return Ok(Attractor::Fixed { point: cur, steps: step - 1 });
        }
        let d = hyp_dist(&cur, &next)?;
        pts.push(next.clone());
        if d < tol {
            return Ok(Attractor::Approximate { last: next, steps: step, prefix: nested_prefix(&pts) });
        }
    }
    Err(Error::precision(format!("no stabilization within {max_n} steps")))
}

/// The tail of `pts` that forms a strictly shrinking chain of disks.
fn nested_prefix(pts: &[BerkPoint]) -> Option<BerkPoint> {
    let mut chain: Vec<(PuiseuxSeries, ValExp)> = Vec::new();
    for p in pts.iter().rev() {
        let (c, r) = p.as_disk()?;
        match chain.first() {
            Some((_, r0)) if r >= r0 => break,
            _ => chain.insert(0, (c.clone(), r.clone())),
        }
    }
    if chain.len() < 2 {
        return None;
    }
    BerkPoint::type_iv(chain).ok()
}

/// The attracting classical fixed point inside a disk mapped strictly into
/// itself, to the map's working order.
pub fn attracting_type_i_from_disk(phi: &SkewProduct, d: &Disk) -> Result<PuiseuxSeries> {
    if phi.q() < &Rat::one() {
        return Err(Error::HypothesisFailed(format!("q = {} < 1", phi.q())));
    }
    if d.complemented {
        return Err(Error::HypothesisFailed("the disk must not contain infinity".into()));
    }
    let prec = phi.prec().clone();
    let start = match image_of_disk(phi.phi2(), d, &prec) {
        Ok(im) => {
            let center = phi.pull(&im.disk.center)?;
            let radius = im.disk.radius.scale(phi.q());
            let inside = d.contains(&Classical::Finite(center.clone()))?;
            if !inside || radius <= d.radius {
                return Err(Error::HypothesisFailed("the image of the disk is not strictly inside it".into()));
            }
            center
        }
        Err(Error::InfiniteWdeg) => {
            // phi2 does not depend on y: everything lands on one point
            let c = match crate::ratcalc::rf_eval(phi.phi2(), &Classical::Finite(d.center.clone()), &prec)? {
                Classical::Finite(c) => phi.pull(&c)?,
                Classical::Infinity => return Err(Error::HypothesisFailed("the map sends the disk to infinity".into())),
            };
            if !d.contains(&Classical::Finite(c.clone()))? {
                return Err(Error::HypothesisFailed("the image of the disk is not inside it".into()));
            }
            return Ok(c);
        }
        Err(e) => return Err(e),
    };
    let mut a = start;
    for _ in 0..4096 {
        let next = match phi.apply_type_i(&Classical::Finite(a.clone()))? {
            Classical::Finite(b) => b,
            Classical::Infinity => return Err(Error::HypothesisFailed("orbit reached infinity".into())),
        };
        let r = &next - &a;
        let done = match r.val_bound() {
            ValBound::Infinite => true,
            ValBound::Exact(v) | ValBound::AtLeast(v) => v >= prec,
        };
        if done {
            return Ok(if next.is_exact() && r.is_exact_zero() { next } else { next.truncate(&prec) });
        }
        a = if next.is_exact() && next.terms().len() < 64 { next } else { next.truncate(&(&prec + Rat::one())) };
    }
    Err(Error::precision("fixed point iteration did not settle"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalSet {
    pub points: Vec<Classical>,
    /// critical points of `phi2` not resolved over `Q`
    pub unresolved: usize,
    /// some equalities were only checked to the working order
    pub approximate: bool,
}

/// Classical points with finite backward orbit: cycles of length 1 or 2
/// among the totally ramified points of `phi2`.
pub fn exceptional_type_i(phi: &SkewProduct) -> Result<ExceptionalSet> {
    let d = phi.rdeg();
    if d < 2 {
        return Err(Error::Invalid("exceptional points need rdeg >= 2".into()));
    }
    let f = phi.phi2();
    let (n, den) = (f.num(), f.den());
    let w = n.derivative().mul(den).sub(&n.mul(&den.derivative()));
    let mut ramified: Vec<Classical> = Vec::new();
    let mut unresolved = 0;
    if !w.is_zero() {
        let roots = newton_puiseux_roots(&trim(&w), phi.prec())?;
        unresolved = roots.unresolved.iter().map(|u| u.degree).sum();
        for r in roots.roots {
            if r.multiplicity + 1 == d {
                ramified.push(Classical::Finite(r.root));
            }
        }
    }
    if phi.local_degree(&BerkPoint::infinity())? == d {
        ramified.push(Classical::Infinity);
    }
    let mut approximate = false;
    let mut images = Vec::new();
    for a in &ramified {
        let b = phi.apply_type_i(a)?;
        if !b.finite().is_none_or(|s| s.is_exact()) || !a.finite().is_none_or(|s| s.is_exact()) {
            approximate = true;
        }
        images.push(ramified.iter().position(|c| c.agrees_with(&b)));
    }
    let mut points = Vec::new();
    for (i, a) in ramified.iter().enumerate() {
        let Some(j) = images[i] else { continue };
        if j == i || images[j] == Some(i) {
            points.push(a.clone());
        }
    }
    Ok(ExceptionalSet { points, unresolved, approximate })
}

fn trim(p: &YPoly) -> YPoly {
    YPoly::new(p.coeffs().iter().map(|c| if c.is_zero_mod_order() && c.is_exact() { PuiseuxSeries::zero() } else { c.clone() }).collect())
}

#[cfg(test)]
mod tests;
