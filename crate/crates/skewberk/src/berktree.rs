//! Points of the Berkovich projective line, the tree order, joins,
//! diameters, directions and the hyperbolic metric.
//!
//! Radii are exponents: the disk point of center `a` and radius `rho` is the
//! sup-norm on `{ val(y - a) >= rho }`, so a larger `rho` is a smaller disk.

use std::fmt;

use crate::error::{Error, Result};
use crate::valcore::{Classical, PuiseuxSeries, Rat, ValExp};

/// The part of `a` that matters modulo `val >= rho`: terms below `rho`.
fn normalize_center(a: &PuiseuxSeries, rho: &ValExp) -> Result<PuiseuxSeries> {
    if let Some(t) = a.order() {
        if ValExp::from(t) < *rho {
            return Err(Error::precision(format!("center known only modulo x^({t}), radius is {rho}")));
        }
    }
    Ok(a.terms_below(rho))
}

/// Terms with exponent `<= rho`: the key of the open disk `val(y - b) > rho`.
pub(crate) fn residue_key(b: &PuiseuxSeries, rho: &ValExp) -> Result<PuiseuxSeries> {
    if let Some(t) = b.order() {
        if ValExp::from(t) <= *rho {
            return Err(Error::precision(format!("direction center known only modulo x^({t})")));
        }
    }
    let terms = b.terms().iter().filter(|(e, _)| ValExp::from(e) <= *rho).cloned().collect();
    Ok(PuiseuxSeries::new(terms, None))
}

/// `val(a - b)`, with `None` for equal exact series.
fn val_diff(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Result<Option<ValExp>> {
    Ok((a - b).valuation()?.map(ValExp::from_rat))
}

/// A point of the Berkovich projective line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BerkPoint {
    /// a classical point, possibly infinity
    TypeI(Classical),
    /// Type II for a rational radius, Type III otherwise
    Disk { center: PuiseuxSeries, radius: ValExp },
    /// finite prefix of a strictly decreasing chain of disks
    TypeIV(Vec<(PuiseuxSeries, ValExp)>),
}

/// Answer of a comparison that may only be settled by more data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Equal,
    /// no disagreement within the data at hand
    EqualSoFar,
    Distinct,
}

/// Where a disk point, or a comparable piece of one, sits.
enum Shape<'a> {
    Inf,
    Point(&'a PuiseuxSeries),
    Disk(&'a PuiseuxSeries, &'a ValExp),
    Chain(&'a [(PuiseuxSeries, ValExp)]),
}

impl BerkPoint {
    pub fn type_i(a: PuiseuxSeries) -> Self {
        BerkPoint::TypeI(Classical::Finite(a))
    }

    pub fn infinity() -> Self {
        BerkPoint::TypeI(Classical::Infinity)
    }

    /// The disk point with its center reduced modulo the radius.
    pub fn disk(center: &PuiseuxSeries, radius: ValExp) -> Result<Self> {
        Ok(BerkPoint::Disk { center: normalize_center(center, &radius)?, radius })
    }

    pub fn gauss() -> Self {
        BerkPoint::Disk { center: PuiseuxSeries::zero(), radius: ValExp::zero() }
    }

    /// Validates strict nesting and normalizes every center.
    pub fn type_iv(chain: Vec<(PuiseuxSeries, ValExp)>) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::Invalid("a Type IV prefix needs at least one disk".into()));
        }
        let mut out: Vec<(PuiseuxSeries, ValExp)> = Vec::with_capacity(chain.len());
        for (c, r) in chain {
            let c = normalize_center(&c, &r)?;
            if let Some((pc, pr)) = out.last() {
                if r <= *pr {
                    return Err(Error::Invalid("Type IV disks must shrink strictly".into()));
                }
                if !(&c - pc).val_at_least(pr)? {
                    return Err(Error::Invalid("Type IV disks must be nested".into()));
                }
            }
            out.push((c, r));
        }
        Ok(BerkPoint::TypeIV(out))
    }

    /// 1 to 4.
    pub fn kind(&self) -> u8 {
        match self {
            BerkPoint::TypeI(_) => 1,
            BerkPoint::Disk { radius, .. } if radius.is_rational() => 2,
            BerkPoint::Disk { .. } => 3,
            BerkPoint::TypeIV(_) => 4,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, BerkPoint::TypeI(Classical::Infinity))
    }

    /// Center and radius of a disk point.
    pub fn as_disk(&self) -> Option<(&PuiseuxSeries, &ValExp)> {
        match self {
            BerkPoint::Disk { center, radius } => Some((center, radius)),
            _ => None,
        }
    }

    fn shape(&self) -> Shape<'_> {
        match self {
            BerkPoint::TypeI(Classical::Infinity) => Shape::Inf,
            BerkPoint::TypeI(Classical::Finite(a)) => Shape::Point(a),
            BerkPoint::Disk { center, radius } => Shape::Disk(center, radius),
            BerkPoint::TypeIV(ch) => Shape::Chain(ch),
        }
    }

    /// Equality, three-valued where Type IV prefixes are involved.
    pub fn same_point(&self, other: &BerkPoint) -> Result<Tri> {
        match (self.shape(), other.shape()) {
            (Shape::Chain(a), Shape::Chain(b)) => {
                for (ca, ra) in a {
                    for (cb, rb) in b {
                        let r = if ra < rb { ra } else { rb };
                        if !(ca - cb).val_at_least(r)? {
                            return Ok(Tri::Distinct);
                        }
                    }
                }
                Ok(Tri::EqualSoFar)
            }
            (Shape::Point(a), Shape::Point(b)) => {
                let d = a - b;
                if d.is_exact_zero() {
                    Ok(Tri::Equal)
                } else if d.is_zero_mod_order() {
                    Err(Error::precision("classical points agree to the known order"))
                } else {
                    Ok(Tri::Distinct)
                }
            }
            _ if self.kind() != other.kind() => Ok(Tri::Distinct),
            _ => Ok(if self == other { Tri::Equal } else { Tri::Distinct }),
        }
    }

    /// `self ⪯ other`: `other` is `self` or lies above it, toward infinity.
    pub fn leq(&self, other: &BerkPoint) -> Result<bool> {
        match (self.shape(), other.shape()) {
            (_, Shape::Inf) => Ok(true),
            (Shape::Inf, _) => Ok(false),
            (_, Shape::Point(_)) | (_, Shape::Chain(_)) => Ok(self.same_point(other)? != Tri::Distinct),
            (Shape::Point(p), Shape::Disk(c, s)) => (p - c).val_at_least(s),
            (Shape::Disk(d, r), Shape::Disk(c, s)) => Ok(r >= s && (d - c).val_at_least(s)?),
            (Shape::Chain(ch), Shape::Disk(c, s)) => {
                for (d, r) in ch {
                    if r >= s {
                        return (d - c).val_at_least(s);
                    }
                }
                let (d, r) = ch.last().expect("nonempty chain");
                if !(d - c).val_at_least(r)? {
                    return Ok(false);
                }
                Err(Error::precision("Type IV prefix too short to compare with this disk"))
            }
        }
    }

    /// Least upper bound.
    pub fn join(&self, other: &BerkPoint) -> Result<BerkPoint> {
        if self.is_infinity() || other.is_infinity() {
            return Ok(BerkPoint::infinity());
        }
        if let Ok(true) = self.leq(other) {
            return Ok(other.clone());
        }
        if let Ok(true) = other.leq(self) {
            return Ok(self.clone());
        }
        let pick = |p: &BerkPoint| -> Vec<(PuiseuxSeries, Option<ValExp>)> {
            match p.shape() {
                Shape::Point(a) => vec![(a.clone(), None)],
                Shape::Disk(c, r) => vec![(c.clone(), Some(r.clone()))],
                Shape::Chain(ch) => ch.iter().map(|(c, r)| (c.clone(), Some(r.clone()))).collect(),
                Shape::Inf => unreachable!(),
            }
        };
        let (pa, pb) = (pick(self), pick(other));
        let exact_a = !matches!(self, BerkPoint::TypeIV(_));
        let exact_b = !matches!(other, BerkPoint::TypeIV(_));
        for (ca, ra) in &pa {
            for (cb, rb) in &pb {
                let v = val_diff(ca, cb)?;
                let mut r = v;
                for cand in [ra, rb].into_iter().flatten() {
                    r = Some(match r {
                        Some(x) if x < *cand => x,
                        _ => cand.clone(),
                    });
                }
                let Some(r) = r else { continue };
                // for a chain disk the join is only known if it sits strictly above that disk
                let ok_a = exact_a || ra.as_ref().is_some_and(|x| r < *x);
                let ok_b = exact_b || rb.as_ref().is_some_and(|x| r < *x);
                if ok_a && ok_b {
                    return BerkPoint::disk(ca, r);
                }
            }
        }
        Err(Error::precision("Type IV prefix too short to locate the join"))
    }

    /// Diameter exponent; `None` is `+inf` (diameter zero). Type IV points
    /// only have a bound, see [`BerkPoint::diam_bound`].
    pub fn diam(&self) -> Result<Option<ValExp>> {
        match self {
            BerkPoint::TypeI(Classical::Finite(_)) => Ok(None),
            BerkPoint::TypeI(Classical::Infinity) => Err(Error::Invalid("infinity has no diameter".into())),
            BerkPoint::Disk { radius, .. } => Ok(Some(radius.clone())),
            BerkPoint::TypeIV(ch) => Err(Error::precision(format!(
                "Type IV diameter exponent is only known to exceed {}",
                ch.last().expect("nonempty").1
            ))),
        }
    }

    /// Lower bound for the diameter exponent of a Type IV point.
    pub fn diam_bound(&self) -> Option<&ValExp> {
        match self {
            BerkPoint::TypeIV(ch) => ch.last().map(|(_, r)| r),
            _ => None,
        }
    }

    /// Direction at the disk point `self` containing `xi`.
    pub fn direction_at(&self, xi: &BerkPoint) -> Result<Direction> {
        let (_, rho) = self.as_disk().ok_or_else(|| Error::Invalid("directions live at Type II and III points".into()))?;
        if self.same_point(xi)? == Tri::Equal {
            return Err(Error::SamePoint);
        }
        if !xi.leq(self)? {
            return Ok(Direction::outward(self.clone()));
        }
        let b = match xi.shape() {
            Shape::Point(p) => p.clone(),
            Shape::Disk(c, _) => c.clone(),
            Shape::Chain(ch) => match ch.iter().find(|(_, r)| r > rho) {
                Some((c, _)) => c.clone(),
                None => return Err(Error::precision("Type IV prefix does not leave the disk")),
            },
            Shape::Inf => unreachable!(),
        };
        Direction::residue(self.clone(), &b)
    }

    /// The point's image under `y -> 1/y`.
    pub fn swap(&self, prec: &Rat) -> Result<BerkPoint> {
        match self.shape() {
            Shape::Inf => Ok(BerkPoint::type_i(PuiseuxSeries::zero())),
            Shape::Point(a) if a.is_exact_zero() => Ok(BerkPoint::infinity()),
            Shape::Point(a) => Ok(BerkPoint::type_i(a.inv(prec)?)),
            Shape::Disk(c, r) => swap_disk(c, r, prec).map(|(c, r)| BerkPoint::Disk { center: c, radius: r }),
            Shape::Chain(ch) => {
                let mut out = Vec::new();
                for (c, r) in ch {
                    if c.is_exact_zero() {
                        continue;
                    }
                    out.push(swap_disk(c, r, prec)?);
                }
                if out.is_empty() {
                    return Err(Error::precision("Type IV prefix too short to swap"));
                }
                BerkPoint::type_iv(out)
            }
        }
    }
}

fn swap_disk(c: &PuiseuxSeries, r: &ValExp, prec: &Rat) -> Result<(PuiseuxSeries, ValExp)> {
    match c.valuation()? {
        Some(v) if ValExp::from(&v) < *r => {
            let radius = r - &ValExp::from_rat(&v + &v);
            let need = Rat::from_integer(radius.floor() + 1);
            let p = if need > *prec { need } else { prec.clone() };
            let inv = c.inv(&p)?;
            Ok((normalize_center(&inv, &radius)?, radius))
        }
        _ => Ok((PuiseuxSeries::zero(), -r.clone())),
    }
}

/// Which side of a disk point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DirKind {
    /// the open disk `val(y - b) > rho` inside the closed disk
    Residue(PuiseuxSeries),
    /// the component containing infinity
    Outward,
}

/// A tangent direction at a Type II or III point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Direction {
    pub at: BerkPoint,
    pub kind: DirKind,
}

impl Direction {
    pub fn outward(at: BerkPoint) -> Self {
        Direction { at, kind: DirKind::Outward }
    }

    /// `b` is reduced to its terms of exponent at most the radius, so equal
    /// residue classes give equal directions.
    pub fn residue(at: BerkPoint, b: &PuiseuxSeries) -> Result<Self> {
        let (a, rho) = at.as_disk().ok_or_else(|| Error::Invalid("directions live at Type II and III points".into()))?;
        if !(b - a).val_at_least(rho)? {
            return Err(Error::Invalid(format!("{b} is not in the disk of {at}")));
        }
        let key = residue_key(b, rho)?;
        Ok(Direction { at, kind: DirKind::Residue(key) })
    }

    /// Every direction at a Type III point.
    pub fn all_at_type_iii(at: &BerkPoint) -> Result<Vec<Direction>> {
        if at.kind() != 3 {
            return Err(Error::Invalid("not a Type III point".into()));
        }
        let (a, _) = at.as_disk().expect("disk");
        Ok(vec![Direction::residue(at.clone(), a)?, Direction::outward(at.clone())])
    }

    /// Does the component of this direction contain `xi`?
    pub fn contains(&self, xi: &BerkPoint) -> Result<bool> {
        if self.at.same_point(xi)? == Tri::Equal {
            return Ok(false);
        }
        Ok(self.at.direction_at(xi)? == *self)
    }

    /// A point inside the direction's component: a smaller disk point for a
    /// residue class, a larger one for the outward direction.
    pub fn probe(&self, step: &Rat) -> Result<BerkPoint> {
        let (a, rho) = self.at.as_disk().expect("directions sit at disk points");
        match &self.kind {
            DirKind::Residue(b) => BerkPoint::disk(b, rho.add_rat(step)),
            DirKind::Outward => BerkPoint::disk(a, rho.add_rat(&-step.clone())),
        }
    }
}

/// `d(zeta, xi) = rho_zeta + rho_xi - 2 rho_join`, in units of `log(1/eps)`.
pub fn hyp_dist(a: &BerkPoint, b: &BerkPoint) -> Result<ValExp> {
    for p in [a, b] {
        if p.kind() == 1 {
            return Err(Error::TypeIUnsupported);
        }
    }
    let j = a.join(b)?;
    let (ra, rb, rj) = (a.diam()?, b.diam()?, j.diam()?);
    let (ra, rb, rj) = (ra.expect("finite"), rb.expect("finite"), rj.expect("finite"));
    Ok(&(&ra + &rb) - &rj.scale(&Rat::from_integer(2.into())))
}

impl fmt::Display for BerkPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BerkPoint::TypeI(Classical::Infinity) => write!(f, "infty"),
            BerkPoint::TypeI(Classical::Finite(a)) => write!(f, "typeI({a})"),
            BerkPoint::Disk { center, radius } => write!(f, "zeta({center}, {radius})"),
            BerkPoint::TypeIV(ch) => {
                write!(f, "typeIV(")?;
                for (i, (c, r)) in ch.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "zeta({c}, {r})")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DirKind::Residue(b) => write!(f, "res({b})"),
            DirKind::Outward => write!(f, "out"),
        }
    }
}
