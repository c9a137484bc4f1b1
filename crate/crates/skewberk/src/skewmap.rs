//! Skew products `(x, y) -> (phi1(x), phi2(x, y))` acting on the Berkovich
//! line: points, local and directional degrees, reductions at Type II
//! points, tangent maps and bad directions.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::berktree::{BerkPoint, DirKind, Direction};
use crate::error::{Error, Result};
use crate::ratcalc::{self, branch_at, disk_point_image, image_of_disk, rf_eval, vanishing_order, Disk, RationalFunc};
use crate::valcore::{default_order, rat_pow, Classical, PuiseuxSeries, QPoly, Rat, ValBound, ValExp};

/// A skew product. `phi1_inv` is the compositional inverse of `phi1`,
/// computed once at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewProduct {
    phi1: PuiseuxSeries,
    phi2: RationalFunc,
    nu: Rat,
    q: Rat,
    phi1_inv: PuiseuxSeries,
    prec: Rat,
}

/// Compositional inverse of a series of positive valuation, certified to
/// absolute order about `prec`.
fn invert_series(phi1: &PuiseuxSeries, prec: &Rat) -> Result<PuiseuxSeries> {
    let (nu, c) = phi1.leading()?;
    let s = nu.recip();
    let lead = rat_pow(&c.recip(), &s)?;
    let g0 = PuiseuxSeries::monomial(lead, s.clone());
    if phi1.is_exact() && phi1.terms().len() == 1 {
        return Ok(g0);
    }
    let mut target = prec + Rat::from_integer(2.into());
    if let Some(t) = phi1.order() {
        let reach = (t - &nu + Rat::one()) / &nu;
        if reach < target {
            target = reach;
        }
    }
    let work = &target + nu.abs() + Rat::from_integer(2.into());
    // residual needed for val(g - inverse) >= target
    let need = ValExp::from_rat(&target + (&nu - Rat::one()) / &nu);
    let d1 = phi1.derivative();
    let x = PuiseuxSeries::x();
    let mut g = g0;
    // Newton steps roughly double the correct digits, so the working
    // precision doubles along with them
    let mut w = &s + Rat::one();
    for _ in 0..64 {
        w = if &w * Rat::from_integer(2.into()) < work { &w * Rat::from_integer(2.into()) } else { work.clone() };
        // the previous step was only good to the old precision; Newton
        // repairs the unknown tail
        g = g.exactify().truncate(&w);
        let r = &phi1.compose(&g, &w)? - &x;
        if w == work {
            if let Ok(true) = r.val_at_least(&need) {
                return Ok(g.truncate(&target));
            }
        }
        let step = &r * &d1.compose(&g, &w)?.inv(&w)?;
        g = (&g - &step).truncate(&w);
    }
    Err(Error::precision("inverse of phi1 did not converge"))
}

impl SkewProduct {
    /// Working order `prec` is used by every series operation of the map.
    pub fn with_order(phi1: PuiseuxSeries, phi2: RationalFunc, prec: Rat) -> Result<Self> {
        let nu = match phi1.valuation() {
            Ok(Some(v)) => v,
            Ok(None) => return Err(Error::InvalidPhi1("phi1 is zero".into())),
            Err(e) => return Err(e),
        };
        if !nu.is_positive() {
            return Err(Error::InvalidPhi1(format!("phi1 must have positive valuation, got {nu}")));
        }
        let phi1_inv = invert_series(&phi1, &prec)?;
        Ok(SkewProduct { q: nu.recip(), nu, phi1, phi2, phi1_inv, prec })
    }

    pub fn phi1(&self) -> &PuiseuxSeries {
        &self.phi1
    }

    pub fn phi2(&self) -> &RationalFunc {
        &self.phi2
    }

    pub fn phi1_inv(&self) -> &PuiseuxSeries {
        &self.phi1_inv
    }

    /// The scale factor `1/val(phi1)`.
    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn prec(&self) -> &Rat {
        &self.prec
    }

    /// Degree of `phi2` in `y`.
    pub fn rdeg(&self) -> usize {
        self.phi2.rdeg()
    }

    /// `a(phi1_inv(x))`: the action of `(phi1^*)^(-1)` on coefficients.
    pub fn pull(&self, a: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        a.compose(&self.phi1_inv, &self.prec)
    }

    /// `pull` of a disk center at radius `s`, keeping only what the pulled
    /// disk at radius `s * q` and its residue classes can see.
    fn pull_center(&self, c: &PuiseuxSeries, s: &ValExp) -> Result<PuiseuxSeries> {
        if let Some(t) = c.order() {
            if ValExp::from(t) <= *s {
                return self.pull(c);
            }
        }
        let kept = PuiseuxSeries::new(c.terms().iter().filter(|(e, _)| ValExp::from(e) <= *s).cloned().collect(), None);
        let need = Rat::from_integer(s.scale(&self.q).floor()) + Rat::one();
        let prec = if need < self.prec { need } else { self.prec.clone() };
        kept.compose(&self.phi1_inv, &prec)
    }

    /// `a(phi1(x))`.
    pub fn push(&self, a: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        a.compose(&self.phi1, &self.prec)
    }

    pub fn apply_type_i(&self, a: &Classical) -> Result<Classical> {
        match rf_eval(&self.phi2, a, &self.prec)? {
            Classical::Infinity => Ok(Classical::Infinity),
            Classical::Finite(b) => Ok(Classical::Finite(self.pull(&b)?)),
        }
    }

    /// The image of a disk point in `phi2`'s own coordinates, before
    /// `(phi1^*)^(-1)`.
    fn phi2_image(&self, a: &PuiseuxSeries, rho: &ValExp) -> Result<(PuiseuxSeries, ValExp)> {
        disk_point_image(&self.phi2, a, rho, &self.prec)
    }

    pub fn apply_point(&self, z: &BerkPoint) -> Result<BerkPoint> {
        match z {
            BerkPoint::TypeI(a) => Ok(BerkPoint::TypeI(self.apply_type_i(a)?)),
            BerkPoint::Disk { center, .. } if self.phi2.is_y_free() => {
                Ok(BerkPoint::TypeI(self.apply_type_i(&Classical::Finite(center.clone()))?))
            }
            BerkPoint::Disk { center, radius } => {
                let (c, s) = self.phi2_image(center, radius)?;
                BerkPoint::disk(&self.pull_center(&c, &s)?, s.scale(&self.q))
            }
            BerkPoint::TypeIV(chain) => {
                let mut out = Vec::with_capacity(chain.len());
                for (c, r) in chain {
                    match self.apply_point(&BerkPoint::disk(c, r.clone())?)? {
                        BerkPoint::Disk { center, radius } => out.push((center, radius)),
                        _ => unreachable!("disk points map to disk points"),
                    }
                }
                BerkPoint::type_iv(out)
                    .map_err(|_| Error::precision("images of the Type IV prefix are not nested yet"))
            }
        }
    }

    /// Multiplicity of `phi2` at a classical point.
    fn type_i_degree(&self, f: &RationalFunc, a: &Classical) -> Result<usize> {
        let a = match a {
            Classical::Infinity => return self.type_i_degree(&f.conj_swap(), &Classical::Finite(PuiseuxSeries::zero())),
            Classical::Finite(a) => a,
        };
        let g = f.num().shift(a, None);
        let h = f.den().shift(a, None);
        match rf_eval(f, &Classical::Finite(a.clone()), &self.prec)? {
            Classical::Infinity => Ok(vanishing_order(h.coeffs())? - vanishing_order(g.coeffs())?),
            Classical::Finite(c) => {
                let n = g.coeffs().len().max(h.coeffs().len());
                let mut cs: Vec<PuiseuxSeries> = (0..n).map(|k| &g.coeff(k) - &(&c * &h.coeff(k))).collect();
                cs[0] = PuiseuxSeries::zero();
                let k = vanishing_order(&cs)?;
                if k >= n {
                    return Err(Error::InfiniteWdeg);
                }
                Ok(k)
            }
        }
    }

    pub fn local_degree(&self, z: &BerkPoint) -> Result<usize> {
        match z {
            BerkPoint::TypeI(a) => self.type_i_degree(&self.phi2, a),
            BerkPoint::Disk { center, radius } => match radius.as_rat() {
                Some(rho) => {
                    let (c, s) = self.phi2_image(center, radius)?;
                    let s = s.as_rat().expect("Type II maps to Type II").clone();
                    let c = c.terms_below(&ValExp::from(&s));
                    let red = self.reduce(center, rho, &c, &s)?;
                    Ok(red.degree())
                }
                None => self.directional_degree(&Direction::residue(z.clone(), center)?),
            },
            BerkPoint::TypeIV(chain) => {
                for (c, r) in chain.iter().rev() {
                    let d = Disk::closed(c.clone(), r.clone());
                    match image_of_disk(&self.phi2, &d, &self.prec) {
                        Ok(im) if im.degree == 1 => return Ok(1),
                        _ => continue,
                    }
                }
                Err(Error::precision("no disk of the Type IV prefix certifies injectivity"))
            }
        }
    }

    fn branch(&self, v: &Direction) -> Result<ratcalc::Branch> {
        let (a, rho) = v.at.as_disk().ok_or_else(|| Error::Invalid("directions live at disk points".into()))?;
        match &v.kind {
            DirKind::Residue(b) => branch_at(&self.phi2, b, rho, false, &self.prec),
            DirKind::Outward => branch_at(&self.phi2, a, rho, true, &self.prec),
        }
    }

    /// Signed Weierstrass degree of `phi2` on a thin annulus in `v`:
    /// positive when the image annulus faces the same way.
    pub fn directional_wdeg(&self, v: &Direction) -> Result<i64> {
        let b = self.branch(v)?;
        Ok(match v.kind {
            DirKind::Residue(_) => b.slope,
            DirKind::Outward => -b.slope,
        })
    }

    pub fn directional_degree(&self, v: &Direction) -> Result<usize> {
        let b = self.branch(v)?;
        if b.slope == 0 {
            return Err(Error::Indeterminate("image radius is locally constant".into()));
        }
        Ok(b.slope.unsigned_abs() as usize)
    }

    /// The image of the direction `v` at `phi_*(v.at)`.
    pub fn tangent_map(&self, v: &Direction) -> Result<Direction> {
        let image = self.apply_point(&v.at)?;
        let (_, s) = image.as_disk().ok_or_else(|| Error::Invalid("disk points map to disk points".into()))?;
        let s = s.scale(&(Rat::one() / &self.q));
        let b = self.branch(v)?;
        let residue = match (&v.kind, b.slope.signum()) {
            (_, 0) => return Err(Error::Indeterminate("image radius is locally constant".into())),
            (DirKind::Residue(_), 1) | (DirKind::Outward, -1) => true,
            _ => false,
        };
        if residue {
            Direction::residue(image, &self.pull_center(&b.center, &s)?)
        } else {
            Ok(Direction::outward(image))
        }
    }

    /// `(phi2(a + x^rho Y) - c) / x^sigma`, reduced coefficientwise.
    fn reduce(&self, a: &PuiseuxSeries, rho: &Rat, c: &PuiseuxSeries, sigma: &Rat) -> Result<ReducedMap> {
        let (n, d) = self.conjugate(a, rho, c, sigma)?;
        let (nb, db) = reduce_pair(&n, &d)?;
        Ok(ReducedMap::new(nb, db))
    }

    fn conjugate(&self, a: &PuiseuxSeries, rho: &Rat, c: &PuiseuxSeries, sigma: &Rat) -> Result<(Vec<PuiseuxSeries>, Vec<PuiseuxSeries>)> {
        let g = self.phi2.num().shift(a, None);
        let h = self.phi2.den().shift(a, None);
        let len = g.coeffs().len().max(h.coeffs().len());
        let one = Rat::one();
        let mut n = Vec::with_capacity(len);
        let mut d = Vec::with_capacity(len);
        for k in 0..len {
            let e = rho * Rat::from_integer(k.into());
            n.push((&g.coeff(k) - &(c * &h.coeff(k))).mul_monomial(&one, &e));
            d.push(h.coeff(k).mul_monomial(&one, &(&e + sigma)));
        }
        Ok((n, d))
    }

    fn type_ii(z: &BerkPoint) -> Result<(&PuiseuxSeries, &Rat)> {
        match z {
            BerkPoint::Disk { center, radius } => radius
                .as_rat()
                .map(|r| (center, r))
                .ok_or_else(|| Error::Invalid("reduction needs a Type II point".into())),
            _ => Err(Error::Invalid("reduction needs a Type II point".into())),
        }
    }

    /// Reduction at `z`, conjugating `z` on the source and
    /// `(phi1^*)^(-1)`-preimage of `z` on the target to the Gauss point.
    /// Constant when `z` is not fixed.
    pub fn reduction_at(&self, z: &BerkPoint) -> Result<ReducedMap> {
        let (a, rho) = Self::type_ii(z)?;
        let sigma = rho * &self.nu;
        let c = self.push(a)?.terms_below(&ValExp::from(&sigma));
        self.reduce(a, rho, &c, &sigma)
    }

    /// Reduction conjugating `z` and its image to the Gauss point; never
    /// constant.
    pub fn image_reduction(&self, z: &BerkPoint) -> Result<ReducedMap> {
        let (a, rho) = Self::type_ii(z)?;
        let (c, s) = self.phi2_image(a, &ValExp::from(rho))?;
        let s = s.as_rat().expect("Type II maps to Type II").clone();
        let c = c.terms_below(&ValExp::from(&s));
        self.reduce(a, rho, &c, &s)
    }

    /// Directions at `z` whose disk maps onto the whole line.
    pub fn bad_directions(&self, z: &BerkPoint) -> Result<BadDirections> {
        let (a, rho) = Self::type_ii(z)?;
        let (c, s) = self.phi2_image(a, &ValExp::from(rho))?;
        let s = s.as_rat().expect("Type II maps to Type II").clone();
        let c = c.terms_below(&ValExp::from(&s));
        let (n, d) = self.conjugate(a, rho, &c, &s)?;
        let (nb, db) = reduce_pair(&n, &d)?;
        if nb.is_zero() || db.is_zero() {
            return Err(Error::Indeterminate("reduction is constant after conjugation".into()));
        }
        let common = nb.gcd(&db);
        let (roots, unresolved) = common.rational_roots();
        let mut dirs = Vec::new();
        for (r, _) in roots {
            let b = a + &PuiseuxSeries::monomial(r, rho.clone());
            dirs.push(Direction::residue(z.clone(), &b)?);
        }
        let top = |v: &[PuiseuxSeries]| v.iter().rposition(|c| !c.is_exact_zero());
        let drop_n = top(&n).is_some_and(|k| nb.degree().is_none_or(|dn| dn < k));
        let drop_d = top(&d).is_some_and(|k| db.degree().is_none_or(|dd| dd < k));
        if drop_n && drop_d {
            dirs.push(Direction::outward(z.clone()));
        }
        Ok(BadDirections { directions: dirs, unresolved })
    }

    /// Explicit good reduction: the plain reduction at the Gauss point has
    /// full degree.
    pub fn good_reduction_test(&self) -> Result<bool> {
        let z = PuiseuxSeries::zero();
        let r = self.reduce(&z, &Rat::zero(), &z, &Rat::zero())?;
        Ok(!r.is_constant() && r.degree() == self.rdeg())
    }
}

pub fn mk_skew(phi1: PuiseuxSeries, phi2: RationalFunc) -> Result<SkewProduct> {
    SkewProduct::with_order(phi1, phi2, default_order())
}

/// Joint leading-coefficient reduction of a pair of coefficient lists.
fn reduce_pair(n: &[PuiseuxSeries], d: &[PuiseuxSeries]) -> Result<(QPoly, QPoly)> {
    let mut m: Option<Rat> = None;
    for c in n.iter().chain(d) {
        if let ValBound::Exact(v) = c.val_bound() {
            if m.as_ref().is_none_or(|x| v < *x) {
                m = Some(v);
            }
        }
    }
    let m = m.ok_or(Error::ZeroDivision)?;
    for c in n.iter().chain(d) {
        if let ValBound::AtLeast(t) = c.val_bound() {
            if t <= m {
                return Err(Error::precision("a coefficient is too coarse to reduce"));
            }
        }
    }
    let lead = |v: &[PuiseuxSeries]| {
        QPoly::new(
            v.iter()
                .map(|c| match c.terms().first() {
                    Some((e, k)) if *e == m => k.clone(),
                    _ => Rat::zero(),
                })
                .collect(),
        )
    };
    Ok((lead(n), lead(d)))
}

/// A rational function over the residue field, in lowest terms with a monic
/// denominator; `den = 0` encodes the constant infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedMap {
    num: QPoly,
    den: QPoly,
}

impl ReducedMap {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        if den.is_zero() {
            return ReducedMap { num: QPoly::constant(Rat::one()), den: QPoly::zero() };
        }
        if num.is_zero() {
            return ReducedMap { num, den: QPoly::constant(Rat::one()) };
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lc = d.lc();
        ReducedMap { num: n.scale(&lc.recip()), den: d.scale(&lc.recip()) }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        if self.den.is_zero() {
            return 0;
        }
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    /// `None` is infinity.
    pub fn eval(&self, r: &Rat) -> Option<Rat> {
        let d = self.den.eval(r);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(r) / d)
    }

    /// Multiplicity of `r` as a solution of `R(y) = R(r)`.
    pub fn multiplicity_at(&self, r: &Rat) -> usize {
        match self.eval(r) {
            Some(w) => self.num.sub(&self.den.scale(&w)).root_multiplicity(r),
            None => self.den.root_multiplicity(r),
        }
    }

    /// Finite critical points over `Q` (roots of `N'D - ND'`).
    pub fn critical_points(&self) -> Vec<Rat> {
        if self.is_constant() {
            return vec![];
        }
        let w = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        w.rational_roots().0.into_iter().map(|(r, _)| r).collect()
    }
}

impl fmt::Display for ReducedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_zero() {
            write!(f, "infty")
        } else if self.den == QPoly::constant(Rat::one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Bad directions at a Type II point. `unresolved` counts bad residue
/// classes that are not defined over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadDirections {
    pub directions: Vec<Direction>,
    pub unresolved: usize,
}
