use num_traits::Zero;

use super::{vanishing_order, YPoly};
use crate::error::{Error, Result};
use crate::valcore::{PuiseuxSeries, QPoly, Rat, ValBound};

/// One edge of a Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    /// valuation shared by the roots this edge accounts for (minus the
    /// geometric slope)
    pub slope: Rat,
    pub length: usize,
    pub start: usize,
    pub end: usize,
}

/// Lower convex hull of the points `(k, val(c_k))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// multiplicity of the root `y = 0`
    pub vanishing: usize,
    pub vertices: Vec<(usize, Rat)>,
}

impl NewtonPolygon {
    pub fn segments(&self) -> Vec<Segment> {
        self.vertices
            .windows(2)
            .map(|w| {
                let ((i, vi), (j, vj)) = (&w[0], &w[1]);
                let len = j - i;
                Segment { slope: (vi - vj) / Rat::from_integer(len.into()), length: len, start: *i, end: *j }
            })
            .collect()
    }

    /// Root valuations with multiplicities.
    pub fn root_valuations(&self) -> Vec<(Rat, usize)> {
        self.segments().into_iter().map(|s| (s.slope, s.length)).collect()
    }
}

fn cross(o: &(usize, Rat), a: &(usize, Rat), b: &(usize, Rat)) -> Rat {
    let (ox, ax, bx) = (Rat::from_integer(o.0.into()), Rat::from_integer(a.0.into()), Rat::from_integer(b.0.into()));
    (ax - &ox) * (&b.1 - &o.1) - (&a.1 - &o.1) * (bx - ox)
}

pub fn newton_polygon(p: &YPoly) -> Result<NewtonPolygon> {
    let cs = p.coeffs();
    if cs.is_empty() {
        return Err(Error::Invalid("the zero polynomial has no Newton polygon".into()));
    }
    let vanishing = vanishing_order(cs)?;
    let last = cs.len() - 1;
    if !matches!(cs[last].val_bound(), ValBound::Exact(_)) {
        return Err(Error::precision("leading coefficient is not certified nonzero"));
    }
    let mut pts: Vec<(usize, Rat)> = Vec::new();
    let mut unsure: Vec<(usize, Rat)> = Vec::new();
    for (k, c) in cs.iter().enumerate().skip(vanishing) {
        match c.val_bound() {
            ValBound::Exact(v) => pts.push((k, v)),
            ValBound::AtLeast(t) => unsure.push((k, t)),
            ValBound::Infinite => {}
        }
    }
    let mut hull: Vec<(usize, Rat)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p) <= Rat::zero() {
            hull.pop();
        }
        hull.push(p);
    }
    // a coarse coefficient must sit strictly above the hull
    for (k, t) in unsure {
        let w = hull.windows(2).find(|w| w[0].0 <= k && k <= w[1].0);
        if let Some(w) = w {
            let ((i, vi), (j, vj)) = (&w[0], &w[1]);
            let at = vi + (vj - vi) * Rat::new(((k - i) as i64).into(), ((j - i) as i64).into());
            if t <= at {
                return Err(Error::precision(format!("coefficient {k} could lie on or below the Newton polygon")));
            }
        }
    }
    Ok(NewtonPolygon { vanishing, vertices: hull })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxRoot {
    pub root: PuiseuxSeries,
    pub multiplicity: usize,
}

/// A cluster of roots whose next term has no rational residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unresolved {
    pub prefix: PuiseuxSeries,
    pub valuation: Rat,
    pub degree: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PuiseuxRoots {
    pub roots: Vec<PuiseuxRoot>,
    pub unresolved: Vec<Unresolved>,
}

impl PuiseuxRoots {
    /// Total multiplicity found or reported unresolved.
    pub fn count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum::<usize>() + self.unresolved.iter().map(|u| u.degree).sum::<usize>()
    }
}

const MAX_DEPTH: usize = 512;

/// Roots of `p` in the Puiseux field, certified modulo `x^order`. Roots
/// whose expansion terminates are returned exactly.
pub fn newton_puiseux_roots(p: &YPoly, order: &Rat) -> Result<PuiseuxRoots> {
    let mut out = PuiseuxRoots::default();
    walk(p, &PuiseuxSeries::zero(), None, order, &mut out, 0)?;
    Ok(out)
}

/// Roots `prefix + z` of the original polynomial, where `q(z)` is that
/// polynomial shifted by `prefix` and `val(z) > last`.
fn walk(
    q: &YPoly,
    prefix: &PuiseuxSeries,
    last: Option<&Rat>,
    order: &Rat,
    out: &mut PuiseuxRoots,
    depth: usize,
) -> Result<()> {
    if depth > MAX_DEPTH {
        return Err(Error::precision("Newton-Puiseux expansion did not settle"));
    }
    let np = newton_polygon(q)?;
    if np.vanishing > 0 {
        out.roots.push(PuiseuxRoot { root: prefix.clone(), multiplicity: np.vanishing });
    }
    let segs: Vec<_> = np.segments().into_iter().filter(|s| last.is_none_or(|l| s.slope > *l)).collect();
    if segs.is_empty() {
        return Ok(());
    }
    if last.is_some() && segs.iter().all(|s| s.slope >= *order) {
        let mult = segs.iter().map(|s| s.length).sum();
        out.roots.push(PuiseuxRoot { root: prefix.truncate(order), multiplicity: mult });
        return Ok(());
    }
    for s in segs {
        if last.is_some() && s.slope >= *order {
            out.roots.push(PuiseuxRoot { root: prefix.truncate(order), multiplicity: s.length });
            continue;
        }
        // residue polynomial of the edge
        let base = &np.vertices.iter().find(|v| v.0 == s.start).expect("vertex").1 + &s.slope * Rat::from_integer(s.start.into());
        let mut rc = vec![Rat::zero(); s.length + 1];
        for (k, slot) in rc.iter_mut().enumerate() {
            let c = q.coeff(s.start + k);
            if let ValBound::Exact(v) = c.val_bound() {
                if v + &s.slope * Rat::from_integer((s.start + k).into()) == base {
                    *slot = c.leading()?.1;
                }
            }
        }
        let (found, rest) = QPoly::new(rc).rational_roots();
        if rest > 0 {
            out.unresolved.push(Unresolved { prefix: prefix.clone(), valuation: s.slope.clone(), degree: rest });
        }
        for (c, mu) in found {
            if c.is_zero() {
                continue;
            }
            let term = PuiseuxSeries::monomial(c, s.slope.clone());
            let next = prefix + &term;
            let q2 = q.shift(&term, None);
            let before = out.count();
            walk(&q2, &next, Some(&s.slope), order, out, depth + 1)?;
            debug_assert!(out.count() - before <= mu);
        }
    }
    Ok(())
}
