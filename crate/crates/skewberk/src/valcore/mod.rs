//! Exact arithmetic in the valued field: exponents in `Q + Q*sqrt2`,
//! truncated Puiseux series over `Q`, and residue-field polynomials.

mod qpoly;
mod series;
mod valexp;

use std::fmt;

pub use qpoly::QPoly;
pub use series::{
    ps_arith, ps_compose, ps_inv, ps_pow_rational, ps_val, rat_pow, rat_root, ArithOp, PuiseuxSeries, ValBound,
};
pub use valexp::{exp_compare, ValExp};

/// Arbitrary-precision rational; also plays the residue field `Q`.
pub type Rat = num_rational::BigRational;

/// An element of the residue field.
pub type Coeff = Rat;

/// Default truncation order for series produced by inversion, roots and
/// substitution.
pub const DEFAULT_ORDER: i64 = 24;

pub fn default_order() -> Rat {
    Rat::from_integer(DEFAULT_ORDER.into())
}

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// A point of the projective line over the Puiseux field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Classical {
    Finite(PuiseuxSeries),
    Infinity,
}

impl Classical {
    pub fn finite(&self) -> Option<&PuiseuxSeries> {
        match self {
            Classical::Finite(a) => Some(a),
            Classical::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Classical::Infinity)
    }

    /// Equality up to the precision both sides certify.
    pub fn agrees_with(&self, other: &Classical) -> bool {
        match (self, other) {
            (Classical::Infinity, Classical::Infinity) => true,
            (Classical::Finite(a), Classical::Finite(b)) => (a - b).is_zero_mod_order(),
            _ => false,
        }
    }
}

impl From<PuiseuxSeries> for Classical {
    fn from(a: PuiseuxSeries) -> Self {
        Classical::Finite(a)
    }
}

impl fmt::Display for Classical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classical::Finite(a) => write!(f, "{a}"),
            Classical::Infinity => write!(f, "infty"),
        }
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn arb_rat(lo: i64, hi: i64, dens: &'static [i64]) -> impl Strategy<Value = Rat> {
        (lo..=hi, proptest::sample::select(dens)).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_series() -> impl Strategy<Value = PuiseuxSeries> {
        proptest::collection::vec((arb_rat(-6, 12, &[1, 2, 3]), arb_rat(-5, 5, &[1, 2])), 1..5).prop_filter_map(
            "nonzero",
            |ts| {
                let s = PuiseuxSeries::new(ts, None);
                (!s.is_exact_zero()).then_some(s)
            },
        )
    }

    fn arb_valexp() -> impl Strategy<Value = ValExp> {
        (arb_rat(-20, 20, &[1, 2, 3, 7]), arb_rat(-20, 20, &[1, 2, 5])).prop_map(|(a, b)| ValExp::new(a, b))
    }

    proptest! {
        #[test]
        fn strong_triangle_equality(a in arb_series(), b in arb_series()) {
            let va = a.valuation().unwrap().unwrap();
            let vb = b.valuation().unwrap().unwrap();
            prop_assume!(va != vb);
            let s = &a + &b;
            prop_assert_eq!(s.valuation().unwrap().unwrap(), va.min(vb));
        }

        #[test]
        fn valuation_is_multiplicative(a in arb_series(), b in arb_series()) {
            let va = a.valuation().unwrap().unwrap();
            let vb = b.valuation().unwrap().unwrap();
            prop_assert_eq!((&a * &b).valuation().unwrap().unwrap(), va + vb);
        }

        #[test]
        fn exp_compare_is_a_total_order(a in arb_valexp(), b in arb_valexp(), c in arb_valexp()) {
            use std::cmp::Ordering::*;
            prop_assert_eq!(exp_compare(&a, &b), exp_compare(&b, &a).reverse());
            if exp_compare(&a, &b) != Greater && exp_compare(&b, &c) != Greater {
                prop_assert!(exp_compare(&a, &c) != Greater);
            }
            // agrees with a floating point check when the gap is visible
            let (fa, fb) = (a.to_f64(), b.to_f64());
            if (fa - fb).abs() > 1e-9 {
                prop_assert_eq!(exp_compare(&a, &b), fa.partial_cmp(&fb).unwrap());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn inverse_round_trip(a in arb_series()) {
            let t = rat(12, 1);
            let inv = a.inv(&t).unwrap();
            let v = a.valuation().unwrap().unwrap();
            prop_assert_eq!(inv.valuation().unwrap().unwrap(), -v.clone());
            let prod = &a * &inv;
            let err = &prod - &PuiseuxSeries::one();
            let order = prod.order().cloned().unwrap_or_else(|| t.clone());
            prop_assert!(err.val_at_least(&ValExp::from_rat(order)).unwrap());
        }
    }
}
