use super::*;
use crate::ratcalc::RationalFunc;
use crate::skewmap::mk_skew;
use crate::valcore::rat;
use proptest::prelude::*;

fn x() -> PuiseuxSeries {
    PuiseuxSeries::x()
}

fn c(n: i64) -> PuiseuxSeries {
    PuiseuxSeries::from_int(n)
}

fn xp(n: i64) -> PuiseuxSeries {
    PuiseuxSeries::monomial(rat(1, 1), rat(n, 1))
}

fn poly(cs: Vec<PuiseuxSeries>) -> RationalFunc {
    RationalFunc::poly(YPoly::new(cs))
}

fn ypow(k: usize) -> RationalFunc {
    let mut cs = vec![PuiseuxSeries::zero(); k + 1];
    cs[k] = c(1);
    poly(cs)
}

fn rf(n: Vec<PuiseuxSeries>, d: Vec<PuiseuxSeries>) -> RationalFunc {
    RationalFunc::new(YPoly::new(n), YPoly::new(d)).unwrap()
}

fn disk(c: PuiseuxSeries, n: i64, d: i64) -> BerkPoint {
    BerkPoint::disk(&c, ValExp::from_rat(rat(n, d))).unwrap()
}

fn cycle_of(phi: &SkewProduct, z: &BerkPoint) -> CycleReport {
    match detect_cycle(phi, z, 8).unwrap() {
        CycleSearch::Cycle(c) => c,
        other => panic!("{other:?}"),
    }
}

fn fin(s: PuiseuxSeries) -> Classical {
    Classical::Finite(s)
}

#[test]
fn orbits() {
    let f = mk_skew(x(), ypow(2)).unwrap();
    let o = orbit(&f, &disk(PuiseuxSeries::zero(), 1, 2), 3);
    let radii: Vec<_> = o.points.iter().map(|p| p.as_disk().unwrap().1.clone()).collect();
    assert_eq!(radii, vec![ValExp::from_rat(rat(1, 2)), ValExp::from_int(1), ValExp::from_int(2), ValExp::from_int(4)]);
    assert!(o.stopped.is_none());

    let g = mk_skew(xp(3), ypow(2)).unwrap();
    let o = orbit(&g, &BerkPoint::gauss(), 4);
    assert!(o.points.iter().all(|p| *p == BerkPoint::gauss()));

    let h = mk_skew(xp(2), ypow(1)).unwrap();
    let o = orbit(&h, &BerkPoint::type_i(x()), 2);
    assert_eq!(o.points[1], BerkPoint::type_i(PuiseuxSeries::monomial(rat(1, 1), rat(1, 2))));
    assert_eq!(o.points[2], BerkPoint::type_i(PuiseuxSeries::monomial(rat(1, 1), rat(1, 4))));
}

#[test]
fn cycles() {
    let g = mk_skew(xp(3), ypow(2)).unwrap();
    let c1 = cycle_of(&g, &BerkPoint::gauss());
    assert_eq!((c1.period, c1.preperiod, c1.degree_product), (1, 0, 2));
    assert_eq!(c1.multiplier(), rat(2, 3));

    let inv = mk_skew(x(), rf(vec![c(1)], vec![c(0), c(1)])).unwrap();
    let z = disk(PuiseuxSeries::zero(), 1, 1);
    let c2 = cycle_of(&inv, &z);
    assert_eq!(c2.period, 2);
    assert_eq!(c2.points[1], disk(PuiseuxSeries::zero(), -1, 1));
    assert_eq!(c2.multiplier(), rat(1, 1));

    let sq = mk_skew(x(), ypow(2)).unwrap();
    assert_eq!(detect_cycle(&sq, &z, 10).unwrap(), CycleSearch::NotPeriodicWithin(10));
}

#[test]
fn preperiodic_orbit() {
    // under y^2, zeta(-1, 1) lands on the fixed point zeta(1, 1)
    let sq = mk_skew(x(), ypow(2)).unwrap();
    let cy = cycle_of(&sq, &disk(c(-1), 1, 1));
    assert_eq!((cy.preperiod, cy.period), (1, 1));
    assert_eq!(cy.points[0], disk(c(1), 1, 1));
    // a y-free map sends every disk to one classical point
    let k = mk_skew(x(), poly(vec![x()])).unwrap();
    let o = orbit(&k, &BerkPoint::gauss(), 2);
    assert_eq!(o.points[1..], [BerkPoint::type_i(x()), BerkPoint::type_i(x())]);
}

#[test]
fn fixed_type_i() {
    let h = mk_skew(xp(2), ypow(1)).unwrap();
    let r = classify_fixed_type_i(&h, &fin(c(1))).unwrap();
    assert_eq!(r.class, TypeIClass::Superrepelling);
    assert_eq!(r.dq, rat(1, 2));

    let two = mk_skew(x(), poly(vec![c(0), c(2)])).unwrap();
    let r = classify_fixed_type_i(&two, &fin(c(0))).unwrap();
    assert_eq!(r.class, TypeIClass::Indifferent);
    assert_eq!(r.multiplier_exp, Some(rat(0, 1)));

    let att = mk_skew(x(), poly(vec![c(0), x()])).unwrap();
    let r = classify_fixed_type_i(&att, &fin(c(0))).unwrap();
    assert_eq!(r.class, TypeIClass::Attracting);
    assert_eq!(r.multiplier_exp, Some(rat(1, 1)));

    let sup = mk_skew(x(), ypow(2)).unwrap();
    assert_eq!(classify_fixed_type_i(&sup, &fin(c(0))).unwrap().class, TypeIClass::Superattracting);
    assert_eq!(classify_fixed_type_i(&sup, &Classical::Infinity).unwrap().class, TypeIClass::Superattracting);
    assert_eq!(classify_fixed_type_i(&sup, &fin(c(2))), Err(Error::NotFixed));
}

#[test]
fn repelling_type_i() {
    let rep = mk_skew(x(), rf(vec![c(0), c(1)], vec![x()])).unwrap();
    assert_eq!(classify_repelling_type_i(&rep, &fin(c(0))).unwrap(), TypeIVerdict::Julia);
    let h = mk_skew(xp(2), ypow(1)).unwrap();
    assert_eq!(
        classify_repelling_type_i(&h, &fin(c(1))).unwrap(),
        TypeIVerdict::FatouPlausible { superrepelling: true }
    );
}

#[test]
fn hyperbolic_classes() {
    let g = mk_skew(xp(3), ypow(2)).unwrap();
    let r = classify_fixed_hyperbolic(&g, &cycle_of(&g, &BerkPoint::gauss())).unwrap();
    assert_eq!((r.class, r.numerical), (HypClass::Attracting, NumClass::NumAttracting));
    assert_eq!(r.multiplier, rat(2, 3));
    assert_eq!(r.generic, Some(rat(1, 3)));
    assert!(r.directions.iter().all(|(_, m)| *m == rat(2, 3)));

    let s = mk_skew(xp(2), ypow(3)).unwrap();
    let r = classify_fixed_hyperbolic(&s, &cycle_of(&s, &BerkPoint::gauss())).unwrap();
    assert_eq!((r.class, r.numerical), (HypClass::Saddle, NumClass::NumRepelling));
    assert_eq!(r.multiplier, rat(3, 2));
    assert_eq!(r.generic, Some(rat(1, 2)));

    let p = mk_skew(x(), ypow(2)).unwrap();
    let r = classify_fixed_hyperbolic(&p, &cycle_of(&p, &BerkPoint::gauss())).unwrap();
    assert_eq!((r.class, r.numerical), (HypClass::Repelling, NumClass::NumRepelling));
    assert_eq!(r.multiplier, rat(2, 1));

    let id = mk_skew(x(), ypow(1)).unwrap();
    let r = classify_fixed_hyperbolic(&id, &cycle_of(&id, &BerkPoint::gauss())).unwrap();
    assert_eq!((r.class, r.numerical), (HypClass::Indifferent, NumClass::NumIndifferent));
}

#[test]
fn period_two_multipliers() {
    let inv = mk_skew(x(), rf(vec![c(1)], vec![c(0), c(1)])).unwrap();
    let cy = cycle_of(&inv, &disk(PuiseuxSeries::zero(), 1, 1));
    let r = classify_fixed_hyperbolic(&inv, &cy).unwrap();
    assert_eq!(r.class, HypClass::Indifferent);
    assert!(r.directions.iter().all(|(_, m)| *m == rat(1, 1)));
}

#[test]
fn julia_fatou() {
    let s = mk_skew(xp(2), ypow(3)).unwrap();
    assert_eq!(julia_test(&s, &cycle_of(&s, &BerkPoint::gauss()), 12).unwrap(), Verdict::Julia);
    let g = mk_skew(xp(3), ypow(2)).unwrap();
    assert_eq!(julia_test(&g, &cycle_of(&g, &BerkPoint::gauss()), 12).unwrap(), Verdict::Fatou);
    let p = mk_skew(x(), ypow(2)).unwrap();
    assert_eq!(julia_test(&p, &cycle_of(&p, &BerkPoint::gauss()), 12).unwrap(), Verdict::Julia);
}

#[test]
fn julia_from_bad_direction() {
    // y^2 (y - 1 - x)/(y - 1): reduction y^2, bad direction at 1 which is
    // fixed but only of degree 1
    let num = YPoly::new(vec![c(0), c(0), &c(-1) - &x(), c(1)]);
    let bad = RationalFunc::new(num, YPoly::new(vec![c(-1), c(1)])).unwrap();
    let f = mk_skew(xp(3), bad).unwrap();
    let cy = cycle_of(&f, &BerkPoint::gauss());
    assert_eq!(cy.multiplier(), rat(2, 3));
    assert_eq!(julia_test(&f, &cy, 12).unwrap(), Verdict::Julia);
    // degree one with a periodic bad direction: every direction of a
    // bijective tangent map has full degree, so it is exceptional
    let bad = rf(vec![-x(), &c(1) + &x(), c(-1)], vec![x(), c(1)]);
    let g = mk_skew(xp(3), bad).unwrap();
    let cy = cycle_of(&g, &BerkPoint::gauss());
    assert_eq!(julia_test(&g, &cy, 12).unwrap(), Verdict::Fatou);
}

#[test]
fn julia_fatou_type_iii() {
    let f = mk_skew(xp(2), ypow(2)).unwrap();
    let z = BerkPoint::disk(&PuiseuxSeries::zero(), ValExp::theta()).unwrap();
    let cy = cycle_of(&f, &z);
    assert_eq!(cy.period, 1);
    assert_eq!(cy.multiplier(), rat(1, 1));
    assert_eq!(julia_test(&f, &cy, 12).unwrap(), Verdict::Fatou);
    let r = classify_fixed_hyperbolic(&f, &cy).unwrap();
    assert_eq!(r.class, HypClass::Indifferent);
    assert_eq!(r.generic, None);
    assert_eq!(r.directions.len(), 2);
}

#[test]
fn contraction() {
    let g = mk_skew(xp(3), ypow(2)).unwrap();
    let a = contraction_attractor(&g, &rat(1, 1000), 50).unwrap();
    assert_eq!(a, Attractor::Fixed { point: BerkPoint::gauss(), steps: 0 });
    // from zeta(0, 1/2) the radii go 1/2, 1/3, 2/9, ... toward the Gauss point
    let a = contraction_attractor_from(&g, &disk(PuiseuxSeries::zero(), 1, 2), &rat(1, 1000), 50).unwrap();
    match a {
        Attractor::Approximate { last, steps, .. } => {
            assert!(steps > 1);
            assert!(hyp_dist(&last, &BerkPoint::gauss()).unwrap() < ValExp::from_rat(rat(1, 500)));
        }
        other => panic!("{other:?}"),
    }
    let h = mk_skew(xp(4), ypow(1)).unwrap();
    assert_eq!(contraction_attractor(&h, &rat(1, 1000), 10).unwrap(), Attractor::Fixed { point: BerkPoint::gauss(), steps: 0 });
    let p = mk_skew(x(), ypow(2)).unwrap();
    assert!(matches!(contraction_attractor(&p, &rat(1, 1000), 10), Err(Error::NotContracting(_))));
}

#[test]
fn attracting_fixed_point() {
    let f = mk_skew(x(), poly(vec![x(), c(0), c(1)])).unwrap();
    let d = Disk::closed(PuiseuxSeries::zero(), ValExp::from_rat(rat(1, 2)));
    let a = attracting_type_i_from_disk(&f, &d).unwrap();
    // the Catalan numbers
    let cat = [1, 1, 2, 5, 14, 42, 132];
    for (k, n) in cat.iter().enumerate() {
        assert_eq!(a.coeff(&rat(k as i64 + 1, 1)).unwrap(), rat(*n, 1), "{a}");
    }
    let res = &(&(&a * &a) + &x()) - &a;
    assert!(res.val_at_least(&ValExp::from_rat(f.prec().clone())).unwrap());

    let k = mk_skew(x(), poly(vec![x()])).unwrap();
    assert_eq!(attracting_type_i_from_disk(&k, &d).unwrap(), x());

    let sq = mk_skew(x(), ypow(2)).unwrap();
    let d1 = Disk::closed(PuiseuxSeries::zero(), ValExp::from_int(1));
    assert_eq!(attracting_type_i_from_disk(&sq, &d1).unwrap(), PuiseuxSeries::zero());

    let low_q = mk_skew(xp(2), ypow(2)).unwrap();
    assert!(matches!(attracting_type_i_from_disk(&low_q, &d1), Err(Error::HypothesisFailed(_))));
    // the image must sit strictly inside
    let id = mk_skew(x(), ypow(1)).unwrap();
    assert!(matches!(attracting_type_i_from_disk(&id, &d1), Err(Error::HypothesisFailed(_))));
}

#[test]
fn exceptional_points() {
    let cube = mk_skew(x(), ypow(3)).unwrap();
    let e = exceptional_type_i(&cube).unwrap();
    assert_eq!(e.points, vec![fin(PuiseuxSeries::zero()), Classical::Infinity]);

    let f = mk_skew(x(), poly(vec![-x(), c(0), c(1)])).unwrap();
    assert_eq!(exceptional_type_i(&f).unwrap().points, vec![Classical::Infinity]);

    let g = mk_skew(x(), rf(vec![-x(), c(0), c(1)], vec![c(-1), c(1)])).unwrap();
    let e = exceptional_type_i(&g).unwrap();
    assert!(e.points.is_empty(), "{:?}", e.points);

    // 1/y^2 swaps 0 and infinity
    let inv = mk_skew(x(), rf(vec![c(1)], vec![c(0), c(0), c(1)])).unwrap();
    assert_eq!(exceptional_type_i(&inv).unwrap().points, vec![fin(PuiseuxSeries::zero()), Classical::Infinity]);
}

fn arb_small_map() -> impl Strategy<Value = SkewProduct> {
    (1i64..4, 1i64..4, 2usize..4, -2i64..3).prop_map(|(n, d, k, e)| {
        let phi1 = PuiseuxSeries::monomial(rat(1, 1), rat(n, d));
        let mut cs = vec![PuiseuxSeries::zero(); k + 1];
        cs[k] = PuiseuxSeries::monomial(rat(1, 1), rat(e, 1));
        cs[0] = x();
        SkewProduct::with_order(phi1, poly(cs), rat(8, 1)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn saddle_implies_repelling_and_julia(f in arb_small_map()) {
        if let Ok(CycleSearch::Cycle(cy)) = detect_cycle(&f, &BerkPoint::gauss(), 4) {
            if cy.points[0].kind() == 2 {
                let r = classify_fixed_hyperbolic(&f, &cy).unwrap();
                if r.class == HypClass::Saddle {
                    prop_assert_eq!(r.numerical, NumClass::NumRepelling);
                    prop_assert_eq!(julia_test(&f, &cy, 12).unwrap(), Verdict::Julia);
                }
                // multiplier is the product of local degrees times q^n
                let d: usize = cy.points.iter().map(|p| f.local_degree(p).unwrap()).product();
                prop_assert_eq!(r.multiplier, Rat::from_integer(d.into()) * &cy.q_power);
            }
        }
    }

    #[test]
    fn monomial_type_iii_cycles_are_neutral(k in 2usize..5) {
        // (x^k, y^k) fixes zeta(0, theta) with D * Q = 1
        let f = mk_skew(PuiseuxSeries::monomial(rat(1, 1), rat(k as i64, 1)), ypow(k)).unwrap();
        let z = BerkPoint::disk(&PuiseuxSeries::zero(), ValExp::theta()).unwrap();
        let cy = cycle_of(&f, &z);
        prop_assert_eq!(cy.multiplier(), rat(1, 1));
    }

    #[test]
    fn attracting_residual(a in -3i64..4, b in 1i64..4) {
        // phi2 = a x + x^b y^2 on the closed unit-ish disk D(0, 1)
        let f = SkewProduct::with_order(
            x(),
            poly(vec![PuiseuxSeries::monomial(rat(a, 1), rat(1, 1)), c(0), PuiseuxSeries::monomial(rat(1, 1), rat(b, 1))]),
            rat(10, 1),
        ).unwrap();
        let d = Disk::closed(PuiseuxSeries::zero(), ValExp::from_rat(rat(1, 2)));
        let p = attracting_type_i_from_disk(&f, &d).unwrap();
        let img = f.apply_type_i(&fin(p.clone())).unwrap();
        let r = img.finite().unwrap() - &p;
        prop_assert!(r.val_at_least(&ValExp::from_rat(rat(10, 1))).unwrap());
    }

    #[test]
    fn contraction_converges_to_fixed_point(n in 3i64..6, start in 1i64..4) {
        let f = mk_skew(xp(n), ypow(2)).unwrap();
        let z = disk(PuiseuxSeries::zero(), 1, start + 1);
        match contraction_attractor_from(&f, &z, &rat(1, 10000), 200).unwrap() {
            Attractor::Fixed { point, .. } => prop_assert_eq!(point, BerkPoint::gauss()),
            Attractor::Approximate { last, .. } => {
                let next = f.apply_point(&last).unwrap();
                prop_assert!(hyp_dist(&last, &next).unwrap() < ValExp::from_rat(rat(1, 10000)));
            }
        }
    }
}
