//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use rand::Rng;
use skewberk::berktree::{hyp_dist, BerkPoint, Direction};
use skewberk::dynclass::{
    classify_fixed_hyperbolic, classify_fixed_type_i, contraction_attractor, detect_cycle, julia_test,
    attracting_type_i_from_disk, tangent_preimages, Attractor, CycleSearch, HypClass, TypeIClass, Verdict,
};
use skewberk::ratcalc::{
    count_zeros_poles, gauss_norm, image_of_disk, newton_puiseux_roots, rf_eval, Disk, YPoly,
};
use skewberk::shell::{parse_expr, parse_point, parse_series, parse_spec, render_map};
use skewberk::skewmap::{mk_skew, SkewProduct};
use skewberk::valcore::{rat, Classical, PuiseuxSeries, Rat, ValExp};

type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn v(r: Rat) -> ValExp {
    ValExp::from_rat(r)
}

fn x() -> PuiseuxSeries {
    PuiseuxSeries::x()
}

fn gauss() -> BerkPoint {
    BerkPoint::gauss()
}

fn skew(p1: &str, p2: &str) -> SkewProduct {
    mk_skew(parse_series(p1).unwrap(), parse_expr(p2).unwrap()).unwrap()
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let t = Instant::now();
    f()?;
    let el = t.elapsed();
    ensure!(el < limit, "took {el:?}, limit {limit:?}");
    Ok(())
}

fn gauss_norm_algebra() -> Check {
    timed(Duration::from_secs(10), || {
        let mut r = rng(1);
        let pts: Vec<BerkPoint> = (0..20).map(|_| disk_point(&mut r)).collect();
        for i in 0..100 {
            let f = rational(&mut r, 4);
            let g = rational(&mut r, 4);
            let fg = f.mul(&g);
            let s = f.add(&g);
            let p = &pts[i % pts.len()];
            let (a, rho) = p.as_disk().unwrap();
            let nf = ok(gauss_norm(&f, a, rho), "norm f")?;
            let ng = ok(gauss_norm(&g, a, rho), "norm g")?;
            let nfg = ok(gauss_norm(&fg, a, rho), "norm fg")?;
            ensure!(nfg == &nf + &ng, "multiplicativity fails for {f} and {g} at {p}");
            if !s.is_zero() {
                let ns = ok(gauss_norm(&s, a, rho), "norm f+g")?;
                ensure!(ns >= nf.clone().min(ng.clone()), "ultrametric inequality fails for {f} and {g} at {p}");
            }
        }
        Ok(())
    })
}

fn disk_image_brute_force() -> Check {
    timed(Duration::from_secs(30), || {
        let mut r = rng(2);
        let mut done = 0;
        while done < 50 {
            let f = if r.gen_bool(0.5) { polynomial(&mut r, 4) } else { rational(&mut r, 3) };
            let a = if r.gen_bool(0.3) { PuiseuxSeries::zero() } else { series(&mut r, 0, 3) };
            let rho = exponent(&mut r, -1, 2);
            let (_, poles) = ok(count_zeros_poles(&f, &a, &v(rho.clone()), true), "count")?;
            if poles > 0 {
                continue;
            }
            let im = ok(image_of_disk(&f, &Disk::closed(a.clone(), v(rho.clone())), &rat(40, 1)), "image")?;
            // enough precision to see the claimed radius exactly: a smaller
            // true radius shows up as an exact sample, a larger one as none
            let prec = im.disk.radius.as_rat().ok_or("irrational image radius")? + rat(2, 1);
            let fa = ok(rf_eval(&f, &Classical::Finite(a.clone()), &prec), "f(a)")?;
            let fa = fa.finite().ok_or("f(a) is infinite")?.clone();
            let mut least: Option<Rat> = None;
            for _ in 0..200 {
                let mut b = &a + &PuiseuxSeries::monomial(small_rat(&mut r), rho.clone());
                if r.gen_bool(0.5) {
                    b = &b + &PuiseuxSeries::monomial(small_rat(&mut r), &rho + &exponent(&mut r, 0, 2));
                }
                let fb = ok(rf_eval(&f, &Classical::Finite(b), &prec), "f(b)")?;
                let d = fb.finite().ok_or("f(b) is infinite")? - &fa;
                let Ok(Some(val)) = d.valuation() else { continue };
                if least.as_ref().is_none_or(|l| &val < l) {
                    least = Some(val);
                }
            }
            let least = least.ok_or_else(|| format!("{f} on D({a}, {rho}): no sample below {prec}, claimed {}", im.disk.radius))?;
            ensure!(
                im.disk.radius == v(least.clone()),
                "{f} on D({a}, {rho}): formula gives {}, samples give {least}",
                im.disk.radius
            );
            done += 1;
        }
        Ok(())
    })
}

fn worked_examples() -> Check {
    let g = gauss();
    // (x^3, y^2)
    let phi = skew("x^3", "y^2");
    ensure!(phi.q() == &rat(1, 3), "q = {}", phi.q());
    ensure!(ok(phi.apply_point(&g), "apply")? == g, "Gauss point not fixed");
    ensure!(ok(phi.local_degree(&g), "degree")? == 2, "local degree");
    let CycleSearch::Cycle(c) = ok(detect_cycle(&phi, &g, 4), "cycle")? else { return Err("no cycle".into()) };
    ensure!(c.multiplier() == rat(2, 3), "multiplier {}", c.multiplier());
    let h = ok(classify_fixed_hyperbolic(&phi, &c), "classify")?;
    ensure!(h.class == HypClass::Attracting, "class {:?}", h.class);
    ensure!(ok(julia_test(&phi, &c, 8), "julia")? == Verdict::Fatou, "not Fatou");
    match ok(contraction_attractor(&phi, &rat(1, 1000), 50), "attractor")? {
        Attractor::Fixed { point, .. } if point == g => {}
        other => return Err(format!("attractor {other}")),
    }

    // (x^2, y^3)
    let phi = skew("x^2", "y^3");
    let CycleSearch::Cycle(c) = ok(detect_cycle(&phi, &g, 4), "cycle")? else { return Err("no cycle".into()) };
    let h = ok(classify_fixed_hyperbolic(&phi, &c), "classify")?;
    ensure!(h.class == HypClass::Saddle, "class {:?}", h.class);
    let zero = ok(Direction::residue(g.clone(), &PuiseuxSeries::zero()), "direction")?;
    for d in [zero, Direction::outward(g.clone())] {
        let m = h.directions.iter().find(|(e, _)| *e == d).map(|(_, m)| m.clone());
        ensure!(m == Some(rat(3, 2)), "multiplier at {d}: {m:?}");
    }
    ensure!(h.generic == Some(rat(1, 2)), "generic multiplier {:?}", h.generic);
    ensure!(ok(julia_test(&phi, &c, 8), "julia")? == Verdict::Julia, "not Julia");

    // (x^2, y) at 1
    let phi = skew("x^2", "y");
    let t = ok(classify_fixed_type_i(&phi, &Classical::Finite(PuiseuxSeries::one())), "type I")?;
    ensure!(t.class == TypeIClass::Superrepelling, "class {:?}", t.class);

    // (2x, 4y) fixes c x^2
    let phi = skew("2*x", "4*y");
    for c in [1, 3, 5] {
        let a = Classical::Finite(PuiseuxSeries::monomial(rat(c, 1), rat(2, 1)));
        ensure!(ok(phi.apply_type_i(&a), "apply")? == a, "{c}x^2 not fixed");
    }

    // reductions at the Gauss point
    for (p2, want) in [("x*y^2 + y - 1", "y - 1"), ("(y - x)/y", "1")] {
        let red = ok(skew("x", p2).reduction_at(&g), "reduction")?.to_string();
        ensure!(red == want, "reduction of {p2} is {red}");
    }
    Ok(())
}

fn interval_stretch() -> Check {
    let mut r = rng(4);
    for (p1, ratio) in [("x", rat(2, 1)), ("x^2", rat(1, 1))] {
        let phi = skew(p1, "y^2");
        for _ in 0..20 {
            // radii in [1, 2], some irrational
            let mut radius = || {
                if r.gen_bool(0.3) {
                    ValExp::new(rat(r.gen_range(0..=4), 10), rat(r.gen_range(8..=10), 10))
                } else {
                    v(rat(r.gen_range(10..=20), 10))
                }
            };
            let a = BerkPoint::disk(&PuiseuxSeries::zero(), radius()).unwrap();
            let b = BerkPoint::disk(&PuiseuxSeries::zero(), radius()).unwrap();
            let d = ok(hyp_dist(&a, &b), "dist")?;
            let fa = ok(phi.apply_point(&a), "apply")?;
            let fb = ok(phi.apply_point(&b), "apply")?;
            let fd = ok(hyp_dist(&fa, &fb), "dist")?;
            ensure!(fd == d.scale(&ratio), "({p1}, y^2): {a}, {b} at {d} map to distance {fd}");
        }
    }
    Ok(())
}

fn degree_sum_and_semicontinuity() -> Check {
    let mut r = rng(5);
    let g = gauss();
    let mut maps = 0;
    let mut tries = 0;
    'maps: while maps < 20 {
        tries += 1;
        ensure!(tries < 400, "only {maps} resolvable maps in {tries} tries");
        let p2 = rational(&mut r, 3);
        let Ok(phi) = mk_skew(phi1(&mut r), p2) else { continue };
        let Ok(deg) = phi.local_degree(&g) else { continue };
        let Ok(img) = phi.apply_point(&g) else { continue };
        // directions at the Gauss point we know about, and their images
        let mut probes = vec![Direction::outward(g.clone())];
        for b in -3..=3 {
            probes.push(Direction::residue(g.clone(), &PuiseuxSeries::from_int(b)).unwrap());
        }
        let mut targets = vec![Direction::outward(img.clone())];
        let mut images = Vec::new();
        for p in &probes {
            let Ok(w) = phi.tangent_map(p) else { continue 'maps };
            images.push(w.clone());
            targets.push(w);
        }
        let (ia, _) = img.as_disk().unwrap();
        for b in -3..=3 {
            let c = ia + &PuiseuxSeries::monomial(rat(b, 1), img.as_disk().unwrap().1.as_rat().cloned().unwrap_or(rat(0, 1)));
            if let Ok(w) = Direction::residue(img.clone(), &c) {
                targets.push(w);
            }
        }
        let mut checks = Vec::new();
        for w in &targets {
            let Ok((pre, unresolved)) = tangent_preimages(&phi, &g, w) else { continue 'maps };
            if unresolved > 0 {
                continue 'maps;
            }
            checks.push((w.clone(), pre));
        }
        for (w, pre) in checks {
            let mut sum = 0;
            for p in &pre {
                ensure!(ok(phi.tangent_map(p), "tangent")? == w, "{p} does not map to {w}");
                sum += ok(phi.directional_degree(p), "directional degree")?;
            }
            for (p, im) in probes.iter().zip(&images) {
                ensure!(*im != w || pre.contains(p), "preimage {p} of {w} missed");
            }
            ensure!(sum == deg, "degrees over {w} sum to {sum}, local degree {deg} for {}", render_map(&phi));
        }

        // semicontinuity along [Gauss, zeta(c, rho)]
        let c = PuiseuxSeries::from_int(r.gen_range(-2..=2));
        let top = rat(r.gen_range(1..=3), 1);
        for _ in 0..30 {
            let t = if r.gen_bool(0.3) {
                ValExp::new(rat(r.gen_range(0..=10), 10), rat(r.gen_range(1..=7), 10))
            } else {
                v(&top * rat(r.gen_range(1..=99), 100))
            };
            let xi = BerkPoint::disk(&c, t).unwrap();
            let here = ok(phi.local_degree(&xi), "local degree")?;
            for d in [Direction::outward(xi.clone()), Direction::residue(xi.clone(), &c).unwrap()] {
                let dd = ok(phi.directional_degree(&d), "directional degree")?;
                ensure!(here >= dd, "local degree {here} at {xi} below {dd} in {d}");
            }
        }
        maps += 1;
    }
    Ok(())
}

fn newton_puiseux() -> Check {
    let order = rat(6, 1);
    let six = v(order.clone());
    let check = |p: &YPoly, expect: Option<&[PuiseuxSeries]>| -> Check {
        let roots = ok(newton_puiseux_roots(p, &order), "roots")?;
        ensure!(roots.unresolved.is_empty(), "unresolved roots of {p:?}");
        ensure!(roots.count() == p.degree().unwrap(), "root count for {p:?}");
        for rt in &roots.roots {
            let res = p.eval(&rt.root, Some(&rat(12, 1)));
            ensure!(ok(res.val_at_least(&six), "residual")?, "residual of {} too large", rt.root);
        }
        if let Some(expect) = expect {
            for e in expect {
                let hit = roots.roots.iter().any(|rt| (&rt.root - e).val_at_least(&six).unwrap_or(false));
                ensure!(hit, "root {e} missing");
            }
        }
        Ok(())
    };
    check(&parse_expr("y^2 - x - x^2").unwrap().num().clone(), None)?;
    // over Q only the root x^(2/3) exists; its conjugates need cube roots
    // of unity and must be reported, not approximated
    let cube = ok(newton_puiseux_roots(parse_expr("y^3 - x^2").unwrap().num(), &order), "roots")?;
    let root = PuiseuxSeries::monomial(rat(1, 1), rat(2, 3));
    ensure!(
        cube.roots.len() == 1 && cube.roots[0].root == root && cube.roots[0].multiplicity == 1,
        "roots of y^3 - x^2: {:?}",
        cube.roots
    );
    ensure!(cube.unresolved.iter().map(|u| u.degree).sum::<usize>() == 2, "conjugate roots not flagged");

    let mut r = rng(6);
    for _ in 0..10 {
        let n = r.gen_range(2..=3);
        let rts: Vec<PuiseuxSeries> = (0..n).map(|_| series(&mut r, 0, 4)).collect();
        let p = rts.iter().fold(YPoly::one(), |acc, s| acc.mul(&YPoly::linear(s)));
        check(&p, Some(&rts))?;
    }

    let flagged = ok(newton_puiseux_roots(parse_expr("y^2 - 2*x").unwrap().num(), &order), "roots")?;
    ensure!(flagged.roots.is_empty() && !flagged.unresolved.is_empty(), "y^2 - 2x was not flagged");
    Ok(())
}

fn type_iii_indifferent() -> Check {
    let phi = skew("x^2", "y^2");
    let z = ok(parse_point("zeta(0, theta)"), "point")?;
    ensure!(ok(phi.apply_point(&z), "apply")? == z, "not fixed");
    let CycleSearch::Cycle(c) = ok(detect_cycle(&phi, &z, 3), "cycle")? else { return Err("no cycle".into()) };
    ensure!(c.period == 1 && c.multiplier() == rat(1, 1), "multiplier {}", c.multiplier());
    let h = ok(classify_fixed_hyperbolic(&phi, &c), "classify")?;
    ensure!(h.class == HypClass::Indifferent, "class {:?}", h.class);
    Ok(())
}

fn catalan_fixed_point() -> Check {
    let phi = skew("x", "y^2 + x");
    let s = ok(attracting_type_i_from_disk(&phi, &Disk::closed(PuiseuxSeries::zero(), v(rat(1, 2)))), "attractor")?;
    // iterate y <- y^2 + x on truncated series
    let cap = rat(7, 1);
    let mut y = PuiseuxSeries::zero();
    for _ in 0..8 {
        y = &y.mul_capped(&y, Some(&cap)) + &x();
    }
    for (k, cat) in [(1, 1), (2, 1), (3, 2), (4, 5), (5, 14)] {
        let e = rat(k, 1);
        let got = ok(s.coeff(&e), "coeff")?;
        ensure!(got == ok(y.coeff(&e), "oracle")?, "x^{k}: {got} disagrees with iteration");
        ensure!(got == rat(cat, 1), "x^{k}: {got}, expected {cat}");
    }
    let img = ok(rf_eval(phi.phi2(), &Classical::Finite(s.clone()), phi.prec()), "eval")?;
    let res = img.finite().ok_or("infinite image")? - &s;
    ensure!(ok(res.val_at_least(&v(phi.prec().clone())), "residual")?, "residual {res}");
    Ok(())
}

fn phi1_scaling() -> Check {
    let phi = skew("x^2", "y");
    let mut r = rng(9);
    for _ in 0..20 {
        let a = disk_point(&mut r);
        let b = disk_point(&mut r);
        let d = ok(hyp_dist(&a, &b), "dist")?;
        let fd = ok(hyp_dist(&ok(phi.apply_point(&a), "apply")?, &ok(phi.apply_point(&b), "apply")?), "dist")?;
        ensure!(fd == d.scale(&rat(1, 2)), "{a}, {b}: {d} became {fd}");
    }
    Ok(())
}

fn cli_and_parser() -> Check {
    let mut r = rng(10);
    for _ in 0..200 {
        let p2 = rational(&mut r, 3);
        let f = ok(SkewProduct::with_order(phi1(&mut r), p2, rat(6, 1)), "map")?;
        let text = render_map(&f);
        let (_, g) = ok(parse_spec(&text), "reparse")?;
        ensure!(g.phi1() == f.phi1() && g.phi2() == f.phi2(), "round trip changed {text}");
        ensure!(render_map(&g) == text, "rendering unstable for {text}");
    }
    for _ in 0..200 {
        let p = disk_point(&mut r);
        ensure!(ok(parse_point(&p.to_string()), "point")? == p, "point {p} did not round trip");
    }

    let dir = std::env::temp_dir().join(format!("skewberk-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let spec = |name: &str, text: &str| {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    };
    let saddle = spec("saddle.spec", "phi1 = x^2; phi2 = y^3;\n");
    let superrep = spec("superrep.spec", "phi1 = x^2; phi2 = y;\n");
    let cases: [(Vec<&str>, &str); 3] = [
        (vec!["--map", &saddle, "julia-test", "--point", "zeta(0,0)"], r#""verdict":"julia","multiplier":"3/2""#),
        (vec!["dist", "--p1", "zeta(0,1)", "--p2", "zeta(0,3)"], r#""distance":"2""#),
        (vec!["--map", &superrep, "classify", "--point", "typeI(1)"], r#""class":"superrepelling","dq":"1/2""#),
    ];
    for (args, want) in cases {
        let out = Command::new(env!("CARGO_BIN_EXE_skewberk")).args(&args).output().map_err(|e| e.to_string())?;
        let stdout = String::from_utf8_lossy(&out.stdout);
        ensure!(out.status.code() == Some(0), "{args:?} exited with {:?}: {stdout}", out.status.code());
        ensure!(stdout.starts_with(r#"{"status":"ok","#), "{args:?}: {stdout}");
        ensure!(stdout.contains(want), "{args:?}: {stdout} lacks {want}");
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("gauss norm algebra", gauss_norm_algebra),
        ("disk images against sampling", disk_image_brute_force),
        ("worked examples", worked_examples),
        ("interval stretch", interval_stretch),
        ("degree sum and semicontinuity", degree_sum_and_semicontinuity),
        ("newton-puiseux", newton_puiseux),
        ("type III multiplier", type_iii_indifferent),
        ("catalan fixed point", catalan_fixed_point),
        ("phi1 distance scaling", phi1_scaling),
        ("parser round trip and cli", cli_and_parser),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(r) => r,
            Err(p) => Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into())),
        };
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {e}", i + 1)
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
