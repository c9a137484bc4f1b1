//! Cycles of hyperbolic points, their multipliers and classes, and the
//! Julia/Fatou verdict.

use skewberk::dynclass::{classify_fixed_hyperbolic, detect_cycle, julia_test, CycleSearch, DIRECTION_SEARCH_BOUND};
use skewberk::shell::{parse_expr, parse_point, parse_series};
use skewberk::skewmap::mk_skew;

fn main() -> skewberk::Result<()> {
    let cases = [
        ("x^3", "y^2", "gauss"),
        ("x^2", "y^3", "gauss"),
        ("x", "y^2", "gauss"),
        ("x", "1/y", "zeta(0, 1)"),
        ("x^2", "y^2", "zeta(0, theta)"),
        ("x^3", "y^2*(y - 1 - x)/(y - 1)", "gauss"),
    ];
    for (p1, p2, start) in cases {
        let phi = mk_skew(parse_series(p1)?, parse_expr(p2)?)?;
        let z = parse_point(start)?;
        let cycle = match detect_cycle(&phi, &z, 16)? {
            CycleSearch::Cycle(c) => c,
            CycleSearch::NotPeriodicWithin(n) => {
                println!("({p1}, {p2}) from {z}: no cycle within {n} steps");
                continue;
            }
        };
        let class = classify_fixed_hyperbolic(&phi, &cycle)?;
        let verdict = julia_test(&phi, &cycle, DIRECTION_SEARCH_BOUND)?;
        println!(
            "({p1}, {p2}) from {z}: period {}, multiplier {}, {:?}/{:?}, {verdict}",
            cycle.period, class.multiplier, class.class, class.numerical
        );
        for (d, m) in &class.directions {
            println!("    {d}: {m}");
        }
        if let Some(m) = class.generic {
            println!("    generic: {m}");
        }
    }

    let sq = mk_skew(parse_series("x")?, parse_expr("y^2")?)?;
    let o = skewberk::dynclass::orbit(&sq, &parse_point("zeta(0, 1/2)")?, 4);
    println!("orbit: {}", o.points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" -> "));
    Ok(())
}
