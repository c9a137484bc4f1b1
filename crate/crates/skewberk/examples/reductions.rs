//! Reductions at Type II points, bad directions and the good reduction
//! test.

use skewberk::shell::{parse_expr, parse_point, parse_series};
use skewberk::skewmap::mk_skew;

fn main() -> skewberk::Result<()> {
    let maps = [
        ("x", "x*y^2 + y - 1"),
        ("x", "(y - x)/y"),
        ("x^3", "(y - x)*(1 - y)/(y + x)"),
        ("x", "(x*y^2 + y)/(x*y + 1)"),
        ("x", "y^2"),
    ];
    for (p1, p2) in maps {
        let phi = mk_skew(parse_series(p1)?, parse_expr(p2)?)?;
        let g = parse_point("gauss")?;
        let bad = phi.bad_directions(&g)?;
        println!("({p1}, {p2})");
        println!("  reduction at the Gauss point: {}", phi.reduction_at(&g)?);
        println!("  image reduction: {}", phi.image_reduction(&g)?);
        println!("  bad directions: {:?}", bad.directions.iter().map(|d| d.to_string()).collect::<Vec<_>>());
        println!("  explicit good reduction: {}", phi.good_reduction_test()?);
    }
    let phi = mk_skew(parse_series("x")?, parse_expr("y^2 + x*y")?)?;
    let z = parse_point("zeta(1, 1)")?;
    println!("y^2 + x*y at {z}: reduction {}", phi.reduction_at(&z)?);
    Ok(())
}
