//! When rdeg * q < 1 the map contracts the hyperbolic metric and every
//! orbit converges to one attracting point.

use skewberk::dynclass::{contraction_attractor, contraction_attractor_from, Attractor};
use skewberk::shell::{parse_expr, parse_point, parse_series};
use skewberk::skewmap::mk_skew;
use skewberk::valcore::rat;

fn main() -> skewberk::Result<()> {
    let tol = rat(1, 1000);
    for (p1, p2) in [("x^3", "y^2"), ("x^4", "y"), ("x^5", "y^2 + x^(-1)"), ("x", "y^2")] {
        let phi = mk_skew(parse_series(p1)?, parse_expr(p2)?)?;
        match contraction_attractor(&phi, &tol, 100) {
            Ok(a) => println!("({p1}, {p2}): {a}"),
            Err(e) => println!("({p1}, {p2}): {e}"),
        }
    }
    let phi = mk_skew(parse_series("x^3")?, parse_expr("y^2")?)?;
    if let Attractor::Approximate { last, steps, .. } =
        contraction_attractor_from(&phi, &parse_point("zeta(0, 1/2)")?, &tol, 100)?
    {
        println!("from zeta(0, 1/2): within {tol} of the limit after {steps} steps, at {last}");
    }
    Ok(())
}
