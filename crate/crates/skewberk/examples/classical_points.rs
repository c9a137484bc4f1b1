//! Classical (Type I) fixed points: their classes, the attracting fixed
//! point inside a disk mapped into itself, and exceptional points.

use skewberk::dynclass::{attracting_type_i_from_disk, classify_fixed_type_i, classify_repelling_type_i, exceptional_type_i};
use skewberk::ratcalc::Disk;
use skewberk::shell::{parse_expr, parse_series};
use skewberk::skewmap::mk_skew;
use skewberk::valcore::{rat, Classical, ValExp};

fn main() -> skewberk::Result<()> {
    for (p1, p2, a) in [("x^2", "y", "1"), ("x", "2*y", "0"), ("x", "x*y", "0"), ("x", "y/x", "0"), ("x", "y^2", "0")] {
        let phi = mk_skew(parse_series(p1)?, parse_expr(p2)?)?;
        let a = Classical::Finite(parse_series(a)?);
        let r = classify_fixed_type_i(&phi, &a)?;
        println!("({p1}, {p2}) at {a}: {:?}, dq = {}, Julia test: {}", r.class, r.dq, classify_repelling_type_i(&phi, &a)?);
    }

    // y = y^2 + x has the Catalan generating function as its small root
    let phi = mk_skew(parse_series("x")?, parse_expr("y^2 + x")?)?;
    let d = Disk::closed(parse_series("0")?, ValExp::from_rat(rat(1, 2)));
    println!("attracting fixed point in D(0, 1/2): {}", attracting_type_i_from_disk(&phi, &d)?);

    for p2 in ["y^3", "y^2 - x", "(y^2 - x)/(y - 1)", "1/y^2"] {
        let phi = mk_skew(parse_series("x")?, parse_expr(p2)?)?;
        let e = exceptional_type_i(&phi)?;
        println!("exceptional points of {p2}: {:?}", e.points.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    }
    Ok(())
}
