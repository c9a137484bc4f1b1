//! A skew product acting on points: images, local and directional degrees,
//! tangent maps and the stretching of intervals.

use skewberk::berktree::{hyp_dist, BerkPoint, Direction};
use skewberk::shell::{parse_expr, parse_point, parse_series};
use skewberk::skewmap::mk_skew;

fn main() -> skewberk::Result<()> {
    let phi = mk_skew(parse_series("x^2")?, parse_expr("y^3 + x*y")?)?;
    println!("q = {}, rdeg = {}", phi.q(), phi.rdeg());
    for p in ["gauss", "zeta(0, 1/2)", "zeta(1, 1)", "zeta(0, theta)", "typeI(x)"] {
        let z = parse_point(p)?;
        println!("{z} -> {} (local degree {})", phi.apply_point(&z)?, phi.local_degree(&z)?);
    }

    let g = BerkPoint::gauss();
    for v in [Direction::residue(g.clone(), &parse_series("0")?)?, Direction::outward(g.clone())] {
        println!("tangent map at the Gauss point: {v} -> {} (degree {})", phi.tangent_map(&v)?, phi.directional_degree(&v)?);
    }

    // on a segment inside one direction, distances stretch by degree * q
    let sq = mk_skew(parse_series("x")?, parse_expr("y^2")?)?;
    let (u, w) = (parse_point("zeta(0, 3/2)")?, parse_point("zeta(0, 5/2)")?);
    let before = hyp_dist(&u, &w)?;
    let after = hyp_dist(&sq.apply_point(&u)?, &sq.apply_point(&w)?)?;
    println!("(x, y^2) stretches d = {before} to {after}");
    let rot = mk_skew(parse_series("x^2")?, parse_expr("y^2")?)?;
    let after = hyp_dist(&rot.apply_point(&u)?, &rot.apply_point(&w)?)?;
    println!("(x^2, y^2) keeps d = {before} as {after}");
    Ok(())
}
