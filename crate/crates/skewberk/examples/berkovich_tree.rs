//! Points of the Berkovich line: order, joins, diameters, hyperbolic
//! distance, tangent directions and a DOT rendering of a finite subtree.

use skewberk::berktree::{hyp_dist, Direction};
use skewberk::shell::{emit_dot, parse_point};

fn main() -> skewberk::Result<()> {
    let a = parse_point("zeta(0, 2)")?;
    let b = parse_point("zeta(x, 2)")?;
    let c = parse_point("typeI(1 + x)")?;
    let j = a.join(&b)?;
    println!("join({a}, {b}) = {j}");
    println!("join({a}, {c}) = {}", a.join(&c)?);
    println!("{a} below {j}: {}", a.leq(&j)?);
    println!("d({a}, {b}) = {}", hyp_dist(&a, &b)?);
    match a.diam()? {
        Some(d) => println!("diam {a} = {d}"),
        None => println!("diam {a} is infinite"),
    }

    let t = parse_point("zeta(0, theta)")?;
    println!("{t} is Type {} with directions {}", t.kind(), Direction::all_at_type_iii(&t)?.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" and "));

    let g = parse_point("gauss")?;
    println!("from the Gauss point, {c} lies in {}", g.direction_at(&c)?);
    println!("from the Gauss point, {a} lies in {}", g.direction_at(&a)?);

    let iv = parse_point("typeIV(zeta(0, 1), zeta(x, 3/2), zeta(x + x^(3/2), 7/4))")?;
    if let Some(d) = iv.diam_bound() {
        println!("Type IV prefix {iv} has diameter at least {d}");
    }

    print!("{}", emit_dot(&[a, b, c, g])?);
    Ok(())
}
