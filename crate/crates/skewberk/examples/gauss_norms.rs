//! Evaluation, Taylor expansion and Gauss norms at disk points.

use skewberk::ratcalc::{gauss_norm, rf_eval, taylor_expand};
use skewberk::shell::{parse_expr, parse_series};
use skewberk::valcore::{default_order, Classical, ValExp};

fn main() -> skewberk::Result<()> {
    let prec = default_order();
    let f = parse_expr("(y^2 - x)/(y - 1)")?;
    let a = parse_series("x")?;
    println!("f(x)   = {}", rf_eval(&f, &Classical::Finite(a.clone()), &prec)?);
    println!("f(oo)  = {}", rf_eval(&f, &Classical::Infinity, &prec)?);
    let t = taylor_expand(&f, &a, 4, &prec)?;
    for (k, c) in t.iter().enumerate() {
        println!("  coefficient {k} at y = x: {c}");
    }

    // the Gauss norm is multiplicative
    let g = parse_expr("x*y + 1")?;
    let fg = f.mul(&g);
    for (c, r) in [("0", 0), ("1", 1), ("x", 2)] {
        let c = parse_series(c)?;
        let rho = ValExp::from_int(r);
        let (nf, ng, nfg) = (gauss_norm(&f, &c, &rho)?, gauss_norm(&g, &c, &rho)?, gauss_norm(&fg, &c, &rho)?);
        println!("zeta({c}, {r}): |f| = {nf}, |g| = {ng}, |fg| = {nfg}");
    }
    let rho = ValExp::theta();
    println!("at zeta(0, {rho}): |x*y + 1| = {}", gauss_norm(&g, &parse_series("0")?, &rho)?);
    Ok(())
}
