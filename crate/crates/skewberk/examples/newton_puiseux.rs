//! Roots of polynomials over the Puiseux field: the Newton polygon gives
//! root valuations, the Newton-Puiseux walk expands the roots themselves.

use skewberk::ratcalc::{newton_polygon, newton_puiseux_roots};
use skewberk::shell::parse_expr;
use skewberk::valcore::rat;

fn main() -> skewberk::Result<()> {
    for src in ["y^2 - x - x^2", "y^3 - x^2", "(y - 1)^2*(y - x)", "y^2 - 2*x"] {
        let p = parse_expr(src)?.num().clone();
        let poly = newton_polygon(&p)?;
        println!("{src}");
        println!("  root valuations: {:?}", poly.root_valuations().iter().map(|(v, m)| format!("{v} (x{m})")).collect::<Vec<_>>());
        let roots = newton_puiseux_roots(&p, &rat(6, 1))?;
        for r in &roots.roots {
            println!("  root {} (multiplicity {})", r.root, r.multiplicity);
        }
        for u in &roots.unresolved {
            // y^2 = 2x needs sqrt(2): flagged, never approximated
            println!("  unresolved: {} more root(s) after {} at valuation {}", u.degree, u.prefix, u.valuation);
        }
    }
    Ok(())
}
