//! Exact Puiseux series: arithmetic, fractional powers, inverses and
//! composition, with truncation tracked as an explicit O-term.

use skewberk::shell::parse_series;
use skewberk::valcore::{rat, PuiseuxSeries, ValExp};

fn main() -> skewberk::Result<()> {
    let prec = rat(8, 1);
    let a = parse_series("1 + x^(1/2)")?;
    let b = parse_series("x - 2*x^(3/2)")?;
    println!("a = {a}");
    println!("b = {b}");
    println!("a * b = {}", &a * &b);
    println!("1/a   = {}", a.inv(&prec)?);
    println!("sqrt(1 + x) = {}", parse_series("1 + x")?.pow_rat(&rat(1, 2), &prec)?);

    // substitute x -> x^2 + x^3 into a
    let g = parse_series("x^2 + x^3")?;
    println!("a(x^2 + x^3) = {}", a.compose(&g, &prec)?);

    // valuations know what is certain
    let t = parse_series("x^3 + O(x^(5))")?;
    println!("val({t}) = {:?}", t.val_bound());
    let z = PuiseuxSeries::big_o(rat(5, 1));
    println!("val({z}) >= 4? {}", z.val_at_least(&ValExp::from_int(4))?);
    match z.val_at_least(&ValExp::from_int(6)) {
        Ok(v) => println!("val({z}) >= 6? {v}"),
        Err(e) => println!("val({z}) >= 6? {e}"),
    }
    Ok(())
}
