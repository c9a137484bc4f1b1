//! Images of disks and annuli under rational functions of `y`, together
//! with the zero/pole counts and Weierstrass degrees behind them.

use skewberk::ratcalc::{count_zeros_poles, image_of_annulus, image_of_disk, wdeg, Disk, Side};
use skewberk::shell::{parse_expr, parse_series};
use skewberk::valcore::{default_order, rat, ValExp};

fn main() -> skewberk::Result<()> {
    let prec = default_order();
    let f = parse_expr("y^2 + x*y")?;
    let zero = parse_series("0")?;
    for r in [rat(1, 2), rat(1, 1), rat(2, 1)] {
        let rho = ValExp::from_rat(r.clone());
        let (z, p) = count_zeros_poles(&f, &zero, &rho, true)?;
        let im = image_of_disk(&f, &Disk::closed(zero.clone(), rho.clone()), &prec)?;
        println!(
            "D(0, {r}): {z} zeros, {p} poles, inner wdeg {}, image D({}, {}) of degree {}",
            wdeg(&f, &zero, &rho, Side::Inner)?,
            im.disk.center,
            im.disk.radius,
            im.degree
        );
    }

    // disks containing a pole map onto everything
    let g = parse_expr("1/(y - x)")?;
    let d = Disk::closed(zero.clone(), ValExp::from_int(1));
    if let Err(e) = image_of_disk(&g, &d, &prec) {
        println!("1/(y - x) on D(0, 1): {e}");
    }
    let im = image_of_disk(&g, &d.complement(), &prec)?;
    println!("1/(y - x) off D(0, 1): center {}, radius {}", im.disk.center, im.disk.radius);

    // y + 1/y on the annulus 0 < v < 1 is one-to-one onto an annulus
    let h = parse_expr("y + 1/y")?;
    let a = image_of_annulus(&h, &zero, &ValExp::from_int(0), &ValExp::from_int(1), &prec)?;
    println!("y + 1/y on {{0 < v < 1}}: M = {}, N = {}, {}", a.m, a.n, a.shape);
    Ok(())
}
