//! Reading map spec files and running CLI commands in-process.

use skewberk::shell::{parse_spec, render_map, run};

fn main() -> skewberk::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/maps");
    let mut paths: Vec<_> = std::fs::read_dir(dir).expect("maps dir").map(|e| e.expect("entry").path()).collect();
    paths.sort();
    for path in &paths {
        let text = std::fs::read_to_string(path).expect("readable");
        let (spec, phi) = parse_spec(&text)?;
        println!("{}: phi2 = {}, q = {}, order {}", path.display(), spec.phi2_src, phi.q(), spec.order);
        print!("{}", render_map(&phi));
        let p = path.to_string_lossy();
        let (out, code) = run(["skewberk", "--map", &p, "julia-test", "--point", "gauss"]);
        print!("  julia-test -> exit {code}: {out}");
    }
    match parse_spec("phi1 = x;\nphi2 = (y - 1;\n") {
        Err(e) => println!("{e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
