fn main() {
    let (out, code) = skewberk::shell::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
