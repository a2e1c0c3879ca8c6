fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let mut out = std::io::stdout().lock();
    let code = symtrop::cli::run(&argv, &mut out);
    std::process::exit(code);
}
