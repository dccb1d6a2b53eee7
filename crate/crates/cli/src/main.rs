fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let digits = std::env::var("ASKEY_DIGITS").ok();
    std::process::exit(askey_cli::run(&argv, digits.as_deref()));
}
