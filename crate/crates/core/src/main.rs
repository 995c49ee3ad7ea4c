fn main() {
    let mut out = std::io::stdout().lock();
    let code = fanocheck::cli::run_cli(std::env::args_os(), &mut out);
    std::process::exit(code);
}
