fn main() {
    std::process::exit(nonlinear_sl2_cli::run(std::env::args_os()));
}
