fn main() {
    std::process::exit(permutalg::cli::run_cli(std::env::args().skip(1)));
}
