fn main() {
    std::process::exit(jacflow::cli::main_with_args(std::env::args().collect()));
}
