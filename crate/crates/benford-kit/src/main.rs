fn main() {
    std::process::exit(benford_kit::cli::run(std::env::args_os()));
}
