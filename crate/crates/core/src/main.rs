fn main() {
    std::process::exit(sabmsm::cli::run_cli(std::env::args_os()));
}
