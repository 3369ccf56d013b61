fn main() {
    std::process::exit(kplane_cli::run_cli(std::env::args_os()));
}
