fn main() {
    std::process::exit(legendre_phase_cli::cli::main_with_args(std::env::args_os()));
}
