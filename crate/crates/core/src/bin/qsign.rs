fn main() {
    std::process::exit(qsign::cli::main_with_args(std::env::args_os()));
}
