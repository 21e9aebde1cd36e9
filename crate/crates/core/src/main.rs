fn main() {
    std::process::exit(subalign::cli::main_with_args(std::env::args_os()));
}
