fn main() {
    std::process::exit(syzygy_forge::cli::main_with_args(std::env::args_os()));
}
