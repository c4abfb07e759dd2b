fn main() {
    std::process::exit(maasskit::cli::main_with_args(std::env::args_os()));
}
