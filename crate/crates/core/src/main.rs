fn main() {
    std::process::exit(sympquot::cli::main_with_args(std::env::args_os()));
}
