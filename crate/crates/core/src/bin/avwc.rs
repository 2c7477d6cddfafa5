fn main() {
    std::process::exit(avwc::cli::main_with_args(std::env::args_os()));
}
