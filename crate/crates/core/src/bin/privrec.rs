fn main() {
    std::process::exit(privrec::cli::main_with_args(std::env::args_os()));
}
