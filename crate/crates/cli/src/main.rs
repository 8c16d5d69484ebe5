fn main() {
    std::process::exit(schreier_cli::main_with_args(std::env::args_os()));
}
