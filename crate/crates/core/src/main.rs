fn main() {
    std::process::exit(forrel::cli::main_with(std::env::args_os()));
}
