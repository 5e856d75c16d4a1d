fn main() {
    std::process::exit(boolecode::cli::main_with(std::env::args_os()));
}
