fn main() {
    std::process::exit(dulac::cli::run(std::env::args_os()));
}
