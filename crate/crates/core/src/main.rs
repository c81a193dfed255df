fn main() {
    std::process::exit(bmac::cli::run(std::env::args_os()));
}
