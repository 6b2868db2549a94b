fn main() {
    std::process::exit(ctlab::cli::run(std::env::args_os()));
}
