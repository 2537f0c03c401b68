fn main() {
    std::process::exit(coprimenet::cli::run(std::env::args_os()));
}
