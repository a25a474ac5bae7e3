fn main() {
    std::process::exit(tangential::cli::run(std::env::args()));
}
