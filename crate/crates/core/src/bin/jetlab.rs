fn main() { std::process::exit(jetlab::cli::run(std::env::args())) }
