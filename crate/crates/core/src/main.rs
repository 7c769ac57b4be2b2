fn main() {
    std::process::exit(qdiscord::cli::run(std::env::args_os()));
}
