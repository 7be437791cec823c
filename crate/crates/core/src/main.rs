fn main() {
    std::process::exit(roadwidth::cli::run_from(std::env::args_os()));
}
