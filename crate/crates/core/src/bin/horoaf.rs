fn main() {
    std::process::exit(horoaf::cli::run(std::env::args_os()));
}
