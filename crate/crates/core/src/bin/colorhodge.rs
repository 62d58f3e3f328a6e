fn main() {
    std::process::exit(colorhodge::cli::run(std::env::args_os()));
}
