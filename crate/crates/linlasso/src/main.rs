fn main() {
    std::process::exit(linlasso::cli::run(std::env::args_os()));
}
