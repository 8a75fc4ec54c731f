fn main() {
    std::process::exit(moufang::cli::run(std::env::args_os()));
}
