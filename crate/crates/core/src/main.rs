fn main() {
    std::process::exit(tplines::cli::run(std::env::args_os()));
}
