fn main() {
    std::process::exit(exangulate::cli::run(std::env::args_os()));
}
