fn main() {
    std::process::exit(fillmore_cli::run(std::env::args_os()));
}
