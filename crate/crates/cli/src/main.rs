fn main() {
    std::process::exit(tropineq_cli::run(std::env::args_os()));
}
