fn main() {
    std::process::exit(cyclocert_cli::run(std::env::args_os()));
}
