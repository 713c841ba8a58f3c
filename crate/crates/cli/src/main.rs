fn main() {
    std::process::exit(cutjoin_cli::run(std::env::args_os()));
}
