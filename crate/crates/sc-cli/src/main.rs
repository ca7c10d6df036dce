fn main() {
    std::process::exit(sc_cli::cli_main(std::env::args_os()));
}
