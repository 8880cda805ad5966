fn main() {
    std::process::exit(sfnls::harness::cli_main(std::env::args_os()));
}
