//! The command line driven in-process:
//!
//! cargo run --release --example cli -- verify --pairs 1000

fn main() {
    let mut argv: Vec<String> = std::env::args().collect();
    if argv.len() == 1 {
        argv.extend(["verify", "--fields", "100", "--pairs", "1000", "--identity-trials", "10"].map(String::from));
    }
    std::process::exit(sfnls::harness::cli_main(argv));
}
