use clap::Parser;
use kerpair_cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let doc = execute(&cli, std::env::args().collect());
    if cli.json {
        println!("{}", doc.to_json());
    } else {
        print!("{doc}");
    }
    std::process::exit(doc.exit_code);
}
