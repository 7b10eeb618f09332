use clap::Parser;

use burnside_lab::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let report = run(&cli);
    if cli.json {
        println!("{}", report.to_json());
    } else if report.error.is_some() {
        eprint!("{}", report.to_text());
    } else {
        print!("{}", report.to_text());
    }
    std::process::exit(report.exit_code());
}
