use clap::Parser;
use hardytree_cli::{run_command, Cli};

fn main() {
    let cli = Cli::parse();
    match run_command(&cli.command, &cli.global) {
        Ok(report) => {
            if cli.global.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if !report.converged {
                std::process::exit(3);
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
