use clap::Parser;
use ncdchain_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    std::process::exit(ncdchain_cli::run(&cli));
}
