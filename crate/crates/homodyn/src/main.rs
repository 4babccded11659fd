use clap::Parser;
use homodyn::cli::{run, Cli};

fn main() {
    std::process::exit(run(&Cli::parse()));
}
