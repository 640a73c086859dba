use clap::Parser;
use sphex::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (out, code) = run(&cli);
    println!("{}", out.trim_end());
    std::process::exit(code);
}
