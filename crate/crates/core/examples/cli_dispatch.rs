// Driving the command-line interface from code.

use golomb::cli::{dispatch, render, Cli, Format};

use clap::Parser;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for args in [
        &["golomb", "closure", "--a", "2", "--b", "15", "--query", "5"][..],
        &["golomb", "x8-witness", "--b", "9"],
        &["golomb", "brunault", "--a", "3", "--b", "2", "--count", "3"],
    ] {
        let cli = Cli::try_parse_from(args)?;
        print!("{}", render(&dispatch(&cli.command)?, Format::Text));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("cli example");
}
