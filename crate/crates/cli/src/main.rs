use clap::Parser;
use labprim::Cli;

fn main() {
    let cli = Cli::parse();
    std::process::exit(labprim::execute(&cli));
}
