use clap::Parser;

fn main() {
    let cli = semikit_cli::Cli::parse();
    std::process::exit(semikit_cli::run(cli));
}
