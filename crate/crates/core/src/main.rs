use clap::Parser;

fn main() {
    let cli = shootout::cli::Cli::parse();
    std::process::exit(shootout::cli::run(cli));
}
