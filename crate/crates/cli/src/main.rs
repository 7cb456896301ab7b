use clap::Parser;

fn main() {
    let cli = jt_cli::Cli::parse();
    std::process::exit(jt_cli::run(&cli));
}
