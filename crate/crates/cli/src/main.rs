use clap::Parser;

fn main() {
    let cli = risfocus_cli::args::Cli::parse();
    if let Err(err) = risfocus_cli::run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
