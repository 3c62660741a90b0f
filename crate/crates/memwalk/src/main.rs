use clap::Parser;

fn main() {
    let cli = memwalk::cli::Cli::parse();
    if let Err(e) = memwalk::cli::execute(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
