use clap::Parser;
use hypergeom::cli;

fn main() {
    let parsed = cli::Cli::parse();
    let code = match cli::run(parsed) {
        Ok(code) => code,
        Err(e) => cli::exit_code_for(&e),
    };
    std::process::exit(code);
}
