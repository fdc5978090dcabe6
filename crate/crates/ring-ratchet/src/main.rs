use clap::Parser;

use ring_ratchet::cli::{run, Cli};
use ring_ratchet::Error;

fn main() {
    let cli = Cli::parse(); // clap exits with code 2 on usage errors
    if let Err(e) = run(&cli) {
        eprintln!("error: {e}");
        let code = match e {
            Error::InvalidArgument(_) => 2,
            _ => 1,
        };
        std::process::exit(code);
    }
}
