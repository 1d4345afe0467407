use std::process;

fn main() {
    process::exit(sharp_cli::run_cli(std::env::args_os()));
}
