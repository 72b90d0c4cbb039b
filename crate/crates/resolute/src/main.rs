use std::io::Write;

fn main() {
    let out = resolute::cli::run_args(std::env::args_os());
    print!("{}", out.stdout);
    if !out.stderr.is_empty() {
        let _ = write!(std::io::stderr(), "{}", out.stderr);
    }
    std::process::exit(out.exit_code);
}
