use std::io::Write;
use std::time::Instant;

fn main() {
    let start = Instant::now();
    let out = equiv_cli::dispatch(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    if out.stdout.starts_with('{') {
        eprintln!("elapsed: {} ms", start.elapsed().as_millis());
    }
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
