use std::io::Write;

fn main() {
    if let Err(e) = knotforge_cli::configure_threads() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
    let out = knotforge_cli::run(std::env::args_os());
    // write everything at once so output never interleaves
    std::io::stdout().write_all(out.stdout.as_bytes()).ok();
    std::io::stderr().write_all(out.stderr.as_bytes()).ok();
    std::process::exit(out.code);
}
