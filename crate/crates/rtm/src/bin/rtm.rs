use std::io::Write;

fn main() {
    let (code, out, err) = rtm::cli::run(std::env::args_os());
    std::io::stdout().write_all(out.as_bytes()).unwrap();
    std::io::stderr().write_all(err.as_bytes()).unwrap();
    std::process::exit(code);
}
