use std::io::Write;

fn main() {
    let (code, report) = cspg::run_command(std::env::args().skip(1));
    let mut out = std::io::stdout();
    let _ = out.write_all(report.as_bytes());
    let _ = out.flush();
    std::process::exit(code);
}
