use std::io::{stderr, stdout, BufWriter, Write};

fn main() {
    let out = stdout();
    let mut out = BufWriter::new(out.lock());
    let code = ecss_cli::run(std::env::args_os(), &mut out, &mut stderr());
    let _ = out.flush();
    drop(out);
    std::process::exit(code);
}
