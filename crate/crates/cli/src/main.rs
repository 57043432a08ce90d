use std::io::{self, Write};

fn main() {
    let env = std::env::var(coulomb_cli::TOLERANCE_ENV).ok();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = coulomb_cli::run(
        std::env::args_os(),
        env.as_deref(),
        &mut out,
        &mut stderr.lock(),
    );
    let _ = out.flush();
    std::process::exit(code);
}
