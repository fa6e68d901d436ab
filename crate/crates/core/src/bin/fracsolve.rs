use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    fracsolve::cli::configure_threads();
    let code = fracsolve::cli::run(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr(),
    );
    ExitCode::from(code)
}
