use std::process::ExitCode;

fn main() -> ExitCode {
    let cap = std::env::var("GASKET_LEVEL_CAP").ok();
    let code = gasket::cli::main_with(std::env::args_os(), cap.as_deref(), &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(code as u8)
}
