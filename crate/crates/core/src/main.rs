use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (code, output) = moilp::cli::run_command(&args);
    if !output.is_empty() {
        if code == 0 {
            print!("{output}");
        } else {
            eprint!("{output}");
        }
    }
    ExitCode::from(code)
}
