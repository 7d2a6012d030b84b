use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use fatpoints_cli::args::Cli;
use fatpoints_cli::{exit_code, run};

const INPUT_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let spec = cli.job();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(INPUT_ERROR);
        }
    }
    let start = Instant::now();
    let mut stdin = std::io::stdin().lock();
    match run(&spec, &mut stdin) {
        Ok(mut doc) => {
            if cli.timing {
                doc.seconds = Some(start.elapsed().as_secs_f64());
            }
            let mut out = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = out.write_all(doc.render(spec.format).as_bytes());
            ExitCode::from(exit_code(&doc) as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
