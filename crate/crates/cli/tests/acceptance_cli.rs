//! Determinism of the binary: every job, run repeatedly and under several
//! worker-pool sizes, must produce byte-identical JSON.

use std::process::{Command, ExitCode};

const JOBS: &[&[&str]] = &[
    &["preproj", "--graph", "D~4", "--char", "0", "--max", "8"],
    &["preproj", "--graph", "E6", "--char", "3", "--max", "10"],
    &[
        "hh2", "--graph", "D~4", "--char", "0", "--q", "-2..6", "--method", "all",
    ],
    &[
        "hh2", "--graph", "E6", "--char", "2", "--q", "1..6", "--method", "all",
    ],
    &["classify", "--graph", "D~4", "--char", "0", "--max", "6"],
    &["classify", "--graph", "E7", "--char", "3", "--max", "8"],
    &["ainfty-check", "--scale", "3"],
];

fn run(args: &[&str], threads: Option<usize>) -> Result<Vec<u8>, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_zigzag-hh"));
    cmd.args(args).args(["--out", "json"]);
    match threads {
        Some(n) => cmd.env("ZIGZAG_HH_THREADS", n.to_string()),
        None => cmd.env_remove("ZIGZAG_HH_THREADS"),
    };
    let out = cmd.output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {:?}", out.status.code()));
    }
    Ok(out.stdout)
}

fn check() -> Result<String, String> {
    let mut runs = 0;
    for job in JOBS {
        let reference = run(job, None)?;
        for threads in [None, Some(1), Some(2), Some(7)] {
            for _ in 0..2 {
                runs += 1;
                if run(job, threads)? != reference {
                    return Err(format!("{job:?} differs with {threads:?} threads"));
                }
            }
        }
    }
    Ok(format!(
        "{} jobs, {runs} repeated runs, byte-identical",
        JOBS.len()
    ))
}

fn main() -> ExitCode {
    match check() {
        Ok(detail) => {
            println!("criterion 9 CLI determinism: PASS ({detail})");
            ExitCode::SUCCESS
        }
        Err(why) => {
            println!("criterion 9 CLI determinism: FAIL ({why})");
            ExitCode::FAILURE
        }
    }
}
