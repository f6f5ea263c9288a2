//! Drive the command-line front end in-process and print its JSON report.

use freemult::cli::{run, RunRequest};

fn main() -> freemult::Result<()> {
    let request = RunRequest::parse_from_args(["freemult", "--format", "json", "classify", "--alpha", "2", "--mult", "3,3,3,1,1,1"])
        .unwrap_or_else(|e| e.exit());
    let report = run(&request)?;
    println!("{}", report.to_json());
    Ok(())
}
