//! The ten acceptance criteria at full parameters. Prints one line per
//! criterion and exits non-zero if any criterion fails.

use std::process::ExitCode;

use designlab_cli::selftest::{run_criterion, Level, CRITERIA};

fn main() -> ExitCode {
    let results: Vec<_> = (1..=CRITERIA.len()).map(|id| run_criterion(id, Level::Full)).collect();
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("acceptance: {} passed, {} failed", results.len() - failed.len(), failed.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
