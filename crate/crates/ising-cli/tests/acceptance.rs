//! Runs every acceptance criterion and prints one PASS/FAIL line for each.

use ising_cli::acceptance::{run, CRITERIA};

fn main() {
    let ids: Vec<usize> = (1..=CRITERIA.len()).collect();
    let workers = std::thread::available_parallelism().map_or(4, |n| n.get().min(CRITERIA.len()));
    let results = run(&ids, workers);
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", results.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
