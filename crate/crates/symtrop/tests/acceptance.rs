use std::process::ExitCode;
use std::time::Instant;

use symtrop::acceptance::run_all;

fn main() -> ExitCode {
    let start = Instant::now();
    let results = run_all();
    for r in &results {
        println!("{}", r.line());
        for d in &r.details {
            println!("    {d}");
        }
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("\nacceptance: {passed}/{} criteria passed in {:.1?}", results.len(), start.elapsed());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
