use std::process::ExitCode;

use bicount::acceptance::{run_all, Scale};

fn main() -> ExitCode {
    println!("\nrunning acceptance criteria (full scale, seed 0)");
    let results = run_all(Scale::Full, 0);
    for r in &results {
        println!("{r} ({:.1}s)", r.elapsed.as_secs_f64());
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed\n", results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}\n");
        ExitCode::FAILURE
    }
}
