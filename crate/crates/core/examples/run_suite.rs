//! Runs one named suite (default `sinc`) and prints its JSON summary.
//!
//! ```bash
//! cargo run --release --example run_suite -- uncertainty 20
//! ```

use measure_lp::config::RunConfig;
use measure_lp::suites::{run_suites, Suite};

fn main() -> measure_lp::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "sinc".into());
    let cases = args
        .next()
        .map_or(Ok(10), |c| c.parse())
        .map_err(|e| measure_lp::Error::Config(format!("cases: {e}")))?;
    let cfg = RunConfig { cases, ..RunConfig::default() };
    let out = run_suites(&Suite::selection(&name)?, &cfg)?;
    for run in &out.runs {
        let s = &run.summary;
        println!("{}: {} pass, {} fail, {} inconclusive", s.suite, s.pass, s.fail, s.inconclusive);
        for (k, v) in &s.empirical_constants {
            println!("  {k} = {v:.6e}");
        }
    }
    println!("config digest {}", out.config_digest);
    Ok(())
}
