//! Every semiflow on a space, checked against the brute-force oracle.
//!
//! `cargo run --example enumerate_semiflows -- 4` sets the worker count.

use finflow::families;
use finflow::semiflow::{brute_force_oracle, enumerate_semiflows_with, EnumerateOptions};

fn main() -> finflow::Result<()> {
    let threads = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let p = families::example_3_1();
    let flows = enumerate_semiflows_with(&p, &EnumerateOptions::with_threads(threads))?;
    for (i, sf) in flows.iter().enumerate() {
        println!("{i}\t{}", sf.describe());
    }

    let sf = flows.last().expect("identity is always there");
    println!("evaluating {}", sf.describe());
    for t in [0.0, 0.5, 2.0] {
        let a = p.index_of("A").unwrap();
        println!("phi({t}, A) = {}", p.label(sf.evaluate(t, a)?));
    }

    let oracle = brute_force_oracle(&p)?;
    let same = oracle
        .iter()
        .zip(&flows)
        .all(|(m, s)| m.values() == s.retraction().values());
    println!(
        "oracle: {} maps, agrees = {}",
        oracle.len(),
        same && oracle.len() == flows.len()
    );
    Ok(())
}
