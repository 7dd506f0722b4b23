//! Check every counting claim over a seeded random corpus.

use finflow::corpus::random_corpus;
use finflow::semiflow::Analysis;

fn main() -> finflow::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let count = args.first().copied().unwrap_or(100) as usize;
    let seed = args.get(1).copied().unwrap_or(1);
    let mut failures = 0;
    let mut total_flows = 0;
    for (spec, p) in random_corpus(count, 9, seed) {
        let a = Analysis::new(&p)?;
        total_flows += a.s_f();
        for c in a.claims().iter().filter(|c| !c.satisfied) {
            failures += 1;
            println!("{spec}: {} ({})", c.claim, c.detail);
        }
    }
    println!("{count} posets, {total_flows} semiflows, {failures} failed claims");
    Ok(())
}
