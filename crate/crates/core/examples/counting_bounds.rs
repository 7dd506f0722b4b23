//! S_F against its lower bounds on a handful of spaces.

use finflow::families;
use finflow::semiflow::Analysis;

fn main() -> finflow::Result<()> {
    let spaces = [
        ("example_3_1", families::example_3_1()),
        ("chain(3)", families::chain(3)),
        ("chain(6)", families::chain(6)),
        ("pseudo_circle", families::pseudo_circle()),
        ("random(8, 0.4, 7)", families::random_poset(8, 0.4, 7)?),
    ];
    for (name, p) in &spaces {
        let a = Analysis::new(p)?;
        println!(
            "{name}: S_F = {}, |D| = {}, antichain {}",
            a.s_f(),
            a.down_beats.len(),
            p.format_set(a.antichain)
        );
        for c in a.claims() {
            let mark = if c.satisfied { "ok " } else { "BAD" };
            println!("  {mark} {}: {}", c.claim, c.detail);
        }
    }
    Ok(())
}
