//! Potential down beat points, their removal sequences and the retractions
//! those sequences induce.

use finflow::families;
use finflow::reduction::{
    explore_potential, retraction_from_sequence, HeightOrder, POTENTIAL_LIMIT,
};
use finflow::semiflow::movable_points;

fn main() -> finflow::Result<()> {
    let p = families::example_3_1();
    let found = explore_potential(&p, HeightOrder::NonDecreasing, POTENTIAL_LIMIT)?;
    println!("potential points {}", p.format_set(found.points));
    for seq in found.witnesses.iter().flatten() {
        let r = retraction_from_sequence(&p, seq)?;
        println!("  {:?} gives {}", seq.labels(&p), r.describe());
    }
    println!("movable points   {}", p.format_set(movable_points(&p)?));

    // Two equal-height removals in one sequence are what the strict order forbids.
    let fan = finflow::Poset::from_relations(
        &["0", "b1", "b2", "b3", "t"],
        &[
            ("0", "b1"),
            ("0", "b2"),
            ("0", "b3"),
            ("b1", "t"),
            ("b2", "t"),
            ("b3", "t"),
        ],
    )?;
    for order in [HeightOrder::NonDecreasing, HeightOrder::Strict] {
        let pts = explore_potential(&fan, order, POTENTIAL_LIMIT)?.points;
        println!("fan, {order:?}: {}", fan.format_set(pts));
    }
    Ok(())
}
