//! Build a poset from relations and look at its open sets and heights.

use finflow::Poset;

fn main() -> finflow::Result<()> {
    let p = Poset::from_relations(
        &["A", "B", "C", "D", "E", "F"],
        &[
            ("E", "D"),
            ("F", "D"),
            ("D", "B"),
            ("D", "C"),
            ("B", "A"),
            ("C", "A"),
        ],
    )?;
    println!("{} points, height {}", p.len(), p.height());
    for x in p.elements() {
        println!(
            "{:>2}  ht {}  U_x = {}  F_x = {}",
            p.label(x),
            p.height_of(x),
            p.format_set(p.down_set(x)),
            p.format_set(p.up_set(x)),
        );
    }
    let covers: Vec<String> = p
        .covers()
        .iter()
        .map(|&(a, b)| format!("{}<{}", p.label(a), p.label(b)))
        .collect();
    println!("covers: {}", covers.join(" "));

    // Cycles are rejected.
    let err = Poset::from_relations(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
    println!("a<b<a: {err}");
    Ok(())
}
