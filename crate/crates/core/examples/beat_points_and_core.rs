//! Beat points and the core of a few named spaces.

use finflow::families;
use finflow::poset::is_isomorphic;
use finflow::reduction::{core, down_beat_points, down_cover, up_beat_points};

fn main() -> finflow::Result<()> {
    let spaces = [
        ("example_3_1", families::example_3_1()),
        ("example_2_5", families::example_2_5()),
        (
            "cone(pseudo_circle)",
            families::cone(&families::pseudo_circle()),
        ),
    ];
    for (name, p) in &spaces {
        let down = down_beat_points(p);
        println!("{name}");
        println!("  down beat points {}", p.format_set(down));
        for x in down.iter() {
            let bar = down_cover(p, x).expect("beat point");
            println!("    {} has maximum {} below it", p.label(x), p.label(bar));
        }
        println!("  up beat points   {}", p.format_set(up_beat_points(p)));
        let c = core(p);
        let trace: Vec<&str> = c.trace.iter().map(|&x| p.label(x)).collect();
        println!("  removal order    {trace:?}");
        println!("  core             {:?}", c.poset.labels());
    }
    let c = core(&spaces[1].1);
    println!(
        "core of example_2_5 is the pseudo-circle: {}",
        is_isomorphic(&c.poset, &families::pseudo_circle())?
    );
    Ok(())
}
