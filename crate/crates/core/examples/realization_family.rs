//! The X_n family has exactly n + 2 semiflows and one down beat point.

use finflow::families;
use finflow::reduction::{down_beat_points, potential_down_beat_points};
use finflow::semiflow::enumerate_semiflows;

fn main() -> finflow::Result<()> {
    for n in 0..=4 {
        let p = families::x_n(n);
        let s = enumerate_semiflows(&p)?.len();
        println!(
            "n = {n}: {} points, D = {}, potential = {}, S_F = {s}",
            p.len(),
            p.format_set(down_beat_points(&p)),
            p.format_set(potential_down_beat_points(&p)?),
        );
        assert_eq!(s, n + 2);
    }
    Ok(())
}
