//! Hasse diagram in DOT with one semiflow overlaid.
//!
//! `cargo run --example dot_export | dot -Tsvg > ex.svg`

use finflow::families;
use finflow::io::to_dot;
use finflow::semiflow::enumerate_semiflows;

fn main() -> finflow::Result<()> {
    let p = families::example_3_1();
    let flows = enumerate_semiflows(&p)?;
    let biggest = flows
        .iter()
        .max_by_key(|sf| sf.retraction().moved_points().len())
        .expect("identity is always there");
    print!("{}", to_dot(&p, Some(biggest)));
    Ok(())
}
