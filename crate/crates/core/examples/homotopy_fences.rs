//! Fences between monotone maps. On a minimal space only the identity is
//! linked to the identity.

use finflow::families;
use finflow::maps::{fence_homotopic, monotone_maps};
use finflow::MonotoneMap;

fn main() -> finflow::Result<()> {
    let v = families::cone(&families::antichain(2));
    let f = MonotoneMap::new(&v, vec![0, 0, 0])?;
    let g = MonotoneMap::new(&v, vec![1, 1, 1])?;
    if let Some(fence) = fence_homotopic(&f, &g, 4)? {
        let steps: Vec<String> = fence.iter().map(|m| format!("{:?}", m.values())).collect();
        println!("V-shape: {}", steps.join(" ~ "));
    }

    let c = families::pseudo_circle();
    let id = MonotoneMap::identity(&c);
    let maps = monotone_maps(&c, 10_000)?;
    let linked = maps
        .iter()
        .filter(|f| fence_homotopic(f, &id, 8).ok().flatten().is_some())
        .count();
    println!(
        "pseudo-circle: {} monotone maps, {linked} homotopic to id",
        maps.len()
    );
    Ok(())
}
