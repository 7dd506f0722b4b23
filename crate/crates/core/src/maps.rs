//! Continuous self-maps of a finite space.
//!
//! A map between finite T0 spaces is continuous exactly when it preserves
//! the order, so a [`MonotoneMap`] is a values table checked against the
//! cover relation. Homotopy between maps is witnessed by fences
//! `f = f0 <= f1 >= f2 <= ... = g` of pointwise comparisons.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::set::ElementSet;

/// Default cap on the number of maps a fence search may visit.
pub const FENCE_BUDGET: usize = 200_000;

/// True iff `values` is a total, order-preserving self-map of `p`.
///
/// Only cover pairs are checked; transitivity covers the rest.
pub fn is_monotone(p: &Poset, values: &[usize]) -> bool {
    values.len() == p.len()
        && values.iter().all(|&v| v < p.len())
        && p.covers().iter().all(|&(a, b)| p.leq(values[a], values[b]))
}

/// Order-preserving self-map tied to one poset.
#[derive(Clone)]
pub struct MonotoneMap<'p> {
    poset: &'p Poset,
    values: Vec<usize>,
}

impl<'p> MonotoneMap<'p> {
    pub fn new(poset: &'p Poset, values: Vec<usize>) -> Result<Self> {
        if values.len() != poset.len() {
            return Err(Error::NotMonotone(format!(
                "expected {} values, got {}",
                poset.len(),
                values.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= poset.len()) {
            return Err(Error::NotMonotone(format!("value {v} out of range")));
        }
        if let Some(&(a, b)) = poset
            .covers()
            .iter()
            .find(|&&(a, b)| !poset.leq(values[a], values[b]))
        {
            return Err(Error::NotMonotone(format!(
                "{} < {} but f({}) = {} is not <= f({}) = {}",
                poset.label(a),
                poset.label(b),
                poset.label(a),
                poset.label(values[a]),
                poset.label(b),
                poset.label(values[b]),
            )));
        }
        Ok(MonotoneMap { poset, values })
    }

    /// Skips the monotonicity check. Callers must guarantee it.
    pub(crate) fn new_unchecked(poset: &'p Poset, values: Vec<usize>) -> Self {
        debug_assert!(is_monotone(poset, &values));
        MonotoneMap { poset, values }
    }

    pub fn identity(poset: &'p Poset) -> Self {
        MonotoneMap {
            poset,
            values: poset.elements().collect(),
        }
    }

    /// Identity except for the listed `(from, to)` label pairs.
    pub fn from_label_moves(poset: &'p Poset, moves: &[(&str, &str)]) -> Result<Self> {
        let mut values: Vec<usize> = poset.elements().collect();
        for (from, to) in moves {
            let a = poset
                .index_of(from)
                .ok_or_else(|| Error::UnknownLabel(from.to_string()))?;
            let b = poset
                .index_of(to)
                .ok_or_else(|| Error::UnknownLabel(to.to_string()))?;
            values[a] = b;
        }
        MonotoneMap::new(poset, values)
    }

    pub fn poset(&self) -> &'p Poset {
        self.poset
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    fn same_poset(&self, other: &MonotoneMap<'_>) -> Result<()> {
        if std::ptr::eq(self.poset, other.poset) || self.poset.id() == other.poset.id() {
            Ok(())
        } else {
            Err(Error::PosetMismatch)
        }
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(x, &v)| x == v)
    }

    /// `f <= g` pointwise.
    pub fn pointwise_leq(&self, other: &MonotoneMap<'_>) -> Result<bool> {
        self.same_poset(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .all(|(&a, &b)| self.poset.leq(a, b)))
    }

    /// `f <= id`.
    pub fn below_identity(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(x, &v)| self.poset.leq(v, x))
    }

    pub fn is_idempotent(&self) -> bool {
        self.values.iter().all(|&v| self.values[v] == v)
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &MonotoneMap<'p>) -> Result<MonotoneMap<'p>> {
        self.same_poset(other)?;
        let values = other.values.iter().map(|&v| self.values[v]).collect();
        Ok(MonotoneMap::new_unchecked(self.poset, values))
    }

    pub fn image(&self) -> ElementSet {
        self.values.iter().copied().collect()
    }

    pub fn fixed_points(&self) -> ElementSet {
        self.values
            .iter()
            .enumerate()
            .filter(|&(x, &v)| x == v)
            .map(|(x, _)| x)
            .collect()
    }

    /// Points with `f(x) != x`.
    pub fn moved_points(&self) -> ElementSet {
        self.poset.all().difference(self.fixed_points())
    }

    pub fn is_bijective(&self) -> bool {
        self.image().len() == self.values.len()
    }

    /// Image lies in `a` and `a` is fixed pointwise.
    pub fn is_retraction_onto(&self, a: ElementSet) -> bool {
        self.image().is_subset(a) && a.is_subset(self.fixed_points())
    }

    /// Idempotent, below the identity, and fixing its image.
    ///
    /// For such `r` the single comparison `i∘r <= id` is a fence from the
    /// identity to `i∘r` that is constant on `r(X)`, so `r(X)` is a strong
    /// deformation retract.
    pub fn is_strong_deformation_retraction(&self) -> bool {
        self.is_idempotent() && self.below_identity() && self.is_retraction_onto(self.image())
    }

    /// Partial map listing only moved points, e.g. `B->D, C->D`; `id` when
    /// nothing moves.
    pub fn describe(&self) -> String {
        let moves: Vec<String> = self
            .moved_points()
            .iter()
            .map(|x| {
                format!(
                    "{}->{}",
                    self.poset.label(x),
                    self.poset.label(self.values[x])
                )
            })
            .collect();
        if moves.is_empty() {
            "id".to_string()
        } else {
            moves.join(", ")
        }
    }
}

impl PartialEq for MonotoneMap<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.same_poset(other).is_ok() && self.values == other.values
    }
}

impl Eq for MonotoneMap<'_> {}

impl fmt::Debug for MonotoneMap<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonotoneMap({})", self.describe())
    }
}

/// Every monotone map `h` with `h(x) ∈ allowed(x)` for all `x`, in
/// lexicographic order of values. Fails once more than `budget` maps exist.
fn monotone_maps_within<'p>(
    p: &'p Poset,
    allowed: &[ElementSet],
    budget: usize,
) -> Result<Vec<MonotoneMap<'p>>> {
    let order = p.linear_extension();
    let mut out = Vec::new();
    let mut values = vec![usize::MAX; p.len()];

    fn go(
        p: &Poset,
        allowed: &[ElementSet],
        order: &[usize],
        depth: usize,
        values: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: usize,
    ) -> Result<()> {
        let Some(&x) = order.get(depth) else {
            if out.len() == budget {
                return Err(Error::SizeLimit {
                    what: "monotone map space",
                    size: budget + 1,
                    limit: budget,
                });
            }
            out.push(values.clone());
            return Ok(());
        };
        let mut candidates = allowed[x];
        for c in p.lower_covers(x) {
            candidates = candidates.intersection(p.up_set(values[c]));
        }
        for y in candidates {
            values[x] = y;
            go(p, allowed, order, depth + 1, values, out, budget)?;
        }
        values[x] = usize::MAX;
        Ok(())
    }

    let mut raw = Vec::new();
    go(p, allowed, order, 0, &mut values, &mut raw, budget)?;
    raw.sort_unstable();
    out.extend(raw.into_iter().map(|v| MonotoneMap::new_unchecked(p, v)));
    Ok(out)
}

/// All monotone self-maps of `p`.
pub fn monotone_maps(p: &Poset, budget: usize) -> Result<Vec<MonotoneMap<'_>>> {
    let all = vec![p.all(); p.len()];
    monotone_maps_within(p, &all, budget)
}

/// A fence `f = f0, f1, .., fk = g` where consecutive maps are comparable.
pub type Fence<'p> = Vec<MonotoneMap<'p>>;

/// Breadth-first search for a shortest fence from `f` to `g` using at most
/// `max_steps` comparisons. Steps in the same direction compose, so any
/// comparable neighbour is one step.
pub fn fence_homotopic<'p>(
    f: &MonotoneMap<'p>,
    g: &MonotoneMap<'p>,
    max_steps: usize,
) -> Result<Option<Fence<'p>>> {
    fence_homotopic_with_budget(f, g, max_steps, FENCE_BUDGET)
}

pub fn fence_homotopic_with_budget<'p>(
    f: &MonotoneMap<'p>,
    g: &MonotoneMap<'p>,
    max_steps: usize,
    budget: usize,
) -> Result<Option<Fence<'p>>> {
    f.same_poset(g)?;
    let p = f.poset;
    let mut parent: HashMap<Vec<usize>, Option<Vec<usize>>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(f.values.clone(), None);
    queue.push_back((f.values.clone(), 0usize));

    let rebuild = |end: Vec<usize>, parent: &HashMap<Vec<usize>, Option<Vec<usize>>>| {
        let mut path = vec![end];
        while let Some(Some(prev)) = parent.get(path.last().unwrap()) {
            path.push(prev.clone());
        }
        path.reverse();
        path.into_iter()
            .map(|v| MonotoneMap::new_unchecked(p, v))
            .collect::<Vec<_>>()
    };

    if f.values == g.values {
        return Ok(Some(vec![f.clone()]));
    }
    while let Some((cur, steps)) = queue.pop_front() {
        if steps == max_steps {
            continue;
        }
        let below: Vec<ElementSet> = cur.iter().map(|&v| p.down_set(v)).collect();
        let above: Vec<ElementSet> = cur.iter().map(|&v| p.up_set(v)).collect();
        for allowed in [below, above] {
            for h in monotone_maps_within(p, &allowed, budget)? {
                let hv = h.values;
                if parent.contains_key(&hv) {
                    continue;
                }
                if parent.len() >= budget {
                    return Err(Error::SizeLimit {
                        what: "fence search",
                        size: parent.len() + 1,
                        limit: budget,
                    });
                }
                parent.insert(hv.clone(), Some(cur.clone()));
                if hv == g.values {
                    return Ok(Some(rebuild(hv, &parent)));
                }
                queue.push_back((hv, steps + 1));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_3_1() -> Poset {
        Poset::from_relations(
            &["A", "B", "C", "D", "E", "F"],
            &[
                ("B", "A"),
                ("C", "A"),
                ("D", "B"),
                ("D", "C"),
                ("E", "D"),
                ("F", "D"),
            ],
        )
        .unwrap()
    }

    fn chain3() -> Poset {
        Poset::from_relations(&["0", "1", "2"], &[("0", "1"), ("1", "2")]).unwrap()
    }

    fn pseudo_circle() -> Poset {
        Poset::from_relations(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap()
    }

    #[test]
    fn monotonicity() {
        let p = example_3_1();
        let ix = |l| p.index_of(l).unwrap();
        let mut v: Vec<usize> = p.elements().collect();
        v[ix("A")] = ix("D");
        v[ix("B")] = ix("D");
        v[ix("C")] = ix("D");
        assert!(is_monotone(&p, &v));

        let ab = Poset::antichain_of(vec!["a".into(), "b".into()]).unwrap();
        assert!(is_monotone(&ab, &[1, 1]));

        let c = chain3();
        assert!(is_monotone(&c, &[0, 0, 2]));
        assert!(!is_monotone(&c, &[2, 1, 1]));
        assert!(matches!(
            MonotoneMap::new(&c, vec![2, 1, 1]),
            Err(Error::NotMonotone(_))
        ));
        assert!(!is_monotone(&c, &[0, 0]));
    }

    #[test]
    fn comparisons() {
        let p = example_3_1();
        let id = MonotoneMap::identity(&p);
        let f = MonotoneMap::from_label_moves(&p, &[("B", "D")]).unwrap();
        assert!(f.pointwise_leq(&f).unwrap());
        assert!(f.pointwise_leq(&id).unwrap());
        assert!(!id.pointwise_leq(&f).unwrap());

        let other = example_3_1();
        let g = MonotoneMap::identity(&other);
        assert_eq!(id.pointwise_leq(&g), Err(Error::PosetMismatch));
        assert_eq!(id.clone().compose(&MonotoneMap::identity(&p)).unwrap(), id);
        let cloned = p.clone();
        assert!(MonotoneMap::identity(&cloned).pointwise_leq(&id).unwrap());
    }

    #[test]
    fn idempotence_and_images() {
        let c = chain3();
        let id = MonotoneMap::identity(&c);
        assert!(id.below_identity() && id.is_idempotent());
        assert_eq!(id.fixed_points(), c.all());

        let shift = MonotoneMap::new(&c, vec![0, 0, 1]).unwrap();
        assert!(!shift.is_idempotent());
        assert_eq!(shift.compose(&shift).unwrap().values(), &[0, 0, 0]);

        let collapse = MonotoneMap::new(&c, vec![0, 0, 0]).unwrap();
        assert!(collapse.is_idempotent());
        assert_eq!(collapse.image(), ElementSet::singleton(0));
        assert_eq!(collapse.image(), collapse.fixed_points());
    }

    #[test]
    fn retractions() {
        let p = example_3_1();
        let id = MonotoneMap::identity(&p);
        assert!(id.is_retraction_onto(p.all()));
        let r = MonotoneMap::from_label_moves(&p, &[("B", "D"), ("C", "D"), ("A", "D")]).unwrap();
        assert!(r.is_retraction_onto(p.set_of_labels(&["D", "E", "F"]).unwrap()));
        assert!(!r.is_retraction_onto(p.set_of_labels(&["B", "D", "E", "F"]).unwrap()));

        assert!(id.is_strong_deformation_retraction());
        let f = MonotoneMap::from_label_moves(&p, &[("B", "D")]).unwrap();
        assert!(f.is_strong_deformation_retraction());
        let c = chain3();
        assert!(!MonotoneMap::new(&c, vec![0, 0, 1])
            .unwrap()
            .is_strong_deformation_retraction());
    }

    #[test]
    fn fences() {
        let c = chain3();
        let id = MonotoneMap::identity(&c);
        let fence = fence_homotopic(&id, &id, 1).unwrap().unwrap();
        assert_eq!(fence.len(), 1);

        let low = MonotoneMap::new(&c, vec![0, 0, 0]).unwrap();
        let fence = fence_homotopic(&low, &id, 1).unwrap().unwrap();
        assert_eq!(fence, vec![low.clone(), id.clone()]);

        let circle = pseudo_circle();
        let id = MonotoneMap::identity(&circle);
        let maps = monotone_maps(&circle, FENCE_BUDGET).unwrap();
        assert!(maps.len() > 1);
        for f in maps.iter().filter(|f| !f.is_identity()) {
            assert!(fence_homotopic(f, &id, 8).unwrap().is_none(), "{f:?}");
        }
    }

    #[test]
    fn fence_alternates_direction() {
        // Two constant maps on a V-shape are joined through the top.
        let v = Poset::from_relations(&["a", "b", "t"], &[("a", "t"), ("b", "t")]).unwrap();
        let ca = MonotoneMap::new(&v, vec![0, 0, 0]).unwrap();
        let cb = MonotoneMap::new(&v, vec![1, 1, 1]).unwrap();
        assert!(fence_homotopic(&ca, &cb, 1).unwrap().is_none());
        let fence = fence_homotopic(&ca, &cb, 2).unwrap().unwrap();
        assert_eq!(fence.len(), 3);
        for w in fence.windows(2) {
            assert!(w[0].pointwise_leq(&w[1]).unwrap() || w[1].pointwise_leq(&w[0]).unwrap());
        }
    }

    #[test]
    fn monotone_map_count_on_chain() {
        // Order-preserving self-maps of an n-chain: C(2n-1, n).
        let c = chain3();
        assert_eq!(monotone_maps(&c, 1000).unwrap().len(), 10);
        assert!(matches!(monotone_maps(&c, 9), Err(Error::SizeLimit { .. })));
    }
}
