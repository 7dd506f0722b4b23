//! Finite posets, read as finite T0 spaces.
//!
//! Elements are dense indices `0..n` with a label table. The order is stored
//! as bitsets: `down[x]` is the minimal open set `U_x = {y : y <= x}` and
//! `up[x]` is the closure `F_x = {y : y >= x}`. Open sets of the space are
//! exactly the lower sets.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::set::{ElementSet, MAX_ELEMENTS};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Default bound for [`is_isomorphic`].
pub const ISOMORPHISM_LIMIT: usize = 16;

#[derive(Clone)]
pub struct Poset {
    id: u64,
    labels: Vec<String>,
    down: Vec<ElementSet>,
    up: Vec<ElementSet>,
    lower_covers: Vec<ElementSet>,
    upper_covers: Vec<ElementSet>,
    covers: Vec<(usize, usize)>,
    heights: Vec<usize>,
    linear: Vec<usize>,
}

impl Poset {
    /// Builds a poset from labels and strict relations `(lesser, greater)`
    /// given by name. Any strict pairs are accepted; the reflexive-transitive
    /// closure is taken.
    pub fn from_relations<S, T>(labels: &[S], pairs: &[(T, T)]) -> Result<Poset>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_ref(), i).is_some() {
                return Err(Error::DuplicateLabel(l.as_ref().to_string()));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(name.to_string()))
        };
        let idx_pairs = pairs
            .iter()
            .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        let labels = labels.iter().map(|l| l.as_ref().to_string()).collect();
        Poset::from_index_pairs(labels, &idx_pairs)
    }

    /// Same as [`Poset::from_relations`] with pairs given by index.
    pub fn from_index_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(Error::SizeLimit {
                what: "poset",
                size: n,
                limit: MAX_ELEMENTS,
            });
        }
        {
            let mut seen = std::collections::HashSet::with_capacity(n);
            for l in &labels {
                if !seen.insert(l.as_str()) {
                    return Err(Error::DuplicateLabel(l.clone()));
                }
            }
        }
        let mut down: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownLabel(format!("#{}", a.max(b))));
            }
            if a == b {
                return Err(Error::Cycle(labels[a].clone(), labels[b].clone()));
            }
            down[b].insert(a);
        }
        // Warshall on bitsets.
        for k in 0..n {
            let dk = down[k];
            for d in down.iter_mut() {
                if d.contains(k) {
                    *d = d.union(dk);
                }
            }
        }
        for y in 0..n {
            for x in down[y].without(y) {
                if down[x].contains(y) {
                    let (a, b) = if x < y { (x, y) } else { (y, x) };
                    return Err(Error::Cycle(labels[a].clone(), labels[b].clone()));
                }
            }
        }
        Ok(Poset::from_down_sets(labels, down))
    }

    /// Assembles a poset from already closed, antisymmetric down-sets.
    fn from_down_sets(labels: Vec<String>, down: Vec<ElementSet>) -> Poset {
        let n = labels.len();
        let mut up = vec![ElementSet::EMPTY; n];
        for (y, d) in down.iter().enumerate() {
            for x in d.iter() {
                up[x].insert(y);
            }
        }
        let mut lower_covers = vec![ElementSet::EMPTY; n];
        let mut upper_covers = vec![ElementSet::EMPTY; n];
        let mut covers = Vec::new();
        for y in 0..n {
            let strict = down[y].without(y);
            let mut below_others = ElementSet::EMPTY;
            for z in strict {
                below_others = below_others.union(down[z].without(z));
            }
            lower_covers[y] = strict.difference(below_others);
            for x in lower_covers[y] {
                upper_covers[x].insert(y);
                covers.push((x, y));
            }
        }
        covers.sort_unstable();

        // x < y implies |U_x| < |U_y|, so sorting by down-set size is a
        // linear extension.
        let mut by_size: Vec<usize> = (0..n).collect();
        by_size.sort_by_key(|&x| (down[x].len(), x));
        let mut heights = vec![0usize; n];
        for &y in &by_size {
            heights[y] = lower_covers[y]
                .iter()
                .map(|c| heights[c] + 1)
                .max()
                .unwrap_or(0);
        }
        let mut linear: Vec<usize> = (0..n).collect();
        linear.sort_by_key(|&x| (heights[x], x));

        Poset {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            labels,
            down,
            up,
            lower_covers,
            upper_covers,
            covers,
            heights,
            linear,
        }
    }

    pub fn antichain_of(labels: Vec<String>) -> Result<Poset> {
        Poset::from_index_pairs(labels, &[])
    }

    /// Identity token shared by clones; used to reject maps from another poset.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `x <= y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    /// `x < y`.
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Cover pairs `(a, b)` with `a ≺ b`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, x: usize) -> ElementSet {
        self.lower_covers[x]
    }

    pub fn upper_covers(&self, x: usize) -> ElementSet {
        self.upper_covers[x]
    }

    /// `U_x`, the minimal open set containing `x`.
    pub fn down_set(&self, x: usize) -> ElementSet {
        self.down[x]
    }

    /// `F_x`, the closure of `{x}`.
    pub fn up_set(&self, x: usize) -> ElementSet {
        self.up[x]
    }

    pub fn strict_down_set(&self, x: usize) -> ElementSet {
        self.down[x].without(x)
    }

    pub fn strict_up_set(&self, x: usize) -> ElementSet {
        self.up[x].without(x)
    }

    /// Height of `U_x`: the longest chain ending at `x`, minus one.
    pub fn height_of(&self, x: usize) -> usize {
        self.heights[x]
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Height of the whole poset; 0 for the empty poset.
    pub fn height(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    /// Elements ordered by (height, index); a linear extension of the order.
    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    /// The unique top element of `s`, if it has one.
    pub fn maximum_of(&self, s: ElementSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(self.down[m]))
    }

    /// The unique bottom element of `s`, if it has one.
    pub fn minimum_of(&self, s: ElementSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(self.up[m]))
    }

    pub fn maximal_elements(&self, s: ElementSet) -> ElementSet {
        s.iter()
            .filter(|&x| self.strict_up_set(x).is_disjoint(s))
            .collect()
    }

    pub fn minimal_elements(&self, s: ElementSet) -> ElementSet {
        s.iter()
            .filter(|&x| self.strict_down_set(x).is_disjoint(s))
            .collect()
    }

    /// True iff `s` is closed downwards, i.e. open in the space.
    pub fn is_lower_set(&self, s: ElementSet) -> bool {
        s.iter().all(|x| self.down[x].is_subset(s))
    }

    /// Restricts the order to `s`. Returns the subposet and, for each new
    /// index, the index it had in `self`.
    pub fn induced_subposet(&self, s: ElementSet) -> (Poset, Vec<usize>) {
        let map: Vec<usize> = s.intersection(self.all()).iter().collect();
        let mut position = vec![usize::MAX; self.len()];
        for (new, &old) in map.iter().enumerate() {
            position[old] = new;
        }
        let labels = map.iter().map(|&x| self.labels[x].clone()).collect();
        let down = map
            .iter()
            .map(|&x| {
                self.down[x]
                    .intersection(s)
                    .iter()
                    .map(|y| position[y])
                    .collect()
            })
            .collect();
        (Poset::from_down_sets(labels, down), map)
    }

    /// Removes the elements of `s`.
    pub fn without(&self, s: ElementSet) -> (Poset, Vec<usize>) {
        self.induced_subposet(self.all().difference(s))
    }

    /// Formats a set as `{A, B}` using labels.
    pub fn format_set(&self, s: ElementSet) -> String {
        let names: Vec<&str> = s.iter().map(|x| self.label(x)).collect();
        format!("{{{}}}", names.join(", "))
    }

    pub fn set_of_labels(&self, names: &[&str]) -> Result<ElementSet> {
        names
            .iter()
            .map(|n| {
                self.index_of(n)
                    .ok_or_else(|| Error::UnknownLabel(n.to_string()))
            })
            .collect()
    }
}

/// Structural equality: same labels in the same positions and the same order.
impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.down == other.down
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers
            .iter()
            .map(|&(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        f.debug_struct("Poset")
            .field("labels", &self.labels)
            .field("covers", &covers)
            .finish()
    }
}

/// Order-isomorphism test by backtracking with invariant pruning.
pub fn is_isomorphic(p: &Poset, q: &Poset) -> Result<bool> {
    is_isomorphic_with_limit(p, q, ISOMORPHISM_LIMIT)
}

pub fn is_isomorphic_with_limit(p: &Poset, q: &Poset, limit: usize) -> Result<bool> {
    let n = p.len().max(q.len());
    if n > limit {
        return Err(Error::SizeLimit {
            what: "isomorphism",
            size: n,
            limit,
        });
    }
    Ok(find_isomorphism(p, q).is_some())
}

/// An order-isomorphism `p -> q` as an index table, if one exists.
pub fn find_isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    if p.len() != q.len() || p.covers().len() != q.covers().len() {
        return None;
    }
    let signature = |s: &Poset, x: usize| {
        (
            s.height_of(x),
            s.down_set(x).len(),
            s.up_set(x).len(),
            s.lower_covers(x).len(),
            s.upper_covers(x).len(),
        )
    };
    let sig_p: Vec<_> = p.elements().map(|x| signature(p, x)).collect();
    let sig_q: Vec<_> = q.elements().map(|x| signature(q, x)).collect();
    let mut sorted_p = sig_p.clone();
    let mut sorted_q = sig_q.clone();
    sorted_p.sort_unstable();
    sorted_q.sort_unstable();
    if sorted_p != sorted_q {
        return None;
    }

    struct Search<'a> {
        p: &'a Poset,
        q: &'a Poset,
        sig_p: &'a [(usize, usize, usize, usize, usize)],
        sig_q: &'a [(usize, usize, usize, usize, usize)],
        order: &'a [usize],
        image: Vec<usize>,
        used: ElementSet,
    }

    impl Search<'_> {
        fn extend(&mut self, depth: usize) -> bool {
            let Some(&x) = self.order.get(depth) else {
                return true;
            };
            for y in self.q.elements() {
                if self.used.contains(y) || self.sig_p[x] != self.sig_q[y] {
                    continue;
                }
                let consistent = self.order[..depth].iter().all(|&a| {
                    let b = self.image[a];
                    self.p.leq(a, x) == self.q.leq(b, y) && self.p.leq(x, a) == self.q.leq(y, b)
                });
                if !consistent {
                    continue;
                }
                self.image[x] = y;
                self.used.insert(y);
                if self.extend(depth + 1) {
                    return true;
                }
                self.used.remove(y);
            }
            false
        }
    }

    let mut search = Search {
        p,
        q,
        sig_p: &sig_p,
        sig_q: &sig_q,
        order: p.linear_extension(),
        image: vec![usize::MAX; p.len()],
        used: ElementSet::EMPTY,
    };
    search.extend(0).then_some(search.image)
}
