//! Beat points, cores, and potential down beat points.
//!
//! A point `x` is a down beat point when `U_x \ {x}` has a maximum, written
//! `x̄`, and an up beat point when `F_x \ {x}` has a minimum. Deleting a beat
//! point leaves a strong deformation retract; deleting them until none are
//! left yields the core.
//!
//! A potential down beat point is the last point of a removal sequence:
//! each point is a down beat point of what remains after the earlier ones
//! are deleted, and heights (measured in the original space) never go down
//! along the sequence.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::MonotoneMap;
use crate::poset::Poset;
use crate::set::ElementSet;

/// Default bound on poset size for the removal-sequence search.
pub const POTENTIAL_LIMIT: usize = 22;

/// The maximum of `U_x \ {x}` inside the subspace `alive`, if `x` is a down
/// beat point there.
pub fn down_cover_within(p: &Poset, alive: ElementSet, x: usize) -> Option<usize> {
    let strict = p.strict_down_set(x).intersection(alive);
    if strict.is_empty() {
        None
    } else {
        p.maximum_of(strict)
    }
}

/// The minimum of `F_x \ {x}` inside `alive`, if `x` is an up beat point there.
pub fn up_cover_within(p: &Poset, alive: ElementSet, x: usize) -> Option<usize> {
    let strict = p.strict_up_set(x).intersection(alive);
    if strict.is_empty() {
        None
    } else {
        p.minimum_of(strict)
    }
}

/// `x̄`, the maximum of `U_x \ {x}`, when `x` is a down beat point.
pub fn down_cover(p: &Poset, x: usize) -> Option<usize> {
    down_cover_within(p, p.all(), x)
}

pub fn up_cover(p: &Poset, x: usize) -> Option<usize> {
    up_cover_within(p, p.all(), x)
}

fn down_beats_within(p: &Poset, alive: ElementSet) -> ElementSet {
    alive
        .iter()
        .filter(|&x| down_cover_within(p, alive, x).is_some())
        .collect()
}

fn up_beats_within(p: &Poset, alive: ElementSet) -> ElementSet {
    alive
        .iter()
        .filter(|&x| up_cover_within(p, alive, x).is_some())
        .collect()
}

/// `D(X)`.
pub fn down_beat_points(p: &Poset) -> ElementSet {
    down_beats_within(p, p.all())
}

pub fn up_beat_points(p: &Poset) -> ElementSet {
    up_beats_within(p, p.all())
}

pub fn beat_points(p: &Poset) -> ElementSet {
    down_beat_points(p).union(up_beat_points(p))
}

pub fn is_minimal_space(p: &Poset) -> bool {
    beat_points(p).is_empty()
}

/// Result of iterated beat point removal.
#[derive(Debug, Clone)]
pub struct Core {
    pub poset: Poset,
    /// Original indices of the surviving points, in order.
    pub kept: Vec<usize>,
    /// Original indices of removed beat points, in removal order.
    pub trace: Vec<usize>,
}

/// Removes beat points one at a time, always the lowest index first.
pub fn core(p: &Poset) -> Core {
    core_by(p, |beats| beats.first().expect("nonempty"))
}

/// Iterated beat point removal where `pick` chooses which of the current
/// beat points (original indices) goes next.
pub fn core_by(p: &Poset, mut pick: impl FnMut(ElementSet) -> usize) -> Core {
    let mut alive = p.all();
    let mut trace = Vec::new();
    loop {
        let beats = down_beats_within(p, alive).union(up_beats_within(p, alive));
        if beats.is_empty() {
            break;
        }
        let x = pick(beats);
        assert!(beats.contains(x), "picked a point that is not a beat point");
        alive.remove(x);
        trace.push(x);
    }
    let (poset, kept) = p.induced_subposet(alive);
    Core { poset, kept, trace }
}

/// How heights may evolve along a removal sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum HeightOrder {
    /// `ht(x_i) <= ht(x_{i+1})`; equal heights allowed.
    #[default]
    NonDecreasing,
    /// `ht(x_i) < ht(x_{i+1})`.
    Strict,
}

impl HeightOrder {
    fn admits(self, last: Option<usize>, next: usize) -> bool {
        match (self, last) {
            (_, None) => true,
            (HeightOrder::NonDecreasing, Some(h)) => h <= next,
            (HeightOrder::Strict, Some(h)) => h < next,
        }
    }
}

/// Ordered deletions `x_1, .., x_n` witnessing that `x_n` is a potential
/// down beat point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovalSequence {
    pub points: Vec<usize>,
    /// `ht(x_i)` in the original space.
    pub heights: Vec<usize>,
    /// `x̄_i`, the maximum of `U_{x_i} \ {x_i}` once `x_1..x_{i-1}` are gone.
    pub bars: Vec<usize>,
}

impl RemovalSequence {
    pub fn empty() -> Self {
        RemovalSequence {
            points: Vec::new(),
            heights: Vec::new(),
            bars: Vec::new(),
        }
    }

    /// Checks the sequence against `p` and recomputes heights and `x̄_i`.
    pub fn from_points(p: &Poset, points: &[usize], order: HeightOrder) -> Result<Self> {
        let mut alive = p.all();
        let mut last = None;
        let mut seq = RemovalSequence::empty();
        for (i, &x) in points.iter().enumerate() {
            if !alive.contains(x) {
                return Err(Error::InvalidSequence(format!(
                    "step {}: point #{x} is absent or repeated",
                    i + 1
                )));
            }
            let h = p.height_of(x);
            if !order.admits(last, h) {
                return Err(Error::InvalidSequence(format!(
                    "step {}: height of {} breaks the height order",
                    i + 1,
                    p.label(x)
                )));
            }
            let bar = down_cover_within(p, alive, x).ok_or_else(|| {
                Error::InvalidSequence(format!(
                    "step {}: {} is not a down beat point of the remaining space",
                    i + 1,
                    p.label(x)
                ))
            })?;
            seq.points.push(x);
            seq.heights.push(h);
            seq.bars.push(bar);
            alive.remove(x);
            last = Some(h);
        }
        Ok(seq)
    }

    pub fn validate(&self, p: &Poset, order: HeightOrder) -> Result<()> {
        let fresh = RemovalSequence::from_points(p, &self.points, order)?;
        if fresh != *self {
            return Err(Error::InvalidSequence(
                "stored heights or maxima do not match the poset".into(),
            ));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.points.last().copied()
    }

    pub fn labels<'a>(&self, p: &'a Poset) -> Vec<&'a str> {
        self.points.iter().map(|&x| p.label(x)).collect()
    }
}

/// Potential down beat points together with one witness per point.
#[derive(Debug, Clone)]
pub struct PotentialPoints {
    pub points: ElementSet,
    /// Indexed by element; `Some` exactly for potential points.
    pub witnesses: Vec<Option<RemovalSequence>>,
}

type State = (u64, usize);

/// Breadth-first search over removal states `(removed set, last height)`.
/// Witnesses are shortest sequences.
pub fn explore_potential(p: &Poset, order: HeightOrder, limit: usize) -> Result<PotentialPoints> {
    if p.len() > limit {
        return Err(Error::SizeLimit {
            what: "potential down beat point search",
            size: p.len(),
            limit,
        });
    }
    // Height is shifted by one so that 0 means "nothing removed yet".
    let start: State = (0, 0);
    let mut parent: HashMap<State, Option<(State, usize)>> = HashMap::new();
    parent.insert(start, None);
    let mut first_reached: Vec<Option<State>> = vec![None; p.len()];
    let mut queue = VecDeque::from([start]);
    let all = p.all();

    while let Some(state) = queue.pop_front() {
        let (removed, shifted) = state;
        let alive = all.difference(ElementSet::from_bits(removed));
        let last = shifted.checked_sub(1);
        for x in alive {
            let h = p.height_of(x);
            if !order.admits(last, h) || down_cover_within(p, alive, x).is_none() {
                continue;
            }
            let next: State = (removed | 1u64 << x, h + 1);
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next, Some((state, x)));
            if first_reached[x].is_none() {
                first_reached[x] = Some(next);
            }
            queue.push_back(next);
        }
    }

    let mut witnesses = vec![None; p.len()];
    let mut points = ElementSet::EMPTY;
    for (y, reached) in first_reached.into_iter().enumerate() {
        let Some(mut state) = reached else { continue };
        let mut path = Vec::new();
        while let Some(Some((prev, x))) = parent.get(&state) {
            path.push(*x);
            state = *prev;
        }
        path.reverse();
        debug_assert_eq!(path.last(), Some(&y));
        let seq = RemovalSequence::from_points(p, &path, order)
            .expect("search only produces valid sequences");
        witnesses[y] = Some(seq);
        points.insert(y);
    }
    Ok(PotentialPoints { points, witnesses })
}

pub fn potential_down_beat_points(p: &Poset) -> Result<ElementSet> {
    Ok(explore_potential(p, HeightOrder::NonDecreasing, POTENTIAL_LIMIT)?.points)
}

pub fn removal_sequence_for(p: &Poset, y: usize) -> Result<Option<RemovalSequence>> {
    let mut found = explore_potential(p, HeightOrder::NonDecreasing, POTENTIAL_LIMIT)?;
    Ok(found.witnesses.swap_remove(y))
}

/// The retraction `r(x_i) = x̄_i`, identity elsewhere.
pub fn retraction_from_sequence<'p>(
    p: &'p Poset,
    seq: &RemovalSequence,
) -> Result<MonotoneMap<'p>> {
    seq.validate(p, HeightOrder::NonDecreasing)?;
    let mut values: Vec<usize> = p.elements().collect();
    for (&x, &bar) in seq.points.iter().zip(&seq.bars) {
        values[x] = bar;
    }
    let r = MonotoneMap::new(p, values).map_err(|e| Error::InvalidSequence(e.to_string()))?;
    if !r.is_strong_deformation_retraction() {
        return Err(Error::InvalidSequence(
            "induced map is not a strong deformation retraction".into(),
        ));
    }
    Ok(r)
}
