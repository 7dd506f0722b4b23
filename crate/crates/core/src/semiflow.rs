//! Semiflows on finite spaces and their enumeration.
//!
//! A semiflow `φ` on a finite T0 space is determined by one map: `φ_0` is the
//! identity and `φ_t = r` for every `t > 0`, where `r` is monotone,
//! idempotent and below the identity. Conversely every such `r` gives a
//! semiflow: the semigroup law reduces to `r∘r = r`, and continuity at
//! `t = 0` holds because `r(U_x) ⊆ U_x` when `r <= id`. So [`Semiflow`]
//! stores `r` alone, and counting semiflows is counting those maps.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::MonotoneMap;
use crate::poset::Poset;
use crate::reduction::{
    down_beat_points, down_cover, explore_potential, HeightOrder, PotentialPoints, POTENTIAL_LIMIT,
};
use crate::rng::XorShift64Star;
use crate::set::ElementSet;

/// Default bound for [`enumerate_semiflows`].
pub const ENUMERATION_LIMIT: usize = 14;
/// Default bound for [`brute_force_oracle`].
pub const ORACLE_LIMIT: usize = 10;
/// Environment variable capping enumeration worker threads.
pub const THREADS_ENV: &str = "FINFLOW_THREADS";

/// A semiflow in canonical form: the map `r = φ_t` shared by all `t > 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct Semiflow<'p> {
    r: MonotoneMap<'p>,
}

impl<'p> Semiflow<'p> {
    pub fn new(r: MonotoneMap<'p>) -> Result<Self> {
        if !r.below_identity() {
            return Err(Error::NotSemiflow(format!(
                "{} is not below the identity",
                r.describe()
            )));
        }
        if !r.is_idempotent() {
            return Err(Error::NotSemiflow(format!(
                "{} is not idempotent",
                r.describe()
            )));
        }
        Ok(Semiflow { r })
    }

    pub fn trivial(p: &'p Poset) -> Self {
        Semiflow {
            r: MonotoneMap::identity(p),
        }
    }

    pub fn space(&self) -> &'p Poset {
        self.r.poset()
    }

    pub fn retraction(&self) -> &MonotoneMap<'p> {
        &self.r
    }

    pub fn is_trivial(&self) -> bool {
        self.r.is_identity()
    }

    /// `φ(t, x)`.
    pub fn evaluate(&self, t: f64, x: usize) -> Result<usize> {
        check_time(t)?;
        Ok(if t == 0.0 { x } else { self.r.apply(x) })
    }

    /// `φ_t` as a map.
    pub fn at_time(&self, t: f64) -> Result<MonotoneMap<'p>> {
        check_time(t)?;
        Ok(if t == 0.0 {
            MonotoneMap::identity(self.space())
        } else {
            self.r.clone()
        })
    }

    pub fn describe(&self) -> String {
        self.r.describe()
    }
}

impl fmt::Debug for Semiflow<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Semiflow({})", self.r.describe())
    }
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 {
        Ok(())
    } else {
        Err(Error::NegativeTime(t))
    }
}

/// Anything that can be evaluated as a candidate dynamical system on a
/// finite space, whether or not it satisfies the semiflow axioms.
pub trait TimeEvolution {
    fn space(&self) -> &Poset;
    /// State at time `t >= 0` starting from `x`.
    fn state_at(&self, t: f64, x: usize) -> usize;
}

impl TimeEvolution for Semiflow<'_> {
    fn space(&self) -> &Poset {
        self.r.poset()
    }

    fn state_at(&self, t: f64, x: usize) -> usize {
        if t == 0.0 {
            x
        } else {
            self.r.apply(x)
        }
    }
}

/// The identity at `t = 0` and an arbitrary map for `t > 0`, with no checks.
#[derive(Debug, Clone)]
pub struct StepRule<'p> {
    pub map: MonotoneMap<'p>,
}

impl TimeEvolution for StepRule<'_> {
    fn space(&self) -> &Poset {
        self.map.poset()
    }

    fn state_at(&self, t: f64, x: usize) -> usize {
        if t == 0.0 {
            x
        } else {
            self.map.apply(x)
        }
    }
}

/// Sampled check of `φ(s, φ(t, x)) = φ(s + t, x)` over every point.
///
/// The boundary pairs `(0, 0)`, `(0, u)`, `(u, 0)` and `(u, u)` are always
/// included, followed by `sample_count` random positive pairs.
pub fn semigroup_law_check<E: TimeEvolution + ?Sized>(
    flow: &E,
    sample_count: usize,
    seed: u64,
) -> bool {
    sample_time_pairs(sample_count, seed)
        .into_iter()
        .all(|(s, t)| {
            flow.space()
                .elements()
                .all(|x| flow.state_at(s, flow.state_at(t, x)) == flow.state_at(s + t, x))
        })
}

/// Boundary pairs followed by `count` random pairs of positive reals.
pub fn sample_time_pairs(count: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = XorShift64Star::new(seed);
    let mut positive = move || 1e-3 + 10.0 * rng.next_f64();
    let u = positive();
    let mut pairs = vec![(0.0, 0.0), (0.0, u), (u, 0.0), (u, u)];
    for _ in 0..count {
        let s = positive();
        let t = positive();
        pairs.push((s, t));
    }
    pairs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub limit: usize,
    /// Worker threads; `None` reads `FINFLOW_THREADS`, falling back to the
    /// rayon default.
    pub threads: Option<usize>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            limit: ENUMERATION_LIMIT,
            threads: None,
        }
    }
}

impl EnumerateOptions {
    pub fn with_threads(threads: usize) -> Self {
        EnumerateOptions {
            threads: Some(threads.max(1)),
            ..Default::default()
        }
    }

    fn resolved_threads(&self) -> usize {
        self.threads
            .or_else(|| {
                std::env::var(THREADS_ENV)
                    .ok()
                    .and_then(|v| v.trim().parse().ok())
            })
            .unwrap_or_else(rayon::current_num_threads)
            .max(1)
    }
}

/// Partial assignment along the linear extension.
#[derive(Clone)]
struct Partial {
    depth: usize,
    values: Vec<usize>,
    fixed: ElementSet,
}

struct Enumerator<'a> {
    p: &'a Poset,
    order: &'a [usize],
}

impl Enumerator<'_> {
    /// Admissible values of `r(x)`: `x` itself or an already fixed point
    /// below it, above the images of every lower cover.
    fn candidates(&self, x: usize, part: &Partial) -> ElementSet {
        let mut c = self.p.strict_down_set(x).intersection(part.fixed).with(x);
        for y in self.p.lower_covers(x) {
            c = c.intersection(self.p.up_set(part.values[y]));
        }
        c
    }

    fn children(&self, part: &Partial) -> Vec<Partial> {
        let x = self.order[part.depth];
        self.candidates(x, part)
            .iter()
            .map(|y| {
                let mut child = part.clone();
                child.values[x] = y;
                if y == x {
                    child.fixed.insert(x);
                }
                child.depth += 1;
                child
            })
            .collect()
    }

    fn complete(&self, part: &mut Partial, out: &mut Vec<Vec<usize>>) {
        if part.depth == self.order.len() {
            out.push(part.values.clone());
            return;
        }
        let x = self.order[part.depth];
        for y in self.candidates(x, part) {
            part.values[x] = y;
            let was_fixed = part.fixed;
            if y == x {
                part.fixed.insert(x);
            }
            part.depth += 1;
            self.complete(part, out);
            part.depth -= 1;
            part.fixed = was_fixed;
        }
        part.values[x] = usize::MAX;
    }
}

/// Every idempotent monotone `r <= id`, as raw value tables in lexicographic
/// order.
fn enumerate_retractions(p: &Poset, opts: &EnumerateOptions) -> Result<Vec<Vec<usize>>> {
    if p.len() > opts.limit {
        return Err(Error::SizeLimit {
            what: "semiflow enumeration",
            size: p.len(),
            limit: opts.limit,
        });
    }
    let en = Enumerator {
        p,
        order: p.linear_extension(),
    };
    let root = Partial {
        depth: 0,
        values: vec![usize::MAX; p.len()],
        fixed: ElementSet::EMPTY,
    };
    let threads = opts.resolved_threads();
    let mut out = Vec::new();
    if threads <= 1 || p.len() < 4 {
        en.complete(&mut root.clone(), &mut out);
    } else {
        // Split into enough independent subtrees to keep workers busy.
        let mut frontier = vec![root];
        let mut done = Vec::new();
        while frontier.len() < 8 * threads && !frontier.is_empty() {
            let mut next = Vec::new();
            for part in &frontier {
                if part.depth == p.len() {
                    done.push(part.values.clone());
                } else {
                    next.extend(en.children(part));
                }
            }
            frontier = next;
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        let parts: Vec<Vec<Vec<usize>>> = pool.install(|| {
            frontier
                .into_par_iter()
                .map(|mut part| {
                    let mut local = Vec::new();
                    en.complete(&mut part, &mut local);
                    local
                })
                .collect()
        });
        out = done;
        out.extend(parts.into_iter().flatten());
    }
    out.sort_unstable();
    Ok(out)
}

/// All semiflows on `p`, trivial included, in lexicographic order of `r`.
pub fn enumerate_semiflows(p: &Poset) -> Result<Vec<Semiflow<'_>>> {
    enumerate_semiflows_with(p, &EnumerateOptions::default())
}

pub fn enumerate_semiflows_with<'p>(
    p: &'p Poset,
    opts: &EnumerateOptions,
) -> Result<Vec<Semiflow<'p>>> {
    Ok(enumerate_retractions(p, opts)?
        .into_iter()
        .map(|values| Semiflow {
            r: MonotoneMap::new_unchecked(p, values),
        })
        .collect())
}

/// Independent oracle: scans the full product `∏ U_x` and keeps the maps
/// that are order preserving on every comparable pair and idempotent.
pub fn brute_force_oracle(p: &Poset) -> Result<Vec<MonotoneMap<'_>>> {
    brute_force_oracle_with_limit(p, ORACLE_LIMIT)
}

pub fn brute_force_oracle_with_limit(p: &Poset, limit: usize) -> Result<Vec<MonotoneMap<'_>>> {
    let n = p.len();
    if n > limit {
        return Err(Error::SizeLimit {
            what: "brute-force oracle",
            size: n,
            limit,
        });
    }
    let choices: Vec<Vec<usize>> = p
        .elements()
        .map(|x| p.down_set(x).iter().collect())
        .collect();
    let mut digits = vec![0usize; n];
    let mut found = Vec::new();
    loop {
        let values: Vec<usize> = (0..n).map(|x| choices[x][digits[x]]).collect();
        let monotone = (0..n).all(|x| (0..n).all(|y| !p.leq(x, y) || p.leq(values[x], values[y])));
        let idempotent = (0..n).all(|x| values[values[x]] == values[x]);
        if monotone && idempotent {
            found.push(values);
        }
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == n {
                found.sort_unstable();
                return Ok(found
                    .into_iter()
                    .map(|v| MonotoneMap::new(p, v).expect("oracle keeps monotone maps"))
                    .collect());
            }
            digits[i] += 1;
            if digits[i] < choices[i].len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// The map `x ↦ x̄` on every down beat point at once, when that is a
/// semiflow. It fails to be idempotent as soon as some `x̄` is itself a down
/// beat point.
pub fn natural_semiflow(p: &Poset) -> Result<Semiflow<'_>> {
    let d = down_beat_points(p);
    if d.is_empty() {
        return Err(Error::NotSemiflow(
            "the space has no down beat points".into(),
        ));
    }
    let mut values: Vec<usize> = p.elements().collect();
    for x in d {
        values[x] = down_cover(p, x).expect("down beat point");
    }
    Semiflow::new(MonotoneMap::new(p, values)?)
}

/// Largest set of potential down beat points among `candidates` whose down
/// sets are pairwise disjoint (hence pairwise incomparable). Ties resolve to
/// the lexicographically first set.
pub fn max_disjoint_antichain_of(p: &Poset, candidates: ElementSet) -> ElementSet {
    let pts: Vec<usize> = candidates.iter().collect();
    let mut best = ElementSet::EMPTY;

    fn go(
        p: &Poset,
        pts: &[usize],
        i: usize,
        chosen: ElementSet,
        covered: ElementSet,
        best: &mut ElementSet,
    ) {
        if chosen.len() + (pts.len() - i) <= best.len() {
            return;
        }
        let Some(&x) = pts.get(i) else {
            *best = chosen;
            return;
        };
        if p.down_set(x).is_disjoint(covered) {
            go(
                p,
                pts,
                i + 1,
                chosen.with(x),
                covered.union(p.down_set(x)),
                best,
            );
        }
        go(p, pts, i + 1, chosen, covered, best);
    }

    go(p, &pts, 0, ElementSet::EMPTY, ElementSet::EMPTY, &mut best);
    best
}

pub fn max_disjoint_antichain(p: &Poset) -> Result<ElementSet> {
    let potential = explore_potential(p, HeightOrder::NonDecreasing, POTENTIAL_LIMIT)?;
    Ok(max_disjoint_antichain_of(p, potential.points))
}

/// One evaluated counting claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub satisfied: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub s_f: u64,
    pub nontrivial: u64,
    pub d_size: usize,
    pub potential: usize,
    pub bounds_checked: Vec<ClaimCheck>,
}

pub const CLAIM_EMPTINESS: &str = "D(X) empty iff S_F(X) = 1";
pub const CLAIM_DOWN_BEAT_BOUND: &str = "S_F(X) >= 2^|D(X)|";
pub const CLAIM_ANTICHAIN_BOUND: &str = "S_F(X) >= 2^|A|";
pub const CLAIM_HEIGHT_ONE: &str = "height-1 potential points give S_F(X) = 2^n";
pub const CLAIM_MOVABILITY: &str = "movable points = potential down beat points";
pub const CLAIM_FORCED_MOVE: &str = "a moved non-down-beat point has a moved down beat point below";

/// Everything the counting results need, computed once.
pub struct Analysis<'p> {
    pub poset: &'p Poset,
    pub semiflows: Vec<Semiflow<'p>>,
    pub down_beats: ElementSet,
    pub potential: PotentialPoints,
    pub antichain: ElementSet,
}

impl<'p> Analysis<'p> {
    pub fn new(p: &'p Poset) -> Result<Self> {
        Analysis::with_options(p, &EnumerateOptions::default())
    }

    pub fn with_options(p: &'p Poset, opts: &EnumerateOptions) -> Result<Self> {
        let semiflows = enumerate_semiflows_with(p, opts)?;
        let potential = explore_potential(p, HeightOrder::NonDecreasing, POTENTIAL_LIMIT)?;
        let antichain = max_disjoint_antichain_of(p, potential.points);
        Ok(Analysis {
            poset: p,
            semiflows,
            down_beats: down_beat_points(p),
            potential,
            antichain,
        })
    }

    pub fn s_f(&self) -> u64 {
        self.semiflows.len() as u64
    }

    pub fn movable_points(&self) -> ElementSet {
        self.semiflows
            .iter()
            .fold(ElementSet::EMPTY, |acc, sf| acc.union(sf.r.moved_points()))
    }

    pub fn claims(&self) -> Vec<ClaimCheck> {
        let p = self.poset;
        let s_f = self.s_f();
        let d = self.down_beats.len();
        let mut out = Vec::new();
        let mut push = |claim: &str, satisfied: bool, detail: String| {
            out.push(ClaimCheck {
                claim: claim.to_string(),
                satisfied,
                detail,
            })
        };

        push(
            CLAIM_EMPTINESS,
            (d == 0) == (s_f == 1),
            format!("|D| = {d}, S_F = {s_f}"),
        );
        push(
            CLAIM_DOWN_BEAT_BOUND,
            power_of_two_at_most(d, s_f),
            format!("{s_f} >= 2^{d}"),
        );
        let a = self.antichain.len();
        push(
            CLAIM_ANTICHAIN_BOUND,
            power_of_two_at_most(a, s_f),
            format!("A = {}, {s_f} >= 2^{a}", p.format_set(self.antichain)),
        );

        let pts = self.potential.points;
        if pts.iter().all(|x| p.height_of(x) == 1) {
            let n = pts.len();
            let ok = n < 64 && s_f == 1u64 << n;
            push(CLAIM_HEIGHT_ONE, ok, format!("S_F = {s_f}, 2^{n}"));
        } else {
            push(
                CLAIM_HEIGHT_ONE,
                true,
                "not applicable: some potential point has height != 1".into(),
            );
        }

        let movable = self.movable_points();
        push(
            CLAIM_MOVABILITY,
            movable == pts,
            if movable == pts {
                format!("both {}", p.format_set(pts))
            } else {
                format!(
                    "movable {} vs potential {}",
                    p.format_set(movable),
                    p.format_set(pts)
                )
            },
        );

        let violation = self.semiflows.iter().find_map(|sf| {
            let moved = sf.r.moved_points();
            moved
                .difference(self.down_beats)
                .iter()
                .find(|&x| {
                    moved
                        .intersection(self.down_beats)
                        .intersection(p.strict_down_set(x))
                        .is_empty()
                })
                .map(|x| (sf.describe(), x))
        });
        match violation {
            None => push(
                CLAIM_FORCED_MOVE,
                true,
                format!("checked {} semiflows", self.semiflows.len()),
            ),
            Some((map, x)) => push(
                CLAIM_FORCED_MOVE,
                false,
                format!("semiflow {map} moves {} alone", p.label(x)),
            ),
        }
        out
    }

    pub fn count_report(&self) -> CountReport {
        let s_f = self.s_f();
        CountReport {
            s_f,
            nontrivial: s_f - 1,
            d_size: self.down_beats.len(),
            potential: self.potential.points.len(),
            bounds_checked: self.claims(),
        }
    }

    /// No non-trivial `r` is invertible, so none extends to negative time.
    pub fn flow_triviality(&self) -> bool {
        self.semiflows
            .iter()
            .filter(|sf| !sf.is_trivial())
            .all(|sf| !sf.r.is_bijective())
    }
}

fn power_of_two_at_most(exp: usize, value: u64) -> bool {
    exp < 64 && 1u64 << exp <= value
}

pub fn count_semiflows(p: &Poset) -> Result<CountReport> {
    Ok(Analysis::new(p)?.count_report())
}

/// Points moved by at least one semiflow.
pub fn movable_points(p: &Poset) -> Result<ElementSet> {
    Ok(enumerate_semiflows(p)?
        .iter()
        .fold(ElementSet::EMPTY, |acc, sf| acc.union(sf.r.moved_points())))
}

pub fn verify_counting_results(p: &Poset) -> Result<Vec<ClaimCheck>> {
    Ok(Analysis::new(p)?.claims())
}

pub fn assert_flow_triviality(p: &Poset) -> Result<bool> {
    Ok(enumerate_semiflows(p)?
        .iter()
        .filter(|sf| !sf.is_trivial())
        .all(|sf| !sf.r.is_bijective()))
}
