//! Structural checks run by `verify` on top of the counting claims.

use crate::error::Result;
use crate::reduction::{core, is_minimal_space, retraction_from_sequence};
use crate::semiflow::{
    brute_force_oracle_with_limit, sample_time_pairs, semigroup_law_check, Analysis, ClaimCheck,
    ORACLE_LIMIT,
};

pub const CHECK_SEMIGROUP: &str = "semigroup law on sampled times";
pub const CHECK_ORBIT: &str = "phi(t, x) stays in U_x";
pub const CHECK_FLOOR: &str = "height-0 points are fixed";
pub const CHECK_TIME_MONOTONE: &str = "phi_t <= phi_s for s < t";
pub const CHECK_FLOWS: &str = "non-trivial semiflows are not invertible";
pub const CHECK_CORE: &str = "core has no beat points";
pub const CHECK_WITNESSES: &str = "witness retractions are strong deformation retractions";
pub const CHECK_ORACLE: &str = "enumerator agrees with brute-force oracle";

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub samples: usize,
    pub seed: u64,
    pub oracle_limit: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            samples: 20,
            seed: 0x5EED,
            oracle_limit: ORACLE_LIMIT,
        }
    }
}

fn check(claim: &str, failure: Option<String>, ok_detail: String) -> ClaimCheck {
    ClaimCheck {
        claim: claim.to_string(),
        satisfied: failure.is_none(),
        detail: failure.unwrap_or(ok_detail),
    }
}

pub fn invariant_checks(a: &Analysis<'_>, opts: &CheckOptions) -> Result<Vec<ClaimCheck>> {
    let p = a.poset;
    let sfs = &a.semiflows;
    let count = format!("{} semiflows", sfs.len());
    let times = sample_time_pairs(opts.samples, opts.seed);
    let mut out = Vec::new();

    let bad = sfs
        .iter()
        .find(|sf| !semigroup_law_check(*sf, opts.samples, opts.seed));
    out.push(check(
        CHECK_SEMIGROUP,
        bad.map(|sf| format!("fails for {}", sf.describe())),
        count.clone(),
    ));

    let mut orbit_fail = None;
    let mut floor_fail = None;
    let mut mono_fail = None;
    for sf in sfs {
        for &(s, t) in &times {
            for time in [s, t] {
                for x in p.elements() {
                    let y = sf.evaluate(time, x)?;
                    if orbit_fail.is_none() && !p.leq(y, x) {
                        orbit_fail = Some(format!(
                            "{} sends {} outside U_x",
                            sf.describe(),
                            p.label(x)
                        ));
                    }
                    if floor_fail.is_none() && p.height_of(x) == 0 && y != x {
                        floor_fail = Some(format!("{} moves {}", sf.describe(), p.label(x)));
                    }
                }
            }
            let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
            if lo < hi && mono_fail.is_none() {
                let later = sf.at_time(hi)?;
                let earlier = sf.at_time(lo)?;
                if !later.pointwise_leq(&earlier)? {
                    mono_fail = Some(format!("{} at s={lo}, t={hi}", sf.describe()));
                }
            }
        }
    }
    out.push(check(CHECK_ORBIT, orbit_fail, count.clone()));
    out.push(check(CHECK_FLOOR, floor_fail, count.clone()));
    out.push(check(CHECK_TIME_MONOTONE, mono_fail, count.clone()));

    let flows = a.flow_triviality();
    out.push(check(
        CHECK_FLOWS,
        (!flows).then(|| "some non-trivial r is a bijection".to_string()),
        count.clone(),
    ));

    let c = core(p);
    out.push(check(
        CHECK_CORE,
        (!is_minimal_space(&c.poset)).then(|| "core still has beat points".to_string()),
        format!("core has {} points", c.poset.len()),
    ));

    let mut witness_fail = None;
    for seq in a.potential.witnesses.iter().flatten() {
        match retraction_from_sequence(p, seq) {
            Ok(r) if r.is_strong_deformation_retraction() => {}
            Ok(r) => {
                witness_fail = Some(format!("{} is not a deformation retraction", r.describe()));
                break;
            }
            Err(e) => {
                witness_fail = Some(e.to_string());
                break;
            }
        }
    }
    out.push(check(
        CHECK_WITNESSES,
        witness_fail,
        format!("{} witnesses", a.potential.points.len()),
    ));

    if p.len() <= opts.oracle_limit {
        let oracle = brute_force_oracle_with_limit(p, opts.oracle_limit)?;
        let ours: Vec<&[usize]> = sfs.iter().map(|sf| sf.retraction().values()).collect();
        let theirs: Vec<&[usize]> = oracle.iter().map(|m| m.values()).collect();
        out.push(check(
            CHECK_ORACLE,
            (ours != theirs).then(|| {
                format!(
                    "enumerator found {}, oracle found {}",
                    ours.len(),
                    theirs.len()
                )
            }),
            format!("{} maps", ours.len()),
        ));
    } else {
        out.push(check(
            CHECK_ORACLE,
            None,
            format!("skipped: {} points exceed the oracle limit", p.len()),
        ));
    }
    Ok(out)
}
