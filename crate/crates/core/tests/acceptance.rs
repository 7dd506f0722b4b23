//! The acceptance criteria, one PASS/FAIL line each.
//!
//! Lines go straight to stdout so they show up without `--nocapture`.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use finflow::checks::{
    invariant_checks, CheckOptions, CHECK_FLOOR, CHECK_ORBIT, CHECK_SEMIGROUP, CHECK_TIME_MONOTONE,
};
use finflow::cli::{run_cli, EXIT_OK};
use finflow::corpus::{height_one_corpus, random_corpus, CORPUS_MAX_N, CORPUS_SEED, CORPUS_SIZE};
use finflow::families::{self, GeneratorSpec};
use finflow::io::{parse_poset_json, parse_poset_text, write_poset_json, write_poset_text};
use finflow::reduction::{core, down_beat_points, is_minimal_space, potential_down_beat_points};
use finflow::semiflow::{
    brute_force_oracle, enumerate_semiflows, max_disjoint_antichain, Analysis,
};
use finflow::{MonotoneMap, Poset};

type Outcome = Result<String, String>;

fn corpus() -> Vec<(GeneratorSpec, Poset)> {
    random_corpus(CORPUS_SIZE, CORPUS_MAX_N, CORPUS_SEED)
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{what} took {took:?}, limit {limit:?}"));
    }
    Ok(())
}

fn values_set<'a>(maps: impl Iterator<Item = &'a [usize]>) -> BTreeSet<Vec<usize>> {
    maps.map(<[usize]>::to_vec).collect()
}

fn example_count() -> Outcome {
    let start = Instant::now();
    let p = families::example_3_1();
    let sfs = enumerate_semiflows(&p).map_err(|e| e.to_string())?;
    let oracle = brute_force_oracle(&p).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(1), "enumeration and oracle")?;

    let expected: Vec<&[(&str, &str)]> = vec![
        &[("B", "D")],
        &[("C", "D")],
        &[("B", "D"), ("C", "D")],
        &[("B", "D"), ("C", "D"), ("A", "D")],
        &[("B", "D"), ("A", "C")],
        &[("C", "D"), ("A", "B")],
    ];
    let mut want = BTreeSet::new();
    want.insert(MonotoneMap::identity(&p).values().to_vec());
    for moves in expected {
        let m = MonotoneMap::from_label_moves(&p, moves).map_err(|e| e.to_string())?;
        want.insert(m.values().to_vec());
    }
    let got = values_set(sfs.iter().map(|s| s.retraction().values()));
    let from_oracle = values_set(oracle.iter().map(|m| m.values()));
    let nontrivial = sfs.iter().filter(|s| !s.is_trivial()).count();
    if sfs.len() != 7 || nontrivial != 6 {
        return Err(format!("{} semiflows, {nontrivial} non-trivial", sfs.len()));
    }
    if got != want {
        return Err("enumerated maps differ from the expected list".into());
    }
    if from_oracle != want {
        return Err("oracle maps differ from the expected list".into());
    }
    Ok(format!(
        "7 semiflows, 6 non-trivial, oracle agrees, {:?}",
        start.elapsed()
    ))
}

fn realization_family() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for n in 0..=3 {
        let p = families::x_n(n);
        let sfs = enumerate_semiflows(&p).map_err(|e| e.to_string())?;
        if sfs.len() != n + 2 {
            return Err(format!("x_n({n}): S_F = {}, want {}", sfs.len(), n + 2));
        }
        let x0 = p.index_of("x0").ok_or("no x0")?;
        let d = down_beat_points(&p);
        if d.len() != 1 || !d.contains(x0) {
            return Err(format!("x_n({n}): D = {}", p.format_set(d)));
        }
        let want: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
        let want: Vec<&str> = want.iter().map(String::as_str).collect();
        let want = p.set_of_labels(&want).map_err(|e| e.to_string())?;
        let pot = potential_down_beat_points(&p).map_err(|e| e.to_string())?;
        if pot != want {
            return Err(format!("x_n({n}): potential = {}", p.format_set(pot)));
        }
        counts.push(sfs.len());
    }
    within(start, Duration::from_secs(5), "family")?;
    Ok(format!(
        "S_F = {counts:?} for n = 0..3, {:?}",
        start.elapsed()
    ))
}

fn minimal_triviality() -> Outcome {
    let circle = families::pseudo_circle();
    let ex = families::example_2_5();
    let e = ex.set_of_labels(&["E"]).map_err(|e| e.to_string())?;
    let (reduced, _) = ex.without(e);
    for (name, p) in [("pseudo-circle", &circle), ("example minus E", &reduced)] {
        if !is_minimal_space(p) {
            return Err(format!("{name} is not minimal"));
        }
        let n = enumerate_semiflows(p).map_err(|e| e.to_string())?.len();
        if n != 1 {
            return Err(format!("{name}: S_F = {n}"));
        }
    }
    Ok("S_F = 1 on both minimal spaces".into())
}

fn emptiness(analyses: &[Analysis<'_>], took: Duration) -> Outcome {
    if took > Duration::from_secs(60) {
        return Err(format!("corpus analysis took {took:?}"));
    }
    let bad = analyses
        .iter()
        .filter(|a| a.down_beats.is_empty() != (a.s_f() == 1))
        .count();
    if bad > 0 {
        return Err(format!("{bad} violations"));
    }
    let empty = analyses.iter().filter(|a| a.down_beats.is_empty()).count();
    Ok(format!(
        "{} posets, {empty} with D empty, 0 violations, {took:?}",
        analyses.len()
    ))
}

fn lower_bounds(analyses: &[Analysis<'_>]) -> Outcome {
    for a in analyses {
        let s = a.s_f();
        if s < 1u64 << a.down_beats.len() {
            return Err(format!("S_F = {s} < 2^{}", a.down_beats.len()));
        }
        let anti = max_disjoint_antichain(a.poset).map_err(|e| e.to_string())?;
        if s < 1u64 << anti.len() {
            return Err(format!("S_F = {s} < 2^|A| with |A| = {}", anti.len()));
        }
    }
    let chain = families::chain(3);
    let s = enumerate_semiflows(&chain)
        .map_err(|e| e.to_string())?
        .len();
    let d = down_beat_points(&chain).len();
    if s != 4 || d != 2 {
        return Err(format!("3-chain: S_F = {s}, |D| = {d}"));
    }
    Ok(format!(
        "{} posets, 0 violations; 3-chain S_F = 4 = 2^2",
        analyses.len()
    ))
}

fn height_one() -> Outcome {
    let posets = height_one_corpus(100, 9, CORPUS_SEED);
    for p in &posets {
        let d = down_beat_points(p).len();
        let s = enumerate_semiflows(p).map_err(|e| e.to_string())?.len();
        if s != 1 << d {
            return Err(format!("S_F = {s}, 2^{d} = {}", 1 << d));
        }
    }
    Ok(format!("{} posets, S_F = 2^|D| exactly", posets.len()))
}

fn movability(analyses: &[Analysis<'_>]) -> Outcome {
    let bad = analyses
        .iter()
        .filter(|a| a.movable_points() != a.potential.points)
        .count();
    if bad > 0 {
        return Err(format!("{bad} violations"));
    }
    Ok(format!("{} posets, 0 violations", analyses.len()))
}

fn forced_move(analyses: &[Analysis<'_>]) -> Outcome {
    let mut checked = 0;
    for a in analyses {
        let p = a.poset;
        for sf in a.semiflows.iter().filter(|s| !s.is_trivial()) {
            checked += 1;
            let moved = sf.retraction().moved_points();
            for x in moved.difference(a.down_beats).iter() {
                let witness = moved
                    .intersection(a.down_beats)
                    .intersection(p.strict_down_set(x));
                if witness.is_empty() {
                    return Err(format!("{} moves {} alone", sf.describe(), p.label(x)));
                }
            }
        }
    }
    Ok(format!("{checked} non-trivial semiflows, 0 violations"))
}

fn flow_mechanism(analyses: &[Analysis<'_>]) -> Outcome {
    let mut checked = 0;
    for a in analyses {
        for sf in a.semiflows.iter().filter(|s| !s.is_trivial()) {
            checked += 1;
            if sf.retraction().is_bijective() {
                return Err(format!("{} is a bijection", sf.describe()));
            }
        }
    }
    Ok(format!("{checked} non-trivial maps, none bijective"))
}

fn structural_laws(analyses: &[Analysis<'_>]) -> Outcome {
    let opts = CheckOptions {
        samples: 20,
        ..CheckOptions::default()
    };
    let wanted = [
        CHECK_SEMIGROUP,
        CHECK_ORBIT,
        CHECK_FLOOR,
        CHECK_TIME_MONOTONE,
    ];
    let mut total = 0;
    for a in analyses {
        total += a.semiflows.len();
        let checks = invariant_checks(a, &opts).map_err(|e| e.to_string())?;
        for c in checks.iter().filter(|c| wanted.contains(&c.claim.as_str())) {
            if !c.satisfied {
                return Err(format!("{}: {}", c.claim, c.detail));
            }
        }
    }
    Ok(format!(
        "{total} semiflows, 20 time pairs each, 0 violations"
    ))
}

fn oracle_equivalence(analyses: &[Analysis<'_>]) -> Outcome {
    let mut compared = 0;
    for a in analyses.iter().filter(|a| a.poset.len() <= 9) {
        let ours = values_set(a.semiflows.iter().map(|s| s.retraction().values()));
        let oracle = brute_force_oracle(a.poset).map_err(|e| e.to_string())?;
        let theirs = values_set(oracle.iter().map(|m| m.values()));
        if ours != theirs {
            return Err(format!(
                "enumerator {} maps vs oracle {} maps",
                ours.len(),
                theirs.len()
            ));
        }
        compared += 1;
    }
    Ok(format!("{compared} posets, identical sets"))
}

fn contractible_witness() -> Outcome {
    let p = families::cone(&families::pseudo_circle());
    let c = core(&p);
    let s = enumerate_semiflows(&p).map_err(|e| e.to_string())?.len();
    if c.poset.len() != 1 || s != 1 {
        return Err(format!("core has {} points, S_F = {s}", c.poset.len()));
    }
    Ok("singleton core, S_F = 1".into())
}

fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli(args.iter().copied(), &mut out, &mut err);
    (code, out)
}

fn io_and_cli(corpus: &[(GeneratorSpec, Poset)]) -> Outcome {
    let mut spaces: Vec<Poset> = finflow::corpus::named_spaces()
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    spaces.extend(corpus.iter().map(|(_, p)| p.clone()));
    for p in &spaces {
        let t = parse_poset_text(&write_poset_text(p)).map_err(|e| e.to_string())?;
        let j = parse_poset_json(&write_poset_json(p)).map_err(|e| e.to_string())?;
        if &t != p || &j != p || t.covers() != p.covers() || j.covers() != p.covers() {
            return Err(format!("round trip changed {:?}", p.labels()));
        }
    }

    let (code, _) = run(&["finflow", "verify", "--builtin"]);
    if code != EXIT_OK {
        return Err(format!("verify --builtin exited {code}"));
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    for (name, p) in [
        ("example.txt", families::example_3_1()),
        ("x3.txt", families::x_n(3)),
        ("chain.txt", families::chain(8)),
        ("random.txt", corpus[7].1.clone()),
    ] {
        let path = dir.path().join(name);
        std::fs::write(&path, write_poset_text(&p)).map_err(|e| e.to_string())?;
        files.push(path);
    }
    for path in &files {
        let path = path.to_str().ok_or("path")?;
        let mut outputs = Vec::new();
        for threads in ["1", "2", "4"] {
            let (code, out) = run(&["finflow", "--threads", threads, "semiflows", path, "--list"]);
            if code != EXIT_OK {
                return Err(format!("semiflows --list exited {code}"));
            }
            outputs.push(out);
        }
        if outputs.windows(2).any(|w| w[0] != w[1]) {
            return Err(format!("--list output differs across threads for {path}"));
        }
    }
    Ok(format!(
        "{} round trips, verify --builtin exit 0, --list stable on {} files",
        spaces.len(),
        files.len()
    ))
}

#[test]
fn acceptance_criteria() {
    let corpus = corpus();
    let start = Instant::now();
    let analyses: Vec<Analysis<'_>> = corpus
        .iter()
        .map(|(_, p)| Analysis::new(p).expect("corpus poset within limits"))
        .collect();
    let took = start.elapsed();

    let results: Vec<(&str, Outcome)> = vec![
        ("1 example count", example_count()),
        ("2 realization family", realization_family()),
        ("3 minimal-space triviality", minimal_triviality()),
        ("4 emptiness equivalence", emptiness(&analyses, took)),
        ("5 lower bounds", lower_bounds(&analyses)),
        ("6 height-1 exactness", height_one()),
        ("7 movability equivalence", movability(&analyses)),
        ("8 forced down-beat movement", forced_move(&analyses)),
        ("9 flow triviality mechanism", flow_mechanism(&analyses)),
        ("10 structural laws", structural_laws(&analyses)),
        ("11 oracle equivalence", oracle_equivalence(&analyses)),
        ("12 contractible without semiflows", contractible_witness()),
        ("13 io and cli", io_and_cli(&corpus)),
    ];

    let mut stdout = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (name, outcome) in &results {
        let line = match outcome {
            Ok(detail) => format!("PASS {name}: {detail}"),
            Err(detail) => {
                failed.push(*name);
                format!("FAIL {name}: {detail}")
            }
        };
        writeln!(stdout, "{line}").unwrap();
    }
    drop(stdout);
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
