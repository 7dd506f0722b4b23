//! Poset file formats, DOT export and the analysis report.
//!
//! Text format, one statement per line:
//!
//! ```text
//! # comment
//! elements: A B C D E F
//! E < D
//! D < B
//! ```
//!
//! `<` is the only relation token. Names not declared in an `elements:` line
//! are registered in order of first appearance.
//!
//! JSON format: `{"elements": [names], "relations": [[lesser, greater], ..]}`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::reduction::{core, down_beat_points, is_minimal_space, up_beat_points};
use crate::semiflow::{Analysis, ClaimCheck, Semiflow};
use crate::set::ElementSet;

pub const REPORT_SCHEMA: u32 = 1;

struct LabelTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl LabelTable {
    fn new() -> Self {
        LabelTable {
            names: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.contains(['<', '#', ':']) && !name.chars().any(char::is_whitespace)
}

pub fn parse_poset_text(input: &str) -> Result<Poset> {
    let mut table = LabelTable::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (lineno, raw) in input.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        if let Some(rest) = line.strip_prefix("elements:") {
            for name in rest.split_whitespace() {
                if !valid_name(name) {
                    return Err(parse_err(format!("invalid element name `{name}`")));
                }
                if table.index.contains_key(name) {
                    return Err(parse_err(format!("element `{name}` declared twice")));
                }
                table.intern(name);
            }
            continue;
        }
        let parts: Vec<&str> = line.split('<').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(parse_err(format!(
                "expected `a < b` or `elements: ...`, got `{line}`"
            )));
        }
        for name in &parts {
            if !valid_name(name) {
                return Err(parse_err(format!("invalid element name `{name}`")));
            }
        }
        let a = table.intern(parts[0]);
        let b = table.intern(parts[1]);
        pairs.push((a, b));
    }
    Poset::from_index_pairs(table.names, &pairs)
}

/// Writes the `elements:` line and one cover relation per line.
pub fn write_poset_text(p: &Poset) -> String {
    let mut out = String::new();
    if p.is_empty() {
        return out;
    }
    writeln!(out, "elements: {}", p.labels().join(" ")).unwrap();
    for &(a, b) in p.covers() {
        writeln!(out, "{} < {}", p.label(a), p.label(b)).unwrap();
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetJson {
    elements: Vec<String>,
    relations: Vec<(String, String)>,
}

pub fn parse_poset_json(input: &str) -> Result<Poset> {
    let doc: PosetJson = serde_json::from_str(input).map_err(|e| Error::Schema(e.to_string()))?;
    let known: std::collections::HashSet<&str> = doc.elements.iter().map(String::as_str).collect();
    for (a, b) in &doc.relations {
        for name in [a, b] {
            if !known.contains(name.as_str()) {
                return Err(Error::Schema(format!(
                    "relation refers to undeclared element `{name}`"
                )));
            }
        }
    }
    Poset::from_relations(&doc.elements, &doc.relations)
}

/// JSON with the cover relations.
pub fn write_poset_json(p: &Poset) -> String {
    let doc = PosetJson {
        elements: p.labels().to_vec(),
        relations: p
            .covers()
            .iter()
            .map(|&(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Reads either format; JSON is detected by a leading `{`.
pub fn parse_poset(input: &str) -> Result<Poset> {
    if input.trim_start().starts_with('{') {
        parse_poset_json(input)
    } else {
        parse_poset_text(input)
    }
}

fn dot_id(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram in DOT, bottom to top with one rank per height. With a
/// semiflow, each moved point gets a dashed arrow to its image.
pub fn to_dot(p: &Poset, annotate: Option<&Semiflow<'_>>) -> String {
    let mut out = String::new();
    out.push_str("digraph poset {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=circle];\n");
    for x in p.elements() {
        writeln!(out, "  {};", dot_id(p.label(x))).unwrap();
    }
    for h in 0..=p.height() {
        let level: Vec<String> = p
            .elements()
            .filter(|&x| p.height_of(x) == h)
            .map(|x| dot_id(p.label(x)))
            .collect();
        if !level.is_empty() {
            writeln!(out, "  {{ rank=same; {}; }}", level.join("; ")).unwrap();
        }
    }
    for &(a, b) in p.covers() {
        writeln!(out, "  {} -> {};", dot_id(p.label(a)), dot_id(p.label(b))).unwrap();
    }
    if let Some(sf) = annotate {
        let r = sf.retraction();
        for x in r.moved_points() {
            writeln!(
                out,
                "  {} -> {} [style=dashed, color=red, constraint=false];",
                dot_id(p.label(x)),
                dot_id(p.label(r.apply(x)))
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetEcho {
    pub labels: Vec<String>,
    pub covers: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreSummary {
    pub labels: Vec<String>,
    pub trace: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotentialWitness {
    pub point: String,
    pub sequence: Vec<String>,
}

/// Moved points of one semiflow as `(from, to)` label pairs.
pub type LabelMap = Vec<(String, String)>;

/// Serializable summary of everything computed about one space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub poset: PosetEcho,
    pub heights: Vec<(String, usize)>,
    pub down_beat_points: Vec<String>,
    pub up_beat_points: Vec<String>,
    pub is_minimal: bool,
    pub core: CoreSummary,
    pub potential_points: Vec<PotentialWitness>,
    pub s_f: u64,
    pub nontrivial_semiflows: Vec<LabelMap>,
    pub bounds_checked: Vec<ClaimCheck>,
}

fn names(p: &Poset, s: ElementSet) -> Vec<String> {
    s.iter().map(|x| p.label(x).to_string()).collect()
}

impl AnalysisReport {
    pub fn build(analysis: &Analysis<'_>) -> AnalysisReport {
        let p = analysis.poset;
        let c = core(p);
        AnalysisReport {
            schema: REPORT_SCHEMA,
            poset: PosetEcho {
                labels: p.labels().to_vec(),
                covers: p
                    .covers()
                    .iter()
                    .map(|&(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
                    .collect(),
            },
            heights: p
                .elements()
                .map(|x| (p.label(x).to_string(), p.height_of(x)))
                .collect(),
            down_beat_points: names(p, down_beat_points(p)),
            up_beat_points: names(p, up_beat_points(p)),
            is_minimal: is_minimal_space(p),
            core: CoreSummary {
                labels: c.kept.iter().map(|&x| p.label(x).to_string()).collect(),
                trace: c.trace.iter().map(|&x| p.label(x).to_string()).collect(),
            },
            potential_points: analysis
                .potential
                .witnesses
                .iter()
                .enumerate()
                .filter_map(|(y, w)| {
                    w.as_ref().map(|seq| PotentialWitness {
                        point: p.label(y).to_string(),
                        sequence: seq.labels(p).into_iter().map(String::from).collect(),
                    })
                })
                .collect(),
            s_f: analysis.s_f(),
            nontrivial_semiflows: analysis
                .semiflows
                .iter()
                .filter(|sf| !sf.is_trivial())
                .map(|sf| {
                    let r = sf.retraction();
                    r.moved_points()
                        .iter()
                        .map(|x| (p.label(x).to_string(), p.label(r.apply(x)).to_string()))
                        .collect()
                })
                .collect(),
            bounds_checked: analysis.claims(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(input: &str) -> Result<AnalysisReport> {
        let report: AnalysisReport =
            serde_json::from_str(input).map_err(|e| Error::Schema(e.to_string()))?;
        if report.schema != REPORT_SCHEMA {
            return Err(Error::Schema(format!(
                "unsupported report schema {}",
                report.schema
            )));
        }
        Ok(report)
    }

    /// Human-readable summary.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let list = |v: &[String]| format!("{{{}}}", v.join(", "));
        writeln!(out, "points: {}", self.poset.labels.len()).unwrap();
        let heights: Vec<String> = self
            .heights
            .iter()
            .map(|(l, h)| format!("{l}:{h}"))
            .collect();
        writeln!(out, "heights: {}", heights.join(" ")).unwrap();
        writeln!(out, "down beat points: {}", list(&self.down_beat_points)).unwrap();
        writeln!(out, "up beat points: {}", list(&self.up_beat_points)).unwrap();
        writeln!(out, "minimal: {}", self.is_minimal).unwrap();
        writeln!(
            out,
            "core: {} (removed {})",
            list(&self.core.labels),
            list(&self.core.trace)
        )
        .unwrap();
        writeln!(out, "potential down beat points:").unwrap();
        for w in &self.potential_points {
            writeln!(out, "  {} via {}", w.point, w.sequence.join(", ")).unwrap();
        }
        writeln!(
            out,
            "semiflows: {} ({} non-trivial)",
            self.s_f,
            self.s_f.saturating_sub(1)
        )
        .unwrap();
        for m in &self.nontrivial_semiflows {
            let moves: Vec<String> = m.iter().map(|(a, b)| format!("{a}->{b}")).collect();
            writeln!(out, "  {}", moves.join(", ")).unwrap();
        }
        writeln!(out, "checks:").unwrap();
        for c in &self.bounds_checked {
            let mark = if c.satisfied { "ok  " } else { "FAIL" };
            writeln!(out, "  [{mark}] {} ({})", c.claim, c.detail).unwrap();
        }
        out
    }
}

/// One line per semiflow in canonical order: `index<TAB>map`.
pub fn format_semiflow_list(semiflows: &[Semiflow<'_>]) -> String {
    let mut out = String::new();
    for (i, sf) in semiflows.iter().enumerate() {
        writeln!(out, "{i}\t{}", sf.describe()).unwrap();
    }
    out
}
