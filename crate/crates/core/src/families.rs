//! Named spaces and random posets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::rng::XorShift64Star;

/// A recipe for a poset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// `0 < 1 < .. < n-1`.
    Chain {
        n: usize,
    },
    Antichain {
        n: usize,
    },
    /// Six points `A > B, C > D > E, F`.
    #[serde(rename = "example_3_1")]
    Example31,
    /// `A, B < C, D` and `A, B, C < E`.
    #[serde(rename = "example_2_5")]
    Example25,
    /// `a, b < c, d`, the smallest non-contractible minimal space.
    PseudoCircle,
    /// The base space with a new global maximum.
    Cone {
        base: Box<GeneratorSpec>,
    },
    /// One down beat point and `n + 2` semiflows.
    #[serde(rename = "x_n")]
    XN {
        n: usize,
    },
    Random {
        n: usize,
        p: f64,
        seed: u64,
    },
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            GeneratorSpec::Chain { n } | GeneratorSpec::Antichain { n } => check_size(*n),
            GeneratorSpec::XN { n } => check_size(3 * n + 2),
            GeneratorSpec::Random { n, p, .. } => {
                check_size(*n)?;
                if !(0.0..=1.0).contains(p) {
                    return Err(Error::InvalidSpec(format!(
                        "edge probability {p} is outside [0, 1]"
                    )));
                }
                Ok(())
            }
            GeneratorSpec::Cone { base } => {
                base.validate()?;
                if make(base)?.len() >= crate::set::MAX_ELEMENTS {
                    return Err(Error::InvalidSpec("cone would exceed 64 points".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > crate::set::MAX_ELEMENTS {
        Err(Error::InvalidSpec(format!(
            "size {n} exceeds {}",
            crate::set::MAX_ELEMENTS
        )))
    } else {
        Ok(())
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Chain { n } => write!(f, "chain({n})"),
            GeneratorSpec::Antichain { n } => write!(f, "antichain({n})"),
            GeneratorSpec::Example31 => write!(f, "example_3_1"),
            GeneratorSpec::Example25 => write!(f, "example_2_5"),
            GeneratorSpec::PseudoCircle => write!(f, "pseudo_circle"),
            GeneratorSpec::Cone { base } => write!(f, "cone({base})"),
            GeneratorSpec::XN { n } => write!(f, "x_n({n})"),
            GeneratorSpec::Random { n, p, seed } => write!(f, "random({n}, {p}, {seed})"),
        }
    }
}

/// Kind names accepted on the command line.
pub const KINDS: &[&str] = &[
    "chain",
    "antichain",
    "example_3_1",
    "example_2_5",
    "pseudo_circle",
    "cone",
    "x_n",
    "random",
];

/// Parses a kind name; parameters take their defaults (`n = 3`,
/// `p = 0.3`, `seed = 0`, cone over the pseudo-circle).
impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = s.trim().to_ascii_lowercase().replace('-', "_");
        Ok(match kind.as_str() {
            "chain" => GeneratorSpec::Chain { n: 3 },
            "antichain" => GeneratorSpec::Antichain { n: 3 },
            "example_3_1" | "example31" => GeneratorSpec::Example31,
            "example_2_5" | "example25" => GeneratorSpec::Example25,
            "pseudo_circle" | "circle" => GeneratorSpec::PseudoCircle,
            "cone" => GeneratorSpec::Cone {
                base: Box::new(GeneratorSpec::PseudoCircle),
            },
            "x_n" | "xn" => GeneratorSpec::XN { n: 3 },
            "random" => GeneratorSpec::Random {
                n: 6,
                p: 0.3,
                seed: 0,
            },
            other => {
                return Err(Error::InvalidSpec(format!(
                    "unknown kind `{other}`; expected one of {}",
                    KINDS.join(", ")
                )))
            }
        })
    }
}

pub fn make(spec: &GeneratorSpec) -> Result<Poset> {
    spec.validate()?;
    match spec {
        GeneratorSpec::Chain { n } => Ok(chain(*n)),
        GeneratorSpec::Antichain { n } => Ok(antichain(*n)),
        GeneratorSpec::Example31 => Ok(example_3_1()),
        GeneratorSpec::Example25 => Ok(example_2_5()),
        GeneratorSpec::PseudoCircle => Ok(pseudo_circle()),
        GeneratorSpec::Cone { base } => Ok(cone(&make(base)?)),
        GeneratorSpec::XN { n } => Ok(x_n(*n)),
        GeneratorSpec::Random { n, p, seed } => random_poset(*n, *p, *seed),
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

pub fn chain(n: usize) -> Poset {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::from_index_pairs(numbered(n), &pairs).expect("chain")
}

pub fn antichain(n: usize) -> Poset {
    Poset::antichain_of(numbered(n)).expect("antichain")
}

pub fn example_3_1() -> Poset {
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
    .expect("worked example")
}

pub fn example_2_5() -> Poset {
    Poset::from_relations(
        &["A", "B", "C", "D", "E"],
        &[
            ("A", "C"),
            ("A", "D"),
            ("B", "C"),
            ("B", "D"),
            ("A", "E"),
            ("B", "E"),
            ("C", "E"),
        ],
    )
    .expect("five-point example")
}

pub fn pseudo_circle() -> Poset {
    Poset::from_relations(
        &["a", "b", "c", "d"],
        &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
    )
    .expect("pseudo-circle")
}

/// Adds a point above everything. The new label is `top`, primed until it
/// is unused.
pub fn cone(p: &Poset) -> Poset {
    let mut top = String::from("top");
    while p.index_of(&top).is_some() {
        top.push('\'');
    }
    let mut labels = p.labels().to_vec();
    labels.push(top);
    let apex = p.len();
    let mut pairs: Vec<(usize, usize)> = p.covers().to_vec();
    pairs.extend(p.elements().map(|x| (x, apex)));
    Poset::from_index_pairs(labels, &pairs).expect("cone")
}

/// Labels of `X_n` in index order:
/// `x0_bar, x0, x1_plus, x1_bar, x1, .., xn_plus, xn_bar, xn`.
pub fn x_n_labels(n: usize) -> Vec<String> {
    let mut labels = vec!["x0_bar".to_string(), "x0".to_string()];
    for i in 1..=n {
        labels.push(format!("x{i}_plus"));
        labels.push(format!("x{i}_bar"));
        labels.push(format!("x{i}"));
    }
    labels
}

/// Index of `x_i` in [`x_n`].
pub fn x_n_top(i: usize) -> usize {
    if i == 0 {
        1
    } else {
        3 * i + 1
    }
}

/// Index of `x̄_i` in [`x_n`].
pub fn x_n_bar(i: usize) -> usize {
    if i == 0 {
        0
    } else {
        3 * i
    }
}

/// Index of `x_i⁺` (for `i >= 1`) in [`x_n`].
pub fn x_n_plus(i: usize) -> usize {
    assert!(i >= 1);
    3 * i - 1
}

/// The space `X_n`: for `i < j`, `x̄_i < x_j, x̄_j`, `x_i < x_j` and
/// `x_i⁺ < x_j, x̄_j`; within each level `x̄_i < x_i` and `x_i⁺ < x̄_i`.
pub fn x_n(n: usize) -> Poset {
    let mut pairs = Vec::new();
    for i in 0..=n {
        pairs.push((x_n_bar(i), x_n_top(i)));
        if i >= 1 {
            pairs.push((x_n_plus(i), x_n_bar(i)));
        }
        for j in i + 1..=n {
            pairs.push((x_n_bar(i), x_n_top(j)));
            pairs.push((x_n_bar(i), x_n_bar(j)));
            pairs.push((x_n_top(i), x_n_top(j)));
            if i >= 1 {
                pairs.push((x_n_plus(i), x_n_top(j)));
                pairs.push((x_n_plus(i), x_n_bar(j)));
            }
        }
    }
    Poset::from_index_pairs(x_n_labels(n), &pairs).expect("x_n")
}

/// Random DAG on the order `0..n`: each pair `i < j` becomes a relation with
/// probability `p`, drawn in the order `(0,1), (0,2), .., (n-2,n-1)`; the
/// transitive closure is then taken.
pub fn random_poset(n: usize, p: f64, seed: u64) -> Result<Poset> {
    GeneratorSpec::Random { n, p, seed }.validate()?;
    let mut rng = XorShift64Star::new(seed);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.chance(p) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_index_pairs(numbered(n), &pairs)
}

/// Random poset of height exactly one: `bottoms` minimal points, `tops`
/// points above them, each pair related with probability `p`. Every top
/// keeps at least one lower cover.
pub fn random_height_one(bottoms: usize, tops: usize, p: f64, seed: u64) -> Result<Poset> {
    if bottoms == 0 || tops == 0 {
        return Err(Error::InvalidSpec(
            "a height-one poset needs at least one bottom and one top".into(),
        ));
    }
    GeneratorSpec::Random {
        n: bottoms + tops,
        p,
        seed,
    }
    .validate()?;
    let mut rng = XorShift64Star::new(seed);
    let mut labels: Vec<String> = (0..bottoms).map(|i| format!("m{i}")).collect();
    labels.extend((0..tops).map(|j| format!("t{j}")));
    let mut pairs = Vec::new();
    for j in 0..tops {
        let mut any = false;
        for i in 0..bottoms {
            if rng.chance(p) {
                pairs.push((i, bottoms + j));
                any = true;
            }
        }
        if !any {
            let i = rng.below(bottoms as u64) as usize;
            pairs.push((i, bottoms + j));
        }
    }
    Poset::from_index_pairs(labels, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::{core, down_beat_points, is_minimal_space, potential_down_beat_points};
    use crate::semiflow::{brute_force_oracle_with_limit, count_semiflows};
    use crate::set::ElementSet;

    #[test]
    fn x_n_structure() {
        for n in 0..=3 {
            let p = x_n(n);
            assert_eq!(p.len(), 3 * n + 2);
            assert_eq!(
                down_beat_points(&p),
                ElementSet::singleton(x_n_top(0)),
                "n = {n}"
            );
            let tops: ElementSet = (0..=n).map(x_n_top).collect();
            assert_eq!(potential_down_beat_points(&p).unwrap(), tops, "n = {n}");
            assert_eq!(
                brute_force_oracle_with_limit(&p, 11).unwrap().len(),
                n + 2,
                "n = {n}"
            );
            assert_eq!(p.height(), n + 1);
        }
        let one = x_n(1);
        assert_eq!(count_semiflows(&one).unwrap().s_f, 3);
    }

    #[test]
    fn literal_x_n_reading_breaks_the_count() {
        // Cross-level relations only: x̄_1 becomes a down beat point.
        let n = 1;
        let mut pairs = Vec::new();
        for i in 0..=n {
            for j in i + 1..=n {
                pairs.push((x_n_bar(i), x_n_top(j)));
                pairs.push((x_n_bar(i), x_n_bar(j)));
                pairs.push((x_n_top(i), x_n_top(j)));
            }
        }
        let literal = Poset::from_index_pairs(x_n_labels(n), &pairs).unwrap();
        assert_ne!(
            down_beat_points(&literal),
            ElementSet::singleton(x_n_top(0))
        );
    }

    #[test]
    fn named_examples() {
        let p = make(&GeneratorSpec::Example31).unwrap();
        assert_eq!(down_beat_points(&p), p.set_of_labels(&["B", "C"]).unwrap());

        let q = make(&GeneratorSpec::Example25).unwrap();
        let e = q.index_of("E").unwrap();
        assert_eq!(down_beat_points(&q), ElementSet::singleton(e));
        assert!(is_minimal_space(&q.without(ElementSet::singleton(e)).0));

        let circle = make(&GeneratorSpec::PseudoCircle).unwrap();
        assert!(is_minimal_space(&circle));
    }

    #[test]
    fn cones() {
        let c = make(&"cone".parse().unwrap()).unwrap();
        assert_eq!(c.len(), 5);
        assert!(down_beat_points(&c).is_empty());
        assert_eq!(core(&c).poset.len(), 1);
        assert_eq!(count_semiflows(&c).unwrap().s_f, 1);

        assert_eq!(cone(&antichain(1)), {
            let mut l = numbered(1);
            l.push("top".into());
            Poset::from_index_pairs(l, &[(0, 1)]).unwrap()
        });
        let v = cone(&antichain(2));
        assert!(down_beat_points(&v).is_empty());

        let named = Poset::antichain_of(vec!["top".into()]).unwrap();
        assert_eq!(cone(&named).label(1), "top'");
    }

    #[test]
    fn chains_and_antichains() {
        let two = make(&GeneratorSpec::Chain { n: 2 }).unwrap();
        assert_eq!(count_semiflows(&two).unwrap().s_f, 2);
        assert_eq!(chain(0).len(), 0);
        assert_eq!(antichain(4).covers().len(), 0);
    }

    #[test]
    fn random_extremes() {
        assert_eq!(random_poset(6, 0.0, 9).unwrap(), antichain(6));
        assert_eq!(random_poset(6, 1.0, 9).unwrap(), chain(6));
        assert_eq!(
            random_poset(6, 0.3, 42).unwrap(),
            random_poset(6, 0.3, 42).unwrap()
        );
        assert!(matches!(
            random_poset(6, 1.5, 0),
            Err(Error::InvalidSpec(_))
        ));
        assert!(random_poset(65, 0.5, 0).is_err());
    }

    #[test]
    fn random_golden() {
        // Frozen from the documented generator.
        let p = random_poset(6, 0.3, 42).unwrap();
        let covers: Vec<(usize, usize)> = p.covers().to_vec();
        assert_eq!(covers, RANDOM_6_03_42);
    }

    const RANDOM_6_03_42: &[(usize, usize)] = &[(0, 1), (0, 4), (4, 5)];

    #[test]
    fn height_one_generator() {
        for seed in 0..20 {
            let p = random_height_one(3, 4, 0.4, seed).unwrap();
            assert_eq!(p.height(), 1);
        }
        assert!(random_height_one(0, 2, 0.5, 0).is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(
            "x-n".parse::<GeneratorSpec>().unwrap(),
            GeneratorSpec::XN { n: 3 }
        );
        assert!("torus".parse::<GeneratorSpec>().is_err());
        let json = serde_json::to_string(&GeneratorSpec::Random {
            n: 4,
            p: 0.5,
            seed: 1,
        })
        .unwrap();
        assert_eq!(json, r#"{"kind":"random","n":4,"p":0.5,"seed":1}"#);
    }
}
