//! The graph on a split extension whose vertices are group elements and
//! whose edges are read off the elements' normal-form words.
//!
//! Three rules decide adjacency:
//!
//! * **I**: the identity is adjacent to every other vertex.
//! * **II(ii)**: two single-generator powers `z_i^k`, `z_j^t` are adjacent when
//!   `i ≠ j`, or when `i = j` and `k ≠ t`.
//! * **II(i)**: any other pair is adjacent when the words share no generator.
//!
//! The rules leave several points open; [`InterpretationPolicy`] fixes each
//! one explicitly so every reading can be run and compared.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{GenId, Realization, Word};

/// When rule II(i) may fire, in terms of word lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LengthGate {
    /// At least one of the two words has length ≥ 2; two single-generator
    /// words are left to II(ii).
    AtLeastOne,
    /// Both words have length ≥ 2.
    Both,
    /// No length condition; II(ii) only handles powers of one generator.
    None,
}

/// How II(ii) compares exponents of two powers of the same generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SameGeneratorEdges {
    /// Exponents are compared modulo the generator's order.
    ReducedExponents,
    /// Exponents are compared as written.
    RawExponents,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SupportComparison {
    /// Adjacent iff the supports are disjoint.
    Disjoint,
}

/// A complete resolution of the ambiguities in the edge rules.
///
/// With `allow_zero_exponents`, every vertex label is written over the full
/// generator list with `z^0` for absent generators before the rules run. A
/// zero-exponent factor counts towards word length but not towards the
/// support, since it denotes the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InterpretationPolicy {
    pub allow_zero_exponents: bool,
    pub rule2i_length_gate: LengthGate,
    pub same_generator_exponent_edges: SameGeneratorEdges,
    pub support_comparison: SupportComparison,
}

impl Default for InterpretationPolicy {
    fn default() -> Self {
        InterpretationPolicy {
            allow_zero_exponents: false,
            rule2i_length_gate: LengthGate::AtLeastOne,
            same_generator_exponent_edges: SameGeneratorEdges::ReducedExponents,
            support_comparison: SupportComparison::Disjoint,
        }
    }
}

impl InterpretationPolicy {
    /// The whole finite policy space, default policy first.
    pub fn all() -> Vec<InterpretationPolicy> {
        let mut out = Vec::new();
        for allow_zero_exponents in [false, true] {
            for rule2i_length_gate in [LengthGate::AtLeastOne, LengthGate::Both, LengthGate::None] {
                for same_generator_exponent_edges in
                    [SameGeneratorEdges::ReducedExponents, SameGeneratorEdges::RawExponents]
                {
                    out.push(InterpretationPolicy {
                        allow_zero_exponents,
                        rule2i_length_gate,
                        same_generator_exponent_edges,
                        support_comparison: SupportComparison::Disjoint,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for InterpretationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = if self.allow_zero_exponents { "allow" } else { "deny" };
        let gate = match self.rule2i_length_gate {
            LengthGate::AtLeastOne => "at-least-one",
            LengthGate::Both => "both",
            LengthGate::None => "none",
        };
        let same = match self.same_generator_exponent_edges {
            SameGeneratorEdges::ReducedExponents => "reduced",
            SameGeneratorEdges::RawExponents => "raw",
        };
        let support = match self.support_comparison {
            SupportComparison::Disjoint => "disjoint",
        };
        write!(
            f,
            "zero-exponents={zero};length-gate={gate};same-generator={same};support={support}"
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolicyParseError {
    #[error("expected key=value, found '{0}'")]
    Malformed(String),
    #[error("unknown policy key '{0}'")]
    UnknownKey(String),
    #[error("invalid value '{value}' for policy key '{key}'")]
    InvalidValue { key: String, value: String },
    #[error("policy key '{0}' given twice")]
    DuplicateKey(String),
}

impl FromStr for InterpretationPolicy {
    type Err = PolicyParseError;

    /// Parses the canonical form produced by `Display`. Keys may come in any
    /// order and omitted keys keep their default. `default` is accepted too.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "default" {
            return Ok(InterpretationPolicy::default());
        }
        let mut zero = None;
        let mut gate = None;
        let mut same = None;
        let mut support = None;
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| PolicyParseError::Malformed(part.to_string()))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = || PolicyParseError::InvalidValue {
                key: key.to_string(),
                value: value.to_string(),
            };
            let dup = |set: bool| {
                if set {
                    Err(PolicyParseError::DuplicateKey(key.to_string()))
                } else {
                    Ok(())
                }
            };
            match key {
                "zero-exponents" => {
                    dup(zero.is_some())?;
                    zero = Some(match value {
                        "deny" => false,
                        "allow" => true,
                        _ => return Err(bad()),
                    });
                }
                "length-gate" => {
                    dup(gate.is_some())?;
                    gate = Some(match value {
                        "at-least-one" => LengthGate::AtLeastOne,
                        "both" => LengthGate::Both,
                        "none" => LengthGate::None,
                        _ => return Err(bad()),
                    });
                }
                "same-generator" => {
                    dup(same.is_some())?;
                    same = Some(match value {
                        "reduced" => SameGeneratorEdges::ReducedExponents,
                        "raw" => SameGeneratorEdges::RawExponents,
                        _ => return Err(bad()),
                    });
                }
                "support" => {
                    dup(support.is_some())?;
                    support = Some(match value {
                        "disjoint" => SupportComparison::Disjoint,
                        _ => return Err(bad()),
                    });
                }
                other => return Err(PolicyParseError::UnknownKey(other.to_string())),
            }
        }
        // omitted keys keep their default values
        let d = InterpretationPolicy::default();
        Ok(InterpretationPolicy {
            allow_zero_exponents: zero.unwrap_or(d.allow_zero_exponents),
            rule2i_length_gate: gate.unwrap_or(d.rule2i_length_gate),
            same_generator_exponent_edges: same.unwrap_or(d.same_generator_exponent_edges),
            support_comparison: support.unwrap_or(d.support_comparison),
        })
    }
}

impl Serialize for InterpretationPolicy {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for InterpretationPolicy {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which rule settled an edge decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "I")]
    I,
    #[serde(rename = "II-i")]
    IIi,
    #[serde(rename = "II-ii")]
    IIii,
    #[serde(rename = "none")]
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeTrace {
    pub left: Word,
    pub right: Word,
    pub adjacent: bool,
    pub rule: Rule,
}

/// Generators occurring with a nonzero exponent.
pub fn support(w: &Word) -> BTreeSet<GenId> {
    w.factors()
        .iter()
        .filter(|f| f.exp != 0)
        .map(|f| f.gen)
        .collect()
}

/// Decides whether the vertices named `w1` and `w2` are adjacent.
///
/// The words are taken as written when `p.allow_zero_exponents` is set and
/// freely reduced otherwise. Same-generator exponents are compared as given;
/// [`build_gamma`] additionally reduces them modulo generator orders under
/// [`SameGeneratorEdges::ReducedExponents`].
pub fn edge_decision(w1: &Word, w2: &Word, p: &InterpretationPolicy) -> EdgeTrace {
    decide(w1, w2, p, None)
}

fn decide(w1: &Word, w2: &Word, p: &InterpretationPolicy, orders: Option<&[usize]>) -> EdgeTrace {
    let trace = |adjacent, rule| EdgeTrace {
        left: w1.clone(),
        right: w2.clone(),
        adjacent,
        rule,
    };
    let (a, b) = if p.allow_zero_exponents {
        (w1.clone(), w2.clone())
    } else {
        (w1.reduced(), w2.reduced())
    };
    match (a.is_trivial(), b.is_trivial()) {
        (true, true) => return trace(false, Rule::None),
        (true, false) | (false, true) => return trace(true, Rule::I),
        (false, false) => {}
    }

    if let ([fa], [fb]) = (a.factors(), b.factors()) {
        if fa.gen == fb.gen {
            let distinct = match (p.same_generator_exponent_edges, orders) {
                (SameGeneratorEdges::ReducedExponents, Some(orders)) => {
                    let n = orders[fa.gen.0] as i64;
                    fa.exp.rem_euclid(n) != fb.exp.rem_euclid(n)
                }
                _ => fa.exp != fb.exp,
            };
            return trace(distinct, Rule::IIii);
        }
        if p.rule2i_length_gate != LengthGate::None {
            return trace(true, Rule::IIii);
        }
    }

    let gate_open = match p.rule2i_length_gate {
        LengthGate::AtLeastOne => a.len() >= 2 || b.len() >= 2,
        LengthGate::Both => a.len() >= 2 && b.len() >= 2,
        LengthGate::None => true,
    };
    if !gate_open {
        return trace(false, Rule::None);
    }
    let disjoint = match p.support_comparison {
        SupportComparison::Disjoint => support(&a).is_disjoint(&support(&b)),
    };
    trace(disjoint, Rule::IIi)
}

/// A simple undirected graph on the elements of a realized group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaGraph {
    labels: Vec<Word>,
    names: Vec<String>,
    identity: usize,
    policy: InterpretationPolicy,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl GammaGraph {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn policy(&self) -> &InterpretationPolicy {
        &self.policy
    }

    pub fn label(&self, v: usize) -> &Word {
        &self.labels[v]
    }

    /// Vertex label in presentation syntax, `1` for the identity.
    pub fn label_string(&self, v: usize) -> String {
        self.labels[v].display(&self.names).to_string()
    }
}

/// Builds the graph on every element of `r`, deciding each unordered pair of
/// distinct elements with [`edge_decision`] on their normal-form words.
pub fn build_gamma(r: &Realization, p: &InterpretationPolicy) -> GammaGraph {
    let labels = r.canonical_words().to_vec();
    let n = labels.len();
    let generator_count = r.generator_names().len();
    let written: Vec<Word> = if p.allow_zero_exponents {
        labels.iter().map(|w| w.padded(generator_count)).collect()
    } else {
        labels.clone()
    };
    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            if decide(&written[u], &written[v], p, Some(r.generator_orders())).adjacent {
                edges.push((u, v));
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    GammaGraph {
        labels,
        names: r.generator_names().to_vec(),
        identity: r.group().identity(),
        policy: *p,
        edges,
        adjacency,
    }
}
