//! Well-definedness audits: realize two descriptions, decide whether the
//! groups are isomorphic, and compare the graphs built on each.
//!
//! Two isomorphic groups whose graphs have different degree sequences show
//! that the graph depends on the description rather than on the group.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::error::PresentationError;
use crate::gamma::{build_gamma, InterpretationPolicy};
use crate::group::{
    are_isomorphic, automorphisms, direct_product, elementary_abelian_2, make_cyclic, quaternion,
    semidirect_product, Automorphism, GroupTable,
};
use crate::invariants::{degree_sequence, edge_count, DegreeSequence};
use crate::presentation::{parse_split_description, realize, Realization, SplitDescription};

/// `C4 ⋊ C2` with the generator of `C2` inverting `C4`.
pub const DIHEDRAL_DESCRIPTION: &str = "K: <x | x^4>\nA: <y | y^2>\naction: y: x -> x^-1\n";

/// `V4 ⋊ C2` with the generator of `C2` swapping `a` and `b`.
pub const KLEIN_BY_C2_DESCRIPTION: &str =
    "K: <a, b | a^2, b^2, a b a^-1 b^-1>\nA: <c | c^2>\naction: c: a -> b; b -> a\n";

/// Published degree sequence of the graph on `C4 ⋊ C2`.
pub const PUBLISHED_DS_DIHEDRAL: [usize; 8] = [1, 1, 1, 4, 4, 4, 4, 7];

/// Published degree sequence of the graph on `V4 ⋊ C2`.
pub const PUBLISHED_DS_KLEIN_BY_C2: [usize; 8] = [1, 2, 2, 2, 4, 4, 4, 7];

pub fn dihedral_description() -> SplitDescription {
    parse_split_description(DIHEDRAL_DESCRIPTION).expect("built-in description parses")
}

pub fn klein_by_c2_description() -> SplitDescription {
    parse_split_description(KLEIN_BY_C2_DESCRIPTION).expect("built-in description parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "consistent")]
    Consistent,
    #[serde(rename = "ILL-DEFINED-WITNESS")]
    IllDefinedWitness,
    #[serde(rename = "groups-not-isomorphic")]
    GroupsNotIsomorphic,
}

impl Verdict {
    pub fn from_flags(groups_isomorphic: bool, invariants_equal: bool) -> Self {
        match (groups_isomorphic, invariants_equal) {
            (true, false) => Verdict::IllDefinedWitness,
            (true, true) => Verdict::Consistent,
            (false, _) => Verdict::GroupsNotIsomorphic,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::IllDefinedWitness => "ILL-DEFINED-WITNESS",
            Verdict::GroupsNotIsomorphic => "groups-not-isomorphic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("description {which}: {source}")]
    Realization {
        which: usize,
        #[source]
        source: PresentationError,
    },
    #[error("rank {0} is outside 1..=4")]
    RankOutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub descriptions: [String; 2],
    pub policy: InterpretationPolicy,
    pub groups_isomorphic: bool,
    /// Image of each element of the first group, when isomorphic.
    pub isomorphism: Option<Vec<usize>>,
    pub degree_sequences: [DegreeSequence; 2],
    pub edge_counts: [usize; 2],
    pub invariants_equal: bool,
    pub verdict: Verdict,
}

impl AuditReport {
    /// The same audit with the two descriptions exchanged.
    pub fn swapped(&self) -> AuditReport {
        let [d1, d2] = self.descriptions.clone();
        let [s1, s2] = self.degree_sequences.clone();
        let [e1, e2] = self.edge_counts;
        AuditReport {
            descriptions: [d2, d1],
            degree_sequences: [s2, s1],
            edge_counts: [e2, e1],
            isomorphism: self.isomorphism.as_ref().map(|m| {
                let mut inv = vec![0; m.len()];
                for (i, &e) in m.iter().enumerate() {
                    inv[e] = i;
                }
                inv
            }),
            ..self.clone()
        }
    }
}

struct Realized<'a> {
    text: String,
    realization: &'a Realization,
}

fn realize_both(
    d1: &SplitDescription,
    d2: &SplitDescription,
) -> Result<(Realization, Realization), AuditError> {
    let r1 = realize(d1).map_err(|source| AuditError::Realization { which: 1, source })?;
    let r2 = realize(d2).map_err(|source| AuditError::Realization { which: 2, source })?;
    Ok((r1, r2))
}

fn audit_realized(
    a: &Realized<'_>,
    b: &Realized<'_>,
    iso: &Option<Vec<usize>>,
    p: &InterpretationPolicy,
) -> AuditReport {
    let g1 = build_gamma(a.realization, p);
    let g2 = build_gamma(b.realization, p);
    let degree_sequences = [degree_sequence(&g1), degree_sequence(&g2)];
    let invariants_equal = degree_sequences[0] == degree_sequences[1];
    AuditReport {
        descriptions: [a.text.clone(), b.text.clone()],
        policy: *p,
        groups_isomorphic: iso.is_some(),
        isomorphism: iso.clone(),
        edge_counts: [edge_count(&g1), edge_count(&g2)],
        invariants_equal,
        verdict: Verdict::from_flags(iso.is_some(), invariants_equal),
        degree_sequences,
    }
}

fn isomorphism_map(r1: &Realization, r2: &Realization) -> Option<Vec<usize>> {
    are_isomorphic(r1.group(), r2.group()).map(|iso| iso.map().to_vec())
}

/// Realizes both descriptions, tests the groups for isomorphism and compares
/// the degree sequences of the graphs built under the same policy.
pub fn audit_pair(
    d1: &SplitDescription,
    d2: &SplitDescription,
    p: &InterpretationPolicy,
) -> Result<AuditReport, AuditError> {
    let (r1, r2) = realize_both(d1, d2)?;
    let iso = isomorphism_map(&r1, &r2);
    Ok(audit_realized(
        &Realized {
            text: d1.to_string(),
            realization: &r1,
        },
        &Realized {
            text: d2.to_string(),
            realization: &r2,
        },
        &iso,
        p,
    ))
}

/// Audits the built-in `C4 ⋊ C2` and `V4 ⋊ C2` descriptions under the
/// default policy.
pub fn reproduce_counterexample() -> AuditReport {
    audit_pair(
        &dihedral_description(),
        &klein_by_c2_description(),
        &InterpretationPolicy::default(),
    )
    .expect("built-in descriptions realize")
}

/// True when `report` is an ill-definedness witness with exactly the
/// published degree sequences.
pub fn matches_published(report: &AuditReport) -> bool {
    report.groups_isomorphic
        && report.verdict == Verdict::IllDefinedWitness
        && report.degree_sequences[0] == PUBLISHED_DS_DIHEDRAL
        && report.degree_sequences[1] == PUBLISHED_DS_KLEIN_BY_C2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolicySweep {
    pub scope: &'static str,
    pub reports: Vec<AuditReport>,
    pub any_consistent: bool,
}

/// Runs [`audit_pair`] once per policy, realizing each description only once.
pub fn policy_sweep(
    d1: &SplitDescription,
    d2: &SplitDescription,
    policies: &[InterpretationPolicy],
) -> Result<PolicySweep, AuditError> {
    let (r1, r2) = realize_both(d1, d2)?;
    let iso = isomorphism_map(&r1, &r2);
    let a = Realized {
        text: d1.to_string(),
        realization: &r1,
    };
    let b = Realized {
        text: d2.to_string(),
        realization: &r2,
    };
    let reports: Vec<AuditReport> = policies
        .iter()
        .map(|p| audit_realized(&a, &b, &iso, p))
        .collect();
    Ok(PolicySweep {
        scope: "only the listed interpretation policies were checked; other redefinitions of the edge rules are not covered",
        any_consistent: reports.iter().any(|r| r.verdict == Verdict::Consistent),
        reports,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupProfile {
    pub name: String,
    pub abelian: bool,
    pub exponent: usize,
    pub involutions: usize,
    pub element_orders: Vec<usize>,
    pub has_element_of_order_4: bool,
}

impl GroupProfile {
    fn of(name: &str, g: &GroupTable) -> Self {
        let element_orders = g.order_statistics();
        GroupProfile {
            name: name.to_string(),
            abelian: g.is_abelian(),
            exponent: g.exponent(),
            involutions: g.involution_count(),
            has_element_of_order_4: element_orders.contains(&4),
            element_orders,
        }
    }
}

/// One semidirect product `K ⋊ A` of order 8 built from small factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub kernel: &'static str,
    pub complement: &'static str,
    /// Automorphism of `K` attached to each element of `A`.
    pub action: Vec<Vec<usize>>,
    pub isomorphic_to: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Order8Classification {
    pub groups: Vec<GroupProfile>,
    pub pairwise_non_isomorphic: bool,
    pub nonabelian_count: usize,
    pub nonabelian_have_element_of_order_4: bool,
    /// Involutions inside the `V4` kernel of `V4 ⋊ C2`.
    pub klein_kernel_involutions: usize,
    pub corpus: Vec<CorpusEntry>,
    pub corpus_classified: bool,
}

impl Order8Classification {
    pub fn profile(&self, name: &str) -> Option<&GroupProfile> {
        self.groups.iter().find(|g| g.name == name)
    }

    pub fn passed(&self) -> bool {
        self.pairwise_non_isomorphic
            && self.nonabelian_count == 2
            && self.nonabelian_have_element_of_order_4
            && self.profile("D8").is_some_and(|g| g.involutions == 5)
            && self.profile("Q8").is_some_and(|g| g.involutions == 1)
            && self.klein_kernel_involutions == 3
            && self.corpus_classified
    }
}

/// `C8`, `C4 × C2`, `C2³`, `D8 = C4 ⋊ C2` and `Q8`, in that order.
pub fn order8_groups() -> Vec<(&'static str, GroupTable)> {
    let c = |n| make_cyclic(n).expect("positive order");
    let inversion = crate::group::automorphism_from_generator_images(&c(4), &[1], &[3])
        .expect("inversion is an automorphism");
    let d8 = semidirect_product(&c(4), &c(2), &[Automorphism::identity(4), inversion])
        .expect("inversion has order 2")
        .group;
    vec![
        ("C8", c(8)),
        ("C4xC2", direct_product(&c(4), &c(2))),
        ("C2^3", elementary_abelian_2(3)),
        ("D8", d8),
        ("Q8", quaternion()),
    ]
}

/// Every `K ⋊ A` of order 8 with `K, A ∈ {C2, C4, V4}`, over every map
/// `A -> Aut(K)` that is a valid action.
pub fn order8_corpus() -> Vec<(&'static str, &'static str, Vec<Automorphism>, GroupTable)> {
    let c2 = make_cyclic(2).expect("order 2");
    let c4 = make_cyclic(4).expect("order 4");
    let v4 = direct_product(&c2, &c2);
    let factors = [("C2", &c2), ("C4", &c4), ("V4", &v4)];
    let mut out = Vec::new();
    for (kname, k) in factors {
        for (aname, a) in factors {
            if k.order() * a.order() != 8 {
                continue;
            }
            let auts = automorphisms(k);
            // every function A -> Aut(K), filtered by the semidirect product's
            // own action check
            let total = auts.len().pow(a.order() as u32);
            for code in 0..total {
                let mut rest = code;
                let action: Vec<Automorphism> = (0..a.order())
                    .map(|_| {
                        let choice = rest % auts.len();
                        rest /= auts.len();
                        auts[choice].clone()
                    })
                    .collect();
                if let Ok(sd) = semidirect_product(k, a, &action) {
                    out.push((kname, aname, action, sd.group));
                }
            }
        }
    }
    out
}

/// Checks the classification of groups of order 8 used to show that
/// `C4 ⋊ C2` and `V4 ⋊ C2` are the same group.
pub fn classify_order8() -> Order8Classification {
    let groups = order8_groups();
    let pairwise_non_isomorphic = groups.iter().enumerate().all(|(i, (_, g))| {
        groups[i + 1..]
            .iter()
            .all(|(_, h)| are_isomorphic(g, h).is_none())
    });
    let profiles: Vec<GroupProfile> = groups.iter().map(|(n, g)| GroupProfile::of(n, g)).collect();
    let nonabelian: Vec<&GroupProfile> = profiles.iter().filter(|p| !p.abelian).collect();

    let klein = realize(&klein_by_c2_description()).expect("built-in description realizes");
    let split = klein.split();
    let klein_kernel_involutions = (0..split.kernel_order)
        .map(|k| split.embed_kernel(k))
        .filter(|&e| klein.group().element_order(e) == Ok(2))
        .count();

    let corpus: Vec<CorpusEntry> = order8_corpus()
        .into_iter()
        .map(|(kernel, complement, action, g)| CorpusEntry {
            kernel,
            complement,
            action: action.iter().map(|phi| phi.map().to_vec()).collect(),
            isomorphic_to: groups
                .iter()
                .find(|(_, h)| are_isomorphic(&g, h).is_some())
                .map(|(n, _)| n.to_string()),
        })
        .collect();

    Order8Classification {
        pairwise_non_isomorphic,
        nonabelian_count: nonabelian.len(),
        nonabelian_have_element_of_order_4: nonabelian.iter().all(|p| p.has_element_of_order_4),
        klein_kernel_involutions,
        corpus_classified: corpus.iter().all(|e| e.isomorphic_to.is_some()),
        corpus,
        groups: profiles,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exponent2Entry {
    pub name: String,
    pub order: usize,
    pub exponent: usize,
    pub abelian: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exponent2Report {
    /// `C2^k` for `k = 1..=max_k`.
    pub elementary: Vec<Exponent2Entry>,
    /// Every order-8 group built here, for the contrapositive
    /// "nonabelian implies exponent > 2".
    pub order8: Vec<Exponent2Entry>,
    pub holds: bool,
}

/// Exponent ≤ 2 forces commutativity: checked on `C2^k` and, in the
/// contrapositive, on every order-8 group this crate constructs.
pub fn exponent2_abelian_check(max_k: usize) -> Result<Exponent2Report, AuditError> {
    if !(1..=4).contains(&max_k) {
        return Err(AuditError::RankOutOfRange(max_k));
    }
    let entry = |name: String, g: &GroupTable| Exponent2Entry {
        name,
        order: g.order(),
        exponent: g.exponent(),
        abelian: g.is_abelian(),
    };
    let elementary: Vec<Exponent2Entry> = (1..=max_k)
        .map(|k| entry(format!("C2^{k}"), &elementary_abelian_2(k)))
        .collect();
    let mut order8: Vec<Exponent2Entry> = order8_groups()
        .iter()
        .map(|(n, g)| entry(n.to_string(), g))
        .collect();
    order8.extend(
        order8_corpus()
            .iter()
            .enumerate()
            .map(|(i, (k, a, _, g))| entry(format!("{k}x|{a} #{i}"), g)),
    );
    let holds = elementary.iter().all(|e| e.exponent <= 2 && e.abelian)
        && order8.iter().all(|e| e.abelian || e.exponent > 2);
    Ok(Exponent2Report {
        elementary,
        order8,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample() {
        let r = reproduce_counterexample();
        assert!(r.groups_isomorphic);
        assert_eq!(r.verdict, Verdict::IllDefinedWitness);
        assert_eq!(r.degree_sequences[0], PUBLISHED_DS_DIHEDRAL);
        assert_eq!(r.degree_sequences[1], PUBLISHED_DS_KLEIN_BY_C2);
        assert_eq!(r.edge_counts, [13, 13]);
        assert!(matches_published(&r));
    }

    #[test]
    fn same_description_is_consistent() {
        let d = dihedral_description();
        let r = audit_pair(&d, &d, &InterpretationPolicy::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Consistent);
        assert_eq!(r.degree_sequences[0], r.degree_sequences[1]);
    }

    #[test]
    fn non_isomorphic_groups() {
        let abelian = parse_split_description("K: <x|x^4>\nA: <y|y^2>\n").unwrap();
        let r = audit_pair(&dihedral_description(), &abelian, &InterpretationPolicy::default())
            .unwrap();
        assert!(!r.groups_isomorphic);
        assert_eq!(r.verdict, Verdict::GroupsNotIsomorphic);
        assert!(r.isomorphism.is_none());
    }

    #[test]
    fn errors_name_the_description() {
        let bad = parse_split_description("K: <x, y|x^2, y^2>\nA: <z|z^2>\n").unwrap();
        let e = audit_pair(&dihedral_description(), &bad, &InterpretationPolicy::default())
            .unwrap_err();
        assert!(matches!(e, AuditError::Realization { which: 2, .. }));
    }

    #[test]
    fn verdict_table() {
        assert_eq!(Verdict::from_flags(true, false), Verdict::IllDefinedWitness);
        assert_eq!(Verdict::from_flags(true, true), Verdict::Consistent);
        assert_eq!(Verdict::from_flags(false, false), Verdict::GroupsNotIsomorphic);
        assert_eq!(Verdict::from_flags(false, true), Verdict::GroupsNotIsomorphic);
    }

    #[test]
    fn sweep_edge_cases() {
        let (d1, d2) = (dihedral_description(), klein_by_c2_description());
        let empty = policy_sweep(&d1, &d2, &[]).unwrap();
        assert!(empty.reports.is_empty());
        assert!(!empty.any_consistent);
        let single = policy_sweep(&d1, &d2, &[InterpretationPolicy::default()]).unwrap();
        assert_eq!(single.reports, vec![reproduce_counterexample()]);
    }

    #[test]
    fn classification() {
        let c = classify_order8();
        assert!(c.passed(), "{c:#?}");
        assert_eq!(c.nonabelian_count, 2);
        assert_eq!(c.profile("Q8").unwrap().involutions, 1);
        assert_eq!(c.corpus.len(), 8);
    }

    #[test]
    fn exponent_two() {
        let r = exponent2_abelian_check(3).unwrap();
        assert!(r.holds);
        assert_eq!(r.elementary[2].exponent, 2);
        let d8 = r.order8.iter().find(|e| e.name == "D8").unwrap();
        assert!(!d8.abelian);
        assert_eq!(d8.exponent, 4);
        assert!(exponent2_abelian_check(0).is_err());
        assert!(exponent2_abelian_check(5).is_err());
        assert!(exponent2_abelian_check(1).unwrap().elementary[0].abelian);
    }
}
