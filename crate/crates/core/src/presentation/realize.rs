use std::collections::BTreeSet;

use serde::Serialize;

use super::parse::{Presentation, SplitDescription};
use super::word::{GenId, Word};
use crate::error::PresentationError;
use crate::group::{
    automorphism_from_generator_images, direct_product, make_cyclic, semidirect_product,
    Automorphism, GroupTable, SplitGroup,
};

/// Largest kernel or complement order `realize` accepts.
pub const MAX_FACTOR_ORDER: usize = 64;

/// Default word-length bound for [`check_generator_condition`].
pub const DEFAULT_MAX_WORD_LEN: usize = 4;

/// A presentation recognized as a finite abelian group given by power
/// relations, pairwise commutators and optional extra relators.
#[derive(Debug, Clone)]
pub struct FactorRealization {
    pub group: GroupTable,
    /// Element index of each generator.
    pub generator_images: Vec<usize>,
    /// Normal-form exponent tuple of each element, one entry per generator.
    pub exponents: Vec<Vec<i64>>,
}

/// Recognizes `p` as `(C_n1 × … × C_nk) / N`.
///
/// Each generator needs a power relation `x^n` (several are combined by gcd)
/// and, with more than one generator, every pair needs a commutator relator
/// such as `a b a^-1 b^-1`. Any remaining relator is evaluated in the
/// abelian group and factored out. Elements are named by the exponent tuple
/// with the fewest nonzero entries, ties broken lexicographically.
pub fn realize_presentation(p: &Presentation) -> Result<FactorRealization, PresentationError> {
    let k = p.generators.len();
    let mut power = vec![0u64; k];
    let mut commuting = BTreeSet::new();
    let mut extras = Vec::new();
    for rel in &p.relations {
        let f = rel.factors();
        if f.len() == 1 {
            power[f[0].gen.0] = gcd(power[f[0].gen.0], f[0].exp.unsigned_abs());
        } else if let Some(pair) = commutator_pair(rel) {
            commuting.insert(pair);
        } else if !rel.is_empty() {
            extras.push(rel);
        }
    }
    if let Some(i) = power.iter().position(|&n| n == 0) {
        return Err(PresentationError::Unsupported(format!(
            "generator '{}' has no power relation, so the group is not a finite product of cyclic groups",
            p.generators[i]
        )));
    }
    for i in 0..k {
        for j in i + 1..k {
            if !commuting.contains(&(i, j)) {
                return Err(PresentationError::Unsupported(format!(
                    "no commutator relation for '{}' and '{}'; only cyclic groups and direct products of cyclic groups are supported",
                    p.generators[i], p.generators[j]
                )));
            }
        }
    }
    let moduli: Vec<usize> = power.iter().map(|&n| n as usize).collect();
    let size = moduli
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .filter(|&s| s <= MAX_FACTOR_ORDER)
        .ok_or_else(|| {
            PresentationError::Unsupported(format!(
                "the product of the generator orders exceeds {MAX_FACTOR_ORDER}"
            ))
        })?;

    let product = moduli.iter().fold(make_cyclic(1).expect("order 1"), |acc, &n| {
        direct_product(&acc, &make_cyclic(n).expect("power relations are nonzero"))
    });
    debug_assert_eq!(product.order(), size);
    let digits = |mut x: usize| -> Vec<i64> {
        let mut out = vec![0i64; k];
        for i in (0..k).rev() {
            out[i] = (x % moduli[i]) as i64;
            x /= moduli[i];
        }
        out
    };
    let index_of = |exps: &[i64]| -> usize {
        exps.iter().zip(&moduli).fold(0usize, |acc, (&e, &n)| {
            acc * n + e.rem_euclid(n as i64) as usize
        })
    };
    let unit = |i: usize| {
        let mut e = vec![0i64; k];
        e[i] = 1;
        index_of(&e)
    };

    let relator_values: Vec<usize> = extras
        .iter()
        .map(|w| {
            let mut e = vec![0i64; k];
            for f in w.factors() {
                e[f.gen.0] += f.exp;
            }
            index_of(&e)
        })
        .collect();
    let kernel = product.subgroup_mask(&relator_values);

    if kernel.iter().filter(|&&m| m).count() == 1 {
        return Ok(FactorRealization {
            generator_images: (0..k).map(unit).collect(),
            exponents: (0..size).map(digits).collect(),
            group: product,
        });
    }

    // quotient by the subgroup generated by the extra relators
    let members: Vec<usize> = (0..size).filter(|&x| kernel[x]).collect();
    let mut coset_of = vec![usize::MAX; size];
    let mut reps = Vec::new();
    for x in 0..size {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &n in &members {
            coset_of[product.mul(x, n)] = id;
        }
    }
    let q = reps.len();
    let mut table = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[product.mul(a, b)]);
        }
    }
    let group = GroupTable::from_flat(q, table).expect("quotient of an abelian group");
    let mut exponents: Vec<Option<Vec<i64>>> = vec![None; q];
    for x in 0..size {
        let cand = digits(x);
        let slot = &mut exponents[coset_of[x]];
        let key = |e: &Vec<i64>| (e.iter().filter(|&&v| v != 0).count(), e.clone());
        if slot.as_ref().is_none_or(|cur| key(&cand) < key(cur)) {
            *slot = Some(cand);
        }
    }
    Ok(FactorRealization {
        group,
        generator_images: (0..k).map(|i| coset_of[unit(i)]).collect(),
        exponents: exponents.into_iter().map(|e| e.expect("every coset is nonempty")).collect(),
    })
}

/// `(i, j)` with `i < j` when `w` is a cyclic rotation or inverse of the
/// commutator `[z_i, z_j]`, i.e. `z_i^e z_j^f z_i^-e z_j^-f` with `e, f = ±1`.
fn commutator_pair(w: &Word) -> Option<(usize, usize)> {
    let f = w.factors();
    if f.len() != 4 {
        return None;
    }
    let (g, h) = (f[0].gen, f[1].gen);
    let shape = g != h
        && f[2].gen == g
        && f[3].gen == h
        && f[0].exp.abs() == 1
        && f[1].exp.abs() == 1
        && f[2].exp == -f[0].exp
        && f[3].exp == -f[1].exp;
    shape.then(|| (g.0.min(h.0), g.0.max(h.0)))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A split description realized as a concrete group, with every element
/// named by its normal-form word over `X ∪ Y`.
#[derive(Debug, Clone)]
pub struct Realization {
    split: SplitGroup,
    names: Vec<String>,
    kernel_generators: usize,
    generator_map: Vec<usize>,
    generator_orders: Vec<usize>,
    canonical: Vec<Word>,
}

impl Realization {
    pub fn group(&self) -> &GroupTable {
        &self.split.group
    }

    pub fn split(&self) -> &SplitGroup {
        &self.split
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn kernel_generator_count(&self) -> usize {
        self.kernel_generators
    }

    /// Element index of each generator in `G`.
    pub fn generator_map(&self) -> &[usize] {
        &self.generator_map
    }

    /// Order of each generator's image in `G`.
    pub fn generator_orders(&self) -> &[usize] {
        &self.generator_orders
    }

    pub fn canonical_word(&self, e: usize) -> &Word {
        &self.canonical[e]
    }

    pub fn canonical_words(&self) -> &[Word] {
        &self.canonical
    }

    pub fn word_string(&self, w: &Word) -> String {
        w.display(&self.names).to_string()
    }
}

/// Builds `K ⋊ A` from a description and names every element `k·a` by the
/// kernel normal form followed by the complement normal form.
pub fn realize(d: &SplitDescription) -> Result<Realization, PresentationError> {
    let kernel = realize_presentation(&d.kernel)?;
    let complement = realize_presentation(&d.complement)?;
    for (what, r) in [("kernel", &kernel), ("complement", &complement)] {
        if r.group.order() > MAX_FACTOR_ORDER {
            return Err(PresentationError::Unsupported(format!(
                "{what} order {} exceeds {MAX_FACTOR_ORDER}",
                r.group.order()
            )));
        }
    }

    let kgroup = &kernel.group;
    let mut generator_actions = Vec::with_capacity(d.complement.generators.len());
    for (j, name) in d.complement.generators.iter().enumerate() {
        let mut images = kernel.generator_images.clone();
        if let Some(rule) = d.action.iter().find(|r| r.complement_generator == j) {
            for (k, w) in &rule.images {
                images[*k] = w
                    .factors()
                    .iter()
                    .fold(kgroup.identity(), |acc, f| {
                        kgroup.mul(acc, kgroup.pow(kernel.generator_images[f.gen.0], f.exp))
                    });
            }
        }
        let phi = automorphism_from_generator_images(kgroup, &kernel.generator_images, &images)
            .map_err(|source| PresentationError::InvalidAction {
                generator: name.clone(),
                source,
            })?;
        generator_actions.push(phi);
    }

    let action: Vec<Automorphism> = complement
        .exponents
        .iter()
        .map(|tuple| {
            let mut acc = Automorphism::identity(kgroup.order());
            for (phi, &e) in generator_actions.iter().zip(tuple) {
                for _ in 0..e {
                    acc = acc.compose(phi);
                }
            }
            acc
        })
        .collect();
    let split = semidirect_product(kgroup, &complement.group, &action)
        .map_err(PresentationError::ActionNotHomomorphic)?;

    let m = d.kernel.generators.len();
    let generator_map: Vec<usize> = kernel
        .generator_images
        .iter()
        .map(|&k| split.embed_kernel(k))
        .chain(complement.generator_images.iter().map(|&a| split.embed_complement(a)))
        .collect();
    let generator_orders = generator_map
        .iter()
        .map(|&e| split.group.element_order(e).expect("generator images are in range"))
        .collect();
    let canonical = split
        .group
        .elements()
        .map(|g| {
            let (k, a) = split.split(g);
            let kernel_part = kernel.exponents[k].iter().enumerate().map(|(i, &e)| (GenId(i), e));
            let complement_part = complement.exponents[a]
                .iter()
                .enumerate()
                .map(|(j, &e)| (GenId(m + j), e));
            Word::from_factors(kernel_part.chain(complement_part))
        })
        .collect();

    Ok(Realization {
        split,
        names: d.generator_names(),
        kernel_generators: m,
        generator_map,
        generator_orders,
        canonical,
    })
}

/// Normal-form word of every element, indexed by element.
pub fn canonical_words(r: &Realization) -> &[Word] {
    r.canonical_words()
}

/// Left-to-right product of generator images raised to their exponents.
pub fn evaluate_word(r: &Realization, w: &Word) -> Result<usize, PresentationError> {
    let g = r.group();
    w.factors().iter().try_fold(g.identity(), |acc, f| {
        let image = *r
            .generator_map
            .get(f.gen.0)
            .ok_or(PresentationError::UnknownGeneratorId(f.gen.0))?;
        Ok(g.mul(acc, g.pow(image, f.exp)))
    })
}

/// Outcome of the bounded search for one generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorCheck {
    pub generator: String,
    /// A word of length at least 2 over the other generators equal to this
    /// generator, if one was found within the bound.
    pub witness: Option<String>,
    #[serde(skip)]
    pub witness_word: Option<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorConditionReport {
    pub max_len: usize,
    pub checks: Vec<GeneratorCheck>,
}

impl GeneratorConditionReport {
    /// True when no violation was found up to `max_len`.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    pub fn violations(&self) -> impl Iterator<Item = &GeneratorCheck> {
        self.checks.iter().filter(|c| c.witness.is_some())
    }
}

/// Searches, for each generator `z`, all reduced words of length `2..=max_len`
/// over the other generators (exponents in `1..ord`) for one that evaluates
/// to `z`. Words are tried by length, then generator id, then exponent; the
/// first hit is reported.
pub fn check_generator_condition(r: &Realization, max_len: usize) -> GeneratorConditionReport {
    let checks = (0..r.names.len())
        .map(|z| {
            let target = r.generator_map[z];
            let others: Vec<usize> = (0..r.names.len()).filter(|&g| g != z).collect();
            let witness_word = (2..=max_len).find_map(|len| {
                let mut prefix = Vec::with_capacity(len);
                search_words(r, &others, len, r.group().identity(), &mut prefix, target)
            });
            GeneratorCheck {
                generator: r.names[z].clone(),
                witness: witness_word.as_ref().map(|w| r.word_string(w)),
                witness_word,
            }
        })
        .collect();
    GeneratorConditionReport { max_len, checks }
}

fn search_words(
    r: &Realization,
    alphabet: &[usize],
    len: usize,
    value: usize,
    prefix: &mut Vec<(GenId, i64)>,
    target: usize,
) -> Option<Word> {
    if prefix.len() == len {
        return (value == target).then(|| Word::from_factors(prefix.iter().copied()));
    }
    let g = r.group();
    for &gen in alphabet {
        if prefix.last().is_some_and(|(last, _)| last.0 == gen) {
            continue;
        }
        let image = r.generator_map[gen];
        let mut power = image;
        for exp in 1..r.generator_orders[gen] as i64 {
            prefix.push((GenId(gen), exp));
            if let Some(w) = search_words(r, alphabet, len, g.mul(value, power), prefix, target) {
                return Some(w);
            }
            prefix.pop();
            power = g.mul(power, image);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse::{parse_presentation, parse_split_description};

    const D8: &str = "K: <x | x^4>\nA: <y | y^2>\naction: y: x -> x^-1\n";
    const V4C2: &str = "K: <a, b | a^2, b^2, a b a^-1 b^-1>\nA: <c | c^2>\naction: c: a -> b; b -> a\n";

    fn words(r: &Realization) -> Vec<String> {
        r.canonical_words().iter().map(|w| r.word_string(w)).collect()
    }

    fn sorted_words(r: &Realization) -> Vec<String> {
        let mut w = words(r);
        w.sort();
        w
    }

    #[test]
    fn dihedral_normal_forms() {
        let r = realize(&parse_split_description(D8).unwrap()).unwrap();
        assert_eq!(r.group().order(), 8);
        assert_eq!(
            sorted_words(&r),
            vec!["1", "x", "x y", "x^2", "x^2 y", "x^3", "x^3 y", "y"]
        );
        let x2y = Word::from_factors([(GenId(0), 2), (GenId(1), 1)]);
        let e = evaluate_word(&r, &x2y).unwrap();
        assert_eq!(r.canonical_word(e), &x2y);
        assert!(r.canonical_word(r.group().identity()).is_empty());
    }

    #[test]
    fn klein_by_c2_normal_forms() {
        let r = realize(&parse_split_description(V4C2).unwrap()).unwrap();
        assert_eq!(
            sorted_words(&r),
            vec!["1", "a", "a b", "a b c", "a c", "b", "b c", "c"]
        );
        let abc = Word::from_factors([(GenId(0), 1), (GenId(1), 1), (GenId(2), 1)]);
        let e = evaluate_word(&r, &abc).unwrap();
        assert_eq!(r.canonical_word(e), &abc);
    }

    #[test]
    fn trivial_action_gives_direct_product() {
        let r = realize(&parse_split_description("K: <x|x^2>\nA: <y|y^2>\n").unwrap()).unwrap();
        assert_eq!(sorted_words(&r), vec!["1", "x", "x y", "y"]);
        assert!(r.group().is_abelian());
    }

    #[test]
    fn evaluation() {
        let r = realize(&parse_split_description(D8).unwrap()).unwrap();
        let g = r.group();
        assert_eq!(evaluate_word(&r, &Word::empty()).unwrap(), g.identity());
        let xy = evaluate_word(&r, &Word::from_factors([(GenId(0), 1), (GenId(1), 1)])).unwrap();
        assert_eq!(xy, g.mul(r.generator_map()[0], r.generator_map()[1]));
        assert_eq!(
            evaluate_word(&r, &Word::single(GenId(0), 5)).unwrap(),
            evaluate_word(&r, &Word::single(GenId(0), 1)).unwrap()
        );
        assert_eq!(
            evaluate_word(&r, &Word::single(GenId(7), 1)),
            Err(PresentationError::UnknownGeneratorId(7))
        );
    }

    #[test]
    fn unsupported_shapes() {
        let no_power = parse_split_description("K: <x, y | x^2, x y x^-1 y^-1>\nA: <z|z^2>\n").unwrap();
        assert!(matches!(realize(&no_power), Err(PresentationError::Unsupported(_))));
        let free = parse_split_description("K: <x, y | x^2, y^2>\nA: <z|z^2>\n").unwrap();
        assert!(matches!(realize(&free), Err(PresentationError::Unsupported(_))));
        let big = parse_split_description("K: <x | x^65>\nA: <z|z^2>\n").unwrap();
        assert!(matches!(realize(&big), Err(PresentationError::Unsupported(_))));
    }

    #[test]
    fn invalid_actions() {
        // x -> x^2 is not a bijection of C4
        let d = parse_split_description("K: <x|x^4>\nA: <y|y^2>\naction: y: x -> x^2\n").unwrap();
        assert!(matches!(realize(&d), Err(PresentationError::InvalidAction { .. })));
        // an order-2 automorphism cannot be the image of a generator of order 3
        let d = parse_split_description("K: <x|x^4>\nA: <y|y^3>\naction: y: x -> x^-1\n").unwrap();
        assert!(matches!(realize(&d), Err(PresentationError::ActionNotHomomorphic(_))));
    }

    #[test]
    fn extra_relators_are_factored_out() {
        let p = parse_presentation(
            "< x, y, z | x^2, y^2, z^2, x y x^-1 y^-1, x z x^-1 z^-1, y z y^-1 z^-1, x y z^-1 >",
        )
        .unwrap();
        let f = realize_presentation(&p).unwrap();
        assert_eq!(f.group.order(), 4);
        let z = f.generator_images[2];
        assert_eq!(f.group.mul(f.generator_images[0], f.generator_images[1]), z);
        assert_eq!(f.exponents[z], vec![0, 0, 1]);
        // power relations are combined by gcd
        let p = parse_presentation("< x | x^4, x^6 >").unwrap();
        assert_eq!(realize_presentation(&p).unwrap().group.order(), 2);
    }

    #[test]
    fn commutator_forms() {
        for rel in ["a b a^-1 b^-1", "b a b^-1 a^-1", "a^-1 b^-1 a b", "a b^-1 a^-1 b"] {
            let p = parse_presentation(&format!("< a, b | a^2, b^3, {rel} >")).unwrap();
            assert_eq!(realize_presentation(&p).unwrap().group.order(), 6, "{rel}");
        }
    }

    #[test]
    fn generator_condition_dihedral_passes() {
        let r = realize(&parse_split_description(D8).unwrap()).unwrap();
        let rep = check_generator_condition(&r, 3);
        assert!(rep.passed());
        assert_eq!(rep.checks.len(), 2);
    }

    #[test]
    fn generator_condition_klein_by_c2_finds_conjugates() {
        // the swap action makes c b c = a and c a c = b
        let r = realize(&parse_split_description(V4C2).unwrap()).unwrap();
        let rep = check_generator_condition(&r, 3);
        assert!(!rep.passed());
        let by_name: Vec<(&str, Option<&str>)> = rep
            .checks
            .iter()
            .map(|c| (c.generator.as_str(), c.witness.as_deref()))
            .collect();
        assert_eq!(
            by_name,
            vec![("a", Some("c b c")), ("b", Some("c a c")), ("c", None)]
        );
        // nothing of length 2 works
        assert!(check_generator_condition(&r, 2).passed());
    }

    #[test]
    fn generator_condition_redundant_generator() {
        let d = parse_split_description(
            "K: <x, y, z | x^2, y^2, z^2, x y x^-1 y^-1, x z x^-1 z^-1, y z y^-1 z^-1, x y z^-1>\nA: <w | w^2>\n",
        )
        .unwrap();
        let r = realize(&d).unwrap();
        let rep = check_generator_condition(&r, 2);
        let z = &rep.checks[2];
        assert_eq!(
            z.witness_word,
            Some(Word::from_factors([(GenId(0), 1), (GenId(1), 1)]))
        );
        assert_eq!(z.witness.as_deref(), Some("x y"));
    }
}
