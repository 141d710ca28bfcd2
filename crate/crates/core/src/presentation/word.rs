use std::fmt;

use serde::{Deserialize, Serialize};

/// Index of a generator in a combined alphabet (kernel generators first,
/// then complement generators).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GenId(pub usize);

/// One `generator^exponent` factor of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub gen: GenId,
    pub exp: i64,
}

/// A word `z_1^e_1 ... z_m^e_m` over some alphabet. The empty word is the
/// identity.
///
/// Words built with [`Word::from_factors`] are reduced: adjacent factors have
/// distinct generators and no exponent is zero. [`Word::padded`] is the only
/// way to get zero exponents, and exists for the interpretation in which
/// `x^0` counts as a written factor.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word {
    factors: Vec<Factor>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Free reduction: merges equal neighbours and drops zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (GenId, i64)>>(factors: I) -> Self {
        let mut out: Vec<Factor> = Vec::new();
        for (gen, exp) in factors {
            match out.last_mut() {
                Some(last) if last.gen == gen => {
                    last.exp += exp;
                    if last.exp == 0 {
                        out.pop();
                    }
                }
                _ if exp == 0 => {}
                _ => out.push(Factor { gen, exp }),
            }
        }
        Word { factors: out }
    }

    pub fn single(gen: GenId, exp: i64) -> Self {
        Word::from_factors([(gen, exp)])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// True when every written exponent is zero (the empty word included).
    pub fn is_trivial(&self) -> bool {
        self.factors.iter().all(|f| f.exp == 0)
    }

    pub fn is_reduced(&self) -> bool {
        self.factors.iter().all(|f| f.exp != 0)
            && self.factors.windows(2).all(|w| w[0].gen != w[1].gen)
    }

    /// The word with zero-exponent factors removed and neighbours merged.
    pub fn reduced(&self) -> Word {
        Word::from_factors(self.factors.iter().map(|f| (f.gen, f.exp)))
    }

    /// Rewrites a word whose generators appear in increasing order as a word
    /// over all of `0..generator_count`, writing `z^0` for absent generators.
    pub fn padded(&self, generator_count: usize) -> Word {
        let mut exps = vec![0i64; generator_count];
        for f in &self.factors {
            exps[f.gen.0] += f.exp;
        }
        Word {
            factors: exps
                .into_iter()
                .enumerate()
                .map(|(i, exp)| Factor { gen: GenId(i), exp })
                .collect(),
        }
    }

    /// Shifts every generator id by `offset`.
    pub fn shifted(&self, offset: usize) -> Word {
        Word {
            factors: self
                .factors
                .iter()
                .map(|f| Factor {
                    gen: GenId(f.gen.0 + offset),
                    exp: f.exp,
                })
                .collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_factors(
            self.factors
                .iter()
                .chain(&other.factors)
                .map(|f| (f.gen, f.exp)),
        )
    }

    /// Renders the word in presentation syntax, e.g. `x^2 y`; the empty word
    /// renders as `1`.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> WordDisplay<'a, S> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a, S> {
    word: &'a Word,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for WordDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, factor) in self.word.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = self
                .names
                .get(factor.gen.0)
                .map(AsRef::as_ref)
                .unwrap_or("?");
            f.write_str(name)?;
            if factor.exp != 1 {
                write!(f, "^{}", factor.exp)?;
            }
        }
        Ok(())
    }
}
