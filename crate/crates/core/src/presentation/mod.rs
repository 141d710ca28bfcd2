//! Presentation DSL, split descriptions, and their realization as concrete
//! groups with normal-form element names.

mod parse;
mod realize;
mod word;

pub use parse::{parse_presentation, parse_split_description, ActionRule, Presentation, SplitDescription};
pub use realize::{
    canonical_words, check_generator_condition, evaluate_word, realize, realize_presentation,
    FactorRealization, GeneratorCheck, GeneratorConditionReport, Realization, DEFAULT_MAX_WORD_LEN,
    MAX_FACTOR_ORDER,
};
pub use word::{Factor, GenId, Word, WordDisplay};
