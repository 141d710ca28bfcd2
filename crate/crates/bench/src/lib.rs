//! Inputs shared by the criterion benchmarks.

use splitgraph::presentation::{parse_split_description, SplitDescription};

/// `C_n ⋊ C2` with inversion, for `n` up to 32.
pub fn dihedral(n: usize) -> SplitDescription {
    parse_split_description(&format!("K: <x | x^{n}>\nA: <y | y^2>\naction: y: x -> x^-1\n"))
        .expect("dihedral description parses")
}

/// `C2^3 ⋊ C2` with the last generator swapping the first two.
pub fn klein_cube_by_c2() -> SplitDescription {
    parse_split_description(
        "K: <a, b, d | a^2, b^2, d^2, a b a^-1 b^-1, a d a^-1 d^-1, b d b^-1 d^-1>\nA: <c | c^2>\naction: c: a -> b; b -> a\n",
    )
    .expect("description parses")
}
