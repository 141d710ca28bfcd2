//! Finite groups as Cayley tables: constructors, element statistics and a
//! brute-force isomorphism search sized for groups of order at most 64.

mod corpus;
mod morphism;
mod table;

pub use corpus::{actions, constructed_groups};
pub use morphism::{
    are_isomorphic, automorphism_from_generator_images, automorphisms, extend_generator_map,
    Automorphism, Isomorphism,
};
pub use table::{
    direct_product, elementary_abelian_2, make_cyclic, quaternion, semidirect_product,
    GroupTable, SplitGroup,
};
