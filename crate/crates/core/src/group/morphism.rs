use serde::{Deserialize, Serialize};

use super::table::GroupTable;
use crate::error::GroupError;

/// A permutation of a group's elements that preserves multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Automorphism {
    map: Vec<usize>,
}

impl Automorphism {
    pub fn identity(order: usize) -> Self {
        Automorphism {
            map: (0..order).collect(),
        }
    }

    /// Checks that `map` is a multiplication-preserving bijection of `g`.
    pub fn new(g: &GroupTable, map: Vec<usize>) -> Result<Self, GroupError> {
        check_morphism(g, g, &map)?;
        Ok(Automorphism { map })
    }

    #[inline]
    pub fn apply(&self, e: usize) -> usize {
        self.map[e]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            map: other.map.iter().map(|&e| self.map[e]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &e)| i == e)
    }

    pub fn is_automorphism_of(&self, g: &GroupTable) -> bool {
        check_morphism(g, g, &self.map).is_ok()
    }
}

/// A multiplication-preserving bijection between two groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isomorphism {
    map: Vec<usize>,
}

impl Isomorphism {
    pub fn new(source: &GroupTable, target: &GroupTable, map: Vec<usize>) -> Result<Self, GroupError> {
        check_morphism(source, target, &map)?;
        Ok(Isomorphism { map })
    }

    pub fn apply(&self, e: usize) -> usize {
        self.map[e]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Re-checks every product `map(ab) = map(a) map(b)`.
    pub fn verify(&self, source: &GroupTable, target: &GroupTable) -> bool {
        check_morphism(source, target, &self.map).is_ok()
    }

    pub fn inverse(&self) -> Isomorphism {
        let mut inv = vec![0; self.map.len()];
        for (i, &e) in self.map.iter().enumerate() {
            inv[e] = i;
        }
        Isomorphism { map: inv }
    }
}

fn check_morphism(g: &GroupTable, h: &GroupTable, map: &[usize]) -> Result<(), GroupError> {
    if map.len() != g.order() {
        return Err(GroupError::LengthMismatch {
            expected: g.order(),
            found: map.len(),
        });
    }
    if g.order() != h.order() {
        return Err(GroupError::NotBijective);
    }
    let mut seen = vec![false; h.order()];
    for &e in map {
        h.check_index(e)?;
        if std::mem::replace(&mut seen[e], true) {
            return Err(GroupError::NotBijective);
        }
    }
    for a in g.elements() {
        for b in g.elements() {
            if map[g.mul(a, b)] != h.mul(map[a], map[b]) {
                return Err(GroupError::NotAHomomorphism);
            }
        }
    }
    Ok(())
}

/// Extends `generators[i] ↦ images[i]` to a homomorphism `g -> h` by walking
/// the Cayley graph of `g`. Every edge `x -> x*s` is checked, which is enough
/// for the extension to be multiplicative.
pub fn extend_generator_map(
    g: &GroupTable,
    h: &GroupTable,
    generators: &[usize],
    images: &[usize],
) -> Result<Vec<usize>, GroupError> {
    if generators.len() != images.len() {
        return Err(GroupError::LengthMismatch {
            expected: generators.len(),
            found: images.len(),
        });
    }
    for &s in generators {
        g.check_index(s)?;
    }
    for &t in images {
        h.check_index(t)?;
    }
    let mut map = vec![None; g.order()];
    map[g.identity()] = Some(h.identity());
    let mut stack = vec![g.identity()];
    while let Some(x) = stack.pop() {
        let fx = map[x].expect("visited elements are mapped");
        for (&s, &t) in generators.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = h.mul(fx, t);
            match map[y] {
                Some(prev) if prev != fy => return Err(GroupError::NotAHomomorphism),
                Some(_) => {}
                None => {
                    map[y] = Some(fy);
                    stack.push(y);
                }
            }
        }
    }
    map.into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(GroupError::DoesNotGenerate)
}

/// The unique automorphism of `g` extending `generators[i] ↦ images[i]`.
pub fn automorphism_from_generator_images(
    g: &GroupTable,
    generators: &[usize],
    images: &[usize],
) -> Result<Automorphism, GroupError> {
    let map = extend_generator_map(g, g, generators, images)?;
    Automorphism::new(g, map)
}

/// Brute-force isomorphism search.
///
/// Cheap invariants (order, abelian-ness, element-order multiset) are compared
/// first. Then a greedy generating set of `g` is mapped to candidate images in
/// `h` of equal element order, one generator at a time, extending the partial
/// map over the subgroup generated so far and backtracking on any conflict.
pub fn are_isomorphic(g: &GroupTable, h: &GroupTable) -> Option<Isomorphism> {
    if g.order() != h.order()
        || g.is_abelian() != h.is_abelian()
        || g.order_statistics() != h.order_statistics()
    {
        return None;
    }
    let mut found = None;
    search(g, h, |map| {
        found = Some(map.to_vec());
        false
    });
    let iso = Isomorphism { map: found? };
    debug_assert!(iso.verify(g, h));
    Some(iso)
}

/// Every automorphism of `g`, identity first.
pub fn automorphisms(g: &GroupTable) -> Vec<Automorphism> {
    let mut all = Vec::new();
    search(g, g, |map| {
        all.push(Automorphism { map: map.to_vec() });
        true
    });
    all.sort_by_key(|a| !a.is_identity());
    all
}

/// Enumerates isomorphisms `g -> h`, calling `visit` on each complete map
/// until it returns `false`.
fn search(g: &GroupTable, h: &GroupTable, mut visit: impl FnMut(&[usize]) -> bool) {
    let gens = g.generating_set();
    let g_orders = g.element_orders();
    let h_orders = h.element_orders();
    let mut partial = vec![usize::MAX; g.order()];
    partial[g.identity()] = h.identity();
    let mut used = vec![false; h.order()];
    used[h.identity()] = true;
    let mut images = Vec::with_capacity(gens.len());
    extend_step(g, h, &gens, &g_orders, &h_orders, &mut images, partial, used, &mut visit);
}

#[allow(clippy::too_many_arguments)]
fn extend_step(
    g: &GroupTable,
    h: &GroupTable,
    gens: &[usize],
    g_orders: &[usize],
    h_orders: &[usize],
    images: &mut Vec<usize>,
    partial: Vec<usize>,
    used: Vec<bool>,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    let depth = images.len();
    if depth == gens.len() {
        return visit(&partial);
    }
    let s = gens[depth];
    for t in h.elements() {
        if h_orders[t] != g_orders[s] || used[t] {
            continue;
        }
        images.push(t);
        if let Some((next, next_used)) = close_partial(g, h, &gens[..=depth], images, &partial, &used) {
            if !extend_step(g, h, gens, g_orders, h_orders, images, next, next_used, visit) {
                return false;
            }
        }
        images.pop();
    }
    true
}

/// Extends a partial injective homomorphism over the subgroup generated by
/// `gens`, failing on any inconsistency or collision.
fn close_partial(
    g: &GroupTable,
    h: &GroupTable,
    gens: &[usize],
    images: &[usize],
    partial: &[usize],
    used: &[bool],
) -> Option<(Vec<usize>, Vec<bool>)> {
    let mut map = partial.to_vec();
    let mut used = used.to_vec();
    let mut stack: Vec<usize> = g.elements().filter(|&x| map[x] != usize::MAX).collect();
    while let Some(x) = stack.pop() {
        let fx = map[x];
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = h.mul(fx, t);
            if map[y] == usize::MAX {
                if used[fy] {
                    return None;
                }
                used[fy] = true;
                map[y] = fy;
                stack.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some((map, used))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product, make_cyclic, quaternion, semidirect_product};

    fn c(n: usize) -> GroupTable {
        make_cyclic(n).unwrap()
    }

    fn d8() -> GroupTable {
        let inv = automorphism_from_generator_images(&c(4), &[1], &[3]).unwrap();
        semidirect_product(&c(4), &c(2), &[Automorphism::identity(4), inv])
            .unwrap()
            .group
    }

    fn v4_c2() -> GroupTable {
        let v4 = direct_product(&c(2), &c(2));
        // a = (1,0) at index 2, b = (0,1) at index 1
        let swap = automorphism_from_generator_images(&v4, &[2, 1], &[1, 2]).unwrap();
        semidirect_product(&v4, &c(2), &[Automorphism::identity(4), swap])
            .unwrap()
            .group
    }

    #[test]
    fn swap_automorphism_fixes_product() {
        let v4 = direct_product(&c(2), &c(2));
        let swap = automorphism_from_generator_images(&v4, &[2, 1], &[1, 2]).unwrap();
        assert_eq!(swap.map(), &[0, 2, 1, 3]);
    }

    #[test]
    fn inversion_on_c4() {
        let inv = automorphism_from_generator_images(&c(4), &[1], &[3]).unwrap();
        assert_eq!(inv.map(), &[0, 3, 2, 1]);
    }

    #[test]
    fn squaring_is_not_bijective() {
        assert_eq!(
            automorphism_from_generator_images(&c(4), &[1], &[2]),
            Err(GroupError::NotBijective)
        );
    }

    #[test]
    fn generator_map_errors() {
        // x ↦ x in C4 viewed into C4 but claiming generator 2 only
        assert_eq!(
            automorphism_from_generator_images(&c(4), &[2], &[2]),
            Err(GroupError::DoesNotGenerate)
        );
        // a generator of order 4 cannot land on an element of order 3
        assert_eq!(
            extend_generator_map(&c(4), &c(3), &[1], &[1]),
            Err(GroupError::NotAHomomorphism)
        );
        assert!(matches!(
            automorphism_from_generator_images(&c(4), &[1], &[]),
            Err(GroupError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn dihedral_presentations_are_isomorphic() {
        let (g, h) = (d8(), v4_c2());
        let iso = are_isomorphic(&g, &h).expect("both are dihedral");
        assert!(iso.verify(&g, &h));
        assert!(iso.inverse().verify(&h, &g));
    }

    #[test]
    fn dihedral_is_not_quaternion() {
        assert!(are_isomorphic(&d8(), &quaternion()).is_none());
    }

    #[test]
    fn reflexive_on_identity() {
        let g = d8();
        assert!(are_isomorphic(&g, &g).unwrap().verify(&g, &g));
        assert!(are_isomorphic(&c(4), &c(5)).is_none());
    }

    #[test]
    fn automorphism_group_orders() {
        assert_eq!(automorphisms(&c(1)).len(), 1);
        assert_eq!(automorphisms(&c(4)).len(), 2);
        assert_eq!(automorphisms(&c(5)).len(), 4);
        assert_eq!(automorphisms(&direct_product(&c(2), &c(2))).len(), 6);
        assert_eq!(automorphisms(&d8()).len(), 8);
        assert_eq!(automorphisms(&quaternion()).len(), 24);
        assert!(automorphisms(&d8())[0].is_identity());
    }

    #[test]
    fn scales_to_order_64() {
        let g = crate::group::elementary_abelian_2(6);
        let h = direct_product(&crate::group::elementary_abelian_2(3), &crate::group::elementary_abelian_2(3));
        let iso = are_isomorphic(&g, &h).unwrap();
        assert!(iso.verify(&g, &h));
        let c64 = c(64);
        let c8x8 = direct_product(&c(8), &c(8));
        assert!(are_isomorphic(&c64, &c8x8).is_none());
    }
}
