use serde::{Deserialize, Serialize};

use super::morphism::Automorphism;
use crate::error::GroupError;

/// A finite group stored as an index-based Cayley table.
///
/// Elements are `0..order`. `mul(i, j)` is the index of `g_i * g_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct GroupTable {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl From<GroupTable> for RawTable {
    fn from(g: GroupTable) -> Self {
        RawTable {
            order: g.order,
            table: g.rows(),
            identity: g.identity,
            inverse: g.inverse,
        }
    }
}

impl TryFrom<RawTable> for GroupTable {
    type Error = GroupError;

    fn try_from(raw: RawTable) -> Result<Self, Self::Error> {
        let g = GroupTable::from_rows(raw.table)?;
        if g.order != raw.order || g.identity != raw.identity || g.inverse != raw.inverse {
            return Err(GroupError::InconsistentTable);
        }
        Ok(g)
    }
}

impl GroupTable {
    /// Builds a group from explicit rows, checking every group axiom.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::InvalidOrder(0));
        }
        if let Some(row) = rows.iter().position(|r| r.len() != n) {
            return Err(GroupError::NotLatinSquare {
                detail: format!("row {row} has length {}, expected {n}", rows[row].len()),
            });
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        let g = Self::from_flat(n, table)?;
        g.check_axioms()?;
        Ok(g)
    }

    /// Builds a group from a flat row-major table produced by a trusted
    /// constructor. Identity and inverses are located, but associativity is
    /// not re-checked.
    pub(crate) fn from_flat(n: usize, table: Vec<usize>) -> Result<Self, GroupError> {
        debug_assert_eq!(table.len(), n * n);
        if let Some(&bad) = table.iter().find(|&&e| e >= n) {
            return Err(GroupError::IndexOutOfRange { index: bad, order: n });
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|i| table[e * n + i] == i && table[i * n + e] == i))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            match (0..n).find(|&j| table[i * n + j] == identity) {
                Some(j) if table[j * n + i] == identity => inverse[i] = j,
                _ => return Err(GroupError::NoInverse(i)),
            }
        }
        Ok(GroupTable {
            order: n,
            table,
            identity,
            inverse,
        })
    }

    /// Latin square, identity, inverse and associativity checks.
    pub fn check_axioms(&self) -> Result<(), GroupError> {
        let n = self.order;
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let r = self.mul(i, j);
                let c = self.mul(j, i);
                if std::mem::replace(&mut row_seen[r], true) {
                    return Err(GroupError::NotLatinSquare {
                        detail: format!("row {i} repeats element {r}"),
                    });
                }
                if std::mem::replace(&mut col_seen[c], true) {
                    return Err(GroupError::NotLatinSquare {
                        detail: format!("column {i} repeats element {c}"),
                    });
                }
            }
        }
        for i in 0..n {
            if self.mul(self.identity, i) != i || self.mul(i, self.identity) != i {
                return Err(GroupError::NoIdentity);
            }
            if self.mul(i, self.inverse[i]) != self.identity
                || self.mul(self.inverse[i], i) != self.identity
            {
                return Err(GroupError::NoInverse(i));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub(crate) fn check_index(&self, e: usize) -> Result<(), GroupError> {
        if e < self.order {
            Ok(())
        } else {
            Err(GroupError::IndexOutOfRange {
                index: e,
                order: self.order,
            })
        }
    }

    /// `e^exp`, with negative exponents taken through the inverse.
    pub fn pow(&self, e: usize, exp: i64) -> usize {
        let base = if exp < 0 { self.inverse(e) } else { e };
        let m = self.order_unchecked(e) as u64;
        let mut k = exp.unsigned_abs() % m;
        let mut acc = self.identity;
        while k > 0 {
            acc = self.mul(acc, base);
            k -= 1;
        }
        acc
    }

    /// Least `m >= 1` with `e^m = 1`.
    pub fn element_order(&self, e: usize) -> Result<usize, GroupError> {
        self.check_index(e)?;
        Ok(self.order_unchecked(e))
    }

    pub(crate) fn order_unchecked(&self, e: usize) -> usize {
        let mut m = 1;
        let mut acc = e;
        while acc != self.identity {
            acc = self.mul(acc, e);
            m += 1;
        }
        m
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.elements().map(|e| self.order_unchecked(e)).collect()
    }

    /// Sorted multiset of element orders.
    pub fn order_statistics(&self) -> Vec<usize> {
        let mut orders = self.element_orders();
        orders.sort_unstable();
        orders
    }

    pub fn involution_count(&self) -> usize {
        self.elements()
            .filter(|&e| self.order_unchecked(e) == 2)
            .count()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|i| (i + 1..n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|e| self.order_unchecked(e))
            .fold(1, lcm)
    }

    /// Closure of `generators` under multiplication, as a membership mask.
    pub fn subgroup_mask(&self, generators: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &s in generators {
                let y = self.mul(x, s);
                if !member[y] {
                    member[y] = true;
                    stack.push(y);
                }
            }
        }
        member
    }

    pub fn subgroup_order(&self, generators: &[usize]) -> usize {
        self.subgroup_mask(generators).iter().filter(|&&m| m).count()
    }

    /// A generating set built greedily: each step adds the element that
    /// enlarges the generated subgroup the most (ties go to the higher
    /// element order, then the lower index).
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut size = 1;
        while size < self.order {
            let mut best: Option<(usize, usize, usize)> = None;
            let mask = self.subgroup_mask(&gens);
            for x in self.elements().filter(|&x| !mask[x]) {
                gens.push(x);
                let s = self.subgroup_order(&gens);
                gens.pop();
                let key = (s, self.order_unchecked(x));
                if best.is_none_or(|(bs, bo, _)| key > (bs, bo)) {
                    best = Some((s, key.1, x));
                }
            }
            let (s, _, x) = best.expect("a proper subgroup leaves elements outside");
            gens.push(x);
            size = s;
        }
        gens
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Cyclic group of order `n`; element `i` is `generator^i`.
pub fn make_cyclic(n: usize) -> Result<GroupTable, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidOrder(0));
    }
    let table = (0..n).flat_map(|i| (0..n).map(move |j| (i + j) % n)).collect();
    GroupTable::from_flat(n, table)
}

/// `g × h` with element `(i, j)` stored at `i * |h| + j`.
pub fn direct_product(g: &GroupTable, h: &GroupTable) -> GroupTable {
    let (n, m) = (g.order(), h.order());
    let size = n * m;
    let mut table = Vec::with_capacity(size * size);
    for x in 0..size {
        let (xg, xh) = (x / m, x % m);
        for y in 0..size {
            let (yg, yh) = (y / m, y % m);
            table.push(g.mul(xg, yg) * m + h.mul(xh, yh));
        }
    }
    GroupTable::from_flat(size, table).expect("product of groups is a group")
}

/// The quaternion group on `[1, -1, i, -i, j, -j, k, -k]`.
pub fn quaternion() -> GroupTable {
    // unit product table on the basis {1, i, j, k} as (sign, basis index)
    const BASIS: [[(i8, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let decode = |e: usize| (if e.is_multiple_of(2) { 1i8 } else { -1 }, e / 2);
    let mut table = Vec::with_capacity(64);
    for a in 0..8 {
        let (sa, ba) = decode(a);
        for b in 0..8 {
            let (sb, bb) = decode(b);
            let (s, basis) = BASIS[ba][bb];
            let sign = sa * sb * s;
            table.push(basis * 2 + usize::from(sign < 0));
        }
    }
    GroupTable::from_flat(8, table).expect("quaternion table is a group")
}

/// Repeated direct product of `C2`.
pub fn elementary_abelian_2(rank: usize) -> GroupTable {
    let c2 = make_cyclic(2).expect("order 2 is valid");
    (0..rank).fold(make_cyclic(1).expect("order 1 is valid"), |acc, _| {
        direct_product(&acc, &c2)
    })
}

/// A semidirect product `K ⋊ A` together with the split coordinates of its
/// elements. Element `(k, a)` is stored at `k * |A| + a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitGroup {
    pub group: GroupTable,
    pub kernel_order: usize,
    pub complement_order: usize,
}

impl SplitGroup {
    pub fn embed_kernel(&self, k: usize) -> usize {
        k * self.complement_order
    }

    pub fn embed_complement(&self, a: usize) -> usize {
        a
    }

    /// Unique factorization `g = k * a`.
    pub fn split(&self, g: usize) -> (usize, usize) {
        (g / self.complement_order, g % self.complement_order)
    }
}

/// `K ⋊ A` with law `(k1, a1)(k2, a2) = (k1 * action[a1](k2), a1 * a2)`.
///
/// `action[a]` is the automorphism of `K` attached to element `a` of `A`.
/// The action must be a homomorphism `A -> Aut(K)`; this is checked before
/// the table is built.
pub fn semidirect_product(
    k: &GroupTable,
    a: &GroupTable,
    action: &[Automorphism],
) -> Result<SplitGroup, GroupError> {
    if action.len() != a.order() {
        return Err(GroupError::InvalidAction(format!(
            "action lists {} automorphisms for a complement of order {}",
            action.len(),
            a.order()
        )));
    }
    for (i, phi) in action.iter().enumerate() {
        if !phi.is_automorphism_of(k) {
            return Err(GroupError::InvalidAction(format!(
                "image of complement element {i} is not an automorphism of the kernel"
            )));
        }
    }
    if !action[a.identity()].is_identity() {
        return Err(GroupError::InvalidAction(
            "complement identity does not act trivially".into(),
        ));
    }
    for a1 in a.elements() {
        for a2 in a.elements() {
            if action[a.mul(a1, a2)] != action[a1].compose(&action[a2]) {
                return Err(GroupError::InvalidAction(format!(
                    "action is not a homomorphism at complement elements ({a1}, {a2})"
                )));
            }
        }
    }

    let (nk, na) = (k.order(), a.order());
    let size = nk * na;
    let mut table = Vec::with_capacity(size * size);
    for x in 0..size {
        let (k1, a1) = (x / na, x % na);
        let phi = &action[a1];
        for y in 0..size {
            let (k2, a2) = (y / na, y % na);
            table.push(k.mul(k1, phi.apply(k2)) * na + a.mul(a1, a2));
        }
    }
    Ok(SplitGroup {
        group: GroupTable::from_flat(size, table)?,
        kernel_order: nk,
        complement_order: na,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::automorphism_from_generator_images;

    fn dihedral8() -> GroupTable {
        let c4 = make_cyclic(4).unwrap();
        let c2 = make_cyclic(2).unwrap();
        let inv = automorphism_from_generator_images(&c4, &[1], &[3]).unwrap();
        semidirect_product(&c4, &c2, &[Automorphism::identity(4), inv])
            .unwrap()
            .group
    }

    #[test]
    fn cyclic_basics() {
        assert_eq!(make_cyclic(0), Err(GroupError::InvalidOrder(0)));
        let c1 = make_cyclic(1).unwrap();
        assert_eq!(c1.order(), 1);
        assert_eq!(c1.identity(), 0);
        assert_eq!(make_cyclic(2).unwrap().rows(), vec![vec![0, 1], vec![1, 0]]);
        let c4 = make_cyclic(4).unwrap();
        assert_eq!(c4.element_order(1), Ok(4));
        assert_eq!(c4.element_order(0), Ok(1));
        assert!(c4.element_order(4).is_err());
    }

    #[test]
    fn klein_four_is_all_involutions() {
        let c2 = make_cyclic(2).unwrap();
        let v4 = direct_product(&c2, &c2);
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.involution_count(), 3);
        assert_eq!(v4.exponent(), 2);
    }

    #[test]
    fn c2_by_c4_direct() {
        let g = direct_product(&make_cyclic(2).unwrap(), &make_cyclic(4).unwrap());
        assert_eq!(g.order(), 8);
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn trivial_factor_is_neutral() {
        let c3 = make_cyclic(3).unwrap();
        let g = direct_product(&make_cyclic(1).unwrap(), &c3);
        assert_eq!(g, c3);
    }

    #[test]
    fn dihedral_statistics() {
        let d8 = dihedral8();
        d8.check_axioms().unwrap();
        assert!(!d8.is_abelian());
        assert_eq!(d8.involution_count(), 5);
        assert_eq!(d8.exponent(), 4);
    }

    #[test]
    fn quaternion_statistics() {
        let q8 = quaternion();
        q8.check_axioms().unwrap();
        // -1 is stored at index 1
        assert_eq!(q8.element_order(1), Ok(2));
        assert_eq!(q8.involution_count(), 1);
        assert!(!q8.is_abelian());
        assert_eq!(q8.order_statistics(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn trivial_action_matches_direct_product() {
        let c4 = make_cyclic(4).unwrap();
        let c2 = make_cyclic(2).unwrap();
        let id = Automorphism::identity(4);
        let sd = semidirect_product(&c4, &c2, &[id.clone(), id]).unwrap();
        assert_eq!(sd.group, direct_product(&c4, &c2));
    }

    #[test]
    fn non_homomorphic_action_rejected() {
        let c2 = make_cyclic(2).unwrap();
        let c3 = make_cyclic(3).unwrap();
        let v4 = direct_product(&c2, &c2);
        let swap = automorphism_from_generator_images(&v4, &[2, 1], &[1, 2]).unwrap();
        // a generator of C3 cannot act by an involution
        let action = vec![Automorphism::identity(4), swap.clone(), swap];
        assert!(matches!(
            semidirect_product(&v4, &c3, &action),
            Err(GroupError::InvalidAction(_))
        ));
        assert!(matches!(
            semidirect_product(&v4, &c3, &[Automorphism::identity(4)]),
            Err(GroupError::InvalidAction(_))
        ));
    }

    #[test]
    fn rows_roundtrip_through_checked_constructor() {
        let d8 = dihedral8();
        assert_eq!(GroupTable::from_rows(d8.rows()).unwrap(), d8);
        let json = serde_json::to_string(&d8).unwrap();
        let back: GroupTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d8);
    }

    #[test]
    fn malformed_tables_rejected() {
        assert!(GroupTable::from_rows(vec![]).is_err());
        assert!(GroupTable::from_rows(vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(GroupTable::from_rows(vec![vec![0, 1], vec![1]]).is_err());
        // a Latin square with identity 0 that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            GroupTable::from_rows(loop5),
            Err(GroupError::NotAssociative { .. })
        ));
    }

    #[test]
    fn greedy_generating_sets() {
        assert_eq!(make_cyclic(6).unwrap().generating_set().len(), 1);
        assert_eq!(dihedral8().generating_set().len(), 2);
        assert_eq!(elementary_abelian_2(3).generating_set().len(), 3);
        assert!(make_cyclic(1).unwrap().generating_set().is_empty());
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let c4 = make_cyclic(4).unwrap();
        assert_eq!(c4.pow(1, -1), 3);
        assert_eq!(c4.pow(1, 5), 1);
        assert_eq!(c4.pow(1, 0), 0);
    }
}
