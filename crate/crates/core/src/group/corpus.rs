use super::morphism::{automorphisms, Automorphism};
use super::table::{direct_product, make_cyclic, semidirect_product, GroupTable};

/// Every homomorphism `A -> Aut(K)`, as the automorphism attached to each
/// element of `A`. The trivial action comes first.
pub fn actions(k: &GroupTable, a: &GroupTable) -> Vec<Vec<Automorphism>> {
    let auts = automorphisms(k);
    let gens = a.generating_set();
    let mut out = Vec::new();
    let total = auts.len().pow(gens.len() as u32);
    'assignments: for code in 0..total {
        let mut rest = code;
        let images: Vec<&Automorphism> = gens
            .iter()
            .map(|_| {
                let i = rest % auts.len();
                rest /= auts.len();
                &auts[i]
            })
            .collect();
        let mut action: Vec<Option<Automorphism>> = vec![None; a.order()];
        action[a.identity()] = Some(Automorphism::identity(k.order()));
        let mut stack = vec![a.identity()];
        while let Some(x) = stack.pop() {
            let phi_x = action[x].clone().expect("visited");
            for (&s, phi_s) in gens.iter().zip(&images) {
                let y = a.mul(x, s);
                let phi_y = phi_x.compose(phi_s);
                match &action[y] {
                    Some(prev) if *prev != phi_y => continue 'assignments,
                    Some(_) => {}
                    None => {
                        action[y] = Some(phi_y);
                        stack.push(y);
                    }
                }
            }
        }
        out.push(action.into_iter().map(|p| p.expect("generators generate")).collect());
    }
    out
}

/// Abelian groups `C_n1 × … × C_nr` with `2 ≤ n1 ≤ … ≤ nr` and order at most
/// `max_order`, plus the trivial group.
fn abelian_groups(max_order: usize) -> Vec<(String, GroupTable)> {
    fn rec(
        min: usize,
        budget: usize,
        name: String,
        g: GroupTable,
        out: &mut Vec<(String, GroupTable)>,
    ) {
        for n in min..=budget {
            let c = make_cyclic(n).expect("n >= 2");
            let name = if name.is_empty() {
                format!("C{n}")
            } else {
                format!("{name}xC{n}")
            };
            let prod = direct_product(&g, &c);
            out.push((name.clone(), prod.clone()));
            rec(n, budget / n, name, prod, out);
        }
    }
    let mut out = vec![("C1".to_string(), make_cyclic(1).expect("order 1"))];
    rec(2, max_order, String::new(), make_cyclic(1).expect("order 1"), &mut out);
    out
}

/// Every group of order at most `max_order` reachable with this crate's
/// constructors: abelian products of cyclic groups, the quaternion group
/// when it fits, and `K ⋊ A` for abelian `K`, `A` under every action.
pub fn constructed_groups(max_order: usize) -> Vec<(String, GroupTable)> {
    let abelian = abelian_groups(max_order);
    let mut out = abelian.clone();
    if max_order >= 8 {
        out.push(("Q8".to_string(), super::table::quaternion()));
    }
    for (kname, k) in abelian.iter().filter(|(_, k)| k.order() > 1) {
        for (aname, a) in abelian.iter().filter(|(_, a)| a.order() > 1) {
            if k.order() * a.order() > max_order {
                continue;
            }
            for (i, action) in actions(k, a).into_iter().enumerate().skip(1) {
                let sd = semidirect_product(k, a, &action).expect("actions are homomorphisms");
                out.push((format!("{kname}:{aname}#{i}"), sd.group));
            }
        }
    }
    out
}
