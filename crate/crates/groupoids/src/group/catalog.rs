//! Named group constructors.

use super::{FiniteGroup, GroupError};

pub fn trivial() -> FiniteGroup {
    FiniteGroup::from_fn(1, "1", |_, _| 0)
}

/// Cyclic group Z_n under addition mod n.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group order must be positive");
    FiniteGroup::from_fn(n, &format!("Z{n}"), move |a, b| (a + b) % n)
}

/// Klein four-group: Z_2 x Z_2.
pub fn klein() -> FiniteGroup {
    FiniteGroup::from_fn(4, "K4", |a, b| a ^ b)
}

/// Dihedral group of degree n (order 2n). Elements 0..n are the rotations
/// r^i, elements n..2n are the reflections s*r^i.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 1, "dihedral degree must be positive");
    FiniteGroup::from_fn(2 * n, &format!("D{n}"), move |a, b| {
        let (ra, fa) = (a % n, a >= n);
        let (rb, fb) = (b % n, b >= n);
        // (s^fa r^ra)(s^fb r^rb) with s r s = r^-1
        let rot = if fb { (n + rb - ra) % n } else { (ra + rb) % n };
        let flip = fa ^ fb;
        rot + if flip { n } else { 0 }
    })
}

/// Symmetric group S_n on n letters, elements indexed by the lexicographic
/// rank of the permutation's one-line form. Product means "apply right, then
/// left". Degrees above 6 are rejected (the table no longer fits desk scale).
pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if n < 1 || n > 6 {
        return Err(GroupError::BadParams(format!(
            "symmetric degree {n} outside 1..=6"
        )));
    }
    let perms = all_permutations(n);
    let rank = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
    let order = perms.len();
    let mul = |a: usize, b: usize| {
        let composed: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
        rank(&composed)
    };
    Ok(FiniteGroup::from_fn(order, &format!("S{n}"), mul))
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, &mut out);
    out.sort();
    return out;

    fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, out);
            items.swap(k, i);
        }
    }
}

/// Direct product H x K with pairs indexed h * |K| + k.
pub fn direct_product(h: &FiniteGroup, k: &FiniteGroup) -> FiniteGroup {
    let (m, n) = (h.order(), k.order());
    let name = format!(
        "{}x{}",
        h.name().unwrap_or("?"),
        k.name().unwrap_or("?")
    );
    FiniteGroup::from_fn(m * n, &name, move |a, b| {
        let (h1, k1) = (a / n, a % n);
        let (h2, k2) = (b / n, b % n);
        h.mul(h1, h2) * n + k.mul(k1, k2)
    })
}

/// Semidirect product H x| K for a right action of K on H by automorphisms.
///
/// `action[x]` is the automorphism of `h` applied by the K-element `x`,
/// given as the full image list. The action must be a homomorphism from K
/// into Aut(H); both conditions are checked. Pairs are indexed h * |K| + k
/// and multiply as `(h1, k1)(h2, k2) = (h1 * action[k1](h2), k1 k2)`.
pub fn semidirect_product(
    h: &FiniteGroup,
    k: &FiniteGroup,
    action: &[Vec<usize>],
) -> Result<FiniteGroup, GroupError> {
    let (m, n) = (h.order(), k.order());
    if action.len() != n {
        return Err(GroupError::BadParams(format!(
            "expected one automorphism per element of K ({n}), got {}",
            action.len()
        )));
    }
    for (x, phi) in action.iter().enumerate() {
        if !is_automorphism(h, phi) {
            return Err(GroupError::NotAnAutomorphism(x));
        }
    }
    // homomorphism: action[k1 k2] = action[k1] o action[k2]
    for k1 in 0..n {
        for k2 in 0..n {
            let composed = k.mul(k1, k2);
            if (0..m).any(|y| action[composed][y] != action[k1][action[k2][y]]) {
                return Err(GroupError::NotAHomomorphism);
            }
        }
    }
    let name = format!(
        "{}:{}",
        h.name().unwrap_or("?"),
        k.name().unwrap_or("?")
    );
    let action: Vec<Vec<usize>> = action.to_vec();
    Ok(FiniteGroup::from_fn(m * n, &name, move |a, b| {
        let (h1, k1) = (a / n, a % n);
        let (h2, k2) = (b / n, b % n);
        h.mul(h1, action[k1][h2]) * n + k.mul(k1, k2)
    }))
}

fn is_automorphism(g: &FiniteGroup, phi: &[usize]) -> bool {
    let m = g.order();
    if phi.len() != m || phi.iter().any(|&y| y >= m) {
        return false;
    }
    let mut seen = vec![false; m];
    for &y in phi {
        if seen[y] {
            return false;
        }
        seen[y] = true;
    }
    (0..m).all(|a| (0..m).all(|b| phi[g.mul(a, b)] == g.mul(phi[a], phi[b])))
}

/// The nonabelian group of order 105: Z_35 extended by the order-3
/// automorphism x -> 11x (11^3 = 1331 = 1 mod 35).
pub fn nonabelian_105() -> FiniteGroup {
    let h = cyclic(35);
    let k = cyclic(3);
    let phi = |mult: usize| (0..35).map(|x| x * mult % 35).collect::<Vec<_>>();
    let action = vec![phi(1), phi(11), phi(16)];
    semidirect_product(&h, &k, &action).expect("x -> 11x generates a Z3 action on Z35")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{are_isomorphic, sylow_subgroups};

    #[test]
    fn cyclic_5_is_generated_by_one_element() {
        let g = cyclic(5);
        assert_eq!(g.order(), 5);
        assert_eq!(g.generated_subgroup(&[1]).len(), 5);
        assert_eq!(g.element_order(1), 5);
    }

    #[test]
    fn klein_has_exponent_two() {
        let g = klein();
        assert_eq!(g.order(), 4);
        assert!((1..4).all(|x| g.element_order(x) == 2));
    }

    #[test]
    fn dihedral_3_has_the_expected_shape() {
        let g = dihedral(3);
        assert_eq!(g.order(), 6);
        // rotations have order 1, 3, 3; reflections have order 2
        assert_eq!(g.element_order(1), 3);
        assert_eq!(g.element_order(2), 3);
        assert!((3..6).all(|t| g.element_order(t) == 2));
        assert!(!g.is_abelian());
    }

    #[test]
    fn symmetric_2_is_z2_and_s3_is_d3() {
        let s2 = symmetric(2).unwrap();
        assert_eq!(s2.order(), 2);
        let s3 = symmetric(3).unwrap();
        assert!(are_isomorphic(&s3, &dihedral(3), 512).unwrap().is_some());
    }

    #[test]
    fn trivial_action_gives_the_direct_product() {
        let h = cyclic(4);
        let k = cyclic(2);
        let id: Vec<usize> = (0..4).collect();
        let sd = semidirect_product(&h, &k, &[id.clone(), id]).unwrap();
        let dp = direct_product(&h, &k);
        assert_eq!(sd.order(), 8);
        assert!(are_isomorphic(&sd, &dp, 512).unwrap().is_some());
    }

    #[test]
    fn inversion_action_on_z3_gives_d3() {
        let h = cyclic(3);
        let k = cyclic(2);
        let action = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let sd = semidirect_product(&h, &k, &action).unwrap();
        assert!(are_isomorphic(&sd, &dihedral(3), 512).unwrap().is_some());
    }

    #[test]
    fn bad_actions_are_rejected() {
        let h = cyclic(3);
        let k = cyclic(2);
        // x -> x+1 is a bijection but not an automorphism
        let shift = vec![vec![0, 1, 2], vec![1, 2, 0]];
        assert_eq!(
            semidirect_product(&h, &k, &shift),
            Err(GroupError::NotAnAutomorphism(1))
        );
        // identity twice under Z2 is fine, but inversion assigned to the
        // identity element breaks the homomorphism condition
        let misaligned = vec![vec![0, 2, 1], vec![0, 1, 2]];
        assert_eq!(
            semidirect_product(&h, &k, &misaligned),
            Err(GroupError::NotAHomomorphism)
        );
    }

    #[test]
    fn order_105_group_is_nonabelian_with_seven_sylow_3s() {
        let g = nonabelian_105();
        assert_eq!(g.order(), 105);
        assert!(!g.is_abelian());
        assert!(are_isomorphic(&g, &cyclic(105), 512).unwrap().is_none());
        assert_eq!(sylow_subgroups(&g, 3, 512).unwrap().len(), 7);
        assert_eq!(sylow_subgroups(&g, 5, 512).unwrap().len(), 1);
        assert_eq!(sylow_subgroups(&g, 7, 512).unwrap().len(), 1);
    }
}
