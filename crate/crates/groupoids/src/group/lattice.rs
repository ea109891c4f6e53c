//! Subgroup lattice enumeration and the classical Sylow machinery.

use std::collections::BTreeSet;

use super::{FiniteGroup, GroupError, Subgroup};
use crate::combin::{is_prime, p_adic_split};

/// All subgroups of `g`, canonically sorted by (order, element set).
///
/// Seeds with the cyclic subgroups and closes under pairwise join; every
/// subgroup is a join of cyclic ones, so the result is complete without
/// scanning the power set.
pub fn subgroups(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
    if g.order() > cap {
        return Err(GroupError::CapExceeded {
            order: g.order(),
            cap,
        });
    }
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue: Vec<Vec<usize>> = Vec::new();
    for x in 0..g.order() {
        let cyc = g.generated_subgroup(&[x]);
        if found.insert(cyc.clone()) {
            queue.push(cyc);
        }
    }
    while let Some(h) = queue.pop() {
        let known: Vec<Vec<usize>> = found.iter().cloned().collect();
        for k in known {
            if h.len() == g.order() && k.len() == g.order() {
                continue;
            }
            let mut gens = h.clone();
            gens.extend_from_slice(&k);
            let join = g.generated_subgroup(&gens);
            if found.insert(join.clone()) {
                queue.push(join);
            }
        }
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(Subgroup::from_sorted_unchecked)
        .collect();
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements().cmp(b.elements()))
    });
    Ok(out)
}

/// All Sylow p-subgroups of `g`: the subgroups of order p^m where p^m is the
/// largest power of p dividing |g|. When p does not divide |g| this is the
/// trivial subgroup alone.
pub fn sylow_subgroups(
    g: &FiniteGroup,
    p: u64,
    cap: usize,
) -> Result<Vec<Subgroup>, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let (exp, _) = p_adic_split(g.order() as u64, p);
    let target = (p as usize).pow(exp);
    Ok(subgroups(g, cap)?
        .into_iter()
        .filter(|s| s.order() == target)
        .collect())
}

/// The normalizer N_g(s) = { x : x s x^-1 = s }.
pub fn normalizer(g: &FiniteGroup, s: &Subgroup) -> Result<Subgroup, GroupError> {
    // revalidate so a stale subgroup from another group is caught
    let s = Subgroup::new(g, s.elements())?;
    let members: Vec<usize> = (0..g.order())
        .filter(|&x| s.elements().iter().all(|&a| s.contains(g.conjugate(x, a))))
        .collect();
    Subgroup::new(g, &members)
}

/// The center Z(g).
pub fn center(g: &FiniteGroup) -> Subgroup {
    let members: Vec<usize> = (0..g.order())
        .filter(|&z| (0..g.order()).all(|x| g.mul(z, x) == g.mul(x, z)))
        .collect();
    Subgroup::new(g, &members).expect("the center is a subgroup")
}

/// The conjugacy orbit { x s x^-1 : x in g } of a subgroup.
pub fn conjugates(g: &FiniteGroup, s: &Subgroup) -> Vec<Subgroup> {
    let mut orbit: BTreeSet<Vec<usize>> = BTreeSet::new();
    for x in 0..g.order() {
        let mut image: Vec<usize> = s.elements().iter().map(|&a| g.conjugate(x, a)).collect();
        image.sort_unstable();
        orbit.insert(image);
    }
    orbit
        .into_iter()
        .map(Subgroup::from_sorted_unchecked)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, trivial};

    #[test]
    fn trivial_group_has_one_subgroup() {
        let g = trivial();
        assert_eq!(subgroups(&g, 512).unwrap().len(), 1);
    }

    #[test]
    fn dihedral_3_has_six_subgroups() {
        let g = dihedral(3);
        let subs = subgroups(&g, 512).unwrap();
        assert_eq!(subs.len(), 6);
        let orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn cyclic_4_has_three_subgroups() {
        let subs = subgroups(&cyclic(4), 512).unwrap();
        let orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 4]);
    }

    #[test]
    fn sylow_subgroups_of_d3() {
        let g = dihedral(3);
        assert_eq!(sylow_subgroups(&g, 2, 512).unwrap().len(), 3);
        assert_eq!(sylow_subgroups(&g, 3, 512).unwrap().len(), 1);
        assert!(matches!(
            sylow_subgroups(&g, 4, 512),
            Err(GroupError::NotPrime(4))
        ));
    }

    #[test]
    fn normalizer_of_rotations_is_everything() {
        let g = dihedral(3);
        let rot = Subgroup::new(&g, &g.generated_subgroup(&[1])).unwrap();
        assert_eq!(normalizer(&g, &rot).unwrap().order(), 6);
        // a reflection subgroup is self-normalizing (index 3)
        let refl = Subgroup::new(&g, &g.generated_subgroup(&[3])).unwrap();
        let n = normalizer(&g, &refl).unwrap();
        assert_eq!(n.order(), 2);
        assert!(refl.elements().iter().all(|&x| n.contains(x)));
    }

    #[test]
    fn normalizer_in_abelian_groups_is_the_whole_group() {
        let g = cyclic(12);
        for s in subgroups(&g, 512).unwrap() {
            assert_eq!(normalizer(&g, &s).unwrap().order(), 12);
        }
    }

    #[test]
    fn center_of_d3_is_trivial() {
        assert_eq!(center(&dihedral(3)).order(), 1);
        assert_eq!(center(&cyclic(4)).order(), 4);
        assert_eq!(center(&dihedral(4)).order(), 2);
    }
}
