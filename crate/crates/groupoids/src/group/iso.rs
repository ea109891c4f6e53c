//! Isomorphism testing by generator-image backtracking.
//!
//! A minimal generating sequence of the source group is computed greedily;
//! the search assigns images with matching element orders and extends each
//! partial assignment to the generated subgroup, pruning on any clash. The
//! same kernel answers the existence question, enumerates all isomorphisms,
//! and enumerates automorphisms.

use super::{FiniteGroup, GroupError};

/// Greedy minimal generating sequence: repeatedly adjoin the smallest
/// element outside the subgroup generated so far.
fn generating_sequence(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![0usize];
    while span.len() < g.order() {
        let next = (0..g.order())
            .find(|x| span.binary_search(x).is_err())
            .expect("span is a proper subset");
        gens.push(next);
        span = g.generated_subgroup(&gens);
    }
    gens
}

struct Search<'a> {
    g1: &'a FiniteGroup,
    g2: &'a FiniteGroup,
    gens: Vec<usize>,
    /// g1 elements in the order the partial map acquires them; the first
    /// `known[..len]` always form the subgroup generated by mapped gens.
    all: bool,
    found: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    /// Extends `map` (indexed by g1 element, usize::MAX = unset) with the
    /// image of the next generator, closing under multiplication.
    fn assign(&mut self, map: &mut Vec<usize>, used: &mut Vec<bool>, depth: usize) -> bool {
        if depth == self.gens.len() {
            self.found.push(map.clone());
            return !self.all; // stop at the first witness unless enumerating
        }
        let gen = self.gens[depth];
        let want = self.g1.element_order(gen);
        for image in 0..self.g2.order() {
            if used[image] || self.g2.element_order(image) != want {
                continue;
            }
            let mut new_pairs = Vec::new();
            if self.close(map, used, gen, image, &mut new_pairs) {
                if self.assign(map, used, depth + 1) {
                    return true;
                }
            }
            for (x, y) in new_pairs.into_iter().rev() {
                map[x] = usize::MAX;
                used[y] = false;
            }
        }
        false
    }

    /// Adds gen -> image and closes the partial map under products with all
    /// currently mapped elements. Records what it added so the caller can
    /// roll back. Returns false on any inconsistency.
    fn close(
        &self,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        gen: usize,
        image: usize,
        new_pairs: &mut Vec<(usize, usize)>,
    ) -> bool {
        let set = |x: usize, y: usize,
                       map: &mut Vec<usize>,
                       used: &mut Vec<bool>,
                       new_pairs: &mut Vec<(usize, usize)>| {
            if map[x] != usize::MAX {
                return map[x] == y;
            }
            if used[y] {
                return false;
            }
            map[x] = y;
            used[y] = true;
            new_pairs.push((x, y));
            true
        };
        if !set(gen, image, map, used, new_pairs) {
            return false;
        }
        // close under products: iterate over the queue of fresh elements
        let mut queue = vec![gen];
        let mut qi = 0;
        while qi < queue.len() {
            let x = queue[qi];
            qi += 1;
            let mapped: Vec<usize> = (0..self.g1.order())
                .filter(|&z| map[z] != usize::MAX)
                .collect();
            for z in mapped {
                for (a, b) in [(x, z), (z, x)] {
                    let prod = self.g1.mul(a, b);
                    let image_prod = self.g2.mul(map[a], map[b]);
                    if map[prod] == usize::MAX {
                        if !set(prod, image_prod, map, used, new_pairs) {
                            return false;
                        }
                        queue.push(prod);
                    } else if map[prod] != image_prod {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn run_search(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    all: bool,
    cap: usize,
) -> Result<Vec<Vec<usize>>, GroupError> {
    let order = g1.order().max(g2.order());
    if order > cap {
        return Err(GroupError::CapExceeded { order, cap });
    }
    if g1.order() != g2.order() || g1.order_profile() != g2.order_profile() {
        return Ok(Vec::new());
    }
    if g1.is_abelian() != g2.is_abelian() {
        return Ok(Vec::new());
    }
    let mut search = Search {
        g1,
        g2,
        gens: generating_sequence(g1),
        all,
        found: Vec::new(),
    };
    let mut map = vec![usize::MAX; g1.order()];
    let mut used = vec![false; g2.order()];
    map[0] = 0;
    used[0] = true;
    search.assign(&mut map, &mut used, 0);
    Ok(search.found)
}

/// Tests whether two groups are isomorphic. Returns a witness map
/// (g1 element -> g2 element) when they are.
pub fn are_isomorphic(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    cap: usize,
) -> Result<Option<Vec<usize>>, GroupError> {
    Ok(run_search(g1, g2, false, cap)?.into_iter().next())
}

/// Every isomorphism g1 -> g2, in lexicographic order of the image maps.
pub fn isomorphisms(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    cap: usize,
) -> Result<Vec<Vec<usize>>, GroupError> {
    let mut maps = run_search(g1, g2, true, cap)?;
    maps.sort();
    Ok(maps)
}

/// Every automorphism of g.
pub fn automorphisms(g: &FiniteGroup, cap: usize) -> Result<Vec<Vec<usize>>, GroupError> {
    isomorphisms(g, g, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, direct_product, klein};

    #[test]
    fn a_group_is_isomorphic_to_itself_via_identity_first_witness() {
        let g = dihedral(3);
        let w = are_isomorphic(&g, &g, 512).unwrap().unwrap();
        assert_eq!(w[0], 0);
        // witness is a bijective homomorphism
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(w[g.mul(a, b)], g.mul(w[a], w[b]));
            }
        }
    }

    #[test]
    fn z4_and_klein_are_not_isomorphic() {
        assert!(are_isomorphic(&cyclic(4), &klein(), 512).unwrap().is_none());
    }

    #[test]
    fn z2_x_z3_is_cyclic_of_order_6() {
        let p = direct_product(&cyclic(2), &cyclic(3));
        assert!(are_isomorphic(&p, &cyclic(6), 512).unwrap().is_some());
        assert!(are_isomorphic(&p, &dihedral(3), 512).unwrap().is_none());
    }

    #[test]
    fn automorphism_counts_match_known_groups() {
        assert_eq!(automorphisms(&cyclic(5), 512).unwrap().len(), 4);
        assert_eq!(automorphisms(&klein(), 512).unwrap().len(), 6);
        assert_eq!(automorphisms(&dihedral(3), 512).unwrap().len(), 6);
        assert_eq!(automorphisms(&cyclic(105), 512).unwrap().len(), 48);
    }

    #[test]
    fn cap_is_enforced() {
        let g = cyclic(16);
        assert!(matches!(
            are_isomorphic(&g, &g, 8),
            Err(GroupError::CapExceeded { .. })
        ));
    }
}
