//! Counting and enumerating groupoids of a given order up to isomorphism.
//!
//! A groupoid is determined up to isomorphism by the multiset of its
//! connected components, and a connected groupoid by the pair (identity
//! count `d`, base-group isomorphism class of order `m`), its order being
//! `d^2 m`. Counting groupoids of order `n` therefore reduces to counting
//! multisets of connected classes whose orders sum to `n`, which the
//! standard multiset-composition recurrence computes from the per-order
//! class counts `c(q) = sum over d^2 m = q of g(m)`.

use std::sync::Arc;

use thiserror::Error;

use crate::combin::binomial;
use crate::exec;
use crate::group::{cyclic, dihedral, klein, trivial, FiniteGroup};
use crate::groupoid::{Groupoid, GroupoidError};
use crate::Caps;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("no group count available for order {0}")]
    TableGap(usize),
    #[error("no group constructors available for order {0}")]
    CatalogGap(usize),
    #[error("order {order} exceeds the constructive cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

impl ClassifyError {
    /// Stable machine-readable discriminant.
    pub fn kind(&self) -> &'static str {
        match self {
            ClassifyError::TableGap(_) => "TableGap",
            ClassifyError::CatalogGap(_) => "CatalogGap",
            ClassifyError::CapExceeded { .. } => "CapExceeded",
            ClassifyError::Groupoid(e) => e.kind(),
        }
    }

    pub fn is_cap(&self) -> bool {
        match self {
            ClassifyError::CapExceeded { .. } => true,
            ClassifyError::Groupoid(e) => e.is_cap(),
            _ => false,
        }
    }
}

/// All partitions of `n`, decreasing-lexicographic, each partition with
/// parts in decreasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(n, n, &mut current, &mut out);
    return out;

    fn descend(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            current.push(part);
            descend(rest - part, part, current, out);
            current.pop();
        }
    }
}

/// Number of group isomorphism classes per order, contiguous from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCountTable {
    counts: Vec<u64>, // counts[m-1] = g(m)
}

impl GroupCountTable {
    /// The built-in table for orders 1..=6: (1, 1, 1, 2, 1, 2).
    pub fn builtin() -> GroupCountTable {
        GroupCountTable {
            counts: vec![1, 1, 1, 2, 1, 2],
        }
    }

    /// A user-supplied table; entry `i` is the number of groups of order
    /// `i + 1`. The first entry must be 1 (the trivial group).
    pub fn from_counts(counts: Vec<u64>) -> Result<GroupCountTable, ClassifyError> {
        if counts.first() != Some(&1) {
            return Err(ClassifyError::TableGap(1));
        }
        Ok(GroupCountTable { counts })
    }

    pub fn get(&self, m: usize) -> Result<u64, ClassifyError> {
        if m == 0 {
            return Err(ClassifyError::TableGap(0));
        }
        self.counts
            .get(m - 1)
            .copied()
            .ok_or(ClassifyError::TableGap(m))
    }

    pub fn max_order(&self) -> usize {
        self.counts.len()
    }
}

/// `c(q)`: the number of connected-groupoid classes of order `q`, summing
/// `g(m)` over the factorizations `q = d^2 m`.
pub fn connected_class_count(q: usize, table: &GroupCountTable) -> Result<u64, ClassifyError> {
    let mut total = 0;
    let mut d = 1;
    while d * d <= q {
        if q % (d * d) == 0 {
            total += table.get(q / (d * d))?;
        }
        d += 1;
    }
    Ok(total)
}

/// The number of groupoids of order `n` up to isomorphism: multisets of
/// connected classes with orders summing to `n`, counted by the product
/// recurrence with `C(c(q) + j - 1, j)` ways to pick `j` classes of
/// order `q`.
pub fn groupoid_count(n: usize, table: &GroupCountTable) -> Result<u64, ClassifyError> {
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for q in 1..=n {
        let c = connected_class_count(q, table)?;
        let mut next = vec![0u64; n + 1];
        for total in 0..=n {
            let mut j = 0;
            while j * q <= total {
                let picks = binomial(c + j as u64 - 1, j as u64);
                next[total] += picks * ways[total - j * q];
                j += 1;
            }
        }
        ways = next;
    }
    Ok(ways[n])
}

/// The complete list of group isomorphism classes of order `m`, for the
/// orders the built-in catalog covers (1..=6).
pub fn builtin_groups_of_order(m: usize) -> Option<Vec<FiniteGroup>> {
    match m {
        1 => Some(vec![trivial()]),
        2 => Some(vec![cyclic(2)]),
        3 => Some(vec![cyclic(3)]),
        4 => Some(vec![cyclic(4), klein()]),
        5 => Some(vec![cyclic(5)]),
        6 => Some(vec![cyclic(6), dihedral(3)]),
        _ => None,
    }
}

/// One isomorphism class of connected groupoids: `d` identities over a
/// fixed base group.
#[derive(Clone, Debug)]
pub struct ConnectedClass {
    pub d: usize,
    pub group: Arc<FiniteGroup>,
}

impl ConnectedClass {
    pub fn order(&self) -> usize {
        self.d * self.d * self.group.order()
    }
}

/// Every connected class of order at most `max_order` whose base group the
/// built-in catalog provides. Classes with larger base orders are simply
/// absent; use this as a generation pool, not as a complete census.
pub fn builtin_connected_classes(max_order: usize) -> Vec<ConnectedClass> {
    let mut out = Vec::new();
    for q in 1..=max_order {
        let mut d = 1;
        while d * d <= q {
            if q % (d * d) == 0 {
                if let Some(groups) = builtin_groups_of_order(q / (d * d)) {
                    for g in groups {
                        out.push(ConnectedClass {
                            d,
                            group: Arc::new(g),
                        });
                    }
                }
            }
            d += 1;
        }
    }
    out.sort_by_key(|c| (c.order(), c.d));
    out
}

/// All groupoids of order `n` formable as multisets of the given connected
/// classes, one representative per multiset. When the class pool is
/// complete for every order at most `n`, this is the full atlas of order-n
/// groupoids up to isomorphism.
pub fn groupoids_from_classes(n: usize, classes: &[ConnectedClass]) -> Vec<Groupoid> {
    let mut picks: Vec<Vec<usize>> = Vec::new();
    let mut current = Vec::new();
    choose(n, 0, classes, &mut current, &mut picks);

    let mut out = exec::map_vec(picks, |pick| {
        let mut label = 0;
        let parts: Vec<(Vec<String>, Arc<FiniteGroup>)> = pick
            .iter()
            .map(|&ci| {
                let class = &classes[ci];
                let labels: Vec<String> = (0..class.d)
                    .map(|_| {
                        let l = format!("e{label}");
                        label += 1;
                        l
                    })
                    .collect();
                (labels, Arc::clone(&class.group))
            })
            .collect();
        Groupoid::from_component_arcs(parts).expect("generated labels are unique")
    });
    out.sort_by_key(|g| {
        (
            g.components().len(),
            g.components()
                .iter()
                .map(|c| (c.order(), c.width(), c.base().order()))
                .collect::<Vec<_>>(),
        )
    });
    return out;

    fn choose(
        rest: usize,
        from: usize,
        classes: &[ConnectedClass],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        for ci in from..classes.len() {
            if classes[ci].order() <= rest {
                current.push(ci);
                choose(rest - classes[ci].order(), ci, classes, current, out);
                current.pop();
            }
        }
    }
}

/// Enumerates all groupoids of order `n` up to isomorphism, erroring when
/// the built-in table or catalog cannot certify completeness.
pub fn enumerate_groupoids(n: usize, caps: &Caps) -> Result<Vec<Groupoid>, ClassifyError> {
    if n == 0 || n > caps.max_atlas {
        return Err(ClassifyError::CapExceeded {
            order: n,
            cap: caps.max_atlas,
        });
    }
    let table = GroupCountTable::builtin();
    // completeness: every base order that could appear must be counted and
    // constructible
    for q in 1..=n {
        let mut d = 1;
        while d * d <= q {
            if q % (d * d) == 0 {
                let m = q / (d * d);
                table.get(m)?;
                let groups =
                    builtin_groups_of_order(m).ok_or(ClassifyError::CatalogGap(m))?;
                debug_assert_eq!(groups.len() as u64, table.get(m).unwrap());
            }
            d += 1;
        }
    }
    let classes = builtin_connected_classes(n);
    let out = groupoids_from_classes(n, &classes);
    debug_assert_eq!(out.len() as u64, groupoid_count(n, &table)?);
    Ok(out)
}
