//! Finite groups as Cayley tables.
//!
//! Elements are dense indices `0..m-1` and the identity is always index 0;
//! [`FiniteGroup::from_table`] relabels the input if necessary. Construction
//! checks every axiom exhaustively, so a `FiniteGroup` value is always a
//! genuine group.

mod catalog;
mod iso;
mod lattice;

pub use catalog::{
    cyclic, dihedral, direct_product, klein, semidirect_product, symmetric, trivial,
};
pub use iso::{are_isomorphic, automorphisms, isomorphisms};
pub use lattice::{center, normalizer, subgroups, sylow_subgroups};

use thiserror::Error;

/// A violated group axiom, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `(a*b)*c != a*(b*c)` for the witness triple.
    NotAssociative { a: usize, b: usize, c: usize },
    /// No element acts as a two-sided identity.
    NoIdentity,
    /// The witness element has no two-sided inverse.
    NoInverse { element: usize },
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomViolation::NotAssociative { a, b, c } => {
                write!(f, "({a}*{b})*{c} != {a}*({b}*{c})")
            }
            AxiomViolation::NoIdentity => write!(f, "no two-sided identity"),
            AxiomViolation::NoInverse { element } => {
                write!(f, "element {element} has no two-sided inverse")
            }
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not square or has an entry outside 0..{order}")]
    MalformedTable { order: usize },
    #[error("group axioms violated: {}", format_violations(.0))]
    Invalid(Vec<AxiomViolation>),
    #[error("unknown catalog group `{0}`")]
    UnknownName(String),
    #[error("bad catalog parameters: {0}")]
    BadParams(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("order {order} exceeds the exhaustive-search cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("the element set is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("the action is not a homomorphism into the automorphism group")]
    NotAHomomorphism,
    #[error("action image {0} is not an automorphism")]
    NotAnAutomorphism(usize),
}

impl GroupError {
    /// Stable machine-readable discriminant.
    pub fn kind(&self) -> &'static str {
        match self {
            GroupError::MalformedTable { .. } => "MalformedTable",
            GroupError::Invalid(_) => "InvalidGroup",
            GroupError::UnknownName(_) => "UnknownName",
            GroupError::BadParams(_) => "BadParams",
            GroupError::NotPrime(_) => "NotPrime",
            GroupError::CapExceeded { .. } => "CapExceeded",
            GroupError::NotASubgroup(_) => "NotASubgroup",
            GroupError::NotAHomomorphism => "NotAHomomorphism",
            GroupError::NotAnAutomorphism(_) => "NotAnAutomorphism",
        }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, GroupError::CapExceeded { .. })
    }
}

fn format_violations(vs: &[AxiomViolation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// A finite group backed by its full multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u16>, // row-major m*m
    inverses: Vec<u16>,
    name: Option<String>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.name {
            Some(n) => write!(f, "FiniteGroup({n}, order {})", self.order),
            None => write!(f, "FiniteGroup(order {})", self.order),
        }
    }
}

/// How many associativity witnesses `from_table` collects before giving up
/// on listing more. The scan itself always covers every triple.
const MAX_ASSOC_WITNESSES: usize = 16;

impl FiniteGroup {
    /// Validates a multiplication table and returns the group, relabeled so
    /// that the identity is element 0. On failure, every violated axiom is
    /// reported with a witness (associativity witnesses are truncated after
    /// the first few).
    pub fn from_table(table: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
        let m = table.len();
        if m == 0 || table.iter().any(|row| row.len() != m) {
            return Err(GroupError::MalformedTable { order: m });
        }
        if table.iter().flatten().any(|&x| x >= m) {
            return Err(GroupError::MalformedTable { order: m });
        }

        let mut violations = Vec::new();

        let identity = (0..m).find(|&e| (0..m).all(|x| table[e][x] == x && table[x][e] == x));
        if identity.is_none() {
            violations.push(AxiomViolation::NoIdentity);
        }

        'outer: for a in 0..m {
            for b in 0..m {
                let ab = table[a][b];
                for c in 0..m {
                    if table[ab][c] != table[a][table[b][c]] {
                        violations.push(AxiomViolation::NotAssociative { a, b, c });
                        if violations.len() >= MAX_ASSOC_WITNESSES {
                            break 'outer;
                        }
                    }
                }
            }
        }

        let mut inverses = vec![0u16; m];
        if let Some(e) = identity {
            for x in 0..m {
                match (0..m).find(|&y| table[x][y] == e && table[y][x] == e) {
                    Some(y) => inverses[x] = y as u16,
                    None => violations.push(AxiomViolation::NoInverse { element: x }),
                }
            }
        }

        if !violations.is_empty() {
            return Err(GroupError::Invalid(violations));
        }

        let e = identity.unwrap();
        let group = if e == 0 {
            FiniteGroup {
                order: m,
                table: table.iter().flatten().map(|&x| x as u16).collect(),
                inverses,
                name: None,
            }
        } else {
            // swap labels 0 <-> e so the identity sits at index 0
            let perm: Vec<usize> = (0..m)
                .map(|x| if x == 0 { e } else if x == e { 0 } else { x })
                .collect();
            let mut flat = vec![0u16; m * m];
            for a in 0..m {
                for b in 0..m {
                    flat[perm[a] * m + perm[b]] = perm[table[a][b]] as u16;
                }
            }
            let mut inv = vec![0u16; m];
            for x in 0..m {
                inv[perm[x]] = perm[inverses[x] as usize] as u16;
            }
            FiniteGroup {
                order: m,
                table: flat,
                inverses: inv,
                name: None,
            }
        };
        Ok(group)
    }

    /// Builds a group from a closure known to satisfy the axioms; still
    /// validated, so catalog constructors cannot ship a bad table.
    pub(crate) fn from_fn(
        order: usize,
        name: &str,
        mul: impl Fn(usize, usize) -> usize,
    ) -> FiniteGroup {
        let table: Vec<Vec<usize>> = (0..order)
            .map(|a| (0..order).map(|b| mul(a, b)).collect())
            .collect();
        let mut g = FiniteGroup::from_table(&table)
            .unwrap_or_else(|e| panic!("constructor for {name} produced an invalid table: {e}"));
        g.name = Some(name.to_string());
        g
    }

    pub fn with_name(mut self, name: impl Into<String>) -> FiniteGroup {
        self.name = Some(name.into());
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// The identity element, always 0.
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn conjugate(&self, x: usize, a: usize) -> usize {
        self.mul(self.mul(x, a), self.inverse(x))
    }

    pub fn pow(&self, a: usize, n: usize) -> usize {
        let mut acc = 0;
        for _ in 0..n {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Rows of the multiplication table, for export.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// Multiset of element orders, sorted. Cheap isomorphism invariant.
    pub(crate) fn order_profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        p.sort_unstable();
        p
    }

    /// Subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut members = vec![0usize];
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                    frontier.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }
}

/// A validated subgroup: a sorted element set containing the identity and
/// closed under product and inverse. Only meaningful relative to the group
/// it was validated against.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn new(group: &FiniteGroup, elements: &[usize]) -> Result<Subgroup, GroupError> {
        let mut sorted: Vec<usize> = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.iter().any(|&x| x >= group.order()) {
            return Err(GroupError::NotASubgroup("element out of range".into()));
        }
        if !sorted.contains(&0) {
            return Err(GroupError::NotASubgroup("missing identity".into()));
        }
        for &a in &sorted {
            if sorted.binary_search(&group.inverse(a)).is_err() {
                return Err(GroupError::NotASubgroup(format!("missing inverse of {a}")));
            }
            for &b in &sorted {
                if sorted.binary_search(&group.mul(a, b)).is_err() {
                    return Err(GroupError::NotASubgroup(format!(
                        "not closed: {a}*{b} escapes"
                    )));
                }
            }
        }
        Ok(Subgroup { elements: sorted })
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<usize>) -> Subgroup {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// The subgroup as a standalone group on indices `0..order`, together
    /// with the embedding back into the parent (position -> parent element).
    pub fn as_group(&self, parent: &FiniteGroup) -> (FiniteGroup, Vec<usize>) {
        let index_of = |x: usize| self.elements.binary_search(&x).unwrap();
        let table: Vec<Vec<usize>> = self
            .elements
            .iter()
            .map(|&a| {
                self.elements
                    .iter()
                    .map(|&b| index_of(parent.mul(a, b)))
                    .collect()
            })
            .collect();
        let g = FiniteGroup::from_table(&table).expect("a validated subgroup is a group");
        (g, self.elements.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_table_is_a_group() {
        let g = FiniteGroup::from_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn z2_table_is_a_group() {
        let g = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inverse(1), 1);
    }

    #[test]
    fn nonassociative_magma_is_rejected_with_witness() {
        // 3-element magma with a two-sided identity whose lower block is not
        // associative: (2*2)*2 = 1 but 2*(2*2) = 2
        let table = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 1]];
        // exhaustive independent check that some triple really fails
        let assoc_fails = (0..3).any(|a| {
            (0..3).any(|b| {
                (0..3).any(|c| table[table[a][b]][c] != table[a][table[b][c]])
            })
        });
        assert!(assoc_fails);
        match FiniteGroup::from_table(&table) {
            Err(GroupError::Invalid(vs)) => {
                assert!(vs
                    .iter()
                    .any(|v| matches!(v, AxiomViolation::NotAssociative { .. })));
            }
            other => panic!("expected Invalid, got {other:?}"),
        }
    }

    #[test]
    fn identity_is_relabeled_to_zero() {
        // Z2 with the identity at index 1
        let g = FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn missing_inverse_is_reported() {
        // 0 is an identity but 1*1 = 1 means 1 has no inverse; the table is
        // also a valid associativity example (right-zero band on {1,2}).
        let table = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]];
        match FiniteGroup::from_table(&table) {
            Err(GroupError::Invalid(vs)) => {
                assert!(vs
                    .iter()
                    .any(|v| matches!(v, AxiomViolation::NoInverse { element: 1 })));
            }
            other => panic!("expected Invalid, got {other:?}"),
        }
    }

    #[test]
    fn subgroup_validation_rejects_non_closed_sets() {
        let g = cyclic(4);
        assert!(Subgroup::new(&g, &[0, 2]).is_ok());
        assert!(Subgroup::new(&g, &[0, 1]).is_err());
        assert!(Subgroup::new(&g, &[1, 3]).is_err());
    }

    #[test]
    fn subgroup_as_group_restricts_the_table() {
        let g = dihedral(3);
        let rot = g.generated_subgroup(&[1]);
        let s = Subgroup::new(&g, &rot).unwrap();
        let (h, embed) = s.as_group(&g);
        assert_eq!(h.order(), 3);
        assert_eq!(embed.len(), 3);
    }
}
