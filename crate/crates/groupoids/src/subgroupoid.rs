//! Subgroupoids, cosets, the index, and the Lagrange identities.
//!
//! Every closed formula here is paired with a brute-force oracle:
//! [`index_formula`] against [`index_bruteforce`], the coset-cardinality
//! formula against the literal coset, and the order identities against
//! direct element counts.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::exec;
use crate::group::{subgroups, GroupError};
use crate::groupoid::{Element, Groupoid, GroupoidError};
use crate::Caps;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SubgroupoidError {
    #[error("a subgroupoid is nonempty")]
    Empty,
    #[error("element `{0}` does not belong to the parent groupoid")]
    ForeignElement(String),
    #[error("not closed: the product of `{a}` and `{b}` is missing")]
    NotClosed { a: String, b: String },
    #[error("missing inverse of `{0}`")]
    MissingInverse(String),
    #[error("missing an identity of `{0}`")]
    MissingIdentityOf(String),
    #[error("{quantity} {value} exceeds the cap {cap}")]
    CapExceeded {
        quantity: &'static str,
        value: usize,
        cap: usize,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

impl SubgroupoidError {
    /// Stable machine-readable discriminant.
    pub fn kind(&self) -> &'static str {
        match self {
            SubgroupoidError::Empty => "Empty",
            SubgroupoidError::ForeignElement(_) => "ForeignElement",
            SubgroupoidError::NotClosed { .. } => "NotClosed",
            SubgroupoidError::MissingInverse(_) => "MissingInverse",
            SubgroupoidError::MissingIdentityOf(_) => "MissingIdentityOf",
            SubgroupoidError::CapExceeded { .. } => "CapExceeded",
            SubgroupoidError::Group(e) => e.kind(),
            SubgroupoidError::Groupoid(e) => e.kind(),
        }
    }

    pub fn is_cap(&self) -> bool {
        match self {
            SubgroupoidError::CapExceeded { .. } => true,
            SubgroupoidError::Group(e) => e.is_cap(),
            SubgroupoidError::Groupoid(e) => e.is_cap(),
            _ => false,
        }
    }
}

/// One connected component of a subgroupoid, in the coordinates of its
/// parent component.
///
/// `identities` are local identity indices, sorted; the first is the base
/// point. `isotropy` is the subgroup of the parent base group fixing the
/// base point. `transitions[i]` carries the fiber over (base ->
/// identities[i]): that fiber is the left coset `transitions[i] * isotropy`,
/// and the fiber over (identities[i] -> identities[j]) is
/// `t_j * isotropy * t_i^-1`. A component is a plain product block exactly
/// when every transition lies in the isotropy subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubComponent {
    pub parent_component: usize,
    pub identities: Vec<usize>,
    pub isotropy: Vec<usize>,
    pub transitions: Vec<usize>,
}

impl SubComponent {
    /// Number of identities of this component.
    pub fn width(&self) -> usize {
        self.identities.len()
    }

    /// Order of the isotropy group.
    pub fn isotropy_order(&self) -> usize {
        self.isotropy.len()
    }

    /// `d^2 * m`.
    pub fn order(&self) -> usize {
        self.width() * self.width() * self.isotropy.len()
    }
}

/// A validated subgroupoid: an element subset closed under defined
/// composition, inverses, and identities, together with its derived
/// component structure.
#[derive(Clone, Debug)]
pub struct Subgroupoid {
    elements: BTreeSet<Element>,
    components: Vec<SubComponent>,
    wide: bool,
}

impl PartialEq for Subgroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}
impl Eq for Subgroupoid {}
impl PartialOrd for Subgroupoid {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Subgroupoid {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.elements.cmp(&other.elements)
    }
}

impl Subgroupoid {
    /// Validates an element set as a subgroupoid of `parent`: membership,
    /// closure under defined products, inverses, and both identities of
    /// every member are checked exhaustively.
    pub fn from_elements(
        parent: &Groupoid,
        elements: impl IntoIterator<Item = Element>,
    ) -> Result<Subgroupoid, SubgroupoidError> {
        let set: BTreeSet<Element> = elements.into_iter().collect();
        if set.is_empty() {
            return Err(SubgroupoidError::Empty);
        }
        for &x in &set {
            if !parent.contains(x) {
                return Err(SubgroupoidError::ForeignElement(format!("{x:?}")));
            }
        }
        let id = |x: Element| parent.element_id(x);
        for &x in &set {
            if !set.contains(&parent.domain(x)) || !set.contains(&parent.range(x)) {
                return Err(SubgroupoidError::MissingIdentityOf(id(x)));
            }
            if !set.contains(&parent.inverse(x)) {
                return Err(SubgroupoidError::MissingInverse(id(x)));
            }
        }
        for &a in &set {
            for &b in &set {
                if let Some(c) = parent.compose(a, b) {
                    if !set.contains(&c) {
                        return Err(SubgroupoidError::NotClosed { a: id(a), b: id(b) });
                    }
                }
            }
        }
        Ok(Subgroupoid::from_validated(parent, set))
    }

    /// Builds a subgroupoid from an element set already known to be closed.
    pub(crate) fn from_validated(parent: &Groupoid, elements: BTreeSet<Element>) -> Subgroupoid {
        let components = derive_components(parent, &elements);
        let wide =
            components.iter().map(|c| c.width()).sum::<usize>() == parent.identity_count();
        Subgroupoid {
            elements,
            components,
            wide,
        }
    }

    /// Materializes the union of product blocks described by `parts`.
    /// Callers guarantee the blocks use disjoint identity sets, genuine
    /// subgroups, and in-range transitions, so the result is closed by
    /// construction.
    pub(crate) fn from_parts(parent: &Groupoid, parts: &[SubComponent]) -> Subgroupoid {
        let mut elements = BTreeSet::new();
        for part in parts {
            let base = parent.components()[part.parent_component].base();
            for (i, &fi) in part.identities.iter().enumerate() {
                for (j, &fj) in part.identities.iter().enumerate() {
                    let ti_inv = base.inverse(part.transitions[i]);
                    for &k in &part.isotropy {
                        elements.insert(Element {
                            component: part.parent_component,
                            src: fi,
                            dst: fj,
                            g: base.mul(base.mul(part.transitions[j], k), ti_inv),
                        });
                    }
                }
            }
        }
        Subgroupoid::from_validated(parent, elements)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &BTreeSet<Element> {
        &self.elements
    }

    pub fn contains(&self, x: Element) -> bool {
        self.elements.contains(&x)
    }

    pub fn components(&self) -> &[SubComponent] {
        &self.components
    }

    /// Whether the subgroupoid contains every identity of its parent.
    pub fn is_wide(&self) -> bool {
        self.wide
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// Identity count of the subgroupoid.
    pub fn identity_count(&self) -> usize {
        self.components.iter().map(|c| c.width()).sum()
    }

    /// Whether the given parent identity (component, local index) belongs to
    /// this subgroupoid, and if so to which of its components.
    pub fn component_of_identity(&self, component: usize, e: usize) -> Option<usize> {
        self.components
            .iter()
            .position(|c| c.parent_component == component && c.identities.contains(&e))
    }

    /// The isotropy element set at a parent identity, as base-group
    /// elements. Empty when the identity is not in the subgroupoid.
    pub fn isotropy_at(&self, component: usize, e: usize) -> Vec<usize> {
        let lo = Element { component, src: e, dst: e, g: 0 };
        let hi = Element { component, src: e, dst: e, g: usize::MAX };
        self.elements.range(lo..=hi).map(|x| x.g).collect()
    }

    /// Whether every component is a plain product block (all transitions in
    /// the isotropy subgroup), i.e. the subgroupoid is `A_d x K` in the
    /// parent coordinates, componentwise.
    pub fn is_block_product(&self) -> bool {
        self.components.iter().all(|c| {
            c.transitions
                .iter()
                .all(|t| c.isotropy.binary_search(t).is_ok())
        })
    }

    /// Materializes this subgroupoid as a standalone groupoid (its derived
    /// structure), returning the element map parent-coords -> new-coords.
    pub fn to_groupoid(
        &self,
        parent: &Groupoid,
    ) -> (Groupoid, BTreeMap<Element, Element>) {
        let mut parts = Vec::new();
        let mut map = BTreeMap::new();
        for (ci, part) in self.components.iter().enumerate() {
            let pc = &parent.components()[part.parent_component];
            let base = pc.base();
            let labels: Vec<String> = part
                .identities
                .iter()
                .map(|&e| pc.labels()[e].clone())
                .collect();
            let iso = &part.isotropy;
            let pos = |x: usize| iso.binary_search(&x).expect("isotropy is closed");
            let table: Vec<Vec<usize>> = iso
                .iter()
                .map(|&a| iso.iter().map(|&b| pos(base.mul(a, b))).collect())
                .collect();
            let sub_base = crate::group::FiniteGroup::from_table(&table)
                .expect("the isotropy set of a subgroupoid is a group");
            for (i, &fi) in part.identities.iter().enumerate() {
                for (j, &fj) in part.identities.iter().enumerate() {
                    let ti_inv = base.inverse(part.transitions[i]);
                    for (gi, &k) in iso.iter().enumerate() {
                        let g = base.mul(base.mul(part.transitions[j], k), ti_inv);
                        map.insert(
                            Element {
                                component: part.parent_component,
                                src: fi,
                                dst: fj,
                                g,
                            },
                            Element { component: ci, src: i, dst: j, g: gi },
                        );
                    }
                }
            }
            parts.push((labels, sub_base));
        }
        let groupoid = Groupoid::from_components(parts)
            .expect("subgroupoid structure inherits valid labels");
        (groupoid, map)
    }
}

/// Recovers the component structure of a closed element set.
fn derive_components(parent: &Groupoid, elements: &BTreeSet<Element>) -> Vec<SubComponent> {
    let mut out = Vec::new();
    for (pci, pc) in parent.components().iter().enumerate() {
        // identities of the subgroupoid inside this parent component
        let ids: Vec<usize> = (0..pc.width())
            .filter(|&e| {
                elements.contains(&Element { component: pci, src: e, dst: e, g: 0 })
            })
            .collect();
        if ids.is_empty() {
            continue;
        }
        // connectivity: identities are linked when some element runs
        // between them
        let mut cls: BTreeMap<usize, usize> = ids.iter().map(|&e| (e, e)).collect();
        for x in elements.iter().filter(|x| x.component == pci) {
            let (a, b) = (cls[&x.src], cls[&x.dst]);
            if a != b {
                let (keep, drop) = (a.min(b), a.max(b));
                for v in cls.values_mut() {
                    if *v == drop {
                        *v = keep;
                    }
                }
            }
        }
        let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &e in &ids {
            by_class.entry(cls[&e]).or_default().push(e);
        }
        for (_, mut members) in by_class {
            members.sort_unstable();
            let base_e = members[0];
            let isotropy: Vec<usize> = elements
                .range(
                    Element { component: pci, src: base_e, dst: base_e, g: 0 }
                        ..=Element { component: pci, src: base_e, dst: base_e, g: usize::MAX },
                )
                .map(|x| x.g)
                .collect();
            let transitions: Vec<usize> = members
                .iter()
                .map(|&f| {
                    elements
                        .range(
                            Element { component: pci, src: base_e, dst: f, g: 0 }
                                ..=Element {
                                    component: pci,
                                    src: base_e,
                                    dst: f,
                                    g: usize::MAX,
                                },
                        )
                        .map(|x| x.g)
                        .next()
                        .expect("connected identities have a linking element")
                })
                .collect();
            out.push(SubComponent {
                parent_component: pci,
                identities: members,
                isotropy,
                transitions,
            });
        }
    }
    out
}

/// Options for [`enumerate_subgroupoids`].
#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub wide_only: bool,
    pub caps: Caps,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            wide_only: false,
            caps: Caps::default(),
        }
    }
}

/// Enumerates every subgroupoid of `g` (every wide one with `wide_only`).
///
/// A subgroupoid decomposes uniquely into connected components; each lives
/// inside one parent component and is determined by its identity set, the
/// isotropy subgroup at its least identity, and one left coset per further
/// identity (the fiber from the base point). The enumeration walks exactly
/// that data: partial partitions of each parent component's identities into
/// blocks, a subgroup per block, and a coset representative per non-base
/// identity. Results are complete, duplicate-free, and canonically sorted.
pub fn enumerate_subgroupoids(
    g: &Groupoid,
    opts: &EnumOptions,
) -> Result<Vec<Subgroupoid>, SubgroupoidError> {
    let caps = opts.caps;
    if g.order() > caps.max_groupoid {
        return Err(SubgroupoidError::CapExceeded {
            quantity: "groupoid order",
            value: g.order(),
            cap: caps.max_groupoid,
        });
    }

    // per-component choice lists (a choice = a set of decorated blocks)
    let mut per_component: Vec<Vec<Vec<SubComponent>>> = Vec::new();
    for (ci, pc) in g.components().iter().enumerate() {
        let base = pc.base();
        let subs = subgroups(base, caps.max_group)?;
        // canonical (least) representative of every left coset, per subgroup
        let coset_reps: Vec<Vec<usize>> = subs
            .iter()
            .map(|k| {
                let mut reps = Vec::new();
                let mut covered = vec![false; base.order()];
                for x in 0..base.order() {
                    if covered[x] {
                        continue;
                    }
                    reps.push(x);
                    for &h in k.elements() {
                        covered[base.mul(x, h)] = true;
                    }
                }
                reps
            })
            .collect();

        let ids: Vec<usize> = (0..pc.width()).collect();
        let mut choices = Vec::new();
        let mut current = Vec::new();
        build_choices(
            ci,
            &ids,
            opts.wide_only,
            &subs,
            &coset_reps,
            &mut current,
            &mut choices,
            caps.max_family,
        )?;
        per_component.push(choices);
    }

    // cartesian product across components, excluding the all-empty pick
    let total: usize = per_component
        .iter()
        .map(|c| c.len())
        .try_fold(1usize, |acc, n| acc.checked_mul(n))
        .filter(|&t| t <= caps.max_family.saturating_add(1))
        .ok_or(SubgroupoidError::CapExceeded {
            quantity: "subgroupoid count",
            value: usize::MAX,
            cap: caps.max_family,
        })?;

    let mut descriptors: Vec<Vec<SubComponent>> = Vec::with_capacity(total.saturating_sub(1));
    for mut t in 0..total {
        let mut parts: Vec<SubComponent> = Vec::new();
        for choices in &per_component {
            let pick = t % choices.len();
            t /= choices.len();
            parts.extend(choices[pick].iter().cloned());
        }
        if !parts.is_empty() {
            descriptors.push(parts);
        }
    }
    if descriptors.len() > caps.max_family {
        return Err(SubgroupoidError::CapExceeded {
            quantity: "subgroupoid count",
            value: descriptors.len(),
            cap: caps.max_family,
        });
    }

    let mut out = exec::map_vec(descriptors, |parts| Subgroupoid::from_parts(g, &parts));
    out.sort();
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    Ok(out)
}

/// Recursively assigns the least unplaced identity: either skipped (when
/// allowed) or made the base point of a new block with every choice of
/// block mates, isotropy subgroup, and fiber cosets.
#[allow(clippy::too_many_arguments)]
fn build_choices(
    component: usize,
    remaining: &[usize],
    wide_only: bool,
    subs: &[crate::group::Subgroup],
    coset_reps: &[Vec<usize>],
    current: &mut Vec<SubComponent>,
    out: &mut Vec<Vec<SubComponent>>,
    cap: usize,
) -> Result<(), SubgroupoidError> {
    if remaining.is_empty() {
        if out.len() >= cap.saturating_add(1) {
            return Err(SubgroupoidError::CapExceeded {
                quantity: "block choices",
                value: out.len(),
                cap,
            });
        }
        out.push(current.clone());
        return Ok(());
    }
    if !wide_only {
        build_choices(
            component,
            &remaining[1..],
            wide_only,
            subs,
            coset_reps,
            current,
            out,
            cap,
        )?;
    }
    for block in crate::combin::subsets_containing_first(remaining) {
        let rest: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|e| !block.contains(e))
            .collect();
        for (ki, k) in subs.iter().enumerate() {
            let reps = &coset_reps[ki];
            let slots = block.len() - 1;
            let combos = reps.len().checked_pow(slots as u32).ok_or(
                SubgroupoidError::CapExceeded {
                    quantity: "fiber choices",
                    value: usize::MAX,
                    cap,
                },
            )?;
            for mut combo in 0..combos {
                let mut transitions = vec![0usize; block.len()];
                for t in transitions.iter_mut().skip(1) {
                    *t = reps[combo % reps.len()];
                    combo /= reps.len();
                }
                current.push(SubComponent {
                    parent_component: component,
                    identities: block.clone(),
                    isotropy: k.elements().to_vec(),
                    transitions,
                });
                build_choices(
                    component,
                    &rest,
                    wide_only,
                    subs,
                    coset_reps,
                    current,
                    out,
                    cap,
                )?;
                current.pop();
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// A coset of a subgroupoid: `Hg = { hg : h in H, d(h) = r(g) }` on the
/// right, `gH = { gh : h in H, r(h) = d(g) }` on the left. Possibly empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub side: Side,
    pub of: Element,
    pub members: BTreeSet<Element>,
}

impl Coset {
    /// Canonical (least) member, absent for the empty coset.
    pub fn representative(&self) -> Option<Element> {
        self.members.first().copied()
    }
}

pub fn coset(g: &Groupoid, h: &Subgroupoid, x: Element, side: Side) -> Coset {
    let members = h
        .elements()
        .iter()
        .filter_map(|&t| match side {
            Side::Right => g.compose(t, x),
            Side::Left => g.compose(x, t),
        })
        .collect();
    Coset { side, of: x, members }
}

/// The coset-cardinality identity `|Hg| = delta * |H_r(g)|`, where delta is
/// the identity count of the component of H containing r(g) (zero when r(g)
/// is outside H). Both the formula value and the literal coset size are
/// returned.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CosetCardinality {
    pub delta: usize,
    pub isotropy_order: usize,
    pub formula: usize,
    pub actual: usize,
}

impl CosetCardinality {
    pub fn holds(&self) -> bool {
        self.formula == self.actual
    }
}

pub fn coset_cardinality(g: &Groupoid, h: &Subgroupoid, x: Element) -> CosetCardinality {
    let r = g.range(x);
    let (delta, isotropy_order) = match h.component_of_identity(r.component, r.dst) {
        Some(ci) => {
            let c = &h.components()[ci];
            (c.width(), c.isotropy_order())
        }
        None => (0, 0),
    };
    let actual = coset(g, h, x, Side::Right).members.len();
    CosetCardinality {
        delta,
        isotropy_order,
        formula: delta * isotropy_order,
        actual,
    }
}

/// Closed form for the index (G : H), the number of distinct nonempty
/// cosets: summed over the parent components G_j that H meets,
/// `|（G_j)_0| * sum_i (G_e : K_i)` with i running over the components of
/// H inside G_j.
pub fn index_formula(g: &Groupoid, h: &Subgroupoid) -> u64 {
    let mut total = 0u64;
    for (pci, pc) in g.components().iter().enumerate() {
        let m = pc.base().order() as u64;
        let inner: u64 = h
            .components()
            .iter()
            .filter(|c| c.parent_component == pci)
            .map(|c| m / c.isotropy_order() as u64)
            .sum();
        if inner > 0 {
            total += pc.width() as u64 * inner;
        }
    }
    total
}

/// Distinct nonempty right and left coset counts, by direct enumeration
/// over every element of the parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexCounts {
    pub right: usize,
    pub left: usize,
}

pub fn index_bruteforce(
    g: &Groupoid,
    h: &Subgroupoid,
    caps: &Caps,
) -> Result<IndexCounts, SubgroupoidError> {
    if g.order() > caps.max_groupoid {
        return Err(SubgroupoidError::CapExceeded {
            quantity: "groupoid order",
            value: g.order(),
            cap: caps.max_groupoid,
        });
    }
    let mut right: BTreeSet<Vec<Element>> = BTreeSet::new();
    let mut left: BTreeSet<Vec<Element>> = BTreeSet::new();
    for x in g.elements() {
        let r = coset(g, h, x, Side::Right).members;
        if !r.is_empty() {
            right.insert(r.into_iter().collect());
        }
        let l = coset(g, h, x, Side::Left).members;
        if !l.is_empty() {
            left.insert(l.into_iter().collect());
        }
    }
    Ok(IndexCounts {
        right: right.len(),
        left: left.len(),
    })
}

/// One part of a subgroupoid order report: a component with `d` identities
/// and isotropy order `m`, sitting over a parent base group of order
/// `parent_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderPart {
    pub d: usize,
    pub m: usize,
    pub parent_m: usize,
}

/// The order decomposition `|H| = sum d_i^2 m_i` plus the divisibility
/// facts that come with it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub parts: Vec<OrderPart>,
    pub order: usize,
    pub order_formula: usize,
    pub identity_sum: usize,
    pub parent_identity_count: usize,
    /// When both groupoids are connected and |H_0| divides |G_0|: whether
    /// |H| divides |G|.
    pub connected_divisibility: Option<bool>,
}

impl OrderReport {
    pub fn order_matches(&self) -> bool {
        self.order == self.order_formula
    }

    pub fn identity_bound_holds(&self) -> bool {
        self.identity_sum <= self.parent_identity_count
    }

    pub fn isotropy_divides(&self) -> bool {
        self.parts.iter().all(|p| p.parent_m % p.m == 0)
    }
}

pub fn lagrange_order_report(g: &Groupoid, h: &Subgroupoid) -> OrderReport {
    let parts: Vec<OrderPart> = h
        .components()
        .iter()
        .map(|c| OrderPart {
            d: c.width(),
            m: c.isotropy_order(),
            parent_m: g.components()[c.parent_component].base().order(),
        })
        .collect();
    let order_formula = parts.iter().map(|p| p.d * p.d * p.m).sum();
    let identity_sum = parts.iter().map(|p| p.d).sum();
    let connected_divisibility = (g.is_connected()
        && h.is_connected()
        && g.identity_count() % h.identity_count() == 0)
        .then(|| g.order() % h.order() == 0);
    OrderReport {
        parts,
        order: h.order(),
        order_formula,
        identity_sum,
        parent_identity_count: g.identity_count(),
        connected_divisibility,
    }
}

/// The wide-subgroupoid order identity and its uniform-component corollary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub wide: bool,
    pub order: usize,
    /// `sum_j |(G_j)_0| * sum_i (G_e : K_i) d_i |K_i|`; only stated for
    /// wide subgroupoids.
    pub rhs: Option<u64>,
    /// When every component shares the same (d, |K|): the independently
    /// counted index and the product (G : H) * d * |K|.
    pub corollary: Option<CorollaryCheck>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorollaryCheck {
    pub index: u64,
    pub d: usize,
    pub isotropy: usize,
    pub product: u64,
}

impl IdentityReport {
    pub fn identity_holds(&self) -> Option<bool> {
        self.rhs.map(|rhs| rhs == self.order as u64)
    }

    pub fn corollary_holds(&self) -> Option<bool> {
        self.corollary.map(|c| c.product == self.order as u64)
    }
}

pub fn lagrange_identity_check(
    g: &Groupoid,
    h: &Subgroupoid,
    caps: &Caps,
) -> IdentityReport {
    let order = g.order();
    if !h.is_wide() {
        return IdentityReport {
            wide: false,
            order,
            rhs: None,
            corollary: None,
        };
    }
    let mut rhs = 0u64;
    for (pci, pc) in g.components().iter().enumerate() {
        let m = pc.base().order() as u64;
        let inner: u64 = h
            .components()
            .iter()
            .filter(|c| c.parent_component == pci)
            .map(|c| {
                let kc = c.isotropy_order() as u64;
                (m / kc) * c.width() as u64 * kc
            })
            .sum();
        rhs += pc.width() as u64 * inner;
    }
    let uniform = h
        .components()
        .windows(2)
        .all(|w| w[0].width() == w[1].width() && w[0].isotropy_order() == w[1].isotropy_order());
    let corollary = uniform.then(|| {
        let index = index_bruteforce(g, h, caps)
            .map(|c| c.right as u64)
            .unwrap_or_else(|_| index_formula(g, h));
        let d = h.components()[0].width();
        let isotropy = h.components()[0].isotropy_order();
        CorollaryCheck {
            index,
            d,
            isotropy,
            product: index * d as u64 * isotropy as u64,
        }
    });
    IdentityReport {
        wide: true,
        order,
        rhs: Some(rhs),
        corollary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, symmetric, trivial};

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn a3_s2() -> Groupoid {
        Groupoid::connected(labels(&["e1", "e2", "e3"]), symmetric(2).unwrap()).unwrap()
    }

    /// The wide subgroupoid {e1,e2} x S2 union {e3} of A3 x S2.
    fn example_h(g: &Groupoid) -> Subgroupoid {
        let mut elems: Vec<Element> = Vec::new();
        for src in 0..2 {
            for dst in 0..2 {
                for s in 0..2 {
                    elems.push(Element { component: 0, src, dst, g: s });
                }
            }
        }
        elems.push(Element { component: 0, src: 2, dst: 2, g: 0 });
        Subgroupoid::from_elements(g, elems).unwrap()
    }

    /// The non-wide subgroupoid {e1,e2} x S2 of A3 x S2.
    fn example_k(g: &Groupoid) -> Subgroupoid {
        let mut elems: Vec<Element> = Vec::new();
        for src in 0..2 {
            for dst in 0..2 {
                for s in 0..2 {
                    elems.push(Element { component: 0, src, dst, g: s });
                }
            }
        }
        Subgroupoid::from_elements(g, elems).unwrap()
    }

    #[test]
    fn identity_set_is_a_wide_subgroupoid() {
        let g = a3_s2();
        let h = Subgroupoid::from_elements(&g, g.identities()).unwrap();
        assert!(h.is_wide());
        assert_eq!(h.order(), 3);
        assert_eq!(h.components().len(), 3);
    }

    #[test]
    fn example_subgroupoid_validates_with_two_components() {
        let g = a3_s2();
        let h = example_h(&g);
        assert!(h.is_wide());
        assert_eq!(h.order(), 9);
        assert_eq!(h.components().len(), 2);
        let widths: Vec<usize> = h.components().iter().map(|c| c.width()).collect();
        assert_eq!(widths, vec![2, 1]);
    }

    #[test]
    fn dropping_an_element_breaks_closure() {
        let g = a3_s2();
        let h = example_h(&g);
        // remove one non-identity element; some product now escapes
        let victim = Element { component: 0, src: 0, dst: 1, g: 1 };
        assert!(h.contains(victim));
        let rest: Vec<Element> = h
            .elements()
            .iter()
            .copied()
            .filter(|&x| x != victim)
            .collect();
        match Subgroupoid::from_elements(&g, rest) {
            Err(SubgroupoidError::NotClosed { .. })
            | Err(SubgroupoidError::MissingInverse(_)) => {}
            other => panic!("expected a closure failure, got {other:?}"),
        }
    }

    #[test]
    fn enumerate_counts_the_coarse_groupoid_on_two_objects() {
        // A2 has exactly four subgroupoids: {e1}, {e2}, {e1,e2}, A2
        let g = Groupoid::connected(labels(&["x", "y"]), trivial()).unwrap();
        let subs = enumerate_subgroupoids(&g, &EnumOptions::default()).unwrap();
        assert_eq!(subs.len(), 4);
        let orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
        assert_eq!(orders.iter().sum::<usize>(), 1 + 1 + 2 + 4);
    }

    #[test]
    fn enumerate_includes_twisted_components() {
        // A2 x Z2: the wide connected subgroupoids with trivial isotropy
        // come in two flavors, the plain block and the one whose crossing
        // fibers carry the nontrivial group element
        let g = Groupoid::connected(labels(&["x", "y"]), cyclic(2)).unwrap();
        let subs = enumerate_subgroupoids(&g, &EnumOptions::default()).unwrap();
        assert_eq!(subs.len(), 11);
        let twisted = subs.iter().filter(|s| !s.is_block_product()).count();
        assert_eq!(twisted, 1);
    }

    #[test]
    fn wide_only_restricts_to_full_identity_sets() {
        let g = Groupoid::connected(labels(&["x", "y"]), cyclic(2)).unwrap();
        let wide = enumerate_subgroupoids(
            &g,
            &EnumOptions { wide_only: true, caps: Caps::default() },
        )
        .unwrap();
        assert!(wide.iter().all(|s| s.is_wide()));
        let all = enumerate_subgroupoids(&g, &EnumOptions::default()).unwrap();
        let wide_in_all = all.iter().filter(|s| s.is_wide()).count();
        assert_eq!(wide.len(), wide_in_all);
    }

    #[test]
    fn group_case_enumeration_is_the_subgroup_lattice() {
        let g = Groupoid::connected(labels(&["e"]), dihedral(3)).unwrap();
        let subs = enumerate_subgroupoids(&g, &EnumOptions::default()).unwrap();
        assert_eq!(subs.len(), 6);
    }

    #[test]
    fn example_cosets_have_sizes_one_and_four() {
        let g = a3_s2();
        let h = example_h(&g);
        // an element with d(g) = e3 has a left coset of size 1
        let from_e3 = Element { component: 0, src: 2, dst: 1, g: 0 };
        assert_eq!(coset(&g, &h, from_e3, Side::Left).members.len(), 1);
        // an element with d(g) in {e1, e2} has a left coset of size 4
        let from_e1 = Element { component: 0, src: 0, dst: 1, g: 0 };
        assert_eq!(coset(&g, &h, from_e1, Side::Left).members.len(), 4);
    }

    #[test]
    fn non_wide_subgroupoid_has_an_empty_right_coset() {
        let g = a3_s2();
        let k = example_k(&g);
        // an arrow out of the block into e3: r(g) = e3 is outside K, so Kg
        // is empty, yet g belongs to its own left coset
        let x = Element { component: 0, src: 0, dst: 2, g: 0 };
        assert!(coset(&g, &k, x, Side::Right).members.is_empty());
        assert!(coset(&g, &k, x, Side::Left).members.contains(&x));
        let card = coset_cardinality(&g, &k, x);
        assert_eq!(card.delta, 0);
        assert_eq!(card.formula, 0);
        assert!(card.holds());
    }

    #[test]
    fn wide_subgroupoids_leave_no_element_cosetless() {
        let g = a3_s2();
        let h = example_h(&g);
        for x in g.elements() {
            assert!(!coset(&g, &h, x, Side::Right).members.is_empty());
            assert!(!coset(&g, &h, x, Side::Left).members.is_empty());
        }
    }

    #[test]
    fn coset_cardinality_formula_matches_the_example() {
        let g = a3_s2();
        let h = example_h(&g);
        // r(g) = e3: delta = 1, |H_e3| = 1
        let x = Element { component: 0, src: 0, dst: 2, g: 1 };
        let c = coset_cardinality(&g, &h, x);
        assert_eq!((c.delta, c.isotropy_order, c.formula), (1, 1, 1));
        assert!(c.holds());
        // r(g) = e1: delta = 2, |H_e1| = 2 -> 4
        let y = Element { component: 0, src: 2, dst: 0, g: 1 };
        let c = coset_cardinality(&g, &h, y);
        assert_eq!((c.delta, c.isotropy_order, c.formula), (2, 2, 4));
        assert!(c.holds());
    }

    #[test]
    fn example_index_is_nine_both_ways() {
        let g = a3_s2();
        let h = example_h(&g);
        assert_eq!(index_formula(&g, &h), 9);
        let counts = index_bruteforce(&g, &h, &Caps::default()).unwrap();
        assert_eq!(counts.right, 9);
        assert_eq!(counts.left, 9);
    }

    #[test]
    fn whole_groupoid_has_index_k() {
        let g = a3_s2();
        let h = Subgroupoid::from_elements(&g, g.elements()).unwrap();
        assert_eq!(index_formula(&g, &h), 3);
        let counts = index_bruteforce(&g, &h, &Caps::default()).unwrap();
        assert_eq!(counts.right, 3);
    }

    #[test]
    fn group_case_index_reduces_to_lagrange() {
        let g = Groupoid::connected(labels(&["e"]), dihedral(3)).unwrap();
        for h in enumerate_subgroupoids(&g, &EnumOptions::default()).unwrap() {
            let idx = index_formula(&g, &h);
            assert_eq!(idx, (6 / h.order()) as u64);
            let counts = index_bruteforce(&g, &h, &Caps::default()).unwrap();
            assert_eq!(counts.right as u64, idx);
        }
    }

    #[test]
    fn order_report_decomposes_the_example() {
        let g = a3_s2();
        let h = example_h(&g);
        let report = lagrange_order_report(&g, &h);
        assert_eq!(report.order, 9);
        assert_eq!(report.order_formula, 2 * 2 * 2 + 1);
        assert!(report.order_matches());
        assert!(report.identity_bound_holds());
        assert!(report.isotropy_divides());
        assert_eq!(report.connected_divisibility, None); // H is disconnected
    }

    #[test]
    fn connected_wide_subgroupoid_satisfies_the_identity() {
        // A3 x D3 with the wide connected subgroupoid A3 x <rot>
        let g = Groupoid::connected(labels(&["e1", "e2", "e3"]), dihedral(3)).unwrap();
        let base = g.components()[0].base();
        let rot = base.generated_subgroup(&[1]);
        let mut elems = Vec::new();
        for src in 0..3 {
            for dst in 0..3 {
                for &r in &rot {
                    elems.push(Element { component: 0, src, dst, g: r });
                }
            }
        }
        let h = Subgroupoid::from_elements(&g, elems).unwrap();
        assert_eq!(h.order(), 27);
        let report = lagrange_identity_check(&g, &h, &Caps::default());
        assert_eq!(report.rhs, Some(54));
        assert_eq!(report.identity_holds(), Some(true));
        let c = report.corollary.unwrap();
        assert_eq!(c.index, 6);
        assert_eq!(c.product, 54);

        // part (ii): both connected, |H_0| = 3 divides |G_0| = 3
        let order = lagrange_order_report(&g, &h);
        assert_eq!(order.connected_divisibility, Some(true));
    }

    #[test]
    fn identity_only_subgroupoid_satisfies_the_identity() {
        let g = a3_s2();
        let h = Subgroupoid::from_elements(&g, g.identities()).unwrap();
        let report = lagrange_identity_check(&g, &h, &Caps::default());
        // k identity components, each contributing (m : 1) * 1 * 1 = m
        assert_eq!(report.rhs, Some(3 * (2 + 2 + 2)));
        assert_eq!(report.identity_holds(), Some(true));
    }

    #[test]
    fn to_groupoid_matches_the_derived_structure() {
        let g = a3_s2();
        let h = example_h(&g);
        let (sub, map) = h.to_groupoid(&g);
        assert_eq!(sub.order(), 9);
        assert_eq!(sub.components().len(), 2);
        assert_eq!(map.len(), 9);
        // the map is multiplicative wherever both products are defined
        for (&a, &fa) in &map {
            for (&b, &fb) in &map {
                let lhs = g.compose(a, b).map(|c| map[&c]);
                let rhs = sub.compose(fa, fb);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
