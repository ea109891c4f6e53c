//! Groupoids in structured form, raw partial tables, and the structure
//! decomposition.
//!
//! A [`Groupoid`] is stored as a disjoint union of connected components,
//! each a pair (identity labels, base group): the component with `d`
//! identities and base group of order `m` is the product of the coarse
//! groupoid `A_d` with the base group and has `d^2 * m` elements. Arbitrary
//! partial multiplication tables enter through [`RawGroupoid`], which
//! validates every axiom exhaustively; [`structure`] then computes the
//! decomposition together with an explicit isomorphism witness.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::combin::is_squarefree;
use crate::group::{are_isomorphic, FiniteGroup, GroupError};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("a groupoid is a nonempty set; no elements given")]
    Empty,
    #[error("duplicate label `{0}`")]
    DuplicateLabels(String),
    #[error("invalid label `{0}`: labels are nonempty and use only [A-Za-z0-9_.-]")]
    InvalidLabel(String),
    #[error("associativity fails at ({a}, {b}, {c})")]
    AssociativityViolation { a: String, b: String, c: String },
    #[error("element `{0}` has no left or right identity")]
    MissingIdentity(String),
    #[error("element `{0}` has no inverse")]
    MissingInverse(String),
    #[error("composition domain error at ({a}, {b}): defined iff d(a) = r(b) is violated")]
    CompositionDomainError { a: String, b: String },
    #[error("`{0}` is not an identity of this groupoid")]
    UnknownIdentity(String),
    #[error("element id `{0}` does not parse or does not belong to this groupoid")]
    BadElementId(String),
    #[error("the groupoid is not connected")]
    NotConnected,
    #[error("order {order} exceeds the cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("structure witness failed: {0}")]
    StructureCheck(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl GroupoidError {
    /// Stable machine-readable discriminant.
    pub fn kind(&self) -> &'static str {
        match self {
            GroupoidError::Empty => "Empty",
            GroupoidError::DuplicateLabels(_) => "DuplicateLabels",
            GroupoidError::InvalidLabel(_) => "InvalidLabel",
            GroupoidError::AssociativityViolation { .. } => "AssociativityViolation",
            GroupoidError::MissingIdentity(_) => "MissingIdentity",
            GroupoidError::MissingInverse(_) => "MissingInverse",
            GroupoidError::CompositionDomainError { .. } => "CompositionDomainError",
            GroupoidError::UnknownIdentity(_) => "UnknownIdentity",
            GroupoidError::BadElementId(_) => "BadElementId",
            GroupoidError::NotConnected => "NotConnected",
            GroupoidError::CapExceeded { .. } => "CapExceeded",
            GroupoidError::StructureCheck(_) => "StructureCheck",
            GroupoidError::Group(e) => e.kind(),
        }
    }

    pub fn is_cap(&self) -> bool {
        match self {
            GroupoidError::CapExceeded { .. } => true,
            GroupoidError::Group(e) => e.is_cap(),
            _ => false,
        }
    }
}

pub(crate) fn validate_label(label: &str) -> Result<(), GroupoidError> {
    let ok = !label.is_empty()
        && label
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'));
    if ok {
        Ok(())
    } else {
        Err(GroupoidError::InvalidLabel(label.to_string()))
    }
}

/// One connected component: an ordered identity-label set of size `d` and a
/// base group of order `m` modeling every isotropy group.
#[derive(Clone, Debug)]
pub struct Component {
    labels: Vec<String>,
    base: Arc<FiniteGroup>,
}

impl Component {
    /// Number of identities, `d`.
    pub fn width(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub(crate) fn base_arc(&self) -> Arc<FiniteGroup> {
        Arc::clone(&self.base)
    }

    /// `d^2 * m`.
    pub fn order(&self) -> usize {
        self.width() * self.width() * self.base.order()
    }
}

/// An element of a structured groupoid: an arrow `src -> dst` inside one
/// component, carrying a base-group element. `d(g)` is the src identity and
/// `r(g)` the dst identity; the product `ab` is defined iff `d(a) = r(b)`,
/// that is, `a.src == b.dst`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    pub component: usize,
    pub src: usize,
    pub dst: usize,
    pub g: usize,
}

/// A finite groupoid as a disjoint union of connected components.
#[derive(Clone, Debug)]
pub struct Groupoid {
    components: Vec<Component>,
}

impl Groupoid {
    /// Single-component groupoid on the given identity labels with the given
    /// base group: the product of a coarse groupoid with `base`.
    pub fn connected(labels: Vec<String>, base: FiniteGroup) -> Result<Groupoid, GroupoidError> {
        Groupoid::from_components(vec![(labels, base)])
    }

    /// Disjoint union of components. Labels must be unique across the whole
    /// groupoid.
    pub fn from_components(
        parts: Vec<(Vec<String>, FiniteGroup)>,
    ) -> Result<Groupoid, GroupoidError> {
        Groupoid::from_component_arcs(
            parts
                .into_iter()
                .map(|(labels, base)| (labels, Arc::new(base)))
                .collect(),
        )
    }

    pub(crate) fn from_component_arcs(
        parts: Vec<(Vec<String>, Arc<FiniteGroup>)>,
    ) -> Result<Groupoid, GroupoidError> {
        if parts.is_empty() || parts.iter().any(|(labels, _)| labels.is_empty()) {
            return Err(GroupoidError::Empty);
        }
        let mut seen = std::collections::BTreeSet::new();
        for (labels, _) in &parts {
            for l in labels {
                validate_label(l)?;
                if !seen.insert(l.clone()) {
                    return Err(GroupoidError::DuplicateLabels(l.clone()));
                }
            }
        }
        Ok(Groupoid {
            components: parts
                .into_iter()
                .map(|(labels, base)| Component { labels, base })
                .collect(),
        })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// Total number of elements.
    pub fn order(&self) -> usize {
        self.components.iter().map(|c| c.order()).sum()
    }

    /// Total number of identities, `k`.
    pub fn identity_count(&self) -> usize {
        self.components.iter().map(|c| c.width()).sum()
    }

    /// All identity labels in component order.
    pub fn identity_labels(&self) -> Vec<&str> {
        self.components
            .iter()
            .flat_map(|c| c.labels.iter().map(|s| s.as_str()))
            .collect()
    }

    /// Size of the isotropy subgroupoid: the elements with `d(g) = r(g)`.
    pub fn isotropy_order(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.width() * c.base.order())
            .sum()
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.components.iter().enumerate().flat_map(|(ci, c)| {
            let d = c.width();
            let m = c.base.order();
            (0..d).flat_map(move |src| {
                (0..d).flat_map(move |dst| {
                    (0..m).map(move |g| Element {
                        component: ci,
                        src,
                        dst,
                        g,
                    })
                })
            })
        })
    }

    /// The identity elements, in canonical order.
    pub fn identities(&self) -> Vec<Element> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(ci, c)| {
                (0..c.width()).map(move |e| Element {
                    component: ci,
                    src: e,
                    dst: e,
                    g: 0,
                })
            })
            .collect()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.components
            .get(x.component)
            .map(|c| x.src < c.width() && x.dst < c.width() && x.g < c.base.order())
            .unwrap_or(false)
    }

    /// The product `ab`, defined iff `d(a) = r(b)`; `None` encodes
    /// undefinedness, not failure.
    pub fn compose(&self, a: Element, b: Element) -> Option<Element> {
        if a.component != b.component || a.src != b.dst {
            return None;
        }
        let base = &self.components[a.component].base;
        Some(Element {
            component: a.component,
            src: b.src,
            dst: a.dst,
            g: base.mul(a.g, b.g),
        })
    }

    pub fn inverse(&self, a: Element) -> Element {
        let base = &self.components[a.component].base;
        Element {
            component: a.component,
            src: a.dst,
            dst: a.src,
            g: base.inverse(a.g),
        }
    }

    /// The right identity d(a), with `a * d(a) = a`.
    pub fn domain(&self, a: Element) -> Element {
        Element {
            component: a.component,
            src: a.src,
            dst: a.src,
            g: 0,
        }
    }

    /// The left identity r(a), with `r(a) * a = a`.
    pub fn range(&self, a: Element) -> Element {
        Element {
            component: a.component,
            src: a.dst,
            dst: a.dst,
            g: 0,
        }
    }

    /// Locates an identity by label: (component, local index).
    pub fn identity_by_label(&self, label: &str) -> Result<(usize, usize), GroupoidError> {
        for (ci, c) in self.components.iter().enumerate() {
            if let Some(e) = c.labels.iter().position(|l| l == label) {
                return Ok((ci, e));
            }
        }
        Err(GroupoidError::UnknownIdentity(label.to_string()))
    }

    /// The hom-set G(e1, e2): all elements with d = e1 and r = e2. Has
    /// `m` elements when the identities share a component, none otherwise.
    pub fn hom_set(&self, e1: &str, e2: &str) -> Result<Vec<Element>, GroupoidError> {
        let (c1, i1) = self.identity_by_label(e1)?;
        let (c2, i2) = self.identity_by_label(e2)?;
        if c1 != c2 {
            return Ok(Vec::new());
        }
        let m = self.components[c1].base.order();
        Ok((0..m)
            .map(|g| Element {
                component: c1,
                src: i1,
                dst: i2,
                g,
            })
            .collect())
    }

    /// Canonical element id `component/srcLabel/dstLabel/g`.
    pub fn element_id(&self, x: Element) -> String {
        let c = &self.components[x.component];
        format!(
            "{}/{}/{}/{}",
            x.component, c.labels[x.src], c.labels[x.dst], x.g
        )
    }

    pub fn parse_element_id(&self, id: &str) -> Result<Element, GroupoidError> {
        let bad = || GroupoidError::BadElementId(id.to_string());
        let parts: Vec<&str> = id.split('/').collect();
        let [comp, src, dst, g] = parts.as_slice() else {
            return Err(bad());
        };
        let component: usize = comp.parse().map_err(|_| bad())?;
        let g: usize = g.parse().map_err(|_| bad())?;
        let c = self.components.get(component).ok_or_else(bad)?;
        let src = c.labels.iter().position(|l| l == src).ok_or_else(bad)?;
        let dst = c.labels.iter().position(|l| l == dst).ok_or_else(bad)?;
        if g >= c.base.order() {
            return Err(bad());
        }
        Ok(Element {
            component,
            src,
            dst,
            g,
        })
    }

    /// Whether squarefree order forces a single identity. Always true for a
    /// valid connected groupoid, since its order is `k^2 * m`; exposed as a
    /// checkable predicate.
    pub fn squarefree_implies_group(&self) -> Result<bool, GroupoidError> {
        if !self.is_connected() {
            return Err(GroupoidError::NotConnected);
        }
        Ok(!is_squarefree(self.order() as u64) || self.identity_count() == 1)
    }

    /// Isomorphism test: groupoids are isomorphic iff their component
    /// multisets match under (same identity count, isomorphic base groups).
    pub fn is_isomorphic_to(&self, other: &Groupoid, cap: usize) -> Result<bool, GroupoidError> {
        if self.order() != other.order() || self.components.len() != other.components.len() {
            return Ok(false);
        }
        // bucket both component lists by (d, m); within a bucket, match up
        // to base-group isomorphism (an equivalence, so greedy matching is
        // exact)
        let mut mine: BTreeMap<(usize, usize), Vec<&Component>> = BTreeMap::new();
        let mut theirs: BTreeMap<(usize, usize), Vec<&Component>> = BTreeMap::new();
        for c in &self.components {
            mine.entry((c.width(), c.base.order())).or_default().push(c);
        }
        for c in &other.components {
            theirs
                .entry((c.width(), c.base.order()))
                .or_default()
                .push(c);
        }
        if mine.keys().ne(theirs.keys()) {
            return Ok(false);
        }
        for (key, left) in &mine {
            let mut right: Vec<&Component> = theirs[key].clone();
            if left.len() != right.len() {
                return Ok(false);
            }
            for c in left {
                let mut matched = None;
                for (i, cand) in right.iter().enumerate() {
                    if are_isomorphic(&c.base, &cand.base, cap)?.is_some() {
                        matched = Some(i);
                        break;
                    }
                }
                match matched {
                    Some(i) => {
                        right.swap_remove(i);
                    }
                    None => return Ok(false),
                }
            }
        }
        Ok(true)
    }

    /// One component as a standalone connected groupoid (sharing the base
    /// group). Element ids in the result use component index 0.
    pub fn component_groupoid(&self, i: usize) -> Groupoid {
        let c = &self.components[i];
        Groupoid::from_component_arcs(vec![(c.labels.to_vec(), c.base_arc())])
            .expect("a valid component stays valid in isolation")
    }

    /// Exports the full multiplication table as a raw groupoid whose element
    /// labels are sequential (`x0`, `x1`, ...) in canonical element order.
    pub fn to_raw(&self) -> RawGroupoid {
        let elements: Vec<Element> = self.elements().collect();
        let labels: Vec<String> = (0..elements.len()).map(|i| format!("x{i}")).collect();
        let index: BTreeMap<Element, usize> =
            elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut product = BTreeMap::new();
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                if let Some(c) = self.compose(a, b) {
                    product.insert((i, j), index[&c]);
                }
            }
        }
        RawGroupoid { labels, product }
    }
}

/// A raw groupoid: labeled elements with a partial multiplication table.
/// Pairs absent from `product` are undefined.
#[derive(Clone, Debug)]
pub struct RawGroupoid {
    labels: Vec<String>,
    product: BTreeMap<(usize, usize), usize>,
}

/// A raw groupoid that passed the exhaustive axiom scan, with its domain,
/// range, and inverse maps.
#[derive(Clone, Debug)]
pub struct CheckedRaw {
    raw: RawGroupoid,
    domain: Vec<usize>,
    range: Vec<usize>,
    inverse: Vec<usize>,
    identities: Vec<usize>,
}

impl RawGroupoid {
    pub fn new(
        labels: Vec<String>,
        product: BTreeMap<(usize, usize), usize>,
    ) -> Result<RawGroupoid, GroupoidError> {
        if labels.is_empty() {
            return Err(GroupoidError::Empty);
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            validate_label(l)?;
            if !seen.insert(l.clone()) {
                return Err(GroupoidError::DuplicateLabels(l.clone()));
            }
        }
        let n = labels.len();
        if product
            .iter()
            .any(|(&(a, b), &c)| a >= n || b >= n || c >= n)
        {
            return Err(GroupoidError::BadElementId(
                "product entry out of range".into(),
            ));
        }
        Ok(RawGroupoid { labels, product })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn product_map(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.product
    }

    fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.product.get(&(a, b)).copied()
    }

    #[cfg(test)]
    pub(crate) fn remove_products_with_right_factor(&mut self, b: usize) {
        self.product.retain(|&(_, rb), _| rb != b);
    }

    /// Exhaustively verifies the groupoid axioms: every element has a right
    /// and left identity and an inverse, the product is defined exactly on
    /// composable pairs, and associativity holds wherever it makes sense
    /// (if either side of `(ab)c = a(bc)` is fully defined so is the other,
    /// and they agree).
    pub fn validate(&self) -> Result<CheckedRaw, GroupoidError> {
        let n = self.order();
        let lbl = |i: usize| self.labels[i].clone();

        // identities: idempotents acting neutrally on every defined product
        let mut is_identity = vec![false; n];
        for e in 0..n {
            if self.mul(e, e) != Some(e) {
                continue;
            }
            is_identity[e] = (0..n).all(|x| {
                self.mul(x, e).map(|y| y == x).unwrap_or(true)
                    && self.mul(e, x).map(|y| y == x).unwrap_or(true)
            });
        }
        let identities: Vec<usize> = (0..n).filter(|&e| is_identity[e]).collect();

        // d(g): identity e with g*e defined; r(g): identity e with e*g defined
        let mut domain = vec![usize::MAX; n];
        let mut range = vec![usize::MAX; n];
        for g in 0..n {
            let d = identities.iter().copied().find(|&e| self.mul(g, e).is_some());
            let r = identities.iter().copied().find(|&e| self.mul(e, g).is_some());
            match (d, r) {
                (Some(d), Some(r)) => {
                    domain[g] = d;
                    range[g] = r;
                }
                _ => return Err(GroupoidError::MissingIdentity(lbl(g))),
            }
        }

        // composability: defined iff d(a) = r(b); this also flags a second
        // identity acting on the same element
        for a in 0..n {
            for b in 0..n {
                let defined = self.mul(a, b).is_some();
                if defined != (domain[a] == range[b]) {
                    return Err(GroupoidError::CompositionDomainError {
                        a: lbl(a),
                        b: lbl(b),
                    });
                }
            }
        }

        // inverses: g^-1 g = d(g) and g g^-1 = r(g)
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            let inv = (0..n).find(|&h| {
                self.mul(h, g) == Some(domain[g]) && self.mul(g, h) == Some(range[g])
            });
            match inv {
                Some(h) => inverse[g] = h,
                None => return Err(GroupoidError::MissingInverse(lbl(g))),
            }
        }

        // associativity whenever it makes sense
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    let left = ab.and_then(|ab| self.mul(ab, c));
                    let right = self.mul(b, c).and_then(|bc| self.mul(a, bc));
                    if left != right {
                        return Err(GroupoidError::AssociativityViolation {
                            a: lbl(a),
                            b: lbl(b),
                            c: lbl(c),
                        });
                    }
                }
            }
        }

        Ok(CheckedRaw {
            raw: self.clone(),
            domain,
            range,
            inverse,
            identities,
        })
    }
}

impl CheckedRaw {
    pub fn raw(&self) -> &RawGroupoid {
        &self.raw
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn domain_map(&self) -> &[usize] {
        &self.domain
    }

    pub fn range_map(&self) -> &[usize] {
        &self.range
    }

    pub fn inverse_map(&self) -> &[usize] {
        &self.inverse
    }
}

/// The structure decomposition of a validated raw groupoid, with the witness
/// bijection raw element -> structured element.
#[derive(Clone, Debug)]
pub struct Structured {
    pub groupoid: Groupoid,
    /// `witness[i]` is the image of raw element `i`.
    pub witness: Vec<Element>,
}

/// Decomposes a validated raw groupoid into components and base groups.
///
/// Identities are partitioned by the relation "some element runs between
/// them"; each class takes its lexicographically least label as base point
/// `e`, the isotropy group at `e` becomes the base group, and one transition
/// element per identity trivializes the component. The returned bijection
/// `g -> (d(g), r(g), t_r(g)^-1 g t_d(g))` is verified multiplicative on
/// every composable pair.
pub fn structure(checked: &CheckedRaw) -> Result<Structured, GroupoidError> {
    let raw = &checked.raw;
    let n = raw.order();

    // partition identities into connectivity classes; hom-sets within a
    // class are all nonempty, so one sweep per base point suffices
    let mut class_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &e in &checked.identities {
        if class_of.contains_key(&e) {
            continue;
        }
        let members: Vec<usize> = checked
            .identities
            .iter()
            .copied()
            .filter(|&f| (0..n).any(|g| checked.domain[g] == e && checked.range[g] == f))
            .collect();
        let idx = classes.len();
        for &f in &members {
            class_of.insert(f, idx);
        }
        classes.push(members);
    }

    for class in &mut classes {
        class.sort_by(|&a, &b| raw.labels[a].cmp(&raw.labels[b]));
    }
    classes.sort_by(|a, b| raw.labels[a[0]].cmp(&raw.labels[b[0]]));

    let mut parts: Vec<(Vec<String>, FiniteGroup)> = Vec::new();
    let mut images: Vec<Option<Element>> = vec![None; n];
    for (ci, class) in classes.iter().enumerate() {
        let base_e = class[0];
        // isotropy group at the base identity, with the identity moved to
        // position 0 so no relabeling happens inside from_table
        let mut iso: Vec<usize> = (0..n)
            .filter(|&g| checked.domain[g] == base_e && checked.range[g] == base_e)
            .collect();
        let id_pos = iso.iter().position(|&x| x == base_e).unwrap();
        iso.swap(0, id_pos);
        let pos = |g: usize| iso.iter().position(|&x| x == g).unwrap();
        let table: Vec<Vec<usize>> = iso
            .iter()
            .map(|&a| iso.iter().map(|&b| pos(raw.mul(a, b).unwrap())).collect())
            .collect();
        let base =
            FiniteGroup::from_table(&table)?.with_name(format!("iso_{}", raw.labels[base_e]));

        // transition elements t_f in G(e, f), least raw index per identity
        let transitions: Vec<usize> = class
            .iter()
            .map(|&f| {
                (0..n)
                    .find(|&g| checked.domain[g] == base_e && checked.range[g] == f)
                    .expect("class members are connected to the base point")
            })
            .collect();

        for g in 0..n {
            let d = checked.domain[g];
            if class_of[&d] != ci {
                continue;
            }
            let r = checked.range[g];
            let src = class.iter().position(|&f| f == d).unwrap();
            let dst = class.iter().position(|&f| f == r).unwrap();
            // t_r^-1 * g * t_d lands in the isotropy group at the base point
            let td = transitions[src];
            let tr_inv = checked.inverse[transitions[dst]];
            let gtd = raw.mul(g, td).expect("d(g) = r(t_d)");
            let conj = raw.mul(tr_inv, gtd).expect("d(t_r^-1) = r(g t_d)");
            images[g] = Some(Element {
                component: ci,
                src,
                dst,
                g: pos(conj),
            });
        }

        parts.push((
            class.iter().map(|&f| raw.labels[f].clone()).collect(),
            base,
        ));
    }

    let groupoid = Groupoid::from_components(parts)?;
    let witness: Vec<Element> = images
        .into_iter()
        .map(|x| x.expect("every element belongs to some class"))
        .collect();

    // the witness must be a bijection...
    let mut seen = std::collections::BTreeSet::new();
    for &x in &witness {
        if !groupoid.contains(x) || !seen.insert(x) {
            return Err(GroupoidError::StructureCheck(
                "witness is not a bijection".into(),
            ));
        }
    }
    if seen.len() != groupoid.order() {
        return Err(GroupoidError::StructureCheck(format!(
            "orders disagree: raw {} vs structured {}",
            n,
            groupoid.order()
        )));
    }
    // ...and multiplicative on every composable pair
    for a in 0..n {
        for b in 0..n {
            let expected = raw.mul(a, b).map(|c| witness[c]);
            if groupoid.compose(witness[a], witness[b]) != expected {
                return Err(GroupoidError::StructureCheck(format!(
                    "witness not multiplicative at ({}, {})",
                    raw.labels[a], raw.labels[b]
                )));
            }
        }
    }

    Ok(Structured { groupoid, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, klein, trivial};

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// The coarse groupoid on n objects as a raw table: element (x, y) at
    /// index x*n + y, with (x,y)(u,x) = (u,y).
    fn coarse_raw(n: usize) -> RawGroupoid {
        let labels: Vec<String> = (0..n)
            .flat_map(|x| (0..n).map(move |y| format!("p{x}.{y}")))
            .collect();
        let mut product = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                for u in 0..n {
                    product.insert((x * n + y, u * n + x), u * n + y);
                }
            }
        }
        RawGroupoid::new(labels, product).unwrap()
    }

    #[test]
    fn a_group_is_a_one_object_groupoid() {
        let g = dihedral(3);
        let mut product = BTreeMap::new();
        for a in 0..6 {
            for b in 0..6 {
                product.insert((a, b), g.mul(a, b));
            }
        }
        let raw =
            RawGroupoid::new(labels(&["e", "r", "r2", "s", "sr", "sr2"]), product).unwrap();
        let checked = raw.validate().unwrap();
        assert_eq!(checked.identities(), &[0]);
        let s = structure(&checked).unwrap();
        assert!(s.groupoid.is_connected());
        assert_eq!(s.groupoid.identity_count(), 1);
        assert_eq!(s.groupoid.order(), 6);
    }

    #[test]
    fn coarse_groupoid_on_two_objects_validates() {
        let raw = coarse_raw(2);
        let checked = raw.validate().unwrap();
        assert_eq!(checked.identities().len(), 2);
        let s = structure(&checked).unwrap();
        assert_eq!(s.groupoid.components().len(), 1);
        assert_eq!(s.groupoid.components()[0].width(), 2);
        assert_eq!(s.groupoid.components()[0].base().order(), 1);
    }

    #[test]
    fn deleting_products_breaks_identity_detection() {
        let mut raw = coarse_raw(2);
        // strip every product with (1,1) as the right factor; (1,1) loses
        // its role as a right identity
        raw.remove_products_with_right_factor(3);
        match raw.validate() {
            Err(GroupoidError::MissingIdentity(_))
            | Err(GroupoidError::CompositionDomainError { .. }) => {}
            other => panic!("expected a detection error, got {other:?}"),
        }
    }

    #[test]
    fn disjoint_union_of_z3_and_z2_has_two_components() {
        let z3 = cyclic(3);
        let z2 = cyclic(2);
        let mut product = BTreeMap::new();
        for a in 0..3 {
            for b in 0..3 {
                product.insert((a, b), z3.mul(a, b));
            }
        }
        for a in 0..2 {
            for b in 0..2 {
                product.insert((3 + a, 3 + b), 3 + z2.mul(a, b));
            }
        }
        let raw = RawGroupoid::new(labels(&["a0", "a1", "a2", "b0", "b1"]), product).unwrap();
        let s = structure(&raw.validate().unwrap()).unwrap();
        assert_eq!(s.groupoid.components().len(), 2);
        let mut shape: Vec<(usize, usize)> = s
            .groupoid
            .components()
            .iter()
            .map(|c| (c.width(), c.base().order()))
            .collect();
        shape.sort();
        assert_eq!(shape, vec![(1, 2), (1, 3)]);
        assert_eq!(s.groupoid.order(), 5);
    }

    #[test]
    fn connected_constructor_orders() {
        let g = Groupoid::connected(labels(&["e"]), trivial()).unwrap();
        assert_eq!(g.order(), 1);
        let g = Groupoid::connected(labels(&["e1", "e2", "e3"]), dihedral(3)).unwrap();
        assert_eq!(g.order(), 54);
        assert_eq!(g.isotropy_order(), 18);
        let g =
            Groupoid::connected((0..7).map(|i| format!("e{i}")).collect(), cyclic(105)).unwrap();
        assert_eq!(g.order(), 49 * 105);
    }

    #[test]
    fn duplicate_and_malformed_labels_are_rejected() {
        assert!(matches!(
            Groupoid::connected(labels(&["e", "e"]), trivial()),
            Err(GroupoidError::DuplicateLabels(_))
        ));
        assert!(matches!(
            Groupoid::connected(labels(&["a/b"]), trivial()),
            Err(GroupoidError::InvalidLabel(_))
        ));
    }

    #[test]
    fn composition_follows_the_domain_range_convention() {
        let g = Groupoid::connected(labels(&["x", "y"]), cyclic(2)).unwrap();
        let a = Element { component: 0, src: 0, dst: 1, g: 1 };
        // a * d(a) = a and r(a) * a = a
        assert_eq!(g.compose(a, g.domain(a)), Some(a));
        assert_eq!(g.compose(g.range(a), a), Some(a));
        // a^-1 * a = d(a), a * a^-1 = r(a)
        assert_eq!(g.compose(g.inverse(a), a), Some(g.domain(a)));
        assert_eq!(g.compose(a, g.inverse(a)), Some(g.range(a)));
        // mismatched endpoints do not compose
        assert_eq!(g.compose(a, a), None);
    }

    #[test]
    fn cross_component_pairs_never_compose() {
        let g = Groupoid::from_components(vec![
            (labels(&["x"]), cyclic(2)),
            (labels(&["y"]), cyclic(2)),
        ])
        .unwrap();
        let a = Element { component: 0, src: 0, dst: 0, g: 1 };
        let b = Element { component: 1, src: 0, dst: 0, g: 1 };
        assert_eq!(g.compose(a, b), None);
    }

    #[test]
    fn compose_is_associative_on_composable_triples() {
        let g = Groupoid::connected(labels(&["x", "y"]), dihedral(3)).unwrap();
        let all: Vec<Element> = g.elements().collect();
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    let left = g.compose(a, b).and_then(|ab| g.compose(ab, c));
                    let right = g.compose(b, c).and_then(|bc| g.compose(a, bc));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn hom_sets_have_base_group_size_within_a_component() {
        let g = Groupoid::connected(labels(&["e1", "e2", "e3"]), dihedral(3)).unwrap();
        assert_eq!(g.hom_set("e1", "e1").unwrap().len(), 6);
        assert_eq!(g.hom_set("e1", "e2").unwrap().len(), 6);
        assert!(g.hom_set("zz", "e1").is_err());
        let disj = Groupoid::from_components(vec![
            (labels(&["x"]), cyclic(3)),
            (labels(&["y"]), cyclic(2)),
        ])
        .unwrap();
        assert!(disj.hom_set("x", "y").unwrap().is_empty());
    }

    #[test]
    fn hom_set_sizes_sum_to_the_order() {
        let g = Groupoid::from_components(vec![
            (labels(&["e1", "e2", "e3"]), dihedral(3)),
            (labels(&["f"]), cyclic(2)),
        ])
        .unwrap();
        let names: Vec<String> = g.identity_labels().iter().map(|s| s.to_string()).collect();
        let mut total = 0;
        for a in &names {
            for b in &names {
                total += g.hom_set(a, b).unwrap().len();
            }
        }
        assert_eq!(total, g.order());
    }

    #[test]
    fn element_ids_round_trip() {
        let g = Groupoid::connected(labels(&["e1", "e2"]), dihedral(3)).unwrap();
        for x in g.elements() {
            let id = g.element_id(x);
            assert_eq!(g.parse_element_id(&id).unwrap(), x);
        }
        assert!(g.parse_element_id("0/e1/e2").is_err());
        assert!(g.parse_element_id("1/e1/e2/0").is_err());
    }

    #[test]
    fn structure_round_trips_through_raw_export() {
        let g = Groupoid::from_components(vec![
            (labels(&["e1", "e2"]), cyclic(2)),
            (labels(&["f"]), cyclic(3)),
        ])
        .unwrap();
        let s = structure(&g.to_raw().validate().unwrap()).unwrap();
        assert!(g.is_isomorphic_to(&s.groupoid, 512).unwrap());
    }

    #[test]
    fn groupoid_isomorphism_compares_component_multisets() {
        let a2 =
            |l1: &str, l2: &str| Groupoid::connected(labels(&[l1, l2]), cyclic(2)).unwrap();
        assert!(a2("x", "y").is_isomorphic_to(&a2("u", "v"), 512).unwrap());
        // coarse groupoid on 2 objects vs the Klein group: both order 4
        let coarse = Groupoid::connected(labels(&["x", "y"]), trivial()).unwrap();
        let kl = Groupoid::connected(labels(&["e"]), klein()).unwrap();
        assert_eq!(coarse.order(), kl.order());
        assert!(!coarse.is_isomorphic_to(&kl, 512).unwrap());
        // different (d, m) profiles
        let g1 = Groupoid::connected(labels(&["x", "y"]), cyclic(3)).unwrap();
        let g2 = Groupoid::connected(labels(&["x", "y", "z"]), cyclic(2)).unwrap();
        assert!(!g1.is_isomorphic_to(&g2, 512).unwrap());
    }

    #[test]
    fn squarefree_connected_groupoids_are_groups() {
        let g = Groupoid::connected(labels(&["e"]), cyclic(6)).unwrap();
        assert!(g.squarefree_implies_group().unwrap());
        let a2 = Groupoid::connected(labels(&["x", "y"]), trivial()).unwrap();
        assert!(a2.squarefree_implies_group().unwrap()); // order 4: vacuous
        let g30 = Groupoid::connected(labels(&["e"]), dihedral(15)).unwrap();
        assert!(g30.squarefree_implies_group().unwrap());
        let disj = Groupoid::from_components(vec![
            (labels(&["x"]), cyclic(2)),
            (labels(&["y"]), cyclic(3)),
        ])
        .unwrap();
        assert!(disj.squarefree_implies_group().is_err());
    }
}
