//! Sylow theory for connected groupoids, plus normal and characteristic
//! subgroupoids, the center, and isotropic conjugation.
//!
//! A (d,p)-Sylow subgroupoid of a connected groupoid with identity set of
//! size `k` and base group `G` is a product block `A_d x K` on a d-subset
//! of the identities, `K` a Sylow p-subgroup of `G`. There are
//! `N * C(k, d)` of them, `N` the number of Sylow p-subgroups of `G`. A
//! (D,P)-Sylow subgroupoid is a disjoint union of such blocks, one per
//! (d_i, p_i) class; for wide profiles the count is the multinomial
//! `C(k; D)` times the product of the `N_i`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::combin::{factorial, is_prime, multinomial, ordered_block_assignments, p_adic_split, subsets_of_size};
use crate::exec;
use crate::group::{isomorphisms, normalizer, subgroups, sylow_subgroups, GroupError};
use crate::groupoid::{Element, Groupoid, GroupoidError};
use crate::subgroupoid::{SubComponent, Subgroupoid, SubgroupoidError};
use crate::Caps;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SylowError {
    #[error("the groupoid is not connected")]
    NotConnected,
    #[error("the subgroupoid is not wide")]
    NotWide,
    #[error("the subgroupoid is not wide and connected")]
    NotWideConnected,
    #[error("the subgroupoid is not a union of product blocks")]
    NotBlockForm,
    #[error("no subgroup of order {p}^{n} exists: {p}^{n} does not divide {base_order}")]
    NoSuchGroupOrder { p: u64, n: u32, base_order: usize },
    #[error("infeasible profile: {0}")]
    ProfileInfeasible(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("enumeration of {count} members exceeds the cap {cap}")]
    CapExceeded { count: usize, cap: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Subgroupoid(#[from] SubgroupoidError),
}

impl SylowError {
    /// Stable machine-readable discriminant.
    pub fn kind(&self) -> &'static str {
        match self {
            SylowError::NotConnected => "NotConnected",
            SylowError::NotWide => "NotWide",
            SylowError::NotWideConnected => "NotWideConnected",
            SylowError::NotBlockForm => "NotBlockForm",
            SylowError::NoSuchGroupOrder { .. } => "NoSuchGroupOrder",
            SylowError::ProfileInfeasible(_) => "ProfileInfeasible",
            SylowError::HypothesisNotMet(_) => "HypothesisNotMet",
            SylowError::CapExceeded { .. } => "CapExceeded",
            SylowError::Group(e) => e.kind(),
            SylowError::Groupoid(e) => e.kind(),
            SylowError::Subgroupoid(e) => e.kind(),
        }
    }

    pub fn is_cap(&self) -> bool {
        match self {
            SylowError::CapExceeded { .. } => true,
            SylowError::Group(e) => e.is_cap(),
            SylowError::Groupoid(e) => e.is_cap(),
            SylowError::Subgroupoid(e) => e.is_cap(),
            _ => false,
        }
    }
}

/// Normality of a wide subgroupoid: `x^-1 H x` stays inside `H` for every
/// element `x`. Only isotropy elements of `H` can be conjugated (the triple
/// composes only when `d(h) = r(h) = r(x)`), so the scan runs over all
/// conjugating arrows and all isotropy members at their ranges.
pub fn is_normal(g: &Groupoid, h: &Subgroupoid) -> Result<bool, SylowError> {
    if !h.is_wide() {
        return Err(SylowError::NotWide);
    }
    for (pci, pc) in g.components().iter().enumerate() {
        let base = pc.base();
        for a in 0..pc.width() {
            let target = h.isotropy_at(pci, a);
            for b in 0..pc.width() {
                let source = h.isotropy_at(pci, b);
                for t in 0..base.order() {
                    let t_inv = base.inverse(t);
                    for &s in &source {
                        // x = (a -> b, t); x^-1 s x lands in the isotropy at a
                        let conj = base.mul(base.mul(t_inv, s), t);
                        if target.binary_search(&conj).is_err() {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// One member of the isomorphism family A(G): an isomorphism between two
/// isotropy groups, recorded in base-group coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoMap {
    /// (component, local identity) of the domain isotropy group.
    pub from: (usize, usize),
    /// (component, local identity) of the codomain isotropy group.
    pub to: (usize, usize),
    /// Image of each base-group element of the `from` component.
    pub map: Vec<usize>,
}

/// The family A(G) of all isomorphisms between isotropy groups of `g`,
/// automorphisms included. In structured coordinates every isotropy group
/// of a component is its base group, so the maps are exactly the group
/// isomorphisms between base groups, replicated over identity pairs.
pub fn iso_family(g: &Groupoid, caps: &Caps) -> Result<Vec<IsoMap>, SylowError> {
    let comps = g.components();
    // group isomorphism lists per component pair, computed once
    let mut cache: Vec<Vec<Vec<Vec<usize>>>> = Vec::with_capacity(comps.len());
    for c1 in comps {
        let mut row = Vec::with_capacity(comps.len());
        for c2 in comps {
            row.push(isomorphisms(c1.base(), c2.base(), caps.max_group)?);
        }
        cache.push(row);
    }
    let mut family = Vec::new();
    for (ci, c1) in comps.iter().enumerate() {
        for e1 in 0..c1.width() {
            for (cj, c2) in comps.iter().enumerate() {
                for e2 in 0..c2.width() {
                    for map in &cache[ci][cj] {
                        family.push(IsoMap {
                            from: (ci, e1),
                            to: (cj, e2),
                            map: map.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(family)
}

/// Whether a wide subgroupoid is invariant under every member of A(G):
/// `f(H n dom f) = H n im f` for each isomorphism `f` between isotropy
/// groups.
pub fn is_characteristic(
    g: &Groupoid,
    h: &Subgroupoid,
    caps: &Caps,
) -> Result<bool, SylowError> {
    if !h.is_wide() {
        return Err(SylowError::NotWide);
    }
    for f in iso_family(g, caps)? {
        let dom = h.isotropy_at(f.from.0, f.from.1);
        let im = h.isotropy_at(f.to.0, f.to.1);
        let mut image: Vec<usize> = dom.iter().map(|&x| f.map[x]).collect();
        image.sort_unstable();
        if image != im {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The center Z(G): the isotropy elements commuting with their whole
/// isotropy group, as a wide subgroupoid. Always characteristic.
pub fn groupoid_center(g: &Groupoid) -> Subgroupoid {
    let mut parts = Vec::new();
    for (pci, pc) in g.components().iter().enumerate() {
        let z = crate::group::center(pc.base());
        for e in 0..pc.width() {
            parts.push(SubComponent {
                parent_component: pci,
                identities: vec![e],
                isotropy: z.elements().to_vec(),
                transitions: vec![0],
            });
        }
    }
    Subgroupoid::from_parts(g, &parts)
}

/// Checks the transitivity repair: if `kk` is characteristic in `h` and `h`
/// is normal in `g`, then `kk` is normal in `g`. The hypotheses are
/// verified (errors when they fail), and the conclusion is evaluated and
/// returned; it is a theorem that the result is always `true`.
pub fn transitivity_check(
    g: &Groupoid,
    h: &Subgroupoid,
    kk: &Subgroupoid,
    caps: &Caps,
) -> Result<bool, SylowError> {
    if !kk.elements().is_subset(h.elements()) {
        return Err(SylowError::HypothesisNotMet("kk is not contained in h".into()));
    }
    if !h.is_wide() {
        return Err(SylowError::HypothesisNotMet("h is not wide in g".into()));
    }
    if kk.identity_count() != h.identity_count() {
        return Err(SylowError::HypothesisNotMet("kk is not wide in h".into()));
    }
    if !is_normal(g, h)? {
        return Err(SylowError::HypothesisNotMet("h is not normal in g".into()));
    }
    // view h as a groupoid in its own right and test kk there
    let (h_groupoid, map) = h.to_groupoid(g);
    let kk_in_h: Vec<Element> = kk
        .elements()
        .iter()
        .map(|x| map[x])
        .collect();
    let kk_sub = Subgroupoid::from_elements(&h_groupoid, kk_in_h)?;
    if !is_characteristic(&h_groupoid, &kk_sub, caps)? {
        return Err(SylowError::HypothesisNotMet(
            "kk is not characteristic in h".into(),
        ));
    }
    is_normal(g, kk)
}

/// The isotropic conjugate of a wide connected subgroupoid by the element
/// `x`: the product block on all identities whose isotropy subgroup is
/// `t H_d(x) t^-1`, `t` the group part of `x`.
pub fn isotropic_conjugate(
    g: &Groupoid,
    h: &Subgroupoid,
    x: Element,
) -> Result<Subgroupoid, SylowError> {
    if !g.is_connected() {
        return Err(SylowError::NotConnected);
    }
    if !h.is_wide() || !h.is_connected() {
        return Err(SylowError::NotWideConnected);
    }
    let base = g.components()[0].base();
    let source = h.isotropy_at(0, x.src);
    let mut conj: Vec<usize> = source
        .iter()
        .map(|&s| base.mul(base.mul(x.g, s), base.inverse(x.g)))
        .collect();
    conj.sort_unstable();
    let k = g.identity_count();
    Ok(Subgroupoid::from_parts(
        g,
        &[SubComponent {
            parent_component: 0,
            identities: (0..k).collect(),
            isotropy: conj,
            transitions: vec![0; k],
        }],
    ))
}

/// Builds the canonical connected (d,p)-subgroupoid of exponent `n`: the
/// product block of the first `d` identities with the least subgroup of
/// order `p^n`. When `d = k` the result is wide and its order divides the
/// order of `g`.
pub fn construct_dp_subgroupoid(
    g: &Groupoid,
    d: usize,
    p: u64,
    n: u32,
    caps: &Caps,
) -> Result<Subgroupoid, SylowError> {
    if !g.is_connected() {
        return Err(SylowError::NotConnected);
    }
    if !is_prime(p) {
        return Err(SylowError::Group(GroupError::NotPrime(p)));
    }
    let k = g.identity_count();
    if d < 1 || d > k {
        return Err(SylowError::ProfileInfeasible(format!(
            "identity count {d} outside 1..={k}"
        )));
    }
    let base = g.components()[0].base();
    let target = (p as usize).pow(n);
    if base.order() % target != 0 {
        return Err(SylowError::NoSuchGroupOrder {
            p,
            n,
            base_order: base.order(),
        });
    }
    let subgroup = subgroups(base, caps.max_group)?
        .into_iter()
        .find(|s| s.order() == target)
        .expect("a p-group of each dividing order exists");
    let result = Subgroupoid::from_parts(
        g,
        &[SubComponent {
            parent_component: 0,
            identities: (0..d).collect(),
            isotropy: subgroup.elements().to_vec(),
            transitions: vec![0; d],
        }],
    );
    assert_eq!(result.order(), d * d * target);
    if d == k {
        assert!(result.is_wide());
        assert_eq!(g.order() % result.order(), 0);
    }
    Ok(result)
}

/// A (D,P) profile: per class an identity count, a prime, and an exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowProfile {
    pub widths: Vec<usize>,
    pub primes: Vec<u64>,
    pub exponents: Vec<u32>,
}

impl SylowProfile {
    /// A Sylow profile: every exponent maximal for its prime in the order
    /// of the base group.
    pub fn sylow(g: &Groupoid, widths: Vec<usize>, primes: Vec<u64>) -> Result<Self, SylowError> {
        if !g.is_connected() {
            return Err(SylowError::NotConnected);
        }
        let m = g.components()[0].base().order() as u64;
        let exponents = primes.iter().map(|&p| p_adic_split(m, p).0).collect();
        Ok(SylowProfile {
            widths,
            primes,
            exponents,
        })
    }

    fn validate(&self, g: &Groupoid) -> Result<(), SylowError> {
        if !g.is_connected() {
            return Err(SylowError::NotConnected);
        }
        if self.widths.len() != self.primes.len() || self.widths.len() != self.exponents.len() {
            return Err(SylowError::ProfileInfeasible(
                "widths, primes, and exponents must have equal length".into(),
            ));
        }
        if self.widths.is_empty() || self.widths.iter().any(|&d| d == 0) {
            return Err(SylowError::ProfileInfeasible("empty or zero-width class".into()));
        }
        let k = g.identity_count();
        if self.widths.iter().sum::<usize>() > k {
            return Err(SylowError::ProfileInfeasible(format!(
                "identity counts sum past k = {k}"
            )));
        }
        let m = g.components()[0].base().order();
        for (&p, &n) in self.primes.iter().zip(&self.exponents) {
            if !is_prime(p) {
                return Err(SylowError::Group(GroupError::NotPrime(p)));
            }
            if m % (p as usize).pow(n) != 0 {
                return Err(SylowError::NoSuchGroupOrder { p, n, base_order: m });
            }
        }
        Ok(())
    }
}

/// Builds a (D,P)-subgroupoid realizing the profile: disjoint product
/// blocks on consecutive identity ranges, class `i` carrying a subgroup of
/// order `p_i^(n_i)`. Its order is `sum d_i^2 p_i^(n_i)`.
pub fn first_sylow_construct(
    g: &Groupoid,
    profile: &SylowProfile,
    caps: &Caps,
) -> Result<Subgroupoid, SylowError> {
    profile.validate(g)?;
    let base = g.components()[0].base();
    let subs = subgroups(base, caps.max_group)?;
    let mut parts = Vec::new();
    let mut offset = 0;
    for ((&d, &p), &n) in profile.widths.iter().zip(&profile.primes).zip(&profile.exponents) {
        let target = (p as usize).pow(n);
        let subgroup = subs
            .iter()
            .find(|s| s.order() == target)
            .expect("validated profile orders exist");
        parts.push(SubComponent {
            parent_component: 0,
            identities: (offset..offset + d).collect(),
            isotropy: subgroup.elements().to_vec(),
            transitions: vec![0; d],
        });
        offset += d;
    }
    let result = Subgroupoid::from_parts(g, &parts);
    let expected: usize = profile
        .widths
        .iter()
        .zip(&profile.primes)
        .zip(&profile.exponents)
        .map(|((&d, &p), &n)| d * d * (p as usize).pow(n))
        .sum();
    assert_eq!(result.order(), expected);
    Ok(result)
}

/// The family of all (d,p)-Sylow subgroupoids of a connected groupoid:
/// product blocks of a d-subset of identities with a Sylow p-subgroup of
/// the base group.
#[derive(Clone, Debug)]
pub struct DpFamily {
    pub members: Vec<Subgroupoid>,
    /// N: the number of Sylow p-subgroups of the base group.
    pub group_sylow_count: usize,
    /// C(k, d): the number of identity subsets.
    pub identity_choices: u64,
}

impl DpFamily {
    /// The closed-form count `N * C(k, d)`.
    pub fn formula_count(&self) -> u64 {
        self.group_sylow_count as u64 * self.identity_choices
    }
}

pub fn enumerate_dp_sylow(
    g: &Groupoid,
    d: usize,
    p: u64,
    caps: &Caps,
) -> Result<DpFamily, SylowError> {
    if !g.is_connected() {
        return Err(SylowError::NotConnected);
    }
    if !is_prime(p) {
        return Err(SylowError::Group(GroupError::NotPrime(p)));
    }
    let k = g.identity_count();
    if d < 1 || d > k {
        return Err(SylowError::ProfileInfeasible(format!(
            "identity count {d} outside 1..={k}"
        )));
    }
    let base = g.components()[0].base();
    let sylows = sylow_subgroups(base, p, caps.max_group)?;
    let ids: Vec<usize> = (0..k).collect();
    let subsets = subsets_of_size(&ids, d);
    let expected = sylows.len() * subsets.len();
    if expected > caps.max_family {
        return Err(SylowError::CapExceeded {
            count: expected,
            cap: caps.max_family,
        });
    }
    let descriptors: Vec<SubComponent> = subsets
        .iter()
        .flat_map(|subset| {
            sylows.iter().map(|s| SubComponent {
                parent_component: 0,
                identities: subset.clone(),
                isotropy: s.elements().to_vec(),
                transitions: vec![0; subset.len()],
            })
        })
        .collect();
    let mut members = exec::map_vec(descriptors, |part| Subgroupoid::from_parts(g, &[part]));
    members.sort();
    debug_assert_eq!(members.len(), expected);
    Ok(DpFamily {
        members,
        group_sylow_count: sylows.len(),
        identity_choices: crate::combin::binomial(k as u64, d as u64),
    })
}

/// Whether two connected (d,p)-Sylow subgroupoids are linked by isotropic
/// conjugation after matching identity sets: some base-group element
/// conjugates one isotropy subgroup onto the other.
pub fn dp_conjugacy_linked(g: &Groupoid, h1: &Subgroupoid, h2: &Subgroupoid) -> bool {
    if !h1.is_connected() || !h2.is_connected() {
        return false;
    }
    let base = g.components()[0].base();
    let k1 = &h1.components()[0].isotropy;
    let k2 = &h2.components()[0].isotropy;
    if k1.len() != k2.len() {
        return false;
    }
    (0..base.order()).any(|a| {
        let mut image: Vec<usize> = k1.iter().map(|&s| base.conjugate(a, s)).collect();
        image.sort_unstable();
        image == *k2
    })
}

/// Finds a (d,p)-Sylow subgroupoid containing the given connected
/// (d,p)-subgroupoid (same identity set, isotropy contained in a Sylow
/// p-subgroup).
pub fn containing_dp_sylow(
    g: &Groupoid,
    sub: &Subgroupoid,
    p: u64,
    caps: &Caps,
) -> Result<Option<Subgroupoid>, SylowError> {
    let d = sub.identity_count();
    let family = enumerate_dp_sylow(g, d, p, caps)?;
    Ok(family
        .members
        .into_iter()
        .find(|s| sub.elements().is_subset(s.elements())))
}

/// The normalizer-index form of the Sylow count: `(G_e : N_G_e(S_e))` for
/// any Sylow p-subgroup `S_e` of the base group.
pub fn sylow_normalizer_index(g: &Groupoid, p: u64, caps: &Caps) -> Result<u64, SylowError> {
    if !g.is_connected() {
        return Err(SylowError::NotConnected);
    }
    let base = g.components()[0].base();
    let sylows = sylow_subgroups(base, p, caps.max_group)?;
    let s = sylows.first().expect("at least the trivial Sylow subgroup exists");
    let n = normalizer(base, s)?;
    Ok((base.order() / n.order()) as u64)
}

/// The connected-components permutations of a wide union of product
/// blocks: every subgroupoid carrying the same isotropy subgroup per class
/// on a permuted assignment of identity blocks (the original included).
#[derive(Clone, Debug)]
pub struct CcFamily {
    pub members: Vec<Subgroupoid>,
    /// The multinomial `k! / (d_1! ... d_l!)`.
    pub multinomial: u64,
    /// The multinomial divided by the repetition factorials of identical
    /// (width, isotropy) classes; this always equals `members.len()`.
    pub distinct: u64,
}

pub fn cc_permutations(g: &Groupoid, h: &Subgroupoid) -> Result<CcFamily, SylowError> {
    if !g.is_connected() {
        return Err(SylowError::NotConnected);
    }
    if !h.is_wide() {
        return Err(SylowError::NotWide);
    }
    if !h.is_block_product() {
        return Err(SylowError::NotBlockForm);
    }
    let k = g.identity_count();
    let classes: Vec<(usize, Vec<usize>)> = h
        .components()
        .iter()
        .map(|c| (c.width(), c.isotropy.clone()))
        .collect();
    let sizes: Vec<usize> = classes.iter().map(|(d, _)| *d).collect();
    let ids: Vec<usize> = (0..k).collect();
    let mut set: BTreeSet<Subgroupoid> = BTreeSet::new();
    for assignment in ordered_block_assignments(&ids, &sizes) {
        let parts: Vec<SubComponent> = assignment
            .into_iter()
            .zip(&classes)
            .map(|(block, (_, isotropy))| SubComponent {
                parent_component: 0,
                identities: block.clone(),
                isotropy: isotropy.clone(),
                transitions: vec![0; block.len()],
            })
            .collect();
        set.insert(Subgroupoid::from_parts(g, &parts));
    }
    assert!(set.contains(h), "the family always contains the original");

    let widths: Vec<u64> = sizes.iter().map(|&d| d as u64).collect();
    let multi = multinomial(k as u64, &widths);
    // identical (width, isotropy) classes are interchangeable; divide out
    // their permutations
    let mut sorted_classes = classes.clone();
    sorted_classes.sort();
    let mut correction = 1u64;
    let mut run = 1u64;
    for w in sorted_classes.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            correction *= factorial(run);
            run = 1;
        }
    }
    correction *= factorial(run);
    let distinct = multi / correction;
    let members: Vec<Subgroupoid> = set.into_iter().collect();
    debug_assert_eq!(members.len() as u64, distinct);
    Ok(CcFamily {
        members,
        multinomial: multi,
        distinct,
    })
}

/// Counting report for the wide (D,P)-Sylow subgroupoids of a connected
/// groupoid.
#[derive(Clone, Debug)]
pub struct DpSylowCensus {
    /// `C(k; D) * prod N_i`.
    pub formula: u64,
    /// The multinomial `C(k; D)` alone.
    pub multinomial: u64,
    /// The group-level Sylow counts `N_i`, one per class.
    pub factors: Vec<u64>,
    /// The formula with interchangeable identical (d_i, p_i) classes
    /// divided out; equals the number of distinct subgroupoids.
    pub formula_distinct: u64,
    /// Explicit members, when requested and under the cap.
    pub members: Option<Vec<Subgroupoid>>,
}

impl DpSylowCensus {
    pub fn enumerated_count(&self) -> Option<usize> {
        self.members.as_ref().map(|m| m.len())
    }
}

/// Counts (and optionally enumerates) the wide (D,P)-Sylow subgroupoids:
/// the profile must cover every identity (`sum d_i = k`).
pub fn dp_sylow_census(
    g: &Groupoid,
    widths: &[usize],
    primes: &[u64],
    explicit: bool,
    caps: &Caps,
) -> Result<DpSylowCensus, SylowError> {
    if !g.is_connected() {
        return Err(SylowError::NotConnected);
    }
    let k = g.identity_count();
    if widths.len() != primes.len() || widths.is_empty() {
        return Err(SylowError::ProfileInfeasible(
            "widths and primes must be nonempty and of equal length".into(),
        ));
    }
    if widths.iter().sum::<usize>() != k {
        return Err(SylowError::ProfileInfeasible(format!(
            "a wide profile must have identity counts summing to k = {k}"
        )));
    }
    for &p in primes {
        if !is_prime(p) {
            return Err(SylowError::Group(GroupError::NotPrime(p)));
        }
    }
    let base = g.components()[0].base();
    let sylows_per_class: Vec<Vec<crate::group::Subgroup>> = primes
        .iter()
        .map(|&p| sylow_subgroups(base, p, caps.max_group))
        .collect::<Result<_, _>>()?;
    let factors: Vec<u64> = sylows_per_class.iter().map(|s| s.len() as u64).collect();
    let widths_u64: Vec<u64> = widths.iter().map(|&d| d as u64).collect();
    let multi = multinomial(k as u64, &widths_u64);
    let formula: u64 = multi * factors.iter().product::<u64>();

    // identical (d, p) classes draw from the same Sylow list, so swapping
    // them reproduces the same subgroupoid
    let mut keyed: Vec<(usize, u64)> = widths.iter().copied().zip(primes.iter().copied()).collect();
    keyed.sort();
    let mut correction = 1u64;
    let mut run = 1u64;
    for w in keyed.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            correction *= factorial(run);
            run = 1;
        }
    }
    correction *= factorial(run);
    let formula_distinct = formula / correction;

    let members = if explicit {
        if formula as usize > caps.max_family {
            return Err(SylowError::CapExceeded {
                count: formula as usize,
                cap: caps.max_family,
            });
        }
        let ids: Vec<usize> = (0..k).collect();
        let assignments = ordered_block_assignments(&ids, widths);
        let descriptors: Vec<Vec<SubComponent>> = assignments
            .iter()
            .flat_map(|assignment| {
                // cartesian product over per-class Sylow choices
                let mut combos: Vec<Vec<SubComponent>> = vec![Vec::new()];
                for (ci, block) in assignment.iter().enumerate() {
                    let mut next = Vec::new();
                    for combo in &combos {
                        for s in &sylows_per_class[ci] {
                            let mut c = combo.clone();
                            c.push(SubComponent {
                                parent_component: 0,
                                identities: block.clone(),
                                isotropy: s.elements().to_vec(),
                                transitions: vec![0; block.len()],
                            });
                            next.push(c);
                        }
                    }
                    combos = next;
                }
                combos
            })
            .collect();
        let materialized = exec::map_vec(descriptors, |parts| Subgroupoid::from_parts(g, &parts));
        let set: BTreeSet<Subgroupoid> = materialized.into_iter().collect();
        Some(set.into_iter().collect::<Vec<_>>())
    } else {
        None
    };

    Ok(DpSylowCensus {
        formula,
        multinomial: multi,
        factors,
        formula_distinct,
        members,
    })
}
