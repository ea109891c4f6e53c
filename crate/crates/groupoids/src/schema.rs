//! JSON forms for groups, groupoids, subgroupoids, profiles, and reports.
//!
//! Input specs are serde-deserializable and validate on `build`; output
//! forms serialize with fixed field order and sorted collections, so equal
//! values always produce identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classify::{
    builtin_connected_classes, groupoid_count, groupoids_from_classes, ClassifyError,
    GroupCountTable,
};
use crate::group::{
    cyclic, dihedral, direct_product, klein, semidirect_product, symmetric, trivial,
};
use crate::groupoid::{structure, GroupoidError, RawGroupoid, Structured};
use crate::subgroupoid::{
    coset_cardinality, index_bruteforce, index_formula, lagrange_identity_check,
    lagrange_order_report, Coset, Side, SubgroupoidError,
};
use crate::{Caps, Element, FiniteGroup, Groupoid, Subgroupoid};

use crate::group::GroupError;

/// A finite group, as a catalog reference, an explicit table, or a
/// semidirect product.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Catalog {
        name: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        params: Vec<usize>,
    },
    Table {
        cayley: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Semidirect {
        h: Box<GroupSpec>,
        k: Box<GroupSpec>,
        /// One automorphism of `h` per element of `k`, as full image lists.
        action: Vec<Vec<usize>>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSpec::Catalog { name, params } => catalog_group(name, params),
            GroupSpec::Table { cayley, name } => {
                let g = FiniteGroup::from_table(cayley)?;
                Ok(match name {
                    Some(n) => g.with_name(n.clone()),
                    None => g,
                })
            }
            GroupSpec::Semidirect { h, k, action } => {
                let h = h.build()?;
                let k = k.build()?;
                semidirect_product(&h, &k, action)
            }
        }
    }

    /// Canonical table form of a group.
    pub fn from_group(g: &FiniteGroup) -> GroupSpec {
        GroupSpec::Table {
            cayley: g.table_rows(),
            name: g.name().map(|s| s.to_string()),
        }
    }
}

/// Builds a catalog group by name. `direct_product` takes a list of cyclic
/// orders; arbitrary products are expressed with nested `semidirect` specs
/// and a trivial action.
pub fn catalog_group(name: &str, params: &[usize]) -> Result<FiniteGroup, GroupError> {
    let one_param = || {
        params
            .first()
            .copied()
            .filter(|_| params.len() == 1)
            .ok_or_else(|| GroupError::BadParams(format!("{name} takes exactly one parameter")))
    };
    match name {
        "trivial" => Ok(trivial()),
        "cyclic" => {
            let n = one_param()?;
            if n == 0 {
                return Err(GroupError::BadParams("cyclic order must be positive".into()));
            }
            Ok(cyclic(n))
        }
        "klein" => Ok(klein()),
        "dihedral" => {
            let n = one_param()?;
            if n == 0 {
                return Err(GroupError::BadParams("dihedral degree must be positive".into()));
            }
            Ok(dihedral(n))
        }
        "symmetric" => symmetric(one_param()?),
        "direct_product" => {
            if params.is_empty() || params.iter().any(|&n| n == 0) {
                return Err(GroupError::BadParams(
                    "direct_product takes positive cyclic orders".into(),
                ));
            }
            let mut g = cyclic(params[0]);
            for &n in &params[1..] {
                g = direct_product(&g, &cyclic(n));
            }
            Ok(g)
        }
        "from_table" => Err(GroupError::BadParams(
            "use the `table` kind to supply an explicit table".into(),
        )),
        other => Err(GroupError::UnknownName(other.to_string())),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub identities: Vec<String>,
    pub group: GroupSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RawSpec {
    pub elements: Vec<String>,
    /// Keys are `"a,b"` label pairs, values the product label; absent pairs
    /// are undefined.
    pub product: BTreeMap<String, String>,
}

/// A groupoid, either already structured into components or as a raw
/// partial table to be validated and decomposed.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged, deny_unknown_fields)]
pub enum GroupoidSpec {
    Structured { components: Vec<ComponentSpec> },
    Raw { raw: RawSpec },
}

impl RawSpec {
    pub fn to_raw(&self) -> Result<RawGroupoid, GroupoidError> {
        let index: BTreeMap<&str, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut product = BTreeMap::new();
        for (key, value) in &self.product {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| GroupoidError::BadElementId(key.clone()))?;
            let ai = *index
                .get(a)
                .ok_or_else(|| GroupoidError::BadElementId(a.to_string()))?;
            let bi = *index
                .get(b)
                .ok_or_else(|| GroupoidError::BadElementId(b.to_string()))?;
            let ci = *index
                .get(value.as_str())
                .ok_or_else(|| GroupoidError::BadElementId(value.clone()))?;
            product.insert((ai, bi), ci);
        }
        RawGroupoid::new(self.elements.clone(), product)
    }
}

impl GroupoidSpec {
    /// Validates and structures the spec into a groupoid. Raw specs go
    /// through the full axiom scan and the structure decomposition.
    pub fn build(&self) -> Result<Groupoid, GroupoidError> {
        match self {
            GroupoidSpec::Structured { components } => {
                let parts = components
                    .iter()
                    .map(|c| Ok((c.identities.clone(), c.group.build()?)))
                    .collect::<Result<Vec<_>, GroupError>>()?;
                Groupoid::from_components(parts)
            }
            GroupoidSpec::Raw { raw } => Ok(self::structure(&raw.to_raw()?.validate()?)?.groupoid),
        }
    }

    /// Like `build`, but returns the structure witness for raw input.
    pub fn build_structured(&self) -> Result<(Groupoid, Option<Structured>), GroupoidError> {
        match self {
            GroupoidSpec::Structured { .. } => Ok((self.build()?, None)),
            GroupoidSpec::Raw { raw } => {
                let s = self::structure(&raw.to_raw()?.validate()?)?;
                Ok((s.groupoid.clone(), Some(s)))
            }
        }
    }

    /// Canonical structured form.
    pub fn from_groupoid(g: &Groupoid) -> GroupoidSpec {
        GroupoidSpec::Structured {
            components: g
                .components()
                .iter()
                .map(|c| ComponentSpec {
                    identities: c.labels().to_vec(),
                    group: GroupSpec::from_group(c.base()),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SubBlockSpec {
    pub identities: Vec<String>,
    /// Base-group element indices of the isotropy subgroup.
    pub subgroup: Vec<usize>,
}

/// A subgroupoid, as explicit element ids or as a union of product blocks.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged, deny_unknown_fields)]
pub enum SubgroupoidSpec {
    Elements { elements: Vec<String> },
    Components { components: Vec<SubBlockSpec> },
}

impl SubgroupoidSpec {
    pub fn build(&self, g: &Groupoid) -> Result<Subgroupoid, SubgroupoidError> {
        let elements: Vec<Element> = match self {
            SubgroupoidSpec::Elements { elements } => elements
                .iter()
                .map(|id| g.parse_element_id(id))
                .collect::<Result<_, _>>()
                .map_err(SubgroupoidError::Groupoid)?,
            SubgroupoidSpec::Components { components } => {
                let mut out = Vec::new();
                for block in components {
                    let mut ids = Vec::new();
                    for label in &block.identities {
                        ids.push(g.identity_by_label(label).map_err(SubgroupoidError::Groupoid)?);
                    }
                    for &(ca, a) in &ids {
                        for &(cb, b) in &ids {
                            if ca != cb {
                                return Err(SubgroupoidError::Groupoid(
                                    GroupoidError::NotConnected,
                                ));
                            }
                            for &s in &block.subgroup {
                                out.push(Element { component: ca, src: a, dst: b, g: s });
                            }
                        }
                    }
                }
                out
            }
        };
        Subgroupoid::from_elements(g, elements)
    }

    /// Canonical element-list form.
    pub fn from_subgroupoid(g: &Groupoid, h: &Subgroupoid) -> SubgroupoidSpec {
        SubgroupoidSpec::Elements {
            elements: h.elements().iter().map(|&x| g.element_id(x)).collect(),
        }
    }
}

/// A named equality with both sides evaluated.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckDto {
    pub name: String,
    pub lhs: u64,
    pub rhs: u64,
    pub pass: bool,
}

impl CheckDto {
    pub fn new(name: &str, lhs: u64, rhs: u64) -> CheckDto {
        CheckDto {
            name: name.to_string(),
            lhs,
            rhs,
            pass: lhs == rhs,
        }
    }
}

/// Structure summary for the `info` verb.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InfoDto {
    pub order: usize,
    pub identities: Vec<String>,
    pub connected: bool,
    pub isotropy_order: usize,
    pub components: Vec<ComponentInfoDto>,
    pub structured: GroupoidSpec,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ComponentInfoDto {
    pub identities: Vec<String>,
    pub d: usize,
    pub m: usize,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
}

pub fn info_dto(g: &Groupoid) -> InfoDto {
    InfoDto {
        order: g.order(),
        identities: g.identity_labels().iter().map(|s| s.to_string()).collect(),
        connected: g.is_connected(),
        isotropy_order: g.isotropy_order(),
        components: g
            .components()
            .iter()
            .map(|c| ComponentInfoDto {
                identities: c.labels().to_vec(),
                d: c.width(),
                m: c.base().order(),
                order: c.order(),
                group: c.base().name().map(|s| s.to_string()),
            })
            .collect(),
        structured: GroupoidSpec::from_groupoid(g),
    }
}

/// Coset output: members plus the cardinality identity.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CosetDto {
    pub side: String,
    pub of: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representative: Option<String>,
    pub members: Vec<String>,
    pub cardinality: CardinalityDto,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CardinalityDto {
    pub delta: usize,
    pub isotropy_order: usize,
    pub formula: usize,
    pub actual: usize,
    pub pass: bool,
}

pub fn coset_dto(g: &Groupoid, h: &Subgroupoid, c: &Coset) -> CosetDto {
    let card = coset_cardinality(g, h, c.of);
    CosetDto {
        side: match c.side {
            Side::Left => "left".to_string(),
            Side::Right => "right".to_string(),
        },
        of: g.element_id(c.of),
        representative: c.representative().map(|x| g.element_id(x)),
        members: c.members.iter().map(|&x| g.element_id(x)).collect(),
        cardinality: CardinalityDto {
            delta: card.delta,
            isotropy_order: card.isotropy_order,
            formula: card.formula,
            actual: if c.side == Side::Right {
                card.actual
            } else {
                c.members.len()
            },
            pass: card.holds(),
        },
    }
}

/// Index output: the closed form, the brute-force count, and agreement.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IndexDto {
    pub formula: u64,
    pub bruteforce: u64,
    pub agree: bool,
}

pub fn index_dto(g: &Groupoid, h: &Subgroupoid, caps: &Caps) -> Result<IndexDto, SubgroupoidError> {
    let formula = index_formula(g, h);
    let counts = index_bruteforce(g, h, caps)?;
    Ok(IndexDto {
        formula,
        bruteforce: counts.right as u64,
        agree: formula == counts.right as u64 && counts.right == counts.left,
    })
}

/// Lagrange output: the order decomposition and the wide-subgroupoid
/// identity, every equality listed with both sides.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LagrangeDto {
    pub parts: Vec<PartDto>,
    pub checks: Vec<CheckDto>,
    pub wide: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PartDto {
    pub d: usize,
    pub m: usize,
    pub parent_m: usize,
}

pub fn lagrange_dto(g: &Groupoid, h: &Subgroupoid, caps: &Caps) -> LagrangeDto {
    let order = lagrange_order_report(g, h);
    let identity = lagrange_identity_check(g, h, caps);
    let mut checks = vec![
        CheckDto::new(
            "order_decomposition",
            order.order as u64,
            order.order_formula as u64,
        ),
        CheckDto {
            name: "identity_bound".to_string(),
            lhs: order.identity_sum as u64,
            rhs: order.parent_identity_count as u64,
            pass: order.identity_bound_holds(),
        },
        CheckDto {
            name: "isotropy_divides".to_string(),
            lhs: order.isotropy_divides() as u64,
            rhs: 1,
            pass: order.isotropy_divides(),
        },
    ];
    if let Some(holds) = order.connected_divisibility {
        checks.push(CheckDto {
            name: "connected_order_divides".to_string(),
            lhs: holds as u64,
            rhs: 1,
            pass: holds,
        });
    }
    if let Some(rhs) = identity.rhs {
        checks.push(CheckDto::new("wide_order_identity", identity.order as u64, rhs));
    }
    if let Some(c) = identity.corollary {
        checks.push(CheckDto::new(
            "uniform_corollary",
            identity.order as u64,
            c.product,
        ));
        checks.push(CheckDto::new("corollary_index", c.index, index_formula(g, h)));
    }
    LagrangeDto {
        parts: order
            .parts
            .iter()
            .map(|p| PartDto {
                d: p.d,
                m: p.m,
                parent_m: p.parent_m,
            })
            .collect(),
        checks,
        wide: h.is_wide(),
    }
}

/// A (D,P) profile in wire form.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProfileSpec {
    #[serde(rename = "D")]
    pub d: Vec<usize>,
    #[serde(rename = "P")]
    pub p: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exps: Option<Vec<u32>>,
}

/// Sylow counting output for one connected component.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SylowDto {
    pub component: usize,
    pub count: u64,
    pub formula: SylowFormulaDto,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<SubgroupoidSpec>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SylowFormulaDto {
    pub multinomial: u64,
    #[serde(rename = "N")]
    pub n: Vec<u64>,
}

/// Classification output.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassifyDto {
    pub order: usize,
    pub count: u64,
}

/// Atlas output: one entry per isomorphism class, as (d, m, group) parts.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AtlasDto {
    pub order: usize,
    pub count: u64,
    pub classes: Vec<AtlasClassDto>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AtlasClassDto {
    pub parts: Vec<AtlasPartDto>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AtlasPartDto {
    pub d: usize,
    pub m: usize,
    pub group: String,
}

pub fn atlas_dto(n: usize, caps: &Caps) -> Result<AtlasDto, ClassifyError> {
    if n == 0 || n > caps.max_atlas {
        return Err(ClassifyError::CapExceeded {
            order: n,
            cap: caps.max_atlas,
        });
    }
    let count = groupoid_count(n, &GroupCountTable::builtin())?;
    let classes = builtin_connected_classes(n);
    let reps = groupoids_from_classes(n, &classes);
    Ok(AtlasDto {
        order: n,
        count,
        classes: reps
            .iter()
            .map(|g| AtlasClassDto {
                parts: g
                    .components()
                    .iter()
                    .map(|c| AtlasPartDto {
                        d: c.width(),
                        m: c.base().order(),
                        group: c.base().name().unwrap_or("?").to_string(),
                    })
                    .collect(),
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_specs_round_trip_through_json() {
        let spec: GroupSpec =
            serde_json::from_str(r#"{"kind":"catalog","name":"dihedral","params":[3]}"#).unwrap();
        let g = spec.build().unwrap();
        assert_eq!(g.order(), 6);
        let table_spec = GroupSpec::from_group(&g);
        let g2 = table_spec.build().unwrap();
        assert_eq!(g2.order(), 6);
        assert!(crate::group::are_isomorphic(&g, &g2, 512).unwrap().is_some());
    }

    #[test]
    fn catalog_names_and_params_are_checked() {
        assert!(matches!(
            catalog_group("frobnicate", &[]),
            Err(GroupError::UnknownName(_))
        ));
        assert!(matches!(
            catalog_group("cyclic", &[]),
            Err(GroupError::BadParams(_))
        ));
        assert!(matches!(
            catalog_group("from_table", &[]),
            Err(GroupError::BadParams(_))
        ));
        let p = catalog_group("direct_product", &[2, 3]).unwrap();
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn structured_groupoid_specs_build() {
        let json = r#"{"components":[{"identities":["e1","e2"],"group":{"kind":"catalog","name":"cyclic","params":[3]}}]}"#;
        let spec: GroupoidSpec = serde_json::from_str(json).unwrap();
        let g = spec.build().unwrap();
        assert_eq!(g.order(), 12);
        // canonical export is structured and reparses to the same groupoid
        let out = GroupoidSpec::from_groupoid(&g);
        let text = serde_json::to_string(&out).unwrap();
        let again: GroupoidSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(again.build().unwrap().order(), 12);
    }

    #[test]
    fn raw_groupoid_specs_validate_and_structure() {
        // Z2 as a raw table
        let json = r#"{"raw":{"elements":["e","a"],"product":{"e,e":"e","e,a":"a","a,e":"a","a,a":"e"}}}"#;
        let spec: GroupoidSpec = serde_json::from_str(json).unwrap();
        let (g, structured) = spec.build_structured().unwrap();
        assert_eq!(g.order(), 2);
        assert!(structured.is_some());
        // a broken table is rejected
        let bad = r#"{"raw":{"elements":["e","a"],"product":{"e,e":"e"}}}"#;
        let spec: GroupoidSpec = serde_json::from_str(bad).unwrap();
        assert!(spec.build().is_err());
    }

    #[test]
    fn subgroupoid_specs_build_both_forms() {
        let g = Groupoid::connected(
            vec!["e1".into(), "e2".into(), "e3".into()],
            symmetric(2).unwrap(),
        )
        .unwrap();
        let by_blocks: SubgroupoidSpec = serde_json::from_str(
            r#"{"components":[{"identities":["e1","e2"],"subgroup":[0,1]},{"identities":["e3"],"subgroup":[0]}]}"#,
        )
        .unwrap();
        let h = by_blocks.build(&g).unwrap();
        assert_eq!(h.order(), 9);
        let exported = SubgroupoidSpec::from_subgroupoid(&g, &h);
        let h2 = exported.build(&g).unwrap();
        assert_eq!(h, h2);
    }

    #[test]
    fn index_dto_reports_agreement() {
        let g = Groupoid::connected(
            vec!["e1".into(), "e2".into(), "e3".into()],
            symmetric(2).unwrap(),
        )
        .unwrap();
        let spec: SubgroupoidSpec = serde_json::from_str(
            r#"{"components":[{"identities":["e1","e2"],"subgroup":[0,1]},{"identities":["e3"],"subgroup":[0]}]}"#,
        )
        .unwrap();
        let h = spec.build(&g).unwrap();
        let dto = index_dto(&g, &h, &Caps::default()).unwrap();
        assert_eq!(dto.formula, 9);
        assert_eq!(dto.bruteforce, 9);
        assert!(dto.agree);
    }

    #[test]
    fn atlas_dto_counts_match() {
        let atlas = atlas_dto(6, &Caps::default()).unwrap();
        assert_eq!(atlas.count, 16);
        assert_eq!(atlas.classes.len(), 16);
        let json = serde_json::to_string(&atlas).unwrap();
        assert!(json.starts_with(r#"{"order":6,"count":16,"#));
    }
}
