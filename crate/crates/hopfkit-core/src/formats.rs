//! Canonical JSON interchange formats. Emission is deterministic: entries
//! are sorted, scalars use the canonical string forms, and parsing an
//! emitted file and re-emitting it reproduces the bytes.

use serde::{Deserialize, Serialize};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::hopf::{FactorTag, Hopf, HopfAlgebra};
use crate::matched_pair::MatchedPairData;
use crate::scalar::{Field, Scalar};
use crate::subspace::Subspace;

// -- .hopf.json ---------------------------------------------------------------

#[derive(Serialize, Deserialize, Debug)]
pub struct HopfFile {
    pub field: Field,
    pub dim: usize,
    pub basis: Vec<String>,
    pub mult: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<(usize, String)>,
    pub comult: Vec<(usize, usize, usize, String)>,
    pub counit: Vec<(usize, String)>,
    pub antipode: Vec<(usize, usize, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<ProvenanceFile>,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProvenanceFile {
    GroupAlgebra { group: GroupFile },
    DualGroupAlgebra { group: GroupFile },
    AbelianExtension { matched_pair: MatchedPairFile },
    Generic,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct GroupFile {
    pub order: usize,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MatchedPairFile {
    #[serde(rename = "F")]
    pub f: GroupFile,
    #[serde(rename = "Gamma")]
    pub gamma: GroupFile,
    pub lact: Vec<Vec<usize>>,
    pub ract: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<Vec<Vec<String>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<Vec<Vec<String>>>>,
}

pub fn group_to_file(g: &FiniteGroup) -> GroupFile {
    GroupFile {
        order: g.order(),
        labels: g.labels().to_vec(),
        table: g.table().to_vec(),
    }
}

pub fn group_from_file(f: &GroupFile) -> Result<FiniteGroup> {
    if f.table.len() != f.order {
        return Err(Error::Input("group file order does not match table".into()));
    }
    FiniteGroup::from_table(f.labels.clone(), f.table.clone())
}

pub fn matched_pair_to_file(mp: &MatchedPairData) -> MatchedPairFile {
    let fmt3 = |t: &Vec<Vec<Vec<Scalar>>>| {
        t.iter()
            .map(|a| {
                a.iter()
                    .map(|b| b.iter().map(Scalar::canonical_string).collect())
                    .collect()
            })
            .collect()
    };
    MatchedPairFile {
        f: group_to_file(&mp.f),
        gamma: group_to_file(&mp.gamma),
        lact: mp.lact.clone(),
        ract: mp.ract.clone(),
        sigma: mp.sigma.as_ref().map(fmt3),
        tau: mp.tau.as_ref().map(fmt3),
    }
}

pub fn matched_pair_from_file(f: &MatchedPairFile, field: Field) -> Result<MatchedPairData> {
    let parse3 = |t: &Vec<Vec<Vec<String>>>| -> Result<Vec<Vec<Vec<Scalar>>>> {
        t.iter()
            .map(|a| {
                a.iter()
                    .map(|b| b.iter().map(|s| field.parse(s)).collect())
                    .collect()
            })
            .collect()
    };
    let mp = MatchedPairData {
        f: group_from_file(&f.f)?,
        gamma: group_from_file(&f.gamma)?,
        lact: f.lact.clone(),
        ract: f.ract.clone(),
        sigma: f.sigma.as_ref().map(&parse3).transpose()?,
        tau: f.tau.as_ref().map(&parse3).transpose()?,
    };
    mp.validate(field)?;
    Ok(mp)
}

pub fn hopf_to_file(h: &HopfAlgebra) -> HopfFile {
    let fmt = Scalar::canonical_string;
    let sparse_vec = |v: &[Scalar]| -> Vec<(usize, String)> {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, fmt(c)))
            .collect()
    };
    let provenance = match h.provenance() {
        FactorTag::GroupAlgebra(g) => Some(ProvenanceFile::GroupAlgebra {
            group: group_to_file(g),
        }),
        FactorTag::DualGroupAlgebra(g) => Some(ProvenanceFile::DualGroupAlgebra {
            group: group_to_file(g),
        }),
        FactorTag::AbelianExtension(mp) => Some(ProvenanceFile::AbelianExtension {
            matched_pair: matched_pair_to_file(mp),
        }),
        FactorTag::Generic => None,
    };
    HopfFile {
        field: h.field(),
        dim: h.dim(),
        basis: h.basis_labels().to_vec(),
        mult: h
            .mult_entries()
            .iter()
            .map(|(i, j, k, c)| (*i, *j, *k, fmt(c)))
            .collect(),
        unit: sparse_vec(h.unit_vector()),
        comult: h
            .comult_entries()
            .iter()
            .map(|(i, j, k, c)| (*i, *j, *k, fmt(c)))
            .collect(),
        counit: sparse_vec(h.counit_row()),
        antipode: h
            .antipode_entries()
            .iter()
            .map(|(i, j, c)| (*i, *j, fmt(c)))
            .collect(),
        provenance,
    }
}

pub fn hopf_from_file(f: &HopfFile) -> Result<Hopf> {
    let field = f.field;
    field.validate()?;
    if f.basis.len() != f.dim {
        return Err(Error::Input("basis label count differs from dim".into()));
    }
    let parse = |s: &str| field.parse(s);
    let mut unit = crate::scalar::zero_vec(field, f.dim);
    for (k, c) in &f.unit {
        if *k >= f.dim {
            return Err(Error::Input("unit index out of range".into()));
        }
        unit[*k] = unit[*k].add(&parse(c)?);
    }
    let mut counit = crate::scalar::zero_vec(field, f.dim);
    for (k, c) in &f.counit {
        if *k >= f.dim {
            return Err(Error::Input("counit index out of range".into()));
        }
        counit[*k] = counit[*k].add(&parse(c)?);
    }
    let mult = f
        .mult
        .iter()
        .map(|(i, j, k, c)| Ok((*i, *j, *k, parse(c)?)))
        .collect::<Result<Vec<_>>>()?;
    let comult = f
        .comult
        .iter()
        .map(|(i, j, k, c)| Ok((*i, *j, *k, parse(c)?)))
        .collect::<Result<Vec<_>>>()?;
    let antipode = f
        .antipode
        .iter()
        .map(|(i, j, c)| Ok((*i, *j, parse(c)?)))
        .collect::<Result<Vec<_>>>()?;
    if antipode.is_empty() {
        return Err(Error::Input("antipode data is missing".into()));
    }
    let provenance = match &f.provenance {
        None | Some(ProvenanceFile::Generic) => FactorTag::Generic,
        Some(ProvenanceFile::GroupAlgebra { group }) => {
            FactorTag::GroupAlgebra(group_from_file(group)?)
        }
        Some(ProvenanceFile::DualGroupAlgebra { group }) => {
            FactorTag::DualGroupAlgebra(group_from_file(group)?)
        }
        Some(ProvenanceFile::AbelianExtension { matched_pair }) => {
            FactorTag::AbelianExtension(Arc::new(matched_pair_from_file(matched_pair, field)?))
        }
    };
    HopfAlgebra::from_parts(
        field,
        f.basis.clone(),
        mult,
        unit,
        comult,
        counit,
        antipode,
        provenance,
    )
}

/// Deterministic pretty emission with a trailing newline.
pub fn emit_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn emit_hopf_json(h: &HopfAlgebra) -> String {
    emit_json(&hopf_to_file(h))
}

pub fn parse_hopf_json(text: &str) -> Result<Hopf> {
    let file: HopfFile =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("bad .hopf.json: {e}")))?;
    hopf_from_file(&file)
}

// -- .group.json ----------------------------------------------------------------

#[derive(Serialize, Deserialize, Debug)]
#[serde(untagged)]
pub enum GroupSpecFile {
    Named { name: String },
    Permutations { permutations: Vec<String> },
    Table {
        table: Vec<Vec<usize>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
}

pub fn group_from_spec(spec: &GroupSpecFile) -> Result<FiniteGroup> {
    match spec {
        GroupSpecFile::Named { name } => FiniteGroup::named(name),
        GroupSpecFile::Permutations { permutations } => {
            let refs: Vec<&str> = permutations.iter().map(String::as_str).collect();
            FiniteGroup::from_permutations(&refs)
        }
        GroupSpecFile::Table { table, labels } => {
            let labels = labels.clone().unwrap_or_else(|| {
                (0..table.len()).map(|i| format!("x{i}")).collect()
            });
            FiniteGroup::from_table(labels, table.clone())
        }
    }
}

pub fn parse_group_json(text: &str) -> Result<FiniteGroup> {
    let spec: GroupSpecFile =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("bad .group.json: {e}")))?;
    group_from_spec(&spec)
}

// -- .sub.json --------------------------------------------------------------------

#[derive(Serialize, Deserialize, Debug)]
#[serde(untagged)]
pub enum SubFile {
    Vectors { vectors: Vec<Vec<String>> },
    Subgroup { subgroup: Vec<String> },
}

/// Resolve a subobject spec against its parent. The `subgroup` shorthand is
/// available for parents built from group data: the span of the subgroup
/// generated by the named elements (group algebras), or the functions
/// constant on its cosets (dual group algebras).
pub fn resolve_sub(h: &Hopf, spec: &SubFile) -> Result<Subspace> {
    match spec {
        SubFile::Vectors { vectors } => {
            let rows = vectors
                .iter()
                .map(|row| row.iter().map(|s| h.field().parse(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Subspace::canonicalize(h.field(), h.dim(), &rows)
        }
        SubFile::Subgroup { subgroup } => match h.provenance() {
            FactorTag::GroupAlgebra(g) => {
                let elems = subgroup_elements(g, subgroup)?;
                Ok(Subspace::span_of_units(h.field(), h.dim(), &elems))
            }
            FactorTag::DualGroupAlgebra(g) => {
                let elems = subgroup_elements(g, subgroup)?;
                if !g.is_normal_subgroup(&elems) {
                    return Err(Error::Input(
                        "dual parent shorthand needs a normal subgroup".into(),
                    ));
                }
                let mut covered = vec![false; g.order()];
                let mut rows = Vec::new();
                for a in 0..g.order() {
                    if covered[a] {
                        continue;
                    }
                    let mut row = crate::scalar::zero_vec(h.field(), h.dim());
                    for &s in &elems {
                        let m = g.mul(a, s);
                        covered[m] = true;
                        row[m] = h.field().one();
                    }
                    rows.push(row);
                }
                Subspace::canonicalize(h.field(), h.dim(), &rows)
            }
            _ => Err(Error::Input(
                "subgroup shorthand needs a group-built parent; use vectors".into(),
            )),
        },
    }
}

fn subgroup_elements(g: &FiniteGroup, labels: &[String]) -> Result<Vec<usize>> {
    let gens = labels
        .iter()
        .map(|l| {
            g.element_by_label(l)
                .ok_or_else(|| Error::Input(format!("unknown element label {l:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(g.closure_of(&gens))
}

// -- .series.json -------------------------------------------------------------------

#[derive(Serialize, Deserialize, Debug)]
pub struct SeriesFile {
    pub direction: String,
    pub chain: Vec<SubFile>,
}

pub fn resolve_series(h: &Hopf, f: &SeriesFile) -> Result<crate::series::SubnormalSeries> {
    let direction = match f.direction.as_str() {
        "lower" => crate::series::SeriesDirection::Lower,
        "upper" => crate::series::SeriesDirection::Upper,
        other => return Err(Error::Input(format!("unknown series direction {other:?}"))),
    };
    let target = match direction {
        crate::series::SeriesDirection::Lower => h.clone(),
        crate::series::SeriesDirection::Upper => h.dual(),
    };
    let chain = f
        .chain
        .iter()
        .map(|s| resolve_sub(&target, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(crate::series::SubnormalSeries {
        direction,
        parent: h.clone(),
        chain,
    })
}

pub fn parse_mp_json(text: &str, field: Field) -> Result<MatchedPairData> {
    #[derive(Deserialize)]
    struct MpSpec {
        #[serde(rename = "F")]
        f: GroupSpecFile,
        #[serde(rename = "Gamma")]
        gamma: GroupSpecFile,
        lact: Vec<Vec<usize>>,
        ract: Vec<Vec<usize>>,
        sigma: Option<Vec<Vec<Vec<String>>>>,
        tau: Option<Vec<Vec<Vec<String>>>>,
    }
    let spec: MpSpec =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("bad .mp.json: {e}")))?;
    let parse3 = |t: &Vec<Vec<Vec<String>>>| -> Result<Vec<Vec<Vec<Scalar>>>> {
        t.iter()
            .map(|a| {
                a.iter()
                    .map(|b| b.iter().map(|s| field.parse(s)).collect())
                    .collect()
            })
            .collect()
    };
    let mp = MatchedPairData {
        f: group_from_spec(&spec.f)?,
        gamma: group_from_spec(&spec.gamma)?,
        lact: spec.lact,
        ract: spec.ract,
        sigma: spec.sigma.as_ref().map(&parse3).transpose()?,
        tau: spec.tau.as_ref().map(&parse3).transpose()?,
    };
    mp.validate(field)?;
    Ok(mp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{drinfeld_double, group_algebra};
    use crate::fixtures::sweedler;

    #[test]
    fn hopf_json_round_trips_byte_identically() {
        let s3 = FiniteGroup::named("S3").unwrap();
        for h in [group_algebra(&s3, Field::Q), sweedler(Field::Q)] {
            let text = emit_hopf_json(&h);
            let parsed = parse_hopf_json(&text).unwrap();
            assert!(parsed.tensor_eq(&h));
            let again = emit_hopf_json(&parsed);
            assert_eq!(text, again);
        }
    }

    #[test]
    fn drinfeld_double_file_round_trip_preserves_provider_data() {
        let c2 = FiniteGroup::named("C2").unwrap();
        let d = drinfeld_double(&c2, Field::Q).unwrap();
        let text = emit_hopf_json(&d.hopf);
        let parsed = parse_hopf_json(&text).unwrap();
        assert!(parsed.tensor_eq(&d.hopf));
        assert!(matches!(
            parsed.provenance(),
            FactorTag::AbelianExtension(_)
        ));
        assert_eq!(text, emit_hopf_json(&parsed));
    }

    #[test]
    fn missing_antipode_is_an_input_error() {
        let s3 = FiniteGroup::named("S3").unwrap();
        let h = group_algebra(&s3, Field::Q);
        let mut file = hopf_to_file(&h);
        file.antipode.clear();
        let text = emit_json(&file);
        assert!(parse_hopf_json(&text).is_err());
    }

    #[test]
    fn group_spec_forms_parse() {
        let named = parse_group_json(r#"{"name":"S4"}"#).unwrap();
        assert_eq!(named.order(), 24);
        let perms = parse_group_json(r#"{"permutations":["(1 2)(3 4)","(1 2 3)"]}"#).unwrap();
        assert_eq!(perms.order(), 12);
        let table = parse_group_json(r#"{"table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(table.order(), 2);
    }

    #[test]
    fn sub_spec_resolution() {
        let s3 = FiniteGroup::named("S3").unwrap();
        let h = group_algebra(&s3, Field::Q);
        let sub: SubFile = serde_json::from_str(r#"{"subgroup":["(1 2 3)"]}"#).unwrap();
        let space = resolve_sub(&h, &sub).unwrap();
        assert_eq!(space.dim(), 3);
        let vecs: SubFile =
            serde_json::from_str(r#"{"vectors":[["1","0","0","0","0","0"]]}"#).unwrap();
        assert_eq!(resolve_sub(&h, &vecs).unwrap().dim(), 1);
    }

    #[test]
    fn scalar_strings_round_trip_over_gf() {
        let g = FiniteGroup::named("C2").unwrap();
        let h = group_algebra(&g, Field::GF { p: 5 });
        let text = emit_hopf_json(&h);
        let parsed = parse_hopf_json(&text).unwrap();
        assert!(parsed.tensor_eq(&h));
        assert_eq!(text, emit_hopf_json(&parsed));
    }
}
