use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{preset, FiniteGroup};
use crate::error::{Error, Result};

/// A parameter of a preset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Text(String),
    Groups(Vec<PresetSpec>),
}

/// A named preset with parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetSpec {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, ParamValue>,
}

/// Permutation generators in 1-based image notation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermutationSpec {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

/// The group input document: exactly one of `preset`, `permutations`, `table`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<PresetSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<PermutationSpec>,
    /// 0-based element indices; the identity is index 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    /// Generator indices for table input (a generating set is chosen if absent).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

fn positional(name: &str) -> &'static [&'static str] {
    match name {
        "cyclic" => &["n"],
        "elementary_abelian" => &["q", "d"],
        "heisenberg" | "modular" => &["p"],
        "sharp" | "flat" => &["d", "q"],
        "direct_product" => &["factors"],
        _ => &[],
    }
}

fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl PresetSpec {
    pub fn new(name: &str, params: &[(&str, i64)]) -> Self {
        PresetSpec {
            name: name.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), ParamValue::Int(*v))).collect(),
        }
    }

    /// Parses `name`, `name(3)`, `name(p=3)`, `name(d=2, q=3)` and products
    /// `a * b` (read as `direct_product`).
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let factors = split_top(text, '*');
        if factors.len() > 1 {
            let groups = factors.into_iter().map(PresetSpec::parse).collect::<Result<Vec<_>>>()?;
            return Ok(PresetSpec {
                name: "direct_product".into(),
                params: BTreeMap::from([("factors".to_string(), ParamValue::Groups(groups))]),
            });
        }
        let bad = || Error::InvalidParams(format!("cannot parse preset {text:?}"));
        let (name, args) = match text.find('(') {
            Some(i) => {
                let inner = text[i + 1..].strip_suffix(')').ok_or_else(bad)?;
                (text[..i].trim(), Some(inner))
            }
            None => (text, None),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(bad());
        }
        let mut params = BTreeMap::new();
        if let Some(args) = args.filter(|a| !a.trim().is_empty()) {
            let names = positional(name);
            let mut groups = Vec::new();
            for (i, arg) in split_top(args, ',').into_iter().enumerate() {
                let arg = arg.trim();
                if name == "direct_product" {
                    groups.push(PresetSpec::parse(arg)?);
                    continue;
                }
                let (k, v) = match arg.split_once('=') {
                    Some((k, v)) => (k.trim().to_string(), v.trim()),
                    None => (names.get(i).ok_or_else(bad)?.to_string(), arg),
                };
                let v: i64 = v.parse().map_err(|_| bad())?;
                params.insert(k, ParamValue::Int(v));
            }
            if name == "direct_product" {
                params.insert("factors".into(), ParamValue::Groups(groups));
            }
        }
        Ok(PresetSpec {
            name: name.to_string(),
            params,
        })
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        preset(&self.name, &self.params)
    }
}

/// Builds and validates the group described by a document.
pub fn build_group(doc: &GroupSpecDocument, cap: usize) -> Result<FiniteGroup> {
    let given = [doc.preset.is_some(), doc.permutations.is_some(), doc.table.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if given != 1 {
        return Err(Error::InvalidGroup(format!(
            "expected exactly one of preset, permutations, table; found {given}"
        )));
    }
    let group = if let Some(p) = &doc.preset {
        let g = p.build()?;
        crate::error::limit("preset", g.order(), cap)?;
        g
    } else if let Some(perm) = &doc.permutations {
        let deg = perm.degree;
        let mut gens = Vec::new();
        for (i, img) in perm.generators.iter().enumerate() {
            if img.len() != deg {
                return Err(Error::InvalidGroup(format!(
                    "permutations.generators[{i}] has {} images, expected {deg}",
                    img.len()
                )));
            }
            let mut seen = vec![false; deg];
            let mut zero_based = Vec::with_capacity(deg);
            for (j, &v) in img.iter().enumerate() {
                if v == 0 || v > deg || seen[v - 1] {
                    return Err(Error::InvalidGroup(format!(
                        "permutations.generators[{i}][{j}] = {v} is not a valid 1-based image"
                    )));
                }
                seen[v - 1] = true;
                zero_based.push(v - 1);
            }
            gens.push(zero_based);
        }
        let names = (1..=gens.len()).map(|i| format!("p{i}")).collect();
        let compose = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> { a.iter().map(|&x| b[x]).collect() };
        FiniteGroup::from_closure((0..deg).collect(), &gens, compose, names, cap)?.0
    } else {
        let table = doc.table.clone().unwrap();
        FiniteGroup::from_table(table, doc.generators.clone(), None, cap)?
    };
    match &doc.labels {
        Some(labels) => group.with_labels(labels.clone()),
        None => Ok(group),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_preset_text() {
        let p = PresetSpec::parse("heisenberg(3)").unwrap();
        assert_eq!(p, PresetSpec::new("heisenberg", &[("p", 3)]));
        let p = PresetSpec::parse("sharp(d=2, q=3)").unwrap();
        assert_eq!(p, PresetSpec::new("sharp", &[("d", 2), ("q", 3)]));
        let p = PresetSpec::parse("cyclic(4) * cyclic(2)").unwrap();
        assert_eq!(p.build().unwrap().order(), 8);
        assert!(PresetSpec::parse("cyclic(4").is_err());
        assert_eq!(PresetSpec::parse("dihedral4").unwrap().build().unwrap().order(), 8);
    }

    #[test]
    fn documents_need_exactly_one_source() {
        let doc = GroupSpecDocument::default();
        assert!(build_group(&doc, 4096).is_err());
        let doc = GroupSpecDocument {
            permutations: Some(PermutationSpec {
                degree: 4,
                generators: vec![vec![2, 3, 4, 1], vec![1, 4, 3, 2]],
            }),
            ..Default::default()
        };
        assert_eq!(build_group(&doc, 4096).unwrap().order(), 8);
        let bad = GroupSpecDocument {
            permutations: Some(PermutationSpec {
                degree: 3,
                generators: vec![vec![1, 1, 2]],
            }),
            ..Default::default()
        };
        assert!(build_group(&bad, 4096).unwrap_err().to_string().contains("generators[0][1]"));
    }
}
