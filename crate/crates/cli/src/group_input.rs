use std::collections::BTreeMap;
use std::path::Path;

use qcentral::group::{build_group, FiniteGroup, GroupSpecDocument, ParamValue, PresetSpec};

use crate::CliError;

/// Reads `--group <path>` or `--preset <name> --params k=v ...`.
pub fn load_group(
    path: Option<&Path>,
    preset: Option<&str>,
    params: &[String],
    cap: usize,
) -> Result<(FiniteGroup, String), CliError> {
    let doc = match (path, preset) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give either --group or --preset, not both".into())),
        (None, None) => return Err(CliError::Usage("a group is required (--group <path> or --preset <name>)".into())),
        (Some(p), None) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            serde_json::from_str::<GroupSpecDocument>(&text).map_err(|e| {
                CliError::Input(format!("{}:{}:{}: {e}", p.display(), e.line(), e.column()))
            })?
        }
        (None, Some(name)) => {
            let mut spec = PresetSpec::parse(name)?;
            for kv in params {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| CliError::Usage(format!("--params expects k=v, got {kv:?}")))?;
                let value = match v.trim().parse::<i64>() {
                    Ok(n) => ParamValue::Int(n),
                    Err(_) => ParamValue::Text(v.trim().to_string()),
                };
                spec.params.insert(k.trim().to_string(), value);
            }
            GroupSpecDocument {
                preset: Some(spec),
                ..Default::default()
            }
        }
    };
    let g = build_group(&doc, cap)?;
    Ok((g, describe(&doc)))
}

fn describe(doc: &GroupSpecDocument) -> String {
    if let Some(p) = &doc.preset {
        return preset_text(p);
    }
    if let Some(p) = &doc.permutations {
        return format!("permutations of degree {} ({} generators)", p.degree, p.generators.len());
    }
    match &doc.table {
        Some(t) => format!("table of order {}", t.len()),
        None => "group".into(),
    }
}

fn preset_text(p: &PresetSpec) -> String {
    let args: BTreeMap<&String, String> = p
        .params
        .iter()
        .map(|(k, v)| {
            let s = match v {
                ParamValue::Int(n) => n.to_string(),
                ParamValue::Text(t) => t.clone(),
                ParamValue::Groups(gs) => gs.iter().map(preset_text).collect::<Vec<_>>().join(" * "),
            };
            (k, s)
        })
        .collect();
    if args.is_empty() {
        p.name.clone()
    } else {
        let inner: Vec<String> = args.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", p.name, inner.join(", "))
    }
}

/// The table document of a group, as emitted by `free-model --emit`.
pub fn table_document(g: &FiniteGroup) -> GroupSpecDocument {
    GroupSpecDocument {
        table: Some(g.table_rows()),
        generators: Some(g.generators().to_vec()),
        ..Default::default()
    }
}
