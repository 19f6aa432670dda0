//! Reading and writing collections and noncrossing tuples.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::Context;
use clap::ValueEnum;
use exseq_core::weyl::NCTupleRecord;
use exseq_core::{DCollection, DObjRecord, DerivedCategory};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim().is_empty() {
        return Ok(Value::Array(Vec::new()));
    }
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// The records of a file holding either one collection (an array of
/// `{"dim", "deg"}` objects) or an array of collections.
pub fn collection_values(v: Value) -> anyhow::Result<Vec<Value>> {
    let Value::Array(items) = v else {
        anyhow::bail!("expected a JSON array of collections");
    };
    let single = items.first().is_some_and(|x| x.is_object());
    Ok(if single { vec![Value::Array(items)] } else { items })
}

pub fn parse_collection(cat: &DerivedCategory, v: &Value) -> anyhow::Result<DCollection> {
    let recs: Vec<DObjRecord> = serde_json::from_value(v.clone())?;
    Ok(DCollection::from_records(cat, &recs)?)
}

/// Noncrossing tuples: an array whose items are `{"words": ...}` objects
/// or bare arrays of reflection words.
pub fn nc_values(v: Value) -> anyhow::Result<Vec<Value>> {
    match v {
        Value::Array(items) => Ok(items),
        _ => anyhow::bail!("expected a JSON array of noncrossing tuples"),
    }
}

pub fn parse_nc_record(v: &Value) -> anyhow::Result<NCTupleRecord> {
    if v.is_object() {
        Ok(serde_json::from_value(v.clone())?)
    } else {
        Ok(NCTupleRecord { words: serde_json::from_value(v.clone())?, matrices: None })
    }
}

pub fn collection_json(cat: &DerivedCategory, x: &DCollection) -> Value {
    serde_json::to_value(x.to_records(cat)).expect("records serialize")
}

/// Renders collections in the requested format.
pub fn render_collections(cat: &DerivedCategory, all: &[DCollection], format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json => {
            let v: Vec<Value> = all.iter().map(|x| collection_json(cat, x)).collect();
            Ok(serde_json::to_string_pretty(&v)? + "\n")
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["collection", "summand", "deg", "dim"])?;
            for (i, x) in all.iter().enumerate() {
                for (j, r) in x.to_records(cat).iter().enumerate() {
                    let dim: Vec<String> = r.dim.iter().map(|d| d.to_string()).collect();
                    w.write_record([i.to_string(), j.to_string(), r.deg.to_string(), dim.join(" ")])?;
                }
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        Format::Text => Ok(all.iter().map(|x| x.show(cat) + "\n").collect()),
    }
}

/// Writes to `path`, or to standard output when there is none.
pub fn emit(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}
