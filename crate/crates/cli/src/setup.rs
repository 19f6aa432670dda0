//! Turning command-line flags into library objects.

use std::fmt;

use exseq_core::{DerivedCategory, DynkinType, QuiverDescriptor, RootSystem, Weyl};
use serde::Deserialize;

/// An error in the invocation itself; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// `--orientation` accepts either a bare arrow list or a full descriptor.
#[derive(Deserialize)]
#[serde(untagged)]
enum Orientation {
    Arrows(Vec<[usize; 2]>),
    Descriptor(QuiverDescriptor),
}

pub fn root_system(ty: &str, orientation: Option<&str>) -> anyhow::Result<RootSystem> {
    let ty: DynkinType = ty.parse().map_err(|e| usage(format!("{e}")))?;
    let quiver = match orientation {
        None => QuiverDescriptor::standard(ty),
        Some(text) => {
            let parsed: Orientation =
                serde_json::from_str(text).map_err(|e| usage(format!("cannot parse --orientation: {e}")))?;
            match parsed {
                Orientation::Arrows(arrows) => QuiverDescriptor { family: ty.family, rank: ty.rank, arrows },
                Orientation::Descriptor(q) => {
                    if q.dynkin_type() != ty {
                        return Err(usage(format!("--orientation describes {}, not {ty}", q.dynkin_type())));
                    }
                    q
                }
            }
        }
    };
    RootSystem::new(quiver).map_err(|e| usage(format!("{e}")))
}

pub fn category(rs: RootSystem) -> anyhow::Result<DerivedCategory> {
    let ty = rs.dynkin_type();
    DerivedCategory::new(rs).map_err(|e| usage(format!("{ty}: {e}")))
}

pub fn weyl(rs: &RootSystem) -> anyhow::Result<Weyl> {
    Ok(Weyl::new(rs)?)
}

pub fn require_m(m: i32) -> anyhow::Result<usize> {
    if m < 1 {
        return Err(usage(format!("--m must be at least 1, got {m}")));
    }
    Ok(m as usize)
}

pub fn set_jobs(jobs: Option<usize>) -> anyhow::Result<()> {
    if let Some(j) = jobs {
        if j == 0 {
            return Err(usage("--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
    }
    Ok(())
}

/// Parses `lo:hi`.
pub fn parse_window(s: &str) -> anyhow::Result<(i32, i32)> {
    let bad = || usage(format!("window must look like `lo:hi`, got `{s}`"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let lo = a.trim().parse().map_err(|_| bad())?;
    let hi = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}
