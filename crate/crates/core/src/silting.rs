//! Silting objects, Hom≤0-configurations, their enumeration, and the
//! bijection between them given by reversing mutation.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clique::BitGraph;
use crate::derived::{DObj, DObjRecord, DerivedCategory, WindowSpec};
use crate::error::{Error, Result};
use crate::exceptional::{self, ExcSeq, MutationRun, MutationSign};

/// A basic object: a set of distinct indecomposables, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DCollection(Vec<DObj>);

impl DCollection {
    pub fn new(mut items: Vec<DObj>) -> Result<Self> {
        items.sort();
        if items.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Predicate("repeated summand".into()));
        }
        Ok(Self(items))
    }

    pub fn items(&self) -> &[DObj] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: DObj) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn to_records(&self, cat: &DerivedCategory) -> Vec<DObjRecord> {
        self.0.iter().map(|&x| cat.to_record(x)).collect()
    }

    pub fn from_records(cat: &DerivedCategory, recs: &[DObjRecord]) -> Result<Self> {
        Self::new(recs.iter().map(|r| cat.from_record(r)).collect::<Result<_>>()?)
    }

    pub fn show(&self, cat: &DerivedCategory) -> String {
        let parts: Vec<String> = self.0.iter().map(|&x| cat.show(x)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn map(&self, f: impl Fn(DObj) -> DObj) -> Self {
        Self::new(self.0.iter().map(|&x| f(x)).collect()).expect("autoequivalences are injective")
    }
}

impl From<&ExcSeq> for DCollection {
    fn from(s: &ExcSeq) -> Self {
        let mut v = s.items().to_vec();
        v.sort();
        v.dedup();
        Self(v)
    }
}

fn fail(msg: String) -> Result<()> {
    Err(Error::Predicate(msg))
}

/// `Ext^i(X, X) = 0` for all `i >= 1`.
pub fn check_partial_silting(cat: &DerivedCategory, x: &DCollection) -> Result<()> {
    for &a in x.items() {
        for &b in x.items() {
            for (i, _) in cat.ext_support(a, b) {
                if i >= 1 {
                    return fail(format!("Ext^{i}({}, {}) != 0", cat.show(a), cat.show(b)));
                }
            }
        }
    }
    Ok(())
}

fn check_size(cat: &DerivedCategory, x: &DCollection) -> Result<()> {
    if x.len() != cat.rank() {
        return fail(format!("expected {} summands, found {}", cat.rank(), x.len()));
    }
    Ok(())
}

fn check_window(cat: &DerivedCategory, x: &DCollection, w: &WindowSpec) -> Result<()> {
    match x.items().iter().find(|&&a| !cat.in_window(a, w)) {
        Some(&a) => fail(format!("{} lies outside {w}", cat.show(a))),
        None => Ok(()),
    }
}

pub fn check_silting(cat: &DerivedCategory, x: &DCollection) -> Result<()> {
    check_partial_silting(cat, x)?;
    check_size(cat, x)
}

/// Conditions (H1)–(H4). Exceptionality of each summand is automatic for a
/// Dynkin quiver.
pub fn check_config(cat: &DerivedCategory, x: &DCollection) -> Result<()> {
    check_size(cat, x).map_err(|e| Error::Predicate(format!("H1: {}", strip(e))))?;
    debug_assert!(x.items().iter().all(|&a| cat.ext_support(a, a) == vec![(0, 1)]));
    for &a in x.items() {
        for &b in x.items() {
            if a == b {
                continue;
            }
            if cat.hom_dim(a, b) != 0 {
                return fail(format!("H2: Hom({}, {}) != 0", cat.show(a), cat.show(b)));
            }
            for (t, _) in cat.ext_support(a, b) {
                if t < 0 {
                    return fail(format!("H3: Ext^{t}({}, {}) != 0", cat.show(a), cat.show(b)));
                }
            }
        }
    }
    if let Some(cycle) = ext1_cycle(cat, x.items()) {
        let parts: Vec<String> = cycle.iter().map(|&a| cat.show(a)).collect();
        return fail(format!("H4: Ext^1 cycle {}", parts.join(" -> ")));
    }
    Ok(())
}

fn strip(e: Error) -> String {
    match e {
        Error::Predicate(m) => m,
        other => other.to_string(),
    }
}

/// A directed cycle in the digraph with an edge `a -> b` iff
/// `Ext^1(a, b) != 0`, if one exists.
fn ext1_cycle(cat: &DerivedCategory, items: &[DObj]) -> Option<Vec<DObj>> {
    let cyc = find_cycle(items.len(), |a, b| a != b && cat.ext_dim(items[a], items[b], 1) != 0)?;
    Some(cyc.into_iter().map(|i| items[i]).collect())
}

/// A directed cycle (closed: first vertex repeated at the end) in the
/// digraph on `0..k` given by `edge`.
fn find_cycle(k: usize, edge: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    // 0 unvisited, 1 on the stack, 2 finished
    fn dfs(
        v: usize,
        k: usize,
        edge: &dyn Fn(usize, usize) -> bool,
        state: &mut [u8],
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for w in 0..k {
            if !edge(v, w) {
                continue;
            }
            if state[w] == 1 {
                let start = stack.iter().position(|&s| s == w).unwrap();
                let mut cyc = stack[start..].to_vec();
                cyc.push(w);
                return Some(cyc);
            }
            if state[w] == 0 {
                if let Some(c) = dfs(w, k, edge, state, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }
    let mut state = vec![0u8; k];
    let mut stack = Vec::new();
    (0..k).find_map(|v| if state[v] == 0 { dfs(v, k, &edge, &mut state, &mut stack) } else { None })
}

pub fn is_partial_silting(cat: &DerivedCategory, x: &DCollection) -> bool {
    check_partial_silting(cat, x).is_ok()
}

pub fn is_silting(cat: &DerivedCategory, x: &DCollection) -> bool {
    check_silting(cat, x).is_ok()
}

pub fn is_silting_in_window(cat: &DerivedCategory, x: &DCollection, w: &WindowSpec) -> bool {
    check_window(cat, x, w).is_ok() && is_silting(cat, x)
}

pub fn is_m_cluster_tilting(cat: &DerivedCategory, x: &DCollection, m: i32) -> bool {
    is_silting_in_window(cat, x, &WindowSpec::cluster_tilting(m))
}

pub fn is_hom_leq0_config(cat: &DerivedCategory, x: &DCollection) -> bool {
    check_config(cat, x).is_ok()
}

pub fn is_config_in_window(cat: &DerivedCategory, x: &DCollection, w: &WindowSpec) -> bool {
    check_window(cat, x, w).is_ok() && is_hom_leq0_config(cat, x)
}

pub fn is_m_config(cat: &DerivedCategory, x: &DCollection, m: i32) -> bool {
    is_config_in_window(cat, x, &WindowSpec::config(m))
}

/// m-configuration avoiding the indecomposable projectives in degree 0.
pub fn is_m_config_minus(cat: &DerivedCategory, x: &DCollection, m: i32) -> bool {
    is_config_in_window(cat, x, &WindowSpec::config_minus(m))
}

/// The families that can be enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    MClusterTilting,
    MConfig,
    MConfigMinus,
    /// Silting objects in degrees `1..=m`.
    SiltingDeg1Window,
    SiltingInWindow(WindowSpec),
    ConfigInWindow(WindowSpec),
}

impl Kind {
    pub fn window(&self, m: i32) -> WindowSpec {
        match *self {
            Kind::MClusterTilting => WindowSpec::cluster_tilting(m),
            Kind::MConfig => WindowSpec::config(m),
            Kind::MConfigMinus => WindowSpec::config_minus(m),
            Kind::SiltingDeg1Window => WindowSpec::positive_silting(m),
            Kind::SiltingInWindow(w) | Kind::ConfigInWindow(w) => w,
        }
    }

    pub fn is_silting_side(&self) -> bool {
        matches!(self, Kind::MClusterTilting | Kind::SiltingDeg1Window | Kind::SiltingInWindow(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Kind::MClusterTilting => "m-cluster-tilting",
            Kind::MConfig => "m-config",
            Kind::MConfigMinus => "m-config-minus",
            Kind::SiltingDeg1Window => "silting-deg1-window",
            Kind::SiltingInWindow(_) => "silting-in-window",
            Kind::ConfigInWindow(_) => "config-in-window",
        }
    }

    pub fn contains(&self, cat: &DerivedCategory, x: &DCollection, m: i32) -> bool {
        let w = self.window(m);
        if self.is_silting_side() {
            is_silting_in_window(cat, x, &w)
        } else {
            is_config_in_window(cat, x, &w)
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    /// Parses the kinds that need no explicit window.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m-cluster-tilting" => Ok(Kind::MClusterTilting),
            "m-config" => Ok(Kind::MConfig),
            "m-config-minus" => Ok(Kind::MConfigMinus),
            "silting-deg1-window" => Ok(Kind::SiltingDeg1Window),
            other => Err(Error::Predicate(format!("unknown kind `{other}`"))),
        }
    }
}

/// Whether `a` and `b` may both be summands: the pairwise part of the
/// predicate for the given side.
fn compatible(cat: &DerivedCategory, silting_side: bool, a: DObj, b: DObj) -> bool {
    let both = [(a, b), (b, a)];
    if silting_side {
        both.iter().all(|&(x, y)| cat.ext_support(x, y).iter().all(|&(i, _)| i <= 0))
    } else {
        both.iter().all(|&(x, y)| cat.hom_dim(x, y) == 0 && cat.ext_support(x, y).iter().all(|&(t, _)| t >= 0))
    }
}

/// All objects of the given kind, canonically sorted.
pub fn enumerate(cat: &DerivedCategory, kind: Kind, m: i32) -> Result<Vec<DCollection>> {
    if m < 1 && !matches!(kind, Kind::SiltingInWindow(_) | Kind::ConfigInWindow(_)) {
        return Err(Error::Predicate(format!("m must be at least 1, got {m}")));
    }
    let verts = cat.window_objects(&kind.window(m));
    let side = kind.is_silting_side();
    let g = BitGraph::from_fn(verts.len(), |i, j| compatible(cat, side, verts[i], verts[j]));
    let mut out: Vec<DCollection> = g
        .cliques_of_size(cat.rank())
        .into_par_iter()
        .filter_map(|c| {
            let x = DCollection::new(c.into_iter().map(|i| verts[i]).collect()).ok()?;
            kind.contains(cat, &x, m).then_some(x)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Which way the bijection runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Silting,
    Config,
}

/// Orders a silting object (ascending degree) or a configuration
/// (descending degree) into an exceptional sequence, with ties broken by
/// root index.
pub fn order(cat: &DerivedCategory, x: &DCollection, side: Side) -> Result<ExcSeq> {
    let seq = match side {
        Side::Silting => exceptional::exceptional_order(cat, x.items(), |a| (a.degree, a.root)),
        Side::Config => exceptional::exceptional_order(cat, x.items(), |a| (-a.degree, a.root)),
    };
    seq.ok_or(Error::NotExceptional)
}

/// Every exceptional ordering of `x` whose degrees are monotone in the
/// direction required by `side`.
pub fn admissible_orders(cat: &DerivedCategory, x: &DCollection, side: Side) -> Vec<ExcSeq> {
    exceptional::all_exceptional_orders(cat, x.items())
        .into_iter()
        .filter(|s| {
            s.items().windows(2).all(|w| match side {
                Side::Silting => w[0].degree <= w[1].degree,
                Side::Config => w[0].degree >= w[1].degree,
            })
        })
        .collect()
}

/// One run of the bijection, with the ordering used and every mutation.
#[derive(Clone, Debug)]
pub struct Transport {
    pub ordered: ExcSeq,
    pub run: MutationRun,
    pub output: DCollection,
}

/// The configuration obtained by reversing mutation from a silting object.
pub fn silting_to_config(cat: &DerivedCategory, x: &DCollection) -> Result<Transport> {
    check_silting(cat, x).map_err(|e| Error::Predicate(format!("input is not silting: {}", strip(e))))?;
    let ordered = order(cat, x, Side::Silting)?;
    silting_to_config_from(cat, ordered)
}

/// As [`silting_to_config`], starting from a given exceptional ordering.
pub fn silting_to_config_from(cat: &DerivedCategory, ordered: ExcSeq) -> Result<Transport> {
    let run = exceptional::mu_rev(cat, &ordered)?;
    if let Some(step) = run.steps.iter().find(|s| s.sign == MutationSign::NonNegative) {
        return Err(Error::Internal(format!(
            "non-negative mutation at position {} while mutating {}",
            step.pos,
            ordered.show(cat)
        )));
    }
    let output = DCollection::from(&run.seq);
    check_config(cat, &output).map_err(|e| Error::Internal(format!("output is not a configuration: {}", strip(e))))?;
    Ok(Transport { ordered, run, output })
}

/// The silting object obtained by inverse reversing mutation from a
/// configuration.
pub fn config_to_silting(cat: &DerivedCategory, x: &DCollection) -> Result<Transport> {
    check_config(cat, x).map_err(|e| Error::Predicate(format!("input is not a configuration: {}", strip(e))))?;
    let ordered = order(cat, x, Side::Config)?;
    config_to_silting_from(cat, ordered)
}

/// As [`config_to_silting`], from a given ordering. Since `μ_rev² = ν^{-1}`,
/// `μ_rev^{-1} = ν ∘ μ_rev`; the recorded run is the forward `μ_rev`, whose
/// steps are non-negative on configurations, and the result is checked
/// against the literal inverse mutations.
pub fn config_to_silting_from(cat: &DerivedCategory, ordered: ExcSeq) -> Result<Transport> {
    let run = exceptional::mu_rev(cat, &ordered)?;
    if let Some(step) = run.steps.iter().find(|s| s.sign == MutationSign::Negative) {
        return Err(Error::Internal(format!(
            "negative mutation at position {} while mutating {}",
            step.pos,
            ordered.show(cat)
        )));
    }
    let out_seq = run.seq.map(|x| cat.nu(x));
    let inverse = exceptional::mu_rev_inverse(cat, &ordered)?;
    if inverse.seq != out_seq {
        return Err(Error::Internal(format!(
            "inverse reversal of {} gave {}, but ν∘μ_rev gave {}",
            ordered.show(cat),
            inverse.seq.show(cat),
            out_seq.show(cat)
        )));
    }
    let output = DCollection::from(&out_seq);
    check_silting(cat, &output).map_err(|e| Error::Internal(format!("output is not silting: {}", strip(e))))?;
    Ok(Transport { ordered, run, output })
}
