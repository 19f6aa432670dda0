//! Periodic combinatorial configurations under `F = τ^{-1}[-2]`, and the
//! torsion classes `A(M) = {X : Ext^i(M, X) = 0 for i >= 1}` restricted
//! to finite windows.
//!
//! `F` lowers degrees by one or two, so every F-orbit meets a bounded range
//! of degrees in finitely many objects and all checks below are finite.

use rayon::prelude::*;

use crate::derived::{DObj, DerivedCategory, WindowSpec};
use crate::error::{Error, Result};
use crate::exceptional::{self, Direction, ExcSeq, MutationSign};
use crate::silting::{self, DCollection};

/// An F-stable set of indecomposables, given by one representative per
/// orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicConfig {
    seeds: DCollection,
}

impl PeriodicConfig {
    pub fn new(cat: &DerivedCategory, seeds: DCollection) -> Result<Self> {
        if seeds.is_empty() {
            return Err(Error::EmptySeeds);
        }
        for (k, &a) in seeds.items().iter().enumerate() {
            for &b in &seeds.items()[k + 1..] {
                let lo = a.degree.min(b.degree);
                let hi = a.degree.max(b.degree);
                if orbit_in_degrees(cat, b, lo, hi).iter().any(|&(_, y)| y == a) {
                    return Err(Error::Predicate(format!("{} and {} lie in one F-orbit", cat.show(a), cat.show(b))));
                }
            }
        }
        Ok(Self { seeds })
    }

    pub fn seeds(&self) -> &DCollection {
        &self.seeds
    }

    /// Members of the configuration with degree in `lo..=hi`.
    pub fn members_in_degrees(&self, cat: &DerivedCategory, lo: i32, hi: i32) -> Vec<DObj> {
        let mut out: Vec<DObj> = self
            .seeds
            .items()
            .iter()
            .flat_map(|&s| orbit_in_degrees(cat, s, lo, hi).into_iter().map(|(_, y)| y))
            .collect();
        out.sort();
        out
    }
}

/// `(i, F^i(x))` for every `i` with `F^i(x)` in degrees `lo..=hi`.
pub fn orbit_in_degrees(cat: &DerivedCategory, x: DObj, lo: i32, hi: i32) -> Vec<(i32, DObj)> {
    let mut out = Vec::new();
    let (mut y, mut i) = (x, 0);
    while y.degree >= lo {
        if y.degree <= hi {
            out.push((i, y));
        }
        y = cat.f(y);
        i += 1;
    }
    let (mut y, mut i) = (cat.f_inv(x), -1);
    while y.degree <= hi {
        if y.degree >= lo {
            out.push((i, y));
        }
        y = cat.f_inv(y);
        i -= 1;
    }
    out.sort();
    out
}

/// The window in which periodic configurations are checked: two copies of
/// the fundamental domain `D^{(≥0)-}_{≤1}` of `F` on either side.
pub fn default_probe_window() -> WindowSpec {
    WindowSpec::degrees(-1, 2)
}

/// Hom-orthogonality of distinct members and covering of every object of
/// `probe` by a nonzero Hom from some member.
pub fn check_combinatorial_configuration(cat: &DerivedCategory, p: &PeriodicConfig, probe: &WindowSpec) -> Result<()> {
    let seeds = p.seeds.items();
    for &a in seeds {
        for &b in seeds {
            // Hom(A, Y) != 0 needs deg Y in {deg A, deg A + 1}
            for (i, y) in orbit_in_degrees(cat, b, a.degree, a.degree + 1) {
                if (a != b || i != 0) && cat.hom_dim(a, y) != 0 {
                    return Err(Error::Predicate(format!(
                        "Hom({}, {}) != 0 between distinct members",
                        cat.show(a),
                        cat.show(y)
                    )));
                }
            }
        }
    }
    let uncovered = cat.window_objects(probe).into_par_iter().find_first(|&z| {
        !seeds
            .iter()
            .any(|&s| orbit_in_degrees(cat, s, z.degree - 1, z.degree).iter().any(|&(_, y)| cat.hom_dim(y, z) != 0))
    });
    match uncovered {
        Some(z) => Err(Error::Predicate(format!("{} receives no map from the configuration", cat.show(z)))),
        None => Ok(()),
    }
}

pub fn is_combinatorial_configuration(cat: &DerivedCategory, p: &PeriodicConfig, probe: &WindowSpec) -> bool {
    check_combinatorial_configuration(cat, p, probe).is_ok()
}

/// The F-orbits of the summands of a configuration in `D^{(≥0)-}_{≤1}`.
pub fn config_to_riedtmann(cat: &DerivedCategory, t: &DCollection) -> Result<PeriodicConfig> {
    let w = WindowSpec::config_minus(1);
    if !silting::is_config_in_window(cat, t, &w) {
        silting::check_config(cat, t)?;
        let bad: Vec<String> = t.items().iter().filter(|&&x| !cat.in_window(x, &w)).map(|&x| cat.show(x)).collect();
        return Err(Error::Predicate(format!("summands outside {w}: {}", bad.join(", "))));
    }
    let p = PeriodicConfig::new(cat, t.clone())?;
    check_combinatorial_configuration(cat, &p, &default_probe_window())
        .map_err(|e| Error::Internal(format!("orbit set is not a combinatorial configuration: {e}")))?;
    Ok(p)
}

/// The members of a periodic configuration inside `D^{(≥0)-}_{≤1}`.
pub fn riedtmann_to_config(cat: &DerivedCategory, p: &PeriodicConfig) -> Result<DCollection> {
    check_combinatorial_configuration(cat, p, &default_probe_window())?;
    let w = WindowSpec::config_minus(1);
    let members: Vec<DObj> = p.members_in_degrees(cat, 0, 1).into_iter().filter(|&x| cat.in_window(x, &w)).collect();
    let x = DCollection::new(members)?;
    silting::check_config(cat, &x)
        .map_err(|e| Error::Internal(format!("members in the fundamental domain are not a configuration: {e}")))?;
    Ok(x)
}

/// `A(M)` restricted to the window.
pub fn torsion_window(cat: &DerivedCategory, m: &[DObj], w: &WindowSpec) -> Vec<DObj> {
    cat.window_objects(w)
        .into_iter()
        .filter(|&x| m.iter().all(|&s| cat.ext_support(s, x).iter().all(|&(i, _)| i <= 0)))
        .collect()
}

/// Whether the negative (or orthogonal) right mutation at `i` leaves the
/// torsion class unchanged on `w`.
pub fn check_negative_mutation_invariance(
    cat: &DerivedCategory,
    seq: &ExcSeq,
    i: usize,
    w: &WindowSpec,
) -> Result<bool> {
    let step = exceptional::mutate_step(cat, seq, i, Direction::Right)?;
    if step.sign == MutationSign::NonNegative {
        return Err(Error::Predicate(format!("mutation at position {i} is non-negative")));
    }
    Ok(torsion_window(cat, seq.items(), w) == torsion_window(cat, step.after.items(), w))
}

/// `A(Y)` on a window reaching `margin` degrees beyond the span of `Y`.
#[derive(Clone, Debug)]
pub struct TorsionWindow {
    pub generator: DCollection,
    pub window: WindowSpec,
    pub margin: i32,
    pub objects: Vec<DObj>,
}

pub const MIN_MARGIN: i32 = 2;

pub fn torsion_class(cat: &DerivedCategory, y: &DCollection, margin: i32) -> Result<TorsionWindow> {
    if margin < MIN_MARGIN {
        return Err(Error::MarginTooSmall(format!("margin {margin} is below {MIN_MARGIN}")));
    }
    if y.is_empty() {
        return Err(Error::EmptySeeds);
    }
    let lo = y.items().iter().map(|x| x.degree).min().unwrap();
    let hi = y.items().iter().map(|x| x.degree).max().unwrap();
    let window = WindowSpec::new(lo - margin, hi + margin)?;
    let objects = torsion_window(cat, y.items(), &window);
    Ok(TorsionWindow { generator: y.clone(), window, margin, objects })
}

/// Ext-projectives of the windowed torsion class, away from the window's
/// edges.
pub fn ext_projectives(cat: &DerivedCategory, a: &TorsionWindow) -> Result<Vec<DObj>> {
    if a.margin < MIN_MARGIN {
        return Err(Error::MarginTooSmall(format!("margin {} is below {MIN_MARGIN}", a.margin)));
    }
    let (lo, hi) = (a.window.lo + a.margin, a.window.hi - a.margin);
    Ok(a.objects
        .iter()
        .copied()
        .filter(|x| (lo..=hi).contains(&x.degree))
        .filter(|&x| a.objects.iter().all(|&z| cat.ext_support(x, z).iter().all(|&(i, _)| i <= 0)))
        .collect())
}
