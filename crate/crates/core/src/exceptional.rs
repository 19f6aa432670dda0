//! Exceptional sequences in the derived category and their mutations.
//!
//! Mutations are computed on objects only. For an exceptional pair
//! `(E, F)` the right mutation is `(F, E*)` where `E* -> E -> F^r[p]` is the
//! approximation triangle; `p` is the unique shift with `Hom(E, F[p]) != 0`
//! and `r` is that dimension (endomorphism rings are the ground field in
//! Dynkin type). The class of `E*` is `[E] - r[F[p]]`; the degree of `E*`
//! is either `deg E` (kernel or universal extension) or `deg E - 1`
//! (shifted cokernel), and the two have different parity, so the class
//! determines it.

use std::fmt;

use rayon::prelude::*;

use crate::derived::{DObj, DObjRecord, DerivedCategory};
use crate::error::{Error, Result};

/// An ordered list of indecomposables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExcSeq(pub Vec<DObj>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Right,
    Left,
}

/// Sign of a mutation, read off the shift `j` of the approximating object in
/// the first term of the triangle: `F^r[j] -> E* -> E -> F^r[j+1]` for right
/// mutations and `E^r[j] -> F -> F^! -> E^r[j+1]` for left ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MutationSign {
    Negative,
    NonNegative,
    /// The approximation vanishes; the pair is just swapped.
    Orthogonal,
}

impl MutationSign {
    fn from_shift(j: Option<i32>) -> Self {
        match j {
            None => MutationSign::Orthogonal,
            Some(j) if j < 0 => MutationSign::Negative,
            Some(_) => MutationSign::NonNegative,
        }
    }

    pub fn is_negative_or_orthogonal(self) -> bool {
        self != MutationSign::NonNegative
    }

    pub fn is_nonnegative_or_orthogonal(self) -> bool {
        self != MutationSign::Negative
    }
}

impl fmt::Display for MutationSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MutationSign::Negative => "negative",
            MutationSign::NonNegative => "non-negative",
            MutationSign::Orthogonal => "orthogonal",
        })
    }
}

/// One executed mutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationStep {
    /// 0-based position of the left member of the mutated pair.
    pub pos: usize,
    pub dir: Direction,
    pub sign: MutationSign,
    /// Shift of the approximation triangle's first term, if nonzero.
    pub shift: Option<i32>,
    /// The mutated pair before, and the sequence after, the step.
    pub before: (DObj, DObj),
    pub after: ExcSeq,
}

/// Result of a composite mutation.
#[derive(Clone, Debug)]
pub struct MutationRun {
    pub seq: ExcSeq,
    pub steps: Vec<MutationStep>,
}

impl MutationRun {
    pub fn signs(&self) -> impl Iterator<Item = MutationSign> + '_ {
        self.steps.iter().map(|s| s.sign)
    }
}

impl ExcSeq {
    pub fn new(items: Vec<DObj>) -> Self {
        Self(items)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn items(&self) -> &[DObj] {
        &self.0
    }

    pub fn to_records(&self, cat: &DerivedCategory) -> Vec<DObjRecord> {
        self.0.iter().map(|&x| cat.to_record(x)).collect()
    }

    pub fn from_records(cat: &DerivedCategory, recs: &[DObjRecord]) -> Result<Self> {
        Ok(Self(recs.iter().map(|r| cat.from_record(r)).collect::<Result<_>>()?))
    }

    pub fn show(&self, cat: &DerivedCategory) -> String {
        let parts: Vec<String> = self.0.iter().map(|&x| cat.show(x)).collect();
        format!("({})", parts.join(", "))
    }

    /// Termwise image under a map on objects.
    pub fn map(&self, f: impl Fn(DObj) -> DObj) -> Self {
        Self(self.0.iter().map(|&x| f(x)).collect())
    }
}

/// Whether `items` is exceptional: all Ext from later to earlier terms
/// vanish, and each earlier-to-later pair has Ext in at most one degree.
pub fn is_exceptional(cat: &DerivedCategory, items: &[DObj]) -> bool {
    for j in 0..items.len() {
        for i in 0..j {
            if !cat.ext_orthogonal(items[j], items[i]) {
                return false;
            }
            if cat.ext_support(items[i], items[j]).len() > 1 {
                return false;
            }
        }
    }
    true
}

/// The unique `(p, dim)` with `Hom(E, F[p]) != 0`, for an exceptional pair.
fn approximation_shift(cat: &DerivedCategory, e: DObj, f: DObj) -> Result<Option<(i32, u32)>> {
    let base = e.degree - f.degree;
    let hits: Vec<(i32, u32)> = [base, base + 1]
        .into_iter()
        .filter_map(|p| {
            let h = cat.hom_dim(e, f.shift(p));
            (h != 0).then_some((p, h))
        })
        .collect();
    match hits.as_slice() {
        [] => Ok(None),
        [one] => Ok(Some(*one)),
        _ => Err(Error::NotExceptional),
    }
}

fn combine(cat: &DerivedCategory, keep: DObj, r: u32, sub: DObj) -> Vec<i64> {
    let a = cat.class_of(keep);
    let b = cat.class_of(sub);
    a.iter().zip(&b).map(|(x, y)| x - i64::from(r) * y).collect()
}

/// Mutates the pair at 0-based positions `(i, i + 1)`.
pub fn mutate(cat: &DerivedCategory, seq: &ExcSeq, i: usize, dir: Direction) -> Result<(ExcSeq, MutationSign)> {
    let step = mutate_step(cat, seq, i, dir)?;
    Ok((step.after, step.sign))
}

pub fn mutate_step(cat: &DerivedCategory, seq: &ExcSeq, i: usize, dir: Direction) -> Result<MutationStep> {
    if i + 1 >= seq.len() {
        return Err(Error::BadPosition { pos: i, len: seq.len() });
    }
    debug_assert!(is_exceptional(cat, seq.items()), "mutation input must be exceptional");
    let (e, f) = (seq.0[i], seq.0[i + 1]);
    if !cat.ext_orthogonal(f, e) {
        return Err(Error::NotExceptional);
    }
    let mut out = seq.0.clone();
    let shift = match dir {
        Direction::Right => match approximation_shift(cat, e, f)? {
            None => {
                out[i] = f;
                out[i + 1] = e;
                None
            }
            Some((p, r)) => {
                let class = combine(cat, e, r, f.shift(p));
                let star = cat.object_of_class(&class, (e.degree, e.degree - 1))?;
                out[i] = f;
                out[i + 1] = star;
                Some(p - 1)
            }
        },
        Direction::Left => {
            // Hom(E[p], F) != 0  <=>  Hom(E, F[-p]) != 0
            match approximation_shift(cat, e, f)? {
                None => {
                    out[i] = f;
                    out[i + 1] = e;
                    None
                }
                Some((q, r)) => {
                    let p = -q;
                    let class = combine(cat, f, r, e.shift(p));
                    let shriek = cat.object_of_class(&class, (f.degree, f.degree + 1))?;
                    out[i] = shriek;
                    out[i + 1] = e;
                    Some(p)
                }
            }
        }
    };
    Ok(MutationStep { pos: i, dir, sign: MutationSign::from_shift(shift), shift, before: (e, f), after: ExcSeq(out) })
}

/// Applies mutations at the given 0-based positions, in order.
pub fn apply_mutations(
    cat: &DerivedCategory,
    seq: &ExcSeq,
    positions: &[usize],
    dir: Direction,
) -> Result<MutationRun> {
    let mut cur = seq.clone();
    let mut steps = Vec::with_capacity(positions.len());
    for &p in positions {
        let step = mutate_step(cat, &cur, p, dir)?;
        cur = step.after.clone();
        steps.push(step);
    }
    Ok(MutationRun { seq: cur, steps })
}

/// Positions of `μ_{n-1}(μ_{n-2}μ_{n-1})…(μ_1…μ_{n-1})` in application order.
pub fn mu_rev_positions(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for start in 0..n.saturating_sub(1) {
        out.extend((start..n - 1).rev());
    }
    out
}

/// Positions of `μ_1(μ_2μ_1)…(μ_{n-1}…μ_1)` in application order.
pub fn mu_rev_positions_alt(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for k in (1..n).rev() {
        out.extend(0..k);
    }
    out
}

fn require_complete(cat: &DerivedCategory, seq: &ExcSeq) -> Result<()> {
    if seq.len() != cat.rank() {
        return Err(Error::Incomplete { expected: cat.rank(), got: seq.len() });
    }
    Ok(())
}

/// The reversing composite of `n(n-1)/2` right mutations.
pub fn mu_rev(cat: &DerivedCategory, seq: &ExcSeq) -> Result<MutationRun> {
    require_complete(cat, seq)?;
    apply_mutations(cat, seq, &mu_rev_positions(seq.len()), Direction::Right)
}

/// `μ_rev` evaluated through the second presentation.
pub fn mu_rev_alt(cat: &DerivedCategory, seq: &ExcSeq) -> Result<MutationRun> {
    require_complete(cat, seq)?;
    apply_mutations(cat, seq, &mu_rev_positions_alt(seq.len()), Direction::Right)
}

/// Inverse of [`mu_rev`]: the inverse mutations in reverse order.
pub fn mu_rev_inverse(cat: &DerivedCategory, seq: &ExcSeq) -> Result<MutationRun> {
    require_complete(cat, seq)?;
    let mut pos = mu_rev_positions(seq.len());
    pos.reverse();
    apply_mutations(cat, seq, &pos, Direction::Left)
}

/// `μ_{n-1}…μ_1`, which moves the first term to the end as `ν^{-1}E_1`.
pub fn rotate(cat: &DerivedCategory, seq: &ExcSeq) -> Result<ExcSeq> {
    require_complete(cat, seq)?;
    let n = seq.len();
    let positions: Vec<usize> = (0..n.saturating_sub(1)).collect();
    let run = apply_mutations(cat, seq, &positions, Direction::Right)?;
    if n > 0 {
        let mut expected: Vec<DObj> = seq.0[1..].to_vec();
        expected.push(cat.nu_inv(seq.0[0]));
        if run.seq.0 != expected {
            return Err(Error::Internal(format!(
                "rotation of {} gave {}, expected {}",
                seq.show(cat),
                run.seq.show(cat),
                ExcSeq(expected).show(cat)
            )));
        }
    }
    Ok(run.seq)
}

/// Extends a module-level exceptional sequence to a complete one by
/// appending modules, depth first in root order.
pub fn complete_sequence(cat: &DerivedCategory, partial: &ExcSeq) -> Result<ExcSeq> {
    let start: Vec<DObj> = partial.0.iter().map(|x| x.module()).collect();
    if !is_exceptional(cat, &start) {
        return Err(Error::NotExceptional);
    }
    fn extend(cat: &DerivedCategory, cur: &mut Vec<DObj>) -> bool {
        if cur.len() == cat.rank() {
            return true;
        }
        for e in cat.all_modules() {
            if cur.iter().all(|&x| cat.ext_orthogonal(e, x)) {
                cur.push(e);
                if extend(cat, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut cur = start;
    if cur.len() > cat.rank() || !extend(cat, &mut cur) {
        return Err(Error::Internal("exceptional sequence has no completion".into()));
    }
    Ok(ExcSeq(cur))
}

/// All complete exceptional sequences of modules (degree 0).
pub fn enumerate_complete_sequences(cat: &DerivedCategory) -> Vec<ExcSeq> {
    fn go(cat: &DerivedCategory, cur: &mut Vec<DObj>, out: &mut Vec<ExcSeq>) {
        if cur.len() == cat.rank() {
            out.push(ExcSeq(cur.clone()));
            return;
        }
        for e in cat.all_modules() {
            if cur.iter().all(|&x| cat.ext_orthogonal(e, x)) {
                cur.push(e);
                go(cat, cur, out);
                cur.pop();
            }
        }
    }
    let mut all: Vec<ExcSeq> = cat
        .all_modules()
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            go(cat, &mut vec![first], &mut out);
            out
        })
        .collect();
    all.sort();
    all
}

/// Orders `items` into an exceptional sequence by a topological sort of the
/// relation "`Ext^•(A, B) != 0` forces `A` before `B`", breaking ties by
/// `key`. Returns `None` if no exceptional order exists.
pub fn exceptional_order<K: Ord>(cat: &DerivedCategory, items: &[DObj], key: impl Fn(DObj) -> K) -> Option<ExcSeq> {
    let k = items.len();
    let mut indeg = vec![0usize; k];
    let mut succ = vec![Vec::new(); k];
    for a in 0..k {
        for b in 0..k {
            if a != b && !cat.ext_orthogonal(items[a], items[b]) {
                succ[a].push(b);
                indeg[b] += 1;
            }
        }
    }
    let mut done = vec![false; k];
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let next = (0..k)
            .filter(|&v| !done[v] && indeg[v] == 0)
            .min_by(|&a, &b| key(items[a]).cmp(&key(items[b])).then(items[a].cmp(&items[b])))?;
        done[next] = true;
        out.push(items[next]);
        for &s in &succ[next] {
            indeg[s] -= 1;
        }
    }
    is_exceptional(cat, &out).then_some(ExcSeq(out))
}

/// Every exceptional ordering of `items` (all linear extensions of the Ext
/// relation that pass [`is_exceptional`]).
pub fn all_exceptional_orders(cat: &DerivedCategory, items: &[DObj]) -> Vec<ExcSeq> {
    fn go(cat: &DerivedCategory, rest: &mut Vec<DObj>, cur: &mut Vec<DObj>, out: &mut Vec<ExcSeq>) {
        if rest.is_empty() {
            out.push(ExcSeq(cur.clone()));
            return;
        }
        for idx in 0..rest.len() {
            let x = rest[idx];
            if cur.iter().all(|&c| cat.ext_orthogonal(x, c) && cat.ext_support(c, x).len() <= 1) {
                rest.remove(idx);
                cur.push(x);
                go(cat, rest, cur, out);
                cur.pop();
                rest.insert(idx, x);
            }
        }
    }
    let mut out = Vec::new();
    go(cat, &mut items.to_vec(), &mut Vec::new(), &mut out);
    out
}
