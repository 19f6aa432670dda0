//! The Weyl group acting on `K0`, absolute length, m-noncrossing partitions,
//! and their bijection with m-configurations.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::derived::{DObj, DerivedCategory};
use crate::error::{Error, Result};
use crate::exceptional::{self, ExcSeq};
use crate::linalg::IntMatrix;
use crate::root_system::RootSystem;
use crate::silting::{self, DCollection};

/// Default cap on the group order accepted by [`Weyl::elements`].
pub const DEFAULT_GROUP_LIMIT: u128 = 500_000;

/// An element of `W`, as its matrix on the simple-root basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt(IntMatrix);

impl WeylElt {
    pub fn identity(n: usize) -> Self {
        Self(IntMatrix::identity(n))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.mul(&other.0))
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.0.apply(v)
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut p = self.clone();
        while !p.is_identity() {
            p = p.mul(self);
            k += 1;
        }
        k
    }

    pub fn inverse(&self) -> Self {
        let mut p = Self::identity(self.0.dim());
        for _ in 1..self.order() {
            p = p.mul(self);
        }
        p
    }
}

impl std::fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// The reflection group of a root system with its reflections and Coxeter
/// element `s_1 s_2 ... s_n`.
#[derive(Clone, Debug)]
pub struct Weyl {
    rs: RootSystem,
    reflections: Vec<WeylElt>,
    index: HashMap<WeylElt, usize>,
    coxeter: WeylElt,
}

impl Weyl {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let reflections: Vec<WeylElt> =
            rs.positive_roots().iter().map(|r| reflection_matrix(rs, r.as_slice())).collect::<Result<_>>()?;
        let index: HashMap<WeylElt, usize> = reflections.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        if index.len() != reflections.len() {
            return Err(Error::Internal("distinct roots gave equal reflections".into()));
        }
        let n = rs.rank();
        let mut coxeter = WeylElt::identity(n);
        for i in 0..n {
            coxeter = coxeter.mul(&reflections[rs.simple_root_index(i)]);
        }
        Ok(Self { rs: rs.clone(), reflections, index, coxeter })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn identity(&self) -> WeylElt {
        WeylElt::identity(self.rank())
    }

    /// Reflections indexed like the positive roots.
    pub fn reflections(&self) -> &[WeylElt] {
        &self.reflections
    }

    pub fn reflection(&self, root: usize) -> &WeylElt {
        &self.reflections[root]
    }

    /// `s_i`, 0-based.
    pub fn simple_reflection(&self, i: usize) -> &WeylElt {
        &self.reflections[self.rs.simple_root_index(i)]
    }

    /// The positive root of a reflection.
    pub fn reflection_index(&self, t: &WeylElt) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// `t_x` for a nonzero multiple of a root, either sign.
    pub fn reflection_along(&self, x: &[i64]) -> Result<&WeylElt> {
        let idx = self.rs.root_index(x).or_else(|| {
            let neg: Vec<i64> = x.iter().map(|v| -v).collect();
            self.rs.root_index(&neg)
        });
        idx.map(|i| &self.reflections[i]).ok_or_else(|| Error::NotARoot(x.to_vec()))
    }

    pub fn coxeter_element(&self) -> &WeylElt {
        &self.coxeter
    }

    /// `ℓ_T(w) = n - dim fix(w) = rank(w - 1)`.
    pub fn abs_length(&self, w: &WeylElt) -> usize {
        w.0.sub(&IntMatrix::identity(self.rank())).rank()
    }

    /// `|W| = prod (e_i + 1)`.
    pub fn group_order(&self) -> u128 {
        self.rs.exponents().iter().map(|&e| (e + 1) as u128).product()
    }

    /// All elements, by closure under the simple reflections.
    pub fn elements(&self, limit: u128) -> Result<Vec<WeylElt>> {
        let order = self.group_order();
        if order > limit {
            return Err(Error::WeylTooLarge(order.min(usize::MAX as u128) as usize));
        }
        let gens: Vec<&WeylElt> = (0..self.rank()).map(|i| self.simple_reflection(i)).collect();
        let mut seen: HashSet<WeylElt> = HashSet::from([self.identity()]);
        let mut out = vec![self.identity()];
        let mut head = 0;
        while head < out.len() {
            let w = out[head].clone();
            head += 1;
            for g in &gens {
                let x = w.mul(g);
                if seen.insert(x.clone()) {
                    out.push(x);
                }
            }
        }
        if out.len() as u128 != order {
            return Err(Error::Internal(format!("closure gave {} elements, expected {order}", out.len())));
        }
        Ok(out)
    }

    /// Whether `u ≤_T w` in absolute order.
    pub fn is_below(&self, u: &WeylElt, w: &WeylElt) -> bool {
        self.abs_length(u) + self.abs_length(&u.inverse().mul(w)) == self.abs_length(w)
    }

    /// All `(u, u^{-1} w)` with `u ≤_T w`, sorted by `ℓ_T(u)` and then by
    /// matrix. Generated downward from `w` by right multiplication with
    /// reflections that drop the length.
    pub fn interval(&self, w: &WeylElt) -> Vec<(WeylElt, WeylElt)> {
        let mut seen: HashMap<WeylElt, WeylElt> = HashMap::from([(w.clone(), self.identity())]);
        let mut layer = vec![w.clone()];
        let mut len = self.abs_length(w);
        while len > 0 {
            let mut next = Vec::new();
            for u in &layer {
                let rest = seen[u].clone();
                for t in &self.reflections {
                    let v = u.mul(t);
                    if seen.contains_key(&v) || self.abs_length(&v) + 1 != len {
                        continue;
                    }
                    seen.insert(v.clone(), t.mul(&rest));
                    next.push(v);
                }
            }
            layer = next;
            len -= 1;
        }
        let mut out: Vec<(usize, WeylElt, WeylElt)> =
            seen.into_iter().map(|(u, r)| (self.abs_length(&u), u, r)).collect();
        out.sort();
        out.into_iter().map(|(_, u, r)| (u, r)).collect()
    }

    /// All T-reduced words for `w`, as positive-root indices, in
    /// lexicographic order. `w` must lie below the Coxeter element.
    pub fn reflection_factorizations(&self, w: &WeylElt) -> Result<Vec<Vec<usize>>> {
        self.require_below_coxeter(w)?;
        let mut out = Vec::new();
        self.factor(w, &mut Vec::new(), &mut out, false);
        Ok(out)
    }

    /// The lexicographically first T-reduced word for `w`.
    pub fn first_factorization(&self, w: &WeylElt) -> Result<Vec<usize>> {
        self.require_below_coxeter(w)?;
        let mut out = Vec::new();
        self.factor(w, &mut Vec::new(), &mut out, true);
        out.pop().ok_or_else(|| Error::Internal("no reflection factorization".into()))
    }

    fn require_below_coxeter(&self, w: &WeylElt) -> Result<()> {
        if !self.is_below(w, &self.coxeter) {
            return Err(Error::NotBelowCoxeter);
        }
        Ok(())
    }

    fn factor(&self, w: &WeylElt, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, first: bool) {
        let len = self.abs_length(w);
        if len == 0 {
            out.push(prefix.clone());
            return;
        }
        for (i, t) in self.reflections.iter().enumerate() {
            let rest = t.mul(w);
            if self.abs_length(&rest) + 1 == len {
                prefix.push(i);
                self.factor(&rest, prefix, out, first);
                prefix.pop();
                if first && !out.is_empty() {
                    return;
                }
            }
        }
    }

    pub fn product(&self, parts: &[WeylElt]) -> WeylElt {
        parts.iter().fold(self.identity(), |acc, u| acc.mul(u))
    }

    /// Product of the reflections with the given root indices.
    pub fn word_product(&self, word: &[usize]) -> WeylElt {
        word.iter().fold(self.identity(), |acc, &i| acc.mul(&self.reflections[i]))
    }

    /// All m-noncrossing partitions: T-reduced factorizations of `c` into
    /// `m + 1` parts.
    pub fn enumerate_m_nc(&self, m: usize) -> Vec<NCTuple> {
        let c = self.coxeter.clone();
        let mut out: Vec<NCTuple> = self
            .interval(&c)
            .into_par_iter()
            .flat_map_iter(|(u, rest)| {
                let mut memo = HashMap::new();
                self.tails(&rest, m, &mut memo)
                    .into_iter()
                    .map(move |mut tail| {
                        tail.insert(0, u.clone());
                        NCTuple { parts: tail }
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        if m == 0 {
            out = vec![NCTuple { parts: vec![c] }];
        }
        out
    }

    /// Factorizations of `w` into `k` T-reduced parts.
    fn tails(
        &self,
        w: &WeylElt,
        k: usize,
        memo: &mut HashMap<(WeylElt, usize), Vec<Vec<WeylElt>>>,
    ) -> Vec<Vec<WeylElt>> {
        if k == 0 {
            return if w.is_identity() { vec![Vec::new()] } else { Vec::new() };
        }
        if k == 1 {
            return vec![vec![w.clone()]];
        }
        if let Some(v) = memo.get(&(w.clone(), k)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for (u, rest) in self.interval(w) {
            for mut tail in self.tails(&rest, k - 1, memo) {
                tail.insert(0, u.clone());
                out.push(tail);
            }
        }
        memo.insert((w.clone(), k), out.clone());
        out
    }

    /// `|enumerate_m_nc(m)|` without listing the tuples.
    pub fn count_m_nc(&self, m: usize) -> u128 {
        fn go(weyl: &Weyl, w: &WeylElt, k: usize, memo: &mut HashMap<(WeylElt, usize), u128>) -> u128 {
            if k == 1 {
                return 1;
            }
            if let Some(&v) = memo.get(&(w.clone(), k)) {
                return v;
            }
            let total = weyl.interval(w).iter().map(|(_, rest)| go(weyl, rest, k - 1, memo)).sum();
            memo.insert((w.clone(), k), total);
            total
        }
        go(self, &self.coxeter, m + 1, &mut HashMap::new())
    }

    pub fn is_nc_tuple(&self, t: &NCTuple) -> bool {
        let total: usize = t.parts.iter().map(|u| self.abs_length(u)).sum();
        total == self.rank() && self.product(&t.parts) == self.coxeter
    }
}

fn reflection_matrix(rs: &RootSystem, x: &[i64]) -> Result<WeylElt> {
    let n = rs.rank();
    let mut m = IntMatrix::zero(n);
    for k in 0..n {
        let mut e = vec![0; n];
        e[k] = 1;
        for (i, v) in rs.reflect(x, &e)?.into_iter().enumerate() {
            m.set(i, k, v);
        }
    }
    Ok(WeylElt(m))
}

/// `(u_1, ..., u_{m+1})` with product `c` and lengths adding up to `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NCTuple {
    pub parts: Vec<WeylElt>,
}

/// JSON form of an [`NCTuple`]: one reflection word per part, each
/// reflection given by its positive root, and optionally the matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NCTupleRecord {
    pub words: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<Vec<i64>>>>,
}

impl NCTuple {
    pub fn m(&self) -> usize {
        self.parts.len().saturating_sub(1)
    }

    pub fn to_record(&self, weyl: &Weyl, with_matrices: bool) -> Result<NCTupleRecord> {
        let words = self
            .parts
            .iter()
            .map(|u| {
                let w = weyl.first_factorization(u)?;
                Ok(w.iter().map(|&i| weyl.root_system().root(i).0.clone()).collect())
            })
            .collect::<Result<_>>()?;
        let matrices = with_matrices.then(|| self.parts.iter().map(|u| u.matrix().rows()).collect());
        Ok(NCTupleRecord { words, matrices })
    }

    pub fn from_record(weyl: &Weyl, rec: &NCTupleRecord) -> Result<Self> {
        let parts = rec
            .words
            .iter()
            .map(|word| word.iter().try_fold(weyl.identity(), |acc, root| Ok(acc.mul(weyl.reflection_along(root)?))))
            .collect::<Result<Vec<_>>>()?;
        let t = NCTuple { parts };
        if !weyl.is_nc_tuple(&t) {
            return Err(Error::Predicate("not a T-reduced factorization of the Coxeter element".into()));
        }
        Ok(t)
    }
}

/// `t_{[X]}`; independent of the degree since `t_x = t_{-x}`.
pub fn reflection_of_object(weyl: &Weyl, x: DObj) -> &WeylElt {
    weyl.reflection(x.root)
}

/// The wide subcategory generated by an exceptional sequence of modules:
/// the right perpendicular category of any completion's remaining terms.
pub fn wide_subcategory(cat: &DerivedCategory, chunk: &[DObj]) -> Result<Vec<DObj>> {
    let chunk: Vec<DObj> = chunk.iter().map(|x| x.module()).collect();
    let full = exceptional::complete_sequence(cat, &ExcSeq::new(chunk.clone()))?;
    let rest = &full.items()[chunk.len()..];
    Ok(cat
        .all_modules()
        .filter(|&z| rest.iter().all(|&g| cat.hom_dim(g, z) == 0 && cat.ext_dim(g, z, 1) == 0))
        .collect())
}

/// Members of `c` whose dimension vector is not a sum of two or more
/// dimension vectors of members of `c`.
pub fn simples_of_wide(cat: &DerivedCategory, c: &[DObj]) -> Vec<DObj> {
    let dims: Vec<&[i64]> = c.iter().map(|&x| cat.dim(x).as_slice()).collect();
    c.iter()
        .copied()
        .filter(|&s| {
            let target = cat.dim(s).as_slice();
            let fits = |v: &[i64]| v.iter().zip(target).all(|(a, b)| a <= b);
            // all nonempty sums bounded by the target
            let mut sums: HashSet<Vec<i64>> = HashSet::new();
            let mut queue: VecDeque<Vec<i64>> = dims.iter().filter(|d| fits(d)).map(|d| d.to_vec()).collect();
            while let Some(v) = queue.pop_front() {
                if !sums.insert(v.clone()) {
                    continue;
                }
                for d in &dims {
                    let w: Vec<i64> = v.iter().zip(d.iter()).map(|(a, b)| a + b).collect();
                    if w == target {
                        return false;
                    }
                    if fits(&w) {
                        queue.push_back(w);
                    }
                }
            }
            true
        })
        .collect()
}

/// The m-configuration `⊕ F_i[m+1-i]` of an m-noncrossing partition.
pub fn phi(cat: &DerivedCategory, weyl: &Weyl, t: &NCTuple) -> Result<DCollection> {
    let words: Vec<Vec<usize>> = t.parts.iter().map(|u| weyl.first_factorization(u)).collect::<Result<_>>()?;
    phi_with_words(cat, weyl, t, &words)
}

/// As [`phi`], with a chosen T-reduced word for each part.
pub fn phi_with_words(cat: &DerivedCategory, weyl: &Weyl, t: &NCTuple, words: &[Vec<usize>]) -> Result<DCollection> {
    if !weyl.is_nc_tuple(t) {
        return Err(Error::Predicate("not an m-noncrossing partition".into()));
    }
    let m = t.m() as i32;
    let all: Vec<DObj> = words.iter().flatten().map(|&r| DObj::new(r, 0)).collect();
    if !exceptional::is_exceptional(cat, &all) {
        return Err(Error::Internal("reflection word does not give an exceptional sequence".into()));
    }
    let mut out = Vec::new();
    for (i, (u, word)) in t.parts.iter().zip(words).enumerate() {
        let chunk: Vec<DObj> = word.iter().map(|&r| DObj::new(r, 0)).collect();
        let simples = simples_of_wide(cat, &wide_subcategory(cat, &chunk)?);
        if simples.len() != weyl.abs_length(u) {
            return Err(Error::Internal(format!(
                "wide subcategory of part {} has {} simples, expected {}",
                i + 1,
                simples.len(),
                weyl.abs_length(u)
            )));
        }
        out.extend(simples.into_iter().map(|s| s.shift(m - i as i32)));
    }
    let x = DCollection::new(out)?;
    if !silting::is_m_config(cat, &x, m) {
        return Err(Error::Internal(format!("image {} is not an m-configuration", x.show(cat))));
    }
    Ok(x)
}

/// Inverse of [`phi`]: the summands in degree `m+1-i` give `u_i`.
pub fn phi_inverse(cat: &DerivedCategory, weyl: &Weyl, x: &DCollection, m: usize) -> Result<NCTuple> {
    silting::check_config(cat, x)?;
    if !silting::is_m_config(cat, x, m as i32) {
        return Err(Error::Predicate(format!("{} lies outside degrees 0..={m}", x.show(cat))));
    }
    let mut parts = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let d = (m - i) as i32;
        let chunk: Vec<DObj> = x.items().iter().copied().filter(|a| a.degree == d).collect();
        let seq = exceptional::exceptional_order(cat, &chunk, |a| a.root).ok_or(Error::NotExceptional)?;
        parts.push(seq.items().iter().fold(weyl.identity(), |acc, &a| acc.mul(reflection_of_object(weyl, a))));
    }
    let t = NCTuple { parts };
    if !weyl.is_nc_tuple(&t) {
        return Err(Error::Internal("preimage is not T-reduced".into()));
    }
    Ok(t)
}
