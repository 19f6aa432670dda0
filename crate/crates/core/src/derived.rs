//! Indecomposable objects of the bounded derived category of a Dynkin path
//! algebra, and exact dimensions of their Hom spaces.
//!
//! Every indecomposable is a stalk complex `M[d]`, so an object is just a
//! positive-root index (Gabriel's theorem picks out `M`) and a degree.
//! Hom dimensions are computed without any linear algebra: projective
//! sources are read off the dimension vector, everything else is reduced
//! to that case through Serre duality `Hom(X, Y) = D Hom(Y, νX)` with
//! `ν = τ[1]`. The results only depend on the two modules and the degree
//! difference, so they are tabulated once when the category is built.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_system::{DimVector, RootSystem};

/// An indecomposable object `M[degree]`, with `M` the module whose
/// dimension vector is the positive root `root`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DObj {
    pub root: usize,
    pub degree: i32,
}

impl DObj {
    pub fn new(root: usize, degree: i32) -> Self {
        Self { root, degree }
    }

    pub fn shift(self, k: i32) -> Self {
        Self { root: self.root, degree: self.degree + k }
    }

    /// The underlying module, placed in degree 0.
    pub fn module(self) -> Self {
        Self { root: self.root, degree: 0 }
    }
}

impl Ord for DObj {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree, self.root).cmp(&(other.degree, other.root))
    }
}

impl PartialOrd for DObj {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Serialized form of a [`DObj`]: `{"dim":[1,1,0],"deg":1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DObjRecord {
    pub dim: Vec<i64>,
    pub deg: i32,
}

/// Autoequivalences of the derived category acting on indecomposables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Translate {
    Shift(i32),
    Tau,
    TauInv,
    Nu,
    NuInv,
    /// `F = [-2] τ^{-1}`.
    F,
    FInv,
}

/// A range of degrees, optionally admitting injective modules one degree
/// below the range and optionally dropping projective modules in the
/// lowest degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub lo: i32,
    pub hi: i32,
    #[serde(default)]
    pub plus_injectives: bool,
    #[serde(default)]
    pub minus_projectives: bool,
}

impl WindowSpec {
    pub fn new(lo: i32, hi: i32) -> Result<Self> {
        if lo > hi {
            return Err(Error::BadWindow { lo, hi });
        }
        Ok(Self { lo, hi, plus_injectives: false, minus_projectives: false })
    }

    /// Degrees `lo..=hi`. Panics if `lo > hi`.
    pub fn degrees(lo: i32, hi: i32) -> Self {
        Self::new(lo, hi).expect("lo <= hi")
    }

    /// Injective modules together with `mod H[i]` for `1 <= i <= m`.
    pub fn cluster_tilting(m: i32) -> Self {
        Self { plus_injectives: true, ..Self::degrees(1, m) }
    }

    /// `mod H[i]` for `0 <= i <= m`.
    pub fn config(m: i32) -> Self {
        Self::degrees(0, m)
    }

    /// As [`WindowSpec::config`] without the indecomposable projectives in degree 0.
    pub fn config_minus(m: i32) -> Self {
        Self { minus_projectives: true, ..Self::degrees(0, m) }
    }

    /// `mod H[i]` for `1 <= i <= m`.
    pub fn positive_silting(m: i32) -> Self {
        Self::degrees(1, m)
    }
}

impl fmt::Display for WindowSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degrees {}..={}", self.lo, self.hi)?;
        if self.plus_injectives {
            write!(f, " plus injectives in degree {}", self.lo - 1)?;
        }
        if self.minus_projectives {
            write!(f, " minus projectives in degree {}", self.lo)?;
        }
        Ok(())
    }
}

/// The derived category of a Dynkin quiver, with tabulated Hom dimensions.
#[derive(Debug)]
pub struct DerivedCategory {
    rs: RootSystem,
    tau: Vec<Option<usize>>,
    tau_inv: Vec<Option<usize>>,
    proj_vertex: Vec<Option<usize>>,
    inj_vertex: Vec<Option<usize>>,
    proj_root: Vec<usize>,
    inj_root: Vec<usize>,
    /// `dim Hom(M, N)` and `dim Ext^1(M, N)`, indexed `m * |Φ+| + n`.
    hom0: Vec<u32>,
    hom1: Vec<u32>,
}

impl DerivedCategory {
    pub fn new(rs: RootSystem) -> Result<Self> {
        if !rs.is_simply_laced() {
            return Err(Error::NotSimplyLaced(rs.family().letter()));
        }
        let n = rs.rank();
        let nr = rs.num_roots();
        let lookup =
            |v: &DimVector| rs.root_index(&v.0).ok_or_else(|| Error::Internal(format!("{v:?} is not a positive root")));
        let proj_root = rs.proj_dims().iter().map(lookup).collect::<Result<Vec<_>>>()?;
        let inj_root = rs.inj_dims().iter().map(lookup).collect::<Result<Vec<_>>>()?;
        let mut proj_vertex = vec![None; nr];
        let mut inj_vertex = vec![None; nr];
        for i in 0..n {
            proj_vertex[proj_root[i]] = Some(i);
            inj_vertex[inj_root[i]] = Some(i);
        }
        let mut tau = vec![None; nr];
        let mut tau_inv = vec![None; nr];
        for r in 0..nr {
            if proj_vertex[r].is_none() {
                let img = rs.coxeter_transform(&rs.root(r).0)?;
                let t = rs
                    .root_index(&img)
                    .ok_or_else(|| Error::Internal(format!("Φ{:?} = {img:?} is not a positive root", rs.root(r))))?;
                tau[r] = Some(t);
                tau_inv[t] = Some(r);
            }
        }
        // τ^{-1} is defined exactly on the non-injectives
        for r in 0..nr {
            if tau_inv[r].is_some() == inj_vertex[r].is_some() {
                return Err(Error::Internal("τ is not a bijection onto the non-injectives".into()));
            }
        }
        let mut cat =
            Self { rs, tau, tau_inv, proj_vertex, inj_vertex, proj_root, inj_root, hom0: Vec::new(), hom1: Vec::new() };
        let mut memo = HashMap::new();
        let mut hom0 = vec![0; nr * nr];
        let mut hom1 = vec![0; nr * nr];
        for a in 0..nr {
            for b in 0..nr {
                hom0[a * nr + b] = cat.serre_recursion(a, b, 0, &mut memo);
                hom1[a * nr + b] = cat.serre_recursion(a, b, 1, &mut memo);
            }
        }
        cat.hom0 = hom0;
        cat.hom1 = hom1;
        Ok(cat)
    }

    /// `dim Hom(M[0], N[d])`. A projective source reads off the dimension
    /// vector; otherwise `Hom(M, N[d]) = D Hom(N[d], τM[1])`.
    fn serre_recursion(&self, m: usize, n: usize, d: i32, memo: &mut HashMap<(usize, usize, i32), u32>) -> u32 {
        if !(0..=1).contains(&d) {
            return 0;
        }
        if let Some(&v) = memo.get(&(m, n, d)) {
            return v;
        }
        let v = match self.proj_vertex[m] {
            Some(i) => {
                if d == 0 {
                    self.rs.root(n).0[i] as u32
                } else {
                    0
                }
            }
            None => {
                let tm = self.tau[m].expect("non-projective roots have a τ-image");
                self.serre_recursion(n, tm, 1 - d, memo)
            }
        };
        memo.insert((m, n, d), v);
        v
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn num_roots(&self) -> usize {
        self.rs.num_roots()
    }

    pub fn dim(&self, x: DObj) -> &DimVector {
        self.rs.root(x.root)
    }

    pub fn is_projective(&self, x: DObj) -> bool {
        self.proj_vertex[x.root].is_some()
    }

    pub fn is_injective(&self, x: DObj) -> bool {
        self.inj_vertex[x.root].is_some()
    }

    /// `P_i[0]` for 0-based vertex `i`.
    pub fn projective(&self, i: usize) -> DObj {
        DObj::new(self.proj_root[i], 0)
    }

    pub fn injective(&self, i: usize) -> DObj {
        DObj::new(self.inj_root[i], 0)
    }

    pub fn simple(&self, i: usize) -> DObj {
        DObj::new(self.rs.simple_root_index(i), 0)
    }

    /// The object with dimension vector `dim` in degree `deg`.
    pub fn object(&self, dim: &[i64], deg: i32) -> Result<DObj> {
        if dim.len() != self.rank() {
            return Err(Error::LengthMismatch { got: dim.len(), rank: self.rank() });
        }
        let root = self.rs.root_index(dim).ok_or_else(|| Error::NotARoot(dim.to_vec()))?;
        Ok(DObj::new(root, deg))
    }

    pub fn all_modules(&self) -> impl Iterator<Item = DObj> + '_ {
        (0..self.num_roots()).map(|r| DObj::new(r, 0))
    }

    pub fn translate(&self, x: DObj, which: Translate) -> DObj {
        match which {
            Translate::Shift(k) => x.shift(k),
            Translate::Tau => match self.tau[x.root] {
                Some(t) => DObj::new(t, x.degree),
                None => {
                    let i = self.proj_vertex[x.root].expect("projective");
                    DObj::new(self.inj_root[i], x.degree - 1)
                }
            },
            Translate::TauInv => match self.tau_inv[x.root] {
                Some(t) => DObj::new(t, x.degree),
                None => {
                    let i = self.inj_vertex[x.root].expect("injective");
                    DObj::new(self.proj_root[i], x.degree + 1)
                }
            },
            Translate::Nu => self.translate(x, Translate::Tau).shift(1),
            Translate::NuInv => self.translate(x.shift(-1), Translate::TauInv),
            Translate::F => self.translate(x, Translate::TauInv).shift(-2),
            Translate::FInv => self.translate(x.shift(2), Translate::Tau),
        }
    }

    pub fn tau(&self, x: DObj) -> DObj {
        self.translate(x, Translate::Tau)
    }

    pub fn tau_inv(&self, x: DObj) -> DObj {
        self.translate(x, Translate::TauInv)
    }

    pub fn nu(&self, x: DObj) -> DObj {
        self.translate(x, Translate::Nu)
    }

    pub fn nu_inv(&self, x: DObj) -> DObj {
        self.translate(x, Translate::NuInv)
    }

    pub fn f(&self, x: DObj) -> DObj {
        self.translate(x, Translate::F)
    }

    pub fn f_inv(&self, x: DObj) -> DObj {
        self.translate(x, Translate::FInv)
    }

    /// `F^k(x)` for any integer `k`.
    pub fn f_pow(&self, mut x: DObj, k: i32) -> DObj {
        let step = if k >= 0 { Translate::F } else { Translate::FInv };
        for _ in 0..k.unsigned_abs() {
            x = self.translate(x, step);
        }
        x
    }

    /// `dim Hom_D(X, Y)`.
    #[inline]
    pub fn hom_dim(&self, x: DObj, y: DObj) -> u32 {
        let nr = self.num_roots();
        match y.degree - x.degree {
            0 => self.hom0[x.root * nr + y.root],
            1 => self.hom1[x.root * nr + y.root],
            _ => 0,
        }
    }

    /// `dim Ext^i(X, Y) = dim Hom(X, Y[i])`.
    #[inline]
    pub fn ext_dim(&self, x: DObj, y: DObj, i: i32) -> u32 {
        self.hom_dim(x, y.shift(i))
    }

    /// The (at most two) shifts `i` with `Ext^i(X, Y)` possibly nonzero,
    /// paired with the dimensions, nonzero entries only.
    pub fn ext_support(&self, x: DObj, y: DObj) -> Vec<(i32, u32)> {
        let base = x.degree - y.degree;
        [base, base + 1]
            .into_iter()
            .filter_map(|i| {
                let d = self.ext_dim(x, y, i);
                (d != 0).then_some((i, d))
            })
            .collect()
    }

    /// True iff `Ext^i(X, Y) = 0` for every integer `i`.
    pub fn ext_orthogonal(&self, x: DObj, y: DObj) -> bool {
        self.ext_support(x, y).is_empty()
    }

    /// Class in `K0`: `(-1)^deg · dim M`.
    pub fn class_of(&self, x: DObj) -> Vec<i64> {
        let s = if x.degree.rem_euclid(2) == 0 { 1 } else { -1 };
        self.dim(x).0.iter().map(|v| s * v).collect()
    }

    /// Inverse of [`class_of`](Self::class_of): the unique degree in `hint`
    /// with the parity forced by the sign of `class`.
    pub fn object_of_class(&self, class: &[i64], hint: (i32, i32)) -> Result<DObj> {
        let (root, odd) = if let Some(r) = self.rs.root_index(class) {
            (r, false)
        } else {
            let neg: Vec<i64> = class.iter().map(|v| -v).collect();
            match self.rs.root_index(&neg) {
                Some(r) => (r, true),
                None => return Err(Error::NotARoot(class.to_vec())),
            }
        };
        let matches = |d: i32| (d.rem_euclid(2) == 1) == odd;
        match (matches(hint.0), matches(hint.1)) {
            (true, false) => Ok(DObj::new(root, hint.0)),
            (false, true) => Ok(DObj::new(root, hint.1)),
            (true, true) if hint.0 == hint.1 => Ok(DObj::new(root, hint.0)),
            (true, true) => Err(Error::AmbiguousDegree { class: class.to_vec(), hint }),
            (false, false) => Err(Error::NoMatchingDegree { class: class.to_vec(), hint }),
        }
    }

    pub fn in_window(&self, x: DObj, w: &WindowSpec) -> bool {
        if w.plus_injectives && x.degree == w.lo - 1 && self.is_injective(x) {
            return true;
        }
        if w.minus_projectives && x.degree == w.lo && self.is_projective(x) {
            return false;
        }
        (w.lo..=w.hi).contains(&x.degree)
    }

    /// All indecomposables in the window, sorted canonically.
    pub fn window_objects(&self, w: &WindowSpec) -> Vec<DObj> {
        let mut out: Vec<DObj> = (w.lo - 1..=w.hi)
            .flat_map(|d| (0..self.num_roots()).map(move |r| DObj::new(r, d)))
            .filter(|&x| self.in_window(x, w))
            .collect();
        out.sort();
        out
    }

    pub fn to_record(&self, x: DObj) -> DObjRecord {
        DObjRecord { dim: self.dim(x).0.clone(), deg: x.degree }
    }

    pub fn from_record(&self, r: &DObjRecord) -> Result<DObj> {
        self.object(&r.dim, r.deg)
    }

    /// Short human-readable form, e.g. `(1,1)[1]`.
    pub fn show(&self, x: DObj) -> String {
        format!("{:?}[{}]", self.dim(x), x.degree)
    }
}
