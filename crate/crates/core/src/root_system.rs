//! Dynkin quivers and their root-system data.
//!
//! A [`QuiverDescriptor`] names a Dynkin family and rank, and for the simply
//! laced families carries an orientation whose vertices are numbered
//! topologically (every arrow `i -> j` has `i < j`). [`RootSystem`] derives
//! everything the rest of the crate needs from it: positive roots in the
//! simple-root basis, the Euler and symmetric forms, the Coxeter
//! transformation, dimension vectors of indecomposable projectives and
//! injectives, exponents and the Coxeter number.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Dynkin family letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, Family::A | Family::D | Family::E)
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    fn admits_rank(self, n: usize) -> bool {
        match self {
            Family::A => n >= 1,
            Family::B | Family::C => n >= 2,
            Family::D => n >= 4,
            Family::E => (6..=8).contains(&n),
            Family::F => n == 4,
            Family::G => n == 2,
        }
    }
}

/// A Dynkin type such as `A3` or `E6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DynkinType {
    pub family: Family,
    pub rank: usize,
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownType(s.to_string());
        let mut chars = s.trim().chars();
        let family = chars.next().and_then(Family::from_letter).ok_or_else(bad)?;
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        if !family.admits_rank(rank) {
            return Err(bad());
        }
        Ok(DynkinType { family, rank })
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Quiver input, `{"family":"A","rank":3,"arrows":[[1,2],[2,3]]}`.
///
/// Vertices are 1-based in the serialized form, as in the usual notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverDescriptor {
    pub family: Family,
    pub rank: usize,
    #[serde(default)]
    pub arrows: Vec<[usize; 2]>,
}

impl QuiverDescriptor {
    /// The standard orientation: all arrows point from the lower to the
    /// higher vertex along the Bourbaki-style numbering. D_n branches at
    /// vertex n-2, E_n at vertex 3.
    pub fn standard(ty: DynkinType) -> Self {
        let n = ty.rank;
        let arrows = match ty.family {
            Family::A => (1..n).map(|i| [i, i + 1]).collect(),
            Family::D => {
                let mut a: Vec<[usize; 2]> = (1..n - 1).map(|i| [i, i + 1]).collect();
                a.push([n - 2, n]);
                a
            }
            Family::E => {
                let mut a: Vec<[usize; 2]> = (1..n - 1).map(|i| [i, i + 1]).collect();
                a.push([3, n]);
                a
            }
            _ => Vec::new(),
        };
        Self { family: ty.family, rank: n, arrows }
    }

    pub fn dynkin_type(&self) -> DynkinType {
        DynkinType { family: self.family, rank: self.rank }
    }

    /// Checks numbering, acyclicity and that the underlying graph is the
    /// stated Dynkin diagram.
    pub fn validate(&self) -> Result<()> {
        let n = self.rank;
        let bad = |msg: String| Err(Error::InvalidQuiver(msg));
        if !self.family.admits_rank(n) {
            return bad(format!("no Dynkin diagram {}{}", self.family.letter(), n));
        }
        if !self.family.is_simply_laced() {
            if !self.arrows.is_empty() {
                return bad(format!(
                    "family {} is described by its Cartan matrix; arrows are not accepted",
                    self.family.letter()
                ));
            }
            return Ok(());
        }
        let mut edges = BTreeSet::new();
        for &[i, j] in &self.arrows {
            if i == 0 || j == 0 || i > n || j > n {
                return bad(format!("arrow {i}->{j} mentions a vertex outside 1..={n}"));
            }
            if i >= j {
                return bad(format!("arrow {i}->{j} violates the topological numbering (need i < j)"));
            }
            if !edges.insert((i, j)) {
                return bad(format!("repeated arrow {i}->{j}"));
            }
        }
        if edges.len() != n - 1 {
            return bad(format!("expected {} arrows for a tree on {n} vertices, got {}", n - 1, edges.len()));
        }
        let mut adj = vec![Vec::new(); n + 1];
        for &(i, j) in &edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        // connectivity (n-1 edges + connected => tree)
        let mut seen = vec![false; n + 1];
        let mut queue = VecDeque::from([1usize]);
        seen[1] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return bad("underlying graph is disconnected".into());
        }
        let branch: Vec<usize> = (1..=n).filter(|&v| adj[v].len() >= 3).collect();
        if (1..=n).any(|v| adj[v].len() > 3) || branch.len() > 1 {
            return bad("underlying graph is not of Dynkin type".into());
        }
        let arms = match branch.first() {
            None => Vec::new(),
            Some(&b) => {
                let mut arms: Vec<usize> = adj[b]
                    .iter()
                    .map(|&start| {
                        let (mut prev, mut cur, mut len) = (b, start, 1);
                        loop {
                            let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
                            match next.as_slice() {
                                [] => break len,
                                [w] => {
                                    prev = cur;
                                    cur = *w;
                                    len += 1;
                                }
                                _ => unreachable!("single branch vertex"),
                            }
                        }
                    })
                    .collect();
                arms.sort_unstable();
                arms
            }
        };
        let ok = match self.family {
            Family::A => arms.is_empty(),
            Family::D => arms == vec![1, 1, n - 3],
            Family::E => arms == vec![1, 2, n - 4],
            _ => unreachable!(),
        };
        if !ok {
            return bad(format!("underlying graph is not the Dynkin diagram {}{}", self.family.letter(), n));
        }
        Ok(())
    }
}

/// A class in the Grothendieck group, in the basis of simple modules.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn neg(&self) -> DimVector {
        DimVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Debug for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Root-combinatorial data of a Dynkin quiver (or, for B/C/F/G, of a
/// Cartan matrix).
#[derive(Clone, Debug, Serialize)]
pub struct RootSystem {
    quiver: QuiverDescriptor,
    positive_roots: Vec<DimVector>,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
    euler_matrix: Option<IntMatrix>,
    sym_matrix: IntMatrix,
    coxeter_matrix: Option<IntMatrix>,
    #[serde(skip)]
    coxeter_inverse: Option<IntMatrix>,
    proj_dims: Vec<DimVector>,
    inj_dims: Vec<DimVector>,
    symmetrizers: Vec<i64>,
    exponents: Vec<i64>,
    coxeter_number: i64,
}

impl RootSystem {
    pub fn new(quiver: QuiverDescriptor) -> Result<Self> {
        quiver.validate()?;
        let n = quiver.rank;
        let (euler, sym, symmetrizers) = if quiver.family.is_simply_laced() {
            let mut e = IntMatrix::identity(n);
            for &[i, j] in &quiver.arrows {
                e.set(i - 1, j - 1, e.get(i - 1, j - 1) - 1);
            }
            let sym = IntMatrix::from_rows(
                &(0..n).map(|i| (0..n).map(|j| e.get(i, j) + e.get(j, i)).collect()).collect::<Vec<_>>(),
            );
            (Some(e), sym, vec![1; n])
        } else {
            let (sym, d) = valued_sym_matrix(quiver.family, n);
            (None, sym, d)
        };

        let positive_roots = positive_roots(&sym, &symmetrizers);
        let index = positive_roots.iter().enumerate().map(|(i, r)| (r.0.clone(), i)).collect();

        let mut exponents = exponents_from_heights(&positive_roots, n);
        exponents.sort_unstable();
        let np = positive_roots.len() as i64;
        if (2 * np) % n as i64 != 0 {
            return Err(Error::Internal(format!("2|Φ+| = {} not divisible by rank {n}", 2 * np)));
        }
        let coxeter_number = 2 * np / n as i64;

        let (coxeter_matrix, coxeter_inverse, proj_dims, inj_dims) = match &euler {
            Some(e) => {
                let e_inv = e
                    .unitriangular_inverse()
                    .ok_or_else(|| Error::Internal("Euler matrix is not unitriangular".into()))?;
                let phi = e_inv.mul(&e.transpose()).neg();
                let phi_inv = e_inv.transpose().mul(e).neg();
                let (p, i) = projective_injective_dims(&quiver);
                (Some(phi), Some(phi_inv), p, i)
            }
            None => (None, None, Vec::new(), Vec::new()),
        };

        let rs = RootSystem {
            quiver,
            positive_roots,
            index,
            euler_matrix: euler,
            sym_matrix: sym,
            coxeter_matrix,
            coxeter_inverse,
            proj_dims,
            inj_dims,
            symmetrizers,
            exponents,
            coxeter_number,
        };
        rs.check_invariants()?;
        Ok(rs)
    }

    pub fn of_type(ty: DynkinType) -> Result<Self> {
        Self::new(QuiverDescriptor::standard(ty))
    }

    fn check_invariants(&self) -> Result<()> {
        let n = self.rank();
        let fail = |m: String| Err(Error::Internal(m));
        if self.sym_matrix != self.sym_matrix.transpose() {
            return fail("symmetric form is not symmetric".into());
        }
        for i in 0..n {
            if self.sym_matrix.get(i, i) != 2 * self.symmetrizers[i] {
                return fail(format!("(S_{0},S_{0}) != 2 d_{0}", i + 1));
            }
        }
        if self.positive_roots.len() as i64 * 2 != n as i64 * self.coxeter_number {
            return fail("|Φ+| != n h / 2".into());
        }
        let sum: i64 = self.exponents.iter().sum();
        if sum != self.positive_roots.len() as i64 {
            return fail("sum of exponents != |Φ+|".into());
        }
        if let Some(phi) = &self.coxeter_matrix {
            for i in 0..n {
                let img = phi.apply(&self.proj_dims[i].0);
                if DimVector(img) != self.inj_dims[i].neg() {
                    return fail(format!("Φ(dim P_{0}) != -dim I_{0}", i + 1));
                }
            }
        }
        Ok(())
    }

    pub fn quiver(&self) -> &QuiverDescriptor {
        &self.quiver
    }

    pub fn family(&self) -> Family {
        self.quiver.family
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.quiver.dynkin_type()
    }

    pub fn rank(&self) -> usize {
        self.quiver.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        self.quiver.family.is_simply_laced()
    }

    pub fn positive_roots(&self) -> &[DimVector] {
        &self.positive_roots
    }

    pub fn root(&self, i: usize) -> &DimVector {
        &self.positive_roots[i]
    }

    pub fn num_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Index of a positive root given by its coordinates.
    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn simple_root_index(&self, i: usize) -> usize {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        self.root_index(&v).expect("simple roots are positive roots")
    }

    pub fn euler_matrix(&self) -> Option<&IntMatrix> {
        self.euler_matrix.as_ref()
    }

    pub fn sym_matrix(&self) -> &IntMatrix {
        &self.sym_matrix
    }

    pub fn coxeter_matrix(&self) -> Option<&IntMatrix> {
        self.coxeter_matrix.as_ref()
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.symmetrizers
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    /// `dim P_i` (0-based vertex `i`); empty slice for non simply laced types.
    pub fn proj_dims(&self) -> &[DimVector] {
        &self.proj_dims
    }

    pub fn inj_dims(&self) -> &[DimVector] {
        &self.inj_dims
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::LengthMismatch { got: v.len(), rank: self.rank() });
        }
        Ok(())
    }

    /// `<d, e> = sum d_i e_i - sum_{i->j} d_i e_j`.
    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> Result<i64> {
        self.check_len(d)?;
        self.check_len(e)?;
        let m = self.euler_matrix.as_ref().ok_or(Error::NotSimplyLaced(self.family().letter()))?;
        Ok(bilinear(m, d, e))
    }

    pub fn sym_form(&self, d: &[i64], e: &[i64]) -> Result<i64> {
        self.check_len(d)?;
        self.check_len(e)?;
        Ok(bilinear(&self.sym_matrix, d, e))
    }

    /// The reflection `t_x(v) = v - 2(v,x)/(x,x) x`.
    pub fn reflect(&self, x: &[i64], v: &[i64]) -> Result<Vec<i64>> {
        let xx = self.sym_form(x, x)?;
        if xx == 0 {
            return Err(Error::Isotropic);
        }
        let vx = self.sym_form(v, x)?;
        if (2 * vx) % xx != 0 {
            return Err(Error::Internal(format!("reflection along {x:?} is not integral on {v:?}")));
        }
        let k = 2 * vx / xx;
        Ok(v.iter().zip(x).map(|(a, b)| a - k * b).collect())
    }

    /// Fuss–Catalan number `prod(mh + e_i + 1) / prod(e_i + 1)`.
    ///
    /// Negative `m` is allowed; `|fuss_catalan(-m-1)|` is the positive
    /// Fuss–Catalan number.
    pub fn fuss_catalan(&self, m: i64) -> Result<i128> {
        let h = i128::from(self.coxeter_number);
        let m = i128::from(m);
        let num: i128 = self.exponents.iter().map(|&e| m * h + i128::from(e) + 1).product();
        let den: i128 = self.exponents.iter().map(|&e| i128::from(e) + 1).product();
        if num % den != 0 {
            return Err(Error::Internal(format!("Fuss–Catalan quotient {num}/{den} is not integral")));
        }
        Ok(num / den)
    }

    pub fn positive_fuss_catalan(&self, m: i64) -> Result<i128> {
        Ok(self.fuss_catalan(-m - 1)?.abs())
    }

    /// The Coxeter transformation `Φ = -E^{-1} E^T`.
    pub fn coxeter_transform(&self, d: &[i64]) -> Result<Vec<i64>> {
        self.check_len(d)?;
        let phi = self.coxeter_matrix.as_ref().ok_or(Error::NotSimplyLaced(self.family().letter()))?;
        Ok(phi.apply(d))
    }

    pub fn inverse_coxeter_transform(&self, d: &[i64]) -> Result<Vec<i64>> {
        self.check_len(d)?;
        let phi = self.coxeter_inverse.as_ref().ok_or(Error::NotSimplyLaced(self.family().letter()))?;
        Ok(phi.apply(d))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn bilinear(m: &IntMatrix, d: &[i64], e: &[i64]) -> i64 {
    let mut acc = 0;
    for (i, &di) in d.iter().enumerate() {
        if di == 0 {
            continue;
        }
        for (j, &ej) in e.iter().enumerate() {
            acc += di * m.get(i, j) * ej;
        }
    }
    acc
}

/// Symmetrized Cartan data `(α_i, α_j)` for the valued families, Bourbaki
/// numbering, with `(α_i, α_i) = 2 d_i`.
fn valued_sym_matrix(family: Family, n: usize) -> (IntMatrix, Vec<i64>) {
    let d: Vec<i64> = match family {
        Family::B => (0..n).map(|i| if i + 1 < n { 2 } else { 1 }).collect(),
        Family::C => (0..n).map(|i| if i + 1 < n { 1 } else { 2 }).collect(),
        Family::F => vec![2, 2, 1, 1],
        Family::G => vec![1, 3],
        _ => unreachable!("simply laced families use the quiver"),
    };
    let mut m = IntMatrix::zero(n);
    for i in 0..n {
        m.set(i, i, 2 * d[i]);
        if i + 1 < n {
            let v = -d[i].max(d[i + 1]);
            m.set(i, i + 1, v);
            m.set(i + 1, i, v);
        }
    }
    (m, d)
}

/// Closure of the simple roots under simple reflections, sorted by height
/// and then lexicographically descending (so simple roots come first in
/// vertex order).
fn positive_roots(sym: &IntMatrix, d: &[i64]) -> Vec<DimVector> {
    let n = d.len();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut seen: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = simple.into_iter().collect();
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            // s_i(β) = β - <β, α_i^∨> α_i with <β, α_i^∨> = (β, α_i) / d_i
            let pair: i64 = (0..n).map(|j| beta[j] * sym.get(j, i)).sum::<i64>() / d[i];
            if pair == 0 {
                continue;
            }
            let mut img = beta.clone();
            img[i] -= pair;
            if img.iter().all(|&x| x >= 0) && img.iter().any(|&x| x > 0) && seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    let mut roots: Vec<DimVector> = seen.into_iter().map(DimVector).collect();
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
    roots
}

/// Exponents as the dual partition of the height distribution of the
/// positive roots.
fn exponents_from_heights(roots: &[DimVector], n: usize) -> Vec<i64> {
    let max_h = roots.iter().map(DimVector::height).max().unwrap_or(0);
    let counts: Vec<usize> = (1..=max_h).map(|h| roots.iter().filter(|r| r.height() == h).count()).collect();
    (1..=n).map(|j| counts.iter().filter(|&&c| c >= j).count() as i64).collect()
}

/// `dim P_i` counts paths starting at `i`; `dim I_i` counts paths ending at `i`.
fn projective_injective_dims(q: &QuiverDescriptor) -> (Vec<DimVector>, Vec<DimVector>) {
    let n = q.rank;
    let mut paths = vec![vec![0i64; n]; n];
    for (i, row) in paths.iter_mut().enumerate() {
        row[i] = 1;
        for j in i + 1..n {
            row[j] = q.arrows.iter().filter(|a| a[1] - 1 == j).map(|a| row[a[0] - 1]).sum();
        }
    }
    let proj = paths.iter().map(|r| DimVector(r.clone())).collect();
    let inj = (0..n).map(|i| DimVector((0..n).map(|j| paths[j][i]).collect())).collect();
    (proj, inj)
}
