//! Test-only oracles that do not go through the combinatorial machinery of
//! the library: explicit quiver representations over a prime field, Hom
//! spaces as solution spaces of linear systems, and brute-force searches
//! built on them.

#![allow(dead_code, clippy::needless_range_loop)]

use exseq_core::{DObj, DerivedCategory, QuiverDescriptor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const P: u64 = 2_147_483_647;

fn inv(a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % P, P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Row-reduces in place; returns pivot columns.
fn rref(rows: &mut [Vec<u64>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let iv = inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = *x * iv % P;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for k in 0..ncols {
                    rows[i][k] = (rows[i][k] + P - f * rows[r][k] % P) % P;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn nullspace(mut rows: Vec<Vec<u64>>, ncols: usize) -> Vec<Vec<u64>> {
    let pivots = rref(&mut rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (P - rows[r][f]) % P;
            }
            v
        })
        .collect()
}

fn rank(mut rows: Vec<Vec<u64>>, ncols: usize) -> usize {
    rref(&mut rows, ncols).len()
}

/// A representation: a vector space per vertex and a matrix per arrow
/// (`maps[k]` is `dim[j] x dim[i]` for arrow `k = i -> j`).
#[derive(Clone, Debug)]
pub struct Rep {
    pub dim: Vec<usize>,
    pub maps: Vec<Vec<Vec<u64>>>,
}

pub struct MatrixOracle {
    pub arrows: Vec<(usize, usize)>,
    pub n: usize,
    pub reps: Vec<Rep>,
}

impl MatrixOracle {
    /// One representation per positive root of `cat`, generic (random)
    /// matrices, redrawn until the endomorphism ring is one-dimensional.
    pub fn new(q: &QuiverDescriptor, roots: &[Vec<i64>], seed: u64) -> Self {
        let arrows: Vec<(usize, usize)> = q.arrows.iter().map(|a| (a[0] - 1, a[1] - 1)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut oracle = Self { arrows, n: q.rank, reps: Vec::new() };
        for root in roots {
            let dim: Vec<usize> = root.iter().map(|&x| x as usize).collect();
            loop {
                let maps = oracle
                    .arrows
                    .iter()
                    .map(|&(i, j)| (0..dim[j]).map(|_| (0..dim[i]).map(|_| rng.gen_range(0..P)).collect()).collect())
                    .collect();
                let rep = Rep { dim: dim.clone(), maps };
                if oracle.hom_basis(&rep, &rep).len() == 1 {
                    oracle.reps.push(rep);
                    break;
                }
            }
        }
        oracle
    }

    pub fn for_category(cat: &DerivedCategory, seed: u64) -> Self {
        let roots: Vec<Vec<i64>> = cat.root_system().positive_roots().iter().map(|r| r.0.clone()).collect();
        Self::new(cat.root_system().quiver(), &roots, seed)
    }

    fn offsets(&self, m: &Rep, n: &Rep) -> (Vec<usize>, usize) {
        let mut off = Vec::with_capacity(self.n);
        let mut total = 0;
        for v in 0..self.n {
            off.push(total);
            total += m.dim[v] * n.dim[v];
        }
        (off, total)
    }

    /// Linear conditions `N_a f_i = f_j M_a` on `(f_v)`, with `f_v` a
    /// `dim N_v x dim M_v` matrix flattened row-major.
    fn hom_system(&self, m: &Rep, n: &Rep) -> (Vec<Vec<u64>>, usize) {
        let (off, total) = self.offsets(m, n);
        let mut rows = Vec::new();
        for (k, &(i, j)) in self.arrows.iter().enumerate() {
            let (ma, na) = (&m.maps[k], &n.maps[k]);
            for r in 0..n.dim[j] {
                for c in 0..m.dim[i] {
                    let mut row = vec![0u64; total];
                    // (N_a f_i)[r][c] = sum_s N_a[r][s] f_i[s][c]
                    for s in 0..n.dim[i] {
                        let idx = off[i] + s * m.dim[i] + c;
                        row[idx] = (row[idx] + na[r][s]) % P;
                    }
                    // (f_j M_a)[r][c] = sum_s f_j[r][s] M_a[s][c]
                    for s in 0..m.dim[j] {
                        let idx = off[j] + r * m.dim[j] + s;
                        row[idx] = (row[idx] + P - ma[s][c]) % P;
                    }
                    rows.push(row);
                }
            }
        }
        (rows, total)
    }

    pub fn hom_basis(&self, m: &Rep, n: &Rep) -> Vec<Vec<u64>> {
        let (rows, total) = self.hom_system(m, n);
        nullspace(rows, total)
    }

    pub fn hom(&self, a: usize, b: usize) -> u32 {
        let (rows, total) = self.hom_system(&self.reps[a], &self.reps[b]);
        (total - rank(rows, total)) as u32
    }

    pub fn euler(&self, a: usize, b: usize) -> i64 {
        let (da, db) = (&self.reps[a].dim, &self.reps[b].dim);
        let mut e: i64 = (0..self.n).map(|v| (da[v] * db[v]) as i64).sum();
        for &(i, j) in &self.arrows {
            e -= (da[i] * db[j]) as i64;
        }
        e
    }

    pub fn ext1(&self, a: usize, b: usize) -> u32 {
        let e = self.hom(a, b) as i64 - self.euler(a, b);
        assert!(e >= 0);
        e as u32
    }

    /// `dim Hom_D(M[a], N[b])` from module Hom and Ext^1.
    pub fn derived_hom(&self, x: DObj, y: DObj) -> u32 {
        match y.degree - x.degree {
            0 => self.hom(x.root, y.root),
            1 => self.ext1(x.root, y.root),
            _ => 0,
        }
    }

    /// Whether module `x` is generated by the modules `gens`, i.e. lies in
    /// `Fac(⊕ gens)`: images of all homomorphisms span every vertex space.
    pub fn in_fac(&self, gens: &[usize], x: usize) -> bool {
        let xr = &self.reps[x];
        for v in 0..self.n {
            if xr.dim[v] == 0 {
                continue;
            }
            let mut span: Vec<Vec<u64>> = Vec::new();
            for &g in gens {
                let gr = &self.reps[g];
                let (off, _) = self.offsets(gr, xr);
                for f in self.hom_basis(gr, xr) {
                    // columns of f_v : G_v -> X_v
                    for c in 0..gr.dim[v] {
                        span.push((0..xr.dim[v]).map(|r| f[off[v] + r * gr.dim[v] + c]).collect());
                    }
                }
            }
            if span.is_empty() || rank(span, xr.dim[v]) < xr.dim[v] {
                return false;
            }
        }
        true
    }
}

/// Hom/Ext^1 tables of the oracle, indexed like the library's roots.
pub struct OracleTables {
    pub nr: usize,
    pub hom: Vec<u32>,
    pub ext: Vec<u32>,
}

impl OracleTables {
    pub fn new(o: &MatrixOracle) -> Self {
        let nr = o.reps.len();
        let mut hom = vec![0; nr * nr];
        let mut ext = vec![0; nr * nr];
        for a in 0..nr {
            for b in 0..nr {
                hom[a * nr + b] = o.hom(a, b);
                ext[a * nr + b] = o.ext1(a, b);
            }
        }
        Self { nr, hom, ext }
    }

    pub fn hom(&self, a: usize, b: usize) -> u32 {
        self.hom[a * self.nr + b]
    }

    pub fn ext(&self, a: usize, b: usize) -> u32 {
        self.ext[a * self.nr + b]
    }

    /// Complete exceptional sequences of modules by brute force over all
    /// ordered `n`-tuples.
    pub fn count_complete_sequences(&self, n: usize) -> usize {
        fn go(t: &OracleTables, n: usize, seq: &mut Vec<usize>) -> usize {
            if seq.len() == n {
                return 1;
            }
            let mut total = 0;
            for e in 0..t.nr {
                if seq.iter().all(|&p| t.hom(e, p) == 0 && t.ext(e, p) == 0 && p != e) {
                    seq.push(e);
                    total += go(t, n, seq);
                    seq.pop();
                }
            }
            total
        }
        go(self, n, &mut Vec::new())
    }

    /// Tilting modules: `n` pairwise Ext^1-orthogonal indecomposables.
    pub fn tilting_modules(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn go(t: &OracleTables, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for e in start..t.nr {
                if t.ext(e, e) == 0 && cur.iter().all(|&c| t.ext(e, c) == 0 && t.ext(c, e) == 0) {
                    cur.push(e);
                    go(t, n, e + 1, cur, out);
                    cur.pop();
                }
            }
        }
        go(self, n, 0, &mut Vec::new(), &mut out);
        out
    }
}
