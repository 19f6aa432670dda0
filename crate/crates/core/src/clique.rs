//! Fixed-size clique enumeration on small graphs stored as bitsets.

use rayon::prelude::*;

#[derive(Clone, Debug)]
pub struct BitGraph {
    n: usize,
    words: usize,
    adj: Vec<Vec<u64>>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self { n, words, adj: vec![vec![0; words]; n] }
    }

    /// Builds the graph with an edge `{i, j}` wherever `edge(i, j)` holds
    /// (called once per unordered pair, `i < j`).
    pub fn from_fn(n: usize, edge: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let mut g = Self::new(n);
        let rows: Vec<Vec<usize>> =
            (0..n).into_par_iter().map(|i| (i + 1..n).filter(|&j| edge(i, j)).collect()).collect();
        for (i, js) in rows.into_iter().enumerate() {
            for j in js {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        self.adj[i][j / 64] |= 1 << (j % 64);
        self.adj[j][i / 64] |= 1 << (i % 64);
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j / 64] >> (j % 64) & 1 == 1
    }

    /// Neighbours of `v` with a larger index.
    fn later_neighbours(&self, v: usize) -> Vec<u64> {
        let mut set = self.adj[v].clone();
        for (w, word) in set.iter_mut().enumerate() {
            let lo = w * 64;
            if lo + 64 <= v + 1 {
                *word = 0;
            } else if lo <= v {
                *word &= !0u64 << (v + 1 - lo);
            }
        }
        set
    }

    /// All cliques with exactly `k` vertices, each listed once in increasing
    /// vertex order, in lexicographic order.
    pub fn cliques_of_size(&self, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        (0..self.n)
            .into_par_iter()
            .flat_map_iter(|v| {
                let mut out = Vec::new();
                let mut cur = vec![v];
                self.extend(&mut cur, self.later_neighbours(v), k, &mut out);
                out
            })
            .collect()
    }

    fn extend(&self, cur: &mut Vec<usize>, cand: Vec<u64>, k: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        if popcount(&cand) < need {
            return;
        }
        for w in 0..self.words {
            let mut word = cand[w];
            while word != 0 {
                let v = w * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                let next: Vec<u64> = cand.iter().zip(self.later_neighbours(v)).map(|(a, b)| a & b).collect();
                cur.push(v);
                self.extend(cur, next, k, out);
                cur.pop();
            }
        }
    }
}

fn popcount(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}
