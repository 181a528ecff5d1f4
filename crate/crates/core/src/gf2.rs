//! Linear algebra over the two-element field: packed row matrices, rank,
//! and Gaussian cancellation of chain complexes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::complex::{Bidegree, GradedComplex, SparseBlock};

const WORD: usize = 64;

/// Dense matrix over GF(2), one packed row of `u64` words per row.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(WORD);
        BitMatrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, true);
        }
        m
    }

    /// Rows given as lists of set column indices; repeated indices cancel.
    pub fn from_sparse(rows: &[Vec<u32>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for &c in row {
                m.toggle(r, c as usize);
            }
        }
        m
    }

    /// Rows written as strings of `0`/`1`.
    pub fn from_strings(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (r, s) in rows.iter().enumerate() {
            assert_eq!(s.len(), cols, "ragged rows");
            for (c, ch) in s.chars().enumerate() {
                m.set(r, c, ch == '1');
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / WORD];
        if bit {
            *w |= 1 << (c % WORD);
        } else {
            *w &= !(1 << (c % WORD));
        }
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / WORD] ^= 1 << (c % WORD);
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// True when no bit beyond `cols` is set.
    pub fn padding_is_zero(&self) -> bool {
        let tail = self.cols % WORD;
        tail == 0 || (0..self.rows).all(|r| self.data[r * self.stride + self.stride - 1] >> tail == 0)
    }

    /// Product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    for w in 0..out.stride {
                        out.data[r * out.stride + w] ^= other.data[k * other.stride + w];
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Row reduction in place; returns the rank.
    fn eliminate(&mut self) -> usize {
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let (word, bit) = (c / WORD, 1u64 << (c % WORD));
            let Some(p) = (rank..self.rows).find(|&r| self.data[r * self.stride + word] & bit != 0) else {
                continue;
            };
            if p != rank {
                for w in 0..self.stride {
                    self.data.swap(p * self.stride + w, rank * self.stride + w);
                }
            }
            let (head, tail) = self.data.split_at_mut((rank + 1) * self.stride);
            let pivot = &head[rank * self.stride + word..];
            for row in tail.chunks_exact_mut(self.stride) {
                if row[word] & bit != 0 {
                    for (x, y) in row[word..].iter_mut().zip(pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let s: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

pub fn rank(m: &BitMatrix) -> usize {
    m.clone().eliminate()
}

/// Dimension of the kernel of the map `x ↦ x·m`: here every row is the
/// image of one source basis vector, so this is `rows − rank`.
pub fn left_kernel_dim(m: &BitMatrix) -> usize {
    m.rows - rank(m)
}

/// Dimension of the kernel of `x ↦ m·x`.
pub fn kernel_dim(m: &BitMatrix) -> usize {
    m.cols - rank(m)
}

/// Textbook elimination on a matrix of booleans.
pub fn reference_rank(rows: &[Vec<bool>]) -> usize {
    let mut a: Vec<Vec<bool>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c]) else {
            continue;
        };
        a.swap(p, rank);
        for r in 0..a.len() {
            if r != rank && a[r][c] {
                for k in 0..cols {
                    a[r][k] ^= a[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the differential block `d_{i,j}` of a complex.
pub fn block_rank(complex: &GradedComplex, bideg: Bidegree) -> usize {
    let rows = complex.d(bideg);
    if rows.iter().all(|r| r.is_empty()) {
        return 0;
    }
    rank(&BitMatrix::from_sparse(rows, complex.dim((bideg.0 + 1, bideg.1))))
}

/// Ranks of all differential blocks, computed in parallel.
pub fn block_ranks(complex: &GradedComplex) -> BTreeMap<Bidegree, usize> {
    let keys: Vec<Bidegree> = complex.blocks.keys().copied().collect();
    keys.into_par_iter().map(|k| (k, block_rank(complex, k))).collect()
}

struct JBlock {
    /// `(i, generator count)` in ascending `i`.
    levels: Vec<(i64, usize)>,
    start: Vec<u32>,
    out: Vec<BTreeSet<u32>>,
    into: Vec<BTreeSet<u32>>,
    alive: Vec<bool>,
}

impl JBlock {
    fn new(complex: &GradedComplex, j: i64) -> Self {
        let levels: Vec<(i64, usize)> =
            complex.blocks.iter().filter(|((_, jj), _)| *jj == j).map(|(&(i, _), g)| (i, g.len())).collect();
        let mut start = Vec::with_capacity(levels.len() + 1);
        let mut total = 0u32;
        for &(_, len) in &levels {
            start.push(total);
            total += len as u32;
        }
        start.push(total);
        let mut out = vec![BTreeSet::new(); total as usize];
        let mut into = vec![BTreeSet::new(); total as usize];
        for (l, &(i, _)) in levels.iter().enumerate() {
            if !levels.get(l + 1).is_some_and(|(ni, _)| *ni == i + 1) {
                continue;
            }
            for (x, row) in complex.d((i, j)).iter().enumerate() {
                let src = start[l] + x as u32;
                for &y in row {
                    let dst = start[l + 1] + y;
                    out[src as usize].insert(dst);
                    into[dst as usize].insert(src);
                }
            }
        }
        JBlock { levels, start, out, into, alive: vec![true; total as usize] }
    }

    fn detach(&mut self, v: u32) {
        for w in std::mem::take(&mut self.out[v as usize]) {
            self.into[w as usize].remove(&v);
        }
        for u in std::mem::take(&mut self.into[v as usize]) {
            self.out[u as usize].remove(&v);
        }
        self.alive[v as usize] = false;
    }

    fn cancel_all(&mut self) {
        for x in 0..self.out.len() as u32 {
            let Some(&y) = self.out[x as usize].first() else {
                continue;
            };
            let preds: Vec<u32> = self.into[y as usize].iter().copied().filter(|&c| c != x).collect();
            let succs: Vec<u32> = self.out[x as usize].iter().copied().filter(|&w| w != y).collect();
            self.detach(x);
            self.detach(y);
            for &c in &preds {
                for &w in &succs {
                    if !self.out[c as usize].remove(&w) {
                        self.out[c as usize].insert(w);
                        self.into[w as usize].insert(c);
                    } else {
                        self.into[w as usize].remove(&c);
                    }
                }
            }
        }
    }
}

/// Gaussian cancellation: repeatedly removes a pair `x → y` joined by a
/// nonzero entry, correcting `d` on the remaining generators.
///
/// Pairs are taken lowest `i` first, first entry in basis order. Over GF(2)
/// the result has zero differential, so its dimensions are the homology.
pub fn reduce_complex(complex: &GradedComplex) -> GradedComplex {
    let degrees: Vec<i64> = complex.degrees().into_iter().collect();
    let reduced: Vec<(i64, JBlock)> = degrees
        .into_par_iter()
        .map(|j| {
            let mut b = JBlock::new(complex, j);
            b.cancel_all();
            (j, b)
        })
        .collect();

    let mut blocks = BTreeMap::new();
    let mut diff = BTreeMap::new();
    for (j, b) in reduced {
        // new index of every surviving node
        let mut renumber = vec![u32::MAX; b.alive.len()];
        let mut kept: Vec<Vec<u32>> = Vec::new();
        for (l, &(i, _)) in b.levels.iter().enumerate() {
            let gens = &complex.blocks[&(i, j)];
            let mut level = Vec::new();
            for v in b.start[l]..b.start[l + 1] {
                if b.alive[v as usize] {
                    renumber[v as usize] = level.len() as u32;
                    level.push(v);
                }
            }
            blocks.insert((i, j), level.iter().map(|&v| gens[(v - b.start[l]) as usize]).collect::<Vec<_>>());
            kept.push(level);
        }
        for (l, &(i, _)) in b.levels.iter().enumerate() {
            let rows: SparseBlock = kept[l]
                .iter()
                .map(|&v| {
                    let mut r: Vec<u32> = b.out[v as usize].iter().map(|&w| renumber[w as usize]).collect();
                    r.sort_unstable();
                    r
                })
                .collect();
            diff.insert((i, j), rows);
        }
    }
    blocks.retain(|_, g: &mut Vec<_>| !g.is_empty());
    diff.retain(|k, _| blocks.contains_key(k));
    GradedComplex { blocks, diff, shifts: complex.shifts }
}
