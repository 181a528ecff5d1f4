//! Homology tables `dim H_{i,j}` and the graded Euler characteristic.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::complex::{Bidegree, GradedComplex};
use crate::gf2::{block_ranks, reduce_complex};
use crate::poly::HalfLaurent;

/// Nonzero homology dimensions keyed by `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyTable {
    pub entries: BTreeMap<Bidegree, usize>,
}

impl HomologyTable {
    pub fn from_entries(entries: impl IntoIterator<Item = (Bidegree, usize)>) -> Self {
        HomologyTable { entries: entries.into_iter().filter(|&(_, d)| d > 0).collect() }
    }

    pub fn get(&self, i: i64, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    /// Aligned grid: one row per `i` (ascending), one column per `j`.
    pub fn to_grid(&self) -> String {
        if self.entries.is_empty() {
            return "(zero)\n".into();
        }
        let (is, js) = self.ranges();
        let width = js
            .iter()
            .map(|j| j.to_string().len())
            .chain(self.entries.values().map(|d| d.to_string().len()))
            .max()
            .unwrap_or(1)
            .max(2);
        let iw = is.iter().map(|i| i.to_string().len()).max().unwrap_or(1).max(3);
        let mut out = format!("{:>iw$} |", "i\\j");
        for j in &js {
            let _ = write!(out, " {j:>width$}");
        }
        out.push('\n');
        out.push_str(&"-".repeat(iw + 2 + js.len() * (width + 1)));
        out.push('\n');
        for i in &is {
            let _ = write!(out, "{i:>iw$} |");
            for j in &js {
                let d = self.get(*i, *j);
                let cell = if d == 0 { ".".to_string() } else { d.to_string() };
                let _ = write!(out, " {cell:>width$}");
            }
            out.push('\n');
        }
        out
    }

    /// `i` range and the `j` values of one parity spanning the table.
    fn ranges(&self) -> (Vec<i64>, Vec<i64>) {
        let imin = self.entries.keys().map(|k| k.0).min().unwrap_or(0);
        let imax = self.entries.keys().map(|k| k.0).max().unwrap_or(0);
        let jmin = self.entries.keys().map(|k| k.1).min().unwrap_or(0);
        let jmax = self.entries.keys().map(|k| k.1).max().unwrap_or(0);
        let same_parity = self.entries.keys().all(|k| (k.1 - jmin) % 2 == 0);
        let step = if same_parity { 2 } else { 1 };
        ((imin..=imax).collect(), (jmin..=jmax).step_by(step).collect())
    }

    pub fn to_latex(&self) -> String {
        let (is, js) = self.ranges();
        let mut out = format!("\\begin{{tabular}}{{r|{}}}\n", "c".repeat(js.len()));
        out.push_str("$i \\backslash j$");
        for j in &js {
            let _ = write!(out, " & ${j}$");
        }
        out.push_str(" \\\\\n\\hline\n");
        for i in &is {
            let _ = write!(out, "${i}$");
            for j in &js {
                let d = self.get(*i, *j);
                if d == 0 {
                    out.push_str(" & ");
                } else {
                    let _ = write!(out, " & {d}");
                }
            }
            out.push_str(" \\\\\n");
        }
        out.push_str("\\end{tabular}\n");
        out
    }

    /// `i<TAB>j<TAB>dim` lines sorted by `(i, j)`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("i\tj\tdim\n");
        for (&(i, j), d) in &self.entries {
            let _ = writeln!(out, "{i}\t{j}\t{d}");
        }
        out
    }
}

/// Homology from ranks of the differential blocks:
/// `dim H_{i,j} = dim C_{i,j} − rank d_{i,j} − rank d_{i−1,j}`.
pub fn homology_from_ranks(complex: &GradedComplex) -> HomologyTable {
    let ranks = block_ranks(complex);
    HomologyTable::from_entries(complex.blocks.iter().map(|(&(i, j), gens)| {
        let r_out = ranks.get(&(i, j)).copied().unwrap_or(0);
        let r_in = ranks.get(&(i - 1, j)).copied().unwrap_or(0);
        ((i, j), gens.len() - r_out - r_in)
    }))
}

/// Homology of a complex, computed on its Gaussian-cancelled reduction.
pub fn homology_table(complex: &GradedComplex) -> HomologyTable {
    homology_from_ranks(&reduce_complex(complex))
}

/// `Σ (−1)^i dim H_{i,j} t^j`.
pub fn graded_euler(table: &HomologyTable) -> HalfLaurent {
    HalfLaurent::from_t_terms(
        table.entries.iter().map(|(&(i, j), &d)| (j, if i.rem_euclid(2) == 1 { -(d as i64) } else { d as i64 })),
    )
}

/// The same alternating sum over chain groups.
pub fn chain_euler(complex: &GradedComplex) -> HalfLaurent {
    HalfLaurent::from_t_terms(complex.blocks.iter().map(|(&(i, j), g)| {
        let d = g.len() as i64;
        (j, if i.rem_euclid(2) == 1 { -d } else { d })
    }))
}
