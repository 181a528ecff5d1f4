//! Reference computations written directly from the definitions, sharing
//! no code with the library beyond the `Divide` data type.

use std::collections::BTreeMap;

use divide_kh::{Divide, Sign, WallItem};

/// Integer polynomial as exponent -> coefficient, zero entries removed.
pub type Poly = BTreeMap<i64, i64>;

pub fn clean(mut p: Poly) -> Poly {
    p.retain(|_, c| *c != 0);
    p
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    clean(out)
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(*e).or_insert(0) += c;
    }
    clean(out)
}

/// Turn-back pairs of a wall as the upper strand level of each pair.
fn turn_backs(wall: &[WallItem]) -> (Vec<usize>, Vec<usize>) {
    let (mut tbs, mut ends, mut level) = (Vec::new(), Vec::new(), 1);
    for item in wall {
        match item {
            WallItem::Endpoint => {
                ends.push(level);
                level += 1;
            }
            WallItem::TurnBack => {
                tbs.push(level);
                level += 2;
            }
        }
    }
    (tbs, ends)
}

/// What a state looks like: `(op, cl, i, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateSummary {
    pub op: usize,
    pub cl: usize,
    pub i: i64,
    pub k: i64,
}

/// Resolves the state whose splitting at point `q` is bit `q` of `bits`;
/// points are the crossings in word order, then the left turn-backs and
/// the right turn-backs, each top to bottom.
pub fn state(d: &Divide, bits: u64) -> StateSummary {
    let n = d.strands();
    let cols = d.word.len();
    // node (gap, level) with gap in 0..=cols, level in 1..=n
    let id = |gap: usize, level: usize| gap * n + level - 1;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); (cols + 1) * n];
    let mut ends = vec![0usize; (cols + 1) * n];
    let link = |a: usize, b: usize, adj: &mut Vec<Vec<usize>>| {
        adj[a].push(b);
        adj[b].push(a);
    };
    let (mut r_plus, mut r_minus, mut r_zero) = (0i64, 0i64, 0i64);
    for (c, x) in d.word.iter().enumerate() {
        let theta1 = (bits >> c) & 1 == 1;
        for level in 1..=n {
            if level != x.position && level != x.position + 1 {
                link(id(c, level), id(c + 1, level), &mut adj);
            }
        }
        let p = x.position;
        if theta1 {
            link(id(c, p), id(c, p + 1), &mut adj);
            link(id(c + 1, p), id(c + 1, p + 1), &mut adj);
            match x.sign {
                Sign::Plus => r_plus += 1,
                Sign::Minus => r_minus += 1,
            }
        } else {
            link(id(c, p), id(c + 1, p), &mut adj);
            link(id(c, p + 1), id(c + 1, p + 1), &mut adj);
        }
    }
    let mut q = cols;
    for (wall, gap) in [(&d.left, 0), (&d.right, cols)] {
        let (tbs, wall_ends) = turn_backs(wall);
        for level in wall_ends {
            ends[id(gap, level)] += 1;
        }
        for level in tbs {
            if (bits >> q) & 1 == 1 {
                link(id(gap, level), id(gap, level + 1), &mut adj);
                r_zero += 1;
            } else {
                ends[id(gap, level)] += 1;
                ends[id(gap, level + 1)] += 1;
            }
            q += 1;
        }
    }

    let mut seen = vec![false; adj.len()];
    let (mut op, mut cl) = (0, 0);
    for start in 0..adj.len() {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut end_count = 0;
        while let Some(v) = stack.pop() {
            end_count += ends[v];
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        match end_count {
            0 => cl += 1,
            2 => op += 1,
            other => panic!("component with {other} end points"),
        }
    }
    let n_plus = d.word.iter().filter(|x| x.sign == Sign::Plus).count() as i64;
    let n_minus = d.word.len() as i64 - n_plus;
    let n_zero = (q - cols) as i64;
    let writhe = 2 * n_plus - 2 * n_minus + n_zero;
    let i = r_plus - r_minus + r_zero;
    StateSummary { op, cl, i, k: writhe + 2 * i - r_zero }
}

pub fn point_count(d: &Divide) -> usize {
    d.word.len() + turn_backs(&d.left).0.len() + turn_backs(&d.right).0.len()
}

/// `Σ (−1)^i x^j` over enhanced states, with `x = √t`.
pub fn enhanced_sum(d: &Divide) -> Poly {
    let mut out = Poly::new();
    for bits in 0..1u64 << point_count(d) {
        let s = state(d, bits);
        let sign = if s.i.rem_euclid(2) == 1 { -1 } else { 1 };
        // (x + 1/x)^op (x^2 + x^-2)^cl
        let mut f: Poly = Poly::from([(s.k, sign)]);
        for _ in 0..s.op {
            f = mul(&f, &Poly::from([(-1, 1), (1, 1)]));
        }
        for _ in 0..s.cl {
            f = mul(&f, &Poly::from([(-2, 1), (2, 1)]));
        }
        out = add(&out, &f);
    }
    out
}

/// Exact division by `1 + x^2` from the lowest term upward.
pub fn divide_by_one_plus_square(p: &Poly) -> Option<Poly> {
    let top = p.keys().next_back().copied().unwrap_or(0);
    let mut rem = p.clone();
    let mut q = Poly::new();
    while let Some((&e, &c)) = rem.iter().next() {
        if e + 2 > top {
            return None;
        }
        q.insert(e, c);
        rem = add(&rem, &Poly::from([(e, -c), (e + 2, -c)]));
    }
    Some(q)
}

/// `W` in `√t` exponents, computed as `x·Σ(−1)^i x^j / (1 + x^2)`.
pub fn w(d: &Divide) -> Poly {
    let shifted: Poly = enhanced_sum(d).into_iter().map(|(e, c)| (e + 1, c)).collect();
    divide_by_one_plus_square(&shifted).expect("exact division")
}

/// `W` from a homology table through `W(t^2)(1 + t^2) = t·χ`, in `√t` exponents.
pub fn w_from_table(table: &[((i64, i64), i64)]) -> Poly {
    let chi: Poly = clean(table.iter().fold(Poly::new(), |mut acc, &((i, j), d)| {
        *acc.entry(j + 1).or_insert(0) += if i.rem_euclid(2) == 1 { -d } else { d };
        acc
    }));
    divide_by_one_plus_square(&chi).expect("exact division")
}

/// `Σ (−1)^i dim · t^j` in `t` exponents.
pub fn euler_of_table(table: &[((i64, i64), i64)]) -> Poly {
    clean(table.iter().fold(Poly::new(), |mut acc, &((i, j), d)| {
        *acc.entry(j).or_insert(0) += if i.rem_euclid(2) == 1 { -d } else { d };
        acc
    }))
}
