//! Cube vertices: resolving every singular point, extracting open and
//! closed components, and the (i, k, j) gradings.

use std::collections::BTreeMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use thiserror::Error;

use crate::divide::{DivideError, PartialDivide, PointKind, Resolvable, Sign, Side, SingularProfile, WallItem};

pub const DEFAULT_MAX_POINTS: usize = 24;

/// Hard ceiling: words and sign vectors are packed in `u64`.
const WORD_BITS: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error(transparent)]
    Invalid(#[from] DivideError),
    #[error("WordLengthMismatch: word has {got} bits, divide has {expected} unresolved points")]
    WordLengthMismatch { expected: usize, got: usize },
    #[error("TooManyPoints: {points} singular points exceeds the limit of {limit}")]
    TooManyPoints { points: usize, limit: usize },
    #[error("TooManyComponents: a state has {0} components, at most 63 are supported")]
    TooManyComponents(usize),
}

/// One splitting bit per unresolved point, in profile order.
///
/// Bit `q` of `bits` is the splitting at point `q`: `true` means Θ1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResolutionWord {
    bits: u64,
    len: u8,
}

impl ResolutionWord {
    pub fn new(bits: &[bool]) -> Self {
        assert!(bits.len() <= WORD_BITS);
        let mut w = 0u64;
        for (q, &b) in bits.iter().enumerate() {
            if b {
                w |= 1 << q;
            }
        }
        ResolutionWord { bits: w, len: bits.len() as u8 }
    }

    pub fn zeros(len: usize) -> Self {
        ResolutionWord { bits: 0, len: len as u8 }
    }

    /// The `counter`-th word when words are read as binary numbers with
    /// point 0 as the most significant digit.
    pub fn from_counter(counter: u64, len: usize) -> Self {
        let mut bits = 0;
        for q in 0..len {
            if (counter >> (len - 1 - q)) & 1 == 1 {
                bits |= 1 << q;
            }
        }
        ResolutionWord { bits, len: len as u8 }
    }

    pub fn counter(&self) -> u64 {
        let len = self.len as usize;
        (0..len).filter(|&q| self.get(q)).map(|q| 1u64 << (len - 1 - q)).sum()
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, q: usize) -> bool {
        (self.bits >> q) & 1 == 1
    }

    pub fn with(mut self, q: usize, bit: bool) -> Self {
        if bit {
            self.bits |= 1 << q;
        } else {
            self.bits &= !(1 << q);
        }
        self
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }
}

impl fmt::Display for ResolutionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.len() {
            f.write_str(if self.get(q) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for ResolutionWord {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(format!("invalid resolution bit `{c}`")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if bits.len() > WORD_BITS {
            return Err("resolution word too long".into());
        }
        Ok(ResolutionWord::new(&bits))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentKind {
    Open,
    Closed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    /// Sorted elementary-arc ids.
    pub arcs: Vec<u32>,
}

/// Connected components of a fully resolved state, ordered by smallest arc id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateComponents {
    pub components: Vec<Component>,
    /// Component index of every elementary arc.
    pub arc_component: Vec<u32>,
    pub op: usize,
    pub cl: usize,
}

impl StateComponents {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gradings {
    pub r_plus: i64,
    pub r_minus: i64,
    pub r_zero: i64,
    pub i: i64,
    pub k: i64,
}

/// A resolved state together with a sign on each component.
///
/// Bit `q` of `signs` is set when component `q` carries `+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EnhancedState {
    pub word: ResolutionWord,
    pub signs: u64,
    pub delta_cl: i64,
    pub delta_op: i64,
    pub i: i64,
    pub k: i64,
    pub j: i64,
}

/// Sorting key that orders sign vectors lexicographically by component id,
/// with `-` before `+`.
pub fn sign_order_key(signs: u64, components: usize) -> u64 {
    (0..components).filter(|&q| (signs >> q) & 1 == 1).map(|q| 1u64 << (components - 1 - q)).sum()
}

/// Sign vector whose lexicographic rank is `key` (inverse of [`sign_order_key`]).
pub fn signs_from_order_key(key: u64, components: usize) -> u64 {
    sign_order_key(key, components)
}

/// Signed counts `(delta_op, delta_cl)` of a sign vector.
pub fn sign_deltas(components: &StateComponents, signs: u64) -> (i64, i64) {
    let mut d_op = 0;
    let mut d_cl = 0;
    for (q, c) in components.components.iter().enumerate() {
        let s = if (signs >> q) & 1 == 1 { 1 } else { -1 };
        match c.kind {
            ComponentKind::Open => d_op += s,
            ComponentKind::Closed => d_cl += s,
        }
    }
    (d_op, d_cl)
}

/// Precomputed resolution data for a (partial) divide.
///
/// Elementary arcs: one per strand level per gap between consecutive word
/// columns; arc `gap * N + (level - 1)`. Full words are bitmasks over the
/// base divide's point indices; fixed points are already set.
#[derive(Debug, Clone)]
pub struct StateCube {
    pub profile: SingularProfile,
    base_points: Vec<PointKind>,
    free: Vec<usize>,
    fixed_mask: u64,
    strands: usize,
    gaps: usize,
    left_endpoints: Vec<usize>,
    right_endpoints: Vec<usize>,
}

impl StateCube {
    pub fn new<D: Resolvable + ?Sized>(divide: &D, max_points: usize) -> Result<Self, StateError> {
        let partial = divide.as_partial();
        let profile = partial.validate()?;
        let limit = max_points.min(WORD_BITS);
        if profile.n() > limit {
            return Err(StateError::TooManyPoints { points: profile.n(), limit });
        }
        Self::from_partial(&partial, profile)
    }

    fn from_partial(partial: &PartialDivide, profile: SingularProfile) -> Result<Self, StateError> {
        let base_profile = partial.base.validate()?;
        if base_profile.n() > WORD_BITS {
            return Err(StateError::TooManyPoints { points: base_profile.n(), limit: WORD_BITS });
        }
        let base_points = base_profile.points;
        let free: Vec<usize> = (0..base_points.len()).filter(|q| !partial.fixed.contains_key(q)).collect();
        let fixed_mask = partial
            .fixed
            .iter()
            .filter(|(&q, &b)| b && q < base_points.len())
            .fold(0u64, |m, (&q, _)| m | (1 << q));
        let endpoints = |wall: &[WallItem]| {
            let mut pos = 1;
            let mut out = Vec::new();
            for item in wall {
                if *item == WallItem::Endpoint {
                    out.push(pos);
                }
                pos += item.width();
            }
            out
        };
        Ok(StateCube {
            profile,
            strands: partial.base.strands(),
            gaps: partial.base.word.len() + 1,
            left_endpoints: endpoints(&partial.base.left),
            right_endpoints: endpoints(&partial.base.right),
            base_points,
            free,
            fixed_mask,
        })
    }

    /// Number of unresolved points.
    pub fn n(&self) -> usize {
        self.free.len()
    }

    pub fn arc_count(&self) -> usize {
        self.strands * self.gaps
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn base_points(&self) -> &[PointKind] {
        &self.base_points
    }

    /// Base point index of free point `q`.
    pub fn free_point(&self, q: usize) -> usize {
        self.free[q]
    }

    pub fn arc(&self, gap: usize, level: usize) -> u32 {
        (gap * self.strands + level - 1) as u32
    }

    /// Elementary arcs touching a singular point of the base divide.
    pub fn local_arcs(&self, point: usize) -> Vec<u32> {
        match self.base_points[point] {
            PointKind::Crossing { column, position, .. } => vec![
                self.arc(column, position),
                self.arc(column, position + 1),
                self.arc(column + 1, position),
                self.arc(column + 1, position + 1),
            ],
            PointKind::TurnBack { side, position } => {
                let gap = match side {
                    Side::Left => 0,
                    Side::Right => self.gaps - 1,
                };
                vec![self.arc(gap, position), self.arc(gap, position + 1)]
            }
        }
    }

    /// Full base word for a word over the free points.
    pub fn full_word(&self, word: &ResolutionWord) -> Result<u64, StateError> {
        if word.len() != self.n() {
            return Err(StateError::WordLengthMismatch { expected: self.n(), got: word.len() });
        }
        Ok(self
            .free
            .iter()
            .enumerate()
            .filter(|(q, _)| word.get(*q))
            .fold(self.fixed_mask, |m, (_, &p)| m | (1 << p)))
    }

    /// Word over the free points of a full base word.
    pub fn free_word(&self, full: u64) -> ResolutionWord {
        let bits: Vec<bool> = self.free.iter().map(|&p| (full >> p) & 1 == 1).collect();
        ResolutionWord::new(&bits)
    }

    /// Components of the state given by a full base word.
    pub fn components(&self, full: u64) -> StateComponents {
        let arcs = self.arc_count();
        let mut uf = UnionFind::<u32>::new(arcs);
        let mut ends = vec![0u8; arcs];
        let last = self.gaps - 1;

        for &p in &self.left_endpoints {
            ends[self.arc(0, p) as usize] += 1;
        }
        for &p in &self.right_endpoints {
            ends[self.arc(last, p) as usize] += 1;
        }

        let mut crossing_at = vec![None; self.gaps - 1];
        for (idx, pt) in self.base_points.iter().enumerate() {
            let bit = (full >> idx) & 1 == 1;
            match *pt {
                PointKind::Crossing { column, position, .. } => crossing_at[column] = Some((position, bit)),
                PointKind::TurnBack { side, position } => {
                    let gap = if side == Side::Left { 0 } else { last };
                    let (a, b) = (self.arc(gap, position), self.arc(gap, position + 1));
                    if bit {
                        uf.union(a, b);
                    } else {
                        ends[a as usize] += 1;
                        ends[b as usize] += 1;
                    }
                }
            }
        }
        for (column, slot) in crossing_at.iter().enumerate() {
            let (position, bit) = slot.expect("every word column is a crossing point");
            for level in 1..=self.strands {
                if level != position && level != position + 1 {
                    uf.union(self.arc(column, level), self.arc(column + 1, level));
                }
            }
            if bit {
                uf.union(self.arc(column, position), self.arc(column, position + 1));
                uf.union(self.arc(column + 1, position), self.arc(column + 1, position + 1));
            } else {
                uf.union(self.arc(column, position), self.arc(column + 1, position));
                uf.union(self.arc(column, position + 1), self.arc(column + 1, position + 1));
            }
        }

        let mut root_to_comp: Vec<u32> = vec![u32::MAX; arcs];
        let mut arc_component = vec![0u32; arcs];
        let mut members: Vec<Vec<u32>> = Vec::new();
        let mut end_counts: Vec<u32> = Vec::new();
        for a in 0..arcs as u32 {
            let r = uf.find(a) as usize;
            if root_to_comp[r] == u32::MAX {
                root_to_comp[r] = members.len() as u32;
                members.push(Vec::new());
                end_counts.push(0);
            }
            let c = root_to_comp[r];
            arc_component[a as usize] = c;
            members[c as usize].push(a);
            end_counts[c as usize] += ends[a as usize] as u32;
        }
        let components: Vec<Component> = members
            .into_iter()
            .zip(end_counts)
            .map(|(arcs, e)| {
                let kind = match e {
                    0 => ComponentKind::Closed,
                    2 => ComponentKind::Open,
                    _ => unreachable!("component with {e} end points"),
                };
                Component { kind, arcs }
            })
            .collect();
        let op = components.iter().filter(|c| c.kind == ComponentKind::Open).count();
        StateComponents { cl: components.len() - op, op, components, arc_component }
    }

    /// Gradings of the state given by a full base word, counting only free points.
    pub fn gradings(&self, full: u64) -> Gradings {
        let (mut r_plus, mut r_minus, mut r_zero) = (0, 0, 0);
        for &p in &self.free {
            if (full >> p) & 1 == 0 {
                continue;
            }
            match self.base_points[p] {
                PointKind::Crossing { sign: Sign::Plus, .. } => r_plus += 1,
                PointKind::Crossing { sign: Sign::Minus, .. } => r_minus += 1,
                PointKind::TurnBack { .. } => r_zero += 1,
            }
        }
        let i = r_plus - r_minus + r_zero;
        let k = self.profile.writhe() + 2 * i - r_zero;
        Gradings { r_plus, r_minus, r_zero, i, k }
    }

    /// Full words of all cube vertices in binary-counter order.
    pub fn vertices(&self) -> impl Iterator<Item = u64> + '_ {
        (0..1u64 << self.n()).map(move |c| {
            let w = ResolutionWord::from_counter(c, self.n());
            self.full_word(&w).expect("length matches")
        })
    }
}

pub fn resolve_state<D: Resolvable + ?Sized>(
    divide: &D,
    word: &ResolutionWord,
) -> Result<(StateComponents, Gradings), StateError> {
    let cube = StateCube::new(divide, WORD_BITS)?;
    let full = cube.full_word(word)?;
    Ok((cube.components(full), cube.gradings(full)))
}

/// All enhanced states grouped by `(i, j)`.
///
/// Within a group, states are ordered by resolution word (binary counter),
/// then by sign vector.
pub fn enumerate_enhanced<D: Resolvable + ?Sized>(
    divide: &D,
    max_points: usize,
) -> Result<BTreeMap<(i64, i64), Vec<EnhancedState>>, StateError> {
    let cube = StateCube::new(divide, max_points)?;
    let per_vertex: Vec<Vec<EnhancedState>> = (0..1u64 << cube.n())
        .into_par_iter()
        .map(|c| {
            let word = ResolutionWord::from_counter(c, cube.n());
            let full = cube.full_word(&word).expect("length matches");
            let comps = cube.components(full);
            if comps.len() > WORD_BITS {
                return Err(StateError::TooManyComponents(comps.len()));
            }
            let g = cube.gradings(full);
            Ok(enhancements(&comps, g)
                .map(|(signs, d_op, d_cl, j)| EnhancedState {
                    word,
                    signs,
                    delta_cl: d_cl,
                    delta_op: d_op,
                    i: g.i,
                    k: g.k,
                    j,
                })
                .collect())
        })
        .collect::<Result<_, _>>()?;

    let mut out: BTreeMap<(i64, i64), Vec<EnhancedState>> = BTreeMap::new();
    for s in per_vertex.into_iter().flatten() {
        out.entry((s.i, s.j)).or_default().push(s);
    }
    Ok(out)
}

/// Sign vectors of a state in lexicographic order, with `(signs, delta_op, delta_cl, j)`.
pub(crate) fn enhancements(
    comps: &StateComponents,
    g: Gradings,
) -> impl Iterator<Item = (u64, i64, i64, i64)> + '_ {
    let c = comps.len();
    (0..1u64 << c).map(move |key| {
        let signs = signs_from_order_key(key, c);
        let (d_op, d_cl) = sign_deltas(comps, signs);
        (signs, d_op, d_cl, g.k + 2 * d_cl + d_op)
    })
}
