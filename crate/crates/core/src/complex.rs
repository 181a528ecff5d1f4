//! The bigraded chain complex of enhanced states with its GF(2)
//! differential, degree/homological shifts, mapping cones, and the
//! single-point cone splitting.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::divide::{PartialDivide, PointKind, Resolvable, Sign};
use crate::frobenius::{sign_table, TName};
use crate::states::{
    enhancements, sign_deltas, ComponentKind, Gradings, ResolutionWord, StateComponents, StateCube, StateError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error("UnsupportedSaddle at {point}: {detail}")]
    UnsupportedSaddle { point: String, detail: String },
    #[error("InternalError: {0}")]
    Internal(String),
    #[error("GradingMismatch: {0}")]
    GradingMismatch(String),
    #[error("point {point} cannot advance from word {word}")]
    NotAdvanceable { point: usize, word: String },
}

/// Basis label: the resolution of every point of the base divide, and the
/// component signs (bit `q` set when component `q` is `+`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub state: u64,
    pub signs: u64,
}

pub type Bidegree = (i64, i64);

/// A sparse GF(2) matrix block: for every source basis element, the sorted
/// indices of the target basis elements it hits.
pub type SparseBlock = Vec<Vec<u32>>;

/// Finite complex of bigraded GF(2) vector spaces.
///
/// `blocks[(i, j)]` is the ordered basis of `C_{i,j}`; `diff[(i, j)]` is the
/// block `d_{i,j} : C_{i,j} -> C_{i+1,j}`, present for every basis block.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedComplex {
    pub blocks: BTreeMap<Bidegree, Vec<Generator>>,
    pub diff: BTreeMap<Bidegree, SparseBlock>,
    /// Total `(homological, degree)` shift applied since construction.
    pub shifts: (i64, i64),
}

impl GradedComplex {
    pub fn dim(&self, bideg: Bidegree) -> usize {
        self.blocks.get(&bideg).map_or(0, |b| b.len())
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.values().map(|b| b.len()).sum()
    }

    /// Nonzero dimensions keyed by bidegree.
    pub fn dims(&self) -> BTreeMap<Bidegree, usize> {
        self.blocks.iter().filter(|(_, b)| !b.is_empty()).map(|(k, b)| (*k, b.len())).collect()
    }

    /// `d_{i,j}`, empty when `C_{i,j}` is zero.
    pub fn d(&self, bideg: Bidegree) -> &[Vec<u32>] {
        self.diff.get(&bideg).map_or(&[], |b| b.as_slice())
    }

    pub fn nonzero_entries(&self) -> usize {
        self.diff.values().flat_map(|b| b.iter()).map(|r| r.len()).sum()
    }

    /// Distinct `j` values carrying generators.
    pub fn degrees(&self) -> BTreeSet<i64> {
        self.blocks.keys().map(|&(_, j)| j).collect()
    }

    /// Toggles one matrix entry of `d_{i,j}`.
    pub fn toggle(&mut self, bideg: Bidegree, source: u32, target: u32) {
        let row = &mut self.diff.get_mut(&bideg).expect("block exists")[source as usize];
        match row.binary_search(&target) {
            Ok(k) => {
                row.remove(k);
            }
            Err(k) => row.insert(k, target),
        }
    }

    /// Regraded copy: `C[k]{l}_{i,j} = C_{i-k, j-l}`.
    pub fn shift(&self, k: i64, l: i64) -> GradedComplex {
        GradedComplex {
            blocks: self.blocks.iter().map(|(&(i, j), b)| ((i + k, j + l), b.clone())).collect(),
            diff: self.diff.iter().map(|(&(i, j), b)| ((i + k, j + l), b.clone())).collect(),
            shifts: (self.shifts.0 + k, self.shifts.1 + l),
        }
    }

    /// Every generator with its bidegree and index.
    pub fn index(&self) -> HashMap<Generator, (Bidegree, u32)> {
        self.blocks
            .iter()
            .flat_map(|(&bd, gens)| gens.iter().enumerate().map(move |(x, g)| (*g, (bd, x as u32))))
            .collect()
    }

    /// Basis sets and matrix entries per bidegree, as labelled sets; equal
    /// values mean the complexes coincide up to reordering each basis.
    pub fn canonical_form(&self) -> BTreeMap<Bidegree, (BTreeSet<Generator>, BTreeSet<(Generator, Generator)>)> {
        let mut out = BTreeMap::new();
        for (&(i, j), gens) in &self.blocks {
            if gens.is_empty() {
                continue;
            }
            let targets = self.blocks.get(&(i + 1, j));
            let mut entries = BTreeSet::new();
            for (x, row) in self.d((i, j)).iter().enumerate() {
                for &y in row {
                    entries.insert((gens[x], targets.expect("target block")[y as usize]));
                }
            }
            out.insert((i, j), (gens.iter().copied().collect(), entries));
        }
        out
    }

    /// Checks block shapes: one row per source generator, targets in range.
    pub fn check_shape(&self) -> Result<(), ComplexError> {
        for (&(i, j), gens) in &self.blocks {
            let rows = self.d((i, j));
            if rows.len() != gens.len() {
                return Err(ComplexError::GradingMismatch(format!(
                    "d_({i},{j}) has {} rows for {} generators",
                    rows.len(),
                    gens.len()
                )));
            }
            let tdim = self.dim((i + 1, j)) as u32;
            if rows.iter().flatten().any(|&y| y >= tdim) {
                return Err(ComplexError::GradingMismatch(format!("d_({i},{j}) leaves C_({},{j})", i + 1)));
            }
        }
        Ok(())
    }
}

/// Degree-preserving linear map between two graded complexes, blockwise:
/// `blocks[(i, j)][x]` lists target indices in the target's `(i, j)` block.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainMap {
    pub blocks: BTreeMap<Bidegree, SparseBlock>,
}

impl ChainMap {
    pub fn zero() -> Self {
        ChainMap::default()
    }

    pub fn get(&self, bideg: Bidegree) -> &[Vec<u32>] {
        self.blocks.get(&bideg).map_or(&[], |b| b.as_slice())
    }

    /// `f ∘ d0 = d1 ∘ f` over GF(2).
    pub fn is_chain_map(&self, source: &GradedComplex, target: &GradedComplex) -> bool {
        source.blocks.iter().all(|(&(i, j), gens)| {
            (0..gens.len()).all(|x| {
                let mut lhs = Parity::default();
                for &y in source.d((i, j)).get(x).map_or(&[][..], |r| r) {
                    for &z in self.get((i + 1, j)).get(y as usize).map_or(&[][..], |r| r) {
                        lhs.toggle(z);
                    }
                }
                let mut rhs = Parity::default();
                for &y in self.get((i, j)).get(x).map_or(&[][..], |r| r) {
                    for &z in target.d((i, j)).get(y as usize).map_or(&[][..], |r| r) {
                        rhs.toggle(z);
                    }
                }
                lhs.into_sorted() == rhs.into_sorted()
            })
        })
    }
}

#[derive(Default)]
struct Parity(BTreeSet<u32>);

impl Parity {
    fn toggle(&mut self, x: u32) {
        if !self.0.remove(&x) {
            self.0.insert(x);
        }
    }

    fn into_sorted(self) -> Vec<u32> {
        self.0.into_iter().collect()
    }
}

/// Mapping cone: `C_i = C0_i ⊕ C1_{i-1}` with `D = [[d0, 0], [f, d1]]`.
///
/// In each cone block the `C0` generators come first.
pub fn cone(source: &GradedComplex, target: &GradedComplex, f: &ChainMap) -> Result<GradedComplex, ComplexError> {
    source.check_shape()?;
    target.check_shape()?;
    for (&bd, rows) in &f.blocks {
        if rows.len() != source.dim(bd) {
            return Err(ComplexError::GradingMismatch(format!(
                "morphism block {bd:?} has {} rows, source has {}",
                rows.len(),
                source.dim(bd)
            )));
        }
        let tdim = target.dim(bd) as u32;
        if rows.iter().flatten().any(|&y| y >= tdim) {
            return Err(ComplexError::GradingMismatch(format!("morphism block {bd:?} leaves the target")));
        }
    }

    let mut keys: BTreeSet<Bidegree> = source.blocks.keys().copied().collect();
    keys.extend(target.blocks.keys().map(|&(i, j)| (i + 1, j)));

    let mut blocks = BTreeMap::new();
    for &(i, j) in &keys {
        let mut gens = source.blocks.get(&(i, j)).cloned().unwrap_or_default();
        gens.extend(target.blocks.get(&(i - 1, j)).into_iter().flatten().copied());
        blocks.insert((i, j), gens);
    }
    let mut diff = BTreeMap::new();
    for &(i, j) in &keys {
        let offset_next = source.dim((i + 1, j)) as u32;
        let mut rows: SparseBlock = Vec::with_capacity(blocks[&(i, j)].len());
        let src_rows = source.d((i, j));
        let f_rows = f.get((i, j));
        for x in 0..source.dim((i, j)) {
            let mut row: Vec<u32> = src_rows[x].clone();
            if let Some(fr) = f_rows.get(x) {
                row.extend(fr.iter().map(|&y| y + offset_next));
            }
            row.sort_unstable();
            rows.push(row);
        }
        for row in target.d((i - 1, j)) {
            rows.push(row.iter().map(|&y| y + offset_next).collect());
        }
        diff.insert((i, j), rows);
    }
    Ok(GradedComplex { blocks, diff, shifts: (0, 0) })
}

/// `d_{i+1} ∘ d_i = 0` in every bidegree.
pub fn check_d_squared(complex: &GradedComplex) -> bool {
    complex.blocks.keys().all(|&(i, j)| {
        let next = complex.d((i + 1, j));
        complex.d((i, j)).iter().all(|row| {
            let mut acc = Parity::default();
            for &y in row {
                for &z in next.get(y as usize).map_or(&[][..], |r| r) {
                    acc.toggle(z);
                }
            }
            acc.0.is_empty()
        })
    })
}

/// Local analysis of one cube edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCase {
    /// Base-divide index of the flipped point.
    pub point: usize,
    pub source: u64,
    pub target: u64,
    pub case: TName,
    /// Source components at the site, in tensor-factor order
    /// (open before closed, then by component id).
    pub source_local: Vec<u32>,
    pub target_local: Vec<u32>,
    /// Non-local components: `(source id, target id)` with equal arc sets.
    pub correspondence: Vec<(u32, u32)>,
}

impl EdgeCase {
    /// Target sign vectors of the image of one source sign vector.
    pub fn images(&self, signs: u64) -> impl Iterator<Item = u64> + '_ {
        let base = self
            .correspondence
            .iter()
            .filter(|(s, _)| (signs >> s) & 1 == 1)
            .fold(0u64, |acc, &(_, t)| acc | (1 << t));
        let input = self
            .source_local
            .iter()
            .enumerate()
            .filter(|(_, &c)| (signs >> c) & 1 == 1)
            .fold(0usize, |acc, (f, _)| acc | (1 << f));
        sign_table(self.case)[input].iter().map(move |&out| {
            self.target_local
                .iter()
                .enumerate()
                .filter(|(f, _)| (out >> f) & 1 == 1)
                .fold(base, |acc, (_, &c)| acc | (1 << c))
        })
    }
}

fn local_components(comps: &StateComponents, arcs: &[u32]) -> Vec<u32> {
    let mut ids: Vec<u32> = arcs.iter().map(|&a| comps.arc_component[a as usize]).collect();
    ids.sort_unstable();
    ids.dedup();
    ids.sort_by_key(|&c| (comps.components[c as usize].kind, c));
    ids
}

fn kinds(comps: &StateComponents, ids: &[u32]) -> (usize, usize) {
    let open = ids.iter().filter(|&&c| comps.components[c as usize].kind == ComponentKind::Open).count();
    (open, ids.len() - open)
}

/// Classifies the edge flipping base point `point` from full word `source`.
pub(crate) fn classify_on(
    cube: &StateCube,
    source: u64,
    source_comps: &StateComponents,
    target_comps: &StateComponents,
    point: usize,
) -> Result<EdgeCase, ComplexError> {
    let kind = cube.base_points()[point];
    let target = source ^ (1 << point);
    let arcs = cube.local_arcs(point);
    let s_local = local_components(source_comps, &arcs);
    let t_local = local_components(target_comps, &arcs);

    let unsupported = |detail: &str| ComplexError::UnsupportedSaddle { point: kind.to_string(), detail: detail.into() };
    let case = match (kind, kinds(source_comps, &s_local), kinds(target_comps, &t_local)) {
        (PointKind::Crossing { .. }, (2, 0), (2, 0)) => TName::T1,
        (PointKind::Crossing { .. }, (1, 0), (1, 1)) => TName::T2,
        (PointKind::Crossing { .. }, (1, 1), (1, 0)) => TName::T3,
        (PointKind::Crossing { .. }, (0, 1), (0, 2)) => TName::T4,
        (PointKind::Crossing { .. }, (0, 2), (0, 1)) => TName::T5,
        (PointKind::Crossing { .. }, (1, 0), (1, 0)) => return Err(unsupported("one open component stays one open")),
        (PointKind::Crossing { .. }, (0, 1), (0, 1)) => {
            return Err(unsupported("one closed component stays one closed"))
        }
        (PointKind::TurnBack { .. }, (2, 0), (1, 0)) => TName::T7,
        (PointKind::TurnBack { .. }, (1, 0), (0, 1)) => TName::T6,
        (_, s, t) => {
            return Err(ComplexError::Internal(format!(
                "unexpected local change at {kind}: (open, closed) {s:?} -> {t:?}"
            )))
        }
    };

    let mut correspondence = Vec::new();
    for (sid, comp) in source_comps.components.iter().enumerate() {
        if s_local.contains(&(sid as u32)) {
            continue;
        }
        let tid = target_comps.arc_component[comp.arcs[0] as usize];
        let tcomp = &target_comps.components[tid as usize];
        if tcomp.arcs != comp.arcs || tcomp.kind != comp.kind || t_local.contains(&tid) {
            return Err(ComplexError::Internal(format!(
                "non-local component {sid} does not survive the edge at {kind}"
            )));
        }
        correspondence.push((sid as u32, tid));
    }
    Ok(EdgeCase { point, source, target, case, source_local: s_local, target_local: t_local, correspondence })
}

/// Classifies the cube edge at free point `point` leaving `word`.
pub fn classify_edge<D: Resolvable + ?Sized>(
    divide: &D,
    word: &ResolutionWord,
    point: usize,
) -> Result<EdgeCase, ComplexError> {
    let cube = StateCube::new(divide, 63)?;
    let source = cube.full_word(word)?;
    if point >= cube.n() {
        return Err(ComplexError::NotAdvanceable { point, word: word.to_string() });
    }
    let base_point = cube.free_point(point);
    if word.get(point) != cube.base_points()[base_point].edge_source_bit() {
        return Err(ComplexError::NotAdvanceable { point, word: word.to_string() });
    }
    let sc = cube.components(source);
    let tc = cube.components(source ^ (1 << base_point));
    classify_on(&cube, source, &sc, &tc, base_point)
}

struct Vertex {
    full: u64,
    comps: StateComponents,
    g: Gradings,
    /// Block index of each sign vector (indexed by the sign bits themselves).
    index: Vec<u32>,
}

impl Vertex {
    fn j(&self, signs: u64) -> i64 {
        let (d_op, d_cl) = sign_deltas(&self.comps, signs);
        self.g.k + 2 * d_cl + d_op
    }
}

fn resolve_vertices(cube: &StateCube) -> Result<Vec<Vertex>, ComplexError> {
    (0..1u64 << cube.n())
        .into_par_iter()
        .map(|c| {
            let full = cube.full_word(&ResolutionWord::from_counter(c, cube.n()))?;
            let comps = cube.components(full);
            if comps.len() > 63 {
                return Err(StateError::TooManyComponents(comps.len()).into());
            }
            let g = cube.gradings(full);
            Ok(Vertex { full, comps, g, index: Vec::new() })
        })
        .collect()
}

/// Lays out the basis blocks in counter order; fills each vertex's index.
fn layout(vertices: &mut [Vertex]) -> BTreeMap<Bidegree, Vec<Generator>> {
    let mut blocks: BTreeMap<Bidegree, Vec<Generator>> = BTreeMap::new();
    for v in vertices.iter_mut() {
        let mut index = vec![0u32; 1 << v.comps.len()];
        for (signs, _, _, j) in enhancements(&v.comps, v.g) {
            let block = blocks.entry((v.g.i, j)).or_default();
            index[signs as usize] = block.len() as u32;
            block.push(Generator { state: v.full, signs });
        }
        v.index = index;
    }
    blocks
}

fn vertex_of(cube: &StateCube, full: u64) -> usize {
    cube.free_word(full).counter() as usize
}

/// All cube edges leaving one vertex, as `(j, source index, target index)`.
fn vertex_rows(
    cube: &StateCube,
    vertices: &[Vertex],
    v: &Vertex,
) -> Result<Vec<(i64, u32, u32)>, ComplexError> {
    let mut out = Vec::new();
    for q in 0..cube.n() {
        let p = cube.free_point(q);
        let bit = (v.full >> p) & 1 == 1;
        if bit != cube.base_points()[p].edge_source_bit() {
            continue;
        }
        let t = &vertices[vertex_of(cube, v.full ^ (1 << p))];
        if t.g.i != v.g.i + 1 {
            return Err(ComplexError::Internal(format!("edge at point {p} does not raise i by one")));
        }
        let edge = classify_on(cube, v.full, &v.comps, &t.comps, p)?;
        for signs in 0..1u64 << v.comps.len() {
            let j = v.j(signs);
            for ts in edge.images(signs) {
                if t.j(ts) != j {
                    return Err(ComplexError::Internal(format!(
                        "edge {} at point {p} changes j from {j} to {}",
                        edge.case,
                        t.j(ts)
                    )));
                }
                out.push((j, v.index[signs as usize], t.index[ts as usize]));
            }
        }
    }
    Ok(out)
}

/// The complex of a (partial) divide.
pub fn build_complex<D: Resolvable + ?Sized>(divide: &D, max_points: usize) -> Result<GradedComplex, ComplexError> {
    let cube = StateCube::new(divide, max_points)?;
    let mut vertices = resolve_vertices(&cube)?;
    let blocks = layout(&mut vertices);

    let rows: Vec<Vec<(i64, u32, u32)>> =
        vertices.par_iter().map(|v| vertex_rows(&cube, &vertices, v)).collect::<Result<_, _>>()?;

    let mut diff: BTreeMap<Bidegree, SparseBlock> =
        blocks.iter().map(|(&k, g)| (k, vec![Vec::new(); g.len()])).collect();
    for (v, vrows) in vertices.iter().zip(rows) {
        for (j, x, y) in vrows {
            diff.get_mut(&(v.g.i, j)).expect("source block")[x as usize].push(y);
        }
    }
    for block in diff.values_mut() {
        for row in block.iter_mut() {
            reduce_mod2(row);
        }
    }
    Ok(GradedComplex { blocks, diff, shifts: (0, 0) })
}

/// Sorts and drops pairs of equal entries.
pub(crate) fn reduce_mod2(row: &mut Vec<u32>) {
    row.sort_unstable();
    let mut out = Vec::with_capacity(row.len());
    let mut k = 0;
    while k < row.len() {
        let mut m = k;
        while m < row.len() && row[m] == row[k] {
            m += 1;
        }
        if (m - k) % 2 == 1 {
            out.push(row[k]);
        }
        k = m;
    }
    *row = out;
}

/// One generated edge with the gradings of both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradedEdge {
    pub case: TName,
    pub source: (Bidegree, Generator),
    pub target: (Bidegree, Generator),
}

/// Every incidence of the differential, with gradings computed from each
/// endpoint's own state.
pub fn graded_edges<D: Resolvable + ?Sized>(divide: &D, max_points: usize) -> Result<Vec<GradedEdge>, ComplexError> {
    let cube = StateCube::new(divide, max_points)?;
    let mut out = Vec::new();
    for full in cube.vertices() {
        let sc = cube.components(full);
        let sg = cube.gradings(full);
        for q in 0..cube.n() {
            let p = cube.free_point(q);
            if ((full >> p) & 1 == 1) != cube.base_points()[p].edge_source_bit() {
                continue;
            }
            let tfull = full ^ (1 << p);
            let tc = cube.components(tfull);
            let tg = cube.gradings(tfull);
            let edge = classify_on(&cube, full, &sc, &tc, p)?;
            for signs in 0..1u64 << sc.len() {
                let (so, scl) = sign_deltas(&sc, signs);
                for ts in edge.images(signs) {
                    let (to, tcl) = sign_deltas(&tc, ts);
                    out.push(GradedEdge {
                        case: edge.case,
                        source: ((sg.i, sg.k + 2 * scl + so), Generator { state: full, signs }),
                        target: ((tg.i, tg.k + 2 * tcl + to), Generator { state: tfull, signs: ts }),
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeDirection {
    /// The morphism runs from the Θ0 piece to the Θ1 piece.
    ZeroToOne,
    /// The morphism runs from the Θ1 piece to the Θ0 piece.
    OneToZero,
}

/// The two pieces of the complex split at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCone {
    /// Base-divide index of the split point.
    pub point: usize,
    pub d0: PartialDivide,
    pub d1: PartialDivide,
    /// Degree shifts `(l0, l1)` applied to the Θ0 and Θ1 pieces.
    pub degree_shifts: (i64, i64),
    /// Homological shift applied to the cone.
    pub homological_shift: i64,
    pub direction: ConeDirection,
}

/// Splits a (partial) divide at free point `point`.
pub fn split_cone<D: Resolvable + ?Sized>(divide: &D, point: usize) -> Result<SplitCone, ComplexError> {
    let partial = divide.as_partial().into_owned();
    let cube = StateCube::new(&partial, 63)?;
    if point >= cube.n() {
        return Err(ComplexError::NotAdvanceable { point, word: String::new() });
    }
    let base = cube.free_point(point);
    let (degree_shifts, homological_shift, direction) = match cube.base_points()[base] {
        PointKind::Crossing { sign: Sign::Plus, .. } => ((2, 4), 0, ConeDirection::ZeroToOne),
        PointKind::Crossing { sign: Sign::Minus, .. } => ((-2, -4), -1, ConeDirection::OneToZero),
        PointKind::TurnBack { .. } => ((1, 2), 0, ConeDirection::ZeroToOne),
    };
    Ok(SplitCone {
        point: base,
        d0: partial.clone().pin(base, false),
        d1: partial.pin(base, true),
        degree_shifts,
        homological_shift,
        direction,
    })
}

/// Rebuilds a complex as the cone of the morphism between its split pieces.
///
/// The pieces are built independently as partial divides and shifted; the
/// connecting morphism is made of the cube edges at the split point.
pub fn assemble_split(split: &SplitCone, max_points: usize) -> Result<GradedComplex, ComplexError> {
    let c0 = build_complex(&split.d0, max_points)?.shift(0, split.degree_shifts.0);
    let c1 = build_complex(&split.d1, max_points)?.shift(0, split.degree_shifts.1);
    let (source, target, source_piece) = match split.direction {
        ConeDirection::ZeroToOne => (&c0, &c1, &split.d0),
        ConeDirection::OneToZero => (&c1, &c0, &split.d1),
    };

    // Connecting edges flip the pinned point; classify them on the unpinned divide.
    let mut unpinned = source_piece.clone();
    unpinned.fixed.remove(&split.point);
    let cube = StateCube::new(&unpinned, 63)?;
    let target_index = target.index();
    let mut f = ChainMap::zero();
    for (&bd, gens) in &source.blocks {
        let mut rows = Vec::with_capacity(gens.len());
        for g in gens {
            let sc = cube.components(g.state);
            let tc = cube.components(g.state ^ (1 << split.point));
            let edge = classify_on(&cube, g.state, &sc, &tc, split.point)?;
            let mut row = Vec::new();
            for ts in edge.images(g.signs) {
                let tg = Generator { state: edge.target, signs: ts };
                let &(tbd, y) = target_index
                    .get(&tg)
                    .ok_or_else(|| ComplexError::Internal("connecting edge leaves the target piece".into()))?;
                if tbd != bd {
                    return Err(ComplexError::GradingMismatch(format!(
                        "connecting edge maps {bd:?} to {tbd:?}"
                    )));
                }
                row.push(y);
            }
            reduce_mod2(&mut row);
            rows.push(row);
        }
        f.blocks.insert(bd, rows);
    }
    if !f.is_chain_map(source, target) {
        return Err(ComplexError::Internal("connecting morphism is not a chain map".into()));
    }
    Ok(cone(source, target, &f)?.shift(split.homological_shift, 0))
}
