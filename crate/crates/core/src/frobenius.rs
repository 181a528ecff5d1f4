//! The graded Frobenius algebras `A = <v-, v+>` and `B = <w-, w+>` over the
//! two-element field, their structure maps and the transition maps T1..T7.
//!
//! Every map is an explicit value table on basis tensors. Composites such as
//! `T1 = δ1∘μ1` are not used as definitions; they are checked as identities
//! in the test battery.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrobeniusError {
    #[error("DomainMismatch: `{map}` expects {expected}, got {got}")]
    DomainMismatch { map: String, expected: String, got: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    VMinus,
    VPlus,
    WMinus,
    WPlus,
}

use Basis::*;

impl Basis {
    pub fn space(self) -> Space {
        match self {
            VMinus | VPlus => Space::A,
            WMinus | WPlus => Space::B,
        }
    }

    pub fn degree(self) -> i32 {
        match self {
            VMinus => -1,
            VPlus => 1,
            WMinus => -2,
            WPlus => 2,
        }
    }

    pub fn is_plus(self) -> bool {
        matches!(self, VPlus | WPlus)
    }

    pub fn of(space: Space, plus: bool) -> Basis {
        match (space, plus) {
            (Space::A, false) => VMinus,
            (Space::A, true) => VPlus,
            (Space::B, false) => WMinus,
            (Space::B, true) => WPlus,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VMinus => "v-",
            VPlus => "v+",
            WMinus => "w-",
            WPlus => "w+",
        })
    }
}

pub type Tensor = Vec<Basis>;

fn signature_str(spaces: &[Space]) -> String {
    if spaces.is_empty() {
        return "Z2".into();
    }
    spaces.iter().map(|s| if *s == Space::A { "A" } else { "B" }).collect::<Vec<_>>().join("⊗")
}

/// All basis tensors of a tensor product of spaces.
pub fn basis_of(spaces: &[Space]) -> Vec<Tensor> {
    let mut out: Vec<Tensor> = vec![vec![]];
    for &s in spaces {
        out = out
            .into_iter()
            .flat_map(|t| {
                [false, true].into_iter().map(move |p| {
                    let mut t = t.clone();
                    t.push(Basis::of(s, p));
                    t
                })
            })
            .collect();
    }
    out
}

/// A formal sum of basis tensors with coefficients mod 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub spaces: Vec<Space>,
    terms: BTreeSet<Tensor>,
}

impl Element {
    pub fn zero(spaces: Vec<Space>) -> Self {
        Element { spaces, terms: BTreeSet::new() }
    }

    pub fn basis(t: Tensor) -> Self {
        let spaces = t.iter().map(|b| b.space()).collect();
        Element { spaces, terms: BTreeSet::from([t]) }
    }

    /// The scalar `1` of the ground field.
    pub fn one() -> Self {
        Element::basis(vec![])
    }

    pub fn from_terms(spaces: Vec<Space>, terms: impl IntoIterator<Item = Tensor>) -> Self {
        let mut e = Element::zero(spaces);
        for t in terms {
            e.add_term(t);
        }
        e
    }

    pub fn add_term(&mut self, t: Tensor) {
        debug_assert_eq!(t.iter().map(|b| b.space()).collect::<Vec<_>>(), self.spaces);
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    pub fn add(&mut self, other: &Element) {
        for t in &other.terms {
            self.add_term(t.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Tensor> {
        self.terms.iter()
    }

    /// Degree of a homogeneous element, `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<i32> {
        let mut degs = self.terms.iter().map(|t| t.iter().map(|b| b.degree()).sum::<i32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                if t.is_empty() {
                    "1".to_string()
                } else {
                    t.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("⊗")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A linear map between tensor products of `A`, `B` (or the ground field),
/// stored as its value on every basis tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    pub name: String,
    pub domain: Vec<Space>,
    pub codomain: Vec<Space>,
    table: BTreeMap<Tensor, Element>,
}

impl LinearMap {
    /// Builds a map from `(input, outputs)` rows; unlisted basis inputs map to zero.
    pub fn from_rows(
        name: &str,
        domain: Vec<Space>,
        codomain: Vec<Space>,
        rows: &[(Tensor, Vec<Tensor>)],
    ) -> Self {
        let mut table: BTreeMap<Tensor, Element> =
            basis_of(&domain).into_iter().map(|t| (t, Element::zero(codomain.clone()))).collect();
        for (input, outputs) in rows {
            let slot = table.get_mut(input).expect("row input in domain");
            for o in outputs {
                slot.add_term(o.clone());
            }
        }
        LinearMap { name: name.into(), domain, codomain, table }
    }

    pub fn identity(spaces: Vec<Space>) -> Self {
        let name = signature_str(&spaces);
        let table = basis_of(&spaces).into_iter().map(|t| (t.clone(), Element::basis(t))).collect();
        LinearMap { name, domain: spaces.clone(), codomain: spaces, table }
    }

    /// Transposition of the two factors of `S⊗S`.
    pub fn flip(space: Space) -> Self {
        let spaces = vec![space, space];
        let table = basis_of(&spaces)
            .into_iter()
            .map(|t| (t.clone(), Element::basis(vec![t[1], t[0]])))
            .collect();
        LinearMap { name: format!("φ{}", if space == Space::A { 1 } else { 2 }), domain: spaces.clone(), codomain: spaces, table }
    }

    pub fn zero(domain: Vec<Space>, codomain: Vec<Space>) -> Self {
        LinearMap::from_rows("0", domain, codomain, &[])
    }

    pub fn on_basis(&self, t: &[Basis]) -> &Element {
        &self.table[t]
    }

    pub fn apply(&self, x: &Element) -> Result<Element, FrobeniusError> {
        if x.spaces != self.domain {
            return Err(FrobeniusError::DomainMismatch {
                map: self.name.clone(),
                expected: signature_str(&self.domain),
                got: signature_str(&x.spaces),
            });
        }
        let mut out = Element::zero(self.codomain.clone());
        for t in x.terms() {
            out.add(&self.table[t]);
        }
        Ok(out)
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &LinearMap) -> Result<LinearMap, FrobeniusError> {
        if inner.codomain != self.domain {
            return Err(FrobeniusError::DomainMismatch {
                map: self.name.clone(),
                expected: signature_str(&self.domain),
                got: signature_str(&inner.codomain),
            });
        }
        let table = inner
            .table
            .iter()
            .map(|(t, v)| Ok((t.clone(), self.apply(v)?)))
            .collect::<Result<_, FrobeniusError>>()?;
        Ok(LinearMap {
            name: format!("{}∘{}", self.name, inner.name),
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            table,
        })
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &LinearMap) -> LinearMap {
        let domain = [self.domain.clone(), other.domain.clone()].concat();
        let codomain = [self.codomain.clone(), other.codomain.clone()].concat();
        let split = self.domain.len();
        let table = basis_of(&domain)
            .into_iter()
            .map(|t| {
                let left = &self.table[&t[..split]];
                let right = &other.table[&t[split..]];
                let mut out = Element::zero(codomain.clone());
                for a in left.terms() {
                    for b in right.terms() {
                        out.add_term([a.clone(), b.clone()].concat());
                    }
                }
                (t, out)
            })
            .collect();
        LinearMap { name: format!("({}⊗{})", self.name, other.name), domain, codomain, table }
    }

    pub fn is_zero(&self) -> bool {
        self.table.values().all(|v| v.is_zero())
    }

    /// Common degree of all nonzero basis images, if the map is homogeneous.
    pub fn degree(&self) -> Option<i32> {
        let mut deg = None;
        for (t, v) in &self.table {
            if v.is_zero() {
                continue;
            }
            let d = v.degree()? - t.iter().map(|b| b.degree()).sum::<i32>();
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Compares value tables, ignoring names.
    pub fn same_as(&self, other: &LinearMap) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.table == other.table
    }
}

/// Structure maps of `A` and `B`, plus the creation/destruction maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapName {
    Mu1,
    Delta1,
    Eta1,
    Eps1,
    Beta1,
    Iota,
    Pi,
    Mu2,
    Delta2,
    Eta2,
    Eps2,
    Eta1Bar,
    Eta2Bar,
    Eps1Bar,
    Eps2Bar,
    Tau,
    Sigma,
    /// Flip of `A⊗A`.
    Flip,
    /// Flip of `B⊗B`.
    Flip2,
}

/// The transition maps attached to cube edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TName {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
}

impl TName {
    pub const ALL: [TName; 7] = [TName::T1, TName::T2, TName::T3, TName::T4, TName::T5, TName::T6, TName::T7];

    pub fn declared_degree(self) -> i32 {
        match self {
            TName::T6 | TName::T7 => -1,
            _ => -2,
        }
    }
}

impl fmt::Display for TName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl MapName {
    pub const ALL: [MapName; 19] = [
        MapName::Mu1,
        MapName::Delta1,
        MapName::Eta1,
        MapName::Eps1,
        MapName::Beta1,
        MapName::Iota,
        MapName::Pi,
        MapName::Mu2,
        MapName::Delta2,
        MapName::Eta2,
        MapName::Eps2,
        MapName::Eta1Bar,
        MapName::Eta2Bar,
        MapName::Eps1Bar,
        MapName::Eps2Bar,
        MapName::Tau,
        MapName::Sigma,
        MapName::Flip,
        MapName::Flip2,
    ];

    pub fn declared_degree(self) -> i32 {
        use MapName::*;
        match self {
            Mu1 | Delta1 => -1,
            Eta1 | Eps1 => 1,
            Eta1Bar | Eps1Bar => -1,
            Mu2 | Delta2 => -2,
            Eta2 | Eps2 => 2,
            Eta2Bar | Eps2Bar => -2,
            // ι and π preserve degree; they are adjoint for a pairing of degree -2.
            Iota | Pi | Beta1 | Flip | Flip2 => 0,
            Tau => 2,
            Sigma => 1,
        }
    }
}

const A: Space = Space::A;
const B: Space = Space::B;

fn build_structure(name: MapName) -> LinearMap {
    use MapName::*;
    let r = |i: &[Basis], o: &[&[Basis]]| (i.to_vec(), o.iter().map(|t| t.to_vec()).collect::<Vec<_>>());
    match name {
        Mu1 => LinearMap::from_rows(
            "μ1",
            vec![A, A],
            vec![A],
            &[r(&[VPlus, VPlus], &[&[VPlus]]), r(&[VPlus, VMinus], &[&[VMinus]]), r(&[VMinus, VPlus], &[&[VMinus]])],
        ),
        Delta1 => LinearMap::from_rows(
            "δ1",
            vec![A],
            vec![A, A],
            &[r(&[VPlus], &[&[VPlus, VMinus], &[VMinus, VPlus]]), r(&[VMinus], &[&[VMinus, VMinus]])],
        ),
        Eta1 => LinearMap::from_rows("η1", vec![], vec![A], &[r(&[], &[&[VPlus]])]),
        Eps1 => LinearMap::from_rows("ε1", vec![A], vec![], &[r(&[VMinus], &[&[]])]),
        Beta1 => LinearMap::from_rows(
            "β1",
            vec![A, A],
            vec![],
            &[r(&[VPlus, VMinus], &[&[]]), r(&[VMinus, VPlus], &[&[]])],
        ),
        Iota => LinearMap::from_rows(
            "ι",
            vec![B],
            vec![A, A],
            &[r(&[WPlus], &[&[VPlus, VPlus]]), r(&[WMinus], &[&[VMinus, VMinus]])],
        ),
        Pi => LinearMap::from_rows(
            "π",
            vec![A, A],
            vec![B],
            &[r(&[VPlus, VPlus], &[&[WPlus]]), r(&[VMinus, VMinus], &[&[WMinus]])],
        ),
        Mu2 => LinearMap::from_rows(
            "μ2",
            vec![B, B],
            vec![B],
            &[r(&[WPlus, WPlus], &[&[WPlus]]), r(&[WPlus, WMinus], &[&[WMinus]]), r(&[WMinus, WPlus], &[&[WMinus]])],
        ),
        Delta2 => LinearMap::from_rows(
            "δ2",
            vec![B],
            vec![B, B],
            &[r(&[WPlus], &[&[WPlus, WMinus], &[WMinus, WPlus]]), r(&[WMinus], &[&[WMinus, WMinus]])],
        ),
        Eta2 => LinearMap::from_rows("η2", vec![], vec![B], &[r(&[], &[&[WPlus]])]),
        Eps2 => LinearMap::from_rows("ε2", vec![B], vec![], &[r(&[WMinus], &[&[]])]),
        Eta1Bar => LinearMap::from_rows("η̄1", vec![], vec![A], &[r(&[], &[&[VMinus]])]),
        Eta2Bar => LinearMap::from_rows("η̄2", vec![], vec![B], &[r(&[], &[&[WMinus]])]),
        Eps1Bar => LinearMap::from_rows("ε̄1", vec![A], vec![], &[r(&[VPlus], &[&[]])]),
        Eps2Bar => LinearMap::from_rows("ε̄2", vec![B], vec![], &[r(&[WPlus], &[&[]])]),
        Tau => LinearMap::from_rows("τ", vec![A], vec![A], &[r(&[VMinus], &[&[VPlus]])]),
        Sigma => LinearMap::from_rows("σ", vec![B], vec![A], &[r(&[WMinus], &[&[VMinus]])]),
        Flip => LinearMap::flip(A),
        Flip2 => LinearMap::flip(B),
    }
}

fn build_t(name: TName) -> LinearMap {
    let r = |i: &[Basis], o: &[&[Basis]]| (i.to_vec(), o.iter().map(|t| t.to_vec()).collect::<Vec<_>>());
    match name {
        TName::T1 => LinearMap::from_rows(
            "T1",
            vec![A, A],
            vec![A, A],
            &[
                r(&[VPlus, VPlus], &[&[VPlus, VMinus], &[VMinus, VPlus]]),
                r(&[VPlus, VMinus], &[&[VMinus, VMinus]]),
                r(&[VMinus, VPlus], &[&[VMinus, VMinus]]),
            ],
        ),
        TName::T2 => LinearMap::from_rows(
            "T2",
            vec![A],
            vec![A, B],
            &[r(&[VPlus], &[&[VPlus, WMinus]]), r(&[VMinus], &[&[VMinus, WMinus]])],
        ),
        TName::T3 => LinearMap::from_rows(
            "T3",
            vec![A, B],
            vec![A],
            &[r(&[VPlus, WPlus], &[&[VPlus]]), r(&[VMinus, WPlus], &[&[VMinus]])],
        ),
        TName::T4 => LinearMap::from_rows(
            "T4",
            vec![B],
            vec![B, B],
            &[r(&[WPlus], &[&[WPlus, WMinus], &[WMinus, WPlus]]), r(&[WMinus], &[&[WMinus, WMinus]])],
        ),
        TName::T5 => LinearMap::from_rows(
            "T5",
            vec![B, B],
            vec![B],
            &[r(&[WPlus, WPlus], &[&[WPlus]]), r(&[WPlus, WMinus], &[&[WMinus]]), r(&[WMinus, WPlus], &[&[WMinus]])],
        ),
        TName::T6 => LinearMap::from_rows("T6", vec![A], vec![B], &[r(&[VMinus], &[&[WMinus]])]),
        TName::T7 => LinearMap::from_rows(
            "T7",
            vec![A, A],
            vec![A],
            &[r(&[VPlus, VPlus], &[&[VPlus]]), r(&[VPlus, VMinus], &[&[VMinus]]), r(&[VMinus, VPlus], &[&[VMinus]])],
        ),
    }
}

/// The value table of a structure map.
pub fn structure(name: MapName) -> &'static LinearMap {
    static TABLES: OnceLock<Vec<LinearMap>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| MapName::ALL.iter().map(|&n| build_structure(n)).collect());
    &tables[MapName::ALL.iter().position(|&n| n == name).expect("listed")]
}

/// The value table of a transition map.
pub fn transition(name: TName) -> &'static LinearMap {
    static TABLES: OnceLock<Vec<LinearMap>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| TName::ALL.iter().map(|&n| build_t(n)).collect());
    &tables[name as usize]
}

pub fn structure_map(name: MapName, x: &Element) -> Result<Element, FrobeniusError> {
    structure(name).apply(x)
}

pub fn t_map(name: TName, x: &Element) -> Result<Element, FrobeniusError> {
    transition(name).apply(x)
}

/// A transition map on packed sign vectors: input bit `f` is set when
/// tensor factor `f` is a `+` generator; the result lists output vectors.
pub fn sign_table(name: TName) -> &'static [Vec<u8>] {
    static TABLES: OnceLock<Vec<Vec<Vec<u8>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        TName::ALL
            .iter()
            .map(|&n| {
                let m = transition(n);
                let pack = |t: &[Basis]| {
                    t.iter().enumerate().filter(|(_, b)| b.is_plus()).fold(0u8, |acc, (f, _)| acc | (1 << f))
                };
                let mut rows = vec![Vec::new(); 1 << m.domain.len()];
                for t in basis_of(&m.domain) {
                    rows[pack(&t) as usize] = m.on_basis(&t).terms().map(|o| pack(o)).collect();
                }
                rows
            })
            .collect()
    });
    &tables[name as usize]
}
