//! Combinatorial OMS-divides: two walls of endpoints and turn-backs with a
//! signed crossing word between them.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivideError {
    #[error("StrandCountMismatch: left wall has {left} strands, right wall has {right}")]
    StrandCountMismatch { left: usize, right: usize },
    #[error("CrossingOutOfRange: crossing {index} at position {position} needs 1 <= position <= {max}")]
    CrossingOutOfRange { index: usize, position: usize, max: usize },
    #[error("EmptyDivide: a divide needs at least one strand")]
    EmptyDivide,
}

/// One item of a wall, read top to bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WallItem {
    /// A boundary end point, one strand position.
    #[serde(rename = "e")]
    Endpoint,
    /// A vertical tangent point pairing two adjacent strand positions.
    #[serde(rename = "m")]
    TurnBack,
}

impl WallItem {
    pub fn width(self) -> usize {
        match self {
            WallItem::Endpoint => 1,
            WallItem::TurnBack => 2,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            WallItem::Endpoint => 'e',
            WallItem::TurnBack => 'm',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "+")]
    Plus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A signed double point transposing strand positions `position` and `position + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub position: usize,
    pub sign: Sign,
}

impl Crossing {
    pub fn new(position: usize, sign: Sign) -> Self {
        Crossing { position, sign }
    }

    pub fn plus(position: usize) -> Self {
        Crossing::new(position, Sign::Plus)
    }

    pub fn minus(position: usize) -> Self {
        Crossing::new(position, Sign::Minus)
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.sign.symbol(), self.position)
    }
}

/// An ordered Morse signed divide in wall/word form.
///
/// Strand positions are 1-indexed from the top. The left wall holds the
/// minima of the horizontal projection, the right wall the maxima.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Divide {
    pub name: Option<String>,
    pub left: Vec<WallItem>,
    pub word: Vec<Crossing>,
    pub right: Vec<WallItem>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Where a singular point lives and what kind it is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointKind {
    /// Crossing `column` of the word (0-based) at strand `position`.
    Crossing { column: usize, position: usize, sign: Sign },
    /// Wall turn-back occupying strand positions `position` and `position + 1`.
    TurnBack { side: Side, position: usize },
}

impl PointKind {
    pub fn is_turn_back(&self) -> bool {
        matches!(self, PointKind::TurnBack { .. })
    }

    /// The resolution bit a cube edge at this point starts from.
    ///
    /// Edges raise the homological grading by one: `0 -> 1` at positive
    /// crossings and turn-backs, `1 -> 0` at negative crossings.
    pub fn edge_source_bit(&self) -> bool {
        matches!(self, PointKind::Crossing { sign: Sign::Minus, .. })
    }
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointKind::Crossing { column, position, sign } => {
                write!(f, "crossing #{column} ({}{position})", sign.symbol())
            }
            PointKind::TurnBack { side, position } => {
                let s = match side {
                    Side::Left => "left",
                    Side::Right => "right",
                };
                write!(f, "{s} turn-back at {position}")
            }
        }
    }
}

/// Counts and canonical ordering of the singular points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularProfile {
    pub strands: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
    /// Crossings in word order, then left turn-backs, then right turn-backs.
    pub points: Vec<PointKind>,
    /// Boundary end points of the divide (`e` items on both walls).
    pub endpoints: usize,
}

impl SingularProfile {
    pub fn n(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    pub fn writhe(&self) -> i64 {
        2 * self.n_plus as i64 - 2 * self.n_minus as i64 + self.n_zero as i64
    }
}

fn wall_width(items: &[WallItem]) -> usize {
    items.iter().map(|w| w.width()).sum()
}

/// Positions (top strand) of the turn-backs of a wall.
fn turn_back_positions(items: &[WallItem]) -> Vec<usize> {
    let mut pos = 1;
    let mut out = Vec::new();
    for item in items {
        if *item == WallItem::TurnBack {
            out.push(pos);
        }
        pos += item.width();
    }
    out
}

impl Divide {
    pub fn new(left: Vec<WallItem>, word: Vec<Crossing>, right: Vec<WallItem>) -> Self {
        Divide { name: None, left, word, right }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn without_name(mut self) -> Self {
        self.name = None;
        self
    }

    pub fn strands(&self) -> usize {
        wall_width(&self.left)
    }

    pub fn validate(&self) -> Result<SingularProfile, DivideError> {
        let left = wall_width(&self.left);
        let right = wall_width(&self.right);
        if left != right {
            return Err(DivideError::StrandCountMismatch { left, right });
        }
        if left == 0 {
            return Err(DivideError::EmptyDivide);
        }
        let max = left - 1;
        for (index, c) in self.word.iter().enumerate() {
            if c.position < 1 || c.position > max {
                return Err(DivideError::CrossingOutOfRange { index, position: c.position, max });
            }
        }

        let mut points: Vec<PointKind> = self
            .word
            .iter()
            .enumerate()
            .map(|(column, c)| PointKind::Crossing { column, position: c.position, sign: c.sign })
            .collect();
        for (side, wall) in [(Side::Left, &self.left), (Side::Right, &self.right)] {
            points.extend(
                turn_back_positions(wall)
                    .into_iter()
                    .map(|position| PointKind::TurnBack { side, position }),
            );
        }
        let n_plus = self.word.iter().filter(|c| c.sign == Sign::Plus).count();
        let n_minus = self.word.len() - n_plus;
        let n_zero = points.len() - self.word.len();
        let endpoints = self
            .left
            .iter()
            .chain(self.right.iter())
            .filter(|w| **w == WallItem::Endpoint)
            .count();
        Ok(SingularProfile { strands: left, n_plus, n_minus, n_zero, points, endpoints })
    }

    pub fn writhe(&self) -> Result<i64, DivideError> {
        Ok(self.validate()?.writhe())
    }
}

/// A divide with some singular points already resolved.
///
/// `fixed` maps a point index of the base profile to its pinned splitting
/// (`false` = Θ0, `true` = Θ1). Free points keep the base ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialDivide {
    pub base: Divide,
    pub fixed: BTreeMap<usize, bool>,
}

impl PartialDivide {
    pub fn new(base: Divide) -> Self {
        PartialDivide { base, fixed: BTreeMap::new() }
    }

    pub fn pin(mut self, point: usize, bit: bool) -> Self {
        self.fixed.insert(point, bit);
        self
    }

    /// Profile restricted to unresolved points.
    pub fn validate(&self) -> Result<SingularProfile, DivideError> {
        let mut profile = self.base.validate()?;
        let mut kept = Vec::with_capacity(profile.points.len());
        for (idx, p) in profile.points.iter().enumerate() {
            if self.fixed.contains_key(&idx) {
                match p {
                    PointKind::Crossing { sign: Sign::Plus, .. } => profile.n_plus -= 1,
                    PointKind::Crossing { sign: Sign::Minus, .. } => profile.n_minus -= 1,
                    PointKind::TurnBack { .. } => profile.n_zero -= 1,
                }
            } else {
                kept.push(*p);
            }
        }
        profile.points = kept;
        Ok(profile)
    }

    pub fn writhe(&self) -> Result<i64, DivideError> {
        Ok(self.validate()?.writhe())
    }
}

impl From<Divide> for PartialDivide {
    fn from(d: Divide) -> Self {
        PartialDivide::new(d)
    }
}

/// Anything that can be viewed as a (possibly partially resolved) divide.
pub trait Resolvable {
    fn as_partial(&self) -> Cow<'_, PartialDivide>;
}

impl Resolvable for Divide {
    fn as_partial(&self) -> Cow<'_, PartialDivide> {
        Cow::Owned(PartialDivide::new(self.clone()))
    }
}

impl Resolvable for PartialDivide {
    fn as_partial(&self) -> Cow<'_, PartialDivide> {
        Cow::Borrowed(self)
    }
}
