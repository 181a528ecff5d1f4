//! Word-level rewrites of divides and a seeded random divide generator.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::divide::{Crossing, Divide, Sign, WallItem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("NotApplicable: {0}")]
    NotApplicable(String),
    #[error("bad move descriptor {descriptor:?}: {reason}")]
    Descriptor { descriptor: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveSpec {
    /// Swap the letters at `at` and `at + 1`, positions at least 2 apart.
    FarCommute { at: usize },
    /// Delete the inverse pair at `at`, `at + 1`.
    PairCancel { at: usize },
    /// Insert `crossing` followed by its inverse before index `at`.
    PairInsert { at: usize, crossing: Crossing },
    /// `(εp, ε(p+1), εp) ↔ (ε(p+1), εp, ε(p+1))` starting at `at`.
    BraidSlide { at: usize },
}

impl MoveSpec {
    /// The move undoing this one once it has been applied to `before`.
    pub fn inverse(self, before: &Divide) -> MoveSpec {
        match self {
            MoveSpec::PairInsert { at, .. } => MoveSpec::PairCancel { at },
            MoveSpec::PairCancel { at } => match before.word.get(at) {
                Some(&crossing) => MoveSpec::PairInsert { at, crossing },
                None => self,
            },
            other => other,
        }
    }
}

impl fmt::Display for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveSpec::FarCommute { at } => write!(f, "commute@{at}"),
            MoveSpec::PairCancel { at } => write!(f, "II-cancel@{at}"),
            MoveSpec::PairInsert { at, crossing } => write!(f, "II-insert@{at}:{crossing}"),
            MoveSpec::BraidSlide { at } => write!(f, "III@{at}"),
        }
    }
}

impl FromStr for MoveSpec {
    type Err = MoveError;

    /// `commute@0`, `II-cancel@1`, `II-insert@1:+1`, `III@2`.
    fn from_str(s: &str) -> Result<Self, MoveError> {
        let bad = |reason: &str| MoveError::Descriptor { descriptor: s.into(), reason: reason.into() };
        let (kind, rest) = s.trim().split_once('@').ok_or_else(|| bad("expected KIND@INDEX"))?;
        let (index, param) = match rest.split_once(':') {
            Some((i, p)) => (i, Some(p)),
            None => (rest, None),
        };
        let at: usize = index.parse().map_err(|_| bad("index is not a non-negative integer"))?;
        let kind = kind.to_ascii_lowercase();
        let spec = match kind.as_str() {
            "commute" => MoveSpec::FarCommute { at },
            "ii-cancel" => MoveSpec::PairCancel { at },
            "iii" => MoveSpec::BraidSlide { at },
            "ii-insert" => {
                let p = param.ok_or_else(|| bad("II-insert needs :±POSITION"))?;
                let sign = match p.chars().next() {
                    Some('+') => Sign::Plus,
                    Some('-') => Sign::Minus,
                    _ => return Err(bad("crossing needs an explicit sign")),
                };
                let position: usize = p[1..].parse().map_err(|_| bad("crossing position is not an integer"))?;
                return Ok(MoveSpec::PairInsert { at, crossing: Crossing::new(position, sign) });
            }
            _ => return Err(bad("unknown move kind")),
        };
        if param.is_some() {
            return Err(bad("unexpected parameter"));
        }
        Ok(spec)
    }
}

fn letter(word: &[Crossing], k: usize) -> Result<Crossing, MoveError> {
    word.get(k)
        .copied()
        .ok_or_else(|| MoveError::NotApplicable(format!("word has no letter at index {k}")))
}

/// Applies a move; the result is validated.
pub fn apply_move(divide: &Divide, mv: MoveSpec) -> Result<Divide, MoveError> {
    let not = |msg: String| Err(MoveError::NotApplicable(msg));
    divide.validate().map_err(|e| MoveError::NotApplicable(e.to_string()))?;
    let mut word = divide.word.clone();
    match mv {
        MoveSpec::FarCommute { at } => {
            let (a, b) = (letter(&word, at)?, letter(&word, at + 1)?);
            if a.position.abs_diff(b.position) < 2 {
                return not(format!("letters {a} and {b} at {at} are not far apart"));
            }
            word.swap(at, at + 1);
        }
        MoveSpec::PairCancel { at } => {
            let (a, b) = (letter(&word, at)?, letter(&word, at + 1)?);
            if a.position != b.position || a.sign == b.sign {
                return not(format!("letters {a} and {b} at {at} are not an inverse pair"));
            }
            word.drain(at..at + 2);
        }
        MoveSpec::PairInsert { at, crossing } => {
            if at > word.len() {
                return not(format!("index {at} is past the end of the word"));
            }
            if crossing.position < 1 || crossing.position >= divide.strands() {
                return not(format!("position {} is outside 1..{}", crossing.position, divide.strands() - 1));
            }
            let inverse = Crossing::new(crossing.position, crossing.sign.flip());
            word.splice(at..at, [crossing, inverse]);
        }
        MoveSpec::BraidSlide { at } => {
            let (a, b, c) = (letter(&word, at)?, letter(&word, at + 1)?, letter(&word, at + 2)?);
            if a != c || a.sign != b.sign || a.position.abs_diff(b.position) != 1 {
                return not(format!("letters {a} {b} {c} at {at} are not a braid triple"));
            }
            word[at] = b;
            word[at + 1] = a;
            word[at + 2] = b;
        }
    }
    let out = Divide { word, ..divide.clone() };
    out.validate().map_err(|e| MoveError::NotApplicable(e.to_string()))?;
    Ok(out)
}

/// Every move applicable to a divide, with pair insertions limited to
/// positive crossings at each index and position.
pub fn applicable_moves(divide: &Divide) -> Vec<MoveSpec> {
    let mut out = Vec::new();
    let w = &divide.word;
    for at in 0..w.len() {
        let candidates = [MoveSpec::FarCommute { at }, MoveSpec::PairCancel { at }, MoveSpec::BraidSlide { at }];
        out.extend(candidates.into_iter().filter(|&m| apply_move(divide, m).is_ok()));
    }
    for at in 0..=w.len() {
        for position in 1..divide.strands() {
            out.push(MoveSpec::PairInsert { at, crossing: Crossing::plus(position) });
        }
    }
    out
}

/// Deterministic random divide with `points` singular points on at least
/// `strands` strands (two when there are points to place), always with an
/// end point.
pub fn random_divide(seed: u64, points: usize, strands: usize) -> Divide {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = if points > 0 { strands.max(2) } else { strands.max(1) };
    let cap = n / 2;
    // turn-backs on each wall; when n is even one wall keeps an end point
    let (max_left, max_right) = if n % 2 == 0 { (cap, cap - 1) } else { (cap, cap) };
    let turn_backs = rng.gen_range(0..=points.min(max_left + max_right));
    let low = turn_backs.saturating_sub(max_right);
    let high = turn_backs.min(max_left);
    let on_left = rng.gen_range(low..=high);
    let (mut left_tb, mut right_tb) = (on_left, turn_backs - on_left);
    if n % 2 == 0 && rng.gen_bool(0.5) && left_tb <= max_right && right_tb <= max_left {
        std::mem::swap(&mut left_tb, &mut right_tb);
    }
    let mut wall = |tb: usize| {
        let mut items = vec![WallItem::TurnBack; tb];
        items.extend(std::iter::repeat(WallItem::Endpoint).take(n - 2 * tb));
        items.shuffle(&mut rng);
        items
    };
    let left = wall(left_tb);
    let right = wall(right_tb);
    let word = (0..points - turn_backs)
        .map(|_| {
            let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            Crossing::new(rng.gen_range(1..n), sign)
        })
        .collect();
    Divide::new(left, word, right).with_name(format!("random-{seed}"))
}
