//! Sparse Laurent polynomials and the state-sum polynomial `W` of a divide.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::divide::Resolvable;
use crate::states::{enumerate_enhanced, StateCube, StateError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error("NotDivisible: {dividend} is not a multiple of {divisor}")]
    NotDivisible { dividend: String, divisor: String },
}

/// Laurent polynomial in one variable with coefficients in `C`.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Laurent<C> {
    terms: BTreeMap<i64, C>,
}

impl<C> Default for Laurent<C> {
    fn default() -> Self {
        Laurent { terms: BTreeMap::new() }
    }
}

impl<C: Clone + Zero> Laurent<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: i64, coeff: C) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: C) {
        let sum = match self.terms.remove(&exp) {
            Some(c) => c + coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(exp, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> C {
        self.terms.get(&exp).cloned().unwrap_or_else(C::zero)
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &C)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    /// Replaces `x` by `x^m`.
    pub fn stretch(&self, m: i64) -> Self {
        assert!(m != 0);
        Self::from_terms(self.terms.iter().map(|(&e, c)| (e * m, c.clone())))
    }

    /// Replaces `x^e` by `x^(e/m)`; `None` unless every exponent is a multiple of `m`.
    pub fn compress(&self, m: i64) -> Option<Self> {
        self.terms.keys().all(|e| e % m == 0).then(|| Laurent {
            terms: self.terms.iter().map(|(&e, c)| (e / m, c.clone())).collect(),
        })
    }

    pub fn map_coeffs<D: Clone + Zero>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        Laurent::from_terms(self.terms.iter().map(|(&e, c)| (e, f(c))))
    }
}

impl<C: Clone + Zero + One> Laurent<C> {
    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    /// `x^a + x^b`.
    pub fn binomial(a: i64, b: i64) -> Self {
        Self::from_terms([(a, C::one()), (b, C::one())])
    }

    pub fn pow(&self, n: u32) -> Self
    where
        C: Mul<Output = C>,
    {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl<C> Laurent<C>
where
    C: Clone + Zero + PartialEq + Sub<Output = C> + Mul<Output = C> + Div<Output = C> + Rem<Output = C>,
{
    /// Exact division; fails when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (&top, lead) = divisor.terms.iter().next_back()?;
        let bottom = divisor.min_exp()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&e, c)) = rem.terms.iter().next_back() {
            if e - rem.min_exp()? < top - bottom {
                return None;
            }
            if !(c.clone() % lead.clone()).is_zero() {
                return None;
            }
            let q = Self::monomial(e - top, c.clone() / lead.clone());
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        Some(quot)
    }
}

impl<C: Clone + Zero> Add for &Laurent<C> {
    type Output = Laurent<C>;

    fn add(self, rhs: &Laurent<C>) -> Laurent<C> {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<C: Clone + Zero + Neg<Output = C>> Neg for &Laurent<C> {
    type Output = Laurent<C>;

    fn neg(self) -> Laurent<C> {
        Laurent { terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect() }
    }
}

impl<C: Clone + Zero + Sub<Output = C>> Sub for &Laurent<C> {
    type Output = Laurent<C>;

    fn sub(self, rhs: &Laurent<C>) -> Laurent<C> {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            let d = out.coeff(e) - c.clone();
            out.terms.remove(&e);
            if !d.is_zero() {
                out.terms.insert(e, d);
            }
        }
        out
    }
}

impl<C: Clone + Zero + Mul<Output = C>> Mul for &Laurent<C> {
    type Output = Laurent<C>;

    fn mul(self, rhs: &Laurent<C>) -> Laurent<C> {
        let mut out = Laurent::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x.clone() * y.clone());
            }
        }
        out
    }
}

/// Plain rendering in the variable `x`.
impl<C: fmt::Display + Clone + Zero + One + PartialOrd + Neg<Output = C>> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, "x", 1, Style::Plain))
    }
}

/// How exponents are written.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    /// `t^3`, `t^-1`, `t^(3/2)`.
    Plain,
    /// `t^{3}`, `t^{-1}`, `t^{3/2}`.
    Latex,
}

/// Renders in ascending order; `unit` is the number of stored exponent
/// steps per power of `var` (2 for exponents counted in square roots).
pub fn render<C>(p: &Laurent<C>, var: &str, unit: i64, style: Style) -> String
where
    C: fmt::Display + Clone + Zero + One + PartialOrd + Neg<Output = C>,
{
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in p.terms().enumerate() {
        let negative = *c < C::zero();
        let magnitude = if negative { -c.clone() } else { c.clone() };
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let power = exponent(e, unit, style);
        match power {
            None => out.push_str(&magnitude.to_string()),
            Some(pw) => {
                if !magnitude.is_one() {
                    out.push_str(&magnitude.to_string());
                    if style == Style::Latex {
                        out.push(' ');
                    }
                }
                out.push_str(var);
                out.push_str(&pw);
            }
        }
    }
    out
}

fn exponent(e: i64, unit: i64, style: Style) -> Option<String> {
    if e == 0 {
        return None;
    }
    let g = gcd(e.abs(), unit);
    let (num, den) = (e / g, unit / g);
    Some(match (den, style) {
        (1, _) if num == 1 => String::new(),
        (1, Style::Plain) => format!("^{num}"),
        (1, Style::Latex) => format!("^{{{num}}}"),
        (_, Style::Plain) => format!("^({num}/{den})"),
        (_, Style::Latex) => format!("^{{{num}/{den}}}"),
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub type Scalar = i64;

/// Integer Laurent polynomial whose exponents count powers of `√t`.
pub type HalfLaurent = Laurent<Scalar>;

impl HalfLaurent {
    /// `"t - t^3 + t^4"`-style rendering in the variable `t`.
    pub fn to_t_string(&self) -> String {
        render(self, "t", 2, Style::Plain)
    }

    pub fn to_t_latex(&self) -> String {
        render(self, "t", 2, Style::Latex)
    }

    /// Builds `Σ c·t^e` from exponents in `t` units.
    pub fn from_t_terms(terms: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        Self::from_terms(terms.into_iter().map(|(e, c)| (2 * e, c)))
    }
}

/// `Σ (−1)^i x^k (x^-2 + x^2)^cl (x^-1 + x)^(op−1)` with `x = √t`.
///
/// When some state has no open component the sum is taken over enhanced
/// states instead (see [`w_enhanced`]).
pub fn w_statesum<D: Resolvable + ?Sized>(divide: &D, max_points: usize) -> Result<HalfLaurent, PolyError> {
    let cube = StateCube::new(divide, max_points)?;
    let profile = divide.as_partial().validate().map_err(StateError::from)?;
    if profile.endpoints == 0 {
        return w_enhanced(divide, max_points);
    }
    // (sign, k, cl, op) multiplicities
    let counts: BTreeMap<(bool, i64, usize, usize), i64> = (0..1u64 << cube.n())
        .into_par_iter()
        .map(|c| {
            let full = cube.full_word(&crate::states::ResolutionWord::from_counter(c, cube.n())).expect("length");
            let comps = cube.components(full);
            let g = cube.gradings(full);
            ((g.i.rem_euclid(2) == 1, g.k, comps.cl, comps.op), 1i64)
        })
        .fold(BTreeMap::new, |mut m, (key, n)| {
            *m.entry(key).or_insert(0) += n;
            m
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let closed = HalfLaurent::binomial(-2, 2);
    let open = HalfLaurent::binomial(-1, 1);
    let mut w = HalfLaurent::zero();
    for ((odd, k, cl, op), n) in counts {
        let term = &closed.pow(cl as u32) * &open.pow(op as u32 - 1);
        w = &w + &term.shift(k).map_coeffs(|c| if odd { -c * n } else { c * n });
    }
    Ok(w)
}

/// `Σ (−1)^i x^j` over all enhanced states.
pub fn enhanced_sum<D: Resolvable + ?Sized>(divide: &D, max_points: usize) -> Result<HalfLaurent, PolyError> {
    let states = enumerate_enhanced(divide, max_points)?;
    Ok(HalfLaurent::from_terms(
        states.iter().map(|(&(i, j), v)| (j, if i.rem_euclid(2) == 1 { -(v.len() as i64) } else { v.len() as i64 })),
    ))
}

/// `x · Σ (−1)^i x^j / (1 + x^2)` over enhanced states, divided exactly.
pub fn w_enhanced<D: Resolvable + ?Sized>(divide: &D, max_points: usize) -> Result<HalfLaurent, PolyError> {
    let numerator = enhanced_sum(divide, max_points)?.shift(1);
    let divisor = HalfLaurent::binomial(0, 2);
    numerator.div_exact(&divisor).ok_or_else(|| PolyError::NotDivisible {
        dividend: numerator.to_string(),
        divisor: divisor.to_string(),
    })
}

/// `W(t^2)·(1 + t^2) = t·χ`, where `W(t^2)` reads the stored `√t`
/// exponents of `w` as powers of `t`, and `chi` is in `√t` units.
pub fn euler_identity(w: &HalfLaurent, chi: &HalfLaurent) -> bool {
    let lhs = w * &HalfLaurent::binomial(0, 2);
    match chi.compress(2) {
        Some(chi_t) => lhs == chi_t.shift(1),
        None => false,
    }
}

/// `W`, the graded Euler characteristic of homology, and whether they satisfy [`euler_identity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerCheck {
    pub w: HalfLaurent,
    pub chi: HalfLaurent,
    pub holds: bool,
}

/// Computes homology and `W` independently and compares them.
pub fn check_euler_relation<D: Resolvable + ?Sized>(divide: &D, max_points: usize) -> Result<EulerCheck, EulerError> {
    let complex = crate::complex::build_complex(divide, max_points)?;
    let chi = crate::homology::graded_euler(&crate::homology::homology_table(&complex));
    let w = w_statesum(divide, max_points)?;
    let holds = euler_identity(&w, &chi);
    Ok(EulerCheck { w, chi, holds })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EulerError {
    #[error(transparent)]
    Complex(#[from] crate::complex::ComplexError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
