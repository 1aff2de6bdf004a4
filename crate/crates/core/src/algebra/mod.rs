//! Canonical monomials and F_p-linear elements of the May E1-term
//! `E(h_{i,j}) ⊗ P(b_{i,j}) ⊗ P(a_i)`.
//!
//! Sign rule: two adjacent generators `x`, `y` commute up to
//! `(-1)^{s_x s_y + t_x t_y}`. In practice the `h`'s anticommute with each
//! other and with the `a`'s; every pair involving a `b`, and any pair of
//! `a`'s, commutes.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::grading::{PrimeContext, Tridegree};

pub use parse::{parse_element, parse_monomial, render_element};

/// Generator family. The derived order `A < H < B` is the canonical factor order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    A,
    H,
    B,
}

/// One of `a(i)`, `h(i,j)` or `b(i,j)`.
///
/// Ordered by kind, then lexicographically by `(i, j)`; `a(i)` stores `j = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    kind: GenKind,
    i: u32,
    j: u32,
}

impl Generator {
    pub fn new(kind: GenKind, i: u32, j: u32) -> Result<Self> {
        match kind {
            GenKind::A if j != 0 => Err(Error::InvalidGenerator(format!(
                "a({i}) takes a single index"
            ))),
            GenKind::A => Ok(Generator { kind, i, j: 0 }),
            GenKind::H | GenKind::B if i == 0 => Err(Error::InvalidGenerator(format!(
                "{}({i},{j}) requires i ≥ 1",
                if kind == GenKind::H { "h" } else { "b" }
            ))),
            _ => Ok(Generator { kind, i, j }),
        }
    }

    pub fn h(i: u32, j: u32) -> Result<Self> {
        Self::new(GenKind::H, i, j)
    }

    pub fn b(i: u32, j: u32) -> Result<Self> {
        Self::new(GenKind::B, i, j)
    }

    pub fn a(i: u32) -> Self {
        Generator {
            kind: GenKind::A,
            i,
            j: 0,
        }
    }

    // Callers guarantee i ≥ 1.
    pub(crate) const fn h_unchecked(i: u32, j: u32) -> Self {
        Generator {
            kind: GenKind::H,
            i,
            j,
        }
    }

    pub fn kind(&self) -> GenKind {
        self.kind
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn filtration(&self) -> u32 {
        match self.kind {
            GenKind::B => 2,
            _ => 1,
        }
    }

    /// `h`'s square to zero.
    pub fn is_exterior(&self) -> bool {
        self.kind == GenKind::H
    }

    pub fn tridegree(&self, ctx: &PrimeContext) -> Tridegree {
        ctx.generator_tridegree(self)
    }
}

/// True when swapping `x` and `y` costs a sign.
#[inline]
pub fn anticommutes(x: &Generator, y: &Generator) -> bool {
    use GenKind::*;
    matches!((x.kind, y.kind), (H, H) | (A, H) | (H, A))
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::A => write!(f, "a({})", self.i),
            GenKind::H => write!(f, "h({},{})", self.i, self.j),
            GenKind::B => write!(f, "b({},{})", self.i, self.j),
        }
    }
}

/// A canonical product of generators with cached tridegree.
///
/// Factors are strictly increasing in generator order and every `h` has
/// exponent one. Equality, hashing and ordering ignore the cached degree.
#[derive(Debug, Clone)]
pub struct Monomial {
    factors: Vec<(Generator, u32)>,
    tridegree: Tridegree,
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.factors.hash(state);
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.factors.cmp(&other.factors)
    }
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Monomial {
            factors: Vec::new(),
            tridegree: Tridegree::zero(),
        }
    }

    pub fn generator(g: Generator, ctx: &PrimeContext) -> Self {
        Monomial {
            tridegree: ctx.generator_tridegree(&g),
            factors: vec![(g, 1)],
        }
    }

    /// Factors must already be canonical.
    pub(crate) fn from_canonical(factors: Vec<(Generator, u32)>, ctx: &PrimeContext) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(factors.iter().all(|(g, e)| *e >= 1 && (!g.is_exterior() || *e == 1)));
        let tridegree = factors
            .iter()
            .fold(Tridegree::zero(), |acc, (g, e)| {
                &acc + &ctx.generator_tridegree(g).scaled(*e)
            });
        Monomial { factors, tridegree }
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn tridegree(&self) -> &Tridegree {
        &self.tridegree
    }

    pub fn filtration(&self) -> u32 {
        self.tridegree.s
    }

    pub fn weight(&self) -> u32 {
        self.tridegree.u
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `g` in this monomial (zero if absent).
    pub fn exponent(&self, g: &Generator) -> u32 {
        self.factors
            .binary_search_by(|(x, _)| x.cmp(g))
            .map(|k| self.factors[k].1)
            .unwrap_or(0)
    }

    /// Number of factors counted with multiplicity.
    pub fn factor_count(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    /// Generators with repetition, in canonical order.
    pub fn flatten(&self) -> Vec<Generator> {
        let mut out = Vec::with_capacity(self.factor_count() as usize);
        for (g, e) in &self.factors {
            for _ in 0..*e {
                out.push(*g);
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (k, (g, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sorts a product of powers into canonical order.
///
/// Returns `None` when the product vanishes (a repeated `h`), otherwise the
/// sign `±1` picked up by the reordering together with the canonical monomial.
pub fn canonicalize_powers(
    raw: &[(Generator, u32)],
    ctx: &PrimeContext,
) -> Option<(i8, Monomial)> {
    let mut negative = false;
    for (k, (x, ex)) in raw.iter().enumerate() {
        for (y, ey) in &raw[k + 1..] {
            if y < x && anticommutes(x, y) && (ex & ey & 1) == 1 {
                negative = !negative;
            }
        }
    }
    let mut sorted: Vec<(Generator, u32)> = raw.iter().copied().filter(|(_, e)| *e > 0).collect();
    sorted.sort_by_key(|a| a.0);
    let mut factors: Vec<(Generator, u32)> = Vec::with_capacity(sorted.len());
    for (g, e) in sorted {
        match factors.last_mut() {
            Some((last, le)) if *last == g => *le += e,
            _ => factors.push((g, e)),
        }
    }
    if factors.iter().any(|(g, e)| g.is_exterior() && *e > 1) {
        return None;
    }
    Some((if negative { -1 } else { 1 }, Monomial::from_canonical(factors, ctx)))
}

/// Canonical form of an ordered product of generators.
pub fn canonicalize(raw: &[Generator], ctx: &PrimeContext) -> Option<(i8, Monomial)> {
    let powers: Vec<(Generator, u32)> = raw.iter().map(|g| (*g, 1)).collect();
    canonicalize_powers(&powers, ctx)
}

/// Product of two canonical monomials.
pub fn multiply_monomials(
    x: &Monomial,
    y: &Monomial,
    ctx: &PrimeContext,
) -> Option<(i8, Monomial)> {
    let mut raw = Vec::with_capacity(x.factors.len() + y.factors.len());
    raw.extend_from_slice(&x.factors);
    raw.extend_from_slice(&y.factors);
    canonicalize_powers(&raw, ctx)
}

#[inline]
pub(crate) fn signed_residue(sign: i8, c: u32, p: u32) -> u32 {
    let c = c % p;
    if sign < 0 && c != 0 {
        p - c
    } else {
        c
    }
}

/// Homogeneity of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(Tridegree),
    Inhomogeneous,
}

/// A finite F_p-linear combination of canonical monomials.
///
/// No stored coefficient is zero mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, u32>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::monomial(Monomial::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, 1);
        Element { terms }
    }

    pub fn generator(g: Generator, ctx: &PrimeContext) -> Self {
        Element::monomial(Monomial::generator(g, ctx))
    }

    pub fn term(c: u32, m: Monomial, ctx: &PrimeContext) -> Self {
        let mut x = Element::zero();
        x.add_term(m, c, ctx.p());
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: u32, p: u32) {
        let c = c % p;
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = (*o.get() + c) % p;
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Element, ctx: &PrimeContext) -> Element {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c, ctx.p());
        }
        out
    }

    pub fn neg(&self, ctx: &PrimeContext) -> Element {
        self.scale(ctx.p() - 1, ctx)
    }

    pub fn sub(&self, other: &Element, ctx: &PrimeContext) -> Element {
        self.add(&other.neg(ctx), ctx)
    }

    pub fn scale(&self, c: u32, ctx: &PrimeContext) -> Element {
        let p = ctx.p();
        let c = c % p;
        if c == 0 {
            return Element::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), ((u64::from(*x) * u64::from(c)) % u64::from(p)) as u32))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Element, ctx: &PrimeContext) -> Element {
        let p = ctx.p();
        let mut out = Element::zero();
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                if let Some((sign, m)) = multiply_monomials(x, y, ctx) {
                    let c = ((u64::from(*cx) * u64::from(*cy)) % u64::from(p)) as u32;
                    out.add_term(m, signed_residue(sign, c, p), p);
                }
            }
        }
        out
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Homogeneity::Zero;
        };
        if it.all(|m| m.tridegree() == first.tridegree()) {
            Homogeneity::Homogeneous(first.tridegree().clone())
        } else {
            Homogeneity::Inhomogeneous
        }
    }
}

impl From<Monomial> for Element {
    fn from(m: Monomial) -> Self {
        Element::monomial(m)
    }
}

pub fn multiply(x: &Element, y: &Element, ctx: &PrimeContext) -> Element {
    x.mul(y, ctx)
}

pub fn add(x: &Element, y: &Element, ctx: &PrimeContext) -> Element {
    x.add(y, ctx)
}

pub fn scale(c: u32, x: &Element, ctx: &PrimeContext) -> Element {
    x.scale(c, ctx)
}
