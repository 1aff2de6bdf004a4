//! The first May differential.
//!
//! On generators:
//!
//! ```text
//! d1 h(i,j) = Σ_{0<k<i}  h(i-k, k+j) h(k, j)
//! d1 a(i)   = Σ_{0≤k<i}  h(i-k, k) a(k)
//! d1 b(i,j) = 0
//! ```
//!
//! each summand taken with coefficient +1 in the written order and then
//! canonicalized. On products d1 is extended by the Leibniz rule with sign
//! `(-1)^s`, `s` the filtration of the prefix.

use std::collections::HashMap;

use crate::algebra::{canonicalize, signed_residue, Element, GenKind, Generator, Monomial};
use crate::error::{Error, Result};
use crate::grading::PrimeContext;
use crate::linalg::MatrixFp;

/// Summands of `d1(g)` as ordered generator pairs, before canonicalization.
fn raw_summands(g: &Generator) -> Vec<[Generator; 2]> {
    match g.kind() {
        GenKind::H => {
            let (i, j) = (g.i(), g.j());
            (1..i)
                .map(|k| [Generator::h_unchecked(i - k, k + j), Generator::h_unchecked(k, j)])
                .collect()
        }
        GenKind::A => {
            let i = g.i();
            (0..i)
                .map(|k| [Generator::h_unchecked(i - k, k), Generator::a(k)])
                .collect()
        }
        GenKind::B => Vec::new(),
    }
}

pub fn d1_generator(g: &Generator, ctx: &PrimeContext) -> Element {
    let p = ctx.p();
    let mut out = Element::zero();
    for pair in raw_summands(g) {
        if let Some((sign, m)) = canonicalize(&pair, ctx) {
            out.add_term(m, signed_residue(sign, 1, p), p);
        }
    }
    out
}

pub fn d1_monomial(m: &Monomial, ctx: &PrimeContext) -> Element {
    let p = ctx.p();
    let flat = m.flatten();
    let mut out = Element::zero();
    let mut prefix_filt = 0u32;
    let mut raw = Vec::with_capacity(flat.len() + 1);
    for (k, g) in flat.iter().enumerate() {
        let prefix_sign: i8 = if prefix_filt % 2 == 1 { -1 } else { 1 };
        for pair in raw_summands(g) {
            raw.clear();
            raw.extend_from_slice(&flat[..k]);
            raw.extend_from_slice(&pair);
            raw.extend_from_slice(&flat[k + 1..]);
            if let Some((sign, mono)) = canonicalize(&raw, ctx) {
                out.add_term(mono, signed_residue(sign * prefix_sign, 1, p), p);
            }
        }
        prefix_filt += g.filtration();
    }
    out
}

pub fn d1(x: &Element, ctx: &PrimeContext) -> Element {
    let p = ctx.p();
    let mut out = Element::zero();
    for (m, c) in x.terms() {
        for (image, ic) in d1_monomial(m, ctx).terms() {
            let coeff = ((u64::from(c) * u64::from(ic)) % u64::from(p)) as u32;
            out.add_term(image.clone(), coeff, p);
        }
    }
    out
}

/// Matrix of d1 from `domain` to `codomain`; column `k` holds the
/// coordinates of `d1(domain[k])`.
///
/// Fails if the domain is not homogeneous or if an image monomial is missing
/// from the codomain (which means the codomain basis is incomplete).
pub fn d1_matrix(domain: &[Monomial], codomain: &[Monomial], ctx: &PrimeContext) -> Result<MatrixFp> {
    if let Some(first) = domain.first() {
        if domain.iter().any(|m| m.tridegree() != first.tridegree()) {
            return Err(Error::Precondition("domain monomials differ in tridegree".into()));
        }
    }
    let index: HashMap<&Monomial, usize> = codomain.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut mat = MatrixFp::zeros(ctx.p(), codomain.len(), domain.len());
    for (col, m) in domain.iter().enumerate() {
        for (image, c) in d1_monomial(m, ctx).terms() {
            let row = *index
                .get(image)
                .ok_or_else(|| Error::ImageOutsideCodomain(image.to_string()))?;
            mat.set(row, col, c);
        }
    }
    Ok(mat)
}
