//! Vanishing criteria and forced-factor analysis for E1 bidegrees.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::algebra::{GenKind, Generator, Monomial};
use crate::error::{Error, Result};
use crate::grading::PrimeContext;

/// True iff some digit `c_j`, `j ≥ 0`, of `t` exceeds `s1`; then `E_1^{s1,t,*} = 0`.
pub fn vanish_lemma_2_1(s1: u32, t: &BigUint, ctx: &PrimeContext) -> Result<bool> {
    if s1 == 0 || s1 >= ctx.p() {
        return Err(Error::Precondition(format!("need 0 < s1 < p, got s1 = {s1}")));
    }
    Ok(ctx.padic_profile(t).digits().iter().any(|&c| c > s1))
}

/// True iff `c_{-1}` of `t` exceeds `s1`; then `E_1^{s1,t,*} = 0`.
pub fn vanish_lemma_2_2(s1: u32, t: &BigUint, ctx: &PrimeContext) -> Result<bool> {
    if s1 == 0 || s1 >= ctx.q() {
        return Err(Error::Precondition(format!("need 0 < s1 < q, got s1 = {s1}")));
    }
    Ok(ctx.padic_profile(t).c_minus1() > s1)
}

/// True iff some `i1 < i2 < i3` has `c̄_{i1} + c̄_{i3} - m' > c̄_{i2}`.
///
/// `cbar[0]` is column −1. Such column sums cannot come from `m'` factors,
/// because every factor occupies a contiguous run of columns.
pub fn lemma_2_3_excludes(cbar: &[u32], mprime: u32) -> bool {
    let n = cbar.len();
    if n < 3 {
        return false;
    }
    let mut suffix_max = vec![0i64; n + 1];
    for k in (0..n).rev() {
        suffix_max[k] = suffix_max[k + 1].max(i64::from(cbar[k]));
    }
    let mut prefix_max = i64::from(cbar[0]);
    for i2 in 1..n - 1 {
        if prefix_max + suffix_max[i2 + 1] - i64::from(mprime) > i64::from(cbar[i2]) {
            return true;
        }
        prefix_max = prefix_max.max(i64::from(cbar[i2]));
    }
    false
}

/// Outcome of the forced-factor analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ForcedFactors {
    None,
    Copies {
        #[serde(serialize_with = "ser_gen")]
        generator: Generator,
        count: u32,
        /// `true` when the forced generator is exterior and repeats.
        vanishes: bool,
    },
}

fn ser_gen<S: serde::Serializer>(g: &Generator, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&g.to_string())
}

impl fmt::Display for ForcedFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForcedFactors::None => f.write_str("no forced factors"),
            ForcedFactors::Copies {
                generator,
                count,
                vanishes,
            } => {
                write!(f, "{count} copies of {generator}")?;
                if *vanishes {
                    f.write_str(", hence monomial = 0")?;
                }
                Ok(())
            }
        }
    }
}

/// For `m'` filtration-one factors whose column sums vanish outside
/// `[i1, i3]`, `k = c̄_{i1} + c̄_{i3} - m'` factors must span all of
/// `i1..=i3`: `k` copies of `h(i3-i1+1, i1)` when `i1 ≥ 0`, of `a(i3+1)` when
/// `i1 = -1`.
///
/// Column indices are the real ones (−1 based); `cbar[0]` is column −1.
pub fn lemma_2_4_forced_factors(
    cbar: &[u32],
    mprime: u32,
    i1: i32,
    i2: i32,
    i3: i32,
) -> Result<ForcedFactors> {
    let n = cbar.len() as i32 - 2;
    if !(-1 <= i1 && i1 < i2 && i2 < i3 && i3 <= n) {
        return Err(Error::Precondition(format!(
            "need -1 ≤ i1 < i2 < i3 ≤ {n}, got ({i1}, {i2}, {i3})"
        )));
    }
    let col = |j: i32| i64::from(cbar[(j + 1) as usize]);
    let k = col(i1) + col(i3) - i64::from(mprime);
    if k > col(i2) {
        return Err(Error::Precondition(format!(
            "c̄_{i1} + c̄_{i3} - m' = {k} exceeds c̄_{i2} = {}",
            col(i2)
        )));
    }
    if (-1..i1).chain(i3 + 1..=n).any(|j| col(j) != 0) {
        return Err(Error::Precondition(format!(
            "column sums must vanish outside [{i1}, {i3}]"
        )));
    }
    if k <= 0 {
        return Ok(ForcedFactors::None);
    }
    let k = k as u32;
    if i1 == -1 {
        Ok(ForcedFactors::Copies {
            generator: Generator::a((i3 + 1) as u32),
            count: k,
            vanishes: false,
        })
    } else {
        Ok(ForcedFactors::Copies {
            generator: Generator::h_unchecked((i3 - i1 + 1) as u32, i1 as u32),
            count: k,
            vanishes: k > 1,
        })
    }
}

/// Digit columns `[lo, hi]` occupied by a generator's degree (−1 based).
pub fn generator_columns(g: &Generator) -> (i32, i32) {
    let (i, j) = (g.i() as i32, g.j() as i32);
    match g.kind() {
        GenKind::A => (-1, i - 1),
        GenKind::H => (j, i + j - 1),
        GenKind::B => (j + 1, i + j),
    }
}

/// Column sums `c̄_{-1}, c̄_0, …` of a monomial, before any carrying.
pub fn column_sums(m: &Monomial) -> Vec<u32> {
    let top = m
        .factors()
        .iter()
        .map(|(g, _)| generator_columns(g).1)
        .max()
        .unwrap_or(-1);
    let mut out = vec![0u32; (top + 2) as usize];
    for (g, e) in m.factors() {
        let (lo, hi) = generator_columns(g);
        for j in lo..=hi {
            out[(j + 1) as usize] += e;
        }
    }
    out
}
