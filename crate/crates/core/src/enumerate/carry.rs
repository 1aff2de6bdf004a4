//! Column sums and carries of a degree written as a sum of factor degrees.
//!
//! Every generator degree has the shape `q·(p^a + … + p^b) + ε` with
//! `ε ∈ {0, 1}`, i.e. it occupies a contiguous run of digit columns
//! (column −1 standing for the `ε` part). For a product with column sums
//! `c̄_j` and target profile `(c_{-1}; c_0, …, c_n)` the sums must satisfy
//!
//! ```text
//! c̄_{-1}           = c_{-1} + λ_{-1}·q
//! c̄_j + λ_{j-1}    = c_j    + λ_j·p        (0 ≤ j < n)
//! c̄_n + λ_{n-1}    = c_n
//! ```
//!
//! with nonnegative carries `λ`.

use serde::Serialize;

use crate::grading::{PAdicProfile, PrimeContext};

/// One solution of the carry system.
///
/// `cbar[0]` is `c̄_{-1}`, `cbar[k]` is `c̄_{k-1}`; likewise `lambdas[0]` is
/// `λ_{-1}` and `lambdas[k]` is `λ_{k-1}`, ending at `λ_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CarrySolution {
    pub cbar: Vec<u32>,
    pub lambdas: Vec<u32>,
}

impl CarrySolution {
    /// `c̄_j` for `j ≥ -1`.
    pub fn column(&self, j: i32) -> u32 {
        self.cbar.get((j + 1) as usize).copied().unwrap_or(0)
    }

    /// `λ_j` for `j ≥ -1`.
    pub fn carry(&self, j: i32) -> u32 {
        self.lambdas.get((j + 1) as usize).copied().unwrap_or(0)
    }
}

/// Depth-first walk over all carry vectors; `visit` returns `true` to stop.
///
/// Column sums and carries are capped at `bound`.
pub(crate) fn walk_solutions(
    c_minus1: u32,
    digits: &[u32],
    bound: u32,
    p: u32,
    q: u32,
    visit: &mut dyn FnMut(&[u32], &[u32]) -> bool,
) -> bool {
    let cols = digits.len() + 1;
    let mut cbar = vec![0u32; cols];
    let mut lambdas = vec![0u32; digits.len()];
    if digits.is_empty() {
        if c_minus1 > bound {
            return false;
        }
        cbar[0] = c_minus1;
        return visit(&cbar, &lambdas);
    }
    // column -1
    let mut l = 0u32;
    loop {
        let c = u64::from(c_minus1) + u64::from(l) * u64::from(q);
        if c > u64::from(bound) || l > bound {
            break;
        }
        cbar[0] = c as u32;
        lambdas[0] = l;
        if walk_digits(0, l, digits, bound, p, &mut cbar, &mut lambdas, visit) {
            return true;
        }
        l += 1;
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn walk_digits(
    j: usize,
    carry_in: u32,
    digits: &[u32],
    bound: u32,
    p: u32,
    cbar: &mut Vec<u32>,
    lambdas: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32], &[u32]) -> bool,
) -> bool {
    let d = i64::from(digits[j]);
    let top = j + 1 == digits.len();
    let (p, bound, carry_in) = (i64::from(p), i64::from(bound), i64::from(carry_in));
    // c̄_j = d + λ_j p - carry_in, with 0 ≤ c̄_j ≤ bound
    let lo = if carry_in > d { (carry_in - d + p - 1) / p } else { 0 };
    let hi = if top { 0 } else { ((bound + carry_in - d).max(-1) / p).min(bound) };
    let mut lam = lo;
    while lam <= hi {
        let c = d + lam * p - carry_in;
        if (0..=bound).contains(&c) {
            cbar[j + 1] = c as u32;
            if top {
                if visit(cbar, lambdas) {
                    return true;
                }
            } else {
                lambdas[j + 1] = lam as u32;
                if walk_digits(j + 1, lam as u32, digits, bound as u32, p as u32, cbar, lambdas, visit) {
                    return true;
                }
            }
        }
        lam += 1;
    }
    false
}

/// All solutions of the carry system for `target` with every column sum and
/// carry at most `mprime_max`.
pub fn carry_solutions(target: &PAdicProfile, mprime_max: u32, ctx: &PrimeContext) -> Vec<CarrySolution> {
    let mut out = Vec::new();
    walk_solutions(
        target.c_minus1(),
        target.digits(),
        mprime_max,
        ctx.p(),
        ctx.q(),
        &mut |cbar, lambdas| {
            out.push(CarrySolution {
                cbar: cbar.to_vec(),
                lambdas: lambdas.to_vec(),
            });
            false
        },
    );
    out
}
