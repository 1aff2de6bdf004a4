//! Prime context, tridegrees and p-adic degree profiles.

use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{GenKind, Generator};
use crate::error::{Error, Result};

/// An odd prime `p ≥ 5` together with `q = 2(p - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeContext {
    p: u32,
    q: u32,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Self> {
        if p < 5 || !is_prime(p) || p > u64::from(u32::MAX / 2) {
            return Err(Error::NotOddPrime(p));
        }
        let p = p as u32;
        Ok(PrimeContext { p, q: 2 * (p - 1) })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// `(filtration, internal degree, May weight)` of a single generator.
    pub fn generator_tridegree(&self, g: &Generator) -> Tridegree {
        let p = BigUint::from(self.p);
        let (i, j) = (g.i(), g.j());
        match g.kind() {
            GenKind::H => Tridegree {
                s: 1,
                t: 2u32 * (p.pow(i) - 1u32) * p.pow(j),
                u: 2 * i - 1,
            },
            GenKind::B => Tridegree {
                s: 2,
                t: 2u32 * (p.pow(i) - 1u32) * p.pow(j + 1),
                u: (2 * i - 1) * self.p,
            },
            GenKind::A => Tridegree {
                s: 1,
                t: 2u32 * p.pow(i) - 1u32,
                u: 2 * i + 1,
            },
        }
    }

    /// Internal degree of a generator in machine width, if it fits.
    pub(crate) fn generator_degree_u128(&self, g: &Generator) -> Option<u128> {
        let p = u128::from(self.p);
        let (i, j) = (g.i(), g.j());
        match g.kind() {
            GenKind::H => p
                .checked_pow(i)?
                .checked_sub(1)?
                .checked_mul(2)?
                .checked_mul(p.checked_pow(j)?),
            GenKind::B => p
                .checked_pow(i)?
                .checked_sub(1)?
                .checked_mul(2)?
                .checked_mul(p.checked_pow(j + 1)?),
            GenKind::A => p.checked_pow(i)?.checked_mul(2)?.checked_sub(1),
        }
    }

    /// The unique expansion `t = q(c_n p^n + … + c_0) + c_{-1}`.
    pub fn padic_profile(&self, t: &BigUint) -> PAdicProfile {
        let q = BigUint::from(self.q);
        let p = BigUint::from(self.p);
        let c_minus1 = (t % &q).to_u32().expect("residue below q");
        let mut rest = t / &q;
        let mut digits = Vec::new();
        while !rest.is_zero() {
            digits.push((&rest % &p).to_u32().expect("digit below p"));
            rest /= &p;
        }
        PAdicProfile { c_minus1, digits }
    }

    pub fn profile_to_degree(&self, profile: &PAdicProfile) -> Result<BigUint> {
        profile.check(self)?;
        let p = BigUint::from(self.p);
        let mut acc = BigUint::zero();
        for &d in profile.digits.iter().rev() {
            acc = acc * &p + d;
        }
        Ok(acc * self.q + profile.c_minus1)
    }
}

/// Convenience wrapper around [`PrimeContext::new`].
pub fn make_context(p: u64) -> Result<PrimeContext> {
    PrimeContext::new(p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `(s, t, u)`: filtration, internal degree and May weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Tridegree {
    pub s: u32,
    #[serde(serialize_with = "crate::serde_util::biguint_str")]
    pub t: BigUint,
    pub u: u32,
}

impl Tridegree {
    pub fn new(s: u32, t: impl Into<BigUint>, u: u32) -> Self {
        Tridegree { s, t: t.into(), u }
    }

    pub fn zero() -> Self {
        Tridegree {
            s: 0,
            t: BigUint::zero(),
            u: 0,
        }
    }

    /// The stem `t - s`.
    pub fn stem(&self) -> BigInt {
        BigInt::from(self.t.clone()) - BigInt::from(self.s)
    }

    pub(crate) fn scaled(&self, e: u32) -> Tridegree {
        Tridegree {
            s: self.s * e,
            t: &self.t * e,
            u: self.u * e,
        }
    }
}

impl Add for &Tridegree {
    type Output = Tridegree;

    fn add(self, rhs: &Tridegree) -> Tridegree {
        Tridegree {
            s: self.s + rhs.s,
            t: &self.t + &rhs.t,
            u: self.u + rhs.u,
        }
    }
}

impl Add for Tridegree {
    type Output = Tridegree;

    fn add(self, rhs: Tridegree) -> Tridegree {
        &self + &rhs
    }
}

impl fmt::Display for Tridegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.s, self.t, self.u)
    }
}

/// Free-standing alias for [`Tridegree::stem`].
pub fn stem(d: &Tridegree) -> BigInt {
    d.stem()
}

/// Digit expansion `t = q·Σ c_i p^i + c_{-1}` with `0 ≤ c_{-1} < q`, `0 ≤ c_i < p`.
///
/// Digits are stored without trailing zeros, so equal degrees give
/// structurally equal profiles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PAdicProfile {
    c_minus1: u32,
    digits: Vec<u32>,
}

impl PAdicProfile {
    /// Builds a profile from raw coefficients, dropping trailing zero digits.
    pub fn new(c_minus1: u32, mut digits: Vec<u32>, ctx: &PrimeContext) -> Result<Self> {
        while digits.last() == Some(&0) {
            digits.pop();
        }
        let profile = PAdicProfile { c_minus1, digits };
        profile.check(ctx)?;
        Ok(profile)
    }

    fn check(&self, ctx: &PrimeContext) -> Result<()> {
        if self.c_minus1 >= ctx.q {
            return Err(Error::OutOfRange(format!(
                "c[-1]={} not below q={}",
                self.c_minus1, ctx.q
            )));
        }
        if let Some((i, d)) = self.digits.iter().enumerate().find(|(_, &d)| d >= ctx.p) {
            return Err(Error::OutOfRange(format!("c{i}={d} not below p={}", ctx.p)));
        }
        Ok(())
    }

    pub fn c_minus1(&self) -> u32 {
        self.c_minus1
    }

    /// `c_0, …, c_n`; empty when `t < q`.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// `c_j` for any `j ≥ 0`, zero past the top digit.
    pub fn digit(&self, j: usize) -> u32 {
        self.digits.get(j).copied().unwrap_or(0)
    }
}

impl fmt::Display for PAdicProfile {
    /// Nonzero coefficients only, e.g. `c[-1]=1 c0=2 c1=3`; `0` for the zero degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.c_minus1 != 0 {
            parts.push(format!("c[-1]={}", self.c_minus1));
        }
        for (i, d) in self.digits.iter().enumerate() {
            if *d != 0 {
                parts.push(format!("c{i}={d}"));
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// `(c_{-1}, [c_0, …, c_n])` for a machine-width degree.
pub(crate) fn profile_u128(t: u128, p: u32, q: u32) -> (u32, Vec<u32>) {
    let c_minus1 = (t % u128::from(q)) as u32;
    let mut rest = t / u128::from(q);
    let mut digits = Vec::new();
    while rest > 0 {
        digits.push((rest % u128::from(p)) as u32);
        rest /= u128::from(p);
    }
    (c_minus1, digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx5() -> PrimeContext {
        PrimeContext::new(5).unwrap()
    }

    #[test]
    fn context_examples() {
        let c = make_context(5).unwrap();
        assert_eq!((c.p(), c.q()), (5, 8));
        let c = make_context(7).unwrap();
        assert_eq!((c.p(), c.q()), (7, 12));
        for bad in [0, 1, 2, 3, 4, 9, 15, 25] {
            let err = make_context(bad).unwrap_err();
            assert!(err.to_string().contains("not an odd prime ≥ 5"));
        }
    }

    #[test]
    fn generator_tridegree_examples() {
        let c = ctx5();
        let h10 = Generator::h(1, 0).unwrap();
        assert_eq!(c.generator_tridegree(&h10), Tridegree::new(1, 8u32, 1));
        let a0 = Generator::a(0);
        assert_eq!(c.generator_tridegree(&a0), Tridegree::new(1, 1u32, 1));
        let b10 = Generator::b(1, 0).unwrap();
        assert_eq!(c.generator_tridegree(&b10), Tridegree::new(2, 40u32, 5));
        let h21 = Generator::h(2, 1).unwrap();
        assert_eq!(c.generator_tridegree(&h21), Tridegree::new(1, 240u32, 3));
    }

    #[test]
    fn profile_examples() {
        let c = ctx5();
        let p0 = c.padic_profile(&BigUint::from(0u32));
        assert_eq!((p0.c_minus1(), p0.digits()), (0, &[][..]));
        let p = c.padic_profile(&BigUint::from(137u32));
        assert_eq!((p.c_minus1(), p.digits()), (1, &[2, 3][..]));
        let p = c.padic_profile(&BigUint::from(130008u32));
        assert_eq!((p.c_minus1(), p.digits()), (0, &[1, 0, 0, 0, 1, 0, 1][..]));
        assert_eq!(p.to_string(), "c0=1 c4=1 c6=1");
    }

    #[test]
    fn profile_to_degree_examples() {
        let c = ctx5();
        let z = PAdicProfile::new(0, vec![], &c).unwrap();
        assert_eq!(c.profile_to_degree(&z).unwrap(), BigUint::from(0u32));
        let x = PAdicProfile::new(1, vec![2, 3], &c).unwrap();
        assert_eq!(c.profile_to_degree(&x).unwrap(), BigUint::from(137u32));
        let y = PAdicProfile::new(7, vec![0, 0, 1], &c).unwrap();
        assert_eq!(c.profile_to_degree(&y).unwrap(), BigUint::from(207u32));
        assert!(PAdicProfile::new(8, vec![], &c).is_err());
        assert!(PAdicProfile::new(0, vec![5], &c).is_err());
        // trailing zeros are dropped
        let t = PAdicProfile::new(1, vec![2, 3, 0, 0], &c).unwrap();
        assert_eq!(t, x);
    }

    #[test]
    fn stem_examples() {
        assert_eq!(Tridegree::new(3, 130008u32, 3).stem(), BigInt::from(130005));
        assert_eq!(Tridegree::zero().stem(), BigInt::from(0));
        assert_eq!(stem(&Tridegree::new(1, 8u32, 1)), BigInt::from(7));
    }

    #[test]
    fn huge_degrees_do_not_overflow() {
        let c = ctx5();
        let h = Generator::h(40, 30).unwrap();
        let d = c.generator_tridegree(&h);
        assert!(d.t > BigUint::from(u128::MAX));
        assert_eq!(c.generator_degree_u128(&h), None);
        let prof = c.padic_profile(&d.t);
        assert_eq!(c.profile_to_degree(&prof).unwrap(), d.t);
    }

    #[test]
    fn u128_profile_matches_bigint() {
        let c = ctx5();
        for t in [0u128, 1, 7, 8, 137, 130194, 999_999_937] {
            let big = c.padic_profile(&BigUint::from(t));
            let (cm, d) = profile_u128(t, 5, 8);
            assert_eq!(big.c_minus1(), cm);
            assert_eq!(big.digits(), &d[..]);
        }
    }
}
