//! Canonical monomial bases of E1 tridegrees.
//!
//! Depth-first multiset selection over the generators of degree at most `t`,
//! taken in decreasing degree order. Three optional prunings:
//!
//! * degree bounds: the remaining degree must lie between the remaining
//!   filtration times the smallest and largest degree/filtration ratio still
//!   available;
//! * carry feasibility: the remaining degree must admit column sums of at most
//!   `F` units (`F` the remaining filtration) that survive the contiguity test;
//! * vanishing: whole queries rejected up front by the digit bounds.
//!
//! Every pruning only discards branches with no completions, so the result
//! does not depend on which of them are enabled.

mod carry;
mod lemmas;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::{GenKind, Generator, Monomial};
use crate::error::{Error, Result};
use crate::exec::{map_ordered, ExecMode};
use crate::grading::{profile_u128, PrimeContext};

pub use carry::{carry_solutions, CarrySolution};
pub use lemmas::{
    column_sums, generator_columns, lemma_2_3_excludes, lemma_2_4_forced_factors,
    vanish_lemma_2_1, vanish_lemma_2_2, ForcedFactors,
};

/// A single pruning rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prune {
    DegreeBounds,
    Carry,
    Vanishing,
}

/// Set of enabled pruning rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PruneFlags {
    pub degree_bounds: bool,
    pub carry: bool,
    pub vanishing: bool,
}

impl PruneFlags {
    pub const ALL: PruneFlags = PruneFlags {
        degree_bounds: true,
        carry: true,
        vanishing: true,
    };
    pub const NONE: PruneFlags = PruneFlags {
        degree_bounds: false,
        carry: false,
        vanishing: false,
    };

    /// Order-independent text key, e.g. `dcv` or `none`.
    pub fn fingerprint(&self) -> String {
        let mut s = String::new();
        if self.degree_bounds {
            s.push('d');
        }
        if self.carry {
            s.push('c');
        }
        if self.vanishing {
            s.push('v');
        }
        if s.is_empty() {
            s.push_str("none");
        }
        s
    }
}

impl Default for PruneFlags {
    fn default() -> Self {
        Self::ALL
    }
}

impl FromIterator<Prune> for PruneFlags {
    fn from_iter<I: IntoIterator<Item = Prune>>(iter: I) -> Self {
        let mut f = PruneFlags::NONE;
        for p in iter {
            match p {
                Prune::DegreeBounds => f.degree_bounds = true,
                Prune::Carry => f.carry = true,
                Prune::Vanishing => f.vanishing = true,
            }
        }
        f
    }
}

impl fmt::Display for PruneFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fingerprint())
    }
}

/// Accepts `all`, `none` or any combination of the letters `d`, `c`, `v`
/// (also comma-separated names `degree`, `carry`, `vanishing`).
impl FromStr for PruneFlags {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "all" => return Ok(Self::ALL),
            "none" | "" => return Ok(Self::NONE),
            _ => {}
        }
        let mut out = Vec::new();
        let words: Vec<&str> = s.split(',').map(str::trim).collect();
        if words.len() > 1 || words[0].len() > 3 {
            for w in words {
                out.push(match w {
                    "degree" | "d" => Prune::DegreeBounds,
                    "carry" | "c" => Prune::Carry,
                    "vanishing" | "v" => Prune::Vanishing,
                    other => return Err(Error::Parameter(format!("unknown pruning rule '{other}'"))),
                });
            }
        } else {
            for ch in s.chars() {
                out.push(match ch {
                    'd' => Prune::DegreeBounds,
                    'c' => Prune::Carry,
                    'v' => Prune::Vanishing,
                    other => return Err(Error::Parameter(format!("unknown pruning rule '{other}'"))),
                });
            }
        }
        Ok(out.into_iter().collect())
    }
}

/// Enumeration settings.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct EnumConfig {
    pub prune: PruneFlags,
    pub exec: ExecMode,
}

impl EnumConfig {
    pub fn new(prune: PruneFlags, exec: ExecMode) -> Self {
        EnumConfig { prune, exec }
    }
}

/// The monomial basis of `E_1^{s,t,u}` (or of `E_1^{s,t,*}` when `u` is `None`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BidegreeBasis {
    pub p: u32,
    pub s: u32,
    #[serde(serialize_with = "crate::serde_util::biguint_str")]
    pub t: BigUint,
    pub u: Option<u32>,
    /// Sorted by rendered string.
    #[serde(serialize_with = "crate::serde_util::display_seq")]
    pub monomials: Vec<Monomial>,
    pub universe_bound: String,
}

impl BidegreeBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Sorted, deduplicated weights occurring in the basis.
    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.monomials.iter().map(|m| m.weight()).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// The sub-basis of a single weight.
    pub fn restrict_weight(&self, u: u32) -> BidegreeBasis {
        BidegreeBasis {
            u: Some(u),
            monomials: self.monomials.iter().filter(|m| m.weight() == u).cloned().collect(),
            ..self.clone()
        }
    }
}

/// Generators of degree at most `t_max` and filtration at most `s_max`,
/// in canonical order.
pub fn generator_universe(ctx: &PrimeContext, t_max: &BigUint, s_max: u32) -> Vec<Generator> {
    let mut out = Vec::new();
    if s_max == 0 {
        return out;
    }
    let deg = |g: &Generator| ctx.generator_tridegree(g).t;
    let mut i = 0;
    while deg(&Generator::a(i)) <= *t_max {
        out.push(Generator::a(i));
        i += 1;
    }
    let mut kinds = vec![GenKind::H];
    if s_max >= 2 {
        kinds.push(GenKind::B);
    }
    for kind in kinds {
        let mut i = 1;
        loop {
            let first = Generator::new(kind, i, 0).expect("i ≥ 1");
            if deg(&first) > *t_max {
                break;
            }
            let mut j = 0;
            loop {
                let g = Generator::new(kind, i, j).expect("i ≥ 1");
                if deg(&g) > *t_max {
                    break;
                }
                out.push(g);
                j += 1;
            }
            i += 1;
        }
    }
    out.sort();
    out
}

fn describe_universe(count: usize, t: &BigUint, s: u32) -> String {
    format!("{count} generators with deg ≤ {t} and filtration ≤ {s}")
}

/// The `universe_bound` text [`enumerate_basis`] records for `(s, t)`.
pub fn universe_bound(ctx: &PrimeContext, s: u32, t: &BigUint) -> String {
    describe_universe(generator_universe(ctx, t, s).len(), t, s)
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    gen: Generator,
    deg: u128,
    filt: u32,
    /// Largest exponent allowed by the exterior relation.
    max_exp: u32,
}

/// Shared state of one DFS.
struct Search<'a> {
    cands: &'a [Candidate],
    /// Index of the candidate with the largest / smallest deg/filt ratio in `cands[k..]`.
    ratio_max: &'a [usize],
    ratio_min: &'a [usize],
    prune: PruneFlags,
    p: u32,
    q: u32,
    memo: HashMap<(u128, u32), bool>,
    cur: Vec<(usize, u32)>,
    out: Vec<Vec<(usize, u32)>>,
}

impl Search<'_> {
    /// Some completion from `cands[k..]` might exist, as far as the degree
    /// bounds can tell.
    fn degree_ok(&self, k: usize, rem: u128, filt: u32) -> bool {
        if k >= self.cands.len() {
            return false;
        }
        let hi = self.cands[self.ratio_max[k]];
        let lo = self.cands[self.ratio_min[k]];
        let f = u128::from(filt);
        // rem ≤ filt·hi.deg/hi.filt and rem ≥ filt·lo.deg/lo.filt, cross-multiplied
        let upper = f.saturating_mul(hi.deg);
        let lower = f.saturating_mul(lo.deg);
        rem.saturating_mul(u128::from(hi.filt)) <= upper
            && rem.saturating_mul(u128::from(lo.filt)) >= lower
    }

    fn carry_ok(&mut self, rem: u128, filt: u32) -> bool {
        if let Some(&v) = self.memo.get(&(rem, filt)) {
            return v;
        }
        let (c_minus1, digits) = profile_u128(rem, self.p, self.q);
        let feasible = carry::walk_solutions(c_minus1, &digits, filt, self.p, self.q, &mut |cbar, _| {
            !lemma_2_3_excludes(cbar, filt)
        });
        self.memo.insert((rem, filt), feasible);
        feasible
    }

    fn dfs(&mut self, start: usize, rem: u128, filt: u32) {
        if filt == 0 {
            if rem == 0 {
                self.out.push(self.cur.clone());
            }
            return;
        }
        if rem == 0 {
            return;
        }
        if self.prune.carry && !self.carry_ok(rem, filt) {
            return;
        }
        for k in start..self.cands.len() {
            // suffix bounds only tighten as k grows
            if self.prune.degree_bounds && !self.degree_ok(k, rem, filt) {
                break;
            }
            let c = self.cands[k];
            let mut e = 1u32;
            while e <= c.max_exp {
                let (Some(df), Some(dd)) = (c.filt.checked_mul(e), c.deg.checked_mul(u128::from(e))) else {
                    break;
                };
                if df > filt || dd > rem {
                    break;
                }
                self.cur.push((k, e));
                self.dfs(k + 1, rem - dd, filt - df);
                self.cur.pop();
                e += 1;
            }
        }
    }
}

/// Suffix argmax / argmin of `deg/filt`.
fn ratio_suffixes(cands: &[Candidate]) -> (Vec<usize>, Vec<usize>) {
    let n = cands.len();
    let mut hi = vec![0usize; n];
    let mut lo = vec![0usize; n];
    for k in (0..n).rev() {
        hi[k] = k;
        lo[k] = k;
        if k + 1 < n {
            let (a, b) = (cands[k], cands[hi[k + 1]]);
            // a.deg/a.filt < b.deg/b.filt
            if a.deg * u128::from(b.filt) < b.deg * u128::from(a.filt) {
                hi[k] = hi[k + 1];
            }
            let b = cands[lo[k + 1]];
            if a.deg * u128::from(b.filt) > b.deg * u128::from(a.filt) {
                lo[k] = lo[k + 1];
            }
        }
    }
    (hi, lo)
}

/// The complete canonical monomial basis of tridegree `(s, t[, u])`.
pub fn enumerate_basis(
    ctx: &PrimeContext,
    s: u32,
    t: &BigUint,
    u: Option<u32>,
    config: &EnumConfig,
) -> Result<BidegreeBasis> {
    let t128 = t
        .to_u128()
        .filter(|x| x.checked_mul(u128::from(s.max(1)) * 4).is_some())
        .ok_or_else(|| Error::DegreeTooLarge(t.to_string()))?;
    let universe = generator_universe(ctx, t, s);
    let universe_bound = describe_universe(universe.len(), t, s);
    let finish = |monomials: Vec<Monomial>| BidegreeBasis {
        p: ctx.p(),
        s,
        t: t.clone(),
        u,
        monomials,
        universe_bound: universe_bound.clone(),
    };

    if s == 0 {
        let unit = t128 == 0 && u.is_none_or(|u| u == 0);
        return Ok(finish(if unit { vec![Monomial::one()] } else { Vec::new() }));
    }
    if config.prune.vanishing
        && ((s < ctx.p() && vanish_lemma_2_1(s, t, ctx)?) || (s < ctx.q() && vanish_lemma_2_2(s, t, ctx)?))
    {
        log::debug!("({s}, {t}) rejected by digit bounds");
        return Ok(finish(Vec::new()));
    }

    let mut cands: Vec<Candidate> = universe
        .iter()
        .map(|g| Candidate {
            gen: *g,
            deg: ctx.generator_degree_u128(g).expect("degree ≤ t fits"),
            filt: g.filtration(),
            max_exp: if g.is_exterior() { 1 } else { u32::MAX },
        })
        .collect();
    cands.sort_by(|a, b| b.deg.cmp(&a.deg).then(a.gen.cmp(&b.gen)));
    let (ratio_max, ratio_min) = ratio_suffixes(&cands);

    // Top-level branches: first chosen candidate and its exponent.
    let mut roots = Vec::new();
    for (k, c) in cands.iter().enumerate() {
        let mut e = 1u32;
        while e <= c.max_exp && c.filt * e <= s && c.deg * u128::from(e) <= t128 {
            roots.push((k, e));
            e += 1;
        }
    }
    let prune = config.prune;
    let search_from = |&(k, e): &(usize, u32)| -> Vec<Vec<(usize, u32)>> {
        let c = cands[k];
        let mut search = Search {
            cands: &cands,
            ratio_max: &ratio_max,
            ratio_min: &ratio_min,
            prune,
            p: ctx.p(),
            q: ctx.q(),
            memo: HashMap::new(),
            cur: vec![(k, e)],
            out: Vec::new(),
        };
        let (rem, filt) = (t128 - c.deg * u128::from(e), s - c.filt * e);
        if prune.degree_bounds && filt > 0 && !search.degree_ok(k + 1, rem, filt) {
            return Vec::new();
        }
        search.dfs(k + 1, rem, filt);
        search.out
    };
    let found: Vec<Vec<(usize, u32)>> = map_ordered(config.exec, &roots, search_from)
        .into_iter()
        .flatten()
        .collect();

    let mut monomials: Vec<Monomial> = found
        .into_iter()
        .map(|choice| {
            let mut factors: Vec<(Generator, u32)> = choice.iter().map(|&(k, e)| (cands[k].gen, e)).collect();
            factors.sort();
            Monomial::from_canonical(factors, ctx)
        })
        .filter(|m| u.is_none_or(|u| m.weight() == u))
        .collect();
    monomials.sort_by_cached_key(|m| m.to_string());
    Ok(finish(monomials))
}
