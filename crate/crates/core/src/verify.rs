//! Scenario runner for the `β̃_s h_0 h_n h_m` family computations.
//!
//! All scenarios live at the degrees
//!
//! ```text
//! t(s) = q(p^n + p^m + s p + s)
//! ```
//!
//! and are parameterized by `(p, m, n, s)`. The strict parameter range is
//! `n ≥ m+2 > 5`, `2 ≤ s < p`; a permissive mode lowers the first bound to
//! `m+2 ≥ 4` so that the boundary cases can be probed.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;

use crate::algebra::{canonicalize_powers, Element, Generator, Monomial};
use crate::differential::d1;
use crate::error::{Error, Result};
use crate::grading::{PrimeContext, Tridegree};
use crate::linalg::MatrixFp;
use crate::pages::Engine;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Lemma31,
    Eq34,
    Thm32,
    Thm33,
    Reps,
    Main,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [
        Scenario::Lemma31,
        Scenario::Eq34,
        Scenario::Thm32,
        Scenario::Thm33,
        Scenario::Reps,
        Scenario::Main,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Lemma31 => "lemma31",
            Scenario::Eq34 => "eq34",
            Scenario::Thm32 => "thm32",
            Scenario::Thm33 => "thm33",
            Scenario::Reps => "reps",
            Scenario::Main => "main",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown scenario '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScenarioParams {
    pub p: u32,
    pub m: u32,
    pub n: u32,
    pub s: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub description: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl CheckRecord {
    fn new(description: impl Into<String>, expected: impl Into<String>, observed: impl Into<String>, pass: bool) -> Self {
        CheckRecord {
            description: description.into(),
            expected: expected.into(),
            observed: observed.into(),
            pass,
        }
    }

    /// A record that passes iff the two renderings agree.
    fn eq(description: impl Into<String>, expected: impl ToString, observed: impl ToString) -> Self {
        let (e, o) = (expected.to_string(), observed.to_string());
        let pass = e == o;
        Self::new(description, e, o, pass)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub scenario: Scenario,
    pub params: ScenarioParams,
    pub records: Vec<CheckRecord>,
    pub notes: Vec<String>,
    pub pass: bool,
    /// Wall-clock time; excluded from serialization so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    fn new(scenario: Scenario, params: ScenarioParams) -> Self {
        VerificationReport {
            scenario,
            params,
            records: Vec::new(),
            notes: Vec::new(),
            pass: true,
            elapsed: Duration::ZERO,
        }
    }

    fn push(&mut self, r: CheckRecord) {
        self.pass &= r.pass;
        self.records.push(r);
    }
}

impl PartialEq for VerificationReport {
    fn eq(&self, other: &Self) -> bool {
        self.scenario == other.scenario
            && self.params == other.params
            && self.records == other.records
            && self.notes == other.notes
            && self.pass == other.pass
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ScenarioParams { p, m, n, s } = self.params;
        writeln!(f, "scenario {} (p={p}, m={m}, n={n}, s={s})", self.scenario)?;
        for r in &self.records {
            let tag = if r.pass { "PASS" } else { "FAIL" };
            writeln!(f, "[{tag}] {}: expected {}; observed {}", r.description, r.expected, r.observed)?;
        }
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        write!(f, "overall: {}", if self.pass { "PASS" } else { "FAIL" })
    }
}

/// `t(s) = q(p^n + p^m + s p + s)`.
pub fn t_of_s(ctx: &PrimeContext, m: u32, n: u32, s: u32) -> BigUint {
    let p = BigUint::from(ctx.p());
    (p.pow(n) + p.pow(m) + &p * s + s) * ctx.q()
}

/// `t(s) + s - r - 1`, which stays positive for `r ≤ s + 3`.
fn shifted_degree(ctx: &PrimeContext, m: u32, n: u32, s: u32, r: u32) -> BigUint {
    t_of_s(ctx, m, n, s) + s - (r + 1)
}

fn gen_a(i: u32) -> Generator {
    Generator::a(i)
}

fn gen_h(i: u32, j: u32) -> Result<Generator> {
    Generator::h(i, j).map_err(|e| Error::Parameter(e.to_string()))
}

/// Canonical monomial of a product of powers; an exterior square is a parameter error.
fn product(raw: &[(Generator, u32)], ctx: &PrimeContext) -> Result<Monomial> {
    let raw: Vec<(Generator, u32)> = raw.iter().copied().filter(|(_, e)| *e > 0).collect();
    canonicalize_powers(&raw, ctx)
        .map(|(_, m)| m)
        .ok_or_else(|| Error::Parameter("product has a repeated exterior factor".into()))
}

fn check_strict(m: u32, n: u32) -> Result<()> {
    if m + 2 <= 5 {
        return Err(Error::Parameter(format!("m = {m}: requires m+2 > 5")));
    }
    if n < m + 2 {
        return Err(Error::Parameter(format!("n = {n}, m = {m}: requires n ≥ m+2")));
    }
    Ok(())
}

/// The seven products as written; `None` where an index leaves the valid range.
fn g_products(ctx: &PrimeContext, m: u32, n: u32) -> Vec<Option<Vec<(Generator, u32)>>> {
    let p = ctx.p();
    let an = gen_a(n);
    let h = |i: Option<u32>, j: u32| i.and_then(|i| gen_h(i, j).ok());
    let rows: Vec<Vec<Option<(Generator, u32)>>> = vec![
        vec![Some((an, p - 3)), h(Some(3), 0).map(|g| (g, 1)), h(Some(1), m).map(|g| (g, 1)), h(n.checked_sub(2), 2).map(|g| (g, 1)), h(Some(n), 0).map(|g| (g, 1))],
        vec![Some((an, p - 3)), h(Some(1), 2).map(|g| (g, 1)), h(Some(m + 1), 0).map(|g| (g, 1)), h(n.checked_sub(m), m).map(|g| (g, 1)), h(Some(n), 0).map(|g| (g, 1))],
        vec![Some((gen_a(m + 1), 1)), Some((an, p - 4)), h(Some(3), 0).map(|g| (g, 1)), h(n.checked_sub(m), m).map(|g| (g, 1)), h(n.checked_sub(2), 2).map(|g| (g, 1)), h(Some(n), 0).map(|g| (g, 1))],
        vec![Some((an, p - 3)), h(Some(3), 0).map(|g| (g, 1)), h(m.checked_sub(1), 2).map(|g| (g, 1)), h(n.checked_sub(m), m).map(|g| (g, 1)), h(Some(n), 0).map(|g| (g, 1))],
        vec![Some((an, p - 3)), h(Some(3), 0).map(|g| (g, 1)), h(Some(m + 1), 0).map(|g| (g, 1)), h(n.checked_sub(m), m).map(|g| (g, 1)), h(n.checked_sub(2), 2).map(|g| (g, 1))],
        vec![Some((gen_a(3), 1)), Some((an, p - 4)), h(Some(m + 1), 0).map(|g| (g, 1)), h(n.checked_sub(m), m).map(|g| (g, 1)), h(n.checked_sub(2), 2).map(|g| (g, 1)), h(Some(n), 0).map(|g| (g, 1))],
        vec![Some((gen_a(m), p - 3)), h(Some(3), 0).map(|g| (g, 1)), h(Some(m), 0).map(|g| (g, 1)), h(m.checked_sub(2), 2).map(|g| (g, 1)), h(Some(1), n).map(|g| (g, 1))],
    ];
    rows.into_iter().map(|r| r.into_iter().collect()).collect()
}

fn g_list(ctx: &PrimeContext, m: u32, n: u32) -> Result<Vec<Monomial>> {
    g_products(ctx, m, n)
        .iter()
        .enumerate()
        .map(|(k, raw)| {
            let raw = raw
                .as_ref()
                .ok_or_else(|| Error::Parameter(format!("g{} is undefined at m = {m}, n = {n}", k + 1)))?;
            product(raw, ctx)
        })
        .collect()
}

/// The g's that are defined and nonzero at these parameters.
fn g_list_lenient(ctx: &PrimeContext, m: u32, n: u32) -> Vec<Monomial> {
    g_products(ctx, m, n)
        .iter()
        .flatten()
        .filter_map(|raw| product(raw, ctx).ok())
        .collect()
}

/// `g_1, …, g_7` spanning `E_1^{p+1, t(p-1)+p-3, *}`, in the order listed.
pub fn expected_g_list(ctx: &PrimeContext, m: u32, n: u32) -> Result<Vec<Monomial>> {
    check_strict(m, n)?;
    g_list(ctx, m, n)
}

/// One leading monomial of each `d1(g_i)`.
pub fn eq_3_4_leading_terms(ctx: &PrimeContext, m: u32, n: u32) -> Result<Vec<Monomial>> {
    let p = ctx.p();
    if m < 4 || n < m + 2 {
        return Err(Error::Parameter(format!("m = {m}, n = {n}: the terms need m ≥ 4 and n ≥ m+2")));
    }
    let an = gen_a(n);
    let (h10, h30) = (gen_h(1, 0)?, gen_h(3, 0)?);
    let raws: Vec<Vec<(Generator, u32)>> = vec![
        vec![(an, p - 3), (h10, 1), (h30, 1), (gen_h(1, m)?, 1), (gen_h(n - 2, 2)?, 1), (gen_h(n - 1, 1)?, 1)],
        vec![(an, p - 3), (h10, 1), (gen_h(1, 2)?, 1), (gen_h(m + 1, 0)?, 1), (gen_h(n - m, m)?, 1), (gen_h(n - 1, 1)?, 1)],
        vec![(an, p - 4), (gen_a(m + 1), 1), (h10, 1), (h30, 1), (gen_h(n - m, m)?, 1), (gen_h(n - 2, 2)?, 1), (gen_h(n - 1, 1)?, 1)],
        vec![(an, p - 3), (h10, 1), (h30, 1), (gen_h(m - 1, 2)?, 1), (gen_h(n - m, m)?, 1), (gen_h(n - 1, 1)?, 1)],
        vec![(an, p - 3), (h10, 1), (h30, 1), (gen_h(m, 1)?, 1), (gen_h(n - m, m)?, 1), (gen_h(n - 2, 2)?, 1)],
        vec![(an, p - 4), (gen_a(3), 1), (h10, 1), (gen_h(m + 1, 0)?, 1), (gen_h(n - m, m)?, 1), (gen_h(n - 2, 2)?, 1), (gen_h(n - 1, 1)?, 1)],
        vec![(gen_a(m), p - 3), (gen_h(1, 2)?, 1), (h30, 1), (gen_h(m - 3, 3)?, 1), (gen_h(1, n)?, 1), (gen_h(m, 0)?, 1)],
    ];
    raws.iter().map(|r| product(r, ctx)).collect()
}

/// `ω_0 = a(2)^{s-2} h(2,0) h(1,1) h(1,0) h(1,n) h(1,m)` as written (with its reordering sign).
pub fn omega_zero(ctx: &PrimeContext, m: u32, n: u32, s: u32) -> Result<Element> {
    let raw = [
        (gen_a(2), s.saturating_sub(2)),
        (gen_h(2, 0)?, 1),
        (gen_h(1, 1)?, 1),
        (gen_h(1, 0)?, 1),
        (gen_h(1, n)?, 1),
        (gen_h(1, m)?, 1),
    ];
    let raw: Vec<_> = raw.into_iter().filter(|(_, e)| *e > 0).collect();
    let (sign, mono) = canonicalize_powers(&raw, ctx)
        .ok_or_else(|| Error::Parameter("ω_0 has a repeated exterior factor".into()))?;
    let c = if sign < 0 { ctx.p() - 1 } else { 1 };
    Ok(Element::term(c, mono, ctx))
}

fn list(ms: &[Monomial]) -> String {
    if ms.is_empty() {
        return "empty".into();
    }
    let mut v: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
    v.sort();
    v.dedup();
    format!("{{{}}}", v.join(", "))
}

/// Runs scenarios against one [`Engine`], sharing its memoized bases.
pub struct Verifier {
    engine: Engine,
    permissive: bool,
}

impl Verifier {
    pub fn new(engine: Engine) -> Self {
        Verifier {
            engine,
            permissive: false,
        }
    }

    /// Accept `n ≥ m+2 ≥ 4` instead of `n ≥ m+2 > 5`.
    pub fn permissive(mut self, yes: bool) -> Self {
        self.permissive = yes;
        self
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    fn ctx(&self) -> &PrimeContext {
        self.engine.ctx()
    }

    fn gate(&self, m: u32, n: u32, s: Option<u32>) -> Result<Vec<String>> {
        let p = self.ctx().p();
        let mut notes = Vec::new();
        if let Some(s) = s {
            if !(2 <= s && s < p) {
                return Err(Error::Parameter(format!("s = {s}: requires 2 ≤ s < p = {p}")));
            }
        }
        if self.permissive {
            if m + 2 < 4 {
                return Err(Error::Parameter(format!("m = {m}: permissive mode requires m+2 ≥ 4")));
            }
            if n < m + 2 {
                return Err(Error::Parameter(format!("n = {n}, m = {m}: requires n ≥ m+2")));
            }
            if m + 2 <= 5 {
                notes.push(format!(
                    "permissive mode: m+2 = {} ≤ 5 lies outside the range m+2 > 5 where the vanishing statement is claimed",
                    m + 2
                ));
            }
        } else {
            check_strict(m, n)?;
        }
        Ok(notes)
    }

    fn start(&self, scenario: Scenario, m: u32, n: u32, s: u32, notes: Vec<String>) -> VerificationReport {
        let mut r = VerificationReport::new(
            scenario,
            ScenarioParams {
                p: self.ctx().p(),
                m,
                n,
                s,
            },
        );
        r.notes = notes;
        r
    }

    pub fn lemma_3_1(&self, m: u32, n: u32, s: u32) -> Result<VerificationReport> {
        let t0 = Instant::now();
        let notes = self.gate(m, n, Some(s))?;
        let ctx = *self.ctx();
        let mut rep = self.start(Scenario::Lemma31, m, n, s, notes);
        for r in 1..=s + 3 {
            let (bs, bt) = (s + 3 - r, shifted_degree(&ctx, m, n, s, r));
            let basis = self.engine.basis(bs, &bt, None)?;
            let exceptional = r == 1 && s == ctx.p() - 1;
            let expected: Vec<Monomial> = match (exceptional, self.permissive) {
                (false, _) => Vec::new(),
                (true, false) => g_list(&ctx, m, n)?,
                (true, true) => g_list_lenient(&ctx, m, n),
            };
            let want: BTreeSet<&Monomial> = expected.iter().collect();
            let got: BTreeSet<&Monomial> = basis.monomials.iter().collect();
            rep.push(CheckRecord::new(
                format!("E1 basis of ({bs}, {bt}) at r={r}"),
                if exceptional { format!("g1..g7 = {}", list(&expected)) } else { "empty".into() },
                list(&basis.monomials),
                want == got && got.len() == basis.len(),
            ));
        }
        rep.elapsed = t0.elapsed();
        Ok(rep)
    }

    pub fn eq_3_4(&self, m: u32, n: u32) -> Result<VerificationReport> {
        let t0 = Instant::now();
        let ctx = *self.ctx();
        let p = ctx.p();
        let s = p - 1;
        let notes = self.gate(m, n, Some(s))?;
        let mut rep = self.start(Scenario::Eq34, m, n, s, notes);
        rep.notes.push("coefficient signs are not compared, only nonvanishing".into());
        let gs = g_list(&ctx, m, n)?;
        let leads = eq_3_4_leading_terms(&ctx, m, n)?;
        let images: Vec<Element> = gs.iter().map(|g| d1(&Element::from(g.clone()), &ctx)).collect();
        for (k, ((g, lead), img)) in gs.iter().zip(&leads).zip(&images).enumerate() {
            let i = k + 1;
            rep.push(CheckRecord::new(
                format!("d1(g{i}) for g{i} = {g}"),
                "nonzero",
                if img.is_zero() { "0".to_string() } else { format!("{} terms", img.len()) },
                !img.is_zero(),
            ));
            let c = img.coefficient(lead);
            rep.push(CheckRecord::new(
                format!("d1(g{i}) contains {lead}"),
                "nonzero coefficient",
                format!("coefficient {c}"),
                c != 0,
            ));
        }
        // rank of the images, one weight block at a time
        let mut by_weight: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (k, g) in gs.iter().enumerate() {
            by_weight.entry(g.weight()).or_default().push(k);
        }
        let mut rank = 0;
        for idx in by_weight.values() {
            let mut rows: Vec<&Monomial> = idx.iter().flat_map(|&k| images[k].terms().map(|(m, _)| m)).collect();
            rows.sort();
            rows.dedup();
            let pos: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(r, m)| (*m, r)).collect();
            let mut mat = MatrixFp::zeros(p, rows.len(), idx.len());
            for (col, &k) in idx.iter().enumerate() {
                for (mono, c) in images[k].terms() {
                    mat.set(pos[mono], col, c);
                }
            }
            rank += mat.rank();
        }
        rep.push(CheckRecord::eq("rank of d1(g1), …, d1(g7) over F_p", gs.len(), rank));
        let t = shifted_degree(&ctx, m, n, s, 1);
        let e2 = self.engine.e2_dimension(p + 1, &t, None)?;
        rep.push(CheckRecord::eq(format!("E1 dimension of ({}, {t}, *)", p + 1), gs.len(), e2.e1_dim));
        rep.push(CheckRecord::eq(format!("d1-cycles in ({}, {t}, *)", p + 1), 0, e2.cycle_dim));
        rep.push(CheckRecord::eq(format!("E2 dimension of ({}, {t}, *)", p + 1), 0, e2.e2_dim));
        rep.elapsed = t0.elapsed();
        Ok(rep)
    }

    pub fn theorem_3_2(&self, m: u32, n: u32, s: u32) -> Result<VerificationReport> {
        let t0 = Instant::now();
        let notes = self.gate(m, n, Some(s))?;
        let ctx = *self.ctx();
        let p = ctx.p();
        let mut rep = self.start(Scenario::Thm32, m, n, s, notes);
        let w = omega_zero(&ctx, m, n, s)?;
        let (mono, _) = w.terms().next().expect("ω_0 is a monomial");
        let expected = Tridegree::new(s + 3, t_of_s(&ctx, m, n, s) + s - 2u32, 5 * s - 3);
        rep.push(CheckRecord::eq(format!("tridegree of ω0 = {mono}"), &expected, mono.tridegree()));
        let dw = d1(&w, &ctx);
        rep.push(CheckRecord::eq("d1(ω0)", "0", crate::algebra::render_element(&dw, &ctx)));
        let v = self.engine.survives_to_e2(&w)?;
        rep.push(CheckRecord::eq("ω0 is a d1-boundary", false, v.is_boundary));
        rep.push(CheckRecord::eq("ω0 is nonzero in E2", true, v.e2_nonzero));
        let hit = self.engine.higher_page_hit_analysis(&w)?;
        let observed_weights = hit
            .source_weights
            .iter()
            .map(|(w, c)| format!("{w}×{c}"))
            .collect::<Vec<_>>()
            .join(", ");
        let source = format!("({}, {}, *)", s + 2, expected.t);
        if s == p - 1 {
            let big = (2 * n + 1) * p - 2 * n - 3;
            let small = (2 * m + 1) * p - 2 * m - 3;
            let mut want: BTreeMap<u32, usize> = BTreeMap::new();
            *want.entry(big).or_default() += 6;
            *want.entry(small).or_default() += 1;
            let want = want.iter().map(|(w, c)| format!("{w}×{c}")).collect::<Vec<_>>().join(", ");
            rep.push(CheckRecord::eq(format!("source weight multiset of {source}"), want, &observed_weights));
            rep.push(CheckRecord::eq("weight of ω0", 5 * p - 8, mono.weight()));
        } else {
            rep.push(CheckRecord::eq(format!("source weight multiset of {source}"), "", &observed_weights));
        }
        rep.push(CheckRecord::eq(
            format!("source monomials of weight {}", mono.weight() + 1),
            0,
            hit.d1_source_count,
        ));
        let totals = hit
            .higher
            .iter()
            .map(|c| format!("r={}: {}", c.r, c.e2_dim))
            .collect::<Vec<_>>()
            .join(", ");
        rep.push(CheckRecord::new(
            "E2 totals of every d_r source, r ≥ 2",
            "all zero",
            if totals.is_empty() { "no sources".into() } else { totals },
            hit.not_hit_at_higher_pages,
        ));
        rep.notes.extend(hit.notes);
        rep.elapsed = t0.elapsed();
        Ok(rep)
    }

    pub fn theorem_3_3(&self, m: u32, n: u32, s: u32) -> Result<VerificationReport> {
        let t0 = Instant::now();
        let notes = self.gate(m, n, Some(s))?;
        let ctx = *self.ctx();
        let mut rep = self.start(Scenario::Thm33, m, n, s, notes);
        for r in 2..=s + 3 {
            let (bs, bt) = (s + 3 - r, shifted_degree(&ctx, m, n, s, r));
            let dim = self.engine.e1_dimension(bs, &bt, None)?;
            rep.push(CheckRecord::eq(format!("E1 dimension of ({bs}, {bt}, *) at r={r}"), 0, dim));
        }
        rep.elapsed = t0.elapsed();
        Ok(rep)
    }

    pub fn representatives(&self, m: u32, n: u32, s: u32) -> Result<VerificationReport> {
        let t0 = Instant::now();
        let ctx = *self.ctx();
        let p = ctx.p();
        if !(2 <= s && s < p) {
            return Err(Error::Parameter(format!("s = {s}: requires 2 ≤ s < p = {p}")));
        }
        if m + 2 < 4 || n < m + 2 {
            return Err(Error::Parameter(format!("m = {m}, n = {n}: requires n ≥ m+2 ≥ 4")));
        }
        let mut rep = self.start(Scenario::Reps, m, n, s, Vec::new());
        let q = ctx.q();
        let beta = product(&[(gen_a(2), s - 2), (gen_h(2, 0)?, 1), (gen_h(1, 1)?, 1)], &ctx)?;
        let want = Tridegree::new(s, BigUint::from(q * (s * p + s - 1) + s - 2), 5 * s - 6);
        rep.push(CheckRecord::eq(format!("tridegree of {beta}"), &want, beta.tridegree()));
        let db = d1(&Element::from(beta.clone()), &ctx);
        rep.push(CheckRecord::eq(format!("d1({beta})"), "0", crate::algebra::render_element(&db, &ctx)));
        let hs = product(&[(gen_h(1, 0)?, 1), (gen_h(1, n)?, 1), (gen_h(1, m)?, 1)], &ctx)?;
        let pb = BigUint::from(p);
        let want = Tridegree::new(3, (pb.pow(n) + pb.pow(m) + 1u32) * q, 3);
        rep.push(CheckRecord::eq(format!("tridegree of {hs}"), &want, hs.tridegree()));
        let dh = d1(&Element::from(hs.clone()), &ctx);
        rep.push(CheckRecord::eq(format!("d1({hs})"), "0", crate::algebra::render_element(&dh, &ctx)));
        let prod = Element::from(beta).mul(&Element::from(hs), &ctx);
        let want_t = t_of_s(&ctx, m, n, s) + s - 2u32;
        let observed = match prod.homogeneity() {
            crate::algebra::Homogeneity::Homogeneous(d) => d.t.to_string(),
            _ => "zero product".into(),
        };
        rep.push(CheckRecord::eq("internal degree of the product", want_t, observed));
        rep.elapsed = t0.elapsed();
        Ok(rep)
    }

    pub fn main(&self, m: u32, n: u32, s: u32) -> Result<VerificationReport> {
        let t0 = Instant::now();
        let notes = self.gate(m, n, Some(s))?;
        let p = self.ctx().p();
        let mut rep = self.start(Scenario::Main, m, n, s, notes);
        let mut parts = vec![self.lemma_3_1(m, n, s)?];
        if s == p - 1 {
            parts.push(self.eq_3_4(m, n)?);
        }
        parts.push(self.theorem_3_2(m, n, s)?);
        parts.push(self.theorem_3_3(m, n, s)?);
        parts.push(self.representatives(m, n, s)?);
        for part in parts {
            for mut r in part.records {
                r.description = format!("[{}] {}", part.scenario, r.description);
                rep.push(r);
            }
            for note in part.notes {
                if !rep.notes.contains(&note) {
                    rep.notes.push(note);
                }
            }
        }
        rep.notes.push(
            "convergence of the May and Adams spectral sequences to the groups in question is assumed, not checked"
                .into(),
        );
        rep.elapsed = t0.elapsed();
        Ok(rep)
    }

    pub fn run(&self, scenario: Scenario, m: u32, n: u32, s: u32) -> Result<VerificationReport> {
        match scenario {
            Scenario::Lemma31 => self.lemma_3_1(m, n, s),
            Scenario::Eq34 => self.eq_3_4(m, n),
            Scenario::Thm32 => self.theorem_3_2(m, n, s),
            Scenario::Thm33 => self.theorem_3_3(m, n, s),
            Scenario::Reps => self.representatives(m, n, s),
            Scenario::Main => self.main(m, n, s),
        }
    }
}

fn default_verifier(ctx: &PrimeContext) -> Verifier {
    Verifier::new(Engine::new(*ctx, Default::default()))
}

pub fn verify_lemma_3_1(ctx: &PrimeContext, m: u32, n: u32, s: u32) -> Result<VerificationReport> {
    default_verifier(ctx).lemma_3_1(m, n, s)
}

pub fn verify_eq_3_4(ctx: &PrimeContext, m: u32, n: u32) -> Result<VerificationReport> {
    default_verifier(ctx).eq_3_4(m, n)
}

pub fn verify_theorem_3_2(ctx: &PrimeContext, m: u32, n: u32, s: u32) -> Result<VerificationReport> {
    default_verifier(ctx).theorem_3_2(m, n, s)
}

pub fn verify_theorem_3_3(ctx: &PrimeContext, m: u32, n: u32, s: u32) -> Result<VerificationReport> {
    default_verifier(ctx).theorem_3_3(m, n, s)
}

pub fn verify_representatives(ctx: &PrimeContext, m: u32, n: u32, s: u32) -> Result<VerificationReport> {
    default_verifier(ctx).representatives(m, n, s)
}

pub fn verify_main(ctx: &PrimeContext, m: u32, n: u32, s: u32) -> Result<VerificationReport> {
    default_verifier(ctx).main(m, n, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_monomial;

    fn ctx() -> PrimeContext {
        PrimeContext::new(5).unwrap()
    }

    #[test]
    fn g_list_instances() {
        let c = ctx();
        let gs = expected_g_list(&c, 4, 6).unwrap();
        assert_eq!(gs[0], parse_monomial("a(6)^2 h(1,4) h(3,0) h(4,2) h(6,0)", &c).unwrap());
        assert_eq!(gs[6], parse_monomial("a(4)^2 h(1,6) h(2,2) h(3,0) h(4,0)", &c).unwrap());
        let t = BigUint::from(130194u32);
        for (k, g) in gs.iter().enumerate() {
            assert_eq!(g.tridegree().s, 6);
            assert_eq!(g.tridegree().t, t);
            assert_eq!(g.weight(), if k == 6 { 34 } else { 50 });
        }
        let distinct: BTreeSet<_> = gs.iter().collect();
        assert_eq!(distinct.len(), 7);
        let err = expected_g_list(&c, 3, 5).unwrap_err();
        assert!(err.to_string().contains("requires m+2 > 5"));
    }

    #[test]
    fn leading_terms_have_target_degree() {
        let c = ctx();
        let gs = expected_g_list(&c, 4, 6).unwrap();
        let leads = eq_3_4_leading_terms(&c, 4, 6).unwrap();
        assert_eq!(
            leads[6],
            parse_monomial("a(4)^2 h(1,2) h(1,3) h(1,6) h(3,0) h(4,0)", &c).unwrap()
        );
        for (g, l) in gs.iter().zip(&leads) {
            assert_eq!(l.tridegree().s, g.tridegree().s + 1);
            assert_eq!(l.tridegree().t, g.tridegree().t);
            assert_eq!(l.weight() + 1, g.weight());
        }
    }

    #[test]
    fn degree_formula() {
        let c = ctx();
        assert_eq!(t_of_s(&c, 4, 6, 4), BigUint::from(130192u32));
        assert_eq!(shifted_degree(&c, 4, 6, 4, 1), BigUint::from(130194u32));
    }

    #[test]
    fn small_scenarios_pass() {
        let c = ctx();
        let v = default_verifier(&c);
        for s in 2..=4 {
            let r = v.lemma_3_1(4, 6, s).unwrap();
            assert!(r.pass, "{r}");
            let r = v.theorem_3_3(4, 6, s).unwrap();
            assert!(r.pass, "{r}");
            let r = v.representatives(4, 6, s).unwrap();
            assert!(r.pass, "{r}");
        }
        let r = v.eq_3_4(4, 6).unwrap();
        assert!(r.pass, "{r}");
    }

    #[test]
    fn parameter_gate() {
        let c = ctx();
        let v = default_verifier(&c);
        let err = v.lemma_3_1(3, 5, 2).unwrap_err();
        assert!(err.to_string().contains("requires m+2 > 5"));
        assert!(v.lemma_3_1(4, 5, 2).is_err());
        assert!(v.lemma_3_1(4, 6, 1).is_err());
        assert!(v.lemma_3_1(4, 6, 5).is_err());
        let lax = default_verifier(&c).permissive(true);
        let r = lax.theorem_3_3(3, 5, 2).unwrap();
        assert!(r.notes.iter().any(|n| n.contains("permissive")));
    }

    #[test]
    fn scenario_names_round_trip() {
        for s in Scenario::ALL {
            assert_eq!(s.name().parse::<Scenario>().unwrap(), s);
        }
        assert!("lemma32".parse::<Scenario>().is_err());
    }
}
