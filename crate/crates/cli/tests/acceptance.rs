//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Pinned tolerances: all set, dimension and rank comparisons are exact
//! (tolerance zero). Runtime limits: criterion 1 under 120 s, criterion 9
//! under 600 s, both measured on the build profile under test.

#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use mayss_core::enumerate::{column_sums, lemma_2_3_excludes, vanish_lemma_2_1, vanish_lemma_2_2};
use mayss_core::verify::{expected_g_list, omega_zero, t_of_s};
use mayss_core::{
    d1, d1_generator, enumerate_basis, parse_monomial, BidegreeBasis, Element, EnumConfig, Engine, ExecMode,
    Generator, Homogeneity, MatrixFp, Monomial, PrimeContext, PruneFlags, Tridegree,
};
use num_bigint::BigUint;
use oracle::Oracle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x6d61_7973;
const LEMMA31_LIMIT: Duration = Duration::from_secs(120);
const MAIN_LIMIT: Duration = Duration::from_secs(600);

const G_SET: [&str; 7] = [
    "a(6)^2 h(1,4) h(3,0) h(4,2) h(6,0)",
    "a(6)^2 h(1,2) h(2,4) h(5,0) h(6,0)",
    "a(5) a(6) h(2,4) h(3,0) h(4,2) h(6,0)",
    "a(6)^2 h(2,4) h(3,0) h(3,2) h(6,0)",
    "a(6)^2 h(2,4) h(3,0) h(4,2) h(5,0)",
    "a(3) a(6) h(2,4) h(4,2) h(5,0) h(6,0)",
    "a(4)^2 h(1,6) h(2,2) h(3,0) h(4,0)",
];

/// One displayed monomial of `d1(g_i)` per `g_i`, same order as `G_SET`.
const LEADING: [&str; 7] = [
    "a(6)^2 h(1,0) h(1,4) h(3,0) h(4,2) h(5,1)",
    "a(6)^2 h(1,0) h(1,2) h(2,4) h(5,0) h(5,1)",
    "a(5) a(6) h(1,0) h(2,4) h(3,0) h(4,2) h(5,1)",
    "a(6)^2 h(1,0) h(2,4) h(3,0) h(3,2) h(5,1)",
    "a(6)^2 h(1,0) h(2,4) h(3,0) h(4,1) h(4,2)",
    "a(3) a(6) h(1,0) h(2,4) h(4,2) h(5,0) h(5,1)",
    "a(4)^2 h(1,2) h(1,3) h(1,6) h(3,0) h(4,0)",
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn ctx(p: u64) -> PrimeContext {
    PrimeContext::new(p).unwrap()
}

fn engine() -> Engine {
    Engine::new(ctx(5), EnumConfig::default())
}

fn sorted(b: &BidegreeBasis) -> Vec<String> {
    let mut v: Vec<String> = b.monomials.iter().map(|m| m.to_string()).collect();
    v.sort();
    v
}

fn criterion_1() -> Outcome {
    let eng = engine();
    let start = Instant::now();
    let expected: BTreeSet<String> = G_SET.iter().map(|s| s.to_string()).collect();
    let mut bad = Vec::new();
    for s in 2..=4u32 {
        for r in 1..=s + 3 {
            let t = t_of_s(eng.ctx(), 4, 6, s) + s - (r + 1);
            let b = eng.basis(s + 3 - r, &t, None).unwrap();
            let got: BTreeSet<String> = b.monomials.iter().map(|m| m.to_string()).collect();
            let ok = if (s, r) == (4, 1) { got == expected } else { got.is_empty() };
            if !ok {
                bad.push(format!("(s={s}, r={r}) -> {} monomials", got.len()));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < LEMMA31_LIMIT;
    outcome(pass, format!("lemma31 bases, 21 queries, {elapsed:.2?} (limit {LEMMA31_LIMIT:?}) {bad:?}"))
}

fn criterion_2() -> Outcome {
    let ctx = ctx(5);
    let gs: Vec<Monomial> = G_SET.iter().map(|s| parse_monomial(s, &ctx).unwrap()).collect();
    let mut problems = Vec::new();
    let images: Vec<Element> = gs.iter().map(|g| d1(&Element::monomial(g.clone()), &ctx)).collect();
    for (k, (img, lead)) in images.iter().zip(LEADING).enumerate() {
        let lead = parse_monomial(lead, &ctx).unwrap();
        if img.is_zero() || img.coefficient(&lead) == 0 {
            problems.push(format!("g{}", k + 1));
        }
    }
    let support: Vec<Monomial> = images
        .iter()
        .flat_map(|x| x.terms().map(|(m, _)| m.clone()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let columns: Vec<Vec<u32>> = images
        .iter()
        .map(|x| support.iter().map(|m| x.coefficient(m)).collect())
        .collect();
    let rank = MatrixFp::from_columns(5, support.len(), &columns).unwrap().rank();
    let e2 = engine().e2_dimension(6, &BigUint::from(130_194u32), None).unwrap();
    let pass = problems.is_empty() && rank == 7 && e2.e2_dim == 0 && e2.e1_dim == 7;
    outcome(
        pass,
        format!("d1(g_i) leading terms {problems:?} missing; rank {rank}/7; E2(6,130194,*) = {}", e2.e2_dim),
    )
}

fn criterion_3() -> Outcome {
    let ctx = ctx(5);
    let eng = engine();
    let mut problems = Vec::new();
    for s in 2..=4u32 {
        let w = omega_zero(&ctx, 4, 6, s).unwrap();
        let want = Tridegree::new(s + 3, t_of_s(&ctx, 4, 6, s) + s - 2u32, 5 * s - 3);
        if w.homogeneity() != Homogeneity::Homogeneous(want) {
            problems.push(format!("s={s}: tridegree"));
        }
        if !d1(&w, &ctx).is_zero() {
            problems.push(format!("s={s}: not a cycle"));
        }
        let v = eng.survives_to_e2(&w).unwrap();
        if v.is_boundary || !v.e2_nonzero {
            problems.push(format!("s={s}: boundary"));
        }
        let hit = eng.higher_page_hit_analysis(&w).unwrap();
        if !hit.not_hit_by_d1 || !hit.not_hit_at_higher_pages || hit.higher.iter().any(|c| c.e2_dim != 0) {
            problems.push(format!("s={s}: hit analysis"));
        }
        if s == 4 {
            if hit.source_weights != vec![(34, 1), (50, 6)] {
                problems.push(format!("s=4: source weights {:?}", hit.source_weights));
            }
            if hit.tridegree.u != 17 {
                problems.push(format!("s=4: weight {}", hit.tridegree.u));
            }
        }
    }
    outcome(problems.is_empty(), format!("omega_0 cycle, non-boundary, unhit; problems {problems:?}"))
}

fn criterion_4() -> Outcome {
    let eng = engine();
    let mut nonzero = Vec::new();
    for s in 2..=4u32 {
        for r in 2..=s + 3 {
            let t = t_of_s(eng.ctx(), 4, 6, s) + s - (r + 1);
            let d = eng.e1_dimension(s + 3 - r, &t, None).unwrap();
            if d != 0 {
                nonzero.push((s, r, d));
            }
        }
    }
    outcome(nonzero.is_empty(), format!("E1 dimensions zero for r >= 2; nonzero {nonzero:?}"))
}

fn criterion_5() -> Outcome {
    let ctx = ctx(5);
    let q = 8u32;
    let mut problems = Vec::new();
    for s in 2..=4u32 {
        let mut x = Element::generator(Generator::h(2, 0).unwrap(), &ctx)
            .mul(&Element::generator(Generator::h(1, 1).unwrap(), &ctx), &ctx);
        for _ in 0..s - 2 {
            x = Element::generator(Generator::a(2), &ctx).mul(&x, &ctx);
        }
        let want = Tridegree::new(s, q * (5 * s + s - 1) + s - 2, 5 * s - 6);
        if x.homogeneity() != Homogeneity::Homogeneous(want.clone()) {
            problems.push(format!("beta s={s}"));
        }
        if s == 3 && want.t != BigUint::from(137u32) {
            problems.push("s=3 t".into());
        }
    }
    let y = [(1, 0), (1, 6), (1, 4)]
        .iter()
        .map(|&(i, j)| Element::generator(Generator::h(i, j).unwrap(), &ctx))
        .fold(Element::one(), |x, g| x.mul(&g, &ctx));
    if y.homogeneity() != Homogeneity::Homogeneous(Tridegree::new(3, 130_008u32, 3)) {
        problems.push(format!("h(1,0)h(1,6)h(1,4) has {:?}", y.homogeneity()));
    }
    outcome(problems.is_empty(), format!("tridegree bookkeeping; problems {problems:?}"))
}

fn random_generator(rng: &mut ChaCha8Rng, bound: u32) -> Generator {
    match rng.gen_range(0..3) {
        0 => Generator::a(rng.gen_range(0..=bound)),
        k => {
            let i = rng.gen_range(1..=bound);
            let j = rng.gen_range(0..=bound - i);
            if k == 1 {
                Generator::h(i, j).unwrap()
            } else {
                Generator::b(i, j).unwrap()
            }
        }
    }
}

/// A nonzero canonical monomial with filtration at most `max_filt`.
fn random_monomial(rng: &mut ChaCha8Rng, ctx: &PrimeContext, max_filt: u32) -> Element {
    loop {
        let mut x = Element::one();
        let target = rng.gen_range(1..=max_filt);
        let mut f = 0;
        while f < target {
            let g = random_generator(rng, 5);
            let gf = if g.is_exterior() || g.kind() == mayss_core::GenKind::A { 1 } else { 2 };
            if f + gf > target {
                continue;
            }
            f += gf;
            x = x.mul(&Element::generator(g, ctx), ctx);
        }
        if !x.is_zero() {
            return x;
        }
    }
}

fn shifted(x: &Element, dx: &Element) -> bool {
    match (x.homogeneity(), dx.homogeneity()) {
        (_, Homogeneity::Zero) => true,
        (Homogeneity::Homogeneous(a), Homogeneity::Homogeneous(b)) => {
            b == Tridegree::new(a.s + 1, a.t.clone(), a.u - 1)
        }
        _ => false,
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut fails = Vec::new();
    let mut gens_checked = 0;
    for p in [5u64, 7] {
        let ctx = ctx(p);
        let mut gens = Vec::new();
        for i in 0..=6u32 {
            gens.push(Generator::a(i));
        }
        for i in 1..=6u32 {
            for j in 0..=6 - i {
                gens.push(Generator::h(i, j).unwrap());
                gens.push(Generator::b(i, j).unwrap());
            }
        }
        for g in gens {
            let x = Element::generator(g, &ctx);
            let dx = d1_generator(&g, &ctx);
            gens_checked += 1;
            if !d1(&dx, &ctx).is_zero() || !shifted(&x, &dx) {
                fails.push(format!("p={p} {g}"));
            }
        }
    }
    let ctx5 = ctx(5);
    let mut monos = 0;
    for k in 0..200 {
        let ctx = if k % 2 == 0 { ctx5 } else { ctx(7) };
        let x = random_monomial(&mut rng, &ctx, 4);
        let dx = d1(&x, &ctx);
        monos += 1;
        if !d1(&dx, &ctx).is_zero() || !shifted(&x, &dx) {
            fails.push(format!("d1 d1 {x:?}"));
        }
    }
    let mut pairs = 0;
    for _ in 0..200 {
        let x = random_monomial(&mut rng, &ctx5, 3);
        let y = random_monomial(&mut rng, &ctx5, 3);
        let sx = match x.homogeneity() {
            Homogeneity::Homogeneous(d) => d.s,
            _ => unreachable!(),
        };
        let xy = x.mul(&y, &ctx5);
        let lhs = d1(&xy, &ctx5);
        let right = x.mul(&d1(&y, &ctx5), &ctx5);
        let right = if sx % 2 == 1 { right.neg(&ctx5) } else { right };
        let rhs = d1(&x, &ctx5).mul(&y, &ctx5).add(&right, &ctx5);
        pairs += 1;
        if lhs != rhs || !shifted(&xy, &lhs) {
            fails.push("leibniz".into());
        }
    }
    outcome(
        fails.is_empty(),
        format!("d1 d1 = 0 on {gens_checked} generators and {monos} monomials, Leibniz on {pairs} pairs; failures {}", fails.len()),
    )
}

fn enumerate(s: u32, t: u64, prune: PruneFlags) -> BidegreeBasis {
    let cfg = EnumConfig::new(prune, ExecMode::default());
    enumerate_basis(&ctx(5), s, &BigUint::from(t), None, &cfg).unwrap()
}

/// Returns the outcome and every pruned output for the contiguity audit.
fn criterion_7() -> (Outcome, Vec<Monomial>) {
    let mut seen = Vec::new();
    let mut mismatches = Vec::new();
    let mut oracle = Oracle::new(5, 5000);
    let mut compare = |s: u32, t: u64, seen: &mut Vec<Monomial>, mismatches: &mut Vec<(u32, u64)>| {
        let pruned = enumerate(s, t, PruneFlags::ALL);
        let unpruned = enumerate(s, t, PruneFlags::NONE);
        let reference = oracle.rendered(s, t.into(), None);
        if sorted(&pruned) != sorted(&unpruned) || sorted(&pruned) != reference {
            mismatches.push((s, t));
        }
        seen.extend(pruned.monomials);
    };
    let mut count = 0;
    for s in 0..=4 {
        for t in 0..=500 {
            compare(s, t, &mut seen, &mut mismatches);
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    for _ in 0..100 {
        let (s, t) = (rng.gen_range(1..=5), rng.gen_range(501..=5000));
        compare(s, t, &mut seen, &mut mismatches);
        count += 1;
    }
    let o = outcome(
        mismatches.is_empty(),
        format!("pruned = unpruned = oracle on {count} queries ({} monomials); mismatches {mismatches:?}", seen.len()),
    );
    (o, seen)
}

fn criterion_8(outputs: &[Monomial]) -> Outcome {
    let ctx = ctx(5);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut violations = Vec::new();
    let mut hits = [0usize; 2];
    for (lemma, hit) in hits.iter_mut().enumerate() {
        for _ in 0..500 {
            let s1 = if lemma == 0 { rng.gen_range(1..5) } else { rng.gen_range(1..8) };
            let t: u64 = rng.gen_range(0..=20_000);
            let tb = BigUint::from(t);
            let verdict = if lemma == 0 {
                vanish_lemma_2_1(s1, &tb, &ctx).unwrap()
            } else {
                vanish_lemma_2_2(s1, &tb, &ctx).unwrap()
            };
            if verdict {
                *hit += 1;
                if !enumerate(s1, t, PruneFlags::NONE).is_empty() {
                    violations.push(format!("{} at ({s1}, {t})", ["digit bound", "c[-1] bound"][lemma]));
                }
            }
        }
    }
    let bad23 = outputs
        .iter()
        .filter(|m| lemma_2_3_excludes(&column_sums(m), m.factor_count()))
        .count();
    outcome(
        violations.is_empty() && bad23 == 0 && hits.iter().all(|&h| h > 0),
        format!(
            "vanishing verdicts: digit bound {}, c[-1] bound {} of 500 each, all empty; contiguity violations {bad23} of {} outputs; {violations:?}",
            hits[0],
            hits[1],
            outputs.len()
        ),
    )
}

fn mayss(args: &[&str], cache: Option<&Path>) -> (i32, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mayss"));
    cmd.args(args).env_remove("MAYSS_CACHE_DIR");
    match cache {
        Some(dir) => cmd.arg("--cache-dir").arg(dir),
        None => cmd.arg("--no-cache"),
    };
    let out = cmd.output().expect("run mayss");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let (code, stdout) = mayss(&["verify", "main", "--m", "4", "--n", "7", "--scase", "3"], None);
    let elapsed = start.elapsed();
    let text = String::from_utf8_lossy(&stdout);
    let pass = code == 0 && text.contains("overall: PASS") && elapsed < MAIN_LIMIT;
    outcome(pass, format!("verify main (p=5, m=4, n=7, s=3) exit {code}, {elapsed:.2?} (limit {MAIN_LIMIT:?})"))
}

fn criterion_10() -> Outcome {
    let mut runs: Vec<Vec<String>> = Vec::new();
    for s in ["2", "3", "4"] {
        for sc in ["lemma31", "thm32", "thm33"] {
            runs.push(["verify", sc, "--m", "4", "--n", "6", "--scase", s].map(String::from).to_vec());
        }
    }
    runs.push(["verify", "eq34", "--m", "4", "--n", "6"].map(String::from).to_vec());
    let dir = tempfile::tempdir().unwrap();
    let mut problems = Vec::new();
    for args in &runs {
        let mut args: Vec<&str> = args.iter().map(String::as_str).collect();
        args.extend(["--format", "machine"]);
        let outputs = [
            mayss(&args, None),
            mayss(&args, Some(dir.path())),
            mayss(&args, Some(dir.path())),
            mayss(&args, None),
        ];
        let same = outputs.windows(2).all(|w| w[0] == w[1]);
        if !same || outputs[0].0 != 0 || serde_json_check(&outputs[0].1).is_none() {
            problems.push(args[1..].join(" "));
        }
    }
    let cached = std::fs::read_dir(dir.path()).map(|d| d.count()).unwrap_or(0);
    outcome(
        problems.is_empty() && cached > 0,
        format!("{} commands x (disabled, cold, warm, repeat) byte-identical; {cached} cache files; problems {problems:?}", runs.len()),
    )
}

/// Minimal structural check of the machine envelope.
fn serde_json_check(stdout: &[u8]) -> Option<()> {
    let text = std::str::from_utf8(stdout).ok()?;
    ["\"command\"", "\"params\"", "\"results\"", "\"engine_version\""]
        .iter()
        .all(|k| text.contains(k))
        .then_some(())
}

fn main() -> ExitCode {
    // the oracle g-list must agree with the hand-instantiated set
    let lib: BTreeSet<String> = expected_g_list(&ctx(5), 4, 6).unwrap().iter().map(|m| m.to_string()).collect();
    assert_eq!(lib, G_SET.iter().map(|s| s.to_string()).collect());

    let (c7, outputs) = criterion_7();
    let results = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        c7,
        criterion_8(&outputs),
        criterion_9(),
        criterion_10(),
    ];
    let mut all = true;
    for (k, r) in results.iter().enumerate() {
        println!("{} criterion {}: {}", if r.pass { "PASS" } else { "FAIL" }, k + 1, r.detail);
        all &= r.pass;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
