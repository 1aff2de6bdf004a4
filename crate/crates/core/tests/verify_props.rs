mod common;

use common::ctx;
use mayss_core::verify::{expected_g_list, t_of_s};
use mayss_core::{EnumConfig, Engine, ExecMode, PruneFlags, Scenario, Tridegree, Verifier};

fn verifier(prune: &str, exec: ExecMode) -> Verifier {
    let prune: PruneFlags = prune.parse().unwrap();
    Verifier::new(Engine::new(ctx(5), EnumConfig::new(prune, exec)))
}

#[test]
fn g_list_shares_one_bidegree() {
    let ctx = ctx(5);
    for (m, n) in [(4, 6), (4, 7), (5, 7), (5, 8)] {
        let gs = expected_g_list(&ctx, m, n).unwrap();
        assert_eq!(gs.len(), 7);
        let t = t_of_s(&ctx, m, n, 4) + 5u32 - 3u32;
        for g in &gs {
            assert_eq!((g.tridegree().s, &g.tridegree().t), (6, &t), "{g}");
        }
        let mut names: Vec<String> = gs.iter().map(|g| g.to_string()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 7);
    }
}

#[test]
fn g_list_rejects_small_m() {
    let err = expected_g_list(&ctx(5), 3, 5).unwrap_err();
    assert!(err.to_string().contains("m+2 > 5"), "{err}");
}

#[test]
fn reports_agree_across_configurations() {
    let configs = [("dcv", ExecMode::default()), ("dc", ExecMode::Sequential), ("dv", ExecMode::default())];
    for scenario in [Scenario::Lemma31, Scenario::Thm32, Scenario::Thm33] {
        for s in 2..=4 {
            let reports: Vec<_> = configs
                .iter()
                .map(|(p, e)| verifier(p, *e).run(scenario, 4, 6, s).unwrap())
                .collect();
            assert!(reports.iter().all(|r| r.pass), "{scenario} s={s}");
            assert!(reports.windows(2).all(|w| w[0] == w[1]), "{scenario} s={s}");
        }
    }
}

#[test]
fn lemma31_pass_implies_thm33_pass() {
    let v = verifier("all", ExecMode::default());
    for (m, n, s) in [(4, 6, 2), (4, 6, 3), (4, 6, 4), (4, 7, 3), (5, 7, 4)] {
        let lemma = v.lemma_3_1(m, n, s).unwrap();
        let theorem = v.theorem_3_3(m, n, s).unwrap();
        assert!(lemma.pass && theorem.pass, "({m},{n},{s})");
    }
}

#[test]
fn omega_degree_bookkeeping() {
    let ctx = ctx(5);
    for s in 2..=4u32 {
        let w = mayss_core::verify::omega_zero(&ctx, 4, 6, s).unwrap();
        let d = match w.homogeneity() {
            mayss_core::Homogeneity::Homogeneous(d) => d,
            other => panic!("{other:?}"),
        };
        let t = t_of_s(&ctx, 4, 6, s) + s - 2u32;
        assert_eq!(d, Tridegree::new(s + 3, t, 5 * s - 3));
    }
}
