mod cache;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::json;

use mayss_core::{
    d1, parse_element, render_element, EnumConfig, Engine, ExecMode, Homogeneity, PrimeContext, PruneFlags,
    Scenario, Verifier,
};

use cache::FileCache;
use output::Format;

#[derive(Parser, Debug)]
#[command(name = "mayss", version, about = "May spectral sequence E1/E2 computations over F_p")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Odd prime p ≥ 5.
    #[arg(long, global = true, default_value_t = 5)]
    prime: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Directory for cached bases and d1 blocks.
    #[arg(long, global = true, env = "MAYSS_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Ignore any configured cache directory.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Pruning rules: `all`, `none` or letters from `dcv`.
    #[arg(long, global = true, default_value = "all")]
    prune: PruneFlags,

    /// Run enumeration on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// p-adic profile of an internal degree.
    Profile {
        #[arg(long)]
        t: BigUint,
    },
    /// Monomial basis of an E1 tridegree.
    Basis {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: BigUint,
        #[arg(long)]
        u: Option<u32>,
    },
    /// First May differential of an element.
    D1 { element: String },
    /// E2 dimension of a tridegree, or of all weights when --u is omitted.
    E2 {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: BigUint,
        #[arg(long)]
        u: Option<u32>,
    },
    /// Cycle, boundary and hit status of a homogeneous element.
    Survives { element: String },
    /// Replay one of the verification scenarios.
    Verify {
        #[arg(value_parser = parse_scenario)]
        scenario: Scenario,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// The family index s (`β_s`); ignored by eq34, which uses s = p-1.
        #[arg(long)]
        scase: Option<u32>,
        /// Accept n ≥ m+2 ≥ 4.
        #[arg(long)]
        permissive: bool,
    },
}

fn parse_scenario(s: &str) -> Result<Scenario, String> {
    s.parse().map_err(|e: mayss_core::Error| e.to_string())
}

/// A run either completes with a pass flag or fails with a usage/parameter error.
struct Outcome {
    stdout: String,
    pass: bool,
}

fn engine(global: &GlobalOpts, ctx: PrimeContext) -> anyhow::Result<Engine> {
    let exec = if global.sequential { ExecMode::Sequential } else { ExecMode::default() };
    let mut engine = Engine::new(ctx, EnumConfig::new(global.prune, exec));
    if let (Some(dir), false) = (&global.cache_dir, global.no_cache) {
        let store = FileCache::new(dir).with_context(|| format!("cannot use cache directory {}", dir.display()))?;
        log::debug!("cache at {}", store.root().display());
        engine = engine.with_store(Arc::new(store));
    }
    Ok(engine)
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let g = &cli.global;
    let ctx = PrimeContext::new(g.prime)?;
    let machine = g.format == Format::Machine;
    let base = json!({ "prime": g.prime, "prune": g.prune.fingerprint() });
    let with = |extra: serde_json::Value| {
        let mut v = base.clone();
        v.as_object_mut().unwrap().extend(extra.as_object().unwrap().clone());
        v
    };
    let ok = |stdout: String| Outcome { stdout, pass: true };

    match &cli.command {
        Command::Profile { t } => {
            let prof = ctx.padic_profile(t);
            Ok(ok(if machine {
                output::document("profile", with(json!({ "t": t.to_string() })), output::profile_json(&prof))
            } else {
                output::profile_text(&prof)
            }))
        }
        Command::Basis { s, t, u } => {
            let b = engine(g, ctx)?.basis(*s, t, *u)?;
            Ok(ok(if machine {
                let params = with(json!({ "s": s, "t": t.to_string(), "u": u }));
                output::document("basis", params, output::basis_json(&b))
            } else {
                output::basis_text(&b)
            }))
        }
        Command::D1 { element } => {
            let x = parse_element(element, &ctx)?;
            let dx = d1(&x, &ctx);
            Ok(ok(if machine {
                let results = json!({
                    "input": render_element(&x, &ctx),
                    "output": render_element(&dx, &ctx),
                    "terms": dx.len(),
                });
                output::document("d1", with(json!({ "element": element })), results)
            } else {
                render_element(&dx, &ctx)
            }))
        }
        Command::E2 { s, t, u } => {
            let r = engine(g, ctx)?.e2_dimension(*s, t, *u)?;
            Ok(ok(if machine {
                let params = with(json!({ "s": s, "t": t.to_string(), "u": u }));
                output::document("e2", params, serde_json::to_value(&r)?)
            } else {
                output::e2_text(&r)
            }))
        }
        Command::Survives { element } => {
            let x = parse_element(element, &ctx)?;
            let eng = engine(g, ctx)?;
            let v = eng.survives_to_e2(&x)?;
            let hit = match x.homogeneity() {
                Homogeneity::Homogeneous(_) => Some(eng.higher_page_hit_analysis(&x)?),
                _ => None,
            };
            Ok(ok(if machine {
                output::document("survives", with(json!({ "element": element })), output::survives_json(&v, hit.as_ref()))
            } else {
                output::survives_text(&v, hit.as_ref())
            }))
        }
        Command::Verify {
            scenario,
            m,
            n,
            scase,
            permissive,
        } => {
            let s = match (scenario, scase) {
                (Scenario::Eq34, _) => ctx.p() - 1,
                (_, Some(s)) => *s,
                (_, None) => anyhow::bail!("--scase is required for scenario {scenario}"),
            };
            let verifier = Verifier::new(engine(g, ctx)?).permissive(*permissive);
            let report = verifier.run(*scenario, *m, *n, s)?;
            log::info!("{scenario} finished in {:.2?}", report.elapsed);
            let params = with(json!({
                "scenario": scenario.name(),
                "m": m,
                "n": n,
                "s": s,
                "permissive": permissive,
            }));
            Ok(Outcome {
                pass: report.pass,
                stdout: if machine {
                    output::document("verify", params, output::report_json(&report))
                } else {
                    output::report_text(&report)
                },
            })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let t0 = Instant::now();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = writeln!(std::io::stdout().lock(), "{}", out.stdout) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            log::info!("done in {:.2?}", t0.elapsed());
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
