use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use sigmaperm::catalog::{self, Manifest};
use sigmaperm::format::load_group;
use sigmaperm::sigma::{Classical, SigmaContext, SigmaPartition};
use sigmaperm::{primes, FiniteGroup, SubId, SubgroupLattice, DEFAULT_LATTICE_CUTOFF};
use sigmaperm_harness::theorems::summarize;
use sigmaperm_harness::{
    example_1_2_report, run_campaign, CampaignConfig, PartitionPolicy, SCHEMA_VERSION,
};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn version_line() -> &'static str {
    let line = format!(
        "{} (report schema {SCHEMA_VERSION})",
        env!("CARGO_PKG_VERSION")
    );
    Box::leak(line.into_boxed_str())
}

#[derive(Parser)]
#[command(name = "sigmaperm", version = version_line())]
#[command(about = "σ-permutability toolkit for finite permutation groups")]
struct Cli {
    /// Largest group order for which a subgroup lattice is built
    #[arg(long, global = true, env = "SIGMAPERM_CUTOFF", default_value_t = DEFAULT_LATTICE_CUTOFF)]
    cutoff: u64,

    /// Worker threads for campaigns (default: all cores)
    #[arg(long, global = true, env = "SIGMAPERM_JOBS")]
    jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Order, primes, solubility ladder, chief factors and Hall σ-sets
    Analyze {
        /// Catalog name, constructor expression, or group file
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "singletons")]
        sigma: String,
    },
    /// Evaluate one predicate on a subgroup given by a generator file
    Predicate {
        #[arg(value_enum)]
        name: PredicateName,
        #[arg(long)]
        group: String,
        /// Generator file on the ambient group's points
        #[arg(long)]
        sub: PathBuf,
        #[arg(long, default_value = "singletons")]
        sigma: String,
    },
    /// Reproduce the worked example on the order-1260 group
    Example12,
    /// Sweep every check over the corpus
    Campaign {
        #[arg(long, default_value_t = 60)]
        max_order: u64,
        /// all | singletons | whole | a partition such as "2,3|5"
        #[arg(long, default_value = "all")]
        policy: String,
        #[arg(long, default_value_t = CampaignConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = CampaignConfig::default().samples_per_suite)]
        samples: usize,
        /// Per-job wall-clock ceiling in seconds, 0 for none
        #[arg(long, default_value_t = 120)]
        budget: u64,
        /// Skip independent re-verification of certificates
        #[arg(long)]
        no_verify: bool,
    },
    /// Print the named catalog entries and the corpus
    ListCatalog {
        #[arg(long, default_value_t = 60)]
        max_order: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PredicateName {
    SigmaSubnormal,
    SigmaPermutable,
    WeaklySigmaPermutable,
    SigmaCore,
    SigmaSoluble,
    SigmaNilpotent,
    Subnormal,
    SPermutable,
    WeaklySPermutable,
    CNormal,
    HypercyclicallyEmbedded,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn resolve_group(source: &str) -> Result<FiniteGroup, Usage> {
    if Path::new(source).is_file() {
        return Ok(load_group(source)?);
    }
    Ok(Manifest::builtin().resolve(source)?)
}

fn build(group: &FiniteGroup, cutoff: u64) -> Result<Arc<SubgroupLattice>, Usage> {
    Ok(Arc::new(SubgroupLattice::new(group, cutoff)?))
}

fn emit(cli: &Cli, text: String) -> Result<(), Usage> {
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serialises") + "\n"
}

#[derive(Serialize)]
struct HallBlock {
    block: String,
    halls: usize,
    order: Option<u64>,
    nilpotent: usize,
}

#[derive(Serialize)]
struct Analysis {
    order: u64,
    primes: Vec<u64>,
    sigma: String,
    sigma_of_g: Vec<String>,
    soluble: bool,
    supersoluble: bool,
    nilpotent: bool,
    sigma_soluble: bool,
    sigma_nilpotent: bool,
    sigma_full: bool,
    sylow_type: bool,
    chief_factor_orders: Vec<u64>,
    subgroups: usize,
    hall_blocks: Vec<HallBlock>,
    complete_hall_sets: usize,
}

fn analyze(cli: &Cli, group: &str, sigma: &str) -> Result<u8, Usage> {
    let g = resolve_group(group)?;
    let l = build(&g, cli.cutoff)?;
    let top = l.top();
    let s = SigmaPartition::parse(sigma, g.order())?;
    let ctx = SigmaContext::new(l.clone(), s);
    let block_name = |b: usize| {
        ctx.sigma().blocks()[b]
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    let blocks = ctx.sigma_of(top);
    let sol = ctx.sigma_solubility(top);
    let a = Analysis {
        order: g.order(),
        primes: primes::prime_divisors(g.order()),
        sigma: ctx.sigma().to_string(),
        sigma_of_g: blocks
            .iter()
            .map(|&b| format!("{{{}}}", block_name(b)))
            .collect(),
        soluble: l.is_soluble(top),
        supersoluble: l.is_supersoluble(top),
        nilpotent: l.is_nilpotent(top),
        sigma_soluble: sol.sigma_soluble,
        sigma_nilpotent: sol.sigma_nilpotent,
        sigma_full: ctx.is_sigma_full(top),
        sylow_type: ctx.is_sigma_full_of_sylow_type(top),
        chief_factor_orders: l.chief_series(top, None)?.factor_orders(),
        subgroups: l.len(),
        hall_blocks: blocks
            .iter()
            .map(|&b| {
                let halls = ctx.hall_for_block(top, b);
                HallBlock {
                    block: block_name(b),
                    halls: halls.len(),
                    order: halls.first().map(|&h| l.order(h)),
                    nilpotent: halls.iter().filter(|&&h| l.is_nilpotent(h)).count(),
                }
            })
            .collect(),
        complete_hall_sets: ctx.complete_hall_sigma_sets(top).len(),
    };
    let text = match cli.format {
        Format::Json => pretty(&a),
        Format::Text => {
            let mut t = format!(
                "order {}\nprimes {:?}\nsigma {}\nsigma(G) {}\nsubgroups {}\n",
                a.order,
                a.primes,
                a.sigma,
                a.sigma_of_g.join(" "),
                a.subgroups
            );
            for (k, v) in [
                ("nilpotent", a.nilpotent),
                ("supersoluble", a.supersoluble),
                ("soluble", a.soluble),
                ("σ-nilpotent", a.sigma_nilpotent),
                ("σ-soluble", a.sigma_soluble),
                ("σ-full", a.sigma_full),
                ("σ-full of Sylow type", a.sylow_type),
            ] {
                t += &format!("{k:<22}{v}\n");
            }
            t += &format!("chief factor orders {:?}\n", a.chief_factor_orders);
            for h in &a.hall_blocks {
                let order = h.order.map_or("-".into(), |o| o.to_string());
                t += &format!(
                    "Hall {{{}}}-subgroups: {} of order {order}, {} nilpotent\n",
                    h.block, h.halls, h.nilpotent
                );
            }
            t += &format!("complete Hall σ-sets {}\n", a.complete_hall_sets);
            t
        }
    };
    emit(cli, text)?;
    Ok(0)
}

fn load_sub(path: &Path, g: &FiniteGroup, l: &SubgroupLattice) -> Result<SubId, Usage> {
    let h = load_group(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    if h.degree() != g.degree() {
        return Err(Usage(format!(
            "{}: degree {} but the group acts on {} points",
            path.display(),
            h.degree(),
            g.degree()
        )));
    }
    if let Some(x) = h.generators().iter().find(|x| !g.has(x)) {
        return Err(Usage(format!(
            "{}: generator {x} is not in the group",
            path.display()
        )));
    }
    Ok(l.find(&h)?)
}

fn predicate(
    cli: &Cli,
    name: PredicateName,
    group: &str,
    sub: &Path,
    sigma: &str,
) -> Result<u8, Usage> {
    use PredicateName::*;
    let g = resolve_group(group)?;
    let l = build(&g, cli.cutoff)?;
    let h = load_sub(sub, &g, &l)?;
    let top = l.top();
    let ctx = SigmaContext::new(l.clone(), SigmaPartition::parse(sigma, g.order())?);
    let cl = Classical::new(l.clone());
    let hg = l.to_group(h);
    let check = |w: &sigmaperm::SigmaWitness| w.verify(&hg, &g, ctx.sigma()).unwrap_or(false);
    let (value, detail, witness) = match name {
        SigmaSubnormal => {
            let w = ctx.subnormal_witness(h, top);
            let detail = ctx.subnormal_chain(h, top).map(|c| {
                format!(
                    "chain orders {:?}",
                    c.iter().map(|&k| l.order(k)).collect::<Vec<_>>()
                )
            });
            (
                w.is_some(),
                detail,
                w.map(|w| summarize(&w, Some(check(&w)))),
            )
        }
        SigmaPermutable => {
            let w = ctx.permutable_witness(h, top);
            (
                ctx.is_sigma_permutable(h, top),
                None,
                w.map(|w| summarize(&w, Some(check(&w)))),
            )
        }
        WeaklySigmaPermutable => {
            let t = ctx.weak_supplement(h, top);
            let w = ctx.weak_witness(h, top);
            (
                t.is_some(),
                t.map(|t| format!("witness |T| = {}", l.order(t))),
                w.map(|w| summarize(&w, Some(check(&w)))),
            )
        }
        SigmaCore => {
            let core = ctx.sigma_core(h, top);
            let w = ctx.core_witness(h, top);
            (
                core == h,
                Some(format!("σ-core order {}", l.order(core))),
                Some(summarize(&w, Some(check(&w)))),
            )
        }
        SigmaSoluble => (ctx.sigma_solubility(h).sigma_soluble, None, None),
        SigmaNilpotent => (ctx.sigma_solubility(h).sigma_nilpotent, None, None),
        Subnormal => (l.is_subnormal(h, top), None, None),
        SPermutable => (cl.is_s_permutable(h, top), None, None),
        WeaklySPermutable => {
            let t = cl.weak_s_supplement(h, top);
            (
                t.is_some(),
                t.map(|t| format!("witness |T| = {}", l.order(t))),
                None,
            )
        }
        CNormal => {
            let t = cl.c_normal_supplement(h, top);
            (
                t.is_some(),
                t.map(|t| format!("witness |T| = {}", l.order(t))),
                None,
            )
        }
        HypercyclicallyEmbedded => (cl.is_hypercyclically_embedded(h, top)?, None, None),
    };
    let label = name
        .to_possible_value()
        .expect("named")
        .get_name()
        .to_string();
    let text = match cli.format {
        Format::Json => pretty(&json!({
            "predicate": label,
            "sigma": ctx.sigma().to_string(),
            "subgroup_order": l.order(h),
            "value": value,
            "detail": detail,
            "witness": witness,
        })),
        Format::Text => match detail {
            Some(d) => format!("{value}, {d}\n"),
            None => format!("{value}\n"),
        },
    };
    emit(cli, text)?;
    // a certificate that fails its own check is an engine defect
    Ok(if witness.is_some_and(|w| w.verified == Some(false)) {
        EXIT_FAIL
    } else {
        0
    })
}

fn example12(cli: &Cli) -> Result<u8, Usage> {
    let report = example_1_2_report()?;
    let text = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => {
            let mut t = String::new();
            for o in &report.outcomes {
                t += &format!(
                    "{} {}: {} ({})\n",
                    if o.consistent { "PASS" } else { "FAIL" },
                    o.theorem_id,
                    o.subject.as_deref().unwrap_or(""),
                    o.reason.as_deref().unwrap_or("")
                );
            }
            t + &format!(
                "result: {}\n",
                if report.passed() { "PASS" } else { "FAIL" }
            )
        }
    };
    emit(cli, text)?;
    Ok(if report.passed() && report.outcomes.len() == 7 {
        0
    } else {
        EXIT_FAIL
    })
}

fn policy(text: &str) -> PartitionPolicy {
    match text {
        "all" => PartitionPolicy::All,
        "singletons" => PartitionPolicy::Singletons,
        "whole" => PartitionPolicy::Whole,
        other => PartitionPolicy::Listed(other.to_string()),
    }
}

#[allow(clippy::too_many_arguments)]
fn campaign(
    cli: &Cli,
    max_order: u64,
    pol: &str,
    seed: u64,
    samples: usize,
    budget: u64,
    no_verify: bool,
) -> Result<u8, Usage> {
    if max_order > cli.cutoff {
        return Err(Usage(format!(
            "--max-order {max_order} exceeds the cutoff {}",
            cli.cutoff
        )));
    }
    let pol = policy(pol);
    if let PartitionPolicy::Listed(text) = &pol {
        // reject malformed partitions before any work
        SigmaPartition::parse(text, 1)?;
    }
    let corpus = catalog::corpus(max_order)?;
    let config = CampaignConfig {
        max_order,
        seed,
        samples_per_suite: samples,
        budget: (budget > 0).then(|| Duration::from_secs(budget)),
        verify_witnesses: !no_verify,
        jobs: cli.jobs,
        cutoff: cli.cutoff,
        ..Default::default()
    };
    let report = run_campaign(&corpus, &pol, &config);
    let text = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    emit(cli, text)?;
    if report.counterexample.is_some() {
        eprintln!("counterexample found; the report carries a reproduction bundle");
    }
    Ok(if report.passed() { 0 } else { EXIT_FAIL })
}

fn list_catalog(cli: &Cli, max_order: u64) -> Result<u8, Usage> {
    let manifest = Manifest::builtin();
    let named = manifest.evaluate()?;
    let corpus = catalog::corpus(max_order)?;
    let text = match cli.format {
        Format::Json => pretty(&json!({
            "named": manifest.entries.iter().map(|(n, e)| json!({
                "name": n,
                "expression": e.to_string(),
                "order": named[n].order(),
            })).collect::<Vec<_>>(),
            "corpus": corpus.iter().map(|e| json!({
                "name": e.name,
                "order": e.expected_order,
                "tags": e.tags,
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut t = String::from("# named\n");
            for (n, e) in &manifest.entries {
                t += &format!("{n:<8} {:>6}  {e}\n", named[n].order());
            }
            t += &format!("# corpus({max_order}): {} groups\n", corpus.len());
            for e in &corpus {
                let tags: BTreeSet<&str> = e.tags.iter().map(String::as_str).collect();
                t += &format!(
                    "{:>6}  {}  {}\n",
                    e.expected_order,
                    e.name,
                    tags.into_iter().collect::<Vec<_>>().join(",")
                );
            }
            t
        }
    };
    emit(cli, text)?;
    Ok(0)
}

fn dispatch(cli: &Cli) -> Result<u8, Usage> {
    match &cli.command {
        Command::Analyze { group, sigma } => analyze(cli, group, sigma),
        Command::Predicate {
            name,
            group,
            sub,
            sigma,
        } => predicate(cli, *name, group, sub, sigma),
        Command::Example12 => example12(cli),
        Command::Campaign {
            max_order,
            policy,
            seed,
            samples,
            budget,
            no_verify,
        } => campaign(
            cli, *max_order, policy, *seed, *samples, *budget, *no_verify,
        ),
        Command::ListCatalog { max_order } => list_catalog(cli, *max_order),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
