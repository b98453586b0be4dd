use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use subnorm::chartab::{character_table_of, verify_table, CharacterTable};
use subnorm::conjecture::{
    check_in_context, claim_ids, reproduce_claim, ClaimResult, ClaimStatus, Level, TableContext, SCHEMA_VERSION,
};
use subnorm::perm::{conjugacy_classes, ClassTable};
use subnorm::sylow::{
    picky_classes, subnormaliser, subnormaliser_bruteforce, subnormaliser_fusion, sylows_containing,
    SubnormaliserResult,
};
use subnorm::zoo::{construct, BuiltGroup};
use subnorm::{Error, Group, RunConfig};

/// Exact Sylow, subnormaliser, character-table and tag-comparison computations on permutation groups.
#[derive(Parser)]
#[command(name = "subnorm", version)]
struct Cli {
    #[command(flatten)]
    bounds: Bounds,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Bounds {
    /// Seed for every randomised step.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest group whose elements or classes may be enumerated.
    #[arg(long, global = true)]
    enumeration_bound: Option<u128>,
    /// Largest group for the brute-force subnormaliser.
    #[arg(long, global = true)]
    brute_force_bound: Option<u128>,
    /// Largest group for the element-level fusion scan.
    #[arg(long, global = true)]
    fusion_scan_bound: Option<u128>,
    /// Largest number of Sylow conjugates scanned.
    #[arg(long, global = true)]
    conjugate_scan_bound: Option<u128>,
    /// Largest class count for character tables.
    #[arg(long, global = true)]
    class_count_bound: Option<usize>,
    /// Candidates tried when searching the Dixon prime.
    #[arg(long, global = true)]
    dixon_prime_search: Option<u64>,
    /// Lift every order bound.
    #[arg(long, global = true)]
    allow_large: bool,
}

impl Bounds {
    fn config(&self) -> anyhow::Result<RunConfig> {
        let mut c = RunConfig::default();
        if let Some(v) = self.seed {
            c.seed = v;
        }
        if let Some(v) = self.enumeration_bound {
            c.enumeration_bound = v;
        }
        if let Some(v) = self.brute_force_bound {
            c.brute_force_bound = v;
        }
        if let Some(v) = self.fusion_scan_bound {
            c.fusion_scan_bound = v;
        }
        if let Some(v) = self.conjugate_scan_bound {
            c.conjugate_scan_bound = v;
        }
        if let Some(v) = self.class_count_bound {
            c.class_count_bound = v;
        }
        if let Some(v) = self.dixon_prime_search {
            c.dixon_prime_search = v;
        }
        c.allow_large = self.allow_large;
        c.validate()?;
        Ok(c)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Gen,
    Fusion,
    Brute,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Basic,
    Plus,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a group and summarise it.
    Group {
        /// Recipe such as `PSL(3,3)`, `S4 x C2`, a registry name or a generator file.
        group: String,
        /// Also enumerate conjugacy classes.
        #[arg(long)]
        classes: bool,
    },
    /// Sylow subgroup order, count and normalizer order.
    Sylow {
        group: String,
        #[arg(short)]
        p: u64,
    },
    /// Picky flags for every class of nontrivial p-elements.
    Picky {
        group: String,
        #[arg(short)]
        p: u64,
    },
    /// The subnormaliser of a class representative.
    Subnorm {
        group: String,
        #[arg(short)]
        p: u64,
        #[arg(long)]
        class: usize,
        #[arg(long, value_enum, default_value = "gen")]
        method: MethodArg,
    },
    /// Character table, optionally exported or checked against a file.
    Chartab {
        group: String,
        #[arg(long)]
        export: Option<PathBuf>,
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Compare tag multisets of Irr^x(G) and Irr^x(Sub_G(x)).
    Conjecture {
        group: String,
        #[arg(short)]
        p: u64,
        #[arg(long)]
        class: usize,
        #[arg(long, value_enum, default_value = "plus")]
        level: LevelArg,
    },
    /// Run shipped claims and write one result document per claim.
    Reproduce {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        claim: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = "results")]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

fn build(spec: &str, config: &RunConfig) -> anyhow::Result<BuiltGroup> {
    construct(spec, config).with_context(|| format!("constructing {spec}"))
}

fn class_rep(classes: &ClassTable, k: usize) -> anyhow::Result<subnorm::Permutation> {
    if k >= classes.len() {
        return Err(Error::InvalidInput(format!("class {k} out of range (the group has {} classes)", classes.len())).into());
    }
    Ok(classes.class(k).representative.clone())
}

fn class_rows(classes: &ClassTable) -> Value {
    classes
        .classes()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            json!({
                "class": k,
                "element_order": c.element_order,
                "size": c.size,
                "centralizer_order": c.centralizer_order,
                "representative": c.representative.images(),
            })
        })
        .collect()
}

fn subnorm_doc(r: &SubnormaliserResult) -> Value {
    json!({
        "method": r.method.name(),
        "order": r.subgroup.order(),
        "is_picky": r.is_picky,
        "generators": r.subgroup.small_generating_set().iter().map(|g| g.images().to_vec()).collect::<Vec<_>>(),
    })
}

fn group_doc(spec: &str, g: &Group) -> Value {
    json!({ "group": spec, "order": g.order(), "degree": g.degree() })
}

fn print(doc: Value) {
    let text = serde_json::to_string_pretty(&doc).expect("document serialises");
    if let Err(e) = writeln!(std::io::stdout().lock(), "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(3);
    }
}

fn reproduce(ids: Vec<String>, out: &Path, workers: usize, config: &RunConfig) -> anyhow::Result<u8> {
    let slots: Vec<Mutex<Option<subnorm::Result<ClaimResult>>>> = ids.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..workers.max(1).min(ids.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= ids.len() {
                    break;
                }
                let r = reproduce_claim(&ids[i], config);
                *slots[i].lock().expect("slot lock") = Some(r);
            });
        }
    });
    let mut summary = Vec::new();
    let (mut failed, mut skipped) = (false, false);
    for (id, slot) in ids.iter().zip(slots) {
        let r = slot.into_inner().expect("slot lock").expect("every claim ran").with_context(|| format!("claim {id}"))?;
        r.save(out)?;
        failed |= r.status == ClaimStatus::Fail;
        skipped |= r.status == ClaimStatus::SkippedBound;
        summary.push(json!({ "id": r.id, "status": r.status, "stretch": r.stretch }));
    }
    print(json!({ "schema_version": SCHEMA_VERSION, "results": summary }));
    Ok(if failed {
        1
    } else if skipped {
        2
    } else {
        0
    })
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let config = cli.bounds.config()?;
    match cli.command {
        Command::Group { group, classes } => {
            let g = build(&group, &config)?.group;
            let mut doc = group_doc(&group, &g);
            doc["schema_version"] = json!(SCHEMA_VERSION);
            doc["order_primes"] = json!(g.order_primes());
            doc["orbits"] = json!(g.orbits().len());
            doc["generators"] = json!(g.generators().iter().map(|x| x.images().to_vec()).collect::<Vec<_>>());
            if classes {
                doc["classes"] = class_rows(&conjugacy_classes(&g, &config)?);
            }
            print(doc);
        }
        Command::Sylow { group, p } => {
            let g = build(&group, &config)?.group;
            let w = sylows_containing(&g, p, &g.identity(), &config)?;
            print(json!({
                "schema_version": SCHEMA_VERSION,
                "group": group,
                "p": p,
                "sylow_order": w.sylow.order(),
                "sylow_count": w.sylow_count,
                "normalizer_order": w.normalizer.order(),
                "normal": w.sylow_count == 1,
            }));
        }
        Command::Picky { group, p } => {
            let g = build(&group, &config)?.group;
            let rows = picky_classes(&g, p, &config)?;
            let agree = rows.iter().all(|r| r.methods_agree);
            print(json!({ "schema_version": SCHEMA_VERSION, "group": group, "p": p, "classes": rows }));
            if !agree {
                return Ok(1);
            }
        }
        Command::Subnorm { group, p, class, method } => {
            let g = build(&group, &config)?.group;
            let x = class_rep(&conjugacy_classes(&g, &config)?, class)?;
            let mut results = Vec::new();
            if matches!(method, MethodArg::Gen | MethodArg::All) {
                results.push(subnormaliser(&g, p, &x, &config)?);
            }
            if matches!(method, MethodArg::Fusion | MethodArg::All) {
                results.push(subnormaliser_fusion(&g, p, &x, &config)?);
            }
            if matches!(method, MethodArg::Brute | MethodArg::All) {
                results.push(subnormaliser_bruteforce(&g, p, &x, &config)?);
            }
            let agree = results.iter().all(|r| r.subgroup.same_subgroup(&results[0].subgroup));
            print(json!({
                "schema_version": SCHEMA_VERSION,
                "group": group,
                "p": p,
                "class": class,
                "representative": x.images(),
                "results": results.iter().map(subnorm_doc).collect::<Vec<_>>(),
                "agree": agree,
            }));
            if !agree {
                return Ok(1);
            }
        }
        Command::Chartab { group, export, verify } => {
            let g = build(&group, &config)?.group;
            let table = character_table_of(&conjugacy_classes(&g, &config)?, &config)?;
            let report = verify_table(&table);
            let mut doc = json!({
                "schema_version": SCHEMA_VERSION,
                "group": group,
                "order": g.order(),
                "classes": table.num_classes(),
                "degrees": table.degrees(),
                "verification": report,
            });
            let mut ok = report.passed();
            if let Some(path) = export {
                table.save(&path)?;
                doc["exported"] = json!(path);
            }
            if let Some(path) = verify {
                let other = CharacterTable::load(&path)?;
                let file_report = verify_table(&other);
                let same = other.values == table.values && other.classes == table.classes;
                ok &= file_report.passed() && same;
                doc["file_verification"] = json!(file_report);
                doc["file_matches_computed"] = json!(same);
            }
            print(doc);
            if !ok {
                return Ok(1);
            }
        }
        Command::Conjecture { group, p, class, level } => {
            let g = build(&group, &config)?.group;
            let ctx = TableContext::new(&g, &config)?;
            let x = class_rep(ctx.classes(), class)?;
            let level = match level {
                LevelArg::Basic => Level::Basic,
                LevelArg::Plus => Level::Plus,
            };
            let report = check_in_context(&ctx, &group, p, &x, level, &config)?;
            print(serde_json::to_value(&report)?);
        }
        Command::Reproduce { claim, all, out, workers } => {
            let ids = match (claim, all) {
                (Some(id), _) => vec![id],
                (None, true) => claim_ids()?,
                (None, false) => bail!("pass --claim <id> or --all"),
            };
            return reproduce(ids, &out, workers, &config);
        }
    }
    Ok(0)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::BoundExceeded { .. }) => 2,
        Some(Error::Verification(_) | Error::InternalInconsistency(_)) => 1,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
