use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use flag_pieces::analysis::{
    cost_estimate, data_checks, derived_primes, variants_of, xi_from_samples, Counter, Report, SampleMode, Verifier,
    VerifyConfig, RANK_THREE_Q_CAP,
};
use flag_pieces::coxeter::{build_weyl, CoxeterGroup, TypeLabel};
use flag_pieces::error::{Error, Result};
use flag_pieces::flags::CountCache;
use flag_pieces::groups::{find_class, unipotent_partitions, UnipotentClass, Variant};
use flag_pieces::hecke_chars::solve_unipotent_traces;
use flag_pieces::tables::tabulated_types;

/// Overrides the default cache directory.
const CACHE_ENV: &str = "FLAG_PIECES_CACHE_DIR";
const DEFAULT_CACHE: &str = ".flag-pieces-cache";

#[derive(Parser)]
#[command(name = "flag-pieces", version, about = "Bruhat-position counts on flag varieties over F_q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Md,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    /// Every check against the embedded tables.
    #[value(alias = "paper")]
    Tables,
}

#[derive(Args)]
struct Common {
    /// Worker threads for the flag enumeration.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Count-vector cache (default: $FLAG_PIECES_CACHE_DIR or ./.flag-pieces-cache).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "md")]
    format: Format,
    /// Accept rank-three primes above 7.
    #[arg(long)]
    allow_large_q: bool,
}

impl Common {
    fn cache(&self) -> CountCache {
        let dir = self
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE));
        CountCache::new(dir)
    }

    fn counter(&self) -> Counter {
        Counter::new(self.jobs).with_cache(self.cache())
    }
}

#[derive(Args)]
struct Selection {
    #[arg(long = "type")]
    label: TypeLabel,
    /// Unipotent class as a partition, e.g. 4,1,1 (default: all).
    #[arg(long = "class")]
    classes: Vec<String>,
    /// std or tw (default: every form the class has).
    #[arg(long)]
    variant: Option<Variant>,
}

impl Selection {
    fn wanted(&self) -> Result<Vec<(UnipotentClass, Variant)>> {
        let classes = if self.classes.is_empty() {
            unipotent_partitions(self.label)?
        } else {
            self.classes.iter().map(|c| find_class(self.label, c)).collect::<Result<_>>()?
        };
        Ok(classes
            .into_iter()
            .flat_map(|c| {
                let vs: Vec<Variant> = match self.variant {
                    Some(v) => vec![v],
                    None => variants_of(&c).to_vec(),
                };
                vs.into_iter().map(move |v| (c.clone(), v))
            })
            .collect())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count flags by relative position for unipotent representatives and cache the vectors.
    Count {
        #[command(flatten)]
        sel: Selection,
        #[arg(long = "q", alias = "qs", value_delimiter = ',', required = true)]
        qs: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Interpolate Xi polynomials from counts at several primes.
    Interpolate {
        #[command(flatten)]
        sel: Selection,
        /// Defaults to enough primes for the degree bound.
        #[arg(long = "qs", alias = "q", value_delimiter = ',')]
        qs: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the verification suite and emit a report.
    Verify {
        #[arg(long, value_enum, default_value = "tables")]
        suite: Suite,
        /// Types to check (default: A1,A2,B2,G2,B3,C3 with interpolation on).
        #[arg(long = "types", alias = "type", value_delimiter = ',')]
        types: Vec<TypeLabel>,
        /// Primes for the rank-three types.
        #[arg(long = "qs", alias = "q", value_delimiter = ',')]
        qs: Vec<u64>,
        /// Interpolate the rank <= 2 types (implied when --types is absent).
        #[arg(long)]
        derive: bool,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Solve for the unipotent traces on the Hecke characters.
    SolveTraces {
        #[command(flatten)]
        sel: Selection,
        #[arg(long = "q", alias = "qs", value_delimiter = ',', required = true)]
        qs: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Render a saved JSON report.
    Report {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Consistency checks on the embedded tables.
    DataCheck {
        #[arg(long = "types", alias = "type", value_delimiter = ',')]
        types: Vec<TypeLabel>,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
}

fn guard(t: TypeLabel, q: u64, allow_large_q: bool) -> Result<()> {
    if t.rank >= 3 && q > RANK_THREE_Q_CAP && !allow_large_q {
        let (flags, vectors) = cost_estimate(t, q)?;
        return Err(Error::CostTooHigh(format!(
            "{t} at q = {q}: {flags:.2e} flags per pass, {vectors} count vectors; pass --allow-large-q to run anyway"
        )));
    }
    Ok(())
}

fn counts_for(
    counter: &mut Counter,
    group: &CoxeterGroup,
    q: u64,
    wanted: &[(UnipotentClass, Variant)],
) -> Result<Vec<flag_pieces::flags::CountVector>> {
    let refs: Vec<(&UnipotentClass, Variant)> = wanted.iter().map(|(c, v)| (c, *v)).collect();
    counter.unipotent(group, q, &refs)
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn write_out(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(format: Format, md: String, json: serde_json::Value) -> Result<()> {
    match format {
        Format::Md => write_out(&md),
        Format::Json => write_out(&format!("{}\n", serde_json::to_string_pretty(&json)?)),
    }
}

fn count(sel: &Selection, qs: &[u64], common: &Common) -> Result<bool> {
    let group = build_weyl(sel.label)?;
    let wanted = sel.wanted()?;
    let cache = common.cache();
    let mut counter = common.counter();
    let mut md = String::new();
    let mut json = Vec::new();
    for &q in qs {
        guard(sel.label, q, common.allow_large_q)?;
        for cv in counts_for(&mut counter, &group, q, &wanted)? {
            let path = cache.path(cv.label, q, &cv.class, cv.variant);
            let words: BTreeMap<String, u64> = group.elements().map(|w| (group.serialize_word(w), cv.get(w))).collect();
            md.push_str(&format!("{} q={} class {} {}: {}\n", cv.label, q, cv.class, cv.variant.as_str(), path.display()));
            for w in group.elements() {
                md.push_str(&format!("  {:<12} {}\n", group.word_label(w), cv.get(w)));
            }
            json.push(serde_json::json!({
                "type": cv.label.to_string(), "q": q, "class": cv.class, "variant": cv.variant.as_str(),
                "path": path, "counts": words,
            }));
        }
    }
    emit(common.format, md, json.into())?;
    Ok(true)
}

fn interpolate(sel: &Selection, qs: &[u64], common: &Common) -> Result<bool> {
    let group = build_weyl(sel.label)?;
    let qs = if qs.is_empty() { derived_primes(sel.label) } else { qs.to_vec() };
    for &q in &qs {
        guard(sel.label, q, common.allow_large_q)?;
    }
    let wanted = sel.wanted()?;
    let mut counter = common.counter();
    let per_q = qs.iter().map(|&q| counts_for(&mut counter, &group, q, &wanted)).collect::<Result<Vec<_>>>()?;
    let mut md = String::new();
    let mut json = Vec::new();
    for (i, (c, v)) in wanted.iter().enumerate() {
        let samples: Vec<_> = per_q.iter().map(|vs| vs[i].clone()).collect();
        let entry = xi_from_samples(&group, &c.name(), &samples, SampleMode::Full)?;
        md.push_str(&format!("{} {} ({}) {}\n", sel.label, c.name(), c.partition, v.as_str()));
        let mut polys = BTreeMap::new();
        for class in group.classes() {
            let p = &entry.per_class[class.id];
            md.push_str(&format!("  {:<16} {p}\n", group.class_label(class.id)));
            polys.insert(group.class_label(class.id), p.to_string());
        }
        json.push(serde_json::json!({
            "type": sel.label.to_string(), "unipotent": c.name(), "class": c.partition.to_string(),
            "variant": v.as_str(), "primes": qs, "xi": polys,
        }));
    }
    emit(common.format, md, json.into())?;
    Ok(true)
}

fn solve_traces(sel: &Selection, qs: &[u64], common: &Common) -> Result<bool> {
    let group = build_weyl(sel.label)?;
    let wanted = sel.wanted()?;
    let mut counter = common.counter();
    let mut traces: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    for &q in qs {
        guard(sel.label, q, common.allow_large_q)?;
        for cv in counts_for(&mut counter, &group, q, &wanted)? {
            let counts: Vec<BigInt> = cv.counts.iter().map(|&n| BigInt::from(n)).collect();
            let x = solve_unipotent_traces(&group, &counts, q)?;
            traces.insert(
                format!("{}/q{}/{}/{}", cv.label, q, cv.class, cv.variant.as_str()),
                x.into_iter().map(|(l, v)| (l.to_string(), v.to_string())).collect(),
            );
        }
    }
    let md: String = traces
        .iter()
        .map(|(k, xs)| {
            let vals: Vec<String> = xs.iter().map(|(l, v)| format!("{l}={v}")).collect();
            format!("{k}: {}\n", vals.join(", "))
        })
        .collect();
    emit(common.format, md, serde_json::json!({ "green_traces": traces }))?;
    Ok(true)
}

fn show(report: &Report, format: Format) -> Result<bool> {
    match format {
        Format::Md => write_out(&report.to_markdown())?,
        Format::Json => write_out(&format!("{}\n", report.to_json()?))?,
    }
    Ok(report.passed())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Count { sel, qs, common } => count(&sel, &qs, &common),
        Command::Interpolate { sel, qs, common } => interpolate(&sel, &qs, &common),
        Command::SolveTraces { sel, qs, common } => solve_traces(&sel, &qs, &common),
        Command::Verify { suite: Suite::Tables, types, qs, derive, out, common } => {
            let defaults = VerifyConfig::default();
            let config = VerifyConfig {
                derive: derive || types.is_empty(),
                types: if types.is_empty() { defaults.types } else { types },
                sampled_primes: if qs.is_empty() { defaults.sampled_primes } else { qs },
                jobs: common.jobs,
                cache_dir: Some(common.cache().dir().to_path_buf()),
                allow_large_q: common.allow_large_q,
            };
            let report = Verifier::new(config)?.run_all(&flag_pieces::analysis::Criterion::ALL)?;
            if let Some(path) = out {
                std::fs::write(path, report.to_json()?)?;
            }
            show(&report, common.format)
        }
        Command::Report { input, format } => show(&Report::from_json(&std::fs::read_to_string(input)?)?, format),
        Command::DataCheck { types, format } => {
            let types = if types.is_empty() { tabulated_types() } else { types };
            let mut report = Report::default();
            for t in types {
                report.checks.extend(data_checks(t, "data-check")?);
            }
            show(&report, format)
        }
    }
}

/// Errors caused by the request rather than by the computation.
fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::UnsupportedType(_)
            | Error::NotPrime(_)
            | Error::BadCharacteristic { .. }
            | Error::InvalidPartition { .. }
            | Error::CostTooHigh(_)
            | Error::Parse(_)
            | Error::NotTabulated(_)
            | Error::InsufficientSamples { .. }
            | Error::DuplicateAbscissa(_)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if is_usage(&e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
