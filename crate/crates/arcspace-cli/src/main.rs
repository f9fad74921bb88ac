//! Command-line surface for the arc-space toolkit: Hilbert series and
//! Gröbner verification of differential ideals, q-series characters,
//! Koszul homology, elliptic identity checks, and configuration-space
//! Betti numbers.
//!
//! Exit codes: 0 success / verification passed; 1 a verification failed
//! (an S-pair with nonzero remainder, a series mismatch, nonvanishing
//! homology, a failed identity); 2 usage or input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use arcspace::confspace;
use arcspace::ellseries;
use arcspace::groebner::{self, GbDocument, GroebnerBasis};
use arcspace::hilbert;
use arcspace::koszul;
use arcspace::qseries;
use arcspace::ring::{jet_xpower_gens, sl2_level_gens, DiffPoly, RingConfig};
use arcspace::series::{compare_series, QSeriesInt, SeriesComparison};

const SCHEMA_VERSION: u32 = 1;
const CACHE_ENV: &str = "ARCSPACE_CACHE_DIR";

#[derive(Parser)]
#[command(name = "arcspace", version, about = "arc-space condition toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Gröbner cache directory (default: $ARCSPACE_CACHE_DIR if set).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker parallelism cap (accepted for forward compatibility; the
    /// current implementation is sequential and fully deterministic).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Weight-graded Hilbert series of an arc-ideal quotient.
    Hilbert {
        /// Ring family: "virasoro" (with --power) or "sl2" (with --level).
        #[arg(long, default_value = "virasoro")]
        family: String,
        /// Power s for the virasoro jet ideal J(x^s).
        #[arg(long, default_value_t = 2)]
        power: u32,
        /// Level k for the sl2 quotient.
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long, default_value_t = 20)]
        max_n: usize,
    },
    /// Compute (and cache) a truncated Gröbner basis for a preset ideal.
    Groebner {
        /// Preset: "virasoro:x^S" or "sl2-kK".
        #[arg(long)]
        preset: String,
        #[arg(long, default_value_t = 12)]
        max_weight: u64,
    },
    /// Verify that a preset generating set is already a Gröbner basis.
    VerifyGb {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value_t = 10)]
        max_weight: u64,
    },
    /// Compare two q-series sources coefficientwise.
    Compare {
        /// Series source, e.g. "minimal-model:3,4", "jet-hilbert:x^3",
        /// "gordon:2", "gordon-count:2", "mp-sl2:1", "sl2-hilbert:1".
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 20)]
        max_n: usize,
    },
    /// Normalized character of a named vertex-algebra preset.
    Character {
        /// "minimal-model:p,p'" or "mp-sl2:k".
        #[arg(long)]
        preset: String,
        #[arg(long, default_value_t = 20)]
        max_n: usize,
    },
    /// Gordon product series and the matching direct partition counts.
    Gordon {
        #[arg(long, default_value_t = 2)]
        s: u32,
        #[arg(long, default_value_t = 25)]
        max_n: usize,
    },
    /// Meurman–Primc admissible-monomial counts for the level-k sl2 quotient.
    MpCount {
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Koszul H_{-1} dimensions per jet weight for a preset algebra.
    KoszulH1 {
        /// "jet-koszul:x^S" or "fat-point:S".
        #[arg(long)]
        preset: String,
        #[arg(long, default_value_t = 8)]
        max_weight: u64,
    },
    /// Verify elliptic-function identities.
    EllVerify {
        /// Identity name; repeatable. Default: all of heat, heat_p,
        /// addition, zfrak_cyclic, q0_zeta, q0_p.
        #[arg(long)]
        identity: Vec<String>,
        #[arg(long, default_value_t = 8)]
        z_order: i64,
        #[arg(long, default_value_t = 8)]
        q_order: usize,
    },
    /// Betti numbers of the configuration-space model of an elliptic curve.
    ConfspaceBetti {
        #[arg(long)]
        n: usize,
        /// Report the punctured space Ů^(n) (via exact division of the
        /// Poincaré polynomial of U^(n+1) by (1+t)²).
        #[arg(long)]
        punctured: bool,
        /// Hard size limit on the configuration count actually computed.
        #[arg(long, default_value_t = 5)]
        limit: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    let cache_dir = cli
        .common
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    let out = cli.common.output;
    match cli.command {
        Command::Hilbert { family, power, level, max_n } => {
            let (config, gens) = match family.as_str() {
                "virasoro" => jet_xpower_gens(power, max_n as u64),
                "sl2" => sl2_level_gens(level, max_n as u64),
                other => return Err(format!("unknown family '{other}'")),
            };
            let basis = cached_basis(&config, &gens, max_n as u64, cache_dir.as_deref())?;
            let series = hilbert::hilbert_from_lt(&basis.lt_gens, &config, max_n).m()?;
            emit(out, &SeriesOut::new("hilbert", &series), |o| {
                println!("hilbert series through q^{max_n}:");
                println!("{:?}", o.coeffs);
            });
            Ok(true)
        }
        Command::Groebner { preset, max_weight } => {
            let (config, gens) = preset_gens(&preset, max_weight)?;
            let basis = cached_basis(&config, &gens, max_weight, cache_dir.as_deref())?;
            let doc = basis.to_document(&config);
            emit(out, &doc, |d| {
                println!(
                    "basis with {} elements, valid through weight {}",
                    d.elements.len(),
                    d.max_weight
                );
                for e in &d.elements {
                    println!("  {e}");
                }
            });
            Ok(true)
        }
        Command::VerifyGb { preset, max_weight } => {
            let (config, gens) = preset_gens(&preset, max_weight)?;
            let report = groebner::verify_groebner(&gens, max_weight, &config).m()?;
            let pass = report.pass;
            emit(out, &report, |r| {
                println!(
                    "verify: {} ({} pairs reduced, {} coprime skipped, {} beyond bound)",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.checked,
                    r.coprime_skipped,
                    r.beyond_bound
                );
                for p in &r.pairs {
                    if let groebner::PairStatus::Failed { remainder } = &p.status {
                        println!("  pair ({}, {}): remainder {}", p.i, p.j, remainder);
                    }
                }
            });
            Ok(pass)
        }
        Command::Compare { left, right, max_n } => {
            let l = series_source(&left, max_n, cache_dir.as_deref())?;
            let r = series_source(&right, max_n, cache_dir.as_deref())?;
            let cmp = compare_series(&l, &r);
            let report = CompareOut {
                schema_version: SCHEMA_VERSION,
                left: left.clone(),
                right: right.clone(),
                max_n,
                left_coeffs: l.coeffs.clone(),
                right_coeffs: r.coeffs.clone(),
                result: cmp.clone(),
            };
            let pass = matches!(cmp, SeriesComparison::Equal { .. });
            emit(out, &report, |rep| match &rep.result {
                SeriesComparison::Equal { through } => {
                    println!("equal through q^{through}");
                }
                SeriesComparison::FirstDiff { n, left, right } => {
                    println!("first difference at q^{n}: {left} vs {right}");
                }
            });
            Ok(pass)
        }
        Command::Character { preset, max_n } => {
            let series = series_source(&preset, max_n, cache_dir.as_deref())?;
            emit(out, &SeriesOut::new(&preset, &series), |o| {
                println!("character of {preset} through q^{max_n}:");
                println!("{:?}", o.coeffs);
            });
            Ok(true)
        }
        Command::Gordon { s, max_n } => {
            let product = qseries::gordon_product(s, max_n);
            let counts: Vec<i64> = (0..=max_n)
                .map(|n| qseries::gordon_partition_count(s, n) as i64)
                .collect();
            let agree = product.coeffs == counts;
            let report = GordonOut {
                schema_version: SCHEMA_VERSION,
                s,
                max_n,
                product: product.coeffs.clone(),
                partition_counts: counts,
                agree,
            };
            emit(out, &report, |r| {
                println!("product form:     {:?}", r.product);
                println!("partition counts: {:?}", r.partition_counts);
                println!("{}", if r.agree { "AGREE" } else { "DISAGREE" });
            });
            Ok(agree)
        }
        Command::MpCount { k, max_n } => {
            let series = qseries::mp_character_sl2(k, max_n);
            emit(out, &SeriesOut::new("mp-count", &series), |o| {
                println!("admissible-monomial counts through q^{max_n}:");
                println!("{:?}", o.coeffs);
            });
            Ok(true)
        }
        Command::KoszulH1 { preset, max_weight } => {
            let presentation = koszul_preset(&preset, max_weight)?;
            let report = presentation.h1_report(max_weight).m()?;
            let pass = report.arc_like_through.is_some();
            emit(out, &report, |r| {
                for e in &r.entries {
                    println!(
                        "weight {}: dim ker = {}, rank image = {}, h1 = {}",
                        e.weight, e.dim_ker, e.rank_image, e.h1
                    );
                }
                match r.first_failing_weight {
                    None => println!("H_(-1) vanishes through weight {max_weight}"),
                    Some(w) => println!("H_(-1) nonzero first at weight {w}"),
                }
            });
            Ok(pass)
        }
        Command::EllVerify { identity, z_order, q_order } => {
            let names: Vec<String> = if identity.is_empty() {
                ellseries::IDENTITY_NAMES.iter().map(|s| s.to_string()).collect()
            } else {
                identity
            };
            let mut reports = Vec::new();
            let mut pass = true;
            for name in &names {
                let r = ellseries::verify_identity(name, z_order, q_order).m()?;
                pass &= r.pass;
                reports.push(r);
            }
            let outp = EllOut { schema_version: SCHEMA_VERSION, reports };
            emit(out, &outp, |o| {
                for r in &o.reports {
                    print!(
                        "{}: {} (z-order {}, q-order {})",
                        r.name,
                        if r.pass { "PASS" } else { "FAIL" },
                        r.z_order,
                        r.q_order
                    );
                    match &r.first_residual {
                        None => println!(),
                        Some(res) => println!(
                            " first residual at z{:?} q^{} P^{}: {}",
                            res.z_exponents, res.q_exponent, res.pi_exponent, res.value
                        ),
                    }
                }
            });
            Ok(pass)
        }
        Command::ConfspaceBetti { n, punctured, limit } => {
            if punctured {
                let betti = confspace::punctured_betti(n, limit).m()?;
                let report = BettiOut {
                    schema_version: SCHEMA_VERSION,
                    n,
                    punctured: true,
                    betti: betti.clone(),
                };
                emit(out, &report, |r| {
                    println!("punctured configuration space, n = {}: {:?}", r.n, r.betti);
                });
            } else {
                let rep = confspace::cohomology_report(n, limit).m()?;
                let report = BettiOut {
                    schema_version: SCHEMA_VERSION,
                    n,
                    punctured: false,
                    betti: rep.betti.clone(),
                };
                emit(out, &report, |r| {
                    println!("configuration space, n = {}: {:?}", r.n, r.betti);
                });
            }
            Ok(true)
        }
    }
}

trait MapErrString<T> {
    fn m(self) -> Result<T, String>;
}

impl<T> MapErrString<T> for arcspace::Result<T> {
    fn m(self) -> Result<T, String> {
        self.map_err(|e| e.to_string())
    }
}

fn emit<T: Serialize>(out: Output, value: &T, text: impl FnOnce(&T)) {
    match out {
        Output::Json => {
            println!("{}", serde_json::to_string_pretty(value).expect("serializable"))
        }
        Output::Text => text(value),
    }
}

#[derive(Serialize)]
struct SeriesOut {
    schema_version: u32,
    source: String,
    coeffs: Vec<i64>,
}

impl SeriesOut {
    fn new(source: &str, s: &QSeriesInt) -> Self {
        SeriesOut {
            schema_version: SCHEMA_VERSION,
            source: source.to_string(),
            coeffs: s.coeffs.clone(),
        }
    }
}

#[derive(Serialize)]
struct CompareOut {
    schema_version: u32,
    left: String,
    right: String,
    max_n: usize,
    left_coeffs: Vec<i64>,
    right_coeffs: Vec<i64>,
    result: SeriesComparison,
}

#[derive(Serialize)]
struct GordonOut {
    schema_version: u32,
    s: u32,
    max_n: usize,
    product: Vec<i64>,
    partition_counts: Vec<i64>,
    agree: bool,
}

#[derive(Serialize)]
struct EllOut {
    schema_version: u32,
    reports: Vec<ellseries::IdentityReport>,
}

#[derive(Serialize)]
struct BettiOut {
    schema_version: u32,
    n: usize,
    punctured: bool,
    betti: Vec<i64>,
}

fn preset_gens(preset: &str, max_weight: u64) -> Result<(RingConfig, Vec<DiffPoly>), String> {
    if let Some(s) = preset.strip_prefix("virasoro:x^") {
        let s: u32 = s.parse().map_err(|_| format!("bad power in preset '{preset}'"))?;
        if s < 2 {
            return Err("power must be >= 2".into());
        }
        return Ok(jet_xpower_gens(s, max_weight));
    }
    if let Some(k) = preset.strip_prefix("sl2-k") {
        let k: u32 = k.parse().map_err(|_| format!("bad level in preset '{preset}'"))?;
        return Ok(sl2_level_gens(k, max_weight));
    }
    Err(format!("unknown preset '{preset}' (expected virasoro:x^S or sl2-kK)"))
}

fn koszul_preset(
    preset: &str,
    max_weight: u64,
) -> Result<koszul::GradedAlgebraPresentation, String> {
    if let Some(s) = preset.strip_prefix("jet-koszul:x^") {
        let s: u32 = s.parse().map_err(|_| format!("bad power in preset '{preset}'"))?;
        return koszul::jet_xpower_presentation(s, max_weight).m();
    }
    if let Some(s) = preset.strip_prefix("fat-point:") {
        let s: u32 = s.parse().map_err(|_| format!("bad power in preset '{preset}'"))?;
        return koszul::fat_point_presentation(s, max_weight).m();
    }
    Err(format!("unknown preset '{preset}' (expected jet-koszul:x^S or fat-point:S)"))
}

fn series_source(
    spec: &str,
    max_n: usize,
    cache_dir: Option<&std::path::Path>,
) -> Result<QSeriesInt, String> {
    if let Some(rest) = spec.strip_prefix("minimal-model:") {
        let (p, pp) = rest
            .split_once(',')
            .ok_or_else(|| format!("expected minimal-model:p,p' in '{spec}'"))?;
        let p: u32 = p.trim().parse().map_err(|_| format!("bad p in '{spec}'"))?;
        let pp: u32 = pp.trim().parse().map_err(|_| format!("bad p' in '{spec}'"))?;
        return qseries::minimal_model_character(p, pp, max_n).m();
    }
    if let Some(s) = spec.strip_prefix("gordon-count:") {
        let s: u32 = s.parse().map_err(|_| format!("bad s in '{spec}'"))?;
        return Ok(QSeriesInt::from_coeffs(
            (0..=max_n).map(|n| qseries::gordon_partition_count(s, n) as i64).collect(),
        ));
    }
    if let Some(s) = spec.strip_prefix("gordon:") {
        let s: u32 = s.parse().map_err(|_| format!("bad s in '{spec}'"))?;
        return Ok(qseries::gordon_product(s, max_n));
    }
    if let Some(k) = spec.strip_prefix("mp-sl2:") {
        let k: u32 = k.parse().map_err(|_| format!("bad k in '{spec}'"))?;
        return Ok(qseries::mp_character_sl2(k, max_n));
    }
    if let Some(s) = spec.strip_prefix("jet-hilbert:x^") {
        let s: u32 = s.parse().map_err(|_| format!("bad power in '{spec}'"))?;
        let (config, gens) = jet_xpower_gens(s, max_n as u64);
        let basis = cached_basis(&config, &gens, max_n as u64, cache_dir)?;
        return hilbert::hilbert_from_lt(&basis.lt_gens, &config, max_n).m();
    }
    if let Some(k) = spec.strip_prefix("sl2-hilbert:") {
        let k: u32 = k.parse().map_err(|_| format!("bad level in '{spec}'"))?;
        let (config, gens) = sl2_level_gens(k, max_n as u64);
        let basis = cached_basis(&config, &gens, max_n as u64, cache_dir)?;
        return hilbert::hilbert_from_lt(&basis.lt_gens, &config, max_n).m();
    }
    Err(format!("unknown series source '{spec}'"))
}

/// Checksummed cache wrapper around a basis document.
#[derive(Serialize, serde::Deserialize)]
struct CacheEntry {
    checksum: String,
    document: GbDocument,
}

fn sha256_hex(data: &str) -> String {
    let mut h = Sha256::new();
    h.update(data.as_bytes());
    format!("{:x}", h.finalize())
}

fn cache_get(dir: &std::path::Path, key: &str) -> Option<(RingConfig, GroebnerBasis)> {
    let path = dir.join(format!("{key}.json"));
    let data = std::fs::read_to_string(path).ok()?;
    let entry: CacheEntry = serde_json::from_str(&data).ok()?;
    let doc_json = serde_json::to_string(&entry.document).ok()?;
    if sha256_hex(&doc_json) != entry.checksum {
        eprintln!("warning: cache entry {key} failed its checksum; recomputing");
        return None;
    }
    GroebnerBasis::from_document(&entry.document).ok()
}

fn cache_put(dir: &std::path::Path, key: &str, config: &RingConfig, basis: &GroebnerBasis) {
    let doc = basis.to_document(config);
    let Ok(doc_json) = serde_json::to_string(&doc) else { return };
    let entry = CacheEntry { checksum: sha256_hex(&doc_json), document: doc };
    if std::fs::create_dir_all(dir).is_err() {
        return;
    }
    let path = dir.join(format!("{key}.json"));
    if let Ok(data) = serde_json::to_string_pretty(&entry) {
        let _ = std::fs::write(path, data);
    }
}

fn cached_basis(
    config: &RingConfig,
    gens: &[DiffPoly],
    max_weight: u64,
    cache_dir: Option<&std::path::Path>,
) -> Result<GroebnerBasis, String> {
    let key = groebner::cache_key(config, gens, max_weight);
    if let Some(dir) = cache_dir {
        if let Some((cached_config, basis)) = cache_get(dir, &key) {
            if cached_config.to_text() == config.to_text() && basis.max_weight == max_weight {
                return Ok(basis);
            }
        }
    }
    let basis = groebner::buchberger_truncated(gens, max_weight).m()?;
    if let Some(dir) = cache_dir {
        cache_put(dir, &key, config, &basis);
    }
    Ok(basis)
}
