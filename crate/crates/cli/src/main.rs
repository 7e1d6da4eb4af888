mod lmfdb;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use twistparity::alc::{alc_report, AlcRecord};
use twistparity::congruence::{check_congruence, CongruenceResult};
use twistparity::curve::{
    local_curve_data, parse_ainvs, tate_local, trace_of_frobenius, CurveRecord, Kodaira, RedClass, Reduction,
    WeierstrassCurve,
};
use twistparity::galoislocal::{FieldSpec, SigmaSpec};
use twistparity::numtheory::primes_up_to;
use twistparity::parity::{global_report, localized_sweep, CurveSummary, ReportOptions, SweepConfig, SweepReport};
use twistparity::reptheory::{cyclic, dihedral};

use lmfdb::Fetcher;

pub const OUTPUT_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "twistparity", version, about = "Twisted parity checks for congruent elliptic curves")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Never touch the network; labels must be bundled or cached.
    #[arg(long, global = true)]
    offline: bool,
    /// LMFDB cache directory (default: $TWISTPARITY_CACHE_DIR, then the user cache dir).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariants, conductor and local reduction data of one curve.
    CurveInfo {
        /// Label, `[a1,a2,a3,a4,a6]`, or a curve-record JSON file.
        curve: String,
        /// List a_l for good l up to this bound.
        #[arg(long, default_value_t = 50)]
        traces: u64,
    },
    /// Compare a_l mod p up to the Sturm bound (or --bound).
    Congruence {
        #[arg(long)]
        e1: String,
        #[arg(long)]
        e2: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Selmer-side parity against the twisted root-number ratio.
    Parity {
        #[arg(long)]
        e1: String,
        #[arg(long)]
        e2: String,
        #[arg(long)]
        p: u64,
        /// `builtin:<name>`, `custom:<file.json>` or `kummer:<m>`.
        #[arg(long)]
        field: String,
        /// Character name; defaults to the field's own choice.
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        bound: Option<u64>,
        /// Skip the a_l congruence check (H2 and H3 are still checked).
        #[arg(long)]
        no_congruence_check: bool,
    },
    /// Arithmetic local constants for trivial sigma at the bad primes.
    Alc {
        #[arg(long)]
        e1: String,
        #[arg(long)]
        e2: String,
        #[arg(long)]
        p: u64,
    },
    /// Exhaustive localized sweep over built-in decomposition data.
    Selftest {
        /// Only S3 and C6 with p in {3, 5}.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    version: u32,
    command: &'a str,
    result: T,
}

#[derive(Serialize)]
pub struct LocalInfo {
    pub ell: u64,
    pub kodaira: Kodaira,
    pub conductor_exponent: u32,
    pub v_disc_min: u32,
    pub reduction: Reduction,
    pub class: Option<RedClass>,
}

#[derive(Serialize)]
pub struct CurveInfo {
    pub curve: CurveSummary,
    pub c4: String,
    pub c6: String,
    pub disc: String,
    pub j: String,
    pub local: Vec<LocalInfo>,
    pub traces: Vec<(u64, i64)>,
}

type Res<T> = Result<T, Box<dyn std::error::Error>>;

struct Ctx {
    fetcher: Fetcher,
}

impl Ctx {
    fn curve(&self, src: &str) -> Res<WeierstrassCurve> {
        let s = src.trim();
        if s.starts_with('[') || s.contains(',') {
            return Ok(parse_ainvs(s)?);
        }
        let path = std::path::Path::new(s);
        if path.is_file() {
            let text = std::fs::read_to_string(path)?;
            return Ok(CurveRecord::from_json(&text)?.to_curve()?);
        }
        self.fetcher.lookup(s)
    }
}

fn curve_info(e: &WeierstrassCurve, traces: u64) -> Res<CurveInfo> {
    let inv = e.invariants();
    let mut local = Vec::new();
    for ell in e.bad_primes() {
        let t = tate_local(e, ell)?;
        // wild potentially good primes may need an override to classify
        let class = local_curve_data(e, ell, 1, None).ok().map(|d| d.class);
        local.push(LocalInfo {
            ell,
            kodaira: t.kodaira,
            conductor_exponent: t.f,
            v_disc_min: t.v_disc_min,
            reduction: t.reduction,
            class,
        });
    }
    let bad = e.bad_primes();
    let traces = primes_up_to(traces)
        .into_iter()
        .filter(|l| !bad.contains(l))
        .map(|l| Ok((l, trace_of_frobenius(e, l)?)))
        .collect::<Res<_>>()?;
    Ok(CurveInfo {
        curve: CurveSummary::of(e),
        c4: inv.c4.to_string(),
        c6: inv.c6.to_string(),
        disc: inv.disc.to_string(),
        j: inv.j.to_string(),
        local,
        traces,
    })
}

fn emit<T: Serialize>(format: Format, command: &str, value: &T, text: impl FnOnce(&T) -> String) {
    match format {
        Format::Json => {
            let env = Envelope { version: OUTPUT_VERSION, command, result: value };
            println!("{}", serde_json::to_string_pretty(&env).expect("serialisable"));
        }
        Format::Text => print!("{}", text(value)),
    }
}

fn run(cli: Cli) -> Res<ExitCode> {
    let cache_dir = cli.cache_dir.clone().unwrap_or_else(lmfdb::default_cache_dir);
    let ctx = Ctx { fetcher: Fetcher { cache_dir, offline: cli.offline } };
    let fmt = cli.format;
    match cli.cmd {
        Cmd::CurveInfo { curve, traces } => {
            let info = curve_info(&ctx.curve(&curve)?, traces)?;
            emit(fmt, "curve-info", &info, render::curve_info);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Congruence { e1, e2, p, bound } => {
            let r: CongruenceResult = check_congruence(&ctx.curve(&e1)?, &ctx.curve(&e2)?, p, bound)?;
            emit(fmt, "congruence", &r, render::congruence);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Parity { e1, e2, p, field, sigma, bound, no_congruence_check } => {
            let f = FieldSpec::load(&field)?;
            let name = sigma
                .or_else(|| f.default_sigma.clone())
                .ok_or("the field names no default sigma; pass --sigma")?;
            let s = SigmaSpec::by_name(f.group(), &name)?;
            let opts = ReportOptions { check_congruence: !no_congruence_check, bound };
            let r = global_report(&ctx.curve(&e1)?, &ctx.curve(&e2)?, p, &f, &s, &opts)?;
            // the report carries its own version field
            match fmt {
                Format::Json => println!("{}", serde_json::to_string_pretty(&r)?),
                Format::Text => print!("{}", render::parity(&r)),
            }
            Ok(status(r.thm4_consistent && r.all_checks_pass()))
        }
        Cmd::Alc { e1, e2, p } => {
            let recs: Vec<AlcRecord> = alc_report(&ctx.curve(&e1)?, &ctx.curve(&e2)?, p)?;
            emit(fmt, "alc", &recs, |r| render::alc(r));
            Ok(status(recs.iter().all(|r| r.consistent && r.engine_agrees)))
        }
        Cmd::Selftest { quick } => {
            let cfg = if quick {
                SweepConfig { groups: vec![dihedral(3), cyclic(6)], primes: vec![3, 5], ..SweepConfig::standard() }
            } else {
                SweepConfig::standard()
            };
            let r: SweepReport = localized_sweep(&cfg);
            emit(fmt, "selftest", &r, render::selftest);
            Ok(status(r.failures.is_empty() && r.cases > 0 && (quick || r.uncovered_rows().is_empty())))
        }
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
