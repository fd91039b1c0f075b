//! Command line front end: classify, diagram, verify.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use jakobsen::classifier::{classify, ClassificationResult, Verdict};
use jakobsen::hwv::verify_catalog;
use jakobsen::jakobsen_diagram::{build_diagram, c_counts, Format};
use jakobsen::rational::{fmt_q, parse_q};
use jakobsen::shapovalov_oracle::{
    concordance, gram_polynomial, positivity_scan, su11_closed_form, SmallAlgebra, SmallFamily,
};
use jakobsen::{Error, Family, Labels, RootSystem, Q};

const SCHEMA_VERSION: u32 = 1;

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "jakobsen", version, about = "Unitarizable highest weight modules of hermitian symmetric pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Last place of unitarity, reduction points and missing weights.
    Classify {
        #[command(flatten)]
        pair: PairArgs,
        /// Labels as `mu5=2,mu8=1`; unspecified labels are 0.
        #[arg(long, default_value = "")]
        labels: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
        /// λ values for the verdict table, e.g. `-6,-13/2,-7.5`.
        #[arg(long, allow_hyphen_values = true)]
        lambdas: Option<String>,
    },
    /// Render the diagram of noncompact positive roots.
    Diagram {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value = "ascii")]
        format: String,
        /// Mark a maximal orthogonal sequence starting at β.
        #[arg(long)]
        split_rank: bool,
    },
    /// Check the expression catalog or run a small-algebra oracle.
    Verify {
        /// Verify every catalog expression against the classifier.
        #[arg(long, conflicts_with = "oracle")]
        catalog: bool,
        /// One of su11, su21, su22, sp2.
        #[arg(long)]
        oracle: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambdas: Option<String>,
        #[arg(long, default_value = "")]
        labels: String,
        /// Degree bound for the oracle.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=6))]
        degree: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    /// su, sp, sostar, soodd, soeven, e6 or e7.
    #[arg(long)]
    family: String,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Json,
    Tsv,
}

/// Error split by exit status.
enum Failure {
    Usage(String),
    Verify(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistency(_) | Error::Invariant(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Out = Result<String, Failure>;

fn family(args: &PairArgs) -> Result<Family, Failure> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| Failure::Usage(format!("--{name} is required for --family {}", args.family)))
    };
    let f = match args.family.to_ascii_lowercase().as_str() {
        "su" => Family::Su {
            p: need(args.p, "p")?,
            q: need(args.q, "q")?,
        },
        "sp" => Family::Sp { n: need(args.n, "n")? },
        "sostar" | "so*" => Family::SoStar { n: need(args.n, "n")? },
        "soodd" => Family::SoOdd { n: need(args.n, "n")? },
        "soeven" => Family::SoEven { n: need(args.n, "n")? },
        "e6" => Family::E6,
        "e7" => Family::E7,
        other => return Err(Failure::Usage(format!("unknown family `{other}`"))),
    };
    f.validate()?;
    Ok(f)
}

fn parse_labels(s: &str) -> Result<Labels, Failure> {
    let mut out = Labels::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("label `{item}` is not of the form muK=N")))?;
        let k: usize = k
            .trim()
            .strip_prefix("mu")
            .and_then(|k| k.parse().ok())
            .ok_or_else(|| Failure::Usage(format!("bad label name `{k}`")))?;
        let v: u64 = v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("label value `{v}` is not a non-negative integer")))?;
        if out.insert(k, v).is_some() {
            return Err(Failure::Usage(format!("label mu{k} given twice")));
        }
    }
    Ok(out)
}

fn parse_lambdas(s: &str) -> Result<Vec<Q>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_q(t).ok_or_else(|| Failure::Usage(format!("`{t}` is not an exact rational"))))
        .collect()
}

fn to_json<T: Serialize>(v: &T) -> Out {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Internal(e.to_string()))
}

fn verdict_str(v: &Verdict) -> String {
    match v {
        Verdict::UnitaryContinuous => "unitary".into(),
        Verdict::UnitaryPoint(k) => format!("unitary-point-{k}"),
        Verdict::NonUnitary => "nonunitary".into(),
    }
}

#[derive(Serialize)]
struct VerdictRow {
    #[serde(with = "jakobsen::rational::as_str")]
    lambda: Q,
    verdict: Verdict,
}

#[derive(Serialize)]
struct ClassifyReport<'a> {
    schema_version: u32,
    family: Family,
    labels: &'a Labels,
    result: &'a ClassificationResult,
    verdicts: Vec<VerdictRow>,
}

fn cmd_classify(pair: &PairArgs, labels: &str, format: TableFormat, lambdas: Option<&str>) -> Out {
    let f = family(pair)?;
    let labels = parse_labels(labels)?;
    let rs = RootSystem::build(f)?;
    rs.check_labels(&labels)?;
    let result = classify(&rs, &labels)?;
    let lambdas = lambdas.map(parse_lambdas).transpose()?.unwrap_or_default();
    let verdicts: Vec<VerdictRow> = lambdas
        .into_iter()
        .map(|l| VerdictRow {
            verdict: result.verdict(&l),
            lambda: l,
        })
        .collect();
    match format {
        TableFormat::Json => to_json(&ClassifyReport {
            schema_version: SCHEMA_VERSION,
            family: f,
            labels: &labels,
            result: &result,
            verdicts,
        }),
        TableFormat::Tsv => {
            let mut s = String::new();
            let _ = writeln!(s, "# schema_version\t{SCHEMA_VERSION}");
            let _ = writeln!(s, "family\t{f}");
            let _ = writeln!(s, "lambda0\t{}", fmt_q(&result.lambda0));
            let _ = writeln!(s, "lambda_s\t{}", fmt_q(&result.lambda_s));
            let _ = writeln!(s, "reduction_level\t{}", result.reduction_level);
            let _ = writeln!(s, "alpha0\t{}\t{}", result.alpha0, rs.name(&result.alpha0));
            let _ = writeln!(s);
            let _ = writeln!(s, "order\tlambda_q\tomega_q\thighest_weight\tcertificate");
            for m in &result.missing {
                let cert = m.certificate.as_ref().map_or("-".to_string(), |c| {
                    c.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
                });
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}",
                    m.order,
                    fmt_q(&m.lambda_q),
                    m.omega,
                    m.highest_weight,
                    cert
                );
            }
            if !verdicts.is_empty() {
                let _ = writeln!(s);
                let _ = writeln!(s, "lambda\tverdict");
                for v in &verdicts {
                    let _ = writeln!(s, "{}\t{}", fmt_q(&v.lambda), verdict_str(&v.verdict));
                }
            }
            Ok(s)
        }
    }
}

fn cmd_diagram(pair: &PairArgs, format: &str, split_rank: bool) -> Out {
    let f = family(pair)?;
    let format: Format = format.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let rs = RootSystem::build(f)?;
    let d = build_diagram(&rs);
    let marked = if split_rank { d.split_rank_sequence() } else { Vec::new() };
    let mut s = d.render(format, &marked);
    if split_rank {
        let counts = c_counts(&rs, &marked);
        let comment = if format == Format::Dot { "// " } else { "" };
        let _ = writeln!(s, "{comment}split rank: {}", marked.len());
        for (j, (g, c)) in marked.iter().zip(&counts).enumerate() {
            let _ = writeln!(s, "{comment}  γ{} = {} ({}), c = {c}", j + 1, g, rs.name(g));
        }
    }
    Ok(s)
}

#[derive(Serialize)]
struct OracleReport {
    schema_version: u32,
    algebra: SmallFamily,
    labels: Labels,
    max_degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form_ok: Option<bool>,
    scans: Vec<OracleRow>,
    ok: bool,
}

#[derive(Serialize)]
struct OracleRow {
    #[serde(with = "jakobsen::rational::as_str")]
    lambda: Q,
    verdict: Verdict,
    psd: bool,
    kernel: bool,
    minimal_kernel_weights: Vec<jakobsen::Weight>,
    ok: bool,
}

fn cmd_oracle(name: &str, labels: &str, lambdas: Option<&str>, degree: u32, format: TableFormat) -> Out {
    let kind: SmallFamily = name
        .parse()
        .map_err(|_| Failure::Usage(format!("unknown oracle algebra `{name}`; use su11, su21, su22 or sp2")))?;
    let labels = parse_labels(labels)?;
    let alg = SmallAlgebra::new(kind)?;
    alg.rs.check_labels(&labels)?;
    let class = classify(&alg.rs, &labels)?;

    let (rows, mut ok) = match lambdas {
        Some(ls) => {
            let ls = parse_lambdas(ls)?;
            let scans = positivity_scan(&alg, &labels, &ls, degree)?;
            let rows: Vec<OracleRow> = scans
                .into_iter()
                .map(|s| {
                    let verdict = class.verdict(&s.lambda);
                    let kernel = s.weights.iter().any(|w| w.nullity > 0);
                    OracleRow {
                        ok: s.psd == (verdict != Verdict::NonUnitary),
                        lambda: s.lambda,
                        verdict,
                        psd: s.psd,
                        kernel,
                        minimal_kernel_weights: s.minimal_kernel_weights,
                    }
                })
                .collect();
            let ok = rows.iter().all(|r| r.ok);
            (rows, ok)
        }
        None => {
            let rep = concordance(&alg, &labels, degree)?;
            let rows = rep
                .rows
                .into_iter()
                .map(|r| OracleRow {
                    kernel: !r.minimal_kernel_weights.is_empty(),
                    lambda: r.lambda,
                    verdict: r.verdict,
                    psd: r.psd,
                    minimal_kernel_weights: r.minimal_kernel_weights,
                    ok: r.ok,
                })
                .collect();
            (rows, rep.ok)
        }
    };

    let closed_form_ok = if kind == SmallFamily::Su11 {
        let mut good = true;
        for n in 1..=degree {
            let omega = alg.rs.beta.scale(&jakobsen::rational::q(n as i64));
            let pg = gram_polynomial(&alg, &labels, &omega, degree as i64, false)?;
            good &= pg.entries[0][0] == su11_closed_form(n);
        }
        ok &= good;
        Some(good)
    } else {
        None
    };

    let out = match format {
        TableFormat::Json => to_json(&OracleReport {
            schema_version: SCHEMA_VERSION,
            algebra: kind,
            labels,
            max_degree: degree,
            closed_form_ok,
            scans: rows,
            ok,
        })?,
        TableFormat::Tsv => {
            let mut s = String::new();
            let _ = writeln!(s, "# schema_version\t{SCHEMA_VERSION}");
            let _ = writeln!(s, "# {kind} degree<={degree}");
            if let Some(c) = closed_form_ok {
                let _ = writeln!(s, "# closed_form\t{}", if c { "ok" } else { "FAIL" });
            }
            let _ = writeln!(s, "lambda\tverdict\tpsd\tkernel\tminimal_kernel_weights\tok");
            for r in &rows {
                let ws: Vec<String> = r.minimal_kernel_weights.iter().map(|w| w.to_string()).collect();
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    fmt_q(&r.lambda),
                    verdict_str(&r.verdict),
                    r.psd,
                    r.kernel,
                    if ws.is_empty() { "-".into() } else { ws.join(" ") },
                    r.ok
                );
            }
            s
        }
    };
    if ok {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Verify(format!("{kind}: oracle disagrees with the classifier")))
    }
}

fn cmd_catalog(format: TableFormat) -> Out {
    let rep = verify_catalog()?;
    let out = match format {
        TableFormat::Json => to_json(&rep)?,
        TableFormat::Tsv => {
            let mut s = String::new();
            let _ = writeln!(s, "# schema_version\t{}", rep.schema_version);
            let _ = writeln!(s, "id\tfamily\theight\tinstantiations\trepairs\tok");
            for e in &rep.entries {
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    e.id,
                    e.family,
                    e.height,
                    e.instantiations.len(),
                    e.repairs.len(),
                    e.ok
                );
            }
            let _ = writeln!(s, "# passed\t{}/{}", rep.passed, rep.total);
            s
        }
    };
    if rep.passed == rep.total {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Verify(format!("{}/{} catalog entries pass", rep.passed, rep.total)))
    }
}

fn run(cli: Cli) -> Out {
    match cli.command {
        Command::Classify {
            pair,
            labels,
            format,
            lambdas,
        } => cmd_classify(&pair, &labels, format, lambdas.as_deref()),
        Command::Diagram {
            pair,
            format,
            split_rank,
        } => cmd_diagram(&pair, &format, split_rank),
        Command::Verify {
            catalog,
            oracle,
            lambdas,
            labels,
            degree,
            format,
        } => match (catalog, oracle) {
            (true, _) => cmd_catalog(format),
            (false, Some(name)) => cmd_oracle(&name, &labels, lambdas.as_deref(), degree, format),
            (false, None) => Err(Failure::Usage("verify needs --catalog or --oracle NAME".into())),
        },
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("JAKOBSEN_LOG")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verify(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal inconsistency: {m}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
