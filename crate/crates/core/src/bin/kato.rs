use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use kato_core::chern::Mutation;
use kato_core::enumerate::all_sequences_up_to;
use kato_core::germ::{build_germ, classify_hermitian, twist_alpha};
use kato_core::report::{build_report, enumeration_row, to_dot, to_json, to_text, EnumerationRow};
use kato_core::sequence::{parse_any, DEFAULT_MAX_B2, MAX_B2_ENV};
use kato_core::validate::{validate_sweep, SweepOptions};
use kato_core::{DlousskySequence, Error, Limits};

const EXIT_VALIDATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "kato",
    version,
    about = "Invariants of Kato surfaces from Dloussky sequences"
)]
struct Cli {
    /// Largest accepted b2.
    #[arg(long, global = true, env = MAX_B2_ENV, default_value_t = DEFAULT_MAX_B2)]
    max_b2: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every invariant of one sequence.
    Report {
        /// "[s2 r2]" or an expanded list such as "4,2,2,2".
        sequence: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Holomorphic vector field flag.
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        epsilon: u8,
    },
    /// One row per canonical sequence with b2 up to the bound.
    Enumerate {
        #[arg(long)]
        b_max: usize,
        #[arg(long, value_enum, default_value_t = Filter::Simple)]
        filter: Filter,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Run every identity suite over all sequences with b2 up to the bound.
    Validate {
        #[arg(long)]
        b_max: usize,
        /// Worker threads; 1 runs sequentially.
        #[arg(long)]
        threads: Option<usize>,
        /// Print the summary as JSON.
        #[arg(long)]
        json: bool,
        /// Corrupt one closed-form constant (harness self-check).
        #[arg(long, hide = true, default_value = "none")]
        mutate: Mutation,
    },
    /// Print, evaluate and iterate the birational germ.
    Germ {
        sequence: String,
        /// a_0, …, a_(l-1), a_(l+K); complex values like 0.5, 1+2i, -i.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<Complex64>,
        /// Use the normal form for a generic first blow-up.
        #[arg(long)]
        generic: bool,
        /// Point z1,z2 at which to evaluate; also the orbit start.
        #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
        eval: Vec<Complex64>,
        /// Number of iterations to trace.
        #[arg(long)]
        orbit: Option<usize>,
        /// Vector field flag, only used for the a_(l+K) effectivity note.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        epsilon: Option<u8>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Filter {
    All,
    Simple,
    Index1,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

/// Module that owns an error, for the `error [module]` prefix.
fn owner(e: &Error) -> &'static str {
    match e {
        Error::Syntax { .. }
        | Error::BlockLength { .. }
        | Error::Empty
        | Error::EntryTooSmall { .. }
        | Error::Inconsistent { .. }
        | Error::TooLarge { .. } => "sequence",
        Error::SelfLoopUnsupported { .. } | Error::MalformedGraph(_) => "graph",
        Error::SingularSystem { .. } | Error::NotSimple { .. } => "chern",
        Error::EmptyArguments => "forms",
        Error::ParameterCount { .. }
        | Error::ExponentOverflow(_)
        | Error::IndexNotOne { .. }
        | Error::ZeroParameter => "germ",
        Error::EpsilonInconsistent { .. } | Error::InvalidEpsilon(_) => "deform",
    }
}

struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_USAGE, format!("error [{}]: {e}", owner(&e)))
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // a closed pipe (`kato ... | head`) is not an error
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure(0, String::new());
        }
        Failure(EXIT_USAGE, format!("error: {e}"))
    }
}

fn parse(text: &str, limits: &Limits) -> Result<DlousskySequence, Failure> {
    Ok(parse_any(text, limits)?)
}

fn check_bound(b_max: usize, limits: &Limits) -> Result<(), Failure> {
    if b_max < 3 {
        return Err(Failure(
            EXIT_USAGE,
            format!("error: --b-max must be at least 3, got {b_max}"),
        ));
    }
    if b_max > limits.max_b2 {
        return Err(Error::TooLarge {
            b2: b_max,
            max: limits.max_b2,
        }
        .into());
    }
    Ok(())
}

fn fmt_c(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{z}")
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let limits = Limits { max_b2: cli.max_b2 };
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Report {
            sequence,
            format,
            epsilon,
        } => {
            let seq = parse(&sequence, &limits)?;
            match format {
                ReportFormat::Dot => write!(out, "{}", to_dot(&seq))?,
                ReportFormat::Json => writeln!(out, "{}", to_json(&build_report(&seq, epsilon)?))?,
                ReportFormat::Text => write!(out, "{}", to_text(&build_report(&seq, epsilon)?))?,
            }
        }
        Command::Enumerate {
            b_max,
            filter,
            format,
        } => {
            check_bound(b_max, &limits)?;
            let seqs: Vec<DlousskySequence> = all_sequences_up_to(b_max, &limits)
                .into_iter()
                .filter(|s| !matches!(filter, Filter::Simple) || s.is_simple())
                .collect();
            let rows: Vec<EnumerationRow> = seqs
                .par_iter()
                .map(enumeration_row)
                .collect::<Result<_, _>>()?;
            let rows: Vec<EnumerationRow> = rows
                .into_iter()
                .filter(|r| {
                    !matches!(filter, Filter::Index1)
                        || r.index.as_ref().is_some_and(|i| *i == 1.into())
                })
                .collect();
            match format {
                TableFormat::Json => {
                    let json = serde_json::to_string_pretty(&rows).expect("rows serialize");
                    writeln!(out, "{json}")?;
                }
                TableFormat::Csv => {
                    let mut writer = csv::Writer::from_writer(out);
                    for row in &rows {
                        writer
                            .serialize(row)
                            .map_err(|e| Failure(EXIT_USAGE, format!("error: {e}")))?;
                    }
                    writer.flush()?;
                }
            }
        }
        Command::Validate {
            b_max,
            threads,
            json,
            mutate,
        } => {
            check_bound(b_max, &limits)?;
            let mut options = SweepOptions::new(b_max);
            options.mutation = mutate;
            options.limits = limits;
            let summary = match threads {
                Some(1) => {
                    options.parallel = false;
                    validate_sweep(&options)
                }
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Failure(EXIT_USAGE, format!("error: {e}")))?
                    .install(|| validate_sweep(&options)),
                None => validate_sweep(&options),
            };
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&summary).expect("summary serializes")
                )?;
            } else {
                writeln!(
                    out,
                    "b2 <= {}: {} sequences ({} simple, {} oracle comparisons), {} checks",
                    summary.b_max,
                    summary.sequences,
                    summary.simple_sequences,
                    summary.oracle_comparisons,
                    summary.checks
                )?;
                if summary.passed() {
                    writeln!(out, "PASS")?;
                } else {
                    writeln!(out, "FAIL: {} failed checks", summary.failures.len())?;
                    for f in summary.failures.iter().take(20) {
                        writeln!(
                            out,
                            "  {} {}/{}: {}",
                            f.sequence, f.suite, f.identity, f.detail
                        )?;
                    }
                }
            }
            if let Some(first) = summary.failures.first() {
                return Err(Failure(
                    EXIT_VALIDATION,
                    format!(
                        "first failure: {} {}/{}",
                        first.sequence, first.suite, first.identity
                    ),
                ));
            }
        }
        Command::Germ {
            sequence,
            a,
            generic,
            eval,
            orbit,
            epsilon,
        } => {
            let seq = parse(&sequence, &limits)?;
            let l = seq.simple_parts().map_or(0, |(_, l)| l as usize);
            let params = if a.is_empty() {
                vec![Complex64::new(0.0, 0.0); l + 1]
            } else {
                a
            };
            let mut germ = build_germ(&seq, &params, generic)?;
            if let Some(eps) = epsilon {
                germ = germ.with_epsilon(eps);
            }
            writeln!(out, "{germ}")?;
            let names: Vec<String> = (0..l as u64)
                .chain(std::iter::once(germ.extra_index()))
                .zip(&params)
                .map(|(i, z)| format!("a{i} = {}", fmt_c(*z)))
                .collect();
            writeln!(out, "parameters: {}", names.join(", "))?;
            let effective = match germ.extra_parameter_effective {
                Some(true) => "effective (vector field present)",
                Some(false) => "not effective (no vector field)",
                None => "effective only with a holomorphic vector field (pass --epsilon)",
            };
            writeln!(out, "a{}: {effective}", germ.extra_index())?;
            match (
                twist_alpha(&seq, params[0]),
                classify_hermitian(&seq, params[0]),
            ) {
                (Ok(t), Ok(class)) => writeln!(
                    out,
                    "twist: alpha = {}, beta = {}, Gauduchon degree sign {}; {class}",
                    fmt_c(t.alpha),
                    fmt_c(t.beta),
                    t.gauduchon_degree_sign
                )?,
                (Err(e), _) | (_, Err(e)) => writeln!(out, "twist: n/a ({e})")?,
            }
            let start = match eval.as_slice() {
                [] => None,
                [z1, z2] => Some((*z1, *z2)),
                other => {
                    return Err(Failure(
                        EXIT_USAGE,
                        format!("error: --eval takes two values z1,z2, got {}", other.len()),
                    ))
                }
            };
            if let Some((z1, z2)) = start {
                let v = germ.eval(z1, z2);
                writeln!(
                    out,
                    "G({},{}) = ({},{}){}",
                    fmt_c(z1),
                    fmt_c(z2),
                    fmt_c(v.z1),
                    fmt_c(v.z2),
                    if v.finite { "" } else { "  [non-finite]" }
                )?;
            }
            if let Some(steps) = orbit {
                let (z1, z2) =
                    start.unwrap_or((Complex64::new(0.1, 0.0), Complex64::new(0.1, 0.0)));
                writeln!(out, "orbit:")?;
                for (i, p) in germ.orbit(z1, z2, steps).iter().enumerate() {
                    writeln!(
                        out,
                        "{i:>4}  ({}, {})  |z| = {:e}{}",
                        fmt_c(p.z1),
                        fmt_c(p.z2),
                        p.norm(),
                        if p.finite { "" } else { "  [non-finite]" }
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(0, _)) => ExitCode::SUCCESS,
        Err(Failure(code, message)) => {
            eprintln!("{message}");
            ExitCode::from(code)
        }
    }
}
