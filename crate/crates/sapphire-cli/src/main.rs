//! Command-line front end: single-matrix queries, pairwise homeomorphism
//! tests, and bulk atlas generation with machine-readable output.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 violated matrix
//! invariant, 4 self-check failure, 5 I/O error.

mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{atlas_csv, h1_csv, outcome_text, render_table, AtlasRow, BuMap};
use sapphire::{
    all_cover_reports, borsuk_ulam, canonical_form, classify_involutions, enumerate_canonical,
    h1_of_presentation, h1_sapphire, hom_equivalence_classes, homeomorphic, morimoto_orbit,
    pi1_sapphire, pi1_torus_bundle, reidemeister_schreier, BuOutcome, CoverKind,
    InvolutionCount, Mat2Z, SapphireMatrix,
};

#[derive(Parser)]
#[command(
    name = "sapphire",
    version,
    about = "Exact invariants of sapphire Sol 3-manifolds",
    long_about = "Decides canonical forms, homeomorphism, first homology, double covers, \
                  free involutions, and the Borsuk-Ulam property for sapphire Sol \
                  3-manifolds given by gluing matrices in GL(2,Z).\n\n\
                  Matrices are written \"r s; t u\" or as JSON [[r,s],[t,u]]."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum AtlasFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical gluing matrix and the orbit size
    Canon {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// First homology of the sapphire
    H1 {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// List the double covers with homology and hom equivalence classes
    Covers {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Classify the free involutions
    Involutions {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Borsuk-Ulam verdict for maps into R^n
    Bu {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(short, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Decide whether two gluing matrices give homeomorphic sapphires
    Homeo {
        #[arg(allow_hyphen_values = true)]
        matrix1: String,
        #[arg(allow_hyphen_values = true)]
        matrix2: String,
    },
    /// Tabulate every class with a representative in [1..N]^4
    Atlas {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        max_entry: i64,
        /// Output file; stdout if omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: AtlasFormat,
        /// Re-derive every cover's homology through the Reidemeister-Schreier
        /// engine and fail on any disagreement with the closed forms
        #[arg(long)]
        check: bool,
    },
}

enum CliError {
    Usage(String),
    Invariant(sapphire::Error),
    Check(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Check(_) => 4,
            CliError::Io(_) => 5,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => format!("error: {m}"),
            CliError::Invariant(e) => format!("error: {e}"),
            CliError::Check(m) => format!("check failed: {m}"),
            CliError::Io(m) => format!("i/o error: {m}"),
        }
    }
}

fn parse_sapphire(text: &str) -> Result<SapphireMatrix, CliError> {
    let matrix: Mat2Z = text
        .parse()
        .map_err(|e: sapphire::Error| CliError::Usage(e.to_string()))?;
    SapphireMatrix::new(matrix).map_err(CliError::Invariant)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Canon { matrix } => {
            let m = parse_sapphire(&matrix)?;
            let canon = canonical_form(&m).map_err(CliError::Invariant)?;
            println!("{canon}");
            println!("orbit size: {}", morimoto_orbit(&m).len());
            Ok(())
        }
        Command::H1 { matrix } => {
            let m = parse_sapphire(&matrix)?;
            println!("{}", h1_sapphire(&m));
            Ok(())
        }
        Command::Covers { matrix, format } => {
            let m = parse_sapphire(&matrix)?;
            let canon = canonical_form(&m).map_err(CliError::Invariant)?;
            let reports = all_cover_reports(&canon);
            let partition = hom_equivalence_classes(&canon);
            match format {
                Format::Json => {
                    let value = serde_json::json!({
                        "matrix": m.matrix(),
                        "canonical": canon.matrix(),
                        "covers": reports,
                        "hom_partition": partition,
                    });
                    println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
                }
                Format::Table => {
                    println!("canonical: {canon}");
                    let rows: Vec<Vec<String>> = reports
                        .iter()
                        .map(|r| {
                            let images = r.cover.hom.images();
                            vec![
                                r.cover.case.to_string(),
                                format!("a->{} b->{} c->{}", images[0], images[1], images[2]),
                                r.cover.kind.kind_name().to_string(),
                                r.cover.kind.matrix().to_string(),
                                r.h1.to_string(),
                            ]
                        })
                        .collect();
                    print!("{}", render_table(&["case", "hom", "kind", "matrix", "h1"], &rows));
                    for class in &partition.classes {
                        let cases: Vec<String> =
                            class.cases.iter().map(|c| c.to_string()).collect();
                        let status = match class.status {
                            sapphire::ClassStatus::ProvenDistinct => "distinct from the rest",
                            sapphire::ClassStatus::ProvenEquivalent => "a single class",
                            sapphire::ClassStatus::Unknown => "equivalence unknown",
                        };
                        println!("hom class {{{}}}: {status}", cases.join(", "));
                    }
                }
            }
            Ok(())
        }
        Command::Involutions { matrix, format } => {
            let m = parse_sapphire(&matrix)?;
            let report = classify_involutions(&m);
            match format {
                Format::Json => {
                    let value = serde_json::json!({
                        "matrix": m.matrix(),
                        "involutions": report,
                        "bu": BuMap::compute(&m),
                    });
                    println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
                }
                Format::Table => {
                    match report.count {
                        InvolutionCount::None => println!("no free involutions"),
                        InvolutionCount::ExactlyOne => {
                            println!("exactly one class of free involutions")
                        }
                        InvolutionCount::ExactlyThree => {
                            println!("exactly three classes of free involutions")
                        }
                        InvolutionCount::ThreeToFive => {
                            println!("at least three and at most five classes of free involutions")
                        }
                    }
                    for q in &report.quotients {
                        println!("quotient: {} (canonical: {})", q.raw, q.canonical);
                    }
                    for note in &report.notes {
                        println!("note: {note}");
                    }
                }
            }
            Ok(())
        }
        Command::Bu { matrix, n } => {
            let m = parse_sapphire(&matrix)?;
            let verdict = borsuk_ulam(&m, n).map_err(CliError::Invariant)?;
            let headline = match verdict.verdict {
                BuOutcome::Holds => "HOLDS",
                BuOutcome::Fails => "FAILS",
                BuOutcome::VacuousNoInvolution => "VACUOUS (no free involutions)",
            };
            println!("{headline}");
            println!("rationale: {}", verdict.rationale);
            Ok(())
        }
        Command::Homeo { matrix1, matrix2 } => {
            let a = parse_sapphire(&matrix1)?;
            let b = parse_sapphire(&matrix2)?;
            if homeomorphic(&a, &b) {
                println!("homeomorphic");
            } else {
                println!("not homeomorphic");
            }
            Ok(())
        }
        Command::Atlas { max_entry, out, format, check } => {
            let rows: Vec<AtlasRow> = enumerate_canonical(max_entry)
                .iter()
                .map(AtlasRow::compute)
                .collect();
            if check {
                verify_rows(&rows)?;
            }
            let payload = match format {
                AtlasFormat::Json => {
                    let value = serde_json::json!({
                        "max_entry": max_entry,
                        "count": rows.len(),
                        "rows": rows,
                    });
                    let mut text =
                        serde_json::to_string_pretty(&value).expect("serializable");
                    text.push('\n');
                    text
                }
                AtlasFormat::Csv => atlas_csv(&rows),
            };
            match out {
                Some(path) => {
                    let mut file = std::fs::File::create(&path)
                        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    file.write_all(payload.as_bytes())
                        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                }
                None => print!("{payload}"),
            }
            Ok(())
        }
    }
}

/// The atlas self-check: every cover's homology recomputed through the
/// Reidemeister-Schreier kernel presentation must match the closed form.
fn verify_rows(rows: &[AtlasRow]) -> Result<(), CliError> {
    for row in rows {
        let m = SapphireMatrix::new(row.canonical).expect("atlas rows are valid");
        let presentation = pi1_sapphire(&m);
        for cover in &row.covers {
            let kernel = reidemeister_schreier(&presentation, &cover.cover.hom)
                .expect("atlas homs are valid");
            let engine = h1_of_presentation(&kernel);
            let table = match &cover.cover.kind {
                CoverKind::Sapphire(s) => h1_sapphire(s),
                CoverKind::TorusBundle(t) => h1_of_presentation(&pi1_torus_bundle(t)),
            };
            if engine != table {
                return Err(CliError::Check(format!(
                    "row {}, case {}: kernel h1 {} differs from table h1 {}",
                    row.matrix, cover.cover.case, engine, table
                )));
            }
        }
        let recomputed = h1_csv(&h1_sapphire(&m));
        if recomputed != h1_csv(&row.h1) {
            return Err(CliError::Check(format!(
                "row {}: stored h1 {} differs from recomputed {}",
                row.matrix,
                h1_csv(&row.h1),
                recomputed
            )));
        }
        let _ = outcome_text(row.bu.n1);
    }
    Ok(())
}
