//! Command-line front end. Every verb produces a report; the exit code is
//! 0 when all checks in it pass, 2 when a certification failed, 3 when the
//! input was invalid. Canonical output carries no timestamps; `--stamp`
//! wraps the JSON report in an outer object and prefixes the text form.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::config::{load_config, load_divisor, load_fibrations, load_poly, FibrationSpec};
use crate::curveconf::lattice_model;
use crate::dynamics::{free_word_check, word_search, Isometry};
use crate::fibration::{fiber_check, Error as FibError};
use crate::report::{
    decimal_string, emit_json, poly_strings, rat_string, render_text, DynamicsRecord,
    FreeCheckRecord, Report, SalemRecord,
};
use crate::salem::salem_certify;
use crate::scenario::{
    fibration_record, fixed_isotropic_record, lattice_summary, run_scenario, translation_record,
    word_record, ScenarioOptions,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CERT_FAILED: i32 = 2;
pub const EXIT_INVALID_INPUT: i32 = 3;

#[derive(Parser)]
#[command(
    name = "k3dyn",
    version,
    about = "Exact lattice models of curve configurations on K3 surfaces: \
             fiber classification, translation dynamics, Salem certificates"
)]
struct Cli {
    /// Write the report as canonical JSON to this path ("-" for stdout)
    /// instead of rendering text.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Add a Unix-time stamp outside the canonical report block.
    #[arg(long, global = true)]
    stamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a builtin scenario end to end: kummer, most-algebraic, salem-k3.
    Scenario {
        name: String,
        /// Longest word tried in the translation-word search.
        #[arg(long, value_name = "N", default_value_t = 6)]
        max_word_len: usize,
        /// Depth of the free-group collision check.
        #[arg(long, value_name = "N", default_value_t = 8)]
        free_check_len: usize,
        /// Worker threads for the word search.
        #[arg(long, value_name = "N", default_value_t = 1)]
        threads: usize,
    },
    /// Lattice-level facts about a curve configuration.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Kodaira classification of candidate fibers.
    Fiber {
        #[command(subcommand)]
        cmd: FiberCmd,
    },
    /// Word search over section translations of listed fibrations.
    Dynamics {
        #[command(subcommand)]
        cmd: DynamicsCmd,
    },
    /// Salem certificates for integer polynomials.
    Salem {
        #[command(subcommand)]
        cmd: SalemCmd,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Rank, signature, and discriminant of the configured span.
    Info { config: PathBuf },
}

#[derive(Subcommand)]
enum FiberCmd {
    /// Classify a divisor as a Kodaira fiber of the configuration.
    Classify { config: PathBuf, divisor: PathBuf },
}

#[derive(Subcommand)]
enum DynamicsCmd {
    /// Build the translations of the listed fibrations and search words.
    Search {
        config: PathBuf,
        fibrations: PathBuf,
        #[arg(long, value_name = "N", default_value_t = 6)]
        max_word_len: usize,
        #[arg(long, value_name = "N", default_value_t = 8)]
        free_check_len: usize,
        #[arg(long, value_name = "N", default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Subcommand)]
enum SalemCmd {
    /// Certify a polynomial as Salem with a rational lambda enclosure.
    Certify { poly: PathBuf },
}

#[derive(Debug, thiserror::Error)]
enum Error {
    #[error(transparent)]
    Config(#[from] crate::config::Error),
    #[error(transparent)]
    Curves(#[from] crate::curveconf::Error),
    #[error(transparent)]
    Fibration(#[from] crate::fibration::Error),
    #[error(transparent)]
    Dynamics(#[from] crate::dynamics::Error),
    #[error(transparent)]
    Scenario(#[from] crate::scenario::Error),
    #[error("fibration {index} in {path}: {problem}")]
    FibrationEntry {
        index: usize,
        path: PathBuf,
        problem: String,
    },
    #[error("cannot write report to {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID_INPUT,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => match emit(&report, cli.json.as_deref(), cli.stamp) {
            Ok(()) if report.passed() => EXIT_OK,
            Ok(()) => EXIT_CERT_FAILED,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_INVALID_INPUT
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID_INPUT
        }
    }
}

fn execute(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Scenario {
            name,
            max_word_len,
            free_check_len,
            threads,
        } => {
            let opts = ScenarioOptions {
                max_word_len: *max_word_len,
                free_check_len: *free_check_len,
                threads: (*threads).max(1),
            };
            Ok(run_scenario(name, &opts)?)
        }
        Command::Lattice {
            cmd: LatticeCmd::Info { config },
        } => lattice_info(config),
        Command::Fiber {
            cmd: FiberCmd::Classify { config, divisor },
        } => fiber_classify(config, divisor),
        Command::Dynamics {
            cmd:
                DynamicsCmd::Search {
                    config,
                    fibrations,
                    max_word_len,
                    free_check_len,
                    threads,
                },
        } => dynamics_search(
            config,
            fibrations,
            *max_word_len,
            *free_check_len,
            (*threads).max(1),
        ),
        Command::Salem {
            cmd: SalemCmd::Certify { poly },
        } => salem_certify_file(poly),
    }
}

fn lattice_info(config: &Path) -> Result<Report, Error> {
    let cfg = load_config(config)?;
    let model = lattice_model(&cfg)?;
    let mut report = Report::new("lattice-info");
    report.lattice = Some(lattice_summary(&model));
    Ok(report)
}

fn fiber_classify(config: &Path, divisor: &Path) -> Result<Report, Error> {
    let cfg = load_config(config)?;
    let model = lattice_model(&cfg)?;
    let spec = load_divisor(divisor)?;
    let mut report = Report::new("fiber-classify");
    report.lattice = Some(lattice_summary(&model));
    match fiber_check(&model, &spec.divisor) {
        Ok(fd) => {
            let mut record = fibration_record(&model, &fd, spec.zero_section.as_deref())?;
            if let (Some(origin), Some(section)) = (&spec.zero_section, &spec.section) {
                let (translation, _) = translation_record(&model, &fd, "t", origin, section)?;
                record.translation = Some(translation);
            }
            report.fibrations.push(record);
        }
        // A divisor naming unknown curves is malformed input; a well-formed
        // divisor that fails the fiber checks is a failed classification.
        Err(FibError::Config(e)) => return Err(Error::Curves(e)),
        Err(e) => report.failures.push(format!("fiber.classify: {e}")),
    }
    Ok(report)
}

fn dynamics_search(
    config: &Path,
    fibrations: &Path,
    max_word_len: usize,
    free_check_len: usize,
    threads: usize,
) -> Result<Report, Error> {
    let cfg = load_config(config)?;
    let model = lattice_model(&cfg)?;
    let specs = load_fibrations(fibrations)?;
    let mut report = Report::new("dynamics-search");
    report.lattice = Some(lattice_summary(&model));

    let entry_error = |index: usize, problem: String| Error::FibrationEntry {
        index,
        path: fibrations.to_path_buf(),
        problem,
    };
    let mut gens: Vec<Isometry> = Vec::new();
    for (i, spec) in specs.iter().enumerate() {
        let FibrationSpec {
            divisor,
            zero_section,
            section,
        } = spec;
        let fd = fiber_check(&model, divisor).map_err(|e| entry_error(i, e.to_string()))?;
        let origin = zero_section
            .as_deref()
            .ok_or_else(|| entry_error(i, "missing zero_section".into()))?;
        let target = section
            .as_deref()
            .ok_or_else(|| entry_error(i, "missing section".into()))?;
        let label = format!("f{}", i + 1);
        let (translation, isometry) = translation_record(&model, &fd, &label, origin, target)
            .map_err(|e| entry_error(i, e.to_string()))?;
        let mut record = fibration_record(&model, &fd, Some(origin))?;
        record.translation = Some(translation);
        report.fibrations.push(record);
        gens.push(isometry);
    }

    let mut fixed = Vec::new();
    for g in &gens {
        let (record, _) = fixed_isotropic_record(&model, g)?;
        fixed.push(record);
    }
    let best = word_search(&gens, max_word_len, threads)?;
    let free = if gens.len() == 2 {
        let check = free_word_check(&gens, free_check_len)?;
        Some(FreeCheckRecord {
            depth: free_check_len,
            free_up_to: check.free_up_to,
            relator: check.relator,
        })
    } else {
        None
    };
    report.dynamics = Some(DynamicsRecord {
        generators: gens.iter().map(|g| g.label().to_string()).collect(),
        fixed_isotropic: fixed,
        best_word: Some(word_record(
            &best.word,
            best.letters.len(),
            best.explored,
            &best.entropy,
        )),
        free_check: free,
    });
    Ok(report)
}

fn salem_certify_file(poly: &Path) -> Result<Report, Error> {
    let p = load_poly(poly)?;
    let mut report = Report::new("salem-certify");
    match salem_certify(&p) {
        Ok(cert) => {
            report.salem = Some(SalemRecord {
                poly: poly_strings(&cert.poly),
                degree: cert.degree,
                lambda: [rat_string(&cert.lambda_lo), rat_string(&cert.lambda_hi)],
                lambda_decimal: [
                    decimal_string(&cert.lambda_lo, 12),
                    decimal_string(&cert.lambda_hi, 12),
                ],
                interior_trace_roots: cert.interior_trace_roots,
                irreducibility: cert.irreducibility.label().to_string(),
            });
            if matches!(
                cert.irreducibility,
                crate::salem::Irreducibility::Reducible { .. }
            ) {
                report
                    .failures
                    .push("salem.certify: polynomial is reducible".to_string());
            }
        }
        Err(e) => report.failures.push(format!("salem.certify: {e}")),
    }
    Ok(report)
}

fn emit(report: &Report, json: Option<&Path>, stamp: bool) -> Result<(), Error> {
    let stamp_value = stamp.then(unix_time_stamp);
    match json {
        None => {
            if let Some(s) = &stamp_value {
                println!("stamp: {s}");
            }
            print!("{}", render_text(report));
        }
        Some(path) => {
            let bytes = emit_json(report, stamp_value.as_deref());
            if path.as_os_str() == "-" {
                use std::io::Write;
                std::io::stdout()
                    .write_all(&bytes)
                    .map_err(|source| Error::Write {
                        path: path.to_path_buf(),
                        source,
                    })?;
            } else {
                std::fs::write(path, &bytes).map_err(|source| Error::Write {
                    path: path.to_path_buf(),
                    source,
                })?;
            }
        }
    }
    Ok(())
}

fn unix_time_stamp() -> String {
    use std::time::{SystemTime, UNIX_EPOCH};
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verb_grammar_parses() {
        assert!(Cli::try_parse_from(["k3dyn", "scenario", "kummer"]).is_ok());
        assert!(Cli::try_parse_from(["k3dyn", "lattice", "info", "c.json"]).is_ok());
        assert!(Cli::try_parse_from(["k3dyn", "fiber", "classify", "c.json", "d.json"]).is_ok());
        assert!(Cli::try_parse_from([
            "k3dyn",
            "dynamics",
            "search",
            "c.json",
            "f.json",
            "--max-word-len",
            "4"
        ])
        .is_ok());
        assert!(Cli::try_parse_from(["k3dyn", "salem", "certify", "p.json"]).is_ok());
        assert!(Cli::try_parse_from(["k3dyn", "fiber", "classify"]).is_err());
    }

    #[test]
    fn defaults_match_the_documented_values() {
        let cli = Cli::try_parse_from(["k3dyn", "scenario", "kummer"]).unwrap();
        match cli.command {
            Command::Scenario {
                max_word_len,
                free_check_len,
                threads,
                ..
            } => {
                assert_eq!(max_word_len, 6);
                assert_eq!(free_check_len, 8);
                assert_eq!(threads, 1);
            }
            _ => unreachable!(),
        }
        assert!(cli.json.is_none());
        assert!(!cli.stamp);
    }

    #[test]
    fn global_flags_apply_after_the_verb() {
        let cli =
            Cli::try_parse_from(["k3dyn", "scenario", "salem-k3", "--json", "-", "--stamp"])
                .unwrap();
        assert_eq!(cli.json.as_deref(), Some(Path::new("-")));
        assert!(cli.stamp);
    }
}
