//! Verification driver: loads presets, runs named suites, writes JSON or
//! text reports. Exit code 0 when every check passed, 1 on check failure,
//! 2 on usage errors.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hopfgal::chern;
use hopfgal::preset::{resolve_preset, Preset, BUILTIN_NAMES};
use hopfgal::report::Report;
use hopfgal::suites::{self, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "hopfgal",
    about = "Exact verification suites for graded Hopf-Galois extensions, strong connections, line-bundle projectors, and lattice Chern numbers",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone)]
struct Common {
    /// Preset name (built-in or found on HOPFGAL_PRESET_PATH).
    #[arg(long, default_value = "super-s3")]
    preset: String,
    /// Group-element / charge range for the checks.
    #[arg(long, default_value_t = 3)]
    range: i64,
    /// Word-length bound for exact linear-algebra memberships.
    #[arg(long, default_value_t = 6)]
    degree_bound: usize,
    /// Grid size for numeric integration, as `NxM`.
    #[arg(long, default_value = "32x32")]
    grid: String,
    /// Seed for the sampled descent checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report to this path instead of stdout.
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Galois certificate and translation-map property suite.
    Galois(Common),
    /// Strong-connection verifier (five checks) plus integral round trips.
    Connection {
        #[command(flatten)]
        common: Common,
        /// `strong` for the shipped connection, `nonstrong` for the
        /// perturbed witness (equator sphere only; expected to fail).
        #[arg(long, default_value = "strong")]
        form: String,
    },
    /// The four cyclic conversion identities and lift-level bijections.
    Roundtrip(Common),
    /// Gauge actions: strongness preservation, compatibility, triviality.
    Gauge(Common),
    /// Projector matrices and hermitian companions.
    Projector {
        #[command(flatten)]
        common: Common,
        /// Export the computed matrices (symbolic entries plus a numeric
        /// sample via the body evaluation) to this JSON file.
        #[arg(long)]
        export_json: Option<String>,
    },
    /// Module-isomorphism certificates between plain and hermitian forms.
    Iso(Common),
    /// Rank-two freeness certificate for the spin-bundle sum.
    Freeness(Common),
    /// Lattice Chern numbers of the body line bundles.
    Chern {
        #[command(flatten)]
        common: Common,
        /// Compute a single charge instead of the pairing table.
        #[arg(long)]
        n: Option<i64>,
        /// Write per-plaquette fluxes as CSV to this path.
        #[arg(long)]
        flux_csv: Option<String>,
    },
    /// Critical-pair confluence check for the preset's rule system.
    Confluence(Common),
    /// Coinvariant generation and module-generator independence.
    Coinvariants(Common),
    /// Every suite on every applicable preset.
    All(Common),
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once('x')
        .ok_or_else(|| format!("bad grid `{s}`, expected NxM"))?;
    let a = a.parse().map_err(|_| format!("bad grid `{s}`"))?;
    let b = b.parse().map_err(|_| format!("bad grid `{s}`"))?;
    Ok((a, b))
}

fn load(common: &Common) -> Result<(Arc<Preset>, SuiteConfig), String> {
    let path = std::env::var("HOPFGAL_PRESET_PATH").ok();
    let preset =
        resolve_preset(&common.preset, path.as_deref()).map_err(|e| e.to_string())?;
    let grid = parse_grid(&common.grid)?;
    Ok((
        preset,
        SuiteConfig {
            range: common.range,
            degree_bound: common.degree_bound,
            grid,
            seed: common.seed,
        },
    ))
}

fn export_projectors(
    preset: &Arc<Preset>,
    cfg: &SuiteConfig,
    path: &str,
) -> Result<(), String> {
    use hopfgal::bundles;
    let s = hopfgal::connection::SplittingS::standard(preset).map_err(|e| e.to_string())?;
    let numeric_ok = matches!(
        preset.kind,
        hopfgal::preset::PresetKind::SuperS3 | hopfgal::preset::PresetKind::ClassicalSl2
    );
    let (theta, phi) = (1.0f64, 0.5f64);
    let mut out = vec![];
    for n in 1..=cfg.range {
        for mu in [-n, n] {
            let module =
                bundles::line_bundle_generators(preset, mu).map_err(|e| e.to_string())?;
            let cert = bundles::projector_from_splitting(&s, &module, None)
                .map_err(|e| e.to_string())?;
            let mut entry = serde_json::json!({
                "mu": mu,
                "projector": cert.e.to_json(),
            });
            if numeric_ok {
                entry["numeric_at"] = serde_json::json!({"theta": theta, "phi": phi});
                entry["projector_numeric"] =
                    chern::numeric_matrix_json(preset, &cert.e, theta, phi)
                        .map_err(|e| e.to_string())?;
                let herm =
                    bundles::hermitian_projector(preset, mu).map_err(|e| e.to_string())?;
                entry["hermitian"] = herm.f.to_json();
                entry["hermitian_numeric"] =
                    chern::numeric_matrix_json(preset, &herm.f, theta, phi)
                        .map_err(|e| e.to_string())?;
            }
            out.push(entry);
        }
    }
    std::fs::write(
        path,
        serde_json::to_string_pretty(&serde_json::Value::Array(out)).unwrap(),
    )
    .map_err(|e| e.to_string())
}

fn emit(report: &Report, common: &Common) -> Result<bool, String> {
    let body = match common.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &common.out {
        Some(path) => std::fs::write(path, body).map_err(|e| e.to_string())?,
        None => println!("{body}"),
    }
    Ok(report.pass)
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Galois(c) => {
            let (p, cfg) = load(c)?;
            emit(&suites::suite_galois(&p, &cfg).map_err(|e| e.to_string())?, c)
        }
        Command::Connection { common: c, form } => {
            let (p, cfg) = load(c)?;
            emit(
                &suites::suite_connection(&p, form, &cfg).map_err(|e| e.to_string())?,
                c,
            )
        }
        Command::Roundtrip(c) => {
            let (p, cfg) = load(c)?;
            emit(&suites::suite_roundtrip(&p, &cfg).map_err(|e| e.to_string())?, c)
        }
        Command::Gauge(c) => {
            let (p, cfg) = load(c)?;
            emit(&suites::suite_gauge(&p, &cfg).map_err(|e| e.to_string())?, c)
        }
        Command::Projector {
            common: c,
            export_json,
        } => {
            let (p, cfg) = load(c)?;
            if let Some(path) = export_json {
                export_projectors(&p, &cfg, path)?;
            }
            emit(&suites::suite_projector(&p, &cfg).map_err(|e| e.to_string())?, c)
        }
        Command::Iso(c) => {
            let (p, cfg) = load(c)?;
            emit(&suites::suite_iso(&p, &cfg).map_err(|e| e.to_string())?, c)
        }
        Command::Freeness(c) => {
            let (p, _) = load(c)?;
            emit(&suites::suite_freeness(&p).map_err(|e| e.to_string())?, c)
        }
        Command::Chern {
            common: c,
            n,
            flux_csv,
        } => {
            let (p, cfg) = load(c)?;
            if let Some(n) = n {
                // Single-charge run with both signs and optional flux dump.
                let mut report = Report::new(
                    "chern",
                    &p.name,
                    serde_json::json!({"n": n, "grid": [cfg.grid.0, cfg.grid.1]}),
                );
                for mu in [-n.abs(), n.abs()] {
                    let frame = chern::body_frame(&p, mu).map_err(|e| e.to_string())?;
                    let (res, flux) = chern::lattice_chern(&frame, cfg.grid.0, cfg.grid.1)
                        .map_err(|e| e.to_string())?;
                    report.record(
                        "lattice chern number",
                        serde_json::to_value(&res).unwrap(),
                        res.residual < 1e-6 && res.integer.abs() == n.abs(),
                        Some(format!("c = {}", res.integer)),
                    );
                    if let Some(path) = flux_csv {
                        let mut csv = String::from("theta_index,phi_index,flux\n");
                        for (j, row) in flux.flux.iter().enumerate() {
                            for (k, f) in row.iter().enumerate() {
                                csv.push_str(&format!("{j},{k},{f}\n"));
                            }
                        }
                        let target = format!("{path}.mu{mu}.csv");
                        std::fs::write(&target, csv).map_err(|e| e.to_string())?;
                    }
                }
                emit(&report, c)
            } else {
                emit(&suites::suite_chern(&p, &cfg).map_err(|e| e.to_string())?, c)
            }
        }
        Command::Confluence(c) => {
            let (p, cfg) = load(c)?;
            emit(&suites::suite_confluence(&p, &cfg).map_err(|e| e.to_string())?, c)
        }
        Command::Coinvariants(c) => {
            let (p, cfg) = load(c)?;
            emit(&suites::suite_coinvariants(&p, &cfg).map_err(|e| e.to_string())?, c)
        }
        Command::All(c) => {
            // Every applicable preset, unless one was named explicitly.
            let names: Vec<String> = if c.preset == "super-s3" {
                BUILTIN_NAMES.iter().map(|s| s.to_string()).collect()
            } else {
                vec![c.preset.clone()]
            };
            let mut report = Report::new("all", "all-presets", serde_json::json!({}));
            for name in names {
                let mut c2 = c.clone();
                c2.preset = name;
                let (p, cfg) = load(&c2)?;
                report.merge(suites::suite_all_for(&p, &cfg).map_err(|e| e.to_string())?);
            }
            emit(&report, c)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
