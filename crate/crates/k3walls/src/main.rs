use clap::{Args, Parser, Subcommand, ValueEnum};
use std::process::ExitCode;

use k3walls::classify;
use k3walls::report;
use k3walls::surface::{self, NormalizeOutcome};
use k3walls::walls::{PositiveJLower, SearchConfig};

const EXIT_INVALID: u8 = 2;
const EXIT_SYZ: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "k3walls",
    about = "Walls, chambers and Lagrangian fibrations for Hilbert schemes of points on K3 surfaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum JLowerArg {
    /// verbatim bound 2w^2 + 1 <= (w, v)
    Full,
    /// alternative reading w^2 + 1 <= (w, v)
    Half,
}

impl JLowerArg {
    fn to_config(self) -> SearchConfig {
        SearchConfig {
            positive_j_lower: match self {
                JLowerArg::Full => PositiveJLower::FullSquare,
                JLowerArg::Half => PositiveJLower::HalfSquare,
            },
        }
    }
}

#[derive(Args)]
struct Triple {
    /// Delta in H^2 = 2*Delta*k^2
    #[arg(long)]
    delta: i64,
    /// h in N = Delta*h^2 (gcd(h, k) = 1)
    #[arg(long)]
    h: i64,
    /// k in H^2 = 2*Delta*k^2
    #[arg(long)]
    k: i64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full analysis: walls, chambers, fibration verdict, FM partner
    Analyze {
        #[arg(long)]
        delta: Option<i64>,
        #[arg(long)]
        h: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
        /// surface degree H^2 (even; alternative to the triple)
        #[arg(long)]
        degree: Option<i64>,
        /// number of points N + 1 (alternative to the triple)
        #[arg(long)]
        points: Option<i64>,
        #[arg(long)]
        json: bool,
        #[arg(long, value_enum, default_value = "full")]
        positive_j_lower: JLowerArg,
    },
    /// Per-k wall table for fixed Delta and h
    Scan {
        #[arg(long)]
        delta: i64,
        #[arg(long)]
        h: i64,
        #[arg(long)]
        k_max: i64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: bool,
        #[arg(long, value_enum, default_value = "full")]
        positive_j_lower: JLowerArg,
    },
    /// Minimal k (and degree) from which the movable cone has one chamber
    MinK {
        #[arg(long)]
        delta: i64,
        #[arg(long)]
        h: i64,
        #[arg(long, value_enum, default_value = "full")]
        positive_j_lower: JLowerArg,
    },
    /// Fourier-Mukai partner data only
    Fm {
        #[command(flatten)]
        triple: Triple,
    },
    /// Render the xy-plane wall picture as SVG
    Plot {
        #[command(flatten)]
        triple: Triple,
        /// output path for the SVG file
        #[arg(long)]
        out: std::path::PathBuf,
        #[arg(long, value_enum, default_value = "full")]
        positive_j_lower: JLowerArg,
    },
}

fn invalid(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INVALID)
}

fn params_or_exit(delta: i64, h: i64, k: i64) -> Result<k3walls::SurfaceParams, ExitCode> {
    if delta < 1 || h < 1 || k < 1 {
        return Err(invalid("--delta, --h and --k must be positive"));
    }
    surface::from_triple(delta, h, k).map_err(|e| invalid(&e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Analyze {
            delta,
            h,
            k,
            degree,
            points,
            json,
            positive_j_lower,
        } => {
            let cfg = positive_j_lower.to_config();
            let triple = (delta, h, k);
            let pair = (degree, points);
            let params = match (triple, pair) {
                ((Some(delta), Some(h), Some(k)), (None, None)) => {
                    match params_or_exit(delta, h, k) {
                        Ok(p) => p,
                        Err(code) => return code,
                    }
                }
                ((None, None, None), (Some(degree), Some(points))) => {
                    if degree < 2 || degree % 2 != 0 {
                        return invalid("--degree must be a positive even integer (H^2 = 2d)");
                    }
                    if points < 2 {
                        return invalid("--points must be at least 2 (N + 1 with N >= 1)");
                    }
                    let (d, n) = (degree / 2, points - 1);
                    match surface::normalize(d, n) {
                        NormalizeOutcome::Params(p) => p,
                        NormalizeOutcome::SyzFailure {
                            nd,
                            square_free_part,
                        } => {
                            let doc = report::syz_failure_document(d, n, nd, square_free_part);
                            if json {
                                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                            } else {
                                print!("{}", report::render_human(&doc));
                            }
                            return ExitCode::from(EXIT_SYZ);
                        }
                    }
                }
                _ => {
                    return invalid(
                        "provide exactly one of (--delta --h --k) or (--degree --points)",
                    )
                }
            };
            let doc = report::analysis_document(&params, &cfg);
            if json {
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                print!("{}", report::render_human(&doc));
            }
            ExitCode::SUCCESS
        }
        Cmd::Scan {
            delta,
            h,
            k_max,
            json,
            csv,
            positive_j_lower,
        } => {
            if delta < 1 || h < 1 || k_max < 1 {
                return invalid("--delta, --h and --k-max must be positive");
            }
            if json && csv {
                return invalid("--json and --csv are mutually exclusive");
            }
            let rows = report::scan(delta, h, k_max, &positive_j_lower.to_config());
            if json {
                println!("{}", serde_json::to_string_pretty(&rows).unwrap());
            } else if csv {
                print!("{}", report::scan_csv(&rows));
            } else {
                print!("{}", report::scan_human(&rows));
            }
            ExitCode::SUCCESS
        }
        Cmd::MinK {
            delta,
            h,
            positive_j_lower,
        } => {
            if delta < 1 || h < 1 {
                return invalid("--delta and --h must be positive");
            }
            let cfg = positive_j_lower.to_config();
            let (k0, per_k) = classify::minimal_clear_k(delta, h, &cfg);
            let d0 = delta * k0 * k0;
            println!("k0 = {k0}, d0 = {d0}, degree = {}", 2 * d0);
            println!("k    wall vectors");
            for (k, count) in per_k {
                println!("{k:<4} {count}");
            }
            ExitCode::SUCCESS
        }
        Cmd::Fm { triple } => {
            let params = match params_or_exit(triple.delta, triple.h, triple.k) {
                Ok(p) => p,
                Err(code) => return code,
            };
            let fm = report::fm_partner_doc(&params);
            println!("u = ({},{},{})", fm.u[0], fm.u[1], fm.u[2]);
            println!("partner degree = {}", fm.partner_degree);
            println!("Bezout (A,B) = ({},{})", fm.bezout[0], fm.bezout[1]);
            println!(
                "NS generator preimage = ({},{},{})",
                fm.ns_generator[0], fm.ns_generator[1], fm.ns_generator[2]
            );
            println!("twist order = {}", fm.twist_order);
            println!(
                "Beauville-Mukai class = (0, {}H', {})",
                fm.bm_class_curve_coeff, fm.bm_class_s
            );
            ExitCode::SUCCESS
        }
        Cmd::Plot {
            triple,
            out,
            positive_j_lower,
        } => {
            let params = match params_or_exit(triple.delta, triple.h, triple.k) {
                Ok(p) => p,
                Err(code) => return code,
            };
            let rep = classify::chamber_report(&params, &positive_j_lower.to_config());
            let svg = classify::svg_plot(&params, &rep.walls);
            if let Err(e) = std::fs::write(&out, svg) {
                eprintln!("error: cannot write {}: {e}", out.display());
                return ExitCode::from(EXIT_IO);
            }
            println!(
                "wrote {} ({} walls, {} chambers)",
                out.display(),
                rep.walls.len(),
                rep.chamber_count
            );
            ExitCode::SUCCESS
        }
    }
}
