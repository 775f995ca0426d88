use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::info;

use hopfmu_core::fibers::{CertificateKind, Orientations};
use hopfmu_core::generators::{gen_collapse5, gen_hopf, gen_seifert_xi, gen_zeta, mu_table};
use hopfmu_core::hopf::{check_preconditions, hopf_invariant_oriented, perturbation_trials};
use hopfmu_core::io::{check_theorem, fiber_report, validation_section};
use hopfmu_core::manifold::{validate_closed_oriented_3_manifold, validate_sphere_2, ManifoldReport};
use hopfmu_core::{parse_bundle, serialize_bundle, Bundle, Error, Simplex, SimplicialMap};

const EXIT_VALIDATION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_THEOREM: u8 = 4;

#[derive(Parser)]
#[command(name = "hopfmu", version, about = "Fibers, μ and the Hopf invariant of simplicial maps onto a 2-sphere")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every complex and map in a bundle.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Count source tetrahedra over each target triangle.
    Mu {
        file: PathBuf,
        #[arg(long)]
        map: Option<String>,
        /// Comma-separated vertex labels, e.g. `A,B,C`.
        #[arg(long)]
        triangle: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Fiber over the barycenter of a triangle, with lemma certificates.
    Fibers {
        file: PathBuf,
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        triangle: String,
        #[arg(long)]
        json: bool,
    },
    /// Hopf invariant with well-definedness checks.
    Hopf {
        file: PathBuf,
        #[arg(long)]
        map: Option<String>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Full report; fails with exit code 4 if the lower bound is violated.
    CheckTheorem {
        file: PathBuf,
        #[arg(long)]
        map: Option<String>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Write a generated map as a bundle.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Collapse5,
    Hopf,
    Zeta,
    Xi,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TheoremViolation(_) => EXIT_THEOREM,
            Error::NotHomologySphere(_)
            | Error::NotOriented(_)
            | Error::NotMaximal(_)
            | Error::TriangleNotInComplex(_)
            | Error::DegenerateTetra(_)
            | Error::ConditionNotMet(_)
            | Error::NotSimplicial(_) => EXIT_PRECONDITION,
            _ => EXIT_VALIDATION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn parse_failure(message: String) -> Failure {
    Failure {
        code: EXIT_PARSE,
        message,
    }
}

fn load(path: &PathBuf) -> Result<Bundle, Failure> {
    let text = fs::read_to_string(path).map_err(|e| parse_failure(format!("{}: {e}", path.display())))?;
    parse_bundle(&text).map_err(|e| parse_failure(format!("{}: {e}", path.display())))
}

fn pick_map(bundle: &Bundle, name: Option<&str>) -> Result<SimplicialMap, Failure> {
    match name {
        Some(n) => bundle.map(n).cloned().ok_or_else(|| parse_failure(format!("no map named `{n}`"))),
        None if bundle.maps.len() == 1 => Ok(bundle.maps[0].clone()),
        None => Err(parse_failure(format!("bundle has {} maps; choose one with --map", bundle.maps.len()))),
    }
}

fn parse_triangle(f: &SimplicialMap, labels: &str) -> Result<Simplex, Failure> {
    let ids = labels
        .split(',')
        .map(|l| {
            f.target()
                .vertex_by_label(l.trim())
                .ok_or_else(|| parse_failure(format!("unknown target vertex `{l}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let s = Simplex::new(ids).ok_or_else(|| parse_failure(format!("`{labels}` repeats a vertex")))?;
    if f.target().facet_index(&s).is_none() {
        return Err(Error::NotMaximal(s).into());
    }
    Ok(s)
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { file, json } => {
            let bundle = load(&file)?;
            let reports: Vec<ManifoldReport> = bundle
                .complexes
                .iter()
                .map(|c| match c.dim() {
                    2 => validate_sphere_2(c),
                    _ => validate_closed_oriented_3_manifold(c),
                })
                .collect();
            let maps: Vec<_> = bundle.maps.iter().map(|m| (m.name().to_string(), m.validate_simplicial())).collect();
            if json {
                print_json(&serde_json::json!({ "complexes": reports, "maps": maps }));
            } else {
                for r in &reports {
                    println!("complex {}: {}", r.name, r.summary());
                }
                for (name, r) in &maps {
                    let verdict = if r.is_valid() { "simplicial".to_string() } else { format!("{} facets violate simpliciality", r.violations.len()) };
                    println!("map {name}: {verdict}");
                }
            }
            if reports.iter().all(|r| r.is_valid()) && maps.iter().all(|(_, r)| r.is_valid()) {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_VALIDATION,
                    message: "validation failed".into(),
                })
            }
        }
        Command::Mu { file, map, triangle, json } => {
            let bundle = load(&file)?;
            let f = pick_map(&bundle, map.as_deref())?;
            if !f.validate_simplicial().is_valid() {
                return Err(Error::NotSimplicial(f.name().to_string()).into());
            }
            let table = match triangle {
                Some(t) => {
                    let s = parse_triangle(&f, &t)?;
                    [(f.target().display_simplex(&s), f.mu(&s)?)].into_iter().collect()
                }
                None => mu_table(&f),
            };
            if json {
                print_json(&table);
            } else {
                for (s, m) in &table {
                    println!("{s}\t{m}");
                }
            }
            Ok(())
        }
        Command::Fibers { file, map, triangle, json } => {
            let bundle = load(&file)?;
            let f = pick_map(&bundle, map.as_deref())?;
            let s = parse_triangle(&f, &triangle)?;
            let o = Orientations::coherent(&f)?;
            let report = fiber_report(&f, &s, &o)?;
            if json {
                print_json(&report);
            } else {
                println!("fiber over {}: μ = {}, {} component(s)", report.triangle, report.mu, report.components.len());
                for (i, c) in report.components.iter().enumerate() {
                    let cert = match &c.certificate {
                        CertificateKind::Lemma1 { vertex } => format!("disk by first lemma at {}", f.source().label(*vertex)),
                        CertificateKind::Lemma2 { alpha, .. } => format!("disk by second lemma at {}", f.target().label(*alpha)),
                        CertificateKind::Neither => "none".to_string(),
                    };
                    println!(
                        "  C{i}: |S| = {}, |V| = {}, |init(S)| = {}, certificate: {cert}",
                        c.s_len, c.v_len, c.initial_image_len
                    );
                }
            }
            Ok(())
        }
        Command::Hopf { file, map, trials, seed, json } => {
            let bundle = load(&file)?;
            let f = pick_map(&bundle, map.as_deref())?;
            let o = check_preconditions(&f)?;
            let mut result = hopf_invariant_oriented(&f, &o)?;
            let extra = perturbation_trials(&f, &o, trials, seed)?;
            if let Some(t) = extra.iter().find(|t| t.value != result.value) {
                return Err(Error::InvalidInput(format!("H changed to {} under {}", t.value, t.choice)).into());
            }
            result.well_definedness_checks.extend(extra);
            if json {
                print_json(&result);
            } else {
                println!("H({}) = {}", f.name(), result.value);
                println!("  {} well-definedness checks agree", result.well_definedness_checks.len());
            }
            Ok(())
        }
        Command::CheckTheorem { file, map, trials, seed, json } => {
            let bundle = load(&file)?;
            let f = pick_map(&bundle, map.as_deref())?;
            let v = validation_section(&f);
            if !v.simpliciality.is_valid() || !v.source.is_valid() || !v.target.is_valid() {
                if json {
                    print_json(&v);
                }
                return Err(Failure {
                    code: EXIT_VALIDATION,
                    message: format!("source: {}; target: {}", v.source.summary(), v.target.summary()),
                });
            }
            let report = check_theorem(&f, trials, seed)?;
            if json {
                println!("{}", report.to_json());
            } else {
                let h = report.hopf.as_ref().map_or(0, |h| h.value);
                println!("map {}: H = {h}", report.map);
                for (s, m) in &report.mu {
                    println!("  μ({s}) = {m}");
                }
                println!("  bound {}", if report.theorem_holds { "holds" } else { "fails" });
            }
            if report.theorem_holds {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_THEOREM,
                    message: "lower bound violated".into(),
                })
            }
        }
        Command::Generate { family, n, out } => {
            let g = match family {
                Family::Collapse5 => gen_collapse5(),
                Family::Hopf => gen_hopf(),
                Family::Zeta => gen_zeta(n),
                Family::Xi => gen_seifert_xi(n),
            }?;
            for step in &g.construction_log {
                info!("{step}");
            }
            let mut text = format!("# {:?}\n", g.provenance);
            text.push_str(&serialize_bundle(&Bundle::from_map(&g.map)));
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| Failure {
                    code: EXIT_VALIDATION,
                    message: format!("{}: {e}", path.display()),
                })?,
                None => print!("{text}"),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
