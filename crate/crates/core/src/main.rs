use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use pathcong::harness::{check_theorems, congruence_lattice, ideal_lattice, random_quiver};
use pathcong::{parse_quiver, PathAlgebra, PathSemigroup, Quiver, DEFAULT_MAX_ELEMENTS};

const EXIT_DOMAIN: u8 = 1;
const EXIT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(name = "pathcong", version, about = "Congruence lattices of path semigroups of acyclic quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Congruences,
    Ideals,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a quiver file and report its shape
    Validate { file: PathBuf },
    /// List every path of an acyclic quiver
    Paths { file: PathBuf },
    /// Enumerate the congruences on the path semigroup
    Congruences {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
    },
    /// Enumerate the special ideals of the path algebra
    Ideals {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
    },
    /// Build the lattice and print its Hasse diagram and properties
    Lattice {
        file: PathBuf,
        /// Write the Hasse diagram in DOT format to this path
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long, value_enum, default_value = "congruences")]
        route: Route,
        #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
    },
    /// Check every theorem prediction against the computed lattices
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run the theorem checks on seeded random acyclic quivers
    RandomCheck {
        #[arg(long, default_value_t = 4)]
        vertices: usize,
        /// Upper bound on the number of arrows
        #[arg(long, default_value_t = 5)]
        arrows: usize,
        /// Upper bound on parallel arrows between two vertices
        #[arg(long, default_value_t = 3)]
        multiplicity: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
    },
}

fn load(file: &FsPath) -> Result<Quiver> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    parse_quiver(&text).with_context(|| format!("parsing {}", file.display()))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Validate { file } => {
            let q = load(&file)?;
            println!(
                "ok: {} vertices, {} arrows, acyclic: {}",
                q.vertices().len(),
                q.arrows().len(),
                if q.is_acyclic() { "yes" } else { "no" }
            );
        }
        Command::Paths { file } => {
            let q = load(&file)?;
            for p in q.enumerate_paths()? {
                println!(
                    "{}: {} -> {} (length {})",
                    p.name(&q),
                    q.vertices()[p.source],
                    q.vertices()[p.target],
                    p.len()
                );
            }
        }
        Command::Congruences {
            file,
            json,
            max_elements,
        } => {
            let s = PathSemigroup::new(&load(&file)?)?;
            let all = s.enumerate_congruences(max_elements)?;
            if json {
                print_json(&Value::Array(all.iter().map(|c| s.congruence_to_json(c)).collect()));
            } else {
                for (i, c) in all.iter().enumerate() {
                    let rees = if c.is_rees() { "  (Rees)" } else { "" };
                    println!("rho_{}: {}{rees}", i + 1, s.describe_congruence(c));
                }
                println!("{} congruences", all.len());
            }
        }
        Command::Ideals {
            file,
            json,
            max_elements,
        } => {
            let alg = PathAlgebra::new(PathSemigroup::new(&load(&file)?)?);
            let all = alg.enumerate_special_ideals(max_elements)?;
            if json {
                print_json(&Value::Array(all.iter().map(|i| alg.ideal_to_json(i)).collect()));
            } else {
                for (k, i) in all.iter().enumerate() {
                    println!(
                        "I_{} = {} = {}",
                        k + 1,
                        alg.describe_ideal(i),
                        alg.describe_span(i.space())
                    );
                }
                println!("{} special ideals", all.len());
            }
        }
        Command::Lattice {
            file,
            dot,
            json,
            route,
            max_elements,
        } => {
            let s = PathSemigroup::new(&load(&file)?)?;
            let lattice = match route {
                Route::Congruences => congruence_lattice(&s, &s.enumerate_congruences(max_elements)?)?,
                Route::Ideals => {
                    let alg = PathAlgebra::new(s);
                    ideal_lattice(&alg, &alg.enumerate_special_ideals(max_elements)?)?
                }
            };
            if let Some(path) = dot {
                fs::write(&path, lattice.to_dot()).with_context(|| format!("writing {}", path.display()))?;
            }
            if json {
                print_json(&lattice.to_json());
            } else {
                for (i, label) in lattice.labels().iter().enumerate() {
                    println!("{}: {label}", i + 1);
                }
                let covers: Vec<String> = lattice
                    .cover_pairs()
                    .iter()
                    .map(|&(a, b)| format!("{}<{}", a + 1, b + 1))
                    .collect();
                println!("covers ({}): {}", covers.len(), covers.join(" "));
                for (name, value) in lattice.properties().entries() {
                    println!("{name}: {value}");
                }
            }
        }
        Command::Check {
            file,
            max_elements,
            json,
        } => {
            let report = check_theorems(&load(&file)?, max_elements)?;
            if json {
                print_json(&report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if !report.is_consistent() {
                return Ok(EXIT_VIOLATION);
            }
        }
        Command::RandomCheck {
            vertices,
            arrows,
            multiplicity,
            seed,
            trials,
            max_elements,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failed = 0;
            for trial in 0..trials {
                // redraw until the semigroup fits under the cap
                let q = loop {
                    let m = rng.gen_range(0..=arrows);
                    let q = random_quiver(&mut rng, vertices, m, multiplicity);
                    if q.enumerate_paths()?.len() < max_elements {
                        break q;
                    }
                };
                let report = check_theorems(&q, max_elements)?;
                let status = if report.is_consistent() { "consistent" } else { "VIOLATION" };
                let arrows: Vec<String> = q
                    .arrows()
                    .iter()
                    .map(|a| format!("{}->{}", q.vertices()[a.source], q.vertices()[a.target]))
                    .collect();
                println!(
                    "trial {trial}: [{}] paths {}, max parallel {}, {} congruences: {status}",
                    arrows.join(" "),
                    report.summary.paths,
                    report.summary.max_parallel_paths,
                    report.congruences
                );
                if !report.is_consistent() {
                    failed += 1;
                    print!("{}", q.to_text());
                    print!("{}", report.to_text());
                }
            }
            println!("{} of {trials} trials consistent", trials - failed);
            if failed > 0 {
                return Ok(EXIT_VIOLATION);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}
