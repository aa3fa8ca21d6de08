//! `peterson` — exact Peterson Schubert calculus from a Cartan matrix.
//!
//! Subcommands: `cartan` (root-system data), `sc` (structure constants of one
//! product), `table` (a full generator matrix), `eulerian` (one mixed
//! Eulerian number), `volume` (the full table of them), and `verify`
//! (self-check suites against independent oracles).
//!
//! Exit codes: 0 success, 2 input/validation error, 3 refused request
//! (reducible Eulerian query, rank beyond a cap), 4 internal invariant
//! violation (including a failed `verify` suite).

mod cache;

use clap::{Args, Parser, Subcommand, ValueEnum};
use peterson::eulerian::{mixed_eulerian, volume_polynomial, Composition};
use peterson::io;
use peterson::operators::{
    structure_constants_c, structure_constants_d, verify_commutativity, verify_convergence,
    verify_exhaustive, verify_oracle, StructureConstants, SubsetMatrix, SuiteReport,
};
use peterson::{CartanMatrix, Error, NodeSet, RootSystem};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "peterson",
    version,
    about = "Exact structure constants of Peterson Schubert calculus and mixed \
             Eulerian numbers for any finite-type root system"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (json and pretty carry derived data; csv and latex
    /// render the main object of each command)
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,

    /// Cache directory (takes precedence over the PETERSON_CACHE_DIR
    /// environment variable and the default user cache location)
    #[arg(long, value_name = "DIR", global = true)]
    cache_dir: Option<PathBuf>,

    /// Disable reading and writing the on-disk cache
    #[arg(long, global = true)]
    no_cache: bool,
}

/// Source of the root system: a named type or a JSON matrix file.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct SystemArgs {
    /// Root-system type, e.g. "B3" or "A2,A1"
    #[arg(long = "type", value_name = "SPEC")]
    type_spec: Option<String>,

    /// JSON file with {"components": [["B",3],...]} or {"cartan": [[2,-1],...]}
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    /// Square-free monomials in the degree-2 classes
    Monomial,
    /// Peterson classes
    Peterson,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// Every generator-matrix row against the quotient-ring oracle
    Oracle,
    /// Closed-form matrix entries against truncated floating-point series
    Convergence,
    /// Products are independent of the order the generators are applied
    Commutativity,
    /// All of the above plus positivity, grading, and support checks
    Exhaustive,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Cartan matrix with components, determinant, inverse,
    /// exponents, Weyl order, and Coxeter numbers
    Cartan {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Structure constants of a product of two classes
    Sc {
        #[command(flatten)]
        system: SystemArgs,
        /// Left factor: node subset such as "2" or "1,3,5" (or "{}": identity)
        #[arg(long = "I", value_name = "NODES")]
        i_nodes: String,
        /// Right factor: node subset
        #[arg(long = "J", value_name = "NODES")]
        j_nodes: String,
        /// Basis in which the product is expanded
        #[arg(long, value_enum, default_value = "peterson")]
        basis: BasisArg,
        /// Evaluate at t = 0 (non-equivariant structure constants)
        #[arg(long)]
        at_zero: bool,
    },
    /// Full generator matrix of one node, rows and columns over all 2^n
    /// subsets in graded lexicographic order
    Table {
        #[command(flatten)]
        system: SystemArgs,
        /// Node whose generator matrix to print (1-based)
        #[arg(long)]
        i: usize,
        /// Evaluate at t = 0 (drops the diagonal degree-1 terms)
        #[arg(long)]
        at_zero: bool,
    },
    /// One mixed Eulerian number
    Eulerian {
        #[command(flatten)]
        system: SystemArgs,
        /// Composition c_1,...,c_n of n (one part per node, in node order)
        #[arg(long = "c", value_name = "PARTS")]
        composition: String,
    },
    /// Every mixed Eulerian number: the full volume-polynomial coefficient
    /// table
    Volume {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Run a self-check suite and print its report; a failed suite exits 4
    Verify {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Series length for the convergence suite
        #[arg(long, default_value_t = 200)]
        truncation: usize,
        /// Absolute tolerance for the convergence suite
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Cartan { system } => with_system(cli, system, |rs| {
            let text = match cli.format {
                Format::Json => json_string(&io::root_system_json(rs)?),
                Format::Pretty => pretty_cartan(rs)?,
                Format::Csv => csv_cartan(rs.cartan()),
                Format::Latex => latex_cartan(rs.cartan()),
            };
            print_block(&text);
            Ok(())
        }),
        Command::Sc { system, i_nodes, j_nodes, basis, at_zero } => {
            let i_set = parse_nodes(i_nodes)?;
            let j_set = parse_nodes(j_nodes)?;
            with_system(cli, system, |rs| {
                let equivariant = !at_zero;
                let sc = match basis {
                    BasisArg::Monomial => structure_constants_d(rs, i_set, j_set, equivariant)?,
                    BasisArg::Peterson => structure_constants_c(rs, i_set, j_set, equivariant)?,
                };
                let text = match cli.format {
                    Format::Json => json_string(&io::structure_constants_json(&sc)),
                    Format::Csv => io::structure_constants_csv(&sc),
                    Format::Latex => io::structure_constants_latex(&sc),
                    Format::Pretty => pretty_sc(&sc),
                };
                print_block(&text);
                Ok(())
            })
        }
        Command::Table { system, i, at_zero } => with_system(cli, system, |rs| {
            let table = SubsetMatrix::build(rs, *i, !at_zero)?;
            let text = match cli.format {
                Format::Json => json_string(&io::subset_matrix_json(&table)),
                Format::Csv => io::subset_matrix_csv(&table),
                Format::Latex => io::subset_matrix_latex(&table),
                Format::Pretty => pretty_table(&table),
            };
            print_block(&text);
            Ok(())
        }),
        Command::Eulerian { system, composition } => with_system(cli, system, |rs| {
            let parts = parse_composition(composition)?;
            let c = Composition::new(parts, rs.rank())?;
            let result = mixed_eulerian(rs, &c)?;
            let text = match cli.format {
                Format::Json => json_string(&io::mixed_eulerian_json(&result)),
                Format::Pretty => result.value.to_string(),
                Format::Csv => format!(
                    "composition,prefactor,raw_entry,value\n\"{}\",{},{},{}\n",
                    c.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","),
                    result.prefactor,
                    io::format_rat(&result.raw_entry),
                    result.value
                ),
                Format::Latex => format!(
                    "A_{{({})}} = {}",
                    c.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","),
                    result.value
                ),
            };
            print_block(&text);
            Ok(())
        }),
        Command::Volume { system } => with_system(cli, system, |rs| {
            let table = volume_polynomial(rs)?;
            let text = match cli.format {
                Format::Json => json_string(&io::volume_json(&table)),
                Format::Csv => io::volume_csv(&table),
                Format::Latex => io::volume_latex(&table),
                Format::Pretty => table
                    .coefficients
                    .iter()
                    .map(|(c, v)| {
                        let parts = c
                            .parts()
                            .iter()
                            .map(|p| p.to_string())
                            .collect::<Vec<_>>()
                            .join(",");
                        format!("({parts}): {v}")
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            print_block(&text);
            Ok(())
        }),
        Command::Verify { system, suite, truncation, tolerance } => {
            with_system(cli, system, |rs| {
                let report = match suite {
                    Suite::Oracle => verify_oracle(rs)?,
                    Suite::Convergence => verify_convergence(rs, *truncation, *tolerance)?,
                    Suite::Commutativity => verify_commutativity(rs)?,
                    Suite::Exhaustive => verify_exhaustive(rs)?,
                };
                let text = match cli.format {
                    Format::Json => json_string(&io::suite_report_json(&report)),
                    Format::Pretty | Format::Latex => pretty_report(&report),
                    Format::Csv => format!(
                        "suite,cases,passed\n{},{},{}\n",
                        report.suite,
                        report.cases,
                        report.passed()
                    ),
                };
                print_block(&text);
                if report.passed() {
                    Ok(())
                } else {
                    Err(Error::Internal(format!(
                        "suite '{}' failed {} of {} cases",
                        report.suite,
                        report.failures.len(),
                        report.cases
                    )))
                }
            })
        }
    }
}

/// Builds the root system, seeds it from the cache, runs the job, and stores
/// the (merged) snapshot back on success.
fn with_system(
    cli: &Cli,
    system: &SystemArgs,
    job: impl FnOnce(&RootSystem) -> Result<(), Error>,
) -> Result<(), Error> {
    let rs = load_system(system)?;
    let dir = resolve_cache_dir(cli);
    if let Some(dir) = &dir {
        if let Some(snap) = cache::load(dir, rs.cartan()) {
            rs.absorb(&snap);
        }
    }
    let result = job(&rs);
    if result.is_ok() {
        if let Some(dir) = &dir {
            cache::store(dir, rs.cartan(), &rs.snapshot());
        }
    }
    result
}

fn load_system(system: &SystemArgs) -> Result<RootSystem, Error> {
    let cartan = match (&system.type_spec, &system.file) {
        (Some(spec), None) => RootSystem::from_type(spec)?.cartan().clone(),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
            CartanMatrix::from_json_str(&text)?
        }
        _ => unreachable!("clap requires exactly one of --type/--file"),
    };
    Ok(RootSystem::new(cartan))
}

fn resolve_cache_dir(cli: &Cli) -> Option<PathBuf> {
    if cli.no_cache {
        return None;
    }
    if let Some(dir) = &cli.cache_dir {
        return Some(dir.clone());
    }
    for var in ["PETERSON_CACHE_DIR", "XDG_CACHE_HOME"] {
        if let Ok(value) = std::env::var(var) {
            if !value.is_empty() {
                let base = PathBuf::from(value);
                return Some(if var == "PETERSON_CACHE_DIR" {
                    base
                } else {
                    base.join("peterson")
                });
            }
        }
    }
    match std::env::var("HOME") {
        Ok(home) if !home.is_empty() => {
            Some(PathBuf::from(home).join(".cache").join("peterson"))
        }
        _ => None,
    }
}

fn parse_nodes(s: &str) -> Result<NodeSet, Error> {
    NodeSet::parse(s).map_err(Error::Malformed)
}

fn parse_composition(s: &str) -> Result<Vec<usize>, Error> {
    s.trim()
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::Malformed(format!("invalid composition part '{}'", part.trim())))
        })
        .collect()
}

fn json_string(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON serialization cannot fail")
}

/// Prints text that may or may not end in a newline, without doubling it.
/// A closed pipe (e.g. the output piped through `head`) ends the process
/// quietly instead of panicking.
fn print_block(text: &str) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    if writeln!(lock, "{}", text.trim_end_matches('\n')).is_err() {
        std::process::exit(0);
    }
}

fn pretty_sc(sc: &StructureConstants) -> String {
    if sc.terms.is_empty() {
        return "0".into();
    }
    sc.terms
        .iter()
        .map(|(k, poly)| format!("{k}: {poly}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn pretty_table(table: &SubsetMatrix) -> String {
    let mut lines = vec![format!(
        "generator matrix of node {}{}",
        table.node,
        if table.equivariant { "" } else { " at t = 0" }
    )];
    for (j_set, row) in &table.rows {
        let entries = if row.is_empty() {
            "0".to_string()
        } else {
            row.iter()
                .map(|(k, poly)| format!("{k}={poly}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        lines.push(format!("{j_set}: {entries}"));
    }
    lines.join("\n")
}

fn pretty_report(report: &SuiteReport) -> String {
    let mut lines = vec![format!(
        "suite {}: {} cases, {}",
        report.suite,
        report.cases,
        if report.passed() { "PASS" } else { "FAIL" }
    )];
    for failure in &report.failures {
        lines.push(format!("  counterexample: {failure}"));
    }
    lines.join("\n")
}

fn pretty_cartan(rs: &RootSystem) -> Result<String, Error> {
    let full = rs.full_set();
    let mut lines = vec![
        format!("rank {}, det {}, Weyl order {}", rs.rank(), rs.det(full)?, rs.weyl_order(full)?),
        "cartan matrix:".into(),
        rs.cartan().to_string().trim_end().to_string(),
    ];
    let components = rs.components(full)?;
    let names: Vec<String> = components.iter().map(|c| c.to_string()).collect();
    lines.push(format!("components: {}", names.join(", ")));
    for &comp in components.iter() {
        let exps: Vec<String> =
            rs.exponents(comp)?.iter().map(|m| m.to_string()).collect();
        lines.push(format!(
            "exponents {comp}: {} (Coxeter number {})",
            exps.join(", "),
            rs.coxeter_number(comp)?
        ));
    }
    lines.push("inverse:".into());
    let inverse = rs.inverse(full)?;
    let rows: Vec<Vec<String>> = (0..inverse.n_rows())
        .map(|i| inverse.row(i).iter().map(io::format_rat).collect())
        .collect();
    lines.push(aligned(&rows));
    Ok(lines.join("\n"))
}

/// Right-aligns a grid of strings into columns.
fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|j| rows.iter().filter_map(|r| r.get(j)).map(String::len).max().unwrap_or(0))
        .collect();
    rows.iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, cell)| format!("{cell:>width$}", width = widths[j]))
                .collect::<Vec<_>>()
                .join("  ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn csv_cartan(cartan: &CartanMatrix) -> String {
    let n = cartan.rank();
    (1..=n)
        .map(|i| {
            (1..=n).map(|j| cartan.entry(i, j).to_string()).collect::<Vec<_>>().join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn latex_cartan(cartan: &CartanMatrix) -> String {
    let n = cartan.rank();
    let body = (1..=n)
        .map(|i| {
            (1..=n).map(|j| cartan.entry(i, j).to_string()).collect::<Vec<_>>().join(" & ")
        })
        .collect::<Vec<_>>()
        .join(" \\\\\n");
    format!("\\begin{{pmatrix}}\n{body}\n\\end{{pmatrix}}")
}
