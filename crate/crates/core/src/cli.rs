//! The `casimir` command line: `info`, `grade`, `search` and `verify`.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand};

use crate::algebra::LieAlgebra;
use crate::algebra_file::parse_algebra;
use crate::enveloping::Uea;
use crate::error::Error;
use crate::families::Family;
use crate::grading::{compute_grading, WeightVector};
use crate::search::{run_search, Mode, SearchOptions, SearchReport, WeightSelection};
use crate::weyl::{coadjoint_realization, parse_realization, Realization};

#[derive(Debug, Parser)]
#[command(name = "casimir", version, about = "Exact search for polynomial Casimir operators of Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension, Jacobi check and expected number of invariants.
    Info(InfoArgs),
    /// Maximal grading and weight classes.
    Grade(GradeArgs),
    /// Search for Casimir operators up to a given degree.
    Search(SearchArgs),
    /// Check whether an expression is a Casimir operator.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct AlgebraArg {
    /// Built-in (`filiform:n`, `schrodinger:d`, `heisenberg:d`, `sl2`, `abelian:n`) or algebra file.
    #[arg(long, short = 'a')]
    pub algebra: String,
}

#[derive(Debug, Args)]
pub struct InfoArgs {
    #[command(flatten)]
    pub algebra: AlgebraArg,
    /// Random points for the generic rank.
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GradeArgs {
    #[command(flatten)]
    pub algebra: AlgebraArg,
    /// Largest degree for the class table.
    #[arg(long, short = 'm', default_value_t = 2)]
    pub degree: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub algebra: AlgebraArg,
    /// `coadjoint`, `builtin`, a built-in spec, or a realisation file.
    #[arg(long, short = 'r', default_value = "coadjoint")]
    pub realization: String,
    #[arg(long, short = 'm')]
    pub degree: usize,
    /// Weight class in the canonical basis printed by `grade`, e.g. "(0,2)". Repeatable.
    #[arg(long, short = 'w', allow_hyphen_values = true, conflicts_with_all = ["all_weights", "no_grading"])]
    pub weight: Vec<WeightVector>,
    /// Search every weight class, including single-monomial ones.
    #[arg(long)]
    pub all_weights: bool,
    /// Treat all monomials as one class.
    #[arg(long)]
    pub no_grading: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub algebra: AlgebraArg,
    /// File holding one enveloping algebra element.
    #[arg(long)]
    pub expr: String,
    #[arg(long)]
    pub json: bool,
}

/// A failure to report on stderr with exit status 1.
#[derive(Debug)]
pub struct Failure(pub String);

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn in_file(path: &str, e: Error) -> Failure {
    match e {
        Error::Parse { line, message } => Failure(format!("{path}:{line}: {message}")),
        other => Failure(format!("{path}: {other}")),
    }
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{path}: {e}")))
}

/// Existing files are parsed; anything else is taken as a built-in spec.
pub fn load_algebra(spec: &str) -> Result<(LieAlgebra, Option<Family>), Failure> {
    if Path::new(spec).is_file() {
        let alg = parse_algebra(&read(spec)?).map_err(|e| in_file(spec, e))?;
        return Ok((alg, None));
    }
    let family = Family::parse(spec).map_err(|e| Failure(e.to_string()))?;
    Ok((family.algebra(), Some(family)))
}

pub fn load_realization(spec: &str, algebra: &LieAlgebra, family: Option<Family>) -> Result<Realization, Failure> {
    let realization = match spec {
        "coadjoint" => coadjoint_realization(algebra),
        "builtin" => match family {
            Some(f) => f.realization(algebra),
            None => return Err(Failure("`--realization builtin` needs a built-in algebra".into())),
        },
        path if Path::new(path).is_file() => parse_realization(&read(path)?, algebra).map_err(|e| in_file(path, e))?,
        other => {
            let f = Family::parse(other).map_err(|e| Failure(format!("{other}: {e}")))?;
            if f.algebra().basis_names() != algebra.basis_names() {
                return Err(Failure(format!(
                    "realisation `{other}` belongs to a different algebra than `{}`",
                    algebra.name()
                )));
            }
            f.realization(algebra)
        }
    };
    realization.ensure_matches(algebra).map_err(|e| Failure(e.to_string()))?;
    realization
        .check(algebra)
        .map_err(|f| Failure(format!("realisation `{}` is not a homomorphism: {f}", realization.name())))?;
    Ok(realization)
}

fn info(args: &InfoArgs) -> Result<String, Failure> {
    let (alg, _) = load_algebra(&args.algebra.algebra)?;
    let jacobi = alg.jacobi_check();
    let count = alg.beltrametti_blasi_count_seeded(args.trials, args.seed);
    if args.json {
        let v = serde_json::json!({
            "algebra": alg.name(),
            "dim": alg.dim(),
            "basis": alg.basis_names(),
            "jacobi": jacobi.as_ref().map(|_| "ok".to_string()).unwrap_or_else(|v| v.to_string()),
            "invariants": count,
        });
        return Ok(format!("{v:#}\n"));
    }
    let mut out = String::new();
    writeln!(out, "algebra     {}", alg.name()).unwrap();
    writeln!(out, "dimension   {}", alg.dim()).unwrap();
    writeln!(out, "basis       {}", alg.basis_names().join(" ")).unwrap();
    match &jacobi {
        Ok(()) => writeln!(out, "jacobi      ok").unwrap(),
        Err(v) => writeln!(out, "jacobi      FAILED: {v}").unwrap(),
    }
    writeln!(out, "invariants  {count} (dimension minus generic rank of the structure matrix)").unwrap();
    Ok(out)
}

fn grade(args: &GradeArgs) -> Result<String, Failure> {
    let (alg, _) = load_algebra(&args.algebra.algebra)?;
    if args.degree == 0 {
        return Err(Failure("degree must be at least 1".into()));
    }
    let g = compute_grading(&alg);
    let classes = g.weight_classes(args.degree);
    let by_degree = |monos: &[crate::enveloping::PbwMonomial]| -> Vec<usize> {
        (1..=args.degree).map(|d| monos.iter().filter(|m| m.degree() == d).count()).collect()
    };
    if args.json {
        let weights: Vec<_> = alg
            .basis_names()
            .iter()
            .zip(g.weights())
            .map(|(n, w)| serde_json::json!({"generator": n, "weight": w.0}))
            .collect();
        let table: Vec<_> = classes
            .iter()
            .map(|(w, monos)| serde_json::json!({"weight": w.0, "size": monos.len(), "by_degree": by_degree(monos)}))
            .collect();
        let v = serde_json::json!({
            "algebra": alg.name(),
            "rank": g.rank(),
            "basis_matrix": g.basis_matrix(),
            "weights": weights,
            "degree": args.degree,
            "classes": table,
        });
        return Ok(format!("{v:#}\n"));
    }
    let mut out = String::new();
    writeln!(out, "algebra {}  grading rank {}", alg.name(), g.rank()).unwrap();
    let width = alg.basis_names().iter().map(String::len).max().unwrap_or(0);
    for (name, w) in alg.basis_names().iter().zip(g.weights()) {
        writeln!(out, "  {name:<width$}  {w}").unwrap();
    }
    writeln!(out, "weight classes up to degree {} (sizes by degree 1..{}):", args.degree, args.degree).unwrap();
    for (w, monos) in &classes {
        let sizes: Vec<String> = by_degree(monos).iter().map(usize::to_string).collect();
        writeln!(out, "  {:<12} {:>5}   [{}]", w.to_string(), monos.len(), sizes.join(" ")).unwrap();
    }
    Ok(out)
}

fn search_text(report: &SearchReport, alg: &LieAlgebra) -> String {
    let names = alg.basis_names();
    let mut out = String::new();
    writeln!(
        out,
        "algebra {}  realisation {}  degree {}  mode {}",
        report.algebra, report.realization, report.degree, report.mode
    )
    .unwrap();
    if let Some(g) = &report.grading {
        writeln!(out, "grading rank {}", g.rank()).unwrap();
    }
    for c in &report.classes {
        let label = c.weight.as_ref().map_or_else(|| "all".to_string(), |w| w.to_string());
        writeln!(
            out,
            "class {label}: ansatz {}, equations {}, rank {}, candidates {}, genuine {}, independent {}",
            c.ansatz.len(),
            c.equations,
            c.rank,
            c.candidates.len(),
            c.genuine.len(),
            c.independent.len()
        )
        .unwrap();
        for k in &c.genuine {
            let mark = if c.independent.contains(k) { "*" } else { " " };
            writeln!(out, "  {mark} {}", k.format(names)).unwrap();
        }
    }
    let independent = report.independent();
    writeln!(out, "independent invariants: {}", independent.len()).unwrap();
    for k in independent {
        writeln!(out, "  {}", k.format(names)).unwrap();
    }
    out
}

fn search(args: &SearchArgs) -> Result<String, Failure> {
    let (alg, family) = load_algebra(&args.algebra.algebra)?;
    let realization = load_realization(&args.realization, &alg, family)?;
    let mut options = SearchOptions::new(args.degree);
    options.seed = args.seed;
    options.trials = args.trials;
    if args.no_grading {
        options.mode = Mode::Naive;
    }
    options.weights = if args.all_weights {
        WeightSelection::All
    } else if !args.weight.is_empty() {
        WeightSelection::Only(args.weight.clone())
    } else {
        WeightSelection::Default
    };
    let report = run_search(&alg, &realization, &options).map_err(|e| Failure(e.to_string()))?;
    if args.json {
        Ok(format!("{:#}\n", report.to_json(&alg)))
    } else {
        Ok(search_text(&report, &alg))
    }
}

fn verify(args: &VerifyArgs) -> Result<String, Failure> {
    let (alg, _) = load_algebra(&args.algebra.algebra)?;
    let uea = Uea::new(&alg);
    let k = uea.parse(&read(&args.expr)?).map_err(|e| in_file(&args.expr, e))?;
    let witness = uea.first_noncommuting(&k).map_err(|e| Failure(e.to_string()))?;
    let names = alg.basis_names();
    if args.json {
        let v = serde_json::json!({
            "algebra": alg.name(),
            "element": k.format(names),
            "casimir": witness.is_none(),
            "witness": witness.as_ref().map(|(i, c)| serde_json::json!({
                "generator": names[*i],
                "commutator": c.format(names),
            })),
        });
        return Ok(format!("{v:#}\n"));
    }
    Ok(match witness {
        None => "Casimir: yes\n".to_string(),
        Some((i, c)) => format!("Casimir: no\n[K, {}] = {}\n", names[i], c.format(names)),
    })
}

pub fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Info(a) => info(a),
        Command::Grade(a) => grade(a),
        Command::Search(a) => search(a),
        Command::Verify(a) => verify(a),
    }
}

/// Parses `std::env::args`, runs, prints, and returns the exit status:
/// 0 on success, 1 on input or validation failures, 2 on usage errors.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(f) => {
            eprintln!("error: {f}");
            1
        }
    }
}
