use clap::{Parser, Subcommand, ValueEnum};
use holoconf::algebra::{GeneratorId, Realization};
use holoconf::harness::{emit_grid, run_suite, GridKind, Suite, SuiteConfig, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TOL};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "holoconf", version, about = "Conformal generator and chart identity checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity suites and print a report.
    Verify {
        /// bicomplex, charts, laplace, algebra, projective or all; repeatable.
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
        #[arg(long, env = "HOLOCONF_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print the generator coefficient table of one realization.
    Table {
        /// cartesian, polar, holographic, conformal or upsilon-line.
        #[arg(long)]
        realization: String,
    },
    /// Write a CSV grid for plotting.
    Grid {
        /// joukowski, hopf-fibers or conformal-flow.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        res: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn verify(suites: Vec<String>, seed: u64, samples: usize, tol: f64, format: Format) -> Result<bool, String> {
    let mut selected = Vec::new();
    for name in &suites {
        selected.extend(Suite::parse(name).map_err(|e| e.to_string())?);
    }
    if selected.is_empty() {
        selected = Suite::ALL.to_vec();
    }
    let cfg = SuiteConfig {
        seed,
        samples,
        tol,
        suites: selected,
    };
    cfg.validate().map_err(|e| e.to_string())?;
    let report = run_suite(&cfg);
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(report.passed())
}

fn table(name: &str) -> Result<(), String> {
    let r = Realization::from_name(name).ok_or_else(|| {
        let known: Vec<_> = Realization::ALL.iter().map(|r| r.name()).collect();
        format!("unknown realization {name:?}; expected one of {}", known.join(", "))
    })?;
    let vars = r.variables();
    println!("{r}");
    for g in GeneratorId::ALL {
        let [c0, c1] = r.formula(g);
        let mut terms = vec![format!("({c0}) d/d{}", vars[0])];
        if r.dimension() == 2 {
            terms.push(format!("({c1}) d/d{}", vars[1]));
        }
        println!("{:>4} = {}", g.name(), terms.join(" + "));
    }
    Ok(())
}

fn grid(kind: &str, res: usize, out: &PathBuf) -> Result<(), String> {
    let k = GridKind::from_name(kind).ok_or_else(|| format!("unknown grid kind {kind:?}"))?;
    let rows = emit_grid(k, res, out).map_err(|e| e.to_string())?;
    eprintln!("wrote {rows} rows to {}", out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            suites,
            seed,
            samples,
            tol,
            format,
        } => verify(suites, seed, samples, tol, format),
        Command::Table { realization } => table(&realization).map(|_| true),
        Command::Grid { kind, res, out } => grid(&kind, res, &out).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
