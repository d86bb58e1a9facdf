use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dropout_bo::harness::{
    emit_csv, emit_plot_data, emit_summary_csv, summarize, Algorithm, ExperimentConfig, PreparedExperiment,
};
use dropout_bo::objectives::OBJECTIVES;
use dropout_bo::Error;

#[derive(Parser)]
#[command(name = "dropout-bo", version, about = "Dropout Bayesian optimization benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write its CSVs.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output CSV; defaults to the config's `output` key, then `<name>.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run several configs and write joint plot data.
    Compare {
        #[arg(long, num_args = 1.., required = true)]
        configs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Print the objective and algorithm registries.
    List,
}

#[derive(Args, Clone, Copy)]
struct Overrides {
    /// Base seed; replication i uses seed + i.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    iters: Option<usize>,
}

impl Overrides {
    fn apply(self, cfg: &mut ExperimentConfig) {
        if let Some(s) = self.seed {
            cfg.base_seed = s;
        }
        if let Some(r) = self.reps {
            cfg.replications = r;
        }
        if let Some(i) = self.iters {
            cfg.iterations = i;
        }
    }
}

enum Failure {
    Config(Error),
    Runtime(Error),
}

impl Failure {
    fn report(self) -> ExitCode {
        match self {
            Failure::Config(e) => {
                eprintln!("config error: {e}");
                ExitCode::from(1)
            }
            Failure::Runtime(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        }
    }
}

fn prepare(path: &Path, overrides: Overrides) -> Result<PreparedExperiment, Failure> {
    let mut cfg = ExperimentConfig::load(path).map_err(Failure::Config)?;
    overrides.apply(&mut cfg);
    PreparedExperiment::new(cfg).map_err(Failure::Config)
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}.csv"))
}

fn run(config: &Path, out: Option<PathBuf>, overrides: Overrides) -> Result<(), Failure> {
    let exp = prepare(config, overrides)?;
    let target = out
        .or_else(|| exp.config.output.clone())
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", exp.config.name)));
    let records = exp.run().map_err(Failure::Runtime)?;
    let curve = summarize(&records).map_err(Failure::Runtime)?;
    let algo = exp.config.algorithm.name();
    emit_csv(&records, &exp.config.name, algo, &target).map_err(Failure::Runtime)?;
    emit_summary_csv(&curve, &with_suffix(&target, "summary")).map_err(Failure::Runtime)?;
    if let Some(best) = curve.mean.last() {
        println!(
            "{}: {algo}, {} replications, mean final best {best} ({})",
            exp.config.name,
            records.len(),
            exp.sense().as_str()
        );
    }
    println!("wrote {}", target.display());
    Ok(())
}

fn compare(configs: &[PathBuf], out: &Path, overrides: Overrides) -> Result<(), Failure> {
    // Validate everything before spending any evaluations.
    let exps = configs.iter().map(|p| prepare(p, overrides)).collect::<Result<Vec<_>, _>>()?;
    let mut names = HashSet::new();
    for e in &exps {
        if !names.insert(e.config.name.clone()) {
            return Err(Failure::Config(Error::Config(format!("duplicate experiment name `{}`", e.config.name))));
        }
    }
    let budget = |e: &PreparedExperiment| e.config.dropout_config(0).n_init + e.config.iterations;
    if let Some(first) = exps.first() {
        if let Some(e) = exps.iter().find(|e| budget(e) != budget(first) || e.config.iterations != first.config.iterations) {
            return Err(Failure::Config(Error::Config(format!(
                "`{}` uses {} evaluations ({} iterations) but `{}` uses {} ({})",
                e.config.name,
                budget(e),
                e.config.iterations,
                first.config.name,
                budget(first),
                first.config.iterations
            ))));
        }
    }
    std::fs::create_dir_all(out).map_err(|e| Failure::Runtime(e.into()))?;
    let mut curves = Vec::new();
    for e in &exps {
        let records = e.run().map_err(Failure::Runtime)?;
        let curve = summarize(&records).map_err(Failure::Runtime)?;
        let path = out.join(format!("{}.csv", e.config.name));
        emit_csv(&records, &e.config.name, e.config.algorithm.name(), &path).map_err(Failure::Runtime)?;
        emit_summary_csv(&curve, &with_suffix(&path, "summary")).map_err(Failure::Runtime)?;
        println!("{}: mean final best {}", e.config.name, curve.mean.last().copied().unwrap_or(f64::NAN));
        curves.push((e.config.name.clone(), curve));
    }
    let plot = out.join("plot_data.csv");
    emit_plot_data(&curves, &plot).map_err(Failure::Runtime)?;
    println!("wrote {}", plot.display());
    Ok(())
}

fn list() {
    println!("objectives:");
    for (name, desc) in OBJECTIVES {
        println!("  {name:<20} {desc}");
    }
    println!("algorithms:");
    for a in Algorithm::ALL {
        println!("  {:<20} {}", a.name(), a.description());
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Run { config, out, overrides } => run(&config, out, overrides),
        Command::Compare { configs, out, overrides } => compare(&configs, &out, overrides),
        Command::List => {
            list();
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}
