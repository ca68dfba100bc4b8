use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use robust_langevin::experiment::{
    run_experiment, write_csv, ExperimentConfig, ExperimentKind, MethodSelection, Preset, Sweep,
};
use robust_langevin::samplers::Setting;
use robust_langevin::Error;

/// Runs ULA and Rob-ULA on contaminated data and writes one CSV row per
/// (cell, run, method). Flags override values read from --config.
#[derive(Parser, Debug)]
#[command(name = "robust-langevin", version)]
struct Cli {
    /// mean-est, regression or logistic
    experiment: ExperimentKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// ula, robula or both
    #[arg(long)]
    method: Option<MethodSelection>,
    /// One parameter and its values, e.g. eps=0,0.1,0.2
    #[arg(long)]
    sweep: Option<Sweep>,
    #[arg(long)]
    burn_in: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    /// auto (1/L) or a number
    #[arg(long)]
    step_size: Option<Setting>,
    /// auto (1/L) or a number
    #[arg(long)]
    init_scale: Option<Setting>,
    /// Hand the estimator ε + e_n instead of ε
    #[arg(long)]
    widen_eps: bool,
    #[arg(long)]
    delta: Option<f64>,
    /// Contamination level given to the robust estimator, if not the generator's
    #[arg(long)]
    estimator_eps: Option<f64>,
    /// desk (n=500, d=20) or paper (n=1000, d=200, full scale)
    #[arg(long)]
    preset: Option<Preset>,
    /// Results CSV; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON config file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Classification CSV for the logistic experiment
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    label_col: Option<String>,
    /// Directory for per-chain sample dumps
    #[arg(long)]
    dump_samples: Option<PathBuf>,
    /// File for per-test-point log-likelihoods
    #[arg(long)]
    per_point: Option<PathBuf>,
    #[arg(long)]
    test_size: Option<usize>,
    /// Average the test likelihood over samples instead of plugging in the mean
    #[arg(long)]
    sample_avg_loglik: bool,
}

impl Cli {
    fn into_config(self) -> Result<ExperimentConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_json_file(path)?,
            None => ExperimentConfig::default(),
        };
        cfg.experiment = self.experiment;
        if let Some(p) = self.preset {
            p.apply(&mut cfg);
        }
        macro_rules! set {
            ($($flag:ident => $field:ident),* $(,)?) => {
                $(if let Some(v) = self.$flag { cfg.$field = v; })*
            };
        }
        set!(n => n, d => d, eps => eps, runs => runs, seed => base_seed, method => method,
             step_size => step_size, init_scale => init_scale, delta => delta,
             test_size => test_size);
        macro_rules! set_opt {
            ($($flag:ident => $field:ident),* $(,)?) => {
                $(if let Some(v) = self.$flag { cfg.$field = Some(v); })*
            };
        }
        set_opt!(sweep => sweep, burn_in => burn_in, samples => n_samples,
                 estimator_eps => estimator_eps, out => out, data => data,
                 label_col => label_col, dump_samples => dump_samples,
                 per_point => per_point);
        cfg.widen_eps |= self.widen_eps;
        cfg.sample_avg_loglik |= self.sample_avg_loglik;
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let cfg = match cli.into_config() {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let output = match run_experiment(&cfg) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if cfg.out.is_none() {
        if let Err(e) = write_csv(&output.records, &mut io::stdout().lock()) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let diverged = output.records.iter().filter(|r| r.diverged).count();
    if diverged > 0 {
        eprintln!("{diverged} chain(s) diverged");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
