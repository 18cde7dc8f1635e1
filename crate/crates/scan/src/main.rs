use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use qplasma::{MerminD0, ModelKind};
use qplasma_scan::{
    figure, render_csv, run_curves, write_output, Parallelism, Part, ScanError, ScanSpec, Sweep,
};

/// Dielectric-function sweeps for a quantum collisional plasma.
#[derive(Debug, Parser)]
#[command(name = "qplasma", version)]
struct Cli {
    /// Comma-separated models: quantum, classical, mermin, lindhard, static, drude.
    #[arg(long, value_delimiter = ',')]
    model: Vec<ModelKind>,
    /// Plasma frequency x_p = ω_p/(k_T v_T).
    #[arg(long)]
    xp: Option<f64>,
    /// Collision rate y = ν/(k_T v_T).
    #[arg(long)]
    y: Option<f64>,
    /// Frequency x = ω/(k_T v_T).
    #[arg(long)]
    x: Option<f64>,
    /// Wave number q = k/k_T.
    #[arg(long)]
    q: Option<f64>,
    /// var=lo:hi:n[:log], var one of x, q, y.
    #[arg(long)]
    sweep: Option<Sweep>,
    /// Figure preset 1..14; --sweep and --model override its defaults.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=14))]
    figure: Option<u32>,
    /// CSV output path (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV.
    #[arg(long, requires = "out")]
    plot_script: bool,
    /// Worker threads: a count or "auto".
    #[arg(long, default_value = "1")]
    parallel: Parallelism,
    /// Use 2F(q/2) in place of 4F(q/2) for the static Mermin denominator.
    #[arg(long)]
    compat_mermin_paper_d0: bool,
}

fn plan(cli: &Cli) -> Result<(Vec<ScanSpec>, Part), ScanError> {
    let d0 = if cli.compat_mermin_paper_d0 {
        MerminD0::Compat
    } else {
        MerminD0::Dawson
    };
    let (mut specs, part) = match cli.figure {
        Some(id) => {
            if cli.xp.is_some() || cli.x.is_some() || cli.y.is_some() || cli.q.is_some() {
                return Err(ScanError::Invalid(
                    "--xp/--x/--y/--q cannot be combined with --figure".into(),
                ));
            }
            let fig = figure(id)?;
            let mut specs = fig.curves;
            for s in &mut specs {
                if let Some(sw) = cli.sweep {
                    if sw.var != s.sweep.var {
                        return Err(ScanError::Invalid(format!(
                            "figure {id} sweeps {}, not {}",
                            s.sweep.var, sw.var
                        )));
                    }
                    s.sweep = sw;
                }
                if !cli.model.is_empty() {
                    s.models = cli.model.clone();
                }
            }
            (specs, fig.part)
        }
        None => {
            let sweep = cli.sweep.ok_or_else(|| {
                ScanError::Invalid("either --figure or --sweep is required".into())
            })?;
            let models = if cli.model.is_empty() {
                vec![ModelKind::Quantum]
            } else {
                cli.model.clone()
            };
            let spec = ScanSpec {
                models,
                x_p: cli
                    .xp
                    .ok_or_else(|| ScanError::Invalid("missing --xp".into()))?,
                x: cli.x,
                y: cli.y,
                q: cli.q,
                sweep,
                label: None,
                mermin_d0: d0,
            };
            (vec![spec], Part::Both)
        }
    };
    for s in &mut specs {
        s.mermin_d0 = d0;
        s.validate()?;
    }
    Ok((specs, part))
}

fn run(cli: &Cli) -> Result<(), ScanError> {
    let (specs, part) = plan(cli)?;
    let table = run_curves(&specs, cli.parallel)?;
    match &cli.out {
        Some(path) => {
            write_output(&table, &specs, path, cli.plot_script.then_some(part))?;
        }
        None => {
            let csv = render_csv(&table, &specs)?;
            std::io::stdout()
                .lock()
                .write_all(csv.as_bytes())
                .map_err(|source| ScanError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qplasma: error: {e}");
            ExitCode::FAILURE
        }
    }
}
