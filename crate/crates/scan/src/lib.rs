//! Parameter sweeps over the `qplasma` dielectric models, with figure
//! presets and CSV / gnuplot output.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qplasma::{Complex, Dielectric, MerminD0, ModelKind, PlasmaParams, QueryPoint};
use rayon::prelude::*;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Default grid size of the figure presets.
pub const PRESET_POINTS: usize = 400;

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error("invalid scan: {0}")]
    Invalid(String),
    #[error("figure id {0} out of range 1..=14")]
    FigureOutOfRange(u32),
    #[error("{model} failed at x_p={x_p}, y={y}, x={x}, q={q}: {source}")]
    Eval {
        model: ModelKind,
        x_p: f64,
        y: f64,
        x: f64,
        q: f64,
        source: qplasma::Error,
    },
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed table: {0}")]
    Parse(String),
}

pub type Result<T, E = ScanError> = std::result::Result<T, E>;

fn invalid(msg: impl Into<String>) -> ScanError {
    ScanError::Invalid(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepVar {
    X,
    Q,
    Y,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::X => "x",
            SweepVar::Q => "q",
            SweepVar::Y => "y",
        }
    }
}

impl fmt::Display for SweepVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepVar {
    type Err = ScanError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "x" => Ok(SweepVar::X),
            "q" => Ok(SweepVar::Q),
            "y" => Ok(SweepVar::Y),
            other => Err(invalid(format!(
                "sweep variable must be x, q or y, got '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

impl Scale {
    pub fn name(self) -> &'static str {
        match self {
            Scale::Linear => "linear",
            Scale::Log => "log",
        }
    }
}

/// `var` from `lo` to `hi` on `n` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub var: SweepVar,
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub scale: Scale,
}

impl Sweep {
    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(invalid(format!(
                "sweep range needs lo < hi, got {}:{}",
                self.lo, self.hi
            )));
        }
        if self.n < 2 {
            return Err(invalid(format!("sweep needs n >= 2, got {}", self.n)));
        }
        if self.scale == Scale::Log && self.lo <= 0.0 {
            return Err(invalid("log sweep needs lo > 0"));
        }
        Ok(())
    }

    /// Grid values; both endpoints are exact.
    pub fn grid(&self) -> Vec<f64> {
        let last = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                if i == 0 {
                    return self.lo;
                }
                if i == self.n - 1 {
                    return self.hi;
                }
                let t = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.lo + (self.hi - self.lo) * t,
                    Scale::Log => (self.lo.ln() + (self.hi.ln() - self.lo.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

impl FromStr for Sweep {
    type Err = ScanError;

    /// `var=lo:hi:n[:log]`
    fn from_str(s: &str) -> Result<Self> {
        let bad = || invalid(format!("sweep must look like var=lo:hi:n[:log], got '{s}'"));
        let (var, rest) = s.split_once('=').ok_or_else(bad)?;
        let parts: Vec<&str> = rest.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(bad());
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        let scale = match parts.get(3).map(|t| t.trim()) {
            None | Some("lin") | Some("linear") => Scale::Linear,
            Some("log") => Scale::Log,
            Some(_) => return Err(bad()),
        };
        let sweep = Sweep {
            var: var.parse()?,
            lo: num(parts[0])?,
            hi: num(parts[1])?,
            n: parts[2].trim().parse().map_err(|_| bad())?,
            scale,
        };
        sweep.validate()?;
        Ok(sweep)
    }
}

/// One curve family: models evaluated along a sweep with the other
/// variables held fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub models: Vec<ModelKind>,
    pub x_p: f64,
    /// `None` exactly for the swept variable.
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub q: Option<f64>,
    pub sweep: Sweep,
    /// Curve label, appended to column names when curves are overlaid.
    pub label: Option<String>,
    pub mermin_d0: MerminD0,
}

impl ScanSpec {
    fn slot(&self, var: SweepVar) -> Option<f64> {
        match var {
            SweepVar::X => self.x,
            SweepVar::Q => self.q,
            SweepVar::Y => self.y,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.models.is_empty() {
            return Err(invalid("no model given"));
        }
        if !(self.x_p.is_finite() && self.x_p >= 0.0) {
            return Err(invalid(format!(
                "x_p must be finite and >= 0, got {}",
                self.x_p
            )));
        }
        self.sweep.validate()?;
        for var in [SweepVar::X, SweepVar::Q, SweepVar::Y] {
            match (var == self.sweep.var, self.slot(var)) {
                (true, Some(_)) => {
                    return Err(invalid(format!("{var} is swept and cannot also be fixed")))
                }
                (false, None) => return Err(invalid(format!("missing fixed value for {var}"))),
                (false, Some(v)) if !v.is_finite() => {
                    return Err(invalid(format!("{var} must be finite")))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Fixed parameters as `(name, value)`, x_p first.
    pub fn fixed(&self) -> Vec<(&'static str, f64)> {
        let mut out = vec![("x_p", self.x_p)];
        for var in [SweepVar::Y, SweepVar::X, SweepVar::Q] {
            if let Some(v) = self.slot(var) {
                out.push((var.name(), v));
            }
        }
        out
    }

    fn at(&self, s: f64) -> (f64, f64, f64) {
        let pick = |var| {
            if self.sweep.var == var {
                s
            } else {
                self.slot(var).unwrap_or(f64::NAN)
            }
        };
        (pick(SweepVar::X), pick(SweepVar::Y), pick(SweepVar::Q))
    }

    fn columns(&self) -> Vec<String> {
        let suffix = self
            .label
            .as_ref()
            .map(|l| format!("[{l}]"))
            .unwrap_or_default();
        self.models
            .iter()
            .flat_map(|m| [format!("re_{m}{suffix}"), format!("im_{m}{suffix}")])
            .collect()
    }
}

/// Which part of ε a plot shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Part {
    Re,
    Im,
    #[default]
    Both,
}

/// Numeric table: first column is the sweep variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    #[default]
    Sequential,
    Threads(usize),
    Auto,
}

impl FromStr for Parallelism {
    type Err = ScanError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "auto" => Ok(Parallelism::Auto),
            t => match t.parse::<usize>() {
                Ok(0) | Err(_) => Err(invalid(format!(
                    "--parallel takes a positive count or 'auto', got '{t}'"
                ))),
                Ok(1) => Ok(Parallelism::Sequential),
                Ok(n) => Ok(Parallelism::Threads(n)),
            },
        }
    }
}

fn eval_row(spec: &ScanSpec, d: &Dielectric<f64>, s: f64) -> Result<Vec<f64>> {
    let (x, y, q) = spec.at(s);
    let mut row = Vec::with_capacity(1 + 2 * spec.models.len());
    row.push(s);
    for &model in &spec.models {
        let err = |source| ScanError::Eval {
            model,
            x_p: spec.x_p,
            y,
            x,
            q,
            source,
        };
        let params = PlasmaParams::new(spec.x_p, y).map_err(err)?;
        let e: Complex<f64> = d
            .epsilon(model, &params, &QueryPoint::new(x, q))
            .map_err(err)?;
        row.push(e.re);
        row.push(e.im);
    }
    Ok(row)
}

/// Evaluates every model on the sweep grid. Rows come back in grid order
/// whatever the parallelism.
pub fn run_scan(spec: &ScanSpec, parallel: Parallelism) -> Result<Table> {
    spec.validate()?;
    let d = Dielectric {
        mermin_d0: spec.mermin_d0,
        ..Dielectric::default()
    };
    let grid = spec.sweep.grid();
    let rows: Result<Vec<Vec<f64>>> = match parallel {
        Parallelism::Sequential => grid.iter().map(|&s| eval_row(spec, &d, s)).collect(),
        Parallelism::Auto => grid.par_iter().map(|&s| eval_row(spec, &d, s)).collect(),
        Parallelism::Threads(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| invalid(format!("thread pool: {e}")))?;
            pool.install(|| grid.par_iter().map(|&s| eval_row(spec, &d, s)).collect())
        }
    };
    let mut columns = vec![spec.sweep.var.name().to_string()];
    columns.extend(spec.columns());
    Ok(Table {
        columns,
        rows: rows?,
    })
}

/// Runs overlaid curves sharing one sweep and joins them column-wise.
pub fn run_curves(specs: &[ScanSpec], parallel: Parallelism) -> Result<Table> {
    let first = specs.first().ok_or_else(|| invalid("no curves"))?;
    if specs.iter().any(|s| s.sweep != first.sweep) {
        return Err(invalid("overlaid curves must share the sweep"));
    }
    let mut table = run_scan(first, parallel)?;
    for spec in &specs[1..] {
        let t = run_scan(spec, parallel)?;
        table.columns.extend(t.columns.into_iter().skip(1));
        for (row, extra) in table.rows.iter_mut().zip(t.rows) {
            row.extend(extra.into_iter().skip(1));
        }
    }
    Ok(table)
}

/// A figure preset: curves plus the part of ε it shows.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub id: u32,
    pub part: Part,
    pub curves: Vec<ScanSpec>,
}

fn preset(
    models: &[ModelKind],
    x_p: f64,
    x: Option<f64>,
    y: Option<f64>,
    q: Option<f64>,
    sweep: Sweep,
) -> ScanSpec {
    ScanSpec {
        models: models.to_vec(),
        x_p,
        x,
        y,
        q,
        sweep,
        label: None,
        mermin_d0: MerminD0::default(),
    }
}

/// Scans behind figure `id`. Odd ids show Re ε, even ids Im ε.
pub fn figure_preset(id: u32) -> Result<Vec<ScanSpec>> {
    use ModelKind::{Classical, Quantum};
    let lin = |var, lo, hi| Sweep {
        var,
        lo,
        hi,
        n: PRESET_POINTS,
        scale: Scale::Linear,
    };
    let x_sweep = lin(SweepVar::X, 0.01, 3.0);
    let q_sweep = lin(SweepVar::Q, 0.02, 2.5);
    let both = [Quantum, Classical];
    let specs = match id {
        1 | 2 => [1.0, 0.7, 1.3]
            .iter()
            .map(|&x| ScanSpec {
                label: Some(format!("x={x}")),
                ..preset(&[Quantum], 1.0, Some(x), Some(0.1), None, q_sweep)
            })
            .collect(),
        3 | 4 => [0.5, 0.6, 0.7]
            .iter()
            .map(|&q| ScanSpec {
                label: Some(format!("q={q}")),
                ..preset(&[Quantum], 1.0, None, Some(0.1), Some(q), x_sweep)
            })
            .collect(),
        5 | 6 => vec![preset(
            &both,
            10.0,
            None,
            Some(0.01),
            Some(1.0),
            lin(SweepVar::X, 0.01, 15.0),
        )],
        7 | 8 => vec![preset(&both, 1.0, None, Some(0.01), Some(1.0), x_sweep)],
        9 | 10 => vec![preset(&both, 1.0, None, Some(0.01), Some(0.5), x_sweep)],
        11 | 12 => vec![preset(
            &both,
            1.0,
            Some(1.0),
            None,
            Some(0.5),
            Sweep {
                scale: Scale::Log,
                ..lin(SweepVar::Y, 1e-5, 1e-1)
            },
        )],
        13 | 14 => vec![preset(&both, 1.0, Some(1.0), Some(0.1), None, q_sweep)],
        _ => return Err(ScanError::FigureOutOfRange(id)),
    };
    Ok(specs)
}

pub fn figure(id: u32) -> Result<Figure> {
    Ok(Figure {
        id,
        part: if id % 2 == 1 { Part::Re } else { Part::Im },
        curves: figure_preset(id)?,
    })
}

fn models_list(models: &[ModelKind]) -> String {
    models
        .iter()
        .map(|m| m.name())
        .collect::<Vec<_>>()
        .join(",")
}

/// CSV text: `#` comment header, a column-name row, then one row per grid
/// point with 17 significant digits.
pub fn render_csv(table: &Table, specs: &[ScanSpec]) -> Result<String> {
    if table.rows.is_empty() {
        return Err(invalid("empty table"));
    }
    let mut out = String::new();
    let _ = writeln!(out, "# qplasma-scan {VERSION}");
    if let Some(first) = specs.first() {
        let sw = &first.sweep;
        let _ = writeln!(
            out,
            "# sweep: {}={}:{}:{} {}",
            sw.var,
            sw.lo,
            sw.hi,
            sw.n,
            sw.scale.name()
        );
    }
    for spec in specs {
        let fixed: Vec<String> = spec
            .fixed()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let label = spec
            .label
            .as_ref()
            .map(|l| format!(" [{l}]"))
            .unwrap_or_default();
        let _ = writeln!(out, "# model: {}{label}", models_list(&spec.models));
        let _ = writeln!(out, "# fixed: {}", fixed.join(" "));
        if spec.models.contains(&ModelKind::Mermin) && spec.mermin_d0 == MerminD0::Compat {
            let _ = writeln!(out, "# mermin static denominator: compat 2F(q/2)");
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| invalid(format!("csv: {e}"));
    w.write_record(&table.columns).map_err(csv_err)?;
    for row in &table.rows {
        if row.len() != table.columns.len() {
            return Err(invalid("row length does not match the header"));
        }
        w.write_record(row.iter().map(|v| format!("{v:.16e}")))
            .map_err(csv_err)?;
    }
    let body = w.into_inner().map_err(|e| invalid(format!("csv: {e}")))?;
    out.push_str(&String::from_utf8(body).expect("csv output is ASCII"));
    Ok(out)
}

/// Reads back a table written by [`render_csv`].
pub fn parse_csv(text: &str) -> Result<Table> {
    let parse_err = |e: csv::Error| ScanError::Parse(e.to_string());
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let columns: Vec<String> = r
        .headers()
        .map_err(parse_err)?
        .iter()
        .map(str::to_string)
        .collect();
    if columns.iter().all(|c| c.is_empty()) {
        return Err(ScanError::Parse("no header row".into()));
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let row = rec
            .map_err(parse_err)?
            .iter()
            .map(|c| c.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| ScanError::Parse(format!("row {}: {e}", i + 1)))?;
        rows.push(row);
    }
    Ok(Table { columns, rows })
}

fn gp_quote(s: &str) -> String {
    format!("'{}'", s.replace('\'', "''"))
}

/// Gnuplot script plotting `csv_name` (a path relative to the script),
/// one plot per requested part.
pub fn render_plot_script(table: &Table, specs: &[ScanSpec], csv_name: &str, part: Part) -> String {
    let mut out = String::new();
    let stem = csv_name.strip_suffix(".csv").unwrap_or(csv_name);
    let _ = writeln!(out, "# qplasma-scan {VERSION}");
    out.push_str("set datafile separator ','\n");
    let xlabel = table.columns.first().map(String::as_str).unwrap_or("x");
    let _ = writeln!(out, "set xlabel {}", gp_quote(xlabel));
    if specs.first().map(|s| s.sweep.scale) == Some(Scale::Log) {
        out.push_str("set logscale x\n");
    }
    out.push_str("set terminal pngcairo size 900,600\n");
    let parts: &[(&str, &str)] = match part {
        Part::Re => &[("re", "Re ε")],
        Part::Im => &[("im", "Im ε")],
        Part::Both => &[("re", "Re ε"), ("im", "Im ε")],
    };
    for (prefix, ylabel) in parts {
        let _ = writeln!(
            out,
            "set output {}",
            gp_quote(&format!("{stem}_{prefix}.png"))
        );
        let _ = writeln!(out, "set ylabel {}", gp_quote(ylabel));
        let series: Vec<String> = table
            .columns
            .iter()
            .enumerate()
            .filter(|(_, c)| c.starts_with(&format!("{prefix}_")))
            .map(|(i, _)| {
                format!(
                    "{} using 1:{} with lines title columnhead",
                    gp_quote(csv_name),
                    i + 1
                )
            })
            .collect();
        let _ = writeln!(out, "plot {}", series.join(", \\\n     "));
    }
    out
}

/// Writes `path` as CSV and, when `plot` is set, a gnuplot script next to
/// it with the `.gp` extension. Returns the paths written.
pub fn write_output(
    table: &Table,
    specs: &[ScanSpec],
    path: &Path,
    plot: Option<Part>,
) -> Result<Vec<PathBuf>> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| ScanError::Io { path, source }
    };
    let csv = render_csv(table, specs)?;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io(dir))?;
    }
    fs::write(path, csv).map_err(io(path))?;
    let mut written = vec![path.to_path_buf()];
    if let Some(part) = plot {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .ok_or_else(|| invalid("output path has no file name"))?;
        let script = path.with_extension("gp");
        fs::write(&script, render_plot_script(table, specs, &name, part)).map_err(io(&script))?;
        written.push(script);
    }
    Ok(written)
}
