use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rsvortex::curves_io::{write_curves, CurveFormat};
use rsvortex::report::Tolerances;
use rsvortex::spec_file::FieldSpecFile;
use rsvortex::verify::{default_grid, sampled_c_grid, verify, VerifyOptions};
use rsvortex::{CliError, Result};
use rsvortex_core::extraction::extract_l_lines_with;
use rsvortex_core::scalars::rs_polarization_scalar;
use rsvortex_core::{
    boost_field, boost_point, extract_zero_curves, magnetic_c_grid, psi_grid, split_by_helicity, time_average_grid,
    BoostSpec, Complex64, ExtractOptions, FieldSuperposition, GridSpec, MonochromaticField, Vec3,
};

#[derive(Parser)]
#[command(name = "rsvortex", version, about = "Riemann-Silberstein vortex lines, C-lines and L-lines of plane-wave fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print F, E, B and psi = F.F at one spacetime point.
    Eval {
        spec: PathBuf,
        /// Position "x,y,z".
        #[arg(long, default_value = "0,0,0", value_parser = parse_vec3)]
        r: Vec3,
        #[arg(long = "time", short = 't', default_value_t = 0.0, allow_negative_numbers = true)]
        time: f64,
    },
    /// Extract singular curves of one diagnostic on a grid.
    Extract {
        spec: PathBuf,
        #[arg(long, default_value = "vortex")]
        diagnostic: Diagnostic,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long = "time", default_value_t = 0.0, allow_negative_numbers = true)]
        time: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: CurveFormat,
    },
    /// Write the positive- and negative-helicity parts to <out>_positive.json and <out>_negative.json.
    Split {
        spec: PathBuf,
        #[arg(long)]
        out: String,
    },
    /// Write the field as seen from a frame moving with velocity beta.
    Boost {
        spec: PathBuf,
        /// Velocity "bx,by,bz" with |beta| < 1.
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
        beta: Vec3,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every applicable consistency check and print a JSON report.
    Verify {
        spec: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        tol: TolArgs,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Diagnostic {
    Vortex,
    CElectric,
    CMagnetic,
    LLine,
    TimeAvg,
}

impl FromStr for Diagnostic {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "vortex" => Ok(Self::Vortex),
            "c-electric" => Ok(Self::CElectric),
            "c-magnetic" => Ok(Self::CMagnetic),
            "l-line" => Ok(Self::LLine),
            "time-avg" => Ok(Self::TimeAvg),
            other => Err(format!(
                "unknown diagnostic `{other}` (expected vortex, c-electric, c-magnetic, l-line or time-avg)"
            )),
        }
    }
}

#[derive(Args)]
struct GridArgs {
    /// Lower box corner "x,y,z" (default: minus one shortest wavelength).
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    grid_lo: Option<Vec3>,
    /// Upper box corner "x,y,z" (default: one shortest wavelength).
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    grid_hi: Option<Vec3>,
    /// Samples per axis, "n" or "nx,ny,nz".
    #[arg(long, value_parser = parse_counts)]
    grid_n: Option<[usize; 3]>,
}

impl GridArgs {
    fn spec(&self, field: &FieldSuperposition) -> Result<GridSpec> {
        let default = default_grid(field);
        let lo = self.grid_lo.unwrap_or(default.lo());
        let hi = self.grid_hi.unwrap_or(default.hi());
        let n = self.grid_n.unwrap_or(default.counts());
        GridSpec::new(lo, hi, n).map_err(CliError::from)
    }
}

#[derive(Args)]
struct TolArgs {
    #[arg(long)]
    tol_mode: Option<f64>,
    #[arg(long)]
    tol_plane_wave: Option<f64>,
    #[arg(long)]
    tol_fd_order: Option<f64>,
    #[arg(long)]
    tol_phase: Option<f64>,
    #[arg(long)]
    tol_lag: Option<f64>,
    #[arg(long)]
    tol_harmonics: Option<f64>,
    #[arg(long)]
    tol_time_average: Option<f64>,
    #[arg(long)]
    tol_boost: Option<f64>,
    #[arg(long)]
    tol_duality: Option<f64>,
    /// Coincidence bound in grid spacings.
    #[arg(long)]
    tol_coincidence: Option<f64>,
    /// Stationarity bound in grid spacings.
    #[arg(long)]
    tol_stationarity: Option<f64>,
    #[arg(long)]
    tol_hilbert: Option<f64>,
}

impl TolArgs {
    fn apply(&self, mut t: Tolerances) -> Tolerances {
        let pairs = [
            (self.tol_mode, &mut t.mode),
            (self.tol_plane_wave, &mut t.plane_wave),
            (self.tol_fd_order, &mut t.fd_order),
            (self.tol_phase, &mut t.phase),
            (self.tol_lag, &mut t.lag),
            (self.tol_harmonics, &mut t.harmonics),
            (self.tol_time_average, &mut t.time_average),
            (self.tol_boost, &mut t.boost),
            (self.tol_duality, &mut t.duality),
            (self.tol_coincidence, &mut t.coincidence),
            (self.tol_stationarity, &mut t.stationarity),
            (self.tol_hilbert, &mut t.hilbert),
        ];
        for (value, slot) in pairs {
            if let Some(v) = value {
                *slot = v;
            }
        }
        t
    }
}

fn parse_vec3(s: &str) -> std::result::Result<Vec3, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match parts[..] {
        [x, y, z] => Ok(Vec3::new(x, y, z)),
        _ => Err(format!("expected three comma-separated numbers, got `{s}`")),
    }
}

fn parse_counts(s: &str) -> std::result::Result<[usize; 3], String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match parts[..] {
        [n] => Ok([n; 3]),
        [x, y, z] => Ok([x, y, z]),
        _ => Err(format!("expected `n` or `nx,ny,nz`, got `{s}`")),
    }
}

fn fmt_c(c: Complex64) -> String {
    format!("{:.14e} {:+.14e}i", c.re, c.im)
}

fn eval(path: &Path, r: Vec3, t: f64) -> Result<()> {
    let field = FieldSpecFile::read(path)?.to_field()?;
    let f = field.eval_f(r, t);
    let (e, b) = field.eval_eb(r, t);
    for (axis, c) in ["x", "y", "z"].iter().zip(f.to_array()) {
        println!("F_{axis} = {}", fmt_c(c));
    }
    for (name, v) in [("E", e), ("B", b)] {
        for (axis, c) in ["x", "y", "z"].iter().zip(v.to_array()) {
            println!("{name}_{axis} = {c:.14e}");
        }
    }
    println!("psi = {}", fmt_c(rs_polarization_scalar(&field, r, t)));
    Ok(())
}

fn monochromatic(field: &FieldSuperposition, diagnostic: &str) -> Result<MonochromaticField> {
    MonochromaticField::from_field(field)
        .map_err(|e| CliError::Usage(format!("diagnostic {diagnostic} needs a monochromatic field: {e}")))
}

fn extract(path: &Path, diagnostic: Diagnostic, grid: &GridArgs, t: f64, out: &Path, format: CurveFormat) -> Result<()> {
    let field = FieldSpecFile::read(path)?.to_field()?;
    let spec = grid.spec(&field)?;
    let curves = match diagnostic {
        Diagnostic::Vortex => extract_zero_curves(&psi_grid(&field, &spec, t))?,
        Diagnostic::CElectric => {
            let mono = monochromatic(&field, "c-electric")?;
            extract_zero_curves(&sampled_c_grid(&field, mono.omega_abs(), &spec, t))?
        }
        Diagnostic::CMagnetic => extract_zero_curves(&magnetic_c_grid(&monochromatic(&field, "c-magnetic")?, &spec))?,
        Diagnostic::TimeAvg => extract_zero_curves(&time_average_grid(&monochromatic(&field, "time-avg")?, &spec))?,
        Diagnostic::LLine => {
            let l = extract_l_lines_with(&monochromatic(&field, "l-line")?, &spec, &ExtractOptions::default())?;
            eprintln!(
                "l-line: traced components {:?}, kept {} points, discarded {}",
                l.components, l.kept, l.discarded
            );
            l.curves
        }
    };
    write_curves(&curves, out, format)?;
    eprintln!("wrote {} curves ({} points) to {}", curves.len(), curves.point_count(), out.display());
    Ok(())
}

fn split(path: &Path, prefix: &str) -> Result<()> {
    let spec = FieldSpecFile::read(path)?;
    let pair = split_by_helicity(&spec.to_field()?);
    for (part, name) in [(&pair.positive, "positive"), (&pair.negative, "negative")] {
        let label = spec.label.as_ref().map(|l| format!("{l} ({name} helicity)"));
        let out = PathBuf::from(format!("{prefix}_{name}.json"));
        FieldSpecFile::from_field(part, label).write(&out)?;
        eprintln!("wrote {} modes to {}", part.len(), out.display());
    }
    Ok(())
}

fn boost(path: &Path, beta: Vec3, out: &Path) -> Result<()> {
    let spec = FieldSpecFile::read(path)?;
    let field = spec.to_field()?;
    let boost = BoostSpec::new(beta)?;
    let boosted = boost_field(&field, &boost);
    FieldSpecFile::from_field(&boosted, spec.label.clone()).write(out)?;
    // Spot check: psi agrees at corresponding spacetime points.
    let (r, t) = (Vec3::new(0.3, -0.2, 0.5), 0.7);
    let (rp, tp) = boost_point(r, t, &boost);
    let before = rs_polarization_scalar(&field, r, t);
    let after = rs_polarization_scalar(&boosted, rp, tp);
    println!("psi(r, t)   = {}", fmt_c(before));
    println!("psi'(r', t') = {}", fmt_c(after));
    println!("|difference| = {:.3e}", (before - after).norm());
    Ok(())
}

fn run_verify(path: &Path, grid: &GridArgs, tol: &TolArgs, out: Option<&Path>) -> Result<i32> {
    let spec = FieldSpecFile::read(path)?;
    let field = spec.to_field_unchecked()?;
    let mut opts = VerifyOptions::new(grid.spec(&field)?);
    opts.tolerances = tol.apply(Tolerances::default());
    let report = verify(&field, spec.label.clone(), &opts);
    let json = report.to_json();
    print!("{json}");
    if let Some(out) = out {
        std::fs::write(out, &json).map_err(|e| CliError::io(out, e))?;
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval { spec, r, time } => eval(spec, *r, *time).map(|_| 0),
        Command::Extract { spec, diagnostic, grid, time, out, format } => {
            extract(spec, *diagnostic, grid, *time, out, *format).map(|_| 0)
        }
        Command::Split { spec, out } => split(spec, out).map(|_| 0),
        Command::Boost { spec, beta, out } => boost(spec, *beta, out).map(|_| 0),
        Command::Verify { spec, grid, tol, out } => run_verify(spec, grid, tol, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            if let CliError::Field(rsvortex_core::Error::Degenerate(d)) = &err {
                let report = serde_json::json!({
                    "status": "degenerate",
                    "zero_fraction": d.zero_fraction,
                    "max_abs": d.max_abs,
                });
                eprintln!("{report}");
            }
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
