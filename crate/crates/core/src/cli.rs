//! Command-line front end.
//!
//! Every subcommand takes `--output` (`-` for standard output) and
//! `--config <file.json>`, a flat JSON object whose keys mirror the long
//! flags. Flags given on the command line override the file. Physical
//! quantities in config files must carry a unit suffix (`"1.24um"`); on the
//! command line a bare number is read in the unit named in `--help`.
//!
//! Exit codes: 0 success, 1 usage error, 2 physics-domain error,
//! 3 verification failure.

use crate::acceptance;
use crate::device::{
    kerr_index_shift, reflectivity_spectrum, vacuum_rabi_frequency, Ambient, GratingSpec, KerrMedium, Material,
    NodeCoupling, UnitSystem, WavelengthRange,
};
use crate::error::{Error, Result};
use crate::gates::{builtin_protocols, computational_encode, run_protocol, ProtocolScript, RegisterState};
use crate::io;
use crate::modes::{self, Normalization, Truncation, DEFAULT_S_MAX_CAP, DEFAULT_TRUNCATION_EPS};
use crate::propagation::{
    self, field_snapshot_at_transits, fidelity_sweep, DispersionParams, FidelityMethod, ReproductionDefaults,
};
use crate::units::{parse_quantity, parse_quantity_or, Dimension, PS_PER_NM_KM};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use std::ffi::OsString;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "optoswitch", version, about = "Optically switched channels between cavity-coupled quantum nodes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mode populations after the channel opens (one CSV block per s0).
    #[command(args_override_self = true)]
    Spectrum(SpectrumArgs),
    /// Round-trip fidelity versus dispersion.
    #[command(args_override_self = true)]
    Fidelity(FidelityArgs),
    /// Field snapshots in the common cavity.
    #[command(args_override_self = true)]
    Propagate(PropagateArgs),
    /// Bragg mirror reflectivity spectrum.
    #[command(args_override_self = true)]
    Reflectivity(ReflectivityArgs),
    /// Vacuum Rabi frequency of a node.
    #[command(args_override_self = true)]
    Rabi(RabiArgs),
    /// Kerr index shift of a material preset.
    #[command(args_override_self = true)]
    Kerr(KerrArgs),
    /// Run a gate protocol on a register state (JSON).
    #[command(args_override_self = true)]
    Gate(GateArgs),
    /// Run the acceptance suite.
    #[command(args_override_self = true)]
    Verify(VerifyArgs),
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Spectrum(a) => &a.common,
            Command::Fidelity(a) => &a.common,
            Command::Propagate(a) => &a.common,
            Command::Reflectivity(a) => &a.common,
            Command::Rabi(a) => &a.common,
            Command::Kerr(a) => &a.common,
            Command::Gate(a) => &a.common,
            Command::Verify(a) => &a.common,
        }
    }
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Output path, `-` for standard output.
    #[arg(long, default_value = "-")]
    pub output: String,
    /// Flat JSON config mirroring the long flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GeometryArgs {
    /// Resonant wavelength of the isolated cavity (bare number: m).
    #[arg(long, default_value = "1.24um", value_parser = length)]
    pub wavelength: f64,
    /// Refractive index of the cavity medium.
    #[arg(long, default_value_t = propagation::DEFAULT_INDEX)]
    pub n: f64,
    /// Length ratio l/l0 of common to isolated cavity.
    #[arg(long, default_value_t = propagation::DEFAULT_RATIO)]
    pub ratio: f64,
    /// Parseval tolerance for automatic truncation.
    #[arg(long, default_value_t = DEFAULT_TRUNCATION_EPS)]
    pub eps: f64,
    /// Fixed number of modes instead of automatic truncation.
    #[arg(long)]
    pub s_max: Option<usize>,
}

impl GeometryArgs {
    fn defaults(&self) -> ReproductionDefaults {
        let truncation = match self.s_max {
            Some(n) => Truncation::Fixed(n),
            None => Truncation::Auto {
                eps: self.eps,
                cap: DEFAULT_S_MAX_CAP,
            },
        };
        ReproductionDefaults {
            wavelength: self.wavelength,
            n: self.n,
            ratio: self.ratio,
            truncation,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum NormArg {
    Raw,
    Max1,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// Isolated-cavity mode numbers: `3`, `1,10` or `1..10`.
    #[arg(long, default_value = "1", value_parser = s0_list)]
    pub s0: S0List,
    #[arg(long, value_enum, default_value = "max1")]
    pub norm: NormArg,
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Spectral,
    Grid,
}

#[derive(Args, Debug)]
pub struct FidelityArgs {
    #[arg(long, default_value = "1,10", value_parser = s0_list)]
    pub s0: S0List,
    /// Dispersion values: `10`, `0,2,12.5` or `start:stop:step` (bare number: ps/(nm·km)).
    #[arg(long = "D", default_value = "0:30:0.5", value_parser = dispersion_list)]
    pub d: NumberList,
    #[arg(long, value_enum, default_value = "spectral")]
    pub method: MethodArg,
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct PropagateArgs {
    #[arg(long, default_value_t = 10)]
    pub s0: u32,
    /// Dispersion (bare number: ps/(nm·km)).
    #[arg(long = "D", default_value = "10", value_parser = dispersion)]
    pub d: f64,
    /// Snapshot times in units of the transit time l·n/c (2 is one round trip).
    #[arg(long, default_value = "0,0.5,1,1.5,2", value_parser = number_list, conflicts_with = "time")]
    pub transits: NumberList,
    /// Snapshot time as a physical time instead (bare number: s).
    #[arg(long, value_parser = time)]
    pub time: Option<f64>,
    /// Grid points over [0, l]; defaults to the minimum 2·s_max + 1.
    #[arg(long)]
    pub nz: Option<usize>,
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct ReflectivityArgs {
    /// Host material preset; sets the mean index.
    #[arg(long, default_value = "linbo3", value_parser = material)]
    pub material: Material,
    /// Mean index, overriding the preset.
    #[arg(long)]
    pub n: Option<f64>,
    /// Index contrast δn; layers are n ± δn/2.
    #[arg(long, default_value_t = 1e-3)]
    pub contrast: f64,
    #[arg(long, default_value_t = 3000)]
    pub periods: usize,
    /// Bragg wavelength of the quarter-wave stack (bare number: m).
    #[arg(long, default_value = "1.24um", value_parser = length)]
    pub design_wavelength: f64,
    /// Scan start (default: design wavelength - 2 nm).
    #[arg(long, value_parser = length)]
    pub start: Option<f64>,
    /// Scan stop (default: design wavelength + 2 nm).
    #[arg(long, value_parser = length)]
    pub stop: Option<f64>,
    #[arg(long, default_value = "0.005nm", value_parser = length)]
    pub step: f64,
    /// Pump intensity lowering the high-index layers by the Kerr shift (bare number: W/cm²).
    #[arg(long, value_parser = intensity)]
    pub intensity: Option<f64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum UnitsArg {
    Cgs,
    Si,
}

#[derive(Args, Debug)]
pub struct RabiArgs {
    /// Transition dipole moment (bare number: C·m).
    #[arg(long, default_value = "1e-28C_m", value_parser = dipole)]
    pub dipole: f64,
    #[arg(long, default_value = "1.24um", value_parser = length)]
    pub wavelength: f64,
    #[arg(long, default_value_t = propagation::DEFAULT_INDEX)]
    pub n: f64,
    /// Mode volume (bare number: m³); defaults to (λ/n)³.
    #[arg(long, value_parser = volume)]
    pub volume: Option<f64>,
    #[arg(long, value_enum, default_value = "cgs")]
    pub units: UnitsArg,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct KerrArgs {
    #[arg(long, default_value = "linbo3", value_parser = material)]
    pub material: Material,
    /// Optical intensity (bare number: W/cm²).
    #[arg(long, value_parser = intensity)]
    pub intensity: Option<f64>,
    /// Kerr coefficient overriding the preset (bare number: cm²/W).
    #[arg(long, value_parser = kerr_coefficient)]
    pub n2: Option<f64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct GateArgs {
    /// `swap`, `cnot` or `file:<path>` (JSON array of step names).
    #[arg(long)]
    pub protocol: Option<String>,
    /// Two logical bits `q1q2` (e.g. `10`) or a state JSON file.
    #[arg(long)]
    pub input: Option<String>,
    /// Emit the state after every step, starting with the input.
    #[arg(long)]
    pub trace: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only these criteria, e.g. `6,7,9`.
    #[arg(long, value_parser = id_list)]
    pub only: Option<IdList>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Clone, Debug, PartialEq)]
pub struct S0List(pub Vec<u32>);

#[derive(Clone, Debug, PartialEq)]
pub struct NumberList(pub Vec<f64>);

#[derive(Clone, Debug, PartialEq)]
pub struct IdList(pub Vec<u32>);

fn quantity(s: &str, dim: Dimension, unit: &str) -> std::result::Result<f64, String> {
    parse_quantity_or(s, dim, unit).map_err(|e| e.to_string())
}

fn length(s: &str) -> std::result::Result<f64, String> {
    quantity(s, Dimension::Length, "m")
}

fn time(s: &str) -> std::result::Result<f64, String> {
    quantity(s, Dimension::Time, "s")
}

fn volume(s: &str) -> std::result::Result<f64, String> {
    quantity(s, Dimension::Volume, "m3")
}

fn intensity(s: &str) -> std::result::Result<f64, String> {
    quantity(s, Dimension::Intensity, "W_cm2")
}

fn kerr_coefficient(s: &str) -> std::result::Result<f64, String> {
    quantity(s, Dimension::KerrCoefficient, "cm2_W")
}

fn dipole(s: &str) -> std::result::Result<f64, String> {
    quantity(s, Dimension::DipoleMoment, "C_m")
}

fn material(s: &str) -> std::result::Result<Material, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// D in ps/(nm·km). The canonical suffix is stripped rather than converted
/// so that values like `0.5` survive exactly.
fn dispersion(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let bare = s.strip_suffix("ps_nm_km").unwrap_or(s);
    match bare.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Ok(quantity(s, Dimension::Dispersion, "ps_nm_km")? / PS_PER_NM_KM),
    }
}

/// Comma-separated items, each either a value or `start:stop:step` (inclusive).
fn expand_list(s: &str, item: impl Fn(&str) -> std::result::Result<f64, String>) -> std::result::Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let fields: Vec<&str> = part.split(':').collect();
        match fields.as_slice() {
            [v] => out.push(item(v)?),
            [a, b, step] => {
                let (a, b, step) = (item(a)?, item(b)?, item(step)?);
                if !(step > 0.0) || b < a {
                    return Err(format!("range {part:?} needs start <= stop and step > 0"));
                }
                let count = ((b - a) / step + 1e-9).floor() as usize;
                out.extend((0..=count).map(|i| a + i as f64 * step));
            }
            _ => return Err(format!("cannot read {part:?}; expected a value or start:stop:step")),
        }
    }
    Ok(out)
}

fn dispersion_list(s: &str) -> std::result::Result<NumberList, String> {
    expand_list(s, dispersion).map(NumberList)
}

fn number_list(s: &str) -> std::result::Result<NumberList, String> {
    expand_list(s, |v| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"))).map(NumberList)
}

fn integer_list(s: &str) -> std::result::Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let int = |v: &str| v.trim().parse::<u32>().map_err(|e| format!("{v:?}: {e}"));
        match part.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (int(a)?, int(b)?);
                if b < a {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(a..=b);
            }
            None => out.push(int(part)?),
        }
    }
    Ok(out)
}

fn s0_list(s: &str) -> std::result::Result<S0List, String> {
    let v = integer_list(s)?;
    if v.contains(&0) {
        return Err("mode numbers start at 1".into());
    }
    Ok(S0List(v))
}

fn id_list(s: &str) -> std::result::Result<IdList, String> {
    integer_list(s).map(IdList)
}

/// Config keys whose values are physical quantities and so must carry units.
const PHYSICAL_KEYS: [(&str, Dimension); 11] = [
    ("wavelength", Dimension::Length),
    ("design-wavelength", Dimension::Length),
    ("start", Dimension::Length),
    ("stop", Dimension::Length),
    ("step", Dimension::Length),
    ("D", Dimension::Dispersion),
    ("time", Dimension::Time),
    ("volume", Dimension::Volume),
    ("intensity", Dimension::Intensity),
    ("n2", Dimension::KerrCoefficient),
    ("dipole", Dimension::DipoleMoment),
];

/// Turns a flat JSON config into long-flag arguments.
pub fn config_to_args(text: &str) -> Result<Vec<String>> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Usage("config must be a flat JSON object".into()))?;
    let mut args = Vec::new();
    for (key, v) in obj {
        let flag = key.replace('_', "-");
        if flag == "config" {
            return Err(Error::Usage("config files cannot include other config files".into()));
        }
        let text = match v {
            Value::Bool(true) => {
                args.push(format!("--{flag}"));
                continue;
            }
            Value::Bool(false) | Value::Null => continue,
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            Value::Array(items) => items
                .iter()
                .map(|i| match i {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => Ok(n.to_string()),
                    _ => Err(Error::Usage(format!("config key {key:?}: list items must be strings or numbers"))),
                })
                .collect::<Result<Vec<_>>>()?
                .join(","),
            Value::Object(_) => return Err(Error::Usage(format!("config key {key:?}: nested objects are not allowed"))),
        };
        if let Some((_, dim)) = PHYSICAL_KEYS.iter().find(|(k, _)| *k == flag) {
            for token in text.split([',', ':']) {
                parse_quantity(token, *dim)
                    .map_err(|e| Error::Usage(format!("config key {key:?} (--{flag}): {e}")))?;
            }
        }
        args.push(format!("--{flag}"));
        args.push(text);
    }
    Ok(args)
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to `stderr`; data goes to `stdout`
/// unless `--output` names a file.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match parse_with_config(&args) {
        Ok(cli) => cli,
        Err(Failure::Clap(e)) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if code == EXIT_OK {
                let _ = write!(stdout, "{}", e.render());
            } else {
                let first = e.to_string();
                let _ = writeln!(stderr, "{}", first.lines().next().unwrap_or("error: invalid arguments"));
            }
            return code;
        }
        Err(Failure::Lib(e)) => return report(&e, stderr),
    };
    match execute(&cli.command, stdout) {
        Ok(code) => code,
        Err(e) => report(&e, stderr),
    }
}

enum Failure {
    Clap(clap::Error),
    Lib(Error),
}

fn parse_with_config(args: &[OsString]) -> std::result::Result<Cli, Failure> {
    let cli = Cli::try_parse_from(args).map_err(Failure::Clap)?;
    let Some(path) = cli.command.common().config.clone() else {
        return Ok(cli);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Failure::Lib(Error::Usage(format!("--config {}: {e}", path.display()))))?;
    let injected = config_to_args(&text).map_err(Failure::Lib)?;
    // program, subcommand, config flags, then the original flags so they win.
    let mut merged: Vec<OsString> = args[..2].to_vec();
    merged.extend(injected.into_iter().map(OsString::from));
    merged.extend(args[2..].iter().cloned());
    Cli::try_parse_from(merged).map_err(Failure::Clap)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Parse { .. } | Error::Io(_) | Error::Json(_) => EXIT_USAGE,
        Error::Domain(_)
        | Error::Truncation { .. }
        | Error::Undersampled { .. }
        | Error::NoBand { .. }
        | Error::UnresolvedBand { .. }
        | Error::PhotonCap { .. }
        | Error::NotNormalized(_) => EXIT_DOMAIN,
    }
}

fn report(e: &Error, stderr: &mut dyn Write) -> i32 {
    let _ = writeln!(stderr, "error: {e}");
    exit_code(e)
}

fn with_output(common: &CommonArgs, stdout: &mut dyn Write, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    if common.output == "-" {
        body(stdout)?;
        stdout.flush()?;
    } else {
        let file = std::fs::File::create(&common.output)
            .map_err(|e| Error::Usage(format!("--output {}: {e}", common.output)))?;
        let mut w = BufWriter::new(file);
        body(&mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn execute(command: &Command, stdout: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Spectrum(a) => cmd_spectrum(a, stdout).map(|_| EXIT_OK),
        Command::Fidelity(a) => cmd_fidelity(a, stdout).map(|_| EXIT_OK),
        Command::Propagate(a) => cmd_propagate(a, stdout).map(|_| EXIT_OK),
        Command::Reflectivity(a) => cmd_reflectivity(a, stdout).map(|_| EXIT_OK),
        Command::Rabi(a) => cmd_rabi(a, stdout).map(|_| EXIT_OK),
        Command::Kerr(a) => cmd_kerr(a, stdout).map(|_| EXIT_OK),
        Command::Gate(a) => cmd_gate(a, stdout).map(|_| EXIT_OK),
        Command::Verify(a) => cmd_verify(a, stdout),
    }
}

pub fn cmd_spectrum(a: &SpectrumArgs, stdout: &mut dyn Write) -> Result<()> {
    let defaults = a.geometry.defaults();
    let norm = match a.norm {
        NormArg::Raw => Normalization::Raw,
        NormArg::Max1 => Normalization::Max1,
    };
    let mut blocks = Vec::with_capacity(a.s0.0.len());
    for &s0 in &a.s0.0 {
        let spec = modes::population_spectrum(&defaults.geometry(s0)?, defaults.truncation)?;
        blocks.push((s0, modes::spectrum_for_plot(&spec, norm)));
    }
    let labelled = blocks.len() > 1;
    with_output(&a.common, stdout, |w| {
        for (s0, rows) in &blocks {
            if labelled {
                writeln!(w, "# s0={s0}")?;
            }
            io::write_spectrum_csv(&mut *w, rows)?;
        }
        Ok(())
    })
}

pub fn cmd_fidelity(a: &FidelityArgs, stdout: &mut dyn Write) -> Result<()> {
    let mut s0s = a.s0.0.clone();
    s0s.sort_unstable();
    s0s.dedup();
    let mut ds = a.d.0.clone();
    ds.sort_by(f64::total_cmp);
    ds.dedup();
    let method = match a.method {
        MethodArg::Spectral => FidelityMethod::Spectral,
        MethodArg::Grid => FidelityMethod::Grid,
    };
    let rows = fidelity_sweep(&s0s, &ds, &a.geometry.defaults(), method)?;
    with_output(&a.common, stdout, |w| io::write_fidelity_csv(w, &rows))
}

pub fn cmd_propagate(a: &PropagateArgs, stdout: &mut dyn Write) -> Result<()> {
    let defaults = a.geometry.defaults();
    let spec = modes::population_spectrum(&defaults.geometry(a.s0)?, defaults.truncation)?;
    let params = DispersionParams::new(a.d, *spec.geometry());
    let transits = match a.time {
        Some(t) => vec![t / params.transit_time()],
        None => a.transits.0.clone(),
    };
    let n_z = a.nz.unwrap_or(2 * spec.s_max() + 1);
    let snapshots = transits
        .iter()
        .map(|&tau| field_snapshot_at_transits(&params, &spec, tau, n_z).map(|f| (tau, f)))
        .collect::<Result<Vec<_>>>()?;
    let labelled = snapshots.len() > 1;
    with_output(&a.common, stdout, |w| {
        for (tau, field) in &snapshots {
            if labelled {
                writeln!(w, "# transits={} t_s={}", io::fmt_f64(*tau), io::fmt_f64(field.t))?;
            }
            io::write_field_csv(&mut *w, field)?;
        }
        Ok(())
    })
}

pub fn cmd_reflectivity(a: &ReflectivityArgs, stdout: &mut dyn Write) -> Result<()> {
    let n = a.n.unwrap_or_else(|| a.material.index());
    let mut grating = GratingSpec::quarter_wave_centered(n, a.contrast, a.design_wavelength, a.periods)?;
    if let Some(i) = a.intensity {
        let dn = kerr_index_shift(&a.material.kerr(), i / 1e4)?;
        grating = grating.with_high_index(grating.n_high - dn);
    }
    let start = a.start.unwrap_or(a.design_wavelength - 2e-9);
    let stop = a.stop.unwrap_or(a.design_wavelength + 2e-9);
    let range = WavelengthRange::new(start, stop, a.step)?;
    let spec = reflectivity_spectrum(&grating, &range, Ambient::uniform(n))?;
    with_output(&a.common, stdout, |w| io::write_reflectivity_csv(w, &spec))
}

pub fn cmd_rabi(a: &RabiArgs, stdout: &mut dyn Write) -> Result<()> {
    let coupling = match a.volume {
        Some(v) => NodeCoupling::new(a.dipole, v, a.wavelength)?,
        None => NodeCoupling::with_cubic_volume(a.dipole, a.wavelength, a.n)?,
    };
    let units = match a.units {
        UnitsArg::Cgs => UnitSystem::Cgs,
        UnitsArg::Si => UnitSystem::Si,
    };
    let omega = vacuum_rabi_frequency(&coupling, units);
    with_output(&a.common, stdout, |w| {
        writeln!(w, "omega0={} rad/s", io::fmt_sig(omega, 6))?;
        Ok(())
    })
}

pub fn cmd_kerr(a: &KerrArgs, stdout: &mut dyn Write) -> Result<()> {
    let intensity = a
        .intensity
        .ok_or_else(|| Error::Usage("--intensity is required".into()))?;
    let medium = match a.n2 {
        Some(n2) => KerrMedium::from_si(n2, a.material.index())?,
        None => a.material.kerr(),
    };
    let dn = kerr_index_shift(&medium, intensity / 1e4)?;
    with_output(&a.common, stdout, |w| {
        writeln!(w, "delta_n={}", io::fmt_sig(dn, 6))?;
        Ok(())
    })
}

fn load_protocol(spec: &str) -> Result<ProtocolScript> {
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("--protocol {spec}: {e}")))?;
        return ProtocolScript::from_json(&text);
    }
    builtin_protocols()
        .remove(spec.to_ascii_uppercase().as_str())
        .ok_or_else(|| Error::Usage(format!("--protocol {spec}: expected swap, cnot or file:<path>")))
}

fn load_input(spec: &str) -> Result<RegisterState> {
    let bits: Vec<char> = spec.chars().collect();
    if let [a @ ('0' | '1'), b @ ('0' | '1')] = bits.as_slice() {
        return Ok(computational_encode(*a == '1', *b == '1'));
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("--input {spec}: not two bits and not a readable file ({e})")))?;
    io::state_from_json(&serde_json::from_str(&text)?)
}

pub fn cmd_gate(a: &GateArgs, stdout: &mut dyn Write) -> Result<()> {
    let protocol = a
        .protocol
        .as_deref()
        .ok_or_else(|| Error::Usage("--protocol is required".into()))?;
    let input = a.input.as_deref().ok_or_else(|| Error::Usage("--input is required".into()))?;
    let script = load_protocol(protocol)?;
    let state = load_input(input)?;
    let run = run_protocol(&script, &state, a.trace)?;
    let json = match &run.trace {
        Some(trace) => io::trace_to_json(trace),
        None => io::state_to_json(&run.output),
    };
    with_output(&a.common, stdout, |w| {
        serde_json::to_writer_pretty(&mut *w, &json)?;
        writeln!(w)?;
        Ok(())
    })
}

pub fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32> {
    let selected: Vec<(u32, acceptance::Check)> = (1..)
        .zip(acceptance::CHECKS)
        .filter(|(id, _)| a.only.as_ref().map_or(true, |only| only.0.contains(id)))
        .collect();
    if selected.is_empty() {
        return Err(Error::Usage(format!("--only: no criteria among 1..={}", acceptance::CHECKS.len())));
    }
    let mut failed = 0;
    with_output(&a.common, stdout, |w| {
        for (_, check) in &selected {
            let outcome = check();
            failed += usize::from(!outcome.passed);
            writeln!(w, "{outcome}")?;
        }
        writeln!(w, "{} of {} criteria passed", selected.len() - failed, selected.len())?;
        Ok(())
    })?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["optoswitch"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn lists() {
        assert_eq!(s0_list("1..3,7").unwrap().0, [1, 2, 3, 7]);
        assert!(s0_list("0,1").is_err());
        assert!(s0_list("5..2").is_err());
        let d = dispersion_list("0:2:0.5").unwrap().0;
        assert_eq!(d, [0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(dispersion_list("0.5ps_nm_km,12.5").unwrap().0, [0.5, 12.5]);
        assert!(dispersion_list("1:0:1").is_err());
    }

    #[test]
    fn kerr_line() {
        let (code, out, _) = run_capture(&["kerr", "--material", "linbo3", "--intensity", "1e11W_cm2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "delta_n=8.33e-4\n");
    }

    #[test]
    fn usage_errors_name_the_flag() {
        let (code, _, err) = run_capture(&["kerr", "--intensity", "lots"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--intensity"), "{err}");
        assert_eq!(err.lines().count(), 1);
        let (code, _, _) = run_capture(&["nonsense"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn domain_errors_exit_two() {
        let (code, _, err) = run_capture(&["kerr", "--intensity=-1"]);
        assert_eq!(code, EXIT_DOMAIN, "{err}");
    }

    #[test]
    fn config_rejects_unitless_quantities() {
        assert!(config_to_args(r#"{"wavelength": 1.24e-6}"#).is_err());
        assert!(config_to_args(r#"{"D": "0:30:0.5"}"#).is_err());
        let args = config_to_args(r#"{"wavelength": "1.24um", "D": ["0ps_nm_km", "2ps_nm_km"], "trace": true, "s_max": 10}"#)
            .unwrap();
        assert_eq!(
            args,
            ["--wavelength", "1.24um", "--D", "0ps_nm_km,2ps_nm_km", "--trace", "--s-max", "10"]
        );
    }
}
