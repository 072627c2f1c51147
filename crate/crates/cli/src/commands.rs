use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use serde_json::json;
use su11_core::interferometer::{presets, Gap, InterferometerConfig, Interferometer, WidthCurve};
use su11_core::materials;
use su11_core::schmidt::columns::{mode_table, spectrum_table};
use su11_core::schmidt::{effective_mode_number, ModalSpectrum, SchmidtMethod};
use su11_core::units::Length;

use crate::args::{Cli, Command, Common, Format};
use crate::error::{CliError, Result};
use crate::output::{sidecar, to_json, write_manifest, Outputs, RunManifest};

/// What a command leaves behind for the manifest.
struct Run {
    config: Option<serde_json::Value>,
    inputs: Vec<PathBuf>,
    outputs: Outputs,
}

pub fn run(cli: &Cli, arguments: Vec<String>) -> Result<()> {
    let run = match &cli.command {
        Command::Material { name, wavelength } => material(&cli.common, name, wavelength)?,
        command => {
            let (config, inputs) = load_config(&cli.common, command.default_preset())?;
            let mut outputs = Outputs::default();
            let snapshot = dispatch(&cli.common, command, config, &mut outputs)?;
            Run { config: Some(snapshot), inputs, outputs }
        }
    };
    if let Some(out) = &cli.common.out {
        let manifest = RunManifest {
            command: cli.command.name().to_string(),
            arguments,
            config: run.config,
            inputs: run.inputs,
            outputs: run.outputs.paths().to_vec(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        };
        write_manifest(out, &manifest)?;
    }
    Ok(())
}

fn load_config(common: &Common, default_preset: &str) -> Result<(InterferometerConfig, Vec<PathBuf>)> {
    if let Some(path) = &common.config {
        let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.clone(), source })?;
        return Ok((InterferometerConfig::from_json(&text)?, vec![path.clone()]));
    }
    let name = common.preset.as_deref().unwrap_or(default_preset);
    Ok((presets::preset(name)?, Vec::new()))
}

fn dispatch(
    common: &Common,
    command: &Command,
    mut config: InterferometerConfig,
    outputs: &mut Outputs,
) -> Result<serde_json::Value> {
    match command {
        Command::Material { .. } => unreachable!("handled without a configuration"),
        Command::AngularSweep { from, to, step, at, saturate } => {
            let xs = separations(from.as_deref(), to.as_deref(), step.as_deref(), at)?;
            let model = Interferometer::new(config)?;
            let curve = if *saturate {
                let mut sorted = xs;
                sorted.sort_by(f64::total_cmp);
                let widths =
                    sorted.iter().map(|&l| model.saturated_angular_width(l)).collect::<su11_core::Result<_>>()?;
                let mut meta = model.metadata();
                meta["saturated"] = json!(true);
                WidthCurve::new(sorted, widths, "mm", "rad", meta)
            } else {
                model.sweep_width(&xs)?
            };
            emit_curve(common, &curve, outputs)?;
            Ok(model.metadata())
        }
        Command::SpectralSweep { medium, baseline } => {
            if let Some(b) = baseline {
                config.baseline_fwhm_nm = Some(Length::from_str(b)?.nm());
            }
            let model = Interferometer::new(config)?;
            let mut xs = vec![0.0];
            let mut media = Vec::new();
            for m in medium {
                let gap = Gap::parse(m)?;
                if !matches!(gap, Gap::Dispersive { .. }) {
                    return Err(CliError::Usage(format!("`{m}` is not a dispersive medium")));
                }
                let k2d = model.gap_k2d(&gap)?;
                media.push(json!({ "medium": m, "k2d_fs2": k2d }));
                xs.push(k2d);
            }
            let mut curve = model.sweep_width(&xs)?;
            curve.metadata["media"] = json!(media);
            emit_curve(common, &curve, outputs)?;
            Ok(model.metadata())
        }
        Command::Modes { orders, gap, points } => {
            let gap = match gap {
                Some(g) => Gap::parse(g)?,
                None => config.gap.clone(),
            };
            let model = Interferometer::new(config)?;
            let profiles = model.mode_profiles(orders, &gap, *points)?;
            for o in &profiles.overlaps {
                eprintln!(
                    "order {:>3}: size {:.1} -> {:.1}, pump half-width {:.1}, {}",
                    o.order,
                    o.size_before,
                    o.size_after,
                    o.pump_half_size,
                    if o.inside_after() { "inside" } else { "outside" }
                );
            }
            let text = match common.format {
                Format::Json => to_json(&json!({ "gap": gap, "profiles": profiles })),
                Format::Csv => {
                    let mut columns = vec![("pump".to_string(), profiles.pump.clone())];
                    for (i, m) in profiles.orders.iter().enumerate() {
                        columns.push((format!("before_{m}"), profiles.before[i].clone()));
                        columns.push((format!("after_{m}"), profiles.after[i].clone()));
                    }
                    mode_table(&profiles.points, &columns)?
                }
            };
            outputs.emit(common.out.as_deref(), &text)?;
            Ok(model.metadata())
        }
        Command::Schmidt { gain, method, modes_out, mode_count } => {
            if let Some(g) = gain {
                config.gain = *g;
            }
            if let Some(m) = method {
                config.schmidt_method = SchmidtMethod::from_str(m)?;
            }
            let model = Interferometer::new(config)?;
            let spectrum = model.spectrum();
            let eigenvalues = spectrum.eigenvalues();
            let weights = model.weights();
            let effective = effective_mode_number(weights)?;
            eprintln!(
                "{} modes ({:?}), K = {:.4}, effective K at G = {} is {:.4}",
                eigenvalues.len(),
                spectrum.method(),
                spectrum.schmidt_number(),
                model.config().gain,
                effective
            );
            let text = match common.format {
                Format::Csv => spectrum_table(eigenvalues, weights)?,
                Format::Json => to_json(&SchmidtReport {
                    method: spectrum.method(),
                    gain: model.config().gain,
                    schmidt_number: spectrum.schmidt_number(),
                    effective_mode_number: effective,
                    eigenvalues,
                    weights,
                }),
            };
            outputs.emit(common.out.as_deref(), &text)?;
            if let Some(path) = modes_out {
                let count = (*mode_count).min(eigenvalues.len());
                let columns = (0..count)
                    .map(|k| Ok((format!("psi_{k}"), spectrum.mode_profile(k)?)))
                    .collect::<su11_core::Result<Vec<_>>>()?;
                outputs.write(path, &mode_table(spectrum.axis_points(), &columns)?)?;
            }
            Ok(model.metadata())
        }
    }
}

#[derive(Serialize)]
struct SchmidtReport<'a> {
    method: SchmidtMethod,
    gain: f64,
    schmidt_number: f64,
    effective_mode_number: f64,
    eigenvalues: &'a [f64],
    weights: &'a [f64],
}

fn emit_curve(common: &Common, curve: &WidthCurve, outputs: &mut Outputs) -> Result<()> {
    match common.format {
        Format::Json => outputs.emit(common.out.as_deref(), &to_json(curve)),
        Format::Csv => {
            outputs.emit(common.out.as_deref(), &curve.to_csv())?;
            if let Some(out) = &common.out {
                outputs.write(&sidecar(out, ".meta.json"), &(curve.metadata_json() + "\n"))?;
            }
            Ok(())
        }
    }
}

fn length_mm(text: &str) -> Result<f64> {
    Ok(Length::from_str(text)?.mm())
}

/// Separations in mm from an inclusive `from..=to` range and explicit values.
fn separations(from: Option<&str>, to: Option<&str>, step: Option<&str>, at: &[String]) -> Result<Vec<f64>> {
    let mut xs = Vec::new();
    if let (Some(from), Some(to), Some(step)) = (from, to, step) {
        let (a, b, h) = (length_mm(from)?, length_mm(to)?, length_mm(step)?);
        if !(h > 0.0) {
            return Err(CliError::Usage(format!("step must be positive, got {step}")));
        }
        if b < a {
            return Err(CliError::Usage(format!("empty range: {from} is beyond {to}")));
        }
        let count = ((b - a) / h + 1e-9).floor() as usize + 1;
        xs.extend((0..count).map(|i| a + i as f64 * h));
    }
    for v in at {
        xs.push(length_mm(v)?);
    }
    if xs.is_empty() {
        return Err(CliError::Usage("no separations given; use --from/--to/--step or --at".into()));
    }
    Ok(xs)
}

fn material(common: &Common, name: &str, wavelength: &str) -> Result<Run> {
    let lam = Length::from_str(wavelength)?.um();
    let m = materials::material(name)?;
    let n = m.refractive_index(lam)?;
    let gvd = m.gvd(lam)?;
    let text = match common.format {
        Format::Csv => format!("material,wavelength_um,refractive_index,gvd_fs2_per_mm\n{},{lam},{n},{gvd}\n", m.name),
        Format::Json => to_json(&json!({
            "material": m.name,
            "wavelength_um": lam,
            "refractive_index": n,
            "gvd_fs2_per_mm": gvd,
        })),
    };
    let mut outputs = Outputs::default();
    if common.out.is_some() {
        eprintln!("{}: n = {n:.6}, k'' = {gvd:.3} fs^2/mm at {lam} um", m.name);
    }
    outputs.emit(common.out.as_deref(), &text)?;
    Ok(Run { config: None, inputs: Vec::new(), outputs })
}
