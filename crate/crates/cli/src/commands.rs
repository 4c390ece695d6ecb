use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use polydome::{
    build_slab_stack, convergence_profile, ellipse_residual, max_profile_errors,
    mesh_plane_section, monte_carlo_volume, plane_section, slab_stack_mesh, solid_volume,
    tessellate, write_obj, write_stl, MeshResolution, PlaneSection64, SolidSpec64, TriangleMesh64,
    VolumeReport,
};
use serde::Serialize;

use crate::{
    Format, MeshArgs, OutputArgs, ParamsArgs, ResolutionArgs, SlabsArgs, SolidArgs, VolumeArgs,
    XsecArgs,
};

const OUT_DIR_ENV: &str = "POLYDOME_OUT_DIR";
const DEFAULT_MC_SAMPLES: usize = 100_000;

fn solid(args: &SolidArgs) -> Result<SolidSpec64> {
    Ok(SolidSpec64::new(args.n, args.apothem)?)
}

fn resolution(args: &ResolutionArgs) -> Result<MeshResolution> {
    Ok(MeshResolution::new(args.segments, args.rings)?)
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() && !dir.is_empty() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(BufWriter::new(file))
}

/// Writes `data` to the output file and the summary to stdout, or, without an output file,
/// `data` to stdout and the summary to stderr.
fn emit(out: &OutputArgs, data: &[u8], summary: &str) -> Result<()> {
    match &out.output {
        Some(path) => {
            let path = resolve(path);
            let mut w = create(&path)?;
            w.write_all(data)?;
            w.flush()?;
            println!("{summary} -> {}", path.display());
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(data)?;
            stdout.flush()?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn write_mesh(mesh: &TriangleMesh64, path: &Path, format: Format) -> Result<()> {
    let mut w = create(path)?;
    match format {
        Format::Stl => {
            write_stl(mesh, &mut w)?;
        }
        Format::Obj => {
            write_obj(mesh, &mut w)?;
        }
        other => bail!("mesh output must be stl or obj, got {}", other.name()),
    }
    w.flush()?;
    Ok(())
}

pub fn mesh(args: &MeshArgs) -> Result<()> {
    let spec = solid(&args.solid)?;
    let res = resolution(&args.resolution)?;
    if !matches!(args.format, Format::Stl | Format::Obj) {
        bail!(
            "mesh --format must be stl or obj, got {}",
            args.format.name()
        );
    }
    let mesh = tessellate(&spec, res)?;
    mesh.validate_closed()
        .context("generated mesh failed validation")?;
    let path = resolve(&args.output);
    write_mesh(&mesh, &path, args.format)?;
    let volume = mesh.signed_volume();
    let exact = solid_volume(&spec);
    println!(
        "mesh: n={} R={} vertices={} triangles={} signed_volume={volume} analytic={exact} rel_err={:.3e} -> {}",
        spec.sides(),
        spec.apothem(),
        mesh.vertices.len(),
        mesh.triangles.len(),
        (volume - exact).abs() / exact,
        path.display()
    );
    Ok(())
}

pub fn volume(args: &VolumeArgs) -> Result<()> {
    let spec = solid(&args.solid)?;
    let res = resolution(&args.resolution)?;
    let samples = match (args.mc_samples, args.mc) {
        (Some(n), _) => Some(n),
        (None, true) => Some(DEFAULT_MC_SAMPLES),
        (None, false) => None,
    };
    if samples == Some(0) {
        bail!("--mc-samples must be at least 1");
    }

    let mut report = VolumeReport::analytic(&spec);
    if args.mesh {
        report = report.with_mesh(&tessellate(&spec, res)?)?;
    }
    if let Some(samples) = samples {
        let mc = monte_carlo_volume(&spec, samples, args.seed)?;
        report = report.with_monte_carlo(&mc, args.seed);
    }
    let mut summary = format!(
        "volume: n={} R={} analytic={}",
        spec.sides(),
        spec.apothem(),
        report.analytic
    );
    if let Some(v) = report.mesh_estimate {
        summary.push_str(&format!(" mesh={v}"));
    }
    if let (Some(v), Some(se)) = (report.mc_estimate, report.mc_std_error) {
        summary.push_str(&format!(" mc={v}±{se}"));
    }
    emit(&args.out, &to_json(&report)?, &summary)
}

pub fn slabs(args: &SlabsArgs) -> Result<()> {
    let spec = solid(&args.solid)?;
    let stack = build_slab_stack(args.m, &spec)?;
    let profile = convergence_profile(args.m, &spec)?;
    let (max_err, max_deficit) = max_profile_errors(&profile);

    if let Some(path) = &args.mesh_output {
        let path = resolve(path);
        let format = match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("obj") => Format::Obj,
            _ => Format::Stl,
        };
        let mesh = slab_stack_mesh(&stack, &spec);
        mesh.validate_closed()
            .context("staircase mesh failed validation")?;
        write_mesh(&mesh, &path, format)?;
    }
    let summary = format!(
        "slabs: n={} R={} m={} total_volume={} analytic={} max_apothem_error={max_err:.6e} max_squared_deficit={max_deficit:.6e}",
        spec.sides(),
        spec.apothem(),
        args.m,
        stack.total_volume(),
        solid_volume(&spec),
    );
    emit(&args.out, stack.to_csv().as_bytes(), &summary)
}

#[derive(Serialize)]
struct XsecReport<'a> {
    #[serde(flatten)]
    section: &'a PlaneSection64,
    azimuth_deg: f64,
    source: &'static str,
    ellipse_residual: f64,
}

pub fn xsec(args: &XsecArgs) -> Result<()> {
    let spec = solid(&args.solid)?;
    let res = resolution(&args.resolution)?;
    if !args.azimuth_deg.is_finite() {
        bail!("--azimuth-deg must be finite");
    }
    if !matches!(args.format, Format::Json | Format::Csv) {
        bail!(
            "xsec --format must be json or csv, got {}",
            args.format.name()
        );
    }
    let azimuth = args.azimuth_deg.to_radians();
    let (section, source) = if args.from_mesh {
        let mesh = tessellate(&spec, res)?;
        (mesh_plane_section(&mesh, azimuth, &spec)?, "mesh")
    } else {
        (plane_section(azimuth, &spec, args.points)?, "analytic")
    };
    let residual = ellipse_residual(&section);
    let data = match args.format {
        Format::Csv => section.to_csv().into_bytes(),
        _ => to_json(&XsecReport {
            section: &section,
            azimuth_deg: args.azimuth_deg,
            source,
            ellipse_residual: residual,
        })?,
    };
    let summary = format!(
        "xsec: n={} R={} azimuth_deg={} source={source} semi_axes=({}, {}, {}) residual={residual:.3e}",
        spec.sides(),
        spec.apothem(),
        args.azimuth_deg,
        section.semi_axis_pos,
        section.semi_axis_neg,
        section.vertical_semi_axis,
    );
    emit(&args.out, &data, &summary)
}

#[derive(Serialize)]
struct SectorRow {
    sector: usize,
    start_deg: f64,
    end_deg: f64,
    midline_deg: f64,
    a_min: f64,
}

#[derive(Serialize)]
struct FactorSample {
    r_deg: f64,
    sector: usize,
    a: f64,
}

#[derive(Serialize)]
struct ParamsReport {
    n: usize,
    sectors: Vec<SectorRow>,
    samples: Vec<FactorSample>,
}

pub fn params(args: &ParamsArgs) -> Result<()> {
    let spec = solid(&args.solid)?;
    if args.samples < 1 {
        bail!("--samples must be at least 1");
    }
    if !matches!(args.format, Format::Json | Format::Csv) {
        bail!(
            "params --format must be json or csv, got {}",
            args.format.name()
        );
    }
    let dom = spec.domain();
    let mut sectors = Vec::with_capacity(spec.sides());
    let mut samples = Vec::new();
    for i in 1..=spec.sides() {
        let (start, end) = dom.sector_interval(i);
        // a is smallest at the sector's corners
        let a_min = spec
            .scaling_factor_in_sector(start, i)
            .min(spec.scaling_factor_in_sector(end, i));
        sectors.push(SectorRow {
            sector: i,
            start_deg: round_deg(start),
            end_deg: round_deg(end),
            midline_deg: round_deg(dom.sector_midline(i)),
            a_min,
        });
        for k in 0..args.samples {
            let r = start + dom.sector_width * k as f64 / args.samples as f64;
            samples.push(FactorSample {
                r_deg: round_deg(r),
                sector: spec.sector_index(r)?,
                a: spec.scaling_factor(r)?,
            });
        }
    }
    let report = ParamsReport {
        n: spec.sides(),
        sectors,
        samples,
    };
    let data = match args.format {
        Format::Json => to_json(&report)?,
        _ => {
            let mut s = String::from("sector,start_deg,end_deg,midline_deg,a_min\n");
            for r in &report.sectors {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.sector, r.start_deg, r.end_deg, r.midline_deg, r.a_min
                ));
            }
            s.push_str("\nr_deg,sector,a\n");
            for p in &report.samples {
                s.push_str(&format!("{},{},{}\n", p.r_deg, p.sector, p.a));
            }
            s.into_bytes()
        }
    };
    let summary = format!(
        "params: n={} sectors={} sector_width_deg={} a_min={}",
        spec.sides(),
        spec.sides(),
        round_deg(dom.sector_width),
        spec.half_angle().cos()
    );
    emit(&args.out, &data, &summary)
}

/// Degrees rounded to 12 decimals so that table edges print as `-45`, not `-45.00000000000001`.
fn round_deg(rad: f64) -> f64 {
    let d = (rad.to_degrees() * 1e12).round() / 1e12;
    if d == 0.0 {
        0.0
    } else {
        d
    }
}
