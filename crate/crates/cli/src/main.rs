//! `polydome` command-line tool.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "polydome",
    version,
    about = "Dome solids over regular polygons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tessellate the dome and write it as STL or OBJ.
    Mesh(MeshArgs),
    /// Report the solid volume, optionally cross-checked by mesh and Monte Carlo estimates.
    Volume(VolumeArgs),
    /// Build the stacked-slab approximation and compare it with the smooth surface.
    Slabs(SlabsArgs),
    /// Cut the dome with a vertical plane through the axis.
    Xsec(XsecArgs),
    /// Print the angular sector table and samples of the scaling factor.
    Params(ParamsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Stl,
    Obj,
    Json,
    Csv,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Stl => "stl",
            Format::Obj => "obj",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Args)]
pub struct SolidArgs {
    /// Number of polygon sides (n >= 3).
    #[arg(long)]
    pub n: usize,
    /// In-circle radius (apothem) of the base polygon.
    #[arg(long = "R", default_value_t = 1.0)]
    pub apothem: f64,
}

#[derive(Debug, Args)]
pub struct ResolutionArgs {
    /// Azimuthal subdivisions per polygon side.
    #[arg(long, default_value_t = 32)]
    pub segments: usize,
    /// Subdivisions of the profile parameter.
    #[arg(long, default_value_t = 32)]
    pub rings: usize,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file. Relative paths resolve under $POLYDOME_OUT_DIR when it is set.
    #[arg(short = 'o', long = "output")]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct MeshArgs {
    #[command(flatten)]
    pub solid: SolidArgs,
    #[command(flatten)]
    pub resolution: ResolutionArgs,
    #[arg(long, value_enum, default_value_t = Format::Stl)]
    pub format: Format,
    #[arg(short = 'o', long = "output")]
    pub output: std::path::PathBuf,
}

#[derive(Debug, Args)]
pub struct VolumeArgs {
    #[command(flatten)]
    pub solid: SolidArgs,
    /// Add the divergence-theorem volume of a tessellated mesh.
    #[arg(long)]
    pub mesh: bool,
    #[command(flatten)]
    pub resolution: ResolutionArgs,
    /// Add a Monte Carlo estimate with the default sample count.
    #[arg(long)]
    pub mc: bool,
    /// Monte Carlo sample count (implies --mc).
    #[arg(long)]
    pub mc_samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SlabsArgs {
    #[command(flatten)]
    pub solid: SolidArgs,
    /// Number of slabs.
    #[arg(long)]
    pub m: usize,
    /// Also write the staircase solid as a mesh (format from the extension, .obj or .stl).
    #[arg(long)]
    pub mesh_output: Option<std::path::PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct XsecArgs {
    #[command(flatten)]
    pub solid: SolidArgs,
    /// Plane azimuth in degrees.
    #[arg(
        long = "azimuth-deg",
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub azimuth_deg: f64,
    /// Samples per branch for the analytic section.
    #[arg(long, default_value_t = 33)]
    pub points: usize,
    /// Section a tessellated mesh instead of the analytic surface.
    #[arg(long)]
    pub from_mesh: bool,
    #[command(flatten)]
    pub resolution: ResolutionArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[command(flatten)]
    pub solid: SolidArgs,
    /// Samples of a(r) per sector.
    #[arg(long, default_value_t = 4)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Mesh(a) => commands::mesh(&a),
        Command::Volume(a) => commands::volume(&a),
        Command::Slabs(a) => commands::slabs(&a),
        Command::Xsec(a) => commands::xsec(&a),
        Command::Params(a) => commands::params(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
