use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use intercurve::io::load_surface;
use intercurve::pipeline::{
    load_resume, parse_box, run_stages, write_artifacts, PipelineConfig, Stage,
};
use intercurve::rat::parse_rat;
use intercurve::{Error, Result};

/// Topology-preserving polyline approximation of the intersection curve of
/// two rational parametric surfaces, one of them projectable.
#[derive(Parser)]
#[command(name = "intercurve", disable_help_flag = false)]
struct Args {
    /// Projectable (or ruled) surface definition file.
    #[arg(long, value_name = "FILE")]
    s1: PathBuf,
    /// Second surface definition file; its parameters span the search box.
    #[arg(long, value_name = "FILE")]
    s2: PathBuf,
    /// Parameter box [A,B] x [C,D] for the second surface, as exact
    /// rationals ("1/3") or decimals.
    #[arg(long = "box", num_args = 4, required = true, allow_hyphen_values = true, value_names = ["A", "B", "C", "D"])]
    bbox: Vec<String>,
    /// Polyline accuracy (sampled Hausdorff estimate), rational or decimal.
    #[arg(long, default_value = "1/20")]
    epsilon: String,
    /// implicitize | plane-topology | space-topology | approximate | all
    #[arg(long, default_value = "all")]
    stage: String,
    /// Output directory for artifacts.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Comma-separated artifact formats.
    #[arg(long, value_delimiter = ',', default_value = "json,svg,obj")]
    format: Vec<String>,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) | Error::Parse(_) | Error::Io(_) | Error::Json(_) => 1,
        Error::NotProjectable | Error::DegenerateRuledSurface => 2,
        Error::SharedComponent => 3,
        _ => 4,
    }
}

fn run(args: &Args) -> Result<()> {
    for f in &args.format {
        if !matches!(f.as_str(), "json" | "svg" | "obj") {
            return Err(Error::InvalidInput(format!("unknown format {f:?}")));
        }
    }
    let stage = Stage::parse(&args.stage)?;
    let bbox = parse_box(&args.bbox[0], &args.bbox[1], &args.bbox[2], &args.bbox[3])
        .map_err(|e| Error::InvalidInput(format!("bad --box: {e}")))?;
    let epsilon = parse_rat(&args.epsilon)?;
    if epsilon <= intercurve::rat::rat_i(0) {
        return Err(Error::InvalidInput("epsilon must be positive".into()));
    }
    let s1 = load_surface(&args.s1)?;
    let s2 = match load_surface(&args.s2)? {
        intercurve::io::SurfaceInput::Plain(s) => s,
        intercurve::io::SurfaceInput::Ruled(r) => r.to_surface()?,
    };
    let cfg = PipelineConfig {
        s1,
        s2,
        bbox,
        epsilon,
        stage,
    };
    // staged runs resume from artifacts already in --out; a full run
    // recomputes everything
    let resume = if args.stage == "all" {
        Default::default()
    } else {
        load_resume(&args.out)
    };
    let out = run_stages(&cfg, &resume)?;
    let written = write_artifacts(&args.out, &args.format, &cfg, &out)?;
    for w in &written {
        println!("wrote {}", args.out.join(w).display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            // clap's own exit code for usage errors is 2; the contract here
            // reserves 2 for non-projectable surfaces
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
