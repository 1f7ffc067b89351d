use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use backstroke::curvefit::{fit_cubic, CubicCurve};
use backstroke::depthcam::{load_depth_image, render_synthetic, save_depth_image, CameraIntrinsics, SyntheticScene};
use backstroke::eval::{evaluate_trajectory, summarize_traces, NormalTrace, Reference, Report};
use backstroke::pipeline::{
    load_transform, PipelineConfig, CURVE_FILE, DEPTH_FILE, PROFILE_FILE, REPORT_FILE, ROBOT_TRAJECTORY_FILE,
    TRAJECTORY_FILE,
};
use backstroke::profile::{extract_profile, BackProfile, StrokeLine};
use backstroke::trajgen::{to_robot_frame, Trajectory, DEFAULT_STEP_M, SPEED_MEDIUM_MPS};
use backstroke::Execution;

/// Surface-following stroke trajectories from depth images.
#[derive(Parser)]
#[command(name = "backstroke", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render a synthetic depth image from a scene config.
    Synth {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutDir,
    },
    /// Extract the depth profile under a vertical stroke line.
    Extract {
        #[arg(long)]
        depth: PathBuf,
        /// Scene config supplying the camera intrinsics (defaults otherwise).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Stroke line as `u,v_start,v_end`.
        #[arg(long, value_parser = parse_line)]
        line: StrokeLine,
        #[command(flatten)]
        out: OutDir,
    },
    /// Fit the cubic back model to a profile.
    Fit {
        /// Profile CSV (default: <out>/profile.csv).
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: OutDir,
    },
    /// Generate a timestamped trajectory from a fitted curve.
    Gen {
        /// Curve record (default: <out>/curve.txt).
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_STEP_M * 1000.0)]
        step_mm: f64,
        #[arg(long, default_value_t = SPEED_MEDIUM_MPS)]
        speed_mps: f64,
        /// Camera-to-robot transform; also writes the robot-frame trajectory.
        #[arg(long)]
        transform: Option<PathBuf>,
        #[command(flatten)]
        out: OutDir,
    },
    /// Score a trajectory against a reference surface, or score recorded traces.
    Eval {
        /// Trajectory CSV (default: <out>/trajectory.csv unless --trace is given).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Normal trace CSV; repeat for several repetitions.
        #[arg(long, conflicts_with = "input")]
        trace: Vec<PathBuf>,
        /// Scene config to score against its analytic surface.
        #[arg(long, conflicts_with = "reference")]
        config: Option<PathBuf>,
        /// Curve record to score against (default: the trajectory's own curve).
        #[arg(long)]
        reference: Option<PathBuf>,
        #[command(flatten)]
        out: OutDir,
    },
    /// Run synth/extract, fit, gen and eval from one config.
    Pipeline {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        depth: Option<PathBuf>,
        #[arg(long, value_parser = parse_line)]
        line: Option<StrokeLine>,
        #[arg(long)]
        step_mm: Option<f64>,
        #[arg(long)]
        speed_mps: Option<f64>,
        #[arg(long)]
        transform: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args)]
struct OutDir {
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

impl OutDir {
    fn create(&self) -> Result<&Path> {
        std::fs::create_dir_all(&self.out).with_context(|| format!("creating {}", self.out.display()))?;
        Ok(&self.out)
    }
}

fn parse_line(s: &str) -> Result<StrokeLine, String> {
    StrokeLine::parse(s).map_err(|e| e.to_string())
}

fn intrinsics(config: Option<&Path>) -> Result<CameraIntrinsics> {
    Ok(match config {
        Some(p) => SyntheticScene::load(p)?.intrinsics,
        None => CameraIntrinsics::default(),
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Synth { config, seed, out } => {
            let mut scene = SyntheticScene::load(&config)?;
            if let Some(seed) = seed {
                scene.seed = seed;
            }
            let img = render_synthetic(&scene)?;
            let path = out.create()?.join(DEPTH_FILE);
            save_depth_image(&img, &path)?;
            println!("wrote {} ({}x{})", path.display(), img.width(), img.height());
        }
        Command::Extract { depth, config, line, out } => {
            let img = load_depth_image(&depth)?;
            let profile = extract_profile(&img, &line, &intrinsics(config.as_deref())?)?;
            let path = out.create()?.join(PROFILE_FILE);
            profile.save(&path)?;
            println!("wrote {} ({} samples)", path.display(), profile.len());
        }
        Command::Fit { input, out } => {
            let input = input.unwrap_or_else(|| out.out.join(PROFILE_FILE));
            let profile = BackProfile::load(&input)?;
            let curve = fit_cubic(&profile)?;
            let path = out.create()?.join(CURVE_FILE);
            curve.save(profile.x_fixed(), &path)?;
            println!(
                "wrote {}: a={} b={} c={} d={} rms={} m",
                path.display(),
                curve.a,
                curve.b,
                curve.c,
                curve.d,
                curve.rms_residual
            );
        }
        Command::Gen {
            input,
            step_mm,
            speed_mps,
            transform,
            out,
        } => {
            let input = input.unwrap_or_else(|| out.out.join(CURVE_FILE));
            let (curve, x_fixed) = CubicCurve::load(&input)?;
            let traj = Trajectory::generate(&curve, x_fixed, step_mm / 1000.0, speed_mps)?;
            let dir = out.create()?;
            traj.save(dir.join(TRAJECTORY_FILE))?;
            if let Some(t) = transform {
                let robot = to_robot_frame(&traj, &load_transform(&t)?)?;
                robot.save(dir.join(ROBOT_TRAJECTORY_FILE))?;
            }
            println!(
                "wrote {}: {} waypoints, {} s",
                dir.join(TRAJECTORY_FILE).display(),
                traj.len(),
                traj.duration()
            );
        }
        Command::Eval {
            input,
            trace,
            config,
            reference,
            out,
        } => {
            let report = if !trace.is_empty() {
                let traces = trace
                    .iter()
                    .map(|p| NormalTrace::load(p).map_err(anyhow::Error::from))
                    .collect::<Result<Vec<_>>>()?;
                let summary = summarize_traces(&traces)?;
                let mut report = Report::from_repetitions(summary);
                if trace.len() == 1 {
                    report.repetitions.clear();
                }
                trace
                    .iter()
                    .enumerate()
                    .fold(report, |r, (i, p)| r.with_context(format!("trace.{i}"), p.display()))
            } else {
                let input = input.unwrap_or_else(|| out.out.join(TRAJECTORY_FILE));
                let traj = Trajectory::load(&input)?;
                let (stats, source) = match (config, reference) {
                    (Some(c), _) => {
                        let scene = SyntheticScene::load(&c)?;
                        (evaluate_trajectory(&traj, Reference::Scene(&scene))?, "scene")
                    }
                    (None, Some(r)) => {
                        let (curve, _) = CubicCurve::load(&r)?;
                        (evaluate_trajectory(&traj, Reference::Curve(&curve))?, "curve")
                    }
                    (None, None) => (evaluate_trajectory(&traj, Reference::Curve(traj.curve()))?, "fitted_curve"),
                };
                Report::new(stats)
                    .with_context("reference", source)
                    .with_context("trajectory", input.display())
                    .with_context("step_m", traj.step())
                    .with_context("speed_mps", traj.speed())
            };
            let path = out.create()?.join(REPORT_FILE);
            report.save(&path)?;
            println!(
                "wrote {}: mean {} deg, max {} deg over {} points",
                path.display(),
                report.stats.mean(),
                report.stats.max(),
                report.stats.count()
            );
        }
        Command::Pipeline {
            config,
            depth,
            line,
            step_mm,
            speed_mps,
            transform,
            out,
            seed,
        } => {
            let mut cfg = PipelineConfig::load(&config)?;
            cfg.depth = depth.or(cfg.depth);
            cfg.line = line.unwrap_or(cfg.line);
            cfg.step_m = step_mm.map_or(cfg.step_m, |s| s / 1000.0);
            cfg.speed_mps = speed_mps.unwrap_or(cfg.speed_mps);
            cfg.transform = transform.or(cfg.transform);
            cfg.out = out.unwrap_or(cfg.out);
            cfg.seed = seed.or(cfg.seed);
            if cfg.depth.is_none() && cfg.scene.is_none() {
                bail!("config needs a scene or a depth image");
            }
            let output = cfg.run(Execution::default())?;
            println!(
                "wrote {}: mean {} deg, max {} deg over {} waypoints",
                cfg.out.join(REPORT_FILE).display(),
                output.stats.mean(),
                output.stats.max(),
                output.stats.count()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("usage error").trim();
            eprintln!("{}", if first.starts_with("error:") { first.to_string() } else { format!("error: {first}") });
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
