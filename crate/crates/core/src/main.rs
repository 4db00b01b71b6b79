use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wavebp::io::{export_image, read_field, read_scene, write_field, ImageKind};
use wavebp::{
    backpropagate, direct_field, locate_sources, plane_wave_field, propagate, sweep, Complex64,
    Error, EvanescentPolicy, GridSpec, MediumParams, PlaneWave, Wavefield,
};

const EXIT_ARGUMENT: u8 = 2;
const EXIT_FORMAT: u8 = 3;

/// Scalar wavefield synthesis, plane-to-plane propagation and backward
/// propagation reconstruction.
#[derive(Debug, Parser)]
#[command(name = "wavebp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Record the sources of a scene file on its screen.
    Synth {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sample a tilted plane wave on a screen.
    Planewave {
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        amp_re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        amp_im: f64,
        #[arg(long)]
        wavelength: f64,
        #[arg(long)]
        speed: f64,
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny: usize,
        #[arg(long)]
        dx: f64,
        #[arg(long)]
        dy: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        z: f64,
        /// x of sample (0, 0); defaults to centering the grid on x = 0
        #[arg(long, allow_negative_numbers = true)]
        origin_x: Option<f64>,
        /// y of sample (0, 0); defaults to centering the grid on y = 0
        #[arg(long, allow_negative_numbers = true)]
        origin_y: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Propagate a field by a signed distance.
    Prop {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        dz: f64,
        #[arg(long, default_value = "truncate", value_parser = parse_policy)]
        policy: EvanescentPolicy,
        #[arg(long)]
        out: PathBuf,
    },
    /// Propagate a field backwards by a positive distance.
    Backprop {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        dz: f64,
        #[arg(long, default_value = "truncate", value_parser = parse_policy)]
        policy: EvanescentPolicy,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reconstruct a stack of planes between two depths.
    Sweep {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        z_start: f64,
        #[arg(long, allow_negative_numbers = true)]
        z_stop: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value = "truncate", value_parser = parse_policy)]
        policy: EvanescentPolicy,
        #[arg(long)]
        out_dir: PathBuf,
        /// Also report local intensity maxima to <out-dir>/report.txt
        #[arg(long)]
        locate: bool,
        #[arg(long, default_value_t = 0.5)]
        threshold: f64,
    },
    /// Write a PGM image of a field.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = parse_kind)]
        kind: ImageKind,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the header of a field file and its total energy.
    Info {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn parse_policy(s: &str) -> Result<EvanescentPolicy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<ImageKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_format_error() {
            EXIT_FORMAT
        } else {
            EXIT_ARGUMENT
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Every problem with an input file, including invalid payload values, is a
/// format failure.
fn load(path: &Path) -> Result<Wavefield, Failure> {
    read_field(path).map_err(|e| Failure {
        code: EXIT_FORMAT,
        message: format!("{}: {e}", path.display()),
    })
}

fn linspace(start: f64, stop: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![start];
    }
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|k| {
            let t = k as f64 / last;
            start + (stop - start) * t
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Synth { scene, out } => {
            let scene = read_scene(&scene).map_err(|e| Failure {
                code: EXIT_FORMAT,
                message: format!("{}: {e}", scene.display()),
            })?;
            let field = direct_field(&scene.sources, &scene.screen)?;
            write_field(&field, out)?;
        }
        Command::Planewave {
            theta,
            amp_re,
            amp_im,
            wavelength,
            speed,
            nx,
            ny,
            dx,
            dy,
            z,
            origin_x,
            origin_y,
            out,
        } => {
            let medium = MediumParams::new(wavelength, speed)?;
            let centered = GridSpec::centered(nx, ny, dx, dy, z)?;
            let grid = GridSpec::new(
                nx,
                ny,
                dx,
                dy,
                origin_x.unwrap_or(centered.origin_x()),
                origin_y.unwrap_or(centered.origin_y()),
                z,
            )?;
            let pw = PlaneWave::new(theta, Complex64::new(amp_re, amp_im), medium)?;
            write_field(&plane_wave_field(&pw, &grid)?, out)?;
        }
        Command::Prop {
            input,
            dz,
            policy,
            out,
        } => {
            let field = load(&input)?;
            write_field(&propagate(&field, dz, policy)?, out)?;
        }
        Command::Backprop {
            input,
            dz,
            policy,
            out,
        } => {
            // also rejects NaN
            if dz.is_nan() || dz <= 0.0 {
                return Err(Failure {
                    code: EXIT_ARGUMENT,
                    message: format!("--dz must be > 0 for backprop, got {dz}"),
                });
            }
            let field = load(&input)?;
            write_field(&backpropagate(&field, dz, policy)?, out)?;
        }
        Command::Sweep {
            input,
            z_start,
            z_stop,
            steps,
            policy,
            out_dir,
            locate,
            threshold,
        } => {
            if steps == 0 {
                return Err(Failure {
                    code: EXIT_ARGUMENT,
                    message: "--steps must be >= 1".to_string(),
                });
            }
            let field = load(&input)?;
            let stack = sweep(&field, &linspace(z_start, z_stop, steps), policy)?;
            fs::create_dir_all(&out_dir).map_err(|e| Failure {
                code: EXIT_FORMAT,
                message: format!("{}: {e}", out_dir.display()),
            })?;
            for (k, plane) in stack.planes().iter().enumerate() {
                write_field(plane, out_dir.join(format!("plane_{k}.wfld")))?;
            }
            if locate {
                let estimates = locate_sources(&stack, threshold)?;
                let report: String = estimates
                    .iter()
                    .map(|e| format!("{} {} {} {}\n", e.x, e.y, e.z, e.peak_intensity))
                    .collect();
                let path = out_dir.join("report.txt");
                fs::write(&path, &report).map_err(|e| Failure {
                    code: EXIT_FORMAT,
                    message: format!("{}: {e}", path.display()),
                })?;
                print!("{report}");
            }
        }
        Command::Export { input, kind, out } => {
            let field = load(&input)?;
            export_image(&field, kind, out)?;
        }
        Command::Info { input } => {
            let field = load(&input)?;
            let g = field.grid();
            let m = field.medium();
            println!("nx {}", g.nx());
            println!("ny {}", g.ny());
            println!("dx {}", g.dx());
            println!("dy {}", g.dy());
            println!("origin_x {}", g.origin_x());
            println!("origin_y {}", g.origin_y());
            println!("z {}", g.z());
            println!("wavelength {}", m.wavelength());
            println!("speed {}", m.speed());
            println!("frequency {}", m.frequency());
            println!("energy {}", field.energy());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_ARGUMENT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
