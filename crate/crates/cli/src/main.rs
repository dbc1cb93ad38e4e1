mod commands;
mod matrix;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use qcentral::fusion::FreeWord;
use qcentral::QParam;

use output::{render, Format, Report};

#[derive(Parser)]
#[command(
    name = "qcentral",
    version,
    about = "Central multipliers and q-special functions"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Point {
    /// Deformation parameter, 0 < |q| < 1.
    #[arg(long, allow_negative_numbers = true)]
    q: f64,
    /// Real parameter t.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "z")]
    t: Option<f64>,
    /// Complex parameter as `re,im`.
    #[arg(long, value_parser = parse_complex, allow_negative_numbers = true)]
    z: Option<Complex64>,
}

impl Point {
    fn q(&self) -> Result<QParam, String> {
        QParam::new(self.q).map_err(|e| e.to_string())
    }

    fn z(&self) -> Complex64 {
        self.z
            .or(self.t.map(|t| Complex64::new(t, 0.0)))
            .unwrap_or(Complex64::new(0.0, 0.0))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Chebyshev, q-Hermite and q-Pochhammer tables.
    Special {
        #[command(flatten)]
        point: Point,
        #[arg(long, default_value_t = 10)]
        dmax: u32,
    },
    /// Multiplier coefficients b_d and the cb-norm summability report.
    Multiplier {
        #[command(flatten)]
        point: Point,
        #[arg(long, default_value_t = 50)]
        dmax: u32,
        #[arg(long, default_value_t = 3)]
        power: u32,
        /// Also cut the multiplier off with this certified tail.
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Eigen-equation residual of eta under the truncated Jacobi operator.
    Eigen {
        #[command(flatten)]
        point: Point,
        #[arg(long, default_value_t = 200)]
        ntr: usize,
    },
    /// The functional theta_z on spins 0..=dmax.
    Theta {
        #[command(flatten)]
        point: Point,
        #[arg(long, default_value_t = 8)]
        dmax: u32,
        #[arg(long, default_value_t = 300)]
        ntr: usize,
    },
    /// Fusion of two spins or two words, or a dimension growth table.
    Fusion {
        /// Two spins given by d, as `a,b`.
        #[arg(long, value_parser = parse_pair::<u32>, group = "what")]
        spins: Option<(u32, u32)>,
        /// Two words over {a, b}, as `w,v` (`e` is the empty word).
        #[arg(long, value_parser = parse_pair::<FreeWord>, group = "what")]
        words: Option<(FreeWord, FreeWord)>,
        /// Size N for the dimension growth table.
        #[arg(long, group = "what")]
        n: Option<u32>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, default_value_t = 10)]
        dmax: u32,
    },
    /// Profile of the matrix F.
    Structure {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Truncation schedule for free products.
    Schedule {
        #[arg(long)]
        delta: f64,
    },
    /// Run the invariant suite.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let parse = |p: &str| p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(format!("expected `re,im`, got {s:?}")),
    }
}

fn parse_pair<T: FromStr>(s: &str) -> Result<(T, T), String>
where
    T::Err: std::fmt::Display,
{
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two values `a,b`, got {s:?}"))?;
    let parse = |p: &str| p.trim().parse::<T>().map_err(|e| format!("{p:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

enum Failure {
    Config(String),
    Verification(String),
}

impl From<qcentral::Error> for Failure {
    fn from(e: qcentral::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Config(e)
    }
}

fn emit<R: Report>(report: &R, format: Format) -> String {
    render(report, format)
}

fn run(cli: Cli) -> Result<String, Failure> {
    let format = cli.format;
    Ok(match cli.command {
        Command::Special { point, dmax } => {
            emit(&commands::special(point.q()?, point.z(), dmax), format)
        }
        Command::Multiplier {
            point,
            dmax,
            power,
            eps,
        } => emit(
            &commands::multiplier(point.q()?, point.z(), dmax, power, eps)?,
            format,
        ),
        Command::Eigen { point, ntr } => {
            emit(&commands::eigen(point.q()?, point.z(), ntr)?, format)
        }
        Command::Theta { point, dmax, ntr } => {
            emit(&commands::theta(point.q()?, point.z(), dmax, ntr)?, format)
        }
        Command::Fusion {
            spins,
            words,
            n,
            q,
            dmax,
        } => {
            let q = q.map(QParam::new).transpose()?;
            if let Some((a, b)) = spins {
                emit(&commands::fusion_spins(a, b, q), format)
            } else if let Some((w, v)) = words {
                emit(&commands::fusion_words(w, v, q), format)
            } else if let Some(n) = n {
                let q = q.ok_or_else(|| "--n needs --q for the gauge".to_string())?;
                emit(&commands::growth(q, n, dmax)?, format)
            } else {
                return Err(Failure::Config(
                    "fusion needs one of --spins, --words or --n".into(),
                ));
            }
        }
        Command::Structure { matrix } => {
            let f = matrix::read(&matrix)?;
            emit(&commands::structure(&f)?, format)
        }
        Command::Schedule { delta } => emit(&commands::schedule(delta)?, format),
        Command::Verify { seed } => {
            let report = verify::run(seed);
            let text = emit(&report, format);
            if !report.passed() {
                return Err(Failure::Verification(text));
            }
            text
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
