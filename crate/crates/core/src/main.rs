use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;
use serde_json::json;

use quiver_chow::check::{self, CheckOptions, Level};
use quiver_chow::chow::{BuildOptions, ChowClass, Presentation};
use quiver_chow::invariants::{hilbert_series, picard_index_and_h, InvariantReport, ReportOptions};
use quiver_chow::quiver::{kronecker, DimVector, Normalization, QuiverSpec, Stability};
use quiver_chow::{Error, Result};

#[derive(Parser)]
#[command(name = "quiver-chow", version, about = "Chow rings and invariants of quiver moduli spaces")]
struct Cli {
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, index, degree, Hilbert series and Euler characteristics.
    Invariants(Job),
    /// The point class in the quotient basis.
    PointClass(Job),
    /// The Todd class in the quotient basis.
    Todd(Job),
    /// Values and numerator of the Hilbert series of O(1).
    Hilbert(Job),
    /// Relations and quotient dimensions of the Chow ring presentation.
    Presentation(Job),
    /// Run the self-check suite.
    Check {
        #[arg(value_enum, default_value = "quick")]
        level: CheckLevel,
        /// Include K_5(2,3).
        #[arg(long)]
        extended: bool,
        /// Perturb one coefficient of the Todd series (the checks must fail).
        #[arg(long, value_name = "K", hide = true)]
        tamper_todd: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckLevel {
    Quick,
    Full,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Args)]
struct Job {
    /// Kronecker moduli K_m(d,e) with canonical stability.
    #[arg(long, num_args = 3, value_names = ["M", "D", "E"], conflicts_with = "file", required_unless_present = "file")]
    kronecker: Option<Vec<u32>>,
    /// Quiver spec in JSON: {"vertices", "arrows", "d", "theta"?}.
    #[arg(long, value_name = "PATH")]
    file: Option<String>,
    /// Stability parameter overriding the input, e.g. "3,-2".
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// Normalization a with sum a_i d_i = 1, e.g. "-1,1".
    #[arg(long, allow_hyphen_values = true)]
    normalization: Option<String>,
    /// Ample class as coefficients of c_1(U_i), e.g. "-3,2".
    #[arg(long, allow_hyphen_values = true)]
    polarization: Option<String>,
    /// Number of Hilbert series values.
    #[arg(long, value_name = "N")]
    series_length: Option<usize>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::input(format!("cannot parse {what} entry {x:?}")))
        })
        .collect()
}

impl Job {
    fn label(&self) -> String {
        match &self.kronecker {
            Some(k) => format!("K_{}({},{})", k[0], k[1], k[2]),
            None => self.file.clone().unwrap_or_default(),
        }
    }

    fn presentation(&self) -> Result<Presentation> {
        let (quiver, dims, theta): (_, DimVector, Stability) = match (&self.kronecker, &self.file) {
            (Some(k), _) => {
                let data = kronecker(k[0], k[1], k[2])?;
                (data.quiver, data.dims, data.theta)
            }
            (None, Some(path)) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::input(format!("cannot read {path}: {e}")))?;
                QuiverSpec::parse(&text)?.resolve()?
            }
            (None, None) => return Err(Error::input("give --kronecker or --file")),
        };
        let theta = match &self.theta {
            Some(t) => Stability::new(parse_list(t, "theta")?),
            None => theta,
        };
        let normalization = match &self.normalization {
            Some(a) => Some(Normalization::new(parse_list(a, "normalization")?, &dims)?),
            None => None,
        };
        Presentation::build(&quiver, &dims, &theta, normalization, &BuildOptions::default())
    }

    fn report_options(&self) -> Result<ReportOptions> {
        Ok(ReportOptions {
            polarization: self
                .polarization
                .as_deref()
                .map(|h| parse_list(h, "polarization"))
                .transpose()?,
            series_length: self.series_length,
            todd_series: None,
        })
    }
}

fn render_class(p: &Presentation, c: &ChowClass) -> Vec<(usize, String)> {
    let layout = p.layout();
    (0..=p.dimension() as usize)
        .map(|n| {
            let part = p.lift(&c.homogeneous(n));
            (n, part.render(p.weights(), |i| layout.elementary_name(i)))
        })
        .collect()
}

fn emit_class(job: &Job, p: &Presentation, name: &str, c: &ChowClass) {
    let parts = render_class(p, c);
    match job.format {
        Format::Table => {
            println!("{name} of {}", job.label());
            for (n, s) in parts {
                println!("  degree {n:>2}: {s}");
            }
        }
        Format::Json => {
            let parts: Vec<_> = parts.into_iter().map(|(n, s)| json!({"degree": n, "class": s})).collect();
            println!("{}", serde_json::to_string_pretty(&json!({ "moduli": job.label(), name: parts })).unwrap());
        }
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Invariants(job) => {
            let p = job.presentation()?;
            let report = InvariantReport::compute(&p, &job.report_options()?)?;
            match job.format {
                Format::Table => print!("{}", report.render_table(&job.label())),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap()),
            }
        }
        Command::PointClass(job) => {
            let p = job.presentation()?;
            let point = p.point_class()?;
            if p.point_class_side(true)? != point {
                return Err(Error::structural("the two point class expressions disagree"));
            }
            emit_class(&job, &p, "point_class", &point);
        }
        Command::Todd(job) => {
            let p = job.presentation()?;
            emit_class(&job, &p, "todd_class", &p.todd_class()?);
        }
        Command::Hilbert(job) => {
            let p = job.presentation()?;
            let options = job.report_options()?;
            let polarization = picard_index_and_h(&p, options.polarization.as_deref())?;
            let len = options.series_length.unwrap_or(p.dimension() as usize + 1);
            let series = hilbert_series(&p, &polarization.h, &p.todd_class()?, len)?;
            let polynomial: Vec<String> = strings::<BigRational>(&series.polynomial);
            match job.format {
                Format::Table => {
                    println!("Hilbert series of {}", job.label());
                    println!("  values     {}", strings(&series.values).join(", "));
                    println!("  numerator  {}", strings(&series.numerator).join(", "));
                    println!("  polynomial {}", polynomial.join(", "));
                }
                Format::Json => {
                    let value = json!({
                        "moduli": job.label(),
                        "values": strings(&series.values),
                        "numerator": strings(&series.numerator),
                        "polynomial": polynomial,
                    });
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
            }
        }
        Command::Presentation(job) => {
            let p = job.presentation()?;
            match job.format {
                Format::Table => print!("{}", p.render()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&p.summary()).unwrap()),
            }
        }
        Command::Check {
            level,
            extended,
            tamper_todd,
        } => {
            let options = CheckOptions {
                level: match level {
                    CheckLevel::Quick => Level::Quick,
                    CheckLevel::Full => Level::Full,
                },
                extended,
                tamper_todd,
            };
            let outcomes = check::run(&options, |o| {
                let status = if o.passed { "ok  " } else { "FAIL" };
                if o.detail.is_empty() {
                    println!("{status} {} ({:.1}s)", o.name, o.seconds);
                } else {
                    println!("{status} {} ({:.1}s): {}", o.name, o.seconds, o.detail);
                }
            });
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            println!("{} passed, {failed} failed", outcomes.len() - failed);
            return Ok(failed == 0);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
