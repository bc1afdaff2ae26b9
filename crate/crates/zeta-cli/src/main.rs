//! Command-line front end: evaluate local factors, the completed zeta
//! function, global zeta integrals, and completed Dirichlet L-functions;
//! scan grids to CSV; run the named verification suites.
//!
//! Exit codes: 0 success or all checks passed, 1 verification failure,
//! 2 usage error, 3 numerical non-convergence.

mod literals;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use adelic::error::Error as AdelicError;
use adelic::global_zeta::{
    completed_dirichlet_l, completed_lambda, functional_equation_defect, global_zeta_eval,
    FeOutcome, ZetaOutcome,
};
use adelic::local_zeta::{arch_zeta, local_zeta_factor};
use adelic::quasichar::{QuasiCharacter, UnitaryPart};
use adelic::schwartz::TwistedStepFunction;
use adelic::verify::run_suite;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NON_CONVERGENCE: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Human,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "zeta-cli",
    about = "Adelic zeta computations over Q: local factors, completed zeta, Dirichlet L, scans, verification",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one local zeta factor at s: a finite place (`--p <prime>`)
    /// or the real place (`--p real`).
    Local {
        /// Place: a prime number or the word `real`.
        #[arg(long)]
        p: String,
        /// Exponent s, e.g. `2` or `0.5+14.1i`.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Test-function literal; defaults to the standard component.
        #[arg(long = "fn")]
        function: Option<String>,
        #[arg(long, value_enum, default_value_t = OutputMode::Human)]
        out: OutputMode,
    },
    /// Evaluate the completed zeta function Lambda(s).
    Lambda {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = OutputMode::Human)]
        out: OutputMode,
    },
    /// Evaluate the global zeta integral Z(f, chi, s).
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Test-function literal, e.g.
        /// `gauss:a=1,k=0|step:p=2;(c=1,b=0,a=0,n=1)`.
        #[arg(long = "fn")]
        function: Option<String>,
        /// Dirichlet character address `modulus,index`; omitted = trivial.
        #[arg(long = "char")]
        character: Option<String>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = OutputMode::Human)]
        out: OutputMode,
    },
    /// Evaluate the completed Dirichlet L-function Lambda(s, chi).
    Dirichlet {
        #[arg(long = "char")]
        character: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = OutputMode::Human)]
        out: OutputMode,
    },
    /// Evaluate on a vertical grid re + i*im for im from --im-from to
    /// --im-to in --step increments.
    Scan {
        #[arg(long, allow_negative_numbers = true)]
        re: f64,
        #[arg(long = "im-from", allow_negative_numbers = true)]
        im_from: f64,
        #[arg(long = "im-to", allow_negative_numbers = true)]
        im_to: f64,
        #[arg(long)]
        step: f64,
        #[arg(long = "fn")]
        function: Option<String>,
        #[arg(long = "char")]
        character: Option<String>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = OutputMode::Csv)]
        out: OutputMode,
    },
    /// Run a named verification suite:
    /// artin | poisson | fe | residues | theta | local-oracle.
    Verify {
        suite: String,
        /// Trial count for the randomized exact suites.
        #[arg(long, default_value_t = 1000)]
        count: u64,
    },
}

#[derive(Serialize)]
struct JsonComplex {
    re: f64,
    im: f64,
}

impl From<Complex64> for JsonComplex {
    fn from(z: Complex64) -> Self {
        JsonComplex { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
struct JsonPole {
    location: JsonComplex,
    residue: JsonComplex,
}

#[derive(Serialize)]
struct JsonEvaluation {
    s: JsonComplex,
    value: Option<JsonComplex>,
    pole: Option<JsonPole>,
    /// Defect diagnostics: |lhs - rhs| of the functional equation at s,
    /// when both sides are finite.
    fe_defect: Option<f64>,
}

fn format_complex_human(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.10}", z.re)
    } else if z.im < 0.0 {
        format!("{:.10}-{:.10}i", z.re, -z.im)
    } else {
        format!("{:.10}+{:.10}i", z.re, z.im)
    }
}

fn print_outcome(
    out: OutputMode,
    s: Complex64,
    outcome: &ZetaOutcome,
    fe_defect: Option<f64>,
) -> Result<(), String> {
    match out {
        OutputMode::Human => match outcome {
            ZetaOutcome::Value(v) => println!("{}", format_complex_human(*v)),
            ZetaOutcome::Pole { location, residue } => println!(
                "pole at s = {} with residue {}",
                format_complex_human(*location),
                format_complex_human(*residue)
            ),
        },
        OutputMode::Json => {
            let eval = JsonEvaluation {
                s: s.into(),
                value: outcome.value().map(Into::into),
                pole: match outcome {
                    ZetaOutcome::Pole { location, residue } => Some(JsonPole {
                        location: (*location).into(),
                        residue: (*residue).into(),
                    }),
                    ZetaOutcome::Value(_) => None,
                },
                fe_defect,
            };
            println!(
                "{}",
                serde_json::to_string(&eval).map_err(|e| e.to_string())?
            );
        }
        OutputMode::Csv => {
            println!("re_s,im_s,re_value,im_value,abs_value,pole_flag");
            println!("{}", csv_row(s, outcome));
        }
    }
    Ok(())
}

fn csv_row(s: Complex64, outcome: &ZetaOutcome) -> String {
    match outcome {
        ZetaOutcome::Value(v) => {
            format!("{},{},{},{},{},0", s.re, s.im, v.re, v.im, v.norm())
        }
        ZetaOutcome::Pole { .. } => {
            format!("{},{},nan,nan,nan,1", s.re, s.im)
        }
    }
}

enum Failure {
    Usage(String),
    NonConvergence(String),
}

impl From<AdelicError> for Failure {
    fn from(e: AdelicError) -> Self {
        match e {
            AdelicError::NonConvergence { .. } => Failure::NonConvergence(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<String> for Failure {
    fn from(msg: String) -> Self {
        Failure::Usage(msg)
    }
}

fn build_character(text: Option<&str>) -> Result<QuasiCharacter, Failure> {
    match text {
        None => Ok(QuasiCharacter::trivial(Complex64::new(0.0, 0.0))),
        Some(addr) => {
            let chi = literals::parse_character(addr)?;
            Ok(QuasiCharacter::new(
                UnitaryPart::Dirichlet(chi),
                Complex64::new(0.0, 0.0),
            ))
        }
    }
}

fn character_parity(chi: &QuasiCharacter) -> u8 {
    match &chi.unitary {
        UnitaryPart::Dirichlet(d) => d.parity(),
        _ => 0,
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Local { p, s, function, out } => {
            let s = literals::parse_complex(&s)?;
            let outcome = if p == "real" {
                let f = literals::parse_function(function.as_deref(), 0)?;
                let parity = if f.arch().terms().iter().all(|t| t.degree == 1) {
                    1
                } else {
                    0
                };
                match arch_zeta(f.arch(), parity, s) {
                    Ok(v) => ZetaOutcome::Value(v),
                    Err(AdelicError::GammaPole { location }) => ZetaOutcome::Pole {
                        location,
                        residue: Complex64::new(f64::NAN, 0.0),
                    },
                    Err(e) => return Err(e.into()),
                }
            } else {
                let prime: u64 = p
                    .parse()
                    .map_err(|_| Failure::Usage(format!("bad place `{p}`")))?;
                let f = literals::parse_function(function.as_deref(), 0)?;
                let part = f
                    .finite_parts()
                    .get(&prime)
                    .cloned()
                    .unwrap_or_else(|| TwistedStepFunction::integers_indicator(prime));
                let factor = local_zeta_factor(&part, Complex64::new(1.0, 0.0));
                ZetaOutcome::Value(factor.eval_at_exponent(prime, s)?)
            };
            print_outcome(out, s, &outcome, None)?;
            Ok(0)
        }
        Command::Lambda { s, tol, out } => {
            let s = literals::parse_complex(&s)?;
            let outcome = completed_lambda(s, tol)?;
            let fe_defect = match (&outcome, out) {
                (ZetaOutcome::Value(v), OutputMode::Json) => {
                    match completed_lambda(Complex64::new(1.0, 0.0) - s, tol)? {
                        ZetaOutcome::Value(w) => Some((v - w).norm()),
                        ZetaOutcome::Pole { .. } => None,
                    }
                }
                _ => None,
            };
            print_outcome(out, s, &outcome, fe_defect)?;
            Ok(0)
        }
        Command::Zeta {
            s,
            function,
            character,
            tol,
            out,
        } => {
            let s = literals::parse_complex(&s)?;
            let chi = build_character(character.as_deref())?;
            let f = literals::parse_function(function.as_deref(), character_parity(&chi))?;
            let outcome = global_zeta_eval(&f, &chi.with_exponent(s), s, tol)?;
            let fe_defect = if out == OutputMode::Json {
                match &chi.unitary {
                    UnitaryPart::Dirichlet(d) => {
                        let eps = d.epsilon_factor()?;
                        let lhs = completed_dirichlet_l(d, s, tol)?;
                        let rhs = completed_dirichlet_l(
                            &d.conjugate(),
                            Complex64::new(1.0, 0.0) - s,
                            tol,
                        )?;
                        Some((lhs - eps * rhs).norm())
                    }
                    _ => match functional_equation_defect(&f, &chi, s, tol)? {
                        FeOutcome::Defect(d) => Some(d),
                        FeOutcome::PoleAdjacent => None,
                    },
                }
            } else {
                None
            };
            print_outcome(out, s, &outcome, fe_defect)?;
            Ok(0)
        }
        Command::Dirichlet {
            character,
            s,
            tol,
            out,
        } => {
            let s = literals::parse_complex(&s)?;
            let chi = literals::parse_character(&character)?;
            let value = completed_dirichlet_l(&chi, s, tol)?;
            let fe_defect = if out == OutputMode::Json {
                let eps = chi.epsilon_factor()?;
                let dual =
                    completed_dirichlet_l(&chi.conjugate(), Complex64::new(1.0, 0.0) - s, tol)?;
                Some((value - eps * dual).norm())
            } else {
                None
            };
            print_outcome(out, s, &ZetaOutcome::Value(value), fe_defect)?;
            Ok(0)
        }
        Command::Scan {
            re,
            im_from,
            im_to,
            step,
            function,
            character,
            tol,
            out,
        } => {
            if step.is_nan() || step <= 0.0 {
                return Err(Failure::Usage("step must be positive".into()));
            }
            if im_to < im_from {
                return Err(Failure::Usage("im-to must be >= im-from".into()));
            }
            let chi = build_character(character.as_deref())?;
            let f = literals::parse_function(function.as_deref(), character_parity(&chi))?;
            let steps = ((im_to - im_from) / step + 0.5).floor() as usize;
            let mut rows = Vec::with_capacity(steps + 1);
            for k in 0..=steps {
                let s = Complex64::new(re, im_from + k as f64 * step);
                let outcome = global_zeta_eval(&f, &chi.with_exponent(s), s, tol)?;
                rows.push((s, outcome));
            }
            match out {
                OutputMode::Csv => {
                    let mut text =
                        String::from("re_s,im_s,re_value,im_value,abs_value,pole_flag\n");
                    for (s, outcome) in &rows {
                        text.push_str(&csv_row(*s, outcome));
                        text.push('\n');
                    }
                    print!("{text}");
                }
                OutputMode::Json => {
                    let evals: Vec<JsonEvaluation> = rows
                        .iter()
                        .map(|(s, outcome)| JsonEvaluation {
                            s: (*s).into(),
                            value: outcome.value().map(Into::into),
                            pole: match outcome {
                                ZetaOutcome::Pole { location, residue } => Some(JsonPole {
                                    location: (*location).into(),
                                    residue: (*residue).into(),
                                }),
                                ZetaOutcome::Value(_) => None,
                            },
                            fe_defect: None,
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string(&evals).map_err(|e| e.to_string())?
                    );
                }
                OutputMode::Human => {
                    for (s, outcome) in &rows {
                        match outcome {
                            ZetaOutcome::Value(v) => println!(
                                "s = {}: {}",
                                format_complex_human(*s),
                                format_complex_human(*v)
                            ),
                            ZetaOutcome::Pole { location, .. } => {
                                println!("s = {}: pole at {location}", format_complex_human(*s))
                            }
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Verify { suite, count } => {
            let results = run_suite(&suite, count)?;
            let mut all_passed = true;
            for r in &results {
                all_passed &= r.passed;
                println!(
                    "{} {}: {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                );
            }
            Ok(if all_passed { 0 } else { EXIT_CHECK_FAILED })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::NonConvergence(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_NON_CONVERGENCE)
        }
    }
}
