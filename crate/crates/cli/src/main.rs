//! `avatar`: command-line front end to the avatar-core library.
//!
//! Exit status: 0 on success, 1 on a domain error or a failed check, 2 on
//! usage errors and malformed input.

use std::process::ExitCode;

use avatar_core::arith::{parse_poly, parse_rational, Rational, Var};
use avatar_core::avatar::{
    build_surface_from_text, emit_surface, specialize_check, tower_consistency_check, SurfaceFormat,
};
use avatar_core::conic::{
    coordinate_ring_normal_form, find_point, parametrize_from_point, Conic, ConicPoint,
};
use avatar_core::local::{are_isomorphic, classification_record, ramified_places, TernaryForm};
use avatar_core::quaternion::{Quaternion, QuaternionAlgebra};
use avatar_core::selftest::{self, Depth};
use avatar_core::{Error, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "avatar",
    version,
    about = "Exact quaternion algebra, conic and avatar-surface computations"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlgebraArgs {
    /// First parameter, a nonzero rational such as -1 or 3/2.
    #[arg(short, allow_hyphen_values = true)]
    a: String,
    /// Second parameter.
    #[arg(short, allow_hyphen_values = true)]
    b: String,
}

impl AlgebraArgs {
    fn rationals(&self) -> Result<(Rational, Rational)> {
        Ok((parse_rational(&self.a)?, parse_rational(&self.b)?))
    }

    fn algebra(&self) -> Result<QuaternionAlgebra> {
        let (a, b) = self.rationals()?;
        QuaternionAlgebra::new(a, b)
    }

    fn conic(&self) -> Result<Conic> {
        let (a, b) = self.rationals()?;
        Conic::new(a, b)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reduced norm x0^2 - a x^2 - b y^2 + ab z^2.
    Norm {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Element such as "1 + 2*i - 1/2*k".
        #[arg(short, allow_hyphen_values = true)]
        e: String,
    },
    /// Product of two or more elements, left to right.
    Mul {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(short, allow_hyphen_values = true, num_args = 1, required = true)]
        e: Vec<String>,
    },
    /// Inverse of an element of nonzero norm.
    Inverse {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(short, allow_hyphen_values = true)]
        e: String,
    },
    /// Division or split, with the ramification set.
    IsDivision {
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// Places where the algebra ramifies.
    Ramified {
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// Compares two algebras: pass -a and -b twice each.
    Isomorphic {
        #[arg(short, allow_hyphen_values = true, num_args = 1, required = true)]
        a: Vec<String>,
        #[arg(short, allow_hyphen_values = true, num_args = 1, required = true)]
        b: Vec<String>,
    },
    /// Smallest rational point on z^2 = a x^2 + b y^2.
    ConicPoint {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Initial height bound; the search deepens by factors of 10.
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
    },
    /// Parametrization of z^2 = a x^2 + b y^2 by binary forms in u, v.
    Parametrize {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Base point "x,y,z"; searched for when omitted.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
    },
    /// Normal form of a polynomial in x, y, z modulo -a x^2 - b y^2 + ab z^2.
    RingReduce {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(short, allow_hyphen_values = true)]
        p: String,
    },
    /// Surface equations from p(u) and q(w).
    AvatarBuild {
        #[arg(short, allow_hyphen_values = true)]
        p: String,
        #[arg(short, allow_hyphen_values = true)]
        q: String,
        /// text, json or ideal; --json is the same as --format json.
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Specialization check for rational -a, -b, or tower check for -p, -q.
    AvatarCheck {
        #[arg(short, allow_hyphen_values = true, requires = "b", conflicts_with_all = ["p", "q"])]
        a: Option<String>,
        #[arg(short, allow_hyphen_values = true, requires = "a")]
        b: Option<String>,
        #[arg(short, allow_hyphen_values = true, requires = "q")]
        p: Option<String>,
        #[arg(short, allow_hyphen_values = true, requires = "p")]
        q: Option<String>,
    },
    /// Runs the built-in property suites.
    Selftest {
        #[arg(long, default_value = "quick")]
        depth: String,
        /// Flip the Hilbert symbol at 2 to confirm the suites catch it.
        #[arg(long, hide = true)]
        mutate_symbol_at_two: bool,
    },
}

/// Successful output: the text to print and whether the command's check held.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, ok: true }
    }
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn json_line(v: &Value) -> String {
    line(serde_json::to_string(v).expect("serializable"))
}

fn quaternion_out(q: &Quaternion, as_json: bool) -> String {
    if as_json {
        json_line(&serde_json::to_value(q.to_record()).expect("serializable"))
    } else {
        line(q)
    }
}

fn parse_point(text: &str) -> Result<ConicPoint> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let int = |s: &str| match parse_rational(s) {
        Ok(r) if r.is_integer() => Ok(r.to_integer()),
        _ => Err(Error::InvalidNumber(s.to_string())),
    };
    match parts.as_slice() {
        [x, y, z] => ConicPoint::new(int(x)?, int(y)?, int(z)?),
        _ => Err(Error::InvalidNumber(text.to_string())),
    }
}

fn run(command: Command, as_json: bool) -> Result<Outcome> {
    let out = match command {
        Command::Norm { alg, e } => {
            let n = alg.algebra()?.parse(&e)?.norm();
            if as_json {
                json_line(&json!({ "norm": n.to_string() }))
            } else {
                line(n)
            }
        }
        Command::Mul { alg, e } => {
            let alg = alg.algebra()?;
            let mut acc = alg.one();
            for text in &e {
                acc = acc.mul(&alg.parse(text)?)?;
            }
            quaternion_out(&acc, as_json)
        }
        Command::Inverse { alg, e } => {
            quaternion_out(&alg.algebra()?.parse(&e)?.inverse()?, as_json)
        }
        Command::IsDivision { alg } => {
            let record = classification_record(&alg.algebra()?)?;
            if as_json {
                json_line(
                    &json!({ "division": record["division"], "ramified": record["ramified"] }),
                )
            } else {
                let ram = ramified_places(&alg.algebra()?)?;
                let verdict = if ram.is_empty() { "split" } else { "division" };
                format!("{verdict}\nramified: {ram}\n")
            }
        }
        Command::Ramified { alg } => {
            let ram = ramified_places(&alg.algebra()?)?;
            if as_json {
                json_line(&ram.to_json())
            } else {
                line(ram)
            }
        }
        Command::Isomorphic { a, b } => {
            if a.len() != 2 || b.len() != 2 {
                return Err(Error::Record(
                    "isomorphic needs -a and -b exactly twice".into(),
                ));
            }
            let first = QuaternionAlgebra::new(parse_rational(&a[0])?, parse_rational(&b[0])?)?;
            let second = QuaternionAlgebra::new(parse_rational(&a[1])?, parse_rational(&b[1])?)?;
            let iso = are_isomorphic(&first, &second)?;
            if as_json {
                json_line(&json!({
                    "isomorphic": iso,
                    "ramified": [ramified_places(&first)?.to_json(), ramified_places(&second)?.to_json()],
                }))
            } else {
                line(iso)
            }
        }
        Command::ConicPoint { alg, bound } => {
            let p = find_point(&alg.conic()?, bound)?;
            if as_json {
                json_line(&serde_json::to_value(&p).expect("serializable"))
            } else {
                line(p)
            }
        }
        Command::Parametrize { alg, point, bound } => {
            let conic = alg.conic()?;
            let p0 = match point {
                Some(text) => parse_point(&text)?,
                None => find_point(&conic, bound)?,
            };
            let par = parametrize_from_point(&conic, &p0)?;
            if as_json {
                json_line(&json!({
                    "point": serde_json::to_value(&p0).expect("serializable"),
                    "x": par.x.to_string(),
                    "y": par.y.to_string(),
                    "z": par.z.to_string(),
                }))
            } else {
                par.to_lines()
            }
        }
        Command::RingReduce { alg, p } => {
            let (a, b) = alg.rationals()?;
            let form = TernaryForm::new(a, b)?;
            let f = parse_poly(&p, &[Var::X, Var::Y, Var::Z])?;
            let nf = coordinate_ring_normal_form(&f, &form);
            if as_json {
                json_line(&json!({ "normal_form": nf.to_string() }))
            } else {
                line(nf)
            }
        }
        Command::AvatarBuild { p, q, format } => {
            let format: SurfaceFormat = if as_json {
                SurfaceFormat::Json
            } else {
                format.parse()?
            };
            let surface = build_surface_from_text(&p, &q)?;
            for w in &surface.warnings {
                eprintln!("warning: {w}");
            }
            emit_surface(&surface, format)
        }
        Command::AvatarCheck { a, b, p, q } => {
            let holds = match (a, b, p, q) {
                (Some(a), Some(b), None, None) => {
                    specialize_check(&parse_rational(&a)?, &parse_rational(&b)?)?
                }
                (None, None, Some(p), Some(q)) => {
                    let s = build_surface_from_text(&p, &q)?;
                    tower_consistency_check(&s.p, &s.q)?
                }
                _ => return Err(Error::Record("pass either -a and -b, or -p and -q".into())),
            };
            let text = if as_json {
                json_line(&json!({ "holds": holds }))
            } else {
                line(holds)
            };
            return Ok(Outcome { text, ok: holds });
        }
        Command::Selftest {
            depth,
            mutate_symbol_at_two,
        } => {
            let depth: Depth = depth.parse()?;
            let report = if mutate_symbol_at_two {
                selftest::run_with(depth, &selftest::symbol_with_sign_error_at_two)
            } else {
                selftest::run(depth)
            };
            let text = if as_json {
                let suites: Vec<Value> = report
                    .suites
                    .iter()
                    .map(|s| {
                        json!({
                            "name": s.name,
                            "passed": s.passed(),
                            "cases": s.cases,
                            "failures": s.failures,
                        })
                    })
                    .collect();
                json_line(&json!({ "passed": report.passed(), "suites": suites }))
            } else {
                report.to_string()
            };
            return Ok(Outcome {
                text,
                ok: report.passed(),
            });
        }
    };
    Ok(Outcome::ok(out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, cli.json) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                let record = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
                eprintln!("{}", serde_json::to_string(&record).expect("serializable"));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
