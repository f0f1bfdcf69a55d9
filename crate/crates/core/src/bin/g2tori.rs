//! Command-line front end. Decisions exit with 0 (YES), 3 (NO) or
//! 4 (INCONCLUSIVE); malformed input exits with 64 and internal errors with 70.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use g2tori::arith::{parse_rational, squarefree_class, Rational};
use g2tori::composition::CompositionAlgebra;
use g2tori::engine::{
    decide_laurent, decide_over_q, decide_over_r, odd_degree_reduction, Decision, EngineConfig,
    LaurentScenario, Verdict,
};
use g2tori::error::Error;
use g2tori::etale::{CubicEtale, QuadraticEtale, TorusType};
use g2tori::quadform::QuadForm;
use g2tori::weyl::{h1, lattice_catalog, Subgroup};
use g2tori::wire;

const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(
    name = "g2tori",
    version,
    about = "Maximal tori of G2 over Q, R and Q((t))"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Octonion algebras given by doubling parameters.
    #[command(subcommand)]
    Octonion(OctonionCmd),
    /// Existence of a maximal torus of a given type.
    #[command(subcommand)]
    Embed(EmbedCmd),
    /// The Laurent series family over Q((t)).
    #[command(subcommand)]
    Laurent(LaurentCmd),
    /// Quadratic forms over Q.
    #[command(subcommand)]
    Form(FormCmd),
    /// Cohomology of subgroups of W0.
    #[command(subcommand)]
    Cohomology(CohomologyCmd),
}

#[derive(Subcommand)]
enum OctonionCmd {
    /// Split or anisotropic, with the norm form.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
    /// Isomorphism test via norm forms.
    Isomorphic {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
}

#[derive(Subcommand)]
enum EmbedCmd {
    /// Decide over Q.
    Decide {
        #[arg(long, allow_hyphen_values = true)]
        octonion: String,
        #[arg(long, allow_hyphen_values = true)]
        quadratic: String,
        /// split | partial:e | field:c0,c1,c2
        #[arg(long, allow_hyphen_values = true)]
        cubic: String,
        #[arg(long, default_value_t = 10)]
        height: u32,
        #[arg(long)]
        json: bool,
    },
    /// Decide over R.
    Real {
        #[command(flatten)]
        kind: RealKind,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        delta: i64,
        #[arg(long)]
        json: bool,
    },
    /// Combine answers over extensions of known degree.
    OddDegree {
        /// Comma list of degree:YES|NO, e.g. 2:YES,3:YES
        #[arg(long)]
        points: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct RealKind {
    /// Compact (anisotropic) form of G2.
    #[arg(long)]
    definite: bool,
    /// Split form of G2.
    #[arg(long)]
    split: bool,
}

#[derive(Subcommand)]
enum LaurentCmd {
    /// Verdicts over K, K ⊗ k′ and K ⊗ l for C = C(Q, t).
    Theorem {
        #[arg(long, allow_hyphen_values = true)]
        quaternion: String,
        #[arg(long, allow_hyphen_values = true)]
        quadratic: String,
        #[arg(long, allow_hyphen_values = true)]
        cubic: String,
    },
}

#[derive(Subcommand)]
enum FormCmd {
    /// Isotropy over Q; the form is a comma list or a {"diag":[...]} literal.
    Isotropic {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Isometry over Q.
    Isometric {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Witt index and anisotropic dimension.
    Witt {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// The trace form x ↦ Tr(λx²) of a cubic étale algebra.
    Transfer {
        #[arg(long, allow_hyphen_values = true)]
        cubic: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
}

#[derive(Subcommand)]
enum CohomologyCmd {
    /// Elementary divisors of H¹(Γ, L).
    H1 {
        /// A name (trivial, center, A3, S3, Z2xA3, graph, W0, ...) or a list like +123,-213.
        #[arg(long, allow_hyphen_values = true)]
        group: String,
        /// T0hat, T0coch, eps, N, M, Ilk, Zsgn; a trailing * takes the dual.
        #[arg(long)]
        lattice: String,
    },
}

enum Outcome {
    Decision(Decision),
    Done,
}

fn rationals(list: &str) -> Result<Vec<Rational>, Error> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',').map(parse_rational).collect()
}

fn form_arg(s: &str) -> Result<QuadForm, Error> {
    if s.trim_start().starts_with('{') {
        wire::parse_form(s)
    } else {
        QuadForm::from_rationals(&rationals(s)?)
    }
}

fn quadratic_arg(s: &str) -> Result<QuadraticEtale, Error> {
    Ok(QuadraticEtale::new(squarefree_class(&parse_rational(s)?)?))
}

fn points_arg(s: &str) -> Result<Vec<(u64, Decision)>, Error> {
    s.split(',')
        .map(|item| {
            let bad = || Error::Parse(format!("expected degree:YES|NO, got {item:?}"));
            let (deg, dec) = item.trim().split_once(':').ok_or_else(bad)?;
            let deg = deg.parse::<u64>().map_err(|_| bad())?;
            let dec = match dec {
                "YES" => Decision::Yes,
                "NO" => Decision::No,
                _ => return Err(bad()),
            };
            Ok((deg, dec))
        })
        .collect()
}

fn print_verdict(v: &Verdict, as_json: bool) {
    if as_json {
        println!("{}", v.to_json());
    } else {
        println!("{} ({})", v.decision, v.rule);
        for (k, w) in &v.witnesses {
            println!("  {k}: {w}");
        }
        for c in &v.crosschecks {
            println!("  crosscheck {}: {}", c.rule, c.decision);
        }
    }
}

fn print_json(v: Value) {
    println!("{v}");
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Octonion(OctonionCmd::Classify { params }) => {
            let a = CompositionAlgebra::new(rationals(&params)?)?;
            let split = a.is_split()?;
            print_json(json!({
                "algebra": wire::algebra_to_json(&a),
                "dim": a.dim(),
                "split": split,
                "norm_form": wire::form_to_json(&a.norm_form()),
            }));
            Ok(Outcome::Done)
        }
        Command::Octonion(OctonionCmd::Isomorphic { left, right }) => {
            let a = CompositionAlgebra::new(rationals(&left)?)?;
            let b = CompositionAlgebra::new(rationals(&right)?)?;
            let iso = a.is_isomorphic(&b);
            print_json(json!({"isomorphic": iso}));
            Ok(Outcome::Decision(Decision::from_bool(iso)))
        }
        Command::Embed(EmbedCmd::Decide {
            octonion,
            quadratic,
            cubic,
            height,
            json,
        }) => {
            let c = CompositionAlgebra::new(rationals(&octonion)?)?;
            let t = TorusType::new(quadratic_arg(&quadratic)?, cubic.parse::<CubicEtale>()?);
            let cfg = EngineConfig {
                height,
                ..EngineConfig::default()
            };
            let v = decide_over_q(&c, &t, &cfg)?;
            print_verdict(&v, json);
            Ok(Outcome::Decision(v.decision))
        }
        Command::Embed(EmbedCmd::Real {
            kind,
            d,
            delta,
            json,
        }) => {
            let v = decide_over_r(kind.definite, d, delta)?;
            print_verdict(&v, json);
            Ok(Outcome::Decision(v.decision))
        }
        Command::Embed(EmbedCmd::OddDegree { points, json }) => {
            let v = odd_degree_reduction(&points_arg(&points)?)?;
            print_verdict(&v, json);
            Ok(Outcome::Decision(v.decision))
        }
        Command::Laurent(LaurentCmd::Theorem {
            quaternion,
            quadratic,
            cubic,
        }) => {
            let q = rationals(&quaternion)?;
            if q.len() != 2 {
                return Err(Error::Parse(format!(
                    "--quaternion takes a,b, got {quaternion:?}"
                )));
            }
            let s = LaurentScenario::new(
                (q[0].clone(), q[1].clone()),
                quadratic_arg(&quadratic)?.d,
                cubic.parse()?,
            )?;
            let v = decide_laurent(&s)?;
            print_json(serde_json::to_value(&v).expect("verdicts serialize"));
            Ok(Outcome::Done)
        }
        Command::Form(FormCmd::Isotropic { form }) => {
            let q = form_arg(&form)?;
            let iso = q.is_isotropic();
            print_json(json!({"form": wire::form_to_json(&q), "isotropic": iso}));
            Ok(Outcome::Decision(Decision::from_bool(iso)))
        }
        Command::Form(FormCmd::Isometric { left, right }) => {
            let iso = form_arg(&left)?.is_isometric(&form_arg(&right)?);
            print_json(json!({"isometric": iso}));
            Ok(Outcome::Decision(Decision::from_bool(iso)))
        }
        Command::Form(FormCmd::Witt { form }) => {
            let q = form_arg(&form)?;
            let (index, aniso) = q.witt_decompose();
            print_json(
                json!({"form": wire::form_to_json(&q), "witt_index": index, "anisotropic_dim": aniso}),
            );
            Ok(Outcome::Done)
        }
        Command::Form(FormCmd::Transfer { cubic, lambda }) => {
            let l: CubicEtale = cubic.parse()?;
            let lam = rationals(&lambda)?;
            let t = l.trace_transfer_form(&lam)?;
            print_json(json!({
                "cubic": wire::cubic_to_json(&l),
                "transfer_form": wire::form_to_json(&t),
                "norm_is_square": l.norm_is_square(&lam)?,
            }));
            Ok(Outcome::Done)
        }
        Command::Cohomology(CohomologyCmd::H1 { group, lattice }) => {
            let gamma = Subgroup::parse(&group)?;
            let l = lattice_catalog().lattice(&lattice)?;
            let divisors = h1(&gamma, &l);
            print_json(json!({
                "group": gamma.elements().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "lattice": lattice,
                "h1": divisors,
            }));
            Ok(Outcome::Done)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Decision(d)) => ExitCode::from(d.exit_code() as u8),
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Err(e @ Error::CrossCheckDisagreement { .. }) => {
            eprintln!("internal error: {e}");
            ExitCode::from(EXIT_INTERNAL)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
