//! Command-line front end. `run` parses arguments, performs one computation
//! and returns the exit code together with what goes to stdout and stderr.

pub mod report;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::gamma::{
    gamma_alpha_ideal, gamma_star_search, tau_ci_search, verify_paper, Budget, Flavor, GammaQuery,
};
use crate::invariants::{
    equisingularity_ideal, kappa_samples, tjurina_ideal, InvariantRecord, SingularitySpec,
    KAPPA_SAMPLES,
};
use crate::poly::{parse_ideal, parse_polynomial, MonomialOrdering, Polynomial, Rational, Weights};
use crate::standard_basis::{Ideal, DEFAULT_MAX_DEGREE};

use report::{
    parse_rational, polys, BudgetEcho, GammaResult, HilbertResult, InputEcho, InvariantsResult,
    KappaWitness, Poly, ReportDocument, ResultBody, TauCiResult, VerificationResult, Q,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILED_FACTS: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gamma-sing", version, about = "Invariants of plane curve singularities in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// mu, tau, tau_es, kappa, delta and the number of branches.
    Invariants {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Hilbert-Samuel data and standard basis of an ideal.
    Hilbert {
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// gamma_alpha(f; I) for a given ideal containing the Tjurina ideal.
    GammaIdeal {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value = "0")]
        alpha: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Searched lower bound for gamma*_alpha, compared with the known values.
    GammaSearch {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value = "0")]
        alpha: String,
        #[arg(long, value_enum, default_value_t = FlavorArg::Es)]
        flavor: FlavorArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Largest colength of a complete intersection containing I^es or I^ea.
    TauCi {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = FlavorArg::Es)]
        flavor: FlavorArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check every registered table value, example and property.
    VerifyPaper {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args, Debug)]
struct SpecArgs {
    #[arg(long = "type", value_enum)]
    kind: SpecKind,
    #[arg(long)]
    k: Option<u32>,
    /// Weights `P,Q` of a semiquasihomogeneous germ.
    #[arg(long)]
    weights: Option<Weights>,
    #[arg(long)]
    poly: Option<String>,
}

#[derive(Args, Debug)]
struct CommonArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random candidate ideals in searches.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, default_value = "ds")]
    order: MonomialOrdering,
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl CommonArgs {
    fn budget(&self) -> Budget {
        let mut b = Budget::default().with_seed(self.seed);
        if let Some(n) = self.budget {
            b.random_ideals = n;
        }
        b
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SpecKind {
    #[value(name = "Ak")]
    A,
    #[value(name = "Dk")]
    D,
    #[value(name = "Ek")]
    E,
    #[value(name = "Mk")]
    M,
    #[value(name = "sqh")]
    Sqh,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlavorArg {
    Ea,
    Es,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Ea => Flavor::Ea,
            FlavorArg::Es => Flavor::Es,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Computation(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::InvalidSpec(_)
            | Error::InvalidWeights { .. }
            | Error::AlphaOutOfRange(_) => Failure::Usage(e.to_string()),
            e => Failure::Computation(e),
        }
    }
}

fn spec_of(args: &SpecArgs) -> Result<SingularitySpec, Failure> {
    let k = || args.k.ok_or_else(|| Failure::Usage("--type needs --k".into()));
    let spec = match args.kind {
        SpecKind::A => SingularitySpec::a(k()?)?,
        SpecKind::D => SingularitySpec::d(k()?)?,
        SpecKind::E => SingularitySpec::e(k()?)?,
        SpecKind::M => SingularitySpec::m(k()?)?,
        SpecKind::Sqh => {
            let (Some(w), Some(poly)) = (args.weights, args.poly.as_deref()) else {
                return Err(Failure::Usage("--type sqh needs --weights P,Q and --poly".into()));
            };
            SingularitySpec::sqh(w, parse_polynomial(poly)?)?
        }
    };
    Ok(spec)
}

fn alpha_of(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(Failure::Usage)
}

fn ideal_of(s: &str, common: &CommonArgs) -> Result<Ideal, Failure> {
    Ok(Ideal::new(parse_ideal(s)?)
        .with_ordering(common.order)
        .with_max_degree(common.max_degree))
}

fn budget_echo(b: &Budget) -> BudgetEcho {
    BudgetEcho {
        random_ideals: b.random_ideals,
        pool_size: b.pool_size,
        coefficients: b.coefficients.clone(),
        g_budget: b.g_budget,
    }
}

fn echo(command: &str, common: &CommonArgs) -> InputEcho {
    InputEcho {
        command: command.to_string(),
        seed: common.seed,
        ..InputEcho::default()
    }
}

fn echo_spec(input: &mut InputEcho, spec: &SingularitySpec) {
    input.spec = Some(spec.to_string());
    input.polynomial = Some(Poly(spec.representative()));
}

fn invariants(spec: &SingularitySpec, seed: u64) -> Result<InvariantsResult, Failure> {
    let f = spec.representative();
    let record = InvariantRecord::compute(spec, seed)?;
    let witness = kappa_samples(&f, seed, KAPPA_SAMPLES)
        .into_iter()
        .find(|s| s.value.finite() == Some(record.kappa as u64))
        .expect("kappa is attained by one of its samples");
    let g = &f.derivative_x().scale(&witness.a) + &f.derivative_y().scale(&witness.b);
    Ok(InvariantsResult {
        mu: record.mu,
        tau: record.tau,
        tau_es: record.tau_es,
        kappa: record.kappa,
        delta: record.delta,
        branches: record.branches,
        multiplicity: record.multiplicity,
        tjurina_ideal: polys(tjurina_ideal(&f).generators()),
        equisingularity_ideal: polys(equisingularity_ideal(spec)?.generators()),
        kappa_witness: KappaWitness {
            a: Q(witness.a),
            b: Q(witness.b),
            g: Poly(g),
        },
    })
}

fn hilbert(ideal: &Ideal) -> Result<HilbertResult, Failure> {
    let hs = ideal.hilbert_samuel()?;
    let staircase: Vec<Polynomial> = ideal
        .staircase()?
        .into_iter()
        .map(|m| Polynomial::monomial(m.x, m.y))
        .collect();
    Ok(HilbertResult {
        h0: hs.h0,
        h1: hs.h1,
        mult: hs.mult,
        degbound: hs.degbound,
        colength: hs.colength,
        staircase: polys(&staircase),
        standard_basis: polys(&ideal.standard_basis()?),
        min_generators: ideal.min_generators()?,
        complete_intersection: ideal.is_complete_intersection()?,
    })
}

/// Runs one command; returns the document and whether it reports failures.
fn execute(command: &Command) -> Result<(ReportDocument, bool, Format), Failure> {
    let (input, result, failed, common) = match command {
        Command::Invariants { spec, common } => {
            let spec = spec_of(spec)?;
            let mut input = echo("invariants", common);
            echo_spec(&mut input, &spec);
            (input, ResultBody::Invariants(invariants(&spec, common.seed)?), false, common)
        }
        Command::Hilbert { ideal, common } => {
            let ideal = ideal_of(ideal, common)?;
            let mut input = echo("hilbert", common);
            input.ideal = Some(polys(ideal.generators()));
            input.order = Some(common.order.to_string());
            input.max_degree = Some(common.max_degree);
            (input, ResultBody::Hilbert(hilbert(&ideal)?), false, common)
        }
        Command::GammaIdeal { spec, ideal, alpha, common } => {
            let spec = spec_of(spec)?;
            let alpha = alpha_of(alpha)?;
            let ideal = ideal_of(ideal, common)?;
            let budget = common.budget();
            let report = gamma_alpha_ideal(&spec.representative(), &ideal, &alpha, &budget)?;
            let mut input = echo("gamma-ideal", common);
            echo_spec(&mut input, &spec);
            input.ideal = Some(polys(ideal.generators()));
            input.alpha = Some(Q(alpha));
            input.max_degree = Some(common.max_degree);
            input.budget = Some(budget_echo(&budget));
            (input, ResultBody::Gamma(GammaResult::from(&report)), false, common)
        }
        Command::GammaSearch { spec, alpha, flavor, common } => {
            let spec = spec_of(spec)?;
            let alpha = alpha_of(alpha)?;
            let budget = common.budget();
            let query = GammaQuery::new(spec.clone(), alpha.clone(), (*flavor).into(), budget.clone())?;
            let report = gamma_star_search(&query)?;
            let mut input = echo("gamma-search", common);
            echo_spec(&mut input, &spec);
            input.alpha = Some(Q(alpha));
            input.flavor = Some(query.flavor.to_string());
            input.budget = Some(budget_echo(&budget));
            (input, ResultBody::Gamma(GammaResult::from(&report)), false, common)
        }
        Command::TauCi { spec, flavor, common } => {
            let spec = spec_of(spec)?;
            let budget = common.budget();
            let query = GammaQuery::new(spec.clone(), Rational::from_integer(0.into()), (*flavor).into(), budget.clone())?;
            let (tau_ci, ideal) = tau_ci_search(&query)?;
            let mut input = echo("tau-ci", common);
            echo_spec(&mut input, &spec);
            input.flavor = Some(query.flavor.to_string());
            input.budget = Some(budget_echo(&budget));
            let result = TauCiResult {
                tau_ci,
                witness_ideal: polys(ideal.generators()),
            };
            (input, ResultBody::TauCi(result), false, common)
        }
        Command::VerifyPaper { common } => {
            let budget = common.budget();
            let report = verify_paper(&budget);
            let mut input = echo("verify-paper", common);
            input.budget = Some(budget_echo(&budget));
            let failed = !report.all_passed();
            (input, ResultBody::Verification(VerificationResult::from(&report)), failed, common)
        }
    };
    Ok((ReportDocument::new(input, result), failed, common.format))
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome { code, stdout, stderr };
        }
    };
    match execute(&cli.command) {
        Ok((doc, failed, format)) => {
            let stdout = match format {
                Format::Json => report::serialize(&doc),
                Format::Table => report::render_table(&doc),
            };
            let (code, stderr) = if failed {
                (EXIT_FAILED_FACTS, "some facts failed\n".to_string())
            } else {
                (EXIT_OK, String::new())
            };
            Outcome { code, stdout, stderr }
        }
        Err(Failure::Usage(msg)) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Computation(e)) => Outcome {
            code: EXIT_COMPUTATION,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
