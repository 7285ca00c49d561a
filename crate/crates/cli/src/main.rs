use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use multizero::bounds::{
    closed_form_bound, closed_form_bound_unchecked, condition_a, condition_a_sufficient, footprint_bound,
    necessary_bound_check, sz_mult_bound, sz_sum_bound, two_var_bound, BoundParams, DEvaluator,
};
use multizero::ffpoly::{Fp, SparsePolynomial};
use multizero::oracle::{expect_closed_form_failure, lower_bound_search, verify_all, SweepSpec};
use multizero::rational::{display_exact, parse_rational};
use multizero::surface::{surface_csv, surface_grid, SurfaceSpec};
use multizero::tables::{build_table, TableFormat, TableKind, TableSpec};

/// Exact bounds on the number of grid zeros of prescribed multiplicity.
#[derive(Parser)]
#[command(name = "multizero", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one bound or criterion.
    Bound {
        #[arg(value_enum)]
        name: BoundName,
        #[command(flatten)]
        params: ParamArgs,
        /// Evaluate the closed form even when Condition A fails.
        #[arg(long)]
        unchecked: bool,
    },
    /// Print a two-variable table.
    Table(TableArgs),
    /// Oracle gap D - lower bound: one value with `--i`, otherwise a table.
    Gap {
        /// Exponents; when given, print the single gap and its witness.
        #[arg(long, value_delimiter = ',')]
        i: Option<Vec<u64>>,
        #[command(flatten)]
        table: TableArgs,
    },
    /// Sample the Condition A region on a grid over [0,1]^(m-1) as CSV.
    Surface {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        q: u64,
        /// Grid step, e.g. `1/20` or `0.05`.
        #[arg(long, default_value = "1/20")]
        step: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run the cross-verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Sweep::Default)]
        sweep: Sweep,
        #[arg(long)]
        seed: Option<u64>,
        /// Random instances per randomized check.
        #[arg(long)]
        samples: Option<usize>,
        /// Run a check that is expected to find violations instead.
        #[arg(long, value_enum)]
        expect_fail: Option<ExpectFail>,
    },
    /// Multiplicity of a polynomial at a point.
    Multiplicity {
        /// Polynomial as `GF(p): <terms>`, e.g. `GF(7): X1^2*X2 + 3`.
        #[arg(long)]
        poly: String,
        #[arg(long, value_delimiter = ',')]
        at: Vec<u64>,
        /// Use Hasse derivatives instead of translation.
        #[arg(long)]
        hasse: bool,
    },
}

#[derive(Args)]
struct ParamArgs {
    /// Exponents i_1,...,i_m of the leading monomial.
    #[arg(long, value_delimiter = ',', required = true)]
    i: Vec<u64>,
    /// Multiplicity target.
    #[arg(long)]
    r: u32,
    /// Set sizes s_1,...,s_m.
    #[arg(long, value_delimiter = ',', required = true)]
    s: Vec<u64>,
}

#[derive(Args)]
struct TableArgs {
    /// d, sz, closed_floor or gap (ignored by `gap`).
    #[arg(long, default_value = "d")]
    kind: String,
    #[arg(long, default_value_t = 3)]
    r: u32,
    #[arg(long, value_delimiter = ',', default_values_t = [5u64, 5])]
    s: Vec<u64>,
    /// Column range `a..b` (inclusive); for sz the range of i1+i2.
    #[arg(long)]
    i1: Option<String>,
    /// Row range `a..b` (inclusive).
    #[arg(long)]
    i2: Option<String>,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    out: Option<String>,
    /// Fill saturated cells instead of leaving them blank.
    #[arg(long)]
    full: bool,
    /// Mark closed-form cells below D (u) or below the oracle bound (uu).
    #[arg(long)]
    annotate: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundName {
    D,
    SzSum,
    SzMult,
    Footprint,
    ClosedForm,
    TwoVar,
    ConditionA,
    ConditionASufficient,
    Necessary,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sweep {
    Default,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpectFail {
    ClosedFormOutsideRegion,
}

enum Failure {
    /// Bad input or unmet precondition; exit 2.
    Usage(String),
    /// A verification check failed; exit 1.
    Check,
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(n) = std::env::var("MULTIZERO_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                // only fails if a pool already exists
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: MULTIZERO_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(text: &str, out: Option<&str>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("cannot write {path}: {e}"))),
        None => io::stdout().write_all(text.as_bytes()).map_err(usage),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Bound { name, params, unchecked } => {
            let params = BoundParams::new(params.i, params.r, params.s).map_err(usage)?;
            println!("{}", bound(name, &params, unchecked)?);
            Ok(())
        }
        Command::Table(args) => {
            let kind: TableKind = args.kind.parse().map_err(usage)?;
            table(kind, &args)
        }
        Command::Gap { i: Some(exps), table } => {
            let params = BoundParams::new(exps, table.r, table.s).map_err(usage)?;
            let d = DEvaluator::new().d(&params);
            let (lower, witness) =
                lower_bound_search(params.exponents(), u64::from(params.multiplicity()), params.sizes());
            let gap = d.clone() - BigUint::from(lower);
            println!("gap={gap} d={d} lower={lower} witness={witness}");
            Ok(())
        }
        Command::Gap { i: None, table: args } => table(TableKind::Gap, &args),
        Command::Surface { r, m, q, step, out } => {
            let step = parse_rational(&step).ok_or_else(|| usage(format!("cannot parse step `{step}`")))?;
            let spec = SurfaceSpec { r, m, q, step };
            let points = surface_grid(&spec).map_err(usage)?;
            emit(&surface_csv(&points, m), out.as_deref())
        }
        Command::Verify { sweep, seed, samples, expect_fail } => {
            if let Some(ExpectFail::ClosedFormOutsideRegion) = expect_fail {
                let result = expect_closed_form_failure();
                println!("{result}");
                return if result.passed() { Ok(()) } else { Err(Failure::Check) };
            }
            let mut spec = match sweep {
                Sweep::Default => SweepSpec::default(),
                Sweep::None => SweepSpec::none(),
            };
            if sweep == Sweep::Default {
                if let Some(seed) = seed {
                    spec.seed = seed;
                }
                if let Some(samples) = samples {
                    spec.samples = samples;
                }
            }
            let report = verify_all(&spec);
            print!("{report}");
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Multiplicity { poly, at, hasse } => {
            let f = SparsePolynomial::parse_with_field(&poly).map_err(usage)?;
            let field = f.field();
            let point: Vec<Fp> = at.iter().map(|&v| field.element(v)).collect();
            let m = if hasse { f.multiplicity_by_hasse(&point) } else { f.multiplicity(&point) }.map_err(usage)?;
            match m.finite() {
                Some(v) => println!("{v}"),
                None => println!("infinite"),
            }
            Ok(())
        }
    }
}

fn bound(name: BoundName, params: &BoundParams, unchecked: bool) -> Result<String, Failure> {
    let two = |p: &BoundParams| -> Result<[u64; 4], Failure> {
        match (p.exponents(), p.sizes()) {
            (&[i1, i2], &[s1, s2]) => Ok([i1, i2, s1, s2]),
            _ => Err(usage("two-var needs exactly two variables")),
        }
    };
    Ok(match name {
        BoundName::D => DEvaluator::new().d(params).to_string(),
        BoundName::SzSum => sz_sum_bound(params).to_string(),
        BoundName::SzMult => display_exact(&sz_mult_bound(params)),
        BoundName::Footprint => footprint_bound(params).map_err(usage)?.to_string(),
        BoundName::ClosedForm if unchecked => display_exact(&closed_form_bound_unchecked(params)),
        BoundName::ClosedForm => display_exact(&closed_form_bound(params).map_err(usage)?),
        BoundName::TwoVar => {
            let [i1, i2, s1, s2] = two(params)?;
            let b = two_var_bound(i1, i2, params.multiplicity(), s1, s2).map_err(usage)?;
            format!("{} [{}]", display_exact(&b.value), b.case)
        }
        BoundName::ConditionA => condition_a(params).map_err(usage)?.to_string(),
        BoundName::ConditionASufficient => condition_a_sufficient(params).map_err(usage)?.to_string(),
        BoundName::Necessary => necessary_bound_check(params).map_err(usage)?.to_string(),
    })
}

fn parse_range(text: &str) -> Result<RangeInclusive<u64>, Failure> {
    let bad = || usage(format!("cannot parse range `{text}` (expected a..b or a)"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (text, text),
    };
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn table(kind: TableKind, args: &TableArgs) -> Result<(), Failure> {
    let format: TableFormat = args.format.parse().map_err(usage)?;
    let sizes: [u64; 2] = args
        .s
        .as_slice()
        .try_into()
        .map_err(|_| usage("tables need exactly two set sizes"))?;
    if args.r == 0 || sizes.contains(&0) {
        return Err(usage("r and set sizes must be positive"));
    }
    let mut spec = TableSpec::standard(kind, args.r, sizes);
    if let Some(text) = &args.i1 {
        spec.i1 = parse_range(text)?;
    }
    if let Some(text) = &args.i2 {
        spec.i2 = parse_range(text)?;
    }
    spec.blank_saturated = !args.full;
    spec.annotate = args.annotate;
    let t = build_table(&spec).map_err(usage)?;
    emit(&t.render(format), args.out.as_deref())
}
