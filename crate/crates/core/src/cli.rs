//! Argument parsing and output rendering for the `wreath-foulkes` binary.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::chartable::{classes, irreducible_table};
use crate::coinvariant::{
    descent_basis_check, filtration_characters, graded_trace, tableau_side_trace, FlagVariant, GradingStatistic,
    DEFAULT_BASIS_BUDGET,
};
use crate::combinatorics::BoundaryConvention;
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Cyclotomic};
use crate::foulkes::{foulkes_all, foulkes_multiplicities, signed_foulkes_combinatorial};
use crate::tensor::{trace_character, ParityAssignment, DEFAULT_TENSOR_BUDGET};
use crate::verify::{self, Scope, Suite};
use crate::wreath::{
    eulerian_row, ewens_normalizer, ewens_normalizer_closed, ewens_normalizer_printed, rsk, ColoredPermutation,
};

pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "wreath-foulkes", version, about = "Foulkes characters of the wreath products Z_r wr S_n")]
pub struct Cli {
    #[arg(long, global = true)]
    pub r: Option<u32>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on basis size (coinvariant, verify) or tensor dimension (tensor-trace).
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Descent counts E(r,n,k) for k = 0..n.
    Eulerian,
    /// φ_0..φ_n as functions of the length ℓ.
    FoulkesTable,
    /// Irreducible characters, one row per multipartition.
    CharTable,
    /// Multiplicities of irreducibles in φ_k.
    Decompose {
        #[arg(long)]
        k: usize,
        /// Decompose the signed Foulkes character instead.
        #[arg(long)]
        signed: bool,
    },
    /// Colored RSK of one element, e.g. "2^1 1^0".
    Rsk {
        #[arg(long)]
        w: String,
    },
    /// Character of W on (C^{rk+1})^{⊗n}.
    TensorTrace {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        signed: bool,
        /// Parities of the r color blocks, e.g. "0,1"; defaults to all odd.
        #[arg(long)]
        parity: Option<String>,
    },
    Coinvariant {
        #[command(subcommand)]
        action: CoinvariantAction,
        #[arg(long, value_enum, default_value = "interior-color", global = true)]
        variant: VariantArg,
    },
    /// The Ewens normalizer Σ_w q^{ℓ(w)}-weighted class sum.
    Ewens {
        #[arg(long)]
        q: String,
    },
    /// Runs identity suites; the whole grid unless --r and --n pick one cell.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum CoinvariantAction {
    /// Rank of the descent monomials.
    Basis,
    /// Graded trace of w on the coinvariant algebra and its tableau form.
    Trace {
        #[arg(long)]
        w: String,
    },
    /// Graded characters of the descent filtration.
    Filtration {
        #[arg(long, value_enum, default_value = "des")]
        grading: GradingArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    InteriorColor,
    ComplementedColor,
}

impl From<VariantArg> for FlagVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::InteriorColor => FlagVariant::InteriorColor,
            VariantArg::ComplementedColor => FlagVariant::ComplementedColor,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GradingArg {
    Des,
    FirstFlag,
}

impl From<GradingArg> for GradingStatistic {
    fn from(g: GradingArg) -> Self {
        match g {
            GradingArg::Des => GradingStatistic::Des,
            GradingArg::FirstFlag => GradingStatistic::FirstFlag,
        }
    }
}

/// What the binary prints and returns.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((body, failed)) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &body) {
                    return Outcome {
                        code: EXIT_USAGE,
                        stdout: String::new(),
                        stderr: format!("error: {}: {e}\n", path.display()),
                    };
                }
                return Outcome { code: if failed { EXIT_FAIL } else { 0 }, ..Default::default() };
            }
            Outcome { code: if failed { EXIT_FAIL } else { 0 }, stdout: body, stderr: String::new() }
        }
        Err(e) => {
            let code = match e {
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_USAGE,
            };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

fn cell(cli: &Cli) -> Result<(u32, usize)> {
    match (cli.r, cli.n) {
        (Some(r), Some(n)) if r >= 1 => Ok((r, n)),
        (Some(0), _) => Err(Error::InvalidArgument("--r must be at least 1".into())),
        _ => Err(Error::InvalidArgument("this command needs --r and --n".into())),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report values serialize");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: impl IntoIterator<Item = String>) -> String {
    let mut line: String = fields.into_iter().map(|f| csv_field(&f)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

/// Renders one output body and whether it records a failure.
fn execute(cli: &Cli) -> Result<(String, bool)> {
    let csv = cli.format == Format::Csv;
    let out = match &cli.command {
        Command::Eulerian => {
            let (r, n) = cell(cli)?;
            let row = eulerian_row(r, n);
            if csv {
                csv_line(row.iter().map(ToString::to_string))
            } else {
                to_json(&json!({"r": r, "n": n, "eulerian": row.iter().map(ToString::to_string).collect::<Vec<_>>()}))
            }
        }
        Command::FoulkesTable => {
            let (r, n) = cell(cli)?;
            let phis = foulkes_all(r, n);
            if csv {
                let mut s = csv_line(std::iter::once("k".to_string()).chain((0..=n).map(|l| format!("length={l}"))));
                for (k, phi) in phis.iter().enumerate() {
                    s += &csv_line(std::iter::once(k.to_string()).chain(phi.values().iter().map(ToString::to_string)));
                }
                s
            } else {
                to_json(&json!({"r": r, "n": n, "foulkes": phis}))
            }
        }
        Command::CharTable => {
            let (r, n) = cell(cli)?;
            let table = irreducible_table(r, n);
            if csv {
                let cls = classes(r, n);
                let mut s =
                    csv_line(std::iter::once("label".to_string()).chain(cls.types.iter().map(ToString::to_string)));
                for (label, chi) in table.iter() {
                    s += &csv_line(
                        std::iter::once(label.to_string()).chain(chi.values().iter().map(ToString::to_string)),
                    );
                }
                s
            } else {
                to_json(&table.to_json())
            }
        }
        Command::Decompose { k, signed } => {
            let (r, n) = cell(cli)?;
            if *k > n {
                return Err(Error::InvalidArgument(format!("k = {k} exceeds n = {n}")));
            }
            let rows: Vec<(String, Cyclotomic)> = if *signed {
                let f = signed_foulkes_combinatorial(r, n, *k, BoundaryConvention::Complement);
                irreducible_table(r, n).decompose(&f)?.into_iter().map(|(l, c)| (l.to_string(), c)).collect()
            } else {
                foulkes_multiplicities(r, n, *k)?
                    .into_iter()
                    .map(|(l, m)| (l.to_string(), Cyclotomic::from_int(r, m as i64)))
                    .collect()
            };
            if csv {
                let mut s = csv_line(["label".to_string(), "multiplicity".to_string()]);
                for (l, c) in &rows {
                    s += &csv_line([l.clone(), c.to_string()]);
                }
                s
            } else {
                let m: Vec<_> = rows.iter().map(|(l, c)| json!({"label": l, "multiplicity": c})).collect();
                to_json(&json!({"r": r, "n": n, "k": k, "signed": signed, "multiplicities": m}))
            }
        }
        Command::Rsk { w } => {
            let (r, n) = cell(cli)?;
            let w = ColoredPermutation::parse(r, w)?;
            if w.n() != n {
                return Err(Error::InvalidArgument(format!("w has {} letters, --n is {n}", w.n())));
            }
            let (s, t) = rsk(&w);
            if csv {
                let mut out = csv_line(["tableau".to_string(), "rows".to_string()]);
                out += &csv_line(["insertion".to_string(), serde_json::to_string(&s).expect("rows serialize")]);
                out += &csv_line(["recording".to_string(), serde_json::to_string(&t).expect("rows serialize")]);
                out
            } else {
                to_json(&json!({"w": w, "insertion": s, "recording": t, "shape": s.shape()}))
            }
        }
        Command::TensorTrace { k, signed, parity } => {
            let (r, n) = cell(cli)?;
            let budget = cli.budget.unwrap_or(DEFAULT_TENSOR_BUDGET);
            let parity = match (signed, parity) {
                (false, Some(_)) => return Err(Error::InvalidArgument("--parity needs --signed".into())),
                (false, None) => ParityAssignment::all_even(r),
                (true, None) => ParityAssignment::all_odd(r),
                (true, Some(p)) => {
                    let p = ParityAssignment::parse(p)?;
                    if p.r() != r {
                        return Err(Error::InvalidArgument(format!("parity has {} entries, --r is {r}", p.r())));
                    }
                    p
                }
            };
            let chi = trace_character(r, n, *k, &parity, budget)?;
            if csv {
                let mut s = csv_line(["class".to_string(), "trace".to_string()]);
                for (ty, v) in chi.classes().types.iter().zip(chi.values()) {
                    s += &csv_line([ty.to_string(), v.to_string()]);
                }
                s
            } else {
                to_json(&json!({"k": k, "signed": signed, "parity": parity, "character": chi}))
            }
        }
        Command::Coinvariant { action, variant } => {
            let (r, n) = cell(cli)?;
            let budget = cli.budget.unwrap_or(DEFAULT_BASIS_BUDGET);
            let variant = FlagVariant::from(*variant);
            coinvariant(r, n, action, variant, budget, csv)?
        }
        Command::Ewens { q } => {
            let (r, n) = cell(cli)?;
            let q = parse_rational(q)?;
            let sum = ewens_normalizer(r, n, &q);
            let closed = ewens_normalizer_closed(r, n, &q);
            let printed = ewens_normalizer_printed(r, n, &q);
            if csv {
                let mut s = csv_line(["q", "class_sum", "product_form", "shifted_product_form"].map(String::from));
                s += &csv_line([&q, &sum, &closed, &printed].map(format_rational));
                s
            } else {
                to_json(&json!({
                    "r": r, "n": n, "q": format_rational(&q),
                    "class_sum": format_rational(&sum),
                    "product_form": format_rational(&closed),
                    "shifted_product_form": format_rational(&printed),
                }))
            }
        }
        Command::Verify { suite } => {
            let suites = Suite::parse_list(suite)?;
            let scope = match (cli.r, cli.n) {
                (None, None) => Scope::Grid,
                _ => {
                    let (r, n) = cell(cli)?;
                    Scope::Cell { r, n }
                }
            };
            let report = verify::run(scope, &suites, cli.seed, cli.budget.unwrap_or(DEFAULT_BASIS_BUDGET))?;
            let body = if csv { report.to_csv() } else { to_json(&report) };
            return Ok((body, report.has_failures()));
        }
    };
    Ok((out, false))
}

fn coinvariant(
    r: u32,
    n: usize,
    action: &CoinvariantAction,
    variant: FlagVariant,
    budget: u128,
    csv: bool,
) -> Result<String> {
    Ok(match action {
        CoinvariantAction::Basis => {
            let rep = descent_basis_check(r, n, variant, budget)?;
            if csv {
                let mut s = csv_line(["w", "monomial"].map(String::from));
                for (w, m) in &rep.monomials {
                    s += &csv_line([w.to_string(), m.to_string()]);
                }
                let _ = writeln!(s, "# rank {} of {}", rep.rank, rep.size);
                s
            } else {
                to_json(&rep)
            }
        }
        CoinvariantAction::Trace { w } => {
            let w = ColoredPermutation::parse(r, w)?;
            if w.n() != n {
                return Err(Error::InvalidArgument(format!("w has {} letters, --n is {n}", w.n())));
            }
            let p = graded_trace(&w, variant, budget)?;
            let q = tableau_side_trace(&w, variant);
            if csv {
                let mut s = csv_line(["degree", "module_side", "tableau_side"].map(String::from));
                let top = p.coeffs().len().max(q.coeffs().len());
                let zero = Cyclotomic::zero(r);
                for d in 0..top {
                    let a = p.coeff(d).unwrap_or(&zero);
                    let b = q.coeff(d).unwrap_or(&zero);
                    s += &csv_line([d.to_string(), a.to_string(), b.to_string()]);
                }
                s
            } else {
                to_json(&json!({"w": w, "variant": variant, "module_side": p, "tableau_side": q, "equal": p == q}))
            }
        }
        CoinvariantAction::Filtration { grading } => {
            let rep = filtration_characters(r, n, variant, (*grading).into(), budget)?;
            if csv {
                let cls = classes(r, n);
                let mut s = csv_line(
                    ["threshold", "dimension"]
                        .map(String::from)
                        .into_iter()
                        .chain(cls.types.iter().map(ToString::to_string)),
                );
                for ((t, d), chi) in rep.thresholds.iter().zip(&rep.dimensions).zip(&rep.characters) {
                    s += &csv_line(
                        [t.to_string(), d.to_string()].into_iter().chain(chi.values().iter().map(ToString::to_string)),
                    );
                }
                s
            } else {
                to_json(&rep)
            }
        }
    })
}
