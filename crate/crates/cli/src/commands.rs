use std::fmt;
use std::io::Write;

use liftspin_core::combinat::{odd_set, BetaTable};
use liftspin_core::lfactors::NumericFactor;
use liftspin_core::modforms::{
    eigenforms, format_rational, hecke_eigenvalue, is_prime, parse_eigenvalue_table, primes_up_to, EigenformData,
};
use liftspin_core::par;
use liftspin_core::verify::{
    numeric_sides, run_symbolic_suite, standard_cases, symbolic_sides, verify_numeric, verify_symbolic, IdentityId,
    Mutation, NumericData, VerificationReport,
};
use liftspin_core::Error;
use num_complex::Complex64;
use serde::Serialize;

use crate::{Cli, Command, Common, Format, ModeArg, Side};

/// Coefficients emitted by `euler` when `--truncate` is not given.
const DEFAULT_EULER_TERMS: usize = 32;
const DEFAULT_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(std::io::Error),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(
                Error::IrrationalEigenspace(_)
                | Error::GenusTooLarge { .. }
                | Error::UnsupportedWeight(_)
                | Error::EmptySpace(_),
            ) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli) -> CliResult<u8> {
    let c = &cli.common;
    match &cli.command {
        Command::Eigenvalues { weight } => cmd_eigenvalues(c, *weight),
        Command::Euler {
            side,
            identity,
            truncate,
        } => cmd_euler(c, *side, identity, *truncate),
        Command::BetaTable => cmd_beta_table(c),
        Command::Lvalue { side, s, bound } => cmd_lvalue(c, *side, *s, *bound),
        Command::Verify {
            identity,
            all,
            symbolic,
            numeric,
            witness,
            corrupt_beta,
        } => {
            let mode = if *numeric {
                ModeArg::Numeric
            } else if *symbolic {
                ModeArg::Symbolic
            } else {
                c.mode
            };
            cmd_verify(
                c,
                identity.as_deref(),
                *all,
                mode,
                *witness || *corrupt_beta,
                *corrupt_beta,
            )
        }
    }
}

fn emit(c: &Common, json: &impl Serialize, text: String) -> CliResult<()> {
    let body = match c.format {
        Format::Json => serde_json::to_string_pretty(json).expect("serializable") + "\n",
        Format::Text => text,
    };
    match &c.output {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn primes(c: &Common, default: &[u64]) -> CliResult<Vec<u64>> {
    let mut out = Vec::new();
    if let Some(p) = c.prime {
        if !is_prime(p) {
            return Err(Error::NonPrime(p).into());
        }
        out.push(p);
    }
    if let Some(b) = c.primes_up_to {
        out.extend(primes_up_to(b).into_iter().filter(|p| Some(*p) != c.prime));
    }
    if c.prime.is_none() && c.primes_up_to.is_none() {
        out.extend_from_slice(default);
    }
    out.sort_unstable();
    Ok(out)
}

/// `(role, path)` pairs from `--eigenvalues-file`; role is `None` for a bare path.
fn eigenvalue_files(c: &Common) -> CliResult<Vec<(Option<char>, String)>> {
    c.eigenvalues_file
        .iter()
        .map(|arg| match arg.split_once(':') {
            Some((r @ ("f" | "g"), path)) => Ok((r.chars().next(), path.to_string())),
            Some((r, _)) if r.len() == 1 => {
                Err(CliError::Usage(format!("unknown eigenform role '{r}' (use f: or g:)")))
            }
            _ => Ok((None, arg.clone())),
        })
        .collect()
}

fn read_table(path: &str, weight: i64) -> CliResult<EigenformData> {
    let text = std::fs::read_to_string(path)?;
    let weight = u32::try_from(weight).map_err(|_| Error::UnsupportedWeight(weight))?;
    Ok(EigenformData::from_table(weight, parse_eigenvalue_table(&text)?)?)
}

fn unique_eigenform(weight: i64, precision: usize) -> CliResult<EigenformData> {
    let mut forms = eigenforms(weight, precision)?;
    if forms.len() != 1 {
        return Err(CliError::Usage(format!(
            "weight {weight} has {} eigenforms; supply the eigenvalues with --eigenvalues-file",
            forms.len()
        )));
    }
    Ok(forms.pop().unwrap())
}

/// f ∈ S_{2k} and (when needed) g ∈ S_{k+n}, from files or computed.
fn eigen_data(c: &Common, n: i64, need_g: bool, max_prime: u64) -> CliResult<(EigenformData, Option<EigenformData>)> {
    if need_g && (c.k + n) % 2 != 0 {
        return Err(Error::InvalidInput(format!("numeric mode needs k+n even, got k={} n={n}", c.k)).into());
    }
    let files = eigenvalue_files(c)?;
    if let Some((_, path)) = files.iter().find(|(r, _)| r.is_none()) {
        return Err(CliError::Usage(format!(
            "'{path}': prefix the eigenvalue file with f: or g:"
        )));
    }
    let precision = c.precision.max(max_prime as usize + 1);
    let load = |role: char, weight: i64| -> CliResult<EigenformData> {
        match files.iter().find(|(r, _)| *r == Some(role)) {
            Some((_, path)) => read_table(path, weight),
            None => unique_eigenform(weight, precision),
        }
    };
    let f = load('f', 2 * c.k)?;
    let g = if need_g { Some(load('g', c.k + n)?) } else { None };
    Ok((f, g))
}

#[derive(Serialize)]
struct EigenvalueRow {
    p: u64,
    lambda: String,
}

#[derive(Serialize)]
struct EigenvalueTable {
    weight: i64,
    forms: Vec<Vec<EigenvalueRow>>,
}

fn cmd_eigenvalues(c: &Common, weight: i64) -> CliResult<u8> {
    let ps = primes(c, &DEFAULT_PRIMES)?;
    let max_p = ps.last().copied().unwrap_or(2);
    let files = eigenvalue_files(c)?;
    let forms = match files.first() {
        Some((_, path)) => vec![read_table(path, weight)?],
        None => eigenforms(weight, c.precision.max(max_p as usize + 1))?,
    };
    let mut table = EigenvalueTable {
        weight,
        forms: Vec::new(),
    };
    for form in &forms {
        let rows = ps
            .iter()
            .map(|&p| {
                Ok(EigenvalueRow {
                    p,
                    lambda: format_rational(&hecke_eigenvalue(form, p)?),
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        table.forms.push(rows);
    }
    let mut text = String::new();
    for (i, rows) in table.forms.iter().enumerate() {
        if table.forms.len() > 1 {
            text += &format!("# form {i}\n");
        }
        for row in rows {
            text += &format!("{} {}\n", row.p, row.lambda);
        }
    }
    emit(c, &table, text)?;
    Ok(0)
}

fn parse_identity(name: &str) -> CliResult<IdentityId> {
    IdentityId::parse(name).ok_or_else(|| CliError::Usage(format!("unknown identity '{name}'")))
}

fn cmd_euler(c: &Common, side: Side, identity: &str, truncate: Option<usize>) -> CliResult<u8> {
    let id = parse_identity(identity)?;
    if !id.is_factor_identity() {
        return Err(CliError::Usage(format!("{} has no Euler factor sides", id.name())));
    }
    let label = format!("{} n={} k={}", id.name(), c.n, c.k);
    match c.mode {
        ModeArg::Symbolic => {
            let sides = symbolic_sides(id, c.n, c.k, &Mutation::None)?;
            let factor = match side {
                Side::Lhs => sides.lhs,
                Side::Rhs => sides.rhs,
            }
            .with_label(label);
            let truncate =
                truncate.or_else(|| (factor.degree() > DEFAULT_EULER_TERMS as i64).then_some(DEFAULT_EULER_TERMS));
            let json = factor.to_json(truncate)?;
            let mut text = format!("{}\ndegree {}\n", json.label, json.degree);
            for (j, coeff) in json.coeffs.iter().enumerate() {
                text += &format!("T^{j}: {coeff}\n");
            }
            emit(c, &json, text)?;
        }
        ModeArg::Numeric => {
            let p = single_prime(c)?;
            let (f, g) = eigen_data(c, c.n, true, p)?;
            let sides = numeric_sides(id, c.n, c.k, p, &NumericData { f: &f, g: g.as_ref() })?;
            let factor = match side {
                Side::Lhs => sides.lhs,
                Side::Rhs => sides.rhs,
            }
            .with_label(label);
            let json = factor.to_json(p)?;
            let mut text = format!("{}\ndegree {}\nprime {p}\n", factor.label, factor.degree());
            for (j, x) in factor.expand()?.iter().enumerate() {
                text += &format!("T^{j}: {:e} {:e}\n", x.re, x.im);
            }
            emit(c, &json, text)?;
        }
    }
    Ok(0)
}

fn single_prime(c: &Common) -> CliResult<u64> {
    let ps = primes(c, &[2])?;
    match ps.as_slice() {
        [p] => Ok(*p),
        _ => Err(CliError::Usage("this command takes exactly one prime (--prime)".into())),
    }
}

#[derive(Serialize)]
struct BetaTableJson {
    n: u32,
    rows: Vec<liftspin_core::combinat::BetaRow>,
}

fn cmd_beta_table(c: &Common) -> CliResult<u8> {
    let n = u32::try_from(c.n)
        .ok()
        .filter(|n| *n >= 1)
        .ok_or_else(|| CliError::Usage("--n must be >= 1".into()))?;
    let table = BetaTable::new(n);
    let json = BetaTableJson { n, rows: table.rows() };
    let mut text = format!("# n = {n}\n# m r alpha beta\n");
    for row in &json.rows {
        text += &format!("{} {} {} {}\n", row.m, row.r, row.alpha, row.beta);
    }
    emit(c, &json, text)?;
    Ok(0)
}

#[derive(Serialize)]
struct LvalueJson {
    identity: &'static str,
    side: &'static str,
    n: i64,
    k: i64,
    s: [f64; 2],
    prime_bound: u64,
    value: [f64; 2],
    log_value: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    last_prime: Option<u64>,
    /// `|log L_p|` for the last prime: relative change it contributes
    last_increment: f64,
    note: &'static str,
}

/// ∏_{p <= bound} F_p(p^{-s})^{-1} for one side of the main identity.
fn cmd_lvalue(c: &Common, side: Side, s: Complex64, bound: u64) -> CliResult<u8> {
    let (n, k) = (c.n, c.k);
    let edge = (n as f64 - 0.5) * k as f64 + 1.0;
    if s.re <= edge {
        return Err(Error::OutOfConvergenceRegion { re: s.re, bound: edge }.into());
    }
    let ps = primes_up_to(bound);
    let (f, g) = if ps.is_empty() {
        (None, None)
    } else {
        let (f, g) = eigen_data(c, n, true, bound)?;
        (Some(f), g)
    };
    // log L_p(s) = -Σ e·log(1 - r p^{-s}), summed in log space so tiny factors stay visible
    let logs: Vec<Complex64> = par::map(&ps, |&p| -> CliResult<Complex64> {
        let data = NumericData {
            f: f.as_ref().unwrap(),
            g: g.as_ref(),
        };
        let sides = numeric_sides(IdentityId::MainTheorem, n, k, p, &data)?;
        let factor: NumericFactor = match side {
            Side::Lhs => sides.lhs,
            Side::Rhs => sides.rhs,
        };
        let t = (-s * (p as f64).ln()).exp();
        Ok(-factor
            .roots()
            .iter()
            .map(|(r, e)| log_one_minus(r * t) * *e as f64)
            .sum::<Complex64>())
    })
    .into_iter()
    .collect::<CliResult<_>>()?;
    let log_value: Complex64 = logs.iter().sum();
    let value = log_value.exp();
    let last_increment = logs.last().map_or(0.0, |w| w.norm());
    let json = LvalueJson {
        identity: IdentityId::MainTheorem.name(),
        side: if side == Side::Lhs { "lhs" } else { "rhs" },
        n,
        k,
        s: [s.re, s.im],
        prime_bound: bound,
        value: [value.re, value.im],
        log_value: [log_value.re, log_value.im],
        last_prime: ps.last().copied(),
        last_increment,
        note: "non-rigorous approximation",
    };
    let text = format!(
        "{} {} n={n} k={k} s={} bound={bound}\nvalue {:e} {:e}\nlast_increment {:e}\n{}\n",
        json.identity, json.side, s, value.re, value.im, last_increment, json.note
    );
    emit(c, &json, text)?;
    Ok(0)
}

/// `log(1 - z)`, by its power series when `|z|` is small.
fn log_one_minus(z: Complex64) -> Complex64 {
    if z.norm() >= 0.25 {
        return (Complex64::new(1.0, 0.0) - z).ln();
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = z;
    for j in 1..200 {
        let term = power / j as f64;
        sum -= term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
        power *= z;
    }
    sum
}

/// The corrupted entry for `--corrupt-beta`: β(r, 1) at the smallest `r`.
fn corrupt_beta_mutation(id: IdentityId, n: i64) -> Mutation {
    let table_n = if id == IdentityId::IkedaSpinor { n } else { n - 1 };
    let r = odd_set(table_n.max(1) as u32).next().unwrap_or(-1);
    Mutation::Beta { r, m: 1, delta: 1 }
}

fn cmd_verify(
    c: &Common,
    identity: Option<&str>,
    all: bool,
    mode: ModeArg,
    witness: bool,
    corrupt_beta: bool,
) -> CliResult<u8> {
    let ids: Vec<IdentityId> = match (identity, all) {
        (Some(name), false) => vec![parse_identity(name)?],
        (None, true) => IdentityId::ALL.to_vec(),
        _ => return Err(CliError::Usage("give exactly one of IDENTITY or --all".into())),
    };
    let mut reports = match mode {
        ModeArg::Symbolic => {
            let cases: Vec<_> = if all {
                standard_cases()
            } else {
                vec![liftspin_core::verify::Case {
                    id: ids[0],
                    n: c.n,
                    k: c.k,
                }]
            };
            if corrupt_beta {
                cases
                    .iter()
                    .filter(|case| matches!(case.id, IdentityId::MainTheorem | IdentityId::IkedaSpinor))
                    .map(|case| verify_symbolic(case.id, case.n, case.k, &corrupt_beta_mutation(case.id, case.n)))
                    .collect::<Result<Vec<_>, _>>()?
            } else {
                run_symbolic_suite(&cases, &Mutation::None)?
            }
        }
        ModeArg::Numeric => {
            if corrupt_beta {
                return Err(CliError::Usage("--corrupt-beta is a symbolic self-test".into()));
            }
            let ids: Vec<_> = ids.into_iter().filter(|id| id.is_factor_identity()).collect();
            let ps = primes(c, &DEFAULT_PRIMES)?;
            let max_p = ps.last().copied().unwrap_or(2);
            let need_g = ids
                .iter()
                .any(|id| !matches!(id, IdentityId::IkedaSpinor | IdentityId::IkedaStandard));
            let (f, g) = eigen_data(c, c.n, need_g, max_p)?;
            let data = NumericData { f: &f, g: g.as_ref() };
            let mut out = Vec::new();
            for id in ids {
                // the displayed examples fix n; skip those that need a different g
                if matches!(
                    id,
                    IdentityId::ExampleDeg3 | IdentityId::ExampleDeg5 | IdentityId::ExampleDeg7
                ) && example_n(id) != c.n
                {
                    continue;
                }
                let rs: Vec<CliResult<VerificationReport>> =
                    par::map(&ps, |&p| verify_numeric(id, c.n, c.k, p, &data).map_err(CliError::from));
                for r in rs {
                    out.push(r?);
                }
            }
            out
        }
    };
    if !witness {
        for r in &mut reports {
            r.witness = None;
        }
    }
    let failed = reports.iter().any(|r| !r.passed());
    let text: String = reports.iter().map(report_text).collect();
    emit(c, &reports, text)?;
    Ok(if failed { 1 } else { 0 })
}

fn example_n(id: IdentityId) -> i64 {
    match id {
        IdentityId::ExampleDeg3 => 2,
        IdentityId::ExampleDeg5 => 3,
        _ => 4,
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut line = r.identity.name().to_string();
    for (key, v) in [("n", r.n), ("k", r.k)] {
        if let Some(v) = v {
            line += &format!(" {key}={v}");
        }
    }
    line += &format!(" {}", serde_json::to_value(r.mode).unwrap().as_str().unwrap());
    if let Some(p) = r.prime {
        line += &format!(" p={p}");
    }
    if let Some(d) = r.degree {
        line += &format!(" degree={d}");
    }
    line += if r.passed() { " pass\n" } else { " fail\n" };
    if let Some(w) = &r.witness {
        let at = w.t_degree.map(|j| format!("T^{j}")).unwrap_or_else(|| "-".into());
        line += &format!("  witness {at}: lhs={} rhs={} ({})\n", w.lhs, w.rhs, w.detail);
    }
    line
}
