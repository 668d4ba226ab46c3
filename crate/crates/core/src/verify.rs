//! Left and right sides of each factorization identity and their comparison.
//!
//! Symbolic checks compare canonical root multisets (exact polynomial
//! equality, see [`crate::lfactors`]); up to [`EXPAND_CAP`] the expanded
//! coefficient lists are compared as well. Numeric checks expand both sides
//! at a prime and compare coefficients at a relative tolerance.

use num_complex::Complex64;
use serde::Serialize;

use crate::combinat::{r_range, BetaTable};
use crate::error::{Error, Result};
use crate::exactalg::{LaurentPoly, Monomial};
use crate::lfactors::{
    c1_eigenvalue, frobenius_eigenvalue, hecke_factor, spinor_factor, standard_factor, sym_power_factor, tensor_factor,
    LocalFactor, NumericFactor, Role, SymbolicFactor, Vars,
};
use crate::modforms::{hecke_eigenvalue, numeric_satake, EigenformData};
use crate::par;
use crate::satake::{
    ikeda_satake, ikeda_satake_numeric, miyawaki_satake, miyawaki_satake_numeric, SatakeParams, SatakeValue, Variable,
};

/// Symbolic factors up to this degree are also compared coefficient by coefficient.
pub const EXPAND_CAP: i64 = 32;
/// Largest n for the Miyawaki-Ikeda spinor identity (genus 2n-1).
pub const MAX_MAIN_N: i64 = 6;
/// Largest n for the Ikeda spinor identity (degree 2^{2n}).
pub const MAX_IKEDA_SPINOR_N: i64 = 4;
/// Largest n for numeric checks (degree 2^{2n-1} expansions in f64).
pub const MAX_NUMERIC_N: i64 = 4;
/// Per-coefficient relative tolerance of numeric checks.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;

/// ε_i for i = -3..=5 in the degree-7 example.
pub const DEG7_EPSILON: [i64; 9] = [1, 1, 2, 2, 2, 2, 2, 1, 1];
/// ε'_i for i = -3..=6 in the degree-7 example.
pub const DEG7_EPSILON_PRIME: [i64; 10] = [1, 1, 1, 2, 2, 2, 2, 1, 1, 1];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    MainTheorem,
    IkedaSpinor,
    IkedaStandard,
    MiyawakiStandard,
    C1Frobenius,
    ExampleDeg3,
    ExampleDeg5,
    ExampleDeg7,
    BetaEpsilonMatch,
}

impl IdentityId {
    pub const ALL: [IdentityId; 9] = [
        IdentityId::MainTheorem,
        IdentityId::IkedaSpinor,
        IdentityId::IkedaStandard,
        IdentityId::MiyawakiStandard,
        IdentityId::C1Frobenius,
        IdentityId::ExampleDeg3,
        IdentityId::ExampleDeg5,
        IdentityId::ExampleDeg7,
        IdentityId::BetaEpsilonMatch,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityId::MainTheorem => "main_theorem",
            IdentityId::IkedaSpinor => "ikeda_spinor",
            IdentityId::IkedaStandard => "ikeda_standard",
            IdentityId::MiyawakiStandard => "miyawaki_standard",
            IdentityId::C1Frobenius => "c1_frobenius",
            IdentityId::ExampleDeg3 => "example_deg3",
            IdentityId::ExampleDeg5 => "example_deg5",
            IdentityId::ExampleDeg7 => "example_deg7",
            IdentityId::BetaEpsilonMatch => "beta_epsilon_match",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.replace('-', "_");
        let short = match s.as_str() {
            "main" => Some(IdentityId::MainTheorem),
            "deg3" => Some(IdentityId::ExampleDeg3),
            "deg5" => Some(IdentityId::ExampleDeg5),
            "deg7" => Some(IdentityId::ExampleDeg7),
            "c1" => Some(IdentityId::C1Frobenius),
            "epsilons" | "deg7_epsilons" => Some(IdentityId::BetaEpsilonMatch),
            _ => None,
        };
        short.or_else(|| Self::ALL.into_iter().find(|id| id.name() == s))
    }

    /// True for identities between two Euler factors.
    pub fn is_factor_identity(&self) -> bool {
        !matches!(self, IdentityId::C1Frobenius | IdentityId::BetaEpsilonMatch)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Symbolic,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

/// First point where the two sides differ.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    /// Index of the first differing `T`-coefficient, if the comparison is in `T`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_degree: Option<usize>,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: IdentityId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn new(identity: IdentityId, n: Option<i64>, k: Option<i64>, mode: Mode, prime: Option<u64>) -> Self {
        VerificationReport {
            identity,
            n,
            k,
            mode,
            prime,
            verdict: Verdict::Pass,
            degree: None,
            witness: None,
        }
    }

    fn with_outcome(mut self, degree: Option<i64>, witness: Option<Witness>) -> Self {
        self.verdict = if witness.is_some() {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        self.degree = degree;
        self.witness = witness;
        self
    }
}

/// A deliberate single-entry corruption, for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mutation {
    #[default]
    None,
    /// β(r, m) in the table used by the right-hand side moves by `delta`.
    Beta { r: i64, m: i64, delta: i64 },
    /// The q-shift applied to the `(m, r)` factor moves by `delta`.
    Shift { m: i64, r: i64, delta: i64 },
    /// One exponent of one Satake parameter (index 0 is μ₀) moves by `delta`.
    Satake { index: usize, var: Variable, delta: i32 },
}

impl Mutation {
    fn table(&self, base: BetaTable) -> BetaTable {
        match *self {
            Mutation::Beta { r, m, delta } => base.perturbed(r, m, delta),
            _ => base,
        }
    }

    fn shift(&self, m: i64, r: i64, base: i64) -> i64 {
        match *self {
            Mutation::Shift { m: mm, r: rr, delta } if mm == m && rr == r => base + delta,
            _ => base,
        }
    }

    fn params(&self, base: SatakeParams<Monomial>) -> Result<SatakeParams<Monomial>> {
        match *self {
            Mutation::Satake { index, var, delta } => base.perturbed(index, var, delta),
            _ => Ok(base),
        }
    }
}

/// Both sides of a factor identity.
pub struct Sides<V> {
    pub lhs: LocalFactor<V>,
    pub rhs: LocalFactor<V>,
}

fn check_n(n: i64, min: i64) -> Result<()> {
    if n < min {
        return Err(Error::InvalidInput(format!("n = {n} must be >= {min}")));
    }
    Ok(())
}

fn check_k(k: i64) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidInput(format!("k = {k} must be >= 1")));
    }
    Ok(())
}

/// `L(s, g⊗sym_{n-1} f) ∏_{m=1}^{n-1} ∏_r L(s - m(k-1/2) + r/2, g⊗sym_{n-m-1} f)^{β(r,m,n-1)}`.
pub fn main_theorem_rhs<V: SatakeValue>(n: i64, k: i64, vars: &Vars<V>, mutation: &Mutation) -> Result<LocalFactor<V>> {
    check_n(n, 2)?;
    check_k(k)?;
    let table = mutation.table(BetaTable::new((n - 1) as u32));
    let mut pieces = vec![tensor_factor(n, k, n, vars)?];
    for m in 1..n {
        let base = tensor_factor(n - m, k, n, vars)?;
        for r in r_range(m as u32, (n - 1) as u32) {
            let beta = table.beta(r, m);
            if beta != 0 {
                let c = mutation.shift(m, r, m * (2 * k - 1) - r);
                pieces.push(base.shifted(c, vars).pow(beta));
            }
        }
    }
    Ok(LocalFactor::product(format!("RHS main theorem n={n} k={k}"), pieces))
}

/// `∏_{m=0}^{n} ∏_r L(s - m(k-1/2) + r/2, sym_{n-m} f)^{β(r,m,n)}`.
pub fn ikeda_spinor_rhs<V: SatakeValue>(n: i64, k: i64, vars: &Vars<V>, mutation: &Mutation) -> Result<LocalFactor<V>> {
    check_n(n, 1)?;
    check_k(k)?;
    let table = mutation.table(BetaTable::new(n as u32));
    let mut pieces = Vec::new();
    for m in 0..=n {
        let base = sym_power_factor(n - m, k, vars)?;
        for r in r_range(m as u32, n as u32) {
            let beta = table.beta(r, m);
            if beta != 0 {
                let c = mutation.shift(m, r, m * (2 * k - 1) - r);
                pieces.push(base.shifted(c, vars).pow(beta));
            }
        }
    }
    Ok(LocalFactor::product(format!("RHS Ikeda spinor n={n} k={k}"), pieces))
}

/// `ζ(s) ∏_{i=1}^{2n} L(s+k+n-i, f)`.
pub fn ikeda_standard_rhs<V: SatakeValue>(n: i64, k: i64, vars: &Vars<V>) -> Result<LocalFactor<V>> {
    check_n(n, 1)?;
    check_k(k)?;
    let f = hecke_factor(Role::F, k, n, vars);
    let pieces = std::iter::once(LocalFactor::from_roots("zeta", [V::one()]))
        .chain((1..=2 * n).map(|i| f.shifted(-2 * (k + n - i), vars)));
    Ok(LocalFactor::product(format!("RHS Ikeda standard n={n} k={k}"), pieces))
}

/// `L(s, g, st) ∏_{i=1}^{2n-2} L(s+k+n-1-i, f)`.
pub fn miyawaki_standard_rhs<V: SatakeValue>(n: i64, k: i64, vars: &Vars<V>) -> Result<LocalFactor<V>> {
    check_n(n, 2)?;
    check_k(k)?;
    let b_squared = vars.b.mul(&vars.b);
    let g_standard = standard_factor(&SatakeParams {
        genus: 1,
        mu0: V::one(),
        mus: vec![b_squared],
        similitude_exponent: 0,
    });
    let f = hecke_factor(Role::F, k, n, vars);
    let pieces = std::iter::once(g_standard).chain((1..=2 * n - 2).map(|i| f.shifted(-2 * (k + n - 1 - i), vars)));
    Ok(LocalFactor::product(
        format!("RHS Miyawaki standard n={n} k={k}"),
        pieces,
    ))
}

/// The displayed degree-3, 5 and 7 products (n = 2, 3, 4), with their
/// multiplicities written out rather than derived from β.
pub fn example_product<V: SatakeValue>(n: i64, k: i64, vars: &Vars<V>) -> Result<LocalFactor<V>> {
    check_k(k)?;
    let g = |vars: &Vars<V>| tensor_factor(1, k, n, vars);
    let mut pieces = vec![tensor_factor(n, k, n, vars)?];
    match n {
        2 => {
            pieces.push(g(vars)?.shifted(2 * k, vars));
            pieces.push(g(vars)?.shifted(2 * (k - 1), vars));
        }
        3 => {
            let gf = tensor_factor(2, k, n, vars)?;
            pieces.extend((-1..=2).map(|i| gf.shifted(2 * (k - i), vars)));
            let g = g(vars)?;
            pieces.extend((-1..=3).map(|i| g.shifted(2 * (2 * k - i), vars)));
        }
        4 => {
            let g_sym2 = tensor_factor(3, k, n, vars)?;
            pieces.extend((-2..=3).map(|i| g_sym2.shifted(2 * (k - i), vars)));
            let gf = tensor_factor(2, k, n, vars)?;
            pieces.extend(
                (-3..=5)
                    .zip(DEG7_EPSILON)
                    .map(|(i, e)| gf.shifted(2 * (2 * k - i), vars).pow(e)),
            );
            let g = g(vars)?;
            pieces.extend(
                (-3..=6)
                    .zip(DEG7_EPSILON_PRIME)
                    .map(|(i, e)| g.shifted(2 * (3 * k - i), vars).pow(e)),
            );
        }
        _ => return Err(Error::InvalidInput(format!("no displayed example for n = {n}"))),
    }
    Ok(LocalFactor::product(
        format!("displayed product degree {}", 2 * n - 1),
        pieces,
    ))
}

fn example_n(id: IdentityId) -> Option<i64> {
    match id {
        IdentityId::ExampleDeg3 => Some(2),
        IdentityId::ExampleDeg5 => Some(3),
        IdentityId::ExampleDeg7 => Some(4),
        _ => None,
    }
}

/// LHS and RHS of a factor identity from Satake parameters and variable values.
///
/// `params` must be the Ikeda parameters for the Ikeda identities and the
/// Miyawaki-Ikeda parameters otherwise.
pub fn identity_sides<V: SatakeValue>(
    id: IdentityId,
    n: i64,
    k: i64,
    params: &SatakeParams<V>,
    vars: &Vars<V>,
    mutation: &Mutation,
) -> Result<Sides<V>> {
    let (lhs, rhs) = match id {
        IdentityId::MainTheorem => (spinor_factor(params)?, main_theorem_rhs(n, k, vars, mutation)?),
        IdentityId::IkedaSpinor => (spinor_factor(params)?, ikeda_spinor_rhs(n, k, vars, mutation)?),
        IdentityId::IkedaStandard => (standard_factor(params), ikeda_standard_rhs(n, k, vars)?),
        IdentityId::MiyawakiStandard => (standard_factor(params), miyawaki_standard_rhs(n, k, vars)?),
        IdentityId::ExampleDeg3 | IdentityId::ExampleDeg5 | IdentityId::ExampleDeg7 => {
            (spinor_factor(params)?, example_product(n, k, vars)?)
        }
        IdentityId::C1Frobenius | IdentityId::BetaEpsilonMatch => {
            return Err(Error::InvalidInput(format!(
                "{} is not an identity between Euler factors",
                id.name()
            )))
        }
    };
    Ok(Sides { lhs, rhs })
}

fn uses_ikeda_params(id: IdentityId) -> bool {
    matches!(id, IdentityId::IkedaSpinor | IdentityId::IkedaStandard)
}

fn check_caps(id: IdentityId, n: i64) -> Result<()> {
    let cap = match id {
        IdentityId::MainTheorem => MAX_MAIN_N,
        IdentityId::IkedaSpinor => MAX_IKEDA_SPINOR_N,
        _ => return Ok(()),
    };
    if n > cap {
        let genus = if id == IdentityId::IkedaSpinor {
            2 * n
        } else {
            2 * n - 1
        };
        let max = if id == IdentityId::IkedaSpinor {
            2 * cap
        } else {
            2 * cap - 1
        };
        return Err(Error::GenusTooLarge {
            genus: genus as usize,
            max: max as usize,
        });
    }
    Ok(())
}

/// Symbolic sides of a factor identity (the `n` of an example id is implied).
pub fn symbolic_sides(id: IdentityId, n: i64, k: i64, mutation: &Mutation) -> Result<Sides<Monomial>> {
    let n = example_n(id).unwrap_or(n);
    check_caps(id, n)?;
    let params = if uses_ikeda_params(id) {
        ikeda_satake(n, k)?
    } else {
        miyawaki_satake(n, k)?
    };
    let params = mutation.params(params)?;
    identity_sides(id, n, k, &params, &Vars::symbolic(), mutation)
}

fn coeff_json(p: &LaurentPoly) -> serde_json::Value {
    serde_json::to_value(p).expect("serializable")
}

/// `None` if the two factors are equal polynomials, else the first differing coefficient.
pub fn compare_symbolic(lhs: &SymbolicFactor, rhs: &SymbolicFactor) -> Option<Witness> {
    let max_len = (lhs.degree().max(rhs.degree()).max(0) + 1) as usize;
    let witness = |j: usize, l: &LaurentPoly, r: &LaurentPoly, detail: String| Witness {
        t_degree: Some(j),
        lhs: coeff_json(l),
        rhs: coeff_json(r),
        detail,
    };
    if lhs.same_polynomial(rhs) {
        // second route: compare the expansions outright while they are small
        let small = max_len as i64 <= EXPAND_CAP + 1 && lhs.reduces_to_polynomial();
        if small {
            let (l, r) = par::join(|| lhs.series(max_len), || rhs.series(max_len));
            if let Some(j) = (0..max_len).find(|&j| l[j] != r[j]) {
                return Some(witness(
                    j,
                    &l[j],
                    &r[j],
                    "root multisets agree but expansions differ".into(),
                ));
            }
        }
        return None;
    }
    let mut len = 2.min(max_len);
    loop {
        let (l, r) = par::join(|| lhs.series(len), || rhs.series(len));
        if let Some(j) = (0..len).find(|&j| l[j] != r[j]) {
            return Some(witness(
                j,
                &l[j],
                &r[j],
                format!("first differing coefficient at T^{j}"),
            ));
        }
        if len >= max_len {
            break;
        }
        len = (2 * len).min(max_len);
    }
    Some(Witness {
        t_degree: None,
        lhs: serde_json::Value::Null,
        rhs: serde_json::Value::Null,
        detail: "root multisets differ but expansions agree up to the common degree".into(),
    })
}

/// Coefficient-wise comparison after rescaling `T` so that the roots of `lhs`
/// have geometric-mean modulus 1. Coefficient `j` may differ by at most `tol`
/// times the cancellation-free magnitude `e_j(|roots|)` of either side.
pub fn compare_numeric(lhs: &NumericFactor, rhs: &NumericFactor, tol: f64) -> Result<Option<Witness>> {
    let total: i64 = lhs.degree();
    let log_mean = if total > 0 {
        lhs.roots().iter().map(|(r, e)| r.norm().ln() * *e as f64).sum::<f64>() / total as f64
    } else {
        0.0
    };
    let scale = (-log_mean).exp();
    let (x, y) = (lhs.expand_scaled(scale)?, rhs.expand_scaled(scale)?);
    let (mx, my) = (lhs.magnitude_profile(scale), rhs.magnitude_profile(scale));
    let len = x.len().max(y.len());
    let zero = Complex64::new(0.0, 0.0);
    for j in 0..len {
        let a = x.get(j).copied().unwrap_or(zero);
        let b = y.get(j).copied().unwrap_or(zero);
        let bound = mx.get(j).copied().unwrap_or(0.0).max(my.get(j).copied().unwrap_or(0.0));
        let diff = (a - b).norm();
        if diff.is_nan() || diff > tol * bound {
            let unscale = scale.powi(-(j as i32));
            let (a, b) = (a * unscale, b * unscale);
            return Ok(Some(Witness {
                t_degree: Some(j),
                lhs: serde_json::json!([a.re, a.im]),
                rhs: serde_json::json!([b.re, b.im]),
                detail: format!(
                    "relative difference {:.3e} exceeds {tol:e}",
                    diff / bound.max(f64::MIN_POSITIVE)
                ),
            }));
        }
    }
    Ok(None)
}

/// Exact symbolic check of one factor identity.
pub fn verify_symbolic(id: IdentityId, n: i64, k: i64, mutation: &Mutation) -> Result<VerificationReport> {
    match id {
        IdentityId::C1Frobenius => return verify_c1_frobenius(n, k),
        IdentityId::BetaEpsilonMatch => return Ok(verify_deg7_epsilons()),
        _ => {}
    }
    let n_eff = example_n(id).unwrap_or(n);
    let sides = symbolic_sides(id, n, k, mutation)?;
    let mut witness = compare_symbolic(&sides.lhs, &sides.rhs);
    if witness.is_none() {
        if let Some(n) = example_n(id) {
            // the displayed product must also agree with the β-assembled product
            let assembled = main_theorem_rhs(n, k, &Vars::symbolic(), mutation)?;
            witness = compare_symbolic(&assembled, &sides.rhs).map(|mut w| {
                w.detail = format!("assembled product vs displayed product: {}", w.detail);
                w
            });
        }
    }
    Ok(VerificationReport::new(id, Some(n_eff), Some(k), Mode::Symbolic, None)
        .with_outcome(Some(sides.lhs.degree()), witness))
}

pub fn verify_main_theorem(n: i64, k: i64) -> Result<VerificationReport> {
    verify_symbolic(IdentityId::MainTheorem, n, k, &Mutation::None)
}

pub fn verify_ikeda_spinor(n: i64, k: i64) -> Result<VerificationReport> {
    verify_symbolic(IdentityId::IkedaSpinor, n, k, &Mutation::None)
}

pub fn verify_ikeda_standard(n: i64, k: i64) -> Result<VerificationReport> {
    verify_symbolic(IdentityId::IkedaStandard, n, k, &Mutation::None)
}

pub fn verify_miyawaki_standard(n: i64, k: i64) -> Result<VerificationReport> {
    verify_symbolic(IdentityId::MiyawakiStandard, n, k, &Mutation::None)
}

/// `c1_eigenvalue(n, k) == μ₀ ∏ (1 + μᵢ)` for the Miyawaki-Ikeda parameters.
pub fn verify_c1_frobenius(n: i64, k: i64) -> Result<VerificationReport> {
    let lhs = c1_eigenvalue(n, k)?;
    let rhs = frobenius_eigenvalue(&miyawaki_satake(n, k)?);
    let witness = (lhs != rhs).then(|| Witness {
        t_degree: None,
        lhs: coeff_json(&lhs),
        rhs: coeff_json(&rhs),
        detail: "eigenvalue polynomials differ".into(),
    });
    Ok(
        VerificationReport::new(IdentityId::C1Frobenius, Some(n), Some(k), Mode::Symbolic, None)
            .with_outcome(None, witness),
    )
}

/// ε_i = β(2(i-1), 2, 3) for i = -3..=5 and ε'_i = β(2i-3, 3, 3) for i = -3..=6.
pub fn verify_deg7_epsilons() -> VerificationReport {
    let table = BetaTable::new(3);
    let eps: Vec<i64> = (-3..=5).map(|i| table.beta(2 * (i - 1), 2)).collect();
    let eps_prime: Vec<i64> = (-3..=6).map(|i| table.beta(2 * i - 3, 3)).collect();
    let witness = if eps != DEG7_EPSILON {
        Some(Witness {
            t_degree: None,
            lhs: serde_json::json!(eps),
            rhs: serde_json::json!(DEG7_EPSILON),
            detail: "epsilon (m = 2) mismatch".into(),
        })
    } else if eps_prime != DEG7_EPSILON_PRIME {
        Some(Witness {
            t_degree: None,
            lhs: serde_json::json!(eps_prime),
            rhs: serde_json::json!(DEG7_EPSILON_PRIME),
            detail: "epsilon' (m = 3) mismatch".into(),
        })
    } else {
        None
    };
    VerificationReport::new(IdentityId::BetaEpsilonMatch, Some(4), None, Mode::Symbolic, None)
        .with_outcome(None, witness)
}

/// Hecke eigenvalue data for the numeric pipeline.
#[derive(Clone, Copy, Debug)]
pub struct NumericData<'a> {
    /// f ∈ S_{2k}
    pub f: &'a EigenformData,
    /// g ∈ S_{k+n}; unused by the Ikeda identities.
    pub g: Option<&'a EigenformData>,
}

/// Satake roots `(α, β)` at `p`, checking the weight conventions.
pub fn numeric_alpha_beta(n: i64, k: i64, p: u64, data: &NumericData<'_>) -> Result<(Complex64, Complex64)> {
    if data.f.weight as i64 != 2 * k {
        return Err(Error::InvalidInput(format!(
            "f has weight {}, expected 2k = {}",
            data.f.weight,
            2 * k
        )));
    }
    let (alpha, _) = numeric_satake(&hecke_eigenvalue(data.f, p)?, data.f.weight, p);
    let beta = match data.g {
        Some(g) => {
            if g.weight as i64 != k + n {
                return Err(Error::InvalidInput(format!(
                    "g has weight {}, expected k+n = {}",
                    g.weight,
                    k + n
                )));
            }
            numeric_satake(&hecke_eigenvalue(g, p)?, g.weight, p).0
        }
        None => Complex64::new(1.0, 0.0),
    };
    Ok((alpha, beta))
}

/// Numeric sides at `p`, with Satake parameters built from λ_f(p), λ_g(p).
pub fn numeric_sides(id: IdentityId, n: i64, k: i64, p: u64, data: &NumericData<'_>) -> Result<Sides<Complex64>> {
    let n = example_n(id).unwrap_or(n);
    if n > MAX_NUMERIC_N {
        return Err(Error::GenusTooLarge {
            genus: (2 * n) as usize,
            max: (2 * MAX_NUMERIC_N) as usize,
        });
    }
    if !uses_ikeda_params(id) && data.g.is_none() {
        return Err(Error::InvalidInput(format!("{} needs eigenvalues of g", id.name())));
    }
    let (alpha, beta) = numeric_alpha_beta(n, k, p, data)?;
    let params = if uses_ikeda_params(id) {
        ikeda_satake_numeric(n, k, alpha, p)?
    } else {
        miyawaki_satake_numeric(n, k, alpha, beta, p)?
    };
    identity_sides(id, n, k, &params, &Vars::numeric(alpha, beta, p), &Mutation::None)
}

/// Numeric check of a factor identity at one prime.
pub fn verify_numeric(id: IdentityId, n: i64, k: i64, p: u64, data: &NumericData<'_>) -> Result<VerificationReport> {
    let sides = numeric_sides(id, n, k, p, data)?;
    let witness = compare_numeric(&sides.lhs, &sides.rhs, NUMERIC_TOLERANCE)?;
    Ok(
        VerificationReport::new(id, Some(example_n(id).unwrap_or(n)), Some(k), Mode::Numeric, Some(p))
            .with_outcome(Some(sides.lhs.degree()), witness),
    )
}

/// Numeric check at every prime in `primes`, run in parallel; order is preserved.
pub fn verify_numeric_primes(
    id: IdentityId,
    n: i64,
    k: i64,
    primes: &[u64],
    data: &NumericData<'_>,
) -> Result<Vec<VerificationReport>> {
    par::map(primes, |&p| verify_numeric(id, n, k, p, data))
        .into_iter()
        .collect()
}

/// One symbolic check in a suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Case {
    pub id: IdentityId,
    pub n: i64,
    pub k: i64,
}

/// The full symbolic suite at the standard parameter ranges.
pub fn standard_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    let mut push = |id, n, k| cases.push(Case { id, n, k });
    for n in 2..=6 {
        for k in [4, 10, 16] {
            push(IdentityId::MainTheorem, n, k);
        }
    }
    for n in 1..=4 {
        for k in [4, 10] {
            push(IdentityId::IkedaSpinor, n, k);
        }
    }
    for n in 1..=6 {
        for k in [4, 10, 16] {
            push(IdentityId::IkedaStandard, n, k);
        }
    }
    for n in 2..=6 {
        for k in [4, 10, 16] {
            push(IdentityId::MiyawakiStandard, n, k);
            push(IdentityId::C1Frobenius, n, k);
        }
    }
    for id in [
        IdentityId::ExampleDeg3,
        IdentityId::ExampleDeg5,
        IdentityId::ExampleDeg7,
    ] {
        for k in [4, 10, 16] {
            push(id, 0, k);
        }
    }
    push(IdentityId::BetaEpsilonMatch, 4, 0);
    cases
}

/// Runs symbolic cases in parallel; reports come back in case order.
pub fn run_symbolic_suite(cases: &[Case], mutation: &Mutation) -> Result<Vec<VerificationReport>> {
    par::map(cases, |c| verify_symbolic(c.id, c.n, c.k, mutation))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::beta_value;

    #[test]
    fn identity_names_roundtrip() {
        for id in IdentityId::ALL {
            assert_eq!(IdentityId::parse(id.name()), Some(id));
            assert_eq!(serde_json::to_value(id).unwrap(), id.name());
        }
        assert_eq!(IdentityId::parse("main"), Some(IdentityId::MainTheorem));
        assert_eq!(IdentityId::parse("nope"), None);
    }

    #[test]
    fn main_theorem_small() {
        for k in [4, 10] {
            let r = verify_main_theorem(2, k).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.degree, Some(8));
            assert!(verify_main_theorem(3, k).unwrap().passed());
        }
        assert_eq!(
            verify_main_theorem(7, 4).unwrap_err(),
            Error::GenusTooLarge { genus: 13, max: 11 }
        );
        assert!(verify_main_theorem(1, 4).is_err());
    }

    #[test]
    fn ikeda_small() {
        for n in 1..=3 {
            assert!(verify_ikeda_spinor(n, 10).unwrap().passed());
            assert!(verify_ikeda_standard(n, 10).unwrap().passed());
        }
        assert_eq!(
            verify_ikeda_spinor(5, 4).unwrap_err(),
            Error::GenusTooLarge { genus: 10, max: 8 }
        );
    }

    #[test]
    fn standard_degrees() {
        for n in 2..=4 {
            let r = verify_miyawaki_standard(n, 4).unwrap();
            assert!(r.passed());
            assert_eq!(r.degree, Some(4 * n - 1));
            let r = verify_ikeda_standard(n, 4).unwrap();
            assert_eq!(r.degree, Some(4 * n + 1));
        }
    }

    #[test]
    fn c1_and_epsilons() {
        for n in 2..=6 {
            assert!(verify_c1_frobenius(n, 10).unwrap().passed());
        }
        let r = verify_deg7_epsilons();
        assert!(r.passed());
        assert_eq!(beta_value(0, 2, 3), DEG7_EPSILON[4]);
    }

    #[test]
    fn deg3_regrouping() {
        for k in [4, 10, 16] {
            let r = verify_symbolic(IdentityId::ExampleDeg3, 0, k, &Mutation::None).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.n, Some(2));
        }
    }

    #[test]
    fn beta_mutation_fails_with_witness() {
        let m = Mutation::Beta { r: 1, m: 1, delta: 1 };
        let r = verify_symbolic(IdentityId::MainTheorem, 2, 10, &m).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let w = r.witness.unwrap();
        assert_eq!(w.t_degree, Some(1));
    }

    #[test]
    fn shift_and_satake_mutations_fail() {
        let m = Mutation::Shift { m: 1, r: -1, delta: 1 };
        assert!(!verify_symbolic(IdentityId::MainTheorem, 2, 4, &m).unwrap().passed());
        let m = Mutation::Satake {
            index: 3,
            var: Variable::B,
            delta: -1,
        };
        assert!(!verify_symbolic(IdentityId::MainTheorem, 2, 4, &m).unwrap().passed());
    }

    #[test]
    fn negative_beta_still_gives_witness() {
        // β(3,1,2) = 1 -> 0 and β(1,1,2) -> -1: the RHS is no longer a polynomial
        let m = Mutation::Beta { r: 1, m: 1, delta: -2 };
        let r = verify_symbolic(IdentityId::MainTheorem, 3, 4, &m).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.witness.unwrap().t_degree.is_some());
    }

    #[test]
    fn numeric_compare_detects_difference() {
        let a = LocalFactor::from_roots("a", [Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.0)]);
        let b = LocalFactor::from_roots("b", [Complex64::new(2.0, 0.0), Complex64::new(0.5 + 1e-6, 0.0)]);
        assert!(compare_numeric(&a, &a.clone(), 1e-9).unwrap().is_none());
        let w = compare_numeric(&a, &b, 1e-9).unwrap().unwrap();
        assert_eq!(w.t_degree, Some(1));
    }

    #[test]
    fn report_json_shape() {
        let r = verify_main_theorem(2, 4).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["identity"], "main_theorem");
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["mode"], "symbolic");
        assert!(v.get("witness").is_none());
    }
}
