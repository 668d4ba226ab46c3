//! Local Euler factors.
//!
//! Every factor in scope is a product of linear terms `(1 - r T)^e` where each
//! root `r` is a monomial in `a, b, q` (symbolic) or a complex number at a
//! fixed prime (numeric). `LocalFactor` keeps that factored form; the
//! coefficient list in `T` is produced by [`LocalFactor::expand`].
//!
//! Over `ℤ[a^±, b^±, q^±][T]` the linear factors `1 - mT` with monomial `m`
//! are pairwise non-associate primes, so two symbolic factors are equal as
//! polynomials exactly when their root multisets agree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{sum_of_products, LaurentPoly, Monomial};
use crate::par;
use crate::satake::{SatakeParams, SatakeValue};

/// Largest genus accepted by `spinor_factor` (degree 2^12).
pub const MAX_SPINOR_GENUS: usize = 12;

/// Values of `a`, `b`, `q` used when building factors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vars<V> {
    pub a: V,
    pub b: V,
    pub q: V,
}

impl Vars<Monomial> {
    pub fn symbolic() -> Self {
        Vars {
            a: Monomial::a(),
            b: Monomial::b(),
            q: Monomial::q(),
        }
    }
}

impl Vars<Complex64> {
    /// `a = alpha`, `b = beta`, `q = √p`.
    pub fn numeric(alpha: Complex64, beta: Complex64, p: u64) -> Self {
        Vars {
            a: alpha,
            b: beta,
            q: Complex64::new((p as f64).sqrt(), 0.0),
        }
    }
}

impl<V: SatakeValue> Vars<V> {
    /// `a^ea b^eb q^eq`
    pub fn monomial(&self, ea: i64, eb: i64, eq: i64) -> V {
        self.a.powi(ea).mul(&self.b.powi(eb)).mul(&self.q.powi(eq))
    }
}

/// `∏ (1 - r T)^e` together with a descriptive label.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalFactor<V> {
    pub label: String,
    roots: Vec<(V, i64)>,
}

pub type SymbolicFactor = LocalFactor<Monomial>;
pub type NumericFactor = LocalFactor<Complex64>;

impl<V: SatakeValue> LocalFactor<V> {
    pub fn from_roots(label: impl Into<String>, roots: impl IntoIterator<Item = V>) -> Self {
        LocalFactor {
            label: label.into(),
            roots: roots.into_iter().map(|r| (r, 1)).collect(),
        }
    }

    /// The empty product, 1.
    pub fn one(label: impl Into<String>) -> Self {
        LocalFactor {
            label: label.into(),
            roots: Vec::new(),
        }
    }

    pub fn roots(&self) -> &[(V, i64)] {
        &self.roots
    }

    /// Σ multiplicities: the degree in `T` when all multiplicities are nonnegative.
    pub fn degree(&self) -> i64 {
        self.roots.iter().map(|(_, e)| e).sum()
    }

    pub fn is_polynomial(&self) -> bool {
        self.roots.iter().all(|(_, e)| *e >= 0)
    }

    /// Replaces `T` by `q^c T` (the shift `s -> s - c/2`).
    pub fn shifted(&self, c: i64, vars: &Vars<V>) -> Self {
        if c == 0 {
            return self.clone();
        }
        let scale = vars.q.powi(c);
        LocalFactor {
            label: format!("{}[T->q^{c}T]", self.label),
            roots: self.roots.iter().map(|(r, e)| (r.mul(&scale), *e)).collect(),
        }
    }

    /// `self^e`; `e` may be zero or negative.
    pub fn pow(&self, e: i64) -> Self {
        LocalFactor {
            label: if e == 1 {
                self.label.clone()
            } else {
                format!("({})^{e}", self.label)
            },
            roots: if e == 0 {
                Vec::new()
            } else {
                self.roots.iter().map(|(r, m)| (r.clone(), m * e)).collect()
            },
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut roots = self.roots.clone();
        roots.extend(other.roots.iter().cloned());
        LocalFactor {
            label: format!("{} * {}", self.label, other.label),
            roots,
        }
    }

    pub fn product(label: impl Into<String>, factors: impl IntoIterator<Item = Self>) -> Self {
        let mut roots = Vec::new();
        for f in factors {
            roots.extend(f.roots);
        }
        LocalFactor {
            label: label.into(),
            roots,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// Which elliptic form a Hecke factor belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// f ∈ S_{2k}
    F,
    /// g ∈ S_{k+n}
    G,
}

/// `(1 - a q^{2k-1} T)(1 - a^{-1} q^{2k-1} T)` for f, and
/// `(1 - b q^{k+n-1} T)(1 - b^{-1} q^{k+n-1} T)` for g.
pub fn hecke_factor<V: SatakeValue>(role: Role, k: i64, n: i64, vars: &Vars<V>) -> LocalFactor<V> {
    match role {
        Role::F => {
            let w = 2 * k - 1;
            LocalFactor::from_roots("L(s,f)", [vars.monomial(1, 0, w), vars.monomial(-1, 0, w)])
        }
        Role::G => {
            let w = k + n - 1;
            LocalFactor::from_roots("L(s,g)", [vars.monomial(0, 1, w), vars.monomial(0, -1, w)])
        }
    }
}

/// `∏_{j=0}^{m} (1 - a^{m-2j} q^{m(2k-1)} T)`; `m = 0` gives `1 - T`.
pub fn sym_power_factor<V: SatakeValue>(m: i64, k: i64, vars: &Vars<V>) -> Result<LocalFactor<V>> {
    if m < 0 {
        return Err(Error::InvalidInput(format!("symmetric power {m} < 0")));
    }
    let w = m * (2 * k - 1);
    Ok(LocalFactor::from_roots(
        format!("L(s,sym_{m} f)"),
        (0..=m).map(|j| vars.monomial(m - 2 * j, 0, w)),
    ))
}

/// `∏_{j=0}^{m-1} ∏_{ε=±1} (1 - a^{m-1-2j} b^ε q^{(m-1)(2k-1)+(k+n-1)} T)`, degree 2m.
/// `m = 0` delegates to the Hecke factor of g (same as `m = 1`).
pub fn tensor_factor<V: SatakeValue>(m: i64, k: i64, n: i64, vars: &Vars<V>) -> Result<LocalFactor<V>> {
    if m < 0 {
        return Err(Error::InvalidInput(format!("tensor index {m} < 0")));
    }
    if m == 0 {
        return Ok(hecke_factor(Role::G, k, n, vars));
    }
    let w = (m - 1) * (2 * k - 1) + (k + n - 1);
    let roots = (0..m).flat_map(|j| [1, -1].map(|eps| vars.monomial(m - 1 - 2 * j, eps, w)));
    Ok(LocalFactor::from_roots(format!("L(s,g x sym_{} f)", m - 1), roots))
}

/// `(1 - μ₀T) ∏_{S ≠ ∅} (1 - μ₀ ∏_{i∈S} μᵢ T)` over all subsets of `{1..g}`.
pub fn spinor_factor<V: SatakeValue>(params: &SatakeParams<V>) -> Result<LocalFactor<V>> {
    let g = params.genus;
    if g > MAX_SPINOR_GENUS {
        return Err(Error::GenusTooLarge {
            genus: g,
            max: MAX_SPINOR_GENUS,
        });
    }
    let roots = par::map_indices(1usize << g, |mask| {
        params
            .mus
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .fold(params.mu0.clone(), |acc, (_, mu)| acc.mul(mu))
    });
    Ok(LocalFactor::from_roots(format!("L(s,F,spin) genus {g}"), roots))
}

/// `(1 - T) ∏ (1 - μᵢ T)(1 - μᵢ^{-1} T)`, degree 2g+1.
pub fn standard_factor<V: SatakeValue>(params: &SatakeParams<V>) -> LocalFactor<V> {
    let roots = std::iter::once(V::one()).chain(params.mus.iter().flat_map(|m| [m.clone(), m.inv()]));
    LocalFactor::from_roots(format!("L(s,F,st) genus {}", params.genus), roots)
}

/// Denominator of G_p: `∏_{i=1}^{n-1} (1 + a q^{1-2i})(1 + a^{-1} q^{1-2i})`; 1 for n = 1.
pub fn gp_constant(n: i64) -> Result<LaurentPoly> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("n = {n} must be >= 1")));
    }
    let one = LaurentPoly::one();
    Ok((1..n).fold(LaurentPoly::one(), |acc, i| {
        let e = (1 - 2 * i) as i32;
        let left = &one + &LaurentPoly::monomial(Monomial::abq(1, 0, e));
        let right = &one + &LaurentPoly::monomial(Monomial::abq(-1, 0, e));
        &acc * &(&left * &right)
    }))
}

/// T_{2n-1}(p)-eigenvalue of F_{f,g} from the Hecke eigenvalue of g:
/// `λ_g(p) p^{-(n-1)(n+2)/2} p^{(n-1)(k+n)} ∏ (1 + a q^{1-2i})(1 + a^{-1} q^{1-2i})`.
pub fn c1_eigenvalue(n: i64, k: i64) -> Result<LaurentPoly> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n = {n} must be >= 2")));
    }
    let lambda_g = &LaurentPoly::var_b() + &LaurentPoly::monomial(Monomial::abq(0, -1, 0));
    let q_exp = (k + n - 1) - (n - 1) * (n + 2) + 2 * (n - 1) * (k + n);
    let scaled = lambda_g.mul_monomial(&Monomial::abq(0, 0, q_exp as i32));
    Ok(&scaled * &gp_constant(n)?)
}

/// `μ₀ ∏ (1 + μᵢ)`, the T_g(p)-eigenvalue in terms of Satake parameters.
pub fn frobenius_eigenvalue(params: &SatakeParams<Monomial>) -> LaurentPoly {
    let one = LaurentPoly::one();
    params.mus.iter().fold(LaurentPoly::monomial(params.mu0), |acc, mu| {
        &acc * &(&one + &LaurentPoly::monomial(*mu))
    })
}

/// `(1 - mT)^e` as a power series truncated after `T^len-1` (all terms if `e >= 0`).
fn linear_power_series(m: &Monomial, e: i64, len: usize) -> Vec<LaurentPoly> {
    let terms = if e >= 0 { (e as usize + 1).min(len) } else { len };
    let mut out = Vec::with_capacity(terms);
    // coefficient of T^j: C(e, j) (-m)^j, with the generalized binomial for e < 0
    let mut binom = BigInt::one();
    for j in 0..terms {
        let sign = if j % 2 == 0 { binom.clone() } else { -binom.clone() };
        out.push(LaurentPoly::term(m.pow(j as i64), sign));
        binom = binom * BigInt::from(e - j as i64) / BigInt::from(j as i64 + 1);
    }
    out
}

fn mul_truncated(x: &[LaurentPoly], y: &[LaurentPoly], len: usize) -> Vec<LaurentPoly> {
    let out_len = (x.len() + y.len()).saturating_sub(1).min(len);
    par::map_indices(out_len, |d| {
        let lo = d.saturating_sub(y.len() - 1);
        let pairs: Vec<_> = (lo..=d.min(x.len() - 1)).map(|i| (&x[i], &y[d - i])).collect();
        sum_of_products(&pairs)
    })
}

fn product_tree(pieces: &[Vec<LaurentPoly>], len: usize) -> Vec<LaurentPoly> {
    match pieces.len() {
        0 => vec![LaurentPoly::one()],
        1 => pieces[0].clone(),
        n => {
            let (left, right) = pieces.split_at(n / 2);
            let (l, r) = par::join(|| product_tree(left, len), || product_tree(right, len));
            mul_truncated(&l, &r, len)
        }
    }
}

impl LocalFactor<Monomial> {
    /// Roots merged into a canonical map; zero multiplicities dropped.
    pub fn canonical_roots(&self) -> BTreeMap<Monomial, i64> {
        let mut out: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (r, e) in &self.roots {
            *out.entry(*r).or_default() += e;
        }
        out.retain(|_, e| *e != 0);
        out
    }

    /// True if no root keeps a negative multiplicity after cancellation.
    pub fn reduces_to_polynomial(&self) -> bool {
        self.canonical_roots().values().all(|e| *e > 0)
    }

    /// Replaces `T` by `q^c T`.
    pub fn substitute_t_scale(&self, c: i64) -> Self {
        self.shifted(c, &Vars::symbolic())
    }

    /// Full coefficient list `[c_0, ..., c_d]` in `T`.
    pub fn expand(&self) -> Result<Vec<LaurentPoly>> {
        if !self.reduces_to_polynomial() {
            return Err(Error::NotPolynomial);
        }
        let d = self.degree().max(0) as usize;
        let mut coeffs = self.series(d + 1);
        coeffs.resize(d + 1, LaurentPoly::zero());
        Ok(coeffs)
    }

    /// Power-series coefficients of `T^0 .. T^{len-1}`; valid for negative multiplicities.
    pub fn series(&self, len: usize) -> Vec<LaurentPoly> {
        if len == 0 {
            return Vec::new();
        }
        let pieces: Vec<Vec<LaurentPoly>> = self
            .canonical_roots()
            .iter()
            .map(|(m, e)| linear_power_series(m, *e, len))
            .collect();
        product_tree(&pieces, len)
    }

    /// Coefficient of `T^j` in the (series) expansion.
    pub fn coefficient(&self, j: usize) -> LaurentPoly {
        self.series(j + 1).into_iter().nth(j).unwrap_or_default()
    }

    /// The factor as a single Laurent polynomial in `a, b, q, T`.
    pub fn to_poly(&self) -> Result<LaurentPoly> {
        Ok(LaurentPoly::from_t_coefficients(&self.expand()?))
    }

    /// Exact equality as polynomials (root multisets agree).
    pub fn same_polynomial(&self, other: &Self) -> bool {
        self.canonical_roots() == other.canonical_roots()
    }

    /// JSON with `label`, `degree`, the `T`-coefficients and the factored form.
    /// `truncate` limits the coefficient list to `T^0..=T^truncate`.
    pub fn to_json(&self, truncate: Option<usize>) -> Result<FactorJson> {
        let coeffs = match truncate {
            Some(t) => self
                .series(t + 1)
                .into_iter()
                .take((self.degree().max(0) as usize + 1).min(t + 1))
                .collect(),
            None => self.expand()?,
        };
        Ok(FactorJson {
            label: self.label.clone(),
            degree: self.degree(),
            coeffs,
            roots: self
                .canonical_roots()
                .into_iter()
                .map(|(m, e)| RootJson {
                    root: LaurentPoly::monomial(m),
                    multiplicity: e,
                })
                .collect(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootJson {
    pub root: LaurentPoly,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorJson {
    pub label: String,
    pub degree: i64,
    pub coeffs: Vec<LaurentPoly>,
    pub roots: Vec<RootJson>,
}

impl LocalFactor<Complex64> {
    /// Coefficients of `∏ (1 - r T)^e` in `T`, for nonnegative multiplicities.
    pub fn expand(&self) -> Result<Vec<Complex64>> {
        self.expand_scaled(1.0)
    }

    /// Coefficients in `u = T / scale`, i.e. of `∏ (1 - (r·scale) u)^e`.
    pub fn expand_scaled(&self, scale: f64) -> Result<Vec<Complex64>> {
        if !self.is_polynomial() {
            return Err(Error::NotPolynomial);
        }
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for (r, e) in &self.roots {
            let r = r * scale;
            for _ in 0..*e {
                coeffs.push(Complex64::new(0.0, 0.0));
                for j in (1..coeffs.len()).rev() {
                    let prev = coeffs[j - 1];
                    coeffs[j] -= r * prev;
                }
            }
        }
        Ok(coeffs)
    }

    /// Elementary symmetric functions of `|r|·scale`: the coefficient sizes
    /// to expect without cancellation.
    pub fn magnitude_profile(&self, scale: f64) -> Vec<f64> {
        let mut coeffs = vec![1.0];
        for (r, e) in &self.roots {
            let r = r.norm() * scale;
            for _ in 0..(*e).max(0) {
                coeffs.push(0.0);
                for j in (1..coeffs.len()).rev() {
                    let prev = coeffs[j - 1];
                    coeffs[j] += r * prev;
                }
            }
        }
        coeffs
    }

    /// Value `∏ (1 - r t)^e` of the factor at `T = t`.
    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.roots.iter().fold(Complex64::new(1.0, 0.0), |acc, (r, e)| {
            acc * (Complex64::new(1.0, 0.0) - r * t).powi(*e as i32)
        })
    }

    pub fn to_json(&self, p: u64) -> Result<serde_json::Value> {
        let coeffs = self.expand()?;
        Ok(serde_json::json!({
            "label": self.label,
            "degree": self.degree(),
            "prime": p,
            "coeffs": coeffs.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
        }))
    }
}

/// Builds the numeric factor from a symbolic one by substituting `vars`.
pub fn instantiate(factor: &SymbolicFactor, vars: &Vars<Complex64>) -> NumericFactor {
    LocalFactor {
        label: factor.label.clone(),
        roots: factor
            .roots()
            .iter()
            .map(|(m, e)| (vars.monomial(m.exp_a() as i64, m.exp_b() as i64, m.exp_q() as i64), *e))
            .collect(),
    }
}
