//! Satake parameters of Ikeda and Miyawaki-Ikeda lifts and the Weyl group action.
//!
//! Symbolic parameters are single `T`-free monomials in `a, b, q`; numeric
//! parameters are complex numbers at a fixed prime. Every parameter set
//! carries its similitude exponent `e`, with `μ₀² ∏ μᵢ = q^e`.

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::{LaurentPoly, Monomial};

/// Values a Satake parameter can take: a symbolic monomial or a complex number.
pub trait SatakeValue: Clone + Send + Sync + 'static {
    const MODE: &'static str;
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn powi(&self, e: i64) -> Self;
    fn to_json(&self) -> serde_json::Value;
}

impl SatakeValue for Monomial {
    const MODE: &'static str = "symbolic";
    fn one() -> Self {
        Monomial::ONE
    }
    fn mul(&self, other: &Self) -> Self {
        Monomial::mul(self, other)
    }
    fn inv(&self) -> Self {
        Monomial::inv(self)
    }
    fn powi(&self, e: i64) -> Self {
        Monomial::pow(self, e)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(LaurentPoly::monomial(*self)).expect("serializable")
    }
}

impl SatakeValue for Complex64 {
    const MODE: &'static str = "numeric";
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        Complex64::inv(self)
    }
    fn powi(&self, e: i64) -> Self {
        Complex64::powi(self, e as i32)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!([self.re, self.im])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SatakeParams<V> {
    pub genus: usize,
    pub mu0: V,
    pub mus: Vec<V>,
    /// Exponent of `q = p^{1/2}` in `μ₀² ∏ μᵢ`.
    pub similitude_exponent: i64,
}

pub type SymbolicParams = SatakeParams<Monomial>;
pub type NumericParams = SatakeParams<Complex64>;

/// `<n> = n(n+1)/2`
pub fn triangular(n: i64) -> i64 {
    n * (n + 1) / 2
}

/// q-exponent of the similitude for genus `g` and weight `w`: `2(g w - <g>)`.
pub fn similitude_exponent(genus: i64, weight: i64) -> i64 {
    2 * (genus * weight - triangular(genus))
}

impl<V: SatakeValue> SatakeParams<V> {
    /// μ₀² ∏ μᵢ
    pub fn similitude_value(&self) -> V {
        self.mus.iter().fold(self.mu0.mul(&self.mu0), |acc, m| acc.mul(m))
    }

    /// σᵢ: μ₀ ↦ μ₀μᵢ, μᵢ ↦ μᵢ⁻¹ (1-based index).
    pub fn weyl_sigma(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.genus {
            return Err(Error::IndexOutOfRange {
                index: i,
                genus: self.genus,
            });
        }
        let mut out = self.clone();
        out.mu0 = self.mu0.mul(&self.mus[i - 1]);
        out.mus[i - 1] = self.mus[i - 1].inv();
        Ok(out)
    }

    /// New `mus[j] = old mus[perm[j] - 1]`; `perm` is 1-based.
    pub fn weyl_permute(&self, perm: &[usize]) -> Result<Self> {
        let g = self.genus;
        let mut seen = vec![false; g];
        if perm.len() != g {
            return Err(Error::InvalidPermutation(g));
        }
        for &j in perm {
            if j == 0 || j > g || seen[j - 1] {
                return Err(Error::InvalidPermutation(g));
            }
            seen[j - 1] = true;
        }
        let mut out = self.clone();
        out.mus = perm.iter().map(|&j| self.mus[j - 1].clone()).collect();
        Ok(out)
    }

    /// Applies a word in the generators, e.g. from a random walk.
    pub fn apply_weyl_word(&self, word: &[WeylGenerator]) -> Result<Self> {
        word.iter().try_fold(self.clone(), |acc, g| match *g {
            WeylGenerator::Sigma(i) => acc.weyl_sigma(i),
            WeylGenerator::Transposition(i, j) => {
                let mut perm: Vec<usize> = (1..=acc.genus).collect();
                if i == 0 || j == 0 || i > acc.genus || j > acc.genus {
                    return Err(Error::InvalidPermutation(acc.genus));
                }
                perm.swap(i - 1, j - 1);
                acc.weyl_permute(&perm)
            }
        })
    }
}

/// Generators of the Weyl group action (1-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylGenerator {
    Sigma(usize),
    Transposition(usize, usize),
}

impl SymbolicParams {
    pub fn check_similitude(&self) -> bool {
        self.similitude_value() == Monomial::abq(0, 0, self.similitude_exponent as i32)
    }

    /// Substitutes `α → alpha`, `β → beta`, `q → √p`.
    pub fn instantiate(&self, alpha: Complex64, beta: Complex64, p: u64) -> NumericParams {
        let q = Complex64::new((p as f64).sqrt(), 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let ev = |m: &Monomial| m.eval_complex(alpha, beta, q, zero).expect("nonzero Satake data");
        SatakeParams {
            genus: self.genus,
            mu0: ev(&self.mu0),
            mus: self.mus.iter().map(ev).collect(),
            similitude_exponent: self.similitude_exponent,
        }
    }

    /// Copy with one exponent of one parameter moved by `delta` (index 0 is μ₀).
    pub fn perturbed(&self, index: usize, var: Variable, delta: i32) -> Result<Self> {
        if index > self.genus {
            return Err(Error::IndexOutOfRange {
                index,
                genus: self.genus,
            });
        }
        let bump = match var {
            Variable::A => Monomial::abq(delta, 0, 0),
            Variable::B => Monomial::abq(0, delta, 0),
            Variable::Q => Monomial::abq(0, 0, delta),
        };
        let mut out = self.clone();
        if index == 0 {
            out.mu0 = out.mu0.mul(&bump);
        } else {
            out.mus[index - 1] = out.mus[index - 1].mul(&bump);
        }
        Ok(out)
    }
}

/// One of the Laurent variables of a Satake parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variable {
    A,
    B,
    Q,
}

impl NumericParams {
    /// Similitude check at prime `p`, relative tolerance `tol`.
    pub fn check_similitude(&self, p: u64, tol: f64) -> bool {
        let expected = (p as f64).powf(self.similitude_exponent as f64 / 2.0);
        let got = self.similitude_value();
        (got - Complex64::new(expected, 0.0)).norm() <= tol * expected
    }
}

impl<V: SatakeValue> Serialize for SatakeParams<V> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SatakeParams", 5)?;
        s.serialize_field("genus", &self.genus)?;
        s.serialize_field("mode", V::MODE)?;
        s.serialize_field("mu0", &self.mu0.to_json())?;
        s.serialize_field("mus", &self.mus.iter().map(V::to_json).collect::<Vec<_>>())?;
        s.serialize_field("similitude_exponent", &self.similitude_exponent)?;
        s.end()
    }
}

fn positive(name: &str, v: i64, min: i64) -> Result<()> {
    if v < min {
        return Err(Error::InvalidInput(format!("{name} = {v} must be >= {min}")));
    }
    Ok(())
}

/// Satake parameters of the genus-2n Ikeda lift of f ∈ S_{2k}:
/// μ₀ = a^{-n} q^{n(2k-1)}, μᵢ = a q^{2i-2n-1} (i = 1..2n).
pub fn ikeda_satake(n: i64, k: i64) -> Result<SymbolicParams> {
    positive("n", n, 1)?;
    positive("k", k, 1)?;
    let genus = 2 * n;
    Ok(SatakeParams {
        genus: genus as usize,
        mu0: Monomial::abq(-n as i32, 0, (n * (2 * k - 1)) as i32),
        mus: (1..=genus)
            .map(|i| Monomial::abq(1, 0, (2 * i - 2 * n - 1) as i32))
            .collect(),
        similitude_exponent: similitude_exponent(genus, k + n),
    })
}

/// Satake parameters of the genus-(2n-1) Miyawaki-Ikeda lift F_{f,g}:
/// μ₀ = a^{-(n-1)} b^{-1} q^{(n-1)(2k-1)+(k+n-1)},
/// μᵢ = a q^{2i-2n+1} (i = 1..2n-2), μ_{2n-1} = b².
pub fn miyawaki_satake(n: i64, k: i64) -> Result<SymbolicParams> {
    positive("n", n, 2)?;
    positive("k", k, 1)?;
    let genus = 2 * n - 1;
    let mut mus: Vec<Monomial> = (1..=2 * n - 2)
        .map(|i| Monomial::abq(1, 0, (2 * i - 2 * n + 1) as i32))
        .collect();
    mus.push(Monomial::abq(0, 2, 0));
    Ok(SatakeParams {
        genus: genus as usize,
        mu0: Monomial::abq(-(n - 1) as i32, -1, ((n - 1) * (2 * k - 1) + (k + n - 1)) as i32),
        mus,
        similitude_exponent: similitude_exponent(genus, k + n),
    })
}

/// Numeric Ikeda parameters at `p` from the Satake parameter `alpha` of f.
pub fn ikeda_satake_numeric(n: i64, k: i64, alpha: Complex64, p: u64) -> Result<NumericParams> {
    positive("n", n, 1)?;
    positive("k", k, 1)?;
    let pf = p as f64;
    let genus = 2 * n;
    Ok(SatakeParams {
        genus: genus as usize,
        mu0: alpha.powi(-n as i32) * pf.powf(n as f64 * (k as f64 - 0.5)),
        mus: (1..=genus)
            .map(|i| alpha * pf.powf(i as f64 - n as f64 - 0.5))
            .collect(),
        similitude_exponent: similitude_exponent(genus, k + n),
    })
}

/// Numeric Miyawaki-Ikeda parameters at `p` from `alpha` (of f) and `beta` (of g).
pub fn miyawaki_satake_numeric(n: i64, k: i64, alpha: Complex64, beta: Complex64, p: u64) -> Result<NumericParams> {
    positive("n", n, 2)?;
    positive("k", k, 1)?;
    let pf = p as f64;
    let genus = 2 * n - 1;
    let mut mus: Vec<Complex64> = (1..=2 * n - 2)
        .map(|i| alpha * pf.powf(i as f64 - n as f64 + 0.5))
        .collect();
    mus.push(beta * beta);
    let e0 = (n - 1) as f64 * (k as f64 - 0.5) + (k + n - 1) as f64 / 2.0;
    Ok(SatakeParams {
        genus: genus as usize,
        mu0: alpha.powi(-(n - 1) as i32) * beta.inv() * pf.powf(e0),
        mus,
        similitude_exponent: similitude_exponent(genus, k + n),
    })
}

/// Reduces modulo `b² = -1`: `b^{2j+r} = (-1)^j b^r` with `r ∈ {0, 1}`.
pub fn reduce_b_squared_minus_one(poly: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms(poly.terms().map(|(m, c)| {
        let e = m.exp_b();
        let (j, r) = (e.div_euclid(2), e.rem_euclid(2));
        let sign: BigInt = if j.rem_euclid(2) == 0 { c.clone() } else { -c };
        let reduced = Monomial::new(m.exp_a() as i64, r as i64, m.exp_q() as i64, m.exp_t() as i64)
            .expect("T exponent unchanged");
        (reduced, sign)
    }))
}

/// Checks that σ at the index of `μ_{2n-1} = b²`, followed by `b² = -1`,
/// turns the parameter set into the one with μ₀ negated.
pub fn miyawaki_inverse_mu_check(n: i64, k: i64) -> Result<bool> {
    let params = miyawaki_satake(n, k)?;
    let last = params.genus;
    let moved = params.weyl_sigma(last)?;
    let reduce = |m: &Monomial| reduce_b_squared_minus_one(&LaurentPoly::monomial(*m));
    let original: Vec<LaurentPoly> = std::iter::once(-reduce(&params.mu0))
        .chain(params.mus.iter().map(reduce))
        .collect();
    let image: Vec<LaurentPoly> = std::iter::once(reduce(&moved.mu0))
        .chain(moved.mus.iter().map(reduce))
        .collect();
    Ok(original == image && reduce(&params.mus[last - 1]) == LaurentPoly::constant(-1))
}
