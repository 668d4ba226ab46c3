//! Exact q-expansions of level-one modular forms and Hecke eigenvalues.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default number of q-expansion coefficients beyond the constant term.
pub const DEFAULT_PRECISION: usize = 200;

/// `Σ_{n=0}^{N} coeffs[n] q^n` for a form of the given weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    pub weight: u32,
    pub coeffs: Vec<BigRational>,
}

impl QExpansion {
    /// Largest index N with a known coefficient.
    pub fn precision(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, n: usize) -> Option<&BigRational> {
        self.coeffs.get(n)
    }

    pub fn is_cusp_form(&self) -> bool {
        self.coeffs.first().is_some_and(|c| c.is_zero())
    }

    fn from_integers(weight: u32, coeffs: Vec<BigInt>) -> Self {
        QExpansion {
            weight,
            coeffs: coeffs.into_iter().map(BigRational::from_integer).collect(),
        }
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&p| is_prime(p)).collect()
}

fn check_weight(weight: i64) -> Result<u32> {
    if weight < 4 || weight % 2 != 0 {
        return Err(Error::UnsupportedWeight(weight));
    }
    u32::try_from(weight).map_err(|_| Error::UnsupportedWeight(weight))
}

/// Bernoulli number B_k (with B_1 = -1/2).
pub fn bernoulli(k: u32) -> BigRational {
    let mut b: Vec<BigRational> = Vec::with_capacity(k as usize + 1);
    b.push(BigRational::one());
    for m in 1..=k as usize {
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b.pop().unwrap()
}

/// σ_e(n) = Σ_{d | n} d^e.
pub fn divisor_sigma(n: u64, e: u32) -> BigInt {
    let mut acc = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc += BigInt::from(d).pow(e);
            let other = n / d;
            if other != d {
                acc += BigInt::from(other).pow(e);
            }
        }
        d += 1;
    }
    acc
}

/// Normalized Eisenstein series `E_k = 1 - (2k/B_k) Σ σ_{k-1}(n) q^n`.
pub fn eisenstein(weight: i64, precision: usize) -> Result<QExpansion> {
    let k = check_weight(weight)?;
    let factor = -BigRational::from_integer(BigInt::from(2 * k)) / bernoulli(k);
    let mut coeffs = Vec::with_capacity(precision + 1);
    coeffs.push(BigRational::one());
    for n in 1..=precision as u64 {
        coeffs.push(&factor * BigRational::from_integer(divisor_sigma(n, k - 1)));
    }
    Ok(QExpansion { weight: k, coeffs })
}

fn series_mul(x: &[BigInt], y: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, xi) in x.iter().enumerate().take(len) {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate().take(len - i) {
            out[i + j] += xi * yj;
        }
    }
    out
}

fn series_pow(x: &[BigInt], e: u32, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    if len > 0 {
        out[0] = BigInt::one();
    }
    for _ in 0..e {
        out = series_mul(&out, x, len);
    }
    out
}

fn integral_eisenstein(weight: i64, precision: usize) -> Vec<BigInt> {
    eisenstein(weight, precision)
        .expect("weight 4 or 6")
        .integer_coeffs()
        .expect("E4, E6 are integral")
}

/// Δ = (E₄³ − E₆²)/1728.
pub fn delta(precision: usize) -> QExpansion {
    QExpansion::from_integers(12, delta_integers(precision))
}

fn delta_integers(precision: usize) -> Vec<BigInt> {
    let len = precision + 1;
    let e4 = integral_eisenstein(4, precision);
    let e6 = integral_eisenstein(6, precision);
    let e4_cubed = series_pow(&e4, 3, len);
    let e6_squared = series_pow(&e6, 2, len);
    let d = BigInt::from(1728);
    e4_cubed.iter().zip(&e6_squared).map(|(x, y)| (x - y) / &d).collect()
}

/// dim S_k(SL₂(ℤ)) for even k ≥ 4.
pub fn cusp_dimension(weight: u32) -> usize {
    if weight < 4 || weight % 2 == 1 {
        return 0;
    }
    // number of j >= 1 with weight - 12j in {0, 4, 6, 8, ...}
    (1..=weight / 12).filter(|j| weight - 12 * j != 2).count()
}

/// Echelonized integral basis of S_k from the monomials Δ^j E₄^a E₆^b.
///
/// The i-th element has `coeffs[j] = δ_{ij}` for `1 <= j <= d`.
pub fn victor_miller_basis(weight: i64, precision: usize) -> Result<Vec<QExpansion>> {
    let k = check_weight(weight)?;
    let d = cusp_dimension(k);
    if d == 0 {
        return Err(Error::EmptySpace(k));
    }
    if precision < d {
        return Err(Error::InvalidInput(format!(
            "precision {precision} is below the dimension {d}"
        )));
    }
    let len = precision + 1;
    let e4 = integral_eisenstein(4, precision);
    let e6 = integral_eisenstein(6, precision);
    let delta = delta_integers(precision);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(d);
    let mut delta_pow = delta.clone();
    for j in 1..=k as usize / 12 {
        let rest = k as usize - 12 * j;
        if rest == 2 {
            delta_pow = series_mul(&delta_pow, &delta, len);
            continue;
        }
        // rest = 4a + 6b with b ∈ {0, 1}
        let (a, b) = if rest.is_multiple_of(4) {
            (rest / 4, 0)
        } else {
            ((rest - 6) / 4, 1)
        };
        let mut row = series_mul(&delta_pow, &series_pow(&e4, a as u32, len), len);
        if b == 1 {
            row = series_mul(&row, &e6, len);
        }
        rows.push(row);
        delta_pow = series_mul(&delta_pow, &delta, len);
    }
    // rows[i] = q^{i+1} + O(q^{i+2}); clear the entries above the diagonal
    for i in (0..d).rev() {
        for r in 0..i {
            let c = rows[r][i + 1].clone();
            if !c.is_zero() {
                let pivot = rows[i].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= &c * y;
                }
            }
        }
    }
    Ok(rows.into_iter().map(|r| QExpansion::from_integers(k, r)).collect())
}

/// A normalized Hecke eigenform with precomputed prime eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenformData {
    pub weight: u32,
    /// `None` when eigenvalues were ingested from a table.
    pub qexp: Option<QExpansion>,
    pub eigenvalues: BTreeMap<u64, BigRational>,
}

impl EigenformData {
    pub fn from_qexpansion(qexp: QExpansion) -> Result<Self> {
        if !qexp.is_cusp_form() || qexp.coeff(1).is_none_or(|c| !c.is_one()) {
            return Err(Error::InvalidInput("not a normalized cusp form".into()));
        }
        let eigenvalues = primes_up_to(qexp.precision() as u64)
            .into_iter()
            .map(|p| (p, qexp.coeffs[p as usize].clone()))
            .collect();
        Ok(EigenformData {
            weight: qexp.weight,
            qexp: Some(qexp),
            eigenvalues,
        })
    }

    /// Eigenvalues supplied directly, e.g. from `parse_eigenvalue_table`.
    pub fn from_table(weight: u32, eigenvalues: BTreeMap<u64, BigRational>) -> Result<Self> {
        check_weight(weight as i64)?;
        if let Some(p) = eigenvalues.keys().find(|p| !is_prime(**p)) {
            return Err(Error::NonPrime(*p));
        }
        Ok(EigenformData {
            weight,
            qexp: None,
            eigenvalues,
        })
    }

    /// λ(p) as a double, for the numeric pipeline.
    pub fn eigenvalue_f64(&self, p: u64) -> Result<f64> {
        Ok(hecke_eigenvalue(self, p)?.to_f64().unwrap_or(f64::NAN))
    }
}

/// λ(p) = a(p) for a normalized eigenform.
pub fn hecke_eigenvalue(form: &EigenformData, p: u64) -> Result<BigRational> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if let Some(v) = form.eigenvalues.get(&p) {
        return Ok(v.clone());
    }
    let precision = form.qexp.as_ref().map_or(0, |q| q.precision());
    if let Some(c) = form.qexp.as_ref().and_then(|q| q.coeff(p as usize)) {
        return Ok(c.clone());
    }
    Err(Error::InsufficientPrecision { p, precision })
}

/// Matrix of T_2 on the echelon basis: column j holds the first d
/// coefficients of T_2(basis_j).
fn t2_matrix(basis: &[QExpansion], weight: u32) -> Vec<Vec<BigRational>> {
    let d = basis.len();
    let p_pow = BigRational::from_integer(BigInt::from(2).pow(weight - 1));
    let mut m = vec![vec![BigRational::zero(); d]; d];
    for (j, b) in basis.iter().enumerate() {
        for i in 0..d {
            let n = i + 1;
            let mut v = b.coeffs[2 * n].clone();
            if n % 2 == 0 {
                v += &p_pow * &b.coeffs[n / 2];
            }
            m[i][j] = v;
        }
    }
    m
}

/// Characteristic polynomial (monic, ascending coefficients) by Faddeev-LeVerrier.
fn charpoly(m: &[Vec<BigRational>]) -> Vec<BigRational> {
    let d = m.len();
    let mut coeffs = vec![BigRational::zero(); d + 1];
    coeffs[d] = BigRational::one();
    let identity = |i: usize, j: usize| {
        if i == j {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    };
    let mut mk: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); d]; d];
    for k in 1..=d {
        // M_k = A M_{k-1} + c_{d-k+1} I
        let prev = mk.clone();
        for i in 0..d {
            for j in 0..d {
                let mut acc = BigRational::zero();
                for (l, row) in prev.iter().enumerate() {
                    acc += &m[i][l] * &row[j];
                }
                mk[i][j] = acc + &coeffs[d - k + 1] * identity(i, j);
            }
        }
        let mut trace = BigRational::zero();
        for i in 0..d {
            for l in 0..d {
                trace += &m[i][l] * &mk[l][i];
            }
        }
        coeffs[d - k] = -trace / BigRational::from_integer(BigInt::from(k));
    }
    coeffs
}

fn eval_rational_poly(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Approximate complex roots of a polynomial (ascending coefficients, monic).
fn approximate_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let scale = coeffs[..d].iter().map(|c| c.abs()).fold(1.0f64, f64::max);
    let mut roots: Vec<Complex64> = (0..d)
        .map(|i| Complex64::from_polar(scale.powf(1.0 / d as f64), 0.4 + i as f64))
        .collect();
    let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    for _ in 0..2000 {
        let snapshot = roots.clone();
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, r) in snapshot.iter().enumerate() {
                if i != j {
                    denom *= roots[i] - r;
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
        }
    }
    roots
}

/// Exact kernel vector of a square rational matrix with one-dimensional kernel.
fn kernel_vector(mut a: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let d = a.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..d {
        let Some(p) = (row..d).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..d {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[row].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() + 1 != d {
        return None;
    }
    let free = (0..d).find(|c| !pivots.contains(c))?;
    let mut v = vec![BigRational::zero(); d];
    v[free] = BigRational::one();
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = -a[r][free].clone();
    }
    Some(v)
}

/// All normalized Hecke eigenforms of weight k, provided the T_2 eigenvalues are rational.
pub fn eigenforms(weight: i64, precision: usize) -> Result<Vec<EigenformData>> {
    let k = check_weight(weight)?;
    let d = cusp_dimension(k);
    if d == 0 {
        return Err(Error::EmptySpace(k));
    }
    let basis = victor_miller_basis(weight, precision.max(2 * d))?;
    if d == 1 {
        let mut f = basis.into_iter().next().unwrap();
        f.coeffs.truncate(precision + 1);
        return Ok(vec![EigenformData::from_qexpansion(f)?]);
    }
    let m = t2_matrix(&basis, k);
    let cp = charpoly(&m);
    // monic with integer coefficients: rational roots are integers
    let approx = approximate_roots(&cp.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect::<Vec<_>>());
    let mut eigenvalues: Vec<BigInt> = Vec::new();
    for z in approx {
        let cand = BigInt::from(z.re.round() as i128);
        let x = BigRational::from_integer(cand.clone());
        if eval_rational_poly(&cp, &x).is_zero() && !eigenvalues.contains(&cand) {
            eigenvalues.push(cand);
        }
    }
    if eigenvalues.len() != d {
        return Err(Error::IrrationalEigenspace(k));
    }
    eigenvalues.sort();
    let mut out = Vec::with_capacity(d);
    for lam in eigenvalues {
        let shifted: Vec<Vec<BigRational>> = m
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, x)| {
                        if i == j {
                            x - BigRational::from_integer(lam.clone())
                        } else {
                            x.clone()
                        }
                    })
                    .collect()
            })
            .collect();
        let v = kernel_vector(shifted).ok_or(Error::IrrationalEigenspace(k))?;
        if v[0].is_zero() {
            return Err(Error::IrrationalEigenspace(k));
        }
        let norm = v[0].recip();
        let mut coeffs = vec![BigRational::zero(); precision + 1];
        for (vj, bj) in v.iter().zip(&basis) {
            let w = vj * &norm;
            for (c, b) in coeffs.iter_mut().zip(&bj.coeffs) {
                *c += &w * b;
            }
        }
        out.push(EigenformData::from_qexpansion(QExpansion { weight: k, coeffs })?);
    }
    Ok(out)
}

/// The unique normalized eigenform of the given weight.
pub fn eigenform(weight: i64, precision: usize) -> Result<EigenformData> {
    let mut forms = eigenforms(weight, precision)?;
    if forms.len() != 1 {
        return Err(Error::InvalidInput(format!(
            "weight {weight} has {} eigenforms; pick one explicitly",
            forms.len()
        )));
    }
    Ok(forms.pop().unwrap())
}

/// Roots of `X² − λ p^{−(w−1)/2} X + 1`, ordered with the nonnegative
/// imaginary part first (ties: larger real part first). The second entry is
/// the inverse of the first.
pub fn numeric_satake(lambda: &BigRational, weight: u32, p: u64) -> (Complex64, Complex64) {
    let x = lambda.to_f64().unwrap_or(f64::NAN) * (p as f64).powf(-(weight as f64 - 1.0) / 2.0);
    numeric_satake_normalized(x)
}

/// Same as `numeric_satake` for an already normalized trace `x = α + α⁻¹`.
pub fn numeric_satake_normalized(x: f64) -> (Complex64, Complex64) {
    let disc = x * x - 4.0;
    let alpha = if disc <= 0.0 {
        Complex64::new(x / 2.0, (-disc).sqrt() / 2.0)
    } else if x >= 0.0 {
        Complex64::new((x + disc.sqrt()) / 2.0, 0.0)
    } else {
        // larger real root of a pair with negative sum
        Complex64::new(2.0 / (x - disc.sqrt()), 0.0)
    };
    (alpha, alpha.inv())
}

/// Parses `<p> <num>[/<den>]` lines; blank lines and `#` comments are skipped.
pub fn parse_eigenvalue_table(text: &str) -> Result<BTreeMap<u64, BigRational>> {
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Parse(format!("line {}: {msg}: {line:?}", lineno + 1));
        let mut parts = line.split_whitespace();
        let p: u64 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err("bad prime"))?;
        let v = parts.next().ok_or_else(|| err("missing eigenvalue"))?;
        if parts.next().is_some() {
            return Err(err("trailing fields"));
        }
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        let value = match v.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.parse().map_err(|_| err("bad numerator"))?;
                let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
                if d.is_zero() {
                    return Err(err("zero denominator"));
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(v.parse().map_err(|_| err("bad eigenvalue"))?),
        };
        out.insert(p, value);
    }
    Ok(out)
}

/// Renders a rational as `n` or `n/d`.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    /// q ∏ (1 − q^n)^24, expanded directly.
    fn eta_delta(precision: usize) -> Vec<BigInt> {
        let len = precision + 1;
        let mut prod = vec![BigInt::zero(); len];
        prod[0] = BigInt::one();
        for n in 1..len {
            for _ in 0..24 {
                for i in (n..len).rev() {
                    let v = prod[i - n].clone();
                    prod[i] -= v;
                }
            }
        }
        let mut out = vec![BigInt::zero(); len];
        out[1..len].clone_from_slice(&prod[..(len - 1)]);
        out
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(4), BigRational::new((-1).into(), 30.into()));
        assert_eq!(bernoulli(6), BigRational::new(1.into(), 42.into()));
        assert_eq!(bernoulli(12), BigRational::new((-691).into(), 2730.into()));
    }

    #[test]
    fn eisenstein_examples() {
        let e4 = eisenstein(4, 2).unwrap();
        assert_eq!(e4.coeffs, vec![int(1), int(240), int(2160)]);
        assert_eq!(eisenstein(6, 1).unwrap().coeffs, vec![int(1), int(-504)]);
        for k in (4..=30).step_by(2) {
            assert!(eisenstein(k, 3).unwrap().coeffs[0].is_one());
        }
        assert_eq!(eisenstein(5, 3), Err(Error::UnsupportedWeight(5)));
        assert_eq!(eisenstein(2, 3), Err(Error::UnsupportedWeight(2)));
    }

    #[test]
    fn delta_matches_eta_product() {
        let d = delta(100);
        assert!(d.coeffs[1].is_one());
        assert_eq!(d.coeffs[2], int(-24));
        let eta = eta_delta(100);
        assert_eq!(d.integer_coeffs().unwrap(), eta);
    }

    #[test]
    fn dimensions() {
        let expected = [
            (4, 0),
            (10, 0),
            (12, 1),
            (14, 0),
            (16, 1),
            (20, 1),
            (24, 2),
            (26, 1),
            (36, 3),
            (38, 2),
        ];
        for (k, d) in expected {
            assert_eq!(cusp_dimension(k), d, "weight {k}");
        }
    }

    #[test]
    fn victor_miller_examples() {
        let b12 = victor_miller_basis(12, 50).unwrap();
        assert_eq!(b12.len(), 1);
        assert_eq!(b12[0], delta(50));
        let b20 = victor_miller_basis(20, 20).unwrap();
        assert_eq!(b20.len(), 1);
        assert!(b20[0].coeffs[1].is_one());
        let b24 = victor_miller_basis(24, 20).unwrap();
        assert_eq!(b24.len(), 2);
        for (i, f) in b24.iter().enumerate() {
            for j in 1..=2 {
                assert_eq!(f.coeffs[j], int((i + 1 == j) as i64));
            }
        }
        assert_eq!(victor_miller_basis(14, 10), Err(Error::EmptySpace(14)));
    }

    #[test]
    fn eigenvalues_and_hecke_consistency() {
        let d = eigenform(12, 50).unwrap();
        assert_eq!(hecke_eigenvalue(&d, 2).unwrap(), int(-24));
        assert_eq!(hecke_eigenvalue(&d, 3).unwrap(), int(252));
        assert_eq!(hecke_eigenvalue(&d, 4), Err(Error::NonPrime(4)));
        assert_eq!(
            hecke_eigenvalue(&d, 53),
            Err(Error::InsufficientPrecision { p: 53, precision: 50 })
        );

        // weight 20: a(2n) + 2^19 a(n/2) = λ a(n) for n ≤ 20
        let f = eigenform(20, 40).unwrap();
        let qe = f.qexp.as_ref().unwrap();
        let lam = hecke_eigenvalue(&f, 2).unwrap();
        assert_eq!(lam, int(456));
        let p19 = int(2i64.pow(19));
        for n in 1..=20 {
            let mut lhs = qe.coeffs[2 * n].clone();
            if n % 2 == 0 {
                lhs += &p19 * &qe.coeffs[n / 2];
            }
            assert_eq!(lhs, &lam * &qe.coeffs[n], "n = {n}");
        }
    }

    #[test]
    fn irrational_weight_rejected() {
        assert_eq!(eigenforms(24, 30), Err(Error::IrrationalEigenspace(24)));
    }

    #[test]
    fn charpoly_and_kernel() {
        // diag(2, 5) has char poly x^2 - 7x + 10
        let m = vec![vec![int(2), int(0)], vec![int(0), int(5)]];
        assert_eq!(charpoly(&m), vec![int(10), int(-7), int(1)]);
        let k = kernel_vector(vec![vec![int(1), int(2)], vec![int(2), int(4)]]).unwrap();
        assert_eq!(k, vec![int(-2), int(1)]);
    }

    #[test]
    fn satake_examples() {
        let (a, ai) = numeric_satake(&int(0), 12, 5);
        assert!((a - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((ai - Complex64::new(0.0, -1.0)).norm() < 1e-15);

        // λ = 2 p^{(w-1)/2} gives the double root 1
        let lam = BigRational::from_integer(BigInt::from(2) * BigInt::from(3).pow(11));
        let (a, ai) = numeric_satake(&lam, 23, 3);
        assert!((a - Complex64::new(1.0, 0.0)).norm() < 1e-7);
        assert!((ai - Complex64::new(1.0, 0.0)).norm() < 1e-7);

        let (a, ai) = numeric_satake(&int(-24), 12, 2);
        assert!(((a * ai) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(((a + ai).re - (-24.0 * 2f64.powf(-5.5))).abs() < 1e-12);
        assert!(a.im >= 0.0);
    }

    #[test]
    fn satake_ordering_real_roots() {
        let (a, ai) = numeric_satake_normalized(3.0);
        assert!(a.re > ai.re);
        let (a, ai) = numeric_satake_normalized(-3.0);
        assert!(a.re > ai.re);
        assert!(((a + ai).re + 3.0).abs() < 1e-14);
    }

    #[test]
    fn table_parsing() {
        let t = parse_eigenvalue_table("# delta\n2 -24\n3 252\n\n5 4830/1\n7 1/3\n").unwrap();
        assert_eq!(t[&2], int(-24));
        assert_eq!(t[&7], BigRational::new(1.into(), 3.into()));
        assert_eq!(parse_eigenvalue_table("4 1"), Err(Error::NonPrime(4)));
        assert!(parse_eigenvalue_table("2 x").is_err());
        assert!(parse_eigenvalue_table("2 1/0").is_err());
        assert_eq!(format_rational(&t[&7]), "1/3");
    }

    #[test]
    fn multiplicativity() {
        let f = eigenform(20, 100).unwrap();
        let qe = f.qexp.unwrap();
        let ps = primes_up_to(100);
        for &p in &ps {
            for &q in &ps {
                if p < q && p * q <= 100 {
                    assert_eq!(
                        &qe.coeffs[p as usize] * &qe.coeffs[q as usize],
                        qe.coeffs[(p * q) as usize]
                    );
                }
            }
        }
    }
}
