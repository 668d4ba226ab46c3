//! Exact Laurent polynomials in the four fixed variables
//!
//! * `a` stands for the Satake parameter of `f` (α_p),
//! * `b` for the Satake parameter of `g` (β_p),
//! * `q` for `p^{1/2}`,
//! * `T` for `p^{-s}`.
//!
//! `a`, `b` and `q` may carry negative exponents; `T` may not. Half-integral
//! powers of `p` become integral powers of `q`, so all exponents are integers
//! and all coefficients are integers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent vector `a^a b^b q^q T^t`.
///
/// Field order fixes the canonical ordering: lexicographic on `(T, a, b, q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    t: u32,
    a: i32,
    b: i32,
    q: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { t: 0, a: 0, b: 0, q: 0 };

    /// Builds `a^ea b^eb q^eq T^et`; rejects `et < 0`.
    pub fn new(ea: i64, eb: i64, eq: i64, et: i64) -> Result<Self> {
        if et < 0 {
            return Err(Error::NegativeTExponent(et));
        }
        let cvt = |e: i64| i32::try_from(e).map_err(|_| Error::InvalidInput(format!("exponent {e} out of range")));
        Ok(Monomial {
            t: u32::try_from(et).map_err(|_| Error::InvalidInput(format!("exponent {et} out of range")))?,
            a: cvt(ea)?,
            b: cvt(eb)?,
            q: cvt(eq)?,
        })
    }

    /// A monomial free of `T`.
    pub const fn abq(a: i32, b: i32, q: i32) -> Self {
        Monomial { t: 0, a, b, q }
    }

    pub const fn a() -> Self {
        Self::abq(1, 0, 0)
    }

    pub const fn b() -> Self {
        Self::abq(0, 1, 0)
    }

    pub const fn q() -> Self {
        Self::abq(0, 0, 1)
    }

    pub const fn t() -> Self {
        Monomial { t: 1, a: 0, b: 0, q: 0 }
    }

    pub fn exp_a(&self) -> i32 {
        self.a
    }

    pub fn exp_b(&self) -> i32 {
        self.b
    }

    pub fn exp_q(&self) -> i32 {
        self.q
    }

    pub fn exp_t(&self) -> u32 {
        self.t
    }

    /// `[e_a, e_b, e_q, e_T]`
    pub fn exponents(&self) -> [i64; 4] {
        [self.a as i64, self.b as i64, self.q as i64, self.t as i64]
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            t: self.t + other.t,
            a: self.a + other.a,
            b: self.b + other.b,
            q: self.q + other.q,
        }
    }

    /// Inverse in the Laurent variables. Panics on a monomial containing `T`.
    pub fn inv(&self) -> Monomial {
        assert_eq!(self.t, 0, "cannot invert a monomial containing T");
        Monomial::abq(-self.a, -self.b, -self.q)
    }

    /// Integer power; negative powers require `T`-free monomials.
    pub fn pow(&self, e: i64) -> Monomial {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let e = e as i32;
        Monomial {
            t: self.t * e as u32,
            a: self.a * e,
            b: self.b * e,
            q: self.q * e,
        }
    }

    /// Multiplies by `q^c` (scales the `q` exponent only).
    pub fn times_q(&self, c: i32) -> Monomial {
        Monomial { q: self.q + c, ..*self }
    }

    /// Multiplies by `T^e`.
    pub fn times_t(&self, e: u32) -> Monomial {
        Monomial { t: self.t + e, ..*self }
    }

    /// Same exponents with `T` removed.
    pub fn without_t(&self) -> Monomial {
        Monomial { t: 0, ..*self }
    }

    pub fn eval_complex(&self, a: Complex64, b: Complex64, q: Complex64, t: Complex64) -> Result<Complex64> {
        fn power(x: Complex64, e: i32, name: &'static str) -> Result<Complex64> {
            if e < 0 && x == Complex64::new(0.0, 0.0) {
                return Err(Error::DivisionByZero(name));
            }
            Ok(x.powi(e))
        }
        Ok(power(a, self.a, "a")? * power(b, self.b, "b")? * power(q, self.q, "q")? * power(t, self.t as i32, "T")?)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, e) in [("a", self.a), ("b", self.b), ("q", self.q), ("T", self.t as i32)] {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact multivariate Laurent polynomial with integer coefficients.
///
/// Zero coefficients are never stored, so equal polynomials have identical
/// term maps and `==` is exact equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, 1)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn var_a() -> Self {
        Self::monomial(Monomial::a())
    }

    pub fn var_b() -> Self {
        Self::monomial(Monomial::b())
    }

    pub fn var_q() -> Self {
        Self::monomial(Monomial::q())
    }

    pub fn var_t() -> Self {
        Self::monomial(Monomial::t())
    }

    /// Builds from `(monomial, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c.into());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The single term if this polynomial is `c * m`.
    pub fn as_term(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// `Some(m)` if the polynomial is exactly the monomial `m` with coefficient 1.
    pub fn as_monomial(&self) -> Option<Monomial> {
        self.as_term().filter(|(_, c)| c.is_one()).map(|(m, _)| *m)
    }

    pub fn max_t_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.t).max()
    }

    /// Coefficient of `T^j`, as a `T`-free Laurent polynomial.
    pub fn t_coefficient(&self, j: u32) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.t == j)
                .map(|(m, c)| (m.without_t(), c.clone()))
                .collect(),
        }
    }

    /// Splits into coefficients of `T^0, T^1, ..., T^max`.
    pub fn t_coefficients(&self) -> Vec<LaurentPoly> {
        let deg = self.max_t_degree().map_or(0, |d| d as usize + 1);
        let mut out = vec![LaurentPoly::zero(); deg];
        for (m, c) in &self.terms {
            out[m.t as usize].terms.insert(m.without_t(), c.clone());
        }
        out
    }

    /// Reassembles `Σ coeffs[j] T^j`.
    pub fn from_t_coefficients(coeffs: &[LaurentPoly]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (j, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                p.add_term(m.times_t(j as u32), v.clone());
            }
        }
        p
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut result = LaurentPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replaces `T` by `q^c T`, i.e. realizes the shift `s -> s - c/2`.
    pub fn substitute_t_scale(&self, c: i32) -> LaurentPoly {
        if c == 0 {
            return self.clone();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.times_q(c * m.t as i32), v.clone()))
                .collect(),
        }
    }

    /// Applies `f` to every exponent vector; coefficients are merged.
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Substitutes `a -> a^-1`.
    pub fn invert_a(&self) -> LaurentPoly {
        self.map_monomials(|m| Monomial { a: -m.a, ..*m })
    }

    /// Substitutes `b -> b^-1`.
    pub fn invert_b(&self) -> LaurentPoly {
        self.map_monomials(|m| Monomial { b: -m.b, ..*m })
    }

    /// Evaluates at complex values of `a, b, q, T`.
    pub fn eval_complex(&self, a: Complex64, b: Complex64, q: Complex64, t: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let c = c.to_f64().unwrap_or(if c.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            });
            acc += m.eval_complex(a, b, q, t)? * c;
        }
        Ok(acc)
    }
}

impl From<Monomial> for LaurentPoly {
    fn from(m: Monomial) -> Self {
        LaurentPoly::monomial(m)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        sum_of_products(&[(self, rhs)])
    }
}

fn small_terms(p: &LaurentPoly) -> Option<Vec<(Monomial, i64)>> {
    p.terms.iter().map(|(m, c)| c.to_i64().map(|c| (*m, c))).collect()
}

/// `Σ xᵢ·yᵢ` with a single accumulator; machine integers while they suffice.
pub fn sum_of_products(pairs: &[(&LaurentPoly, &LaurentPoly)]) -> LaurentPoly {
    let small: Option<Vec<_>> = pairs
        .iter()
        .map(|(x, y)| Some((small_terms(x)?, small_terms(y)?)))
        .collect();
    if let Some(small) = small {
        let mut acc: HashMap<Monomial, i128> = HashMap::new();
        let mut overflow = false;
        'outer: for (x, y) in &small {
            for (m1, c1) in x {
                for (m2, c2) in y {
                    let e = acc.entry(m1.mul(m2)).or_insert(0);
                    match e.checked_add(*c1 as i128 * *c2 as i128) {
                        Some(v) => *e = v,
                        None => {
                            overflow = true;
                            break 'outer;
                        }
                    }
                }
            }
        }
        if !overflow {
            let terms = acc
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(m, c)| (m, BigInt::from(c)))
                .collect();
            return LaurentPoly { terms };
        }
    }
    let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
    for (x, y) in pairs {
        for (m1, c1) in &x.terms {
            for (m2, c2) in &y.terms {
                *acc.entry(m1.mul(m2)).or_default() += c1 * c2;
            }
        }
    }
    LaurentPoly {
        terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: [i64; 4],
    c: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    e: m.exponents(),
                    c: c.to_str_radix(10),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(deserializer)?;
        let mut p = LaurentPoly::zero();
        for t in raw.terms {
            let [ea, eb, eq, et] = t.e;
            let m = Monomial::new(ea, eb, eq, et).map_err(D::Error::custom)?;
            let c: BigInt =
                t.c.parse()
                    .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", t.c)))?;
            p.add_term(m, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a() -> LaurentPoly {
        LaurentPoly::var_a()
    }
    fn q() -> LaurentPoly {
        LaurentPoly::var_q()
    }
    fn t() -> LaurentPoly {
        LaurentPoly::var_t()
    }
    fn m(a: i32, b: i32, q: i32) -> LaurentPoly {
        LaurentPoly::monomial(Monomial::abq(a, b, q))
    }

    #[test]
    fn add_examples() {
        assert_eq!(&(&a() + &q()) + &(-q()), a());
        let x = &a() + &m(-1, 0, 0);
        assert_eq!(&LaurentPoly::zero() + &x, x);
        assert_eq!(
            &x + &x,
            &LaurentPoly::term(Monomial::a(), 2) + &LaurentPoly::term(Monomial::abq(-1, 0, 0), 2)
        );
    }

    #[test]
    fn mul_examples() {
        let one = LaurentPoly::one();
        let aqt = LaurentPoly::monomial(Monomial::new(1, 0, 1, 1).unwrap());
        let ainv_qt = LaurentPoly::monomial(Monomial::new(-1, 0, 1, 1).unwrap());
        let lhs = &(&one - &aqt) * &(&one - &ainv_qt);
        let expected = &(&one - &(&(&a() + &m(-1, 0, 0)) * &(&q() * &t()))) + &(&q().pow(2) * &t().pow(2));
        assert_eq!(lhs, expected);
        assert!((&a() * &m(-1, 0, 0)).is_one());
        let lhs = &(&one + &m(0, 2, 0)) * &m(0, -1, 0);
        assert_eq!(lhs, &m(0, 1, 0) + &m(0, -1, 0));
    }

    #[test]
    fn t_scale_examples() {
        let one = LaurentPoly::one();
        assert_eq!((&one - &t()).substitute_t_scale(2), &one - &(&q().pow(2) * &t()));
        let x = &(&one - &(&a() * &(&q() * &t()))) + &t().pow(2);
        assert_eq!(x.substitute_t_scale(0), x);
        let expected = &(&one - &(&a() * &(&q().pow(2) * &t()))) + &(&q().pow(2) * &t().pow(2));
        assert_eq!(x.substitute_t_scale(1), expected);
    }

    #[test]
    fn eval_examples() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let x = &a() + &m(-1, 0, 0);
        let v = x.eval_complex(c(2.0), c(1.0), c(1.0), c(0.0)).unwrap();
        assert!((v - c(2.5)).norm() < 1e-15);
        let v = q().pow(2).eval_complex(c(1.0), c(1.0), c(2f64.sqrt()), c(0.0)).unwrap();
        assert!((v - c(2.0)).norm() < 1e-12);
        assert_eq!(
            x.eval_complex(c(0.0), c(1.0), c(1.0), c(0.0)),
            Err(Error::DivisionByZero("a"))
        );
        // zero is fine when only nonnegative powers appear
        assert!(a().eval_complex(c(0.0), c(0.0), c(0.0), c(0.0)).is_ok());
    }

    #[test]
    fn negative_t_rejected() {
        assert_eq!(Monomial::new(0, 0, 0, -1), Err(Error::NegativeTExponent(-1)));
        let bad = r#"{"terms":[{"e":[0,0,0,-2],"c":"1"}]}"#;
        assert!(serde_json::from_str::<LaurentPoly>(bad).is_err());
    }

    #[test]
    fn json_format() {
        let x = &(&LaurentPoly::one() - &(&a() * &t())) + &LaurentPoly::term(Monomial::abq(0, -1, 3), 5);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(
            s,
            r#"{"terms":[{"e":[0,-1,3,0],"c":"5"},{"e":[0,0,0,0],"c":"1"},{"e":[1,0,0,1],"c":"-1"}]}"#
        );
        let big = LaurentPoly::constant(BigInt::from(3u8).pow(100));
        let back: LaurentPoly = serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn display() {
        let x = &(&LaurentPoly::one() - &(&a() * &t())) + &LaurentPoly::term(Monomial::abq(0, -1, 3), 5);
        assert_eq!(x.to_string(), "5*b^-1*q^3 + 1 - a*T");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(((-3i64..=3, -3i64..=3, -3i64..=3, 0i64..=3), -5i64..=5), 0..6).prop_map(|ts| {
            LaurentPoly::from_terms(
                ts.into_iter()
                    .map(|((ea, eb, eq, et), c)| (Monomial::new(ea, eb, eq, et).unwrap(), c)),
            )
        })
    }

    fn unit(theta: f64) -> Complex64 {
        Complex64::from_polar(1.0, theta)
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_poly(), y in arb_poly(), z in arb_poly()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert!((&x - &x).is_zero());
        }

        #[test]
        fn mul_commutes_with_eval(x in arb_poly(), y in arb_poly(), th in prop::array::uniform4(0.0f64..std::f64::consts::TAU)) {
            let (ua, ub, uq, ut) = (unit(th[0]), unit(th[1]), unit(th[2]), unit(th[3]));
            let lhs = (&x * &y).eval_complex(ua, ub, uq, ut).unwrap();
            let rhs = x.eval_complex(ua, ub, uq, ut).unwrap() * y.eval_complex(ua, ub, uq, ut).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm().max(rhs.norm())));
        }

        #[test]
        fn t_scale_composes(x in arb_poly(), c1 in -6i32..=6, c2 in -6i32..=6) {
            prop_assert_eq!(x.substitute_t_scale(c1).substitute_t_scale(c2), x.substitute_t_scale(c1 + c2));
            prop_assert_eq!(x.substitute_t_scale(c1).substitute_t_scale(-c1), x.clone());
        }

        #[test]
        fn json_roundtrip(x in arb_poly()) {
            let s = serde_json::to_string(&x).unwrap();
            let back: LaurentPoly = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
