//! Exact integer and rational arithmetic shared by the counting modules.
//!
//! Counts are [`BigUint`], probabilities are [`BigRational`] (always kept in
//! lowest terms with a positive denominator by `num-rational`), and
//! path-length generating functions are dense [`Polynomial`]s over [`BigInt`].

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A path count. Never negative, never rounded.
pub type Count = BigUint;

/// An exact probability or moment.
pub type ExactRatio = BigRational;

/// Binomial coefficient `C(n, k)`, zero when `k < 0` or `k > n`.
///
/// Uses the multiplicative formula with a running exact division, so each
/// intermediate value is itself a binomial coefficient.
pub fn binom(n: u64, k: i64) -> Count {
    if k < 0 || k as u64 > n {
        return Count::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Count::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient with a signed top index; zero whenever `n < 0`.
///
/// The path formulas index binomials with expressions like `p - 1 + n - i`
/// that can dip below zero at the boundary of their summation ranges.
pub fn binom_signed(n: i64, k: i64) -> Count {
    if n < 0 {
        Count::zero()
    } else {
        binom(n as u64, k)
    }
}

/// Converts an exact rational to the nearest `f64` the `num` crates produce.
pub fn ratio_to_f64(r: &ExactRatio) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Natural log of a positive big integer, accurate to double precision even
/// when the value overflows `f64`.
pub fn ln_biguint(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Dense univariate polynomial; `coeffs[k]` is the coefficient of `x^k`.
///
/// The coefficient vector is kept trimmed: the last entry is non-zero unless
/// the polynomial is the zero polynomial, which has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_counts<I: IntoIterator<Item = Count>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(BigInt::from).collect())
    }

    /// `(1 + x)^n`, built from a row of Pascal's triangle.
    pub fn one_plus_x_pow(n: u64) -> Self {
        Self::from_counts((0..=n).map(|k| binom(n, k as i64)))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^k`; zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, at: &ExactRatio) -> ExactRatio {
        // Horner, from the top coefficient down.
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRatio::zero(), |acc, c| acc * at + ExactRatio::from_integer(c.clone()))
    }

    pub fn eval_int(&self, at: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    /// Sum of the coefficients, i.e. the value at `x = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn scale(&self, by: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * by).collect())
    }

    /// Divides every coefficient by `d`, or `None` if any division leaves a
    /// remainder.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(out))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// True when every coefficient is non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Coefficients as counts; `None` if any coefficient is negative.
    pub fn to_counts(&self) -> Option<Vec<Count>> {
        self.coeffs.iter().map(|c| c.to_biguint()).collect()
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn conv_oracle(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; a.len() + b.len() - 1];
        for k in 0..out.len() {
            for i in 0..a.len() {
                if k >= i && k - i < b.len() {
                    out[k] += a[i] * b[k - i];
                }
            }
        }
        out
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(5, 2), Count::from(10u32));
        assert_eq!(binom(7, 0), Count::from(1u32));
        assert_eq!(binom(3, 5), Count::zero());
        assert_eq!(binom(3, -1), Count::zero());
        assert_eq!(binom(0, 0), Count::one());
        assert_eq!(binom_signed(-1, 0), Count::zero());
    }

    #[test]
    fn binom_large_row_matches_pascal() {
        let mut row = vec![Count::one()];
        for n in 1..=300u64 {
            let mut next = vec![Count::one(); n as usize + 1];
            for k in 1..n as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
        for k in 0..=300 {
            assert_eq!(binom(300, k), row[k as usize]);
        }
    }

    #[test]
    fn binom_symmetry_and_pascal_to_200() {
        for n in 0..=200u64 {
            for k in 0..=n as i64 {
                assert_eq!(binom(n, k), binom(n, n as i64 - k));
                if n > 0 {
                    assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
                }
            }
        }
    }

    #[test]
    fn mul_examples() {
        let a = Polynomial::from_i64(&[1, 1]);
        let b = Polynomial::from_i64(&[1, 2]);
        assert_eq!(&a * &b, Polynomial::from_i64(&[1, 3, 2]));
        assert_eq!(&b * &Polynomial::one(), b);

        let expected = conv_oracle(&conv_oracle(&[1, 1], &[1, 1]), &[1, 6, 6]);
        assert_eq!(expected, vec![1, 8, 19, 18, 6]);
        let got = &a.pow(2) * &Polynomial::from_i64(&[1, 6, 6]);
        assert_eq!(got, Polynomial::from_i64(&expected));
    }

    #[test]
    fn eval_examples() {
        let one = ExactRatio::one();
        assert_eq!(
            Polynomial::from_i64(&[1, 3, 2]).eval(&one),
            ExactRatio::from_integer(6.into())
        );
        let f22 = Polynomial::from_i64(&[1, 8, 19, 18, 6]);
        assert_eq!(f22.eval(&one), ExactRatio::from_integer(52.into()));
        assert_eq!(f22.eval(&ExactRatio::zero()), ExactRatio::one());
    }

    #[test]
    fn derivative_examples() {
        let p = Polynomial::from_i64(&[1, 3, 2]);
        assert_eq!(p.derivative(), Polynomial::from_i64(&[3, 4]));
        assert!(Polynomial::from_i64(&[7]).derivative().is_zero());
        // term-by-term: 8 + 2*19 + 3*18 + 4*6
        let oracle: i64 = [1i64, 8, 19, 18, 6]
            .iter()
            .enumerate()
            .map(|(k, c)| k as i64 * c)
            .sum();
        assert_eq!(oracle, 124);
        let f22 = Polynomial::from_i64(&[1, 8, 19, 18, 6]);
        assert_eq!(f22.derivative().eval_at_one(), BigInt::from(oracle));
    }

    #[test]
    fn trims_and_displays() {
        let p = Polynomial::from_i64(&[1, 0, -2, 0, 0]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.to_string(), "1 - 2*x^2");
        assert!(Polynomial::from_i64(&[0, 0]).is_zero());
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(Polynomial::from_i64(&[2, 4]).div_exact(&BigInt::from(2)), Some(Polynomial::from_i64(&[1, 2])));
        assert_eq!(Polynomial::from_i64(&[2, 3]).div_exact(&BigInt::from(2)), None);
    }

    #[test]
    fn ln_of_huge_values() {
        let v = binom(3000, 1500);
        let direct: f64 = (1..=1500).map(|i| ((1500 + i) as f64 / i as f64).ln()).sum();
        assert!((ln_biguint(&v) - direct).abs() < 1e-9 * direct);
    }

    fn poly_strategy() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(-1000i64..1000, 0..=65).prop_map(|v| Polynomial::from_i64(&v))
    }

    proptest! {
        #[test]
        fn mul_commutes_and_associates(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn eval_is_multiplicative(a in poly_strategy(), b in poly_strategy(), num in -50i64..50, den in 1i64..50) {
            let t = ExactRatio::new(num.into(), den.into());
            prop_assert_eq!((&a * &b).eval(&t), a.eval(&t) * b.eval(&t));
        }
    }
}
