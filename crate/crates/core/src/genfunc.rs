//! Path-length generating functions `F_{p,q}(x) = sum_k u((p,q),k) x^k`.
//!
//! Three independent constructions are provided: the product form
//! `(1+x)^p sum_k C(q,k) C(p+k,k) x^k`, the coefficient-by-coefficient form
//! from the closed count, and on the diagonal the Legendre-type recurrence
//! `F_{n,n} = (1+x)^n a_n(x)`. The trivariate series
//! `B(x,y,z) = 1 / (1 - (1+z)(x+y-xy))` gives a fourth, per-coefficient route.

use num_bigint::BigInt;

use crate::error::{guard, Error, Result};
use crate::exactmath::{binom, Count, Polynomial};
use crate::pathcount::unrestricted_count;

/// Largest `p + q` the trivariate series is expanded to.
pub const MAX_TRIVARIATE_ORDER: u64 = 60;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenFunResult {
    pub p: u64,
    pub q: u64,
    /// Coefficient of `x^k` is `u((p,q),k)`.
    pub poly: Polynomial,
}

impl GenFunResult {
    /// Coefficients as counts, padded with zeros to length `p + q + 1`.
    pub fn counts(&self) -> Vec<Count> {
        let mut out = self
            .poly
            .to_counts()
            .expect("path-length coefficients are never negative");
        out.resize((self.p + self.q + 1) as usize, Count::default());
        out
    }

    /// `F_{p,q}(1)`, the total number of paths.
    pub fn total(&self) -> Count {
        self.poly
            .eval_at_one()
            .to_biguint()
            .expect("path totals are never negative")
    }
}

/// Product form. The formula is stated for `p <= q`; larger `p` is handled
/// by swapping, since `F_{p,q} = F_{q,p}`.
pub fn path_length_poly(p: u64, q: u64) -> GenFunResult {
    let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
    let tail = Polynomial::from_counts((0..=hi).map(|k| binom(hi, k as i64) * binom(lo + k, k as i64)));
    GenFunResult {
        p,
        q,
        poly: &Polynomial::one_plus_x_pow(lo) * &tail,
    }
}

/// Coefficient form, one closed-form count per power of `x`.
pub fn path_length_poly_direct(p: u64, q: u64) -> GenFunResult {
    GenFunResult {
        p,
        q,
        poly: Polynomial::from_counts((0..=p + q).map(|k| unrestricted_count(p, q, k))),
    }
}

fn one_plus_2z() -> Polynomial {
    Polynomial::from_i64(&[1, 2])
}

/// `a_0, ..., a_n` from `i a_i = (2i-1)(1+2z) a_{i-1} - (i-1) a_{i-2}`.
pub fn legendre_sequence(n: usize) -> Result<Vec<Polynomial>> {
    let mut out = vec![Polynomial::one()];
    if n >= 1 {
        out.push(one_plus_2z());
    }
    let lin = one_plus_2z();
    for i in 2..=n {
        let big_i = BigInt::from(i);
        let lhs = (&lin * &out[i - 1]).scale(&BigInt::from(2 * i - 1));
        let rhs = out[i - 2].scale(&BigInt::from(i - 1));
        let a = (&lhs - &rhs)
            .div_exact(&big_i)
            .ok_or_else(|| Error::InexactDivision(format!("Legendre recurrence at i = {i}")))?;
        out.push(a);
    }
    Ok(out)
}

/// `a_i(z)`, equal to the shifted Legendre polynomial `P_i(2z + 1)`.
pub fn legendre_coeff_poly(i: usize) -> Result<Polynomial> {
    Ok(legendre_sequence(i)?.pop().expect("sequence is non-empty"))
}

/// `b_0, ..., b_n` from
/// `i b_i = (2i-1)(1+2z)(1+z) b_{i-1} - (1+z)^2 (i-1) b_{i-2}`.
pub fn b_sequence(n: usize) -> Result<Vec<Polynomial>> {
    let mut out = vec![Polynomial::one()];
    if n >= 1 {
        out.push(Polynomial::from_i64(&[1, 3, 2]));
    }
    let lin = &one_plus_2z() * &Polynomial::one_plus_x_pow(1);
    let sq = Polynomial::one_plus_x_pow(2);
    for i in 2..=n {
        let lhs = (&lin * &out[i - 1]).scale(&BigInt::from(2 * i - 1));
        let rhs = (&sq * &out[i - 2]).scale(&BigInt::from(i - 1));
        let b = (&lhs - &rhs)
            .div_exact(&BigInt::from(i))
            .ok_or_else(|| Error::InexactDivision(format!("b recurrence at i = {i}")))?;
        out.push(b);
    }
    Ok(out)
}

pub fn b_poly(i: usize) -> Result<Polynomial> {
    Ok(b_sequence(i)?.pop().expect("sequence is non-empty"))
}

/// `sum_k C(n,k) C(n+k,k) z^k`, the closed form of `a_n`.
pub fn legendre_closed_form(n: u64) -> Polynomial {
    Polynomial::from_counts((0..=n).map(|k| binom(n, k as i64) * binom(n + k, k as i64)))
}

/// Coefficients of `B(x,y,z)` for `x^i y^j` with `i <= max_p`, `j <= max_q`,
/// each a polynomial in `z`.
#[derive(Clone, Debug)]
pub struct TrivariateSeries {
    max_q: u64,
    cells: Vec<Polynomial>,
    /// Sweeps of the functional equation needed to reach the fixed point.
    pub iterations: usize,
}

impl TrivariateSeries {
    /// Iterates `B <- 1 + (1+z)(x + y - xy) B` from `B = 0` on the box of
    /// retained `x^i y^j` until nothing changes.
    ///
    /// Multiplication by `x`, `y` or `xy` only raises degrees, so truncating
    /// to the box never feeds wrong values back into retained terms.
    pub fn build(max_p: u64, max_q: u64) -> Result<Self> {
        if max_p + max_q > MAX_TRIVARIATE_ORDER {
            return Err(guard(
                "series-truncation",
                format!(
                    "p + q = {} exceeds the limit {MAX_TRIVARIATE_ORDER}",
                    max_p + max_q
                ),
            ));
        }
        let (rows, cols) = (max_p as usize + 1, max_q as usize + 1);
        let idx = |i: usize, j: usize| i * cols + j;
        let one_plus_z = Polynomial::one_plus_x_pow(1);
        let mut cur = vec![Polynomial::zero(); rows * cols];
        let mut iterations = 0;
        loop {
            let mut next = Vec::with_capacity(rows * cols);
            for i in 0..rows {
                for j in 0..cols {
                    let mut inner = Polynomial::zero();
                    if i > 0 {
                        inner = &inner + &cur[idx(i - 1, j)];
                    }
                    if j > 0 {
                        inner = &inner + &cur[idx(i, j - 1)];
                    }
                    if i > 0 && j > 0 {
                        inner = &inner - &cur[idx(i - 1, j - 1)];
                    }
                    let mut v = &one_plus_z * &inner;
                    if i == 0 && j == 0 {
                        v = &v + &Polynomial::one();
                    }
                    next.push(v);
                }
            }
            iterations += 1;
            if next == cur {
                break;
            }
            cur = next;
        }
        Ok(Self {
            max_q,
            cells: cur,
            iterations,
        })
    }

    /// `z`-polynomial multiplying `x^p y^q`.
    pub fn coefficient_poly(&self, p: u64, q: u64) -> &Polynomial {
        &self.cells[(p * (self.max_q + 1) + q) as usize]
    }

    pub fn coeff(&self, p: u64, q: u64, n: u64) -> Count {
        self.coefficient_poly(p, q)
            .coeff(n as usize)
            .to_biguint()
            .expect("series coefficients are never negative")
    }
}

/// Coefficient of `x^p y^q z^n` in `B(x,y,z)`.
pub fn trivariate_coeff(p: u64, q: u64, n: u64) -> Result<Count> {
    Ok(TrivariateSeries::build(p, q)?.coeff(p, q, n))
}

/// `(1+x)^n a_n(x)`, the diagonal generating function via the recurrence.
pub fn diagonal_via_legendre(n: usize) -> Result<Polynomial> {
    Ok(&Polynomial::one_plus_x_pow(n as u64) * &legendre_coeff_poly(n)?)
}

/// True when `poly` has exactly the coefficients `expected`, missing
/// entries on either side counting as zero.
pub fn same_coefficients(poly: &Polynomial, expected: &[Count]) -> bool {
    let padded = expected.len().max(poly.coeffs().len());
    (0..padded).all(|k| {
        poly.coeff(k)
            == expected
                .get(k)
                .map(|c| BigInt::from(c.clone()))
                .unwrap_or_default()
    })
}
