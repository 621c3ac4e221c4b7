//! Exact counts of generalized jump paths.
//!
//! A generalized jump path moves from a lattice point to a weakly dominated,
//! distinct point at every step. Notation used throughout:
//!
//! * `r(p, n)`: relaxed paths of `n` steps from `p` to the origin, where a
//!   step may also stay put;
//! * `g(p, n)`: restricted paths of exactly `n` jumps from `p` ending at the
//!   origin;
//! * `u(p, n)`: unrestricted paths of exactly `n` jumps from `p` ending
//!   anywhere;
//! * `S(p)`: unrestricted paths of every length from `p`.
//!
//! The empty path is counted: `g(origin, 0) = 1` and `u(p, 0) = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{guard, Error, Result};
use crate::exactmath::{binom, binom_signed, Count};

/// Largest box `totalPaths` will memoize over.
pub const MAX_BOX_CELLS: u128 = 100_000_000;

/// A point with non-negative integer coordinates, in any dimension `d >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(Vec<u64>);

impl LatticePoint {
    pub fn new(coords: Vec<u64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument(
                "a lattice point needs at least one coordinate".into(),
            ));
        }
        Ok(Self(coords))
    }

    pub fn planar(p: u64, q: u64) -> Self {
        Self(vec![p, q])
    }

    pub fn origin(dim: usize) -> Self {
        Self(vec![0; dim.max(1)])
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coord_sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// True if every coordinate of `self` is `<=` the matching one of `other`.
    pub fn weakly_below(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// True if every coordinate of `self` is `<` the matching one of `other`.
    pub fn strictly_below(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a < b)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<(u64, u64)> for LatticePoint {
    fn from((p, q): (u64, u64)) -> Self {
        Self::planar(p, q)
    }
}

/// Counts indexed by path length for a fixed starting point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub origin: LatticePoint,
    counts: Vec<Count>,
}

impl CountTable {
    /// `counts[n]` for `n` in `0..=coord_sum`; entries past the end are zero.
    pub fn new(origin: LatticePoint, mut counts: Vec<Count>) -> Self {
        counts.resize(origin.coord_sum() as usize + 1, Count::zero());
        Self { origin, counts }
    }

    pub fn get(&self, n: usize) -> Count {
        self.counts.get(n).cloned().unwrap_or_default()
    }

    pub fn counts(&self) -> &[Count] {
        &self.counts
    }

    pub fn total(&self) -> Count {
        self.counts.iter().sum()
    }
}

/// `r(p, n) = prod_i C(p_i + n - 1, p_i)`: stars and bars per coordinate.
pub fn relaxed_count(p: &LatticePoint, n: u64) -> Count {
    if n == 0 {
        return if p.is_origin() { Count::one() } else { Count::zero() };
    }
    p.coords()
        .iter()
        .map(|&pi| binom(pi + n - 1, pi as i64))
        .product()
}

/// `s(p, n, k) = C(n, k) r(p, n - k)`: relaxed paths with at least `k`
/// marked stationary steps.
pub fn at_least_k_stationary(p: &LatticePoint, n: u64, k: u64) -> Result<Count> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "stationary count k = {k} exceeds path length n = {n}"
        )));
    }
    Ok(binom(n, k as i64) * relaxed_count(p, n - k))
}

/// `g(p, n)` in any dimension by inclusion-exclusion over stationary steps:
/// `sum_i (-1)^i C(n, i) prod_k C(p_k - 1 + n - i, n - 1 - i)`.
pub fn restricted_count(p: &LatticePoint, n: u64) -> Count {
    if p.is_origin() {
        return if n == 0 { Count::one() } else { Count::zero() };
    }
    let n_i = n as i64;
    let mut pos = Count::zero();
    let mut neg = Count::zero();
    for i in 0..=n_i {
        let mut term = binom(n, i);
        for &pk in p.coords() {
            if term.is_zero() {
                break;
            }
            term *= binom_signed(pk as i64 - 1 + n_i - i, n_i - 1 - i);
        }
        if i % 2 == 0 {
            pos += term;
        } else {
            neg += term;
        }
    }
    pos - neg
}

/// `g(p, n)` as the alternating sum of at-least-`k`-stationary counts,
/// `sum_{k<n} (-1)^k s(p, n, k)`.
pub fn restricted_count_via_relaxed(p: &LatticePoint, n: u64) -> Count {
    if p.is_origin() {
        return if n == 0 { Count::one() } else { Count::zero() };
    }
    let mut pos = Count::zero();
    let mut neg = Count::zero();
    for k in 0..n {
        let term = binom(n, k as i64) * relaxed_count(p, n - k);
        if k % 2 == 0 {
            pos += term;
        } else {
            neg += term;
        }
    }
    pos - neg
}

/// Two-dimensional closed form
/// `g((p,q), n) = sum_{i<n} C(p-1, i) C(p-1+n-i, p) C(q, n-i-1)`.
///
/// With zero for negative upper binomial indices the sum vanishes when
/// `p = 0`, so that case is evaluated with the coordinates swapped.
pub fn restricted_count_2d(p: u64, q: u64, n: u64) -> Count {
    if p == 0 && q == 0 {
        return if n == 0 { Count::one() } else { Count::zero() };
    }
    let (p, q) = if p == 0 { (q, p) } else { (p, q) };
    let (pi, ni) = (p as i64, n as i64);
    (0..ni)
        .map(|i| {
            binom(p - 1, i) * binom_signed(pi - 1 + ni - i, pi) * binom(q, ni - i - 1)
        })
        .sum()
}

/// `u((p,q), n) = sum_i C(p, i) C(p+n-i, p) C(q, n-i)`.
pub fn unrestricted_count(p: u64, q: u64, n: u64) -> Count {
    let ni = n as i64;
    (0..=ni.min(p as i64))
        .map(|i| binom(p, i) * binom(p + n - i as u64, p as i64) * binom(q, ni - i))
        .sum()
}

/// `u((p,q), n)` for all `p <= max_p`, `q <= max_q`, `n <= max_p + max_q`,
/// filled by the six-term planar recurrence.
#[derive(Clone, Debug)]
pub struct RecurrenceTable {
    max_p: u64,
    max_q: u64,
    max_n: u64,
    cells: Vec<Count>,
}

impl RecurrenceTable {
    pub fn build(max_p: u64, max_q: u64) -> Self {
        let max_n = max_p + max_q;
        let len = ((max_p + 1) * (max_q + 1) * (max_n + 1)) as usize;
        let mut t = Self {
            max_p,
            max_q,
            max_n,
            cells: vec![Count::zero(); len],
        };
        for p in 0..=max_p {
            for q in 0..=max_q {
                for n in 0..=max_n {
                    let v = if n == 0 {
                        Count::one()
                    } else if p == 0 {
                        binom(q, n as i64)
                    } else if q == 0 {
                        binom(p, n as i64)
                    } else {
                        let add = t.at(p, q - 1, n)
                            + t.at(p, q - 1, n - 1)
                            + t.at(p - 1, q, n)
                            + t.at(p - 1, q, n - 1);
                        add - t.at(p - 1, q - 1, n) - t.at(p - 1, q - 1, n - 1)
                    };
                    let i = t.index(p, q, n);
                    t.cells[i] = v;
                }
            }
        }
        t
    }

    fn index(&self, p: u64, q: u64, n: u64) -> usize {
        ((p * (self.max_q + 1) + q) * (self.max_n + 1) + n) as usize
    }

    fn at(&self, p: u64, q: u64, n: u64) -> &Count {
        &self.cells[self.index(p, q, n)]
    }

    /// `u((p,q), n)`, or `None` outside the table's range of `(p, q)`.
    pub fn get(&self, p: u64, q: u64, n: u64) -> Option<Count> {
        if p > self.max_p || q > self.max_q {
            return None;
        }
        if n > self.max_n {
            return Some(Count::zero());
        }
        Some(self.at(p, q, n).clone())
    }
}

/// `u((p,q), n)` via [`RecurrenceTable`].
pub fn unrestricted_count_by_recurrence(p: u64, q: u64, n: u64) -> Count {
    RecurrenceTable::build(p, q)
        .get(p, q, n)
        .expect("table covers its own corner")
}

/// `S(p) = 1 + sum of S(a)` over every other point `a` of the box below `p`.
///
/// Box sums come from a running prefix-sum table, so each cell costs `2^d`
/// big-integer additions.
pub fn total_paths(p: &LatticePoint) -> Result<Count> {
    let dims: Vec<usize> = p.coords().iter().map(|&c| c as usize + 1).collect();
    let cells = dims
        .iter()
        .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
        .unwrap_or(u128::MAX);
    if cells > MAX_BOX_CELLS {
        return Err(guard(
            "box-cells",
            format!("box below {p} has {cells} cells, limit is {MAX_BOX_CELLS}"),
        ));
    }
    let d = dims.len();
    let mut strides = vec![1usize; d];
    for i in (0..d.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let cells = cells as usize;
    // prefix[idx] = sum of S over the box below the point at idx, inclusive.
    let mut prefix: Vec<Count> = Vec::with_capacity(cells);
    let mut last = Count::one();
    let mut digits = vec![0usize; d];
    for idx in 0..cells {
        let mut rem = idx;
        for i in 0..d {
            digits[i] = rem / strides[i];
            rem %= strides[i];
        }
        let movable: Vec<usize> = (0..d).filter(|&i| digits[i] > 0).collect();
        let mut pos = Count::zero();
        let mut neg = Count::zero();
        for mask in 1u32..(1u32 << movable.len()) {
            let off: usize = movable
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &i)| strides[i])
                .sum();
            if mask.count_ones() % 2 == 1 {
                pos += &prefix[idx - off];
            } else {
                neg += &prefix[idx - off];
            }
        }
        let below = pos - neg;
        let s = Count::one() + &below;
        prefix.push(below + &s);
        last = s;
    }
    Ok(last)
}

/// Both sides of `sum_i C(n,i) C(m+n-i, k-i) (-1)^i = C(m, k)`.
pub fn alternating_sum_identity(m: u64, n: u64, k: u64) -> (BigInt, Count) {
    let (ni, ki) = (n as i64, k as i64);
    let lhs: BigInt = (0..=ni)
        .map(|i| {
            let term = BigInt::from(binom(n, i) * binom(m + n - i as u64, ki - i));
            if i % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    (lhs, binom(m, ki))
}

/// `g(p, n)` for every `n` from zero to the coordinate sum.
pub fn restricted_table(p: &LatticePoint) -> CountTable {
    let counts = (0..=p.coord_sum()).map(|n| restricted_count(p, n)).collect();
    CountTable::new(p.clone(), counts)
}

/// `u((p,q), n)` for every `n` from zero to `p + q`.
pub fn unrestricted_table(p: u64, q: u64) -> CountTable {
    let counts = (0..=p + q).map(|n| unrestricted_count(p, q, n)).collect();
    CountTable::new(LatticePoint::planar(p, q), counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    fn pt(coords: &[u64]) -> LatticePoint {
        LatticePoint::new(coords.to_vec()).unwrap()
    }

    /// Weakly decreasing sequences x_0 = p, ..., x_n = 0 in one dimension.
    fn relaxed_1d_brute(p: u64, n: u64) -> u64 {
        fn go(cur: u64, left: u64) -> u64 {
            if left == 0 {
                return (cur == 0) as u64;
            }
            (0..=cur).map(|next| go(next, left - 1)).sum()
        }
        go(p, n)
    }

    #[test]
    fn relaxed_examples() {
        assert_eq!(relaxed_1d_brute(1, 1), 1);
        assert_eq!(relaxed_1d_brute(1, 2), 2);
        assert_eq!(relaxed_count(&pt(&[1]), 1), c(1));
        assert_eq!(relaxed_count(&pt(&[1]), 2), c(2));
        assert_eq!(relaxed_count(&pt(&[2, 2]), 0), c(0));
        for p in 0..6 {
            for n in 1..6 {
                assert_eq!(relaxed_count(&pt(&[p]), n), c(relaxed_1d_brute(p, n)));
            }
        }
    }

    #[test]
    fn stationary_examples() {
        assert_eq!(at_least_k_stationary(&pt(&[1]), 2, 1).unwrap(), c(2));
        let p = pt(&[3, 1]);
        assert_eq!(at_least_k_stationary(&p, 4, 0).unwrap(), relaxed_count(&p, 4));
        assert_eq!(at_least_k_stationary(&pt(&[2, 2]), 3, 3).unwrap(), c(0));
        assert!(matches!(
            at_least_k_stationary(&p, 2, 3),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn restricted_examples() {
        assert_eq!(restricted_count(&pt(&[1, 1]), 1), c(1));
        assert_eq!(restricted_count(&pt(&[3]), 2), c(2));
        assert_eq!(restricted_count(&pt(&[2, 3]), 6), c(0));
        assert_eq!(restricted_count(&pt(&[0, 0]), 0), c(1));
        assert_eq!(restricted_count(&pt(&[0, 0]), 1), c(0));
        for p in 1..8 {
            for n in 0..9 {
                assert_eq!(
                    restricted_count(&pt(&[p]), n),
                    binom_signed(p as i64 - 1, n as i64 - 1)
                );
            }
        }
    }

    #[test]
    fn restricted_2d_examples() {
        assert_eq!(restricted_count_2d(1, 1, 2), c(2));
        assert_eq!(restricted_count_2d(1, 1, 1), c(1));
        assert_eq!(restricted_count_2d(2, 2, 5), c(0));
        assert_eq!(restricted_count_2d(0, 3, 2), c(2));
        assert_eq!(restricted_count_2d(3, 0, 2), c(2));
    }

    #[test]
    fn unrestricted_examples() {
        assert_eq!(unrestricted_count(1, 1, 1), c(3));
        assert_eq!(unrestricted_count(0, 0, 0), c(1));
        assert_eq!(unrestricted_count(2, 2, 2), c(19));
        assert_eq!(unrestricted_count_by_recurrence(1, 1, 1), c(3));
        assert_eq!(unrestricted_count_by_recurrence(0, 5, 2), c(10));
    }

    #[test]
    fn total_paths_examples() {
        assert_eq!(total_paths(&pt(&[1, 1])).unwrap(), c(6));
        assert_eq!(total_paths(&pt(&[3, 3])).unwrap(), c(504));
        assert_eq!(total_paths(&pt(&[0, 0])).unwrap(), c(1));
        // one dimension: every subset of {1..p-1} as intermediate points, plus
        // the choice of stopping at zero or before it
        assert_eq!(total_paths(&pt(&[4])).unwrap(), c(16));
        let err = total_paths(&pt(&[10_000, 10_000, 10])).unwrap_err();
        assert!(matches!(err, Error::Guard { guard: "box-cells", .. }));
    }

    #[test]
    fn total_paths_3d_matches_naive_recursion() {
        fn naive(p: &[u64]) -> u64 {
            let mut total = 1;
            for a in 0..=p[0] {
                for b in 0..=p[1] {
                    for c in 0..=p[2] {
                        if [a, b, c] != p {
                            total += naive(&[a, b, c]);
                        }
                    }
                }
            }
            total
        }
        for p in [[1, 1, 1], [2, 1, 0], [2, 2, 1]] {
            assert_eq!(total_paths(&pt(&p)).unwrap(), c(naive(&p)));
        }
    }

    #[test]
    fn macc_examples() {
        assert_eq!(alternating_sum_identity(2, 1, 1), (BigInt::from(2), c(2)));
        for m in 0..6 {
            for k in 0..6 {
                let (lhs, rhs) = alternating_sum_identity(m, 0, k);
                assert_eq!(lhs, BigInt::from(binom(m, k as i64)));
                assert_eq!(rhs, binom(m, k as i64));
            }
        }
        assert_eq!(alternating_sum_identity(0, 3, 2), (BigInt::zero(), c(0)));
    }

    #[test]
    fn unrestricted_restricted_relationship() {
        for p in 0..=12 {
            for q in 0..=12 {
                let v = LatticePoint::planar(p, q);
                for n in 0..=p + q + 1 {
                    assert_eq!(
                        unrestricted_count(p, q, n),
                        restricted_count(&v, n) + restricted_count(&v, n + 1),
                        "({p},{q}) n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn zero_exactly_past_coordinate_sum() {
        for p in 0..=8 {
            for q in 0..=8 {
                for n in 0..=p + q + 3 {
                    let u = unrestricted_count(p, q, n);
                    assert_eq!(u.is_zero(), n > p + q, "({p},{q}) n={n}");
                }
            }
        }
    }

    #[test]
    fn tables_cover_every_length() {
        let t = unrestricted_table(2, 2);
        assert_eq!(t.counts(), &[c(1), c(8), c(19), c(18), c(6)]);
        assert_eq!(t.total(), c(52));
        assert_eq!(t.get(9), c(0));
        let g = restricted_table(&pt(&[1, 1]));
        assert_eq!(g.counts(), &[c(0), c(1), c(2)]);
    }

    proptest! {
        #[test]
        fn inclusion_exclusion_resummation(coords in prop::collection::vec(0u64..5, 1..=3), n in 0u64..10) {
            let p = LatticePoint::new(coords).unwrap();
            prop_assert_eq!(restricted_count(&p, n), restricted_count_via_relaxed(&p, n));
        }

        #[test]
        fn planar_forms_are_symmetric(p in 0u64..30, q in 0u64..30, n in 0u64..62) {
            prop_assert_eq!(unrestricted_count(p, q, n), unrestricted_count(q, p, n));
            prop_assert_eq!(restricted_count_2d(p, q, n), restricted_count_2d(q, p, n));
        }
    }
}
