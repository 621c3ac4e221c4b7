//! Brute-force path enumeration, the ground truth for every closed form.
//!
//! Paths are produced depth first with successors in lexicographic order, so
//! output is sorted lexicographically by point sequence, a path preceding all
//! of its extensions.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{guard, Error, Result};
use crate::exactmath::Count;
use crate::pathcount::LatticePoint;

/// Largest coordinate sum the enumerators accept.
pub const MAX_COORD_SUM: u64 = 14;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JumpPath {
    pub points: Vec<LatticePoint>,
}

impl JumpPath {
    /// Number of jumps, one less than the number of points.
    pub fn len(&self) -> usize {
        self.points.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> &LatticePoint {
        &self.points[0]
    }

    pub fn end(&self) -> &LatticePoint {
        self.points.last().expect("a path has at least its start point")
    }

    /// Every step weakly decreases all coordinates and moves somewhere new.
    pub fn is_generalized(&self) -> bool {
        self.points
            .windows(2)
            .all(|w| w[1].weakly_below(&w[0]) && w[1] != w[0])
    }

    /// Every step strictly decreases all coordinates.
    pub fn is_simple(&self) -> bool {
        self.points.windows(2).all(|w| w[1].strictly_below(&w[0]))
    }
}

impl fmt::Display for JumpPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, "->")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Unrestricted paths of length `n` from `(p, q)` split by their first jump.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DirectionalTally {
    /// First jump decreases `x` only.
    pub left: Count,
    /// First jump decreases `y` only.
    pub down: Count,
    /// First jump decreases both coordinates.
    pub both: Count,
}

impl DirectionalTally {
    pub fn total(&self) -> Count {
        &self.left + &self.down + &self.both
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rule {
    Generalized,
    Simple,
}

fn check_size(p: &LatticePoint) -> Result<()> {
    if p.coord_sum() > MAX_COORD_SUM {
        return Err(guard(
            "enumeration-size",
            format!(
                "coordinate sum of {p} is {}, limit is {MAX_COORD_SUM}",
                p.coord_sum()
            ),
        ));
    }
    Ok(())
}

/// Successors of `cur` under `rule`, in lexicographic order.
fn successors(cur: &LatticePoint, rule: Rule) -> Vec<LatticePoint> {
    let tops: Vec<u64> = match rule {
        Rule::Generalized => cur.coords().to_vec(),
        Rule::Simple => {
            if cur.coords().contains(&0) {
                return Vec::new();
            }
            cur.coords().iter().map(|c| c - 1).collect()
        }
    };
    let mut out = Vec::new();
    let mut digits = vec![0u64; tops.len()];
    loop {
        if digits != cur.coords() {
            out.push(LatticePoint::new(digits.clone()).expect("non-empty"));
        }
        // odometer increment, last coordinate fastest
        let mut i = tops.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if digits[i] < tops[i] {
                digits[i] += 1;
                break;
            }
            digits[i] = 0;
        }
    }
}

fn walk<F>(path: &mut Vec<LatticePoint>, rule: Rule, max_len: Option<usize>, visit: &mut F)
where
    F: FnMut(&[LatticePoint]),
{
    visit(path);
    if max_len.is_some_and(|m| path.len() > m) {
        return;
    }
    let cur = path.last().expect("path is never empty").clone();
    for next in successors(&cur, rule) {
        path.push(next);
        walk(path, rule, max_len, visit);
        path.pop();
    }
}

/// Visits every unrestricted generalized jump path from `p`, the empty path
/// first, without materializing the list.
pub fn for_each_unrestricted<F>(p: &LatticePoint, max_len: Option<usize>, mut visit: F) -> Result<()>
where
    F: FnMut(&[LatticePoint]),
{
    check_size(p)?;
    walk(&mut vec![p.clone()], Rule::Generalized, max_len, &mut visit);
    Ok(())
}

fn collect(p: &LatticePoint, rule: Rule, max_len: Option<usize>, keep: impl Fn(&[LatticePoint]) -> bool) -> Result<Vec<JumpPath>> {
    check_size(p)?;
    let mut out = Vec::new();
    walk(&mut vec![p.clone()], rule, max_len, &mut |pts: &[LatticePoint]| {
        if keep(pts) {
            out.push(JumpPath { points: pts.to_vec() });
        }
    });
    Ok(out)
}

/// All unrestricted paths from `p`, optionally capped at `max_len` jumps.
pub fn enumerate_unrestricted(p: &LatticePoint, max_len: Option<usize>) -> Result<Vec<JumpPath>> {
    collect(p, Rule::Generalized, max_len, |_| true)
}

/// All paths from `p` that end at the origin.
pub fn enumerate_restricted(p: &LatticePoint) -> Result<Vec<JumpPath>> {
    collect(p, Rule::Generalized, None, |pts| {
        pts.last().is_some_and(LatticePoint::is_origin)
    })
}

/// All chains from `p` that strictly decrease every coordinate at each step.
pub fn enumerate_simple(p: &LatticePoint) -> Result<Vec<JumpPath>> {
    collect(p, Rule::Simple, None, |_| true)
}

/// Number of unrestricted paths from `p` by number of jumps.
pub fn length_histogram(p: &LatticePoint) -> Result<BTreeMap<usize, Count>> {
    let mut raw: BTreeMap<usize, u64> = BTreeMap::new();
    for_each_unrestricted(p, None, |pts| *raw.entry(pts.len() - 1).or_default() += 1)?;
    Ok(raw.into_iter().map(|(k, v)| (k, Count::from(v))).collect())
}

/// Number of restricted paths from `p` by number of jumps.
pub fn restricted_length_histogram(p: &LatticePoint) -> Result<BTreeMap<usize, Count>> {
    let mut raw: BTreeMap<usize, u64> = BTreeMap::new();
    for_each_unrestricted(p, None, |pts| {
        if pts.last().is_some_and(LatticePoint::is_origin) {
            *raw.entry(pts.len() - 1).or_default() += 1;
        }
    })?;
    Ok(raw.into_iter().map(|(k, v)| (k, Count::from(v))).collect())
}

pub fn directional_counts(p: u64, q: u64, n: usize) -> Result<DirectionalTally> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "directional counts need at least one jump".into(),
        ));
    }
    let start = LatticePoint::planar(p, q);
    let (mut left, mut down, mut both) = (0u64, 0u64, 0u64);
    for_each_unrestricted(&start, Some(n), |pts| {
        if pts.len() != n + 1 {
            return;
        }
        let first = pts[1].coords();
        match (first[0] < p, first[1] < q) {
            (true, false) => left += 1,
            (false, true) => down += 1,
            (true, true) => both += 1,
            (false, false) => unreachable!("a jump always moves"),
        }
    })?;
    Ok(DirectionalTally {
        left: left.into(),
        down: down.into(),
        both: both.into(),
    })
}
