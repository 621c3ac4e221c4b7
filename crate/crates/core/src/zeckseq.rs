//! The planar decomposition sequence and its legal decompositions.
//!
//! Anti-diagonals `x + y = 0, 1, 2, ...` are filled in order, each from the
//! x-axis upward (decreasing `x`). Every point receives the smallest positive
//! integer that is not yet the total of a legal decomposition, i.e. of a
//! chain of already placed points that strictly decreases in both
//! coordinates.
//!
//! Sets of chain totals are stored as sorted runs of consecutive integers,
//! truncated at a cap. Extending a chain only raises its total, so totals
//! above the largest value ever placed play no part in the construction or
//! in decomposition queries; the cap grows and the grid is rebuilt whenever
//! a placement would exceed it.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{guard, Error, Result};
use crate::pathcount::LatticePoint;

pub const MAX_DIAGONALS: u64 = 40;

const INITIAL_CAP: u64 = 1 << 12;

/// Stored runs allowed while building chain-total sets, about 1 GiB.
const RUN_BUDGET: usize = 1 << 26;

/// Disjoint, non-adjacent inclusive runs in increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunSet {
    runs: Vec<(u64, u64)>,
}

impl RunSet {
    pub fn singleton(v: u64) -> Self {
        Self { runs: vec![(v, v)] }
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn runs(&self) -> &[(u64, u64)] {
        &self.runs
    }

    pub fn contains(&self, v: u64) -> bool {
        let i = self.runs.partition_point(|&(_, hi)| hi < v);
        self.runs.get(i).is_some_and(|&(lo, _)| lo <= v)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut all: Vec<(u64, u64)> = Vec::with_capacity(self.runs.len() + other.runs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.runs.len() || j < other.runs.len() {
            let take_left = j >= other.runs.len()
                || (i < self.runs.len() && self.runs[i].0 <= other.runs[j].0);
            let next = if take_left {
                i += 1;
                self.runs[i - 1]
            } else {
                j += 1;
                other.runs[j - 1]
            };
            match all.last_mut() {
                Some((_, hi)) if next.0 <= hi.saturating_add(1) => *hi = (*hi).max(next.1),
                _ => all.push(next),
            }
        }
        Self { runs: all }
    }

    /// `{v + s : s in self}`.
    pub fn shifted(&self, by: u64) -> Self {
        Self {
            runs: self.runs.iter().map(|&(lo, hi)| (lo + by, hi + by)).collect(),
        }
    }

    /// `{v + s : s in self, v + s <= cap}`.
    pub fn shifted_capped(&self, by: u64, cap: u64) -> Self {
        let limit = cap.saturating_sub(by);
        Self {
            runs: self
                .runs
                .iter()
                .take_while(|&&(lo, _)| lo <= limit && by <= cap)
                .map(|&(lo, hi)| (lo + by, hi.min(limit) + by))
                .collect(),
        }
    }

    /// Smallest positive integer not in the set.
    pub fn first_gap_from_one(&self) -> u64 {
        let mut candidate = 1;
        for &(lo, hi) in &self.runs {
            if hi < candidate {
                continue;
            }
            if lo > candidate {
                break;
            }
            candidate = hi + 1;
        }
        candidate
    }

    pub fn values_up_to(&self, bound: u64) -> BTreeSet<u64> {
        self.runs
            .iter()
            .take_while(|&&(lo, _)| lo <= bound)
            .flat_map(|&(lo, hi)| lo..=hi.min(bound))
            .collect()
    }
}

/// A legal decomposition: a chain strictly decreasing in both coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Decomposition {
    pub points: Vec<LatticePoint>,
    pub values: Vec<u64>,
    pub total: u64,
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, v)) in self.points.iter().zip(&self.values).enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{v}@{p}")?;
        }
        Ok(())
    }
}

/// Chain-total sets of the boxes `[0, x] x [0, y]`, truncated at `cap`.
struct BoxSets {
    cap: u64,
    sets: HashMap<(u64, u64), RunSet>,
    live_runs: usize,
    /// Drop sets two anti-diagonals behind the newest cell.
    rolling: bool,
}

impl BoxSets {
    fn new(cap: u64, rolling: bool) -> Self {
        Self {
            cap,
            sets: HashMap::new(),
            live_runs: 0,
            rolling,
        }
    }

    /// Totals of chains strictly below `(x, y)` in both coordinates.
    fn strictly_below(&self, x: u64, y: u64) -> Option<&RunSet> {
        if x == 0 || y == 0 {
            return None;
        }
        self.sets.get(&(x - 1, y - 1))
    }

    /// Records the cell and returns the totals of chains topped by it.
    fn add(&mut self, x: u64, y: u64, value: u64) -> Result<RunSet> {
        let tops = match self.strictly_below(x, y) {
            Some(below) => RunSet::singleton(value).union(&below.shifted_capped(value, self.cap)),
            None => RunSet::singleton(value),
        };
        let mut boxed = tops.clone();
        if x > 0 {
            boxed = boxed.union(&self.sets[&(x - 1, y)]);
        }
        if y > 0 {
            boxed = boxed.union(&self.sets[&(x, y - 1)]);
        }
        self.live_runs += boxed.runs.len();
        self.sets.insert((x, y), boxed);
        let d = x + y;
        if self.rolling && x == 0 && d >= 2 {
            for x in 0..=d - 2 {
                if let Some(old) = self.sets.remove(&(x, d - 2 - x)) {
                    self.live_runs -= old.runs.len();
                }
            }
        }
        if self.live_runs > RUN_BUDGET {
            return Err(guard(
                "sequence-memory",
                format!(
                    "chain totals up to {} need more than {RUN_BUDGET} stored runs at ({x},{y})",
                    self.cap
                ),
            ));
        }
        Ok(tops)
    }
}

/// The filled part of the sequence grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqGrid {
    /// Number of anti-diagonals completely filled.
    pub diagonals: u64,
    placement: Vec<LatticePoint>,
    values: HashMap<(u64, u64), u64>,
    representable: RunSet,
    /// Chain totals above this are not tracked.
    cap: u64,
}

/// Fill order: anti-diagonal by anti-diagonal, decreasing `x` within each.
pub fn fill_order() -> impl Iterator<Item = (u64, u64)> {
    (0u64..).flat_map(|d| (0..=d).rev().map(move |x| (x, d - x)))
}

impl SeqGrid {
    /// Places the first `count` points of the fill order.
    pub fn with_placements(count: usize) -> Result<Self> {
        let limit = (MAX_DIAGONALS * (MAX_DIAGONALS + 1) / 2) as usize;
        if count > limit {
            return Err(guard(
                "diagonals",
                format!("{count} placements exceed the {MAX_DIAGONALS}-diagonal limit"),
            ));
        }
        let mut cap = INITIAL_CAP;
        let mut grid = loop {
            if let Some(grid) = Self::fill(count, cap)? {
                break grid;
            }
            cap = cap.saturating_mul(2);
        };
        let mut d = 0;
        while (d + 1) * (d + 2) / 2 <= count as u64 {
            d += 1;
        }
        grid.diagonals = d;
        Ok(grid)
    }

    /// `None` if some placement would exceed `cap`.
    fn fill(count: usize, cap: u64) -> Result<Option<Self>> {
        let mut grid = Self {
            diagonals: 0,
            placement: Vec::with_capacity(count),
            values: HashMap::with_capacity(count),
            representable: RunSet::default(),
            cap,
        };
        let mut sets = BoxSets::new(cap, true);
        for (x, y) in fill_order().take(count) {
            let value = grid.representable.first_gap_from_one();
            if value > cap {
                return Ok(None);
            }
            let tops = sets.add(x, y, value)?;
            grid.representable = grid.representable.union(&tops);
            grid.values.insert((x, y), value);
            grid.placement.push(LatticePoint::planar(x, y));
        }
        Ok(Some(grid))
    }

    pub fn value_at(&self, x: u64, y: u64) -> Option<u64> {
        self.values.get(&(x, y)).copied()
    }

    pub fn placement_order(&self) -> &[LatticePoint] {
        &self.placement
    }

    /// `(point, value)` in placement order.
    pub fn entries(&self) -> impl Iterator<Item = (&LatticePoint, u64)> + '_ {
        self.placement.iter().map(|p| {
            let c = p.coords();
            (p, self.values[&(c[0], c[1])])
        })
    }

    pub fn len(&self) -> usize {
        self.placement.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placement.is_empty()
    }

    /// Value placed last, which is also the largest.
    pub fn largest_value(&self) -> Option<u64> {
        self.entries().last().map(|(_, v)| v)
    }

    /// Chain totals up to [`SeqGrid::cap`].
    pub fn representable(&self) -> &RunSet {
        &self.representable
    }

    /// Largest tracked chain total, never below the largest placed value.
    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Box sets over the placed values, truncated at `cap`.
    fn box_sets(&self, cap: u64) -> Result<BoxSets> {
        let mut sets = BoxSets::new(cap, false);
        for (p, v) in self.entries() {
            let c = p.coords();
            sets.add(c[0], c[1], v)?;
        }
        Ok(sets)
    }
}

pub fn build_sequence(diagonals: u64) -> Result<SeqGrid> {
    if diagonals == 0 || diagonals > MAX_DIAGONALS {
        return Err(guard(
            "diagonals",
            format!("requested {diagonals} diagonals, allowed range is 1..={MAX_DIAGONALS}"),
        ));
    }
    SeqGrid::with_placements((diagonals * (diagonals + 1) / 2) as usize)
}

/// Every total `<= bound` of a non-empty legal decomposition over `grid`.
pub fn representable_set(grid: &SeqGrid, bound: u64) -> Result<BTreeSet<u64>> {
    if bound <= grid.cap {
        return Ok(grid.representable.values_up_to(bound));
    }
    let mut all = RunSet::default();
    let sets = grid.box_sets(bound)?;
    for run in sets.sets.values() {
        all = all.union(run);
    }
    Ok(all.values_up_to(bound))
}

/// All legal decompositions of `value` over `grid`, in lexicographic order of
/// their point sequences (each listed from its largest point down).
pub fn decompositions(value: u64, grid: &SeqGrid) -> Result<Vec<Decomposition>> {
    if value == 0 {
        return Err(Error::InvalidArgument(
            "only positive integers have legal decompositions".into(),
        ));
    }
    let largest = grid.largest_value().unwrap_or(0);
    if value > largest {
        return Err(Error::InsufficientGrid { value, largest });
    }
    let sets = grid.box_sets(value)?;
    let mut tops: Vec<&LatticePoint> = grid.placement.iter().collect();
    tops.sort();
    let mut out = Vec::new();
    let mut chain = Vec::new();
    for top in tops {
        let c = top.coords();
        extend(grid, &sets, (c[0], c[1]), value, &mut chain, &mut out);
    }
    Ok(out)
}

fn extend(
    grid: &SeqGrid,
    sets: &BoxSets,
    at: (u64, u64),
    remaining: u64,
    chain: &mut Vec<(u64, u64)>,
    out: &mut Vec<Decomposition>,
) {
    let v = grid.values[&at];
    if v > remaining {
        return;
    }
    let rest = remaining - v;
    chain.push(at);
    if rest == 0 {
        let values: Vec<u64> = chain.iter().map(|p| grid.values[p]).collect();
        out.push(Decomposition {
            points: chain.iter().map(|&(x, y)| LatticePoint::planar(x, y)).collect(),
            total: values.iter().sum(),
            values,
        });
    } else if sets.strictly_below(at.0, at.1).is_some_and(|s| s.contains(rest)) {
        for x in 0..at.0 {
            for y in 0..at.1 {
                extend(grid, sets, (x, y), rest, chain, out);
            }
        }
    }
    chain.pop();
}
