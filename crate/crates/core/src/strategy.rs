//! Interchangeable ways of counting paths of a given length, registered by
//! name so the CLI and the verification suite can pick them at runtime.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::enumerate::{length_histogram, restricted_length_histogram};
use crate::error::{Error, Result};
use crate::exactmath::Count;
use crate::genfunc::{path_length_poly, TrivariateSeries};
use crate::pathcount::{
    restricted_count, restricted_count_2d, unrestricted_count, CountTable, LatticePoint,
    RecurrenceTable,
};

pub const DEFAULT_STRATEGY: &str = "closed-form";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountKind {
    /// Paths ending anywhere, `u`.
    Unrestricted,
    /// Paths ending at the origin, `g`.
    Restricted,
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountKind::Unrestricted => "u",
            CountKind::Restricted => "g",
        })
    }
}

impl FromStr for CountKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u" => Ok(CountKind::Unrestricted),
            "g" => Ok(CountKind::Restricted),
            other => Err(Error::InvalidArgument(format!("unknown count kind `{other}`"))),
        }
    }
}

pub trait CountStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    fn supports(&self, kind: CountKind, dim: usize) -> bool;

    /// Paths of exactly `n` jumps from `point`.
    fn count(&self, kind: CountKind, point: &LatticePoint, n: u64) -> Result<Count>;

    /// Counts for every length from zero to the coordinate sum.
    fn table(&self, kind: CountKind, point: &LatticePoint) -> Result<CountTable> {
        let counts = (0..=point.coord_sum())
            .map(|n| self.count(kind, point, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(CountTable::new(point.clone(), counts))
    }
}

fn unsupported(strategy: &'static str, kind: CountKind, point: &LatticePoint) -> Error {
    Error::Unsupported {
        strategy,
        what: format!("`{kind}` counts in dimension {}", point.dim()),
    }
}

fn planar(point: &LatticePoint) -> (u64, u64) {
    (point.coords()[0], point.coords()[1])
}

/// `g(v, n)` for all `n` from `u(v, n)`, using `u(v, n) = g(v, n) + g(v, n + 1)`
/// and `g(v, 0) = [v is the origin]`.
pub fn restricted_from_unrestricted(point: &LatticePoint, u: &[Count]) -> Vec<Count> {
    let mut g = Vec::with_capacity(u.len());
    g.push(if point.is_origin() { Count::one() } else { Count::zero() });
    for n in 0..u.len().saturating_sub(1) {
        let next = &u[n] - &g[n];
        g.push(next);
    }
    g
}

/// The closed planar sums for `u` and `g`.
pub struct ClosedForm;

impl CountStrategy for ClosedForm {
    fn name(&self) -> &'static str {
        "closed-form"
    }

    fn summary(&self) -> &'static str {
        "planar binomial sums for u and g"
    }

    fn supports(&self, _kind: CountKind, dim: usize) -> bool {
        dim == 2
    }

    fn count(&self, kind: CountKind, point: &LatticePoint, n: u64) -> Result<Count> {
        if !self.supports(kind, point.dim()) {
            return Err(unsupported(self.name(), kind, point));
        }
        let (p, q) = planar(point);
        Ok(match kind {
            CountKind::Unrestricted => unrestricted_count(p, q, n),
            CountKind::Restricted => restricted_count_2d(p, q, n),
        })
    }
}

/// Inclusion-exclusion over stationary steps; any dimension. `u` follows
/// from `u(v, n) = g(v, n) + g(v, n + 1)`.
pub struct InclusionExclusion;

impl CountStrategy for InclusionExclusion {
    fn name(&self) -> &'static str {
        "inclusion-exclusion"
    }

    fn summary(&self) -> &'static str {
        "alternating stars-and-bars sum, any dimension"
    }

    fn supports(&self, _kind: CountKind, _dim: usize) -> bool {
        true
    }

    fn count(&self, kind: CountKind, point: &LatticePoint, n: u64) -> Result<Count> {
        Ok(match kind {
            CountKind::Restricted => restricted_count(point, n),
            CountKind::Unrestricted => restricted_count(point, n) + restricted_count(point, n + 1),
        })
    }
}

/// The six-term planar recurrence for `u`.
pub struct Recurrence;

impl CountStrategy for Recurrence {
    fn name(&self) -> &'static str {
        "recurrence"
    }

    fn summary(&self) -> &'static str {
        "six-term planar recurrence over the box below the point"
    }

    fn supports(&self, _kind: CountKind, dim: usize) -> bool {
        dim == 2
    }

    fn count(&self, kind: CountKind, point: &LatticePoint, n: u64) -> Result<Count> {
        Ok(self.table(kind, point)?.get(n as usize))
    }

    fn table(&self, kind: CountKind, point: &LatticePoint) -> Result<CountTable> {
        if !self.supports(kind, point.dim()) {
            return Err(unsupported(self.name(), kind, point));
        }
        let (p, q) = planar(point);
        let t = RecurrenceTable::build(p, q);
        let u: Vec<Count> = (0..=p + q)
            .map(|n| t.get(p, q, n).expect("corner is in range"))
            .collect();
        Ok(CountTable::new(point.clone(), by_kind(kind, point, u)))
    }
}

fn by_kind(kind: CountKind, point: &LatticePoint, u: Vec<Count>) -> Vec<Count> {
    match kind {
        CountKind::Unrestricted => u,
        CountKind::Restricted => restricted_from_unrestricted(point, &u),
    }
}

/// Coefficients of the product-form generating function.
pub struct GeneratingFunction;

impl CountStrategy for GeneratingFunction {
    fn name(&self) -> &'static str {
        "genfun"
    }

    fn summary(&self) -> &'static str {
        "coefficients of (1+x)^p sum_k C(q,k) C(p+k,k) x^k"
    }

    fn supports(&self, _kind: CountKind, dim: usize) -> bool {
        dim == 2
    }

    fn count(&self, kind: CountKind, point: &LatticePoint, n: u64) -> Result<Count> {
        Ok(self.table(kind, point)?.get(n as usize))
    }

    fn table(&self, kind: CountKind, point: &LatticePoint) -> Result<CountTable> {
        if !self.supports(kind, point.dim()) {
            return Err(unsupported(self.name(), kind, point));
        }
        let (p, q) = planar(point);
        let u = path_length_poly(p, q).counts();
        Ok(CountTable::new(point.clone(), by_kind(kind, point, u)))
    }
}

/// Coefficients of `1 / (1 - (1+z)(x+y-xy))`.
pub struct Trivariate;

impl CountStrategy for Trivariate {
    fn name(&self) -> &'static str {
        "trivariate"
    }

    fn summary(&self) -> &'static str {
        "fixed-point expansion of the trivariate series B(x,y,z)"
    }

    fn supports(&self, _kind: CountKind, dim: usize) -> bool {
        dim == 2
    }

    fn count(&self, kind: CountKind, point: &LatticePoint, n: u64) -> Result<Count> {
        Ok(self.table(kind, point)?.get(n as usize))
    }

    fn table(&self, kind: CountKind, point: &LatticePoint) -> Result<CountTable> {
        if !self.supports(kind, point.dim()) {
            return Err(unsupported(self.name(), kind, point));
        }
        let (p, q) = planar(point);
        let series = TrivariateSeries::build(p, q)?;
        let u: Vec<Count> = (0..=p + q).map(|n| series.coeff(p, q, n)).collect();
        Ok(CountTable::new(point.clone(), by_kind(kind, point, u)))
    }
}

/// Depth-first listing of every path; small points only.
pub struct Enumeration;

impl CountStrategy for Enumeration {
    fn name(&self) -> &'static str {
        "enumerate"
    }

    fn summary(&self) -> &'static str {
        "brute-force enumeration, coordinate sum at most 14"
    }

    fn supports(&self, _kind: CountKind, _dim: usize) -> bool {
        true
    }

    fn count(&self, kind: CountKind, point: &LatticePoint, n: u64) -> Result<Count> {
        Ok(self.table(kind, point)?.get(n as usize))
    }

    fn table(&self, kind: CountKind, point: &LatticePoint) -> Result<CountTable> {
        let hist = match kind {
            CountKind::Unrestricted => length_histogram(point)?,
            CountKind::Restricted => restricted_length_histogram(point)?,
        };
        let mut counts = vec![Count::zero(); point.coord_sum() as usize + 1];
        for (k, v) in hist {
            counts[k] = v;
        }
        Ok(CountTable::new(point.clone(), counts))
    }
}

/// Strategies by name.
pub struct StrategyRegistry {
    entries: BTreeMap<&'static str, Box<dyn CountStrategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(ClosedForm));
        r.register(Box::new(InclusionExclusion));
        r.register(Box::new(Recurrence));
        r.register(Box::new(GeneratingFunction));
        r.register(Box::new(Trivariate));
        r.register(Box::new(Enumeration));
        r
    }

    /// Adds a strategy, replacing any previous one with the same name.
    pub fn register(&mut self, strategy: Box<dyn CountStrategy>) {
        self.entries.insert(strategy.name(), strategy);
    }

    pub fn get(&self, name: &str) -> Result<&dyn CountStrategy> {
        self.entries
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::UnknownStrategy(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn CountStrategy> + '_ {
        self.entries.values().map(|b| b.as_ref())
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}
