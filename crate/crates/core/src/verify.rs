//! Cross-module invariant suite behind `latpath verify`.
//!
//! Each check returns the first discrepancy it finds as a one-line message.
//! `max_pq` bounds the planar coordinates the heavier checks sweep over;
//! enumeration-backed checks additionally cap themselves at small points.

use num_bigint::BigInt;

use crate::cltlab;
use crate::enumerate::directional_counts;
use crate::exactmath::{Count, Polynomial};
use crate::genfunc::{
    b_sequence, legendre_closed_form, legendre_sequence, path_length_poly,
    path_length_poly_direct, TrivariateSeries, MAX_TRIVARIATE_ORDER,
};
use crate::pathcount::{
    alternating_sum_identity, restricted_count, restricted_count_2d, restricted_count_via_relaxed,
    total_paths, unrestricted_count, LatticePoint, RecurrenceTable,
};
use crate::strategy::{ClosedForm, CountKind, CountStrategy, StrategyRegistry};
use crate::zeckseq::{build_sequence, decompositions};

pub const DEFAULT_MAX_PQ: u64 = 12;

/// Totals of unrestricted paths from `(i, j)`, `i, j <= 3`, row `j`, column `i`.
pub const PATH_TABLE: [[u64; 4]; 4] = [
    [1, 2, 4, 8],
    [2, 6, 16, 40],
    [4, 16, 52, 152],
    [8, 40, 152, 504],
];

/// The first nine anti-diagonals of the sequence grid, rows from `y = 8`
/// down to `y = 0`, each listed from `x = 0`.
pub const SEQUENCE_TABLE: [&[u64]; 9] = [
    &[280],
    &[157, 263],
    &[84, 155, 259],
    &[50, 82, 139, 230],
    &[28, 48, 74, 123, 198],
    &[14, 24, 40, 66, 107, 184],
    &[7, 12, 20, 33, 59, 100, 171],
    &[3, 5, 9, 17, 30, 56, 93, 160],
    &[1, 2, 4, 8, 16, 29, 54, 90, 159],
];

pub type CheckFn = fn(u64) -> Result<(), String>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.failure.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| o.failure.is_some())
    }
}

pub fn checks() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("path-table", path_table),
        ("sequence-table", sequence_table),
        ("decomposition-25", decomposition_25),
        ("sequence-completeness", sequence_completeness),
        ("strategies-vs-enumeration", strategies_vs_enumeration),
        ("restricted-3d-vs-enumeration", restricted_3d),
        ("directional-partition", directional_partition),
        ("unrestricted-restricted", unrestricted_restricted),
        ("planar-recurrence", planar_recurrence),
        ("symmetry", symmetry),
        ("restricted-forms", restricted_forms),
        ("stationary-resummation", stationary_resummation),
        ("total-paths", total_vs_lengths),
        ("genfun-forms", genfun_forms),
        ("legendre-diagonal", legendre_diagonal),
        ("b-sequence", b_vs_a),
        ("alternating-identity", alternating_identity),
        ("trivariate-series", trivariate),
        ("chi-consistency", chi_consistency),
        ("law-convolution", law_convolution),
        ("clt-convergence", clt_convergence),
    ]
}

pub fn run_all(max_pq: u64) -> VerifyReport {
    let outcomes = checks()
        .into_iter()
        .map(|(name, check)| CheckOutcome {
            name,
            failure: check(max_pq).err(),
        })
        .collect();
    VerifyReport { outcomes }
}

fn path_table(_: u64) -> Result<(), String> {
    for (j, row) in PATH_TABLE.iter().enumerate() {
        for (i, &want) in row.iter().enumerate() {
            let got = total_paths(&LatticePoint::planar(i as u64, j as u64)).map_err(|e| e.to_string())?;
            if got != Count::from(want) {
                return Err(format!("S({i},{j}) = {got}, expected {want}"));
            }
        }
    }
    Ok(())
}

fn sequence_table(_: u64) -> Result<(), String> {
    let grid = build_sequence(9).map_err(|e| e.to_string())?;
    for (row, values) in SEQUENCE_TABLE.iter().enumerate() {
        let y = 8 - row as u64;
        for (x, &want) in values.iter().enumerate() {
            let got = grid.value_at(x as u64, y);
            if got != Some(want) {
                return Err(format!("value at ({x},{y}) is {got:?}, expected {want}"));
            }
        }
    }
    Ok(())
}

fn decomposition_25(_: u64) -> Result<(), String> {
    let grid = build_sequence(9).map_err(|e| e.to_string())?;
    let found: Vec<String> = decompositions(25, &grid)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|d| d.to_string())
        .collect();
    if found != ["24@(1,3)+1@(0,0)", "20@(2,2)+5@(1,1)"] {
        return Err(format!("decompositions of 25: {found:?}"));
    }
    Ok(())
}

fn sequence_completeness(max_pq: u64) -> Result<(), String> {
    let d = max_pq.clamp(1, 12);
    let grid = build_sequence(d).map_err(|e| e.to_string())?;
    let largest = grid.largest_value().unwrap_or(0);
    let mut previous = 0;
    for (p, v) in grid.entries() {
        if v <= previous {
            return Err(format!("value {v} at {p} does not exceed {previous}"));
        }
        previous = v;
    }
    for n in 1..=largest {
        if !grid.representable().contains(n) {
            return Err(format!("{n} has no legal decomposition over {d} diagonals"));
        }
    }
    Ok(())
}

fn strategies_vs_enumeration(max_pq: u64) -> Result<(), String> {
    let reg = StrategyRegistry::builtin();
    let oracle = reg.get("enumerate").map_err(|e| e.to_string())?;
    let m = max_pq.min(5);
    for p in 0..=m {
        for q in 0..=m {
            let point = LatticePoint::planar(p, q);
            for kind in [CountKind::Unrestricted, CountKind::Restricted] {
                let want = oracle.table(kind, &point).map_err(|e| e.to_string())?;
                for s in reg.iter() {
                    let got = s.table(kind, &point).map_err(|e| e.to_string())?;
                    if got != want {
                        return Err(format!("{} {kind} at ({p},{q}) disagrees with enumeration", s.name()));
                    }
                }
            }
        }
    }
    Ok(())
}

fn restricted_3d(max_pq: u64) -> Result<(), String> {
    let reg = StrategyRegistry::builtin();
    let oracle = reg.get("enumerate").map_err(|e| e.to_string())?;
    let m = max_pq.min(3);
    for a in 0..=m {
        for b in 0..=m {
            for c in 0..=m {
                let point = LatticePoint::new(vec![a, b, c]).expect("three coordinates");
                let want = oracle
                    .table(CountKind::Restricted, &point)
                    .map_err(|e| e.to_string())?;
                for n in 0..=point.coord_sum() {
                    if restricted_count(&point, n) != want.get(n as usize) {
                        return Err(format!("g({point}, {n}) disagrees with enumeration"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn directional_partition(max_pq: u64) -> Result<(), String> {
    let m = max_pq.min(4);
    for p in 1..=m {
        for q in 1..=m {
            for n in 1..=(p + q) as usize {
                let t = directional_counts(p, q, n).map_err(|e| e.to_string())?;
                if t.total() != unrestricted_count(p, q, n as u64) {
                    return Err(format!("left + down + both != u at ({p},{q}) n={n}"));
                }
            }
        }
    }
    Ok(())
}

fn unrestricted_restricted(max_pq: u64) -> Result<(), String> {
    for p in 0..=max_pq {
        for q in 0..=max_pq {
            let v = LatticePoint::planar(p, q);
            for n in 0..=p + q + 1 {
                if unrestricted_count(p, q, n) != restricted_count(&v, n) + restricted_count(&v, n + 1) {
                    return Err(format!("u != g(n) + g(n+1) at ({p},{q}) n={n}"));
                }
            }
        }
    }
    Ok(())
}

fn planar_recurrence(max_pq: u64) -> Result<(), String> {
    let t = RecurrenceTable::build(max_pq, max_pq);
    for p in 0..=max_pq {
        for q in 0..=max_pq {
            for n in 0..=p + q + 1 {
                if t.get(p, q, n) != Some(unrestricted_count(p, q, n)) {
                    return Err(format!("recurrence disagrees with closed form at ({p},{q}) n={n}"));
                }
            }
        }
    }
    Ok(())
}

fn symmetry(max_pq: u64) -> Result<(), String> {
    for p in 0..=max_pq {
        for q in 0..p {
            for n in 0..=p + q {
                if unrestricted_count(p, q, n) != unrestricted_count(q, p, n)
                    || restricted_count_2d(p, q, n) != restricted_count_2d(q, p, n)
                {
                    return Err(format!("asymmetric counts at ({p},{q}) n={n}"));
                }
            }
        }
    }
    Ok(())
}

fn restricted_forms(max_pq: u64) -> Result<(), String> {
    for p in 0..=max_pq {
        for q in 0..=max_pq {
            let v = LatticePoint::planar(p, q);
            for n in 0..=p + q + 1 {
                if restricted_count(&v, n) != restricted_count_2d(p, q, n) {
                    return Err(format!("inclusion-exclusion != planar closed form at ({p},{q}) n={n}"));
                }
            }
        }
    }
    Ok(())
}

fn stationary_resummation(max_pq: u64) -> Result<(), String> {
    let m = max_pq.min(4);
    for a in 0..=m {
        for b in 0..=m {
            for c in 0..=m {
                let v = LatticePoint::new(vec![a, b, c]).expect("three coordinates");
                for n in 0..=a + b + c + 1 {
                    if restricted_count(&v, n) != restricted_count_via_relaxed(&v, n) {
                        return Err(format!("stationary-step resummation fails at {v} n={n}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn total_vs_lengths(max_pq: u64) -> Result<(), String> {
    for p in 0..=max_pq {
        for q in 0..=max_pq {
            let s = total_paths(&LatticePoint::planar(p, q)).map_err(|e| e.to_string())?;
            let by_length: Count = (0..=p + q).map(|n| unrestricted_count(p, q, n)).sum();
            if s != by_length {
                return Err(format!("S({p},{q}) = {s} but lengths sum to {by_length}"));
            }
        }
    }
    Ok(())
}

fn genfun_forms(max_pq: u64) -> Result<(), String> {
    for p in 0..=max_pq {
        for q in 0..=max_pq {
            let f = path_length_poly(p, q);
            if f.poly != path_length_poly_direct(p, q).poly || f.poly != path_length_poly(q, p).poly {
                return Err(format!("generating function forms disagree at ({p},{q})"));
            }
        }
    }
    Ok(())
}

fn legendre_diagonal(max_pq: u64) -> Result<(), String> {
    let a = legendre_sequence(max_pq as usize).map_err(|e| e.to_string())?;
    for (n, an) in a.iter().enumerate() {
        if *an != legendre_closed_form(n as u64) {
            return Err(format!("recurrence a_{n} differs from its closed form"));
        }
        let diag = &Polynomial::one_plus_x_pow(n as u64) * an;
        if diag != path_length_poly(n as u64, n as u64).poly {
            return Err(format!("F_({n},{n}) != (1+x)^{n} a_{n}"));
        }
    }
    Ok(())
}

fn b_vs_a(max_pq: u64) -> Result<(), String> {
    let a = legendre_sequence(max_pq as usize).map_err(|e| e.to_string())?;
    let b = b_sequence(max_pq as usize).map_err(|e| e.to_string())?;
    for (i, (ai, bi)) in a.iter().zip(&b).enumerate() {
        if &(&Polynomial::one_plus_x_pow(i as u64) * ai) != bi {
            return Err(format!("b_{i} != (1+z)^{i} a_{i}"));
        }
    }
    Ok(())
}

fn alternating_identity(max_pq: u64) -> Result<(), String> {
    for m in 0..=max_pq {
        for n in 0..=max_pq {
            for k in 0..=max_pq {
                let (lhs, rhs) = alternating_sum_identity(m, n, k);
                if lhs != BigInt::from(rhs.clone()) {
                    return Err(format!("alternating sum {lhs} != C({m},{k}) = {rhs} at n={n}"));
                }
            }
        }
    }
    Ok(())
}

fn trivariate(max_pq: u64) -> Result<(), String> {
    let order = max_pq.min(MAX_TRIVARIATE_ORDER / 2);
    let series = TrivariateSeries::build(order, order).map_err(|e| e.to_string())?;
    for p in 0..=order {
        for q in 0..=order - p {
            for n in 0..=p + q {
                if series.coeff(p, q, n) != unrestricted_count(p, q, n) {
                    return Err(format!("series coefficient differs from u at ({p},{q}) n={n}"));
                }
            }
        }
    }
    Ok(())
}

fn chi_consistency(_: u64) -> Result<(), String> {
    for c in [1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0] {
        let v = cltlab::chi_consistency(c).map_err(|e| e.to_string())?;
        if (v - 1.0).abs() >= 1e-12 {
            return Err(format!("2 chi Var(B)/n = {v} at c = {c}"));
        }
    }
    Ok(())
}

fn law_convolution(max_pq: u64) -> Result<(), String> {
    for p in 0..=max_pq {
        for q in 0..=max_pq {
            let d = cltlab::exact_distribution(p, q).map_err(|e| e.to_string())?;
            if !cltlab::is_normalized(&d.probs) {
                return Err(format!("law of X_({p},{q}) does not sum to one"));
            }
            let (a, b) = cltlab::component_distributions(p, q);
            if cltlab::convolve(&a, &b) != d.probs {
                return Err(format!("A * B != X at ({p},{q})"));
            }
            let (ma, va) = cltlab::moments(&a);
            let (mb, vb) = cltlab::moments(&b);
            if ma + mb != d.mean_exact || va + vb != d.var_exact {
                return Err(format!("moments are not additive at ({p},{q})"));
            }
        }
    }
    Ok(())
}

fn clt_convergence(_: u64) -> Result<(), String> {
    let rows = cltlab::convergence_report(1.0, &[25, 50, 100, 200]).map_err(|e| e.to_string())?;
    let series = |f: fn(&cltlab::ReportRow) -> f64| rows.iter().map(f).collect::<Vec<_>>();
    for (what, xs) in [
        ("mean error", series(|r| r.mean_rel_error())),
        ("variance error", series(|r| r.var_rel_error())),
        ("KS distance", series(|r| r.ks)),
        ("tail mass", series(|r| r.tail_mass)),
    ] {
        if !cltlab::strictly_decreasing(&xs) {
            return Err(format!("{what} is not strictly decreasing: {xs:?}"));
        }
    }
    Ok(())
}

/// Counts from the default strategy, used by callers that only need one.
pub fn closed_form_table(p: u64, q: u64, kind: CountKind) -> Vec<Count> {
    ClosedForm
        .table(kind, &LatticePoint::planar(p, q))
        .expect("planar point")
        .counts()
        .to_vec()
}
