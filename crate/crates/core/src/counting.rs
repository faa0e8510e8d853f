//! Plus counts `P_{d,p} = |S̄_p(n,d)|` for `n >= d + p`.
//!
//! The main route sums products of Ferrers-diagram counts over sparse
//! compositions. Closed forms, partition functions and the small-rank
//! appendix counts live here too. All arithmetic is checked `u64`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::combinatorics::binomial;
use crate::components::is_sparse;
use crate::error::{Error, Result};
use crate::ferrers::count_ferrers_upto;

/// `(c_0, …, c_d)` with no two consecutive non-zero entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SparseComposition(Vec<usize>);

impl SparseComposition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if !is_sparse(&parts) {
            return Err(Error::NotSparse { parts });
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// All sparse compositions of `p` into `d + 1` parts, in lexicographic order.
pub fn sparse_compositions(d: usize, p: usize) -> Vec<SparseComposition> {
    fn rec(
        len: usize,
        remaining: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<SparseComposition>,
    ) {
        if prefix.len() == len {
            if remaining == 0 {
                out.push(SparseComposition(prefix.clone()));
            }
            return;
        }
        let prev_nonzero = prefix.last().is_some_and(|&c| c > 0);
        let max = if prev_nonzero { 0 } else { remaining };
        for c in 0..=max {
            prefix.push(c);
            rec(len, remaining - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d + 1, p, &mut Vec::with_capacity(d + 1), &mut out);
    out
}

/// Memoized Ferrers counts keyed by `(d, min(i, d - i))`.
#[derive(Debug, Default, Clone)]
pub struct PlusCounter {
    ferrers: HashMap<(usize, usize), Vec<u64>>,
}

impl PlusCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// `F_{d,i}(c)`.
    pub fn ferrers(&mut self, d: usize, i: usize, c: usize) -> Result<u64> {
        if i > d {
            return Err(Error::IndexOutOfRange {
                what: "source",
                index: i,
                min: 0,
                max: d,
            });
        }
        let key = (d, i.min(d - i));
        if self.ferrers.get(&key).is_none_or(|v| v.len() <= c) {
            let counts = count_ferrers_upto(d, key.1, c)?;
            self.ferrers.insert(key, counts);
        }
        Ok(self.ferrers[&key][c])
    }

    /// `Σ_{sparse c} Π_i F_{d,i}(c_i)`.
    pub fn plus_count(&mut self, d: usize, p: usize) -> Result<u64> {
        if d == 0 {
            return Err(Error::ArgumentOutOfRange("d must be at least 1".into()));
        }
        // warm the memo once per (d, i) at the largest size needed
        for i in 0..=d {
            self.ferrers(d, i, p)?;
        }
        let mut total: u64 = 0;
        for comp in sparse_compositions(d, p) {
            let mut product: u64 = 1;
            for (i, &c) in comp.parts().iter().enumerate() {
                product = product
                    .checked_mul(self.ferrers(d, i, c)?)
                    .ok_or(Error::Overflow("P_{d,p}"))?;
            }
            total = total
                .checked_add(product)
                .ok_or(Error::Overflow("P_{d,p}"))?;
        }
        Ok(total)
    }
}

/// `P_{d,p}` from the sparse-composition formula.
pub fn plus_count_formula(d: usize, p: usize) -> Result<u64> {
    PlusCounter::new().plus_count(d, p)
}

fn exact_div(num: u64, den: u64) -> Result<u64> {
    if !num.is_multiple_of(den) {
        return Err(Error::Internal(format!("{num}/{den} is not an integer")));
    }
    Ok(num / den)
}

/// Closed forms for `p <= 3` (any `d`) and `d <= 2` (any `p`); `None` outside
/// that range.
pub fn closed_form(d: usize, p: usize) -> Result<Option<u64>> {
    if d == 0 {
        return Err(Error::ArgumentOutOfRange("d must be at least 1".into()));
    }
    let of = || Error::Overflow("closed form");
    let dd = d as u64;
    let value = match (d, p) {
        (_, 0) => 1,
        (1, _) => 2,
        (_, 1) => dd + 1,
        // d²/2 + 3d/2
        (_, 2) => exact_div(dd.checked_mul(dd + 3).ok_or_else(of)?, 2)?,
        // d³/6 + d² + 17d/6 - 2
        (_, 3) => {
            let d2 = dd.checked_mul(dd).ok_or_else(of)?;
            let d3 = d2.checked_mul(dd).ok_or_else(of)?;
            let num = d3
                .checked_add(d2.checked_mul(6).ok_or_else(of)?)
                .and_then(|x| x.checked_add(17 * dd))
                .and_then(|x| x.checked_sub(12))
                .ok_or_else(of)?;
            exact_div(num, 6)?
        }
        (2, _) => {
            let mut conv: u64 = 0;
            for i in 0..=p {
                let term = distinct_partitions(i)?
                    .checked_mul(distinct_partitions(p - i)?)
                    .ok_or_else(of)?;
                conv = conv.checked_add(term).ok_or_else(of)?;
            }
            partitions(p)?.checked_add(conv).ok_or_else(of)?
        }
        _ => return Ok(None),
    };
    Ok(Some(value))
}

/// `π(m)`, the number of integer partitions of `m`.
pub fn partitions(m: usize) -> Result<u64> {
    let mut ways = vec![0u64; m + 1];
    ways[0] = 1;
    for part in 1..=m {
        for s in part..=m {
            ways[s] = ways[s]
                .checked_add(ways[s - part])
                .ok_or(Error::Overflow("partition count"))?;
        }
    }
    Ok(ways[m])
}

/// `δ(m)`, the number of partitions of `m` into distinct parts.
pub fn distinct_partitions(m: usize) -> Result<u64> {
    let mut ways = vec![0u64; m + 1];
    ways[0] = 1;
    for part in 1..=m {
        for s in (part..=m).rev() {
            ways[s] = ways[s]
                .checked_add(ways[s - part])
                .ok_or(Error::Overflow("distinct partition count"))?;
        }
    }
    Ok(ways[m])
}

/// Both sides of `P_{d,3} = P_{d-1,3} + P_{d-1,2} + P_{d-1,1} + 3`.
pub fn conjecture_sides(d: usize) -> Result<(u64, u64)> {
    if d < 2 {
        return Err(Error::ArgumentOutOfRange("conjecture needs d >= 2".into()));
    }
    let mut counter = PlusCounter::new();
    let lhs = counter.plus_count(d, 3)?;
    let rhs = [3, 2, 1].into_iter().try_fold(3u64, |acc, p| {
        counter
            .plus_count(d - 1, p)
            .and_then(|v| acc.checked_add(v).ok_or(Error::Overflow("conjecture")))
    })?;
    Ok((lhs, rhs))
}

pub fn conjecture_check(d: usize) -> Result<bool> {
    let (lhs, rhs) = conjecture_sides(d)?;
    Ok(lhs == rhs)
}

/// Largest `n` for the permutation oracle in [`appendix_counts`].
pub const APPENDIX_GUARD: usize = 9;

/// Formula and brute-force values for `|S_{≤2}(n,1)|` and `|S_{≤2}(n+1,2)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AppendixCounts {
    pub n: usize,
    pub rank1_formula: u64,
    pub rank1_oracle: u64,
    pub rank2_formula: u64,
    pub rank2_oracle: u64,
    /// Permutations of `[n+1]` with 0, 1 and 2 inversions.
    pub inversion_levels: [u64; 3],
}

impl AppendixCounts {
    pub fn consistent(&self) -> bool {
        self.rank1_formula == self.rank1_oracle
            && self.rank2_formula == self.rank2_oracle
            && self.rank2_formula == self.rank1_formula + self.n as u64 - 1
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn inversions(v: &[usize]) -> usize {
    (0..v.len())
        .map(|a| (a + 1..v.len()).filter(|&b| v[a] > v[b]).count())
        .sum()
}

/// Rank-1 signotopes are binary strings and rank-2 signotopes are
/// permutations, with plus count equal to the number of ones and the number
/// of inversions respectively.
pub fn appendix_counts(n: usize) -> Result<AppendixCounts> {
    if n < 2 {
        return Err(Error::ArgumentOutOfRange("n must be at least 2".into()));
    }
    if n > APPENDIX_GUARD {
        return Err(Error::GuardExceeded {
            candidates: n as u128,
            limit: APPENDIX_GUARD as u128,
        });
    }
    let nn = n as u64;
    let pairs = binomial(nn, 2).ok_or(Error::Overflow("C(n,2)"))?;
    let rank1_formula = 1 + nn + pairs;
    let rank2_formula = rank1_formula + nn - 1;

    let rank1_oracle = (0u32..1 << n).filter(|s| s.count_ones() <= 2).count() as u64;

    let mut levels = [0u64; 3];
    let mut perm: Vec<usize> = (1..=n + 1).collect();
    loop {
        let inv = inversions(&perm);
        if inv <= 2 {
            levels[inv] += 1;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(AppendixCounts {
        n,
        rank1_formula,
        rank1_oracle,
        rank2_formula,
        rank2_oracle: levels.iter().sum(),
        inversion_levels: levels,
    })
}

/// `P_{d,p}` for `d in 1..=max_d`, `p in 0..=max_p`; `rows[d-1][p]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlusCountTable {
    pub max_d: usize,
    pub max_p: usize,
    pub rows: Vec<Vec<u64>>,
}

#[derive(Serialize)]
struct Cell {
    d: usize,
    p: usize,
    value: u64,
}

impl PlusCountTable {
    /// Rows are independent and computed on scoped worker threads, each with
    /// its own memo.
    pub fn compute(max_d: usize, max_p: usize) -> Result<Self> {
        if max_d == 0 {
            return Err(Error::ArgumentOutOfRange("max-d must be at least 1".into()));
        }
        let rows = std::thread::scope(|scope| {
            let handles: Vec<_> = (1..=max_d)
                .map(|d| {
                    scope.spawn(move || {
                        let mut counter = PlusCounter::new();
                        (0..=max_p)
                            .map(|p| counter.plus_count(d, p))
                            .collect::<Result<Vec<u64>>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("table worker panicked"))
                .collect::<Result<Vec<_>>>()
        })?;
        Ok(Self { max_d, max_p, rows })
    }

    pub fn get(&self, d: usize, p: usize) -> u64 {
        self.rows[d - 1][p]
    }

    /// `d\p,0,1,…` header, one row per `d`, no padding.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d\\p");
        for p in 0..=self.max_p {
            let _ = write!(out, ",{p}");
        }
        out.push('\n');
        for (k, row) in self.rows.iter().enumerate() {
            let _ = write!(out, "{}", k + 1);
            for v in row {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }

    /// Array of `{"d":…,"p":…,"value":…}` triples, row-major.
    pub fn to_json(&self) -> String {
        let cells: Vec<Cell> = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(k, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(p, &value)| Cell { d: k + 1, p, value })
            })
            .collect();
        let mut s = serde_json::to_string(&cells).expect("table serialization cannot fail");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comps(d: usize, p: usize) -> Vec<Vec<usize>> {
        sparse_compositions(d, p).into_iter().map(|c| c.0).collect()
    }

    #[test]
    fn sparse_composition_examples() {
        assert_eq!(
            comps(2, 2),
            vec![vec![0, 0, 2], vec![0, 2, 0], vec![1, 0, 1], vec![2, 0, 0]]
        );
        assert_eq!(comps(1, 3), vec![vec![0, 3], vec![3, 0]]);
        assert_eq!(comps(4, 0), vec![vec![0; 5]]);
        assert!(SparseComposition::new(vec![1, 1, 0]).is_err());
    }

    #[test]
    fn formula_examples() {
        assert_eq!(plus_count_formula(3, 4).unwrap(), 41);
        assert_eq!(plus_count_formula(2, 2).unwrap(), 5);
        for d in 1..6 {
            assert_eq!(plus_count_formula(d, 0).unwrap(), 1);
        }
        assert!(plus_count_formula(0, 1).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form(5, 2).unwrap(), Some(20));
        assert_eq!(closed_form(4, 3).unwrap(), Some(36));
        assert_eq!(closed_form(2, 6).unwrap(), Some(33));
        assert_eq!(closed_form(3, 4).unwrap(), None);
        assert_eq!(closed_form(1, 9).unwrap(), Some(2));
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partitions(0).unwrap(), 1);
        assert_eq!(distinct_partitions(0).unwrap(), 1);
        assert_eq!(partitions(5).unwrap(), 7);
        assert_eq!(distinct_partitions(5).unwrap(), 3);
        assert_eq!(partitions(6).unwrap(), 11);
        let conv: u64 = (0..=4)
            .map(|i| distinct_partitions(i).unwrap() * distinct_partitions(4 - i).unwrap())
            .sum();
        assert_eq!(conv, 9);
        assert_eq!(partitions(4).unwrap() + conv, 14);
        assert!(matches!(partitions(500), Err(Error::Overflow(_))));
    }

    #[test]
    fn conjecture_examples() {
        assert_eq!(conjecture_sides(3).unwrap(), (20, 20));
        assert_eq!(conjecture_sides(4).unwrap(), (36, 36));
        assert_eq!(conjecture_sides(2).unwrap(), (9, 9));
        assert!(conjecture_check(1).is_err());
    }

    #[test]
    fn appendix_examples() {
        let a = appendix_counts(4).unwrap();
        assert_eq!((a.rank1_formula, a.rank2_formula), (11, 14));
        assert_eq!(a.inversion_levels, [1, 4, 9]);
        assert!(a.consistent());
        let a = appendix_counts(2).unwrap();
        assert_eq!((a.rank1_formula, a.rank2_formula), (4, 5));
        assert!(appendix_counts(10).is_err());
        assert!(appendix_counts(1).is_err());
    }

    #[test]
    fn small_table_renderings() {
        let t = PlusCountTable::compute(1, 0).unwrap();
        assert_eq!(t.to_csv(), "d\\p,0\n1,1\n");
        // rows d = 1..=3, columns p = 0..=3
        let t = PlusCountTable::compute(3, 3).unwrap();
        assert_eq!(t.to_json().matches("\"value\"").count(), 12);
        assert_eq!(t.get(3, 3), 20);
    }

    #[test]
    fn permutation_helpers() {
        let mut v = vec![1, 2, 3];
        let mut seen = 1;
        while next_permutation(&mut v) {
            seen += 1;
        }
        assert_eq!(seen, 6);
        assert_eq!(inversions(&[3, 1, 2]), 2);
    }
}
