//! Ground-level subset machinery.
//!
//! Subsets are stored as ascending 1-based tuples. [`Domain`] adds a dense
//! index (lexicographic rank in `[0, C(n,d))`) together with precomputed series
//! and adjacency tables for the enumeration kernels.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ground-set size `n` and subset size `d`, with `1 <= d <= n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundParams {
    n: usize,
    d: usize,
}

impl GroundParams {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if d == 0 || d >= n {
            return Err(Error::InvalidParams { n, d });
        }
        Ok(Self { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Rank of the complementary signotope, `r = n - d`.
    pub fn r(&self) -> usize {
        self.n - self.d
    }

    /// Every series has this many members.
    pub fn series_len(&self) -> usize {
        self.n - self.d + 1
    }

    /// Number of d-subsets, `C(n, d)`.
    pub fn subset_count(&self) -> Option<u64> {
        binomial(self.n as u64, self.d as u64)
    }
}

/// A strictly increasing tuple of `d` integers in `[1, n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DSubset(Vec<usize>);

impl DSubset {
    pub fn new(params: GroundParams, elements: Vec<usize>) -> Result<Self> {
        let ok = elements.len() == params.d
            && elements.iter().all(|&x| (1..=params.n).contains(&x))
            && elements.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(Self(elements))
        } else {
            Err(Error::InvalidSubset {
                subset: elements,
                n: params.n,
                d: params.d,
            })
        }
    }

    /// Wraps a tuple without checking it; callers guarantee validity.
    pub(crate) fn from_sorted_unchecked(elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Self(elements)
    }

    /// Checks that the tuple is a valid subset for `params`.
    pub fn check(&self, params: GroundParams) -> Result<()> {
        Self::new(params, self.0.clone()).map(|_| ())
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn into_elements(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based element access with the conventions `b_0 = 0` and `b_{d+1} = n + 1`.
    pub fn padded(&self, n: usize, j: usize) -> usize {
        if j == 0 {
            0
        } else if j > self.0.len() {
            n + 1
        } else {
            self.0[j - 1]
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }
}

impl fmt::Debug for DSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for DSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Checked binomial coefficient.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for step in 0..k {
        acc = acc * (n - step) as u128 / (step + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Lexicographic iterator over all k-subsets of `[1, n]`.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (1..=k).collect());
        Self { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        // rightmost position that can still be incremented
        let pos = (0..k).rev().find(|&p| next[p] < self.n - (k - 1 - p));
        if let Some(p) = pos {
            next[p] += 1;
            for q in p + 1..k {
                next[q] = next[q - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// All d-subsets of `[n]` in lexicographic order.
pub fn all_d_subsets(params: GroundParams) -> impl Iterator<Item = DSubset> {
    Combinations::new(params.n, params.d).map(DSubset::from_sorted_unchecked)
}

fn check_subset(params: GroundParams, b: &DSubset) -> Result<()> {
    b.check(params)
}

fn check_series_index(params: GroundParams, i: usize) -> Result<()> {
    if i == 0 || i > params.d {
        return Err(Error::IndexOutOfRange {
            what: "series",
            index: i,
            min: 1,
            max: params.d,
        });
    }
    Ok(())
}

fn check_source_index(params: GroundParams, i: usize) -> Result<()> {
    if i > params.d {
        return Err(Error::IndexOutOfRange {
            what: "source",
            index: i,
            min: 0,
            max: params.d,
        });
    }
    Ok(())
}

/// Inserts `x` into the sorted tuple `base` (which must not contain it).
fn insert_sorted(base: &[usize], x: usize) -> Vec<usize> {
    let pos = base.partition_point(|&y| y < x);
    let mut out = Vec::with_capacity(base.len() + 1);
    out.extend_from_slice(&base[..pos]);
    out.push(x);
    out.extend_from_slice(&base[pos..]);
    out
}

/// Members of the series through `base ∪ {x}` for `x ∉ base`, ascending in `x`.
fn series_over_base(n: usize, base: &[usize]) -> Vec<DSubset> {
    (1..=n)
        .filter(|x| base.binary_search(x).is_err())
        .map(|x| DSubset::from_sorted_unchecked(insert_sorted(base, x)))
        .collect()
}

/// The `(B, i)`-series: `B` with its `i`-th element replaced by every other
/// available element, in increasing order. Always has `n - d + 1` members and
/// contains `B`.
pub fn series(params: GroundParams, b: &DSubset, i: usize) -> Result<Vec<DSubset>> {
    check_subset(params, b)?;
    check_series_index(params, i)?;
    let mut base = b.0.clone();
    base.remove(i - 1);
    Ok(series_over_base(params.n, &base))
}

/// The source subset `S_{n,d,i} = (1, …, i, n-d+i+1, …, n)`.
pub fn source_subset(params: GroundParams, i: usize) -> Result<DSubset> {
    check_source_index(params, i)?;
    let (n, d) = (params.n, params.d);
    let elements = (1..=i).chain(n - d + i + 1..=n).collect();
    Ok(DSubset::from_sorted_unchecked(elements))
}

/// Every subset that sits immediately before or after `b` in one of its series.
pub fn neighbors(params: GroundParams, b: &DSubset) -> Result<BTreeSet<DSubset>> {
    check_subset(params, b)?;
    let mut out = BTreeSet::new();
    for i in 1..=params.d {
        let s = series(params, b, i)?;
        let pos = s
            .iter()
            .position(|x| x == b)
            .ok_or_else(|| Error::Internal("subset missing from its own series".into()))?;
        if pos > 0 {
            out.insert(s[pos - 1].clone());
        }
        if pos + 1 < s.len() {
            out.insert(s[pos + 1].clone());
        }
    }
    Ok(out)
}

/// Lower bound `max(0, b_i - b_{i+1} + n - d + 1)` on the graph distance from
/// `b` to `S_{n,d,i}`. The `i = 0` case uses the conventions `b_0 = 0` and
/// `b_{d+1} = n + 1`.
pub fn distance_lower_bound(params: GroundParams, b: &DSubset, i: usize) -> Result<usize> {
    check_subset(params, b)?;
    check_source_index(params, i)?;
    let (n, d) = (params.n as i64, params.d as i64);
    let lo = b.padded(params.n, i) as i64;
    let hi = b.padded(params.n, i + 1) as i64;
    Ok((lo - hi + n - d + 1).max(0) as usize)
}

/// Breadth-first distances in `G_{n,d}` from `start` to every subset, indexed
/// by lexicographic rank.
pub fn bfs_distances(domain: &Domain, start: &DSubset) -> Result<Vec<usize>> {
    let s = domain.rank(start)?;
    let mut dist = vec![usize::MAX; domain.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in domain.neighbor_ranks(u) {
            let v = v as usize;
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    Ok(dist)
}

/// Upper limit on `C(n, d)` for a dense [`Domain`].
pub const DOMAIN_LIMIT: u64 = 1 << 22;

/// Dense index over all d-subsets of `[n]` with precomputed series and
/// adjacency tables. Ranks are positions in lexicographic order.
#[derive(Debug, Clone)]
pub struct Domain {
    params: GroundParams,
    subsets: Vec<DSubset>,
    binom: Vec<Vec<u64>>,
    series: Vec<Vec<u32>>,
    // series id for (rank, j - 1)
    member_series: Vec<Vec<u32>>,
    neighbors: Vec<Vec<u32>>,
}

impl Domain {
    pub fn new(params: GroundParams) -> Result<Self> {
        let count = params.subset_count().ok_or(Error::Overflow("C(n,d)"))?;
        if count > DOMAIN_LIMIT {
            return Err(Error::GuardExceeded {
                candidates: count as u128,
                limit: DOMAIN_LIMIT as u128,
            });
        }
        let n = params.n;
        let mut binom = vec![vec![0u64; n + 1]; n + 1];
        for a in 0..=n {
            binom[a][0] = 1;
            for b in 1..=a {
                binom[a][b] = binom[a - 1][b - 1] + if b < a { binom[a - 1][b] } else { 0 };
            }
        }
        let subsets: Vec<DSubset> = all_d_subsets(params).collect();
        let mut domain = Self {
            params,
            subsets,
            binom,
            series: Vec::new(),
            member_series: Vec::new(),
            neighbors: Vec::new(),
        };

        let bases: Vec<Vec<usize>> = Combinations::new(n, params.d - 1).collect();
        let mut series = Vec::with_capacity(bases.len());
        let mut member_series = vec![vec![0u32; params.d]; domain.subsets.len()];
        for (sid, base) in bases.iter().enumerate() {
            let ranks: Vec<u32> = series_over_base(n, base)
                .iter()
                .map(|s| domain.rank_unchecked(s.elements()) as u32)
                .collect();
            for &r in &ranks {
                let member = &domain.subsets[r as usize];
                // the slot j where member \ {member_j} == base
                let j = (0..params.d)
                    .find(|&j| !base.contains(&member.0[j]))
                    .expect("base is a subset of every series member");
                member_series[r as usize][j] = sid as u32;
            }
            series.push(ranks);
        }
        let mut nbrs = vec![Vec::new(); domain.subsets.len()];
        for ranks in &series {
            for w in ranks.windows(2) {
                nbrs[w[0] as usize].push(w[1]);
                nbrs[w[1] as usize].push(w[0]);
            }
        }
        for list in &mut nbrs {
            list.sort_unstable();
            list.dedup();
        }
        domain.series = series;
        domain.member_series = member_series;
        domain.neighbors = nbrs;
        Ok(domain)
    }

    pub fn params(&self) -> GroundParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subset(&self, rank: usize) -> &DSubset {
        &self.subsets[rank]
    }

    pub fn subsets(&self) -> &[DSubset] {
        &self.subsets
    }

    fn rank_unchecked(&self, elems: &[usize]) -> usize {
        let (n, d) = (self.params.n, elems.len());
        let mut rank = 0u64;
        let mut prev = 0;
        for (j, &b) in elems.iter().enumerate() {
            for x in prev + 1..b {
                rank += self.binom[n - x][d - 1 - j];
            }
            prev = b;
        }
        rank as usize
    }

    /// Lexicographic rank of a subset.
    pub fn rank(&self, b: &DSubset) -> Result<usize> {
        check_subset(self.params, b)?;
        Ok(self.rank_unchecked(b.elements()))
    }

    /// All series as rank lists; one per (d−1)-subset.
    pub fn series_table(&self) -> &[Vec<u32>] {
        &self.series
    }

    /// Ranks of the `(B, j)`-series for the subset with rank `rank`.
    pub fn series_of(&self, rank: usize, j: usize) -> &[u32] {
        &self.series[self.member_series[rank][j - 1] as usize]
    }

    pub fn neighbor_ranks(&self, rank: usize) -> &[u32] {
        &self.neighbors[rank]
    }

    /// Full validity scan of a dense sign vector: every series has at most
    /// one sign change.
    pub fn is_valid_full(&self, plus: &RankSet) -> bool {
        self.series
            .iter()
            .all(|s| sign_changes(s.iter().map(|&r| plus.contains(r as usize))) <= 1)
    }

    /// Validity scan restricted to the series through plus members.
    pub fn is_valid_sparse(&self, plus: &RankSet, members: &[u32]) -> bool {
        members.iter().all(|&r| {
            (1..=self.params.d).all(|j| {
                sign_changes(
                    self.series_of(r as usize, j)
                        .iter()
                        .map(|&x| plus.contains(x as usize)),
                ) <= 1
            })
        })
    }
}

/// Number of sign changes in a sequence of plus flags.
pub fn sign_changes(signs: impl IntoIterator<Item = bool>) -> usize {
    let mut it = signs.into_iter();
    let Some(mut prev) = it.next() else {
        return 0;
    };
    let mut changes = 0;
    for s in it {
        if s != prev {
            changes += 1;
            prev = s;
        }
    }
    changes
}

/// Fixed-size bit set over subset ranks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankSet {
    words: Vec<u64>,
}

impl RankSet {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn contains(&self, r: usize) -> bool {
        self.words[r / 64] >> (r % 64) & 1 == 1
    }

    pub fn insert(&mut self, r: usize) {
        self.words[r / 64] |= 1 << (r % 64);
    }

    pub fn remove(&mut self, r: usize) {
        self.words[r / 64] &= !(1 << (r % 64));
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }
}
