//! Brute-force enumeration of the truncated order `S̄_{≤p}(n,d)`.
//!
//! [`enumerate_level_bfs`] walks upward single steps from the all-minus
//! function; [`enumerate_naive`] filters every small plus-set through the
//! definition. Their agreement is the oracle check for everything else.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::combinatorics::{binomial, source_subset, Combinations, Domain, GroundParams, RankSet};
use crate::cosignotope::CoSignotope;
use crate::error::{Error, Result};

/// Candidate limit for [`enumerate_naive`].
pub const NAIVE_GUARD: u128 = 10_000_000;

/// All members of `S̄_k(n,d)` for `k = 0..=max_level`, canonically ordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelEnumeration {
    pub params: GroundParams,
    pub max_level: usize,
    pub levels: Vec<Vec<CoSignotope>>,
}

impl LevelEnumeration {
    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn level(&self, k: usize) -> &[CoSignotope] {
        &self.levels[k]
    }

    pub fn iter(&self) -> impl Iterator<Item = &CoSignotope> {
        self.levels.iter().flatten()
    }

    fn from_dense(domain: &Domain, max_level: usize, dense: &[Vec<Vec<u32>>]) -> Self {
        Self {
            params: domain.params(),
            max_level,
            levels: dense
                .iter()
                .map(|lvl| {
                    lvl.iter()
                        .map(|r| CoSignotope::from_ranks(domain, r))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Levels as sorted rank lists. Rank order is lexicographic subset order, so
/// sorting rank lists sorts plus-sets canonically.
pub fn bfs_levels_dense(domain: &Domain, max_level: usize) -> Vec<Vec<Vec<u32>>> {
    let params = domain.params();
    let sources: Vec<u32> = (0..=params.d())
        .map(|i| {
            let s = source_subset(params, i).expect("i <= d");
            domain.rank(&s).expect("source is a valid subset") as u32
        })
        .collect();
    let mut levels: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new()]];
    let mut plus = RankSet::new(domain.len());
    for _ in 0..max_level {
        let current = levels.last().expect("level 0 exists");
        let mut next: HashSet<Vec<u32>> = HashSet::new();
        for member in current {
            plus.clear();
            member.iter().for_each(|&r| plus.insert(r as usize));
            let mut candidates: Vec<u32> = sources.clone();
            for &r in member {
                candidates.extend_from_slice(domain.neighbor_ranks(r as usize));
            }
            candidates.sort_unstable();
            candidates.dedup();
            for c in candidates {
                if plus.contains(c as usize) {
                    continue;
                }
                let mut grown = member.clone();
                let pos = grown.partition_point(|&x| x < c);
                grown.insert(pos, c);
                if next.contains(&grown) {
                    continue;
                }
                plus.insert(c as usize);
                if domain.is_valid_sparse(&plus, &grown) {
                    next.insert(grown);
                }
                plus.remove(c as usize);
            }
        }
        let mut next: Vec<Vec<u32>> = next.into_iter().collect();
        next.sort_unstable();
        levels.push(next);
    }
    levels
}

/// Levels `0..=p` reached by upward single steps from the all-minus function.
pub fn enumerate_level_bfs(params: GroundParams, p: usize) -> Result<LevelEnumeration> {
    let domain = Domain::new(params)?;
    let dense = bfs_levels_dense(&domain, p);
    Ok(LevelEnumeration::from_dense(&domain, p, &dense))
}

/// `Σ_{k ≤ p} C(C(n,d), k)`, the number of plus-sets the naive oracle inspects.
pub fn naive_candidates(params: GroundParams, p: usize) -> Option<u128> {
    let total = params.subset_count()?;
    (0..=p as u64)
        .map(|k| binomial(total, k).map(u128::from))
        .try_fold(0u128, |acc, c| acc.checked_add(c?))
}

/// Every plus-set of size at most `p`, filtered by the full series scan.
pub fn enumerate_naive(params: GroundParams, p: usize) -> Result<LevelEnumeration> {
    let candidates = naive_candidates(params, p).unwrap_or(u128::MAX);
    if candidates > NAIVE_GUARD {
        return Err(Error::GuardExceeded {
            candidates,
            limit: NAIVE_GUARD,
        });
    }
    let domain = Domain::new(params)?;
    let mut plus = RankSet::new(domain.len());
    let mut levels = Vec::with_capacity(p + 1);
    for k in 0..=p {
        let mut level = Vec::new();
        for combo in Combinations::new(domain.len(), k) {
            plus.clear();
            combo.iter().for_each(|&r| plus.insert(r - 1));
            if domain.is_valid_full(&plus) {
                level.push(combo.iter().map(|&r| (r - 1) as u32).collect::<Vec<_>>());
            }
        }
        levels.push(level);
    }
    Ok(LevelEnumeration::from_dense(&domain, p, &levels))
}

/// Truncated Hasse diagram: all members of `S̄_{≤p}(n,d)` with single-step
/// edges. Node ids follow (level, canonical plus-set) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseDiagram {
    pub params: GroundParams,
    pub max_level: usize,
    pub nodes: Vec<CoSignotope>,
    pub levels: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct HasseNodeJson<'a> {
    id: usize,
    level: usize,
    plus: Vec<&'a [usize]>,
}

#[derive(Serialize)]
struct HasseJson<'a> {
    n: usize,
    d: usize,
    p: usize,
    nodes: Vec<HasseNodeJson<'a>>,
    edges: &'a [(usize, usize)],
}

impl HasseDiagram {
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "digraph hasse_n{}_d{}_p{} {{",
            self.params.n(),
            self.params.d(),
            self.max_level
        );
        let _ = writeln!(out, "  rankdir=BT;");
        for (id, node) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{id} [label=\"{}\"];", node.plus_label());
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let doc = HasseJson {
            n: self.params.n(),
            d: self.params.d(),
            p: self.max_level,
            nodes: self
                .nodes
                .iter()
                .zip(&self.levels)
                .enumerate()
                .map(|(id, (node, &level))| HasseNodeJson {
                    id,
                    level,
                    plus: node.plus_set().iter().map(|b| b.elements()).collect(),
                })
                .collect(),
            edges: &self.edges,
        };
        serde_json::to_string(&doc).expect("hasse serialization cannot fail")
    }
}

pub fn hasse_truncated(params: GroundParams, p: usize) -> Result<HasseDiagram> {
    let domain = Domain::new(params)?;
    let dense = bfs_levels_dense(&domain, p);
    let mut ids: HashMap<&[u32], usize> = HashMap::new();
    let mut levels = Vec::new();
    for (k, level) in dense.iter().enumerate() {
        for member in level {
            ids.insert(member.as_slice(), ids.len());
            levels.push(k);
        }
    }
    let mut edges = Vec::new();
    for level in dense.iter().skip(1) {
        for member in level {
            let upper = ids[member.as_slice()];
            for skip in 0..member.len() {
                let mut lower = member.clone();
                lower.remove(skip);
                if let Some(&id) = ids.get(lower.as_slice()) {
                    edges.push((id, upper));
                }
            }
        }
    }
    edges.sort_unstable();
    let nodes = LevelEnumeration::from_dense(&domain, p, &dense)
        .levels
        .into_iter()
        .flatten()
        .collect();
    Ok(HasseDiagram {
        params,
        max_level: p,
        nodes,
        levels,
        edges,
    })
}
