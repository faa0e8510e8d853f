//! Plus-components of a co-signotope in `G_{n,d}`, their sources, p-sequences
//! and the decomposition/merge pair.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{neighbors, source_subset, DSubset, GroundParams};
use crate::cosignotope::{Alignment, CoSignotope};
use crate::error::{Error, Result};

/// Component sizes indexed by source index `0..=d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PSequence(Vec<usize>);

impl PSequence {
    pub fn new(sizes: Vec<usize>) -> Self {
        Self(sizes)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// No two consecutive entries are both non-zero.
    pub fn is_sparse(&self) -> bool {
        is_sparse(&self.0)
    }
}

pub(crate) fn is_sparse(parts: &[usize]) -> bool {
    parts.windows(2).all(|w| w[0] == 0 || w[1] == 0)
}

/// The tuple `(τ_0, …, τ_d)` where `τ_i` keeps only the component at `S_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComponentDecomposition {
    parts: Vec<CoSignotope>,
}

impl ComponentDecomposition {
    pub fn new(parts: Vec<CoSignotope>) -> Self {
        Self { parts }
    }

    pub fn parts(&self) -> &[CoSignotope] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<CoSignotope> {
        self.parts
    }

    pub fn sizes(&self) -> PSequence {
        PSequence(self.parts.iter().map(CoSignotope::plus_count).collect())
    }
}

/// Connected components of the subgraph of `G_{n,d}` induced on the
/// plus-subsets, ordered by their smallest member.
pub fn plus_components(t: &CoSignotope) -> Vec<BTreeSet<DSubset>> {
    let params = t.params();
    let mut seen: BTreeSet<&DSubset> = BTreeSet::new();
    let mut out = Vec::new();
    for start in t.plus_set() {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(u) = queue.pop_front() {
            for v in neighbors(params, &u).expect("plus members are valid subsets") {
                if let Some(member) = t.plus_set().get(&v) {
                    if seen.insert(member) {
                        comp.insert(v.clone());
                        queue.push_back(v);
                    }
                }
            }
        }
        out.push(comp);
    }
    // iteration order over the plus-set already yields components by minimum
    out
}

fn require_theory_range(t: &CoSignotope) -> Result<()> {
    if !t.is_valid() {
        return Err(Error::NotCoSignotope);
    }
    let bound = t.params().r();
    if t.plus_count() > bound {
        return Err(Error::OutOfTheory {
            plus_count: t.plus_count(),
            bound,
        });
    }
    Ok(())
}

/// Source indices of the source subsets contained in `component`.
pub fn sources_in(params: GroundParams, component: &BTreeSet<DSubset>) -> Vec<usize> {
    (0..=params.d())
        .filter(|&i| component.contains(&source_subset(params, i).expect("i <= d")))
        .collect()
}

/// Index of the component containing `b`: the largest `j` in `[1, d]` whose
/// `(τ, B, j)`-series is left-aligned, or 0 if there is none.
pub fn classify(t: &CoSignotope, b: &DSubset) -> Result<usize> {
    require_theory_range(t)?;
    if !t.is_plus(b) {
        return Err(Error::ArgumentOutOfRange(format!(
            "{b} is not a plus-subset"
        )));
    }
    let mut index = 0;
    for j in 1..=t.params().d() {
        if t.series_alignment(b, j)? == Alignment::LeftAligned {
            index = j;
        }
    }
    #[cfg(debug_assertions)]
    {
        let by_traversal = classify_by_traversal(t, b)?;
        debug_assert_eq!(
            index, by_traversal,
            "alignment rule disagrees with traversal"
        );
    }
    Ok(index)
}

/// Source index of `b`'s component, found by traversal.
pub fn classify_by_traversal(t: &CoSignotope, b: &DSubset) -> Result<usize> {
    let comp = plus_components(t)
        .into_iter()
        .find(|c| c.contains(b))
        .ok_or_else(|| Error::ArgumentOutOfRange(format!("{b} is not a plus-subset")))?;
    match sources_in(t.params(), &comp)[..] {
        [i] => Ok(i),
        _ => Err(Error::Internal(format!(
            "component of {b} does not contain exactly one source"
        ))),
    }
}

fn components_by_source(t: &CoSignotope) -> Result<Vec<BTreeSet<DSubset>>> {
    require_theory_range(t)?;
    let params = t.params();
    let mut by_source = vec![BTreeSet::new(); params.d() + 1];
    for comp in plus_components(t) {
        match sources_in(params, &comp)[..] {
            [i] => by_source[i] = comp,
            _ => {
                return Err(Error::Internal(
                    "plus-component without exactly one source subset".into(),
                ))
            }
        }
    }
    Ok(by_source)
}

/// Component sizes indexed by source.
pub fn p_sequence(t: &CoSignotope) -> Result<PSequence> {
    Ok(PSequence(
        components_by_source(t)?.iter().map(BTreeSet::len).collect(),
    ))
}

pub fn decompose(t: &CoSignotope) -> Result<ComponentDecomposition> {
    let params = t.params();
    let parts = components_by_source(t)?
        .into_iter()
        .map(|comp| CoSignotope::new(params, comp))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComponentDecomposition { parts })
}

/// Reassembles a co-signotope from single-component parts. The output is
/// re-validated; a failure there is reported as an internal error.
pub fn merge(decomposition: &ComponentDecomposition) -> Result<CoSignotope> {
    let parts = decomposition.parts();
    let first = parts
        .first()
        .ok_or_else(|| Error::ParamMismatch("no parts".into()))?;
    let params = first.params();
    if parts.len() != params.d() + 1 {
        return Err(Error::ParamMismatch(format!(
            "expected {} parts, got {}",
            params.d() + 1,
            parts.len()
        )));
    }
    if let Some(p) = parts.iter().find(|p| p.params() != params) {
        return Err(Error::ParamMismatch(format!(
            "{:?} vs {:?}",
            p.params(),
            params
        )));
    }
    let sizes = decomposition.sizes();
    if !sizes.is_sparse() {
        return Err(Error::NotSparse {
            parts: sizes.sizes().to_vec(),
        });
    }
    if sizes.total() > params.r() {
        return Err(Error::OutOfTheory {
            plus_count: sizes.total(),
            bound: params.r(),
        });
    }
    for (i, part) in parts.iter().enumerate() {
        if part.plus_count() == 0 {
            continue;
        }
        if !part.is_valid() {
            return Err(Error::NotCoSignotope);
        }
        let comps = plus_components(part);
        if comps.len() != 1 || sources_in(params, &comps[0]) != [i] {
            return Err(Error::WrongSource { part: i });
        }
    }
    let mut plus = BTreeSet::new();
    for part in parts {
        for b in part.plus_set() {
            if !plus.insert(b.clone()) {
                return Err(Error::OverlappingParts);
            }
        }
    }
    let merged = CoSignotope::new(params, plus)?;
    if !merged.is_valid() {
        return Err(Error::Internal(
            "merged sign function is not a co-signotope".into(),
        ));
    }
    if decompose(&merged)?.parts() != parts {
        return Err(Error::Internal("merge does not invert decompose".into()));
    }
    Ok(merged)
}
