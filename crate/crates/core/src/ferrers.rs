//! Local coordinates of a single plus-component and generalized Ferrers
//! diagrams.
//!
//! The map `g_{n,d,i}` sends a d-subset to a lattice point whose `j`-th
//! coordinate counts from the left end of `[n]` for `j <= i` and from the right
//! end for `j > i`, so that the source subset `S_i` lands on `(1, …, 1)`.
//! Under `g` a single-component co-signotope at `S_i` becomes a downward-closed
//! point set inside the region `Z(d, i)`.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{DSubset, GroundParams};
use crate::components::{plus_components, sources_in};
use crate::cosignotope::CoSignotope;
use crate::error::{Error, Result};

/// A point with positive integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct LatticePoint(Vec<usize>);

impl LatticePoint {
    pub fn new(coords: Vec<usize>) -> Result<Self> {
        if coords.is_empty() || coords.contains(&0) {
            return Err(Error::InvalidPoint(coords));
        }
        Ok(Self(coords))
    }

    pub fn ones(d: usize) -> Self {
        Self(vec![1; d])
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    fn dominated_by(&self, other: &LatticePoint) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl TryFrom<Vec<usize>> for LatticePoint {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        LatticePoint::new(v)
    }
}

impl From<LatticePoint> for Vec<usize> {
    fn from(p: LatticePoint) -> Self {
        p.0
    }
}

/// A finite point set tagged with its region `Z(d, i)`. Whether it is
/// actually a Ferrers diagram is checked by [`is_ferrers`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FerrersDiagram {
    pub d: usize,
    pub i: usize,
    pub points: BTreeSet<LatticePoint>,
}

impl FerrersDiagram {
    pub fn new(d: usize, i: usize, points: impl IntoIterator<Item = LatticePoint>) -> Self {
        Self {
            d,
            i,
            points: points.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serialization cannot fail")
    }
}

fn check_ij(params: GroundParams, i: usize, j: usize) -> Result<()> {
    if i > params.d() {
        return Err(Error::IndexOutOfRange {
            what: "source",
            index: i,
            min: 0,
            max: params.d(),
        });
    }
    if j == 0 || j > params.d() {
        return Err(Error::IndexOutOfRange {
            what: "coordinate",
            index: j,
            min: 1,
            max: params.d(),
        });
    }
    Ok(())
}

/// `f_{n,d,i,j}(x)`: `x - j + 1` for `j <= i`, `(n - x) - (d - j) + 1` otherwise.
pub fn f_map(params: GroundParams, i: usize, j: usize, x: usize) -> Result<usize> {
    check_ij(params, i, j)?;
    let (n, d) = (params.n() as i64, params.d() as i64);
    let (x, jj) = (x as i64, j as i64);
    if x < 1 || x > n {
        return Err(Error::ArgumentOutOfRange(format!(
            "element {x} not in [1, {n}]"
        )));
    }
    let value = if j <= i {
        x - jj + 1
    } else {
        (n - x) - (d - jj) + 1
    };
    if value < 1 {
        return Err(Error::ArgumentOutOfRange(format!(
            "element {x} cannot occupy position {j} of a {d}-subset of [{n}]"
        )));
    }
    Ok(value as usize)
}

/// Inverse of [`f_map`].
pub fn f_inverse(params: GroundParams, i: usize, j: usize, a: usize) -> Result<usize> {
    check_ij(params, i, j)?;
    let (n, d) = (params.n() as i64, params.d() as i64);
    let (a, jj) = (a as i64, j as i64);
    if a < 1 {
        return Err(Error::ArgumentOutOfRange(
            "coordinate must be positive".into(),
        ));
    }
    let x = if j <= i {
        a + jj - 1
    } else {
        n - a - d + jj + 1
    };
    if x < 1 || x > n {
        return Err(Error::ArgumentOutOfRange(format!(
            "coordinate {a} at position {j} maps outside [1, {n}]"
        )));
    }
    Ok(x as usize)
}

/// `g_{n,d,i}(B) = (f_{n,d,i,1}(b_1), …, f_{n,d,i,d}(b_d))`.
pub fn g_map(params: GroundParams, i: usize, b: &DSubset) -> Result<LatticePoint> {
    b.check(params)?;
    let coords = b
        .elements()
        .iter()
        .enumerate()
        .map(|(k, &x)| f_map(params, i, k + 1, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticePoint(coords))
}

/// Inverse of [`g_map`]; fails if the preimage is not a d-subset.
pub fn g_inverse(params: GroundParams, i: usize, pt: &LatticePoint) -> Result<DSubset> {
    if pt.dim() != params.d() {
        return Err(Error::InvalidPoint(pt.0.clone()));
    }
    let elements =
        pt.0.iter()
            .enumerate()
            .map(|(k, &a)| f_inverse(params, i, k + 1, a))
            .collect::<Result<Vec<_>>>()?;
    DSubset::new(params, elements)
}

/// Membership in `Z(d, i)`: `a_j >= a_{j-1}` for `j in [2, i]` and
/// `a_j >= a_{j+1}` for `j in [i+1, d-1]`.
pub fn in_region(d: usize, i: usize, pt: &LatticePoint) -> Result<bool> {
    if pt.dim() != d || i > d {
        return Err(Error::ParamMismatch(format!(
            "point of dimension {} in Z({d},{i})",
            pt.dim()
        )));
    }
    Ok(in_region_unchecked(i, &pt.0))
}

fn in_region_unchecked(i: usize, a: &[usize]) -> bool {
    let d = a.len();
    // 1-based: j in [2, i] → a[j-1] >= a[j-2]
    (2..=i).all(|j| a[j - 1] >= a[j - 2]) && (i + 1..d).all(|j| a[j - 1] >= a[j])
}

/// Unit-step predecessors of `a` that stay positive and inside `Z(d, i)`.
fn predecessors(i: usize, a: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..a.len()).filter_map(move |k| {
        if a[k] == 1 {
            return None;
        }
        let mut b = a.to_vec();
        b[k] -= 1;
        in_region_unchecked(i, &b).then_some(b)
    })
}

/// Ferrers check via cover steps: every point lies in `Z(d, i)` and each unit
/// decrement that stays in the region is present.
pub fn is_ferrers(diagram: &FerrersDiagram) -> bool {
    let FerrersDiagram { d, i, points } = diagram;
    if *i > *d {
        return false;
    }
    let present: HashSet<&[usize]> = points.iter().map(|p| p.coords()).collect();
    points.iter().all(|p| {
        p.dim() == *d
            && in_region_unchecked(*i, p.coords())
            && predecessors(*i, p.coords()).all(|q| present.contains(q.as_slice()))
    })
}

/// Ferrers check straight from the domination definition: every point of
/// `Z(d, i)` dominated by a member is a member. Exponential in `d`.
pub fn is_ferrers_full(diagram: &FerrersDiagram) -> bool {
    let FerrersDiagram { d, i, points } = diagram;
    if *i > *d
        || points
            .iter()
            .any(|p| p.dim() != *d || !in_region_unchecked(*i, p.coords()))
    {
        return false;
    }
    points.iter().all(|x| {
        box_points(x.coords()).all(|y| {
            let y = LatticePoint(y);
            !in_region_unchecked(*i, &y.0) || !y.dominated_by(x) || points.contains(&y)
        })
    })
}

/// All points of the box `[1, a_1] × … × [1, a_d]`.
fn box_points(upper: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let mut current = Some(vec![1; upper.len()]);
    std::iter::from_fn(move || {
        let out = current.take()?;
        let mut next = out.clone();
        for k in (0..next.len()).rev() {
            if next[k] < upper[k] {
                next[k] += 1;
                current = Some(next);
                break;
            }
            next[k] = 1;
        }
        Some(out)
    })
}

fn check_di(d: usize, i: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::ArgumentOutOfRange(
            "dimension must be positive".into(),
        ));
    }
    if i > d {
        return Err(Error::IndexOutOfRange {
            what: "source",
            index: i,
            min: 0,
            max: d,
        });
    }
    Ok(())
}

type RawDiagram = Vec<Vec<usize>>;

/// Grows every diagram by one addable point, deduplicating on the sorted
/// point list.
fn grow_level(i: usize, d: usize, level: &[RawDiagram]) -> Vec<RawDiagram> {
    let mut next: HashSet<RawDiagram> = HashSet::new();
    for diagram in level {
        let mut candidates: BTreeSet<Vec<usize>> = BTreeSet::new();
        if diagram.is_empty() {
            candidates.insert(vec![1; d]);
        }
        for x in diagram {
            for k in 0..d {
                let mut y = x.clone();
                y[k] += 1;
                if in_region_unchecked(i, &y) && diagram.binary_search(&y).is_err() {
                    candidates.insert(y);
                }
            }
        }
        for y in candidates {
            if predecessors(i, &y).all(|q| diagram.binary_search(&q).is_ok()) {
                let mut grown = diagram.clone();
                let pos = grown.partition_point(|q| q < &y);
                grown.insert(pos, y);
                next.insert(grown);
            }
        }
    }
    let mut out: Vec<RawDiagram> = next.into_iter().collect();
    out.sort_unstable();
    out
}

/// All `(d, i)`-Ferrers diagrams with exactly `p` points, sorted by point list.
pub fn enumerate_ferrers(d: usize, i: usize, p: usize) -> Result<Vec<FerrersDiagram>> {
    check_di(d, i)?;
    let mut level: Vec<RawDiagram> = vec![Vec::new()];
    for _ in 0..p {
        level = grow_level(i, d, &level);
    }
    Ok(level
        .into_iter()
        .map(|pts| FerrersDiagram::new(d, i, pts.into_iter().map(LatticePoint)))
        .collect())
}

/// `F_{d,i}(c)` for every `c` in `0..=max_p`.
pub fn count_ferrers_upto(d: usize, i: usize, max_p: usize) -> Result<Vec<u64>> {
    check_di(d, i)?;
    let mut counts = vec![1u64];
    let mut level: Vec<RawDiagram> = vec![Vec::new()];
    for _ in 0..max_p {
        level = grow_level(i, d, &level);
        counts.push(u64::try_from(level.len()).map_err(|_| Error::Overflow("F_{d,i}(p)"))?);
    }
    Ok(counts)
}

/// Number of `(d, i)`-Ferrers diagrams with `p` points.
pub fn count_ferrers(d: usize, i: usize, p: usize) -> Result<u64> {
    Ok(count_ferrers_upto(d, i, p)?[p])
}

/// The diagram `{g_{n,d,i}(B) | B plus}` of a co-signotope whose only
/// non-empty component contains `S_i`.
pub fn diagram_of(t: &CoSignotope, i: usize) -> Result<FerrersDiagram> {
    let params = t.params();
    check_di(params.d(), i)?;
    if !t.is_valid() {
        return Err(Error::NotCoSignotope);
    }
    if t.plus_count() > params.r() {
        return Err(Error::OutOfTheory {
            plus_count: t.plus_count(),
            bound: params.r(),
        });
    }
    if t.plus_count() > 0 {
        let comps = plus_components(t);
        if comps.len() != 1 || sources_in(params, &comps[0]) != [i] {
            return Err(Error::NotSingleComponent { index: i });
        }
    }
    let points = t
        .plus_set()
        .iter()
        .map(|b| g_map(params, i, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(FerrersDiagram::new(params.d(), i, points))
}

/// The co-signotope on `params` whose plus-subsets are the `g`-preimages of
/// the diagram's points.
pub fn cosignotope_of(params: GroundParams, diagram: &FerrersDiagram) -> Result<CoSignotope> {
    if diagram.d != params.d() {
        return Err(Error::ParamMismatch(format!(
            "diagram dimension {} vs d = {}",
            diagram.d,
            params.d()
        )));
    }
    if !is_ferrers(diagram) {
        return Err(Error::NotFerrers {
            d: diagram.d,
            i: diagram.i,
        });
    }
    if diagram.len() > params.r() {
        return Err(Error::OutOfTheory {
            plus_count: diagram.len(),
            bound: params.r(),
        });
    }
    let plus = diagram
        .points
        .iter()
        .map(|pt| g_inverse(params, diagram.i, pt))
        .collect::<Result<Vec<_>>>()?;
    let t = CoSignotope::new(params, plus)?;
    if !t.is_valid() {
        return Err(Error::Internal(
            "diagram preimage is not a co-signotope".into(),
        ));
    }
    if !t.plus_set().is_empty() {
        let comps = plus_components(&t);
        if comps.len() != 1 || sources_in(params, &comps[0]) != [diagram.i] {
            return Err(Error::Internal(
                "diagram preimage is not a single component".into(),
            ));
        }
    }
    Ok(t)
}

/// `h = g⁻¹_{ñ,d,i} ∘ g_{n,d,i}` applied to every plus-subset of
/// `t ∈ S̄_{p,i}(n,d)`.
pub fn h_bijection(t: &CoSignotope, n_tilde: usize, p: usize, i: usize) -> Result<CoSignotope> {
    let params = t.params();
    let target = GroundParams::new(n_tilde, params.d())?;
    if p == 0 {
        return Err(Error::ArgumentOutOfRange("p must be at least 1".into()));
    }
    let bound = params.n().min(n_tilde) - params.d();
    if p > bound {
        return Err(Error::BeyondTightness { p, bound });
    }
    if t.plus_count() != p {
        return Err(Error::ParamMismatch(format!(
            "co-signotope has {} plus-subsets, expected {p}",
            t.plus_count()
        )));
    }
    cosignotope_of(target, &diagram_of(t, i)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(n: usize, d: usize) -> GroundParams {
        GroundParams::new(n, d).unwrap()
    }

    fn pt(v: &[usize]) -> LatticePoint {
        LatticePoint::new(v.to_vec()).unwrap()
    }

    fn t(n: usize, d: usize, plus: &[&[usize]]) -> CoSignotope {
        CoSignotope::from_tuples(n, d, plus.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    #[test]
    fn f_examples() {
        let g = gp(5, 2);
        assert_eq!(f_map(g, 1, 1, 1).unwrap(), 1);
        assert_eq!(f_map(g, 1, 2, 4).unwrap(), 2);
        assert_eq!(f_map(g, 1, 2, 5).unwrap(), 1);
        for x in 1..=4 {
            assert_eq!(f_inverse(g, 1, 1, f_map(g, 1, 1, x).unwrap()).unwrap(), x);
        }
        assert!(f_map(g, 1, 3, 1).is_err());
        assert!(f_map(g, 1, 1, 6).is_err());
        assert!(f_map(g, 3, 1, 1).is_err());
    }

    #[test]
    fn g_examples() {
        let g = gp(5, 2);
        let b = DSubset::new(g, vec![1, 5]).unwrap();
        assert_eq!(g_map(g, 1, &b).unwrap(), pt(&[1, 1]));
        let b = DSubset::new(g, vec![2, 4]).unwrap();
        assert_eq!(g_map(g, 1, &b).unwrap(), pt(&[2, 2]));
        assert_eq!(
            g_inverse(gp(6, 2), 1, &pt(&[1, 1])).unwrap().elements(),
            &[1, 6]
        );
        // preimage (3, 2) is not increasing
        assert!(g_inverse(g, 1, &pt(&[3, 4])).is_err());
    }

    #[test]
    fn region_examples() {
        assert!(in_region(2, 2, &pt(&[1, 2])).unwrap());
        assert!(!in_region(2, 2, &pt(&[2, 1])).unwrap());
        for a in 1..5 {
            for b in 1..5 {
                assert!(in_region(2, 1, &pt(&[a, b])).unwrap());
            }
        }
        assert!(in_region(3, 0, &pt(&[3, 2, 2])).unwrap());
        assert!(!in_region(3, 0, &pt(&[2, 3, 1])).unwrap());
        assert!(in_region(3, 0, &pt(&[1, 1])).is_err());
    }

    #[test]
    fn ferrers_examples() {
        let ok = FerrersDiagram::new(2, 1, [pt(&[1, 1]), pt(&[2, 1]), pt(&[1, 2])]);
        assert!(is_ferrers(&ok));
        assert!(is_ferrers_full(&ok));
        let bad = FerrersDiagram::new(2, 1, [pt(&[2, 1])]);
        assert!(!is_ferrers(&bad));
        assert!(!is_ferrers_full(&bad));
        assert!(is_ferrers(&FerrersDiagram::new(3, 2, [])));
        // outside Z(2,2)
        assert!(!is_ferrers(&FerrersDiagram::new(
            2,
            2,
            [pt(&[1, 1]), pt(&[2, 1])]
        )));
    }

    #[test]
    fn ferrers_counts() {
        assert_eq!(count_ferrers(2, 1, 4).unwrap(), 5);
        for d in 2..6 {
            assert_eq!(count_ferrers(d, 0, 3).unwrap(), 2);
        }
        assert_eq!(count_ferrers(3, 1, 3).unwrap(), 4);
        assert_eq!(enumerate_ferrers(2, 1, 4).unwrap().len(), 5);
        assert!(count_ferrers(2, 3, 1).is_err());
    }

    #[test]
    fn enumeration_is_canonical() {
        let all = enumerate_ferrers(3, 1, 4).unwrap();
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(all, sorted);
        assert!(all.iter().all(|f| f.len() == 4 && is_ferrers(f)));
    }

    #[test]
    fn diagram_correspondence_examples() {
        let f = diagram_of(&t(5, 2, &[&[1, 5]]), 1).unwrap();
        assert_eq!(f, FerrersDiagram::new(2, 1, [pt(&[1, 1])]));

        let f = FerrersDiagram::new(2, 1, [pt(&[1, 1]), pt(&[2, 1])]);
        let x = cosignotope_of(gp(5, 2), &f).unwrap();
        assert_eq!(x, t(5, 2, &[&[1, 5], &[2, 5]]));
        assert!(x.is_valid());

        assert!(matches!(
            diagram_of(&t(5, 2, &[&[1, 2], &[4, 5]]), 2),
            Err(Error::NotSingleComponent { index: 2 })
        ));
        assert!(matches!(
            diagram_of(&t(5, 2, &[&[1, 5]]), 2),
            Err(Error::NotSingleComponent { .. })
        ));
        let big = FerrersDiagram::new(2, 1, [pt(&[1, 1]), pt(&[2, 1])]);
        assert!(matches!(
            cosignotope_of(gp(3, 2), &big),
            Err(Error::OutOfTheory { .. })
        ));
        let not = FerrersDiagram::new(2, 1, [pt(&[2, 1])]);
        assert!(matches!(
            cosignotope_of(gp(5, 2), &not),
            Err(Error::NotFerrers { .. })
        ));
    }

    #[test]
    fn h_examples() {
        assert_eq!(
            h_bijection(&t(5, 2, &[&[1, 5]]), 6, 1, 1).unwrap(),
            t(6, 2, &[&[1, 6]])
        );
        assert_eq!(
            h_bijection(&t(5, 2, &[&[4, 5]]), 6, 1, 0).unwrap(),
            t(6, 2, &[&[5, 6]])
        );
        let x = t(5, 2, &[&[1, 5], &[2, 5]]);
        assert_eq!(h_bijection(&x, 5, 2, 1).unwrap(), x);
        assert!(matches!(
            h_bijection(&x, 3, 2, 1),
            Err(Error::BeyondTightness { p: 2, bound: 1 })
        ));
        assert!(h_bijection(&x, 6, 0, 1).is_err());
        assert!(h_bijection(&x, 6, 1, 1).is_err());
    }

    #[test]
    fn diagram_json_shape() {
        let f = FerrersDiagram::new(2, 1, [pt(&[2, 1]), pt(&[1, 1])]);
        assert_eq!(f.to_json(), r#"{"d":2,"i":1,"points":[[1,1],[2,1]]}"#);
        let back: FerrersDiagram = serde_json::from_str(&f.to_json()).unwrap();
        assert_eq!(back, f);
        assert!(
            serde_json::from_str::<FerrersDiagram>(r#"{"d":2,"i":1,"points":[[0,1]]}"#).is_err()
        );
    }
}
