//! Sign functions on d-subsets, signotope and co-signotope validity, series
//! alignment, complementation and the single-step relation.
//!
//! A [`CoSignotope`] value is any sign function; validity is a predicate, so
//! values with two or more sign changes in a series are representable and can
//! be reported on.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    series, sign_changes, Combinations, DSubset, Domain, GroundParams, RankSet,
};
use crate::error::{Error, Result};

/// Sign pattern of one series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alignment {
    /// Starts with `+`, ends with `-`.
    LeftAligned,
    /// Starts with `-`, ends with `+`.
    RightAligned,
    /// Constant sign.
    Flat,
    /// Two or more sign changes.
    Invalid,
}

impl Alignment {
    pub fn of(signs: &[bool]) -> Self {
        match sign_changes(signs.iter().copied()) {
            0 => Alignment::Flat,
            1 if signs[0] => Alignment::LeftAligned,
            1 => Alignment::RightAligned,
            _ => Alignment::Invalid,
        }
    }
}

/// A series with more than one sign change.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub subset: DSubset,
    pub index: usize,
    /// Sign pattern, e.g. `"-+--"`.
    pub signs: String,
}

/// Sign function on the d-subsets of `[n]`, stored as its plus-set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "CoSignotopeRecord", into = "CoSignotopeRecord")]
pub struct CoSignotope {
    params: GroundParams,
    plus: BTreeSet<DSubset>,
}

/// Wire form: `{"n":…, "d":…, "plus":[[…],…]}` with `plus` sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoSignotopeRecord {
    pub n: usize,
    pub d: usize,
    pub plus: Vec<Vec<usize>>,
}

impl TryFrom<CoSignotopeRecord> for CoSignotope {
    type Error = Error;

    fn try_from(rec: CoSignotopeRecord) -> Result<Self> {
        CoSignotope::from_tuples(rec.n, rec.d, rec.plus)
    }
}

impl From<CoSignotope> for CoSignotopeRecord {
    fn from(t: CoSignotope) -> Self {
        CoSignotopeRecord {
            n: t.params.n(),
            d: t.params.d(),
            plus: t.plus.into_iter().map(DSubset::into_elements).collect(),
        }
    }
}

impl CoSignotope {
    pub fn new(params: GroundParams, plus: impl IntoIterator<Item = DSubset>) -> Result<Self> {
        let plus: BTreeSet<DSubset> = plus.into_iter().collect();
        for b in &plus {
            b.check(params)?;
        }
        Ok(Self { params, plus })
    }

    pub fn from_tuples(n: usize, d: usize, plus: Vec<Vec<usize>>) -> Result<Self> {
        let params = GroundParams::new(n, d)?;
        let plus = plus
            .into_iter()
            .map(|v| DSubset::new(params, v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(params, plus)
    }

    pub fn all_minus(params: GroundParams) -> Self {
        Self {
            params,
            plus: BTreeSet::new(),
        }
    }

    pub fn params(&self) -> GroundParams {
        self.params
    }

    pub fn plus_set(&self) -> &BTreeSet<DSubset> {
        &self.plus
    }

    pub fn into_plus_set(self) -> BTreeSet<DSubset> {
        self.plus
    }

    pub fn is_plus(&self, b: &DSubset) -> bool {
        self.plus.contains(b)
    }

    pub fn plus_count(&self) -> usize {
        self.plus.len()
    }

    /// Signs (`true` for `+`) along the `(B, j)`-series.
    pub fn series_signs(&self, b: &DSubset, j: usize) -> Result<Vec<bool>> {
        Ok(series(self.params, b, j)?
            .iter()
            .map(|x| self.is_plus(x))
            .collect())
    }

    pub fn series_alignment(&self, b: &DSubset, j: usize) -> Result<Alignment> {
        Ok(Alignment::of(&self.series_signs(b, j)?))
    }

    /// Co-signotope check. Only series through a plus-subset are scanned; an
    /// all-minus series has no sign change.
    pub fn is_valid(&self) -> bool {
        self.plus.iter().all(|b| {
            (1..=self.params.d()).all(|j| {
                let signs = self
                    .series_signs(b, j)
                    .expect("plus members are valid subsets");
                sign_changes(signs) <= 1
            })
        })
    }

    /// Definition-level check over every series, one per (d−1)-subset.
    pub fn is_valid_full(&self) -> bool {
        let (n, d) = (self.params.n(), self.params.d());
        Combinations::new(n, d - 1).all(|base| {
            let signs = (1..=n).filter(|x| !base.contains(x)).map(|x| {
                let mut v = base.clone();
                v.push(x);
                v.sort_unstable();
                self.plus.contains(&DSubset::from_sorted_unchecked(v))
            });
            sign_changes(signs) <= 1
        })
    }

    /// Every series with at least two sign changes, reported once per
    /// (subset, index) pair on a plus-subset.
    pub fn violations(&self) -> Vec<Violation> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for b in &self.plus {
            for j in 1..=self.params.d() {
                let signs = self
                    .series_signs(b, j)
                    .expect("plus members are valid subsets");
                if sign_changes(signs.iter().copied()) > 1 {
                    let mut base = b.elements().to_vec();
                    base.remove(j - 1);
                    if seen.insert(base) {
                        out.push(Violation {
                            subset: b.clone(),
                            index: j,
                            signs: signs.iter().map(|&s| if s { '+' } else { '-' }).collect(),
                        });
                    }
                }
            }
        }
        out
    }

    /// Returns a copy with `b` flipped to `+`.
    pub fn with_plus(&self, b: DSubset) -> Result<Self> {
        b.check(self.params)?;
        let mut out = self.clone();
        out.plus.insert(b);
        Ok(out)
    }

    pub fn to_rank_set(&self, domain: &Domain) -> Result<RankSet> {
        if domain.params() != self.params {
            return Err(Error::ParamMismatch(
                "domain does not match co-signotope".into(),
            ));
        }
        let mut set = RankSet::new(domain.len());
        for b in &self.plus {
            set.insert(domain.rank(b)?);
        }
        Ok(set)
    }

    pub fn from_ranks(domain: &Domain, ranks: &[u32]) -> Self {
        Self {
            params: domain.params(),
            plus: ranks
                .iter()
                .map(|&r| domain.subset(r as usize).clone())
                .collect(),
        }
    }

    /// Compact canonical JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("co-signotope serialization cannot fail")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Canonical plus-set label, e.g. `[[1,2],[4,5]]`.
    pub fn plus_label(&self) -> String {
        let tuples: Vec<&[usize]> = self.plus.iter().map(|b| b.elements()).collect();
        serde_json::to_string(&tuples).expect("plain integer arrays serialize")
    }

    /// The complementary signotope `σ(X) = τ([n] \ X)` of rank `n - d`.
    pub fn to_signotope(&self) -> Signotope {
        let n = self.params.n();
        Signotope {
            n,
            r: self.params.r(),
            plus: self.plus.iter().map(|b| complement(n, b)).collect(),
        }
    }
}

fn complement(n: usize, b: &DSubset) -> DSubset {
    DSubset::from_sorted_unchecked((1..=n).filter(|x| !b.contains(*x)).collect())
}

/// `a` and `b` differ in a single step: `a ⊂ b` and `|b| = |a| + 1`.
pub fn single_step(a: &CoSignotope, b: &CoSignotope) -> Result<bool> {
    if a.params != b.params {
        return Err(Error::ParamMismatch(format!(
            "{:?} vs {:?}",
            a.params, b.params
        )));
    }
    Ok(b.plus.len() == a.plus.len() + 1 && a.plus.is_subset(&b.plus))
}

/// Sign function on the r-subsets of `[n]`, `1 <= r <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signotope {
    n: usize,
    r: usize,
    plus: BTreeSet<DSubset>,
}

impl Signotope {
    pub fn new(n: usize, r: usize, plus: Vec<Vec<usize>>) -> Result<Self> {
        if r == 0 || r > n {
            return Err(Error::ArgumentOutOfRange(format!("rank r={r} for n={n}")));
        }
        let mut set = BTreeSet::new();
        for v in plus {
            let ok = v.len() == r
                && v.iter().all(|&x| (1..=n).contains(&x))
                && v.windows(2).all(|w| w[0] < w[1]);
            if !ok {
                return Err(Error::InvalidSubset { subset: v, n, d: r });
            }
            set.insert(DSubset::from_sorted_unchecked(v));
        }
        Ok(Self { n, r, plus: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn plus_set(&self) -> &BTreeSet<DSubset> {
        &self.plus
    }

    pub fn plus_count(&self) -> usize {
        self.plus.len()
    }

    fn packet_changes(&self, x: &[usize]) -> usize {
        sign_changes((0..x.len()).map(|k| {
            let mut v = x.to_vec();
            v.remove(k);
            self.plus.contains(&DSubset::from_sorted_unchecked(v))
        }))
    }

    /// Signotope check, scanning only packets that contain a plus-subset.
    pub fn is_valid(&self) -> bool {
        self.plus.iter().all(|a| {
            (1..=self.n).filter(|y| !a.contains(*y)).all(|y| {
                let mut x = a.elements().to_vec();
                x.push(y);
                x.sort_unstable();
                self.packet_changes(&x) <= 1
            })
        })
    }

    /// Definition-level check over every (r+1)-subset packet.
    pub fn is_valid_full(&self) -> bool {
        Combinations::new(self.n, self.r + 1).all(|x| self.packet_changes(&x) <= 1)
    }

    /// The complementary co-signotope with `d = n - r`; requires `r < n`.
    pub fn to_cosignotope(&self) -> Result<CoSignotope> {
        let params = GroundParams::new(self.n, self.n - self.r)?;
        Ok(CoSignotope {
            params,
            plus: self.plus.iter().map(|x| complement(self.n, x)).collect(),
        })
    }
}

/// Complementation `τ(B) = σ([n] \ B)` onto co-signotopes of rank `d`.
pub fn complement_iso(s: &Signotope, d: usize) -> Result<CoSignotope> {
    if s.r + d != s.n {
        return Err(Error::ParamMismatch(format!(
            "r + d = {} + {} != n = {}",
            s.r, d, s.n
        )));
    }
    s.to_cosignotope()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, d: usize, plus: &[&[usize]]) -> CoSignotope {
        CoSignotope::from_tuples(n, d, plus.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    fn sub(n: usize, d: usize, v: &[usize]) -> DSubset {
        DSubset::new(GroundParams::new(n, d).unwrap(), v.to_vec()).unwrap()
    }

    #[test]
    fn signotope_validity_examples() {
        assert!(Signotope::new(3, 1, vec![vec![1]]).unwrap().is_valid());
        // rank-1 packets have length 2, so every rank-1 sign function is valid
        assert!(Signotope::new(3, 1, vec![vec![2]]).unwrap().is_valid());
        // the single packet X = (1,2,3) reads (σ(23), σ(13), σ(12))
        assert!(Signotope::new(3, 2, vec![vec![2, 3]]).unwrap().is_valid());
        assert!(!Signotope::new(3, 2, vec![vec![1, 3]]).unwrap().is_valid());
        assert!(!Signotope::new(3, 2, vec![vec![1, 3]])
            .unwrap()
            .is_valid_full());
        for (n, r) in [(3, 1), (5, 3), (4, 4)] {
            assert!(Signotope::new(n, r, vec![]).unwrap().is_valid());
        }
    }

    #[test]
    fn cosignotope_validity_examples() {
        assert!(t(5, 2, &[&[1, 5]]).is_valid());
        let bad = t(5, 2, &[&[2, 4]]);
        assert!(!bad.is_valid());
        assert!(!bad.is_valid_full());
        assert_eq!(
            bad.series_signs(&sub(5, 2, &[2, 4]), 1).unwrap(),
            vec![false, true, false, false]
        );
        assert!(t(5, 2, &[&[1, 2], &[4, 5]]).is_valid());
    }

    #[test]
    fn violations_reported() {
        let bad = t(5, 2, &[&[2, 4]]);
        let v = bad.violations();
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].signs, "-+--");
        assert!(t(5, 2, &[&[1, 5]]).violations().is_empty());
    }

    #[test]
    fn alignment_examples() {
        let x = t(5, 2, &[&[1, 5]]);
        let b = sub(5, 2, &[1, 5]);
        assert_eq!(x.series_alignment(&b, 1).unwrap(), Alignment::LeftAligned);
        assert_eq!(x.series_alignment(&b, 2).unwrap(), Alignment::RightAligned);
        let m = CoSignotope::all_minus(GroundParams::new(5, 2).unwrap());
        assert_eq!(
            m.series_alignment(&sub(5, 2, &[2, 3]), 2).unwrap(),
            Alignment::Flat
        );
        let bad = t(5, 2, &[&[2, 4]]);
        assert_eq!(
            bad.series_alignment(&sub(5, 2, &[2, 4]), 1).unwrap(),
            Alignment::Invalid
        );
    }

    #[test]
    fn complement_examples() {
        let s = Signotope::new(5, 3, vec![vec![1, 2, 3]]).unwrap();
        let c = complement_iso(&s, 2).unwrap();
        assert_eq!(c, t(5, 2, &[&[4, 5]]));
        assert_eq!(c.to_signotope(), s);

        let e = Signotope::new(5, 3, vec![]).unwrap();
        assert_eq!(complement_iso(&e, 2).unwrap().plus_count(), 0);

        let s = Signotope::new(4, 1, vec![vec![1], vec![2]]).unwrap();
        assert_eq!(
            complement_iso(&s, 3).unwrap(),
            t(4, 3, &[&[2, 3, 4], &[1, 3, 4]])
        );
        assert!(complement_iso(&s, 2).is_err());
    }

    #[test]
    fn single_step_examples() {
        let e = CoSignotope::all_minus(GroundParams::new(5, 2).unwrap());
        let a = t(5, 2, &[&[1, 5]]);
        let b = t(5, 2, &[&[1, 2]]);
        assert!(single_step(&e, &a).unwrap());
        assert!(!single_step(&a, &e).unwrap());
        assert!(!single_step(&a, &b).unwrap());
        let other = CoSignotope::all_minus(GroundParams::new(6, 2).unwrap());
        assert!(single_step(&e, &other).is_err());
    }

    #[test]
    fn plus_count_examples() {
        assert_eq!(
            CoSignotope::all_minus(GroundParams::new(5, 2).unwrap()).plus_count(),
            0
        );
        assert_eq!(t(5, 2, &[&[1, 5]]).plus_count(), 1);
        assert_eq!(t(5, 2, &[&[1, 2], &[4, 5]]).plus_count(), 2);
    }

    #[test]
    fn canonical_json_is_sorted() {
        let x = t(5, 2, &[&[4, 5], &[1, 2]]);
        assert_eq!(x.to_json(), r#"{"n":5,"d":2,"plus":[[1,2],[4,5]]}"#);
        assert_eq!(CoSignotope::from_json(&x.to_json()).unwrap(), x);
        assert!(CoSignotope::from_json(r#"{"n":5,"d":2,"plus":[[2,1]]}"#).is_err());
        assert!(CoSignotope::from_json(r#"{"n":2,"d":2,"plus":[]}"#).is_err());
    }

    #[test]
    fn dense_checks_agree() {
        let params = GroundParams::new(5, 2).unwrap();
        let dom = Domain::new(params).unwrap();
        for x in [
            t(5, 2, &[&[2, 4]]),
            t(5, 2, &[&[1, 2], &[4, 5]]),
            t(5, 2, &[&[1, 5], &[2, 5]]),
        ] {
            let rs = x.to_rank_set(&dom).unwrap();
            let members: Vec<u32> = x
                .plus_set()
                .iter()
                .map(|b| dom.rank(b).unwrap() as u32)
                .collect();
            assert_eq!(dom.is_valid_full(&rs), x.is_valid());
            assert_eq!(dom.is_valid_sparse(&rs, &members), x.is_valid());
            assert_eq!(CoSignotope::from_ranks(&dom, &members), x);
        }
    }
}
