//! Level-preserving bijections `S̄_{≤p}(n,d) → S̄_{≤p}(ñ,d)`.
//!
//! [`phi`] shifts every coordinate whose series is right-aligned by `ñ - n`.
//! [`zeta`] goes the long way round: decompose into components, move each
//! through its Ferrers diagram, and merge. The two must agree pointwise.

use crate::combinatorics::{DSubset, GroundParams};
use crate::components::{decompose, merge, ComponentDecomposition};
use crate::cosignotope::{Alignment, CoSignotope};
use crate::error::{Error, Result};
use crate::ferrers::h_bijection;

fn check_bounds(t: &CoSignotope, n_tilde: usize, p: usize) -> Result<GroundParams> {
    let params = t.params();
    let target = GroundParams::new(n_tilde, params.d())?;
    let bound = params.n().min(n_tilde) - params.d();
    if p > bound {
        return Err(Error::BeyondTightness { p, bound });
    }
    if t.plus_count() > p {
        return Err(Error::ParamMismatch(format!(
            "co-signotope has {} plus-subsets, more than p = {p}",
            t.plus_count()
        )));
    }
    if !t.is_valid() {
        return Err(Error::NotCoSignotope);
    }
    Ok(target)
}

/// `γ_{τ,ñ}(B)`: shift `b_j` by `ñ - n` wherever the `(τ, B, j)`-series is
/// right-aligned.
pub fn gamma(t: &CoSignotope, n_tilde: usize, b: &DSubset) -> Result<DSubset> {
    let params = t.params();
    check_bounds(t, n_tilde, t.plus_count())?;
    if !t.is_plus(b) {
        return Err(Error::ArgumentOutOfRange(format!(
            "{b} is not a plus-subset"
        )));
    }
    gamma_unchecked(t, GroundParams::new(n_tilde, params.d())?, b)
}

fn gamma_unchecked(t: &CoSignotope, target: GroundParams, b: &DSubset) -> Result<DSubset> {
    let shift = target.n() as i64 - t.params().n() as i64;
    let mut out = Vec::with_capacity(b.len());
    for (k, &x) in b.elements().iter().enumerate() {
        let x = if t.series_alignment(b, k + 1)? == Alignment::RightAligned {
            x as i64 + shift
        } else {
            x as i64
        };
        if x < 1 {
            return Err(Error::Internal(format!("gamma moved {b} below 1")));
        }
        out.push(x as usize);
    }
    DSubset::new(target, out)
        .map_err(|_| Error::Internal(format!("gamma image of {b} is not a d-subset")))
}

/// `φ_{n,ñ,d,p}(τ)` with plus-set `{γ_{τ,ñ}(B)}`.
pub fn phi(t: &CoSignotope, n_tilde: usize, p: usize) -> Result<CoSignotope> {
    let target = check_bounds(t, n_tilde, p)?;
    let plus = t
        .plus_set()
        .iter()
        .map(|b| gamma_unchecked(t, target, b))
        .collect::<Result<Vec<_>>>()?;
    let out = CoSignotope::new(target, plus)?;
    if out.plus_count() != t.plus_count() {
        return Err(Error::Internal(
            "gamma is not injective on plus-subsets".into(),
        ));
    }
    Ok(out)
}

/// `ζ_{n,ñ,d,p}`: decompose, apply `h` per component, merge.
pub fn zeta(t: &CoSignotope, n_tilde: usize, p: usize) -> Result<CoSignotope> {
    let target = check_bounds(t, n_tilde, p)?;
    let parts = decompose(t)?
        .into_parts()
        .into_iter()
        .enumerate()
        .map(|(i, part)| match part.plus_count() {
            0 => Ok(CoSignotope::all_minus(target)),
            c => h_bijection(&part, n_tilde, c, i),
        })
        .collect::<Result<Vec<_>>>()?;
    merge(&ComponentDecomposition::new(parts))
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
    fn gamma_examples() {
        let x = t(5, 2, &[&[1, 5]]);
        assert_eq!(
            gamma(&x, 6, &sub(5, 2, &[1, 5])).unwrap(),
            sub(6, 2, &[1, 6])
        );
        let x = t(5, 2, &[&[4, 5]]);
        assert_eq!(
            gamma(&x, 6, &sub(5, 2, &[4, 5])).unwrap(),
            sub(6, 2, &[5, 6])
        );
        let x = t(5, 2, &[&[1, 5], &[2, 5]]);
        for b in x.plus_set() {
            assert_eq!(&gamma(&x, 5, b).unwrap(), b);
        }
        assert!(gamma(&x, 6, &sub(5, 2, &[1, 2])).is_err());
    }

    #[test]
    fn phi_and_zeta_examples() {
        let cases = [
            (t(5, 2, &[&[1, 5]]), 1, t(6, 2, &[&[1, 6]])),
            (t(5, 2, &[]), 1, t(6, 2, &[])),
            (
                t(5, 2, &[&[1, 2], &[4, 5]]),
                2,
                t(6, 2, &[&[1, 2], &[5, 6]]),
            ),
        ];
        for (x, p, expect) in cases {
            assert_eq!(phi(&x, 6, p).unwrap(), expect);
            assert_eq!(zeta(&x, 6, p).unwrap(), expect);
            assert!(expect.is_valid());
        }
        let x = t(5, 2, &[&[1, 2], &[4, 5]]);
        assert_eq!(phi(&x, 5, 2).unwrap(), x);
        assert_eq!(zeta(&x, 5, 2).unwrap(), x);
    }

    #[test]
    fn refusal_beyond_tightness() {
        let x = t(5, 2, &[&[1, 2], &[4, 5]]);
        assert!(matches!(
            phi(&x, 3, 2),
            Err(Error::BeyondTightness { p: 2, bound: 1 })
        ));
        assert!(matches!(
            zeta(&x, 6, 4),
            Err(Error::BeyondTightness { p: 4, bound: 3 })
        ));
        assert!(matches!(phi(&x, 6, 1), Err(Error::ParamMismatch(_))));
        assert!(matches!(
            phi(&t(5, 2, &[&[2, 4]]), 6, 1),
            Err(Error::NotCoSignotope)
        ));
    }
}
