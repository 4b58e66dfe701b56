//! Stratum labels of Γ-fixed points in symmetric products and their
//! higher-rank analogues, with the transported framing and fiber bookkeeping.
//!
//! Points are counted upstairs in `C^2`: a stratum of `(S^n C^2)^Γ` is a
//! partition `lam` of the number of free orbits, weighted by multiplicity, and
//! the residual `n - |Γ| |lam|` is the multiplicity of the origin.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mckay::CartanData;
use crate::rootsys::DimVector;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StratumLabel {
    pub v0: DimVector,
    /// Weakly decreasing positive parts.
    pub lam: Vec<u64>,
    pub residual: u64,
    /// Only the necessary condition `w - C v0 >= 0` has been checked; the
    /// regular locus may still be empty. False for `v0 = 0`.
    pub candidate: bool,
}

impl StratumLabel {
    pub fn m(&self) -> u64 {
        self.lam.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberLabel {
    /// `v - v0 - m delta`; may be negative when `empty_flag` is set.
    pub lagrangian_v: Vec<i64>,
    /// `w - C v0`; `None` when that vector has a negative entry.
    pub transported_w: Option<Vec<i64>>,
    pub punctual_parts: Vec<u64>,
    pub empty_flag: bool,
}

/// Number of free Γ-orbits that fit into `n` points: `floor(n / |Γ|)`.
pub fn fixed_sym_product(n: u64, gamma_order: u64) -> Result<u64> {
    if gamma_order < 2 {
        return Err(Error::InvalidArgument("group order must be at least 2".into()));
    }
    Ok(n / gamma_order)
}

/// Partitions of `m` in reverse-lexicographic order.
pub fn partitions(m: u64) -> Vec<Vec<u64>> {
    fn go(remaining: u64, max_part: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

fn group_order(cd: &CartanData) -> u64 {
    cd.delta.iter().map(|d| (d * d) as u64).sum()
}

/// Complex dimension of the representation with dimension vector `v`.
fn rep_dimension(v: &[i64], cd: &CartanData) -> i64 {
    v.iter().zip(&cd.delta).map(|(a, d)| a * d).sum()
}

fn sort_labels(labels: &mut [StratumLabel]) {
    labels.sort_by(|a, b| {
        b.m()
            .cmp(&a.m())
            .then_with(|| a.lam.cmp(&b.lam))
            .then_with(|| a.v0.height().cmp(&b.v0.height()))
            .then_with(|| a.v0.cmp(&b.v0))
    });
}

/// Strata of `(S^n C^2)^Γ`.
pub fn enumerate_strata_rank1(n: u64, cd: &CartanData) -> Vec<StratumLabel> {
    let order = group_order(cd);
    let mut labels = Vec::new();
    for m in 0..=n / order {
        for lam in partitions(m) {
            labels.push(StratumLabel {
                v0: DimVector::zero(cd.vertex_count),
                lam,
                residual: n - order * m,
                candidate: false,
            });
        }
    }
    sort_labels(&mut labels);
    labels
}

/// `w_s = w - C v0`, or `None` if it has a negative entry.
pub fn transported_framing(w: &[i64], v0: &DimVector, cd: &CartanData) -> Result<Option<Vec<i64>>> {
    if w.len() != cd.vertex_count || v0.len() != cd.vertex_count {
        return Err(Error::InvalidArgument(format!(
            "vectors must have {} entries",
            cd.vertex_count
        )));
    }
    let cv = cd.apply_cartan(v0.entries());
    let ws: Vec<i64> = w.iter().zip(cv).map(|(a, b)| a - b).collect();
    Ok(ws.iter().all(|&x| x >= 0).then_some(ws))
}

/// Fiber of `M(v, w)` over a point of the stratum `s`.
pub fn fiber_decomposition(v: &DimVector, w: &[i64], s: &StratumLabel, cd: &CartanData) -> Result<FiberLabel> {
    if v.len() != cd.vertex_count {
        return Err(Error::InvalidArgument(format!(
            "dimension vector must have {} entries",
            cd.vertex_count
        )));
    }
    if s.lam.windows(2).any(|p| p[0] < p[1]) || s.lam.contains(&0) {
        return Err(Error::InvalidArgument(format!(
            "{:?} is not a partition",
            s.lam
        )));
    }
    let m = s.m() as i64;
    let lagrangian_v: Vec<i64> = v
        .entries()
        .iter()
        .zip(s.v0.entries())
        .zip(&cd.delta)
        .map(|((a, b), d)| a - b - m * d)
        .collect();
    let transported_w = transported_framing(w, &s.v0, cd)?;
    let empty_flag = transported_w.is_none() || lagrangian_v.iter().any(|&x| x < 0);
    Ok(FiberLabel {
        lagrangian_v,
        transported_w,
        punctual_parts: s.lam.clone(),
        empty_flag,
    })
}

/// Candidate strata of `M_0(n, r)^Γ` for framing `w`.
///
/// Labels satisfy `|Γ| m + dim(v0) <= n` and `w - C v0 >= 0`. When the total
/// rank `sum_i w_i d_i` is 1 the locally free part is trivial, so `v0 = 0`.
pub fn enumerate_strata(n: u64, w: &[i64], cd: &CartanData) -> Result<Vec<StratumLabel>> {
    if w.len() != cd.vertex_count || w.iter().any(|&x| x < 0) {
        return Err(Error::InvalidArgument(format!(
            "framing must be {} nonnegative entries",
            cd.vertex_count
        )));
    }
    let order = group_order(cd);
    let rank = rep_dimension(w, cd);
    let mut labels = Vec::new();
    for m in 0..=n / order {
        let budget = (n - order * m) as i64;
        let v0s: Vec<Vec<i64>> = if rank == 1 {
            vec![vec![0; cd.vertex_count]]
        } else {
            bounded_vectors(&cd.delta, budget)
        };
        for v0 in v0s {
            let dim = rep_dimension(&v0, cd);
            let v0 = DimVector::new(v0)?;
            if transported_framing(w, &v0, cd)?.is_none() {
                continue;
            }
            let candidate = v0.height() > 0;
            for lam in partitions(m) {
                labels.push(StratumLabel {
                    v0: v0.clone(),
                    lam,
                    residual: (budget - dim) as u64,
                    candidate,
                });
            }
        }
    }
    sort_labels(&mut labels);
    Ok(labels)
}

/// Nonnegative `v` with `sum_i v_i weights_i <= budget`.
fn bounded_vectors(weights: &[i64], budget: i64) -> Vec<Vec<i64>> {
    fn go(weights: &[i64], budget: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let Some((&wt, rest)) = weights.split_first() else {
            out.push(prefix.clone());
            return;
        };
        for x in 0..=budget / wt {
            prefix.push(x);
            go(rest, budget - x * wt, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, budget, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcat::GroupSpec;
    use crate::McKayData;

    fn cartan(spec: GroupSpec) -> CartanData {
        McKayData::compute(spec).unwrap().cartan
    }

    #[test]
    fn floor_of_points_over_order() {
        assert_eq!(fixed_sym_product(5, 2).unwrap(), 2);
        assert_eq!(fixed_sym_product(0, 7).unwrap(), 0);
        assert_eq!(fixed_sym_product(120, 120).unwrap(), 1);
        assert!(fixed_sym_product(3, 1).is_err());
    }

    #[test]
    fn partition_order() {
        assert_eq!(partitions(0), vec![Vec::<u64>::new()]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(partitions(6).len(), 11);
    }

    #[test]
    fn rank_one_small_cases() {
        let cd = cartan(GroupSpec::Cyclic(2));
        let s = enumerate_strata_rank1(4, &cd);
        let lams: Vec<Vec<u64>> = s.iter().map(|l| l.lam.clone()).collect();
        assert_eq!(lams, vec![vec![1, 1], vec![2], vec![1], vec![]]);
        assert_eq!(s.iter().map(|l| l.residual).collect::<Vec<_>>(), vec![0, 0, 2, 4]);
        assert_eq!(enumerate_strata_rank1(0, &cd).len(), 1);
        let one = enumerate_strata_rank1(1, &cd);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].residual, 1);
    }

    #[test]
    fn transported_framing_examples() {
        let cd = cartan(GroupSpec::Cyclic(2));
        let v0 = |v: Vec<i64>| DimVector::new(v).unwrap();
        assert_eq!(transported_framing(&[2, 0], &v0(vec![0, 0]), &cd).unwrap(), Some(vec![2, 0]));
        assert_eq!(transported_framing(&[2, 0], &v0(vec![1, 0]), &cd).unwrap(), Some(vec![0, 2]));
        assert_eq!(transported_framing(&[1, 0], &v0(vec![1, 0]), &cd).unwrap(), None);
        assert!(transported_framing(&[1], &v0(vec![1, 0]), &cd).is_err());
    }

    #[test]
    fn fiber_examples() {
        let cd = cartan(GroupSpec::Cyclic(2));
        let zero = StratumLabel { v0: DimVector::zero(2), lam: vec![], residual: 2, candidate: false };
        let v = DimVector::new(vec![1, 1]).unwrap();
        let f = fiber_decomposition(&v, &[1, 0], &zero, &cd).unwrap();
        assert_eq!(f.lagrangian_v, vec![1, 1]);
        assert_eq!(f.transported_w, Some(vec![1, 0]));
        assert!(!f.empty_flag);

        let one_orbit = StratumLabel { lam: vec![1], residual: 0, ..zero.clone() };
        let f = fiber_decomposition(&v, &[1, 0], &one_orbit, &cd).unwrap();
        assert_eq!(f.lagrangian_v, vec![0, 0]);
        assert_eq!(f.punctual_parts, vec![1]);
        assert!(!f.empty_flag);

        let small = DimVector::new(vec![1, 0]).unwrap();
        assert!(fiber_decomposition(&small, &[1, 0], &one_orbit, &cd).unwrap().empty_flag);

        let bad = StratumLabel { lam: vec![1, 2], ..zero };
        assert!(fiber_decomposition(&v, &[1, 0], &bad, &cd).is_err());
    }

    #[test]
    fn higher_rank_candidates() {
        let cd = cartan(GroupSpec::Cyclic(2));
        let labels = enumerate_strata(2, &[2, 0], &cd).unwrap();
        let has = |v0: Vec<i64>, lam: Vec<u64>| {
            labels.iter().any(|l| l.v0.entries() == v0.as_slice() && l.lam == lam)
        };
        assert!(has(vec![1, 0], vec![]));
        assert!(has(vec![0, 0], vec![1]));
        assert!(has(vec![0, 0], vec![]));
        assert!(labels.iter().all(|l| l.candidate == (l.v0.height() > 0)));
        assert_eq!(enumerate_strata(0, &[2, 0], &cd).unwrap().len(), 1);
    }

    #[test]
    fn rank_one_reduces() {
        for spec in [GroupSpec::Cyclic(2), GroupSpec::Cyclic(3), GroupSpec::BinaryDihedral(2)] {
            let cd = cartan(spec);
            let mut w = vec![0; cd.vertex_count];
            w[cd.trivial_vertex] = 1;
            for n in 0..10 {
                assert_eq!(enumerate_strata(n, &w, &cd).unwrap(), enumerate_strata_rank1(n, &cd));
            }
        }
    }
}
