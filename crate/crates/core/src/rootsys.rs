//! Finite root systems, weights of the affine algebra and the fixed-point
//! dichotomy for `M(v)` with `v_0 = 1`.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mckay::{finite_cartan, CartanData, FiniteCartan};

/// An `I`-indexed vector of nonnegative multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if let Some(x) = entries.iter().find(|&&x| x < 0) {
            return Err(Error::InvalidArgument(format!(
                "dimension vector entry {x} is negative"
            )));
        }
        Ok(DimVector(entries))
    }

    pub fn zero(len: usize) -> Self {
        DimVector(vec![0; len])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Tuple form used as a JSON key, e.g. `(1,0,2)`.
    pub fn tuple_string(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        format!("({})", parts.join(","))
    }
}

impl TryFrom<Vec<i64>> for DimVector {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        DimVector::new(v)
    }
}

impl From<DimVector> for Vec<i64> {
    fn from(v: DimVector) -> Self {
        v.0
    }
}

/// `sum_i framing_i Lambda_i - sum_i drop_i alpha_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWeight {
    pub framing: Vec<i64>,
    pub drop: Vec<i64>,
}

impl AffineWeight {
    pub fn new(framing: Vec<i64>, drop: Vec<i64>) -> Result<Self> {
        if framing.len() != drop.len() {
            return Err(Error::InvalidArgument(format!(
                "framing has {} entries, drop has {}",
                framing.len(),
                drop.len()
            )));
        }
        if framing.iter().any(|&w| w < 0) {
            return Err(Error::InvalidArgument("framing must be nonnegative".into()));
        }
        Ok(AffineWeight { framing, drop })
    }

    /// `<mu, alpha_i^vee> = w_i - (C v)_i`.
    pub fn coroot_pairing(&self, i: usize, cd: &CartanData) -> i64 {
        self.framing[i] - cd.cartan[i].iter().zip(&self.drop).map(|(c, v)| c * v).sum::<i64>()
    }
}

/// Positive roots of a finite ADE system in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystem {
    pub cartan_finite: Vec<Vec<i64>>,
    /// Coordinate `k` is irrep `vertices[k]` of the McKay quiver.
    pub vertices: Vec<usize>,
    /// Sorted by height, then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    pub rank: usize,
}

impl RootSystem {
    pub fn root_count(&self) -> usize {
        2 * self.positive_roots.len()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.positive_roots.iter().any(|r| r == v || *r == neg)
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots.last().expect("root systems are nonempty")
    }

    /// Finite part of an `I`-indexed vector, in this system's coordinates.
    pub fn restrict(&self, v: &[i64]) -> Vec<i64> {
        self.vertices.iter().map(|&i| v[i]).collect()
    }
}

fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

fn pair(cartan: &[Vec<i64>], beta: &[i64], i: usize) -> i64 {
    // <beta, alpha_i^vee> = (C beta)_i for symmetric C
    cartan[i].iter().zip(beta).map(|(c, b)| c * b).sum()
}

/// Positive roots by alpha-string closure from the simple roots.
pub fn string_closure_roots(cartan: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let rank = cartan.len();
    let bound = 10 * rank * rank;
    let simple = |i: usize| (0..rank).map(|k| i64::from(k == i)).collect::<Vec<_>>();
    let mut roots: HashSet<Vec<i64>> = (0..rank).map(simple).collect();
    let mut queue: VecDeque<Vec<i64>> = (0..rank).map(simple).collect();
    let mut iterations = 0;
    while let Some(beta) = queue.pop_front() {
        iterations += 1;
        if iterations > bound {
            return Err(Error::Invariant(format!(
                "root generation exceeded {bound} iterations; invalid Cartan matrix"
            )));
        }
        for i in 0..rank {
            if beta == simple(i) {
                continue;
            }
            // p = how far the string extends downwards
            let mut p = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if !roots.contains(&down) {
                    break;
                }
                p += 1;
            }
            let q = p - pair(cartan, &beta, i);
            if q > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if roots.insert(up.clone()) {
                    queue.push_back(up);
                }
            }
        }
    }
    let mut out: Vec<_> = roots.into_iter().collect();
    out.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Positive roots as the positive half of the Weyl orbit of the simple roots.
pub fn reflection_orbit_roots(cartan: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let rank = cartan.len();
    let bound = 10 * rank * rank;
    let simple = |i: usize| (0..rank).map(|k| i64::from(k == i)).collect::<Vec<_>>();
    let mut orbit: HashSet<Vec<i64>> = (0..rank).map(simple).collect();
    let mut queue: VecDeque<Vec<i64>> = (0..rank).map(simple).collect();
    let mut iterations = 0;
    while let Some(beta) = queue.pop_front() {
        iterations += 1;
        if iterations > bound {
            return Err(Error::Invariant(format!(
                "Weyl orbit exceeded {bound} iterations; invalid Cartan matrix"
            )));
        }
        for i in 0..rank {
            let mut image = beta.clone();
            image[i] -= pair(cartan, &beta, i);
            if orbit.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    let mut out: Vec<_> = orbit.into_iter().filter(|r| r.iter().all(|&x| x >= 0)).collect();
    out.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Generate the positive roots, cross-checked against the reflection orbit.
pub fn positive_roots(fc: &FiniteCartan) -> Result<RootSystem> {
    let by_strings = string_closure_roots(&fc.matrix)?;
    let by_orbit = reflection_orbit_roots(&fc.matrix)?;
    if by_strings != by_orbit {
        return Err(Error::Invariant(format!(
            "root generation methods disagree: {} vs {} positive roots",
            by_strings.len(),
            by_orbit.len()
        )));
    }
    Ok(RootSystem {
        cartan_finite: fc.matrix.clone(),
        vertices: fc.vertices.clone(),
        positive_roots: by_strings,
        rank: fc.matrix.len(),
    })
}

/// Root system attached to the McKay data.
pub fn root_system(cd: &CartanData) -> Result<RootSystem> {
    positive_roots(&finite_cartan(cd)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MvStatus {
    Empty,
    SinglePoint,
    MinimalResolution,
}

/// Geometry of `M(v)` for `v_0 = 1`.
///
/// `v = delta` gives the minimal resolution. Otherwise `v` is sent to the
/// finite weight lattice by killing `delta` (so `alpha_0 -> -theta`); this is
/// the finite part of `v - delta`, and `M(v)` is a point exactly when that
/// vector is a root.
pub fn m_v_status(v: &DimVector, cd: &CartanData, roots: &RootSystem) -> Result<MvStatus> {
    if v.len() != cd.vertex_count {
        return Err(Error::InvalidArgument(format!(
            "dimension vector has {} entries, quiver has {} vertices",
            v.len(),
            cd.vertex_count
        )));
    }
    let v0 = v.entries()[cd.trivial_vertex];
    if v0 != 1 {
        return Err(Error::OutOfScope(format!("v_0 = {v0}, only v_0 = 1 is characterised")));
    }
    if v.entries() == cd.delta.as_slice() {
        return Ok(MvStatus::MinimalResolution);
    }
    let shifted: Vec<i64> = v.entries().iter().zip(&cd.delta).map(|(a, d)| a - d).collect();
    if roots.is_root(&roots.restrict(&shifted)) {
        Ok(MvStatus::SinglePoint)
    } else {
        Ok(MvStatus::Empty)
    }
}

/// Dimension of the finite simple Lie algebra, counted as one dimension per
/// point-like `M(v)` with `v_0 = 1` plus `rank` for the minimal resolution.
pub fn reconstruct_g_dim(cd: &CartanData) -> Result<usize> {
    let roots = root_system(cd)?;
    // every v with v_0 = 1 and a nonempty M(v) lies in delta + (finite roots or 0)
    let mut candidates: HashSet<Vec<i64>> = HashSet::new();
    for beta in &roots.positive_roots {
        for sign in [1, -1] {
            let mut v = cd.delta.clone();
            for (k, &vertex) in roots.vertices.iter().enumerate() {
                v[vertex] += sign * beta[k];
            }
            candidates.insert(v);
        }
    }
    let mut points = 0;
    for v in candidates {
        let Ok(dv) = DimVector::new(v) else { continue };
        if m_v_status(&dv, cd, &roots)? == MvStatus::SinglePoint {
            points += 1;
        }
    }
    Ok(points + cd.rank())
}

/// `mu <= nu` in the dominance order: `nu - mu` is a nonnegative sum of simple roots.
pub fn dominance_leq(mu: &AffineWeight, nu: &AffineWeight) -> Result<bool> {
    if mu.framing != nu.framing {
        return Err(Error::FramingMismatch(mu.framing.clone(), nu.framing.clone()));
    }
    Ok(mu.drop.iter().zip(&nu.drop).all(|(a, b)| a >= b))
}

/// Simple reflection `s_i(mu) = mu - <mu, alpha_i^vee> alpha_i`.
pub fn weyl_reflect(mu: &AffineWeight, i: usize, cd: &CartanData) -> Result<AffineWeight> {
    if i >= cd.vertex_count || mu.drop.len() != cd.vertex_count {
        return Err(Error::InvalidArgument(format!("vertex {i} out of range")));
    }
    let mut out = mu.clone();
    out.drop[i] += mu.coroot_pairing(i, cd);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcat::GroupSpec;
    use crate::McKayData;

    fn a_n(n: usize) -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn a1_and_a2() {
        assert_eq!(string_closure_roots(&a_n(1)).unwrap(), vec![vec![1]]);
        assert_eq!(
            string_closure_roots(&a_n(2)).unwrap(),
            vec![vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn non_cartan_input_hits_the_bound() {
        // affine A~1 is not of finite type; both generators run away
        let affine = vec![vec![2, -2], vec![-2, 2]];
        assert!(string_closure_roots(&affine).is_err());
        assert!(reflection_orbit_roots(&affine).is_err());
    }

    #[test]
    fn cyclic_two_statuses() {
        let data = McKayData::compute(GroupSpec::Cyclic(2)).unwrap();
        let roots = root_system(&data.cartan).unwrap();
        let status = |v: Vec<i64>| m_v_status(&DimVector::new(v).unwrap(), &data.cartan, &roots);
        // delta = (1,1)
        assert_eq!(status(vec![1, 1]).unwrap(), MvStatus::MinimalResolution);
        // the ideal (x, y)^2 is the only point with quotient rho_0 + 2 rho_1
        assert_eq!(status(vec![1, 2]).unwrap(), MvStatus::SinglePoint);
        // the maximal ideal of the origin
        assert_eq!(status(vec![1, 0]).unwrap(), MvStatus::SinglePoint);
        assert_eq!(status(vec![1, 3]).unwrap(), MvStatus::Empty);
        assert!(matches!(status(vec![2, 2]), Err(Error::OutOfScope(_))));
        assert!(matches!(status(vec![0, 1]), Err(Error::OutOfScope(_))));
    }

    #[test]
    fn dominance_examples() {
        let w = vec![1, 0, 0];
        let top = AffineWeight::new(w.clone(), vec![0, 0, 0]).unwrap();
        let a0 = AffineWeight::new(w.clone(), vec![1, 0, 0]).unwrap();
        let a1 = AffineWeight::new(w.clone(), vec![0, 1, 0]).unwrap();
        let a2 = AffineWeight::new(w.clone(), vec![0, 0, 1]).unwrap();
        assert!(dominance_leq(&top, &top).unwrap());
        assert!(dominance_leq(&a0, &top).unwrap());
        assert!(!dominance_leq(&top, &a0).unwrap());
        assert!(!dominance_leq(&a1, &a2).unwrap());
        assert!(!dominance_leq(&a2, &a1).unwrap());
        let other = AffineWeight::new(vec![0, 1, 0], vec![0, 0, 0]).unwrap();
        assert!(matches!(dominance_leq(&top, &other), Err(Error::FramingMismatch(..))));
    }

    #[test]
    fn reflections_of_fundamental_weights() {
        let data = McKayData::compute(GroupSpec::Cyclic(3)).unwrap();
        let cd = &data.cartan;
        for i in 0..3 {
            let mut w = vec![0; 3];
            w[i] = 1;
            let lam = AffineWeight::new(w.clone(), vec![0; 3]).unwrap();
            let mut drop = vec![0; 3];
            drop[i] = 1;
            assert_eq!(weyl_reflect(&lam, i, cd).unwrap().drop, drop);
            for j in (0..3).filter(|&j| j != i) {
                assert_eq!(weyl_reflect(&lam, j, cd).unwrap(), lam);
            }
        }
        assert!(weyl_reflect(&AffineWeight::new(vec![1, 0, 0], vec![0; 3]).unwrap(), 3, cd).is_err());
    }

    #[test]
    fn dim_vector_rejects_negatives() {
        assert!(DimVector::new(vec![1, -1]).is_err());
        assert!(serde_json::from_str::<DimVector>("[1,-1]").is_err());
        assert_eq!(DimVector::new(vec![1, 0, 2]).unwrap().tuple_string(), "(1,0,2)");
    }
}
