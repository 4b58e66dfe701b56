//! Weight multiplicities of the integrable highest-weight module `L(w)` of the
//! untwisted affine algebra attached to a McKay quiver.
//!
//! Weights are written `w - v` with `v` a nonnegative combination of simple
//! roots, and everything is truncated to the window `height(v) <= depth`.
//! Two independent routes are provided:
//!
//! * [`freudenthal`]: the Freudenthal recursion
//!   `(2 (w + rho | v) - (v | v)) m(v) = 2 sum_{beta > 0} mult(beta) sum_{k >= 1} (w - v + k beta | beta) m(v - k beta)`,
//! * [`weylkac_oracle`]: the alternating sum over the affine Weyl group
//!   divided by the denominator product, expanded as a truncated series.
//!
//! The symmetric form is `(Lambda_i | alpha_j) = delta_ij`, `(alpha_i | alpha_j) = C_ij`.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactfield::CycNumber;
use crate::mckay::CartanData;
use crate::rootsys::{root_system, AffineWeight, DimVector};

/// Multiplicities `m(v)` of the weights `w - v`, nonzero entries only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub framing: Vec<i64>,
    pub depth: usize,
    pub entries: BTreeMap<DimVector, u64>,
}

impl MultiplicityTable {
    pub fn get(&self, v: &[i64]) -> u64 {
        DimVector::new(v.to_vec())
            .ok()
            .and_then(|dv| self.entries.get(&dv).copied())
            .unwrap_or(0)
    }

    /// Entries ordered by height, then lexicographically.
    pub fn sorted_entries(&self) -> Vec<(&DimVector, u64)> {
        let mut out: Vec<_> = self.entries.iter().map(|(k, &m)| (k, m)).collect();
        out.sort_by(|a, b| a.0.height().cmp(&b.0.height()).then_with(|| a.0.cmp(b.0)));
        out
    }
}

impl Serialize for MultiplicityTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self.sorted_entries();
        let mut map = s.serialize_map(Some(entries.len()))?;
        for (v, m) in entries {
            map.serialize_entry(&v.tuple_string(), &m)?;
        }
        map.end()
    }
}

/// A positive root of the affine algebra in `I`-indexed simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineRoot {
    pub coords: Vec<i64>,
    pub multiplicity: u64,
    pub imaginary: bool,
}

/// Positive affine roots of height at most `depth`: `alpha + n delta` for
/// finite roots `alpha` (with `alpha > 0` when `n = 0`), and `n delta` with
/// multiplicity `rank`.
pub fn affine_positive_roots(cd: &CartanData, depth: usize) -> Result<Vec<AffineRoot>> {
    let roots = root_system(cd)?;
    let depth = depth as i64;
    let delta_height: i64 = cd.delta.iter().sum();
    let embed = |beta: &[i64], sign: i64, n: i64| -> Vec<i64> {
        let mut v: Vec<i64> = cd.delta.iter().map(|d| n * d).collect();
        for (&vertex, &b) in roots.vertices.iter().zip(beta) {
            v[vertex] += sign * b;
        }
        v
    };
    let mut out = Vec::new();
    let mut n = 0;
    while n * delta_height - roots.highest_root().iter().sum::<i64>() <= depth {
        for beta in &roots.positive_roots {
            for sign in [1, -1] {
                if n == 0 && sign < 0 {
                    continue;
                }
                let coords = embed(beta, sign, n);
                if coords.iter().sum::<i64>() <= depth {
                    out.push(AffineRoot { coords, multiplicity: 1, imaginary: false });
                }
            }
        }
        if n > 0 && n * delta_height <= depth {
            out.push(AffineRoot {
                coords: embed(&[], 0, n),
                multiplicity: cd.rank() as u64,
                imaginary: true,
            });
        }
        n += 1;
    }
    out.sort_by(|a, b| {
        let (ha, hb) = (a.coords.iter().sum::<i64>(), b.coords.iter().sum::<i64>());
        ha.cmp(&hb).then_with(|| a.coords.cmp(&b.coords))
    });
    Ok(out)
}

/// All nonnegative vectors of length `len` and height at most `depth`, by height then lexicographically.
pub(crate) fn window(len: usize, depth: usize) -> Vec<Vec<i64>> {
    fn fill(prefix: &mut Vec<i64>, len: usize, remaining: i64, out: &mut Vec<Vec<i64>>) {
        if prefix.len() + 1 == len {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for x in 0..=remaining {
            prefix.push(x);
            fill(prefix, len, remaining - x, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for h in 0..=depth as i64 {
        let mut level = Vec::new();
        fill(&mut Vec::with_capacity(len), len, h, &mut level);
        level.sort();
        out.extend(level);
    }
    out
}

fn check_inputs(w: &[i64], cd: &CartanData) -> Result<()> {
    if w.len() != cd.vertex_count {
        return Err(Error::InvalidArgument(format!(
            "highest weight has {} entries, quiver has {} vertices",
            w.len(),
            cd.vertex_count
        )));
    }
    if w.iter().any(|&x| x < 0) {
        return Err(Error::InvalidArgument("highest weight must be dominant".into()));
    }
    if w.iter().all(|&x| x == 0) {
        return Err(Error::InvalidArgument("highest weight must be nonzero".into()));
    }
    Ok(())
}

fn sub(a: &[i64], b: &[i64], k: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - k * y).collect()
}

fn to_table(w: &[i64], depth: usize, dense: &HashMap<Vec<i64>, i64>) -> Result<MultiplicityTable> {
    let mut entries = BTreeMap::new();
    for (v, &m) in dense {
        if m < 0 {
            return Err(Error::Invariant(format!("negative multiplicity {m} at {v:?}")));
        }
        if m > 0 {
            entries.insert(DimVector::new(v.clone())?, m as u64);
        }
    }
    Ok(MultiplicityTable { framing: w.to_vec(), depth, entries })
}

/// Weight multiplicities by the Freudenthal recursion, ordered by height.
pub fn freudenthal(w: &[i64], cd: &CartanData, depth: usize) -> Result<MultiplicityTable> {
    check_inputs(w, cd)?;
    let roots = affine_positive_roots(cd, depth)?;
    let overflow = || Error::Invariant("multiplicity overflow".into());
    let n = cd.vertex_count;
    let mut mult: HashMap<Vec<i64>, i64> = HashMap::new();
    mult.insert(vec![0; n], 1);
    // every nonzero weight v has some v - alpha_i among the weights
    let mut layer = vec![vec![0i64; n]];
    for _ in 0..depth {
        let mut candidates: Vec<Vec<i64>> = layer
            .iter()
            .flat_map(|u| {
                (0..n).map(move |i| {
                    let mut v = u.clone();
                    v[i] += 1;
                    v
                })
            })
            .collect();
        candidates.sort();
        candidates.dedup();
        layer.clear();
        for v in candidates {
            let cv = cd.apply_cartan(&v);
            let vv: i64 = v.iter().zip(&cv).map(|(a, b)| a * b).sum();
            let coef = 2 * v.iter().zip(w).map(|(vi, wi)| (wi + 1) * vi).sum::<i64>() - vv;

            let mut rhs: i64 = 0;
            let height: i64 = v.iter().sum();
            for root in &roots {
                if root.coords.iter().sum::<i64>() > height {
                    break;
                }
                let beta = &root.coords;
                let w_beta: i64 = w.iter().zip(beta).map(|(a, b)| a * b).sum();
                for k in 1.. {
                    let lower = sub(&v, beta, k);
                    if lower.iter().any(|&x| x < 0) {
                        break;
                    }
                    let m = mult.get(&lower).copied().unwrap_or(0);
                    if m == 0 {
                        continue;
                    }
                    // (w - lower | beta)
                    let pairing = w_beta - cd.pairing(&lower, beta);
                    let term = (root.multiplicity as i64)
                        .checked_mul(pairing)
                        .and_then(|x| x.checked_mul(m))
                        .ok_or_else(overflow)?;
                    rhs = rhs.checked_add(term).ok_or_else(overflow)?;
                }
            }
            let rhs = rhs.checked_mul(2).ok_or_else(overflow)?;
            let m = match (coef, rhs) {
                (0, 0) => 0,
                (0, _) => {
                    return Err(Error::Invariant(format!(
                        "zero Freudenthal denominator at v = {v:?} with nonzero right side"
                    )))
                }
                _ if rhs % coef != 0 => {
                    return Err(Error::Invariant(format!(
                        "non-integral multiplicity {rhs}/{coef} at v = {v:?}"
                    )))
                }
                _ => rhs / coef,
            };
            if m > 0 {
                mult.insert(v.clone(), m);
                layer.push(v);
            }
        }
    }
    to_table(w, depth, &mult)
}

/// Numerator support: `(u, sign)` with `w(Lambda + rho) = Lambda + rho - u`
/// for affine Weyl group elements whose shift has height at most `depth`.
pub fn weyl_numerator(w: &[i64], cd: &CartanData, depth: usize) -> Vec<(Vec<i64>, i64)> {
    let n = cd.vertex_count;
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out = vec![(vec![0i64; n], 1i64)];
    seen.insert(vec![0; n]);
    let mut frontier = vec![(vec![0i64; n], 1i64)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (u, sign) in &frontier {
            let cu = cd.apply_cartan(u);
            for i in 0..n {
                // <Lambda + rho - u, alpha_i^vee>
                let pairing = w[i] + 1 - cu[i];
                if pairing <= 0 {
                    continue;
                }
                let mut image = u.clone();
                image[i] += pairing;
                if image.iter().sum::<i64>() > depth as i64 || !seen.insert(image.clone()) {
                    continue;
                }
                out.push((image.clone(), -sign));
                next.push((image, -sign));
            }
        }
        frontier = next;
    }
    out
}

/// Weight multiplicities from the Weyl-Kac character formula as a truncated series.
pub fn weylkac_oracle(w: &[i64], cd: &CartanData, depth: usize) -> Result<MultiplicityTable> {
    check_inputs(w, cd)?;
    let cells = window(cd.vertex_count, depth);
    // Kostant partition function: product of (1 - e^-beta)^-mult over positive roots
    let mut partitions: HashMap<Vec<i64>, i64> = cells.iter().map(|v| (v.clone(), 0)).collect();
    partitions.insert(vec![0; cd.vertex_count], 1);
    for root in affine_positive_roots(cd, depth)? {
        for _ in 0..root.multiplicity {
            for v in &cells {
                let lower = sub(v, &root.coords, 1);
                if lower.iter().any(|&x| x < 0) {
                    continue;
                }
                let add = partitions[&lower];
                let slot = partitions.get_mut(v).expect("cell in window");
                *slot = slot
                    .checked_add(add)
                    .ok_or_else(|| Error::Invariant("partition function overflow".into()))?;
            }
        }
    }
    let numerator = weyl_numerator(w, cd, depth);
    let mut mult: HashMap<Vec<i64>, i64> = HashMap::new();
    for v in &cells {
        let mut m = 0i64;
        for (u, sign) in &numerator {
            let rest = sub(v, u, 1);
            if rest.iter().all(|&x| x >= 0) {
                m += sign * partitions[&rest];
            }
        }
        mult.insert(v.clone(), m);
    }
    to_table(w, depth, &mult)
}

/// The weight `w - v` carried by the top homology of `Lambda(v, w)`.
pub fn weight_of_lagrangian(v: &DimVector, w: &[i64]) -> Result<AffineWeight> {
    AffineWeight::new(w.to_vec(), v.entries().to_vec())
}

/// Per-vertex eigenvalue multisets and their normalised characteristic polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DrinfeldData {
    pub eigenvalues: Vec<Vec<CycNumber>>,
    /// Coefficients of `P_i(u)`, constant term first.
    pub polynomials: Vec<Vec<CycNumber>>,
}

impl DrinfeldData {
    pub fn framing(&self) -> Vec<i64> {
        self.eigenvalues.iter().map(|s| s.len() as i64).collect()
    }
}

/// `P_i(u) = prod_{a in s_i} (1 - a u)`.
pub fn drinfeld_polynomials(s: &[Vec<CycNumber>]) -> Result<DrinfeldData> {
    let mut polynomials = Vec::with_capacity(s.len());
    for (i, eigs) in s.iter().enumerate() {
        if eigs.iter().any(CycNumber::is_zero) {
            return Err(Error::InvalidArgument(format!(
                "vertex {i}: zero eigenvalue is not invertible"
            )));
        }
        let mut poly = vec![CycNumber::one()];
        for a in eigs {
            let mut next = vec![CycNumber::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k] = &next[k] + c;
                next[k + 1] = &next[k + 1] - &(c * a);
            }
            poly = next;
        }
        polynomials.push(poly);
    }
    Ok(DrinfeldData { eigenvalues: s.to_vec(), polynomials })
}

/// As [`drinfeld_polynomials`], additionally checking `|s_i| = w_i`.
pub fn drinfeld_for_framing(w: &[i64], s: &[Vec<CycNumber>]) -> Result<DrinfeldData> {
    if w.len() != s.len() || w.iter().zip(s).any(|(&wi, si)| wi != si.len() as i64) {
        return Err(Error::InvalidArgument(format!(
            "eigenvalue multisets do not have sizes {w:?}"
        )));
    }
    drinfeld_polynomials(s)
}
