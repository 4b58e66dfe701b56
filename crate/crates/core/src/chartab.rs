//! Exact character tables by the Burnside-Dixon class-algebra method.
//!
//! The class-multiplication constants are reduced modulo a prime
//! `p = 1 (mod exponent)`. Their simultaneous eigenvectors over `F_p` give the
//! central characters mod `p`, and each value `chi(g)` is lifted to
//! `Q(zeta_e)` by recovering the eigenvalue multiplicities of `rho(g)` from
//! the values on the powers of `g`.

use serde::{Deserialize, Serialize};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactfield::CycNumber;
use crate::groupcat::{FiniteSubgroup, GroupSpec};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub group_spec: GroupSpec,
    pub group_order: usize,
    pub degrees: Vec<usize>,
    /// `values[i][c]` is the value of the `i`th irreducible character on class `c`.
    pub values: Vec<Vec<CycNumber>>,
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<usize>,
    /// Class of `g^-1` for a representative `g` of each class.
    pub inverse_class: Vec<usize>,
    /// Trace of the defining 2x2 matrices on each class.
    pub defining_character: Vec<CycNumber>,
    pub trivial_index: usize,
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    /// `(1/|G|) sum_c |c| chi(c) conj(psi(c))`.
    pub fn inner_product(&self, chi: &[CycNumber], psi: &[CycNumber]) -> Result<CycNumber> {
        class_inner_product(chi, psi, &self.class_sizes, self.group_order)
    }

    /// Pointwise product of two class functions.
    pub fn product(chi: &[CycNumber], psi: &[CycNumber]) -> Vec<CycNumber> {
        chi.iter().zip(psi).map(|(a, b)| a * b).collect()
    }

    /// Both orthogonality relations, `sum d_i^2 = |G|`, degree and trivial-row checks, exactly.
    pub fn verify(&self) -> Result<()> {
        let r = self.class_count();
        let fail = |m: String| Err(Error::Invariant(format!("{}: {m}", self.group_spec)));
        if self.values.len() != r || self.values.iter().any(|row| row.len() != r) {
            return fail("table is not square".into());
        }
        let sum_sq: usize = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != self.group_order {
            return fail(format!("sum of squared degrees {sum_sq} != {}", self.group_order));
        }
        for (i, row) in self.values.iter().enumerate() {
            if row[0] != CycNumber::from_integer(self.degrees[i] as i64) {
                return fail(format!("row {i}: value at identity is not the degree"));
            }
        }
        if self.values[self.trivial_index].iter().any(|x| !x.is_one()) {
            return fail("trivial row is not constant 1".into());
        }
        for i in 0..r {
            for j in 0..r {
                let ip = self.inner_product(&self.values[i], &self.values[j])?;
                let want = if i == j { CycNumber::one() } else { CycNumber::zero() };
                if ip != want {
                    return fail(format!("row orthogonality fails at ({i},{j}): {ip}"));
                }
            }
        }
        for c in 0..r {
            for d in 0..r {
                let col_c: Vec<CycNumber> = (0..r).map(|i| self.values[i][c].clone()).collect();
                let col_d: Vec<CycNumber> = (0..r).map(|i| self.values[i][d].clone()).collect();
                let s = CycNumber::weighted_dot(&col_c, &col_d, &vec![1; r], true);
                let want = if c == d {
                    CycNumber::from_rational(BigRational::new(
                        (self.group_order as i64).into(),
                        (self.class_sizes[c] as i64).into(),
                    ))
                } else {
                    CycNumber::zero()
                };
                if s != want {
                    return fail(format!("column orthogonality fails at ({c},{d}): {s}"));
                }
            }
        }
        Ok(())
    }
}

pub fn class_inner_product(
    chi: &[CycNumber],
    psi: &[CycNumber],
    class_sizes: &[usize],
    order: usize,
) -> Result<CycNumber> {
    if chi.len() != class_sizes.len() || psi.len() != class_sizes.len() {
        return Err(Error::InvalidArgument(format!(
            "class functions of length {} and {} on {} classes",
            chi.len(),
            psi.len(),
            class_sizes.len()
        )));
    }
    let weights: Vec<i64> = class_sizes.iter().map(|&s| s as i64).collect();
    let s = CycNumber::weighted_dot(chi, psi, &weights, true);
    Ok(s.scale(&BigRational::new(1.into(), (order as i64).into())))
}

/// Inner product of class functions of `g`.
pub fn inner_product(chi: &[CycNumber], psi: &[CycNumber], g: &FiniteSubgroup) -> Result<CycNumber> {
    class_inner_product(chi, psi, &g.class_sizes(), g.order())
}

mod modp {
    pub fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    pub fn primitive_root(p: u64) -> u64 {
        let factors = crate::exactfield::factorize(p - 1);
        (2..p)
            .find(|&g| factors.iter().all(|&(q, _)| pow(g, (p - 1) / q, p) != 1))
            .expect("every prime has a primitive root")
    }

    /// Characteristic polynomial (monic, coefficients low to high): reduce to
    /// upper Hessenberg form by similarity, then expand along the subdiagonal.
    pub fn charpoly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
        let n = a.len();
        let mut h = a.to_vec();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else {
                continue;
            };
            if piv != j + 1 {
                h.swap(piv, j + 1);
                for row in h.iter_mut() {
                    row.swap(piv, j + 1);
                }
            }
            let s = inv(h[j + 1][j], p);
            for i in j + 2..n {
                let f = h[i][j] * s % p;
                if f == 0 {
                    continue;
                }
                for k in 0..n {
                    h[i][k] = (h[i][k] + p - f * h[j + 1][k] % p) % p;
                }
                for k in 0..n {
                    h[k][j + 1] = (h[k][j + 1] + f * h[k][i]) % p;
                }
            }
        }
        // polys[m] is the characteristic polynomial of the leading m x m block
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 0..n {
            let mut next = vec![0u64; m + 2];
            for (d, &c) in polys[m].iter().enumerate() {
                next[d + 1] = (next[d + 1] + c) % p;
                next[d] = (next[d] + p - c * h[m][m] % p) % p;
            }
            let mut sub = 1u64;
            for i in (0..m).rev() {
                sub = sub * h[i + 1][i] % p;
                let coef = h[i][m] * sub % p;
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = (next[d] + p - coef * c % p) % p;
                }
            }
            polys.push(next);
        }
        polys.pop().expect("at least the empty block")
    }

    pub fn eval(poly: &[u64], x: u64, p: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
    }

    /// Basis of the nullspace of an `rows x cols` matrix.
    pub fn nullspace(mut a: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
        let rows = a.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, piv);
            let s = inv(a[r][c], p);
            for x in a[r].iter_mut() {
                *x = *x * s % p;
            }
            for i in 0..rows {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; cols];
                v[f] = 1;
                for (ri, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - a[ri][f]) % p;
                }
                v
            })
            .collect()
    }
}

/// Smallest prime `p = 1 (mod exponent)` with `p > 2 sqrt(|G|) |G|`.
pub fn dixon_prime(exponent: usize, order: usize) -> u64 {
    let (e, n) = (exponent as u64, order as u64);
    // p > 2 sqrt(n) n  <=>  p^2 > 4 n^3
    let mut p = e + 1;
    while !(p * p > 4 * n * n * n && modp::is_prime(p)) {
        p += e;
    }
    p
}

/// A subspace of `F_p^r` in reduced row-echelon form.
struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn from_vectors(vectors: Vec<Vec<u64>>, p: u64) -> Self {
        let cols = vectors.first().map_or(0, Vec::len);
        let mut a = vectors;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, piv);
            let s = modp::inv(a[r][c], p);
            for x in a[r].iter_mut() {
                *x = *x * s % p;
            }
            for i in 0..a.len() {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        Subspace { basis: a, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Split every subspace into its eigenspaces for `m` (acting on column vectors).
fn split(spaces: Vec<Subspace>, m: &[Vec<u64>], p: u64) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for s in spaces {
        let d = s.dim();
        if d == 1 {
            out.push(s);
            continue;
        }
        // restricted action: column b of `a` is the coordinate vector of m * basis[b]
        let images: Vec<Vec<u64>> = s
            .basis
            .iter()
            .map(|v| {
                m.iter()
                    .map(|row| row.iter().zip(v).fold(0, |acc, (x, y)| (acc + x * y) % p))
                    .collect()
            })
            .collect();
        let a: Vec<Vec<u64>> = (0..d)
            .map(|i| (0..d).map(|b| images[b][s.pivots[i]]).collect())
            .collect();
        let chi = modp::charpoly(&a, p);
        let mut found = 0;
        for lambda in 0..p {
            if modp::eval(&chi, lambda, p) != 0 {
                continue;
            }
            let shifted: Vec<Vec<u64>> = (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| if i == j { (a[i][j] + p - lambda) % p } else { a[i][j] })
                        .collect()
                })
                .collect();
            let null = modp::nullspace(shifted, d, p);
            let vectors: Vec<Vec<u64>> = null
                .iter()
                .map(|y| {
                    (0..s.basis[0].len())
                        .map(|k| (0..d).fold(0, |acc, b| (acc + y[b] * s.basis[b][k]) % p))
                        .collect()
                })
                .collect();
            found += vectors.len();
            out.push(Subspace::from_vectors(vectors, p));
        }
        if found != d {
            return Err(Error::Invariant(
                "class algebra is not diagonalisable over the chosen prime field".into(),
            ));
        }
    }
    Ok(out)
}

/// Compute the character table of `g`.
pub fn character_table(g: &FiniteSubgroup) -> Result<CharacterTable> {
    let r = g.classes.len();
    let n = g.order();
    let e = g.exponent;
    let p = dixon_prime(e, n);
    let sizes = g.class_sizes();
    let reps = &g.class_reps;

    // class-multiplication constants: M_j[k][l] = #{x in C_j : x^-1 z_l in C_k}
    let mut class_mats = vec![vec![vec![0u64; r]; r]; r];
    for (l, &z) in reps.iter().enumerate() {
        for x in 0..n {
            let y = g.mul(g.inverse_map[x], z);
            class_mats[g.class_of[x]][g.class_of[y]][l] += 1;
        }
    }

    let identity = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![Subspace::from_vectors(identity, p)];
    for m in class_mats.iter().skip(1) {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        spaces = split(spaces, m, p)?;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.dim() != 1) {
        return Err(Error::Invariant(format!(
            "{}: class algebra did not split into {r} lines",
            g.spec
        )));
    }

    let inverse_class: Vec<usize> = reps.iter().map(|&x| g.class_of[g.inverse_map[x]]).collect();
    // class of rep^t for t in 0..e
    let power_class: Vec<Vec<usize>> = reps
        .iter()
        .map(|&x| {
            let mut acc = g.identity_index;
            (0..e)
                .map(|_| {
                    let c = g.class_of[acc];
                    acc = g.mul(acc, x);
                    c
                })
                .collect()
        })
        .collect();
    let root = modp::pow(modp::primitive_root(p), (p - 1) / e as u64, p);
    let root_pows: Vec<u64> = (0..e as u64).map(|j| modp::pow(root, j, p)).collect();
    let n_mod = n as u64 % p;

    let mut rows: Vec<(usize, Vec<CycNumber>)> = Vec::with_capacity(r);
    for s in &spaces {
        let v = &s.basis[0];
        if v[0] == 0 {
            return Err(Error::Invariant("central character vanishes on the identity".into()));
        }
        let scale = modp::inv(v[0], p);
        let omega: Vec<u64> = v.iter().map(|x| x * scale % p).collect();
        // sum_l omega_l omega_{l*} / |C_l| = |G| / d^2
        let s_sum = (0..r).fold(0, |acc, l| {
            (acc + omega[l] * omega[inverse_class[l]] % p * modp::inv(sizes[l] as u64, p)) % p
        });
        let d_sq = n_mod * modp::inv(s_sum, p) % p;
        let degree = (1..=n)
            .take_while(|d| d * d <= n)
            .find(|&d| (d * d) as u64 % p == d_sq)
            .ok_or_else(|| Error::Invariant("no integral degree for a central character".into()))?;
        let chi_mod: Vec<u64> = (0..r)
            .map(|l| degree as u64 * omega[l] % p * modp::inv(sizes[l] as u64, p) % p)
            .collect();
        let mut row = Vec::with_capacity(r);
        for l in 0..r {
            // chi(g) lives in Q(zeta_o) for o the order of g
            let o = g.element_orders[reps[l]];
            let step = e / o;
            let inv_o = modp::inv(o as u64, p);
            let mut coeffs = vec![BigRational::from_integer(0.into()); o];
            for (k, slot) in coeffs.iter_mut().enumerate() {
                let mut acc = 0;
                for t in 0..o {
                    let twist = root_pows[step * ((o - (k * t) % o) % o)];
                    acc = (acc + chi_mod[power_class[l][t]] * twist) % p;
                }
                let mult = acc * inv_o % p;
                if mult > degree as u64 {
                    return Err(Error::Invariant(format!(
                        "eigenvalue multiplicity {mult} exceeds degree {degree}"
                    )));
                }
                *slot = BigRational::from_integer((mult as i64).into());
            }
            row.push(CycNumber::from_dense(o as u64, coeffs)?);
        }
        rows.push((degree, row));
    }

    let is_trivial = |row: &[CycNumber]| row.iter().all(CycNumber::is_one);
    rows.sort_by(|(da, ra), (db, rb)| {
        is_trivial(rb)
            .cmp(&is_trivial(ra))
            .then(da.cmp(db))
            .then_with(|| ra.cmp(rb))
    });

    let table = CharacterTable {
        group_spec: g.spec,
        group_order: n,
        degrees: rows.iter().map(|(d, _)| *d).collect(),
        values: rows.into_iter().map(|(_, row)| row).collect(),
        class_sizes: sizes,
        class_orders: reps.iter().map(|&x| g.element_orders[x]).collect(),
        inverse_class,
        defining_character: reps.iter().map(|&x| g.elements[x].trace()).collect(),
        trivial_index: 0,
    };
    table.verify()?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcat::build_group;

    fn table(spec: GroupSpec) -> CharacterTable {
        character_table(&build_group(spec).unwrap()).unwrap()
    }

    #[test]
    fn cyclic_two() {
        let t = table(GroupSpec::Cyclic(2));
        assert_eq!(t.degrees, vec![1, 1]);
        let int = CycNumber::from_integer;
        assert_eq!(t.values, vec![vec![int(1), int(1)], vec![int(1), int(-1)]]);
    }

    #[test]
    fn quaternion_degrees() {
        let t = table(GroupSpec::BinaryDihedral(2));
        assert_eq!(t.degrees, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn inner_products() {
        let t = table(GroupSpec::Cyclic(3));
        for row in &t.values {
            assert!(t.inner_product(row, row).unwrap().is_one());
        }
        let q = &t.defining_character;
        assert!(t.inner_product(&t.values[t.trivial_index], q).unwrap().is_zero());
        let q_times_trivial = CharacterTable::product(q, &t.values[t.trivial_index]);
        assert_eq!(
            t.inner_product(&q_times_trivial, q).unwrap(),
            CycNumber::from_integer(2)
        );
        assert!(t.inner_product(&t.values[0], &t.values[0][..2]).is_err());
    }

    #[test]
    fn defining_character_is_real() {
        for spec in [GroupSpec::Cyclic(5), GroupSpec::BinaryDihedral(3), GroupSpec::BinaryTetrahedral] {
            let t = table(spec);
            for x in &t.defining_character {
                assert_eq!(x.conj(), *x);
            }
        }
    }

    #[test]
    fn dixon_prime_choice() {
        // 2 * sqrt(8) * 8 = 45.25..., smallest prime = 1 mod 8 above it is 73
        assert_eq!(dixon_prime(8, 8), 73);
        let p = dixon_prime(60, 120);
        assert_eq!(p % 60, 1);
        assert!(p * p > 4 * 120 * 120 * 120);
    }

    #[test]
    fn charpoly_small() {
        // [[1,2],[3,4]] -> x^2 - 5x - 2
        let p = 101;
        let c = modp::charpoly(&[vec![1, 2], vec![3, 4]], p);
        assert_eq!(c, vec![p - 2, p - 5, 1]);
    }

    fn det_mod(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
        let n = a.len();
        let mut det = 1;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| a[i][c] != 0) else {
                return 0;
            };
            if piv != c {
                a.swap(piv, c);
                det = (p - det) % p;
            }
            det = det * a[c][c] % p;
            let s = modp::inv(a[c][c], p);
            for i in c + 1..n {
                let f = a[i][c] * s % p;
                for j in c..n {
                    a[i][j] = (a[i][j] + p - f * a[c][j] % p) % p;
                }
            }
        }
        det
    }

    #[test]
    fn charpoly_matches_determinant() {
        use rand::{Rng, SeedableRng};
        let p = 241;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for n in 1..8 {
            // sparse entries exercise the pivot search
            let a: Vec<Vec<u64>> = (0..n)
                .map(|_| (0..n).map(|_| if rng.gen_bool(0.4) { rng.gen_range(0..p) } else { 0 }).collect())
                .collect();
            let c = modp::charpoly(&a, p);
            for lambda in [0, 1, 5, 100] {
                let shifted: Vec<Vec<u64>> = (0..n)
                    .map(|i| (0..n).map(|j| ((if i == j { lambda } else { 0 }) + p - a[i][j]) % p).collect())
                    .collect();
                assert_eq!(modp::eval(&c, lambda, p), det_mod(shifted, p), "n = {n}, lambda = {lambda}");
            }
        }
    }
}
