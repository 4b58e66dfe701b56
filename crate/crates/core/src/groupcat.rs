//! The finite subgroups of `SL2(C)`, enumerated exactly from generator matrices.
//!
//! Generators are written through the quaternion embedding
//! `a + b i + c j + d k -> [[a + b i, c + d i], [-c + d i, a - b i]]`:
//!
//! * `Cyclic(n)`: `diag(zeta_n, zeta_n^-1)`.
//! * `BinaryDihedral(m)`: `diag(zeta_2m, zeta_2m^-1)` and `j = [[0, 1], [-1, 0]]`.
//! * `BinaryTetrahedral`: `i`, `j` and `(-1 + i + j + k) / 2`, which has order 3.
//! * `BinaryOctahedral`: the tetrahedral generators plus `(1 + i) / sqrt 2 = diag(zeta_8, zeta_8^-1)`.
//! * `BinaryIcosahedral`: the tetrahedral generators plus the icosian
//!   `(tau + tau^-1 i + j) / 2`, `tau = (1 + sqrt 5) / 2`, `sqrt 5 = zeta_5 - zeta_5^2 - zeta_5^3 + zeta_5^4`.
//!
//! Every family is closed under multiplication by brute force, so a wrong
//! generator shows up as a wrong order.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::CycNumber;

/// Closure bound; hitting it means the generators do not span a catalog group.
pub const CLOSURE_BOUND: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    Cyclic(u32),
    BinaryDihedral(u32),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl GroupSpec {
    pub fn order(&self) -> usize {
        match *self {
            GroupSpec::Cyclic(n) => n as usize,
            GroupSpec::BinaryDihedral(m) => 4 * m as usize,
            GroupSpec::BinaryTetrahedral => 24,
            GroupSpec::BinaryOctahedral => 48,
            GroupSpec::BinaryIcosahedral => 120,
        }
    }

    /// Number of conjugacy classes, which is also the vertex count of the
    /// affine Dynkin diagram.
    pub fn class_count(&self) -> usize {
        match *self {
            GroupSpec::Cyclic(n) => n as usize,
            GroupSpec::BinaryDihedral(m) => m as usize + 3,
            GroupSpec::BinaryTetrahedral => 7,
            GroupSpec::BinaryOctahedral => 8,
            GroupSpec::BinaryIcosahedral => 9,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupSpec::Cyclic(n) if n < 2 => Err(Error::InvalidArgument(format!(
                "cyclic:{n}: order must be at least 2"
            ))),
            GroupSpec::BinaryDihedral(m) if m < 2 => Err(Error::InvalidArgument(format!(
                "binary-dihedral:{m}: parameter must be at least 2"
            ))),
            _ => Ok(()),
        }
    }

    /// Every catalog spec up to the given group order.
    pub fn catalog_up_to(max_order: usize) -> Vec<GroupSpec> {
        let mut out: Vec<GroupSpec> = (2..=max_order as u32).map(GroupSpec::Cyclic).collect();
        out.extend((2..=(max_order / 4) as u32).map(GroupSpec::BinaryDihedral));
        out.extend(
            [
                GroupSpec::BinaryTetrahedral,
                GroupSpec::BinaryOctahedral,
                GroupSpec::BinaryIcosahedral,
            ]
            .into_iter()
            .filter(|s| s.order() <= max_order),
        );
        out
    }

    fn generators(&self) -> Vec<GroupElement> {
        let z = |n: u64, k: i64| CycNumber::root_of_unity(n, k).expect("n > 0");
        let int = CycNumber::from_integer;
        let half = BigRational::new(1.into(), 2.into());
        let diag = |a: CycNumber, b: CycNumber| GroupElement::new([[a, int(0)], [int(0), b]]);
        let quat_j = GroupElement::new([[int(0), int(1)], [int(-1), int(0)]]);
        let quat_i = diag(z(4, 1), z(4, -1));
        let omega = quaternion(&int(-1), &int(1), &int(1), &int(1), &half);
        match *self {
            GroupSpec::Cyclic(n) => vec![diag(z(n as u64, 1), z(n as u64, -1))],
            GroupSpec::BinaryDihedral(m) => {
                vec![diag(z(2 * m as u64, 1), z(2 * m as u64, -1)), quat_j]
            }
            GroupSpec::BinaryTetrahedral => vec![quat_i, quat_j, omega],
            GroupSpec::BinaryOctahedral => vec![quat_i, quat_j, omega, diag(z(8, 1), z(8, -1))],
            GroupSpec::BinaryIcosahedral => {
                let sqrt5 = &(&z(5, 1) - &z(5, 2)) + &(&z(5, 4) - &z(5, 3));
                let tau = (&int(1) + &sqrt5).scale(&half);
                let tau_inv = &tau - &int(1);
                let icosian = quaternion(&tau, &tau_inv, &int(1), &int(0), &half);
                vec![quat_i, quat_j, omega, icosian]
            }
        }
    }
}

/// `scale * (a + b i + c j + d k)` as a 2x2 complex matrix.
fn quaternion(a: &CycNumber, b: &CycNumber, c: &CycNumber, d: &CycNumber, scale: &BigRational) -> GroupElement {
    let i = CycNumber::root_of_unity(4, 1).expect("n > 0");
    let e = |x: CycNumber| x.scale(scale);
    GroupElement::new([
        [e(a + &(b * &i)), e(c + &(d * &i))],
        [e(&(d * &i) - c), e(a - &(b * &i))],
    ])
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::BinaryDihedral(m) => write!(f, "binary-dihedral:{m}"),
            GroupSpec::BinaryTetrahedral => write!(f, "binary-tetrahedral"),
            GroupSpec::BinaryOctahedral => write!(f, "binary-octahedral"),
            GroupSpec::BinaryIcosahedral => write!(f, "binary-icosahedral"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownSpec(s.to_string());
        let spec = match s.split_once(':') {
            Some(("cyclic", n)) => GroupSpec::Cyclic(n.parse().map_err(|_| unknown())?),
            Some(("binary-dihedral", m)) => {
                GroupSpec::BinaryDihedral(m.parse().map_err(|_| unknown())?)
            }
            None if s == "binary-tetrahedral" => GroupSpec::BinaryTetrahedral,
            None if s == "binary-octahedral" => GroupSpec::BinaryOctahedral,
            None if s == "binary-icosahedral" => GroupSpec::BinaryIcosahedral,
            _ => return Err(unknown()),
        };
        spec.validate().map_err(|_| unknown())?;
        Ok(spec)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A 2x2 matrix with cyclotomic entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub entries: [[CycNumber; 2]; 2],
}

impl GroupElement {
    pub fn new(entries: [[CycNumber; 2]; 2]) -> Self {
        GroupElement { entries }
    }

    pub fn identity() -> Self {
        let (o, z) = (CycNumber::one(), CycNumber::zero());
        GroupElement::new([[o.clone(), z.clone()], [z, o]])
    }

    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        let (a, b) = (&self.entries, &rhs.entries);
        let cell = |r: usize, c: usize| &(&a[r][0] * &b[0][c]) + &(&a[r][1] * &b[1][c]);
        GroupElement::new([[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]])
    }

    pub fn det(&self) -> CycNumber {
        let e = &self.entries;
        &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0])
    }

    pub fn trace(&self) -> CycNumber {
        &self.entries[0][0] + &self.entries[1][1]
    }

    fn canonical_key(&self) -> String {
        serde_json::to_string(self).expect("matrix serialises")
    }
}

/// A fully enumerated finite subgroup of `SL2(C)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteSubgroup {
    pub spec: GroupSpec,
    pub elements: Vec<GroupElement>,
    /// `mult_table[a][b]` is the index of `elements[a] * elements[b]`.
    pub mult_table: Vec<Vec<usize>>,
    pub identity_index: usize,
    pub inverse_map: Vec<usize>,
    pub element_orders: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub class_reps: Vec<usize>,
    /// Class index of every element.
    pub class_of: Vec<usize>,
    pub exponent: usize,
}

impl FiniteSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult_table[a][b]
    }

    pub fn power(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity_index, |acc, _| self.mult_table[acc][g])
    }

    /// Checks the group-table axioms, determinants, class partition and
    /// (on a deterministic sample) agreement of the table with matrix products.
    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        let fail = |m: String| Err(Error::Invariant(format!("{}: {m}", self.spec)));
        if n != self.spec.order() {
            return fail(format!("order {n}, expected {}", self.spec.order()));
        }
        let one = CycNumber::one();
        if let Some(i) = self.elements.iter().position(|g| g.det() != one) {
            return fail(format!("element {i} has determinant != 1"));
        }
        if self.mult_table.len() != n || self.mult_table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return fail("malformed multiplication table".into());
        }
        let id = self.identity_index;
        for a in 0..n {
            if self.mult_table[id][a] != a || self.mult_table[a][id] != a {
                return fail("identity is not two-sided".into());
            }
            let inv = self.inverse_map[a];
            if self.mult_table[a][inv] != id || self.mult_table[inv][a] != id {
                return fail(format!("bad inverse for element {a}"));
            }
            let mut row = self.mult_table[a].clone();
            row.sort_unstable();
            if row.iter().enumerate().any(|(i, &x)| i != x) {
                return fail(format!("row {a} is not a permutation"));
            }
        }
        // deterministic spot checks of associativity and of the table itself
        let step = (n / 7).max(1);
        for a in (0..n).step_by(step) {
            for b in (0..n).step_by(step.max(2) - 1) {
                let ab = self.mult_table[a][b];
                if self.elements[a].mul(&self.elements[b]) != self.elements[ab] {
                    return fail(format!("table disagrees with matrix product at ({a},{b})"));
                }
                for c in (0..n).step_by(step + 1) {
                    let lhs = self.mult_table[ab][c];
                    let rhs = self.mult_table[a][self.mult_table[b][c]];
                    if lhs != rhs {
                        return fail(format!("associativity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        let mut seen = vec![false; n];
        for (ci, class) in self.classes.iter().enumerate() {
            for &x in class {
                if seen[x] || self.class_of[x] != ci {
                    return fail("classes do not partition the group".into());
                }
                seen[x] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return fail("classes do not cover the group".into());
        }
        if self.classes[self.class_of[id]].len() != 1 {
            return fail("identity class is not a singleton".into());
        }
        Ok(())
    }
}

/// Enumerate the group generated by the catalog generators of `spec`.
pub fn build_group(spec: GroupSpec) -> Result<FiniteSubgroup> {
    spec.validate()?;
    let gens = spec.generators();
    let (raw, table) = close_under_generators(&gens, CLOSURE_BOUND)?;
    let n = raw.len();

    let orders: Vec<usize> = (0..n).map(|g| element_order(&table, 0, g)).collect();
    let keys: Vec<String> = raw.iter().map(GroupElement::canonical_key).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by(|&a, &b| {
        (a != 0)
            .cmp(&(b != 0))
            .then(orders[a].cmp(&orders[b]))
            .then_with(|| keys[a].cmp(&keys[b]))
    });
    let mut new_index = vec![0; n];
    for (new, &old) in perm.iter().enumerate() {
        new_index[old] = new;
    }
    let elements: Vec<GroupElement> = perm.iter().map(|&old| raw[old].clone()).collect();
    let mult_table: Vec<Vec<usize>> = perm
        .iter()
        .map(|&a| perm.iter().map(|&b| new_index[table[a][b]]).collect())
        .collect();
    let element_orders: Vec<usize> = perm.iter().map(|&old| orders[old]).collect();

    let identity_index = 0;
    let inverse_map: Vec<usize> = (0..n)
        .map(|a| {
            mult_table[a]
                .iter()
                .position(|&x| x == identity_index)
                .expect("group table has inverses")
        })
        .collect();
    let classes = conjugacy_classes_from_table(&mult_table, &inverse_map, &element_orders);
    let mut class_of = vec![0; n];
    for (ci, class) in classes.iter().enumerate() {
        for &x in class {
            class_of[x] = ci;
        }
    }
    let class_reps = classes.iter().map(|c| c[0]).collect();
    let exponent = element_orders.iter().fold(1, |acc, &o| acc.lcm(&o));

    let group = FiniteSubgroup {
        spec,
        elements,
        mult_table,
        identity_index,
        inverse_map,
        element_orders,
        classes,
        class_reps,
        class_of,
        exponent,
    };
    group.validate()?;
    Ok(group)
}

/// Breadth-first closure. Only products `x * generator` are formed as
/// matrices; the full table follows by walking each element's BFS word.
fn close_under_generators(
    gens: &[GroupElement],
    bound: usize,
) -> Result<(Vec<GroupElement>, Vec<Vec<usize>>)> {
    let mut elements = vec![GroupElement::identity()];
    let mut index: HashMap<GroupElement, usize> = HashMap::from([(GroupElement::identity(), 0)]);
    // parent[x] = (y, g) with x = y * gens[g]
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (gi, g) in gens.iter().enumerate() {
            let prod = elements[head].mul(g);
            let idx = match index.get(&prod) {
                Some(&i) => i,
                None => {
                    if elements.len() >= bound {
                        return Err(Error::ClosureOverflow { bound });
                    }
                    let i = elements.len();
                    index.insert(prod.clone(), i);
                    elements.push(prod);
                    parent.push(Some((head, gi)));
                    i
                }
            };
            row.push(idx);
        }
        right.push(row);
        head += 1;
    }
    let n = elements.len();
    let mut table = vec![vec![0usize; n]; n];
    for (a, row) in table.iter_mut().enumerate() {
        row[0] = a;
        for b in 1..n {
            let (p, g) = parent[b].expect("non-identity element has a parent");
            row[b] = right[row[p]][g];
        }
    }
    Ok((elements, table))
}

fn element_order(table: &[Vec<usize>], identity: usize, g: usize) -> usize {
    let mut x = g;
    let mut k = 1;
    while x != identity {
        x = table[x][g];
        k += 1;
    }
    k
}

/// Conjugacy classes by brute-force conjugation. Each class is sorted and
/// represented by its smallest index; classes are ordered by
/// (order of representative, class size, representative).
pub fn conjugacy_classes_from_table(
    table: &[Vec<usize>],
    inverse: &[usize],
    orders: &[usize],
) -> Vec<Vec<usize>> {
    let n = table.len();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|g| table[table[g][x]][inverse[g]]).collect();
        class.sort_unstable();
        class.dedup();
        for &y in &class {
            assigned[y] = true;
        }
        classes.push(class);
    }
    classes.sort_by_key(|c| (orders[c[0]], c.len(), c[0]));
    classes
}

/// The conjugacy-class partition of `g`.
pub fn conjugacy_classes(g: &FiniteSubgroup) -> &[Vec<usize>] {
    &g.classes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two_is_plus_minus_identity() {
        let g = build_group(GroupSpec::Cyclic(2)).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.elements[0], GroupElement::identity());
        let minus = GroupElement::new([
            [CycNumber::from_integer(-1), CycNumber::zero()],
            [CycNumber::zero(), CycNumber::from_integer(-1)],
        ]);
        assert_eq!(g.elements[1], minus);
    }

    #[test]
    fn quaternion_group_by_closure() {
        let g = build_group(GroupSpec::BinaryDihedral(2)).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.classes.len(), 5);
        let mut orders = g.element_orders.clone();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn class_counts_small() {
        assert_eq!(build_group(GroupSpec::Cyclic(3)).unwrap().classes.len(), 3);
        assert_eq!(build_group(GroupSpec::BinaryDihedral(3)).unwrap().classes.len(), 6);
    }

    #[test]
    fn tetrahedral_generator_has_order_three() {
        let gens = GroupSpec::BinaryTetrahedral.generators();
        let w = &gens[2];
        let w3 = w.mul(w).mul(w);
        assert_eq!(w3, GroupElement::identity());
        assert_ne!(w.mul(w), GroupElement::identity());
    }

    #[test]
    fn icosian_generator_has_determinant_one() {
        for g in GroupSpec::BinaryIcosahedral.generators() {
            assert!(g.det().is_one());
        }
    }

    #[test]
    fn closure_bound_is_enforced() {
        let gens = GroupSpec::BinaryIcosahedral.generators();
        assert!(matches!(
            close_under_generators(&gens, 50),
            Err(Error::ClosureOverflow { bound: 50 })
        ));
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("cyclic:5".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(5));
        assert_eq!(
            "binary-dihedral:4".parse::<GroupSpec>().unwrap(),
            GroupSpec::BinaryDihedral(4)
        );
        assert_eq!(
            "binary-icosahedral".parse::<GroupSpec>().unwrap(),
            GroupSpec::BinaryIcosahedral
        );
        for bad in ["cyclic:1", "cyclic:x", "dihedral:3", "binary-dihedral:1", "", "cyclic"] {
            assert!(matches!(bad.parse::<GroupSpec>(), Err(Error::UnknownSpec(_))), "{bad}");
        }
        for s in GroupSpec::catalog_up_to(24) {
            assert_eq!(s.to_string().parse::<GroupSpec>().unwrap(), s);
        }
    }

    #[test]
    fn element_ordering_is_by_order() {
        let g = build_group(GroupSpec::BinaryDihedral(3)).unwrap();
        assert_eq!(g.identity_index, 0);
        assert!(g.element_orders.windows(2).all(|w| w[0] <= w[1]));
    }
}
