//! McKay quiver, affine Cartan matrix and the affine ADE classification.

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdeType {
    /// `A~n`, `n + 1` vertices; `A~1` has a double edge.
    AffineA(usize),
    /// `D~n`, `n >= 4`, `n + 1` vertices.
    AffineD(usize),
    AffineE6,
    AffineE7,
    AffineE8,
}

impl AdeType {
    pub fn rank(&self) -> usize {
        match *self {
            AdeType::AffineA(n) | AdeType::AffineD(n) => n,
            AdeType::AffineE6 => 6,
            AdeType::AffineE7 => 7,
            AdeType::AffineE8 => 8,
        }
    }

    /// Name of the finite type obtained by deleting the affine node, e.g. `E8`.
    pub fn finite_name(&self) -> String {
        match *self {
            AdeType::AffineA(n) => format!("A{n}"),
            AdeType::AffineD(n) => format!("D{n}"),
            AdeType::AffineE6 => "E6".into(),
            AdeType::AffineE7 => "E7".into(),
            AdeType::AffineE8 => "E8".into(),
        }
    }

    /// Reference adjacency with vertex 0 the affine node, in Bourbaki numbering.
    pub fn reference_adjacency(&self) -> Vec<Vec<i64>> {
        let size = self.rank() + 1;
        let mut a = vec![vec![0i64; size]; size];
        let mut edge = |i: usize, j: usize| {
            a[i][j] += 1;
            a[j][i] += 1;
        };
        match *self {
            AdeType::AffineA(n) => {
                for i in 0..=n {
                    edge(i, (i + 1) % (n + 1));
                }
            }
            AdeType::AffineD(n) => {
                edge(0, 2);
                for i in 1..n - 2 {
                    edge(i, i + 1);
                }
                edge(n - 2, n - 1);
                edge(n - 2, n);
            }
            AdeType::AffineE6 => {
                for (i, j) in [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4), (0, 2)] {
                    edge(i, j);
                }
            }
            AdeType::AffineE7 => {
                for (i, j) in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4), (0, 1)] {
                    edge(i, j);
                }
            }
            AdeType::AffineE8 => {
                for (i, j) in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4), (0, 8)] {
                    edge(i, j);
                }
            }
        }
        a
    }

    /// Marks (the imaginary root) in the reference numbering.
    pub fn reference_delta(&self) -> Vec<i64> {
        match *self {
            AdeType::AffineA(n) => vec![1; n + 1],
            AdeType::AffineD(n) => (0..=n)
                .map(|i| if i <= 1 || i >= n - 1 { 1 } else { 2 })
                .collect(),
            AdeType::AffineE6 => vec![1, 1, 2, 2, 3, 2, 1],
            AdeType::AffineE7 => vec![1, 2, 2, 3, 4, 3, 2, 1],
            AdeType::AffineE8 => vec![1, 2, 3, 4, 6, 5, 4, 3, 2],
        }
    }

    /// Candidate types on a given number of vertices.
    fn candidates(vertices: usize) -> Vec<AdeType> {
        let mut out = Vec::new();
        if vertices >= 2 {
            out.push(AdeType::AffineA(vertices - 1));
        }
        if vertices >= 5 {
            out.push(AdeType::AffineD(vertices - 1));
        }
        match vertices {
            7 => out.push(AdeType::AffineE6),
            8 => out.push(AdeType::AffineE7),
            9 => out.push(AdeType::AffineE8),
            _ => {}
        }
        out
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AdeType::AffineA(n) => write!(f, "A~{n}"),
            AdeType::AffineD(n) => write!(f, "D~{n}"),
            AdeType::AffineE6 => write!(f, "E~6"),
            AdeType::AffineE7 => write!(f, "E~7"),
            AdeType::AffineE8 => write!(f, "E~8"),
        }
    }
}

impl Serialize for AdeType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AdeType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let bad = || serde::de::Error::custom(format!("unknown ADE type '{s}'"));
        match s.as_str() {
            "E~6" => Ok(AdeType::AffineE6),
            "E~7" => Ok(AdeType::AffineE7),
            "E~8" => Ok(AdeType::AffineE8),
            _ => {
                let (kind, n) = s.split_once('~').ok_or_else(bad)?;
                let n: usize = n.parse().map_err(|_| bad())?;
                match kind {
                    "A" if n >= 1 => Ok(AdeType::AffineA(n)),
                    "D" if n >= 4 => Ok(AdeType::AffineD(n)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanData {
    pub vertex_count: usize,
    pub adjacency: Vec<Vec<i64>>,
    pub cartan: Vec<Vec<i64>>,
    pub delta: Vec<i64>,
    pub trivial_vertex: usize,
    pub ade_type: AdeType,
    /// `standard_labeling[v]` is the reference vertex matched to irrep `v`.
    pub standard_labeling: Vec<usize>,
}

impl CartanData {
    /// Number of finite simple roots, `|I| - 1`.
    pub fn rank(&self) -> usize {
        self.vertex_count - 1
    }

    pub fn apply_cartan(&self, v: &[i64]) -> Vec<i64> {
        linalg::mat_vec(&self.cartan, v)
    }

    /// `(x, y) = x^T C y` on the root lattice.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        x.iter().zip(self.apply_cartan(y)).map(|(a, b)| a * b).sum()
    }

    /// Assemble and check Cartan data from a symmetric adjacency and the degree vector.
    pub fn from_adjacency(adjacency: Vec<Vec<i64>>, delta: Vec<i64>, trivial_vertex: usize) -> Result<Self> {
        let n = adjacency.len();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * i64::from(i == j) - adjacency[i][j]).collect())
            .collect();
        let (ade_type, standard_labeling) = classify_ade(&adjacency, &delta, trivial_vertex)?;
        let cd = CartanData {
            vertex_count: n,
            adjacency,
            cartan,
            delta,
            trivial_vertex,
            ade_type,
            standard_labeling,
        };
        cd.verify()?;
        Ok(cd)
    }

    pub fn verify(&self) -> Result<()> {
        let n = self.vertex_count;
        let fail = |m: &str| Err(Error::Invariant(m.to_string()));
        for i in 0..n {
            if self.adjacency[i][i] != 0 {
                return fail("McKay quiver has a loop");
            }
            for j in 0..n {
                if self.adjacency[i][j] != self.adjacency[j][i] || self.adjacency[i][j] < 0 {
                    return fail("adjacency is not symmetric and nonnegative");
                }
            }
        }
        if self.apply_cartan(&self.delta).iter().any(|&x| x != 0) {
            return fail("C * delta != 0");
        }
        if self.delta[self.trivial_vertex] != 1 || self.delta.iter().any(|&d| d <= 0) {
            return fail("delta is not positive with delta[0] = 1");
        }
        if linalg::rank(&self.cartan) != n - 1 {
            return fail("kernel of the affine Cartan matrix is not one-dimensional");
        }
        Ok(())
    }
}

/// Build the McKay quiver: `a_ij` is the multiplicity of `rho_j` in `Q (x) rho_i`.
pub fn mckay_quiver(table: &CharacterTable) -> Result<CartanData> {
    let r = table.class_count();
    let q = &table.defining_character;
    let mut adjacency = vec![vec![0i64; r]; r];
    for i in 0..r {
        let q_rho = CharacterTable::product(q, &table.values[i]);
        for j in 0..r {
            let mult = table.inner_product(&q_rho, &table.values[j])?;
            adjacency[i][j] = mult
                .to_integer()
                .and_then(|m| m.to_i64())
                .filter(|&m| m >= 0)
                .ok_or_else(|| {
                    Error::Invariant(format!("multiplicity a[{i}][{j}] = {mult} is not a nonnegative integer"))
                })?;
        }
    }
    let delta = table.degrees.iter().map(|&d| d as i64).collect();
    CartanData::from_adjacency(adjacency, delta, table.trivial_index)
}

/// Identify a connected symmetric graph with a reference affine ADE diagram.
///
/// The trivial vertex is pinned to the reference affine node; the returned
/// labeling maps each input vertex to its reference vertex.
pub fn classify_ade(
    adjacency: &[Vec<i64>],
    delta: &[i64],
    trivial_vertex: usize,
) -> Result<(AdeType, Vec<usize>)> {
    let n = adjacency.len();
    if delta.len() != n || adjacency.iter().any(|r| r.len() != n) || trivial_vertex >= n {
        return Err(Error::NotAffineAde("dimension mismatch".into()));
    }
    if !is_connected(adjacency) {
        return Err(Error::NotAffineAde("graph is disconnected".into()));
    }
    let degree = |a: &[Vec<i64>], v: usize| a[v].iter().sum::<i64>();
    for ty in AdeType::candidates(n) {
        let reference = ty.reference_adjacency();
        let ref_delta = ty.reference_delta();
        let mut fp_in: Vec<(i64, i64)> = (0..n).map(|v| (degree(adjacency, v), delta[v])).collect();
        let mut fp_ref: Vec<(i64, i64)> = (0..n).map(|v| (degree(&reference, v), ref_delta[v])).collect();
        fp_in.sort_unstable();
        fp_ref.sort_unstable();
        if fp_in != fp_ref {
            continue;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[trivial_vertex] = 0;
        used[0] = true;
        let order = bfs_order(adjacency, trivial_vertex);
        if backtrack(1, &order, adjacency, delta, &reference, &ref_delta, &mut map, &mut used) {
            return Ok((ty, map));
        }
    }
    Err(Error::NotAffineAde(format!(
        "no reference diagram on {n} vertices matches"
    )))
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    pos: usize,
    order: &[usize],
    a: &[Vec<i64>],
    delta: &[i64],
    reference: &[Vec<i64>],
    ref_delta: &[i64],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    for target in 0..reference.len() {
        if used[target] || ref_delta[target] != delta[v] {
            continue;
        }
        let consistent = order[..pos]
            .iter()
            .all(|&u| a[v][u] == reference[target][map[u]]);
        if !consistent || a[v][v] != reference[target][target] {
            continue;
        }
        map[v] = target;
        used[target] = true;
        if backtrack(pos + 1, order, a, delta, reference, ref_delta, map, used) {
            return true;
        }
        used[target] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Vertices in breadth-first order, so each vertex after the root has a placed neighbour.
fn bfs_order(a: &[Vec<i64>], root: usize) -> Vec<usize> {
    let mut order = vec![root];
    let mut seen = vec![false; a.len()];
    seen[root] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for w in 0..a.len() {
            if a[v][w] != 0 && !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    order
}

fn is_connected(a: &[Vec<i64>]) -> bool {
    let n = a.len();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if a[v][w] != 0 && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Finite Cartan matrix with the trivial vertex removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteCartan {
    /// Coordinate `k` corresponds to irrep `vertices[k]`; ordered by standard label.
    pub vertices: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
}

impl FiniteCartan {
    pub fn determinant(&self) -> i64 {
        linalg::det(&self.matrix).to_i64().expect("small determinant")
    }

    pub fn is_positive_definite(&self) -> bool {
        linalg::is_positive_definite(&self.matrix)
    }
}

/// Delete the row and column of the trivial vertex; coordinates follow the
/// standard labeling so that different groups of one type line up.
pub fn finite_cartan(cd: &CartanData) -> Result<FiniteCartan> {
    let mut vertices: Vec<usize> = (0..cd.vertex_count).filter(|&v| v != cd.trivial_vertex).collect();
    vertices.sort_by_key(|&v| cd.standard_labeling[v]);
    let matrix: Vec<Vec<i64>> = vertices
        .iter()
        .map(|&i| vertices.iter().map(|&j| cd.cartan[i][j]).collect())
        .collect();
    let fc = FiniteCartan { vertices, matrix };
    if !fc.is_positive_definite() {
        return Err(Error::Invariant(
            "finite Cartan matrix is not positive definite".into(),
        ));
    }
    Ok(fc)
}

/// Graphviz rendering with delta labels; the trivial vertex is double-circled.
pub fn to_dot(cd: &CartanData) -> String {
    let mut out = String::from("graph mckay {\n");
    for v in 0..cd.vertex_count {
        let shape = if v == cd.trivial_vertex { "doublecircle" } else { "circle" };
        out.push_str(&format!(
            "  {v} [label=\"ρ{v} (d={})\", shape={shape}];\n",
            cd.delta[v]
        ));
    }
    for i in 0..cd.vertex_count {
        for j in i + 1..cd.vertex_count {
            for _ in 0..cd.adjacency[i][j] {
                out.push_str(&format!("  {i} -- {j};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}
