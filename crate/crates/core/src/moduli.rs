//! Combinatorial types of rational parametrized curves: labeled trees with
//! slopes induced by the balancing condition, their enumeration, and the
//! walls of the moduli space.
//!
//! A combinatorial type is stored through the bipartitions (splits) its
//! bounded edges induce on the leaf set. Each split is kept as the leaf
//! subset *not* containing the smallest label, and a type's canonical key is
//! the sorted list of these subsets. This gives a deterministic enumeration
//! order and cheap type identity.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lattice::{Bivector, LatticeVector};
use crate::Int;

/// Leaf subset as a bitmask; bit `l` set means leaf `l` is in the set.
pub type LeafSet = u32;

/// The degree of a curve: an ordered list of labeled slopes in `N` summing
/// to zero. Zero slopes are allowed and mark contracted ends (marked
/// points).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Degree {
    rank: usize,
    labels: Vec<String>,
    slopes: Vec<LatticeVector>,
}

impl Degree {
    pub fn new(labels: Vec<String>, slopes: Vec<LatticeVector>) -> Result<Self> {
        if slopes.len() < 3 {
            return Err(Error::DegreeTooSmall {
                min: 3,
                got: slopes.len(),
            });
        }
        let rank = slopes[0].rank();
        if rank < 2 || slopes.iter().any(|s| s.rank() != rank) {
            return Err(Error::InvalidDegree(
                "slopes must share a common rank >= 2".into(),
            ));
        }
        if labels.len() != slopes.len() {
            return Err(Error::InvalidDegree("label/slope count mismatch".into()));
        }
        let mut sum = LatticeVector::zero(rank);
        for s in &slopes {
            sum = sum.add(s);
        }
        if !sum.is_zero() {
            return Err(Error::Unbalanced);
        }
        Ok(Degree {
            rank,
            labels,
            slopes,
        })
    }

    /// Degree with default labels `e1, e2, ...`.
    pub fn unlabeled(slopes: Vec<LatticeVector>) -> Result<Self> {
        let labels = (1..=slopes.len()).map(|i| format!("e{i}")).collect();
        Degree::new(labels, slopes)
    }

    pub fn from_i64(slopes: &[&[i64]]) -> Result<Self> {
        Degree::unlabeled(slopes.iter().map(|s| LatticeVector::from_i64(s)).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }

    pub fn slope(&self, leaf: usize) -> &LatticeVector {
        &self.slopes[leaf]
    }

    pub fn label(&self, leaf: usize) -> &str {
        &self.labels[leaf]
    }

    pub fn slopes(&self) -> &[LatticeVector] {
        &self.slopes
    }

    pub fn is_marked(&self, leaf: usize) -> bool {
        self.slopes[leaf].is_zero()
    }

    pub fn marked_leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&l| self.is_marked(l)).collect()
    }

    pub fn leaf_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sum of slopes over a leaf subset.
    pub fn slope_sum(&self, set: LeafSet) -> LatticeVector {
        let mut acc = LatticeVector::zero(self.rank);
        for l in 0..self.len() {
            if set & (1 << l) != 0 {
                acc = acc.add(&self.slopes[l]);
            }
        }
        acc
    }

    /// The moduli space of parametrized curves of this degree has dimension
    /// `|Δ| + r − 3` (leaves here include marked points).
    pub fn moduli_dim(&self) -> usize {
        self.len() + self.rank - 3
    }
}

/// One arm of a vertex: either a leaf or a bounded edge toward another
/// vertex.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Arm {
    Leaf(usize),
    Edge { edge: usize, to: usize },
}

/// A combinatorial type: a labeled tree without the metric, encoded by the
/// canonical sorted list of its bounded-edge splits. The explicit vertex
/// structure is rebuilt deterministically from the splits.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CombinatorialType {
    num_leaves: usize,
    splits: Vec<LeafSet>,
    vertices: Vec<Vec<Arm>>,
    leaf_at: Vec<usize>,
    /// `(root-side vertex, split-side vertex)` per bounded edge.
    edge_ends: Vec<(usize, usize)>,
}

impl CombinatorialType {
    /// Rebuild the tree from a family of splits. The splits must be pairwise
    /// nested or disjoint and must not contain leaf 0.
    pub fn from_splits(num_leaves: usize, mut splits: Vec<LeafSet>) -> Result<Self> {
        splits.sort_unstable();
        splits.dedup();
        let all: LeafSet = (1 << num_leaves) - 1;
        for &s in &splits {
            if s & 1 != 0 || s & !all != 0 {
                return Err(Error::InvalidDegree(
                    "split contains leaf 0 or out-of-range leaves".into(),
                ));
            }
            let size = s.count_ones() as usize;
            if size < 2 || size > num_leaves - 2 {
                return Err(Error::InvalidDegree("split size out of range".into()));
            }
        }
        for (a, &s) in splits.iter().enumerate() {
            for &t in &splits[a + 1..] {
                let inter = s & t;
                if inter != 0 && inter != s && inter != t {
                    return Err(Error::InvalidDegree("incompatible splits".into()));
                }
            }
        }

        // Laminar construction: the parent of a set is the smallest split
        // strictly containing it; sets with no parent hang off the root.
        let num_vertices = splits.len() + 1;
        let mut vertices: Vec<Vec<Arm>> = vec![Vec::new(); num_vertices];
        let mut leaf_at = vec![usize::MAX; num_leaves];
        let mut edge_ends = vec![(usize::MAX, usize::MAX); splits.len()];
        let vertex_of = |edge: usize| edge + 1;

        let parent_vertex = |set: LeafSet, own_index: Option<usize>| -> usize {
            let mut best: Option<usize> = None;
            for (j, &t) in splits.iter().enumerate() {
                if Some(j) == own_index {
                    continue;
                }
                if t & set == set
                    && t != set
                    && best.is_none_or(|b| t.count_ones() < splits[b].count_ones())
                {
                    best = Some(j);
                }
            }
            best.map_or(0, vertex_of)
        };

        // root leaf
        vertices[0].push(Arm::Leaf(0));
        leaf_at[0] = 0;
        // every other leaf hangs under its smallest containing split
        for l in 1..num_leaves {
            let v = parent_vertex(1 << l, None);
            vertices[v].push(Arm::Leaf(l));
            leaf_at[l] = v;
        }
        // every split's edge joins its own vertex to the parent vertex
        for (j, &s) in splits.iter().enumerate() {
            let child = vertex_of(j);
            let parent = parent_vertex(s, Some(j));
            vertices[parent].push(Arm::Edge { edge: j, to: child });
            vertices[child].push(Arm::Edge {
                edge: j,
                to: parent,
            });
            edge_ends[j] = (parent, child);
        }
        // deterministic arm order: by minimal leaf of the branch behind the arm
        let ct = CombinatorialType {
            num_leaves,
            splits,
            vertices,
            leaf_at,
            edge_ends,
        };
        let mut sorted = ct.clone();
        for v in 0..num_vertices {
            let mut arms = ct.vertices[v].clone();
            arms.sort_by_key(|arm| ct.branch_leafset(arm).trailing_zeros());
            sorted.vertices[v] = arms;
        }
        Ok(sorted)
    }

    pub fn num_leaves(&self) -> usize {
        self.num_leaves
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_bounded_edges(&self) -> usize {
        self.splits.len()
    }

    /// Canonical key: the sorted split list.
    pub fn key(&self) -> &[LeafSet] {
        &self.splits
    }

    pub fn is_trivalent(&self) -> bool {
        self.vertices.iter().all(|arms| arms.len() == 3)
    }

    /// Total valence excess over trivalent.
    pub fn overvalence(&self) -> usize {
        self.vertices.iter().map(|arms| arms.len() - 3).sum()
    }

    pub fn arms(&self, vertex: usize) -> &[Arm] {
        &self.vertices[vertex]
    }

    pub fn vertex_of_leaf(&self, leaf: usize) -> usize {
        self.leaf_at[leaf]
    }

    pub fn edge_ends(&self, edge: usize) -> (usize, usize) {
        self.edge_ends[edge]
    }

    pub fn split(&self, edge: usize) -> LeafSet {
        self.splits[edge]
    }

    /// Does the path from the root (the vertex adjacent to leaf 0) to the
    /// given leaf cross this bounded edge?
    pub fn path_crosses(&self, leaf: usize, edge: usize) -> bool {
        self.splits[edge] & (1 << leaf) != 0
    }

    /// Leaves on the far side of an arm of a vertex.
    pub fn branch_leafset(&self, arm: &Arm) -> LeafSet {
        let all: LeafSet = (1 << self.num_leaves) - 1;
        match *arm {
            Arm::Leaf(l) => 1 << l,
            Arm::Edge { edge, to } => {
                let (_, far) = self.edge_ends[edge];
                if to == far {
                    self.splits[edge]
                } else {
                    all & !self.splits[edge]
                }
            }
        }
    }

    /// Slope of a bounded edge oriented toward its split side, fixed by the
    /// balancing condition.
    pub fn edge_slope(&self, degree: &Degree, edge: usize) -> LatticeVector {
        debug_assert_eq!(degree.len(), self.num_leaves);
        degree.slope_sum(self.splits[edge])
    }

    /// Outgoing slopes at a vertex, one per arm, in stored arm order.
    pub fn vertex_slopes(&self, degree: &Degree, vertex: usize) -> Vec<LatticeVector> {
        self.vertices[vertex]
            .iter()
            .map(|arm| degree.slope_sum(self.branch_leafset(arm)))
            .collect()
    }

    /// The bivector `a ∧ b` of the first two outgoing slopes at a trivalent
    /// vertex, defined up to the sign a caller resolves against a 2-form.
    pub fn vertex_bivector(&self, degree: &Degree, vertex: usize) -> Bivector {
        let slopes = self.vertex_slopes(degree, vertex);
        Bivector::wedge(&slopes[0], &slopes[1]).expect("slopes share the degree rank")
    }

    /// Contract one bounded edge, producing the adjacent wall (or a deeper
    /// stratum when applied to a wall).
    pub fn contract(&self, edge: usize) -> CombinatorialType {
        let splits: Vec<LeafSet> = self
            .splits
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != edge)
            .map(|(_, &s)| s)
            .collect();
        CombinatorialType::from_splits(self.num_leaves, splits)
            .expect("contraction preserves compatibility")
    }

    /// Human-readable name: vertex leaf groups sorted by smallest label,
    /// e.g. `12//3//45`. Exact for 5-leaf trees; identity always goes
    /// through [`Self::key`].
    pub fn display_name(&self, degree: Option<&Degree>) -> String {
        let mut groups: Vec<Vec<usize>> = self
            .vertices
            .iter()
            .map(|arms| {
                arms.iter()
                    .filter_map(|arm| match arm {
                        Arm::Leaf(l) => Some(*l),
                        _ => None,
                    })
                    .collect()
            })
            .filter(|g: &Vec<usize>| !g.is_empty())
            .collect();
        groups.sort_by_key(|g| g.iter().min().copied());
        groups
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&l| match degree {
                        Some(d) => d.label(l).trim_start_matches('e').to_string(),
                        None => (l + 1).to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join("")
            })
            .collect::<Vec<_>>()
            .join("//")
    }
}

/// A wall: a combinatorial type with exactly one quadrivalent vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Wall {
    tree: CombinatorialType,
    quad_vertex: usize,
}

impl Wall {
    pub fn from_type(tree: CombinatorialType) -> Result<Self> {
        if tree.overvalence() != 1 {
            return Err(Error::InvalidDegree(
                "a wall has overvalence exactly 1".into(),
            ));
        }
        let quad_vertex = (0..tree.num_vertices())
            .find(|&v| tree.arms(v).len() == 4)
            .expect("overvalence 1 forces one quadrivalent vertex");
        Ok(Wall { tree, quad_vertex })
    }

    pub fn tree(&self) -> &CombinatorialType {
        &self.tree
    }

    pub fn key(&self) -> &[LeafSet] {
        self.tree.key()
    }

    pub fn quad_vertex(&self) -> usize {
        self.quad_vertex
    }

    /// Leaf sets of the four branches at the quadrivalent vertex, in stored
    /// arm order.
    pub fn branch_leafsets(&self) -> [LeafSet; 4] {
        let arms = self.tree.arms(self.quad_vertex);
        let mut out = [0; 4];
        for (i, arm) in arms.iter().enumerate() {
            out[i] = self.tree.branch_leafset(arm);
        }
        out
    }

    /// Outgoing slopes of the four branches at the quadrivalent vertex.
    pub fn branch_slopes(&self, degree: &Degree) -> [LatticeVector; 4] {
        let sets = self.branch_leafsets();
        sets.map(|s| degree.slope_sum(s))
    }

    /// The three trivalent smoothings, in the pairing order
    /// `12//34, 13//24, 14//23` of the stored arms. The new split of each
    /// resolution is reported alongside.
    pub fn resolutions(&self) -> [(CombinatorialType, LeafSet); 3] {
        let all: LeafSet = (1 << self.tree.num_leaves()) - 1;
        let sets = self.branch_leafsets();
        [(0usize, 1usize), (0, 2), (0, 3)].map(|(a, b)| {
            let mut new_split = sets[a] | sets[b];
            if new_split & 1 != 0 {
                new_split = all & !new_split;
            }
            let mut splits = self.tree.key().to_vec();
            splits.push(new_split);
            let resolved = CombinatorialType::from_splits(self.tree.num_leaves(), splits)
                .expect("resolution of a wall is a valid type");
            (resolved, new_split)
        })
    }
}

/// All labeled trivalent types on the given number of leaves, in canonical
/// key order. There are `(2n−5)!!` of them.
pub fn enumerate_trivalent(num_leaves: usize) -> Result<Vec<CombinatorialType>> {
    if num_leaves < 3 {
        return Err(Error::DegreeTooSmall {
            min: 3,
            got: num_leaves,
        });
    }
    let mut split_families: Vec<Vec<LeafSet>> = vec![Vec::new()];
    for new_leaf in 3..num_leaves {
        let mut next = Vec::with_capacity(split_families.len() * (2 * new_leaf - 3));
        let sub_all: LeafSet = (1 << new_leaf) - 1;
        for family in &split_families {
            // attach at a leaf arm
            for l in 0..new_leaf {
                let mut f = family.clone();
                for s in f.iter_mut() {
                    if *s & (1 << l) != 0 {
                        *s |= 1 << new_leaf;
                    }
                }
                let new_split = if l == 0 {
                    sub_all & !1
                } else {
                    (1 << l) | (1 << new_leaf)
                };
                f.push(new_split);
                next.push(f);
            }
            // attach in the middle of a bounded edge
            for (j, &s_subdiv) in family.iter().enumerate() {
                let mut f = Vec::with_capacity(family.len() + 1);
                for (i, &s) in family.iter().enumerate() {
                    if i != j && s_subdiv & s == s_subdiv && s != s_subdiv {
                        f.push(s | (1 << new_leaf));
                    } else {
                        f.push(s);
                    }
                }
                f.push(s_subdiv | (1 << new_leaf));
                next.push(f);
            }
        }
        split_families = next;
    }
    let mut types: Vec<CombinatorialType> = split_families
        .into_iter()
        .map(|f| CombinatorialType::from_splits(num_leaves, f).expect("generated splits are valid"))
        .collect();
    types.sort_by(|a, b| a.key().cmp(b.key()));
    Ok(types)
}

/// All walls (one quadrivalent vertex) on the given number of leaves, in
/// canonical key order, obtained by contracting bounded edges of the
/// trivalent types.
pub fn enumerate_walls(num_leaves: usize) -> Result<Vec<Wall>> {
    if num_leaves < 4 {
        return Err(Error::DegreeTooSmall {
            min: 4,
            got: num_leaves,
        });
    }
    let mut seen: BTreeSet<Vec<LeafSet>> = BTreeSet::new();
    for t in enumerate_trivalent(num_leaves)? {
        for edge in 0..t.num_bounded_edges() {
            seen.insert(t.contract(edge).key().to_vec());
        }
    }
    seen.into_iter()
        .map(|splits| {
            Wall::from_type(CombinatorialType::from_splits(num_leaves, splits).unwrap())
        })
        .collect()
}

/// A type of trivalent vertex occurring in some curve of the given degree:
/// an unordered partition of the leaves into three nonempty blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexType {
    pub blocks: [LeafSet; 3],
    pub slopes: [LatticeVector; 3],
    /// Wedge of the first two block slopes; sign resolved later against a
    /// 2-form.
    pub bivector: Bivector,
}

/// All partitions of the degree's leaves into three nonempty blocks, in a
/// deterministic order (the block containing leaf 0 comes first).
pub fn vertex_types(degree: &Degree) -> Vec<VertexType> {
    let n = degree.len();
    let mut out = Vec::new();
    // Assign each leaf > 0 to block 0, 1 or 2; leaf 0 pins block 0, and the
    // first leaf outside block 0 pins block 1.
    let mut assignment = vec![0u8; n];
    loop {
        let mut blocks = [0 as LeafSet; 3];
        for (l, &b) in assignment.iter().enumerate() {
            blocks[b as usize] |= 1 << l;
        }
        if blocks.iter().all(|&b| b != 0) {
            let first_nonzero = (1..n).find(|&l| assignment[l] != 0);
            if first_nonzero.is_some_and(|l| assignment[l] == 1) {
                let slopes = blocks.map(|b| degree.slope_sum(b));
                let bivector =
                    Bivector::wedge(&slopes[0], &slopes[1]).expect("block slopes share rank");
                out.push(VertexType {
                    blocks,
                    slopes,
                    bivector,
                });
            }
        }
        // next assignment
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            if assignment[i] < 2 {
                assignment[i] += 1;
                break;
            }
            assignment[i] = 0;
            i -= 1;
        }
    }
}

/// Double factorial count `(2n−5)!!` of labeled trivalent trees.
pub fn trivalent_count(num_leaves: usize) -> Int {
    let mut acc = Int::from(1);
    let mut k = 2 * num_leaves as i64 - 5;
    while k > 1 {
        acc *= Int::from(k);
        k -= 2;
    }
    acc
}
