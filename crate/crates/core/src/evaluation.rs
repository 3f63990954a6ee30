//! Exact matrices of the composed evaluation maps restricted to a cone of
//! the moduli space.
//!
//! A problem compiles to an ordered list of covector rows, one per codomain
//! coordinate. On the cone of a combinatorial type the map is linear in the
//! coordinates `(root position in N_ℝ, bounded-edge lengths)`; the entry of
//! a row `m` attached to leaf `ℓ` on the length column of edge `γ` is
//! `⟨m, slope(γ)⟩` when `γ` lies on the root→ℓ path and `0` otherwise.

use num::Zero;

use crate::error::{Error, Result};
use crate::lattice::{Covector, IntMat, LatticeVector, Sublattice, TwoForm};
use crate::moduli::{CombinatorialType, Degree, LeafSet};
use crate::{Int, Rat};

/// How the sublattice constraint of one end is specified.
#[derive(Clone, Debug)]
pub enum ConstraintSpec {
    /// Linear forms whose common kernel (together with the end slope) is the
    /// constrained subspace. Each form must vanish on the end slope.
    Covectors(Vec<Covector>),
    /// Generators of the constraint slope `L_e` (lifted to `N`); converted
    /// via the orthogonal dual.
    Generators(Vec<LatticeVector>),
    /// Point constraint: `L_e = 0`.
    Point,
    /// No constraint: `L_e` is everything.
    Free,
}

/// The affine-constraint problem `P(L_e)`: per end a full sublattice
/// `L_e ⊆ N/⟨n_e⟩` (for marked points `L_i ⊆ N`), with coranks summing to
/// the moduli dimension. Marked points may carry a linear form `φ_i` used
/// by the sign-comparison problem and the marked-point factor.
#[derive(Clone, Debug)]
pub struct GeneralProblem {
    degree: Degree,
    /// Per leaf: HNF basis of the saturated dual block, the codomain rows.
    blocks: Vec<Vec<Covector>>,
    phi: Vec<Option<Covector>>,
}

impl GeneralProblem {
    pub fn new(degree: Degree, specs: Vec<ConstraintSpec>) -> Result<Self> {
        Self::with_phi(degree, specs, Vec::new())
    }

    pub fn with_phi(
        degree: Degree,
        specs: Vec<ConstraintSpec>,
        phi: Vec<(usize, Covector)>,
    ) -> Result<Self> {
        if specs.len() != degree.len() {
            return Err(Error::InvalidProblem(
                "one constraint block per degree entry is required".into(),
            ));
        }
        let r = degree.rank();
        let mut blocks = Vec::with_capacity(specs.len());
        for (leaf, spec) in specs.iter().enumerate() {
            let slope = degree.slope(leaf);
            let block = match spec {
                ConstraintSpec::Covectors(ms) => {
                    for m in ms {
                        if m.rank() != r {
                            return Err(Error::RankMismatch {
                                expected: r,
                                got: m.rank(),
                            });
                        }
                        if !degree.is_marked(leaf) && !m.apply(slope).is_zero() {
                            return Err(Error::InvalidProblem(format!(
                                "constraint covector for end {} does not vanish on its slope",
                                degree.label(leaf)
                            )));
                        }
                    }
                    let rows: Vec<Vec<Int>> = ms.iter().map(|m| m.coords().to_vec()).collect();
                    Sublattice::from_generators(r, &rows).saturation()
                }
                ConstraintSpec::Generators(gens) => {
                    let mut rows: Vec<Vec<Int>> =
                        gens.iter().map(|g| g.coords().to_vec()).collect();
                    if !degree.is_marked(leaf) {
                        rows.push(slope.coords().to_vec());
                    }
                    Sublattice::from_generators(r, &rows).orthogonal_dual()
                }
                ConstraintSpec::Point => {
                    if degree.is_marked(leaf) {
                        Sublattice::full(r)
                    } else {
                        Sublattice::from_generators(r, &[slope.coords().to_vec()])
                            .orthogonal_dual()
                    }
                }
                ConstraintSpec::Free => Sublattice::zero(r),
            };
            blocks.push(
                block
                    .basis_rows()
                    .into_iter()
                    .map(Covector::new)
                    .collect::<Vec<_>>(),
            );
        }
        let mut phi_by_leaf: Vec<Option<Covector>> = vec![None; degree.len()];
        for (leaf, form) in phi {
            if !degree.is_marked(leaf) {
                return Err(Error::InvalidProblem(format!(
                    "φ attached to {} which is not a marked point",
                    degree.label(leaf)
                )));
            }
            phi_by_leaf[leaf] = Some(form);
        }
        let problem = GeneralProblem {
            degree,
            blocks,
            phi: phi_by_leaf,
        };
        let got: usize = problem.blocks.iter().map(|b| b.len()).sum();
        let expected = problem.degree.moduli_dim();
        if got != expected {
            return Err(Error::DimensionBalance { expected, got });
        }
        Ok(problem)
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    /// Codomain rows of one leaf: the HNF basis of the saturated lattice
    /// `(⟨n_e⟩ + L_e)^⊥ ⊂ M` (just `L_i^⊥` for a marked point).
    pub fn block(&self, leaf: usize) -> &[Covector] {
        &self.blocks[leaf]
    }

    pub fn phi(&self, leaf: usize) -> Option<&Covector> {
        self.phi[leaf].as_ref()
    }

    pub fn phi_rows(&self) -> Vec<(usize, Covector)> {
        self.phi
            .iter()
            .enumerate()
            .filter_map(|(l, p)| p.clone().map(|m| (l, m)))
            .collect()
    }

    /// All codomain rows in label order; this fixed order is the codomain
    /// orientation.
    pub fn rows(&self) -> Vec<(usize, Covector)> {
        let mut out = Vec::new();
        for (leaf, block) in self.blocks.iter().enumerate() {
            for m in block {
                out.push((leaf, m.clone()));
            }
        }
        out
    }
}

/// The moment problem `P(ω, e0)`: all moments fixed, plus the end `e0`
/// confined to a line of slope `δ`. Marked points, when present, each carry
/// a linear form `φ_i` and are confined to the hyperplane it defines.
#[derive(Clone, Debug)]
pub struct OmegaProblem {
    degree: Degree,
    omega: TwoForm,
    e0: usize,
    delta: LatticeVector,
    e0_rows: Vec<Covector>,
    moment_rows: Vec<Option<Covector>>,
    phi: Vec<Option<Covector>>,
}

impl OmegaProblem {
    pub fn new(
        degree: Degree,
        omega: TwoForm,
        e0: usize,
        delta: LatticeVector,
        phi: Vec<(usize, Covector)>,
    ) -> Result<Self> {
        let r = degree.rank();
        if omega.rank() != r || delta.rank() != r {
            return Err(Error::RankMismatch {
                expected: r,
                got: omega.rank(),
            });
        }
        if degree.is_marked(e0) {
            return Err(Error::InvalidProblem(
                "the distinguished end e0 must have nonzero slope".into(),
            ));
        }
        let mut moment_rows = vec![None; degree.len()];
        for leaf in 0..degree.len() {
            if degree.is_marked(leaf) || leaf == e0 {
                continue;
            }
            let row = omega.iota(degree.slope(leaf));
            if row.is_zero() {
                return Err(Error::InvalidProblem(format!(
                    "ι_n ω = 0 on end {}",
                    degree.label(leaf)
                )));
            }
            moment_rows[leaf] = Some(row);
        }
        if omega.iota(degree.slope(e0)).is_zero() {
            return Err(Error::InvalidProblem("ι_n ω = 0 on the end e0".into()));
        }
        if omega.eval_pair(degree.slope(e0), &delta).is_zero() {
            return Err(Error::InvalidProblem("ω(n_e0, δ) = 0".into()));
        }
        let span = Sublattice::from_generators(
            r,
            &[degree.slope(e0).coords().to_vec(), delta.coords().to_vec()],
        );
        if span.rank() != 2 {
            return Err(Error::InvalidProblem("δ is collinear with n_e0".into()));
        }
        let e0_rows: Vec<Covector> = span
            .orthogonal_dual()
            .basis_rows()
            .into_iter()
            .map(Covector::new)
            .collect();
        let mut phi_by_leaf: Vec<Option<Covector>> = vec![None; degree.len()];
        for (leaf, form) in phi {
            if !degree.is_marked(leaf) {
                return Err(Error::InvalidProblem(format!(
                    "φ attached to {} which is not a marked point",
                    degree.label(leaf)
                )));
            }
            if form.is_zero() {
                return Err(Error::InvalidProblem("φ must be nonzero".into()));
            }
            phi_by_leaf[leaf] = Some(form);
        }
        for leaf in degree.marked_leaves() {
            if phi_by_leaf[leaf].is_none() {
                return Err(Error::InvalidProblem(format!(
                    "marked point {} needs a linear form φ",
                    degree.label(leaf)
                )));
            }
        }
        Ok(OmegaProblem {
            degree,
            omega,
            e0,
            delta,
            e0_rows,
            moment_rows,
            phi: phi_by_leaf,
        })
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn omega(&self) -> &TwoForm {
        &self.omega
    }

    pub fn e0(&self) -> usize {
        self.e0
    }

    pub fn delta(&self) -> &LatticeVector {
        &self.delta
    }

    /// `ω(n_{e0}, δ)`, the scale factor of the line constraint.
    pub fn e0_pairing(&self) -> Int {
        self.omega.eval_pair(self.degree.slope(self.e0), &self.delta)
    }

    /// The `r − 2` covectors cutting out the line direction at `e0`.
    pub fn e0_rows(&self) -> &[Covector] {
        &self.e0_rows
    }

    /// The raw (not primitivised) moment covector `ι_{n_e} ω` of an end.
    pub fn moment_row(&self, leaf: usize) -> Option<&Covector> {
        self.moment_rows[leaf].as_ref()
    }

    pub fn phi(&self, leaf: usize) -> Option<&Covector> {
        self.phi[leaf].as_ref()
    }

    pub fn phi_rows(&self) -> Vec<(usize, Covector)> {
        self.phi
            .iter()
            .enumerate()
            .filter_map(|(l, p)| p.clone().map(|m| (l, m)))
            .collect()
    }

    /// All codomain rows in label order, the `e0` block sitting at the
    /// position of `e0`. Moment rows are kept raw so the closed-form
    /// product `|ω(n_{e0},δ) ∏_V ω(π_V)|` holds verbatim.
    pub fn rows(&self) -> Vec<(usize, Covector)> {
        let mut out = Vec::new();
        for leaf in 0..self.degree.len() {
            if leaf == self.e0 {
                for m in &self.e0_rows {
                    out.push((leaf, m.clone()));
                }
            } else if let Some(m) = &self.moment_rows[leaf] {
                out.push((leaf, m.clone()));
            } else if let Some(m) = &self.phi[leaf] {
                out.push((leaf, m.clone()));
            }
        }
        out
    }
}

/// Either kind of enumerative problem.
#[derive(Clone, Debug)]
pub enum Problem {
    Omega(OmegaProblem),
    General(GeneralProblem),
}

impl Problem {
    pub fn degree(&self) -> &Degree {
        match self {
            Problem::Omega(p) => p.degree(),
            Problem::General(p) => p.degree(),
        }
    }

    pub fn rows(&self) -> Vec<(usize, Covector)> {
        match self {
            Problem::Omega(p) => p.rows(),
            Problem::General(p) => p.rows(),
        }
    }

    pub fn phi_rows(&self) -> Vec<(usize, Covector)> {
        match self {
            Problem::Omega(p) => p.phi_rows(),
            Problem::General(p) => p.phi_rows(),
        }
    }
}

/// Rational targets for one problem instance, aligned with the row order.
#[derive(Clone, Debug)]
pub struct Instance {
    targets: Vec<Rat>,
}

impl Instance {
    pub fn new(targets: Vec<Rat>) -> Self {
        Instance { targets }
    }

    /// Targets obtained by evaluating each row on a chosen rational point
    /// per leaf (the affine representative of its constraint).
    pub fn from_points(rows: &[(usize, Covector)], points: &[Vec<Rat>]) -> Self {
        let targets = rows
            .iter()
            .map(|(leaf, m)| apply_rational(m, &points[*leaf]))
            .collect();
        Instance { targets }
    }

    pub fn targets(&self) -> &[Rat] {
        &self.targets
    }
}

pub fn apply_rational(m: &Covector, point: &[Rat]) -> Rat {
    m.coords()
        .iter()
        .zip(point)
        .map(|(c, x)| Rat::from_integer(c.clone()) * x)
        .sum()
}

/// The square matrix of a composed evaluation map on the cone of one
/// combinatorial type. Domain basis: root position coordinates followed by
/// the bounded-edge lengths in canonical split order.
#[derive(Clone, Debug)]
pub struct EvaluationMatrix {
    mat: IntMat,
    det: Int,
}

impl EvaluationMatrix {
    pub fn matrix(&self) -> &IntMat {
        &self.mat
    }

    pub fn det(&self) -> &Int {
        &self.det
    }

    pub fn sign(&self) -> i8 {
        match self.det.sign() {
            num::bigint::Sign::Minus => -1,
            num::bigint::Sign::NoSign => 0,
            num::bigint::Sign::Plus => 1,
        }
    }
}

/// Build the evaluation matrix of a problem on a combinatorial type, with
/// the bounded-edge columns in the type's canonical order.
pub fn build_matrix(
    tree: &CombinatorialType,
    degree: &Degree,
    rows: &[(usize, Covector)],
) -> EvaluationMatrix {
    let order: Vec<usize> = (0..tree.num_bounded_edges()).collect();
    build_matrix_with_edge_order(tree, degree, rows, &order)
}

/// Same as [`build_matrix`] with an explicit edge-column order. Used by the
/// wall checks, where the three resolutions must share their common columns
/// and differ only in the splitting-edge column (placed last).
pub fn build_matrix_with_edge_order(
    tree: &CombinatorialType,
    degree: &Degree,
    rows: &[(usize, Covector)],
    edge_order: &[usize],
) -> EvaluationMatrix {
    let r = degree.rank();
    let n_edges = tree.num_bounded_edges();
    assert_eq!(edge_order.len(), n_edges);
    assert_eq!(rows.len(), r + n_edges, "evaluation matrix must be square");
    let slopes: Vec<LatticeVector> = (0..n_edges).map(|j| tree.edge_slope(degree, j)).collect();
    let mut mat = IntMat::zero(rows.len(), rows.len());
    for (i, (leaf, m)) in rows.iter().enumerate() {
        for (j, c) in m.coords().iter().enumerate() {
            *mat.at_mut(i, j) = c.clone();
        }
        for (col, &edge) in edge_order.iter().enumerate() {
            if tree.path_crosses(*leaf, edge) {
                *mat.at_mut(i, r + col) = m.apply(&slopes[edge]);
            }
        }
    }
    let det = mat.det();
    EvaluationMatrix { mat, det }
}

/// Evaluation matrix with the translation anchored at the vertex adjacent
/// to an arbitrary leaf instead of leaf 0. Exposed for the orientation
/// tests; the canonical builder always roots at the smallest label.
pub fn build_matrix_with_root(
    tree: &CombinatorialType,
    degree: &Degree,
    rows: &[(usize, Covector)],
    root_leaf: usize,
) -> EvaluationMatrix {
    let r = degree.rank();
    let n_edges = tree.num_bounded_edges();
    let slopes: Vec<LatticeVector> = (0..n_edges).map(|j| tree.edge_slope(degree, j)).collect();
    let mut mat = IntMat::zero(rows.len(), rows.len());
    for (i, (leaf, m)) in rows.iter().enumerate() {
        for (j, c) in m.coords().iter().enumerate() {
            *mat.at_mut(i, j) = c.clone();
        }
        for edge in 0..n_edges {
            let leaf_in = tree.path_crosses(*leaf, edge);
            let root_in = tree.path_crosses(root_leaf, edge);
            // The path crosses the edge when the two leaves disagree about
            // the split; the orientation is toward the target leaf's side.
            let entry = match (root_in, leaf_in) {
                (false, true) => m.apply(&slopes[edge]),
                (true, false) => -m.apply(&slopes[edge]),
                _ => Int::zero(),
            };
            *mat.at_mut(i, r + edge) = entry;
        }
    }
    let det = mat.det();
    EvaluationMatrix { mat, det }
}

/// Position of a leaf's attachment point, given cone coordinates.
pub fn leaf_position(
    tree: &CombinatorialType,
    degree: &Degree,
    root: &[Rat],
    lengths: &[Rat],
    leaf: usize,
) -> Vec<Rat> {
    let r = degree.rank();
    let mut pos = root.to_vec();
    for edge in 0..tree.num_bounded_edges() {
        if tree.path_crosses(leaf, edge) {
            let slope = tree.edge_slope(degree, edge);
            for k in 0..r {
                let delta = Rat::from_integer(slope.coord(k).clone()) * &lengths[edge];
                pos[k] += delta;
            }
        }
    }
    pos
}

/// The moment `μ_ω(e) = ω(n_e, h(p_e))` of one end of a positioned curve.
pub fn moment_of_end(
    tree: &CombinatorialType,
    degree: &Degree,
    omega: &TwoForm,
    root: &[Rat],
    lengths: &[Rat],
    leaf: usize,
) -> Rat {
    let row = omega.iota(degree.slope(leaf));
    let pos = leaf_position(tree, degree, root, lengths, leaf);
    apply_rational(&row, &pos)
}

/// Splitting-edge-last column order for a wall resolution: the common edges
/// in canonical (sorted split) order, then the new edge.
pub fn wall_adapted_edge_order(resolution: &CombinatorialType, new_split: LeafSet) -> Vec<usize> {
    let mut order: Vec<usize> = (0..resolution.num_bounded_edges())
        .filter(|&j| resolution.split(j) != new_split)
        .collect();
    order.push(
        (0..resolution.num_bounded_edges())
            .find(|&j| resolution.split(j) == new_split)
            .expect("resolution contains its new split"),
    );
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::enumerate_trivalent;
    use num::{One, Signed};

    fn lines_in_r4() -> Degree {
        Degree::from_i64(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[-1, -1, -1, -1],
        ])
        .unwrap()
    }

    fn two_point_lines() -> GeneralProblem {
        let specs = vec![
            ConstraintSpec::Point,
            ConstraintSpec::Free,
            ConstraintSpec::Free,
            ConstraintSpec::Free,
            ConstraintSpec::Point,
        ];
        GeneralProblem::new(lines_in_r4(), specs).unwrap()
    }

    #[test]
    fn point_blocks_have_full_corank() {
        let p = two_point_lines();
        assert_eq!(p.block(0).len(), 3);
        assert_eq!(p.block(4).len(), 3);
        assert!(p.block(1).is_empty());
        for m in p.block(4) {
            assert!(m.apply(&LatticeVector::from_i64(&[-1, -1, -1, -1])).is_zero());
        }
    }

    #[test]
    fn hyperplane_block_is_the_primitive_covector() {
        // L_{e2} = ker(−25, 0, −16, −72): the block is ±that covector.
        let degree = lines_in_r4();
        let mut specs = vec![ConstraintSpec::Free; 5];
        specs[1] = ConstraintSpec::Covectors(vec![Covector::from_i64(&[-25, 0, -16, -72])]);
        // pad with point constraints to balance dimensions: 3 + 3 = 6
        specs[0] = ConstraintSpec::Point;
        specs[4] = ConstraintSpec::Covectors(vec![
            Covector::from_i64(&[1, -1, 0, 0]),
            Covector::from_i64(&[0, 1, -1, 0]),
        ]);
        let p = GeneralProblem::new(degree, specs).unwrap();
        assert_eq!(p.block(1).len(), 1);
        let row = &p.block(1)[0];
        let expected = Covector::from_i64(&[-25, 0, -16, -72]);
        assert!(*row == expected || *row == expected.neg());
    }

    #[test]
    fn covectors_must_vanish_on_the_slope() {
        let degree = lines_in_r4();
        let mut specs = vec![ConstraintSpec::Free; 5];
        specs[0] = ConstraintSpec::Covectors(vec![Covector::from_i64(&[1, 0, 0, 0])]);
        assert!(matches!(
            GeneralProblem::new(degree, specs),
            Err(Error::InvalidProblem(_))
        ));
    }

    #[test]
    fn dimension_balance_is_enforced() {
        let degree = lines_in_r4();
        let specs = vec![
            ConstraintSpec::Point,
            ConstraintSpec::Free,
            ConstraintSpec::Free,
            ConstraintSpec::Free,
            ConstraintSpec::Free,
        ];
        assert!(matches!(
            GeneralProblem::new(degree, specs),
            Err(Error::DimensionBalance {
                expected: 6,
                got: 3
            })
        ));
    }

    #[test]
    fn omega_rows_have_the_right_shape() {
        let degree = lines_in_r4();
        let omega = TwoForm::from_i64(&[
            &[0, -68, -53, 86],
            &[68, 0, 46, -43],
            &[53, -46, 0, 30],
            &[-86, 43, -30, 0],
        ])
        .unwrap();
        let delta = LatticeVector::from_i64(&[0, 1, 0, 0]);
        let p = OmegaProblem::new(degree, omega, 0, delta, Vec::new()).unwrap();
        assert_eq!(p.e0_rows().len(), 2); // r − 2
        let rows = p.rows();
        assert_eq!(rows.len(), 6); // |Δ| + r − 3
        // moments are raw ι_n ω
        let m1 = p.moment_row(1).unwrap();
        assert_eq!(m1, &p.omega().iota(&LatticeVector::basis(4, 1)));
        // ω₁(e1, e2) from the matrix
        assert_eq!(
            p.omega()
                .eval_pair(&LatticeVector::basis(4, 0), &LatticeVector::basis(4, 1)),
            Int::from(-68)
        );
    }

    #[test]
    fn omega_rejects_degenerate_data() {
        let degree = lines_in_r4();
        let omega = TwoForm::from_i64(&[
            &[0, 1, 1, 1],
            &[-1, 0, 0, 0],
            &[-1, 0, 0, 0],
            &[-1, 0, 0, 0],
        ])
        .unwrap();
        // ι_{e5}ω4 = 0? e5 = (−1,−1,−1,−1): ω(e5, ·) = (3, -1, -1, -1) ≠ 0, fine;
        // but δ collinear with n_e0 must fail.
        let delta = LatticeVector::from_i64(&[2, 0, 0, 0]);
        assert!(OmegaProblem::new(degree.clone(), omega.clone(), 0, delta, Vec::new()).is_err());
        // ω(n_e0, δ) = 0 must fail: ω4(e2, e3) = 0.
        let delta = LatticeVector::from_i64(&[0, 0, 1, 0]);
        assert!(OmegaProblem::new(degree, omega, 1, delta, Vec::new()).is_err());
    }

    #[test]
    fn planar_case_has_no_e0_block() {
        let degree = Degree::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let omega = TwoForm::from_i64(&[&[0, 1], &[-1, 0]]).unwrap();
        let delta = LatticeVector::from_i64(&[0, 1]);
        let p = OmegaProblem::new(degree, omega, 0, delta, Vec::new()).unwrap();
        assert!(p.e0_rows().is_empty());
        assert_eq!(p.rows().len(), 2);
    }

    #[test]
    fn matrix_entries_follow_the_path_rule() {
        let degree = lines_in_r4();
        let p = two_point_lines();
        let rows = p.rows();
        let t = CombinatorialType::from_splits(5, vec![0b11100, 0b11000]).unwrap();
        let em = build_matrix(&t, &degree, &rows);
        assert_eq!(em.matrix().rows(), 6);
        // Rows of leaf 0 never cross any split (root side), so their edge
        // columns vanish.
        for i in 0..3 {
            assert!(em.matrix().at(i, 4).is_zero());
            assert!(em.matrix().at(i, 5).is_zero());
        }
        // Rows of leaf 4 cross both edges.
        let slope_a = t.edge_slope(&degree, 0);
        for i in 3..6 {
            let (leaf, m) = &rows[i];
            assert_eq!(*leaf, 4);
            assert_eq!(*em.matrix().at(i, 4), m.apply(&slope_a));
        }
    }

    #[test]
    fn two_point_line_multiplicities() {
        // Types 1i//j//k5 have |det| = 1, others 0.
        let degree = lines_in_r4();
        let p = two_point_lines();
        let rows = p.rows();
        let mut ones = 0;
        let mut zeros = 0;
        for t in enumerate_trivalent(5).unwrap() {
            let em = build_matrix(&t, &degree, &rows);
            // 1i//j//k5: the constrained ends e1, e5 sit at distinct cherries.
            let v0 = t.vertex_of_leaf(0);
            let v4 = t.vertex_of_leaf(4);
            let leaf_count = |v: usize| {
                t.arms(v)
                    .iter()
                    .filter(|a| matches!(a, crate::moduli::Arm::Leaf(_)))
                    .count()
            };
            let separated = v0 != v4 && leaf_count(v0) == 2 && leaf_count(v4) == 2;
            let abs = em.det().abs();
            if abs.is_one() {
                ones += 1;
                assert!(separated, "{} should pair e1 and e5 apart", t.display_name(None));
            } else {
                assert!(abs.is_zero());
                zeros += 1;
            }
        }
        assert_eq!(ones, 6);
        assert_eq!(zeros, 9);
    }

    #[test]
    fn root_change_preserves_the_determinant_up_to_sign() {
        let degree = lines_in_r4();
        let p = two_point_lines();
        let rows = p.rows();
        for t in enumerate_trivalent(5).unwrap() {
            let d0 = build_matrix(&t, &degree, &rows).det().clone();
            for root in 1..5 {
                let d = build_matrix_with_root(&t, &degree, &rows, root).det().clone();
                assert!(
                    d == d0 || d == -d0.clone(),
                    "root change may flip the sign only"
                );
            }
        }
    }

    #[test]
    fn swapping_codomain_rows_flips_the_sign() {
        let degree = lines_in_r4();
        let p = two_point_lines();
        let mut rows = p.rows();
        let t = CombinatorialType::from_splits(5, vec![0b11100, 0b11000]).unwrap();
        let before = build_matrix(&t, &degree, &rows).det().clone();
        rows.swap(0, 1);
        let after = build_matrix(&t, &degree, &rows).det().clone();
        assert_eq!(before, -after);
    }
}
