//! Multiplicities of combinatorial types: the complex multiplicity through
//! the determinant and through the branch-cutting sink algorithm, the
//! refined vertex-product multiplicity, and marked-point factors.

use std::collections::HashMap;

use num::Signed;

use crate::error::{Error, Result};
use crate::evaluation::{build_matrix, GeneralProblem, OmegaProblem, Problem};
use crate::group_ring::{GroupRing, RingElement};
use crate::lattice::{Bivector, Covector, LatticeVector, Polyvector, TwoForm};
use crate::moduli::{Arm, CombinatorialType, Degree};
use crate::Int;

/// `|det|` of the composed evaluation map on the cone of the type, with the
/// problem's own normalisation mode (lattice-primitive rows for affine
/// constraints, raw moment rows for the moment problem). Zero on
/// non-injective cones.
pub fn complex_mult_det(tree: &CombinatorialType, problem: &Problem) -> Int {
    build_matrix(tree, problem.degree(), &problem.rows())
        .det()
        .abs()
}

/// Leaf polyvectors of the affine-constraint problem: the wedge of the
/// primitive covector block of each end, i.e. the Plücker vector of the
/// saturated span of `n_e` and `L_e`.
pub fn pluecker_leaves(problem: &GeneralProblem) -> Vec<Polyvector> {
    let r = problem.degree().rank();
    (0..problem.degree().len())
        .map(|leaf| {
            let mut rho = Polyvector::unit(r);
            for m in problem.block(leaf) {
                rho = rho.wedge(&Polyvector::from_covector(m));
            }
            rho
        })
        .collect()
}

/// Leaf polyvectors of the moment problem: `ι_{n_e} ω` on ordinary ends,
/// `ι_δ ι_{n_{e0}} Ω` on the distinguished end (with `Ω` the generator of
/// `Λ^r M`), and `φ_i` on marked points.
pub fn omega_leaves(problem: &OmegaProblem) -> Vec<Polyvector> {
    let degree = problem.degree();
    let r = degree.rank();
    (0..degree.len())
        .map(|leaf| {
            if leaf == problem.e0() {
                Polyvector::top_generator(r)
                    .interior(degree.slope(leaf))
                    .expect("top generator has positive grade")
                    .interior(problem.delta())
                    .expect("rank is at least 2")
            } else if let Some(m) = problem.moment_row(leaf) {
                Polyvector::from_covector(m)
            } else {
                Polyvector::from_covector(problem.phi(leaf).expect("marked points carry φ"))
            }
        })
        .collect()
}

/// Complex multiplicity by the sink algorithm: orient the tree toward the
/// sink, combine the incoming polyvectors at each vertex by wedge followed
/// by interior product with the total incoming slope, and read off the
/// coefficient of the full wedge at the sink against a generator of
/// `Λ^r M`.
///
/// Wrongly dispatched constraints surface either as a wedge overflow past
/// `Λ^r M` or as a contraction of a grade-0 polyvector; both give 0.
pub fn complex_mult_sink(
    tree: &CombinatorialType,
    degree: &Degree,
    leaves: &[Polyvector],
    sink: usize,
) -> Int {
    assert_eq!(leaves.len(), degree.len());
    let r = degree.rank();
    let mut at_sink = Polyvector::unit(r);
    for arm in tree.arms(sink) {
        let (rho, _) = branch_value(tree, degree, leaves, sink, arm);
        at_sink = at_sink.wedge(&rho);
    }
    at_sink.top_coefficient().abs()
}

/// Polyvector and total outgoing slope of the branch hanging off one arm of
/// a vertex, propagated toward that vertex.
fn branch_value(
    tree: &CombinatorialType,
    degree: &Degree,
    leaves: &[Polyvector],
    _vertex: usize,
    arm: &Arm,
) -> (Polyvector, LatticeVector) {
    let r = degree.rank();
    match *arm {
        Arm::Leaf(l) => (leaves[l].clone(), degree.slope(l).clone()),
        Arm::Edge { edge, to } => {
            let mut wedge = Polyvector::unit(r);
            let mut slope = LatticeVector::zero(r);
            for child_arm in tree.arms(to) {
                if matches!(*child_arm, Arm::Edge { edge: e, .. } if e == edge) {
                    continue;
                }
                let (rho, s) = branch_value(tree, degree, leaves, to, child_arm);
                wedge = wedge.wedge(&rho);
                slope = slope.add(&s);
            }
            let rho = if wedge.grade() == 0 {
                // No constraints behind this edge at all: the complementary
                // side is over-constrained and the multiplicity vanishes.
                Polyvector::zero(r, 0)
            } else {
                wedge.interior(&slope).expect("grade checked above")
            };
            (rho, slope)
        }
    }
}

/// Refined multiplicity `B_Γ^K = ∏_V (q^{π_V} − q^{−π_V})` over the
/// non-marked trivalent vertices, with each `π_V` signed so that
/// `ω(π_V) > 0`. A flat vertex gives 0; `ω(π_V) = 0` gives 0 when `π_V`
/// dies in the quotient and is an error otherwise (the sign is undefined).
pub fn refined_mult(
    tree: &CombinatorialType,
    degree: &Degree,
    omega: &TwoForm,
    ring: &GroupRing,
) -> Result<RingElement> {
    let mut out = ring.one();
    for vertex in 0..tree.num_vertices() {
        let marked = tree
            .arms(vertex)
            .iter()
            .any(|arm| matches!(*arm, Arm::Leaf(l) if degree.is_marked(l)));
        if marked {
            // contributes through the marked-point factor instead
            continue;
        }
        let pi = tree.vertex_bivector(degree, vertex);
        if pi.is_zero() {
            return Ok(ring.zero());
        }
        let value = omega.eval_bivector(&pi);
        let factor = if value.is_positive() {
            ring.binomial(&pi)
        } else if value.is_negative() {
            ring.binomial(&pi.neg())
        } else {
            let b = ring.binomial(&pi);
            if b.is_zero() {
                return Ok(ring.zero());
            }
            return Err(Error::SignUndefined);
        };
        if factor.is_zero() {
            return Ok(ring.zero());
        }
        out = ring.mul(&out, &factor);
    }
    Ok(out)
}

/// Slope of the curve at a marked point: the outgoing slope of either
/// non-marked arm at its vertex, sign-normalised toward the branch with the
/// smaller minimal leaf.
pub fn marked_slope(
    tree: &CombinatorialType,
    degree: &Degree,
    marked_leaf: usize,
) -> LatticeVector {
    let v = tree.vertex_of_leaf(marked_leaf);
    for arm in tree.arms(v) {
        if matches!(*arm, Arm::Leaf(l) if l == marked_leaf) {
            continue;
        }
        // arms are stored by minimal branch leaf, so the first non-marked
        // arm is the canonical representative
        return degree.slope_sum(tree.branch_leafset(arm));
    }
    unreachable!("a vertex has at least three arms")
}

/// The factor `∏_i |φ_i(δ_i^Γ)|` a curve picks up from its marked points;
/// 1 when there are none.
pub fn marked_factor(tree: &CombinatorialType, degree: &Degree, phi: &[(usize, Covector)]) -> Int {
    let mut out = Int::from(1);
    for (leaf, form) in phi {
        let delta = marked_slope(tree, degree, *leaf);
        out *= form.apply(&delta).abs();
    }
    out
}

/// Intersection index `φ · Δ = Σ_{n ∈ Δ : φ(n) > 0} φ(n)` between a curve of
/// the degree and a hyperplane of slope `ker φ`.
pub fn intersection_index(phi: &Covector, degree: &Degree) -> Int {
    degree
        .slopes()
        .iter()
        .map(|n| phi.apply(n))
        .filter(|v| v.is_positive())
        .sum()
}

/// All vertex bivectors of a trivalent type, signed so `ω` is positive,
/// keyed by vertex. Skips marked vertices. `None` when some sign is
/// undefined (`ω(π_V) = 0` with `π_V ≠ 0`).
pub fn signed_vertex_bivectors(
    tree: &CombinatorialType,
    degree: &Degree,
    omega: &TwoForm,
) -> Option<HashMap<usize, Bivector>> {
    let mut out = HashMap::new();
    for vertex in 0..tree.num_vertices() {
        let marked = tree
            .arms(vertex)
            .iter()
            .any(|arm| matches!(*arm, Arm::Leaf(l) if degree.is_marked(l)));
        if marked {
            continue;
        }
        let pi = tree.vertex_bivector(degree, vertex);
        let value = omega.eval_bivector(&pi);
        if value.is_positive() {
            out.insert(vertex, pi);
        } else if value.is_negative() {
            out.insert(vertex, pi.neg());
        } else {
            return None;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation::ConstraintSpec;
    use num::Zero;
    use crate::lattice::Sublattice;
    use crate::moduli::enumerate_trivalent;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

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

    fn omega4() -> TwoForm {
        TwoForm::from_i64(&[
            &[0, 1, 1, 1],
            &[-1, 0, 0, 0],
            &[-1, 0, 0, 0],
            &[-1, 0, 0, 0],
        ])
        .unwrap()
    }

    fn k_omega4() -> Sublattice {
        let mut gens = Vec::new();
        for (i, j) in [(1usize, 2usize), (1, 3), (2, 3)] {
            let mut g = vec![Int::zero(); 6];
            g[crate::lattice::pair_index(i, j, 4)] = Int::from(1);
            gens.push(g);
        }
        Sublattice::from_generators(6, &gens)
    }

    #[test]
    fn one_vertex_base_case() {
        // Single vertex, point constraints via covector bases: the sink
        // value is the wedge of the leaf polyvectors, and equals the
        // determinant.
        let degree = Degree::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let specs = vec![
            ConstraintSpec::Point,
            ConstraintSpec::Free,
            ConstraintSpec::Point,
        ];
        let p = GeneralProblem::new(degree.clone(), specs).unwrap();
        let leaves = pluecker_leaves(&p);
        let types = enumerate_trivalent(3).unwrap();
        let sink_value = complex_mult_sink(&types[0], &degree, &leaves, 0);
        let det_value = complex_mult_det(&types[0], &Problem::General(p));
        assert_eq!(sink_value, det_value);
        assert!(!sink_value.is_zero());
    }

    #[test]
    fn single_vertex_omega_problem_by_hand() {
        // Δ = {e1, e2, −e1−e2}, standard area form, e0 the third end,
        // δ = e1: multiplicity 1 (2×2 determinant by hand).
        let degree = Degree::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let omega = TwoForm::from_i64(&[&[0, 1], &[-1, 0]]).unwrap();
        let p = OmegaProblem::new(
            degree.clone(),
            omega,
            2,
            LatticeVector::from_i64(&[1, 0]),
            Vec::new(),
        )
        .unwrap();
        let types = enumerate_trivalent(3).unwrap();
        let m = complex_mult_det(&types[0], &Problem::Omega(p));
        assert_eq!(m, Int::from(1));
    }

    #[test]
    fn omega_leaves_reproduce_the_product_formula() {
        let degree = lines_in_r4();
        let omega = TwoForm::from_i64(&[
            &[0, -68, -53, 86],
            &[68, 0, 46, -43],
            &[53, -46, 0, 30],
            &[-86, 43, -30, 0],
        ])
        .unwrap();
        let delta = LatticeVector::from_i64(&[0, 1, 0, 0]);
        let p =
            OmegaProblem::new(degree.clone(), omega.clone(), 0, delta.clone(), Vec::new()).unwrap();
        let scale = p.e0_pairing().abs();
        let leaves = omega_leaves(&p);
        for t in enumerate_trivalent(5).unwrap() {
            let mut product = scale.clone();
            for v in 0..t.num_vertices() {
                product *= omega.eval_bivector(&t.vertex_bivector(&degree, v)).abs();
            }
            // sink at the vertex adjacent to e0
            let sink = t.vertex_of_leaf(0);
            assert_eq!(complex_mult_sink(&t, &degree, &leaves, sink), product);
            // and the determinant route agrees
            let det = complex_mult_det(&t, &Problem::Omega(p.clone()));
            assert_eq!(det, product);
        }
    }

    #[test]
    fn sink_choice_does_not_matter() {
        let degree = lines_in_r4();
        let specs = vec![
            ConstraintSpec::Point,
            ConstraintSpec::Free,
            ConstraintSpec::Free,
            ConstraintSpec::Free,
            ConstraintSpec::Point,
        ];
        let p = GeneralProblem::new(degree.clone(), specs).unwrap();
        let leaves = pluecker_leaves(&p);
        for t in enumerate_trivalent(5).unwrap() {
            let values: Vec<Int> = (0..t.num_vertices())
                .map(|sink| complex_mult_sink(&t, &degree, &leaves, sink))
                .collect();
            assert!(values.windows(2).all(|w| w[0] == w[1]));
        }
    }

    #[test]
    fn refined_mult_of_the_two_point_types() {
        let degree = lines_in_r4();
        let omega = omega4();
        let ring = GroupRing::new(4, k_omega4());
        // (q12 − q12^-1)(q13 − q13^-1)(q14 − q14^-1)
        let e = |i: usize| LatticeVector::basis(4, i);
        let expected = [1usize, 2, 3]
            .iter()
            .map(|&j| ring.binomial(&Bivector::wedge(&e(0), &e(j)).unwrap()))
            .fold(ring.one(), |acc, b| ring.mul(&acc, &b));
        let t12345 = CombinatorialType::from_splits(5, vec![0b11100, 0b11000]).unwrap();
        assert_eq!(t12345.display_name(None), "12//3//45");
        let got = refined_mult(&t12345, &degree, &omega, &ring).unwrap();
        assert_eq!(got, expected);
        let t13245 = CombinatorialType::from_splits(5, vec![0b11010, 0b11000]).unwrap();
        assert_eq!(t13245.display_name(None), "13//2//45");
        let got = refined_mult(&t13245, &degree, &omega, &ring).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn flat_vertex_gives_zero() {
        let degree = Degree::from_i64(&[&[1, 0], &[-1, 0], &[2, 0], &[-2, 0]]).unwrap();
        let omega = TwoForm::from_i64(&[&[0, 1], &[-1, 0]]).unwrap();
        let ring = GroupRing::with_trivial_quotient(2);
        let t = CombinatorialType::from_splits(4, vec![0b0110]).unwrap();
        assert!(refined_mult(&t, &degree, &omega, &ring).unwrap().is_zero());
    }

    #[test]
    fn sign_undefined_outside_the_quotient_is_an_error() {
        let degree = lines_in_r4();
        let omega = omega4();
        // trivial quotient: ω4(e2∧e3) = 0 but e2∧e3 is not killed
        let ring = GroupRing::with_trivial_quotient(4);
        let t = CombinatorialType::from_splits(5, vec![0b00110, 0b11000]).unwrap();
        assert!(matches!(
            refined_mult(&t, &degree, &omega, &ring),
            Err(Error::SignUndefined)
        ));
    }

    #[test]
    fn marked_factor_and_intersection_index() {
        // Δ ⊔ {0}: a marked point on a planar degree.
        let degree = Degree::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[0, 0]]).unwrap();
        let phi = Covector::from_i64(&[1, 2]);
        // φ(e1) = 1, φ(e2) = 2, φ(e3) = −3
        assert_eq!(intersection_index(&phi, &degree), Int::from(3));
        // p = 0 gives an empty product
        let t0 = CombinatorialType::from_splits(4, vec![0b1100]).unwrap();
        assert_eq!(marked_factor(&t0, &degree, &[]), Int::from(1));
        // marked point adjacent to the e1 end: slope ±e1, factor |φ(e1)| = 1
        let t = CombinatorialType::from_splits(4, vec![0b0110]).unwrap();
        assert_eq!(t.vertex_of_leaf(3), t.vertex_of_leaf(0));
        assert_eq!(marked_factor(&t, &degree, &[(3, phi.clone())]), Int::from(1));
        // vanishing pairing with the local slope kills the factor
        let phi_perp = Covector::from_i64(&[0, 1]);
        assert!(marked_factor(&t, &degree, &[(3, phi_perp)]).is_zero());
    }

    #[test]
    fn wrong_dispatch_is_zero_not_an_error() {
        let degree = lines_in_r4();
        // both point constraints behind one edge of 12//3//45
        let specs = vec![
            ConstraintSpec::Point,
            ConstraintSpec::Point,
            ConstraintSpec::Free,
            ConstraintSpec::Free,
            ConstraintSpec::Free,
        ];
        let p = GeneralProblem::new(degree.clone(), specs).unwrap();
        let leaves = pluecker_leaves(&p);
        let t = CombinatorialType::from_splits(5, vec![0b11100, 0b11000]).unwrap();
        for sink in 0..t.num_vertices() {
            assert!(complex_mult_sink(&t, &degree, &leaves, sink).is_zero());
        }
        assert!(complex_mult_det(&t, &Problem::General(p)).is_zero());
    }

    #[test]
    fn sink_agrees_with_determinant_on_random_problems() {
        let mut rng = StdRng::seed_from_u64(101);
        let mut checked = 0;
        while checked < 60 {
            let r = rng.gen_range(2..=4usize);
            let n = rng.gen_range(3..=6usize);
            let Some((degree, specs)) = random_problem(&mut rng, r, n) else {
                continue;
            };
            let Ok(p) = GeneralProblem::new(degree.clone(), specs) else {
                continue;
            };
            let leaves = pluecker_leaves(&p);
            let types = enumerate_trivalent(n).unwrap();
            let t = &types[rng.gen_range(0..types.len())];
            let sink = rng.gen_range(0..t.num_vertices());
            let s = complex_mult_sink(t, &degree, &leaves, sink);
            let d = complex_mult_det(t, &Problem::General(p));
            assert_eq!(s, d);
            checked += 1;
        }
    }

    fn random_slopes(rng: &mut StdRng, r: usize, n: usize) -> Option<Vec<LatticeVector>> {
        let mut slopes: Vec<LatticeVector> = (0..n - 1)
            .map(|_| {
                LatticeVector::new((0..r).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect())
            })
            .collect();
        let last = slopes
            .iter()
            .fold(LatticeVector::zero(r), |acc, s| acc.add(s))
            .neg();
        slopes.push(last);
        if slopes.iter().any(|s| s.is_zero()) {
            return None;
        }
        Some(slopes)
    }

    fn random_problem(
        rng: &mut StdRng,
        r: usize,
        n: usize,
    ) -> Option<(Degree, Vec<ConstraintSpec>)> {
        let slopes = random_slopes(rng, r, n)?;
        let degree = Degree::unlabeled(slopes).ok()?;
        // distribute coranks c_e ≤ r−1 summing to n + r − 3
        let mut corks = vec![0usize; n];
        let mut remaining = n + r - 3;
        let mut guard = 0;
        while remaining > 0 {
            guard += 1;
            if guard > 10_000 {
                return None;
            }
            let i = rng.gen_range(0..n);
            if corks[i] < r - 1 {
                corks[i] += 1;
                remaining -= 1;
            }
        }
        let mut specs = Vec::with_capacity(n);
        for leaf in 0..n {
            if corks[leaf] == 0 {
                specs.push(ConstraintSpec::Free);
                continue;
            }
            // random covectors vanishing on the slope, resampled until the
            // block has the requested corank
            let slope = degree.slope(leaf);
            let dual =
                Sublattice::from_generators(r, &[slope.coords().to_vec()]).orthogonal_dual();
            let dual_rows = dual.basis_rows();
            let mut done = false;
            for _ in 0..40 {
                let ms: Vec<Covector> = (0..corks[leaf])
                    .map(|_| {
                        let mut acc = vec![Int::zero(); r];
                        for row in &dual_rows {
                            let c = Int::from(rng.gen_range(-4i64..=4));
                            for (a, b) in acc.iter_mut().zip(row) {
                                *a += &c * b;
                            }
                        }
                        Covector::new(acc)
                    })
                    .collect();
                let rank = crate::lattice::IntMat::from_rows(
                    r,
                    &ms.iter().map(|m| m.coords().to_vec()).collect::<Vec<_>>(),
                )
                .rank();
                if rank == corks[leaf] {
                    specs.push(ConstraintSpec::Covectors(ms));
                    done = true;
                    break;
                }
            }
            if !done {
                return None;
            }
        }
        Some((degree, specs))
    }
}
