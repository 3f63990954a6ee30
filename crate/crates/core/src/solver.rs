//! Brute-force solving of the enumerative problems over all combinatorial
//! types, assembly of the refined invariants with their signs, and the
//! wall / continuity / limit verification routines.

use num::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::evaluation::{
    apply_rational, build_matrix, build_matrix_with_edge_order, leaf_position, moment_of_end,
    wall_adapted_edge_order, GeneralProblem, Instance, OmegaProblem, Problem,
};
use crate::group_ring::{GroupRing, RingElement};
use crate::lattice::{Bivector, Covector, LatticeVector, Sublattice, TwoForm};
use crate::moduli::{
    enumerate_trivalent, enumerate_walls, vertex_types, CombinatorialType, Degree, LeafSet,
};
use crate::multiplicity::{complex_mult_det, marked_factor, refined_mult};
use crate::{Int, Rat};

/// Solving and sampling knobs. All randomness is seeded; equal seeds give
/// byte-identical runs.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub trials: usize,
    pub seed: u64,
    /// Bound on rejected (non-generic) instances before giving up.
    pub max_resamples: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            trials: 20,
            seed: 0,
            max_resamples: 64,
        }
    }
}

/// One rational curve solving an instance: a combinatorial type together
/// with the root position and the (strictly positive) bounded-edge lengths.
#[derive(Clone, Debug)]
pub struct Solution {
    pub type_index: usize,
    pub key: Vec<LeafSet>,
    pub root: Vec<Rat>,
    pub lengths: Vec<Rat>,
}

/// Solve one instance by exact linear algebra on every trivalent cone.
/// Returns the solutions in canonical type order.
///
/// Degeneracy is detected exactly and reported as [`Error::NonGeneric`]:
/// either a solution hits a wall (an edge length is exactly zero), or the
/// targets lie in the image of a cone whose evaluation map is singular.
pub fn solve(
    problem: &Problem,
    instance: &Instance,
    types: &[CombinatorialType],
) -> Result<Vec<Solution>> {
    let degree = problem.degree();
    let rows = problem.rows();
    let r = degree.rank();
    let per_type: Vec<Result<Option<Solution>>> = types
        .par_iter()
        .enumerate()
        .map(|(type_index, tree)| {
            let em = build_matrix(tree, degree, &rows);
            if em.det().is_zero() {
                let (plain, augmented) = em.matrix().rank_augmented(instance.targets());
                if plain == augmented {
                    return Err(Error::NonGeneric(format!(
                        "targets lie in the image of the degenerate cone {}",
                        tree.display_name(Some(degree))
                    )));
                }
                return Ok(None);
            }
            let x = em
                .matrix()
                .solve_rational(instance.targets())
                .expect("matrix with nonzero determinant");
            let lengths = x[r..].to_vec();
            if lengths.iter().any(|l| l.is_zero()) {
                return Err(Error::NonGeneric(format!(
                    "instance sits on a wall of {}",
                    tree.display_name(Some(degree))
                )));
            }
            if lengths.iter().all(|l| l.numer().is_positive()) {
                Ok(Some(Solution {
                    type_index,
                    key: tree.key().to_vec(),
                    root: x[..r].to_vec(),
                    lengths,
                }))
            } else {
                Ok(None)
            }
        })
        .collect();
    let mut solutions = Vec::new();
    for entry in per_type {
        if let Some(sol) = entry? {
            solutions.push(sol);
        }
    }
    Ok(solutions)
}

/// Re-evaluate a solution against the instance targets; exact equality.
pub fn reproduces_targets(
    problem: &Problem,
    instance: &Instance,
    types: &[CombinatorialType],
    sol: &Solution,
) -> bool {
    let degree = problem.degree();
    let tree = &types[sol.type_index];
    problem
        .rows()
        .iter()
        .zip(instance.targets())
        .all(|((leaf, m), target)| {
            let pos = leaf_position(tree, degree, &sol.root, &sol.lengths, *leaf);
            apply_rational(m, &pos) == *target
        })
}

/// Tropical Menelaus relation: the moments of all ends of a positioned
/// curve sum to zero.
pub fn menelaus_sum(
    degree: &Degree,
    omega: &TwoForm,
    types: &[CombinatorialType],
    sol: &Solution,
) -> Rat {
    let tree = &types[sol.type_index];
    (0..degree.len())
        .map(|leaf| moment_of_end(tree, degree, omega, &sol.root, &sol.lengths, leaf))
        .sum()
}

/// Integer targets drawn uniformly from `[−10^6, 10^6]`, evaluated through
/// each leaf's constraint rows. Degeneracy is handled by rejection.
pub fn sample_instance(problem: &Problem, rng: &mut ChaCha20Rng) -> Instance {
    let degree = problem.degree();
    let r = degree.rank();
    let points: Vec<Vec<Rat>> = (0..degree.len())
        .map(|_| {
            (0..r)
                .map(|_| Rat::from_integer(Int::from(rng.gen_range(-1_000_000i64..=1_000_000))))
                .collect()
        })
        .collect();
    Instance::from_points(&problem.rows(), &points)
}

/// Sample until the instance is generic; returns the instance, its
/// solutions and the number of rejected samples.
pub fn solve_generic(
    problem: &Problem,
    types: &[CombinatorialType],
    rng: &mut ChaCha20Rng,
    max_resamples: usize,
) -> Result<(Instance, Vec<Solution>, usize)> {
    for attempt in 0..max_resamples {
        let instance = sample_instance(problem, rng);
        match solve(problem, &instance, types) {
            Ok(solutions) => return Ok((instance, solutions, attempt)),
            Err(Error::NonGeneric(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NonGenericExhausted(max_resamples))
}

/// A primitive direction in `N/⟨n_{e0}⟩` with `ω(n_{e0}, δ) ≠ 0`, sampled
/// from small integer lifts.
pub fn sample_delta(
    degree: &Degree,
    omega: &TwoForm,
    e0: usize,
    rng: &mut ChaCha20Rng,
) -> LatticeVector {
    let r = degree.rank();
    let n = degree.slope(e0).primitive_part();
    loop {
        let delta =
            LatticeVector::new((0..r).map(|_| Int::from(rng.gen_range(-9i64..=9))).collect());
        if delta.is_zero() {
            continue;
        }
        // content 1 makes the class of δ primitive in the quotient
        let wedge = Bivector::wedge(&n, &delta).expect("ranks agree");
        if !wedge.content().is_one() {
            continue;
        }
        if omega.eval_pair(degree.slope(e0), &delta).is_zero() {
            continue;
        }
        return delta;
    }
}

/// `K_ω = ⟨π_V : ω(π_V) = 0⟩` over all trivalent vertex types of the
/// degree.
pub fn k_omega(degree: &Degree, omega: &TwoForm) -> Sublattice {
    let m = degree.rank() * (degree.rank() - 1) / 2;
    let gens: Vec<Vec<Int>> = vertex_types(degree)
        .into_iter()
        .filter(|vt| !vt.bivector.is_zero() && omega.eval_bivector(&vt.bivector).is_zero())
        .map(|vt| vt.bivector.coords().to_vec())
        .collect();
    Sublattice::from_generators(m, &gens)
}

/// Record of one randomized trial inside an invariant computation.
#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub delta: Option<Vec<Int>>,
    pub rejected_samples: usize,
    pub solution_names: Vec<String>,
}

/// An invariant computation together with everything needed to audit it:
/// the per-trial solutions, the sign table, the quotient and the
/// conventions used.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub ring: GroupRing,
    pub polynomial: RingElement,
    pub trials: Vec<TrialRecord>,
    pub epsilon: Option<Vec<(String, i8)>>,
    pub k_basis: Vec<Vec<Int>>,
    pub metadata: Vec<(String, String)>,
}

impl InvariantReport {
    pub fn printed(&self) -> String {
        self.ring.canonical_print(&self.polynomial)
    }
}

fn two_form_metadata(omega: &TwoForm) -> String {
    let r = omega.rank();
    (0..r)
        .map(|i| {
            let row: Vec<String> = (0..r).map(|j| omega.entry(i, j).to_string()).collect();
            format!("[{}]", row.join(", "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// The refined count for the moment problem `P(ω, e0)`: the sum of
/// `∏_i |φ_i(δ_i)| · B_Γ^{K_ω}` over the solutions, re-solved for every
/// trial and every given `δ`. All trials must agree or the run aborts with
/// an invariance violation.
pub fn invariant_omega(
    degree: &Degree,
    omega: &TwoForm,
    e0: usize,
    deltas: &[LatticeVector],
    phi: &[(usize, Covector)],
    config: &SolverConfig,
) -> Result<InvariantReport> {
    assert!(!deltas.is_empty(), "at least one δ is required");
    let ring = GroupRing::new(degree.rank(), k_omega(degree, omega));
    let types = enumerate_trivalent(degree.len())?;
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    let mut polynomial: Option<RingElement> = None;
    let mut trials = Vec::new();
    for delta in deltas {
        let problem = OmegaProblem::new(
            degree.clone(),
            omega.clone(),
            e0,
            delta.clone(),
            phi.to_vec(),
        )?;
        let wrapped = Problem::Omega(problem);
        for _ in 0..config.trials {
            let (_, solutions, rejected) =
                solve_generic(&wrapped, &types, &mut rng, config.max_resamples)?;
            let mut sum = ring.zero();
            let mut names = Vec::new();
            for sol in &solutions {
                let tree = &types[sol.type_index];
                let b = refined_mult(tree, degree, omega, &ring)?;
                let factor = marked_factor(tree, degree, phi);
                sum = ring.add(&sum, &ring.scale(&b, &factor));
                names.push(tree.display_name(Some(degree)));
            }
            match &polynomial {
                None => polynomial = Some(sum),
                Some(prev) if *prev == sum => {}
                Some(prev) => {
                    return Err(Error::InvarianceViolation(format!(
                        "trial disagreement: {} vs {}",
                        ring.canonical_print(prev),
                        ring.canonical_print(&sum)
                    )))
                }
            }
            trials.push(TrialRecord {
                delta: Some(delta.coords().to_vec()),
                rejected_samples: rejected,
                solution_names: names,
            });
        }
    }
    Ok(InvariantReport {
        polynomial: polynomial.expect("at least one trial ran"),
        trials,
        epsilon: None,
        k_basis: ring.group().sublattice().basis_rows(),
        metadata: vec![
            ("problem".into(), "moment".into()),
            ("omega".into(), two_form_metadata(omega)),
            ("e0".into(), degree.label(e0).to_string()),
            (
                "sign convention".into(),
                "vertex bivectors oriented so the problem 2-form is positive".into(),
            ),
        ],
        ring,
    })
}

/// Per-type signs for the affine-constraint problem: the orientation ratio
/// of the two composed evaluation maps on each cone, i.e. the sign of the
/// product of their determinants in a common domain basis. The
/// compatibility hypothesis (`m^{(L_e)} = 0 ⇒ m^{ω,e0} = 0`) is checked
/// exhaustively over all types; the first type carrying both orientations
/// is normalised to `+1`.
pub fn epsilon_signs(
    general: &GeneralProblem,
    sign_side: &OmegaProblem,
    types: &[CombinatorialType],
) -> Result<Vec<i8>> {
    let degree = general.degree();
    let general_rows = general.rows();
    let omega_rows = sign_side.rows();
    let dets: Vec<(Int, Int)> = types
        .par_iter()
        .map(|tree| {
            let dg = build_matrix(tree, degree, &general_rows).det().clone();
            let dw = build_matrix(tree, degree, &omega_rows).det().clone();
            (dg, dw)
        })
        .collect();
    for (tree, (dg, dw)) in types.iter().zip(&dets) {
        if dg.is_zero() && !dw.is_zero() {
            return Err(Error::HypothesisViolation(tree.display_name(Some(degree))));
        }
    }
    let mut eps: Vec<i8> = dets
        .iter()
        .map(|(dg, dw)| {
            if dg.is_zero() || dw.is_zero() {
                // such a type has vanishing refined multiplicity; the sign
                // is immaterial
                1
            } else if (dg * dw).is_positive() {
                1
            } else {
                -1
            }
        })
        .collect();
    if let Some(first) = dets
        .iter()
        .position(|(dg, dw)| !dg.is_zero() && !dw.is_zero())
    {
        if eps[first] < 0 {
            for e in eps.iter_mut() {
                *e = -*e;
            }
        }
    }
    Ok(eps)
}

/// The refined count for the affine-constraint problem: the sum of
/// `ε_C · ∏_i |φ_i(δ_i)| · B_C^{K_ω}` over the solutions of each trial.
/// `e0` and `δ` parametrise the moment problem used for the signs; the
/// result is well defined up to the global sign normalisation.
pub fn invariant_general(
    general: &GeneralProblem,
    omega: &TwoForm,
    e0: usize,
    delta: &LatticeVector,
    config: &SolverConfig,
) -> Result<InvariantReport> {
    let degree = general.degree();
    let ring = GroupRing::new(degree.rank(), k_omega(degree, omega));
    let types = enumerate_trivalent(degree.len())?;
    let phi = general.phi_rows();
    let sign_side = OmegaProblem::new(
        degree.clone(),
        omega.clone(),
        e0,
        delta.clone(),
        phi.clone(),
    )?;
    let eps = epsilon_signs(general, &sign_side, &types)?;
    let wrapped = Problem::General(general.clone());
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    let mut polynomial: Option<RingElement> = None;
    let mut trials = Vec::new();
    for _ in 0..config.trials {
        let (_, solutions, rejected) =
            solve_generic(&wrapped, &types, &mut rng, config.max_resamples)?;
        let mut sum = ring.zero();
        let mut names = Vec::new();
        for sol in &solutions {
            let tree = &types[sol.type_index];
            let b = refined_mult(tree, degree, omega, &ring)?;
            let mut factor = marked_factor(tree, degree, &phi);
            if eps[sol.type_index] < 0 {
                factor = -factor;
            }
            sum = ring.add(&sum, &ring.scale(&b, &factor));
            names.push(tree.display_name(Some(degree)));
        }
        match &polynomial {
            None => polynomial = Some(sum),
            Some(prev) if *prev == sum => {}
            Some(prev) => {
                return Err(Error::InvarianceViolation(format!(
                    "trial disagreement: {} vs {}",
                    ring.canonical_print(prev),
                    ring.canonical_print(&sum)
                )))
            }
        }
        trials.push(TrialRecord {
            delta: None,
            rejected_samples: rejected,
            solution_names: names,
        });
    }
    let epsilon_table = types
        .iter()
        .zip(&eps)
        .map(|(t, &e)| (t.display_name(Some(degree)), e))
        .collect();
    Ok(InvariantReport {
        polynomial: polynomial.expect("at least one trial ran"),
        trials,
        epsilon: Some(epsilon_table),
        k_basis: ring.group().sublattice().basis_rows(),
        metadata: vec![
            ("problem".into(), "affine constraints".into()),
            ("omega".into(), two_form_metadata(omega)),
            ("e0".into(), degree.label(e0).to_string()),
            (
                "sign convention".into(),
                "ε = sign(det ev_general · det ev_moment), first carried type +1; \
                 the invariant is defined up to this global sign"
                    .into(),
            ),
        ],
        ring,
    })
}

/// Outcome of the wall checks for one degree.
#[derive(Clone, Debug, Default)]
pub struct WallReport {
    pub walls_checked: usize,
    /// Walls on which the quotient absorbed a vanishing `ω(π)` on some side.
    pub degenerate_walls: usize,
}

/// Around every wall: (a) the three signed determinants of the adjacent
/// cones sum to zero, the matrices sharing all columns but the splitting
/// edge; (b) the refined three-term identity holds in `ℤ[Λ²N/K_ω]`, the
/// side of each resolution read off the sign of its moment-problem
/// determinant.
pub fn check_wall_identities(
    problem: &Problem,
    sign_side: &OmegaProblem,
    ring: &GroupRing,
) -> Result<WallReport> {
    let degree = problem.degree();
    let omega = sign_side.omega();
    let rows = problem.rows();
    let omega_rows = sign_side.rows();
    let mut report = WallReport::default();
    for wall in enumerate_walls(degree.len())? {
        let name = wall.tree().display_name(Some(degree));
        let resolutions = wall.resolutions();
        // (a) determinant sum over the wall, for this problem's rows
        let mut det_sum = Int::zero();
        for (tree, new_split) in &resolutions {
            let order = wall_adapted_edge_order(tree, *new_split);
            det_sum += build_matrix_with_edge_order(tree, degree, &rows, &order)
                .det()
                .clone();
        }
        if !det_sum.is_zero() {
            return Err(Error::WallIdentity(format!(
                "{name}: determinant sum is {det_sum}"
            )));
        }
        // (b) refined identity with sides from the moment-problem signs
        let mut refined_sum = ring.zero();
        let mut saw_degenerate = false;
        for (tree, new_split) in &resolutions {
            let order = wall_adapted_edge_order(tree, *new_split);
            let det = build_matrix_with_edge_order(tree, degree, &omega_rows, &order)
                .det()
                .clone();
            let b = refined_mult(tree, degree, omega, ring)?;
            if det.is_zero() {
                if !b.is_zero() {
                    return Err(Error::WallIdentity(format!(
                        "{name}: zero side with nonzero refined multiplicity"
                    )));
                }
                saw_degenerate = true;
                continue;
            }
            let signed = if det.is_negative() { ring.neg(&b) } else { b };
            refined_sum = ring.add(&refined_sum, &signed);
        }
        if !refined_sum.is_zero() {
            return Err(Error::WallIdentity(format!(
                "{name}: refined three-term identity fails: {}",
                ring.canonical_print(&refined_sum)
            )));
        }
        report.walls_checked += 1;
        if saw_degenerate {
            report.degenerate_walls += 1;
        }
    }
    Ok(report)
}

/// Compare two moment-problem invariants across a face relation of the
/// 2-form fan: the finer invariant must project onto the coarser one.
pub fn check_continuity(
    degree: &Degree,
    omega_fine: &TwoForm,
    omega_coarse: &TwoForm,
    e0: usize,
    config: &SolverConfig,
) -> Result<bool> {
    let k_fine = k_omega(degree, omega_fine);
    let k_coarse = k_omega(degree, omega_coarse);
    if !k_fine.is_subset_of(&k_coarse) {
        return Err(Error::Other(
            "K(fine) is not contained in K(coarse): the 2-forms are not face-adjacent".into(),
        ));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed ^ 0x5eed);
    let deltas = [sample_delta(degree, omega_fine, e0, &mut rng)];
    let fine = invariant_omega(degree, omega_fine, e0, &deltas, &[], config)?;
    let deltas = [sample_delta(degree, omega_coarse, e0, &mut rng)];
    let coarse = invariant_omega(degree, omega_coarse, e0, &deltas, &[], config)?;
    let projected = fine.ring.project(&coarse.ring, &fine.polynomial)?;
    Ok(projected == coarse.polynomial)
}

/// The `q → 1` limit relation: specialise the refined sum through `ω`,
/// divide by `(t − t^{-1})^{|Δ|−2}`, evaluate at 1, rescale by
/// `|ω(n_{e0}, δ)|`, and compare against the complex count of the same
/// instance computed through the determinant route.
pub fn q1_limit_check(
    degree: &Degree,
    omega: &TwoForm,
    e0: usize,
    delta: &LatticeVector,
    config: &SolverConfig,
) -> Result<bool> {
    let types = enumerate_trivalent(degree.len())?;
    let ring = GroupRing::new(degree.rank(), k_omega(degree, omega));
    let problem = OmegaProblem::new(degree.clone(), omega.clone(), e0, delta.clone(), Vec::new())?;
    let scale = problem.e0_pairing().abs();
    let wrapped = Problem::Omega(problem);
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    let mut refined_total = ring.zero();
    let mut complex_total = Int::zero();
    let (_, solutions, _) = solve_generic(&wrapped, &types, &mut rng, config.max_resamples)?;
    for sol in &solutions {
        let tree = &types[sol.type_index];
        refined_total = ring.add(&refined_total, &refined_mult(tree, degree, omega, &ring)?);
        complex_total += complex_mult_det(tree, &wrapped);
    }
    let specialised = ring.specialize_by_form(omega, &refined_total)?;
    let limit = specialised.limit_q_to_one(degree.len() - 2)?;
    Ok(Rat::from_integer(scale) * limit == Rat::from_integer(complex_total))
}

/// Connected components of the wall-adjacency graph restricted to the
/// types flagged nonzero. Two types are adjacent when they share a wall,
/// i.e. their split families agree except for one split each.
pub fn greg_components(types: &[CombinatorialType], nonzero: &[bool]) -> Vec<Vec<usize>> {
    assert_eq!(types.len(), nonzero.len());
    let indices: Vec<usize> = (0..types.len()).filter(|&i| nonzero[i]).collect();
    let mut component = vec![usize::MAX; types.len()];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for &start in &indices {
        if component[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        component[start] = id;
        while let Some(i) = stack.pop() {
            members.push(i);
            for &j in &indices {
                if component[j] == usize::MAX && shares_a_wall(types[i].key(), types[j].key()) {
                    component[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}

fn shares_a_wall(a: &[LeafSet], b: &[LeafSet]) -> bool {
    if a.len() != b.len() || a == b {
        return false;
    }
    let common = a.iter().filter(|s| b.contains(s)).count();
    common + 1 == a.len()
}
