//! Built-in regression data: the worked examples for tropical lines in ℝ⁴
//! and their expected refined invariants, rechecked end to end on demand.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

use tropcount_core::evaluation::{ConstraintSpec, GeneralProblem, Problem};
use tropcount_core::group_ring::{GroupRing, RingElement};
use tropcount_core::lattice::{Bivector, Covector, LatticeVector, TwoForm};
use tropcount_core::moduli::{enumerate_trivalent, Degree};
use tropcount_core::multiplicity::{complex_mult_det, refined_mult};
use tropcount_core::solver::{
    check_continuity, invariant_general, invariant_omega, k_omega, sample_delta, SolverConfig,
};
use tropcount_core::Int;

pub fn lines_in_r4() -> Degree {
    Degree::from_i64(&[
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
        &[-1, -1, -1, -1],
    ])
    .unwrap()
}

fn form(rows: &[&[i64]]) -> TwoForm {
    TwoForm::from_i64(rows).unwrap()
}

pub fn omega_1() -> TwoForm {
    form(&[
        &[0, -68, -53, 86],
        &[68, 0, 46, -43],
        &[53, -46, 0, 30],
        &[-86, 43, -30, 0],
    ])
}

pub fn omega_2() -> TwoForm {
    form(&[
        &[0, 94, 23, 21],
        &[-94, 0, 86, 11],
        &[-23, -86, 0, -27],
        &[-21, -11, 27, 0],
    ])
}

pub fn omega_0() -> TwoForm {
    form(&[
        &[0, 0, 86, -20],
        &[0, 0, -4, -22],
        &[-86, 4, 0, -56],
        &[20, 22, 56, 0],
    ])
}

pub fn omega_plus() -> TwoForm {
    form(&[
        &[0, 1, 86, -20],
        &[-1, 0, -4, -22],
        &[-86, 4, 0, -56],
        &[20, 22, 56, 0],
    ])
}

pub fn omega_minus() -> TwoForm {
    form(&[
        &[0, -1, 86, -20],
        &[1, 0, -4, -22],
        &[-86, 4, 0, -56],
        &[20, 22, 56, 0],
    ])
}

pub fn omega_3() -> TwoForm {
    form(&[
        &[0, 20, -51, 38],
        &[-20, 0, -4, 13],
        &[51, 4, 0, -24],
        &[-38, -13, 24, 0],
    ])
}

pub fn omega_4() -> TwoForm {
    form(&[
        &[0, 1, 1, 1],
        &[-1, 0, 0, 0],
        &[-1, 0, 0, 0],
        &[-1, 0, 0, 0],
    ])
}

pub fn general_example() -> GeneralProblem {
    GeneralProblem::new(
        lines_in_r4(),
        vec![
            ConstraintSpec::Covectors(vec![
                Covector::from_i64(&[0, 3780, -315, -2543]),
                Covector::from_i64(&[0, -6958, 7243, 3904]),
            ]),
            ConstraintSpec::Covectors(vec![Covector::from_i64(&[-25, 0, -16, -72])]),
            ConstraintSpec::Covectors(vec![Covector::from_i64(&[-4387, 564, 0, 2857])]),
            ConstraintSpec::Covectors(vec![Covector::from_i64(&[-720, -843, -718, 0])]),
            ConstraintSpec::Covectors(vec![Covector::from_i64(&[-1091, -562, 653, 1000])]),
        ],
    )
    .expect("the shipped constraint data balances")
}

pub fn two_point_lines() -> GeneralProblem {
    GeneralProblem::new(
        lines_in_r4(),
        vec![
            ConstraintSpec::Point,
            ConstraintSpec::Free,
            ConstraintSpec::Free,
            ConstraintSpec::Free,
            ConstraintSpec::Point,
        ],
    )
    .expect("point constraints balance")
}

fn poly(ring: &GroupRing, terms: &[(i64, [i64; 6])]) -> RingElement {
    let mut out = ring.zero();
    for (c, exps) in terms {
        let exp: Vec<Int> = exps.iter().map(|&e| Int::from(e)).collect();
        out = ring.add(&out, &ring.monomial(&exp, Int::from(*c)));
    }
    out
}

pub fn expected_omega1(ring: &GroupRing) -> RingElement {
    poly(
        ring,
        &[
            (-1, [1, 1, 1, 1, 1, 1]),
            (1, [-1, -1, -1, -1, -1, -1]),
            (2, [1, 1, 1, 1, 1, -1]),
            (-2, [-1, -1, -1, -1, -1, 1]),
            (-1, [1, 1, 1, 1, -1, -1]),
            (1, [-1, -1, -1, -1, 1, 1]),
            (1, [1, 1, 1, -1, -1, 1]),
            (-1, [-1, -1, -1, 1, 1, -1]),
            (-1, [1, 1, -1, -1, -1, -1]),
            (1, [-1, -1, 1, 1, 1, 1]),
            (-1, [1, -1, 1, -1, 1, 1]),
            (1, [-1, 1, -1, 1, -1, -1]),
            (1, [1, -1, -1, -1, -1, 1]),
            (-1, [-1, 1, 1, 1, 1, -1]),
        ],
    )
}

pub fn expected_omega2_e1(ring: &GroupRing) -> RingElement {
    poly(
        ring,
        &[
            (1, [1, 1, 1, 1, 1, -1]),
            (-1, [-1, -1, -1, -1, -1, 1]),
            (-1, [1, 1, -1, 1, -1, -1]),
            (1, [-1, -1, 1, -1, 1, 1]),
            (-1, [1, 1, 1, -1, -1, -1]),
            (1, [-1, -1, -1, 1, 1, 1]),
            (-1, [1, -1, 1, -1, 1, 1]),
            (1, [-1, 1, -1, 1, -1, -1]),
            (1, [1, 1, 1, -1, -1, 1]),
            (-1, [-1, -1, -1, 1, 1, -1]),
            (1, [1, -1, -1, -1, -1, -1]),
            (-1, [-1, 1, 1, 1, 1, 1]),
        ],
    )
}

pub fn expected_omega2_e2(ring: &GroupRing) -> RingElement {
    poly(
        ring,
        &[
            (1, [1, 1, 1, 1, 1, -1]),
            (-1, [-1, -1, -1, -1, -1, 1]),
            (-1, [1, 1, -1, 1, -1, -1]),
            (1, [-1, -1, 1, -1, 1, 1]),
            (-1, [1, 1, 1, -1, -1, -1]),
            (1, [-1, -1, -1, 1, 1, 1]),
            (-1, [1, -1, 1, -1, 1, 1]),
            (1, [-1, 1, -1, 1, -1, -1]),
            (1, [1, 1, -1, -1, -1, -1]),
            (-1, [-1, -1, 1, 1, 1, 1]),
            (1, [1, -1, 1, -1, -1, 1]),
            (-1, [-1, 1, -1, 1, 1, -1]),
        ],
    )
}

pub fn expected_omega0(ring: &GroupRing) -> RingElement {
    poly(
        ring,
        &[
            (1, [0, 1, 1, 1, 1, 1]),
            (-1, [0, -1, -1, -1, -1, -1]),
            (-1, [0, 1, 1, -1, -1, 1]),
            (1, [0, -1, -1, 1, 1, -1]),
            (1, [0, -1, 1, -1, -1, 1]),
            (-1, [0, 1, -1, 1, 1, -1]),
            (1, [0, 1, -1, -1, -1, -1]),
            (-1, [0, -1, 1, 1, 1, 1]),
        ],
    )
}

pub fn expected_omega_plus(ring: &GroupRing) -> RingElement {
    poly(
        ring,
        &[
            (1, [-1, 1, 1, 1, 1, 1]),
            (-1, [1, -1, -1, -1, -1, -1]),
            (-1, [1, 1, 1, -1, -1, 1]),
            (1, [-1, -1, -1, 1, 1, -1]),
            (1, [1, -1, 1, -1, -1, 1]),
            (-1, [-1, 1, -1, 1, 1, -1]),
            (1, [1, 1, -1, -1, -1, -1]),
            (-1, [-1, -1, 1, 1, 1, 1]),
        ],
    )
}

pub fn expected_omega_minus(ring: &GroupRing) -> RingElement {
    poly(
        ring,
        &[
            (1, [1, 1, 1, 1, 1, 1]),
            (-1, [-1, -1, -1, -1, -1, -1]),
            (-1, [1, 1, 1, -1, -1, 1]),
            (1, [-1, -1, -1, 1, 1, -1]),
            (1, [1, -1, 1, -1, -1, 1]),
            (-1, [-1, 1, -1, 1, 1, -1]),
            (1, [1, 1, -1, -1, -1, -1]),
            (-1, [-1, -1, 1, 1, 1, 1]),
            (-1, [1, -1, 1, -1, 1, 1]),
            (1, [-1, 1, -1, 1, -1, -1]),
            (-1, [1, 1, -1, 1, -1, -1]),
            (1, [-1, -1, 1, -1, 1, 1]),
        ],
    )
}

pub fn expected_general(ring: &GroupRing) -> RingElement {
    poly(
        ring,
        &[
            (1, [1, 1, 1, 1, 1, -1]),
            (-1, [-1, -1, -1, -1, -1, 1]),
            (-1, [1, 1, 1, -1, 1, 1]),
            (1, [-1, -1, -1, 1, -1, -1]),
            (1, [1, 1, 1, -1, -1, 1]),
            (-1, [-1, -1, -1, 1, 1, -1]),
            (-1, [1, 1, -1, 1, -1, -1]),
            (1, [-1, -1, 1, -1, 1, 1]),
            (-1, [1, -1, 1, -1, -1, 1]),
            (1, [-1, 1, -1, 1, 1, -1]),
            (1, [1, -1, -1, -1, -1, 1]),
            (-1, [-1, 1, 1, 1, 1, -1]),
        ],
    )
}

pub struct RegressionLine {
    pub name: &'static str,
    pub outcome: Result<String, String>,
}

/// Run the five built-in examples and report one line each.
pub fn run_all(seed: u64) -> Vec<RegressionLine> {
    let degree = lines_in_r4();
    let config = SolverConfig {
        trials: 5,
        seed,
        max_resamples: 64,
    };
    let mut lines = Vec::new();

    // 1. the generic form and its 14-term invariant
    lines.push(RegressionLine {
        name: "omega_1: 14-term invariant for e0 = e1",
        outcome: (|| {
            let omega = omega_1();
            let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 1);
            let deltas: Vec<LatticeVector> = (0..2)
                .map(|_| sample_delta(&degree, &omega, 0, &mut rng))
                .collect();
            let report = invariant_omega(&degree, &omega, 0, &deltas, &[], &config)
                .map_err(|e| e.to_string())?;
            if report.polynomial == expected_omega1(&report.ring) {
                Ok(format!("{} terms", report.polynomial.num_terms()))
            } else {
                Err(format!("got {}", report.printed()))
            }
        })(),
    });

    // 2. dependence on the distinguished end
    lines.push(RegressionLine {
        name: "omega_2: invariants for e1 = e3, e2 differs",
        outcome: (|| {
            let omega = omega_2();
            let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 2);
            let mut reports = Vec::new();
            for e0 in [0usize, 1, 2] {
                let deltas = [sample_delta(&degree, &omega, e0, &mut rng)];
                reports.push(
                    invariant_omega(&degree, &omega, e0, &deltas, &[], &config)
                        .map_err(|e| e.to_string())?,
                );
            }
            let ok = reports[0].polynomial == reports[2].polynomial
                && reports[0].polynomial == expected_omega2_e1(&reports[0].ring)
                && reports[1].polynomial == expected_omega2_e2(&reports[1].ring)
                && reports[0].polynomial != reports[1].polynomial;
            if ok {
                Ok("12 terms each, final rows differ".into())
            } else {
                Err("mismatch against the stored displays".into())
            }
        })(),
    });

    // 3. continuity across the omega_0 facet
    lines.push(RegressionLine {
        name: "omega_0 facet: displays and both projections",
        outcome: (|| {
            let k = k_omega(&degree, &omega_0());
            let pi = Bivector::wedge(&LatticeVector::basis(4, 0), &LatticeVector::basis(4, 1))
                .unwrap();
            if k.rank() != 1 || !k.contains(pi.coords()) {
                return Err("K(omega_0) is not the line through e1∧e2".into());
            }
            let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 3);
            for (omega, expect) in [
                (omega_0(), expected_omega0 as fn(&GroupRing) -> RingElement),
                (omega_plus(), expected_omega_plus),
                (omega_minus(), expected_omega_minus),
            ] {
                let deltas = [sample_delta(&degree, &omega, 0, &mut rng)];
                let report = invariant_omega(&degree, &omega, 0, &deltas, &[], &config)
                    .map_err(|e| e.to_string())?;
                if report.polynomial != expect(&report.ring) {
                    return Err(format!("display mismatch: {}", report.printed()));
                }
            }
            let up = check_continuity(&degree, &omega_plus(), &omega_0(), 0, &config)
                .map_err(|e| e.to_string())?;
            let down = check_continuity(&degree, &omega_minus(), &omega_0(), 0, &config)
                .map_err(|e| e.to_string())?;
            if up && down {
                Ok("projections at q_12 = 1 agree".into())
            } else {
                Err("projection mismatch".into())
            }
        })(),
    });

    // 4. the affine-constraint example
    lines.push(RegressionLine {
        name: "affine constraints with omega_3 (up to sign)",
        outcome: (|| {
            let problem = general_example();
            let omega = omega_3();
            let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 4);
            let delta = sample_delta(&degree, &omega, 0, &mut rng);
            let report = invariant_general(&problem, &omega, 0, &delta, &config)
                .map_err(|e| e.to_string())?;
            let expected = expected_general(&report.ring);
            let negated = report.ring.neg(&expected);
            if report.polynomial == expected || report.polynomial == negated {
                Ok(format!("{} terms", report.polynomial.num_terms()))
            } else {
                Err(format!("got {}", report.printed()))
            }
        })(),
    });

    // 5. lines through two points
    lines.push(RegressionLine {
        name: "two-point lines with omega_4",
        outcome: (|| {
            let problem = two_point_lines();
            let omega = omega_4();
            let delta = LatticeVector::from_i64(&[0, 1, 0, 0]);
            let report = invariant_general(&problem, &omega, 0, &delta, &config)
                .map_err(|e| e.to_string())?;
            let ring = &report.ring;
            let e = |i: usize| LatticeVector::basis(4, i);
            let product = [1usize, 2, 3]
                .iter()
                .map(|&j| ring.binomial(&Bivector::wedge(&e(0), &e(j)).unwrap()))
                .fold(ring.one(), |acc, b| ring.mul(&acc, &b));
            if report.trials.iter().any(|t| t.solution_names.len() != 1) {
                return Err("expected exactly one solution per instance".into());
            }
            let negated = ring.neg(&product);
            if report.polynomial != product && report.polynomial != negated {
                return Err(format!("got {}", report.printed()));
            }
            // per-type check on the six contributing types
            let types = enumerate_trivalent(5).map_err(|e| e.to_string())?;
            let wrapped = Problem::General(problem.clone());
            let mut contributing = 0;
            for t in &types {
                if complex_mult_det(t, &wrapped) == Int::from(1) {
                    contributing += 1;
                    let b = refined_mult(t, &degree, &omega, ring).map_err(|e| e.to_string())?;
                    if b != product {
                        return Err(format!("type {} deviates", t.display_name(Some(&degree))));
                    }
                }
            }
            if contributing != 6 {
                return Err(format!("{contributing} contributing types, expected 6"));
            }
            Ok("factored invariant shared by all six types".into())
        })(),
    });

    lines
}
