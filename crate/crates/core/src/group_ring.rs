//! The group ring `ℤ[Λ²N/K]`: sparse Laurent polynomials whose exponents are
//! canonical coset representatives modulo a sublattice `K ⊆ Λ²N`, plus the
//! projections between quotients and the one-variable specialisation used by
//! the `q → 1` limit.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{unpair_index, Bivector, IntMat, Sublattice, TwoForm};
use crate::{Int, Rat};

/// The exponent group `Λ²N/K` with a fixed canonical coset representative.
///
/// The representative is computed in the SNF coordinates of `K`'s basis:
/// components along killed directions drop to 0, torsion directions reduce
/// modulo the elementary divisor, free directions stay untouched. `K` is not
/// auto-saturated; a torsion quotient is carried faithfully and flagged.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    ambient: usize,
    k: Sublattice,
    v: IntMat,
    v_inv: IntMat,
    divisors: Vec<Int>,
    has_torsion: bool,
}

impl QuotientGroup {
    pub fn new(k: Sublattice) -> Self {
        let ambient = k.ambient_rank();
        let snf = k.basis().snf();
        let rank = k.rank();
        let divisors: Vec<Int> = (0..rank).map(|i| snf.d.at(i, i).clone()).collect();
        let has_torsion = divisors.iter().any(|d| !d.is_one());
        QuotientGroup {
            ambient,
            k,
            v: snf.v,
            v_inv: snf.v_inv,
            divisors,
            has_torsion,
        }
    }

    pub fn trivial(ambient: usize) -> Self {
        QuotientGroup::new(Sublattice::zero(ambient))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn sublattice(&self) -> &Sublattice {
        &self.k
    }

    /// True when the quotient `ℤ^m/K` has torsion, i.e. `K` is not
    /// saturated. Residues are then carried in the exponents rather than
    /// silently normalised away.
    pub fn has_torsion(&self) -> bool {
        self.has_torsion
    }

    /// Canonical representative of `x + K`, in ambient coordinates.
    pub fn reduce(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.ambient, "exponent length mismatch");
        if self.k.is_zero() {
            return x.to_vec();
        }
        // y = x · V
        let mut y: Vec<Int> = (0..self.ambient)
            .map(|j| (0..self.ambient).map(|i| &x[i] * self.v.at(i, j)).sum())
            .collect();
        for (i, d) in self.divisors.iter().enumerate() {
            y[i] = y[i].mod_floor(d);
        }
        // back to ambient coordinates: y · V^{-1}
        (0..self.ambient)
            .map(|j| {
                (0..self.ambient)
                    .map(|i| &y[i] * self.v_inv.at(i, j))
                    .sum()
            })
            .collect()
    }

    pub fn reduce_bivector(&self, pi: &Bivector) -> Vec<Int> {
        self.reduce(pi.coords())
    }

    fn negated(x: &[Int]) -> Vec<Int> {
        x.iter().map(|c| -c).collect()
    }
}

/// An element of `ℤ[Λ²N/K]`: a sparse map from canonical coset
/// representatives to nonzero integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RingElement {
    terms: BTreeMap<Vec<Int>, Int>,
}

impl RingElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Int>, &Int)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponent: &[Int]) -> Int {
        self.terms.get(exponent).cloned().unwrap_or_else(Int::zero)
    }
}

/// The ring `ℤ[Λ²N/K]` for `N` of the given rank. Elements are plain data;
/// the ring object carries the quotient needed to reduce exponents.
#[derive(Clone, Debug)]
pub struct GroupRing {
    rank: usize,
    group: QuotientGroup,
}

impl GroupRing {
    /// Ring over `Λ²ℤ^rank / K`. `K` must live in `ℤ^{C(rank,2)}`.
    pub fn new(rank: usize, k: Sublattice) -> Self {
        assert_eq!(k.ambient_rank(), rank * (rank - 1) / 2);
        GroupRing {
            rank,
            group: QuotientGroup::new(k),
        }
    }

    pub fn with_trivial_quotient(rank: usize) -> Self {
        GroupRing::new(rank, Sublattice::zero(rank * (rank - 1) / 2))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn group(&self) -> &QuotientGroup {
        &self.group
    }

    pub fn zero(&self) -> RingElement {
        RingElement::default()
    }

    pub fn one(&self) -> RingElement {
        self.monomial(&vec![Int::zero(); self.group.ambient_rank()], Int::one())
    }

    pub fn constant(&self, c: Int) -> RingElement {
        self.monomial(&vec![Int::zero(); self.group.ambient_rank()], c)
    }

    /// `c · q^x` with `x` reduced to its canonical representative.
    pub fn monomial(&self, exponent: &[Int], c: Int) -> RingElement {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(self.group.reduce(exponent), c);
        }
        RingElement { terms }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut terms = a.terms.clone();
        for (k, v) in &b.terms {
            let entry = terms.entry(k.clone()).or_insert_with(Int::zero);
            *entry += v;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        RingElement { terms }
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        RingElement {
            terms: a.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &RingElement, c: &Int) -> RingElement {
        if c.is_zero() {
            return self.zero();
        }
        RingElement {
            terms: a.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut out = self.zero();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let sum: Vec<Int> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                let key = self.group.reduce(&sum);
                let entry = out.terms.entry(key.clone()).or_insert_with(Int::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    out.terms.remove(&key);
                }
            }
        }
        out
    }

    /// The vertex factor `q^π − q^{−π}`; zero exactly when `π ∈ K`.
    pub fn binomial(&self, pi: &Bivector) -> RingElement {
        let plus = self.group.reduce_bivector(pi);
        let minus = self.group.reduce(&QuotientGroup::negated(pi.coords()));
        let mut out = self.monomial(&plus, Int::one());
        out = self.add(&out, &self.monomial(&minus, -Int::one()));
        out
    }

    /// Push an element into a coarser quotient. Errors unless `K ⊆ K'`.
    pub fn project(&self, coarser: &GroupRing, f: &RingElement) -> Result<RingElement> {
        let k = self.group.sublattice();
        let kp = coarser.group.sublattice();
        for (index, row) in k.basis_rows().iter().enumerate() {
            if !kp.contains(row) {
                return Err(Error::NotASubgroup { index });
            }
        }
        let mut out = coarser.zero();
        for (exp, c) in &f.terms {
            out = coarser.add(&out, &coarser.monomial(exp, c.clone()));
        }
        Ok(out)
    }

    /// Specialise `q^π ↦ t^{ω(π)}`. Defined only when `ω` vanishes on `K`.
    pub fn specialize_by_form(&self, omega: &TwoForm, f: &RingElement) -> Result<Laurent> {
        if !omega.vanishes_on(&self.group.sublattice().basis_rows()) {
            return Err(Error::SpecialisationUndefined);
        }
        let mut out = Laurent::zero();
        for (exp, c) in &f.terms {
            out.add_term(omega.eval_exponent(exp), c.clone());
        }
        Ok(out)
    }

    /// Canonical text form: variables `q_ij` (1-based, `i < j`), terms in
    /// descending lexicographic exponent order. This is the stable
    /// comparison format used by the CLI and the test suite.
    pub fn canonical_print(&self, f: &RingElement) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (exp, coeff)) in f.terms.iter().rev().enumerate() {
            let neg = coeff.is_negative();
            if n == 0 {
                if neg {
                    out.push_str("- ");
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let abs = coeff.abs();
            let vars: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(idx, e)| {
                    let (i, j) = unpair_index(idx, self.rank);
                    let name = format!("q_{}{}", i + 1, j + 1);
                    if e.is_one() {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if vars.is_empty() {
                let _ = write!(out, "{abs}");
            } else if abs.is_one() {
                out.push_str(&vars.join("*"));
            } else {
                let _ = write!(out, "{abs}*{}", vars.join("*"));
            }
        }
        out
    }

    /// Machine-readable form: one `coefficient : exponent-vector` pair per
    /// line, in descending exponent order.
    pub fn machine_print(&self, f: &RingElement) -> String {
        let mut out = String::new();
        for (exp, coeff) in f.terms.iter().rev() {
            let exps: Vec<String> = exp.iter().map(|e| e.to_string()).collect();
            let _ = writeln!(out, "{coeff} : [{}]", exps.join(", "));
        }
        out
    }
}

/// A univariate Laurent polynomial in `t`, used for the `q → 1`
/// specialisation.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Laurent {
    terms: BTreeMap<Int, Int>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn add_term(&mut self, exponent: Int, coeff: Int) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent.clone()).or_insert_with(Int::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn eval_at_one(&self) -> Int {
        self.terms.values().sum()
    }

    /// Exact division by `(t − t^{-1})^power` followed by evaluation at
    /// `t = 1`. Errors when the division leaves a remainder.
    pub fn limit_q_to_one(&self, power: usize) -> Result<Rat> {
        if self.is_zero() {
            return Ok(Rat::zero());
        }
        // g / (t - t^-1)^d = t^d g / (t^2 - 1)^d; shift to an honest
        // polynomial first.
        let min_exp = self.terms.keys().next().unwrap().clone();
        let max_exp = self.terms.keys().next_back().unwrap().clone();
        let span = usize::try_from(&max_exp - &min_exp).expect("exponent span fits in usize");
        let mut coeffs = vec![Int::zero(); span + 1];
        for (e, c) in &self.terms {
            let idx = usize::try_from(e - &min_exp).unwrap();
            coeffs[idx] = c.clone();
        }
        for _ in 0..power {
            coeffs = divide_by_t2_minus_1(&coeffs).ok_or(Error::NotDivisible { power })?;
        }
        // The residual shift t^{d + min_exp} evaluates to 1 at t = 1.
        Ok(Rat::from_integer(coeffs.iter().sum()))
    }
}

/// Exact division of a dense polynomial by `t² − 1`; `None` on a remainder.
fn divide_by_t2_minus_1(coeffs: &[Int]) -> Option<Vec<Int>> {
    if coeffs.len() < 2 {
        return if coeffs.iter().all(|c| c.is_zero()) {
            Some(vec![])
        } else {
            None
        };
    }
    let n = coeffs.len();
    let mut quotient = vec![Int::zero(); n - 2];
    let mut rem = coeffs.to_vec();
    for i in (2..n).rev() {
        let q = rem[i].clone();
        quotient[i - 2] = q.clone();
        rem[i] = Int::zero();
        rem[i - 2] += q;
    }
    if rem[0].is_zero() && rem[1].is_zero() {
        Some(quotient)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{pair_index, LatticeVector};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn veci(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    fn k_omega4() -> Sublattice {
        // <e2∧e3, e2∧e4, e3∧e4> inside Λ²Z⁴
        let m = 6;
        let mut gens = Vec::new();
        for (i, j) in [(1usize, 2usize), (1, 3), (2, 3)] {
            let mut g = vec![Int::zero(); m];
            g[pair_index(i, j, 4)] = Int::one();
            gens.push(g);
        }
        Sublattice::from_generators(m, &gens)
    }

    fn random_element(ring: &GroupRing, rng: &mut StdRng, nterms: usize) -> RingElement {
        let m = ring.group().ambient_rank();
        let mut out = ring.zero();
        for _ in 0..nterms {
            let exp: Vec<Int> = (0..m).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect();
            let c = Int::from(rng.gen_range(-5i64..=5));
            out = ring.add(&out, &ring.monomial(&exp, c));
        }
        out
    }

    #[test]
    fn trivial_quotient_reduction_is_identity() {
        let g = QuotientGroup::trivial(6);
        let x = veci(&[1, -2, 3, 0, 0, 7]);
        assert_eq!(g.reduce(&x), x);
    }

    #[test]
    fn reduction_is_idempotent_and_sound() {
        let mut rng = StdRng::seed_from_u64(61);
        for _ in 0..100 {
            let m = 6;
            let gens: Vec<Vec<Int>> = (0..rng.gen_range(0..=3))
                .map(|_| (0..m).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect())
                .collect();
            let k = Sublattice::from_generators(m, &gens);
            let g = QuotientGroup::new(k.clone());
            let x: Vec<Int> = (0..m).map(|_| Int::from(rng.gen_range(-9i64..=9))).collect();
            let r = g.reduce(&x);
            assert_eq!(g.reduce(&r), r, "reduce must be idempotent");
            let diff: Vec<Int> = x.iter().zip(&r).map(|(a, b)| a - b).collect();
            assert!(k.contains(&diff), "reduce(x) − x must lie in K");
        }
    }

    #[test]
    fn kernel_elements_reduce_to_zero() {
        let k = k_omega4();
        let g = QuotientGroup::new(k.clone());
        for row in k.basis_rows() {
            assert!(g.reduce(&row).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn omega4_middle_vertex_reduction() {
        // (e1+e3) ∧ e2 reduces to e1 ∧ e2 modulo K_{ω4}.
        let g = QuotientGroup::new(k_omega4());
        let pi = Bivector::wedge(
            &LatticeVector::from_i64(&[1, 0, 1, 0]),
            &LatticeVector::from_i64(&[0, 1, 0, 0]),
        )
        .unwrap();
        let mut expected = vec![Int::zero(); 6];
        expected[pair_index(0, 1, 4)] = Int::one();
        assert_eq!(g.reduce(pi.coords()), expected);
    }

    #[test]
    fn binomial_basics() {
        let ring = GroupRing::with_trivial_quotient(4);
        let pi = Bivector::wedge(&LatticeVector::basis(4, 0), &LatticeVector::basis(4, 1)).unwrap();
        let b = ring.binomial(&pi);
        assert_eq!(ring.canonical_print(&b), "q_12 - q_12^-1");
        // q^π − q^{−π} is odd in π
        let b_neg = ring.binomial(&pi.neg());
        assert_eq!(ring.neg(&b), b_neg);
    }

    #[test]
    fn binomial_vanishes_on_kernel() {
        let ring = GroupRing::new(4, k_omega4());
        let pi = Bivector::wedge(&LatticeVector::basis(4, 1), &LatticeVector::basis(4, 2)).unwrap();
        assert!(ring.binomial(&pi).is_zero());
        // and the middle vertex of 13//2//45 reduces to the q_12 factor
        let mid = Bivector::wedge(
            &LatticeVector::from_i64(&[1, 0, 1, 0]),
            &LatticeVector::from_i64(&[0, 1, 0, 0]),
        )
        .unwrap();
        assert_eq!(ring.canonical_print(&ring.binomial(&mid)), "q_12 - q_12^-1");
    }

    #[test]
    fn ring_axioms_hold_exactly() {
        let mut rng = StdRng::seed_from_u64(67);
        let ring = GroupRing::new(4, k_omega4());
        for _ in 0..50 {
            let a = random_element(&ring, &mut rng, 3);
            let b = random_element(&ring, &mut rng, 3);
            let c = random_element(&ring, &mut rng, 3);
            assert_eq!(ring.mul(&a, &b), ring.mul(&b, &a));
            assert_eq!(
                ring.mul(&ring.mul(&a, &b), &c),
                ring.mul(&a, &ring.mul(&b, &c))
            );
            assert_eq!(
                ring.mul(&a, &ring.add(&b, &c)),
                ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c))
            );
            assert_eq!(ring.mul(&a, &ring.one()), a);
        }
    }

    #[test]
    fn projection_is_a_ring_homomorphism() {
        let mut rng = StdRng::seed_from_u64(71);
        let fine = GroupRing::with_trivial_quotient(4);
        let coarse = GroupRing::new(4, k_omega4());
        for _ in 0..50 {
            let a = random_element(&fine, &mut rng, 3);
            let b = random_element(&fine, &mut rng, 3);
            let pab = fine.project(&coarse, &fine.mul(&a, &b)).unwrap();
            let papb = coarse.mul(
                &fine.project(&coarse, &a).unwrap(),
                &fine.project(&coarse, &b).unwrap(),
            );
            assert_eq!(pab, papb);
        }
        // identity projection
        let a = random_element(&coarse, &mut rng, 4);
        assert_eq!(coarse.project(&coarse, &a).unwrap(), a);
    }

    #[test]
    fn projection_requires_containment() {
        let fine = GroupRing::new(4, k_omega4());
        let coarse = GroupRing::with_trivial_quotient(4);
        let a = fine.one();
        assert!(matches!(
            fine.project(&coarse, &a),
            Err(Error::NotASubgroup { .. })
        ));
    }

    #[test]
    fn specialisation_and_limit() {
        let ring = GroupRing::with_trivial_quotient(4);
        let omega = TwoForm::from_i64(&[
            &[0, 5, 0, 0],
            &[-5, 0, 0, 0],
            &[0, 0, 0, 0],
            &[0, 0, 0, 0],
        ])
        .unwrap();
        let pi = Bivector::wedge(&LatticeVector::basis(4, 0), &LatticeVector::basis(4, 1)).unwrap();
        let b = ring.binomial(&pi);
        let g = ring.specialize_by_form(&omega, &b).unwrap();
        // t^5 − t^{-5}, divided once by (t − t^{-1}), evaluates to 5 at t=1.
        assert_eq!(g.limit_q_to_one(1).unwrap(), Rat::from_integer(Int::from(5)));
        assert!(Laurent::zero().limit_q_to_one(3).unwrap().is_zero());
        assert!(matches!(
            g.limit_q_to_one(2),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn specialisation_is_a_ring_homomorphism() {
        let mut rng = StdRng::seed_from_u64(73);
        let ring = GroupRing::with_trivial_quotient(3);
        let omega = TwoForm::from_i64(&[&[0, 2, -3], &[-2, 0, 7], &[3, -7, 0]]).unwrap();
        for _ in 0..50 {
            let a = random_element(&ring, &mut rng, 3);
            let b = random_element(&ring, &mut rng, 3);
            let sa = ring.specialize_by_form(&omega, &a).unwrap();
            let sb = ring.specialize_by_form(&omega, &b).unwrap();
            let sab = ring
                .specialize_by_form(&omega, &ring.mul(&a, &b))
                .unwrap();
            assert_eq!(sa.mul(&sb), sab);
        }
    }

    #[test]
    fn specialisation_requires_vanishing_on_k() {
        let ring = GroupRing::new(4, k_omega4());
        let omega = TwoForm::from_i64(&[
            &[0, 0, 1, 0],
            &[0, 0, 1, 0],
            &[-1, -1, 0, 0],
            &[0, 0, 0, 0],
        ])
        .unwrap();
        // ω(e2∧e3) = 1 ≠ 0 on K
        assert!(matches!(
            ring.specialize_by_form(&omega, &ring.one()),
            Err(Error::SpecialisationUndefined)
        ));
    }

    #[test]
    fn printing_is_canonical() {
        let ring = GroupRing::with_trivial_quotient(4);
        assert_eq!(ring.canonical_print(&ring.one()), "1");
        assert_eq!(ring.canonical_print(&ring.zero()), "0");
        let pi = Bivector::wedge(&LatticeVector::basis(4, 0), &LatticeVector::basis(4, 1)).unwrap();
        let b = ring.binomial(&pi);
        let twice = ring.scale(&b, &Int::from(2));
        assert_eq!(ring.canonical_print(&twice), "2*q_12 - 2*q_12^-1");
    }

    /// The two displayed forms of the three-term wall identity, selected by
    /// the sign pattern a 2-form puts on the four outgoing slopes.
    #[test]
    fn wall_three_term_identity_both_branches() {
        let mut rng = StdRng::seed_from_u64(79);
        let rank = 3;
        let ring = GroupRing::with_trivial_quotient(rank);
        let mut positive_branch = 0;
        let mut negative_branch = 0;
        while positive_branch < 20 || negative_branch < 20 {
            let mut slopes: Vec<LatticeVector> = (0..3)
                .map(|_| {
                    LatticeVector::new(
                        (0..rank).map(|_| Int::from(rng.gen_range(-4i64..=4))).collect(),
                    )
                })
                .collect();
            let last = slopes
                .iter()
                .fold(LatticeVector::zero(rank), |acc, s| acc.add(s))
                .neg();
            slopes.push(last);
            let upper: Vec<Int> = (0..3).map(|_| Int::from(rng.gen_range(-9i64..=9))).collect();
            let omega = TwoForm::from_upper_triangle(rank, &upper);
            // Relabel the arms so that consecutive pairings are positive
            // and the middle comparison is strict.
            let perms = permutations(&[0usize, 1, 2, 3]);
            let Some(order) = perms.into_iter().find(|p| {
                let b = |i: usize| &slopes[p[i]];
                omega.eval_pair(b(0), b(1)).is_positive()
                    && omega.eval_pair(b(1), b(2)).is_positive()
                    && omega.eval_pair(b(2), b(3)).is_positive()
                    && omega.eval_pair(b(3), b(0)).is_positive()
                    && omega.eval_pair(b(1), b(2)) > omega.eval_pair(b(0), b(1))
                    && !omega.eval_pair(b(0), b(2)).is_zero()
            }) else {
                continue;
            };
            let b1 = &slopes[order[0]];
            let b2 = &slopes[order[1]];
            let b3 = &slopes[order[2]];
            let pair = |x: &LatticeVector, y: &LatticeVector| {
                ring.binomial(&Bivector::wedge(x, y).unwrap())
            };
            let t_14_23 = ring.mul(&pair(b2, b3), &pair(b1, &b2.add(b3)));
            let t_12_34 = ring.mul(&pair(b1, b2), &pair(&b1.add(b2), b3));
            let t_13_24 = ring.mul(&pair(b1, b3), &pair(b2, &b1.add(b3)));
            if omega.eval_pair(b1, b3).is_positive() {
                assert_eq!(t_14_23, ring.add(&t_12_34, &t_13_24));
                positive_branch += 1;
            } else {
                assert_eq!(ring.sub(&t_14_23, &t_13_24), t_12_34);
                negative_branch += 1;
            }
        }
    }

    fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items.to_vec()];
        }
        let mut out = Vec::new();
        for (i, &x) in items.iter().enumerate() {
            let rest: Vec<usize> = items
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &v)| v)
                .collect();
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn torsion_quotients_are_flagged_not_normalised() {
        // K = <2·e1∧e2> has torsion quotient Z/2 ⊕ Z^5.
        let mut gen = vec![Int::zero(); 6];
        gen[0] = Int::from(2);
        let k = Sublattice::from_generators(6, &[gen]);
        let g = QuotientGroup::new(k);
        assert!(g.has_torsion());
        let x = veci(&[3, 0, 0, 0, 0, 0]);
        assert_eq!(g.reduce(&x), veci(&[1, 0, 0, 0, 0, 0]));
        let y = veci(&[4, 0, 0, 0, 0, 0]);
        assert_eq!(g.reduce(&y), veci(&[0, 0, 0, 0, 0, 0]));
    }
}
