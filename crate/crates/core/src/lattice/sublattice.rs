//! Sublattices of `ℤ^n` in canonical HNF form, saturation, orthogonal duals
//! and Plücker vectors.

use super::exterior::Polyvector;
use super::matrix::IntMat;
use super::vector::{Covector, LatticeVector};
use crate::error::{Error, Result};
use crate::Int;

/// A sublattice of `ℤ^n`, stored as the unique HNF basis of its generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sublattice {
    ambient: usize,
    basis: IntMat,
}

impl Sublattice {
    /// Span of a list of generators. The empty list gives the zero
    /// sublattice.
    pub fn from_generators(ambient: usize, generators: &[Vec<Int>]) -> Self {
        for g in generators {
            assert_eq!(g.len(), ambient, "generator length mismatch");
        }
        let basis = IntMat::from_rows(ambient, generators).hnf();
        Sublattice { ambient, basis }
    }

    pub fn from_vectors(ambient: usize, generators: &[LatticeVector]) -> Self {
        let rows: Vec<Vec<Int>> = generators.iter().map(|v| v.coords().to_vec()).collect();
        Sublattice::from_generators(ambient, &rows)
    }

    pub fn zero(ambient: usize) -> Self {
        Sublattice {
            ambient,
            basis: IntMat::zero(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Sublattice {
            ambient,
            basis: IntMat::identity(ambient),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn corank(&self) -> usize {
        self.ambient - self.rank()
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Int>> {
        self.basis.row_vecs()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rows() == 0
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        IntMat::row_span_contains(&self.basis, x)
    }

    pub fn is_subset_of(&self, other: &Sublattice) -> bool {
        (0..self.basis.rows()).all(|i| other.contains(self.basis.row(i)))
    }

    /// The orthogonal dual `{m : m(v) = 0 for all v in self}` in the dual
    /// lattice, always saturated.
    pub fn orthogonal_dual(&self) -> Sublattice {
        if self.rank() == 0 {
            return Sublattice::full(self.ambient);
        }
        let kernel = self.basis.kernel_basis();
        Sublattice {
            ambient: self.ambient,
            basis: kernel,
        }
    }

    /// The smallest sublattice of the same rank containing `self` with
    /// torsion-free quotient, computed as the double orthogonal dual.
    pub fn saturation(&self) -> Sublattice {
        self.orthogonal_dual().orthogonal_dual()
    }

    pub fn is_saturated(&self) -> bool {
        *self == self.saturation()
    }

    /// Plücker vector of `self` (optionally extended by one more vector):
    /// the wedge of the HNF basis of the orthogonal dual of the span, taken
    /// in basis-row order. The sign is fixed by this convention.
    pub fn pluecker(&self, extra: Option<&LatticeVector>) -> Result<Polyvector> {
        let mut rows = self.basis_rows();
        if let Some(v) = extra {
            assert_eq!(v.rank(), self.ambient, "rank mismatch");
            rows.push(v.coords().to_vec());
        }
        let span = Sublattice::from_generators(self.ambient, &rows);
        if extra.is_some() && span.rank() != self.rank() + 1 {
            return Err(Error::DegenerateSpan);
        }
        let dual = span.orthogonal_dual();
        let mut out = Polyvector::unit(self.ambient);
        for row in dual.basis_rows() {
            out = out.wedge(&Polyvector::from_covector(&Covector::new(row)));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{One, Signed, Zero};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn veci(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn saturate_divides_content() {
        let l = Sublattice::from_generators(2, &[veci(&[2, 0])]);
        let sat = l.saturation();
        assert_eq!(sat.basis_rows(), vec![veci(&[1, 0])]);
        assert!(sat.saturation() == sat, "saturation is idempotent");
    }

    #[test]
    fn orthogonal_dual_small() {
        // dual of <e1 + e2> in Z^2 is <e1* - e2*> up to the HNF sign.
        let l = Sublattice::from_generators(2, &[veci(&[1, 1])]);
        let dual = l.orthogonal_dual();
        assert_eq!(dual.rank(), 1);
        let row = &dual.basis_rows()[0];
        // Brute-force oracle over small coefficients.
        let mut found = false;
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                if a + b == 0 && (a, b) != (0, 0) {
                    let cand = veci(&[a, b]);
                    if dual.contains(&cand) {
                        found = true;
                    }
                    if &cand == row {
                        assert!(a == 1 && b == -1 || a == -1 && b == 1);
                    }
                }
            }
        }
        assert!(found);
        assert_eq!(row, &veci(&[1, -1]));
    }

    #[test]
    fn zero_and_full() {
        let z = Sublattice::from_generators(3, &[]);
        assert!(z.is_zero());
        assert_eq!(z.orthogonal_dual(), Sublattice::full(3));
        assert_eq!(Sublattice::full(3).orthogonal_dual(), Sublattice::zero(3));
    }

    #[test]
    fn pluecker_line_and_plane() {
        // L = <e2>, extra = e1 in Z^3: the dual of the span is <e3*>.
        let l = Sublattice::from_generators(3, &[veci(&[0, 1, 0])]);
        let p = l.pluecker(Some(&LatticeVector::basis(3, 0))).unwrap();
        assert_eq!(p.grade(), 1);
        assert_eq!(p.coefficient(&[2]).abs(), Int::one());
        assert!(p.coefficient(&[0]).is_zero() && p.coefficient(&[1]).is_zero());
    }

    #[test]
    fn pluecker_degenerate_is_an_error() {
        let l = Sublattice::from_generators(3, &[veci(&[0, 1, 0])]);
        let inside = LatticeVector::from_i64(&[0, 3, 0]);
        assert!(matches!(
            l.pluecker(Some(&inside)),
            Err(Error::DegenerateSpan)
        ));
    }

    #[test]
    fn pluecker_primitive_after_saturation() {
        let mut rng = StdRng::seed_from_u64(53);
        for _ in 0..200 {
            let ambient = rng.gen_range(2..=5);
            let k = rng.gen_range(0..ambient);
            let gens: Vec<Vec<Int>> = (0..k)
                .map(|_| {
                    (0..ambient)
                        .map(|_| Int::from(rng.gen_range(-4i64..=4)))
                        .collect()
                })
                .collect();
            let l = Sublattice::from_generators(ambient, &gens);
            let extra = LatticeVector::new(
                (0..ambient)
                    .map(|_| Int::from(rng.gen_range(-4i64..=4)))
                    .collect(),
            );
            match l.pluecker(Some(&extra)) {
                Ok(p) => {
                    assert!(!p.is_zero());
                    assert_eq!(p.grade(), ambient - l.rank() - 1);
                    assert!(p.content().is_one(), "plücker coefficients have gcd 1");
                }
                Err(Error::DegenerateSpan) => {
                    // extra really does lie in the rational span
                    let span = Sublattice::from_generators(ambient, &l.basis_rows());
                    let mut rows = span.basis_rows();
                    rows.push(extra.coords().to_vec());
                    assert_eq!(
                        IntMat::from_rows(ambient, &rows).rank(),
                        l.rank(),
                        "degeneracy error must match a rank drop"
                    );
                }
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }

    /// Independent oracle: the coefficient of the wedge of k covectors at a
    /// k-subset equals the k×k minor of the stacked matrix on those
    /// columns.
    fn minors_oracle(rows: &[Vec<Int>]) -> Polyvector {
        let k = rows.len();
        let ambient = rows[0].len();
        let mut out = Polyvector::zero(ambient, k);
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let minor = IntMat::from_rows(
                k,
                &rows
                    .iter()
                    .map(|r| subset.iter().map(|&c| r[c].clone()).collect())
                    .collect::<Vec<_>>(),
            )
            .det();
            if !minor.is_zero() {
                let mut basis = Polyvector::unit(ambient);
                for &c in &subset {
                    basis = basis.wedge(&Polyvector::from_covector(&Covector::basis(ambient, c)));
                }
                out = out.add(&basis.scale(&minor));
            }
            // next k-subset of {0..ambient}
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if subset[i] + 1 <= ambient - (k - i) {
                    subset[i] += 1;
                    for j in i + 1..k {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn pluecker_matches_the_minor_expansion() {
        // The codimension-2 constraint of the worked line example: the
        // intersection of two kernels in Z^4. Both forms kill e1, so the
        // end direction is already inside and extending by it must fail.
        let m1 = veci(&[0, 3780, -315, -2543]);
        let m2 = veci(&[0, -6958, 7243, 3904]);
        let forms = Sublattice::from_generators(4, &[m1.clone(), m2.clone()]);
        let constrained = forms.orthogonal_dual(); // rank-2 lattice containing e1
        assert_eq!(constrained.rank(), 2);
        assert!(constrained.contains(&veci(&[1, 0, 0, 0])));
        assert!(matches!(
            constrained.pluecker(Some(&LatticeVector::basis(4, 0))),
            Err(Error::DegenerateSpan)
        ));
        // Its Plücker vector is the wedge of the dual HNF rows; compare
        // against the brute-force minor expansion of the stacked matrix.
        let rho = constrained.pluecker(None).unwrap();
        assert_eq!(rho.grade(), 2);
        let dual_rows = constrained.orthogonal_dual().basis_rows();
        assert_eq!(rho, minors_oracle(&dual_rows));
        // A rank-1 span dualises to a grade-3 polyvector in Z^4; same oracle.
        let line = Sublattice::zero(4);
        let rho3 = line.pluecker(Some(&LatticeVector::basis(4, 0))).unwrap();
        assert_eq!(rho3.grade(), 3);
        let dual_rows = Sublattice::from_generators(4, &[veci(&[1, 0, 0, 0])])
            .orthogonal_dual()
            .basis_rows();
        assert_eq!(rho3, minors_oracle(&dual_rows));
    }

    #[test]
    fn subset_queries() {
        let small = Sublattice::from_generators(3, &[veci(&[2, 0, 0])]);
        let big = Sublattice::from_generators(3, &[veci(&[1, 0, 0]), veci(&[0, 1, 0])]);
        assert!(small.is_subset_of(&big));
        assert!(!big.is_subset_of(&small));
        assert!(small.contains(&veci(&[4, 0, 0])));
        assert!(!small.contains(&veci(&[1, 0, 0])));
    }
}
