//! Vectors of `N`, covectors of `M`, antisymmetric 2-forms and bivectors.

use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Int;

/// Index of the ordered pair `(i, j)`, `i < j`, in the canonical basis
/// `(0,1), (0,2), ..., (r-2, r-1)` of `Λ²ℤ^r`.
pub fn pair_index(i: usize, j: usize, rank: usize) -> usize {
    debug_assert!(i < j && j < rank);
    i * rank - i * (i + 1) / 2 + (j - i - 1)
}

/// Inverse of [`pair_index`].
pub fn unpair_index(mut idx: usize, rank: usize) -> (usize, usize) {
    for i in 0..rank - 1 {
        let row = rank - 1 - i;
        if idx < row {
            return (i, i + 1 + idx);
        }
        idx -= row;
    }
    unreachable!("pair index out of range")
}

fn gcd_of(coords: &[Int]) -> Int {
    coords
        .iter()
        .fold(Int::zero(), |acc, c| acc.gcd(&c.abs()))
}

/// An element of `N ≅ ℤ^r` in the canonical basis.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    coords: Vec<Int>,
}

/// An element of the dual lattice `M = Hom(N, ℤ)` in the dual basis.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Covector {
    coords: Vec<Int>,
}

macro_rules! coord_impls {
    ($t:ident) => {
        impl $t {
            pub fn new(coords: Vec<Int>) -> Self {
                $t { coords }
            }

            pub fn from_i64(coords: &[i64]) -> Self {
                $t {
                    coords: coords.iter().map(|&x| Int::from(x)).collect(),
                }
            }

            pub fn zero(rank: usize) -> Self {
                $t {
                    coords: vec![Int::zero(); rank],
                }
            }

            pub fn basis(rank: usize, i: usize) -> Self {
                let mut v = Self::zero(rank);
                v.coords[i] = Int::one();
                v
            }

            pub fn rank(&self) -> usize {
                self.coords.len()
            }

            pub fn coords(&self) -> &[Int] {
                &self.coords
            }

            pub fn coord(&self, i: usize) -> &Int {
                &self.coords[i]
            }

            pub fn is_zero(&self) -> bool {
                self.coords.iter().all(|c| c.is_zero())
            }

            pub fn add(&self, other: &Self) -> Self {
                $t {
                    coords: self
                        .coords
                        .iter()
                        .zip(&other.coords)
                        .map(|(a, b)| a + b)
                        .collect(),
                }
            }

            pub fn sub(&self, other: &Self) -> Self {
                $t {
                    coords: self
                        .coords
                        .iter()
                        .zip(&other.coords)
                        .map(|(a, b)| a - b)
                        .collect(),
                }
            }

            pub fn neg(&self) -> Self {
                $t {
                    coords: self.coords.iter().map(|a| -a).collect(),
                }
            }

            pub fn scale(&self, k: &Int) -> Self {
                $t {
                    coords: self.coords.iter().map(|a| a * k).collect(),
                }
            }

            /// Gcd of the coordinates (0 for the zero vector).
            pub fn content(&self) -> Int {
                gcd_of(&self.coords)
            }

            pub fn is_primitive(&self) -> bool {
                self.content().is_one()
            }

            /// Divide out the content; the zero vector is returned unchanged.
            pub fn primitive_part(&self) -> Self {
                let c = self.content();
                if c.is_zero() || c.is_one() {
                    return self.clone();
                }
                $t {
                    coords: self.coords.iter().map(|a| a / &c).collect(),
                }
            }
        }
    };
}

coord_impls!(LatticeVector);
coord_impls!(Covector);

impl Covector {
    /// Natural pairing `⟨m, v⟩`.
    pub fn apply(&self, v: &LatticeVector) -> Int {
        assert_eq!(self.rank(), v.rank(), "rank mismatch in pairing");
        self.coords
            .iter()
            .zip(v.coords())
            .map(|(a, b)| a * b)
            .sum()
    }
}

/// An antisymmetric 2-form `ω ∈ Λ²M`, stored as its `r × r` matrix
/// `[ω]_{ij} = ω(e_i, e_j)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoForm {
    rank: usize,
    mat: Vec<Int>,
}

impl TwoForm {
    /// Build from a full matrix, checking antisymmetry.
    pub fn new(rank: usize, mat: Vec<Vec<Int>>) -> Result<Self> {
        if mat.len() != rank || mat.iter().any(|r| r.len() != rank) {
            return Err(Error::RankMismatch {
                expected: rank,
                got: mat.len(),
            });
        }
        for i in 0..rank {
            for j in 0..rank {
                if mat[i][j] != -mat[j][i].clone() {
                    return Err(Error::NotAntisymmetric { i, j });
                }
            }
        }
        Ok(TwoForm {
            rank,
            mat: mat.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(mat: &[&[i64]]) -> Result<Self> {
        let rank = mat.len();
        TwoForm::new(
            rank,
            mat.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
    }

    /// Build from the strict upper triangle, listed row by row.
    pub fn from_upper_triangle(rank: usize, upper: &[Int]) -> Self {
        assert_eq!(upper.len(), rank * (rank - 1) / 2);
        let mut mat = vec![Int::zero(); rank * rank];
        for (idx, value) in upper.iter().enumerate() {
            let (i, j) = unpair_index(idx, rank);
            mat[i * rank + j] = value.clone();
            mat[j * rank + i] = -value.clone();
        }
        TwoForm { rank, mat }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> &Int {
        &self.mat[i * self.rank + j]
    }

    /// `ω(a, b) = aᵀ [ω] b`.
    pub fn eval_pair(&self, a: &LatticeVector, b: &LatticeVector) -> Int {
        assert_eq!(a.rank(), self.rank, "rank mismatch");
        assert_eq!(b.rank(), self.rank, "rank mismatch");
        let mut acc = Int::zero();
        for i in 0..self.rank {
            if a.coord(i).is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if !self.entry(i, j).is_zero() && !b.coord(j).is_zero() {
                    acc += a.coord(i) * self.entry(i, j) * b.coord(j);
                }
            }
        }
        acc
    }

    /// Evaluation on a bivector: `ω(Σ c_{ij} e_i ∧ e_j) = Σ c_{ij} ω_{ij}`.
    pub fn eval_bivector(&self, pi: &Bivector) -> Int {
        assert_eq!(pi.rank(), self.rank, "rank mismatch");
        let mut acc = Int::zero();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                let c = pi.coord(i, j);
                if !c.is_zero() {
                    acc += c * self.entry(i, j);
                }
            }
        }
        acc
    }

    /// The contraction `ι_n ω = ω(n, ·) ∈ M`.
    pub fn iota(&self, n: &LatticeVector) -> Covector {
        assert_eq!(n.rank(), self.rank, "rank mismatch");
        let coords = (0..self.rank)
            .map(|j| {
                (0..self.rank)
                    .map(|i| n.coord(i) * self.entry(i, j))
                    .sum::<Int>()
            })
            .collect();
        Covector::new(coords)
    }

    /// Evaluate on a generating set of a sublattice of `Λ²N`; true when the
    /// form vanishes identically on it.
    pub fn vanishes_on(&self, exponents: &[Vec<Int>]) -> bool {
        exponents.iter().all(|x| self.eval_exponent(x).is_zero())
    }

    /// Evaluate on a raw exponent vector in the canonical pair basis.
    pub fn eval_exponent(&self, x: &[Int]) -> Int {
        assert_eq!(x.len(), self.rank * (self.rank - 1) / 2);
        let mut acc = Int::zero();
        for (idx, c) in x.iter().enumerate() {
            if !c.is_zero() {
                let (i, j) = unpair_index(idx, self.rank);
                acc += c * self.entry(i, j);
            }
        }
        acc
    }
}

/// An element of `Λ²N` as `C(r,2)` integer coordinates on the canonical
/// ordered-pair basis.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Bivector {
    rank: usize,
    coords: Vec<Int>,
}

impl Bivector {
    pub fn zero(rank: usize) -> Self {
        Bivector {
            rank,
            coords: vec![Int::zero(); rank * (rank - 1) / 2],
        }
    }

    /// `a ∧ b`, with coordinates `a_i b_j − a_j b_i` for `i < j`.
    pub fn wedge(a: &LatticeVector, b: &LatticeVector) -> Result<Self> {
        if a.rank() != b.rank() {
            return Err(Error::RankMismatch {
                expected: a.rank(),
                got: b.rank(),
            });
        }
        let rank = a.rank();
        let mut coords = Vec::with_capacity(rank * (rank - 1) / 2);
        for i in 0..rank {
            for j in i + 1..rank {
                coords.push(a.coord(i) * b.coord(j) - a.coord(j) * b.coord(i));
            }
        }
        Ok(Bivector { rank, coords })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coord(&self, i: usize, j: usize) -> &Int {
        &self.coords[pair_index(i, j, self.rank)]
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn neg(&self) -> Self {
        Bivector {
            rank: self.rank,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        Bivector {
            rank: self.rank,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Gcd of the coordinates (0 for the zero bivector).
    pub fn content(&self) -> Int {
        gcd_of(&self.coords)
    }
}
