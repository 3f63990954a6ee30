//! Sparse polyvectors in `Λ^k M` with wedge product and interior contraction.
//!
//! Keys are strictly increasing index subsets; shuffle signs are computed on
//! the fly. Polyvectors arising from trees are sparse, so a map
//! representation wins over a dense one.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use super::vector::{Covector, LatticeVector, TwoForm};
use crate::error::{Error, Result};
use crate::Int;

/// An element of `Λ^k M` for a fixed ambient rank `r`, `0 ≤ k ≤ r + 1`.
/// Grade `r + 1` is the clamp used for wedge overflow and is always zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polyvector {
    rank: usize,
    grade: usize,
    terms: BTreeMap<Vec<u8>, Int>,
}

impl Polyvector {
    pub fn zero(rank: usize, grade: usize) -> Self {
        Polyvector {
            rank,
            grade,
            terms: BTreeMap::new(),
        }
    }

    /// The unit of `Λ^0 M`.
    pub fn unit(rank: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), Int::one());
        Polyvector {
            rank,
            grade: 0,
            terms,
        }
    }

    /// The generator `e_1^* ∧ ... ∧ e_r^*` of `Λ^r M`.
    pub fn top_generator(rank: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0..rank as u8).collect(), Int::one());
        Polyvector {
            rank,
            grade: rank,
            terms,
        }
    }

    pub fn from_covector(m: &Covector) -> Self {
        let rank = m.rank();
        let mut terms = BTreeMap::new();
        for (i, c) in m.coords().iter().enumerate() {
            if !c.is_zero() {
                terms.insert(vec![i as u8], c.clone());
            }
        }
        Polyvector {
            rank,
            grade: 1,
            terms,
        }
    }

    /// The 2-form as an element of `Λ² M`.
    pub fn from_two_form(omega: &TwoForm) -> Self {
        let rank = omega.rank();
        let mut terms = BTreeMap::new();
        for i in 0..rank {
            for j in i + 1..rank {
                let c = omega.entry(i, j);
                if !c.is_zero() {
                    terms.insert(vec![i as u8, j as u8], c.clone());
                }
            }
        }
        Polyvector {
            rank,
            grade: 2,
            terms,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &Int)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, key: &[u8]) -> Int {
        self.terms.get(key).cloned().unwrap_or_else(Int::zero)
    }

    /// The coefficient against the top generator; only meaningful at grade `r`.
    pub fn top_coefficient(&self) -> Int {
        let key: Vec<u8> = (0..self.rank as u8).collect();
        self.coefficient(&key)
    }

    /// Gcd of all coefficients (0 for the zero polyvector).
    pub fn content(&self) -> Int {
        self.terms
            .values()
            .fold(Int::zero(), |acc, c| num::Integer::gcd(&acc, &c.abs()))
    }

    pub fn neg(&self) -> Self {
        Polyvector {
            rank: self.rank,
            grade: self.grade,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn scale(&self, k: &Int) -> Self {
        if k.is_zero() {
            return Polyvector::zero(self.rank, self.grade);
        }
        Polyvector {
            rank: self.rank,
            grade: self.grade,
            terms: self.terms.iter().map(|(key, v)| (key.clone(), v * k)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        assert_eq!(self.grade, other.grade, "grade mismatch in addition");
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let entry = terms.entry(k.clone()).or_insert_with(Int::zero);
            *entry += v;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        Polyvector {
            rank: self.rank,
            grade: self.grade,
            terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Wedge product. Grades beyond the ambient rank land in
    /// `Λ^{r+1} M = {0}` and come back as the zero polyvector of clamped
    /// grade.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        let grade = (self.grade + other.grade).min(self.rank + 1);
        if self.grade + other.grade > self.rank {
            return Polyvector::zero(self.rank, grade);
        }
        let mut terms: BTreeMap<Vec<u8>, Int> = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let Some((key, sign)) = merge_keys(k1, k2) else {
                    continue;
                };
                let mut c = c1 * c2;
                if sign < 0 {
                    c = -c;
                }
                match terms.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        if !c.is_zero() {
                            e.insert(c);
                        }
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
        Polyvector {
            rank: self.rank,
            grade,
            terms,
        }
    }

    /// Interior product `ι_n`, a degree −1 antiderivation. Errors on grade-0
    /// input, which has no meaningful contraction.
    pub fn interior(&self, n: &LatticeVector) -> Result<Self> {
        if self.grade == 0 {
            return Err(Error::GradeZeroContraction);
        }
        assert_eq!(self.rank, n.rank(), "rank mismatch");
        let mut terms: BTreeMap<Vec<u8>, Int> = BTreeMap::new();
        for (key, c) in &self.terms {
            for (pos, &idx) in key.iter().enumerate() {
                let factor = n.coord(idx as usize);
                if factor.is_zero() {
                    continue;
                }
                let mut sub = key.clone();
                sub.remove(pos);
                let mut contrib = c * factor;
                if pos % 2 == 1 {
                    contrib = -contrib;
                }
                let entry = terms.entry(sub.clone()).or_insert_with(Int::zero);
                *entry += contrib;
                if entry.is_zero() {
                    terms.remove(&sub);
                }
            }
        }
        Ok(Polyvector {
            rank: self.rank,
            grade: self.grade - 1,
            terms,
        })
    }
}

/// Merge two strictly increasing key sets; `None` on a shared index. The
/// sign is the parity of the shuffle gluing `k2` after `k1`.
fn merge_keys(k1: &[u8], k2: &[u8]) -> Option<(Vec<u8>, i8)> {
    let mut out = Vec::with_capacity(k1.len() + k2.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0usize, 0usize);
    while i < k1.len() && j < k2.len() {
        match k1[i].cmp(&k2[j]) {
            std::cmp::Ordering::Less => {
                out.push(k1[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                // k2[j] jumps over the remaining k1 entries.
                inversions += k1.len() - i;
                out.push(k2[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&k1[i..]);
    out.extend_from_slice(&k2[j..]);
    Some((out, if inversions % 2 == 0 { 1 } else { -1 }))
}
