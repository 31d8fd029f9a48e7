//! Exact integer linear algebra: Smith and Hermite normal forms, sublattices
//! of `Z^n`, indices and quotient invariants.

mod hermite;
mod matrix;
mod quotient;
mod smith;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

pub use hermite::{HermiteAccumulator, SparseRow};
pub use matrix::IntMatrix;
pub use quotient::{AbelianGroup, AbelianQuotient, GroupElement};
pub use smith::{elementary_divisors, smith_normal_form, SmithDecomposition};

use crate::error::{input, precondition, Result};

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// A subgroup of `Z^n` held in row Hermite normal form.
///
/// Two values compare equal exactly when they describe the same subgroup.
#[derive(Clone)]
pub struct Lattice {
    hermite: HermiteAccumulator,
    basis: IntMatrix,
}

/// Index of a sublattice; infinite when the ranks differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(v) => write!(f, "{}", v),
            Index::Infinite => write!(f, "infinity"),
        }
    }
}

/// Structure of `sup / sub`: `Z^free_rank (+) Z/d_1 (+) ... ` with `d_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientInvariants {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl Lattice {
    fn from_accumulator(hermite: HermiteAccumulator) -> Self {
        let basis = hermite.to_matrix();
        Lattice { hermite, basis }
    }

    /// The Z-span of the rows of `rows`.
    pub fn from_rows(rows: &IntMatrix, ambient_rank: usize) -> Result<Self> {
        if rows.cols() != ambient_rank {
            return input(format!("rows have {} columns, ambient rank is {}", rows.cols(), ambient_rank));
        }
        let mut acc = HermiteAccumulator::new(ambient_rank);
        for i in 0..rows.rows() {
            acc.insert_dense(rows.row(i));
        }
        Ok(Self::from_accumulator(acc))
    }

    pub fn from_vectors<'a, I>(ambient_rank: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [i64]>,
    {
        let mut acc = HermiteAccumulator::new(ambient_rank);
        for v in vectors {
            if v.len() != ambient_rank {
                return input(format!("vector of length {} in ambient rank {}", v.len(), ambient_rank));
            }
            acc.insert_dense(&to_big(v));
        }
        Ok(Self::from_accumulator(acc))
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Self::from_accumulator(HermiteAccumulator::new(ambient_rank))
    }

    /// `Z^n` itself.
    pub fn full(ambient_rank: usize) -> Self {
        Self::from_rows(&IntMatrix::identity(ambient_rank), ambient_rank).unwrap()
    }

    pub fn ambient_rank(&self) -> usize {
        self.hermite.width()
    }

    pub fn rank(&self) -> usize {
        self.hermite.rank()
    }

    /// Hermite basis, one row per generator.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// `k * L`
    pub fn scaled(&self, k: i64) -> Lattice {
        let k = BigInt::from(k);
        let rows: Vec<Vec<BigInt>> =
            self.basis.row_vecs().into_iter().map(|r| r.into_iter().map(|x| x * &k).collect()).collect();
        let m = IntMatrix::from_rows(self.ambient_rank(), &rows).unwrap();
        Self::from_rows(&m, self.ambient_rank()).unwrap()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.ambient_rank() {
            return input(format!("vector of length {} in ambient rank {}", len, self.ambient_rank()));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        self.check_len(v.len())?;
        Ok(self.hermite.solve(v).is_some())
    }

    pub fn contains_i64(&self, v: &[i64]) -> Result<bool> {
        self.contains(&to_big(v))
    }

    /// Coefficients of `v` in the Hermite basis, if `v` is a member.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        self.check_len(v.len())?;
        Ok(self.hermite.solve(v))
    }

    pub fn is_sublattice_of(&self, sup: &Lattice) -> Result<bool> {
        if self.ambient_rank() != sup.ambient_rank() {
            return input("lattices live in different ambient ranks");
        }
        Ok((0..self.basis.rows()).all(|i| sup.hermite.solve(self.basis.row(i)).is_some()))
    }

    /// Smallest lattice containing both.
    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient_rank() != other.ambient_rank() {
            return input("lattices live in different ambient ranks");
        }
        let mut acc = self.hermite.clone();
        for (_, row) in other.hermite.pivot_rows() {
            acc.insert(row.clone());
        }
        Ok(Self::from_accumulator(acc))
    }

    /// `sup / self` as an abelian group with its quotient map on `sup`'s
    /// Hermite coordinates.
    pub fn quotient_in(&self, sup: &Lattice) -> Result<AbelianQuotient> {
        if !self.is_sublattice_of(sup)? {
            return precondition("lattice is not contained in the given superlattice");
        }
        let coords = (0..self.basis.rows()).map(|i| {
            let c = sup.hermite.solve(self.basis.row(i)).expect("checked membership");
            hermite::to_sparse(&c)
        });
        Ok(AbelianQuotient::from_relations(sup.rank(), coords))
    }

    pub fn quotient_invariants(&self, sup: &Lattice) -> Result<QuotientInvariants> {
        let q = self.quotient_in(sup)?;
        Ok(QuotientInvariants { invariant_factors: q.invariant_factors().to_vec(), free_rank: q.free_rank() })
    }

    /// `[sup : self]`
    pub fn index_in(&self, sup: &Lattice) -> Result<Index> {
        let q = self.quotient_in(sup)?;
        Ok(match q.order() {
            Some(v) => Index::Finite(v),
            None => Index::Infinite,
        })
    }

    /// Image of a member of `sup` in `sup / self`, given the quotient.
    pub fn coset_of(sup: &Lattice, quotient: &AbelianQuotient, v: &[BigInt]) -> Result<GroupElement> {
        match sup.coordinates(v)? {
            Some(c) => Ok(quotient.image(&c)),
            None => precondition("vector is not in the superlattice"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank() == other.ambient_rank() && self.basis == other.basis
    }
}

impl Eq for Lattice {}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(rank {} in Z^{}) {:?}", self.rank(), self.ambient_rank(), self.basis)
    }
}

impl Index {
    pub fn is_finite(&self) -> bool {
        matches!(self, Index::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Index::Finite(v) => Some(v),
            Index::Infinite => None,
        }
    }
}

pub fn nonzero_divisors(divs: &[BigInt]) -> Vec<BigInt> {
    divs.iter().filter(|d| !d.is_zero()).cloned().collect()
}
