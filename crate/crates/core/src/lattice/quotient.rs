use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::hermite::{HermiteAccumulator, SparseRow};
use super::smith::smith_with_right;
use super::IntMatrix;

/// A finitely generated abelian group `Z^k (+) Z/m_1 (+) ... `, stored as a
/// list of moduli where `0` marks a free factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    moduli: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(moduli: Vec<BigInt>) -> Self {
        AbelianGroup { moduli }
    }

    pub fn elementary_two(rank: usize) -> Self {
        AbelianGroup { moduli: vec![BigInt::from(2); rank] }
    }

    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    /// Appends the factors of `other`.
    pub fn product(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut moduli = self.moduli.clone();
        moduli.extend(other.moduli.iter().cloned());
        AbelianGroup { moduli }
    }

    /// `None` when the group has a free factor.
    pub fn order(&self) -> Option<BigInt> {
        self.moduli.iter().try_fold(BigInt::one(), |acc, m| (!m.is_zero()).then(|| acc * m))
    }

    pub fn reduce(&self, x: &[BigInt]) -> GroupElement {
        assert_eq!(x.len(), self.moduli.len(), "element has wrong length");
        GroupElement(
            x.iter().zip(&self.moduli).map(|(v, m)| if m.is_zero() { v.clone() } else { v.mod_floor(m) }).collect(),
        )
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![BigInt::zero(); self.moduli.len()])
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let sum: Vec<BigInt> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.reduce(&sum)
    }
}

/// Coordinates of an element of an [`AbelianGroup`], reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<BigInt>);

impl GroupElement {
    pub fn concat(&self, other: &GroupElement) -> GroupElement {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        GroupElement(v)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `Z^generators / span(relations)` together with the canonical quotient map.
///
/// With `D = U * H * V` the Smith form of the Hermite basis `H` of the
/// relation lattice, a vector `x` maps to `x * V`, read modulo the diagonal:
/// unit positions vanish, positions with `d > 1` are torsion coordinates and
/// positions past the rank of `H` are free coordinates.
#[derive(Debug, Clone)]
pub struct AbelianQuotient {
    generators: usize,
    transform: IntMatrix,
    diagonal: Vec<BigInt>,
    group: AbelianGroup,
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl AbelianQuotient {
    pub fn from_relations<I: IntoIterator<Item = SparseRow>>(generators: usize, relations: I) -> Self {
        let mut acc = HermiteAccumulator::new(generators);
        for r in relations {
            acc.insert(r);
        }
        Self::from_hermite(&acc)
    }

    pub(crate) fn from_hermite(acc: &HermiteAccumulator) -> Self {
        let generators = acc.width();
        let h = acc.to_matrix();
        let (d, transform) = smith_with_right(&h);
        let rank = h.rows();
        let mut diagonal: Vec<BigInt> = (0..rank).map(|i| d[(i, i)].clone()).collect();
        diagonal.resize(generators, BigInt::zero());
        let free_rank = generators - rank;
        let invariant_factors: Vec<BigInt> = diagonal[..rank].iter().filter(|v| !v.is_one()).cloned().collect();
        let mut moduli = vec![BigInt::zero(); free_rank];
        moduli.extend(invariant_factors.iter().cloned());
        AbelianQuotient {
            generators,
            transform,
            diagonal,
            group: AbelianGroup::new(moduli),
            free_rank,
            invariant_factors,
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Nontrivial invariant factors `d_1 | d_2 | ...`, all `> 1`.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// `None` when the quotient is infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.group.order()
    }

    /// Image of an integer vector; free coordinates first, then torsion.
    pub fn image(&self, x: &[BigInt]) -> GroupElement {
        assert_eq!(x.len(), self.generators, "vector has wrong length");
        let mut free = Vec::with_capacity(self.free_rank);
        let mut torsion = Vec::with_capacity(self.invariant_factors.len());
        for (j, d) in self.diagonal.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            let mut y = BigInt::zero();
            for (i, xi) in x.iter().enumerate() {
                if !xi.is_zero() {
                    y += xi * &self.transform[(i, j)];
                }
            }
            if d.is_zero() {
                free.push(y);
            } else {
                torsion.push(y.mod_floor(d));
            }
        }
        free.extend(torsion);
        GroupElement(free)
    }

    /// Image of the `k`-th standard basis vector.
    pub fn generator_image(&self, k: usize) -> GroupElement {
        let mut x = vec![BigInt::zero(); self.generators];
        x[k] = BigInt::one();
        self.image(&x)
    }
}
