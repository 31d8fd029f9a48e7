//! The abelianized universal group of a set grading and the decision
//! whether the grading comes from a group.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{input, precondition, Result};
use crate::gradings::{
    bracket_map, structure_constants_adapted, verify_set_grading_with, AdaptedBasis, BracketMap, GroupGrading,
    SetGrading, StructureTable, Verification,
};
use crate::lattice::{AbelianGroup, AbelianQuotient, GroupElement, IntMatrix, SparseRow};

/// Generators are the components; each relation row encodes
/// `s1 + s2 - s3 = 0`. Rows are kept sorted and without repeats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianPresentation {
    generators: usize,
    relations: Vec<SparseRow>,
}

impl AbelianPresentation {
    pub fn new(generators: usize, relations: impl IntoIterator<Item = SparseRow>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for row in relations {
            if row.iter().any(|(c, _)| *c >= generators) {
                return input(format!("relation mentions a generator outside 0..{}", generators));
            }
            let mut merged: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (c, v) in row {
                *merged.entry(c).or_insert_with(BigInt::zero) += v;
            }
            let row: SparseRow = merged.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            if !row.is_empty() {
                set.insert(row);
            }
        }
        Ok(AbelianPresentation { generators, relations: set.into_iter().collect() })
    }

    /// Relation for a product `s1 s2 = s3`.
    pub fn product_relation(s1: usize, s2: usize, s3: usize) -> SparseRow {
        vec![(s1, BigInt::one()), (s2, BigInt::one()), (s3, -BigInt::one())]
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[SparseRow] {
        &self.relations
    }

    /// Dense relation matrix, one row per relation.
    pub fn to_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relations.len(), self.generators);
        for (i, row) in self.relations.iter().enumerate() {
            for (c, v) in row {
                m[(i, *c)] = v.clone();
            }
        }
        m
    }

    fn quotient(&self) -> AbelianQuotient {
        AbelianQuotient::from_relations(self.generators, self.relations.iter().cloned())
    }
}

/// `Z^generators / relations` with the image of every generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalGroupResult {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
    pub group: AbelianGroup,
    pub images: Vec<GroupElement>,
}

impl UniversalGroupResult {
    /// Whether the images satisfy every relation of `p`.
    pub fn respects(&self, p: &AbelianPresentation) -> bool {
        p.relations().iter().all(|row| {
            let mut acc = self.group.zero();
            for (c, v) in row {
                let scaled: Vec<BigInt> = self.images[*c].0.iter().map(|x| x * v).collect();
                acc = self.group.add(&acc, &self.group.reduce(&scaled));
            }
            acc == self.group.zero()
        })
    }
}

/// One relation per unordered component pair with a nonzero bracket,
/// read from an aggregated bracket map of a verified set grading.
pub fn relations_from_map(components: usize, map: &BracketMap) -> Result<AbelianPresentation> {
    let mut rows = Vec::with_capacity(map.targets.len());
    for (&(a, b), hit) in &map.targets {
        let mut it = hit.iter();
        let (Some(&c), None) = (it.next(), it.next()) else {
            return precondition(format!("bracket of components {} and {} is not homogeneous", a, b));
        };
        rows.push(AbelianPresentation::product_relation(a, b, c));
    }
    AbelianPresentation::new(components, rows)
}

pub fn relations_from_grading(g: &SetGrading) -> Result<AbelianPresentation> {
    let table = structure_constants_adapted(&AdaptedBasis::new(g.rank())?);
    relations_with(&table, g)
}

/// [`relations_from_grading`] against a precomputed structure table.
pub fn relations_with(table: &StructureTable, g: &SetGrading) -> Result<AbelianPresentation> {
    if let Verification::Fails(c) = verify_set_grading_with(table, g) {
        return precondition(format!("not a set grading: {}", c));
    }
    relations_from_map(g.len(), &bracket_map(table, g))
}

/// `(free rank, invariant factors > 1)` of the presented group.
pub fn abelian_invariants(p: &AbelianPresentation) -> (usize, Vec<BigInt>) {
    let q = p.quotient();
    (q.free_rank(), q.invariant_factors().to_vec())
}

/// Image of each generator, free coordinates first, then torsion
/// coordinates reduced modulo their invariant factor.
pub fn generator_images(p: &AbelianPresentation) -> Vec<GroupElement> {
    universal_group(p).images
}

pub fn universal_group(p: &AbelianPresentation) -> UniversalGroupResult {
    let q = p.quotient();
    UniversalGroupResult {
        free_rank: q.free_rank(),
        invariant_factors: q.invariant_factors().to_vec(),
        group: q.group().clone(),
        images: (0..p.generators()).map(|k| q.generator_image(k)).collect(),
    }
}

/// Two distinct components with the same image in the universal group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision {
    pub first: usize,
    pub second: usize,
    pub image: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Realizable(GroupGrading),
    NotRealizable(Collision),
}

impl Verdict {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Verdict::Realizable(_))
    }
}

/// Universal group, presentation and verdict of one grading.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub presentation: AbelianPresentation,
    pub universal: UniversalGroupResult,
    pub verdict: Verdict,
}

/// Lexicographically first pair `(i, j)`, `i < j`, with equal images.
pub fn first_collision(images: &[GroupElement]) -> Option<Collision> {
    let mut first_seen: BTreeMap<&GroupElement, usize> = BTreeMap::new();
    let mut best: Option<(usize, usize)> = None;
    for (j, img) in images.iter().enumerate() {
        match first_seen.get(img) {
            None => {
                first_seen.insert(img, j);
            }
            Some(&i) => {
                // the second member of each class is met first while scanning j
                if best.is_none_or(|(bi, _)| i < bi) {
                    best = Some((i, j));
                }
            }
        }
    }
    best.map(|(first, second)| Collision { first, second, image: images[first].clone() })
}

pub fn analyze_with(table: &StructureTable, g: &SetGrading) -> Result<Analysis> {
    let presentation = relations_with(table, g)?;
    let universal = universal_group(&presentation);
    let verdict = match first_collision(&universal.images) {
        Some(c) => Verdict::NotRealizable(c),
        None => Verdict::Realizable(GroupGrading::new(universal.group.clone(), universal.images.clone(), g.clone())?),
    };
    Ok(Analysis { presentation, universal, verdict })
}

/// Realizable with the induced grading over the universal group when the
/// images of the components are pairwise distinct; otherwise the first
/// colliding pair.
pub fn realizability_verdict(g: &SetGrading) -> Result<Verdict> {
    let table = structure_constants_adapted(&AdaptedBasis::new(g.rank())?);
    Ok(analyze_with(&table, g)?.verdict)
}
