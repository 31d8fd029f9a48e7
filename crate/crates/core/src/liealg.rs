//! The split orthogonal Lie algebra `so(2n)` as sparse `2n x 2n` matrices over
//! the rationals, relative to a basis `u_1..u_n, v_1..v_n` of the natural
//! module with `b(u_i, v_j) = delta_ij`.
//!
//! Matrix index `i < n` is `u_{i+1}` and `n + i` is `v_{i+1}`. Membership is
//! `X^t S + S X = 0` with `S = [[0, I], [I, 0]]`, i.e. blocks
//! `[[A, B], [C, -A^t]]` with `B` and `C` skew-symmetric.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{input, Result};
use crate::rootsys::{Root, RootSystemD};

pub type Scalar = Rational64;

/// Sparse coordinate vector: basis index to nonzero coefficient.
pub type Coords = BTreeMap<usize, Scalar>;

#[derive(Clone, PartialEq, Eq)]
pub struct OrthoElement {
    n: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

fn partner(n: usize, k: usize) -> usize {
    if k < n {
        k + n
    } else {
        k - n
    }
}

impl OrthoElement {
    pub fn zero(n: usize) -> Self {
        OrthoElement { n, entries: BTreeMap::new() }
    }

    /// Matrix with the given entries; zeros are dropped. Panics on indices
    /// outside `[0, 2n)`.
    pub fn from_entries<I: IntoIterator<Item = ((usize, usize), Scalar)>>(n: usize, entries: I) -> Self {
        let mut x = Self::zero(n);
        for ((r, c), v) in entries {
            assert!(r < 2 * n && c < 2 * n, "entry ({}, {}) outside a {}x{} matrix", r, c, 2 * n, 2 * n);
            x.add_entry(r, c, v);
        }
        x
    }

    fn add_entry(&mut self, r: usize, c: usize, v: Scalar) {
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((r, c)).or_insert_with(Scalar::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).copied().unwrap_or_else(Scalar::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), Scalar)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `X^t S + S X = 0`, checked entrywise as `X[c'][r'] = -X[r][c]` where
    /// `k'` swaps the `u` and `v` halves.
    pub fn is_orthogonal(&self) -> bool {
        let n = self.n;
        self.entries.iter().all(|(&(r, c), v)| self.get(partner(n, c), partner(n, r)) == -*v)
    }

    pub fn scale(&self, k: Scalar) -> Self {
        if k.is_zero() {
            return Self::zero(self.n);
        }
        OrthoElement { n: self.n, entries: self.entries.iter().map(|(p, v)| (*p, *v * k)).collect() }
    }

    /// `self + k * other`
    pub fn add_scaled(&self, k: Scalar, other: &OrthoElement) -> Self {
        assert_eq!(self.n, other.n, "rank mismatch");
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_entry(r, c, *v * k);
        }
        out
    }

    pub fn add(&self, other: &OrthoElement) -> Self {
        self.add_scaled(Scalar::one(), other)
    }

    pub fn sub(&self, other: &OrthoElement) -> Self {
        self.add_scaled(-Scalar::one(), other)
    }

    fn product_into(&self, other: &OrthoElement, sign: Scalar, out: &mut OrthoElement) {
        for (&(r, k), a) in &self.entries {
            for (&(k2, c), b) in other.entries.range((k, 0)..(k + 1, 0)) {
                debug_assert_eq!(k, k2);
                out.add_entry(r, c, *a * *b * sign);
            }
        }
    }

    /// Plain matrix product.
    pub fn matmul(&self, other: &OrthoElement) -> Result<OrthoElement> {
        if self.n != other.n {
            return input(format!("rank mismatch: {} vs {}", self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        self.product_into(other, Scalar::one(), &mut out);
        Ok(out)
    }

    /// Commutator `xy - yx`.
    pub fn bracket(&self, other: &OrthoElement) -> Result<OrthoElement> {
        if self.n != other.n {
            return input(format!("rank mismatch: {} vs {}", self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        self.product_into(other, Scalar::one(), &mut out);
        other.product_into(self, -Scalar::one(), &mut out);
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        OrthoElement { n: self.n, entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), *v)).collect() }
    }
}

impl fmt::Debug for OrthoElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrthoElement(n={}) {{", self.n)?;
        for ((r, c), v) in &self.entries {
            write!(f, " ({},{}): {}", r, c, v)?;
        }
        write!(f, " }}")
    }
}

/// `x -> -x^t`, an involutive automorphism acting as `-1` on the Cartan
/// subalgebra and swapping `L_a` with `L_{-a}`.
pub fn sigma(x: &OrthoElement) -> OrthoElement {
    x.transpose().scale(-Scalar::one())
}

/// Identity on the diagonal blocks, `-1` on the off-diagonal blocks.
pub fn tau(x: &OrthoElement) -> OrthoElement {
    let n = x.n;
    OrthoElement {
        n,
        entries: x.entries.iter().map(|(&(r, c), v)| ((r, c), if (r < n) == (c < n) { *v } else { -*v })).collect(),
    }
}

/// Cartan elements `h_i` followed by `x_a, x_{-a}` for each positive root `a`.
///
/// Basis index `i < n` is `h_{i+1}`; the positive root with index `p` owns
/// `n + 2p` (for `x_a`) and `n + 2p + 1` (for `x_{-a}`).
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    roots: RootSystemD,
    elements: Vec<OrthoElement>,
}

fn unit(r: usize, c: usize, v: i64) -> ((usize, usize), Scalar) {
    ((r, c), Scalar::from_integer(v))
}

/// Root vector for any root (positive or negative).
fn root_matrix(n: usize, root: &Root) -> OrthoElement {
    let ((i, a), (j, b)) = root.support();
    match (a, b) {
        // e_i - e_j
        (1, -1) => OrthoElement::from_entries(n, [unit(i, j, 1), unit(n + j, n + i, -1)]),
        // -e_i + e_j = e_j - e_i
        (-1, 1) => OrthoElement::from_entries(n, [unit(j, i, 1), unit(n + i, n + j, -1)]),
        (1, 1) => OrthoElement::from_entries(n, [unit(i, n + j, 1), unit(j, n + i, -1)]),
        (-1, -1) => OrthoElement::from_entries(n, [unit(n + i, j, 1), unit(n + j, i, -1)]),
        _ => unreachable!("roots have unit coordinates"),
    }
}

impl AlgebraBasis {
    pub fn new(n: usize) -> Result<Self> {
        let roots = RootSystemD::new(n)?;
        let mut elements = Vec::with_capacity(n * (2 * n - 1));
        for i in 0..n {
            elements.push(OrthoElement::from_entries(n, [unit(i, i, 1), unit(n + i, n + i, -1)]));
        }
        for r in roots.positive_roots() {
            elements.push(root_matrix(n, r));
            elements.push(root_matrix(n, &r.neg()));
        }
        Ok(AlgebraBasis { roots, elements })
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    /// `n(2n - 1)`
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn roots(&self) -> &RootSystemD {
        &self.roots
    }

    pub fn elements(&self) -> &[OrthoElement] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &OrthoElement {
        &self.elements[k]
    }

    pub fn cartan(&self) -> &[OrthoElement] {
        &self.elements[..self.rank()]
    }

    pub fn root_vector(&self, root: &Root) -> &OrthoElement {
        &self.elements[self.root_index(root)]
    }

    /// Basis index of the root vector `x_root`.
    pub fn root_index(&self, root: &Root) -> usize {
        let (p, neg) = self.roots.locate(root.coords()).expect("root of this system");
        self.rank() + 2 * p + usize::from(neg)
    }

    /// Coordinates of an element of `so(2n)` in this basis.
    pub fn coords(&self, x: &OrthoElement) -> Result<Coords> {
        if x.n != self.rank() {
            return input(format!("rank mismatch: {} vs {}", x.n, self.rank()));
        }
        if !x.is_orthogonal() {
            return input("matrix is not in so(2n)");
        }
        Ok(self.coords_unchecked(x))
    }

    /// Reads coordinates off the `A`, `B` and `C` blocks; assumes `x` lies
    /// in `so(2n)`.
    pub(crate) fn coords_unchecked(&self, x: &OrthoElement) -> Coords {
        let n = self.rank();
        let mut out = Coords::new();
        for (&(r, c), v) in &x.entries {
            let k = match (r < n, c < n) {
                (true, true) if r == c => r,
                (true, true) => {
                    let (i, j) = (r, c);
                    if i < j {
                        n + 2 * self.roots.difference_index(i, j)
                    } else {
                        n + 2 * self.roots.difference_index(j, i) + 1
                    }
                }
                (true, false) if r < c - n => n + 2 * self.roots.sum_index(r, c - n),
                (false, true) if r - n < c => n + 2 * self.roots.sum_index(r - n, c) + 1,
                _ => continue,
            };
            out.insert(k, *v);
        }
        out
    }

    pub fn from_coords(&self, coords: &Coords) -> OrthoElement {
        let mut out = OrthoElement::zero(self.rank());
        for (&k, &v) in coords {
            out = out.add_scaled(v, &self.elements[k]);
        }
        out
    }

    /// Root of the basis element `k`, `None` for Cartan elements.
    pub fn root_of(&self, k: usize) -> Option<Root> {
        let n = self.rank();
        if k < n {
            return None;
        }
        let r = &self.roots.positive_roots()[(k - n) / 2];
        Some(if (k - n).is_multiple_of(2) { r.clone() } else { r.neg() })
    }
}

/// A character of `Q / 2Q`, stored by its signs on the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    simple_signs: Vec<i8>,
}

impl Character {
    pub fn trivial(n: usize) -> Self {
        Character { simple_signs: vec![1; n] }
    }

    pub fn from_simple_signs(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return input("character values must be +1 or -1");
        }
        Ok(Character { simple_signs: signs })
    }

    /// Builds a character from its values on the positive roots and checks
    /// that those values are multiplicative.
    pub fn from_root_values(roots: &RootSystemD, values: &[i8]) -> Result<Self> {
        if values.len() != roots.positive_roots().len() {
            return input("one value per positive root is required");
        }
        let simple: Vec<i8> =
            roots.simple_roots().iter().map(|s| values[roots.locate(s.coords()).unwrap().0]).collect();
        let chi = Self::from_simple_signs(simple)?;
        for (r, &v) in roots.positive_roots().iter().zip(values) {
            if chi.value(roots, r.coords()) != Some(v) {
                return input(format!("values are not a homomorphism: mismatch at {}", r));
            }
        }
        Ok(chi)
    }

    /// All `2^n` characters, indexed by the bits of a counter (bit `k` set
    /// means `-1` on simple root `k`).
    pub fn all(n: usize) -> impl Iterator<Item = Character> {
        (0u64..(1u64 << n))
            .map(move |m| Character { simple_signs: (0..n).map(|k| if m >> k & 1 == 1 { -1 } else { 1 }).collect() })
    }

    pub fn simple_signs(&self) -> &[i8] {
        &self.simple_signs
    }

    /// Value on `v + 2Q`; `None` when `v` is not in the root lattice.
    pub fn value(&self, roots: &RootSystemD, v: &[i64]) -> Option<i8> {
        let c = roots.simple_coordinates(v)?;
        let odd = c.iter().zip(&self.simple_signs).filter(|(x, s)| **s == -1 && x.rem_euclid(2) == 1).count();
        Some(if odd % 2 == 0 { 1 } else { -1 })
    }
}

/// Image of basis element `k` under the automorphism attached to `chi`:
/// `x_a -> chi(a) x_a`, Cartan fixed.
pub fn tau_chi(basis: &AlgebraBasis, chi: &Character, k: usize) -> Result<OrthoElement> {
    if chi.simple_signs.len() != basis.rank() {
        return input("character rank does not match the algebra");
    }
    let x = basis.element(k);
    Ok(match basis.root_of(k) {
        None => x.clone(),
        Some(root) => {
            let v = chi.value(basis.roots(), root.coords()).expect("roots lie in Q");
            x.scale(Scalar::from_integer(v.into()))
        }
    })
}

/// `tau_chi` on every basis element.
pub fn tau_chi_map(basis: &AlgebraBasis, chi: &Character) -> Result<Vec<OrthoElement>> {
    (0..basis.dim()).map(|k| tau_chi(basis, chi, k)).collect()
}

/// Linear extension of `phi` (images of the basis) applied to coordinates.
pub fn apply_linear(phi: &[OrthoElement], coords: &Coords, n: usize) -> OrthoElement {
    let mut out = OrthoElement::zero(n);
    for (&k, &v) in coords {
        out = out.add_scaled(v, &phi[k]);
    }
    out
}

/// Whether the linear map sending basis element `k` to `phi[k]` is a Lie
/// algebra automorphism: images lie in `so(2n)`, brackets are preserved on
/// all basis pairs and the coefficient matrix is invertible.
pub fn check_automorphism(basis: &AlgebraBasis, phi: &[OrthoElement]) -> bool {
    let n = basis.rank();
    if phi.len() != basis.dim() || phi.iter().any(|x| x.n != n || !x.is_orthogonal()) {
        return false;
    }
    let images: Vec<Coords> = phi.iter().map(|x| basis.coords_unchecked(x)).collect();
    if rational_rank(&images) != basis.dim() {
        return false;
    }
    let elems = basis.elements();
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            let br = elems[i].bracket(&elems[j]).unwrap();
            let lhs = apply_linear(phi, &basis.coords_unchecked(&br), n);
            let rhs = phi[i].bracket(&phi[j]).unwrap();
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Rank over the rationals of a list of sparse vectors.
pub fn rational_rank(rows: &[Coords]) -> usize {
    let mut pivots: BTreeMap<usize, Coords> = BTreeMap::new();
    for row in rows {
        let mut v = row.clone();
        while let Some((&col, &lead)) = v.iter().next() {
            match pivots.get(&col) {
                Some(p) => {
                    let f = lead / p[&col];
                    for (&c, &x) in p {
                        let e = v.entry(c).or_insert_with(Scalar::zero);
                        *e -= f * x;
                        if e.is_zero() {
                            v.remove(&c);
                        }
                    }
                }
                None => {
                    pivots.insert(col, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}
