//! Set gradings of `so(2n)` whose components are spanned by vectors of the
//! adapted basis `h_i, x_a + sigma(x_a), x_a - sigma(x_a)`; the gradings
//! attached to Steiner systems and to subgroups `2Q <= E <= Q`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::designs::{Block, Design};
use crate::error::{input, parse, precondition, Result};
use crate::lattice::{elementary_divisors, to_big, AbelianGroup, GroupElement, IntMatrix, Lattice};
use crate::liealg::{AlgebraBasis, Coords, OrthoElement, Scalar};
use crate::rootsys::{Root, RootSystemD};

/// Which of the two adapted vectors of a positive root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    /// `x_a + sigma(x_a)`, fixed by `sigma`
    Plus,
    /// `x_a - sigma(x_a)`, negated by `sigma`
    Minus,
}

impl Parity {
    pub fn symbol(self) -> char {
        match self {
            Parity::Plus => '+',
            Parity::Minus => '-',
        }
    }
}

/// The basis `h_1..h_n`, then `y+_a, y-_a` for each positive root `a` in
/// root-system order.
///
/// Index `k < n` is `h_{k+1}`; positive root `p` owns `n + 2p` (`y+`) and
/// `n + 2p + 1` (`y-`), mirroring the layout of [`AlgebraBasis`].
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    algebra: AlgebraBasis,
    vectors: Vec<OrthoElement>,
    /// `sigma(x_a) = t * x_{-a}`, by positive root
    twist: Vec<i64>,
}

impl AdaptedBasis {
    pub fn new(n: usize) -> Result<Self> {
        let algebra = AlgebraBasis::new(n)?;
        let mut vectors: Vec<OrthoElement> = algebra.cartan().to_vec();
        let mut twist = Vec::new();
        for (p, root) in algebra.roots().positive_roots().iter().enumerate() {
            let x = algebra.element(n + 2 * p);
            let s = crate::liealg::sigma(x);
            vectors.push(x.add(&s));
            vectors.push(x.sub(&s));
            twist.push(if root.is_difference() { -1 } else { 1 });
        }
        Ok(AdaptedBasis { algebra, vectors, twist })
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn algebra(&self) -> &AlgebraBasis {
        &self.algebra
    }

    pub fn roots(&self) -> &RootSystemD {
        self.algebra.roots()
    }

    pub fn vectors(&self) -> &[OrthoElement] {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> &OrthoElement {
        &self.vectors[k]
    }

    pub fn index(&self, positive_root: usize, parity: Parity) -> usize {
        self.rank() + 2 * positive_root + usize::from(parity == Parity::Minus)
    }

    /// Index of the adapted vector of a positive root given as a [`Root`].
    pub fn index_of(&self, root: &Root, parity: Parity) -> usize {
        let (p, neg) = self.roots().locate(root.coords()).expect("root of this system");
        debug_assert!(!neg, "adapted vectors are indexed by positive roots");
        self.index(p, parity)
    }

    /// Positive root index and parity of `k`; `None` on the Cartan.
    pub fn describe(&self, k: usize) -> Option<(usize, Parity)> {
        let n = self.rank();
        (k >= n).then(|| ((k - n) / 2, if (k - n).is_multiple_of(2) { Parity::Plus } else { Parity::Minus }))
    }

    pub fn positive_root(&self, k: usize) -> Option<&Root> {
        self.describe(k).map(|(p, _)| &self.roots().positive_roots()[p])
    }

    /// Human-readable name such as `h3`, `y+[e1-e2]`.
    pub fn name(&self, k: usize) -> String {
        match self.describe(k) {
            None => format!("h{}", k + 1),
            Some((p, s)) => format!("y{}[{}]", s.symbol(), self.roots().positive_roots()[p]),
        }
    }

    /// Adapted coordinates to coordinates in the root-vector basis.
    pub fn to_algebra_coords(&self, coords: &Coords) -> Coords {
        let n = self.rank();
        let mut out = Coords::new();
        let mut push = |k: usize, v: Scalar| {
            let e = out.entry(k).or_insert_with(Scalar::zero);
            *e += v;
            if e.is_zero() {
                out.remove(&k);
            }
        };
        for (&k, &v) in coords {
            match self.describe(k) {
                None => push(k, v),
                Some((p, s)) => {
                    let t = Scalar::from_integer(self.twist[p]);
                    let sign = if s == Parity::Plus { t } else { -t };
                    push(n + 2 * p, v);
                    push(n + 2 * p + 1, sign * v);
                }
            }
        }
        out
    }

    /// Root-vector coordinates to adapted coordinates.
    pub fn from_algebra_coords(&self, coords: &Coords) -> Coords {
        let n = self.rank();
        let half = Scalar::new(1, 2);
        let mut pairs: BTreeMap<usize, (Scalar, Scalar)> = BTreeMap::new();
        let mut out = Coords::new();
        for (&k, &v) in coords {
            if k < n {
                out.insert(k, v);
            } else {
                let e = pairs.entry((k - n) / 2).or_insert((Scalar::zero(), Scalar::zero()));
                if (k - n).is_multiple_of(2) {
                    e.0 = v;
                } else {
                    e.1 = v;
                }
            }
        }
        for (p, (a, b)) in pairs {
            let tb = Scalar::from_integer(self.twist[p]) * b;
            let plus = (a + tb) * half;
            let minus = (a - tb) * half;
            if !plus.is_zero() {
                out.insert(n + 2 * p, plus);
            }
            if !minus.is_zero() {
                out.insert(n + 2 * p + 1, minus);
            }
        }
        out
    }

    /// Adapted coordinates of an element of `so(2n)`.
    pub fn coords(&self, x: &OrthoElement) -> Result<Coords> {
        Ok(self.from_algebra_coords(&self.algebra.coords(x)?))
    }

    pub fn from_coords(&self, coords: &Coords) -> OrthoElement {
        let mut out = OrthoElement::zero(self.rank());
        for (&k, &v) in coords {
            out = out.add_scaled(v, &self.vectors[k]);
        }
        out
    }

    /// `[v_i, v_j]` in adapted coordinates.
    pub fn bracket_coords(&self, i: usize, j: usize) -> Coords {
        let b = self.vectors[i].bracket(&self.vectors[j]).expect("same rank");
        self.from_algebra_coords(&self.algebra.coords_unchecked(&b))
    }

    /// Whether `[v_i, v_j]` vanishes for support reasons alone: two root
    /// vectors on disjoint pairs of coordinates commute.
    fn disjoint(&self, i: usize, j: usize) -> bool {
        match (self.positive_root(i), self.positive_root(j)) {
            (Some(a), Some(b)) => {
                let ((a1, _), (a2, _)) = a.support();
                let ((b1, _), (b2, _)) = b.support();
                a1 != b1 && a1 != b2 && a2 != b1 && a2 != b2
            }
            _ => false,
        }
    }
}

/// Nonzero brackets of adapted basis vectors, `[v_i, v_j]` for `i < j`.
#[derive(Clone, Debug)]
pub struct StructureTable {
    dim: usize,
    entries: BTreeMap<(usize, usize), Coords>,
}

impl StructureTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[v_i, v_j]`, using antisymmetry for `i > j`.
    pub fn get(&self, i: usize, j: usize) -> Coords {
        if i <= j {
            self.entries.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            self.entries.get(&(j, i)).map(|c| c.iter().map(|(&k, &v)| (k, -v)).collect()).unwrap_or_default()
        }
    }

    /// Nonzero entries with `i < j`, in lexicographic order.
    pub fn nonzero(&self) -> impl Iterator<Item = (&(usize, usize), &Coords)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Brackets of all pairs of adapted basis vectors, computed as matrix
/// commutators and expanded back in the adapted basis.
pub fn structure_constants_adapted(basis: &AdaptedBasis) -> StructureTable {
    let dim = basis.dim();
    let mut entries = BTreeMap::new();
    for i in 0..dim {
        for j in i + 1..dim {
            if basis.disjoint(i, j) {
                continue;
            }
            let c = basis.bracket_coords(i, j);
            if !c.is_empty() {
                entries.insert((i, j), c);
            }
        }
    }
    StructureTable { dim, entries }
}

/// A partition of the adapted basis of `so(2n)` into nonempty components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetGrading {
    n: usize,
    components: Vec<Vec<usize>>,
    labels: Vec<String>,
    component_of: Vec<usize>,
}

impl SetGrading {
    /// Components must be nonempty, disjoint and cover `0..n(2n-1)`. Each
    /// component is stored sorted. Missing labels default to `C<k>`.
    pub fn new(n: usize, components: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        if n < 2 {
            return input(format!("type D needs rank n >= 2, got {}", n));
        }
        let dim = n * (2 * n - 1);
        let mut component_of = vec![usize::MAX; dim];
        let mut components = components;
        for (c, comp) in components.iter_mut().enumerate() {
            if comp.is_empty() {
                return input(format!("component {} is empty", c));
            }
            comp.sort_unstable();
            for &k in comp.iter() {
                if k >= dim {
                    return input(format!("basis index {} out of range 0..{}", k, dim));
                }
                if component_of[k] != usize::MAX {
                    return input(format!("basis index {} lies in two components", k));
                }
                component_of[k] = c;
            }
        }
        if let Some(k) = component_of.iter().position(|&c| c == usize::MAX) {
            return input(format!("basis index {} lies in no component", k));
        }
        let labels = match labels {
            Some(l) if l.len() != components.len() => return input("one label per component is required"),
            Some(l) => l,
            None => (0..components.len()).map(|c| format!("C{}", c)).collect(),
        };
        Ok(SetGrading { n, components, labels, component_of })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.component_of.len()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component(&self, c: usize) -> &[usize] {
        &self.components[c]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Component holding basis index `k`.
    pub fn component_of(&self, k: usize) -> usize {
        self.component_of[k]
    }

    /// Number of components of each dimension.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for c in &self.components {
            *h.entry(c.len()).or_insert(0) += 1;
        }
        h
    }

    /// The component containing the whole Cartan subalgebra, if any.
    pub fn cartan_component(&self) -> Option<usize> {
        let c = self.component_of[0];
        (0..self.n).all(|k| self.component_of[k] == c).then_some(c)
    }

    /// Components as sorted index lists, sorted; equal for gradings with the
    /// same homogeneous spaces.
    pub fn canonical_components(&self) -> Vec<Vec<usize>> {
        let mut c = self.components.clone();
        c.sort();
        c
    }

    /// The partition obtained by moving component `b` into component `a`.
    pub fn merged(&self, a: usize, b: usize) -> Result<SetGrading> {
        if a == b || a >= self.len() || b >= self.len() {
            return input(format!("cannot merge components {} and {}", a, b));
        }
        let mut comps = self.components.clone();
        let mut labels = self.labels.clone();
        let moved = comps.remove(b);
        let moved_label = labels.remove(b);
        let a2 = if b < a { a - 1 } else { a };
        comps[a2].extend(moved);
        labels[a2] = format!("{}|{}", labels[a2], moved_label);
        SetGrading::new(self.n, comps, Some(labels))
    }
}

/// The six pairs of orthogonal positive roots attached to a block
/// `i < j < k < l` (points 1-based): sums first, then differences, each as
/// `{ij, kl}, {ik, jl}, {il, jk}`.
pub fn pairs_from_block(n: usize, block: &Block) -> Result<[(Root, Root); 6]> {
    if !block.windows(2).all(|w| w[0] < w[1]) || block[0] < 1 || block[3] as usize > n {
        return input(format!("block {:?} is not an increasing 4-subset of 1..{}", block, n));
    }
    let [i, j, k, l] = block.map(|p| p as usize - 1);
    let root = |a: usize, b: usize, s: i64| {
        let mut v = vec![0; n];
        v[a] = 1;
        v[b] = s;
        Root::new(v).expect("two unit entries")
    };
    let splits = [((i, j), (k, l)), ((i, k), (j, l)), ((i, l), (j, k))];
    let pairs: Vec<(Root, Root)> = [1, -1]
        .iter()
        .flat_map(|&s| splits.iter().map(move |&((a, b), (c, d))| (root(a, b, s), root(c, d, s))))
        .collect();
    Ok(pairs.try_into().expect("six pairs"))
}

/// The grading of a Steiner system: the Cartan, then for each block and each
/// of its six pairs `{a, b}` the components `{y+_a, y+_b}` and `{y-_a, y-_b}`.
pub fn grading_from_design(d: &Design) -> Result<SetGrading> {
    let n = d.n() as usize;
    if n < 2 {
        return precondition("design needs at least 2 points");
    }
    if !d.validate()?.is_valid() {
        return precondition("design is not a Steiner system S(2,4,n)");
    }
    let roots = RootSystemD::new(n)?;
    let index = |r: &Root, s: Parity| {
        let p = roots.locate(r.coords()).expect("positive root").0;
        n + 2 * p + usize::from(s == Parity::Minus)
    };
    let mut components = vec![(0..n).collect::<Vec<usize>>()];
    let mut labels = vec!["H".to_string()];
    for (b, block) in d.blocks().iter().enumerate() {
        for (a, c) in pairs_from_block(n, block)? {
            for s in [Parity::Plus, Parity::Minus] {
                components.push(vec![index(&a, s), index(&c, s)]);
                labels.push(format!("B{}:{}{{{},{}}}", b + 1, s.symbol(), a, c));
            }
        }
    }
    SetGrading::new(n, components, Some(labels))
}

/// Integer matrix whose rows are twice the simple roots followed by the sum
/// of `e_i` over each block; its row span is the lattice of the design
/// grading.
pub fn design_lattice_matrix(d: &Design) -> Result<IntMatrix> {
    let n = d.n() as usize;
    let rs = RootSystemD::new(n)?;
    let mut rows: Vec<Vec<i64>> =
        rs.simple_roots().iter().map(|r| r.coords().iter().map(|x| 2 * x).collect()).collect();
    for b in d.blocks() {
        let mut v = vec![0i64; n];
        for &p in b {
            v[p as usize - 1] = 1;
        }
        rows.push(v);
    }
    Ok(IntMatrix::from_i64_rows(&rows))
}

/// Component pair `(c1 <= c2)` to the set of components met by the adapted
/// expansions of `[v, w]`, `v` in `c1`, `w` in `c2`. Pairs whose brackets
/// all vanish are absent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BracketMap {
    pub targets: BTreeMap<(usize, usize), BTreeSet<usize>>,
}

pub fn bracket_map(table: &StructureTable, g: &SetGrading) -> BracketMap {
    let mut targets: BTreeMap<(usize, usize), BTreeSet<usize>> = BTreeMap::new();
    for (&(i, j), coords) in table.nonzero() {
        let (a, b) = (g.component_of(i), g.component_of(j));
        let key = (a.min(b), a.max(b));
        let hit = targets.entry(key).or_default();
        hit.extend(coords.keys().map(|&k| g.component_of(k)));
    }
    BracketMap { targets }
}

/// Why a decomposition fails to be a (set or group) grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub first: usize,
    pub second: usize,
    /// Components met by the bracket of the two.
    pub hit: Vec<usize>,
    /// For group gradings: the component carrying the sum of the labels, if
    /// any label matches.
    pub expected: Option<usize>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[C{}, C{}] meets components {:?}", self.first, self.second, self.hit)?;
        match self.expected {
            Some(e) => write!(f, ", expected only C{}", e),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Ok,
    Fails(Counterexample),
}

impl Verification {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verification::Ok)
    }
}

/// Set-grading check against a precomputed table: the lexicographically
/// first component pair whose brackets straddle components is reported.
pub fn verify_set_grading_with(table: &StructureTable, g: &SetGrading) -> Verification {
    for (&(a, b), hit) in &bracket_map(table, g).targets {
        if hit.len() > 1 {
            return Verification::Fails(Counterexample {
                first: a,
                second: b,
                hit: hit.iter().copied().collect(),
                expected: None,
            });
        }
    }
    Verification::Ok
}

pub fn verify_set_grading(g: &SetGrading) -> Result<Verification> {
    let basis = AdaptedBasis::new(g.rank())?;
    Ok(verify_set_grading_with(&structure_constants_adapted(&basis), g))
}

/// A set grading with an injective assignment of group elements to
/// components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupGrading {
    group: AbelianGroup,
    assignment: Vec<GroupElement>,
    underlying: SetGrading,
}

impl GroupGrading {
    pub fn new(group: AbelianGroup, assignment: Vec<GroupElement>, underlying: SetGrading) -> Result<Self> {
        if assignment.len() != underlying.len() {
            return input(format!("{} labels for {} components", assignment.len(), underlying.len()));
        }
        if let Some(order) = group.order() {
            if BigInt::from(underlying.len()) > order {
                return input(format!(
                    "{} components cannot be labelled injectively by a group of order {}",
                    underlying.len(),
                    order
                ));
            }
        }
        let mut seen = BTreeMap::new();
        for (c, g) in assignment.iter().enumerate() {
            if g.0.len() != group.moduli().len() || group.reduce(&g.0) != *g {
                return input(format!("label {} of component {} is not a reduced group element", g, c));
            }
            if let Some(prev) = seen.insert(g.clone(), c) {
                return input(format!("components {} and {} share the label {}", prev, c, g));
            }
        }
        Ok(GroupGrading { group, assignment, underlying })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn assignment(&self) -> &[GroupElement] {
        &self.assignment
    }

    pub fn underlying(&self) -> &SetGrading {
        &self.underlying
    }

    pub fn label(&self, c: usize) -> &GroupElement {
        &self.assignment[c]
    }

    pub fn component_with_label(&self, g: &GroupElement) -> Option<usize> {
        self.assignment.iter().position(|x| x == g)
    }
}

pub fn verify_group_grading_with(table: &StructureTable, gg: &GroupGrading) -> Verification {
    let by_label: BTreeMap<&GroupElement, usize> = gg.assignment.iter().enumerate().map(|(c, g)| (g, c)).collect();
    for (&(a, b), hit) in &bracket_map(table, &gg.underlying).targets {
        let sum = gg.group.add(&gg.assignment[a], &gg.assignment[b]);
        let expected = by_label.get(&sum).copied();
        let fine = match expected {
            Some(e) => hit.iter().all(|&h| h == e),
            None => false,
        };
        if !fine {
            return Verification::Fails(Counterexample {
                first: a,
                second: b,
                hit: hit.iter().copied().collect(),
                expected,
            });
        }
    }
    Verification::Ok
}

pub fn verify_group_grading(gg: &GroupGrading) -> Result<Verification> {
    let basis = AdaptedBasis::new(gg.underlying.rank())?;
    Ok(verify_group_grading_with(&structure_constants_adapted(&basis), gg))
}

/// `2Q` for type `D_n`.
pub fn twice_root_lattice(n: usize) -> Result<Lattice> {
    Ok(RootSystemD::new(n)?.root_lattice().scaled(2))
}

fn check_between(n: usize, e: &Lattice) -> Result<(RootSystemD, Lattice)> {
    let rs = RootSystemD::new(n)?;
    if e.ambient_rank() != n {
        return input(format!("lattice lives in Z^{}, expected Z^{}", e.ambient_rank(), n));
    }
    let q = rs.root_lattice();
    if !q.scaled(2).is_sublattice_of(e)? || !e.is_sublattice_of(&q)? {
        return precondition("the subgroup must satisfy 2Q <= E <= Q");
    }
    Ok((rs, q))
}

/// The pure grading by `Q/E x Z/2`: `y+_a` gets `(a + E, 0)`, `y-_a` gets
/// `(a + E, 1)` and the Cartan gets `(E, 1)`. The Cartan component comes
/// first; the others follow in order of first appearance along the basis.
pub fn grading_from_subgroup(n: usize, e: &Lattice) -> Result<GroupGrading> {
    let (rs, q) = check_between(n, e)?;
    let quotient = e.quotient_in(&q)?;
    let two = AbelianGroup::elementary_two(1);
    let group = quotient.group().product(&two);
    let bit = |b: i64| GroupElement(vec![BigInt::from(b)]);
    let coset = |r: &Root| Lattice::coset_of(&q, &quotient, &to_big(r.coords())).expect("roots lie in Q");
    let cartan_label = quotient.group().zero().concat(&bit(1));
    let mut order: Vec<GroupElement> = vec![cartan_label.clone()];
    let mut members: BTreeMap<GroupElement, Vec<usize>> = BTreeMap::new();
    members.insert(cartan_label, (0..n).collect());
    for (p, r) in rs.positive_roots().iter().enumerate() {
        let c = coset(r);
        for (offset, b) in [(0, 0), (1, 1)] {
            let label = c.concat(&bit(b));
            let slot = members.entry(label.clone()).or_insert_with(|| {
                order.push(label.clone());
                Vec::new()
            });
            slot.push(n + 2 * p + offset);
        }
    }
    let components: Vec<Vec<usize>> = order.iter().map(|l| members[l].clone()).collect();
    let labels: Vec<String> = order.iter().map(|l| l.to_string()).collect();
    let underlying = SetGrading::new(n, components, Some(labels))?;
    GroupGrading::new(group, order, underlying)
}

/// Reads a subgroup file: the rank `n` on the first line, then integer
/// vectors of length `n`. The lattice returned is `2Q` plus their span.
/// `#` starts a comment line.
pub fn parse_subgroup(text: &str) -> Result<(usize, Lattice)> {
    let mut n: Option<usize> = None;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(n) = n else {
            let v: usize = line.parse().or_else(|_| parse(lineno, format!("expected rank, found {:?}", line)))?;
            if v < 2 {
                return parse(lineno, "rank must be at least 2");
            }
            n = Some(v);
            continue;
        };
        let row: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse().or_else(|_| parse(lineno, format!("not an integer: {:?}", t))))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return parse(lineno, format!("expected {} entries, found {}", n, row.len()));
        }
        rows.push(row);
    }
    let Some(n) = n else {
        return parse(1, "missing rank");
    };
    let extra = Lattice::from_vectors(n, rows.iter().map(Vec::as_slice))?;
    Ok((n, twice_root_lattice(n)?.sum(&extra)?))
}

/// `2Q + Z(positive roots in E) + Z(differences of positive roots lying in E)`.
pub fn ecirc(n: usize, e: &Lattice) -> Result<Lattice> {
    let (rs, _) = check_between(n, e)?;
    let pos = rs.positive_roots();
    let mut gens: Vec<Vec<i64>> =
        pos.iter().filter(|r| e.contains_i64(r.coords()).unwrap()).map(|r| r.coords().to_vec()).collect();
    for (a_idx, a) in pos.iter().enumerate() {
        for b in &pos[a_idx + 1..] {
            let d: Vec<i64> = a.coords().iter().zip(b.coords()).map(|(x, y)| x - y).collect();
            if e.contains_i64(&d)? {
                gens.push(d);
            }
        }
    }
    let extra = Lattice::from_vectors(n, gens.iter().map(Vec::as_slice))?;
    twice_root_lattice(n)?.sum(&extra)
}

/// The lattice read off a grading built on the adapted basis: `2Q`, the
/// positive roots `a` with `y-_a` in the Cartan's component, and `a - b`
/// whenever `y_a` and `y_b` of the same parity share a component.
pub fn e_from_grading(g: &SetGrading) -> Result<Lattice> {
    let n = g.rank();
    let rs = RootSystemD::new(n)?;
    let pos = rs.positive_roots();
    let cartan = g.cartan_component();
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for comp in g.components() {
        let mut first: BTreeMap<Parity, &Root> = BTreeMap::new();
        for &k in comp {
            if k < n {
                continue;
            }
            let p = (k - n) / 2;
            let parity = if (k - n).is_multiple_of(2) { Parity::Plus } else { Parity::Minus };
            let r = &pos[p];
            if parity == Parity::Minus && Some(g.component_of(k)) == cartan {
                gens.push(r.coords().to_vec());
            }
            match first.get(&parity) {
                None => {
                    first.insert(parity, r);
                }
                Some(r0) => gens.push(r.coords().iter().zip(r0.coords()).map(|(x, y)| x - y).collect()),
            }
        }
    }
    let extra = Lattice::from_vectors(n, gens.iter().map(Vec::as_slice))?;
    twice_root_lattice(n)?.sum(&extra)
}

/// Invariant factors of `Q / e_from_grading(g)` together with the `Z/2`
/// generated by `sigma`. Requires the Cartan inside one component.
pub fn diag_invariants(g: &SetGrading) -> Result<Vec<BigInt>> {
    if g.cartan_component().is_none() {
        return precondition("the Cartan subalgebra is not contained in a single component");
    }
    let e = e_from_grading(g)?;
    let q = RootSystemD::new(g.rank())?.root_lattice();
    let inv = e.quotient_invariants(&q)?;
    debug_assert_eq!(inv.free_rank, 0, "2Q <= E has finite index in Q");
    let mut diag = inv.invariant_factors;
    diag.push(BigInt::from(2));
    let m = IntMatrix::diagonal(diag.len(), diag.len(), &diag);
    Ok(elementary_divisors(&m).into_iter().filter(|d| !d.is_one()).collect())
}
