//! Steiner systems `S(2,4,n)`: the projective plane of order 3, validation,
//! cyclic difference families and a plain-text file format.
//!
//! Points are `1..=n`. Blocks are strictly increasing 4-tuples.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{input, parse, precondition, Result};

pub type Block = [u32; 4];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    n: u32,
    blocks: Vec<Block>,
}

/// One reason a design fails to be a Steiner system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Issue {
    /// The pair lies in no block.
    Uncovered { pair: (u32, u32) },
    /// The pair lies in two or more blocks; indices of the first two listed.
    Repeated { pair: (u32, u32), blocks: (usize, usize) },
    /// Block count differs from `n(n-1)/12`; `expected` is `None` when no
    /// Steiner system exists for `n`.
    BlockCount { found: usize, expected: Option<usize> },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::Uncovered { pair } => write!(f, "pair {{{}, {}}} is not covered", pair.0, pair.1),
            Issue::Repeated { pair, blocks } => {
                write!(f, "pair {{{}, {}}} lies in blocks {} and {}", pair.0, pair.1, blocks.0 + 1, blocks.1 + 1)
            }
            Issue::BlockCount { found, expected: Some(e) } => write!(f, "{} blocks, expected {}", found, e),
            Issue::BlockCount { found, expected: None } => {
                write!(f, "{} blocks, but no S(2,4,n) exists for this n", found)
            }
        }
    }
}

/// Certificate of failure: every uncovered or repeated pair in lexicographic
/// order, then the block-count mismatch if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub issues: Vec<Issue>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid(Violation),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// The lines of the projective plane over GF(3), points numbered 1..13.
pub const PG23_LINES: [Block; 13] = [
    [1, 2, 3, 4],
    [1, 5, 6, 7],
    [1, 8, 9, 10],
    [1, 11, 12, 13],
    [2, 5, 8, 11],
    [2, 6, 9, 12],
    [2, 7, 10, 13],
    [3, 5, 9, 13],
    [3, 6, 10, 11],
    [3, 7, 8, 12],
    [4, 5, 10, 12],
    [4, 6, 8, 13],
    [4, 7, 9, 11],
];

pub fn pg2_f3() -> Design {
    Design { n: 13, blocks: PG23_LINES.to_vec() }
}

/// Whether `S(2,4,n)` can exist: `n = 1 or 4 (mod 12)`.
pub fn admissible(n: u32) -> bool {
    matches!(n % 12, 1 | 4)
}

fn check_block(n: u32, b: &Block) -> Result<()> {
    if !b.windows(2).all(|w| w[0] < w[1]) {
        return input(format!("block {:?} is not strictly increasing", b));
    }
    if b[0] < 1 || b[3] > n {
        return input(format!("block {:?} has a point outside 1..{}", b, n));
    }
    Ok(())
}

impl Design {
    pub fn new(n: u32, blocks: Vec<Block>) -> Result<Self> {
        for b in &blocks {
            check_block(n, b)?;
        }
        Ok(Design { n, blocks })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn without_block(&self, index: usize) -> Design {
        let mut blocks = self.blocks.clone();
        blocks.remove(index);
        Design { n: self.n, blocks }
    }

    /// Checks the Steiner property and the block count.
    pub fn validate(&self) -> Result<Validity> {
        let n = self.n as usize;
        for b in &self.blocks {
            check_block(self.n, b)?;
        }
        // first covering block of each pair, indexed by p * n + q (0-based)
        let mut first: Vec<Option<usize>> = vec![None; n * n];
        let mut repeats = BTreeSet::new();
        for (k, b) in self.blocks.iter().enumerate() {
            for x in 0..4 {
                for y in x + 1..4 {
                    let (p, q) = (b[x] as usize - 1, b[y] as usize - 1);
                    match first[p * n + q] {
                        None => first[p * n + q] = Some(k),
                        Some(k0) => {
                            repeats.insert(((b[x], b[y]), (k0, k)));
                        }
                    }
                }
            }
        }
        let mut issues = Vec::new();
        let mut reported = BTreeSet::new();
        for p in 0..n {
            for q in p + 1..n {
                let pair = (p as u32 + 1, q as u32 + 1);
                if first[p * n + q].is_none() {
                    issues.push(Issue::Uncovered { pair });
                } else if let Some(&(_, blocks)) = repeats.range((pair, (0, 0))..).next().filter(|(pr, _)| *pr == pair)
                {
                    if reported.insert(pair) {
                        issues.push(Issue::Repeated { pair, blocks });
                    }
                }
            }
        }
        let expected = (admissible(self.n) || self.n <= 1).then(|| n * n.saturating_sub(1) / 12);
        if expected != Some(self.blocks.len()) {
            issues.push(Issue::BlockCount { found: self.blocks.len(), expected });
        }
        Ok(if issues.is_empty() { Validity::Valid } else { Validity::Invalid(Violation { issues }) })
    }

    /// Blocks through each point (1-based), as counts.
    pub fn replication(&self) -> Vec<usize> {
        let mut r = vec![0; self.n as usize];
        for b in &self.blocks {
            for &p in b {
                r[p as usize - 1] += 1;
            }
        }
        r
    }

    /// Text form: `n` on the first line, then one block per line.
    pub fn write(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for b in &self.blocks {
            out.push_str(&format!("{} {} {} {}\n", b[0], b[1], b[2], b[3]));
        }
        out
    }

    /// Parses the text form. `#` starts a comment line; blank lines are
    /// ignored. Errors carry the 1-based line number.
    pub fn parse(text: &str) -> Result<Design> {
        let mut n: Option<u32> = None;
        let mut blocks: Vec<Block> = Vec::new();
        let mut seen = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some(nv) = n else {
                let v: u32 =
                    line.parse().or_else(|_| parse(lineno, format!("expected point count, found {:?}", line)))?;
                n = Some(v);
                continue;
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 4 {
                return parse(lineno, format!("a block has 4 points, found {}", toks.len()));
            }
            let mut b = [0u32; 4];
            for (slot, tok) in b.iter_mut().zip(&toks) {
                *slot = tok.parse().or_else(|_| parse(lineno, format!("not a point: {:?}", tok)))?;
            }
            if let Err(crate::Error::Input(m)) = check_block(nv, &b) {
                return parse(lineno, m);
            }
            if !seen.insert(b) {
                return parse(lineno, format!("duplicate block {:?}", b));
            }
            blocks.push(b);
        }
        match n {
            Some(n) => Ok(Design { n, blocks }),
            None => parse(1, "missing point count"),
        }
    }
}

/// A finite abelian group `Z/m_1 x ... x Z/m_k` whose elements are encoded
/// as integers `0..order` in mixed radix, first factor most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    moduli: Vec<u32>,
}

impl FiniteGroup {
    pub fn new(moduli: Vec<u32>) -> Result<Self> {
        if moduli.is_empty() || moduli.iter().any(|&m| m < 2) {
            return input(format!("group moduli must be at least 2, got {:?}", moduli));
        }
        Ok(FiniteGroup { moduli })
    }

    pub fn cyclic(n: u32) -> Self {
        FiniteGroup { moduli: vec![n] }
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn order(&self) -> u32 {
        self.moduli.iter().product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.moduli.len() == 1
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut d = vec![0; self.moduli.len()];
        for (slot, &m) in d.iter_mut().zip(&self.moduli).rev() {
            *slot = x % m;
            x /= m;
        }
        d
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().zip(&self.moduli).fold(0, |acc, (&d, &m)| acc * m + d)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let d: Vec<u32> =
            self.digits(a).iter().zip(self.digits(b)).zip(&self.moduli).map(|((x, y), m)| (x + y) % m).collect();
        self.encode(&d)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let d: Vec<u32> =
            self.digits(a).iter().zip(self.digits(b)).zip(&self.moduli).map(|((x, y), m)| (x + m - y) % m).collect();
        self.encode(&d)
    }

    /// Element as a tuple, e.g. `(3,1)`; plain number for cyclic groups.
    pub fn label(&self, x: u32) -> String {
        if self.is_cyclic() {
            return x.to_string();
        }
        let parts: Vec<String> = self.digits(x).iter().map(u32::to_string).collect();
        format!("({})", parts.join(","))
    }

    fn table(&self, op: fn(&Self, u32, u32) -> u32) -> Vec<u32> {
        let n = self.order();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| op(self, a, b)).collect()
    }
}

/// All abelian groups of order `n` by invariant factors `m_1 | m_2 | ...`,
/// cyclic first, then by increasing number of factors.
pub fn abelian_groups_of_order(n: u32) -> Vec<FiniteGroup> {
    fn chains(rest: u32, last: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 1 {
            out.push(acc.iter().rev().copied().collect());
            return;
        }
        // build from the largest factor down; each factor divides the previous
        for d in (2..=rest).filter(|d| rest.is_multiple_of(*d) && last.is_multiple_of(*d)) {
            acc.push(d);
            chains(rest / d, d, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        chains(n, n, &mut Vec::new(), &mut out);
    }
    out.retain(|m| m.windows(2).all(|w| w[1] % w[0] == 0));
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(b.cmp(a)));
    out.into_iter().map(|moduli| FiniteGroup { moduli }).collect()
}

/// Base blocks of a difference family in `group`, each a sorted 4-set of
/// encoded elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceFamily {
    pub group: FiniteGroup,
    pub base_blocks: Vec<Block>,
}

/// Signed differences of a family of base blocks: `counts[r]` is how often
/// the element `r` occurs as `b_x - b_y`.
pub fn difference_counts_in(group: &FiniteGroup, base_blocks: &[Block]) -> Vec<usize> {
    let mut counts = vec![0usize; group.order() as usize];
    for b in base_blocks {
        for x in 0..4 {
            for y in 0..4 {
                if x != y {
                    counts[group.sub(b[x], b[y]) as usize] += 1;
                }
            }
        }
    }
    counts
}

/// Cyclic case of [`difference_counts_in`].
pub fn difference_counts(n: u32, base_blocks: &[Block]) -> Vec<usize> {
    difference_counts_in(&FiniteGroup::cyclic(n), base_blocks)
}

/// Develops base blocks into `{B + t : t in G}`, with element `x` becoming
/// point `x + 1`.
pub fn develop_in_group(group: &FiniteGroup, base_blocks: &[Block]) -> Result<Design> {
    let n = group.order();
    if n < 4 {
        return input("difference families need at least 4 elements");
    }
    for b in base_blocks {
        if b.iter().any(|&x| x >= n) {
            return input(format!("base block {:?} has an element outside 0..{}", b, n));
        }
        let set: BTreeSet<u32> = b.iter().copied().collect();
        if set.len() != 4 {
            return input(format!("base block {:?} repeats an element", b));
        }
    }
    let counts = difference_counts_in(group, base_blocks);
    if let Some(r) = (1..n).find(|&r| counts[r as usize] != 1) {
        return input(format!("element {} is covered {} times by the differences", group.label(r), counts[r as usize]));
    }
    let mut blocks = Vec::with_capacity(base_blocks.len() * n as usize);
    for b in base_blocks {
        for t in 0..n {
            let mut nb = b.map(|x| group.add(x, t) + 1);
            nb.sort_unstable();
            blocks.push(nb);
        }
    }
    let d = Design::new(n, blocks)?;
    match d.validate()? {
        Validity::Valid => Ok(d),
        Validity::Invalid(v) => input(format!("developed design is not a Steiner system: {}", v.issues[0])),
    }
}

/// Develops base blocks of residues mod `n` into the cyclic design
/// `{B + t mod n}`, shifted to points `1..=n`.
pub fn develop_difference_family(n: u32, base_blocks: &[Block]) -> Result<Design> {
    develop_in_group(&FiniteGroup::cyclic(n), base_blocks)
}

/// Depth-first search for a difference family of 4-sets in `group`. Each new
/// base block is `{0, d, p, q}` where `d` is the smallest element whose
/// difference class is still uncovered and `p < q` run in encoding order.
/// Returns the sorted family or `None` once the search space is exhausted.
pub fn search_in_group(group: &FiniteGroup) -> Result<Option<Vec<Block>>> {
    let n = group.order();
    if n < 13 || n % 12 != 1 {
        return precondition(format!("(n,4,1) difference families need n = 1 (mod 12), n >= 13; got {}", n));
    }
    let ctx = SearchContext { n, sub: group.table(FiniteGroup::sub), target: (n as usize - 1) / 12 };
    let mut used = vec![false; n as usize];
    let mut family = Vec::new();
    let found = ctx.extend(&mut used, &mut family);
    Ok(found.then(|| {
        family.sort_unstable();
        family
    }))
}

/// Searches the abelian groups of order `n` in the order of
/// [`abelian_groups_of_order`], cyclic first, and returns the first family
/// found. `None` when no group of order `n` admits one under this search.
pub fn search_base_blocks(n: u32) -> Result<Option<DifferenceFamily>> {
    if n < 13 || n % 12 != 1 {
        return precondition(format!("(n,4,1) difference families need n = 1 (mod 12), n >= 13; got {}", n));
    }
    for group in abelian_groups_of_order(n) {
        if let Some(base_blocks) = search_in_group(&group)? {
            return Ok(Some(DifferenceFamily { group, base_blocks }));
        }
    }
    Ok(None)
}

struct SearchContext {
    n: u32,
    sub: Vec<u32>,
    target: usize,
}

impl SearchContext {
    fn diff(&self, a: u32, b: u32) -> u32 {
        self.sub[(a * self.n + b) as usize]
    }

    fn extend(&self, used: &mut [bool], family: &mut Vec<Block>) -> bool {
        if family.len() == self.target {
            return true;
        }
        let Some(d) = (1..self.n).find(|&r| !used[r as usize]) else {
            return false;
        };
        for p in 1..self.n {
            if p == d {
                continue;
            }
            for q in p + 1..self.n {
                if q == d {
                    continue;
                }
                let mut block = [0, d, p, q];
                block.sort_unstable();
                let Some(diffs) = self.block_differences(&block, used) else { continue };
                for &r in &diffs {
                    used[r as usize] = true;
                }
                family.push(block);
                if self.extend(used, family) {
                    return true;
                }
                family.pop();
                for &r in &diffs {
                    used[r as usize] = false;
                }
            }
        }
        false
    }

    /// The twelve signed differences of `block` if they are distinct and all
    /// unused.
    fn block_differences(&self, block: &Block, used: &[bool]) -> Option<Vec<u32>> {
        let mut diffs = Vec::with_capacity(12);
        for x in 0..4 {
            for y in 0..4 {
                if x == y {
                    continue;
                }
                let r = self.diff(block[x], block[y]);
                if used[r as usize] || diffs.contains(&r) {
                    return None;
                }
                diffs.push(r);
            }
        }
        Some(diffs)
    }
}
