//! The root system of type `D_n` in epsilon coordinates.

use std::collections::HashMap;
use std::fmt;

use crate::error::{input, Result};
use crate::lattice::Lattice;

/// A root `±e_i ± e_j` (`i != j`) stored as its integer coordinate vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    coords: Vec<i64>,
}

impl Root {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if !is_root(&coords) {
            return input(format!("{:?} is not a root of type D", coords));
        }
        Ok(Root { coords })
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn neg(&self) -> Root {
        Root { coords: self.coords.iter().map(|c| -c).collect() }
    }

    /// The two nonzero positions `(i, j)`, `i < j`, with their signs.
    pub fn support(&self) -> ((usize, i64), (usize, i64)) {
        let mut it = self.coords.iter().enumerate().filter(|(_, c)| **c != 0);
        let (i, a) = it.next().unwrap();
        let (j, b) = it.next().unwrap();
        ((i, *a), (j, *b))
    }

    /// Positive means first nonzero coordinate is `+1`.
    pub fn is_positive(&self) -> bool {
        self.support().0 .1 > 0
    }

    /// `e_i - e_j` (`i < j` when positive) rather than `±(e_i + e_j)`.
    pub fn is_difference(&self) -> bool {
        let ((_, a), (_, b)) = self.support();
        a != b
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ((i, a), (j, b)) = self.support();
        let sign = |s: i64| if s > 0 { "+" } else { "-" };
        let lead = if a > 0 { "" } else { "-" };
        write!(f, "{}e{}{}e{}", lead, i + 1, sign(b), j + 1)
    }
}

/// Exactly two nonzero entries, each `±1`.
pub fn is_root(v: &[i64]) -> bool {
    let nonzero: Vec<i64> = v.iter().copied().filter(|&c| c != 0).collect();
    nonzero.len() == 2 && nonzero.iter().all(|c| c.abs() == 1)
}

pub fn inner(a: &[i64], b: &[i64]) -> Result<i64> {
    if a.len() != b.len() {
        return input("inner product of vectors of different length");
    }
    Ok(a.iter().zip(b).map(|(x, y)| x * y).sum())
}

fn unit(n: usize, i: usize, s: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = s;
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[derive(Clone, Debug)]
pub struct RootSystemD {
    n: usize,
    positive: Vec<Root>,
    simple: Vec<Root>,
    lookup: HashMap<Vec<i64>, usize>,
}

impl RootSystemD {
    /// Positive roots are listed as `e_i - e_j` (`i < j`, lexicographic) and then
    /// `e_i + e_j`; simple roots are `e_1 - e_2, ..., e_{n-1} - e_n, e_{n-1} + e_n`.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return input(format!("type D needs rank n >= 2, got {}", n));
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut positive = Vec::with_capacity(n * (n - 1));
        for &(i, j) in &pairs {
            positive.push(Root { coords: add(&unit(n, i, 1), &unit(n, j, -1)) });
        }
        for &(i, j) in &pairs {
            positive.push(Root { coords: add(&unit(n, i, 1), &unit(n, j, 1)) });
        }
        let mut simple: Vec<Root> =
            (0..n - 1).map(|i| Root { coords: add(&unit(n, i, 1), &unit(n, i + 1, -1)) }).collect();
        simple.push(Root { coords: add(&unit(n, n - 2, 1), &unit(n, n - 1, 1)) });
        let lookup = positive.iter().enumerate().map(|(k, r)| (r.coords.clone(), k)).collect();
        Ok(RootSystemD { n, positive, simple, lookup })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.simple
    }

    /// Index of `e_i - e_j` (`i < j`) among the positive roots.
    pub fn difference_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        pair_index(self.n, i, j)
    }

    /// Index of `e_i + e_j` (`i < j`) among the positive roots.
    pub fn sum_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        self.n * (self.n - 1) / 2 + pair_index(self.n, i, j)
    }

    /// Positive root index of `v` or of `-v`, with `true` when `v` is negative.
    pub fn locate(&self, v: &[i64]) -> Option<(usize, bool)> {
        if let Some(&k) = self.lookup.get(v) {
            return Some((k, false));
        }
        let neg: Vec<i64> = v.iter().map(|c| -c).collect();
        self.lookup.get(&neg).map(|&k| (k, true))
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        v.len() == self.n && is_root(v)
    }

    /// Coefficients of `v` in the simple roots, if `v` lies in the root lattice.
    pub fn simple_coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let n = self.n;
        if v.len() != n {
            return None;
        }
        let total: i64 = v.iter().sum();
        if total % 2 != 0 {
            return None;
        }
        let mut c = Vec::with_capacity(n);
        let mut partial = 0;
        for &x in &v[..n - 2] {
            partial += x;
            c.push(partial);
        }
        let before_last = partial + v[n - 2];
        c.push((before_last - v[n - 1]) / 2);
        c.push(total / 2);
        Some(c)
    }

    /// `Q`, the span of the roots.
    pub fn root_lattice(&self) -> Lattice {
        Lattice::from_vectors(self.n, self.simple.iter().map(|r| r.coords())).unwrap()
    }

    /// `W = Z^n`, the span of the weights of the natural module.
    pub fn weight_lattice(&self) -> Lattice {
        Lattice::full(self.n)
    }
}

pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // pairs (a, b) with a < i come first: sum_{a<i} (n - 1 - a)
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}
