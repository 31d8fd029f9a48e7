#![allow(dead_code)]

use std::collections::BTreeSet;

use setgrading::gradings::twice_root_lattice;
use setgrading::lattice::Lattice;
use setgrading::rootsys::RootSystemD;

/// Every subspace of `F_2^n`, each as the set of its elements (bit masks).
pub fn subspaces_f2(n: usize) -> Vec<BTreeSet<u64>> {
    let zero: BTreeSet<u64> = [0].into_iter().collect();
    let mut seen: BTreeSet<BTreeSet<u64>> = [zero.clone()].into_iter().collect();
    let mut frontier = vec![zero];
    while let Some(s) = frontier.pop() {
        for v in 1..(1u64 << n) {
            if s.contains(&v) {
                continue;
            }
            let bigger: BTreeSet<u64> = s.iter().flat_map(|&x| [x, x ^ v]).collect();
            if seen.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
    }
    seen.into_iter().collect()
}

/// The sum of the simple roots selected by the bits of `mask`.
pub fn simple_combination(rs: &RootSystemD, mask: u64) -> Vec<i64> {
    let mut v = vec![0i64; rs.rank()];
    for (k, s) in rs.simple_roots().iter().enumerate() {
        if mask >> k & 1 == 1 {
            for (x, y) in v.iter_mut().zip(s.coords()) {
                *x += y;
            }
        }
    }
    v
}

/// `2Q` plus the span of the vectors named by `space`.
pub fn lattice_of(rs: &RootSystemD, space: &BTreeSet<u64>) -> Lattice {
    let n = rs.rank();
    let gens: Vec<Vec<i64>> = space.iter().map(|&m| simple_combination(rs, m)).collect();
    let extra = Lattice::from_vectors(n, gens.iter().map(Vec::as_slice)).unwrap();
    twice_root_lattice(n).unwrap().sum(&extra).unwrap()
}

/// All lattices `2Q <= E <= Q` for rank `n`.
pub fn intermediate_lattices(n: usize) -> Vec<Lattice> {
    let rs = RootSystemD::new(n).unwrap();
    subspaces_f2(n).iter().map(|s| lattice_of(&rs, s)).collect()
}
