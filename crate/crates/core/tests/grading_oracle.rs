mod common;

use proptest::prelude::*;
use setgrading::designs::Design;
use setgrading::gradings::{
    grading_from_design, grading_from_subgroup, verify_group_grading, verify_set_grading, AdaptedBasis, SetGrading,
    Verification,
};
use setgrading::liealg::{rational_rank, Coords};

/// Spans of the components in the coordinates of the root-vector basis,
/// computed from the matrices of the adapted vectors.
fn component_spans(basis: &AdaptedBasis, g: &SetGrading) -> Vec<Vec<Coords>> {
    g.components()
        .iter()
        .map(|comp| comp.iter().map(|&k| basis.algebra().coords(basis.vector(k)).unwrap()).collect())
        .collect()
}

/// First pair of components (in lexicographic order) whose brackets do
/// not fit inside a single component, found by rational linear algebra on
/// the matrices themselves.
fn oracle_first_failure(basis: &AdaptedBasis, g: &SetGrading) -> Option<(usize, usize)> {
    let spans = component_spans(basis, g);
    let ranks: Vec<usize> = spans.iter().map(|s| rational_rank(s)).collect();
    for a in 0..g.len() {
        for b in a..g.len() {
            let mut brackets: Vec<Coords> = Vec::new();
            for &i in g.component(a) {
                for &j in g.component(b) {
                    let m = basis.vector(i).bracket(basis.vector(j)).unwrap();
                    if !m.is_zero() {
                        brackets.push(basis.algebra().coords(&m).unwrap());
                    }
                }
            }
            if brackets.is_empty() {
                continue;
            }
            let fits = spans.iter().zip(&ranks).any(|(span, &r)| {
                let mut joint = span.clone();
                joint.extend(brackets.iter().cloned());
                rational_rank(&joint) == r
            });
            if !fits {
                return Some((a, b));
            }
        }
    }
    None
}

fn assert_agrees(basis: &AdaptedBasis, g: &SetGrading, what: &str) -> bool {
    let oracle = oracle_first_failure(basis, g);
    match verify_set_grading(g).unwrap() {
        Verification::Ok => assert_eq!(oracle, None, "{}: verifier accepts, oracle rejects", what),
        Verification::Fails(c) => {
            assert_eq!(oracle, Some((c.first, c.second)), "{}: certificates differ", what);
            assert!(c.hit.len() > 1);
        }
    }
    oracle.is_none()
}

fn single_block() -> SetGrading {
    grading_from_design(&Design::new(4, vec![[1, 2, 3, 4]]).unwrap()).unwrap()
}

#[test]
fn pure_gradings_agree_with_oracle() {
    for n in 2..=4 {
        let basis = AdaptedBasis::new(n).unwrap();
        let lattices = common::intermediate_lattices(n);
        assert_eq!(lattices.len(), [0, 0, 5, 16, 67][n]);
        for e in &lattices {
            let gg = grading_from_subgroup(n, e).unwrap();
            assert!(assert_agrees(&basis, gg.underlying(), "pure grading"));
            assert!(verify_group_grading(&gg).unwrap().is_ok());
        }
    }
}

#[test]
fn design_grading_agrees_with_oracle() {
    let basis = AdaptedBasis::new(4).unwrap();
    let g = single_block();
    assert!(assert_agrees(&basis, &g, "single block"));
    let mut failures = 0;
    for a in 0..g.len() {
        for b in a + 1..g.len() {
            if !assert_agrees(&basis, &g.merged(a, b).unwrap(), "merged single block") {
                failures += 1;
            }
        }
    }
    assert!(failures > 0);
}

fn partition_strategy(n: usize, parts: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..parts, n * (2 * n - 1))
}

fn grading_from_assignment(n: usize, assignment: &[usize]) -> SetGrading {
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut slot: std::collections::BTreeMap<usize, usize> = Default::default();
    for (k, &c) in assignment.iter().enumerate() {
        let s = *slot.entry(c).or_insert_with(|| {
            comps.push(Vec::new());
            comps.len() - 1
        });
        comps[s].push(k);
    }
    SetGrading::new(n, comps, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn random_merges_of_pure_gradings(n in 2usize..=4, pick in any::<prop::sample::Index>(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let basis = AdaptedBasis::new(n).unwrap();
        let lattices = common::intermediate_lattices(n);
        let g = grading_from_subgroup(n, pick.get(&lattices)).unwrap().underlying().clone();
        prop_assume!(g.len() >= 2);
        let (a, b) = (a.index(g.len()), b.index(g.len()));
        prop_assume!(a != b);
        assert_agrees(&basis, &g.merged(a, b).unwrap(), "merged pure grading");
    }

    #[test]
    fn random_partitions(assignment in partition_strategy(3, 6)) {
        let basis = AdaptedBasis::new(3).unwrap();
        assert_agrees(&basis, &grading_from_assignment(3, &assignment), "random partition");
    }

    #[test]
    fn coarsenings_of_the_finest_grading(n in 2usize..=3, assignment in prop::collection::vec(0usize..4, 40)) {
        // merge components of the grading by Q/2Q x Z/2 according to a random map
        let basis = AdaptedBasis::new(n).unwrap();
        let finest = grading_from_subgroup(n, &setgrading::gradings::twice_root_lattice(n).unwrap()).unwrap();
        let fine = finest.underlying();
        let mut coarse = vec![0usize; fine.dim()];
        for (c, comp) in fine.components().iter().enumerate() {
            for &k in comp {
                coarse[k] = assignment[c % assignment.len()];
            }
        }
        assert_agrees(&basis, &grading_from_assignment(n, &coarse), "coarsening");
    }
}
