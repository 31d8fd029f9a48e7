use std::collections::BTreeMap;

use proptest::prelude::*;
use setgrading::designs::{
    admissible, develop_difference_family, difference_counts, pg2_f3, Block, Design, Issue, Validity,
};

/// Steiner property by counting, pair by pair, the blocks that contain it.
fn brute_force_steiner(n: u32, blocks: &[Block]) -> bool {
    let mut counts: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for p in 1..=n {
        for q in p + 1..=n {
            let c = blocks.iter().filter(|b| b.contains(&p) && b.contains(&q)).count();
            counts.insert((p, q), c);
        }
    }
    let expected = if admissible(n) || n <= 1 { Some((n * n.saturating_sub(1) / 12) as usize) } else { None };
    counts.values().all(|&c| c == 1) && expected == Some(blocks.len())
}

fn block_strategy(n: u32) -> impl Strategy<Value = Block> {
    prop::sample::subsequence((1..=n).collect::<Vec<u32>>(), 4).prop_map(|v| [v[0], v[1], v[2], v[3]])
}

fn design_strategy() -> impl Strategy<Value = (u32, Vec<Block>)> {
    (4u32..=13).prop_flat_map(|n| (Just(n), prop::collection::vec(block_strategy(n), 0..16)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn validator_matches_pair_counting((n, blocks) in design_strategy()) {
        let d = Design::new(n, blocks.clone()).unwrap();
        let v = d.validate().unwrap();
        prop_assert_eq!(v.is_valid(), brute_force_steiner(n, &blocks));
        if let Validity::Invalid(violation) = v {
            prop_assert!(!violation.issues.is_empty());
            for issue in &violation.issues {
                match issue {
                    Issue::Uncovered { pair: (p, q) } => {
                        prop_assert!(!blocks.iter().any(|b| b.contains(p) && b.contains(q)));
                    }
                    Issue::Repeated { pair: (p, q), blocks: (i, j) } => {
                        prop_assert!(i < j);
                        prop_assert!(blocks[*i].contains(p) && blocks[*i].contains(q));
                        prop_assert!(blocks[*j].contains(p) && blocks[*j].contains(q));
                    }
                    Issue::BlockCount { found, .. } => prop_assert_eq!(*found, blocks.len()),
                }
            }
        }
    }

    #[test]
    fn perturbed_plane_is_rejected(line in 0usize..13, slot in 0usize..4, point in 1u32..=13) {
        let mut blocks = pg2_f3().blocks().to_vec();
        let mut b = blocks[line];
        prop_assume!(!b.contains(&point));
        b[slot] = point;
        b.sort_unstable();
        blocks[line] = b;
        let d = Design::new(13, blocks.clone()).unwrap();
        prop_assert!(!d.validate().unwrap().is_valid());
        prop_assert!(!brute_force_steiner(13, &blocks));
    }

    #[test]
    fn text_round_trip((n, blocks) in design_strategy()) {
        let mut uniq = blocks.clone();
        uniq.sort_unstable();
        uniq.dedup();
        let d = Design::new(n, uniq).unwrap();
        prop_assert_eq!(Design::parse(&d.write()).unwrap(), d);
    }

    #[test]
    fn translates_of_a_planar_set(shift in 0u32..13, mult in prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12])) {
        // affine images of a planar difference set are planar difference sets
        let mut b = [0u32, 1, 3, 9].map(|x| (x * mult + shift) % 13);
        b.sort_unstable();
        prop_assert!(difference_counts(13, &[b])[1..].iter().all(|&c| c == 1));
        let d = develop_difference_family(13, &[b]).unwrap();
        prop_assert!(brute_force_steiner(13, d.blocks()));
    }
}

#[test]
fn known_designs_agree_with_pair_counting() {
    assert!(brute_force_steiner(13, pg2_f3().blocks()));
    assert!(brute_force_steiner(4, &[[1, 2, 3, 4]]));
    let d25 = {
        let fam = setgrading::designs::search_base_blocks(25).unwrap().unwrap();
        setgrading::designs::develop_in_group(&fam.group, &fam.base_blocks).unwrap()
    };
    assert!(brute_force_steiner(25, d25.blocks()));
    assert_eq!(Design::parse(&d25.write()).unwrap(), d25);
}
