//! Property tests for the braid engine: presentation relators, normal-form
//! invariance, the permutation projection, the Hurwitz action, and agreement
//! with an exhaustive bounded rewriting search.

mod common;

use common::{bfs_equal, insert_random_relator, random_word, BfsVerdict};
use curtains::braid::{
    hurwitz_act, left_normal_form, words_equal, BraidWord,
};
use proptest::prelude::*;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn presentation_relators_hold_up_to_degree_six() {
    for d in 2..=6usize {
        for i in 1..d {
            for j in 1..d {
                if i >= j {
                    continue;
                }
                let (lhs, rhs) = if j - i == 1 {
                    (
                        BraidWord::from_signed(d, &[i as i64, j as i64, i as i64]).unwrap(),
                        BraidWord::from_signed(d, &[j as i64, i as i64, j as i64]).unwrap(),
                    )
                } else {
                    (
                        BraidWord::from_signed(d, &[i as i64, j as i64]).unwrap(),
                        BraidWord::from_signed(d, &[j as i64, i as i64]).unwrap(),
                    )
                };
                assert!(
                    words_equal(&lhs, &rhs).unwrap(),
                    "relator failed for d={d}, i={i}, j={j}"
                );
            }
        }
    }
}

#[test]
fn normal_form_invariant_under_relator_insertion() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..400 {
        let degree = rng.gen_range(2..=6usize);
        let len = rng.gen_range(0..=12usize);
        let w = random_word(&mut rng, degree, len);
        let nf = left_normal_form(&w);
        let mut v = w.clone();
        for _ in 0..rng.gen_range(1..=3usize) {
            v = insert_random_relator(&mut rng, &v);
        }
        assert_eq!(
            nf,
            left_normal_form(&v),
            "normal form changed after relator insertion: {w} vs {v}"
        );
    }
}

#[test]
fn words_equal_agrees_with_bounded_rewriting_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut completed = 0usize;
    let mut capped = 0usize;
    for case in 0..80 {
        let degree = rng.gen_range(2..=4usize);
        let ulen = rng.gen_range(0..=4usize);
        let u = random_word(&mut rng, degree, ulen);
        // Half the cases are equal by construction, half are independent.
        let v = if case % 2 == 0 {
            insert_random_relator(&mut rng, &u)
        } else {
            let vlen = rng.gen_range(0..=4usize);
            random_word(&mut rng, degree, vlen)
        };
        let start_len = u.compose(&v.inverse()).unwrap().free_reduce().len();
        match bfs_equal(&u, &v, start_len + 2, 200_000) {
            BfsVerdict::Equal => {
                completed += 1;
                assert!(
                    words_equal(&u, &v).unwrap(),
                    "search proved {u} = {v} but words_equal disagrees"
                );
            }
            BfsVerdict::NotFound => {
                completed += 1;
                assert!(
                    !words_equal(&u, &v).unwrap(),
                    "words_equal claims {u} = {v} but exhaustive search disagrees"
                );
            }
            BfsVerdict::Capped => capped += 1,
        }
    }
    assert!(
        completed >= 64,
        "too few search runs completed ({completed} completed, {capped} capped)"
    );
}

fn short_word() -> impl Strategy<Value = BraidWord> {
    (2..5usize, proptest::collection::vec((1..4usize, prop::bool::ANY), 0..6)).prop_map(
        |(degree, raw)| {
            let signed: Vec<i64> = raw
                .into_iter()
                .map(|(i, pos)| {
                    let idx = ((i - 1) % (degree - 1) + 1) as i64;
                    if pos {
                        idx
                    } else {
                        -idx
                    }
                })
                .collect();
            BraidWord::from_signed(degree, &signed).unwrap()
        },
    )
}

proptest! {
    #[test]
    fn permutation_projection_is_a_homomorphism(
        (u, v) in short_word().prop_flat_map(|u| {
            let d = u.degree();
            let v = (proptest::collection::vec((1..d.max(2), prop::bool::ANY), 0..6)).prop_map(move |raw| {
                let signed: Vec<i64> = raw.into_iter().map(|(i, pos)| {
                    let idx = (((i - 1) % (d - 1)) + 1) as i64;
                    if pos { idx } else { -idx }
                }).collect();
                BraidWord::from_signed(d, &signed).unwrap()
            });
            (Just(u), v)
        })
    ) {
        let composed = u.compose(&v).unwrap();
        prop_assert_eq!(composed.permutation(), u.permutation().then(&v.permutation()));
    }

    #[test]
    fn equal_words_have_equal_permutations(u in short_word()) {
        let mut rng = ChaCha8Rng::seed_from_u64(u.len() as u64 + 99);
        let v = insert_random_relator(&mut rng, &u);
        prop_assert!(words_equal(&u, &v).unwrap());
        prop_assert_eq!(u.permutation(), v.permutation());
    }
}

fn tuple_of_words(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Vec<BraidWord> {
    (0..n)
        .map(|_| {
            let len = rng.gen_range(0..=3);
            random_word(rng, d, len)
        })
        .collect()
}

#[test]
fn hurwitz_action_composes_left_to_right() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for _ in 0..50 {
        let n = rng.gen_range(2..=4usize);
        let d = rng.gen_range(2..=4usize);
        let len1 = rng.gen_range(0..=3);
        let b1 = random_word(&mut rng, n, len1);
        let len2 = rng.gen_range(0..=3);
        let b2 = random_word(&mut rng, n, len2);
        let tuple = tuple_of_words(n, d, &mut rng);
        let lhs = hurwitz_act(&b1.compose(&b2).unwrap(), &tuple).unwrap();
        let rhs = hurwitz_act(&b2, &hurwitz_act(&b1, &tuple).unwrap()).unwrap();
        for (a, b) in lhs.iter().zip(rhs.iter()) {
            assert!(words_equal(a, b).unwrap());
        }
    }
}

#[test]
fn hurwitz_action_respects_braid_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for _ in 0..30 {
        let n = 3usize;
        let d = rng.gen_range(2..=4usize);
        let tuple = tuple_of_words(n, d, &mut rng);
        let lhs_b = BraidWord::from_signed(n, &[1, 2, 1]).unwrap();
        let rhs_b = BraidWord::from_signed(n, &[2, 1, 2]).unwrap();
        let lhs = hurwitz_act(&lhs_b, &tuple).unwrap();
        let rhs = hurwitz_act(&rhs_b, &tuple).unwrap();
        for (a, b) in lhs.iter().zip(rhs.iter()) {
            assert!(words_equal(a, b).unwrap());
        }
    }
}

#[test]
fn hurwitz_action_preserves_ordered_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for _ in 0..50 {
        let n = rng.gen_range(1..=4usize);
        let d = rng.gen_range(2..=4usize);
        let blen = rng.gen_range(0..=4);
        let b = random_word(&mut rng, n, blen);
        let tuple = tuple_of_words(n, d, &mut rng);
        let product = |t: &[BraidWord]| -> BraidWord {
            t.iter()
                .fold(BraidWord::identity(d), |acc, g| acc.compose(g).unwrap())
        };
        let acted = hurwitz_act(&b, &tuple).unwrap();
        assert!(words_equal(&product(&tuple), &product(&acted)).unwrap());
    }
}
