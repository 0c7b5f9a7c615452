//! Helpers shared by the integration test suites: random word generation,
//! relator surgery, and a bounded breadth-first rewriting search that serves
//! as an independent oracle for the word problem.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use curtains::braid::{BraidLetter, BraidWord};
use rand::Rng;

/// Random word of the given length in `B_degree`. `B_1` has no generators,
/// so degree 1 always yields the empty word.
pub fn random_word<R: Rng>(rng: &mut R, degree: usize, len: usize) -> BraidWord {
    if degree < 2 {
        return BraidWord::identity(degree);
    }
    let letters = (0..len)
        .map(|_| {
            let index = rng.gen_range(1..degree);
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            BraidLetter::new(index, sign)
        })
        .collect();
    BraidWord::new(degree, letters).unwrap()
}

/// All defining relators of the standard presentation, as pairs of equal
/// positive words, plus their inverses.
fn relator_pairs(degree: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut out = Vec::new();
    for i in 1..degree {
        for j in 1..degree {
            if i < j && j - i == 1 {
                out.push((vec![i as i64, j as i64, i as i64], vec![j as i64, i as i64, j as i64]));
                out.push((
                    vec![-(i as i64), -(j as i64), -(i as i64)],
                    vec![-(j as i64), -(i as i64), -(j as i64)],
                ));
            }
            if i < j && j - i >= 2 {
                out.push((vec![i as i64, j as i64], vec![j as i64, i as i64]));
                out.push((vec![-(i as i64), -(j as i64)], vec![-(j as i64), -(i as i64)]));
            }
        }
    }
    out
}

/// Insert a defining relator (in the form `lhs * rhs^-1`, a word equal to
/// the identity) at a random position of `w`. The result represents the
/// same group element.
pub fn insert_random_relator<R: Rng>(rng: &mut R, w: &BraidWord) -> BraidWord {
    let degree = w.degree();
    let pairs = relator_pairs(degree);
    let mut letters: Vec<BraidLetter> = w.letters().to_vec();
    let pos = rng.gen_range(0..=letters.len());
    if pairs.is_empty() || rng.gen_bool(0.25) {
        // Free insertion of an inverse pair also preserves the element.
        let index = rng.gen_range(1..degree.max(2));
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let a = BraidLetter::new(index.min(degree - 1).max(1), sign);
        letters.insert(pos, a.inverse());
        letters.insert(pos, a);
    } else {
        let (lhs, rhs) = pairs[rng.gen_range(0..pairs.len())].clone();
        let lhs_word = BraidWord::from_signed(degree, &lhs).unwrap();
        let rhs_word = BraidWord::from_signed(degree, &rhs).unwrap();
        let relator = lhs_word.compose(&rhs_word.inverse()).unwrap();
        for (k, l) in relator.letters().iter().enumerate() {
            letters.insert(pos + k, *l);
        }
    }
    BraidWord::new(degree, letters).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BfsVerdict {
    Equal,
    NotFound,
    Capped,
}

/// Bounded breadth-first search over relation applications: decides whether
/// `u` equals the identity by rewriting with free cancellations/insertions,
/// far-commutations and braid-relator flips, never exceeding `max_len`
/// letters or `max_states` visited words.
pub fn bfs_identity(u: &BraidWord, max_len: usize, max_states: usize) -> BfsVerdict {
    let degree = u.degree() as i64;
    let encode = |w: &BraidWord| -> Vec<i8> {
        w.letters()
            .iter()
            .map(|l| (l.index as i8) * l.sign)
            .collect()
    };
    let start = encode(&u.free_reduce());
    if start.is_empty() {
        return BfsVerdict::Equal;
    }

    let mut seen: HashSet<Vec<i8>> = HashSet::new();
    let mut queue: VecDeque<Vec<i8>> = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);

    let push = |state: Vec<i8>,
                seen: &mut HashSet<Vec<i8>>,
                queue: &mut VecDeque<Vec<i8>>|
     -> bool {
        if state.is_empty() {
            return true;
        }
        if state.len() <= max_len && !seen.contains(&state) {
            seen.insert(state.clone());
            queue.push_back(state);
        }
        false
    };

    while let Some(word) = queue.pop_front() {
        if seen.len() > max_states {
            return BfsVerdict::Capped;
        }
        let n = word.len();
        // Free cancellation.
        for i in 0..n.saturating_sub(1) {
            if word[i] == -word[i + 1] {
                let mut next = word.clone();
                next.drain(i..i + 2);
                if push(next, &mut seen, &mut queue) {
                    return BfsVerdict::Equal;
                }
            }
        }
        // Far commutation (valid for all sign combinations).
        for i in 0..n.saturating_sub(1) {
            if (word[i].abs() - word[i + 1].abs()).abs() >= 2 {
                let mut next = word.clone();
                next.swap(i, i + 1);
                if push(next, &mut seen, &mut queue) {
                    return BfsVerdict::Equal;
                }
            }
        }
        // Braid relator on same-sign adjacent triples.
        for i in 0..n.saturating_sub(2) {
            let (a, b, c) = (word[i], word[i + 1], word[i + 2]);
            if a == c && a.signum() == b.signum() && (a.abs() - b.abs()).abs() == 1 {
                let mut next = word.clone();
                next[i] = b;
                next[i + 1] = a;
                next[i + 2] = b;
                if push(next, &mut seen, &mut queue) {
                    return BfsVerdict::Equal;
                }
            }
        }
        // Free insertion of an inverse pair.
        if n + 2 <= max_len {
            for pos in 0..=n {
                for g in 1..degree {
                    for sign in [1i8, -1] {
                        let mut next = word.clone();
                        next.insert(pos, -(g as i8) * sign);
                        next.insert(pos, (g as i8) * sign);
                        if push(next, &mut seen, &mut queue) {
                            return BfsVerdict::Equal;
                        }
                    }
                }
            }
        }
    }
    BfsVerdict::NotFound
}

/// Oracle for equality of two words via `bfs_identity(u v^-1)`.
pub fn bfs_equal(u: &BraidWord, v: &BraidWord, max_len: usize, max_states: usize) -> BfsVerdict {
    let w = u.compose(&v.inverse()).unwrap();
    bfs_identity(&w, max_len, max_states)
}
