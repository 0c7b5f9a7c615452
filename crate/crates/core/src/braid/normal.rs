//! The braid word problem, solved with Garside left-greedy normal forms.
//!
//! Every word is rewritten as `Δ^p · A_1 · A_2 ⋯ A_k` where `Δ` is the
//! half twist, each `A_i` is a permutation braid (a positive braid in which
//! every pair of strands crosses at most once, recorded by its induced
//! permutation), no factor is trivial or `Δ`, and consecutive factors are
//! left-weighted. Two words represent the same group element exactly when
//! these data coincide.

use serde::Serialize;

use super::{BraidError, BraidWord, Permutation};

/// Left-greedy normal form of a braid word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub degree: usize,
    /// Power of the half twist `Δ`.
    pub infimum: i64,
    /// Permutation-braid factors, left-weighted, none trivial or `Δ`.
    pub factors: Vec<Permutation>,
}

impl NormalForm {
    pub fn is_identity(&self) -> bool {
        self.infimum == 0 && self.factors.is_empty()
    }

    /// Canonical length (number of permutation-braid factors).
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }
}

/// Starting set: the generator indices `j` with `s_j` a left divisor of the
/// permutation braid, i.e. the strands starting at `j` and `j + 1` cross.
fn starting_set(p: &Permutation) -> Vec<usize> {
    let d = p.degree();
    (1..d).filter(|&j| p.apply(j) > p.apply(j + 1)).collect()
}

/// Finishing-set membership: `s_j` is a right divisor exactly when the
/// strands ending at `j` and `j + 1` crossed.
fn in_finishing_set(p: &Permutation, j: usize) -> bool {
    let inv = p.inverse();
    inv.apply(j) > inv.apply(j + 1)
}

/// Make the pair `(a, b)` left-weighted by sliding initial crossings of `b`
/// into `a` while this keeps `a` a permutation braid.
fn slide_pair(a: &mut Permutation, b: &mut Permutation) -> bool {
    let mut changed = false;
    loop {
        let mut moved = false;
        for j in starting_set(b) {
            if !in_finishing_set(a, j) {
                let d = a.degree();
                let t = Permutation::adjacent_transposition(d, j);
                // a gains the crossing at the end, b loses it at the front.
                *a = a.then(&t);
                *b = t.then(b);
                moved = true;
                changed = true;
                break;
            }
        }
        if !moved {
            return changed;
        }
    }
}

/// Compute the left-greedy normal form of a word.
pub fn left_normal_form(word: &BraidWord) -> NormalForm {
    let d = word.degree();
    let delta = Permutation::half_twist(d);
    let mut infimum: i64 = 0;
    let mut factors: Vec<Permutation> = Vec::new();

    for letter in word.letters() {
        if letter.sign > 0 {
            factors.push(Permutation::adjacent_transposition(d, letter.index));
        } else {
            // s_i^-1 = Δ^-1 · (Δ s_i^-1); moving Δ^-1 to the front conjugates
            // every accumulated factor by the half twist.
            infimum -= 1;
            for f in factors.iter_mut() {
                *f = delta.then(f).then(&delta);
            }
            let t = Permutation::adjacent_transposition(d, letter.index);
            factors.push(delta.then(&t));
        }
    }

    factors.retain(|f| !f.is_identity());

    // Left-greedy normalization: bubble passes until globally left-weighted.
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < factors.len() {
            let (head, tail) = factors.split_at_mut(i + 1);
            let a = &mut head[i];
            let b = &mut tail[0];
            if slide_pair(a, b) {
                changed = true;
            }
            i += 1;
        }
        factors.retain(|f| !f.is_identity());
        if !changed {
            break;
        }
    }

    // Absorb leading half twists into the infimum.
    while factors.first().is_some_and(|f| *f == delta && !delta.is_identity()) {
        factors.remove(0);
        infimum += 1;
    }

    NormalForm {
        degree: d,
        infimum,
        factors,
    }
}

/// Decide equality in the braid group, via normal forms.
pub fn words_equal(w1: &BraidWord, w2: &BraidWord) -> Result<bool, BraidError> {
    if w1.degree() != w2.degree() {
        return Err(BraidError::DegreeMismatch {
            left: w1.degree(),
            right: w2.degree(),
        });
    }
    Ok(left_normal_form(w1) == left_normal_form(w2))
}

/// A positive word representing a permutation braid: bubble-sorts the
/// identity arrangement into the permutation, recording one letter per
/// crossing. Used for display and for expanding normal forms back to words.
pub fn permutation_braid_word(degree: usize, p: &Permutation) -> BraidWord {
    let mut arrangement: Vec<usize> = (1..=degree).collect();
    let mut letters = Vec::new();
    loop {
        let mut swapped = false;
        for j in 0..degree.saturating_sub(1) {
            if p.apply(arrangement[j]) > p.apply(arrangement[j + 1]) {
                arrangement.swap(j, j + 1);
                letters.push(super::BraidLetter::new(j + 1, 1));
                swapped = true;
                break;
            }
        }
        if !swapped {
            break;
        }
    }
    BraidWord::new(degree, letters).unwrap()
}

/// Expand a normal form back into a braid word (used by tests and the CLI).
pub fn normal_form_word(nf: &NormalForm) -> BraidWord {
    let d = nf.degree;
    let delta_word = permutation_braid_word(d, &Permutation::half_twist(d));
    let mut out = BraidWord::identity(d);
    if nf.infimum >= 0 {
        out = delta_word.repeat(nf.infimum as usize);
    } else {
        out = out
            .compose(&delta_word.inverse().repeat((-nf.infimum) as usize))
            .unwrap();
    }
    for f in &nf.factors {
        out = out.compose(&permutation_braid_word(d, f)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(degree: usize, signed: &[i64]) -> BraidWord {
        BraidWord::from_signed(degree, signed).unwrap()
    }

    #[test]
    fn braid_relator_sides_have_identical_normal_forms() {
        let a = left_normal_form(&w(3, &[1, 2, 1]));
        let b = left_normal_form(&w(3, &[2, 1, 2]));
        assert_eq!(a, b);
        assert_eq!(a.infimum, 1);
        assert!(a.factors.is_empty());
    }

    #[test]
    fn far_commutation_normal_forms_agree() {
        let a = left_normal_form(&w(4, &[1, 3]));
        let b = left_normal_form(&w(4, &[3, 1]));
        assert_eq!(a, b);
        assert_eq!(a.canonical_length(), 1);
    }

    #[test]
    fn loop_reading_reduces_to_single_generator() {
        // s1^-1 s2^-1 s1^-1 s2 s2 s1 s2 equals s1 in B_4.
        let long = w(4, &[-1, -2, -1, 2, 2, 1, 2]);
        let short = w(4, &[1]);
        assert!(words_equal(&long, &short).unwrap());
    }

    #[test]
    fn inverse_pair_is_identity() {
        let word = w(3, &[1, -1]);
        assert!(left_normal_form(&word).is_identity());
        assert!(words_equal(&word, &BraidWord::identity(3)).unwrap());
    }

    #[test]
    fn conjugated_generators_by_relator() {
        // s2^-1 s1 s2 = s1 s2 s1^-1 in B_3.
        assert!(words_equal(&w(3, &[-2, 1, 2]), &w(3, &[1, 2, -1])).unwrap());
    }

    #[test]
    fn distinct_generators_are_unequal() {
        assert!(!words_equal(&w(3, &[1]), &w(3, &[2])).unwrap());
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        assert!(words_equal(&w(3, &[1]), &w(4, &[1])).is_err());
    }

    #[test]
    fn normal_form_word_roundtrips() {
        for signed in [
            vec![1i64, 2, -1, 2, 1, -2],
            vec![-1, -1, -2],
            vec![2, 2, 1, 3, -2],
            vec![],
        ] {
            let word = w(4, &signed);
            let nf = left_normal_form(&word);
            let back = normal_form_word(&nf);
            assert!(words_equal(&word, &back).unwrap(), "failed for {word}");
        }
    }

    #[test]
    fn degree_one_and_two_edge_cases() {
        assert!(left_normal_form(&BraidWord::identity(1)).is_identity());
        let sq = w(2, &[1, 1]);
        let nf = left_normal_form(&sq);
        assert_eq!(nf.infimum, 2);
        assert!(nf.factors.is_empty());
    }
}
