//! The Hurwitz action of `B_n` on n-tuples of braid words.

use super::{BraidError, BraidWord};

/// Which conjugation rule a positive generator uses. The geometric and
/// algebraic conventions in this crate are all consistent with `Standard`;
/// `Mirrored` swaps the roles of a generator and its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HurwitzConvention {
    /// `s_i: (g_i, g_{i+1}) -> (g_i g_{i+1} g_i^{-1}, g_i)`.
    #[default]
    Standard,
    /// `s_i: (g_i, g_{i+1}) -> (g_{i+1}, g_{i+1}^{-1} g_i g_{i+1})`.
    Mirrored,
}

/// Act by `b` (degree n) on an n-tuple of words of a common degree, letter
/// by letter from the left.
pub fn hurwitz_act(b: &BraidWord, tuple: &[BraidWord]) -> Result<Vec<BraidWord>, BraidError> {
    hurwitz_act_with(HurwitzConvention::Standard, b, tuple)
}

pub fn hurwitz_act_with(
    convention: HurwitzConvention,
    b: &BraidWord,
    tuple: &[BraidWord],
) -> Result<Vec<BraidWord>, BraidError> {
    if tuple.len() != b.degree() {
        return Err(BraidError::TupleLengthMismatch {
            expected: b.degree(),
            got: tuple.len(),
        });
    }
    if let Some(first) = tuple.first() {
        for g in tuple {
            if g.degree() != first.degree() {
                return Err(BraidError::DegreeMismatch {
                    left: first.degree(),
                    right: g.degree(),
                });
            }
        }
    }
    let mut out: Vec<BraidWord> = tuple.to_vec();
    for letter in b.letters() {
        let i = letter.index - 1;
        let positive = match convention {
            HurwitzConvention::Standard => letter.sign > 0,
            HurwitzConvention::Mirrored => letter.sign < 0,
        };
        let (a, c) = (out[i].clone(), out[i + 1].clone());
        if positive {
            // (a, c) -> (a c a^-1, a)
            let conj = a.compose(&c).unwrap().compose(&a.inverse()).unwrap();
            out[i] = conj;
            out[i + 1] = a;
        } else {
            // (a, c) -> (c, c^-1 a c)
            let conj = c.inverse().compose(&a).unwrap().compose(&c).unwrap();
            out[i] = c;
            out[i + 1] = conj;
        }
    }
    Ok(out)
}
