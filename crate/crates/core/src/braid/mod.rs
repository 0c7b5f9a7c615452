//! Exact symbolic algebra in Artin braid groups: words on the standard
//! generators, a solved word problem via left-greedy normal forms, the
//! permutation projection, band generators and the Hurwitz action.

mod band;
mod hurwitz;
mod normal;
mod perm;

pub use band::{band_word, BandGeneratorForm};
pub use hurwitz::{hurwitz_act, hurwitz_act_with, HurwitzConvention};
pub use normal::{
    left_normal_form, normal_form_word, permutation_braid_word, words_equal, NormalForm,
};
pub use perm::Permutation;

use std::fmt;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("letter index {index} out of range for degree {degree}")]
    LetterOutOfRange { index: usize, degree: usize },
    #[error("letter sign must be +1 or -1, got {0}")]
    BadSign(i8),
    #[error("tuple length {got} does not match braid degree {expected}")]
    TupleLengthMismatch { expected: usize, got: usize },
    #[error("braid word parse error: {0}")]
    Parse(String),
}

/// A single signed generator `s_i^{±1}`, with `1 <= index <= degree - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BraidLetter {
    pub index: usize,
    pub sign: i8,
}

impl BraidLetter {
    pub fn new(index: usize, sign: i8) -> Self {
        BraidLetter { index, sign }
    }

    pub fn inverse(&self) -> Self {
        BraidLetter {
            index: self.index,
            sign: -self.sign,
        }
    }
}

impl Serialize for BraidLetter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(2)?;
        tup.serialize_element(&self.index)?;
        tup.serialize_element(&self.sign)?;
        tup.end()
    }
}

struct LetterVisitor;

impl<'de> Visitor<'de> for LetterVisitor {
    type Value = BraidLetter;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "an [index, sign] pair")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<BraidLetter, A::Error> {
        let index: usize = seq
            .next_element()?
            .ok_or_else(|| de::Error::invalid_length(0, &self))?;
        let sign: i8 = seq
            .next_element()?
            .ok_or_else(|| de::Error::invalid_length(1, &self))?;
        if seq.next_element::<i8>()?.is_some() {
            return Err(de::Error::invalid_length(3, &self));
        }
        if sign != 1 && sign != -1 {
            return Err(de::Error::custom("letter sign must be +1 or -1"));
        }
        Ok(BraidLetter { index, sign })
    }
}

impl<'de> Deserialize<'de> for BraidLetter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<BraidLetter, D::Error> {
        deserializer.deserialize_tuple(2, LetterVisitor)
    }
}

/// A word on the standard generators of the braid group `B_d`. The empty
/// word is the identity. Words are compared as group elements only through
/// [`words_equal`]; structural equality compares letter sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    degree: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(degree: usize, letters: Vec<BraidLetter>) -> Result<Self, BraidError> {
        assert!(degree >= 1, "braid degree must be at least 1");
        for l in &letters {
            if l.sign != 1 && l.sign != -1 {
                return Err(BraidError::BadSign(l.sign));
            }
            if l.index < 1 || l.index >= degree {
                return Err(BraidError::LetterOutOfRange {
                    index: l.index,
                    degree,
                });
            }
        }
        Ok(BraidWord { degree, letters })
    }

    pub fn identity(degree: usize) -> Self {
        BraidWord::new(degree, Vec::new()).unwrap()
    }

    /// The generator `s_index` in `B_degree`.
    pub fn gen(degree: usize, index: usize) -> Self {
        BraidWord::new(degree, vec![BraidLetter::new(index, 1)]).unwrap()
    }

    pub fn gen_inv(degree: usize, index: usize) -> Self {
        BraidWord::new(degree, vec![BraidLetter::new(index, -1)]).unwrap()
    }

    /// Build a word from signed indices: `2` means `s_2`, `-2` means `s_2^-1`.
    pub fn from_signed(degree: usize, signed: &[i64]) -> Result<Self, BraidError> {
        let letters = signed
            .iter()
            .map(|&v| {
                let (index, sign) = if v >= 0 {
                    (v as usize, 1)
                } else {
                    ((-v) as usize, -1)
                };
                BraidLetter::new(index, sign)
            })
            .collect();
        BraidWord::new(degree, letters)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation; no simplification is applied.
    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.degree != other.degree {
            return Err(BraidError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            degree: self.degree,
            letters,
        })
    }

    /// Formal inverse: reversed order, flipped signs.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            degree: self.degree,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Cancel adjacent mutually inverse letters until none remain. This is
    /// the only rewriting ever applied outside the normal-form oracle.
    pub fn free_reduce(&self) -> BraidWord {
        let mut stack: Vec<BraidLetter> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            match stack.last() {
                Some(top) if top.index == l.index && top.sign == -l.sign => {
                    stack.pop();
                }
                _ => stack.push(*l),
            }
        }
        BraidWord {
            degree: self.degree,
            letters: stack,
        }
    }

    /// Image under the projection `B_d -> S_d` sending `s_i` to the
    /// transposition `(i, i+1)`.
    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.degree);
        for l in &self.letters {
            p = p.then(&Permutation::adjacent_transposition(self.degree, l.index));
        }
        p
    }

    /// Sum of the letter signs; a homomorphism to the integers.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign as i64).sum()
    }

    pub fn repeat(&self, times: usize) -> BraidWord {
        let mut letters = Vec::with_capacity(self.letters.len() * times);
        for _ in 0..times {
            letters.extend_from_slice(&self.letters);
        }
        BraidWord {
            degree: self.degree,
            letters,
        }
    }

    /// Parse the CLI text syntax, e.g. `"s1 s2^-1 s1"`. `"e"` and the empty
    /// string denote the identity. Exponents other than ±1 are expanded.
    pub fn parse(degree: usize, text: &str) -> Result<Self, BraidError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "e" {
                continue;
            }
            let rest = token
                .strip_prefix('s')
                .ok_or_else(|| BraidError::Parse(format!("expected 's<k>', got '{token}'")))?;
            let (idx_text, exp_text) = match rest.split_once('^') {
                Some((i, e)) => (i, e),
                None => (rest, "1"),
            };
            let index: usize = idx_text
                .parse()
                .map_err(|_| BraidError::Parse(format!("bad generator index in '{token}'")))?;
            let exp: i64 = exp_text
                .parse()
                .map_err(|_| BraidError::Parse(format!("bad exponent in '{token}'")))?;
            let sign = if exp >= 0 { 1 } else { -1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push(BraidLetter::new(index, sign));
            }
        }
        BraidWord::new(degree, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if l.sign > 0 {
                write!(f, "s{}", l.index)?;
            } else {
                write!(f, "s{}^-1", l.index)?;
            }
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<BraidWord, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            degree: usize,
            letters: Vec<BraidLetter>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.degree < 1 {
            return Err(de::Error::custom("braid degree must be at least 1"));
        }
        BraidWord::new(raw.degree, raw.letters).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_then_free_reduce_cancels_inverse_pair() {
        let w = BraidWord::gen(3, 1)
            .compose(&BraidWord::gen_inv(3, 1))
            .unwrap();
        assert_eq!(w.len(), 2);
        assert!(w.free_reduce().is_empty());
    }

    #[test]
    fn inverse_is_antihomomorphism() {
        let w = BraidWord::from_signed(3, &[1, 2]).unwrap();
        assert_eq!(w.inverse(), BraidWord::from_signed(3, &[-2, -1]).unwrap());
    }

    #[test]
    fn compose_with_identity() {
        let w = BraidWord::from_signed(3, &[1, 2, 1]).unwrap();
        let out = w.compose(&BraidWord::identity(3)).unwrap();
        assert_eq!(out, w);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let a = BraidWord::gen(3, 1);
        let b = BraidWord::gen(4, 1);
        assert!(matches!(
            a.compose(&b),
            Err(BraidError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn parse_and_display() {
        let w = BraidWord::parse(4, "s1 s2^-1 s3^2").unwrap();
        assert_eq!(w, BraidWord::from_signed(4, &[1, -2, 3, 3]).unwrap());
        assert_eq!(w.to_string(), "s1 s2^-1 s3 s3");
        assert_eq!(BraidWord::parse(4, "").unwrap(), BraidWord::identity(4));
        assert!(BraidWord::parse(2, "s5").is_err());
    }

    #[test]
    fn permutation_of_generator() {
        let p = BraidWord::gen(3, 1).permutation();
        assert_eq!(p.apply(1), 2);
        assert_eq!(p.apply(2), 1);
        assert_eq!(p.apply(3), 3);
    }

    #[test]
    fn permutation_of_braid_relator_sides_agree() {
        // s1 s2 s1 and s2 s1 s2 both project to the transposition (1 3).
        let a = BraidWord::from_signed(3, &[1, 2, 1]).unwrap().permutation();
        let b = BraidWord::from_signed(3, &[2, 1, 2]).unwrap().permutation();
        assert_eq!(a, b);
        assert_eq!(a.apply(1), 3);
        assert_eq!(a.apply(3), 1);
        assert_eq!(a.apply(2), 2);
    }

    #[test]
    fn empty_word_projects_to_identity() {
        assert!(BraidWord::identity(5).permutation().is_identity());
    }
}
