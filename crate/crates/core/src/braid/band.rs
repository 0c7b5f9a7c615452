//! Band generators: conjugates `w s_k^ε w^-1` of a standard generator.
//! These are the admissible meridian images of branch curves.

use serde::{Deserialize, Serialize};

use super::{BraidError, BraidLetter, BraidWord};

/// A braid element given explicitly in conjugate form `w s_k^ε w^-1`.
/// Recognition of band generators is not solved semantically; inputs must
/// arrive in this form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandGeneratorForm {
    pub conjugator: BraidWord,
    pub target_index: usize,
    pub sign: i8,
}

impl BandGeneratorForm {
    pub fn new(conjugator: BraidWord, target_index: usize, sign: i8) -> Result<Self, BraidError> {
        if sign != 1 && sign != -1 {
            return Err(BraidError::BadSign(sign));
        }
        if target_index < 1 || target_index >= conjugator.degree() {
            return Err(BraidError::LetterOutOfRange {
                index: target_index,
                degree: conjugator.degree(),
            });
        }
        Ok(BandGeneratorForm {
            conjugator,
            target_index,
            sign,
        })
    }

    /// A bare generator `s_k^ε` (empty conjugator).
    pub fn bare(degree: usize, target_index: usize, sign: i8) -> Result<Self, BraidError> {
        BandGeneratorForm::new(BraidWord::identity(degree), target_index, sign)
    }

    pub fn degree(&self) -> usize {
        self.conjugator.degree()
    }

    /// The denoted word `w s_k^ε w^-1`, literally, with no simplification.
    pub fn word(&self) -> BraidWord {
        let d = self.degree();
        let mut letters = self.conjugator.letters().to_vec();
        letters.push(BraidLetter::new(self.target_index, self.sign));
        letters.extend(self.conjugator.inverse().letters().iter().copied());
        BraidWord::new(d, letters).unwrap()
    }

    /// Check the band-generator facts: the permutation image is a
    /// transposition and the exponent sum is ±1. Both hold by construction
    /// for any well-formed form; this re-checks them explicitly.
    pub fn check(&self) -> Result<(), String> {
        let word = self.word();
        if !word.permutation().is_transposition() {
            return Err("permutation image is not a transposition".to_string());
        }
        let es = word.exponent_sum();
        if es != 1 && es != -1 {
            return Err(format!("exponent sum is {es}, expected ±1"));
        }
        Ok(())
    }
}

/// Shorthand for `form.word()`; kept as a free function mirroring the other
/// word operations.
pub fn band_word(form: &BandGeneratorForm) -> BraidWord {
    form.word()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_generator() {
        let f = BandGeneratorForm::bare(2, 1, 1).unwrap();
        assert_eq!(f.word(), BraidWord::from_signed(2, &[1]).unwrap());
    }

    #[test]
    fn conjugated_generator() {
        let w = BraidWord::from_signed(3, &[-2]).unwrap();
        let f = BandGeneratorForm::new(w, 1, 1).unwrap();
        assert_eq!(f.word(), BraidWord::from_signed(3, &[-2, 1, 2]).unwrap());
        f.check().unwrap();
    }

    #[test]
    fn negative_target() {
        let w = BraidWord::from_signed(3, &[1]).unwrap();
        let f = BandGeneratorForm::new(w, 2, -1).unwrap();
        assert_eq!(f.word(), BraidWord::from_signed(3, &[1, -2, -1]).unwrap());
        assert_eq!(f.word().exponent_sum(), -1);
    }

    #[test]
    fn out_of_range_index_rejected() {
        let w = BraidWord::identity(3);
        assert!(BandGeneratorForm::new(w, 3, 1).is_err());
    }
}
