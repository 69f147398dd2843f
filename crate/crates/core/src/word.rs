//! Freely reduced words over named generators.

use std::fmt;

use serde::{Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: String,
    /// `true` for the inverse generator.
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: impl Into<String>, inverse: bool) -> Self {
        Letter {
            generator: generator.into(),
            inverse,
        }
    }

    pub fn inv(&self) -> Letter {
        Letter {
            generator: self.generator.clone(),
            inverse: !self.inverse,
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    pub fn exponent(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(name: impl Into<String>) -> Self {
        Word {
            letters: vec![Letter::new(name, false)],
        }
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|last| last.cancels(&l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Builds a word from `(generator, exponent)` pairs; exponents may be any
    /// integer.
    pub fn from_powers<'a, I: IntoIterator<Item = (&'a str, i32)>>(powers: I) -> Self {
        Word::from_letters(
            powers.into_iter().flat_map(|(g, e)| {
                std::iter::repeat_with(move || Letter::new(g, e < 0)).take(e.unsigned_abs() as usize)
            }),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(Letter::inv).collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(&other.letters).cloned())
    }

    /// Commutator `a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// Sum of exponents of `generator`.
    pub fn exponent_sum(&self, generator: &str) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == generator)
            .map(Letter::exponent)
            .sum()
    }

    /// Shortest cyclic conjugate obtained by cancelling first and last letters.
    pub fn cyclically_reduced(&self) -> Word {
        let mut s = &self.letters[..];
        while s.len() >= 2 && s[0].cancels(&s[s.len() - 1]) {
            s = &s[1..s.len() - 1];
        }
        Word { letters: s.to_vec() }
    }

    /// Whether `self` and `other` define the same relator: equal up to cyclic
    /// reduction, cyclic rotation and inversion.
    pub fn same_relator(&self, other: &Word) -> bool {
        let a = self.cyclically_reduced();
        let b = other.cyclically_reduced();
        if a.len() != b.len() {
            return false;
        }
        if a.is_identity() {
            return true;
        }
        let rotations_of = |w: &Word| {
            let n = w.len();
            (0..n).any(|k| (0..n).all(|i| w.letters[(i + k) % n] == a.letters[i]))
        };
        rotations_of(&b) || rotations_of(&b.inverse())
    }
}

impl fmt::Display for Word {
    /// `a b a^-1 b^-1`; the identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&l.generator)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.letters.iter().map(|l| (&l.generator, l.exponent())))
    }
}
