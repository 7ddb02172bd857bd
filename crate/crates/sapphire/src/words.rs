//! Free-group words over an indexed generator alphabet, and finitely
//! presented groups built from them.
//!
//! Generators are referenced by index everywhere; printable names are
//! metadata on [`Presentation`] and play no role in the algebra. Words are
//! immutable values kept freely reduced at all times, so `==` compares
//! group elements of the free group, not raw letter sequences.

use std::fmt;

use crate::intlinalg::IntMatrix;

/// A freely reduced word in signed generators.
///
/// Letters are stored as nonzero integers: `+(g+1)` stands for generator
/// `g`, `-(g+1)` for its inverse. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    /// The empty word.
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    /// The one-letter word for generator `g`.
    pub fn generator(g: usize) -> Self {
        Self::power(g, 1)
    }

    /// `g^exp`, with `exp` of either sign; `exp = 0` gives the identity.
    pub fn power(g: usize, exp: i64) -> Self {
        let letter = encode(g, if exp < 0 { -1 } else { 1 });
        Word { letters: vec![letter; exp.unsigned_abs() as usize] }
    }

    /// Free reduction of a raw letter sequence. Signs may be any nonzero
    /// integer; only their signum is used.
    pub fn from_letters<I>(letters: I) -> Self
    where
        I: IntoIterator<Item = (usize, i32)>,
    {
        let mut out = Vec::new();
        for (g, sign) in letters {
            assert!(sign != 0, "letter sign must be nonzero");
            push_reduced(&mut out, encode(g, sign.signum()));
        }
        Word { letters: out }
    }

    /// Product `self * other`, reduced.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    /// The inverse word.
    pub fn invert(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|&l| -l).collect() }
    }

    /// `by * self * by^{-1}`.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.concat(self).concat(&by.invert())
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reduced word length.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters as `(generator index, sign)` pairs with sign in `{-1, +1}`.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.letters.iter().map(|&l| decode(l))
    }

    /// Largest generator index occurring in the word.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&l| decode(l).0).max()
    }

    /// Signed count of occurrences of each generator, i.e. the image of the
    /// word under abelianization.
    pub fn exponent_sums(&self, generator_count: usize) -> Vec<i64> {
        let mut sums = vec![0i64; generator_count];
        for (g, sign) in self.letters() {
            assert!(g < generator_count, "generator index {g} out of range");
            sums[g] += i64::from(sign);
        }
        sums
    }
}

fn encode(g: usize, sign: i32) -> i32 {
    let base = i32::try_from(g + 1).expect("generator index too large");
    base * sign.signum()
}

fn decode(letter: i32) -> (usize, i32) {
    ((letter.unsigned_abs() as usize) - 1, letter.signum())
}

fn push_reduced(out: &mut Vec<i32>, letter: i32) {
    if out.last() == Some(&-letter) {
        out.pop();
    } else {
        out.push(letter);
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(")?;
        for (i, (g, sign)) in self.letters().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", if sign < 0 { "-" } else { "" }, g)?;
        }
        write!(f, ")")
    }
}

/// A finitely presented group: named generators plus freely reduced
/// relators over them.
#[derive(Clone, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Builds a presentation, asserting that every relator only uses
    /// generators below the alphabet size.
    pub fn new<N, S>(names: N, relators: Vec<Word>) -> Self
    where
        N: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let generator_names: Vec<String> = names.into_iter().map(Into::into).collect();
        for rel in &relators {
            if let Some(g) = rel.max_generator() {
                assert!(
                    g < generator_names.len(),
                    "relator uses generator {g} but only {} exist",
                    generator_names.len()
                );
            }
        }
        Presentation { generator_names, relators }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// The abelianized relation matrix: one row per relator, one column per
    /// generator, entries the exponent sums.
    pub fn relation_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| r.exponent_sums(self.generator_count()))
            .collect();
        IntMatrix::from_rows(self.generator_count(), &rows)
    }

    /// Text form of a word over this alphabet, e.g. `a b^-1 c^2`.
    /// The identity prints as `1`.
    pub fn word_text(&self, word: &Word) -> String {
        if word.is_identity() {
            return "1".to_string();
        }
        let mut tokens: Vec<String> = Vec::new();
        let mut run: Option<(usize, i32, i64)> = None;
        let flush = |run: &Option<(usize, i32, i64)>, tokens: &mut Vec<String>| {
            if let Some((g, sign, count)) = run {
                let name = &self.generator_names[*g];
                let exp = i64::from(*sign) * count;
                if exp == 1 {
                    tokens.push(name.clone());
                } else {
                    tokens.push(format!("{name}^{exp}"));
                }
            }
        };
        for (g, sign) in word.letters() {
            match &mut run {
                Some((rg, rs, count)) if *rg == g && *rs == sign => *count += 1,
                _ => {
                    flush(&run, &mut tokens);
                    run = Some((g, sign, 1));
                }
            }
        }
        flush(&run, &mut tokens);
        tokens.join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.generator_names.join(", "))?;
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_text(r)).collect();
        write!(f, "{} >", rels.join(", "))
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
