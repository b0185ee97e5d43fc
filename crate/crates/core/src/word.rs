//! Letters, freely reduced words and cyclic words over `{a, b, a⁻¹, b⁻¹}`.
//!
//! Text encoding uses `a`, `b` for the generators and `A`, `B` for their
//! inverses. The letter order `a < b < A < B` is the order used for every
//! lexicographic comparison in the crate.
//!
//! Every statistic here treats a [`CyclicWord`] as a necklace: counting a
//! pattern `u` scans `x₁…xₙ x₁…x_{k−1}` where `k = |u|`, and a pattern longer
//! than the word never occurs. All of them are therefore unchanged by rotation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Letter {
    A = 0,
    B = 1,
    AInv = 2,
    BInv = 3,
}

impl Letter {
    /// All four letters in increasing order.
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::AInv, Letter::BInv];

    #[inline]
    pub const fn from_index(index: u8) -> Letter {
        match index & 3 {
            0 => Letter::A,
            1 => Letter::B,
            2 => Letter::AInv,
            _ => Letter::BInv,
        }
    }

    #[inline]
    pub const fn index(self) -> u8 {
        self as u8
    }

    #[inline]
    pub const fn inverse(self) -> Letter {
        Letter::from_index(self.index() ^ 2)
    }

    /// The positive generator (`a` or `b`) this letter is a power of.
    #[inline]
    pub const fn generator(self) -> Letter {
        Letter::from_index(self.index() & 1)
    }

    #[inline]
    pub const fn is_positive(self) -> bool {
        self.index() < 2
    }

    /// True when `other` is this letter or its inverse.
    #[inline]
    pub const fn same_generator(self, other: Letter) -> bool {
        self.index() & 1 == other.index() & 1
    }

    pub const fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::AInv => 'A',
            Letter::BInv => 'B',
        }
    }

    pub const fn from_char(ch: char) -> Option<Letter> {
        match ch {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'A' => Some(Letter::AInv),
            'B' => Some(Letter::BInv),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Letter> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(ch), None) => Letter::from_char(ch).ok_or(Error::InvalidLetter { ch, pos: 0 }),
            (Some(_), Some(ch)) => Err(Error::InvalidLetter { ch, pos: 1 }),
            (None, _) => Err(Error::InvalidLetter { ch: ' ', pos: 0 }),
        }
    }
}

/// Parses a letter string without reducing it. Whitespace is ignored.
pub fn parse_letters(text: &str) -> Result<Vec<Letter>> {
    text.chars()
        .enumerate()
        .filter(|(_, ch)| !ch.is_whitespace())
        .map(|(pos, ch)| Letter::from_char(ch).ok_or(Error::InvalidLetter { ch, pos }))
        .collect()
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    for letter in letters {
        write!(f, "{}", letter.to_char())?;
    }
    Ok(())
}

/// Freely reduces a letter sequence by cancelling adjacent inverse pairs.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
    let mut stack: Vec<Letter> = Vec::new();
    for letter in raw {
        if stack.last() == Some(&letter.inverse()) {
            stack.pop();
        } else {
            stack.push(letter);
        }
    }
    Word(stack)
}

/// An element of F₂ as its freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Builds a word from letters that must already be freely reduced.
    pub fn from_reduced(letters: Vec<Letter>) -> Option<Word> {
        letters
            .windows(2)
            .all(|pair| pair[1] != pair[0].inverse())
            .then_some(Word(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Freely reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        free_reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(first), Some(last)) => *last != first.inverse(),
            _ => true,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses and freely reduces.
    fn from_str(s: &str) -> Result<Word> {
        Ok(free_reduce(parse_letters(s)?))
    }
}

impl From<CyclicWord> for Word {
    fn from(w: CyclicWord) -> Word {
        Word(w.0)
    }
}

/// Splits a freely reduced word as `w = u · v · u⁻¹` with `v` cyclically
/// reduced. Returns `(v, u)`.
pub fn cyclic_reduce(w: &Word) -> (CyclicWord, Word) {
    let letters = w.letters();
    let mut lo = 0;
    let mut hi = letters.len();
    while hi - lo >= 2 && letters[hi - 1] == letters[lo].inverse() {
        lo += 1;
        hi -= 1;
    }
    (CyclicWord(letters[lo..hi].to_vec()), Word(letters[..lo].to_vec()))
}

/// A cyclically reduced word, kept in one explicit rotation.
///
/// Membership in C₂: freely reduced, and the last letter is not the inverse of
/// the first. Rotation is never applied implicitly; canonical forms live in
/// [`crate::automorphism::canonical_mod_j`].
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CyclicWord(Vec<Letter>);

impl CyclicWord {
    pub fn empty() -> CyclicWord {
        CyclicWord(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Result<CyclicWord> {
        let word = Word::from_reduced(letters.clone())
            .ok_or_else(|| Error::NotCyclicallyReduced(letters_to_string(&letters)))?;
        if !word.is_cyclically_reduced() {
            return Err(Error::NotCyclicallyReduced(word.to_string()));
        }
        Ok(CyclicWord(word.0))
    }

    /// Caller guarantees the C₂ invariant.
    pub(crate) fn from_letters_unchecked(letters: Vec<Letter>) -> CyclicWord {
        debug_assert!(CyclicWord::new(letters.clone()).is_ok());
        CyclicWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The rotation starting at position `k` (taken mod the length).
    pub fn rotated(&self, k: usize) -> CyclicWord {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut letters = Vec::with_capacity(self.0.len());
        letters.extend_from_slice(&self.0[k..]);
        letters.extend_from_slice(&self.0[..k]);
        CyclicWord(letters)
    }

    pub fn rotations(&self) -> impl Iterator<Item = CyclicWord> + '_ {
        (0..self.0.len().max(1)).map(move |k| self.rotated(k))
    }

    /// Letter at cyclic position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> Letter {
        self.0[i % self.0.len()]
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }
}

fn letters_to_string(letters: &[Letter]) -> String {
    letters.iter().map(|l| l.to_char()).collect()
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

impl FromStr for CyclicWord {
    type Err = Error;

    /// Strict parse: the text must already be cyclically reduced.
    fn from_str(s: &str) -> Result<CyclicWord> {
        CyclicWord::new(parse_letters(s)?)
    }
}

impl TryFrom<String> for CyclicWord {
    type Error = Error;

    fn try_from(s: String) -> Result<CyclicWord> {
        s.parse()
    }
}

impl From<CyclicWord> for String {
    fn from(w: CyclicWord) -> String {
        w.to_string()
    }
}

/// `(u)_w`: occurrences of `u` and of `u⁻¹` in the cyclic word `w`.
///
/// Returns 0 when `u` is longer than `w`.
///
/// # Panics
///
/// Panics if `u` is empty.
pub fn subword_count(w: &CyclicWord, u: &[Letter]) -> usize {
    assert!(!u.is_empty(), "subword_count needs a nonempty pattern");
    let n = w.len();
    let k = u.len();
    if k > n {
        return 0;
    }
    let inv: Vec<Letter> = u.iter().rev().map(|l| l.inverse()).collect();
    let matches_at =
        |start: usize, pattern: &[Letter]| pattern.iter().enumerate().all(|(j, &l)| w.0[(start + j) % n] == l);
    (0..n)
        .map(|i| usize::from(matches_at(i, u)) + usize::from(matches_at(i, &inv)))
        .sum()
}

/// The four length-two statistics every minimality test is phrased in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubwordCounts {
    /// `(aa)_w`
    pub aa: usize,
    /// `(bb)_w`
    pub bb: usize,
    /// `(ab)_w`
    pub ab: usize,
    /// `(ab̄)_w`
    pub ab_inv: usize,
}

impl SubwordCounts {
    /// `(ab)_w − (ab̄)_w`
    pub fn mixed_difference(&self) -> i64 {
        self.ab as i64 - self.ab_inv as i64
    }
}

/// All four pair counts in a single cyclic pass.
pub fn pair_counts(w: &CyclicWord) -> SubwordCounts {
    use Letter::*;
    let mut counts = SubwordCounts::default();
    let n = w.len();
    if n < 2 {
        return counts;
    }
    for i in 0..n {
        match (w.0[i], w.0[(i + 1) % n]) {
            (A, A) | (AInv, AInv) => counts.aa += 1,
            (B, B) | (BInv, BInv) => counts.bb += 1,
            (A, B) | (BInv, AInv) => counts.ab += 1,
            (A, BInv) | (B, AInv) => counts.ab_inv += 1,
            _ => {}
        }
    }
    counts
}

/// Number of occurrences of `generator` and its inverse.
pub fn letter_count(w: &CyclicWord, generator: Letter) -> usize {
    w.0.iter().filter(|l| l.same_generator(generator)).count()
}

/// `min((a)_w, (b)_w)`.
pub fn weight(w: &CyclicWord) -> usize {
    letter_count(w, Letter::A).min(letter_count(w, Letter::B))
}

/// `(aa)_w = 0 = (bb)_w`.
pub fn is_alternating(w: &CyclicWord) -> bool {
    let counts = pair_counts(w);
    counts.aa == 0 && counts.bb == 0
}

/// `m_x(w) = min { i ≥ 0 : (y xⁱ y)_w ≥ 1 }`, with `None` for infinity.
///
/// # Panics
///
/// Panics if `y` is `x` or `x⁻¹`.
pub fn m_value(w: &CyclicWord, x: Letter, y: Letter) -> Option<usize> {
    assert!(!x.same_generator(y), "m_value needs y outside {{x, x⁻¹}}");
    let n = w.len();
    let mut pattern = vec![y, y];
    for i in 0..=n {
        if pattern.len() > n {
            return None;
        }
        if subword_count(w, &pattern) >= 1 {
            return Some(i);
        }
        pattern.insert(1, x);
    }
    None
}
