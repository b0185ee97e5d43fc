//! Whitehead automorphisms of F₂ and canonical forms modulo `J`.
//!
//! `J` is the subgroup generated by inner automorphisms and the eight
//! permutations of the alphabet. Inner automorphisms are never stored: working
//! with cyclic words already quotients them out, so the canonical form of a
//! cyclic word is simply the least rotation over its eight permutation images.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{cyclic_reduce, free_reduce, CyclicWord, Letter, Word};

/// Letterwise image of a single letter under a Whitehead automorphism; never
/// longer than three letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LetterImage {
    letters: [Letter; 3],
    len: u8,
}

impl LetterImage {
    fn new(prefix: Option<Letter>, letter: Letter, suffix: Option<Letter>) -> LetterImage {
        let mut letters = [letter; 3];
        let mut len = 0;
        for l in [prefix, Some(letter), suffix].into_iter().flatten() {
            letters[len] = l;
            len += 1;
        }
        LetterImage {
            letters,
            len: len as u8,
        }
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.letters[..self.len as usize]
    }
}

impl IntoIterator for LetterImage {
    type Item = Letter;
    type IntoIter = std::iter::Take<std::array::IntoIter<Letter, 3>>;

    fn into_iter(self) -> Self::IntoIter {
        self.letters.into_iter().take(self.len as usize)
    }
}

/// An automorphism given by the images of the four letters.
pub trait Automorphism {
    fn image(&self, letter: Letter) -> LetterImage;

    /// Letterwise image, freely reduced.
    fn apply(&self, w: &Word) -> Word {
        free_reduce(w.letters().iter().flat_map(|&l| self.image(l)))
    }

    /// Image as a cyclic word: the cyclic reduction of [`Automorphism::apply`].
    fn apply_cyclic(&self, w: &CyclicWord) -> CyclicWord {
        let image = free_reduce(w.letters().iter().flat_map(|&l| self.image(l)));
        cyclic_reduce(&image).0
    }
}

/// A Type I automorphism: a signed permutation of `{a, b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Permutation {
    image_of_a: Letter,
    image_of_b: Letter,
}

impl Permutation {
    pub const IDENTITY: Permutation = Permutation {
        image_of_a: Letter::A,
        image_of_b: Letter::B,
    };

    /// All eight permutations, identity first.
    pub const ALL: [Permutation; 8] = {
        use Letter::*;
        const fn p(image_of_a: Letter, image_of_b: Letter) -> Permutation {
            Permutation { image_of_a, image_of_b }
        }
        [
            p(A, B),
            p(A, BInv),
            p(AInv, B),
            p(AInv, BInv),
            p(B, A),
            p(B, AInv),
            p(BInv, A),
            p(BInv, AInv),
        ]
    };

    pub fn new(image_of_a: Letter, image_of_b: Letter) -> Result<Permutation> {
        if image_of_a.same_generator(image_of_b) {
            return Err(Error::NotAPermutation(format!("P[{image_of_a},{image_of_b}]")));
        }
        Ok(Permutation { image_of_a, image_of_b })
    }

    pub fn image_of_a(&self) -> Letter {
        self.image_of_a
    }

    pub fn image_of_b(&self) -> Letter {
        self.image_of_b
    }

    #[inline]
    pub fn map(&self, letter: Letter) -> Letter {
        let image = if letter.generator() == Letter::A {
            self.image_of_a
        } else {
            self.image_of_b
        };
        if letter.is_positive() {
            image
        } else {
            image.inverse()
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image_of_a: self.map(other.image_of_a),
            image_of_b: self.map(other.image_of_b),
        }
    }

    pub fn inverse(&self) -> Permutation {
        *Permutation::ALL
            .iter()
            .find(|p| p.compose(self) == Permutation::IDENTITY)
            .expect("signed permutations form a group")
    }

    pub fn map_cyclic(&self, w: &CyclicWord) -> CyclicWord {
        CyclicWord::from_letters_unchecked(w.letters().iter().map(|&l| self.map(l)).collect())
    }
}

impl Automorphism for Permutation {
    fn image(&self, letter: Letter) -> LetterImage {
        LetterImage::new(None, self.map(letter), None)
    }

    fn apply_cyclic(&self, w: &CyclicWord) -> CyclicWord {
        self.map_cyclic(w)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P[{},{}]", self.image_of_a, self.image_of_b)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Permutation> {
        let (first, second) = parse_bracket_pair(s, 'P')?;
        Permutation::new(first, second)
    }
}

fn parse_bracket_pair(s: &str, tag: char) -> Result<(Letter, Letter)> {
    let syntax = || Error::AutomorphismSyntax(s.to_string());
    let body = s
        .trim()
        .strip_prefix(tag)
        .and_then(|rest| rest.strip_prefix('['))
        .and_then(|rest| rest.strip_suffix(']'))
        .ok_or_else(syntax)?;
    let (first, second) = body.split_once(',').ok_or_else(syntax)?;
    let first = first.trim().parse().map_err(|_| syntax())?;
    let second = second.trim().parse().map_err(|_| syntax())?;
    Ok((first, second))
}

/// A Type II automorphism `(A, x)`: `y ↦ x̄^[ȳ∈A] · y · x^[y∈A]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WhiteheadII {
    /// Bit `i` set when `Letter::from_index(i)` is in `A`.
    set: u8,
    x: Letter,
}

impl WhiteheadII {
    pub fn new(set: &[Letter], x: Letter) -> Result<WhiteheadII> {
        let mut mask = 0u8;
        for &y in set {
            if y.same_generator(x) {
                return Err(Error::DegeneratePair { y, x });
            }
            mask |= 1 << y.index();
        }
        Ok(WhiteheadII { set: mask, x })
    }

    /// All sixteen Type II automorphisms of F₂, including the identity
    /// `({}, x)` and the inner ones `({y, ȳ}, x)`.
    pub fn all() -> Vec<WhiteheadII> {
        let mut out = Vec::with_capacity(16);
        for x in Letter::ALL {
            let others: Vec<Letter> = Letter::ALL.into_iter().filter(|l| !l.same_generator(x)).collect();
            for bits in 0..4u8 {
                let set: Vec<Letter> = others
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits & (1 << i) != 0)
                    .map(|(_, &l)| l)
                    .collect();
                out.push(WhiteheadII::new(&set, x).expect("set avoids x"));
            }
        }
        out
    }

    pub fn x(&self) -> Letter {
        self.x
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.set & (1 << letter.index()) != 0
    }

    pub fn set(&self) -> Vec<Letter> {
        Letter::ALL.into_iter().filter(|&l| self.contains(l)).collect()
    }
}

impl Automorphism for WhiteheadII {
    fn image(&self, y: Letter) -> LetterImage {
        let prefix = self.contains(y.inverse()).then_some(self.x.inverse());
        let suffix = self.contains(y).then_some(self.x);
        LetterImage::new(prefix, y, suffix)
    }
}

/// Free-function form of [`Automorphism::apply`] for Type II automorphisms.
pub fn apply_whitehead(phi: &WhiteheadII, w: &Word) -> Word {
    phi.apply(w)
}

/// A one-letter automorphism `({y}, x)`: `y ↦ yx`, fixing `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct OneLetterAut {
    y: Letter,
    x: Letter,
}

impl OneLetterAut {
    /// The four principal automorphisms; index `i` here is principal index `i + 1`.
    pub const PRINCIPAL: [OneLetterAut; 4] = {
        use Letter::*;
        [
            OneLetterAut { y: A, x: B },
            OneLetterAut { y: A, x: BInv },
            OneLetterAut { y: B, x: A },
            OneLetterAut { y: B, x: AInv },
        ]
    };

    pub fn new(y: Letter, x: Letter) -> Result<OneLetterAut> {
        if y.same_generator(x) {
            return Err(Error::DegeneratePair { y, x });
        }
        Ok(OneLetterAut { y, x })
    }

    /// All eight one-letter automorphisms.
    pub fn all() -> impl Iterator<Item = OneLetterAut> {
        Letter::ALL.into_iter().flat_map(|y| {
            Letter::ALL
                .into_iter()
                .filter(move |x| !x.same_generator(y))
                .map(move |x| OneLetterAut { y, x })
        })
    }

    /// The principal automorphism with index `1..=4`.
    pub fn principal(index: u8) -> Option<OneLetterAut> {
        OneLetterAut::PRINCIPAL.get(usize::from(index).checked_sub(1)?).copied()
    }

    pub fn y(&self) -> Letter {
        self.y
    }

    pub fn x(&self) -> Letter {
        self.x
    }

    pub fn inverse(&self) -> OneLetterAut {
        OneLetterAut {
            y: self.y,
            x: self.x.inverse(),
        }
    }

    /// Principal index `1..=4`, or `None` if this is not a principal automorphism.
    pub fn principal_index(&self) -> Option<u8> {
        OneLetterAut::PRINCIPAL
            .iter()
            .position(|p| p == self)
            .map(|i| i as u8 + 1)
    }

    pub fn as_whitehead(&self) -> WhiteheadII {
        WhiteheadII::new(&[self.y], self.x).expect("validated on construction")
    }
}

impl Automorphism for OneLetterAut {
    fn image(&self, letter: Letter) -> LetterImage {
        if letter == self.y {
            LetterImage::new(None, letter, Some(self.x))
        } else if letter == self.y.inverse() {
            LetterImage::new(Some(self.x.inverse()), letter, None)
        } else {
            LetterImage::new(None, letter, None)
        }
    }
}

/// Cyclic image of `w` under a one-letter automorphism.
pub fn apply_cyclic(phi: OneLetterAut, w: &CyclicWord) -> CyclicWord {
    phi.apply_cyclic(w)
}

impl fmt::Display for OneLetterAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W[{},{}]", self.y, self.x)
    }
}

impl FromStr for OneLetterAut {
    type Err = Error;

    fn from_str(s: &str) -> Result<OneLetterAut> {
        let (y, x) = parse_bracket_pair(s, 'W')?;
        OneLetterAut::new(y, x)
    }
}

/// `π φ π⁻¹ = ({π(y)}, π(x))`.
pub fn conjugate_by_perm(phi: OneLetterAut, pi: Permutation) -> OneLetterAut {
    OneLetterAut {
        y: pi.map(phi.y),
        x: pi.map(phi.x),
    }
}

/// The principal automorphism equal to `phi` modulo inner automorphisms, using
/// `({y}, x) ≡ ({ȳ}, x̄)`.
pub fn principal_of(phi: OneLetterAut) -> OneLetterAut {
    if phi.y.is_positive() {
        phi
    } else {
        OneLetterAut {
            y: phi.y.inverse(),
            x: phi.x.inverse(),
        }
    }
}

/// A cyclic word in canonical form modulo `J`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JCanonicalForm(CyclicWord);

impl JCanonicalForm {
    pub fn word(&self) -> &CyclicWord {
        &self.0
    }

    pub fn into_word(self) -> CyclicWord {
        self.0
    }
}

impl fmt::Display for JCanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Start index of the lexicographically least rotation.
pub(crate) fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0, 1, 0);
    while i < n && j < n && k < n {
        let (a, b) = (s[(i + k) % n], s[(j + k) % n]);
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

fn cyclic_cmp(a: &[Letter], a_start: usize, b: &[Letter], b_start: usize) -> std::cmp::Ordering {
    let n = a.len();
    (0..n)
        .map(|k| a[(a_start + k) % n].cmp(&b[(b_start + k) % n]))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Canonical form together with the move reaching it:
/// `pi.map_cyclic(w).rotated(rotation) == canonical`.
pub fn canonical_with_witness(w: &CyclicWord) -> (JCanonicalForm, Permutation, usize) {
    if w.is_empty() {
        return (JCanonicalForm(w.clone()), Permutation::IDENTITY, 0);
    }
    let mut best: Option<(Vec<Letter>, usize, Permutation)> = None;
    for pi in Permutation::ALL {
        let image: Vec<Letter> = w.letters().iter().map(|&l| pi.map(l)).collect();
        let start = least_rotation(&image);
        let better = match &best {
            None => true,
            Some((b, b_start, _)) => cyclic_cmp(&image, start, b, *b_start).is_lt(),
        };
        if better {
            best = Some((image, start, pi));
        }
    }
    let (image, start, pi) = best.expect("eight candidates");
    let canonical = CyclicWord::from_letters_unchecked(image).rotated(start);
    (JCanonicalForm(canonical), pi, start)
}

/// Least word, in the order `a < b < A < B`, among all rotations of all eight
/// permutation images of `w`.
pub fn canonical_mod_j(w: &CyclicWord) -> JCanonicalForm {
    canonical_with_witness(w).0
}

/// Both sides of `({x̄}, y)·({y}, x) = π·({x, x̄}, y)·({x̄}, ȳ)` with
/// `π: x ↦ ȳ, y ↦ x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangleIdentity {
    pub x: Letter,
    pub y: Letter,
    /// Applied first on the left-hand side.
    pub first: OneLetterAut,
    pub second: OneLetterAut,
    pub perm: Permutation,
    /// The inner factor `({x, x̄}, y)`.
    pub inner: WhiteheadII,
    /// The one-letter factor `({x̄}, ȳ)`, applied first on the right-hand side.
    pub last: OneLetterAut,
}

impl TriangleIdentity {
    pub fn lhs(&self, w: &Word) -> Word {
        self.second.apply(&self.first.apply(w))
    }

    pub fn rhs(&self, w: &Word) -> Word {
        self.perm.apply(&self.inner.apply(&self.last.apply(w)))
    }
}

pub fn triangle_decompose(x: Letter, y: Letter) -> Result<TriangleIdentity> {
    let first = OneLetterAut::new(y, x)?;
    let second = OneLetterAut::new(x.inverse(), y)?;
    let last = OneLetterAut::new(x.inverse(), y.inverse())?;
    let inner = WhiteheadII::new(&[x, x.inverse()], y)?;
    let perm = *Permutation::ALL
        .iter()
        .find(|p| p.map(x) == y.inverse() && p.map(y) == x)
        .expect("x and y generate distinct factors");
    Ok(TriangleIdentity {
        x,
        y,
        first,
        second,
        perm,
        inner,
        last,
    })
}

macro_rules! string_serde {
    ($ty:ty) => {
        impl TryFrom<String> for $ty {
            type Error = Error;

            fn try_from(s: String) -> Result<$ty> {
                s.parse()
            }
        }

        impl From<$ty> for String {
            fn from(value: $ty) -> String {
                value.to_string()
            }
        }
    };
}

string_serde!(Permutation);
string_serde!(OneLetterAut);
