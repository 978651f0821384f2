//! Alphabets, words, contents and identities over variables.
//!
//! Letters of a generator alphabet are stored as small indices and only
//! rendered as `a`, `b`, `c`, ... at I/O boundaries. Variables of identities
//! live in a separate namespace (`x`, `y`, `z1`, `z2`, ...), so the central
//! element `cba` can never be confused with a variable.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A symbol that can appear in a [`Word`].
pub trait Symbol: Copy + Ord + std::hash::Hash + fmt::Debug {
    fn index(self) -> usize;
    fn write(self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
}

/// A generator letter; index 0 is `a`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(pub u8);

impl Letter {
    pub const A: Letter = Letter(0);
    pub const B: Letter = Letter(1);
    pub const C: Letter = Letter(2);

    pub fn from_char(ch: char) -> Option<Letter> {
        ch.is_ascii_lowercase().then(|| Letter(ch as u8 - b'a'))
    }

    pub fn to_char(self) -> char {
        (b'a' + self.0) as char
    }
}

impl Symbol for Letter {
    fn index(self) -> usize {
        self.0 as usize
    }

    fn write(self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A variable of an identity: `x`, `y`, then `z1`, `z2`, ...
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u8);

impl Symbol for Var {
    fn index(self) -> usize {
        self.0 as usize
    }

    fn write(self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "x"),
            1 => write!(f, "y"),
            k => write!(f, "z{}", k - 1),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}

/// A totally ordered generator alphabet `a < b < c < ...` of the given size.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Alphabet {
    size: u8,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Alphabet> {
        if size == 0 || size > 26 {
            return Err(Error::Domain(format!("alphabet size must lie in 1..=26, got {size}")));
        }
        Ok(Alphabet { size: size as u8 })
    }

    pub fn size(self) -> usize {
        self.size as usize
    }

    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.size).map(Letter)
    }

    pub fn contains(self, letter: Letter) -> bool {
        letter.0 < self.size
    }

    /// Checks that every letter of `w` belongs to this alphabet.
    pub fn check(self, w: &Word) -> Result<()> {
        match w.iter().find(|l| !self.contains(*l)) {
            Some(l) => Err(Error::LetterOutOfRange { letter: l.to_char(), size: self.size() }),
            None => Ok(()),
        }
    }

    /// All words of exactly length `n`, in lexicographic order.
    pub fn words_of_length(self, n: usize) -> WordsOfLength {
        WordsOfLength { size: self.size, next: Some(vec![Letter(0); n]) }
    }

    /// All words of length at most `n`, in length-then-lex order.
    pub fn words_up_to(self, n: usize) -> impl Iterator<Item = Word> {
        (0..=n).flat_map(move |k| self.words_of_length(k))
    }
}

/// Iterator over all words of a fixed length.
pub struct WordsOfLength {
    size: u8,
    next: Option<Vec<Letter>>,
}

impl Iterator for WordsOfLength {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        self.next = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if succ[i].0 + 1 < self.size {
                succ[i].0 += 1;
                break Some(succ);
            }
            succ[i] = Letter(0);
        };
        Some(Word(current))
    }
}

/// A finite sequence of symbols. The empty word represents the identity 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word<S = Letter>(pub Vec<S>);

/// A word over the variables of an identity.
pub type VarWord = Word<Var>;

impl<S: Symbol> Word<S> {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = S> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.0
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Self {
        Word(self.0.repeat(k))
    }

    pub fn reversed(&self) -> Self {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Number of occurrences of `x` in the word.
    pub fn occ(&self, x: S) -> usize {
        self.0.iter().filter(|&&s| s == x).count()
    }

    /// The set of symbols occurring in the word.
    pub fn alf(&self) -> BTreeSet<S> {
        self.0.iter().copied().collect()
    }

    /// Occurrence counts indexed by symbol index.
    pub fn content(&self) -> Content {
        let width = self.0.iter().map(|s| s.index() + 1).max().unwrap_or(0);
        let mut counts = vec![0; width];
        for s in &self.0 {
            counts[s.index()] += 1;
        }
        Content { counts }
    }

    pub fn starts_with(&self, prefix: &Self) -> bool {
        self.0.starts_with(&prefix.0)
    }
}

impl<S> FromIterator<S> for Word<S> {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Length-then-lexicographic comparison.
pub fn shortlex<S: Ord>(u: &Word<S>, v: &Word<S>) -> Ordering {
    u.0.len().cmp(&v.0.len()).then_with(|| u.0.cmp(&v.0))
}

impl<S: Symbol> fmt::Display for Word<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        self.0.iter().try_for_each(|s| s.write(f))
    }
}

impl FromStr for Word<Letter> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|ch| Letter::from_char(ch).ok_or_else(|| Error::Parse(format!("invalid letter {ch:?} in word {s:?}"))))
            .collect()
    }
}

impl FromStr for Word<Var> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        let mut out = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(ch) = chars.next() {
            match ch {
                'x' => out.push(Var(0)),
                'y' => out.push(Var(1)),
                'z' => {
                    let mut digits = String::new();
                    while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                        digits.push(*d);
                        chars.next();
                    }
                    let k: u8 =
                        digits.parse().ok().filter(|k| (1..=250).contains(k)).ok_or_else(|| {
                            Error::Parse(format!("variable z must be indexed (z1, z2, ...) in {s:?}"))
                        })?;
                    out.push(Var(k + 1));
                }
                c if c.is_whitespace() => {}
                c => return Err(Error::Parse(format!("invalid variable {c:?} in {s:?}"))),
            }
        }
        Ok(Word(out))
    }
}

/// Letter multiset of a word: `counts[i]` is the number of occurrences of the
/// symbol with index `i`. Trailing zeros are not significant.
#[derive(Clone, Debug, Default)]
pub struct Content {
    counts: Vec<usize>,
}

impl Content {
    pub fn get(&self, index: usize) -> usize {
        self.counts.get(index).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn counts(&self) -> &[usize] {
        let end = self.counts.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
        &self.counts[..end]
    }
}

impl PartialEq for Content {
    fn eq(&self, other: &Self) -> bool {
        self.counts() == other.counts()
    }
}

impl Eq for Content {}

/// A pair of words over variables, written `lhs=rhs`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Identity {
    pub lhs: VarWord,
    pub rhs: VarWord,
}

impl Identity {
    pub fn new(lhs: VarWord, rhs: VarWord) -> Identity {
        Identity { lhs, rhs }
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    /// Every variable occurs equally often on both sides.
    pub fn is_balanced(&self) -> bool {
        self.lhs.content() == self.rhs.content()
    }

    /// Variables of both sides, in increasing order.
    pub fn variables(&self) -> Vec<Var> {
        let mut vars = self.lhs.alf();
        vars.extend(self.rhs.alf());
        vars.into_iter().collect()
    }

    /// Reading both sides backwards yields the same pair of words.
    pub fn is_reversive(&self) -> bool {
        let (l, r) = (self.lhs.reversed(), self.rhs.reversed());
        (l == self.lhs && r == self.rhs) || (l == self.rhs && r == self.lhs)
    }

    pub fn swapped(&self) -> Identity {
        Identity::new(self.rhs.clone(), self.lhs.clone())
    }

    pub fn renamed(&self, map: impl Fn(Var) -> Var) -> Identity {
        Identity::new(self.lhs.iter().map(&map).collect(), self.rhs.iter().map(&map).collect())
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.lhs, self.rhs)
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Identity> {
        let (l, r) = s.split_once('=').ok_or_else(|| Error::Parse(format!("identity {s:?} has no '='")))?;
        Ok(Identity::new(l.parse()?, r.parse()?))
    }
}

/// Assignment of monoid elements (as words over the generators) to variables.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Substitution(pub BTreeMap<Var, Word>);

impl Substitution {
    pub fn get(&self, var: Var) -> Result<&Word> {
        self.0.get(&var).ok_or_else(|| Error::Domain(format!("substitution has no value for variable {var}")))
    }

    /// Concatenates the values of the variables of `side`, without
    /// normalizing in any monoid.
    pub fn apply(&self, side: &VarWord) -> Result<Word> {
        let mut out = Vec::new();
        for var in side.iter() {
            out.extend_from_slice(self.get(var)?.as_slice());
        }
        Ok(Word(out))
    }
}

impl FromIterator<(Var, Word)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Var, Word)>>(iter: I) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (var, value) in &self.0 {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{var}->{value}")?;
        }
        Ok(())
    }
}

/// Shorthand for parsing a generator word in tests and examples.
///
/// Panics on malformed input.
pub fn w(s: &str) -> Word {
    s.parse().expect("malformed word literal")
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn word() -> impl Strategy<Value = Word> {
        proptest::collection::vec(0u8..3, 0..10).prop_map(|v| Word(v.into_iter().map(Letter).collect()))
    }

    fn var_word() -> impl Strategy<Value = VarWord> {
        proptest::collection::vec(0u8..3, 0..7).prop_map(|v| Word(v.into_iter().map(Var).collect()))
    }

    proptest! {
        #[test]
        fn occ_is_additive(u in word(), v in word(), x in 0u8..3) {
            let x = Letter(x);
            prop_assert_eq!(u.concat(&v).occ(x), u.occ(x) + v.occ(x));
        }

        #[test]
        fn alf_is_support_of_occ(u in word()) {
            let support: BTreeSet<Letter> = (0..3).map(Letter).filter(|&x| u.occ(x) > 0).collect();
            prop_assert_eq!(u.alf(), support);
        }

        #[test]
        fn balance_invariant_under_renaming_and_swap(l in var_word(), r in var_word(), p in 0usize..6) {
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let ident = Identity::new(l, r);
            let renamed = ident.renamed(|v| Var(perms[p][v.0 as usize]));
            prop_assert_eq!(ident.is_balanced(), renamed.is_balanced());
            prop_assert_eq!(ident.is_balanced(), ident.swapped().is_balanced());
        }

        #[test]
        fn display_parse_round_trip(u in word()) {
            prop_assert_eq!(u.to_string().parse::<Word>().unwrap(), u);
        }
    }
}
