//! Hilbert-Hotel swallowing along disjoint chains.
//!
//! A chain is an infinite sequence of distinct cards `(suit, rank)` with
//! natural-number ranks, given as a finite prefix followed by an arithmetic
//! tail in a single suit. One chain per tag witnesses that the tags are
//! swallowed by `n × ℕ`; [`swallow_map`] turns that into an injection from
//! tags plus `ℕ` into `ℕ`.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Card, Sum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("tail stride must be positive")]
    ZeroStride,
    #[error("card {0:?} occurs twice in one chain")]
    Repeated(Card),
    #[error("suit {suit} is out of range for {n} suits")]
    SuitOutOfRange { suit: usize, n: usize },
    #[error("chains {0} and {1} share a card")]
    Overlap(String, String),
    #[error("unknown tag {0}")]
    UnknownTag(String),
}

/// The arithmetic tail `(suit, start + k·stride)` for `k ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(usize, usize, usize)", into = "(usize, usize, usize)")]
pub struct Tail {
    pub suit: usize,
    pub start: usize,
    pub stride: usize,
}

impl From<(usize, usize, usize)> for Tail {
    fn from((suit, start, stride): (usize, usize, usize)) -> Self {
        Tail { suit, start, stride }
    }
}

impl From<Tail> for (usize, usize, usize) {
    fn from(t: Tail) -> Self {
        (t.suit, t.start, t.stride)
    }
}

impl Tail {
    fn has_rank(&self, rank: usize) -> bool {
        rank >= self.start && (rank - self.start).is_multiple_of(self.stride)
    }

    fn contains(&self, card: Card) -> bool {
        card.suit == self.suit && self.has_rank(card.rank)
    }

    fn meets(&self, other: &Tail) -> bool {
        self.suit == other.suit && self.start % self.stride.gcd(&other.stride) == other.start % self.stride.gcd(&other.stride)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct ChainDoc {
    prefix: Vec<(usize, usize)>,
    tail: Tail,
}

/// A finite prefix followed by an arithmetic tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ChainDoc", into = "ChainDoc")]
pub struct ArithChain {
    prefix: Vec<Card>,
    tail: Tail,
}

impl TryFrom<ChainDoc> for ArithChain {
    type Error = ChainError;

    fn try_from(doc: ChainDoc) -> Result<Self, ChainError> {
        ArithChain::new(doc.prefix.into_iter().map(|(s, r)| Card::new(s, r)).collect(), doc.tail)
    }
}

impl From<ArithChain> for ChainDoc {
    fn from(c: ArithChain) -> Self {
        ChainDoc { prefix: c.prefix.iter().map(|c| (c.suit, c.rank)).collect(), tail: c.tail }
    }
}

impl ArithChain {
    pub fn new(prefix: Vec<Card>, tail: Tail) -> Result<Self, ChainError> {
        if tail.stride == 0 {
            return Err(ChainError::ZeroStride);
        }
        let mut seen = BTreeSet::new();
        for &c in &prefix {
            if !seen.insert(c) || tail.contains(c) {
                return Err(ChainError::Repeated(c));
            }
        }
        Ok(ArithChain { prefix, tail })
    }

    /// A chain with no prefix.
    pub fn tail_only(suit: usize, start: usize, stride: usize) -> Result<Self, ChainError> {
        Self::new(Vec::new(), Tail { suit, start, stride })
    }

    pub fn prefix(&self) -> &[Card] {
        &self.prefix
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// The `k`-th card.
    pub fn entry(&self, k: usize) -> Card {
        match self.prefix.get(k) {
            Some(&c) => c,
            None => Card::new(self.tail.suit, self.tail.start + (k - self.prefix.len()) * self.tail.stride),
        }
    }

    pub fn contains(&self, card: Card) -> bool {
        self.tail.contains(card) || self.prefix.contains(&card)
    }

    fn max_suit(&self) -> usize {
        self.prefix.iter().map(|c| c.suit).fold(self.tail.suit, usize::max)
    }

    /// The smallest suit with infinitely many cards on the chain.
    pub fn limiting_suit(&self) -> usize {
        self.tail.suit
    }

    /// Ranks of limiting-suit cards after the last card of a lower suit.
    pub fn trim(&self) -> Trimmed {
        let suit = self.tail.suit;
        let cut = self.prefix.iter().rposition(|c| c.suit < suit).map_or(0, |p| p + 1);
        let head = self.prefix[cut..].iter().filter(|c| c.suit == suit).map(|c| c.rank).collect();
        Trimmed { head, start: self.tail.start, stride: self.tail.stride }
    }
}

/// A rank sequence: a finite head, then `start + k·stride`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trimmed {
    pub head: Vec<usize>,
    pub start: usize,
    pub stride: usize,
}

impl Trimmed {
    pub fn rank(&self, k: usize) -> usize {
        match self.head.get(k) {
            Some(&r) => r,
            None => self.start + (k - self.head.len()) * self.stride,
        }
    }

    /// Position of `rank` in the sequence.
    pub fn position(&self, rank: usize) -> Option<usize> {
        if let Some(p) = self.head.iter().position(|&r| r == rank) {
            return Some(p);
        }
        (rank >= self.start && (rank - self.start).is_multiple_of(self.stride))
            .then(|| self.head.len() + (rank - self.start) / self.stride)
    }
}

/// One chain per tag, all inside `n × ℕ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainFamily {
    pub n: usize,
    pub chains: BTreeMap<String, ArithChain>,
}

impl ChainFamily {
    pub fn new(n: usize, chains: BTreeMap<String, ArithChain>) -> Result<Self, ChainError> {
        let fam = ChainFamily { n, chains };
        fam.check()?;
        Ok(fam)
    }

    /// Suits in range and chains pairwise disjoint.
    pub fn check(&self) -> Result<(), ChainError> {
        for c in self.chains.values() {
            let suit = c.max_suit();
            if suit >= self.n {
                return Err(ChainError::SuitOutOfRange { suit, n: self.n });
            }
        }
        match first_overlap(self) {
            Some((x, y)) => Err(ChainError::Overlap(x.clone(), y.clone())),
            None => Ok(()),
        }
    }
}

fn first_overlap(fam: &ChainFamily) -> Option<(&String, &String)> {
    let tags: Vec<(&String, &ArithChain)> = fam.chains.iter().collect();
    for (i, (x, c)) in tags.iter().enumerate() {
        for (y, d) in &tags[i + 1..] {
            let clash = c.tail.meets(&d.tail)
                || c.prefix.iter().any(|&p| d.contains(p))
                || d.prefix.iter().any(|&p| c.contains(p));
            if clash {
                return Some((x, y));
            }
        }
    }
    None
}

/// Whether the chains are pairwise disjoint. Exact, with no sampling.
pub fn verify_disjoint(fam: &ChainFamily) -> bool {
    first_overlap(fam).is_none()
}

/// The trimmed rank sequences, grouped by limiting suit.
struct Classes<'a> {
    by_suit: Vec<Vec<(&'a String, Trimmed)>>,
}

impl<'a> Classes<'a> {
    fn new(fam: &'a ChainFamily) -> Self {
        let mut by_suit: Vec<Vec<(&String, Trimmed)>> = vec![Vec::new(); fam.n];
        for (tag, c) in &fam.chains {
            by_suit[c.limiting_suit()].push((tag, c.trim()));
        }
        Classes { by_suit }
    }

    /// The shift for suit class `i`, applied to a natural number.
    fn shift(&self, i: usize, x: usize) -> usize {
        for (_, rho) in &self.by_suit[i] {
            if let Some(k) = rho.position(x) {
                return rho.rank(k + 1);
            }
        }
        x
    }

    fn on_chain(&self, x: usize) -> bool {
        self.by_suit.iter().flatten().any(|(_, rho)| rho.position(x).is_some())
    }
}

/// Swallowing `tags + ℕ → ℕ`, evaluated at many points at once.
pub struct Swallow<'a> {
    classes: Classes<'a>,
    fam: &'a ChainFamily,
}

impl<'a> Swallow<'a> {
    pub fn new(fam: &'a ChainFamily) -> Result<Self, ChainError> {
        fam.check()?;
        Ok(Swallow { classes: Classes::new(fam), fam })
    }

    /// Apply the class maps for suits `from..n` in order.
    fn run_from(&self, from: usize, mut x: usize) -> usize {
        for i in from..self.fam.n {
            x = self.classes.shift(i, x);
        }
        x
    }

    pub fn apply(&self, x: &Sum<String, usize>) -> Result<usize, ChainError> {
        match x {
            Sum::Right(c) => Ok(self.run_from(0, *c)),
            Sum::Left(tag) => {
                let chain = self.fam.chains.get(tag).ok_or_else(|| ChainError::UnknownTag(tag.clone()))?;
                let i = chain.limiting_suit();
                Ok(self.run_from(i + 1, chain.trim().rank(0)))
            }
        }
    }

    /// Whether `x` lies on some trimmed chain.
    pub fn on_chain(&self, x: usize) -> bool {
        self.classes.on_chain(x)
    }
}

/// The composed Hilbert-Hotel injection `tags + ℕ → ℕ` at one point.
///
/// Class `i` holds the tags whose chain has limiting suit `i`. Its map sends
/// a tag to the first trimmed rank of its chain and each trimmed rank to the
/// next, fixing everything else. The classes are applied for `i = 0..n`.
pub fn swallow_map(fam: &ChainFamily, x: &Sum<String, usize>) -> Result<usize, ChainError> {
    Swallow::new(fam)?.apply(x)
}
