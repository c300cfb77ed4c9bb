//! Cards, spots, layouts and finite map witnesses.
//!
//! A [`Layout`] is the board shared by every division algorithm: a set of
//! racks with `n` slots each, a deck of `n × ranks` cards, and a partial
//! placement of cards into slots. Long Division fills every slot (some cards
//! stay in the deck); Short Division deals every card (some slots stay empty).
//!
//! Racks and ranks are addressed by index inside a layout. Their display
//! labels are kept alongside so traces can be rendered, and the label order is
//! the display order.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Element identifiers usable as carriers of witnesses.
///
/// `label` gives the display form used in traces and diagnostics.
pub trait Ident: Ord + Clone + fmt::Debug {
    fn label(&self) -> String;
}

impl Ident for String {
    fn label(&self) -> String {
        self.clone()
    }
}

impl Ident for usize {
    fn label(&self) -> String {
        self.to_string()
    }
}

impl Ident for u32 {
    fn label(&self) -> String {
        self.to_string()
    }
}

impl Ident for u64 {
    fn label(&self) -> String {
        self.to_string()
    }
}

impl<T: Ident> Ident for (usize, T) {
    fn label(&self) -> String {
        format!("{}.{}", self.0, self.1.label())
    }
}

/// Disjoint union `L + R`. The variant is the summand tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sum<L, R> {
    Left(L),
    Right(R),
}

impl<L: Ident, R: Ident> Ident for Sum<L, R> {
    fn label(&self) -> String {
        match self {
            Sum::Left(l) => format!("L:{}", l.label()),
            Sum::Right(r) => format!("R:{}", r.label()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("domain element {0} has no image")]
    NotTotal(String),
    #[error("pair for {0} but that element is not in the domain")]
    UnknownDomainElement(String),
    #[error("element {0} is mapped twice")]
    DuplicateEntry(String),
    #[error("element {0} is listed twice in a carrier set")]
    DuplicateElement(String),
    #[error("image {0} lies outside the codomain")]
    ImageOutsideCodomain(String),
    #[error("map is not injective: {0} and {1} share an image")]
    NotInjective(String, String),
    #[error("map is not surjective: {0} has no preimage")]
    NotSurjective(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// A total map between two finite, ordered carrier sets.
///
/// Construction checks totality only. Whether the map is an injection or a
/// bijection is a separate question answered by [`verify_injection`] and
/// [`verify_bijection`], so malformed witnesses can still be represented and
/// diagnosed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<D, C> {
    domain: Vec<D>,
    codomain: Vec<C>,
    map: BTreeMap<D, C>,
    provenance: Option<String>,
}

/// A witness for `A ⪯ B`.
pub type InjectionWitness<D, C> = Witness<D, C>;
/// A witness for `A ≍ B`.
pub type BijectionWitness<D, C> = Witness<D, C>;

fn distinct<T: Ident>(items: &[T]) -> Result<(), WitnessError> {
    let mut seen = BTreeSet::new();
    for x in items {
        if !seen.insert(x) {
            return Err(WitnessError::DuplicateElement(x.label()));
        }
    }
    Ok(())
}

impl<D: Ident, C: Ident> Witness<D, C> {
    pub fn new(
        domain: Vec<D>,
        codomain: Vec<C>,
        pairs: impl IntoIterator<Item = (D, C)>,
    ) -> Result<Self, WitnessError> {
        distinct(&domain)?;
        distinct(&codomain)?;
        let members: BTreeSet<&D> = domain.iter().collect();
        let mut map = BTreeMap::new();
        for (d, c) in pairs {
            if !members.contains(&d) {
                return Err(WitnessError::UnknownDomainElement(d.label()));
            }
            let label = d.label();
            if map.insert(d, c).is_some() {
                return Err(WitnessError::DuplicateEntry(label));
            }
        }
        if let Some(missing) = domain.iter().find(|d| !map.contains_key(*d)) {
            return Err(WitnessError::NotTotal(missing.label()));
        }
        Ok(Witness {
            domain,
            codomain,
            map,
            provenance: None,
        })
    }

    pub fn from_fn(domain: Vec<D>, codomain: Vec<C>, f: impl Fn(&D) -> C) -> Result<Self, WitnessError> {
        let pairs: Vec<(D, C)> = domain.iter().map(|d| (d.clone(), f(d))).collect();
        Self::new(domain, codomain, pairs)
    }

    /// The identity on `items`.
    pub fn identity(items: Vec<D>) -> Result<Witness<D, D>, WitnessError> {
        Witness::from_fn(items.clone(), items, |d| d.clone())
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = Some(provenance.into());
        self
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn domain(&self) -> &[D] {
        &self.domain
    }

    pub fn codomain(&self) -> &[C] {
        &self.codomain
    }

    pub fn get(&self, d: &D) -> Option<&C> {
        self.map.get(d)
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    /// Pairs in domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (&D, &C)> + '_ {
        self.domain.iter().map(move |d| (d, &self.map[d]))
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Result<Witness<C, D>, WitnessError> {
        verify_bijection(self)?.then_some(()).ok_or_else(|| {
            WitnessError::Shape("only a bijection can be inverted".into())
        })?;
        let pairs: Vec<(C, D)> = self.pairs().map(|(d, c)| (c.clone(), d.clone())).collect();
        Witness::new(self.codomain.clone(), self.domain.clone(), pairs)
    }

    /// `other ∘ self`.
    pub fn then<E: Ident>(&self, other: &Witness<C, E>) -> Result<Witness<D, E>, WitnessError> {
        let mut pairs = Vec::with_capacity(self.len());
        for (d, c) in self.pairs() {
            let e = other
                .get(c)
                .ok_or_else(|| WitnessError::ImageOutsideCodomain(c.label()))?;
            pairs.push((d.clone(), e.clone()));
        }
        Witness::new(self.domain.clone(), other.codomain.clone(), pairs)
    }

    /// The image set, checked against the codomain.
    pub fn image(&self) -> Result<BTreeSet<&C>, WitnessError> {
        let codomain: BTreeSet<&C> = self.codomain.iter().collect();
        let mut image = BTreeSet::new();
        for c in self.map.values() {
            if !codomain.contains(c) {
                return Err(WitnessError::ImageOutsideCodomain(c.label()));
            }
            image.insert(c);
        }
        Ok(image)
    }
}

/// Whether `w` is an injection into its codomain.
///
/// An image outside the codomain is a malformed witness and reported as an
/// error rather than `false`.
pub fn verify_injection<D: Ident, C: Ident>(w: &Witness<D, C>) -> Result<bool, WitnessError> {
    Ok(first_collision(w)?.is_none())
}

/// Two domain elements sharing an image, if any.
pub fn first_collision<D: Ident, C: Ident>(w: &Witness<D, C>) -> Result<Option<(D, D)>, WitnessError> {
    let codomain: BTreeSet<&C> = w.codomain.iter().collect();
    let mut seen: BTreeMap<&C, &D> = BTreeMap::new();
    for (d, c) in w.pairs() {
        if !codomain.contains(c) {
            return Err(WitnessError::ImageOutsideCodomain(c.label()));
        }
        if let Some(prev) = seen.insert(c, d) {
            return Ok(Some((prev.clone(), d.clone())));
        }
    }
    Ok(None)
}

/// Whether `w` is a bijection onto its codomain.
pub fn verify_bijection<D: Ident, C: Ident>(w: &Witness<D, C>) -> Result<bool, WitnessError> {
    Ok(verify_injection(w)? && w.domain.len() == w.codomain.len())
}

/// Like [`verify_injection`] but turns `false` into a descriptive error.
pub fn require_injection<D: Ident, C: Ident>(w: &Witness<D, C>) -> Result<(), WitnessError> {
    match first_collision(w)? {
        None => Ok(()),
        Some((a, b)) => Err(WitnessError::NotInjective(a.label(), b.label())),
    }
}

pub fn require_bijection<D: Ident, C: Ident>(w: &Witness<D, C>) -> Result<(), WitnessError> {
    require_injection(w)?;
    if w.domain.len() != w.codomain.len() {
        let image = w.image()?;
        let missing = w.codomain.iter().find(|c| !image.contains(c)).expect("codomain is larger");
        return Err(WitnessError::NotSurjective(missing.label()));
    }
    Ok(())
}

/// `n × items` in suit-major order.
pub fn product<T: Clone>(n: usize, items: &[T]) -> Vec<(usize, T)> {
    (0..n).flat_map(|s| items.iter().map(move |x| (s, x.clone()))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Racks are `A`, every slot holds a card, leftover cards stay in the deck.
    Long,
    /// Racks are `B`, every card is dealt, leftover slots stay empty.
    Short,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Card {
    pub suit: usize,
    pub rank: usize,
}

impl Card {
    pub const fn new(suit: usize, rank: usize) -> Self {
        Card { suit, rank }
    }
}

/// Slot 0 is the spades slot; slots run left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Spot {
    pub rack: usize,
    pub slot: usize,
}

impl Spot {
    pub const fn new(rack: usize, slot: usize) -> Self {
        Spot { rack, slot }
    }
}

/// Where a card can be: a spot on the board, or the deck (named by the card).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Location {
    Spot(Spot),
    Deck(Card),
}

/// Exchange the contents of two locations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Swap(pub Location, pub Location);

impl Swap {
    pub fn spots(a: Spot, b: Spot) -> Self {
        Swap(Location::Spot(a), Location::Spot(b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("suit count must be at least 1")]
    NoSuits,
    #[error("card {0:?} is out of range")]
    CardOutOfRange(Card),
    #[error("spot {0:?} is out of range")]
    SpotOutOfRange(Spot),
    #[error("card {0:?} is placed twice")]
    CardPlacedTwice(Card),
    #[error("spot {0:?} holds two cards")]
    SpotFilledTwice(Spot),
    #[error("long layout leaves spot {0:?} empty")]
    EmptySpot(Spot),
    #[error("short layout leaves card {0:?} in the deck")]
    UndealtCard(Card),
    #[error("location {0:?} appears in more than one swap")]
    Conflict(Location),
    #[error("invalid swap {0:?}: {1}")]
    InvalidSwap(Swap, &'static str),
    #[error("operation needs a {0:?} layout")]
    WrongMode(Mode),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

/// Board state: racks of `suit_count` slots and a deck of `suit_count × ranks`
/// cards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    suits: usize,
    racks: Vec<String>,
    ranks: Vec<String>,
    board: Vec<Option<Card>>,
    place: Vec<Option<Spot>>,
    mode: Mode,
}

impl Layout {
    pub fn new(
        suit_count: usize,
        racks: Vec<String>,
        ranks: Vec<String>,
        mode: Mode,
        placements: impl IntoIterator<Item = (Spot, Card)>,
    ) -> Result<Self, LayoutError> {
        if suit_count == 0 {
            return Err(LayoutError::NoSuits);
        }
        let mut layout = Layout {
            suits: suit_count,
            board: vec![None; suit_count * racks.len()],
            place: vec![None; suit_count * ranks.len()],
            racks,
            ranks,
            mode,
        };
        for (spot, card) in placements {
            if spot.slot >= suit_count || spot.rack >= layout.racks.len() {
                return Err(LayoutError::SpotOutOfRange(spot));
            }
            if card.suit >= suit_count || card.rank >= layout.ranks.len() {
                return Err(LayoutError::CardOutOfRange(card));
            }
            let si = layout.spot_index(spot);
            let ci = layout.card_index(card);
            if layout.board[si].is_some() {
                return Err(LayoutError::SpotFilledTwice(spot));
            }
            if layout.place[ci].is_some() {
                return Err(LayoutError::CardPlacedTwice(card));
            }
            layout.board[si] = Some(card);
            layout.place[ci] = Some(spot);
        }
        layout.check_mode()?;
        Ok(layout)
    }

    fn spot_index(&self, spot: Spot) -> usize {
        spot.rack * self.suits + spot.slot
    }

    fn card_index(&self, card: Card) -> usize {
        card.suit * self.ranks.len() + card.rank
    }

    pub fn suit_count(&self) -> usize {
        self.suits
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn racks(&self) -> &[String] {
        &self.racks
    }

    pub fn ranks(&self) -> &[String] {
        &self.ranks
    }

    pub fn rack_count(&self) -> usize {
        self.racks.len()
    }

    pub fn rank_count(&self) -> usize {
        self.ranks.len()
    }

    /// `|A|` of the underlying problem: racks in Long mode, ranks in Short mode.
    pub fn active_count(&self) -> usize {
        match self.mode {
            Mode::Long => self.racks.len(),
            Mode::Short => self.ranks.len(),
        }
    }

    pub fn card_at(&self, spot: Spot) -> Option<Card> {
        self.board[self.spot_index(spot)]
    }

    /// Spot holding `card`, or `None` when it is in the deck.
    pub fn spot_of(&self, card: Card) -> Option<Spot> {
        self.place[self.card_index(card)]
    }

    pub fn location_of(&self, card: Card) -> Location {
        match self.spot_of(card) {
            Some(s) => Location::Spot(s),
            None => Location::Deck(card),
        }
    }

    /// The slots of one rack, left to right.
    pub fn rack(&self, rack: usize) -> &[Option<Card>] {
        &self.board[rack * self.suits..(rack + 1) * self.suits]
    }

    pub fn cards(&self) -> impl Iterator<Item = Card> + '_ {
        let ranks = self.ranks.len();
        (0..self.suits).flat_map(move |s| (0..ranks).map(move |r| Card::new(s, r)))
    }

    pub fn deck(&self) -> Vec<Card> {
        self.cards().filter(|c| self.spot_of(*c).is_none()).collect()
    }

    /// Card display, e.g. `Qs` for n ≤ 4 and `Q:0` beyond.
    pub fn card_label(&self, card: Card) -> String {
        suit_label(self.suits, card.suit, &self.ranks[card.rank])
    }

    fn check_mode(&self) -> Result<(), LayoutError> {
        match self.mode {
            Mode::Long => {
                if let Some(i) = self.board.iter().position(Option::is_none) {
                    return Err(LayoutError::EmptySpot(Spot::new(i / self.suits, i % self.suits)));
                }
            }
            Mode::Short => {
                if let Some(card) = self.cards().find(|c| self.spot_of(*c).is_none()) {
                    return Err(LayoutError::UndealtCard(card));
                }
            }
        }
        Ok(())
    }

    /// Full invariant check: board and placement agree, and the mode
    /// invariant holds.
    pub fn check(&self) -> Result<(), LayoutError> {
        let mut seen = HashSet::new();
        for (i, slot) in self.board.iter().enumerate() {
            let spot = Spot::new(i / self.suits, i % self.suits);
            if let Some(card) = slot {
                if !seen.insert(*card) {
                    return Err(LayoutError::CardPlacedTwice(*card));
                }
                if self.spot_of(*card) != Some(spot) {
                    return Err(LayoutError::CardPlacedTwice(*card));
                }
            }
        }
        for card in self.cards() {
            if let Some(spot) = self.spot_of(card) {
                if self.card_at(spot) != Some(card) {
                    return Err(LayoutError::SpotFilledTwice(spot));
                }
            }
        }
        self.check_mode()
    }

    /// Apply a set of pairwise-disjoint swaps simultaneously.
    pub fn apply_swaps(&self, swaps: &[Swap]) -> Result<Layout, LayoutError> {
        let mut next = self.clone();
        next.apply_swaps_in_place(swaps)?;
        next.check()?;
        Ok(next)
    }

    pub(crate) fn apply_swaps_in_place(&mut self, swaps: &[Swap]) -> Result<(), LayoutError> {
        let mut used = HashSet::with_capacity(swaps.len() * 2);
        for swap in swaps {
            let Swap(a, b) = *swap;
            if a == b {
                return Err(LayoutError::InvalidSwap(*swap, "a location cannot swap with itself"));
            }
            for loc in [a, b] {
                match loc {
                    Location::Spot(s) if s.slot >= self.suits || s.rack >= self.racks.len() => {
                        return Err(LayoutError::SpotOutOfRange(s));
                    }
                    Location::Deck(c) if c.suit >= self.suits || c.rank >= self.ranks.len() => {
                        return Err(LayoutError::CardOutOfRange(c));
                    }
                    Location::Deck(c) if self.spot_of(c).is_some() => {
                        return Err(LayoutError::InvalidSwap(*swap, "named deck card is on the board"));
                    }
                    _ => {}
                }
                if !used.insert(loc) {
                    return Err(LayoutError::Conflict(loc));
                }
            }
            if matches!((a, b), (Location::Deck(_), Location::Deck(_))) {
                return Err(LayoutError::InvalidSwap(*swap, "two deck positions"));
            }
        }
        for &Swap(a, b) in swaps {
            match (a, b) {
                (Location::Spot(p), Location::Spot(q)) => {
                    let (pi, qi) = (self.spot_index(p), self.spot_index(q));
                    self.board.swap(pi, qi);
                    self.settle(p);
                    self.settle(q);
                }
                (Location::Spot(p), Location::Deck(c)) | (Location::Deck(c), Location::Spot(p)) => {
                    let pi = self.spot_index(p);
                    if let Some(old) = self.board[pi].replace(c) {
                        let oi = self.card_index(old);
                        self.place[oi] = None;
                    }
                    self.settle(p);
                }
                (Location::Deck(_), Location::Deck(_)) => unreachable!("rejected above"),
            }
        }
        Ok(())
    }

    fn settle(&mut self, spot: Spot) {
        if let Some(card) = self.board[self.spot_index(spot)] {
            let ci = self.card_index(card);
            self.place[ci] = Some(spot);
        }
    }
}

const SUIT_LETTERS: [char; 4] = ['s', 'h', 'g', 'c'];

pub(crate) fn suit_label(suits: usize, suit: usize, rank: &str) -> String {
    if suits <= SUIT_LETTERS.len() {
        format!("{rank}{}", SUIT_LETTERS[suit])
    } else {
        format!("{rank}:{suit}")
    }
}

/// Build the board described by an injection `f: n×A → n×B`.
///
/// In Long mode the domain is the set of spots (`(slot, rack)` with racks
/// from `a`) and the codomain the cards (`(suit, rank)` with ranks from `b`).
/// In Short mode the roles are reversed: the domain is the cards, with ranks
/// from `a`, and the codomain the spots, with racks from `b`.
pub fn layout_from_injection<A: Ident, B: Ident>(
    n: usize,
    a: &[A],
    b: &[B],
    f: &Witness<(usize, A), (usize, B)>,
    mode: Mode,
) -> Result<Layout, LayoutError> {
    if n == 0 {
        return Err(LayoutError::NoSuits);
    }
    check_product_shape(n, a, f.domain(), "domain")?;
    check_product_shape(n, b, f.codomain(), "codomain")?;
    require_injection(f)?;
    let a_index: BTreeMap<&A, usize> = a.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let b_index: BTreeMap<&B, usize> = b.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let a_labels: Vec<String> = a.iter().map(Ident::label).collect();
    let b_labels: Vec<String> = b.iter().map(Ident::label).collect();
    let placements = f.pairs().map(|((s, x), (t, y))| {
        let (ai, bi) = (a_index[x], b_index[y]);
        match mode {
            Mode::Long => (Spot::new(ai, *s), Card::new(*t, bi)),
            Mode::Short => (Spot::new(bi, *t), Card::new(*s, ai)),
        }
    });
    let placements: Vec<(Spot, Card)> = placements.collect();
    match mode {
        Mode::Long => Layout::new(n, a_labels, b_labels, mode, placements),
        Mode::Short => Layout::new(n, b_labels, a_labels, mode, placements),
    }
}

pub(crate) fn check_product_shape<T: Ident>(
    n: usize,
    base: &[T],
    carrier: &[(usize, T)],
    what: &str,
) -> Result<(), WitnessError> {
    distinct(base)?;
    let expected: BTreeSet<(usize, T)> = product(n, base).into_iter().collect();
    let actual: BTreeSet<(usize, T)> = carrier.iter().cloned().collect();
    if expected != actual || carrier.len() != expected.len() {
        return Err(WitnessError::Shape(format!(
            "{what} is not {n} × a set of {} elements",
            base.len()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    fn strings(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|x| s(x)).collect()
    }

    #[test]
    fn identity_is_injective() {
        let w = Witness::<String, String>::identity(strings(&["a", "b"])).unwrap();
        assert_eq!(verify_injection(&w), Ok(true));
        assert_eq!(verify_bijection(&w), Ok(true));
    }

    #[test]
    fn collision_is_not_injective() {
        let w = Witness::new(
            strings(&["a", "b"]),
            strings(&["x"]),
            [(s("a"), s("x")), (s("b"), s("x"))],
        )
        .unwrap();
        assert_eq!(verify_injection(&w), Ok(false));
        assert!(matches!(require_injection(&w), Err(WitnessError::NotInjective(..))));
    }

    #[test]
    fn image_outside_codomain_is_an_error() {
        let w = Witness::new(strings(&["a"]), strings(&["x"]), [(s("a"), s("y"))]).unwrap();
        assert_eq!(verify_injection(&w), Err(WitnessError::ImageOutsideCodomain(s("y"))));
    }

    #[test]
    fn partial_map_is_rejected() {
        let err = Witness::new(strings(&["a", "b"]), strings(&["x"]), [(s("a"), s("x"))]).unwrap_err();
        assert_eq!(err, WitnessError::NotTotal(s("b")));
    }

    fn two_suit_long() -> Layout {
        // rack1 = (xh, xs), rack2 = (ys, zh), deck = {yh, zs}
        let a = strings(&["1", "2"]);
        let b = strings(&["x", "y", "z"]);
        let f = Witness::new(
            product(2, &a),
            product(2, &b),
            [
                ((0, s("1")), (1, s("x"))),
                ((1, s("1")), (0, s("x"))),
                ((0, s("2")), (0, s("y"))),
                ((1, s("2")), (1, s("z"))),
            ],
        )
        .unwrap();
        layout_from_injection(2, &a, &b, &f, Mode::Long).unwrap()
    }

    #[test]
    fn long_layout_from_small_injection() {
        let l = two_suit_long();
        assert_eq!(l.rack(0), &[Some(Card::new(1, 0)), Some(Card::new(0, 0))]);
        assert_eq!(l.rack(1), &[Some(Card::new(0, 1)), Some(Card::new(1, 2))]);
        assert_eq!(l.deck(), vec![Card::new(0, 2), Card::new(1, 1)]);
        l.check().unwrap();
    }

    #[test]
    fn one_suit_bijection_fills_each_rack() {
        let a = strings(&["p", "q", "r"]);
        let b = strings(&["u", "v", "w"]);
        let f = Witness::new(
            product(1, &a),
            product(1, &b),
            [((0, s("p")), (0, s("w"))), ((0, s("q")), (0, s("u"))), ((0, s("r")), (0, s("v")))],
        )
        .unwrap();
        let l = layout_from_injection(1, &a, &b, &f, Mode::Long).unwrap();
        let cards: BTreeSet<Card> = (0..3).map(|r| l.rack(r)[0].unwrap()).collect();
        assert_eq!(cards.len(), 3);
        assert!(l.deck().is_empty());
    }

    #[test]
    fn layout_rejects_non_injective_map() {
        let a = strings(&["1"]);
        let b = strings(&["x"]);
        let f = Witness::new(
            product(2, &a),
            product(2, &b),
            [((0, s("1")), (0, s("x"))), ((1, s("1")), (0, s("x")))],
        )
        .unwrap();
        assert!(matches!(
            layout_from_injection(2, &a, &b, &f, Mode::Long),
            Err(LayoutError::Witness(WitnessError::NotInjective(..)))
        ));
    }

    #[test]
    fn layout_rejects_wrong_shape() {
        let a = strings(&["1"]);
        let b = strings(&["x"]);
        let f = Witness::new(product(1, &a), product(1, &b), [((0, s("1")), (0, s("x")))]).unwrap();
        assert!(matches!(
            layout_from_injection(2, &a, &b, &f, Mode::Long),
            Err(LayoutError::Witness(WitnessError::Shape(_)))
        ));
    }

    #[test]
    fn empty_swap_set_is_identity() {
        let l = two_suit_long();
        assert_eq!(l.apply_swaps(&[]).unwrap(), l);
    }

    #[test]
    fn swap_with_deck_exchanges_by_identity() {
        let l = two_suit_long();
        let zs = Card::new(0, 2);
        let next = l
            .apply_swaps(&[Swap(Location::Spot(Spot::new(1, 1)), Location::Deck(zs))])
            .unwrap();
        assert_eq!(next.card_at(Spot::new(1, 1)), Some(zs));
        assert_eq!(next.spot_of(Card::new(1, 2)), None);
    }

    #[test]
    fn overlapping_swaps_conflict() {
        let l = two_suit_long();
        let (p, q, r) = (Spot::new(0, 0), Spot::new(0, 1), Spot::new(1, 0));
        let err = l.apply_swaps(&[Swap::spots(p, q), Swap::spots(q, r)]).unwrap_err();
        assert_eq!(err, LayoutError::Conflict(Location::Spot(q)));
    }

    #[test]
    fn short_mode_requires_all_cards_dealt() {
        let err = Layout::new(1, vec![s("x")], vec![s("1"), s("2")], Mode::Short, [(Spot::new(0, 0), Card::new(0, 0))])
            .unwrap_err();
        assert_eq!(err, LayoutError::UndealtCard(Card::new(0, 1)));
    }
}
