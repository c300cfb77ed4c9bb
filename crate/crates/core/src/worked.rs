//! The forty-card worked deal: four suits, ten racks, ten ranks, every card
//! dealt. Its first Shipshaping pass is the shipped golden trace.

use crate::model::{Card, Layout, Mode, Spot, Witness};

/// Rank display order.
pub const RANKS: [&str; 10] = ["4", "5", "6", "8", "9", "T", "J", "Q", "K", "A"];

const SUITS: [char; 4] = ['s', 'h', 'g', 'c'];

/// Starting deal, one string per slot row, columns are racks 1..=10.
const START: [&str; 4] = [
    "4g 6h Qg 8g 9h Qs 4c Ag 6c 4s",
    "Jh Ah 9c 8h As Tc Tg 5h Qc Js",
    "Kc 6s 4h 6g Ts 9s Jc Kg 8s 8c",
    "5c 5g Ks 5s Th Jg Ac Qh 9g Kh",
];

/// The golden rendering of the first pass.
pub const GOLDEN_TRACE: &str = include_str!("../golden/section1.trace");

pub fn rank_index(rank: &str) -> usize {
    RANKS.iter().position(|r| *r == rank).expect("known rank")
}

pub fn racks() -> Vec<String> {
    (1..=10).map(|r| r.to_string()).collect()
}

pub fn ranks() -> Vec<String> {
    RANKS.iter().map(|r| r.to_string()).collect()
}

fn parse(card: &str) -> Card {
    let mut chars = card.chars();
    let rank = chars.next().expect("rank").to_string();
    let suit = chars.next().expect("suit");
    Card::new(SUITS.iter().position(|s| *s == suit).expect("suit letter"), rank_index(&rank))
}

fn placements() -> Vec<(Spot, Card)> {
    START
        .iter()
        .enumerate()
        .flat_map(|(slot, row)| {
            row.split_whitespace()
                .enumerate()
                .map(move |(rack, card)| (Spot::new(rack, slot), parse(card)))
        })
        .collect()
}

pub fn forty_card_deal() -> Layout {
    Layout::new(4, racks(), ranks(), Mode::Long, placements()).expect("valid deal")
}

/// The deal as a bijection `4 × racks → 4 × ranks`.
pub fn forty_card_witness() -> Witness<(usize, String), (usize, String)> {
    let racks = racks();
    let ranks = ranks();
    let pairs = placements()
        .into_iter()
        .map(|(spot, card)| ((spot.slot, racks[spot.rack].clone()), (card.suit, ranks[card.rank].clone())));
    Witness::new(
        crate::model::product(4, &racks),
        crate::model::product(4, &ranks),
        pairs,
    )
    .expect("total")
}
