//! The lockstep Shape Up / Ship Out engine.
//!
//! Every round computes its swaps from the pre-round state only and applies
//! them all at once; [`Layout::apply_swaps`] rejects any overlap, so the
//! simultaneity of a round is checked rather than assumed.
//!
//! Suit 0 is the active suit ("spades"). A spade is good when it sits in
//! slot 0 of its rack and bad anywhere else.

mod chips;
mod render;

pub use chips::{chips_off_their_spades, run_chipshape, trim_round, ChipMove, ChipState, ChipStats, TrimRound};
pub use render::{render_trace, render_trace_wide, RenderError};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Card, Layout, LayoutError, Location, Spot, Swap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RoundKind {
    ShapeUp,
    ShipOut,
    Trim,
}

impl RoundKind {
    pub fn label(self) -> &'static str {
        match self {
            RoundKind::ShapeUp => "Shape up",
            RoundKind::ShipOut => "Ship out",
            RoundKind::Trim => "Trim",
        }
    }
}

/// Which bad spades of a rack are shipped out in one round.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShipOutPolicy {
    #[default]
    AllBad,
    LeftmostOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShipshapeError {
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error("rack {rack} has a bad spade but no good spade to ship it against")]
    MissingGoodSpade { rack: usize },
    #[error("card {0:?} must be on the board")]
    CardNotDealt(Card),
    #[error("swap budget exceeded: {swaps} swaps after {rounds} rounds, budget {budget}")]
    BudgetExceeded { swaps: usize, rounds: usize, budget: usize },
    #[error("two chips would share spot {0:?}")]
    ChipCollision(Spot),
    #[error("chip {chip} would be shipped onto its own spot {spot:?}")]
    SelfTarget { chip: usize, spot: Spot },
    #[error("{trims} consecutive trim rounds after only {ship_out_rounds} ship-out rounds")]
    TrimBound { trims: usize, ship_out_rounds: usize },
}

/// One state-changing round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub kind: RoundKind,
    /// Card swaps, applied simultaneously.
    pub swaps: Vec<Swap>,
    /// Chip movements (Chipshaping only).
    pub chip_moves: Vec<ChipMove>,
}

/// Ordered record of the rounds of a run.
///
/// Only the starting layout is stored; later states are replayed from the
/// swaps, so each state is by construction its predecessor with that entry's
/// swaps applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrace {
    start: Layout,
    entries: Vec<TraceEntry>,
    rounds_executed: usize,
}

impl RoundTrace {
    pub fn new(start: Layout) -> Self {
        RoundTrace {
            start,
            entries: Vec::new(),
            rounds_executed: 0,
        }
    }

    fn record(&mut self, kind: RoundKind, swaps: Vec<Swap>, chip_moves: Vec<ChipMove>) {
        self.rounds_executed += 1;
        if !swaps.is_empty() || !chip_moves.is_empty() {
            self.entries.push(TraceEntry {
                kind,
                swaps,
                chip_moves,
            });
        }
    }

    pub fn start(&self) -> &Layout {
        &self.start
    }

    pub fn entries(&self) -> &[TraceEntry] {
        &self.entries
    }

    /// Rounds run, including the no-op rounds left out of `entries`.
    pub fn rounds_executed(&self) -> usize {
        self.rounds_executed
    }

    pub fn skipped_rounds(&self) -> usize {
        self.rounds_executed - self.entries.len()
    }

    pub fn swap_counts(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.swaps.len()).collect()
    }

    pub fn total_swaps(&self) -> usize {
        self.entries.iter().map(|e| e.swaps.len()).sum()
    }

    /// The state after each entry, in order.
    pub fn states(&self) -> Result<Vec<Layout>, LayoutError> {
        let mut cur = self.start.clone();
        let mut out = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            cur = cur.apply_swaps(&e.swaps)?;
            out.push(cur.clone());
        }
        Ok(out)
    }
}

fn is_spade(card: Option<Card>) -> bool {
    matches!(card, Some(c) if c.suit == 0)
}

/// Spades outside slot 0 of `rack`, left to right.
fn bad_spades(layout: &Layout, rack: usize) -> impl Iterator<Item = usize> + '_ {
    layout
        .rack(rack)
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| is_spade(**c))
        .map(|(slot, _)| slot)
}

/// Shape Up: in each rack with a bad spade and no good spade, swap the
/// leftmost bad spade into slot 0. An empty slot 0 turns the swap into a move.
pub fn shape_up_round(layout: &Layout) -> Vec<Swap> {
    (0..layout.rack_count())
        .filter(|&r| !is_spade(layout.card_at(Spot::new(r, 0))))
        .filter_map(|r| {
            bad_spades(layout, r)
                .next()
                .map(|t| Swap::spots(Spot::new(r, 0), Spot::new(r, t)))
        })
        .collect()
}

/// Ship Out: swap each selected bad spade for the card whose rank is that of
/// the good spade in its rack and whose suit is that of the bad spade's slot.
///
/// The first location of every returned swap is the bad spade's spot.
pub fn ship_out_round(layout: &Layout, policy: ShipOutPolicy) -> Result<Vec<Swap>, ShipshapeError> {
    let mut swaps = Vec::new();
    for r in 0..layout.rack_count() {
        let mut bad = bad_spades(layout, r).peekable();
        if bad.peek().is_none() {
            continue;
        }
        let good_rank = match layout.card_at(Spot::new(r, 0)) {
            Some(c) if c.suit == 0 => c.rank,
            _ => return Err(ShipshapeError::MissingGoodSpade { rack: r }),
        };
        let take = match policy {
            ShipOutPolicy::AllBad => usize::MAX,
            ShipOutPolicy::LeftmostOnly => 1,
        };
        for t in bad.take(take) {
            let target = layout.location_of(Card::new(t, good_rank));
            swaps.push(Swap(Location::Spot(Spot::new(r, t)), target));
        }
    }
    Ok(swaps)
}

/// Bad spades on the board. Zero is the fixpoint of a pass.
pub fn count_bad_spades(layout: &Layout) -> usize {
    (0..layout.rack_count()).map(|r| bad_spades(layout, r).count()).sum()
}

/// Alternate Shape Up and Ship Out until neither changes anything.
///
/// Rounds that perform no swaps still run but are not recorded in the trace.
/// The total number of swaps can never exceed `n·|A|`; going past it aborts
/// with [`ShipshapeError::BudgetExceeded`].
pub fn run_pass(layout: &Layout, policy: ShipOutPolicy) -> Result<(Layout, RoundTrace), ShipshapeError> {
    let budget = layout.suit_count() * layout.active_count();
    let mut cur = layout.clone();
    let mut trace = RoundTrace::new(layout.clone());
    let mut total = 0;
    loop {
        let shape = shape_up_round(&cur);
        cur.apply_swaps_in_place(&shape)?;
        let ship = ship_out_round(&cur, policy)?;
        cur.apply_swaps_in_place(&ship)?;
        let quiet = shape.is_empty() && ship.is_empty();
        total += shape.len() + ship.len();
        trace.record(RoundKind::ShapeUp, shape, Vec::new());
        trace.record(RoundKind::ShipOut, ship, Vec::new());
        if total > budget {
            return Err(ShipshapeError::BudgetExceeded {
                swaps: total,
                rounds: trace.rounds_executed(),
                budget,
            });
        }
        if quiet {
            break;
        }
    }
    debug_assert_eq!(count_bad_spades(&cur), 0);
    Ok((cur, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Mode;
    use crate::worked;

    fn c(suit: usize, rank: usize) -> Option<Card> {
        Some(Card::new(suit, rank))
    }

    #[test]
    fn shape_up_moves_leftmost_bad_spade() {
        let start = worked::forty_card_deal();
        let swaps = shape_up_round(&start);
        // Column 2 (6h, Ah, 6s, 5g) swaps its gems slot into the spades slot.
        assert!(swaps.contains(&Swap::spots(Spot::new(1, 0), Spot::new(1, 2))));
        let next = start.apply_swaps(&swaps).unwrap();
        let labels: Vec<String> = next.rack(1).iter().map(|c| next.card_label(c.unwrap())).collect();
        assert_eq!(labels, ["6s", "Ah", "6h", "5g"]);
    }

    #[test]
    fn shape_up_skips_racks_with_a_good_spade() {
        // rack 0: (0s, 1s), rack 1: (0h, 1h)
        let l = Layout::new(
            2,
            vec!["a".into(), "b".into()],
            vec!["0".into(), "1".into()],
            Mode::Long,
            [
                (Spot::new(0, 0), Card::new(0, 0)),
                (Spot::new(0, 1), Card::new(0, 1)),
                (Spot::new(1, 0), Card::new(1, 0)),
                (Spot::new(1, 1), Card::new(1, 1)),
            ],
        )
        .unwrap();
        assert!(shape_up_round(&l).is_empty());
    }

    #[test]
    fn short_mode_shape_up_moves_into_empty_slot() {
        // A single rack (∅, 1s): the spade simply moves over.
        let l = Layout::new(
            2,
            vec!["x".into(), "y".into()],
            vec!["1".into()],
            Mode::Short,
            [(Spot::new(0, 1), Card::new(0, 0)), (Spot::new(1, 0), Card::new(1, 0))],
        )
        .unwrap();
        let swaps = shape_up_round(&l);
        let next = l.apply_swaps(&swaps).unwrap();
        assert_eq!(next.rack(0), &[c(0, 0), None]);
    }

    #[test]
    fn ship_out_targets_card_of_good_rank_and_slot_suit() {
        let start = worked::forty_card_deal();
        let shaped = start.apply_swaps(&shape_up_round(&start)).unwrap();
        let swaps = ship_out_round(&shaped, ShipOutPolicy::AllBad).unwrap();
        // Rack 10: 4s good, Js in the hearts slot -> swap with 4h.
        let four_h = Card::new(1, worked::rank_index("4"));
        let js_spot = Location::Spot(Spot::new(9, 1));
        let swap = swaps.iter().find(|s| s.0 == js_spot).unwrap();
        assert_eq!(swap.1, shaped.location_of(four_h));
        assert_eq!(swaps.len(), 3);
    }

    #[test]
    fn ship_out_takes_the_good_rank_not_the_bad_one() {
        // Queen of spades good, jack of spades in the hearts slot: the jack is
        // swapped for the queen of hearts, not the jack of hearts.
        let ranks: Vec<String> = ["J", "Q"].iter().map(|s| s.to_string()).collect();
        let (j, q) = (0, 1);
        let l = Layout::new(
            2,
            vec!["r".into(), "t".into()],
            ranks,
            Mode::Long,
            [
                (Spot::new(0, 0), Card::new(0, q)),
                (Spot::new(0, 1), Card::new(0, j)),
                (Spot::new(1, 0), Card::new(1, j)),
                (Spot::new(1, 1), Card::new(1, q)),
            ],
        )
        .unwrap();
        let swaps = ship_out_round(&l, ShipOutPolicy::AllBad).unwrap();
        assert_eq!(swaps, vec![Swap::spots(Spot::new(0, 1), Spot::new(1, 1))]);
    }

    #[test]
    fn ship_out_without_good_spade_is_a_contract_violation() {
        let start = worked::forty_card_deal();
        assert!(matches!(
            ship_out_round(&start, ShipOutPolicy::AllBad),
            Err(ShipshapeError::MissingGoodSpade { .. })
        ));
    }

    #[test]
    fn no_bad_spades_means_no_ship_out() {
        let done = run_pass(&worked::forty_card_deal(), ShipOutPolicy::AllBad).unwrap().0;
        assert!(ship_out_round(&done, ShipOutPolicy::AllBad).unwrap().is_empty());
        assert!(shape_up_round(&done).is_empty());
    }

    #[test]
    fn worked_deal_round_labels() {
        let (_, trace) = run_pass(&worked::forty_card_deal(), ShipOutPolicy::AllBad).unwrap();
        let kinds: Vec<RoundKind> = trace.entries().iter().map(|e| e.kind).collect();
        use RoundKind::*;
        assert_eq!(kinds, [ShapeUp, ShipOut, ShipOut, ShapeUp, ShipOut, ShapeUp]);
        assert!(trace.skipped_rounds() > 0);
    }

    #[test]
    fn already_good_layout_records_nothing() {
        let done = run_pass(&worked::forty_card_deal(), ShipOutPolicy::AllBad).unwrap().0;
        let (again, trace) = run_pass(&done, ShipOutPolicy::AllBad).unwrap();
        assert!(trace.entries().is_empty());
        assert_eq!(again, done);
    }

    #[test]
    fn two_suit_pass() {
        // rack1 = (xh, xs), rack2 = (ys, zh): one Shape Up swap.
        let l = Layout::new(
            2,
            vec!["1".into(), "2".into()],
            vec!["x".into(), "y".into(), "z".into()],
            Mode::Long,
            [
                (Spot::new(0, 0), Card::new(1, 0)),
                (Spot::new(0, 1), Card::new(0, 0)),
                (Spot::new(1, 0), Card::new(0, 1)),
                (Spot::new(1, 1), Card::new(1, 2)),
            ],
        )
        .unwrap();
        let (done, trace) = run_pass(&l, ShipOutPolicy::AllBad).unwrap();
        assert_eq!(trace.swap_counts(), vec![1]);
        assert_eq!(done.rack(0), &[c(0, 0), c(1, 0)]);
        assert_eq!(done.rack(1), &[c(0, 1), c(1, 2)]);
    }
}
