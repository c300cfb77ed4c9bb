//! Chipshaping: Shipshaping with a poker chip standing in for each spade.
//!
//! Shape Up moves a chip together with the card beneath it. Ship Out moves
//! only the chip, onto the card the spade would have been swapped for. Trim
//! then pulls a chipped card that sits left of its suit's slot back to where
//! it belongs: the slot of its suit in the rack whose spades slot holds the
//! chip of the card's rank. The chip stays put and the card that was there
//! slides under it.
//!
//! Trim is repeated until it has nothing left to do, and the whole schedule
//! (Shape Up, Ship Out, Trim, Trim, ...) is repeated until nothing moves.
//! Chip ids are spade ranks, so a chip's home rank is its id.

use std::collections::HashMap;

use super::{RoundKind, RoundTrace, ShipshapeError};
use crate::model::{Card, Layout, Spot, Swap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChipMove {
    pub chip: usize,
    pub from: Spot,
    pub to: Spot,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChipStats {
    pub shape_up_moves: usize,
    pub ship_out_moves: usize,
    pub ship_out_rounds: usize,
    pub trim_swaps: usize,
    pub trim_rounds: usize,
    /// Most Trim rounds run back to back.
    pub longest_trim_streak: usize,
    /// Trims dropped because a higher-priority trim used the same spot.
    pub trim_conflicts: usize,
    /// Trims with no rack holding the needed chip in its spades slot.
    pub trim_skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChipState {
    positions: Vec<Spot>,
    occupied: HashMap<Spot, usize>,
    stats: ChipStats,
}

impl ChipState {
    /// Put a chip on every spade. All spades must be on the board.
    pub fn new(layout: &Layout) -> Result<Self, ShipshapeError> {
        let mut positions = Vec::with_capacity(layout.rank_count());
        for rank in 0..layout.rank_count() {
            let card = Card::new(0, rank);
            positions.push(layout.spot_of(card).ok_or(ShipshapeError::CardNotDealt(card))?);
        }
        let occupied = positions.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Ok(ChipState {
            positions,
            occupied,
            stats: ChipStats::default(),
        })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn position(&self, chip: usize) -> Spot {
        self.positions[chip]
    }

    pub fn home_rank(&self, chip: usize) -> usize {
        chip
    }

    pub fn chip_at(&self, spot: Spot) -> Option<usize> {
        self.occupied.get(&spot).copied()
    }

    pub fn stats(&self) -> &ChipStats {
        &self.stats
    }

    /// Rack of each chip sitting in a spades slot, indexed by rank.
    pub fn assignment(&self) -> Vec<Option<usize>> {
        self.positions
            .iter()
            .map(|s| (s.slot == 0).then_some(s.rack))
            .collect()
    }

    /// Chips in slots other than the spades slot.
    pub fn bad_chips(&self) -> usize {
        self.positions.iter().filter(|s| s.slot != 0).count()
    }

    fn apply(&mut self, moves: &[ChipMove]) -> Result<(), ShipshapeError> {
        for m in moves {
            self.occupied.remove(&m.from);
        }
        for m in moves {
            if self.occupied.insert(m.to, m.chip).is_some() {
                return Err(ShipshapeError::ChipCollision(m.to));
            }
            self.positions[m.chip] = m.to;
        }
        Ok(())
    }

    fn home_racks(&self, racks: usize) -> Vec<Option<usize>> {
        let mut home = vec![None; self.positions.len()];
        for r in 0..racks {
            if let Some(chip) = self.chip_at(Spot::new(r, 0)) {
                home[chip] = Some(r);
            }
        }
        home
    }
}

/// Trims selected for one round.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrimRound {
    pub swaps: Vec<Swap>,
    pub conflicts: usize,
    pub skipped: usize,
}

/// One Trim round. Candidates are taken leftmost rack first (then leftmost
/// slot); a candidate touching a spot already claimed this round is dropped
/// and counted as a conflict.
pub fn trim_round(layout: &Layout, chips: &ChipState) -> TrimRound {
    let home = chips.home_racks(layout.rack_count());
    let mut chipped: Vec<Spot> = chips.positions.clone();
    chipped.sort();
    let mut round = TrimRound::default();
    let mut claimed: Vec<Spot> = Vec::new();
    for at in chipped {
        let Some(card) = layout.card_at(at) else { continue };
        if at.slot >= card.suit {
            continue;
        }
        let Some(rack) = home[card.rank] else {
            round.skipped += 1;
            continue;
        };
        let target = Spot::new(rack, card.suit);
        if claimed.contains(&at) || claimed.contains(&target) {
            round.conflicts += 1;
            continue;
        }
        claimed.extend([at, target]);
        round.swaps.push(Swap::spots(at, target));
    }
    round
}

fn chip_shape_up(layout: &Layout, chips: &ChipState) -> (Vec<Swap>, Vec<ChipMove>) {
    let mut swaps = Vec::new();
    let mut moves = Vec::new();
    for r in 0..layout.rack_count() {
        let head = Spot::new(r, 0);
        if chips.chip_at(head).is_some() {
            continue;
        }
        let first_bad = (1..layout.suit_count()).find_map(|t| {
            let s = Spot::new(r, t);
            chips.chip_at(s).map(|chip| (s, chip))
        });
        if let Some((from, chip)) = first_bad {
            swaps.push(Swap::spots(head, from));
            moves.push(ChipMove { chip, from, to: head });
        }
    }
    (swaps, moves)
}

fn chip_ship_out(layout: &Layout, chips: &ChipState) -> Result<Vec<ChipMove>, ShipshapeError> {
    let mut moves = Vec::new();
    for r in 0..layout.rack_count() {
        for t in 1..layout.suit_count() {
            let from = Spot::new(r, t);
            let Some(chip) = chips.chip_at(from) else { continue };
            let good = chips
                .chip_at(Spot::new(r, 0))
                .ok_or(ShipshapeError::MissingGoodSpade { rack: r })?;
            let wanted = Card::new(t, chips.home_rank(good));
            let to = layout.spot_of(wanted).ok_or(ShipshapeError::CardNotDealt(wanted))?;
            if to == from {
                return Err(ShipshapeError::SelfTarget { chip, spot: from });
            }
            moves.push(ChipMove { chip, from, to });
        }
    }
    Ok(moves)
}

/// Run Chipshaping to its fixpoint on an all-dealt layout.
///
/// On return every chip sits in a spades slot, so the chips give an injection
/// from spade ranks to racks.
pub fn run_chipshape(layout: &Layout) -> Result<(Layout, ChipState, RoundTrace), ShipshapeError> {
    if let Some(card) = layout.deck().first() {
        return Err(ShipshapeError::CardNotDealt(*card));
    }
    let mut cur = layout.clone();
    let mut chips = ChipState::new(layout)?;
    let mut trace = RoundTrace::new(layout.clone());
    let budget = 3 * layout.suit_count() * layout.rank_count() + 1;
    let mut events = 0;
    loop {
        let (swaps, moves) = chip_shape_up(&cur, &chips);
        cur.apply_swaps_in_place(&swaps)?;
        chips.apply(&moves)?;
        chips.stats.shape_up_moves += moves.len();
        let mut busy = !moves.is_empty();
        events += moves.len();
        trace.record(RoundKind::ShapeUp, swaps, moves);

        let moves = chip_ship_out(&cur, &chips)?;
        chips.apply(&moves)?;
        if !moves.is_empty() {
            chips.stats.ship_out_rounds += 1;
            chips.stats.ship_out_moves += moves.len();
            busy = true;
        }
        events += moves.len();
        trace.record(RoundKind::ShipOut, Vec::new(), moves);

        let mut streak = 0;
        loop {
            let round = trim_round(&cur, &chips);
            chips.stats.trim_conflicts += round.conflicts;
            chips.stats.trim_skipped += round.skipped;
            if round.swaps.is_empty() {
                trace.record(RoundKind::Trim, Vec::new(), Vec::new());
                break;
            }
            streak += 1;
            if streak > chips.stats.ship_out_rounds {
                return Err(ShipshapeError::TrimBound {
                    trims: streak,
                    ship_out_rounds: chips.stats.ship_out_rounds,
                });
            }
            cur.apply_swaps_in_place(&round.swaps)?;
            chips.stats.trim_rounds += 1;
            chips.stats.trim_swaps += round.swaps.len();
            events += round.swaps.len();
            trace.record(RoundKind::Trim, round.swaps, Vec::new());
            busy = true;
        }
        chips.stats.longest_trim_streak = chips.stats.longest_trim_streak.max(streak);

        if events > budget {
            return Err(ShipshapeError::BudgetExceeded {
                swaps: events,
                rounds: trace.rounds_executed(),
                budget,
            });
        }
        if !busy {
            break;
        }
    }
    Ok((cur, chips, trace))
}

/// Cards chipped but not spades, i.e. chips still tracking a displaced spade.
pub fn chips_off_their_spades(layout: &Layout, chips: &ChipState) -> usize {
    (0..chips.len())
        .filter(|&c| layout.card_at(chips.position(c)) != Some(Card::new(0, c)))
        .count()
}
