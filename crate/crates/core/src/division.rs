//! Long Division, Short Division and pass scheduling.
//!
//! Long Division deals spots of `n × A` into cards of `n × B` and runs one
//! Shipshaping pass per step. After a pass the spades spots are ignored and
//! the rest of the board is an injection with fewer suits. When one suit is
//! left its map is the answer.
//!
//! A pass can also be run on a regrouped board: with `k | m`, the `m` suits are
//! bundled into `k` super-suits over `(m/k) × B`, and the pass removes a whole
//! bundle at once.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laws::{cb_combine, CbVariant};
use crate::model::{
    check_product_shape, layout_from_injection, require_bijection, require_injection, Card, Ident,
    InjectionWitness, Layout, LayoutError, Mode, Spot, Witness, WitnessError,
};
use crate::shipshape::{run_pass, RoundTrace, ShipOutPolicy, ShipshapeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisionError {
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Shipshape(#[from] ShipshapeError),
    #[error("schedule does not reduce {suits} suits to 1: {reason}")]
    Schedule { suits: usize, reason: String },
    #[error("{0} does not divide {1}")]
    NotDivisor(usize, usize),
    #[error("suit count must be at least 1")]
    NoSuits,
    #[error("a spade of rank {0} never reached a spades spot")]
    LostSpade(String),
    #[error(transparent)]
    Law(Box<crate::laws::LawError>),
}

/// Which regrouping factor each Long Division pass uses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Schedule {
    /// Remove one suit per pass.
    Naive,
    /// Halve the suit count when it is even, otherwise remove one suit.
    Halving,
    /// Use these factors in order. Each must divide the current suit count.
    Factors(Vec<usize>),
}

impl Schedule {
    /// The factor for each pass, starting from `n` suits.
    pub fn factors(&self, n: usize) -> Result<Vec<usize>, DivisionError> {
        if n == 0 {
            return Err(DivisionError::NoSuits);
        }
        let mut m = n;
        let mut out = Vec::new();
        match self {
            Schedule::Naive => out.extend((2..=n).rev()),
            Schedule::Halving => {
                while m > 1 {
                    let k = if m.is_multiple_of(2) { 2 } else { m };
                    out.push(k);
                    m = m / k * (k - 1);
                }
            }
            Schedule::Factors(ks) => {
                for &k in ks {
                    if k < 2 {
                        return Err(DivisionError::Schedule { suits: n, reason: format!("factor {k} is below 2") });
                    }
                    if !m.is_multiple_of(k) {
                        return Err(DivisionError::Schedule {
                            suits: n,
                            reason: format!("{k} does not divide {m}"),
                        });
                    }
                    out.push(k);
                    m = m / k * (k - 1);
                }
                if m != 1 {
                    return Err(DivisionError::Schedule { suits: n, reason: format!("stops at {m} suits") });
                }
            }
        }
        Ok(out)
    }
}

/// Outcome of Long Division.
#[derive(Clone, Debug)]
pub struct DivisionReport<A, B> {
    pub passes: usize,
    pub total_swaps: usize,
    pub per_pass: Vec<usize>,
    pub result: InjectionWitness<A, B>,
    /// Trace of the first pass, if any pass ran.
    pub first_pass: Option<RoundTrace>,
}

/// JSON form of a [`DivisionReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub passes: usize,
    pub total_swaps: usize,
    pub per_pass: Vec<usize>,
    pub result: Vec<(String, String)>,
}

impl<A: Ident, B: Ident> DivisionReport<A, B> {
    pub fn to_doc(&self) -> ReportDoc {
        ReportDoc {
            passes: self.passes,
            total_swaps: self.total_swaps,
            per_pass: self.per_pass.clone(),
            result: self.result.pairs().map(|(a, b)| (a.label(), b.label())).collect(),
        }
    }
}

/// Index form of a Long board: `cells[slot * racks + rack]` is the card
/// `suit * ranks + rank` in that spot.
#[derive(Clone, Debug)]
struct Board {
    suits: usize,
    rack_labels: Vec<String>,
    rank_labels: Vec<String>,
    cells: Vec<usize>,
}

impl Board {
    fn racks(&self) -> usize {
        self.rack_labels.len()
    }

    fn ranks(&self) -> usize {
        self.rank_labels.len()
    }

    fn from_layout(layout: &Layout) -> Board {
        let racks = layout.rack_count();
        let ranks = layout.rank_count();
        let mut cells = vec![0; layout.suit_count() * racks];
        for rack in 0..racks {
            for (slot, card) in layout.rack(rack).iter().enumerate() {
                let c = card.expect("long layouts fill every spot");
                cells[slot * racks + rack] = c.suit * ranks + c.rank;
            }
        }
        Board {
            suits: layout.suit_count(),
            rack_labels: layout.racks().to_vec(),
            rank_labels: layout.ranks().to_vec(),
            cells,
        }
    }

    /// The board with the `m` suits bundled into `k` super-suits.
    fn grouped(&self, k: usize) -> Result<Layout, LayoutError> {
        let g = self.suits / k;
        let (racks, ranks) = (self.racks(), self.ranks());
        let bundle = |labels: &[String]| -> Vec<String> {
            if g == 1 {
                labels.to_vec()
            } else {
                (0..g).flat_map(|i| labels.iter().map(move |l| format!("{i}.{l}"))).collect()
            }
        };
        let mut placements = Vec::with_capacity(self.cells.len());
        for s in 0..self.suits {
            let (j, i) = (s / g, s % g);
            for a in 0..racks {
                let c = self.cells[s * racks + a];
                let (t, r) = (c / ranks, c % ranks);
                placements.push((Spot::new(i * racks + a, j), Card::new(t / g, (t % g) * ranks + r)));
            }
        }
        Layout::new(k, bundle(&self.rack_labels), bundle(&self.rank_labels), Mode::Long, placements)
    }

    /// Drop the spades slots and suit of a grouped board and unbundle.
    fn reflatten(&self, k: usize, after: &Layout) -> Board {
        let g = self.suits / k;
        let (racks, ranks) = (self.racks(), self.ranks());
        let suits = (k - 1) * g;
        let mut cells = vec![0; suits * racks];
        for j in 1..k {
            for i in 0..g {
                for a in 0..racks {
                    let c = after.card_at(Spot::new(i * racks + a, j)).expect("long layouts fill every spot");
                    debug_assert!(c.suit >= 1, "a spade right of the spades spot survived a pass");
                    let suit = (c.suit - 1) * g + c.rank / ranks;
                    cells[((j - 1) * g + i) * racks + a] = suit * ranks + c.rank % ranks;
                }
            }
        }
        Board { suits, rack_labels: self.rack_labels.clone(), rank_labels: self.rank_labels.clone(), cells }
    }
}

/// One Shipshaping pass on the `k`-grouped form of a Long layout, returning
/// the layout with `m(k−1)/k` suits that remains and the pass trace.
pub fn reduce_pass_grouped(
    layout: &Layout,
    k: usize,
    policy: ShipOutPolicy,
) -> Result<(Layout, RoundTrace), DivisionError> {
    let m = layout.suit_count();
    if layout.mode() != Mode::Long {
        return Err(LayoutError::WrongMode(Mode::Long).into());
    }
    if k < 2 || !m.is_multiple_of(k) {
        return Err(DivisionError::NotDivisor(k, m));
    }
    let board = Board::from_layout(layout);
    let (next, trace) = grouped_pass(&board, k, policy)?;
    Ok((to_layout(&next)?, trace))
}

fn grouped_pass(board: &Board, k: usize, policy: ShipOutPolicy) -> Result<(Board, RoundTrace), DivisionError> {
    let grouped = board.grouped(k)?;
    let (after, trace) = run_pass(&grouped, policy)?;
    Ok((board.reflatten(k, &after), trace))
}

fn to_layout(board: &Board) -> Result<Layout, LayoutError> {
    let (racks, ranks) = (board.racks(), board.ranks());
    let placements = board
        .cells
        .iter()
        .enumerate()
        .map(|(i, &c)| (Spot::new(i % racks, i / racks), Card::new(c / ranks, c % ranks)));
    Layout::new(board.suits, board.rack_labels.clone(), board.rank_labels.clone(), Mode::Long, placements)
}

/// Long Division of an injection `n×A → n×B` down to `A → B`.
pub fn long_divide<A: Ident, B: Ident>(
    n: usize,
    a: &[A],
    b: &[B],
    f: &InjectionWitness<(usize, A), (usize, B)>,
    schedule: &Schedule,
    policy: ShipOutPolicy,
) -> Result<DivisionReport<A, B>, DivisionError> {
    let factors = schedule.factors(n)?;
    let layout = layout_from_injection(n, a, b, f, Mode::Long)?;
    let mut board = Board::from_layout(&layout);
    let mut per_pass = Vec::with_capacity(factors.len());
    let mut first_pass = None;
    for k in factors {
        let (next, trace) = grouped_pass(&board, k, policy)?;
        per_pass.push(trace.total_swaps());
        first_pass.get_or_insert(trace);
        board = next;
    }
    debug_assert_eq!(board.suits, 1);
    let ranks = board.ranks();
    let result = Witness::new(
        a.to_vec(),
        b.to_vec(),
        a.iter().enumerate().map(|(i, x)| (x.clone(), b[board.cells[i] % ranks].clone())),
    )?
    .with_provenance(format!("long_divide(n={n}, {schedule:?}, {policy:?})"));
    require_injection(&result)?;
    Ok(DivisionReport { passes: per_pass.len(), total_swaps: per_pass.iter().sum(), per_pass, result, first_pass })
}

/// Outcome of Short Division.
#[derive(Clone, Debug)]
pub struct ShortDivisionOutcome<A, B> {
    /// Each rank's spade sits good in exactly one rack.
    pub result: InjectionWitness<A, B>,
    /// Racks that end with a good spade, in rack order.
    pub good_set: Vec<B>,
    /// Ranks whose spade never settled. Always empty for finite input.
    pub bad_ranks: Vec<A>,
    pub swaps: usize,
    pub rounds: usize,
    pub trace: RoundTrace,
}

/// Short Division: deal the cards of `n × A` into racks `B` and run one pass.
pub fn short_divide<A: Ident, B: Ident>(
    n: usize,
    a: &[A],
    b: &[B],
    f: &InjectionWitness<(usize, A), (usize, B)>,
) -> Result<ShortDivisionOutcome<A, B>, DivisionError> {
    let layout = layout_from_injection(n, a, b, f, Mode::Short)?;
    let (end, trace) = run_pass(&layout, ShipOutPolicy::AllBad)?;
    let mut pairs = Vec::with_capacity(a.len());
    for (rank, x) in a.iter().enumerate() {
        match end.spot_of(Card::new(0, rank)) {
            Some(Spot { rack, slot: 0 }) => pairs.push((x.clone(), b[rack].clone())),
            _ => return Err(DivisionError::LostSpade(x.label())),
        }
    }
    let good_set = (0..b.len())
        .filter(|&r| end.rack(r)[0].is_some_and(|c| c.suit == 0))
        .map(|r| b[r].clone())
        .collect();
    let result = Witness::new(a.to_vec(), b.to_vec(), pairs)?.with_provenance(format!("short_divide(n={n})"));
    require_injection(&result)?;
    Ok(ShortDivisionOutcome {
        result,
        good_set,
        bad_ranks: Vec::new(),
        swaps: trace.total_swaps(),
        rounds: trace.rounds_executed(),
        trace,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Long,
    #[default]
    Short,
}

/// Any injection `A → B` obtained by dividing `f`.
pub fn divide<A: Ident, B: Ident>(
    n: usize,
    a: &[A],
    b: &[B],
    f: &InjectionWitness<(usize, A), (usize, B)>,
    method: Method,
) -> Result<InjectionWitness<A, B>, DivisionError> {
    match method {
        Method::Long => Ok(long_divide(n, a, b, f, &Schedule::Halving, ShipOutPolicy::AllBad)?.result),
        Method::Short => Ok(short_divide(n, a, b, f)?.result),
    }
}

/// Divide a bijection `n×A ↔ n×B` into a bijection `A ↔ B` by dividing both
/// directions and combining the two injections.
pub fn divide_bijection<A: Ident, B: Ident>(
    n: usize,
    a: &[A],
    b: &[B],
    f: &Witness<(usize, A), (usize, B)>,
    method: Method,
) -> Result<Witness<A, B>, DivisionError> {
    check_product_shape(n, a, f.domain(), "domain")?;
    check_product_shape(n, b, f.codomain(), "codomain")?;
    require_bijection(f)?;
    let forward = divide(n, a, b, f, method)?;
    let backward = divide(n, b, a, &f.inverse()?, method)?;
    let combined =
        cb_combine(&forward, &backward, CbVariant::GiveForward).map_err(|e| DivisionError::Law(Box::new(e)))?;
    Ok(combined.with_provenance(format!("divide_bijection(n={n}, {method:?})")))
}
