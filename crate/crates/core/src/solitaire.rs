//! Pan Galactic Solitaire.
//!
//! The 52 cards are dealt into four rows of thirteen. Row `i` is the spot for
//! suit `i` (spades, hearts, diamonds, clubs). A card of suit `X` sitting in
//! row `Y ≠ X` of a column may move when row `X` of that column already holds
//! a suit-`X` card, of rank `r` say; it swaps with the card of suit `Y` and
//! rank `r`, wherever that card is. The game is won when every column holds
//! four cards of one rank, each in its own suit row.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::SimRng;

pub const ROWS: usize = 4;
pub const COLS: usize = 13;
pub const DEFAULT_CAP: u32 = 2_000;

/// A playing card. `rank` runs 1..=13 in serialized form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "CardDoc", into = "CardDoc")]
pub struct PlayingCard {
    suit: u8,
    rank: u8,
}

#[derive(Serialize, Deserialize)]
struct CardDoc {
    suit: u8,
    rank: u8,
}

impl TryFrom<CardDoc> for PlayingCard {
    type Error = String;

    fn try_from(d: CardDoc) -> Result<Self, String> {
        if (d.suit as usize) < ROWS && (1..=COLS as u8).contains(&d.rank) {
            Ok(PlayingCard { suit: d.suit, rank: d.rank - 1 })
        } else {
            Err(format!("no card with suit {} and rank {}", d.suit, d.rank))
        }
    }
}

impl From<PlayingCard> for CardDoc {
    fn from(c: PlayingCard) -> Self {
        CardDoc { suit: c.suit, rank: c.rank + 1 }
    }
}

impl PlayingCard {
    /// `suit` in 0..4, `rank` in 0..13.
    pub fn new(suit: usize, rank: usize) -> Self {
        assert!(suit < ROWS && rank < COLS, "card out of range");
        PlayingCard { suit: suit as u8, rank: rank as u8 }
    }

    pub fn suit(self) -> usize {
        self.suit as usize
    }

    /// Zero-based rank.
    pub fn rank(self) -> usize {
        self.rank as usize
    }

    fn index(self) -> usize {
        self.suit() * COLS + self.rank()
    }
}

impl fmt::Display for PlayingCard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const RANKS: &[u8; 13] = b"A23456789TJQK";
        const SUITS: &[u8; 4] = b"shdc";
        write!(f, "{}{}", RANKS[self.rank()] as char, SUITS[self.suit()] as char)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

/// The card at `from` swaps with the card at `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub from: Cell,
    pub to: Cell,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Active,
    Won,
    Stuck,
    Capped,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("grid is not a permutation of the deck: {0}")]
    BadGrid(String),
    #[error("need at least one trial")]
    NoTrials,
    #[error("move cap must be at least 1")]
    ZeroCap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    grid: [[PlayingCard; COLS]; ROWS],
    pos: [Cell; ROWS * COLS],
    move_count: u32,
    status: Status,
    cap: Option<u32>,
}

impl GameState {
    /// Shuffle with the seeded generator and deal row by row.
    pub fn deal(seed: u64) -> Self {
        Self::deal_with(&mut SimRng::new(seed))
    }

    /// Deal from an existing stream, leaving it positioned after the shuffle.
    pub fn deal_with(rng: &mut SimRng) -> Self {
        let mut deck: Vec<PlayingCard> =
            (0..ROWS).flat_map(|s| (0..COLS).map(move |r| PlayingCard::new(s, r))).collect();
        rng.shuffle(&mut deck);
        let mut grid = [[PlayingCard::new(0, 0); COLS]; ROWS];
        for (i, c) in deck.into_iter().enumerate() {
            grid[i / COLS][i % COLS] = c;
        }
        Self::from_grid(grid).expect("a shuffled deck is a permutation")
    }

    /// Every column already fixed: column `c` holds rank `c` in all suits.
    pub fn solved() -> Self {
        let grid = std::array::from_fn(|s| std::array::from_fn(|c| PlayingCard::new(s, c)));
        Self::from_grid(grid).expect("valid")
    }

    pub fn from_grid(grid: [[PlayingCard; COLS]; ROWS]) -> Result<Self, GameError> {
        let mut pos = [None; ROWS * COLS];
        for (row, cards) in grid.iter().enumerate() {
            for (col, &card) in cards.iter().enumerate() {
                if pos[card.index()].replace(Cell::new(row, col)).is_some() {
                    return Err(GameError::BadGrid(format!("{card} appears twice")));
                }
            }
        }
        let pos = pos.map(|p| p.expect("52 distinct cards cover the deck"));
        let mut state = GameState { grid, pos, move_count: 0, status: Status::Active, cap: None };
        state.refresh();
        Ok(state)
    }

    /// Rebuild a state from stored parts.
    pub fn restore(
        grid: [[PlayingCard; COLS]; ROWS],
        move_count: u32,
        cap: Option<u32>,
    ) -> Result<Self, GameError> {
        let mut state = Self::from_grid(grid)?;
        state.move_count = move_count;
        state.cap = cap;
        state.refresh();
        Ok(state)
    }

    /// Stop the game once `cap` moves have been made.
    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = Some(cap);
        self.refresh();
        self
    }

    pub fn grid(&self) -> &[[PlayingCard; COLS]; ROWS] {
        &self.grid
    }

    pub fn card(&self, cell: Cell) -> PlayingCard {
        self.grid[cell.row][cell.col]
    }

    pub fn find(&self, card: PlayingCard) -> Cell {
        self.pos[card.index()]
    }

    pub fn move_count(&self) -> u32 {
        self.move_count
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    pub fn is_won(&self) -> bool {
        (0..COLS).all(|c| {
            let rank = self.grid[0][c].rank;
            (0..ROWS).all(|s| self.grid[s][c] == PlayingCard { suit: s as u8, rank })
        })
    }

    /// The move for the card at `from`, if it may move.
    pub fn move_from(&self, from: Cell) -> Option<Move> {
        if from.row >= ROWS || from.col >= COLS {
            return None;
        }
        let mover = self.card(from);
        let x = mover.suit();
        if x == from.row {
            return None;
        }
        let anchor = self.grid[x][from.col];
        (anchor.suit() == x).then(|| Move { from, to: self.find(PlayingCard::new(from.row, anchor.rank())) })
    }

    /// All legal moves, scanning sources row by row.
    pub fn legal_moves(&self) -> Vec<Move> {
        let mut out = Vec::new();
        self.collect_moves(&mut out);
        out
    }

    fn collect_moves(&self, out: &mut Vec<Move>) {
        for row in 0..ROWS {
            for col in 0..COLS {
                out.extend(self.move_from(Cell::new(row, col)));
            }
        }
    }

    pub fn legal_move_count(&self) -> usize {
        (0..COLS).map(|col| (0..ROWS).filter(|&row| self.move_from(Cell::new(row, col)).is_some()).count()).sum()
    }

    pub fn is_legal(&self, mv: Move) -> bool {
        self.status == Status::Active && self.move_from(mv.from) == Some(mv)
    }

    pub fn apply_move(&mut self, mv: Move) -> Result<(), GameError> {
        if self.status != Status::Active {
            return Err(GameError::IllegalMove(format!("game is {:?}", self.status)));
        }
        match self.move_from(mv.from) {
            Some(m) if m == mv => {}
            Some(m) => {
                return Err(GameError::IllegalMove(format!(
                    "{} at ({}, {}) goes to {}, not ({}, {})",
                    self.card(mv.from),
                    mv.from.row,
                    mv.from.col,
                    self.card(m.to),
                    mv.to.row,
                    mv.to.col
                )))
            }
            None => return Err(GameError::IllegalMove(format!("no move from ({}, {})", mv.from.row, mv.from.col))),
        }
        let (a, b) = (self.card(mv.from), self.card(mv.to));
        self.grid[mv.from.row][mv.from.col] = b;
        self.grid[mv.to.row][mv.to.col] = a;
        self.pos[a.index()] = mv.to;
        self.pos[b.index()] = mv.from;
        self.move_count += 1;
        self.refresh();
        Ok(())
    }

    fn refresh(&mut self) {
        self.status = if self.is_won() {
            Status::Won
        } else if self.legal_move_count() == 0 {
            Status::Stuck
        } else if self.cap.is_some_and(|cap| self.move_count >= cap) {
            Status::Capped
        } else {
            Status::Active
        };
    }

    /// FNV-1a over the cards in row-major order.
    pub fn grid_hash(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for card in self.grid.iter().flatten() {
            h ^= card.index() as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        h
    }
}

impl fmt::Display for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.grid {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The state as served to clients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateView {
    pub grid: Vec<Vec<PlayingCard>>,
    pub move_count: u32,
    pub status: Status,
    pub legal_move_count: usize,
}

impl From<&GameState> for StateView {
    fn from(s: &GameState) -> Self {
        StateView {
            grid: s.grid.iter().map(|r| r.to_vec()).collect(),
            move_count: s.move_count,
            status: s.status,
            legal_move_count: if s.status == Status::Active { s.legal_move_count() } else { 0 },
        }
    }
}

/// Parse a 4 × 13 grid of cards.
pub fn grid_from_rows(rows: &[Vec<PlayingCard>]) -> Result<[[PlayingCard; COLS]; ROWS], GameError> {
    if rows.len() != ROWS || rows.iter().any(|r| r.len() != COLS) {
        return Err(GameError::BadGrid(format!("need {ROWS} rows of {COLS} cards")));
    }
    Ok(std::array::from_fn(|r| std::array::from_fn(|c| rows[r][c])))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// A uniformly random legal move.
    RandomLegal,
    /// The first legal move in a row-major scan of sources.
    ScanFirst,
    /// The first legal move that also puts the moving card in its own suit
    /// row, falling back to the first legal move.
    GreedyHome,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::RandomLegal, Strategy::ScanFirst, Strategy::GreedyHome];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::RandomLegal => "random_legal",
            Strategy::ScanFirst => "scan_first",
            Strategy::GreedyHome => "greedy_home",
        }
    }

    pub fn choose(self, state: &GameState, moves: &[Move], rng: &mut SimRng) -> Move {
        match self {
            Strategy::RandomLegal => moves[rng.below(moves.len())],
            Strategy::ScanFirst => moves[0],
            Strategy::GreedyHome => moves
                .iter()
                .copied()
                .find(|m| state.card(m.from).suit() == m.to.row)
                .unwrap_or(moves[0]),
        }
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "random" | "random_legal" => Ok(Strategy::RandomLegal),
            "scan" | "scan_first" => Ok(Strategy::ScanFirst),
            "greedy" | "greedy_home" => Ok(Strategy::GreedyHome),
            other => Err(format!("unknown strategy {other:?}")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub status: Status,
    pub move_count: u32,
    pub grid_hash: u64,
}

/// Play `state` to the end with moves drawn from `rng`.
pub fn play_out(mut state: GameState, strategy: Strategy, rng: &mut SimRng, cap: u32) -> GameState {
    state = state.with_cap(cap);
    let mut moves = Vec::with_capacity(ROWS * COLS);
    while state.status == Status::Active {
        moves.clear();
        state.collect_moves(&mut moves);
        let mv = strategy.choose(&state, &moves, rng);
        state.apply_move(mv).expect("chosen from the legal moves");
    }
    state
}

/// Deal from `seed` and play on the same stream.
pub fn play(strategy: Strategy, seed: u64, cap: u32) -> Result<Outcome, GameError> {
    if cap == 0 {
        return Err(GameError::ZeroCap);
    }
    let mut rng = SimRng::new(seed);
    let state = GameState::deal_with(&mut rng);
    let end = play_out(state, strategy, &mut rng, cap);
    Ok(Outcome { status: end.status, move_count: end.move_count, grid_hash: end.grid_hash() })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub strategy: Strategy,
    pub trials: u64,
    pub wins: u64,
    pub rate: f64,
    pub ci: (f64, f64),
    pub cap: u32,
    pub seed: u64,
}

/// Wilson score interval at 95%.
pub fn wilson(wins: u64, trials: u64) -> (f64, f64) {
    const Z: f64 = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = wins as f64 / n;
    let z2 = Z * Z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n);
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Seed of game `index` in a run seeded with `seed`.
pub fn game_seed(seed: u64, index: u64) -> u64 {
    SimRng::stream_seed(seed, index)
}

/// Wins among games `range` of a run.
pub fn count_wins(strategy: Strategy, seed: u64, cap: u32, range: std::ops::Range<u64>) -> u64 {
    range
        .into_par_iter()
        .filter(|&i| play(strategy, game_seed(seed, i), cap).map(|o| o.status == Status::Won).unwrap_or(false))
        .count() as u64
}

/// Monte Carlo estimate of the win rate over `trials` games.
pub fn estimate_win_rate(strategy: Strategy, trials: u64, seed: u64, cap: u32) -> Result<SimulationReport, GameError> {
    if trials == 0 {
        return Err(GameError::NoTrials);
    }
    if cap == 0 {
        return Err(GameError::ZeroCap);
    }
    let wins = count_wins(strategy, seed, cap, 0..trials);
    Ok(SimulationReport { strategy, trials, wins, rate: wins as f64 / trials as f64, ci: wilson(wins, trials), cap, seed })
}
