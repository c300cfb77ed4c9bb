//! Brute-force oracles, written directly from the rules and sharing no code
//! with the library beyond its data types.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use pangalactic::model::{Ident, Layout, Mode, Sum, Witness};
use pangalactic::solitaire::{Cell, GameState, Move};

/// Pairwise scan: injective and inside the codomain.
pub fn is_injective<D: Ident, C: Ident>(w: &Witness<D, C>) -> bool {
    let pairs: Vec<(&D, &C)> = w.pairs().collect();
    let cod: BTreeSet<&C> = w.codomain().iter().collect();
    if pairs.len() != w.domain().len() || pairs.iter().any(|(_, c)| !cod.contains(c)) {
        return false;
    }
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if pairs[i].1 == pairs[j].1 {
                return false;
            }
        }
    }
    true
}

pub fn is_bijective<D: Ident, C: Ident>(w: &Witness<D, C>) -> bool {
    is_injective(w) && w.domain().len() == w.codomain().len()
}

/// Racks of `(suit, rank)` cells plus the deck.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Board {
    pub racks: Vec<Vec<Option<(usize, usize)>>>,
    pub deck: BTreeSet<(usize, usize)>,
}

impl Board {
    pub fn of(layout: &Layout) -> Board {
        let racks = (0..layout.rack_count())
            .map(|r| layout.rack(r).iter().map(|c| c.map(|c| (c.suit, c.rank))).collect())
            .collect();
        let deck = layout.deck().into_iter().map(|c| (c.suit, c.rank)).collect();
        Board { racks, deck }
    }

    fn find(&self, card: (usize, usize)) -> Option<(usize, usize)> {
        for (r, rack) in self.racks.iter().enumerate() {
            for (s, c) in rack.iter().enumerate() {
                if *c == Some(card) {
                    return Some((r, s));
                }
            }
        }
        None
    }

    fn good_rank(&self, r: usize) -> Option<usize> {
        match self.racks[r][0] {
            Some((0, q)) => Some(q),
            _ => None,
        }
    }

    pub fn bad_spades(&self) -> usize {
        self.racks.iter().flat_map(|rack| rack.iter().skip(1)).filter(|c| matches!(c, Some((0, _)))).count()
    }
}

/// Shape up then ship out until a full cycle does nothing. Returns the end
/// board and the number of swaps.
pub fn shipshape(layout: &Layout) -> (Board, usize) {
    let mut b = Board::of(layout);
    let mut swaps = 0;
    loop {
        let mut done = 0;
        // Shape up.
        for r in 0..b.racks.len() {
            if b.good_rank(r).is_some() {
                continue;
            }
            if let Some(s) = (1..b.racks[r].len()).find(|&s| matches!(b.racks[r][s], Some((0, _)))) {
                b.racks[r].swap(0, s);
                done += 1;
            }
        }
        // Ship out, computed from the state before the round.
        let before = b.clone();
        let mut plan = Vec::new();
        for r in 0..before.racks.len() {
            let Some(q) = before.good_rank(r) else { continue };
            for s in 1..before.racks[r].len() {
                if matches!(before.racks[r][s], Some((0, _))) {
                    plan.push(((r, s), (s, q)));
                }
            }
        }
        // Each spot or deck card may take part in one swap only.
        let mut touched: BTreeSet<Result<(usize, usize), (usize, usize)>> = BTreeSet::new();
        for &((r, s), target) in &plan {
            assert!(touched.insert(Ok((r, s))), "overlapping ship out");
            assert!(touched.insert(before.find(target).ok_or(target)), "overlapping ship out");
        }
        for ((r, s), target) in plan {
            let spade = b.racks[r][s].take().unwrap();
            match before.find(target) {
                Some((r2, s2)) => {
                    b.racks[r2][s2] = Some(spade);
                    b.racks[r][s] = Some(target);
                }
                None => {
                    b.deck.remove(&target);
                    b.deck.insert(spade);
                    b.racks[r][s] = Some(target);
                }
            }
            done += 1;
        }
        swaps += done;
        if done == 0 {
            return (b, swaps);
        }
    }
}

/// Short-mode shape up may move a spade into an empty spades spot.
pub fn shipshape_short(layout: &Layout) -> (Board, usize) {
    assert_eq!(layout.mode(), Mode::Short);
    shipshape(layout)
}

/// Cantor–Bernstein by chain partition. Chains starting in `A − g(B)` use
/// `f`, chains starting in `B − f(A)` use `g⁻¹`, and cycles use `f` exactly when `cycle_uses_f`.
pub fn cb_oracle<A: Ident, B: Ident>(f: &Witness<A, B>, g: &Witness<B, A>, cycle_uses_f: bool) -> BTreeMap<A, B> {
    let f_inv: BTreeMap<&B, &A> = f.pairs().map(|(a, b)| (b, a)).collect();
    let g_inv: BTreeMap<&A, &B> = g.pairs().map(|(b, a)| (a, b)).collect();
    let mut out = BTreeMap::new();
    for a in f.domain() {
        // Walk back a ← g(b) ← f(a') ...
        let mut cur = a;
        let mut seen = BTreeSet::new();
        let use_f = loop {
            if !seen.insert(cur) {
                break cycle_uses_f;
            }
            let Some(b) = g_inv.get(cur) else { break true };
            let Some(prev) = f_inv.get(b) else { break false };
            cur = prev;
        };
        let image = if use_f { f.get(a).unwrap().clone() } else { (*g_inv[a]).clone() };
        out.insert(a.clone(), image);
    }
    out
}

/// The first `B` element on the path `a, h(a), h(h(a)), ...`.
pub fn subtract_oracle<A: Ident, B: Ident, C: Ident>(h: &Witness<Sum<A, C>, Sum<B, C>>, a: &A) -> Option<B> {
    let mut x: Sum<A, C> = Sum::Left(a.clone());
    for _ in 0..=h.len() {
        match h.get(&x)? {
            Sum::Left(b) => return Some(b.clone()),
            Sum::Right(c) => x = Sum::Right(c.clone()),
        }
    }
    None
}

/// Every legal move, found by testing all ordered pairs of cells against the
/// rule as stated.
pub fn solitaire_moves(s: &GameState) -> BTreeSet<(usize, usize, usize, usize)> {
    let cells: Vec<Cell> = (0..4).flat_map(|r| (0..13).map(move |c| Cell::new(r, c))).collect();
    let mut out = BTreeSet::new();
    for &p in &cells {
        for &q in &cells {
            let mover = s.card(p);
            let x = mover.suit();
            let y = p.row;
            if x == y {
                continue;
            }
            let anchor = s.card(Cell::new(x, p.col));
            if anchor.suit() != x {
                continue;
            }
            let target = s.card(q);
            if target.suit() == y && target.rank() == anchor.rank() {
                out.insert((p.row, p.col, q.row, q.col));
            }
        }
    }
    out
}

pub fn move_key(m: &Move) -> (usize, usize, usize, usize) {
    (m.from.row, m.from.col, m.to.row, m.to.col)
}
