//! Seeded random instances over index sets `0..size`.

use crate::hilbert::{ArithChain, ChainFamily, Tail};
use crate::model::{product, Card, Witness};
use crate::rng::SimRng;

/// Elements `0..size`.
pub fn set(size: usize) -> Vec<usize> {
    (0..size).collect()
}

/// A uniformly random injection `A → B` with `|A| ≤ |B|`.
pub fn injection(rng: &mut SimRng, a: usize, b: usize) -> Witness<usize, usize> {
    assert!(a <= b, "no injection from {a} into {b} elements");
    let mut targets = set(b);
    rng.shuffle(&mut targets);
    Witness::new(set(a), set(b), (0..a).zip(targets)).expect("total")
}

/// A uniformly random injection `n×A → n×B`.
pub fn product_injection(rng: &mut SimRng, n: usize, a: usize, b: usize) -> Witness<(usize, usize), (usize, usize)> {
    assert!(a <= b, "no injection from {n}×{a} into {n}×{b}");
    let dom = product(n, &set(a));
    let mut cod = product(n, &set(b));
    rng.shuffle(&mut cod);
    Witness::new(dom.clone(), product(n, &set(b)), dom.into_iter().zip(cod)).expect("total")
}

/// A uniformly random bijection `m×A ↔ n×B` with `m·|A| = n·|B|`.
pub fn product_bijection(
    rng: &mut SimRng,
    m: usize,
    a: usize,
    n: usize,
    b: usize,
) -> Witness<(usize, usize), (usize, usize)> {
    assert_eq!(m * a, n * b, "sizes do not balance");
    let dom = product(m, &set(a));
    let mut cod = product(n, &set(b));
    rng.shuffle(&mut cod);
    Witness::new(dom.clone(), product(n, &set(b)), dom.into_iter().zip(cod)).expect("total")
}

/// A random disjoint chain family with up to `max_tags` tags in `n` suits.
///
/// Tails sharing a suit use distinct residues modulo a common base, which
/// keeps them apart. Prefix cards of a chain's own tail suit come in
/// increasing rank order below the tail start, so every trimmed sequence is
/// increasing.
pub fn chain_family(rng: &mut SimRng, max_tags: usize, n: usize) -> ChainFamily {
    let tags = 1 + rng.below(max_tags);
    let base = tags + rng.below(4);
    let mut residues: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let mut r = set(base);
            rng.shuffle(&mut r);
            r
        })
        .collect();
    let tails: Vec<Tail> = (0..tags)
        .map(|_| {
            let suit = rng.below(n);
            let residue = residues[suit].pop().expect("base covers every tag");
            let stride = base * (1 + rng.below(3));
            Tail { suit, start: residue + base * (2 + rng.below(8)), stride }
        })
        .collect();
    let taken = |card: Card, tails: &[Tail], prefixes: &[Vec<Card>]| {
        tails.iter().any(|t| card.suit == t.suit && card.rank >= t.start && (card.rank - t.start).is_multiple_of(t.stride))
            || prefixes.iter().flatten().any(|&c| c == card)
    };
    let mut prefixes: Vec<Vec<Card>> = Vec::new();
    for tail in &tails {
        let mut prefix = Vec::new();
        let mut floor = 0;
        for _ in 0..rng.below(6) {
            let suit = rng.below(n);
            let card = if suit == tail.suit {
                if floor >= tail.start {
                    continue;
                }
                Card::new(suit, floor + rng.below(tail.start - floor))
            } else {
                Card::new(suit, rng.below(4 * base * 10))
            };
            let mut all = prefixes.clone();
            all.push(prefix.clone());
            if taken(card, &tails, &all) {
                continue;
            }
            if card.suit == tail.suit {
                floor = card.rank + 1;
            }
            prefix.push(card);
        }
        prefixes.push(prefix);
    }
    let chains = tails
        .into_iter()
        .zip(prefixes)
        .enumerate()
        .map(|(i, (tail, prefix))| (format!("t{i}"), ArithChain::new(prefix, tail).expect("distinct entries")))
        .collect();
    ChainFamily::new(n, chains).expect("generated chains are disjoint")
}
