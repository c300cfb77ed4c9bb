//! Text rendering of round traces.
//!
//! Each block is a label line followed by one row per slot, spades slot
//! first. A cell is `*Xs*` for a spade, `|Xy|` for a card that has been the
//! partner of a Ship Out swap at any earlier point of the trace, and ` Xy `
//! otherwise. Blocks end with a blank line.

use std::collections::HashSet;

use thiserror::Error;

use super::{RoundKind, RoundTrace};
use crate::model::{Card, Layout, Location, Spot};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("rank {0:?} does not fit the one-character card format")]
    RankOverflow(String),
    #[error(transparent)]
    Layout(#[from] crate::model::LayoutError),
}

/// Render in the compact card format (`Qs`, `4h`, ...).
///
/// Needs single-character ranks when there are at most four suits. Larger
/// suit counts fall back to [`render_trace_wide`].
pub fn render_trace(trace: &RoundTrace) -> Result<String, RenderError> {
    let start = trace.start();
    if start.suit_count() > 4 {
        return Ok(render_trace_wide(trace));
    }
    if let Some(r) = start.ranks().iter().find(|r| r.chars().count() != 1) {
        return Err(RenderError::RankOverflow(r.clone()));
    }
    render(trace, 2)
}

/// Render with cells padded to the widest card label. Suits beyond four are
/// shown by number (`Q:5`).
pub fn render_trace_wide(trace: &RoundTrace) -> String {
    let start = trace.start();
    let width = start
        .cards()
        .map(|c| start.card_label(c).chars().count())
        .max()
        .unwrap_or(2);
    render(trace, width).expect("trace replays cleanly")
}

fn render(trace: &RoundTrace, width: usize) -> Result<String, RenderError> {
    let mut out = String::new();
    let mut barred: HashSet<Card> = HashSet::new();
    block(&mut out, "Start", trace.start(), &barred, width);
    let mut cur = trace.start().clone();
    for entry in trace.entries() {
        if entry.kind == RoundKind::ShipOut {
            for swap in &entry.swaps {
                let partner = match swap.1 {
                    Location::Spot(s) => cur.card_at(s),
                    Location::Deck(c) => Some(c),
                };
                barred.extend(partner.filter(|c| c.suit != 0));
            }
        }
        cur = cur.apply_swaps(&entry.swaps)?;
        block(&mut out, entry.kind.label(), &cur, &barred, width);
    }
    Ok(out)
}

fn block(out: &mut String, label: &str, layout: &Layout, barred: &HashSet<Card>, width: usize) {
    out.push_str(label);
    out.push_str(":\n");
    if layout.rack_count() > 0 {
        for slot in 0..layout.suit_count() {
            let cells: Vec<String> = (0..layout.rack_count())
                .map(|r| cell(layout, layout.card_at(Spot::new(r, slot)), barred, width))
                .collect();
            out.push_str(&cells.join("  "));
            out.push('\n');
        }
    }
    out.push('\n');
}

fn cell(layout: &Layout, card: Option<Card>, barred: &HashSet<Card>, width: usize) -> String {
    match card {
        None => format!(" {:-<width$} ", ""),
        Some(c) => {
            let text = format!("{:<width$}", layout.card_label(c));
            if c.suit == 0 {
                format!("*{text}*")
            } else if barred.contains(&c) {
                format!("|{text}|")
            } else {
                format!(" {text} ")
            }
        }
    }
}
