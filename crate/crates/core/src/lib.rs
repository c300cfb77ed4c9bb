//! Constructive division of finite products.
//!
//! Given an injection `n × A → n × B`, the algorithms here produce an explicit
//! injection `A → B` without making any arbitrary choices: every step is a
//! synchronous round over a deck of cards laid out in racks. Around that core
//! sit the cancellation laws (Cantor–Bernstein, subtraction, Euclidean
//! division), Hilbert-Hotel swallowing along disjoint arithmetic chains, and
//! the Pan Galactic Solitaire game with a Monte Carlo harness.

#![allow(clippy::type_complexity)]

pub mod division;
pub mod hilbert;
pub mod io;
pub mod laws;
pub mod model;
pub mod rng;
pub mod sample;
pub mod shipshape;
pub mod solitaire;
pub mod worked;


pub use division::{long_divide, short_divide, DivisionError, DivisionReport, Schedule};
pub use model::{
    layout_from_injection, product, verify_bijection, verify_injection, BijectionWitness, Card, Ident,
    InjectionWitness, Layout, LayoutError, Location, Mode, Spot, Sum, Swap, Witness, WitnessError,
};
pub use shipshape::{render_trace, run_pass, RoundKind, RoundTrace, ShipOutPolicy};
