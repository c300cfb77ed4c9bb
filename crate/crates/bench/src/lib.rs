//! Benchmark inputs shared by the criterion targets.

use pangalactic::model::{layout_from_injection, Layout, Mode, Witness};
use pangalactic::rng::SimRng;
use pangalactic::sample;

pub type ProductMap = Witness<(usize, usize), (usize, usize)>;

/// A seeded injection `n × a → n × b`.
pub fn instance(n: usize, a: usize, b: usize, seed: u64) -> ProductMap {
    sample::product_injection(&mut SimRng::new(seed), n, a, b)
}

/// The long-mode deal of [`instance`].
pub fn deal(n: usize, a: usize, b: usize, seed: u64) -> Layout {
    layout_from_injection(n, &sample::set(a), &sample::set(b), &instance(n, a, b, seed), Mode::Long)
        .expect("sampled maps are injective")
}
