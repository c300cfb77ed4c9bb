mod common;

use std::collections::BTreeSet;

use common::{cb_oracle, is_bijective, is_injective, subtract_oracle};
use pangalactic::division::Method;
use pangalactic::laws::{
    cb_combine, claw_back, euclid_divide, general_divide, give_forward, subtract, subtract_multi, CbVariant,
    EuclidStep,
};
use pangalactic::model::{Sum, Witness};
use pangalactic::rng::SimRng;
use pangalactic::sample;
use proptest::prelude::*;

type Tagged = Sum<usize, usize>;

/// An injection `A + C → B + C` with `|A| ≤ |B|`, built from a random
/// permutation of the codomain.
fn subtract_case(rng: &mut SimRng, a: usize, b: usize, c: usize) -> Witness<Tagged, Tagged> {
    let dom: Vec<Tagged> = (0..a).map(Sum::Left).chain((0..c).map(Sum::Right)).collect();
    let mut cod: Vec<Tagged> = (0..b).map(Sum::Left).chain((0..c).map(Sum::Right)).collect();
    rng.shuffle(&mut cod);
    let codomain = (0..b).map(Sum::Left).chain((0..c).map(Sum::Right)).collect();
    Witness::new(dom.clone(), codomain, dom.into_iter().zip(cod)).unwrap()
}

type Copies = Sum<usize, (usize, usize)>;

fn multi_case(rng: &mut SimRng, m: usize, n: usize, a: usize, b: usize, c: usize) -> Witness<Copies, Copies> {
    let side = |base: usize, copies: usize| -> Vec<Copies> {
        (0..base).map(Sum::Left).chain((0..copies).flat_map(|i| (0..c).map(move |x| Sum::Right((i, x))))).collect()
    };
    let dom = side(a, m);
    let mut cod = side(b, n);
    rng.shuffle(&mut cod);
    Witness::new(dom.clone(), side(b, n), dom.into_iter().zip(cod)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cb_matches_chain_partition(seed in any::<u64>(), size in 0usize..=60) {
        let mut rng = SimRng::new(seed);
        let f = sample::injection(&mut rng, size, size);
        let g = sample::injection(&mut rng, size, size);
        for (variant, cycle_uses_f) in [(CbVariant::GiveForward, false), (CbVariant::ClawBack, true)] {
            let h = cb_combine(&f, &g, variant).unwrap();
            prop_assert!(is_bijective(&h));
            let oracle = cb_oracle(&f, &g, cycle_uses_f);
            for (a, b) in h.pairs() {
                prop_assert_eq!(&oracle[a], b);
                let back = g.pairs().find(|(_, x)| *x == a).map(|(y, _)| y).unwrap();
                prop_assert!(b == f.get(a).unwrap() || b == back);
            }
        }
    }

    #[test]
    fn holders_cover_the_codomain(seed in any::<u64>(), size in 1usize..=40, keep in 1usize..=40) {
        let mut rng = SimRng::new(seed);
        let keep = keep.min(size);
        let mut order = sample::set(size);
        rng.shuffle(&mut order);
        let mut in_b = vec![false; size];
        for &x in &order[..keep] {
            in_b[x] = true;
        }
        let b: Vec<usize> = order[..keep].to_vec();
        let f: Vec<usize> = (0..size).map(|_| b[rng.below(keep)]).collect();
        for held in [give_forward(&f, &in_b), claw_back(&f, &in_b)] {
            let image: BTreeSet<usize> = held.iter().copied().collect();
            prop_assert_eq!(image, b.iter().copied().collect::<BTreeSet<_>>());
            for (x, &h) in held.iter().enumerate() {
                prop_assert!(h == f[x] || h == x);
            }
        }
    }

    #[test]
    fn subtract_follows_paths(seed in any::<u64>(), a in 0usize..=15, extra in 0usize..=10, c in 0usize..=50) {
        let mut rng = SimRng::new(seed);
        let h = subtract_case(&mut rng, a, a + extra, c);
        let r = subtract(&h).unwrap();
        prop_assert!(is_injective(&r));
        for (x, y) in r.pairs() {
            let expected = subtract_oracle(&h, x);
            prop_assert_eq!(expected.as_ref(), Some(y));
        }
    }

    #[test]
    fn subtract_multi_is_injective(seed in any::<u64>(), m in 0usize..=6, gap in 1usize..=4, a in 0usize..=8, c in 0usize..=8) {
        let n = m + gap;
        let mut rng = SimRng::new(seed);
        let b = a + rng.below(5);
        let h = multi_case(&mut rng, m, n, a, b, c);
        let r = subtract_multi(m, n, &h).unwrap();
        prop_assert!(is_injective(&r));
        prop_assert_eq!(r.codomain().len(), b + (n - m) * c);
    }
}

#[test]
fn one_copy_matches_plain_subtraction() {
    let mut rng = SimRng::new(99);
    for _ in 0..100 {
        let (a, c) = (rng.below(6), rng.below(6));
        let b = a + rng.below(3);
        let h = multi_case(&mut rng, 1, 2, a, b, c);
        let multi = subtract_multi(1, 2, &h).unwrap();
        // The same map with copy 0 of the codomain folded into B.
        type Folded = Sum<Sum<usize, (usize, usize)>, usize>;
        let fold_dom = |x: &Copies| -> Folded {
            match x {
                Sum::Left(a) => Sum::Left(Sum::Left(*a)),
                Sum::Right((_, c)) => Sum::Right(*c),
            }
        };
        let fold_cod = |y: &Copies| -> Folded {
            match y {
                Sum::Right((1, c)) => Sum::Right(*c),
                other => Sum::Left(*other),
            }
        };
        let plain = Witness::new(
            h.domain().iter().map(fold_dom).collect(),
            h.codomain().iter().map(fold_cod).collect(),
            h.pairs().map(|(x, y)| (fold_dom(x), fold_cod(y))),
        )
        .unwrap();
        let single = subtract(&plain).unwrap();
        for (x, y) in multi.pairs() {
            assert_eq!(single.get(&Sum::Left(*x)), Some(y));
        }
    }
}

#[test]
fn euclid_over_coprime_pairs() {
    let mut rng = SimRng::new(31);
    for &(m, n) in &[(1, 2), (2, 3), (3, 5), (4, 7), (5, 7), (7, 4), (3, 8)] {
        for _ in 0..5 {
            let r = 1 + rng.below(5);
            let (a, b) = (n * r, m * r);
            let f = sample::product_bijection(&mut rng, m, a, n, b);
            let (xs, ys) = (sample::set(a), sample::set(b));
            for step in [EuclidStep::Naive, EuclidStep::Multi] {
                let q = euclid_divide(m, n, &xs, &ys, &f, step, Method::Short).unwrap();
                assert_eq!(q.r.len(), r);
                assert!(is_bijective(&q.a_wit));
                assert!(is_bijective(&q.b_wit));
                assert!(q.depth <= m + n);
            }
        }
    }
}

#[test]
fn general_division_sizes() {
    let mut rng = SimRng::new(37);
    for &(m, n) in &[(2, 2), (2, 4), (4, 6), (6, 9), (6, 4), (3, 1)] {
        let d = num_gcd(m, n);
        let r = 1 + rng.below(4);
        let (a, b) = (n / d * r, m / d * r);
        let f = sample::product_bijection(&mut rng, m, a, n, b);
        let q = general_divide(m, n, &sample::set(a), &sample::set(b), &f, EuclidStep::Multi, Method::Long).unwrap();
        assert_eq!(q.r.len(), r);
        assert!(is_bijective(&q.a_wit));
        assert!(is_bijective(&q.b_wit));
    }
}

fn num_gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}
