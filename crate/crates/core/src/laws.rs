//! Cancellation laws on finite sets.
//!
//! Sets are witnessed by explicit maps. Disjoint unions use [`Sum`], and
//! `m × C` uses `(copy, c)` pairs. Every finite instance of a swallowed set is
//! empty, so the extra sets that appear in the general statements are
//! asserted empty here rather than carried around.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::division::{divide, divide_bijection, long_divide, DivisionError, Method, Schedule};
use crate::model::{product, require_bijection, require_injection, Ident, Sum, Witness, WitnessError};
use crate::shipshape::ShipOutPolicy;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawError {
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Division(#[from] DivisionError),
    #[error("need m < n, got m = {0}, n = {1}")]
    CopyCounts(usize, usize),
    #[error("gcd({0}, {1}) is not 1")]
    NotCoprime(usize, usize),
    #[error("sizes do not balance: {m} × {a} ≠ {n} × {b}")]
    SizeMismatch { m: usize, a: usize, b: usize, n: usize },
    #[error("leftover set is not empty ({0} elements)")]
    Leftover(usize),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CbVariant {
    #[default]
    GiveForward,
    ClawBack,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EuclidStep {
    /// Subtract `m` copies per step.
    Naive,
    /// Subtract the largest multiple of `m` that fits.
    #[default]
    Multi,
}

/// Valentine rounds for `f: A → B` with `B ⊆ A`, given by index.
///
/// Elements outside `B` hand their Valentine to their image, and anyone who
/// receives one passes their own on, until nothing changes. Returns where
/// each Valentine ends up. The result maps onto `B`, and is a bijection
/// `A → B` when `f` is injective.
pub fn give_forward(f: &[usize], in_b: &[bool]) -> Vec<usize> {
    let mut gave = vec![false; f.len()];
    let mut frontier: Vec<usize> = (0..f.len()).filter(|&a| !in_b[a]).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in frontier {
            if !gave[a] {
                gave[a] = true;
                next.push(f[a]);
            }
        }
        frontier = next;
    }
    (0..f.len()).map(|a| if gave[a] { f[a] } else { a }).collect()
}

/// Claw-back rounds for `f: A → B` with `B ⊆ A`, given by index.
///
/// Everyone hands their Valentine to their image, then any member of `B`
/// left without one takes its own back, until nothing changes.
pub fn claw_back(f: &[usize], in_b: &[bool]) -> Vec<usize> {
    let mut at: Vec<usize> = f.to_vec();
    let mut held = vec![0usize; f.len()];
    for &b in f {
        held[b] += 1;
    }
    loop {
        let claim: Vec<usize> = (0..f.len()).filter(|&b| in_b[b] && held[b] == 0 && at[b] != b).collect();
        if claim.is_empty() {
            break;
        }
        for b in claim {
            held[at[b]] -= 1;
            at[b] = b;
            held[b] += 1;
        }
    }
    at
}

/// Cantor–Bernstein: a bijection `A ↔ B` from injections both ways. Each
/// element goes to `f(a)` or to `g⁻¹(a)`.
pub fn cb_combine<A: Ident, B: Ident>(
    f: &Witness<A, B>,
    g: &Witness<B, A>,
    variant: CbVariant,
) -> Result<Witness<A, B>, LawError> {
    require_injection(f)?;
    require_injection(g)?;
    let a = f.domain();
    if !same_set(a, g.codomain()) || !same_set(f.codomain(), g.domain()) {
        return Err(WitnessError::Shape("the two injections do not run between the same sets".into()).into());
    }
    let a_index: BTreeMap<&A, usize> = a.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let g_inv: BTreeMap<&A, &B> = g.pairs().map(|(b, x)| (x, b)).collect();
    // f' = g∘f maps A into g(B) ⊆ A.
    let reduced: Vec<usize> = a.iter().map(|x| a_index[&g.get(f.get(x).unwrap()).unwrap()]).collect();
    let mut in_gb = vec![false; a.len()];
    for x in g_inv.keys() {
        in_gb[a_index[x]] = true;
    }
    let held = match variant {
        CbVariant::GiveForward => give_forward(&reduced, &in_gb),
        CbVariant::ClawBack => claw_back(&reduced, &in_gb),
    };
    let pairs = a.iter().zip(held).map(|(x, h)| (x.clone(), g_inv[&a[h]].clone()));
    let w = Witness::new(a.to_vec(), f.codomain().to_vec(), pairs)?.with_provenance(format!("cb_combine({variant:?})"));
    require_bijection(&w)?;
    Ok(w)
}

fn same_set<T: Ord>(x: &[T], y: &[T]) -> bool {
    let xs: std::collections::BTreeSet<&T> = x.iter().collect();
    let ys: std::collections::BTreeSet<&T> = y.iter().collect();
    x.len() == xs.len() && xs == ys
}

/// Cancel `C` from `A + C ⪯ B + C`: each `a` follows `h` through `C` until it
/// lands in `B`.
pub fn subtract<A: Ident, B: Ident, C: Ident>(
    h: &Witness<Sum<A, C>, Sum<B, C>>,
) -> Result<Witness<A, B>, LawError> {
    require_injection(h)?;
    let a: Vec<A> = h.domain().iter().filter_map(left).collect();
    let b: Vec<B> = h.codomain().iter().filter_map(left).collect();
    let limit = h.len();
    let mut pairs = Vec::with_capacity(a.len());
    for x in &a {
        let mut y = h.get(&Sum::Left(x.clone())).unwrap();
        let mut steps = 0;
        while let Sum::Right(c) = y {
            steps += 1;
            assert!(steps <= limit, "subtraction path revisited an element");
            y = h
                .get(&Sum::Right(c.clone()))
                .ok_or_else(|| WitnessError::Shape(format!("{} is in the codomain but not the domain", c.label())))?;
        }
        if let Sum::Left(t) = y {
            pairs.push((x.clone(), t.clone()));
        }
    }
    let w = Witness::new(a, b, pairs)?.with_provenance("subtract");
    require_injection(&w)?;
    Ok(w)
}

fn left<L: Clone, R>(s: &Sum<L, R>) -> Option<L> {
    match s {
        Sum::Left(l) => Some(l.clone()),
        Sum::Right(_) => None,
    }
}

/// Cancel `mC` from `A + mC ⪯ B + nC`, leaving `A ⪯ B + (n−m)C`.
///
/// Each step peels the top `⌈m/2⌉` copies on both sides at once, so there are
/// `O(log m)` steps.
pub fn subtract_multi<A: Ident, B: Ident, C: Ident>(
    m: usize,
    n: usize,
    h: &Witness<Sum<A, (usize, C)>, Sum<B, (usize, C)>>,
) -> Result<Witness<A, Sum<B, (usize, C)>>, LawError> {
    if m >= n {
        return Err(LawError::CopyCounts(m, n));
    }
    require_injection(h)?;
    let mut cur: BTreeMap<Sum<A, (usize, C)>, Sum<B, (usize, C)>> =
        h.pairs().map(|(x, y)| (x.clone(), y.clone())).collect();
    let (mut m, mut n) = (m, n);
    while m > 0 {
        let k = m.div_ceil(2);
        let (dom_cut, cod_cut) = (m - k, n - k);
        let mut next = BTreeMap::new();
        for x in cur.keys() {
            if matches!(x, Sum::Right((copy, _)) if *copy >= dom_cut) {
                continue;
            }
            let mut y = &cur[x];
            let mut steps = 0;
            while let Sum::Right((copy, c)) = y {
                if *copy < cod_cut {
                    break;
                }
                steps += 1;
                assert!(steps <= cur.len(), "subtraction path revisited an element");
                y = &cur[&Sum::Right((copy - cod_cut + dom_cut, c.clone()))];
            }
            next.insert(x.clone(), y.clone());
        }
        cur = next;
        m = dom_cut;
        n = cod_cut;
    }
    let a: Vec<A> = cur.keys().filter_map(left).collect();
    let b: Vec<B> = h.codomain().iter().filter_map(left).collect();
    let c: Vec<C> = h
        .codomain()
        .iter()
        .filter_map(|y| match y {
            Sum::Right((0, c)) => Some(c.clone()),
            _ => None,
        })
        .collect();
    let codomain: Vec<Sum<B, (usize, C)>> =
        b.into_iter().map(Sum::Left).chain(product(n, &c).into_iter().map(Sum::Right)).collect();
    let pairs = cur.into_iter().filter_map(|(x, y)| left(&x).map(|x| (x, y)));
    let w = Witness::new(a, codomain, pairs)?.with_provenance("subtract_multi");
    require_injection(&w)?;
    Ok(w)
}

/// Result of dividing `mA ≍ nB`: a set `R` with `A ≍ nR` and `B ≍ mR`.
#[derive(Clone, Debug)]
pub struct Quotient<A, B> {
    pub r: Vec<Sum<A, B>>,
    pub a_wit: Witness<A, (usize, Sum<A, B>)>,
    pub b_wit: Witness<B, (usize, Sum<A, B>)>,
    /// Recursion steps taken.
    pub depth: usize,
}

type U<A, B> = Sum<A, B>;
type Split<A, B> = (Vec<U<A, B>>, BTreeMap<U<A, B>, (usize, U<A, B>)>, BTreeMap<U<A, B>, (usize, U<A, B>)>);

/// Euclidean division of a bijection `m×A ↔ n×B` with `gcd(m, n) = 1`.
pub fn euclid_divide<A: Ident, B: Ident>(
    m: usize,
    n: usize,
    a: &[A],
    b: &[B],
    f: &Witness<(usize, A), (usize, B)>,
    step: EuclidStep,
    method: Method,
) -> Result<Quotient<A, B>, LawError> {
    if m.gcd(&n) != 1 {
        return Err(LawError::NotCoprime(m, n));
    }
    if m * a.len() != n * b.len() {
        return Err(LawError::SizeMismatch { m, a: a.len(), b: b.len(), n });
    }
    crate::model::check_product_shape(m, a, f.domain(), "domain")?;
    crate::model::check_product_shape(n, b, f.codomain(), "codomain")?;
    require_bijection(f)?;
    let x: Vec<U<A, B>> = a.iter().cloned().map(Sum::Left).collect();
    let y: Vec<U<A, B>> = b.iter().cloned().map(Sum::Right).collect();
    let map: BTreeMap<(usize, U<A, B>), (usize, U<A, B>)> =
        f.pairs().map(|((s, p), (t, q))| ((*s, Sum::Left(p.clone())), (*t, Sum::Right(q.clone())))).collect();
    let mut depth = 0;
    let (r, xa, yb) = euclid_rec(m, n, x, y, map, step, method, &mut depth)?;
    let unwrap_a = |u: &U<A, B>| match u {
        Sum::Left(p) => p.clone(),
        Sum::Right(_) => unreachable!(),
    };
    let unwrap_b = |u: &U<A, B>| match u {
        Sum::Right(q) => q.clone(),
        Sum::Left(_) => unreachable!(),
    };
    let a_wit = Witness::new(a.to_vec(), product(n, &r), xa.iter().map(|(k, v)| (unwrap_a(k), v.clone())))?
        .with_provenance(format!("euclid_divide({m}, {n}, {step:?})"));
    let b_wit = Witness::new(b.to_vec(), product(m, &r), yb.iter().map(|(k, v)| (unwrap_b(k), v.clone())))?
        .with_provenance(format!("euclid_divide({m}, {n}, {step:?})"));
    require_bijection(&a_wit)?;
    require_bijection(&b_wit)?;
    Ok(Quotient { r, a_wit, b_wit, depth })
}

#[allow(clippy::too_many_arguments)]
fn euclid_rec<A: Ident, B: Ident>(
    m: usize,
    n: usize,
    x: Vec<U<A, B>>,
    y: Vec<U<A, B>>,
    f: BTreeMap<(usize, U<A, B>), (usize, U<A, B>)>,
    step: EuclidStep,
    method: Method,
    depth: &mut usize,
) -> Result<Split<A, B>, LawError> {
    *depth += 1;
    if m > n {
        let inv = f.into_iter().map(|(k, v)| (v, k)).collect();
        let (r, yr, xr) = euclid_rec(n, m, y, x, inv, step, method, depth)?;
        return Ok((r, xr, yr));
    }
    if m == 1 {
        // x ↦ F(0, x) ∈ n×Y, and Y ≍ 1×Y.
        let xr = x.iter().map(|p| (p.clone(), f[&(0, p.clone())].clone())).collect();
        let yr = y.iter().map(|q| (q.clone(), (0, q.clone()))).collect();
        return Ok((y, xr, yr));
    }
    let k = match step {
        EuclidStep::Naive => 1,
        EuclidStep::Multi => n / m,
    };
    let f_inv: BTreeMap<&(usize, U<A, B>), &(usize, U<A, B>)> = f.iter().map(|(k, v)| (v, k)).collect();

    // m × (k×Y) → m × X through the first km copies of Y.
    let ky: Vec<(usize, U<A, B>)> = product(k, &y);
    let inj = Witness::new(
        product(m, &ky),
        product(m, &x),
        product(m, &ky).into_iter().map(|(t, (i, q))| {
            let target = f_inv[&(i * m + t, q.clone())].clone();
            ((t, (i, q)), target)
        }),
    )?;
    let j = divide(m, &ky, &x, &inj, method)?;
    let used: std::collections::BTreeSet<&U<A, B>> = j.pairs().map(|(_, p)| p).collect();
    let c: Vec<U<A, B>> = x.iter().filter(|p| !used.contains(p)).cloned().collect();

    // h: mC + km·Y → n·Y, with km·Y going through m×j then F.
    type Dom<T> = Sum<(usize, T), (usize, T)>;
    type Cod<T> = Sum<(usize, T), (usize, T)>;
    let mut h_pairs: Vec<(Dom<U<A, B>>, Cod<U<A, B>>)> = Vec::new();
    for (t, p) in product(m, &c) {
        h_pairs.push((Sum::Left((t, p.clone())), Sum::Right(f[&(t, p)].clone())));
    }
    for (copy, q) in product(k * m, &y) {
        let (i, t) = (copy / m, copy % m);
        let p = j.get(&(i, q.clone())).unwrap().clone();
        h_pairs.push((Sum::Right((copy, q)), Sum::Right(f[&(t, p)].clone())));
    }
    let h_dom: Vec<Dom<U<A, B>>> =
        product(m, &c).into_iter().map(Sum::Left).chain(product(k * m, &y).into_iter().map(Sum::Right)).collect();
    let h_cod: Vec<Cod<U<A, B>>> = product(n, &y).into_iter().map(Sum::Right).collect();
    let h = Witness::new(h_dom, h_cod, h_pairs)?;
    let rest = subtract_multi(k * m, n, &h)?;
    // mC → (n−km)Y must be onto: nothing is left over in finite sets.
    let image = rest.image()?;
    let leftover = (n - k * m) * y.len() - image.len();
    if leftover != 0 {
        return Err(LawError::Leftover(leftover));
    }
    let g: BTreeMap<(usize, U<A, B>), (usize, U<A, B>)> = rest
        .pairs()
        .map(|((t, p), v)| match v {
            Sum::Right(q) => ((*t, p.clone()), q.clone()),
            Sum::Left(_) => unreachable!("the left summand of the codomain is empty"),
        })
        .collect();
    let (r, cr, yr) = euclid_rec(m, n - k * m, c, y, g, step, method, depth)?;

    let mut xr: BTreeMap<U<A, B>, (usize, U<A, B>)> = BTreeMap::new();
    for ((i, q), p) in j.pairs() {
        let (t, r_el) = yr[q].clone();
        xr.insert(p.clone(), (i * m + t, r_el));
    }
    for (p, (s, r_el)) in cr {
        xr.insert(p, (k * m + s, r_el));
    }
    Ok((r, xr, yr))
}

/// Divide `m×A ↔ n×B` for any `m, n`: divide out `d = gcd(m, n)` first, then
/// run the Euclidean recursion on `m/d, n/d`.
pub fn general_divide<A: Ident, B: Ident>(
    m: usize,
    n: usize,
    a: &[A],
    b: &[B],
    f: &Witness<(usize, A), (usize, B)>,
    step: EuclidStep,
    method: Method,
) -> Result<Quotient<A, B>, LawError> {
    if m == 0 || n == 0 {
        return Err(LawError::CopyCounts(m, n));
    }
    let d = m.gcd(&n);
    let (mq, nq) = (m / d, n / d);
    let ma = product(mq, a);
    let nb = product(nq, b);
    // (s, x) in m×X becomes (s div q, (s mod q, x)) in d×(q×X).
    fn regroup<T: Clone>(q: usize, (s, x): &(usize, T)) -> (usize, (usize, T)) {
        (s / q, (s % q, x.clone()))
    }
    let grouped = Witness::new(
        product(d, &ma),
        product(d, &nb),
        f.pairs().map(|(p, q)| (regroup(mq, p), regroup(nq, q))),
    )?;
    let reduced = divide_bijection(d, &ma, &nb, &grouped, method)?;
    euclid_divide(mq, nq, a, b, &reduced, step, method)
}

/// From `nA ⪯ nB` and `B ⪯ A`, a bijection `A ↔ B`.
pub fn cancel_to_bijection<A: Ident, B: Ident>(
    n: usize,
    a: &[A],
    b: &[B],
    f: &Witness<(usize, A), (usize, B)>,
    g: &Witness<B, A>,
) -> Result<Witness<A, B>, LawError> {
    let down = long_divide(n, a, b, f, &Schedule::Halving, ShipOutPolicy::AllBad)?;
    let w = cb_combine(&down.result, g, CbVariant::GiveForward)?;
    Ok(w.with_provenance(format!("cancel_to_bijection(n={n})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{verify_bijection, verify_injection};
    use crate::rng::SimRng;
    use crate::sample;

    fn s(x: &str) -> String {
        x.to_string()
    }

    #[test]
    fn give_forward_on_a_surjection() {
        assert_eq!(give_forward(&[1, 2, 2], &[false, true, true]), vec![1, 2, 2]);
        assert_eq!(give_forward(&[0, 1], &[true, true]), vec![0, 1]);
    }

    #[test]
    fn claw_back_on_a_surjection() {
        assert_eq!(claw_back(&[1, 1, 1], &[false, true, true]), vec![1, 1, 2]);
        assert_eq!(claw_back(&[1, 2, 2], &[false, true, true]), vec![1, 2, 2]);
    }

    #[test]
    fn cb_identity() {
        let id = Witness::<String, String>::identity(vec![s("1"), s("2")]).unwrap();
        for v in [CbVariant::GiveForward, CbVariant::ClawBack] {
            assert_eq!(cb_combine(&id, &id, v).unwrap().pairs().count(), 2);
            assert_eq!(cb_combine(&id, &id, v).unwrap().get(&s("1")), Some(&s("1")));
        }
    }

    #[test]
    fn cb_two_element_swap() {
        let f = Witness::new(vec![0usize, 1], vec![s("p"), s("q")], [(0, s("p")), (1, s("q"))]).unwrap();
        let g = Witness::new(vec![s("p"), s("q")], vec![0usize, 1], [(s("p"), 1), (s("q"), 0)]).unwrap();
        let h = cb_combine(&f, &g, CbVariant::GiveForward).unwrap();
        assert_eq!(h.get(&0), Some(&s("q")));
        assert_eq!(h.get(&1), Some(&s("p")));
    }

    #[test]
    fn cb_rejects_non_injective() {
        let f = Witness::new(vec![0usize, 1], vec![0usize, 1], [(0, 0), (1, 0)]).unwrap();
        let g = Witness::<usize, usize>::identity(vec![0, 1]).unwrap();
        assert!(matches!(cb_combine(&f, &g, CbVariant::GiveForward), Err(LawError::Witness(_))));
    }

    type H = Witness<Sum<String, String>, Sum<String, String>>;

    #[test]
    fn subtract_empty_c_is_h() {
        let h: H = Witness::new(
            vec![Sum::Left(s("a"))],
            vec![Sum::Left(s("b")), Sum::Left(s("d"))],
            [(Sum::Left(s("a")), Sum::Left(s("d")))],
        )
        .unwrap();
        assert_eq!(subtract(&h).unwrap().get(&s("a")), Some(&s("d")));
    }

    #[test]
    fn subtract_follows_the_path() {
        let h: H = Witness::new(
            vec![Sum::Left(s("a")), Sum::Right(s("c"))],
            vec![Sum::Left(s("b")), Sum::Right(s("c"))],
            [(Sum::Left(s("a")), Sum::Right(s("c"))), (Sum::Right(s("c")), Sum::Left(s("b")))],
        )
        .unwrap();
        assert_eq!(subtract(&h).unwrap().get(&s("a")), Some(&s("b")));
    }

    #[test]
    fn subtract_multi_checks_copy_counts() {
        let h: Witness<Sum<usize, (usize, usize)>, Sum<usize, (usize, usize)>> =
            Witness::new(vec![], vec![], []).unwrap();
        assert_eq!(subtract_multi(2, 2, &h).unwrap_err(), LawError::CopyCounts(2, 2));
    }

    #[test]
    fn subtract_multi_zero_copies_is_h() {
        let h: Witness<Sum<usize, (usize, usize)>, Sum<usize, (usize, usize)>> = Witness::new(
            vec![Sum::Left(0)],
            vec![Sum::Left(5), Sum::Right((0, 9))],
            [(Sum::Left(0), Sum::Right((0, 9)))],
        )
        .unwrap();
        let r = subtract_multi(0, 1, &h).unwrap();
        assert_eq!(r.get(&0), Some(&Sum::Right((0, 9))));
    }

    #[test]
    fn euclid_small_cases() {
        let mut rng = SimRng::new(5);
        for (m, n, a, b) in [(1, 2, 4, 2), (2, 3, 3, 2), (3, 5, 10, 6), (5, 3, 6, 10), (4, 7, 14, 8)] {
            let f = sample::product_bijection(&mut rng, m, a, n, b);
            for step in [EuclidStep::Naive, EuclidStep::Multi] {
                for method in [Method::Long, Method::Short] {
                    let q = euclid_divide(m, n, &sample::set(a), &sample::set(b), &f, step, method).unwrap();
                    assert_eq!(q.r.len() * n, a);
                    assert_eq!(verify_bijection(&q.a_wit), Ok(true));
                    assert_eq!(verify_bijection(&q.b_wit), Ok(true));
                }
            }
        }
    }

    #[test]
    fn euclid_depth_by_step() {
        let mut rng = SimRng::new(9);
        let f = sample::product_bijection(&mut rng, 2, 11, 11, 2);
        let set = |k| sample::set(k);
        let naive = euclid_divide(2, 11, &set(11), &set(2), &f, EuclidStep::Naive, Method::Short).unwrap();
        let multi = euclid_divide(2, 11, &set(11), &set(2), &f, EuclidStep::Multi, Method::Short).unwrap();
        assert!(multi.depth < naive.depth);
        assert!(naive.depth <= 2 + 11);
    }

    #[test]
    fn euclid_rejects_bad_input() {
        let mut rng = SimRng::new(1);
        let f = sample::product_bijection(&mut rng, 2, 2, 2, 2);
        let e = euclid_divide(2, 2, &sample::set(2), &sample::set(2), &f, EuclidStep::Naive, Method::Short);
        assert_eq!(e.unwrap_err(), LawError::NotCoprime(2, 2));
        let f = sample::product_bijection(&mut rng, 2, 3, 3, 2);
        let e = euclid_divide(2, 3, &sample::set(3), &sample::set(3), &f, EuclidStep::Naive, Method::Short);
        assert!(matches!(e, Err(LawError::SizeMismatch { .. })));
    }

    #[test]
    fn general_divide_cases() {
        let mut rng = SimRng::new(2);
        for (m, n, a, b) in [(2, 2, 3, 3), (2, 4, 4, 2), (4, 6, 6, 4), (3, 3, 5, 5)] {
            let f = sample::product_bijection(&mut rng, m, a, n, b);
            let q = general_divide(m, n, &sample::set(a), &sample::set(b), &f, EuclidStep::Multi, Method::Short).unwrap();
            let d = m.gcd(&n);
            assert_eq!(q.r.len() * (n / d), a);
            assert_eq!(q.r.len() * (m / d), b);
            assert_eq!(verify_bijection(&q.a_wit), Ok(true));
            assert_eq!(verify_bijection(&q.b_wit), Ok(true));
        }
    }

    #[test]
    fn cancel_to_bijection_cases() {
        let mut rng = SimRng::new(4);
        let f = sample::product_injection(&mut rng, 3, 40, 40);
        let g = sample::injection(&mut rng, 40, 40);
        let w = cancel_to_bijection(3, &sample::set(40), &sample::set(40), &f, &g).unwrap();
        assert_eq!(verify_bijection(&w), Ok(true));
        let f1 = sample::product_injection(&mut rng, 1, 5, 5);
        let w1 = cancel_to_bijection(1, &sample::set(5), &sample::set(5), &f1, &g_small(&mut rng)).unwrap();
        assert_eq!(verify_injection(&w1), Ok(true));
    }

    fn g_small(rng: &mut SimRng) -> Witness<usize, usize> {
        sample::injection(rng, 5, 5)
    }
}
