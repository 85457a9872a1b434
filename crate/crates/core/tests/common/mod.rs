#![allow(dead_code)]

use proptest::prelude::*;
use qed_core::{trace_inner, AdditiveCode, Gf4, Gf4Vector};

pub fn word(n: usize) -> impl Strategy<Value = Gf4Vector> {
    proptest::collection::vec(0usize..4, n)
        .prop_map(|d| Gf4Vector::from_symbols(&d.into_iter().map(|i| Gf4::ALL[i]).collect::<Vec<_>>()))
}

/// Any additive code of length `n` with up to `2n` candidate generators.
pub fn code(n: usize) -> impl Strategy<Value = AdditiveCode> {
    proptest::collection::vec(word(n), 0..=2 * n)
        .prop_map(move |rows| AdditiveCode::from_generators(n, rows).unwrap())
}

/// A self-orthogonal code: candidates are kept greedily while they commute
/// with everything kept so far.
pub fn stabilizer(n: usize) -> impl Strategy<Value = AdditiveCode> {
    proptest::collection::vec(word(n), 0..=n).prop_map(move |rows| {
        let mut kept: Vec<Gf4Vector> = Vec::new();
        for r in rows {
            if kept.iter().all(|g| !trace_inner(g, &r).unwrap()) {
                kept.push(r);
            }
        }
        AdditiveCode::from_generators(n, kept).unwrap()
    })
}

pub fn sized<S: Strategy>(max_n: usize, f: impl Fn(usize) -> S) -> BoxedStrategy<S::Value>
where
    S: 'static,
    S::Value: std::fmt::Debug,
{
    let strategies: Vec<_> = (1..=max_n).map(|n| f(n).boxed()).collect();
    proptest::strategy::Union::new(strategies).boxed()
}

pub fn all_words(n: usize) -> impl Iterator<Item = Gf4Vector> {
    (0..4u64.pow(n as u32)).map(move |i| Gf4Vector::from_index(n, i))
}
