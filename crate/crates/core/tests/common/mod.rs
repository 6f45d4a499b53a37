#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use gab_core::{BasisBlade, Multivector, Signature};
use proptest::prelude::*;

pub fn sig(n: usize) -> Arc<Signature> {
    static SIGS: OnceLock<Vec<Arc<Signature>>> = OnceLock::new();
    SIGS.get_or_init(|| (2..=6).map(|n| Signature::cga(n).unwrap()).collect())[n - 2].clone()
}

fn coeff() -> impl Strategy<Value = f64> {
    prop_oneof![2 => Just(0.0), 3 => (-5i32..=5).prop_map(f64::from)]
}

/// Integer multivector over the blades accepted by `keep`.
pub fn mv_where(n: usize, keep: fn(&Signature, BasisBlade) -> bool) -> impl Strategy<Value = Multivector> {
    let s = sig(n);
    let blades: Vec<BasisBlade> = (0..s.blade_count() as u32)
        .map(BasisBlade)
        .filter(|&b| keep(&s, b))
        .collect();
    prop::collection::vec(coeff(), blades.len())
        .prop_map(move |cs| Multivector::from_terms(&s, blades.iter().copied().zip(cs)))
}

pub fn mv(n: usize) -> impl Strategy<Value = Multivector> {
    mv_where(n, |_, _| true)
}

/// Element of the projective copy without `ni`.
pub fn mv0(n: usize) -> impl Strategy<Value = Multivector> {
    mv_where(n, |s, b| !b.contains(s.infinity().unwrap()))
}

pub fn vector(n: usize) -> impl Strategy<Value = Multivector> {
    mv_where(n, |_, b| b.grade() == 1)
}

pub fn coords(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((-5i32..=5).prop_map(f64::from), n)
}

/// Outer product of `grade` vectors drawn from the generators in `mask`.
pub fn blade_in(n: usize, grade: usize, mask: u32) -> impl Strategy<Value = Multivector> {
    let s = sig(n);
    let gens: Vec<BasisBlade> = (0..s.dim())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| BasisBlade(1 << i))
        .collect();
    prop::collection::vec(
        prop::collection::vec((-3i32..=3).prop_map(f64::from), gens.len()),
        grade,
    )
    .prop_map(move |vs| {
        vs.into_iter().fold(Multivector::scalar(&s, 1.0), |acc, cs| {
            let v = Multivector::from_terms(&s, gens.iter().copied().zip(cs));
            acc.outer_product(&v).unwrap()
        })
    })
}

pub fn all_mask(n: usize) -> u32 {
    (1 << (n + 2)) - 1
}

pub fn cga0_mask(n: usize) -> u32 {
    (1 << (n + 1)) - 1
}
