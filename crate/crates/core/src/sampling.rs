//! Seeded generators of small-integer multivectors. Coefficients stay in
//! `[-5, 5]`, so every identity on the results is exact in `f64`.

use std::sync::Arc;

use rand::Rng;

use crate::multivector::Multivector;
use crate::signature::{BasisBlade, Signature};

pub const COEFF_RANGE: std::ops::RangeInclusive<i32> = -5..=5;

fn coeff<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    f64::from(rng.gen_range(COEFF_RANGE))
}

/// Every blade accepted by `keep` gets an independent coefficient.
pub fn random_multivector_where<R: Rng + ?Sized>(
    sig: &Arc<Signature>,
    rng: &mut R,
    mut keep: impl FnMut(BasisBlade) -> bool,
) -> Multivector {
    Multivector::from_terms(
        sig,
        (0..sig.blade_count() as u32)
            .map(BasisBlade)
            .filter(|&b| keep(b))
            .map(|b| (b, coeff(rng)))
            .collect::<Vec<_>>(),
    )
}

pub fn random_multivector<R: Rng + ?Sized>(sig: &Arc<Signature>, rng: &mut R) -> Multivector {
    random_multivector_where(sig, rng, |_| true)
}

/// Random element of the PGA copy without `ni`.
pub fn random_cga0<R: Rng + ?Sized>(sig: &Arc<Signature>, rng: &mut R) -> Multivector {
    let inf = sig.infinity().expect("conformal signature");
    random_multivector_where(sig, rng, |b| !b.contains(inf))
}

/// Random vector over the generators in `mask`.
pub fn random_vector_in<R: Rng + ?Sized>(sig: &Arc<Signature>, rng: &mut R, mask: u32) -> Multivector {
    random_multivector_where(sig, rng, |b| b.grade() == 1 && b.0 & mask != 0)
}

/// Outer product of `grade` random vectors over `mask`. May be zero.
pub fn random_blade_in<R: Rng + ?Sized>(sig: &Arc<Signature>, rng: &mut R, mask: u32, grade: u32) -> Multivector {
    (0..grade).fold(Multivector::scalar(sig, coeff(rng).max(1.0)), |acc, _| {
        acc.outer_product(&random_vector_in(sig, rng, mask))
            .expect("same signature")
    })
}

pub fn random_coords<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| coeff(rng)).collect()
}

/// Mask of `e0, e1..en` in a conformal signature.
pub fn cga0_mask(sig: &Signature) -> u32 {
    (1 << (sig.n() + 1)) - 1
}
