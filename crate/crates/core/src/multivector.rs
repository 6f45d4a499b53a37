//! Sparse multivectors and the products on them.
//!
//! Two product implementations are kept side by side:
//!
//! * [`Multivector::geometric_product`] maps both operands onto an orthogonal
//!   basis (for CGA the null pair `e0, ni` becomes `e+, e-`), multiplies with
//!   the bitmask rule, and maps back.
//! * [`Multivector::oracle_product`] expands the product multilinearly using
//!   the Gram matrix directly, never leaving the null basis.
//!
//! Every product coefficient is the correctly rounded value of the exact
//! sum of its terms, so the two paths agree bit for bit on any input. Small
//! integer operands, where every partial sum is exact anyway, take a plain
//! accumulation shortcut.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, BitOr, BitXor, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{GaError, Result};
use crate::exact::ExactSums;
use crate::signature::{accumulate, reorder_sign, BasisBlade, Signature};

/// Magnitude below which coefficients are dropped after floating-point
/// operations such as versor sandwiches.
pub const FLOAT_PRUNE: f64 = 1e-12;

#[derive(Clone)]
pub struct Multivector {
    sig: Arc<Signature>,
    terms: BTreeMap<u32, f64>,
}

impl PartialEq for Multivector {
    fn eq(&self, other: &Self) -> bool {
        *self.sig == *other.sig && self.terms == other.terms
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self, self.sig)
    }
}

impl Multivector {
    pub fn zero(sig: &Arc<Signature>) -> Self {
        Multivector {
            sig: Arc::clone(sig),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(sig: &Arc<Signature>, value: f64) -> Self {
        Self::blade(sig, BasisBlade::SCALAR, value)
    }

    pub fn blade(sig: &Arc<Signature>, blade: BasisBlade, coeff: f64) -> Self {
        assert!(
            (blade.0 as usize) < sig.blade_count(),
            "blade {:b} is not part of {sig}",
            blade.0
        );
        let mut terms = BTreeMap::new();
        if coeff != 0.0 {
            terms.insert(blade.0, coeff);
        }
        Multivector {
            sig: Arc::clone(sig),
            terms,
        }
    }

    /// Single generator by bit index.
    pub fn generator(sig: &Arc<Signature>, index: usize) -> Self {
        Self::blade(sig, BasisBlade(1 << index), 1.0)
    }

    /// Basis element from its literal name (`e0`, `e032`, `ni`); the
    /// permutation sign is folded into the coefficient.
    pub fn basis(sig: &Arc<Signature>, name: &str) -> Result<Self> {
        let (blade, sign) = sig.parse_blade(name)?;
        Ok(Self::blade(sig, blade, sign))
    }

    pub fn from_terms(sig: &Arc<Signature>, terms: impl IntoIterator<Item = (BasisBlade, f64)>) -> Self {
        let mut out = Self::zero(sig);
        for (blade, c) in terms {
            assert!((blade.0 as usize) < sig.blade_count());
            *out.terms.entry(blade.0).or_insert(0.0) += c;
        }
        out.terms.retain(|_, c| *c != 0.0);
        out
    }

    /// Grade-1 vector on the Euclidean generators `e1..en`.
    pub fn euclidean_vector(sig: &Arc<Signature>, coords: &[f64]) -> Self {
        assert!(coords.len() <= sig.n(), "too many coordinates for {sig}");
        Self::from_terms(
            sig,
            coords
                .iter()
                .enumerate()
                .map(|(i, &c)| (BasisBlade(1 << sig.euclidean_index(i + 1)), c)),
        )
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn get(&self, blade: BasisBlade) -> f64 {
        self.terms.get(&blade.0).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisBlade, f64)> + '_ {
        self.terms.iter().map(|(&b, &c)| (BasisBlade(b), c))
    }

    /// Terms in display order (grade, then lexicographic generator list).
    pub fn canonical_terms(&self) -> Vec<(BasisBlade, f64)> {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|a, b| a.0.canonical_cmp(b.0));
        terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Distinct grades present, ascending.
    pub fn grades(&self) -> Vec<u32> {
        let mut g: Vec<u32> = self.terms.keys().map(|b| b.count_ones()).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// `Some(k)` when every term has grade `k`.
    pub fn single_grade(&self) -> Option<u32> {
        match self.grades().as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    pub fn scalar_part(&self) -> f64 {
        self.get(BasisBlade::SCALAR)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Largest coefficient difference against `other`.
    pub fn max_abs_diff(&self, other: &Multivector) -> f64 {
        self.check_same(other).expect("signature mismatch");
        let mut worst: f64 = 0.0;
        for (b, c) in &self.terms {
            worst = worst.max((c - other.terms.get(b).copied().unwrap_or(0.0)).abs());
        }
        for (b, c) in &other.terms {
            if !self.terms.contains_key(b) {
                worst = worst.max(c.abs());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &Multivector, tol: f64) -> bool {
        *self.sig == *other.sig && self.max_abs_diff(other) <= tol
    }

    /// Drops coefficients with magnitude at or below `eps`.
    pub fn pruned(mut self, eps: f64) -> Self {
        self.terms.retain(|_, c| c.abs() > eps);
        self
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= factor;
        }
        out.terms.retain(|_, c| *c != 0.0);
        out
    }

    pub fn map_terms(&self, mut f: impl FnMut(BasisBlade, f64) -> (BasisBlade, f64)) -> Self {
        Self::from_terms(&self.sig, self.terms().map(|(b, c)| f(b, c)))
    }

    /// Keeps only the terms whose blade satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(BasisBlade) -> bool) -> Self {
        let mut out = self.clone();
        out.terms.retain(|&b, _| keep(BasisBlade(b)));
        out
    }

    pub fn grade(&self, k: u32) -> Self {
        self.filter(|b| b.grade() == k)
    }

    pub fn reverse(&self) -> Self {
        self.map_terms(|b, c| {
            let k = b.grade();
            let flip = (k * k.saturating_sub(1) / 2) % 2 == 1;
            (b, if flip { -c } else { c })
        })
    }

    pub fn grade_involution(&self) -> Self {
        self.map_terms(|b, c| (b, if b.grade() % 2 == 1 { -c } else { c }))
    }

    fn check_same(&self, other: &Multivector) -> Result<()> {
        if *self.sig == *other.sig {
            Ok(())
        } else {
            Err(GaError::SignatureMismatch {
                left: self.sig.to_string(),
                right: other.sig.to_string(),
            })
        }
    }

    fn from_dense(sig: &Arc<Signature>, dense: &[f64]) -> Self {
        let terms = dense
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(b, &c)| (b as u32, c))
            .collect();
        Multivector {
            sig: Arc::clone(sig),
            terms,
        }
    }

    pub fn try_add(&self, other: &Multivector) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&b, &c) in &other.terms {
            *out.terms.entry(b).or_insert(0.0) += c;
        }
        out.terms.retain(|_, c| *c != 0.0);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Multivector) -> Result<Self> {
        self.try_add(&other.scale(-1.0))
    }

    /// Clifford product via the orthogonal internal basis.
    pub fn geometric_product(&self, other: &Multivector) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.internal_product(other, |_, _, _| true))
    }

    /// Sum of `a b` over pairs of internal blades whose grades pass `keep`.
    /// The change to the internal basis preserves grade, so grade filters
    /// here act exactly as on the external blades.
    fn internal_product(&self, other: &Multivector, keep: impl Fn(u32, u32, u32) -> bool) -> Self {
        let sig = &self.sig;
        let size = sig.blade_count();
        let admit = |a: u32, b: u32| keep(a.count_ones(), b.count_ones(), (a ^ b).count_ones());

        if !plain_sum_is_exact(self, other) {
            let mut sums = ExactSums::new(size);
            for (&a, &ca) in &self.terms {
                for (&b, &cb) in &other.terms {
                    for &(ia, wa) in sig.to_internal(a) {
                        for &(ib, wb) in sig.to_internal(b) {
                            let weight = sig.internal_sign(ia, ib);
                            if weight == 0.0 || !admit(ia, ib) {
                                continue;
                            }
                            for &(r, wr) in sig.to_external(ia ^ ib) {
                                sums.add(r, ca, cb, wa * wb * weight * wr);
                            }
                        }
                    }
                }
            }
            return Self::from_dense(sig, &sums.finish());
        }

        let internal = |mv: &Multivector| -> Vec<(u32, f64)> {
            if sig.is_diagonal() {
                return mv.terms().map(|(b, c)| (b.0, c)).collect();
            }
            let mut dense = vec![0.0; size];
            for (&b, &c) in &mv.terms {
                for &(ib, w) in sig.to_internal(b) {
                    dense[ib as usize] += c * w;
                }
            }
            dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0.0)
                .map(|(b, c)| (b as u32, c))
                .collect()
        };
        let lhs = internal(self);
        let rhs = internal(other);

        let mut product = vec![0.0; size];
        for &(a, ca) in &lhs {
            for &(b, cb) in &rhs {
                let weight = sig.internal_sign(a, b);
                if weight != 0.0 && admit(a, b) {
                    product[(a ^ b) as usize] += weight * ca * cb;
                }
            }
        }

        if sig.is_diagonal() {
            return Self::from_dense(sig, &product);
        }
        let mut external = vec![0.0; size];
        for (ib, &v) in product.iter().enumerate() {
            if v != 0.0 {
                for &(eb, w) in sig.to_external(ib as u32) {
                    external[eb as usize] += v * w;
                }
            }
        }
        Self::from_dense(sig, &external)
    }

    /// Clifford product by direct multilinear expansion over the Gram matrix.
    pub fn oracle_product(&self, other: &Multivector) -> Result<Self> {
        self.check_same(other)?;
        let sig = &self.sig;
        let size = sig.blade_count();
        let table = sig.oracle_table(|| build_oracle_table(sig));
        let mut sink = Sink::new(self, other);
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &other.terms {
                for &(r, w) in &table[a as usize * size + b as usize] {
                    sink.add(r, ca, cb, w);
                }
            }
        }
        Ok(sink.finish(sig))
    }

    /// Outer product. Blades are outer products of generators, so this is
    /// metric independent: disjoint blades concatenate, overlapping ones
    /// vanish.
    pub fn outer_product(&self, other: &Multivector) -> Result<Self> {
        self.check_same(other)?;
        let mut sink = Sink::new(self, other);
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &other.terms {
                if a & b == 0 {
                    sink.add(a | b, ca, cb, reorder_sign(a, b));
                }
            }
        }
        Ok(sink.finish(&self.sig))
    }

    /// Left contraction `A ⌋ B`: for blades of grades `r <= s` the grade
    /// `s - r` part of the geometric product, zero when `r > s`.
    pub fn left_contraction(&self, other: &Multivector) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.internal_product(other, |ga, gb, gr| ga <= gb && gr == gb - ga))
    }

    /// Left contraction evaluated generator by generator through
    /// `(a ∧ A') ⌋ B = a ⌋ (A' ⌋ B)` and the Gram expansion of a vector
    /// contraction. Independent of the internal basis.
    pub fn left_contraction_oracle(&self, other: &Multivector) -> Result<Self> {
        self.check_same(other)?;
        let sig = &self.sig;
        let mut sink = Sink::new(self, other);
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &other.terms {
                if a.count_ones() > b.count_ones() {
                    continue;
                }
                let mut current: Vec<(u32, f64)> = vec![(b, 1.0)];
                let gens: Vec<usize> = BasisBlade(a).generators().collect();
                for &g in gens.iter().rev() {
                    let mut next = Vec::new();
                    for &(blade, c) in &current {
                        vector_contract(sig, g, blade, c, &mut next);
                    }
                    current = next;
                    if current.is_empty() {
                        break;
                    }
                }
                for (r, w) in current {
                    sink.add(r, ca, cb, w);
                }
            }
        }
        Ok(sink.finish(sig))
    }

    /// Scalar part of `A B`.
    pub fn scalar_product(&self, other: &Multivector) -> Result<f64> {
        Ok(self.geometric_product(other)?.scalar_part())
    }
}

/// Integer operands small enough that a running sum of any product stays
/// exact: magnitudes below 2^45 leave room for the quarter factors of the
/// null-basis change and the product weights.
fn plain_sum_is_exact(a: &Multivector, b: &Multivector) -> bool {
    let bound = |m: &Multivector| {
        m.terms
            .values()
            .all(|c| c.fract() == 0.0)
            .then(|| m.max_abs() * m.len() as f64)
    };
    match (bound(a), bound(b)) {
        (Some(x), Some(y)) => x * y <= 2f64.powi(45),
        _ => false,
    }
}

enum Sink {
    Plain(Vec<f64>),
    Exact(ExactSums),
}

impl Sink {
    fn new(a: &Multivector, b: &Multivector) -> Self {
        let size = a.sig.blade_count();
        if plain_sum_is_exact(a, b) {
            Sink::Plain(vec![0.0; size])
        } else {
            Sink::Exact(ExactSums::new(size))
        }
    }

    fn add(&mut self, r: u32, a: f64, b: f64, w: f64) {
        match self {
            Sink::Plain(dense) => dense[r as usize] += w * a * b,
            Sink::Exact(sums) => sums.add(r, a, b, w),
        }
    }

    fn finish(self, sig: &Arc<Signature>) -> Multivector {
        match self {
            Sink::Plain(dense) => Multivector::from_dense(sig, &dense),
            Sink::Exact(sums) => Multivector::from_dense(sig, &sums.finish()),
        }
    }
}

/// `x ⌋ blade` for the generator `x`, accumulated into `out`.
fn vector_contract(sig: &Signature, x: usize, blade: u32, coeff: f64, out: &mut Vec<(u32, f64)>) {
    for &(j, g) in sig.gram_row(x) {
        let bit = 1u32 << j;
        if blade & bit != 0 {
            let below = (blade & (bit - 1)).count_ones();
            let sign = if below.is_multiple_of(2) { 1.0 } else { -1.0 };
            accumulate(out, blade & !bit, sign * g * coeff);
        }
    }
    out.retain(|&(_, c)| c != 0.0);
}

/// Full blade-by-blade product table, filled in order of increasing grade of
/// the left factor using `a A' = a ⌋ A' + a ∧ A'`, i.e.
/// `(a ∧ A') B = a (A' B) - (a ⌋ A') B`.
fn build_oracle_table(sig: &Signature) -> Vec<Vec<(u32, f64)>> {
    let size = sig.blade_count();
    let mut table: Vec<Vec<(u32, f64)>> = vec![Vec::new(); size * size];
    let mut order: Vec<u32> = (0..size as u32).collect();
    order.sort_by_key(|b| b.count_ones());

    for &a in &order {
        for b in 0..size as u32 {
            let entry = if a == 0 {
                vec![(b, 1.0)]
            } else {
                let first = a.trailing_zeros() as usize;
                let rest = a & !(1 << first);
                let mut acc: Vec<(u32, f64)> = Vec::new();
                for &(blade, c) in &table[rest as usize * size + b as usize] {
                    // first * blade = first ⌋ blade + first ∧ blade
                    let mut tmp = Vec::new();
                    vector_contract(sig, first, blade, c, &mut tmp);
                    for (r, w) in tmp {
                        accumulate(&mut acc, r, w);
                    }
                    let bit = 1u32 << first;
                    if blade & bit == 0 {
                        accumulate(&mut acc, blade | bit, reorder_sign(bit, blade) * c);
                    }
                }
                let mut contraction = Vec::new();
                vector_contract(sig, first, rest, 1.0, &mut contraction);
                for (lower, w) in contraction {
                    for &(blade, c) in &table[lower as usize * size + b as usize] {
                        accumulate(&mut acc, blade, -w * c);
                    }
                }
                acc.retain(|&(_, c)| c != 0.0);
                acc
            };
            table[a as usize * size + b as usize] = entry;
        }
    }
    table
}

fn format_coeff(c: f64) -> String {
    format!("{c}")
}

impl fmt::Display for Multivector {
    /// Canonical rendering: `1*e0 + 1*e1 + 0.5*ni`, terms ordered by grade
    /// then generator list, scalars as bare numbers, `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.canonical_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (blade, c)) in terms.into_iter().enumerate() {
            let magnitude = if i == 0 {
                format_coeff(c)
            } else if c < 0.0 {
                f.write_str(" - ")?;
                format_coeff(-c)
            } else {
                f.write_str(" + ")?;
                format_coeff(c)
            };
            if blade.0 == 0 {
                f.write_str(&magnitude)?;
            } else {
                write!(f, "{magnitude}*{}", self.sig.blade_name(blade))?;
            }
        }
        Ok(())
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl $trait<&Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                self.$impl_fn(rhs).expect("operands must share a signature")
            }
        }
        impl $trait<Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                (&self).$method(rhs)
            }
        }
        impl $trait<Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                self.$method(&rhs)
            }
        }
    };
}

// Operators panic on signature mismatch; the `try_*`/named methods return
// errors instead.
binary_op!(Mul, mul, geometric_product);
binary_op!(BitXor, bitxor, outer_product);
binary_op!(BitOr, bitor, left_contraction);
binary_op!(Add, add, try_add);
binary_op!(Sub, sub, try_sub);

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}
