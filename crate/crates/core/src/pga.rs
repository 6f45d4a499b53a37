//! Projective geometric algebra computed inside CGA.
//!
//! PGA elements are CGA multivectors without `ni` (the subalgebra `CGA0`).
//! The algebra automorphism [`sharp`] (`e0 ↦ -ni`, `ni ↦ -e0`, `ei ↦ ei`)
//! swaps `CGA0` with its twin `CGA∞`, where the direct representations of
//! flats live. Projective duality is a CGA contraction onto the PGA
//! pseudoscalar taken through `sharp`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cga::{self, require_conformal, INCIDENCE_TOL};
use crate::entity::{GeometricEntity, Kind, Representation};
use crate::error::{GaError, Result};
use crate::multivector::{Multivector, FLOAT_PRUNE};
use crate::signature::{reorder_sign, BasisBlade, Signature};
use crate::versor::Versor;

fn parity_sign(exponent: usize) -> f64 {
    if exponent.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `(-1)^{n(n+1)/2}`: the value of `I ⌋ sharp(I)` and the sign carried by
/// the projective duality in dimension `n`.
pub fn pga_sign(n: usize) -> f64 {
    parity_sign(n * (n + 1) / 2)
}

/// Applies `sharp` to every blade. Panics if `a` is not a conformal
/// multivector.
pub fn sharp(a: &Multivector) -> Multivector {
    let sig = a.signature();
    let n = require_conformal(sig).expect("sharp is defined on CGA multivectors");
    let inf = n + 1;
    a.map_terms(|blade, coeff| {
        let mut bits = 0u32;
        let mut sign = 1.0;
        for g in blade.generators() {
            let target = match g {
                0 => {
                    sign = -sign;
                    inf
                }
                g if g == inf => {
                    sign = -sign;
                    0
                }
                g => g,
            };
            let bit = 1u32 << target;
            sign *= reorder_sign(bits, bit);
            bits |= bit;
        }
        (BasisBlade(bits), sign * coeff)
    })
}

/// No stored blade contains `ni`.
pub fn is_in_cga0(a: &Multivector) -> bool {
    match a.signature().infinity() {
        Some(inf) => a.terms().all(|(b, _)| !b.contains(inf)),
        None => false,
    }
}

/// No stored blade contains `e0`.
pub fn is_in_cga_inf(a: &Multivector) -> bool {
    a.signature().infinity().is_some() && a.terms().all(|(b, _)| !b.contains(0))
}

fn require_cga0(a: &Multivector) -> Result<usize> {
    let n = require_conformal(a.signature())?;
    if is_in_cga0(a) {
        Ok(n)
    } else {
        Err(GaError::NotInCga0)
    }
}

/// PGA pseudoscalar `I = e0 ∧ e1 ∧ ... ∧ en`.
pub fn pga_pseudoscalar(sig: &Arc<Signature>) -> Result<Multivector> {
    let n = require_conformal(sig)?;
    Ok(Multivector::blade(sig, BasisBlade((1 << (n + 1)) - 1), 1.0))
}

/// Euclidean pseudoscalar `I_E = e1 ∧ ... ∧ en`.
pub fn euclidean_pseudoscalar(sig: &Arc<Signature>) -> Multivector {
    Multivector::blade(sig, sig.euclidean_blade(), 1.0)
}

/// Euclidean duality `X^{*E} = X ⌋ I_E^{-1}`.
pub fn euclidean_dual(x: &Multivector) -> Multivector {
    let sig = x.signature();
    let n = sig.n();
    let inv = euclidean_pseudoscalar(sig).scale(parity_sign(n * n.saturating_sub(1) / 2));
    x.left_contraction(&inv).expect("same signature")
}

/// Projective duality `A^{*P} = (-1)^{n(n+1)/2} sharp(A) ⌋ I`.
pub fn pga_dual(a: &Multivector) -> Result<Multivector> {
    let n = require_cga0(a)?;
    let i = pga_pseudoscalar(a.signature())?;
    Ok(sharp(a).left_contraction(&i)?.scale(pga_sign(n)))
}

/// Sign `d` with `pga_dual(pga_dual(A)) = d A`, measured on the scalar 1.
pub fn double_dual_sign(sig: &Arc<Signature>) -> Result<f64> {
    let one = Multivector::scalar(sig, 1.0);
    Ok(pga_dual(&pga_dual(&one)?)?.scalar_part())
}

/// Inverse of [`pga_dual`].
pub fn pga_undual(a: &Multivector) -> Result<Multivector> {
    let d = double_dual_sign(a.signature())?;
    Ok(pga_dual(a)?.scale(d))
}

/// The two CGA routes to the projective dual:
/// `sharp((A ∧ ni)*)` and `(sharp(A) ∧ e0)*`.
pub fn pga_dual_via_cga(a: &Multivector) -> Result<(Multivector, Multivector)> {
    require_cga0(a)?;
    let sig = a.signature();
    let through_inf = sharp(&cga::cga_dual(&a.outer_product(&cga::infinity(sig))?)?);
    let through_origin = cga::cga_dual(&sharp(a).outer_product(&cga::origin(sig))?)?;
    Ok((through_inf, through_origin))
}

/// Splits `A = C_E + D_E ∧ e0` into its Euclidean parts `(C_E, D_E)`.
pub fn split_origin(a: &Multivector) -> Result<(Multivector, Multivector)> {
    require_cga0(a)?;
    let c = a.filter(|b| !b.contains(0));
    let d = a.filter(|b| b.contains(0)).map_terms(|b, coeff| {
        // e0 ∧ X = (-1)^{|X|} X ∧ e0
        let rest = BasisBlade(b.0 & !1);
        (rest, parity_sign(rest.grade() as usize) * coeff)
    });
    Ok((c, d))
}

/// Projective dual from the Euclidean split:
/// `(C_E + D_E ∧ e0)^{*P} = (-1)^n D_E^{*E} + C_E^{*E} ∧ e0`.
pub fn coordinate_dual(a: &Multivector) -> Result<Multivector> {
    let n = require_cga0(a)?;
    let (c, d) = split_origin(a)?;
    let e0 = cga::origin(a.signature());
    let lhs = euclidean_dual(&d).scale(parity_sign(n));
    let rhs = euclidean_dual(&c).outer_product(&e0)?;
    lhs.try_add(&rhs)
}

/// Regressive product `A ∨ B`, the dual of the outer product of duals.
pub fn regressive(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    let joined = pga_dual(a)?.outer_product(&pga_dual(b)?)?;
    pga_undual(&joined)
}

/// Point as a grade-`n` PGA element: `I_E + (-1)^{n(n+1)/2} p^{*E} ∧ e0`.
/// The sign makes `pga_dual(pga_point(p)) = e0 + p` in every dimension; at
/// `n = 3` it is `x e032 + y e013 + z e021 + e123`.
pub fn pga_point(p: &Multivector) -> Result<GeometricEntity> {
    let sig = p.signature();
    let n = require_conformal(sig)?;
    let euclid = sig.euclidean_blade().0;
    if p.terms().any(|(b, _)| b.grade() != 1 || b.0 & !euclid != 0) {
        return Err(GaError::NotEuclidean);
    }
    let moment = euclidean_dual(p).outer_product(&cga::origin(sig))?;
    let value = euclidean_pseudoscalar(sig).try_add(&moment.scale(pga_sign(n)))?;
    GeometricEntity::new(Kind::Point, Representation::Pga, value)
}

/// [`pga_point`] from coordinates.
pub fn pga_point_coords(sig: &Arc<Signature>, coords: &[f64]) -> Result<GeometricEntity> {
    pga_point(&Multivector::euclidean_vector(sig, coords))
}

/// Euclidean coordinates of a PGA point, read from its homogeneous dual
/// `w e0 + x1 e1 + ...`.
pub fn pga_point_position(point: &Multivector) -> Result<Vec<f64>> {
    let homogeneous = pga_dual(point)?;
    let w = homogeneous.get(BasisBlade(1));
    if w.abs() <= INCIDENCE_TOL * homogeneous.max_abs() {
        return Err(GaError::PointAtInfinity);
    }
    Ok(cga::euclidean_coords(&homogeneous).into_iter().map(|x| x / w).collect())
}

fn regressive_span(kind: Kind, points: &[&GeometricEntity]) -> Result<GeometricEntity> {
    let mut value = points[0].value().clone();
    let mut scale = value.max_abs();
    for p in &points[1..] {
        value = regressive(&value, p.value())?;
        scale *= p.value().max_abs();
    }
    if value.max_abs() <= FLOAT_PRUNE * scale {
        return Err(GaError::DegenerateSpan(kind));
    }
    GeometricEntity::new(kind, Representation::Pga, value)
}

fn require_pga_points(points: &[&GeometricEntity]) -> Result<()> {
    for p in points {
        if p.representation() != Representation::Pga {
            return Err(GaError::RepresentationMismatch {
                expected: Representation::Pga,
                found: p.representation(),
            });
        }
    }
    Ok(())
}

/// `P1 ∨ P2`.
pub fn pga_line(p1: &GeometricEntity, p2: &GeometricEntity) -> Result<GeometricEntity> {
    require_pga_points(&[p1, p2])?;
    regressive_span(Kind::Line, &[p1, p2])
}

/// `P1 ∨ P2 ∨ P3`.
pub fn pga_plane(p1: &GeometricEntity, p2: &GeometricEntity, p3: &GeometricEntity) -> Result<GeometricEntity> {
    require_pga_points(&[p1, p2, p3])?;
    regressive_span(Kind::Plane, &[p1, p2, p3])
}

/// Relative size of `P ∨ A`; zero when the point lies on the object.
pub fn pga_incidence_residual(point: &Multivector, object: &Multivector) -> Result<f64> {
    let r = regressive(point, object)?;
    let scale = point.max_abs() * object.max_abs();
    Ok(if scale == 0.0 { 0.0 } else { r.max_abs() / scale })
}

pub fn pga_contains(point: &Multivector, object: &Multivector) -> Result<bool> {
    Ok(pga_incidence_residual(point, object)? <= INCIDENCE_TOL)
}

/// `T = 1 - ½ e0 t`.
pub fn pga_translator(t: &Multivector) -> Result<Versor> {
    let sig = t.signature();
    require_conformal(sig)?;
    let euclid = sig.euclidean_blade().0;
    if t.terms().any(|(b, _)| b.grade() != 1 || b.0 & !euclid != 0) {
        return Err(GaError::NotEuclidean);
    }
    let value = Multivector::scalar(sig, 1.0).try_sub(&cga::origin(sig).geometric_product(t)?.scale(0.5))?;
    Versor::new(value)
}

/// Rescales a PGA rotation axis so that `axis·axis = -1`. Ideal axes (no
/// Euclidean part) cannot be normalised.
pub fn normalize_axis(axis: &Multivector) -> Result<Multivector> {
    require_cga0(axis)?;
    let square = axis.scalar_product(axis)?;
    let size = axis.max_abs();
    if square.abs() <= FLOAT_PRUNE * size * size {
        return Err(GaError::IdealLine);
    }
    if square > 0.0 {
        return Err(GaError::UnnormalizedAxis(square));
    }
    Ok(axis.scale(1.0 / (-square).sqrt()))
}

/// `R = cos(α/2) + sin(α/2) ℓ` with `ℓ` normalised first.
pub fn pga_rotor(axis: &Multivector, angle: f64) -> Result<Versor> {
    let axis = normalize_axis(axis)?;
    let sig = axis.signature();
    let half = angle / 2.0;
    let value = Multivector::scalar(sig, half.cos()).try_add(&axis.scale(half.sin()))?;
    Versor::new(value.pruned(FLOAT_PRUNE))
}

/// One entry of the projective duality table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityTableRow {
    /// Input basis blade (`1`, `e0`, `e013`, ...).
    pub input: String,
    /// Letter naming the input coefficient (`a`, `b`, ...).
    pub symbol: String,
    /// Blade the input is sent to.
    pub output: String,
    /// `1` or `-1`.
    pub sign: i8,
}

/// `a..z`, then `aa, ab, ...`.
pub fn coefficient_symbol(mut index: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (index % 26) as u8);
        if index < 26 {
            break;
        }
        index = index / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

/// Projective dual of every PGA basis blade, in the order
/// `1, e0, e1, .., e01, e02, .., I` (grade, then generator list).
pub fn duality_table(n: usize) -> Result<Vec<DualityTableRow>> {
    if !(2..=6).contains(&n) {
        return Err(GaError::DimensionOutOfRange(n));
    }
    let sig = Signature::cga(n)?;
    let mut blades: Vec<BasisBlade> = (0..1u32 << (n + 1)).map(BasisBlade).collect();
    blades.sort_by(|a, b| a.canonical_cmp(*b));
    blades
        .into_iter()
        .enumerate()
        .map(|(i, blade)| {
            let dual = pga_dual(&Multivector::blade(&sig, blade, 1.0))?;
            let (out, coeff) = match dual.terms().collect::<Vec<_>>().as_slice() {
                [(b, c)] => (*b, *c),
                _ => unreachable!("dual of a basis blade is a signed basis blade"),
            };
            Ok(DualityTableRow {
                input: sig.blade_name(blade),
                symbol: coefficient_symbol(i),
                output: sig.blade_name(out),
                sign: if coeff > 0.0 { 1 } else { -1 },
            })
        })
        .collect()
}

/// Aligned text rendering, one `input → ±output` line per row.
pub fn render_table_text(rows: &[DualityTableRow]) -> String {
    let width = rows.iter().map(|r| r.input.len()).max().unwrap_or(0);
    let mut out = String::new();
    for row in rows {
        let sign = if row.sign < 0 { "-" } else { "" };
        out.push_str(&format!("{:>width$} → {sign}{}\n", row.input, row.output));
    }
    out
}
