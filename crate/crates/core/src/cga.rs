//! The conformal model: embedding of Euclidean points as null vectors,
//! flats spanned with `ni`, dual spheres, the conformal duality, and the
//! Euclidean versors.

use std::sync::Arc;

use crate::entity::{GeometricEntity, Kind, Representation};
use crate::error::{GaError, Result};
use crate::multivector::{Multivector, FLOAT_PRUNE};
use crate::signature::{BasisBlade, Model, Signature};
use crate::versor::Versor;

/// Relative tolerance for incidence tests and point validation.
pub const INCIDENCE_TOL: f64 = 1e-9;

pub(crate) fn require_conformal(sig: &Signature) -> Result<usize> {
    match sig.model() {
        Model::Cga(n) => Ok(n),
        _ => Err(GaError::NotConformal),
    }
}

/// `e0`, the origin.
pub fn origin(sig: &Arc<Signature>) -> Multivector {
    Multivector::generator(sig, 0)
}

/// `ni`, the point at infinity.
pub fn infinity(sig: &Arc<Signature>) -> Multivector {
    Multivector::generator(sig, sig.n() + 1)
}

fn is_euclidean_vector(p: &Multivector) -> bool {
    let euclid = p.signature().euclidean_blade().0;
    p.terms().all(|(b, _)| b.grade() == 1 && b.0 & !euclid == 0)
}

/// Conformal pseudoscalar `I_c = e0 ∧ e1 ∧ ... ∧ en ∧ ni`.
pub fn pseudoscalar(sig: &Arc<Signature>) -> Result<Multivector> {
    require_conformal(sig)?;
    Ok(Multivector::blade(sig, sig.pseudoscalar_blade(), 1.0))
}

/// `I_c^{-1} = (-1)^{n(n-1)/2} I_c`.
pub fn pseudoscalar_inverse(sig: &Arc<Signature>) -> Result<Multivector> {
    let n = require_conformal(sig)?;
    let sign = if (n * n.saturating_sub(1) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    Ok(Multivector::blade(sig, sig.pseudoscalar_blade(), sign))
}

/// Conformal duality `A* = A ⌋ I_c^{-1}`.
pub fn cga_dual(a: &Multivector) -> Result<Multivector> {
    let inv = pseudoscalar_inverse(a.signature())?;
    a.left_contraction(&inv)
}

/// Inverse of [`cga_dual`]: `A = A* ⌋ I_c`.
pub fn cga_undual(a: &Multivector) -> Result<Multivector> {
    let ic = pseudoscalar(a.signature())?;
    a.left_contraction(&ic)
}

/// Embeds a Euclidean vector: `e0 + p + ½ (p·p) ni`.
pub fn up(p: &Multivector) -> Result<Multivector> {
    let sig = p.signature();
    require_conformal(sig)?;
    if !is_euclidean_vector(p) {
        return Err(GaError::NotEuclidean);
    }
    let norm_sq = p.terms().map(|(_, c)| c * c).sum::<f64>();
    Ok(&(&origin(sig) + p) + &infinity(sig).scale(0.5 * norm_sq))
}

/// [`up`] from coordinates.
pub fn up_coords(sig: &Arc<Signature>, coords: &[f64]) -> Result<Multivector> {
    up(&Multivector::euclidean_vector(sig, coords))
}

/// Recovers the Euclidean vector of a (scaled) conformal point.
pub fn down(point: &Multivector) -> Result<Multivector> {
    let sig = point.signature();
    require_conformal(sig)?;
    if point.is_zero() || point.single_grade() != Some(1) {
        return Err(GaError::NotAPoint);
    }
    let scale = point.max_abs();
    let w = point.get(BasisBlade(1));
    if w.abs() <= INCIDENCE_TOL * scale {
        return Err(GaError::PointAtInfinity);
    }
    let square = point.scalar_product(point)?;
    if square.abs() > INCIDENCE_TOL * scale * scale {
        return Err(GaError::NotAPoint);
    }
    let euclid = sig.euclidean_blade().0;
    Ok(point.filter(|b| b.0 & !euclid == 0).scale(1.0 / w))
}

/// Coordinates `(x1..xn)` of a Euclidean vector.
pub fn euclidean_coords(v: &Multivector) -> Vec<f64> {
    let sig = v.signature();
    (1..=sig.n())
        .map(|i| v.get(BasisBlade(1 << sig.euclidean_index(i))))
        .collect()
}

/// Coordinates of a conformal point.
pub fn point_coords(point: &Multivector) -> Result<Vec<f64>> {
    Ok(euclidean_coords(&down(point)?))
}

fn span(kind: Kind, points: &[&Multivector]) -> Result<GeometricEntity> {
    let sig = points[0].signature();
    require_conformal(sig)?;
    let mut value = Multivector::scalar(sig, 1.0);
    let mut scale = 1.0;
    for p in points {
        if p.single_grade() != Some(1) {
            return Err(GaError::NotAPoint);
        }
        value = value.outer_product(p)?;
        scale *= p.max_abs();
    }
    value = value.outer_product(&infinity(sig))?;
    if value.max_abs() <= FLOAT_PRUNE * scale {
        return Err(GaError::DegenerateSpan(kind));
    }
    GeometricEntity::new(kind, Representation::OpnsCga, value)
}

/// `P ∧ ni`.
pub fn flat_point(p: &Multivector) -> Result<GeometricEntity> {
    span(Kind::FlatPoint, &[p])
}

/// `P1 ∧ P2 ∧ ni`.
pub fn cga_line(p1: &Multivector, p2: &Multivector) -> Result<GeometricEntity> {
    span(Kind::Line, &[p1, p2])
}

/// `P1 ∧ P2 ∧ P3 ∧ ni`.
pub fn cga_plane(p1: &Multivector, p2: &Multivector, p3: &Multivector) -> Result<GeometricEntity> {
    span(Kind::Plane, &[p1, p2, p3])
}

/// Dual sphere `up(c) - ½ r² ni`; radius zero gives the point itself.
pub fn sphere_dual(center: &Multivector, radius: f64) -> Result<GeometricEntity> {
    if radius < 0.0 || radius.is_nan() {
        return Err(GaError::NegativeRadius(radius));
    }
    let sig = center.signature();
    let value = &up(center)? - &infinity(sig).scale(0.5 * radius * radius);
    GeometricEntity::new(Kind::Sphere, Representation::IpnsCga, value)
}

/// Converts an entity to the other CGA representation.
pub fn dualize(entity: &GeometricEntity) -> Result<GeometricEntity> {
    let (repr, value) = match entity.representation() {
        Representation::OpnsCga => (Representation::IpnsCga, cga_dual(entity.value())?),
        Representation::IpnsCga => (Representation::OpnsCga, cga_undual(entity.value())?),
        Representation::Pga => {
            return Err(GaError::RepresentationMismatch {
                expected: Representation::OpnsCga,
                found: Representation::Pga,
            })
        }
    };
    GeometricEntity::new(entity.kind(), repr, value)
}

fn relative(residual: &Multivector, a: &Multivector, b: &Multivector) -> f64 {
    let scale = a.max_abs() * b.max_abs();
    if scale == 0.0 {
        0.0
    } else {
        residual.max_abs() / scale
    }
}

fn require_repr(entity: &GeometricEntity, expected: Representation) -> Result<()> {
    if entity.representation() == expected {
        Ok(())
    } else {
        Err(GaError::RepresentationMismatch {
            expected,
            found: entity.representation(),
        })
    }
}

fn require_point(p: &Multivector) -> Result<()> {
    require_conformal(p.signature())?;
    if p.single_grade() == Some(1) {
        Ok(())
    } else {
        Err(GaError::NotAPoint)
    }
}

/// Relative size of `P ∧ A`.
pub fn opns_residual(p: &Multivector, entity: &GeometricEntity) -> Result<f64> {
    require_point(p)?;
    require_repr(entity, Representation::OpnsCga)?;
    let r = p.outer_product(entity.value())?;
    Ok(relative(&r, p, entity.value()))
}

/// Relative size of `P ⌋ A*`.
pub fn ipns_residual(p: &Multivector, entity: &GeometricEntity) -> Result<f64> {
    require_point(p)?;
    require_repr(entity, Representation::IpnsCga)?;
    let r = p.left_contraction(entity.value())?;
    Ok(relative(&r, p, entity.value()))
}

/// `P ∧ A = 0`.
pub fn opns_contains(p: &Multivector, entity: &GeometricEntity) -> Result<bool> {
    Ok(opns_residual(p, entity)? <= INCIDENCE_TOL)
}

/// `P ⌋ A* = 0`.
pub fn ipns_contains(p: &Multivector, entity: &GeometricEntity) -> Result<bool> {
    Ok(ipns_residual(p, entity)? <= INCIDENCE_TOL)
}

/// `T_c = 1 - ½ t ni`.
pub fn cga_translator(t: &Multivector) -> Result<Versor> {
    let sig = t.signature();
    require_conformal(sig)?;
    if !is_euclidean_vector(t) {
        return Err(GaError::NotEuclidean);
    }
    let value = &Multivector::scalar(sig, 1.0) - &t.geometric_product(&infinity(sig))?.scale(0.5);
    Versor::new(value)
}

/// `R_c = cos(α/2) + sin(α/2) ℓ*` for a dual axis with `ℓ*·ℓ* = -1`.
pub fn cga_rotor(axis_dual: &Multivector, angle: f64) -> Result<Versor> {
    let sig = axis_dual.signature();
    require_conformal(sig)?;
    let square = axis_dual.scalar_product(axis_dual)?;
    if (square + 1.0).abs() > INCIDENCE_TOL {
        return Err(GaError::UnnormalizedAxis(square));
    }
    let half = angle / 2.0;
    let value = &Multivector::scalar(sig, half.cos()) + &axis_dual.scale(half.sin());
    Versor::new(value.pruned(FLOAT_PRUNE))
}

/// Rescales a dual line so that `ℓ*·ℓ* = -1`.
pub fn normalize_dual_line(axis_dual: &Multivector) -> Result<Multivector> {
    let square = axis_dual.scalar_product(axis_dual)?;
    if square >= 0.0 {
        return Err(GaError::IdealLine);
    }
    Ok(axis_dual.scale(1.0 / (-square).sqrt()))
}

/// Squared radius of a dual round `X` (dual sphere or dual circle):
/// `-X X̂ / (ni ⌋ X)²`.
pub fn dual_round_radius_sq(x: &Multivector) -> Result<f64> {
    let sig = x.signature();
    require_conformal(sig)?;
    let num = x.geometric_product(&x.grade_involution())?.scalar_part();
    let carrier = infinity(sig).left_contraction(x)?;
    let den = carrier.geometric_product(&carrier)?.scalar_part();
    if den == 0.0 {
        return Err(GaError::PointAtInfinity);
    }
    Ok(-num / den)
}

/// Center of a round, read from the sandwich `X ni X`.
pub fn round_center(x: &Multivector) -> Result<Multivector> {
    let sig = x.signature();
    require_conformal(sig)?;
    let c = x.geometric_product(&infinity(sig))?.geometric_product(x)?.grade(1);
    let scale = c.max_abs();
    down(&c.pruned(FLOAT_PRUNE * scale.max(1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig3() -> Arc<Signature> {
        Signature::cga(3).unwrap()
    }

    fn b(sig: &Arc<Signature>, name: &str) -> Multivector {
        Multivector::basis(sig, name).unwrap()
    }

    #[test]
    fn up_examples() {
        let sig = sig3();
        assert_eq!(up(&Multivector::zero(&sig)).unwrap(), b(&sig, "e0"));
        let p = up(&b(&sig, "e1")).unwrap();
        assert_eq!(p.to_string(), "1*e0 + 1*e1 + 0.5*ni");
        assert!(p.scalar_product(&p).unwrap() == 0.0);
        assert_eq!((&p | &infinity(&sig)).scalar_part(), -1.0);
        assert_eq!(up(&b(&sig, "e0")), Err(GaError::NotEuclidean));
        assert_eq!(up(&b(&sig, "e12")), Err(GaError::NotEuclidean));
    }

    #[test]
    fn down_examples() {
        let sig = sig3();
        assert!(down(&b(&sig, "e0")).unwrap().is_zero());
        let p = up(&b(&sig, "e1")).unwrap().scale(2.0);
        assert_eq!(down(&p).unwrap(), b(&sig, "e1"));
        assert_eq!(down(&infinity(&sig)), Err(GaError::PointAtInfinity));
        let not_null = &b(&sig, "e0") + &b(&sig, "e1");
        assert_eq!(down(&not_null), Err(GaError::NotAPoint));
    }

    #[test]
    fn duality_examples() {
        let sig = sig3();
        let ic = pseudoscalar(&sig).unwrap();
        assert_eq!(cga_dual(&ic).unwrap(), Multivector::scalar(&sig, 1.0));
        assert_eq!(cga_dual(&Multivector::scalar(&sig, 1.0)).unwrap(), -ic.clone());
        let a = &b(&sig, "e0ni") + &b(&sig, "e13");
        // A I⁻¹ I⁻¹ = A / I_c² = -A at n = 3
        assert_eq!(cga_dual(&cga_dual(&a).unwrap()).unwrap(), -a.clone());
        assert_eq!(cga_undual(&cga_dual(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn dual_flat_point_structure() {
        // (up(p) ∧ ni)* = I_E - p^{*E} ni, with p^{*E} = p ⌋ I_E^{-1}, I_E^{-1} = -e123
        let sig = sig3();
        let p = Multivector::euclidean_vector(&sig, &[2.0, -1.0, 3.0]);
        let fp = flat_point(&up(&p).unwrap()).unwrap();
        let ie = b(&sig, "e123");
        let p_dual = &p | &(-ie.clone());
        let expected = &ie - &(&p_dual * &infinity(&sig));
        assert_eq!(cga_dual(fp.value()).unwrap(), expected);
    }

    #[test]
    fn flats() {
        let sig = sig3();
        let o = up(&Multivector::zero(&sig)).unwrap();
        let x = up(&b(&sig, "e1")).unwrap();
        let line = cga_line(&o, &x).unwrap();
        assert_eq!(line.value(), &b(&sig, "e01ni"));
        assert_eq!(flat_point(&o).unwrap().value(), &b(&sig, "e0ni"));
        let x2 = up(&b(&sig, "e1").scale(2.0)).unwrap();
        assert_eq!(cga_plane(&o, &x, &x2), Err(GaError::DegenerateSpan(Kind::Plane)));
        assert_eq!(cga_line(&o, &o), Err(GaError::DegenerateSpan(Kind::Line)));
    }

    #[test]
    fn spheres() {
        let sig = sig3();
        let c = Multivector::euclidean_vector(&sig, &[1.0, 0.5, 0.0]);
        assert_eq!(sphere_dual(&c, 0.0).unwrap().value(), &up(&c).unwrap());
        let s = sphere_dual(&c, 0.5).unwrap();
        let expected = &up(&c).unwrap() - &infinity(&sig).scale(0.125);
        assert_eq!(s.value(), &expected);
        let on = up(&(&c + &b(&sig, "e1").scale(0.5))).unwrap();
        assert!(ipns_contains(&on, &s).unwrap());
        let off = up(&c).unwrap();
        assert!(!ipns_contains(&off, &s).unwrap());
        assert_eq!(sphere_dual(&c, -1.0), Err(GaError::NegativeRadius(-1.0)));
        assert!((dual_round_radius_sq(s.value()).unwrap() - 0.25).abs() < 1e-15);
        let center = round_center(s.value()).unwrap();
        assert!(center.approx_eq(&c, 1e-12));
    }

    #[test]
    fn incidence() {
        let sig = sig3();
        let line = cga_line(&up(&Multivector::zero(&sig)).unwrap(), &up(&b(&sig, "e1")).unwrap()).unwrap();
        assert!(opns_contains(&up(&b(&sig, "e1").scale(-7.0)).unwrap(), &line).unwrap());
        assert!(!opns_contains(&up(&b(&sig, "e2")).unwrap(), &line).unwrap());
        let dual = dualize(&line).unwrap();
        assert_eq!(dual.representation(), Representation::IpnsCga);
        assert!(ipns_contains(&up(&b(&sig, "e1").scale(3.0)).unwrap(), &dual).unwrap());
        assert!(matches!(
            ipns_contains(&up(&b(&sig, "e1")).unwrap(), &line),
            Err(GaError::RepresentationMismatch { .. })
        ));
    }

    #[test]
    fn versors() {
        let sig = sig3();
        let t0 = cga_translator(&Multivector::zero(&sig)).unwrap();
        assert_eq!(t0.value(), &Multivector::scalar(&sig, 1.0));
        let t = cga_translator(&b(&sig, "e1")).unwrap();
        let moved = t.apply(&up(&Multivector::zero(&sig)).unwrap()).unwrap();
        assert_eq!(down(&moved).unwrap(), b(&sig, "e1"));

        let axis = cga_dual(&b(&sig, "e03ni")).unwrap();
        let axis = normalize_dual_line(&axis).unwrap();
        let r0 = cga_rotor(&axis, 0.0).unwrap();
        assert_eq!(r0.value(), &Multivector::scalar(&sig, 1.0));
        assert!(matches!(
            cga_rotor(&axis.scale(2.0), 1.0),
            Err(GaError::UnnormalizedAxis(_))
        ));
        // quarter turn about the e3 axis maps e1 to ±e2
        let r = cga_rotor(&axis, std::f64::consts::FRAC_PI_2).unwrap();
        let q = down(&r.apply(&up(&b(&sig, "e1")).unwrap()).unwrap()).unwrap();
        let coords = euclidean_coords(&q);
        assert!(coords[0].abs() < 1e-12 && (coords[1].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_conformal_signature_rejected() {
        let pga = Signature::pga(3).unwrap();
        assert_eq!(cga_dual(&Multivector::scalar(&pga, 1.0)), Err(GaError::NotConformal));
    }
}
