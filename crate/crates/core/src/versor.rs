use crate::error::{GaError, Result};
use crate::multivector::{Multivector, FLOAT_PRUNE};

/// Tolerance on the non-scalar part of `V ~V` for float-valued versors.
pub const VERSOR_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// An invertible product of vectors, acting on multivectors by the sandwich
/// `V X ~V`.
#[derive(Debug, Clone, PartialEq)]
pub struct Versor {
    value: Multivector,
    parity: Parity,
}

fn is_integral(mv: &Multivector) -> bool {
    mv.terms().all(|(_, c)| c.fract() == 0.0)
}

impl Versor {
    /// Validates that `value` has a single parity and that `V ~V` is a
    /// nonzero scalar (exactly for integer coefficients, within
    /// [`VERSOR_TOL`] otherwise).
    pub fn new(value: Multivector) -> Result<Self> {
        let grades = value.grades();
        let parity = match (grades.iter().all(|g| g % 2 == 0), grades.iter().all(|g| g % 2 == 1)) {
            (true, _) if !grades.is_empty() => Parity::Even,
            (_, true) => Parity::Odd,
            _ => return Err(GaError::NotAVersor),
        };
        let norm = &value * &value.reverse();
        let scalar = norm.scalar_part();
        let rest = norm.filter(|b| b.grade() != 0).max_abs();
        let ok = if is_integral(&value) {
            scalar != 0.0 && rest == 0.0
        } else {
            scalar.abs() > VERSOR_TOL && rest <= VERSOR_TOL * scalar.abs().max(1.0)
        };
        if ok {
            Ok(Versor { value, parity })
        } else {
            Err(GaError::NotAVersor)
        }
    }

    pub fn value(&self) -> &Multivector {
        &self.value
    }

    pub fn into_inner(self) -> Multivector {
        self.value
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// `V ~V`, a scalar.
    pub fn norm_squared(&self) -> f64 {
        (&self.value * &self.value.reverse()).scalar_part()
    }

    /// Composition: applying the result equals applying `other` first, then
    /// `self`.
    pub fn then_after(&self, other: &Versor) -> Result<Versor> {
        Versor::new(self.value.geometric_product(&other.value)?)
    }

    pub fn apply(&self, x: &Multivector) -> Result<Multivector> {
        let arg = match self.parity {
            Parity::Even => x.clone(),
            Parity::Odd => x.grade_involution(),
        };
        let out = self
            .value
            .geometric_product(&arg)?
            .geometric_product(&self.value.reverse())?;
        Ok(out.pruned(FLOAT_PRUNE))
    }
}

/// Rescales a versor so that `V ~V = ±1`.
pub fn normalize_versor(v: &Versor) -> Versor {
    let factor = v.norm_squared().abs().sqrt();
    Versor {
        value: v.value.scale(1.0 / factor),
        parity: v.parity,
    }
}

/// Sandwich `V X ~V`; `V` is expected to be normalised.
pub fn apply_versor(v: &Versor, x: &Multivector) -> Result<Multivector> {
    v.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Signature;

    #[test]
    fn accepts_rotor_and_rejects_null_element() {
        let sig = Signature::cga(3).unwrap();
        let e12 = Multivector::basis(&sig, "e12").unwrap();
        let half = std::f64::consts::FRAC_PI_8;
        let rotor = &Multivector::scalar(&sig, half.cos()) + &(&e12 * half.sin());
        let v = Versor::new(rotor).unwrap();
        assert_eq!(v.parity(), Parity::Even);
        assert!((v.norm_squared() - 1.0).abs() < 1e-15);

        let ni = Multivector::basis(&sig, "ni").unwrap();
        assert_eq!(Versor::new(ni), Err(GaError::NotAVersor));
        let mixed = &Multivector::scalar(&sig, 1.0) + &Multivector::basis(&sig, "e1").unwrap();
        assert_eq!(Versor::new(mixed), Err(GaError::NotAVersor));
    }

    #[test]
    fn reflection_in_a_plane_through_origin() {
        let sig = Signature::cga(3).unwrap();
        let e1 = Multivector::basis(&sig, "e1").unwrap();
        let mirror = Versor::new(e1.clone()).unwrap();
        assert_eq!(mirror.parity(), Parity::Odd);
        // -e1 X e1 on a vector reflects it in the plane orthogonal to e1
        assert_eq!(mirror.apply(&e1).unwrap(), -e1.clone());
        let e2 = Multivector::basis(&sig, "e2").unwrap();
        assert_eq!(mirror.apply(&e2).unwrap(), e2);
    }

    #[test]
    fn normalize_scales_to_unit() {
        let sig = Signature::cga(3).unwrap();
        let e12 = Multivector::basis(&sig, "e12").unwrap();
        let v = Versor::new(&Multivector::scalar(&sig, 3.0) + &(&e12 * 4.0)).unwrap();
        let n = normalize_versor(&v);
        assert!((n.norm_squared() - 1.0).abs() < 1e-15);
    }
}
