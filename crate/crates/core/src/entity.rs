use serde::{Deserialize, Serialize};

use crate::error::{GaError, Result};
use crate::multivector::Multivector;

/// Relative tolerance used by [`equivalent`].
pub const EQUIV_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    Point,
    FlatPoint,
    Line,
    Plane,
    Sphere,
    Circle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Representation {
    /// Direct (outer product null space) representation in CGA.
    #[serde(rename = "OPNS-CGA")]
    OpnsCga,
    /// Dual (inner product null space) representation in CGA.
    #[serde(rename = "IPNS-CGA")]
    IpnsCga,
    /// Regressive null space representation in the PGA copy without `ni`.
    #[serde(rename = "PGA")]
    Pga,
}

impl Representation {
    pub fn label(self) -> &'static str {
        match self {
            Representation::OpnsCga => "OPNS-CGA",
            Representation::IpnsCga => "IPNS-CGA",
            Representation::Pga => "PGA",
        }
    }
}

/// Grade a `(kind, representation)` pair must have in dimension `n`.
pub fn expected_grade(kind: Kind, repr: Representation, n: usize) -> Option<u32> {
    let n = n as u32;
    let total = n + 2;
    let opns = match kind {
        Kind::Point => 1,
        Kind::FlatPoint => 2,
        Kind::Line => 3,
        Kind::Plane => 4,
        Kind::Circle => 3,
        Kind::Sphere => n + 1,
    };
    match repr {
        Representation::OpnsCga => (opns <= total).then_some(opns),
        Representation::IpnsCga => match kind {
            Kind::Point => Some(1),
            _ => total.checked_sub(opns),
        },
        Representation::Pga => match kind {
            Kind::Point | Kind::FlatPoint => Some(n),
            Kind::Line => n.checked_sub(1),
            Kind::Plane => n.checked_sub(2),
            Kind::Sphere | Kind::Circle => None,
        },
    }
}

/// A multivector together with the object it stands for and how.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricEntity {
    kind: Kind,
    repr: Representation,
    value: Multivector,
}

impl GeometricEntity {
    pub fn new(kind: Kind, repr: Representation, value: Multivector) -> Result<Self> {
        let grades = value.grades();
        let expected = expected_grade(kind, repr, value.signature().n());
        match (expected, grades.as_slice()) {
            (Some(k), [g]) if *g == k => Ok(GeometricEntity { kind, repr, value }),
            _ => Err(GaError::GradeMismatch { kind, repr, grades }),
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn representation(&self) -> Representation {
        self.repr
    }

    pub fn value(&self) -> &Multivector {
        &self.value
    }

    pub fn into_value(self) -> Multivector {
        self.value
    }

    /// Same object: same kind and representation, values equal up to a
    /// nonzero scale.
    pub fn equivalent(&self, other: &GeometricEntity) -> bool {
        self.kind == other.kind && self.repr == other.repr && equivalent(&self.value, &other.value)
    }
}

/// Equality up to a nonzero scalar factor. The factor is read off the
/// largest-magnitude coefficient of `a` and the matching coefficient of `b`.
pub fn equivalent(a: &Multivector, b: &Multivector) -> bool {
    scale_residual(a, b).is_some_and(|r| r <= EQUIV_TOL)
}

/// Relative residual `max|r a - b| / max|b|` for the best factor `r`, or
/// `None` when no nonzero factor exists.
pub fn scale_residual(a: &Multivector, b: &Multivector) -> Option<f64> {
    if a.signature() != b.signature() || a.is_zero() || b.is_zero() {
        return None;
    }
    let (blade, ca) = a
        .terms()
        .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
        .expect("nonzero multivector");
    let cb = b.get(blade);
    if cb == 0.0 {
        return None;
    }
    let ratio = cb / ca;
    Some(a.scale(ratio).max_abs_diff(b) / b.max_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Signature;

    #[test]
    fn grade_table_at_three() {
        use Kind::*;
        use Representation::*;
        assert_eq!(expected_grade(Line, OpnsCga, 3), Some(3));
        assert_eq!(expected_grade(Line, IpnsCga, 3), Some(2));
        assert_eq!(expected_grade(Plane, IpnsCga, 3), Some(1));
        assert_eq!(expected_grade(Sphere, IpnsCga, 3), Some(1));
        assert_eq!(expected_grade(Circle, IpnsCga, 3), Some(2));
        assert_eq!(expected_grade(Point, Pga, 3), Some(3));
        assert_eq!(expected_grade(Plane, Pga, 3), Some(1));
        assert_eq!(expected_grade(Sphere, Pga, 3), None);
    }

    #[test]
    fn rejects_wrong_grade() {
        let sig = Signature::cga(3).unwrap();
        let e1 = Multivector::basis(&sig, "e1").unwrap();
        assert!(GeometricEntity::new(Kind::Plane, Representation::IpnsCga, e1.clone()).is_ok());
        assert!(matches!(
            GeometricEntity::new(Kind::Line, Representation::OpnsCga, e1),
            Err(GaError::GradeMismatch { .. })
        ));
    }

    #[test]
    fn equivalence_up_to_scale() {
        let sig = Signature::cga(3).unwrap();
        let a = &Multivector::basis(&sig, "e1").unwrap() + &Multivector::basis(&sig, "e2").unwrap();
        assert!(equivalent(&a, &a.scale(-3.0)));
        assert!(!equivalent(&a, &Multivector::basis(&sig, "e1").unwrap()));
        assert!(!equivalent(&a, &Multivector::zero(&sig)));
    }
}
