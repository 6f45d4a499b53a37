//! The worked three-dimensional scene: a point, three plane points and a
//! sphere, with intersections and projections computed through PGA, CGA and
//! `sharp`, then checked against plain vector geometry.

use serde::{Deserialize, Serialize};

use crate::cga;
use crate::entity::{GeometricEntity, Kind, Representation};
use crate::error::Result;
use crate::multivector::Multivector;
use crate::pga::{self, sharp};
use crate::signature::Signature;

/// Absolute tolerance on residuals and decoded point coordinates.
pub const ABS_TOL: f64 = 1e-9;
/// Relative tolerance on radii and centers of rounds.
pub const REL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub blade: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntityRecord {
    pub name: String,
    pub kind: Kind,
    pub representation: Representation,
    pub text: String,
    pub coefficients: Vec<Coefficient>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub description: String,
    pub pass: bool,
    pub residual: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub center: Vec<f64>,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Derived {
    /// Line `l` meets plane `p`.
    pub intersection: Vec<f64>,
    /// `P` projected onto `p`.
    pub projected_point: Vec<f64>,
    /// Sphere `s` cut by plane `p`.
    pub circle: RoundRecord,
    /// Line `l` projected onto sphere `s`.
    pub projected_circle: RoundRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneReport {
    pub entities: Vec<EntityRecord>,
    pub checks: Vec<CheckRecord>,
    pub derived: Derived,
}

impl SceneReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn entity(&self, name: &str) -> Option<&EntityRecord> {
        self.entities.iter().find(|e| e.name == name)
    }
}

type V3 = [f64; 3];

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn mul(k: f64, a: V3) -> V3 {
    [k * a[0], k * a[1], k * a[2]]
}

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn unit(a: V3) -> V3 {
    mul(1.0 / dot(a, a).sqrt(), a)
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Plain vector geometry for the same scene.
struct Oracle {
    intersection: V3,
    projected_point: V3,
    circle_center: V3,
    circle_radius: f64,
    circle_normal: V3,
    great_center: V3,
    great_radius: f64,
    great_normal: V3,
}

impl Oracle {
    fn new(p: V3, a: V3, b: V3, c: V3, center: V3, radius: f64) -> Self {
        let normal = cross(sub(b, a), sub(c, a));
        let offset = dot(normal, a);
        let side = |x: V3| (dot(normal, x) - offset) / dot(normal, normal);

        let dir = sub(b, p);
        let t = (offset - dot(normal, p)) / dot(normal, dir);
        let dist = side(center) * dot(normal, normal).sqrt();
        Oracle {
            intersection: add(p, mul(t, dir)),
            projected_point: sub(p, mul(side(p), normal)),
            circle_center: sub(center, mul(side(center), normal)),
            circle_radius: (radius * radius - dist * dist).sqrt(),
            circle_normal: normal,
            great_center: center,
            great_radius: radius,
            great_normal: cross(dir, sub(center, p)),
        }
    }
}

/// Three points spread around a circle.
fn circle_samples(center: V3, radius: f64, normal: V3) -> Vec<V3> {
    let n = unit(normal);
    let seed = if n[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let u = unit(cross(n, seed));
    let v = cross(n, u);
    (0..3)
        .map(|k| {
            let angle = f64::from(k) * 2.0 * std::f64::consts::PI / 3.0 + 0.25;
            add(center, add(mul(radius * angle.cos(), u), mul(radius * angle.sin(), v)))
        })
        .collect()
}

fn record(name: &str, entity: &GeometricEntity) -> EntityRecord {
    let value = entity.value();
    let sig = value.signature();
    EntityRecord {
        name: name.to_string(),
        kind: entity.kind(),
        representation: entity.representation(),
        text: value.to_string(),
        coefficients: value
            .canonical_terms()
            .into_iter()
            .map(|(b, v)| Coefficient {
                blade: sig.blade_name(b),
                value: v,
            })
            .collect(),
    }
}

struct Checks(Vec<CheckRecord>);

impl Checks {
    fn push(&mut self, description: impl Into<String>, residual: f64, tolerance: f64) {
        self.0.push(CheckRecord {
            description: description.into(),
            pass: residual <= tolerance,
            residual,
            tolerance,
        });
    }

    fn relative(&mut self, description: impl Into<String>, found: &[f64], expected: &[f64]) {
        let scale = expected.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
        self.push(description, max_diff(found, expected) / scale, REL_TOL);
    }
}

/// Relative size of everything outside grade `k`.
fn leftover(x: &Multivector, k: u32) -> f64 {
    x.filter(|b| b.grade() != k).max_abs() / x.max_abs()
}

fn round(x: &Multivector) -> Result<RoundRecord> {
    let center = cga::euclidean_coords(&cga::round_center(x)?);
    let radius = cga::dual_round_radius_sq(x)?.max(0.0).sqrt();
    Ok(RoundRecord { center, radius })
}

pub fn demo_scene() -> Result<SceneReport> {
    let sig = Signature::cga(3)?;
    let vec3 = |v: V3| Multivector::euclidean_vector(&sig, &v);

    let (p_pos, a_pos, b_pos, c_pos) = ([0.5, 0.0, -1.5], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]);
    let (s_center, s_radius) = ([1.0, 0.5, 0.0], 0.5);
    let oracle = Oracle::new(p_pos, a_pos, b_pos, c_pos, s_center, s_radius);

    let pt = pga::pga_point(&vec3(p_pos))?;
    let p1 = pga::pga_point(&vec3(a_pos))?;
    let p2 = pga::pga_point(&vec3(b_pos))?;
    let p3 = pga::pga_point(&vec3(c_pos))?;
    let line = pga::pga_line(&pt, &p2)?;
    let plane = pga::pga_plane(&p1, &p2, &p3)?;
    let (l, p) = (line.value(), plane.value());

    let q = GeometricEntity::new(Kind::Point, Representation::Pga, p.outer_product(l)?)?;
    let pperp_full = p.left_contraction(pt.value())?.geometric_product(p)?;
    let pperp = GeometricEntity::new(Kind::Point, Representation::Pga, pperp_full.grade(3))?;
    let lperp_full = p.left_contraction(l)?.geometric_product(p)?;
    let lperp = GeometricEntity::new(Kind::Line, Representation::Pga, lperp_full.grade(2))?;

    let sphere = cga::sphere_dual(&vec3(s_center), s_radius)?;
    let s = sphere.value();
    let plane_c = GeometricEntity::new(Kind::Plane, Representation::IpnsCga, sharp(p))?;
    let circle = GeometricEntity::new(Kind::Circle, Representation::IpnsCga, s.outer_product(plane_c.value())?)?;
    let cperp_full = s.left_contraction(&sharp(l))?.geometric_product(s)?;
    let cperp = GeometricEntity::new(Kind::Circle, Representation::IpnsCga, cperp_full.grade(2))?;

    let derived = Derived {
        intersection: pga::pga_point_position(q.value())?,
        projected_point: pga::pga_point_position(pperp.value())?,
        circle: round(circle.value())?,
        projected_circle: round(cperp.value())?,
    };

    let mut checks = Checks(Vec::new());
    checks.push("Q lies on l", pga::pga_incidence_residual(q.value(), l)?, ABS_TOL);
    checks.push("Q lies on p", pga::pga_incidence_residual(q.value(), p)?, ABS_TOL);
    checks.push("Pperp product is a pure trivector", leftover(&pperp_full, 3), ABS_TOL);
    checks.push("lperp product is a pure bivector", leftover(&lperp_full, 2), ABS_TOL);
    checks.push(
        "Pperp lies on p",
        pga::pga_incidence_residual(pperp.value(), p)?,
        ABS_TOL,
    );
    checks.push(
        "Pperp lies on lperp",
        pga::pga_incidence_residual(pperp.value(), lperp.value())?,
        ABS_TOL,
    );
    checks.push(
        "Q lies on lperp",
        pga::pga_incidence_residual(q.value(), lperp.value())?,
        ABS_TOL,
    );
    checks.push(
        "Q matches the line-plane intersection",
        max_diff(&derived.intersection, &oracle.intersection),
        ABS_TOL,
    );
    checks.push(
        "Pperp matches the orthogonal projection",
        max_diff(&derived.projected_point, &oracle.projected_point),
        ABS_TOL,
    );
    for (k, x) in circle_samples(oracle.circle_center, oracle.circle_radius, oracle.circle_normal)
        .into_iter()
        .enumerate()
    {
        let point = cga::up(&vec3(x))?;
        checks.push(
            format!("circle sample {k} lies on s"),
            cga::ipns_residual(&point, &sphere)?,
            ABS_TOL,
        );
        checks.push(
            format!("circle sample {k} lies on sharp(p)"),
            cga::ipns_residual(&point, &plane_c)?,
            ABS_TOL,
        );
        checks.push(
            format!("circle sample {k} lies on c"),
            cga::ipns_residual(&point, &circle)?,
            ABS_TOL,
        );
    }
    checks.relative("c radius", &[derived.circle.radius], &[oracle.circle_radius]);
    checks.relative("c center", &derived.circle.center, &oracle.circle_center);
    checks.push("cperp product is a pure bivector", leftover(&cperp_full, 2), ABS_TOL);
    for (k, x) in circle_samples(oracle.great_center, oracle.great_radius, oracle.great_normal)
        .into_iter()
        .enumerate()
    {
        let point = cga::up(&vec3(x))?;
        checks.push(
            format!("great circle sample {k} lies on cperp"),
            cga::ipns_residual(&point, &cperp)?,
            ABS_TOL,
        );
    }
    checks.relative(
        "cperp radius",
        &[derived.projected_circle.radius],
        &[oracle.great_radius],
    );
    checks.relative("cperp center", &derived.projected_circle.center, &oracle.great_center);

    let entities = vec![
        record("P", &pt),
        record("P1", &p1),
        record("P2", &p2),
        record("P3", &p3),
        record("l", &line),
        record("p", &plane),
        record("Q", &q),
        record("Pperp", &pperp),
        record("lperp", &lperp),
        record("s", &sphere),
        record("sharp(p)", &plane_c),
        record("c", &circle),
        record("cperp", &cperp),
    ];
    Ok(SceneReport {
        entities,
        checks: checks.0,
        derived,
    })
}

fn coords(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Human-readable report. `color` wraps PASS/FAIL in ANSI escapes.
pub fn render_scene_text(report: &SceneReport, color: bool) -> String {
    let mut out = String::from("entities\n");
    let width = report.entities.iter().map(|e| e.name.len()).max().unwrap_or(0);
    for e in &report.entities {
        out += &format!(
            "  {:<width$}  {:?} {}  {}\n",
            e.name,
            e.kind,
            e.representation.label(),
            e.text
        );
    }
    let d = &report.derived;
    out += "derived\n";
    out += &format!("  intersection Q        {}\n", coords(&d.intersection));
    out += &format!("  projection Pperp      {}\n", coords(&d.projected_point));
    out += &format!(
        "  circle c              center {} radius {}\n",
        coords(&d.circle.center),
        d.circle.radius
    );
    out += &format!(
        "  circle cperp          center {} radius {}\n",
        coords(&d.projected_circle.center),
        d.projected_circle.radius
    );
    out += "checks\n";
    for c in &report.checks {
        let tag = match (c.pass, color) {
            (true, false) => "PASS".to_string(),
            (false, false) => "FAIL".to_string(),
            (true, true) => "\x1b[32mPASS\x1b[0m".to_string(),
            (false, true) => "\x1b[31mFAIL\x1b[0m".to_string(),
        };
        out += &format!(
            "  {tag}  {}  residual {:e} <= {:e}\n",
            c.description, c.residual, c.tolerance
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        max_diff(a, b) <= tol
    }

    #[test]
    fn oracle_values() {
        let o = Oracle::new(
            [0.5, 0.0, -1.5],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, -1.0],
            [1.0, 0.5, 0.0],
            0.5,
        );
        assert!(close(&o.intersection, &[0.0, 1.0, 0.0], 1e-15));
        assert!(close(&o.projected_point, &[1.0 / 6.0, -1.0 / 3.0, -7.0 / 6.0], 1e-15));
        assert!((o.circle_radius - (1.0f64 / 6.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn scene_passes() {
        let report = demo_scene().unwrap();
        for c in &report.checks {
            assert!(c.pass, "{} residual {}", c.description, c.residual);
        }
        assert!(close(&report.derived.intersection, &[0.0, 1.0, 0.0], 1e-9));
        assert!(close(
            &report.derived.projected_point,
            &[1.0 / 6.0, -1.0 / 3.0, -7.0 / 6.0],
            1e-9
        ));
        assert!((report.derived.circle.radius - 0.408248).abs() < 1e-6);
        assert!(close(
            &report.derived.circle.center,
            &[5.0 / 6.0, 1.0 / 3.0, 1.0 / 6.0],
            1e-9
        ));
        assert!(close(&report.derived.projected_circle.center, &[1.0, 0.5, 0.0], 1e-9));
        assert!((report.derived.projected_circle.radius - 0.5).abs() < 1e-9);
    }

    #[test]
    fn scene_entities_are_tagged() {
        let report = demo_scene().unwrap();
        let c = report.entity("c").unwrap();
        assert_eq!((c.kind, c.representation), (Kind::Circle, Representation::IpnsCga));
        let s = report.entity("s").unwrap();
        assert_eq!(s.text, "1*e0 + 1*e1 + 0.5*e2 + 0.5*ni");
        assert_eq!(report.entity("P1").unwrap().text, "-1*e023 + 1*e123");
    }

    #[test]
    fn text_is_deterministic() {
        let a = render_scene_text(&demo_scene().unwrap(), false);
        let b = render_scene_text(&demo_scene().unwrap(), false);
        assert_eq!(a, b);
        assert!(!a.contains('\x1b'));
        assert!(render_scene_text(&demo_scene().unwrap(), true).contains("\x1b[32mPASS"));
    }
}
