//! Seeded randomized identity suites.
//!
//! Every suite draws integer coefficients in `[-5, 5]`, so the algebraic
//! identities are checked with exact equality. Geometric suites that go
//! through `sin`, `cos` or `sqrt` compare up to scale with tolerance `1e-9`.
//! The `sharp` map is a parameter so that a deliberately broken version can
//! be run through the same suites.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cga;
use crate::entity::{scale_residual, EQUIV_TOL};
use crate::error::{GaError, Result};
use crate::multivector::Multivector;
use crate::pga::{self, pga_sign};
use crate::sampling::{
    cga0_mask, random_blade_in, random_cga0, random_coords, random_multivector, random_multivector_where,
    random_vector_in,
};
use crate::signature::{BasisBlade, Signature};
use crate::versor::Versor;

pub type SharpFn = fn(&Multivector) -> Multivector;

/// Projective duality of the basis blades at `n = 3`, as `(input, sign, output)`.
pub const TABLE_N3: [(&str, i8, &str); 16] = [
    ("1", 1, "e0123"),
    ("e0", 1, "e123"),
    ("e1", -1, "e023"),
    ("e2", 1, "e013"),
    ("e3", -1, "e012"),
    ("e01", -1, "e23"),
    ("e02", 1, "e13"),
    ("e03", -1, "e12"),
    ("e12", -1, "e03"),
    ("e13", 1, "e02"),
    ("e23", -1, "e01"),
    ("e012", -1, "e3"),
    ("e013", 1, "e2"),
    ("e023", -1, "e1"),
    ("e123", 1, "e0"),
    ("e0123", 1, "1"),
];

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub n: usize,
    pub passed: usize,
    pub total: usize,
    /// Measured constants worth reporting, such as signs.
    pub note: Option<String>,
    /// First failing case, in canonical text.
    pub counterexample: Option<String>,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total && self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    pub dims: Vec<usize>,
    pub iters: usize,
    pub seed: u64,
}

struct Ctx {
    sig: Arc<Signature>,
    n: usize,
    rng: ChaCha8Rng,
    iters: usize,
    sharp: SharpFn,
    passed: usize,
    total: usize,
    note: Option<String>,
    counterexample: Option<String>,
}

fn show(parts: &[(&str, &Multivector)]) -> String {
    parts
        .iter()
        .map(|(name, v)| format!("{name} = {v}"))
        .collect::<Vec<_>>()
        .join("; ")
}

impl Ctx {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
    }

    fn check_eq(&mut self, lhs: &Multivector, rhs: &Multivector, inputs: &[(&str, &Multivector)]) {
        self.check(lhs == rhs, || {
            let mut parts = inputs.to_vec();
            parts.push(("lhs", lhs));
            parts.push(("rhs", rhs));
            show(&parts)
        });
    }

    fn check_close(&mut self, lhs: &Multivector, rhs: &Multivector, inputs: &[(&str, &Multivector)]) {
        let ok = match (lhs.is_zero(), rhs.is_zero()) {
            (true, true) => true,
            (false, false) => scale_residual(lhs, rhs).is_some_and(|r| r <= EQUIV_TOL),
            _ => false,
        };
        self.check(ok, || {
            let mut parts = inputs.to_vec();
            parts.push(("lhs", lhs));
            parts.push(("rhs", rhs));
            show(&parts)
        });
    }

    fn sharp(&self, a: &Multivector) -> Multivector {
        (self.sharp)(a)
    }

    fn any(&mut self) -> Multivector {
        random_multivector(&self.sig, &mut self.rng)
    }

    fn cga0(&mut self) -> Multivector {
        random_cga0(&self.sig, &mut self.rng)
    }

    fn blade0(&mut self, grade: u32) -> Multivector {
        let mask = cga0_mask(&self.sig);
        random_blade_in(&self.sig, &mut self.rng, mask, grade)
    }

    fn coords(&mut self) -> Vec<f64> {
        random_coords(&mut self.rng, self.n)
    }

    fn vector(&mut self) -> Multivector {
        let coords = self.coords();
        Multivector::euclidean_vector(&self.sig, &coords)
    }

    fn basis_blades(&self) -> Vec<Multivector> {
        (0..self.sig.blade_count() as u32)
            .map(|b| Multivector::blade(&self.sig, BasisBlade(b), 1.0))
            .collect()
    }

    fn cga0_blades(&self) -> Vec<Multivector> {
        let mask = cga0_mask(&self.sig);
        self.basis_blades()
            .into_iter()
            .filter(|b| b.terms().all(|(blade, _)| blade.0 & !mask == 0))
            .collect()
    }

    /// `k` random integer points whose conformal span is not degenerate.
    fn independent_points(&mut self, k: usize) -> Result<Vec<Vec<f64>>> {
        loop {
            let points: Vec<Vec<f64>> = (0..k).map(|_| self.coords()).collect();
            if !cga_span(&self.sig, &points)?.is_zero() {
                return Ok(points);
            }
        }
    }
}

type SuiteFn = fn(&mut Ctx) -> Result<()>;

/// All suites, in report order.
const SUITES: &[(&str, SuiteFn)] = &[
    ("product paths", product_paths),
    ("associativity", associativity),
    ("reverse anti-automorphism", reverse_anti),
    ("anticommutation", anticommutation),
    ("contraction duality", contraction_duality),
    ("sharp involution", sharp_involution),
    ("sharp homomorphism", sharp_homomorphism),
    ("sharp subalgebra swap", sharp_swap),
    ("gram preservation", gram_preservation),
    ("sign rows", sign_rows),
    ("definition equality", definition_equality),
    ("three-way duality", three_way_duality),
    ("pga identity", pga_identity),
    ("coordinate dual", coordinate_dual),
    ("double dual", double_dual),
    ("regressive product", regressive_product),
    ("point correspondence", point_correspondence),
    ("flat correspondence", flat_correspondence),
    ("versor correspondence", versor_correspondence),
    ("cga versors", cga_versors),
    ("conformal distance", conformal_distance),
    ("up/down round trip", up_down),
    ("duality table", duality_table),
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|(name, _)| *name)
}

/// Names of the suites exercising `sharp` as an algebra isomorphism.
pub const SHARP_SUITES: [&str; 3] = ["sharp involution", "sharp homomorphism", "gram preservation"];

pub fn run_suite(name: &str, n: usize, iters: usize, seed: u64, sharp: SharpFn) -> Result<SuiteResult> {
    let (index, (name, suite)) = SUITES
        .iter()
        .enumerate()
        .find(|(_, (s, _))| *s == name)
        .ok_or_else(|| GaError::UnknownSuite(name.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((index as u64) << 8) | n as u64);
    let mut ctx = Ctx {
        sig: Signature::cga(n)?,
        n,
        rng,
        iters,
        sharp,
        passed: 0,
        total: 0,
        note: None,
        counterexample: None,
    };
    if let Err(e) = suite(&mut ctx) {
        ctx.total += 1;
        ctx.counterexample.get_or_insert(format!("error: {e}"));
    }
    Ok(SuiteResult {
        name,
        n,
        passed: ctx.passed,
        total: ctx.total,
        note: ctx.note,
        counterexample: ctx.counterexample,
    })
}

/// Runs every suite for every dimension. Suites run on worker threads; each
/// draws from its own seeded stream and results come back in a fixed order.
pub fn run_all(config: &CheckConfig, sharp: SharpFn) -> Result<Vec<SuiteResult>> {
    if let Some(&n) = config.dims.iter().find(|n| !(2..=6).contains(*n)) {
        return Err(GaError::DimensionOutOfRange(n));
    }
    let jobs: Vec<(usize, &str)> = config
        .dims
        .iter()
        .flat_map(|&n| SUITES.iter().map(move |(name, _)| (n, *name)))
        .collect();
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<SuiteResult>>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let workers = thread::available_parallelism().map_or(1, |w| w.get()).min(jobs.len());
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(n, name)) = jobs.get(i) else { break };
                let result = run_suite(name, n, config.iters, config.seed, sharp);
                *slots[i].lock().expect("unpoisoned") = Some(result);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().expect("unpoisoned").expect("every job ran"))
        .collect()
}

pub fn render_results(results: &[SuiteResult], color: bool) -> String {
    let width = SUITES.iter().map(|(s, _)| s.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in results {
        let tag = match (r.ok(), color) {
            (true, false) => "ok".to_string(),
            (false, false) => "FAIL".to_string(),
            (true, true) => "\x1b[32mok\x1b[0m".to_string(),
            (false, true) => "\x1b[31mFAIL\x1b[0m".to_string(),
        };
        out += &format!("n={} {:<width$} {:>5}/{:<5} {tag}", r.n, r.name, r.passed, r.total);
        if let Some(note) = &r.note {
            out += &format!("  {note}");
        }
        out.push('\n');
        if let Some(c) = &r.counterexample {
            out += &format!("    counterexample: {c}\n");
        }
    }
    let failed = results.iter().filter(|r| !r.ok()).count();
    if failed == 0 {
        out += &format!("all {} suites passed\n", results.len());
    } else {
        out += &format!("{failed} of {} suites failed\n", results.len());
    }
    out
}

fn sign_text(x: f64) -> &'static str {
    if x > 0.0 {
        "+1"
    } else {
        "-1"
    }
}

fn product_paths(cx: &mut Ctx) -> Result<()> {
    for _ in 0..cx.iters {
        let (a, b) = (cx.any(), cx.any());
        let fast = a.geometric_product(&b)?;
        let oracle = a.oracle_product(&b)?;
        cx.check_eq(&fast, &oracle, &[("A", &a), ("B", &b)]);
    }
    Ok(())
}

fn associativity(cx: &mut Ctx) -> Result<()> {
    for _ in 0..cx.iters {
        let (a, b, c) = (cx.any(), cx.any(), cx.any());
        let lhs = a.geometric_product(&b)?.geometric_product(&c)?;
        let rhs = a.geometric_product(&b.geometric_product(&c)?)?;
        cx.check_eq(&lhs, &rhs, &[("A", &a), ("B", &b), ("C", &c)]);
    }
    Ok(())
}

fn reverse_anti(cx: &mut Ctx) -> Result<()> {
    for _ in 0..cx.iters {
        let (a, b) = (cx.any(), cx.any());
        let lhs = a.geometric_product(&b)?.reverse();
        let rhs = b.reverse().geometric_product(&a.reverse())?;
        cx.check_eq(&lhs, &rhs, &[("A", &a), ("B", &b)]);
    }
    Ok(())
}

fn anticommutation(cx: &mut Ctx) -> Result<()> {
    let dim = cx.sig.dim();
    for i in 0..dim {
        let x = Multivector::generator(&cx.sig, i);
        let square = Multivector::scalar(&cx.sig, f64::from(cx.sig.gram(i, i)));
        cx.check_eq(&x.geometric_product(&x)?, &square, &[("x", &x)]);
        for j in i + 1..dim {
            if cx.sig.gram(i, j) != 0 {
                continue;
            }
            let y = Multivector::generator(&cx.sig, j);
            cx.check_eq(
                &x.geometric_product(&y)?,
                &-y.geometric_product(&x)?,
                &[("x", &x), ("y", &y)],
            );
        }
    }
    Ok(())
}

fn contraction_duality(cx: &mut Ctx) -> Result<()> {
    let all = (1u32 << cx.sig.dim()) - 1;
    let top = cx.sig.dim() as u32;
    for _ in 0..cx.iters {
        let ga = cx.rng.gen_range(0..=top);
        let gb = cx.rng.gen_range(0..=top);
        let a = random_blade_in(&cx.sig, &mut cx.rng, all, ga);
        let b = random_blade_in(&cx.sig, &mut cx.rng, all, gb);
        let c = cx.any();
        let lhs = a.left_contraction(&b.left_contraction(&c)?)?;
        let rhs = a.outer_product(&b)?.left_contraction(&c)?;
        cx.check_eq(&lhs, &rhs, &[("A", &a), ("B", &b), ("C", &c)]);
    }
    Ok(())
}

fn sharp_involution(cx: &mut Ctx) -> Result<()> {
    for a in cx.basis_blades() {
        let twice = cx.sharp(&cx.sharp(&a));
        cx.check_eq(&twice, &a, &[("A", &a)]);
    }
    for _ in 0..cx.iters {
        let a = cx.any();
        let twice = cx.sharp(&cx.sharp(&a));
        cx.check_eq(&twice, &a, &[("A", &a)]);
    }
    Ok(())
}

fn sharp_homomorphism(cx: &mut Ctx) -> Result<()> {
    for _ in 0..cx.iters {
        let (a, b) = (cx.any(), cx.any());
        let (sa, sb) = (cx.sharp(&a), cx.sharp(&b));
        let inputs = [("A", &a), ("B", &b)];
        cx.check_eq(
            &cx.sharp(&a.geometric_product(&b)?),
            &sa.geometric_product(&sb)?,
            &inputs,
        );
        cx.check_eq(&cx.sharp(&a.outer_product(&b)?), &sa.outer_product(&sb)?, &inputs);
        cx.check_eq(&cx.sharp(&a.left_contraction(&b)?), &sa.left_contraction(&sb)?, &inputs);
    }
    Ok(())
}

fn sharp_swap(cx: &mut Ctx) -> Result<()> {
    let origin = cx.sig.origin().expect("conformal");
    let inf = cx.sig.infinity().expect("conformal");
    for a in cx.basis_blades() {
        let (blade, _) = a.terms().next().expect("basis blade");
        let image = cx.sharp(&a);
        match (blade.contains(origin), blade.contains(inf)) {
            (false, false) => cx.check_eq(&image, &a, &[("A", &a)]),
            (true, true) => cx.check_eq(&image, &-a.clone(), &[("A", &a)]),
            _ => {
                let ok = pga::is_in_cga0(&image) != pga::is_in_cga0(&a);
                cx.check(ok, || show(&[("A", &a), ("sharp(A)", &image)]));
            }
        }
    }
    for _ in 0..cx.iters {
        let a = cx.cga0();
        let image = cx.sharp(&a);
        cx.check(pga::is_in_cga_inf(&image), || show(&[("A", &a), ("sharp(A)", &image)]));
        let b = random_multivector_where(&cx.sig, &mut cx.rng, |b| !b.contains(origin));
        let image = cx.sharp(&b);
        cx.check(pga::is_in_cga0(&image), || show(&[("B", &b), ("sharp(B)", &image)]));
    }
    Ok(())
}

fn gram_preservation(cx: &mut Ctx) -> Result<()> {
    let all = (1u32 << cx.sig.dim()) - 1;
    for i in 0..cx.sig.dim() {
        for j in 0..cx.sig.dim() {
            let x = Multivector::generator(&cx.sig, i);
            let y = Multivector::generator(&cx.sig, j);
            let lhs = cx.sharp(&x).scalar_product(&cx.sharp(&y))?;
            let rhs = x.scalar_product(&y)?;
            cx.check(lhs == rhs, || show(&[("x", &x), ("y", &y)]));
        }
    }
    for _ in 0..cx.iters {
        let x = random_vector_in(&cx.sig, &mut cx.rng, all);
        let y = random_vector_in(&cx.sig, &mut cx.rng, all);
        let lhs = cx.sharp(&x).scalar_product(&cx.sharp(&y))?;
        let rhs = x.scalar_product(&y)?;
        cx.check(lhs == rhs, || show(&[("x", &x), ("y", &y)]));
    }
    Ok(())
}

fn sign_rows(cx: &mut Ctx) -> Result<()> {
    let n = cx.n;
    let ic = cga::pseudoscalar(&cx.sig)?;
    let sign_c = if (n * (n - 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    let one = Multivector::scalar(&cx.sig, 1.0);
    cx.check_eq(&ic.geometric_product(&ic.scale(sign_c))?, &one, &[("Ic", &ic)]);
    cx.check_eq(&cga::pseudoscalar_inverse(&cx.sig)?, &ic.scale(sign_c), &[("Ic", &ic)]);

    let i = pga::pga_pseudoscalar(&cx.sig)?;
    let expected = Multivector::scalar(&cx.sig, pga_sign(n));
    let got = i.left_contraction(&cx.sharp(&i))?;
    cx.check_eq(&got, &expected, &[("I", &i)]);
    cx.note = Some(format!(
        "I|sharp(I) = {}, Ic^-1 = {}Ic",
        sign_text(got.scalar_part()),
        if sign_c > 0.0 { "" } else { "-" }
    ));
    Ok(())
}

fn definition_equality(cx: &mut Ctx) -> Result<()> {
    let i = pga::pga_pseudoscalar(&cx.sig)?;
    let si = cx.sharp(&i);
    for _ in 0..cx.iters {
        let a = cx.cga0();
        let lhs = cx.sharp(&a.left_contraction(&si)?);
        let rhs = cx.sharp(&a).left_contraction(&i)?;
        cx.check_eq(&lhs, &rhs, &[("A", &a)]);
    }
    Ok(())
}

fn three_way_duality(cx: &mut Ctx) -> Result<()> {
    for _ in 0..cx.iters {
        let a = cx.cga0();
        let direct = pga::pga_dual(&a)?;
        let (via_inf, via_origin) = pga::pga_dual_via_cga(&a)?;
        cx.check(direct == via_inf && direct == via_origin, || {
            show(&[
                ("A", &a),
                ("pga_dual", &direct),
                ("via ni", &via_inf),
                ("via e0", &via_origin),
            ])
        });
    }
    Ok(())
}

fn pga_identity(cx: &mut Ctx) -> Result<()> {
    let top = cx.n as u32 + 1;
    for _ in 0..cx.iters {
        let ga = cx.rng.gen_range(0..=top);
        let gb = cx.rng.gen_range(ga..=top);
        let (a, b) = (cx.blade0(ga), cx.blade0(gb));
        let lhs = pga::pga_dual(&a.outer_product(&b)?)?;
        let rhs = cx.sharp(&a).left_contraction(&pga::pga_dual(&b)?)?;
        cx.check_eq(&lhs, &rhs, &[("A", &a), ("B", &b)]);

        let (a, b) = (cx.cga0(), cx.cga0());
        let lhs = pga::pga_dual(&a.outer_product(&b)?)?;
        let rhs = cx.sharp(&a).left_contraction(&pga::pga_dual(&b)?)?;
        cx.check_eq(&lhs, &rhs, &[("A", &a), ("B", &b)]);
    }
    Ok(())
}

fn coordinate_dual(cx: &mut Ctx) -> Result<()> {
    for a in cx.cga0_blades() {
        cx.check_eq(&pga::coordinate_dual(&a)?, &pga::pga_dual(&a)?, &[("A", &a)]);
    }
    for _ in 0..cx.iters {
        let a = cx.cga0();
        cx.check_eq(&pga::coordinate_dual(&a)?, &pga::pga_dual(&a)?, &[("A", &a)]);
    }
    Ok(())
}

fn double_dual(cx: &mut Ctx) -> Result<()> {
    let sign = pga::double_dual_sign(&cx.sig)?;
    for a in cx.cga0_blades() {
        cx.check_eq(&pga::pga_dual(&pga::pga_dual(&a)?)?, &a.scale(sign), &[("A", &a)]);
    }
    for _ in 0..cx.iters {
        let a = cx.cga0();
        cx.check_eq(&pga::pga_dual(&pga::pga_dual(&a)?)?, &a.scale(sign), &[("A", &a)]);
    }
    cx.note = Some(format!("double dual sign {}", sign_text(sign)));
    Ok(())
}

fn regressive_product(cx: &mut Ctx) -> Result<()> {
    let i = pga::pga_pseudoscalar(&cx.sig)?;
    let top = cx.n as u32 + 1;
    for _ in 0..cx.iters {
        let a = cx.cga0();
        cx.check_eq(&pga::regressive(&a, &i)?, &a, &[("A", &a)]);
        let grades: Vec<u32> = (0..3).map(|_| cx.rng.gen_range(0..=top)).collect();
        let (a, b, c) = (cx.blade0(grades[0]), cx.blade0(grades[1]), cx.blade0(grades[2]));
        let lhs = pga::regressive(&pga::regressive(&a, &b)?, &c)?;
        let rhs = pga::regressive(&a, &pga::regressive(&b, &c)?)?;
        cx.check_eq(&lhs, &rhs, &[("A", &a), ("B", &b), ("C", &c)]);
    }
    Ok(())
}

fn point_correspondence(cx: &mut Ctx) -> Result<()> {
    let sign = pga_sign(cx.n);
    let origin = cga::origin(&cx.sig);
    for _ in 0..cx.iters {
        let p = cx.vector();
        let point = pga::pga_point(&p)?.into_value();
        let flat = cga::flat_point(&cga::up(&p)?)?.into_value();
        cx.check_eq(&cx.sharp(&point), &cga::cga_dual(&flat)?.scale(sign), &[("p", &p)]);
        cx.check_eq(&pga::pga_dual(&point)?, &origin.try_add(&p)?, &[("p", &p)]);
    }
    Ok(())
}

fn pga_span(sig: &Arc<Signature>, points: &[Vec<f64>]) -> Result<Multivector> {
    let mut value = pga::pga_point_coords(sig, &points[0])?.into_value();
    for p in &points[1..] {
        value = pga::regressive(&value, pga::pga_point_coords(sig, p)?.value())?;
    }
    Ok(value)
}

fn cga_span(sig: &Arc<Signature>, points: &[Vec<f64>]) -> Result<Multivector> {
    let mut value = Multivector::scalar(sig, 1.0);
    for p in points {
        value = value.outer_product(&cga::up_coords(sig, p)?)?;
    }
    value.outer_product(&cga::infinity(sig))
}

fn flat_correspondence(cx: &mut Ctx) -> Result<()> {
    let sign = pga_sign(cx.n);
    for it in 0..cx.iters {
        let k = 1 + it % cx.n;
        let points = cx.independent_points(k)?;
        let direct = cga_span(&cx.sig, &points)?;
        let pga_flat = pga_span(&cx.sig, &points)?;
        let lhs = cx.sharp(&pga_flat);
        let rhs = cga::cga_dual(&direct)?.scale(sign);
        cx.check_eq(&lhs, &rhs, &[("pga", &pga_flat), ("cga", &direct)]);

        // a point on the flat and a random one: both representations agree
        let on = cga::up_coords(&cx.sig, &points[k - 1])?;
        let off = cga::up(&cx.vector())?;
        let dual = cga::cga_dual(&direct)?;
        for x in [on, off] {
            let outer = x.outer_product(&direct)?.is_zero();
            let inner = x.left_contraction(&dual)?.is_zero();
            cx.check(outer == inner, || show(&[("X", &x), ("A", &direct)]));
        }
    }
    Ok(())
}

/// Random rigid motion as matching PGA and CGA versors. The rotation axis is
/// the flat through `n - 1` random points.
fn random_motion(cx: &mut Ctx) -> Result<(Versor, Versor)> {
    let sig = cx.sig.clone();
    let t = Multivector::euclidean_vector(&sig, &cx.coords());
    let angle = cx.rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    let points = cx.independent_points(cx.n - 1)?;
    let axis = pga_span(&sig, &points)?;
    let axis_dual = cga::cga_dual(&cga_span(&sig, &points)?)?.scale(pga_sign(cx.n));

    let pga_motion = pga::pga_translator(&t)?.then_after(&pga::pga_rotor(&axis, angle)?)?;
    let cga_rotor = cga::cga_rotor(&cga::normalize_dual_line(&axis_dual)?, angle)?;
    let cga_motion = cga::cga_translator(&t)?.then_after(&cga_rotor)?;
    Ok((pga_motion, cga_motion))
}

fn versor_correspondence(cx: &mut Ctx) -> Result<()> {
    let sign = pga_sign(cx.n);
    for it in 0..cx.iters {
        let (v, vc) = random_motion(cx)?;
        let image = cx.sharp(v.value());
        cx.check_eq(&image, vc.value(), &[("V", v.value())]);

        let k = 1 + it % cx.n.min(3);
        let points = cx.independent_points(k)?;
        let moved_then_embedded = cx.sharp(&v.apply(&pga_span(&cx.sig, &points)?)?);
        let embedded_then_moved = vc.apply(&cga::cga_dual(&cga_span(&cx.sig, &points)?)?.scale(sign))?;
        cx.check_close(&moved_then_embedded, &embedded_then_moved, &[("V", v.value())]);

        let p = Multivector::euclidean_vector(&cx.sig, &points[0]);
        let via_pga = pga::pga_point_position(&v.apply(pga::pga_point(&p)?.value())?)?;
        let via_cga = cga::point_coords(&vc.apply(&cga::up(&p)?)?)?;
        let gap = via_pga
            .iter()
            .zip(&via_cga)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let scale = via_cga.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
        cx.check(gap <= EQUIV_TOL * scale, || {
            format!(
                "{}; pga position {via_pga:?}; cga position {via_cga:?}",
                show(&[("V", v.value())])
            )
        });
    }
    Ok(())
}

/// Distance from `x` to the affine flat through `points`.
fn flat_distance(points: &[Vec<f64>], x: &[f64]) -> f64 {
    let diff = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(p, q)| p - q).collect::<Vec<f64>>();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(p, q)| p * q).sum::<f64>();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for p in &points[1..] {
        let mut d = diff(p, &points[0]);
        for u in &basis {
            let k = dot(&d, u);
            d.iter_mut().zip(u).for_each(|(di, ui)| *di -= k * ui);
        }
        let len = dot(&d, &d).sqrt();
        basis.push(d.into_iter().map(|v| v / len).collect());
    }
    let mut r = diff(x, &points[0]);
    for u in &basis {
        let k = dot(&r, u);
        r.iter_mut().zip(u).for_each(|(ri, ui)| *ri -= k * ui);
    }
    dot(&r, &r).sqrt()
}

fn cga_versors(cx: &mut Ctx) -> Result<()> {
    let sig = cx.sig.clone();
    for _ in 0..cx.iters {
        let (p, t) = (cx.coords(), cx.coords());
        let moved = cga::cga_translator(&Multivector::euclidean_vector(&sig, &t))?.apply(&cga::up_coords(&sig, &p)?)?;
        let sum: Vec<f64> = p.iter().zip(&t).map(|(a, b)| a + b).collect();
        let expected = cga::up_coords(&sig, &sum)?;
        cx.check_eq(&moved, &expected, &[("p", &cga::up_coords(&sig, &p)?)]);

        let points = cx.independent_points(cx.n - 1)?;
        let axis = cga::normalize_dual_line(&cga::cga_dual(&cga_span(&sig, &points)?)?)?;
        let angle = cx.rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let rotor = cga::cga_rotor(&axis, angle)?;
        let x = cx.coords();
        let rotated = cga::point_coords(&rotor.apply(&cga::up_coords(&sig, &x)?)?)?;
        let (before, after) = (flat_distance(&points, &x), flat_distance(&points, &rotated));
        cx.check((before - after).abs() <= EQUIV_TOL * before.max(1.0), || {
            format!("axis {axis}; x {x:?}; distance {before} -> {after}")
        });

        // incidence survives the motion
        let flat = cga_span(&sig, &points)?;
        let on = cga::up_coords(&sig, &points[0])?;
        let moved_on = rotor.apply(&on)?;
        let moved_flat = rotor.apply(&flat)?;
        let residual = moved_on.outer_product(&moved_flat)?.max_abs() / (moved_on.max_abs() * moved_flat.max_abs());
        cx.check(residual <= EQUIV_TOL, || {
            show(&[("P", &on), ("A", &flat), ("R", rotor.value())])
        });
    }
    Ok(())
}

fn conformal_distance(cx: &mut Ctx) -> Result<()> {
    let ni = cga::infinity(&cx.sig);
    for _ in 0..cx.iters {
        let (p, q) = (cx.coords(), cx.coords());
        let (up_p, up_q) = (cga::up_coords(&cx.sig, &p)?, cga::up_coords(&cx.sig, &q)?);
        let dist_sq: f64 = p.iter().zip(&q).map(|(a, b)| (a - b) * (a - b)).sum();
        let got = up_p.scalar_product(&up_q)?;
        cx.check(got == -0.5 * dist_sq, || show(&[("P", &up_p), ("Q", &up_q)]));
        cx.check(up_p.scalar_product(&up_p)? == 0.0, || show(&[("P", &up_p)]));
        cx.check(up_p.scalar_product(&ni)? == -1.0, || show(&[("P", &up_p)]));
    }
    Ok(())
}

fn up_down(cx: &mut Ctx) -> Result<()> {
    for _ in 0..cx.iters {
        let p = cx.vector();
        let mut k = cx.rng.gen_range(-5..=5);
        if k == 0 {
            k = 1;
        }
        let lifted = cga::up(&p)?.scale(f64::from(k));
        cx.check_eq(&cga::down(&lifted)?, &p, &[("p", &p), ("k up(p)", &lifted)]);
    }
    Ok(())
}

fn duality_table(cx: &mut Ctx) -> Result<()> {
    let rows = pga::duality_table(cx.n)?;
    cx.check(rows.len() == 1 << (cx.n + 1), || format!("{} rows", rows.len()));
    for row in &rows {
        let input = Multivector::basis(&cx.sig, &row.input)?;
        let output = Multivector::basis(&cx.sig, &row.output)?.scale(f64::from(row.sign));
        cx.check_eq(&pga::pga_dual(&input)?, &output, &[("A", &input)]);
    }
    if cx.n == 3 {
        for (row, (input, sign, output)) in rows.iter().zip(TABLE_N3) {
            let ok = row.input == input && row.sign == sign && row.output == output;
            cx.check(ok, || format!("row {} -> {}{}", row.input, row.sign, row.output));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `sharp` with the image of `e0` sign-flipped.
    fn broken_sharp(a: &Multivector) -> Multivector {
        let flipped = a.map_terms(|b, c| if b.contains(0) { (b, -c) } else { (b, c) });
        pga::sharp(&flipped)
    }

    #[test]
    fn all_suites_pass_at_three() {
        let config = CheckConfig {
            dims: vec![3],
            iters: 50,
            seed: 42,
        };
        for r in run_all(&config, pga::sharp).unwrap() {
            assert!(r.ok(), "{r:?}");
        }
    }

    #[test]
    fn broken_sharp_fails_the_isomorphism_suites() {
        for name in SHARP_SUITES {
            let r = run_suite(name, 3, 20, 1, broken_sharp).unwrap();
            assert!(!r.ok(), "{name} should fail");
            assert!(r.counterexample.as_deref().unwrap().contains("e0"));
        }
        let good = run_suite("sharp involution", 3, 20, 1, pga::sharp).unwrap();
        assert!(good.ok());
    }

    #[test]
    fn results_are_deterministic() {
        let a = run_suite("flat correspondence", 4, 30, 9, pga::sharp).unwrap();
        let b = run_suite("flat correspondence", 4, 30, 9, pga::sharp).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sign_notes() {
        let r = run_suite("sign rows", 3, 1, 0, pga::sharp).unwrap();
        assert_eq!(r.note.as_deref(), Some("I|sharp(I) = +1, Ic^-1 = -Ic"));
        let r = run_suite("double dual", 2, 5, 0, pga::sharp).unwrap();
        assert_eq!(r.note.as_deref(), Some("double dual sign -1"));
    }

    #[test]
    fn flat_distance_oracle() {
        let d = flat_distance(&[vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0]], &[5.0, 3.0, 4.0]);
        assert_eq!(d, 5.0);
    }

    #[test]
    fn unknown_dimension_is_rejected() {
        let config = CheckConfig {
            dims: vec![7],
            iters: 1,
            seed: 0,
        };
        assert_eq!(run_all(&config, pga::sharp), Err(GaError::DimensionOutOfRange(7)));
    }
}
