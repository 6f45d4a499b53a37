//! Algebra descriptors: generator labels, the Gram matrix, and the
//! orthogonal basis used by the fast product path.
//!
//! Generators are stored as bits of a `u32`. The order is fixed as
//! `e0 < e1 < ... < en < ni`, so bit 0 is `e0` and bit `n + 1` is `ni` in the
//! conformal model. Blades are outer products of generators in ascending
//! order.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{GaError, Result};

/// Largest Euclidean dimension supported by every model.
pub const MAX_DIM: usize = 8;

/// Which geometric model a signature describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// `e1..en`, identity Gram matrix.
    Euclidean(usize),
    /// `e0, e1..en` with `e0` null: signature (n, 0, 1).
    Pga(usize),
    /// `e0, e1..en, ni` with the null pair `e0 . ni = -1`.
    Cga(usize),
}

impl Model {
    pub fn euclidean_dim(self) -> usize {
        match self {
            Model::Euclidean(n) | Model::Pga(n) | Model::Cga(n) => n,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Euclidean(n) => write!(f, "G({n})"),
            Model::Pga(n) => write!(f, "PGA({n})"),
            Model::Cga(n) => write!(f, "CGA({n})"),
        }
    }
}

/// A canonical basis blade: the set of generators it contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisBlade(pub u32);

impl BasisBlade {
    pub const SCALAR: BasisBlade = BasisBlade(0);

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, generator: usize) -> bool {
        self.0 & (1 << generator) != 0
    }

    /// Generator indices in ascending order.
    pub fn generators(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }

    /// Order used for display and tables: by grade, then lexicographically
    /// by the ascending generator list (`e01 < e02 < e03 < e12`).
    pub fn canonical_cmp(self, other: BasisBlade) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.generators().cmp(other.generators()))
    }
}

/// Sign picked up when the outer product of the disjoint blades `a` and `b`
/// is brought into ascending generator order.
pub(crate) fn reorder_sign(a: u32, b: u32) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

type Expansion = Vec<(u32, f64)>;

/// Algebra descriptor. Construct through [`Signature::cga`],
/// [`Signature::pga`], [`Signature::euclidean`] or [`Signature::from_gram`].
pub struct Signature {
    model: Model,
    labels: Vec<String>,
    gram: Vec<Vec<i32>>,
    /// Nonzero Gram entries per generator.
    gram_rows: Vec<Vec<(usize, f64)>>,
    /// Squares of the orthogonal internal generators.
    metric: Vec<f64>,
    to_internal: Vec<Expansion>,
    to_external: Vec<Expansion>,
    diagonal: bool,
    oracle_table: OnceLock<Vec<Expansion>>,
    internal_signs: OnceLock<Vec<i8>>,
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Signature")
            .field("model", &self.model)
            .field("labels", &self.labels)
            .field("gram", &self.gram)
            .finish()
    }
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.model == other.model && self.labels == other.labels && self.gram == other.gram)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.model.fmt(f)
    }
}

fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(GaError::DimensionOutOfRange(n))
    }
}

impl Signature {
    /// Conformal model over `R^n`: generators `e0, e1..en, ni`.
    pub fn cga(n: usize) -> Result<Arc<Self>> {
        check_dim(n)?;
        let dim = n + 2;
        let mut gram = vec![vec![0; dim]; dim];
        for (i, row) in gram.iter_mut().enumerate().take(n + 1).skip(1) {
            row[i] = 1;
        }
        gram[0][n + 1] = -1;
        gram[n + 1][0] = -1;
        let mut labels: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        labels.push("ni".to_string());
        Self::from_gram(Model::Cga(n), labels, gram)
    }

    /// Projective model over `R^n`: generators `e0, e1..en` with `e0^2 = 0`.
    pub fn pga(n: usize) -> Result<Arc<Self>> {
        check_dim(n)?;
        let dim = n + 1;
        let mut gram = vec![vec![0; dim]; dim];
        for (i, row) in gram.iter_mut().enumerate().skip(1) {
            row[i] = 1;
        }
        let labels = (0..=n).map(|i| i.to_string()).collect();
        Self::from_gram(Model::Pga(n), labels, gram)
    }

    /// Euclidean algebra `G(n)` with generators `e1..en`.
    pub fn euclidean(n: usize) -> Result<Arc<Self>> {
        check_dim(n)?;
        let mut gram = vec![vec![0; n]; n];
        for (i, row) in gram.iter_mut().enumerate() {
            row[i] = 1;
        }
        let labels = (1..=n).map(|i| i.to_string()).collect();
        Self::from_gram(Model::Euclidean(n), labels, gram)
    }

    /// Builds a signature from a symmetric Gram matrix. The matrix must be
    /// diagonal apart from disjoint hyperbolic pairs (`g_aa = g_bb = 0`,
    /// `g_ab != 0`), which are the only off-diagonal structures the fast
    /// product path can diagonalise.
    pub fn from_gram(model: Model, labels: Vec<String>, gram: Vec<Vec<i32>>) -> Result<Arc<Self>> {
        let dim = gram.len();
        if dim == 0 || dim > MAX_DIM + 2 || labels.len() != dim {
            return Err(GaError::DimensionOutOfRange(dim));
        }
        if gram.iter().any(|row| row.len() != dim) {
            return Err(GaError::UnsupportedMetric("gram matrix is not square".into()));
        }
        for (i, row) in gram.iter().enumerate() {
            for (j, &g) in row.iter().enumerate().take(i) {
                if g != gram[j][i] {
                    return Err(GaError::UnsupportedMetric(format!(
                        "gram matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }

        // Generator expansions: external generator -> internal combination
        // and back. Pairs (a, b) with g_ab = c use
        //   e_a = c/2 (f_a - f_b),  e_b = f_a + f_b,   f_a^2 = 1, f_b^2 = -1.
        let mut metric = vec![0.0; dim];
        let mut forward: Vec<Vec<(usize, f64)>> = (0..dim).map(|i| vec![(i, 1.0)]).collect();
        let mut backward = forward.clone();
        let mut diagonal = true;
        let mut paired = vec![false; dim];
        for a in 0..dim {
            let partners: Vec<usize> = (0..dim).filter(|&j| j != a && gram[a][j] != 0).collect();
            match partners.as_slice() {
                [] => {
                    if !paired[a] {
                        metric[a] = f64::from(gram[a][a]);
                    }
                }
                [b] if *b > a => {
                    let b = *b;
                    let others = (0..dim).filter(|&j| j != a && gram[b][j] != 0).count();
                    if gram[a][a] != 0 || gram[b][b] != 0 || others != 0 {
                        return Err(GaError::UnsupportedMetric(format!(
                            "generators {a} and {b} do not form a null pair"
                        )));
                    }
                    let c = f64::from(gram[a][b]);
                    diagonal = false;
                    paired[a] = true;
                    paired[b] = true;
                    metric[a] = 1.0;
                    metric[b] = -1.0;
                    forward[a] = vec![(a, c / 2.0), (b, -c / 2.0)];
                    forward[b] = vec![(a, 1.0), (b, 1.0)];
                    backward[a] = vec![(a, 1.0 / c), (b, 0.5)];
                    backward[b] = vec![(a, -1.0 / c), (b, 0.5)];
                }
                [b] if paired[a] && *b < a => {}
                _ => {
                    return Err(GaError::UnsupportedMetric(format!(
                        "generator {a} couples to more than one other generator"
                    )))
                }
            }
        }

        let blades = 1usize << dim;
        let expand = |table: &[Vec<(usize, f64)>]| -> Vec<Expansion> {
            (0..blades as u32)
                .map(|bits| {
                    let mut acc: Expansion = vec![(0, 1.0)];
                    for g in BasisBlade(bits).generators() {
                        let mut next = Expansion::new();
                        for &(blade, coeff) in &acc {
                            for &(target, w) in &table[g] {
                                let t = 1u32 << target;
                                if blade & t == 0 {
                                    let value = coeff * w * reorder_sign(blade, t);
                                    accumulate(&mut next, blade | t, value);
                                }
                            }
                        }
                        acc = next;
                    }
                    acc.retain(|&(_, c)| c != 0.0);
                    acc
                })
                .collect()
        };
        let to_internal = expand(&forward);
        let to_external = expand(&backward);

        let gram_rows = gram
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &g)| g != 0)
                    .map(|(j, &g)| (j, f64::from(g)))
                    .collect()
            })
            .collect();

        Ok(Arc::new(Signature {
            model,
            labels,
            gram,
            gram_rows,
            metric,
            to_internal,
            to_external,
            diagonal,
            oracle_table: OnceLock::new(),
            internal_signs: OnceLock::new(),
        }))
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Number of generators.
    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    /// Euclidean dimension `n` of the model.
    pub fn n(&self) -> usize {
        self.model.euclidean_dim()
    }

    pub fn blade_count(&self) -> usize {
        1 << self.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self, i: usize, j: usize) -> i32 {
        self.gram[i][j]
    }

    pub fn gram_matrix(&self) -> &[Vec<i32>] {
        &self.gram
    }

    pub(crate) fn gram_row(&self, i: usize) -> &[(usize, f64)] {
        &self.gram_rows[i]
    }

    pub(crate) fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    pub(crate) fn to_internal(&self, bits: u32) -> &[(u32, f64)] {
        &self.to_internal[bits as usize]
    }

    pub(crate) fn to_external(&self, bits: u32) -> &[(u32, f64)] {
        &self.to_external[bits as usize]
    }

    /// Sign and metric factor of the product of two internal (orthogonal)
    /// basis blades: `-1`, `0` or `1`.
    pub(crate) fn internal_sign(&self, a: u32, b: u32) -> f64 {
        let size = self.blade_count();
        let table = self.internal_signs.get_or_init(|| {
            let mut table = Vec::with_capacity(size * size);
            for a in 0..size as u32 {
                for b in 0..size as u32 {
                    let mut weight = reorder_sign(a, b);
                    let mut common = a & b;
                    while common != 0 {
                        weight *= self.metric[common.trailing_zeros() as usize];
                        common &= common - 1;
                    }
                    table.push(weight as i8);
                }
            }
            table
        });
        f64::from(table[a as usize * size + b as usize])
    }

    pub(crate) fn oracle_table(&self, build: impl FnOnce() -> Vec<Expansion>) -> &[Expansion] {
        self.oracle_table.get_or_init(build)
    }

    /// Blade of all generators.
    pub fn pseudoscalar_blade(&self) -> BasisBlade {
        BasisBlade((1u32 << self.dim()) - 1)
    }

    /// Bit index of `e0`, if the model has one.
    pub fn origin(&self) -> Option<usize> {
        match self.model {
            Model::Pga(_) | Model::Cga(_) => Some(0),
            Model::Euclidean(_) => None,
        }
    }

    /// Bit index of `ni`, if the model has one.
    pub fn infinity(&self) -> Option<usize> {
        match self.model {
            Model::Cga(n) => Some(n + 1),
            _ => None,
        }
    }

    /// Blade of the Euclidean generators `e1..en`.
    pub fn euclidean_blade(&self) -> BasisBlade {
        let n = self.n();
        match self.model {
            Model::Euclidean(_) => BasisBlade((1 << n) - 1),
            Model::Pga(_) | Model::Cga(_) => BasisBlade(((1 << n) - 1) << 1),
        }
    }

    /// Bit index of the Euclidean generator `e_i` (`1 <= i <= n`).
    pub fn euclidean_index(&self, i: usize) -> usize {
        match self.model {
            Model::Euclidean(_) => i - 1,
            Model::Pga(_) | Model::Cga(_) => i,
        }
    }

    /// Canonical name of a blade: `1`, `e0`, `e13`, `ni`, `e123ni`.
    pub fn blade_name(&self, blade: BasisBlade) -> String {
        if blade.0 == 0 {
            return "1".to_string();
        }
        let mut digits = String::new();
        let mut tail = String::new();
        for g in blade.generators() {
            let label = &self.labels[g];
            if label.chars().all(|c| c.is_ascii_digit()) {
                digits.push_str(label);
            } else {
                tail.push_str(label);
            }
        }
        if digits.is_empty() {
            tail
        } else {
            format!("e{digits}{tail}")
        }
    }

    /// Parses a blade literal (`1`, `e0`, `e032`, `ni`, `e12ni`) into its
    /// canonical blade and the sign of the permutation that sorts it.
    pub fn parse_blade(&self, name: &str) -> Result<(BasisBlade, f64)> {
        let unknown = || GaError::UnknownBlade(name.to_string());
        if name == "1" {
            return Ok((BasisBlade::SCALAR, 1.0));
        }
        let (digits, with_ni) = if name == "ni" {
            ("", true)
        } else if let Some(rest) = name.strip_prefix('e') {
            match rest.strip_suffix("ni") {
                Some(d) => (d, true),
                None => (rest, false),
            }
        } else {
            return Err(unknown());
        };
        if name != "ni" && digits.is_empty() {
            return Err(unknown());
        }
        let mut order = Vec::new();
        for ch in digits.chars() {
            let idx = self
                .labels
                .iter()
                .position(|l| l.len() == 1 && l.starts_with(ch))
                .ok_or_else(unknown)?;
            order.push(idx);
        }
        if with_ni {
            order.push(self.infinity().ok_or_else(unknown)?);
        }
        let mut bits = 0u32;
        let mut sign = 1.0;
        for g in order {
            let b = 1u32 << g;
            if bits & b != 0 {
                return Err(unknown());
            }
            sign *= reorder_sign(bits, b);
            bits |= b;
        }
        Ok((BasisBlade(bits), sign))
    }
}

pub(crate) fn accumulate(terms: &mut Expansion, blade: u32, value: f64) {
    match terms.iter_mut().find(|(b, _)| *b == blade) {
        Some((_, c)) => *c += value,
        None => terms.push((blade, value)),
    }
}
