//! Correctly rounded sums of products.
//!
//! Products of float multivectors accumulate each coefficient from many
//! terms; a plain running sum depends on the order of the terms, so two
//! mathematically equal products evaluated along different paths can differ
//! in the last bit. Here every term `a * b * w` is split exactly into
//! `f64` parts (`fma` two-product) and each coefficient is rounded once at
//! the end with Shewchuk's non-overlapping partials, as in Python's
//! `math.fsum`.

fn two_product(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Sum of `values`, rounded once to nearest.
pub(crate) fn rounded_sum(values: &[f64]) -> f64 {
    if values.iter().any(|x| !x.is_finite()) {
        return values.iter().sum();
    }
    let mut partials: Vec<f64> = Vec::new();
    for &value in values {
        let mut x = value;
        let mut kept = 0;
        for j in 0..partials.len() {
            let mut y = partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[kept] = lo;
                kept += 1;
            }
            x = hi;
        }
        partials.truncate(kept);
        partials.push(x);
    }

    let Some(mut n) = partials.len().checked_sub(1) else {
        return 0.0;
    };
    let mut hi = partials[n];
    let mut lo = 0.0;
    while n > 0 {
        let x = hi;
        n -= 1;
        let y = partials[n];
        hi = x + y;
        lo = y - (hi - x);
        if lo != 0.0 {
            break;
        }
    }
    // half-way case: the remaining partials decide the rounding direction
    if n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0)) {
        let y = lo * 2.0;
        let x = hi + y;
        if y == x - hi {
            hi = x;
        }
    }
    hi
}

/// Per-blade collection of exact terms.
pub(crate) struct ExactSums {
    parts: Vec<Vec<f64>>,
}

impl ExactSums {
    pub(crate) fn new(size: usize) -> Self {
        ExactSums {
            parts: vec![Vec::new(); size],
        }
    }

    /// Adds `a * b * w` to blade `r` without rounding.
    pub(crate) fn add(&mut self, r: u32, a: f64, b: f64, w: f64) {
        let slot = &mut self.parts[r as usize];
        let (p, e) = two_product(a, b);
        for x in [p, e] {
            if x == 0.0 {
                continue;
            }
            let (q, f) = two_product(x, w);
            slot.push(q);
            if f != 0.0 {
                slot.push(f);
            }
        }
    }

    pub(crate) fn finish(self) -> Vec<f64> {
        self.parts.iter().map(|p| rounded_sum(p)).collect()
    }
}
