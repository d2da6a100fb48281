//! Lower and upper bounds on the burst-covering radius of cyclic codes.
//!
//! Every real-valued bound is reported raw and as the integer it implies for
//! `b`. All integer values are computed exactly; `raw` is informational.

use serde::Serialize;

use crate::cyclic::{CyclicCode, Family};
use crate::gf2::factor::{gcd_u64, lcm_u64};

/// Subsets of factors are enumerated for the lcm bound only up to this many factors.
pub const MAX_SUBSET_FACTORS: usize = 16;

/// Sphere-covering length bound with cyclic bursts: `(q^(r-b+1) - 1)/(q - 1) + 1`.
pub fn min_length_cyclic(q: u64, r: u32, b: u32) -> Option<u128> {
    geometric_sum(q, r.checked_sub(b)? + 1).map(|s| s + 1)
}

/// Sphere-covering length bound with non-cyclic bursts: `(q^(r-b+1) - 1)/(q - 1) + b - 1`.
pub fn min_length_linear(q: u64, r: u32, b: u32) -> Option<u128> {
    geometric_sum(q, r.checked_sub(b)? + 1).map(|s| s + b as u128 - 1)
}

/// `1 + q + ... + q^(k-1)`.
fn geometric_sum(q: u64, k: u32) -> Option<u128> {
    let mut acc = 0u128;
    let mut p = 1u128;
    for _ in 0..k {
        acc = acc.checked_add(p)?;
        p = p.checked_mul(q as u128)?;
    }
    Some(acc)
}

/// Smallest `b` in `2..=r` compatible with the cyclic length bound for an `[n, n-r]_q` code.
pub fn radius_lower_bound_cyclic(q: u64, n: u64, r: u32) -> Option<u32> {
    (2..=r).find(|&b| min_length_cyclic(q, r, b).is_some_and(|m| n as u128 >= m))
}

/// Smallest `b` in `2..=r` compatible with the non-cyclic length bound.
pub fn radius_lower_bound_linear(q: u64, n: u64, r: u32) -> Option<u32> {
    (2..=r).find(|&b| min_length_linear(q, r, b).is_some_and(|m| n as u128 >= m))
}

/// Smallest `b` in `3..=r` with `n >= 2^(r-b+1) + 1` (binary, cyclic bursts).
pub fn radius_lower_bound_binary_improved(n: u64, r: u32) -> Option<u32> {
    (3..=r).find(|&b| {
        let e = r - b + 1;
        e < 127 && n as u128 > (1u128 << e)
    })
}

/// `floor((twice_a + log2(x^2)) / 2)` for integer `twice_a` and `x >= 1`,
/// i.e. `floor(a + log2 x)` with `a` a multiple of one half.
pub fn floor_half_plus_log2(twice_a: i64, x: u128) -> i64 {
    // a + log2 x >= B  <=>  2B - 2a <= log2(x^2)  <=>  2B - 2a <= floor(log2(x^2)).
    let l = floor_log2_square(x) as i64;
    (twice_a + l).div_euclid(2)
}

fn floor_log2_square(x: u128) -> u32 {
    assert!(x >= 1);
    // x^2 may overflow u128; floor(log2 x^2) = 2k or 2k+1 with k = floor(log2 x).
    let k = x.ilog2();
    // x^2 >= 2^(2k+1)  <=>  x >= 2^k * sqrt 2  <=>  x^2 >= 2^(2k+1) checked on the top bits.
    let shift = k.saturating_sub(62);
    let y = x >> shift;
    let yk = k - shift;
    let sq = y * y;
    if sq >= 1u128 << (2 * yk + 1) {
        2 * k + 1
    } else {
        2 * k
    }
}

/// `floor(log2(l) - d/2)` exactly.
pub fn floor_log2_minus_half(l: u128, d: u64) -> i64 {
    floor_half_plus_log2(-(d as i64), l)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub kind: BoundKind,
    /// Integer bound on `b` (floored for upper bounds); `None` when not applicable.
    pub value: Option<i64>,
    /// Real-valued expression before rounding, where one exists.
    pub raw: Option<f64>,
    pub applicable: bool,
    pub note: String,
}

impl BoundEntry {
    fn new(name: &'static str, kind: BoundKind, value: Option<i64>, raw: Option<f64>, note: impl Into<String>) -> Self {
        Self { name, kind, value, raw, applicable: value.is_some(), note: note.into() }
    }

    /// Whether `b` satisfies this entry (vacuously true when not applicable).
    pub fn admits(&self, b: i64) -> bool {
        match (self.kind, self.value) {
            (_, None) => true,
            (BoundKind::Lower, Some(v)) => b >= v,
            (BoundKind::Upper, Some(v)) => b <= v,
            (BoundKind::Exact, Some(v)) => b == v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub r: usize,
    pub entries: Vec<BoundEntry>,
    /// Largest applicable lower bound (exact values count as both).
    pub lower: i64,
    /// Smallest applicable upper bound.
    pub upper: i64,
    /// Descriptions of inconsistencies: crossed bounds or a radius outside them.
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
}

impl BoundsReport {
    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records `b` and flags every applicable bound it breaks.
    pub fn check_radius(&mut self, b: usize) {
        self.radius = Some(b);
        for e in &self.entries {
            if !e.admits(b as i64) {
                self.violations.push(format!(
                    "radius {b} violates {} ({:?} {})",
                    e.name,
                    e.kind,
                    e.value.unwrap_or_default()
                ));
            }
        }
    }
}

/// Evaluates every bound whose hypotheses hold for `code`.
pub fn bounds_report(code: &CyclicCode) -> BoundsReport {
    let n = code.n() as u64;
    let r = code.r();
    let factors = code.factors();
    let d_min = factors.iter().map(|f| f.degree).min().expect("r >= 1");
    let basic_lower = (r - d_min + 1) as i64;
    let mut entries = vec![
        BoundEntry::new("basic_lower", BoundKind::Lower, Some(basic_lower), None, "r - min degree + 1"),
        BoundEntry::new("basic_upper", BoundKind::Upper, Some(r as i64), None, "window of r columns"),
    ];

    let log_n = (n as f64).log2();
    let cyclic = if basic_lower >= 2 { radius_lower_bound_cyclic(2, n, r as u32).map(i64::from) } else { None };
    entries.push(BoundEntry::new(
        "sphere_cyclic",
        BoundKind::Lower,
        cyclic,
        Some(r as f64 + 1.0 - log_n),
        "n >= 2^(r-b+1); needs b >= 2, guaranteed when the basic lower bound is >= 2",
    ));
    let improved =
        if basic_lower >= 3 && r >= 2 { radius_lower_bound_binary_improved(n, r as u32).map(i64::from) } else { None };
    entries.push(BoundEntry::new(
        "sphere_cyclic_binary",
        BoundKind::Lower,
        improved,
        (n > 1).then(|| r as f64 + 1.0 - ((n - 1) as f64).log2()),
        "n >= 2^(r-b+1) + 1; needs b >= 3 and r >= 2",
    ));

    // A non-primitive factor of minimal degree rules out the basic lower bound.
    let nonprimitive =
        factors.iter().filter(|f| f.degree == d_min && !f.primitive).map(|_| (r - d_min + 2) as i64).max();
    entries.push(BoundEntry::new(
        "nonprimitive_min_factor",
        BoundKind::Lower,
        nonprimitive,
        None,
        "a minimal-degree factor is non-primitive",
    ));

    entries.push(lcm_upper_bound(code));
    entries.push(two_primitive_exact(code));

    let linear_factor = factors.iter().any(|f| f.degree == 1).then_some(r as i64);
    entries.push(BoundEntry::new(
        "degree_one_factor",
        BoundKind::Exact,
        linear_factor,
        None,
        "g has a factor of degree 1",
    ));

    match code.family() {
        Family::Bch { e, m } => {
            let (bch_upper, raw) = if e > 1 {
                let twice_a = (2 * m * e) as i64 - m as i64 + 2;
                let raw = m as f64 * (e as f64 - 0.5) + ((e - 1) as f64).log2() + 1.0;
                (Some(floor_half_plus_log2(twice_a, (e - 1) as u128)), Some(raw))
            } else {
                (None, None)
            };
            entries.push(BoundEntry::new("bch_upper", BoundKind::Upper, bch_upper, raw, "e > 1, long code"));
            entries.push(BoundEntry::new(
                "bch_lower",
                BoundKind::Lower,
                (e > 1).then(|| ((e - 1) * m + 2) as i64),
                None,
                "(e - 1) m + 2, e > 1",
            ));
        }
        Family::Melas { m } => {
            entries.push(BoundEntry::new(
                "melas_upper",
                BoundKind::Upper,
                Some((3 * m as i64).div_euclid(2) + 1),
                Some(1.5 * m as f64 + 1.0),
                "3m/2 + 1",
            ));
            entries.push(BoundEntry::new("melas_lower", BoundKind::Lower, Some(m as i64 + 2), None, "m + 2"));
        }
        Family::Generic => {}
    }

    let mut lower = i64::MIN;
    let mut upper = i64::MAX;
    for e in &entries {
        match (e.kind, e.value) {
            (BoundKind::Lower, Some(v)) => lower = lower.max(v),
            (BoundKind::Upper, Some(v)) => upper = upper.min(v),
            (BoundKind::Exact, Some(v)) => {
                lower = lower.max(v);
                upper = upper.min(v);
            }
            _ => {}
        }
    }
    let mut violations = Vec::new();
    if lower > upper {
        violations.push(format!("lower bound {lower} exceeds upper bound {upper}"));
    }
    BoundsReport { n: n as usize, r, entries, lower, upper, violations, radius: None }
}

/// `b <= r - max(0, floor(min_J (log2 lcm ord(g_j) - sum d_j / 2)))`.
fn lcm_upper_bound(code: &CyclicCode) -> BoundEntry {
    let factors = code.factors();
    let r = code.r() as i64;
    if factors.len() > MAX_SUBSET_FACTORS {
        return BoundEntry::new("lcm_order", BoundKind::Upper, None, None, "too many factors to enumerate subsets");
    }
    let orders: Vec<u64> = factors.iter().map(|f| f.order()).collect();
    let mut best: Option<(i64, f64)> = None;
    for mask in 1u32..(1u32 << factors.len()) {
        let mut l = 1u128;
        let mut d = 0u64;
        for (j, f) in factors.iter().enumerate() {
            if mask >> j & 1 == 1 {
                l = lcm_u128(l, orders[j] as u128);
                d += f.degree as u64;
            }
        }
        let exact = floor_log2_minus_half(l, d);
        let raw = (l as f64).log2() - d as f64 / 2.0;
        if best.is_none_or(|(b, _)| exact < b) {
            best = Some((exact, raw));
        }
    }
    let (s, raw) = best.expect("at least one factor");
    BoundEntry::new(
        "lcm_order",
        BoundKind::Upper,
        Some(r - s.max(0)),
        Some(r as f64 - raw.max(0.0)),
        "guaranteed zero run from the frequency bound",
    )
}

fn lcm_u128(a: u128, b: u128) -> u128 {
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        return lcm_u64(a as u64, b as u64) as u128;
    }
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Two primitive factors of degrees `d1 < d2` with `gcd(d1, d2) < d2 - d1` or `d2 - d1 <= 2`.
fn two_primitive_exact(code: &CyclicCode) -> BoundEntry {
    let f = code.factors();
    let value = if f.len() == 2 && f.iter().all(|x| x.primitive) {
        let (d1, d2) = (f[0].degree.min(f[1].degree), f[0].degree.max(f[1].degree));
        let gap = d2 - d1;
        (d1 < d2 && ((gcd_u64(d1 as u64, d2 as u64) as usize) < gap || gap <= 2)).then_some(d2 as i64 + 1)
    } else {
        None
    };
    BoundEntry::new(
        "two_primitive_factors",
        BoundKind::Exact,
        value,
        None,
        "e = 2, both primitive, d1 < d2, gcd(d1, d2) < d2 - d1 or d2 - d1 <= 2",
    )
}
