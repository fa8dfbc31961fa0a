//! Decorated one-row and accordion arrays attached to a short pattern, and
//! their Gauss-sum weights.
//!
//! Ten kinds of array share one representation.  Entries come from the
//! running sums of the pattern; box/circle decorations encode equality in
//! the defining upper bounds and vanishing of the step sizes.  Every kind's
//! weight is a product of per-entry values: circled entries give powers of
//! `q`, boxed entries give genuine prime-power Gauss sums (with the
//! order-doubled sum at the long-root position), undecorated entries give
//! the Euler-phi value when `n` divides the entry and zero otherwise.

use crate::gauss::{gs_prime_power, GaussElement};
use crate::patterns::{
    classify, is_strict, weight_of, Classification, ShortPattern, WeightVector,
};
use crate::Error;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrayKind {
    Gamma,
    Delta,
    GammaIota,
    DeltaIota,
    GammaPrime,
    DeltaPrime,
    GammaPrimeIota,
    DeltaPrimeIota,
    GammaFlat,
    DeltaFlat,
}

impl ArrayKind {
    pub fn name(&self) -> &'static str {
        match self {
            ArrayKind::Gamma => "Gamma",
            ArrayKind::Delta => "Delta",
            ArrayKind::GammaIota => "GammaIota",
            ArrayKind::DeltaIota => "DeltaIota",
            ArrayKind::GammaPrime => "GammaPrime",
            ArrayKind::DeltaPrime => "DeltaPrime",
            ArrayKind::GammaPrimeIota => "GammaPrimeIota",
            ArrayKind::DeltaPrimeIota => "DeltaPrimeIota",
            ArrayKind::GammaFlat => "GammaFlat",
            ArrayKind::DeltaFlat => "DeltaFlat",
        }
    }

    fn is_iota(&self) -> bool {
        matches!(
            self,
            ArrayKind::GammaIota
                | ArrayKind::DeltaIota
                | ArrayKind::GammaPrimeIota
                | ArrayKind::DeltaPrimeIota
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decor {
    None,
    Boxed,
    Circled,
    BoxedCircled,
}

impl Decor {
    pub fn of(boxed: bool, circled: bool) -> Decor {
        match (boxed, circled) {
            (true, true) => Decor::BoxedCircled,
            (true, false) => Decor::Boxed,
            (false, true) => Decor::Circled,
            (false, false) => Decor::None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedArray {
    pub kind: ArrayKind,
    pub entries: Vec<i64>,
    pub decor: Vec<Decor>,
    /// power of `q` multiplying the entry product
    pub prefactor_qexp: i64,
    /// 0-based position using the order-doubled boxed value, if any
    pub long_pos: Option<usize>,
    /// the shift parameter N for the iota kinds
    pub shift: Option<i64>,
    /// array declared non-strict outright (weight 0)
    pub forced_nonstrict: bool,
}

impl DecoratedArray {
    pub fn is_strict(&self) -> bool {
        !self.forced_nonstrict && !self.decor.contains(&Decor::BoxedCircled)
    }

    /// Debug dump: header with kind and prefactor, then one line per entry
    /// in the form `value[B][C]`.
    pub fn dump(&self) -> String {
        let mut s = format!("kind={} prefactor=q^{}", self.kind.name(), self.prefactor_qexp);
        if let Some(n) = self.shift {
            s.push_str(&format!(" N={n}"));
        }
        if self.forced_nonstrict {
            s.push_str(" non-strict");
        }
        s.push('\n');
        for (e, d) in self.entries.iter().zip(&self.decor) {
            s.push_str(&e.to_string());
            match d {
                Decor::None => {}
                Decor::Boxed => s.push_str("[B]"),
                Decor::Circled => s.push_str("[C]"),
                Decor::BoxedCircled => s.push_str("[B][C]"),
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for DecoratedArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dump())
    }
}

/// Per-entry weight: the value a single decorated entry contributes.
/// `long` selects the order-doubled Gauss sum in the boxed case.
///
/// Entries of the shifted arrays may be zero or negative under an
/// admissible shift; the values extend by the `q`-power recurrences, so
/// for `c >= 1` the boxed value coincides with the prime-power sum
/// `g_t(p^{c-1}, p^c)` and the undecorated value with `q^c (1 - q^{-1})`.
pub fn entry_value(c: i64, decor: Decor, long: bool, n: u32) -> GaussElement {
    match decor {
        Decor::BoxedCircled => GaussElement::zero(n),
        Decor::Circled => GaussElement::q_pow(n, c),
        Decor::Boxed => {
            let t = (if long { 2 * c } else { c }).rem_euclid(n as i64);
            if t == 0 {
                GaussElement::q_pow(n, c - 1).scale(-1)
            } else {
                GaussElement::q_pow(n, c - 1)
                    .mul(&GaussElement::g_symbol(n, t).expect("nonzero index"))
            }
        }
        Decor::None => {
            if c.rem_euclid(n as i64) == 0 {
                GaussElement::q_pow(n, c).sub(&GaussElement::q_pow(n, c - 1))
            } else {
                GaussElement::zero(n)
            }
        }
    }
}

/// Weight of a decorated array: the product of its entry values times the
/// `q`-power prefactor; zero for arrays declared non-strict.
pub fn array_weight(arr: &DecoratedArray, n: u32) -> GaussElement {
    if arr.forced_nonstrict {
        return GaussElement::zero(n);
    }
    let mut acc = GaussElement::one(n);
    for (pos, (&c, &d)) in arr.entries.iter().zip(&arr.decor).enumerate() {
        let v = entry_value(c, d, arr.long_pos == Some(pos), n);
        if v.is_zero() {
            return GaussElement::zero(n);
        }
        acc = acc.mul(&v);
    }
    acc.mul_q_pow(arr.prefactor_qexp)
}

/// The running-sum entries of the `Gamma` one-row array, 1-based helpers.
struct GammaEntries<'a> {
    t: &'a ShortPattern,
    k: Vec<u32>,
}

impl<'a> GammaEntries<'a> {
    fn new(t: &'a ShortPattern) -> Self {
        GammaEntries { t, k: t.weight() }
    }

    /// `cbar_{1,j}` for `1 <= j <= r` (equals the middle entry at `j = r`).
    fn cbar(&self, j: usize) -> i64 {
        let r2 = 2 * self.t.rank();
        let s: u32 = (1..j).map(|i| self.t.d(r2 - i)).sum();
        s as i64 + self.t.dp(j) as i64
    }

    /// `c_{1,j}` for `1 <= j <= r`.
    fn c(&self, j: usize) -> i64 {
        let r = self.t.rank();
        if j == r {
            self.cbar(r)
        } else {
            self.k[j - 1] as i64 - self.cbar(j)
        }
    }

    /// One-row layout `(c_{1,1}, ..., c_{1,r}, cbar_{1,r-1}, ..., cbar_{1,1})`.
    fn row(&self) -> Vec<i64> {
        let r = self.t.rank();
        let mut v: Vec<i64> = (1..=r).map(|j| self.c(j)).collect();
        v.extend((1..r).rev().map(|j| self.cbar(j)));
        v
    }
}

/// The running-sum entries of the `Delta` one-row array.
struct DeltaEntries<'a> {
    t: &'a ShortPattern,
}

impl<'a> DeltaEntries<'a> {
    fn new(t: &'a ShortPattern) -> Self {
        DeltaEntries { t }
    }

    /// `fcbar_{1,j}` for `1 <= j <= r-1`.
    fn fcbar(&self, j: usize) -> i64 {
        let r2 = 2 * self.t.rank();
        (1..=j).map(|i| self.t.d(r2 - i) as i64).sum()
    }

    /// `fc_{1,j}` for `1 <= j <= r`.
    fn fc(&self, j: usize) -> i64 {
        let r = self.t.rank();
        let mid: i64 = self.fcbar(r) + self.t.d(r) as i64;
        if j == r {
            mid
        } else {
            mid + (j..r).map(|i| self.t.d(i) as i64).sum::<i64>()
        }
    }

    fn row(&self) -> Vec<i64> {
        let r = self.t.rank();
        let mut v: Vec<i64> = (1..=r).map(|j| self.fc(j)).collect();
        v.extend((1..r).rev().map(|j| self.fcbar(j)));
        v
    }
}

/// Decorations of the one-row `Gamma` array (both plain and iota-shifted
/// circling conventions share the boxing conditions).
fn gamma_decor(t: &ShortPattern, mu: &[u32], iota: bool) -> Vec<Decor> {
    let r = t.rank();
    let r2 = 2 * r;
    let mu1 = |j: usize| mu[j - 1] as i64; // mu_j, 1-based
    let d = |j: usize| t.d(j) as i64;
    let dp = |j: usize| t.dp(j) as i64;
    let mut out = Vec::with_capacity(r2 - 1);
    for p in 1..=r2 - 1 {
        let (boxed, circled);
        if p <= r {
            let j = p;
            boxed = d(j) + dp(j) == mu1(r + 1 - j) + dp(j - 1) - d(r2 + 1 - j) + d(r2 - j);
            circled = if iota {
                d(j - 1) == dp(j - 1) && dp(j) == 0
            } else if j < r {
                d(j) == dp(j) && dp(j + 1) == 0
            } else {
                // middle entry: the barred rule at j = r
                dp(r) == 0 && d(r + 1) == dp(r - 1)
            };
        } else {
            let j = r2 - p; // barred index, 1 <= j <= r-1
            boxed = dp(j) == mu1(r + 1 - j) + dp(j - 1) - d(r2 + 1 - j);
            circled = if iota {
                dp(j + 1) == 0 && d(r2 - j) == dp(j)
            } else {
                dp(j) == 0 && d(r2 + 1 - j) == dp(j - 1)
            };
        }
        out.push(Decor::of(boxed, circled));
    }
    out
}

/// Decorations of the one-row `Delta` array.
fn delta_decor(t: &ShortPattern, mu: &[u32], entries: &[i64]) -> Vec<Decor> {
    let r = t.rank();
    let r2 = 2 * r;
    let mu1 = |j: usize| mu[j - 1] as i64;
    let d = |j: usize| t.d(j) as i64;
    let mut out = Vec::with_capacity(r2 - 1);
    for p in 1..=r2 - 1 {
        let boxed = if p <= r {
            let j = p;
            d(j) == mu1(r + 1 - j)
        } else {
            let j = r2 - p;
            d(j + 1) == mu1(r - j) + d(j) - d(r2 - j)
        };
        let circled = (p > 1 && t.d(p - 1) == 0) || entries[p - 1] == 0;
        out.push(Decor::of(boxed, circled));
    }
    out
}

/// Decorations of the `DeltaIota` array (entries shifted one slot left).
fn delta_iota_decor(t: &ShortPattern, mu: &[u32]) -> Vec<Decor> {
    let r = t.rank();
    let r2 = 2 * r;
    let mu1 = |j: usize| mu[j - 1] as i64;
    let d = |j: usize| t.d(j) as i64;
    let mut out = Vec::with_capacity(r2 - 1);
    for p in 1..=r2 - 1 {
        let boxed = if p < r {
            d(p + 1) == mu1(r - p)
        } else {
            let j = r2 - p; // barred index, 1 <= j <= r
            d(j) == mu1(r + 1 - j) + d(j - 1) - d(r2 - j + 1)
        };
        let circled = t.d(p) == 0;
        out.push(Decor::of(boxed, circled));
    }
    out
}

fn validate_shift(shift: Option<i64>, n: u32, k1: i64) -> Result<i64, Error> {
    let s = shift.ok_or(Error::MissingShift)?;
    if s % n as i64 != 0 || s <= k1 {
        return Err(Error::InvalidShift { n_shift: s, n, k1 });
    }
    Ok(s)
}

/// Smallest admissible shift: the least multiple of `n` exceeding `k_1`.
pub fn default_shift(n: u32, k1: u32) -> i64 {
    (k1 as i64 / n as i64 + 1) * n as i64
}

/// Build a decorated array of the requested kind for a short pattern.
///
/// The primed kinds dispatch on the weight classification: totally
/// resonant weights get the two-row accordion variants (flattened
/// row-major), Class I and Class II weights get the re-decorated one-row
/// variants.  Iota kinds need the shift parameter `N`; flat kinds require
/// `n | k_r`.
pub fn build_array(
    t: &ShortPattern,
    mu: &[u32],
    kind: ArrayKind,
    n: u32,
    shift: Option<i64>,
) -> Result<DecoratedArray, Error> {
    let r = t.rank();
    assert_eq!(mu.len(), r, "mu must match the pattern rank");
    let r2 = 2 * r;
    let w = weight_of(t, mu);
    let k1 = *w.k.first().unwrap() as i64;
    let kr = *w.k.last().unwrap();
    let ge = GammaEntries::new(t);
    let de = DeltaEntries::new(t);
    let d = |j: usize| t.d(j) as i64;
    let mu1 = |j: usize| mu[j - 1] as i64;

    // eps_2 for the class boundary test
    let eps2: i64 = if r == 2 { 2 } else { 1 };
    let boundary = r >= 2 && k1 - eps2 * (w.k[1] as i64) == mu1(r);

    match kind {
        ArrayKind::Gamma => Ok(DecoratedArray {
            kind,
            entries: ge.row(),
            decor: gamma_decor(t, mu, false),
            prefactor_qexp: 0,
            long_pos: Some(r - 1),
            shift: None,
            forced_nonstrict: false,
        }),
        ArrayKind::Delta => {
            let entries = de.row();
            let decor = delta_decor(t, mu, &entries);
            Ok(DecoratedArray {
                kind,
                entries,
                decor,
                prefactor_qexp: -(kr as i64),
                long_pos: None,
                shift: None,
                forced_nonstrict: false,
            })
        }
        ArrayKind::GammaIota => {
            let nshift = validate_shift(shift, n, k1)?;
            let entries = ge.row().into_iter().map(|c| nshift - k1 + c).collect();
            Ok(DecoratedArray {
                kind,
                entries,
                decor: gamma_decor(t, mu, true),
                prefactor_qexp: 0,
                long_pos: Some(r - 1),
                shift: Some(nshift),
                forced_nonstrict: false,
            })
        }
        ArrayKind::DeltaIota => {
            let nshift = validate_shift(shift, n, k1)?;
            let row = de.row();
            // the shift base is the leading entry of the Delta row (it
            // equals k_1 for rank >= 2 but doubles the single entry at
            // rank 1); the vacated last slot continues the row with 0
            let base = row[0];
            let mut entries: Vec<i64> =
                (1..r2 - 1).map(|p| nshift - base + row[p]).collect();
            entries.push(nshift - base);
            let dsum: i64 = (1..=r).map(|i| d(i)).sum();
            Ok(DecoratedArray {
                kind,
                entries,
                decor: delta_iota_decor(t, mu),
                prefactor_qexp: dsum,
                long_pos: None,
                shift: Some(nshift),
                forced_nonstrict: false,
            })
        }
        ArrayKind::GammaPrime | ArrayKind::GammaFlat => match w.class {
            Classification::TotallyResonant => {
                // two-row accordion, flattened row-major:
                // top (cbar_{1,r}, ..., cbar_{1,1}), bottom (c_{1,r-1}, ..., c_{1,1})
                let mut entries: Vec<i64> = (1..=r).rev().map(|j| ge.cbar(j)).collect();
                let bottom_shift = if kind == ArrayKind::GammaFlat {
                    if kr % n != 0 {
                        return Err(Error::FlatShift { n, kr });
                    }
                    kr as i64
                } else {
                    0
                };
                entries.extend((1..r).rev().map(|j| ge.c(j) - bottom_shift));
                let mut decor = Vec::with_capacity(r2 - 1);
                // top row: cbar_{1,j} circled iff the step from j-1 vanishes,
                // boxed iff the step equals mu_{r-j+1}
                for j in (1..=r).rev() {
                    let step = ge.cbar(j) - if j > 1 { ge.cbar(j - 1) } else { 0 };
                    decor.push(Decor::of(step == mu1(r - j + 1), step == 0));
                }
                // bottom row: circled with cbar_{1,j+1}, boxed with cbar_{1,j}
                for j in (1..r).rev() {
                    let step_up = ge.cbar(j + 1) - ge.cbar(j);
                    let step = ge.cbar(j) - if j > 1 { ge.cbar(j - 1) } else { 0 };
                    decor.push(Decor::of(step == mu1(r - j + 1), step_up == 0));
                }
                Ok(DecoratedArray {
                    kind,
                    entries,
                    decor,
                    prefactor_qexp: 0,
                    long_pos: if kind == ArrayKind::GammaFlat { None } else { Some(0) },
                    shift: None,
                    forced_nonstrict: false,
                })
            }
            Classification::ClassI { i0, a } if kind == ArrayKind::GammaPrime => {
                let mut arr = build_array(t, mu, ArrayKind::Gamma, n, None)?;
                arr.kind = kind;
                if !boundary {
                    arr.decor[r2 - i0 - 1] = Decor::None;
                    arr.decor[i0 - 1] = Decor::of(
                        d(r2 - i0) == mu1(r + 1 - i0) - a as i64,
                        d(r2 - i0) == 0,
                    );
                }
                Ok(arr)
            }
            Classification::ClassII { i0, .. } if kind == ArrayKind::GammaPrime => {
                let mut arr = build_array(t, mu, ArrayKind::Gamma, n, None)?;
                arr.kind = kind;
                // backward-looking circling strictly between the split points
                for p in i0 + 1..=r2 - i0 - 1 {
                    let circ = arr.entries[p - 1] == arr.entries[p - 2];
                    let boxed = matches!(arr.decor[p - 1], Decor::Boxed | Decor::BoxedCircled);
                    arr.decor[p - 1] = Decor::of(boxed, circ);
                }
                Ok(arr)
            }
            _ => Err(Error::KindClassMismatch { kind: kind.name(), class: w.class.name() }),
        },
        ArrayKind::DeltaPrime | ArrayKind::DeltaFlat => match w.class {
            Classification::TotallyResonant => {
                // top (fc_{1,r}, ..., fc_{1,1}), bottom (fcbar_{1,r-1}, ..., fcbar_{1,1})
                let top_shift = if kind == ArrayKind::DeltaFlat {
                    if kr % n != 0 {
                        return Err(Error::FlatShift { n, kr });
                    }
                    kr as i64
                } else {
                    0
                };
                let mut entries: Vec<i64> = (1..=r).rev().map(|j| de.fc(j) - top_shift).collect();
                entries.extend((1..r).rev().map(|j| de.fcbar(j)));
                // circled: fc_{1,j} = fc_{1,j+1} (at j = r against fcbar_{1,r-1});
                // boxed: step mu_{r-j+1} (doubled at j = r)
                let step = |j: usize| -> i64 {
                    if j == r {
                        de.fc(r) - if r >= 2 { de.fcbar(r - 1) } else { 0 }
                    } else {
                        de.fc(j) - de.fc(j + 1)
                    }
                };
                let mut decor = Vec::with_capacity(r2 - 1);
                for j in (1..=r).rev() {
                    let boxed = if j == r { step(r) == 2 * mu1(1) } else { step(j) == mu1(r - j + 1) };
                    decor.push(Decor::of(boxed, step(j) == 0));
                }
                for j in (1..r).rev() {
                    // bottom: circled with fc_{1,j}, boxed with fc_{1,j+1}
                    let boxed = if j + 1 == r {
                        step(r) == 2 * mu1(1)
                    } else {
                        step(j + 1) == mu1(r - j)
                    };
                    decor.push(Decor::of(boxed, step(j) == 0));
                }
                let dsum: i64 = (1..=r).map(|i| d(i)).sum();
                Ok(DecoratedArray {
                    kind,
                    entries,
                    decor,
                    prefactor_qexp: if kind == ArrayKind::DeltaFlat { 0 } else { -dsum },
                    long_pos: None,
                    shift: None,
                    forced_nonstrict: false,
                })
            }
            Classification::ClassI { i0, .. } if kind == ArrayKind::DeltaPrime => {
                let mut arr = build_array(t, mu, ArrayKind::Delta, n, None)?;
                arr.kind = kind;
                if !boundary {
                    arr.decor[r2 - i0 - 1] = Decor::None;
                    let p = r2 - i0 - 1; // position of fcbar_{1,i0+1}
                    let boxed = matches!(arr.decor[p - 1], Decor::Boxed | Decor::BoxedCircled);
                    arr.decor[p - 1] = Decor::of(boxed, d(r2 - i0 - 1) == 0);
                }
                Ok(arr)
            }
            Classification::ClassII { i0, .. } if kind == ArrayKind::DeltaPrime => {
                let mut arr = build_array(t, mu, ArrayKind::Delta, n, None)?;
                arr.kind = kind;
                arr.decor[i0] = Decor::None; // fc_{1,i0+1}
                if i0 > 1 {
                    arr.decor[r2 - i0] = Decor::of(d(i0) == mu1(r + 1 - i0), d(i0) == 0);
                } else {
                    let boxed = matches!(arr.decor[0], Decor::Boxed | Decor::BoxedCircled);
                    arr.decor[0] = Decor::of(boxed, d(1) == 0);
                }
                Ok(arr)
            }
            _ => Err(Error::KindClassMismatch { kind: kind.name(), class: w.class.name() }),
        },
        ArrayKind::GammaPrimeIota => {
            let nshift = validate_shift(shift, n, k1)?;
            match w.class {
                Classification::ClassI { i0, .. } => {
                    let mut arr = build_array(t, mu, ArrayKind::GammaIota, n, Some(nshift))?;
                    arr.kind = kind;
                    if boundary {
                        arr.forced_nonstrict = true;
                        return Ok(arr);
                    }
                    arr.decor[r2 - i0 - 1] = Decor::None;
                    for p in i0 + 1..r2 - i0 {
                        let circ = arr.entries[p - 1] == arr.entries[p];
                        let boxed = matches!(arr.decor[p - 1], Decor::Boxed | Decor::BoxedCircled);
                        arr.decor[p - 1] = Decor::of(boxed, circ);
                    }
                    Ok(arr)
                }
                Classification::ClassII { i0, .. } => {
                    let mut arr = build_array(t, mu, ArrayKind::GammaIota, n, Some(nshift))?;
                    arr.kind = kind;
                    arr.decor[i0 - 1] = Decor::None;
                    arr.decor[r2 - i0 - 1] =
                        Decor::of(d(i0) == mu1(r + 1 - i0), d(i0) == 0);
                    Ok(arr)
                }
                Classification::TotallyResonant => {
                    Err(Error::KindClassMismatch { kind: kind.name(), class: w.class.name() })
                }
            }
        }
        ArrayKind::DeltaPrimeIota => {
            let nshift = validate_shift(shift, n, k1)?;
            match w.class {
                Classification::ClassI { i0, .. } => {
                    let mut arr = build_array(t, mu, ArrayKind::DeltaIota, n, Some(nshift))?;
                    arr.kind = kind;
                    if boundary {
                        arr.forced_nonstrict = true;
                        return Ok(arr);
                    }
                    // fcbar(iota)_{1,j} sits at one-row position 2r - j
                    arr.decor[r2 - i0 - 2] = Decor::None; // j = i0 + 1
                    let idx = r2 - i0 - 3; // j = i0 + 2, 0-based
                    let boxed = matches!(arr.decor[idx], Decor::Boxed | Decor::BoxedCircled);
                    arr.decor[idx] = Decor::of(boxed, d(r2 - i0 - 1) == 0);
                    Ok(arr)
                }
                Classification::ClassII { i0, .. } => {
                    let mut arr = build_array(t, mu, ArrayKind::DeltaIota, n, Some(nshift))?;
                    arr.kind = kind;
                    arr.decor[i0 - 1] = Decor::None;
                    arr.decor[r2 - i0 - 1] =
                        Decor::of(d(i0) == mu1(r + 1 - i0), d(i0) == 0);
                    Ok(arr)
                }
                Classification::TotallyResonant => {
                    Err(Error::KindClassMismatch { kind: kind.name(), class: w.class.name() })
                }
            }
        }
    }
}

/// Weight of a pattern under a given kind (shift defaults to the smallest
/// admissible `N` for the iota kinds).
pub fn pattern_weight(
    t: &ShortPattern,
    mu: &[u32],
    kind: ArrayKind,
    n: u32,
    shift: Option<i64>,
) -> Result<GaussElement, Error> {
    let shift = if kind.is_iota() && shift.is_none() {
        Some(default_shift(n, t.weight()[0]))
    } else {
        shift
    };
    Ok(array_weight(&build_array(t, mu, kind, n, shift)?, n))
}

/// One-row entry values `c_{1,j}` and `cbar_{1,j}` (index `j-1` holds the
/// 1-based entry `j`, `j <= r`; the two agree at `j = r`).
pub(crate) fn gamma_row(t: &ShortPattern) -> (Vec<i64>, Vec<i64>) {
    let ge = GammaEntries::new(t);
    let r = t.rank();
    ((1..=r).map(|j| ge.c(j)).collect(), (1..=r).map(|j| ge.cbar(j)).collect())
}

/// The split of a non-totally-resonant pattern into its resonant head and
/// lower-rank tail, together with the reduced bound vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPattern {
    pub t_star: ShortPattern,
    pub t_sharp: ShortPattern,
    pub mu_star: Vec<u32>,
    pub mu_sharp: Vec<u32>,
}

/// `t* = (d_1, ..., d_{i0-1}, d'_{i0}, d_{2r-i0+1}, ..., d_{2r-1})`,
/// `t# = (d_{i0+1}, ..., d_{2r-i0-1})`, with the bound vectors shrunk by
/// `a = |d_{i0} - d_{2r-i0}|` on the side determined by the class.
pub fn classify_and_split(t: &ShortPattern, mu: &[u32]) -> Result<SplitPattern, Error> {
    let r = t.rank();
    let r2 = 2 * r;
    let w = weight_of(t, mu);
    let (i0, a, class_one) = match w.class {
        Classification::TotallyResonant => return Err(Error::TotallyResonant),
        Classification::ClassI { i0, a } => (i0, a, true),
        Classification::ClassII { i0, a } => (i0, a, false),
    };
    let mut star = Vec::with_capacity(2 * i0 - 1);
    star.extend((1..i0).map(|j| t.d(j)));
    star.push(t.dp(i0));
    star.extend((r2 - i0 + 1..=r2 - 1).map(|j| t.d(j)));
    let sharp: Vec<u32> = (i0 + 1..=r2 - i0 - 1).map(|j| t.d(j)).collect();
    // mu_star = (mu_{r+1-i0}[-a], mu_{r+2-i0}, ..., mu_r)
    let mut mu_star: Vec<u32> = (r + 1 - i0..=r).map(|j| mu[j - 1]).collect();
    // mu_sharp = (mu_1, ..., mu_{r-i0}[-a])
    let mut mu_sharp: Vec<u32> = (1..=r - i0).map(|j| mu[j - 1]).collect();
    if class_one {
        mu_star[0] -= a.min(mu_star[0]);
    } else {
        let last = mu_sharp.len() - 1;
        mu_sharp[last] -= a.min(mu_sharp[last]);
    }
    Ok(SplitPattern {
        t_star: ShortPattern::new(star),
        t_sharp: ShortPattern::new(sharp),
        mu_star,
        mu_sharp,
    })
}

/// The four sums of Statement A for one strict weight.
#[derive(Debug, Clone)]
pub struct StatementASums {
    pub h_gamma: GaussElement,
    pub h_delta: GaussElement,
    pub h_gamma_iota: GaussElement,
    pub h_delta_iota: GaussElement,
    pub shift: i64,
}

/// Sum the four array weights over all patterns of the given strict weight.
pub fn statement_a_sums(
    k: &[u32],
    mu: &[u32],
    n: u32,
    shift: Option<i64>,
) -> Result<StatementASums, Error> {
    statement_a_sums_over(&patterns_with_weight(mu, k), k, mu, n, shift)
}

pub fn patterns_with_weight(mu: &[u32], k: &[u32]) -> Vec<ShortPattern> {
    crate::patterns::enumerate_cq1(mu)
        .into_iter()
        .filter(|t| t.weight() == k)
        .collect()
}

fn statement_a_sums_over(
    pats: &[ShortPattern],
    k: &[u32],
    mu: &[u32],
    n: u32,
    shift: Option<i64>,
) -> Result<StatementASums, Error> {
    if !is_strict(k, mu) {
        return Err(Error::NonStrictWeight);
    }
    let nshift = shift.unwrap_or_else(|| default_shift(n, k[0]));
    let mut sums = StatementASums {
        h_gamma: GaussElement::zero(n),
        h_delta: GaussElement::zero(n),
        h_gamma_iota: GaussElement::zero(n),
        h_delta_iota: GaussElement::zero(n),
        shift: nshift,
    };
    for t in pats {
        sums.h_gamma.add_assign(&pattern_weight(t, mu, ArrayKind::Gamma, n, None)?);
        sums.h_delta.add_assign(&pattern_weight(t, mu, ArrayKind::Delta, n, None)?);
        sums.h_gamma_iota
            .add_assign(&pattern_weight(t, mu, ArrayKind::GammaIota, n, Some(nshift))?);
        sums.h_delta_iota
            .add_assign(&pattern_weight(t, mu, ArrayKind::DeltaIota, n, Some(nshift))?);
    }
    Ok(sums)
}

/// Sum of a kind's weights grouped by weight vector over all of `CQ_1(mu)`.
pub fn weight_table(
    mu: &[u32],
    kind: ArrayKind,
    n: u32,
) -> Result<BTreeMap<Vec<u32>, GaussElement>, Error> {
    let mut out: BTreeMap<Vec<u32>, GaussElement> = BTreeMap::new();
    for t in crate::patterns::enumerate_cq1(mu) {
        let w = t.weight();
        let v = pattern_weight(&t, mu, kind, n, None)?;
        out.entry(w).or_insert_with(|| GaussElement::zero(n)).add_assign(&v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::gs_prime_power;

    fn sp(d: &[u32]) -> ShortPattern {
        ShortPattern::new(d.to_vec())
    }

    #[test]
    fn rank1_gamma_delta_agree() {
        // for every d_1 <= mu: G_Gamma = g_2(p^{mu-1}, p^{d_1}) = G_Delta
        for n in [3u32, 5] {
            for mu in 1..=4u32 {
                for d1 in 0..=mu {
                    let t = sp(&[d1]);
                    let g = pattern_weight(&t, &[mu], ArrayKind::Gamma, n, None).unwrap();
                    let dl = pattern_weight(&t, &[mu], ArrayKind::Delta, n, None).unwrap();
                    let expect = gs_prime_power(2, mu - 1, d1, n);
                    assert_eq!(g, expect, "Gamma n={n} mu={mu} d1={d1}");
                    assert_eq!(dl, expect, "Delta n={n} mu={mu} d1={d1}");
                }
            }
        }
    }

    #[test]
    fn rank1_iota_pair_agrees() {
        for n in [3u32, 5] {
            for mu in 1..=4u32 {
                for d1 in 0..=mu {
                    let t = sp(&[d1]);
                    let gi = pattern_weight(&t, &[mu], ArrayKind::GammaIota, n, None).unwrap();
                    let di = pattern_weight(&t, &[mu], ArrayKind::DeltaIota, n, None).unwrap();
                    assert_eq!(gi, di, "n={n} mu={mu} d1={d1}");
                }
            }
        }
    }

    #[test]
    fn boxed_rank1_example() {
        // mu = 2, d1 = 2, n = 3: G_Gamma = g_2(p,p^2) = q g_1 and
        // G_Delta = q^{-2} g(p^3,p^4) = q g_1
        let t = sp(&[2]);
        let g = pattern_weight(&t, &[2], ArrayKind::Gamma, 3, None).unwrap();
        let expect = GaussElement::q_pow(3, 1).mul(&GaussElement::g_symbol(3, 1).unwrap());
        assert_eq!(g, expect);
        let dl = pattern_weight(&t, &[2], ArrayKind::Delta, 3, None).unwrap();
        assert_eq!(dl, expect);
    }

    #[test]
    fn undecorated_entries_vanish_off_divisibility() {
        // mu = 2, d1 = 1, n = 3: Gamma entry 1 and Delta entry 2 are
        // undecorated and kill the weight
        let t = sp(&[1]);
        assert!(pattern_weight(&t, &[2], ArrayKind::Gamma, 3, None).unwrap().is_zero());
        assert!(pattern_weight(&t, &[2], ArrayKind::Delta, 3, None).unwrap().is_zero());
    }

    #[test]
    fn all_zero_pattern_weight_one() {
        for r in 1..=3usize {
            let t = sp(&vec![0; 2 * r - 1]);
            let mu = vec![2u32; r];
            for kind in [ArrayKind::Gamma, ArrayKind::Delta, ArrayKind::GammaPrime, ArrayKind::DeltaPrime] {
                let w = pattern_weight(&t, &mu, kind, 3, None).unwrap();
                assert_eq!(w, GaussElement::one(3), "r={r} kind={}", kind.name());
            }
        }
    }

    #[test]
    fn example_class_one_gamma_snapshot() {
        // rank 3, i0 = 2, class I pattern: boxing/circling trigger table
        //   pos1: box d1=mu3, circ d4=0 | pos2: box d2=mu2 | pos3: box d3=mu1,
        //   circ d3=0 | pos4: circ d4=0 | pos5: box d1=mu3, circ d1=0
        let mu = [3u32, 3, 2];
        // d = (d1,d2,d3,d4,d5) with d1=d5, d2>d4 so i0=2, class I
        let t = sp(&[2, 3, 1, 1, 2]);
        assert!(matches!(classify(&t.weight()), Classification::ClassI { i0: 2, .. }));
        let arr = build_array(&t, &mu, ArrayKind::Gamma, 3, None).unwrap();
        // d1=2 != mu3=2? mu3 = mu[2] = 2 so d1 = 2 = mu3: pos1 boxed (d4 != 0 so not circled)
        assert_eq!(arr.decor[0], Decor::Boxed);
        // d2=3=mu2: pos2 boxed
        assert_eq!(arr.decor[1], Decor::Boxed);
        // d3=1, mu1=3: pos3 neither
        assert_eq!(arr.decor[2], Decor::None);
        // pos4: circled iff d4=0 -> none here
        assert_eq!(arr.decor[3], Decor::None);
        // pos5: box d1=mu3 -> boxed
        assert_eq!(arr.decor[4], Decor::Boxed);

        // now a zero-heavy variant to hit the circles: d = (0,1,0,0,0)
        let t2 = sp(&[0, 1, 0, 0, 0]);
        assert!(matches!(classify(&t2.weight()), Classification::ClassI { i0: 2, .. }));
        let arr2 = build_array(&t2, &mu, ArrayKind::Gamma, 3, None).unwrap();
        assert_eq!(arr2.decor[0], Decor::Circled); // d4 = 0
        assert_eq!(arr2.decor[2], Decor::Circled); // d3 = 0
        assert_eq!(arr2.decor[3], Decor::Circled); // d4 = 0
        assert_eq!(arr2.decor[4], Decor::Circled); // d1 = 0
        // Gamma' moves the circle of pos4 onto pos2 and clears pos4
        let arr2p = build_array(&t2, &mu, ArrayKind::GammaPrime, 3, None).unwrap();
        assert_eq!(arr2p.decor[1], Decor::Circled);
        assert_eq!(arr2p.decor[3], Decor::None);
    }

    #[test]
    fn example_class_one_delta_snapshot() {
        // Delta trigger table at rank 3, i0 = 2, class I:
        //   pos1: box d1 | pos2: box d2, circ d1 | pos3: box d3 |
        //   pos4: circ d3 | pos5: box d2, circ d4, circ d1
        let mu = [3u32, 3, 2];
        let t = sp(&[2, 3, 1, 1, 2]);
        let arr = build_array(&t, &mu, ArrayKind::Delta, 3, None).unwrap();
        assert_eq!(arr.decor[0], Decor::Boxed); // d1 = mu3
        assert_eq!(arr.decor[1], Decor::Boxed); // d2 = mu2 (d1 != 0)
        assert_eq!(arr.decor[2], Decor::None); // d3 < mu1
        assert_eq!(arr.decor[3], Decor::None); // d3 != 0
        // pos5 boxed condition: d_{j+1} = mu_{r-j} + d_j - d_{2r-j} with j=1:
        // d2 = mu2 + d1 - d5 = 3 + 0 = 3 -> boxed; circled iff d4 = 0 fails
        assert_eq!(arr.decor[4], Decor::Boxed);
        // Delta' clears fcbar_{1,2} (pos4) and re-circles fcbar_{1,3}=pos3 by d3
        let arrp = build_array(&t, &mu, ArrayKind::DeltaPrime, 3, None).unwrap();
        assert_eq!(arrp.decor[3], Decor::None);
        assert_eq!(arrp.decor[2], Decor::None); // d3 = 1 != 0: no circle, boxing kept (none)
    }

    #[test]
    fn split_examples() {
        // r = 2, t = (1,0,0): class I with i0 = 1, t* = (0), t# = (0)
        let t = sp(&[1, 0, 0]);
        let s = classify_and_split(&t, &[2, 2]).unwrap();
        assert_eq!(s.t_star, sp(&[0]));
        assert_eq!(s.t_sharp, sp(&[0]));
        assert_eq!(s.mu_star, vec![1]); // mu_2 - a = 2 - 1
        assert_eq!(s.mu_sharp, vec![2]);
        // r = 3 class I with i0 = 2: t* is the resonant pattern determined
        // by (d1, d'_2) = (d1, d4), and t# = (d3)
        let t = sp(&[2, 3, 1, 1, 2]);
        let s = classify_and_split(&t, &[3, 3, 2]).unwrap();
        assert_eq!(s.t_star, sp(&[2, 1, 2]));
        assert_eq!(s.t_sharp, sp(&[1]));
        // totally resonant rejects
        assert!(classify_and_split(&sp(&[1, 1, 1]), &[2, 2]).is_err());
    }

    #[test]
    fn statement_a_zero_weight() {
        // single all-zero pattern: the plain sums are 1; the shifted sums
        // carry the documented normalization q^{(2r-1)N} and stay equal
        let s = statement_a_sums(&[0, 0], &[1, 1], 3, None).unwrap();
        assert_eq!(s.h_gamma, GaussElement::one(3));
        assert_eq!(s.h_delta, GaussElement::one(3));
        assert_eq!(s.h_gamma_iota, GaussElement::q_pow(3, 3 * s.shift));
        assert_eq!(s.h_delta_iota, s.h_gamma_iota);
    }

    #[test]
    fn statement_a_rank1() {
        // mu = 2, k = (2): H_Gamma = H_Delta = q g_1; iota pair also equal
        let s = statement_a_sums(&[2], &[2], 3, None).unwrap();
        let expect = GaussElement::q_pow(3, 1).mul(&GaussElement::g_symbol(3, 1).unwrap());
        assert_eq!(s.h_gamma, expect);
        assert_eq!(s.h_delta, expect);
        assert_eq!(s.h_gamma_iota, s.h_delta_iota);
    }

    #[test]
    fn statement_a_exhaustive_rank2() {
        // every strict weight for mu = (2,2), n = 3: all four equalities
        let mu = [2u32, 2];
        let n = 3;
        for (k, _) in crate::patterns::patterns_by_weight(&mu) {
            if !is_strict(&k, &mu) {
                continue;
            }
            let s = statement_a_sums(&k, &mu, n, None).unwrap();
            assert_eq!(s.h_gamma, s.h_delta, "k = {k:?}");
            assert_eq!(s.h_gamma_iota, s.h_delta_iota, "k = {k:?}");
        }
    }

    #[test]
    fn flat_arrays_require_divisible_weight() {
        let t = sp(&[1, 0, 1]);
        assert_eq!(t.weight(), vec![2, 1]);
        // k_r = 1 not divisible by 3
        assert!(matches!(
            build_array(&t, &[2, 2], ArrayKind::GammaFlat, 3, None),
            Err(Error::FlatShift { .. })
        ));
    }

    #[test]
    fn flat_sums_match_scaled_sums_totally_resonant() {
        // sum G_Gamma = q^{(r-1) k_r} sum G_GammaFlat over a totally
        // resonant weight with n | k_r (and the same for Delta)
        let mu = [3u32, 3];
        let n = 3;
        for (k, pats) in crate::patterns::patterns_by_weight(&mu) {
            if classify(&k) != Classification::TotallyResonant || k[1] % n != 0 {
                continue;
            }
            let kr = k[1];
            let mut sg = GaussElement::zero(n);
            let mut sgf = GaussElement::zero(n);
            let mut sd = GaussElement::zero(n);
            let mut sdf = GaussElement::zero(n);
            for t in &pats {
                sg.add_assign(&pattern_weight(t, &mu, ArrayKind::Gamma, n, None).unwrap());
                sgf.add_assign(&pattern_weight(t, &mu, ArrayKind::GammaFlat, n, None).unwrap());
                sd.add_assign(&pattern_weight(t, &mu, ArrayKind::Delta, n, None).unwrap());
                sdf.add_assign(&pattern_weight(t, &mu, ArrayKind::DeltaFlat, n, None).unwrap());
            }
            let shift = ((pats[0].rank() - 1) as i64) * kr as i64;
            assert_eq!(sg, sgf.mul_q_pow(shift), "Gamma flat k = {k:?}");
            assert_eq!(sd, sdf.mul_q_pow(shift), "Delta flat k = {k:?}");
        }
    }

    #[test]
    fn dump_format() {
        let t = sp(&[2]);
        let arr = build_array(&t, &[2], ArrayKind::Delta, 3, None).unwrap();
        let dump = arr.dump();
        assert!(dump.starts_with("kind=Delta prefactor=q^-2"));
        assert!(dump.contains("4[B]"));
    }
}
