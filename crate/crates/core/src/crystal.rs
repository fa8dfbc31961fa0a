//! The two primary coefficient constructors: `h_inductive` (one-row sums
//! over `CQ_1(mu)` with the Delta weights) and `h_bzl_inductive` (the
//! crystal-graph description over `BZL_1` with the Gamma weights, odd
//! cover degree only), plus full triangular pattern generation and the
//! component-based `h_daleth` recursion shared with [`crate::daleth`].

use std::collections::BTreeMap;
use std::sync::Arc;

use dashmap::DashMap;

use crate::arrays::{self, ArrayKind};
use crate::gauss::GaussElement;
use crate::patterns::{enumerate_bzl1, ShortPattern};
use crate::Error;

/// Key of one prime-power coefficient: exponent vectors `k` and `m`
/// (the reversals `kappa`, `ell` index the crystal-side description).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoeffKey {
    pub k: Vec<u32>,
    pub m: Vec<u32>,
}

/// `mu_j = m_{r+1-j} + 1`: the bound vector of the pattern polytope
/// attached to a twisting exponent vector `m`.
pub fn mu_from_m(m: &[u32]) -> Vec<u32> {
    m.iter().rev().map(|&x| x + 1).collect()
}

type Table = Arc<BTreeMap<Vec<u32>, GaussElement>>;

/// Evaluation context for one cover degree `n`, with memoized coefficient
/// values and per-`mu` weight tables.  All cached values are pure
/// functions of their keys, so concurrent insert-if-absent is sound.
pub struct CoeffCtx {
    n: u32,
    caching: bool,
    memo_h: DashMap<CoeffKey, GaussElement>,
    memo_bzl: DashMap<CoeffKey, GaussElement>,
    memo_daleth: DashMap<CoeffKey, GaussElement>,
    delta_tables: DashMap<Vec<u32>, Table>,
    gamma_tables: DashMap<Vec<u32>, Table>,
    psi_tables: DashMap<Vec<u32>, Table>,
}

impl CoeffCtx {
    pub fn new(n: u32) -> Self {
        Self::with_caching(n, true)
    }

    /// A context that recomputes everything (memoization soundness checks).
    pub fn new_uncached(n: u32) -> Self {
        Self::with_caching(n, false)
    }

    fn with_caching(n: u32, caching: bool) -> Self {
        assert!(n >= 1);
        CoeffCtx {
            n,
            caching,
            memo_h: DashMap::new(),
            memo_bzl: DashMap::new(),
            memo_daleth: DashMap::new(),
            delta_tables: DashMap::new(),
            gamma_tables: DashMap::new(),
            psi_tables: DashMap::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    fn table(&self, mu: &[u32], kind: ArrayKind) -> Table {
        let store = match kind {
            ArrayKind::Delta => &self.delta_tables,
            ArrayKind::Gamma => &self.gamma_tables,
            _ => unreachable!("only the base kinds are tabulated"),
        };
        if let Some(t) = store.get(mu) {
            return t.clone();
        }
        let t: Table = Arc::new(arrays::weight_table(mu, kind, self.n).expect("base kinds build"));
        store.insert(mu.to_vec(), t.clone());
        t
    }

    fn psi_table(&self, mu: &[u32]) -> Table {
        if let Some(t) = self.psi_tables.get(mu) {
            return t.clone();
        }
        let mut map: BTreeMap<Vec<u32>, GaussElement> = BTreeMap::new();
        for t in crate::patterns::enumerate_cq1(mu) {
            let w = t.weight();
            let v = crate::daleth::g_psi(&t, mu, self.n);
            map.entry(w).or_insert_with(|| GaussElement::zero(self.n)).add_assign(&v);
        }
        let t: Table = Arc::new(map);
        self.psi_tables.insert(mu.to_vec(), t.clone());
        t
    }

    /// `H(p^k; p^m)` via the rank recursion with the Delta weights.
    pub fn h_inductive(&self, k: &[u32], m: &[u32]) -> GaussElement {
        assert_eq!(k.len(), m.len());
        let r = k.len();
        if r == 0 {
            return GaussElement::one(self.n);
        }
        let key = CoeffKey { k: k.to_vec(), m: m.to_vec() };
        if self.caching {
            if let Some(v) = self.memo_h.get(&key) {
                return v.clone();
            }
        }
        let mu = mu_from_m(m);
        let table = self.table(&mu, ArrayKind::Delta);
        let mut acc = GaussElement::zero(self.n);
        for (kp, s) in table.iter() {
            if s.is_zero() || kp[0] != k[0] || (1..r).any(|i| kp[i] > k[i]) {
                continue;
            }
            let Some(m_next) = reduced_m(m, kp) else { continue };
            let k_next: Vec<u32> = (1..r).map(|i| k[i] - kp[i]).collect();
            let sub = self.h_inductive(&k_next, &m_next);
            if !sub.is_zero() {
                acc.add_assign(&s.mul(&sub));
            }
        }
        if self.caching {
            self.memo_h.insert(key, acc.clone());
        }
        acc
    }

    /// `H_BZL(p^kappa; p^ell)` via the rank recursion with the Gamma
    /// weights; defined for odd cover degree only.
    pub fn h_bzl_inductive(&self, kappa: &[u32], ell: &[u32]) -> Result<GaussElement, Error> {
        if self.n % 2 == 0 {
            return Err(Error::EvenCover { n: self.n });
        }
        Ok(self.h_bzl_rec(kappa, ell))
    }

    fn h_bzl_rec(&self, kappa: &[u32], ell: &[u32]) -> GaussElement {
        assert_eq!(kappa.len(), ell.len());
        let r = kappa.len();
        if r == 0 {
            return GaussElement::one(self.n);
        }
        let key = CoeffKey { k: kappa.to_vec(), m: ell.to_vec() };
        if self.caching {
            if let Some(v) = self.memo_bzl.get(&key) {
                return v.clone();
            }
        }
        let mu: Vec<u32> = ell.iter().map(|&x| x + 1).collect();
        let table = self.table(&mu, ArrayKind::Gamma);
        let mut acc = GaussElement::zero(self.n);
        for (w, s) in table.iter() {
            // pattern weight w corresponds to kappa' = reverse(w)
            let kp: Vec<u32> = w.iter().rev().copied().collect();
            if s.is_zero() || kp[r - 1] != kappa[r - 1] || (0..r - 1).any(|i| kp[i] > kappa[i]) {
                continue;
            }
            let Some(ell_next) = reduced_ell(ell, &kp) else { continue };
            let k_next: Vec<u32> = (0..r - 1).map(|i| kappa[i] - kp[i]).collect();
            let sub = self.h_bzl_rec(&k_next, &ell_next);
            if !sub.is_zero() {
                acc.add_assign(&s.mul(&sub));
            }
        }
        if self.caching {
            self.memo_bzl.insert(key, acc.clone());
        }
        acc
    }

    /// `H_daleth(p^k; p^m)`: the uniform-in-`n` recursion with the
    /// component weights of [`crate::daleth::g_psi`].  Rank 1 coincides
    /// with `h_inductive` by definition.
    pub fn h_daleth(&self, k: &[u32], m: &[u32]) -> GaussElement {
        assert_eq!(k.len(), m.len());
        let r = k.len();
        if r == 0 {
            return GaussElement::one(self.n);
        }
        if r == 1 {
            return self.h_inductive(k, m);
        }
        let key = CoeffKey { k: k.to_vec(), m: m.to_vec() };
        if self.caching {
            if let Some(v) = self.memo_daleth.get(&key) {
                return v.clone();
            }
        }
        let mu = mu_from_m(m);
        let table = self.psi_table(&mu);
        let mut acc = GaussElement::zero(self.n);
        for (kp, s) in table.iter() {
            if s.is_zero() || kp[0] != k[0] || (1..r).any(|i| kp[i] > k[i]) {
                continue;
            }
            let Some(m_next) = reduced_m(m, kp) else { continue };
            let k_next: Vec<u32> = (1..r).map(|i| k[i] - kp[i]).collect();
            let sub = self.h_daleth(&k_next, &m_next);
            if !sub.is_zero() {
                acc.add_assign(&s.mul(&sub));
            }
        }
        if self.caching {
            self.memo_daleth.insert(key, acc.clone());
        }
        acc
    }

    /// Superset of the support of `H(.; p^m)`: every `k` outside this set
    /// has coefficient zero, by induction on the rank (the first
    /// coordinate of a nonzero term is a pattern weight, the rest is a
    /// lower-rank support point shifted by a pattern weight).
    pub fn support_candidates(&self, m: &[u32]) -> Vec<Vec<u32>> {
        let r = m.len();
        if r == 0 {
            return vec![vec![]];
        }
        let mu = mu_from_m(m);
        let table = self.table(&mu, ArrayKind::Delta);
        let mut out: std::collections::BTreeSet<Vec<u32>> = Default::default();
        for (kp, s) in table.iter() {
            if s.is_zero() {
                continue;
            }
            let Some(m_next) = reduced_m(m, kp) else { continue };
            for tail in self.support_candidates(&m_next) {
                let mut k = vec![kp[0]];
                for i in 1..r {
                    k.push(kp[i] + tail[i - 1]);
                }
                out.insert(k);
            }
        }
        out.into_iter().collect()
    }
}

/// The reduced twisting vector of the Delta-side recursion:
/// `m'_j = m_{j+1} + k'_j + eps_{j+2} k'_{j+2} - 2 k'_{j+1}` (the term
/// with index `j+2` doubles at the long root and disappears past `r`).
/// None if any component is negative.
fn reduced_m(m: &[u32], kp: &[u32]) -> Option<Vec<u32>> {
    let r = m.len();
    let mut out = Vec::with_capacity(r - 1);
    for j in 1..r {
        let t3: i64 = if j + 2 <= r {
            let eps = if j + 2 == r { 2 } else { 1 };
            eps * kp[j + 1] as i64
        } else {
            0
        };
        let v = m[j] as i64 + kp[j - 1] as i64 + t3 - 2 * kp[j] as i64;
        if v < 0 {
            return None;
        }
        out.push(v as u32);
    }
    Some(out)
}

/// The reduced twisting vector of the Gamma-side recursion, the mirror
/// image of [`reduced_m`] under index reversal:
/// `ell'_j = l_j + kappa'_{j+1} + c_j kappa'_{j-1} - 2 kappa'_j` with
/// `kappa'_0 = 0` and the coefficient `c_j` doubled exactly at `j = 2`
/// (where `kappa'_1` is the long-root coordinate).
fn reduced_ell(ell: &[u32], kp: &[u32]) -> Option<Vec<u32>> {
    let r = ell.len();
    let mut out = Vec::with_capacity(r - 1);
    for j in 1..r {
        let prev: i64 = if j >= 2 {
            let c = if j == 2 { 2 } else { 1 };
            c * kp[j - 2] as i64
        } else {
            0
        };
        let v = ell[j - 1] as i64 + kp[j] as i64 + prev - 2 * kp[j - 1] as i64;
        if v < 0 {
            return None;
        }
        out.push(v as u32);
    }
    Some(out)
}

/// A full triangular pattern: row `i` is a short pattern of rank
/// `r + 1 - i` lying in the polytope with the bound vector produced by
/// the row recursion from the rows above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BZLPattern {
    pub rows: Vec<ShortPattern>,
    pub mu_rows: Vec<Vec<u32>>,
}

/// Bound vector for the next row below a row with bounds `mu` and pattern
/// `t`: component `j` is `mu_j + w~_{j+1} + c_j w~_{j-1} - 2 w~_j` where
/// `w~` is the reversed weight of `t` (`w~_0 = 0`, doubling at `j = 2`).
/// None when some component drops below 1 (no admissible rows).
pub fn mu_next(mu: &[u32], t: &ShortPattern) -> Option<Vec<u32>> {
    let rho = mu.len();
    debug_assert_eq!(t.rank(), rho);
    if rho == 1 {
        return None;
    }
    let w = t.weight();
    let wt = |s: usize| -> i64 {
        if s == 0 {
            0
        } else {
            w[rho - s] as i64
        }
    };
    let mut out = Vec::with_capacity(rho - 1);
    for j in 1..rho {
        let c = if j == 2 { 2 } else { 1 };
        let v = mu[j - 1] as i64 + wt(j + 1) + c * wt(j - 1) - 2 * wt(j);
        if v < 1 {
            return None;
        }
        out.push(v as u32);
    }
    Some(out)
}

/// Generate all triangular patterns over the top bound vector `mu`.
pub fn enumerate_bzl(mu: &[u32]) -> Vec<BZLPattern> {
    let mut out = Vec::new();
    let mut rows: Vec<ShortPattern> = Vec::new();
    let mut mus: Vec<Vec<u32>> = Vec::new();
    fn rec(
        mu: &[u32],
        rows: &mut Vec<ShortPattern>,
        mus: &mut Vec<Vec<u32>>,
        out: &mut Vec<BZLPattern>,
    ) {
        for t in enumerate_bzl1(mu) {
            rows.push(t.clone());
            mus.push(mu.to_vec());
            if mu.len() == 1 {
                out.push(BZLPattern { rows: rows.clone(), mu_rows: mus.clone() });
            } else if let Some(next) = mu_next(mu, &t) {
                rec(&next, rows, mus, out);
            }
            rows.pop();
            mus.pop();
        }
    }
    rec(mu, &mut rows, &mut mus, &mut out);
    out
}

impl BZLPattern {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The weight vector read off the triangular array: `kappa_1` sums the
    /// middle entries of the rows, `kappa_j` for `j > 1` sums the
    /// entry pairs in column `r + 1 - j`.
    pub fn kappa(&self) -> Vec<u32> {
        let r = self.rank();
        let row_weights: Vec<Vec<u32>> = self.rows.iter().map(|t| t.weight()).collect();
        let mut kappa = vec![0u32; r];
        for (i0, w) in row_weights.iter().enumerate() {
            let i = i0 + 1;
            let rho = r + 1 - i;
            kappa[0] += w[rho - 1];
            for j in 2..=r {
                if i <= r + 1 - j {
                    let s = r + 2 - j - i; // local weight index, 1-based
                    kappa[j - 1] += w[s - 1];
                }
            }
        }
        kappa
    }

    /// Product of the Gamma weights of all rows.
    pub fn g_weight(&self, n: u32) -> GaussElement {
        let mut acc = GaussElement::one(n);
        for (t, mu) in self.rows.iter().zip(&self.mu_rows) {
            let w = arrays::pattern_weight(t, mu, ArrayKind::Gamma, n, None)
                .expect("gamma weights always build");
            if w.is_zero() {
                return GaussElement::zero(n);
            }
            acc = acc.mul(&w);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::gs_prime_power;

    #[test]
    fn rank1_matches_prime_power_gauss_sum() {
        // H(p^k; p^m) = g_2(p^m, p^k) for all k (both vanish past k = m+1)
        for n in [3u32, 4, 5] {
            let ctx = CoeffCtx::new(n);
            for m in 0..=3u32 {
                for k in 0..=m + 2 {
                    let h = ctx.h_inductive(&[k], &[m]);
                    let g = gs_prime_power(2, m, k, n);
                    assert_eq!(h, g, "n={n} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn rank1_example_value() {
        let ctx = CoeffCtx::new(3);
        let h = ctx.h_inductive(&[2], &[1]);
        let expect = GaussElement::q_pow(3, 1).mul(&GaussElement::g_symbol(3, 1).unwrap());
        assert_eq!(h, expect);
    }

    #[test]
    fn zero_key_is_one() {
        let ctx = CoeffCtx::new(3);
        assert_eq!(ctx.h_inductive(&[0, 0], &[1, 2]), GaussElement::one(3));
        assert_eq!(ctx.h_bzl_inductive(&[0, 0], &[2, 1]).unwrap(), GaussElement::one(3));
        assert_eq!(ctx.h_daleth(&[0, 0, 0], &[1, 1, 0]), GaussElement::one(3));
    }

    #[test]
    fn bzl_rejects_even_cover() {
        let ctx = CoeffCtx::new(4);
        assert!(matches!(ctx.h_bzl_inductive(&[1], &[1]), Err(Error::EvenCover { n: 4 })));
    }

    #[test]
    fn main_identity_small_sweep() {
        // h_inductive(k, m) = h_bzl(rev k, rev m) for a rank-2 window
        for n in [3u32, 5] {
            let ctx = CoeffCtx::new(n);
            for m1 in 0..=2u32 {
                for m2 in 0..=2u32 {
                    for k1 in 0..=3u32 {
                        for k2 in 0..=3u32 {
                            let h = ctx.h_inductive(&[k1, k2], &[m1, m2]);
                            let hb = ctx.h_bzl_inductive(&[k2, k1], &[m2, m1]).unwrap();
                            assert_eq!(h, hb, "n={n} k=({k1},{k2}) m=({m1},{m2})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bzl_pattern_count_two_level_oracle() {
        // full pattern count = sum over first rows of the second-level count
        let mu = vec![1u32, 1];
        let pats = enumerate_bzl(&mu);
        let mut expect = 0usize;
        for t in enumerate_bzl1(&mu) {
            if let Some(m2) = mu_next(&mu, &t) {
                expect += enumerate_bzl1(&m2).len();
            }
        }
        assert_eq!(pats.len(), expect);
        assert!(!pats.is_empty());
        // rank 1: the triangular patterns are exactly the short patterns
        let pats1 = enumerate_bzl(&[2]);
        assert_eq!(pats1.len(), enumerate_bzl1(&[2]).len());
    }

    #[test]
    fn direct_sum_matches_inductive_rank2() {
        // sum of G over patterns of fixed kappa = h_bzl(kappa, ell)
        let n = 3;
        let ctx = CoeffCtx::new(n);
        for ell in [[1u32, 1], [2, 1], [1, 2]] {
            let mu: Vec<u32> = ell.iter().map(|&x| x + 1).collect();
            let mut by_kappa: BTreeMap<Vec<u32>, GaussElement> = BTreeMap::new();
            for p in enumerate_bzl(&mu) {
                let v = p.g_weight(n);
                by_kappa
                    .entry(p.kappa())
                    .or_insert_with(|| GaussElement::zero(n))
                    .add_assign(&v);
            }
            for k1 in 0..=6u32 {
                for k2 in 0..=6u32 {
                    let kappa = vec![k1, k2];
                    let direct =
                        by_kappa.get(&kappa).cloned().unwrap_or_else(|| GaussElement::zero(n));
                    let ind = ctx.h_bzl_inductive(&kappa, &ell).unwrap();
                    assert_eq!(direct, ind, "ell={ell:?} kappa={kappa:?}");
                }
            }
        }
    }

    #[test]
    fn memoization_soundness() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(42);
        let cached = CoeffCtx::new(3);
        for _ in 0..100 {
            let r = rng.gen_range(1..=3usize);
            let k: Vec<u32> = (0..r).map(|_| rng.gen_range(0..4)).collect();
            let m: Vec<u32> = (0..r).map(|_| rng.gen_range(0..3)).collect();
            let fresh = CoeffCtx::new_uncached(3);
            assert_eq!(cached.h_inductive(&k, &m), fresh.h_inductive(&k, &m));
        }
    }

    #[test]
    fn support_candidates_cover_support() {
        let ctx = CoeffCtx::new(3);
        let m = vec![1u32, 1];
        let cands = ctx.support_candidates(&m);
        // sample points outside the candidate set are zero
        for k1 in 0..=8u32 {
            for k2 in 0..=8u32 {
                let k = vec![k1, k2];
                if !cands.contains(&k) {
                    assert!(ctx.h_inductive(&k, &m).is_zero(), "k = {k:?}");
                }
            }
        }
    }
}
