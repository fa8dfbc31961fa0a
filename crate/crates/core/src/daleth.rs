//! The uniform-in-`n` component description: a weight vector splits into
//! connected components under the `eps`-scaled adjacency, a short pattern
//! splits into totally resonant blocks, and the block-product weight
//! `g_psi` feeds the `h_daleth` recursion of [`crate::crystal::CoeffCtx`].

use crate::arrays::{entry_value, gamma_row, Decor};
use crate::gauss::GaussElement;
use crate::patterns::{weight_of, ShortPattern};
use crate::Error;

/// `eps_i`: 1 for the short indices, 2 for the long index `r` (1-based).
fn eps(i: usize, r: usize) -> u32 {
    if i == r {
        2
    } else {
        1
    }
}

fn scaled(k: &[u32], i: usize) -> i64 {
    eps(i, k.len()) as i64 * k[i - 1] as i64
}

/// One connected component: the 1-based index span `[lo, hi]`, the jumps
/// `a` (left) and `b` (right) of the scaled weight, and the shrunken
/// bound vector for its block patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub lo: usize,
    pub hi: usize,
    pub a: u32,
    pub b: u32,
    pub mu_e: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub comps: Vec<Component>,
}

impl ComponentDecomposition {
    pub fn count(&self) -> usize {
        self.comps.len()
    }
}

/// Maximal runs of equal scaled weight `eps_i k_i`.
pub fn component_spans(k: &[u32]) -> Vec<(usize, usize)> {
    let r = k.len();
    let mut spans = Vec::new();
    let mut lo = 1usize;
    for i in 1..r {
        if scaled(k, i) != scaled(k, i + 1) {
            spans.push((lo, i));
            lo = i + 1;
        }
    }
    spans.push((lo, r));
    spans
}

/// Split `k` into components and attach the per-component bound vectors:
/// the base slice of `mu` shrinks by `b` on the right end when the scaled
/// weight drops there, and by `a` on the left end when it rises there.
pub fn decompose(k: &[u32], mu: &[u32]) -> ComponentDecomposition {
    let r = k.len();
    assert_eq!(mu.len(), r);
    let comps = component_spans(k)
        .into_iter()
        .map(|(lo, hi)| {
            let a = if lo == 1 { 0 } else { (scaled(k, lo - 1) - scaled(k, lo)).unsigned_abs() as u32 };
            let b = if hi == r { 0 } else { (scaled(k, hi) - scaled(k, hi + 1)).unsigned_abs() as u32 };
            let rho = hi - lo + 1;
            // base entries mu(E)_i = mu_{r - hi + i}
            let mut mu_e: Vec<u32> = (1..=rho).map(|i| mu[r - hi + i - 1]).collect();
            if hi < r && scaled(k, hi) > scaled(k, hi + 1) {
                mu_e[0] = mu_e[0].saturating_sub(b);
            }
            if lo > 1 && scaled(k, lo - 1) < scaled(k, lo) {
                mu_e[rho - 1] = mu_e[rho - 1].saturating_sub(a);
            }
            Component { lo, hi, a, b, mu_e }
        })
        .collect();
    ComponentDecomposition { comps }
}

/// The totally resonant block patterns of `t` along the components of its
/// weight: block `[lo, hi]` keeps the outer entries and replaces the pivot
/// by `d'_{hi} = min(d_{hi}, d_{2r-hi})`.
pub fn psi_split(t: &ShortPattern, k: &[u32]) -> Result<Vec<ShortPattern>, Error> {
    if t.weight() != k {
        return Err(Error::WeightMismatch);
    }
    let r = t.rank();
    let r2 = 2 * r;
    Ok(component_spans(k)
        .into_iter()
        .map(|(lo, hi)| {
            let mut d = Vec::with_capacity(2 * (hi - lo) + 1);
            d.extend((lo..hi).map(|j| t.d(j)));
            d.push(t.dp(hi));
            d.extend((r2 - hi + 1..=r2 - lo).map(|j| t.d(j)));
            ShortPattern::new(d)
        })
        .collect())
}

/// The admissible totally-resonant weight distributions across components:
/// vectors `x` with `sum x_i + sum_{i<h} offset_i = k_r`, where the
/// offset vanishes when the scaled weight drops at a separator and equals
/// the jump when it rises (an odd numerator would admit no `x`).
pub fn xi_set(k: &[u32]) -> Vec<Vec<u32>> {
    let r = k.len();
    let spans = component_spans(k);
    let h = spans.len();
    let mut fixed: i64 = 0;
    for &(_, hi) in spans.iter().take(h - 1) {
        let b = (scaled(k, hi) - scaled(k, hi + 1)).unsigned_abs() as i64;
        let num = b - scaled(k, hi) + scaled(k, hi + 1);
        if num % 2 != 0 {
            return Vec::new();
        }
        fixed += num / 2;
    }
    let target = k[r - 1] as i64 - fixed;
    if target < 0 {
        return Vec::new();
    }
    // all compositions of `target` into h non-negative parts
    let mut out = Vec::new();
    let mut cur = vec![0u32; h];
    fn rec(i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = rem;
            out.push(cur.clone());
            return;
        }
        for v in 0..=rem {
            cur[i] = v;
            rec(i + 1, rem - v, cur, out);
        }
    }
    rec(0, target as u32, &mut cur, &mut out);
    out
}

/// The component-product weight of a short pattern.
///
/// Zero unless the weight is strict and each separator entry is divisible
/// by `n`.  Each component contributes its decorated block product; a
/// component whose bound meets the scaled-weight drop exactly contributes
/// the boxed/circled override pair instead, and every non-final component
/// contributes the undecorated separator factor `q^{c_E}(1 - q^{-1})`.
pub fn g_psi(t: &ShortPattern, mu: &[u32], n: u32) -> GaussElement {
    let r = t.rank();
    let r2 = 2 * r;
    let w = weight_of(t, mu);
    if !w.strict {
        return GaussElement::zero(n);
    }
    let k = &w.k;
    let decomp = decompose(k, mu);
    let h = decomp.count();
    let (c_row, cbar_row) = gamma_row(t);
    let c1 = |j: usize| c_row[j - 1];
    let cbar1 = |j: usize| cbar_row[j - 1];

    // separator divisibility: n | c_E for every component but the last
    for comp in decomp.comps.iter().take(h - 1) {
        let hi = comp.hi;
        let c_e = if scaled(k, hi) > scaled(k, hi + 1) { cbar1(hi) } else { c1(hi) };
        if c_e % n as i64 != 0 {
            return GaussElement::zero(n);
        }
    }

    let mut acc = GaussElement::one(n);
    for comp in &decomp.comps {
        let (lo, hi) = (comp.lo, comp.hi);
        let rho = hi - lo + 1;
        let last = hi == r;
        // override case: the bound meets the scaled-weight drop exactly
        if !last && mu[r - hi] as i64 == scaled(k, hi) - scaled(k, hi + 1) {
            let boxed = entry_value(c1(hi), Decor::Boxed, false, n);
            let circ = entry_value(cbar1(hi), Decor::Circled, false, n);
            acc = acc.mul(&boxed).mul(&circ);
            continue;
        }
        // block entries d(E)_i for i = 1..rho (first half plus pivot)
        let d_e = |i: usize| -> i64 {
            if i < rho {
                t.d(lo - 1 + i) as i64
            } else {
                t.dp(hi) as i64
            }
        };
        let mu_e = &comp.mu_e;
        // middle entry of the block
        let middle = if last {
            c1(r)
        } else if scaled(k, hi) > scaled(k, hi + 1) {
            c1(hi)
        } else {
            cbar1(hi)
        };
        let mut block = GaussElement::one(n);
        // pairs (c(E)_{1,i}, cbar(E)_{1,i}) for i = 1..rho-1
        for i in 1..rho {
            let pair_boxed = d_e(i + 1) == mu_e[rho - i - 1] as i64;
            let dec_c = Decor::of(pair_boxed, d_e(i + 1) == 0);
            let dec_cbar = Decor::of(pair_boxed, d_e(i) == 0);
            block = block.mul(&entry_value(c1(lo - 1 + i), dec_c, false, n));
            block = block.mul(&entry_value(cbar1(lo - 1 + i), dec_cbar, false, n));
            if block.is_zero() {
                return GaussElement::zero(n);
            }
        }
        let dec_mid =
            Decor::of(d_e(1) == mu_e[rho - 1] as i64, d_e(1) == 0);
        block = block.mul(&entry_value(middle, dec_mid, last, n));
        if !last {
            // separator factor q^{c_E}(1 - q^{-1})
            let c_e = if scaled(k, hi) > scaled(k, hi + 1) { cbar1(hi) } else { c1(hi) };
            let sep = GaussElement::q_pow(n, c_e).sub(&GaussElement::q_pow(n, c_e - 1));
            block = block.mul(&sep);
        }
        if block.is_zero() {
            return GaussElement::zero(n);
        }
        acc = acc.mul(&block);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrays::{pattern_weight, ArrayKind};
    use crate::crystal::CoeffCtx;
    use crate::patterns::{enumerate_cq1, is_strict};

    #[test]
    fn decompose_examples() {
        // r = 3, k = (2,2,1): scaled (2,2,2) -> one component
        let d = decompose(&[2, 2, 1], &[2, 2, 2]);
        assert_eq!(d.count(), 1);
        assert_eq!(d.comps[0].a, 0);
        assert_eq!(d.comps[0].b, 0);
        // r = 3, k = (3,2,1): scaled (3,2,2) -> components {1}, {2,3}
        let d = decompose(&[3, 2, 1], &[2, 2, 2]);
        assert_eq!(d.count(), 2);
        assert_eq!(d.comps[0].b, 1);
        assert_eq!(d.comps[1].a, 1);
        // rank 1 is always a single component
        let d = decompose(&[5], &[3]);
        assert_eq!(d.count(), 1);
        assert_eq!((d.comps[0].a, d.comps[0].b), (0, 0));
    }

    #[test]
    fn psi_split_examples() {
        // single-index component gives the pivot pattern (d'_j)
        let t = ShortPattern::new(vec![2, 1, 0]); // k = (4, 1): scaled (4, 2)
        let k = t.weight();
        let parts = psi_split(&t, &k).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], ShortPattern::new(vec![0])); // d'_1 = min(2, 0)
        assert_eq!(parts[1], ShortPattern::new(vec![1])); // d'_2 = d_2
        // weight mismatch is rejected
        assert!(psi_split(&t, &[1, 1]).is_err());
    }

    #[test]
    fn psi_split_blocks_are_totally_resonant() {
        use crate::patterns::{classify, Classification};
        let mu = [2u32, 2, 2];
        for t in enumerate_cq1(&mu) {
            let k = t.weight();
            for part in psi_split(&t, &k).unwrap() {
                assert_eq!(classify(&part.weight()), Classification::TotallyResonant, "t={t:?}");
            }
        }
    }

    #[test]
    fn psi_bijection_rank2() {
        // the splitting map is a bijection onto the xi-indexed products
        use std::collections::BTreeSet;
        let mu = [2u32, 2];
        let by_weight = crate::patterns::patterns_by_weight(&mu);
        for (k, pats) in by_weight {
            if !is_strict(&k, &mu) {
                continue;
            }
            let decomp = decompose(&k, &mu);
            let mut images: BTreeSet<Vec<ShortPattern>> = BTreeSet::new();
            for t in &pats {
                assert!(images.insert(psi_split(t, &k).unwrap()), "not injective at k={k:?}");
            }
            // count the target side
            let mut target = 0usize;
            for x in xi_set(&k) {
                let mut prod = 1usize;
                for (ci, comp) in decomp.comps.iter().enumerate() {
                    let rho = comp.hi - comp.lo + 1;
                    let mut kv = vec![2 * x[ci]; rho];
                    kv[rho - 1] = x[ci];
                    let cnt = enumerate_cq1(&comp.mu_e)
                        .into_iter()
                        .filter(|p| p.weight() == kv)
                        .count();
                    prod *= cnt;
                }
                target += prod;
            }
            assert_eq!(pats.len(), target, "k = {k:?}");
        }
    }

    #[test]
    fn g_psi_trivial_and_zero_cases() {
        let t = ShortPattern::new(vec![0, 0, 0]);
        assert_eq!(g_psi(&t, &[1, 1], 4), GaussElement::one(4));
    }

    #[test]
    fn g_psi_equals_delta_weight_per_pattern() {
        // the component weight agrees with the Delta weight on every
        // strict-weight pattern
        for n in [2u32, 3, 4, 6] {
            for mu in [vec![2u32, 2], vec![1, 2], vec![2, 1, 1]] {
                for t in enumerate_cq1(&mu) {
                    let k = t.weight();
                    if !is_strict(&k, &mu) {
                        continue;
                    }
                    let lhs = g_psi(&t, &mu, n);
                    let rhs = pattern_weight(&t, &mu, ArrayKind::Delta, n, None).unwrap();
                    assert_eq!(lhs, rhs, "n={n} mu={mu:?} t={t:?}");
                }
            }
        }
    }

    #[test]
    fn h_daleth_matches_h_inductive_small() {
        for n in [1u32, 2, 3, 4] {
            let ctx = CoeffCtx::new(n);
            for k1 in 0..=2u32 {
                for k2 in 0..=2u32 {
                    for m1 in 0..=1u32 {
                        for m2 in 0..=1u32 {
                            let a = ctx.h_daleth(&[k1, k2], &[m1, m2]);
                            let b = ctx.h_inductive(&[k1, k2], &[m1, m2]);
                            assert_eq!(a, b, "n={n} k=({k1},{k2}) m=({m1},{m2})");
                        }
                    }
                }
            }
        }
    }
}
