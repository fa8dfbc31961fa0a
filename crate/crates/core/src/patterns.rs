//! Short patterns: the `(2r-1)`-tuples of non-negative integers cut out by
//! the `CQ_1(mu)` inequalities (equivalently `BZL_1(mu)`), their weight
//! vectors, strictness, and the totally-resonant / Class I / Class II
//! trichotomy.

use std::collections::BTreeMap;

/// A `(2r-1)`-tuple `(d_1, ..., d_{2r-1})` of non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShortPattern {
    d: Vec<u32>,
}

impl ShortPattern {
    pub fn new(d: Vec<u32>) -> Self {
        assert!(d.len() % 2 == 1, "a short pattern has odd length 2r-1");
        ShortPattern { d }
    }

    pub fn rank(&self) -> usize {
        (self.d.len() + 1) / 2
    }

    pub fn entries(&self) -> &[u32] {
        &self.d
    }

    /// 1-based entry access with the convention `d_0 = d_{2r} = 0`.
    pub fn d(&self, j: usize) -> u32 {
        if j == 0 || j == self.d.len() + 1 {
            0
        } else {
            self.d[j - 1]
        }
    }

    /// `d'_j = min(d_j, d_{2r-j})` (so `d'_r = d_r`), with `d'_0 = 0`.
    pub fn dp(&self, j: usize) -> u32 {
        let r2 = self.d.len() + 1; // 2r
        if j == 0 {
            0
        } else {
            self.d(j).min(self.d(r2 - j))
        }
    }

    /// Weight vector per the defining sums: `k_r = sum_{j=1..r} d_{2r-j}`
    /// and `k_i = sum_{j=i..2r-1} d_j + d_r + sum_{j<i} d_{2r-j}` for `i < r`.
    pub fn weight(&self) -> Vec<u32> {
        let r = self.rank();
        let r2 = 2 * r;
        let mut k = vec![0u32; r];
        k[r - 1] = (1..=r).map(|j| self.d(r2 - j)).sum();
        for i in 1..r {
            let a: u32 = (i..r2).map(|j| self.d(j)).sum();
            let b: u32 = (1..i).map(|j| self.d(r2 - j)).sum();
            k[i - 1] = a + self.d(r) + b;
        }
        k
    }
}

/// Membership in `CQ_1(mu)`: `d_j <= mu_{r+1-j}` for `j <= r` and
/// `d_{j+1} + d_{2r-j} <= mu_{r-j} + d_j` for `j <= r-1`.
pub fn in_cq1(t: &ShortPattern, mu: &[u32]) -> bool {
    let r = mu.len();
    assert_eq!(t.rank(), r);
    let r2 = 2 * r;
    for j in 1..=r {
        if t.d(j) > mu[r - j] {
            return false;
        }
    }
    for j in 1..r {
        if t.d(j + 1) + t.d(r2 - j) > mu[r - j - 1] + t.d(j) {
            return false;
        }
    }
    true
}

/// Membership in `BZL_1(mu)`: `d'_j <= mu_{r-j+1} + d'_{j-1} - d_{2r-j+1}`
/// for `j <= r` and `d_j + d'_j <= mu_{r-j+1} + d'_{j-1} - d_{2r-j+1} + d_{2r-j}`
/// for `j <= r-1` (all quantities with `d_0 = d_{2r} = 0`).
pub fn in_bzl1(t: &ShortPattern, mu: &[u32]) -> bool {
    let r = mu.len();
    assert_eq!(t.rank(), r);
    let r2 = 2 * r;
    for j in 1..=r {
        let bound = mu[r - j] as i64 + t.dp(j - 1) as i64 - t.d(r2 - j + 1) as i64;
        if (t.dp(j) as i64) > bound {
            return false;
        }
        if j < r && (t.d(j) + t.dp(j)) as i64 > bound + t.d(r2 - j) as i64 {
            return false;
        }
    }
    true
}

/// Enumerate `CQ_1(mu)` directly from its inequalities, in lexicographic
/// order of the entry vector.
pub fn enumerate_cq1(mu: &[u32]) -> Vec<ShortPattern> {
    let r = mu.len();
    let r2 = 2 * r;
    let mut out = Vec::new();
    let mut d = vec![0u32; r2 - 1];
    // positions 1..r bounded by mu_{r+1-j}; positions 2r-j (j = 1..r-1)
    // bounded by mu_{r-j} + d_j - d_{j+1}
    fn rec(pos: usize, r: usize, mu: &[u32], d: &mut Vec<u32>, out: &mut Vec<ShortPattern>) {
        let r2 = 2 * r;
        if pos == r2 {
            out.push(ShortPattern::new(d.clone()));
            return;
        }
        if pos <= r {
            let hi = mu[r - pos];
            for v in 0..=hi {
                d[pos - 1] = v;
                rec(pos + 1, r, mu, d, out);
            }
            d[pos - 1] = 0;
        } else {
            let j = r2 - pos; // 1..r-1, descending as pos grows
            let bound = mu[r - j - 1] as i64 + d[j - 1] as i64 - d[j] as i64;
            if bound < 0 {
                return;
            }
            for v in 0..=bound as u32 {
                d[pos - 1] = v;
                rec(pos + 1, r, mu, d, out);
            }
            d[pos - 1] = 0;
        }
    }
    rec(1, r, mu, &mut d, &mut out);
    out
}

/// Enumerate `BZL_1(mu)` from its own inequalities, choosing the pair
/// `(d_j, d_{2r-j})` at step `j`.  Independent of [`enumerate_cq1`].
pub fn enumerate_bzl1(mu: &[u32]) -> Vec<ShortPattern> {
    let r = mu.len();
    let r2 = 2 * r;
    let mut d = vec![0u32; r2 - 1];
    let mut out = Vec::new();
    fn rec(j: usize, r: usize, mu: &[u32], d: &mut Vec<u32>, out: &mut Vec<ShortPattern>) {
        let r2 = 2 * r;
        let dp = |d: &Vec<u32>, i: usize| -> u32 {
            if i == 0 {
                0
            } else {
                d[i - 1].min(if i == r { d[i - 1] } else { d[r2 - i - 1] })
            }
        };
        let dval = |d: &Vec<u32>, i: usize| -> u32 {
            if i == 0 || i == r2 {
                0
            } else {
                d[i - 1]
            }
        };
        if j == r {
            // middle entry: d_r = d'_r <= mu_1 + d'_{r-1} - d_{r+1}
            let bound = mu[0] as i64 + dp(d, r - 1) as i64 - dval(d, r + 1) as i64;
            if bound < 0 {
                return;
            }
            for v in 0..=bound as u32 {
                d[r - 1] = v;
                out.push(ShortPattern::new(d.clone()));
            }
            d[r - 1] = 0;
            return;
        }
        // choose d_j and d_{2r-j}; the first inequality at step j bounds
        // d'_j, the second bounds d_j; feasibility at step j+1 bounds
        // d_{2r-j} through mu_{r-j} + d'_j - d_{2r-j} >= 0.
        let a = mu[r - j] as i64 + dp(d, j - 1) as i64 - dval(d, r2 - j + 1) as i64;
        if a < 0 {
            return;
        }
        // d_{2r-j} can reach mu_{r-j-1} + d'_j and d'_j <= a; also the
        // second inequality caps d_j + d'_j by a + d_{2r-j}.
        let back_cap = mu[r - j - 1] as i64 + a;
        for back in 0..=back_cap as u32 {
            d[r2 - j - 1] = back;
            let front_cap = a + back as i64;
            if front_cap < 0 {
                continue;
            }
            for front in 0..=front_cap as u32 {
                d[j - 1] = front;
                let dpj = front.min(back) as i64;
                if dpj > a || front as i64 + dpj > a + back as i64 {
                    continue;
                }
                // the next step's first inequality must stay satisfiable
                if j + 1 == r {
                    let b = mu[0] as i64 + dpj - back as i64;
                    if b < 0 {
                        continue;
                    }
                } else {
                    let b = mu[r - j - 1] as i64 + dpj - back as i64;
                    if b < 0 {
                        continue;
                    }
                }
                rec(j + 1, r, mu, d, out);
            }
            d[j - 1] = 0;
        }
        d[r2 - j - 1] = 0;
    }
    rec(1, r, mu, &mut d, &mut out);
    out.sort();
    out
}

/// The weight trichotomy, determined by the weight vector alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    TotallyResonant,
    /// `delta_{i0} > 0` where `delta` is the difference sequence below.
    ClassI { i0: usize, a: u32 },
    /// `delta_{i0} < 0`.
    ClassII { i0: usize, a: u32 },
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::TotallyResonant => "totally-resonant",
            Classification::ClassI { .. } => "class-I",
            Classification::ClassII { .. } => "class-II",
        }
    }
}

/// Weight vector plus the flags derived from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub k: Vec<u32>,
    pub strict: bool,
    pub class: Classification,
}

/// Difference sequence `delta_i = k_i - k_{i+1}` (`i < r-1`) and
/// `delta_{r-1} = k_{r-1} - 2 k_r`; equals `d_i - d_{2r-i}` on patterns.
fn deltas(k: &[u32]) -> Vec<i64> {
    let r = k.len();
    let mut out = Vec::with_capacity(r.saturating_sub(1));
    for i in 1..r {
        if i < r - 1 {
            out.push(k[i - 1] as i64 - k[i] as i64);
        } else {
            out.push(k[r - 2] as i64 - 2 * k[r - 1] as i64);
        }
    }
    out
}

/// Classify a weight vector (independent of `mu`).
pub fn classify(k: &[u32]) -> Classification {
    for (idx, &dl) in deltas(k).iter().enumerate() {
        if dl > 0 {
            return Classification::ClassI { i0: idx + 1, a: dl as u32 };
        }
        if dl < 0 {
            return Classification::ClassII { i0: idx + 1, a: (-dl) as u32 };
        }
    }
    Classification::TotallyResonant
}

/// Strictness of a weight with respect to `mu`:
/// `k_{i+1} - k_{i+2} < mu_{r-i} + k_i - k_{i+1}` for `i <= r-2` and
/// `0 < mu_1 + k_{r-1} - 2 k_r` (vacuous at rank 1).
pub fn is_strict(k: &[u32], mu: &[u32]) -> bool {
    let r = k.len();
    assert_eq!(mu.len(), r);
    if r == 1 {
        return true;
    }
    let dl = deltas(k);
    for i in 1..=r - 2 {
        // dl[i] = k_{i+1} - k_{i+2} (or the doubled last difference)
        if dl[i] >= mu[r - i - 1] as i64 + dl[i - 1] {
            return false;
        }
    }
    0 < mu[0] as i64 + dl[r - 2]
}

pub fn weight_of(t: &ShortPattern, mu: &[u32]) -> WeightVector {
    let k = t.weight();
    WeightVector { strict: is_strict(&k, mu), class: classify(&k), k }
}

/// Group the patterns of `CQ_1(mu)` by weight vector (deterministic order).
pub fn patterns_by_weight(mu: &[u32]) -> BTreeMap<Vec<u32>, Vec<ShortPattern>> {
    let mut map: BTreeMap<Vec<u32>, Vec<ShortPattern>> = BTreeMap::new();
    for t in enumerate_cq1(mu) {
        map.entry(t.weight()).or_default().push(t);
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank1_enumeration() {
        let set = enumerate_cq1(&[1]);
        assert_eq!(set, vec![ShortPattern::new(vec![0]), ShortPattern::new(vec![1])]);
    }

    #[test]
    fn rank2_triple_loop_oracle() {
        // brute-force box scan of d_1 <= 1, d_2 <= 1, d_2 + d_3 <= 1 + d_1
        let mu = [1u32, 1];
        let mut expect = Vec::new();
        for d1 in 0..=1u32 {
            for d2 in 0..=1u32 {
                for d3 in 0..=10u32 {
                    if d2 + d3 <= 1 + d1 {
                        expect.push(ShortPattern::new(vec![d1, d2, d3]));
                    }
                }
            }
        }
        expect.sort();
        let mut got = enumerate_cq1(&mu);
        got.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn cq1_equals_bzl1_small() {
        // set equality of the two descriptions on a grid of mu
        for mu in [vec![2u32, 1], vec![1, 2], vec![3, 3], vec![2, 1, 2], vec![1, 1, 1]] {
            let mut a = enumerate_cq1(&mu);
            a.sort();
            let b = enumerate_bzl1(&mu);
            assert_eq!(a, b, "mu = {mu:?}");
            for t in &a {
                assert!(in_cq1(t, &mu));
                assert!(in_bzl1(t, &mu));
            }
        }
    }

    #[test]
    fn weight_examples() {
        // rank 1: k = (d_1)
        assert_eq!(ShortPattern::new(vec![3]).weight(), vec![3]);
        // rank 2, (1,1,1) -> (4, 2)
        assert_eq!(ShortPattern::new(vec![1, 1, 1]).weight(), vec![4, 2]);
        // all zeros -> zero weight, totally resonant
        let z = ShortPattern::new(vec![0, 0, 0, 0, 0]);
        assert_eq!(z.weight(), vec![0, 0, 0]);
        assert_eq!(classify(&z.weight()), Classification::TotallyResonant);
    }

    #[test]
    fn classification_examples() {
        // r = 2, t = (1,0,0): k = (1, 0); delta_1 = k_1 - 2k_2 = 1 > 0
        let t = ShortPattern::new(vec![1, 0, 0]);
        assert_eq!(classify(&t.weight()), Classification::ClassI { i0: 1, a: 1 });
        let t2 = ShortPattern::new(vec![0, 0, 1]);
        assert!(matches!(classify(&t2.weight()), Classification::ClassII { i0: 1, a: 1 }));
    }

    #[test]
    fn strictness_matches_entry_form() {
        // the weight-level inequalities agree with the entry-level ones
        for mu in [vec![2u32, 2], vec![1, 2, 1], vec![2, 1, 2]] {
            let r = mu.len();
            let r2 = 2 * r;
            for t in enumerate_cq1(&mu) {
                let by_entries = {
                    let mut ok = true;
                    for i in 1..=r.saturating_sub(2) {
                        let lhs = t.d(i + 1) as i64;
                        let rhs = mu[r - i - 1] as i64 + t.d(i) as i64 - t.d(r2 - i) as i64
                            + t.d(r2 - i - 1) as i64;
                        if lhs >= rhs {
                            ok = false;
                        }
                    }
                    if r >= 2 && !(0 < mu[0] as i64 + t.d(r - 1) as i64 - t.d(r + 1) as i64) {
                        ok = false;
                    }
                    ok
                };
                assert_eq!(is_strict(&t.weight(), &mu), by_entries, "t = {t:?}");
            }
        }
    }
}
