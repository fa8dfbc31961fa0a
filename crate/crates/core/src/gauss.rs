//! Exact arithmetic in the ring generated by `q` and the Gauss-sum symbols
//! `g_t`, `t = 1..n-1`, modulo the relation `g_t * g_{n-t} = q`.
//!
//! Every coefficient produced by the pattern and recursion machinery lives in
//! this ring.  Elements are Laurent polynomials in `q` with integer
//! coefficients whose monomials may carry symbol factors; the complementary
//! pair relation is applied eagerly so each monomial is kept in canonical
//! form.  For `n` even the self-paired symbol satisfies `g_{n/2}^2 = q`, so
//! its exponent is canonically 0 or 1.

use std::collections::BTreeMap;
use std::fmt;

use crate::Error;

/// A canonical monomial `unit * q^{q_exp} * prod_t g_t^{e_t}`.
///
/// Canonical means: all symbol indices lie in `1..n-1`, at most one index of
/// each complementary pair `{t, n-t}` appears, and for even `n` the exponent
/// of `g_{n/2}` is at most 1.  The unit coefficient is stored in the parent
/// [`GaussElement`], not here.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussMonomial {
    q_exp: i64,
    g_exps: BTreeMap<u32, u32>,
}

impl GaussMonomial {
    pub fn q_exp(&self) -> i64 {
        self.q_exp
    }

    pub fn g_exps(&self) -> &BTreeMap<u32, u32> {
        &self.g_exps
    }

    fn one() -> Self {
        GaussMonomial { q_exp: 0, g_exps: BTreeMap::new() }
    }
}

/// Reduce raw exponent data to the canonical monomial.
///
/// Indices are reduced mod `n` first; an index congruent to 0 is rejected
/// (degenerate sums are never represented as symbols).  Then each
/// complementary pair `{t, n-t}` is cancelled into powers of `q`, and for
/// even `n` pairs `g_{n/2}^2` collapse to `q`.
pub fn normalize<I>(q_exp: i64, raw: I, n: u32) -> Result<GaussMonomial, Error>
where
    I: IntoIterator<Item = (i64, u32)>,
{
    let mut exps: BTreeMap<u32, u32> = BTreeMap::new();
    for (t, e) in raw {
        if e == 0 {
            continue;
        }
        let t = t.rem_euclid(n as i64) as u32;
        if t == 0 {
            return Err(Error::DegenerateSymbol { n });
        }
        *exps.entry(t).or_insert(0) += e;
    }
    let mut q_exp = q_exp;
    let mut out: BTreeMap<u32, u32> = BTreeMap::new();
    let mut t = 1u32;
    while 2 * t <= n {
        let u = n - t;
        let a = exps.get(&t).copied().unwrap_or(0);
        if t == u {
            // self-paired: g_{n/2}^2 = q
            q_exp += (a / 2) as i64;
            if a % 2 == 1 {
                out.insert(t, 1);
            }
        } else {
            let b = exps.get(&u).copied().unwrap_or(0);
            let m = a.min(b);
            q_exp += m as i64;
            if a > m {
                out.insert(t, a - m);
            }
            if b > m {
                out.insert(u, b - m);
            }
        }
        t += 1;
    }
    Ok(GaussMonomial { q_exp, g_exps: out })
}

/// An element of the symbolic Gauss-sum ring at cover degree `n`.
///
/// Stored as a map from canonical monomials to nonzero integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussElement {
    n: u32,
    terms: BTreeMap<GaussMonomial, i64>,
}

impl GaussElement {
    pub fn zero(n: u32) -> Self {
        GaussElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: u32) -> Self {
        Self::from_int(n, 1)
    }

    pub fn from_int(n: u32, c: i64) -> Self {
        let mut e = Self::zero(n);
        if c != 0 {
            e.terms.insert(GaussMonomial::one(), c);
        }
        e
    }

    /// `c * q^e`.
    pub fn q_pow(n: u32, e: i64) -> Self {
        let mut el = Self::zero(n);
        el.terms.insert(GaussMonomial { q_exp: e, g_exps: BTreeMap::new() }, 1);
        el
    }

    /// The symbol `g_t` (index taken mod `n`; `t ≡ 0` is rejected).
    pub fn g_symbol(n: u32, t: i64) -> Result<Self, Error> {
        let m = normalize(0, [(t, 1u32)], n)?;
        let mut el = Self::zero(n);
        el.terms.insert(m, 1);
        Ok(el)
    }

    /// A single monomial `c * q^{q_exp} * prod g_t^{e_t}`.
    pub fn monomial<I>(n: u32, c: i64, q_exp: i64, raw: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (i64, u32)>,
    {
        let m = normalize(q_exp, raw, n)?;
        let mut el = Self::zero(n);
        if c != 0 {
            el.terms.insert(m, c);
        }
        Ok(el)
    }

    /// Euler-phi value `phi(p^l) = q^l - q^{l-1}` (and 1 for `l = 0`).
    pub fn phi_prime_power(n: u32, l: u32) -> Self {
        if l == 0 {
            return Self::one(n);
        }
        let mut e = Self::q_pow(n, l as i64);
        e.add_assign_term(GaussMonomial { q_exp: l as i64 - 1, g_exps: BTreeMap::new() }, -1);
        e
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GaussMonomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_assign_term(&mut self, m: GaussMonomial, c: i64) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "mixed cover degrees");
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_assign_term(m.clone(), c);
        }
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.n, other.n, "mixed cover degrees");
        for (m, &c) in &other.terms {
            self.add_assign_term(m.clone(), c);
        }
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for (_, c) in out.terms.iter_mut() {
            *c = -*c;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "mixed cover degrees");
        let mut out = Self::zero(self.n);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                let raw = ma
                    .g_exps
                    .iter()
                    .chain(mb.g_exps.iter())
                    .map(|(&t, &e)| (t as i64, e));
                let m = normalize(ma.q_exp + mb.q_exp, raw, self.n)
                    .expect("canonical monomials have nonzero indices");
                out.add_assign_term(m, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero(self.n);
        }
        let mut out = self.clone();
        for (_, v) in out.terms.iter_mut() {
            *v *= c;
        }
        out
    }

    /// Multiply by `q^e` (`e` may be negative).
    pub fn mul_q_pow(&self, e: i64) -> Self {
        let mut out = Self::zero(self.n);
        for (m, &c) in &self.terms {
            let mut m = m.clone();
            m.q_exp += e;
            out.terms.insert(m, c);
        }
        out
    }

    /// Smallest `q`-exponent over all terms (None for zero).
    pub fn min_q_exp(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.q_exp).min()
    }
}

impl fmt::Display for GaussElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, &c) in &self.terms {
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let ac = c.abs();
            if ac != 1 || (m.q_exp == 0 && m.g_exps.is_empty()) {
                factors.push(ac.to_string());
            }
            if m.q_exp == 1 {
                factors.push("q".into());
            } else if m.q_exp != 0 {
                factors.push(format!("q^{}", m.q_exp));
            }
            for (&t, &e) in &m.g_exps {
                if e == 1 {
                    factors.push(format!("g{t}"));
                } else {
                    factors.push(format!("g{t}^{e}"));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Prime-power Gauss sum `g_t(p^k, p^l)` as a ring element.
///
/// Complete evaluation for any integer `t`:
/// * `l = 0`: the empty-modulus sum, value 1.
/// * `1 <= l <= k`: `phi(p^l)` when `n | lt`, else 0.
/// * `l = k + 1`: `q^k g_{tl}` when `n` does not divide `tl`, else the
///   Ramanujan-sum value `-q^k`.
/// * `l > k + 1`: 0.
pub fn gs_prime_power(t: i64, k: u32, l: u32, n: u32) -> GaussElement {
    let tl = (t.rem_euclid(n as i64) as u64) * (l as u64);
    let divides = tl % (n as u64) == 0;
    if l == 0 {
        GaussElement::one(n)
    } else if l <= k {
        if divides {
            GaussElement::phi_prime_power(n, l)
        } else {
            GaussElement::zero(n)
        }
    } else if l == k + 1 {
        if divides {
            GaussElement::q_pow(n, k as i64).scale(-1)
        } else {
            let idx = (tl % (n as u64)) as i64;
            GaussElement::q_pow(n, k as i64)
                .mul(&GaussElement::g_symbol(n, idx).expect("nonzero index"))
        }
    } else {
        GaussElement::zero(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(n: u32, t: i64) -> GaussElement {
        GaussElement::g_symbol(n, t).unwrap()
    }

    #[test]
    fn complementary_pair_reduces_to_q() {
        let n = 3;
        assert_eq!(g(n, 1).mul(&g(n, 2)), GaussElement::q_pow(n, 1));
    }

    #[test]
    fn same_index_product_stays() {
        let n = 3;
        let sq = g(n, 1).mul(&g(n, 1));
        assert_eq!(sq, GaussElement::monomial(n, 1, 0, [(1, 2)]).unwrap());
    }

    #[test]
    fn even_cover_self_pair() {
        // n = 4: g_2^3 * q = q^2 * g_2
        let n = 4;
        let e = GaussElement::monomial(n, 1, 1, [(2, 3)]).unwrap();
        let expect = GaussElement::q_pow(n, 2).mul(&g(n, 2));
        assert_eq!(e, expect);
    }

    #[test]
    fn index_reduced_mod_n() {
        // q * g_4 = q * g_1 at n = 3
        assert_eq!(g(3, 4), g(3, 1));
        assert_eq!(g(3, -1), g(3, 2));
    }

    #[test]
    fn zero_index_rejected() {
        assert!(GaussElement::g_symbol(3, 3).is_err());
        assert!(GaussElement::g_symbol(1, 5).is_err());
    }

    #[test]
    fn gs_prime_power_table() {
        // l = k+1, nondegenerate
        assert_eq!(gs_prime_power(1, 0, 1, 3), g(3, 1));
        // l <= k with n | lt
        assert_eq!(gs_prime_power(2, 3, 3, 3), GaussElement::phi_prime_power(3, 3));
        // plain vanishing
        assert!(gs_prime_power(1, 1, 3, 3).is_zero());
        // l = k+1 with n | tl: Ramanujan value -q^k
        assert_eq!(gs_prime_power(3, 1, 2, 3), GaussElement::q_pow(3, 1).scale(-1));
        // l = 0
        assert_eq!(gs_prime_power(7, 2, 0, 3), GaussElement::one(3));
    }

    /// Alternative normalization that cancels pairs in an arbitrary order.
    fn normalize_shuffled(q_exp: i64, raw: &[(i64, u32)], n: u32, order: &[u32]) -> GaussMonomial {
        let mut exps: BTreeMap<u32, u32> = BTreeMap::new();
        for &(t, e) in raw {
            let t = t.rem_euclid(n as i64) as u32;
            assert!(t != 0);
            *exps.entry(t).or_insert(0) += e;
        }
        let mut q_exp = q_exp;
        for &t in order {
            let u = n - t;
            let a = exps.get(&t).copied().unwrap_or(0);
            if t == u {
                q_exp += (a / 2) as i64;
                exps.insert(t, a % 2);
            } else {
                let b = exps.get(&u).copied().unwrap_or(0);
                // cancel one unit at a time to exercise interleavings
                let m = a.min(b);
                for _ in 0..m {
                    q_exp += 1;
                }
                exps.insert(t, a - m);
                exps.insert(u, b - m);
            }
        }
        exps.retain(|_, v| *v > 0);
        GaussMonomial { q_exp, g_exps: exps }
    }

    proptest! {
        #[test]
        fn ring_axioms(
            n in 2u32..7,
            seeds in proptest::collection::vec((0i64..4, proptest::collection::vec((1i64..12, 0u32..3), 0..3), -3i64..4), 3),
        ) {
            let mk = |&(c, ref raw, qe): &(i64, Vec<(i64, u32)>, i64)| {
                let raw: Vec<(i64, u32)> = raw
                    .iter()
                    .map(|&(t, e)| (if t % n as i64 == 0 { 1 } else { t }, e))
                    .collect();
                GaussElement::monomial(n, c, qe, raw).unwrap()
            };
            let a = mk(&seeds[0]);
            let b = mk(&seeds[1]);
            let c = mk(&seeds[2]);
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a), GaussElement::zero(n));
        }

        #[test]
        fn normalize_confluent(
            n in 2u32..8,
            q_exp in -3i64..4,
            raw in proptest::collection::vec((1i64..20, 0u32..4), 0..5),
            shuffle_seed in 0usize..24,
        ) {
            let raw: Vec<(i64, u32)> = raw
                .iter()
                .map(|&(t, e)| (if t % n as i64 == 0 { 1 } else { t }, e))
                .collect();
            let canon = normalize(q_exp, raw.iter().copied(), n).unwrap();
            let mut order: Vec<u32> = (1..=n / 2).collect();
            // rotate by the seed for a different reduction order
            if !order.is_empty() {
                let k = shuffle_seed % order.len();
                order.rotate_left(k);
            }
            let alt = normalize_shuffled(q_exp, &raw, n, &order);
            prop_assert_eq!(canon, alt);
        }

        #[test]
        fn normalize_idempotent(
            n in 2u32..8,
            raw in proptest::collection::vec((1i64..20, 0u32..4), 0..5),
        ) {
            let raw: Vec<(i64, u32)> = raw
                .iter()
                .map(|&(t, e)| (if t % n as i64 == 0 { 1 } else { t }, e))
                .collect();
            let canon = normalize(0, raw.iter().copied(), n).unwrap();
            let again = normalize(
                canon.q_exp(),
                canon.g_exps().iter().map(|(&t, &e)| (t as i64, e)),
                n,
            )
            .unwrap();
            prop_assert_eq!(canon, again);
        }
    }
}
