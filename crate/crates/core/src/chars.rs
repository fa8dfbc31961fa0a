//! Concrete character data over a prime field `F_q` and exact numeric
//! evaluation of symbolic Gauss-sum elements in `Z[zeta_{nq}]`.
//!
//! The multiplicative character of exact order `n` is fixed once and for
//! all as `x -> zeta_n^{dlog_g(x) mod n}` where `g` is the least primitive
//! root mod `q`; the additive character is `x -> zeta_q^x`.  The same
//! discrete-log convention is shared by the residue symbols of
//! [`crate::ffield`], so symbolic and function-field computations agree.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::cyclotomic::{CycInt, Cyclotomy};
use crate::gauss::GaussElement;
use crate::Error;

/// A prime `q ≡ 1 (mod 4n)`, a fixed multiplicative character of exact
/// order `n`, the standard additive character, and the ambient cyclotomic
/// ring `Z[zeta_{nq}]`.
#[derive(Debug)]
pub struct CharacterData {
    n: u32,
    q: u32,
    modulus: u32,
    /// discrete log base the least primitive root, indexed by `1..q`
    dlog: Vec<u32>,
    /// character indices mod n, indexed by `1..q`
    chi: Vec<u32>,
    cyclotomy: Cyclotomy,
    /// numeric values of the symbols `g_t`, `t = 1..n-1` (index `t-1`)
    g_values: Vec<CycInt>,
}

fn is_prime(x: u32) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= x as u64 {
        if x % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Least prime `q` with `q ≡ 1 (mod 4n)`.
pub fn default_q(n: u32) -> u32 {
    let step = 4 * n;
    let mut q = step + 1;
    loop {
        if is_prime(q) {
            return q;
        }
        q += step;
    }
}

fn least_primitive_root(q: u32) -> u32 {
    // factor q - 1
    let mut fac = Vec::new();
    let mut m = q - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            fac.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        fac.push(m);
    }
    let pow = |mut b: u64, mut e: u32| -> u64 {
        let mut acc = 1u64;
        b %= q as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % q as u64;
            }
            b = b * b % q as u64;
            e >>= 1;
        }
        acc
    };
    'outer: for g in 2..q {
        for &p in &fac {
            if pow(g as u64, (q - 1) / p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("no primitive root found");
}

impl CharacterData {
    /// Build character data for cover degree `n` at the default prime.
    pub fn with_default_q(n: u32) -> Self {
        Self::new(n, default_q(n)).expect("default prime is valid")
    }

    pub fn new(n: u32, q: u32) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        if !is_prime(q) {
            return Err(Error::InvalidParameter(format!("q = {q} is not prime")));
        }
        if (q - 1) % (4 * n) != 0 {
            return Err(Error::InvalidParameter(format!(
                "need q ≡ 1 (mod 4n): q = {q}, n = {n}"
            )));
        }
        let g = least_primitive_root(q);
        let mut dlog = vec![0u32; q as usize];
        let mut x = 1u64;
        for e in 0..q - 1 {
            dlog[x as usize] = e;
            x = x * g as u64 % q as u64;
        }
        let chi: Vec<u32> = (0..q as usize).map(|i| dlog[i] % n).collect();
        let modulus = n * q;
        let cyclotomy = Cyclotomy::new(modulus);
        let mut cd = CharacterData { n, q, modulus, dlog, chi, cyclotomy, g_values: Vec::new() };
        cd.g_values = (1..n).map(|t| cd.gauss_sum_numeric(t)).collect();
        Ok(cd)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn cyclotomy(&self) -> &Cyclotomy {
        &self.cyclotomy
    }

    /// Index of `chi(x)` as a power of `zeta_n` (`x` nonzero mod q).
    pub fn chi_index(&self, x: u32) -> u32 {
        debug_assert!(x % self.q != 0);
        self.chi[(x % self.q) as usize]
    }

    /// Discrete log of `x` base the fixed primitive root.
    pub fn dlog(&self, x: u32) -> u32 {
        debug_assert!(x % self.q != 0);
        self.dlog[(x % self.q) as usize]
    }

    /// `zeta_n^a * zeta_q^b` as an exponent of `zeta_{nq}`.
    pub fn root_index(&self, a: u32, b: u32) -> u32 {
        let a = a % self.n;
        let b = b % self.q;
        ((a as u64 * self.q as u64 + b as u64 * self.n as u64) % self.modulus as u64) as u32
    }

    /// The numeric Gauss sum `sum_{x in F_q^*} chi(x)^t zeta_q^x`.
    fn gauss_sum_numeric(&self, t: u32) -> CycInt {
        let mut acc = self.cyclotomy.zero();
        let one = BigInt::one();
        for x in 1..self.q {
            let a = (self.chi[x as usize] as u64 * t as u64 % self.n as u64) as u32;
            self.cyclotomy.add_root(&mut acc, self.root_index(a, x), &one);
        }
        acc
    }

    /// Numeric value of the symbol `g_t` (t reduced mod n, nonzero).
    pub fn g_value(&self, t: u32) -> &CycInt {
        let t = t % self.n;
        assert!(t != 0, "degenerate symbol");
        &self.g_values[(t - 1) as usize]
    }

    /// Evaluate a symbolic element exactly in `Z[zeta_{nq}]`.
    ///
    /// Fails if the element has negative `q`-exponents; use
    /// [`CharacterData::eval_scaled`] or [`CharacterData::numeric_eq`]
    /// for such elements.
    pub fn numeric_eval(&self, e: &GaussElement) -> Result<CycInt, Error> {
        if e.n() != self.n {
            return Err(Error::DegreeMismatch { elem: e.n(), chars: self.n });
        }
        if let Some(min) = e.min_q_exp() {
            if min < 0 {
                return Err(Error::NegativeQExponent { exp: min });
            }
        }
        Ok(Evaluator::new(self).eval_nonneg(e))
    }

    /// Evaluate `q^s * e` for the smallest `s >= 0` clearing all
    /// denominators; returns the value together with `s`.
    pub fn eval_scaled(&self, e: &GaussElement) -> Result<(CycInt, u32), Error> {
        if e.n() != self.n {
            return Err(Error::DegreeMismatch { elem: e.n(), chars: self.n });
        }
        let s = (-e.min_q_exp().unwrap_or(0)).max(0) as u32;
        let shifted = e.mul_q_pow(s as i64);
        Ok((Evaluator::new(self).eval_nonneg(&shifted), s))
    }

    /// Exact numeric equality of two symbolic elements (denominators are
    /// cleared by a common power of `q` first).
    pub fn numeric_eq(&self, a: &GaussElement, b: &GaussElement) -> Result<bool, Error> {
        if a.n() != self.n || b.n() != self.n {
            return Err(Error::DegreeMismatch { elem: a.n().min(b.n()), chars: self.n });
        }
        let min = a.min_q_exp().unwrap_or(0).min(b.min_q_exp().unwrap_or(0)).min(0);
        let s = (-min) as i64;
        let mut ev = Evaluator::new(self);
        let va = ev.eval_nonneg(&a.mul_q_pow(s));
        let vb = ev.eval_nonneg(&b.mul_q_pow(s));
        Ok(va == vb)
    }
}

/// Batch evaluator with a cache of symbol powers.
pub struct Evaluator<'a> {
    cd: &'a CharacterData,
    pow_cache: HashMap<(u32, u32), CycInt>,
}

impl<'a> Evaluator<'a> {
    pub fn new(cd: &'a CharacterData) -> Self {
        Evaluator { cd, pow_cache: HashMap::new() }
    }

    fn g_pow(&mut self, t: u32, e: u32) -> CycInt {
        if let Some(v) = self.pow_cache.get(&(t, e)) {
            return v.clone();
        }
        let v = self.cd.cyclotomy.pow(self.cd.g_value(t), e as u64);
        self.pow_cache.insert((t, e), v.clone());
        v
    }

    /// Evaluate an element all of whose `q`-exponents are nonnegative.
    pub fn eval_nonneg(&mut self, e: &GaussElement) -> CycInt {
        let cy = &self.cd.cyclotomy;
        let mut acc = cy.zero();
        for (mono, coeff) in e.terms() {
            debug_assert!(mono.q_exp() >= 0);
            let mut scalar = BigInt::from(coeff);
            scalar *= BigInt::from(self.cd.q).pow(mono.q_exp() as u32);
            let mut term = cy.from_int(scalar);
            for (&t, &ex) in mono.g_exps() {
                let p = self.g_pow(t, ex);
                term = cy.mul(&term, &p);
            }
            acc = cy.add(&acc, &term);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::gs_prime_power;
    use num_traits::ToPrimitive;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn default_primes() {
        assert_eq!(default_q(1), 5);
        assert_eq!(default_q(2), 17);
        assert_eq!(default_q(3), 13);
        assert_eq!(default_q(4), 17);
        assert_eq!(default_q(5), 41);
        assert_eq!(default_q(6), 73);
    }

    #[test]
    fn q_squared_evaluates_to_169() {
        let cd = CharacterData::with_default_q(3);
        let v = cd.numeric_eval(&GaussElement::q_pow(3, 2)).unwrap();
        assert_eq!(v.coeffs()[0].to_i64().unwrap(), 169);
        assert!(v.coeffs()[1..].iter().all(|c| c.to_i64().unwrap() == 0));
    }

    #[test]
    fn complementary_product_is_q() {
        // numeric g_1 * g_2 = 13 at n = 3, q = 13 (and all small n)
        for n in [2u32, 3, 4, 5, 6] {
            let cd = CharacterData::with_default_q(n);
            let cy = cd.cyclotomy();
            for t in 1..n {
                let prod = cy.mul(cd.g_value(t), cd.g_value(n - t));
                assert_eq!(prod, cy.from_int(BigInt::from(cd.q())), "n = {n}, t = {t}");
            }
        }
    }

    #[test]
    fn gauss_sum_absolute_value() {
        let cd = CharacterData::with_default_q(3);
        let cy = cd.cyclotomy();
        let g1 = cd.g_value(1);
        let norm = cy.mul(g1, &cy.conj(g1));
        assert_eq!(norm, cy.from_int(BigInt::from(13)));
    }

    #[test]
    fn eval_matches_gs_rule() {
        // spot check: numeric_eval(gs(1,0,1,3)) equals the direct sum
        let cd = CharacterData::with_default_q(3);
        let sym = gs_prime_power(1, 0, 1, 3);
        let v = cd.numeric_eval(&sym).unwrap();
        assert_eq!(&v, cd.g_value(1));
    }

    #[test]
    fn negative_exponent_handling() {
        let cd = CharacterData::with_default_q(3);
        let e = GaussElement::q_pow(3, -1);
        assert!(cd.numeric_eval(&e).is_err());
        let (v, s) = cd.eval_scaled(&e).unwrap();
        assert_eq!(s, 1);
        assert_eq!(v, cd.cyclotomy().one());
        // q^0 - q^{-1} vs (q - 1)/q
        let a = GaussElement::phi_prime_power(3, 1).mul_q_pow(-1);
        let b = GaussElement::from_int(3, 1).sub(&GaussElement::q_pow(3, -1));
        assert!(cd.numeric_eq(&a, &b).unwrap());
    }

    fn random_element(rng: &mut StdRng, n: u32) -> GaussElement {
        let mut acc = GaussElement::zero(n);
        for _ in 0..rng.gen_range(0..4) {
            let c = rng.gen_range(-3i64..4);
            let qe = rng.gen_range(0i64..3);
            let raw: Vec<(i64, u32)> = (0..rng.gen_range(0..3))
                .map(|_| (rng.gen_range(1..(n as i64).max(2)), rng.gen_range(0u32..3)))
                .collect();
            if let Ok(m) = GaussElement::monomial(n, c, qe, raw) {
                acc.add_assign(&m);
            }
        }
        acc
    }

    #[test]
    fn ring_homomorphism_on_random_pairs() {
        // numeric_eval(x*y) = numeric_eval(x)*numeric_eval(y),
        // numeric_eval(x+y) = numeric_eval(x)+numeric_eval(y)
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for n in [2u32, 3, 5] {
            let cd = CharacterData::with_default_q(n);
            let cy = cd.cyclotomy();
            let rounds = if n == 5 { 20 } else { 90 };
            for _ in 0..rounds {
                let x = random_element(&mut rng, n);
                let y = random_element(&mut rng, n);
                let vx = cd.numeric_eval(&x).unwrap();
                let vy = cd.numeric_eval(&y).unwrap();
                let vxy = cd.numeric_eval(&x.mul(&y)).unwrap();
                let vsum = cd.numeric_eval(&x.add(&y)).unwrap();
                assert_eq!(vxy, cy.mul(&vx, &vy));
                assert_eq!(vsum, cy.add(&vx, &vy));
            }
        }
    }
}
