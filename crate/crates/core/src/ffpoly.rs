//! Polynomial and rational-function arithmetic over a prime field `F_q`.
//!
//! Polynomials are coefficient vectors low-to-high with no trailing zeros;
//! the zero polynomial is the empty vector.  Moduli are kept monic.

use crate::Error;

/// The prime field context (arithmetic mod `q`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fq {
    pub q: u32,
}

impl Fq {
    pub fn new(q: u32) -> Self {
        Fq { q }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.q as u64) as u32
    }

    pub fn pow(&self, mut b: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        b %= self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.q != 0, "inverting zero");
        self.pow(a, self.q as u64 - 2)
    }
}

/// A polynomial over `F_q`, low-to-high coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFPoly {
    coeffs: Vec<u32>,
}

impl FFPoly {
    pub fn zero() -> Self {
        FFPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        FFPoly { coeffs: vec![1] }
    }

    pub fn constant(c: u32, fq: &Fq) -> Self {
        Self::from_coeffs(vec![c % fq.q])
    }

    /// The variable `t`.
    pub fn x() -> Self {
        FFPoly { coeffs: vec![0, 1] }
    }

    /// `t^k`.
    pub fn x_pow(k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        FFPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FFPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        *self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn add(&self, other: &Self, fq: &Fq) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| fq.add(self.coeff(i), other.coeff(i))).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self, fq: &Fq) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| fq.sub(self.coeff(i), other.coeff(i))).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self, fq: &Fq) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + a as u64 * b as u64) % fq.q as u64;
            }
        }
        Self::from_coeffs(coeffs.into_iter().map(|c| c as u32).collect())
    }

    pub fn scale(&self, c: u32, fq: &Fq) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| fq.mul(a, c)).collect())
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, den: &Self, fq: &Fq) -> (Self, Self) {
        assert!(!den.is_zero(), "division by zero polynomial");
        let dd = den.degree().unwrap();
        let lc_inv = fq.inv(den.leading());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![0u32; rem.len().saturating_sub(dd)];
        let mut i = rem.len();
        while i > dd {
            i -= 1;
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let f = fq.mul(c, lc_inv);
            quo[i - dd] = f;
            for j in 0..=dd {
                rem[i - dd + j] = fq.sub(rem[i - dd + j], fq.mul(f, den.coeff(j)));
            }
        }
        (Self::from_coeffs(quo), Self::from_coeffs(rem))
    }

    pub fn rem(&self, den: &Self, fq: &Fq) -> Self {
        self.divrem(den, fq).1
    }

    /// Exact division; None if the remainder is nonzero.
    pub fn div_exact(&self, den: &Self, fq: &Fq) -> Option<Self> {
        let (q, r) = self.divrem(den, fq);
        r.is_zero().then_some(q)
    }

    pub fn gcd(&self, other: &Self, fq: &Fq) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, fq);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic(fq).0
        }
    }

    /// Monic normalization: returns `(self / lc, lc)`.
    pub fn monic(&self, fq: &Fq) -> (Self, u32) {
        let lc = self.leading();
        if lc == 1 {
            (self.clone(), 1)
        } else {
            (self.scale(fq.inv(lc), fq), lc)
        }
    }

    /// Inverse of `self` modulo `m` (extended Euclid); None if not coprime.
    pub fn inv_mod(&self, m: &Self, fq: &Fq) -> Option<Self> {
        if m.is_constant() {
            return Some(Self::zero());
        }
        let (mut r0, mut r1) = (m.clone(), self.rem(m, fq));
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, fq);
            let s = s0.sub(&q.mul(&s1, fq), fq);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        Some(s0.scale(fq.inv(r0.coeff(0)), fq).rem(m, fq))
    }

    pub fn pow_mod(&self, mut e: u64, m: &Self, fq: &Fq) -> Self {
        let mut base = self.rem(m, fq);
        let mut acc = Self::one().rem(m, fq);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, fq).rem(m, fq);
            }
            base = base.mul(&base, fq).rem(m, fq);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u32, fq: &Fq) -> u32 {
        let mut acc = 0u32;
        for &c in self.coeffs.iter().rev() {
            acc = fq.add(fq.mul(acc, x), c);
        }
        acc
    }

    /// Monic irreducible factorization by trial division (desk scale).
    pub fn factor_monic(&self, fq: &Fq) -> Vec<(FFPoly, u32)> {
        assert!(self.is_monic(), "factorization expects a monic polynomial");
        let mut out: Vec<(FFPoly, u32)> = Vec::new();
        let mut rest = self.clone();
        let mut d = 1usize;
        while rest.degree().unwrap_or(0) >= 1 {
            if 2 * d > rest.degree().unwrap() {
                out.push((rest.clone(), 1));
                break;
            }
            for p in monic_polys(d, fq) {
                if !is_irreducible(&p, fq) {
                    continue;
                }
                let mut e = 0u32;
                while let Some(q) = rest.div_exact(&p, fq) {
                    rest = q;
                    e += 1;
                }
                if e > 0 {
                    out.push((p, e));
                }
                if rest.degree().unwrap_or(0) < d {
                    break;
                }
            }
            d += 1;
        }
        out
    }

    /// All monic divisors, in deterministic order.
    pub fn monic_divisors(&self, fq: &Fq) -> Vec<FFPoly> {
        let fac = self.factor_monic(fq);
        let mut divs = vec![FFPoly::one()];
        for (p, e) in fac {
            let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
            for d in &divs {
                let mut acc = d.clone();
                next.push(acc.clone());
                for _ in 0..e {
                    acc = acc.mul(&p, fq);
                    next.push(acc.clone());
                }
            }
            divs = next;
        }
        divs.sort();
        divs
    }
}

/// All monic polynomials of exact degree `d` (deterministic order).
pub fn monic_polys(d: usize, fq: &Fq) -> Vec<FFPoly> {
    let mut out = Vec::new();
    let count = (fq.q as u64).pow(d as u32);
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut v = idx;
        for _ in 0..d {
            coeffs.push((v % fq.q as u64) as u32);
            v /= fq.q as u64;
        }
        coeffs.push(1);
        out.push(FFPoly::from_coeffs(coeffs));
    }
    out
}

/// All polynomials of degree `< d` (the residues mod a monic of degree `d`).
pub fn residues(d: usize, fq: &Fq) -> Vec<FFPoly> {
    let mut out = Vec::new();
    let count = (fq.q as u64).pow(d as u32);
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(d);
        let mut v = idx;
        for _ in 0..d {
            coeffs.push((v % fq.q as u64) as u32);
            v /= fq.q as u64;
        }
        out.push(FFPoly::from_coeffs(coeffs));
    }
    out
}

pub fn is_irreducible(p: &FFPoly, fq: &Fq) -> bool {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    for e in 1..=d / 2 {
        for f in monic_polys(e, fq) {
            if is_irreducible(&f, fq) && p.rem(&f, fq).is_zero() {
                return false;
            }
        }
    }
    true
}

/// A rational function `num/den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FFElement {
    num: FFPoly,
    den: FFPoly,
}

impl FFElement {
    pub fn new(num: FFPoly, den: FFPoly, fq: &Fq) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroArgument { what: "denominator" });
        }
        let g = num.gcd(&den, fq);
        let (mut num, mut den) = if g.is_one() || g.is_zero() {
            (num, den)
        } else {
            (num.div_exact(&g, fq).unwrap(), den.div_exact(&g, fq).unwrap())
        };
        let (dm, lc) = den.monic(fq);
        den = dm;
        if lc != 1 {
            num = num.scale(fq.inv(lc), fq);
        }
        Ok(FFElement { num, den })
    }

    pub fn from_poly(p: FFPoly) -> Self {
        FFElement { num: p, den: FFPoly::one() }
    }

    pub fn num(&self) -> &FFPoly {
        &self.num
    }

    pub fn den(&self) -> &FFPoly {
        &self.den
    }

    pub fn add(&self, other: &Self, fq: &Fq) -> Self {
        let num = self
            .num
            .mul(&other.den, fq)
            .add(&other.num.mul(&self.den, fq), fq);
        let den = self.den.mul(&other.den, fq);
        Self::new(num, den, fq).expect("nonzero denominator")
    }

    /// Coefficient of `t^{-1}` in the expansion at infinity, i.e. the
    /// exponent of the standard additive character on this element.
    pub fn psi_exponent(&self, fq: &Fq) -> u32 {
        let d = match self.den.degree() {
            Some(d) if d >= 1 => d,
            _ => return 0,
        };
        let frac = self.num.rem(&self.den, fq);
        frac.coeff(d - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F13: Fq = Fq { q: 13 };

    fn p(cs: &[u32]) -> FFPoly {
        FFPoly::from_coeffs(cs.to_vec())
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(&[3, 0, 1, 7]);
        let b = p(&[1, 1]);
        let (q, r) = a.divrem(&b, &F13);
        assert_eq!(q.mul(&b, &F13).add(&r, &F13), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn inv_mod_works() {
        let m = p(&[2, 0, 1]); // t^2 + 2, irreducible mod 13
        let a = p(&[2, 3]);
        let inv = a.inv_mod(&m, &F13).unwrap();
        assert!(a.mul(&inv, &F13).rem(&m, &F13).is_one());
        // t not invertible mod t^2
        assert!(FFPoly::x().inv_mod(&p(&[0, 0, 1]), &F13).is_none());
    }

    #[test]
    fn factorization() {
        // (t+1)^2 * (t^2 + 2) over F_13; t^2+2 has no root mod 13
        for x in 0..13 {
            assert_ne!(F13.mul(x, x), 11, "t^2+2 must be irreducible");
        }
        let f = p(&[1, 1]).mul(&p(&[1, 1]), &F13).mul(&p(&[2, 0, 1]), &F13);
        let fac = f.factor_monic(&F13);
        assert_eq!(fac.len(), 2);
        let total: usize = fac.iter().map(|(p, e)| p.degree().unwrap() * *e as usize).sum();
        assert_eq!(total, 4);
        assert_eq!(f.monic_divisors(&F13).len(), 6);
    }

    #[test]
    fn psi_exponent_rules() {
        // polynomials are trivial
        let x = FFElement::from_poly(p(&[5, 3, 2]));
        assert_eq!(x.psi_exponent(&F13), 0);
        // 1/t -> exponent 1
        let inv_t = FFElement::new(FFPoly::one(), FFPoly::x(), &F13).unwrap();
        assert_eq!(inv_t.psi_exponent(&F13), 1);
        // 1/t^2 -> 0
        let inv_t2 = FFElement::new(FFPoly::one(), FFPoly::x_pow(2), &F13).unwrap();
        assert_eq!(inv_t2.psi_exponent(&F13), 0);
        // additivity on a couple of examples
        let a = FFElement::new(p(&[7]), p(&[0, 1]), &F13).unwrap();
        let b = FFElement::new(p(&[4, 2]), p(&[1, 0, 1]), &F13).unwrap();
        let s = a.add(&b, &F13);
        let lhs = s.psi_exponent(&F13);
        let rhs = (a.psi_exponent(&F13) + b.psi_exponent(&F13)) % 13;
        assert_eq!(lhs, rhs);
    }
}
