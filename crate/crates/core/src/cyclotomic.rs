//! Exact arithmetic in `Z[zeta_M]`, represented on the power basis
//! `1, zeta, ..., zeta^{phi(M)-1}` modulo the `M`-th cyclotomic polynomial.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Precomputed data for one cyclotomic ring `Z[zeta_M]`.
#[derive(Debug, Clone)]
pub struct Cyclotomy {
    modulus: u32,
    phi: usize,
    /// `reduction[k]` is the canonical coefficient vector of `zeta^k`,
    /// for `0 <= k < max(M, 2*phi - 1)`.
    reduction: Vec<Vec<BigInt>>,
}

/// Coefficients of the `d`-th cyclotomic polynomial, low to high.
fn cyclotomic_poly(d: u32) -> Vec<BigInt> {
    // x^d - 1 divided by the cyclotomic polynomials of all proper divisors.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); d as usize + 1];
    num[0] = -BigInt::one();
    num[d as usize] = BigInt::one();
    for e in 1..d {
        if d % e == 0 {
            let div = cyclotomic_poly(e);
            num = poly_div_exact(&num, &div);
        }
    }
    num
}

/// Exact division of integer polynomials (panics on nonzero remainder).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let nd = rem.len() - 1;
    if nd < dd {
        assert!(rem.iter().all(|c| c.is_zero()));
        return vec![BigInt::zero()];
    }
    let mut quo = vec![BigInt::zero(); nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        quo[i] = c.clone();
        for j in 0..=dd {
            let sub = &den[j] * &c;
            rem[i + j] -= sub;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
    quo
}

impl Cyclotomy {
    pub fn new(modulus: u32) -> Self {
        assert!(modulus >= 1);
        let phi_poly = cyclotomic_poly(modulus);
        let phi = phi_poly.len() - 1;
        let rows = (modulus as usize).max(2 * phi.max(1) - 1);
        let mut reduction: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
        // zeta^phi = -(lower part of the cyclotomic polynomial)
        let top: Vec<BigInt> = phi_poly[..phi].iter().map(|c| -c).collect();
        for k in 0..rows {
            if k < phi {
                let mut row = vec![BigInt::zero(); phi];
                row[k] = BigInt::one();
                reduction.push(row);
            } else {
                // zeta^k = zeta * zeta^{k-1}
                let prev = &reduction[k - 1];
                let mut row = vec![BigInt::zero(); phi];
                for i in 0..phi - 1 {
                    row[i + 1] = prev[i].clone();
                }
                let carry = prev[phi - 1].clone();
                if !carry.is_zero() {
                    for i in 0..phi {
                        let add = &top[i] * &carry;
                        row[i] += add;
                    }
                }
                reduction.push(row);
            }
        }
        Cyclotomy { modulus, phi, reduction }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn zero(&self) -> CycInt {
        CycInt { coeffs: vec![BigInt::zero(); self.phi] }
    }

    pub fn one(&self) -> CycInt {
        self.root(0)
    }

    pub fn from_int(&self, v: BigInt) -> CycInt {
        let mut z = self.zero();
        z.coeffs[0] = v;
        z
    }

    /// `zeta^k`.
    pub fn root(&self, k: u32) -> CycInt {
        let k = (k % self.modulus) as usize;
        CycInt { coeffs: self.reduction[k].clone() }
    }

    /// `acc += c * zeta^k`.
    pub fn add_root(&self, acc: &mut CycInt, k: u32, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let k = (k % self.modulus) as usize;
        for (a, r) in acc.coeffs.iter_mut().zip(&self.reduction[k]) {
            if !r.is_zero() {
                *a += r * c;
            }
        }
    }

    pub fn add(&self, a: &CycInt, b: &CycInt) -> CycInt {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycInt { coeffs }
    }

    pub fn sub(&self, a: &CycInt, b: &CycInt) -> CycInt {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        CycInt { coeffs }
    }

    pub fn neg(&self, a: &CycInt) -> CycInt {
        CycInt { coeffs: a.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, a: &CycInt, c: &BigInt) -> CycInt {
        CycInt { coeffs: a.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, a: &CycInt, b: &CycInt) -> CycInt {
        let phi = self.phi;
        let mut buf = vec![BigInt::zero(); 2 * phi.max(1) - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                buf[i + j] += x * y;
            }
        }
        let mut out = vec![BigInt::zero(); phi];
        for (k, c) in buf.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < phi {
                out[k] += c;
            } else {
                for (o, r) in out.iter_mut().zip(&self.reduction[k]) {
                    if !r.is_zero() {
                        *o += r * &c;
                    }
                }
            }
        }
        CycInt { coeffs: out }
    }

    pub fn pow(&self, a: &CycInt, mut e: u64) -> CycInt {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Complex conjugate, `zeta -> zeta^{-1}`.
    pub fn conj(&self, a: &CycInt) -> CycInt {
        let mut out = self.zero();
        for (k, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let kk = (self.modulus - (k as u32 % self.modulus)) % self.modulus;
                self.add_root(&mut out, kk, c);
            }
        }
        out
    }
}

/// An element of `Z[zeta_M]` as a coefficient vector of length `phi(M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycInt {
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Largest absolute coefficient (useful in tests).
    pub fn max_abs(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn cyclotomic_polynomials() {
        let to_i64 = |v: Vec<BigInt>| v.into_iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(to_i64(cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(to_i64(cyclotomic_poly(2)), vec![1, 1]);
        assert_eq!(to_i64(cyclotomic_poly(3)), vec![1, 1, 1]);
        assert_eq!(to_i64(cyclotomic_poly(6)), vec![1, -1, 1]);
        assert_eq!(to_i64(cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_sum_to_zero() {
        // 1 + zeta_p + ... + zeta_p^{p-1} = 0 for prime p
        for p in [3u32, 5, 13] {
            let cy = Cyclotomy::new(p);
            let mut acc = cy.zero();
            for k in 0..p {
                cy.add_root(&mut acc, k, &BigInt::from(1));
            }
            assert!(acc.is_zero(), "p = {p}");
        }
    }

    #[test]
    fn product_of_roots() {
        let cy = Cyclotomy::new(39);
        let a = cy.root(5);
        let b = cy.root(37);
        assert_eq!(cy.mul(&a, &b), cy.root(3));
        assert_eq!(cy.mul(&cy.root(38), &cy.root(1)), cy.one());
    }

    #[test]
    fn conjugation() {
        let cy = Cyclotomy::new(20);
        let a = cy.root(7);
        assert_eq!(cy.conj(&a), cy.root(13));
        let s = cy.add(&cy.root(3), &cy.scale(&cy.root(11), &BigInt::from(4)));
        assert_eq!(cy.conj(&cy.conj(&s)), s);
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let cy = Cyclotomy::new(15);
        let x = cy.add(&cy.root(2), &cy.from_int(BigInt::from(3)));
        let mut acc = cy.one();
        for _ in 0..6 {
            acc = cy.mul(&acc, &x);
        }
        assert_eq!(acc, cy.pow(&x, 6));
    }
}
