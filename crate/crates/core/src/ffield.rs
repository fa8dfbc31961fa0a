//! Residue symbols, additive characters and Gauss sums over `F_q[t]`, and
//! the direct evaluation of the rank-inductive exponential-sum recursion
//! for the coefficients `H(C; m)` in this concrete model.
//!
//! The model takes `q ≡ 1 (mod 4n)`, so every reciprocity sign for the
//! power residue symbols is trivial and all Hilbert-symbol factors reduce
//! to 1.  Monic polynomials represent classes modulo units.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::chars::CharacterData;
use crate::cyclotomic::CycInt;
use crate::ffpoly::{residues, FFPoly, Fq};
use crate::Error;

/// Shared context: the prime field together with the fixed character data
/// (discrete logs, cyclotomic ring `Z[zeta_{nq}]`).
#[derive(Debug)]
pub struct FFContext {
    pub fq: Fq,
    pub cd: CharacterData,
}

impl FFContext {
    pub fn new(n: u32, q: u32) -> Result<Self, Error> {
        let cd = CharacterData::new(n, q)?;
        Ok(FFContext { fq: Fq::new(q), cd })
    }

    pub fn n(&self) -> u32 {
        self.cd.n()
    }

    /// The `m`-th power residue symbol `(a/b)_m` as an index mod `m`,
    /// computed by the Euclidean algorithm with the (trivial-sign)
    /// reciprocity law for monic coprime arguments.
    ///
    /// `b` constant gives the trivial symbol.  The unit part of `b` is
    /// ignored; a unit factor `u` of `a` contributes `dlog(u)·deg b mod m`.
    pub fn residue_symbol(&self, a: &FFPoly, b: &FFPoly, m: u32) -> Result<u32, Error> {
        assert!(m >= 1 && (2 * self.n()) % m == 0, "symbol order must divide 2n");
        assert!((self.fq.q - 1) % (2 * m) == 0);
        if b.is_zero() {
            return Err(Error::ZeroArgument { what: "symbol modulus" });
        }
        let mut idx: u64 = 0;
        let (mut b, _) = b.monic(&self.fq);
        let mut a = a.clone();
        loop {
            if b.is_constant() {
                return Ok((idx % m as u64) as u32);
            }
            a = a.rem(&b, &self.fq);
            if a.is_zero() {
                return Err(Error::NotCoprime);
            }
            let (am, lc) = a.monic(&self.fq);
            if lc != 1 {
                let d = (b.degree().unwrap() as u64) % m as u64;
                idx += self.cd.dlog(lc) as u64 * d;
            }
            // reciprocity for monic coprime pairs is sign-free here
            a = b;
            b = am;
        }
    }

    /// Factorization-based evaluation of the same symbol; an independent
    /// cross-check of [`FFContext::residue_symbol`].
    pub fn residue_symbol_factored(&self, a: &FFPoly, b: &FFPoly, m: u32) -> Result<u32, Error> {
        if b.is_zero() {
            return Err(Error::ZeroArgument { what: "symbol modulus" });
        }
        let (b, _) = b.monic(&self.fq);
        if b.is_constant() {
            return Ok(0);
        }
        let q = self.fq.q as u64;
        let mut idx: u64 = 0;
        for (p, e) in b.factor_monic(&self.fq) {
            if a.rem(&p, &self.fq).is_zero() {
                return Err(Error::NotCoprime);
            }
            let d = p.degree().unwrap() as u32;
            let exp = (q.pow(d) - 1) / m as u64;
            let s = a.pow_mod(exp, &p, &self.fq);
            assert!(s.is_constant(), "symbol power must land in the base field");
            let dl = self.cd.dlog(s.coeff(0)) as u64;
            let unit = (q - 1) / m as u64;
            assert!(dl % unit == 0, "symbol value must be an m-th root of unity");
            idx += (dl / unit) * e as u64;
        }
        Ok((idx % m as u64) as u32)
    }

    /// Exponent of the additive character on `num/den` (`den` monic).
    fn psi_exp_raw(&self, num: &FFPoly, den: &FFPoly) -> u32 {
        let d = match den.degree() {
            Some(d) if d >= 1 => d,
            _ => return 0,
        };
        num.rem(den, &self.fq).coeff(d - 1)
    }

    /// The Gauss sum `g_t(m, c) = sum_{d mod c, (d,c)=1} (d/c)_n^t psi(md/c)`
    /// evaluated exactly in `Z[zeta_{nq}]`.  `c` is taken monic.
    pub fn gauss_sum_ff(&self, tpow: i64, m: &FFPoly, c: &FFPoly) -> Result<CycInt, Error> {
        if c.is_zero() {
            return Err(Error::ZeroArgument { what: "modulus" });
        }
        let (c, _) = c.monic(&self.fq);
        let cy = self.cd.cyclotomy();
        if c.is_constant() {
            return Ok(cy.one());
        }
        let n = self.n();
        let t = tpow.rem_euclid(n as i64) as u64;
        let mut acc = cy.zero();
        let one = BigInt::one();
        for d in residues(c.degree().unwrap(), &self.fq) {
            let sym = match self.residue_symbol(&d, &c, n) {
                Ok(s) => s,
                Err(Error::NotCoprime) => continue,
                Err(e) => return Err(e),
            };
            let a = ((sym as u64 * t) % n as u64) as u32;
            let b = self.psi_exp_raw(&m.mul(&d, &self.fq), &c);
            cy.add_root(&mut acc, self.cd.root_index(a, b), &one);
        }
        Ok(acc)
    }

    /// One full enumeration of the residues modulo `t^l`, tabulated so the
    /// prime-power sums `g_t(p^k, p^l)` for every `t` and `k` can be read
    /// off.  This is the brute-force side of the prime-power oracle.
    pub fn prime_power_counts(&self, l: u32) -> PrimePowerCounts {
        let q = self.fq.q as usize;
        let l = l as usize;
        if l == 0 {
            return PrimePowerCounts { l: 0, counts: Vec::new() };
        }
        // counts[j][a][b] = #{d mod t^l : gcd(d,t)=1, d(0)=a, coeff_j(d)=b}
        let mut counts = vec![vec![vec![0u64; q]; q]; l];
        let mut digits = vec![0u32; l];
        loop {
            if digits[0] != 0 {
                let a = digits[0] as usize;
                for j in 0..l {
                    counts[j][a][digits[j] as usize] += 1;
                }
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == l {
                    return PrimePowerCounts { l: l as u32, counts };
                }
                digits[pos] += 1;
                if (digits[pos] as usize) < q {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }
}

/// Tabulated residue enumeration for the modulus `t^l`; see
/// [`FFContext::prime_power_counts`].
pub struct PrimePowerCounts {
    l: u32,
    counts: Vec<Vec<Vec<u64>>>,
}

impl PrimePowerCounts {
    /// `g_t(p^k, p^l)` assembled from the tabulated enumeration: each unit
    /// `d` contributes `chi(d(0))^{tl} * zeta_q^{coeff_{l-k-1}(d)}` (the
    /// additive part is trivial for `k >= l`).
    pub fn eval(&self, ctx: &FFContext, t: i64, k: u32) -> CycInt {
        let cy = ctx.cd.cyclotomy();
        if self.l == 0 {
            return cy.one();
        }
        let n = ctx.n() as u64;
        let tl = (t.rem_euclid(n as i64) as u64) * self.l as u64 % n;
        let mut acc = cy.zero();
        if k >= self.l {
            // psi is trivial; use the marginal over position 0
            let q = ctx.fq.q as usize;
            for a in 1..q {
                let total: u64 = self.counts[0][a].iter().sum();
                let idx = ctx.cd.root_index(((ctx.cd.chi_index(a as u32) as u64 * tl) % n) as u32, 0);
                cy.add_root(&mut acc, idx, &BigInt::from(total));
            }
        } else {
            let j = (self.l - 1 - k) as usize;
            let q = ctx.fq.q as usize;
            for a in 1..q {
                for b in 0..q {
                    let cnt = self.counts[j][a][b];
                    if cnt == 0 {
                        continue;
                    }
                    let idx = ctx
                        .cd
                        .root_index(((ctx.cd.chi_index(a as u32) as u64 * tl) % n) as u32, b as u32);
                    cy.add_root(&mut acc, idx, &BigInt::from(cnt));
                }
            }
        }
        acc
    }
}

/// Direct evaluator for the coefficients `H(C; m)` with memoization.
///
/// Rank 1 is the defining Gauss sum `H(C_1; m_1) = g_2(m_1, C_1)`; rank 2
/// evaluates the inductive exponential-sum formula literally (outer sum
/// over monic factorizations `C_1 = d_1 d_2^2 d_3`, `C_2 = d_2 d_3 D_2`
/// subject to the divisibility conditions, inner sum over unit residues
/// with the residue-symbol and additive-character factors, then a rank-1
/// recursion).  Hilbert-symbol factors are identically 1 in this model.
pub struct HDirect<'a> {
    pub ctx: &'a FFContext,
    cache: HashMap<(Vec<FFPoly>, Vec<FFPoly>), CycInt>,
}

impl<'a> HDirect<'a> {
    pub fn new(ctx: &'a FFContext) -> Self {
        HDirect { ctx, cache: HashMap::new() }
    }

    pub fn eval(&mut self, c_vec: &[FFPoly], m_vec: &[FFPoly]) -> Result<CycInt, Error> {
        let r = c_vec.len();
        if r == 0 || r != m_vec.len() {
            return Err(Error::InvalidParameter("C and m must have equal positive length".into()));
        }
        if r > 2 {
            return Err(Error::RankCap { r });
        }
        for m in m_vec {
            if m.is_zero() {
                return Err(Error::ZeroArgument { what: "twisting parameter m_i" });
            }
        }
        for c in c_vec {
            if c.is_zero() {
                return Err(Error::ZeroArgument { what: "coefficient index C_i" });
            }
        }
        let fq = &self.ctx.fq;
        let c_vec: Vec<FFPoly> = c_vec.iter().map(|c| c.monic(fq).0).collect();
        let key = (c_vec.clone(), m_vec.to_vec());
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let val = if r == 1 {
            self.ctx.gauss_sum_ff(2, &m_vec[0], &c_vec[0])?
        } else {
            self.rank2(&c_vec[0], &c_vec[1], &m_vec[0], &m_vec[1])?
        };
        self.cache.insert(key, val.clone());
        Ok(val)
    }

    fn rank2(&mut self, c1: &FFPoly, c2: &FFPoly, m1: &FFPoly, m2: &FFPoly) -> Result<CycInt, Error> {
        let fq = self.ctx.fq;
        let cy = self.ctx.cd.cyclotomy();
        let q_big = BigInt::from(fq.q);
        let mut total = cy.zero();
        for d2 in c1.monic_divisors(&fq) {
            let d2sq = d2.mul(&d2, &fq);
            let Some(rest) = c1.div_exact(&d2sq, &fq) else { continue };
            for d1 in rest.monic_divisors(&fq) {
                let d3 = rest.div_exact(&d1, &fq).expect("divisor");
                let m2d1 = m2.mul(&d1, &fq);
                if !m2d1.rem(&d2, &fq).is_zero() {
                    continue;
                }
                if !m2d1.rem(&d3, &fq).is_zero() {
                    continue;
                }
                let Some(dd2) = c2.div_exact(&d2.mul(&d3, &fq), &fq) else { continue };
                let inner = self.inner_sum(&d1, &d2, &d3, m1, m2)?;
                if inner.is_zero() {
                    continue;
                }
                let sub_m = m2d1.div_exact(&d3, &fq).expect("divisibility checked");
                let sub = self.eval(&[dd2], &[sub_m])?;
                let scale = q_big.pow(2 * d2.degree().unwrap() as u32 + d3.degree().unwrap() as u32);
                let term = cy.scale(&cy.mul(&inner, &sub), &scale);
                total = cy.add(&total, &term);
            }
        }
        Ok(total)
    }

    /// Unit residues mod `d` with inverses; the convention for a constant
    /// modulus is the single class represented by 1.
    fn units(&self, d: &FFPoly) -> Vec<(FFPoly, FFPoly)> {
        let fq = &self.ctx.fq;
        match d.degree() {
            None | Some(0) => vec![(FFPoly::one(), FFPoly::one())],
            Some(deg) => residues(deg, fq)
                .into_iter()
                .filter_map(|c| c.inv_mod(d, fq).map(|u| (c, u)))
                .collect(),
        }
    }

    fn inner_sum(
        &self,
        d1: &FFPoly,
        d2: &FFPoly,
        d3: &FFPoly,
        m1: &FFPoly,
        m2: &FFPoly,
    ) -> Result<CycInt, Error> {
        let ctx = self.ctx;
        let fq = ctx.fq;
        let n = ctx.n();
        let cy = ctx.cd.cyclotomy();
        let q = fq.q;
        let u1s = self.units(d1);
        let u2s = self.units(d2);
        let u3s = self.units(d3);
        let d2d3 = d2.mul(d3, &fq);
        let m2d1 = m2.mul(d1, &fq);

        // per-residue symbol indices and psi contributions
        let sym = |c: &FFPoly, d: &FFPoly| -> Result<u32, Error> {
            if d.is_constant() {
                Ok(0)
            } else {
                ctx.residue_symbol(c, d, n)
            }
        };
        let mut s1 = Vec::with_capacity(u1s.len());
        let mut t1 = Vec::with_capacity(u1s.len());
        for (c, _) in &u1s {
            s1.push(sym(c, d1)?);
            t1.push(ctx.psi_exp_raw(&m1.mul(c, &fq), d1));
        }
        let mut s2 = Vec::with_capacity(u2s.len());
        for (c, _) in &u2s {
            s2.push(sym(c, d2)?);
        }
        let mut s3 = Vec::with_capacity(u3s.len());
        for (c, _) in &u3s {
            s3.push(sym(c, d3)?);
        }
        // psi(m2 u1 c2 / d2) for each (c1, c2)
        let t12: Vec<Vec<u32>> = u1s
            .iter()
            .map(|(_, u1)| {
                let m2u1 = m2.mul(u1, &fq);
                u2s.iter().map(|(c2, _)| ctx.psi_exp_raw(&m2u1.mul(c2, &fq), d2)).collect()
            })
            .collect();
        // psi(m2 d1 c3 u2 / (d2 d3)) for each (c2, c3)
        let t23: Vec<Vec<u32>> = u2s
            .iter()
            .map(|(_, u2)| {
                let m2d1u2 = m2d1.mul(u2, &fq);
                u3s.iter().map(|(c3, _)| ctx.psi_exp_raw(&m2d1u2.mul(c3, &fq), &d2d3)).collect()
            })
            .collect();

        let one = BigInt::one();
        let mut acc = cy.zero();
        for i1 in 0..u1s.len() {
            for i2 in 0..u2s.len() {
                let sym12 = (s1[i1] as u64 + 2 * s2[i2] as u64) % n as u64;
                let psi12 = (t1[i1] + t12[i1][i2]) % q;
                for i3 in 0..u3s.len() {
                    let a = ((sym12 + s3[i3] as u64) % n as u64) as u32;
                    let b = (psi12 + t23[i2][i3]) % q;
                    cy.add_root(&mut acc, ctx.cd.root_index(a, b), &one);
                }
            }
        }
        Ok(acc)
    }
}

/// The root-of-unity factor relating `H(C; m·m')` to `H(C; m)` for
/// `gcd(prod m'_i, prod C_i) = 1`: the product of `(m'_i/C_i)_n^{-eps_i}`,
/// returned as an index mod `n`.
pub fn twist_factor_m(ctx: &FFContext, c_vec: &[FFPoly], m_prime: &[FFPoly]) -> Result<u32, Error> {
    let r = c_vec.len();
    assert_eq!(r, m_prime.len());
    check_coprime(ctx, m_prime, c_vec)?;
    let n = ctx.n() as i64;
    let mut idx: i64 = 0;
    for i in 0..r {
        let eps: i64 = if i + 1 == r { 2 } else { 1 };
        let s = ctx.residue_symbol(&m_prime[i], &c_vec[i], ctx.n())? as i64;
        idx -= eps * s;
    }
    Ok(idx.rem_euclid(n) as u32)
}

/// The root-of-unity factor `mu(C, C')` relating `H(CC'; m)` to
/// `H(C; m) H(C'; m)` for coprime `C`, `C'`, as an index mod `n`.
///
/// Uses the type-C pairing normalized so short roots have length 1:
/// `2<alpha_i, alpha_j>` is `-1` for adjacent short pairs, `-2` for the
/// long pair `{r-1, r}`, and `0` otherwise.
pub fn twist_factor_mu(ctx: &FFContext, c_vec: &[FFPoly], c_prime: &[FFPoly]) -> Result<u32, Error> {
    let r = c_vec.len();
    assert_eq!(r, c_prime.len());
    check_coprime(ctx, c_vec, c_prime)?;
    let n = ctx.n() as i64;
    let mut idx: i64 = 0;
    for i in 0..r {
        let eps: i64 = if i + 1 == r { 2 } else { 1 };
        let s = ctx.residue_symbol(&c_vec[i], &c_prime[i], ctx.n())? as i64
            + ctx.residue_symbol(&c_prime[i], &c_vec[i], ctx.n())? as i64;
        idx += eps * s;
    }
    for i in 1..r {
        // j = i - 1 is the only pair with a nonzero off-diagonal pairing;
        // it doubles when i is the long index r (1-based: i + 1 == r).
        let pairing: i64 = if i + 1 == r { -2 } else { -1 };
        let s = ctx.residue_symbol(&c_vec[i], &c_prime[i - 1], ctx.n())? as i64
            + ctx.residue_symbol(&c_prime[i], &c_vec[i - 1], ctx.n())? as i64;
        idx += pairing * s;
    }
    Ok(idx.rem_euclid(n) as u32)
}

fn check_coprime(ctx: &FFContext, xs: &[FFPoly], ys: &[FFPoly]) -> Result<(), Error> {
    for x in xs {
        for y in ys {
            if !x.gcd(y, &ctx.fq).is_one() {
                return Err(Error::NotCoprime);
            }
        }
    }
    Ok(())
}
