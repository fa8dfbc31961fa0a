//! Named verification suites with deterministic reports.

use crate::Error;

/// A finished suite run: counts plus the first counterexample, if any.
/// The `Display` form is byte-stable for fixed parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub params: String,
    pub checked: usize,
    pub failed: usize,
    pub symbolic_mismatches: usize,
    pub first_counterexample: Option<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "suite {} ({})", self.suite, self.params)?;
        writeln!(f, "  checked {} cases, {} failed", self.checked, self.failed)?;
        if self.symbolic_mismatches > 0 {
            writeln!(
                f,
                "  note: {} symbolic-form mismatches passed the numeric check",
                self.symbolic_mismatches
            )?;
        }
        if let Some(ce) = &self.first_counterexample {
            writeln!(f, "  first counterexample: {ce}")?;
        }
        write!(f, "{}", if self.failed == 0 { "PASS" } else { "FAIL" })
    }
}

/// Suite parameters; unset fields fall back to per-suite defaults.
#[derive(Debug, Clone, Default)]
pub struct SuiteConfig {
    pub n: Option<u32>,
    pub q: Option<u32>,
    pub r_max: Option<usize>,
    pub k_max: Option<u32>,
    pub m_max: Option<u32>,
    pub mu_max: Option<u32>,
    pub deg_max: Option<usize>,
    pub threads: usize,
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report, Error> {
    let threads = if cfg.threads == 0 { 1 } else { cfg.threads };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| match name {
        "lemma73" => Ok(suites::lemma73(cfg)),
        "statement-a" => Ok(suites::statement_a(cfg)),
        "thm71" => Ok(suites::thm71(cfg)),
        "thm82" => Ok(suites::thm82(cfg)),
        "stable" => Ok(suites::stable(cfg)),
        "twisted" => suites::twisted(cfg),
        "gauss-oracle" => suites::gauss_oracle(cfg),
        "ff-crystal" => suites::ff_crystal(cfg),
        _ => Err(Error::InvalidParameter(format!("unknown suite {name:?}"))),
    })
}

pub const SUITES: &[&str] = &[
    "lemma73",
    "statement-a",
    "thm71",
    "thm82",
    "stable",
    "twisted",
    "gauss-oracle",
    "ff-crystal",
];

pub mod suites {
    use super::{Report, SuiteConfig};
    use crate::arrays::{self, ArrayKind};
    use crate::chars::CharacterData;
    use crate::crystal::CoeffCtx;
    use crate::ffield::{twist_factor_m, twist_factor_mu, FFContext, HDirect};
    use crate::ffpoly::{monic_polys, FFPoly};
    use crate::gauss::{gs_prime_power, GaussElement};
    use crate::patterns::{enumerate_bzl1, enumerate_cq1, is_strict, patterns_by_weight};
    use crate::weyl;
    use crate::Error;
    use rayon::prelude::*;

    /// All vectors in `{1..hi}^r`.
    fn mu_vectors(r: usize, hi: u32) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..r {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    (1..=hi).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// All vectors in `{0..hi}^r`.
    fn exp_vectors(r: usize, hi: u32) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..r {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    (0..=hi).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Set equality of the two pattern-polytope descriptions.
    pub fn lemma73(cfg: &SuiteConfig) -> Report {
        let r_max = cfg.r_max.unwrap_or(4);
        let mu_max = cfg.mu_max.unwrap_or(3);
        let mut checked = 0;
        let mut failed = 0;
        let mut first = None;
        for r in 1..=r_max {
            for mu in mu_vectors(r, mu_max) {
                checked += 1;
                let mut a = enumerate_cq1(&mu);
                a.sort();
                let b = enumerate_bzl1(&mu);
                if a != b {
                    failed += 1;
                    first.get_or_insert(format!("mu = {mu:?}"));
                }
            }
        }
        Report {
            suite: "lemma73".into(),
            params: format!("r<=:{r_max} mu<=:{mu_max}"),
            checked,
            failed,
            symbolic_mismatches: 0,
            first_counterexample: first,
        }
    }

    /// The four one-row sum equalities over every strict weight; the
    /// numeric cyclotomic check is authoritative, symbolic-form mismatches
    /// that pass it are counted separately.
    pub fn statement_a(cfg: &SuiteConfig) -> Report {
        let ns: Vec<u32> = cfg.n.map(|n| vec![n]).unwrap_or_else(|| vec![3, 5]);
        let mut jobs: Vec<(u32, Vec<u32>)> = Vec::new();
        for &n in &ns {
            let r4 = cfg.r_max.unwrap_or(4);
            for r in 1..=r4 {
                for mu in mu_vectors(r, cfg.mu_max.unwrap_or(2).min(2)) {
                    jobs.push((n, mu));
                }
            }
            for r in 1..=cfg.r_max.unwrap_or(4).min(3) {
                for mu in mu_vectors(r, cfg.mu_max.unwrap_or(3)) {
                    if mu.iter().any(|&x| x > 2) {
                        jobs.push((n, mu));
                    }
                }
            }
        }
        let results: Vec<(usize, usize, usize, Option<String>)> = jobs
            .par_iter()
            .map(|(n, mu)| {
                let n = *n;
                let cd = CharacterData::with_default_q(n);
                let mut checked = 0;
                let mut failed = 0;
                let mut symbolic = 0;
                let mut first = None;
                for (k, _) in patterns_by_weight(mu) {
                    if !is_strict(&k, mu) {
                        continue;
                    }
                    checked += 1;
                    let s = arrays::statement_a_sums(&k, mu, n, None).expect("strict weight");
                    let sym_ok = s.h_gamma == s.h_delta && s.h_gamma_iota == s.h_delta_iota;
                    let num_ok = cd.numeric_eq(&s.h_gamma, &s.h_delta).expect("same degree")
                        && cd.numeric_eq(&s.h_gamma_iota, &s.h_delta_iota).expect("same degree");
                    if !num_ok {
                        failed += 1;
                        first.get_or_insert(format!("n={n} mu={mu:?} k={k:?}"));
                    } else if !sym_ok {
                        symbolic += 1;
                    }
                }
                (checked, failed, symbolic, first)
            })
            .collect();
        let mut checked = 0;
        let mut failed = 0;
        let mut symbolic = 0;
        let mut first = None;
        for (c, f, s, ce) in results {
            checked += c;
            failed += f;
            symbolic += s;
            if first.is_none() {
                first = ce;
            }
        }
        Report {
            suite: "statement-a".into(),
            params: format!("n:{ns:?}"),
            checked,
            failed,
            symbolic_mismatches: symbolic,
            first_counterexample: first,
        }
    }

    /// Equality of the two coefficient descriptions under index reversal.
    pub fn thm71(cfg: &SuiteConfig) -> Report {
        let ns: Vec<u32> = cfg.n.map(|n| vec![n]).unwrap_or_else(|| vec![3, 5]);
        let r_max = cfg.r_max.unwrap_or(4);
        let k_max = cfg.k_max.unwrap_or(3);
        let m_max = cfg.m_max.unwrap_or(2);
        let mut checked = 0;
        let mut failed = 0;
        let mut first = None;
        for &n in &ns {
            let ctx = CoeffCtx::new(n);
            for r in 1..=r_max {
                let keys: Vec<(Vec<u32>, Vec<u32>)> = exp_vectors(r, k_max)
                    .into_iter()
                    .flat_map(|k| exp_vectors(r, m_max).into_iter().map(move |m| (k.clone(), m)))
                    .collect();
                let results: Vec<Option<String>> = keys
                    .par_iter()
                    .map(|(k, m)| {
                        let h = ctx.h_inductive(k, m);
                        let kappa: Vec<u32> = k.iter().rev().copied().collect();
                        let ell: Vec<u32> = m.iter().rev().copied().collect();
                        let hb = ctx.h_bzl_inductive(&kappa, &ell).expect("odd n");
                        if h == hb {
                            None
                        } else {
                            Some(format!("n={n} k={k:?} m={m:?}"))
                        }
                    })
                    .collect();
                for res in results {
                    checked += 1;
                    if let Some(ce) = res {
                        failed += 1;
                        first.get_or_insert(ce);
                    }
                }
            }
        }
        Report {
            suite: "thm71".into(),
            params: format!("n:{ns:?} r<=:{r_max} k<=:{k_max} m<=:{m_max}"),
            checked,
            failed,
            symbolic_mismatches: 0,
            first_counterexample: first,
        }
    }

    /// Equality of the component description with the one-row recursion.
    pub fn thm82(cfg: &SuiteConfig) -> Report {
        let ns: Vec<u32> = cfg.n.map(|n| vec![n]).unwrap_or_else(|| vec![1, 2, 3, 4, 5, 6]);
        let r_max = cfg.r_max.unwrap_or(3);
        let k_max = cfg.k_max.unwrap_or(3);
        let m_max = cfg.m_max.unwrap_or(2);
        let mut checked = 0;
        let mut failed = 0;
        let mut first = None;
        for &n in &ns {
            let ctx = CoeffCtx::new(n);
            for r in 1..=r_max {
                let keys: Vec<(Vec<u32>, Vec<u32>)> = exp_vectors(r, k_max)
                    .into_iter()
                    .flat_map(|k| exp_vectors(r, m_max).into_iter().map(move |m| (k.clone(), m)))
                    .collect();
                let results: Vec<Option<String>> = keys
                    .par_iter()
                    .map(|(k, m)| {
                        let a = ctx.h_daleth(k, m);
                        let b = ctx.h_inductive(k, m);
                        if a == b {
                            None
                        } else {
                            Some(format!("n={n} k={k:?} m={m:?}"))
                        }
                    })
                    .collect();
                for res in results {
                    checked += 1;
                    if let Some(ce) = res {
                        failed += 1;
                        first.get_or_insert(ce);
                    }
                }
            }
        }
        Report {
            suite: "thm82".into(),
            params: format!("n:{ns:?} r<=:{r_max} k<=:{k_max} m<=:{m_max}"),
            checked,
            failed,
            symbolic_mismatches: 0,
            first_counterexample: first,
        }
    }

    /// Stable-range support and values against the recursion.
    pub fn stable(cfg: &SuiteConfig) -> Report {
        let mut checked = 0;
        let mut failed = 0;
        let mut first = None;
        let r_list: Vec<usize> = match cfg.r_max {
            Some(r) => vec![r.clamp(1, 3)],
            None => vec![2, 3],
        };
        for r in r_list.clone() {
            for ell in exp_vectors(r, 1) {
                let (n_a, n_b) = weyl::minimal_stable_n(&ell);
                for n in [n_a, n_b] {
                    let pts = match weyl::stable_support(&ell, n) {
                        Ok(p) => p,
                        Err(e) => {
                            checked += 1;
                            failed += 1;
                            first.get_or_insert(format!("ell={ell:?} n={n}: {e}"));
                            continue;
                        }
                    };
                    let ctx = CoeffCtx::new(n);
                    let support: std::collections::BTreeMap<Vec<u32>, GaussElement> =
                        pts.iter().map(|p| (p.k.clone(), p.value.clone())).collect();
                    // every candidate k: nonzero exactly on the predicted
                    // points, with the predicted values
                    let cands = ctx.support_candidates(&ell);
                    let results: Vec<Option<String>> = cands
                        .par_iter()
                        .map(|k| {
                            let h = ctx.h_inductive(k, &ell);
                            match support.get(k) {
                                Some(v) if &h == v => None,
                                Some(_) => Some(format!("value mismatch ell={ell:?} n={n} k={k:?}")),
                                None if h.is_zero() => None,
                                None => Some(format!("extra support ell={ell:?} n={n} k={k:?}")),
                            }
                        })
                        .collect();
                    for res in results {
                        checked += 1;
                        if let Some(ce) = res {
                            failed += 1;
                            first.get_or_insert(ce);
                        }
                    }
                    // and all |W| predicted points are hit (nonzero there)
                    for p in &pts {
                        checked += 1;
                        if ctx.h_inductive(&p.k, &ell) != p.value || p.value.is_zero() {
                            failed += 1;
                            first.get_or_insert(format!(
                                "missing support ell={ell:?} n={n} w={}",
                                p.w.word()
                            ));
                        }
                    }
                }
            }
        }
        Report {
            suite: "stable".into(),
            params: format!("r:{r_list:?} ell<=:1"),
            checked,
            failed,
            symbolic_mismatches: 0,
            first_counterexample: first,
        }
    }

    /// Prime-power rule table against exhaustive residue enumeration.
    pub fn gauss_oracle(cfg: &SuiteConfig) -> Result<Report, Error> {
        let ns: Vec<u32> = cfg.n.map(|n| vec![n]).unwrap_or_else(|| vec![2, 3, 4, 5, 6]);
        let l_max = 4u32;
        let mut checked = 0;
        let mut failed = 0;
        let mut first = None;
        for &n in &ns {
            let q = cfg.q.unwrap_or_else(|| crate::chars::default_q(n));
            let ctx = FFContext::new(n, q)?;
            let cd = &ctx.cd;
            for l in 0..=l_max {
                let counts = ctx.prime_power_counts(l);
                for k in 0..=4u32 {
                    for t in 0..=2 * n as i64 {
                        checked += 1;
                        let brute = counts.eval(&ctx, t, k);
                        let rule = gs_prime_power(t, k, l, n);
                        let sym = cd.numeric_eval(&rule).expect("nonneg exponents");
                        if brute != sym {
                            failed += 1;
                            first.get_or_insert(format!("n={n} q={q} t={t} k={k} l={l}"));
                        }
                    }
                }
            }
        }
        Ok(Report {
            suite: "gauss-oracle".into(),
            params: format!("n:{ns:?} k,l<=4"),
            checked,
            failed,
            symbolic_mismatches: 0,
            first_counterexample: first,
        })
    }

    /// Twisted multiplicativity in the function-field model: both the
    /// twisting-parameter factor and the coprime-index factorization.
    pub fn twisted(cfg: &SuiteConfig) -> Result<Report, Error> {
        let n = cfg.n.unwrap_or(3);
        let q = cfg.q.unwrap_or(13);
        let deg_max = cfg.deg_max.unwrap_or(3);
        let ctx = FFContext::new(n, q)?;
        let fq = ctx.fq;
        let cy = ctx.cd.cyclotomy();
        let mut hd = HDirect::new(&ctx);
        let mut checked = 0;
        let mut failed = 0;
        let mut first = None;

        // monic vectors (C_1, ..., C_r) with total degree <= bound
        let monic_vectors = |r: usize, bound: usize| -> Vec<Vec<FFPoly>> {
            let mut out: Vec<(Vec<FFPoly>, usize)> = vec![(vec![], 0)];
            for _ in 0..r {
                let mut next = Vec::new();
                for (v, used) in &out {
                    for d in 0..=bound - used {
                        for p in monic_polys(d, &fq) {
                            let mut w = v.clone();
                            w.push(p);
                            next.push((w, used + d));
                        }
                    }
                }
                out = next;
            }
            out.into_iter().map(|(v, _)| v).collect()
        };
        let coprime = |a: &[FFPoly], b: &[FFPoly]| -> bool {
            a.iter().all(|x| b.iter().all(|y| x.gcd(y, &fq).is_one()))
        };

        // part 1: coprime factorizations C'' = C * C' (componentwise)
        for r in 1..=2usize {
            let bound = if r == 1 { deg_max } else { deg_max.min(3) };
            let m_all = vec![FFPoly::one(); r];
            let mut m_tw = vec![FFPoly::one(); r];
            m_tw[0] = FFPoly::from_coeffs(vec![1, 1]); // t + 1
            for cc in monic_vectors(r, bound) {
                if cc.iter().any(|c| c.is_constant()) && cc.iter().all(|c| c.is_constant()) {
                    // H(1,...,1; m) = 1; still a valid factorization target
                }
                // all componentwise coprime splittings
                let mut splits: Vec<(Vec<FFPoly>, Vec<FFPoly>)> = vec![(vec![], vec![])];
                for c in &cc {
                    let divs = c.monic_divisors(&fq);
                    let mut next = Vec::new();
                    for (a, b) in &splits {
                        for d in &divs {
                            let e = c.div_exact(d, &fq).unwrap();
                            if d.gcd(&e, &fq).is_one() {
                                let mut na = a.clone();
                                let mut nb = b.clone();
                                na.push(d.clone());
                                nb.push(e);
                                next.push((na, nb));
                            }
                        }
                    }
                    splits = next;
                }
                for m in [&m_all, &m_tw] {
                    if !coprime(&cc, std::slice::from_ref(&m[0])) && m[0] != FFPoly::one() {
                        continue;
                    }
                    let h_full = hd.eval(&cc, m)?;
                    for (ca, cb) in &splits {
                        if !coprime(ca, cb) {
                            continue;
                        }
                        checked += 1;
                        let mu_idx = twist_factor_mu(&ctx, ca, cb)?;
                        let ha = hd.eval(ca, m)?;
                        let hb = hd.eval(cb, m)?;
                        let rhs = cy.scale(
                            &cy.mul(&ha, &hb),
                            &num_bigint::BigInt::from(1),
                        );
                        let rhs = cy.mul(&rhs, &cy.root(ctx.cd.root_index(mu_idx, 0)));
                        if h_full != rhs {
                            failed += 1;
                            first.get_or_insert(format!(
                                "mu-split C={:?} C'={:?} m={:?}",
                                ca, cb, m
                            ));
                        }
                    }
                }
            }
        }

        // part 2: twisting-parameter multiplicativity
        let m_primes: Vec<Vec<FFPoly>> = vec![
            vec![FFPoly::one()],
            vec![FFPoly::from_coeffs(vec![1, 1])],
            vec![FFPoly::from_coeffs(vec![2, 1])],
        ];
        for r in 1..=2usize {
            for cc in monic_vectors(r, if r == 1 { deg_max } else { deg_max.min(3) }) {
                for m in monic_vectors(r, 1) {
                    if m.iter().any(|x| x.is_zero()) {
                        continue;
                    }
                    for mp1 in &m_primes {
                        // build a rank-r twist vector from the rank-1 seeds
                        for pos in 0..r {
                            let mut mp = vec![FFPoly::one(); r];
                            mp[pos] = mp1[0].clone();
                            if !coprime(&mp, &cc) {
                                continue;
                            }
                            checked += 1;
                            let mm: Vec<FFPoly> =
                                m.iter().zip(&mp).map(|(a, b)| a.mul(b, &fq)).collect();
                            let lhs = hd.eval(&cc, &mm)?;
                            let idx = twist_factor_m(&ctx, &cc, &mp)?;
                            let base = hd.eval(&cc, &m)?;
                            let rhs = cy.mul(&base, &cy.root(ctx.cd.root_index(idx, 0)));
                            if lhs != rhs {
                                failed += 1;
                                first.get_or_insert(format!(
                                    "m-twist C={cc:?} m={m:?} m'={mp:?}"
                                ));
                            }
                        }
                    }
                }
            }
        }

        Ok(Report {
            suite: "twisted".into(),
            params: format!("n={n} q={q} deg<= {deg_max} r<=2"),
            checked,
            failed,
            symbolic_mismatches: 0,
            first_counterexample: first,
        })
    }

    /// Function-field model against the symbolic recursion at prime powers.
    pub fn ff_crystal(cfg: &SuiteConfig) -> Result<Report, Error> {
        let n = cfg.n.unwrap_or(3);
        let q = cfg.q.unwrap_or(13);
        let e_max = cfg.k_max.unwrap_or(2).min(3);
        let ctx = FFContext::new(n, q)?;
        let coeff = CoeffCtx::new(n);
        let cd = CharacterData::new(n, q)?;
        let mut hd = HDirect::new(&ctx);
        let mut checked = 0;
        let mut failed = 0;
        let mut first = None;
        for r in 1..=2usize {
            for k in exp_vectors(r, e_max) {
                for m in exp_vectors(r, e_max) {
                    checked += 1;
                    let c_polys: Vec<FFPoly> =
                        k.iter().map(|&e| FFPoly::x_pow(e as usize)).collect();
                    let m_polys: Vec<FFPoly> =
                        m.iter().map(|&e| FFPoly::x_pow(e as usize)).collect();
                    let direct = hd.eval(&c_polys, &m_polys)?;
                    let sym = coeff.h_inductive(&k, &m);
                    let (val, shift) = cd.eval_scaled(&sym)?;
                    let lhs = if shift == 0 {
                        direct.clone()
                    } else {
                        cd.cyclotomy()
                            .scale(&direct, &num_bigint::BigInt::from(q).pow(shift))
                    };
                    if lhs != val {
                        failed += 1;
                        first.get_or_insert(format!("k={k:?} m={m:?}"));
                    }
                }
            }
        }
        Ok(Report {
            suite: "ff-crystal".into(),
            params: format!("n={n} q={q} exponents<={e_max} r<=2"),
            checked,
            failed,
            symbolic_mismatches: 0,
            first_counterexample: first,
        })
    }
}
