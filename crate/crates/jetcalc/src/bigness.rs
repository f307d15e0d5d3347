//! The bigness pipeline: canonical nef twist classes on the tower, the
//! holomorphic-Morse comparison of their top self-intersection against
//! the pulled-back polarization, and the certified effective degree
//! bound extracted from the difference polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polyring::{AsymOrder, Degree, MultiPoly};
use crate::towerchow::{ChowClass, Tower, TowerGeometry};

/// Twisting data for a line bundle on level `k`: tautological twists
/// `a_1..a_k` plus a base twist `t`, realizing the class
/// `sum_j a_j u_j + t h`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwistVector {
    pub level: usize,
    pub taut: Vec<i64>,
    pub base: i64,
}

/// Result of the partial-sum effectivity test.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EffectivityCheck {
    pub effective: bool,
    pub partial_sums: Vec<i64>,
    /// index (1-based) of the first negative partial sum, if any
    pub first_violation: Option<usize>,
}

impl TwistVector {
    pub fn new(level: usize, taut: Vec<i64>, base: i64) -> Result<Self> {
        if taut.len() != level {
            return Err(Error::LevelMismatch {
                expected: level,
                found: taut.len(),
            });
        }
        Ok(TwistVector { level, taut, base })
    }

    /// The canonical nef bundle on level `k`: tautological tuple
    /// `(2*3^{k-2}, ..., 6, 2, 1)` and base twist `2*3^{k-1}`.
    pub fn l_bundle(k: usize) -> TwistVector {
        assert!(k >= 1);
        let taut = (1..=k)
            .map(|j| if j == k { 1 } else { 2 * 3i64.pow((k - 1 - j) as u32) })
            .collect();
        TwistVector {
            level: k,
            taut,
            base: 2 * 3i64.pow((k - 1) as u32),
        }
    }

    /// Componentwise sum of the canonical bundles `L_1..L_kappa` at level
    /// `kappa`: tautological coefficients `3^{kappa-j}` and base twist
    /// `3^kappa - 1`.
    pub fn canonical(kappa: usize) -> TwistVector {
        assert!(kappa >= 1);
        let mut acc = TwistVector {
            level: kappa,
            taut: vec![0; kappa],
            base: 0,
        };
        for k in 1..=kappa {
            let l = Self::l_bundle(k);
            for (j, a) in l.taut.iter().enumerate() {
                acc.taut[j] += a;
            }
            acc.base += l.base;
        }
        acc
    }

    pub fn partial_sums(&self) -> Vec<i64> {
        self.taut
            .iter()
            .scan(0i64, |acc, &a| {
                *acc += a;
                Some(*acc)
            })
            .collect()
    }

    /// Effectivity holds when every partial sum `b_j = a_1 + .. + a_j`
    /// is nonnegative.
    pub fn effectivity_check(&self) -> EffectivityCheck {
        let partial_sums = self.partial_sums();
        let first_violation = partial_sums.iter().position(|&b| b < 0).map(|i| i + 1);
        EffectivityCheck {
            effective: first_violation.is_none(),
            partial_sums,
            first_violation,
        }
    }

    pub fn realize(&self, geom: TowerGeometry) -> Result<ChowClass> {
        let mut cls = ChowClass::h(geom, self.level)
            .scale(&MultiPoly::constant(geom.num_vars(), self.base));
        for (j, &a) in self.taut.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let u = ChowClass::u(geom, self.level, j + 1)?
                .scale(&MultiPoly::constant(geom.num_vars(), a));
            cls = cls.add(&u);
        }
        Ok(cls)
    }
}

/// First Chern class of the canonical nef bundle on level `k`:
/// `u_k + 2 u_{k-1} + 6 u_{k-2} + .. + 2*3^{k-2} u_1 + 2*3^{k-1} h`.
pub fn l_class(geom: &TowerGeometry, k: usize) -> Result<ChowClass> {
    if k < 1 || k > geom.kappa {
        return Err(Error::OutOfRange {
            atom: format!("l({k})"),
            max: geom.kappa,
        });
    }
    // 2*3^{k-1} must stay within i64
    if k > 39 {
        return Err(Error::Domain(format!("twist level {k} too large")));
    }
    TwistVector::l_bundle(k).realize(*geom)
}

/// Everything the Morse comparison produced for one geometry and twist.
#[derive(Clone, Debug)]
pub struct MorseReport {
    pub geom: TowerGeometry,
    pub a: u32,
    /// base twist absorbed into the polarization, `3^kappa - 1`
    pub m: u64,
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
    pub difference: MultiPoly,
    pub degree_rhs: Degree,
    /// dominant part of the base product `int_X s_b s_c^{kappa-1}`
    pub dominant_target: MultiPoly,
    /// dominant(lhs) equals the dominant of the base product
    pub dominant_check: bool,
    /// how dominant(lhs) sits against the base product
    pub dominant_relation: AsymOrder,
    pub delta: Option<u32>,
}

impl MorseReport {
    pub fn to_json(&self) -> Value {
        json!({
            "N": self.geom.ambient_dim,
            "c": self.geom.codim,
            "a": self.a,
            "m": self.m,
            "kappa": self.geom.kappa,
            "b": self.geom.b,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "difference": self.difference.to_json(),
            "dominant_check": self.dominant_check,
            "degree_rhs": self.degree_rhs.finite(),
            "delta": self.delta,
        })
    }
}

impl fmt::Display for MorseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} a={} m={}", self.geom, self.a, self.m)?;
        writeln!(f, "lhs = {}", self.lhs)?;
        writeln!(f, "rhs = {}", self.rhs)?;
        writeln!(f, "difference = {}", self.difference)?;
        writeln!(f, "degree(rhs) = {}", self.degree_rhs)?;
        writeln!(f, "dominant_check = {}", self.dominant_check)?;
        match self.delta {
            Some(d) => write!(f, "delta = {d}"),
            None => write!(f, "delta = none (cap exhausted)"),
        }
    }
}

fn factorials(up_to: usize) -> Vec<BigInt> {
    let mut f = Vec::with_capacity(up_to + 1);
    f.push(BigInt::one());
    for i in 1..=up_to {
        let next = &f[i - 1] * BigInt::from(i);
        f.push(next);
    }
    f
}

fn for_each_composition(total: u32, slots: usize, f: &mut impl FnMut(&[u32])) {
    fn rec(rest: u32, left: usize, buf: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if left == 1 {
            buf.push(rest);
            f(buf);
            buf.pop();
            return;
        }
        for v in 0..=rest {
            buf.push(v);
            rec(rest - v, left - 1, buf, f);
            buf.pop();
        }
    }
    debug_assert!(slots >= 1);
    let mut buf = Vec::with_capacity(slots);
    rec(total, slots, &mut buf, f);
}

/// Expand `(sum_j alpha_j u_j + m h)^power` over the monomial basis and
/// integrate each monomial once, with `extra_h` additional hyperplane
/// factors multiplied in before integrating.
fn integrate_power(
    tower: &Tower,
    alphas: &[BigInt],
    m: u64,
    power: u32,
    extra_h: u32,
) -> Result<MultiPoly> {
    let kappa = alphas.len();
    let facts = factorials(power as usize);
    let m_big = BigInt::from(m);
    let mut acc = MultiPoly::zero(tower.geom().num_vars());
    let mut failure: Option<Error> = None;
    for_each_composition(power, kappa + 1, &mut |comp| {
        if failure.is_some() {
            return;
        }
        let (u_part, q) = (&comp[..kappa], comp[kappa]);
        let mut coeff = facts[power as usize].clone();
        for &p in comp {
            coeff /= &facts[p as usize];
        }
        for (j, &p) in u_part.iter().enumerate() {
            if p > 0 {
                coeff *= alphas[j].pow(p);
            }
        }
        if q > 0 {
            coeff *= m_big.pow(q);
        }
        match tower.monomial_integral(kappa, u_part, q + extra_h) {
            Ok(integral) => {
                if !integral.is_zero() {
                    acc = &acc + &integral.scale(&coeff);
                }
            }
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

/// The base product `int_X s_b s_c^{kappa-1}` whose dominant part the
/// Morse left-hand side is compared against.
pub fn base_product(tower: &Tower) -> MultiPoly {
    let geom = tower.geom();
    let st = tower.base_segre(0);
    let mut out = &st[geom.b] * &MultiPoly::product_of_vars(geom.num_vars());
    for _ in 1..geom.kappa {
        out = &out * &st[geom.codim];
    }
    out
}

/// Run the Morse comparison on a shared tower context.
///
/// The polarization side absorbs `m = 3^kappa - 1`, the sum of the base
/// twists of the canonical bundles, which is the smallest twist clearing
/// every base component from the nef stack.
pub fn morse_criterion_with(tower: &Tower, a: u32, delta_max: u32) -> Result<MorseReport> {
    let geom = tower.geom();
    let kappa = geom.kappa;
    if kappa > 32 {
        return Err(Error::Domain(format!("kappa={kappa} too large")));
    }
    let n_k = geom.level_dim(kappa) as u32;
    let m = 3u64.pow(kappa as u32) - 1;
    let alphas: Vec<BigInt> = (1..=kappa)
        .map(|j| BigInt::from(3u64).pow((kappa - j) as u32))
        .collect();
    let lhs = integrate_power(tower, &alphas, m, n_k, 0)?;
    let rhs_core = integrate_power(tower, &alphas, m, n_k - 1, 1)?;
    let rhs = rhs_core.scale(&(BigInt::from(n_k) * BigInt::from(m + a as u64)));
    let difference = &lhs - &rhs;
    let degree_rhs = rhs.degree();
    let target = base_product(tower);
    let dominant_target = target
        .dominant()
        .expect("base product is never the zero polynomial");
    let dominant_check = lhs
        .dominant()
        .map(|dom| dom == dominant_target)
        .unwrap_or(false);
    let dominant_relation = lhs.asym_compare(&target);
    let delta = difference.min_certified_bound(delta_max);
    Ok(MorseReport {
        geom,
        a,
        m,
        lhs,
        rhs,
        difference,
        degree_rhs,
        dominant_target,
        dominant_check,
        dominant_relation,
        delta,
    })
}

/// One-shot Morse comparison on a fresh tower context.
pub fn morse_criterion(geom: &TowerGeometry, a: u32, delta_max: u32) -> Result<MorseReport> {
    morse_criterion_with(&Tower::new(*geom), a, delta_max)
}

#[derive(Clone, Debug)]
pub struct AuditCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub geom: TowerGeometry,
    pub checks: Vec<AuditCheck>,
    pub pass: bool,
}

impl AuditReport {
    pub fn to_json(&self) -> Value {
        json!({
            "N": self.geom.ambient_dim,
            "c": self.geom.codim,
            "kappa": self.geom.kappa,
            "b": self.geom.b,
            "checks": self
                .checks
                .iter()
                .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
                .collect::<Vec<Value>>(),
            "pass": self.pass,
        })
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.geom)?;
        for c in &self.checks {
            writeln!(
                f,
                "{} {} ({})",
                if c.pass { "ok  " } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        write!(f, "audit: {}", if self.pass { "pass" } else { "FAIL" })
    }
}

/// Index multisets violating the `(b, c, .., c)` pattern: first entry
/// below `b`, or first entry equal to `b` with a later entry below `c`.
fn violates_pattern(sorted: &[u32], b: usize, c: usize) -> bool {
    match sorted.first() {
        None => false,
        Some(&i1) => {
            (i1 as usize) < b
                || (i1 as usize == b && sorted[1..].iter().any(|&i| (i as usize) < c))
        }
    }
}

fn ascending_multisets(max_entry: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(min: u32, max: u32, len: usize, buf: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 0 {
            out.push(buf.clone());
            return;
        }
        for v in min..=max {
            buf.push(v);
            rec(v, max, len - 1, buf, out);
            buf.pop();
        }
    }
    rec(1, max_entry, len, &mut Vec::new(), &mut out);
    out
}

/// Programmatic verification of the degree estimates backing the Morse
/// run: products with a hyperplane factor stay below ambient degree,
/// pattern-violating Segre products stay below ambient degree, and the
/// descent chain of leading products has constant dominant part.
pub fn technical_lemma_audit_with(tower: &Tower) -> Result<AuditReport> {
    let geom = tower.geom();
    let ambient = Degree::Finite(geom.ambient_dim as u32);
    let mut checks = Vec::new();

    // (1) every basis monomial carrying at least one h integrates to
    // degree < N; monomial degree bounds every lattice product
    for k in 1..=geom.kappa {
        let n_k = geom.level_dim(k) as u32;
        let mut checked = 0usize;
        let mut total = 0usize;
        let mut worst: Option<Degree> = None;
        let mut pass = true;
        for_each_composition(n_k, k + 1, &mut |comp| {
            let (u_part, q) = (&comp[..k], comp[k]);
            if q == 0 {
                return;
            }
            total += 1;
            // deterministic subsample to keep large levels affordable
            if !total.is_multiple_of(stride(n_k, k)) {
                return;
            }
            checked += 1;
            if let Ok(integral) = tower.monomial_integral(k, u_part, q) {
                let deg = integral.degree();
                if worst.is_none_or(|w| deg > w) {
                    worst = Some(deg);
                }
                if deg >= ambient {
                    pass = false;
                }
            }
        });
        checks.push(AuditCheck {
            name: format!("h-degree-level-{k}"),
            pass,
            detail: format!(
                "checked {checked} of {total} monomials, max degree {}",
                worst.map_or("-inf".to_string(), |d| d.to_string())
            ),
        });
    }

    // (2) pattern-violating Segre products at a level, and one level
    // down, integrate to degree < N. The estimate governs products whose
    // full reduction to the base carries at most kappa indices, so the
    // factor count is capped at kappa - k.
    for k in 1..=geom.kappa {
        let n_k = geom.level_dim(k) as u32;
        for lower in [false, true] {
            if geom.kappa <= k {
                continue;
            }
            let factor_level = if lower { k - 1 } else { k };
            let mut pass = true;
            let mut checked = 0usize;
            for len in 1..=(geom.kappa - k) {
                for multiset in ascending_multisets(geom.dim as u32, len) {
                    if !violates_pattern(&multiset, geom.b, geom.codim) {
                        continue;
                    }
                    let weight: u32 = multiset.iter().sum();
                    if weight > n_k {
                        continue;
                    }
                    let mut integrand = ChowClass::one(geom, k);
                    for &i in &multiset {
                        let factor = tower.expand_tower_segre(factor_level, i)?;
                        integrand = integrand.mul(&factor.pullback_to(k)?);
                    }
                    // complete the grading with a tautological power
                    let rest = n_k - weight;
                    let filler = ChowClass::u(geom, k, k)?.pow(rest);
                    let integral = tower.integrate(&integrand.mul(&filler))?;
                    checked += 1;
                    if integral.degree() >= ambient {
                        pass = false;
                    }
                }
            }
            checks.push(AuditCheck {
                name: format!(
                    "pattern-violation-{}-level-{k}",
                    if lower { "below" } else { "at" }
                ),
                pass,
                detail: format!("checked {checked} products"),
            });
        }
    }

    // (3) the descent chain: dominant parts of the leading products agree
    // from the top block down to the base product
    let c_hat = (geom.codim + geom.dim - 1) as u32;
    let b_hat = (geom.b + geom.dim - 1) as u32;
    let chain_value = |k: usize| -> Result<MultiPoly> {
        // int_{X_k} s_{k,b} s_{k,c}^{kappa-k-1} l_k^{c_hat} .. l_1^{c_hat}
        let mut cls = (*tower.expand_tower_segre(k, geom.b as u32)?).clone();
        for _ in 0..(geom.kappa - k - 1) {
            let f = tower.expand_tower_segre(k, geom.codim as u32)?;
            cls = cls.mul(&f);
        }
        for j in 1..=k {
            cls = cls.mul(&l_class(&geom, j)?.pullback_to(k)?.pow(c_hat));
        }
        tower.integrate(&cls)
    };
    let mut chain = Vec::new();
    for k in 0..geom.kappa {
        chain.push(chain_value(k)?);
    }
    // leading block at the top level
    let mut block = l_class(&geom, geom.kappa)?.pow(b_hat);
    for j in 1..geom.kappa {
        block = block.mul(&l_class(&geom, j)?.pullback_to(geom.kappa)?.pow(c_hat));
    }
    let block_value = tower.integrate(&block)?;
    for k in 1..geom.kappa {
        let ok = chain[k].dominant().ok() == chain[k - 1].dominant().ok();
        checks.push(AuditCheck {
            name: format!("descent-{k}"),
            pass: ok,
            detail: format!("levels {k} -> {}", k - 1),
        });
    }
    let block_ok = block_value.dominant().ok() == chain[geom.kappa - 1].dominant().ok();
    checks.push(AuditCheck {
        name: "leading-block".to_string(),
        pass: block_ok,
        detail: format!("top block vs level {}", geom.kappa - 1),
    });

    let pass = checks.iter().all(|c| c.pass);
    Ok(AuditReport { geom, checks, pass })
}

fn stride(n_k: u32, slots: usize) -> usize {
    // keep roughly 500 samples per level
    let total: u64 = {
        let mut t = 1u64;
        for i in 0..slots as u64 {
            t = t.saturating_mul(n_k as u64 + i + 1) / (i + 1);
        }
        t
    };
    ((total / 500).max(1)) as usize
}

/// One-shot audit on a fresh tower context.
pub fn technical_lemma_audit(geom: &TowerGeometry) -> Result<AuditReport> {
    technical_lemma_audit_with(&Tower::new(*geom))
}
