//! Exact multivariate polynomial arithmetic over the degree variables
//! `d1..dc`, with the degree / dominant-part calculus and positivity
//! certification on translated orthants.
//!
//! Coefficients are arbitrary-precision integers; there is no floating
//! point anywhere. The canonical term order is graded lexicographic, so
//! printing and JSON serialization are deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Exact binomial coefficient with the convention `C(x, 0) = 1` and
/// `C(x, k) = 0` for `0 <= x < k`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        num /= BigInt::from(i + 1);
    }
    num
}

/// Exponent vector of one monomial in `d1..dc`.
///
/// The ordering is graded lexicographic ascending, so reverse iteration
/// over a `BTreeMap<Monomial, _>` yields the canonical print order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn constant(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total degree of a polynomial; the zero polynomial carries the
/// distinguished minus-infinity value so strict bounds hold vacuously.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Outcome of comparing the dominant parts of two polynomials.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AsymOrder {
    /// Equal dominant parts.
    Sim,
    /// First dominates coefficientwise with at least one strict coefficient.
    GtrsimStrict,
    Incomparable,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CertStatus {
    Certified,
    NotCertified,
}

/// Evidence for strict positivity of a polynomial at every integer point
/// whose coordinates are all `>= bound`.
///
/// The criterion is sufficient, not necessary: after substituting
/// `d_i = bound + x_i`, every coefficient must be nonnegative and the
/// constant term strictly positive. A reported bound is therefore
/// "certified", never "minimal".
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PositivityCertificate {
    pub bound: u32,
    pub shifted_constant: BigInt,
    pub status: CertStatus,
}

impl PositivityCertificate {
    pub fn is_certified(&self) -> bool {
        self.status == CertStatus::Certified
    }
}

/// Sparse exact multivariate polynomial in `num_vars` degree variables.
///
/// Invariants: no stored coefficient is zero and every exponent vector
/// has length exactly `num_vars`. Values are immutable after
/// construction; all operations are pure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, value: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial::constant(num_vars), value.into());
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, 1)
    }

    /// The variable `d{index+1}`.
    pub fn var(num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars, "variable index out of range");
        let mut exps = vec![0; num_vars];
        exps[index] = 1;
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial::new(exps), BigInt::one());
        p
    }

    /// `d1 * d2 * ... * dc`, the degree of the ambient hyperplane power.
    pub fn product_of_vars(num_vars: usize) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial::new(vec![1; num_vars]), BigInt::one());
        p
    }

    /// Elementary symmetric polynomial `e_k(d1..dc)`; zero for `k > num_vars`.
    pub fn elementary_symmetric(num_vars: usize, k: usize) -> Self {
        if k > num_vars {
            return Self::zero(num_vars);
        }
        let mut p = Self::zero(num_vars);
        let mut choice: Vec<usize> = (0..k).collect();
        loop {
            let mut exps = vec![0u32; num_vars];
            for &i in &choice {
                exps[i] = 1;
            }
            p.add_term(Monomial::new(exps), BigInt::one());
            // next k-combination of 0..num_vars
            let mut i = k;
            loop {
                if i == 0 {
                    return p;
                }
                i -= 1;
                if choice[i] != i + num_vars - k {
                    break;
                }
                if i == 0 {
                    return p;
                }
            }
            choice[i] += 1;
            for j in i + 1..k {
                choice[j] = choice[j - 1] + 1;
            }
        }
    }

    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Self::zero(num_vars);
        for (exps, coeff) in terms {
            assert_eq!(exps.len(), num_vars, "exponent vector length mismatch");
            p.add_term(Monomial::new(exps), coeff);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&Monomial::constant(self.num_vars))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial::new(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, mono: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(mono.exps().len(), self.num_vars);
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one(self.num_vars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Total degree; minus infinity for the zero polynomial.
    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// Homogeneous part of top total degree.
    pub fn dominant(&self) -> Result<MultiPoly> {
        match self.degree() {
            Degree::MinusInfinity => Err(Error::ZeroDominant),
            Degree::Finite(d) => Ok(MultiPoly {
                num_vars: self.num_vars,
                terms: self
                    .terms
                    .iter()
                    .filter(|(m, _)| m.total_degree() == d)
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect(),
            }),
        }
    }

    fn dominant_or_zero(&self) -> MultiPoly {
        self.dominant().unwrap_or_else(|_| Self::zero(self.num_vars))
    }

    /// Compare dominant parts: equal, coefficientwise strictly above, or
    /// incomparable.
    pub fn asym_compare(&self, other: &MultiPoly) -> AsymOrder {
        let p = self.dominant_or_zero();
        let q = other.dominant_or_zero();
        if p == q {
            return AsymOrder::Sim;
        }
        let diff = &p - &q;
        if !diff.is_zero() && diff.terms.values().all(|c| c.is_positive()) {
            AsymOrder::GtrsimStrict
        } else {
            AsymOrder::Incomparable
        }
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.num_vars, "evaluation point arity mismatch");
        let mut acc = BigInt::zero();
        for (mono, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (&e, x) in mono.exps().iter().zip(point) {
                if e > 0 {
                    term *= x.pow(e);
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitute `d_i = bound + x_i` and expand exactly.
    pub fn shifted(&self, bound: u32) -> MultiPoly {
        let delta = BigInt::from(bound);
        let mut out = Self::zero(self.num_vars);
        for (mono, coeff) in &self.terms {
            let mut acc: Vec<(Vec<u32>, BigInt)> =
                vec![(vec![0; self.num_vars], coeff.clone())];
            for (i, &e) in mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let weights: Vec<BigInt> = (0..=e)
                    .map(|j| binomial(e as u64, j as u64) * delta.pow(e - j))
                    .collect();
                let mut next = Vec::with_capacity(acc.len() * (e as usize + 1));
                for (exps, c) in &acc {
                    for (j, w) in weights.iter().enumerate() {
                        if w.is_zero() {
                            continue;
                        }
                        let mut e2 = exps.clone();
                        e2[i] += j as u32;
                        next.push((e2, c * w));
                    }
                }
                acc = next;
            }
            for (exps, c) in acc {
                out.add_term(Monomial::new(exps), c);
            }
        }
        out
    }

    /// Shifted-coefficient positivity test at a candidate bound.
    pub fn certify_positive(&self, bound: u32) -> PositivityCertificate {
        let shifted = self.shifted(bound);
        let shifted_constant = shifted.constant_term();
        let status = if shifted_constant.is_positive()
            && shifted.terms.values().all(|c| !c.is_negative())
        {
            CertStatus::Certified
        } else {
            CertStatus::NotCertified
        };
        PositivityCertificate {
            bound,
            shifted_constant,
            status,
        }
    }

    /// Smallest certified bound `<= delta_max`, scanned in increasing order.
    pub fn min_certified_bound(&self, delta_max: u32) -> Option<u32> {
        (0..=delta_max).find(|&d| self.certify_positive(d).is_certified())
    }

    /// JSON form: list of `{exponents, coeff}` in canonical order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| {
                    json!({
                        "exponents": m.exps(),
                        "coeff": c.to_string(),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(value: &Value, num_vars: usize) -> Result<MultiPoly> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::Domain("polynomial JSON must be an array".into()))?;
        let mut p = Self::zero(num_vars);
        for entry in arr {
            let exps = entry
                .get("exponents")
                .and_then(|e| e.as_array())
                .ok_or_else(|| Error::Domain("term missing exponents".into()))?
                .iter()
                .map(|v| {
                    v.as_u64()
                        .map(|x| x as u32)
                        .ok_or_else(|| Error::Domain("bad exponent".into()))
                })
                .collect::<Result<Vec<u32>>>()?;
            if exps.len() != num_vars {
                return Err(Error::Domain(format!(
                    "exponent vector has length {}, expected {num_vars}",
                    exps.len()
                )));
            }
            let coeff_str = entry
                .get("coeff")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::Domain("term missing coeff".into()))?;
            let coeff: BigInt = coeff_str
                .parse()
                .map_err(|_| Error::Domain(format!("bad coefficient `{coeff_str}`")))?;
            p.add_term(Monomial::new(exps), coeff);
        }
        Ok(p)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.num_vars, other.num_vars);
        let mut out = MultiPoly::zero(self.num_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let negative = coeff.is_negative();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = coeff.abs();
            let vars: Vec<String> = mono
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("d{}", i + 1)
                    } else {
                        format!("d{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", magnitude, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(num_vars: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(
            num_vars,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), BigInt::from(*c))),
        )
    }

    /// d1*d2*(d1 + d2 - 4), the canonical degree of a curve's cotangent twist.
    fn curve_poly() -> MultiPoly {
        p(2, &[(&[2, 1], 1), (&[1, 2], 1), (&[1, 1], -4)])
    }

    #[test]
    fn degree_examples() {
        assert_eq!(p(2, &[(&[2, 1], 1), (&[1, 0], 1)]).degree(), Degree::Finite(3));
        assert_eq!(MultiPoly::zero(2).degree(), Degree::MinusInfinity);
        assert!(Degree::MinusInfinity < Degree::Finite(0));
    }

    #[test]
    fn dominant_examples() {
        let q = p(2, &[(&[2, 0], 1), (&[1, 0], 3), (&[0, 1], 1)]);
        assert_eq!(q.dominant().unwrap(), p(2, &[(&[2, 0], 1)]));
        assert_eq!(
            curve_poly().dominant().unwrap(),
            p(2, &[(&[2, 1], 1), (&[1, 2], 1)])
        );
        assert_eq!(MultiPoly::zero(1).dominant(), Err(Error::ZeroDominant));
    }

    #[test]
    fn asym_compare_examples() {
        let a = p(1, &[(&[2], 1), (&[1], 1)]);
        let b = p(1, &[(&[2], 1), (&[0], 5)]);
        assert_eq!(a.asym_compare(&b), AsymOrder::Sim);
        let two = p(1, &[(&[2], 2)]);
        let one = p(1, &[(&[2], 1)]);
        assert_eq!(two.asym_compare(&one), AsymOrder::GtrsimStrict);
        let x = p(2, &[(&[2, 0], 1)]);
        let y = p(2, &[(&[0, 2], 1)]);
        assert_eq!(x.asym_compare(&y), AsymOrder::Incomparable);
    }

    #[test]
    fn certify_examples() {
        let lin = p(1, &[(&[1], 1), (&[0], -4)]);
        let cert = lin.certify_positive(5);
        assert!(cert.is_certified());
        assert_eq!(cert.shifted_constant, BigInt::from(1));

        let cert = curve_poly().certify_positive(3);
        assert!(cert.is_certified());
        assert_eq!(cert.shifted_constant, BigInt::from(18));
        let cert = curve_poly().certify_positive(2);
        assert!(!cert.is_certified());
        assert_eq!(cert.shifted_constant, BigInt::from(0));

        let neg = p(1, &[(&[1], -1)]);
        assert!(!neg.certify_positive(1_000_000).is_certified());
    }

    #[test]
    fn min_certified_bound_examples() {
        assert_eq!(curve_poly().min_certified_bound(200), Some(3));
        assert_eq!(p(1, &[(&[1], 1), (&[0], 1)]).min_certified_bound(200), Some(0));
        assert_eq!(p(1, &[(&[0], -1)]).min_certified_bound(200), None);
        assert_eq!(MultiPoly::zero(1).min_certified_bound(200), None);
    }

    #[test]
    fn canonical_display() {
        assert_eq!(curve_poly().to_string(), "d1^2*d2 + d1*d2^2 - 4*d1*d2");
        assert_eq!(
            p(2, &[(&[2, 1], 3), (&[1, 0], -4)]).to_string(),
            "3*d1^2*d2 - 4*d1"
        );
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
        assert_eq!(p(1, &[(&[1], -1)]).to_string(), "-d1");
        assert_eq!(p(1, &[(&[0], -4)]).to_string(), "-4");
        assert_eq!(p(1, &[(&[0], 7)]).to_string(), "7");
    }

    #[test]
    fn elementary_symmetric_basics() {
        assert_eq!(MultiPoly::elementary_symmetric(3, 0), MultiPoly::one(3));
        assert_eq!(
            MultiPoly::elementary_symmetric(2, 1),
            p(2, &[(&[1, 0], 1), (&[0, 1], 1)])
        );
        assert_eq!(
            MultiPoly::elementary_symmetric(2, 2),
            p(2, &[(&[1, 1], 1)])
        );
        assert!(MultiPoly::elementary_symmetric(2, 3).is_zero());
        assert_eq!(
            MultiPoly::elementary_symmetric(4, 4),
            MultiPoly::product_of_vars(4)
        );
        assert_eq!(
            MultiPoly::elementary_symmetric(4, 2).num_terms(),
            6
        );
    }

    #[test]
    fn json_round_trip() {
        let q = curve_poly();
        let v = q.to_json();
        assert_eq!(MultiPoly::from_json(&v, 2).unwrap(), q);
        let first = v.as_array().unwrap()[0].clone();
        assert_eq!(first["exponents"], json!([2, 1]));
        assert_eq!(first["coeff"], json!("1"));
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 0), BigInt::one());
        assert_eq!(binomial(3, 7), BigInt::zero());
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        (1usize..=3)
            .prop_flat_map(|nv| {
                (
                    Just(nv),
                    proptest::collection::vec(
                        (proptest::collection::vec(0u32..4, nv), -9i64..=9),
                        0..6,
                    ),
                )
            })
            .prop_map(|(nv, terms)| {
                MultiPoly::from_terms(
                    nv,
                    terms.into_iter().map(|(e, c)| (e, BigInt::from(c))),
                )
            })
    }

    fn arb_triple() -> impl Strategy<Value = (MultiPoly, MultiPoly, MultiPoly)> {
        (1usize..=3).prop_flat_map(|nv| {
            let one = move || {
                proptest::collection::vec(
                    (proptest::collection::vec(0u32..4, nv), -9i64..=9),
                    0..5,
                )
                .prop_map(move |terms| {
                    MultiPoly::from_terms(
                        nv,
                        terms.into_iter().map(|(e, c)| (e, BigInt::from(c))),
                    )
                })
            };
            (one(), one(), one())
        })
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn degree_additive((a, b, _) in arb_triple()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let (da, db) = (a.degree().finite().unwrap(), b.degree().finite().unwrap());
            prop_assert_eq!((&a * &b).degree(), Degree::Finite(da + db));
        }

        #[test]
        fn dominant_multiplicative((a, b, _) in arb_triple()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let lhs = (&a * &b).dominant().unwrap();
            let rhs = &a.dominant().unwrap() * &b.dominant().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn shift_monotone(a in arb_poly(), delta in 0u32..6) {
            if a.certify_positive(delta).is_certified() {
                for step in 1..=3 {
                    prop_assert!(a.certify_positive(delta + step).is_certified());
                }
            }
        }

        #[test]
        fn certificate_sound(a in arb_poly(), seed in 0u64..u64::MAX) {
            if let Some(bound) = a.min_certified_bound(12) {
                let mut state = seed;
                let mut next = move || {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    (state >> 33) % 21
                };
                for _ in 0..50 {
                    let point: Vec<BigInt> = (0..a.num_vars())
                        .map(|_| BigInt::from(bound as u64 + next()))
                        .collect();
                    prop_assert!(a.eval(&point).is_positive());
                }
            }
        }
    }
}
