//! Schur-determinant machinery: partitions, inverse class sequences, and
//! the numerical-positivity certification for twisted cotangent bundles.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polyring::MultiPoly;
use crate::towerchow::{base_segre, TowerGeometry};

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        match self.parts.first() {
            None => Partition::empty(),
            Some(&first) => Partition {
                parts: (1..=first)
                    .map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32)
                    .collect(),
            },
        }
    }

    /// All partitions of `weight`, in lexicographically decreasing order.
    pub fn partitions_of(weight: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition {
                    parts: prefix.clone(),
                });
                return;
            }
            for first in (1..=rest.min(max)).rev() {
                prefix.push(first);
                rec(rest - first, first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if weight == 0 {
            out.push(Partition::empty());
        } else {
            rec(weight, weight, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Graded sequence of class polynomials: entry `i` carries grading `i`,
/// entry 0 is the unit, out-of-range indices read as zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassSequence {
    num_vars: usize,
    entries: Vec<MultiPoly>,
}

impl ClassSequence {
    pub fn new(entries: Vec<MultiPoly>) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::Domain("class sequence needs an entry 0".into()))?;
        let num_vars = first.num_vars();
        if *first != MultiPoly::one(num_vars) {
            return Err(Error::Domain("class sequence entry 0 must be 1".into()));
        }
        Ok(ClassSequence { num_vars, entries })
    }

    /// The formal sequence: entry `i` is its own variable `c_i`.
    pub fn formal(max_index: usize) -> Self {
        let mut entries = vec![MultiPoly::one(max_index)];
        for i in 0..max_index {
            entries.push(MultiPoly::var(max_index, i));
        }
        ClassSequence {
            num_vars: max_index,
            entries,
        }
    }

    /// Elementary symmetric sequence `e_0, e_1, ..` in `c` variables.
    pub fn elementary(num_vars: usize, max_index: usize) -> Self {
        ClassSequence {
            num_vars,
            entries: (0..=max_index)
                .map(|k| MultiPoly::elementary_symmetric(num_vars, k))
                .collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn max_index(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn get(&self, index: i64) -> MultiPoly {
        if index == 0 {
            return MultiPoly::one(self.num_vars);
        }
        if index < 0 || index as usize >= self.entries.len() {
            return MultiPoly::zero(self.num_vars);
        }
        self.entries[index as usize].clone()
    }
}

/// The Schur determinant `det [ c_{lambda_i + j - i} ]` over a class
/// sequence; the result carries grading `weight(lambda)`.
pub fn schur_delta(lambda: &Partition, seq: &ClassSequence) -> MultiPoly {
    let l = lambda.len();
    if l == 0 {
        return MultiPoly::one(seq.num_vars());
    }
    let matrix: Vec<Vec<MultiPoly>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    seq.get(lambda.parts()[i] as i64 + j as i64 - i as i64)
                })
                .collect()
        })
        .collect();
    det(&matrix, seq.num_vars())
}

fn det(m: &[Vec<MultiPoly>], num_vars: usize) -> MultiPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(num_vars);
    for (col, pivot) in m[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cofactor = &det(&minor, num_vars) * pivot;
        if col % 2 == 0 {
            acc = &acc + &cofactor;
        } else {
            acc = &acc - &cofactor;
        }
    }
    acc
}

/// Invert a truncated class series: given `c`, produce the `s` sequence
/// with `(1 + c_1 t + c_2 t^2 + ..)(1 - s_1 t + s_2 t^2 - ..) = 1`.
/// Applying the operation twice returns the input up to truncation.
pub fn series_inverse(seq: &ClassSequence, max_index: usize) -> ClassSequence {
    let nv = seq.num_vars();
    // sigma_k = (-1)^k s_k satisfies sigma_k = -sum_{j<k} c_{k-j} sigma_j
    let mut sigma = vec![MultiPoly::one(nv)];
    for k in 1..=max_index {
        let mut acc = MultiPoly::zero(nv);
        for (j, sig) in sigma.iter().enumerate() {
            acc = &acc + &(&seq.get((k - j) as i64) * sig);
        }
        sigma.push(-&acc);
    }
    let entries = sigma
        .into_iter()
        .enumerate()
        .map(|(k, s)| if k % 2 == 0 { s } else { -&s })
        .collect();
    ClassSequence {
        num_vars: nv,
        entries,
    }
}

/// Per-partition outcome of the positivity run.
#[derive(Clone, Debug)]
pub struct PartitionCheck {
    pub lambda: Partition,
    pub conjugate: Partition,
    /// dominant part of the Schur determinant equals the determinant of
    /// the elementary-symmetric sequence
    pub dominant_ok: bool,
    pub bound: Option<u32>,
    /// the certified polynomial itself (h-grading divided out)
    pub delta_tilde: MultiPoly,
}

#[derive(Clone, Debug)]
pub struct PositivityReport {
    pub geom: TowerGeometry,
    pub a: i64,
    pub partitions: Vec<PartitionCheck>,
    /// maximum of the per-partition bounds; absent if any is unresolved
    pub d_bound: Option<u32>,
}

impl PositivityReport {
    pub fn all_dominant_ok(&self) -> bool {
        self.partitions.iter().all(|p| p.dominant_ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "geometry": self.geom.to_json(),
            "a": self.a,
            "partitions": self
                .partitions
                .iter()
                .map(|p| {
                    json!({
                        "lambda": p.lambda.parts(),
                        "conjugate": p.conjugate.parts(),
                        "dominant_ok": p.dominant_ok,
                        "bound": p.bound,
                    })
                })
                .collect::<Vec<Value>>(),
            "D": self.d_bound,
        })
    }
}

impl fmt::Display for PositivityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} a={}", self.geom, self.a)?;
        for p in &self.partitions {
            writeln!(
                f,
                "lambda={} conjugate={} dominant_ok={} bound={}",
                p.lambda,
                p.conjugate,
                p.dominant_ok,
                p.bound.map_or("none".to_string(), |b| b.to_string()),
            )?;
        }
        match self.d_bound {
            Some(d) => write!(f, "D = {d}"),
            None => write!(f, "D = none (cap exhausted)"),
        }
    }
}

/// For every partition of weight up to `dim X`, certify positivity of the
/// Schur determinant of the Segre sequence of the twisted cotangent
/// bundle, and record whether its dominant part matches the split-bundle
/// determinant.
///
/// Requires `codim >= dim` so that all tested subvariety dimensions stay
/// within the split range.
pub fn numerical_positivity_report(
    geom: &TowerGeometry,
    a: i64,
    d_max: u32,
) -> Result<PositivityReport> {
    if geom.codim < geom.dim {
        return Err(Error::Precondition(format!(
            "numerical positivity needs c >= n, got c={}, n={}",
            geom.codim, geom.dim
        )));
    }
    let n = geom.dim;
    let c = geom.num_vars();
    let sseq = ClassSequence::new(base_segre(geom, -a))?;
    let eseq = ClassSequence::elementary(c, n);
    let mut partitions = Vec::new();
    let mut d_bound = Some(0u32);
    for ell in 1..=n as u32 {
        for lambda in Partition::partitions_of(ell) {
            let conjugate = lambda.conjugate();
            let delta_tilde = schur_delta(&conjugate, &sseq);
            let split = schur_delta(&conjugate, &eseq);
            let dominant_ok = match delta_tilde.dominant() {
                Ok(dom) => dom == split,
                Err(_) => false,
            };
            let bound = delta_tilde.min_certified_bound(d_max);
            d_bound = match (d_bound, bound) {
                (Some(acc), Some(b)) => Some(acc.max(b)),
                _ => None,
            };
            partitions.push(PartitionCheck {
                lambda,
                conjugate,
                dominant_ok,
                bound,
                delta_tilde,
            });
        }
    }
    Ok(PositivityReport {
        geom: *geom,
        a,
        partitions,
        d_bound,
    })
}
