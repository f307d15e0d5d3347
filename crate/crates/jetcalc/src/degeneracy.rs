//! Generic-intersection dimension arithmetic and the hyperbolicity
//! threshold for complete intersections of moved hypersurfaces.

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Ambient dimension and number of hypersurfaces being intersected.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DegeneracyInput {
    pub ambient_dim: usize,
    pub hypersurfaces: usize,
}

impl DegeneracyInput {
    pub fn new(ambient_dim: usize, hypersurfaces: usize) -> Result<Self> {
        if ambient_dim < 1 || hypersurfaces < 1 || hypersurfaces > ambient_dim {
            return Err(Error::Domain(format!(
                "degeneracy input requires N >= 1 and 1 <= c <= N, got N={ambient_dim}, c={hypersurfaces}"
            )));
        }
        Ok(DegeneracyInput {
            ambient_dim,
            hypersurfaces,
        })
    }
}

/// Dimension of the intersection of a generically moved `n`-dimensional
/// subvariety with an `m`-dimensional one in projective `ambient`-space:
/// `max(n + m - ambient, 0)`.
pub fn moving_dimension(n: usize, m: usize, ambient: usize) -> Result<usize> {
    if n > ambient || m > ambient {
        return Err(Error::Domain(format!(
            "moving lemma needs 0 <= n, m <= N, got n={n}, m={m}, N={ambient}"
        )));
    }
    Ok((n + m).saturating_sub(ambient))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DegeneracyReport {
    pub ambient_dim: usize,
    pub hypersurfaces: usize,
    /// `N - 3c`; negative values mean the locus is empty
    pub locus_dim: i64,
    pub empty: bool,
    pub hyperbolic: bool,
}

impl DegeneracyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "N": self.ambient_dim,
            "c": self.hypersurfaces,
            "locus_dim": self.locus_dim,
            "empty": self.empty,
            "hyperbolic": self.hyperbolic,
        })
    }
}

/// Iterated moving-lemma count: the degeneracy locus of the generic
/// complete intersection has dimension `N - 3c`, so hyperbolicity holds
/// exactly when `3c >= N`.
pub fn degeneracy_report(input: DegeneracyInput) -> DegeneracyReport {
    let n = input.ambient_dim as i64;
    let c = input.hypersurfaces as i64;
    let locus_dim = n - 3 * c;
    DegeneracyReport {
        ambient_dim: input.ambient_dim,
        hypersurfaces: input.hypersurfaces,
        locus_dim,
        empty: locus_dim < 0,
        hyperbolic: 3 * c >= n,
    }
}
