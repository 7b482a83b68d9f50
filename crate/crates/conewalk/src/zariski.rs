//! Numerical Zariski decomposition of a class against a designated set of
//! exceptional roots.
//!
//! D = P + N with pair(P, E) >= 0 for every root E, N a nonnegative
//! rational combination of the roots in the support, pair(P, E) = 0 on the
//! support, and the support gram negative definite. Uniqueness holds for
//! root sets whose distinct members pair nonnegatively; the support is
//! found by the classical monotone growth iteration.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::mat::{add_qvec, scale_qvec, sub_qvec, QMat, QVec, Q};
use crate::roots::Root;

#[derive(Clone, Debug)]
pub struct ZariskiDecomposition {
    /// Positive part P = D - N.
    pub positive: QVec,
    /// Coefficient of each input root in N (zero off the support).
    pub coefficients: Vec<Q>,
    /// Indices of the roots carrying a nonzero coefficient slot.
    pub support: Vec<usize>,
}

impl ZariskiDecomposition {
    pub fn negative(&self, roots: &[Root]) -> QVec {
        let n = self.positive.len();
        let mut acc = vec![Q::zero(); n];
        for (c, r) in self.coefficients.iter().zip(roots) {
            if !c.is_zero() {
                acc = add_qvec(&acc, &scale_qvec(c, r.vector()));
            }
        }
        acc
    }

    pub fn is_trivial(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }
}

/// Validate the root-set preconditions: distinct roots pair >= 0.
fn validate_roots(lat: &Lattice, roots: &[Root]) -> Result<()> {
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let p = lat.pair(roots[i].vector(), roots[j].vector())?;
            if p.is_negative() {
                return Err(Error::NegativeRootPairing(p.to_string()));
            }
        }
    }
    Ok(())
}

/// Leading-principal-minor test for negative definiteness of the gram of
/// the given root subset: (-1)^k * minor_k > 0 for every k.
fn support_negative_definite(lat: &Lattice, roots: &[Root], support: &[usize]) -> Result<bool> {
    let k = support.len();
    let mut gram = QMat::zero(k, k);
    for (a, &i) in support.iter().enumerate() {
        for (b, &j) in support.iter().enumerate() {
            gram[(a, b)] = lat.pair(roots[i].vector(), roots[j].vector())?;
        }
    }
    for t in 1..=k {
        let mut minor = QMat::zero(t, t);
        for a in 0..t {
            for b in 0..t {
                minor[(a, b)] = gram[(a, b)].clone();
            }
        }
        let det = minor.det();
        let signed = if t % 2 == 0 { det } else { -det };
        if !signed.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Solve pair(D - sum a_i E_i, E_j) = 0 for j in the support.
fn solve_support(lat: &Lattice, d: &[Q], roots: &[Root], support: &[usize]) -> Result<Vec<Q>> {
    let k = support.len();
    let mut a = QMat::zero(k, k);
    let mut rhs = Vec::with_capacity(k);
    for (row, &j) in support.iter().enumerate() {
        for (col, &i) in support.iter().enumerate() {
            a[(row, col)] = lat.pair(roots[i].vector(), roots[j].vector())?;
        }
        rhs.push(lat.pair(d, roots[j].vector())?);
    }
    a.solve(&rhs).ok_or_else(|| Error::Internal("singular support system".into()))
}

/// The unique Zariski decomposition of D against the root set.
pub fn zariski_decompose(
    lat: &Lattice,
    d: &[Q],
    roots: &[Root],
) -> Result<ZariskiDecomposition> {
    validate_roots(lat, roots)?;
    let mut in_support = vec![false; roots.len()];
    for (i, r) in roots.iter().enumerate() {
        if lat.pair(d, r.vector())?.is_negative() {
            in_support[i] = true;
        }
    }
    loop {
        let support: Vec<usize> =
            (0..roots.len()).filter(|&i| in_support[i]).collect();
        if !support.is_empty() && !support_negative_definite(lat, roots, &support)? {
            return Err(Error::NotNegativeDefinite);
        }
        let coeffs_on_support = if support.is_empty() {
            Vec::new()
        } else {
            solve_support(lat, d, roots, &support)?
        };
        let mut coefficients = vec![Q::zero(); roots.len()];
        for (&i, c) in support.iter().zip(&coeffs_on_support) {
            coefficients[i] = c.clone();
        }
        let mut n = vec![Q::zero(); lat.rank()];
        for (c, r) in coefficients.iter().zip(roots) {
            if !c.is_zero() {
                n = add_qvec(&n, &scale_qvec(c, r.vector()));
            }
        }
        let p = sub_qvec(d, &n);
        // Batch growth: add every excluded root that now pairs negatively.
        let mut grew = false;
        for (i, r) in roots.iter().enumerate() {
            if !in_support[i] && lat.pair(&p, r.vector())?.is_negative() {
                in_support[i] = true;
                grew = true;
            }
        }
        if grew {
            continue;
        }
        if coefficients.iter().any(|c| c.is_negative()) {
            return Err(Error::Internal(
                "negative coefficient at a stable support; root set violates the \
                 decomposition hypotheses"
                    .into(),
            ));
        }
        return Ok(ZariskiDecomposition { positive: p, coefficients, support });
    }
}

/// Stable-exceptional membership test for alpha against a negative class:
/// decompose ell and return whether pair(alpha, ell) > 0.
pub fn se_membership(lat: &Lattice, alpha: &[Q], ell: &[Q], roots: &[Root]) -> Result<bool> {
    let sq = lat.square(ell)?;
    if !sq.is_negative() {
        return Err(Error::NotARoot(sq.to_string()));
    }
    let dec = zariski_decompose(lat, ell, roots)?;
    let pa_ell = lat.pair(alpha, ell)?;
    let pa_p = lat.pair(alpha, &dec.positive)?;
    if !pa_p.is_negative() {
        // pair(alpha, ell) = pair(alpha, P) + pair(alpha, N) >= pair(alpha, N)
        let pa_n = lat.pair(alpha, &dec.negative(roots))?;
        if pa_ell < pa_n {
            return Err(Error::Internal("decomposition additivity violated".into()));
        }
    }
    Ok(pa_ell.is_positive())
}
