//! Integral lattices with an exact rational pairing.
//!
//! A lattice is a free Z-module of finite rank with a symmetric
//! nondegenerate Gram matrix. Vectors are coordinates in the fixed basis;
//! sublattices carry their embedding matrix so every result is
//! reproducible from the serialized data alone.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mat::{gcd_vec, z_to_q, QMat, QVec, ZMat, ZVec, Q, Z};

#[derive(Clone, Debug)]
pub struct Lattice {
    rank: usize,
    gram: QMat,
    label: Option<String>,
}

/// A sublattice presented by its embedding into the ambient lattice.
/// Columns of `basis` are the coordinates of the sublattice basis.
#[derive(Clone, Debug)]
pub struct Sublattice {
    pub basis: ZMat,
    pub gram: QMat,
}

impl Lattice {
    pub fn new(gram: QMat, label: Option<String>) -> Result<Self> {
        if gram.rows != gram.cols {
            return Err(Error::DimensionMismatch { expected: gram.rows, got: gram.cols });
        }
        let n = gram.rows;
        for i in 0..n {
            for j in 0..i {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        if gram.det().is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(Lattice { rank: n, gram, label })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Lattice::new(QMat::from_i64(rows), None)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &QMat {
        &self.gram
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn is_integral(&self) -> bool {
        self.gram.is_integral()
    }

    fn check_dim(&self, v: &[Q]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: v.len() });
        }
        Ok(())
    }

    /// The bilinear pairing u^T G v.
    pub fn pair(&self, u: &[Q], v: &[Q]) -> Result<Q> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        let gv = self.gram.mul_vec(v);
        Ok(u.iter().zip(&gv).map(|(a, b)| a * b).sum())
    }

    pub fn pair_zz(&self, u: &[Z], v: &[Z]) -> Result<Q> {
        self.pair(&z_to_q(u), &z_to_q(v))
    }

    pub fn square(&self, v: &[Q]) -> Result<Q> {
        self.pair(v, v)
    }

    /// Signature (n_plus, n_minus) by exact congruence diagonalization.
    pub fn signature(&self) -> (usize, usize) {
        let (p, m, z) = self.gram.symmetric_signature();
        debug_assert_eq!(z, 0);
        (p, m)
    }

    /// Pairing-coordinates of a class: c maps to the vector of values
    /// (pair(c, basis_i))_i, i.e. gram * c.
    pub fn to_dual(&self, c: &[Q]) -> Result<QVec> {
        self.check_dim(c)?;
        Ok(self.gram.mul_vec(c))
    }

    /// Inverse of `to_dual`: recover the class from its pairing values.
    pub fn from_dual(&self, c: &[Q]) -> Result<QVec> {
        self.check_dim(c)?;
        let inv = self.gram.inverse().ok_or(Error::Degenerate)?;
        Ok(inv.mul_vec(c))
    }

    /// gcd of the pairings of v with the whole lattice. Requires an integral
    /// gram and a nonzero vector.
    pub fn divisibility(&self, v: &[Z]) -> Result<Z> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: v.len() });
        }
        if !self.is_integral() {
            return Err(Error::NotIntegralGram);
        }
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector);
        }
        let gv = self.to_dual(&z_to_q(v))?;
        let ints: ZVec = gv.iter().map(|x| x.to_integer()).collect();
        Ok(gcd_vec(&ints))
    }

    pub fn is_primitive(&self, v: &[Z]) -> bool {
        gcd_vec(v).is_one()
    }

    /// Saturated orthogonal complement of a set of vectors, with the induced
    /// gram. Empty set gives the whole lattice.
    pub fn orthogonal_complement(&self, span: &[ZVec]) -> Result<Sublattice> {
        for s in span {
            if s.len() != self.rank {
                return Err(Error::DimensionMismatch { expected: self.rank, got: s.len() });
            }
        }
        if span.is_empty() {
            let basis = ZMat::identity(self.rank);
            return Ok(Sublattice { basis, gram: self.gram.clone() });
        }
        // Rows: the functionals x -> pair(s, x), scaled to integer entries.
        let mut rows = Vec::new();
        for s in span {
            let f = self.to_dual(&z_to_q(s))?;
            let denom_lcm = f
                .iter()
                .fold(Z::one(), |l, x| num::integer::lcm(l, x.denom().clone()));
            rows.push(
                f.iter()
                    .map(|x| (x * Q::from_integer(denom_lcm.clone())).to_integer())
                    .collect::<ZVec>(),
            );
        }
        let a = ZMat::from_rows(rows);
        let basis = a.int_kernel();
        let bq = basis.to_qmat();
        let gram = bq.transpose().mul(&self.gram).mul(&bq);
        Ok(Sublattice { basis, gram })
    }

    /// True iff M^T G M = G and det M = ±1.
    pub fn is_isometry(&self, m: &ZMat) -> Result<bool> {
        if m.rows != self.rank || m.cols != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: m.rows.max(m.cols) });
        }
        let mq = m.to_qmat();
        if mq.transpose().mul(&self.gram).mul(&mq) != self.gram {
            return Ok(false);
        }
        Ok(m.det().abs().is_one())
    }

    /// Apply an integer matrix to an integer vector, checking dimensions.
    pub fn apply(&self, m: &ZMat, v: &[Z]) -> Result<ZVec> {
        if m.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: m.cols, got: v.len() });
        }
        Ok(m.mul_vec(v))
    }
}


#[cfg(test)]
pub use tests::{elliptic_k3, quartic_two_lines};
