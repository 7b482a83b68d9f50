//! Reflections in negative classes and Weyl chamber walks.
//!
//! A root is a class e with pair(e, e) < 0. The reflection in e is
//!     x  |->  x - 2 pair(e, x) / pair(e, e) * e,
//! an involution fixing e^perp and preserving the pairing. Walking a
//! positive class into the fundamental chamber of a finite root set yields
//! the word of reflections crossed, and factoring an isometry g through the
//! walk gives the semidirect splitting g = w * b with b chamber-preserving.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::mat::{
    add_qvec, lex_positive, neg_qvec, primitive_scale, q_to_z, scale_qvec, z_to_q,
    QMat, QVec, ZMat, Q,
};

/// A class with strictly negative self-pairing, tagged with its square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    vector: QVec,
    square: Q,
}

impl Root {
    pub fn new(lat: &Lattice, v: QVec) -> Result<Self> {
        let square = lat.square(&v)?;
        if !square.is_negative() {
            return Err(Error::NotARoot(square.to_string()));
        }
        Ok(Root { vector: v, square })
    }

    pub fn vector(&self) -> &[Q] {
        &self.vector
    }

    pub fn square(&self) -> &Q {
        &self.square
    }

    /// Primitive integral representative on the same ray (same orientation).
    pub fn primitive(&self) -> Vec<crate::mat::Z> {
        primitive_scale(&self.vector)
    }
}

/// Matrix of the reflection in e, columns = images of the basis vectors.
pub fn reflection(lat: &Lattice, e: &[Q]) -> Result<QMat> {
    let ee = lat.square(e)?;
    if ee.is_zero() {
        return Err(Error::Isotropic);
    }
    let n = lat.rank();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut basis = vec![Q::zero(); n];
        basis[j] = num::One::one();
        let c = Q::from_integer(crate::mat::zi(-2)) * lat.pair(e, &basis)? / ee.clone();
        cols.push(add_qvec(&basis, &scale_qvec(&c, e)));
    }
    Ok(QMat::from_cols(cols))
}

/// True iff the reflection in e maps every basis vector to an integer
/// vector. Requires an integral gram.
pub fn is_integral_reflection(lat: &Lattice, e: &[Q]) -> Result<bool> {
    if !lat.is_integral() {
        return Err(Error::NotIntegralGram);
    }
    Ok(reflection(lat, e)?.is_integral())
}

/// Sign-normalize roots against the reference positive vector h:
/// pair(e, h) >= 0, and lexicographically positive on the wall pair(e,h)=0.
pub fn normalize_roots(lat: &Lattice, roots: &[Root], h: &[Q]) -> Result<Vec<Root>> {
    let mut out = Vec::with_capacity(roots.len());
    for r in roots {
        let p = lat.pair(r.vector(), h)?;
        let flip = if p.is_zero() {
            !lex_positive(r.vector())
        } else {
            p.is_negative()
        };
        let v = if flip { neg_qvec(r.vector()) } else { r.vector().to_vec() };
        out.push(Root { vector: v, square: r.square().clone() });
    }
    Ok(out)
}

/// An ordered composition of reflections together with its matrix.
/// `roots[0]` is applied first: matrix = R(roots[k-1]) ... R(roots[0]).
#[derive(Clone, Debug)]
pub struct WeylWord {
    pub roots: Vec<Root>,
    pub matrix: QMat,
}

impl WeylWord {
    pub fn identity(rank: usize) -> Self {
        WeylWord { roots: Vec::new(), matrix: QMat::identity(rank) }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// The inverse word: same reflections in reverse order.
    pub fn inverse(&self, lat: &Lattice) -> Result<WeylWord> {
        let mut w = WeylWord::identity(lat.rank());
        for r in self.roots.iter().rev() {
            w = w.then(lat, r.clone())?;
        }
        Ok(w)
    }

    fn then(self, lat: &Lattice, r: Root) -> Result<WeylWord> {
        let m = reflection(lat, r.vector())?.mul(&self.matrix);
        let mut roots = self.roots;
        roots.push(r);
        Ok(WeylWord { roots, matrix: m })
    }
}

fn check_positive(lat: &Lattice, alpha: &[Q], h: &[Q]) -> Result<()> {
    let sq = lat.square(alpha)?;
    if !sq.is_positive() {
        return Err(Error::NotPositive(format!("square {sq}")));
    }
    let ph = lat.pair(alpha, h)?;
    if !ph.is_positive() {
        return Err(Error::NotPositive(format!("pairing {ph} with reference")));
    }
    Ok(())
}

/// Walk alpha into the closed fundamental chamber of the root set (the
/// chamber containing h). Returns the word of reflections applied and the
/// chamber representative; rep = word(alpha) exactly.
///
/// Tie-break: the violated root earliest in input order. A visited-set
/// guard skips moves that would revisit an earlier representative, which
/// keeps the walk deterministic and always terminating.
pub fn chamber_walk(
    lat: &Lattice,
    roots: &[Root],
    alpha: &[Q],
    h: &[Q],
) -> Result<(WeylWord, QVec)> {
    check_positive(lat, alpha, h)?;
    let roots = normalize_roots(lat, roots, h)?;
    let mut rep = alpha.to_vec();
    let mut word = WeylWord::identity(lat.rank());
    let mut visited: std::collections::HashSet<Vec<String>> = std::collections::HashSet::new();
    let key = |v: &[Q]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    visited.insert(key(&rep));
    loop {
        let mut moved = false;
        let mut any_violation = false;
        for r in &roots {
            if lat.pair(&rep, r.vector())?.is_negative() {
                any_violation = true;
                let m = reflection(lat, r.vector())?;
                let next = m.mul_vec(&rep);
                if visited.contains(&key(&next)) {
                    continue;
                }
                visited.insert(key(&next));
                rep = next;
                word = word.then(lat, r.clone())?;
                moved = true;
                break;
            }
        }
        if !any_violation {
            return Ok((word, rep));
        }
        if !moved {
            return Err(Error::WalkStuck);
        }
    }
}

/// A rational point strictly inside the fundamental chamber of the
/// (sign-normalized) root set: pair(x, e) > 0 for every root, q(x) > 0.
pub fn interior_point(lat: &Lattice, roots: &[Root], h: &[Q]) -> Result<QVec> {
    let roots = normalize_roots(lat, roots, h)?;
    let on_wall: Vec<&Root> = roots
        .iter()
        .filter(|r| lat.pair(h, r.vector()).map(|p| p.is_zero()).unwrap_or(false))
        .collect();
    if on_wall.is_empty() {
        return Ok(h.to_vec());
    }
    // Solve pair(y, e) = 1 on a maximal independent subset of the roots
    // through h, then nudge h by t*y with t small enough to keep every
    // inequality and q > 0. Dependent roots are checked, not solved for;
    // with nonnegative dependencies (root-system closures) they stay
    // positive automatically.
    let all_rows: Vec<QVec> = on_wall
        .iter()
        .map(|r| lat.to_dual(r.vector()))
        .collect::<Result<_>>()?;
    let mut rows: Vec<QVec> = Vec::new();
    for row in all_rows {
        let mut cand = rows.clone();
        cand.push(row);
        if QMat::from_rows(cand.clone()).rank() == cand.len() {
            rows = cand;
        }
    }
    let ones = vec![Q::from_integer(crate::mat::zi(1)); rows.len()];
    let a = QMat::from_rows(rows);
    let y = a.solve(&ones).ok_or(Error::NoInteriorPoint)?;
    let mut t = Q::from_integer(crate::mat::zi(1));
    for _ in 0..64 {
        let cand = add_qvec(h, &scale_qvec(&t, &y));
        let ok = lat.square(&cand)?.is_positive()
            && roots
                .iter()
                .map(|r| lat.pair(&cand, r.vector()))
                .collect::<Result<Vec<_>>>()?
                .iter()
                .all(|p| p.is_positive());
        if ok {
            return Ok(cand);
        }
        t /= Q::from_integer(crate::mat::zi(2));
    }
    Err(Error::NoInteriorPoint)
}

/// True iff m maps every root of the set to plus or minus a root of the set.
fn permutes_roots(_lat: &Lattice, roots: &[Root], m: &QMat) -> Result<bool> {
    let prims: Vec<Vec<crate::mat::Z>> = roots.iter().map(|r| r.primitive()).collect();
    for r in roots {
        let img = m.mul_vec(r.vector());
        let p = primitive_scale(&img);
        let pn: Vec<crate::mat::Z> = p.iter().map(|x| -x).collect();
        if !prims.iter().any(|q| *q == p || *q == pn) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Factor an isometry as g = w * b with w a Weyl word in the given roots
/// and b mapping the closed fundamental chamber to itself.
pub fn weyl_factorize(
    lat: &Lattice,
    roots: &[Root],
    g: &ZMat,
    h: &[Q],
) -> Result<(WeylWord, QMat)> {
    if !lat.is_isometry(g)? {
        return Err(Error::NotIsometry);
    }
    let gq = g.to_qmat();
    let roots = normalize_roots(lat, roots, h)?;
    if !permutes_roots(lat, &roots, &gq)? {
        return Err(Error::RootSetNotPreserved);
    }
    let alpha0 = interior_point(lat, &roots, h)?;
    let g_alpha = gq.mul_vec(&alpha0);
    if !lat.pair(&g_alpha, h)?.is_positive() {
        return Err(Error::NotPositive("isometry exchanges positive-cone components".into()));
    }
    let (walk_word, rep) = chamber_walk(lat, &roots, &g_alpha, h)?;
    // walk matrix W satisfies W(g alpha0) = rep in the chamber;
    // w := W^-1, b := W g, so that w b = g and b(alpha0) = rep.
    let w = walk_word.inverse(lat)?;
    let b = walk_word.matrix.mul(&gq);
    debug_assert_eq!(b.mul_vec(&alpha0), rep);
    // b must fix the closed chamber.
    for r in &roots {
        if lat.pair(&rep, r.vector())?.is_negative() {
            return Err(Error::Internal("factorization residue leaves the chamber".into()));
        }
    }
    Ok((w, b))
}

/// Check that every root pairs >= 0 against x (closed chamber membership).
pub fn in_closed_chamber(lat: &Lattice, roots: &[Root], x: &[Q]) -> Result<bool> {
    for r in roots {
        if lat.pair(x, r.vector())?.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience: build a root from integer coordinates.
pub fn root_i64(lat: &Lattice, coords: &[i64]) -> Result<Root> {
    Root::new(lat, crate::mat::qvec(coords))
}

/// The matrix of a word as an integer matrix, when integral.
pub fn word_matrix_integral(w: &WeylWord) -> Option<ZMat> {
    w.matrix.to_zmat()
}

/// Apply a rational matrix to integer coordinates.
pub fn apply_q(m: &QMat, v: &[crate::mat::Z]) -> QVec {
    m.mul_vec(&z_to_q(v))
}

/// Integral image of an integer vector under a rational matrix, if integral.
pub fn apply_integral(m: &QMat, v: &[crate::mat::Z]) -> Option<Vec<crate::mat::Z>> {
    q_to_z(&m.mul_vec(&z_to_q(v)))
}
