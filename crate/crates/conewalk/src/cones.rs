//! Rational polyhedral cones inside the positive cone: membership, the
//! fundamental exceptional chamber as halfspaces, wall intersection tests,
//! and finite subdivision by walls.
//!
//! Cones are salient and (when generator-backed) full-dimensional; the
//! chamber logic is pure sign bookkeeping over exact rationals.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::mat::{neg_qvec, primitive_scale, z_to_q, QMat, QVec, Q};
use crate::roots::Root;

/// A halfspace constraint pair(normal, x) >= 0 (or > 0 when strict).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: QVec,
    pub strict: bool,
}

/// Which description of a cone is authoritative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Authority {
    Generators,
    Halfspaces,
    Both,
}

#[derive(Clone, Debug)]
pub struct Cone {
    pub generators: Vec<QVec>,
    pub halfspaces: Vec<Halfspace>,
    /// Reference positive vector selecting the positive-cone component.
    pub reference: QVec,
    pub authority: Authority,
    /// When set, membership additionally requires being in the positive
    /// cone component of the reference vector (q(x) > 0, pair(x, h) > 0).
    pub positive_marker: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

/// Maximum rank for generator-to-halfspace conversion and subdivision.
pub const RANK_CAP: usize = 4;

impl Cone {
    pub fn from_generators(lat: &Lattice, generators: Vec<QVec>, reference: QVec) -> Result<Cone> {
        check_reference(lat, &reference)?;
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        for g in &generators {
            if g.len() != lat.rank() {
                return Err(Error::DimensionMismatch { expected: lat.rank(), got: g.len() });
            }
        }
        Ok(Cone {
            generators,
            halfspaces: Vec::new(),
            reference,
            authority: Authority::Generators,
            positive_marker: false,
        })
    }

    pub fn from_halfspaces(lat: &Lattice, halfspaces: Vec<Halfspace>, reference: QVec) -> Result<Cone> {
        check_reference(lat, &reference)?;
        for h in &halfspaces {
            if h.normal.len() != lat.rank() {
                return Err(Error::DimensionMismatch { expected: lat.rank(), got: h.normal.len() });
            }
        }
        Ok(Cone {
            generators: Vec::new(),
            halfspaces,
            reference,
            authority: Authority::Halfspaces,
            positive_marker: false,
        })
    }

    /// Halfspace description, computing it on demand from generators
    /// (rank <= 4, full-dimensional, salient).
    pub fn halfspace_description(&self, lat: &Lattice) -> Result<Vec<Halfspace>> {
        match self.authority {
            Authority::Halfspaces | Authority::Both => Ok(self.halfspaces.clone()),
            Authority::Generators => {
                let hs = facet_halfspaces(lat, &self.generators)?;
                Ok(hs)
            }
        }
    }

    /// A point in the relative interior: the sum of the generators.
    pub fn interior_witness(&self) -> Result<QVec> {
        if self.generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        let n = self.generators[0].len();
        let mut w = vec![Q::zero(); n];
        for g in &self.generators {
            w = crate::mat::add_qvec(&w, g);
        }
        Ok(w)
    }
}

fn check_reference(lat: &Lattice, h: &[Q]) -> Result<()> {
    let sq = lat.square(h)?;
    if !sq.is_positive() {
        return Err(Error::NotPositive(format!("reference square {sq}")));
    }
    Ok(())
}

/// Facet halfspaces of a full-dimensional salient cone from its generators.
/// Normals are primitive, oriented inward.
pub fn facet_halfspaces(lat: &Lattice, gens: &[QVec]) -> Result<Vec<Halfspace>> {
    let d = lat.rank();
    if d > RANK_CAP {
        return Err(Error::RankBound(d, RANK_CAP));
    }
    if gens.is_empty() {
        return Err(Error::NoGenerators);
    }
    // Full-dimensionality.
    let span = QMat::from_rows(gens.to_vec());
    if span.rank() < d {
        return Err(Error::Unsupported(
            "halfspace description of a non-full-dimensional cone".into(),
        ));
    }
    if d == 1 {
        // A single ray: the halfspace is the pairing functional against it.
        let g = &gens[0];
        let n = z_to_q(&primitive_scale(g));
        return Ok(vec![Halfspace { normal: n, strict: false }]);
    }
    let mut normals: Vec<Vec<crate::mat::Z>> = Vec::new();
    // Every facet hyperplane is spanned by d-1 of the generators.
    for subset in subsets_of_size(gens.len(), d - 1) {
        let rows: Vec<QVec> = subset
            .iter()
            .map(|&i| lat.to_dual(&gens[i]))
            .collect::<Result<_>>()?;
        let a = QMat::from_rows(rows);
        let ker = a.kernel();
        if ker.len() != 1 {
            continue; // subset does not span a hyperplane
        }
        let mut n = ker[0].clone();
        // Orient: all generators on the nonnegative side.
        let mut pos = false;
        let mut neg = false;
        for g in gens {
            let p = lat.pair(&n, g)?;
            if p.is_positive() {
                pos = true;
            } else if p.is_negative() {
                neg = true;
            }
        }
        if pos && neg {
            continue; // hyperplane cuts the cone: not a facet
        }
        if neg {
            n = neg_qvec(&n);
        }
        if !pos && !neg {
            continue; // all generators on the hyperplane: cone not full-dim
        }
        let prim = primitive_scale(&n);
        if !normals.contains(&prim) {
            normals.push(prim);
        }
    }
    if normals.is_empty() {
        return Err(Error::NotSalient);
    }
    // Salience check: no generator's negation satisfies all halfspaces.
    for g in gens {
        let ng = neg_qvec(g);
        let inside = normals
            .iter()
            .map(|n| lat.pair(&z_to_q(n), &ng))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|p| !p.is_negative());
        let nonzero = g.iter().any(|x| !x.is_zero());
        if inside && nonzero {
            return Err(Error::NotSalient);
        }
    }
    normals.sort();
    Ok(normals
        .into_iter()
        .map(|n| Halfspace { normal: z_to_q(&n), strict: false })
        .collect())
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Exact membership classification, relative to the closure; strict
/// halfspaces only affect the positive-cone marker handling upstream.
pub fn contains(lat: &Lattice, cone: &Cone, x: &[Q]) -> Result<Location> {
    if x.len() != lat.rank() {
        return Err(Error::DimensionMismatch { expected: lat.rank(), got: x.len() });
    }
    let mut on_boundary = false;
    if cone.positive_marker {
        let sq = lat.square(x)?;
        let ph = lat.pair(x, &cone.reference)?;
        if sq.is_negative() || ph.is_negative() || (sq.is_zero() && ph.is_zero()) {
            return Ok(Location::Outside);
        }
        if sq.is_zero() || ph.is_zero() {
            on_boundary = true;
        }
    }
    let halfspaces = cone.halfspace_description(lat)?;
    for hs in &halfspaces {
        let p = lat.pair(&hs.normal, x)?;
        if p.is_negative() {
            return Ok(Location::Outside);
        }
        if p.is_zero() {
            on_boundary = true;
        }
    }
    Ok(if on_boundary { Location::Boundary } else { Location::Interior })
}

/// The fundamental exceptional chamber of a root set: the classes pairing
/// positively with every (sign-normalized) root, inside the positive cone.
/// With no roots this is the positive cone itself.
pub fn fundamental_exceptional_chamber(
    lat: &Lattice,
    roots: &[Root],
    reference: &[Q],
) -> Result<Cone> {
    check_reference(lat, reference)?;
    let normed = crate::roots::normalize_roots(lat, roots, reference)?;
    let halfspaces = normed
        .iter()
        .map(|r| Halfspace { normal: r.vector().to_vec(), strict: true })
        .collect();
    Ok(Cone {
        generators: Vec::new(),
        halfspaces,
        reference: reference.to_vec(),
        authority: Authority::Halfspaces,
        positive_marker: true,
    })
}

/// True iff the wall v^perp meets the cone away from the tip: the pairing
/// functional of v changes sign or vanishes on some generator.
pub fn wall_meets_cone(lat: &Lattice, v: &[Q], cone: &Cone) -> Result<bool> {
    if cone.generators.is_empty() {
        return Err(Error::NoGenerators);
    }
    let mut pos = false;
    let mut neg = false;
    for g in &cone.generators {
        let p = lat.pair(v, g)?;
        if p.is_zero() {
            return Ok(true);
        }
        if p.is_positive() {
            pos = true;
        } else {
            neg = true;
        }
        if pos && neg {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A piece of a subdivision: the subcone together with the sign vector of
/// the wall functionals on its interior.
#[derive(Clone, Debug)]
pub struct Piece {
    pub cone: Cone,
    pub signs: Vec<i8>,
}

/// Subdivide a generator-backed cone by the walls of the given roots into
/// closed subcones on which every wall functional has constant sign.
/// Pieces are ordered lexicographically by sign vector.
pub fn subdivide(lat: &Lattice, cone: &Cone, walls: &[Root]) -> Result<Vec<Piece>> {
    if lat.rank() > RANK_CAP {
        return Err(Error::RankBound(lat.rank(), RANK_CAP));
    }
    if cone.generators.is_empty() {
        return Err(Error::NoGenerators);
    }
    let mut pieces: Vec<Vec<QVec>> = vec![cone.generators.clone()];
    for w in walls {
        if !wall_meets_cone(lat, w.vector(), cone)? {
            continue;
        }
        let mut next: Vec<Vec<QVec>> = Vec::new();
        for gens in pieces {
            let (split_pos, split_neg) = split_by_wall(lat, &gens, w.vector())?;
            match (split_pos, split_neg) {
                (Some(p), Some(n)) => {
                    next.push(p);
                    next.push(n);
                }
                (Some(p), None) => next.push(p),
                (None, Some(n)) => next.push(n),
                (None, None) => {}
            }
        }
        pieces = next;
    }
    let mut out: Vec<Piece> = Vec::new();
    for gens in pieces {
        let gens = canonical_generators(&gens);
        let sub = Cone {
            generators: gens,
            halfspaces: Vec::new(),
            reference: cone.reference.clone(),
            authority: Authority::Generators,
            positive_marker: cone.positive_marker,
        };
        let witness = sub.interior_witness()?;
        let signs = walls
            .iter()
            .map(|w| {
                let p = lat.pair(w.vector(), &witness)?;
                Ok(if p.is_positive() {
                    1i8
                } else if p.is_negative() {
                    -1
                } else {
                    0
                })
            })
            .collect::<Result<Vec<i8>>>()?;
        out.push(Piece { cone: sub, signs });
    }
    out.sort_by(|a, b| a.signs.cmp(&b.signs));
    Ok(out)
}

/// Split a generated cone along a wall. Returns the nonnegative-side and
/// nonpositive-side pieces (None when the cone lies entirely on one side,
/// in which case the other slot carries the whole cone).
fn split_by_wall(
    lat: &Lattice,
    gens: &[QVec],
    wall: &[Q],
) -> Result<(Option<Vec<QVec>>, Option<Vec<QVec>>)> {
    let pairings: Vec<Q> = gens
        .iter()
        .map(|g| lat.pair(wall, g))
        .collect::<Result<_>>()?;
    let has_pos = pairings.iter().any(|p| p.is_positive());
    let has_neg = pairings.iter().any(|p| p.is_negative());
    if !has_neg {
        return Ok((Some(gens.to_vec()), None));
    }
    if !has_pos {
        return Ok((None, Some(gens.to_vec())));
    }
    // Double-description step: combinations of (+,-) pairs land on the wall.
    let mut on_wall: Vec<QVec> = gens
        .iter()
        .zip(&pairings)
        .filter(|(_, p)| p.is_zero())
        .map(|(g, _)| g.clone())
        .collect();
    for (gi, pi) in gens.iter().zip(&pairings) {
        if !pi.is_positive() {
            continue;
        }
        for (gj, pj) in gens.iter().zip(&pairings) {
            if !pj.is_negative() {
                continue;
            }
            // pi * gj - pj * gi has pairing 0 with the wall
            let comb = crate::mat::sub_qvec(
                &crate::mat::scale_qvec(pi, gj),
                &crate::mat::scale_qvec(pj, gi),
            );
            on_wall.push(comb);
        }
    }
    let mut pos_side: Vec<QVec> = gens
        .iter()
        .zip(&pairings)
        .filter(|(_, p)| p.is_positive())
        .map(|(g, _)| g.clone())
        .collect();
    pos_side.extend(on_wall.iter().cloned());
    let mut neg_side: Vec<QVec> = gens
        .iter()
        .zip(&pairings)
        .filter(|(_, p)| p.is_negative())
        .map(|(g, _)| g.clone())
        .collect();
    neg_side.extend(on_wall);
    Ok((Some(pos_side), Some(neg_side)))
}

fn canonical_generators(gens: &[QVec]) -> Vec<QVec> {
    let mut prim: Vec<Vec<crate::mat::Z>> = gens
        .iter()
        .map(|g| primitive_scale(g))
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .collect();
    prim.sort();
    prim.dedup();
    prim.iter().map(|g| z_to_q(g)).collect()
}
