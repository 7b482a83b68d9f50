//! Dirichlet fundamental domains for finitely generated isometry group
//! actions on the positive cone, and the exact rank-2 dichotomy.
//!
//! The domain at a base point x0 is cut out by one halfspace per group
//! element gamma, with normal gamma^{-1} x0 - x0: the locus where x0 is at
//! least as close to x as to gamma(x). Redundant halfspaces are eliminated
//! exactly (rank <= 3) by Fourier-Motzkin feasibility; for infinite groups
//! the stabilization of the active set under radius growth is reported as
//! a heuristic certificate, never as a proof.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::mat::{primitive_scale, sub_qvec, z_to_q, QVec, ZMat, ZVec, Q, Z};

/// All distinct products of at most `radius` generators and inverses,
/// identity excluded, in BFS order with lexicographic matrix tie-break.
#[derive(Clone, Debug)]
pub struct GroupBall {
    pub generators: Vec<ZMat>,
    pub radius: usize,
    pub elements: Vec<ZMat>,
}

/// Find a small integral vector of positive square, for positivity checks.
pub fn find_positive_vector(lat: &Lattice) -> Result<ZVec> {
    let n = lat.rank();
    for radius in 1..=6i64 {
        let mut coords = vec![-radius; n];
        loop {
            let v: ZVec = coords.iter().map(|&c| Z::from(c)).collect();
            if lat.pair_zz(&v, &v)?.is_positive() {
                return Ok(v);
            }
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                coords[i] += 1;
                if coords[i] <= radius {
                    break;
                }
                coords[i] = -radius;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    Err(Error::Internal("no small positive vector found".into()))
}

pub fn ball(lat: &Lattice, generators: &[ZMat], radius: usize) -> Result<GroupBall> {
    let h0 = find_positive_vector(lat)?;
    let h0q = z_to_q(&h0);
    let mut gens_with_inv: Vec<ZMat> = Vec::new();
    for g in generators {
        if !lat.is_isometry(g)? {
            return Err(Error::NotIsometry);
        }
        let image = g.mul_vec(&h0);
        if !lat.pair(&z_to_q(&image), &h0q)?.is_positive() {
            return Err(Error::NotPositive(
                "generator exchanges positive-cone components".into(),
            ));
        }
        let inv = g.unimodular_inverse().ok_or(Error::NotIsometry)?;
        for m in [g.clone(), inv] {
            if !gens_with_inv.contains(&m) {
                gens_with_inv.push(m);
            }
        }
    }
    gens_with_inv.sort();
    let identity = ZMat::identity(lat.rank());
    let mut seen: std::collections::HashSet<ZMat> = std::collections::HashSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    let mut elements: Vec<ZMat> = Vec::new();
    for _ in 0..radius {
        let mut next_frontier: Vec<ZMat> = Vec::new();
        for w in &frontier {
            for g in &gens_with_inv {
                let prod = g.mul(w);
                if seen.insert(prod.clone()) {
                    next_frontier.push(prod);
                }
            }
        }
        next_frontier.sort();
        elements.extend(next_frontier.iter().cloned());
        frontier = next_frontier;
    }
    Ok(GroupBall { generators: generators.to_vec(), radius, elements })
}

#[derive(Clone, Debug)]
pub struct DirichletDomain {
    pub base: QVec,
    /// One halfspace per ball element: (element index, inward normal).
    pub halfspaces: Vec<(usize, QVec)>,
    /// Indices into `halfspaces` that survive redundancy elimination.
    pub active: Vec<usize>,
    /// Whether redundancy elimination was performed (rank <= 3 only).
    pub reduced: bool,
    /// Whether growing the ball radius by one left the active set unchanged.
    pub stabilized: bool,
}

impl DirichletDomain {
    pub fn active_normals(&self) -> Vec<&QVec> {
        self.active.iter().map(|&i| &self.halfspaces[i].1).collect()
    }

    /// Classify a point against the domain (closure semantics).
    pub fn locate(&self, lat: &Lattice, x: &[Q]) -> Result<crate::cones::Location> {
        let mut boundary = false;
        for &i in &self.active {
            let p = lat.pair(&self.halfspaces[i].1, x)?;
            if p.is_negative() {
                return Ok(crate::cones::Location::Outside);
            }
            if p.is_zero() {
                boundary = true;
            }
        }
        Ok(if boundary {
            crate::cones::Location::Boundary
        } else {
            crate::cones::Location::Interior
        })
    }
}

pub fn dirichlet_domain(lat: &Lattice, x0: &[Q], group: &GroupBall) -> Result<DirichletDomain> {
    let domain = dirichlet_once(lat, x0, &group.elements)?;
    // Stabilization probe: one more radius step.
    let bigger = ball(lat, &group.generators, group.radius + 1)?;
    let probe = dirichlet_once(lat, x0, &bigger.elements)?;
    let key = |d: &DirichletDomain| -> Vec<ZVec> {
        let mut v: Vec<ZVec> = d
            .active
            .iter()
            .map(|&i| primitive_scale(&d.halfspaces[i].1))
            .collect();
        v.sort();
        v
    };
    let stabilized = key(&domain) == key(&probe);
    Ok(DirichletDomain { stabilized, ..domain })
}

fn dirichlet_once(lat: &Lattice, x0: &[Q], elements: &[ZMat]) -> Result<DirichletDomain> {
    let sq = lat.square(x0)?;
    if !sq.is_positive() {
        return Err(Error::NotPositive(format!("base square {sq}")));
    }
    let mut halfspaces: Vec<(usize, QVec)> = Vec::new();
    for (idx, g) in elements.iter().enumerate() {
        let inv = g.unimodular_inverse().ok_or(Error::NotIsometry)?;
        let moved = inv.to_qmat().mul_vec(x0);
        let normal = sub_qvec(&moved, x0);
        if normal.iter().all(|x| x.is_zero()) {
            return Err(Error::FixedBasePoint);
        }
        halfspaces.push((idx, normal));
    }
    // Drop proportional duplicates (same oriented ray of normals).
    let mut kept: Vec<(usize, QVec)> = Vec::new();
    let mut kept_prim: Vec<ZVec> = Vec::new();
    for (idx, n) in halfspaces {
        let p = primitive_scale(&n);
        if kept_prim.contains(&p) {
            continue;
        }
        kept_prim.push(p);
        kept.push((idx, n));
    }
    let halfspaces = kept;
    let (active, reduced) = if lat.rank() <= 3 {
        (eliminate_redundant(lat, &halfspaces)?, true)
    } else {
        ((0..halfspaces.len()).collect(), false)
    };
    // x0 must be strictly inside every active halfspace.
    for &i in &active {
        if !lat.pair(&halfspaces[i].1, x0)?.is_positive() {
            return Err(Error::Internal("base point on an active bisector".into()));
        }
    }
    Ok(DirichletDomain { base: x0.to_vec(), halfspaces, active, reduced, stabilized: false })
}

/// Exact redundancy elimination: halfspace i is redundant when the system
/// {pair(n_j, x) >= 0 for j != i, pair(n_i, x) <= -1} is infeasible.
fn eliminate_redundant(lat: &Lattice, halfspaces: &[(usize, QVec)]) -> Result<Vec<usize>> {
    let mut active = Vec::new();
    for i in 0..halfspaces.len() {
        let mut rows: Vec<(QVec, Q)> = Vec::new();
        for (j, (_, n)) in halfspaces.iter().enumerate() {
            let covec = lat.to_dual(n)?;
            if j == i {
                let neg: QVec = covec.iter().map(|x| -x).collect();
                rows.push((neg, Q::one()));
            } else {
                rows.push((covec, Q::zero()));
            }
        }
        if fourier_motzkin_feasible(rows) {
            active.push(i);
        }
    }
    Ok(active)
}

/// Feasibility of {a^T x >= b} by Fourier-Motzkin elimination.
fn fourier_motzkin_feasible(mut rows: Vec<(QVec, Q)>) -> bool {
    let dim = rows.first().map_or(0, |(a, _)| a.len());
    for var in (0..dim).rev() {
        let mut pos: Vec<(QVec, Q)> = Vec::new();
        let mut neg: Vec<(QVec, Q)> = Vec::new();
        let mut zero: Vec<(QVec, Q)> = Vec::new();
        for (a, b) in rows {
            let c = a[var].clone();
            if c.is_positive() {
                pos.push((a, b));
            } else if c.is_negative() {
                neg.push((a, b));
            } else {
                zero.push((a, b));
            }
        }
        let mut next = zero;
        // pos: x_var >= (b - rest)/c ; neg: x_var <= (b - rest)/c.
        // Combine every (pos, neg) pair: lower bound <= upper bound.
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                let cp = ap[var].clone();
                let cn = -an[var].clone();
                // cn * (ap - cp e) + cp * (an + cn e) constraint on the rest:
                let mut a = vec![Q::zero(); dim];
                for t in 0..dim {
                    if t == var {
                        continue;
                    }
                    a[t] = &cn * &ap[t] + &cp * &an[t];
                }
                let b = &cn * bp + &cp * bn;
                next.push((a, b));
            }
        }
        rows = dedup_rows(next);
        if rows.is_empty() {
            return true;
        }
    }
    rows.iter().all(|(_, b)| !b.is_positive())
}

fn dedup_rows(rows: Vec<(QVec, Q)>) -> Vec<(QVec, Q)> {
    let mut seen: Vec<(ZVec, Q)> = Vec::new();
    let mut out = Vec::new();
    for (a, b) in rows {
        if a.iter().all(|x| x.is_zero()) && !b.is_positive() {
            continue; // trivially satisfied
        }
        let mut key = primitive_scale(&a);
        let mut scale = Q::one();
        // Normalize b by the scaling used for a, so identical constraints dedup.
        if let Some(pos) = a.iter().position(|x| !x.is_zero()) {
            scale = &a[pos] / Q::from_integer(key[pos].clone());
            if scale.is_zero() {
                scale = Q::one();
            }
        } else {
            key = Vec::new();
        }
        let nb = if scale.is_zero() { b.clone() } else { &b / &scale };
        if seen.iter().any(|(k, kb)| *k == key && *kb == nb) {
            continue;
        }
        seen.push((key, nb));
        out.push((a, b));
    }
    out
}

/// Per-sample tiling report: which ball translates carry the sample into
/// the domain.
#[derive(Clone, Debug)]
pub struct TilesReport {
    pub samples: usize,
    pub covered: usize,
    pub double_interior: usize,
    pub uncovered: Vec<usize>,
}

pub fn tiles(
    lat: &Lattice,
    domain: &DirichletDomain,
    group: &GroupBall,
    samples: &[QVec],
) -> Result<TilesReport> {
    let identity = ZMat::identity(lat.rank());
    let mut all: Vec<&ZMat> = vec![&identity];
    all.extend(group.elements.iter());
    let mut covered = 0usize;
    let mut double_interior = 0usize;
    let mut uncovered = Vec::new();
    for (si, s) in samples.iter().enumerate() {
        let mut interior_hits = 0usize;
        let mut any_hit = false;
        for g in &all {
            let image = g.to_qmat().mul_vec(s);
            match domain.locate(lat, &image)? {
                crate::cones::Location::Interior => {
                    interior_hits += 1;
                    any_hit = true;
                }
                crate::cones::Location::Boundary => {
                    any_hit = true;
                }
                crate::cones::Location::Outside => {}
            }
        }
        if any_hit {
            covered += 1;
        } else {
            uncovered.push(si);
        }
        if interior_hits > 1 {
            double_interior += interior_hits - 1;
        }
    }
    Ok(TilesReport { samples: samples.len(), covered, double_interior, uncovered })
}

/// A quadratic surd a + b * sqrt(d), d a positive non-square integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub rational: Q,
    pub coefficient: Q,
    pub radicand: Z,
}

#[derive(Clone, Debug)]
pub enum Rank2Rays {
    /// Both isotropic rays are rational, as primitive integer vectors.
    Rational(ZVec, ZVec),
    /// Both rays are irrational: slopes x/y of the two rays.
    Irrational(Surd, Surd),
}

impl Rank2Rays {
    pub fn is_rational(&self) -> bool {
        matches!(self, Rank2Rays::Rational(_, _))
    }
}

fn check_rank2(lat: &Lattice) -> Result<()> {
    if lat.rank() != 2 || lat.signature() != (1, 1) {
        let (p, m) = lat.signature();
        return Err(Error::WrongSignature {
            expected: "(1, 1)".into(),
            got: format!("({p}, {m})"),
        });
    }
    Ok(())
}

/// Largest square divisor split: n = s^2 * d with d squarefree.
fn square_part(n: &Z) -> (Z, Z) {
    let mut d = n.clone();
    let mut s = Z::one();
    let mut p = Z::from(2);
    while &p * &p <= d {
        let p2 = &p * &p;
        while (&d % &p2).is_zero() {
            d /= &p2;
            s *= &p;
        }
        p += Z::one();
    }
    (s, d)
}

/// Solve pair(x, x) = 0 on a rank-2 lattice of signature (1,1): the two
/// boundary rays of the positive cone, exactly.
pub fn rank2_boundary_rays(lat: &Lattice) -> Result<Rank2Rays> {
    check_rank2(lat)?;
    let g = lat.gram();
    let a = g[(0, 0)].clone();
    let b = g[(0, 1)].clone();
    let c = g[(1, 1)].clone();
    // q(x, y) = a x^2 + 2b xy + c y^2
    if a.is_zero() {
        // rays (1, 0) and (-c, 2b)
        let r2 = primitive_scale(&[-c, Q::from_integer(Z::from(2)) * b]);
        return Ok(Rank2Rays::Rational(vec![Z::one(), Z::zero()], orient(r2)));
    }
    let disc = &b * &b - &a * &c;
    debug_assert!(disc.is_positive());
    // slope t = x / y = (-b ± sqrt(disc)) / a
    let num = disc.numer() * disc.denom();
    let s_floor = num.sqrt();
    if &s_floor * &s_floor == num {
        // disc = (s/denom)^2: rational rays
        let sqrt_disc = Q::new(s_floor, disc.denom().clone());
        let t1 = (-&b + &sqrt_disc) / &a;
        let t2 = (-&b - &sqrt_disc) / &a;
        let r1 = orient(primitive_scale(&[t1, Q::one()]));
        let r2 = orient(primitive_scale(&[t2, Q::one()]));
        Ok(Rank2Rays::Rational(r1, r2))
    } else {
        let (s, d) = square_part(&num);
        // sqrt(disc) = s * sqrt(d) / denom(disc)
        let coeff = Q::new(s, disc.denom().clone());
        let t_add = -&b / &a;
        let t_coeff = &coeff / &a;
        Ok(Rank2Rays::Irrational(
            Surd { rational: t_add.clone(), coefficient: t_coeff.clone(), radicand: d.clone() },
            Surd { rational: t_add, coefficient: -t_coeff, radicand: d },
        ))
    }
}

fn orient(v: ZVec) -> ZVec {
    if crate::mat::lex_positive(&z_to_q(&v)) {
        v
    } else {
        v.iter().map(|x| -x).collect()
    }
}

/// An integral isometry of infinite order preserving each irrational
/// boundary ray and the positive component: det 1, trace > 2, found by
/// bounded search over integer matrices, minimal trace first.
pub fn rank2_isometry_generator(lat: &Lattice, entry_bound: i64) -> Result<ZMat> {
    check_rank2(lat)?;
    match rank2_boundary_rays(lat)? {
        Rank2Rays::Rational(_, _) => return Err(Error::RationalRays),
        Rank2Rays::Irrational(_, _) => {}
    }
    let mut best: Option<(Z, ZMat)> = None;
    for m00 in -entry_bound..=entry_bound {
        for m11 in -entry_bound..=entry_bound {
            let trace = m00 + m11;
            if trace <= 2 {
                continue;
            }
            if let Some((bt, _)) = &best {
                if Z::from(trace) > *bt {
                    continue;
                }
            }
            for m01 in -entry_bound..=entry_bound {
                for m10 in -entry_bound..=entry_bound {
                    if m00 * m11 - m01 * m10 != 1 {
                        continue;
                    }
                    let m = ZMat::from_i64(&[&[m00, m01], &[m10, m11]]);
                    if !lat.is_isometry(&m).unwrap_or(false) {
                        continue;
                    }
                    let cand = (Z::from(trace), m);
                    let better = match &best {
                        None => true,
                        Some(b) => cand < *b,
                    };
                    if better {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    best.map(|(_, m)| m)
        .ok_or(Error::SearchExhausted(entry_bound as u64))
}
