//! Bounded enumeration of primitive negative vectors relative to a
//! positive base point, and the cone-relative finiteness filter.
//!
//! The search fibers over the height k = pair(v, h) in [0, M]; on each
//! fiber the residual form on h^perp is negative definite and the
//! candidates fill an ellipsoid, enumerated by recursive coordinate
//! bounding with exact rational interval arithmetic.

use num::{One, Signed, Zero};

use crate::cones::{wall_meets_cone, Cone};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::mat::{
    ceil_sqrt_q, gcd_vec, int_interval, lex_positive, z_to_q, QMat, QVec, ZMat, ZVec, Q, Z,
};

#[derive(Clone, Debug)]
pub struct HuntQuery {
    /// Base point with pair(h, h) > 0.
    pub base: ZVec,
    /// Square bound B > 0: enumerate -B <= pair(v, v) < 0.
    pub square_bound: Q,
    /// Height bound M > 0 (M = 0 allowed: only the orthogonal fiber).
    pub height_bound: Q,
}

impl HuntQuery {
    pub fn new(lat: &Lattice, base: ZVec, square_bound: Q, height_bound: Q) -> Result<Self> {
        if !square_bound.is_positive() {
            return Err(Error::NonPositiveBound(square_bound.to_string()));
        }
        if height_bound.is_negative() {
            return Err(Error::NonPositiveBound(height_bound.to_string()));
        }
        let sq = lat.pair_zz(&base, &base)?;
        if !sq.is_positive() {
            return Err(Error::NotPositive(format!("base square {sq}")));
        }
        Ok(HuntQuery { base, square_bound, height_bound })
    }
}

fn validate_lattice(lat: &Lattice) -> Result<()> {
    if !lat.is_integral() {
        return Err(Error::NotIntegralGram);
    }
    let (p, m) = lat.signature();
    if p != 1 || m != lat.rank() - 1 {
        return Err(Error::WrongSignature {
            expected: format!("(1, {})", lat.rank() - 1),
            got: format!("({p}, {m})"),
        });
    }
    Ok(())
}

/// All primitive v with -B <= pair(v,v) < 0 and |pair(v,h)| <= M,
/// sign-normalized (pair(v,h) >= 0, lexicographic tie-break on the
/// orthogonal fiber) and canonically ordered by (height, square, coords).
pub fn enum_negative(lat: &Lattice, query: &HuntQuery) -> Result<Vec<ZVec>> {
    validate_lattice(lat)?;
    let _n = lat.rank();
    let h = &query.base;
    // Functional row: v -> pair(v, h), integral since the gram is.
    let hq = lat.to_dual(&z_to_q(h))?;
    let h_row: ZVec = hq.iter().map(|x| x.to_integer()).collect();
    let step = gcd_vec(&h_row);
    debug_assert!(step.is_positive());
    let a_row = ZMat::from_rows(vec![h_row.clone()]);
    // Saturated kernel of the height functional: the fiber direction lattice.
    let kernel = a_row.int_kernel();
    let kq = kernel.to_qmat();
    let fiber_gram = kq.transpose().mul(lat.gram()).mul(&kq);
    // On h^perp the form is negative definite: LDL^T of its negation.
    let m = kernel.cols;
    let mut neg_fiber = QMat::zero(m, m);
    for i in 0..m {
        for j in 0..m {
            neg_fiber[(i, j)] = -fiber_gram[(i, j)].clone();
        }
    }
    let (l_fac, d_fac) = neg_fiber
        .ldlt()
        .ok_or_else(|| Error::Internal("residual form not negative definite".into()))?;

    let mut out: Vec<ZVec> = Vec::new();
    let k_max = num::integer::div_floor(
        query.height_bound.numer().clone(),
        query.height_bound.denom().clone(),
    );
    let mut k = Z::zero();
    while k <= k_max {
        if (&k % &step).is_zero() {
            enum_fiber(
                lat,
                &a_row,
                &kernel,
                &neg_fiber,
                &l_fac,
                &d_fac,
                &k,
                &query.square_bound,
                &mut out,
            )?;
        }
        k += Z::one();
    }
    // Keep primitive vectors only, sign-normalized.
    let mut seen: Vec<ZVec> = Vec::new();
    for v in out {
        if !gcd_vec(&v).is_one() {
            continue;
        }
        seen.push(v);
    }
    seen.sort_by(|a, b| {
        let ha = lat.pair_zz(a, h).unwrap();
        let hb = lat.pair_zz(b, h).unwrap();
        let qa = lat.pair_zz(a, a).unwrap();
        let qb = lat.pair_zz(b, b).unwrap();
        (ha, qa, a.clone()).cmp(&(hb, qb, b.clone()))
    });
    seen.dedup();
    Ok(seen)
}

/// Enumerate the fiber pair(v, h) = k. Candidates v = v0 + K w with w in
/// Z^m filling a shifted ellipsoid of the definite form.
#[allow(clippy::too_many_arguments)]
fn enum_fiber(
    lat: &Lattice,
    a_row: &ZMat,
    kernel: &ZMat,
    neg_fiber: &QMat,
    l_fac: &QMat,
    d_fac: &[Q],
    k: &Z,
    square_bound: &Q,
    out: &mut Vec<ZVec>,
) -> Result<()> {
    let v0 = match a_row.int_solve(&[k.clone()]) {
        Some(v) => v,
        None => return Ok(()),
    };
    let m = kernel.cols;
    let n = kernel.rows;
    if m == 0 {
        push_candidate(lat, &v0, k, square_bound, out)?;
        return Ok(());
    }
    // -q(v0 + K w) = w^T A w - 2 c^T w - q0 with A = -K^T G K.
    let q0 = lat.pair_zz(&v0, &v0)?;
    let gv0 = lat.to_dual(&z_to_q(&v0))?;
    let c: QVec = (0..m)
        .map(|j| {
            kernel
                .col(j)
                .iter()
                .zip(&gv0)
                .map(|(a, b)| Q::from_integer(a.clone()) * b)
                .sum()
        })
        .collect();
    // Center mu = A^{-1} c; (w - mu)^T A (w - mu) <= T with
    // T = mu^T A mu + q0 + B (from 0 < -q(v) <= B).
    let a_inv = neg_fiber.inverse().ok_or(Error::Degenerate)?;
    let mu = a_inv.mul_vec(&c);
    let mu_a_mu: Q = mu.iter().zip(&c).map(|(x, y)| x * y).sum();
    let t_bound = &mu_a_mu + &q0 + square_bound;
    if t_bound.is_negative() {
        return Ok(());
    }
    // Recursive enumeration using A = L D L^T:
    // (w-mu)^T A (w-mu) = sum_i d_i (y_i)^2, y_i = (w_i-mu_i) + sum_{j>i} L_ji (w_j-mu_j).
    let mut w = vec![Z::zero(); m];
    let mut stack_partial = vec![Q::zero(); m + 1];
    enum_rec(
        m,
        l_fac,
        d_fac,
        &mu,
        &t_bound,
        &mut w,
        &mut stack_partial,
        &mut |w: &[Z]| -> Result<()> {
            // v = v0 + K w
            let mut v = v0.clone();
            for j in 0..m {
                if w[j].is_zero() {
                    continue;
                }
                let col = kernel.col(j);
                for i in 0..n {
                    v[i] += &w[j] * &col[i];
                }
            }
            push_candidate(lat, &v, k, square_bound, out)
        },
    )
}

/// Depth-first over coordinates i = m-1 .. 0.
fn enum_rec(
    level: usize,
    l_fac: &QMat,
    d_fac: &[Q],
    mu: &[Q],
    t_bound: &Q,
    w: &mut Vec<Z>,
    partial: &mut Vec<Q>,
    emit: &mut dyn FnMut(&[Z]) -> Result<()>,
) -> Result<()> {
    if level == 0 {
        return emit(w);
    }
    let i = level - 1;
    // y_i = (w_i - mu_i) + sum_{j>i} L_ji (w_j - mu_j)
    let mut shift = Q::zero();
    for j in level..mu.len() {
        shift += &l_fac[(j, i)] * (Q::from_integer(w[j].clone()) - &mu[j]);
    }
    let center = mu[i].clone() - shift;
    let budget = t_bound - &partial[level];
    let r2 = budget / &d_fac[i];
    let (lo, hi) = int_interval(&center, &r2);
    let mut wi = lo;
    while wi <= hi {
        let y = Q::from_integer(wi.clone()) - &center;
        let used = &d_fac[i] * &y * &y;
        partial[level - 1] = &partial[level] + &used;
        w[i] = wi.clone();
        enum_rec(level - 1, l_fac, d_fac, mu, t_bound, w, partial, emit)?;
        wi += Z::one();
    }
    Ok(())
}

fn push_candidate(
    lat: &Lattice,
    v: &[Z],
    k: &Z,
    square_bound: &Q,
    out: &mut Vec<ZVec>,
) -> Result<()> {
    let sq = lat.pair_zz(v, v)?;
    if !sq.is_negative() || sq < -square_bound.clone() {
        return Ok(());
    }
    let mut v = v.to_vec();
    if k.is_zero() {
        // Orthogonal fiber contains v and -v; keep the lex-positive one.
        let vq = z_to_q(&v);
        if !lex_positive(&vq) {
            v = v.iter().map(|x| -x).collect();
        }
    }
    out.push(v);
    Ok(())
}

/// Height bound M such that every v with -B <= pair(v,v) < 0 whose
/// orthogonal meets the cone satisfies |pair(v, h)| <= M. Computed from
/// the extreme-ray maximum of the Cauchy term, optionally widened.
pub fn cone_bound(lat: &Lattice, cone: &Cone, h: &[Z], square_bound: &Q, widen: Option<&Q>) -> Result<Q> {
    if !square_bound.is_positive() {
        return Err(Error::NonPositiveBound(square_bound.to_string()));
    }
    if cone.generators.is_empty() {
        return Err(Error::NoGenerators);
    }
    let hq = z_to_q(h);
    let qh = lat.square(&hq)?;
    if !qh.is_positive() {
        return Err(Error::NotPositive(format!("base square {qh}")));
    }
    let mut max_term = Q::zero();
    for r in &cone.generators {
        let qr = lat.square(r)?;
        if !qr.is_positive() {
            return Err(Error::NonPositiveGenerator(qr.to_string()));
        }
        let hr = lat.pair(&hq, r)?;
        if !hr.is_positive() {
            // q(r) > 0 alone allows the opposite component of the positive
            // cone, where the Cauchy bound does not apply.
            return Err(Error::NotPositive(format!(
                "generator pairs {hr} with the base point"
            )));
        }
        let term = &hr * &hr / qr - &qh;
        if term > max_term {
            max_term = term;
        }
    }
    let mut m = ceil_sqrt_q(&(square_bound * &max_term));
    if let Some(f) = widen {
        if !f.is_positive() {
            return Err(Error::NonPositiveBound(f.to_string()));
        }
        m *= f;
    }
    Ok(m)
}

/// Negative vectors of square in [-B, 0) whose orthogonal meets the cone:
/// enum_negative with the automatic height bound, filtered by the wall
/// test. Finite, deterministic, canonically ordered.
pub fn walls_meeting(
    lat: &Lattice,
    cone: &Cone,
    h: &[Z],
    square_bound: &Q,
    widen: Option<&Q>,
) -> Result<Vec<ZVec>> {
    let m = cone_bound(lat, cone, h, square_bound, widen)?;
    let query = HuntQuery::new(lat, h.to_vec(), square_bound.clone(), m)?;
    let all = enum_negative(lat, &query)?;
    let mut out = Vec::new();
    for v in all {
        if wall_meets_cone(lat, &z_to_q(&v), cone)? {
            out.push(v);
        }
    }
    Ok(out)
}
