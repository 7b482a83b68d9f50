//! Shared test machinery: independent brute-force oracles and seeded
//! random instance generators.

#![allow(dead_code)]

use num::{One, Signed, Zero};
use rand::Rng;

use conewalk::lattice::Lattice;
use conewalk::mat::{floor_sqrt_q, gcd_vec, lex_positive, z_to_q, QMat, QVec, ZMat, ZVec, Q, Z};
use conewalk::roots::Root;

pub fn zi(v: i64) -> Z {
    Z::from(v)
}

pub fn qi(v: i64) -> Q {
    Q::from_integer(Z::from(v))
}

pub fn zvec(v: &[i64]) -> ZVec {
    v.iter().map(|&x| Z::from(x)).collect()
}

pub fn qvec(v: &[i64]) -> QVec {
    v.iter().map(|&x| qi(x)).collect()
}

/// Exhaustive box-scan oracle for enum_negative: every primitive v with
/// -B <= q(v) < 0 and |pair(v,h)| <= M, found by scanning the coordinate
/// box certified by the positive definite majorant
/// Q+(v) = 2 pair(v,h)^2 / q(h) - q(v).
pub fn box_oracle(lat: &Lattice, h: &[Z], b: &Q, m_bound: &Q) -> Vec<ZVec> {
    let n = lat.rank();
    let hq = z_to_q(h);
    let qh = lat.square(&hq).unwrap();
    assert!(qh.is_positive());
    let gh = lat.to_dual(&hq).unwrap();
    // A = 2 (Gh)(Gh)^T / q(h) - G, positive definite for signature (1, n-1).
    let mut a = QMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = Q::from_integer(2.into()) * &gh[i] * &gh[j] / &qh
                - &lat.gram()[(i, j)];
        }
    }
    let t = Q::from_integer(2.into()) * m_bound * m_bound / &qh + b;
    let a_inv = a.inverse().expect("majorant is definite");
    // v^T A v <= T implies v_i^2 <= T * (A^-1)_ii.
    let radii: Vec<i64> = (0..n)
        .map(|i| {
            let r2 = &t * &a_inv[(i, i)];
            let r = floor_sqrt_q(&r2);
            i64::try_from(&r).unwrap() + 1
        })
        .collect();
    let mut out: Vec<ZVec> = Vec::new();
    let mut coords = vec![0i64; n];
    for c in coords.iter_mut().zip(&radii) {
        *c.0 = -c.1;
    }
    'outer: loop {
        let v: ZVec = coords.iter().map(|&c| Z::from(c)).collect();
        let sq = lat.pair_zz(&v, &v).unwrap();
        if sq.is_negative() && sq >= -b.clone() && gcd_vec(&v).is_one() {
            let height = lat.pair_zz(&v, h).unwrap();
            if height.abs() <= *m_bound {
                let keep = if height.is_positive() {
                    Some(v.clone())
                } else if height.is_negative() {
                    None // the sign-flipped copy appears elsewhere in the box
                } else if lex_positive(&z_to_q(&v)) {
                    Some(v.clone())
                } else {
                    None
                };
                if let Some(v) = keep {
                    out.push(v);
                }
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                break 'outer;
            }
            coords[i] += 1;
            if coords[i] <= radii[i] {
                break;
            }
            coords[i] = -radii[i];
            i += 1;
        }
    }
    out.sort_by(|x, y| {
        let hx = lat.pair_zz(x, h).unwrap();
        let hy = lat.pair_zz(y, h).unwrap();
        let qx = lat.pair_zz(x, x).unwrap();
        let qy = lat.pair_zz(y, y).unwrap();
        (hx, qx, x.clone()).cmp(&(hy, qy, y.clone()))
    });
    out.dedup();
    out
}

/// Brute-force Zariski oracle: try every support subset, keep the
/// decompositions meeting all sign constraints. All valid supports must
/// agree on (P, coefficients); returns that unique pair.
pub fn zariski_oracle(
    lat: &Lattice,
    d: &[Q],
    roots: &[Root],
) -> Option<(QVec, Vec<Q>)> {
    let k = roots.len();
    assert!(k <= 8);
    let mut found: Option<(QVec, Vec<Q>)> = None;
    for mask in 0u32..(1 << k) {
        let support: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        let s = support.len();
        let mut a = QMat::zero(s, s);
        let mut rhs = Vec::with_capacity(s);
        for (row, &j) in support.iter().enumerate() {
            for (col, &i) in support.iter().enumerate() {
                a[(row, col)] = lat.pair(roots[i].vector(), roots[j].vector()).unwrap();
            }
            rhs.push(lat.pair(d, roots[j].vector()).unwrap());
        }
        let coeffs_s = if s == 0 {
            Vec::new()
        } else {
            match a.solve(&rhs) {
                Some(c) => c,
                None => continue,
            }
        };
        if coeffs_s.iter().any(|c| c.is_negative()) {
            continue;
        }
        // Support gram must be negative definite.
        if s > 0 && !neg_definite(&a) {
            continue;
        }
        let mut coeffs = vec![Q::zero(); k];
        for (&i, c) in support.iter().zip(&coeffs_s) {
            coeffs[i] = c.clone();
        }
        let mut p = d.to_vec();
        for (c, r) in coeffs.iter().zip(roots) {
            for (x, y) in p.iter_mut().zip(r.vector()) {
                *x -= c * y;
            }
        }
        if roots
            .iter()
            .any(|r| lat.pair(&p, r.vector()).unwrap().is_negative())
        {
            continue;
        }
        match &found {
            None => found = Some((p, coeffs)),
            Some((fp, fc)) => {
                assert_eq!(*fp, p, "two distinct valid decompositions");
                assert_eq!(*fc, coeffs);
            }
        }
    }
    found
}

fn neg_definite(a: &QMat) -> bool {
    let k = a.rows;
    for t in 1..=k {
        let mut minor = QMat::zero(t, t);
        for i in 0..t {
            for j in 0..t {
                minor[(i, j)] = a[(i, j)].clone();
            }
        }
        let det = minor.det();
        let signed = if t % 2 == 0 { det } else { -det };
        if !signed.is_positive() {
            return false;
        }
    }
    true
}

/// Random unimodular matrix: a product of elementary row additions and
/// swaps with small coefficients.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> ZMat {
    let mut rows: Vec<ZVec> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
        .collect();
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        if rng.gen_bool(0.2) {
            rows.swap(i, j);
        } else {
            let c = Z::from(if rng.gen_bool(0.5) { 1i64 } else { -1 });
            let rj = rows[j].clone();
            for (x, y) in rows[i].iter_mut().zip(&rj) {
                *x += &c * y;
            }
        }
    }
    ZMat::from_rows(rows.into_iter().map(|r| r.to_vec()).collect())
}

/// Random integral lattice of signature (1, rank-1) together with an
/// integral vector of positive square.
pub fn random_hyperbolic<R: Rng>(rng: &mut R, rank: usize) -> (Lattice, ZVec) {
    let u = random_unimodular(rng, rank, rank + 2);
    let u_inv = u.unimodular_inverse().expect("unimodular");
    // G = U^T D U with D = diag(2a, -2b_1, ...).
    let mut diag: Vec<Z> = vec![Z::from(2 * rng.gen_range(1i64..=3))];
    for _ in 1..rank {
        diag.push(Z::from(-2 * rng.gen_range(1i64..=3)));
    }
    let mut g = QMat::zero(rank, rank);
    for i in 0..rank {
        for j in 0..rank {
            let mut acc = Q::zero();
            for (k, dk) in diag.iter().enumerate() {
                acc += Q::from_integer(&u[(k, i)] * dk) * Q::from_integer(u[(k, j)].clone());
            }
            g[(i, j)] = acc;
        }
    }
    let lat = Lattice::new(g, None).expect("nondegenerate");
    assert_eq!(lat.signature(), (1, rank - 1));
    // h = U^-1 e_1 has square diag[0] > 0.
    let h: ZVec = (0..rank).map(|i| u_inv[(i, 0)].clone()).collect();
    (lat, h)
}

/// Random root: a small primitive integral vector of negative square.
pub fn random_root<R: Rng>(rng: &mut R, lat: &Lattice, tries: usize) -> Option<ZVec> {
    let n = lat.rank();
    for _ in 0..tries {
        let v: ZVec = (0..n).map(|_| Z::from(rng.gen_range(-3i64..=3))).collect();
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        if lat.pair_zz(&v, &v).unwrap().is_negative() {
            let g = gcd_vec(&v);
            return Some(v.iter().map(|x| x / &g).collect());
        }
    }
    None
}

/// Close a root set under its own reflections, up to sign: the walls of a
/// genuine (finite) reflection group. Returns None when the closure
/// exceeds the cap, which signals an infinite reflection group at this
/// scale.
pub fn close_roots(lat: &Lattice, seeds: &[QVec], cap: usize) -> Option<Vec<QVec>> {
    let canon = |v: &QVec| -> ZVec {
        let p = conewalk::mat::primitive_scale(v);
        if lex_positive(&z_to_q(&p)) {
            p
        } else {
            p.iter().map(|x| -x).collect()
        }
    };
    let mut set: Vec<ZVec> = Vec::new();
    for s in seeds {
        let c = canon(s);
        if !set.contains(&c) {
            set.push(c);
        }
    }
    loop {
        let mut added = false;
        let snapshot = set.clone();
        for e in &snapshot {
            let r = conewalk::roots::reflection(lat, &z_to_q(e)).ok()?;
            for f in &snapshot {
                let image = r.mul_vec(&z_to_q(f));
                let c = canon(&image);
                if !set.contains(&c) {
                    set.push(c);
                    added = true;
                }
            }
        }
        if set.len() > cap {
            return None;
        }
        if !added {
            break;
        }
    }
    set.sort();
    Some(set.iter().map(|v| z_to_q(v)).collect())
}

/// Random positive-component vector: integral, q > 0, pair(. , h) > 0.
pub fn random_positive<R: Rng>(
    rng: &mut R,
    lat: &Lattice,
    h: &[Z],
    bound: i64,
    tries: usize,
) -> Option<ZVec> {
    let n = lat.rank();
    for _ in 0..tries {
        let v: ZVec = (0..n).map(|_| Z::from(rng.gen_range(-bound..=bound))).collect();
        if lat.pair_zz(&v, &v).unwrap().is_positive()
            && lat.pair_zz(&v, h).unwrap().is_positive()
        {
            return Some(v);
        }
    }
    None
}

/// Block lattice diag(2k) + (-Cartan A_m1) + (-Cartan A_m2) whose simple
/// roots pair nonnegatively and have negative definite supports.
pub fn zariski_instance_lattice(k: i64, m1: usize, m2: usize) -> (Lattice, Vec<Vec<i64>>) {
    let n = 1 + m1 + m2;
    let mut gram = vec![vec![0i64; n]; n];
    gram[0][0] = 2 * k;
    let fill = |offset: usize, m: usize, gram: &mut Vec<Vec<i64>>| {
        for i in 0..m {
            gram[offset + i][offset + i] = -2;
            if i + 1 < m {
                gram[offset + i][offset + i + 1] = 1;
                gram[offset + i + 1][offset + i] = 1;
            }
        }
    };
    fill(1, m1, &mut gram);
    fill(1 + m1, m2, &mut gram);
    let rows: Vec<&[i64]> = gram.iter().map(|r| r.as_slice()).collect();
    let lat = Lattice::from_i64(&rows).unwrap();
    let mut roots = Vec::new();
    for i in 1..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        roots.push(e);
    }
    (lat, roots)
}
