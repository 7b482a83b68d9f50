//! Exact dense matrices over the rationals and the integers.
//!
//! Everything downstream (signatures, reflections, kernels, saturation,
//! short-vector enumeration) reduces to the routines in here. No floats.

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Z = BigInt;
pub type Q = BigRational;
pub type QVec = Vec<Q>;
pub type ZVec = Vec<Z>;

pub fn zi(n: i64) -> Z {
    Z::from(n)
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

pub fn qr(num: i64, den: i64) -> Q {
    Q::new(Z::from(num), Z::from(den))
}

pub fn zvec(v: &[i64]) -> ZVec {
    v.iter().map(|&x| zi(x)).collect()
}

pub fn qvec(v: &[i64]) -> QVec {
    v.iter().map(|&x| qi(x)).collect()
}

pub fn z_to_q(v: &[Z]) -> QVec {
    v.iter().map(|x| Q::from_integer(x.clone())).collect()
}

/// Integer part of a rational vector, if every entry is integral.
pub fn q_to_z(v: &[Q]) -> Option<ZVec> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

pub fn gcd_vec(v: &[Z]) -> Z {
    v.iter().fold(Z::zero(), |g, x| num::integer::gcd(g, x.clone()))
}

/// Scale a rational vector to a primitive integer vector with the same
/// orientation. Zero stays zero.
pub fn primitive_scale(v: &[Q]) -> ZVec {
    let lcm = v
        .iter()
        .fold(Z::one(), |l, x| num::integer::lcm(l, x.denom().clone()));
    let ints: ZVec = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = gcd_vec(&ints);
    if g.is_zero() {
        ints
    } else {
        ints.iter().map(|x| x / &g).collect()
    }
}

/// Lexicographic sign: true when the first nonzero entry is positive.
pub fn lex_positive(v: &[Q]) -> bool {
    for x in v {
        if !x.is_zero() {
            return x.is_positive();
        }
    }
    false
}

pub fn neg_qvec(v: &[Q]) -> QVec {
    v.iter().map(|x| -x).collect()
}

pub fn add_qvec(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_qvec(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_qvec(c: &Q, v: &[Q]) -> QVec {
    v.iter().map(|x| c * x).collect()
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Dense rational matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<QVec>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        QMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: Vec<QVec>) -> Self {
        QMat::from_rows(cols).transpose()
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        QMat::from_rows(rows.iter().map(|r| qvec(r)).collect())
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> QVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> QMat {
        let mut m = QMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut m = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    m[(i, j)] += t;
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Q]) -> QVec {
        assert_eq!(self.cols, v.len(), "matrix/vector dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_zmat(&self) -> Option<ZMat> {
        if !self.is_integral() {
            return None;
        }
        Some(ZMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.to_integer()).collect(),
        })
    }

    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Q::one();
        for p in 0..n {
            let pivot = (p..n).find(|&i| !a[(i, p)].is_zero());
            let pivot = match pivot {
                Some(i) => i,
                None => return Q::zero(),
            };
            if pivot != p {
                a.swap_rows(pivot, p);
                det = -det;
            }
            let pv = a[(p, p)].clone();
            det *= pv.clone();
            for i in p + 1..n {
                let f = &a[(i, p)] / &pv;
                if f.is_zero() {
                    continue;
                }
                for j in p..n {
                    let t = &f * &a[(p, j)];
                    a[(i, j)] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMat::identity(n);
        for p in 0..n {
            let pivot = (p..n).find(|&i| !a[(i, p)].is_zero())?;
            if pivot != p {
                a.swap_rows(pivot, p);
                inv.swap_rows(pivot, p);
            }
            let pv = a[(p, p)].clone();
            for j in 0..n {
                a[(p, j)] /= &pv;
                inv[(p, j)] /= &pv;
            }
            for i in 0..n {
                if i == p || a[(i, p)].is_zero() {
                    continue;
                }
                let f = a[(i, p)].clone();
                for j in 0..n {
                    let t = &f * &a[(p, j)];
                    a[(i, j)] -= t.clone();
                    let t = &f * &inv[(p, j)];
                    inv[(i, j)] -= t;
                }
            }
        }
        Some(inv)
    }

    /// Solve A x = b. Returns one solution (free variables set to zero),
    /// or None when inconsistent.
    pub fn solve(&self, b: &[Q]) -> Option<QVec> {
        assert_eq!(self.rows, b.len());
        let (rref, rhs, pivots) = self.rref_with_rhs(b);
        // Inconsistency: zero row with nonzero rhs.
        for i in pivots.len()..self.rows {
            if !rhs[i].is_zero() {
                return None;
            }
        }
        let mut x = vec![Q::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rhs[r].clone();
        }
        let _ = rref;
        Some(x)
    }

    /// Basis of the rational kernel {x : A x = 0}.
    pub fn kernel(&self) -> Vec<QVec> {
        let (rref, _, pivots) = self.rref_with_rhs(&vec![Q::zero(); self.rows]);
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &c in &pivots {
                s[c] = true;
            }
            s
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -rref[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn rank(&self) -> usize {
        let (_, _, pivots) = self.rref_with_rhs(&vec![Q::zero(); self.rows]);
        pivots.len()
    }

    fn rref_with_rhs(&self, b: &[Q]) -> (QMat, QVec, Vec<usize>) {
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let pivot = (r..self.rows).find(|&i| !a[(i, c)].is_zero());
            let pivot = match pivot {
                Some(i) => i,
                None => continue,
            };
            a.swap_rows(pivot, r);
            rhs.swap(pivot, r);
            let pv = a[(r, c)].clone();
            for j in 0..self.cols {
                a[(r, j)] /= &pv;
            }
            rhs[r] /= &pv;
            for i in 0..self.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..self.cols {
                    let t = &f * &a[(r, j)];
                    a[(i, j)] -= t;
                }
                let t = &f * &rhs[r];
                rhs[i] -= t;
            }
            pivots.push(c);
            r += 1;
        }
        // Move zero rows to the bottom (rhs alignment for consistency check).
        (a, rhs, pivots)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            let a = i * self.cols + c;
            let b = j * self.cols + c;
            self.data.swap(a, b);
        }
    }

    /// Signature of a symmetric matrix by congruence diagonalization:
    /// (positive count, negative count, zero count).
    pub fn symmetric_signature(&self) -> (usize, usize, usize) {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut done = vec![false; n];
        let (mut plus, mut minus, mut zero) = (0usize, 0usize, 0usize);
        for _ in 0..n {
            // Pick a working index: prefer a nonzero diagonal entry among the
            // untreated block; otherwise fix one up with a row/col addition.
            let idx = (0..n).find(|&i| !done[i] && !a[(i, i)].is_zero());
            let p = match idx {
                Some(p) => p,
                None => {
                    // Diagonal is all zero on the untreated block; find an
                    // off-diagonal nonzero a[i][j] and add row/col j into i.
                    let mut found = None;
                    'outer: for i in 0..n {
                        if done[i] {
                            continue;
                        }
                        for j in 0..n {
                            if done[j] || j == i || a[(i, j)].is_zero() {
                                continue;
                            }
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                    match found {
                        Some((i, j)) => {
                            for k in 0..n {
                                let t = a[(j, k)].clone();
                                a[(i, k)] += t;
                            }
                            for k in 0..n {
                                let t = a[(k, j)].clone();
                                a[(k, i)] += t;
                            }
                            i
                        }
                        None => {
                            // Untreated block is entirely zero.
                            zero += (0..n).filter(|&i| !done[i]).count();
                            break;
                        }
                    }
                }
            };
            let pv = a[(p, p)].clone();
            if pv.is_positive() {
                plus += 1;
            } else {
                minus += 1;
            }
            // Clear row/column p on the untreated block.
            for i in 0..n {
                if done[i] || i == p || a[(i, p)].is_zero() {
                    continue;
                }
                let f = &a[(i, p)] / &pv;
                for k in 0..n {
                    let t = &f * &a[(p, k)];
                    a[(i, k)] -= t;
                }
                for k in 0..n {
                    let t = &f * &a[(k, p)];
                    a[(k, i)] -= t;
                }
            }
            done[p] = true;
        }
        (plus, minus, zero)
    }

    /// LDL^T factorization of a symmetric positive definite matrix:
    /// A = L D L^T with L unit lower triangular. None if not positive definite.
    pub fn ldlt(&self) -> Option<(QMat, QVec)> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut l = QMat::identity(n);
        let mut d = vec![Q::zero(); n];
        for j in 0..n {
            let mut dj = self[(j, j)].clone();
            for k in 0..j {
                dj -= &l[(j, k)] * &l[(j, k)] * &d[k];
            }
            if !dj.is_positive() {
                return None;
            }
            d[j] = dj;
            for i in j + 1..n {
                let mut v = self[(i, j)].clone();
                for k in 0..j {
                    v -= &l[(i, k)] * &l[(j, k)] * &d[k];
                }
                l[(i, j)] = v / &d[j];
            }
        }
        Some((l, d))
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Z>,
}

impl ZMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ZMat { rows, cols, data: vec![Z::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ZMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Z::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<ZVec>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        ZMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        ZMat::from_rows(rows.iter().map(|r| zvec(r)).collect())
    }

    pub fn row(&self, i: usize) -> &[Z] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> ZVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> ZMat {
        let mut m = ZMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &ZMat) -> ZMat {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut m = ZMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    m[(i, j)] += t;
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Z]) -> ZVec {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn to_qmat(&self) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Q::from_integer(x.clone())).collect(),
        }
    }

    pub fn det(&self) -> Z {
        let d = self.to_qmat().det();
        debug_assert!(d.is_integer());
        d.to_integer()
    }

    /// Inverse of a unimodular matrix (det = ±1). None otherwise.
    pub fn unimodular_inverse(&self) -> Option<ZMat> {
        let inv = self.to_qmat().inverse()?;
        inv.to_zmat()
    }

    /// Smith normal form: returns (u, d, v) with u * self * v = d,
    /// u and v unimodular, d diagonal with the divisibility chain.
    pub fn smith(&self) -> (ZMat, ZMat, ZMat) {
        let mut a = self.clone();
        let mut u = ZMat::identity(self.rows);
        let mut v = ZMat::identity(self.cols);
        let t_max = self.rows.min(self.cols);
        for t in 0..t_max {
            loop {
                // Find the entry of minimal nonzero magnitude in the block.
                let mut best: Option<(usize, usize)> = None;
                for i in t..a.rows {
                    for j in t..a.cols {
                        if a[(i, j)].is_zero() {
                            continue;
                        }
                        let better = match best {
                            None => true,
                            Some(p) => a[(i, j)].abs() < a[p].abs(),
                        };
                        if better {
                            best = Some((i, j));
                        }
                    }
                }
                let (bi, bj) = match best {
                    Some(p) => p,
                    None => break, // block is zero
                };
                a.swap_rows_tracked(t, bi, &mut u);
                a.swap_cols_tracked(t, bj, &mut v);
                // Reduce column t then row t by the pivot.
                let mut dirty = false;
                for i in t + 1..a.rows {
                    if a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = div_round(&a[(i, t)], &a[(t, t)]);
                    a.row_sub_mul(i, t, &q, &mut u);
                    if !a[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..a.cols {
                    if a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = div_round(&a[(t, j)], &a[(t, t)]);
                    a.col_sub_mul(j, t, &q, &mut v);
                    if !a[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // Row and column t are clear. Enforce divisibility of the
                // remaining block by the pivot.
                let mut fixed = true;
                'div: for i in t + 1..a.rows {
                    for j in t + 1..a.cols {
                        if (&a[(i, j)] % &a[(t, t)]).is_zero() {
                            continue;
                        }
                        // Fold row i into row t and restart.
                        for k in 0..a.cols {
                            let x = a[(i, k)].clone();
                            a[(t, k)] += x;
                        }
                        for k in 0..u.cols {
                            let x = u[(i, k)].clone();
                            u[(t, k)] += x;
                        }
                        fixed = false;
                        break 'div;
                    }
                }
                if fixed {
                    break;
                }
            }
            if a[(t, t)].is_negative() {
                for k in 0..a.cols {
                    let x = -a[(t, k)].clone();
                    a[(t, k)] = x;
                }
                for k in 0..u.cols {
                    let x = -u[(t, k)].clone();
                    u[(t, k)] = x;
                }
            }
        }
        (u, a, v)
    }

    /// Z-basis of the saturated integer kernel {x in Z^cols : self * x = 0},
    /// as matrix columns.
    pub fn int_kernel(&self) -> ZMat {
        let (_, d, v) = self.smith();
        let t_max = self.rows.min(self.cols);
        let mut cols = Vec::new();
        for j in 0..self.cols {
            let zero_diag = j >= t_max || d[(j, j)].is_zero();
            if zero_diag {
                cols.push(v.col(j));
            }
        }
        if cols.is_empty() {
            ZMat::zero(self.cols, 0)
        } else {
            ZMat::from_rows(cols).transpose()
        }
    }

    /// One integer solution of self * x = b, if any.
    pub fn int_solve(&self, b: &[Z]) -> Option<ZVec> {
        assert_eq!(self.rows, b.len());
        let (u, d, v) = self.smith();
        let ub = u.mul_vec(b);
        let mut y = vec![Z::zero(); self.cols];
        let t_max = self.rows.min(self.cols);
        for i in 0..self.rows {
            if i < t_max && !d[(i, i)].is_zero() {
                let (q, r) = num::integer::div_rem(ub[i].clone(), d[(i, i)].clone());
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !ub[i].is_zero() {
                return None;
            }
        }
        Some(v.mul_vec(&y))
    }

    fn swap_rows_tracked(&mut self, i: usize, j: usize, u: &mut ZMat) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
        for c in 0..u.cols {
            u.data.swap(i * u.cols + c, j * u.cols + c);
        }
    }

    fn swap_cols_tracked(&mut self, i: usize, j: usize, v: &mut ZMat) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
        for r in 0..v.rows {
            v.data.swap(r * v.cols + i, r * v.cols + j);
        }
    }

    /// row i -= q * row t, tracked in u.
    fn row_sub_mul(&mut self, i: usize, t: usize, q: &Z, u: &mut ZMat) {
        for k in 0..self.cols {
            let x = q * &self[(t, k)];
            self[(i, k)] -= x;
        }
        for k in 0..u.cols {
            let x = q * &u[(t, k)];
            u[(i, k)] -= x;
        }
    }

    /// col j -= q * col t, tracked in v.
    fn col_sub_mul(&mut self, j: usize, t: usize, q: &Z, v: &mut ZMat) {
        for k in 0..self.rows {
            let x = q * &self[(k, t)];
            self[(k, j)] -= x;
        }
        for k in 0..v.rows {
            let x = q * &v[(k, t)];
            v[(k, j)] -= x;
        }
    }
}

impl std::ops::Index<(usize, usize)> for ZMat {
    type Output = Z;
    fn index(&self, (i, j): (usize, usize)) -> &Z {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ZMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Z {
        &mut self.data[i * self.cols + j]
    }
}

/// Rounded division q = round(a / b), minimizing |a - q b|.
fn div_round(a: &Z, b: &Z) -> Z {
    let (q, r) = num::integer::div_rem(a.clone(), b.clone());
    // r has the sign of a; adjust so the remainder magnitude is <= |b|/2.
    let two_r = &r * zi(2);
    if two_r.abs() > b.abs() {
        if (r.is_positive()) == (b.is_positive()) {
            q + Z::one()
        } else {
            q - Z::one()
        }
    } else {
        q
    }
}

/// floor(sqrt(x)) for a nonnegative rational.
pub fn floor_sqrt_q(x: &Q) -> Z {
    assert!(!x.is_negative());
    let p = x.numer();
    let q = x.denom();
    let s = (p * q).sqrt();
    let mut c = num::integer::div_floor(s, q.clone());
    while sq_q(&(&c + Z::one())) <= *x {
        c += Z::one();
    }
    while c.is_positive() && sq_q(&c) > *x {
        c -= Z::one();
    }
    c
}

/// Smallest rational m >= sqrt(x), with denominator dividing denom(x).
pub fn ceil_sqrt_q(x: &Q) -> Q {
    assert!(!x.is_negative());
    if x.is_zero() {
        return Q::zero();
    }
    let p = x.numer();
    let q = x.denom();
    let mut s = (p * q).sqrt();
    while &s * &s < p * q {
        s += Z::one();
    }
    Q::new(s, q.clone())
}

fn sq_q(c: &Z) -> Q {
    Q::from_integer(c * c)
}

/// All integers w with (w - c)^2 <= r2, as an inclusive range. Empty when
/// r2 < 0 (returned as lo > hi).
pub fn int_interval(c: &Q, r2: &Q) -> (Z, Z) {
    if r2.is_negative() {
        return (Z::one(), Z::zero());
    }
    let s = floor_sqrt_q(r2);
    // hi = floor(c + sqrt(r2)), lo = ceil(c - sqrt(r2)); start from integer
    // sqrt bounds and adjust by exact checks.
    let cf = num::integer::div_floor(c.numer().clone(), c.denom().clone());
    let mut hi = &cf + &s + Z::one();
    loop {
        let d = Q::from_integer(hi.clone()) - c;
        if d.is_negative() || &d * &d <= *r2 {
            break;
        }
        hi -= Z::one();
    }
    let mut lo = &cf - &s - Z::one();
    loop {
        let d = c - Q::from_integer(lo.clone());
        if d.is_negative() || &d * &d <= *r2 {
            break;
        }
        lo += Z::one();
    }
    (lo, hi)
}
