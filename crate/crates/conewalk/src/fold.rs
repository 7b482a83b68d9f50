//! Folded finite Weyl groups: the subgroup of W(Phi) fixed under
//! conjugation by a Dynkin diagram automorphism, computed by brute-force
//! enumeration of W as permutations of the root set.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdeType {
    A(usize),
    D(usize),
    E(usize),
}

impl AdeType {
    pub fn parse(s: &str) -> Result<AdeType> {
        let s = s.trim();
        let (letter, num) = s.split_at(1);
        let n: usize = num
            .parse()
            .map_err(|_| Error::Parse(format!("bad ADE type {s:?}")))?;
        match letter {
            "A" | "a" if (1..=8).contains(&n) => Ok(AdeType::A(n)),
            "D" | "d" if (4..=8).contains(&n) => Ok(AdeType::D(n)),
            "E" | "e" if (6..=8).contains(&n) => Ok(AdeType::E(n)),
            _ => Err(Error::Parse(format!("unsupported ADE type {s:?}"))),
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            AdeType::A(n) | AdeType::D(n) | AdeType::E(n) => n,
        }
    }

    /// |W(Phi)| by the classical formulas; used only as a size guard and
    /// for the identity-automorphism shortcut check in tests.
    pub fn weyl_order(&self) -> u64 {
        fn fact(n: u64) -> u64 {
            (1..=n).product()
        }
        match *self {
            AdeType::A(n) => fact(n as u64 + 1),
            AdeType::D(n) => fact(n as u64) * (1u64 << (n - 1)),
            AdeType::E(6) => 51_840,
            AdeType::E(7) => 2_903_040,
            AdeType::E(8) => 696_729_600,
            AdeType::E(_) => unreachable!(),
        }
    }

    /// Simple roots in the ambient coordinates (integers; E-types use the
    /// doubled E8 coordinates so half-integer roots stay integral).
    fn simple_roots(&self) -> Vec<Vec<i64>> {
        match *self {
            AdeType::A(n) => {
                // alpha_i = e_i - e_{i+1} in R^{n+1}
                (0..n)
                    .map(|i| {
                        let mut v = vec![0i64; n + 1];
                        v[i] = 1;
                        v[i + 1] = -1;
                        v
                    })
                    .collect()
            }
            AdeType::D(n) => {
                let mut s: Vec<Vec<i64>> = (0..n - 1)
                    .map(|i| {
                        let mut v = vec![0i64; n];
                        v[i] = 1;
                        v[i + 1] = -1;
                        v
                    })
                    .collect();
                let mut last = vec![0i64; n];
                last[n - 2] = 1;
                last[n - 1] = 1;
                s.push(last);
                s
            }
            AdeType::E(n) => {
                // Doubled coordinates in R^8. E8 simple roots (Bourbaki):
                // a1 = (1,-1,-1,...)/2 pattern, here times 2.
                let mut s = vec![
                    vec![1, -1, -1, -1, -1, -1, -1, 1],
                    vec![2, 2, 0, 0, 0, 0, 0, 0],
                    vec![-2, 2, 0, 0, 0, 0, 0, 0],
                    vec![0, -2, 2, 0, 0, 0, 0, 0],
                    vec![0, 0, -2, 2, 0, 0, 0, 0],
                    vec![0, 0, 0, -2, 2, 0, 0, 0],
                    vec![0, 0, 0, 0, -2, 2, 0, 0],
                    vec![0, 0, 0, 0, 0, -2, 2, 0],
                ];
                s.truncate(n);
                s
            }
        }
    }

    fn dot(&self, a: &[i64], b: &[i64]) -> i64 {
        let raw: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        match *self {
            AdeType::E(_) => raw / 4, // doubled coordinates
            _ => raw,
        }
    }

    /// All roots, generated from the simple ones by closing under the
    /// simple reflections.
    fn all_roots(&self) -> Vec<Vec<i64>> {
        let simples = self.simple_roots();
        let mut set: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for s in &simples {
            set.insert(s.clone());
            queue.push_back(s.clone());
        }
        while let Some(r) = queue.pop_front() {
            for s in &simples {
                // reflect r in s: r - 2 <r,s>/<s,s> s with <s,s> = 2
                let c = self.dot(&r, s); // 2<r,s>/<s,s> = <r,s> for <s,s>=2
                debug_assert_eq!(self.dot(s, s), 2);
                let img: Vec<i64> = r.iter().zip(s).map(|(x, y)| x - c * y).collect();
                if set.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let mut roots: Vec<Vec<i64>> = set.into_iter().collect();
        roots.sort();
        roots
    }
}

/// Named diagram automorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tau {
    Identity,
    /// The order-2 diagram reversal (A_n), the swap of the two fork nodes
    /// (D_n), or the order-2 flip (E6).
    Flip,
    /// The order-3 rotation of the three outer nodes of D4.
    Triality,
}

impl Tau {
    pub fn parse(s: &str) -> Result<Tau> {
        match s.trim().to_ascii_lowercase().as_str() {
            "identity" | "id" => Ok(Tau::Identity),
            "flip" => Ok(Tau::Flip),
            "triality" => Ok(Tau::Triality),
            other => Err(Error::Parse(format!("unknown automorphism {other:?}"))),
        }
    }

    /// The permutation of simple-root indices, validated against the type.
    fn simple_permutation(&self, t: AdeType) -> Result<Vec<usize>> {
        let n = t.rank();
        match (self, t) {
            (Tau::Identity, _) => Ok((0..n).collect()),
            (Tau::Flip, AdeType::A(_)) => Ok((0..n).rev().collect()),
            (Tau::Flip, AdeType::D(_)) => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(n - 2, n - 1);
                Ok(p)
            }
            (Tau::Flip, AdeType::E(6)) => {
                // Bourbaki labels 1..6 with node 2 off the chain 1-3-4-5-6:
                // flip fixes 2 and 4, swaps 1<->6 and 3<->5.
                // Our E6 simple indices 0..5 follow the E8 chain restricted;
                // compute the permutation from the Cartan matrix instead.
                find_diagram_involution(t)
            }
            (Tau::Triality, AdeType::D(4)) => {
                // nodes 0,2,3 are the outer fork nodes; 1 is central
                Ok(vec![2, 1, 3, 0])
            }
            _ => Err(Error::InvalidAutomorphism(format!("{self:?} on {t:?}"))),
        }
    }
}

/// For E6: find the unique nontrivial Cartan-matrix symmetry.
fn find_diagram_involution(t: AdeType) -> Result<Vec<usize>> {
    let simples = t.simple_roots();
    let n = simples.len();
    let cartan = |i: usize, j: usize| t.dot(&simples[i], &simples[j]);
    let mut perm = vec![usize::MAX; n];
    // Backtracking search over permutations preserving the Cartan matrix.
    fn go(
        pos: usize,
        n: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        cartan: &dyn Fn(usize, usize) -> i64,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == n {
            out.push(perm.clone());
            return;
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            let ok = (0..pos).all(|j| cartan(pos, j) == cartan(cand, perm[j]));
            if ok {
                perm[pos] = cand;
                used[cand] = true;
                go(pos + 1, n, perm, used, cartan, out);
                used[cand] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; n];
    go(0, n, &mut perm, &mut used, &cartan, &mut out);
    out.into_iter()
        .find(|p| p.iter().enumerate().any(|(i, &x)| i != x))
        .ok_or_else(|| Error::InvalidAutomorphism("no nontrivial diagram symmetry".into()))
}

fn validate_tau(t: AdeType, perm: &[usize]) -> Result<()> {
    let simples = t.simple_roots();
    let n = simples.len();
    if perm.len() != n {
        return Err(Error::InvalidAutomorphism("wrong length".into()));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidAutomorphism("not a permutation".into()));
        }
        seen[p] = true;
    }
    for i in 0..n {
        for j in 0..n {
            if t.dot(&simples[i], &simples[j]) != t.dot(&simples[perm[i]], &simples[perm[j]]) {
                return Err(Error::InvalidAutomorphism(
                    "permutation does not preserve the Cartan matrix".into(),
                ));
            }
        }
    }
    Ok(())
}

pub struct FoldOptions {
    /// Enumerate with the simple generators in reversed order; used as an
    /// independent-ordering cross-check of the brute force.
    pub reverse_bfs: bool,
    /// Allow Weyl groups above the default size guard.
    pub allow_large: bool,
}

impl Default for FoldOptions {
    fn default() -> Self {
        FoldOptions { reverse_bfs: false, allow_large: false }
    }
}

const SIZE_GUARD: u64 = 200_000;

/// Order of {w in W(Phi) : tau w tau^-1 = w}.
pub fn folded_weyl_order(t: AdeType, tau: Tau, opts: &FoldOptions) -> Result<u64> {
    let perm = tau.simple_permutation(t)?;
    folded_weyl_order_perm(t, &perm, opts)
}

/// Same, with tau given as an explicit permutation of simple-root indices.
pub fn folded_weyl_order_perm(t: AdeType, tau_perm: &[usize], opts: &FoldOptions) -> Result<u64> {
    validate_tau(t, tau_perm)?;
    if !opts.allow_large && t.weyl_order() > SIZE_GUARD {
        return Err(Error::Unsupported(format!(
            "|W| = {} exceeds the default size guard; pass allow_large",
            t.weyl_order()
        )));
    }
    let roots = t.all_roots();
    let index: HashMap<Vec<i64>, u32> =
        roots.iter().enumerate().map(|(i, r)| (r.clone(), i as u32)).collect();
    let simples = t.simple_roots();
    let m = roots.len();

    // Simple reflections as permutations of the root list.
    let as_perm = |map: &dyn Fn(&[i64]) -> Vec<i64>| -> Vec<u32> {
        roots
            .iter()
            .map(|r| *index.get(&map(r)).expect("image is a root"))
            .collect()
    };
    let mut gens: Vec<Vec<u32>> = simples
        .iter()
        .map(|s| {
            as_perm(&|r: &[i64]| {
                let c = t.dot(r, s);
                r.iter().zip(s).map(|(x, y)| x - c * y).collect()
            })
        })
        .collect();
    if opts.reverse_bfs {
        gens.reverse();
    }

    // tau as a permutation of roots: express each root in the simple basis,
    // permute coordinates, map back.
    let simple_mat = crate::mat::QMat::from_cols(
        simples
            .iter()
            .map(|s| s.iter().map(|&x| crate::mat::qi(x)).collect())
            .collect(),
    );
    let tau_root_perm: Vec<u32> = roots
        .iter()
        .map(|r| {
            let rq: Vec<crate::mat::Q> = r.iter().map(|&x| crate::mat::qi(x)).collect();
            let coords = simple_mat.solve(&rq).expect("root in simple span");
            let mut permuted = vec![crate::mat::qi(0); coords.len()];
            for (i, c) in coords.iter().enumerate() {
                permuted[tau_perm[i]] = c.clone();
            }
            let img = simple_mat.mul_vec(&permuted);
            let img_i: Vec<i64> = img
                .iter()
                .map(|x| {
                    assert!(x.is_integer());
                    i64::try_from(x.to_integer()).expect("root coordinate fits i64")
                })
                .collect();
            *index.get(&img_i).expect("tau image is a root")
        })
        .collect();

    // BFS over the group.
    let identity: Vec<u32> = (0..m as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue: VecDeque<Vec<u32>> = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    let compose = |a: &[u32], b: &[u32]| -> Vec<u32> {
        // (a . b)(x) = a(b(x))
        b.iter().map(|&x| a[x as usize]).collect()
    };
    let mut fixed: u64 = 0;
    while let Some(w) = queue.pop_front() {
        // commutes with tau?
        let wt = compose(&w, &tau_root_perm);
        let tw = compose(&tau_root_perm, &w);
        if wt == tw {
            fixed += 1;
        }
        for g in &gens {
            let next = compose(g, &w);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    debug_assert_eq!(seen.len() as u64, t.weyl_order());
    Ok(fixed)
}
