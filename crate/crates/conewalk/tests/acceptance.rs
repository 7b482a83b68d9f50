//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line with its elapsed time and asserting an explicit time
//! budget alongside the exact numeric claims.

mod common;

use std::time::{Duration, Instant};

use num::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use conewalk::cones::{wall_meets_cone, Cone};
use conewalk::domains::{ball, dirichlet_domain, rank2_boundary_rays, rank2_isometry_generator, tiles, Rank2Rays};
use conewalk::fold::{folded_weyl_order, AdeType, FoldOptions, Tau};
use conewalk::hunt::{cone_bound, enum_negative, HuntQuery};
use conewalk::lattice::Lattice;
use conewalk::mat::{z_to_q, QMat, QVec, ZMat, ZVec, Q, Z};
use conewalk::roots::{
    chamber_walk, in_closed_chamber, interior_point, is_integral_reflection, reflection,
    weyl_factorize, Root,
};
use conewalk::zariski::zariski_decompose;

struct Gate {
    label: &'static str,
    start: Instant,
    budget: Duration,
}

impl Gate {
    fn new(label: &'static str, budget_secs: u64) -> Gate {
        Gate { label, start: Instant::now(), budget: Duration::from_secs(budget_secs) }
    }

    fn pass(self) {
        let elapsed = self.start.elapsed();
        println!(
            "[PASS] {} ({:.3}s, budget {}s)",
            self.label,
            elapsed.as_secs_f64(),
            self.budget.as_secs()
        );
        assert!(
            elapsed <= self.budget,
            "{} exceeded its time budget: {elapsed:?}",
            self.label
        );
    }

    fn fail(self, why: &str) -> ! {
        println!("[FAIL] {}: {why}", self.label);
        panic!("{}: {why}", self.label);
    }
}

fn elliptic() -> Lattice {
    // basis s, f, e
    Lattice::from_i64(&[&[-2, 1, 1], &[1, 0, 0], &[1, 0, -2]]).unwrap()
}

#[test]
fn criterion_01_square_minus_two_class() {
    let g = Gate::new("criterion 1: alpha = s+2f+2e has square -2 and is primitive", 1);
    let lat = elliptic();
    let alpha = zvec(&[1, 2, 2]);
    let q = lat.pair_zz(&alpha, &alpha).unwrap();
    if q != qi(-2) {
        g.fail(&format!("q(alpha) = {q}"));
    }
    if !lat.is_primitive(&alpha) {
        g.fail("alpha not primitive");
    }
    g.pass();
}

#[test]
fn criterion_02_quartic_half_integral_class() {
    let g = Gate::new("criterion 2: q(D2) = -3/2 and q(2 D2) = -6 in the quartic model", 1);
    // basis H, C1, C2
    let lat = Lattice::from_i64(&[&[4, 1, 1], &[1, -2, 1], &[1, 1, -2]]).unwrap();
    let d2: QVec = vec![qi(0), Q::new(1.into(), 2.into()), qi(1)];
    let q_d2 = lat.square(&d2).unwrap();
    if q_d2 != Q::new((-3).into(), 2.into()) {
        g.fail(&format!("q(D2) = {q_d2}"));
    }
    let two_d2: QVec = d2.iter().map(|x| x * qi(2)).collect();
    let q_2d2 = lat.square(&two_d2).unwrap();
    if q_2d2 != qi(-6) {
        g.fail(&format!("q(2 D2) = {q_2d2}"));
    }
    g.pass();
}

#[test]
fn criterion_03_non_integral_reflection() {
    let g = Gate::new(
        "criterion 3: reflection in the square -6 vector of [[-6,1],[1,0]] is not integral",
        1,
    );
    let lat = Lattice::from_i64(&[&[-6, 1], &[1, 0]]).unwrap();
    let e = qvec(&[1, 0]);
    if is_integral_reflection(&lat, &e).unwrap() {
        g.fail("reflection claimed integral");
    }
    let image = reflection(&lat, &e).unwrap().mul_vec(&qvec(&[0, 1]));
    if image[0].denom() != &Z::from(3) {
        g.fail(&format!("expected denominator 3, got {}", image[0]));
    }
    g.pass();
}

#[test]
fn criterion_04_folded_weyl_orders() {
    let g = Gate::new(
        "criterion 4: folded Weyl orders (A2,flip)=2, (A3,flip)=8, (D4,triality)=12",
        30,
    );
    let table = [("A2", "flip", 2u64), ("A3", "flip", 8), ("D4", "triality", 12)];
    for (ty, tau, expected) in table {
        let t = AdeType::parse(ty).unwrap();
        let tau = Tau::parse(tau).unwrap();
        let forward = folded_weyl_order(t, tau, &FoldOptions::default()).unwrap();
        let reverse = folded_weyl_order(
            t,
            tau,
            &FoldOptions { reverse_bfs: true, ..FoldOptions::default() },
        )
        .unwrap();
        if forward != reverse {
            g.fail(&format!("{ty}/{tau:?}: orderings disagree {forward} vs {reverse}"));
        }
        if forward != expected {
            g.fail(&format!("{ty}/{tau:?}: got {forward}, expected {expected}"));
        }
    }
    g.pass();
}

#[test]
fn criterion_05_reflection_laws() {
    let g = Gate::new(
        "criterion 5: 200 random reflections are Gram-preserving involutions fixing e-perp",
        60,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    let mut done = 0;
    while done < 200 {
        let rank = rng.gen_range(2..=4usize);
        let (lat, _h) = random_hyperbolic(&mut rng, rank);
        let Some(e) = random_root(&mut rng, &lat, 50) else { continue };
        let eq = z_to_q(&e);
        let r = reflection(&lat, &eq).unwrap();
        // involution
        let r2 = r.mul(&r);
        if r2 != QMat::identity(rank) {
            g.fail("R^2 != id");
        }
        // gram preservation: R^T G R = G
        let gram = lat.gram().clone();
        if r.transpose().mul(&gram).mul(&r) != gram {
            g.fail("gram not preserved");
        }
        // fixes e-perp: kernel of the dual covector row
        let dual = lat.to_dual(&eq).unwrap();
        let row = QMat::from_rows(vec![dual]);
        for w in row.kernel() {
            if r.mul_vec(&w) != w {
                g.fail("e-perp not fixed");
            }
        }
        done += 1;
    }
    g.pass();
}

#[test]
fn criterion_06_chamber_walk() {
    let g = Gate::new(
        "criterion 6: 200 random chamber walks land in the closed chamber, exactly",
        60,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let mut done = 0;
    while done < 200 {
        let rank = rng.gen_range(2..=4usize);
        let (lat, h) = random_hyperbolic(&mut rng, rank);
        // Seed roots, then close the set under its reflections so the walk
        // target is a genuine Weyl chamber; skip seeds generating an
        // infinite group at this scale.
        let count = rng.gen_range(1..=3usize);
        let mut seeds: Vec<conewalk::QVec> = Vec::new();
        for _ in 0..count {
            if let Some(e) = random_root(&mut rng, &lat, 50) {
                seeds.push(z_to_q(&e));
            }
        }
        if seeds.is_empty() {
            continue;
        }
        let Some(closed) = close_roots(&lat, &seeds, 12) else { continue };
        if closed.len() > 5 {
            continue;
        }
        let roots: Vec<Root> = closed
            .iter()
            .map(|v| Root::new(&lat, v.clone()).unwrap())
            .collect();
        let Some(alpha) = random_positive(&mut rng, &lat, &h, 5, 200) else { continue };
        let alpha_q = z_to_q(&alpha);
        let hq = z_to_q(&h);
        let (word, rep) = match chamber_walk(&lat, &roots, &alpha_q, &hq) {
            Ok(x) => x,
            Err(e) => g.fail(&format!("walk failed: {e}")),
        };
        let normed = conewalk::roots::normalize_roots(&lat, &roots, &hq).unwrap();
        if !in_closed_chamber(&lat, &normed, &rep).unwrap() {
            g.fail("representative outside the closed chamber");
        }
        if word.matrix.mul_vec(&alpha_q) != rep {
            g.fail("word(alpha) != rep");
        }
        // idempotence
        let (again, rep2) = chamber_walk(&lat, &roots, &rep, &hq).unwrap();
        if !again.is_empty() || rep2 != rep {
            g.fail("walk not idempotent");
        }
        // rep invariant under root shuffles
        for _ in 0..2 {
            let mut shuffled = roots.clone();
            for i in (1..shuffled.len()).rev() {
                let j = rng.gen_range(0..=i);
                shuffled.swap(i, j);
            }
            let (_, rep_s) = chamber_walk(&lat, &shuffled, &alpha_q, &hq).unwrap();
            if rep_s != rep {
                g.fail("representative depends on root order");
            }
        }
        done += 1;
    }
    g.pass();
}

#[test]
fn criterion_07_zariski_oracle() {
    let g = Gate::new(
        "criterion 7: 100 random Zariski decompositions match the subset brute force",
        60,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    let mut done = 0;
    while done < 100 {
        let m1 = rng.gen_range(1..=3usize);
        let m2 = rng.gen_range(1..=3usize);
        let (lat, root_coords) = zariski_instance_lattice(rng.gen_range(1..=3), m1, m2);
        let roots: Vec<Root> = root_coords
            .iter()
            .map(|c| Root::new(&lat, c.iter().map(|&x| qi(x)).collect()).unwrap())
            .collect();
        let d: QVec = (0..lat.rank()).map(|_| qi(rng.gen_range(-4i64..=4))).collect();
        let dec = match zariski_decompose(&lat, &d, &roots) {
            Ok(x) => x,
            Err(e) => g.fail(&format!("iterative solve failed: {e}")),
        };
        let Some((p_oracle, coeffs_oracle)) = zariski_oracle(&lat, &d, &roots) else {
            g.fail("oracle found no valid decomposition")
        };
        if dec.positive != p_oracle || dec.coefficients != coeffs_oracle {
            g.fail("iterative and oracle decompositions differ");
        }
        // order independence
        let mut rev: Vec<Root> = roots.clone();
        rev.reverse();
        let dec_rev = zariski_decompose(&lat, &d, &rev).unwrap();
        if dec_rev.positive != dec.positive {
            g.fail("decomposition depends on root order");
        }
        done += 1;
    }
    g.pass();
}

#[test]
fn criterion_08_enumeration_completeness() {
    let g = Gate::new(
        "criterion 8: 50 random enumerations match the box oracle; cone bound is sound",
        120,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    let mut done = 0;
    while done < 50 {
        let rank = rng.gen_range(2..=4usize);
        let (lat, h) = random_hyperbolic(&mut rng, rank);
        let b = qi(rng.gen_range(1i64..=12));
        let m = qi(rng.gen_range(0i64..=4));
        let query = HuntQuery::new(&lat, h.clone(), b.clone(), m.clone()).unwrap();
        let got = enum_negative(&lat, &query).unwrap();
        let expected = box_oracle(&lat, &h, &b, &m);
        if got != expected {
            g.fail(&format!(
                "enumeration mismatch: {} vs oracle {}",
                got.len(),
                expected.len()
            ));
        }
        // no v and -v both present
        for v in &got {
            let neg: ZVec = v.iter().map(|x| -x).collect();
            if got.contains(&neg) {
                g.fail("v and -v both emitted");
            }
        }
        // cone bound soundness on a cone around h
        if let Some(cone) = cone_around(&lat, &h) {
            let m_auto = cone_bound(&lat, &cone, &h, &b, None).unwrap();
            if m_auto > qi(12) {
                done += 1;
                continue; // keep the oracle box tractable
            }
            let wide = &m_auto + qi(3);
            for v in box_oracle(&lat, &h, &b, &wide) {
                if wall_meets_cone(&lat, &z_to_q(&v), &cone).unwrap() {
                    let height = lat.pair_zz(&v, &h).unwrap().abs();
                    if height > m_auto {
                        g.fail("cone bound violated by an oracle vector");
                    }
                }
            }
        }
        done += 1;
    }
    g.pass();
}

/// A full-dimensional cone of positive-square generators around h.
fn cone_around(lat: &Lattice, h: &[Z]) -> Option<Cone> {
    let n = lat.rank();
    let hq = z_to_q(h);
    let mut gens: Vec<QVec> = vec![hq.clone()];
    for i in 0..n {
        for sign in [1i64, -1] {
            let mut found = None;
            for c in 1i64..=12 {
                let v: QVec = hq
                    .iter()
                    .enumerate()
                    .map(|(j, x)| x * qi(c) + if j == i { qi(sign) } else { qi(0) })
                    .collect();
                if lat.square(&v).unwrap().is_positive()
                    && lat.pair(&v, &hq).unwrap().is_positive()
                {
                    found = Some(v);
                    break;
                }
            }
            gens.push(found?);
        }
    }
    Cone::from_generators(lat, gens, hq).ok()
}

#[test]
fn criterion_09_dirichlet_tiling() {
    let g = Gate::new(
        "criterion 9: Pell lattice Dirichlet wedge tiles 100 samples with no overlaps",
        60,
    );
    let lat = Lattice::from_i64(&[&[2, 1], &[1, -2]]).unwrap();
    match rank2_boundary_rays(&lat).unwrap() {
        Rank2Rays::Irrational(s, _) => {
            if s.radicand != zi(5) {
                g.fail("wrong radicand");
            }
        }
        Rank2Rays::Rational(_, _) => g.fail("rays claimed rational"),
    }
    let gen = match rank2_isometry_generator(&lat, 10) {
        Ok(m) => m,
        Err(e) => g.fail(&format!("no generator within bound 10: {e}")),
    };
    let x0 = qvec(&[1, 0]);
    let group = ball(&lat, &[gen.clone()], 3).unwrap();
    let domain = dirichlet_domain(&lat, &x0, &group).unwrap();
    if domain.active.len() != 2 {
        g.fail(&format!("{} active halfspaces, expected 2", domain.active.len()));
    }
    if !domain.stabilized {
        g.fail("active set not stabilized under radius growth");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(901);
    let mut samples: Vec<QVec> = Vec::new();
    while samples.len() < 100 {
        let x = rng.gen_range(-30i64..=30);
        let y = rng.gen_range(-30i64..=30);
        let v = qvec(&[x, y]);
        if lat.square(&v).unwrap().is_positive()
            && lat.pair(&v, &x0).unwrap().is_positive()
        {
            samples.push(v);
        }
    }
    let big = ball(&lat, &[gen], 6).unwrap();
    let report = tiles(&lat, &domain, &big, &samples).unwrap();
    if report.covered != samples.len() {
        g.fail(&format!("coverage {}/{}", report.covered, samples.len()));
    }
    if report.double_interior != 0 {
        g.fail(&format!("{} double-interior hits", report.double_interior));
    }
    g.pass();
}

#[test]
fn criterion_10_semidirect_factorization() {
    let g = Gate::new(
        "criterion 10: 100 random factorizations g = w*b recover g exactly",
        60,
    );
    // diag(2) + (-A2 Cartan); roots e2, e3, e2+e3 are closed under W.
    let lat = Lattice::from_i64(&[&[2, 0, 0], &[0, -2, 1], &[0, 1, -2]]).unwrap();
    let roots = [
        Root::new(&lat, qvec(&[0, 1, 0])).unwrap(),
        Root::new(&lat, qvec(&[0, 0, 1])).unwrap(),
        Root::new(&lat, qvec(&[0, 1, 1])).unwrap(),
    ];
    let h = qvec(&[1, 0, 0]);
    let swap = ZMat::from_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
    let alpha0 = interior_point(&lat, &roots, &h).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    for _ in 0..100 {
        // random Weyl word times a random chamber-preserving isometry
        let mut m = QMat::identity(3);
        let len = rng.gen_range(0..=4usize);
        for _ in 0..len {
            let r = &roots[rng.gen_range(0..roots.len())];
            m = reflection(&lat, r.vector()).unwrap().mul(&m);
        }
        let b0 = if rng.gen_bool(0.5) { swap.clone() } else { ZMat::identity(3) };
        let gm = m.mul(&b0.to_qmat());
        let gz = match q_to_zmat(&gm) {
            Some(z) => z,
            None => g.fail("composition not integral"),
        };
        let (word, b) = match weyl_factorize(&lat, &roots, &gz, &h) {
            Ok(x) => x,
            Err(e) => g.fail(&format!("factorization failed: {e}")),
        };
        if word.matrix.mul(&b) != gm {
            g.fail("w * b != g");
        }
        // b fixes the fundamental chamber: the interior probe stays inside
        let image = b.mul_vec(&alpha0);
        for r in &roots {
            if lat.pair(&image, r.vector()).unwrap().is_negative() {
                g.fail("b moves the chamber");
            }
        }
    }
    g.pass();
}

fn q_to_zmat(m: &QMat) -> Option<ZMat> {
    let mut rows = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut row = Vec::with_capacity(m.cols);
        for j in 0..m.cols {
            if !m[(i, j)].denom().is_one() {
                return None;
            }
            row.push(m[(i, j)].numer().clone());
        }
        rows.push(row);
    }
    Some(ZMat::from_rows(rows))
}
