//! Acceptance suite. Each criterion prints one PASS/FAIL line and asserts.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use hyptet::complex::{
    assignment_from_metric, cone_angles, doubled_fixture, gauge_project,
    random_closed_triangulation, AngleAssignment, ConeTarget, GeneralizedMetric, Triangulation,
};
use hyptet::lobachevsky::{lobachevsky, lobachevsky_derivative, lobachevsky_reference};
use hyptet::optimize::{duality_gap, maximize_volume, rigidity_check, solve_cone_angles};
use hyptet::structures::{
    find_interior, is_member, FeasibilityStatus, MemberVerdict, LP_SLACK_TOL,
};
use hyptet::tetra::{
    angles_to_lengths, apply_decoration, boundary_face_hessian, classify, covolume,
    covolume_gradient, covolume_hessian, extended_angles, hyperbolic_triangle_sides, phi,
    theta_table, volume_from_angles, volume_gradient, DecoratedLengths, Decoration, DihedralAngles,
    RegionLabel, B_II, DEFAULT_CLASSIFY_TOL, GAUGE_BASIS,
};
use nalgebra::{Matrix2, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, ok: bool, detail: String) {
    println!(
        "criterion {n:>2} [{}] {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed: {detail}");
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random point of `B` from a hyperideal triple with every angle at least
/// `margin` from the boundary of `(0, π)` and hyperideal sum below `π - margin`.
fn interior_angles(rng: &mut ChaCha8Rng, margin: f64) -> DihedralAngles {
    loop {
        let u = [
            rng.gen_range(margin..PI),
            rng.gen_range(margin..PI),
            rng.gen_range(margin..PI),
        ];
        if u.iter().sum::<f64>() >= PI - margin {
            continue;
        }
        let a = DihedralAngles::from_hyperideal(u);
        if a.to_array()
            .iter()
            .all(|&x| x >= margin && x <= PI - margin)
        {
            return a;
        }
    }
}

fn random_lengths(rng: &mut ChaCha8Rng, r: f64) -> DecoratedLengths {
    DecoratedLengths::from_array(std::array::from_fn(|_| rng.gen_range(-r..=r)))
}

fn random_decoration(rng: &mut ChaCha8Rng, r: f64) -> Decoration {
    Decoration {
        w2: rng.gen_range(-r..=r),
        w3: rng.gen_range(-r..=r),
        w4: rng.gen_range(-r..=r),
    }
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

fn shifted(l: &DecoratedLengths, slot: usize, h: f64) -> DecoratedLengths {
    let mut a = l.to_array();
    a[slot] += h;
    DecoratedLengths::from_array(a)
}

fn twice_volume_at(u: [f64; 3]) -> f64 {
    2.0 * volume_from_angles(&DihedralAngles::from_hyperideal(u)).unwrap()
}

fn lobachevsky_suite() {
    let mut r = rng(1);
    let mut odd: f64 = 0.0;
    let mut period: f64 = 0.0;
    let mut reflect: f64 = 0.0;
    for _ in 0..10_000 {
        let t = r.gen_range(-10.0..=10.0);
        odd = odd.max((lobachevsky(-t) + lobachevsky(t)).abs());
        period = period.max((lobachevsky(t + PI) - lobachevsky(t)).abs());
        let s = r.gen_range(0.0..PI);
        reflect = reflect.max((lobachevsky(PI - s) + lobachevsky(s)).abs());
    }
    let h = 1e-6;
    let mut fd: f64 = 0.0;
    for i in 0..=1000 {
        let t = 0.1 + (PI - 0.2) * i as f64 / 1000.0;
        let numeric = (lobachevsky(t + h) - lobachevsky(t - h)) / (2.0 * h);
        fd = fd.max((numeric - lobachevsky_derivative(t).unwrap()).abs());
    }
    let mut oracle: f64 = 0.0;
    for i in 0..100 {
        let t = PI * (i as f64 + 0.5) / 100.0;
        oracle = oracle.max((lobachevsky(t) - lobachevsky_reference(t, 1e-12).unwrap()).abs());
    }
    let ok = odd <= 1e-12 && period <= 1e-12 && reflect <= 1e-12 && fd <= 1e-6 && oracle <= 1e-10;
    report(
        1,
        ok,
        format!("odd {odd:.1e}, period {period:.1e}, reflection {reflect:.1e}, fd {fd:.1e}, oracle {oracle:.1e}"),
    );
}

fn membership_examples() {
    let a = classify(
        &DecoratedLengths::from_array([1.0, 1.0, 1.0, 2.0, 2.0, 2.0]),
        DEFAULT_CLASSIFY_TOL,
    );
    let e = |x: f64| x.exp();
    let c =
        2.0 * e(6.0) + e(2.0) + e(4.0) - 2.0 * e(3.0) * ((1.0 + e(2.0)) * (1.0 + e(4.0))).sqrt();
    let b = classify(
        &DecoratedLengths::from_array([1.0, 1.0, 1.0, 6.0, 4.0, 2.0 + c.ln()]),
        DEFAULT_CLASSIFY_TOL,
    );
    let ok = a == Ok(RegionLabel::InteriorL) && b != Ok(RegionLabel::InteriorL);
    report(
        2,
        ok,
        format!("(1,1,1,2,2,2) -> {a:?}; c = {c:.6}, second example -> {b:?}"),
    );
}

fn round_trip() {
    let mut r = rng(3);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let a = interior_angles(&mut r, 0.05);
        let l = angles_to_lengths(&a).unwrap();
        worst = worst.max(max_diff(&extended_angles(&l).to_array(), &a.to_array()));
    }
    report(
        3,
        worst <= 1e-10,
        format!("max slot error {worst:.2e} over 1000 angle vectors"),
    );
}

/// Angle at the vertex between sides `a` and `b` of a hyperbolic triangle
/// with opposite side `c`.
fn hyperbolic_cosine_law(a: f64, b: f64, c: f64) -> f64 {
    (a.cosh() * b.cosh() - c.cosh()) / (a.sinh() * b.sinh())
}

fn euclidean_cosine_law(a: f64, b: f64, c: f64) -> f64 {
    (a * a + b * b - c * c) / (2.0 * a * b)
}

fn consistency() {
    let mut r = rng(4);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let l = random_lengths(&mut r, 3.0);
        let p = phi(&l);
        let th = theta_table(&l);
        for (slot, &value) in p.iter().enumerate() {
            let (alt1, alt2) = match slot {
                0..=2 => {
                    let i = slot as u8 + 2;
                    let mut o = [2u8, 3, 4].into_iter().filter(|&v| v != i);
                    let (j, k) = (o.next().unwrap(), o.next().unwrap());
                    (
                        hyperbolic_cosine_law(
                            th.hyperbolic(i, j),
                            th.hyperbolic(i, k),
                            th.hyperbolic(j, k),
                        ),
                        euclidean_cosine_law(
                            th.euclidean(i, 1, j),
                            th.euclidean(i, 1, k),
                            th.euclidean(i, j, k),
                        ),
                    )
                }
                _ => {
                    let (j, k) = [(2u8, 3u8), (2, 4), (3, 4)][slot - 3];
                    let i = 9 - j - k;
                    (
                        euclidean_cosine_law(
                            th.euclidean(k, 1, j),
                            th.euclidean(k, i, j),
                            th.euclidean(k, 1, i),
                        ),
                        euclidean_cosine_law(
                            th.euclidean(j, 1, k),
                            th.euclidean(j, i, k),
                            th.euclidean(j, 1, i),
                        ),
                    )
                }
            };
            worst = worst.max((alt1 - value).abs()).max((alt2 - value).abs());
        }
    }
    report(
        4,
        worst <= 1e-10,
        format!("max disagreement {worst:.2e} over 10^4 length vectors"),
    );
}

fn region_identities() {
    const BAND: f64 = 1e-12;
    let mut r = rng(5);
    let mut violations = 0;
    let mut counted = 0;
    let mut degenerate = 0;
    for _ in 0..100_000 {
        let l = random_lengths(&mut r, 3.0);
        let p = phi(&l);
        if p.iter()
            .any(|&x| (x + 1.0).abs() <= BAND || (x - 1.0).abs() <= BAND)
        {
            continue;
        }
        counted += 1;
        let le = |i: usize| p[i] <= -1.0;
        if le(0) || le(1) || le(2) {
            degenerate += 1;
        }
        let mut ok = le(0) == le(5) && le(1) == le(4) && le(2) == le(3);
        ok &= [le(0), le(1), le(2)].iter().filter(|&&x| x).count() <= 1;
        for (i, &v) in p.iter().take(3).enumerate() {
            let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
            let exactly_one = le(others[0]) != le(others[1]);
            ok &= (v >= 1.0) == exactly_one;
        }
        if !ok {
            violations += 1;
        }
    }

    let mut lemma_violations = 0;
    let mut lemma_counted = 0;
    for _ in 0..100_000 {
        let [x, y, z, d]: [f64; 4] = std::array::from_fn(|_| r.gen_range(-4.0f64..4.0).exp());
        let root = 2.0 * (x * y).sqrt() * (1.0 + x / d).sqrt() * (1.0 + y / d).sqrt();
        let root2 = 2.0 * (x * y + x * y * z / d).sqrt();
        let lhs = [
            x + y + 2.0 * x * y / d + root,
            x + y + root2,
            x + y + 2.0 * x * y / d - root,
            x + y - root2,
        ];
        if lhs.iter().any(|&v| (v - z).abs() <= BAND * (v.abs() + z)) {
            continue;
        }
        lemma_counted += 1;
        if (lhs[0] <= z) != (lhs[1] <= z) || (lhs[2] >= z) != (lhs[3] >= z) {
            lemma_violations += 1;
        }
    }
    report(
        5,
        violations == 0 && lemma_violations == 0,
        format!(
            "{violations} sign-pattern violations in {counted} samples ({degenerate} degenerate), \
             {lemma_violations} inequality-lemma violations in {lemma_counted} samples"
        ),
    );
}

fn schlafli() {
    let mut r = rng(6);
    let h = 1e-5;
    let mut worst_fd: f64 = 0.0;
    let mut worst_analytic: f64 = 0.0;
    for _ in 0..100 {
        let a = interior_angles(&mut r, 0.05);
        let u = a.hyperideal();
        let l = angles_to_lengths(&a).unwrap().to_array();
        let (l12, l13, l14, l23, l24, l34) = (l[0], l[1], l[2], l[3], l[4], l[5]);
        let expected = [
            (l23 + l24 - l34) / 2.0 - l12,
            (l23 + l34 - l24) / 2.0 - l13,
            (l24 + l34 - l23) / 2.0 - l14,
        ];
        let grad = volume_gradient(&a).unwrap();
        for m in 0..3 {
            let mut up = u;
            let mut dn = u;
            up[m] += h;
            dn[m] -= h;
            let fd = (twice_volume_at(up) - twice_volume_at(dn)) / (2.0 * h);
            worst_fd = worst_fd.max((fd - expected[m]).abs());
            worst_analytic = worst_analytic.max((2.0 * grad[m] - expected[m]).abs());
        }
    }
    report(
        6,
        worst_fd <= 1e-6 && worst_analytic <= 1e-6,
        format!(
            "fd error {worst_fd:.2e}, analytic error {worst_analytic:.2e} at 100 angle vectors"
        ),
    );
}

/// A point of `X₁`: `θ¹_34 = θ¹_23 + θ¹_24`, solved for `l_34`.
fn point_on_x1(r: &mut ChaCha8Rng) -> DecoratedLengths {
    let mut l = random_lengths(r, 2.0).to_array();
    let th = theta_table(&DecoratedLengths::from_array(l));
    let target = th.t1_23 + th.t1_24;
    let e34 = 2.0 * (target / 2.0).sinh().ln();
    l[5] = e34 + l[1] + l[2];
    DecoratedLengths::from_array(l)
}

fn c1_extension() {
    let mut r = rng(7);
    let h = 1e-6;
    let fd_error = |l: &DecoratedLengths| -> (f64, f64) {
        let g = covolume_gradient(l);
        let bitwise = max_diff(&g, &extended_angles(l).to_array());
        let fd: Vec<f64> = (0..6)
            .map(|s| (covolume(&shifted(l, s, h)) - covolume(&shifted(l, s, -h))) / (2.0 * h))
            .collect();
        (bitwise, max_diff(&fd, &g))
    };
    let mut worst_eq: f64 = 0.0;
    let mut worst_fd: f64 = 0.0;
    for _ in 0..500 {
        let (e, f) = fd_error(&random_lengths(&mut r, 3.0));
        worst_eq = worst_eq.max(e);
        worst_fd = worst_fd.max(f);
    }
    let mut worst_straddle: f64 = 0.0;
    let mut sides_ok = true;
    let mut pairs = 0;
    while pairs < 100 {
        let x = point_on_x1(&mut r);
        let inside = shifted(&x, 5, -1e-3);
        let outside = shifted(&x, 5, 1e-3);
        if classify(&inside, DEFAULT_CLASSIFY_TOL) != Ok(RegionLabel::InteriorL) {
            continue;
        }
        sides_ok &= classify(&outside, DEFAULT_CLASSIFY_TOL) == Ok(RegionLabel::Omega1);
        for p in [inside, outside] {
            let (e, f) = fd_error(&p);
            worst_eq = worst_eq.max(e);
            worst_straddle = worst_straddle.max(f);
        }
        pairs += 1;
    }
    let ok = worst_eq == 0.0 && worst_fd <= 1e-6 && worst_straddle <= 1e-6 && sides_ok;
    report(
        7,
        ok,
        format!(
            "gradient vs angles {worst_eq:.1e}, fd {worst_fd:.2e}, straddling X1 fd {worst_straddle:.2e} \
             ({pairs} pairs, sides {})",
            if sides_ok { "ok" } else { "wrong" }
        ),
    );
}

fn hessian_structure() {
    let mut r = rng(8);
    let mut ok = true;
    let mut worst_neg: f64 = 0.0;
    let mut worst_null: f64 = 0.0;
    let mut ranks = Vec::new();
    for _ in 0..20 {
        let a = interior_angles(&mut r, 0.05);
        let l = apply_decoration(
            &angles_to_lengths(&a).unwrap(),
            &random_decoration(&mut r, 1.0),
        );
        let h = covolume_hessian(&l, 1e-5).unwrap();
        let eig = SymmetricEigen::new(h);
        let norm = eig.eigenvalues.amax();
        let min = eig.eigenvalues.min();
        let rank = eig.eigenvalues.iter().filter(|&&x| x > 1e-4 * norm).count();
        let null = GAUGE_BASIS
            .iter()
            .map(|v| {
                let v = nalgebra::Vector6::from_row_slice(v).normalize();
                (h * v).norm()
            })
            .fold(0.0f64, f64::max);
        worst_neg = worst_neg.max(-min / norm);
        worst_null = worst_null.max(null / norm);
        ranks.push(rank);
        ok &= min >= -1e-8 * norm && rank == 3 && null <= 1e-4 * norm;
    }
    report(
        8,
        ok,
        format!(
            "worst -λmin/‖H‖ {worst_neg:.2e}, worst ‖Hv‖/‖H‖ {worst_null:.2e}, ranks {ranks:?}"
        ),
    );
}

fn boundary_face() {
    let mut r = rng(9);
    let h = 2e-4;
    let mut worst_fd: f64 = 0.0;
    let mut worst_det: f64 = 0.0;
    let mut n = 0;
    while n < 100 {
        let (a, b) = (r.gen_range(0.05..PI), r.gen_range(0.05..PI));
        if a + b >= PI - 0.05 {
            continue;
        }
        n += 1;
        let f = |x: f64, y: f64| twice_volume_at([0.0, x, y]);
        let second = |h: f64| {
            let f0 = f(a, b);
            let haa = (f(a + h, b) - 2.0 * f0 + f(a - h, b)) / (h * h);
            let hbb = (f(a, b + h) - 2.0 * f0 + f(a, b - h)) / (h * h);
            let hab = (f(a + h, b + h) - f(a + h, b - h) - f(a - h, b + h) + f(a - h, b - h))
                / (4.0 * h * h);
            Matrix2::new(haa, hab, hab, hbb)
        };
        // Richardson extrapolation of the central second differences.
        let fd = (second(h) * 4.0 - second(2.0 * h)) / 3.0;
        let analytic = boundary_face_hessian(a, b).unwrap();
        worst_fd = worst_fd.max((fd - analytic).amax());
        let (t, t2) = ((a / 2.0).tan(), (b / 2.0).tan());
        let closed = 0.25 * (1.0 + t * t2).powi(2) / (t * t2);
        worst_det = worst_det.max((analytic.determinant() - closed).abs());
    }
    report(
        9,
        worst_fd <= 1e-5 && worst_det <= 1e-10,
        format!("fd error {worst_fd:.2e}, determinant error {worst_det:.2e} at 100 face points"),
    );
}

fn triangle_identity() {
    let mut r = rng(10);
    let mut worst: f64 = 0.0;
    let mut n = 0;
    while n < 10_000 {
        let (a, b, c) = (
            r.gen_range(0.01..PI),
            r.gen_range(0.01..PI),
            r.gen_range(0.01..PI),
        );
        if a + b + c >= PI - 0.01 {
            continue;
        }
        n += 1;
        let (_, sb, sc) = hyperbolic_triangle_sides(a, b, c).unwrap();
        let lhs = ((b + c - a) / 2.0).cos().powi(2) / ((a + b + c) / 2.0).cos().powi(2);
        let rhs = 1.0 / ((sb / 2.0).tanh().powi(2) * (sc / 2.0).tanh().powi(2));
        worst = worst.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()));
    }
    report(
        10,
        worst <= 1e-10,
        format!("max relative error {worst:.2e} over 10^4 triangles"),
    );
}

fn metric_distance(t: &Triangulation, a: &GeneralizedMetric, b: &GeneralizedMetric) -> f64 {
    let (a, b) = (gauge_project(t, a), gauge_project(t, b));
    a.lengths
        .iter()
        .zip(&b.lengths)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn optimization_fixtures() {
    let mut r = rng(11);
    let mut ok = true;
    let mut worst = [0.0f64; 4];
    let mut slowest = Duration::ZERO;
    let mut n = 0;
    while n < 10 {
        let a = interior_angles(&mut r, 0.1);
        let l0 = apply_decoration(
            &angles_to_lengths(&a).unwrap(),
            &random_decoration(&mut r, 1.0),
        );
        let Ok(fx) = doubled_fixture(&l0) else {
            continue;
        };
        n += 1;
        let started = Instant::now();
        let t = &fx.triangulation;
        let primal = maximize_volume(t, &fx.target, 1e-10).unwrap();
        let primal_err = primal
            .maximizer
            .tets
            .iter()
            .zip(&fx.assignment.tets)
            .map(|(x, y)| max_diff(&x.to_array(), &y.to_array()))
            .fold(0.0f64, f64::max);
        let dual = solve_cone_angles(t, &fx.target, 1e-11).unwrap();
        let dual_err = if dual.diverged {
            f64::INFINITY
        } else {
            metric_distance(t, &dual.metric, &fx.metric)
        };
        let gap = duality_gap(t, &fx.target, 1e-10).unwrap().relative;
        let rig = rigidity_check(t, &fx.target, 5, 1e-6).unwrap();
        let elapsed = started.elapsed();
        slowest = slowest.max(elapsed);
        for (w, v) in worst
            .iter_mut()
            .zip([primal_err, dual_err, gap, rig.pairwise_distance])
        {
            *w = w.max(v);
        }
        ok &= primal_err <= 1e-6
            && dual_err <= 1e-6
            && gap <= 1e-6
            && rig.all_agree
            && rig.excluded.is_empty()
            && rig.pairwise_distance <= 1e-6
            && elapsed < Duration::from_secs(10);
    }
    report(
        11,
        ok,
        format!(
            "primal {:.1e}, dual {:.1e}, gap {:.1e}, rigidity {:.1e}, slowest fixture {:.2}s",
            worst[0],
            worst[1],
            worst[2],
            worst[3],
            slowest.as_secs_f64()
        ),
    );
}

/// Places `l` in `Ω_k` by pushing the θ¹ side opposite vertex `k + 2` past the
/// sum of the other two.
fn point_in_omega(r: &mut ChaCha8Rng, k: usize) -> DecoratedLengths {
    let mut l = random_lengths(r, 2.0).to_array();
    let th = theta_table(&DecoratedLengths::from_array(l));
    let sides = [th.t1_34, th.t1_24, th.t1_23];
    let others: f64 = sides.iter().sum::<f64>() - sides[k];
    let target = others + r.gen_range(1e-6f64..3.0);
    let e = 2.0 * (target / 2.0).sinh().ln();
    // Opposite ideal edge and its two hyperideal neighbours.
    let (slot, a, b) = [(5, 1, 2), (4, 0, 2), (3, 0, 1)][k];
    l[slot] = e + l[a] + l[b];
    DecoratedLengths::from_array(l)
}

fn extended_constants() {
    let mut r = rng(12);
    let labels = [
        RegionLabel::Omega1,
        RegionLabel::Omega2,
        RegionLabel::Omega3,
    ];
    let mut mismatches = 0;
    let mut counts = [0usize; 3];
    for k in 0..3 {
        while counts[k] < 1000 {
            let l = if counts[k] % 2 == 0 {
                point_in_omega(&mut r, k)
            } else {
                random_lengths(&mut r, 3.0)
            };
            if classify(&l, DEFAULT_CLASSIFY_TOL) != Ok(labels[k]) {
                continue;
            }
            counts[k] += 1;
            let got = extended_angles(&l).to_array();
            let want = B_II[k].to_array();
            if got
                .iter()
                .zip(&want)
                .any(|(x, y)| x.to_bits() != y.to_bits())
            {
                mismatches += 1;
            }
        }
    }
    report(
        12,
        mismatches == 0,
        format!("{mismatches} non-bitwise results over {counts:?} samples"),
    );
}

fn feasibility_certification() {
    let mut r = rng(13);
    let mut cases: Vec<(Triangulation, ConeTarget)> = Vec::new();
    for _ in 0..5 {
        let a = interior_angles(&mut r, 0.1);
        let fx = doubled_fixture(&angles_to_lengths(&a).unwrap()).unwrap();
        cases.push((fx.triangulation, fx.target));
    }
    for n in [2usize, 4, 6, 8] {
        for _ in 0..3 {
            let t = random_closed_triangulation(n, &mut r).unwrap();
            let assignment = AngleAssignment {
                tets: (0..n).map(|_| interior_angles(&mut r, 0.05)).collect(),
            };
            let k = cone_angles(&t, &assignment);
            cases.push((t.clone(), k));
            let metric = GeneralizedMetric {
                lengths: (0..t.n_edges()).map(|_| r.gen_range(-1.0..1.0)).collect(),
            };
            let k = cone_angles(&t, &assignment_from_metric(&t, &metric));
            cases.push((t, k));
        }
    }
    let mut interior = 0;
    let mut failures = 0;
    let mut zero_feasible = 0;
    for (t, k) in &cases {
        let report = find_interior(t, k, LP_SLACK_TOL).unwrap();
        if report.status == FeasibilityStatus::InteriorFound {
            interior += 1;
            let witness = report.witness.as_ref().unwrap();
            if is_member(t, witness, k, LP_SLACK_TOL / 10.0).verdict != MemberVerdict::InteriorDk {
                failures += 1;
            }
        }
        let zero = ConeTarget {
            k: vec![0.0; t.n_edges()],
        };
        if find_interior(t, &zero, LP_SLACK_TOL).unwrap().status != FeasibilityStatus::Infeasible {
            zero_feasible += 1;
        }
    }
    report(
        13,
        failures == 0 && zero_feasible == 0,
        format!(
            "{interior}/{} witnesses found, {failures} failed re-verification, k = 0 feasible {zero_feasible} times",
            cases.len()
        ),
    );
}

#[test]
fn acceptance() {
    let started = Instant::now();
    lobachevsky_suite();
    membership_examples();
    round_trip();
    consistency();
    region_identities();
    schlafli();
    c1_extension();
    hessian_structure();
    boundary_face();
    triangle_identity();
    optimization_fixtures();
    extended_constants();
    feasibility_certification();
    println!(
        "acceptance finished in {:.1}s",
        started.elapsed().as_secs_f64()
    );
}
