//! Randomized invariant suites run by `hyptet selftest`.

use std::f64::consts::PI;

use hyptet::lobachevsky::{lobachevsky, lobachevsky_derivative, lobachevsky_reference};
use hyptet::tetra::{
    angles_to_lengths, extended_angles, hyperbolic_triangle_sides, phi, theta_table,
    volume_from_angles, DecoratedLengths, DihedralAngles,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const SELFTEST_SEED: u64 = 0x5e1f_7e57;

#[derive(Debug, Serialize)]
pub struct Suite {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub passed: usize,
    pub failed: usize,
}

struct Tally {
    passed: usize,
    failed: usize,
}

impl Tally {
    fn new() -> Self {
        Self {
            passed: 0,
            failed: 0,
        }
    }

    fn check(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }

    fn finish(self, name: &'static str) -> Suite {
        Suite {
            name,
            passed: self.passed,
            failed: self.failed,
        }
    }
}

fn lengths(rng: &mut ChaCha8Rng, r: f64) -> DecoratedLengths {
    DecoratedLengths::from_array(std::array::from_fn(|_| rng.gen_range(-r..=r)))
}

fn interior_angles(rng: &mut ChaCha8Rng, margin: f64) -> DihedralAngles {
    loop {
        let u = [
            rng.gen_range(margin..PI),
            rng.gen_range(margin..PI),
            rng.gen_range(margin..PI),
        ];
        let a = DihedralAngles::from_hyperideal(u);
        if u.iter().sum::<f64>() < PI - margin
            && a.to_array()
                .iter()
                .all(|&x| x >= margin && x <= PI - margin)
        {
            return a;
        }
    }
}

fn lobachevsky_identities(rng: &mut ChaCha8Rng) -> Suite {
    let mut t = Tally::new();
    for _ in 0..2000 {
        let x = rng.gen_range(-10.0..=10.0);
        t.check((lobachevsky(-x) + lobachevsky(x)).abs() <= 1e-12);
        t.check((lobachevsky(x + PI) - lobachevsky(x)).abs() <= 1e-12);
        let s = rng.gen_range(0.0..PI);
        t.check((lobachevsky(PI - s) + lobachevsky(s)).abs() <= 1e-12);
    }
    let h = 1e-6;
    for _ in 0..500 {
        let x = rng.gen_range(0.1..PI - 0.1);
        let fd = (lobachevsky(x + h) - lobachevsky(x - h)) / (2.0 * h);
        t.check(lobachevsky_derivative(x).is_ok_and(|d| (d - fd).abs() <= 1e-6));
    }
    for i in 0..100 {
        let x = PI * (i as f64 + 0.5) / 100.0;
        t.check(lobachevsky_reference(x, 1e-12).is_ok_and(|r| (r - lobachevsky(x)).abs() <= 1e-10));
    }
    t.finish("lobachevsky identities")
}

fn cosine_law_h(a: f64, b: f64, c: f64) -> f64 {
    (a.cosh() * b.cosh() - c.cosh()) / (a.sinh() * b.sinh())
}

fn cosine_law_e(a: f64, b: f64, c: f64) -> f64 {
    (a * a + b * b - c * c) / (2.0 * a * b)
}

fn consistency_equations(rng: &mut ChaCha8Rng) -> Suite {
    let mut t = Tally::new();
    for _ in 0..2000 {
        let l = lengths(rng, 3.0);
        let p = phi(&l);
        let th = theta_table(&l);
        for i in 2..=4u8 {
            let mut o = (2..=4u8).filter(|&v| v != i);
            let (j, k) = (o.next().unwrap(), o.next().unwrap());
            let v = p[(i - 2) as usize];
            let hyp = cosine_law_h(
                th.hyperbolic(i, j),
                th.hyperbolic(i, k),
                th.hyperbolic(j, k),
            );
            let euc = cosine_law_e(
                th.euclidean(i, 1, j),
                th.euclidean(i, 1, k),
                th.euclidean(i, j, k),
            );
            t.check((hyp - v).abs() <= 1e-10 && (euc - v).abs() <= 1e-10);
            // φ_jk from the horosphere sections at j and at k.
            let w = p[[5, 4, 3][(i - 2) as usize]];
            let at_k = cosine_law_e(
                th.euclidean(k, 1, j),
                th.euclidean(k, i, j),
                th.euclidean(k, 1, i),
            );
            let at_j = cosine_law_e(
                th.euclidean(j, 1, k),
                th.euclidean(j, i, k),
                th.euclidean(j, 1, i),
            );
            t.check((at_k - w).abs() <= 1e-10 && (at_j - w).abs() <= 1e-10);
        }
    }
    t.finish("consistency equations")
}

fn region_identities(rng: &mut ChaCha8Rng) -> Suite {
    const BAND: f64 = 1e-12;
    let mut t = Tally::new();
    for _ in 0..20_000 {
        let p = phi(&lengths(rng, 3.0));
        if p.iter().any(|&x| (x.abs() - 1.0).abs() <= BAND) {
            continue;
        }
        let le = |i: usize| p[i] <= -1.0;
        let mut ok = le(0) == le(5) && le(1) == le(4) && le(2) == le(3);
        ok &= (0..3).filter(|&i| le(i)).count() <= 1;
        for (i, &v) in p.iter().take(3).enumerate() {
            let o: Vec<usize> = (0..3).filter(|&j| j != i).collect();
            ok &= (v >= 1.0) == (le(o[0]) != le(o[1]));
        }
        t.check(ok);
    }
    t.finish("region identities")
}

fn schlafli(rng: &mut ChaCha8Rng) -> Suite {
    let mut t = Tally::new();
    let h = 1e-5;
    let twice = |u: [f64; 3]| {
        2.0 * volume_from_angles(&DihedralAngles::from_hyperideal(u)).unwrap_or(f64::NAN)
    };
    for _ in 0..100 {
        let a = interior_angles(rng, 0.05);
        let Ok(l) = angles_to_lengths(&a) else {
            t.check(false);
            continue;
        };
        let l = l.to_array();
        let expected = [
            (l[3] + l[4] - l[5]) / 2.0 - l[0],
            (l[3] + l[5] - l[4]) / 2.0 - l[1],
            (l[4] + l[5] - l[3]) / 2.0 - l[2],
        ];
        let u = a.hyperideal();
        for m in 0..3 {
            let (mut up, mut dn) = (u, u);
            up[m] += h;
            dn[m] -= h;
            let fd = (twice(up) - twice(dn)) / (2.0 * h);
            t.check((fd - expected[m]).abs() <= 1e-6);
        }
    }
    t.finish("schlafli formula")
}

fn inequality_lemmas(rng: &mut ChaCha8Rng) -> Suite {
    const BAND: f64 = 1e-12;
    let mut t = Tally::new();
    for _ in 0..20_000 {
        let [x, y, z, d]: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-4.0f64..4.0).exp());
        let r1 = 2.0 * (x * y).sqrt() * (1.0 + x / d).sqrt() * (1.0 + y / d).sqrt();
        let r2 = 2.0 * (x * y + x * y * z / d).sqrt();
        let lhs = [
            x + y + 2.0 * x * y / d + r1,
            x + y + r2,
            x + y + 2.0 * x * y / d - r1,
            x + y - r2,
        ];
        if lhs.iter().any(|&v| (v - z).abs() <= BAND * (v.abs() + z)) {
            continue;
        }
        t.check((lhs[0] <= z) == (lhs[1] <= z) && (lhs[2] >= z) == (lhs[3] >= z));
    }
    let mut n = 0;
    while n < 2000 {
        let (a, b, c) = (
            rng.gen_range(0.01..PI),
            rng.gen_range(0.01..PI),
            rng.gen_range(0.01..PI),
        );
        if a + b + c >= PI - 0.01 {
            continue;
        }
        n += 1;
        let ok = hyperbolic_triangle_sides(a, b, c).is_ok_and(|(_, sb, sc)| {
            let lhs = ((b + c - a) / 2.0).cos().powi(2) / ((a + b + c) / 2.0).cos().powi(2);
            let rhs = 1.0 / ((sb / 2.0).tanh().powi(2) * (sc / 2.0).tanh().powi(2));
            (lhs - rhs).abs() <= 1e-10 * lhs.abs().max(rhs.abs())
        });
        t.check(ok);
    }
    for _ in 0..1000 {
        let a = interior_angles(rng, 0.05);
        let ok = angles_to_lengths(&a).is_ok_and(|l| {
            let back = extended_angles(&l).to_array();
            back.iter()
                .zip(a.to_array())
                .all(|(x, y)| (x - y).abs() <= 1e-10)
        });
        t.check(ok);
    }
    t.finish("inequality lemmas and round trip")
}

pub fn run(seed: u64) -> Summary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let suites = vec![
        lobachevsky_identities(&mut rng),
        consistency_equations(&mut rng),
        region_identities(&mut rng),
        schlafli(&mut rng),
        inequality_lemmas(&mut rng),
    ];
    let passed = suites.iter().map(|s| s.passed).sum();
    let failed = suites.iter().map(|s| s.failed).sum();
    Summary {
        seed,
        suites,
        passed,
        failed,
    }
}
