//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance`. Set `ACCEPTANCE_ONLY=4,6` to run a subset.
//! Every tolerance is pinned here. A failing criterion is printed as FAIL and
//! counted in the final line.

use std::f64::consts::PI;
use std::path::Path;
use std::time::Instant;

use fh_lab::analysis::{
    fejer_riesz_check, hardy_inner_product_quadrature, hilbert_pairing_check, schwarz_pick_check, QuadratureSpec,
    DEFAULT_SEED,
};
use fh_lab::harness::scenarios::carleson_sup;
use fh_lab::harness::verdict::{BOUNDED_RANGE, GROWTH_RATIO, KREISS_GROWTH, KREISS_SPREAD};
use fh_lab::harness::{run_scenario, ExperimentConfig};
use fh_lab::sections::{
    analytic_toeplitz, coanalytic_toeplitz, compress_block2x2, foguel_hankel, hilbert_matrix, matmul, poly_calculus,
    power_closed_form, FoguelHankelSpec,
};
use fh_lab::spectral::{
    hilbert_kreiss_witness, kreiss_lower_witness, kreiss_scan, power_norm_sequence, spectral_norm, KreissSchedule,
};
use fh_lab::symbols::catalog::{catalog_maps, hilbert, identity_map, lacunary_bloch, lens, moebius};
use fh_lab::symbols::{PowerSeries, SelfMap};
use fh_lab::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> Vec<C64> {
    (0..=degree)
        .map(|_| C64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
        .collect()
}

fn max_entry_diff(a: &nalgebra::DMatrix<C64>, b: &nalgebra::DMatrix<C64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn c1_inner_product() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let q = QuadratureSpec::new(16, 64, 1e-10);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (df, dg) = (rng.random_range(0..=16), rng.random_range(0..=16));
        let (a, b) = (random_poly(&mut rng, df), random_poly(&mut rng, dg));
        // <f, g> = sum a_k conj(b_k)
        let exact: C64 = a.iter().zip(&b).map(|(x, y)| x * y.conj()).sum();
        let f = PowerSeries::explicit("f", a);
        let g = PowerSeries::explicit("g", b);
        match hardy_inner_product_quadrature(&f, &g, &q) {
            Ok(v) => worst = worst.max((v - exact).norm()),
            Err(e) => return outcome(false, format!("quadrature error: {e}")),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-6 && secs <= 60.0,
        format!("max |quadrature - coefficients| = {worst:e} (<= 1e-6), {secs:.1} s (<= 60 s)"),
    )
}

fn c2_algebraic_exactness() -> Outcome {
    let n = 64;
    let mut maps = catalog_maps();
    maps.push(moebius(C64::new(0.3, 0.4)).unwrap());
    let mut worst = 0.0f64;
    for phi in &maps {
        let co = coanalytic_toeplitz(phi.series(), n);
        let adj = analytic_toeplitz(&phi.series().tilde(), n).entries().adjoint();
        worst = worst.max(max_entry_diff(co.entries(), &adj));
    }
    let mut bitwise = true;
    for phi in [lens(), identity_map(), moebius(c(0.5)).unwrap()] {
        for f in [hilbert(), lacunary_bloch()] {
            let spec = FoguelHankelSpec::new(f, phi.clone(), n);
            let g = foguel_hankel(&spec);
            bitwise &= power_closed_form(&spec, 1).unwrap().entries() == g.entries();
            bitwise &= poly_calculus(&spec, &[c(0.0), c(1.0)]).unwrap().entries() == g.entries();
        }
    }
    outcome(
        worst <= 1e-15 && bitwise,
        format!("adjoint identity max error {worst:e} (<= 1e-15) over {} maps; first power and p(z) = z bit-identical: {bitwise}", maps.len()),
    )
}

fn c3_closed_form_vs_direct() -> Outcome {
    let n = 64;
    let spec = FoguelHankelSpec::new(hilbert(), lens(), n);
    let mut worst = 0.0f64;
    for p in 1..=16usize {
        let k = n + 2 * p;
        let big = foguel_hankel(&spec.with_truncation(k));
        let mut acc = big.entries().clone();
        for _ in 1..p {
            acc = matmul(&acc, big.entries());
        }
        let direct = compress_block2x2(&acc, k, n);
        let closed = power_closed_form(&spec.clone().with_headroom(k).unwrap(), p).unwrap();
        worst = worst.max(max_entry_diff(&direct, closed.entries()));
    }
    outcome(
        worst <= 1e-8,
        format!("max entry difference {worst:e} over n <= 16 at N = 64, K = N + 2n (<= 1e-8)"),
    )
}

fn c4_peller() -> Outcome {
    let start = Instant::now();
    let powers: Vec<usize> = (1..=10).map(|k| 10 * k).collect();
    let h = match power_norm_sequence(&FoguelHankelSpec::new(hilbert(), identity_map(), 2048), &powers, 1e-10) {
        Ok(s) => s,
        Err(e) => return outcome(false, format!("hilbert powers: {e}")),
    };
    let l = match power_norm_sequence(
        &FoguelHankelSpec::new(lacunary_bloch(), identity_map(), 2048),
        &powers,
        1e-10,
    ) {
        Ok(s) => s,
        Err(e) => return outcome(false, format!("lacunary powers: {e}")),
    };
    let hv: Vec<f64> = h.values.iter().map(|p| p.1).collect();
    let increasing = hv.windows(2).all(|w| w[1] > w[0]);
    let ratio = hv[9] / hv[0];
    let lv: Vec<f64> = l.values.iter().map(|p| p.1).collect();
    let (hi, lo) = (
        lv.iter().cloned().fold(f64::MIN, f64::max),
        lv.iter().cloned().fold(f64::MAX, f64::min),
    );
    let raw_range = (hi - lo) / hi;
    let mut sup = 0.0f64;
    let sups: Vec<f64> = lv
        .iter()
        .map(|&v| {
            sup = sup.max(v);
            sup
        })
        .collect();
    let sup_range = (sups[9] - sups[0]) / sups[9];
    let secs = start.elapsed().as_secs_f64();
    outcome(
        increasing && ratio > GROWTH_RATIO && raw_range <= BOUNDED_RANGE && secs <= 600.0,
        format!(
            "hilbert strictly increasing: {increasing}, ratio {ratio:.4} (> {GROWTH_RATIO}); \
             lacunary last-decade range {raw_range:.4} (<= {BOUNDED_RANGE}), running-sup range {sup_range:.4}; {secs:.0} s (<= 600 s)"
        ),
    )
}

fn c5_power_bounded() -> Outcome {
    let powers: Vec<usize> = (1..=20).chain((25..=200).step_by(5)).collect();
    let mut lines = Vec::new();
    let mut pass = true;
    for phi in [lens(), moebius(c(0.5)).unwrap()] {
        let name = phi.name().to_string();
        let seq = match power_norm_sequence(&FoguelHankelSpec::new(lacunary_bloch(), phi, 2048), &powers, 1e-8) {
            Ok(s) => s,
            Err(e) => return outcome(false, format!("{name}: {e}")),
        };
        let sup = seq.running_sup();
        let window: Vec<f64> = seq
            .values
            .iter()
            .zip(&sup)
            .filter(|(p, _)| p.0 >= 20)
            .map(|(_, s)| *s)
            .collect();
        let range = (window[window.len() - 1] - window[0]) / window[window.len() - 1];
        pass &= range <= BOUNDED_RANGE;
        lines.push(format!(
            "{name}: sup range on [20, 200] {range:.4}, sup {:.4}",
            sup[sup.len() - 1]
        ));
    }
    outcome(pass, format!("{} (<= {BOUNDED_RANGE})", lines.join("; ")))
}

fn c6_kreiss_dichotomy() -> Outcome {
    let schedule = KreissSchedule {
        shells: (1..=12).map(|k| 1.0 + 0.5f64.powi(k)).collect(),
        angles: 32,
        refine_depth: 4,
        tol: 1e-6,
    };
    let scan = |phi: &SelfMap| -> Result<Vec<f64>, String> {
        [128, 256, 512]
            .into_iter()
            .map(|n| {
                kreiss_scan(&FoguelHankelSpec::new(hilbert(), phi.clone(), n), &schedule)
                    .map(|r| r.estimate)
                    .map_err(|e| e.to_string())
            })
            .collect()
    };
    let (lens_est, id_est) = match (scan(&lens()), scan(&identity_map())) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return outcome(false, e),
    };
    let hi = lens_est.iter().cloned().fold(f64::MIN, f64::max);
    let lo = lens_est.iter().cloned().fold(f64::MAX, f64::min);
    let spread = (hi - lo) / hi;
    let growth = id_est[2] / id_est[0];
    let mut witness_ok = true;
    let mut w = Vec::new();
    let rule = 1e-10;
    for r in [0.9, 0.99] {
        let bound = 1.0 / (6.0 * (1.0 - r)) * (1.0 - rule);
        match hilbert_kreiss_witness(&identity_map(), c(r), 1.0 - r) {
            Ok(v) => {
                witness_ok &= v >= bound;
                w.push(format!("W({r}) = {v:.4} >= {bound:.4}"));
            }
            Err(e) => return outcome(false, format!("witness at {r}: {e}")),
        }
    }
    outcome(
        spread <= KREISS_SPREAD && growth >= KREISS_GROWTH && witness_ok,
        format!(
            "lens spread {spread:.4} (<= {KREISS_SPREAD}); identity growth 512/128 {growth:.3} (>= {KREISS_GROWTH}); {}",
            w.join(", ")
        ),
    )
}

fn c7_contractions() -> Outcome {
    let schedule = KreissSchedule::default();
    let mut worst = 0.0f64;
    let mut count = 0;
    for phi in catalog_maps()
        .into_iter()
        .chain([moebius(C64::new(0.3, -0.4)).unwrap()])
    {
        for n in [16, 64] {
            match kreiss_scan(&FoguelHankelSpec::new(PowerSeries::zero(), phi.clone(), n), &schedule) {
                Ok(r) => worst = worst.max(r.estimate),
                Err(e) => return outcome(false, format!("{}: {e}", phi.name())),
            }
            count += 1;
        }
    }
    outcome(
        worst <= 1.0 + 1e-6,
        format!("max Kreiss estimate {worst:.12} over {count} specs with f = 0 (<= 1 + 1e-6)"),
    )
}

/// `g''' ` for `g(mu) = mu^3 f(mu) = -mu^2 ln(1 - mu)`, `f` the Hilbert symbol.
fn hilbert_g3(mu: f64) -> f64 {
    let d = 1.0 - mu;
    2.0 / d + 4.0 / (d * d) + 2.0 * mu / (d * d) + 2.0 * mu * mu / (d * d * d)
}

fn c8_lower_witness() -> Outcome {
    let w = |f: &PowerSeries, grid: &[C64]| kreiss_lower_witness(f, grid).map(|r| r.estimate);
    let (a, b) = match (w(&hilbert(), &[c(0.9)]), w(&hilbert(), &[c(0.99)])) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return outcome(false, e.to_string()),
    };
    let oracle = |r: f64| (1.0 - r * r).powi(2) * hilbert_g3(r) / 6.0;
    let (oa, ob) = (oracle(0.9), oracle(0.99));
    let agree = ((a - oa) / oa).abs() <= 1e-10 && ((b - ob) / ob).abs() <= 1e-10;
    let factor = b / a;
    let exact = ob / oa;

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut polys = vec![vec![
        c(1.0),
        c(-0.5),
        c(0.25),
        c(0.0),
        c(0.0),
        c(0.0),
        c(0.0),
        c(0.0),
        c(0.125),
    ]];
    for d in 0..=8 {
        polys.push(random_poly(&mut rng, d));
    }
    let grid: Vec<C64> = [0.5, 0.9, 0.99, 0.999]
        .iter()
        .flat_map(|&r| (0..64).map(move |j| C64::from_polar(r, 2.0 * PI * j as f64 / 64.0)))
        .collect();
    let mut worst_ratio = 0.0f64;
    for p in &polys {
        // g''' = sum p_k (k+3)(k+2)(k+1) z^k
        let g3: Vec<C64> = p
            .iter()
            .enumerate()
            .map(|(k, a)| a * ((k + 3) * (k + 2) * (k + 1)) as f64)
            .collect();
        let edge = (0..4096)
            .map(|j| {
                let z = C64::from_polar(1.0, 2.0 * PI * j as f64 / 4096.0);
                g3.iter().rev().fold(c(0.0), |acc, a| acc * z + a).norm() / 6.0
            })
            .fold(0.0, f64::max);
        match w(&PowerSeries::explicit("p", p.clone()), &grid) {
            Ok(v) => worst_ratio = worst_ratio.max(v / edge),
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    outcome(
        agree && (5.0..=20.0).contains(&factor) && worst_ratio <= 1.05,
        format!(
            "hilbert growth 0.9 -> 0.99 {factor:.6} in [5, 20], closed-form factor {exact:.6}, matches oracle: {agree}; \
             {} polynomials of degree <= 8: max witness / boundary max {worst_ratio:.4} (<= 1.05)",
            polys.len()
        ),
    )
}

fn c9_inequalities() -> Outcome {
    let mut sp = f64::INFINITY;
    let maps = catalog_maps();
    for phi in &maps {
        for d in 1..=4 {
            match schwarz_pick_check(phi, d, 100_000, DEFAULT_SEED) {
                Ok(r) => sp = sp.min(r.worst_first.min(r.worst_second)),
                Err(e) => return outcome(false, format!("schwarz-pick {} d={d}: {e}", phi.name())),
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut fr = f64::INFINITY;
    for _ in 0..1000 {
        let d = rng.random_range(0..=16);
        let v = PowerSeries::explicit("v", random_poly(&mut rng, d));
        fr = fr.min(fejer_riesz_check(&v).unwrap().slack);
    }
    let q = QuadratureSpec::new(8, 32, 1e-6);
    let mut variation = 0.0f64;
    for r in [1.0, 2.0, 3.0] {
        let vals: Vec<f64> = match [64, 128, 256]
            .iter()
            .map(|&n| carleson_sup(&lens(), n, r, &q).map(|s| s.0))
            .collect()
        {
            Ok(v) => v,
            Err(e) => return outcome(false, format!("carleson r={r}: {e}")),
        };
        let hi = vals.iter().cloned().fold(f64::MIN, f64::max);
        let lo = vals.iter().cloned().fold(f64::MAX, f64::min);
        variation = variation.max((hi - lo) / hi);
    }
    outcome(
        sp >= -1e-12 && fr >= 0.0 && variation <= 0.20,
        format!(
            "schwarz-pick worst slack {sp:e} (>= -1e-12, {} maps x d <= 4 x 1e5); fejer-riesz min slack {fr:.4} (>= 0); \
             carleson max variation {variation:.4} (<= 0.20)",
            maps.len()
        ),
    )
}

/// Exact `sum a_i b_j / (i + j + 1)` for integer coefficients, over a common denominator.
fn exact_pairing(a: &[i64], b: &[i64]) -> f64 {
    let max_den = (a.len() + b.len()) as i128;
    let gcd = |mut x: i128, mut y: i128| {
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    };
    let lcm = (1..=max_den).fold(1i128, |l, k| l / gcd(l, k) * k);
    let mut num = 0i128;
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            num += (x * y) as i128 * (lcm / (i + j + 1) as i128);
        }
    }
    num as f64 / lcm as f64
}

fn c10_hilbert_matrix() -> Outcome {
    let mut prev = 0.0;
    let mut increasing = true;
    let mut below_pi = true;
    let mut at2 = 0.0;
    let mut last = 0.0;
    for n in (2..=1024).step_by(2) {
        let v = match spectral_norm(&hilbert_matrix(n), 1e-13) {
            Ok(v) => v,
            Err(e) => return outcome(false, format!("N = {n}: {e}")),
        };
        if n == 2 {
            at2 = v;
        }
        increasing &= v > prev;
        below_pi &= v < PI;
        prev = v;
        last = v;
    }
    let want = (4.0 + 13f64.sqrt()) / 6.0;
    let err2 = (at2 - want).abs();

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0f64;
    let q = QuadratureSpec::new(16, 64, 1e-12);
    for _ in 0..20 {
        let a: Vec<i64> = (0..33).map(|_| rng.random_range(-9..=9)).collect();
        let b: Vec<i64> = (0..33).map(|_| rng.random_range(-9..=9)).collect();
        let exact = exact_pairing(&a, &b);
        let to = |v: &[i64]| PowerSeries::explicit_real("p", &v.iter().map(|&x| x as f64).collect::<Vec<_>>());
        match hilbert_pairing_check(&to(&a), &to(&b), 33, &q) {
            Ok(p) => {
                worst = worst
                    .max((p.integral - c(exact)).norm())
                    .max((p.matrix - c(exact)).norm())
            }
            Err(e) => return outcome(false, format!("pairing: {e}")),
        }
    }
    outcome(
        increasing && below_pi && err2 <= 1e-12 && worst <= 1e-8,
        format!(
            "N = 2..1024 even: strictly increasing {increasing}, below pi {below_pi} (N = 1024: {last:.6}); \
             |norm(2) - (4 + sqrt 13)/6| = {err2:e} (<= 1e-12); degree-32 pairing vs exact rational sum {worst:e} (<= 1e-8)"
        ),
    )
}

fn read_tree(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                files.push((
                    p.strip_prefix(dir).unwrap().display().to_string(),
                    std::fs::read(&p).unwrap(),
                ));
            }
        }
    }
    files.sort();
    files
}

fn c11_determinism() -> Outcome {
    let configs = [
        "scenario = peller-dichotomy\ntruncations = 32, 64\npowers = 1..30",
        "scenario = kreiss-witness",
        "scenario = hilbert-foguel-kreiss\ntruncations = 16, 32\nangles = 8\nrefine_depth = 2\nradii = 0.9, 0.99",
        "scenario = lemma-suite\nsamples = 100\npowers = 16, 32",
    ];
    let mut compared = 0;
    for text in configs {
        let mut trees = Vec::new();
        for _ in 0..2 {
            let dir = tempfile::tempdir().unwrap();
            let mut cfg = ExperimentConfig::parse(text).unwrap();
            cfg.out_dir = dir.path().to_path_buf();
            if let Err(e) = run_scenario(&cfg) {
                return outcome(false, format!("{}: {e}", cfg.scenario));
            }
            trees.push(read_tree(dir.path()));
        }
        if trees[0] != trees[1] {
            return outcome(false, format!("outputs differ for `{}`", text.lines().next().unwrap()));
        }
        compared += trees[0].len();
    }
    outcome(
        true,
        format!("{compared} CSV/JSON/summary files byte-identical across two runs each of 4 scenarios"),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "weighted-area inner product identity", c1_inner_product),
        (2, "algebraic exactness", c2_algebraic_exactness),
        (3, "closed-form vs direct power", c3_closed_form_vs_direct),
        (4, "power-norm dichotomy at N = 2048", c4_peller),
        (5, "power boundedness for lens and moebius maps", c5_power_bounded),
        (6, "Kreiss dichotomy across truncations", c6_kreiss_dichotomy),
        (7, "Kreiss bound for f = 0", c7_contractions),
        (8, "Kreiss lower witness", c8_lower_witness),
        (9, "inequality suites", c9_inequalities),
        (10, "Hilbert matrix facts", c10_hilbert_matrix),
        (11, "determinism", c11_determinism),
    ];
    let only: Option<Vec<u32>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect());
    let mut failed = Vec::new();
    let mut ran = 0;
    for (id, name, run) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let start = Instant::now();
        let o = run();
        ran += 1;
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {id:>2} {name}: {} ({:.1} s)",
            o.detail,
            start.elapsed().as_secs_f64()
        );
        if !o.pass {
            failed.push(id);
        }
    }
    println!(
        "acceptance: {} of {ran} criteria passed{}",
        ran - failed.len(),
        if failed.is_empty() {
            String::new()
        } else {
            format!("; failed: {failed:?}")
        }
    );
}
