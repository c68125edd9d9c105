//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torus_spectra::moment::{self, DistanceProfile, OriginPolicy};
use torus_spectra::objective::{self, HESSIAN_STEP, PATH_STEP};
use torus_spectra::spectral;
use torus_spectra::{
    canonical_basis, enumerate_dual, make_builtin, reduce_basis, Basis2, ConvexPolygon, DualLattice, Kernel, KernelSpec,
    Point, QuadratureConfig, TorusParams,
};

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn gauss(ell: f64) -> Kernel {
    make_builtin(KernelSpec::Gaussian { ell }).unwrap()
}

fn ball(r: f64) -> Kernel {
    make_builtin(KernelSpec::BallIndicator { r }).unwrap()
}

fn random_params(rng: &mut ChaCha8Rng, a_lo: f64, a_hi: f64, b_max: f64) -> TorusParams {
    let a = rng.gen_range(a_lo..a_hi);
    let lo = TorusParams::lower_b(a);
    TorusParams::new(a, rng.gen_range(lo..b_max)).unwrap()
}

fn normalization() -> Outcome {
    let cfg = QuadratureConfig::default();
    let one = make_builtin(KernelSpec::Constant).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let p = random_params(&mut rng, 0.0, 0.5, 3.0);
        worst = worst.max((objective::j(p, &one, &cfg).unwrap() - 1.0).abs());
    }
    let t = start.elapsed();
    outcome(worst < 1e-9 && t < Duration::from_secs(5), format!("max |J-1| = {worst:.2e}, {t:.2?}"))
}

fn sweep_argmax(kernel: &Kernel, limit: Duration) -> Outcome {
    let cfg = QuadratureConfig::default();
    let start = Instant::now();
    let s = objective::grid_sweep(kernel, &cfg, 51, 51, 2.0).unwrap();
    let t = start.elapsed();
    let nearest = s
        .nodes
        .iter()
        .min_by(|x, y| {
            let dx = (x.a - 0.5).hypot(x.b - SQRT3_2);
            let dy = (y.a - 0.5).hypot(y.b - SQRT3_2);
            dx.total_cmp(&dy)
        })
        .unwrap();
    let eq = objective::j(TorusParams::EQUILATERAL, kernel, &cfg).unwrap();
    let sq = objective::j(TorusParams::SQUARE, kernel, &cfg).unwrap();
    let tol = cfg.target(eq);
    let ok = s.argmax.i == nearest.i && s.argmax.j == nearest.j && eq - sq > 10.0 * tol && t < limit;
    outcome(
        ok,
        format!(
            "argmax ({:.5}, {:.5}), J(eq) - J(sq) = {:.3e} vs 10 tol = {:.1e}, {t:.2?}",
            s.argmax.a,
            s.argmax.b,
            eq - sq,
            10.0 * tol
        ),
    )
}

fn gradients() -> Outcome {
    let cfg = QuadratureConfig::default();
    let g = gauss(0.3);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let a = rng.gen_range(0.02..0.48);
        let p = TorusParams::new(a, rng.gen_range(TorusParams::lower_b(a) + 0.02..2.0)).unwrap();
        worst = worst.max(objective::grad_check(p, &g, &cfg).unwrap().agreement);
    }
    outcome(worst < 1e-5, format!("max relative error {worst:.2e}"))
}

fn critical_points() -> Outcome {
    let cfg = QuadratureConfig::default();
    let g = gauss(0.3);
    let mut worst_a = 0.0f64;
    for b in [1.0, 1.25, 1.6, 2.0] {
        worst_a = worst_a.max(objective::dj_da(TorusParams::new(0.0, b).unwrap(), &g, &cfg).unwrap().abs());
    }
    for b in [SQRT3_2, 1.1, 1.6, 2.0] {
        worst_a = worst_a.max(objective::dj_da(TorusParams::new(0.5, b).unwrap(), &g, &cfg).unwrap().abs());
    }
    let sq = objective::dj_db(TorusParams::SQUARE, &g, &cfg).unwrap().abs();
    let eq = objective::dj_db(TorusParams::EQUILATERAL, &g, &cfg).unwrap().abs();
    outcome(
        worst_a < 1e-8 && sq < 1e-8 && eq < 1e-8,
        format!("max |dJ/da| = {worst_a:.1e}, |dJ/db| square {sq:.1e}, equilateral {eq:.1e}"),
    )
}

fn sign_lemmas() -> Outcome {
    let cfg = QuadratureConfig::default();
    let g = gauss(0.3);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut min_a = f64::INFINITY;
    for _ in 0..20 {
        let p = random_params(&mut rng, 0.02, 0.48, 2.5);
        min_a = min_a.min(objective::dj_da(p, &g, &cfg).unwrap());
    }
    let mut max_b = f64::NEG_INFINITY;
    for b in [0.9, 1.0, 1.2, 1.5, 2.0] {
        max_b = max_b.max(objective::dj_db(TorusParams::new(0.5, b).unwrap(), &g, &cfg).unwrap());
    }
    outcome(min_a > 0.0 && max_b < 0.0, format!("min dJ/da = {min_a:.3e}, max dJ/db on a = 1/2: {max_b:.3e}"))
}

fn saddle_vs_max() -> Outcome {
    let cfg = QuadratureConfig::default();
    let g = gauss(0.3);
    let sq = objective::hessian_fd(TorusParams::SQUARE, &g, &cfg, HESSIAN_STEP).unwrap();
    let eq = objective::hessian_fd(TorusParams::EQUILATERAL, &g, &cfg, HESSIAN_STEP).unwrap();
    outcome(
        sq.is_saddle(1e-6) && eq.is_local_max(1e-6),
        format!("square eigenvalues {:.4e}, {:.4e}; equilateral {:.4e}, {:.4e}", sq.eigenvalues[0], sq.eigenvalues[1], eq.eigenvalues[0], eq.eigenvalues[1]),
    )
}

fn claims() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut min12, mut min32, mut max_dd, mut worst_boundary) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for _ in 0..100 {
        let a = rng.gen_range(1e-3..0.5);
        let p = TorusParams::new(a, rng.gen_range(TorusParams::lower_b(a)..3.0)).unwrap();
        let r = objective::claim_check(p, 100);
        min12 = min12.min(r.min_a1_minus_a2);
        min32 = min32.min(r.min_a3_minus_a2);
        max_dd = max_dd.max(r.max_second_difference);
        worst_boundary = worst_boundary
            .max(r.boundary_minus.abs())
            .max((r.boundary_plus - r.boundary_plus_expected).abs());
    }
    outcome(
        min12 >= -1e-12 && min32 > 0.0 && worst_boundary <= 1e-12 && max_dd <= 1e-12,
        format!("10^4 samples: min(A1-A2) = {min12:.3e}, min(A3-A2) = {min32:.3e}, boundary {worst_boundary:.1e}, max second difference {max_dd:.3e}"),
    )
}

fn rearrangement_path() -> Outcome {
    let cfg = QuadratureConfig::default();
    let g = gauss(0.3);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let end = TorusParams::new(0.5, SQRT3_2).unwrap();
    let mut fails = 0;
    let mut min_inc = f64::INFINITY;
    for _ in 0..10 {
        let start = random_params(&mut rng, 0.0, 0.45, 2.0);
        match objective::optimize_path(start, &g, &cfg, PATH_STEP) {
            Ok(r) if r.strictly_increasing && r.end == end => min_inc = min_inc.min(r.min_increment),
            _ => fails += 1,
        }
    }
    outcome(fails == 0, format!("{} / 10 strictly increasing to the equilateral torus, min step gain {min_inc:.2e}", 10 - fails))
}

fn spectral_checks() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let kernels = [gauss(0.3), ball(0.55)];
    let mut dominance = true;
    let mut worst_path = 0.0f64;
    let mut count = 0;
    for _ in 0..5 {
        let p = random_params(&mut rng, 0.0, 0.5, 2.0);
        for k in &kernels {
            let rep = spectral::spectrum(p, k, 4.0, &cfg).unwrap();
            dominance &= rep.dominance;
            count += rep.entries.len();
            let jv = objective::j(p, k, &cfg).unwrap();
            let tol = 2.0 * (cfg.target(jv) + cfg.target(rep.operator_norm));
            worst_path = worst_path.max((jv - rep.operator_norm).abs() / tol);
        }
    }
    let mut worst_hs = 0.0f64;
    for ell in [0.2, 0.3, 0.5] {
        for p in [TorusParams::SQUARE, TorusParams::EQUILATERAL] {
            let hs = spectral::hs_norm(p, &gauss(ell), &cfg).unwrap();
            let op = spectral::operator_norm(p, &gauss(ell / 2f64.sqrt()), &cfg).unwrap();
            worst_hs = worst_hs.max((hs - op).abs());
        }
    }
    outcome(
        dominance && worst_path <= 1.0 && worst_hs < 1e-9,
        format!("{count} eigenvalues dominated: {dominance}; |J - norm| / (2 tol) <= {worst_path:.2e}; hs identity {worst_hs:.1e}"),
    )
}

fn moment_inequalities() -> Outcome {
    let cfg = QuadratureConfig::default();
    let start = Instant::now();
    let e = DistanceProfile::exponential();
    let mut notes = Vec::new();
    let mut ok = true;

    let mut min_dd = f64::INFINITY;
    for r in [0.5, 1.0, 2.0] {
        for f in [DistanceProfile::exponential(), DistanceProfile::tent()] {
            let rep = moment::omega_convexity_check(moment::Disc::new(r).unwrap(), &f, 60, &cfg).unwrap();
            ok &= rep.ok;
            min_dd = min_dd.min(rep.min_second_difference);
        }
    }
    notes.push(format!("omega second differences >= {min_dd:.1e}"));

    let l2 = moment::suite_lemma2(11, 1000, 1.0, &e, &cfg).unwrap();
    let l2_pass = l2.iter().filter(|r| r.ok).count();
    ok &= l2_pass == 1000;
    notes.push(format!("lemma2 {l2_pass}/1000"));

    let vc = moment::suite_vertex_count(12, 100).unwrap();
    let vc_pass = vc.iter().filter(|r| r.ok).count();
    ok &= vc_pass == 100;
    notes.push(format!("N <= 6n {vc_pass}/100"));

    let mt = moment::suite_moment_theorem(13, 100, &e, &cfg).unwrap();
    let mt_pass = mt.iter().filter(|r| r.ok).count();
    ok &= mt_pass == 100;
    notes.push(format!("moment theorem {mt_pass}/100"));

    let ml = moment::suite_moment_lemma(14, 100, &e, &cfg).unwrap();
    let ml_pass = ml.iter().filter(|r| r.ok).count();
    ok &= ml_pass == 100;
    notes.push(format!("moment lemma {ml_pass}/100"));

    // Equality cases.
    let hex = ConvexPolygon::regular(6, 1.7, 0.2).unwrap();
    let th = moment::moment_theorem_check(&hex, &[Point::ORIGIN], &e, &cfg).unwrap();
    let pent = ConvexPolygon::regular(5, 0.9, 1.0).unwrap();
    let lm = moment::moment_lemma_check(&pent, &e, &cfg, OriginPolicy::Reject).unwrap();
    let seg = moment::lemma2_check(
        moment::Disc::new(1.0).unwrap(),
        Point::from_polar(1.0, 0.4),
        Point::from_polar(1.0, 0.4 + 0.7 * PI),
        &e,
        &cfg,
    )
    .unwrap();
    let eq_gap = th.margin.abs().max(lm.report.margin.abs()).max(seg.margin.abs());
    ok &= eq_gap < 1e-9;
    notes.push(format!("equality gaps <= {eq_gap:.1e}"));

    let t = start.elapsed();
    ok &= t < Duration::from_secs(180);
    notes.push(format!("{t:.2?}"));
    outcome(ok, notes.join(", "))
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> [[i64; 2]; 2] {
    let mut w = [[1i64, 0], [0, 1]];
    for _ in 0..6 {
        let k = rng.gen_range(-3..=3);
        if rng.gen_bool(0.5) {
            for row in w.iter_mut() {
                row[1] += k * row[0];
            }
        } else {
            for row in w.iter_mut() {
                row[0] += k * row[1];
            }
        }
    }
    w
}

fn reduction_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let p = random_params(&mut rng, 0.0, 0.5, 3.0);
        let base = canonical_basis(p);
        let disguised = if i == 0 {
            base
        } else {
            let t = rng.gen_range(0.0..2.0 * PI);
            let (s, c) = t.sin_cos();
            let refl = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
            Basis2::new(c, -s * refl, s, c * refl).mul(&base).mul_int(&random_unimodular(&mut rng))
        };
        let r = reduce_basis(&disguised).unwrap();
        worst = worst.max((r.params.a() - p.a()).abs()).max((r.params.b() - p.b()).abs());
    }
    outcome(worst < 1e-9, format!("max parameter error {worst:.1e} over 100 disguised bases"))
}

fn main() {
    // Warm sanity check that the dual enumeration used by criterion 10 is live.
    assert!(!enumerate_dual(&DualLattice::of(TorusParams::SQUARE), 4.0).unwrap().is_empty());

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("normalization", Box::new(normalization)),
        ("maximality (gaussian sweep)", Box::new(|| sweep_argmax(&gauss(0.3), Duration::from_secs(120)))),
        ("non-increasing branch (ball sweep)", Box::new(|| sweep_argmax(&ball(0.55), Duration::from_secs(120)))),
        ("gradient identities", Box::new(gradients)),
        ("critical points", Box::new(critical_points)),
        ("sign lemmas", Box::new(sign_lemmas)),
        ("saddle vs maximum", Box::new(saddle_vs_max)),
        ("claims", Box::new(claims)),
        ("rearrangement path", Box::new(rearrangement_path)),
        ("spectral", Box::new(spectral_checks)),
        ("moment inequalities", Box::new(moment_inequalities)),
        ("reduction round-trip", Box::new(reduction_round_trip)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.ok {
            failed += 1;
        }
        println!("{} [{:>2}] {name}: {}", if o.ok { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("{} / {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
