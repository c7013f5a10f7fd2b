//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria whose statement cannot hold numerically are still run at full
//! strength and print FAIL; they are listed in `EXPECTED_FAILURES` so the
//! target only exits non-zero when something else regresses.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use measure_lp::bv::{check_embst, remainder_l1, theorem_main_report, BVFunction};
use measure_lp::config::RunConfig;
use measure_lp::inequalities::{random_function, sinc_constant};
use measure_lp::norms::{op_norm, star_norm, star_norm_lower, vp_star_norm, Dictionary};
use measure_lp::report::Status;
use measure_lp::suites::{run_suite, run_suites, Suite, SuiteRun};
use measure_lp::transforms::fourier_function;
use measure_lp::uncertainty::{build_limiting_operator, dft, measure_annihilation_check, no_double_support, IndexSet};
use measure_lp::{ExponentPair, GridFunction, GridSpec, LogGrid, Measure, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The Cantor measure's transform does not decay, so every block norm of
/// `1 - C` is infinite for `p > 1`; and `‖χ_E‖_{L̂ᵖ} ≤ |E|^{1/p}` is false
/// for `p > 2`.
const EXPECTED_FAILURES: [usize; 3] = [6, 10, 12];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn ex(p: f64) -> ExponentPair {
    ExponentPair::new(p).unwrap()
}

fn suite(s: Suite, cases: usize) -> Result<(SuiteRun, Duration)> {
    let cfg = RunConfig { cases, ..RunConfig::default() };
    let t = Instant::now();
    let run = run_suite(s, &cfg)?;
    Ok((run, t.elapsed()))
}

fn gaussian_fixed_point() -> Result<Outcome> {
    let t = Instant::now();
    let g = GridFunction::sample_real(GridSpec::linspace(-8.0, 8.0, 4096)?, |x| (-PI * x * x).exp());
    let hat = fourier_function(&g, GridSpec::linspace(-4.0, 4.0, 801)?);
    let elapsed = t.elapsed();
    let err = (0..hat.grid.len())
        .map(|k| {
            let y = hat.grid.x(k);
            (hat.grid.values[k] - (-PI * y * y).exp()).norm()
        })
        .fold(0.0, f64::max);
    outcome(err < 1e-6 && elapsed < Duration::from_secs(1), format!("sup|ĝ - g| = {err:.2e}, {elapsed:.2?}"))
}

fn point_mass_p1() -> Result<Outcome> {
    let delta = Measure::delta(0.0);
    let norm = star_norm(&delta, ex(1.0))?;
    let lower = star_norm_lower(&delta, ex(1.0), &Dictionary::gaussian(ex(1.0)));
    let witness = lower.best.as_ref().map_or(f64::NAN, |g| g.transform(0.0).norm());
    outcome(
        (norm.value - 1.0).abs() <= 1e-6 && lower.value >= 0.99,
        format!(
            "‖δ₀‖₁* = {:.9}, dictionary lower bound {:.6} (best |ĝ(0)| = {witness:.6})",
            norm.value, lower.value
        ),
    )
}

fn point_mass_p15() -> Result<Outcome> {
    let norm = star_norm(&Measure::delta(0.0), ex(1.5))?;
    outcome(
        norm.value == f64::INFINITY && norm.divergence_flag,
        format!("value {}, divergence_flag {}, {} windows", norm.value, norm.divergence_flag, norm.windows.len()),
    )
}

fn hausdorff_young() -> Result<Outcome> {
    let (run, elapsed) = suite(Suite::Hy, 100)?;
    let below = run.cases.iter().all(|c| {
        let r = &c.report;
        match r.extra.get("dictionary_lower") {
            Some(lower) => *lower <= r.rhs * (1.0 + 1e-6) + 1e-12,
            None => !r.rhs.is_finite() || r.lhs == 0.0,
        }
    });
    let gap = run
        .cases
        .iter()
        .filter(|c| c.label.starts_with("family=Density"))
        .filter_map(|c| c.report.extra.get("dictionary_gap").copied())
        .fold(0.0, f64::max);
    let s = &run.summary;
    outcome(
        s.fail == 0 && below && gap < 0.05,
        format!(
            "{} reports: {} pass, {} fail, {} inconclusive; lower ≤ duality on all: {below}; max density gap {:.2}%; {elapsed:.1?}",
            s.reports,
            s.pass,
            s.fail,
            s.inconclusive,
            100.0 * gap
        ),
    )
}

fn holder_and_young() -> Result<Outcome> {
    let (holder, th) = suite(Suite::Holder, 100)?;
    let (young, ty) = suite(Suite::Young, 100)?;
    let total = th + ty;
    outcome(
        holder.summary.fail == 0 && young.summary.fail == 0 && total < Duration::from_secs(120),
        format!(
            "holder {} reports {} fail; young {} reports {} fail; {total:.1?}",
            holder.summary.reports, holder.summary.fail, young.summary.reports, young.summary.fail
        ),
    )
}

fn set_bound() -> Result<Outcome> {
    let (run, _) = suite(Suite::Sets, 100)?;
    let mut by_p = Vec::new();
    for p in ["p=1 ", "p=1.5 ", "p=2 ", "p=3 "] {
        let fails = run.cases.iter().filter(|c| c.label.starts_with(p) && c.report.status == Status::Fail).count();
        by_p.push(format!("{}: {fails}", p.trim()));
    }
    outcome(run.summary.fail == 0, format!("{} violations of 100 ({})", run.summary.fail, by_p.join(", ")))
}

fn sinc_constants() -> Result<Outcome> {
    let mut ok = (sinc_constant(2.0)?.numeric - 1.0).abs() <= 1e-4;
    let mut rows = Vec::new();
    for s in [2.0, 3.0, 4.0, 8.0] {
        let c = sinc_constant(s)?;
        let ball = c.ball_bound.expect("s ≥ 2");
        ok &= c.numeric <= c.paper_bound && c.ball_integral <= ball + 1e-6;
        if s == 2.0 {
            ok &= (c.ball_integral - ball).abs() <= 1e-4;
        }
        rows.push(format!(
            "s={s}: {:.6} ≤ {:.6}, ∫ {:.6} ≤ {:.6}",
            c.numeric, c.paper_bound, c.ball_integral, ball
        ));
    }
    outcome(ok, rows.join("; "))
}

fn op_chain() -> Result<Outcome> {
    const CHAIN: [f64; 4] = [1.2, 2.0, 3.5, f64::INFINITY];
    let grid = LogGrid::new(0.05, 5.0, 60)?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut pairs, mut violations) = (0, 0);
    for _ in 0..50 {
        let g = random_function(&mut rng);
        let norms: Vec<f64> = CHAIN.iter().map(|&p| op_norm(&g, ex(p), &grid)).collect::<Result<_>>()?;
        for i in 0..CHAIN.len() {
            for j in 0..i {
                pairs += 1;
                // CHAIN[i] > CHAIN[j]
                if norms[j] > norms[i] + 1e-8 {
                    violations += 1;
                }
            }
        }
    }
    outcome(violations == 0, format!("{violations} violations over {pairs} ordered pairs"))
}

fn discrete_uncertainty() -> Result<Outcome> {
    const N: usize = 256;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut envelope, mut kernel, mut annihilation) = (0, 0, 0);
    let mut worst = f64::INFINITY;
    for _ in 0..100 {
        let ke = rng.gen_range(1..=16);
        let kf = rng.gen_range(1..=N / 4 / ke);
        let e = IndexSet::random(&mut rng, N, ke);
        let f = IndexSet::random(&mut rng, N, kf);
        let op = build_limiting_operator(N, &e, &f)?;
        worst = worst.min(op.envelope() - op.sigma());
        envelope += usize::from(op.sigma() <= op.envelope() + 1e-9);
        kernel += usize::from(no_double_support(N, &e, &f)?.status == Status::Pass);
        let w: Vec<Complex64> = (0..N)
            .map(|i| {
                if f.contains(i) {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                } else {
                    Complex64::default()
                }
            })
            .collect();
        annihilation += usize::from(measure_annihilation_check(&w, &e, &f)?.status == Status::Pass);
    }
    let comb = IndexSet::multiples(64, 8)?;
    let fence = no_double_support(64, &comb, &comb)?;
    let witness = fence.witness.as_ref().is_some_and(|w| {
        let hat = dft(w);
        let shape = w.iter().enumerate().all(|(i, z)| (i % 8 == 0) == (z.norm() > 1e-9));
        let leak = hat
            .iter()
            .enumerate()
            .filter(|(k, _)| !comb.contains(*k))
            .map(|(_, z)| z.norm_sqr())
            .sum::<f64>();
        shape && leak.sqrt() < 1e-9
    });
    outcome(
        envelope == 100 && kernel == 100 && annihilation == 100 && witness,
        format!(
            "envelope {envelope}/100 (min slack {worst:.3e}), zero kernel {kernel}/100, annihilation {annihilation}/100, picket-fence comb witness: {witness}"
        ),
    )
}

fn cantor_theorem_main() -> Result<Outcome> {
    let grid = RunConfig::default().log_grid();
    let depth = RunConfig::default().depth;
    let p = ex(1.2);
    let mut ok = true;
    let mut parts = Vec::new();
    for gamma in [0.0, 0.25] {
        let f = BVFunction::cantor_complement().with_depth(depth);
        let base = theorem_main_report(&f, p, gamma, &grid)?;
        let fine = theorem_main_report(&f.with_depth(depth + 4), p, gamma, &grid.refined())?;
        let l1_change = (fine.remainder_l1 - base.remainder_l1).abs() / base.remainder_l1;
        let vp_change = (fine.vp_star - base.vp_star).abs() / base.vp_star;
        let finite = base.remainder_l1.is_finite() && base.vp_star.is_finite();
        let stable = l1_change < 0.02 && vp_change < 0.02;
        let mut ratios = Vec::new();
        for lambda in [0.25, 1.0, 4.0] {
            ratios.push(theorem_main_report(&f.dilated(lambda)?, p, gamma, &grid)?.ratio);
        }
        let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let spread = hi / lo;
        ok &= finite && stable && spread <= 2.0;
        parts.push(format!(
            "γ={gamma}: ‖Γ‖₁ = {:.5} (Δ {:.2}%), ‖f‖_Vp* = {} (block {:?}), ratio spread {spread}",
            base.remainder_l1,
            100.0 * l1_change,
            base.vp_star,
            base.divergent_block
        ));
    }
    outcome(ok, parts.join("; "))
}

fn negative_control() -> Result<Outcome> {
    let grid = RunConfig::default().log_grid();
    let f = BVFunction::indicator(1.0)?;
    let vp = vp_star_norm(&f, ex(1.5), &grid)?;
    let l1 = remainder_l1(&f, 0.0, &grid)?;
    let at = |x: f64| l1.partials.iter().take_while(|(t, _)| *t <= x * (1.0 + 1e-12)).last().map_or(0.0, |q| q.1);
    let decades: Vec<f64> = (0..4).map(|k| at(grid.x_max / 10f64.powi(k)) - at(grid.x_max / 10f64.powi(k + 1))).collect();
    let grows = decades.windows(2).all(|w| w[1] > 0.0 && (0.5..2.0).contains(&(w[0] / w[1])));
    outcome(
        vp.norm.divergence_flag && grows,
        format!(
            "Vp* divergent: {}; partial-integral increments over the last four decades {:?}",
            vp.norm.divergence_flag,
            decades.iter().map(|d| format!("{d:.4}")).collect::<Vec<_>>()
        ),
    )
}

fn embst_constants() -> Result<Outcome> {
    let grid = RunConfig::default().log_grid();
    let p = ex(1.2);
    let constant = |f: &BVFunction, grid: &LogGrid| -> Result<f64> { Ok(check_embst(f, p, grid)?.constant_used) };
    let cantor = BVFunction::cantor_complement();
    let c0 = constant(&cantor, &grid)?;
    let c1 = constant(&cantor.with_depth(cantor_depth() + 4), &grid.refined())?;
    let mut ok = c0.is_finite() && c1.is_finite() && ((c1 - c0) / c0).abs() < 0.1;
    let mut parts = vec![if c0.is_finite() {
        format!("cantor: {c0:.4} → {c1:.4}")
    } else {
        "cantor: ‖f‖_Vp* diverges, constant undefined".to_string()
    }];
    let bump_grid = LogGrid::new(1e-2, 1e2, 60)?;
    for (center, width) in [(1.5, 0.3), (2.0, 0.45), (3.0, 0.6)] {
        let b0 = constant(&BVFunction::gaussian_bump(center, width, 2001)?, &bump_grid)?;
        let b1 = constant(&BVFunction::gaussian_bump(center, width, 4001)?, &bump_grid.refined())?;
        let change = ((b1 - b0) / b0).abs();
        ok &= b0.is_finite() && change < 0.1;
        parts.push(format!("bump({center},{width}): {b0:.4} → {b1:.4} ({:.2}%)", 100.0 * change));
    }
    outcome(ok, parts.join("; "))
}

fn cantor_depth() -> u32 {
    RunConfig::default().depth
}

fn determinism() -> Result<Outcome> {
    let cfg = RunConfig {
        cases: 8,
        seed: 2024,
        ..RunConfig::default()
    };
    let a = run_suites(&Suite::ALL, &cfg)?.to_json();
    let b = run_suites(&Suite::ALL, &cfg)?.to_json();
    outcome(a == b, format!("{} bytes, identical: {}", a.len(), a == b))
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("gaussian fixed point", gaussian_fixed_point),
        ("point mass, p = 1", point_mass_p1),
        ("point mass, p = 1.5 diverges", point_mass_p15),
        ("hausdorff-young suite", hausdorff_young),
        ("hölder and young suites", holder_and_young),
        ("set bound", set_bound),
        ("sinc constants", sinc_constants),
        ("op-norm chain", op_chain),
        ("discrete uncertainty", discrete_uncertainty),
        ("leading term on the cantor family", cantor_theorem_main),
        ("negative control", negative_control),
        ("variation embedding constants", embst_constants),
        ("determinism", determinism),
    ];
    let mut unexpected = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let id = k + 1;
        let t = Instant::now();
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let expected = EXPECTED_FAILURES.contains(&id);
        let tag = match (pass, expected) {
            (true, _) => "PASS",
            (false, true) => "FAIL (expected)",
            (false, false) => "FAIL",
        };
        println!("criterion {id:>2} [{tag}] {name} — {detail} [{:.1?}]", t.elapsed());
        if !pass && !expected {
            unexpected += 1;
        }
        if pass && expected {
            println!("             note: listed as an expected failure but passed");
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
