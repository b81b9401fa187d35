//! Tiered self-checks behind `mexhat validate`.

use std::f64::consts::{E, PI};
use std::time::{Duration, Instant};

use mexhat_core::fock_space::{p0_overlap, weight_via_coherent_integral, GCoefficients, PolarGrid};
use mexhat_core::math_core::{admissibility_weight, hermite_poly, Polynomial};
use mexhat_core::operator_lab::{
    matrix_element_oracle, pure_squeeze_check, squeeze_translate_matrix, standard_grid,
    two_route_equivalence,
};
use mexhat_core::wavelet_builder::{
    build_wavelet, build_wavelet_ungated, integral_check, project_admissible, zero_crossings,
};
use rand::{Rng, SeedableRng};

/// `(g, envelope)` for the four reference wavelets.
pub const REFERENCE_CASES: [(&[f64], &[f64]); 4] = [
    (&[0.5, 0.0, -0.5], &[1.0, 0.0, -1.0]),
    (&[-1.0, 0.0, -2.0, 0.0, 1.0], &[4.0, 0.0, -16.0, 0.0, 4.0]),
    (&[-2.0, 0.0, -1.0, 0.0, 1.0], &[2.0, 0.0, -14.0, 0.0, 4.0]),
    (
        &[1.0, 0.0, 2.0, 0.0, 4.0, 0.0, -1.0],
        &[26.0, 0.0, -134.0, 0.0, 76.0, 0.0, -8.0],
    ),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

type WeightTable = Box<dyn Fn(usize) -> f64 + Send + Sync>;

/// What the checks compare against. The weight table can be swapped out
/// to make sure the suite actually notices a wrong one.
pub struct ValidationContext {
    weight_table: WeightTable,
}

impl Default for ValidationContext {
    fn default() -> Self {
        Self {
            weight_table: Box::new(|n| admissibility_weight(n).unwrap_or(f64::NAN)),
        }
    }
}

impl ValidationContext {
    pub fn with_weight_table(table: impl Fn(usize) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            weight_table: Box::new(table),
        }
    }

    fn weight(&self, n: usize) -> f64 {
        (self.weight_table)(n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub results: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let status = if r.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status} {:<24} {:>9.3} ms  {}\n",
                r.name,
                r.elapsed.as_secs_f64() * 1e3,
                r.detail
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "{} checks, {} failed\n",
            self.results.len(),
            failed
        ));
        out
    }
}

type Check = fn(&ValidationContext) -> Result<String, String>;

const QUICK: &[(&str, Check)] = &[
    ("weight-table", check_weight_table),
    ("hermite-recurrence", check_hermite_recurrence),
    ("reference-envelopes", check_reference_envelopes),
    ("reference-constraints", check_reference_constraints),
    ("admissibility-integrals", check_admissibility_integrals),
    ("zero-crossings", check_zero_crossings),
];

const FULL: &[(&str, Check)] = &[
    ("bridge-identity", check_bridge_identity),
    ("coherent-oracle", check_coherent_oracle),
    ("two-route-equivalence", check_two_routes),
    ("squeeze-special-case", check_pure_squeeze),
    ("matrix-element-oracle", check_matrix_elements),
];

pub fn run_validation(level: Level, ctx: &ValidationContext) -> ValidationReport {
    let checks = QUICK
        .iter()
        .chain(if level == Level::Full { FULL } else { &[] });
    let results = checks
        .map(|&(name, check)| {
            let start = Instant::now();
            let outcome = check(ctx);
            let elapsed = start.elapsed();
            let (passed, detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckResult {
                name,
                passed,
                detail,
                elapsed,
            }
        })
        .collect();
    ValidationReport { results }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn coeffs(v: &[f64]) -> Result<GCoefficients, String> {
    GCoefficients::new(v.to_vec()).map_err(|e| e.to_string())
}

/// `(2n)!/(n! 2ⁿ)` in integers.
fn factorial_weight(n: usize) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    fact(2 * n) / (fact(n) << n)
}

fn check_weight_table(ctx: &ValidationContext) -> Result<String, String> {
    let head: Vec<f64> = (0..4).map(|n| ctx.weight(n)).collect();
    ensure(head == [1.0, 1.0, 3.0, 15.0], || {
        format!("first weights {head:?}, expected [1, 1, 3, 15]")
    })?;
    for n in 0..=15 {
        let want = factorial_weight(n) as f64;
        let got = ctx.weight(n);
        ensure(got == want, || format!("w_{n} = {got}, expected {want}"))?;
    }
    Ok("w_0..w_15 exact".into())
}

fn check_hermite_recurrence(_: &ValidationContext) -> Result<String, String> {
    let two_x = Polynomial::new(vec![0.0, 2.0]);
    for n in 1..28 {
        let h = |k| hermite_poly(k).map_err(|e| e.to_string());
        let expected = two_x.mul(&h(n)?).sub(&h(n - 1)?.scale(2.0 * n as f64));
        ensure(h(n + 1)? == expected, || {
            format!("H_{} breaks the recurrence", n + 1)
        })?;
    }
    Ok("H_0..H_28 exact".into())
}

fn check_reference_envelopes(_: &ValidationContext) -> Result<String, String> {
    for (g, envelope) in REFERENCE_CASES {
        let w = build_wavelet(&coeffs(g)?).map_err(|e| format!("g = {g:?}: {e}"))?;
        ensure(w.envelope().coeffs() == envelope, || {
            format!(
                "g = {g:?} gives {:?}, expected {envelope:?}",
                w.envelope().coeffs()
            )
        })?;
    }
    Ok(format!("{} envelopes exact", REFERENCE_CASES.len()))
}

fn check_reference_constraints(ctx: &ValidationContext) -> Result<String, String> {
    for (g, _) in REFERENCE_CASES {
        let sum: f64 = g
            .iter()
            .step_by(2)
            .enumerate()
            .map(|(n, v)| ctx.weight(n) * v)
            .sum();
        ensure(sum == 0.0, || format!("g = {g:?}: weighted even sum {sum}"))?;
    }
    Ok("weighted even sums vanish".into())
}

fn check_admissibility_integrals(_: &ValidationContext) -> Result<String, String> {
    let mut worst = 0.0f64;
    for (g, _) in REFERENCE_CASES {
        let w = build_wavelet(&coeffs(g)?).map_err(|e| e.to_string())?;
        worst = worst.max(integral_check(&w).abs());
    }
    ensure(worst < 1e-12, || format!("|∫ψ| up to {worst:e}"))?;
    Ok(format!("max |∫ψ| = {worst:e}"))
}

fn check_zero_crossings(_: &ValidationContext) -> Result<String, String> {
    for (g, envelope) in REFERENCE_CASES {
        let w = build_wavelet(&coeffs(g)?).map_err(|e| e.to_string())?;
        let n = zero_crossings(&w).map_err(|e| e.to_string())?.count();
        ensure(n == envelope.len() - 1, || {
            format!("g = {g:?}: {n} crossings")
        })?;
    }
    Ok("counts equal degrees".into())
}

fn check_bridge_identity(_: &ValidationContext) -> Result<String, String> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < 200 {
        let len = rng.gen_range(1..=12);
        let raw: Vec<f64> = (0..len).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let Ok(g) = project_admissible(&raw) else {
            continue;
        };
        let w = build_wavelet_ungated(&g).map_err(|e| e.to_string())?;
        worst = worst.max((integral_check(&w) - (2.0 * PI).sqrt() * p0_overlap(&g)).abs());
        done += 1;
    }
    ensure(worst < 1e-9, || format!("max gap {worst:e}"))?;
    Ok(format!("200 vectors, max gap {worst:e}"))
}

fn check_coherent_oracle(ctx: &ValidationContext) -> Result<String, String> {
    let mut worst = 0.0f64;
    for n in 0..=4 {
        let v = weight_via_coherent_integral(n, 8.0, PolarGrid::default())
            .map_err(|e| e.to_string())?;
        let rel = (v / ctx.weight(n) - 1.0).abs();
        ensure(rel < 1e-5, || {
            format!("n = {n}: integral {v} vs table {}", ctx.weight(n))
        })?;
        worst = worst.max(rel);
    }
    Ok(format!("n <= 4, max rel. error {worst:e}"))
}

fn check_two_routes(_: &ValidationContext) -> Result<String, String> {
    let psi = coeffs(REFERENCE_CASES[0].0)?;
    let f = coeffs(REFERENCE_CASES[1].0)?;
    let grid = standard_grid(5, 5);
    let run = |dim| two_route_equivalence(&psi, &f, &grid, dim).map_err(|e| e.to_string());
    let at64 = run(64)?;
    ensure(at64.max_deviation < 1e-6, || {
        format!("dim 64: {:e} at {:?}", at64.max_deviation, at64.worst)
    })?;
    let (small, large) = (run(48)?, run(96)?);
    ensure(large.max_deviation <= small.max_deviation, || {
        format!(
            "dim 96 {:e} exceeds dim 48 {:e}",
            large.max_deviation, small.max_deviation
        )
    })?;
    Ok(format!("max deviation {:e}", at64.max_deviation))
}

fn check_pure_squeeze(_: &ValidationContext) -> Result<String, String> {
    let mut worst = 0.0f64;
    for mu in [0.5, 2.0] {
        let r = pure_squeeze_check(mu, 64).map_err(|e| e.to_string())?;
        ensure(r.max_deviation < 1e-8, || {
            format!("μ = {mu}: {:e}", r.max_deviation)
        })?;
        worst = worst.max(r.max_deviation);
        let u = squeeze_translate_matrix(mu, 0.0, 64).map_err(|e| e.to_string())?;
        let vac = (2.0 * mu / (1.0 + mu * mu)).sqrt();
        ensure((u.element(0, 0).re - vac).abs() < 1e-12, || {
            format!("μ = {mu}: ⟨0|U|0⟩ = {}", u.element(0, 0))
        })?;
    }
    Ok(format!("max deviation {worst:e}"))
}

fn check_matrix_elements(_: &ValidationContext) -> Result<String, String> {
    let mut worst = 0.0f64;
    for mu in [0.5, 1.0, E, 2.0] {
        for s in [0.0, 1.0, -1.0] {
            let u = squeeze_translate_matrix(mu, s, 64).map_err(|e| e.to_string())?;
            for m in 0..=12 {
                for n in 0..=12 {
                    let oracle = matrix_element_oracle(mu, s, m, n).map_err(|e| e.to_string())?;
                    let gap = (u.element(m, n) - oracle).norm();
                    ensure(gap < 1e-8, || {
                        format!("μ = {mu}, s = {s}, ({m}, {n}): gap {gap:e}")
                    })?;
                    worst = worst.max(gap);
                }
            }
        }
    }
    Ok(format!("max gap {worst:e}"))
}
