//! Number-basis matrices for the squeeze-translate operator
//! `U(μ, s) = μ^{-1/2} ∫ |(x-s)/μ⟩⟨x| dx`, and the check that
//! `⟨ψ|U(μ,s)|f⟩` reproduces the integral wavelet transform.
//!
//! With `μ = e^λ` the operator factors in normal order as
//!
//! ```text
//! U = e^{-s²/(2(1+μ²))}
//!     · exp[-(a†²/2) tanh λ - (s a†/√2) sech λ]
//!     · exp[(a†a + ½) ln sech λ]
//!     · exp[(a²/2) tanh λ + (s a/√2) (1 - tanh λ)]
//! ```
//!
//! The last linear coefficient is `2/(1+μ²) = sech λ / μ`, which is what the
//! cross term of the completed square gives; it equals `sech λ` only at
//! `μ = 1`.
//!
//! The outer factors are exponentials of strictly band-shifting matrices,
//! so their power series terminate inside the truncated space. Because
//! the left factor is lower triangular and the right one upper
//! triangular, every entry `⟨m|U|n⟩` with `m, n < N` is computed from
//! `k ≤ min(m, n)` only and is independent of the cutoff `N`.
//!
//! The sum over `k` alternates in sign, and for rows beyond roughly 100
//! the cancellation eats most of the significant digits. Keep `N` at or
//! below 128 unless the squeeze is mild.

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{param, Error, Result};
use crate::fock_space::{fock_inner, g_to_fock, position_wavefunctions, FockVector, GCoefficients};
use crate::math_core::gauss_legendre_rule;
use crate::transform_engine::{linspace, transform_analytic, AnalyticSignal};
use crate::wavelet_builder::{build_wavelet, build_wavelet_ungated};

pub const MIN_DIM: usize = 8;

/// Relative size below which a power-series term is dropped.
pub const SERIES_TOL: f64 = 1e-16;

/// States whose top-of-space weight exceeds this are refused by
/// [`two_route_equivalence`].
pub const MAX_TAIL_MASS: f64 = 1e-10;

/// `U(μ, s)` on `|0⟩ … |N-1⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: Array2<Complex64>,
    mu: f64,
    s: f64,
    lambda: f64,
    truncation_bound: f64,
}

impl OperatorMatrix {
    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `⟨m|U|n⟩`.
    pub fn element(&self, m: usize, n: usize) -> Complex64 {
        self.entries[[m, n]]
    }

    /// `max_{n ≤ N/4} |‖U e_n‖ - 1|`.
    pub fn truncation_bound(&self) -> f64 {
        self.truncation_bound
    }

    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        if v.dim() != self.dim() {
            return Err(param(format!(
                "operator of dimension {} applied to a vector of dimension {}",
                self.dim(),
                v.dim()
            )));
        }
        let amps = v.amplitudes();
        let out = (0..self.dim())
            .map(|m| {
                (0..self.dim())
                    .map(|n| self.entries[[m, n]] * amps[n])
                    .sum::<Complex64>()
            })
            .collect();
        FockVector::new(out)
    }
}

/// `exp(α a†² + β a†)` truncated to `dim`, by its power series.
fn creation_exponential(alpha: f64, beta: f64, dim: usize) -> Array2<f64> {
    let mut sum = Array2::<f64>::eye(dim);
    let mut term = Array2::<f64>::eye(dim);
    let one_step: Vec<f64> = (0..dim).map(|j| beta * ((j + 1) as f64).sqrt()).collect();
    let two_step: Vec<f64> = (0..dim)
        .map(|j| alpha * (((j + 1) * (j + 2)) as f64).sqrt())
        .collect();

    for k in 1..=dim {
        // term ← term · X / k, where X has entries on the first two sub-diagonals
        let mut next = Array2::<f64>::zeros((dim, dim));
        let mut largest = 0.0f64;
        for i in 0..dim {
            for j in 0..i {
                let mut v = 0.0;
                if j < i {
                    v += term[[i, j + 1]] * one_step[j];
                }
                if j + 2 <= i {
                    v += term[[i, j + 2]] * two_step[j];
                }
                v /= k as f64;
                next[[i, j]] = v;
                largest = largest.max(v.abs());
            }
        }
        sum += &next;
        term = next;
        let scale = sum.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if largest <= SERIES_TOL * scale {
            break;
        }
    }
    sum
}

/// Builds `U(μ, s)` from the three-factor normal-ordered form.
pub fn squeeze_translate_matrix(mu: f64, s: f64, dim: usize) -> Result<OperatorMatrix> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(param(format!("scale must be positive, got {mu}")));
    }
    if !s.is_finite() {
        return Err(param("translation must be finite"));
    }
    if dim < MIN_DIM {
        return Err(param(format!(
            "dimension must be at least {MIN_DIM}, got {dim}"
        )));
    }
    let lambda = mu.ln();
    let mu2 = mu * mu;
    let sech = 2.0 * mu / (1.0 + mu2);
    let tanh = (mu2 - 1.0) / (mu2 + 1.0);
    let root2 = std::f64::consts::SQRT_2;

    let left = creation_exponential(-0.5 * tanh, -s * sech / root2, dim);
    let right = creation_exponential(0.5 * tanh, s * (1.0 - tanh) / root2, dim);
    let ln_sech = sech.ln();
    let middle: Vec<f64> = (0..dim)
        .map(|n| ((n as f64 + 0.5) * ln_sech).exp())
        .collect();
    let prefactor = (-s * s / (2.0 * (1.0 + mu2))).exp();

    // right = creation_exponential(..)ᵀ, so right[[n, k]] is the (k, n) entry
    // of the annihilation factor.
    let mut entries = Array2::<Complex64>::zeros((dim, dim));
    for m in 0..dim {
        for n in 0..dim {
            let mut acc = 0.0;
            for k in 0..=m.min(n) {
                acc += left[[m, k]] * middle[k] * right[[n, k]];
            }
            entries[[m, n]] = Complex64::new(prefactor * acc, 0.0);
        }
    }

    let truncation_bound = (0..=dim / 4)
        .map(|n| {
            let col: f64 = (0..dim).map(|m| entries[[m, n]].norm_sqr()).sum();
            (col.sqrt() - 1.0).abs()
        })
        .fold(0.0, f64::max);

    Ok(OperatorMatrix {
        entries,
        mu,
        s,
        lambda,
        truncation_bound,
    })
}

/// `⟨m|U(μ,s)|n⟩ = μ^{-1/2} ∫ ⟨m|(x-s)/μ⟩⟨x|n⟩ dx`, straight from the
/// integral definition by composite Gauss–Legendre quadrature.
pub fn matrix_element_oracle(mu: f64, s: f64, m: usize, n: usize) -> Result<f64> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(param(format!("scale must be positive, got {mu}")));
    }
    // each wavefunction is negligible beyond its classical turning point + 10
    let reach = |k: usize| (2.0 * k as f64 + 1.0).sqrt() + 10.0;
    let lo = (-reach(n)).max(s - mu * reach(m));
    let hi = reach(n).min(s + mu * reach(m));
    if lo >= hi {
        return Ok(0.0);
    }
    let rule = gauss_legendre_rule(20)?;
    let width = 0.25 * mu.min(1.0);
    let panels = ((hi - lo) / width).ceil().max(1.0) as usize;
    let h = (hi - lo) / panels as f64;
    let integrand = |x: f64| {
        let left = position_wavefunctions(m, (x - s) / mu)[m];
        let right = position_wavefunctions(n, x)[n];
        left * right
    };
    let total: f64 = (0..panels)
        .map(|k| {
            let a = lo + h * k as f64;
            rule.mapped(a, a + h).integrate(integrand)
        })
        .sum();
    Ok(total / mu.sqrt())
}

/// Scaling-and-squaring matrix exponential with a Taylor core.
pub fn expm(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    let norm1 = (0..n)
        .map(|j| (0..n).map(|i| a[[i, j]].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm1 > 0.5 {
        (norm1 / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a.mapv(|v| v / 2f64.powi(squarings));

    // ‖A‖ ≤ 1/2: the degree-24 remainder is below 2^-25/25! ≈ 2e-33
    let mut result = Array2::<Complex64>::eye(n);
    let mut term = Array2::<Complex64>::eye(n);
    for k in 1..=24 {
        term = term.dot(&scaled).mapv(|v| v / k as f64);
        result += &term;
    }
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}

/// Deviation between the factorized `U(μ, 0)` and the squeeze operator
/// `exp[(λ/2)(a² - a†²)]`, over the top-left quarter block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeReport {
    pub max_deviation: f64,
    pub block: usize,
}

pub fn squeeze_generator(lambda: f64, dim: usize) -> Array2<Complex64> {
    let mut g = Array2::<Complex64>::zeros((dim, dim));
    for n in 2..dim {
        let c = 0.5 * lambda * ((n * (n - 1)) as f64).sqrt();
        // a² maps |n⟩ → √(n(n-1))|n-2⟩; a†² is its transpose
        g[[n - 2, n]] += Complex64::new(c, 0.0);
        g[[n, n - 2]] -= Complex64::new(c, 0.0);
    }
    g
}

pub fn pure_squeeze_check(mu: f64, dim: usize) -> Result<SqueezeReport> {
    let u = squeeze_translate_matrix(mu, 0.0, dim)?;
    let reference = expm(&squeeze_generator(mu.ln(), dim));
    let block = dim / 4;
    Ok(SqueezeReport {
        max_deviation: max_block_deviation(u.entries(), &reference, block),
        block,
    })
}

/// `max |A - B|` over the top-left `block × block` entries.
pub fn max_block_deviation(a: &Array2<Complex64>, b: &Array2<Complex64>, block: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..block {
        for j in 0..block {
            worst = worst.max((a[[i, j]] - b[[i, j]]).norm());
        }
    }
    worst
}

/// `⟨ψ|U(μ,s)|f⟩`.
pub fn quantum_transform(psi: &FockVector, f: &FockVector, mu: f64, s: f64) -> Result<Complex64> {
    if psi.dim() != f.dim() {
        return Err(param(format!(
            "state dimensions differ: {} and {}",
            psi.dim(),
            f.dim()
        )));
    }
    let u = squeeze_translate_matrix(mu, s, f.dim())?;
    fock_inner(psi, &u.apply(f)?)
}

/// Largest gap between the operator route and the integral route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteReport {
    pub max_deviation: f64,
    pub worst: (f64, f64),
}

/// `n_mu × n_s` grid with `μ` evenly over `[0.5, 2]` and `s` over `[-2, 2]`.
pub fn standard_grid(n_mu: usize, n_s: usize) -> Vec<(f64, f64)> {
    let mus = linspace(0.5, 2.0, n_mu);
    let ss = linspace(-2.0, 2.0, n_s);
    mus.iter()
        .flat_map(|&mu| ss.iter().map(move |&s| (mu, s)))
        .collect()
}

/// Compares `⟨ψ|U(μ,s)|f⟩` against `W_ψ f(μ, s)` from the integral route
/// over every grid point. `psi_g` must be admissible; `f_g` may be any state.
pub fn two_route_equivalence(
    psi_g: &GCoefficients,
    f_g: &GCoefficients,
    grid: &[(f64, f64)],
    dim: usize,
) -> Result<RouteReport> {
    let psi_vec = g_to_fock(psi_g, dim)?;
    let f_vec = g_to_fock(f_g, dim)?;
    for (name, v) in [("wavelet", &psi_vec), ("signal", &f_vec)] {
        let rel = v.tail_mass() / v.norm().powi(2).max(f64::MIN_POSITIVE);
        if rel > MAX_TAIL_MASS {
            return Err(Error::Truncation(format!(
                "{name} state has relative tail mass {rel:e} at dimension {dim}"
            )));
        }
    }
    let psi_w = build_wavelet(psi_g)?;
    let f_signal = AnalyticSignal::from(&build_wavelet_ungated(f_g)?);

    let deviations = grid
        .par_iter()
        .map(|&(mu, s)| {
            let quantum = quantum_transform(&psi_vec, &f_vec, mu, s)?;
            let integral = transform_analytic(&psi_w, &f_signal, mu, s)?;
            Ok(((quantum - integral).norm(), (mu, s)))
        })
        .collect::<Result<Vec<_>>>()?;
    let (max_deviation, worst) =
        deviations
            .into_iter()
            .fold((0.0, (f64::NAN, f64::NAN)), |acc, d| {
                if d.0 >= acc.0 {
                    d
                } else {
                    acc
                }
            });
    Ok(RouteReport {
        max_deviation,
        worst,
    })
}
