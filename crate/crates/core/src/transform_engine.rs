//! Daughter wavelets `ψ_{(μ,s)}(x) = μ^{-1/2} ψ((x-s)/μ)` and the
//! continuous wavelet transform
//! `W_ψ f(μ, s) = μ^{-1/2} ∫ f(x) ψ*((x-s)/μ) dx`.
//!
//! Two evaluation paths: an exact one for Gaussian-times-polynomial
//! signals and a trapezoid rule over arbitrary sampled signals.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{param, Result};
use crate::math_core::{
    default_hermite_rule, gauss_hermite_rule, Polynomial, DEFAULT_HERMITE_ORDER, MAX_HERMITE_ORDER,
};
use crate::wavelet_builder::MotherWavelet;

/// Daughter wavelets are cut off at `|x - s| > 8μ`; the discarded envelope
/// is below `e^{-32}`.
pub const TRUNCATION_RADIUS: f64 = 8.0;

fn check_scale(mu: f64) -> Result<()> {
    if mu > 0.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(param(format!(
            "scale must be positive and finite, got {mu}"
        )))
    }
}

/// `μ^{-1/2} ψ((x - s)/μ)`.
pub fn daughter_eval(w: &MotherWavelet, mu: f64, s: f64, x: f64) -> Result<f64> {
    check_scale(mu)?;
    Ok(w.evaluate((x - s) / mu) / mu.sqrt())
}

/// `f(x) = A e^{-y²/2} P(y)` with `y = (x - c)/σ`.
///
/// Closed under translation and under the norm-preserving dilation
/// `f ↦ c^{-1/2} f(·/c)`, and exactly integrable against any daughter
/// wavelet by Gauss–Hermite.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSignal {
    pub envelope: Polynomial,
    pub center: f64,
    pub width: f64,
    pub amplitude: f64,
}

impl AnalyticSignal {
    pub fn zero() -> Self {
        Self {
            envelope: Polynomial::zero(),
            center: 0.0,
            width: 1.0,
            amplitude: 0.0,
        }
    }

    /// `x ↦ f(x - a)`.
    pub fn shifted(&self, a: f64) -> Self {
        Self {
            center: self.center + a,
            ..self.clone()
        }
    }

    /// `x ↦ c^{-1/2} f(x/c)`.
    pub fn dilated(&self, c: f64) -> Result<Self> {
        check_scale(c)?;
        Ok(Self {
            envelope: self.envelope.clone(),
            center: self.center * c,
            width: self.width * c,
            amplitude: self.amplitude / c.sqrt(),
        })
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        let y = (x - self.center) / self.width;
        self.amplitude * (-0.5 * y * y).exp() * self.envelope.evaluate(y)
    }
}

impl From<&MotherWavelet> for AnalyticSignal {
    fn from(w: &MotherWavelet) -> Self {
        Self {
            envelope: w.envelope().clone(),
            center: 0.0,
            width: 1.0,
            amplitude: PI.powf(-0.25),
        }
    }
}

/// Exact transform of an [`AnalyticSignal`].
///
/// The two Gaussians combine into `e^{K} e^{-a(x-x₀)²}` with
/// `a = (σ⁻² + μ⁻²)/2`, `x₀ = (c/σ² + s/μ²)/(2a)` and
/// `K = -(c - s)²/(2(σ² + μ²))`; what remains is a polynomial, integrated
/// exactly by a Gauss–Hermite rule of sufficient order.
pub fn transform_analytic(w: &MotherWavelet, f: &AnalyticSignal, mu: f64, s: f64) -> Result<f64> {
    check_scale(mu)?;
    check_scale(f.width)?;
    if f.amplitude == 0.0 || f.envelope.is_zero() || w.envelope().is_zero() {
        return Ok(0.0);
    }
    let sigma = f.width;
    let a = 0.5 * (1.0 / (sigma * sigma) + 1.0 / (mu * mu));
    let x0 = (f.center / (sigma * sigma) + s / (mu * mu)) / (2.0 * a);
    let k = -(f.center - s).powi(2) / (2.0 * (sigma * sigma + mu * mu));
    let root_a = a.sqrt();

    let degree = f.envelope.degree().unwrap_or(0) + w.envelope().degree().unwrap_or(0);
    let order = (degree / 2 + 1).max(DEFAULT_HERMITE_ORDER);
    let owned;
    let rule = if order == DEFAULT_HERMITE_ORDER {
        default_hermite_rule()
    } else {
        if order > MAX_HERMITE_ORDER {
            return Err(param(format!(
                "combined envelope degree {degree} exceeds exact quadrature range"
            )));
        }
        owned = gauss_hermite_rule(order)?;
        &owned
    };
    let psi_env = w.envelope();
    let sum = rule.integrate(|u| {
        let x = x0 + u / root_a;
        f.envelope.evaluate((x - f.center) / sigma) * psi_env.evaluate((x - s) / mu)
    });
    Ok(f.amplitude * PI.powf(-0.25) / mu.sqrt() * k.exp() / root_a * sum)
}

/// Signal samples on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    xs: Vec<f64>,
    fs: Vec<Complex64>,
    real: bool,
}

impl SampledSignal {
    pub fn new_real(xs: Vec<f64>, fs: Vec<f64>) -> Result<Self> {
        let fs = fs.into_iter().map(|v| Complex64::new(v, 0.0)).collect();
        let mut sig = Self::new_complex(xs, fs)?;
        sig.real = true;
        Ok(sig)
    }

    pub fn new_complex(xs: Vec<f64>, fs: Vec<Complex64>) -> Result<Self> {
        if xs.len() != fs.len() {
            return Err(param(format!(
                "grid has {} points but {} samples",
                xs.len(),
                fs.len()
            )));
        }
        if xs.len() < 2 {
            return Err(param("a sampled signal needs at least two points"));
        }
        if xs.iter().any(|x| !x.is_finite()) {
            return Err(param("grid contains a non-finite abscissa"));
        }
        if let Some(i) = xs.windows(2).position(|p| p[1] <= p[0]) {
            return Err(param(format!(
                "grid is not strictly increasing at index {}",
                i + 1
            )));
        }
        Ok(Self {
            xs,
            fs,
            real: false,
        })
    }

    /// Samples `f` on `n` evenly spaced points of `[lo, hi]`.
    pub fn from_fn(lo: f64, hi: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if n < 2 || !(hi > lo) {
            return Err(param("need n >= 2 and lo < hi"));
        }
        let xs = linspace(lo, hi, n);
        let fs = xs.iter().map(|&x| f(x)).collect();
        Self::new_real(xs, fs)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.fs
    }

    pub fn is_real(&self) -> bool {
        self.real
    }
}

/// `n` evenly spaced points from `lo` to `hi`, endpoints exact.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect()
}

/// The truncated daughter reached past the sampled grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageShortfall {
    pub window: (f64, f64),
    pub grid: (f64, f64),
}

/// A sampled-path transform value plus any coverage annotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledTransform {
    pub value: Complex64,
    pub shortfall: Option<CoverageShortfall>,
}

/// Trapezoid rule for `μ^{-1/2} ∫ f(x) ψ*((x-s)/μ) dx` over the grid points
/// inside `|x - s| ≤ 8μ`.
pub fn transform_sampled(
    w: &MotherWavelet,
    f: &SampledSignal,
    mu: f64,
    s: f64,
) -> Result<SampledTransform> {
    check_scale(mu)?;
    let lo = s - TRUNCATION_RADIUS * mu;
    let hi = s + TRUNCATION_RADIUS * mu;
    let xs = &f.xs;
    let first = xs.partition_point(|&x| x < lo);
    let end = xs.partition_point(|&x| x <= hi);

    let inv_sqrt_mu = 1.0 / mu.sqrt();
    let integrand = |i: usize| f.fs[i] * (w.evaluate((xs[i] - s) / mu) * inv_sqrt_mu);
    let mut value = Complex64::new(0.0, 0.0);
    if end > first + 1 {
        let mut prev = integrand(first);
        for i in first + 1..end {
            let cur = integrand(i);
            value += (prev + cur) * (0.5 * (xs[i] - xs[i - 1]));
            prev = cur;
        }
    }
    let grid = (xs[0], xs[xs.len() - 1]);
    let shortfall = (grid.0 > lo || grid.1 < hi).then_some(CoverageShortfall {
        window: (lo, hi),
        grid,
    });
    Ok(SampledTransform { value, shortfall })
}

/// `W_ψ f` over a `μ × s` grid, row-major in `μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scalogram {
    mus: Vec<f64>,
    ss: Vec<f64>,
    cells: Vec<SampledTransform>,
}

impl Scalogram {
    pub fn mus(&self) -> &[f64] {
        &self.mus
    }

    pub fn ss(&self) -> &[f64] {
        &self.ss
    }

    pub fn cell(&self, i: usize, j: usize) -> &SampledTransform {
        &self.cells[i * self.ss.len() + j]
    }

    pub fn value(&self, i: usize, j: usize) -> Complex64 {
        self.cell(i, j).value
    }

    /// `(μ, s, cell)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, &SampledTransform)> + '_ {
        let ns = self.ss.len();
        self.cells
            .iter()
            .enumerate()
            .map(move |(k, c)| (self.mus[k / ns], self.ss[k % ns], c))
    }

    pub fn shortfall_count(&self) -> usize {
        self.cells.iter().filter(|c| c.shortfall.is_some()).count()
    }
}

/// Evaluates every cell independently (in parallel); the result does not
/// depend on scheduling.
pub fn scalogram(
    w: &MotherWavelet,
    f: &SampledSignal,
    mus: &[f64],
    ss: &[f64],
) -> Result<Scalogram> {
    for &mu in mus {
        check_scale(mu)?;
    }
    if ss.iter().any(|s| !s.is_finite()) {
        return Err(param("translations must be finite"));
    }
    let ns = ss.len();
    let cells = (0..mus.len() * ns)
        .into_par_iter()
        .map(|k| transform_sampled(w, f, mus[k / ns], ss[k % ns]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Scalogram {
        mus: mus.to_vec(),
        ss: ss.to_vec(),
        cells,
    })
}
