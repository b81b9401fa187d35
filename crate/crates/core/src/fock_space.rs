//! Truncated number-basis representation of single-mode states.
//!
//! Wavelet states are given as `|ψ⟩ = Σ g_n a†ⁿ|0⟩`. Since
//! `a†ⁿ|0⟩ = √(n!)|n⟩`, the number-basis amplitudes are `g_n √(n!)`. The
//! admissibility condition `∫ψ dx = 0` is the vanishing of the overlap with
//! the zero-momentum eigenstate, `⟨p=0|ψ⟩ = π^{-1/4} Σ (2n-1)!! g_{2n}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{param, Error, Result};
use crate::math_core::{double_factorial_weights, gauss_legendre_rule};

/// Default number-basis cutoff for state vectors and operator matrices.
pub const DEFAULT_DIM: usize = 64;

/// Number of top basis states summed by [`FockVector::tail_mass`].
pub const TAIL_WINDOW: usize = 4;

/// Creation-operator expansion coefficients: `g[n]` multiplies `a†ⁿ|0⟩`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GCoefficients(Vec<f64>);

impl GCoefficients {
    /// Trims trailing zeros; rejects non-finite entries.
    pub fn new(mut g: Vec<f64>) -> Result<Self> {
        if let Some(bad) = g.iter().position(|v| !v.is_finite()) {
            return Err(param(format!("g[{bad}] is not finite")));
        }
        while g.last() == Some(&0.0) {
            g.pop();
        }
        Ok(Self(g))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, n: usize) -> f64 {
        self.0.get(n).copied().unwrap_or(0.0)
    }

    /// `Σ_n (2n-1)!! g[2n]`; zero exactly when the state is admissible.
    pub fn weighted_even_sum(&self) -> f64 {
        self.0
            .iter()
            .step_by(2)
            .zip(double_factorial_weights())
            .map(|(g, w)| w * g)
            .sum()
    }

    /// `Σ_n |(2n-1)!! g[2n]|`, the scale against which the weighted sum is judged.
    pub fn weighted_even_magnitude(&self) -> f64 {
        self.0
            .iter()
            .step_by(2)
            .zip(double_factorial_weights())
            .map(|(g, w)| (w * g).abs())
            .sum()
    }
}

impl TryFrom<Vec<f64>> for GCoefficients {
    type Error = Error;

    fn try_from(g: Vec<f64>) -> Result<Self> {
        GCoefficients::new(g)
    }
}

/// Complex amplitudes over `|0⟩ … |N-1⟩`.
///
/// Wavelet states are generally not normalized; `is_normalized` is only set
/// by [`FockVector::normalized`].
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: Vec<Complex64>,
    normalized: bool,
}

impl FockVector {
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(param("Fock vector needs at least one amplitude"));
        }
        if amps.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(param("Fock vector amplitudes must be finite"));
        }
        Ok(Self {
            amps,
            normalized: false,
        })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// `|n⟩` in a space of dimension `dim`.
    pub fn basis(n: usize, dim: usize) -> Result<Self> {
        if n >= dim {
            return Err(param(format!("basis index {n} outside dimension {dim}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[n] = Complex64::new(1.0, 0.0);
        Ok(Self {
            amps,
            normalized: true,
        })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::Degenerate("cannot normalize the zero vector".into()));
        }
        Ok(Self {
            amps: self.amps.iter().map(|c| c / n).collect(),
            normalized: true,
        })
    }

    /// `Σ_{n ≥ N-4} |c_n|²`: weight sitting next to the truncation edge.
    pub fn tail_mass(&self) -> f64 {
        let start = self.dim().saturating_sub(TAIL_WINDOW);
        self.amps[start..].iter().map(|c| c.norm_sqr()).sum()
    }

    /// `⟨x|v⟩ = Σ c_n ⟨x|n⟩`.
    pub fn position_value(&self, x: f64) -> Complex64 {
        let phi = position_wavefunctions(self.dim() - 1, x);
        self.amps.iter().zip(phi).map(|(c, p)| c * p).sum()
    }
}

/// Number-basis amplitudes `c[n] = g[n] √(n!)`, zero-padded to `dim`.
pub fn g_to_fock(g: &GCoefficients, dim: usize) -> Result<FockVector> {
    if dim <= g.len() {
        return Err(Error::Truncation(format!(
            "{} coefficients need a dimension above {}, got {dim}",
            g.len(),
            g.len()
        )));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let mut sqrt_fact = 1.0f64;
    for (n, &gn) in g.as_slice().iter().enumerate() {
        if n > 0 {
            sqrt_fact *= (n as f64).sqrt();
        }
        amps[n] = Complex64::new(gn * sqrt_fact, 0.0);
    }
    FockVector::new(amps)
}

/// `⟨x|n⟩ = (2ⁿ n! √π)^{-1/2} H_n(x) e^{-x²/2}`.
pub fn position_wavefunction(n: usize, x: f64) -> f64 {
    position_wavefunctions(n, x)[n]
}

/// `⟨x|k⟩` for `k = 0..=n_max`, by the normalized three-term recurrence
/// `φ_{k+1} = √(2/(k+1)) x φ_k - √(k/(k+1)) φ_{k-1}`.
pub fn position_wavefunctions(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    out.push(cur);
    for k in 0..n_max {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// `⟨p=0|ψ⟩ = π^{-1/4} Σ (2n-1)!! g[2n]`. Odd entries do not contribute.
pub fn p0_overlap(g: &GCoefficients) -> f64 {
    PI.powf(-0.25) * g.weighted_even_sum()
}

/// `π^{-1/4} exp(z̄²/2)`, the zero-momentum projection of the unnormalized
/// coherent state used in the weighted-sum derivation.
pub fn coherent_p0_overlap(z: Complex64) -> Complex64 {
    PI.powf(-0.25) * (z.conj() * z.conj() / 2.0).exp()
}

/// Radial and angular node counts for the coherent-state plane integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolarGrid {
    pub radial: usize,
    pub angular: usize,
}

impl Default for PolarGrid {
    fn default() -> Self {
        Self {
            radial: 200,
            angular: 200,
        }
    }
}

/// Relative change between a grid and its doubling above which the
/// coherent-state integral is rejected.
pub const COHERENT_REFINEMENT_TOL: f64 = 1e-6;

/// `π^{1/4}⟨p=0|a†^{2n}|0⟩` evaluated through the coherent-state resolution
/// of the identity:
///
/// `∫ (d²z/π) e^{-|z|²} z̄^{2n} e^{z²/2}`,
///
/// using Gauss–Legendre in the radius on `[0, radial_cutoff]` and the
/// periodic trapezoid rule in the angle. The result approximates
/// `(2n)!/(n! 2ⁿ)` without touching the factorial formula, and is checked
/// against a doubled grid.
pub fn weight_via_coherent_integral(n: usize, radial_cutoff: f64, grid: PolarGrid) -> Result<f64> {
    if n > 6 {
        return Err(param(format!(
            "coherent weight integral supports n <= 6, got {n}"
        )));
    }
    if !(radial_cutoff >= 6.0) || !radial_cutoff.is_finite() {
        return Err(param(format!(
            "radial cutoff must be >= 6, got {radial_cutoff}"
        )));
    }
    if grid.radial < 200 || grid.angular < 200 {
        return Err(param(format!(
            "polar grid must be at least 200 x 200, got {} x {}",
            grid.radial, grid.angular
        )));
    }
    let coarse = polar_integral(n, radial_cutoff, grid)?;
    let fine = polar_integral(
        n,
        radial_cutoff,
        PolarGrid {
            radial: 2 * grid.radial,
            angular: 2 * grid.angular,
        },
    )?;
    let change = (fine - coarse).abs() / fine.abs().max(f64::MIN_POSITIVE);
    if change > COHERENT_REFINEMENT_TOL {
        return Err(Error::Accuracy(format!(
            "coherent integral for n = {n} changed by {change:e} under grid doubling"
        )));
    }
    Ok(fine)
}

fn polar_integral(n: usize, cutoff: f64, grid: PolarGrid) -> Result<f64> {
    let radial = gauss_legendre_rule(grid.radial)?.mapped(0.0, cutoff);
    let dtheta = 2.0 * PI / grid.angular as f64;
    let power = 2 * n as i32;
    let angles: Vec<Complex64> = (0..grid.angular)
        .map(|j| Complex64::from_polar(1.0, j as f64 * dtheta))
        .collect();

    let total = radial.integrate(|r| {
        let angular_sum: Complex64 = angles
            .iter()
            .map(|&u| {
                let z = r * u;
                z.conj().powi(power) * (z * z / 2.0).exp()
            })
            .sum();
        r * (-r * r).exp() * angular_sum.re * dtheta
    });
    Ok(total / PI)
}

/// `Σ conj(u_n) v_n`.
pub fn fock_inner(u: &FockVector, v: &FockVector) -> Result<Complex64> {
    if u.dim() != v.dim() {
        return Err(param(format!(
            "inner product of vectors with dimensions {} and {}",
            u.dim(),
            v.dim()
        )));
    }
    Ok(u.amps.iter().zip(&v.amps).map(|(a, b)| a.conj() * b).sum())
}
