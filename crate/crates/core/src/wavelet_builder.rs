//! Mother wavelets synthesized from creation-operator coefficients.
//!
//! Projecting `Σ g_n a†ⁿ|0⟩` onto `⟨x|` gives
//! `ψ(x) = π^{-1/4} e^{-x²/2} P(x)` with envelope `P = Σ g_n H_n / 2^{n/2}`.
//! For even `n` the scale `2^{-n/2}` is a power of two, so integer-valued
//! `g` reproduce integer envelopes bit-exactly.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use crate::error::{param, Error, Result};
use crate::fock_space::GCoefficients;
use crate::math_core::{
    default_hermite_rule, double_factorial_weights, gauss_legendre_rule, hermite_poly, Polynomial,
    QuadratureRule,
};

/// Admissibility gate on `|Σ (2n-1)!! g_{2n}|`, relative to
/// `max(1, Σ |(2n-1)!! g_{2n}|)`.
pub const ADMISSIBILITY_TOL: f64 = 1e-12;

/// Grid points used by [`zero_crossings`] before bisection.
pub const DEFAULT_SCAN_POINTS: usize = 16_001;

/// Width at which bisection of a bracketed root stops.
pub const ROOT_TOL: f64 = 1e-12;

/// `ψ(x) = π^{-1/4} e^{-x²/2} P(x)`, together with the coefficients it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct MotherWavelet {
    g: GCoefficients,
    envelope: Polynomial,
    normalized: bool,
}

impl MotherWavelet {
    pub fn g(&self) -> &GCoefficients {
        &self.g
    }

    pub fn envelope(&self) -> &Polynomial {
        &self.envelope
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// `Σ (2n-1)!! g_{2n}`, zero for an admissible wavelet.
    pub fn residual(&self) -> f64 {
        self.g.weighted_even_sum()
    }

    /// `π^{-1/4} e^{-x²/2} P(x)`.
    pub fn evaluate(&self, x: f64) -> f64 {
        PI.powf(-0.25) * (-0.5 * x * x).exp() * self.envelope.evaluate(x)
    }

    /// Rescales to unit L² norm and sets the flag.
    pub fn normalized(&self) -> Result<MotherWavelet> {
        let norm = l2_norm(self);
        if norm == 0.0 {
            return Err(Error::Degenerate("cannot normalize a zero wavelet".into()));
        }
        let g = GCoefficients::new(self.g.as_slice().iter().map(|v| v / norm).collect())?;
        Ok(MotherWavelet {
            g,
            envelope: self.envelope.scale(1.0 / norm),
            normalized: true,
        })
    }
}

/// `Σ g_n H_n / 2^{n/2}`.
pub fn envelope_from_g(g: &GCoefficients) -> Result<Polynomial> {
    let mut p = Polynomial::zero();
    for (n, &gn) in g.as_slice().iter().enumerate() {
        if gn == 0.0 {
            continue;
        }
        let mut scale = 2f64.powi(-((n / 2) as i32));
        if n % 2 == 1 {
            scale *= FRAC_1_SQRT_2;
        }
        p = p.add(&hermite_poly(n)?.scale(gn * scale));
    }
    Ok(p)
}

fn is_admissible(g: &GCoefficients) -> bool {
    g.weighted_even_sum().abs() <= ADMISSIBILITY_TOL * g.weighted_even_magnitude().max(1.0)
}

/// Builds the wavelet for `g`, refusing coefficients that fail the
/// admissibility gate.
pub fn build_wavelet(g: &GCoefficients) -> Result<MotherWavelet> {
    if !is_admissible(g) {
        return Err(Error::Inadmissible {
            residual: g.weighted_even_sum(),
        });
    }
    build_wavelet_ungated(g)
}

/// Same synthesis with the admissibility gate bypassed. Used for signals
/// such as the vacuum Gaussian and for negative tests.
pub fn build_wavelet_ungated(g: &GCoefficients) -> Result<MotherWavelet> {
    Ok(MotherWavelet {
        envelope: envelope_from_g(g)?,
        g: g.clone(),
        normalized: false,
    })
}

/// `ψ = ⟨x|n⟩`, i.e. `g = e_n / √(n!)`. Not admissible for even `n`.
pub fn basis_wavelet(n: usize) -> Result<MotherWavelet> {
    let inv_sqrt_fact = (1..=n).fold(1.0f64, |acc, k| acc / (k as f64).sqrt());
    let mut g = vec![0.0; n + 1];
    g[n] = inv_sqrt_fact;
    let w = build_wavelet_ungated(&GCoefficients::new(g)?)?;
    Ok(MotherWavelet {
        normalized: true,
        ..w
    })
}

/// Sets `g[free_index]` so that `Σ (2n-1)!! g_{2n} = 0`, leaving every other
/// entry as given.
pub fn solve_free_coefficient(
    g_partial: &GCoefficients,
    free_index: usize,
) -> Result<GCoefficients> {
    if free_index % 2 == 1 {
        return Err(param(format!(
            "free index {free_index} is odd; odd coefficients carry no weight"
        )));
    }
    let mut g = g_partial.as_slice().to_vec();
    if g.len() <= free_index {
        g.resize(free_index + 1, 0.0);
    }
    g[free_index] = 0.0;
    let rest = GCoefficients::new(g.clone())?.weighted_even_sum();
    let weight = double_factorial_weights()
        .nth(free_index / 2)
        .expect("weight stream is infinite");
    if !weight.is_finite() {
        return Err(Error::Capacity {
            what: format!("weight for free index {free_index}"),
            max: 300,
        });
    }
    g[free_index] = -rest / weight;
    GCoefficients::new(g)
}

/// Orthogonal projection of the even-index subvector onto the hyperplane
/// `⟨w, g_even⟩ = 0`; odd entries pass through untouched.
///
/// Takes the raw, untrimmed slots: trailing zeros count, since they widen
/// the space the projection may move into (`[1, 0, 0]` projects to
/// `[1/2, 0, -1/2]` while `[1]` has nowhere to go).
pub fn project_admissible(raw: &[f64]) -> Result<GCoefficients> {
    if let Some(bad) = raw.iter().position(|v| !v.is_finite()) {
        return Err(param(format!("g[{bad}] is not finite")));
    }
    let mut out = raw.to_vec();
    let weights: Vec<f64> = double_factorial_weights()
        .take(out.len().div_ceil(2))
        .collect();
    let ww: f64 = weights.iter().map(|w| w * w).sum();
    // a second pass removes the rounding residue left by the first
    for _ in 0..2 {
        let wg: f64 = out
            .iter()
            .step_by(2)
            .zip(&weights)
            .map(|(g, w)| g * w)
            .sum();
        if wg == 0.0 {
            break;
        }
        let c = wg / ww;
        for (slot, w) in out.iter_mut().step_by(2).zip(&weights) {
            *slot -= c * w;
        }
    }
    let scale = raw.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let survivors = out.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || survivors <= 1e-12 * scale {
        return Err(Error::Degenerate(
            "coefficients lie along the constraint normal; projection is zero".into(),
        ));
    }
    GCoefficients::new(out)
}

/// `∫ψ(x)dx` by Gauss–Hermite under `x = √2 u`, which turns `e^{-x²/2}`
/// into the rule's weight `e^{-u²}`.
pub fn integral_check(w: &MotherWavelet) -> f64 {
    let rule = default_hermite_rule();
    SQRT_2 * PI.powf(-0.25) * rule.integrate(|u| w.envelope.evaluate(SQRT_2 * u))
}

/// `‖ψ‖₂`, exact for envelopes of degree up to 63.
pub fn l2_norm(w: &MotherWavelet) -> f64 {
    let rule = default_hermite_rule();
    let sq = rule.integrate(|x| {
        let p = w.envelope.evaluate(x);
        p * p
    }) / PI.sqrt();
    sq.sqrt()
}

/// Sign changes of `ψ` on the real line, i.e. odd-multiplicity real roots
/// of the envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCrossings {
    pub locations: Vec<f64>,
}

impl ZeroCrossings {
    pub fn count(&self) -> usize {
        self.locations.len()
    }
}

pub fn zero_crossings(w: &MotherWavelet) -> Result<ZeroCrossings> {
    zero_crossings_with_resolution(w, DEFAULT_SCAN_POINTS)
}

/// Sign scan of `P` on `[-R, R]`, `R = max(8, 2√deg P)`, followed by
/// bisection of each bracket down to [`ROOT_TOL`].
pub fn zero_crossings_with_resolution(w: &MotherWavelet, points: usize) -> Result<ZeroCrossings> {
    let p = &w.envelope;
    let Some(deg) = p.degree() else {
        return Err(param("zero crossings of an identically zero envelope"));
    };
    if points < 2 {
        return Err(param("scan needs at least two points"));
    }
    let radius = 8f64.max(2.0 * (deg as f64).sqrt());
    let step = 2.0 * radius / (points - 1) as f64;

    let mut locations = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for i in 0..points {
        let x = -radius + step * i as f64;
        let v = p.evaluate(x);
        if v == 0.0 {
            continue;
        }
        if let Some((x0, v0)) = last {
            if (v0 < 0.0) != (v < 0.0) {
                locations.push(bisect(p, x0, v0, x));
            }
        }
        last = Some((x, v));
    }
    Ok(ZeroCrossings { locations })
}

fn bisect(p: &Polynomial, mut lo: f64, v_lo: f64, mut hi: f64) -> f64 {
    let lo_negative = v_lo < 0.0;
    for _ in 0..200 {
        if hi - lo <= ROOT_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let v = p.evaluate(mid);
        if v == 0.0 {
            return mid;
        }
        if (v < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Lower cutoffs at which the admissibility-constant integral is compared.
const CONSTANT_EPS_COARSE: f64 = 1e-6;
const CONSTANT_EPS_FINE: f64 = 1e-12;
const CONSTANT_GROWTH_TOL: f64 = 1e-6;

/// `|ψ̂(ω)|² = π^{-1/2} e^{-ω²} Q(ω)`; returns `Q`.
///
/// Hermite functions are Fourier eigenfunctions, `⟨x|n⟩ ↦ (-i)ⁿ⟨ω|n⟩`, so
/// the transform keeps the envelope shape with the even part weighted by
/// `(-1)^{n/2}` and the odd part rotated onto the imaginary axis.
pub fn spectral_density_polynomial(w: &MotherWavelet) -> Result<Polynomial> {
    let mut even = Polynomial::zero();
    let mut odd = Polynomial::zero();
    for (n, &gn) in w.g.as_slice().iter().enumerate() {
        if gn == 0.0 {
            continue;
        }
        let mut scale = 2f64.powi(-((n / 2) as i32));
        let h = hermite_poly(n)?;
        if n % 2 == 0 {
            let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
            even = even.add(&h.scale(sign * gn * scale));
        } else {
            scale *= FRAC_1_SQRT_2;
            let sign = if n.div_ceil(2) % 2 == 0 { 1.0 } else { -1.0 };
            odd = odd.add(&h.scale(sign * gn * scale));
        }
    }
    Ok(even.mul(&even).add(&odd.mul(&odd)))
}

/// `C = ∫ |ψ̂(ω)|² / |ω| dω`.
///
/// The integrand is even; the half-line integral is taken over
/// log-spaced decades from a small cutoff `ε` up to 1 and unit panels
/// beyond. `ψ̂(0) = 0` makes the integrand vanish at the origin, so the
/// value stabilizes as `ε → 0`. Growth between `ε = 1e-6` and `ε = 1e-12`
/// means the input was not admissible and is reported as
/// [`Error::Divergent`].
pub fn admissibility_constant(w: &MotherWavelet) -> Result<f64> {
    let q = spectral_density_polynomial(w)?;
    if q.is_zero() {
        return Ok(0.0);
    }
    let deg = q.degree().unwrap_or(0) as f64;
    let upper = 10.0 + deg.sqrt();
    let panel = gauss_legendre_rule(16)?;

    let coarse = half_line_integral(&q, &panel, CONSTANT_EPS_COARSE, upper);
    let fine = half_line_integral(&q, &panel, CONSTANT_EPS_FINE, upper);
    if (fine - coarse).abs() > CONSTANT_GROWTH_TOL * fine.abs() {
        return Err(Error::Divergent {
            coarse,
            fine,
            eps_coarse: CONSTANT_EPS_COARSE,
            eps_fine: CONSTANT_EPS_FINE,
        });
    }
    Ok(fine)
}

fn half_line_integral(q: &Polynomial, panel: &QuadratureRule, eps: f64, upper: f64) -> f64 {
    let integrand = |om: f64| q.evaluate(om) * (-om * om).exp() / om;
    let mut total = 0.0;
    let mut a = eps;
    while a < 1.0 {
        let b = (a * 10.0).min(1.0);
        total += panel.mapped(a, b).integrate(integrand);
        a = b;
    }
    let mut a = 1.0;
    while a < upper {
        let b = (a + 0.5).min(upper);
        total += panel.mapped(a, b).integrate(integrand);
        a = b;
    }
    2.0 * total / PI.sqrt()
}
