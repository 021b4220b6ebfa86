//! Manufactured solutions for the two benchmark cases.
//!
//! Both cases are separable: `u = T_u(t) (g, g)` and `p = T_p(t) g` for a
//! spatial shape `g` vanishing on the boundary. The memory integral then
//! reduces to `C(x, t) = c(t) ∇g(x)` with the scalar factor
//! `c(t) = ∫_0^t A(s (t − ζ)) T_p(ζ) dζ`, available in closed form for the
//! sinusoidal kernel family.

mod quad1d;

use std::f64::consts::PI;

use crate::error::{BiotError, Result};
use crate::fem::{interpolate_scalar, interpolate_vector};
use crate::mesh::{Mesh, Point, Space};
use crate::model::{BiotParameters, PermeabilityKernel};
use crate::schemes::{InitialData, SourceTerms};

pub use quad1d::integrate as adaptive_integrate;

/// Absolute tolerance of the quadrature fallback for `c(t)`.
pub const FACTOR_QUAD_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example {
    /// Polynomial: `u_i = t² xy(1−x)(1−y)`, `p = t xy(1−x)(1−y)`.
    One,
    /// Trigonometric: `u_i = p = sin(πt) sin(πx) sin(πy)`.
    Two,
}

impl Example {
    pub fn from_id(id: u32) -> Result<Self> {
        match id {
            1 => Ok(Example::One),
            2 => Ok(Example::Two),
            _ => Err(BiotError::InvalidInput(format!("unknown example {id}"))),
        }
    }

    pub fn id(&self) -> u32 {
        match self {
            Example::One => 1,
            Example::Two => 2,
        }
    }

    pub fn pressure_profile(&self) -> TimeProfile {
        match self {
            Example::One => TimeProfile::Linear,
            Example::Two => TimeProfile::SinPi,
        }
    }
}

/// Time dependence of the manufactured pressure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeProfile {
    /// `T(ζ) = ζ`
    Linear,
    /// `T(ζ) = sin(πζ)`
    SinPi,
}

impl TimeProfile {
    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "linear" | "t" => Ok(TimeProfile::Linear),
            "sin" | "sinpi" => Ok(TimeProfile::SinPi),
            other => Err(BiotError::InvalidInput(format!("unknown time profile '{other}'"))),
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            TimeProfile::Linear => t,
            TimeProfile::SinPi => (PI * t).sin(),
        }
    }
}

/// `c(t)` and `c'(t)` for the memory factor of a separable pressure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvolutionFactor {
    pub value: f64,
    pub derivative: f64,
}

/// Closed form of `c(t)` and `c'(t)`; falls back to adaptive quadrature
/// where the closed form is numerically unreliable (near-resonant kernel
/// and profile frequencies).
pub fn convolution_scalar_factor(
    kernel: &PermeabilityKernel,
    profile: TimeProfile,
    t: f64,
) -> ConvolutionFactor {
    let k0 = kernel.spec().k0();
    let (amp, freq) = kernel.spec().oscillation();
    let w = freq * kernel.lag_scaling();
    let oscillating = amp != 0.0 && w != 0.0;
    match profile {
        TimeProfile::Linear => {
            let mut value = 0.5 * t * t;
            let mut derivative = t;
            if oscillating {
                value += amp * (t / w - (w * t).sin() / (w * w));
                derivative += amp * (1.0 - (w * t).cos()) / w;
            }
            ConvolutionFactor {
                value: k0 * value,
                derivative: k0 * derivative,
            }
        }
        TimeProfile::SinPi => {
            let nu = PI;
            let mut value = (1.0 - (nu * t).cos()) / nu;
            let mut derivative = (nu * t).sin();
            if oscillating {
                let gap = (w - nu).abs();
                if gap == 0.0 {
                    // ∫_0^t sin(ν(t−ζ)) sin(νζ) dζ = (sin(νt)/ν − t cos(νt)) / 2
                    value += amp * 0.5 * ((nu * t).sin() / nu - t * (nu * t).cos());
                    derivative += amp * 0.5 * nu * t * (nu * t).sin();
                } else if gap > 1e-3 * nu {
                    let denom = w * w - nu * nu;
                    value += amp * (w * (nu * t).sin() - nu * (w * t).sin()) / denom;
                    derivative += amp * w * nu * ((nu * t).cos() - (w * t).cos()) / denom;
                } else {
                    return convolution_factor_by_quadrature(kernel, profile, t);
                }
            }
            ConvolutionFactor {
                value: k0 * value,
                derivative: k0 * derivative,
            }
        }
    }
}

/// `c(t)` by adaptive quadrature, `c'(t) = A(0) T(t) + ∫ A'(s(t−ζ)) s T(ζ) dζ`.
pub fn convolution_factor_by_quadrature(
    kernel: &PermeabilityKernel,
    profile: TimeProfile,
    t: f64,
) -> ConvolutionFactor {
    let s = kernel.lag_scaling();
    let k0 = kernel.spec().k0();
    let (amp, freq) = kernel.spec().oscillation();
    let value = adaptive_integrate(
        |z| kernel.scalar(t - z) * profile.value(z),
        0.0,
        t,
        FACTOR_QUAD_TOL,
    );
    let memory_rate = adaptive_integrate(
        |z| k0 * amp * freq * s * (freq * s * (t - z)).cos() * profile.value(z),
        0.0,
        t,
        FACTOR_QUAD_TOL,
    );
    ConvolutionFactor {
        value,
        derivative: kernel.scalar(0.0) * profile.value(t) + memory_rate,
    }
}

/// Spatial shape with the derivatives needed by the source terms.
#[derive(Debug, Clone, Copy)]
struct Shape {
    value: f64,
    grad: [f64; 2],
    /// `[g_xx, g_xy, g_yy]`
    hessian: [f64; 3],
}

/// Time factors `(T, T', T'')`.
type TimeFactors = (f64, f64, f64);

/// Exact solution bundle with generated source terms.
#[derive(Debug, Clone)]
pub struct ManufacturedCase {
    example: Example,
    params: BiotParameters,
    kernel: PermeabilityKernel,
}

impl ManufacturedCase {
    pub fn new(example: Example, params: BiotParameters, kernel: PermeabilityKernel) -> Self {
        Self {
            example,
            params,
            kernel,
        }
    }

    /// Example 1 with benchmark kernel `k0 (1 + 0.02 sin(π r))`.
    pub fn example1(params: BiotParameters, k0: f64) -> Result<Self> {
        let kernel = PermeabilityKernel::new(
            crate::model::KernelSpec::benchmark(k0),
            params.lag_scaling(),
        )?;
        Ok(Self::new(Example::One, params, kernel))
    }

    /// Example 2 with benchmark kernel `k0 (1 + 0.02 sin(π r))`.
    pub fn example2(params: BiotParameters, k0: f64) -> Result<Self> {
        let kernel = PermeabilityKernel::new(
            crate::model::KernelSpec::benchmark(k0),
            params.lag_scaling(),
        )?;
        Ok(Self::new(Example::Two, params, kernel))
    }

    pub fn example(&self) -> Example {
        self.example
    }

    pub fn params(&self) -> &BiotParameters {
        &self.params
    }

    pub fn kernel(&self) -> &PermeabilityKernel {
        &self.kernel
    }

    fn shape(&self, [x, y]: Point) -> Shape {
        match self.example {
            Example::One => Shape {
                value: x * y * (1.0 - x) * (1.0 - y),
                grad: [
                    y * (1.0 - y) * (1.0 - 2.0 * x),
                    x * (1.0 - x) * (1.0 - 2.0 * y),
                ],
                hessian: [
                    -2.0 * y * (1.0 - y),
                    (1.0 - 2.0 * x) * (1.0 - 2.0 * y),
                    -2.0 * x * (1.0 - x),
                ],
            },
            Example::Two => {
                let (sx, cx) = (PI * x).sin_cos();
                let (sy, cy) = (PI * y).sin_cos();
                let pi2 = PI * PI;
                Shape {
                    value: sx * sy,
                    grad: [PI * cx * sy, PI * sx * cy],
                    hessian: [-pi2 * sx * sy, pi2 * cx * cy, -pi2 * sx * sy],
                }
            }
        }
    }

    fn displacement_time(&self, t: f64) -> TimeFactors {
        match self.example {
            Example::One => (t * t, 2.0 * t, 2.0),
            Example::Two => {
                let (s, c) = (PI * t).sin_cos();
                (s, PI * c, -PI * PI * s)
            }
        }
    }

    fn pressure_time(&self, t: f64) -> TimeFactors {
        match self.example {
            Example::One => (t, 1.0, 0.0),
            Example::Two => self.displacement_time(t),
        }
    }

    pub fn pressure(&self, x: Point, t: f64) -> f64 {
        self.pressure_time(t).0 * self.shape(x).value
    }

    pub fn pressure_rate(&self, x: Point, t: f64) -> f64 {
        self.pressure_time(t).1 * self.shape(x).value
    }

    pub fn displacement(&self, x: Point, t: f64) -> [f64; 2] {
        let v = self.displacement_time(t).0 * self.shape(x).value;
        [v, v]
    }

    pub fn velocity(&self, x: Point, t: f64) -> [f64; 2] {
        let v = self.displacement_time(t).1 * self.shape(x).value;
        [v, v]
    }

    /// Memory factor `c(t)` and its derivative for this case.
    pub fn convolution_factor(&self, t: f64) -> ConvolutionFactor {
        convolution_scalar_factor(&self.kernel, self.example.pressure_profile(), t)
    }

    /// Exact nodal data at `t = 0` and the exact first level at `t = τ`.
    pub fn initial_data(&self, mesh: &Mesh, tau: f64) -> InitialData {
        InitialData {
            displacement: interpolate_vector(mesh, |x| self.displacement(x, 0.0)),
            velocity: interpolate_vector(mesh, |x| self.velocity(x, 0.0)),
            pressure: interpolate_scalar(mesh, Space::P1, |x| self.pressure(x, 0.0)),
            first_step: Some((
                interpolate_vector(mesh, |x| self.displacement(x, tau)),
                interpolate_scalar(mesh, Space::P1, |x| self.pressure(x, tau)),
            )),
        }
    }
}

impl SourceTerms for ManufacturedCase {
    /// `f₁ = ρ ∂²u − ∇·σ(u, p) − ∂_t C`.
    fn body_force(&self, x: Point, t: f64) -> [f64; 2] {
        let BiotParameters {
            alpha,
            rho,
            mu,
            lambda,
            ..
        } = self.params;
        let g = self.shape(x);
        let (tu, _, tu2) = self.displacement_time(t);
        let (tp, _, _) = self.pressure_time(t);
        let memory = self.convolution_factor(t).derivative;
        let [gxx, gxy, gyy] = g.hessian;
        let laplacian = gxx + gyy;
        let grad_div = [gxx + gxy, gxy + gyy];
        let mut out = [0.0; 2];
        for c in 0..2 {
            let div_sigma = tu * (mu * laplacian + (mu + lambda) * grad_div[c]) - alpha * tp * g.grad[c];
            out[c] = rho * tu2 * g.value - div_sigma - memory * g.grad[c];
        }
        out
    }

    /// `f₂ = (1/M) ∂_t p + α ∂_t ∇·u − (1/ρ_f) ∇·C`.
    fn fluid_source(&self, x: Point, t: f64) -> f64 {
        let p = &self.params;
        let g = self.shape(x);
        let (_, tu1, _) = self.displacement_time(t);
        let (_, tp1, _) = self.pressure_time(t);
        let c = self.convolution_factor(t).value;
        let laplacian = g.hessian[0] + g.hessian[2];
        tp1 * g.value / p.biot_modulus + p.alpha * tu1 * (g.grad[0] + g.grad[1])
            - c * laplacian / p.rho_f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::KernelSpec;

    #[test]
    fn point_values() {
        let p = BiotParameters::benchmark();
        let one = ManufacturedCase::example1(p, 1.0).unwrap();
        assert!((one.pressure([0.5, 0.5], 1.0) - 0.0625).abs() < 1e-15);
        let u = one.displacement([0.5, 0.5], 1.0);
        assert!(((u[0] * u[0] + u[1] * u[1]).sqrt() - 0.088_388).abs() < 1e-6);

        let two = ManufacturedCase::example2(p, 1.0).unwrap();
        assert!((two.pressure([0.5, 0.5], 0.05) - 0.156_434).abs() < 1e-6);
        let x = [0.3, 0.7];
        assert_eq!(two.pressure(x, 0.0), 0.0);
        assert_eq!(two.displacement(x, 0.0), [0.0, 0.0]);
        let v = two.velocity(x, 0.0);
        let expected = PI * (PI * 0.3).sin() * (PI * 0.7).sin();
        assert!((v[0] - expected).abs() < 1e-14 && (v[1] - expected).abs() < 1e-14);
    }

    #[test]
    fn closed_form_factors() {
        let k = PermeabilityKernel::benchmark(1.0).unwrap();
        for profile in [TimeProfile::Linear, TimeProfile::SinPi] {
            let f = convolution_scalar_factor(&k, profile, 0.0);
            assert_eq!(f.value, 0.0);
        }
        let c1 = convolution_scalar_factor(&k, TimeProfile::Linear, 1.0);
        assert!((c1.value - (0.5 + 0.02 / PI)).abs() < 1e-15);
        assert!((c1.value - 0.506_366_20).abs() < 1e-8);

        let constant = PermeabilityKernel::constant(2.5).unwrap();
        let c = convolution_scalar_factor(&constant, TimeProfile::Linear, 0.8);
        assert!((c.value - 2.5 * 0.32).abs() < 1e-15);
        assert!((c.derivative - 2.5 * 0.8).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_quadrature_for_every_branch() {
        // resonant (ω s = π), non-resonant and near-resonant kernels
        for (freq, scaling) in [(PI, 1.0), (2.0, 1.0), (PI, 1.5), (PI * (1.0 + 1e-5), 1.0)] {
            let spec = KernelSpec::Sinusoidal {
                k0: 1.3,
                amplitude: 0.1,
                frequency: freq,
            };
            let k = PermeabilityKernel::new(spec, scaling).unwrap();
            for profile in [TimeProfile::Linear, TimeProfile::SinPi] {
                for i in 0..=20 {
                    let t = i as f64 * 0.07;
                    let a = convolution_scalar_factor(&k, profile, t);
                    let b = convolution_factor_by_quadrature(&k, profile, t);
                    assert!((a.value - b.value).abs() < 1e-11);
                    assert!((a.derivative - b.derivative).abs() < 1e-11);
                }
            }
        }
    }

    #[test]
    fn unknown_tags() {
        assert!(TimeProfile::from_tag("cubic").is_err());
        assert!(Example::from_id(3).is_err());
        assert_eq!(Example::from_id(2).unwrap(), Example::Two);
    }

    #[test]
    fn fields_vanish_on_boundary() {
        let p = BiotParameters::benchmark();
        for case in [
            ManufacturedCase::example1(p, 1.0).unwrap(),
            ManufacturedCase::example2(p, 1.0).unwrap(),
        ] {
            for i in 0..=250 {
                let s = i as f64 / 250.0;
                for x in [[s, 0.0], [s, 1.0], [0.0, s], [1.0, s]] {
                    for t in [0.0, 0.1, 0.35, 1.0] {
                        assert!(case.pressure(x, t).abs() <= 1e-14);
                        let u = case.displacement(x, t);
                        assert!(u[0].abs() <= 1e-14 && u[1].abs() <= 1e-14);
                    }
                }
            }
        }
    }
}
