//! Strong-form oracle for the manufactured sources: numerical derivatives
//! of the exact fields and composite Gauss quadrature of the memory integral.

use biot_core::mms::ManufacturedCase;
use biot_core::schemes::SourceTerms;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{d1, d1_6, d2_6, gauss_01};

/// Step for first derivatives.
const H1: f64 = 1e-4;
/// Step of the sixth-order stencils used for second derivatives and for
/// derivatives of quadrature values. A fourth-order stencil cannot reach
/// 1e-8 on O(100) terms: truncation and cancellation cross above it.
const H2: f64 = 5e-3;

pub fn composite_gauss(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let rule = gauss_01(20);
    let pieces = 8;
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|k| {
            let lo = a + k as f64 * h;
            rule.iter().map(|&(x, w)| w * h * f(lo + x * h)).sum::<f64>()
        })
        .sum()
}

pub struct Oracle<'a> {
    pub case: &'a ManufacturedCase,
}

impl Oracle<'_> {
    fn u(&self, a: usize, x: [f64; 2], t: f64) -> f64 {
        self.case.displacement(x, t)[a]
    }

    fn p(&self, x: [f64; 2], t: f64) -> f64 {
        self.case.pressure(x, t)
    }

    fn shift(x: [f64; 2], d: usize, s: f64) -> [f64; 2] {
        let mut y = x;
        y[d] += s;
        y
    }

    /// `∂_d p` by finite differences.
    fn dp(&self, d: usize, x: [f64; 2], t: f64) -> f64 {
        d1(|s| self.p(Self::shift(x, d, s), t), 0.0, H1)
    }

    /// `∂_d ∂_e u_a`
    fn d2u(&self, a: usize, d: usize, e: usize, x: [f64; 2], t: f64) -> f64 {
        if d == e {
            d2_6(|s| self.u(a, Self::shift(x, d, s), t), 0.0, H2)
        } else {
            d1_6(
                |s| d1_6(|r| self.u(a, Self::shift(Self::shift(x, d, s), e, r), t), 0.0, H2),
                0.0,
                H2,
            )
        }
    }

    /// `C_d(x, t) = ∫_0^t A(t − ζ) ∂_d p(x, ζ) dζ`
    fn memory(&self, d: usize, x: [f64; 2], t: f64) -> f64 {
        let k = self.case.kernel();
        composite_gauss(|z| k.scalar(t - z) * self.dp(d, x, z), 0.0, t)
    }

    /// `(1/M) ∂_t p + α ∂_t ∇·u − (1/ρ_f) ∇·C`
    fn fluid_source(&self, x: [f64; 2], t: f64) -> f64 {
        let prm = self.case.params();
        let pt = d1(|s| self.p(x, t + s), 0.0, H1);
        let div_ut: f64 = (0..2)
            .map(|a| d1_6(|s| d1_6(|r| self.u(a, Self::shift(x, a, r), t + s), 0.0, H2), 0.0, H2))
            .sum();
        let k = self.case.kernel();
        let div_c: f64 = (0..2)
            .map(|d| {
                composite_gauss(
                    |z| k.scalar(t - z) * d2_6(|s| self.p(Self::shift(x, d, s), z), 0.0, H2),
                    0.0,
                    t,
                )
            })
            .sum();
        pt / prm.biot_modulus + prm.alpha * div_ut - div_c / prm.rho_f
    }

    /// `ρ ∂²_t u − ∇·σ − ∂_t C`
    fn body_force(&self, x: [f64; 2], t: f64) -> [f64; 2] {
        let prm = self.case.params();
        let mut out = [0.0; 2];
        for a in 0..2 {
            let utt = d2_6(|s| self.u(a, x, t + s), 0.0, H2);
            let laplace: f64 = (0..2).map(|d| self.d2u(a, d, d, x, t)).sum();
            let grad_div: f64 = (0..2).map(|b| self.d2u(b, a, b, x, t)).sum();
            let div_sigma =
                prm.mu * (laplace + grad_div) + prm.lambda * grad_div - prm.alpha * self.dp(a, x, t);
            let ct = d1_6(|s| self.memory(a, x, t + s), 0.0, H2);
            out[a] = prm.rho * utt - div_sigma - ct;
        }
        out
    }
}

pub fn check_case(case: &ManufacturedCase, seed: u64) -> f64 {
    let oracle = Oracle { case };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let x = [rng.gen_range(0.02..0.98), rng.gen_range(0.02..0.98)];
        let t = rng.gen_range(0.05..1.0);
        let f1 = case.body_force(x, t);
        let g1 = oracle.body_force(x, t);
        let f2 = case.fluid_source(x, t);
        let g2 = oracle.fluid_source(x, t);
        worst = worst
            .max((f1[0] - g1[0]).abs())
            .max((f1[1] - g1[1]).abs())
            .max((f2 - g2).abs());
    }
    worst
}

