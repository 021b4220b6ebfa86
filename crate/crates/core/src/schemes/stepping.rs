use crate::error::{BiotError, Result};
use crate::fem::{apply_dirichlet, zero_masked};
use crate::model::{
    flow_convolution, mechanics_convolution, trapezoid_weights, HistoryMode, HistoryStore,
};
use crate::sparse::{norm2, CsrMatrix, DirectSolver};

use super::discretization::{Discretization, StepForcing};
use super::{InitialData, SplitConfig, StepReport};

/// Absolute increments this many times larger than the first one are
/// treated as divergence.
const DIVERGENCE_GROWTH: f64 = 1e6;

/// Levels `n−2`, `n−1` and the pressure history `p⁰..p^{n−1}` needed to
/// compute level `n`.
#[derive(Debug, Clone)]
pub struct SchemeState {
    level: usize,
    u_prev: Vec<f64>,
    u_prev2: Vec<f64>,
    history: HistoryStore,
}

impl SchemeState {
    /// State ready to compute level 2.
    pub fn new(disc: &Discretization, initial: &InitialData) -> Result<Self> {
        let (nu, np) = (disc.displacement_dofs(), disc.pressure_dofs());
        let (u1, p1) = initial.first_level(disc.tau());
        for (len, expected) in [
            (initial.displacement.len(), nu),
            (initial.velocity.len(), nu),
            (u1.len(), nu),
            (initial.pressure.len(), np),
            (p1.len(), np),
        ] {
            if len != expected {
                return Err(BiotError::DimensionMismatch { expected, got: len });
            }
        }
        let mut history = HistoryStore::new(disc.tau(), np)?;
        history.push(initial.pressure.clone())?;
        history.push(p1)?;
        Ok(Self {
            level: 2,
            u_prev: u1,
            u_prev2: initial.displacement.clone(),
            history,
        })
    }

    /// Level about to be computed.
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn u_prev(&self) -> &[f64] {
        &self.u_prev
    }

    pub fn u_prev2(&self) -> &[f64] {
        &self.u_prev2
    }

    pub fn p_prev(&self) -> &[f64] {
        self.history.last().expect("history holds at least two levels")
    }

    pub fn history(&self) -> &HistoryStore {
        &self.history
    }

    /// Accepts `(uⁿ, pⁿ)` and moves to level `n + 1`.
    pub fn advance(&mut self, u: Vec<f64>, p: Vec<f64>) -> Result<()> {
        if u.len() != self.u_prev.len() {
            return Err(BiotError::DimensionMismatch {
                expected: self.u_prev.len(),
                got: u.len(),
            });
        }
        self.history.push(p)?;
        self.u_prev2 = std::mem::replace(&mut self.u_prev, u);
        self.level += 1;
        Ok(())
    }
}

/// Right-hand sides of both rows with every known quantity moved over.
struct LevelRhs {
    mechanics: Vec<f64>,
    flow: Vec<f64>,
}

fn level_rhs(disc: &Discretization, state: &SchemeState, forcing: &StepForcing) -> Result<LevelRhs> {
    let n = state.level;
    let p = disc.params();
    let tau = disc.tau();
    let tau2 = tau * tau;
    if forcing.body.len() != disc.displacement_dofs() || forcing.fluid.len() != disc.pressure_dofs()
    {
        return Err(BiotError::DimensionMismatch {
            expected: disc.displacement_dofs(),
            got: forcing.body.len(),
        });
    }
    let history = &state.history;
    let flow_history =
        flow_convolution(history, disc.kernel(), n, &disc.stiffness, HistoryMode::ExcludeCurrent)?;
    let memory = mechanics_convolution(history, disc.kernel(), n, &disc.grad)?;

    // ρ M_u (2u^{n−1} − u^{n−2}) + τ² (memory + F₁)
    let inertia: Vec<f64> = state
        .u_prev
        .iter()
        .zip(&state.u_prev2)
        .map(|(a, b)| 2.0 * a - b)
        .collect();
    let mut mechanics = disc.mass_u.matvec(&inertia)?;
    for ((m, e), f) in mechanics.iter_mut().zip(&memory.explicit).zip(&forcing.body) {
        *m = p.rho * *m + tau2 * (e + f);
    }

    // (1/M) M_p p^{n−1} + α B u^{n−1} − (τ²/ρ_f) history + τ F₂
    let mut flow = disc.mass_p.matvec(state.p_prev())?;
    let coupled = disc.div.matvec(&state.u_prev)?;
    for (((r, c), h), f) in flow
        .iter_mut()
        .zip(&coupled)
        .zip(&flow_history)
        .zip(&forcing.fluid)
    {
        *r = *r / p.biot_modulus + p.alpha * c - tau2 / p.rho_f * h + tau * f;
    }
    Ok(LevelRhs { mechanics, flow })
}

/// Coefficient of `pⁿ` on the left of the mechanics row, sign flipped:
/// `α Bᵀ + G(A(0) + ω_n ΔAⁿ)`.
fn pressure_coupling(disc: &Discretization) -> Result<CsrMatrix> {
    CsrMatrix::linear_combination(&[(disc.params().alpha, &disc.div_t), (1.0, &disc.grad_implicit)])
}

fn mechanics_operator(disc: &Discretization) -> Result<CsrMatrix> {
    let tau = disc.tau();
    CsrMatrix::linear_combination(&[(disc.params().rho, &disc.mass_u), (tau * tau, &disc.elasticity)])
}

/// `(1/M + L) M_p + (τ² ω_n / ρ_f) K(A(0))`.
fn flow_operator(disc: &Discretization, stabilization: f64) -> Result<CsrMatrix> {
    let p = disc.params();
    let tau = disc.tau();
    let end_weight = trapezoid_weights(1)[1];
    CsrMatrix::linear_combination(&[
        (1.0 / p.biot_modulus + stabilization, &disc.mass_p),
        (tau * tau * end_weight / p.rho_f, &disc.stiffness_now),
    ])
}

/// Factored monolithic block matrix `[u; p]`, constant over the run.
#[derive(Debug, Clone)]
pub struct MonolithicSolver {
    raw: CsrMatrix,
    solver: DirectSolver,
    mask: Vec<bool>,
}

impl MonolithicSolver {
    pub fn new(disc: &Discretization) -> Result<Self> {
        let tau2 = disc.tau() * disc.tau();
        let blocks = disc.blocks();
        let upper = pressure_coupling(disc)?.scaled(-tau2);
        let lower = disc.div.scaled(disc.params().alpha);
        let a00 = mechanics_operator(disc)?;
        let a11 = flow_operator(disc, 0.0)?;
        let raw = blocks.flatten([[Some(&a00), Some(&upper)], [Some(&lower), Some(&a11)]])?;
        let mask = blocks.join_masks(&disc.mask_u, &disc.mask_p);
        let mut dummy = vec![0.0; blocks.dim()];
        let eliminated = apply_dirichlet(&raw, &mut dummy, &mask)?;
        Ok(Self {
            solver: DirectSolver::lu(&eliminated)?,
            raw,
            mask,
        })
    }

    /// Block matrix before boundary elimination.
    pub fn matrix(&self) -> &CsrMatrix {
        &self.raw
    }
}

/// Solves level `n = state.level()` of the coupled system in one block solve.
pub fn monolithic_step(
    disc: &Discretization,
    solver: &MonolithicSolver,
    state: &SchemeState,
    forcing: &StepForcing,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = state.level;
    let run = || -> Result<(Vec<f64>, Vec<f64>)> {
        let rhs = level_rhs(disc, state, forcing)?;
        let blocks = disc.blocks();
        let mut b = blocks.join(&rhs.mechanics, &rhs.flow);
        zero_masked(&mut b, &solver.mask);
        let x = solver.solver.solve(&b)?;
        Ok(blocks.split(&x))
    };
    run().map_err(|e| e.at_level(n))
}

/// `‖r‖ / ‖b‖` of the monolithic system at the state's level for a
/// candidate pair, with boundary rows excluded.
pub fn monolithic_residual(
    disc: &Discretization,
    solver: &MonolithicSolver,
    state: &SchemeState,
    forcing: &StepForcing,
    u: &[f64],
    p: &[f64],
) -> Result<f64> {
    let rhs = level_rhs(disc, state, forcing)?;
    let blocks = disc.blocks();
    let mut b = blocks.join(&rhs.mechanics, &rhs.flow);
    let ax = solver.raw.matvec(&blocks.join(u, p))?;
    let mut r: Vec<f64> = b.iter().zip(&ax).map(|(b, a)| b - a).collect();
    zero_masked(&mut r, &solver.mask);
    zero_masked(&mut b, &solver.mask);
    let nb = norm2(&b);
    let nr = norm2(&r);
    Ok(if nb > 0.0 { nr / nb } else { nr })
}

/// Factored pressure and mechanics operators of the splitting.
#[derive(Debug, Clone)]
pub struct FixedStressSolver {
    config: SplitConfig,
    pressure: DirectSolver,
    mechanics: DirectSolver,
    coupling: CsrMatrix,
}

impl FixedStressSolver {
    pub fn new(disc: &Discretization, config: SplitConfig) -> Result<Self> {
        config.validate()?;
        let mut dp = vec![0.0; disc.pressure_dofs()];
        let mut du = vec![0.0; disc.displacement_dofs()];
        let flow = apply_dirichlet(&flow_operator(disc, config.stabilization)?, &mut dp, &disc.mask_p)?;
        let mech = apply_dirichlet(&mechanics_operator(disc)?, &mut du, &disc.mask_u)?;
        Ok(Self {
            config,
            pressure: DirectSolver::cholesky(&flow)?,
            mechanics: DirectSolver::cholesky(&mech)?,
            coupling: pressure_coupling(disc)?,
        })
    }

    pub fn config(&self) -> &SplitConfig {
        &self.config
    }
}

/// Fixed-stress iteration for level `n = state.level()`. The iteration
/// starts from `guess` when given, else from `(u^{n−1}, p^{n−1})`.
pub fn fixed_stress_step(
    disc: &Discretization,
    solver: &FixedStressSolver,
    state: &SchemeState,
    forcing: &StepForcing,
    guess: Option<(&[f64], &[f64])>,
) -> Result<(Vec<f64>, Vec<f64>, StepReport)> {
    let n = state.level;
    fixed_stress_iterate(disc, solver, state, forcing, guess).map_err(|e| e.at_level(n))
}

fn fixed_stress_iterate(
    disc: &Discretization,
    solver: &FixedStressSolver,
    state: &SchemeState,
    forcing: &StepForcing,
    guess: Option<(&[f64], &[f64])>,
) -> Result<(Vec<f64>, Vec<f64>, StepReport)> {
    let n = state.level;
    let params = disc.params();
    let tau2 = disc.tau() * disc.tau();
    let SplitConfig {
        stabilization,
        tolerance,
        max_iterations,
    } = solver.config;
    let rhs = level_rhs(disc, state, forcing)?;
    let (mut u, mut p) = match guess {
        Some((u, p)) => (u.to_vec(), p.to_vec()),
        None => (state.u_prev.clone(), state.p_prev().to_vec()),
    };
    if u.len() != disc.displacement_dofs() || p.len() != disc.pressure_dofs() {
        return Err(BiotError::DimensionMismatch {
            expected: disc.displacement_dofs(),
            got: u.len(),
        });
    }
    // the lagged coupling uses u^{n,k−1} − u^{n−1}; the u^{n−1} part is in rhs.flow
    let mut increments = Vec::new();
    let mut first_abs = None;
    for k in 1..=max_iterations {
        let mut bp = disc.mass_p.matvec(&p)?;
        let coupled = disc.div.matvec(&u)?;
        for ((b, r), c) in bp.iter_mut().zip(&rhs.flow).zip(&coupled) {
            *b = r + stabilization * *b - params.alpha * c;
        }
        zero_masked(&mut bp, &disc.mask_p);
        let p_new = solver.pressure.solve(&bp)?;

        let mut bu = solver.coupling.matvec(&p_new)?;
        for (b, r) in bu.iter_mut().zip(&rhs.mechanics) {
            *b = r + tau2 * *b;
        }
        zero_masked(&mut bu, &disc.mask_u);
        u = solver.mechanics.solve(&bu)?;

        let diff: Vec<f64> = p_new.iter().zip(&p).map(|(a, b)| a - b).collect();
        let abs_inc = disc.pressure_norm(&diff)?;
        let size = disc.pressure_norm(&p_new)?;
        p = p_new;
        let relative = if size > 0.0 { abs_inc / size } else { abs_inc };
        increments.push(relative);

        if !abs_inc.is_finite() || !size.is_finite() {
            return Err(BiotError::SplittingDiverged {
                level: n,
                iterations: k,
                increment: relative,
            });
        }
        if abs_inc <= tolerance * size {
            let report = StepReport {
                level: n,
                time: n as f64 * disc.tau(),
                iterations: k,
                final_increment: relative,
                increments,
            };
            return Ok((u, p, report));
        }
        let first = *first_abs.get_or_insert(abs_inc);
        if k >= 3 && abs_inc > DIVERGENCE_GROWTH * first {
            return Err(BiotError::SplittingDiverged {
                level: n,
                iterations: k,
                increment: relative,
            });
        }
    }
    Err(BiotError::SplittingNotConverged {
        level: n,
        iterations: max_iterations,
        increment: increments.last().copied().unwrap_or(f64::NAN),
    })
}
