//! Discretized adiabatic sweep of the Ising coupling.
//!
//! The coupling is sampled at `M + 1` points `J(m·T/M)`, `m = 0..=M`; each
//! sample is held for one step of length `Δt = T/(M + 1)`. Step `m` applies
//! `U_m = exp(-i H(J_m) Δt)` (or its symmetric Trotter splitting) and the
//! full evolution is `U_M ⋯ U_1 U_0`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::qla::{exp_minus_i, tensor, Matrix, StateVector};
use crate::scalar::Real;
use crate::spin_model::{self, bond_energies, ModelParams, N_SPINS};

/// Sharpness of the default sinh ramp.
pub const DEFAULT_KAPPA: f64 = 3.6;

/// Sign of the final coupling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    /// Antiferromagnetic, `J_max > 0`.
    Frustrated,
    /// Ferromagnetic, `J_max < 0`.
    NonFrustrated,
}

impl Regime {
    pub const ALL: [Regime; 2] = [Regime::Frustrated, Regime::NonFrustrated];

    pub fn sign(self) -> f64 {
        match self {
            Regime::Frustrated => 1.0,
            Regime::NonFrustrated => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Frustrated => "frustrated",
            Regime::NonFrustrated => "nonfrustrated",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "frustrated" => Ok(Regime::Frustrated),
            "nonfrustrated" => Ok(Regime::NonFrustrated),
            other => Err(Error::Usage(format!("unknown regime '{other}'"))),
        }
    }
}

/// How each step unitary is formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EvolutionMode {
    /// `exp(-i H Δt)` by eigendecomposition.
    Exact,
    /// Symmetric second-order splitting into field and Ising factors.
    Trotter2,
}

impl EvolutionMode {
    pub const ALL: [EvolutionMode; 2] = [EvolutionMode::Exact, EvolutionMode::Trotter2];

    pub fn as_str(self) -> &'static str {
        match self {
            EvolutionMode::Exact => "exact",
            EvolutionMode::Trotter2 => "trotter2",
        }
    }
}

impl fmt::Display for EvolutionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EvolutionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(EvolutionMode::Exact),
            "trotter2" => Ok(EvolutionMode::Trotter2),
            other => Err(Error::Usage(format!("unknown evolution mode '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape<T> {
    Linear,
    /// `J(s) = J_max · sinh(κ s) / sinh(κ)` for `s = t/T ∈ [0, 1]`.
    Sinh { kappa: T },
}

impl<T: Real> Shape<T> {
    fn validate(&self) -> Result<()> {
        match *self {
            Shape::Linear => Ok(()),
            Shape::Sinh { kappa } if kappa > T::zero() && kappa.is_finite() => Ok(()),
            Shape::Sinh { kappa } => Err(Error::Config(format!("sinh sharpness κ = {kappa} must be > 0"))),
        }
    }

    /// Fraction of `J_max` reached at `s ∈ [0, 1]`.
    pub fn profile(&self, s: T) -> T {
        match *self {
            Shape::Linear => s,
            Shape::Sinh { kappa } => (kappa * s).sinh() / kappa.sinh(),
        }
    }

    /// `d profile / ds`.
    pub fn profile_slope(&self, s: T) -> T {
        match *self {
            Shape::Linear => T::one(),
            Shape::Sinh { kappa } => kappa * (kappa * s).cosh() / kappa.sinh(),
        }
    }
}

/// Parameters from which a [`Schedule`] is built. Defaults: `M = 20`,
/// `h = 1`, `hΔt = π/21`, `|J_max|Δt = π/4`, sinh ramp with κ = 3.6.
#[derive(Clone, Copy, Debug)]
pub struct ScheduleConfig<T> {
    /// Final step index `M`; the sweep has `M + 1` steps.
    pub steps: usize,
    pub h: T,
    pub h_dt: T,
    /// Magnitude of `J_max·Δt`; the sign comes from `regime`.
    pub j_final_dt: T,
    pub shape: Shape<T>,
    pub regime: Regime,
}

impl<T: Real> ScheduleConfig<T> {
    pub fn standard(regime: Regime) -> Self {
        Self {
            steps: 20,
            h: T::one(),
            h_dt: T::PI() / T::lit(21.0),
            j_final_dt: T::FRAC_PI_4(),
            shape: Shape::Sinh { kappa: T::lit(DEFAULT_KAPPA) },
            regime,
        }
    }
}

/// Discretized coupling trajectory.
#[derive(Clone, Debug)]
pub struct Schedule<T> {
    steps: usize,
    h: T,
    dt: T,
    j_max: T,
    j_values: Vec<T>,
    shape: Shape<T>,
    regime: Regime,
}

pub fn make_schedule<T: Real>(config: &ScheduleConfig<T>) -> Result<Schedule<T>> {
    config.shape.validate()?;
    if !(config.h > T::zero()) || !config.h.is_finite() {
        return Err(Error::Config(format!("transverse field h = {} must be > 0", config.h)));
    }
    if !(config.h_dt >= T::zero()) || !config.h_dt.is_finite() {
        return Err(Error::Config(format!("hΔt = {} must be finite and >= 0", config.h_dt)));
    }
    if !config.j_final_dt.is_finite() {
        return Err(Error::Config("J(T)Δt must be finite".into()));
    }
    let dt = config.h_dt / config.h;
    let j_max = if dt.is_zero() {
        T::zero()
    } else {
        T::lit(config.regime.sign()) * config.j_final_dt.abs() / dt
    };
    let m = config.steps;
    let j_values = if m == 0 {
        vec![T::zero()]
    } else {
        let mm = T::lit(m as f64);
        (0..=m)
            .map(|k| j_max * config.shape.profile(T::lit(k as f64) / mm))
            .collect()
    };
    Ok(Schedule {
        steps: m,
        h: config.h,
        dt,
        j_max,
        j_values,
        shape: config.shape,
        regime: config.regime,
    })
}

impl<T: Real> Schedule<T> {
    /// Final step index `M`.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn h(&self) -> T {
        self.h
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn j_max(&self) -> T {
        self.j_max
    }

    pub fn j_values(&self) -> &[T] {
        &self.j_values
    }

    pub fn shape(&self) -> Shape<T> {
        self.shape
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// `T = (M + 1)Δt`.
    pub fn total_time(&self) -> T {
        T::lit((self.steps + 1) as f64) * self.dt
    }

    /// `dJ/dt` of the continuous ramp at fraction `s = t/T`.
    pub fn rate_at(&self, s: T) -> T {
        let total = self.total_time();
        if self.steps == 0 || total.is_zero() {
            return T::zero();
        }
        self.j_max * self.shape.profile_slope(s) / total
    }

    /// Model parameters held during step `m`.
    pub fn params_at(&self, m: usize) -> Result<ModelParams<T>> {
        ModelParams::new(self.h, self.j_values[m])
    }

    /// ε at schedule point `m`.
    pub fn epsilon_at_step(&self, m: usize) -> Result<T> {
        let s = if self.steps == 0 {
            T::zero()
        } else {
            T::lit(m as f64) / T::lit(self.steps as f64)
        };
        spin_model::adiabatic_epsilon(&self.params_at(m)?, self.rate_at(s))
    }

    /// Maximum ε over the continuous ramp, sampled at `points_per_step`
    /// points per schedule interval (endpoints included).
    pub fn epsilon_max(&self, points_per_step: usize) -> Result<T> {
        if self.steps == 0 {
            return self.epsilon_at_step(0);
        }
        let n = self.steps * points_per_step.max(1);
        let mut best = T::zero();
        for k in 0..=n {
            let s = T::lit(k as f64) / T::lit(n as f64);
            let p = ModelParams::new(self.h, self.j_max * self.shape.profile(s))?;
            best = best.max(spin_model::adiabatic_epsilon(&p, self.rate_at(s))?);
        }
        Ok(best)
    }
}

/// `exp(-i H(h, J) Δt)`.
pub fn step_unitary_exact<T: Real>(h: T, j: T, dt: T) -> Result<Matrix<T>> {
    exp_minus_i(&spin_model::hamiltonian(h, j), dt)
}

/// `exp(-i h Σσₓ τ) = ⊗ (cos(hτ) I − i sin(hτ) σₓ)`.
fn field_propagator<T: Real>(h: T, tau: T) -> Matrix<T> {
    let (c, s) = ((h * tau).cos(), (h * tau).sin());
    let single = Matrix::from_fn(2, |i, j| {
        if i == j {
            Complex::new(c, T::zero())
        } else {
            Complex::new(T::zero(), -s)
        }
    });
    tensor(&vec![single; N_SPINS]).expect("non-empty")
}

/// `exp(-i J B τ)`, diagonal.
fn ising_propagator<T: Real>(j: T, tau: T) -> Matrix<T> {
    let energies = bond_energies::<T>();
    let mut m = Matrix::zeros(energies.len());
    for (k, &e) in energies.iter().enumerate() {
        let phase = -(j * e * tau);
        m[(k, k)] = Complex::new(phase.cos(), phase.sin());
    }
    m
}

/// Second-order splitting
/// `exp(-i F Δt/2) · exp(-i J B Δt) · exp(-i F Δt/2)`.
pub fn step_unitary_trotter2<T: Real>(h: T, j: T, dt: T) -> Matrix<T> {
    let half = field_propagator(h, dt / T::lit(2.0));
    let mid = ising_propagator(j, dt);
    &(&half * &mid) * &half
}

pub fn step_unitary<T: Real>(mode: EvolutionMode, h: T, j: T, dt: T) -> Result<Matrix<T>> {
    match mode {
        EvolutionMode::Exact => step_unitary_exact(h, j, dt),
        EvolutionMode::Trotter2 => Ok(step_unitary_trotter2(h, j, dt)),
    }
}

/// States after each step of a sweep.
#[derive(Clone, Debug)]
pub struct Trajectory<T> {
    /// `states[k]` is the state after `k + 1` step unitaries.
    pub states: Vec<StateVector<T>>,
    pub mode: EvolutionMode,
    pub schedule: Schedule<T>,
}

impl<T: Real> Trajectory<T> {
    /// State after `k` steps, `1 ≤ k ≤ M + 1`.
    pub fn after_steps(&self, k: usize) -> Option<&StateVector<T>> {
        k.checked_sub(1).and_then(|i| self.states.get(i))
    }

    pub fn final_state(&self) -> &StateVector<T> {
        self.states.last().expect("trajectories hold at least one state")
    }
}

/// Applies `U_0, U_1, …, U_M` in order to `initial`.
pub fn evolve<T: Real>(
    initial: &StateVector<T>,
    schedule: &Schedule<T>,
    mode: EvolutionMode,
) -> Result<Trajectory<T>> {
    let mut states = Vec::with_capacity(schedule.steps + 1);
    let mut psi = initial.clone();
    for &j in &schedule.j_values {
        let u = step_unitary(mode, schedule.h, j, schedule.dt)?;
        psi = psi.evolve(&u);
        states.push(psi.clone());
    }
    Ok(Trajectory {
        states,
        mode,
        schedule: schedule.clone(),
    })
}

/// `|⟨ψ₀(p)|state⟩|²` against the instantaneous ground state.
pub fn ground_state_probability<T: Real>(state: &StateVector<T>, p: &ModelParams<T>) -> Result<T> {
    let g = spin_model::ground_state(p)?;
    if g.degenerate {
        return Err(Error::DegenerateGroundState { gap: g.gap.as_f64() });
    }
    Ok(g.state.overlap_sqr(state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_model::{all_minus, hamiltonian};
    use std::f64::consts::PI;

    fn cfg(regime: Regime) -> ScheduleConfig<f64> {
        ScheduleConfig::standard(regime)
    }

    #[test]
    fn default_schedule_endpoints() {
        for regime in Regime::ALL {
            let s = make_schedule(&cfg(regime)).unwrap();
            assert_eq!(s.j_values().len(), 21);
            assert_eq!(s.j_values()[0], 0.0);
            assert!((s.j_values()[20].abs() - 5.25).abs() < 1e-12);
            assert!((s.dt() - PI / 21.0).abs() < 1e-15);
            assert_eq!(s.j_values()[20].signum(), regime.sign());
            assert!(s.j_values().windows(2).all(|w| w[1].abs() >= w[0].abs()));
        }
    }

    #[test]
    fn linear_schedule_values() {
        let s = make_schedule(&ScheduleConfig {
            steps: 2,
            h: 1.0,
            h_dt: 0.5,
            j_final_dt: 0.5,
            shape: Shape::Linear,
            regime: Regime::Frustrated,
        })
        .unwrap();
        assert_eq!(s.j_values(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn sinh_midpoint() {
        let mut sp = cfg(Regime::Frustrated);
        sp.shape = Shape::Sinh { kappa: 3.0 };
        let s = make_schedule(&sp).unwrap();
        let ratio = s.j_values()[10] / s.j_max();
        let oracle = 1.5f64.sinh() / 3f64.sinh();
        assert!((ratio - oracle).abs() < 1e-15);
        assert!((ratio - 0.2125).abs() < 5e-4);
    }

    #[test]
    fn invalid_kappa() {
        let mut sp = cfg(Regime::Frustrated);
        sp.shape = Shape::Sinh { kappa: 0.0 };
        assert!(matches!(make_schedule(&sp), Err(Error::Config(_))));
        sp.shape = Shape::Sinh { kappa: -1.0 };
        assert!(matches!(make_schedule(&sp), Err(Error::Config(_))));
    }

    #[test]
    fn exact_step_cases() {
        assert_eq!(step_unitary_exact(1.0, 0.7, 0.0).unwrap(), Matrix::identity(8));
        let u = step_unitary_exact(1.0, 0.0, 0.3).unwrap();
        let field = exp_minus_i(&spin_model::field_term(1.0), 0.3).unwrap();
        assert!(u.max_abs_diff(&field) < 1e-14);
    }

    #[test]
    fn exact_step_matches_series_oracle() {
        // Taylor series of exp(-iHΔt) summed to convergence.
        let (h, j, dt) = (1.0, 1.0, 0.1);
        let hm = hamiltonian(h, j).scale(Complex::new(0.0, -dt));
        let mut term = Matrix::identity(8);
        let mut sum = Matrix::identity(8);
        for k in 1..40 {
            term = (&term * &hm).scale_real(1.0 / k as f64);
            sum = &sum + &term;
        }
        let u = step_unitary_exact(h, j, dt).unwrap();
        assert!(u.max_abs_diff(&sum) < 1e-10);
        let uu = &u * &u.adjoint();
        assert!(uu.max_abs_diff(&Matrix::identity(8)) < 1e-10);
    }

    #[test]
    fn trotter_exact_when_terms_commute() {
        for (h, j) in [(1.0, 0.0), (0.0, 1.3)] {
            let t = step_unitary_trotter2(h, j, 0.37);
            let e = step_unitary_exact(h, j, 0.37).unwrap();
            assert!(t.max_abs_diff(&e) < 1e-12);
        }
    }

    #[test]
    fn trotter_local_error_is_third_order() {
        let err = |dt: f64| {
            step_unitary_trotter2(1.0, 1.0, dt)
                .max_abs_diff(&step_unitary_exact(1.0, 1.0, dt).unwrap())
        };
        let ratio = err(0.2) / err(0.1);
        assert!((6.0..=10.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn single_step_trajectory() {
        let sp = ScheduleConfig {
            steps: 0,
            h: 1.0,
            h_dt: 0.0,
            j_final_dt: 0.0,
            shape: Shape::Linear,
            regime: Regime::Frustrated,
        };
        let s = make_schedule(&sp).unwrap();
        let psi = all_minus::<f64>();
        for mode in EvolutionMode::ALL {
            let t = evolve(&psi, &s, mode).unwrap();
            assert_eq!(t.states.len(), 1);
            assert!(t.states[0].amplitudes().iter().zip(psi.amplitudes()).all(|(a, b)| (a - b).norm() < 1e-15));
        }
    }

    #[test]
    fn zero_coupling_keeps_eigenstate() {
        let mut sp = cfg(Regime::Frustrated);
        sp.j_final_dt = 0.0;
        let s = make_schedule(&sp).unwrap();
        let psi = all_minus::<f64>();
        for mode in EvolutionMode::ALL {
            let t = evolve(&psi, &s, mode).unwrap();
            assert!((t.final_state().overlap_sqr(&psi) - 1.0).abs() < 1e-12);
            // global phase exp(+3i h T)
            let phase = 3.0 * s.total_time();
            let expected = Complex::new(phase.cos(), phase.sin());
            let got = psi.inner(t.final_state());
            assert!((got - expected).norm() < 1e-10);
        }
    }

    #[test]
    fn norm_preserved_along_trajectory() {
        for regime in Regime::ALL {
            let s = make_schedule(&cfg(regime)).unwrap();
            for mode in EvolutionMode::ALL {
                let t = evolve(&all_minus(), &s, mode).unwrap();
                assert_eq!(t.states.len(), 21);
                for st in &t.states {
                    assert!((st.norm() - 1.0).abs() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn regimes_coincide_after_first_step() {
        let a = make_schedule(&cfg(Regime::Frustrated)).unwrap();
        let b = make_schedule(&cfg(Regime::NonFrustrated)).unwrap();
        for mode in EvolutionMode::ALL {
            let ta = evolve(&all_minus(), &a, mode).unwrap();
            let tb = evolve(&all_minus(), &b, mode).unwrap();
            let d = ta.states[0]
                .amplitudes()
                .iter()
                .zip(tb.states[0].amplitudes())
                .fold(0.0f64, |m, (x, y)| m.max((x - y).norm()));
            assert!(d <= 1e-12);
        }
    }

    #[test]
    fn ground_probability_cases() {
        let p = ModelParams::new(1.0f64, 0.0).unwrap();
        assert!((ground_state_probability(&all_minus(), &p).unwrap() - 1.0).abs() < 1e-12);
        // |+++> is the top eigenstate of the field term.
        let plus = StateVector::normalized(vec![Complex::new(1.0, 0.0); 8]).unwrap();
        assert!(ground_state_probability(&plus, &p).unwrap() < 1e-12);
        let degenerate = ModelParams::new(1e-4, -1.0).unwrap();
        assert!(matches!(
            ground_state_probability(&plus, &degenerate),
            Err(Error::DegenerateGroundState { .. })
        ));
    }

    #[test]
    fn exact_nonfrustrated_sweep_stays_in_ground_state() {
        let s = make_schedule(&cfg(Regime::NonFrustrated)).unwrap();
        let t = evolve(&all_minus(), &s, EvolutionMode::Exact).unwrap();
        let p = ground_state_probability(t.final_state(), &s.params_at(20).unwrap()).unwrap();
        assert!(p >= 0.99, "p = {p}");
    }

    #[test]
    fn trotter_final_ground_probability() {
        for regime in Regime::ALL {
            let s = make_schedule(&cfg(regime)).unwrap();
            let t = evolve(&all_minus(), &s, EvolutionMode::Trotter2).unwrap();
            let p = ground_state_probability(t.final_state(), &s.params_at(20).unwrap()).unwrap();
            assert!(p >= 0.98, "{regime}: p = {p}");
        }
    }

    #[test]
    fn epsilon_profile_is_finite() {
        for regime in Regime::ALL {
            let s = make_schedule(&cfg(regime)).unwrap();
            for m in 0..=20 {
                let e = s.epsilon_at_step(m).unwrap();
                assert!(e.is_finite() && e >= 0.0);
            }
        }
    }

    #[test]
    fn mode_and_regime_parse() {
        assert_eq!("exact".parse::<EvolutionMode>().unwrap(), EvolutionMode::Exact);
        assert_eq!("trotter2".parse::<EvolutionMode>().unwrap(), EvolutionMode::Trotter2);
        assert!("rk4".parse::<EvolutionMode>().is_err());
        assert_eq!("nonfrustrated".parse::<Regime>().unwrap(), Regime::NonFrustrated);
        assert!("both".parse::<Regime>().is_err());
    }
}
