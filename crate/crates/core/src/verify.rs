//! Self-check suite behind `monogamy-ising verify`: closed-form oracles and
//! invariants of every numerical layer, run on seeded inputs.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex;
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::adiabatic::{
    evolve, make_schedule, step_unitary_exact, step_unitary_trotter2, EvolutionMode, Regime,
    ScheduleConfig,
};
use crate::correlations::{
    discord_scores, entanglement_monogamy_score, negativity, quantum_discord, BipartiteSplit,
};
use crate::error::Result;
use crate::nmr_model::{pseudo_pure, PurityFactor};
use crate::qla::{
    exp_minus_i, fidelity, hermitian_eig, partial_trace, partial_transpose, random_density,
    random_pure_state, von_neumann_entropy, DensityMatrix, Matrix, StateVector,
};
use crate::spin_model::{adiabatic_epsilon, all_minus, build_hamiltonian, ground_state, ModelParams};

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> Result<(bool, String)>;

const SEED: u64 = 0x5eed;

fn c(re: f64) -> Complex<f64> {
    Complex::new(re, 0.0)
}

fn bell() -> DensityMatrix<f64> {
    let s = FRAC_1_SQRT_2;
    StateVector::new(vec![c(s), c(0.0), c(0.0), c(s)])
        .expect("unit norm")
        .projector()
}

fn ghz() -> DensityMatrix<f64> {
    let s = FRAC_1_SQRT_2;
    let mut a = vec![c(0.0); 8];
    a[0] = c(s);
    a[7] = c(s);
    StateVector::new(a).expect("unit norm").projector()
}

fn within(value: f64, expected: f64, tol: f64) -> (bool, String) {
    let err = (value - expected).abs();
    (err <= tol, format!("{value:.12} (expected {expected}, |err| {err:.1e} ≤ {tol:.0e})"))
}

fn eig_reconstruction() -> Result<(bool, String)> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let h = random_density::<f64, _>(&mut rng, 3, 8).matrix().clone();
        let e = hermitian_eig(&h)?;
        let back = e.reconstruct_with(|l| Complex::new(l, 0.0));
        worst = worst.max(back.max_abs_diff(&h));
    }
    Ok((worst <= 1e-10, format!("max reconstruction error {worst:.1e}")))
}

fn exp_inverse() -> Result<(bool, String)> {
    let mut rng = StdRng::seed_from_u64(SEED + 1);
    let h = random_density::<f64, _>(&mut rng, 3, 8).matrix().scale_real(5.0);
    let u = exp_minus_i(&h, 0.7)?;
    let v = exp_minus_i(&h, -0.7)?;
    let err = (&u * &v).max_abs_diff(&Matrix::identity(8));
    Ok((err <= 1e-10, format!("‖U(s)U(−s) − I‖ = {err:.1e}")))
}

fn bell_marginal() -> Result<(bool, String)> {
    let r = partial_trace(&bell(), &[1])?;
    let err = r.matrix().max_abs_diff(&Matrix::identity(2).scale_real(0.5));
    Ok((err <= 1e-12, format!("deviation from I/2 {err:.1e}")))
}

fn bell_partial_transpose() -> Result<(bool, String)> {
    let pt = partial_transpose(&bell(), 0)?;
    let e = hermitian_eig(&pt)?.values;
    let expected = [-0.5, 0.5, 0.5, 0.5];
    let err = e.iter().zip(expected).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    Ok((err <= 1e-12, format!("spectrum {e:?}")))
}

fn entropy_value() -> Result<(bool, String)> {
    let rho = DensityMatrix::qubits(Matrix::from_real_diagonal(&[0.75, 0.25]))?;
    let oracle = -(0.75f64 * 0.75f64.log2() + 0.25 * 0.25f64.log2());
    Ok(within(von_neumann_entropy(&rho)?, oracle, 1e-12))
}

fn fidelity_value() -> Result<(bool, String)> {
    let zero = StateVector::basis(1, 0)?.projector();
    let mixed = DensityMatrix::maximally_mixed(vec![2])?;
    Ok(within(fidelity(&zero, &mixed)?, FRAC_1_SQRT_2, 1e-12))
}

fn ground_energy() -> Result<(bool, String)> {
    // Lowest eigenvalue of the symmetric two-level block containing |---⟩.
    let mut worst = 0.0f64;
    for j in [-5.25f64, -1.0, 0.0, 1.0, 5.25] {
        let e0 = ground_state(&ModelParams::new(1.0, j)?)?.energy;
        let oracle = j - 1.0 - ((2.0 + j) * (2.0 + j) + 3.0 * j * j).sqrt();
        worst = worst.max((e0 - oracle).abs());
    }
    Ok((worst <= 1e-10, format!("max |E0 − closed form| {worst:.1e}")))
}

fn hamiltonian_symmetry() -> Result<(bool, String)> {
    // Cyclic relabeling 1→2→3→1 of the qubits.
    let h = build_hamiltonian(&ModelParams::new(1.0, 0.8)?);
    let perm = |b: usize| ((b & 1) << 2) | (b >> 1);
    let mut err = 0.0f64;
    for i in 0..8 {
        for j in 0..8 {
            err = err.max((h[(perm(i), perm(j))] - h[(i, j)]).norm());
        }
    }
    Ok((err == 0.0, format!("max entry change {err:.1e}")))
}

fn epsilon_at_zero_coupling() -> Result<(bool, String)> {
    // Only the symmetric one-flip level couples: |⟨1|B|0⟩| = √3, gap 4h.
    let e = adiabatic_epsilon(&ModelParams::new(1.0, 0.0)?, 1.0)?;
    Ok(within(e, 3f64.sqrt() / 16.0, 1e-12))
}

fn trotter_local_order() -> Result<(bool, String)> {
    let err = |dt: f64| -> Result<f64> {
        Ok(step_unitary_trotter2(1.0, 1.0, dt).max_abs_diff(&step_unitary_exact(1.0, 1.0, dt)?))
    };
    let ratio = err(0.2)? / err(0.1)?;
    Ok(((6.0..=10.0).contains(&ratio), format!("error ratio {ratio:.3}")))
}

fn norm_preservation() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for regime in Regime::ALL {
        let s = make_schedule(&ScheduleConfig::<f64>::standard(regime))?;
        for mode in EvolutionMode::ALL {
            for st in evolve(&all_minus(), &s, mode)?.states {
                worst = worst.max((st.norm() - 1.0).abs());
            }
        }
    }
    Ok((worst <= 1e-10, format!("max |‖ψ‖ − 1| {worst:.1e}")))
}

fn negativity_oracles() -> Result<(bool, String)> {
    let nb = negativity(&bell(), &BipartiteSplit::s12())?;
    let ng = negativity(&ghz(), &BipartiteSplit::s1_23())?;
    let dn = entanglement_monogamy_score(&ghz())?;
    let ok = (nb - 0.5).abs() <= 1e-9 && (ng - 0.5).abs() <= 1e-9 && (dn - 0.25).abs() <= 1e-9;
    Ok((ok, format!("N(Bell) {nb:.12}, N1|23(GHZ) {ng:.12}, δN²(GHZ) {dn:.12}")))
}

fn discord_oracles() -> Result<(bool, String)> {
    let db = quantum_discord(&bell(), &BipartiteSplit::s12())?.discord;
    let dg = discord_scores(&ghz())?.delta;
    let ok = (db - 1.0).abs() <= 1e-4 && (dg - 1.0).abs() <= 1e-4;
    Ok((ok, format!("D(Bell) {db:.9}, δD(GHZ) {dg:.9}")))
}

fn monogamy_random() -> Result<(bool, String)> {
    let mut rng = StdRng::seed_from_u64(SEED + 2);
    let mut worst = f64::INFINITY;
    for _ in 0..50 {
        let rho = random_pure_state::<f64, _>(&mut rng, 3).projector();
        worst = worst.min(entanglement_monogamy_score(&rho)?);
    }
    Ok((worst >= -1e-9, format!("min δN² over 50 states {worst:.3e}")))
}

fn pure_discord_identity() -> Result<(bool, String)> {
    let mut rng = StdRng::seed_from_u64(SEED + 3);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let rho = random_pure_state::<f64, _>(&mut rng, 3).projector();
        let s1 = von_neumann_entropy(&partial_trace(&rho, &[0])?)?;
        let d = quantum_discord(&rho, &BipartiteSplit::s1_23())?.discord;
        worst = worst.max((d - s1).abs());
    }
    Ok((worst <= 1e-4, format!("max |D1(23) − S(ρ1)| {worst:.1e}")))
}

fn pseudo_pure_validity() -> Result<(bool, String)> {
    let psi = random_pure_state::<f64, _>(&mut StdRng::seed_from_u64(SEED + 4), 3);
    for z in [1e-5, 1e-2, 0.5, 1.0] {
        let rho = pseudo_pure(&psi, PurityFactor::new(z)?);
        DensityMatrix::qubits(rho.matrix().clone())?;
    }
    let n = negativity(&pseudo_pure(&psi, PurityFactor::default()), &BipartiteSplit::s1_23())?;
    Ok((n == 0.0, format!("N1|23 at ζ=1e-5: {n}")))
}

const CHECKS: &[(&str, Check)] = &[
    ("eigendecomposition reconstructs random Hermitian matrices", eig_reconstruction),
    ("exp(-iHs) exp(iHs) = I", exp_inverse),
    ("Bell marginal is I/2", bell_marginal),
    ("Bell partial transpose spectrum", bell_partial_transpose),
    ("entropy of diag(3/4, 1/4)", entropy_value),
    ("fidelity of |0⟩ and I/2", fidelity_value),
    ("ground energy closed form", ground_energy),
    ("Hamiltonian cyclic symmetry", hamiltonian_symmetry),
    ("ε at zero coupling", epsilon_at_zero_coupling),
    ("Trotter local error order", trotter_local_order),
    ("norm preservation", norm_preservation),
    ("negativity oracles", negativity_oracles),
    ("discord oracles", discord_oracles),
    ("squared negativity monogamy", monogamy_random),
    ("pure-state discord identity", pure_discord_identity),
    ("pseudo-pure states valid and PPT", pseudo_pure_validity),
];

pub fn run_checks() -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|&(name, check)| match check() {
            Ok((passed, detail)) => CheckOutcome { name, passed, detail },
            Err(e) => CheckOutcome {
                name,
                passed: false,
                detail: format!("error: {e}"),
            },
        })
        .collect()
}
