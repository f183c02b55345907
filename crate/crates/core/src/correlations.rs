//! Negativity, projective-measurement quantum discord and the monogamy
//! scores built from them.
//!
//! Every bipartite quantity measures (or partially transposes) a single
//! qubit, the "measured party", against a remainder of one or two qubits.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::qla::{
    entropy_of_matrix, hermitian_eigvals, partial_trace, partial_transpose,
    qubit_conditional_block, von_neumann_entropy, DensityMatrix,
};
use crate::scalar::Real;

/// Measured qubit versus the subsystems it is correlated with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteSplit {
    measured: usize,
    remainder: Vec<usize>,
}

impl BipartiteSplit {
    pub fn new(measured: usize, remainder: Vec<usize>) -> Result<Self> {
        if remainder.is_empty() {
            return Err(Error::Usage("bipartite split needs a non-empty remainder".into()));
        }
        if remainder.contains(&measured) {
            return Err(Error::Usage(format!("party {measured} is on both sides of the split")));
        }
        Ok(Self { measured, remainder })
    }

    /// Qubit 1 against qubit 2 (0-based `0 | 1`).
    pub fn s12() -> Self {
        Self { measured: 0, remainder: vec![1] }
    }

    /// Qubit 1 against qubit 3.
    pub fn s13() -> Self {
        Self { measured: 0, remainder: vec![2] }
    }

    /// Qubit 1 against qubits 2 and 3.
    pub fn s1_23() -> Self {
        Self { measured: 0, remainder: vec![1, 2] }
    }

    pub fn measured(&self) -> usize {
        self.measured
    }

    pub fn remainder(&self) -> &[usize] {
        &self.remainder
    }

    /// Reduced state on `measured ∪ remainder`, measured party first.
    fn reduce<T: Real>(&self, rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
        let mut keep = Vec::with_capacity(self.remainder.len() + 1);
        keep.push(self.measured);
        keep.extend_from_slice(&self.remainder);
        let reduced = partial_trace(rho, &keep)?;
        if reduced.dims()[0] != 2 {
            return Err(Error::Usage(format!(
                "measured party {} has dimension {}, expected a qubit",
                self.measured,
                reduced.dims()[0]
            )));
        }
        Ok(reduced)
    }
}

/// Sum of the magnitudes of the negative eigenvalues of `ρ^{T_measured}`.
pub fn negativity<T: Real>(rho: &DensityMatrix<T>, split: &BipartiteSplit) -> Result<T> {
    let reduced = split.reduce(rho)?;
    let pt = partial_transpose(&reduced, 0)?;
    let spectrum = hermitian_eigvals(&pt)?;
    Ok(spectrum
        .into_iter()
        .filter(|&l| l < T::zero())
        .fold(T::zero(), |acc, l| acc - l))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NegativityScores<T> {
    pub n12: T,
    pub n13: T,
    pub n1_23: T,
    /// `N²_{1(23)} − N²_{12} − N²_{13}`.
    pub delta: T,
}

fn check_three_qubits<T: Real>(rho: &DensityMatrix<T>) -> Result<()> {
    if rho.dims() != [2, 2, 2] {
        return Err(Error::Usage(format!(
            "monogamy scores need a three-qubit state, got dims {:?}",
            rho.dims()
        )));
    }
    Ok(())
}

pub fn negativity_scores<T: Real>(rho: &DensityMatrix<T>) -> Result<NegativityScores<T>> {
    check_three_qubits(rho)?;
    let n12 = negativity(rho, &BipartiteSplit::s12())?;
    let n13 = negativity(rho, &BipartiteSplit::s13())?;
    let n1_23 = negativity(rho, &BipartiteSplit::s1_23())?;
    Ok(NegativityScores {
        n12,
        n13,
        n1_23,
        delta: n1_23 * n1_23 - n12 * n12 - n13 * n13,
    })
}

/// Squared-negativity monogamy score `δ_{N²}`.
pub fn entanglement_monogamy_score<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    Ok(negativity_scores(rho)?.delta)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscordResult<T> {
    pub discord: T,
    /// Bloch angles `(θ, φ)` of the optimal projector `|n⟩⟨n|`, with
    /// `θ ∈ [0, π]` and `φ ∈ [0, 2π)`.
    pub optimal_angles: (T, T),
    pub mutual_information: T,
    pub classical_correlation: T,
}

/// Grid resolution of the measurement search.
pub const THETA_POINTS: usize = 61;
pub const PHI_POINTS: usize = 120;
const REFINE_STARTS: usize = 5;
const REFINE_MIN_STEP: f64 = 1e-7;
const REFINE_MAX_EVALS: usize = 20_000;
const DISCORD_FLOOR: f64 = 1e-9;

/// `|n⟩` and `|n⊥⟩` for Bloch angles `(θ, φ)`.
pub fn measurement_basis<T: Real>(theta: T, phi: T) -> [[Complex<T>; 2]; 2] {
    let half = theta / T::lit(2.0);
    let (c, s) = (half.cos(), half.sin());
    let e = Complex::new(phi.cos(), phi.sin());
    let zero = T::zero();
    [
        [Complex::new(c, zero), e.scale(s)],
        [-e.conj().scale(s), Complex::new(c, zero)],
    ]
}

/// Bipartite state with the measured qubit first, plus everything the
/// conditional-entropy objective needs.
struct Measured<'a, T> {
    rho: &'a DensityMatrix<T>,
    rest_dim: usize,
}

impl<T: Real> Measured<'_, T> {
    /// `Σ_k p_k S(ρ_{B|k})` for the projective measurement along `(θ, φ)`.
    fn conditional_entropy(&self, theta: T, phi: T) -> Result<T> {
        let floor = T::lit(T::PROBABILITY_FLOOR);
        let mut total = T::zero();
        for v in measurement_basis(theta, phi) {
            let block = qubit_conditional_block(self.rho.matrix(), self.rest_dim, v);
            let p = block.trace().re;
            if p < floor {
                continue;
            }
            total += p * entropy_of_matrix(&block.scale_real(T::one() / p))?;
        }
        Ok(total)
    }
}

fn normalized_angles<T: Real>(theta: T, phi: T) -> (T, T) {
    // Round-trip through the Bloch vector.
    let (x, y, z) = (theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos());
    let t = z.max(-T::one()).min(T::one()).acos();
    let two_pi = T::lit(2.0) * T::PI();
    let mut p = y.atan2(x);
    if p < T::zero() {
        p += two_pi;
    }
    if p >= two_pi {
        p = T::zero();
    }
    (t, p)
}

/// Minimizes the conditional entropy over rank-one projective measurements
/// and returns `(min, θ, φ)`.
///
/// Search: a `THETA_POINTS × PHI_POINTS` grid over `θ ∈ [0, π]`,
/// `φ ∈ [0, 2π)`, then compass refinement from the best five grid points with
/// step halving from `π/120` to `1e-7`. The basis `{|n⟩, |n⊥⟩}` is unchanged
/// by `n → −n`, i.e. `(θ, φ) → (π − θ, φ + π)`, and the grid is closed under
/// that map, so only the half `φ < π` is evaluated.
fn minimize_conditional_entropy<T: Real>(m: &Measured<'_, T>) -> Result<(T, T, T)> {
    let pi = T::PI();
    let dtheta = pi / T::lit((THETA_POINTS - 1) as f64);
    let dphi = T::lit(2.0) * pi / T::lit(PHI_POINTS as f64);

    let mut grid: Vec<(T, T, T)> = Vec::with_capacity(THETA_POINTS * PHI_POINTS / 2);
    for i in 0..THETA_POINTS {
        let theta = dtheta * T::lit(i as f64);
        let phis = if i == 0 || i == THETA_POINTS - 1 { 1 } else { PHI_POINTS / 2 };
        for k in 0..phis {
            let phi = dphi * T::lit(k as f64);
            grid.push((m.conditional_entropy(theta, phi)?, theta, phi));
        }
    }
    // Stable sort keeps grid order among ties.
    grid.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));

    let min_step = T::lit(REFINE_MIN_STEP);
    let mut best = grid[0];
    for &(value, theta, phi) in grid.iter().take(REFINE_STARTS) {
        let (mut f, mut t, mut p) = (value, theta, phi);
        let mut step = pi / T::lit(120.0);
        let mut evals = 0;
        while step >= min_step && evals < REFINE_MAX_EVALS {
            let mut moved = false;
            for (dt, dp) in [(step, T::zero()), (-step, T::zero()), (T::zero(), step), (T::zero(), -step)] {
                let candidate = m.conditional_entropy(t + dt, p + dp)?;
                evals += 1;
                if candidate < f {
                    f = candidate;
                    t = t + dt;
                    p = p + dp;
                    moved = true;
                    break;
                }
            }
            if !moved {
                step = step / T::lit(2.0);
            }
        }
        if f < best.0 {
            best = (f, t, p);
        }
    }
    let (theta, phi) = normalized_angles(best.1, best.2);
    Ok((best.0, theta, phi))
}

/// Quantum discord with a projective measurement on the measured party.
pub fn quantum_discord<T: Real>(rho: &DensityMatrix<T>, split: &BipartiteSplit) -> Result<DiscordResult<T>> {
    let reduced = split.reduce(rho)?;
    let rest: Vec<usize> = (1..reduced.n_subsystems()).collect();
    let rho_a = partial_trace(&reduced, &[0])?;
    let rho_b = partial_trace(&reduced, &rest)?;
    let s_a = von_neumann_entropy(&rho_a)?;
    let s_b = von_neumann_entropy(&rho_b)?;
    let s_ab = von_neumann_entropy(&reduced)?;

    let measured = Measured {
        rho: &reduced,
        rest_dim: rho_b.dim(),
    };
    let (s_cond, theta, phi) = minimize_conditional_entropy(&measured)?;

    let mutual_information = s_a + s_b - s_ab;
    let mut discord = s_a - s_ab + s_cond;
    if discord < T::zero() && discord >= -T::lit(DISCORD_FLOOR) {
        discord = T::zero();
    }
    Ok(DiscordResult {
        discord,
        optimal_angles: (theta, phi),
        mutual_information,
        classical_correlation: mutual_information - discord,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscordScores<T> {
    pub d12: T,
    pub d13: T,
    pub d1_23: T,
    /// `D_{1(23)} − D_{12} − D_{13}`.
    pub delta: T,
}

pub fn discord_scores<T: Real>(rho: &DensityMatrix<T>) -> Result<DiscordScores<T>> {
    check_three_qubits(rho)?;
    let d12 = quantum_discord(rho, &BipartiteSplit::s12())?.discord;
    let d13 = quantum_discord(rho, &BipartiteSplit::s13())?.discord;
    let d1_23 = quantum_discord(rho, &BipartiteSplit::s1_23())?.discord;
    Ok(DiscordScores {
        d12,
        d13,
        d1_23,
        delta: d1_23 - d12 - d13,
    })
}

/// Discord monogamy score `δ_D`.
pub fn discord_monogamy_score<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    Ok(discord_scores(rho)?.delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qla::{random_density, random_local_unitary, random_pure_state, random_su2, Matrix, StateVector};
    use crate::spin_model::all_minus;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn bell() -> DensityMatrix<f64> {
        let s = FRAC_1_SQRT_2;
        StateVector::new(vec![c(s), c(0.0), c(0.0), c(s)]).unwrap().projector()
    }

    fn ghz() -> DensityMatrix<f64> {
        let s = FRAC_1_SQRT_2;
        let mut a = vec![c(0.0); 8];
        a[0] = c(s);
        a[7] = c(s);
        StateVector::new(a).unwrap().projector()
    }

    /// Brute-force conditional-entropy minimum over a dense grid.
    fn brute_force_discord(rho: &DensityMatrix<f64>, nt: usize, np: usize) -> f64 {
        let rho_a = partial_trace(rho, &[0]).unwrap();
        let s_a = von_neumann_entropy(&rho_a).unwrap();
        let s_ab = von_neumann_entropy(rho).unwrap();
        let mut best = f64::INFINITY;
        for i in 0..nt {
            let theta = PI * i as f64 / (nt - 1) as f64;
            for k in 0..np {
                let phi = 2.0 * PI * k as f64 / np as f64;
                let mut sc = 0.0;
                for v in measurement_basis(theta, phi) {
                    // ⟨v|ρ|v⟩ on the first qubit, written out for 2 qubits.
                    let m = rho.matrix();
                    let mut blk = [[c(0.0); 2]; 2];
                    for a in 0..2 {
                        for b in 0..2 {
                            for (i2, row) in blk.iter_mut().enumerate() {
                                for (j2, x) in row.iter_mut().enumerate() {
                                    *x += v[a].conj() * v[b] * m[(2 * a + i2, 2 * b + j2)];
                                }
                            }
                        }
                    }
                    let p = blk[0][0].re + blk[1][1].re;
                    if p < 1e-12 {
                        continue;
                    }
                    let (a, d, off) = (blk[0][0].re / p, blk[1][1].re / p, blk[0][1].norm() / p);
                    let disc = (((a - d) / 2.0).powi(2) + off * off).sqrt();
                    let mean = (a + d) / 2.0;
                    for l in [mean + disc, mean - disc] {
                        if l > 1e-12 {
                            sc -= p * l * l.log2();
                        }
                    }
                }
                best = best.min(sc);
            }
        }
        s_a - s_ab + best
    }

    #[test]
    fn split_validation() {
        assert!(BipartiteSplit::new(0, vec![]).is_err());
        assert!(BipartiteSplit::new(1, vec![1, 2]).is_err());
        let s = BipartiteSplit::new(2, vec![0]).unwrap();
        assert!(matches!(negativity(&bell(), &s), Err(Error::Usage(_))));
    }

    #[test]
    fn negativity_examples() {
        assert!((negativity(&bell(), &BipartiteSplit::s12()).unwrap() - 0.5).abs() < 1e-12);
        assert!((negativity(&ghz(), &BipartiteSplit::s1_23()).unwrap() - 0.5).abs() < 1e-12);
        let product = all_minus::<f64>().projector();
        for s in [BipartiteSplit::s12(), BipartiteSplit::s13(), BipartiteSplit::s1_23()] {
            assert!(negativity(&product, &s).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn negativity_monogamy_examples() {
        assert!(entanglement_monogamy_score(&all_minus::<f64>().projector()).unwrap().abs() < 1e-12);
        assert!((entanglement_monogamy_score(&ghz()).unwrap() - 0.25).abs() < 1e-12);
        let zero = StateVector::<f64>::basis(1, 0).unwrap().projector();
        let bell_zero = bell().kron(&zero);
        assert!(entanglement_monogamy_score(&bell_zero).unwrap().abs() < 1e-12);
        assert!(entanglement_monogamy_score(&bell()).is_err());
    }

    #[test]
    fn discord_examples() {
        let mut cq = Matrix::zeros(4);
        cq[(0, 0)] = c(0.5);
        cq[(3, 3)] = c(0.5);
        let cq = DensityMatrix::qubits(cq).unwrap();
        let r = quantum_discord(&cq, &BipartiteSplit::s12()).unwrap();
        assert!(r.discord.abs() < 1e-9);
        assert!((r.mutual_information - 1.0).abs() < 1e-12);

        let r = quantum_discord(&bell(), &BipartiteSplit::s12()).unwrap();
        assert!((r.discord - 1.0).abs() < 1e-9);
        assert!((r.mutual_information - 2.0).abs() < 1e-12);
        assert!((r.classical_correlation - 1.0).abs() < 1e-9);
    }

    #[test]
    fn discord_of_z_correlated_state_finds_z_axis() {
        // ½(|00⟩⟨00| + |11⟩⟨11|) + small off-diagonal coherence: the optimum stays near θ ∈ {0, π}.
        let mut m = Matrix::zeros(4);
        m[(0, 0)] = c(0.5);
        m[(3, 3)] = c(0.5);
        let rho = DensityMatrix::qubits(m).unwrap();
        let (theta, _) = quantum_discord(&rho, &BipartiteSplit::s12()).unwrap().optimal_angles;
        assert!(theta < 1e-6 || (PI - theta) < 1e-6);
    }

    #[test]
    fn discord_monogamy_examples() {
        assert!(discord_monogamy_score(&all_minus::<f64>().projector()).unwrap().abs() < 1e-9);
        let s = discord_scores(&ghz()).unwrap();
        assert!((s.delta - 1.0).abs() < 1e-4);
        assert!(s.d12.abs() < 1e-4 && s.d13.abs() < 1e-4);
    }

    #[test]
    fn pure_state_discord_equals_entropy() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..5 {
            let rho = random_pure_state::<f64, _>(&mut rng, 2).projector();
            let s1 = von_neumann_entropy(&partial_trace(&rho, &[0]).unwrap()).unwrap();
            let d = quantum_discord(&rho, &BipartiteSplit::s12()).unwrap().discord;
            assert!((d - s1).abs() < 1e-4, "{d} vs {s1}");
        }
        let rho = random_pure_state::<f64, _>(&mut rng, 3).projector();
        let s1 = von_neumann_entropy(&partial_trace(&rho, &[0]).unwrap()).unwrap();
        let d = quantum_discord(&rho, &BipartiteSplit::s1_23()).unwrap().discord;
        assert!((d - s1).abs() < 1e-4);
    }

    #[test]
    fn optimizer_matches_dense_grid() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..4 {
            let rho = random_density::<f64, _>(&mut rng, 2, 2);
            let d = quantum_discord(&rho, &BipartiteSplit::s12()).unwrap().discord;
            let brute = brute_force_discord(&rho, 181, 360);
            assert!(d <= brute + 1e-9);
            assert!(brute - d < 1e-3, "{d} vs {brute}");
        }
    }

    #[test]
    fn remainder_order_permutes_without_changing_values() {
        let mut rng = StdRng::seed_from_u64(3);
        let rho = random_density::<f64, _>(&mut rng, 3, 2);
        let a = negativity(&rho, &BipartiteSplit::new(0, vec![1, 2]).unwrap()).unwrap();
        let b = negativity(&rho, &BipartiteSplit::new(0, vec![2, 1]).unwrap()).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn f32_negativity() {
        let s = std::f32::consts::FRAC_1_SQRT_2;
        let z = Complex::new(0.0f32, 0.0);
        let psi = StateVector::new(vec![Complex::new(s, 0.0), z, z, Complex::new(s, 0.0)]).unwrap();
        let n = negativity(&psi.projector(), &BipartiteSplit::s12()).unwrap();
        assert!((n - 0.5).abs() < 1e-5);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn negativity_local_unitary_invariance(seed in any::<u64>(), rank in 1usize..=4) {
            let mut rng = StdRng::seed_from_u64(seed);
            let rho = random_density::<f64, _>(&mut rng, 2, rank);
            let u = random_local_unitary::<f64, _>(&mut rng, 2);
            let a = negativity(&rho, &BipartiteSplit::s12()).unwrap();
            let b = negativity(&rho.conjugate(&u), &BipartiteSplit::s12()).unwrap();
            prop_assert!((a - b).abs() <= 1e-9);
        }

        #[test]
        fn squared_negativity_is_monogamous(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let rho = random_pure_state::<f64, _>(&mut rng, 3).projector();
            prop_assert!(entanglement_monogamy_score(&rho).unwrap() >= -1e-9);
        }

        #[test]
        fn discord_bounds(seed in any::<u64>(), rank in 1usize..=4) {
            let mut rng = StdRng::seed_from_u64(seed);
            let rho = random_density::<f64, _>(&mut rng, 2, rank);
            let r = quantum_discord(&rho, &BipartiteSplit::s12()).unwrap();
            prop_assert!(r.discord >= 0.0);
            prop_assert!(r.discord <= r.mutual_information + 1e-9);
            prop_assert!(r.classical_correlation >= -1e-9);
            prop_assert!((r.discord - (r.mutual_information - r.classical_correlation)).abs() <= 1e-9);
            let (theta, phi) = r.optimal_angles;
            prop_assert!((0.0..=PI).contains(&theta) && (0.0..2.0 * PI).contains(&phi));
        }

        #[test]
        fn discord_invariant_under_measured_qubit_unitary(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let rho = random_density::<f64, _>(&mut rng, 2, 2);
            let u = random_su2::<f64, _>(&mut rng).kron(&Matrix::identity(2));
            let a = quantum_discord(&rho, &BipartiteSplit::s12()).unwrap().discord;
            let b = quantum_discord(&rho.conjugate(&u), &BipartiteSplit::s12()).unwrap().discord;
            prop_assert!((a - b).abs() <= 1e-4);
        }
    }
}
