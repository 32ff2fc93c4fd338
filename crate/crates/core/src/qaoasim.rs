//! Exact statevector simulation of the depth-p QAOA circuit for MaxCut.
//!
//! The MaxCut cost Hamiltonian is diagonal in the computational basis with
//! eigenvalue `cut_size(g, z)` on basis state `z`, so it is stored as a
//! [`CutSpectrum`] and a cost layer is a per-amplitude phase. The mixer
//! `exp(-i beta sum_q X_q)` factorises into one 2x2 rotation per qubit.
//!
//! Basis indices are little-endian: bit `q` of `z` is qubit `q`, which is also
//! vertex `q`'s side in the partition mask.

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{cut_size_unchecked, Graph};

/// Largest qubit count the simulator allocates for.
pub const MAX_QUBITS: usize = 24;

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        return Err(Error::Capacity { n, max: MAX_QUBITS });
    }
    Ok(())
}

/// QAOA angles for a depth-`p` circuit.
///
/// As a flat vector the layout is `[gamma_1..gamma_p, beta_1..beta_p]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaParams {
    gamma: Vec<f64>,
    beta: Vec<f64>,
}

impl QaoaParams {
    pub fn new(gamma: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        if gamma.is_empty() || gamma.len() != beta.len() {
            return Err(Error::InvalidArgument(format!(
                "need p >= 1 angles of each kind, got {} gamma and {} beta",
                gamma.len(),
                beta.len()
            )));
        }
        if gamma.iter().chain(&beta).any(|a| !a.is_finite()) {
            return Err(Error::InvalidArgument("QAOA angles must be finite".into()));
        }
        Ok(Self { gamma, beta })
    }

    /// Splits `[gamma.., beta..]` into its two halves.
    pub fn from_vector(theta: &[f64]) -> Result<Self> {
        if theta.len() % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "parameter vector length must be 2p, got {}",
                theta.len()
            )));
        }
        let p = theta.len() / 2;
        Self::new(theta[..p].to_vec(), theta[p..].to_vec())
    }

    pub fn zeros(p: usize) -> Result<Self> {
        Self::new(vec![0.0; p], vec![0.0; p])
    }

    pub fn depth(&self) -> usize {
        self.gamma.len()
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn to_vector(&self) -> Vec<f64> {
        self.gamma.iter().chain(&self.beta).copied().collect()
    }
}

/// Diagonal of the MaxCut cost Hamiltonian: `values[z] = cut_size(g, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CutSpectrum {
    n: usize,
    values: Vec<u32>,
    max_value: u32,
}

impl CutSpectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Largest eigenvalue, i.e. the MaxCut value.
    pub fn max_value(&self) -> u32 {
        self.max_value
    }
}

pub fn build_cut_spectrum(g: &Graph) -> Result<CutSpectrum> {
    let n = g.n();
    check_capacity(n)?;
    let values: Vec<u32> = (0..1u64 << n)
        .into_par_iter()
        .map(|z| cut_size_unchecked(g, z) as u32)
        .collect();
    let max_value = values.iter().copied().max().unwrap_or(0);
    Ok(CutSpectrum {
        n,
        values,
        max_value,
    })
}

/// A pure state of `n` qubits as `2^n` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl Statevector {
    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "amplitude count {len} is not a power of two"
            )));
        }
        let n = len.trailing_zeros() as usize;
        check_capacity(n)?;
        Ok(Self { n, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<psi| diag(spectrum) |psi>`.
    pub fn expectation(&self, spectrum: &CutSpectrum) -> Result<f64> {
        if spectrum.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: spectrum.n,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&spectrum.values)
            .map(|(a, &v)| a.norm_sqr() * v as f64)
            .sum())
    }
}

/// `|+>^n`: every amplitude equals `2^(-n/2)`.
pub fn init_plus_state(n: usize) -> Result<Statevector> {
    check_capacity(n)?;
    let dim = 1usize << n;
    let amp = Complex64::new((dim as f64).sqrt().recip(), 0.0);
    Ok(Statevector {
        n,
        amplitudes: vec![amp; dim],
    })
}

/// Multiplies amplitude `z` by `exp(-i gamma values[z])`.
pub fn apply_cost_layer(state: &mut Statevector, spectrum: &CutSpectrum, gamma: f64) -> Result<()> {
    if spectrum.n != state.n {
        return Err(Error::DimensionMismatch {
            expected: state.n,
            found: spectrum.n,
        });
    }
    let phases: Vec<Complex64> = (0..=spectrum.max_value)
        .map(|k| Complex64::from_polar(1.0, -gamma * k as f64))
        .collect();
    for (a, &v) in state.amplitudes.iter_mut().zip(&spectrum.values) {
        *a *= phases[v as usize];
    }
    Ok(())
}

/// Applies `exp(-i beta X)` to every qubit.
pub fn apply_mixer_layer(state: &mut Statevector, beta: f64) {
    let (s, c) = beta.sin_cos();
    let minus_is = Complex64::new(0.0, -s);
    for q in 0..state.n {
        let stride = 1usize << q;
        for block in state.amplitudes.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x0, x1) = (*a0, *a1);
                *a0 = x0 * c + x1 * minus_is;
                *a1 = x0 * minus_is + x1 * c;
            }
        }
    }
}

/// Reusable evaluator holding the cut spectrum of one graph.
#[derive(Debug, Clone)]
pub struct QaoaSimulator {
    spectrum: CutSpectrum,
}

impl QaoaSimulator {
    pub fn new(g: &Graph) -> Result<Self> {
        Ok(Self {
            spectrum: build_cut_spectrum(g)?,
        })
    }

    pub fn spectrum(&self) -> &CutSpectrum {
        &self.spectrum
    }

    /// Final state `U_M(beta_p) U_C(gamma_p) ... U_M(beta_1) U_C(gamma_1) |+>^n`.
    pub fn state(&self, params: &QaoaParams) -> Result<Statevector> {
        let mut state = init_plus_state(self.spectrum.n)?;
        for (&gamma, &beta) in params.gamma.iter().zip(&params.beta) {
            apply_cost_layer(&mut state, &self.spectrum, gamma)?;
            apply_mixer_layer(&mut state, beta);
        }
        Ok(state)
    }

    /// Expected cut value of the QAOA state.
    pub fn expectation(&self, params: &QaoaParams) -> Result<f64> {
        self.state(params)?.expectation(&self.spectrum)
    }

    /// Same as [`Self::expectation`] for a flat `[gamma.., beta..]` vector.
    pub fn expectation_vec(&self, theta: &[f64]) -> Result<f64> {
        self.expectation(&QaoaParams::from_vector(theta)?)
    }
}

/// `<psi_p(gamma, beta)| H_C |psi_p(gamma, beta)>` for MaxCut on `g`.
pub fn qaoa_expectation(g: &Graph, params: &QaoaParams) -> Result<f64> {
    QaoaSimulator::new(g)?.expectation(params)
}

/// Inclusive evenly spaced lattice over `[lo, hi]`.
fn lattice(range: (f64, f64), resolution: usize) -> Vec<f64> {
    let (lo, hi) = range;
    let step = (hi - lo) / (resolution - 1) as f64;
    (0..resolution)
        .map(|i| if i == resolution - 1 { hi } else { lo + step * i as f64 })
        .collect()
}

/// A p = 1 expectation scan over a `gamma x beta` lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct Landscape {
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
    /// `values[a][b]` is the expectation at `(gammas[a], betas[b])`.
    pub values: Vec<Vec<f64>>,
}

pub const DEFAULT_LANDSCAPE_RESOLUTION: usize = 64;

pub fn landscape_grid(
    g: &Graph,
    gamma_range: (f64, f64),
    beta_range: (f64, f64),
    resolution: usize,
) -> Result<Landscape> {
    for (name, (lo, hi)) in [("gamma", gamma_range), ("beta", beta_range)] {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidArgument(format!(
                "{name} range must satisfy lo < hi, got [{lo}, {hi}]"
            )));
        }
    }
    if resolution < 2 {
        return Err(Error::InvalidArgument(format!(
            "resolution must be at least 2, got {resolution}"
        )));
    }
    let sim = QaoaSimulator::new(g)?;
    let gammas = lattice(gamma_range, resolution);
    let betas = lattice(beta_range, resolution);
    let values = gammas
        .par_iter()
        .map(|&gamma| {
            betas
                .iter()
                .map(|&beta| sim.expectation(&QaoaParams::new(vec![gamma], vec![beta])?))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Landscape {
        gammas,
        betas,
        values,
    })
}

impl Landscape {
    /// Writes `gamma,beta,expectation` rows, row-major over gamma then beta.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["gamma", "beta", "expectation"])?;
        for (gamma, row) in self.gammas.iter().zip(&self.values) {
            for (beta, value) in self.betas.iter().zip(row) {
                w.serialize((gamma, beta, value))?;
            }
        }
        w.flush().map_err(|e| Error::io("<landscape csv>", e))?;
        Ok(())
    }
}
