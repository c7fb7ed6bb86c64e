//! Thermal states, reductions and entropy.
//!
//! The heating stroke imposes the Gibbs state of the full operator directly;
//! the working substance is then read out by tracing over the ancilla ion
//! and the phonon mode, and its occupations are taken against the fixed
//! analytic eigenbasis. Coherences between those eigenstates are kept in the
//! density matrix (they matter for the entropy) but never enter the heat and
//! work sums, which consume diagonal occupations only.

use crate::error::{Error, Result};
use crate::linalg::{eig_sym, matrix_function, Mat, SymMatrix};
use crate::model::system_eigensystem;

/// Trace tolerance for a valid density matrix.
const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues may dip this far below zero and still count as PSD.
const PSD_TOL: f64 = -1e-10;
/// Spectral weights below this contribute exactly zero entropy.
const ENTROPY_CUTOFF: f64 = 1e-14;

/// Real symmetric density matrix: unit trace, positive semidefinite within
/// tolerance. Checked at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: SymMatrix,
}

impl DensityMatrix {
    pub fn new(mat: SymMatrix) -> Result<Self> {
        let tr = mat.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotADensityMatrix(format!("trace is {tr}, not 1")));
        }
        let d = eig_sym(&mat)?;
        let min = d.eigenvalues().first().copied().unwrap_or(0.0);
        if min < PSD_TOL {
            return Err(Error::NotADensityMatrix(format!(
                "smallest eigenvalue {min} is negative beyond tolerance"
            )));
        }
        Ok(DensityMatrix { mat })
    }

    /// Projector `|v><v|` onto a normalized real state vector.
    pub fn pure(state: &[f64]) -> Result<Self> {
        let n = state.len();
        let norm2: f64 = state.iter().map(|x| x * x).sum();
        if (norm2 - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotADensityMatrix(format!(
                "state norm^2 is {norm2}, not 1"
            )));
        }
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = state[i] * state[j];
            }
        }
        Ok(DensityMatrix {
            mat: SymMatrix::from_mat(m),
        })
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn as_sym(&self) -> &SymMatrix {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace()
    }
}

/// Occupations of the four fixed eigenstates `|E1>..|E4>` of the working
/// substance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Populations {
    values: [f64; 4],
}

impl Populations {
    pub fn new(values: [f64; 4]) -> Self {
        Populations { values }
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.values
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

impl std::ops::Index<usize> for Populations {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// Thermal state `exp(-H/t) / Z`, built through the spectral decomposition.
/// The weights are computed after shifting by the ground-state energy so low
/// temperatures never overflow the exponential.
pub fn gibbs_state(h: &SymMatrix, t: f64) -> Result<DensityMatrix> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::InvalidTemperature(t));
    }
    let d = eig_sym(h)?;
    let e_min = d.eigenvalues().first().copied().unwrap_or(0.0);
    let unnormalized = matrix_function(&d, |e| (-(e - e_min) / t).exp())?;
    let z = unnormalized.trace();
    if !z.is_finite() || z <= 0.0 {
        return Err(Error::DomainError {
            eigenvalue: e_min,
            reason: "partition function is not positive and finite",
        });
    }
    DensityMatrix::new(SymMatrix::from_mat(unnormalized.as_mat().scaled(1.0 / z)))
}

fn mixed_radix_digits(mut x: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for (slot, &d) in digits.iter_mut().zip(dims.iter()).rev() {
        *slot = x % d;
        x /= d;
    }
    digits
}

/// Trace out the factors not listed in `keep` from a state over the tensor
/// product of subsystems with dimensions `dims` (row-major factor order,
/// first factor most significant). Kept factors stay in their original
/// relative order.
pub fn partial_trace(rho: &DensityMatrix, dims: &[usize], keep: &[usize]) -> Result<DensityMatrix> {
    let total: usize = dims.iter().product();
    if total != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "factors {:?} give dimension {total}, state has {}",
            dims,
            rho.dim()
        )));
    }
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(Error::DimensionMismatch("keep set is empty".into()));
    }
    if keep.iter().any(|&f| f >= dims.len()) {
        return Err(Error::DimensionMismatch(format!(
            "keep set {:?} indexes past the {} factors",
            keep,
            dims.len()
        )));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|f| !keep.contains(f)).collect();

    // stride of each factor in the full index
    let mut strides = vec![1usize; dims.len()];
    for f in (0..dims.len().saturating_sub(1)).rev() {
        strides[f] = strides[f + 1] * dims[f + 1];
    }
    let keep_dims: Vec<usize> = keep.iter().map(|&f| dims[f]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&f| dims[f]).collect();
    let out_dim: usize = keep_dims.iter().product();
    let traced_dim: usize = traced_dims.iter().product();

    let compose = |kept: &[usize], tr: &[usize]| -> usize {
        let mut idx = 0;
        for (f, &digit) in keep.iter().zip(kept.iter()) {
            idx += digit * strides[*f];
        }
        for (f, &digit) in traced.iter().zip(tr.iter()) {
            idx += digit * strides[*f];
        }
        idx
    };

    let mut out = Mat::zeros(out_dim, out_dim);
    for r in 0..out_dim {
        let rd = mixed_radix_digits(r, &keep_dims);
        for c in 0..out_dim {
            let cd = mixed_radix_digits(c, &keep_dims);
            let mut s = 0.0;
            for t in 0..traced_dim {
                let td = mixed_radix_digits(t, &traced_dims);
                s += rho.as_sym()[(compose(&rd, &td), compose(&cd, &td))];
            }
            out[(r, c)] = s;
        }
    }
    DensityMatrix::new(SymMatrix::from_mat(out))
}

/// Diagonal occupations `<E_i| rho |E_i>` of a 4x4 working-substance state
/// against the fixed analytic basis at `(b, j1)`. Off-diagonal coherences in
/// that basis are discarded here by construction.
pub fn populations(rho_s: &DensityMatrix, b: f64, j1: f64) -> Populations {
    assert_eq!(
        rho_s.dim(),
        4,
        "populations need a 4x4 working-substance state"
    );
    let sys = system_eigensystem(b, j1);
    let mut p = [0.0; 4];
    for (slot, state) in p.iter_mut().zip(sys.states.iter()) {
        *slot = rho_s.as_sym().expectation(state);
    }
    Populations::new(p)
}

/// `S = -sum lambda ln lambda` over the spectrum of `rho`, in nats.
/// Eigenvalues are clamped to `[0, 1]`; weights below 1e-14 contribute
/// exactly zero, so projector states have exactly zero entropy.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let d = eig_sym(rho.as_sym())?;
    let sum: f64 = d.eigenvalues().iter().sum();
    if (sum - 1.0).abs() > 1e-8 {
        return Err(Error::NotADensityMatrix(format!(
            "spectrum sums to {sum}, not 1"
        )));
    }
    if let Some(&min) = d.eigenvalues().first() {
        if min < PSD_TOL {
            return Err(Error::NotADensityMatrix(format!(
                "smallest eigenvalue {min} is negative beyond tolerance"
            )));
        }
    }
    let mut s = 0.0;
    for &lambda in d.eigenvalues() {
        let lambda = lambda.clamp(0.0, 1.0);
        if lambda > ENTROPY_CUTOFF {
            s -= lambda * lambda.ln();
        }
    }
    Ok(s)
}
