//! Three trapped ions in a line sharing one vibrational mode, truncated to
//! the two lowest phonon states. Ions 1 and 2 form the working substance of
//! the engine; ion 3 is an ancilla.
//!
//! The full operator acts on a 16-dimensional product space ordered as
//! (ion 1, ion 2, ion 3, phonon) with basis index
//!
//! ```text
//! index(b1, b2, b3, j) = 8*b1 + 4*b2 + 2*b3 + j
//! ```
//!
//! where `b_l = 0` for the electronic state `|+>` of ion `l`, `1` for `|->`,
//! and `j` is the phonon number. `sigma_z |+> = +|+>`, so the fully flipped
//! state `|-->` of the working substance carries energy `-2B`.
//!
//! Units: hbar = k_B = 1; every coupling and the temperature are energies.

use crate::error::{Error, Result};
use crate::linalg::{kron, Mat, SymMatrix};

use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Basis index of the product state `|b1 b2 b3 j>`.
pub const fn basis_index(b1: usize, b2: usize, b3: usize, j: usize) -> usize {
    8 * b1 + 4 * b2 + 2 * b3 + j
}

/// Eigenstate of the working substance selected by the projective
/// measurement that replaces the cold isochore.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureBasis {
    /// `|-->`, the ground state above the critical field.
    E1,
    /// The singlet `(|-+> - |+->)/sqrt(2)`, the ground state below it.
    E3,
}

impl fmt::Display for MeasureBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureBasis::E1 => write!(f, "e1"),
            MeasureBasis::E3 => write!(f, "e3"),
        }
    }
}

impl FromStr for MeasureBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "e1" => Ok(MeasureBasis::E1),
            "e3" => Ok(MeasureBasis::E3),
            other => Err(Error::InvalidParams(format!(
                "measurement basis must be e1 or e3, got {other:?}"
            ))),
        }
    }
}

/// Physical parameters of one engine configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    /// Magnetic field during the heating stroke.
    pub b_high: f64,
    /// Magnetic field after the adiabatic expansion.
    pub b_low: f64,
    /// Exchange coupling between ions 1 and 2 (the working substance).
    pub j1: f64,
    /// Exchange coupling between ion 2 and the ancilla ion 3.
    pub j2: f64,
    /// Spin-phonon coupling, identical for all three ions.
    pub k: f64,
    /// Phonon frequency.
    pub omega: f64,
    /// Hot-bath temperature (k_B * T_H in energy units).
    pub t_hot: f64,
    /// Measurement basis for the cooling stroke.
    pub measure: MeasureBasis,
}

impl Default for ModelParams {
    /// The baseline configuration used throughout the figure presets:
    /// B_H = 10, B_L = 6, J1 = J2 = 10, k = 0.1, omega = 1, k_B T_H = 3.5,
    /// measurement in `|E1>`.
    fn default() -> Self {
        ModelParams {
            b_high: 10.0,
            b_low: 6.0,
            j1: 10.0,
            j2: 10.0,
            k: 0.1,
            omega: 1.0,
            t_hot: 3.5,
            measure: MeasureBasis::E1,
        }
    }
}

impl ModelParams {
    /// Check the hard parameter invariants. Antiferromagnetic couplings only
    /// (`j1, j2 >= 0`), positive field scale, temperature and phonon
    /// frequency. `b_low > b_high` is allowed for exploration and flagged in
    /// sweep output rather than rejected here.
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.b_high,
            self.b_low,
            self.j1,
            self.j2,
            self.k,
            self.omega,
            self.t_hot,
        ];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams("all parameters must be finite".into()));
        }
        if self.j1 < 0.0 || self.j2 < 0.0 {
            return Err(Error::InvalidParams(format!(
                "couplings must be non-negative (antiferromagnetic case), got j1={}, j2={}",
                self.j1, self.j2
            )));
        }
        if self.k < 0.0 {
            return Err(Error::InvalidParams(format!(
                "spin-phonon coupling must be non-negative, got k={}",
                self.k
            )));
        }
        if self.b_high <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "b_high must be positive, got {}",
                self.b_high
            )));
        }
        if self.t_hot <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "t_hot must be positive, got {}",
                self.t_hot
            )));
        }
        if self.omega <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "omega must be positive, got {}",
                self.omega
            )));
        }
        Ok(())
    }

    /// `Some(note)` when the field ordering breaks the engine convention.
    pub fn field_order_note(&self) -> Option<&'static str> {
        (self.b_low > self.b_high).then_some("b_low exceeds b_high")
    }
}

pub fn sigma_z() -> Mat {
    Mat::from_2x2(1.0, 0.0, 0.0, -1.0)
}

pub fn sigma_plus() -> Mat {
    Mat::from_2x2(0.0, 1.0, 0.0, 0.0)
}

pub fn sigma_minus() -> Mat {
    Mat::from_2x2(0.0, 0.0, 1.0, 0.0)
}

/// Phonon lowering operator `a = |0><1|` on the truncated two-level mode.
pub fn phonon_lower() -> Mat {
    Mat::from_2x2(0.0, 1.0, 0.0, 0.0)
}

pub fn phonon_raise() -> Mat {
    Mat::from_2x2(0.0, 0.0, 1.0, 0.0)
}

pub fn phonon_number() -> Mat {
    Mat::from_2x2(0.0, 0.0, 0.0, 1.0)
}

/// Place single-site operators on the four factors (ion1, ion2, ion3, phonon).
fn embed(f1: &Mat, f2: &Mat, f3: &Mat, ph: &Mat) -> Mat {
    kron(&kron(&kron(f1, f2), f3), ph)
}

/// The full 16x16 operator at common field `b` applied to all three ions:
/// Zeeman terms, the two exchange couplings, the phonon energy, and the
/// excitation-exchanging spin-phonon couplings. Real symmetric in the
/// product basis since every coefficient is real.
pub fn build_full_hamiltonian(b: f64, p: &ModelParams) -> Result<SymMatrix> {
    p.validate()?;
    let id = Mat::identity(2);
    let sz = sigma_z();
    let sp = sigma_plus();
    let sm = sigma_minus();
    let a = phonon_lower();
    let ad = phonon_raise();

    let mut h = Mat::zeros(16, 16);
    // Zeeman energy of each ion
    h.axpy(b, &embed(&sz, &id, &id, &id));
    h.axpy(b, &embed(&id, &sz, &id, &id));
    h.axpy(b, &embed(&id, &id, &sz, &id));
    // exchange couplings 1-2 and 2-3
    h.axpy(p.j1, &embed(&sp, &sm, &id, &id));
    h.axpy(p.j1, &embed(&sm, &sp, &id, &id));
    h.axpy(p.j2, &embed(&id, &sp, &sm, &id));
    h.axpy(p.j2, &embed(&id, &sm, &sp, &id));
    // phonon energy
    h.axpy(p.omega, &embed(&id, &id, &id, &phonon_number()));
    // spin-phonon exchange for each ion
    h.axpy(p.k, &embed(&sm, &id, &id, &ad));
    h.axpy(p.k, &embed(&sp, &id, &id, &a));
    h.axpy(p.k, &embed(&id, &sm, &id, &ad));
    h.axpy(p.k, &embed(&id, &sp, &id, &a));
    h.axpy(p.k, &embed(&id, &id, &sm, &ad));
    h.axpy(p.k, &embed(&id, &id, &sp, &a));

    Ok(SymMatrix::from_mat(h))
}

/// The 4x4 working-substance Hamiltonian
/// `H_S = b (sz x I + I x sz) + j1 (s+ x s- + s- x s+)`
/// in the (ion1, ion2) product basis.
pub fn build_system_hamiltonian(b: f64, j1: f64) -> SymMatrix {
    let id = Mat::identity(2);
    let mut h = Mat::zeros(4, 4);
    h.axpy(b, &kron(&sigma_z(), &id));
    h.axpy(b, &kron(&id, &sigma_z()));
    h.axpy(j1, &kron(&sigma_plus(), &sigma_minus()));
    h.axpy(j1, &kron(&sigma_minus(), &sigma_plus()));
    SymMatrix::from_mat(h)
}

/// Closed-form eigensystem of the working substance, in the fixed labeling
/// that the heat and work sums index over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemEigensystem {
    /// `(E1, E2, E3, E4) = (-2b, 2b, -j1, j1)`, in label order, not sorted.
    pub energies: [f64; 4],
    /// `states[i]` holds `|E_{i+1}>` in the product basis
    /// `(|++>, |+->, |-+>, |-->)`.
    pub states: [[f64; 4]; 4],
}

/// The fixed analytic eigenbasis: `|E1> = |-->`, `|E2> = |++>`,
/// `|E3> = (|-+> - |+->)/sqrt(2)`, `|E4> = (|-+> + |+->)/sqrt(2)`.
/// The labeling never reorders, even through the level crossing.
pub fn system_eigensystem(b: f64, j1: f64) -> SystemEigensystem {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    SystemEigensystem {
        energies: [-2.0 * b, 2.0 * b, -j1, j1],
        states: [
            [0.0, 0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, -s, s, 0.0],
            [0.0, s, s, 0.0],
        ],
    }
}

/// Field value where `E1` and `E3` cross and the ground state switches
/// between `|-->` and the singlet.
pub fn critical_field(j1: f64) -> f64 {
    j1 / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eig_sym;

    // Full 16-level spectrum at the baseline parameters (b = 10,
    // j1 = j2 = 10, k = 0.1, omega = 1), frozen from an independent
    // exact-diagonalization run.
    #[allow(clippy::excessive_precision)]
    const BASELINE_SPECTRUM: [f64; 16] = [
        -3.000000000000000e+01,
        -2.900105583423593e+01,
        -2.414195907468896e+01,
        -2.314262837112659e+01,
        -1.000000000000000e+01,
        -9.000526301210892e+00,
        -4.141965074809109e+00,
        -3.142161508917898e+00,
        4.143014908924886e+00,
        5.140476614480247e+00,
        1.000052630121088e+01,
        1.100000000000001e+01,
        2.414411683145544e+01,
        2.513614409059259e+01,
        3.000601741832531e+01,
        3.100000000000000e+01,
    ];

    #[test]
    fn basis_index_layout() {
        assert_eq!(basis_index(0, 0, 0, 0), 0);
        assert_eq!(basis_index(0, 0, 0, 1), 1);
        assert_eq!(basis_index(1, 1, 1, 1), 15);
        assert_eq!(basis_index(1, 0, 0, 0), 8);
    }

    #[test]
    fn decoupled_limit_is_pure_phonon_energy() {
        let p = ModelParams {
            b_high: 1.0, // unused by the builder; field passed explicitly
            b_low: 1.0,
            j1: 0.0,
            j2: 0.0,
            k: 0.0,
            omega: 1.0,
            t_hot: 1.0,
            measure: MeasureBasis::E1,
        };
        let h = build_full_hamiltonian(0.0, &p).unwrap();
        for i in 0..16 {
            for j in 0..16 {
                let want = if i == j { (i % 2) as f64 } else { 0.0 };
                assert!((h[(i, j)] - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn full_hamiltonian_trace_is_8_omega() {
        let p = ModelParams::default();
        let h = build_full_hamiltonian(p.b_high, &p).unwrap();
        assert!((h.trace() - 8.0 * p.omega).abs() < 1e-12);
    }

    #[test]
    fn tensor_sum_spectrum_when_decoupled_from_ancilla() {
        // k = 0, j2 = 0: eigenvalues are E_i +- b + j*omega
        let p = ModelParams {
            j2: 0.0,
            k: 0.0,
            omega: 1.3,
            ..ModelParams::default()
        };
        let b = 7.0;
        let j1 = 4.0;
        let p = ModelParams { j1, ..p };
        let h = build_full_hamiltonian(b, &p).unwrap();
        let d = eig_sym(&h).unwrap();

        let sys = system_eigensystem(b, j1);
        let mut want: Vec<f64> = sys
            .energies
            .iter()
            .flat_map(|&e| {
                [1.0f64, -1.0]
                    .into_iter()
                    .flat_map(move |s| [0.0f64, 1.0].into_iter().map(move |j| e + s * b + j * 1.3))
            })
            .collect();
        want.sort_by(f64::total_cmp);
        for (got, want) in d.eigenvalues().iter().zip(want.iter()) {
            assert!((got - want).abs() < 1e-10, "got {got}, want {want}");
        }
    }

    #[test]
    fn baseline_spectrum_matches_fixture() {
        let p = ModelParams::default();
        let h = build_full_hamiltonian(10.0, &p).unwrap();
        let d = eig_sym(&h).unwrap();
        for (got, want) in d.eigenvalues().iter().zip(BASELINE_SPECTRUM.iter()) {
            assert!((got - want).abs() < 1e-9, "got {got}, want {want}");
        }
    }

    #[test]
    fn system_hamiltonian_examples() {
        // j1 = 0: diagonal diag(2b, 0, 0, -2b)
        let h = build_system_hamiltonian(3.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                let want = match (i, j) {
                    (0, 0) => 6.0,
                    (3, 3) => -6.0,
                    _ => 0.0,
                };
                assert!((h[(i, j)] - want).abs() < 1e-15);
            }
        }
        // b = 0, j1 = 1: eigenvalues {-1, 0, 0, 1}
        let d = eig_sym(&build_system_hamiltonian(0.0, 1.0)).unwrap();
        let want = [-1.0, 0.0, 0.0, 1.0];
        for (got, want) in d.eigenvalues().iter().zip(want.iter()) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn eigensystem_labels_and_degeneracy() {
        let s = system_eigensystem(10.0, 10.0);
        assert_eq!(s.energies, [-20.0, 20.0, -10.0, 10.0]);
        // at the critical point E1 = E3
        let c = system_eigensystem(5.0, 10.0);
        assert_eq!(c.energies[0], c.energies[2]);
        assert_eq!(c.energies[0], -10.0);
    }

    #[test]
    fn eigensystem_states_are_orthonormal_eigenvectors() {
        for (b, j1) in [(10.0, 10.0), (5.0, 10.0), (0.3, 7.1), (2.0, 0.0)] {
            let sys = system_eigensystem(b, j1);
            let h = build_system_hamiltonian(b, j1);
            for i in 0..4 {
                for j in 0..4 {
                    let dot: f64 = sys.states[i]
                        .iter()
                        .zip(sys.states[j].iter())
                        .map(|(x, y)| x * y)
                        .sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - want).abs() < 1e-15);
                }
                // H_S |E_i> = E_i |E_i>
                let hv = h.as_mat().mul_vec(&sys.states[i]);
                for (got, want) in hv.iter().zip(sys.states[i].iter()) {
                    assert!((got - sys.energies[i] * want).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn ground_state_switches_at_critical_field() {
        let j1 = 10.0;
        let above = system_eigensystem(6.0, j1);
        let below = system_eigensystem(4.0, j1);
        let argmin = |e: &[f64; 4]| {
            e.iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .unwrap()
                .0
        };
        assert_eq!(argmin(&above.energies), 0); // E1
        assert_eq!(argmin(&below.energies), 2); // E3
    }

    #[test]
    fn critical_field_examples() {
        assert_eq!(critical_field(10.0), 5.0);
        assert_eq!(critical_field(0.0), 0.0);
        assert_eq!(critical_field(1.0), 0.5);
    }

    #[test]
    fn validate_rejects_bad_parameters() {
        let bad = |f: fn(&mut ModelParams)| {
            let mut p = ModelParams::default();
            f(&mut p);
            p.validate().unwrap_err()
        };
        assert!(matches!(bad(|p| p.j1 = -1.0), Error::InvalidParams(_)));
        assert!(matches!(bad(|p| p.j2 = -0.1), Error::InvalidParams(_)));
        assert!(matches!(bad(|p| p.t_hot = 0.0), Error::InvalidParams(_)));
        assert!(matches!(bad(|p| p.omega = -1.0), Error::InvalidParams(_)));
        assert!(matches!(bad(|p| p.b_high = 0.0), Error::InvalidParams(_)));
        assert!(matches!(bad(|p| p.k = f64::NAN), Error::InvalidParams(_)));
    }

    #[test]
    fn reversed_field_order_is_flagged_not_rejected() {
        let p = ModelParams {
            b_low: 12.0,
            ..ModelParams::default()
        };
        assert!(p.validate().is_ok());
        assert_eq!(p.field_order_note(), Some("b_low exceeds b_high"));
        assert_eq!(ModelParams::default().field_order_note(), None);
    }

    #[test]
    fn measure_basis_round_trips() {
        assert_eq!("e1".parse::<MeasureBasis>().unwrap(), MeasureBasis::E1);
        assert_eq!("E3".parse::<MeasureBasis>().unwrap(), MeasureBasis::E3);
        assert_eq!(MeasureBasis::E1.to_string(), "e1");
        assert!("e2".parse::<MeasureBasis>().is_err());
    }
}
