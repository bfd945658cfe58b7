//! Physical description of a star-topology register and derived quantities.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Float;

use crate::dicke::{block_shapes, BlockShape};
use crate::error::{Error, Result};

/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant (J/K).
pub const KB: f64 = 1.380_649e-23;

/// Gyromagnetic ratio of 1H (rad s^-1 T^-1).
pub const GAMMA_H1: f64 = 26.752e7;
/// Gyromagnetic ratio of 31P (rad s^-1 T^-1).
pub const GAMMA_P31: f64 = 10.839e7;
/// Gyromagnetic ratio of 29Si (rad s^-1 T^-1), negative.
pub const GAMMA_SI29: f64 = -5.319e7;
/// Gyromagnetic ratio of 13C (rad s^-1 T^-1).
pub const GAMMA_C13: f64 = 6.7283e7;

/// User-facing description of a star register.
#[derive(Debug, Clone, PartialEq)]
pub struct RegisterSpec {
    /// Total qubit count N (central + ancillas), N >= 2.
    pub n_total: usize,
    /// Central-spin gyromagnetic ratio (rad s^-1 T^-1, may be negative).
    pub gamma_c: f64,
    /// Ancilla gyromagnetic ratio (rad s^-1 T^-1, may be negative).
    pub gamma_a: f64,
    /// Scalar coupling J_CA in Hz.
    pub j_ca: f64,
    /// Static field B0 in tesla.
    pub b0: f64,
    /// Bath temperature in kelvin.
    pub temperature: f64,
    /// Central-spin longitudinal relaxation time (s), used by HBAC.
    pub t1_c: Option<f64>,
    /// Ancilla longitudinal relaxation time (s), used by HBAC.
    pub t1_a: Option<f64>,
    /// Free-form name.
    pub label: String,
}

impl RegisterSpec {
    /// Convenience constructor with no relaxation times and an empty label.
    pub fn new(n_total: usize, gamma_c: f64, gamma_a: f64, j_ca: f64, b0: f64, temperature: f64) -> Self {
        Self {
            n_total,
            gamma_c,
            gamma_a,
            j_ca,
            b0,
            temperature,
            t1_c: None,
            t1_a: None,
            label: String::new(),
        }
    }

    /// Ten 1H around one 31P with J = 11 Hz; the trimethylphosphite register.
    pub fn tmp_like(n_total: usize) -> Self {
        let mut s = Self::new(n_total, GAMMA_P31, GAMMA_H1, 11.0, 11.74, 300.0);
        s.label = String::from("tmp");
        s
    }

    fn check(&self) -> Result<()> {
        fn bad(field: &'static str, reason: impl core::fmt::Display) -> Error {
            Error::InvalidSpec { field, reason: alloc::format!("{reason}") }
        }
        if self.n_total < 2 {
            return Err(bad("n_total", alloc::format!("need N >= 2, got {}", self.n_total)));
        }
        if !(self.b0 > 0.0) {
            return Err(bad("b0", alloc::format!("need B0 > 0, got {}", self.b0)));
        }
        if !(self.temperature > 0.0) {
            return Err(bad("temperature", alloc::format!("need T > 0, got {}", self.temperature)));
        }
        if !self.j_ca.is_finite() {
            return Err(bad("j_ca", "coupling must be finite"));
        }
        if !self.gamma_c.is_finite() || !self.gamma_a.is_finite() {
            return Err(bad("gamma_c", "gyromagnetic ratios must be finite"));
        }
        for (name, t1) in [("t1_c", self.t1_c), ("t1_a", self.t1_a)] {
            if let Some(t) = t1 {
                if !(t > 0.0) {
                    return Err(bad(
                        if name == "t1_c" { "t1_c" } else { "t1_a" },
                        alloc::format!("relaxation time must be positive, got {t}"),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Validated register with derived purity factors and Larmor frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct Register {
    spec: RegisterSpec,
    eps_c: f64,
    eps_a: f64,
    omega_c: f64,
    omega_a: f64,
    blocks: Vec<BlockShape>,
}

impl Register {
    /// Validates the spec and derives epsilons and Larmor frequencies.
    pub fn build(spec: RegisterSpec) -> Result<Self> {
        spec.check()?;
        let scale = HBAR * spec.b0 / (KB * spec.temperature);
        let blocks = block_shapes(spec.n_total - 1);
        Ok(Self {
            eps_c: spec.gamma_c * scale,
            eps_a: spec.gamma_a * scale,
            omega_c: -spec.gamma_c * spec.b0,
            omega_a: -spec.gamma_a * spec.b0,
            spec,
            blocks,
        })
    }

    pub fn spec(&self) -> &RegisterSpec {
        &self.spec
    }

    /// Total qubit count N.
    pub fn n_total(&self) -> usize {
        self.spec.n_total
    }

    /// Ancilla count N - 1.
    pub fn n_ancillas(&self) -> usize {
        self.spec.n_total - 1
    }

    /// Central purity factor eps_C = hbar gamma_C B0 / (k T).
    pub fn eps_c(&self) -> f64 {
        self.eps_c
    }

    /// Ancilla purity factor eps_A.
    pub fn eps_a(&self) -> f64 {
        self.eps_a
    }

    /// Central Larmor frequency omega_C = -gamma_C B0 (rad/s).
    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    /// Ancilla Larmor frequency omega_A = -gamma_A B0 (rad/s).
    pub fn omega_a(&self) -> f64 {
        self.omega_a
    }

    /// Scalar coupling in Hz.
    pub fn j_ca(&self) -> f64 {
        self.spec.j_ca
    }

    /// Dicke sectors of the ancilla space, maximal j first.
    pub fn blocks(&self) -> &[BlockShape] {
        &self.blocks
    }

    /// Ancilla magnetic quantum number for Hamming weight h: m_h = (N-1)/2 - h.
    pub fn m_of_h(&self, h: usize) -> f64 {
        (self.n_ancillas() as f64) / 2.0 - h as f64
    }

    /// Relaxation times, or an error naming the register.
    pub fn relaxation_times(&self) -> Result<(f64, f64)> {
        match (self.spec.t1_c, self.spec.t1_a) {
            (Some(c), Some(a)) => Ok((c, a)),
            _ => Err(Error::MissingRelaxationTimes { label: self.spec.label.clone() }),
        }
    }
}

/// Offsets, amplitudes, and phases of the doubly rotating frame drive.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RotatingFrameParams {
    /// Central resonance offset nu_C (Hz).
    pub nu_c: f64,
    /// Ancilla resonance offset nu_A (Hz).
    pub nu_a: f64,
    /// Central RF amplitude Omega_C (rad/s), >= 0.
    pub omega_rf_c: f64,
    /// Ancilla RF amplitude Omega_A (rad/s), >= 0.
    pub omega_rf_a: f64,
    /// Central RF phase (rad).
    pub phi_c: f64,
    /// Ancilla RF phase (rad).
    pub phi_a: f64,
}

impl RotatingFrameParams {
    /// Validates amplitudes and reduces phases into [0, 2pi).
    pub fn normalized(mut self) -> Result<Self> {
        for (name, amp) in [("omega_rf_c", self.omega_rf_c), ("omega_rf_a", self.omega_rf_a)] {
            if !(amp >= 0.0) {
                return Err(Error::InvalidParam {
                    name: if name == "omega_rf_c" { "omega_rf_c" } else { "omega_rf_a" },
                    reason: alloc::format!("RF amplitude must be >= 0, got {amp}"),
                });
            }
        }
        let tau = 2.0 * core::f64::consts::PI;
        self.phi_c = self.phi_c.rem_euclid(tau);
        self.phi_a = self.phi_a.rem_euclid(tau);
        Ok(self)
    }
}
