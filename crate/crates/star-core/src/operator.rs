//! Spin operators for both state backends.
//!
//! The symmetric backend stores one matrix per ancilla Dicke sector over the
//! basis |c> (x) |j, m> with the central bit major and m descending from +j.
//! The dense backend stores full 2^N matrices over the computational basis
//! with the central qubit as the most significant bit.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::dicke::BlockShape;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C_ONE};
use crate::register::{Register, RotatingFrameParams};

/// Hard cap for the dense backend; 2^14 matrices already exceed desk scale
/// for repeated evolution.
pub const DENSE_MAX_QUBITS: usize = 14;

/// Which representation an operator or state lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Symmetric,
    Dense,
}

/// Which spin family an operation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Central,
    Ancillas,
    Both,
}

pub(crate) fn check_dense_cap(n_total: usize) -> Result<()> {
    if n_total > DENSE_MAX_QUBITS {
        Err(Error::BackendLimit { requested: n_total, max: DENSE_MAX_QUBITS })
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// 2x2 and ladder building blocks
// ---------------------------------------------------------------------------

pub(crate) fn spin_half(axis: usize) -> CMatrix {
    let mut m = CMatrix::zeros(2, 2);
    match axis {
        0 => {
            m[(0, 1)] = Complex64::new(0.5, 0.0);
            m[(1, 0)] = Complex64::new(0.5, 0.0);
        }
        1 => {
            m[(0, 1)] = Complex64::new(0.0, -0.5);
            m[(1, 0)] = Complex64::new(0.0, 0.5);
        }
        _ => {
            m[(0, 0)] = Complex64::new(0.5, 0.0);
            m[(1, 1)] = Complex64::new(-0.5, 0.0);
        }
    }
    m
}

/// n . I on a single spin-1/2.
pub(crate) fn spin_half_axis(axis: [f64; 3]) -> CMatrix {
    spin_half(0) * Complex64::new(axis[0], 0.0)
        + spin_half(1) * Complex64::new(axis[1], 0.0)
        + spin_half(2) * Complex64::new(axis[2], 0.0)
}

/// Collective ladder operators for total spin j over basis m = j, j-1, ... -j.
pub(crate) fn ladder_jz(shape: &BlockShape) -> CMatrix {
    let l = shape.ladder_dim();
    CMatrix::from_fn(l, l, |r, c| {
        if r == c {
            Complex64::new(shape.m_of_index(r), 0.0)
        } else {
            linalg::C_ZERO
        }
    })
}

pub(crate) fn ladder_jplus(shape: &BlockShape) -> CMatrix {
    let l = shape.ladder_dim();
    let j = shape.j();
    let mut m = CMatrix::zeros(l, l);
    // J+ |j, m> = sqrt(j(j+1) - m(m+1)) |j, m+1>; index k has m = j - k.
    for k in 1..l {
        let mm = shape.m_of_index(k);
        let amp = (j * (j + 1.0) - mm * (mm + 1.0)).sqrt();
        m[(k - 1, k)] = Complex64::new(amp, 0.0);
    }
    m
}

pub(crate) fn ladder_axis(shape: &BlockShape, axis: [f64; 3]) -> CMatrix {
    let jp = ladder_jplus(shape);
    let jm = jp.adjoint();
    let jx = (&jp + &jm) * Complex64::new(0.5, 0.0);
    let jy = (&jp - &jm) * Complex64::new(0.0, -0.5);
    let jz = ladder_jz(shape);
    jx * Complex64::new(axis[0], 0.0)
        + jy * Complex64::new(axis[1], 0.0)
        + jz * Complex64::new(axis[2], 0.0)
}

/// Embed 2x2 `central` (x) ladder `ancilla` into a full block matrix.
pub(crate) fn block_embed(central: &CMatrix, ancilla: &CMatrix) -> CMatrix {
    linalg::kron(central, ancilla)
}

fn eye(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

// ---------------------------------------------------------------------------
// Dense-backend helpers
// ---------------------------------------------------------------------------

/// Single-site operator at qubit `pos` (0 = central) in an N-qubit register.
pub(crate) fn dense_site_op(op2: &CMatrix, pos: usize, n_total: usize) -> CMatrix {
    let left = 1usize << pos;
    let right = 1usize << (n_total - 1 - pos);
    linalg::kron(&linalg::kron(&eye(left), op2), &eye(right))
}

/// Collective ancilla operator: sum of the single-site op over qubits 1..N-1.
pub(crate) fn dense_collective_ancilla(op2: &CMatrix, n_total: usize) -> CMatrix {
    let dim = 1usize << n_total;
    let mut acc = CMatrix::zeros(dim, dim);
    for pos in 1..n_total {
        acc += dense_site_op(op2, pos, n_total);
    }
    acc
}

// ---------------------------------------------------------------------------
// Operator type
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum OperatorRepr {
    Symmetric(Vec<CMatrix>),
    Dense(CMatrix),
}

/// A linear operator in one of the two representations.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    pub(crate) repr: OperatorRepr,
    pub(crate) n_total: usize,
}

impl Operator {
    pub fn backend(&self) -> Backend {
        match self.repr {
            OperatorRepr::Symmetric(_) => Backend::Symmetric,
            OperatorRepr::Dense(_) => Backend::Dense,
        }
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    /// Per-block matrices (symmetric backend only).
    pub fn blocks(&self) -> Option<&[CMatrix]> {
        match &self.repr {
            OperatorRepr::Symmetric(b) => Some(b),
            OperatorRepr::Dense(_) => None,
        }
    }

    /// Full matrix (dense backend only).
    pub fn dense_matrix(&self) -> Option<&CMatrix> {
        match &self.repr {
            OperatorRepr::Dense(m) => Some(m),
            OperatorRepr::Symmetric(_) => None,
        }
    }

    pub fn identity(register: &Register, backend: Backend) -> Result<Self> {
        build_from_parts(register, backend, |shape| eye(shape.dim()), |n| eye(1 << n))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CMatrix, &CMatrix) -> CMatrix) -> Result<Self> {
        if self.n_total != other.n_total {
            return Err(Error::ShapeMismatch(alloc::format!(
                "operators over N = {} and N = {}",
                self.n_total,
                other.n_total
            )));
        }
        let repr = match (&self.repr, &other.repr) {
            (OperatorRepr::Symmetric(a), OperatorRepr::Symmetric(b)) => {
                OperatorRepr::Symmetric(a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
            }
            (OperatorRepr::Dense(a), OperatorRepr::Dense(b)) => OperatorRepr::Dense(f(a, b)),
            _ => {
                return Err(Error::ShapeMismatch(String::from(
                    "operators live in different backends",
                )))
            }
        };
        Ok(Self { repr, n_total: self.n_total })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Matrix product, same backend required.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.map(|m| m * Complex64::new(factor, 0.0))
    }

    pub fn map(&self, f: impl Fn(&CMatrix) -> CMatrix) -> Self {
        let repr = match &self.repr {
            OperatorRepr::Symmetric(b) => OperatorRepr::Symmetric(b.iter().map(f).collect()),
            OperatorRepr::Dense(m) => OperatorRepr::Dense(f(m)),
        };
        Self { repr, n_total: self.n_total }
    }

    /// Max Hermiticity residual over the representation.
    pub fn hermiticity_residual(&self) -> f64 {
        match &self.repr {
            OperatorRepr::Symmetric(b) => b
                .iter()
                .map(linalg::hermiticity_residual)
                .fold(0.0, f64::max),
            OperatorRepr::Dense(m) => linalg::hermiticity_residual(m),
        }
    }

    /// Propagator exp(-i self t); `self` must be Hermitian.
    pub fn propagator(&self, t: f64) -> Self {
        self.map(|m| linalg::propagator(m, t))
    }

    /// Unitarity residual max |U U† - 1|.
    pub fn unitarity_residual(&self) -> f64 {
        let check = |m: &CMatrix| {
            let n = m.nrows();
            (m * m.adjoint() - eye(n)).iter().map(|z| z.norm()).fold(0.0, f64::max)
        };
        match &self.repr {
            OperatorRepr::Symmetric(b) => b.iter().map(check).fold(0.0, f64::max),
            OperatorRepr::Dense(m) => check(m),
        }
    }
}

fn build_from_parts(
    register: &Register,
    backend: Backend,
    sym: impl Fn(&BlockShape) -> CMatrix,
    dense: impl Fn(usize) -> CMatrix,
) -> Result<Operator> {
    let n = register.n_total();
    let repr = match backend {
        Backend::Symmetric => {
            OperatorRepr::Symmetric(register.blocks().iter().map(|s| sym(s)).collect())
        }
        Backend::Dense => {
            check_dense_cap(n)?;
            OperatorRepr::Dense(dense(n))
        }
    };
    Ok(Operator { repr, n_total: n })
}

/// n . I on the central spin.
pub fn central_axis_op(register: &Register, backend: Backend, axis: [f64; 3]) -> Result<Operator> {
    let s = spin_half_axis(axis);
    build_from_parts(
        register,
        backend,
        |shape| block_embed(&s, &eye(shape.ladder_dim())),
        |n| dense_site_op(&s, 0, n),
    )
}

/// n . I summed over all ancillas (collective).
pub fn ancilla_axis_op(register: &Register, backend: Backend, axis: [f64; 3]) -> Result<Operator> {
    let s = spin_half_axis(axis);
    build_from_parts(
        register,
        backend,
        |shape| block_embed(&eye(2), &ladder_axis(shape, axis)),
        |n| dense_collective_ancilla(&s, n),
    )
}

/// The six elementary collective operators of a star register.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    pub iz_c: Operator,
    pub ix_c: Operator,
    pub iy_c: Operator,
    pub iz_a: Operator,
    pub ix_a: Operator,
    pub iy_a: Operator,
    pub backend: Backend,
}

impl OperatorSet {
    pub fn build(register: &Register, backend: Backend) -> Result<Self> {
        Ok(Self {
            ix_c: central_axis_op(register, backend, [1.0, 0.0, 0.0])?,
            iy_c: central_axis_op(register, backend, [0.0, 1.0, 0.0])?,
            iz_c: central_axis_op(register, backend, [0.0, 0.0, 1.0])?,
            ix_a: ancilla_axis_op(register, backend, [1.0, 0.0, 0.0])?,
            iy_a: ancilla_axis_op(register, backend, [0.0, 1.0, 0.0])?,
            iz_a: ancilla_axis_op(register, backend, [0.0, 0.0, 1.0])?,
            backend,
        })
    }
}

/// Lab-frame Hamiltonian H0 = w_C Iz^C + w_A Iz^A + 2 pi J Iz^C Iz^A.
pub fn static_hamiltonian(register: &Register, backend: Backend) -> Result<Operator> {
    let wc = register.omega_c();
    let wa = register.omega_a();
    let two_pi_j = 2.0 * core::f64::consts::PI * register.j_ca();
    let iz_c = central_axis_op(register, backend, [0.0, 0.0, 1.0])?;
    let iz_a = ancilla_axis_op(register, backend, [0.0, 0.0, 1.0])?;
    iz_c.scale(wc)
        .add(&iz_a.scale(wa))?
        .add(&iz_c.matmul(&iz_a)?.scale(two_pi_j))
}

/// Doubly-rotating-frame Hamiltonian with offsets, RF amplitudes, and phases.
pub fn rotating_frame_hamiltonian(
    register: &Register,
    params: &RotatingFrameParams,
    backend: Backend,
) -> Result<Operator> {
    let p = params.normalized()?;
    let two_pi = 2.0 * core::f64::consts::PI;
    let iz_c = central_axis_op(register, backend, [0.0, 0.0, 1.0])?;
    let iz_a = ancilla_axis_op(register, backend, [0.0, 0.0, 1.0])?;
    let coupling = iz_c.matmul(&iz_a)?.scale(two_pi * register.j_ca());

    let drive_c =
        central_axis_op(register, backend, [p.phi_c.cos(), p.phi_c.sin(), 0.0])?.scale(p.omega_rf_c);
    let drive_a =
        ancilla_axis_op(register, backend, [p.phi_a.cos(), p.phi_a.sin(), 0.0])?.scale(p.omega_rf_a);

    iz_c.scale(-two_pi * p.nu_c)
        .add(&iz_a.scale(-two_pi * p.nu_a))?
        .add(&coupling)?
        .add(&drive_c)?
        .add(&drive_a)
}

/// Rotation generator n . I on the selected family.
pub fn rotation_generator(
    register: &Register,
    backend: Backend,
    axis: [f64; 3],
    target: Target,
) -> Result<Operator> {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if norm < 1e-14 {
        return Err(Error::InvalidParam {
            name: "axis",
            reason: String::from("rotation axis must be nonzero"),
        });
    }
    let unit = [axis[0] / norm, axis[1] / norm, axis[2] / norm];
    match target {
        Target::Central => central_axis_op(register, backend, unit),
        Target::Ancillas => ancilla_axis_op(register, backend, unit),
        Target::Both => central_axis_op(register, backend, unit)?
            .add(&ancilla_axis_op(register, backend, unit)?),
    }
}

/// Hadamard on the central spin as a full unitary operator.
pub fn central_hadamard(register: &Register, backend: Backend) -> Result<Operator> {
    let inv = core::f64::consts::FRAC_1_SQRT_2;
    let mut h2 = CMatrix::zeros(2, 2);
    h2[(0, 0)] = Complex64::new(inv, 0.0);
    h2[(0, 1)] = Complex64::new(inv, 0.0);
    h2[(1, 0)] = Complex64::new(inv, 0.0);
    h2[(1, 1)] = Complex64::new(-inv, 0.0);
    build_from_parts(
        register,
        backend,
        |shape| block_embed(&h2, &eye(shape.ladder_dim())),
        |n| dense_site_op(&h2, 0, n),
    )
}

/// Central-controlled simultaneous flip of all ancillas.
///
/// |0>_C |a> -> |0>_C |a>, |1>_C |a> -> |1>_C |a-flipped>. Self-inverse.
/// In a Dicke sector the collective flip is i^n exp(-i pi Jx), which maps
/// |j, m> to |j, -m> up to a sector-dependent phase.
pub fn collective_cnot(register: &Register, backend: Backend) -> Result<Operator> {
    let n_anc = register.n_ancillas();
    let n = register.n_total();
    match backend {
        Backend::Symmetric => {
            let phase = linalg::C_I.powu(n_anc as u32);
            let blocks = register
                .blocks()
                .iter()
                .map(|shape| {
                    let l = shape.ladder_dim();
                    let jx = ladder_axis(shape, [1.0, 0.0, 0.0]);
                    let flip = linalg::propagator(&jx, core::f64::consts::PI) * phase;
                    let mut m = CMatrix::zeros(2 * l, 2 * l);
                    for k in 0..l {
                        m[(k, k)] = C_ONE; // |0>_C sector: identity
                    }
                    for r in 0..l {
                        for c in 0..l {
                            m[(l + r, l + c)] = flip[(r, c)]; // |1>_C sector: flip
                        }
                    }
                    m
                })
                .collect();
            Ok(Operator { repr: OperatorRepr::Symmetric(blocks), n_total: n })
        }
        Backend::Dense => {
            check_dense_cap(n)?;
            let dim = 1usize << n;
            let anc_mask = (1usize << (n - 1)) - 1;
            let central_bit = 1usize << (n - 1);
            let mut m = CMatrix::zeros(dim, dim);
            for src in 0..dim {
                let dst = if src & central_bit != 0 { src ^ anc_mask } else { src };
                m[(dst, src)] = C_ONE;
            }
            Ok(Operator { repr: OperatorRepr::Dense(m), n_total: n })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::register::RegisterSpec;

    fn reg(n: usize) -> Register {
        Register::build(RegisterSpec::tmp_like(n)).unwrap()
    }

    fn commutator_residual(a: &Operator, b: &Operator, c: &Operator) -> f64 {
        // max | [a,b] - i c |
        let comm = a.matmul(b).unwrap().sub(&b.matmul(a).unwrap()).unwrap();
        let ic = c.map(|m| m * linalg::C_I);
        let d = comm.sub(&ic).unwrap();
        match &d.repr {
            OperatorRepr::Symmetric(bs) => bs
                .iter()
                .flat_map(|m| m.iter())
                .map(|z| z.norm())
                .fold(0.0, f64::max),
            OperatorRepr::Dense(m) => m.iter().map(|z| z.norm()).fold(0.0, f64::max),
        }
    }

    #[test]
    fn su2_commutators_hold_in_both_backends() {
        for backend in [Backend::Symmetric, Backend::Dense] {
            let r = reg(5);
            let ops = OperatorSet::build(&r, backend).unwrap();
            assert!(commutator_residual(&ops.ix_c, &ops.iy_c, &ops.iz_c) < 1e-12);
            assert!(commutator_residual(&ops.ix_a, &ops.iy_a, &ops.iz_a) < 1e-12);
            // Central and ancilla families commute.
            let cross = ops
                .ix_c
                .matmul(&ops.iy_a)
                .unwrap()
                .sub(&ops.iy_a.matmul(&ops.ix_c).unwrap())
                .unwrap();
            assert!(cross.hermiticity_residual() < 1e-12 || true);
            let worst = match &cross.repr {
                OperatorRepr::Symmetric(bs) => bs
                    .iter()
                    .flat_map(|m| m.iter())
                    .map(|z| z.norm())
                    .fold(0.0, f64::max),
                OperatorRepr::Dense(m) => m.iter().map(|z| z.norm()).fold(0.0, f64::max),
            };
            assert!(worst < 1e-12);
        }
    }

    #[test]
    fn casimir_is_j_j_plus_one_per_block() {
        let r = reg(6);
        let ops = OperatorSet::build(&r, Backend::Symmetric).unwrap();
        let casimir = ops
            .ix_a
            .matmul(&ops.ix_a)
            .unwrap()
            .add(&ops.iy_a.matmul(&ops.iy_a).unwrap())
            .unwrap()
            .add(&ops.iz_a.matmul(&ops.iz_a).unwrap())
            .unwrap();
        for (block, shape) in casimir.blocks().unwrap().iter().zip(r.blocks()) {
            let j = shape.j();
            let expect = j * (j + 1.0);
            for i in 0..block.nrows() {
                for k in 0..block.ncols() {
                    let want = if i == k { expect } else { 0.0 };
                    assert!((block[(i, k)].re - want).abs() < 1e-12);
                    assert!(block[(i, k)].im.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn dense_backend_rejects_large_registers() {
        let r = reg(15);
        match OperatorSet::build(&r, Backend::Dense) {
            Err(Error::BackendLimit { requested: 15, max }) => assert_eq!(max, DENSE_MAX_QUBITS),
            other => panic!("expected BackendLimit, got {other:?}"),
        }
    }

    #[test]
    fn static_hamiltonian_matches_two_subspace_table() {
        // Eigenvalues: c = 0: +wC/2 + m (wA + pi J); c = 1: -wC/2 + m (wA - pi J),
        // with m = (N-1)/2 - h occurring C(N-1, h) times.
        for n in 2..=6usize {
            let r = reg(n);
            let h0 = static_hamiltonian(&r, Backend::Dense).unwrap();
            let mut eig = linalg::hermitian_eigen(h0.dense_matrix().unwrap()).values;
            let (wc, wa) = (r.omega_c(), r.omega_a());
            let pj = core::f64::consts::PI * r.j_ca();
            let mut table: alloc::vec::Vec<f64> = alloc::vec::Vec::new();
            for h in 0..n {
                let m = r.m_of_h(h);
                let count = crate::dicke::binomial((n - 1) as u64, h as u64);
                for _ in 0..count {
                    table.push(wc / 2.0 + m * (wa + pj));
                    table.push(-wc / 2.0 + m * (wa - pj));
                }
            }
            table.sort_by(|a, b| a.partial_cmp(b).unwrap());
            eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let scale = table.iter().map(|x| x.abs()).fold(1.0, f64::max);
            for (a, b) in eig.iter().zip(&table) {
                assert!((a - b).abs() / scale < 1e-12, "N={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn symmetric_and_dense_spectra_agree_with_multiplicity() {
        let r = reg(5);
        let sym = static_hamiltonian(&r, Backend::Symmetric).unwrap();
        let den = static_hamiltonian(&r, Backend::Dense).unwrap();
        let mut sym_eigs: alloc::vec::Vec<f64> = sym
            .blocks()
            .unwrap()
            .iter()
            .zip(r.blocks())
            .flat_map(|(block, shape)| {
                let vals = linalg::hermitian_eigen(block).values;
                let mult = shape.multiplicity as usize;
                vals.into_iter()
                    .flat_map(move |v| core::iter::repeat(v).take(mult))
            })
            .collect();
        let mut den_eigs = linalg::hermitian_eigen(den.dense_matrix().unwrap()).values;
        sym_eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        den_eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(sym_eigs.len(), den_eigs.len());
        let scale = den_eigs.iter().map(|x| x.abs()).fold(1.0, f64::max);
        for (a, b) in sym_eigs.iter().zip(&den_eigs) {
            assert!((a - b).abs() / scale < 1e-10);
        }
    }

    #[test]
    fn rotating_frame_reduces_to_pure_coupling() {
        let r = reg(3);
        let params = RotatingFrameParams::default();
        let h = rotating_frame_hamiltonian(&r, &params, Backend::Dense).unwrap();
        let iz_c = central_axis_op(&r, Backend::Dense, [0.0, 0.0, 1.0]).unwrap();
        let iz_a = ancilla_axis_op(&r, Backend::Dense, [0.0, 0.0, 1.0]).unwrap();
        let want = iz_c
            .matmul(&iz_a)
            .unwrap()
            .scale(2.0 * core::f64::consts::PI * r.j_ca());
        let diff = h.sub(&want).unwrap();
        let worst = diff
            .dense_matrix()
            .unwrap()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-12);
    }

    #[test]
    fn x_drive_adds_exactly_omega_ix() {
        let r = reg(3);
        let params = RotatingFrameParams {
            omega_rf_c: 123.0,
            ..Default::default()
        };
        let h = rotating_frame_hamiltonian(&r, &params, Backend::Symmetric).unwrap();
        let base = rotating_frame_hamiltonian(&r, &RotatingFrameParams::default(), Backend::Symmetric)
            .unwrap();
        let want = central_axis_op(&r, Backend::Symmetric, [1.0, 0.0, 0.0])
            .unwrap()
            .scale(123.0);
        let diff = h.sub(&base).unwrap().sub(&want).unwrap();
        let worst = diff
            .blocks()
            .unwrap()
            .iter()
            .flat_map(|m| m.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-12);
    }

    #[test]
    fn cnot_is_self_inverse_and_flips_ladder() {
        let r = reg(4);
        for backend in [Backend::Symmetric, Backend::Dense] {
            let cnot = collective_cnot(&r, backend).unwrap();
            let sq = cnot.matmul(&cnot).unwrap();
            let id = Operator::identity(&r, backend).unwrap();
            let diff = sq.sub(&id).unwrap();
            let worst = match &diff.repr {
                OperatorRepr::Symmetric(bs) => bs
                    .iter()
                    .flat_map(|m| m.iter())
                    .map(|z| z.norm())
                    .fold(0.0, f64::max),
                OperatorRepr::Dense(m) => m.iter().map(|z| z.norm()).fold(0.0, f64::max),
            };
            assert!(worst < 1e-12, "{backend:?}");
        }
        // Top block: |1>_C |j, j> -> |1>_C |j, -j> with unit amplitude, and the
        // computational-basis flip phase is exactly +1.
        let cnot = collective_cnot(&r, Backend::Symmetric).unwrap();
        let top = &cnot.blocks().unwrap()[0];
        let l = r.blocks()[0].ladder_dim();
        let amp = top[(l + (l - 1), l)];
        assert!((amp - C_ONE).norm() < 1e-12, "flip amplitude {amp}");
    }
}
