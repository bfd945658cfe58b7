//! Density-matrix states in the symmetric (Dicke-block) and dense backends.
//!
//! A `CollectiveState` stores one representative matrix per ancilla total-spin
//! sector; the physical operator is the direct sum of `multiplicity` copies of
//! each block, so all traces carry the multiplicity weight. A `DenseState` is
//! the full 2^N matrix and serves as the brute-force oracle.
//!
//! States are immutable values: every operation returns a new state.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::dicke::BlockShape;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::operator::{
    check_dense_cap, rotation_generator, Backend, Operator, OperatorRepr, Target,
};
use crate::register::Register;
use crate::tolerance::Tolerances;

/// Block-diagonal density operator over (central qubit) x (ancilla Dicke sectors).
#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveState {
    register: Register,
    blocks: Vec<CMatrix>,
}

/// Full 2^N density operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    register: Register,
    matrix: CMatrix,
}

/// A state in either backend.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Symmetric(CollectiveState),
    Dense(DenseState),
}

impl CollectiveState {
    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub(crate) fn blocks_mut(&mut self) -> &mut [CMatrix] {
        &mut self.blocks
    }

    pub(crate) fn from_blocks(register: Register, blocks: Vec<CMatrix>) -> Self {
        Self { register, blocks }
    }

    /// All-zero block content (used as an accumulator).
    pub fn zero(register: &Register) -> Self {
        let blocks = register.blocks().iter().map(|s| CMatrix::zeros(s.dim(), s.dim())).collect();
        Self { register: register.clone(), blocks }
    }

    /// Diagonal state: `f(c, shape, k)` gives the per-copy population of the
    /// basis vector |c> (x) |j, m_k> in the given sector.
    pub fn from_diagonal(
        register: &Register,
        mut f: impl FnMut(usize, &BlockShape, usize) -> f64,
    ) -> Self {
        let blocks = register
            .blocks()
            .iter()
            .map(|shape| {
                let l = shape.ladder_dim();
                let mut m = CMatrix::zeros(2 * l, 2 * l);
                for c in 0..2 {
                    for k in 0..l {
                        m[(c * l + k, c * l + k)] = Complex64::new(f(c, shape, k), 0.0);
                    }
                }
                m
            })
            .collect();
        Self { register: register.clone(), blocks }
    }
}

impl DenseState {
    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub(crate) fn matrix_mut(&mut self) -> &mut CMatrix {
        &mut self.matrix
    }

    pub(crate) fn from_matrix(register: Register, matrix: CMatrix) -> Result<Self> {
        check_dense_cap(register.n_total())?;
        Ok(Self { register, matrix })
    }

    pub fn zero(register: &Register) -> Result<Self> {
        check_dense_cap(register.n_total())?;
        let dim = 1usize << register.n_total();
        Ok(Self { register: register.clone(), matrix: CMatrix::zeros(dim, dim) })
    }

    /// Diagonal state from per-basis-index populations.
    pub fn from_diagonal(register: &Register, mut f: impl FnMut(usize) -> f64) -> Result<Self> {
        check_dense_cap(register.n_total())?;
        let dim = 1usize << register.n_total();
        let mut m = CMatrix::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(f(i), 0.0);
        }
        Ok(Self { register: register.clone(), matrix: m })
    }

    /// Hamming weight of the ancilla part of a basis index.
    pub fn ancilla_hamming(&self, index: usize) -> usize {
        let mask = (1usize << (self.register.n_total() - 1)) - 1;
        (index & mask).count_ones() as usize
    }

    /// Central bit of a basis index (0 or 1).
    pub fn central_bit(&self, index: usize) -> usize {
        index >> (self.register.n_total() - 1)
    }
}

impl State {
    pub fn backend(&self) -> Backend {
        match self {
            State::Symmetric(_) => Backend::Symmetric,
            State::Dense(_) => Backend::Dense,
        }
    }

    pub fn register(&self) -> &Register {
        match self {
            State::Symmetric(s) => s.register(),
            State::Dense(s) => s.register(),
        }
    }

    pub fn n_total(&self) -> usize {
        self.register().n_total()
    }

    pub fn as_symmetric(&self) -> Option<&CollectiveState> {
        match self {
            State::Symmetric(s) => Some(s),
            State::Dense(_) => None,
        }
    }

    pub fn as_dense(&self) -> Option<&DenseState> {
        match self {
            State::Dense(s) => Some(s),
            State::Symmetric(_) => None,
        }
    }

    fn check_op(&self, op: &Operator) -> Result<()> {
        if op.n_total() != self.n_total() || op.backend() != self.backend() {
            return Err(Error::ShapeMismatch(alloc::format!(
                "state (N = {}, {:?}) vs operator (N = {}, {:?})",
                self.n_total(),
                self.backend(),
                op.n_total(),
                op.backend()
            )));
        }
        Ok(())
    }

    /// rho -> U rho U†.
    pub fn apply_unitary(&self, u: &Operator) -> Result<State> {
        self.check_op(u)?;
        Ok(match (self, &u.repr) {
            (State::Symmetric(s), OperatorRepr::Symmetric(us)) => {
                let blocks =
                    s.blocks.iter().zip(us).map(|(b, ub)| linalg::conjugate_by(ub, b)).collect();
                State::Symmetric(CollectiveState { register: s.register.clone(), blocks })
            }
            (State::Dense(s), OperatorRepr::Dense(um)) => State::Dense(DenseState {
                register: s.register.clone(),
                matrix: linalg::conjugate_by(um, &s.matrix),
            }),
            _ => unreachable!("backend checked above"),
        })
    }

    /// Unitary evolution under a Hermitian generator for `duration` seconds.
    pub fn evolve(&self, hamiltonian: &Operator, duration: f64) -> Result<State> {
        self.check_op(hamiltonian)?;
        self.apply_unitary(&hamiltonian.propagator(duration))
    }

    /// exp(-i angle n.I) on the selected spin family.
    pub fn collective_rotation(&self, axis: [f64; 3], angle: f64, target: Target) -> Result<State> {
        let gen = rotation_generator(self.register(), self.backend(), axis, target)?;
        self.apply_unitary(&gen.propagator(angle))
    }

    /// Complex trace including multiplicity weights.
    pub fn trace(&self) -> Complex64 {
        match self {
            State::Symmetric(s) => s
                .blocks
                .iter()
                .zip(s.register.blocks())
                .map(|(b, shape)| linalg::trace(b) * (shape.multiplicity as f64))
                .sum(),
            State::Dense(s) => linalg::trace(&s.matrix),
        }
    }

    /// tr(rho^2), preserved by unitaries.
    pub fn purity(&self) -> f64 {
        let sq = |m: &CMatrix| (m * m).diagonal().iter().map(|z| z.re).sum::<f64>();
        match self {
            State::Symmetric(s) => s
                .blocks
                .iter()
                .zip(s.register.blocks())
                .map(|(b, shape)| sq(b) * shape.multiplicity as f64)
                .sum(),
            State::Dense(s) => sq(&s.matrix),
        }
    }

    /// Expectation value of a Hermitian observable.
    ///
    /// The imaginary residue of tr(rho O) must stay below the tolerance,
    /// otherwise the observable is reported as non-Hermitian.
    pub fn expectation(&self, op: &Operator) -> Result<f64> {
        self.check_op(op)?;
        let value = self.expectation_complex(op)?;
        let scale = 1.0_f64.max(value.re.abs());
        if value.im.abs() > 1e-10 * scale {
            return Err(Error::NonHermitianObservable { residual: value.im.abs() });
        }
        Ok(value.re)
    }

    pub(crate) fn expectation_complex(&self, op: &Operator) -> Result<Complex64> {
        self.check_op(op)?;
        Ok(match (self, &op.repr) {
            (State::Symmetric(s), OperatorRepr::Symmetric(os)) => s
                .blocks
                .iter()
                .zip(os)
                .zip(s.register.blocks())
                .map(|((b, o), shape)| linalg::trace(&(b * o)) * (shape.multiplicity as f64))
                .sum(),
            (State::Dense(s), OperatorRepr::Dense(om)) => linalg::trace(&(&s.matrix * om)),
            _ => unreachable!("backend checked above"),
        })
    }

    /// Reduced 2x2 density matrix of the central qubit.
    pub fn reduced_central(&self) -> CMatrix {
        let mut out = CMatrix::zeros(2, 2);
        match self {
            State::Symmetric(s) => {
                for (b, shape) in s.blocks.iter().zip(s.register.blocks()) {
                    let l = shape.ladder_dim();
                    let w = shape.multiplicity as f64;
                    for c1 in 0..2 {
                        for c2 in 0..2 {
                            let mut acc = Complex64::new(0.0, 0.0);
                            for k in 0..l {
                                acc += b[(c1 * l + k, c2 * l + k)];
                            }
                            out[(c1, c2)] += acc * w;
                        }
                    }
                }
            }
            State::Dense(s) => {
                let half = 1usize << (s.register.n_total() - 1);
                for c1 in 0..2 {
                    for c2 in 0..2 {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for a in 0..half {
                            acc += s.matrix[(c1 * half + a, c2 * half + a)];
                        }
                        out[(c1, c2)] += acc;
                    }
                }
            }
        }
        out
    }

    /// Level-set populations (p_{0,h}, p_{1,h}) for h = 0..N-1, i.e. the total
    /// probability in each central-bit / ancilla-Hamming-weight sector.
    pub fn subspace_population_table(&self) -> Vec<(f64, f64)> {
        let n_anc = self.register().n_ancillas();
        let mut table = alloc::vec![(0.0, 0.0); n_anc + 1];
        match self {
            State::Symmetric(s) => {
                for (b, shape) in s.blocks.iter().zip(s.register.blocks()) {
                    let l = shape.ladder_dim();
                    let w = shape.multiplicity as f64;
                    for k in 0..l {
                        // m = j - k has Hamming weight h = n/2 - m.
                        let h = ((n_anc as i64 - shape.j2 as i64) / 2 + k as i64) as usize;
                        table[h].0 += w * b[(k, k)].re;
                        table[h].1 += w * b[(l + k, l + k)].re;
                    }
                }
            }
            State::Dense(s) => {
                let dim = 1usize << s.register.n_total();
                for i in 0..dim {
                    let h = s.ancilla_hamming(i);
                    if s.central_bit(i) == 0 {
                        table[h].0 += s.matrix[(i, i)].re;
                    } else {
                        table[h].1 += s.matrix[(i, i)].re;
                    }
                }
            }
        }
        table
    }

    /// Checks trace, Hermiticity, and positive semidefiniteness.
    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        let tr = self.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(Error::ShapeMismatch(alloc::format!("trace {tr} not 1")));
        }
        let check_block = |m: &CMatrix| -> Result<()> {
            let h = linalg::hermiticity_residual(m);
            if h > tol.hermiticity {
                return Err(Error::ShapeMismatch(alloc::format!("hermiticity residual {h:.3e}")));
            }
            let eig = linalg::hermitian_eigen(m);
            if let Some(min) = eig.values.first() {
                if *min < tol.psd_floor {
                    return Err(Error::ShapeMismatch(alloc::format!("negative eigenvalue {min:.3e}")));
                }
            }
            Ok(())
        };
        match self {
            State::Symmetric(s) => s.blocks.iter().try_for_each(check_block),
            State::Dense(s) => check_block(&s.matrix),
        }
    }

    /// Entrywise sum of two states sharing a backend (for assembling components).
    pub fn add(&self, other: &State) -> Result<State> {
        match (self, other) {
            (State::Symmetric(a), State::Symmetric(b)) if a.register == b.register => {
                let blocks = a.blocks.iter().zip(&b.blocks).map(|(x, y)| x + y).collect();
                Ok(State::Symmetric(CollectiveState { register: a.register.clone(), blocks }))
            }
            (State::Dense(a), State::Dense(b)) if a.register == b.register => {
                Ok(State::Dense(DenseState {
                    register: a.register.clone(),
                    matrix: &a.matrix + &b.matrix,
                }))
            }
            _ => Err(Error::ShapeMismatch(String::from("adding states from different registers"))),
        }
    }

    /// Entrywise scaling (for normalizing components).
    pub fn scale(&self, factor: f64) -> State {
        let f = Complex64::new(factor, 0.0);
        match self {
            State::Symmetric(s) => State::Symmetric(CollectiveState {
                register: s.register.clone(),
                blocks: s.blocks.iter().map(|b| b * f).collect(),
            }),
            State::Dense(s) => State::Dense(DenseState {
                register: s.register.clone(),
                matrix: &s.matrix * f,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{central_axis_op, static_hamiltonian};
    use crate::register::RegisterSpec;

    fn reg(n: usize) -> Register {
        Register::build(RegisterSpec::tmp_like(n)).unwrap()
    }

    /// Uniform (maximally mixed) state in the symmetric backend.
    fn mixed(register: &Register) -> State {
        let dim = 1.0 / (1u64 << register.n_total()) as f64;
        State::Symmetric(CollectiveState::from_diagonal(register, |_, _, _| dim))
    }

    #[test]
    fn maximally_mixed_has_unit_trace_everywhere() {
        for n in 2..=7 {
            let r = reg(n);
            let s = mixed(&r);
            assert!((s.trace().re - 1.0).abs() < 1e-12);
            s.validate(&Tolerances::default()).unwrap();
        }
    }

    #[test]
    fn zero_duration_evolution_is_identity() {
        let r = reg(4);
        let s = mixed(&r);
        let h = static_hamiltonian(&r, Backend::Symmetric).unwrap();
        let s2 = s.evolve(&h, 0.0).unwrap();
        assert_eq!(s.backend(), s2.backend());
        for (a, b) in s.as_symmetric().unwrap().blocks().iter().zip(s2.as_symmetric().unwrap().blocks()) {
            let d = (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(d < 1e-14);
        }
    }

    #[test]
    fn larmor_period_restores_state() {
        // H = w IzC; t = 2 pi / w returns the density matrix exactly.
        let r = reg(2);
        let w = 123.456;
        let h = central_axis_op(&r, Backend::Symmetric, [0.0, 0.0, 1.0]).unwrap().scale(w);
        // A state with coherence so the phase actually matters.
        let s0 = mixed(&r);
        let s0 = s0.collective_rotation([0.0, 1.0, 0.0], 0.7, Target::Central).unwrap();
        let s1 = s0
            .collective_rotation([1.0, 0.0, 0.0], 0.3, Target::Both)
            .unwrap()
            .evolve(&h, 2.0 * core::f64::consts::PI / w)
            .unwrap();
        let s2 = s0.collective_rotation([1.0, 0.0, 0.0], 0.3, Target::Both).unwrap();
        for (a, b) in s1.as_symmetric().unwrap().blocks().iter().zip(s2.as_symmetric().unwrap().blocks()) {
            let d = (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(d < 1e-12);
        }
    }

    #[test]
    fn unitaries_preserve_trace_and_purity() {
        let r = reg(5);
        let s = mixed(&r)
            .collective_rotation([0.577, 0.577, 0.577], 1.1, Target::Both)
            .unwrap();
        let h = static_hamiltonian(&r, Backend::Symmetric).unwrap();
        let s2 = s.evolve(&h, 0.0123).unwrap();
        assert!((s2.trace().re - 1.0).abs() < 1e-10);
        assert!((s2.purity() - s.purity()).abs() < 1e-10);
    }

    #[test]
    fn full_turn_rotation_restores_density_matrix() {
        let r = reg(2);
        let s = mixed(&r).collective_rotation([0.0, 1.0, 0.0], 0.4, Target::Central).unwrap();
        let s2 = s.collective_rotation([1.0, 0.0, 0.0], 2.0 * core::f64::consts::PI, Target::Central).unwrap();
        for (a, b) in s.as_symmetric().unwrap().blocks().iter().zip(s2.as_symmetric().unwrap().blocks()) {
            let d = (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(d < 1e-12);
        }
    }

    #[test]
    fn expectation_of_identity_is_one() {
        let r = reg(6);
        let s = mixed(&r);
        let id = Operator::identity(&r, Backend::Symmetric).unwrap();
        assert!((s.expectation(&id).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_hermitian_observable_is_rejected() {
        let r = reg(2);
        let pol = State::Symmetric(CollectiveState::from_diagonal(&r, |c, _, k| {
            [0.4, 0.3, 0.2, 0.1][2 * c + k]
        }));
        let s = pol
            .collective_rotation([0.0, 1.0, 0.0], 0.5, Target::Central)
            .unwrap()
            .collective_rotation([1.0, 0.0, 0.0], 0.5, Target::Central)
            .unwrap();
        let ix = central_axis_op(&r, Backend::Symmetric, [1.0, 0.0, 0.0]).unwrap();
        let iy = central_axis_op(&r, Backend::Symmetric, [0.0, 1.0, 0.0]).unwrap();
        // Ix + i Iy is not Hermitian; its expectation has an imaginary part here.
        let bad = ix.add(&iy.map(|m| m * linalg::C_I)).unwrap();
        match s.expectation(&bad) {
            Err(Error::NonHermitianObservable { .. }) => {}
            other => panic!("expected NonHermitianObservable, got {other:?}"),
        }
    }

    #[test]
    fn backend_mismatch_is_a_shape_error() {
        let r = reg(3);
        let s = mixed(&r);
        let h = static_hamiltonian(&r, Backend::Dense).unwrap();
        assert!(matches!(s.evolve(&h, 1.0), Err(Error::ShapeMismatch(_))));
    }
}
