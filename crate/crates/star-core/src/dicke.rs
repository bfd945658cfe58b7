//! Block structure of the permutation-symmetric ancilla space.
//!
//! `n` indistinguishable spin-1/2 ancillas decompose into total-spin sectors
//! `j = n/2, n/2 - 1, ...` down to 0 or 1/2, each appearing with the
//! Schur-Weyl multiplicity `d_j = C(n, n/2 - j) - C(n, n/2 - j - 1)`. A
//! permutation-invariant density operator is then a direct sum of one
//! representative matrix per sector, weighted by that multiplicity.

use alloc::vec::Vec;

/// One ancilla total-spin sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockShape {
    /// Twice the total ancilla spin (kept integer so half-integers are exact).
    pub j2: u32,
    /// Schur-Weyl multiplicity of the sector.
    pub multiplicity: u64,
}

impl BlockShape {
    /// Total ancilla spin j.
    pub fn j(&self) -> f64 {
        self.j2 as f64 / 2.0
    }

    /// Ancilla ladder dimension 2j + 1.
    pub fn ladder_dim(&self) -> usize {
        self.j2 as usize + 1
    }

    /// Full block dimension 2 * (2j + 1) including the central qubit.
    pub fn dim(&self) -> usize {
        2 * self.ladder_dim()
    }

    /// Magnetic quantum number of ladder index `k` (k = 0 is m = +j).
    pub fn m_of_index(&self, k: usize) -> f64 {
        (self.j2 as f64 - 2.0 * k as f64) / 2.0
    }
}

/// Binomial coefficient as u64; panics on overflow (fine for n <= 60).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// Sectors for `n` ancillas, maximal j first.
pub fn block_shapes(n_ancillas: usize) -> Vec<BlockShape> {
    let n = n_ancillas as u32;
    let mut shapes = Vec::new();
    let mut j2 = n; // j = n/2
    loop {
        let k = (n - j2) / 2; // n/2 - j, integral by construction
        let d = binomial(n as u64, k as u64)
            - if k == 0 { 0 } else { binomial(n as u64, k as u64 - 1) };
        shapes.push(BlockShape { j2, multiplicity: d });
        if j2 < 2 {
            break;
        }
        j2 -= 2;
    }
    shapes
}

/// Number of ancilla basis states with a given ladder value m = n/2 - h,
/// i.e. the dimension of the Hamming-weight-h eigenspace: C(n, h).
pub fn m_space_dim(n_ancillas: usize, h: usize) -> u64 {
    binomial(n_ancillas as u64, h as u64)
}
