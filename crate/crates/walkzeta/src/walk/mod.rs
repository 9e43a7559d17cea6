//! Coined quantum walk operators on the cycle C_N.
//!
//! The evolution is U = S·C: the coin C = I ⊗ A acts at every vertex, then
//! the shift S moves each coin component along its arc. In the position-major
//! basis this makes U block-circulant: block column x contributes its
//! "move left" rows to block row x-1, its "move right" rows to block row x+1,
//! and (for three-state coins) its "stay" row to block row x. On C_2 the two
//! neighbour targets coincide, so the left and right blocks add.

mod intdet;
mod matrix;

pub(crate) use intdet::ScaledMatrix;
pub use matrix::QMatrix;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{rat, QuadRat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoinFamily {
    /// Two-state Hadamard-type coin, entries ±1/√2.
    Hadamard,
    /// Three-state Grover diffusion coin, entries in {-1/3, 2/3}.
    Grover3,
}

impl CoinFamily {
    pub fn coin_dim(self) -> usize {
        match self {
            CoinFamily::Hadamard => 2,
            CoinFamily::Grover3 => 3,
        }
    }
}

/// Which shift convention the walk uses: `M` keeps the coin state while
/// moving, `F` flips it at every step. The two conventions swap rows of the
/// local coin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoinType {
    M,
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WalkSpec {
    pub family: CoinFamily,
    pub coin_type: CoinType,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WalkError {
    #[error("cycle length must be at least 2, got {0}")]
    InvalidSize(usize),
    #[error("state dimension {got} does not match operator dimension {want}")]
    DimensionMismatch { got: usize, want: usize },
}

impl WalkSpec {
    pub fn new(family: CoinFamily, coin_type: CoinType, n: usize) -> Result<Self, WalkError> {
        if n < 2 {
            return Err(WalkError::InvalidSize(n));
        }
        Ok(WalkSpec { family, coin_type, n })
    }

    /// Operator dimension: coin dimension times cycle length.
    pub fn dim(&self) -> usize {
        self.family.coin_dim() * self.n
    }
}

impl fmt::Display for WalkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            CoinFamily::Hadamard => "hadamard",
            CoinFamily::Grover3 => "grover3",
        };
        let t = match self.coin_type {
            CoinType::M => "M",
            CoinType::F => "F",
        };
        write!(f, "{fam}/{t}/N={}", self.n)
    }
}

/// The local coin matrix, exact.
pub fn local_coin(family: CoinFamily, coin_type: CoinType) -> QMatrix {
    let mut a = QMatrix::zeros(family.coin_dim());
    match family {
        CoinFamily::Hadamard => {
            let h = QuadRat::new(Rational::from_integer(0.into()), rat(1, 2)); // 1/√2
            let signs: [[i64; 2]; 2] = match coin_type {
                CoinType::M => [[1, 1], [1, -1]],
                CoinType::F => [[1, -1], [1, 1]],
            };
            for i in 0..2 {
                for j in 0..2 {
                    a[(i, j)] = h.clone().mul_int(signs[i][j]);
                }
            }
        }
        CoinFamily::Grover3 => {
            let vals: [[i64; 3]; 3] = match coin_type {
                CoinType::M => [[-1, 2, 2], [2, -1, 2], [2, 2, -1]],
                CoinType::F => [[2, 2, -1], [2, -1, 2], [-1, 2, 2]],
            };
            for i in 0..3 {
                for j in 0..3 {
                    a[(i, j)] = QuadRat::from_rational(rat(vals[i][j], 3));
                }
            }
        }
    }
    a
}

trait MulInt {
    fn mul_int(self, k: i64) -> Self;
}

impl MulInt for QuadRat {
    fn mul_int(self, k: i64) -> QuadRat {
        &self * &QuadRat::from_int(k)
    }
}

/// A walk operator together with the spec that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkOperator {
    pub spec: WalkSpec,
    pub matrix: QMatrix,
}

/// Assemble U = S·C in the position-major basis. Coin rows are routed to the
/// block rows their shift component targets; indices wrap mod N, and
/// coinciding targets on C_2 accumulate.
pub fn build_operator(spec: &WalkSpec) -> WalkOperator {
    let c = spec.family.coin_dim();
    let n = spec.n;
    let a = local_coin(spec.family, spec.coin_type);
    // target block row offset for each coin row: first row moves left,
    // last row moves right, a middle row (Grover) stays.
    let offset = |row: usize| -> isize {
        if row == 0 {
            -1
        } else if row == c - 1 {
            1
        } else {
            0
        }
    };
    let mut u = QMatrix::zeros(spec.dim());
    for x in 0..n {
        for row in 0..c {
            let tx = (x as isize + offset(row)).rem_euclid(n as isize) as usize;
            for col in 0..c {
                let entry = a[(row, col)].clone();
                u[(tx * c + row, x * c + col)] += &entry;
            }
        }
    }
    WalkOperator { spec: *spec, matrix: u }
}

/// Exact unitarity check UᵀU = I (the operators are real).
pub fn check_unitary(op: &WalkOperator) -> bool {
    op.matrix.transpose().matmul(&op.matrix).is_identity()
}

/// Exact state vector over Q(√2).
pub type StateVector = Vec<QuadRat>;

/// Apply the walk `steps` times.
pub fn evolve_state(
    op: &WalkOperator,
    state: &StateVector,
    steps: u64,
) -> Result<StateVector, WalkError> {
    if state.len() != op.matrix.dim() {
        return Err(WalkError::DimensionMismatch { got: state.len(), want: op.matrix.dim() });
    }
    let mut v = state.clone();
    for _ in 0..steps {
        v = op.matrix.matvec(&v);
    }
    Ok(v)
}

/// Does U^t equal the identity, decided exactly by repeated squaring.
pub fn matrix_power_is_identity(op: &WalkOperator, t: u64) -> bool {
    op.matrix.pow(t).is_identity()
}
