//! Fraction-free determinants of x₀I − U over Z[√2].
//!
//! Characteristic-polynomial sampling evaluates det(x₀I − U) at many integer
//! abscissae. Doing that with field arithmetic spends most of its time in
//! per-operation rational normalization, so this module clears denominators
//! once and runs one-step Bareiss elimination over Z[√2], where every
//! division is exact by construction and no gcds are needed. Rows that a
//! pivot step does not touch are left stale and rescaled lazily the next
//! time they participate (their pending factor telescopes to a ratio of two
//! pivots), which preserves the banded sparsity of walk matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{QuadRat, Rational};

use super::matrix::QMatrix;

/// Element of Z[√2]: `a + b·√2`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Pair {
    a: BigInt,
    b: BigInt,
}

impl Pair {
    fn zero() -> Self {
        Pair { a: BigInt::zero(), b: BigInt::zero() }
    }

    fn one() -> Self {
        Pair { a: BigInt::one(), b: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn mul(&self, o: &Pair) -> Pair {
        Pair {
            a: &self.a * &o.a + 2 * (&self.b * &o.b),
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    /// self/o, which must be exact in Z[√2]: multiply by the conjugate and
    /// divide both components by the field norm of `o`.
    fn div_exact(&self, o: &Pair) -> Pair {
        let norm: BigInt = &o.a * &o.a - 2 * (&o.b * &o.b);
        debug_assert!(!norm.is_zero(), "division by zero in Z[√2]");
        let na: BigInt = &self.a * &o.a - 2 * (&self.b * &o.b);
        let nb = &self.b * &o.a - &self.a * &o.b;
        debug_assert!((&na % &norm).is_zero() && (&nb % &norm).is_zero());
        Pair { a: na / &norm, b: nb / norm }
    }

    /// self·p − q·r, the elimination kernel.
    fn mul_sub_mul(&self, p: &Pair, q: &Pair, r: &Pair) -> Pair {
        let mut out = self.mul(p);
        if !q.is_zero() && !r.is_zero() {
            let t = q.mul(r);
            out.a -= t.a;
            out.b -= t.b;
        }
        out
    }
}

/// A walk matrix with denominators cleared, ready for repeated
/// characteristic sampling. Stores `scale·(−U)` so each sample only clones
/// small integers and patches the diagonal.
pub(crate) struct ScaledMatrix {
    dim: usize,
    scale: BigInt,
    neg_rows: Vec<Vec<Pair>>,
}

fn to_scaled_int(r: &Rational, scale: &BigInt) -> BigInt {
    let (q, rem) = (r.numer() * scale).div_rem(r.denom());
    debug_assert!(rem.is_zero());
    q
}

impl ScaledMatrix {
    pub fn new(m: &QMatrix) -> Self {
        let dim = m.dim();
        let mut scale = BigInt::one();
        for i in 0..dim {
            for j in 0..dim {
                let e = &m[(i, j)];
                scale = scale.lcm(e.rat.denom()).lcm(e.irr.denom());
            }
        }
        let neg_rows = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let e = &m[(i, j)];
                        Pair {
                            a: -to_scaled_int(&e.rat, &scale),
                            b: -to_scaled_int(&e.irr, &scale),
                        }
                    })
                    .collect()
            })
            .collect();
        ScaledMatrix { dim, scale, neg_rows }
    }

    /// Exact det(x₀I − U).
    pub fn char_value(&self, x0: i64) -> QuadRat {
        let mut rows = self.neg_rows.clone();
        let shift = &self.scale * x0;
        for (i, row) in rows.iter_mut().enumerate() {
            row[i].a += &shift;
        }
        let det_scaled = bareiss_determinant(rows);
        let denom = Rational::from(self.scale.clone()).pow(self.dim.to_i32().unwrap());
        QuadRat::new(
            Rational::from(det_scaled.a) / &denom,
            Rational::from(det_scaled.b) / &denom,
        )
    }
}

/// One-step Bareiss with lazy row scaling; returns det of the integer
/// matrix (consumed).
fn bareiss_determinant(mut rows: Vec<Vec<Pair>>) -> Pair {
    let d = rows.len();
    // pivots[s] = pivot of step s−1, with the virtual pivots[0] = 1; a row
    // whose `state` is s has been scaled through step s−1.
    let mut pivots: Vec<Pair> = Vec::with_capacity(d + 1);
    pivots.push(Pair::one());
    let mut state = vec![0usize; d];
    let mut negate = false;

    for k in 0..d {
        let Some(pr) = (k..d).find(|&i| !rows[i][k].is_zero()) else {
            return Pair::zero();
        };
        if pr != k {
            rows.swap(pr, k);
            state.swap(pr, k);
            negate = !negate;
        }
        refresh(&mut rows[k], state[k], k, &pivots);
        state[k] = k;
        let (pivot_rows, tail_rows) = rows.split_at_mut(k + 1);
        let prow = &pivot_rows[k];
        let piv = prow[k].clone();
        let prev = pivots[k].clone();
        for (off, row) in tail_rows.iter_mut().enumerate() {
            let i = k + 1 + off;
            if row[k].is_zero() {
                continue;
            }
            refresh(row, state[i], k, &pivots);
            state[i] = k + 1;
            let lead = std::mem::replace(&mut row[k], Pair::zero());
            for j in k + 1..d {
                if row[j].is_zero() && prow[j].is_zero() {
                    continue;
                }
                row[j] = row[j].mul_sub_mul(&piv, &lead, &prow[j]).div_exact(&prev);
            }
        }
        pivots.push(piv);
    }
    let det = pivots.pop().unwrap();
    if negate {
        Pair { a: -det.a, b: -det.b }
    } else {
        det
    }
}

/// Bring a stale row from `state` up to step k (consistent with pivots < k):
/// multiply by pivots[k] and divide by pivots[state], both exact.
fn refresh(row: &mut [Pair], state: usize, k: usize, pivots: &[Pair]) {
    if state == k {
        return;
    }
    let num = &pivots[k];
    let den = &pivots[state];
    for e in row.iter_mut() {
        if !e.is_zero() {
            *e = e.mul(num).div_exact(den);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::walk::{build_operator, CoinFamily, CoinType, WalkSpec};

    fn qm(entries: &[&[i64]]) -> QMatrix {
        let d = entries.len();
        let mut m = QMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = QuadRat::from_int(entries[i][j]);
            }
        }
        m
    }

    #[test]
    fn matches_field_elimination_on_integer_matrices() {
        let m = qm(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 0]]);
        for x0 in [0, 1, 2, 5, -3] {
            let fast = ScaledMatrix::new(&m).char_value(x0);
            let mut shifted = m.clone();
            for i in 0..3 {
                for j in 0..3 {
                    shifted[(i, j)] = -&m[(i, j)];
                }
                shifted[(i, i)] += &QuadRat::from_int(x0);
            }
            assert_eq!(fast, shifted.determinant());
        }
    }

    #[test]
    fn handles_rational_and_irrational_entries() {
        let mut m = QMatrix::zeros(3);
        m[(0, 0)] = QuadRat::new(rat(1, 2), rat(0, 1));
        m[(0, 2)] = QuadRat::sqrt2();
        m[(1, 0)] = QuadRat::new(rat(0, 1), rat(-1, 2));
        m[(1, 1)] = QuadRat::from_int(3);
        m[(2, 1)] = QuadRat::new(rat(2, 3), rat(1, 6));
        m[(2, 2)] = QuadRat::one();
        for x0 in [0, 1, 7] {
            let fast = ScaledMatrix::new(&m).char_value(x0);
            let mut shifted = QMatrix::zeros(3);
            for i in 0..3 {
                for j in 0..3 {
                    shifted[(i, j)] = -&m[(i, j)];
                }
                shifted[(i, i)] += &QuadRat::from_int(x0);
            }
            assert_eq!(fast, shifted.determinant());
        }
    }

    #[test]
    fn zero_column_gives_zero() {
        let m = qm(&[&[1, 0, 2], &[3, 0, 4], &[5, 0, 6]]);
        assert!(ScaledMatrix::new(&m).char_value(0).is_zero());
    }

    #[test]
    fn agrees_with_field_elimination_on_walk_matrices() {
        for (family, coin_type, n) in [
            (CoinFamily::Hadamard, CoinType::M, 3),
            (CoinFamily::Hadamard, CoinType::F, 4),
            (CoinFamily::Grover3, CoinType::M, 3),
            (CoinFamily::Grover3, CoinType::F, 2),
        ] {
            let op = build_operator(&WalkSpec::new(family, coin_type, n).unwrap());
            let d = op.matrix.dim();
            let sm = ScaledMatrix::new(&op.matrix);
            for x0 in [0, 1, 2, (d as i64) + 1] {
                let mut shifted = QMatrix::zeros(d);
                for i in 0..d {
                    for j in 0..d {
                        shifted[(i, j)] = -&op.matrix[(i, j)];
                    }
                    shifted[(i, i)] += &QuadRat::from_int(x0);
                }
                assert_eq!(sm.char_value(x0), shifted.determinant(), "{} at {x0}", op.spec);
            }
        }
    }
}
