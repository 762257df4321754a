//! Smith normal form over the integers with full transform tracking.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{row_vec_mul, IntMatrix};

/// Diagonalization U * A * V = S by unimodular U, V, with the diagonal
/// entries forming a divisibility chain d1 | d2 | ... and zeros last.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// Exact inverse of `v`, maintained alongside it.
    pub v_inv: IntMatrix,
    /// The min(rows, cols) diagonal entries of `s`, all non-negative.
    pub diagonal: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// U * A * V == S, checked exactly.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        match self.u.mul(a).and_then(|ua| ua.mul(&self.v)) {
            Ok(uav) => uav == self.s,
            Err(_) => false,
        }
    }
}

struct Snf {
    s: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Snf {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.s.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.s.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.u.negate_row(i);
    }

    /// row[dst] += c * row[src]
    fn row_op(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.s.add_multiple_of_row(dst, src, c);
        self.u.add_multiple_of_row(dst, src, c);
    }

    /// col[dst] += c * col[src]
    fn col_op(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.s.add_multiple_of_col(dst, src, c);
        self.v.add_multiple_of_col(dst, src, c);
        let neg = -c;
        self.v_inv.add_multiple_of_row(src, dst, &neg);
    }

    /// Nonzero entry of minimal absolute value in the trailing submatrix,
    /// ties broken by lowest (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs = BigInt::zero();
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                let e = &self.s[(i, j)];
                if e.is_zero() {
                    continue;
                }
                let a = e.abs();
                if best.is_none() || a < best_abs {
                    best = Some((i, j));
                    best_abs = a;
                }
            }
        }
        best
    }
}

/// Smith normal form of any integer matrix, including empty shapes.
/// Deterministic: the pivot is always the minimal-|entry| with lowest (row, col).
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = Snf {
        s: a.clone(),
        u: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };

    let mut t = 0;
    'position: while t < rows.min(cols) {
        let Some((pi, pj)) = w.pivot(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        // Clear column t below the pivot.
        for i in t + 1..rows {
            if !w.s[(i, t)].is_zero() {
                let q = -(&w.s[(i, t)] / &w.s[(t, t)]);
                w.row_op(i, t, &q);
                if !w.s[(i, t)].is_zero() {
                    // A remainder smaller than the pivot appeared.
                    continue 'position;
                }
            }
        }
        // Clear row t to the right of the pivot.
        for j in t + 1..cols {
            if !w.s[(t, j)].is_zero() {
                let q = -(&w.s[(t, j)] / &w.s[(t, t)]);
                w.col_op(j, t, &q);
                if !w.s[(t, j)].is_zero() {
                    continue 'position;
                }
            }
        }
        // Pivot must divide the rest of the submatrix for the chain d_t | d_{t+1}.
        for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&w.s[(i, j)] % &w.s[(t, t)]).is_zero() {
                    w.row_op(t, i, &BigInt::one());
                    continue 'position;
                }
            }
        }
        t += 1;
    }

    for i in 0..rows.min(cols) {
        if w.s[(i, i)].is_negative() {
            w.negate_row(i);
        }
    }

    let diagonal = (0..rows.min(cols)).map(|i| w.s[(i, i)].clone()).collect();
    SmithDecomposition {
        u: w.u,
        s: w.s,
        v: w.v,
        v_inv: w.v_inv,
        diagonal,
    }
}

/// Solves x * A = target for an integer row vector x, if one exists.
pub fn solve_left(a: &IntMatrix, target: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(target.len(), a.cols());
    let snf = smith_normal_form(a);
    let tv = row_vec_mul(target, &snf.v);
    let mut y = vec![BigInt::zero(); a.rows()];
    for (j, tvj) in tv.iter().enumerate() {
        match snf.diagonal.get(j) {
            Some(d) if !d.is_zero() => {
                let (q, r) = num_integer::Integer::div_rem(tvj, d);
                if !r.is_zero() {
                    return None;
                }
                y[j] = q;
            }
            _ => {
                if !tvj.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(row_vec_mul(&y, &snf.u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_unimodular;

    fn diag_i64(d: &SmithDecomposition) -> Vec<i64> {
        d.diagonal
            .iter()
            .map(|x| i64::try_from(x).expect("small diagonal"))
            .collect()
    }

    fn assert_well_formed(a: &IntMatrix, d: &SmithDecomposition) {
        assert!(d.verify(a), "U*A*V != S");
        assert!(is_unimodular(&d.u), "U not unimodular");
        assert!(is_unimodular(&d.v), "V not unimodular");
        assert_eq!(
            d.v.mul(&d.v_inv).unwrap(),
            IntMatrix::identity(a.cols()),
            "v_inv is not the inverse of v"
        );
        // Divisibility chain with zeros last.
        let r = d.rank();
        for i in 0..r {
            assert!(!d.diagonal[i].is_zero());
            if i + 1 < r {
                assert!((&d.diagonal[i + 1] % &d.diagonal[i]).is_zero());
            }
        }
        for i in r..d.diagonal.len() {
            assert!(d.diagonal[i].is_zero());
        }
        // Off-diagonal of S is zero.
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j {
                    assert!(d.s[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_diag_2_3() {
        let a = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let d = smith_normal_form(&a);
        assert_well_formed(&a, &d);
        assert_eq!(diag_i64(&d), vec![1, 6]);
    }

    #[test]
    fn snf_2_4_6_8() {
        let a = IntMatrix::from_i64_rows(&[&[2, 4], &[6, 8]]);
        let d = smith_normal_form(&a);
        assert_well_formed(&a, &d);
        assert_eq!(diag_i64(&d), vec![2, 4]);
    }

    #[test]
    fn snf_zero_matrix() {
        let a = IntMatrix::zeros(3, 2);
        let d = smith_normal_form(&a);
        assert_well_formed(&a, &d);
        assert_eq!(diag_i64(&d), vec![0, 0]);
    }

    #[test]
    fn snf_empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let a = IntMatrix::zeros(r, c);
            let d = smith_normal_form(&a);
            assert_well_formed(&a, &d);
            assert!(d.diagonal.is_empty());
        }
    }

    #[test]
    fn snf_randoms_well_formed() {
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..60 {
            let r = (next() % 5) as usize + 1;
            let c = (next() % 5) as usize + 1;
            let mut a = IntMatrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    a[(i, j)] = BigInt::from((next() % 21) as i64 - 10);
                }
            }
            let d = smith_normal_form(&a);
            assert_well_formed(&a, &d);
        }
    }

    #[test]
    fn snf_deterministic() {
        let a = IntMatrix::from_i64_rows(&[&[4, -6, 2], &[6, 9, -3], &[0, 5, 5]]);
        let d1 = smith_normal_form(&a);
        let d2 = smith_normal_form(&a);
        assert_eq!(d1.s, d2.s);
        assert_eq!(d1.u, d2.u);
        assert_eq!(d1.v, d2.v);
    }

    #[test]
    fn solve_left_basic() {
        // x * A = t with A = [[2,0],[0,3],[1,1]] has solutions; check one.
        let a = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3], &[1, 1]]);
        let t = vec![BigInt::from(3), BigInt::from(4)];
        let x = solve_left(&a, &t).expect("solvable");
        let xa = row_vec_mul(&x, &a);
        assert_eq!(xa, t);
    }

    #[test]
    fn solve_left_unsolvable() {
        let a = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]);
        let t = vec![BigInt::from(1), BigInt::from(0)];
        assert!(solve_left(&a, &t).is_none());
    }
}
