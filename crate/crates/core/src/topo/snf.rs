use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer matrix with checked arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<i64>,
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.concat(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        (0..self.rows)
            .map(|r| (0..self.cols).try_fold(0i64, |acc, c| add(acc, mul(self.get(r, c), v[c])?)))
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) -> Result<()> {
        for c in 0..self.cols {
            let v = add(self.get(dst, c), mul(k, self.get(src, c))?)?;
            self.set(dst, c, v);
        }
        Ok(())
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) -> Result<()> {
        for r in 0..self.rows {
            let v = add(self.get(r, dst), mul(k, self.get(r, src))?)?;
            self.set(r, dst, v);
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) -> Result<()> {
        for c in 0..self.cols {
            let v = self.get(r, c).checked_neg().ok_or(Error::Overflow)?;
            self.set(r, c, v);
        }
        Ok(())
    }
}

/// Invariant factors of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    /// Nonzero invariant factors `d₁ | d₂ | …`, all positive.
    pub diagonal: Vec<i64>,
    pub rank: usize,
}

/// Smith decomposition `U · A · V = D` with unimodular `U`, `V`.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diag: IntMatrix,
    pub right: IntMatrix,
    pub rank: usize,
}

/// Diagonalizes `a` by unimodular row and column operations, pivoting on the
/// entry of least absolute value.
pub fn smith_decomposition(a: &IntMatrix) -> Result<SmithDecomposition> {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    let mut t = 0;
    while t < d.rows.min(d.cols) {
        // least nonzero |entry| in the lower-right block
        let mut pivot = None;
        for r in t..d.rows {
            for c in t..d.cols {
                let x = d.get(r, c).unsigned_abs();
                if x != 0 && pivot.is_none_or(|(_, _, best)| x < best) {
                    pivot = Some((r, c, x));
                }
            }
        }
        let Some((pr, pc, _)) = pivot else { break };
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);

        let mut clean = true;
        for r in t + 1..d.rows {
            let q = d.get(r, t) / d.get(t, t);
            if q != 0 {
                d.add_row(r, t, -q)?;
                u.add_row(r, t, -q)?;
            }
            clean &= d.get(r, t) == 0;
        }
        for c in t + 1..d.cols {
            let q = d.get(t, c) / d.get(t, t);
            if q != 0 {
                d.add_col(c, t, -q)?;
                v.add_col(c, t, -q)?;
            }
            clean &= d.get(t, c) == 0;
        }
        if !clean {
            // a smaller remainder appeared; pivot again
            continue;
        }
        let p = d.get(t, t);
        let offender = (t + 1..d.rows).find(|&r| (t + 1..d.cols).any(|c| d.get(r, c) % p != 0));
        if let Some(r) = offender {
            d.add_row(t, r, 1)?;
            u.add_row(t, r, 1)?;
            continue;
        }
        if p < 0 {
            d.negate_row(t)?;
            u.negate_row(t)?;
        }
        t += 1;
    }
    Ok(SmithDecomposition {
        left: u,
        diag: d,
        right: v,
        rank: t,
    })
}

pub fn smith_normal_form(a: &IntMatrix) -> Result<SnfResult> {
    let dec = smith_decomposition(a)?;
    let diagonal: Vec<i64> = (0..dec.rank).map(|i| dec.diag.get(i, i)).collect();
    Ok(SnfResult {
        rank: diagonal.len(),
        diagonal,
    })
}

/// An integer solution of `a · x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[i64]) -> Result<Option<Vec<i64>>> {
    let dec = smith_decomposition(a)?;
    let ub = dec.left.mul_vec(b)?;
    let mut y = vec![0i64; a.cols];
    for (i, &val) in ub.iter().enumerate() {
        if i < dec.rank {
            let di = dec.diag.get(i, i);
            if val % di != 0 {
                return Ok(None);
            }
            y[i] = val / di;
        } else if val != 0 {
            return Ok(None);
        }
    }
    Ok(Some(dec.right.mul_vec(&y)?))
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    fn det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum()
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    /// gcd of all k×k minors (determinantal divisor), by enumeration.
    fn determinantal_divisor(m: &IntMatrix, k: usize) -> i64 {
        let mut g = 0;
        for rs in subsets(m.rows, k) {
            for cs in subsets(m.cols, k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m.get(r, c)).collect()).collect();
                g = gcd(g, det(&sub));
            }
        }
        g
    }

    #[test]
    fn zero_matrix() {
        let r = smith_normal_form(&IntMatrix::zeros(3, 2)).unwrap();
        assert!(r.diagonal.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn two_by_two() {
        let r = smith_normal_form(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]])).unwrap();
        assert_eq!(r.diagonal, vec![2, 4]);
    }

    #[test]
    fn identity() {
        assert_eq!(smith_normal_form(&IntMatrix::identity(4)).unwrap().diagonal, vec![1, 1, 1, 1]);
    }

    #[test]
    fn torsion() {
        let r = smith_normal_form(&IntMatrix::from_rows(&[vec![3]])).unwrap();
        assert_eq!(r.diagonal, vec![3]);
        let r = smith_normal_form(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]])).unwrap();
        assert_eq!(r.diagonal, vec![1, 6]);
    }

    #[test]
    fn solve() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(solve_integer(&a, &[4, 9]).unwrap(), Some(vec![2, 3]));
        assert_eq!(solve_integer(&a, &[1, 0]).unwrap(), None);
        let z = IntMatrix::zeros(2, 0);
        assert_eq!(solve_integer(&z, &[0, 0]).unwrap(), Some(vec![]));
        assert_eq!(solve_integer(&z, &[0, 1]).unwrap(), None);
    }

    #[test]
    fn overflow_is_reported() {
        let a = IntMatrix::from_rows(&[vec![i64::MIN]]);
        assert!(matches!(smith_normal_form(&a), Err(Error::Overflow)));
    }

    fn matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..=6, r * c).prop_map(move |entries| IntMatrix {
                rows: r,
                cols: c,
                entries,
            })
        })
    }

    proptest! {
        #[test]
        fn diagonal_matches_minor_oracle(m in matrix()) {
            let r = smith_normal_form(&m).unwrap();
            for w in r.diagonal.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            prop_assert!(r.diagonal.iter().all(|&d| d > 0));
            let mut prefix = 1i64;
            for (k, d) in r.diagonal.iter().enumerate() {
                prefix *= d;
                prop_assert_eq!(prefix, determinantal_divisor(&m, k + 1));
            }
            prop_assert_eq!(determinantal_divisor(&m, r.rank + 1), 0);
        }

        #[test]
        fn invariant_under_row_and_column_order(m in matrix()) {
            let base = smith_normal_form(&m).unwrap();
            let mut rev = m.clone();
            for r in 0..m.rows {
                for c in 0..m.cols {
                    rev.set(r, c, m.get(m.rows - 1 - r, m.cols - 1 - c));
                }
            }
            prop_assert_eq!(smith_normal_form(&rev).unwrap(), base.clone());
            prop_assert_eq!(smith_normal_form(&m.transpose()).unwrap(), base);
        }

        #[test]
        fn decomposition_reconstructs(m in matrix(), x in proptest::collection::vec(-3i64..=3, 4)) {
            let b = m.mul_vec(&x[..m.cols]).unwrap();
            let sol = solve_integer(&m, &b).unwrap().expect("b is in the image");
            prop_assert_eq!(m.mul_vec(&sol).unwrap(), b);
        }
    }
}
