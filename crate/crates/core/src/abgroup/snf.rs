//! Smith normal form over the integers with checked 64-bit arithmetic.
//!
//! The reduction keeps the inverses of both transforms alongside them, so
//! callers can lift quotient generators and solve linear systems without a
//! separate inversion step.

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<i64>>;

const CTX: &str = "smith normal form";

/// Result of [`smith_normal_form`]: `u · m · v = s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Diagonal entries `s[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<i64> {
        let n = self.s.len().min(self.s.first().map_or(0, Vec::len));
        (0..n).map(|i| self.s[i][i]).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|&&d| d != 0).count()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, inner: usize) -> Result<IntMatrix> {
    let cols = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0i64; cols]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for j in 0..cols {
            let mut acc = 0i64;
            for k in 0..inner {
                let t = row[k].checked_mul(b[k][j]).ok_or(Error::Overflow(CTX))?;
                acc = acc.checked_add(t).ok_or(Error::Overflow(CTX))?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

struct Reducer {
    s: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
    rows: usize,
    cols: usize,
}

fn axpy(dst: &mut [i64], src: &[i64], c: i64) -> Result<()> {
    for (d, &s) in dst.iter_mut().zip(src) {
        let t = s.checked_mul(c).ok_or(Error::Overflow(CTX))?;
        *d = d.checked_add(t).ok_or(Error::Overflow(CTX))?;
    }
    Ok(())
}

fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, c: i64) -> Result<()> {
    for row in m.iter_mut() {
        let t = row[src].checked_mul(c).ok_or(Error::Overflow(CTX))?;
        row[dst] = row[dst].checked_add(t).ok_or(Error::Overflow(CTX))?;
    }
    Ok(())
}

fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, c: i64) -> Result<()> {
    if dst == src {
        return Err(Error::Input("row operation on a single row".into()));
    }
    let src_row = m[src].clone();
    axpy(&mut m[dst], &src_row, c)
}

impl Reducer {
    // row_dst += c * row_src
    fn add_row(&mut self, dst: usize, src: usize, c: i64) -> Result<()> {
        row_axpy(&mut self.s, dst, src, c)?;
        row_axpy(&mut self.u, dst, src, c)?;
        col_axpy(&mut self.u_inv, src, dst, c.checked_neg().ok_or(Error::Overflow(CTX))?)
    }

    // col_dst += c * col_src
    fn add_col(&mut self, dst: usize, src: usize, c: i64) -> Result<()> {
        col_axpy(&mut self.s, dst, src, c)?;
        col_axpy(&mut self.v, dst, src, c)?;
        row_axpy(&mut self.v_inv, src, dst, c.checked_neg().ok_or(Error::Overflow(CTX))?)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            self.s.swap(a, b);
            self.u.swap(a, b);
            for row in self.u_inv.iter_mut() {
                row.swap(a, b);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for row in self.s.iter_mut().chain(self.v.iter_mut()) {
                row.swap(a, b);
            }
            self.v_inv.swap(a, b);
        }
    }

    fn negate_row(&mut self, r: usize) -> Result<()> {
        for x in self.s[r].iter_mut().chain(self.u[r].iter_mut()) {
            *x = x.checked_neg().ok_or(Error::Overflow(CTX))?;
        }
        for row in self.u_inv.iter_mut() {
            row[r] = row[r].checked_neg().ok_or(Error::Overflow(CTX))?;
        }
        Ok(())
    }

    fn smallest_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.s[i][j].unsigned_abs();
                if x != 0 && best.is_none_or(|(bi, bj)| x < self.s[bi][bj].unsigned_abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Clears row and column `t` outside the pivot. Returns false if a
    /// smaller remainder had to be moved into the pivot position.
    fn clear_pivot_cross(&mut self, t: usize) -> Result<bool> {
        let pivot = self.s[t][t];
        for i in t + 1..self.rows {
            let q = self.s[i][t].div_euclid(pivot);
            if q != 0 {
                self.add_row(i, t, q.checked_neg().ok_or(Error::Overflow(CTX))?)?;
            }
        }
        for j in t + 1..self.cols {
            let q = self.s[t][j].div_euclid(pivot);
            if q != 0 {
                self.add_col(j, t, q.checked_neg().ok_or(Error::Overflow(CTX))?)?;
            }
        }
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs = pivot.unsigned_abs();
        for i in t + 1..self.rows {
            let x = self.s[i][t].unsigned_abs();
            if x != 0 && x < best_abs {
                best = Some((i, t));
                best_abs = x;
            }
        }
        for j in t + 1..self.cols {
            let x = self.s[t][j].unsigned_abs();
            if x != 0 && x < best_abs {
                best = Some((t, j));
                best_abs = x;
            }
        }
        match best {
            Some((i, j)) => {
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                Ok(false)
            }
            None => Ok(true),
        }
    }

    fn run(&mut self) -> Result<()> {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((i, j)) = self.smallest_nonzero(t) else {
                break;
            };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                if !self.clear_pivot_cross(t)? {
                    continue;
                }
                // remainders in the cross are zero; enforce divisibility of the block
                let pivot = self.s[t][t];
                let offender = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| self.s[i][j] % pivot != 0)
                });
                match offender {
                    Some(i) => self.add_row(t, i, 1)?,
                    None => break,
                }
            }
            if self.s[t][t] < 0 {
                self.negate_row(t)?;
            }
        }
        Ok(())
    }
}

/// Computes unimodular `u`, `v` with `u · m · v` diagonal and each diagonal
/// entry dividing the next. Zero entries trail the nonzero ones.
pub fn smith_normal_form(m: &IntMatrix) -> Result<Snf> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::Input("ragged matrix".into()));
    }
    let mut r = Reducer {
        s: m.clone(),
        u: identity(rows),
        u_inv: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
        rows,
        cols,
    };
    r.run()?;
    Ok(Snf {
        s: r.s,
        u: r.u,
        u_inv: r.u_inv,
        v: r.v,
        v_inv: r.v_inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) -> Snf {
        let snf = smith_normal_form(m).unwrap();
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let um = mat_mul(&snf.u, m, rows).unwrap();
        let umv = mat_mul(&um, &snf.v, cols).unwrap();
        assert_eq!(umv, snf.s);
        assert_eq!(mat_mul(&snf.u, &snf.u_inv, rows).unwrap(), identity(rows));
        assert_eq!(mat_mul(&snf.v, &snf.v_inv, cols).unwrap(), identity(cols));
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    assert_eq!(snf.s[i][j], 0);
                }
            }
        }
        let d = snf.diagonal();
        for w in d.windows(2) {
            assert!(w[0] >= 0);
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            } else {
                assert_eq!(w[1] % w[0], 0, "{d:?}");
            }
        }
        snf
    }

    #[test]
    fn one_by_one() {
        let snf = check(&vec![vec![2]]);
        assert_eq!(snf.s, vec![vec![2]]);
        assert_eq!(snf.u, vec![vec![1]]);
        assert_eq!(snf.v, vec![vec![1]]);
    }

    #[test]
    fn negative_and_zero() {
        assert_eq!(check(&vec![vec![-3]]).diagonal(), vec![3]);
        assert_eq!(check(&vec![vec![0, 0], vec![0, 0]]).diagonal(), vec![0, 0]);
        assert_eq!(check(&vec![vec![2, 0], vec![0, 3]]).diagonal(), vec![1, 6]);
        assert_eq!(check(&vec![vec![4, 6, 0]]).diagonal(), vec![2]);
    }

    #[test]
    fn overflow_is_reported() {
        let m = vec![vec![i64::MAX, i64::MAX - 1], vec![i64::MAX - 2, i64::MAX]];
        match smith_normal_form(&m) {
            Ok(snf) => {
                // if it succeeded the identity must still hold exactly
                let um = mat_mul(&snf.u, &m, 2);
                assert!(um.is_err() || mat_mul(&um.unwrap(), &snf.v, 2).unwrap() == snf.s);
            }
            Err(e) => assert_eq!(e, Error::Overflow(CTX)),
        }
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-9i64..10, c), r)
        })
    }

    fn det(m: &IntMatrix) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: IntMatrix = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn snf_is_sound(m in small_matrix()) {
            check(&m);
        }

        #[test]
        fn diagonal_product_is_abs_det(m in (1usize..5).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec(-6i64..7, n), n)
        })) {
            let snf = check(&m);
            let prod: i64 = snf.diagonal().iter().product();
            prop_assert_eq!(prod, det(&m).abs());
        }
    }
}
