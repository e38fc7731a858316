use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(cols: usize, rows: Vec<Vec<i64>>) -> Self {
        let data: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix");
                r.into_iter().map(BigInt::from).collect()
            })
            .collect();
        IntMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i][j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self.data[i][k] * &other.data[k][j];
                    out.data[i][j] += t;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.data {
            row.swap(a, b);
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = q * &self.data[src][j];
            self.data[dst][j] -= t;
        }
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for row in &mut self.data {
            let t = q * &row[src];
            row[dst] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in &mut self.data[i] {
            *v = -std::mem::take(v);
        }
    }
}

/// Result of a Smith normal form computation. When transforms were
/// requested, `left · M · right` is the diagonal matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// `min(rows, cols)` entries, non-negative, each dividing the next.
    pub diagonal: Vec<BigInt>,
    pub left: Option<IntMatrix>,
    pub right: Option<IntMatrix>,
}

/// Smith normal form by unimodular row and column operations. The pivot is
/// the entry of least absolute value, ties broken by (row, column).
pub fn smith_normal_form(m: &IntMatrix, with_transforms: bool) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut p = with_transforms.then(|| IntMatrix::identity(rows));
    let mut q = with_transforms.then(|| IntMatrix::identity(cols));
    let steps = rows.min(cols);

    for t in 0..steps {
        while let Some((pi, pj)) = find_pivot(&a, t) {
            if pi != t {
                a.swap_rows(t, pi);
                if let Some(p) = p.as_mut() {
                    p.swap_rows(t, pi);
                }
            }
            if pj != t {
                a.swap_cols(t, pj);
                if let Some(q) = q.as_mut() {
                    q.swap_cols(t, pj);
                }
            }

            let mut dirty = false;
            for i in t + 1..rows {
                if a.data[i][t].is_zero() {
                    continue;
                }
                let quot = &a.data[i][t] / &a.data[t][t];
                a.row_axpy(i, t, &quot);
                if let Some(p) = p.as_mut() {
                    p.row_axpy(i, t, &quot);
                }
                dirty |= !a.data[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a.data[t][j].is_zero() {
                    continue;
                }
                let quot = &a.data[t][j] / &a.data[t][t];
                a.col_axpy(j, t, &quot);
                if let Some(q) = q.as_mut() {
                    q.col_axpy(j, t, &quot);
                }
                dirty |= !a.data[t][j].is_zero();
            }
            if dirty {
                continue;
            }

            // Divisibility: fold an offending row into the pivot row.
            let pivot = a.data[t][t].clone();
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a.data[i][j] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    a.row_axpy(t, i, &minus_one);
                    if let Some(p) = p.as_mut() {
                        p.row_axpy(t, i, &minus_one);
                    }
                }
                None => break,
            }
        }
        if a.data[t][t].is_negative() {
            a.negate_row(t);
            if let Some(p) = p.as_mut() {
                p.negate_row(t);
            }
        }
    }

    SmithForm {
        diagonal: (0..steps).map(|t| a.data[t][t].clone()).collect(),
        left: p,
        right: q,
    }
}

fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = &a.data[i][j];
            if v.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => v.abs() < a.data[bi][bj].abs(),
            };
            if better {
                best = Some((i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag(d: &SmithForm) -> Vec<i64> {
        d.diagonal
            .iter()
            .map(|v| i64::try_from(v.clone()).unwrap())
            .collect()
    }

    fn is_diagonal_of(m: &IntMatrix, d: &[BigInt]) -> bool {
        (0..m.rows()).all(|i| {
            (0..m.cols()).all(|j| {
                let want = if i == j { d[i].clone() } else { BigInt::zero() };
                *m.get(i, j) == want
            })
        })
    }

    // Determinant by cofactor expansion, fine for the small sizes tested.
    fn det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det(&minor)
            })
            .sum()
    }

    #[test]
    fn diag_2_3() {
        let m = IntMatrix::from_rows(2, vec![vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m, true);
        assert_eq!(diag(&s), vec![1, 6]);
        let d = s.left.unwrap().mul(&m).mul(&s.right.unwrap());
        assert!(is_diagonal_of(&d, &s.diagonal));
    }

    #[test]
    fn zero_and_identity() {
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(diag(&smith_normal_form(&z, false)), vec![0, 0]);
        let i = IntMatrix::identity(3);
        assert_eq!(diag(&smith_normal_form(&i, false)), vec![1, 1, 1]);
    }

    #[test]
    fn empty_shapes() {
        let m = IntMatrix::zeros(0, 3);
        assert!(smith_normal_form(&m, true).diagonal.is_empty());
    }

    proptest! {
        #[test]
        fn snf_invariants(
            (r, c, entries) in (1usize..5, 1usize..5)
                .prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-6i64..7, r * c)))
        ) {
            let rows: Vec<Vec<i64>> = entries.chunks(c).map(|x| x.to_vec()).collect();
            let m = IntMatrix::from_rows(c, rows.clone());
            let s = smith_normal_form(&m, true);
            for w in s.diagonal.windows(2) {
                if w[0].is_zero() {
                    prop_assert!(w[1].is_zero());
                } else {
                    prop_assert!((&w[1] % &w[0]).is_zero());
                }
            }
            prop_assert!(s.diagonal.iter().all(|d| !d.is_negative()));
            let d = s.left.clone().unwrap().mul(&m).mul(&s.right.clone().unwrap());
            prop_assert!(is_diagonal_of(&d, &s.diagonal));
            if r == c {
                let prod: BigInt = s.diagonal.iter().product();
                prop_assert_eq!(prod, BigInt::from(det(&rows).abs()));
            }
        }
    }
}
