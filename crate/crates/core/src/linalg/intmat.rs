use std::fmt;

use nalgebra::DMatrix;

use super::int::Int;

/// A square matrix with exact integer entries, stored row-major.
///
/// The row-major storage doubles as the vectorization used by
/// [`SpanBasis`](super::SpanBasis): entry `(i, j)` is coordinate `i * n + j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    n: usize,
    data: Vec<Int>,
}

impl IntMat {
    pub fn zeros(n: usize) -> Self {
        IntMat {
            n,
            data: vec![Int::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Int::ONE;
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn ones(n: usize) -> Self {
        IntMat {
            n,
            data: vec![Int::ONE; n * n],
        }
    }

    /// Matrix unit `E_{i,j}`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = IntMat::zeros(n);
        m.data[i * n + j] = Int::ONE;
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(Int::from(f(i, j)));
            }
        }
        IntMat { n, data }
    }

    /// Builds a matrix from nested rows; panics if the rows are not square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == n),
            "rows must form a square matrix"
        );
        IntMat::from_fn(n, |i, j| rows[i][j])
    }

    /// Reassembles a matrix from its vectorization.
    pub fn from_vec(n: usize, data: Vec<Int>) -> Self {
        assert_eq!(data.len(), n * n, "vector length must be n^2");
        IntMat { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.n + j] = v;
    }

    pub fn as_slice(&self) -> &[Int] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Int> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Int::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn transpose(&self) -> IntMat {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.data[j * n + i].clone());
            }
        }
        IntMat { n, data }
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (i + 1..n).all(|j| self.data[i * n + j] == self.data[j * n + i]))
    }

    /// Matrix product, skipping zero entries of the left factor so sparse
    /// generators (adjacency matrices, diagonal idempotents) multiply cheaply.
    pub fn mul(&self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.n, rhs.n, "matrix sizes differ");
        let n = self.n;
        let mut out = vec![Int::ZERO; n * n];
        for i in 0..n {
            let row_out = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                let row_rhs = &rhs.data[k * n..(k + 1) * n];
                if a.is_one() {
                    for (o, b) in row_out.iter_mut().zip(row_rhs) {
                        if !b.is_zero() {
                            *o = &*o + b;
                        }
                    }
                } else {
                    for (o, b) in row_out.iter_mut().zip(row_rhs) {
                        if !b.is_zero() {
                            o.add_mul(a, b);
                        }
                    }
                }
            }
        }
        IntMat { n, data: out }
    }

    pub fn add(&self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.n, rhs.n, "matrix sizes differ");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        IntMat { n: self.n, data }
    }

    pub fn sub(&self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.n, rhs.n, "matrix sizes differ");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        IntMat { n: self.n, data }
    }

    pub fn scale(&self, c: &Int) -> IntMat {
        let data = self.data.iter().map(|a| a * c).collect();
        IntMat { n: self.n, data }
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &IntMat) -> IntMat {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// `E_Y * self * E_Y` for the diagonal idempotent of the vertex mask.
    pub fn compress(&self, mask: &[bool]) -> IntMat {
        let n = self.n;
        assert_eq!(mask.len(), n);
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                if !(mask[i] && mask[j]) {
                    out.data[i * n + j] = Int::ZERO;
                }
            }
        }
        out
    }

    /// `E_Y * self`: keeps the rows in the mask.
    pub fn mask_rows(&self, mask: &[bool]) -> IntMat {
        let n = self.n;
        let mut out = self.clone();
        for (i, keep) in mask.iter().enumerate() {
            if !keep {
                out.data[i * n..(i + 1) * n].fill(Int::ZERO);
            }
        }
        out
    }

    pub fn trace(&self) -> Int {
        let mut t = Int::ZERO;
        for i in 0..self.n {
            t = &t + &self.data[i * self.n + i];
        }
        t
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.data[i * self.n + j].to_f64())
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = self.data[i * self.n..(i + 1) * self.n]
                .iter()
                .map(|x| x.to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_against_hand_computation() {
        let a = IntMat::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b), IntMat::from_rows(&[vec![2, 1], vec![4, 3]]));
        assert_eq!(b.mul(&a), IntMat::from_rows(&[vec![3, 4], vec![1, 2]]));
        assert_eq!(
            a.commutator(&b),
            IntMat::from_rows(&[vec![-1, -3], vec![3, 1]])
        );
    }

    #[test]
    fn compress_and_mask() {
        let j = IntMat::ones(3);
        let c = j.compress(&[true, false, true]);
        assert_eq!(
            c,
            IntMat::from_rows(&[vec![1, 0, 1], vec![0, 0, 0], vec![1, 0, 1]])
        );
        let r = j.mask_rows(&[false, true, false]);
        assert_eq!(
            r,
            IntMat::from_rows(&[vec![0, 0, 0], vec![1, 1, 1], vec![0, 0, 0]])
        );
    }
}
