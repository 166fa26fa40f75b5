use super::int::{make_primitive, Int};
use super::intmat::IntMat;
use super::LinalgError;

/// A rational row space kept in reduced echelon form.
///
/// Rows are stored as primitive integer vectors (denominators cleared
/// row-wise). Each row has a positive pivot entry, and every other row is zero
/// in that pivot column, so rows scaled to pivot `1` are exactly the reduced
/// row echelon form over `Q`. Rows are ordered by pivot column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    len: usize,
    rows: Vec<Vec<Int>>,
    pivots: Vec<usize>,
    supports: Vec<Vec<usize>>,
}

fn support(v: &[Int]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// Eliminates `row`'s pivot column from `v`, scaling `v` as needed.
fn eliminate(v: &mut [Int], row: &[Int], row_support: &[usize], pivot: usize) {
    let c = &v[pivot];
    if c.is_zero() {
        return;
    }
    let a = &row[pivot];
    let g = a.gcd(c);
    let a = a.div_exact(&g);
    let c = c.div_exact(&g);
    if !a.is_one() {
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &a;
            }
        }
    }
    for &k in row_support {
        v[k] = Int::mul_sub(&Int::ONE, &v[k], &c, &row[k]);
    }
}

impl RowEchelon {
    pub fn new(len: usize) -> Self {
        RowEchelon {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
            supports: Vec::new(),
        }
    }

    pub fn vector_len(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &[Int]) -> Result<(), LinalgError> {
        if v.len() != self.len {
            return Err(LinalgError::DimensionMismatch {
                expected: self.len,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Reduces `v` against the rows in place; the result is zero in every
    /// pivot column and is a nonzero multiple of `v` modulo the row space.
    pub fn reduce(&self, v: &mut [Int]) -> Result<(), LinalgError> {
        self.check_len(v)?;
        for ((row, sup), &p) in self.rows.iter().zip(&self.supports).zip(&self.pivots) {
            eliminate(v, row, sup, p);
        }
        make_primitive(v);
        Ok(())
    }

    pub fn contains(&self, v: &[Int]) -> Result<bool, LinalgError> {
        let mut w = v.to_vec();
        self.reduce(&mut w)?;
        Ok(w.iter().all(Int::is_zero))
    }

    /// Inserts `v`; returns `true` iff the rank increased.
    pub fn insert(&mut self, v: &[Int]) -> Result<bool, LinalgError> {
        Ok(self.insert_remainder(v)?.is_some())
    }

    /// Like [`insert`](Self::insert) but hands back the primitive remainder
    /// that was added, which lies in the span and is independent of the
    /// previous rows.
    pub fn insert_remainder(&mut self, v: &[Int]) -> Result<Option<Vec<Int>>, LinalgError> {
        let mut w = v.to_vec();
        self.reduce(&mut w)?;
        let Some(pivot) = w.iter().position(|x| !x.is_zero()) else {
            return Ok(None);
        };
        // make_primitive left the leading entry positive
        let sup = support(&w);
        for (row, rsup) in self.rows.iter_mut().zip(self.supports.iter_mut()) {
            if row[pivot].is_zero() {
                continue;
            }
            eliminate(row, &w, &sup, pivot);
            make_primitive(row);
            *rsup = support(row);
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.rows.insert(at, w.clone());
        self.pivots.insert(at, pivot);
        self.supports.insert(at, sup);
        Ok(Some(w))
    }

    /// Integer basis of `{x : row · x = 0 for every row}`.
    pub fn kernel(&self) -> Vec<Vec<Int>> {
        let mut is_pivot = vec![false; self.len];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.len).filter(|&c| !is_pivot[c]) {
            // x_free = L, x_p = -row[free] * L / row[p] with L the lcm of pivots
            let mut lcm = Int::ONE;
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[free].is_zero() {
                    let g = lcm.gcd(&row[p]);
                    lcm = &lcm * &row[p].div_exact(&g);
                }
            }
            let mut x = vec![Int::ZERO; self.len];
            x[free] = lcm.clone();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[free].is_zero() {
                    x[p] = -(&(&row[free] * &lcm).div_exact(&row[p]));
                }
            }
            make_primitive(&mut x);
            out.push(x);
        }
        out
    }
}

/// Span of a set of `n x n` integer matrices, vectorized row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanBasis {
    side: usize,
    echelon: RowEchelon,
}

impl SpanBasis {
    pub fn new(side: usize) -> Self {
        SpanBasis {
            side,
            echelon: RowEchelon::new(side * side),
        }
    }

    pub fn from_matrices<'a>(
        side: usize,
        mats: impl IntoIterator<Item = &'a IntMat>,
    ) -> Result<Self, LinalgError> {
        let mut span = SpanBasis::new(side);
        for m in mats {
            span.insert(m)?;
        }
        Ok(span)
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn echelon(&self) -> &RowEchelon {
        &self.echelon
    }

    fn check(&self, m: &IntMat) -> Result<(), LinalgError> {
        if m.size() != self.side {
            return Err(LinalgError::DimensionMismatch {
                expected: self.side,
                found: m.size(),
            });
        }
        Ok(())
    }

    pub fn insert(&mut self, m: &IntMat) -> Result<bool, LinalgError> {
        self.check(m)?;
        self.echelon.insert(m.as_slice())
    }

    /// Inserts `m` and returns the independent remainder as a matrix when the
    /// dimension grew.
    pub fn insert_remainder(&mut self, m: &IntMat) -> Result<Option<IntMat>, LinalgError> {
        self.check(m)?;
        Ok(self
            .echelon
            .insert_remainder(m.as_slice())?
            .map(|v| IntMat::from_vec(self.side, v)))
    }

    pub fn contains(&self, m: &IntMat) -> Result<bool, LinalgError> {
        self.check(m)?;
        self.echelon.contains(m.as_slice())
    }

    /// True iff both spans are equal as subspaces.
    pub fn same_span(&self, other: &SpanBasis) -> bool {
        self.side == other.side && self.echelon.rows == other.echelon.rows
    }

    /// The echelon rows as matrices.
    pub fn row_matrices(&self) -> Vec<IntMat> {
        self.echelon
            .rows()
            .iter()
            .map(|r| IntMat::from_vec(self.side, r.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    fn k3() -> IntMat {
        IntMat::from_rows(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]])
    }

    #[test]
    fn inserting_identity_twice() {
        let mut s = SpanBasis::new(3);
        assert!(s.insert(&IntMat::identity(3)).unwrap());
        assert!(!s.insert(&IntMat::identity(3)).unwrap());
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn matrix_units_are_independent() {
        let mut s = SpanBasis::new(2);
        assert!(s.insert(&IntMat::unit(2, 0, 1)).unwrap());
        assert!(s.insert(&IntMat::unit(2, 1, 0)).unwrap());
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn ones_is_adjacency_plus_identity_for_triangle() {
        let mut s = SpanBasis::new(3);
        s.insert(&k3()).unwrap();
        s.insert(&IntMat::identity(3)).unwrap();
        assert!(!s.insert(&IntMat::ones(3)).unwrap());
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&IntMat::ones(3)).unwrap());
    }

    #[test]
    fn membership_negative() {
        let s = SpanBasis::from_matrices(3, [&IntMat::identity(3)]).unwrap();
        assert!(!s.contains(&IntMat::unit(3, 0, 0)).unwrap());
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let mut s = SpanBasis::new(3);
        assert!(matches!(
            s.insert(&IntMat::identity(2)),
            Err(LinalgError::DimensionMismatch { .. })
        ));
        assert!(s.contains(&IntMat::identity(4)).is_err());
    }

    #[test]
    fn rows_are_reduced() {
        let mut e = RowEchelon::new(4);
        e.insert(&v(&[2, 4, 0, 6])).unwrap();
        e.insert(&v(&[1, 1, 1, 1])).unwrap();
        e.insert(&v(&[0, 3, 3, 0])).unwrap();
        assert_eq!(e.rank(), 3);
        for (i, (row, &p)) in e.rows().iter().zip(e.pivots()).enumerate() {
            assert!(!row[p].is_negative() && !row[p].is_zero());
            for (j, other) in e.rows().iter().enumerate() {
                if i != j {
                    assert!(other[p].is_zero());
                }
            }
        }
        assert!(e.pivots().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn kernel_is_orthogonal_to_rows() {
        let mut e = RowEchelon::new(5);
        e.insert(&v(&[1, 2, 0, 3, -1])).unwrap();
        e.insert(&v(&[0, 3, 1, 0, 2])).unwrap();
        let ker = e.kernel();
        assert_eq!(ker.len(), 3);
        for x in &ker {
            for row in e.rows() {
                let mut dot = Int::ZERO;
                for (a, b) in row.iter().zip(x) {
                    dot.add_mul(a, b);
                }
                assert!(dot.is_zero());
            }
        }
    }
}
