//! Dense matrices over a [`Ring`], the Leibniz determinant oracle, and the
//! Chio condensation determinant engine.
//!
//! Indices at the API boundary are 1-based: `m.get(1, 1)` is the top-left entry.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::limits;
use crate::ring::{Ring, RingValue};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<RingValue>,
}

impl Matrix {
    /// Row-major construction. Fails if the entry count is not `rows * cols`
    /// or an entry lies outside `ring`.
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<RingValue>) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "Matrix::new",
                detail: format!("{} entries for a {rows}x{cols} matrix", entries.len()),
            });
        }
        if let Some(bad) = entries.iter().find(|e| !ring.contains(e)) {
            return Err(Error::RingMismatch {
                left: ring.to_string(),
                right: bad.ring().to_string(),
            });
        }
        Ok(Matrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    /// Builds the matrix whose `(i, j)` entry (1-based) is `f(i, j)`.
    pub fn from_fn<F>(ring: Ring, rows: usize, cols: usize, mut f: F) -> Matrix
    where
        F: FnMut(usize, usize) -> RingValue,
    {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                let v = f(i, j);
                debug_assert!(ring.contains(&v), "entry ({i},{j}) outside {ring}");
                entries.push(v);
            }
        }
        Matrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn try_from_fn<F>(ring: Ring, rows: usize, cols: usize, mut f: F) -> Result<Matrix>
    where
        F: FnMut(usize, usize) -> Result<RingValue>,
    {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                entries.push(f(i, j)?);
            }
        }
        Matrix::new(ring, rows, cols, entries)
    }

    /// Integer literal rows, mapped into `ring`. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(ring: &Ring, rows: &[R]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(rows.iter().all(|r| r.as_ref().len() == cols), "ragged rows");
        Matrix::from_fn(ring.clone(), rows.len(), cols, |i, j| {
            ring.from_i64(rows[i - 1].as_ref()[j - 1])
        })
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        Matrix::from_fn(ring.clone(), n, n, |i, j| {
            if i == j {
                ring.one()
            } else {
                ring.zero()
            }
        })
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(ring.clone(), rows, cols, |_, _| ring.zero())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[RingValue] {
        &self.entries
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &RingValue {
        assert!(
            (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j),
            "index ({i},{j}) out of range for {}x{} matrix",
            self.rows,
            self.cols
        );
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }

    pub fn row(&self, i: usize) -> &[RingValue] {
        assert!((1..=self.rows).contains(&i), "row {i} out of range");
        &self.entries[(i - 1) * self.cols..i * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingValue::is_zero)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries
                .swap((a - 1) * self.cols + j, (b - 1) * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries
                .swap(i * self.cols + (a - 1), i * self.cols + (b - 1));
        }
    }

    /// Top-left `k x k` block.
    pub fn leading_submatrix(&self, k: usize) -> Matrix {
        assert!(k <= self.rows && k <= self.cols);
        Matrix::from_fn(self.ring.clone(), k, k, |i, j| self.get(i, j).clone())
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn require_same_ring(&self, other: &Matrix) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            })
        }
    }

    /// Matrix product `self * other`.
    pub fn multiply(&self, other: &Matrix) -> Result<Matrix> {
        self.require_same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "multiply",
                detail: format!(
                    "{}x{} times {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        Matrix::try_from_fn(self.ring.clone(), self.rows, other.cols, |i, j| {
            (1..=self.cols).try_fold(self.ring.zero(), |acc, k| {
                acc.add(&self.get(i, k).mul(other.get(k, j))?)
            })
        })
    }

    /// Determinant as the signed sum over all permutations, bounded by
    /// [`limits::max_n`].
    pub fn leibniz_det(&self) -> Result<RingValue> {
        self.leibniz_det_bounded(limits::max_n())
    }

    pub fn leibniz_det_bounded(&self, bound: usize) -> Result<RingValue> {
        let n = self.require_square()?;
        if n > bound {
            return Err(Error::BoundExceeded { n, bound });
        }
        let mut acc = self.ring.zero();
        'perm: for sigma in Permutations::new(n) {
            let mut term = self.ring.one();
            for (i, &s) in sigma.images().iter().enumerate() {
                let a = self.get(i + 1, s);
                if a.is_zero() {
                    continue 'perm;
                }
                term = term.mul(a)?;
            }
            acc = if sigma.sign() > 0 {
                acc.add(&term)?
            } else {
                acc.sub(&term)?
            };
        }
        Ok(acc)
    }

    /// `(b_i * a_{i,j})`: row `i` scaled by `b[i-1]`.
    pub fn scale_rows(&self, b: &[RingValue]) -> Result<Matrix> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                op: "scale_rows",
                detail: format!("{} scalars for {} rows", b.len(), self.rows),
            });
        }
        Matrix::try_from_fn(self.ring.clone(), self.rows, self.cols, |i, j| {
            b[i - 1].mul(self.get(i, j))
        })
    }

    /// For a square matrix whose last column vanishes above the diagonal,
    /// returns `a_{n,n} * det(leading (n-1)x(n-1) block)`.
    pub fn last_column_reduction(&self) -> Result<RingValue> {
        let n = self.require_square()?;
        if n == 0 {
            return Err(Error::Precondition("matrix must be at least 1x1".into()));
        }
        if let Some(i) = (1..n).find(|&i| !self.get(i, n).is_zero()) {
            return Err(Error::Precondition(format!(
                "entry ({i},{n}) of the last column is nonzero"
            )));
        }
        self.get(n, n)
            .mul(&self.leading_submatrix(n - 1).leibniz_det()?)
    }

    /// Given `A v = 0`, reports whether `det(A) * v = 0`. Always true for a
    /// correct determinant; used as an executable check.
    pub fn kernel_scaling_check(&self, v: &Matrix) -> Result<bool> {
        let n = self.require_square()?;
        if v.rows != n || v.cols != 1 {
            return Err(Error::DimensionMismatch {
                op: "kernel_scaling_check",
                detail: format!("vector is {}x{}, expected {n}x1", v.rows, v.cols),
            });
        }
        if !self.multiply(v)?.is_zero() {
            return Err(Error::Precondition("A*v is not the zero vector".into()));
        }
        let det = self.leibniz_det()?;
        for e in v.entries() {
            if !det.mul(e)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One Chio condensation step about the `(n, n)` entry.
    ///
    /// Returns the `(n-1) x (n-1)` matrix `(a_{i,j} a_{n,n} - a_{i,n} a_{n,j})`
    /// and the factor `a_{n,n}^(n-2)`; the determinant of the former equals the
    /// factor times `det A`.
    pub fn chio_condense(&self) -> Result<(Matrix, RingValue)> {
        let n = self.require_square()?;
        if n < 2 {
            return Err(Error::Precondition(format!(
                "condensation needs n >= 2, got {n}"
            )));
        }
        let pivot = self.get(n, n);
        let condensed = Matrix::try_from_fn(self.ring.clone(), n - 1, n - 1, |i, j| {
            self.get(i, j)
                .mul(pivot)?
                .sub(&self.get(i, n).mul(self.get(n, j))?)
        })?;
        Ok((condensed, pivot.pow((n - 2) as u32)))
    }

    /// Determinant by repeated Chio condensation with exact division.
    ///
    /// A zero `(n, n)` pivot is replaced by the first nonzero entry found scanning
    /// columns from the last and, within a column, rows from the last; the
    /// entry is moved into place by one row swap and one column swap.
    /// Requires an integral domain.
    pub fn chio_det(&self) -> Result<RingValue> {
        let n = self.require_square()?;
        if !self.ring.is_integral_domain() {
            return Err(Error::NotIntegralDomain(self.ring.to_string()));
        }
        if n == 0 {
            return Ok(self.ring.one());
        }

        // (negate, pivot power) per level, innermost last
        let mut levels: Vec<(bool, RingValue)> = Vec::with_capacity(n);
        let mut current = self.clone();
        let mut det = loop {
            let k = current.rows;
            if k == 1 {
                break current.get(1, 1).clone();
            }
            let Some((r, c)) = current.find_pivot() else {
                break self.ring.zero();
            };
            let negate = (r != k) != (c != k);
            current.swap_rows(r, k);
            current.swap_cols(c, k);
            let (next, factor) = current.chio_condense()?;
            levels.push((negate, factor));
            current = next;
        };

        for (negate, factor) in levels.into_iter().rev() {
            if !det.is_zero() {
                det = det.exact_divide(&factor)?.ok_or_else(|| {
                    Error::Internal(format!("condensed determinant not divisible by {factor}"))
                })?;
            }
            if negate {
                det = det.neg();
            }
        }
        Ok(det)
    }

    fn find_pivot(&self) -> Option<(usize, usize)> {
        let n = self.rows;
        (1..=n)
            .rev()
            .flat_map(|c| (1..=n).rev().map(move |r| (r, c)))
            .find(|&(r, c)| !self.get(r, c).is_zero())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = RingValue;

    fn index(&self, (i, j): (usize, usize)) -> &RingValue {
        self.get(i, j)
    }
}

/// Matrix-file layout: a `rows cols` header followed by one line per row.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 1..=self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A permutation of `{1, ..., n}` with its sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
    sign: i8,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (1..=n).collect(),
            sign: 1,
        }
    }

    /// Validates that `images` is a bijection of `{1..n}`; the sign is
    /// computed from the inversion count.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidMap(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
        }
        let sign = if inversions(&images).is_multiple_of(2) {
            1
        } else {
            -1
        };
        Ok(Permutation { images, sign })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }
}

pub fn inversions(images: &[usize]) -> usize {
    let mut count = 0;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            if images[a] > images[b] {
                count += 1;
            }
        }
    }
    count
}

/// All permutations of `{1..n}` in lexicographic order. `n = 0` yields the
/// single empty permutation.
///
/// The sign is updated incrementally: each step is one transposition followed
/// by the reversal of a suffix of length `L`, i.e. `1 + L/2` transpositions.
pub struct Permutations {
    next: Option<Permutation>,
}

impl Permutations {
    pub fn new(n: usize) -> Permutations {
        Permutations {
            next: Some(Permutation::identity(n)),
        }
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let p = &current.images;
        let n = p.len();
        if let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) {
            let mut images = p.clone();
            let pivot = i - 1;
            let j = (pivot + 1..n)
                .rev()
                .find(|&j| images[j] > images[pivot])
                .unwrap();
            images.swap(pivot, j);
            images[pivot + 1..].reverse();
            let swaps = 1 + (n - pivot - 1) / 2;
            let sign = if swaps % 2 == 0 {
                current.sign
            } else {
                -current.sign
            };
            self.next = Some(Permutation { images, sign });
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::Integers
    }

    /// Cofactor expansion along the first row, over `i64`.
    fn cofactor_det(a: &[Vec<i64>]) -> i64 {
        let n = a.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    #[test]
    fn cofactor_oracle_on_fixture() {
        let a = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]];
        assert_eq!(cofactor_det(&a), -3);
        assert_eq!(
            Matrix::from_rows(&z(), &a).leibniz_det().unwrap(),
            z().from_i64(-3)
        );
    }

    #[test]
    fn empty_matrix_has_unit_determinant() {
        let m = Matrix::zeros(&z(), 0, 0);
        assert_eq!(m.leibniz_det().unwrap(), z().one());
        assert_eq!(m.chio_det().unwrap(), z().one());
    }

    #[test]
    fn symbolic_two_by_two() {
        let r = Ring::polynomial(["a", "b", "c", "d"]);
        let v = |s: &str| r.var(s).unwrap();
        let m = Matrix::new(r.clone(), 2, 2, vec![v("a"), v("b"), v("c"), v("d")]).unwrap();
        let expected = v("a")
            .mul(&v("d"))
            .unwrap()
            .sub(&v("b").mul(&v("c")).unwrap())
            .unwrap();
        assert_eq!(m.leibniz_det().unwrap(), expected);
    }

    #[test]
    fn multiply_examples() {
        let a = Matrix::from_rows(&z(), &[[1, 2], [3, 4]]);
        let s = Matrix::from_rows(&z(), &[[0, 1], [1, 0]]);
        assert_eq!(
            a.multiply(&s).unwrap(),
            Matrix::from_rows(&z(), &[[2, 1], [4, 3]])
        );
        let b = Matrix::from_rows(&z(), &[[1, 2, 3], [4, 5, 6], [7, 8, 10]]);
        assert_eq!(Matrix::identity(&z(), 3).multiply(&b).unwrap(), b);
        assert!(matches!(
            a.multiply(&b),
            Err(Error::DimensionMismatch { .. })
        ));
        let m5 = Matrix::identity(&Ring::modular(5).unwrap(), 2);
        assert!(matches!(a.multiply(&m5), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn leibniz_errors() {
        let r = Matrix::zeros(&z(), 2, 3);
        assert_eq!(r.leibniz_det(), Err(Error::NotSquare { rows: 2, cols: 3 }));
        let big = Matrix::identity(&z(), 5);
        assert_eq!(
            big.leibniz_det_bounded(4),
            Err(Error::BoundExceeded { n: 5, bound: 4 })
        );
    }

    #[test]
    fn scale_rows_examples() {
        let a = Matrix::from_rows(&z(), &[[1, 2, 3], [4, 5, 6], [7, 8, 10]]);
        let ones = vec![z().one(); 3];
        assert_eq!(a.scale_rows(&ones).unwrap(), a);
        let i2 = Matrix::identity(&z(), 2);
        let d = i2.scale_rows(&[z().from_i64(2), z().from_i64(3)]).unwrap();
        assert_eq!(d.leibniz_det().unwrap(), z().from_i64(6));
        let b = [z().from_i64(-1), z().from_i64(2), z().from_i64(5)];
        assert_eq!(
            a.scale_rows(&b).unwrap().leibniz_det().unwrap(),
            z().from_i64(30)
        );
        assert!(a.scale_rows(&b[..2]).is_err());
    }

    #[test]
    fn last_column_reduction_examples() {
        assert_eq!(
            Matrix::identity(&z(), 3).last_column_reduction().unwrap(),
            z().one()
        );
        let a = Matrix::from_rows(&z(), &[[1, 2, 0], [3, 4, 0], [5, 6, 7]]);
        assert_eq!(a.last_column_reduction().unwrap(), z().from_i64(-14));
        assert_eq!(a.leibniz_det().unwrap(), z().from_i64(-14));
        let one = Matrix::from_rows(&z(), &[[5]]);
        assert_eq!(one.last_column_reduction().unwrap(), z().from_i64(5));
        let bad = Matrix::from_rows(&z(), &[[1, 1], [0, 1]]);
        assert!(matches!(
            bad.last_column_reduction(),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn kernel_scaling_examples() {
        let zero = Matrix::zeros(&z(), 2, 2);
        let v = Matrix::from_rows(&z(), &[[3], [-7]]);
        assert!(zero.kernel_scaling_check(&v).unwrap());
        let ones = Matrix::from_rows(&z(), &[[1, 1], [1, 1]]);
        let k = Matrix::from_rows(&z(), &[[1], [-1]]);
        assert!(ones.kernel_scaling_check(&k).unwrap());
        let id = Matrix::identity(&z(), 2);
        assert!(matches!(
            id.kernel_scaling_check(&k),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn chio_condense_examples() {
        let (c, f) = Matrix::identity(&z(), 3).chio_condense().unwrap();
        assert_eq!(c, Matrix::identity(&z(), 2));
        assert_eq!(f, z().one());

        let a = Matrix::from_rows(&z(), &[[1, 2, 3], [4, 5, 6], [7, 8, 10]]);
        let (c, f) = a.chio_condense().unwrap();
        assert_eq!(c, Matrix::from_rows(&z(), &[[-11, -4], [-2, 2]]));
        assert_eq!(f, z().from_i64(10));
        assert_eq!(c.leibniz_det().unwrap(), z().from_i64(-30));

        let r = Ring::polynomial(["a", "b", "c", "d"]);
        let v = |s: &str| r.var(s).unwrap();
        let m = Matrix::new(r.clone(), 2, 2, vec![v("a"), v("b"), v("c"), v("d")]).unwrap();
        let (c, f) = m.chio_condense().unwrap();
        assert_eq!(c.rows(), 1);
        assert_eq!(c.get(1, 1), &m.leibniz_det().unwrap());
        assert_eq!(f, r.one());

        assert!(Matrix::from_rows(&z(), &[[4]]).chio_condense().is_err());
    }

    #[test]
    fn chio_det_examples() {
        assert_eq!(Matrix::identity(&z(), 5).chio_det().unwrap(), z().one());
        let a = Matrix::from_rows(&z(), &[[1, 2, 3], [4, 5, 6], [7, 8, 10]]);
        assert_eq!(a.chio_det().unwrap(), z().from_i64(-3));
        let swap = Matrix::from_rows(&z(), &[[0, 1], [1, 0]]);
        assert_eq!(swap.chio_det().unwrap(), z().from_i64(-1));
        assert_eq!(Matrix::zeros(&z(), 4, 4).chio_det().unwrap(), z().zero());
    }

    #[test]
    fn chio_det_refuses_composite_modulus() {
        let r = Ring::modular(6).unwrap();
        let m = Matrix::identity(&r, 2);
        assert!(matches!(m.chio_det(), Err(Error::NotIntegralDomain(_))));
        let p = Ring::modular(7).unwrap();
        let m = Matrix::from_rows(&p, &[[0, 3], [2, 5]]);
        assert_eq!(m.chio_det().unwrap(), m.leibniz_det().unwrap());
    }

    #[test]
    fn chio_det_over_polynomials() {
        let r = Ring::polynomial(["x", "y"]);
        let x = r.var("x").unwrap();
        let y = r.var("y").unwrap();
        let m = Matrix::new(
            r.clone(),
            3,
            3,
            vec![
                x.clone(),
                y.clone(),
                r.one(),
                r.zero(),
                x.clone(),
                y.clone(),
                y.clone(),
                r.zero(),
                r.zero(),
            ],
        )
        .unwrap();
        assert_eq!(m.chio_det().unwrap(), m.leibniz_det().unwrap());
    }

    #[test]
    fn permutations_are_lexicographic_with_correct_signs() {
        for n in 0..=6 {
            let all: Vec<Permutation> = Permutations::new(n).collect();
            assert_eq!(all.len(), (1..=n).product::<usize>());
            for w in all.windows(2) {
                assert!(w[0].images() < w[1].images());
            }
            for p in &all {
                let fresh = Permutation::from_images(p.images().to_vec()).unwrap();
                assert_eq!(p.sign(), fresh.sign(), "{:?}", p.images());
            }
        }
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 1]).is_err());
        assert_eq!(Permutation::from_images(vec![2, 1]).unwrap().sign(), -1);
        assert!(Permutation::identity(3).is_identity());
    }
}
