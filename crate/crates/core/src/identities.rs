//! Builders for the matrices and scalars attached to a map `f` fixing `n`,
//! and exact verifiers for the condensation identities.
//!
//! Every verifier computes both sides with the Leibniz oracle, never with
//! [`Matrix::chio_det`], so a defect in the condensation engine cannot hide
//! behind the identity it implements.

use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::funcmap::{enumerate_n_fixing, enumerate_n_potent, EndoMap};
use crate::matrix::Matrix;
use crate::ring::{product, Ring, RingValue};

/// Name of the indeterminate standing for entry `(i, j)` of a generic matrix.
pub fn entry_var(prefix: &str, i: usize, j: usize) -> String {
    format!("{prefix}{i}_{j}")
}

/// Polynomial ring whose indeterminates are the entries of one generic
/// `n x n` matrix per prefix, declared prefix by prefix in row-major order.
pub fn generic_ring(n: usize, prefixes: &[&str]) -> Ring {
    let mut names = Vec::with_capacity(prefixes.len() * n * n);
    for p in prefixes {
        for i in 1..=n {
            for j in 1..=n {
                names.push(entry_var(p, i, j));
            }
        }
    }
    Ring::polynomial(names)
}

/// The `n x n` matrix of indeterminates `<prefix><i>_<j>` in `ring`.
pub fn generic_matrix(ring: &Ring, prefix: &str, n: usize) -> Result<Matrix> {
    Matrix::try_from_fn(ring.clone(), n, n, |i, j| {
        let name = entry_var(prefix, i, j);
        ring.var(&name)
            .ok_or_else(|| Error::Precondition(format!("ring does not declare {name}")))
    })
}

fn require_size(op: &'static str, f: &EndoMap, m: &Matrix) -> Result<usize> {
    let n = f.n();
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch {
            op,
            detail: format!("map on {n} points, matrix {}x{}", m.rows(), m.cols()),
        });
    }
    Ok(n)
}

/// `prod_{i<n} b_{i,f(i)}`.
pub fn weight_of(f: &EndoMap, b: &Matrix) -> Result<RingValue> {
    let n = require_size("weight_of", f, b)?;
    let factors: Vec<&RingValue> = (1..n).map(|i| b.get(i, f.apply(i))).collect();
    product(b.ring(), factors)
}

/// `a_{n,n}^(|f^{-1}(n)| - 2) * prod_{i<n, f(i) != n} a_{f(i),n}` for n-potent
/// `f` and `n >= 2`.
pub fn abut_of(f: &EndoMap, a: &Matrix) -> Result<RingValue> {
    let n = require_size("abut_of", f, a)?;
    if n < 2 {
        return Err(Error::Precondition("abut requires n >= 2".into()));
    }
    if !f.is_n_potent()? {
        return Err(Error::NotNPotent(f.to_string()));
    }
    let exponent = f.preimage_count_of_n().checked_sub(2).ok_or_else(|| {
        Error::Internal(format!(
            "n-potent map {f} has fewer than two preimages of n"
        ))
    })?;
    let factors: Vec<&RingValue> = (1..n)
        .filter(|&i| f.apply(i) != n)
        .map(|i| a.get(f.apply(i), n))
        .collect();
    a.get(n, n)
        .pow(exponent as u32)
        .mul(&product(a.ring(), factors)?)
}

/// `prod_{i<n, i != g} a_{f(i),n}` for a chosen `g < n` with `f(g) = n`.
/// Agrees with [`abut_of`] for every admissible `g`.
pub fn abut_omitting(f: &EndoMap, a: &Matrix, g: usize) -> Result<RingValue> {
    let n = require_size("abut_omitting", f, a)?;
    if g == 0 || g >= n || f.apply(g) != n {
        return Err(Error::Precondition(format!(
            "f({g}) != {n} or g out of range"
        )));
    }
    let factors: Vec<&RingValue> = (1..n)
        .filter(|&i| i != g)
        .map(|i| a.get(f.apply(i), n))
        .collect();
    product(a.ring(), factors)
}

/// `(a_{i,j} a_{f(i),n} - a_{i,n} a_{f(i),j})` for `1 <= i, j <= n-1`.
pub fn build_condensed_b(f: &EndoMap, a: &Matrix) -> Result<Matrix> {
    let n = require_size("build_condensed_b", f, a)?;
    if !f.fixes_n() {
        return Err(Error::InvalidMap(format!("{f} does not fix n")));
    }
    Matrix::try_from_fn(a.ring().clone(), n - 1, n - 1, |i, j| {
        let fi = f.apply(i);
        a.get(i, j)
            .mul(a.get(fi, n))?
            .sub(&a.get(i, n).mul(a.get(fi, j))?)
    })
}

/// With `C = B A`, the matrix `(a_{i,j} c_{i,n} - a_{i,n} c_{i,j})` for
/// `1 <= i, j <= n-1`.
pub fn build_g(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    if !a.is_square() || b.rows() != n || b.cols() != n {
        return Err(Error::DimensionMismatch {
            op: "build_g",
            detail: format!(
                "A is {}x{}, B is {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            ),
        });
    }
    if n < 2 {
        return Err(Error::Precondition("build_g requires n >= 2".into()));
    }
    let c = b.multiply(a)?;
    Matrix::try_from_fn(a.ring().clone(), n - 1, n - 1, |i, j| {
        a.get(i, j)
            .mul(c.get(i, n))?
            .sub(&a.get(i, n).mul(c.get(i, j))?)
    })
}

/// `(delta_{j,f(i)})`, the 0/1 matrix that turns the general identity into
/// the single-map one.
pub fn map_selection_matrix(ring: &Ring, f: &EndoMap) -> Matrix {
    let n = f.n();
    Matrix::from_fn(ring.clone(), n, n, |i, j| {
        if f.apply(i) == j {
            ring.one()
        } else {
            ring.zero()
        }
    })
}

/// `Z_f = (delta_{i,j} - (1 - delta_{i,n}) delta_{f(i),j})`.
pub fn build_zf(ring: &Ring, f: &EndoMap) -> Matrix {
    let n = f.n();
    Matrix::from_fn(ring.clone(), n, n, |i, j| {
        let diag = i64::from(i == j);
        let off = i64::from(i != n && f.apply(i) == j);
        ring.from_i64(diag - off)
    })
}

/// Column vector `v_f` with entry `i` equal to `0` if `f^(n-1)(i) = n`, else `1`.
pub fn build_vf(ring: &Ring, f: &EndoMap) -> Result<Matrix> {
    if !f.fixes_n() {
        return Err(Error::InvalidMap(format!("{f} does not fix n")));
    }
    let n = f.n();
    Matrix::try_from_fn(ring.clone(), n, 1, |i, _| {
        Ok(if f.iterate(i, n - 1)? == n {
            ring.zero()
        } else {
            ring.one()
        })
    })
}

/// The 0/1 matrix with ones on the diagonal and in the last column.
pub fn build_unit_column_matrix(ring: &Ring, n: usize) -> Matrix {
    Matrix::from_fn(ring.clone(), n, n, |i, j| {
        if i == j || (j == n && i != n) {
            ring.one()
        } else {
            ring.zero()
        }
    })
}

/// A 3-index array `d[i][j][k]`, `1 <= i, j <= m`, `1 <= k <= width`.
#[derive(Clone, Debug)]
pub struct Cube {
    m: usize,
    width: usize,
    entries: Vec<RingValue>,
}

impl Cube {
    pub fn from_fn<F>(m: usize, width: usize, mut f: F) -> Cube
    where
        F: FnMut(usize, usize, usize) -> RingValue,
    {
        let mut entries = Vec::with_capacity(m * m * width);
        for i in 1..=m {
            for j in 1..=m {
                for k in 1..=width {
                    entries.push(f(i, j, k));
                }
            }
        }
        Cube { m, width, entries }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &RingValue {
        &self.entries[((i - 1) * self.m + (j - 1)) * self.width + (k - 1)]
    }

    /// The slice matrix `(d_{i,j,g(i)})` for a row selector `g`.
    fn select(&self, ring: &Ring, g: &[usize]) -> Matrix {
        Matrix::from_fn(ring.clone(), self.m, self.m, |i, j| {
            self.get(i, j, g[i - 1]).clone()
        })
    }
}

fn check_cube(b: &Matrix, d: &Cube) -> Result<()> {
    if b.rows() != d.m || b.cols() != d.width {
        return Err(Error::DimensionMismatch {
            op: "cube",
            detail: format!(
                "b is {}x{}, cube is {}x{}x{}",
                b.rows(),
                b.cols(),
                d.m,
                d.m,
                d.width
            ),
        });
    }
    Ok(())
}

/// `(sum_k b_{i,k} d_{i,j,k})`, an `m x m` matrix.
pub fn contract_rows(b: &Matrix, d: &Cube) -> Result<Matrix> {
    check_cube(b, d)?;
    Matrix::try_from_fn(b.ring().clone(), d.m, d.m, |i, j| {
        (1..=d.width).try_fold(b.ring().zero(), |acc, k| {
            acc.add(&b.get(i, k).mul(d.get(i, j, k))?)
        })
    })
}

/// Row-multilinear expansion of `det(contract_rows(b, d))` with `m = n - 1`
/// rows and `width = n`: the sum over all maps `f` fixing `n` of
/// `prod_{i<n} b_{i,f(i)} * det((d_{i,j,f(i)}))`.
pub fn multilinear_expansion(b: &Matrix, d: &Cube) -> Result<RingValue> {
    check_cube(b, d)?;
    let n = d.width;
    if d.m + 1 != n {
        return Err(Error::DimensionMismatch {
            op: "multilinear_expansion",
            detail: format!("expected {} rows for width {n}", n.saturating_sub(1)),
        });
    }
    let ring = b.ring();
    let mut acc = ring.zero();
    for f in enumerate_n_fixing(n) {
        let g = &f.images()[..n - 1];
        let coeff = product(ring, (1..n).map(|i| b.get(i, g[i - 1])))?;
        if coeff.is_zero() {
            continue;
        }
        acc = acc.add(&coeff.mul(&d.select(ring, g).leibniz_det()?)?)?;
    }
    Ok(acc)
}

/// Which identity a report certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    Chio,
    ChioGen,
    Supergen,
    Mtt,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Chio => "chio",
            Theorem::ChioGen => "chio-gen",
            Theorem::Supergen => "supergen",
            Theorem::Mtt => "mtt",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theorem> {
        match s {
            "chio" => Ok(Theorem::Chio),
            "chio-gen" => Ok(Theorem::ChioGen),
            "supergen" => Ok(Theorem::Supergen),
            "mtt" => Ok(Theorem::Mtt),
            _ => Err(Error::Parse {
                line: 0,
                msg: format!("unknown theorem {s:?}"),
            }),
        }
    }
}

/// Outcome of one identity check: both sides and whether they agree exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondensationReport {
    pub theorem: Theorem,
    pub n: usize,
    pub ring: String,
    pub map: Option<EndoMap>,
    pub lhs: RingValue,
    pub rhs: RingValue,
    pub verdict: bool,
}

impl CondensationReport {
    pub fn new(
        theorem: Theorem,
        n: usize,
        map: Option<EndoMap>,
        lhs: RingValue,
        rhs: RingValue,
    ) -> Self {
        let verdict = lhs == rhs;
        CondensationReport {
            theorem,
            n,
            ring: lhs.ring().to_string(),
            map,
            lhs,
            rhs,
            verdict,
        }
    }

    pub fn to_json(&self, case: usize) -> serde_json::Value {
        json!({
            "case": case,
            "theorem": self.theorem.name(),
            "n": self.n,
            "ring": self.ring,
            "f": self.map.as_ref().map(ToString::to_string),
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "verdict": self.verdict,
        })
    }
}

/// `<theorem> n=<n> f=<images or -> ok|FAIL`
impl fmt::Display for CondensationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let map = self
            .map
            .as_ref()
            .map_or_else(|| "-".to_string(), ToString::to_string);
        let verdict = if self.verdict { "ok" } else { "FAIL" };
        write!(f, "{} n={} f={} {}", self.theorem, self.n, map, verdict)
    }
}

/// `det(condensed) = a_{n,n}^(n-2) det A`.
pub fn verify_chio(a: &Matrix) -> Result<CondensationReport> {
    let (condensed, factor) = a.chio_condense()?;
    let lhs = condensed.leibniz_det()?;
    let rhs = factor.mul(&a.leibniz_det()?)?;
    Ok(CondensationReport::new(
        Theorem::Chio,
        a.rows(),
        None,
        lhs,
        rhs,
    ))
}

/// `det B = 0` for non-n-potent `f`, `det B = abut_f(A) det A` otherwise.
/// `n = 1` is rejected: the n-potent branch is only stated for `n >= 2`.
pub fn verify_chio_gen(f: &EndoMap, a: &Matrix) -> Result<CondensationReport> {
    let n = require_size("verify_chio_gen", f, a)?;
    if n < 2 {
        return Err(Error::Precondition(
            "chio-gen is verified for n >= 2".into(),
        ));
    }
    let lhs = build_condensed_b(f, a)?.leibniz_det()?;
    let rhs = if f.is_n_potent()? {
        abut_of(f, a)?.mul(&a.leibniz_det()?)?
    } else {
        a.ring().zero()
    };
    Ok(CondensationReport::new(
        Theorem::ChioGen,
        n,
        Some(f.clone()),
        lhs,
        rhs,
    ))
}

/// Precomputes the n-potent maps so repeated supergen checks at one size do
/// not re-enumerate them.
pub struct SupergenChecker {
    n: usize,
    maps: Vec<EndoMap>,
}

impl SupergenChecker {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition("supergen requires n >= 2".into()));
        }
        let bound = crate::limits::max_n();
        if n > bound {
            return Err(Error::BoundExceeded { n, bound });
        }
        Ok(SupergenChecker {
            n,
            maps: enumerate_n_potent(n).collect(),
        })
    }

    /// `sum_f weight_f(B) abut_f(A)` over n-potent `f`.
    pub fn coefficient(&self, a: &Matrix, b: &Matrix) -> Result<RingValue> {
        self.maps.iter().try_fold(a.ring().zero(), |acc, f| {
            acc.add(&weight_of(f, b)?.mul(&abut_of(f, a)?)?)
        })
    }

    /// `det G = (sum_f weight_f(B) abut_f(A)) det A`.
    pub fn verify(&self, a: &Matrix, b: &Matrix) -> Result<CondensationReport> {
        if a.rows() != self.n {
            return Err(Error::DimensionMismatch {
                op: "verify_supergen",
                detail: format!(
                    "checker built for n={}, got {}x{}",
                    self.n,
                    a.rows(),
                    a.cols()
                ),
            });
        }
        let lhs = build_g(a, b)?.leibniz_det()?;
        let rhs = self.coefficient(a, b)?.mul(&a.leibniz_det()?)?;
        Ok(CondensationReport::new(
            Theorem::Supergen,
            self.n,
            None,
            lhs,
            rhs,
        ))
    }
}

pub fn verify_supergen(a: &Matrix, b: &Matrix) -> Result<CondensationReport> {
    SupergenChecker::new(a.rows())?.verify(a, b)
}
