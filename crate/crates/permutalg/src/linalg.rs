//! Exact rational scalars and dense matrices over the rationals.
//!
//! Entries are arbitrary-precision rationals kept in lowest terms with
//! positive denominators; elimination is plain Gaussian reduction over
//! exact fractions. Kernel bases are echelon normalized: every routine has
//! one canonical answer.

use crate::error::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Ground field element: an arbitrary-precision rational.
pub type Rational = BigRational;

/// Integer rational.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `n/d`; panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses the serialized rational grammar: optional `-`, digits, optionally
/// followed by `/` and digits. The denominator part must be nonzero. The
/// value is normalized to lowest terms with a positive denominator.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = |message: String| Error::Parse { line: 0, message };
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = |t: &str| -> bool {
        let t = t.strip_prefix('-').unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num_str) {
        return Err(bad(format!("malformed rational {s:?}")));
    }
    let numer: BigInt = num_str.parse().expect("validated digits");
    let denom: BigInt = match den_str {
        None => BigInt::one(),
        Some(d) => {
            if d.starts_with('-') || !digits(d) {
                return Err(bad(format!("malformed rational {s:?}")));
            }
            let d: BigInt = d.parse().expect("validated digits");
            if d.is_zero() {
                return Err(bad(format!("zero denominator in {s:?}")));
            }
            d
        }
    };
    Ok(BigRational::new(numer, denom))
}

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Full solution set of a consistent linear system: one particular solution
/// plus a basis of the homogeneous kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub kernel: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer-entry construction shorthand, mostly for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| rat(v)).collect())
            .collect();
        Matrix::from_rows(data).expect("rectangular literal")
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |r, c| {
            if r == c {
                entries[r].clone()
            } else {
                Rational::zero()
            }
        })
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

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    fn get_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, k: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let term = a * other.get(k, c);
                    *out.get_mut(r, c) += term;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product; the vector length must equal `cols`.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "apply length mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .map(|(a, x)| a * x)
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    pub fn trace(&self) -> Result<Rational, Error> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "trace of {}x{}",
                self.rows, self.cols
            )));
        }
        Ok((0..self.rows).fold(Rational::zero(), |acc, i| acc + self.get(i, i)))
    }

    /// Reduced row echelon form together with the pivot column positions.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    let a = m.get(src, c).clone();
                    let b = m.get(pivot_row, c).clone();
                    *m.get_mut(src, c) = b;
                    *m.get_mut(pivot_row, c) = a;
                }
            }
            let inv = m.get(pivot_row, col).recip();
            for c in col..m.cols {
                let v = m.get(pivot_row, c) * &inv;
                *m.get_mut(pivot_row, c) = v;
            }
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(pivot_row, c);
                    *m.get_mut(r, c) = v;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : m v = 0}`, echelon normalized:
    /// one vector per free column in increasing column order, each with a 1
    /// in its free position.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut pivot_of_col = vec![None; self.cols];
        for (row, col) in pivots.iter().copied().enumerate() {
            pivot_of_col[col] = Some(row);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, col) in pivots.iter().copied().enumerate() {
                v[col] = -r.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn det(&self) -> Result<Rational, Error> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(Rational::zero());
            };
            if src != col {
                det = -det;
                for c in 0..n {
                    let a = m.get(src, c).clone();
                    let b = m.get(col, c).clone();
                    *m.get_mut(src, c) = b;
                    *m.get_mut(col, c) = a;
                }
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) / &pivot;
                for c in col..n {
                    let v = m.get(r, c) - &factor * m.get(col, c);
                    *m.get_mut(r, c) = v;
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse; `Err(SingularMatrix)` when the determinant vanishes.
    pub fn inverse(&self) -> Result<Matrix, Error> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (reduced, pivots) = aug.rref();
        aug = reduced;
        if pivots.len() < n || pivots.iter().take(n).copied().ne(0..n) {
            return Err(Error::SingularMatrix);
        }
        Ok(Matrix::from_fn(n, n, |r, c| aug.get(r, n + c).clone()))
    }

    /// Solves `self * x = rhs` exactly.
    ///
    /// Returns `Ok(None)` for an inconsistent system, otherwise the full
    /// affine solution set (particular solution with free variables at zero,
    /// plus the kernel basis).
    pub fn solve_affine(&self, rhs: &[Rational]) -> Result<Option<AffineSolution>, Error> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} rows vs rhs length {}",
                self.rows,
                rhs.len()
            )));
        }
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs[r].clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut particular = vec![Rational::zero(); self.cols];
        for (row, col) in pivots.iter().copied().enumerate() {
            particular[col] = red.get(row, self.cols).clone();
        }
        Ok(Some(AffineSolution {
            particular,
            kernel: self.kernel_basis(),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_i64(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rational_strings_round_trip() {
        for s in ["0", "5", "-5", "3/4", "-3/4", "12345678901234567890/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        // Non-canonical input normalizes on parse.
        assert_eq!(parse_rational("6/4").unwrap().to_string(), "3/2");
        assert_eq!(parse_rational("-0").unwrap().to_string(), "0");
    }

    #[test]
    fn rational_grammar_is_strict() {
        for s in [
            "", "+3", "1/0", "1/-2", "1 /2", "a", "1.5", "3/", "/4", "--2",
        ] {
            assert!(parse_rational(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(Matrix::identity(2).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix_is_standard_basis() {
        let basis = Matrix::zeros(2, 2).kernel_basis();
        assert_eq!(basis, vec![vec_i64(&[1, 0]), vec_i64(&[0, 1])]);
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let m = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        // Oracle: m v = 0 exactly.
        assert!(m.apply(&basis[0]).iter().all(Zero::is_zero));
        // Spans (1, -1): components are negatives of each other.
        assert_eq!(basis[0][0], -basis[0][1].clone());
        assert!(!basis[0][0].is_zero());
    }

    #[test]
    fn kernel_count_matches_rank_deficiency() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        let rank = m.rank();
        assert_eq!(m.kernel_basis().len(), 3 - rank);
    }

    #[test]
    fn inverse_of_signature_matrix_is_itself() {
        let m = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        assert_eq!(m.inverse().unwrap(), m);
    }

    #[test]
    fn inverse_of_identity() {
        let id = Matrix::identity(3);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn inverse_of_swap_matrix() {
        let m = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, m);
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.inverse(), Err(Error::SingularMatrix));
        assert_eq!(m.det().unwrap(), rat(0));
    }

    #[test]
    fn trace_and_det_values() {
        assert_eq!(
            Matrix::from_i64(&[&[1, 0], &[0, -1]]).trace().unwrap(),
            rat(0)
        );
        assert_eq!(Matrix::identity(4).det().unwrap(), rat(1));
        let sig = Matrix::diagonal(&vec_i64(&[1, -1, -1, -1]));
        assert_eq!(sig.det().unwrap(), rat(-1));
        assert_eq!(sig.trace().unwrap(), rat(-2));
    }

    #[test]
    fn det_with_fractions() {
        let m =
            Matrix::from_rows(vec![vec![ratio(1, 2), rat(1)], vec![rat(1), ratio(1, 2)]]).unwrap();
        assert_eq!(m.det().unwrap(), ratio(-3, 4));
    }

    #[test]
    fn non_square_shapes_are_rejected() {
        let m = Matrix::zeros(2, 3);
        assert!(matches!(m.trace(), Err(Error::DimensionMismatch(_))));
        assert!(matches!(m.det(), Err(Error::DimensionMismatch(_))));
        assert!(matches!(m.inverse(), Err(Error::DimensionMismatch(_))));
        assert!(matches!(
            m.mul(&Matrix::zeros(2, 2)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn solve_affine_reports_full_solution_set() {
        // x + y = 2 has a line of solutions.
        let m = Matrix::from_i64(&[&[1, 1]]);
        let sol = m.solve_affine(&vec_i64(&[2])).unwrap().unwrap();
        assert_eq!(sol.particular, vec_i64(&[2, 0]));
        assert_eq!(sol.kernel.len(), 1);

        // Inconsistent system.
        let m = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.solve_affine(&vec_i64(&[0, 1])).unwrap(), None);

        // Unique solution.
        let m = Matrix::from_i64(&[&[2, 0], &[0, 4]]);
        let sol = m.solve_affine(&vec_i64(&[2, 2])).unwrap().unwrap();
        assert_eq!(sol.particular, vec![rat(1), ratio(1, 2)]);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn rref_pivots_are_deterministic() {
        let m = Matrix::from_i64(&[&[0, 2, 4], &[1, 1, 1]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r.row(0), &vec_i64(&[1, 0, -1])[..]);
        assert_eq!(r.row(1), &vec_i64(&[0, 1, 2])[..]);
    }
}
