//! Frobenius structures: the ternary tensor, the associativity check for
//! bilinear forms, the solver for the full space of associative forms, the
//! nondegenerate-witness search, and the trace necessary condition.
//!
//! A bilinear form `u` is associative for an algebra when
//! `sum_e Y_ij^e u_ek = sum_e u_ie Y_jk^e` for all `i, j, k`. A Frobenius
//! structure is an associative form that is also invertible. The trace test
//! below is a necessary condition expressed through the algebra alone: with
//! an invertible associative form, left multiplication is similar to the
//! transpose of right multiplication, so all mixed traces
//! `tr(L_{b_i1} ... L_{b_ik})` and `tr(R_{b_ik} ... R_{b_i1})` must agree.

use crate::algebra::{AlgebraDescriptor, Side};
use crate::detrand::DetRng;
use crate::error::Error;
use crate::linalg::{Matrix, Rational};
use num_traits::Zero;

/// A bilinear form on the algebra, stored as the square matrix of its values
/// on basis pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: Matrix,
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Result<Self, Error> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "bilinear form must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(BilinearForm { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        self.matrix.get(i, j)
    }
}

/// An associative form together with its verified inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusPair {
    form: BilinearForm,
    inverse_form: Matrix,
}

impl FrobeniusPair {
    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn inverse_form(&self) -> &Matrix {
        &self.inverse_form
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }
}

/// Inverts a form and double-checks both products against the identity.
pub fn invert_form(form: &BilinearForm) -> Result<FrobeniusPair, Error> {
    let inverse = form.matrix().inverse()?;
    let n = form.dim();
    let id = Matrix::identity(n);
    assert_eq!(form.matrix().mul(&inverse).unwrap(), id);
    assert_eq!(inverse.mul(form.matrix()).unwrap(), id);
    Ok(FrobeniusPair {
        form: form.clone(),
        inverse_form: inverse,
    })
}

pub fn is_nondegenerate(form: &BilinearForm) -> bool {
    !form.matrix().det().expect("square").is_zero()
}

/// The fully covariant tensor `T_ijk = sum_e Y_ij^e u_ek`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryTensor {
    n: usize,
    t: Vec<Rational>,
}

impl TernaryTensor {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.t[(i * self.n + j) * self.n + k]
    }

    /// Raises the third slot with the inverse form:
    /// `Y_ij^e = sum_k T_ijk inv_ke`.
    pub fn contract_third(&self, inverse_form: &Matrix) -> crate::algebra::StructureCube {
        let n = self.n;
        assert_eq!(inverse_form.rows(), n);
        assert_eq!(inverse_form.cols(), n);
        crate::algebra::StructureCube::from_fn(n, |i, j, e| {
            (0..n).fold(Rational::zero(), |acc, k| {
                acc + self.get(i, j, k) * inverse_form.get(k, e)
            })
        })
    }
}

/// Lowers the third index of the multiplication tensor with the form.
pub fn ternary_tensor(
    alg: &AlgebraDescriptor,
    form: &BilinearForm,
) -> Result<TernaryTensor, Error> {
    let n = alg.dim();
    if form.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "form of dim {} on algebra of dim {n}",
            form.dim()
        )));
    }
    let mut t = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let row = alg.cube().product_row(i, j);
            for k in 0..n {
                let mut acc = Rational::zero();
                for (e, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        acc += c * form.entry(e, k);
                    }
                }
                t.push(acc);
            }
        }
    }
    Ok(TernaryTensor { n, t })
}

/// Componentwise associativity identity for the form. Nondegeneracy is a
/// separate question answered by `is_nondegenerate`.
pub fn frobenius_check(alg: &AlgebraDescriptor, form: &BilinearForm) -> bool {
    let n = alg.dim();
    assert_eq!(form.dim(), n, "frobenius_check dimension mismatch");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = alg
                    .cube()
                    .product_row(i, j)
                    .iter()
                    .enumerate()
                    .fold(Rational::zero(), |acc, (e, c)| acc + c * form.entry(e, k));
                let rhs = alg
                    .cube()
                    .product_row(j, k)
                    .iter()
                    .enumerate()
                    .fold(Rational::zero(), |acc, (e, c)| acc + form.entry(i, e) * c);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// The solution space of the associativity constraints, as a list of basis
/// forms in deterministic echelon order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSpace {
    basis: Vec<BilinearForm>,
}

impl FormSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BilinearForm] {
        &self.basis
    }

    pub fn algebra_dim(&self) -> usize {
        self.basis.first().map_or(0, BilinearForm::dim)
    }

    /// Evaluates `sum c_i B_i`.
    pub fn combine(&self, coefficients: &[Rational]) -> BilinearForm {
        assert_eq!(coefficients.len(), self.basis.len());
        let n = self.algebra_dim();
        let mut m = Matrix::zeros(n, n);
        for (c, b) in coefficients.iter().zip(&self.basis) {
            if !c.is_zero() {
                m = m.add(&b.matrix().scale(c)).expect("same shape");
            }
        }
        BilinearForm { matrix: m }
    }

    /// Whether `form` lies in the span of the basis.
    pub fn contains(&self, form: &BilinearForm) -> bool {
        let n = form.dim();
        let cols = self.basis.len();
        if cols == 0 {
            return form.matrix().is_zero();
        }
        let system = Matrix::from_fn(n * n, cols, |r, c| {
            self.basis[c].matrix().get(r / n, r % n).clone()
        });
        let rhs: Vec<Rational> = (0..n * n)
            .map(|r| form.matrix().get(r / n, r % n).clone())
            .collect();
        matches!(system.solve_affine(&rhs), Ok(Some(_)))
    }
}

/// Solves the linear system of all associativity constraints, treating the
/// form's `n^2` entries as unknowns.
pub fn associative_form_space(alg: &AlgebraDescriptor) -> FormSpace {
    let n = alg.dim();
    // Unknown u_{ek} lives at flat column e*n + k.
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                for (e, c) in alg.cube().product_row(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        row[e * n + k] += c;
                    }
                }
                for (e, c) in alg.cube().product_row(j, k).iter().enumerate() {
                    if !c.is_zero() {
                        row[i * n + e] -= c;
                    }
                }
                rows.push(row);
            }
        }
    }
    let constraints = Matrix::from_rows(rows).expect("rectangular");
    let basis = constraints
        .kernel_basis()
        .into_iter()
        .map(|v| BilinearForm {
            matrix: Matrix::from_fn(n, n, |e, k| v[e * n + k].clone()),
        })
        .collect();
    FormSpace { basis }
}

/// Search parameters for `nondegenerate_witness`.
#[derive(Debug, Clone, Copy)]
pub struct WitnessSearchParams {
    /// Grid coefficients range over `-radius..=radius`.
    pub grid_radius: i64,
    /// Hard cap on enumerated grid points.
    pub grid_cap: usize,
    /// Seeded random rational trials after the grid.
    pub random_trials: usize,
    pub seed: u64,
}

impl Default for WitnessSearchParams {
    fn default() -> Self {
        WitnessSearchParams {
            grid_radius: 3,
            grid_cap: 100_000,
            random_trials: 200,
            seed: 0x5EED_CAFE,
        }
    }
}

/// Outcome of the witness search over a form space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome {
    /// A member with nonzero determinant, with its verified inverse and the
    /// coefficients that produced it.
    Found {
        pair: FrobeniusPair,
        coefficients: Vec<Rational>,
    },
    /// The space is zero, so no nondegenerate member exists.
    NoneDefinitive,
    /// Nothing found within the search budget; existence stays open.
    Inconclusive {
        grid_points: usize,
        random_trials: usize,
    },
}

/// Searches the span of the space for a form with nonzero determinant:
/// first a deterministic integer grid ordered by increasing L1 norm, then
/// seeded random rational trials.
pub fn nondegenerate_witness(space: &FormSpace) -> WitnessOutcome {
    nondegenerate_witness_with(space, WitnessSearchParams::default())
}

pub fn nondegenerate_witness_with(
    space: &FormSpace,
    params: WitnessSearchParams,
) -> WitnessOutcome {
    let d = space.dim();
    if d == 0 {
        return WitnessOutcome::NoneDefinitive;
    }
    let grid = grid_points(d, params.grid_radius, params.grid_cap);
    let tried = grid.len();
    for point in grid {
        let coefficients: Vec<Rational> = point.iter().map(|&c| crate::linalg::rat(c)).collect();
        let candidate = space.combine(&coefficients);
        if is_nondegenerate(&candidate) {
            let pair = invert_form(&candidate).expect("nonzero determinant");
            return WitnessOutcome::Found { pair, coefficients };
        }
    }
    let mut rng = DetRng::new(params.seed);
    for _ in 0..params.random_trials {
        let coefficients: Vec<Rational> = (0..d).map(|_| rng.next_rational(9, 9)).collect();
        let candidate = space.combine(&coefficients);
        if is_nondegenerate(&candidate) {
            let pair = invert_form(&candidate).expect("nonzero determinant");
            return WitnessOutcome::Found { pair, coefficients };
        }
    }
    WitnessOutcome::Inconclusive {
        grid_points: tried,
        random_trials: params.random_trials,
    }
}

/// Integer tuples in `{-radius..radius}^d`, ordered by increasing L1 norm
/// with positive entries preferred, so sparse simple combinations are tried
/// first. Falls back to tuples with at most two nonzero entries when the
/// full grid would exceed the cap.
fn grid_points(d: usize, radius: i64, cap: usize) -> Vec<Vec<i64>> {
    let width = (2 * radius + 1) as u128;
    let mut points: Vec<Vec<i64>> = Vec::new();
    match width.checked_pow(d as u32) {
        Some(size) if size <= cap as u128 => {
            let mut current = vec![-radius; d];
            for _ in 0..size {
                points.push(current.clone());
                for pos in (0..d).rev() {
                    if current[pos] < radius {
                        current[pos] += 1;
                        for v in current[pos + 1..].iter_mut() {
                            *v = -radius;
                        }
                        break;
                    }
                }
            }
        }
        _ => {
            points.push(vec![0; d]);
            for i in 0..d {
                for v in 1..=radius {
                    for s in [v, -v] {
                        let mut p = vec![0; d];
                        p[i] = s;
                        points.push(p);
                    }
                }
            }
            'pairs: for i in 0..d {
                for j in i + 1..d {
                    for vi in -radius..=radius {
                        if vi == 0 {
                            continue;
                        }
                        for vj in -radius..=radius {
                            if vj == 0 {
                                continue;
                            }
                            let mut p = vec![0; d];
                            p[i] = vi;
                            p[j] = vj;
                            points.push(p);
                            if points.len() >= cap {
                                break 'pairs;
                            }
                        }
                    }
                }
            }
        }
    }
    points.sort_by_key(|p| {
        let norm: i64 = p.iter().map(|v| v.abs()).sum();
        let tie: Vec<i64> = p.iter().map(|&v| v.abs() * 2 + i64::from(v < 0)).collect();
        (norm, tie, p.clone())
    });
    points.dedup();
    points.truncate(cap);
    points
}

/// Witness for a failed trace comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceWitness {
    pub power: usize,
    /// Basis indices `i1..ik` of the failing tuple.
    pub tuple: Vec<usize>,
    pub left_trace: Rational,
    pub right_trace: Rational,
}

/// Result of the mixed-trace necessary condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceVerdict {
    pub passed: bool,
    pub max_power_checked: usize,
    pub witness: Option<TraceWitness>,
}

/// `tr(a b)` without forming the product matrix.
fn trace_of_product(a: &Matrix, b: &Matrix) -> Rational {
    let n = a.rows();
    let mut acc = Rational::zero();
    for r in 0..n {
        for c in 0..n {
            let x = a.get(r, c);
            if !x.is_zero() {
                acc += x * b.get(c, r);
            }
        }
    }
    acc
}

/// Checks `tr(L_{b_i1} ... L_{b_ik}) = tr(R_{b_ik} ... R_{b_i1})` for every
/// basis tuple of every length up to `max_power`, failing fast with the
/// first counterexample in (power, lexicographic tuple) order.
///
/// The prefix `i1..i(k-1)` products are shared across the innermost index.
pub fn trace_condition(alg: &AlgebraDescriptor, max_power: usize) -> TraceVerdict {
    assert!(max_power >= 1, "max_power must be at least 1");
    let n = alg.dim();
    let left: Vec<Matrix> = (0..n)
        .map(|i| alg.regular_rep(&alg.basis_element(i), Side::Left).matrix)
        .collect();
    let right: Vec<Matrix> = (0..n)
        .map(|i| alg.regular_rep(&alg.basis_element(i), Side::Right).matrix)
        .collect();
    for power in 1..=max_power {
        let mut prefix = vec![0usize; power - 1];
        loop {
            // lpre = L_{i1} ... L_{i(k-1)}, rpre = R_{i(k-1)} ... R_{i1}.
            let mut lpre = Matrix::identity(n);
            let mut rpre = Matrix::identity(n);
            for &idx in &prefix {
                lpre = lpre.mul(&left[idx]).expect("square");
                rpre = right[idx].mul(&rpre).expect("square");
            }
            for last in 0..n {
                let left_trace = trace_of_product(&lpre, &left[last]);
                let right_trace = trace_of_product(&right[last], &rpre);
                if left_trace != right_trace {
                    let mut tuple = prefix.clone();
                    tuple.push(last);
                    return TraceVerdict {
                        passed: false,
                        max_power_checked: max_power,
                        witness: Some(TraceWitness {
                            power,
                            tuple,
                            left_trace,
                            right_trace,
                        }),
                    };
                }
            }
            if prefix.is_empty() {
                break;
            }
            // Advance the prefix odometer.
            let mut pos = prefix.len();
            while pos > 0 {
                pos -= 1;
                prefix[pos] += 1;
                if prefix[pos] < n {
                    break;
                }
                prefix[pos] = 0;
            }
            if prefix.iter().all(|&v| v == 0) {
                break;
            }
        }
    }
    TraceVerdict {
        passed: true,
        max_power_checked: max_power,
        witness: None,
    }
}
