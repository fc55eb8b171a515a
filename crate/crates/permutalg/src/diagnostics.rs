//! Nonassociativity diagnostics: associators, nuclei, flexibility, cube
//! association, identity elements, the square-to-scalar quadratic form, and
//! the unitalization isotope.
//!
//! Flexibility `(a,b,a) = 0` and cube association `(a,a,a) = 0` are decided
//! through polarized identities on the associator tensor, which is valid in
//! characteristic zero, so no quantification over elements is needed.

use crate::algebra::{AlgebraDescriptor, Element, LinearMap, Side};
use crate::error::Error;
use crate::linalg::{Matrix, Rational};
use num_traits::{One, Zero};

/// Dense tensor of basis associators:
/// `a[i][j][k][m] = sum_e (Y_ij^e Y_ek^m - Y_jk^e Y_ie^m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatorTensor {
    n: usize,
    a: Vec<Rational>,
}

impl AssociatorTensor {
    pub fn from_algebra(alg: &AlgebraDescriptor) -> Self {
        let n = alg.dim();
        let mut a = Vec::with_capacity(n * n * n * n);
        for i in 0..n {
            for j in 0..n {
                let ij = alg.cube().product_row(i, j);
                for k in 0..n {
                    let jk = alg.cube().product_row(j, k);
                    for m in 0..n {
                        let mut acc = Rational::zero();
                        for e in 0..n {
                            if !ij[e].is_zero() {
                                acc += &ij[e] * alg.cube().get(e, k, m);
                            }
                            if !jk[e].is_zero() {
                                acc -= &jk[e] * alg.cube().get(i, e, m);
                            }
                        }
                        a.push(acc);
                    }
                }
            }
        }
        AssociatorTensor { n, a }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize, m: usize) -> &Rational {
        &self.a[((i * self.n + j) * self.n + k) * self.n + m]
    }

    /// Coordinates of the associator of basis elements `(b_i, b_j, b_k)`.
    pub fn basis_associator(&self, i: usize, j: usize, k: usize) -> Element {
        Element::from_coords((0..self.n).map(|m| self.get(i, j, k, m).clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }
}

/// The associator `(ab)c - a(bc)`.
pub fn associator(a: &Element, b: &Element, c: &Element, alg: &AlgebraDescriptor) -> Element {
    let ab_c = alg
        .multiply(&alg.multiply(a, b).expect("dims"), c)
        .expect("dims");
    let a_bc = alg
        .multiply(a, &alg.multiply(b, c).expect("dims"))
        .expect("dims");
    ab_c.sub(&a_bc)
}

pub fn is_associative(alg: &AlgebraDescriptor) -> bool {
    AssociatorTensor::from_algebra(alg).is_zero()
}

/// Bases of the three one-sided nuclei and of their intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NucleusBases {
    pub left: Vec<Element>,
    pub middle: Vec<Element>,
    pub right: Vec<Element>,
    pub nucleus: Vec<Element>,
}

/// Computes each nucleus as the kernel of the associator tensor contracted
/// against the corresponding slot; the intersection stacks all three
/// constraint blocks into one kernel computation.
pub fn nuclei(alg: &AlgebraDescriptor) -> NucleusBases {
    let n = alg.dim();
    let tensor = AssociatorTensor::from_algebra(alg);
    // Constraint matrix for slot `s`: rows indexed by the other two slots
    // plus the output index, columns by the element coordinate.
    let slot_matrix = |slot: usize| -> Matrix {
        Matrix::from_fn(n * n * n, n, |row, col| {
            let m = row % n;
            let b = (row / n) % n;
            let a = row / (n * n);
            let (i, j, k) = match slot {
                0 => (col, a, b),
                1 => (a, col, b),
                _ => (a, b, col),
            };
            tensor.get(i, j, k, m).clone()
        })
    };
    let left_m = slot_matrix(0);
    let middle_m = slot_matrix(1);
    let right_m = slot_matrix(2);
    let as_elements = |vs: Vec<Vec<Rational>>| -> Vec<Element> {
        vs.into_iter().map(Element::from_coords).collect()
    };
    let stacked = Matrix::from_fn(3 * n * n * n, n, |row, col| {
        let block = row / (n * n * n);
        let inner = row % (n * n * n);
        match block {
            0 => left_m.get(inner, col).clone(),
            1 => middle_m.get(inner, col).clone(),
            _ => right_m.get(inner, col).clone(),
        }
    });
    NucleusBases {
        left: as_elements(left_m.kernel_basis()),
        middle: as_elements(middle_m.kernel_basis()),
        right: as_elements(right_m.kernel_basis()),
        nucleus: as_elements(stacked.kernel_basis()),
    }
}

/// Verdict for a polarized identity, with the first violating basis triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub holds: bool,
    pub witness: Option<AssociatorWitness>,
}

/// A basis index triple violating the identity, together with the nonzero
/// associator combination observed there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatorWitness {
    pub triple: [usize; 3],
    pub value: Element,
}

/// Flexible law `(a,b,a) = 0`, polarized to
/// `a[i][j][k] + a[k][j][i] = 0` for all index triples.
pub fn is_flexible(alg: &AlgebraDescriptor) -> PropertyVerdict {
    let n = alg.dim();
    let tensor = AssociatorTensor::from_algebra(alg);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let sum = tensor
                    .basis_associator(i, j, k)
                    .add(&tensor.basis_associator(k, j, i));
                if !sum.is_zero() {
                    return PropertyVerdict {
                        holds: false,
                        witness: Some(AssociatorWitness {
                            triple: [i, j, k],
                            value: sum,
                        }),
                    };
                }
            }
        }
    }
    PropertyVerdict {
        holds: true,
        witness: None,
    }
}

/// Cube association `(a,a,a) = 0`, polarized to the vanishing of every
/// symmetrized coefficient of the cubic map.
///
/// Diagonal triples are inspected first so a failing basis cube `(b,b,b)`
/// is reported in preference to a mixed combination.
pub fn cubes_associate(alg: &AlgebraDescriptor) -> PropertyVerdict {
    let n = alg.dim();
    let tensor = AssociatorTensor::from_algebra(alg);
    let class_sum = |i: usize, j: usize, k: usize| -> Element {
        let mut arrangements: Vec<[usize; 3]> = vec![
            [i, j, k],
            [i, k, j],
            [j, i, k],
            [j, k, i],
            [k, i, j],
            [k, j, i],
        ];
        arrangements.sort();
        arrangements.dedup();
        arrangements
            .into_iter()
            .fold(Element::zero(n), |acc, [a, b, c]| {
                acc.add(&tensor.basis_associator(a, b, c))
            })
    };
    for i in 0..n {
        let sum = class_sum(i, i, i);
        if !sum.is_zero() {
            return PropertyVerdict {
                holds: false,
                witness: Some(AssociatorWitness {
                    triple: [i, i, i],
                    value: sum,
                }),
            };
        }
    }
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                if i == j && j == k {
                    continue;
                }
                let sum = class_sum(i, j, k);
                if !sum.is_zero() {
                    return PropertyVerdict {
                        holds: false,
                        witness: Some(AssociatorWitness {
                            triple: [i, j, k],
                            value: sum,
                        }),
                    };
                }
            }
        }
    }
    PropertyVerdict {
        holds: true,
        witness: None,
    }
}

/// Affine solution set of one-sided identity elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySolutions {
    pub particular: Element,
    pub kernel: Vec<Element>,
}

/// One-sided and two-sided identity elements of an algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub left: Option<IdentitySolutions>,
    pub right: Option<IdentitySolutions>,
    pub two_sided: Option<Element>,
}

/// Solves the linear systems for left identities (`e * b_j = b_j`) and right
/// identities (`b_i * e = b_i`), and intersects them for a two-sided one.
pub fn find_identities(alg: &AlgebraDescriptor) -> IdentityReport {
    let n = alg.dim();
    // Left: rows (j, k), columns i, entry Y_ij^k; rhs delta_jk.
    let left_matrix = Matrix::from_fn(n * n, n, |row, i| {
        let j = row / n;
        let k = row % n;
        alg.cube().get(i, j, k).clone()
    });
    // Right: rows (i, k), columns j, entry Y_ij^k; rhs delta_ik.
    let right_matrix = Matrix::from_fn(n * n, n, |row, j| {
        let i = row / n;
        let k = row % n;
        alg.cube().get(i, j, k).clone()
    });
    let delta: Vec<Rational> = (0..n * n)
        .map(|row| {
            if row / n == row % n {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let to_solutions = |m: &Matrix| -> Option<IdentitySolutions> {
        m.solve_affine(&delta)
            .expect("shapes agree")
            .map(|sol| IdentitySolutions {
                particular: Element::from_coords(sol.particular),
                kernel: sol.kernel.into_iter().map(Element::from_coords).collect(),
            })
    };
    let left = to_solutions(&left_matrix);
    let right = to_solutions(&right_matrix);
    let two_sided = if left.is_some() && right.is_some() {
        let stacked = Matrix::from_fn(2 * n * n, n, |row, col| {
            if row < n * n {
                left_matrix.get(row, col).clone()
            } else {
                right_matrix.get(row - n * n, col).clone()
            }
        });
        let rhs: Vec<Rational> = delta.iter().chain(delta.iter()).cloned().collect();
        stacked
            .solve_affine(&rhs)
            .expect("shapes agree")
            .map(|sol| Element::from_coords(sol.particular))
    } else {
        None
    };
    IdentityReport {
        left,
        right,
        two_sided,
    }
}

/// A center `e` and symmetric matrix `q` with `x x = q(x,x) e` identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareForm {
    pub center: Element,
    pub q: Matrix,
}

/// Looks for the square-to-scalar identity. The center candidate is chosen
/// deterministically from the identity report: two-sided if present, else
/// left, else right; without any identity the search fails.
pub fn square_form(alg: &AlgebraDescriptor) -> Option<SquareForm> {
    let n = alg.dim();
    let report = find_identities(alg);
    let center = report
        .two_sided
        .or(report.left.map(|s| s.particular))
        .or(report.right.map(|s| s.particular))?;
    let pivot = center.coords.iter().position(|c| !c.is_zero())?;
    let mut entries: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            // Symmetrized coefficient vector of x^i x^j in x*x.
            let sym: Vec<Rational> = (0..n)
                .map(|k| {
                    (alg.cube().get(i, j, k) + alg.cube().get(j, i, k))
                        / Rational::from_integer(2.into())
                })
                .collect();
            let coeff = &sym[pivot] / &center.coords[pivot];
            for (k, s) in sym.iter().enumerate() {
                if *s != &coeff * &center.coords[k] {
                    return None;
                }
            }
            row.push(coeff);
        }
        entries.push(row);
    }
    let q = Matrix::from_rows(entries).expect("rectangular");
    debug_assert!(q.is_symmetric());
    Some(SquareForm { center, q })
}

/// Unitalization isotope at `e`: the new product is
/// `a * b = (Rinv a) (Linv b)` with `L`, `R` the regular representations of
/// `e`. The point must be idempotent, since the new product's two-sided
/// identity is `e e`; the resulting identity is re-verified exactly.
pub fn unitalize(alg: &AlgebraDescriptor, e: &Element) -> Result<AlgebraDescriptor, Error> {
    let n = alg.dim();
    if e.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "element of dim {} in algebra of dim {n}",
            e.dim()
        )));
    }
    let l = alg.regular_rep(e, Side::Left).matrix;
    let r = alg.regular_rep(e, Side::Right).matrix;
    let r_inv = LinearMap::new(r.inverse()?)?;
    let l_inv = LinearMap::new(l.inverse()?)?;
    let ee = alg.multiply(e, e).expect("dims verified");
    if &ee != e {
        return Err(Error::UnitNotIdempotent);
    }
    let result = alg.isotope(&r_inv, &l_inv, &LinearMap::identity(n))?;
    // Post-condition: e is an exact two-sided identity of the new product.
    for j in 0..n {
        let b = result.basis_element(j);
        assert_eq!(result.multiply(e, &b).expect("dims"), b);
        assert_eq!(result.multiply(&b, e).expect("dims"), b);
    }
    Ok(result)
}
