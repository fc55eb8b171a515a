//! Structure-constant algebras: elements, multiplication, regular
//! representations, opposite algebras, isotopes, and basis changes.
//!
//! An algebra is a labeled basis together with a cube of structure constants
//! `c[i][j][k]`, meaning `b_i * b_j = sum_k c[i][j][k] b_k`. Multiplication
//! tables follow the convention that the cell at row `i`, column `j` holds
//! `b_i * b_j`.

use crate::error::Error;
use crate::linalg::{rat, Matrix, Rational};
use num_traits::{One, Zero};

/// Dense `n x n x n` cube of structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureCube {
    n: usize,
    c: Vec<Rational>,
}

impl StructureCube {
    pub fn zeros(n: usize) -> Self {
        StructureCube {
            n,
            c: vec![Rational::zero(); n * n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let mut c = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c.push(f(i, j, k));
                }
            }
        }
        StructureCube { n, c }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.n + j) * self.n + k]
    }

    /// Coefficients of `b_i * b_j` over the basis.
    pub fn product_row(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.n + j) * self.n;
        &self.c[start..start + self.n]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

/// A finite-dimensional algebra over the rationals, given by a named basis
/// and its structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDescriptor {
    name: String,
    basis_labels: Vec<String>,
    cube: StructureCube,
}

impl AlgebraDescriptor {
    pub fn new(
        name: impl Into<String>,
        basis_labels: Vec<String>,
        cube: StructureCube,
    ) -> Result<Self, Error> {
        let name = name.into();
        let n = basis_labels.len();
        if n == 0 {
            return Err(Error::InvalidDescriptor(
                "dimension must be at least 1".into(),
            ));
        }
        if cube.dim() != n {
            return Err(Error::InvalidDescriptor(format!(
                "cube dimension {} does not match {} basis labels",
                cube.dim(),
                n
            )));
        }
        if name.is_empty() || name.contains('\n') {
            return Err(Error::InvalidDescriptor(
                "name must be a nonempty single line".into(),
            ));
        }
        for label in &basis_labels {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(Error::InvalidDescriptor(format!(
                    "label {label:?} must be nonempty without whitespace"
                )));
            }
        }
        for (i, a) in basis_labels.iter().enumerate() {
            if basis_labels[..i].contains(a) {
                return Err(Error::InvalidDescriptor(format!("duplicate label {a:?}")));
            }
        }
        Ok(AlgebraDescriptor {
            name,
            basis_labels,
            cube,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis_labels[i]
    }

    pub fn cube(&self) -> &StructureCube {
        &self.cube
    }

    /// Same labels and name, different constants.
    pub fn with_cube(&self, cube: StructureCube) -> AlgebraDescriptor {
        assert_eq!(cube.dim(), self.dim());
        AlgebraDescriptor {
            name: self.name.clone(),
            basis_labels: self.basis_labels.clone(),
            cube,
        }
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.dim(), i)
    }

    /// Bilinear product through the structure constants.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, Error> {
        let n = self.dim();
        if a.dim() != n || b.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "elements of dim {} and {} in algebra of dim {}",
                a.dim(),
                b.dim(),
                n
            )));
        }
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if a.coords[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b.coords[j].is_zero() {
                    continue;
                }
                let scale = &a.coords[i] * &b.coords[j];
                for (k, c) in self.cube.product_row(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &scale * c;
                    }
                }
            }
        }
        Ok(Element::from_coords(out))
    }

    /// Matrix of left or right multiplication by `x`; column `j` holds the
    /// coordinates of the product with basis element `j`.
    pub fn regular_rep(&self, x: &Element, side: Side) -> MultiplicationOperator {
        let n = self.dim();
        assert_eq!(x.dim(), n, "regular_rep dimension mismatch");
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let bj = self.basis_element(j);
            let prod = match side {
                Side::Left => self.multiply(x, &bj),
                Side::Right => self.multiply(&bj, x),
            }
            .expect("dimensions verified");
            cols.push(prod);
        }
        MultiplicationOperator {
            side,
            by: x.clone(),
            matrix: Matrix::from_fn(n, n, |r, c| cols[c].coords[r].clone()),
        }
    }

    /// The opposite algebra: constants with the two lower indices swapped.
    pub fn opposite(&self) -> AlgebraDescriptor {
        let n = self.dim();
        self.with_cube(StructureCube::from_fn(n, |i, j, k| {
            self.cube.get(j, i, k).clone()
        }))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..i).all(|j| (0..n).all(|k| self.cube.get(i, j, k) == self.cube.get(j, i, k)))
        })
    }

    /// Isotope with product `a o b = Hinv (F a * G b)`.
    pub fn isotope(
        &self,
        f: &LinearMap,
        g: &LinearMap,
        h: &LinearMap,
    ) -> Result<AlgebraDescriptor, Error> {
        let n = self.dim();
        for (map, role) in [(f, "F"), (g, "G"), (h, "H")] {
            if map.dim() != n {
                return Err(Error::DimensionMismatch(format!(
                    "{role} is {}x{} for algebra of dim {n}",
                    map.matrix().rows(),
                    map.matrix().cols()
                )));
            }
        }
        let h_inv = h.matrix().inverse()?;
        // F and G must be invertible as well, even though only applied forward.
        f.matrix().inverse()?;
        g.matrix().inverse()?;
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n * n);
        for i in 0..n {
            let fa = Element::from_coords(f.matrix().apply(&Element::basis(n, i).coords));
            for j in 0..n {
                let gb = Element::from_coords(g.matrix().apply(&Element::basis(n, j).coords));
                let prod = self.multiply(&fa, &gb)?;
                rows.push(h_inv.apply(&prod.coords));
            }
        }
        let cube = StructureCube::from_fn(n, |i, j, k| rows[i * n + j][k].clone());
        Ok(self.with_cube(cube))
    }

    /// Change of basis along `p`: column `j` of `p` holds the old-basis
    /// coordinates of the new basis vector `j`. An isomorphism of algebras.
    pub fn change_basis(&self, p: &LinearMap) -> Result<AlgebraDescriptor, Error> {
        self.isotope(p, p, p)
    }
}

/// An element expressed in coordinates over the algebra basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub coords: Vec<Rational>,
}

impl Element {
    pub fn from_coords(coords: Vec<Rational>) -> Self {
        Element { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Element {
            coords: coords.iter().map(|&v| rat(v)).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Element {
            coords: vec![Rational::zero(); n],
        }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut e = Element::zero(n);
        e.coords[i] = Rational::one();
        e
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.dim(), other.dim());
        Element {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        assert_eq!(self.dim(), other.dim());
        Element {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Element {
        Element {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub fn neg(&self) -> Element {
        Element {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

/// Which regular representation a multiplication operator encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Matrix of multiplication by a fixed element on one side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationOperator {
    pub side: Side,
    pub by: Element,
    pub matrix: Matrix,
}

/// A square matrix acting on coordinate vectors, used for isotopies and
/// basis changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Result<Self, Error> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "linear map must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(LinearMap { matrix })
    }

    pub fn identity(n: usize) -> Self {
        LinearMap {
            matrix: Matrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, e: &Element) -> Element {
        Element::from_coords(self.matrix.apply(&e.coords))
    }
}
