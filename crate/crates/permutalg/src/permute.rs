//! Permutations of the three index slots of a structure-constant cube, under
//! two explicit conventions.
//!
//! The slot action is fixed once for everything in this module: for a
//! permutation `s` of `{1,2,3}` and a cube `A`,
//!
//! ```text
//! (s A)(i1, i2, i3) = A(i_{s(1)}, i_{s(2)}, i_{s(3)})
//! ```
//!
//! * `RawCube` applies this action directly to the constants `Y_ij^k`,
//!   read as the cube `A(i,j,k) = Y_ij^k`.
//! * `Tensorial` lowers the third slot with an associative invertible form
//!   (`T = Y o u`), permutes the fully covariant tensor, and raises the
//!   third slot back with the inverse form.
//!
//! The two conventions genuinely differ: with the slot action above the
//! iterated action satisfies `(A^s)^t = A^(t o s)`, a right action, and the
//! pairing of each permuted cube with its opposite is the involution
//! `s -> (12) o s`.

use crate::algebra::{AlgebraDescriptor, StructureCube};
use crate::error::Error;
use crate::frobenius::{frobenius_check, FrobeniusPair, TernaryTensor};
use crate::linalg::Rational;
use num_traits::Zero;
use std::fmt;

/// A permutation of the three tensor slots, named in cycle notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum S3 {
    Id,
    Swap12,
    Swap13,
    Swap23,
    Cycle123,
    Cycle132,
}

impl S3 {
    /// All six permutations in canonical order.
    pub const ALL: [S3; 6] = [
        S3::Id,
        S3::Swap12,
        S3::Swap13,
        S3::Swap23,
        S3::Cycle123,
        S3::Cycle132,
    ];

    /// Images `(s(1), s(2), s(3))` as 0-based slot indices.
    pub fn images(self) -> [usize; 3] {
        match self {
            S3::Id => [0, 1, 2],
            S3::Swap12 => [1, 0, 2],
            S3::Swap13 => [2, 1, 0],
            S3::Swap23 => [0, 2, 1],
            // (123) sends 1 -> 2 -> 3 -> 1.
            S3::Cycle123 => [1, 2, 0],
            // (132) sends 1 -> 3 -> 2 -> 1.
            S3::Cycle132 => [2, 0, 1],
        }
    }

    fn from_images(images: [usize; 3]) -> S3 {
        *S3::ALL
            .iter()
            .find(|s| s.images() == images)
            .expect("valid permutation images")
    }

    /// Function composition `(self o other)(x) = self(other(x))`.
    pub fn compose(self, other: S3) -> S3 {
        let a = self.images();
        let b = other.images();
        S3::from_images([a[b[0]], a[b[1]], a[b[2]]])
    }

    pub fn inverse(self) -> S3 {
        let imgs = self.images();
        let mut inv = [0usize; 3];
        for (x, &y) in imgs.iter().enumerate() {
            inv[y] = x;
        }
        S3::from_images(inv)
    }

    pub fn is_transposition(self) -> bool {
        matches!(self, S3::Swap12 | S3::Swap13 | S3::Swap23)
    }

    pub fn name(self) -> &'static str {
        match self {
            S3::Id => "id",
            S3::Swap12 => "(12)",
            S3::Swap13 => "(13)",
            S3::Swap23 => "(23)",
            S3::Cycle123 => "(123)",
            S3::Cycle132 => "(132)",
        }
    }

    pub fn parse(s: &str) -> Result<S3, Error> {
        S3::ALL
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: format!(
                    "unknown permutation {s:?}; expected id, (12), (13), (23), (123) or (132)"
                ),
            })
    }
}

impl fmt::Display for S3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which object the slot permutation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    RawCube,
    Tensorial,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::RawCube => "raw",
            Convention::Tensorial => "tensor",
        }
    }

    pub fn parse(s: &str) -> Result<Convention, Error> {
        match s {
            "raw" => Ok(Convention::RawCube),
            "tensor" => Ok(Convention::Tensorial),
            _ => Err(Error::Parse {
                line: 0,
                message: format!("unknown convention {s:?}; expected raw or tensor"),
            }),
        }
    }
}

fn permute_cube_slots(
    n: usize,
    sigma: S3,
    value: impl Fn(usize, usize, usize) -> Rational,
) -> StructureCube {
    let imgs = sigma.images();
    StructureCube::from_fn(n, |i, j, k| {
        let idx = [i, j, k];
        value(idx[imgs[0]], idx[imgs[1]], idx[imgs[2]])
    })
}

/// Permutes the raw cube of structure constants; basis labels are kept.
pub fn permute_raw(alg: &AlgebraDescriptor, sigma: S3) -> AlgebraDescriptor {
    let cube = permute_cube_slots(alg.dim(), sigma, |a, b, c| alg.cube().get(a, b, c).clone());
    alg.with_cube(cube)
}

/// Permutes the fully covariant tensor `T = Y o u` and raises the third slot
/// with the inverse form. Requires the pair to pass the associativity check
/// for this algebra.
pub fn permute_tensorial(
    alg: &AlgebraDescriptor,
    pair: &FrobeniusPair,
    sigma: S3,
) -> Result<AlgebraDescriptor, Error> {
    if pair.dim() != alg.dim() {
        return Err(Error::DimensionMismatch(format!(
            "pair of dim {} on algebra of dim {}",
            pair.dim(),
            alg.dim()
        )));
    }
    if !frobenius_check(alg, pair.form()) {
        return Err(Error::UnverifiedPair);
    }
    let t = crate::frobenius::ternary_tensor(alg, pair.form())?;
    Ok(permute_tensor_and_raise(alg, &t, pair, sigma))
}

fn permute_tensor_and_raise(
    alg: &AlgebraDescriptor,
    t: &TernaryTensor,
    pair: &FrobeniusPair,
    sigma: S3,
) -> AlgebraDescriptor {
    let n = alg.dim();
    let imgs = sigma.images();
    let inv = pair.inverse_form();
    let cube = StructureCube::from_fn(n, |i, j, k| {
        let mut acc = Rational::zero();
        for e in 0..n {
            let idx = [i, j, e];
            let permuted = t.get(idx[imgs[0]], idx[imgs[1]], idx[imgs[2]]);
            if !permuted.is_zero() {
                acc += permuted * inv.get(e, k);
            }
        }
        acc
    });
    alg.with_cube(cube)
}

/// All six permuted algebras under one convention, with a report of which
/// permutations produced identical cubes.
#[derive(Debug, Clone)]
pub struct PermutedFamily {
    pub convention: Convention,
    /// One entry per permutation, in `S3::ALL` order.
    pub entries: Vec<(S3, AlgebraDescriptor)>,
    /// Partition of the six permutations by exact cube equality; groups are
    /// ordered by their first member and each group is sorted.
    pub duplicate_groups: Vec<Vec<S3>>,
}

impl PermutedFamily {
    pub fn algebra(&self, sigma: S3) -> &AlgebraDescriptor {
        &self
            .entries
            .iter()
            .find(|(s, _)| *s == sigma)
            .expect("all six present")
            .1
    }

    pub fn distinct_cubes(&self) -> usize {
        self.duplicate_groups.len()
    }
}

/// Computes the full orbit. The pair is required for the tensorial
/// convention and ignored by the raw convention.
pub fn permute_all(
    alg: &AlgebraDescriptor,
    pair: Option<&FrobeniusPair>,
    convention: Convention,
) -> Result<PermutedFamily, Error> {
    let entries: Vec<(S3, AlgebraDescriptor)> = match convention {
        Convention::RawCube => S3::ALL.iter().map(|&s| (s, permute_raw(alg, s))).collect(),
        Convention::Tensorial => {
            let pair = pair.ok_or(Error::MissingForm)?;
            if !frobenius_check(alg, pair.form()) {
                return Err(Error::UnverifiedPair);
            }
            let t = crate::frobenius::ternary_tensor(alg, pair.form())?;
            S3::ALL
                .iter()
                .map(|&s| (s, permute_tensor_and_raise(alg, &t, pair, s)))
                .collect()
        }
    };
    let mut duplicate_groups: Vec<Vec<S3>> = Vec::new();
    let mut representatives: Vec<&StructureCube> = Vec::new();
    for (s, a) in &entries {
        match representatives.iter().position(|r| *r == a.cube()) {
            Some(g) => duplicate_groups[g].push(*s),
            None => {
                representatives.push(a.cube());
                duplicate_groups.push(vec![*s]);
            }
        }
    }
    Ok(PermutedFamily {
        convention,
        entries,
        duplicate_groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_fixtures::complex_table;
    use crate::algebra::Element;
    use crate::clifford::{canonical_form, generate, CliffordSignature};
    use crate::frobenius::invert_form;

    fn cl02() -> AlgebraDescriptor {
        generate(CliffordSignature { p: 0, q: 2 }).unwrap()
    }

    fn cl02_pair() -> FrobeniusPair {
        invert_form(&canonical_form(CliffordSignature { p: 0, q: 2 }).unwrap()).unwrap()
    }

    fn cl01_pair() -> FrobeniusPair {
        invert_form(&canonical_form(CliffordSignature { p: 0, q: 1 }).unwrap()).unwrap()
    }

    #[test]
    fn cycle_names_round_trip() {
        for s in S3::ALL {
            assert_eq!(S3::parse(s.name()).unwrap(), s);
        }
        assert!(S3::parse("(21)").is_err());
    }

    #[test]
    fn composition_and_inverse_laws() {
        for a in S3::ALL {
            assert_eq!(a.compose(S3::Id), a);
            assert_eq!(S3::Id.compose(a), a);
            assert_eq!(a.compose(a.inverse()), S3::Id);
            for b in S3::ALL {
                let c = a.compose(b);
                let ai = a.images();
                let bi = b.images();
                for x in 0..3 {
                    assert_eq!(c.images()[x], ai[bi[x]]);
                }
            }
        }
        assert_eq!(S3::Swap12.compose(S3::Cycle123), S3::Swap23);
        assert_eq!(S3::Swap12.compose(S3::Cycle132), S3::Swap13);
    }

    #[test]
    fn raw_action_composes_as_a_right_action() {
        let alg = cl02();
        for s in S3::ALL {
            for t in S3::ALL {
                let two_step = permute_raw(&permute_raw(&alg, s), t);
                let one_step = permute_raw(&alg, t.compose(s));
                assert_eq!(two_step.cube(), one_step.cube(), "sigma={s} tau={t}");
            }
        }
    }

    #[test]
    fn identity_permutation_is_identity() {
        let alg = cl02();
        assert_eq!(permute_raw(&alg, S3::Id), alg);
    }

    #[test]
    fn swap12_is_the_opposite_algebra() {
        let alg = cl02();
        assert_eq!(permute_raw(&alg, S3::Swap12).cube(), alg.opposite().cube());
    }

    #[test]
    fn knuth_pairing_is_the_coset_involution() {
        let alg = cl02();
        for s in S3::ALL {
            let paired = S3::Swap12.compose(s);
            assert_eq!(
                permute_raw(&alg, s).opposite().cube(),
                permute_raw(&alg, paired).cube(),
                "sigma={s}"
            );
            // The pairing is an involution without fixed points.
            assert_ne!(paired, s);
            assert_eq!(S3::Swap12.compose(paired), s);
        }
    }

    #[test]
    fn complex_swap23_table_from_worked_example() {
        let alg = complex_table();
        let permuted = permute_raw(&alg, S3::Swap23);
        let e = Element::basis(2, 0);
        let i = Element::basis(2, 1);
        assert_eq!(
            permuted.multiply(&e, &e).unwrap(),
            Element::from_i64(&[1, 0])
        );
        assert_eq!(
            permuted.multiply(&e, &i).unwrap(),
            Element::from_i64(&[0, 1])
        );
        assert_eq!(
            permuted.multiply(&i, &e).unwrap(),
            Element::from_i64(&[0, -1])
        );
        assert_eq!(
            permuted.multiply(&i, &i).unwrap(),
            Element::from_i64(&[1, 0])
        );
    }

    #[test]
    fn quaternion_raw_cycle132_table() {
        // Entry-by-entry dense oracle for the (132) raw permutation:
        // out[i][j][k] = Y[k][i][j].
        let alg = cl02();
        let permuted = permute_raw(&alg, S3::Cycle132);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    assert_eq!(permuted.cube().get(i, j, k), alg.cube().get(k, i, j));
                }
            }
        }
        // Row I of the permuted table: -I, E, K, -J.
        let row: Vec<Element> = (0..4)
            .map(|j| {
                permuted
                    .multiply(&Element::basis(4, 1), &Element::basis(4, j))
                    .unwrap()
            })
            .collect();
        assert_eq!(row[0], Element::from_i64(&[0, -1, 0, 0]));
        assert_eq!(row[1], Element::from_i64(&[1, 0, 0, 0]));
        assert_eq!(row[2], Element::from_i64(&[0, 0, 0, 1]));
        assert_eq!(row[3], Element::from_i64(&[0, 0, -1, 0]));
    }

    #[test]
    fn tensorial_identity_reconstructs_the_algebra() {
        let alg = cl02();
        let pair = cl02_pair();
        assert_eq!(permute_tensorial(&alg, &pair, S3::Id).unwrap(), alg);

        let c = complex_table();
        let pair = cl01_pair();
        assert_eq!(permute_tensorial(&c, &pair, S3::Id).unwrap(), c);
    }

    #[test]
    fn tensorial_swap12_is_the_opposite_for_any_invertible_form() {
        // Symbolic cancellation makes this hold without diagonality; check
        // it on the antidiagonal form of the complex table too.
        let c = complex_table();
        let anti = crate::frobenius::BilinearForm::new(crate::linalg::Matrix::from_i64(&[
            &[0, 1],
            &[1, 0],
        ]))
        .unwrap();
        let pair = invert_form(&anti).unwrap();
        assert_eq!(
            permute_tensorial(&c, &pair, S3::Swap12).unwrap().cube(),
            c.opposite().cube()
        );

        let alg = cl02();
        assert_eq!(
            permute_tensorial(&alg, &cl02_pair(), S3::Swap12)
                .unwrap()
                .cube(),
            alg.opposite().cube()
        );
    }

    #[test]
    fn tensorial_three_cycles_fix_the_quaternions() {
        let alg = cl02();
        let pair = cl02_pair();
        for s in [S3::Cycle123, S3::Cycle132] {
            assert_eq!(
                permute_tensorial(&alg, &pair, s).unwrap().cube(),
                alg.cube()
            );
        }
    }

    #[test]
    fn tensorial_identity_holds_for_asymmetric_pairs() {
        // An asymmetric verified form makes the raise direction visible;
        // identity and (12) must still reconstruct and reverse.
        let alg = cl02();
        let dual_i = crate::frobenius::BilinearForm::new(crate::linalg::Matrix::from_i64(&[
            &[0, 1, 0, 0],
            &[1, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, -1, 0],
        ]))
        .unwrap();
        let pair = invert_form(&dual_i).unwrap();
        assert_eq!(
            permute_tensorial(&alg, &pair, S3::Id).unwrap().cube(),
            alg.cube()
        );
        assert_eq!(
            permute_tensorial(&alg, &pair, S3::Swap12).unwrap().cube(),
            alg.opposite().cube()
        );
    }

    #[test]
    fn tensorial_rejects_unverified_pairs() {
        let alg = cl02();
        let id_form =
            crate::frobenius::BilinearForm::new(crate::linalg::Matrix::identity(4)).unwrap();
        let pair = invert_form(&id_form).unwrap();
        assert_eq!(
            permute_tensorial(&alg, &pair, S3::Swap23),
            Err(Error::UnverifiedPair)
        );
    }

    #[test]
    fn permute_all_raw_on_commutative_algebra_dedupes_swap12() {
        // For a commutative cube the (12)-pairing collapses the orbit into
        // three two-element groups.
        let family = permute_all(&complex_table(), None, Convention::RawCube).unwrap();
        assert_eq!(family.entries.len(), 6);
        assert_eq!(
            family.duplicate_groups,
            vec![
                vec![S3::Id, S3::Swap12],
                vec![S3::Swap13, S3::Cycle123],
                vec![S3::Swap23, S3::Cycle132],
            ]
        );
    }

    #[test]
    fn permute_all_raw_on_quaternions_gives_six_distinct_cubes() {
        let family = permute_all(&cl02(), None, Convention::RawCube).unwrap();
        assert_eq!(family.distinct_cubes(), 6);
        let associative: Vec<S3> = family
            .entries
            .iter()
            .filter(|(_, a)| crate::diagnostics::is_associative(a))
            .map(|(s, _)| *s)
            .collect();
        assert_eq!(associative, vec![S3::Id, S3::Swap12]);
    }

    #[test]
    fn permute_all_tensorial_on_quaternions_gives_two_cubes() {
        let alg = cl02();
        let pair = cl02_pair();
        let family = permute_all(&alg, Some(&pair), Convention::Tensorial).unwrap();
        assert_eq!(family.distinct_cubes(), 2);
        assert_eq!(
            family.duplicate_groups[0],
            vec![S3::Id, S3::Cycle123, S3::Cycle132]
        );
        assert_eq!(
            family.duplicate_groups[1],
            vec![S3::Swap12, S3::Swap13, S3::Swap23]
        );
        assert_eq!(family.algebra(S3::Id).cube(), alg.cube());
        assert_eq!(family.algebra(S3::Swap13).cube(), alg.opposite().cube());
    }

    #[test]
    fn permute_all_tensorial_requires_a_pair() {
        assert_eq!(
            permute_all(&cl02(), None, Convention::Tensorial).err(),
            Some(Error::MissingForm)
        );
    }

    #[test]
    fn raw_cycle132_of_unital_diagonal_frobenius_has_left_identity() {
        let alg = cl02();
        let permuted = permute_raw(&alg, S3::Cycle132);
        let e = Element::basis(4, 0);
        for j in 0..4 {
            let b = Element::basis(4, j);
            assert_eq!(permuted.multiply(&e, &b).unwrap(), b);
        }
        // Not a right identity: the form is not the identity matrix.
        let i = Element::basis(4, 1);
        assert_eq!(
            permuted.multiply(&i, &e).unwrap(),
            Element::from_i64(&[0, -1, 0, 0])
        );
    }
}
