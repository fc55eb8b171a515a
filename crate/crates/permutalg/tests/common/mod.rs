//! Shared fixtures and randomized suites for the integration tests.
//!
//! Each integration test binary compiles this module separately and uses a
//! different subset of it.
#![allow(dead_code)]

use num_traits::{One, Zero};
use permutalg::algebra::{AlgebraDescriptor, Element, StructureCube};
use permutalg::clifford::{canonical_form, generate, CliffordSignature};
use permutalg::detrand::DetRng;
use permutalg::frobenius::{frobenius_check, invert_form, BilinearForm, FrobeniusPair};
use permutalg::io::{parse_algebra_file, parse_form_file, render_algebra_file, render_form_file};
use permutalg::linalg::{rat, Matrix, Rational};
use permutalg::permute::{permute_raw, S3};

pub fn cl(p: usize, q: usize) -> AlgebraDescriptor {
    generate(CliffordSignature { p, q }).unwrap()
}

pub fn cl_form(p: usize, q: usize) -> BilinearForm {
    canonical_form(CliffordSignature { p, q }).unwrap()
}

pub fn cl_pair(p: usize, q: usize) -> FrobeniusPair {
    invert_form(&cl_form(p, q)).unwrap()
}

/// The 3-dimensional algebra of upper triangular 2x2 matrices with the
/// ordered basis e11, e12, e22.
pub fn upper_triangular() -> AlgebraDescriptor {
    let cube = StructureCube::from_fn(3, |i, j, k| match (i, j, k) {
        (0, 0, 0) | (0, 1, 1) | (1, 2, 1) | (2, 2, 2) => rat(1),
        _ => rat(0),
    });
    AlgebraDescriptor::new(
        "UpperTriangular2",
        vec!["e11".into(), "e12".into(), "e22".into()],
        cube,
    )
    .unwrap()
}

/// Commutative unital algebra with basis `E, g1, .., gk`, products
/// `gi * gi = s_i E` and `gi * gj = 0` for distinct generators, together
/// with its diagonal associative form `diag(1, s_1, .., s_k)`.
///
/// The form satisfies the associativity identity by construction and is
/// normalized with `form(E, E) = 1`.
pub fn sign_algebra(signs: &[Rational]) -> (AlgebraDescriptor, BilinearForm) {
    let n = signs.len() + 1;
    let signs = signs.to_vec();
    let cube = StructureCube::from_fn(n, |i, j, k| {
        if i == 0 {
            return if j == k {
                Rational::one()
            } else {
                Rational::zero()
            };
        }
        if j == 0 {
            return if i == k {
                Rational::one()
            } else {
                Rational::zero()
            };
        }
        if i == j && k == 0 {
            return signs[i - 1].clone();
        }
        Rational::zero()
    });
    let mut labels = vec!["E".to_string()];
    for i in 1..n {
        labels.push(format!("g{i}"));
    }
    let alg = AlgebraDescriptor::new(format!("Sign{}", n), labels, cube).unwrap();
    let mut diag = vec![Rational::one()];
    diag.extend(signs);
    let form = BilinearForm::new(Matrix::diagonal(&diag)).unwrap();
    assert!(
        frobenius_check(&alg, &form),
        "sign algebra form must verify"
    );
    (alg, form)
}

pub fn sign_algebra_i64(signs: &[i64]) -> (AlgebraDescriptor, BilinearForm) {
    let signs: Vec<Rational> = signs.iter().map(|&s| rat(s)).collect();
    sign_algebra(&signs)
}

/// At least 20 unital algebras with verified diagonal Frobenius forms whose
/// first basis vector is the identity and whose form is normalized at
/// `form(E, E) = 1`: all Clifford signatures with up to three generators
/// plus every +-1 sign pattern in dimensions 2 to 4.
pub fn unital_diagonal_corpus() -> Vec<(AlgebraDescriptor, BilinearForm)> {
    let mut corpus = Vec::new();
    for total in 0..=3usize {
        for q in 0..=total {
            let p = total - q;
            corpus.push((cl(p, q), cl_form(p, q)));
        }
    }
    for k in 1..=3usize {
        for mask in 0..(1u32 << k) {
            let signs: Vec<i64> = (0..k)
                .map(|b| if mask >> b & 1 == 1 { -1 } else { 1 })
                .collect();
            corpus.push(sign_algebra_i64(&signs));
        }
    }
    assert!(corpus.len() >= 20);
    for (alg, form) in &corpus {
        assert!(frobenius_check(alg, form));
        assert_eq!(form.entry(0, 0), &Rational::one());
        // E really is the two-sided identity of the unpermuted algebra.
        let e = Element::basis(alg.dim(), 0);
        for j in 0..alg.dim() {
            let b = Element::basis(alg.dim(), j);
            assert_eq!(alg.multiply(&e, &b).unwrap(), b);
            assert_eq!(alg.multiply(&b, &e).unwrap(), b);
        }
    }
    corpus
}

pub fn random_rational(rng: &mut DetRng) -> Rational {
    rng.next_rational(4, 3)
}

pub fn random_element(rng: &mut DetRng, n: usize) -> Element {
    Element::from_coords((0..n).map(|_| random_rational(rng)).collect())
}

const RANDOM_LABELS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

pub fn random_algebra(rng: &mut DetRng, n: usize) -> AlgebraDescriptor {
    let cube = StructureCube::from_fn(n, |_, _, _| rng.next_rational(3, 2));
    let labels = RANDOM_LABELS[..n].iter().map(|s| s.to_string()).collect();
    AlgebraDescriptor::new(format!("Random{n}"), labels, cube).unwrap()
}

pub fn random_sigma(rng: &mut DetRng) -> S3 {
    S3::ALL[rng.next_in(0, 5) as usize]
}

// ---------------------------------------------------------------------------
// Randomized property suites (fixed seeds, shared between the property tests
// and the acceptance gate).
// ---------------------------------------------------------------------------

/// Bilinearity of the cube product in both slots. Returns the case count.
pub fn run_bilinearity_suite(cases: usize) -> usize {
    let mut rng = DetRng::new(0xB111);
    for case in 0..cases {
        let n = rng.next_in(2, 4) as usize;
        let alg = random_algebra(&mut rng, n);
        let a = random_element(&mut rng, n);
        let a2 = random_element(&mut rng, n);
        let b = random_element(&mut rng, n);
        let alpha = random_rational(&mut rng);
        let lhs = alg.multiply(&a.scale(&alpha).add(&a2), &b).unwrap();
        let rhs = alg
            .multiply(&a, &b)
            .unwrap()
            .scale(&alpha)
            .add(&alg.multiply(&a2, &b).unwrap());
        assert_eq!(lhs, rhs, "first slot, case {case}");
        let lhs = alg.multiply(&b, &a.scale(&alpha).add(&a2)).unwrap();
        let rhs = alg
            .multiply(&b, &a)
            .unwrap()
            .scale(&alpha)
            .add(&alg.multiply(&b, &a2).unwrap());
        assert_eq!(lhs, rhs, "second slot, case {case}");
    }
    cases
}

/// The slot action composes as a right action:
/// `raw(raw(A, s), t) = raw(A, t o s)`.
pub fn run_action_composition_suite(cases: usize) -> usize {
    let mut rng = DetRng::new(0xAC710);
    for case in 0..cases {
        let n = rng.next_in(2, 4) as usize;
        let alg = random_algebra(&mut rng, n);
        let s = random_sigma(&mut rng);
        let t = random_sigma(&mut rng);
        let two_step = permute_raw(&permute_raw(&alg, s), t);
        let one_step = permute_raw(&alg, t.compose(s));
        assert_eq!(two_step.cube(), one_step.cube(), "case {case}: s={s} t={t}");
    }
    cases
}

/// Every basis member of the solved form space satisfies the associativity
/// identity, and the dimension matches the constraint-rank count.
pub fn run_form_space_membership_suite(cases: usize) -> usize {
    let mut rng = DetRng::new(0xF0235);
    for case in 0..cases {
        let n = rng.next_in(2, 3) as usize;
        let alg = random_algebra(&mut rng, n);
        let space = permutalg::frobenius::associative_form_space(&alg);
        for b in space.basis() {
            assert!(frobenius_check(&alg, b), "case {case}");
        }
        // Membership is closed under random combinations as well.
        if space.dim() > 0 {
            let coeffs: Vec<Rational> = (0..space.dim())
                .map(|_| random_rational(&mut rng))
                .collect();
            let member = space.combine(&coeffs);
            assert!(frobenius_check(&alg, &member), "case {case} combination");
        }
    }
    cases
}

/// Serialization round trips: algebra files, form files, rational strings.
pub fn run_round_trip_suite(cases: usize) -> usize {
    let mut rng = DetRng::new(0x707A17);
    for case in 0..cases {
        let n = rng.next_in(1, 4) as usize;
        let alg = random_algebra(&mut rng, n);
        let text = render_algebra_file(&alg);
        let back = parse_algebra_file(&text).unwrap();
        assert_eq!(back, alg, "algebra case {case}");
        assert_eq!(
            render_algebra_file(&back),
            text,
            "algebra bytes case {case}"
        );

        let m = Matrix::from_fn(n, n, |_, _| rng.next_rational(20, 9));
        let form = BilinearForm::new(m).unwrap();
        let text = render_form_file(&form);
        let back = parse_form_file(&text).unwrap();
        assert_eq!(back, form, "form case {case}");
        assert_eq!(render_form_file(&back), text, "form bytes case {case}");

        let r = rng.next_rational(1_000_000, 999_983);
        let s = r.to_string();
        assert_eq!(
            permutalg::linalg::parse_rational(&s).unwrap(),
            r,
            "rational case {case}"
        );
    }
    cases
}
