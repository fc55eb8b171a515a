//! Generator of Clifford algebra structure constants over the rationals.
//!
//! `Cl(p,q)` has `p` generators squaring to `+1` and `q` squaring to `-1`,
//! pairwise anticommuting. The basis consists of the `2^(p+q)` blades
//! (products of distinct generators) in graded-lexicographic order, with the
//! empty blade labeled `E`.

use crate::algebra::{AlgebraDescriptor, StructureCube};
use crate::error::Error;
use crate::frobenius::BilinearForm;
use crate::linalg::{rat, Matrix, Rational};

/// Number of `+1` and `-1` generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliffordSignature {
    pub p: usize,
    pub q: usize,
}

impl CliffordSignature {
    pub fn generators(&self) -> usize {
        self.p + self.q
    }

    pub fn dim(&self) -> usize {
        1 << self.generators()
    }
}

/// Default generator bound; dimension `2^5 = 32`.
pub const MAX_GENERATORS: usize = 5;

/// Blades as generator bitmasks (bit `g` set means generator `g+1` present),
/// sorted by grade and then lexicographically on the generator list.
fn graded_lex_blades(generators: usize) -> Vec<u32> {
    let mut blades: Vec<u32> = (0..(1u32 << generators)).collect();
    let key = |&m: &u32| {
        let mut gens = Vec::new();
        for g in 0..generators {
            if m >> g & 1 == 1 {
                gens.push(g);
            }
        }
        (gens.len(), gens)
    };
    blades.sort_by_key(key);
    blades
}

fn blade_label(mask: u32, generators: usize, dim_total: usize) -> String {
    if mask == 0 {
        return "E".to_string();
    }
    if dim_total <= 4 {
        // Paper-style labels for the complex numbers and the quaternions.
        let lex = graded_lex_blades(generators);
        let pos = lex.iter().position(|&b| b == mask).unwrap();
        return ["E", "I", "J", "K"][pos].to_string();
    }
    let mut s = String::from("e");
    for g in 0..generators {
        if mask >> g & 1 == 1 {
            s.push_str(&(g + 1).to_string());
        }
    }
    s
}

/// Product of two blades: `(sign, result_mask)`.
///
/// The sign counts the transpositions needed to merge the generator lists,
/// then one metric factor for every repeated generator.
fn blade_product(a: u32, b: u32, sig: CliffordSignature) -> (i64, u32) {
    let mut sign = 1i64;
    for g in 0..sig.generators() {
        if b >> g & 1 == 0 {
            continue;
        }
        // Generators of `a` strictly above g must move past this one.
        let above = (a >> (g + 1)).count_ones();
        if above % 2 == 1 {
            sign = -sign;
        }
        if a >> g & 1 == 1 {
            // Repeated generator contracts through the metric.
            if g >= sig.p {
                sign = -sign;
            }
        }
    }
    (sign, a ^ b)
}

/// Builds the Clifford algebra `Cl(p,q)` as a structure-constant descriptor.
pub fn generate(sig: CliffordSignature) -> Result<AlgebraDescriptor, Error> {
    generate_with_bound(sig, MAX_GENERATORS)
}

/// `generate` with an explicit generator bound.
pub fn generate_with_bound(
    sig: CliffordSignature,
    bound: usize,
) -> Result<AlgebraDescriptor, Error> {
    if sig.generators() > bound {
        return Err(Error::BoundExceeded {
            p: sig.p,
            q: sig.q,
            bound,
        });
    }
    let n = sig.dim();
    let blades = graded_lex_blades(sig.generators());
    let mut index_of = vec![0usize; n];
    for (idx, &mask) in blades.iter().enumerate() {
        index_of[mask as usize] = idx;
    }
    let cube = StructureCube::from_fn(n, |i, j, k| {
        let (sign, mask) = blade_product(blades[i], blades[j], sig);
        if index_of[mask as usize] == k {
            rat(sign)
        } else {
            rat(0)
        }
    });
    let labels = blades
        .iter()
        .map(|&m| blade_label(m, sig.generators(), n))
        .collect();
    AlgebraDescriptor::new(format!("Cl({},{})", sig.p, sig.q), labels, cube)
}

/// The diagonal bilinear form with `form(b_i, b_i)` equal to the scalar
/// square of blade `i`, paired with the basis order of `generate`.
pub fn canonical_form(sig: CliffordSignature) -> Result<BilinearForm, Error> {
    if sig.generators() > MAX_GENERATORS {
        return Err(Error::BoundExceeded {
            p: sig.p,
            q: sig.q,
            bound: MAX_GENERATORS,
        });
    }
    let blades = graded_lex_blades(sig.generators());
    let squares: Vec<Rational> = blades
        .iter()
        .map(|&m| {
            let (sign, mask) = blade_product(m, m, sig);
            debug_assert_eq!(mask, 0);
            rat(sign)
        })
        .collect();
    BilinearForm::new(Matrix::diagonal(&squares))
}
