//! The Hantzsche–Wendt group `⟨a, b | ab²a⁻¹b², ba²b⁻¹a²⟩` realized by the
//! affine maps
//!
//! ```text
//! a = (diag(1,-1,-1), (1/2, 1/2, 0))
//! b = (diag(-1,1,-1), (0, 1/2, 1/2))
//! ```
//!
//! Its translation subgroup is `ℤ³ = ⟨a², b², (ab)²⟩` with
//! `a² = (1,0,0)`, `b² = (0,1,0)` and `(ab)² = (0,0,-1)`, and the four
//! cosets are represented by `id, a, b, ab`.

use crate::error::GroupError;
use crate::group::{AffineElement, Element, Half, Word};

pub const A: usize = 0;
pub const B: usize = 1;

pub fn affine_a() -> AffineElement {
    AffineElement::new([1, -1, -1], [Half(1), Half(1), Half(0)])
}

pub fn affine_b() -> AffineElement {
    AffineElement::new([-1, 1, -1], [Half(0), Half(1), Half(1)])
}

pub fn generator_a() -> Element {
    Element::Affine(affine_a())
}

pub fn generator_b() -> Element {
    Element::Affine(affine_b())
}

/// Coset representative word for a linear part, with the parity pattern of
/// the doubled translation that elements of that coset must have.
fn coset(signs: [i8; 3]) -> Option<(Word, [i64; 3])> {
    match signs {
        [1, 1, 1] => Some((Word::empty(), [0, 0, 0])),
        [1, -1, -1] => Some((Word::letter(A, 1), [1, 1, 0])),
        [-1, 1, -1] => Some((Word::letter(B, 1), [0, 1, 1])),
        [-1, -1, 1] => Some((Word::from_syllables([(A, 1), (B, 1)]), [1, 0, 1])),
        _ => None,
    }
}

pub fn is_member(m: &AffineElement) -> bool {
    match coset(m.signs) {
        Some((_, parity)) => (0..3).all(|i| m.translation[i].0.rem_euclid(2) == parity[i]),
        None => false,
    }
}

fn eval(w: &Word) -> Option<AffineElement> {
    let (a, b) = (affine_a(), affine_b());
    let mut acc = AffineElement::IDENTITY;
    for &(g, e) in w.syllables() {
        let base = if g == A { a.clone() } else { b.clone() };
        let step = if e < 0 { base.inverse()? } else { base };
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&step)?;
        }
    }
    Some(acc)
}

/// Normal-form word `a^{2x} b^{2y} (ab)^{-2z} r` for `m = T(x,y,z)·r`.
pub fn express(m: &AffineElement) -> Result<Word, GroupError> {
    let bad = || GroupError::NotAnElement { group: "promislow".into(), element: alloc::format!("{m}") };
    if !is_member(m) {
        return Err(bad());
    }
    let (rep, _) = coset(m.signs).ok_or_else(bad)?;
    let rep_map = eval(&rep).ok_or_else(bad)?;
    let tau = m.compose(&rep_map.inverse().ok_or_else(bad)?).ok_or_else(bad)?;
    debug_assert!(tau.is_translation());
    let t = tau.translation.map(|h| h.to_int().expect("coset parity makes the translation integral"));
    let ab = Word::from_syllables([(A, 1), (B, 1)]);
    let word = Word::from_syllables([(A, 2 * t[0]), (B, 2 * t[1])]).concat(&ab.power(-2 * t[2])).concat(&rep);
    Ok(word)
}

/// `ψ: G → ℤ/4`, `a ↦ 1`, `b ↦ 0`, read off any word for the element.
pub fn psi_of_word(w: &Word) -> u64 {
    w.exponent_sum(A).rem_euclid(4) as u64
}

/// `ψ` computed from the affine canonical form.
pub fn psi(m: &AffineElement) -> Result<u64, GroupError> {
    Ok(psi_of_word(&express(m)?))
}

/// `φ: G → ℤ/2`, `a ↦ 1`, `b ↦ 0`.
pub fn phi(m: &AffineElement) -> Result<u64, GroupError> {
    Ok(psi(m)? % 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Group, Presentation, DEFAULT_BALL_LIMIT};

    #[test]
    fn relators_vanish() {
        let g = Group::Promislow;
        let gens = g.standard_generators();
        for r in Presentation::promislow().relators() {
            assert!(g.is_identity(&g.eval_word(r, &gens).unwrap()));
        }
    }

    #[test]
    fn translation_subgroup() {
        let g = Group::Promislow;
        let (a, b) = (generator_a(), generator_b());
        let ab = g.op(&a, &b).unwrap();
        assert_eq!(g.op(&a, &a).unwrap(), Element::Affine(AffineElement::translation_by([1, 0, 0])));
        assert_eq!(g.op(&b, &b).unwrap(), Element::Affine(AffineElement::translation_by([0, 1, 0])));
        assert_eq!(g.op(&ab, &ab).unwrap(), Element::Affine(AffineElement::translation_by([0, 0, -1])));
    }

    #[test]
    fn membership() {
        assert!(is_member(&affine_a()));
        assert!(!is_member(&AffineElement::new([1, 1, 1], [Half(1), Half(0), Half(0)])));
        assert!(!is_member(&AffineElement::new([1, 1, -1], [Half(0); 3])));
    }

    #[test]
    fn psi_routes_agree_on_ball() {
        let g = Group::Promislow;
        let ball = g.ball(&g.standard_generators(), 4, DEFAULT_BALL_LIMIT).unwrap();
        for (x, w) in ball.elements().iter().zip(ball.words()) {
            assert_eq!(psi(x.as_affine().unwrap()).unwrap(), psi_of_word(w));
        }
        assert_eq!(psi(&affine_a()).unwrap(), 1);
        assert_eq!(psi(&affine_b()).unwrap(), 0);
    }
}
