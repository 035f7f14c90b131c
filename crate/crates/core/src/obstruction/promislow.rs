//! The Promislow group's obstruction spectrum, `Ob(G) = 4ℕ`.
//!
//! * `4 ∈ Ob(G)`: the abelianization is `(ℤ/4)²` with exponent 4.
//! * `n` odd: `(g, t) ↦ n·φ(g) + 2t` maps `G × ℤ/n` onto `ℤ/2n` with kernel
//!   `≅ ker φ`.
//! * `n = 2m`, `m` odd: `(g, t) ↦ m·ψ(g) + 2t` maps `G × ℤ/n` onto `ℤ/4m`
//!   with kernel `≅ ker φ`; for `m = 1` this is `β`.
//!
//! `ker φ = ⟨b, a², (ab)²⟩` is `ℤ² ⋊ ℤ`: the homomorphism `η = 2·t_y` (twice
//! the y-translation) maps it onto `ℤ` with kernel the translations
//! `ℤ² = ⟨a², (ab)²⟩`, on which `b` acts by inversion.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::certificate::{exponent_obstruction, LeftOrderEvidence, Relation, UnobstructedCertificate};
use super::SpectrumReport;
use crate::error::{GroupError, ObstructionError};
use crate::group::promislow as pg;
use crate::group::{abelianization, Ball, Element, Group, Homomorphism, Presentation, Word, DEFAULT_BALL_LIMIT};
use crate::orders::{lex_circular, natural_circular_cyclic, validate_left, CircularOrdering, LeftOrdering, SesData};
use crate::report::{combine, CheckReport};

/// Radius of the ball on which [`promislow_spectrum`] verifies certificates.
pub const SPECTRUM_CARRIER_RADIUS: usize = 3;

/// Radius of the ball used by [`reproduction_checks`] by default.
pub const CHECK_RADIUS: usize = 4;

fn residue(r: u64) -> Element {
    Element::Residue(r)
}

/// `ψ: G → ℤ/4`, `a ↦ 1`, `b ↦ 0`.
pub fn psi_hom() -> Homomorphism {
    Homomorphism::on_generators("psi", Group::Promislow, Group::Cyclic(4), vec![residue(1), residue(0)])
        .expect("a -> 1, b -> 0 kills both relators")
}

/// `φ: G → ℤ/2`, `a ↦ 1`, `b ↦ 0`.
pub fn phi_hom() -> Homomorphism {
    Homomorphism::on_generators("phi", Group::Promislow, Group::Cyclic(2), vec![residue(1), residue(0)])
        .expect("a -> 1, b -> 0 kills both relators")
}

/// `G × ℤ/2`.
pub fn g_times_z2() -> Group {
    Group::product(Group::Promislow, Group::Cyclic(2))
}

/// `β: G × ℤ/2 → ℤ/4`, `β(g, t) = ψ(g) + 2t`.
pub fn beta_hom() -> Homomorphism {
    Homomorphism::on_generators("beta", g_times_z2(), Group::Cyclic(4), vec![residue(1), residue(0), residue(2)])
        .expect("beta kills the relators of G x Z/2")
}

/// `η(g) = 2·t_y`, a homomorphism `ker φ → ℤ`.
fn eta(g: &Element) -> Result<i64, GroupError> {
    let m = g.as_affine().ok_or_else(|| GroupError::InvalidParameter(format!("{g} is not affine")))?;
    Ok(m.translation[1].0)
}

fn in_ker_phi(g: &Element) -> Result<bool, GroupError> {
    let m = g.as_affine().ok_or_else(|| GroupError::InvalidParameter(format!("{g} is not affine")))?;
    Ok(pg::phi(m)? == 0)
}

/// The left ordering of `ker φ`: compare `η` first, then on the translation
/// subgroup the x and then the z translation.
pub fn kernel_order() -> LeftOrdering {
    LeftOrdering::from_cone(Group::Promislow, "ker-phi-lex(eta, x, z)", |g| {
        if !in_ker_phi(g)? {
            return Err(GroupError::InvalidParameter(format!("{g} is not in ker phi")));
        }
        let m = g.as_affine().expect("checked by in_ker_phi");
        let t = m.translation.map(|h| h.0);
        Ok(t[1] > 0 || (t[1] == 0 && (t[0] > 0 || (t[0] == 0 && t[2] > 0))))
    })
}

/// The chain generators `b, a², (ab)²` of `ker φ`.
pub fn chain_generators() -> Vec<Element> {
    let g = Group::Promislow;
    let (a, b) = (pg::generator_a(), pg::generator_b());
    let ab = g.op(&a, &b).expect("generators compose");
    vec![b, g.pow(&a, 2).expect("a^2"), g.pow(&ab, 2).expect("(ab)^2")]
}

/// `b a² b⁻¹ = a⁻²`, `b (ab)² b⁻¹ = (ab)⁻²`, `[a², (ab)²] = id` in the chain
/// generators (indices 0, 1, 2).
pub fn chain_relations() -> Vec<Relation> {
    vec![
        Relation::new(Word::from_syllables([(0, 1), (1, 1), (0, -1)]), Word::letter(1, -1)),
        Relation::new(Word::from_syllables([(0, 1), (2, 1), (0, -1)]), Word::letter(2, -1)),
        Relation::new(Word::from_syllables([(1, 1), (2, 1), (1, -1), (2, -1)]), Word::empty()),
    ]
}

fn kernel_evidence(generation_radius: usize) -> LeftOrderEvidence {
    LeftOrderEvidence::PolyZ {
        name: "ker phi = Z^2 x| Z".to_string(),
        generators: chain_generators(),
        relations: chain_relations(),
        generation_radius,
    }
}

/// The certificate that `n ∉ Ob(G)` for `4 ∤ n`. Its poly-ℤ evidence covers
/// carriers inside the ball of radius `generation_radius / 2`.
pub fn certificate(n: u64, generation_radius: usize) -> Result<UnobstructedCertificate, ObstructionError> {
    if n < 2 || n.is_multiple_of(4) {
        return Err(ObstructionError::NotApplicable(format!("no certificate for n = {n}: 4 | n or n < 2")));
    }
    let (label, modulus, a_image) = if n % 2 == 1 {
        (format!("n*phi into Z/{}", 2 * n), 2 * n, n)
    } else {
        let m = n / 2;
        (format!("{m}*psi into Z/{}", 4 * m), 4 * m, m)
    };
    let phi = Homomorphism::on_generators(label, Group::Promislow, Group::Cyclic(modulus), vec![residue(a_image), residue(0)])?;
    Ok(UnobstructedCertificate::new(n, phi, 2, kernel_evidence(generation_radius)))
}

/// The standard ball of radius `radius` in `G`.
pub fn ball(radius: usize) -> Result<Ball, GroupError> {
    Group::Promislow.ball(&Group::Promislow.standard_generators(), radius, DEFAULT_BALL_LIMIT)
}

/// `Ob(G) ∩ [2, cap]`: 4 from the exponent, its multiples by closure, and the
/// rest by certificates verified on the ball of radius
/// [`SPECTRUM_CARRIER_RADIUS`].
pub fn promislow_spectrum(cap: u64) -> Result<SpectrumReport, ObstructionError> {
    promislow_spectrum_on(cap, SPECTRUM_CARRIER_RADIUS)
}

pub fn promislow_spectrum_on(cap: u64, radius: usize) -> Result<SpectrumReport, ObstructionError> {
    let mut report = SpectrumReport::new("promislow", cap);
    exponent_obstruction(&Presentation::promislow())?.apply_to(&mut report)?;
    let carrier = ball(radius)?;
    for n in (2..=cap).filter(|n| n % 4 != 0) {
        let check = certificate(n, 2 * radius)?.apply_to(&mut report, carrier.elements())?;
        if !check.passed() {
            return Err(ObstructionError::Inconsistent(format!("certificate for n = {n} failed: {:?}", check.violated)));
        }
    }
    report.close_divisibility()?;
    Ok(report)
}

/// `ψ` read from BFS words of the ball agrees with `ψ` of the affine
/// canonical form.
pub fn psi_consistency_check(ball: &Ball) -> Result<CheckReport, GroupError> {
    const NAME: &str = "psi-word-vs-affine";
    for (i, (g, w)) in ball.elements().iter().zip(ball.words()).enumerate() {
        let from_word = pg::psi_of_word(w);
        let from_form = pg::psi(g.as_affine().expect("ball of the Promislow group"))?;
        if from_word != from_form {
            return Ok(CheckReport::fail(NAME, "psi(word) = psi(canonical form)", vec![g.clone()], i as u64 + 1));
        }
    }
    Ok(CheckReport::pass(NAME, ball.len() as u64))
}

/// `α(g, t) = g` restricted to `ker β` is a bijection onto `ker φ` on the
/// ball, and a homomorphism on all in-ball pairs.
pub fn alpha_check(ball: &Ball) -> Result<CheckReport, GroupError> {
    const NAME: &str = "alpha-isomorphism";
    let beta = beta_hom();
    let product = g_times_z2();
    let mut ker_beta = Vec::new();
    let mut checked = 0u64;
    for g in ball.elements() {
        let lifts: Vec<Element> = (0..2)
            .map(|t| Element::pair(g.clone(), residue(t)))
            .filter_map(|x| match beta.is_in_kernel(&x) {
                Ok(true) => Some(Ok(x)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            })
            .collect::<Result<_, _>>()?;
        checked += 1;
        let expected = usize::from(in_ker_phi(g)?);
        if lifts.len() != expected {
            let why = if lifts.len() > expected { "alpha is injective" } else { "alpha is onto ker phi" };
            return Ok(CheckReport::fail(NAME, why, vec![g.clone()], checked));
        }
        ker_beta.extend(lifts);
    }
    for x in &ker_beta {
        for y in &ker_beta {
            checked += 1;
            let xy = product.op(x, y)?;
            let alpha = |e: &Element| e.as_pair().expect("pair").0.clone();
            if !beta.is_in_kernel(&xy)? || alpha(&xy) != Group::Promislow.op(&alpha(x), &alpha(y))? {
                return Ok(CheckReport::fail(NAME, "alpha(xy) = alpha(x)alpha(y) in ker beta", vec![x.clone(), y.clone()], checked));
            }
        }
    }
    Ok(CheckReport::pass(NAME, checked).with_note(format!("|ker beta ∩ ball| = {}", ker_beta.len())))
}

/// Each element of `ker φ` on the ball factors as `b^η · a^{2x} (ab)^{-2z}`.
pub fn chain_decomposition_check(ball: &Ball) -> Result<CheckReport, GroupError> {
    const NAME: &str = "chain-decomposition";
    let g = Group::Promislow;
    let gens = chain_generators();
    let mut checked = 0;
    for x in ball.elements() {
        if !in_ker_phi(x)? {
            continue;
        }
        checked += 1;
        let k = eta(x)?;
        let rest = g.op(&g.pow(&gens[0], -k)?, x)?;
        let m = rest.as_affine().expect("affine");
        let t = m.translation.map(|h| h.to_int());
        let ok = match t {
            [Some(tx), Some(0), Some(tz)] if m.is_translation() => {
                let word = Word::from_syllables([(0, k), (1, tx), (2, -tz)]);
                g.eval_word(&word, &gens)? == *x
            }
            _ => false,
        };
        if !ok {
            return Ok(CheckReport::fail(NAME, "g = b^eta(g) a^(2x) (ab)^(-2z)", vec![x.clone()], checked));
        }
    }
    Ok(CheckReport::pass(NAME, checked))
}

/// The lexicographic circular ordering of `G × ℤ/2` over `β`, with the
/// kernel ordered through `α`.
pub fn lex_ordering_g_times_z2() -> Result<CircularOrdering, GroupError> {
    let beta = beta_hom();
    let inner = kernel_order();
    let kernel = LeftOrdering::from_cone(g_times_z2(), "ker-beta via alpha", move |x| {
        let (g, _) = x.as_pair().ok_or_else(|| GroupError::InvalidParameter(format!("{x} is not a pair")))?;
        inner.is_positive(g)
    });
    let ses = SesData::new(beta, kernel, natural_circular_cyclic(4, 1)?)?;
    Ok(lex_circular(&ses))
}

/// The checks of the worked example on the ball of the given radius:
/// relators, abelianization, the three homomorphisms, ψ consistency, the
/// kernel ordering and its chain structure, and `α`.
pub fn reproduction_checks(radius: usize) -> Result<Vec<CheckReport>, ObstructionError> {
    let g = Group::Promislow;
    let ball = ball(radius)?;
    let mut out = Vec::new();

    let presentation = Presentation::promislow();
    let gens = g.standard_generators();
    let mut relators = CheckReport::pass("relators-vanish", presentation.relators().len() as u64);
    for r in presentation.relators() {
        let value = g.eval_word(r, &gens)?;
        if !g.is_identity(&value) {
            relators = CheckReport::fail("relators-vanish", "relator evaluates to the identity", vec![value], 0);
            break;
        }
    }
    out.push(relators);

    let ab = abelianization(&presentation);
    let factors = ab.factors_u64();
    out.push(if factors.as_deref() == Some(&[4, 4][..]) && ab.exponent() == Some(4.into()) {
        CheckReport::pass("abelianization", 1).with_note("invariant factors (4, 4), exponent 4")
    } else {
        CheckReport::fail("abelianization", format!("invariant factors (4, 4); got {:?}", ab.factors), vec![], 1)
    });

    out.push(phi_hom().check_on(ball.elements())?);
    out.push(psi_hom().check_on(ball.elements())?);
    let product_ball: Vec<Element> = ball
        .elements()
        .iter()
        .flat_map(|x| (0..2).map(move |t| Element::pair(x.clone(), residue(t))))
        .collect();
    out.push(beta_hom().check_on(&product_ball)?);
    out.push(psi_consistency_check(&ball)?);

    let kernel: Vec<Element> =
        ball.elements().iter().filter(|x| in_ker_phi(x).unwrap_or(false)).cloned().collect();
    out.push(validate_left(&kernel_order(), &kernel)?);
    out.push(chain_decomposition_check(&ball)?);
    out.push(alpha_check(&ball)?);
    out.push(combine("index-two", &[index_two_check(&ball)?]));
    Ok(out)
}

/// `ker φ` has index 2: `a ∉ ker φ` and every ball element lies in
/// `ker φ` or `a·ker φ`.
fn index_two_check(ball: &Ball) -> Result<CheckReport, GroupError> {
    const NAME: &str = "kernel-index-two";
    let g = Group::Promislow;
    let a = pg::generator_a();
    if in_ker_phi(&a)? {
        return Ok(CheckReport::fail(NAME, "a is not in ker phi", vec![a], 1));
    }
    let a_inv = g.inv(&a)?;
    for (i, x) in ball.elements().iter().enumerate() {
        if in_ker_phi(x)? == in_ker_phi(&g.op(&a_inv, x)?)? {
            return Ok(CheckReport::fail(NAME, "exactly one of x, a^-1 x is in ker phi", vec![x.clone()], i as u64 + 1));
        }
    }
    Ok(CheckReport::pass(NAME, ball.len() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruction::verify_unobstructed;
    use crate::orders::{validate_bi_invariance, validate_circular, ValidateOptions};
    use crate::report::Status;
    use alloc::collections::BTreeSet;

    #[test]
    fn worked_example_checks() {
        for r in reproduction_checks(3).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn spectra() {
        let r = promislow_spectrum(12).unwrap();
        assert_eq!(r.obstructed_set(), [4, 8, 12].into_iter().collect::<BTreeSet<_>>());
        assert_eq!(r.unobstructed_set(), [2, 3, 5, 6, 7, 9, 10, 11].into_iter().collect::<BTreeSet<_>>());
        assert!(r.is_fully_determined() && r.is_partition() && r.is_divisibility_closed());
        assert!(!r.hypotheses.is_empty());
        assert_eq!(promislow_spectrum(2).unwrap().unobstructed_set(), [2].into_iter().collect());
        let four = promislow_spectrum(4).unwrap();
        assert_eq!(four.obstructed_set(), [4].into_iter().collect());
        assert_eq!(four.unobstructed_set(), [2, 3].into_iter().collect());
    }

    #[test]
    fn certificates() {
        let carrier = ball(2).unwrap();
        for n in [2, 3, 6, 10] {
            assert!(verify_unobstructed(&certificate(n, 4).unwrap(), carrier.elements()).unwrap().passed());
        }
        assert!(certificate(4, 4).is_err());
        assert!(certificate(8, 4).is_err());
        let kernel_cone = LeftOrderEvidence::Cone(kernel_order());
        let mut good = certificate(3, 4).unwrap();
        good.evidence = kernel_cone;
        assert!(verify_unobstructed(&good, carrier.elements()).unwrap().passed());
        let mut broken = certificate(3, 4).unwrap();
        broken.evidence = LeftOrderEvidence::Cone(LeftOrdering::from_cone(Group::Promislow, "x-first", |g| {
            let t = g.as_affine().unwrap().translation.map(|h| h.0);
            Ok(t[0] > 0 || (t[0] == 0 && (t[1] > 0 || (t[1] == 0 && t[2] > 0))))
        }));
        // b and a² are positive in this cone, but b·a² has x-translation -1.
        let wider = ball(3).unwrap();
        assert_eq!(verify_unobstructed(&broken, wider.elements()).unwrap().status, Status::Fail);
    }

    #[test]
    fn lex_ordering_is_circular_but_not_bi_invariant() {
        let c = lex_ordering_g_times_z2().unwrap();
        let g = g_times_z2();
        let carrier = g.ball(&g.standard_generators(), 2, DEFAULT_BALL_LIMIT).unwrap();
        let opts = ValidateOptions::default();
        assert!(validate_circular(&c, carrier.elements(), opts).unwrap().passed());
        let bi = validate_bi_invariance(&c, carrier.elements(), opts).unwrap();
        assert_eq!(bi.status, Status::Fail);
        assert!(!bi.counterexample.is_empty());
    }
}
