use alloc::format;
use alloc::vec::Vec;

use super::{natural_circular_cyclic, validate_circular, validate_left, CircularOrdering, LeftOrdering, Provenance, ValidateOptions};
use crate::error::GroupError;
use crate::group::{Element, Group, Homomorphism};
use crate::report::{combine, CheckReport};

/// A short exact sequence `1 → K → G → H → 1` with a left ordering of the
/// kernel and a circular ordering of the quotient.
///
/// The kernel ordering is an ordering oracle on `G` that is only consulted on
/// elements of `K = ker φ`.
#[derive(Clone, Debug)]
pub struct SesData {
    phi: Homomorphism,
    kernel_order: LeftOrdering,
    quotient_order: CircularOrdering,
}

impl SesData {
    pub fn new(phi: Homomorphism, kernel_order: LeftOrdering, quotient_order: CircularOrdering) -> Result<Self, GroupError> {
        if kernel_order.group() != phi.source() {
            return Err(GroupError::InvalidParameter(format!(
                "kernel ordering lives on {}, but the map starts at {}",
                kernel_order.group(),
                phi.source()
            )));
        }
        if quotient_order.group() != phi.target() {
            return Err(GroupError::InvalidParameter(format!(
                "quotient ordering lives on {}, but the map lands in {}",
                quotient_order.group(),
                phi.target()
            )));
        }
        Ok(SesData { phi, kernel_order, quotient_order })
    }

    pub fn ambient(&self) -> &Group {
        self.phi.source()
    }

    pub fn quotient(&self) -> &Group {
        self.phi.target()
    }

    pub fn phi(&self) -> &Homomorphism {
        &self.phi
    }

    pub fn kernel_order(&self) -> &LeftOrdering {
        &self.kernel_order
    }

    pub fn quotient_order(&self) -> &CircularOrdering {
        &self.quotient_order
    }

    pub fn in_kernel(&self, g: &Element) -> Result<bool, GroupError> {
        self.phi.is_in_kernel(g)
    }

    /// Validates the inputs on a carrier of `G`: `φ` is a homomorphism there,
    /// the kernel ordering is a left ordering of `ker φ ∩ carrier`, and the
    /// quotient ordering is a circular ordering of `φ(carrier)`.
    pub fn validate(&self, carrier: &[Element], opts: ValidateOptions) -> Result<CheckReport, GroupError> {
        let hom = self.phi.check_on(carrier)?;
        let mut kernel = Vec::new();
        let mut images = Vec::new();
        for g in carrier {
            let img = self.phi.apply(g)?;
            if self.quotient().is_identity(&img) {
                kernel.push(g.clone());
            }
            images.push(img);
        }
        let kernel_report = validate_left(&self.kernel_order, &kernel)?;
        let quotient_report = validate_circular(&self.quotient_order, &images, opts)?;
        Ok(combine("short-exact-sequence", &[hom, kernel_report, quotient_report]))
    }

    /// The secret ordering of the kernel on three kernel elements.
    fn kernel_secret(&self, a: &Element, b: &Element, c: &Element) -> Result<i8, GroupError> {
        if a == b || b == c || c == a {
            return Ok(0);
        }
        let lo = &self.kernel_order;
        let ascents = u8::from(lo.less(a, b)?) + u8::from(lo.less(b, c)?) + u8::from(lo.less(c, a)?);
        Ok(if ascents == 2 { 1 } else { -1 })
    }

    fn evaluate(&self, g1: &Element, g2: &Element, g3: &Element) -> Result<i8, GroupError> {
        if g1 == g2 || g2 == g3 || g3 == g1 {
            return Ok(0);
        }
        let group = self.ambient();
        let (h1, h2, h3) = (self.phi.apply(g1)?, self.phi.apply(g2)?, self.phi.apply(g3)?);
        if h1 != h2 && h2 != h3 && h3 != h1 {
            return self.quotient_order.eval(&h1, &h2, &h3);
        }
        let id = group.identity();
        if h1 == h2 && h2 == h3 {
            return self.kernel_secret(&group.left_quotient(g1, g3)?, &id, &group.left_quotient(g1, g2)?);
        }
        // Exactly two images agree: rotate cyclically so that the agreeing
        // pair comes first, in its cyclic order.
        let (a, b) = if h1 == h2 {
            (g1, g2)
        } else if h2 == h3 {
            (g2, g3)
        } else {
            (g3, g1)
        };
        self.kernel_secret(&group.left_quotient(b, a)?, &id, &group.left_quotient(a, b)?)
    }
}

/// The lexicographic circular ordering of a short exact sequence:
///
/// * `c_H(φ(g₁), φ(g₂), φ(g₃))` if the images are distinct;
/// * `c_<(g₂⁻¹g₁, id, g₁⁻¹g₂)` if `φ(g₁) = φ(g₂) ≠ φ(g₃)`;
/// * `c_<(g₁⁻¹g₃, id, g₁⁻¹g₂)` if all three images agree,
///
/// where `c_<` is the secret ordering of the kernel. Triples in which the
/// agreeing pair is not in front are first rotated cyclically.
pub fn lex_circular(ses: &SesData) -> CircularOrdering {
    let s = ses.clone();
    CircularOrdering::from_oracle(
        ses.ambient().clone(),
        Provenance::Lexicographic,
        format!("lex({}, {}, {})", ses.phi.label(), ses.kernel_order.label(), ses.quotient_order.label()),
        move |a, b, c| s.evaluate(a, b, c),
    )
}

/// The sequence `1 → G → G × ℤ/n → ℤ/n → 1` for a left-ordered `G`, with
/// the natural ordering on the quotient.
pub fn product_ses(lo: &LeftOrdering, n: u64) -> Result<SesData, GroupError> {
    let base = lo.group().clone();
    let quotient = Group::cyclic(n)?;
    let ambient = Group::product(base.clone(), quotient.clone());
    let phi = Homomorphism::from_rule("projection", ambient.clone(), quotient, |g| {
        g.as_pair().map(|(_, t)| t.clone()).ok_or_else(|| GroupError::InvalidParameter(format!("{g} is not a pair")))
    });
    let inner = lo.clone();
    let kernel_order = LeftOrdering::from_cone(ambient, lo.label(), move |g| match g.as_pair() {
        Some((x, t)) if t.as_residue() == Some(0) => inner.is_positive(x),
        _ => Err(GroupError::InvalidParameter(format!("{g} is not in the kernel of the projection"))),
    });
    SesData::new(phi, kernel_order, natural_circular_cyclic(n, 1)?)
}

/// The lexicographic ordering of `G × ℤ/n` over the projection to `ℤ/n`.
pub fn product_circular(lo: &LeftOrdering, n: u64) -> Result<CircularOrdering, GroupError> {
    Ok(lex_circular(&product_ses(lo, n)?))
}
