use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::GroupError;
use crate::group::{Element, Group, Presentation};
use crate::report::CheckReport;

type Rule = Arc<dyn Fn(&Element) -> Result<Element, GroupError> + Send + Sync>;

/// A group homomorphism.
///
/// Built either from images of the source's standard generators (checked
/// against the source presentation when it is constructed) or from a
/// closed-form rule on canonical forms. Rules are only trusted after
/// [`Homomorphism::check_on`] has been run on a carrier.
#[derive(Clone)]
pub struct Homomorphism {
    source: Group,
    target: Group,
    label: String,
    images: Option<Vec<Element>>,
    rule: Option<Rule>,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Homomorphism")
            .field("label", &self.label)
            .field("source", &self.source)
            .field("target", &self.target)
            .field("images", &self.images)
            .finish()
    }
}

/// Checks that every relator of `presentation` maps to the identity of
/// `target` under `images`.
pub fn check_relators(presentation: &Presentation, target: &Group, images: &[Element]) -> Result<(), GroupError> {
    if images.len() != presentation.generator_count() {
        return Err(GroupError::InvalidHomomorphism(format!(
            "{} generator images for {} generators",
            images.len(),
            presentation.generator_count()
        )));
    }
    for img in images {
        if !target.contains(img) {
            return Err(target.mismatch(img));
        }
    }
    for r in presentation.relators() {
        let value = target.eval_word(r, images)?;
        if !target.is_identity(&value) {
            return Err(GroupError::InvalidHomomorphism(format!(
                "relator `{}` maps to {value}, not the identity",
                presentation.format_word(r)
            )));
        }
    }
    Ok(())
}

impl Homomorphism {
    /// Homomorphism given by images of `source.standard_generators()`.
    pub fn on_generators(
        label: impl Into<String>,
        source: Group,
        target: Group,
        images: Vec<Element>,
    ) -> Result<Self, GroupError> {
        let presentation = source.presentation().ok_or_else(|| {
            GroupError::InvalidHomomorphism(format!("{source} has no presentation; use a rule"))
        })?;
        check_relators(&presentation, &target, &images)?;
        Ok(Homomorphism { source, target, label: label.into(), images: Some(images), rule: None })
    }

    /// Homomorphism given by a rule on canonical forms.
    pub fn from_rule<F>(label: impl Into<String>, source: Group, target: Group, rule: F) -> Self
    where
        F: Fn(&Element) -> Result<Element, GroupError> + Send + Sync + 'static,
    {
        Homomorphism { source, target, label: label.into(), images: None, rule: Some(Arc::new(rule)) }
    }

    /// Attaches generator images to a rule-based map; they are checked
    /// against the source presentation and, by [`Homomorphism::check_on`],
    /// against the rule.
    pub fn with_generator_images(mut self, images: Vec<Element>) -> Result<Self, GroupError> {
        if let Some(p) = self.source.presentation() {
            check_relators(&p, &self.target, &images)?;
        }
        self.images = Some(images);
        Ok(self)
    }

    pub fn identity(group: Group) -> Self {
        Homomorphism::from_rule("identity", group.clone(), group, |g| Ok(g.clone()))
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generator_images(&self) -> Option<&[Element]> {
        self.images.as_deref()
    }

    pub fn apply(&self, g: &Element) -> Result<Element, GroupError> {
        if !self.source.contains(g) {
            return Err(self.source.mismatch(g));
        }
        match (&self.rule, &self.images) {
            (Some(rule), _) => rule(g),
            (None, Some(images)) => self.target.eval_word(&self.source.express(g)?, images),
            (None, None) => unreachable!("constructors always set a rule or images"),
        }
    }

    pub fn is_in_kernel(&self, g: &Element) -> Result<bool, GroupError> {
        Ok(self.target.is_identity(&self.apply(g)?))
    }

    pub fn compose(&self, then: &Homomorphism) -> Result<Homomorphism, GroupError> {
        if self.target != then.source {
            return Err(GroupError::InvalidHomomorphism(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, then.source, then.target
            )));
        }
        let (first, second) = (self.clone(), then.clone());
        Ok(Homomorphism::from_rule(
            format!("{} ∘ {}", then.label, self.label),
            self.source.clone(),
            then.target.clone(),
            move |g| second.apply(&first.apply(g)?),
        ))
    }

    /// Verifies `f(gh) = f(g)f(h)` for all `g, h` in `carrier`, and that the
    /// rule agrees with the declared generator images.
    pub fn check_on(&self, carrier: &[Element]) -> Result<CheckReport, GroupError> {
        let name = format!("homomorphism {}", self.label);
        let mut checked = 0u64;
        if let (Some(_), Some(images)) = (&self.rule, &self.images) {
            let gens = self.source.standard_generators();
            for (g, img) in gens.iter().zip(images) {
                checked += 1;
                if &self.apply(g)? != img {
                    return Ok(CheckReport::fail(name, "generator image", alloc::vec![g.clone()], checked));
                }
            }
        }
        let values = carrier.iter().map(|g| self.apply(g)).collect::<Result<Vec<_>, _>>()?;
        for v in &values {
            if !self.target.contains(v) {
                return Ok(CheckReport::fail(name, "image outside target", alloc::vec![v.clone()], checked));
            }
        }
        for (i, g) in carrier.iter().enumerate() {
            for (j, h) in carrier.iter().enumerate() {
                checked += 1;
                let lhs = self.apply(&self.source.op(g, h)?)?;
                let rhs = self.target.op(&values[i], &values[j])?;
                if lhs != rhs {
                    return Ok(CheckReport::fail(name, "f(gh) = f(g)f(h)", alloc::vec![g.clone(), h.clone()], checked));
                }
            }
        }
        Ok(CheckReport::pass(name, checked))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{promislow, DEFAULT_BALL_LIMIT};

    #[test]
    fn relator_validation_is_eager() {
        let ok = Homomorphism::on_generators("q", Group::Cyclic(6), Group::Cyclic(3), alloc::vec![Element::Residue(1)]);
        assert!(ok.is_ok());
        let bad = Homomorphism::on_generators("q", Group::Cyclic(6), Group::Cyclic(4), alloc::vec![Element::Residue(1)]);
        assert!(matches!(bad, Err(GroupError::InvalidHomomorphism(_))));
    }

    #[test]
    fn promislow_to_z4() {
        let psi = Homomorphism::on_generators(
            "psi",
            Group::Promislow,
            Group::Cyclic(4),
            alloc::vec![Element::Residue(1), Element::Residue(0)],
        )
        .unwrap();
        let g = Group::Promislow;
        let ball = g.ball(&g.standard_generators(), 3, DEFAULT_BALL_LIMIT).unwrap();
        assert!(psi.check_on(ball.elements()).unwrap().passed());
        // b ↦ 1 sends ab²a⁻¹b² to 4 in ℤ/8.
        assert!(Homomorphism::on_generators(
            "bad",
            Group::Promislow,
            Group::Cyclic(8),
            alloc::vec![Element::Residue(0), Element::Residue(1)],
        )
        .is_err());
        assert_eq!(psi.apply(&promislow::generator_a()).unwrap(), Element::Residue(1));
    }

    #[test]
    fn broken_rule_detected() {
        let f = Homomorphism::from_rule("square", Group::Integers, Group::Integers, |g| {
            let k = g.as_int().unwrap();
            Ok(Element::Int(k * k))
        });
        let carrier: Vec<Element> = (-2..=2).map(Element::Int).collect();
        let r = f.check_on(&carrier).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn rule_must_match_images() {
        let f = Homomorphism::from_rule("double", Group::Integers, Group::Integers, |g| {
            Ok(Element::Int(2 * g.as_int().unwrap()))
        })
        .with_generator_images(alloc::vec![Element::Int(3)])
        .unwrap();
        assert!(!f.check_on(&[Element::Int(0)]).unwrap().passed());
    }
}
