use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{CertificateSummary, ObstructionReason, SpectrumReport, UnobstructedReason};
use crate::error::ObstructionError;
use crate::group::{abelianization, Element, Group, Homomorphism, Presentation, Word, DEFAULT_BALL_LIMIT};
use crate::orders::{validate_left, LeftOrdering};
use crate::report::{combine, CheckReport};

/// The hypothesis under which certificates and the exponent obstruction are
/// sound. It is recorded on every verdict and never checked.
pub const HYPOTHESIS_AMENABLE: &str = "G is countable and amenable (recorded, not verified)";
const HYPOTHESIS_FINITELY_GENERATED: &str = "G is finitely generated (holds: finite presentation)";
const HYPOTHESIS_CO: &str = "G is circularly orderable (recorded, not verified)";

/// An identity `lhs = rhs` between words in a list of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Relation { lhs, rhs }
    }
}

/// Why the preimage `φ⁻¹(H)` is left orderable.
#[derive(Clone, Debug)]
pub enum LeftOrderEvidence {
    /// The preimage is trivial.
    Trivial,
    /// An explicit positive cone, validated on the preimage part of the carrier.
    Cone(LeftOrdering),
    /// A named poly-ℤ structure: the generators lie in the preimage, the
    /// relations hold, and the generators' ball of `generation_radius`
    /// covers the preimage part of the carrier.
    PolyZ { name: String, generators: Vec<Element>, relations: Vec<Relation>, generation_radius: usize },
}

impl LeftOrderEvidence {
    pub fn kind(&self) -> &'static str {
        match self {
            LeftOrderEvidence::Trivial => "trivial",
            LeftOrderEvidence::Cone(_) => "cone",
            LeftOrderEvidence::PolyZ { .. } => "poly-z",
        }
    }

    fn describe(&self) -> String {
        match self {
            LeftOrderEvidence::Trivial => "trivial preimage".to_string(),
            LeftOrderEvidence::Cone(lo) => format!("cone {}", lo.label()),
            LeftOrderEvidence::PolyZ { name, generators, .. } => {
                format!("poly-Z chain {name} on {} generators", generators.len())
            }
        }
    }
}

/// Evidence that `n ∉ Ob(G)`: a homomorphism `φ: G → ℤ/M`, an element `ι`
/// of order `n` generating `H ⊆ ℤ/M`, and evidence that `φ⁻¹(H)` is left
/// orderable. Then `(g, t) ↦ φ(g) + t·ι` maps `G × ℤ/n` onto `ℤ/M` with
/// kernel isomorphic to `φ⁻¹(H)`, and the lexicographic construction orders
/// `G × ℤ/n` circularly.
#[derive(Clone, Debug)]
pub struct UnobstructedCertificate {
    pub n: u64,
    pub phi: Homomorphism,
    pub iota: u64,
    pub evidence: LeftOrderEvidence,
    pub hypotheses: Vec<String>,
}

impl UnobstructedCertificate {
    pub fn new(n: u64, phi: Homomorphism, iota: u64, evidence: LeftOrderEvidence) -> Self {
        UnobstructedCertificate { n, phi, iota, evidence, hypotheses: vec![HYPOTHESIS_AMENABLE.to_string()] }
    }

    pub fn group(&self) -> &Group {
        self.phi.source()
    }

    /// `M`, the order of the cyclic target.
    pub fn modulus(&self) -> Result<u64, ObstructionError> {
        match self.phi.target() {
            Group::Cyclic(m) => Ok(*m),
            other => Err(ObstructionError::NotApplicable(format!("certificate target {other} is not cyclic"))),
        }
    }

    pub fn summary(&self) -> Result<CertificateSummary, ObstructionError> {
        Ok(CertificateSummary {
            n: self.n,
            map: self.phi.label().to_string(),
            modulus: self.modulus()?,
            iota: self.iota,
            evidence: self.evidence.describe(),
            hypotheses: self.hypotheses.clone(),
        })
    }

    fn in_preimage(&self, g: &Element, modulus: u64) -> Result<bool, ObstructionError> {
        let step = self.iota.gcd(&modulus);
        let r = self.phi.apply(g)?.as_residue().expect("target is cyclic");
        Ok(r % step == 0)
    }

    /// Places `n` in the unobstructed set of `report` if the certificate
    /// verifies on `carrier`; returns the verification report either way.
    pub fn apply_to(&self, report: &mut SpectrumReport, carrier: &[Element]) -> Result<CheckReport, ObstructionError> {
        let check = verify_unobstructed(self, carrier)?;
        if check.passed() {
            report.unobstruct(self.n, UnobstructedReason::Certificate { summary: self.summary()?, report: check.clone() })?;
            for h in &self.hypotheses {
                if !report.hypotheses.contains(h) {
                    report.hypotheses.push(h.clone());
                }
            }
        }
        Ok(check)
    }
}

/// Verifies a certificate on a finite carrier of `G`: `φ` is a homomorphism
/// there, `ι` has order `n`, `(g, t) ↦ φ(g) + t·ι` hits every residue, and the
/// evidence holds on the carrier elements of `φ⁻¹(⟨ι⟩)`.
pub fn verify_unobstructed(cert: &UnobstructedCertificate, carrier: &[Element]) -> Result<CheckReport, ObstructionError> {
    let m = cert.modulus()?;
    if cert.iota >= m {
        return Err(ObstructionError::NotApplicable(format!("iota = {} is not a residue mod {m}", cert.iota)));
    }
    let mut parts = vec![cert.phi.check_on(carrier)?];

    let iota_order = m / cert.iota.gcd(&m);
    parts.push(if iota_order == cert.n {
        CheckReport::pass("subgroup-order", 1)
    } else {
        CheckReport::fail(
            "subgroup-order",
            format!("iota = {} has order {iota_order} in Z/{m}, not {}", cert.iota, cert.n),
            vec![Element::Residue(cert.iota)],
            1,
        )
    });

    // Surjectivity of the combined map: the images of the carrier plus ⟨ι⟩.
    let mut image = BTreeSet::new();
    let mut phi_image = BTreeSet::new();
    for g in carrier {
        let r = cert.phi.apply(g)?.as_residue().expect("target is cyclic");
        phi_image.insert(r);
        for t in 0..iota_order {
            image.insert(((r as u128 + t as u128 * cert.iota as u128) % m as u128) as u64);
        }
    }
    let surjective = match (0..m).find(|r| !image.contains(r)) {
        None => CheckReport::pass("surjectivity", carrier.len() as u64),
        Some(r) => CheckReport::fail(
            "surjectivity",
            "(g, t) -> phi(g) + t*iota is onto Z/M on the carrier",
            vec![Element::Residue(r)],
            carrier.len() as u64,
        ),
    };
    let surjective = if phi_image.len() as u64 == m {
        surjective.with_note("phi alone is onto on the carrier")
    } else {
        surjective.with_note("surjectivity checked for the combined map (g, t) -> phi(g) + t*iota")
    };
    parts.push(surjective);

    let mut preimage = Vec::new();
    for g in carrier {
        if cert.in_preimage(g, m)? {
            preimage.push(g.clone());
        }
    }
    parts.push(check_evidence(cert, &preimage, m)?);

    let mut report = combine("unobstructed-certificate", &parts);
    for h in &cert.hypotheses {
        report = report.with_note(h.clone());
    }
    Ok(report)
}

fn check_evidence(cert: &UnobstructedCertificate, preimage: &[Element], m: u64) -> Result<CheckReport, ObstructionError> {
    let group = cert.group();
    match &cert.evidence {
        LeftOrderEvidence::Trivial => Ok(match preimage.iter().find(|g| !group.is_identity(g)) {
            None => CheckReport::pass("trivial-preimage", preimage.len() as u64),
            Some(g) => CheckReport::fail("trivial-preimage", "phi^-1(H) = {id}", vec![g.clone()], preimage.len() as u64),
        }),
        LeftOrderEvidence::Cone(lo) => {
            if lo.group() != group {
                return Err(ObstructionError::NotApplicable(format!("cone is on {}, not {group}", lo.group())));
            }
            Ok(validate_left(lo, preimage)?)
        }
        LeftOrderEvidence::PolyZ { name, generators, relations, generation_radius } => {
            let mut parts = Vec::new();
            let mut checked = 0;
            let mut outside = None;
            for g in generators {
                checked += 1;
                if !cert.in_preimage(g, m)? {
                    outside = Some(g.clone());
                    break;
                }
            }
            parts.push(match outside {
                None => CheckReport::pass("generators-in-preimage", checked),
                Some(g) => CheckReport::fail("generators-in-preimage", "every chain generator lies in phi^-1(H)", vec![g], checked),
            });

            let mut failed = None;
            for (i, r) in relations.iter().enumerate() {
                let lhs = group.eval_word(&r.lhs, generators)?;
                let rhs = group.eval_word(&r.rhs, generators)?;
                if lhs != rhs {
                    failed = Some((i, lhs, rhs));
                    break;
                }
            }
            parts.push(match failed {
                None => CheckReport::pass("chain-relations", relations.len() as u64),
                Some((i, lhs, rhs)) => CheckReport::fail(
                    "chain-relations",
                    format!("relation {i} of {name} holds"),
                    vec![lhs, rhs],
                    i as u64 + 1,
                ),
            });

            let ball = group.ball(generators, *generation_radius, DEFAULT_BALL_LIMIT)?;
            parts.push(match preimage.iter().find(|g| !ball.contains(g)) {
                None => CheckReport::pass("chain-generation", preimage.len() as u64),
                Some(g) => CheckReport::fail(
                    "chain-generation",
                    format!("preimage elements lie within radius {generation_radius} of the chain generators"),
                    vec![g.clone()],
                    preimage.len() as u64,
                ),
            });
            Ok(combine("poly-z-evidence", &parts).with_note(format!("poly-Z structure: {name}")))
        }
    }
}

/// The exponent `e` of a finite abelianization, with the hypotheses under
/// which `e ∈ Ob(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentObstruction {
    pub e: u64,
    pub factors: Vec<u64>,
    pub hypotheses: Vec<String>,
}

impl ExponentObstruction {
    /// Records `e` as obstructed in `report` (when `e` is within its cap).
    pub fn apply_to(&self, report: &mut SpectrumReport) -> Result<(), ObstructionError> {
        if self.e <= report.cap {
            report.obstruct(self.e, ObstructionReason::Exponent { e: self.e, factors: self.factors.clone() })?;
        }
        for h in &self.hypotheses {
            if !report.hypotheses.contains(h) {
                report.hypotheses.push(h.clone());
            }
        }
        Ok(())
    }
}

/// For a finitely generated amenable circularly orderable `G` with finite
/// abelianization of exponent `e`, `e ∈ Ob(G)`.
pub fn exponent_obstruction(p: &Presentation) -> Result<ExponentObstruction, ObstructionError> {
    let ab = abelianization(p);
    let e = ab
        .exponent()
        .ok_or_else(|| ObstructionError::NotApplicable("the abelianization is infinite".to_string()))?;
    let e = e.to_u64().ok_or_else(|| ObstructionError::NotApplicable(format!("exponent {e} does not fit in u64")))?;
    if e < 2 {
        return Err(ObstructionError::NotApplicable("the abelianization is trivial".to_string()));
    }
    let factors = ab.factors_u64().expect("finite factors fit once the exponent does");
    Ok(ExponentObstruction {
        e,
        factors,
        hypotheses: vec![
            HYPOTHESIS_FINITELY_GENERATED.to_string(),
            HYPOTHESIS_AMENABLE.to_string(),
            HYPOTHESIS_CO.to_string(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn exponents() {
        let prom = exponent_obstruction(&Presentation::promislow()).unwrap();
        assert_eq!(prom.e, 4);
        assert_eq!(prom.factors, vec![4, 4]);
        assert!(prom.hypotheses.iter().any(|h| h == HYPOTHESIS_AMENABLE));
        let z5 = exponent_obstruction(&Presentation::parse("gens: a\nrel: a a a a a").unwrap()).unwrap();
        assert_eq!(z5.e, 5);
        let z2 = Presentation::parse("gens: a b\nrel: a b A B").unwrap();
        assert!(matches!(exponent_obstruction(&z2), Err(ObstructionError::NotApplicable(_))));
    }

    fn z5_to_z10() -> Homomorphism {
        Homomorphism::on_generators("x2", Group::Cyclic(5), Group::Cyclic(10), vec![Element::Residue(2)]).unwrap()
    }

    #[test]
    fn finite_certificate() {
        // ℤ/5 × ℤ/2 ≅ ℤ/10 via (g, t) ↦ 2g + 5t, whose kernel is trivial.
        let carrier = Group::Cyclic(5).elements(10).unwrap();
        let cert = UnobstructedCertificate::new(2, z5_to_z10(), 5, LeftOrderEvidence::Trivial);
        let r = verify_unobstructed(&cert, &carrier).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.notes.iter().any(|n| n == HYPOTHESIS_AMENABLE));

        let wrong_order = UnobstructedCertificate::new(5, z5_to_z10(), 5, LeftOrderEvidence::Trivial);
        assert_eq!(verify_unobstructed(&wrong_order, &carrier).unwrap().status, Status::Fail);
        // ℤ/5 × ℤ/5 is not cyclic: ι = 2 has order 5 but the preimage is all of ℤ/5.
        let not_trivial = UnobstructedCertificate::new(5, z5_to_z10(), 2, LeftOrderEvidence::Trivial);
        assert_eq!(verify_unobstructed(&not_trivial, &carrier).unwrap().status, Status::Fail);
    }

    #[test]
    fn cone_evidence() {
        // ℤ → ℤ/2 by reduction with ι = 1: the preimage is all of ℤ.
        let proj =
            Homomorphism::on_generators("proj", Group::Integers, Group::Cyclic(2), vec![Element::Residue(1)]).unwrap();
        let carrier: Vec<Element> = (-5..=5).map(Element::Int).collect();
        let good = UnobstructedCertificate::new(2, proj.clone(), 1, LeftOrderEvidence::Cone(LeftOrdering::integers()));
        assert!(verify_unobstructed(&good, &carrier).unwrap().passed());
        // A cone that is not closed under products.
        let bad_cone = LeftOrdering::from_cone(Group::Integers, "odd", |x| Ok(x.as_int().unwrap().rem_euclid(2) == 1));
        let bad = UnobstructedCertificate::new(2, proj, 1, LeftOrderEvidence::Cone(bad_cone));
        let r = verify_unobstructed(&bad, &carrier).unwrap();
        assert_eq!(r.status, Status::Fail);
    }
}
