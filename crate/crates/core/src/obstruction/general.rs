use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use super::certificate::{LeftOrderEvidence, UnobstructedCertificate};
use super::finite::{obstruction_finite, torsion_part, TorsionProfile};
use super::promislow::promislow_spectrum;
use super::{ObstructionReason, SpectrumReport};
use crate::error::{GroupError, ObstructionError};
use crate::group::{Element, Group, Homomorphism, DEFAULT_BALL_LIMIT};
use crate::orders::LeftOrdering;

/// Radius of the standard-generator ball used as carrier and torsion search
/// space for infinite groups.
pub const GENERIC_RADIUS: usize = 2;

const UNDETERMINED_NOTE: &str =
    "values outside the torsion part are undetermined: no certificate procedure is known for this group";

/// The built-in left ordering of a group known to be left orderable.
fn known_left_order(group: &Group) -> Option<LeftOrdering> {
    match group {
        Group::Integers => Some(LeftOrdering::integers()),
        Group::FreeAbelian(k) => Some(LeftOrdering::free_abelian_standard(*k)),
        _ => None,
    }
}

/// The best spectrum the crate can certify for a group:
///
/// * finite groups: exact;
/// * the Promislow group: exact, by the worked example;
/// * `ℤ` and `ℤᵏ`: empty, every `n` certified through the trivial map;
/// * `L × ℤ/m` and `ℤ/m × L` with `L = ℤ, ℤᵏ`: exact, the torsion part;
/// * anything else: the torsion part found on a ball, the rest undetermined.
pub fn spectrum_of(group: &Group, cap: u64) -> Result<SpectrumReport, ObstructionError> {
    if group.is_finite() {
        return obstruction_finite(group, cap);
    }
    if *group == Group::Promislow {
        return promislow_spectrum(cap);
    }
    if let Some(lo) = known_left_order(group) {
        return left_orderable_spectrum(group, &lo, cap);
    }
    if let Group::Product(a, b) = group {
        match (known_left_order(a), &**b, &**a, known_left_order(b)) {
            (Some(lo), Group::Cyclic(m), _, _) => return mixed_spectrum(group, &lo, *m, false, cap),
            (_, _, Group::Cyclic(m), Some(lo)) => return mixed_spectrum(group, &lo, *m, true, cap),
            _ => {}
        }
    }
    torsion_spectrum(group, cap, GENERIC_RADIUS)
}

fn standard_ball(group: &Group, radius: usize) -> Result<Vec<Element>, GroupError> {
    Ok(group.ball(&group.standard_generators(), radius, DEFAULT_BALL_LIMIT)?.elements().to_vec())
}

/// A left-orderable `G` has `Ob(G) = ∅`: for each `n`, the zero map to `ℤ/n`
/// with `ι = 1` has preimage `G`.
fn left_orderable_spectrum(group: &Group, lo: &LeftOrdering, cap: u64) -> Result<SpectrumReport, ObstructionError> {
    let carrier = standard_ball(group, GENERIC_RADIUS)?;
    let mut report = SpectrumReport::new(group.to_string(), cap);
    let zeros = vec![Element::Residue(0); group.standard_generators().len()];
    for n in 2..=cap {
        let phi = Homomorphism::on_generators(format!("zero into Z/{n}"), group.clone(), Group::Cyclic(n), zeros.clone())?;
        let cert = UnobstructedCertificate::new(n, phi, 1, LeftOrderEvidence::Cone(lo.clone()));
        require(n, cert.apply_to(&mut report, &carrier)?.passed())?;
    }
    Ok(report)
}

/// `G = L × ℤ/m` (or `ℤ/m × L`): `n` with `gcd(n, m) ≠ 1` is torsion
/// obstructed; otherwise `(l, f) ↦ n·f` into `ℤ/mn` with `ι = m` has
/// preimage `L × {0}`.
fn mixed_spectrum(
    group: &Group,
    lo: &LeftOrdering,
    m: u64,
    cyclic_first: bool,
    cap: u64,
) -> Result<SpectrumReport, ObstructionError> {
    let carrier = standard_ball(group, GENERIC_RADIUS)?;
    let mut report = SpectrumReport::new(group.to_string(), cap);
    let lo_gens = lo.group().standard_generators().len();
    let ambient = group.clone();
    let split = move |g: &Element| -> Result<(Element, u64), GroupError> {
        let (x, y) = g.as_pair().ok_or_else(|| ambient.mismatch(g))?;
        let (l, f) = if cyclic_first { (y, x) } else { (x, y) };
        Ok((l.clone(), f.as_residue().ok_or_else(|| ambient.mismatch(g))?))
    };
    let generator = if cyclic_first {
        Element::pair(Element::Residue(1 % m), lo.group().identity())
    } else {
        Element::pair(lo.group().identity(), Element::Residue(1 % m))
    };
    let inner = lo.clone();
    let cone = LeftOrdering::from_cone(group.clone(), format!("{} on {}", lo.label(), lo.group()), move |g| {
        let (l, f) = split(g)?;
        if f != 0 {
            return Err(GroupError::InvalidParameter(format!("{g} has a nonzero torsion coordinate")));
        }
        inner.is_positive(&l)
    });
    for n in 2..=cap {
        if n.gcd(&m) != 1 {
            report.obstruct(n, ObstructionReason::Torsion { witness: generator.clone(), order: m })?;
            continue;
        }
        let mut images = vec![Element::Residue(0); lo_gens];
        let torsion_image = Element::Residue(n % (m * n));
        if cyclic_first {
            images.insert(0, torsion_image);
        } else {
            images.push(torsion_image);
        }
        let phi = Homomorphism::on_generators(format!("{n}*torsion into Z/{}", m * n), group.clone(), Group::Cyclic(m * n), images)?;
        let cert = UnobstructedCertificate::new(n, phi, m, LeftOrderEvidence::Cone(cone.clone()));
        require(n, cert.apply_to(&mut report, &carrier)?.passed())?;
    }
    report.close_divisibility()?;
    Ok(report)
}

fn require(n: u64, passed: bool) -> Result<(), ObstructionError> {
    if passed {
        Ok(())
    } else {
        Err(ObstructionError::Inconsistent(format!("built-in certificate for n = {n} failed to verify")))
    }
}

/// The torsion part found on the ball of `radius`; everything else is left
/// undetermined.
pub fn torsion_spectrum(group: &Group, cap: u64, radius: usize) -> Result<SpectrumReport, ObstructionError> {
    let ball = standard_ball(group, radius)?;
    let profile = TorsionProfile::from_elements(group, &ball, cap)?;
    let mut report = SpectrumReport::new(group.to_string(), cap);
    for n in torsion_part(&profile, cap) {
        let (order, witness) = profile
            .witnesses()
            .find(|(k, _)| *k > 1 && k.gcd(&n) != 1)
            .expect("n is in the torsion part");
        report.obstruct(n, ObstructionReason::Torsion { witness: witness.clone(), order })?;
    }
    report.close_divisibility()?;
    if !report.is_fully_determined() {
        report.hypotheses.push(UNDETERMINED_NOTE.to_string());
    }
    Ok(report)
}
