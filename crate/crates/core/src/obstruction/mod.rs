//! Obstruction spectra: `Ob(G) = {n ≥ 2 : G × ℤ/n is not circularly
//! orderable}`, computed up to a cap.
//!
//! Every entry of a [`SpectrumReport`] carries the reason it was placed
//! there. For finite groups the report is decided exactly. For infinite
//! groups entries are decided only by certificates, and anything uncertified
//! stays undetermined.

mod certificate;
mod finite;
mod general;
pub mod promislow;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::ObstructionError;
use crate::group::{Element, Homomorphism};
use crate::orders::{validate_left, LeftOrdering};
use crate::report::{combine, CheckReport};

pub use certificate::{
    exponent_obstruction, verify_unobstructed, ExponentObstruction, LeftOrderEvidence, Relation,
    UnobstructedCertificate, HYPOTHESIS_AMENABLE,
};
pub use finite::{
    brute_force_circular_orders, finite_co_decide, obstruction_finite, torsion_part, TorsionProfile,
    DEFAULT_ENUMERATION_CAP,
};
pub use general::{spectrum_of, torsion_spectrum, GENERIC_RADIUS};

/// Why `n` is obstructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionReason {
    /// `G` is finite and `G × ℤ/n` has no element of order `|G|·n`.
    NotCyclic { product_order: u64, max_element_order: u64 },
    /// `n` is the exponent `e` of the finite abelianization.
    Exponent { e: u64, factors: Vec<u64> },
    /// `n` is a multiple of the obstructed `divisor`.
    Divisibility { divisor: u64 },
    /// `n` is obstructed for the free factor with this index.
    FreeFactor { factor: usize },
    /// `G` has an element of order `order` with `gcd(order, n) ≠ 1`.
    Torsion { witness: Element, order: u64 },
}

impl ObstructionReason {
    pub fn kind(&self) -> &'static str {
        match self {
            ObstructionReason::NotCyclic { .. } => "not-cyclic",
            ObstructionReason::Exponent { .. } => "exponent",
            ObstructionReason::Divisibility { .. } => "divisibility",
            ObstructionReason::FreeFactor { .. } => "free-factor",
            ObstructionReason::Torsion { .. } => "torsion",
        }
    }
}

/// Why `n` is not obstructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnobstructedReason {
    /// `G` is finite and `G × ℤ/n` is cyclic, generated by `generator`.
    Cyclic { generator: Element, order: u64 },
    /// A verified certificate.
    Certificate { summary: CertificateSummary, report: CheckReport },
    /// Unobstructed for every free factor.
    FreeProductComplement,
}

impl UnobstructedReason {
    pub fn kind(&self) -> &'static str {
        match self {
            UnobstructedReason::Cyclic { .. } => "cyclic",
            UnobstructedReason::Certificate { .. } => "certificate",
            UnobstructedReason::FreeProductComplement => "free-product-complement",
        }
    }
}

/// The data of a verified [`UnobstructedCertificate`] that is kept in a
/// report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateSummary {
    pub n: u64,
    pub map: String,
    pub modulus: u64,
    pub iota: u64,
    pub evidence: String,
    pub hypotheses: Vec<String>,
}

/// A partition of `{2, …, cap}` into obstructed, unobstructed and
/// undetermined values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub group: String,
    pub cap: u64,
    pub obstructed: BTreeMap<u64, ObstructionReason>,
    pub unobstructed: BTreeMap<u64, UnobstructedReason>,
    pub undetermined: BTreeSet<u64>,
    /// Assumptions the verdicts depend on that were not checked.
    pub hypotheses: Vec<String>,
}

impl SpectrumReport {
    /// A report with every `n ∈ [2, cap]` undetermined.
    pub fn new(group: impl Into<String>, cap: u64) -> Self {
        SpectrumReport {
            group: group.into(),
            cap,
            obstructed: BTreeMap::new(),
            unobstructed: BTreeMap::new(),
            undetermined: (2..=cap).collect(),
            hypotheses: Vec::new(),
        }
    }

    fn take(&mut self, n: u64) -> Result<(), ObstructionError> {
        if self.obstructed.contains_key(&n) || self.unobstructed.contains_key(&n) {
            return Err(ObstructionError::Inconsistent(format!("{n} was already decided for {}", self.group)));
        }
        if !self.undetermined.remove(&n) {
            return Err(ObstructionError::Inconsistent(format!("{n} is outside [2, {}]", self.cap)));
        }
        Ok(())
    }

    pub fn obstruct(&mut self, n: u64, reason: ObstructionReason) -> Result<(), ObstructionError> {
        self.take(n)?;
        self.obstructed.insert(n, reason);
        Ok(())
    }

    pub fn unobstruct(&mut self, n: u64, reason: UnobstructedReason) -> Result<(), ObstructionError> {
        self.take(n)?;
        self.unobstructed.insert(n, reason);
        Ok(())
    }

    /// Marks every multiple of an obstructed value as obstructed. A multiple
    /// already certified unobstructed means some certificate is wrong.
    pub fn close_divisibility(&mut self) -> Result<(), ObstructionError> {
        let roots: Vec<u64> = self.obstructed.keys().copied().collect();
        for d in roots {
            let mut m = 2 * d;
            while m <= self.cap {
                if self.unobstructed.contains_key(&m) {
                    return Err(ObstructionError::Inconsistent(format!(
                        "{m} is certified unobstructed but its divisor {d} is obstructed"
                    )));
                }
                if self.undetermined.remove(&m) {
                    self.obstructed.insert(m, ObstructionReason::Divisibility { divisor: d });
                }
                m += d;
            }
        }
        Ok(())
    }

    pub fn obstructed_set(&self) -> BTreeSet<u64> {
        self.obstructed.keys().copied().collect()
    }

    pub fn unobstructed_set(&self) -> BTreeSet<u64> {
        self.unobstructed.keys().copied().collect()
    }

    pub fn is_fully_determined(&self) -> bool {
        self.undetermined.is_empty()
    }

    /// The three sets partition `{2, …, cap}`.
    pub fn is_partition(&self) -> bool {
        let mut all: Vec<u64> = self.obstructed.keys().chain(self.unobstructed.keys()).chain(self.undetermined.iter()).copied().collect();
        all.sort_unstable();
        all == (2..=self.cap).collect::<Vec<_>>()
    }

    /// Every multiple (up to the cap) of an obstructed value is obstructed.
    pub fn is_divisibility_closed(&self) -> bool {
        self.obstructed.keys().all(|&d| (2..=self.cap / d).all(|k| self.obstructed.contains_key(&(k * d))))
    }
}

/// `Ob(∗ Gᵢ) = ⋃ Ob(Gᵢ)` on fully determined reports with a common cap.
pub fn free_product_union(spectra: &[SpectrumReport]) -> Result<SpectrumReport, ObstructionError> {
    let first = spectra.first().ok_or_else(|| ObstructionError::NotApplicable("no spectra given".to_string()))?;
    let cap = first.cap;
    for s in spectra {
        if s.cap != cap {
            return Err(ObstructionError::CapMismatch(cap, s.cap));
        }
        if !s.is_fully_determined() {
            return Err(ObstructionError::Undetermined(s.group.clone()));
        }
    }
    let names: Vec<&str> = spectra.iter().map(|s| s.group.as_str()).collect();
    let mut out = SpectrumReport::new(names.join(" * "), cap);
    for n in 2..=cap {
        match spectra.iter().position(|s| s.obstructed.contains_key(&n)) {
            Some(i) => out.obstruct(n, ObstructionReason::FreeFactor { factor: i })?,
            None => out.unobstruct(n, UnobstructedReason::FreeProductComplement)?,
        }
    }
    for s in spectra {
        for h in &s.hypotheses {
            if !out.hypotheses.contains(h) {
                out.hypotheses.push(h.clone());
            }
        }
    }
    Ok(out)
}

/// For `φ: G → H` with left-orderable kernel, `Ob(G) ⊆ Ob(H)`. Checks `φ`
/// and the kernel ordering on `carrier`, then the inclusion on `[2, cap]`.
/// A failure means some input certificate is wrong.
pub fn monotonicity_check(
    phi: &Homomorphism,
    kernel_order: &LeftOrdering,
    carrier: &[Element],
    rep_g: &SpectrumReport,
    rep_h: &SpectrumReport,
) -> Result<CheckReport, ObstructionError> {
    const NAME: &str = "monotonicity";
    if rep_g.cap != rep_h.cap {
        return Err(ObstructionError::CapMismatch(rep_g.cap, rep_h.cap));
    }
    let hom = phi.check_on(carrier)?;
    let mut kernel = Vec::new();
    for g in carrier {
        if phi.is_in_kernel(g)? {
            kernel.push(g.clone());
        }
    }
    let kernel_report = validate_left(kernel_order, &kernel)?;
    let pre = combine("kernel-evidence", &[hom, kernel_report]);
    if !pre.passed() {
        return Ok(combine(NAME, &[pre]));
    }
    let mut checked = 0;
    for n in rep_g.obstructed.keys() {
        checked += 1;
        if !rep_h.obstructed.contains_key(n) {
            return Ok(CheckReport::fail(
                NAME,
                format!("{n} is obstructed for {} but not for {}", rep_g.group, rep_h.group),
                vec![Element::Int(*n as i64)],
                checked,
            ));
        }
    }
    Ok(CheckReport::pass(NAME, checked))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    fn set(xs: &[u64]) -> BTreeSet<u64> {
        xs.iter().copied().collect()
    }

    #[test]
    fn closure_and_partition() {
        let mut r = SpectrumReport::new("x", 12);
        r.obstruct(4, ObstructionReason::Exponent { e: 4, factors: vec![4, 4] }).unwrap();
        r.close_divisibility().unwrap();
        assert_eq!(r.obstructed_set(), set(&[4, 8, 12]));
        assert!(r.is_partition());
        assert!(r.is_divisibility_closed());
        assert!(r.obstruct(4, ObstructionReason::Divisibility { divisor: 2 }).is_err());

        let mut bad = SpectrumReport::new("y", 6);
        bad.unobstruct(6, UnobstructedReason::FreeProductComplement).unwrap();
        bad.obstruct(3, ObstructionReason::Divisibility { divisor: 3 }).unwrap();
        assert!(matches!(bad.close_divisibility(), Err(ObstructionError::Inconsistent(_))));
    }

    #[test]
    fn union_of_cyclic_spectra() {
        let a = obstruction_finite(&Group::Cyclic(2), 12).unwrap();
        let b = obstruction_finite(&Group::Cyclic(3), 12).unwrap();
        let u = free_product_union(&[a.clone(), b]).unwrap();
        assert_eq!(u.obstructed_set(), set(&[2, 3, 4, 6, 8, 9, 10, 12]));
        assert!(u.is_divisibility_closed());
        assert_eq!(free_product_union(std::slice::from_ref(&a)).unwrap().obstructed_set(), a.obstructed_set());
        let c = obstruction_finite(&Group::Cyclic(2), 10).unwrap();
        assert!(matches!(free_product_union(&[a, c]), Err(ObstructionError::CapMismatch(12, 10))));
    }

    #[test]
    fn monotonicity() {
        let z2 = Group::Cyclic(2);
        let z6 = Group::Cyclic(6);
        let inc = Homomorphism::on_generators("inclusion", z2.clone(), z6.clone(), vec![Element::Residue(3)]).unwrap();
        let r2 = obstruction_finite(&z2, 12).unwrap();
        let r6 = obstruction_finite(&z6, 12).unwrap();
        let carrier = z2.elements(10).unwrap();
        let trivial = LeftOrdering::trivial(z2.clone());
        assert!(monotonicity_check(&inc, &trivial, &carrier, &r2, &r6).unwrap().passed());
        let id = Homomorphism::identity(z6.clone());
        let c6 = z6.elements(10).unwrap();
        assert!(monotonicity_check(&id, &LeftOrdering::trivial(z6.clone()), &c6, &r6, &r6).unwrap().passed());
        let swapped = monotonicity_check(&inc, &trivial, &carrier, &r6, &r2).unwrap();
        assert!(!swapped.passed());
        assert_eq!(swapped.counterexample, vec![Element::Int(3)]);
    }
}
