use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_integer::Integer;

use super::{ObstructionReason, SpectrumReport, UnobstructedReason};
use crate::error::ObstructionError;
use crate::group::{Element, Group};
use crate::orders::{validate_circular, CircularTable, ValidateOptions};

/// Default group-order cap for [`brute_force_circular_orders`].
pub const DEFAULT_ENUMERATION_CAP: u64 = 8;

/// Largest finite group [`TorsionProfile::of_finite`] and the finite
/// spectrum computations will enumerate.
const FINITE_ENUMERATION_LIMIT: usize = 1 << 16;

/// Element orders realized in a group, each with a stored witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionProfile {
    group: Group,
    search_cap: u64,
    witnesses: BTreeMap<u64, Element>,
}

impl TorsionProfile {
    /// Orders of all elements of a finite group.
    pub fn of_finite(group: &Group) -> Result<Self, ObstructionError> {
        let order = group.order().ok_or_else(|| ObstructionError::NotApplicable(format!("{group} is not finite")))?;
        let elements = group.elements(FINITE_ENUMERATION_LIMIT)?;
        TorsionProfile::from_elements(group, &elements, order)
    }

    /// Orders (at most `search_cap`) of the given elements; elements of
    /// larger or infinite order contribute nothing.
    pub fn from_elements(group: &Group, elements: &[Element], search_cap: u64) -> Result<Self, ObstructionError> {
        let mut witnesses = BTreeMap::new();
        witnesses.insert(1, group.identity());
        for g in elements {
            if let Some(k) = group.element_order(g, search_cap)? {
                witnesses.entry(k).or_insert_with(|| g.clone());
            }
        }
        Ok(TorsionProfile { group: group.clone(), search_cap, witnesses })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn search_cap(&self) -> u64 {
        self.search_cap
    }

    pub fn orders(&self) -> BTreeSet<u64> {
        self.witnesses.keys().copied().collect()
    }

    pub fn witness(&self, k: u64) -> Option<&Element> {
        self.witnesses.get(&k)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = (u64, &Element)> {
        self.witnesses.iter().map(|(k, g)| (*k, g))
    }
}

/// `{n ∈ [2, cap] : gcd(k, n) ≠ 1 for some realized order k > 1}`.
pub fn torsion_part(profile: &TorsionProfile, cap: u64) -> BTreeSet<u64> {
    (2..=cap).filter(|n| profile.witnesses.keys().any(|&k| k > 1 && k.gcd(n) != 1)).collect()
}

/// A finite group is circularly orderable iff it is cyclic, i.e. some element
/// has order `|G|`.
pub fn finite_co_decide(group: &Group) -> Result<bool, ObstructionError> {
    let order = group.order().ok_or_else(|| ObstructionError::NotApplicable(format!("{group} is not finite")))?;
    Ok(TorsionProfile::of_finite(group)?.witnesses.contains_key(&order))
}

/// Every circular ordering of a finite group with at most `cap` elements, as
/// explicit tables sorted by arrangement.
///
/// Each cyclic arrangement with the identity first is tried. Arrangements
/// whose left translates by the generators are not rotations of themselves
/// are discarded at once; the rest are validated exhaustively.
pub fn brute_force_circular_orders(group: &Group, cap: u64) -> Result<Vec<CircularTable>, ObstructionError> {
    let order = group.order().ok_or_else(|| ObstructionError::NotApplicable(format!("{group} is not finite")))?;
    if order > cap {
        return Err(ObstructionError::EnumerationCap { order, cap });
    }
    let id = group.identity();
    let rest: Vec<Element> = group.elements(cap as usize)?.into_iter().filter(|g| *g != id).collect();
    let generators = group.standard_generators();
    let opts = ValidateOptions { exhaustive_limit: (order as usize).max(1), ..ValidateOptions::default() };

    let mut found = Vec::new();
    let mut perm: Vec<usize> = (0..rest.len()).collect();
    loop {
        let mut arrangement = Vec::with_capacity(order as usize);
        arrangement.push(id.clone());
        arrangement.extend(perm.iter().map(|&i| rest[i].clone()));
        if translates_rotate(group, &generators, &arrangement)? {
            let table = CircularTable::from_arrangement(group.clone(), arrangement)?;
            if validate_circular(&table.to_ordering(), table.carrier(), opts)?.passed() {
                found.push(table);
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(found)
}

/// Whether `x·arrangement` is a rotation of `arrangement` for every `x`.
fn translates_rotate(group: &Group, generators: &[Element], arrangement: &[Element]) -> Result<bool, ObstructionError> {
    let n = arrangement.len();
    for x in generators {
        let moved: Vec<Element> = arrangement.iter().map(|g| group.op(x, g)).collect::<Result<_, _>>()?;
        let Some(shift) = arrangement.iter().position(|g| *g == moved[0]) else { return Ok(false) };
        if (0..n).any(|i| moved[i] != arrangement[(i + shift) % n]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Advances to the next permutation in lexicographic order.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("v[i] qualifies");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The exact spectrum of a finite group: `G × ℤ/n` is circularly orderable
/// iff it is cyclic, iff some `lcm(ord g, n)` reaches `|G|·n`.
pub fn obstruction_finite(group: &Group, cap: u64) -> Result<SpectrumReport, ObstructionError> {
    let order = group.order().ok_or_else(|| ObstructionError::NotApplicable(format!("{group} is not finite")))?;
    let profile = TorsionProfile::of_finite(group)?;
    let mut report = SpectrumReport::new(group.to_string(), cap);
    for n in 2..=cap {
        let product_order = order * n;
        let (best, witness) = profile
            .witnesses()
            .map(|(k, g)| (k.lcm(&n), g))
            .max_by_key(|(l, _)| *l)
            .expect("the identity is always a witness");
        if best == product_order {
            let generator = Element::pair(witness.clone(), Element::Residue(1));
            report.unobstruct(n, UnobstructedReason::Cyclic { generator, order: product_order })?;
        } else {
            report.obstruct(n, ObstructionReason::NotCyclic { product_order, max_element_order: best })?;
        }
    }
    if !report.is_divisibility_closed() {
        return Err(ObstructionError::Inconsistent("finite spectrum is not closed under multiples".to_string()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::validate_circular;
    use alloc::vec;

    fn set(xs: &[u64]) -> BTreeSet<u64> {
        xs.iter().copied().collect()
    }

    #[test]
    fn torsion_parts() {
        let z6 = TorsionProfile::of_finite(&Group::Cyclic(6)).unwrap();
        assert_eq!(z6.orders(), set(&[1, 2, 3, 6]));
        assert_eq!(torsion_part(&z6, 10), set(&[2, 3, 4, 6, 8, 9, 10]));
        for (k, g) in z6.witnesses() {
            assert_eq!(Group::Cyclic(6).element_order(g, 6).unwrap(), Some(k));
        }
        let z5 = TorsionProfile::of_finite(&Group::Cyclic(5)).unwrap();
        assert_eq!(torsion_part(&z5, 12), set(&[5, 10]));
        let free = TorsionProfile::from_elements(&Group::Integers, &[Element::Int(3), Element::Int(-1)], 50).unwrap();
        assert_eq!(free.orders(), set(&[1]));
        assert!(torsion_part(&free, 30).is_empty());
    }

    #[test]
    fn finite_decision() {
        assert!(finite_co_decide(&Group::Cyclic(8)).unwrap());
        assert!(!finite_co_decide(&Group::klein4()).unwrap());
        assert!(finite_co_decide(&Group::product(Group::Cyclic(2), Group::Cyclic(3))).unwrap());
        assert!(finite_co_decide(&Group::trivial()).unwrap());
        assert!(finite_co_decide(&Group::Integers).is_err());
    }

    #[test]
    fn brute_force_counts() {
        let counts: Vec<usize> =
            (2..=7).map(|n| brute_force_circular_orders(&Group::Cyclic(n), 8).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 2, 4, 2, 6]);
        assert!(brute_force_circular_orders(&Group::klein4(), 8).unwrap().is_empty());
        let z2z4 = Group::product(Group::Cyclic(2), Group::Cyclic(4));
        assert!(brute_force_circular_orders(&z2z4, 8).unwrap().is_empty());
        assert!(matches!(
            brute_force_circular_orders(&Group::Cyclic(9), 8),
            Err(ObstructionError::EnumerationCap { order: 9, cap: 8 })
        ));
        let z3 = brute_force_circular_orders(&Group::Cyclic(3), 8).unwrap();
        assert_eq!(z3[0].arrangement().unwrap(), &[Element::Residue(0), Element::Residue(1), Element::Residue(2)]);
        for t in &z3 {
            assert!(validate_circular(&t.to_ordering(), t.carrier(), ValidateOptions::default()).unwrap().passed());
        }
    }

    #[test]
    fn trivial_group_has_one_ordering() {
        assert_eq!(brute_force_circular_orders(&Group::trivial(), 8).unwrap().len(), 1);
    }

    #[test]
    fn finite_spectra() {
        let z6 = obstruction_finite(&Group::Cyclic(6), 10).unwrap();
        assert_eq!(z6.obstructed_set(), set(&[2, 3, 4, 6, 8, 9, 10]));
        assert!(z6.is_fully_determined() && z6.is_partition());
        let t = obstruction_finite(&Group::trivial(), 10).unwrap();
        assert!(t.obstructed.is_empty());
        assert_eq!(t.unobstructed.len(), 9);
        let z5 = obstruction_finite(&Group::Cyclic(5), 9).unwrap();
        assert_eq!(z5.obstructed_set(), set(&[5]));
        match &z5.unobstructed[&2] {
            UnobstructedReason::Cyclic { generator, order } => {
                assert_eq!(*order, 10);
                let g = Group::product(Group::Cyclic(5), Group::Cyclic(2));
                assert_eq!(g.element_order(generator, 10).unwrap(), Some(10));
            }
            other => panic!("unexpected reason {other:?}"),
        }
    }

    #[test]
    fn spectra_agree_with_enumeration_and_torsion() {
        let groups = [
            Group::trivial(),
            Group::Cyclic(2),
            Group::Cyclic(3),
            Group::Cyclic(4),
            Group::klein4(),
            Group::Cyclic(6),
            Group::product(Group::Cyclic(2), Group::Cyclic(4)),
        ];
        for g in &groups {
            let report = obstruction_finite(g, 8).unwrap();
            if finite_co_decide(g).unwrap() {
                assert_eq!(report.obstructed_set(), torsion_part(&TorsionProfile::of_finite(g).unwrap(), 8), "{g}");
            } else {
                // A non-cyclic G is not circularly orderable, so neither is any G × ℤ/n.
                assert_eq!(report.obstructed_set(), (2..=8).collect(), "{g}");
            }
            for n in 2..=8u64 {
                let product = Group::product(g.clone(), Group::Cyclic(n));
                let orderable = if product.order().unwrap() <= 8 {
                    !brute_force_circular_orders(&product, 8).unwrap().is_empty()
                } else {
                    finite_co_decide(&product).unwrap()
                };
                assert_eq!(orderable, report.unobstructed.contains_key(&n), "{g} x Z/{n}");
            }
        }
    }
}
