//! Left orderings and circular orderings, as oracles on group elements.
//!
//! A [`LeftOrdering`] is a positive-cone membership test, and
//! `g < h ⟺ g⁻¹h ∈ P`. A [`CircularOrdering`] is a ternary function
//! `c: G³ → {−1, 0, +1}`. Both are evaluated lazily, so they work on infinite
//! groups. [`CircularTable`] stores finitely many values for exhaustive work.
//!
//! The validators only ever certify a finite carrier. Nothing here decides
//! whether an oracle is an ordering of the whole group.

mod convex;
mod lex;
mod table;
mod validate;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::GroupError;
use crate::group::{Element, Group};

pub use convex::{convexity_check, SubgroupMembership};
pub use lex::{lex_circular, product_circular, product_ses, SesData};
pub use table::CircularTable;
pub use validate::{
    validate_bi_invariance, validate_circular, validate_left, ValidateOptions, DEFAULT_EXHAUSTIVE_LIMIT,
    DEFAULT_SAMPLES, DEFAULT_SEED,
};

type CircularOracle = Arc<dyn Fn(&Element, &Element, &Element) -> Result<i8, GroupError> + Send + Sync>;
type ConeOracle = Arc<dyn Fn(&Element) -> Result<bool, GroupError> + Send + Sync>;

/// Where a circular ordering came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    NaturalCyclic { n: u64, unit: u64 },
    SecretOfLeftOrder,
    Lexicographic,
    ExplicitTable,
}

impl Provenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::NaturalCyclic { .. } => "natural-cyclic",
            Provenance::SecretOfLeftOrder => "secret-of-left-order",
            Provenance::Lexicographic => "lexicographic",
            Provenance::ExplicitTable => "explicit-table",
        }
    }
}

#[derive(Clone)]
pub struct CircularOrdering {
    group: Group,
    provenance: Provenance,
    label: String,
    oracle: CircularOracle,
}

impl fmt::Debug for CircularOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CircularOrdering")
            .field("group", &self.group)
            .field("provenance", &self.provenance)
            .field("label", &self.label)
            .finish()
    }
}

impl CircularOrdering {
    /// Wraps an arbitrary oracle. The oracle is only called on elements of
    /// `group`; nothing about it is checked until a validator runs.
    pub fn from_oracle<F>(group: Group, provenance: Provenance, label: impl Into<String>, oracle: F) -> Self
    where
        F: Fn(&Element, &Element, &Element) -> Result<i8, GroupError> + Send + Sync + 'static,
    {
        CircularOrdering { group, provenance, label: label.into(), oracle: Arc::new(oracle) }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, g1: &Element, g2: &Element, g3: &Element) -> Result<i8, GroupError> {
        for g in [g1, g2, g3] {
            if !self.group.contains(g) {
                return Err(self.group.mismatch(g));
            }
        }
        (self.oracle)(g1, g2, g3)
    }

    /// Evaluates on every triple of `carrier`, producing a table.
    pub fn to_table(&self, carrier: &[Element]) -> Result<CircularTable, GroupError> {
        CircularTable::from_ordering(self, carrier)
    }
}

/// `+1` when `(x, y, z)` is cyclically increasing, `−1` when cyclically
/// decreasing, `0` when two coincide.
pub fn cyclic_orientation<T: Ord>(x: &T, y: &T, z: &T) -> i8 {
    if x == y || y == z || z == x {
        return 0;
    }
    let ascents = u8::from(x < y) + u8::from(y < z) + u8::from(z < x);
    if ascents == 2 {
        1
    } else {
        -1
    }
}

/// The rotation ordering of `ℤ/n` that places `a` at angle `2π·(k·a mod n)/n`.
pub fn natural_circular_cyclic(n: u64, unit: u64) -> Result<CircularOrdering, GroupError> {
    if n < 2 {
        return Err(GroupError::InvalidParameter(format!("natural ordering needs n ≥ 2, got {n}")));
    }
    if num_integer::gcd(unit % n, n) != 1 {
        return Err(GroupError::InvalidParameter(format!("unit {unit} is not coprime to {n}")));
    }
    let k = unit % n;
    let position = move |g: &Element| -> u128 { (g.as_residue().unwrap_or(0) as u128 * k as u128) % n as u128 };
    Ok(CircularOrdering::from_oracle(
        Group::Cyclic(n),
        Provenance::NaturalCyclic { n, unit: k },
        format!("natural:{k}"),
        move |a, b, c| Ok(cyclic_orientation(&position(a), &position(b), &position(c))),
    ))
}

/// The units `k` with `gcd(k, n) = 1`, in increasing order.
pub fn units(n: u64) -> Vec<u64> {
    (1..n.max(2)).filter(|&k| num_integer::gcd(k, n) == 1).collect()
}

/// The circular ordering of a left ordering: `+1` on triples that increase up
/// to cyclic permutation.
pub fn secret_from_left(lo: &LeftOrdering) -> CircularOrdering {
    let lo2 = lo.clone();
    CircularOrdering::from_oracle(
        lo.group().clone(),
        Provenance::SecretOfLeftOrder,
        format!("secret:{}", lo.label()),
        move |a, b, c| {
            if a == b || b == c || c == a {
                return Ok(0);
            }
            let ascents = u8::from(lo2.less(a, b)?) + u8::from(lo2.less(b, c)?) + u8::from(lo2.less(c, a)?);
            Ok(if ascents == 2 { 1 } else { -1 })
        },
    )
}

/// A left ordering given by its positive cone.
#[derive(Clone)]
pub struct LeftOrdering {
    group: Group,
    label: String,
    cone: ConeOracle,
}

impl fmt::Debug for LeftOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LeftOrdering").field("group", &self.group).field("label", &self.label).finish()
    }
}

impl LeftOrdering {
    pub fn from_cone<F>(group: Group, label: impl Into<String>, cone: F) -> Self
    where
        F: Fn(&Element) -> Result<bool, GroupError> + Send + Sync + 'static,
    {
        LeftOrdering { group, label: label.into(), cone: Arc::new(cone) }
    }

    /// The usual order on `ℤ`.
    pub fn integers() -> Self {
        LeftOrdering::from_cone(Group::Integers, "usual", |g| {
            g.as_int().map(|k| k > 0).ok_or_else(|| Group::Integers.mismatch(g))
        })
    }

    /// Lexicographic order on `ℤᵏ`: the first coordinate in `priority` decides,
    /// ties go to the next one.
    pub fn free_abelian_lex(k: usize, priority: Vec<usize>) -> Result<Self, GroupError> {
        let mut sorted = priority.clone();
        sorted.sort_unstable();
        if sorted != (0..k).collect::<Vec<_>>() {
            return Err(GroupError::InvalidParameter(format!("priority {priority:?} is not a permutation of 0..{k}")));
        }
        let group = Group::FreeAbelian(k);
        let label = format!("lex{priority:?}");
        let g2 = group.clone();
        Ok(LeftOrdering::from_cone(group, label, move |g| match g {
            Element::Vector(v) if v.len() == k => {
                Ok(priority.iter().map(|&i| v[i]).find(|&x| x != 0).is_some_and(|x| x > 0))
            }
            _ => Err(g2.mismatch(g)),
        }))
    }

    /// Standard lexicographic order on `ℤᵏ`, last coordinate dominant.
    pub fn free_abelian_standard(k: usize) -> Self {
        LeftOrdering::free_abelian_lex(k, (0..k).rev().collect()).expect("a permutation")
    }

    /// The empty cone; a left ordering only of the trivial group, and of
    /// the trivial kernel of an injective map.
    pub fn trivial(group: Group) -> Self {
        LeftOrdering::from_cone(group, "trivial", |_| Ok(false))
    }

    /// A cone listed explicitly on a finite carrier. Queries outside the
    /// carrier are errors.
    pub fn from_cone_set(group: Group, carrier: Vec<Element>, positive: Vec<Element>) -> Self {
        let mut carrier = carrier;
        carrier.sort();
        carrier.dedup();
        let mut positive = positive;
        positive.sort();
        positive.dedup();
        LeftOrdering::from_cone(group, "table", move |g| {
            if carrier.binary_search(g).is_err() {
                return Err(GroupError::InvalidParameter(format!("{g} is outside the cone table's carrier")));
            }
            Ok(positive.binary_search(g).is_ok())
        })
    }

    /// Pulls back along an injective map: `g > id ⟺ f(g) > id`.
    pub fn pull_back<F>(&self, group: Group, label: impl Into<String>, map: F) -> Self
    where
        F: Fn(&Element) -> Result<Element, GroupError> + Send + Sync + 'static,
    {
        let inner = self.clone();
        LeftOrdering::from_cone(group, label, move |g| inner.is_positive(&map(g)?))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_positive(&self, g: &Element) -> Result<bool, GroupError> {
        if !self.group.contains(g) {
            return Err(self.group.mismatch(g));
        }
        (self.cone)(g)
    }

    /// `g < h ⟺ g⁻¹h ∈ P`.
    pub fn less(&self, g: &Element, h: &Element) -> Result<bool, GroupError> {
        self.is_positive(&self.group.left_quotient(g, h)?)
    }

    pub fn compare(&self, g: &Element, h: &Element) -> Result<Ordering, GroupError> {
        if g == h {
            Ok(Ordering::Equal)
        } else if self.less(g, h)? {
            Ok(Ordering::Less)
        } else {
            Ok(Ordering::Greater)
        }
    }

    /// Sorts `elements` increasingly. Only meaningful once the ordering has
    /// been validated on a carrier containing them.
    pub fn sort(&self, elements: &mut [Element]) -> Result<(), GroupError> {
        let mut err = None;
        elements.sort_by(|a, b| match self.compare(a, b) {
            Ok(o) => o,
            Err(e) => {
                err.get_or_insert(e);
                Ordering::Equal
            }
        });
        err.map_or(Ok(()), Err)
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::NaturalCyclic { n, unit } => write!(f, "natural-cyclic(n={n}, k={unit})"),
            other => f.write_str(other.tag()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn r(k: u64) -> Element {
        Element::Residue(k)
    }

    #[test]
    fn natural_examples() {
        let c = natural_circular_cyclic(5, 1).unwrap();
        assert_eq!(c.eval(&r(0), &r(1), &r(3)).unwrap(), 1);
        assert_eq!(c.eval(&r(1), &r(0), &r(3)).unwrap(), -1);
        let c3 = natural_circular_cyclic(3, 2).unwrap();
        assert_eq!(c3.eval(&r(0), &r(1), &r(2)).unwrap(), -1);
        assert!(natural_circular_cyclic(6, 2).is_err());
        assert!(natural_circular_cyclic(1, 1).is_err());
    }

    #[test]
    fn natural_orderings_are_distinct() {
        for n in 2..=12u64 {
            let sigs: Vec<Vec<i8>> = units(n)
                .into_iter()
                .map(|k| {
                    let c = natural_circular_cyclic(n, k).unwrap();
                    (1..n).map(|j| c.eval(&r(0), &r(1), &r(j)).unwrap()).collect()
                })
                .collect();
            for i in 0..sigs.len() {
                for j in i + 1..sigs.len() {
                    // n = 2 has a single ordering; for larger n distinct units
                    // must give distinct signatures.
                    assert_ne!(sigs[i], sigs[j], "n={n}");
                }
            }
        }
    }

    #[test]
    fn secret_of_integers() {
        let c = secret_from_left(&LeftOrdering::integers());
        let i = Element::Int;
        assert_eq!(c.eval(&i(-1), &i(0), &i(5)).unwrap(), 1);
        assert_eq!(c.eval(&i(0), &i(5), &i(-1)).unwrap(), 1);
        assert_eq!(c.eval(&i(5), &i(0), &i(-1)).unwrap(), -1);
        assert_eq!(c.eval(&i(5), &i(5), &i(-1)).unwrap(), 0);
    }

    #[test]
    fn lex_priority() {
        let lo = LeftOrdering::free_abelian_lex(2, vec![1, 0]).unwrap();
        assert!(lo.is_positive(&Element::Vector(vec![-5, 1])).unwrap());
        assert!(lo.is_positive(&Element::Vector(vec![1, 0])).unwrap());
        assert!(!lo.is_positive(&Element::Vector(vec![0, 0])).unwrap());
        assert!(LeftOrdering::free_abelian_lex(2, vec![0, 0]).is_err());
    }

    #[test]
    fn cone_table_rejects_outside() {
        let lo = LeftOrdering::from_cone_set(Group::Integers, vec![Element::Int(0), Element::Int(1)], vec![Element::Int(1)]);
        assert!(lo.is_positive(&Element::Int(1)).unwrap());
        assert!(lo.is_positive(&Element::Int(7)).is_err());
    }

    #[test]
    fn sorting_by_order() {
        let lo = LeftOrdering::integers();
        let mut v: Vec<Element> = [3, -2, 0, 7].iter().map(|&k| Element::Int(k)).collect();
        lo.sort(&mut v).unwrap();
        assert_eq!(v, [-2, 0, 3, 7].iter().map(|&k| Element::Int(k)).collect::<Vec<_>>());
    }
}
