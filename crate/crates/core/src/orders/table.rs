use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{cyclic_orientation, CircularOrdering, Provenance};
use crate::error::GroupError;
use crate::group::{Element, Group};

/// Values of a ternary function on every triple of a finite carrier.
///
/// The carrier is stored sorted; `values[(i·n + j)·n + k]` is the value on
/// the `i`-th, `j`-th and `k`-th carrier elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircularTable {
    group: Group,
    carrier: Vec<Element>,
    values: Vec<i8>,
    arrangement: Option<Vec<Element>>,
}

impl CircularTable {
    fn empty(group: Group, mut carrier: Vec<Element>) -> Result<Self, GroupError> {
        carrier.sort();
        carrier.dedup();
        if let Some(bad) = carrier.iter().find(|g| !group.contains(g)) {
            return Err(group.mismatch(bad));
        }
        let n = carrier.len();
        Ok(CircularTable { group, carrier, values: vec![0; n * n * n], arrangement: None })
    }

    pub fn from_ordering(c: &CircularOrdering, carrier: &[Element]) -> Result<Self, GroupError> {
        let mut t = CircularTable::empty(c.group().clone(), carrier.to_vec())?;
        let n = t.carrier.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t.values[(i * n + j) * n + k] = c.eval(&t.carrier[i], &t.carrier[j], &t.carrier[k])?;
                }
            }
        }
        Ok(t)
    }

    /// The ordering that reads the elements in `arrangement` as points placed
    /// counter-clockwise around a circle.
    pub fn from_arrangement(group: Group, arrangement: Vec<Element>) -> Result<Self, GroupError> {
        let mut t = CircularTable::empty(group, arrangement.clone())?;
        if t.carrier.len() != arrangement.len() {
            return Err(GroupError::InvalidParameter("arrangement repeats an element".into()));
        }
        let n = t.carrier.len();
        let mut pos = vec![0usize; n];
        for (p, g) in arrangement.iter().enumerate() {
            pos[t.index_of(g).expect("carrier built from arrangement")] = p;
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t.values[(i * n + j) * n + k] = cyclic_orientation(&pos[i], &pos[j], &pos[k]);
                }
            }
        }
        t.arrangement = Some(arrangement);
        Ok(t)
    }

    /// A table from explicit `(g₁, g₂, g₃, value)` entries. Degenerate
    /// triples may be omitted (they default to `0`); every triple of distinct
    /// carrier elements must be listed.
    pub fn from_entries(
        group: Group,
        carrier: Vec<Element>,
        entries: &[(Element, Element, Element, i8)],
    ) -> Result<Self, GroupError> {
        let mut t = CircularTable::empty(group, carrier)?;
        let n = t.carrier.len();
        let mut seen = vec![false; n * n * n];
        for (a, b, c, v) in entries {
            let idx = t.slot(a, b, c).ok_or_else(|| {
                GroupError::InvalidParameter(format!("table entry {a}, {b}, {c} is outside the carrier"))
            })?;
            if seen[idx] && t.values[idx] != *v {
                return Err(GroupError::InvalidParameter(format!("table entry {a}, {b}, {c} given twice")));
            }
            if !(-1..=1).contains(v) {
                return Err(GroupError::InvalidParameter(format!("table value {v} is not -1, 0 or 1")));
            }
            seen[idx] = true;
            t.values[idx] = *v;
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i != j && j != k && k != i && !seen[(i * n + j) * n + k] {
                        let (a, b, c) = (&t.carrier[i], &t.carrier[j], &t.carrier[k]);
                        return Err(GroupError::InvalidParameter(format!("table has no entry for {a}, {b}, {c}")));
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn carrier(&self) -> &[Element] {
        &self.carrier
    }

    pub fn arrangement(&self) -> Option<&[Element]> {
        self.arrangement.as_deref()
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn index_of(&self, g: &Element) -> Option<usize> {
        self.carrier.binary_search(g).ok()
    }

    fn slot(&self, a: &Element, b: &Element, c: &Element) -> Option<usize> {
        let n = self.carrier.len();
        Some((self.index_of(a)? * n + self.index_of(b)?) * n + self.index_of(c)?)
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> i8 {
        let n = self.carrier.len();
        self.values[(i * n + j) * n + k]
    }

    pub fn value(&self, a: &Element, b: &Element, c: &Element) -> Option<i8> {
        self.slot(a, b, c).map(|s| self.values[s])
    }

    /// Overwrites one entry, leaving its cyclic rotations untouched.
    pub fn set(&mut self, a: &Element, b: &Element, c: &Element, v: i8) -> Result<(), GroupError> {
        let s = self
            .slot(a, b, c)
            .ok_or_else(|| GroupError::InvalidParameter(format!("{a}, {b}, {c} is outside the table's carrier")))?;
        self.values[s] = v;
        self.arrangement = None;
        Ok(())
    }

    /// All entries in carrier order.
    pub fn entries(&self) -> Vec<(Element, Element, Element, i8)> {
        let n = self.carrier.len();
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = &self.carrier;
                    out.push((c[i].clone(), c[j].clone(), c[k].clone(), self.get(i, j, k)));
                }
            }
        }
        out
    }

    /// The table as an ordering oracle; evaluating outside the carrier is an
    /// error.
    pub fn to_ordering(&self) -> CircularOrdering {
        let t = self.clone();
        CircularOrdering::from_oracle(self.group.clone(), Provenance::ExplicitTable, "table", move |a, b, c| {
            t.value(a, b, c)
                .ok_or_else(|| GroupError::InvalidParameter(format!("{a}, {b}, {c} is outside the table's carrier")))
        })
    }
}
