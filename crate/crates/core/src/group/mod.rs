//! Computable groups.
//!
//! A [`Group`] is a descriptor for one of the concrete groups the crate knows
//! how to compute in. Elements are [`Element`] canonical forms; every group
//! operation checks that its arguments have the right shape and returns
//! [`GroupError::NotAnElement`] otherwise.

mod ball;
mod element;
mod hom;
pub mod promislow;
pub mod snf;
mod word;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use ball::{Ball, DEFAULT_BALL_LIMIT};
pub use element::{AffineElement, Element, Half};
pub use hom::Homomorphism;
pub use snf::{abelianization, smith_normal_form, Abelianization, IntMatrix, SmithForm};
pub use word::{Presentation, Word};

use crate::error::GroupError;
use crate::witness::WitnessGroup;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    /// `ℤ/n`; `Cyclic(1)` is the trivial group.
    Cyclic(u64),
    Integers,
    FreeAbelian(usize),
    Product(Box<Group>, Box<Group>),
    /// The Hantzsche–Wendt (Promislow) group as affine maps of `ℝ³`.
    Promislow,
    Witness(WitnessGroup),
}

impl Group {
    pub fn cyclic(n: u64) -> Result<Group, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidParameter("cyclic group order must be at least 1".to_string()));
        }
        Ok(Group::Cyclic(n))
    }

    pub fn trivial() -> Group {
        Group::Cyclic(1)
    }

    pub fn klein4() -> Group {
        Group::product(Group::Cyclic(2), Group::Cyclic(2))
    }

    pub fn product(left: Group, right: Group) -> Group {
        Group::Product(Box::new(left), Box::new(right))
    }

    /// Number of elements, or `None` for infinite groups and orders that do not fit in `u64`.
    pub fn order(&self) -> Option<u64> {
        match self {
            Group::Cyclic(n) => Some(*n),
            Group::FreeAbelian(0) => Some(1),
            Group::Integers | Group::FreeAbelian(_) | Group::Promislow | Group::Witness(_) => None,
            Group::Product(a, b) => a.order()?.checked_mul(b.order()?),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn identity(&self) -> Element {
        match self {
            Group::Cyclic(_) => Element::Residue(0),
            Group::Integers => Element::Int(0),
            Group::FreeAbelian(k) => Element::Vector(vec![0; *k]),
            Group::Product(a, b) => Element::pair(a.identity(), b.identity()),
            Group::Promislow => Element::Affine(AffineElement::IDENTITY),
            Group::Witness(w) => Element::Witness(w.identity()),
        }
    }

    pub fn is_identity(&self, g: &Element) -> bool {
        *g == self.identity()
    }

    /// Whether `g` is a canonical form of an element of this group.
    pub fn contains(&self, g: &Element) -> bool {
        match (self, g) {
            (Group::Cyclic(n), Element::Residue(r)) => r < n,
            (Group::Integers, Element::Int(_)) => true,
            (Group::FreeAbelian(k), Element::Vector(v)) => v.len() == *k,
            (Group::Product(a, b), Element::Pair(x, y)) => a.contains(x) && b.contains(y),
            (Group::Promislow, Element::Affine(m)) => promislow::is_member(m),
            (Group::Witness(w), Element::Witness(x)) => w.contains(x),
            _ => false,
        }
    }

    pub(crate) fn mismatch(&self, g: &Element) -> GroupError {
        GroupError::NotAnElement { group: self.to_string(), element: g.to_string() }
    }

    fn overflow(&self) -> GroupError {
        GroupError::Overflow(self.to_string())
    }

    /// The group law.
    pub fn op(&self, g: &Element, h: &Element) -> Result<Element, GroupError> {
        match (self, g, h) {
            (Group::Cyclic(n), Element::Residue(a), Element::Residue(b)) if a < n && b < n => {
                Ok(Element::Residue(((*a as u128 + *b as u128) % *n as u128) as u64))
            }
            (Group::Integers, Element::Int(a), Element::Int(b)) => {
                a.checked_add(*b).map(Element::Int).ok_or_else(|| self.overflow())
            }
            (Group::FreeAbelian(k), Element::Vector(a), Element::Vector(b)) if a.len() == *k && b.len() == *k => a
                .iter()
                .zip(b)
                .map(|(x, y)| x.checked_add(*y))
                .collect::<Option<Vec<_>>>()
                .map(Element::Vector)
                .ok_or_else(|| self.overflow()),
            (Group::Product(l, r), Element::Pair(a1, b1), Element::Pair(a2, b2)) => {
                Ok(Element::pair(l.op(a1, a2)?, r.op(b1, b2)?))
            }
            (Group::Promislow, Element::Affine(a), Element::Affine(b)) => {
                a.compose(b).map(Element::Affine).ok_or_else(|| self.overflow())
            }
            (Group::Witness(w), Element::Witness(a), Element::Witness(b)) => w.op(a, b).map(Element::Witness),
            _ => Err(if self.contains(g) { self.mismatch(h) } else { self.mismatch(g) }),
        }
    }

    pub fn inv(&self, g: &Element) -> Result<Element, GroupError> {
        match (self, g) {
            (Group::Cyclic(n), Element::Residue(a)) if a < n => Ok(Element::Residue((n - a) % n)),
            (Group::Integers, Element::Int(a)) => a.checked_neg().map(Element::Int).ok_or_else(|| self.overflow()),
            (Group::FreeAbelian(k), Element::Vector(a)) if a.len() == *k => a
                .iter()
                .map(|x| x.checked_neg())
                .collect::<Option<Vec<_>>>()
                .map(Element::Vector)
                .ok_or_else(|| self.overflow()),
            (Group::Product(l, r), Element::Pair(a, b)) => Ok(Element::pair(l.inv(a)?, r.inv(b)?)),
            (Group::Promislow, Element::Affine(a)) => a.inverse().map(Element::Affine).ok_or_else(|| self.overflow()),
            (Group::Witness(w), Element::Witness(a)) => w.inv(a).map(Element::Witness),
            _ => Err(self.mismatch(g)),
        }
    }

    /// `g⁻¹h`, the quantity every left-invariant comparison is built from.
    pub fn left_quotient(&self, g: &Element, h: &Element) -> Result<Element, GroupError> {
        self.op(&self.inv(g)?, h)
    }

    pub fn pow(&self, g: &Element, k: i64) -> Result<Element, GroupError> {
        let mut base = if k < 0 { self.inv(g)? } else { g.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.op(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.op(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Least `k ≤ cap` with `g^k = id`, or `None` when no such `k` exists.
    pub fn element_order(&self, g: &Element, cap: u64) -> Result<Option<u64>, GroupError> {
        if !self.contains(g) {
            return Err(self.mismatch(g));
        }
        let id = self.identity();
        let mut acc = g.clone();
        for k in 1..=cap {
            if acc == id {
                return Ok(Some(k));
            }
            if k < cap {
                acc = self.op(&acc, g)?;
            }
        }
        Ok(None)
    }

    /// All elements in canonical order, for finite groups of at most `limit` elements.
    pub fn elements(&self, limit: usize) -> Result<Vec<Element>, GroupError> {
        let order = self.order().ok_or_else(|| GroupError::NotFinite(self.to_string()))?;
        if order > limit as u64 {
            return Err(GroupError::BallTooLarge { limit });
        }
        let mut out = match self {
            Group::Cyclic(n) => (0..*n).map(Element::Residue).collect(),
            Group::FreeAbelian(0) => vec![Element::Vector(Vec::new())],
            Group::Product(a, b) => {
                let left = a.elements(limit)?;
                let right = b.elements(limit)?;
                let mut v = Vec::with_capacity(left.len() * right.len());
                for x in &left {
                    for y in &right {
                        v.push(Element::pair(x.clone(), y.clone()));
                    }
                }
                v
            }
            _ => unreachable!("order() is finite only for the cases above"),
        };
        out.sort();
        Ok(out)
    }

    /// Generators used by [`Group::express`] and [`Group::presentation`].
    pub fn standard_generators(&self) -> Vec<Element> {
        match self {
            Group::Cyclic(1) => Vec::new(),
            Group::Cyclic(_) => vec![Element::Residue(1)],
            Group::Integers => vec![Element::Int(1)],
            Group::FreeAbelian(k) => (0..*k)
                .map(|i| {
                    let mut v = vec![0; *k];
                    v[i] = 1;
                    Element::Vector(v)
                })
                .collect(),
            Group::Product(a, b) => {
                let mut gens: Vec<Element> =
                    a.standard_generators().into_iter().map(|g| Element::pair(g, b.identity())).collect();
                gens.extend(b.standard_generators().into_iter().map(|g| Element::pair(a.identity(), g)));
                gens
            }
            Group::Promislow => vec![promislow::generator_a(), promislow::generator_b()],
            Group::Witness(w) => w.generators(),
        }
    }

    /// A presentation on [`Group::standard_generators`], when one is known.
    pub fn presentation(&self) -> Option<Presentation> {
        let names = |k: usize, prefix: &str| -> Vec<String> { (0..k).map(|i| format!("{prefix}{i}")).collect() };
        match self {
            Group::Cyclic(1) => Some(Presentation::new(Vec::new(), Vec::new())),
            Group::Cyclic(n) => Some(Presentation::new(names(1, "g"), vec![Word::letter(0, *n as i64)])),
            Group::Integers => Some(Presentation::new(names(1, "g"), Vec::new())),
            Group::FreeAbelian(k) => {
                let mut rels = Vec::new();
                for i in 0..*k {
                    for j in i + 1..*k {
                        rels.push(commutator(i, j));
                    }
                }
                Some(Presentation::new(names(*k, "g"), rels))
            }
            Group::Product(a, b) => {
                let pa = a.presentation()?;
                let pb = b.presentation()?;
                let (na, nb) = (pa.generator_count(), pb.generator_count());
                let mut rels: Vec<Word> = pa.relators().to_vec();
                rels.extend(pb.relators().iter().map(|w| w.shifted(na)));
                for i in 0..na {
                    for j in 0..nb {
                        rels.push(commutator(i, na + j));
                    }
                }
                Some(Presentation::new(names(na + nb, "g"), rels))
            }
            Group::Promislow => Some(Presentation::promislow()),
            Group::Witness(_) => None,
        }
    }

    /// A word in [`Group::standard_generators`] evaluating to `g`, computed
    /// from the canonical form.
    pub fn express(&self, g: &Element) -> Result<Word, GroupError> {
        if !self.contains(g) {
            return Err(self.mismatch(g));
        }
        match (self, g) {
            (Group::Cyclic(_), Element::Residue(r)) => Ok(Word::letter(0, *r as i64)),
            (Group::Integers, Element::Int(k)) => Ok(Word::letter(0, *k)),
            (Group::FreeAbelian(_), Element::Vector(v)) => {
                Ok(Word::from_syllables(v.iter().enumerate().map(|(i, &x)| (i, x))))
            }
            (Group::Product(a, b), Element::Pair(x, y)) => {
                let offset = a.standard_generators().len();
                Ok(a.express(x)?.concat(&b.express(y)?.shifted(offset)))
            }
            (Group::Promislow, Element::Affine(m)) => promislow::express(m),
            (Group::Witness(_), _) => Err(GroupError::InvalidParameter(
                "witness group elements have no standard word form".to_string(),
            )),
            _ => Err(self.mismatch(g)),
        }
    }

    /// Evaluates a word given images for its generators.
    pub fn eval_word(&self, word: &Word, images: &[Element]) -> Result<Element, GroupError> {
        let mut acc = self.identity();
        for &(gen, e) in word.syllables() {
            let img = images.get(gen).ok_or_else(|| {
                GroupError::InvalidParameter(format!("word uses generator {gen} but only {} images given", images.len()))
            })?;
            acc = self.op(&acc, &self.pow(img, e)?)?;
        }
        Ok(acc)
    }

    /// Ball of the given radius in the Cayley graph of `generators`.
    pub fn ball(&self, generators: &[Element], radius: usize, limit: usize) -> Result<Ball, GroupError> {
        Ball::build(self, generators, radius, limit)
    }
}

fn commutator(i: usize, j: usize) -> Word {
    Word::from_syllables([(i, 1), (j, 1), (i, -1), (j, -1)])
}

impl fmt::Display for Group {
    /// The descriptor syntax accepted by the command line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Cyclic(1) => write!(f, "trivial"),
            Group::Cyclic(n) => write!(f, "cyclic:{n}"),
            Group::Integers => write!(f, "integers"),
            Group::FreeAbelian(k) => write!(f, "free-abelian:{k}"),
            Group::Product(a, b) if **a == Group::Cyclic(2) && **b == Group::Cyclic(2) => write!(f, "klein4"),
            Group::Product(a, b) => {
                let wrap = |g: &Group| matches!(g, Group::Product(..) if !(g == &Group::klein4()));
                write!(f, "product:")?;
                if wrap(a) {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, ",")?;
                if wrap(b) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            Group::Promislow => write!(f, "promislow"),
            Group::Witness(w) => write!(f, "{w}"),
        }
    }
}
