use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::witness::WitnessElement;

/// Canonical form of a group element.
///
/// Two elements of the same group are equal exactly when their canonical
/// forms are equal, so the derived `Eq`/`Ord` are the group's equality and
/// the canonical enumeration order used for sorting carriers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    /// Residue in `0..n` for `ℤ/n`.
    Residue(u64),
    Int(i64),
    Vector(Vec<i64>),
    Pair(Box<Element>, Box<Element>),
    Affine(AffineElement),
    Witness(WitnessElement),
}

impl Element {
    pub fn pair(left: Element, right: Element) -> Element {
        Element::Pair(Box::new(left), Box::new(right))
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Element::Residue(r) => Some(*r),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Element::Int(k) => Some(*k),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Element, &Element)> {
        match self {
            Element::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_affine(&self) -> Option<&AffineElement> {
        match self {
            Element::Affine(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_witness(&self) -> Option<&WitnessElement> {
        match self {
            Element::Witness(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Residue(r) => write!(f, "{r}"),
            Element::Int(k) => write!(f, "{k}"),
            Element::Vector(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Element::Pair(a, b) => write!(f, "({a}, {b})"),
            Element::Affine(a) => write!(f, "{a}"),
            Element::Witness(w) => write!(f, "{w}"),
        }
    }
}

/// A rational number in `½ℤ`, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Half(pub i64);

impl Half {
    pub const ZERO: Half = Half(0);

    pub fn from_int(k: i64) -> Half {
        Half(2 * k)
    }

    pub fn numerator_over_two(self) -> i64 {
        self.0
    }

    /// `Some(k)` when the value is the integer `k`.
    pub fn to_int(self) -> Option<i64> {
        (self.0 % 2 == 0).then_some(self.0 / 2)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Affine isometry `x ↦ diag(signs)·x + translation` of `ℝ³`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineElement {
    pub signs: [i8; 3],
    pub translation: [Half; 3],
}

impl AffineElement {
    pub const IDENTITY: AffineElement = AffineElement { signs: [1, 1, 1], translation: [Half::ZERO; 3] };

    pub fn new(signs: [i8; 3], translation: [Half; 3]) -> Self {
        AffineElement { signs, translation }
    }

    pub fn translation_by(v: [i64; 3]) -> Self {
        AffineElement { signs: [1, 1, 1], translation: v.map(Half::from_int) }
    }

    pub fn is_translation(&self) -> bool {
        self.signs == [1, 1, 1]
    }

    /// Composition `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &AffineElement) -> Option<AffineElement> {
        let mut signs = [1i8; 3];
        let mut translation = [Half::ZERO; 3];
        for i in 0..3 {
            signs[i] = self.signs[i] * other.signs[i];
            let moved = (self.signs[i] as i64).checked_mul(other.translation[i].0)?;
            translation[i] = Half(moved.checked_add(self.translation[i].0)?);
        }
        Some(AffineElement { signs, translation })
    }

    pub fn inverse(&self) -> Option<AffineElement> {
        let mut translation = [Half::ZERO; 3];
        for ((out, &sign), t) in translation.iter_mut().zip(&self.signs).zip(&self.translation) {
            *out = Half((-(sign as i64)).checked_mul(t.0)?);
        }
        Some(AffineElement { signs: self.signs, translation })
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.signs;
        let [x, y, z] = self.translation;
        write!(f, "[diag({a},{b},{c}) | ({x},{y},{z})]")
    }
}
