//! The `{0,1}`-valued cocycle of a circular ordering and the central
//! extension it defines.
//!
//! For a circular ordering `c` on `G`:
//!
//! ```text
//! f_c(a, b) = 0  if a = id or b = id
//!             1  if ab = id
//!             0  if c(id, a, ab) = 1
//!             1  if c(id, ab, a) = 1
//! ```
//!
//! The clauses are tried in this order. `G̃_c = ℤ × G` with
//! `(n, a)(m, b) = (n + m + f_c(a, b), ab)` is a central extension of `G` by
//! `ℤ`. It is left-ordered by the cone `{(n, a) : n ≥ 0} ∖ {(0, id)}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GroupError, LiftError};
use crate::group::{Element, Group};
use crate::orders::CircularOrdering;
use crate::report::{CheckReport, Mode};

/// How a cocycle's values are cached during a check.
///
/// The cache lives in the check's own stack frame and is dropped when the
/// check returns, so cocycles stay immutable and can be shared across
/// threads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CachePolicy {
    None,
    PerCall { capacity: usize },
}

pub const DEFAULT_CACHE_CAPACITY: usize = 1 << 16;

impl Default for CachePolicy {
    fn default() -> Self {
        CachePolicy::PerCall { capacity: DEFAULT_CACHE_CAPACITY }
    }
}

/// An integer-valued function on pairs of group elements.
pub trait TwoCocycle {
    fn group(&self) -> &Group;
    fn eval(&self, a: &Element, b: &Element) -> Result<i64, LiftError>;
    fn cache_policy(&self) -> CachePolicy {
        CachePolicy::default()
    }
}

/// `f_c` for a circular ordering `c`.
#[derive(Clone, Debug)]
pub struct Cocycle {
    ordering: CircularOrdering,
    cache: CachePolicy,
}

impl Cocycle {
    pub fn new(ordering: CircularOrdering) -> Self {
        Cocycle { ordering, cache: CachePolicy::default() }
    }

    pub fn with_cache(mut self, cache: CachePolicy) -> Self {
        self.cache = cache;
        self
    }

    pub fn ordering(&self) -> &CircularOrdering {
        &self.ordering
    }

    /// The exclusive clause ladder of the module documentation.
    pub fn f_c(&self, a: &Element, b: &Element) -> Result<u8, LiftError> {
        let group = self.ordering.group();
        if group.is_identity(a) || group.is_identity(b) {
            if !group.contains(a) {
                return Err(group.mismatch(a).into());
            }
            if !group.contains(b) {
                return Err(group.mismatch(b).into());
            }
            return Ok(0);
        }
        let ab = group.op(a, b)?;
        if group.is_identity(&ab) {
            return Ok(1);
        }
        let id = group.identity();
        if self.ordering.eval(&id, a, &ab)? == 1 {
            return Ok(0);
        }
        if self.ordering.eval(&id, &ab, a)? == 1 {
            return Ok(1);
        }
        Err(LiftError::NoCaseFired { a: a.to_string(), b: b.to_string() })
    }
}

impl TwoCocycle for Cocycle {
    fn group(&self) -> &Group {
        self.ordering.group()
    }

    fn eval(&self, a: &Element, b: &Element) -> Result<i64, LiftError> {
        self.f_c(a, b).map(i64::from)
    }

    fn cache_policy(&self) -> CachePolicy {
        self.cache
    }
}

/// A cocycle with some values replaced; used to corrupt `f_c` on purpose.
#[derive(Clone, Debug)]
pub struct OverrideCocycle<C> {
    base: C,
    overrides: BTreeMap<(Element, Element), i64>,
}

impl<C: TwoCocycle> OverrideCocycle<C> {
    pub fn new(base: C) -> Self {
        OverrideCocycle { base, overrides: BTreeMap::new() }
    }

    pub fn set(mut self, a: Element, b: Element, value: i64) -> Self {
        self.overrides.insert((a, b), value);
        self
    }

    /// Replaces `f(a, b)` by `1 − f(a, b)`.
    pub fn flip(self, a: Element, b: Element) -> Result<Self, LiftError> {
        let v = self.base.eval(&a, &b)?;
        Ok(self.set(a, b, 1 - v))
    }
}

impl<C: TwoCocycle> TwoCocycle for OverrideCocycle<C> {
    fn group(&self) -> &Group {
        self.base.group()
    }

    fn eval(&self, a: &Element, b: &Element) -> Result<i64, LiftError> {
        match self.overrides.get(&(a.clone(), b.clone())) {
            Some(v) => Ok(*v),
            None => self.base.eval(a, b),
        }
    }

    fn cache_policy(&self) -> CachePolicy {
        self.base.cache_policy()
    }
}

/// A bounded memo in front of a cocycle, owned by one check.
pub struct Memo<'a, C: ?Sized> {
    inner: &'a C,
    capacity: usize,
    cache: RefCell<BTreeMap<(Element, Element), i64>>,
}

impl<'a, C: TwoCocycle + ?Sized> Memo<'a, C> {
    pub fn new(inner: &'a C) -> Self {
        let capacity = match inner.cache_policy() {
            CachePolicy::None => 0,
            CachePolicy::PerCall { capacity } => capacity,
        };
        Memo { inner, capacity, cache: RefCell::new(BTreeMap::new()) }
    }

    pub fn eval(&self, a: &Element, b: &Element) -> Result<i64, LiftError> {
        if self.capacity == 0 {
            return self.inner.eval(a, b);
        }
        let key = (a.clone(), b.clone());
        if let Some(v) = self.cache.borrow().get(&key) {
            return Ok(*v);
        }
        let v = self.inner.eval(a, b)?;
        let mut cache = self.cache.borrow_mut();
        if cache.len() < self.capacity {
            cache.insert(key, v);
        }
        Ok(v)
    }

    pub fn group(&self) -> &Group {
        self.inner.group()
    }
}

/// Checks `f(b,c) − f(ab,c) + f(a,bc) − f(a,b) = 0` and `f ∈ {0,1}` on all
/// triples of a carrier.
pub fn check_inhomogeneous_cocycle(f: &dyn TwoCocycle, carrier: &[Element]) -> Result<CheckReport, LiftError> {
    const NAME: &str = "inhomogeneous-cocycle";
    let memo = Memo::new(f);
    let group = f.group();
    let mut checked = 0;
    for a in carrier {
        for b in carrier {
            let ab = group.op(a, b)?;
            let fab = memo.eval(a, b)?;
            if !(0..=1).contains(&fab) {
                return Ok(CheckReport::fail(NAME, "f takes values in {0,1}", vec![a.clone(), b.clone()], checked));
            }
            for c in carrier {
                checked += 1;
                let bc = group.op(b, c)?;
                let sum = memo.eval(b, c)? - memo.eval(&ab, c)? + memo.eval(a, &bc)? - fab;
                if sum != 0 {
                    return Ok(CheckReport::fail(
                        NAME,
                        "f(b,c) - f(ab,c) + f(a,bc) - f(a,b) = 0",
                        vec![a.clone(), b.clone(), c.clone()],
                        checked,
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass(NAME, checked))
}

/// `c(g₁, g₂, g₃) = 1 − 2·f(g₁⁻¹g₂, g₂⁻¹g₃)` on distinct triples, `0`
/// otherwise.
pub fn recover_c(f: &dyn TwoCocycle, g1: &Element, g2: &Element, g3: &Element) -> Result<i8, LiftError> {
    if g1 == g2 || g2 == g3 || g3 == g1 {
        return Ok(0);
    }
    let group = f.group();
    let v = f.eval(&group.left_quotient(g1, g2)?, &group.left_quotient(g2, g3)?)?;
    Ok((1 - 2 * v) as i8)
}

/// Checks that [`recover_c`] reproduces `c` on every distinct triple.
pub fn check_recovery(cocycle: &Cocycle, carrier: &[Element]) -> Result<CheckReport, LiftError> {
    const NAME: &str = "recover-c";
    let memo = Memo::new(cocycle);
    let group = cocycle.group();
    let c = cocycle.ordering();
    let mut checked = 0;
    for g1 in carrier {
        for g2 in carrier {
            if g1 == g2 {
                continue;
            }
            let x = group.left_quotient(g1, g2)?;
            for g3 in carrier {
                if g3 == g1 || g3 == g2 {
                    continue;
                }
                checked += 1;
                let recovered = 1 - 2 * memo.eval(&x, &group.left_quotient(g2, g3)?)?;
                if recovered != i64::from(c.eval(g1, g2, g3)?) {
                    return Ok(CheckReport::fail(
                        NAME,
                        "1 - 2 f(g1^-1 g2, g2^-1 g3) = c(g1, g2, g3)",
                        vec![g1.clone(), g2.clone(), g3.clone()],
                        checked,
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass(NAME, checked))
}

/// An element `(n, a)` of `ℤ × G`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiftElement {
    pub n: i64,
    pub a: Element,
}

impl LiftElement {
    pub fn new(n: i64, a: Element) -> Self {
        LiftElement { n, a }
    }

    /// The pair `(n, a)` as an element, for reports.
    pub fn to_element(&self) -> Element {
        Element::pair(Element::Int(self.n), self.a.clone())
    }
}

impl fmt::Display for LiftElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.a)
    }
}

/// `ℤ × G` with the law twisted by a cocycle.
#[derive(Clone)]
pub struct LiftGroup {
    cocycle: Arc<dyn TwoCocycle + Send + Sync>,
}

impl fmt::Debug for LiftGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LiftGroup").field("base", self.cocycle.group()).finish()
    }
}

fn overflow() -> LiftError {
    LiftError::Group(GroupError::Overflow("lift integer part".to_string()))
}

impl LiftGroup {
    pub fn new<C: TwoCocycle + Send + Sync + 'static>(cocycle: C) -> Self {
        LiftGroup { cocycle: Arc::new(cocycle) }
    }

    /// The unwrapping of a circular ordering.
    pub fn of_ordering(c: CircularOrdering) -> Self {
        LiftGroup::new(Cocycle::new(c))
    }

    pub fn base(&self) -> &Group {
        self.cocycle.group()
    }

    pub fn cocycle(&self) -> &dyn TwoCocycle {
        &*self.cocycle
    }

    pub fn identity(&self) -> LiftElement {
        LiftElement::new(0, self.base().identity())
    }

    /// The generator `(1, id)` of the central `ℤ`.
    pub fn central(&self) -> LiftElement {
        LiftElement::new(1, self.base().identity())
    }

    fn op_with(&self, f: &dyn Fn(&Element, &Element) -> Result<i64, LiftError>, x: &LiftElement, y: &LiftElement) -> Result<LiftElement, LiftError> {
        let twist = f(&x.a, &y.a)?;
        let n = x.n.checked_add(y.n).and_then(|s| s.checked_add(twist)).ok_or_else(overflow)?;
        Ok(LiftElement::new(n, self.base().op(&x.a, &y.a)?))
    }

    /// `(n, a)(m, b) = (n + m + f(a, b), ab)`.
    pub fn op(&self, x: &LiftElement, y: &LiftElement) -> Result<LiftElement, LiftError> {
        self.op_with(&|a, b| self.cocycle.eval(a, b), x, y)
    }

    /// `(n, a)⁻¹ = (−n − f(a, a⁻¹), a⁻¹)`.
    pub fn inv(&self, x: &LiftElement) -> Result<LiftElement, LiftError> {
        let ai = self.base().inv(&x.a)?;
        let twist = self.cocycle.eval(&x.a, &ai)?;
        let n = x.n.checked_neg().and_then(|m| m.checked_sub(twist)).ok_or_else(overflow)?;
        Ok(LiftElement::new(n, ai))
    }

    pub fn pow(&self, x: &LiftElement, k: u64) -> Result<LiftElement, LiftError> {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.op(&acc, x)?;
        }
        Ok(acc)
    }

    /// `n ≥ 0` and `(n, a) ≠ (0, id)`.
    pub fn is_positive(&self, x: &LiftElement) -> bool {
        x.n >= 0 && !(x.n == 0 && self.base().is_identity(&x.a))
    }

    /// All `(n, a)` with `|n| ≤ bound` and `a` in `base`.
    pub fn window(&self, base: &[Element], bound: i64) -> Vec<LiftElement> {
        let mut out = Vec::with_capacity(base.len() * (2 * bound as usize + 1));
        for n in -bound..=bound {
            for a in base {
                out.push(LiftElement::new(n, a.clone()));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftCheckOptions {
    /// Window size up to which associativity is checked on every triple.
    pub exhaustive_triples: u64,
    pub samples: u64,
    pub seed: u64,
}

impl Default for LiftCheckOptions {
    fn default() -> Self {
        LiftCheckOptions { exhaustive_triples: 250_000, samples: 20_000, seed: 0x11f7 }
    }
}

fn els(xs: &[&LiftElement]) -> Vec<Element> {
    xs.iter().map(|x| x.to_element()).collect()
}

/// Group axioms on a window: identity and inverses on every element,
/// associativity on every triple or on sampled triples.
pub fn check_lift_group(lift: &LiftGroup, window: &[LiftElement], opts: LiftCheckOptions) -> Result<CheckReport, LiftError> {
    const NAME: &str = "lift-group-axioms";
    let memo = Memo::new(lift.cocycle());
    let f = |a: &Element, b: &Element| memo.eval(a, b);
    let op = |x: &LiftElement, y: &LiftElement| lift.op_with(&f, x, y);
    let id = lift.identity();
    let mut checked = 0;
    for x in window {
        checked += 1;
        if op(&id, x)? != *x || op(x, &id)? != *x {
            return Ok(CheckReport::fail(NAME, "(0,id) is a two-sided identity", els(&[x]), checked));
        }
        let xi = lift.inv(x)?;
        if op(x, &xi)? != id || op(&xi, x)? != id {
            return Ok(CheckReport::fail(NAME, "two-sided inverses", els(&[x]), checked));
        }
    }
    let n = window.len() as u64;
    let assoc = |x: &LiftElement, y: &LiftElement, z: &LiftElement| -> Result<bool, LiftError> {
        Ok(op(&op(x, y)?, z)? == op(x, &op(y, z)?)?)
    };
    if n.saturating_pow(3) <= opts.exhaustive_triples {
        for x in window {
            for y in window {
                for z in window {
                    checked += 1;
                    if !assoc(x, y, z)? {
                        return Ok(CheckReport::fail(NAME, "associativity", els(&[x, y, z]), checked));
                    }
                }
            }
        }
        return Ok(CheckReport::pass(NAME, checked));
    }
    let mode = Mode::Sampled { samples: opts.samples, seed: opts.seed };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        let [x, y, z] = [(); 3].map(|_| &window[rng.gen_range(0..window.len())]);
        checked += 1;
        if !assoc(x, y, z)? {
            return Ok(CheckReport::fail(NAME, "associativity", els(&[x, y, z]), checked).with_mode(mode));
        }
    }
    Ok(CheckReport::pass(NAME, checked).with_mode(mode))
}

/// Cone axioms on a window: products of positives are positive, and exactly
/// one of `x`, `x⁻¹` is positive for `x ≠ (0, id)`.
pub fn check_lift_cone(lift: &LiftGroup, window: &[LiftElement]) -> Result<CheckReport, LiftError> {
    const NAME: &str = "lift-cone";
    let memo = Memo::new(lift.cocycle());
    let f = |a: &Element, b: &Element| memo.eval(a, b);
    let id = lift.identity();
    let mut checked = 0;
    for x in window {
        if *x == id {
            if lift.is_positive(x) {
                return Ok(CheckReport::fail(NAME, "(0,id) is not positive", els(&[x]), checked));
            }
            continue;
        }
        checked += 1;
        if lift.is_positive(x) == lift.is_positive(&lift.inv(x)?) {
            return Ok(CheckReport::fail(NAME, "exactly one of x, x^-1 positive", els(&[x]), checked));
        }
    }
    let positives: Vec<&LiftElement> = window.iter().filter(|x| lift.is_positive(x)).collect();
    for x in &positives {
        for y in &positives {
            checked += 1;
            if !lift.is_positive(&lift.op_with(&f, x, y)?) {
                return Ok(CheckReport::fail(NAME, "P·P ⊆ P", els(&[x, y]), checked));
            }
        }
    }
    Ok(CheckReport::pass(NAME, checked))
}

/// `(1, id)` commutes with every element of the window.
pub fn check_lift_central(lift: &LiftGroup, window: &[LiftElement]) -> Result<CheckReport, LiftError> {
    const NAME: &str = "lift-central";
    let z = lift.central();
    let mut checked = 0;
    for x in window {
        checked += 1;
        if lift.op(&z, x)? != lift.op(x, &z)? {
            return Ok(CheckReport::fail(NAME, "(1,id) is central", els(&[x]), checked));
        }
    }
    Ok(CheckReport::pass(NAME, checked))
}

/// Position of each residue in the cyclic order of `c`, starting at `0`.
fn cyclic_positions(c: &CircularOrdering, n: u64) -> Result<Vec<u64>, LiftError> {
    let id = Element::Residue(0);
    let mut idx = vec![0u64; n as usize];
    for a in 1..n {
        let ea = Element::Residue(a);
        let mut before = 1;
        for x in 1..n {
            if x != a && c.eval(&id, &Element::Residue(x), &ea)? == 1 {
                before += 1;
            }
        }
        idx[a as usize] = before;
    }
    Ok(idx)
}

/// Checks on the window `{(m, a) : |m| ≤ window}` that
/// `μ(m, a) = m·n + idx(a)` is an injective homomorphism onto a contiguous
/// range of integers, where `idx(a)` is the position of `a` in the cyclic
/// order given by `c`. So the lift of `ℤ/n` is infinite cyclic, hence
/// torsion-free, on the window.
pub fn cyclic_lift_iso_check(n: u64, c: &CircularOrdering, window: i64) -> Result<CheckReport, LiftError> {
    const NAME: &str = "cyclic-lift-isomorphism";
    if *c.group() != Group::Cyclic(n) || n < 2 {
        return Err(LiftError::Invalid(format!("expected an ordering of cyclic:{n}, got one of {}", c.group())));
    }
    let idx = cyclic_positions(c, n)?;
    let mut sorted = idx.clone();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(LiftError::Invalid("the ordering does not arrange ℤ/n in a single cycle".to_string()));
    }
    let lift = LiftGroup::of_ordering(c.clone());
    let elements = Group::Cyclic(n).elements(n as usize)?;
    let w = lift.window(&elements, window);
    let ni = n as i64;
    let mu = |x: &LiftElement| x.n * ni + idx[x.a.as_residue().expect("residue") as usize] as i64;

    let mut checked = 0;
    let mut values: Vec<i64> = w.iter().map(mu).collect();
    values.sort_unstable();
    let lo = -window * ni;
    if values.iter().enumerate().any(|(i, &v)| v != lo + i as i64) {
        return Ok(CheckReport::fail(NAME, "μ is a bijection onto a contiguous range", Vec::new(), w.len() as u64));
    }

    let cocycle = Cocycle::new(c.clone());
    let memo = Memo::new(&cocycle);
    let f = |a: &Element, b: &Element| memo.eval(a, b);
    for x in &w {
        for y in &w {
            checked += 1;
            if mu(&lift.op_with(&f, x, y)?) != mu(x) + mu(y) {
                return Ok(CheckReport::fail(NAME, "μ(xy) = μ(x) + μ(y)", els(&[x, y]), checked));
            }
        }
    }
    let generator = w.iter().find(|x| mu(x) == 1).expect("contiguous range contains 1");
    Ok(CheckReport::pass(NAME, checked)
        .with_note(format!("μ(m,a) = {n}·m + idx(a); generator {generator} maps to 1"))
        .with_note("injective homomorphism to ℤ on the window: infinite cyclic and torsion-free there"))
}

/// The standard battery for one ordering: cocycle identity, recovery of `c`,
/// group axioms, cone axioms and centrality on `base × [−bound, bound]`.
pub fn lift_check_suite(
    c: &CircularOrdering,
    base: &[Element],
    bound: i64,
    opts: LiftCheckOptions,
) -> Result<Vec<CheckReport>, LiftError> {
    let cocycle = Cocycle::new(c.clone());
    let lift = LiftGroup::new(cocycle.clone());
    let window = lift.window(base, bound);
    Ok(vec![
        check_inhomogeneous_cocycle(&cocycle, base)?,
        check_recovery(&cocycle, base)?,
        check_lift_group(&lift, &window, opts)?,
        check_lift_cone(&lift, &window)?,
        check_lift_central(&lift, &window)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::{natural_circular_cyclic, secret_from_left, units, LeftOrdering};

    fn r(k: u64) -> Element {
        Element::Residue(k)
    }

    fn z3() -> Cocycle {
        Cocycle::new(natural_circular_cyclic(3, 1).unwrap())
    }

    #[test]
    fn f_c_examples() {
        let f = z3();
        assert_eq!(f.f_c(&r(1), &r(1)).unwrap(), 0);
        assert_eq!(f.f_c(&r(2), &r(2)).unwrap(), 1);
        assert_eq!(f.f_c(&r(2), &r(1)).unwrap(), 1);
        assert_eq!(f.f_c(&r(0), &r(2)).unwrap(), 0);
    }

    #[test]
    fn invalid_ordering_fires_no_case() {
        let bad = CircularOrdering::from_oracle(Group::Cyclic(3), crate::orders::Provenance::ExplicitTable, "zero", |_, _, _| Ok(0));
        assert!(matches!(Cocycle::new(bad).f_c(&r(1), &r(1)), Err(LiftError::NoCaseFired { .. })));
    }

    #[test]
    fn lift_ops() {
        let lift = LiftGroup::new(z3());
        let e = |n, a| LiftElement::new(n, r(a));
        assert_eq!(lift.op(&e(0, 1), &e(0, 1)).unwrap(), e(0, 2));
        assert_eq!(lift.op(&e(0, 2), &e(0, 1)).unwrap(), e(1, 0));
        assert_eq!(lift.op(&e(3, 0), &e(4, 0)).unwrap(), e(7, 0));
        assert_eq!(lift.inv(&e(0, 0)).unwrap(), e(0, 0));
        assert_eq!(lift.inv(&e(0, 1)).unwrap(), e(-1, 2));
        assert_eq!(lift.inv(&e(5, 0)).unwrap(), e(-5, 0));
        assert_eq!(lift.pow(&e(0, 1), 3).unwrap(), e(1, 0));
        assert!(!lift.is_positive(&e(0, 0)));
        assert!(lift.is_positive(&e(0, 2)));
        assert!(!lift.is_positive(&e(-1, 1)));
    }

    #[test]
    fn cocycle_identity_and_corruption() {
        for n in 2..=8 {
            for k in units(n) {
                let f = Cocycle::new(natural_circular_cyclic(n, k).unwrap());
                let all = Group::Cyclic(n).elements(100).unwrap();
                assert!(check_inhomogeneous_cocycle(&f, &all).unwrap().passed());
                assert!(check_recovery(&f, &all).unwrap().passed());
            }
        }
        let all = Group::Cyclic(5).elements(10).unwrap();
        let bad = OverrideCocycle::new(Cocycle::new(natural_circular_cyclic(5, 1).unwrap())).flip(r(1), r(2)).unwrap();
        let rep = check_inhomogeneous_cocycle(&bad, &all).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.counterexample.len(), 3);
        assert!(check_inhomogeneous_cocycle(&z3(), &[Element::Residue(0)]).unwrap().passed());
    }

    #[test]
    fn integers_secret_recovery() {
        let f = Cocycle::new(secret_from_left(&LeftOrdering::integers()));
        let i = Element::Int;
        assert_eq!(f.f_c(&i(1), &i(1)).unwrap(), 0);
        assert_eq!(recover_c(&f, &i(0), &i(1), &i(2)).unwrap(), 1);
        assert_eq!(recover_c(&f, &i(0), &i(0), &i(2)).unwrap(), 0);
    }

    #[test]
    fn cyclic_iso() {
        assert!(cyclic_lift_iso_check(3, &natural_circular_cyclic(3, 1).unwrap(), 3).unwrap().passed());
        assert!(cyclic_lift_iso_check(2, &natural_circular_cyclic(2, 1).unwrap(), 3).unwrap().passed());
        for k in units(12) {
            let rep = cyclic_lift_iso_check(12, &natural_circular_cyclic(12, k).unwrap(), 2).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn suite_on_cyclic_and_integers() {
        let c = natural_circular_cyclic(5, 2).unwrap();
        let base = Group::Cyclic(5).elements(10).unwrap();
        for rep in lift_check_suite(&c, &base, 4, LiftCheckOptions::default()).unwrap() {
            assert!(rep.passed(), "{rep:?}");
        }
        let c = secret_from_left(&LeftOrdering::integers());
        let base = Group::Integers.ball(&[Element::Int(1)], 4, 100).unwrap();
        for rep in lift_check_suite(&c, base.elements(), 3, LiftCheckOptions::default()).unwrap() {
            assert!(rep.passed(), "{rep:?}");
        }
    }
}
