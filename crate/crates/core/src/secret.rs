//! Deciding on a finite carrier whether a circular ordering can be the
//! secret ordering of a left ordering.
//!
//! `c` is secret exactly when `f_c = δd` for a function `d: G → {0,1}`:
//! `f_c(g, h) = d(g) − d(gh) + d(h)`. The positive cone is then
//! `{g ≠ id : d(g) = 0}`. On a finite carrier the unknowns are the values of
//! `d`. Every pair `g, h` with `gh` also in the carrier gives one linear
//! equation. The equations are solved by unit propagation from `d(id) = 0`,
//! branching on the smallest undetermined element (value `0` first) when
//! propagation stalls.
//!
//! Verdicts are local to the carrier. A witness on a ball does not show
//! that `c` is secret on the whole group.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::LiftError;
use crate::group::{Element, Group};
use crate::lift::{Cocycle, Memo};
use crate::orders::{CircularOrdering, LeftOrdering};
use crate::report::CheckReport;

pub const DEFAULT_BRANCH_CAP: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DetectOptions {
    /// Maximum number of branch values tried before giving up.
    pub branch_cap: u64,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions { branch_cap: DEFAULT_BRANCH_CAP }
    }
}

/// The equation `d(g) + d(h) − d(gh) = f_c(g, h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintRef {
    pub g: Element,
    pub h: Element,
    pub gh: Element,
    pub f: i64,
}

impl fmt::Display for ConstraintRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d({}) + d({}) - d({}) = {}", self.g, self.h, self.gh, self.f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    /// `d(id) = 0`.
    Seed { element: Element },
    /// A branching choice.
    Assume { element: Element, value: i64 },
    /// A value forced by an equation with one unknown.
    Derive { element: Element, value: i64, from: ConstraintRef },
    /// An equation that cannot be satisfied by `{0,1}` values.
    Contradiction { constraint: ConstraintRef, detail: String },
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceStep::Seed { element } => write!(f, "seed d({element}) = 0"),
            TraceStep::Assume { element, value } => write!(f, "assume d({element}) = {value}"),
            TraceStep::Derive { element, value, from } => write!(f, "derive d({element}) = {value} from {from}"),
            TraceStep::Contradiction { constraint, detail } => write!(f, "contradiction in {constraint}: {detail}"),
        }
    }
}

/// Why no `{0,1}`-valued `d` exists on the carrier.
///
/// `steps` explains the last refuted branch: every assumption and derivation
/// it used, in the order they were made, ending with the violated equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContradictionTrace {
    pub steps: Vec<TraceStep>,
    pub branches_tried: u64,
}

/// A `{0,1}`-valued `d` on the carrier with `δd = f_c` on every pair whose
/// product stays in the carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoboundarySolution {
    group: Group,
    carrier: Vec<Element>,
    d: Vec<u8>,
}

impl CoboundarySolution {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn carrier(&self) -> &[Element] {
        &self.carrier
    }

    pub fn d(&self, g: &Element) -> Option<u8> {
        self.carrier.binary_search(g).ok().map(|i| self.d[i])
    }

    pub fn values(&self) -> impl Iterator<Item = (&Element, u8)> {
        self.carrier.iter().zip(self.d.iter().copied())
    }

    /// `{g ≠ id : d(g) = 0}`.
    pub fn cone(&self) -> Vec<Element> {
        self.values().filter(|(g, v)| *v == 0 && !self.group.is_identity(g)).map(|(g, _)| g.clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DetectionVerdict {
    SecretWitness(CoboundarySolution),
    NotSecretOnCarrier(ContradictionTrace),
    Inconclusive { reason: String, branches_tried: u64 },
}

impl DetectionVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            DetectionVerdict::SecretWitness(_) => "secret-witness-on-carrier",
            DetectionVerdict::NotSecretOnCarrier(_) => "not-secret-on-carrier",
            DetectionVerdict::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn solution(&self) -> Option<&CoboundarySolution> {
        match self {
            DetectionVerdict::SecretWitness(s) => Some(s),
            _ => None,
        }
    }
}

struct Constraint {
    terms: Vec<(usize, i64)>,
    rhs: i64,
    source: (usize, usize, usize),
}

struct Solver<'a> {
    carrier: &'a [Element],
    constraints: Vec<Constraint>,
    by_var: Vec<Vec<usize>>,
    value: Vec<Option<i64>>,
    reason: Vec<Option<usize>>,
    trail: Vec<usize>,
    id: usize,
    branches: u64,
    cap: u64,
}

enum Outcome {
    Solved,
    Refuted(Vec<TraceStep>),
    GaveUp,
}

impl Solver<'_> {
    fn constraint_ref(&self, ci: usize) -> ConstraintRef {
        let c = &self.constraints[ci];
        let (i, j, k) = c.source;
        ConstraintRef { g: self.carrier[i].clone(), h: self.carrier[j].clone(), gh: self.carrier[k].clone(), f: c.rhs }
    }

    fn assign(&mut self, v: usize, val: i64, reason: Option<usize>) {
        self.value[v] = Some(val);
        self.reason[v] = reason;
        self.trail.push(v);
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let v = self.trail.pop().expect("trail longer than len");
            self.value[v] = None;
            self.reason[v] = None;
        }
    }

    /// Unit propagation; returns the violated constraint and a description.
    fn propagate(&mut self, mut queue: VecDeque<usize>) -> Option<(usize, String)> {
        while let Some(ci) = queue.pop_front() {
            let c = &self.constraints[ci];
            let mut sum = 0;
            let mut unknown = None;
            let mut unknowns = 0;
            for &(v, coef) in &c.terms {
                match self.value[v] {
                    Some(x) => sum += coef * x,
                    None => {
                        unknowns += 1;
                        unknown = Some((v, coef));
                    }
                }
            }
            match (unknowns, unknown) {
                (0, _) if sum != c.rhs => return Some((ci, format!("left side is {sum}"))),
                (1, Some((v, coef))) => {
                    let rest = c.rhs - sum;
                    if rest % coef != 0 {
                        return Some((ci, format!("forces d({}) = {rest}/{coef}", self.carrier[v])));
                    }
                    let val = rest / coef;
                    if !(0..=1).contains(&val) {
                        return Some((ci, format!("forces d({}) = {val}", self.carrier[v])));
                    }
                    self.assign(v, val, Some(ci));
                    queue.extend(self.by_var[v].iter().copied());
                }
                _ => {}
            }
        }
        None
    }

    /// The assumptions and derivations that the violated constraint depends on.
    fn trace(&self, ci: usize, detail: String) -> Vec<TraceStep> {
        let position: BTreeMap<usize, usize> = self.trail.iter().enumerate().map(|(p, &v)| (v, p)).collect();
        let mut needed = vec![false; self.carrier.len()];
        let mut stack: Vec<usize> = self.constraints[ci].terms.iter().map(|&(v, _)| v).collect();
        while let Some(v) = stack.pop() {
            if needed[v] || self.value[v].is_none() {
                continue;
            }
            needed[v] = true;
            if let Some(r) = self.reason[v] {
                stack.extend(self.constraints[r].terms.iter().map(|&(u, _)| u));
            }
        }
        let mut vars: Vec<usize> = (0..needed.len()).filter(|&v| needed[v]).collect();
        vars.sort_by_key(|v| position[v]);
        let mut steps: Vec<TraceStep> = vars
            .into_iter()
            .map(|v| {
                let element = self.carrier[v].clone();
                let value = self.value[v].expect("needed variables are assigned");
                match self.reason[v] {
                    Some(r) => TraceStep::Derive { element, value, from: self.constraint_ref(r) },
                    None if v == self.id => TraceStep::Seed { element },
                    None => TraceStep::Assume { element, value },
                }
            })
            .collect();
        steps.push(TraceStep::Contradiction { constraint: self.constraint_ref(ci), detail });
        steps
    }

    fn solve(&mut self, queue: VecDeque<usize>) -> Outcome {
        if let Some((ci, detail)) = self.propagate(queue) {
            return Outcome::Refuted(self.trace(ci, detail));
        }
        let Some(v) = (0..self.carrier.len()).find(|&v| self.value[v].is_none()) else {
            return Outcome::Solved;
        };
        let mut last = Vec::new();
        for val in [0, 1] {
            if self.branches >= self.cap {
                return Outcome::GaveUp;
            }
            self.branches += 1;
            let mark = self.trail.len();
            self.assign(v, val, None);
            match self.solve(self.by_var[v].iter().copied().collect()) {
                Outcome::Solved => return Outcome::Solved,
                Outcome::GaveUp => return Outcome::GaveUp,
                Outcome::Refuted(t) => last = t,
            }
            self.undo_to(mark);
        }
        Outcome::Refuted(last)
    }
}

/// Looks for `d: carrier → {0,1}` with `d(id) = 0` and
/// `d(g) + d(h) − d(gh) = f_c(g, h)` whenever `g, h, gh` lie in the carrier.
pub fn detect_secret(c: &CircularOrdering, carrier: &[Element], opts: DetectOptions) -> Result<DetectionVerdict, LiftError> {
    let group = c.group();
    let mut s = carrier.to_vec();
    s.sort();
    s.dedup();
    if let Some(bad) = s.iter().find(|g| !group.contains(g)) {
        return Err(group.mismatch(bad).into());
    }
    let id_el = group.identity();
    if s.binary_search(&id_el).is_err() {
        s.push(id_el.clone());
        s.sort();
    }
    let id = s.binary_search(&id_el).expect("identity inserted");
    let n = s.len();

    let cocycle = Cocycle::new(c.clone());
    let memo = Memo::new(&cocycle);
    let mut constraints = Vec::new();
    let mut by_var = vec![Vec::new(); n];
    for i in 0..n {
        if i == id {
            continue;
        }
        for j in 0..n {
            if j == id {
                continue;
            }
            let Ok(k) = s.binary_search(&group.op(&s[i], &s[j])?) else { continue };
            let mut terms: BTreeMap<usize, i64> = BTreeMap::new();
            *terms.entry(i).or_default() += 1;
            *terms.entry(j).or_default() += 1;
            *terms.entry(k).or_default() -= 1;
            let terms: Vec<(usize, i64)> = terms.into_iter().filter(|&(_, c)| c != 0).collect();
            let ci = constraints.len();
            for &(v, _) in &terms {
                by_var[v].push(ci);
            }
            constraints.push(Constraint { terms, rhs: memo.eval(&s[i], &s[j])?, source: (i, j, k) });
        }
    }

    let mut solver = Solver {
        carrier: &s,
        constraints,
        by_var,
        value: vec![None; n],
        reason: vec![None; n],
        trail: Vec::new(),
        id,
        branches: 0,
        cap: opts.branch_cap,
    };
    solver.assign(id, 0, None);
    let all: VecDeque<usize> = (0..solver.constraints.len()).collect();
    Ok(match solver.solve(all) {
        Outcome::Solved => DetectionVerdict::SecretWitness(CoboundarySolution {
            group: group.clone(),
            d: solver.value.iter().map(|v| v.expect("solved") as u8).collect(),
            carrier: s.clone(),
        }),
        Outcome::Refuted(steps) => DetectionVerdict::NotSecretOnCarrier(ContradictionTrace { steps, branches_tried: solver.branches }),
        Outcome::GaveUp => DetectionVerdict::Inconclusive {
            reason: format!("branching cap of {} trials reached", opts.branch_cap),
            branches_tried: solver.branches,
        },
    })
}

/// Re-checks every carrier equation against a solution.
pub fn check_solution(c: &CircularOrdering, s: &CoboundarySolution) -> Result<CheckReport, LiftError> {
    const NAME: &str = "coboundary-on-carrier";
    let group = c.group();
    let cocycle = Cocycle::new(c.clone());
    let memo = Memo::new(&cocycle);
    let mut checked = 0;
    if s.d(&group.identity()) != Some(0) {
        return Ok(CheckReport::fail(NAME, "d(id) = 0", vec![group.identity()], 0));
    }
    for (g, dg) in s.values() {
        for (h, dh) in s.values() {
            let gh = group.op(g, h)?;
            let Some(dgh) = s.d(&gh) else { continue };
            checked += 1;
            if i64::from(dg) + i64::from(dh) - i64::from(dgh) != memo.eval(g, h)? {
                return Ok(CheckReport::fail(NAME, "d(g) + d(h) - d(gh) = f_c(g,h)", vec![g.clone(), h.clone()], checked));
            }
        }
    }
    Ok(CheckReport::pass(NAME, checked))
}

/// The positive cone `{g : d(g) = 0, g ≠ id}` as an ordering on the carrier.
pub fn cone_from_solution(s: &CoboundarySolution) -> LeftOrdering {
    LeftOrdering::from_cone_set(s.group.clone(), s.carrier.clone(), s.cone()).with_label("recovered")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_BALL_LIMIT;
    use crate::orders::{natural_circular_cyclic, product_circular, secret_from_left, units, validate_left};

    /// All `d` with `d(id) = 0` on a finite group, by brute force.
    fn brute_force_exists(c: &CircularOrdering) -> bool {
        let g = c.group();
        let all = g.elements(64).unwrap();
        let f = Cocycle::new(c.clone());
        let n = all.len();
        'masks: for mask in 0u32..(1 << (n - 1)) {
            let d = |x: &Element| -> i64 {
                let i = all.binary_search(x).unwrap();
                if i == 0 {
                    0
                } else {
                    ((mask >> (i - 1)) & 1) as i64
                }
            };
            for a in &all {
                for b in &all {
                    if d(a) + d(b) - d(&g.op(a, b).unwrap()) != f.f_c(a, b).unwrap() as i64 {
                        continue 'masks;
                    }
                }
            }
            return true;
        }
        false
    }

    #[test]
    fn cyclic_groups_are_not_secret() {
        for n in 2..=12u64 {
            for k in units(n) {
                let c = natural_circular_cyclic(n, k).unwrap();
                let all = c.group().elements(100).unwrap();
                let v = detect_secret(&c, &all, DetectOptions::default()).unwrap();
                assert!(matches!(v, DetectionVerdict::NotSecretOnCarrier(_)), "n={n} k={k}: {v:?}");
                if n <= 6 {
                    assert!(!brute_force_exists(&c));
                }
            }
        }
    }

    #[test]
    fn z2_contradiction_is_immediate() {
        let c = natural_circular_cyclic(2, 1).unwrap();
        let all = c.group().elements(10).unwrap();
        let DetectionVerdict::NotSecretOnCarrier(t) = detect_secret(&c, &all, DetectOptions::default()).unwrap() else {
            panic!("expected a contradiction");
        };
        assert_eq!(t.branches_tried, 0);
        assert!(matches!(t.steps.last(), Some(TraceStep::Contradiction { .. })));
    }

    #[test]
    fn integers_round_trip() {
        let lo = LeftOrdering::integers();
        let c = secret_from_left(&lo);
        let ball = Group::Integers.ball(&[Element::Int(1)], 20, DEFAULT_BALL_LIMIT).unwrap();
        let v = detect_secret(&c, ball.elements(), DetectOptions::default()).unwrap();
        let s = v.solution().expect("secret ordering");
        let cone = s.cone();
        assert_eq!(cone, (1..=20).map(Element::Int).collect::<Vec<_>>());
        assert!(check_solution(&c, s).unwrap().passed());
        assert!(validate_left(&cone_from_solution(s), ball.elements()).unwrap().passed());
    }

    #[test]
    fn lex_round_trip() {
        let lo = LeftOrdering::free_abelian_standard(2);
        let c = secret_from_left(&lo);
        let g = Group::FreeAbelian(2);
        let ball = g.ball(&g.standard_generators(), 5, DEFAULT_BALL_LIMIT).unwrap();
        let v = detect_secret(&c, ball.elements(), DetectOptions::default()).unwrap();
        let s = v.solution().expect("secret ordering");
        for x in ball.elements() {
            let expected = lo.is_positive(x).unwrap();
            assert_eq!(s.cone().contains(x), expected, "{x}");
        }
    }

    #[test]
    fn product_with_torsion_is_not_secret() {
        let c = product_circular(&LeftOrdering::integers(), 2).unwrap();
        let g = c.group().clone();
        let ball = g.ball(&g.standard_generators(), 3, DEFAULT_BALL_LIMIT).unwrap();
        let v = detect_secret(&c, ball.elements(), DetectOptions::default()).unwrap();
        assert_eq!(v.name(), "not-secret-on-carrier");
    }

    #[test]
    fn trivial_group_has_empty_cone() {
        let c = CircularOrdering::from_oracle(Group::trivial(), crate::orders::Provenance::ExplicitTable, "t", |_, _, _| Ok(0));
        let v = detect_secret(&c, &[Element::Residue(0)], DetectOptions::default()).unwrap();
        assert!(v.solution().unwrap().cone().is_empty());
    }

    #[test]
    fn deterministic() {
        let c = natural_circular_cyclic(7, 3).unwrap();
        let all = c.group().elements(10).unwrap();
        let a = detect_secret(&c, &all, DetectOptions::default()).unwrap();
        let b = detect_secret(&c, &all, DetectOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cap_gives_inconclusive() {
        let c = natural_circular_cyclic(7, 1).unwrap();
        let all = c.group().elements(10).unwrap();
        let v = detect_secret(&c, &all, DetectOptions { branch_cap: 1 }).unwrap();
        assert_eq!(v.name(), "inconclusive");
    }
}
