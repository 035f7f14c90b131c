use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CircularOrdering, CircularTable, LeftOrdering};
use crate::error::GroupError;
use crate::group::{Element, Group};
use crate::report::{combine, CheckReport, Mode};

/// Largest carrier validated over every tuple; bigger carriers are sampled.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 48;
pub const DEFAULT_SAMPLES: u64 = 200_000;
pub const DEFAULT_SEED: u64 = 0x0c1c_0bde;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidateOptions {
    pub exhaustive_limit: usize,
    pub samples: u64,
    pub seed: u64,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions { exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT, samples: DEFAULT_SAMPLES, seed: DEFAULT_SEED }
    }
}

pub const CHECK_DEGENERACY: &str = "degeneracy";
pub const CHECK_COCYCLE: &str = "cocycle";
pub const CHECK_LEFT_INVARIANCE: &str = "left-invariance";
pub const CHECK_RIGHT_INVARIANCE: &str = "right-invariance";

fn sorted_carrier(group: &Group, carrier: &[Element]) -> Result<Vec<Element>, GroupError> {
    let mut s = carrier.to_vec();
    s.sort();
    s.dedup();
    if let Some(bad) = s.iter().find(|g| !group.contains(g)) {
        return Err(group.mismatch(bad));
    }
    Ok(s)
}

/// `table[h][i]` = index of `s_h · s_i` (left) or `s_i · s_h` (right) in
/// the carrier, when it lies there.
fn translation_table(group: &Group, s: &[Element], left: bool) -> Result<Vec<Vec<Option<usize>>>, GroupError> {
    s.iter()
        .map(|h| {
            s.iter()
                .map(|g| {
                    let p = if left { group.op(h, g)? } else { group.op(g, h)? };
                    Ok(s.binary_search(&p).ok())
                })
                .collect()
        })
        .collect()
}

fn tuple(s: &[Element], idx: &[usize]) -> Vec<Element> {
    idx.iter().map(|&i| s[i].clone()).collect()
}

fn exhaustive_degeneracy(t: &CircularTable) -> CheckReport {
    let n = t.len();
    let s = t.carrier();
    let mut checked = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                checked += 1;
                let v = t.get(i, j, k);
                let degenerate = i == j || j == k || k == i;
                if !(-1..=1).contains(&v) || (v == 0) != degenerate {
                    return CheckReport::fail(CHECK_DEGENERACY, "c = 0 exactly on degenerate triples", tuple(s, &[i, j, k]), checked);
                }
            }
        }
    }
    CheckReport::pass(CHECK_DEGENERACY, checked)
}

fn exhaustive_cocycle(t: &CircularTable) -> CheckReport {
    let n = t.len();
    let s = t.carrier();
    let mut checked = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let abc = t.get(a, b, c) as i32;
                for d in 0..n {
                    checked += 1;
                    let sum = t.get(b, c, d) as i32 - t.get(a, c, d) as i32 + t.get(a, b, d) as i32 - abc;
                    if sum != 0 {
                        return CheckReport::fail(
                            CHECK_COCYCLE,
                            "c(g2,g3,g4) - c(g1,g3,g4) + c(g1,g2,g4) - c(g1,g2,g3) = 0",
                            tuple(s, &[a, b, c, d]),
                            checked,
                        );
                    }
                }
            }
        }
    }
    CheckReport::pass(CHECK_COCYCLE, checked)
}

fn exhaustive_invariance(t: &CircularTable, moves: &[Vec<Option<usize>>], name: &str) -> CheckReport {
    let s = t.carrier();
    let mut checked = 0;
    for (h, mv) in moves.iter().enumerate() {
        for (i, hi) in mv.iter().enumerate() {
            let Some(hi) = *hi else { continue };
            for (j, hj) in mv.iter().enumerate() {
                let Some(hj) = *hj else { continue };
                for (k, hk) in mv.iter().enumerate() {
                    let Some(hk) = *hk else { continue };
                    checked += 1;
                    if t.get(i, j, k) != t.get(hi, hj, hk) {
                        let what = if name == CHECK_LEFT_INVARIANCE {
                            "c(g1,g2,g3) = c(hg1,hg2,hg3)"
                        } else {
                            "c(g1,g2,g3) = c(g1h,g2h,g3h)"
                        };
                        return CheckReport::fail(name, what, tuple(s, &[h, i, j, k]), checked);
                    }
                }
            }
        }
    }
    CheckReport::pass(name, checked)
}

struct Sampler<'a> {
    c: &'a CircularOrdering,
    s: &'a [Element],
    rng: ChaCha8Rng,
    mode: Mode,
    samples: u64,
}

impl Sampler<'_> {
    fn pick(&mut self) -> usize {
        self.rng.gen_range(0..self.s.len())
    }

    fn degeneracy(&mut self) -> Result<CheckReport, GroupError> {
        for checked in 1..=self.samples {
            let (i, j, k) = (self.pick(), self.pick(), self.pick());
            let s = self.s;
            let v = self.c.eval(&s[i], &s[j], &s[k])?;
            if !(-1..=1).contains(&v) || (v == 0) != (i == j || j == k || k == i) {
                return Ok(CheckReport::fail(CHECK_DEGENERACY, "c = 0 exactly on degenerate triples", tuple(s, &[i, j, k]), checked)
                    .with_mode(self.mode));
            }
        }
        Ok(CheckReport::pass(CHECK_DEGENERACY, self.samples).with_mode(self.mode))
    }

    fn cocycle(&mut self) -> Result<CheckReport, GroupError> {
        for checked in 1..=self.samples {
            let idx = [self.pick(), self.pick(), self.pick(), self.pick()];
            let s = self.s;
            let [a, b, c, d] = idx.map(|i| &s[i]);
            let e = |x, y, z| self.c.eval(x, y, z).map(i32::from);
            if e(b, c, d)? - e(a, c, d)? + e(a, b, d)? - e(a, b, c)? != 0 {
                return Ok(CheckReport::fail(
                    CHECK_COCYCLE,
                    "c(g2,g3,g4) - c(g1,g3,g4) + c(g1,g2,g4) - c(g1,g2,g3) = 0",
                    tuple(s, &idx),
                    checked,
                )
                .with_mode(self.mode));
            }
        }
        Ok(CheckReport::pass(CHECK_COCYCLE, self.samples).with_mode(self.mode))
    }

    fn invariance(&mut self, left: bool) -> Result<CheckReport, GroupError> {
        let name = if left { CHECK_LEFT_INVARIANCE } else { CHECK_RIGHT_INVARIANCE };
        let group = self.c.group().clone();
        let mut checked = 0;
        for _ in 0..self.samples {
            let idx = [self.pick(), self.pick(), self.pick(), self.pick()];
            let s = self.s;
            let h = &s[idx[0]];
            let mv = |g: &Element| if left { group.op(h, g) } else { group.op(g, h) };
            let moved = [mv(&s[idx[1]])?, mv(&s[idx[2]])?, mv(&s[idx[3]])?];
            if moved.iter().any(|g| s.binary_search(g).is_err()) {
                continue;
            }
            checked += 1;
            if self.c.eval(&s[idx[1]], &s[idx[2]], &s[idx[3]])? != self.c.eval(&moved[0], &moved[1], &moved[2])? {
                return Ok(CheckReport::fail(name, "invariance under translation", tuple(s, &idx), checked).with_mode(self.mode));
            }
        }
        Ok(CheckReport::pass(name, checked).with_mode(self.mode))
    }
}

fn validate(c: &CircularOrdering, carrier: &[Element], opts: ValidateOptions, right: bool) -> Result<CheckReport, GroupError> {
    let name = if right { "bi-invariant-circular-ordering" } else { "circular-ordering" };
    let group = c.group();
    let s = sorted_carrier(group, carrier)?;
    let mut parts = Vec::new();
    let mode;
    if s.len() <= opts.exhaustive_limit {
        mode = Mode::Exhaustive;
        let t = CircularTable::from_ordering(c, &s)?;
        parts.push(exhaustive_degeneracy(&t));
        parts.push(exhaustive_cocycle(&t));
        parts.push(exhaustive_invariance(&t, &translation_table(group, &s, true)?, CHECK_LEFT_INVARIANCE));
        if right {
            parts.push(exhaustive_invariance(&t, &translation_table(group, &s, false)?, CHECK_RIGHT_INVARIANCE));
        }
    } else {
        mode = Mode::Sampled { samples: opts.samples, seed: opts.seed };
        let mut sampler =
            Sampler { c, s: &s, rng: ChaCha8Rng::seed_from_u64(opts.seed), mode, samples: opts.samples };
        parts.push(sampler.degeneracy()?);
        parts.push(sampler.cocycle()?);
        parts.push(sampler.invariance(true)?);
        if right {
            parts.push(sampler.invariance(false)?);
        }
    }
    let mut report = combine(name, &parts).with_mode(mode);
    if mode != Mode::Exhaustive {
        report = report.with_note("carrier larger than the exhaustive limit; tuples were sampled");
    }
    Ok(report.with_note("invariance is only checked on tuples whose translates stay in the carrier"))
}

/// Checks the circular-ordering axioms on a finite carrier: degeneracy, the
/// cocycle identity on all 4-tuples, and left invariance on the tuples whose
/// translates remain in the carrier.
pub fn validate_circular(c: &CircularOrdering, carrier: &[Element], opts: ValidateOptions) -> Result<CheckReport, GroupError> {
    validate(c, carrier, opts, false)
}

/// [`validate_circular`] plus right invariance.
pub fn validate_bi_invariance(
    c: &CircularOrdering,
    carrier: &[Element],
    opts: ValidateOptions,
) -> Result<CheckReport, GroupError> {
    validate(c, carrier, opts, true)
}

/// Checks the cone axioms on a finite carrier: `id ∉ P`; exactly one of
/// `g, g⁻¹` in `P` when both lie in the carrier; `gh ∈ P` for `g, h ∈ P` with
/// `gh` in the carrier.
pub fn validate_left(lo: &LeftOrdering, carrier: &[Element]) -> Result<CheckReport, GroupError> {
    let group = lo.group();
    let s = sorted_carrier(group, carrier)?;
    let positive: Vec<bool> = s.iter().map(|g| lo.is_positive(g)).collect::<Result<_, _>>()?;
    let mut parts = Vec::new();

    let id = group.identity();
    parts.push(match s.binary_search(&id) {
        Ok(i) if positive[i] => CheckReport::fail("cone-identity", "id not in P", vec![id.clone()], 1),
        _ => CheckReport::pass("cone-identity", 1),
    });

    let mut report = CheckReport::pass("trichotomy", 0);
    for (i, g) in s.iter().enumerate() {
        if *g == id {
            continue;
        }
        if let Ok(j) = s.binary_search(&group.inv(g)?) {
            report.checked_tuples += 1;
            if positive[i] == positive[j] {
                report = CheckReport::fail("trichotomy", "exactly one of g, g^-1 in P", vec![g.clone()], report.checked_tuples);
                break;
            }
        }
    }
    parts.push(report);

    let mut report = CheckReport::pass("closure", 0);
    'outer: for (i, g) in s.iter().enumerate() {
        if !positive[i] {
            continue;
        }
        for (j, h) in s.iter().enumerate() {
            if !positive[j] {
                continue;
            }
            if let Ok(k) = s.binary_search(&group.op(g, h)?) {
                report.checked_tuples += 1;
                if !positive[k] {
                    report = CheckReport::fail("closure", "P·P ⊆ P", vec![g.clone(), h.clone()], report.checked_tuples);
                    break 'outer;
                }
            }
        }
    }
    parts.push(report);
    Ok(combine("left-ordering", &parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_BALL_LIMIT;
    use crate::orders::{natural_circular_cyclic, secret_from_left, units};

    fn all(g: &Group) -> Vec<Element> {
        g.elements(1000).unwrap()
    }

    #[test]
    fn natural_orderings_validate() {
        for n in 2..=9 {
            for k in units(n) {
                let c = natural_circular_cyclic(n, k).unwrap();
                let r = validate_bi_invariance(&c, &all(&Group::Cyclic(n)), ValidateOptions::default()).unwrap();
                assert!(r.passed(), "n={n} k={k}: {r:?}");
            }
        }
    }

    #[test]
    fn flipped_entry_is_caught() {
        let g = Group::Cyclic(4);
        let c = natural_circular_cyclic(4, 1).unwrap();
        let mut t = c.to_table(&all(&g)).unwrap();
        let (a, b, d) = (Element::Residue(0), Element::Residue(1), Element::Residue(2));
        let v = t.value(&a, &b, &d).unwrap();
        t.set(&a, &b, &d, -v).unwrap();
        let r = validate_circular(&t.to_ordering(), &all(&g), ValidateOptions::default()).unwrap();
        assert!(!r.passed());
        assert_eq!(r.violated.as_deref(), Some("c(g2,g3,g4) - c(g1,g3,g4) + c(g1,g2,g4) - c(g1,g2,g3) = 0"));
        assert_eq!(r.counterexample.len(), 4);
    }

    #[test]
    fn secret_integers_on_ball() {
        let ball = Group::Integers.ball(&[Element::Int(1)], 10, DEFAULT_BALL_LIMIT).unwrap();
        let c = secret_from_left(&LeftOrdering::integers());
        let r = validate_circular(&c, ball.elements(), ValidateOptions::default()).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn secret_lex_is_bi_invariant() {
        let g = Group::FreeAbelian(2);
        let ball = g.ball(&g.standard_generators(), 3, DEFAULT_BALL_LIMIT).unwrap();
        let c = secret_from_left(&LeftOrdering::free_abelian_standard(2));
        let r = validate_bi_invariance(&c, ball.elements(), ValidateOptions::default()).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn sampled_mode_on_large_carrier() {
        let ball = Group::Integers.ball(&[Element::Int(1)], 40, DEFAULT_BALL_LIMIT).unwrap();
        let c = secret_from_left(&LeftOrdering::integers());
        let opts = ValidateOptions { samples: 2000, ..ValidateOptions::default() };
        let r = validate_circular(&c, ball.elements(), opts).unwrap();
        assert!(r.passed());
        assert!(matches!(r.mode, Mode::Sampled { .. }));
    }

    #[test]
    fn left_validator() {
        let ball = Group::Integers.ball(&[Element::Int(1)], 5, DEFAULT_BALL_LIMIT).unwrap();
        assert!(validate_left(&LeftOrdering::integers(), ball.elements()).unwrap().passed());
        let even = LeftOrdering::from_cone(Group::Integers, "bad", |g| Ok(g.as_int().unwrap() % 2 == 0 && g.as_int().unwrap() != 0));
        let r = validate_left(&even, ball.elements()).unwrap();
        assert_eq!(r.violated.as_deref(), Some("exactly one of g, g^-1 in P"));
        let finite = LeftOrdering::trivial(Group::Cyclic(3));
        assert!(!validate_left(&finite, &all(&Group::Cyclic(3))).unwrap().passed());
    }
}
