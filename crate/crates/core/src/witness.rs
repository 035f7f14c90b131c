//! The solvable witness group `G ⊂ B = (H ⋊ K/(y)) ⋊ ⟨z⟩` whose obstruction
//! spectrum is `pℕ`.
//!
//! * `H ≅ ℤ[1/(p+1)]^p`, written multiplicatively as `x₁^{a₁}⋯x_p^{a_p}`;
//!   stored as the exponent vector `a`.
//! * `K = ℤ^p` on `y₁,…,y_p` acts by `y_i x_i y_i⁻¹ = x_i^{p+1}`,
//!   `y_i x_{i+1} y_i⁻¹ = x_{i+1}^{1/(p+1)}`, fixing the other `x_j`.
//!   `y = y₁⋯y_p` acts trivially, and `K/(y)` is stored by the
//!   representative whose last coordinate is zero.
//! * `z` has order `p` and shifts indices: `z x_i z⁻¹ = x_{i+1}`,
//!   `z y_i z⁻¹ = y_{i+1}`.
//!
//! `G` is the set of `h k zⁱ` with `φ(h) = i`, where `φ: H → ℤ/p` sends
//! every `x_j^{1/(p+1)^k}` to `1`.
//!
//! Indices are zero-based in code: `x₁` is index `0`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GroupError;
use crate::group::Element;
use crate::report::{CheckReport, Mode};

/// The ambient group `B` for a prime `p`.
///
/// `raise` is the exponent by which `y_i` scales `x_i`. It is `p + 1` for
/// the genuine group; [`WitnessGroup::sabotaged`] sets it to `p`, which
/// breaks the relation `y x_i y⁻¹ = x_i` and is used as a mutation test.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WitnessGroup {
    p: u32,
    raise: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WitnessElement {
    /// Exponents of `x₁,…,x_p`.
    pub x: Vec<BigRational>,
    /// Coordinates of `k ∈ K/(y)`, last entry zero.
    pub y: Vec<i64>,
    /// Power of `z`, in `0..p`.
    pub z: u32,
}

impl fmt::Display for WitnessElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^(")?;
        for (i, a) in self.x.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ") y^(")?;
        for (i, b) in self.y.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ") z^{}", self.z)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl WitnessGroup {
    pub fn new(p: u32) -> Result<Self, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::InvalidParameter(format!("witness group needs a prime, got {p}")));
        }
        Ok(WitnessGroup { p, raise: p as u64 + 1 })
    }

    /// The same data with `y_i x_i y_i⁻¹ = x_i^p`; not a group.
    pub fn sabotaged(p: u32) -> Result<Self, GroupError> {
        let mut w = WitnessGroup::new(p)?;
        w.raise = p as u64;
        Ok(w)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn is_sabotaged(&self) -> bool {
        self.raise != self.p as u64 + 1
    }

    fn n(&self) -> usize {
        self.p as usize
    }

    fn base(&self) -> BigInt {
        BigInt::from(self.p as u64 + 1)
    }

    pub fn identity(&self) -> WitnessElement {
        WitnessElement { x: vec![BigRational::zero(); self.n()], y: vec![0; self.n()], z: 0 }
    }

    /// `x_i^{value}` for a zero-based index.
    pub fn x_power(&self, i: usize, value: BigRational) -> WitnessElement {
        let mut e = self.identity();
        e.x[i % self.n()] = value;
        e
    }

    pub fn x(&self, i: usize) -> WitnessElement {
        self.x_power(i, BigRational::one())
    }

    /// `y_i` reduced into `K/(y)`.
    pub fn y(&self, i: usize) -> WitnessElement {
        let mut e = self.identity();
        let mut b = vec![0; self.n()];
        b[i % self.n()] = 1;
        e.y = self.canonical_y(b);
        e
    }

    pub fn z(&self) -> WitnessElement {
        let mut e = self.identity();
        e.z = 1 % self.p;
        e
    }

    pub fn generators(&self) -> Vec<Element> {
        let n = self.n();
        let mut g: Vec<Element> = (0..n).map(|i| Element::Witness(self.x(i))).collect();
        g.extend((0..n).map(|i| Element::Witness(self.y(i))));
        g.push(Element::Witness(self.z()));
        g
    }

    fn canonical_y(&self, mut b: Vec<i64>) -> Vec<i64> {
        let last = b[self.n() - 1];
        for v in &mut b {
            *v -= last;
        }
        b
    }

    /// Minimal `(m, j)` with `value = m / (p+1)^j`.
    pub fn scaled_form(&self, value: &BigRational) -> Result<(BigInt, u32), GroupError> {
        let base = self.base();
        let mut rest = value.denom().clone();
        let mut j = 0u32;
        let mut scale = BigInt::one();
        while !rest.is_one() {
            let g = rest.gcd(&base);
            if g.is_one() {
                return Err(GroupError::InvalidDenominator(value.to_string()));
            }
            rest /= g;
            j += 1;
            scale *= &base;
        }
        let m = value.numer() * (scale / value.denom());
        Ok((m, j))
    }

    /// Numerator of `value` written over `(p+1)^depth`, for any depth at
    /// least the minimal one.
    pub fn numerator_at_depth(&self, value: &BigRational, depth: u32) -> Result<BigInt, GroupError> {
        let (m, j) = self.scaled_form(value)?;
        if depth < j {
            return Err(GroupError::InvalidParameter(format!("{value} needs depth {j}, got {depth}")));
        }
        Ok(m * num_traits::pow(self.base(), (depth - j) as usize))
    }

    /// `φ_H(x^a) = Σ mᵢ mod p` where `aᵢ = mᵢ/(p+1)^{jᵢ}`.
    pub fn phi_h(&self, a: &[BigRational]) -> Result<u32, GroupError> {
        let p = BigInt::from(self.p);
        let mut total = BigInt::zero();
        for v in a {
            total += self.scaled_form(v)?.0;
        }
        Ok(total.mod_floor(&p).to_u32().expect("residue below p"))
    }

    pub fn membership(&self, e: &WitnessElement) -> Result<WitnessMembership, GroupError> {
        let phi = self.phi_h(&e.x)?;
        Ok(WitnessMembership { phi, in_g: phi == e.z })
    }

    /// Membership in `G`. A coordinate outside `ℤ[1/(p+1)]` (which only the
    /// sabotaged action produces) means the element is not in `G`.
    pub fn in_g(&self, e: &WitnessElement) -> Result<bool, GroupError> {
        match self.membership(e) {
            Ok(m) => Ok(m.in_g),
            Err(GroupError::InvalidDenominator(_)) => Ok(false),
            Err(other) => Err(other),
        }
    }

    pub fn contains(&self, e: &WitnessElement) -> bool {
        let n = self.n();
        e.x.len() == n
            && e.y.len() == n
            && e.y[n - 1] == 0
            && e.z < self.p
            && (self.is_sabotaged() || e.x.iter().all(|v| self.scaled_form(v).is_ok()))
    }

    /// `r[j + i] = v[j]`: conjugation by `zⁱ`.
    fn shift<T: Clone>(&self, i: u32, v: &[T]) -> Vec<T> {
        let n = self.n();
        let mut out = v.to_vec();
        for (j, x) in v.iter().enumerate() {
            out[(j + i as usize) % n] = x.clone();
        }
        out
    }

    fn power_of(base: u64, e: i64) -> BigRational {
        let b = BigRational::from_integer(BigInt::from(base));
        if e >= 0 {
            num_traits::pow(b, e as usize)
        } else {
            num_traits::pow(b.recip(), e.unsigned_abs() as usize)
        }
    }

    /// Conjugation by `y^b` on exponent vectors, for any representative `b`:
    /// `a_j ↦ a_j · raise^{b_j} · (p+1)^{-b_{j-1}}`.
    pub fn act(&self, b: &[i64], a: &[BigRational]) -> Vec<BigRational> {
        let n = self.n();
        (0..n)
            .map(|j| {
                let prev = b[(j + n - 1) % n];
                &a[j] * Self::power_of(self.raise, b[j]) * Self::power_of(self.p as u64 + 1, -prev)
            })
            .collect()
    }

    fn check(&self, e: &WitnessElement) -> Result<(), GroupError> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(GroupError::NotAnElement { group: self.to_string(), element: e.to_string() })
        }
    }

    pub fn op(&self, g: &WitnessElement, h: &WitnessElement) -> Result<WitnessElement, GroupError> {
        self.check(g)?;
        self.check(h)?;
        let moved = self.act(&g.y, &self.shift(g.z, &h.x));
        let x = g.x.iter().zip(&moved).map(|(a, b)| a + b).collect();
        let shifted_y = self.shift(g.z, &h.y);
        let y = self.canonical_y(g.y.iter().zip(&shifted_y).map(|(a, b)| a + b).collect());
        let z = (g.z + h.z) % self.p;
        Ok(WitnessElement { x, y, z })
    }

    pub fn inv(&self, g: &WitnessElement) -> Result<WitnessElement, GroupError> {
        self.check(g)?;
        let back = (self.p - g.z) % self.p;
        let neg_y: Vec<i64> = g.y.iter().map(|b| -b).collect();
        let neg_x: Vec<BigRational> = g.x.iter().map(|a| -a).collect();
        let x = self.shift(back, &self.act(&neg_y, &neg_x));
        let y = self.canonical_y(self.shift(back, &neg_y));
        Ok(WitnessElement { x, y, z: back })
    }

    pub fn commutator(&self, g: &WitnessElement, h: &WitnessElement) -> Result<WitnessElement, GroupError> {
        let gh = self.op(g, h)?;
        let gi = self.inv(g)?;
        let hi = self.inv(h)?;
        self.op(&self.op(&gh, &gi)?, &hi)
    }

    pub fn pow(&self, g: &WitnessElement, k: u32) -> Result<WitnessElement, GroupError> {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.op(&acc, g)?;
        }
        Ok(acc)
    }

    /// A pseudo-random element of `G`: small exponents, depths up to 2, and
    /// `x₁`'s exponent shifted by an integer so that `φ(h) = i`.
    pub fn sample_g(&self, rng: &mut ChaCha8Rng) -> WitnessElement {
        let n = self.n();
        let base = self.p as i64 + 1;
        let mut x: Vec<BigRational> = (0..n)
            .map(|_| {
                let m = rng.gen_range(-6i64..=6);
                let depth = rng.gen_range(0u32..=2);
                BigRational::new(BigInt::from(m), BigInt::from(base.pow(depth)))
            })
            .collect();
        let mut y: Vec<i64> = (0..n).map(|_| rng.gen_range(-2i64..=2)).collect();
        y[n - 1] = 0;
        let z = rng.gen_range(0..self.p);
        let phi = self.phi_h(&x).expect("sampled denominators are powers of p+1");
        let fix = (z as i64 - phi as i64).rem_euclid(self.p as i64);
        x[0] = &x[0] + rat(fix);
        WitnessElement { x, y, z }
    }
}

impl fmt::Display for WitnessGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_sabotaged() {
            write!(f, "witness:{}:sabotaged", self.p)
        } else {
            write!(f, "witness:{}", self.p)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessMembership {
    pub phi: u32,
    pub in_g: bool,
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub p: u32,
    pub budget: usize,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
    /// Statements carried on the report without being computed here.
    pub recorded_facts: Vec<String>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.check == name)
    }
}

pub const CHECK_CENTRAL_Y: &str = "y-centralizes-x";
pub const CHECK_G_IJ: &str = "g_ij-in-G";
pub const CHECK_COMMUTATOR_Y: &str = "commutator-g_ij-y";
pub const CHECK_COMMUTATOR_XZ: &str = "commutator-xz";
pub const CHECK_CLOSURE: &str = "closure";
pub const CHECK_TORSION: &str = "torsion-spot-check";

pub const DEFAULT_SEED: u64 = 0x5eed_0f0b;

fn w(e: WitnessElement) -> Element {
    Element::Witness(e)
}

/// Verifies the structural claims about the witness group by exact
/// computation: six check families, each sampled up to `budget` instances.
pub fn verify_witness_claims(group: &WitnessGroup, budget: usize, seed: u64) -> Result<WitnessReport, GroupError> {
    let p = group.p;
    let n = group.n();
    let base = BigRational::from_integer(BigInt::from(p as u64 + 1));
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampled = Mode::Sampled { samples: budget as u64, seed };

    // (1) y = y₁⋯y_p fixes every x_i, applying the y_j one at a time in H ⋊ K.
    let mut report = CheckReport::pass(CHECK_CENTRAL_Y, 0);
    for i in 0..n {
        let mut a = group.x(i).x;
        for j in 0..n {
            let mut unit = vec![0; n];
            unit[j] = 1;
            a = group.act(&unit, &a);
        }
        report.checked_tuples += 1;
        if a != group.x(i).x {
            let mut bad = group.identity();
            bad.x = a;
            report = CheckReport::fail(CHECK_CENTRAL_Y, "y x_i y^-1 = x_i", vec![w(group.x(i)), w(bad)], report.checked_tuples);
            break;
        }
    }
    checks.push(report);

    // (2) g_{i,j} = x_i^{1/(p+1)^j} x_{i+1}^{-1/(p+1)^j} ∈ G.
    let g_ij = |i: usize, j: i64| -> WitnessElement {
        let s = WitnessGroup::power_of(p as u64 + 1, -j);
        let mut e = group.identity();
        e.x[i % n] = s.clone();
        e.x[(i + 1) % n] = -s;
        e
    };
    let mut report = CheckReport::pass(CHECK_G_IJ, 0).with_mode(sampled);
    for _ in 0..budget {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(-4i64..=6));
        let g = g_ij(i, j);
        report.checked_tuples += 1;
        if !group.in_g(&g)? {
            report = CheckReport::fail(CHECK_G_IJ, "g_ij in G", vec![w(g)], report.checked_tuples).with_mode(sampled);
            break;
        }
    }
    checks.push(report);

    // (3) [g_{i,j}, y_{i+1}] has x_{i+1}-exponent p/(p+1)^j. The x_{i+2}
    // factor of y_{i+1}'s action is x_i itself when p = 2, which leaves an
    // extra x_i^{p/(p+1)^{j+1}}.
    let mut report = CheckReport::pass(CHECK_COMMUTATOR_Y, 0).with_mode(sampled);
    for _ in 0..budget {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(-4i64..=6));
        let s = WitnessGroup::power_of(p as u64 + 1, -j);
        let got = group.commutator(&g_ij(i, j), &group.y(i + 1))?;
        let mut expected = group.identity();
        expected.x[(i + 1) % n] = &s * rat(p as i64);
        if p == 2 {
            expected.x[i % n] = &s * rat(p as i64) / &base;
        }
        report.checked_tuples += 1;
        if got != expected || !group.in_g(&got)? {
            report = CheckReport::fail(CHECK_COMMUTATOR_Y, "[g_ij, y_(i+1)]", vec![w(g_ij(i, j)), w(got), w(expected)], report.checked_tuples)
                .with_mode(sampled);
            break;
        }
    }
    checks.push(report);

    // (4) [x_i z, x_{i+1} z] = x_i x_{i+1}^{-2} x_{i+2}.
    let mut report = CheckReport::pass(CHECK_COMMUTATOR_XZ, 0);
    for i in 0..n {
        let xz = |k: usize| group.op(&group.x(k), &group.z());
        let (a, b) = (xz(i)?, xz(i + 1)?);
        let got = group.commutator(&a, &b)?;
        let mut expected = group.identity();
        expected.x[i % n] += rat(1);
        expected.x[(i + 1) % n] += rat(-2);
        expected.x[(i + 2) % n] += rat(1);
        report.checked_tuples += 1;
        if !group.in_g(&a)? || !group.in_g(&b)? || got != expected {
            report = CheckReport::fail(CHECK_COMMUTATOR_XZ, "[x_i z, x_(i+1) z]", vec![w(a), w(b), w(got)], report.checked_tuples);
            break;
        }
    }
    checks.push(report);

    // (5) G closed under sampled products and inverses.
    let mut report = CheckReport::pass(CHECK_CLOSURE, 0).with_mode(sampled);
    for _ in 0..budget {
        let (g, h) = (group.sample_g(&mut rng), group.sample_g(&mut rng));
        let gh = group.op(&g, &h)?;
        let gi = group.inv(&g)?;
        report.checked_tuples += 1;
        let inverse_ok = group.op(&g, &gi)? == group.identity();
        if !group.in_g(&gh)? || !group.in_g(&gi)? || !inverse_ok {
            report = CheckReport::fail(CHECK_CLOSURE, "closure under products and inverses", vec![w(g), w(h)], report.checked_tuples)
                .with_mode(sampled);
            break;
        }
    }
    checks.push(report);

    // (6) No sampled non-identity element of G has order ≤ p.
    let mut report = CheckReport::pass(CHECK_TORSION, 0)
        .with_mode(sampled)
        .with_note("sampled elements are consistent with torsion-freeness; this is not a proof");
    let id = group.identity();
    'samples: for _ in 0..budget {
        let g = group.sample_g(&mut rng);
        if g == id {
            continue;
        }
        let mut acc = g.clone();
        for k in 1..=p {
            report.checked_tuples += 1;
            if acc == id {
                report = CheckReport::fail(CHECK_TORSION, format!("element of order {k}"), vec![w(g)], report.checked_tuples)
                    .with_mode(sampled);
                break 'samples;
            }
            acc = group.op(&acc, &g)?;
        }
    }
    checks.push(report);

    Ok(WitnessReport {
        p,
        budget,
        seed,
        checks,
        recorded_facts: vec![
            "B = (H ⋊ K/(y)) ⋊ ⟨z⟩ is circularly orderable: supplied fact, ordering not constructed".to_string(),
            format!("Ob(G) = {p}ℕ: recorded conclusion, not computed"),
            "G is finitely generated and solvable, hence amenable: recorded".to_string(),
        ],
    })
}
