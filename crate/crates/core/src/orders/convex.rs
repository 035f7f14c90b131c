use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::LeftOrdering;
use crate::error::GroupError;
use crate::group::{smith_normal_form, Ball, Element, Group, IntMatrix, DEFAULT_BALL_LIMIT};
use crate::report::CheckReport;

/// Membership in the subgroup generated by a finite set.
///
/// For abelian groups built from `ℤ`, `ℤᵏ` and `ℤ/n` the test is exact: the
/// subgroup plus the torsion relations form a lattice, decided by Smith
/// normal form. Otherwise membership is searched for in a ball of the
/// subgroup's generators, and elements outside it are undecided.
#[derive(Clone, Debug)]
pub enum SubgroupMembership {
    Lattice { group: Group, u: IntMatrix, diagonal: Vec<BigInt> },
    BallSearch { group: Group, ball: Vec<Element> },
}

/// Moduli of the coordinates of an abelian group (`0` for `ℤ`), or `None`.
fn abelian_moduli(group: &Group) -> Option<Vec<u64>> {
    match group {
        Group::Cyclic(n) => Some(vec![*n]),
        Group::Integers => Some(vec![0]),
        Group::FreeAbelian(k) => Some(vec![0; *k]),
        Group::Product(a, b) => {
            let mut m = abelian_moduli(a)?;
            m.extend(abelian_moduli(b)?);
            Some(m)
        }
        _ => None,
    }
}

fn coordinates(g: &Element, out: &mut Vec<i64>) {
    match g {
        Element::Residue(r) => out.push(*r as i64),
        Element::Int(k) => out.push(*k),
        Element::Vector(v) => out.extend_from_slice(v),
        Element::Pair(a, b) => {
            coordinates(a, out);
            coordinates(b, out);
        }
        _ => unreachable!("only called on abelian groups"),
    }
}

impl SubgroupMembership {
    pub fn new(group: &Group, generators: &[Element], fallback_radius: usize) -> Result<Self, GroupError> {
        if let Some(bad) = generators.iter().find(|g| !group.contains(g)) {
            return Err(group.mismatch(bad));
        }
        if let Some(moduli) = abelian_moduli(group) {
            let dim = moduli.len();
            let mut columns: Vec<Vec<i64>> = generators
                .iter()
                .map(|g| {
                    let mut c = Vec::with_capacity(dim);
                    coordinates(g, &mut c);
                    c
                })
                .collect();
            for (i, &m) in moduli.iter().enumerate() {
                if m > 0 {
                    let mut c = vec![0; dim];
                    c[i] = m as i64;
                    columns.push(c);
                }
            }
            let rows: Vec<Vec<i64>> = (0..dim).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
            let m = if columns.is_empty() { IntMatrix::zeros(dim, 1) } else { IntMatrix::from_rows(&rows) };
            let snf = smith_normal_form(&m);
            return Ok(SubgroupMembership::Lattice { group: group.clone(), u: snf.u, diagonal: snf.d.diagonal() });
        }
        let ball = group.ball(generators, fallback_radius, DEFAULT_BALL_LIMIT)?;
        Ok(SubgroupMembership::BallSearch { group: group.clone(), ball: ball.elements().to_vec() })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SubgroupMembership::Lattice { .. })
    }

    /// `Some(answer)` when decided, `None` when the ball search is silent.
    pub fn contains(&self, x: &Element) -> Result<Option<bool>, GroupError> {
        match self {
            SubgroupMembership::Lattice { group, u, diagonal } => {
                if !group.contains(x) {
                    return Err(group.mismatch(x));
                }
                let mut c = Vec::new();
                coordinates(x, &mut c);
                let column: Vec<Vec<i64>> = c.iter().map(|&v| vec![v]).collect();
                let y = u.mul(&IntMatrix::from_rows(&column));
                for i in 0..y.rows() {
                    let yi = y.get(i, 0);
                    let d = diagonal.get(i).cloned().unwrap_or_else(BigInt::zero);
                    let ok = if d.is_zero() { yi.is_zero() } else { yi.is_multiple_of(&d) };
                    if !ok {
                        return Ok(Some(false));
                    }
                }
                Ok(Some(true))
            }
            SubgroupMembership::BallSearch { ball, .. } => Ok(ball.binary_search(x).is_ok().then_some(true)),
        }
    }
}

/// Checks on a ball that the left ordering induces a well-defined order on
/// the cosets `gC` of the subgroup generated by `generators`: whenever
/// `gC = g'C`, `hC = h'C` and `gC ≠ hC`, `g < h` must agree with `g' < h'`.
pub fn convexity_check(lo: &LeftOrdering, generators: &[Element], ball: &Ball) -> Result<CheckReport, GroupError> {
    const NAME: &str = "convexity";
    let group = lo.group();
    let membership = SubgroupMembership::new(group, generators, 2 * ball.radius().max(1))?;
    let elements = ball.elements();
    let n = elements.len();

    // Partition the ball into cosets; `undecided` records whether some pair
    // could not be resolved.
    let mut class: Vec<usize> = (0..n).collect();
    let mut undecided = false;
    let mut checked = 0u64;
    for i in 0..n {
        if class[i] != i {
            continue;
        }
        for j in i + 1..n {
            if class[j] != j {
                continue;
            }
            checked += 1;
            match membership.contains(&group.left_quotient(&elements[i], &elements[j])?)? {
                Some(true) => class[j] = i,
                Some(false) => {}
                None => undecided = true,
            }
        }
    }

    let mut less = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                less[i * n + j] = lo.less(&elements[i], &elements[j])?;
            }
        }
    }

    // For every ordered pair of classes, the first comparison seen fixes the
    // direction; any later disagreement is a violation.
    let reps: Vec<usize> = (0..n).filter(|&i| class[i] == i).collect();
    let slot = |c: usize| reps.binary_search(&c).expect("class representative");
    let k = reps.len();
    let mut first: Vec<Option<(usize, usize)>> = vec![None; k * k];
    for i in 0..n {
        for j in 0..n {
            let (ci, cj) = (slot(class[i]), slot(class[j]));
            if ci == cj {
                continue;
            }
            checked += 1;
            match first[ci * k + cj] {
                None => first[ci * k + cj] = Some((i, j)),
                Some((a, b)) if less[a * n + b] != less[i * n + j] => {
                    let (g, h, g2, h2) = if less[a * n + b] { (a, b, i, j) } else { (i, j, a, b) };
                    let witness = vec![elements[g].clone(), elements[h].clone(), elements[g2].clone(), elements[h2].clone()];
                    if undecided {
                        return Ok(CheckReport::inconclusive(
                            NAME,
                            "comparison disagreement found, but some coset memberships are undecided on the ball",
                            checked,
                        ));
                    }
                    return Ok(CheckReport::fail(NAME, "g < h and g' > h' with g' in gC, h' in hC, gC != hC", witness, checked));
                }
                Some(_) => {}
            }
        }
    }
    if undecided {
        return Ok(CheckReport::inconclusive(
            NAME,
            "membership in the subgroup is undecided for some ball elements outside the secondary subgroup ball",
            checked,
        ));
    }
    Ok(CheckReport::pass(NAME, checked))
}
