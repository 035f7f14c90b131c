use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::GroupError;
use crate::group::{Element, Group, Word};

/// Default cap on the number of elements a ball may hold.
pub const DEFAULT_BALL_LIMIT: usize = 1_000_000;

/// The set of products of at most `radius` generators and their inverses.
///
/// Elements are kept sorted in canonical order. Each element carries the
/// first word (breadth-first, generators in the given order, positive letter
/// before inverse) that reached it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    group: Group,
    generators: Vec<Element>,
    radius: usize,
    elements: Vec<Element>,
    words: Vec<Word>,
}

impl Ball {
    pub(crate) fn build(group: &Group, generators: &[Element], radius: usize, limit: usize) -> Result<Ball, GroupError> {
        for g in generators {
            if !group.contains(g) {
                return Err(group.mismatch(g));
            }
        }
        let mut letters = Vec::with_capacity(2 * generators.len());
        for (i, g) in generators.iter().enumerate() {
            letters.push((i, 1i64, g.clone()));
            letters.push((i, -1i64, group.inv(g)?));
        }
        let mut seen: BTreeMap<Element, Word> = BTreeMap::new();
        let id = group.identity();
        seen.insert(id.clone(), Word::empty());
        let mut frontier = alloc::vec![(id, Word::empty())];
        for _ in 0..radius {
            let mut next = Vec::new();
            for (x, w) in &frontier {
                for (gen, e, l) in &letters {
                    let y = group.op(x, l)?;
                    if seen.contains_key(&y) {
                        continue;
                    }
                    let mut wy = w.clone();
                    wy.push(*gen, *e);
                    seen.insert(y.clone(), wy.clone());
                    if seen.len() > limit {
                        return Err(GroupError::BallTooLarge { limit });
                    }
                    next.push((y, wy));
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        let (elements, words) = seen.into_iter().unzip();
        Ok(Ball { group: group.clone(), generators: generators.to_vec(), radius, elements, words })
    }

    /// The whole of a finite group, presented as a carrier.
    pub fn whole(group: &Group, limit: usize) -> Result<Ball, GroupError> {
        let gens = group.standard_generators();
        let elements = group.elements(limit)?;
        let words = elements.iter().map(|e| group.express(e)).collect::<Result<Vec<_>, _>>()?;
        Ok(Ball { group: group.clone(), generators: gens, radius: usize::MAX, elements, words })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Words in [`Ball::generators`], parallel to [`Ball::elements`].
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn index_of(&self, g: &Element) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    pub fn word_of(&self, g: &Element) -> Option<&Word> {
        self.index_of(g).map(|i| &self.words[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::promislow;

    #[test]
    fn integer_ball() {
        let b = Group::Integers.ball(&[Element::Int(1)], 3, DEFAULT_BALL_LIMIT).unwrap();
        let expect: Vec<Element> = (-3..=3).map(Element::Int).collect();
        assert_eq!(b.elements(), &expect[..]);
    }

    #[test]
    fn cyclic_ball_saturates() {
        let b = Group::Cyclic(4).ball(&[Element::Residue(1)], 2, DEFAULT_BALL_LIMIT).unwrap();
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn words_evaluate_to_elements() {
        let g = Group::Promislow;
        let gens = [promislow::generator_a(), promislow::generator_b()];
        let b = g.ball(&gens, 3, DEFAULT_BALL_LIMIT).unwrap();
        for (x, w) in b.elements().iter().zip(b.words()) {
            assert!(w.length() <= 3);
            assert_eq!(&g.eval_word(w, &gens).unwrap(), x);
        }
    }

    #[test]
    fn closed_under_inverse() {
        let g = Group::FreeAbelian(2);
        let b = g.ball(&g.standard_generators(), 4, DEFAULT_BALL_LIMIT).unwrap();
        for x in b.elements() {
            assert!(b.contains(&g.inv(x).unwrap()));
        }
        assert!(b.contains(&g.identity()));
    }

    #[test]
    fn limit_is_enforced() {
        let err = Group::FreeAbelian(2).ball(&Group::FreeAbelian(2).standard_generators(), 10, 50).unwrap_err();
        assert_eq!(err, GroupError::BallTooLarge { limit: 50 });
    }

    #[test]
    fn foreign_generator_rejected() {
        assert!(Group::Integers.ball(&[Element::Residue(1)], 1, 10).is_err());
    }
}
