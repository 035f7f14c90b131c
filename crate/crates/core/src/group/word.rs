use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::PresentationError;

/// A freely reduced word: a sequence of `(generator, exponent)` syllables
/// with nonzero exponents and no two adjacent syllables on the same
/// generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    syllables: Vec<(usize, i64)>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn letter(generator: usize, exponent: i64) -> Word {
        Word::from_syllables([(generator, exponent)])
    }

    pub fn from_syllables(syllables: impl IntoIterator<Item = (usize, i64)>) -> Word {
        let mut w = Word::empty();
        for (g, e) in syllables {
            w.push(g, e);
        }
        w
    }

    /// Appends `generator^exponent`, merging with the last syllable.
    pub fn push(&mut self, generator: usize, exponent: i64) {
        if exponent == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == generator {
                last.1 += exponent;
                if last.1 == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((generator, exponent));
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.syllables {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word::from_syllables(self.syllables.iter().rev().map(|&(g, e)| (g, -e)))
    }

    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..k.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Total number of letters, i.e. the sum of `|exponent|`.
    pub fn length(&self) -> u64 {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.syllables.iter().filter(|(g, _)| *g == generator).map(|(_, e)| e).sum()
    }

    /// Renames generator `i` to `i + offset`.
    pub fn shifted(&self, offset: usize) -> Word {
        Word::from_syllables(self.syllables.iter().map(|&(g, e)| (g + offset, e)))
    }
}

/// A finite presentation `⟨gens | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        Presentation { generators, relators }
    }

    /// `⟨a, b | ab²a⁻¹b², ba²b⁻¹a²⟩`.
    pub fn promislow() -> Self {
        Presentation::new(
            alloc::vec!["a".to_string(), "b".to_string()],
            alloc::vec![
                Word::from_syllables([(0, 1), (1, 2), (0, -1), (1, 2)]),
                Word::from_syllables([(1, 1), (0, 2), (1, -1), (0, 2)]),
            ],
        )
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Parses the line format
    ///
    /// ```text
    /// gens: a b
    /// rel: a b b A b b
    /// ```
    ///
    /// where an all-uppercase token is the inverse of the matching generator.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Presentation, PresentationError> {
        let mut generators: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line.split_once(':').ok_or_else(|| PresentationError::Syntax {
                line: lineno + 1,
                message: "expected `gens:` or `rel:`".to_string(),
            })?;
            match key.trim() {
                "gens" => {
                    if generators.is_some() {
                        return Err(PresentationError::Syntax {
                            line: lineno + 1,
                            message: "duplicate `gens:` line".to_string(),
                        });
                    }
                    let mut names = Vec::new();
                    for tok in rest.split_whitespace() {
                        let valid = tok.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
                            && tok.chars().next().is_some_and(|c| c.is_ascii_lowercase());
                        if !valid || names.iter().any(|n: &String| n == tok) {
                            return Err(PresentationError::Syntax {
                                line: lineno + 1,
                                message: alloc::format!("bad generator name `{tok}`"),
                            });
                        }
                        names.push(tok.to_string());
                    }
                    generators = Some(names);
                }
                "rel" => {
                    let names = generators.as_ref().ok_or(PresentationError::MissingGenerators)?;
                    let mut w = Word::empty();
                    for tok in rest.split_whitespace() {
                        let (name, exp) = if tok.chars().any(|c| c.is_ascii_lowercase()) {
                            (tok.to_string(), 1)
                        } else {
                            (tok.to_ascii_lowercase(), -1)
                        };
                        let g = names
                            .iter()
                            .position(|n| *n == name)
                            .ok_or_else(|| PresentationError::UnknownGenerator(tok.to_string()))?;
                        w.push(g, exp);
                    }
                    relators.push(w);
                }
                other => {
                    return Err(PresentationError::Syntax {
                        line: lineno + 1,
                        message: alloc::format!("unknown key `{other}`"),
                    })
                }
            }
        }
        let generators = generators.ok_or(PresentationError::MissingGenerators)?;
        Ok(Presentation { generators, relators })
    }

    /// Relator exponent-sum matrix: one row per relator, one column per generator.
    pub fn exponent_sum_rows(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| (0..self.generators.len()).map(|g| r.exponent_sum(g)).collect())
            .collect()
    }

    pub fn format_word(&self, w: &Word) -> String {
        let mut out = String::new();
        for &(g, e) in w.syllables() {
            let name = &self.generators[g];
            let tok = if e > 0 { name.clone() } else { name.to_ascii_uppercase() };
            for _ in 0..e.unsigned_abs() {
                if !out.is_empty() {
                    out.push(' ');
                }
                out.push_str(&tok);
            }
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel: {}", self.format_word(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_promislow_text() {
        let p = Presentation::parse("gens: a b\nrel: a b b A b b\nrel: b a a B a a\n").unwrap();
        assert_eq!(p, Presentation::promislow());
    }

    #[test]
    fn parse_reduces_relators() {
        let p = Presentation::parse("gens: a b\nrel: a b B a").unwrap();
        assert_eq!(p.relators()[0], Word::letter(0, 2));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Presentation::parse("rel: a"), Err(PresentationError::MissingGenerators));
        assert!(matches!(Presentation::parse("gens: a\nrel: b"), Err(PresentationError::UnknownGenerator(_))));
        assert!(matches!(Presentation::parse("gens: a a"), Err(PresentationError::Syntax { .. })));
        assert!(matches!(Presentation::parse("gens: a\nfoo"), Err(PresentationError::Syntax { line: 2, .. })));
    }

    #[test]
    fn display_round_trips() {
        let p = Presentation::promislow();
        assert_eq!(Presentation::parse(&alloc::format!("{p}")).unwrap(), p);
    }

    #[test]
    fn word_algebra() {
        let w = Word::from_syllables([(0, 1), (1, 2)]);
        assert!(w.concat(&w.inverse()).is_empty());
        assert_eq!(w.power(2).length(), 6);
        assert_eq!(w.power(-1), w.inverse());
        assert_eq!(w.exponent_sum(1), 2);
    }
}
