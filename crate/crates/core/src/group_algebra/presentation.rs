use std::fmt;

use super::word::Word;
use crate::error::{Error, Result};

/// A finite presentation `⟨g1..gk | R⟩`. Relators are kept freely reduced;
/// cyclic reduction is left to [`super::tietze_simplify`] so that a relator
/// such as `g1 g2 g1^-1` keeps its written length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self> {
        let mut reduced = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(g) = r.max_generator() {
                if g >= generators {
                    return Err(Error::GeneratorOutOfRange {
                        generator: g + 1,
                        count: generators,
                    });
                }
            }
            reduced.push(super::free_reduce(&r));
        }
        Ok(Presentation {
            generators,
            relators: reduced,
        })
    }

    /// Free group of the given rank.
    pub fn free(generators: usize) -> Self {
        Presentation {
            generators,
            relators: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    /// Sum of relator lengths.
    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.max_generator() {
            Some(g) if g >= self.generators => Err(Error::GeneratorOutOfRange {
                generator: g + 1,
                count: self.generators,
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for g in 0..self.generators {
            if g > 0 {
                write!(f, ",")?;
            }
            write!(f, "g{}", g + 1)?;
        }
        write!(f, " | ")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ">")
    }
}
