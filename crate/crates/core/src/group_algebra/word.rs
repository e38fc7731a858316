use std::fmt;

use crate::error::{Error, Result};

/// A generator or its inverse. Generators are numbered from 0 internally
/// and printed from 1 (`g1`, `g1^-1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Letter {
            generator,
            inverse: exponent < 0,
        }
    }

    pub fn gen(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn inv(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "g{}^-1", self.generator + 1)
        } else {
            write!(f, "g{}", self.generator + 1)
        }
    }
}

/// A word in signed generator symbols. Constructors other than [`Word::raw`]
/// return freely reduced words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Keeps the letters exactly as given.
    pub fn raw(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn reduced(letters: Vec<Letter>) -> Self {
        Word(reduce_letters(letters))
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word::reduced(letters)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// Free and cyclic reduction: strips `x … x⁻¹` from the ends.
    pub fn cyclically_reduced(&self) -> Word {
        let w = reduce_letters(self.0.clone());
        let mut lo = 0;
        let mut hi = w.len();
        while hi - lo >= 2 && w[lo].cancels(w[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word(w[lo..hi].to_vec())
    }

    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| l.exponent())
            .sum()
    }

    pub fn occurrences(&self, generator: usize) -> usize {
        self.0.iter().filter(|l| l.generator == generator).count()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Renumbers every generator by `offset`.
    pub fn shifted(&self, offset: usize) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter {
                    generator: l.generator + offset,
                    inverse: l.inverse,
                })
                .collect(),
        )
    }

    /// Parses whitespace-separated tokens `g3` / `g3^-1` (`g3^1` is also
    /// accepted, and a lone `1` denotes the empty word). The result is
    /// freely reduced.
    pub fn parse(text: &str) -> Result<Word> {
        Self::parse_raw(text).map(|w| Word::reduced(w.0))
    }

    pub fn parse_raw(text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            letters.push(parse_token(token)?);
        }
        Ok(Word(letters))
    }
}

fn parse_token(token: &str) -> Result<Letter> {
    let bad = || Error::Parse {
        line: 0,
        message: format!("bad word token `{token}`"),
    };
    let body = token.strip_prefix('g').ok_or_else(bad)?;
    let (num, exp) = match body.split_once('^') {
        Some((n, "-1")) => (n, -1),
        Some((n, "1")) => (n, 1),
        Some(_) => return Err(bad()),
        None => (body, 1),
    };
    let index: usize = num.parse().map_err(|_| bad())?;
    if index == 0 {
        return Err(bad());
    }
    Ok(Letter::new(index - 1, exp))
}

fn reduce_letters(letters: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for l in letters {
        match out.last() {
            Some(&top) if top.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

/// Cancels adjacent `x x⁻¹` pairs until none remain.
pub fn free_reduce(w: &Word) -> Word {
    Word(reduce_letters(w.0.clone()))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
