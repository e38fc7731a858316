use std::collections::HashSet;

use super::presentation::Presentation;
use super::word::{Letter, Word};

pub const DEFAULT_TIETZE_PASSES: usize = 100;

/// Simplifies a presentation by Tietze moves, returning a presentation of an
/// isomorphic group with no more generators or relators than the input.
///
/// Each pass cyclically reduces the relators and drops trivial ones,
/// eliminates generators that occur exactly once in some relator, and then
/// removes relators equal up to cyclic permutation and inversion. Passes
/// repeat until nothing changes or `max_passes` is reached. The result is
/// not guaranteed to be minimal.
pub fn tietze_simplify(p: &Presentation, max_passes: usize) -> Presentation {
    let mut state = State {
        alive: vec![true; p.generator_count()],
        relators: p.relators().iter().map(|r| r.letters().to_vec()).collect(),
    };
    for _ in 0..max_passes {
        let before = (state.alive.clone(), state.relators.clone());
        state.clean();
        while state.eliminate_one() {}
        state.dedupe();
        if (state.alive.clone(), state.relators.clone()) == before {
            break;
        }
    }
    state.into_presentation()
}

struct State {
    alive: Vec<bool>,
    relators: Vec<Vec<Letter>>,
}

impl State {
    fn clean(&mut self) {
        for r in &mut self.relators {
            *r = Word::raw(std::mem::take(r))
                .cyclically_reduced()
                .into_letters();
        }
        self.relators.retain(|r| !r.is_empty());
    }

    /// Eliminates the cheapest generator that occurs exactly once in some
    /// relator. Cost is the growth in total relator length, ties broken by
    /// relator index then generator.
    fn eliminate_one(&mut self) -> bool {
        let mut best: Option<(i64, usize, usize)> = None;
        let mut totals = vec![0i64; self.alive.len()];
        for r in &self.relators {
            for l in r {
                totals[l.generator] += 1;
            }
        }
        for (ri, r) in self.relators.iter().enumerate() {
            let mut counts: Vec<(usize, usize)> = Vec::new();
            for l in r {
                match counts.iter_mut().find(|(g, _)| *g == l.generator) {
                    Some(entry) => entry.1 += 1,
                    None => counts.push((l.generator, 1)),
                }
            }
            for (g, c) in counts {
                if c != 1 {
                    continue;
                }
                let others = totals[g] - 1;
                let cost = (r.len() as i64 - 2) * others - r.len() as i64;
                let key = (cost, ri, g);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let Some((_, ri, g)) = best else {
            return false;
        };

        let r = self.relators.remove(ri);
        let pos = r.iter().position(|l| l.generator == g).expect("present");
        // r rotated to start at the occurrence: x^e · w = 1, so x = w^-1 when
        // e = +1 and x = w when e = -1.
        let w: Vec<Letter> = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
        let w = Word::raw(w);
        let image = if r[pos].inverse { w } else { w.inverse() };
        let image_inv = image.inverse();

        for rel in &mut self.relators {
            if !rel.iter().any(|l| l.generator == g) {
                continue;
            }
            let mut out = Vec::with_capacity(rel.len());
            for &l in rel.iter() {
                if l.generator == g {
                    let sub = if l.inverse { &image_inv } else { &image };
                    out.extend_from_slice(sub.letters());
                } else {
                    out.push(l);
                }
            }
            *rel = Word::raw(out).cyclically_reduced().into_letters();
        }
        self.relators.retain(|r| !r.is_empty());
        self.alive[g] = false;
        true
    }

    fn dedupe(&mut self) {
        let mut seen = HashSet::new();
        self.relators.retain(|r| seen.insert(cyclic_key(r)));
    }

    fn into_presentation(self) -> Presentation {
        let mut map = vec![usize::MAX; self.alive.len()];
        let mut k = 0;
        for (g, &a) in self.alive.iter().enumerate() {
            if a {
                map[g] = k;
                k += 1;
            }
        }
        let relators = self
            .relators
            .into_iter()
            .map(|r| {
                Word::raw(
                    r.into_iter()
                        .map(|l| Letter {
                            generator: map[l.generator],
                            inverse: l.inverse,
                        })
                        .collect(),
                )
            })
            .collect();
        Presentation::new(k, relators).expect("renumbered generators are in range")
    }
}

/// Canonical representative of a relator up to cyclic permutation and
/// inversion: the cyclic reduction's least rotation, or that of its inverse.
pub fn cyclic_normal_form(w: &Word) -> Word {
    Word::raw(cyclic_key(w.cyclically_reduced().letters()))
}

fn cyclic_key(r: &[Letter]) -> Vec<Letter> {
    let inv: Vec<Letter> = r.iter().rev().map(|l| l.inverted()).collect();
    let mut best: Option<Vec<Letter>> = None;
    for word in [r, inv.as_slice()] {
        for i in 0..word.len().max(1) {
            let rot: Vec<Letter> = word[i..].iter().chain(&word[..i]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}
