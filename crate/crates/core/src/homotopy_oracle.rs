//! Exhaustive, bounded searches for based homotopies of digital loops and
//! for edge homotopies of edge loops.
//!
//! A single homotopy step between loops σ, τ of the same length requires
//! `σ(s)` and `τ(s′)` to be equal or adjacent whenever `|s − s′| ≤ 1`. The
//! searches move between loops that differ in one position only; such moves
//! are steps, and any step factors into them (see [`slower_homotopy`]), so
//! both generate the same classes.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::clique_complex::CliqueComplex;
use crate::edge_group::{apply_edge_move, EdgeLoop, MoveSpec};
use crate::error::{Error, Result};
use crate::image_core::{DigitalImage, DigitalPath};

/// Bounds for the subdivision search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomotopySearchConfig {
    /// Largest subdivision factor tried on either loop.
    pub max_subdivision: usize,
    /// Most loops stored for any one length.
    pub max_states: usize,
    /// Compare the loops as given only (no subdivision).
    pub equal_length_only: bool,
}

impl Default for HomotopySearchConfig {
    fn default() -> Self {
        HomotopySearchConfig {
            max_subdivision: 4,
            max_states: 100_000,
            equal_length_only: false,
        }
    }
}

/// One-sided answer of a bounded search: only `Homotopic` is a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomotopyOutcome {
    /// `α∘ρ_k` and `β∘ρ_l` lie in the same fixed-length class.
    Homotopic {
        k: usize,
        l: usize,
    },
    Inconclusive,
}

impl HomotopyOutcome {
    pub fn is_homotopic(&self) -> bool {
        matches!(self, HomotopyOutcome::Homotopic { .. })
    }
}

/// Answer of [`edge_homotopic_bounded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOutcome {
    /// Reached with this many elementary moves.
    Homotopic {
        moves: usize,
    },
    Inconclusive,
}

/// True iff `τ` is reachable from `σ` by one homotopy step: both based loops
/// of the same length with `σ(s) ≈ τ(s′)` for all `|s − s′| ≤ 1`.
pub fn is_homotopy_step(image: &DigitalImage, sigma: &[usize], tau: &[usize]) -> bool {
    if sigma.len() != tau.len() || sigma.is_empty() {
        return false;
    }
    let b = image.basepoint_index();
    if sigma[0] != b || tau[0] != b || *sigma.last().unwrap() != b || *tau.last().unwrap() != b {
        return false;
    }
    let n = sigma.len();
    (0..n).all(|s| {
        let lo = s.saturating_sub(1);
        let hi = (s + 1).min(n - 1);
        (lo..=hi).all(|t| image.near(sigma[s], tau[t]))
    })
}

/// The left-to-right factorization of a homotopy step `σ → τ` into loops
/// `ρ_0 = σ, …, ρ_N = τ` where `ρ_q` agrees with τ up to position q and
/// with σ after it. Consecutive entries differ in at most one position.
pub fn slower_homotopy(
    image: &DigitalImage,
    sigma: &[usize],
    tau: &[usize],
) -> Result<Vec<Vec<usize>>> {
    if !is_homotopy_step(image, sigma, tau) {
        return Err(Error::Precondition(
            "loops are not one homotopy step apart".into(),
        ));
    }
    let mut out = vec![sigma.to_vec()];
    let mut cur = sigma.to_vec();
    for q in 1..sigma.len() {
        cur[q] = tau[q];
        out.push(cur.clone());
    }
    Ok(out)
}

/// Loops differing from `steps` in exactly one interior position.
fn single_changes<'t>(
    image: &'t DigitalImage,
    table: &'t [Vec<usize>],
    steps: &'t [usize],
) -> impl Iterator<Item = Vec<usize>> + 't {
    let n = steps.len();
    (1..n.saturating_sub(1)).flat_map(move |p| {
        let cur = steps[p];
        table[cur]
            .iter()
            .copied()
            .filter(move |&v| image.near(v, steps[p - 1]) && image.near(v, steps[p + 1]))
            .map(move |v| {
                let mut next = steps.to_vec();
                next[p] = v;
                next
            })
    })
}

fn check_loop(alpha: &DigitalPath<'_>) -> Result<()> {
    if alpha.is_loop() {
        Ok(())
    } else {
        Err(Error::NotALoop(
            "path does not start and end at the basepoint".into(),
        ))
    }
}

/// Exhaustive search for a based homotopy between loops of equal length.
/// `false` is sound: the whole class of α was enumerated. Exceeding
/// `max_states` is reported as [`Error::StateBoundExceeded`].
pub fn loops_homotopic_fixed_length(
    image: &DigitalImage,
    alpha: &DigitalPath<'_>,
    beta: &DigitalPath<'_>,
    max_states: usize,
) -> Result<bool> {
    check_loop(alpha)?;
    check_loop(beta)?;
    if alpha.image() != image || beta.image() != image {
        return Err(Error::DifferentImages);
    }
    if alpha.length() != beta.length() {
        return Err(Error::LengthMismatch(alpha.length(), beta.length()));
    }
    let goal = beta.steps();
    let table = image.neighbor_table();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([alpha.steps().to_vec()]);
    let mut queue = VecDeque::from([alpha.steps().to_vec()]);
    while let Some(cur) = queue.pop_front() {
        if cur == goal {
            return Ok(true);
        }
        for next in single_changes(image, &table, &cur) {
            if !seen.contains(&next) {
                if seen.len() >= max_states {
                    return Err(Error::StateBoundExceeded(max_states));
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

#[derive(Default)]
struct LengthClasses {
    class: HashMap<Vec<usize>, u32>,
    next: u32,
    exhausted: bool,
}

/// Fixed-length homotopy classes of based loops in one image, enumerated on
/// demand and cached per length.
pub struct HomotopyClassifier<'a> {
    image: &'a DigitalImage,
    table: Vec<Vec<usize>>,
    config: HomotopySearchConfig,
    lengths: HashMap<usize, LengthClasses>,
}

impl<'a> HomotopyClassifier<'a> {
    pub fn new(image: &'a DigitalImage, config: HomotopySearchConfig) -> Self {
        HomotopyClassifier {
            image,
            table: image.neighbor_table(),
            config,
            lengths: HashMap::new(),
        }
    }

    /// Class label of a based loop among loops of its length, or `None` once
    /// that length has outgrown the state bound.
    pub fn class_of(&mut self, steps: &[usize]) -> Option<u32> {
        let entry = self.lengths.entry(steps.len()).or_default();
        if let Some(&c) = entry.class.get(steps) {
            return Some(c);
        }
        if entry.exhausted {
            return None;
        }
        let budget = self.config.max_states.saturating_sub(entry.class.len());
        let mut seen: HashSet<Vec<usize>> = HashSet::from([steps.to_vec()]);
        let mut queue = VecDeque::from([steps.to_vec()]);
        while let Some(cur) = queue.pop_front() {
            for next in single_changes(self.image, &self.table, &cur) {
                if !seen.contains(&next) {
                    if seen.len() >= budget {
                        entry.exhausted = true;
                        return None;
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let id = entry.next;
        entry.next += 1;
        for s in seen {
            entry.class.insert(s, id);
        }
        Some(id)
    }

    /// Tries every `(k, l)` with `k(M+1) = l(N+1)` and `k, l ≤ K`.
    pub fn subdivision_homotopic(
        &mut self,
        alpha: &DigitalPath<'_>,
        beta: &DigitalPath<'_>,
    ) -> HomotopyOutcome {
        if !alpha.is_loop()
            || !beta.is_loop()
            || alpha.image() != self.image
            || beta.image() != self.image
        {
            return HomotopyOutcome::Inconclusive;
        }
        let (m1, n1) = (alpha.steps().len(), beta.steps().len());
        let max_k = if self.config.equal_length_only {
            1
        } else {
            self.config.max_subdivision
        };
        for k in 1..=max_k {
            if (k * m1) % n1 != 0 {
                continue;
            }
            let l = k * m1 / n1;
            if l == 0 || l > max_k {
                continue;
            }
            let a = repeat_steps(alpha.steps(), k);
            let b = repeat_steps(beta.steps(), l);
            let (Some(ca), Some(cb)) = (self.class_of(&a), self.class_of(&b)) else {
                continue;
            };
            if ca == cb {
                return HomotopyOutcome::Homotopic { k, l };
            }
        }
        HomotopyOutcome::Inconclusive
    }
}

fn repeat_steps(steps: &[usize], k: usize) -> Vec<usize> {
    steps
        .iter()
        .flat_map(|&s| std::iter::repeat_n(s, k))
        .collect()
}

/// [`HomotopyClassifier::subdivision_homotopic`] with a fresh cache.
pub fn subdivision_homotopic(
    image: &DigitalImage,
    alpha: &DigitalPath<'_>,
    beta: &DigitalPath<'_>,
    config: HomotopySearchConfig,
) -> HomotopyOutcome {
    HomotopyClassifier::new(image, config).subdivision_homotopic(alpha, beta)
}

/// Breadth-first search over elementary edge moves from `l1`, visiting at
/// most `bound` loops.
pub fn edge_homotopic_bounded(
    complex: &CliqueComplex,
    l1: &EdgeLoop,
    l2: &EdgeLoop,
    bound: usize,
) -> EdgeOutcome {
    let mut depth: HashMap<EdgeLoop, usize> = HashMap::from([(l1.clone(), 0)]);
    let mut queue = VecDeque::from([l1.clone()]);
    while let Some(cur) = queue.pop_front() {
        let d = depth[&cur];
        if &cur == l2 {
            return EdgeOutcome::Homotopic { moves: d };
        }
        for mv in candidate_moves(complex, &cur) {
            let Ok(next) = apply_edge_move(complex, &cur, mv) else {
                continue;
            };
            if depth.contains_key(&next) {
                continue;
            }
            if depth.len() >= bound {
                return EdgeOutcome::Inconclusive;
            }
            depth.insert(next.clone(), d + 1);
            queue.push_back(next);
        }
    }
    EdgeOutcome::Inconclusive
}

fn candidate_moves(complex: &CliqueComplex, l: &EdgeLoop) -> Vec<MoveSpec> {
    let v = l.vertices();
    let n = v.len() - 1;
    let mut moves = Vec::new();
    for i in 0..=n {
        moves.push(MoveSpec::DeleteRepeat { index: i });
        moves.push(MoveSpec::DeleteVertex { index: i });
    }
    for i in 0..=n {
        moves.push(MoveSpec::InsertRepeat { index: i });
    }
    for i in 1..=n {
        for &w in complex.graph().neighbors(v[i - 1]) {
            moves.push(MoveSpec::InsertVertex {
                index: i,
                vertex: w,
            });
        }
    }
    moves
}
