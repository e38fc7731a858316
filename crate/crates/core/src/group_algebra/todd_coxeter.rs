use super::presentation::Presentation;
use super::word::Word;

/// Outcome of a bounded coset enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetResult {
    Finite(usize),
    /// The table outgrew the bound; nothing is concluded.
    Exceeded,
}

const NONE: usize = usize::MAX;

/// HLT coset enumeration over the trivial subgroup: the group order.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> CosetResult {
    coset_index(p, &[], max_cosets)
}

fn columns(w: &Word) -> Vec<usize> {
    w.letters()
        .iter()
        .map(|l| 2 * l.generator + usize::from(l.inverse))
        .collect()
}

/// HLT coset enumeration with coincidence processing: the index of the
/// subgroup generated by `subgroup`, defining at most `max_cosets` cosets in
/// total.
pub fn coset_index(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> CosetResult {
    let cols = 2 * p.generator_count();
    if cols == 0 {
        return CosetResult::Finite(1);
    }
    let relators: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|r| columns(&r.cyclically_reduced()))
        .filter(|r| !r.is_empty())
        .collect();

    let mut t = Table {
        cols,
        rows: vec![vec![NONE; cols]],
        parent: vec![0],
        max: max_cosets.max(1),
        queue: Vec::new(),
    };

    for h in subgroup {
        if t.scan_and_fill(0, &columns(h)).is_err() {
            return CosetResult::Exceeded;
        }
    }

    let mut c = 0;
    while c < t.rows.len() {
        if t.live(c) {
            for r in &relators {
                if t.scan_and_fill(c, r).is_err() {
                    return CosetResult::Exceeded;
                }
                if !t.live(c) {
                    break;
                }
            }
            if t.live(c) {
                for x in 0..cols {
                    if t.rows[c][x] == NONE && t.define(c, x).is_err() {
                        return CosetResult::Exceeded;
                    }
                }
            }
        }
        c += 1;
    }
    CosetResult::Finite((0..t.rows.len()).filter(|&i| t.live(i)).count())
}

/// Decides `u = v` in the group: exactly by free reduction when there are
/// no relators, otherwise by comparing the index of `⟨u v⁻¹⟩` with the group
/// order. `None` when an enumeration exceeds the bound.
pub fn words_equal(p: &Presentation, u: &Word, v: &Word, max_cosets: usize) -> Option<bool> {
    let w = u.concat(&v.inverse());
    if w.is_empty() {
        return Some(true);
    }
    if p.relators().iter().all(Word::is_empty) {
        return Some(false);
    }
    let CosetResult::Finite(order) = todd_coxeter(p, max_cosets) else {
        return None;
    };
    match coset_index(p, &[w], max_cosets) {
        CosetResult::Finite(index) => Some(index == order),
        CosetResult::Exceeded => None,
    }
}

struct Table {
    cols: usize,
    rows: Vec<Vec<usize>>,
    parent: Vec<usize>,
    max: usize,
    queue: Vec<usize>,
}

struct Full;

fn inv(x: usize) -> usize {
    x ^ 1
}

impl Table {
    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), Full> {
        if self.rows.len() >= self.max {
            return Err(Full);
        }
        let d = self.rows.len();
        self.rows.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.rows[c][x] = d;
        self.rows[d][inv(x)] = c;
        Ok(())
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), Full> {
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len();
        loop {
            while i < j && self.rows[f][w[i]] != NONE {
                f = self.rows[f][w[i]];
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.rows[b][inv(w[j - 1])] != NONE {
                b = self.rows[b][inv(w[j - 1])];
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.rows[f][w[i]] = b;
                self.rows[b][inv(w[i])] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut k = c;
        while self.parent[k] != root {
            let next = self.parent[k];
            self.parent[k] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut k = 0;
        while k < self.queue.len() {
            let g = self.queue[k];
            k += 1;
            for x in 0..self.cols {
                let d = self.rows[g][x];
                if d == NONE {
                    continue;
                }
                self.rows[d][inv(x)] = NONE;
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.rows[mu][x] != NONE {
                    let target = self.rows[mu][x];
                    self.merge(nu, target);
                } else if self.rows[nu][inv(x)] != NONE {
                    let target = self.rows[nu][inv(x)];
                    self.merge(mu, target);
                } else {
                    self.rows[mu][x] = nu;
                    self.rows[nu][inv(x)] = mu;
                }
            }
        }
    }
}
