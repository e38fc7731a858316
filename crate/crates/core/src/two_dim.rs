//! Free rank of the fundamental group of a connected planar image, by
//! repeatedly removing the lexicographically largest point.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::image_core::{shorten_path, DigitalImage, DigitalPath, Point};

type P2 = (i64, i64);

/// Which of the four possible neighbours of the lexicographic maximum `x`
/// are present: `a = x+(−1,1)`, `c = x+(−1,0)`, `b₁ = x+(−1,−1)`,
/// `b₂ = x+(0,−1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct LinkProfile {
    pub a: bool,
    pub c: bool,
    pub b1: bool,
    pub b2: bool,
}

impl LinkProfile {
    fn of(set: &BTreeSet<P2>, x: P2) -> Self {
        let has = |dx: i64, dy: i64| set.contains(&(x.0 + dx, x.1 + dy));
        LinkProfile {
            a: has(-1, 1),
            c: has(-1, 0),
            b1: has(-1, -1),
            b2: has(0, -1),
        }
    }

    pub fn size(&self) -> usize {
        [self.a, self.c, self.b1, self.b2]
            .iter()
            .filter(|&&f| f)
            .count()
    }
}

/// The reduction applied at one step of [`free_rank_explained`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankCase {
    /// At most three points.
    Small,
    /// `X = {x} ∪ lk(x)`.
    Star,
    /// `c ∈ lk(x)`: x retracts onto c.
    RetractX,
    /// `b₁, b₂ ∈ lk(x)`: b₂ retracts onto b₁.
    RetractB2,
    /// `lk(x)` is a single point.
    Leaf,
    /// `lk(x) = {a, b}` with a and b in different components of `X ∖ {x}`.
    Wedge { a_side: usize, b_side: usize },
    /// `lk(x) = {a, b}` with a and b joined in `X ∖ {x}`; carries the
    /// contractible path between them.
    Circle { path: Vec<Point> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankStep {
    pub depth: usize,
    pub size: usize,
    pub x: Point,
    pub case: RankCase,
}

impl fmt::Display for RankStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:indent$}|X|={} x={} ",
            "",
            self.size,
            self.x,
            indent = 2 * self.depth
        )?;
        match &self.case {
            RankCase::Small => write!(f, "base: at most 3 points"),
            RankCase::Star => write!(f, "base: X = x + lk(x)"),
            RankCase::RetractX => write!(f, "case 1: c in lk(x), remove x"),
            RankCase::RetractB2 => write!(f, "case 2: b1, b2 in lk(x), remove b2"),
            RankCase::Leaf => write!(f, "case 3: single-point link, remove x"),
            RankCase::Wedge { a_side, b_side } => {
                write!(f, "case 4/5 wedge: split into {a_side} + {b_side} points")
            }
            RankCase::Circle { path } => {
                let pts: Vec<String> = path.iter().map(Point::to_string).collect();
                write!(f, "case 4/5 circle: +1, remove x; P = {}", pts.join(" "))
            }
        }
    }
}

fn check_planar(x: &DigitalImage) -> Result<()> {
    if x.dimension() != 2 {
        return Err(Error::NotTwoDimensional(x.dimension()));
    }
    Ok(())
}

fn to_set(x: &DigitalImage) -> BTreeSet<P2> {
    x.points()
        .iter()
        .map(|p| (p.coords()[0], p.coords()[1]))
        .collect()
}

fn pt(p: P2) -> Point {
    Point::new(vec![p.0, p.1])
}

/// The largest point in the order comparing the first coordinate, then the
/// second.
pub fn lex_max_point(x: &DigitalImage) -> Result<Point> {
    check_planar(x)?;
    Ok(x.points().last().expect("images are nonempty").clone())
}

/// Outcome of [`split_components_at`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Split {
    /// The two link points are joined by a path avoiding x.
    Connected,
    /// Points reachable from a, and from b, in `X ∖ {x}`.
    Components(Vec<Point>, Vec<Point>),
}

/// For a point `x` whose link is two points `{a, b}` with `a < b`, the
/// components of `X ∖ {x}` containing them.
pub fn split_components_at(x: &DigitalImage, p: &Point) -> Result<Split> {
    let idx = x.require(p)?;
    let nbrs = x.neighbors(idx);
    if nbrs.len() != 2 || x.adjacent_indices(nbrs[0], nbrs[1]) {
        return Err(Error::Precondition(format!(
            "{p} must have exactly two non-adjacent neighbours"
        )));
    }
    let set = to_set(x);
    let key = (p.coords()[0], p.coords()[1]);
    let a = x.point(nbrs[0]);
    let b = x.point(nbrs[1]);
    let comp_a = component(&set, key, (a.coords()[0], a.coords()[1]));
    if comp_a.contains(&(b.coords()[0], b.coords()[1])) {
        return Ok(Split::Connected);
    }
    let comp_b = component(&set, key, (b.coords()[0], b.coords()[1]));
    let list = |c: BTreeSet<P2>| c.into_iter().map(pt).collect();
    Ok(Split::Components(list(comp_a), list(comp_b)))
}

/// Reachability from `start` in `set ∖ {removed}`.
fn component(set: &BTreeSet<P2>, removed: P2, start: P2) -> BTreeSet<P2> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(q) = queue.pop_front() {
        for dx in -1..=1 {
            for dy in -1..=1 {
                let r = (q.0 + dx, q.1 + dy);
                if r != q && r != removed && set.contains(&r) && seen.insert(r) {
                    queue.push_back(r);
                }
            }
        }
    }
    seen
}

/// Rank of the free group `π₁(X)` for a connected image in ℤ².
pub fn free_rank(x: &DigitalImage) -> Result<usize> {
    prepare(x)?;
    Ok(rank(&to_set(x), 0, &mut None))
}

/// As [`free_rank`], also returning the case applied at each step.
pub fn free_rank_explained(x: &DigitalImage) -> Result<(usize, Vec<RankStep>)> {
    prepare(x)?;
    let mut trace = Some(Vec::new());
    let r = rank(&to_set(x), 0, &mut trace);
    Ok((r, trace.unwrap_or_default()))
}

fn prepare(x: &DigitalImage) -> Result<()> {
    check_planar(x)?;
    if !x.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

fn rank(set: &BTreeSet<P2>, depth: usize, trace: &mut Option<Vec<RankStep>>) -> usize {
    let x = *set.iter().next_back().expect("nonempty");
    let link = LinkProfile::of(set, x);
    let log = |trace: &mut Option<Vec<RankStep>>, case: RankCase| {
        if let Some(t) = trace.as_mut() {
            t.push(RankStep {
                depth,
                size: set.len(),
                x: pt(x),
                case,
            });
        }
    };
    let without = |p: P2| {
        let mut s = set.clone();
        s.remove(&p);
        s
    };

    if set.len() <= 3 {
        log(trace, RankCase::Small);
        return 0;
    }
    if set.len() == link.size() + 1 {
        log(trace, RankCase::Star);
        return 0;
    }
    if link.c {
        log(trace, RankCase::RetractX);
        return rank(&without(x), depth + 1, trace);
    }
    let b1 = (x.0 - 1, x.1 - 1);
    let b2 = (x.0, x.1 - 1);
    if link.b1 && link.b2 {
        log(trace, RankCase::RetractB2);
        return rank(&without(b2), depth + 1, trace);
    }
    if link.size() == 1 {
        log(trace, RankCase::Leaf);
        return rank(&without(x), depth + 1, trace);
    }
    // Remaining links are {a, b₁} and {a, b₂}.
    debug_assert!(link.a && link.size() == 2);
    let a = (x.0 - 1, x.1 + 1);
    let b = if link.b1 { b1 } else { b2 };
    let comp_a = component(set, x, a);
    if comp_a.contains(&b) {
        if trace.is_some() {
            let path = connecting_path(set, x, a, b);
            log(trace, RankCase::Circle { path });
        }
        return 1 + rank(&without(x), depth + 1, trace);
    }
    let mut side_a = comp_a;
    let mut side_b = component(set, x, b);
    side_a.insert(x);
    side_b.insert(x);
    let case = RankCase::Wedge {
        a_side: side_a.len(),
        b_side: side_b.len(),
    };
    log(trace, case);
    rank(&side_a, depth + 1, trace) + rank(&side_b, depth + 1, trace)
}

/// A contractible path from `a` to `b` in `set ∖ {x}`, from a shortest path
/// shortened further.
fn connecting_path(set: &BTreeSet<P2>, x: P2, a: P2, b: P2) -> Vec<Point> {
    let rest: Vec<Point> = set.iter().filter(|&&p| p != x).map(|&p| pt(p)).collect();
    let image = DigitalImage::from_points(rest, &pt(a)).expect("nonempty");
    let table = image.neighbor_table();
    let start = image.basepoint_index();
    let goal = image.index_of(&pt(b)).expect("b is present");
    let mut prev = vec![usize::MAX; image.len()];
    prev[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in &table[v] {
            if prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut steps = vec![goal];
    while *steps.last().expect("nonempty") != start {
        steps.push(prev[*steps.last().expect("nonempty")]);
    }
    steps.reverse();
    let path = DigitalPath::from_indices(&image, steps).expect("BFS path is continuous");
    shorten_path(&path)
        .expect("a and b are not adjacent")
        .points()
}
