//! Digital images in ℤⁿ, lattice adjacency, and the path calculus on them.
//!
//! Two points are adjacent when they are distinct and every coordinate differs
//! by at most one. Paths additionally allow a step to stay put, so consecutive
//! steps of a [`DigitalPath`] are "adjacent or equal".

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A lattice point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Self {
        Point(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    /// Chebyshev distance; both points must share a dimension.
    fn chebyshev(&self, other: &Point) -> i64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or(0)
    }
}

impl From<Vec<i64>> for Point {
    fn from(v: Vec<i64>) -> Self {
        Point(v)
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(v: [i64; N]) -> Self {
        Point(v.to_vec())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Irreflexive lattice adjacency: distinct points at Chebyshev distance 1.
pub fn adjacent(p: &Point, q: &Point) -> Result<bool> {
    if p.dimension() != q.dimension() {
        return Err(Error::DimensionMismatch {
            expected: p.dimension(),
            found: q.dimension(),
        });
    }
    Ok(p.chebyshev(q) == 1)
}

/// A finite based digital image. Points are kept in lexicographic order, so
/// two images with the same point set and basepoint compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitalImage {
    dimension: usize,
    points: Vec<Point>,
    basepoint: usize,
}

impl DigitalImage {
    /// Builds an image from points in any order; `basepoint` indexes into
    /// `points` as given.
    pub fn new(dimension: usize, points: Vec<Point>, basepoint: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::ZeroDimension);
        }
        if points.is_empty() {
            return Err(Error::EmptyImage);
        }
        if basepoint >= points.len() {
            return Err(Error::BadBasepoint {
                index: basepoint,
                len: points.len(),
            });
        }
        if let Some(p) = points.iter().find(|p| p.dimension() != dimension) {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                found: p.dimension(),
            });
        }
        let base = points[basepoint].clone();
        let mut sorted = points;
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].to_string()));
        }
        let basepoint = sorted.binary_search(&base).expect("basepoint present");
        Ok(DigitalImage {
            dimension,
            points: sorted,
            basepoint,
        })
    }

    /// Builds an image and picks the basepoint by value.
    pub fn from_points(points: Vec<Point>, basepoint: &Point) -> Result<Self> {
        let dimension = basepoint.dimension();
        let index = points
            .iter()
            .position(|p| p == basepoint)
            .ok_or_else(|| Error::PointNotInImage(basepoint.to_string()))?;
        Self::new(dimension, points, index)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Points in canonical (lexicographic) order.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &Point {
        &self.points[index]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn basepoint_index(&self) -> usize {
        self.basepoint
    }

    pub fn basepoint(&self) -> &Point {
        &self.points[self.basepoint]
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index_of(p).is_some()
    }

    /// Index lookup that reports missing or wrong-dimension points.
    pub fn require(&self, p: &Point) -> Result<usize> {
        if p.dimension() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: p.dimension(),
            });
        }
        self.index_of(p)
            .ok_or_else(|| Error::PointNotInImage(p.to_string()))
    }

    pub fn adjacent_indices(&self, i: usize, j: usize) -> bool {
        self.points[i].chebyshev(&self.points[j]) == 1
    }

    /// Adjacent or equal, the reflexive relation used for path continuity.
    pub fn near(&self, i: usize, j: usize) -> bool {
        i == j || self.adjacent_indices(i, j)
    }

    /// Neighbours of a point in increasing index order.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| self.adjacent_indices(i, j))
            .collect()
    }

    /// Full neighbour table, one sorted list per point.
    pub fn neighbor_table(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut table = vec![Vec::new(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if self.adjacent_indices(i, j) {
                    table[i].push(j);
                    table[j].push(i);
                }
            }
        }
        for row in &mut table {
            row.sort_unstable();
        }
        table
    }

    /// Same points, different basepoint.
    pub fn with_basepoint(&self, p: &Point) -> Result<Self> {
        let basepoint = self.require(p)?;
        Ok(DigitalImage {
            dimension: self.dimension,
            points: self.points.clone(),
            basepoint,
        })
    }

    /// The sub-image on the given point indices, based at `base` (an index of
    /// this image that must be among `indices`).
    pub fn subimage(&self, indices: &[usize], base: usize) -> Result<Self> {
        let points: Vec<Point> = indices.iter().map(|&i| self.points[i].clone()).collect();
        Self::from_points(points, &self.points[base])
    }

    pub fn is_connected(&self) -> bool {
        is_connected(self).unwrap_or(false)
    }
}

/// Breadth-first reachability over the adjacency graph.
pub fn is_connected(image: &DigitalImage) -> Result<bool> {
    if image.is_empty() {
        return Err(Error::EmptyImage);
    }
    let table = image.neighbor_table();
    let mut seen = vec![false; image.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &w in &table[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    Ok(count == image.len())
}

/// A path `I_N → X`, stored as point indices of its owner image.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitalPath<'a> {
    image: &'a DigitalImage,
    steps: Vec<usize>,
}

impl<'a> DigitalPath<'a> {
    pub fn from_indices(image: &'a DigitalImage, steps: Vec<usize>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Precondition("a path has at least one step".into()));
        }
        if let Some(&bad) = steps.iter().find(|&&s| s >= image.len()) {
            return Err(Error::Precondition(format!(
                "step index {bad} out of range"
            )));
        }
        if let Some(i) = (0..steps.len() - 1).find(|&i| !image.near(steps[i], steps[i + 1])) {
            return Err(Error::NotContinuous {
                index: i,
                next: i + 1,
            });
        }
        Ok(DigitalPath { image, steps })
    }

    pub fn from_points(image: &'a DigitalImage, points: &[Point]) -> Result<Self> {
        let steps = points
            .iter()
            .map(|p| image.require(p))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(image, steps)
    }

    /// The constant loop `C_N` at the basepoint (N + 1 steps).
    pub fn constant(image: &'a DigitalImage, n: usize) -> Self {
        DigitalPath {
            image,
            steps: vec![image.basepoint_index(); n + 1],
        }
    }

    pub fn image(&self) -> &'a DigitalImage {
        self.image
    }

    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    pub fn points(&self) -> impl Iterator<Item = &'a Point> + '_ {
        self.steps.iter().map(|&i| self.image.point(i))
    }

    /// Path length N; the path has N + 1 steps.
    pub fn length(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn first(&self) -> usize {
        self.steps[0]
    }

    pub fn last(&self) -> usize {
        *self.steps.last().expect("nonempty")
    }

    /// Starts and ends at the basepoint.
    pub fn is_loop(&self) -> bool {
        let b = self.image.basepoint_index();
        self.first() == b && self.last() == b
    }

    fn same_image(&self, other: &DigitalPath<'_>) -> bool {
        std::ptr::eq(self.image, other.image) || self.image == other.image
    }

    /// `α·β`: the steps of α followed by those of β; length M + N + 1.
    pub fn concatenate(&self, other: &DigitalPath<'_>) -> Result<DigitalPath<'a>> {
        if !self.same_image(other) {
            return Err(Error::DifferentImages);
        }
        if !self.image.near(self.last(), other.first()) {
            return Err(Error::EndpointMismatch(
                self.image.point(self.last()).to_string(),
                self.image.point(other.first()).to_string(),
            ));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(DigitalPath {
            image: self.image,
            steps,
        })
    }

    pub fn reverse(&self) -> DigitalPath<'a> {
        let mut steps = self.steps.clone();
        steps.reverse();
        DigitalPath {
            image: self.image,
            steps,
        }
    }

    /// `γ∘ρ_k` with `ρ_k(i) = ⌊i/k⌋`: every step repeated k times.
    pub fn standard_projection_compose(&self, k: usize) -> Result<DigitalPath<'a>> {
        if k < 1 {
            return Err(Error::BadSubdivisionFactor);
        }
        let steps = self
            .steps
            .iter()
            .flat_map(|&s| std::iter::repeat_n(s, k))
            .collect();
        Ok(DigitalPath {
            image: self.image,
            steps,
        })
    }

    /// Repeats step `i` an extra `pauses[i]` times.
    pub fn trivial_extension(&self, pauses: &[usize]) -> Result<DigitalPath<'a>> {
        if pauses.len() != self.steps.len() {
            return Err(Error::PauseLengthMismatch {
                expected: self.steps.len(),
                found: pauses.len(),
            });
        }
        let steps = self
            .steps
            .iter()
            .zip(pauses)
            .flat_map(|(&s, &t)| std::iter::repeat_n(s, t + 1))
            .collect();
        Ok(DigitalPath {
            image: self.image,
            steps,
        })
    }

    /// Shortens the path to a contractible path between its endpoints.
    pub fn shorten(&self) -> Result<ContractiblePath<'a>> {
        shorten_path(self)
    }
}

/// Distinct points `a = p_0, …, p_m = b` with only consecutive adjacencies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractiblePath<'a> {
    image: &'a DigitalImage,
    members: Vec<usize>,
}

impl<'a> ContractiblePath<'a> {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn points(&self) -> Vec<Point> {
        self.members
            .iter()
            .map(|&i| self.image.point(i).clone())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// As a path from `a` to `b`.
    pub fn to_path(&self) -> DigitalPath<'a> {
        DigitalPath {
            image: self.image,
            steps: self.members.clone(),
        }
    }
}

fn contractible_indices(image: &DigitalImage, members: &[usize]) -> bool {
    let n = members.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if members[i] == members[j] {
                return false;
            }
            let adj = image.adjacent_indices(members[i], members[j]);
            if adj != (j == i + 1) {
                return false;
            }
        }
    }
    true
}

/// Checks the contractible-path conditions on an ordered point list: at least
/// three distinct points, consecutive ones adjacent and no other adjacencies
/// (so in particular the endpoints are not adjacent).
pub fn is_contractible_path(points: &[Point], image: &DigitalImage) -> Result<bool> {
    let members = points
        .iter()
        .map(|p| image.require(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(contractible_indices(image, &members))
}

/// Shortens a path between non-adjacent endpoints to a contractible path on a
/// subset of its points. Repeats are cut out first, then shortcuts between
/// adjacent values two or more steps apart; the leftmost cut is always made,
/// spanning to the farthest matching step.
pub fn shorten_path<'a>(path: &DigitalPath<'a>) -> Result<ContractiblePath<'a>> {
    let image = path.image();
    let (a, b) = (path.first(), path.last());
    if image.near(a, b) {
        return Err(Error::AdjacentEndpoints(
            image.point(a).to_string(),
            image.point(b).to_string(),
        ));
    }
    let mut steps = path.steps().to_vec();

    // Repeated values: gamma(i) == gamma(j), j > i.
    loop {
        let cut = (0..steps.len()).find_map(|i| {
            (i + 1..steps.len())
                .rev()
                .find(|&j| steps[j] == steps[i])
                .map(|j| (i, j))
        });
        match cut {
            Some((i, j)) => {
                steps.drain(i + 1..=j);
            }
            None => break,
        }
    }

    // Shortcuts: gamma(i) ~ gamma(j), j >= i + 2.
    loop {
        let cut = (0..steps.len()).find_map(|i| {
            (i + 2..steps.len())
                .rev()
                .find(|&j| image.adjacent_indices(steps[i], steps[j]))
                .map(|j| (i, j))
        });
        match cut {
            Some((i, j)) => {
                steps.drain(i + 1..j);
            }
            None => break,
        }
    }

    debug_assert!(contractible_indices(image, &steps));
    Ok(ContractiblePath {
        image,
        members: steps,
    })
}
