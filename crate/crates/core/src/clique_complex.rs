//! The 2-skeleton of the clique (flag) complex of an image or abstract graph.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::image_core::DigitalImage;

/// A finite simple graph on vertices `0..n` (equivalently a finite tolerance
/// space).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SimpleGraph {
    adjacency: Vec<BTreeSet<usize>>,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize) -> Self {
        SimpleGraph {
            adjacency: vec![BTreeSet::new(); vertex_count],
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, out-of-range
    /// endpoints and repeated edges.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(vertex_count);
        for &(u, v) in edges {
            if u == v || u >= vertex_count || v >= vertex_count || g.has_edge(u, v) {
                return Err(Error::BadEdge(u, v));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Cycle graph on `n` vertices, `i ~ i+1 mod n`.
    pub fn cycle(n: usize) -> Self {
        let mut g = Self::new(n);
        for i in 0..n {
            let j = (i + 1) % n;
            if i != j {
                g.add_edge(i, j);
            }
        }
        g
    }

    /// Adds an edge; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "self-loop ({u}, {u})");
        let fresh = self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        fresh
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adjacency.push(BTreeSet::new());
        self.adjacency.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    /// Edges as sorted pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.range(u + 1..).map(move |&v| (u, v)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }
}

impl DigitalImage {
    /// The adjacency graph on the image's canonical point indices.
    pub fn adjacency_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.len());
        for (u, row) in self.neighbor_table().into_iter().enumerate() {
            for v in row {
                if u < v {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }
}

/// Vertices, edges and triangles of a flag complex, with a basepoint vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueComplex {
    graph: SimpleGraph,
    edges: Vec<(usize, usize)>,
    triangles: Vec<[usize; 3]>,
    basepoint: usize,
}

impl CliqueComplex {
    pub fn from_graph(graph: SimpleGraph, basepoint: usize) -> Result<Self> {
        if graph.vertex_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        if basepoint >= graph.vertex_count() {
            return Err(Error::BadBasepoint {
                index: basepoint,
                len: graph.vertex_count(),
            });
        }
        let edges = graph.edges();
        let triangles = triangles_of(&graph, &edges);
        Ok(CliqueComplex {
            graph,
            edges,
            triangles,
            basepoint,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.graph.has_edge(u, v)
    }

    /// True if the distinct members of `vs` are pairwise joined, i.e. they
    /// span a simplex of the complex.
    pub fn spans_simplex(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| {
            vs[i + 1..]
                .iter()
                .all(|&v| u == v || self.graph.has_edge(u, v))
        })
    }

    /// (vertices, edges, triangles).
    pub fn f_vector(&self) -> (usize, usize, usize) {
        (self.vertex_count(), self.edges.len(), self.triangles.len())
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }
}

/// 3-cliques, found by intersecting the later-neighbour sets of each edge.
fn triangles_of(graph: &SimpleGraph, edges: &[(usize, usize)]) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for &(u, v) in edges {
        for &w in graph.neighbors(u).range(v + 1..) {
            if graph.has_edge(v, w) {
                out.push([u, v, w]);
            }
        }
    }
    out
}

/// The 2-skeleton of `cl(X)`: points, adjacent pairs, and 3-cliques.
pub fn two_skeleton(image: &DigitalImage) -> CliqueComplex {
    CliqueComplex::from_graph(image.adjacency_graph(), image.basepoint_index())
        .expect("digital images are nonempty")
}

/// 2-skeleton of the clique complex of an abstract graph.
pub fn two_skeleton_of_graph(graph: &SimpleGraph, basepoint: usize) -> Result<CliqueComplex> {
    CliqueComplex::from_graph(graph.clone(), basepoint)
}

/// Size of a largest clique, by Bron–Kerbosch with Tomita pivoting.
pub fn max_clique_size(graph: &SimpleGraph) -> usize {
    fn expand(
        graph: &SimpleGraph,
        size: usize,
        mut candidates: BTreeSet<usize>,
        mut excluded: BTreeSet<usize>,
        best: &mut usize,
    ) {
        if candidates.is_empty() {
            if excluded.is_empty() {
                *best = (*best).max(size);
            }
            return;
        }
        if size + candidates.len() <= *best {
            return;
        }
        let pivot = candidates
            .iter()
            .chain(excluded.iter())
            .copied()
            .max_by_key(|&u| graph.neighbors(u).intersection(&candidates).count())
            .expect("nonempty");
        let branch: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|v| !graph.has_edge(pivot, *v))
            .collect();
        for v in branch {
            let nb = graph.neighbors(v);
            expand(
                graph,
                size + 1,
                candidates.intersection(nb).copied().collect(),
                excluded.intersection(nb).copied().collect(),
                best,
            );
            candidates.remove(&v);
            excluded.insert(v);
        }
    }

    let mut best = 0;
    expand(
        graph,
        0,
        (0..graph.vertex_count()).collect(),
        BTreeSet::new(),
        &mut best,
    );
    best
}

/// DOT rendering of the 1-skeleton of an image, vertices labelled by
/// coordinates.
pub fn export_dot(image: &DigitalImage) -> String {
    let mut out = String::from("graph image {\n");
    for (i, p) in image.points().iter().enumerate() {
        let shape = if i == image.basepoint_index() {
            ", shape=doublecircle"
        } else {
            ""
        };
        let _ = writeln!(out, "  {i} [label=\"{p}\"{shape}];");
    }
    for (u, v) in image.adjacency_graph().edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image_core::Point;

    fn image(points: &[&[i64]]) -> DigitalImage {
        let pts = points.iter().map(|c| Point::new(c.to_vec())).collect();
        DigitalImage::new(points[0].len(), pts, 0).unwrap()
    }

    #[test]
    fn diamond_f_vector() {
        let d = image(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]);
        let k = two_skeleton(&d);
        assert_eq!(k.f_vector(), (4, 4, 0));
        assert_eq!(max_clique_size(&d.adjacency_graph()), 2);
    }

    #[test]
    fn unit_square_is_k4() {
        let sq = image(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let k = two_skeleton(&sq);
        assert_eq!(k.f_vector(), (4, 6, 4));
        assert_eq!(max_clique_size(&sq.adjacency_graph()), 4);
    }

    #[test]
    fn flag_property_matches_pairwise_scan() {
        let blob = image(&[
            &[0, 0],
            &[1, 0],
            &[2, 0],
            &[0, 1],
            &[1, 1],
            &[2, 2],
            &[3, 3],
            &[1, 2],
        ]);
        let k = two_skeleton(&blob);
        let n = blob.len();
        let mut expected = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if blob.adjacent_indices(a, b)
                        && blob.adjacent_indices(b, c)
                        && blob.adjacent_indices(a, c)
                    {
                        expected.push([a, b, c]);
                    }
                }
            }
        }
        assert_eq!(k.triangles(), expected.as_slice());
        for &(u, v) in k.edges() {
            assert!(blob.adjacent_indices(u, v));
        }
    }

    #[test]
    fn graph_validation() {
        assert_eq!(
            SimpleGraph::from_edges(2, &[(0, 0)]),
            Err(Error::BadEdge(0, 0))
        );
        assert_eq!(
            SimpleGraph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(Error::BadEdge(1, 0))
        );
        assert_eq!(
            SimpleGraph::from_edges(2, &[(0, 2)]),
            Err(Error::BadEdge(0, 2))
        );
        assert_eq!(
            CliqueComplex::from_graph(SimpleGraph::new(0), 0),
            Err(Error::EmptyGraph)
        );
    }

    #[test]
    fn clique_size_on_known_graphs() {
        assert_eq!(max_clique_size(&SimpleGraph::new(3)), 1);
        assert_eq!(max_clique_size(&SimpleGraph::cycle(5)), 2);
        let mut k5 = SimpleGraph::new(5);
        for u in 0..5 {
            for v in u + 1..5 {
                k5.add_edge(u, v);
            }
        }
        assert_eq!(max_clique_size(&k5), 5);
    }

    #[test]
    fn dot_export_lists_edges() {
        let d = image(&[&[1, 0], &[0, 1]]);
        let dot = export_dot(&d);
        assert!(dot.starts_with("graph image {"));
        assert!(dot.contains("0 -- 1;"));
        assert!(dot.contains("label=\"(0,1)\""));
    }
}
