//! Named example images and the constructive embedding and realization
//! procedures.

use std::collections::BTreeSet;

use crate::clique_complex::{two_skeleton, SimpleGraph};
use crate::error::{Error, Result};
use crate::group_algebra::{Presentation, Word};
use crate::image_core::{DigitalImage, Point};

/// `I_N = {0, 1, …, N} ⊂ ℤ`, based at 0.
pub fn digital_interval(n: usize) -> DigitalImage {
    let points = (0..=n as i64).map(|i| Point::new(vec![i])).collect();
    DigitalImage::new(1, points, 0).expect("interval is valid")
}

/// The 4-point circle `{(±1,0), (0,±1)}` based at (1,0).
pub fn diamond() -> DigitalImage {
    image2(&[[1, 0], [0, 1], [-1, 0], [0, -1]])
}

/// A digital circle of length `n ≥ 4`: the diamond for `n = 4`, otherwise
/// the embedded cycle graph based at the image of vertex 0.
pub fn circle(n: usize) -> Result<DigitalImage> {
    if n < 4 {
        return Err(Error::Precondition(format!(
            "a digital circle needs at least 4 points, got {n}"
        )));
    }
    if n == 4 {
        return Ok(diamond());
    }
    Ok(embed_graph(&SimpleGraph::cycle(n))?.image)
}

/// Two diamonds sharing only the origin.
pub fn double_diamond() -> DigitalImage {
    image2(&[[0, 0], [1, 1], [2, 0], [1, -1], [-1, 1], [-2, 0], [-1, -1]])
}

/// The right and left diamonds of [`double_diamond`], both based at the
/// origin.
pub fn double_diamond_parts() -> (DigitalImage, DigitalImage) {
    (
        image2(&[[0, 0], [1, 1], [2, 0], [1, -1]]),
        image2(&[[0, 0], [-1, 1], [-2, 0], [-1, -1]]),
    )
}

fn image2(points: &[[i64; 2]]) -> DigitalImage {
    DigitalImage::new(2, points.iter().map(|&p| Point::from(p)).collect(), 0)
        .expect("fixed coordinates are valid")
}

/// Coordinates of vertices 1–13 of the 13-point projective plane in ℤ⁸.
pub const PROJECTIVE_PLANE_COORDS: [[i64; 8]; 13] = [
    [0, 0, 0, 1, 0, -1, 0, -1],
    [0, 0, 0, 0, 1, 0, -1, -1],
    [0, 0, 0, 0, 0, 1, 0, -1],
    [0, 0, 0, 0, 0, 0, 1, -1],
    [1, 0, 1, 0, -1, -1, 0, 0],
    [1, 1, 0, 0, 0, -1, -1, 0],
    [0, 1, -1, -1, 0, 0, -1, 0],
    [-1, 1, 0, -1, -1, 0, 0, 0],
    [-1, 0, 1, 0, -1, -1, 0, 0],
    [-1, -1, 0, 0, 0, -1, -1, 0],
    [0, -1, -1, -1, 0, 0, -1, 0],
    [1, -1, 0, -1, -1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1],
];

/// Edges of the triangulated projective plane on vertices 1–13: the disk
/// with antipodal boundary points identified, vertex 13 at the centre.
pub const PROJECTIVE_PLANE_EDGES: [(usize, usize); 36] = [
    (1, 2),
    (2, 3),
    (3, 4),
    (1, 4),
    (7, 2),
    (7, 3),
    (7, 8),
    (7, 6),
    (7, 13),
    (8, 13),
    (8, 4),
    (8, 9),
    (8, 3),
    (9, 4),
    (9, 1),
    (9, 13),
    (9, 10),
    (10, 13),
    (10, 2),
    (10, 1),
    (10, 11),
    (11, 13),
    (11, 2),
    (11, 3),
    (11, 12),
    (12, 13),
    (12, 3),
    (12, 4),
    (12, 5),
    (5, 13),
    (5, 4),
    (5, 1),
    (5, 6),
    (6, 13),
    (6, 1),
    (6, 2),
];

/// The triangulation graph with vertex `i` (1-based) stored as `i − 1`.
pub fn projective_plane_graph() -> SimpleGraph {
    let edges: Vec<(usize, usize)> = PROJECTIVE_PLANE_EDGES
        .iter()
        .map(|&(u, v)| (u - 1, v - 1))
        .collect();
    SimpleGraph::from_edges(13, &edges).expect("fixed edge list is simple")
}

/// The 13-point image in ℤ⁸ whose clique complex triangulates ℝP², based at
/// vertex 13.
pub fn projective_plane() -> DigitalImage {
    let points = PROJECTIVE_PLANE_COORDS
        .iter()
        .map(|c| Point::new(c.to_vec()))
        .collect();
    DigitalImage::new(8, points, 12).expect("fixed coordinates are valid")
}

/// A digital image isomorphic to a graph, with both directions of the
/// vertex correspondence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEmbedding {
    pub image: DigitalImage,
    /// Graph vertex → image point index.
    pub point_of: Vec<usize>,
    /// Image point index → graph vertex.
    pub vertex_of: Vec<usize>,
}

/// One inductive step: every existing point gains a coordinate, 0 if it is
/// linked to the new vertex and −1 otherwise, and the new vertex is placed
/// at the new unit vector.
pub fn extend_embedding(coords: &mut Vec<Vec<i64>>, linked: &[bool]) {
    assert_eq!(
        coords.len(),
        linked.len(),
        "one link flag per existing point"
    );
    let dim = coords.first().map_or(0, Vec::len);
    for (c, &l) in coords.iter_mut().zip(linked) {
        c.push(if l { 0 } else { -1 });
    }
    let mut e = vec![0; dim + 1];
    e[dim] = 1;
    coords.push(e);
}

/// Embeds a graph in `[−1,1]^{n−1}` by adding its vertices in order; a
/// single vertex goes to the origin of ℤ¹. The basepoint is vertex 0.
pub fn embed_graph(g: &SimpleGraph) -> Result<GraphEmbedding> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let coords = if n == 1 {
        vec![vec![0]]
    } else {
        let mut coords = vec![Vec::new()];
        for v in 1..n {
            let linked: Vec<bool> = (0..v).map(|u| g.has_edge(u, v)).collect();
            extend_embedding(&mut coords, &linked);
        }
        coords
    };
    let dim = coords[0].len();
    let points: Vec<Point> = coords.into_iter().map(Point::new).collect();
    let image = DigitalImage::new(dim, points.clone(), 0)?;
    let point_of: Vec<usize> = points
        .iter()
        .map(|p| image.index_of(p).expect("point was inserted"))
        .collect();
    let mut vertex_of = vec![0; n];
    for (v, &i) in point_of.iter().enumerate() {
        vertex_of[i] = v;
    }
    Ok(GraphEmbedding {
        image,
        point_of,
        vertex_of,
    })
}

/// 1-skeleton and designed triangles of the 2-complex presenting a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationComplex {
    pub graph: SimpleGraph,
    /// Sorted vertex triples, in lexicographic order.
    pub triangles: Vec<[usize; 3]>,
}

/// Wedge vertex `v_{i,t}` for 0-based generator `i` and `t ∈ 1..=3`.
fn wedge_vertex(i: usize, t: usize) -> usize {
    1 + 3 * i + (t - 1)
}

/// Builds the complex: a wedge of `n` 4-cycles on `v₀ = 0` and
/// `v_{i,t} = 1 + 3(i−1) + (t−1)`, and per relator of length k a disk made
/// of an outer 4k-cycle glued letter by letter to the wedge, an inner
/// 4k-cycle, the annulus between them and a cone vertex. The inner vertices
/// of relator j follow those of relator j − 1, each block ending with its
/// cone vertex.
///
/// When a relator's last letter is the inverse of its first, outer vertices
/// 2 and 4k coincide. The annulus quad on outer vertices 1, 2 and inner
/// vertices 1, 2 is then split along the other diagonal, so that the disk
/// folds along one triangle instead of closing up a 4-clique.
pub fn realization_complex(n_generators: usize, relators: &[Word]) -> Result<RealizationComplex> {
    if n_generators == 0 {
        return Err(Error::NoGenerators);
    }
    for (j, r) in relators.iter().enumerate() {
        if r.is_empty() {
            return Err(Error::EmptyRelator(j + 1));
        }
        if !r.is_freely_reduced() {
            return Err(Error::UnreducedRelator(j + 1));
        }
        if let Some(g) = r.max_generator() {
            if g >= n_generators {
                return Err(Error::GeneratorOutOfRange {
                    generator: g + 1,
                    count: n_generators,
                });
            }
        }
    }

    let mut graph = SimpleGraph::new(1 + 3 * n_generators);
    for i in 0..n_generators {
        let cycle = [
            0,
            wedge_vertex(i, 1),
            wedge_vertex(i, 2),
            wedge_vertex(i, 3),
        ];
        for t in 0..4 {
            graph.add_edge(cycle[t], cycle[(t + 1) % 4]);
        }
    }
    let mut triangles = BTreeSet::new();
    let mut tri = |a: usize, b: usize, c: usize| {
        let mut t = [a, b, c];
        t.sort_unstable();
        triangles.insert(t);
    };

    for r in relators {
        let letters = r.letters();
        let outer: Vec<usize> = letters
            .iter()
            .flat_map(|l| {
                let g = l.generator;
                if l.inverse {
                    [
                        0,
                        wedge_vertex(g, 3),
                        wedge_vertex(g, 2),
                        wedge_vertex(g, 1),
                    ]
                } else {
                    [
                        0,
                        wedge_vertex(g, 1),
                        wedge_vertex(g, 2),
                        wedge_vertex(g, 3),
                    ]
                }
            })
            .collect();
        let len = outer.len();
        let inner: Vec<usize> = (0..len).map(|_| graph.add_vertex()).collect();
        let cone = graph.add_vertex();
        let first = letters[0];
        let last = letters[letters.len() - 1];
        let folds =
            letters.len() > 1 && first.generator == last.generator && first.inverse != last.inverse;

        for i in 0..len {
            let (c, c_next) = (outer[i], outer[(i + 1) % len]);
            let (p, p_next) = (inner[i], inner[(i + 1) % len]);
            graph.add_edge(c, c_next);
            graph.add_edge(p, p_next);
            graph.add_edge(cone, p);
            graph.add_edge(c, p);
            tri(cone, p, p_next);
            if folds && i == 0 {
                graph.add_edge(c_next, p);
                tri(c, c_next, p);
                tri(c_next, p, p_next);
            } else {
                graph.add_edge(c, p_next);
                tri(c, p, p_next);
                tri(c, c_next, p_next);
            }
        }
    }
    Ok(RealizationComplex {
        graph,
        triangles: triangles.into_iter().collect(),
    })
}

/// A digital image realizing a presentation, with the designed complex and
/// the embedding that carries it.
#[derive(Clone, Debug)]
pub struct Realization {
    pub complex: RealizationComplex,
    pub embedding: GraphEmbedding,
}

impl Realization {
    pub fn image(&self) -> &DigitalImage {
        &self.embedding.image
    }

    /// The flag triangles of the image, read back through the embedding,
    /// are exactly the designed triangles.
    pub fn triangles_match_design(&self) -> bool {
        let vertex_of = &self.embedding.vertex_of;
        let mut found: Vec<[usize; 3]> = two_skeleton(self.image())
            .triangles()
            .iter()
            .map(|t| {
                let mut m = t.map(|i| vertex_of[i]);
                m.sort_unstable();
                m
            })
            .collect();
        found.sort_unstable();
        found == self.complex.triangles
    }
}

/// Embeds the realization complex of `p` and checks that the image's flag
/// triangles are exactly the designed ones. Empty relators are skipped.
pub fn realize_presentation(p: &Presentation) -> Result<Realization> {
    let relators: Vec<Word> = p
        .relators()
        .iter()
        .filter(|r| !r.is_empty())
        .cloned()
        .collect();
    let complex = realization_complex(p.generator_count(), &relators)?;
    let embedding = embed_graph(&complex.graph)?;
    let r = Realization { complex, embedding };
    if !r.triangles_match_design() {
        return Err(Error::Precondition(
            "embedded image has triangles outside the designed complex".into(),
        ));
    }
    Ok(r)
}
