//! Edge loops, elementary edge moves, and the spanning-tree presentation of
//! the edge group of a clique complex.

use std::collections::{BTreeMap, VecDeque};

use crate::clique_complex::{two_skeleton, CliqueComplex};
use crate::error::{Error, Result};
use crate::group_algebra::{Letter, Presentation, Word};
use crate::image_core::{DigitalImage, DigitalPath};

/// Vertex sequence `v₀, …, v_n` of a complex with `v₀ = v_n` the basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeLoop {
    vertices: Vec<usize>,
}

impl EdgeLoop {
    /// Checks that consecutive vertices are equal or joined by an edge and
    /// that both ends are the basepoint.
    pub fn new(complex: &CliqueComplex, vertices: Vec<usize>) -> Result<Self> {
        let l = EdgeLoop { vertices };
        l.validate(complex)?;
        Ok(l)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of entries (n + 1).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `ℓ` followed by `m`, sharing the basepoint entry once.
    pub fn concat(&self, m: &EdgeLoop) -> EdgeLoop {
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&m.vertices[1..]);
        EdgeLoop { vertices }
    }

    pub fn reversed(&self) -> EdgeLoop {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        EdgeLoop { vertices }
    }

    /// Reads the loop as a digital loop of an image whose adjacency graph is
    /// the complex's 1-skeleton.
    pub fn to_path<'a>(&self, image: &'a DigitalImage) -> Result<DigitalPath<'a>> {
        DigitalPath::from_indices(image, self.vertices.clone())
    }

    fn validate(&self, complex: &CliqueComplex) -> Result<()> {
        let b = complex.basepoint();
        let n = complex.vertex_count();
        match (self.vertices.first(), self.vertices.last()) {
            (Some(&f), Some(&l)) if f == b && l == b => {}
            _ => {
                return Err(Error::NotALoop(format!(
                    "edge loop must start and end at vertex {b}"
                )))
            }
        }
        if let Some(&v) = self.vertices.iter().find(|&&v| v >= n) {
            return Err(Error::Precondition(format!("vertex {v} out of range")));
        }
        for (i, w) in self.vertices.windows(2).enumerate() {
            if w[0] != w[1] && !complex.has_edge(w[0], w[1]) {
                return Err(Error::NotContinuous {
                    index: i,
                    next: i + 1,
                });
            }
        }
        Ok(())
    }
}

/// Breadth-first spanning tree rooted at the basepoint, with the non-tree
/// edges numbered in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTreeData {
    root: usize,
    parent: Vec<Option<usize>>,
    non_tree: Vec<(usize, usize)>,
    generator_of: BTreeMap<(usize, usize), usize>,
}

impl SpanningTreeData {
    pub fn new(complex: &CliqueComplex) -> Result<Self> {
        let n = complex.vertex_count();
        let root = complex.basepoint();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            for &w in complex.graph().neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Disconnected);
        }
        let non_tree: Vec<(usize, usize)> = complex
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| parent[v] != Some(u) && parent[u] != Some(v))
            .collect();
        let generator_of = non_tree.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Ok(SpanningTreeData {
            root,
            parent,
            non_tree,
            generator_of,
        })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Non-tree edges `(u, v)`, `u < v`; the i-th is generator `g{i+1}`.
    pub fn non_tree_edges(&self) -> &[(usize, usize)] {
        &self.non_tree
    }

    pub fn generator_count(&self) -> usize {
        self.non_tree.len()
    }

    /// Generator of the edge traversed `u → v`: `None` for a tree edge.
    pub fn edge_letter(&self, u: usize, v: usize) -> Option<Letter> {
        let key = (u.min(v), u.max(v));
        self.generator_of.get(&key).map(|&g| Letter {
            generator: g,
            inverse: u > v,
        })
    }

    /// Tree path from the root to `v`, inclusive.
    pub fn path_from_root(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// The loop `root ⇝ u → v ⇝ root` through the generator's edge, which
    /// represents that generator.
    pub fn generator_loop(&self, generator: usize) -> Result<EdgeLoop> {
        let &(u, v) = self
            .non_tree
            .get(generator)
            .ok_or(Error::GeneratorOutOfRange {
                generator: generator + 1,
                count: self.non_tree.len(),
            })?;
        let mut vertices = self.path_from_root(u);
        let mut back = self.path_from_root(v);
        back.reverse();
        vertices.extend(back);
        Ok(EdgeLoop { vertices })
    }
}

/// An elementary edge move on an edge loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveSpec {
    /// (a) Requires `v_i = v_{i+1}`; drops one copy.
    DeleteRepeat { index: usize },
    /// (a) Repeats `v_i`.
    InsertRepeat { index: usize },
    /// (b) Requires `0 < i < n` and `{v_{i-1}, v_i, v_{i+1}}` to span a
    /// simplex (possibly an edge or a vertex); removes `v_i`.
    DeleteVertex { index: usize },
    /// (b) Inserts `vertex` before position `index`, `1 ≤ index ≤ n`,
    /// when `{v_{index-1}, vertex, v_index}` spans a simplex.
    InsertVertex { index: usize, vertex: usize },
}

/// Applies an elementary edge homotopy. Endpoints never change.
pub fn apply_edge_move(complex: &CliqueComplex, l: &EdgeLoop, mv: MoveSpec) -> Result<EdgeLoop> {
    l.validate(complex)?;
    let v = &l.vertices;
    let n = v.len() - 1;
    let fail = |why: &str| Err(Error::InapplicableMove(format!("{mv:?}: {why}")));
    let mut out = v.clone();
    match mv {
        MoveSpec::DeleteRepeat { index } => {
            if index >= n || v[index] != v[index + 1] {
                return fail("no repeated vertex at this index");
            }
            out.remove(index + 1);
        }
        MoveSpec::InsertRepeat { index } => {
            if index > n {
                return fail("index out of range");
            }
            out.insert(index, v[index]);
        }
        MoveSpec::DeleteVertex { index } => {
            if index == 0 || index >= n {
                return fail("endpoints cannot be deleted");
            }
            if !complex.spans_simplex(&[v[index - 1], v[index], v[index + 1]]) {
                return fail("neighbouring vertices do not span a simplex");
            }
            out.remove(index);
        }
        MoveSpec::InsertVertex { index, vertex } => {
            if index == 0 || index > n || vertex >= complex.vertex_count() {
                return fail("index or vertex out of range");
            }
            if !complex.spans_simplex(&[v[index - 1], vertex, v[index]]) {
                return fail("inserted vertex does not span a simplex with its neighbours");
            }
            out.insert(index, vertex);
        }
    }
    Ok(EdgeLoop { vertices: out })
}

/// The vertex sequence `e(α) = (α(0), …, α(M))` in the complex of α's image.
pub fn edge_loop_of(alpha: &DigitalPath<'_>) -> Result<EdgeLoop> {
    if !alpha.is_loop() {
        return Err(Error::NotALoop(
            "path does not start and end at the basepoint".into(),
        ));
    }
    Ok(EdgeLoop {
        vertices: alpha.steps().to_vec(),
    })
}

/// Generators for non-tree edges; one relator `g_uv g_vw g_uw⁻¹` per
/// triangle `u < v < w`, tree edges read as the identity. Relators that
/// vanish are kept as empty words.
pub fn presentation_of(complex: &CliqueComplex) -> Result<Presentation> {
    let tree = SpanningTreeData::new(complex)?;
    Ok(presentation_with_tree(complex, &tree))
}

fn presentation_with_tree(complex: &CliqueComplex, tree: &SpanningTreeData) -> Presentation {
    let relators = complex
        .triangles()
        .iter()
        .map(|&[u, v, w]| {
            let letters = [
                tree.edge_letter(u, v),
                tree.edge_letter(v, w),
                tree.edge_letter(w, u),
            ];
            Word::reduced(letters.into_iter().flatten().collect())
        })
        .collect();
    Presentation::new(tree.generator_count(), relators).expect("generators come from the tree")
}

/// Reads off the signed non-tree edges crossed by the loop.
pub fn loop_to_word(
    complex: &CliqueComplex,
    tree: &SpanningTreeData,
    l: &EdgeLoop,
) -> Result<Word> {
    l.validate(complex)?;
    let letters = l
        .vertices
        .windows(2)
        .filter(|w| w[0] != w[1])
        .filter_map(|w| tree.edge_letter(w[0], w[1]))
        .collect();
    Ok(Word::reduced(letters))
}

/// Complex, tree and presentation of a connected image, computed once.
#[derive(Clone, Debug)]
pub struct EdgeGroupData {
    complex: CliqueComplex,
    tree: SpanningTreeData,
    presentation: Presentation,
}

impl EdgeGroupData {
    pub fn new(complex: CliqueComplex) -> Result<Self> {
        let tree = SpanningTreeData::new(&complex)?;
        let presentation = presentation_with_tree(&complex, &tree);
        Ok(EdgeGroupData {
            complex,
            tree,
            presentation,
        })
    }

    pub fn of_image(image: &DigitalImage) -> Result<Self> {
        Self::new(two_skeleton(image))
    }

    pub fn complex(&self) -> &CliqueComplex {
        &self.complex
    }

    pub fn tree(&self) -> &SpanningTreeData {
        &self.tree
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn word_of(&self, l: &EdgeLoop) -> Result<Word> {
        loop_to_word(&self.complex, &self.tree, l)
    }

    /// `φ(α)` for a loop in the image this data was built from.
    pub fn phi(&self, alpha: &DigitalPath<'_>) -> Result<Word> {
        self.word_of(&edge_loop_of(alpha)?)
    }
}

/// `φ([α]) = [e(α)]` as a reduced word in the canonical presentation.
pub fn phi(image: &DigitalImage, alpha: &DigitalPath<'_>) -> Result<Word> {
    if alpha.image() != image {
        return Err(Error::DifferentImages);
    }
    EdgeGroupData::of_image(image)?.phi(alpha)
}
