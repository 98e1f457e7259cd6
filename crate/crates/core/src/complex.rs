//! Polyhedral decompositions of covers, their 2-spines, and fundamental-group
//! presentations.
//!
//! A degree-n cover is tiled by n copies of the doubled prism; face f of cell
//! i is glued to face f_- of cell sigma_g(i) for (f, g) in
//! {(0,x), (1,y), (2,z), (3,w)}. Edge and vertex identifications follow from
//! the per-face correspondences: a mirror-side instance on the plus face maps
//! to the plain instance in the target cell, and every gluing preserves the
//! template edge directions, so class orientations are globally consistent.

use std::collections::HashMap;

use num_integer::Integer;
use thiserror::Error;

use crate::catalog::{template, PrismSignature, VertexId};
use crate::homology::{first_homology_of_matrix, AbelianGroup};
use crate::perm::{validate_rep, Gen, PermRep, GENS};

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("representation is not valid for this signature: {0}")]
    InvalidRep(String),
    #[error("spine is disconnected")]
    DisconnectedSpine,
    #[error("cover is not a manifold")]
    NotAManifold,
}

/// Union-find over 0..n with path compression.
#[derive(Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller index as root for canonical class ids.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// The classes as sorted lists, ordered by least element.
    pub fn partition(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..n {
            by_root.entry(self.find(i)).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort_by_key(|c| c[0]);
        out
    }
}

/// Whether an instance sits in the original prism copy or its mirror image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Plain,
    Mirror,
}

// Per-cell edge instances: plain a1..a9 at locals 0..9, mirrored copies of
// the off-doubling-face edges a2, a3, a6, a8, a9 at locals 9..14.
pub const EDGE_LOCALS: usize = 14;
const MIRRORED_EDGES: [usize; 5] = [1, 2, 5, 7, 8];

fn mirror_local(edge: usize) -> usize {
    9 + MIRRORED_EDGES
        .iter()
        .position(|&e| e == edge)
        .expect("edge has a mirror instance")
}

/// Template edge index (0..9) of an edge local.
pub fn edge_local_label(local: usize) -> usize {
    if local < 9 {
        local
    } else {
        MIRRORED_EDGES[local - 9]
    }
}

pub fn edge_local_side(local: usize) -> Side {
    if local < 9 {
        Side::Plain
    } else {
        Side::Mirror
    }
}

// Per-cell vertex instances: v_inf, v1..v5 at 0..6; mirrored v2, v4 at 6, 7.
pub const VERTEX_LOCALS: usize = 8;

fn vertex_local(v: VertexId, side: Side) -> usize {
    match (v, side) {
        (VertexId::VInf, _) => 0,
        (VertexId::V1, _) => 1,
        (VertexId::V2, Side::Plain) => 2,
        (VertexId::V3, _) => 3,
        (VertexId::V4, Side::Plain) => 4,
        (VertexId::V5, _) => 5,
        (VertexId::V2, Side::Mirror) => 6,
        (VertexId::V4, Side::Mirror) => 7,
    }
}

pub fn vertex_local_id(local: usize) -> VertexId {
    match local {
        0 => VertexId::VInf,
        1 => VertexId::V1,
        2 | 6 => VertexId::V2,
        3 => VertexId::V3,
        4 | 7 => VertexId::V4,
        5 => VertexId::V5,
        _ => unreachable!(),
    }
}

/// (tail, head) vertex locals of each edge local, fixing the template edge
/// directions a3: v1->v2, a6: v2->v4, a9: v4->v3, a4: v3->v1, a7: v3->v5,
/// a8: v5->v4, a1: vinf->v1, a2: vinf->v2, a5: vinf->v5.
fn edge_local_ends(local: usize) -> (usize, usize) {
    match local {
        0 => (0, 1),  // a1
        1 => (0, 2),  // a2
        2 => (1, 2),  // a3
        3 => (3, 1),  // a4
        4 => (0, 5),  // a5
        5 => (2, 4),  // a6
        6 => (3, 5),  // a7
        7 => (5, 4),  // a8
        8 => (4, 3),  // a9
        9 => (0, 6),  // a2 mirror
        10 => (1, 6), // a3 mirror
        11 => (6, 7), // a6 mirror
        12 => (5, 7), // a8 mirror
        13 => (7, 3), // a9 mirror
        _ => unreachable!(),
    }
}

/// The cells and edge/vertex identifications of a cover.
pub struct CoverComplex {
    sig: PrismSignature,
    rep: PermRep,
    edge_classes: UnionFind,
    vertex_classes: UnionFind,
}

/// Edges of each face paired by a generator, with the axis edge last.
/// Face f of cell i glues to face f_- of cell sigma_g(i); the mirror instance
/// of each non-axis edge maps to the plain instance in the target.
const FACE_EDGE_GLUE: [(Gen, &[usize], usize); 4] = [
    (Gen::X, &[1, 2], 0),
    (Gen::Y, &[2, 5, 8], 3),
    (Gen::Z, &[1, 5, 7], 4),
    (Gen::W, &[7, 8], 6),
];

/// Vertices of each face paired by a generator: mirror-side instance on the
/// plus face maps to the plain instance in the target cell.
const FACE_VERTEX_GLUE: [(Gen, &[VertexId]); 4] = [
    (Gen::X, &[VertexId::VInf, VertexId::V1, VertexId::V2]),
    (Gen::Y, &[VertexId::V1, VertexId::V2, VertexId::V4, VertexId::V3]),
    (
        Gen::Z,
        &[VertexId::VInf, VertexId::V2, VertexId::V4, VertexId::V5],
    ),
    (Gen::W, &[VertexId::V3, VertexId::V4, VertexId::V5]),
];

impl CoverComplex {
    pub fn degree(&self) -> usize {
        self.rep.degree()
    }

    pub fn signature(&self) -> &PrismSignature {
        &self.sig
    }

    pub fn rep(&self) -> &PermRep {
        &self.rep
    }

    /// The cell whose face f_- is glued to face f of `cell`.
    pub fn face_target(&self, cell: usize, face: usize) -> usize {
        self.rep.gen(GENS[face]).apply(cell)
    }

    fn edge_instance(&self, cell: usize, local: usize) -> usize {
        cell * EDGE_LOCALS + local
    }

    fn vertex_instance(&self, cell: usize, local: usize) -> usize {
        cell * VERTEX_LOCALS + local
    }

    pub fn edge_class_root(&mut self, cell: usize, local: usize) -> usize {
        let inst = self.edge_instance(cell, local);
        self.edge_classes.find(inst)
    }

    pub fn vertex_class_root(&mut self, cell: usize, local: usize) -> usize {
        let inst = self.vertex_instance(cell, local);
        self.vertex_classes.find(inst)
    }

    /// Classes of instances of the template edge with tuple index `edge`,
    /// each as a sorted list of (cell, side), ordered by least plain cell.
    pub fn edge_classes_for_label(&mut self, edge: usize) -> Vec<Vec<(usize, Side)>> {
        let n = self.degree();
        let mut by_root: HashMap<usize, Vec<(usize, Side)>> = HashMap::new();
        let mut locals = vec![edge];
        if MIRRORED_EDGES.contains(&edge) {
            locals.push(mirror_local(edge));
        }
        for cell in 0..n {
            for &l in &locals {
                let root = self.edge_class_root(cell, l);
                by_root
                    .entry(root)
                    .or_default()
                    .push((cell, edge_local_side(l)));
            }
        }
        let mut out: Vec<Vec<(usize, Side)>> = by_root.into_values().collect();
        for c in &mut out {
            c.sort();
        }
        // Order classes by least plain-side cell.
        out.sort_by_key(|c| {
            c.iter()
                .filter(|(_, s)| *s == Side::Plain)
                .map(|&(cell, _)| cell)
                .min()
                .unwrap_or(usize::MAX)
        });
        out
    }

    /// Classes of instances of a template vertex, each as a sorted list of
    /// cells (mirror instances included), ordered by least cell.
    pub fn vertex_classes_for(&mut self, v: VertexId) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut locals = vec![vertex_local(v, Side::Plain)];
        if matches!(v, VertexId::V2 | VertexId::V4) {
            locals.push(vertex_local(v, Side::Mirror));
        }
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for cell in 0..n {
            for &l in &locals {
                let root = self.vertex_class_root(cell, l);
                by_root.entry(root).or_default().push(cell);
            }
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        for c in &mut out {
            c.sort_unstable();
            c.dedup();
        }
        out.sort();
        out
    }
}

/// Instantiates the cells of the cover and merges edge and vertex instances
/// across the face gluings.
pub fn build_complex(sig: &PrismSignature, rep: &PermRep) -> Result<CoverComplex, ComplexError> {
    let report = validate_rep(sig, rep);
    if !report.is_valid() {
        return Err(ComplexError::InvalidRep(format!(
            "{} relator failures, transitive: {}",
            report.relator_failures.len(),
            report.transitive
        )));
    }
    template();
    let n = rep.degree();
    let mut edges = UnionFind::new(n * EDGE_LOCALS);
    let mut verts = UnionFind::new(n * VERTEX_LOCALS);
    for i in 0..n {
        for &(g, face_edges, axis) in &FACE_EDGE_GLUE {
            let j = rep.gen(g).apply(i);
            for &e in face_edges {
                edges.union(i * EDGE_LOCALS + mirror_local(e), j * EDGE_LOCALS + e);
            }
            edges.union(i * EDGE_LOCALS + axis, j * EDGE_LOCALS + axis);
        }
        for &(g, face_verts) in &FACE_VERTEX_GLUE {
            let j = rep.gen(g).apply(i);
            for &v in face_verts {
                verts.union(
                    i * VERTEX_LOCALS + vertex_local(v, Side::Mirror),
                    j * VERTEX_LOCALS + vertex_local(v, Side::Plain),
                );
            }
        }
    }
    Ok(CoverComplex {
        sig: sig.clone(),
        rep: rep.clone(),
        edge_classes: edges,
        vertex_classes: verts,
    })
}

/// A 1-cell of the spine: an edge class with its template label and its
/// endpoints among the spine 0-cells.
#[derive(Debug, Clone)]
pub struct SpineEdge {
    pub label: usize,
    pub tail: usize,
    pub head: usize,
}

/// A 2-cell with its boundary word (signed 1-cells) and the minus-side faces
/// composing it.
#[derive(Debug, Clone)]
pub struct SpineCell {
    pub boundary: Vec<(usize, i8)>,
    pub pieces: Vec<(usize, u8)>,
}

/// The 2-complex deformation retract of a cover: 0-cells are finite vertex
/// classes of compact faces, 1-cells compact edge classes, 2-cells the glued
/// face-1 and face-3 pairs.
#[derive(Debug, Clone)]
pub struct SpineComplex {
    pub vertices: usize,
    pub edges: Vec<SpineEdge>,
    pub cells: Vec<SpineCell>,
}

impl SpineComplex {
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertices, self.edges.len(), self.cells.len())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.cells.len() as i64
    }

    /// Split of 2-cells by composition: (face-1 piece count, face-3 piece
    /// count) per cell.
    pub fn cell_compositions(&self) -> Vec<(usize, usize)> {
        self.cells
            .iter()
            .map(|c| {
                let f1 = c.pieces.iter().filter(|p| p.1 == 1).count();
                let f3 = c.pieces.iter().filter(|p| p.1 == 3).count();
                (f1, f3)
            })
            .collect()
    }
}

// Boundary walks of the plus-side compact faces, as (edge local, sign) with
// edge directions as in `edge_local_ends`. Face 1 plus side: v1 -a3~- v2~
// -a6~- v4~ -a9~- v3 -a4- v1; face 3 plus side: v3 -a7- v5 -a8~- v4~ -a9~- v3.
const FACE1_BOUNDARY: [(usize, i8); 4] = [(10, 1), (11, 1), (13, 1), (3, 1)];
const FACE3_BOUNDARY: [(usize, i8); 3] = [(6, 1), (12, 1), (13, 1)];

/// Builds the spine: 2n two-cells (n glued face-1 pairs, n glued face-3
/// pairs), compact edge classes, and their vertex classes.
pub fn build_spine(cx: &mut CoverComplex) -> SpineComplex {
    let n = cx.degree();

    // Index compact edge classes and their vertex classes.
    let compact_locals: Vec<usize> = (0..EDGE_LOCALS)
        .filter(|&l| ![0, 1, 4, 9].contains(&l))
        .collect();
    let mut edge_index: HashMap<usize, usize> = HashMap::new();
    let mut vertex_index: HashMap<usize, usize> = HashMap::new();
    let mut edges: Vec<SpineEdge> = Vec::new();

    let mut roots: Vec<(usize, usize, usize)> = Vec::new();
    for cell in 0..n {
        for &l in &compact_locals {
            let root = cx.edge_class_root(cell, l);
            roots.push((root, cell, l));
        }
    }
    roots.sort_unstable();
    for &(root, cell, l) in &roots {
        if edge_index.contains_key(&root) {
            continue;
        }
        let (t, h) = edge_local_ends(l);
        let tv = cx.vertex_class_root(cell, t);
        let hv = cx.vertex_class_root(cell, h);
        let next_v = vertex_index.len();
        let tvi = *vertex_index.entry(tv).or_insert(next_v);
        let next_v = vertex_index.len();
        let hvi = *vertex_index.entry(hv).or_insert(next_v);
        edge_index.insert(root, edges.len());
        edges.push(SpineEdge {
            label: edge_local_label(l),
            tail: tvi,
            head: hvi,
        });
    }

    let mut cells = Vec::with_capacity(2 * n);
    for cell in 0..n {
        for (walk, face, g) in [
            (&FACE1_BOUNDARY[..], 1u8, Gen::Y),
            (&FACE3_BOUNDARY[..], 3u8, Gen::W),
        ] {
            let boundary = walk
                .iter()
                .map(|&(l, s)| (edge_index[&cx.edge_class_root(cell, l)], s))
                .collect();
            let owner = cx.rep().gen(g).apply(cell);
            cells.push(SpineCell {
                boundary,
                pieces: vec![(owner, face)],
            });
        }
    }

    SpineComplex {
        vertices: vertex_index.len(),
        edges,
        cells,
    }
}

fn invert_word(w: &[(usize, i8)]) -> Vec<(usize, i8)> {
    w.iter().rev().map(|&(e, s)| (e, -s)).collect()
}

/// Deletes 1-cells of valence two, merging the two incident 2-cells (or
/// excising a spur when both slots are adjacent in one cell), until no such
/// edge remains. Vertices left isolated are dropped.
pub fn coarsen_spine(sp: &SpineComplex) -> SpineComplex {
    let mut cells: Vec<Option<SpineCell>> = sp.cells.iter().cloned().map(Some).collect();
    let n_edges = sp.edges.len();
    let mut alive_edge = vec![true; n_edges];

    'outer: loop {
        // Occurrence slots per edge.
        let mut slots: Vec<Vec<usize>> = vec![Vec::new(); n_edges];
        for (ci, c) in cells.iter().enumerate() {
            if let Some(c) = c {
                for &(e, _) in &c.boundary {
                    slots[e].push(ci);
                }
            }
        }
        for e in 0..n_edges {
            if !alive_edge[e] || slots[e].len() != 2 {
                continue;
            }
            let (c1, c2) = (slots[e][0], slots[e][1]);
            if c1 != c2 {
                // Merge: from c2 = beta e^{s2} (cyclic), substitute
                // e^{s1} into c1 = alpha e^{s1}.
                let w1 = cells[c1].take().unwrap();
                let w2 = cells[c2].take().unwrap();
                let p1 = w1.boundary.iter().position(|&(x, _)| x == e).unwrap();
                let s1 = w1.boundary[p1].1;
                let p2 = w2.boundary.iter().position(|&(x, _)| x == e).unwrap();
                let s2 = w2.boundary[p2].1;
                let mut alpha: Vec<(usize, i8)> = Vec::with_capacity(w1.boundary.len() - 1);
                alpha.extend_from_slice(&w1.boundary[p1 + 1..]);
                alpha.extend_from_slice(&w1.boundary[..p1]);
                let mut beta: Vec<(usize, i8)> = Vec::with_capacity(w2.boundary.len() - 1);
                beta.extend_from_slice(&w2.boundary[p2 + 1..]);
                beta.extend_from_slice(&w2.boundary[..p2]);
                // c1 says e^{s1} = alpha^{-1}; c2 says e^{s2} = beta^{-1}.
                let replacement = if s1 == s2 {
                    invert_word(&beta)
                } else {
                    beta
                };
                let mut boundary = alpha;
                boundary.splice(0..0, replacement);
                let mut pieces = w1.pieces;
                pieces.extend(w2.pieces);
                alive_edge[e] = false;
                cells[c1] = Some(SpineCell { boundary, pieces });
                continue 'outer;
            }
            // Both slots in one cell: excise only a cyclically adjacent
            // cancelling pair (a spur); anything else is left alone.
            let c = cells[c1].as_ref().unwrap();
            let m = c.boundary.len();
            let pos: Vec<usize> = (0..m).filter(|&k| c.boundary[k].0 == e).collect();
            let (i, j) = (pos[0], pos[1]);
            let adjacent = (j == i + 1) || (i == 0 && j == m - 1);
            if adjacent && c.boundary[i].1 == -c.boundary[j].1 {
                let mut boundary = c.boundary.clone();
                if j == i + 1 {
                    boundary.drain(i..=j);
                } else {
                    boundary.remove(j);
                    boundary.remove(i);
                }
                let pieces = c.pieces.clone();
                alive_edge[e] = false;
                cells[c1] = Some(SpineCell { boundary, pieces });
                continue 'outer;
            }
        }
        break;
    }

    // Renumber surviving edges and vertices incident to them.
    let mut edge_map: HashMap<usize, usize> = HashMap::new();
    let mut new_edges = Vec::new();
    let mut vert_map: HashMap<usize, usize> = HashMap::new();
    for (e, old) in sp.edges.iter().enumerate() {
        if !alive_edge[e] {
            continue;
        }
        let next_v = vert_map.len();
        let t = *vert_map.entry(old.tail).or_insert(next_v);
        let next_v = vert_map.len();
        let h = *vert_map.entry(old.head).or_insert(next_v);
        edge_map.insert(e, new_edges.len());
        new_edges.push(SpineEdge {
            label: old.label,
            tail: t,
            head: h,
        });
    }
    let new_cells = cells
        .into_iter()
        .flatten()
        .map(|c| SpineCell {
            boundary: c
                .boundary
                .into_iter()
                .map(|(e, s)| (edge_map[&e], s))
                .collect(),
            pieces: c.pieces,
        })
        .collect();

    SpineComplex {
        vertices: vert_map.len(),
        edges: new_edges,
        cells: new_cells,
    }
}

/// A finite presentation: `generators` symbols and relator words over them.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<(usize, i8)>>,
}

/// Presents pi_1 of the spine: a maximal tree is chosen by breadth-first
/// search from the lowest vertex with lowest-edge tie-breaking; generators
/// are the non-tree edges and each 2-cell contributes its boundary word.
pub fn fundamental_presentation(sp: &SpineComplex) -> Result<Presentation, ComplexError> {
    if sp.vertices == 0 {
        return Ok(Presentation {
            generators: 0,
            relators: sp.cells.iter().map(|_| Vec::new()).collect(),
        });
    }
    let tree = bfs_tree(sp, |edges| edges.to_vec())?;
    Ok(presentation_with_tree(sp, &tree))
}

/// Same presentation with a randomized (seeded) tree choice; homology must
/// not depend on it.
pub fn fundamental_presentation_seeded(
    sp: &SpineComplex,
    seed: u64,
) -> Result<Presentation, ComplexError> {
    // xorshift shuffle of the candidate edge order.
    let mut state = seed | 1;
    let mut rand = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let tree = bfs_tree(sp, |edges| {
        let mut v = edges.to_vec();
        for i in (1..v.len()).rev() {
            let j = (rand() % (i as u64 + 1)) as usize;
            v.swap(i, j);
        }
        v
    })?;
    Ok(presentation_with_tree(sp, &tree))
}

fn bfs_tree<F>(sp: &SpineComplex, mut order: F) -> Result<Vec<bool>, ComplexError>
where
    F: FnMut(&[usize]) -> Vec<usize>,
{
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); sp.vertices];
    for (e, edge) in sp.edges.iter().enumerate() {
        incident[edge.tail].push(e);
        incident[edge.head].push(e);
    }
    let mut in_tree = vec![false; sp.edges.len()];
    let mut visited = vec![false; sp.vertices];
    visited[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for e in order(&incident[v]) {
            let edge = &sp.edges[e];
            let other = if edge.tail == v { edge.head } else { edge.tail };
            if !visited[other] {
                visited[other] = true;
                in_tree[e] = true;
                queue.push_back(other);
            }
        }
    }
    if visited.iter().any(|&v| !v) {
        return Err(ComplexError::DisconnectedSpine);
    }
    Ok(in_tree)
}

fn presentation_with_tree(sp: &SpineComplex, in_tree: &[bool]) -> Presentation {
    let mut gen_of_edge: HashMap<usize, usize> = HashMap::new();
    for (e, &t) in in_tree.iter().enumerate() {
        if !t {
            let next = gen_of_edge.len();
            gen_of_edge.insert(e, next);
        }
    }
    let relators = sp
        .cells
        .iter()
        .map(|c| {
            c.boundary
                .iter()
                .filter_map(|&(e, s)| gen_of_edge.get(&e).map(|&g| (g, s)))
                .collect()
        })
        .collect();
    Presentation {
        generators: gen_of_edge.len(),
        relators,
    }
}

/// Abelianizes the presentation and returns the Smith-normal-form invariants.
pub fn first_homology(p: &Presentation) -> AbelianGroup {
    let mut matrix = vec![vec![0i64; p.generators]; p.relators.len()];
    for (r, word) in p.relators.iter().enumerate() {
        for &(g, s) in word {
            matrix[r][g] += s as i64;
        }
    }
    first_homology_of_matrix(&matrix, p.generators)
}

/// Report on the closed totally geodesic surface tiled by the embedded
/// triangles of the cover's cells.
#[derive(Debug, Clone)]
pub struct SurfaceReport {
    pub components: usize,
    /// Cells in each component (orbits of <sigma(y), sigma(z)>).
    pub component_cells: Vec<Vec<usize>>,
    /// Total area divided by pi, as a reduced fraction.
    pub area_over_pi: (i64, i64),
    pub euler_characteristic: i64,
    /// Genus, when the surface is connected.
    pub genus: Option<i64>,
    /// True when Prop-style separation is guaranteed, i.e. (a7, a8, a9) != (2,2,2).
    pub separating: bool,
}

/// Components are orbits of <sigma(y), sigma(z)>: each cell carries one
/// triangle-pair piece, adjacent across the quadrilateral face pairs 1/1_-
/// and 2/2_-. Area comes from Gauss-Bonnet.
pub fn geodesic_surface(sig: &PrismSignature, rep: &PermRep) -> Result<SurfaceReport, ComplexError> {
    let report = validate_rep(sig, rep);
    if !report.is_valid() {
        return Err(ComplexError::InvalidRep("invalid representation".into()));
    }
    if !crate::perm::is_manifold(sig, rep).is_manifold {
        return Err(ComplexError::NotAManifold);
    }
    let orbits = rep.orbits_of(&[Gen::Y, Gen::Z]);
    let a = sig.tuple();
    // Piece area over pi: 2 (1 - 1/a4 - 1/a5 - 1/a6).
    let (p, q, r) = (a[3] as i64, a[4] as i64, a[5] as i64);
    let num = 2 * (p * q * r - q * r - p * r - p * q);
    if num <= 0 {
        return Err(ComplexError::InvalidRep(
            "the quadrilateral-face triangle is not hyperbolic for this signature".into(),
        ));
    }
    let den = p * q * r;
    let g = num.gcd(&den);
    let (pn, pd) = (num / g, den / g);
    let n = rep.degree() as i64;
    let total_num = pn * n;
    let g2 = total_num.gcd(&pd);
    let area = (total_num / g2, pd / g2);
    // chi = -area/(2 pi); integral for a closed surface.
    debug_assert_eq!(
        total_num % (2 * pd),
        0,
        "surface Euler characteristic must be integral"
    );
    let chi = -total_num / (2 * pd);
    let genus = if orbits.len() == 1 {
        // chi = 2 - 2g
        Some((2 - chi) / 2)
    } else {
        None
    };
    Ok(SurfaceReport {
        components: orbits.len(),
        component_cells: orbits,
        area_over_pi: area,
        euler_characteristic: chi,
        genus,
        separating: (a[6], a[7], a[8]) != (2, 2, 2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::fixtures;
    use crate::perm::{evaluate_word, relator_for_edge};

    fn sigma21_complex() -> CoverComplex {
        let sig = lookup("O333_2", None).unwrap();
        build_complex(&sig, &fixtures::sigma(2, 1)).unwrap()
    }

    #[test]
    fn a3_edge_class_pairs_match_hand_computation() {
        let mut cx = sigma21_complex();
        let classes = cx.edge_classes_for_label(2);
        let pairs: Vec<Vec<usize>> = classes
            .iter()
            .map(|c| {
                c.iter()
                    .filter(|&&(_, s)| s == Side::Plain)
                    .map(|&(cell, _)| cell)
                    .collect()
            })
            .collect();
        let expected = vec![
            vec![0, 10],
            vec![1, 3],
            vec![2, 6],
            vec![4, 12],
            vec![5, 22],
            vec![7, 18],
            vec![8, 14],
            vec![9, 21],
            vec![11, 16],
            vec![13, 23],
            vec![15, 17],
            vec![19, 20],
        ];
        assert_eq!(pairs, expected);
    }

    #[test]
    fn v1_vertex_classes_match_hand_computation() {
        let mut cx = sigma21_complex();
        let classes = cx.vertex_classes_for(VertexId::V1);
        assert_eq!(
            classes,
            vec![
                vec![0, 1, 2, 3, 4, 6, 7, 10, 11, 12, 16, 18],
                vec![5, 8, 9, 13, 14, 15, 17, 19, 20, 21, 22, 23],
            ]
        );
    }

    #[test]
    fn edge_classes_agree_with_relator_cycles() {
        let sig = lookup("O333_2", None).unwrap();
        for (_, _, rep) in fixtures::all_fixtures().iter().take(2) {
            let mut cx = build_complex(&sig, rep).unwrap();
            for edge in [0usize, 1, 2, 3, 4, 5, 6, 7, 8] {
                let rel = relator_for_edge(&sig, edge);
                let word_perm = evaluate_word(rep, &rel.base);
                let mut cycle_sets: Vec<Vec<usize>> = word_perm.cycles();
                cycle_sets.iter_mut().for_each(|c| c.sort_unstable());
                cycle_sets.sort();
                let mut class_sets: Vec<Vec<usize>> = cx
                    .edge_classes_for_label(edge)
                    .iter()
                    .map(|c| {
                        let mut cells: Vec<usize> = c
                            .iter()
                            .filter(|&&(_, s)| s == Side::Plain)
                            .map(|&(cell, _)| cell)
                            .collect();
                        cells.sort_unstable();
                        cells
                    })
                    .collect();
                class_sets.sort();
                assert_eq!(class_sets, cycle_sets, "edge a{}", edge + 1);
            }
        }
    }

    #[test]
    fn degree_one_complex() {
        let sig = lookup("O333_2", None).unwrap();
        let rep = crate::perm::PermRep::trivial(1);
        let mut cx = build_complex(&sig, &rep).unwrap();
        for face in 0..4 {
            assert_eq!(cx.face_target(0, face), 0);
        }
        let sp = build_spine(&mut cx);
        assert_eq!(sp.cells.len(), 2);
    }

    #[test]
    fn spine_counts_for_sigma21() {
        let mut cx = sigma21_complex();
        let sp = build_spine(&mut cx);
        assert_eq!(sp.cells.len(), 48);
        assert_eq!(sp.edges.len(), 58);
        assert_eq!(sp.vertices, 10);
        assert_eq!(sp.euler_characteristic(), 0);

        let coarse = coarsen_spine(&sp);
        assert_eq!(coarse.counts(), (6, 22, 16));
        assert_eq!(coarse.euler_characteristic(), 0);
        let comps = coarse.cell_compositions();
        assert_eq!(comps.iter().filter(|&&c| c == (2, 0)).count(), 12);
        assert_eq!(comps.iter().filter(|&&c| c == (0, 6)).count(), 4);
    }

    #[test]
    fn hexagon_cells_match_hand_computation() {
        let mut cx = sigma21_complex();
        let coarse = coarsen_spine(&build_spine(&mut cx));
        let mut hexes: Vec<Vec<usize>> = coarse
            .cells
            .iter()
            .filter(|c| c.pieces.len() == 6)
            .map(|c| {
                let mut cells: Vec<usize> = c.pieces.iter().map(|p| p.0).collect();
                cells.sort_unstable();
                cells
            })
            .collect();
        hexes.sort();
        let mut expected = vec![
            vec![0, 1, 2, 9, 5, 8],
            vec![3, 15, 13, 16, 14, 19],
            vec![4, 18, 17, 11, 10, 20],
            vec![6, 12, 22, 7, 21, 23],
        ];
        expected.iter_mut().for_each(|c| c.sort_unstable());
        expected.sort();
        assert_eq!(hexes, expected);
    }

    #[test]
    fn coarse_spine_presents_seventeen_generators() {
        let mut cx = sigma21_complex();
        let coarse = coarsen_spine(&build_spine(&mut cx));
        let p = fundamental_presentation(&coarse).unwrap();
        assert_eq!(p.generators, 17);
        assert_eq!(p.relators.len(), 16);
    }

    #[test]
    fn homology_z_for_fixtures_and_tree_independence() {
        for (name, i, rep) in fixtures::all_fixtures() {
            let sig = lookup(&format!("O333_{i}"), None).unwrap();
            let mut cx = build_complex(&sig, &rep).unwrap();
            let sp = build_spine(&mut cx);
            let h = first_homology(&fundamental_presentation(&sp).unwrap());
            assert!(h.is_infinite_cyclic(), "{name}: H1 = {h}");
            let coarse = coarsen_spine(&sp);
            let hc = first_homology(&fundamental_presentation(&coarse).unwrap());
            assert!(hc.is_infinite_cyclic(), "{name} coarse: H1 = {hc}");
            for seed in [7u64, 99, 1234] {
                let hs = first_homology(&fundamental_presentation_seeded(&coarse, seed).unwrap());
                assert_eq!(hs, hc, "{name} seed {seed}");
            }
        }
    }

    #[test]
    fn surface_for_sigma21() {
        let sig = lookup("O333_2", None).unwrap();
        let rep = fixtures::sigma(2, 1);
        let s = geodesic_surface(&sig, &rep).unwrap();
        assert_eq!(s.components, 1);
        assert_eq!(s.area_over_pi, (4, 1));
        assert_eq!(s.genus, Some(2));
        assert_eq!(s.euler_characteristic, -2);
        assert!(s.separating);
    }

    #[test]
    fn surface_rejects_orbifold_covers() {
        let sig = lookup("O333_2", None).unwrap();
        let rep = crate::perm::PermRep::trivial(1);
        assert!(matches!(
            geodesic_surface(&sig, &rep),
            Err(ComplexError::NotAManifold)
        ));
    }
}
