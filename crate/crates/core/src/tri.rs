//! Tetrahedral subdivision of covers and plain-text gluing tables.
//!
//! Each doubled-prism cell splits into six tetrahedra, numbered 6k..6k+5 with
//! tet a+3 mirroring tet a. Within a block the six internal gluings are fixed;
//! boundary triangles inherit the cover's face pairings. In the numbering
//! used here (tet0 = (v3,v5,v4,v1), tet1 = (v1,v5,v4,vinf), tet2 =
//! (v1,v2,v4,vinf), tets 3..5 their mirrors) every boundary gluing has the
//! identity vertex correspondence, and the ideal vertex is vertex 3 of tets
//! 1, 2, 4, 5 of each block.

use std::fmt::Write as _;

use thiserror::Error;

use crate::catalog::PrismSignature;
use crate::complex::UnionFind;
use crate::perm::{cusp_orbits, validate_rep, Gen, PermRep};

#[derive(Debug, Error)]
pub enum TriError {
    #[error("representation is not valid for this signature")]
    InvalidRep,
    #[error("gluing table parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Faces of a tetrahedron by their vertex triples, in the fixed order
/// 012, 013, 023, 123.
pub const FACES: [[u8; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

pub type Perm4 = [u8; 4];

const ID4: Perm4 = [0, 1, 2, 3];

fn invert4(p: Perm4) -> Perm4 {
    let mut q = [0u8; 4];
    for (i, &v) in p.iter().enumerate() {
        q[v as usize] = i as u8;
    }
    q
}

/// A face-gluing target: the partner tetrahedron and the vertex
/// correspondence taking this tetrahedron's vertices to its partner's.
pub type Gluing = (usize, Perm4);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangulationData {
    pub tet_count: usize,
    /// `gluings[t][f]` glues face f of tet t.
    pub gluings: Vec<[Gluing; 4]>,
    pub ideal_vertex_classes: usize,
    pub finite_vertex_classes: usize,
    /// Cusp count of the cover the triangulation came from.
    pub cusps: usize,
}

struct Pending {
    gluings: Vec<[Option<Gluing>; 4]>,
}

impl Pending {
    fn new(n: usize) -> Self {
        Pending {
            gluings: vec![[None; 4]; n],
        }
    }

    fn glue(&mut self, a: (usize, usize), b: (usize, usize), perm: Perm4) {
        debug_assert!(self.gluings[a.0][a.1].is_none(), "face glued twice");
        debug_assert!(self.gluings[b.0][b.1].is_none(), "face glued twice");
        self.gluings[a.0][a.1] = Some((b.0, perm));
        self.gluings[b.0][b.1] = Some((a.0, invert4(perm)));
    }
}

// Figure-style internal pairings within one block of six tetrahedra:
// (tet a, face) <-> (tet b, face) with vertex correspondence.
const M: Perm4 = [3, 1, 2, 0]; // the 123 -> 120 correspondence and its inverse

const INTERNAL: [((usize, usize), (usize, usize), Perm4); 6] = [
    ((0, 1), (3, 1), ID4), // 6k 013 -> 6k+3 (013)
    ((0, 3), (1, 0), M),   // 6k 123 -> 6k+1 (120)
    ((1, 1), (4, 1), ID4), // 6k+1 013 -> 6k+4 (013)
    ((1, 2), (2, 2), ID4), // 6k+1 023 -> 6k+2 (023)
    ((3, 3), (4, 0), M),   // 6k+3 123 -> 6k+4 (120)
    ((4, 2), (5, 2), ID4), // 6k+4 023 -> 6k+5 (023)
];

// Boundary triangles: (source tet offset, face) glued across generator g to
// (target tet offset, face), identity vertex correspondence.
const EXTERNAL: [(Gen, (usize, usize), (usize, usize)); 6] = [
    (Gen::X, (5, 1), (2, 1)), // face 0 -> face 0_-
    (Gen::Y, (5, 0), (2, 0)), // face 1 -> face 1_-
    (Gen::Y, (3, 2), (0, 2)),
    (Gen::Z, (5, 3), (2, 3)), // face 2 -> face 2_-
    (Gen::Z, (4, 3), (1, 3)),
    (Gen::W, (3, 0), (0, 0)), // face 3 -> face 3_-
];

// The ideal vertex is vertex 3 of these tets in each block.
const IDEAL: [(usize, u8); 4] = [(1, 3), (2, 3), (4, 3), (5, 3)];

/// Subdivides each cell of the cover into six tetrahedra and glues them.
pub fn triangulate(sig: &PrismSignature, rep: &PermRep) -> Result<TriangulationData, TriError> {
    if !validate_rep(sig, rep).is_valid() {
        return Err(TriError::InvalidRep);
    }
    let n = rep.degree();
    let mut pending = Pending::new(6 * n);
    for k in 0..n {
        for &((t1, f1), (t2, f2), perm) in &INTERNAL {
            pending.glue((6 * k + t1, f1), (6 * k + t2, f2), perm);
        }
        for &(g, (t1, f1), (t2, f2)) in &EXTERNAL {
            let j = rep.gen(g).apply(k);
            pending.glue((6 * k + t1, f1), (6 * j + t2, f2), ID4);
        }
    }
    let gluings: Vec<[Gluing; 4]> = pending
        .gluings
        .into_iter()
        .map(|faces| faces.map(|g| g.expect("all faces glued")))
        .collect();
    let mut t = TriangulationData {
        tet_count: 6 * n,
        gluings,
        ideal_vertex_classes: 0,
        finite_vertex_classes: 0,
        cusps: cusp_orbits(rep).len(),
    };
    let (ideal, finite) = vertex_class_counts(&t);
    t.ideal_vertex_classes = ideal;
    t.finite_vertex_classes = finite;
    Ok(t)
}

/// Counts (ideal, finite) vertex classes under the gluings, with ideal
/// instances read off the block convention.
pub fn vertex_class_counts(t: &TriangulationData) -> (usize, usize) {
    let mut uf = UnionFind::new(4 * t.tet_count);
    for (tet, faces) in t.gluings.iter().enumerate() {
        for (f, &(other, perm)) in faces.iter().enumerate() {
            for &v in &FACES[f] {
                uf.union(tet * 4 + v as usize, other * 4 + perm[v as usize] as usize);
            }
        }
    }
    let mut ideal_instance = vec![false; 4 * t.tet_count];
    for k in 0..t.tet_count / 6 {
        for &(off, v) in &IDEAL {
            ideal_instance[(6 * k + off) * 4 + v as usize] = true;
        }
    }
    let classes = uf.partition();
    let ideal = classes
        .iter()
        .filter(|c| c.iter().any(|&i| ideal_instance[i]))
        .count();
    (ideal, classes.len() - ideal)
}

#[derive(Debug, Clone)]
pub struct TriValidation {
    pub involution_ok: bool,
    pub fully_glued: bool,
    pub ideal_matches_cusps: bool,
    pub violations: Vec<String>,
}

impl TriValidation {
    pub fn is_valid(&self) -> bool {
        self.involution_ok && self.fully_glued && self.ideal_matches_cusps
    }
}

/// Checks the gluing involution (fixed-point-free, inverse correspondences)
/// and that the ideal vertex class count equals the cover's cusp count.
pub fn validate_triangulation(t: &TriangulationData) -> TriValidation {
    let mut violations = Vec::new();
    let mut involution_ok = true;
    for (tet, faces) in t.gluings.iter().enumerate() {
        for (f, &(other, perm)) in faces.iter().enumerate() {
            if other >= t.tet_count {
                involution_ok = false;
                violations.push(format!("tet {tet} face {f}: target {other} out of range"));
                continue;
            }
            // The image face under perm, as a face index.
            let mut img: Vec<u8> = FACES[f].iter().map(|&v| perm[v as usize]).collect();
            img.sort_unstable();
            let Some(back_f) = FACES.iter().position(|ff| ff[..] == img[..]) else {
                involution_ok = false;
                violations.push(format!("tet {tet} face {f}: image is not a face"));
                continue;
            };
            if other == tet && back_f == f {
                involution_ok = false;
                violations.push(format!("tet {tet} face {f}: glued to itself"));
                continue;
            }
            let (back, back_perm) = t.gluings[other][back_f];
            if back != tet || back_perm != invert4(perm) {
                involution_ok = false;
                violations.push(format!("tet {tet} face {f}: partner does not glue back"));
            }
        }
    }
    let (ideal, _) = vertex_class_counts(t);
    let ideal_matches_cusps = ideal == t.cusps;
    if !ideal_matches_cusps {
        violations.push(format!(
            "ideal vertex classes {ideal} != cusp count {}",
            t.cusps
        ));
    }
    TriValidation {
        involution_ok,
        fully_glued: true,
        ideal_matches_cusps,
        violations,
    }
}

/// Emits the plain-text gluing table: `ntet N`, then one line per
/// tetrahedron listing the face 012, 013, 023, 123 targets.
pub fn export_gluing_table(t: &TriangulationData) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ntet {}", t.tet_count);
    for (tet, faces) in t.gluings.iter().enumerate() {
        let _ = write!(out, "tet {tet} :");
        for &(other, perm) in faces {
            let _ = write!(
                out,
                " ({},{}{}{}{})",
                other, perm[0], perm[1], perm[2], perm[3]
            );
        }
        out.push('\n');
    }
    out
}

/// Parses the gluing-table format back; ideal classes are recounted with the
/// block convention and the cusp count is taken from them.
pub fn parse_gluing_table(text: &str) -> Result<TriangulationData, TriError> {
    let mut lines = text.lines().enumerate();
    let (_, first) = lines.next().ok_or(TriError::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let n: usize = first
        .strip_prefix("ntet ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or(TriError::Parse {
            line: 1,
            msg: "expected `ntet N`".into(),
        })?;
    let mut gluings: Vec<[Gluing; 4]> = Vec::with_capacity(n);
    for (lineno, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| TriError::Parse {
            line: lineno + 1,
            msg: msg.into(),
        };
        let (head, rest) = line.split_once(':').ok_or_else(|| err("missing `:`"))?;
        let tet: usize = head
            .trim()
            .strip_prefix("tet ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| err("expected `tet K :`"))?;
        if tet != gluings.len() {
            return Err(err("tetrahedra out of order"));
        }
        let mut faces: Vec<Gluing> = Vec::with_capacity(4);
        for tok in rest.split_whitespace() {
            let inner = tok
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| err("expected `(t,perm)`"))?;
            let (t_s, p_s) = inner.split_once(',').ok_or_else(|| err("expected `,`"))?;
            let other: usize = t_s.parse().map_err(|_| err("bad tet number"))?;
            let digits: Vec<u8> = p_s
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as u8))
                .collect::<Option<_>>()
                .ok_or_else(|| err("bad permutation digits"))?;
            let perm: Perm4 = digits.try_into().map_err(|_| err("need four digits"))?;
            faces.push((other, perm));
        }
        let faces: [Gluing; 4] = faces.try_into().map_err(|_| err("need four faces"))?;
        gluings.push(faces);
    }
    if gluings.len() != n {
        return Err(TriError::Parse {
            line: 0,
            msg: format!("expected {n} tetrahedra, found {}", gluings.len()),
        });
    }
    let mut t = TriangulationData {
        tet_count: n,
        gluings,
        ideal_vertex_classes: 0,
        finite_vertex_classes: 0,
        cusps: 0,
    };
    let (ideal, finite) = vertex_class_counts(&t);
    t.ideal_vertex_classes = ideal;
    t.finite_vertex_classes = finite;
    t.cusps = ideal;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::fixtures;

    #[test]
    fn degree_one_has_six_tetrahedra() {
        let sig = lookup("O333_2", None).unwrap();
        let t = triangulate(&sig, &PermRep::trivial(1)).unwrap();
        assert_eq!(t.tet_count, 6);
        assert!(validate_triangulation(&t).is_valid());
        assert_eq!(t.ideal_vertex_classes, 1);
    }

    #[test]
    fn internal_gluings_follow_the_block_table() {
        let sig = lookup("O333_2", None).unwrap();
        let t = triangulate(&sig, &fixtures::sigma(2, 1)).unwrap();
        for k in 0..24 {
            // 6k+1 face 012 -> 6k (312)
            assert_eq!(t.gluings[6 * k + 1][0], (6 * k, [3, 1, 2, 0]));
            // 6k face 013 -> 6k+3 (013)
            assert_eq!(t.gluings[6 * k][1], (6 * k + 3, ID4));
            // 6k face 123 -> 6k+1 (120)
            assert_eq!(t.gluings[6 * k][3], (6 * k + 1, [3, 1, 2, 0]));
            // 6k+2 023 -> 6k+1 (023)
            assert_eq!(t.gluings[6 * k + 2][2], (6 * k + 1, ID4));
            // 6k+3 013 -> 6k (013); 6k+3 123 -> 6k+4 (120)
            assert_eq!(t.gluings[6 * k + 3][1], (6 * k, ID4));
            assert_eq!(t.gluings[6 * k + 3][3], (6 * k + 4, [3, 1, 2, 0]));
            // 6k+4: 012 -> 6k+3 (312), 013 -> 6k+1 (013), 023 -> 6k+5 (023)
            assert_eq!(t.gluings[6 * k + 4][0], (6 * k + 3, [3, 1, 2, 0]));
            assert_eq!(t.gluings[6 * k + 4][1], (6 * k + 1, ID4));
            assert_eq!(t.gluings[6 * k + 4][2], (6 * k + 5, ID4));
            // 6k+5 023 -> 6k+4 (023)
            assert_eq!(t.gluings[6 * k + 5][2], (6 * k + 4, ID4));
        }
    }

    #[test]
    fn fixtures_triangulate_to_one_ideal_class() {
        for (name, i, rep) in fixtures::all_fixtures() {
            let sig = lookup(&format!("O333_{i}"), None).unwrap();
            let t = triangulate(&sig, &rep).unwrap();
            assert_eq!(t.tet_count, 144, "{name}");
            let v = validate_triangulation(&t);
            assert!(v.is_valid(), "{name}: {:?}", v.violations);
            assert_eq!(t.ideal_vertex_classes, 1, "{name}");
        }
    }

    #[test]
    fn export_parse_round_trip() {
        let sig = lookup("O333_3", None).unwrap();
        let t = triangulate(&sig, &fixtures::sigma(3, 2)).unwrap();
        let text = export_gluing_table(&t);
        let back = parse_gluing_table(&text).unwrap();
        assert_eq!(back.tet_count, t.tet_count);
        assert_eq!(back.gluings, t.gluings);
        assert_eq!(back.ideal_vertex_classes, t.ideal_vertex_classes);
    }

    #[test]
    fn double_gluing_is_reported() {
        let sig = lookup("O333_2", None).unwrap();
        let mut t = triangulate(&sig, &PermRep::trivial(1)).unwrap();
        let (other, perm) = t.gluings[0][0];
        t.gluings[1][0] = (other, perm);
        let v = validate_triangulation(&t);
        assert!(!v.involution_ok);
        assert!(!v.violations.is_empty());
    }
}
