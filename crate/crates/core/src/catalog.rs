//! Prism signatures, the fixed combinatorial template of the doubled prism,
//! and the published catalogs of one-cusped prism orbifolds.
//!
//! A signature is a nine-tuple (a1, .., a9) assigning dihedral angle pi/ai to
//! the prism edge labeled ai. The cusp triple {a1, a2, a5} must be a rigid
//! Euclidean turnover and every finite vertex must be spherical.

use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("entries must all be at least 2, got {0:?}")]
    EntryTooSmall([u32; 9]),
    #[error("cusp triple {{a1,a2,a5}} = {0:?} is not one of {{2,3,6}}, {{3,3,3}}, {{2,4,4}}")]
    CuspTypeInvalid([u32; 3]),
    #[error("vertex {vertex} with edge labels {labels:?} is not spherical (angle sum too small)")]
    VertexNotSpherical { vertex: VertexId, labels: [u32; 3] },
    #[error("family {name} requires n >= {min}, got {n}")]
    FamilyParameterOutOfRange { name: String, min: u32, n: u32 },
    #[error("family {0} needs an instantiation parameter n")]
    FamilyParameterMissing(String),
    #[error("{0} is not a fixed catalog row; it takes no parameter")]
    NotAFamily(String),
    #[error("unknown catalog name {0:?}")]
    UnknownName(String),
    #[error("signature line parse error: {0}")]
    ParseLine(String),
}

/// Template vertices. `VInf` is the single ideal vertex of the prism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexId {
    VInf,
    V1,
    V2,
    V3,
    V4,
    V5,
}

pub const VERTICES: [VertexId; 6] = [
    VertexId::VInf,
    VertexId::V1,
    VertexId::V2,
    VertexId::V3,
    VertexId::V4,
    VertexId::V5,
];

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::VInf => write!(f, "v_inf"),
            VertexId::V1 => write!(f, "v1"),
            VertexId::V2 => write!(f, "v2"),
            VertexId::V3 => write!(f, "v3"),
            VertexId::V4 => write!(f, "v4"),
            VertexId::V5 => write!(f, "v5"),
        }
    }
}

/// The incidence data of the prism: which edges meet at each vertex, which
/// edges bound each face, and which face each generator pairs.
///
/// Edges are tuple indices 0..9 (edge a1 is 0). Faces: D is the doubling
/// quadrilateral, faces 0..4 are numbered as the face-pairing targets of
/// x, y, z, w.
#[derive(Debug)]
pub struct PrismTemplate {
    pub vertex_edges: [(VertexId, [usize; 3]); 6],
    pub face_d: [usize; 4],
    pub faces: [&'static [usize]; 4],
    /// For each generator x, y, z, w: its axis edge (on the doubling face).
    pub pairing_axes: [usize; 4],
}

const TEMPLATE: PrismTemplate = PrismTemplate {
    vertex_edges: [
        (VertexId::VInf, [0, 1, 4]),
        (VertexId::V1, [0, 2, 3]),
        (VertexId::V2, [1, 2, 5]),
        (VertexId::V3, [3, 6, 8]),
        (VertexId::V4, [5, 7, 8]),
        (VertexId::V5, [4, 6, 7]),
    ],
    face_d: [0, 3, 4, 6],
    faces: [
        &[0, 1, 2],    // face 0: non-compact triangle
        &[2, 3, 5, 8], // face 1: compact quadrilateral
        &[1, 4, 5, 7], // face 2: non-compact quadrilateral
        &[6, 7, 8],    // face 3: compact triangle
    ],
    pairing_axes: [0, 3, 4, 6],
};

/// The prism incidence template, self-checked on first use.
pub fn template() -> &'static PrismTemplate {
    static CHECKED: OnceLock<()> = OnceLock::new();
    CHECKED.get_or_init(|| {
        let t = &TEMPLATE;
        // Each vertex is trivalent with distinct edges.
        for (_, e) in &t.vertex_edges {
            assert!(e[0] != e[1] && e[1] != e[2] && e[0] != e[2]);
        }
        // Each edge lies on exactly two of the faces 0..4 plus possibly D.
        for edge in 0..9 {
            let on = t.faces.iter().filter(|f| f.contains(&edge)).count();
            let on_d = t.face_d.contains(&edge) as usize;
            assert_eq!(on + on_d, 2, "edge a{} face count", edge + 1);
        }
        // Relator/face consistency with the two-generator relators:
        // a3 on faces 0,1; a2 on 0,2; a6 on 1,2; a9 on 1,3; a8 on 2,3.
        let shared = |f: usize, g: usize, e: usize| {
            t.faces[f].contains(&e) && t.faces[g].contains(&e)
        };
        assert!(shared(0, 1, 2));
        assert!(shared(0, 2, 1));
        assert!(shared(1, 2, 5));
        assert!(shared(1, 3, 8));
        assert!(shared(2, 3, 7));
        // Each pairing axis lies on D and on its generator's face.
        for (g, &axis) in t.pairing_axes.iter().enumerate() {
            assert!(t.face_d.contains(&axis));
            assert!(t.faces[g].contains(&axis));
        }
    });
    &TEMPLATE
}

/// Returns the two endpoints of a template edge.
pub fn edge_endpoints(edge: usize) -> (VertexId, VertexId) {
    let t = template();
    let mut ends = t
        .vertex_edges
        .iter()
        .filter(|(_, es)| es.contains(&edge))
        .map(|(v, _)| *v);
    let a = ends.next().expect("edge has two endpoints");
    let b = ends.next().expect("edge has two endpoints");
    (a, b)
}

/// A validated nine-tuple with an optional catalog name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrismSignature {
    a: [u32; 9],
    name: Option<String>,
}

impl PrismSignature {
    pub fn tuple(&self) -> [u32; 9] {
        self.a
    }

    pub fn entry(&self, edge: usize) -> u32 {
        self.a[edge]
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn cusp_triple(&self) -> [u32; 3] {
        [self.a[0], self.a[1], self.a[4]]
    }

    /// The sorted cusp triple, one of [2,3,6], [3,3,3], [2,4,4].
    pub fn cusp_type(&self) -> [u32; 3] {
        let mut c = self.cusp_triple();
        c.sort_unstable();
        c
    }

    /// One text line: `name a1 .. a9` (name omitted when absent).
    pub fn to_line(&self) -> String {
        let nums = self
            .a
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        match &self.name {
            Some(n) => format!("{n} {nums}"),
            None => nums,
        }
    }

    pub fn parse_line(line: &str) -> Result<PrismSignature, CatalogError> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let (name, nums) = match toks.len() {
            9 => (None, &toks[..]),
            10 => (Some(toks[0].to_string()), &toks[1..]),
            n => {
                return Err(CatalogError::ParseLine(format!(
                    "expected 9 or 10 fields, got {n}"
                )))
            }
        };
        let mut a = [0u32; 9];
        for (i, t) in nums.iter().enumerate() {
            a[i] = t
                .parse()
                .map_err(|e| CatalogError::ParseLine(format!("field {t:?}: {e}")))?;
        }
        make_signature(a, name)
    }
}

impl fmt::Display for PrismSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_line())
    }
}

/// Validates the cusp triple and the spherical-vertex condition and returns
/// a signature.
pub fn make_signature(a: [u32; 9], name: Option<String>) -> Result<PrismSignature, CatalogError> {
    if a.iter().any(|&v| v < 2) {
        return Err(CatalogError::EntryTooSmall(a));
    }
    let mut cusp = [a[0], a[1], a[4]];
    cusp.sort_unstable();
    if ![[2, 3, 6], [3, 3, 3], [2, 4, 4]].contains(&cusp) {
        return Err(CatalogError::CuspTypeInvalid([a[0], a[1], a[4]]));
    }
    for &(v, edges) in &template().vertex_edges {
        if v == VertexId::VInf {
            continue;
        }
        let labels = edges.map(|e| a[e]);
        // 1/p + 1/q + 1/r > 1, checked in integers: qr + pr + pq > pqr.
        let [p, q, r] = labels.map(u128::from);
        if q * r + p * r + p * q <= p * q * r {
            return Err(CatalogError::VertexNotSpherical { vertex: v, labels });
        }
    }
    Ok(PrismSignature { a, name })
}

/// Order of the orientable vertex group at a finite template vertex, and the
/// defect n_v = 1/p + 1/q + 1/r - 1 as a reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexGroupData {
    pub vertex: VertexId,
    pub labels: [u32; 3],
    /// n_v as (numerator, denominator), reduced filtered positive.
    pub nv: (u64, u64),
    /// |G~_v| = 2 / n_v.
    pub order: u64,
}

/// Vertex-group data for the five finite vertices plus the lcm of the orders
/// (the minimum manifold-cover degree bound).
pub fn vertex_data(sig: &PrismSignature) -> (Vec<VertexGroupData>, u64) {
    let mut out = Vec::with_capacity(5);
    let mut lcm = 1u64;
    for &(v, edges) in &template().vertex_edges {
        if v == VertexId::VInf {
            continue;
        }
        let labels = edges.map(|e| sig.entry(e));
        let [p, q, r] = labels.map(u64::from);
        let num = q * r + p * r + p * q - p * q * r;
        let den = p * q * r;
        let g = num.gcd(&den);
        let order_num = 2 * den;
        let order_den = num;
        debug_assert_eq!(order_num % order_den, 0, "vertex group order is integral");
        let order = order_num / order_den;
        lcm = lcm.lcm(&order);
        out.push(VertexGroupData {
            vertex: v,
            labels,
            nv: (num / g, den / g),
            order,
        });
    }
    (out, lcm)
}

/// A catalog row: either a fixed tuple or an n-parameterized family.
#[derive(Debug, Clone)]
pub enum CatalogEntry {
    Fixed(PrismSignature),
    Family(PrismFamily),
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        match self {
            CatalogEntry::Fixed(s) => s.name().expect("catalog rows are named"),
            CatalogEntry::Family(f) => &f.name,
        }
    }
}

/// An infinite catalog family, instantiated by the parameter n (n >= 3).
#[derive(Debug, Clone)]
pub struct PrismFamily {
    pub name: String,
    base: [u32; 9],
    /// Tuple position that carries n.
    slot: usize,
}

pub const FAMILY_MIN_N: u32 = 3;

impl PrismFamily {
    pub fn instantiate(&self, n: u32) -> Result<PrismSignature, CatalogError> {
        if n < FAMILY_MIN_N {
            return Err(CatalogError::FamilyParameterOutOfRange {
                name: self.name.clone(),
                min: FAMILY_MIN_N,
                n,
            });
        }
        let mut a = self.base;
        a[self.slot] = n;
        let name = self.name.replace(",n", &format!(",{n}"));
        make_signature(a, Some(name))
    }
}

const T236_FIXED: [(u32, [u32; 9]); 32] = [
    (1, [2, 3, 3, 4, 6, 2, 2, 2, 2]),
    (2, [2, 3, 3, 4, 6, 2, 2, 2, 3]),
    (3, [2, 3, 3, 5, 6, 2, 2, 2, 2]),
    (4, [2, 3, 3, 5, 6, 2, 2, 2, 3]),
    (9, [2, 3, 2, 4, 6, 2, 2, 2, 2]),
    (10, [2, 3, 2, 4, 6, 2, 2, 2, 3]),
    (11, [2, 3, 2, 5, 6, 2, 2, 2, 2]),
    (12, [2, 3, 2, 5, 6, 2, 2, 2, 3]),
    (14, [2, 3, 2, 3, 6, 3, 2, 2, 2]),
    (15, [2, 3, 2, 3, 6, 3, 2, 2, 3]),
    (16, [2, 3, 2, 3, 6, 3, 2, 2, 4]),
    (17, [2, 3, 2, 3, 6, 3, 2, 2, 5]),
    (18, [2, 3, 2, 4, 6, 3, 2, 2, 2]),
    (19, [2, 3, 2, 4, 6, 3, 2, 2, 3]),
    (20, [2, 3, 2, 5, 6, 3, 2, 2, 2]),
    (21, [2, 3, 2, 5, 6, 3, 2, 2, 3]),
    (23, [2, 3, 2, 2, 6, 4, 2, 2, 2]),
    (24, [2, 3, 2, 2, 6, 4, 2, 2, 3]),
    (25, [2, 3, 2, 3, 6, 4, 2, 2, 2]),
    (26, [2, 3, 2, 3, 6, 4, 2, 2, 3]),
    (27, [2, 3, 2, 4, 6, 4, 2, 2, 2]),
    (28, [2, 3, 2, 4, 6, 4, 2, 2, 3]),
    (29, [2, 3, 2, 5, 6, 4, 2, 2, 2]),
    (30, [2, 3, 2, 5, 6, 4, 2, 2, 3]),
    (32, [2, 3, 2, 2, 6, 5, 2, 2, 2]),
    (33, [2, 3, 2, 2, 6, 5, 2, 2, 3]),
    (34, [2, 3, 2, 3, 6, 5, 2, 2, 2]),
    (35, [2, 3, 2, 3, 6, 5, 2, 2, 3]),
    (36, [2, 3, 2, 4, 6, 5, 2, 2, 2]),
    (37, [2, 3, 2, 4, 6, 5, 2, 2, 3]),
    (38, [2, 3, 2, 5, 6, 5, 2, 2, 2]),
    (39, [2, 3, 2, 5, 6, 5, 2, 2, 3]),
];

/// (family number, base tuple with n-slot holding 0, slot index)
const T236_FAMILIES: [(u32, [u32; 9], usize); 8] = [
    (5, [2, 6, 2, 0, 3, 2, 2, 2, 2], 3),
    (6, [2, 6, 2, 0, 3, 2, 2, 3, 2], 3),
    (7, [2, 6, 2, 0, 3, 2, 2, 4, 2], 3),
    (8, [2, 6, 2, 0, 3, 2, 2, 5, 2], 3),
    (13, [2, 3, 2, 0, 6, 2, 2, 2, 2], 3),
    (22, [2, 3, 2, 0, 6, 3, 2, 2, 2], 3),
    (31, [2, 3, 2, 0, 6, 4, 2, 2, 2], 3),
    (40, [2, 3, 2, 0, 6, 5, 2, 2, 2], 3),
];

const T333: [[u32; 9]; 22] = [
    [3, 3, 2, 3, 3, 4, 2, 2, 2],
    [3, 3, 2, 3, 3, 4, 2, 2, 3],
    [3, 3, 2, 3, 3, 4, 2, 3, 2],
    [3, 3, 2, 3, 3, 4, 3, 2, 2],
    [3, 3, 2, 3, 3, 4, 4, 2, 2],
    [3, 3, 2, 3, 3, 4, 5, 2, 2],
    [3, 3, 2, 3, 3, 5, 2, 2, 2],
    [3, 3, 2, 3, 3, 5, 2, 2, 3],
    [3, 3, 2, 3, 3, 5, 2, 3, 2],
    [3, 3, 2, 3, 3, 5, 3, 2, 2],
    [3, 3, 2, 3, 3, 5, 4, 2, 2],
    [3, 3, 2, 3, 3, 5, 5, 2, 2],
    [3, 3, 2, 4, 3, 4, 2, 2, 2],
    [3, 3, 2, 4, 3, 4, 2, 2, 3],
    [3, 3, 2, 4, 3, 4, 2, 3, 2],
    [3, 3, 2, 4, 3, 5, 2, 2, 2],
    [3, 3, 2, 4, 3, 5, 2, 2, 3],
    [3, 3, 2, 4, 3, 5, 2, 3, 2],
    [3, 3, 2, 4, 3, 5, 3, 2, 2],
    [3, 3, 2, 5, 3, 5, 2, 2, 2],
    [3, 3, 2, 5, 3, 5, 2, 2, 3],
    [3, 3, 2, 5, 3, 5, 2, 3, 2],
];

/// All 40 named (2,3,6) rows and all 22 (3,3,3) rows, in table order.
/// Families appear as `CatalogEntry::Family` and instantiate lazily.
pub fn builtin_tables() -> Vec<CatalogEntry> {
    let mut rows: Vec<(u32, CatalogEntry)> = Vec::with_capacity(62);
    for &(k, a) in &T236_FIXED {
        let sig = make_signature(a, Some(format!("O236_{k}"))).expect("catalog row is valid");
        rows.push((k, CatalogEntry::Fixed(sig)));
    }
    for &(k, base, slot) in &T236_FAMILIES {
        rows.push((
            k,
            CatalogEntry::Family(PrismFamily {
                name: format!("O236_{k},n"),
                base,
                slot,
            }),
        ));
    }
    rows.sort_by_key(|(k, _)| *k);
    let mut out: Vec<CatalogEntry> = rows.into_iter().map(|(_, e)| e).collect();
    for (k, a) in T333.iter().enumerate() {
        let sig =
            make_signature(*a, Some(format!("O333_{}", k + 1))).expect("catalog row is valid");
        out.push(CatalogEntry::Fixed(sig));
    }
    out
}

/// Looks up a catalog row by name. Family rows accept the parameter either
/// via `n` (`lookup("O236_5,n", Some(12))`) or inline (`lookup("O236_5,12", None)`).
pub fn lookup(name: &str, n: Option<u32>) -> Result<PrismSignature, CatalogError> {
    for entry in builtin_tables() {
        match entry {
            CatalogEntry::Fixed(sig) => {
                if sig.name() == Some(name) {
                    return match n {
                        None => Ok(sig),
                        Some(_) => Err(CatalogError::NotAFamily(name.to_string())),
                    };
                }
            }
            CatalogEntry::Family(fam) => {
                if fam.name == name {
                    let n = n.ok_or_else(|| CatalogError::FamilyParameterMissing(name.into()))?;
                    return fam.instantiate(n);
                }
                // Inline form "O236_5,12".
                let stem = fam.name.trim_end_matches(",n");
                if let Some(rest) = name.strip_prefix(stem) {
                    if let Some(param) = rest.strip_prefix(',') {
                        if param != "n" {
                            if let Ok(k) = param.parse::<u32>() {
                                if n.is_some() {
                                    return Err(CatalogError::NotAFamily(name.to_string()));
                                }
                                return fam.instantiate(k);
                            }
                        }
                    }
                }
            }
        }
    }
    Err(CatalogError::UnknownName(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_self_check_passes() {
        template();
    }

    #[test]
    fn named_rows_validate_and_count() {
        let rows = builtin_tables();
        let fixed_236 = rows
            .iter()
            .filter(|e| matches!(e, CatalogEntry::Fixed(s) if s.cusp_type() == [2, 3, 6]))
            .count();
        let fam_236 = rows
            .iter()
            .filter(|e| matches!(e, CatalogEntry::Family(_)))
            .count();
        let fixed_333 = rows
            .iter()
            .filter(|e| matches!(e, CatalogEntry::Fixed(s) if s.cusp_type() == [3, 3, 3]))
            .count();
        assert_eq!(fixed_236 + fam_236, 40);
        assert_eq!(fam_236, 8);
        assert_eq!(fixed_333, 22);
    }

    #[test]
    fn lookup_examples() {
        let s = lookup("O333_3", None).unwrap();
        assert_eq!(s.tuple(), [3, 3, 2, 3, 3, 4, 2, 3, 2]);
        let f = lookup("O236_5,n", Some(12)).unwrap();
        assert_eq!(f.tuple(), [2, 6, 2, 12, 3, 2, 2, 2, 2]);
        assert_eq!(f.name(), Some("O236_5,12"));
        let inline = lookup("O236_5,12", None).unwrap();
        assert_eq!(inline, f);
        assert!(matches!(
            lookup("O236_5,n", Some(2)),
            Err(CatalogError::FamilyParameterOutOfRange { .. })
        ));
        assert!(matches!(
            lookup("nonsense", None),
            Err(CatalogError::UnknownName(_))
        ));
    }

    #[test]
    fn make_signature_rejections() {
        assert!(matches!(
            make_signature([2, 2, 2, 2, 2, 2, 2, 2, 2], None),
            Err(CatalogError::CuspTypeInvalid(_))
        ));
        // 1/3 + 1/7 + 1/7 < 1 at v3 (edges a4, a7, a9).
        match make_signature([3, 3, 2, 3, 3, 4, 7, 7, 7], None) {
            Err(CatalogError::VertexNotSpherical { vertex, .. }) => {
                assert_eq!(vertex, VertexId::V3)
            }
            other => panic!("expected VertexNotSpherical, got {other:?}"),
        }
        assert!(make_signature([3, 3, 2, 3, 3, 4, 2, 2, 3], None).is_ok());
    }

    #[test]
    fn vertex_data_mcd_examples() {
        let (_, mcd) = vertex_data(&lookup("O333_2", None).unwrap());
        assert_eq!(mcd, 24);
        let (_, mcd) = vertex_data(&lookup("O236_3", None).unwrap());
        assert_eq!(mcd, 60);
        // A (2,2,2) vertex is a dihedral rotation group of order 4.
        let sig = make_signature([2, 6, 2, 2, 3, 2, 2, 2, 2], None).unwrap();
        let (data, _) = vertex_data(&sig);
        let v1 = data.iter().find(|d| d.vertex == VertexId::V1).unwrap();
        assert_eq!(v1.labels, [2, 2, 2]);
        assert_eq!(v1.nv, (1, 2));
        assert_eq!(v1.order, 4);
    }

    #[test]
    fn signature_line_round_trip() {
        let sig = lookup("O333_2", None).unwrap();
        assert_eq!(sig.to_line(), "O333_2 3 3 2 3 3 4 2 2 3");
        let parsed = PrismSignature::parse_line(&sig.to_line()).unwrap();
        assert_eq!(parsed, sig);
        let anon = PrismSignature::parse_line("3 3 2 3 3 4 2 2 3").unwrap();
        assert_eq!(anon.name(), None);
        assert_eq!(anon.tuple(), sig.tuple());
    }
}
