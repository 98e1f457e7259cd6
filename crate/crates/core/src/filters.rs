//! Knot-complement pre-filters on the isotropy graph, and the cover
//! filtering pipeline.
//!
//! The isotropy graph is the prism one-skeleton with edges labeled by the
//! torsion orders a1..a9. Cusp killing deletes the peripheral edges and
//! reduces to a fixed point; a nonempty residue obstructs covering by a knot
//! complement. For (2,3,6) cusps a parity search for an even-labeled cycle
//! through the cusp decides existence of a (3,3,3)-cusped double cover.

use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::catalog::{edge_endpoints, template, vertex_data, PrismSignature, VertexId, VERTICES};
use crate::complex::{build_complex, build_spine, first_homology, fundamental_presentation};
use crate::perm::{cusp_orbits, is_manifold, PermRep};

#[derive(Debug, Error)]
pub enum FilterError {
    #[error("double-cover test applies to (2,3,6)-cusped signatures only")]
    NotA236Cusp,
}

/// A labeled multigraph on the six template vertices, mutable under the
/// cusp-killing reduction. Vertices are indexed by position in `VERTICES`.
#[derive(Debug, Clone)]
pub struct IsotropyGraph {
    pub edges: Vec<IsotropyEdge>,
}

#[derive(Debug, Clone)]
pub struct IsotropyEdge {
    pub label: u64,
    pub ends: (usize, usize),
    pub alive: bool,
}

impl IsotropyGraph {
    pub fn of(sig: &PrismSignature) -> Self {
        template();
        let vid = |v: VertexId| VERTICES.iter().position(|&u| u == v).unwrap();
        let edges = (0..9)
            .map(|e| {
                let (a, b) = edge_endpoints(e);
                IsotropyEdge {
                    label: sig.entry(e) as u64,
                    ends: (vid(a), vid(b)),
                    alive: true,
                }
            })
            .collect();
        IsotropyGraph { edges }
    }

    pub fn alive_edges(&self) -> impl Iterator<Item = (usize, &IsotropyEdge)> {
        self.edges.iter().enumerate().filter(|(_, e)| e.alive)
    }

    pub fn is_empty_graph(&self) -> bool {
        self.edges.iter().all(|e| !e.alive)
    }

    /// Degree of a vertex; a loop contributes two.
    fn degree(&self, v: usize) -> usize {
        self.alive_edges()
            .map(|(_, e)| usize::from(e.ends.0 == v) + usize::from(e.ends.1 == v))
            .sum()
    }

    fn incident(&self, v: usize) -> Vec<usize> {
        self.alive_edges()
            .filter(|(_, e)| e.ends.0 == v || e.ends.1 == v)
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CuspKillVerdict {
    /// The residual graph is empty: the cusp-killing quotient is trivial.
    Trivial,
    /// A nonempty residue survives.
    Nontrivial,
}

/// Applies the cusp-killing reduction and returns the verdict with the
/// residual graph. Reduction moves, in deterministic ascending order:
/// delete label-1 edges; drop isolated vertices (implicit); kill the single
/// edge at a degree-1 vertex (its rotation is a product of killed ones);
/// replace the two edges at a degree-2 vertex by one labeled by their gcd.
pub fn cusp_killing(sig: &PrismSignature) -> (CuspKillVerdict, IsotropyGraph) {
    cusp_killing_ordered(sig, &mut |candidates: &[usize]| candidates[0])
}

/// Same reduction with the degree-2 vertex chosen by `pick` among the
/// applicable ones; the verdict must not depend on the choice.
pub fn cusp_killing_ordered(
    sig: &PrismSignature,
    pick: &mut dyn FnMut(&[usize]) -> usize,
) -> (CuspKillVerdict, IsotropyGraph) {
    let mut g = IsotropyGraph::of(sig);
    // Erase peripheral torsion: the cusp edges a1, a2, a5.
    for e in [0usize, 1, 4] {
        g.edges[e].alive = false;
    }
    loop {
        // Label-1 edges die.
        let unit = g.alive_edges().find(|(_, e)| e.label == 1).map(|(i, _)| i);
        if let Some(i) = unit {
            g.edges[i].alive = false;
            continue;
        }
        // A degree-1 vertex kills its remaining edge: at a trivalent vertex
        // group the two dead rotations force the third to die.
        if let Some(v) = (0..VERTICES.len()).find(|&v| g.degree(v) == 1) {
            let inc = g.incident(v);
            g.edges[inc[0]].alive = false;
            continue;
        }
        // Resolve a degree-2 vertex whose slots are two distinct edges.
        let candidates: Vec<usize> = (0..VERTICES.len())
            .filter(|&v| g.degree(v) == 2 && g.incident(v).len() == 2)
            .collect();
        if candidates.is_empty() {
            break;
        }
        let v = pick(&candidates);
        let inc = g.incident(v);
        let (e1, e2) = (inc[0], inc[1]);
        let far = |eidx: usize| {
            let e = &g.edges[eidx];
            if e.ends.0 == v {
                e.ends.1
            } else {
                e.ends.0
            }
        };
        let new_edge = IsotropyEdge {
            label: g.edges[e1].label.gcd(&g.edges[e2].label),
            ends: (far(e1), far(e2)),
            alive: true,
        };
        g.edges[e1].alive = false;
        g.edges[e2].alive = false;
        g.edges.push(new_edge);
    }
    let verdict = if g.is_empty_graph() {
        CuspKillVerdict::Trivial
    } else {
        CuspKillVerdict::Nontrivial
    };
    (verdict, g)
}

/// Decides whether a (2,3,6)-cusped orbifold has a (3,3,3)-cusped double
/// cover and returns the distinct witness cycles (edge index sets).
///
/// A witness is a sign assignment over the nine edges where the cusp's 2-
/// and 6-labeled edges are negative and its 3-labeled edge positive, every
/// vertex has zero or two negative edges, and all negative edges carry even
/// labels; the negative component through the cusp is then a cycle.
pub fn double_cover_witnesses(sig: &PrismSignature) -> Result<Vec<Vec<usize>>, FilterError> {
    if sig.cusp_type() != [2, 3, 6] {
        return Err(FilterError::NotA236Cusp);
    }
    let g = IsotropyGraph::of(sig);
    let cusp_edges = [0usize, 1, 4];
    let cusp_label = |l: u64| cusp_edges.iter().find(|&&e| g.edges[e].label == l).copied();
    let (e2, e3, e6) = (
        cusp_label(2).expect("cusp has a 2"),
        cusp_label(3).expect("cusp has a 3"),
        cusp_label(6).expect("cusp has a 6"),
    );

    let mut witnesses: Vec<Vec<usize>> = Vec::new();
    'assignments: for bits in 0u32..(1 << 9) {
        let neg = |e: usize| bits & (1 << e) != 0;
        if !neg(e2) || !neg(e6) || neg(e3) {
            continue;
        }
        for e in 0..9 {
            if neg(e) && g.edges[e].label % 2 != 0 {
                continue 'assignments;
            }
        }
        for v in 0..VERTICES.len() {
            let count = (0..9)
                .filter(|&e| neg(e))
                .map(|e| {
                    usize::from(g.edges[e].ends.0 == v) + usize::from(g.edges[e].ends.1 == v)
                })
                .sum::<usize>();
            if count != 0 && count != 2 {
                continue 'assignments;
            }
        }
        // Component of negative edges through the cusp's 2-edge.
        let mut component = vec![e2];
        let mut frontier = vec![e2];
        while let Some(e) = frontier.pop() {
            let (a, b) = g.edges[e].ends;
            for e2x in 0..9 {
                if neg(e2x) && !component.contains(&e2x) {
                    let (c, d) = g.edges[e2x].ends;
                    if [a, b].contains(&c) || [a, b].contains(&d) {
                        component.push(e2x);
                        frontier.push(e2x);
                    }
                }
            }
        }
        if !component.contains(&e6) {
            continue;
        }
        // Every negative edge containing the cusp edges lies in this cycle.
        component.sort_unstable();
        if !witnesses.contains(&component) {
            witnesses.push(component);
        }
    }
    witnesses.sort();
    Ok(witnesses)
}

pub fn double_cover_exists(sig: &PrismSignature) -> Result<(bool, Option<Vec<usize>>), FilterError> {
    let w = double_cover_witnesses(sig)?;
    let first = w.first().cloned();
    Ok((first.is_some(), first))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Surviving,
    Eliminated(Vec<String>),
}

/// Combined pre-filter outcome for one signature.
#[derive(Debug, Clone)]
pub struct PrefilterReport {
    pub name: String,
    pub cusp_kill: CuspKillVerdict,
    /// None for non-(2,3,6) cusps, where the test does not apply.
    pub double_cover: Option<bool>,
    pub mcd: u64,
    /// The unit-translation test is deliberately not implemented.
    pub ut: &'static str,
    pub verdict: Verdict,
}

/// Runs the implemented obstruction tests: cusp killing, the double-cover
/// criterion for (2,3,6) cusps, and the vertex-order lcm bound.
pub fn prefilter(sig: &PrismSignature) -> PrefilterReport {
    let (ck, _) = cusp_killing(sig);
    let dc = if sig.cusp_type() == [2, 3, 6] {
        Some(double_cover_exists(sig).expect("cusp checked").0)
    } else {
        None
    };
    let (_, mcd) = vertex_data(sig);
    let mut reasons = Vec::new();
    if ck == CuspKillVerdict::Nontrivial {
        reasons.push("cusp-killing quotient is nontrivial".to_string());
    }
    if dc == Some(false) {
        reasons.push("no (3,3,3)-cusped double cover".to_string());
    }
    PrefilterReport {
        name: sig
            .name()
            .map(str::to_string)
            .unwrap_or_else(|| sig.to_line()),
        cusp_kill: ck,
        double_cover: dc,
        mcd,
        ut: "not implemented",
        verdict: if reasons.is_empty() {
            Verdict::Surviving
        } else {
            Verdict::Eliminated(reasons)
        },
    }
}

/// Survivor counts of the staged cover filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterCounts {
    pub input: usize,
    pub manifold: usize,
    pub one_cusped: usize,
    pub homology_z: usize,
}

pub struct FilterOutcome {
    pub counts: FilterCounts,
    pub survivors: Vec<PermRep>,
}

/// Applies, in order: the manifold criterion, the one-cusp criterion, and
/// first homology Z. Reps evaluate in parallel; output order is the input
/// order.
pub fn filter_covers(sig: &PrismSignature, reps: &[PermRep]) -> FilterOutcome {
    #[derive(Clone, Copy, PartialEq)]
    enum Stage {
        NotManifold,
        ManyCusps,
        WrongHomology,
        Survivor,
    }
    let stages: Vec<Stage> = reps
        .par_iter()
        .map(|rep| {
            if !is_manifold(sig, rep).is_manifold {
                return Stage::NotManifold;
            }
            if cusp_orbits(rep).len() != 1 {
                return Stage::ManyCusps;
            }
            let mut cx = build_complex(sig, rep).expect("validated rep");
            let sp = build_spine(&mut cx);
            let p = fundamental_presentation(&sp).expect("transitive rep gives a connected spine");
            if first_homology(&p).is_infinite_cyclic() {
                Stage::Survivor
            } else {
                Stage::WrongHomology
            }
        })
        .collect();
    let manifold = stages.iter().filter(|s| !matches!(s, Stage::NotManifold)).count();
    let one_cusped = stages
        .iter()
        .filter(|s| matches!(s, Stage::WrongHomology | Stage::Survivor))
        .count();
    let survivors: Vec<PermRep> = stages
        .iter()
        .zip(reps)
        .filter(|(s, _)| matches!(s, Stage::Survivor))
        .map(|(_, r)| r.clone())
        .collect();
    FilterOutcome {
        counts: FilterCounts {
            input: reps.len(),
            manifold,
            one_cusped,
            homology_z: survivors.len(),
        },
        survivors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::fixtures;

    #[test]
    fn cusp_killing_examples() {
        let (v1, residue) = cusp_killing(&lookup("O236_1", None).unwrap());
        assert_eq!(v1, CuspKillVerdict::Nontrivial);
        // The residue is a single loop labeled 2.
        let alive: Vec<_> = residue.alive_edges().collect();
        assert_eq!(alive.len(), 1);
        assert_eq!(alive[0].1.label, 2);
        assert_eq!(alive[0].1.ends.0, alive[0].1.ends.1);

        let (v2, _) = cusp_killing(&lookup("O236_2", None).unwrap());
        assert_eq!(v2, CuspKillVerdict::Trivial);
        let (v3, _) = cusp_killing(&lookup("O333_2", None).unwrap());
        assert_eq!(v3, CuspKillVerdict::Trivial);
    }

    #[test]
    fn cusp_killing_is_order_independent() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        for name in ["O236_1", "O236_2", "O236_12", "O333_1", "O333_2", "O333_13"] {
            let sig = lookup(name, None).unwrap();
            let (baseline, _) = cusp_killing(&sig);
            for seed in 0..20u64 {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let (v, _) = cusp_killing_ordered(&sig, &mut |cands| {
                    *cands.choose(&mut rng).unwrap()
                });
                assert_eq!(v, baseline, "{name} seed {seed}");
            }
        }
    }

    #[test]
    fn double_cover_examples() {
        let (dc3, _) = double_cover_exists(&lookup("O236_3", None).unwrap()).unwrap();
        assert!(!dc3);
        let w12 = double_cover_witnesses(&lookup("O236_12", None).unwrap()).unwrap();
        assert_eq!(w12.len(), 1, "unique witness cycle");
        let (dc19, _) = double_cover_exists(&lookup("O236_19", None).unwrap()).unwrap();
        assert!(dc19);
        let (dc35, _) = double_cover_exists(&lookup("O236_35", None).unwrap()).unwrap();
        assert!(!dc35);
        assert!(matches!(
            double_cover_exists(&lookup("O333_2", None).unwrap()),
            Err(FilterError::NotA236Cusp)
        ));
    }

    #[test]
    fn prefilter_examples() {
        let r = prefilter(&lookup("O333_2", None).unwrap());
        assert_eq!(r.verdict, Verdict::Surviving);
        assert_eq!(r.mcd, 24);
        let r1 = prefilter(&lookup("O236_1", None).unwrap());
        assert!(matches!(r1.verdict, Verdict::Eliminated(_)));
        let r35 = prefilter(&lookup("O236_35", None).unwrap());
        match r35.verdict {
            Verdict::Eliminated(reasons) => {
                assert!(reasons.iter().any(|r| r.contains("double cover")))
            }
            v => panic!("expected elimination, got {v:?}"),
        }
    }

    #[test]
    fn filter_fixture_list() {
        let sig = lookup("O333_2", None).unwrap();
        let reps = vec![fixtures::sigma(2, 1)];
        let out = filter_covers(&sig, &reps);
        assert_eq!(
            out.counts,
            FilterCounts {
                input: 1,
                manifold: 1,
                one_cusped: 1,
                homology_z: 1
            }
        );
        assert_eq!(out.survivors.len(), 1);
    }
}
