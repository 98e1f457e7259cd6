//! Degree-n permutations, group words, and right-permutation representations.
//!
//! A cover of an orientable prism orbifold is encoded by the images of the
//! four rotation generators x, y, z, w as permutations of the coset space
//! {0, .., n-1}. Words evaluate with the right-action convention: the image
//! of a product applies the leftmost factor first, so `sigma(gh) =
//! sigma(h) o sigma(g)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::catalog::PrismSignature;

#[derive(Debug, Error)]
pub enum PermError {
    #[error("images are not a bijection of 0..{0}")]
    NotBijective(usize),
    #[error("rep parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Error)]
pub enum IsomError {
    #[error("signature mismatch: isometry search requires covers of the same orbifold")]
    SignatureMismatch,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("representation is not transitive")]
    NotTransitive,
}

/// One of the four rotation generators of the doubled-prism group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    X,
    Y,
    Z,
    W,
}

pub const GENS: [Gen; 4] = [Gen::X, Gen::Y, Gen::Z, Gen::W];

impl Gen {
    pub fn index(self) -> usize {
        match self {
            Gen::X => 0,
            Gen::Y => 1,
            Gen::Z => 2,
            Gen::W => 3,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Gen::X => 'x',
            Gen::Y => 'y',
            Gen::Z => 'z',
            Gen::W => 'w',
        }
    }
}

impl FromStr for Gen {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "x" => Ok(Gen::X),
            "y" => Ok(Gen::Y),
            "z" => Ok(Gen::Z),
            "w" => Ok(Gen::W),
            other => Err(format!("unknown generator {other:?}")),
        }
    }
}

/// A permutation of {0, .., n-1} stored by images: `images[i]` is the image of i.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(PermError::NotBijective(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Functional composition `self o other`: applies `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = sq.compose(&acc);
            }
            sq = sq.compose(&sq);
            k >>= 1;
        }
        acc
    }

    /// Full cycle decomposition including fixed points, in canonical form:
    /// each cycle starts at its least element, cycles sorted by first element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cyc.push(p);
                p = self.images[p];
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle lengths sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable();
        t
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles() {
            if c.len() == 1 {
                continue;
            }
            any = true;
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A word in the generators: syllables `(generator, nonzero exponent)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupWord {
    syllables: Vec<(Gen, i64)>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord { syllables: vec![] }
    }

    pub fn new(syllables: Vec<(Gen, i64)>) -> Self {
        let mut out: Vec<(Gen, i64)> = Vec::with_capacity(syllables.len());
        for (g, e) in syllables {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((lg, le)) if *lg == g => {
                    *le += e;
                    if *le == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        GroupWord { syllables: out }
    }

    pub fn gen(g: Gen) -> Self {
        GroupWord {
            syllables: vec![(g, 1)],
        }
    }

    pub fn syllables(&self) -> &[(Gen, i64)] {
        &self.syllables
    }

    /// Concatenation `self * other` (self applied first under the right action).
    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut s = self.syllables.clone();
        s.extend(other.syllables.iter().copied());
        GroupWord::new(s)
    }

    pub fn repeat(&self, e: u32) -> GroupWord {
        let mut s = Vec::with_capacity(self.syllables.len() * e as usize);
        for _ in 0..e {
            s.extend(self.syllables.iter().copied());
        }
        GroupWord::new(s)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (k, (g, e)) in self.syllables.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "{}", g.letter())?;
            } else {
                write!(f, "{}^{}", g.letter(), e)?;
            }
        }
        Ok(())
    }
}

/// The images of x, y, z, w as degree-n permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermRep {
    degree: usize,
    gens: [Permutation; 4],
}

impl PermRep {
    pub fn new(
        x: Permutation,
        y: Permutation,
        z: Permutation,
        w: Permutation,
    ) -> Result<Self, PermError> {
        let n = x.degree();
        if [&y, &z, &w].iter().any(|p| p.degree() != n) {
            return Err(PermError::NotBijective(n));
        }
        Ok(PermRep {
            degree: n,
            gens: [x, y, z, w],
        })
    }

    pub fn trivial(n: usize) -> Self {
        PermRep {
            degree: n,
            gens: std::array::from_fn(|_| Permutation::identity(n)),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gen(&self, g: Gen) -> &Permutation {
        &self.gens[g.index()]
    }

    /// Orbits of the subgroup generated by the given generators, as a sorted
    /// partition of {0, .., n-1}.
    pub fn orbits_of(&self, gens: &[Gen]) -> Vec<Vec<usize>> {
        let n = self.degree;
        let mut uf = crate::complex::UnionFind::new(n);
        for &g in gens {
            let p = self.gen(g);
            for i in 0..n {
                uf.union(i, p.apply(i));
            }
        }
        uf.partition()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits_of(&GENS).len() <= 1
    }
}

/// Evaluates a word under the rep with the right-action convention:
/// for g = c1^{e1} .. ck^{ek} the result is sigma(ck)^{ek} o .. o sigma(c1)^{e1}.
pub fn evaluate_word(rep: &PermRep, word: &GroupWord) -> Permutation {
    let mut acc = Permutation::identity(rep.degree());
    for &(g, e) in word.syllables() {
        acc = rep.gen(g).pow(e).compose(&acc);
    }
    acc
}

/// A relator of presentation of the doubled-prism rotation group:
/// the word `base^exponent` associated with prism edge `edge_label`.
#[derive(Debug, Clone)]
pub struct Relator {
    pub base: GroupWord,
    pub exponent: u32,
    /// Index 0..9 into the signature tuple (edge a1 is 0, .., a9 is 8).
    pub edge: usize,
}

impl Relator {
    pub fn word(&self) -> GroupWord {
        self.base.repeat(self.exponent)
    }
}

/// The nine relators in the fixed order
/// x^a1, y^a4, z^a5, w^a7, (y^-1 x)^a3, (z^-1 x)^a2, (z^-1 y)^a6, (y^-1 w)^a9, (z^-1 w)^a8.
pub fn relators(sig: &PrismSignature) -> Vec<Relator> {
    let a = sig.tuple();
    let pair = |num: Gen, denom: Gen| GroupWord::new(vec![(denom, -1), (num, 1)]);
    vec![
        Relator { base: GroupWord::gen(Gen::X), exponent: a[0], edge: 0 },
        Relator { base: GroupWord::gen(Gen::Y), exponent: a[3], edge: 3 },
        Relator { base: GroupWord::gen(Gen::Z), exponent: a[4], edge: 4 },
        Relator { base: GroupWord::gen(Gen::W), exponent: a[6], edge: 6 },
        Relator { base: pair(Gen::X, Gen::Y), exponent: a[2], edge: 2 },
        Relator { base: pair(Gen::X, Gen::Z), exponent: a[1], edge: 1 },
        Relator { base: pair(Gen::Y, Gen::Z), exponent: a[5], edge: 5 },
        Relator { base: pair(Gen::W, Gen::Y), exponent: a[8], edge: 8 },
        Relator { base: pair(Gen::W, Gen::Z), exponent: a[7], edge: 7 },
    ]
}

/// The relator whose edge cycle contains the prism edge with the given
/// tuple index (0-based).
pub fn relator_for_edge(sig: &PrismSignature, edge: usize) -> Relator {
    relators(sig)
        .into_iter()
        .find(|r| r.edge == edge)
        .expect("every prism edge has a relator")
}

#[derive(Debug, Clone)]
pub struct RelatorFailure {
    pub relator: usize,
    pub word: String,
    /// A point not returned to itself by the relator word.
    pub point: usize,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub relator_failures: Vec<RelatorFailure>,
    pub transitive: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.relator_failures.is_empty() && self.transitive
    }
}

/// Checks that every relator evaluates to the identity and that the image
/// acts transitively.
pub fn validate_rep(sig: &PrismSignature, rep: &PermRep) -> ValidationReport {
    let mut failures = Vec::new();
    for (k, rel) in relators(sig).iter().enumerate() {
        let p = evaluate_word(rep, &rel.word());
        if let Some(point) = (0..rep.degree()).find(|&i| p.apply(i) != i) {
            failures.push(RelatorFailure {
                relator: k,
                word: format!("({})^{}", rel.base, rel.exponent),
                point,
            });
        }
    }
    ValidationReport {
        relator_failures: failures,
        transitive: rep.is_transitive(),
    }
}

#[derive(Debug, Clone)]
pub struct RelatorCycles {
    pub relator: usize,
    pub word: String,
    pub expected_len: u32,
    pub cycle_lengths: Vec<usize>,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct ManifoldReport {
    pub is_manifold: bool,
    pub per_relator: Vec<RelatorCycles>,
}

/// The cover is a manifold iff each relator's base word decomposes into
/// n/a_j disjoint a_j-cycles.
pub fn is_manifold(sig: &PrismSignature, rep: &PermRep) -> ManifoldReport {
    let n = rep.degree();
    let mut per_relator = Vec::new();
    let mut all_ok = true;
    for (k, rel) in relators(sig).iter().enumerate() {
        let p = evaluate_word(rep, &rel.base);
        let lens = p.cycle_type();
        let divisible = n % rel.exponent as usize == 0;
        let ok = divisible && lens.iter().all(|&l| l == rel.exponent as usize);
        all_ok &= ok;
        per_relator.push(RelatorCycles {
            relator: k,
            word: format!("({})^{}", rel.base, rel.exponent),
            expected_len: rel.exponent,
            cycle_lengths: lens,
            ok,
        });
    }
    ManifoldReport {
        is_manifold: all_ok,
        per_relator,
    }
}

/// Orbits of <sigma(x), sigma(z)>; the cover has one cusp per orbit.
pub fn cusp_orbits(rep: &PermRep) -> Vec<Vec<usize>> {
    rep.orbits_of(&[Gen::X, Gen::Z])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Preserving,
    Reversing,
}

/// All permutations phi realizing combinatorial isometries between the covers
/// of the same prism orbifold encoded by `rep_a` and `rep_b`, sorted by phi(0).
///
/// Preserving: phi sigma(g) = sigma'(g) phi; reversing: phi sigma(g) = sigma'(g)^-1 phi.
pub fn find_isometries(
    sig_a: &PrismSignature,
    rep_a: &PermRep,
    sig_b: &PrismSignature,
    rep_b: &PermRep,
    orientation: Orientation,
) -> Result<Vec<Permutation>, IsomError> {
    if sig_a.tuple() != sig_b.tuple() {
        return Err(IsomError::SignatureMismatch);
    }
    if rep_a.degree() != rep_b.degree() {
        return Err(IsomError::DegreeMismatch(rep_a.degree(), rep_b.degree()));
    }
    if !rep_a.is_transitive() {
        return Err(IsomError::NotTransitive);
    }
    let n = rep_a.degree();
    let targets: Vec<Permutation> = GENS
        .iter()
        .map(|&g| match orientation {
            Orientation::Preserving => rep_b.gen(g).clone(),
            Orientation::Reversing => rep_b.gen(g).inverse(),
        })
        .collect();

    let mut found = Vec::new();
    'candidates: for c in 0..n {
        // Propagate phi from phi(0) = c along the transitive action.
        let mut phi = vec![usize::MAX; n];
        let mut hit = vec![false; n];
        phi[0] = c;
        hit[c] = true;
        let mut queue = vec![0usize];
        while let Some(i) = queue.pop() {
            for &g in &GENS {
                let j = rep_a.gen(g).apply(i);
                let t = targets[g.index()].apply(phi[i]);
                if phi[j] == usize::MAX {
                    if hit[t] {
                        continue 'candidates;
                    }
                    phi[j] = t;
                    hit[t] = true;
                    queue.push(j);
                } else if phi[j] != t {
                    continue 'candidates;
                }
            }
        }
        if phi.iter().any(|&v| v == usize::MAX) {
            continue;
        }
        found.push(Permutation::from_images(phi).expect("propagation yields a bijection"));
    }
    Ok(found)
}

/// Checks phi o sigma_a(g) = sigma_b(g')^sign o phi for every (g, g', sign).
pub fn verify_intertwine(
    phi: &Permutation,
    rep_a: &PermRep,
    rep_b: &PermRep,
    genmap: &[(Gen, Gen, i8)],
) -> bool {
    if phi.degree() != rep_a.degree() || rep_a.degree() != rep_b.degree() {
        return false;
    }
    genmap.iter().all(|&(g, g2, sign)| {
        let target = if sign >= 0 {
            rep_b.gen(g2).clone()
        } else {
            rep_b.gen(g2).inverse()
        };
        (0..phi.degree()).all(|i| phi.apply(rep_a.gen(g).apply(i)) == target.apply(phi.apply(i)))
    })
}

/// Parses the rep file format: records of four lines `x: i0 i1 ..` through
/// `w: ..`, records separated by blank lines.
pub fn parse_reps(text: &str) -> Result<Vec<PermRep>, PermError> {
    let mut reps = Vec::new();
    let mut current: Vec<(Gen, Vec<usize>)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            flush_record(&mut current, &mut reps, lineno)?;
            continue;
        }
        let (head, tail) = line.split_once(':').ok_or_else(|| PermError::Parse {
            line: lineno + 1,
            msg: "expected `<gen>: images`".into(),
        })?;
        let g: Gen = head.trim().parse().map_err(|msg| PermError::Parse {
            line: lineno + 1,
            msg,
        })?;
        let images = tail
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| PermError::Parse {
                line: lineno + 1,
                msg: e.to_string(),
            })?;
        current.push((g, images));
    }
    flush_record(&mut current, &mut reps, usize::MAX)?;
    Ok(reps)
}

fn flush_record(
    current: &mut Vec<(Gen, Vec<usize>)>,
    reps: &mut Vec<PermRep>,
    lineno: usize,
) -> Result<(), PermError> {
    if current.is_empty() {
        return Ok(());
    }
    let rec = std::mem::take(current);
    if rec.len() != 4 {
        return Err(PermError::Parse {
            line: lineno.saturating_add(1),
            msg: format!("record has {} lines, expected x, y, z, w", rec.len()),
        });
    }
    let mut perms: [Option<Permutation>; 4] = [None, None, None, None];
    for (g, images) in rec {
        perms[g.index()] = Some(Permutation::from_images(images)?);
    }
    let [x, y, z, w] = perms;
    let missing = || PermError::Parse {
        line: lineno.saturating_add(1),
        msg: "record is missing a generator line".into(),
    };
    reps.push(PermRep::new(
        x.ok_or_else(missing)?,
        y.ok_or_else(missing)?,
        z.ok_or_else(missing)?,
        w.ok_or_else(missing)?,
    )?);
    Ok(())
}

pub fn format_reps(reps: &[PermRep]) -> String {
    let mut out = String::new();
    for (k, rep) in reps.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        for &g in &GENS {
            out.push_str(&format!("{}:", g.letter()));
            for i in 0..rep.degree() {
                out.push_str(&format!(" {}", rep.gen(g).apply(i)));
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::fixtures;

    #[test]
    fn composition_is_function_composition() {
        let f = Permutation::from_images(vec![1, 0, 2]).unwrap();
        let g = Permutation::from_images(vec![2, 1, 0]).unwrap();
        // (f o g)(0) = f(2) = 2
        assert_eq!(f.compose(&g).apply(0), 2);
    }

    #[test]
    fn bijectivity_enforced() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn relator_exponents_for_o333_2_and_3() {
        let sig = lookup("O333_2", None).unwrap();
        let exps: Vec<u32> = relators(&sig).iter().map(|r| r.exponent).collect();
        assert_eq!(exps, vec![3, 3, 3, 2, 2, 3, 4, 3, 2]);
        let sig3 = lookup("O333_3", None).unwrap();
        let exps3: Vec<u32> = relators(&sig3).iter().map(|r| r.exponent).collect();
        assert_eq!(exps3, vec![3, 3, 3, 2, 2, 3, 4, 2, 3]);
    }

    #[test]
    fn word_evaluation_matches_hand_computed_cycles() {
        let rep = fixtures::sigma(2, 1);
        let x = evaluate_word(&rep, &GroupWord::gen(Gen::X));
        assert_eq!(
            x.cycles(),
            vec![
                vec![0, 1, 2],
                vec![3, 12, 7],
                vec![4, 10, 16],
                vec![5, 19, 15],
                vec![6, 18, 11],
                vec![8, 20, 9],
                vec![13, 17, 14],
                vec![21, 22, 23],
            ]
        );
        // y^-1 x evaluates as sigma(x) o sigma(y)^-1.
        let yinv_x = GroupWord::new(vec![(Gen::Y, -1), (Gen::X, 1)]);
        let p = evaluate_word(&rep, &yinv_x);
        assert_eq!(p.cycles()[0], vec![0, 10]);
        assert_eq!(p.cycles()[1], vec![1, 3]);
        assert_eq!(p.cycles()[2], vec![2, 6]);
        assert!(evaluate_word(&rep, &GroupWord::identity()).is_identity());
    }

    #[test]
    fn anti_homomorphism_property() {
        let rep = fixtures::sigma(3, 2);
        let g = GroupWord::new(vec![(Gen::X, 2), (Gen::Z, -1), (Gen::W, 1)]);
        let h = GroupWord::new(vec![(Gen::Y, 1), (Gen::X, -2), (Gen::Z, 3)]);
        let lhs = evaluate_word(&rep, &g.concat(&h));
        let rhs = evaluate_word(&rep, &h).compose(&evaluate_word(&rep, &g));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_one_rep_is_valid_but_not_manifold() {
        let sig = lookup("O333_2", None).unwrap();
        let rep = PermRep::trivial(1);
        let report = validate_rep(&sig, &rep);
        assert!(report.is_valid());
        assert!(!is_manifold(&sig, &rep).is_manifold);
        assert_eq!(cusp_orbits(&rep).len(), 1);
    }

    #[test]
    fn fixture_reps_are_valid_manifold_one_cusped() {
        for (i, j) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let sig = lookup(&format!("O333_{i}"), None).unwrap();
            let rep = fixtures::sigma(i, j);
            assert!(validate_rep(&sig, &rep).is_valid(), "sigma_{i}_{j}");
            assert!(is_manifold(&sig, &rep).is_manifold, "sigma_{i}_{j}");
            assert_eq!(cusp_orbits(&rep).len(), 1, "sigma_{i}_{j}");
        }
    }

    #[test]
    fn corrupting_w_breaks_a_relator() {
        let sig = lookup("O333_2", None).unwrap();
        let rep = fixtures::sigma(2, 1);
        let broken = PermRep::new(
            rep.gen(Gen::X).clone(),
            rep.gen(Gen::Y).clone(),
            rep.gen(Gen::Z).clone(),
            Permutation::identity(24),
        )
        .unwrap();
        let report = validate_rep(&sig, &broken);
        // (y^-1 w)^3 becomes (y^-1)^3 = y^-3 = identity only if y^3 = 1; it is,
        // but (z^-1 w)^2 = z^-2 is not the identity, so some relator fails.
        assert!(!report.relator_failures.is_empty());
        let failed: Vec<&str> = report
            .relator_failures
            .iter()
            .map(|f| f.word.as_str())
            .collect();
        assert!(failed.contains(&"(z^-1 w)^2"), "failed: {failed:?}");
    }

    #[test]
    fn self_isometries_of_fixtures() {
        for (i, j) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let sig = lookup(&format!("O333_{i}"), None).unwrap();
            let rep = fixtures::sigma(i, j);
            let op = find_isometries(&sig, &rep, &sig, &rep, Orientation::Preserving).unwrap();
            assert_eq!(op.len(), 1);
            assert!(op[0].is_identity());
            let or = find_isometries(&sig, &rep, &sig, &rep, Orientation::Reversing).unwrap();
            assert!(or.is_empty());
        }
    }

    #[test]
    fn rep_file_round_trip() {
        let reps = vec![fixtures::sigma(2, 1), fixtures::sigma(3, 1)];
        let text = format_reps(&reps);
        let parsed = parse_reps(&text).unwrap();
        assert_eq!(parsed, reps);
    }
}
