//! Low-index subgroup enumeration by backtracking coset-table search, plus a
//! small-degree brute-force oracle.
//!
//! The search fills a partial coset table over the four generators and their
//! inverses, branching on the first undefined entry, tracing relators through
//! every new transition to force deductions, and pruning branches that are
//! not lexicographically minimal among basepoint-changing relabelings. One
//! table per conjugacy class of subgroups survives.

use rayon::prelude::*;
use thiserror::Error;

use crate::catalog::PrismSignature;
use crate::perm::{relators, PermRep, Permutation};

#[derive(Debug, Error)]
pub enum LowIndexError {
    #[error("brute-force enumeration is capped at index 8, got {0}")]
    IndexTooLarge(usize),
}

#[derive(Debug, Clone)]
pub struct EnumerationTask {
    pub sig: PrismSignature,
    pub max_index: usize,
}

const COLS: usize = 8;
pub static NODES: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);
pub static MIN_CALLS: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);
pub static MIN_PRUNES: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);
const UNDEF: i32 = -1;

fn inv_col(c: usize) -> usize {
    c ^ 1
}

#[derive(Clone)]
struct Tables {
    /// Letters (column indices) of each relator, fully expanded.
    relators: Vec<Vec<u8>>,
    /// For each column, the (relator, position) pairs carrying that letter.
    occurrences: Vec<Vec<(u32, u32)>>,
}

fn relator_tables(sig: &PrismSignature) -> Tables {
    let mut rels: Vec<Vec<u8>> = Vec::new();
    for rel in relators(sig) {
        let mut letters = Vec::new();
        for &(g, e) in rel.word().syllables() {
            let col = 2 * g.index() + usize::from(e < 0);
            for _ in 0..e.unsigned_abs() {
                letters.push(col as u8);
            }
        }
        rels.push(letters);
    }
    let mut occurrences = vec![Vec::new(); COLS];
    for (ri, r) in rels.iter().enumerate() {
        for (pi, &c) in r.iter().enumerate() {
            occurrences[c as usize].push((ri as u32, pi as u32));
        }
    }
    Tables {
        relators: rels,
        occurrences,
    }
}

#[derive(Clone)]
struct Search {
    tables: std::sync::Arc<Tables>,
    max_index: usize,
    table: Vec<i32>,
    n_rows: usize,
    log: Vec<usize>,
    // Scratch for the canonicity test.
    old_of_new: Vec<i32>,
    new_of_old: Vec<i32>,
}

impl Search {
    fn new(sig: &PrismSignature, max_index: usize) -> Self {
        Search {
            tables: std::sync::Arc::new(relator_tables(sig)),
            max_index,
            table: vec![UNDEF; COLS],
            n_rows: 1,
            log: Vec::new(),
            old_of_new: Vec::with_capacity(max_index),
            new_of_old: vec![UNDEF; max_index],
        }
    }

    #[inline]
    fn get(&self, row: usize, col: usize) -> i32 {
        self.table[row * COLS + col]
    }

    fn mark(&self) -> (usize, usize) {
        (self.log.len(), self.n_rows)
    }

    fn rewind(&mut self, mark: (usize, usize)) {
        while self.log.len() > mark.0 {
            let slot = self.log.pop().unwrap();
            self.table[slot] = UNDEF;
        }
        self.n_rows = mark.1;
        self.table.truncate(self.n_rows * COLS);
    }

    /// Sets row.col = target (and the inverse entry) and runs relator
    /// deductions to a fixed point. False on contradiction.
    fn define_and_deduce(&mut self, row: usize, col: usize, target: usize) -> bool {
        let mut queue: Vec<(usize, usize, usize)> = vec![(row, col, target)];
        let slot = row * COLS + col;
        let islot = target * COLS + inv_col(col);
        debug_assert!(self.table[slot] == UNDEF);
        if self.table[islot] != UNDEF {
            return false;
        }
        self.table[slot] = target as i32;
        self.log.push(slot);
        if islot != slot {
            self.table[islot] = row as i32;
            self.log.push(islot);
        }
        let mut qi = 0;
        while qi < queue.len() {
            let (r, c, t) = queue[qi];
            qi += 1;
            // Trace every relator position carrying c (forward direction)
            // and inv(c) (backward direction) through this transition.
            for dir in 0..2 {
                let (letter, from, to) = if dir == 0 {
                    (c, r, t)
                } else {
                    (inv_col(c), t, r)
                };
                let occs = &self.tables.occurrences[letter];
                for oi in 0..occs.len() {
                    let (ri, pi) = {
                        let o = self.tables.occurrences[letter][oi];
                        (o.0 as usize, o.1 as usize)
                    };
                    let m = self.tables.relators[ri].len();
                    // Forward from `to` through positions pi+1..pi+m-1.
                    let mut u = to;
                    let mut steps = 1;
                    while steps < m {
                        let lc = self.tables.relators[ri][(pi + steps) % m] as usize;
                        let next = self.get(u, lc);
                        if next == UNDEF {
                            break;
                        }
                        u = next as usize;
                        steps += 1;
                    }
                    if steps == m {
                        if u != from {
                            return false;
                        }
                        continue;
                    }
                    // Backward from `from` through positions pi-1, pi-2, ..
                    let mut v = from;
                    let mut back = 0;
                    while back < m - steps - 1 {
                        let lc = self.tables.relators[ri][(pi + m - 1 - back) % m] as usize;
                        let prev = self.get(v, inv_col(lc));
                        if prev == UNDEF {
                            break;
                        }
                        v = prev as usize;
                        back += 1;
                    }
                    if steps + back == m - 1 {
                        // One gap: u -- letter --> v is forced.
                        let lc = self.tables.relators[ri][(pi + steps) % m] as usize;
                        let existing = self.get(u, lc);
                        if existing != UNDEF {
                            if existing as usize != v {
                                return false;
                            }
                            continue;
                        }
                        if self.get(v, inv_col(lc)) != UNDEF {
                            return false;
                        }
                        let s1 = u * COLS + lc;
                        let s2 = v * COLS + inv_col(lc);
                        self.table[s1] = v as i32;
                        self.log.push(s1);
                        if s2 != s1 {
                            self.table[s2] = u as i32;
                            self.log.push(s2);
                        }
                        queue.push((u, lc, v));
                    }
                }
            }
        }
        true
    }

    fn first_undefined(&self) -> Option<(usize, usize)> {
        for row in 0..self.n_rows {
            for col in 0..COLS {
                if self.get(row, col) == UNDEF {
                    return Some((row, col));
                }
            }
        }
        None
    }

    /// Lexicographic minimality among basepoint-changing relabelings.
    /// On partial tables only a certain strict witness prunes.
    fn is_minimal(&mut self) -> bool {
        MIN_CALLS.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        for k in 1..self.n_rows {
            self.new_of_old[..self.n_rows].fill(UNDEF);
            self.old_of_new.clear();
            self.old_of_new.push(k as i32);
            self.new_of_old[k] = 0;
            let mut decided = false;
            'walk: for new_r in 0..self.n_rows {
                if new_r >= self.old_of_new.len() {
                    break;
                }
                let old_r = self.old_of_new[new_r] as usize;
                for col in 0..COLS {
                    let orig = self.get(new_r, col);
                    let t = self.get(old_r, col);
                    if t == UNDEF {
                        break 'walk;
                    }
                    let t = t as usize;
                    let relabeled = if self.new_of_old[t] == UNDEF {
                        let fresh = self.old_of_new.len() as i32;
                        self.new_of_old[t] = fresh;
                        self.old_of_new.push(t as i32);
                        fresh
                    } else {
                        self.new_of_old[t]
                    };
                    if orig == UNDEF {
                        break 'walk;
                    }
                    if relabeled != orig {
                        if relabeled < orig {
                            MIN_PRUNES.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                            return false;
                        }
                        decided = true;
                        break 'walk;
                    }
                }
            }
            let _ = decided;
        }
        true
    }

    fn emit(&self) -> PermRep {
        let n = self.n_rows;
        let col_perm = |c: usize| {
            Permutation::from_images((0..n).map(|i| self.get(i, c) as usize).collect())
                .expect("complete table columns are bijections")
        };
        PermRep::new(col_perm(0), col_perm(2), col_perm(4), col_perm(6))
            .expect("columns share the degree")
    }

    /// Depth-first search from the current state; either collects complete
    /// minimal tables or, while `split` is positive, forks child states at
    /// branch points into `seeds`.
    fn dfs(&mut self, split: usize, seeds: &mut Vec<Search>, out: &mut Vec<PermRep>) {
        NODES.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        let Some((row, col)) = self.first_undefined() else {
            if self.is_minimal() {
                out.push(self.emit());
            }
            return;
        };
        let n = self.n_rows;
        for target in 0..=n {
            let mark = self.mark();
            if target == n {
                if n >= self.max_index {
                    continue;
                }
                self.table.extend(std::iter::repeat(UNDEF).take(COLS));
                self.n_rows += 1;
            } else if self.get(target, inv_col(col)) != UNDEF {
                continue;
            }
            if self.define_and_deduce(row, col, target) && (std::env::var("SKIP_PARTIAL_MIN").is_ok() || self.is_minimal()) {
                if split > 0 {
                    seeds.push(self.clone());
                } else {
                    self.dfs(0, seeds, out);
                }
            }
            self.rewind(mark);
        }
    }
}

/// The work plan of an enumeration: independent search-tree prefixes (split
/// on the first two branch points) plus any tables already completed while
/// splitting. Prefix ids are stable across runs.
pub struct EnumerationPlan {
    seeds: Vec<Search>,
    /// Tables completed before the second branch point.
    pub early: Vec<PermRep>,
}

impl EnumerationPlan {
    pub fn new(task: &EnumerationTask) -> Self {
        let mut root = Search::new(&task.sig, task.max_index);
        let mut out = Vec::new();
        let mut level1 = Vec::new();
        root.dfs(1, &mut level1, &mut out);
        let mut seeds = Vec::new();
        for mut s in level1 {
            s.dfs(1, &mut seeds, &mut out);
        }
        EnumerationPlan { seeds, early: out }
    }

    pub fn seed_count(&self) -> usize {
        self.seeds.len()
    }

    /// Runs one prefix to completion.
    pub fn run_seed(&self, id: usize) -> Vec<PermRep> {
        let mut state = self.seeds[id].clone();
        let mut out = Vec::new();
        let mut no_seeds = Vec::new();
        state.dfs(0, &mut no_seeds, &mut out);
        out
    }

    /// Runs the given prefixes in parallel; results come back per prefix in
    /// the order given.
    pub fn run_seeds(&self, ids: &[usize]) -> Vec<(usize, Vec<PermRep>)> {
        ids.par_iter().map(|&id| (id, self.run_seed(id))).collect()
    }
}

/// One representative per conjugacy class of subgroups of index at most
/// `max_index`, as transitive relator-satisfying reps in canonical order.
pub fn enumerate_subgroups(task: &EnumerationTask) -> Vec<PermRep> {
    let plan = EnumerationPlan::new(task);
    let ids: Vec<usize> = (0..plan.seed_count()).collect();
    let chunks = plan.run_seeds(&ids);
    let mut out: Vec<PermRep> = plan.early.clone();
    out.extend(chunks.into_iter().flat_map(|(_, v)| v));
    sort_reps(&mut out);
    out
}

fn sort_reps(reps: &mut [PermRep]) {
    reps.sort_by(|a, b| {
        a.degree().cmp(&b.degree()).then_with(|| {
            for c in [crate::perm::Gen::X, crate::perm::Gen::Y, crate::perm::Gen::Z, crate::perm::Gen::W]
            {
                let ord = a.gen(c).images().cmp(b.gen(c).images());
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
            std::cmp::Ordering::Equal
        })
    });
}

/// Exhaustive oracle: every 4-tuple of degree-`index` permutations satisfying
/// the relators and acting transitively, one representative per simultaneous
/// conjugacy class. Degrees above 8 are refused.
pub fn brute_force_reps(
    sig: &PrismSignature,
    index: usize,
) -> Result<Vec<PermRep>, LowIndexError> {
    if index > 8 {
        return Err(LowIndexError::IndexTooLarge(index));
    }
    let all = all_permutations(index);
    let a = sig.tuple();
    let of_order = |d: u32| -> Vec<&Permutation> {
        all.iter().filter(|p| p.pow(d as i64).is_identity()).collect()
    };
    let xs = of_order(a[0]);
    let ys = of_order(a[3]);
    let zs = of_order(a[4]);
    let ws = of_order(a[6]);
    let power_is_id = |p: &Permutation, e: u32| p.pow(e as i64).is_identity();

    let mut classes: std::collections::HashSet<Vec<Vec<usize>>> = Default::default();
    let mut out = Vec::new();
    for &x in &xs {
        for &y in &ys {
            // (y^-1 x)^a3: right-action value is sigma(x) o sigma(y)^-1.
            if !power_is_id(&x.compose(&y.inverse()), a[2]) {
                continue;
            }
            for &z in &zs {
                if !power_is_id(&x.compose(&z.inverse()), a[1]) {
                    continue;
                }
                if !power_is_id(&y.compose(&z.inverse()), a[5]) {
                    continue;
                }
                for &w in &ws {
                    if !power_is_id(&w.compose(&y.inverse()), a[8]) {
                        continue;
                    }
                    if !power_is_id(&w.compose(&z.inverse()), a[7]) {
                        continue;
                    }
                    let rep =
                        PermRep::new(x.clone(), y.clone(), z.clone(), w.clone()).expect("degrees");
                    if !rep.is_transitive() {
                        continue;
                    }
                    debug_assert!(crate::perm::validate_rep(sig, &rep).is_valid());
                    let key = conjugacy_key(&rep, &all);
                    if classes.insert(key) {
                        out.push(rep);
                    }
                }
            }
        }
    }
    sort_reps(&mut out);
    Ok(out)
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, &mut out);
    out.sort_by(|a, b| a.images().cmp(b.images()));
    out
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == items.len() {
        out.push(Permutation::from_images(items.clone()).unwrap());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Canonical form of a rep under simultaneous conjugation: the minimal image
/// tuple over all conjugators.
pub fn conjugacy_key(rep: &PermRep, all: &[Permutation]) -> Vec<Vec<usize>> {
    let mut best: Option<Vec<Vec<usize>>> = None;
    for pi in all {
        let inv = pi.inverse();
        let tuple: Vec<Vec<usize>> = crate::perm::GENS
            .iter()
            .map(|&g| pi.compose(rep.gen(g)).compose(&inv).images().to_vec())
            .collect();
        if best.as_ref().map(|b| tuple < *b).unwrap_or(true) {
            best = Some(tuple);
        }
    }
    best.expect("at least the identity conjugator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    #[test]
    fn index_one_is_the_trivial_rep() {
        let sig = lookup("O333_2", None).unwrap();
        let reps = enumerate_subgroups(&EnumerationTask {
            sig: sig.clone(),
            max_index: 1,
        });
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].degree(), 1);
        let brute = brute_force_reps(&sig, 1).unwrap();
        assert_eq!(brute.len(), 1);
    }

    #[test]
    fn index_two_is_obstructed() {
        let sig = lookup("O333_2", None).unwrap();
        assert!(brute_force_reps(&sig, 2).unwrap().is_empty());
    }

    #[test]
    fn index_too_large_guard() {
        let sig = lookup("O333_2", None).unwrap();
        assert!(matches!(
            brute_force_reps(&sig, 9),
            Err(LowIndexError::IndexTooLarge(9))
        ));
    }

    #[test]
    fn enumeration_matches_brute_force_small() {
        let sig = lookup("O333_2", None).unwrap();
        let enumerated = enumerate_subgroups(&EnumerationTask {
            sig: sig.clone(),
            max_index: 4,
        });
        for k in 1..=4 {
            let brute = brute_force_reps(&sig, k).unwrap();
            let at_k: Vec<_> = enumerated.iter().filter(|r| r.degree() == k).collect();
            assert_eq!(at_k.len(), brute.len(), "degree {k}");
            let all = all_permutations(k);
            let mut keys_a: Vec<_> = at_k.iter().map(|r| conjugacy_key(r, &all)).collect();
            let mut keys_b: Vec<_> = brute.iter().map(|r| conjugacy_key(r, &all)).collect();
            keys_a.sort();
            keys_b.sort();
            assert_eq!(keys_a, keys_b, "degree {k}");
        }
    }

    #[test]
    fn every_enumerated_rep_is_valid() {
        let sig = lookup("O333_3", None).unwrap();
        let reps = enumerate_subgroups(&EnumerationTask {
            sig: sig.clone(),
            max_index: 6,
        });
        for rep in &reps {
            assert!(crate::perm::validate_rep(&sig, rep).is_valid());
        }
    }

    #[test]
    fn determinism_across_runs() {
        let sig = lookup("O333_2", None).unwrap();
        let task = EnumerationTask {
            sig,
            max_index: 6,
        };
        let a = enumerate_subgroups(&task);
        let b = enumerate_subgroups(&task);
        assert_eq!(a, b);
    }
}
