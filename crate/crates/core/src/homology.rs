//! First homology via Smith normal form over exact big integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A finitely generated abelian group in normal form: free rank plus torsion
/// coefficients d1 | d2 | .. , each greater than 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn is_infinite_cyclic(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Invariant factors of an integer matrix, nonzero and in divisibility order.
///
/// Elimination pivots on a minimal-absolute-value entry of the remaining
/// block to limit entry growth; row and column operations are unimodular.
pub fn smith_invariants(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut invariants = Vec::new();

    let mut k = 0;
    'stage: while k < rows.min(cols) {
        // Pivot: minimal nonzero absolute value in the trailing block. Each
        // restart below strictly shrinks that minimum, so the stage ends.
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !m[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj): (usize, usize)| m[i][j].abs() < m[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }

        // Clear column k, then row k; a nonzero remainder is strictly
        // smaller than the pivot, so restart the stage on it.
        for i in k + 1..rows {
            if m[i][k].is_zero() {
                continue;
            }
            let q = div_nearest(&m[i][k], &m[k][k]);
            for j in k..cols {
                let sub = &q * &m[k][j];
                m[i][j] -= sub;
            }
            if !m[i][k].is_zero() {
                continue 'stage;
            }
        }
        for j in k + 1..cols {
            if m[k][j].is_zero() {
                continue;
            }
            let q = div_nearest(&m[k][j], &m[k][k]);
            for row in m.iter_mut() {
                let sub = &q * &row[k];
                row[j] -= sub;
            }
            if !m[k][j].is_zero() {
                continue 'stage;
            }
        }

        // Enforce divisibility: if the pivot misses an entry of the trailing
        // block, fold that row in and redo the stage.
        for i in k + 1..rows {
            if m[i][k + 1..].iter().any(|v| !(v % &m[k][k]).is_zero()) {
                let add: Vec<BigInt> = m[i][k..].to_vec();
                for (j2, v) in add.into_iter().enumerate() {
                    m[k][k + j2] += v;
                }
                continue 'stage;
            }
        }

        invariants.push(m[k][k].abs());
        k += 1;
    }
    invariants
}

// Rounded division keeps remainders at most half the divisor.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Cokernel of the relation matrix acting on `generators` symbols.
pub fn first_homology_of_matrix(matrix: &[Vec<i64>], generators: usize) -> AbelianGroup {
    let big: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let inv = smith_invariants(&big);
    let one = BigInt::from(1);
    let torsion: Vec<BigInt> = inv.iter().filter(|d| **d > one).cloned().collect();
    AbelianGroup {
        rank: generators - inv.len(),
        torsion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn known_invariant_factors() {
        let m = big(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        assert_eq!(
            smith_invariants(&m),
            vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]
        );
    }

    #[test]
    fn cyclic_presentation() {
        // <a | a^3> abelianized.
        let h = first_homology_of_matrix(&[vec![3]], 1);
        assert_eq!(h.rank, 0);
        assert_eq!(h.torsion, vec![BigInt::from(3)]);
        assert_eq!(h.to_string(), "Z/3");
    }

    #[test]
    fn free_part() {
        let h = first_homology_of_matrix(&[vec![0, 0]], 2);
        assert_eq!(h.rank, 2);
        assert!(h.torsion.is_empty());
        assert_eq!(h.to_string(), "Z^2");
    }

    #[test]
    fn divisibility_chain() {
        let m = big(&[&[2, 0], &[0, 3]]);
        let inv = smith_invariants(&m);
        assert_eq!(inv, vec![BigInt::from(1), BigInt::from(6)]);
    }
}
