//! Exhaustive generation of `(n₃)` tables up to isomorphism.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::table::{canonical_form, ConfigurationTable};
use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate_n3`].
pub const MAX_N3: usize = 10;

struct Gen {
    n: usize,
    deg: Vec<usize>,
    adj: Vec<Vec<bool>>,
    lines: Vec<[usize; 3]>,
    /// Points `0..fresh` have been used; the rest are interchangeable.
    fresh: usize,
    out: Vec<Vec<[usize; 3]>>,
}

impl Gen {
    fn new(n: usize) -> Gen {
        Gen { n, deg: vec![0; n], adj: vec![vec![false; n]; n], lines: Vec::new(), fresh: 0, out: Vec::new() }
    }

    fn can_use(&self, p: usize, a: usize) -> bool {
        self.deg[a] < 3 && !self.adj[p][a] && a <= self.fresh
    }

    fn push(&mut self, l: [usize; 3]) -> usize {
        let before = self.fresh;
        for &x in &l {
            self.deg[x] += 1;
            self.fresh = self.fresh.max(x + 1);
        }
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    self.adj[l[i]][l[j]] = true;
                }
            }
        }
        self.lines.push(l);
        before
    }

    fn pop(&mut self, fresh_before: usize) {
        let l = self.lines.pop().expect("line to pop");
        for &x in &l {
            self.deg[x] -= 1;
        }
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    self.adj[l[i]][l[j]] = false;
                }
            }
        }
        self.fresh = fresh_before;
    }

    /// Completes the lines through the first point of degree < 3. Lines
    /// through smaller points are already complete, so new lines only use
    /// larger points; pairs through one point are added in increasing order.
    fn run(&mut self, last: Option<(usize, usize, usize)>) {
        let Some(p) = (0..self.n).find(|&x| self.deg[x] < 3) else {
            self.out.push(self.lines.clone());
            return;
        };
        let (lo_a, lo_b) = match last {
            Some((q, a, b)) if q == p => (a, b + 1),
            _ => (p + 1, 0),
        };
        let saved = self.fresh;
        self.fresh = self.fresh.max(p + 1);
        for a in lo_a..self.n {
            if !self.can_use(p, a) {
                continue;
            }
            let b_start = if a == lo_a { lo_b.max(a + 1) } else { a + 1 };
            let fresh_a = self.fresh.max(a + 1);
            for b in b_start..self.n {
                if self.deg[b] >= 3 || self.adj[p][b] || self.adj[a][b] || b > fresh_a {
                    continue;
                }
                let before = self.push([p, a, b]);
                self.run(Some((p, a, b)));
                self.pop(before);
            }
        }
        self.fresh = saved;
    }
}

fn to_table(n: usize, lines: &[[usize; 3]]) -> ConfigurationTable {
    let columns = lines.iter().map(|l| l.iter().map(|x| x + 1).collect()).collect();
    ConfigurationTable::new(n, n, 3, 3, columns)
}

/// All `(n₃)` configuration tables up to isomorphism, in canonical form
/// and sorted.
pub fn enumerate_n3(n: usize) -> Result<Vec<ConfigurationTable>> {
    if n > MAX_N3 {
        return Err(Error::OutOfRange(format!("enumerate_n3 supports n ≤ {MAX_N3}, got {n}")));
    }
    if n < 3 {
        return Ok(Vec::new());
    }
    let mut g = Gen::new(n);
    g.run(None);
    let raw = g.out;
    let canon: BTreeSet<ConfigurationTable> = raw.par_iter().map(|ls| canonical_form(&to_table(n, ls))).collect::<Vec<_>>().into_iter().collect();
    Ok(canon.into_iter().collect())
}

/// Number of labeled tables the generator visits before dedup; exposed for
/// reporting.
pub fn raw_count_n3(n: usize) -> Result<usize> {
    if n > MAX_N3 {
        return Err(Error::OutOfRange(format!("enumerate_n3 supports n ≤ {MAX_N3}, got {n}")));
    }
    if n < 3 {
        return Ok(0);
    }
    let mut g = Gen::new(n);
    g.run(None);
    Ok(g.out.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        for n in 0..7 {
            assert!(enumerate_n3(n).unwrap().is_empty(), "n={n}");
        }
        let fano = enumerate_n3(7).unwrap();
        assert_eq!(fano.len(), 1);
        assert!(fano[0].is_valid());
        assert_eq!(enumerate_n3(8).unwrap().len(), 1);
    }

    #[test]
    fn nine_has_three_classes() {
        let t = enumerate_n3(9).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.iter().all(ConfigurationTable::is_valid));
    }

    #[test]
    fn bound_enforced() {
        assert!(enumerate_n3(11).is_err());
    }
}
