//! Bounded search for a `(144₃ 36₁₂)` picture over the twelve
//! distinguished lines.
//!
//! Red lines are drawn from a fixed pool of small-coefficient lines that
//! avoid every crossing of two black lines. Two red lines may not meet on a
//! black line. At each new best depth the lines through the red hits that
//! meet every black line in a red hit are counted as green candidates.
//! The search is a harness: it reports how far it got and never claims
//! that no realization exists.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vogelplane::{cross, distinguished_lines, dot, is_zero_triple, normalize_triple, Basis, LinearForm, Triple};

/// Coefficient bound for the red line pool.
pub const POOL_BOUND: i64 = 6;
const TARGET: usize = 12;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthStat {
    pub depth: usize,
    pub nodes: u64,
    /// Admissible red extensions summed over the nodes at this depth.
    pub candidates: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Search144Report {
    pub budget: u64,
    pub nodes: u64,
    /// True when the whole pool was searched within the budget.
    pub exhausted: bool,
    pub black_lines: usize,
    pub black_lines_distinct: bool,
    pub pool_size: usize,
    pub max_depth: usize,
    pub per_depth: Vec<DepthStat>,
    pub best_red: Vec<LinearForm>,
    pub green_candidates_at_best: usize,
    pub realization_found: bool,
}

struct State {
    black: Vec<Triple>,
    pool: Vec<Triple>,
    /// Point ids where each pool line meets the black lines, by black index.
    hits: Vec<Vec<usize>>,
    point_keys: Vec<Triple>,
    point_black: Vec<usize>,
    budget: u64,
    nodes: u64,
    stopped: bool,
    per_depth: Vec<DepthStat>,
    best: Vec<usize>,
    green_at_best: usize,
    found: bool,
}

fn line_key(c: [i64; 3]) -> Option<Triple> {
    let t: Triple = c.map(crate::rational::int);
    (!is_zero_triple(&t)).then(|| normalize_triple(&t))
}

impl State {
    fn dfs(&mut self, chosen: &mut Vec<usize>, used: &mut Vec<bool>, start: usize) {
        if self.nodes >= self.budget {
            self.stopped = true;
            return;
        }
        self.nodes += 1;
        let depth = chosen.len();
        if self.per_depth.len() <= depth {
            self.per_depth.push(DepthStat { depth, ..DepthStat::default() });
        }
        let admissible: Vec<usize> = (start..self.pool.len()).filter(|&c| self.hits[c].iter().all(|&p| !used[p])).collect();
        self.per_depth[depth].nodes += 1;
        self.per_depth[depth].candidates += admissible.len() as u64;
        if depth > self.best.len() || (depth == 0 && self.best.is_empty()) {
            self.best = chosen.clone();
            let greens = self.green_candidates(chosen, used);
            self.green_at_best = greens.len();
            if depth == TARGET && self.exact_cover(&greens, used) {
                self.found = true;
            }
        }
        if depth == TARGET || self.found {
            return;
        }
        for c in admissible {
            if self.stopped || self.found {
                return;
            }
            let h = self.hits[c].clone();
            h.iter().for_each(|&p| used[p] = true);
            chosen.push(c);
            self.dfs(chosen, used, c + 1);
            chosen.pop();
            h.iter().for_each(|&p| used[p] = false);
        }
    }

    /// Lines through two red hits on different black lines that meet every
    /// black line in a red hit and are neither black nor red.
    fn green_candidates(&self, chosen: &[usize], used: &[bool]) -> Vec<Vec<usize>> {
        let pts: Vec<usize> = (0..used.len()).filter(|&p| used[p]).collect();
        let index: HashMap<&Triple, usize> = self.point_keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let reds: Vec<&Triple> = chosen.iter().map(|&c| &self.pool[c]).collect();
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for (i, &a) in pts.iter().enumerate() {
            for &b in &pts[i + 1..] {
                if self.point_black[a] == self.point_black[b] {
                    continue;
                }
                let l = normalize_triple(&cross(&self.point_keys[a], &self.point_keys[b]));
                if reds.contains(&&l) || self.black.contains(&l) || !seen.insert(l.clone()) {
                    continue;
                }
                let mut on = Vec::with_capacity(self.black.len());
                for bl in &self.black {
                    let m = normalize_triple(&cross(&l, bl));
                    match index.get(&m) {
                        Some(&p) if used[p] => on.push(p),
                        _ => break,
                    }
                }
                if on.len() == self.black.len() {
                    out.push(on);
                }
            }
        }
        out
    }

    /// Twelve pairwise disjoint green candidates covering every red hit.
    fn exact_cover(&self, greens: &[Vec<usize>], used: &[bool]) -> bool {
        fn go(greens: &[Vec<usize>], covered: &mut Vec<bool>, left: usize, from: usize) -> bool {
            if left == 0 {
                return true;
            }
            for g in from..greens.len() {
                if greens[g].iter().all(|&p| !covered[p]) {
                    greens[g].iter().for_each(|&p| covered[p] = true);
                    if go(greens, covered, left - 1, g + 1) {
                        return true;
                    }
                    greens[g].iter().for_each(|&p| covered[p] = false);
                }
            }
            false
        }
        let mut covered: Vec<bool> = used.iter().map(|u| !u).collect();
        go(greens, &mut covered, TARGET, 0)
    }
}

/// Runs the search for at most `budget` nodes.
pub fn search_144(budget: u64) -> Result<Search144Report> {
    let black: Vec<Triple> = distinguished_lines(Basis::Primed).into_iter().map(|l| normalize_triple(l.form.coeffs())).collect();
    for a in 0..black.len() {
        for b in a + 1..black.len() {
            if black[a] == black[b] {
                return Err(Error::Degenerate(format!("distinguished lines {} and {} coincide", a + 1, b + 1)));
            }
        }
    }
    let mut crossings: Vec<Triple> = Vec::new();
    for a in 0..black.len() {
        for b in a + 1..black.len() {
            let p = normalize_triple(&cross(&black[a], &black[b]));
            if !crossings.contains(&p) {
                crossings.push(p);
            }
        }
    }
    let mut pool: Vec<Triple> = Vec::new();
    let r = POOL_BOUND;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                let Some(l) = line_key([a, b, c]) else { continue };
                if pool.contains(&l) || black.contains(&l) || crossings.iter().any(|p| dot(&l, p) == num_traits::Zero::zero()) {
                    continue;
                }
                pool.push(l);
            }
        }
    }
    let mut point_keys: Vec<Triple> = Vec::new();
    let mut point_black: Vec<usize> = Vec::new();
    let mut index: HashMap<Triple, usize> = HashMap::new();
    let hits: Vec<Vec<usize>> = pool
        .iter()
        .map(|l| {
            black
                .iter()
                .enumerate()
                .map(|(bi, bl)| {
                    let p = normalize_triple(&cross(l, bl));
                    *index.entry(p.clone()).or_insert_with(|| {
                        point_keys.push(p);
                        point_black.push(bi);
                        point_keys.len() - 1
                    })
                })
                .collect()
        })
        .collect();
    let mut st = State {
        black,
        pool,
        hits,
        point_keys,
        point_black,
        budget,
        nodes: 0,
        stopped: false,
        per_depth: Vec::new(),
        best: Vec::new(),
        green_at_best: 0,
        found: false,
    };
    let mut used = vec![false; st.point_keys.len()];
    st.dfs(&mut Vec::new(), &mut used, 0);
    let best_red = st.best.iter().map(|&c| LinearForm::new(st.pool[c].clone(), Basis::Primed).expect("nonzero")).collect();
    Ok(Search144Report {
        budget,
        nodes: st.nodes,
        exhausted: !st.stopped && !st.found,
        black_lines: st.black.len(),
        black_lines_distinct: true,
        pool_size: st.pool.len(),
        max_depth: st.best.len(),
        per_depth: st.per_depth,
        best_red,
        green_candidates_at_best: if st.nodes == 0 { 0 } else { st.green_at_best },
        realization_found: st.found,
    })
}
