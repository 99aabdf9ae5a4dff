//! Exhaustive searches over pairing permutations and multipliers.
//!
//! The quantum search runs over all permutation tuples and ±1 multiplier
//! vectors with product +1. Tuples related by a simultaneous relabeling of
//! the factor indices describe the same factors, so only the
//! lexicographically smallest representative of each relabeling orbit is
//! solved. With four lines the three-line part is solved first; if it has
//! no nontrivial solution, no extension by `(v, r)` can have one.
//!
//! The classical three-line classifier handles continuous multipliers by
//! stratifying them: the solution space only depends on which cycle
//! products of the multipliers equal 1, so each stratum is sampled at a
//! generic point of every sign component.

use std::collections::HashSet;

use num_rational::Rational64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::builtins::match_q33;
use super::perm::{Perm, PermTriple};
use super::solve::{family_from_basis, solve, SolutionFamily, SolveOutcome};
use super::system::{build_system, equation_rows, LineSet, MultiplierAssignment};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, nullspace_with_free, rref};
use crate::rational::Rational;

/// All ±1 vectors of length `k` with product +1, as bit masks (bit set = −1).
fn sign_masks(k: usize) -> Vec<u32> {
    (0u32..(1 << k)).filter(|m| m.count_ones() % 2 == 0).collect()
}

fn mask_signs(mask: u32, k: usize) -> Vec<i8> {
    (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect()
}

fn conj_mask(mask: u32, tau: &Perm) -> u32 {
    (0..tau.k()).filter(|&i| mask >> i & 1 == 1).fold(0, |acc, i| acc | 1 << tau.apply(i))
}

#[derive(Clone, Debug)]
struct Prefix {
    s: Perm,
    p: Perm,
    c: u32,
    kmul: u32,
}

impl Prefix {
    fn key(&self) -> (Vec<usize>, Vec<usize>, Vec<i8>, Vec<i8>) {
        let k = self.s.k();
        (
            self.s.images().to_vec(),
            self.p.images().to_vec(),
            mask_key(self.c, k),
            mask_key(self.kmul, k),
        )
    }

    fn conjugate(&self, tau: &Perm) -> Prefix {
        Prefix {
            s: self.s.conjugate_by(tau),
            p: self.p.conjugate_by(tau),
            c: conj_mask(self.c, tau),
            kmul: conj_mask(self.kmul, tau),
        }
    }
}

/// Ordering key for a multiplier mask: `+1` sorts before `−1` position by
/// position.
fn mask_key(mask: u32, k: usize) -> Vec<i8> {
    mask_signs(mask, k).iter().map(|&x| -x).collect()
}

/// Result of a fast ±1 solve.
enum Fast {
    Infeasible,
    Trivial,
    Nontrivial,
}

fn to_r64(signs: &[i8]) -> Vec<Rational64> {
    signs.iter().map(|&x| Rational64::from_integer(x as i64)).collect()
}

/// Solves a ±1 system in machine rationals and probes triviality with two
/// random instantiations.
fn fast_solve(perms: &PermTriple, c: &[i8], kmul: &[i8], r: Option<&[i8]>, seed: u64) -> Fast {
    let k = perms.k();
    let (c, kk) = (to_r64(c), to_r64(kmul));
    let r = r.map(to_r64);
    let rows = equation_rows(perms, &c, &kk, r.as_deref());
    let basis = nullspace(&rows, 3 * k);
    if basis.is_empty() {
        return Fast::Infeasible;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut survived = 0;
    let mut attempts = 0;
    while survived < 2 {
        attempts += 1;
        if attempts > 100 {
            return Fast::Infeasible;
        }
        let mut v = vec![Rational64::zero(); 3 * k];
        for b in &basis {
            let t = Rational64::from_integer(rng.gen_range(-1000..=1000));
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi += t * bi;
            }
        }
        let num: Vec<[Rational64; 3]> = (0..k).map(|i| [v[i], v[k + i], v[2 * k + i]]).collect();
        let den: Vec<[Rational64; 3]> = (0..k).map(|i| [c[i] * v[perms.p.apply(i)], v[k + i], v[2 * k + i]]).collect();
        let zero = |f: &[Rational64; 3]| f.iter().all(Zero::is_zero);
        if num.iter().chain(&den).any(zero) {
            continue;
        }
        let mut used = vec![false; k];
        let mut left = 0;
        for a in &num {
            let hit = (0..k).find(|&j| !used[j] && (den[j] == *a || den[j] == a.map(|x| -x)));
            match hit {
                Some(j) => used[j] = true,
                None => left += 1,
            }
        }
        if left == 0 {
            return Fast::Trivial;
        }
        survived += 1;
    }
    Fast::Nontrivial
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub k: usize,
    pub lines: LineSet,
    pub quantum: bool,
    /// Three-line tuples `(s, p, c, k)` before relabeling reduction.
    pub prefixes_total: u64,
    /// Orbit representatives among them.
    pub prefixes_canonical: u64,
    pub prefixes_examined: u64,
    /// Prefixes whose three-line system has a nontrivial solution.
    pub prefixes_nontrivial: u64,
    /// Four-line extensions `(v, r)` solved.
    pub extensions_solved: u64,
    /// True when the budget stopped the search early.
    pub partial: bool,
    pub families: Vec<SolutionFamily>,
}

/// Enumerates nontrivial solution families of the quantum (±1) systems.
/// `budget` bounds the number of three-line prefixes examined.
pub fn enumerate(k: usize, lines: LineSet, quantum: bool, budget: Option<u64>, seed: u64) -> Result<SearchReport> {
    if !quantum {
        return Err(Error::InvalidSystem(
            "classical multipliers form a continuum; use the three-line classifier or verify a given assignment".into(),
        ));
    }
    if k == 0 || k > 6 {
        return Err(Error::OutOfRange(format!("k must be in 1..=6, got {k}")));
    }
    let perms = Perm::all(k);
    let masks = sign_masks(k);
    let mut canonical = Vec::new();
    let mut total = 0u64;
    for s in &perms {
        for p in &perms {
            for &c in &masks {
                for &km in &masks {
                    total += 1;
                    let pre = Prefix { s: s.clone(), p: p.clone(), c, kmul: km };
                    let key = pre.key();
                    if perms.iter().all(|tau| pre.conjugate(tau).key() >= key) {
                        canonical.push(pre);
                    }
                }
            }
        }
    }
    let n_canonical = canonical.len() as u64;
    let take = budget.map_or(canonical.len(), |b| (b as usize).min(canonical.len()));
    let partial = take < canonical.len();
    let work = &canonical[..take];

    let results: Vec<(bool, u64, Vec<SolutionFamily>)> = work
        .par_iter()
        .enumerate()
        .map(|(idx, pre)| {
            let case_seed = seed ^ (idx as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
            let three = PermTriple { s: pre.s.clone(), p: pre.p.clone(), v: None };
            let (cs, ks) = (mask_signs(pre.c, k), mask_signs(pre.kmul, k));
            let prefix_ok = matches!(fast_solve(&three, &cs, &ks, None, case_seed), Fast::Nontrivial);
            if !prefix_ok {
                return (false, 0, Vec::new());
            }
            match lines {
                LineSet::Three => {
                    let mult = MultiplierAssignment::from_signs(&cs, &ks, None);
                    let fams = exact_family(k, lines, three, mult, case_seed).into_iter().collect();
                    (true, 0, fams)
                }
                LineSet::Four => {
                    let stab: Vec<&Perm> = perms.iter().filter(|tau| pre.conjugate(tau).key() == pre.key()).collect();
                    let mut solved = 0;
                    let mut fams = Vec::new();
                    for v in &perms {
                        for &r in &masks {
                            let key = (v.images().to_vec(), mask_key(r, k));
                            let minimal = stab
                                .iter()
                                .all(|tau| (v.conjugate_by(tau).images().to_vec(), mask_key(conj_mask(r, tau), k)) >= key);
                            if !minimal {
                                continue;
                            }
                            solved += 1;
                            let full = PermTriple { s: pre.s.clone(), p: pre.p.clone(), v: Some(v.clone()) };
                            let rs = mask_signs(r, k);
                            let ext_seed = case_seed ^ ((v.images().iter().fold(0u64, |a, &i| a * 8 + i as u64) << 8) | r as u64);
                            if matches!(fast_solve(&full, &cs, &ks, Some(&rs), ext_seed), Fast::Nontrivial) {
                                let mult = MultiplierAssignment::from_signs(&cs, &ks, Some(&rs));
                                fams.extend(exact_family(k, lines, full, mult, ext_seed));
                            }
                        }
                    }
                    (true, solved, fams)
                }
            }
        })
        .collect();

    let mut report = SearchReport {
        k,
        lines,
        quantum,
        prefixes_total: total,
        prefixes_canonical: n_canonical,
        prefixes_examined: take as u64,
        prefixes_nontrivial: 0,
        extensions_solved: 0,
        partial,
        families: Vec::new(),
    };
    for (ok, solved, fams) in results {
        report.prefixes_nontrivial += ok as u64;
        report.extensions_solved += solved;
        report.families.extend(fams);
    }
    Ok(report)
}

/// Exact re-solve of a case the fast path found nontrivial.
fn exact_family(k: usize, lines: LineSet, perms: PermTriple, mult: MultiplierAssignment, seed: u64) -> Option<SolutionFamily> {
    let sys = build_system(k, lines, perms, mult).ok()?;
    match solve(&sys, true, seed) {
        SolveOutcome::Family(f) => Some(f),
        _ => None,
    }
}

/// Classification of one `(s, p)` pair of the classical three-line system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairClassification {
    pub s: Perm,
    pub p: Perm,
    /// Multiplier strata × sign components sampled.
    pub components: u64,
    /// Components whose generic solution is nontrivial.
    pub nontrivial_components: u64,
    /// Nontrivial components whose generic instance is the closed-form
    /// three-line factor up to relabeling.
    pub matched_closed_form: u64,
    pub example: Option<SolutionFamily>,
}

impl PairClassification {
    pub fn nontrivial(&self) -> bool {
        self.nontrivial_components > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalReport {
    pub k: usize,
    pub pairs: Vec<PairClassification>,
}

impl ClassicalReport {
    pub fn nontrivial_pairs(&self) -> Vec<&PairClassification> {
        self.pairs.iter().filter(|p| p.nontrivial()).collect()
    }
}

/// Exponent row (over `c₁…c_k, k₁…k_k`) of a cycle-product condition.
fn cycle_rows(s: &Perm, p: &Perm) -> Vec<Vec<i64>> {
    let k = s.k();
    let mut rows = Vec::new();
    for cyc in p.cycles() {
        let mut r = vec![0; 2 * k];
        cyc.iter().for_each(|&i| r[i] = 1);
        rows.push(r);
    }
    for cyc in s.cycles() {
        let mut r = vec![0; 2 * k];
        cyc.iter().for_each(|&i| r[k + i] = 1);
        rows.push(r);
    }
    // n_j = w_j·n_{τ(j)} with τ = p∘s⁻¹ and w_j = c_{s⁻¹(j)}/k_{s⁻¹(j)}
    let sinv = s.inverse();
    let tau = p.compose(&sinv);
    for cyc in tau.cycles() {
        let mut r = vec![0; 2 * k];
        for &j in &cyc {
            let i = sinv.apply(j);
            r[i] += 1;
            r[k + i] -= 1;
        }
        rows.push(r);
    }
    rows
}

fn pow_rational(base: &Rational, e: i64) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e.unsigned_abs() {
        out *= base;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

/// Integer vectors spanning the rational kernel of `a`.
fn integer_kernel(a: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let rows: Vec<Vec<Rational64>> = a.iter().map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect()).collect();
    nullspace(&rows, ncols)
        .into_iter()
        .map(|v| {
            let l = v.iter().fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
            v.iter().map(|x| x.numer() * (l / x.denom())).collect()
        })
        .collect()
}

fn classify_pair(s: &Perm, p: &Perm, seed: u64) -> PairClassification {
    let k = s.k();
    let conds = cycle_rows(s, p);
    let mut base = vec![vec![0i64; 2 * k], vec![0i64; 2 * k]];
    (0..k).for_each(|i| {
        base[0][i] = 1;
        base[1][k + i] = 1;
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashSet<Vec<Vec<Rational64>>> = HashSet::new();
    let mut out = PairClassification {
        s: s.clone(),
        p: p.clone(),
        components: 0,
        nontrivial_components: 0,
        matched_closed_form: 0,
        example: None,
    };
    for mask in 0u32..(1 << conds.len()) {
        let mut a = base.clone();
        a.extend(conds.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, r)| r.clone()));
        let mut key: Vec<Vec<Rational64>> =
            a.iter().map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect()).collect();
        rref(&mut key, 2 * k);
        if !seen.insert(key) {
            continue;
        }
        let kernel = integer_kernel(&a, 2 * k);
        let parity_ok = |bits: u32| a.iter().all(|r| (0..2 * k).filter(|&j| bits >> j & 1 == 1).map(|j| r[j]).sum::<i64>() % 2 == 0);
        for bits in (0u32..(1 << (2 * k))).filter(|&b| parity_ok(b)) {
            out.components += 1;
            let ts: Vec<Rational> = kernel
                .iter()
                .map(|_| loop {
                    let t = Rational::new(rng.gen_range(2i64..=97).into(), rng.gen_range(1i64..=97).into());
                    if !t.is_one() {
                        break t;
                    }
                })
                .collect();
            let mult_at = |j: usize| -> Rational {
                let mag = kernel.iter().zip(&ts).fold(Rational::one(), |acc, (b, t)| acc * pow_rational(t, b[j]));
                if bits >> j & 1 == 1 {
                    -mag
                } else {
                    mag
                }
            };
            let all: Vec<Rational> = (0..2 * k).map(mult_at).collect();
            let mult = MultiplierAssignment { c: all[..k].to_vec(), kmul: all[k..].to_vec(), r: None };
            let perms = PermTriple { s: s.clone(), p: p.clone(), v: None };
            let Ok(sys) = build_system(k, LineSet::Three, perms, mult) else { continue };
            let rows: Vec<Vec<Rational>> = sys.equations.iter().map(|e| e.coeffs.clone()).collect();
            let (free, basis) = nullspace_with_free(&rows, 3 * k);
            let case_seed = rng.gen();
            if let SolveOutcome::Family(fam) = family_from_basis(sys, false, free, basis, case_seed) {
                out.nontrivial_components += 1;
                let mut r2 = ChaCha8Rng::seed_from_u64(case_seed ^ 1);
                let matched = fam.random_instance(&mut r2).ok().and_then(|(_, f)| match_q33(&f)).is_some();
                out.matched_closed_form += matched as u64;
                if out.example.is_none() {
                    out.example = Some(fam);
                }
            }
        }
    }
    out
}

/// Classifies every `(s, p)` pair of the classical three-line system with
/// `k` factors.
pub fn classify_three_line_classical(k: usize, seed: u64) -> Result<ClassicalReport> {
    if k == 0 || k > 4 {
        return Err(Error::OutOfRange(format!("k must be in 1..=4, got {k}")));
    }
    let perms = Perm::all(k);
    let pairs: Vec<(Perm, Perm)> = perms.iter().flat_map(|s| perms.iter().map(move |p| (s.clone(), p.clone()))).collect();
    let pairs = pairs
        .par_iter()
        .enumerate()
        .map(|(i, (s, p))| classify_pair(s, p, seed ^ (i as u64 + 1).wrapping_mul(0x2545_f491_4f6c_dd1d)))
        .collect();
    Ok(ClassicalReport { k, pairs })
}
