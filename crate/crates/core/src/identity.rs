//! Deciding whether a factor product is identically 1 on a line (or on the
//! whole plane).
//!
//! Classical products are restricted to the line as binary linear forms in
//! `(s, t)` and both sides are expanded to degree-`k` binary forms. Quantum
//! products use multiset matching of the restricted forms up to sign, which
//! is exact for sinh products.

use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{EvalResult, FactorProduct};
use crate::poly::convolve;
use crate::rational::{fmt_rational, random_nonzero, serde_rational, to_f64, Rational};
use crate::vogelplane::{
    cross, incident, is_zero_triple, proportionality, Basis, LinearForm, Perm3, PlaneObject,
    ProjPoint, Triple,
};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Numerator/denominator bound for random witness coordinates.
pub const WITNESS_BOUND: i64 = 1000;

const REL_TOL: f64 = 1e-9;

/// A line with two spanning points; `s·p0 + t·p1` runs over the line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineParam {
    pub line: LinearForm,
    pub p0: ProjPoint,
    pub p1: ProjPoint,
}

impl LineParam {
    /// Spanning points taken from `line × eᵢ` in coordinate order.
    pub fn new(line: &LinearForm) -> LineParam {
        let basis = line.basis();
        let mut found: Vec<Triple> = Vec::with_capacity(2);
        for i in 0..3 {
            let mut e: Triple = [Rational::zero(), Rational::zero(), Rational::zero()];
            e[i] = Rational::one();
            let c = cross(line.coeffs(), &e);
            if is_zero_triple(&c) || found.iter().any(|f| proportionality(f, &c).is_some()) {
                continue;
            }
            found.push(c);
            if found.len() == 2 {
                break;
            }
        }
        let p1 = found.pop().expect("a line has two independent points");
        let p0 = found.pop().expect("a line has two independent points");
        LineParam {
            line: line.clone(),
            p0: ProjPoint::new(p0, basis).expect("nonzero"),
            p1: ProjPoint::new(p1, basis).expect("nonzero"),
        }
    }

    pub fn with_points(line: &LinearForm, p0: ProjPoint, p1: ProjPoint) -> Result<LineParam> {
        if !incident(&p0, line) || !incident(&p1, line) {
            return Err(Error::Degenerate("spanning points must lie on the line".into()));
        }
        if p0 == p1 {
            return Err(Error::Degenerate("spanning points coincide".into()));
        }
        Ok(LineParam { line: line.clone(), p0, p1 })
    }

    /// The point `s·p0 + t·p1`, in the basis of `p0`.
    pub fn point(&self, s: &Rational, t: &Rational) -> Option<ProjPoint> {
        let q1 = self.p1.in_basis(self.p0.basis());
        let c = [0, 1, 2].map(|i| s * &self.p0.coords()[i] + t * &q1.coords()[i]);
        ProjPoint::new(c, self.p0.basis()).ok()
    }

    /// Restriction of a form: `(f(p0), f(p1))`, meaning `f(p0)·s + f(p1)·t`.
    pub fn restrict_form(&self, f: &LinearForm) -> BinaryForm {
        BinaryForm([f.eval(&self.p0), f.eval(&self.p1)])
    }
}

/// `a·s + b·t`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm(pub [Rational; 2]);

impl BinaryForm {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Sign making the first nonzero coefficient positive, and the
    /// normalized form.
    pub fn sign_normalized(&self) -> (BinaryForm, i8) {
        let first = self.0.iter().find(|c| !c.is_zero());
        match first {
            Some(c) if c.is_negative() => (BinaryForm([-self.0[0].clone(), -self.0[1].clone()]), -1),
            _ => (self.clone(), 1),
        }
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        &self.0[0] * s + &self.0[1] * t
    }
}

impl std::fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}·s + {}·t", fmt_rational(&self.0[0]), fmt_rational(&self.0[1]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Num,
    Den,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRef {
    pub side: Side,
    /// 0-based factor index.
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub num: Vec<BinaryForm>,
    pub den: Vec<BinaryForm>,
}

/// Restricts every factor of `f` to the line. Fails with the list of
/// factors that vanish identically on it.
pub fn restrict(f: &FactorProduct, lp: &LineParam) -> std::result::Result<Restriction, Vec<FactorRef>> {
    let num: Vec<BinaryForm> = f.num().iter().map(|g| lp.restrict_form(g)).collect();
    let den: Vec<BinaryForm> = f.den().iter().map(|g| lp.restrict_form(g)).collect();
    let mut vanishing = Vec::new();
    for (side, forms) in [(Side::Num, &num), (Side::Den, &den)] {
        for (index, b) in forms.iter().enumerate() {
            if b.is_zero() {
                vanishing.push(FactorRef { side, index });
            }
        }
    }
    if vanishing.is_empty() {
        Ok(Restriction { num, den })
    } else {
        Err(vanishing)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    IdenticallyOne,
    IdenticallyConstant {
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    NotConstant,
    VanishingFactor { factors: Vec<FactorRef> },
}

/// Numerator factor `num` cancels denominator factor `den` on the line with
/// ratio `num/den = ratio`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub num: usize,
    pub den: usize,
    #[serde(with = "serde_rational")]
    pub ratio: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Matching { pairs: Vec<MatchedPair> },
    ClassicalSample { point: ProjPoint, value: EvalResult },
    QuantumSample { point: ProjPoint, x: f64, value: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    /// `None` for the whole-plane check.
    pub line: Option<LinearForm>,
    pub quantum: bool,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl IdentityReport {
    pub fn is_one(&self) -> bool {
        self.verdict == Verdict::IdenticallyOne
    }
}

/// Greedy pairing of numerator and denominator forms; `legal` decides which
/// ratios may cancel. Returns `None` unless every factor is paired.
fn pair_forms(num: &[BinaryForm], den: &[BinaryForm], legal: impl Fn(&Rational) -> bool) -> Option<Vec<MatchedPair>> {
    let mut used = vec![false; den.len()];
    let mut pairs = Vec::with_capacity(num.len());
    for (i, a) in num.iter().enumerate() {
        let hit = den.iter().enumerate().find_map(|(j, b)| {
            if used[j] {
                return None;
            }
            let r = binary_ratio(a, b)?;
            legal(&r).then_some((j, r))
        })?;
        used[hit.0] = true;
        pairs.push(MatchedPair { num: i, den: hit.0, ratio: hit.1 });
    }
    Some(pairs)
}

/// `λ` with `a = λ·b`, if any.
fn binary_ratio(a: &BinaryForm, b: &BinaryForm) -> Option<Rational> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    if &a.0[0] * &b.0[1] != &a.0[1] * &b.0[0] {
        return None;
    }
    Some(if b.0[0].is_zero() { &a.0[1] / &b.0[1] } else { &a.0[0] / &b.0[0] })
}

fn expand(forms: &[BinaryForm], scalar: &Rational) -> Vec<Rational> {
    forms.iter().fold(vec![scalar.clone()], |acc, b| convolve(&acc, &b.0))
}

fn classical_witness(f: &FactorProduct, lp: &LineParam, seed: u64) -> Option<Witness> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let s = random_nonzero(&mut rng, WITNESS_BOUND);
        let t = random_nonzero(&mut rng, WITNESS_BOUND);
        let Some(p) = lp.point(&s, &t) else { continue };
        if let EvalResult::Finite(v) = f.eval_classical(&p) {
            if !v.is_zero() && !v.is_one() {
                return Some(Witness::ClassicalSample { point: p, value: EvalResult::Finite(v) });
            }
        }
    }
    None
}

/// x values scaled so every `x·uᵢ` stays moderate.
fn sample_xs(f: &FactorProduct, p: &ProjPoint) -> Vec<f64> {
    let (nv, dv) = f.factor_values(p);
    let scale = nv.iter().chain(&dv).map(|v| to_f64(v).abs()).fold(1e-300, f64::max);
    [0.1, 0.35, 0.6, 0.85, 1.1].iter().map(|x| x / scale).collect()
}

fn quantum_witness(f: &FactorProduct, lp: &LineParam, seed: u64) -> Option<Witness> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, Witness)> = None;
    for _ in 0..50 {
        let s = random_nonzero(&mut rng, WITNESS_BOUND);
        let t = random_nonzero(&mut rng, WITNESS_BOUND);
        let Some(p) = lp.point(&s, &t) else { continue };
        for x in sample_xs(f, &p) {
            let Ok(value) = f.eval_quantum(&p, x) else { continue };
            let dev = (value - 1.0).abs();
            if best.as_ref().is_none_or(|(d, _)| dev > *d) {
                best = Some((dev, Witness::QuantumSample { point: p.clone(), x, value }));
            }
        }
        if best.as_ref().is_some_and(|(d, _)| *d > 1e-3) {
            break;
        }
    }
    best.map(|(_, w)| w)
}

/// Classical test by full binary-form expansion.
pub fn is_one_on_line_classical(f: &FactorProduct, line: &LinearForm, seed: u64) -> IdentityReport {
    let f = f.as_classical();
    let lp = LineParam::new(line);
    let report = |verdict, witness| IdentityReport { line: Some(line.clone()), quantum: false, verdict, witness };
    let r = match restrict(&f, &lp) {
        Ok(r) => r,
        Err(factors) => return report(Verdict::VanishingFactor { factors }, None),
    };
    let pnum = expand(&r.num, f.multiplier());
    let pden = expand(&r.den, &Rational::one());
    let matching = pair_forms(&r.num, &r.den, |_| true).map(|pairs| Witness::Matching { pairs });
    if pnum == pden {
        return report(Verdict::IdenticallyOne, matching);
    }
    // constant ratio: pnum = c·pden coefficientwise
    let lead = pden.iter().position(|c| !c.is_zero()).expect("nonzero product");
    let c = &pnum[lead] / &pden[lead];
    if pnum.iter().zip(&pden).all(|(a, b)| a == &(&c * b)) {
        return report(Verdict::IdenticallyConstant { value: c }, matching);
    }
    report(Verdict::NotConstant, classical_witness(&f, &lp, seed))
}

/// Quantum test by Lemma matching: the sign-normalized restricted forms of
/// numerator and denominator must coincide as multisets, with the overall
/// sign (including every normalization flip) equal to +1.
pub fn is_one_on_line_quantum(f: &FactorProduct, line: &LinearForm, seed: u64) -> IdentityReport {
    let lp = LineParam::new(line);
    let report = |verdict, witness| IdentityReport { line: Some(line.clone()), quantum: true, verdict, witness };
    let f = match f.as_quantum() {
        Ok(q) => q,
        Err(_) => return report(Verdict::NotConstant, None),
    };
    let r = match restrict(&f, &lp) {
        Ok(r) => r,
        Err(factors) => return report(Verdict::VanishingFactor { factors }, None),
    };
    let normalize = |forms: &[BinaryForm]| -> (Vec<BinaryForm>, i8) {
        let mut sign = 1;
        let mut out: Vec<BinaryForm> = forms
            .iter()
            .map(|b| {
                let (n, s) = b.sign_normalized();
                sign *= s;
                n
            })
            .collect();
        out.sort();
        (out, sign)
    };
    let (nn, ns) = normalize(&r.num);
    let (dn, ds) = normalize(&r.den);
    if nn != dn {
        return report(Verdict::NotConstant, quantum_witness(&f, &lp, seed));
    }
    let pairs = pair_forms(&r.num, &r.den, crate::rational::is_unit_sign).expect("multisets match");
    let total = f.sign() * ns * ds;
    let witness = Some(Witness::Matching { pairs });
    if total == 1 {
        report(Verdict::IdenticallyOne, witness)
    } else {
        report(Verdict::IdenticallyConstant { value: -Rational::one() }, witness)
    }
}

pub fn check_on_line(f: &FactorProduct, line: &LinearForm, seed: u64) -> IdentityReport {
    if f.is_quantum() {
        is_one_on_line_quantum(f, line, seed)
    } else {
        is_one_on_line_classical(f, line, seed)
    }
}

pub fn check_on_lines(f: &FactorProduct, lines: &[LinearForm], seed: u64) -> Vec<IdentityReport> {
    lines.par_iter().map(|l| check_on_line(f, l, seed)).collect()
}

/// Small points tried before random ones when looking for a whole-plane
/// witness.
const PLANE_PROBES: [[i64; 3]; 4] = [[1, 1, 1], [1, 2, 3], [3, -1, 2], [2, 5, -7]];

/// Whole-plane test. Linear forms are irreducible, so a product is
/// constant iff it cancels completely.
pub fn check_on_plane(f: &FactorProduct, seed: u64) -> IdentityReport {
    let c = f.cancel();
    let report = |verdict, witness| IdentityReport { line: None, quantum: f.is_quantum(), verdict, witness };
    if c.is_empty() {
        return if c.multiplier().is_one() {
            report(Verdict::IdenticallyOne, None)
        } else {
            report(Verdict::IdenticallyConstant { value: c.multiplier().clone() }, None)
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probes = PLANE_PROBES.iter().map(|p| ProjPoint::from_ints(*p, f.basis()).expect("nonzero")).chain(
        std::iter::repeat_with(move || {
            let t = [0; 3].map(|_| random_nonzero(&mut rng, WITNESS_BOUND));
            ProjPoint::new(t, f.basis()).expect("nonzero")
        })
        .take(200),
    );
    for p in probes {
        if f.is_quantum() {
            for x in sample_xs(f, &p) {
                if let Ok(value) = f.eval_quantum(&p, x) {
                    if (value - 1.0).abs() > 1e-6 {
                        return report(Verdict::NotConstant, Some(Witness::QuantumSample { point: p, x, value }));
                    }
                }
            }
        } else if let EvalResult::Finite(v) = f.eval_classical(&p) {
            if !v.is_one() {
                return report(Verdict::NotConstant, Some(Witness::ClassicalSample { point: p, value: EvalResult::Finite(v) }));
            }
        }
    }
    report(Verdict::NotConstant, None)
}

/// Samples random points on the line (and five values of x for quantum
/// products) and reports whether the numbers agree with the symbolic
/// verdict.
pub fn numeric_crosscheck(f: &FactorProduct, line: &LinearForm, samples: usize, seed: u64) -> Result<bool> {
    let report = check_on_line(f, line, seed);
    let lp = LineParam::new(line);
    let expected: Option<f64> = match &report.verdict {
        Verdict::IdenticallyOne => Some(1.0),
        Verdict::IdenticallyConstant { value } => Some(to_f64(value)),
        Verdict::NotConstant => None,
        Verdict::VanishingFactor { .. } => {
            return Err(Error::Degenerate("a factor vanishes identically on the line".into()))
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let mut max_dev: f64 = 0.0;
    let mut seen = 0;
    let mut draws = 0;
    while seen < samples && draws < samples * 20 + 20 {
        draws += 1;
        let s = random_nonzero(&mut rng, WITNESS_BOUND);
        let t = random_nonzero(&mut rng, WITNESS_BOUND);
        let Some(p) = lp.point(&s, &t) else { continue };
        let values: Vec<f64> = if f.is_quantum() {
            let xs = sample_xs(f, &p);
            let v: std::result::Result<Vec<f64>, _> = xs.iter().map(|&x| f.eval_quantum(&p, x)).collect();
            match v {
                Ok(v) => v,
                Err(_) => continue,
            }
        } else {
            match f.eval_classical(&p) {
                EvalResult::Finite(v) => vec![to_f64(&v)],
                _ => continue,
            }
        };
        seen += 1;
        let reference = expected.unwrap_or(1.0);
        for v in values {
            let dev = (v - reference).abs() / reference.abs().max(1.0);
            max_dev = max_dev.max(dev);
        }
    }
    if seen == 0 {
        return Err(Error::Degenerate("no nonsingular sample found on the line".into()));
    }
    Ok(match expected {
        Some(_) => max_dev < REL_TOL,
        None => max_dev > REL_TOL,
    })
}

/// True iff the product is unchanged (as a function) by both generating
/// transpositions α↔β and β↔γ.
pub fn check_symmetric(f: &FactorProduct) -> bool {
    Perm3::generators().iter().all(|g| {
        let moved = f.act(g);
        moved.ratio(f).map(|r| r.is_trivial()).unwrap_or(false)
    })
}

/// Convenience: the three basic lines, optionally with sp, in the basis of
/// the formula.
pub fn basic_lines(with_sp: bool) -> Vec<LinearForm> {
    let mut v = vec![LinearForm::primed([1, 0, 0]), LinearForm::primed([0, 1, 0]), LinearForm::primed([0, 0, 1])];
    if with_sp {
        v.push(LinearForm::primed([3, -1, 0]));
    }
    v.into_iter().map(|l| l.in_basis(Basis::Primed)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::adjoint_formula;
    use crate::rational::{int, rat};

    fn q(quantum: bool, num: &[[i64; 3]], den: &[[i64; 3]]) -> FactorProduct {
        FactorProduct::new(
            quantum,
            Basis::Primed,
            num.iter().map(|c| LinearForm::primed(*c)).collect(),
            den.iter().map(|c| LinearForm::primed(*c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn spanning_points_lie_on_line() {
        for l in crate::vogelplane::distinguished_lines(Basis::Primed) {
            let lp = LineParam::new(&l.form);
            assert!(incident(&lp.p0, &l.form) && incident(&lp.p1, &l.form));
            assert_ne!(lp.p0, lp.p1);
        }
    }

    #[test]
    fn restriction_by_substitution() {
        let line = LinearForm::primed([1, 0, 0]);
        let lp = LineParam::with_points(&line, ProjPoint::primed([0, 1, 0]), ProjPoint::primed([0, 0, 1])).unwrap();
        let g = LinearForm::new([int(1), rat(2, 3), int(-5)], Basis::Primed).unwrap();
        assert_eq!(lp.restrict_form(&g), BinaryForm([rat(2, 3), int(-5)]));
        let f = q(false, &[[1, 0, 0]], &[[0, 1, 0]]);
        let err = restrict(&f, &lp).unwrap_err();
        assert_eq!(err, vec![FactorRef { side: Side::Num, index: 0 }]);
    }

    #[test]
    fn quantum_lemma_cases() {
        let line = LinearForm::primed([1, 0, 0]);
        // num {s+t}, den {−s−t}, sign −1: total sign +1
        let f = q(true, &[[0, 1, 1]], &[[0, -1, -1]]).negated();
        assert!(is_one_on_line_quantum(&f, &line, 1).is_one());
        let f = q(true, &[[0, 1, 1]], &[[0, 2, 2]]);
        assert_eq!(is_one_on_line_quantum(&f, &line, 1).verdict, Verdict::NotConstant);
        let f = q(true, &[[0, 1, 1]], &[[0, -1, -1]]);
        assert_eq!(
            is_one_on_line_quantum(&f, &line, 1).verdict,
            Verdict::IdenticallyConstant { value: int(-1) }
        );
    }

    #[test]
    fn classical_expansion_catches_regrouped_scalars() {
        // (2β′)(γ′)/((β′)(2γ′)) pairs only up to scalars but the product is 1
        let f = q(false, &[[5, 2, 0], [7, 0, 1]], &[[1, 1, 0], [3, 0, 2]]);
        let r = is_one_on_line_classical(&f, &LinearForm::primed([1, 0, 0]), 1);
        assert!(r.is_one());
        let g = q(false, &[[5, 2, 0], [7, 0, 1]], &[[1, 1, 0], [3, 0, 1]]);
        let r = is_one_on_line_classical(&g, &LinearForm::primed([1, 0, 0]), 1);
        assert_eq!(r.verdict, Verdict::IdenticallyConstant { value: int(2) });
    }

    #[test]
    fn adjoint_not_one_on_sl() {
        let sl = LinearForm::unprimed([1, 1, 0]);
        let r = is_one_on_line_classical(&adjoint_formula(), &sl, 7);
        assert_eq!(r.verdict, Verdict::NotConstant);
        match r.witness {
            Some(Witness::ClassicalSample { point, value: EvalResult::Finite(v) }) => {
                assert!(incident(&point, &sl));
                assert_ne!(v, int(1));
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn empty_product_is_one_everywhere() {
        let e = FactorProduct::empty(true, Basis::Primed);
        for l in basic_lines(true) {
            assert!(check_on_line(&e, &l, 3).is_one());
            assert!(check_on_line(&e.as_classical(), &l, 3).is_one());
        }
        assert!(check_on_plane(&e, 3).is_one());
    }

    #[test]
    fn adjoint_is_symmetric() {
        assert!(check_symmetric(&adjoint_formula()));
        assert!(check_symmetric(&adjoint_formula().as_classical()));
        let f = q(false, &[[1, 2, 3]], &[[1, 2, 3]]);
        assert!(check_symmetric(&f));
        let g = q(false, &[[1, 2, 3]], &[[1, 0, 0]]);
        assert!(!check_symmetric(&g));
    }

    #[test]
    fn crosscheck_agrees() {
        let line = LinearForm::primed([1, 0, 0]);
        let f = q(true, &[[1, 1, 1], [2, -3, 5]], &[[4, -1, -1], [0, 3, -5]]);
        assert!(is_one_on_line_quantum(&f, &line, 0).is_one());
        assert!(numeric_crosscheck(&f, &line, 10, 0).unwrap());
        let g = q(true, &[[1, 1, 2], [2, -3, 5]], &[[4, -1, -1], [0, 3, -5]]);
        assert!(numeric_crosscheck(&g, &line, 10, 0).unwrap());
    }
}
