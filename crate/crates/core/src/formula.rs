//! Universal (quantum) dimension formulas as ratios of equal-length products
//! of linear forms.
//!
//! A classical product evaluates to `m · ∏ num(p) / ∏ den(p)` for a rational
//! multiplier `m`. Its quantum counterpart replaces every factor `u` by
//! `sinh(x·u)`, and then only `m = ±1` is meaningful.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{int, is_unit_sign, rat, serde_rational, to_f64, Rational};
use crate::vogelplane::{dot, Basis, Family, LinearForm, Perm3, PlaneObject, ProjPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "RawEval", into = "RawEval")]
pub enum EvalResult {
    Finite(Rational),
    Zero,
    Pole,
    Indeterminate,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawEval {
    Finite {
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    Zero,
    Pole,
    Indeterminate,
}

impl From<RawEval> for EvalResult {
    fn from(r: RawEval) -> Self {
        match r {
            RawEval::Finite { value } => EvalResult::Finite(value),
            RawEval::Zero => EvalResult::Zero,
            RawEval::Pole => EvalResult::Pole,
            RawEval::Indeterminate => EvalResult::Indeterminate,
        }
    }
}

impl From<EvalResult> for RawEval {
    fn from(r: EvalResult) -> Self {
        match r {
            EvalResult::Finite(value) => RawEval::Finite { value },
            EvalResult::Zero => RawEval::Zero,
            EvalResult::Pole => RawEval::Pole,
            EvalResult::Indeterminate => RawEval::Indeterminate,
        }
    }
}

impl EvalResult {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            EvalResult::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for EvalResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalResult::Finite(v) => f.write_str(&crate::rational::fmt_rational(v)),
            EvalResult::Zero => f.write_str("zero"),
            EvalResult::Pole => f.write_str("pole"),
            EvalResult::Indeterminate => f.write_str("indeterminate"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFormula", into = "RawFormula")]
pub struct FactorProduct {
    quantum: bool,
    /// Overall multiplier; always ±1 for quantum products.
    multiplier: Rational,
    basis: Basis,
    num: Vec<LinearForm>,
    den: Vec<LinearForm>,
}

#[derive(Serialize, Deserialize)]
struct RawFormula {
    quantum: bool,
    sign: i8,
    #[serde(with = "serde_rational")]
    scalar: Rational,
    basis: Basis,
    num: Vec<LinearForm>,
    den: Vec<LinearForm>,
}

impl TryFrom<RawFormula> for FactorProduct {
    type Error = Error;
    fn try_from(raw: RawFormula) -> Result<Self> {
        if raw.sign != 1 && raw.sign != -1 {
            return Err(Error::Parse(format!("sign must be ±1, got {}", raw.sign)));
        }
        if !raw.scalar.is_positive() {
            return Err(Error::Parse("scalar must be positive".into()));
        }
        let f = FactorProduct::new(raw.quantum, raw.basis, raw.num, raw.den)?;
        f.with_multiplier(raw.scalar * int(raw.sign as i64))
    }
}

impl From<FactorProduct> for RawFormula {
    fn from(f: FactorProduct) -> Self {
        RawFormula {
            quantum: f.quantum,
            sign: if f.multiplier.is_negative() { -1 } else { 1 },
            scalar: f.multiplier.abs(),
            basis: f.basis,
            num: f.num,
            den: f.den,
        }
    }
}

impl FactorProduct {
    pub fn new(
        quantum: bool,
        basis: Basis,
        num: Vec<LinearForm>,
        den: Vec<LinearForm>,
    ) -> Result<Self> {
        if num.len() != den.len() {
            return Err(Error::FormulaMismatch(format!(
                "{} numerator factors but {} denominator factors",
                num.len(),
                den.len()
            )));
        }
        if let Some(f) = num.iter().chain(&den).find(|f| f.basis() != basis) {
            return Err(Error::BasisMismatch { expected: basis, found: f.basis() });
        }
        Ok(FactorProduct { quantum, multiplier: Rational::one(), basis, num, den })
    }

    pub fn empty(quantum: bool, basis: Basis) -> Self {
        FactorProduct { quantum, multiplier: Rational::one(), basis, num: vec![], den: vec![] }
    }

    pub fn with_multiplier(mut self, m: Rational) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::FormulaMismatch("zero multiplier".into()));
        }
        if self.quantum && !is_unit_sign(&m) {
            return Err(Error::FormulaMismatch(format!(
                "quantum products only carry a sign, got multiplier {m}"
            )));
        }
        self.multiplier = m;
        Ok(self)
    }

    pub fn negated(mut self) -> Self {
        self.multiplier = -self.multiplier;
        self
    }

    pub fn is_quantum(&self) -> bool {
        self.quantum
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn num(&self) -> &[LinearForm] {
        &self.num
    }

    pub fn den(&self) -> &[LinearForm] {
        &self.den
    }

    /// Number of factor pairs.
    pub fn k(&self) -> usize {
        self.num.len()
    }

    pub fn multiplier(&self) -> &Rational {
        &self.multiplier
    }

    pub fn sign(&self) -> i8 {
        if self.multiplier.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    /// Same factors read as an ordinary rational function.
    pub fn as_classical(&self) -> FactorProduct {
        FactorProduct { quantum: false, ..self.clone() }
    }

    /// Same factors under sinh; fails when the multiplier is not a sign.
    pub fn as_quantum(&self) -> Result<FactorProduct> {
        FactorProduct { quantum: true, multiplier: Rational::one(), ..self.clone() }
            .with_multiplier(self.multiplier.clone())
    }

    pub fn in_basis(&self, basis: Basis) -> FactorProduct {
        FactorProduct {
            quantum: self.quantum,
            multiplier: self.multiplier.clone(),
            basis,
            num: self.num.iter().map(|f| f.in_basis(basis)).collect(),
            den: self.den.iter().map(|f| f.in_basis(basis)).collect(),
        }
    }

    /// Substitutes permuted parameters into every factor.
    pub fn act(&self, perm: &Perm3) -> FactorProduct {
        FactorProduct {
            quantum: self.quantum,
            multiplier: self.multiplier.clone(),
            basis: self.basis,
            num: self.num.iter().map(|f| f.act(perm)).collect(),
            den: self.den.iter().map(|f| f.act(perm)).collect(),
        }
    }

    pub fn inverse(&self) -> FactorProduct {
        FactorProduct {
            quantum: self.quantum,
            multiplier: Rational::one() / &self.multiplier,
            basis: self.basis,
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    fn check_compatible(&self, other: &FactorProduct) -> Result<()> {
        if self.quantum != other.quantum {
            return Err(Error::FormulaMismatch("cannot combine classical and quantum products".into()));
        }
        if self.basis != other.basis {
            return Err(Error::BasisMismatch { expected: self.basis, found: other.basis });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &FactorProduct) -> Result<FactorProduct> {
        self.check_compatible(other)?;
        Ok(FactorProduct {
            quantum: self.quantum,
            multiplier: &self.multiplier * &other.multiplier,
            basis: self.basis,
            num: self.num.iter().chain(&other.num).cloned().collect(),
            den: self.den.iter().chain(&other.den).cloned().collect(),
        })
    }

    pub fn ratio(&self, other: &FactorProduct) -> Result<FactorProduct> {
        self.multiply(&other.inverse())
    }

    /// Removes numerator/denominator pairs that cancel as functions.
    ///
    /// Classical products drop proportional pairs and fold the ratio into
    /// the multiplier. Quantum products drop only pairs equal up to sign,
    /// because `sinh(2u) ≠ 2·sinh(u)`. Pairs are taken greedily in factor
    /// order; the surviving factors keep their relative order.
    pub fn cancel(&self) -> FactorProduct {
        let mut den: Vec<Option<&LinearForm>> = self.den.iter().map(Some).collect();
        let mut num = Vec::new();
        let mut multiplier = self.multiplier.clone();
        for n in &self.num {
            let hit = den.iter().enumerate().find_map(|(j, d)| {
                let lambda = n.ratio_to((*d)?)?;
                (!self.quantum || is_unit_sign(&lambda)).then_some((j, lambda))
            });
            match hit {
                Some((j, lambda)) => {
                    den[j] = None;
                    multiplier *= lambda;
                }
                None => num.push(n.clone()),
            }
        }
        FactorProduct {
            quantum: self.quantum,
            multiplier,
            basis: self.basis,
            num,
            den: den.into_iter().flatten().cloned().collect(),
        }
    }

    /// True when the product cancels to exactly 1.
    pub fn is_trivial(&self) -> bool {
        let c = self.cancel();
        c.is_empty() && c.multiplier.is_one()
    }

    /// Values of all numerator and denominator forms at `p`.
    pub fn factor_values(&self, p: &ProjPoint) -> (Vec<Rational>, Vec<Rational>) {
        let q = p.in_basis(self.basis);
        let vals = |forms: &[LinearForm]| forms.iter().map(|f| dot(f.coeffs(), q.coords())).collect();
        (vals(&self.num), vals(&self.den))
    }

    /// Classical value at a projective point.
    pub fn eval_classical(&self, p: &ProjPoint) -> EvalResult {
        let (nv, dv) = self.factor_values(p);
        let num_zero = nv.iter().any(Zero::is_zero);
        let den_zero = dv.iter().any(Zero::is_zero);
        match (num_zero, den_zero) {
            (true, true) => EvalResult::Indeterminate,
            (true, false) => EvalResult::Zero,
            (false, true) => EvalResult::Pole,
            (false, false) => {
                let n: Rational = nv.iter().product();
                let d: Rational = dv.iter().product();
                EvalResult::Finite(&self.multiplier * n / d)
            }
        }
    }

    /// `sign · ∏ sinh(x·numᵢ(p)) / ∏ sinh(x·denᵢ(p))` at the given affine
    /// representative of `p`. Computed in log space so large arguments do
    /// not overflow.
    pub fn eval_quantum(&self, p: &ProjPoint, x: f64) -> Result<f64> {
        if !self.quantum {
            return Err(Error::FormulaMismatch("eval_quantum needs a quantum product".into()));
        }
        if x == 0.0 || !x.is_finite() {
            return Err(Error::Degenerate(format!("x must be finite and nonzero, got {x}")));
        }
        let (nv, dv) = self.factor_values(p);
        if let Some(i) = nv.iter().position(Zero::is_zero) {
            return Err(Error::Singular(format!("numerator factor {} ({}) vanishes at {p}", i + 1, self.num[i])));
        }
        if let Some(i) = dv.iter().position(Zero::is_zero) {
            return Err(Error::Singular(format!("denominator factor {} ({}) vanishes at {p}", i + 1, self.den[i])));
        }
        let mut log = 0.0;
        let mut negative = self.multiplier.is_negative();
        for v in &nv {
            let (l, neg) = ln_abs_sinh(x * to_f64(v));
            log += l;
            negative ^= neg;
        }
        for v in &dv {
            let (l, neg) = ln_abs_sinh(x * to_f64(v));
            log -= l;
            negative ^= neg;
        }
        let mag = log.exp();
        Ok(if negative { -mag } else { mag })
    }

    /// Restriction to a Vogel-table family as a rational function of its
    /// parameter (N or n).
    pub fn on_family(&self, family: Family) -> FamilyRestriction {
        let (base, dir) = family.affine_parametrization();
        let basis = self.basis;
        let as_poly = |f: &LinearForm| {
            let u = f.in_basis(Basis::Unprimed);
            let _ = basis;
            Poly::linear(dot(u.coeffs(), &base), dot(u.coeffs(), &dir))
        };
        let num = self.num.iter().fold(Poly::constant(self.multiplier.clone()), |acc, f| acc.mul(&as_poly(f)));
        let den = self.den.iter().fold(Poly::one(), |acc, f| acc.mul(&as_poly(f)));
        FamilyRestriction { family, num, den }
    }
}

/// `(|ln sinh u|, sinh u < 0)`
fn ln_abs_sinh(u: f64) -> (f64, bool) {
    let a = u.abs();
    let l = if a < 20.0 {
        a.sinh().ln()
    } else {
        a - std::f64::consts::LN_2 + (-(-2.0 * a).exp()).ln_1p()
    };
    (l, u < 0.0)
}

impl fmt::Display for FactorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |forms: &[LinearForm]| -> String {
            if forms.is_empty() {
                "1".into()
            } else {
                forms.iter().map(|g| format!("({g})")).collect::<Vec<_>>().join("")
            }
        };
        if !self.multiplier.is_one() {
            write!(f, "{} · ", crate::rational::fmt_rational(&self.multiplier))?;
        }
        if self.quantum {
            f.write_str("sinh[x: ")?;
        }
        write!(f, "{} / {}", list(&self.num), list(&self.den))?;
        if self.quantum {
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// A product restricted to one of the table families, as polynomials in
/// the family parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyRestriction {
    pub family: Family,
    pub num: Poly,
    pub den: Poly,
}

impl FamilyRestriction {
    /// The quotient when the restriction is a polynomial.
    pub fn simplified(&self) -> Option<Poly> {
        if self.den.is_zero() {
            return None;
        }
        self.num.exact_div(&self.den)
    }

    /// Numerator and denominator with their common factor removed and the
    /// denominator made monic.
    pub fn reduced(&self) -> Option<(Poly, Poly)> {
        let lead = self.den.leading()?.clone();
        let g = self.num.gcd(&self.den);
        let g = if g.is_zero() { Poly::one() } else { g };
        let num = self.num.exact_div(&g)?.scale(&lead.recip());
        let den = self.den.exact_div(&g)?.scale(&lead.recip());
        Some((num, den))
    }
}

fn quarter(c: [i64; 3]) -> LinearForm {
    LinearForm::new(c.map(|v| rat(v, 4)), Basis::Unprimed).expect("nonzero factor")
}

/// Quantum dimension of the adjoint representation:
/// `−sinh[x: (2α+2β+γ)/4 · (2α+β+2γ)/4 · (α+2β+2γ)/4 / (α/4 · β/4 · γ/4)]`.
pub fn adjoint_formula() -> FactorProduct {
    let num = vec![quarter([2, 2, 1]), quarter([2, 1, 2]), quarter([1, 2, 2])];
    let den = vec![quarter([1, 0, 0]), quarter([0, 1, 0]), quarter([0, 0, 1])];
    FactorProduct::new(true, Basis::Unprimed, num, den)
        .expect("well-formed")
        .negated()
}

/// Quantum dimension of the Cartan product of `X₂ᵏ` and `adⁿ`, assembled
/// factor by factor (squared factors appear twice). Every form carries the
/// `1/4` of the `sinh[x/4: …]` convention.
pub fn x2k_adn_formula(k: u32, n: u32) -> FactorProduct {
    let (k, n) = (k as i64, n as i64);
    let mut num = Vec::new();
    let mut den = Vec::new();
    for i in 0..k {
        for _ in 0..2 {
            num.extend([quarter([i - 2, -2, 0]), quarter([i - 2, 0, -2]), quarter([2 - i, 1, 1])]);
            den.extend([quarter([i + 1, 0, 0]), quarter([1 - i, 1, 0]), quarter([1 - i, 0, 1])]);
        }
    }
    for i in 0..=n {
        let j = i + k;
        num.extend([quarter([j - 2, -2, 0]), quarter([j - 2, 0, -2]), quarter([2 - j, 1, 1])]);
        den.extend([quarter([j + 1, 0, 0]), quarter([1 - j, 1, 0]), quarter([1 - j, 0, 1])]);
    }
    for i in 1..=(2 * k + n) {
        num.extend([quarter([i - 3, -1, -2]), quarter([i - 3, -2, -1]), quarter([i - 5, -2, -2])]);
        den.extend([quarter([i - 2, -2, 0]), quarter([i - 2, 0, -2]), quarter([2 - i, 1, 1])]);
    }
    num.extend([quarter([1, 1, 0]), quarter([1, 0, 1]), quarter([n + 1, 0, 0])]);
    den.extend([quarter([2, 2, 0]), quarter([2, 0, 2]), quarter([2, 1, 1])]);
    num.extend([quarter([3 * k + n - 4, -2, -2]), quarter([3 * k + 2 * n - 3, -2, -2])]);
    den.extend([quarter([3, 2, 2]), quarter([4, 2, 2])]);
    FactorProduct::new(true, Basis::Unprimed, num, den).expect("well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vogelplane::vogel_point;

    fn classical_at(f: &FactorProduct, fam: Family, param: i64) -> EvalResult {
        f.as_classical().eval_classical(&vogel_point(fam, int(param)).point)
    }

    #[test]
    fn adjoint_at_table_points() {
        let ad = adjoint_formula();
        assert_eq!(classical_at(&ad, Family::Sl, 5), EvalResult::Finite(int(24)));
        assert_eq!(classical_at(&ad, Family::So, 7), EvalResult::Finite(int(21)));
        assert_eq!(classical_at(&ad, Family::Sp, 3), EvalResult::Finite(int(21)));
        assert_eq!(classical_at(&ad, Family::Exc, 8), EvalResult::Finite(int(248)));
    }

    #[test]
    fn singular_patterns() {
        let f = FactorProduct::new(
            false,
            Basis::Unprimed,
            vec![LinearForm::unprimed([1, 0, 0])],
            vec![LinearForm::unprimed([0, 1, 0])],
        )
        .unwrap();
        assert_eq!(f.eval_classical(&ProjPoint::unprimed([1, 0, 1])), EvalResult::Pole);
        assert_eq!(f.eval_classical(&ProjPoint::unprimed([0, 1, 1])), EvalResult::Zero);
        assert_eq!(f.eval_classical(&ProjPoint::unprimed([0, 0, 1])), EvalResult::Indeterminate);
        assert_eq!(f.eval_classical(&ProjPoint::unprimed([2, 3, 1])), EvalResult::Finite(rat(2, 3)));
    }

    #[test]
    fn classical_eval_is_scale_invariant() {
        let ad = adjoint_formula().as_classical();
        let p = ProjPoint::unprimed([-2, 4, 3]);
        let q = p.scaled(&rat(-7, 3)).unwrap();
        assert_eq!(ad.eval_classical(&p), ad.eval_classical(&q));
    }

    #[test]
    fn quantum_small_x_limit() {
        let ad = adjoint_formula();
        let p = vogel_point(Family::Sl, int(5)).point;
        let v = ad.eval_quantum(&p, 1e-6).unwrap();
        assert!((v - 24.0).abs() / 24.0 < 1e-9, "{v}");
    }

    #[test]
    fn quantum_errors() {
        let ad = adjoint_formula();
        assert!(matches!(ad.eval_quantum(&ProjPoint::unprimed([0, 1, 1]), 0.5), Err(Error::Singular(_))));
        assert!(ad.eval_quantum(&ProjPoint::unprimed([1, 1, 1]), 0.0).is_err());
        assert!(ad.as_classical().eval_quantum(&ProjPoint::unprimed([1, 1, 1]), 0.5).is_err());
    }

    #[test]
    fn empty_product_is_one() {
        let e = FactorProduct::empty(true, Basis::Unprimed);
        for x in [0.1, 1.0, 7.5] {
            assert_eq!(e.eval_quantum(&ProjPoint::unprimed([1, 2, 3]), x).unwrap(), 1.0);
        }
    }

    #[test]
    fn sign_matched_quantum_product_is_one() {
        let f = FactorProduct::new(
            true,
            Basis::Unprimed,
            vec![LinearForm::unprimed([1, 2, 0]), LinearForm::unprimed([0, 1, -3])],
            vec![LinearForm::unprimed([0, -1, 3]), LinearForm::unprimed([-1, -2, 0])],
        )
        .unwrap();
        for x in [0.01, 0.3, 2.0] {
            let v = f.eval_quantum(&ProjPoint::unprimed([3, 1, 5]), x).unwrap();
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cancel_rules() {
        let a = LinearForm::unprimed([1, 1, 0]);
        let a2 = LinearForm::unprimed([2, 2, 0]);
        let f = FactorProduct::new(false, Basis::Unprimed, vec![a.clone()], vec![a2.clone()]).unwrap();
        let c = f.cancel();
        assert!(c.is_empty());
        assert_eq!(c.multiplier(), &rat(1, 2));

        let q = FactorProduct::new(true, Basis::Unprimed, vec![a.clone()], vec![a.neg()]).unwrap();
        let c = q.cancel();
        assert!(c.is_empty());
        assert_eq!(c.sign(), -1);

        let q = FactorProduct::new(true, Basis::Unprimed, vec![a], vec![a2]).unwrap();
        assert_eq!(q.cancel(), q);
    }

    #[test]
    fn ratio_and_identity_element() {
        let ad = adjoint_formula();
        let r = ad.ratio(&ad).unwrap().cancel();
        assert!(r.is_empty() && r.multiplier().is_one());
        let e = FactorProduct::empty(true, Basis::Unprimed);
        assert_eq!(ad.multiply(&e).unwrap(), ad);
        assert!(ad.multiply(&ad.as_classical()).is_err());
        assert!(ad.multiply(&ad.in_basis(Basis::Primed)).is_err());
    }

    #[test]
    fn x2_power_dimensions_at_sl5() {
        let d = 24;
        let x = x2k_adn_formula(1, 0).as_classical().cancel();
        assert_eq!(x.eval_classical(&vogel_point(Family::Sl, int(5)).point), EvalResult::Finite(int(d * (d - 3) / 2)));
        let x = x2k_adn_formula(0, 1).as_classical().cancel();
        assert_eq!(x.eval_classical(&vogel_point(Family::Sl, int(5)).point), EvalResult::Finite(int(d)));
    }

    #[test]
    fn x2_trivial_power_is_one() {
        let x = x2k_adn_formula(0, 0);
        assert_eq!(x.num().len(), x.den().len());
        assert!(x.as_classical().is_trivial());
        assert_eq!(
            x.as_classical().eval_classical(&ProjPoint::unprimed([3, 7, 11])),
            EvalResult::Finite(int(1))
        );
    }

    #[test]
    fn family_restriction_simplifies() {
        let ad = adjoint_formula().as_classical();
        assert_eq!(ad.on_family(Family::Sl).simplified().unwrap(), Poly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn json_round_trip() {
        let ad = adjoint_formula();
        let js = serde_json::to_string(&ad).unwrap();
        let back: FactorProduct = serde_json::from_str(&js).unwrap();
        assert_eq!(back, ad);
        let v: serde_json::Value = serde_json::from_str(&js).unwrap();
        assert_eq!(v["sign"], -1);
        assert_eq!(v["scalar"], serde_json::json!(["1", "1"]));
        assert_eq!(v["quantum"], true);
    }
}
