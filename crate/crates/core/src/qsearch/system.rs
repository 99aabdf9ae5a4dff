//! The linear systems whose solutions are non-uniqueness factors equal to 1
//! on three (sl, so, exc) or four (plus sp) lines.
//!
//! Unknowns are the numerator forms `numᵢ = nᵢα′ + xᵢβ′ + yᵢγ′`. The
//! pairing on sl is normalized to the identity, which fixes the denominator
//! forms as `denᵢ = cᵢn_{p(i)}α′ + xᵢβ′ + yᵢγ′`. The remaining pairings read
//!
//! * so:  `denᵢ = kᵢ·num_{s(i)}`
//! * exc: `denᵢ = cᵢ·num_{p(i)}`
//! * sp:  `denᵢ = rᵢ·num_{v(i)}` (restricted to `3α′ = β′`)

use std::fmt;
use std::ops::{Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::perm::{Perm, PermTriple};
use crate::error::{Error, Result};
use crate::formula::FactorProduct;
use crate::rational::{fmt_rational, int, is_unit_sign, serde_rational_vec, Rational};
use crate::vogelplane::{Basis, LinearForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineSet {
    /// sl, so, exc
    Three,
    /// sl, so, exc, sp
    Four,
}

impl LineSet {
    pub fn parse(text: &str) -> Result<LineSet> {
        match text.trim() {
            "3" | "three" => Ok(LineSet::Three),
            "4" | "four" => Ok(LineSet::Four),
            other => Err(Error::Parse(format!("line set must be 3 or 4, got {other:?}"))),
        }
    }

    pub fn count(&self) -> usize {
        match self {
            LineSet::Three => 3,
            LineSet::Four => 4,
        }
    }

    /// The black lines in primed coordinates, in the order sl, so, exc[, sp].
    pub fn lines(&self) -> Vec<LinearForm> {
        let mut v = vec![LinearForm::primed([1, 0, 0]), LinearForm::primed([0, 1, 0]), LinearForm::primed([0, 0, 1])];
        if *self == LineSet::Four {
            v.push(LinearForm::primed([3, -1, 0]));
        }
        v
    }

    pub fn labels(&self) -> &'static [&'static str] {
        match self {
            LineSet::Three => &["sl", "so", "exc"],
            LineSet::Four => &["sl", "so", "exc", "sp"],
        }
    }
}

impl fmt::Display for LineSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels().join(","))
    }
}

/// Multipliers `cᵢ` (exc), `kᵢ` (so) and `rᵢ` (sp).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiplierAssignment {
    #[serde(with = "serde_rational_vec")]
    pub c: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub kmul: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_vec")]
    pub r: Option<Vec<Rational>>,
}

mod opt_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(v) => serde_rational_vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<Rational>>, D::Error> {
        serde_rational_vec::deserialize(d).map(Some)
    }
}

impl MultiplierAssignment {
    pub fn ones(k: usize, lines: LineSet) -> Self {
        let one = vec![Rational::one(); k];
        MultiplierAssignment {
            c: one.clone(),
            kmul: one.clone(),
            r: (lines == LineSet::Four).then_some(one),
        }
    }

    pub fn from_signs(c: &[i8], kmul: &[i8], r: Option<&[i8]>) -> Self {
        let conv = |v: &[i8]| v.iter().map(|&x| int(x as i64)).collect::<Vec<_>>();
        MultiplierAssignment { c: conv(c), kmul: conv(kmul), r: r.map(conv) }
    }

    pub fn is_signs(&self) -> bool {
        self.c.iter().chain(&self.kmul).chain(self.r.iter().flatten()).all(is_unit_sign)
    }

    pub fn conjugate_by(&self, tau: &Perm) -> Self {
        let move_vec = |v: &[Rational]| {
            let mut out = v.to_vec();
            for (i, x) in v.iter().enumerate() {
                out[tau.apply(i)] = x.clone();
            }
            out
        };
        MultiplierAssignment {
            c: move_vec(&self.c),
            kmul: move_vec(&self.kmul),
            r: self.r.as_deref().map(move_vec),
        }
    }

    fn validate(&self, k: usize, lines: LineSet) -> Result<()> {
        let check = |name: &str, v: &[Rational]| -> Result<()> {
            if v.len() != k {
                return Err(Error::InvalidMultiplier(format!("{name} has {} entries, expected {k}", v.len())));
            }
            if v.iter().any(Zero::is_zero) {
                return Err(Error::InvalidMultiplier(format!("{name} has a zero entry")));
            }
            let prod: Rational = v.iter().product();
            if !prod.is_one() {
                return Err(Error::InvalidMultiplier(format!("product of {name} is {}, not 1", fmt_rational(&prod))));
            }
            Ok(())
        };
        check("c", &self.c)?;
        check("k", &self.kmul)?;
        match (lines, &self.r) {
            (LineSet::Three, None) => Ok(()),
            (LineSet::Three, Some(_)) => Err(Error::InvalidMultiplier("r given for three lines".into())),
            (LineSet::Four, Some(r)) => check("r", r),
            (LineSet::Four, None) => Err(Error::InvalidMultiplier("r missing for four lines".into())),
        }
    }
}

/// Values of the unknowns `nᵢ, xᵢ, yᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unknowns {
    #[serde(with = "serde_rational_vec")]
    pub n: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub x: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub y: Vec<Rational>,
}

impl Unknowns {
    /// From the flat vector `(n₁…n_k, x₁…x_k, y₁…y_k)`.
    pub fn from_flat(v: &[Rational]) -> Unknowns {
        let k = v.len() / 3;
        Unknowns { n: v[..k].to_vec(), x: v[k..2 * k].to_vec(), y: v[2 * k..].to_vec() }
    }

    pub fn flat(&self) -> Vec<Rational> {
        self.n.iter().chain(&self.x).chain(&self.y).cloned().collect()
    }
}

/// Name of flat unknown `j` for a given `k` (`n1`, `x3`, …).
pub fn unknown_name(j: usize, k: usize) -> String {
    let letter = ["n", "x", "y"][j / k];
    format!("{letter}{}", j % k + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub label: String,
    #[serde(with = "serde_rational_vec")]
    pub coeffs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSystem {
    pub k: usize,
    pub lines: LineSet,
    pub perms: PermTriple,
    pub mult: MultiplierAssignment,
    pub equations: Vec<Equation>,
}

/// Equation rows over any ring-like type, in the order of
/// [`equation_labels`]. Unknown `nᵢ` is column `i`, `xᵢ` is `k+i`, `yᵢ` is
/// `2k+i`.
pub fn equation_rows<T>(perms: &PermTriple, c: &[T], kmul: &[T], r: Option<&[T]>) -> Vec<Vec<T>>
where
    T: Clone + Zero + One + Neg<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let k = perms.k();
    let (s, p) = (&perms.s, &perms.p);
    let three = T::one() + T::one() + T::one();
    let mut rows = Vec::with_capacity(5 * k);
    let row = || vec![T::zero(); 3 * k];
    let add = |row: &mut Vec<T>, j: usize, v: T| row[j] = row[j].clone() + v;
    for i in 0..k {
        let mut e = row();
        add(&mut e, k + i, T::one());
        add(&mut e, k + p.apply(i), -c[i].clone());
        rows.push(e);
    }
    for i in 0..k {
        let mut e = row();
        add(&mut e, 2 * k + i, T::one());
        add(&mut e, 2 * k + s.apply(i), -kmul[i].clone());
        rows.push(e);
    }
    for i in 0..k {
        let mut e = row();
        add(&mut e, s.apply(i), kmul[i].clone());
        add(&mut e, p.apply(i), -c[i].clone());
        rows.push(e);
    }
    if let (Some(v), Some(r)) = (&perms.v, r) {
        for i in 0..k {
            let mut e = row();
            add(&mut e, 2 * k + i, T::one());
            add(&mut e, 2 * k + v.apply(i), -r[i].clone());
            rows.push(e);
        }
        for i in 0..k {
            let mut e = row();
            add(&mut e, p.apply(i), c[i].clone());
            add(&mut e, k + i, three.clone());
            add(&mut e, v.apply(i), -r[i].clone());
            add(&mut e, k + v.apply(i), -(r[i].clone() * three.clone()));
            rows.push(e);
        }
    }
    rows
}

pub fn equation_labels(perms: &PermTriple) -> Vec<String> {
    let k = perms.k();
    let (s, p) = (&perms.s, &perms.p);
    let mut out = Vec::new();
    for i in 0..k {
        out.push(format!("x{} = c{}·x{}", i + 1, i + 1, p.apply(i) + 1));
    }
    for i in 0..k {
        out.push(format!("y{} = k{}·y{}", i + 1, i + 1, s.apply(i) + 1));
    }
    for i in 0..k {
        out.push(format!("k{}·n{} = c{}·n{}", i + 1, s.apply(i) + 1, i + 1, p.apply(i) + 1));
    }
    if let Some(v) = &perms.v {
        for i in 0..k {
            out.push(format!("y{} = r{}·y{}", i + 1, i + 1, v.apply(i) + 1));
        }
        for i in 0..k {
            let (pi, vi) = (p.apply(i) + 1, v.apply(i) + 1);
            out.push(format!("c{}·n{pi} + 3x{} = r{}·(n{vi} + 3x{vi})", i + 1, i + 1, i + 1));
        }
    }
    out
}

pub fn build_system(k: usize, lines: LineSet, perms: PermTriple, mult: MultiplierAssignment) -> Result<ConstraintSystem> {
    if k == 0 {
        return Err(Error::InvalidSystem("k must be at least 1".into()));
    }
    let bad_k = [Some(&perms.s), Some(&perms.p), perms.v.as_ref()].into_iter().flatten().any(|q| q.k() != k);
    if bad_k {
        return Err(Error::InvalidSystem(format!("permutations must act on {k} indices")));
    }
    match (lines, &perms.v) {
        (LineSet::Three, Some(_)) => return Err(Error::InvalidSystem("v given for three lines".into())),
        (LineSet::Four, None) => return Err(Error::InvalidSystem("v missing for four lines".into())),
        _ => {}
    }
    mult.validate(k, lines)?;
    let rows = equation_rows(&perms, &mult.c, &mult.kmul, mult.r.as_deref());
    let equations = equation_labels(&perms)
        .into_iter()
        .zip(rows)
        .map(|(label, coeffs)| Equation { label, coeffs })
        .collect();
    Ok(ConstraintSystem { k, lines, perms, mult, equations })
}

/// Outcome of substituting concrete values into every equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub failed: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failed.is_empty()
    }
}

pub fn verify_solution(sys: &ConstraintSystem, values: &Unknowns) -> VerifyReport {
    let flat = values.flat();
    let failed = sys
        .equations
        .iter()
        .filter(|e| {
            let lhs: Rational = e.coeffs.iter().zip(&flat).map(|(a, b)| a * b).sum();
            !lhs.is_zero()
        })
        .map(|e| e.label.clone())
        .collect();
    VerifyReport { failed }
}

impl ConstraintSystem {
    /// The factor product encoded by a solution. Fails if some form is zero.
    pub fn factor_product(&self, values: &Unknowns, quantum: bool) -> Result<FactorProduct> {
        let k = self.k;
        let mut num = Vec::with_capacity(k);
        let mut den = Vec::with_capacity(k);
        for i in 0..k {
            let (x, y) = (values.x[i].clone(), values.y[i].clone());
            let ni = LinearForm::new([values.n[i].clone(), x.clone(), y.clone()], Basis::Primed)
                .map_err(|_| Error::DegenerateFamily(format!("numerator form {} is zero", i + 1)))?;
            let m = &self.mult.c[i] * &values.n[self.perms.p.apply(i)];
            let di = LinearForm::new([m, x, y], Basis::Primed)
                .map_err(|_| Error::DegenerateFamily(format!("denominator form {} is zero", i + 1)))?;
            num.push(ni);
            den.push(di);
        }
        FactorProduct::new(quantum, Basis::Primed, num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q33_perms() -> PermTriple {
        PermTriple { s: Perm::shift(3, 1), p: Perm::shift(3, 2), v: None }
    }

    #[test]
    fn product_constraint_enforced() {
        let m = MultiplierAssignment::from_signs(&[1, 1, -1], &[1, 1, 1], None);
        let err = build_system(3, LineSet::Three, q33_perms(), m).unwrap_err();
        assert!(matches!(err, Error::InvalidMultiplier(_)));
    }

    #[test]
    fn three_line_system_shape() {
        let sys = build_system(3, LineSet::Three, q33_perms(), MultiplierAssignment::ones(3, LineSet::Three)).unwrap();
        assert_eq!(sys.equations.len(), 9);
        assert_eq!(sys.equations[0].label, "x1 = c1·x3");
        assert!(build_system(3, LineSet::Four, q33_perms(), MultiplierAssignment::ones(3, LineSet::Four)).is_err());
    }

    #[test]
    fn constant_solution_satisfies_unit_system() {
        let sys = build_system(3, LineSet::Three, q33_perms(), MultiplierAssignment::ones(3, LineSet::Three)).unwrap();
        let vals = Unknowns { n: vec![int(2); 3], x: vec![int(3); 3], y: vec![int(5); 3] };
        assert!(verify_solution(&sys, &vals).passed());
        let f = sys.factor_product(&vals, false).unwrap();
        assert!(f.is_trivial());
    }

    #[test]
    fn json_shape() {
        let m = MultiplierAssignment::from_signs(&[1, -1, -1], &[1, 1, 1], None);
        let v: serde_json::Value = serde_json::to_value(&m).unwrap();
        assert_eq!(v["c"][1], serde_json::json!(["-1", "1"]));
        assert!(v.get("r").is_none());
        let back: MultiplierAssignment = serde_json::from_value(v).unwrap();
        assert_eq!(back, m);
    }
}
