//! Points and lines of Vogel's plane with exact homogeneous coordinates.
//!
//! Two coordinate systems are in use. The unprimed one is where the
//! universal parameters `(α:β:γ)` live; the primed one
//!
//! ```text
//! α′ = α + β        α = −α′ + β′
//! β′ = 2α + β       β = 2α′ − β′
//! γ′ = γ − 2(α+β)   γ = 2α′ + γ′
//! ```
//!
//! turns the `sl`, `so` and `exc` lines into the coordinate lines. Points map
//! by the matrix above, linear forms by its inverse transpose, so the value
//! of a form at a point does not depend on the basis.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, serde_triple, Rational};

pub type Triple = [Rational; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Unprimed,
    Primed,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Unprimed => "unprimed",
            Basis::Primed => "primed",
        })
    }
}

const TO_PRIMED: [[i64; 3]; 3] = [[1, 1, 0], [2, 1, 0], [-2, -2, 1]];
const TO_UNPRIMED: [[i64; 3]; 3] = [[-1, 1, 0], [2, -1, 0], [2, 0, 1]];

fn apply(m: &[[i64; 3]; 3], v: &Triple) -> Triple {
    std::array::from_fn(|i| (0..3).map(|j| &v[j] * int(m[i][j])).sum())
}

fn apply_transpose(m: &[[i64; 3]; 3], v: &Triple) -> Triple {
    std::array::from_fn(|j| (0..3).map(|i| &v[i] * int(m[i][j])).sum())
}

pub fn dot(a: &Triple, b: &Triple) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn cross(a: &Triple, b: &Triple) -> Triple {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn is_zero_triple(t: &Triple) -> bool {
    t.iter().all(Zero::is_zero)
}

/// Scales so the first nonzero entry is `+1`.
pub fn normalize_triple(t: &Triple) -> Triple {
    match t.iter().find(|c| !c.is_zero()) {
        Some(lead) => {
            let lead = lead.clone();
            std::array::from_fn(|i| &t[i] / &lead)
        }
        None => t.clone(),
    }
}

/// `Some(λ)` with `a = λ·b` when the triples are proportional and nonzero.
pub fn proportionality(a: &Triple, b: &Triple) -> Option<Rational> {
    let i = b.iter().position(|c| !c.is_zero())?;
    let lambda = &a[i] / &b[i];
    if lambda.is_zero() {
        return None;
    }
    (0..3).all(|j| a[j] == &lambda * &b[j]).then_some(lambda)
}

pub fn scale_triple(t: &Triple, by: &Rational) -> Triple {
    std::array::from_fn(|i| &t[i] * by)
}

fn fmt_linear(t: &Triple, vars: [&str; 3]) -> String {
    let mut out = String::new();
    for (c, v) in t.iter().zip(vars) {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&fmt_rational(&mag));
        }
        out.push_str(v);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn vars(basis: Basis) -> [&'static str; 3] {
    match basis {
        Basis::Unprimed => ["α", "β", "γ"],
        Basis::Primed => ["α′", "β′", "γ′"],
    }
}

/// Behaviour shared by points and linear forms: basis change and the S₃
/// action on the universal parameters.
pub trait PlaneObject: Sized + Clone {
    /// Linear forms transform contragrediently to points.
    const IS_FORM: bool;

    fn coords(&self) -> &Triple;
    fn basis(&self) -> Basis;
    #[doc(hidden)]
    fn from_parts_unchecked(coords: Triple, basis: Basis) -> Self;

    fn to_primed(&self) -> Result<Self> {
        if self.basis() != Basis::Unprimed {
            return Err(Error::BasisMismatch {
                expected: Basis::Unprimed,
                found: self.basis(),
            });
        }
        let c = if Self::IS_FORM {
            apply_transpose(&TO_UNPRIMED, self.coords())
        } else {
            apply(&TO_PRIMED, self.coords())
        };
        Ok(Self::from_parts_unchecked(c, Basis::Primed))
    }

    fn to_unprimed(&self) -> Result<Self> {
        if self.basis() != Basis::Primed {
            return Err(Error::BasisMismatch {
                expected: Basis::Primed,
                found: self.basis(),
            });
        }
        let c = if Self::IS_FORM {
            apply_transpose(&TO_PRIMED, self.coords())
        } else {
            apply(&TO_UNPRIMED, self.coords())
        };
        Ok(Self::from_parts_unchecked(c, Basis::Unprimed))
    }

    fn in_basis(&self, basis: Basis) -> Self {
        if self.basis() == basis {
            return self.clone();
        }
        match basis {
            Basis::Primed => self.to_primed(),
            Basis::Unprimed => self.to_unprimed(),
        }
        .expect("basis checked above")
    }

    /// Permutes the unprimed coordinates; primed inputs are converted there
    /// and back.
    fn act(&self, perm: &Perm3) -> Self {
        let basis = self.basis();
        let u = self.in_basis(Basis::Unprimed);
        let moved = Self::from_parts_unchecked(perm.permute(u.coords()), Basis::Unprimed);
        moved.in_basis(basis)
    }
}

/// Projective point. Equality and hashing are up to a nonzero scalar; the
/// stored representative is kept as given because quantum evaluation
/// depends on it.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawObject", into = "RawObject")]
pub struct ProjPoint {
    coords: Triple,
    basis: Basis,
}

/// Linear form `nα + xβ + yγ`. Equality compares coefficients exactly;
/// use [`LinearForm::same_line`] for equality of the zero sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawObject", into = "RawObject")]
pub struct LinearForm {
    coeffs: Triple,
    basis: Basis,
}

#[derive(Serialize, Deserialize)]
struct RawObject {
    #[serde(with = "serde_triple")]
    coeffs: Triple,
    basis: Basis,
}

impl TryFrom<RawObject> for ProjPoint {
    type Error = Error;
    fn try_from(raw: RawObject) -> Result<Self> {
        ProjPoint::new(raw.coeffs, raw.basis)
    }
}

impl From<ProjPoint> for RawObject {
    fn from(p: ProjPoint) -> Self {
        RawObject { coeffs: p.coords, basis: p.basis }
    }
}

impl TryFrom<RawObject> for LinearForm {
    type Error = Error;
    fn try_from(raw: RawObject) -> Result<Self> {
        LinearForm::new(raw.coeffs, raw.basis)
    }
}

impl From<LinearForm> for RawObject {
    fn from(f: LinearForm) -> Self {
        RawObject { coeffs: f.coeffs, basis: f.basis }
    }
}

impl PlaneObject for ProjPoint {
    const IS_FORM: bool = false;
    fn coords(&self) -> &Triple {
        &self.coords
    }
    fn basis(&self) -> Basis {
        self.basis
    }
    fn from_parts_unchecked(coords: Triple, basis: Basis) -> Self {
        ProjPoint { coords, basis }
    }
}

impl PlaneObject for LinearForm {
    const IS_FORM: bool = true;
    fn coords(&self) -> &Triple {
        &self.coeffs
    }
    fn basis(&self) -> Basis {
        self.basis
    }
    fn from_parts_unchecked(coeffs: Triple, basis: Basis) -> Self {
        LinearForm { coeffs, basis }
    }
}

impl ProjPoint {
    pub fn new(coords: Triple, basis: Basis) -> Result<Self> {
        if is_zero_triple(&coords) {
            return Err(Error::ZeroVector);
        }
        Ok(ProjPoint { coords, basis })
    }

    pub fn from_ints(c: [i64; 3], basis: Basis) -> Result<Self> {
        ProjPoint::new(c.map(int), basis)
    }

    pub fn unprimed(c: [i64; 3]) -> Self {
        ProjPoint::from_ints(c, Basis::Unprimed).expect("nonzero point")
    }

    pub fn primed(c: [i64; 3]) -> Self {
        ProjPoint::from_ints(c, Basis::Primed).expect("nonzero point")
    }

    /// Representative with first nonzero coordinate equal to 1.
    pub fn canonical(&self) -> Triple {
        normalize_triple(&self.coords)
    }

    pub fn scaled(&self, by: &Rational) -> Result<Self> {
        ProjPoint::new(scale_triple(&self.coords, by), self.basis)
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        let other = other.in_basis(self.basis);
        proportionality(&self.coords, &other.coords).is_some()
    }
}

impl Eq for ProjPoint {}

impl Hash for ProjPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        normalize_triple(self.in_basis(Basis::Unprimed).coords()).hash(state);
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(fmt_rational).collect();
        write!(f, "({} : {} : {})", c[0], c[1], c[2])?;
        if self.basis == Basis::Primed {
            f.write_str("′")?;
        }
        Ok(())
    }
}

impl LinearForm {
    pub fn new(coeffs: Triple, basis: Basis) -> Result<Self> {
        if is_zero_triple(&coeffs) {
            return Err(Error::ZeroVector);
        }
        Ok(LinearForm { coeffs, basis })
    }

    pub fn from_ints(c: [i64; 3], basis: Basis) -> Result<Self> {
        LinearForm::new(c.map(int), basis)
    }

    pub fn unprimed(c: [i64; 3]) -> Self {
        LinearForm::from_ints(c, Basis::Unprimed).expect("nonzero form")
    }

    pub fn primed(c: [i64; 3]) -> Self {
        LinearForm::from_ints(c, Basis::Primed).expect("nonzero form")
    }

    pub fn coeffs(&self) -> &Triple {
        &self.coeffs
    }

    /// Value at `p`, converting `p` into this form's basis first.
    pub fn eval(&self, p: &ProjPoint) -> Rational {
        dot(&self.coeffs, p.in_basis(self.basis).coords())
    }

    pub fn scaled(&self, by: &Rational) -> Result<Self> {
        LinearForm::new(scale_triple(&self.coeffs, by), self.basis)
    }

    pub fn neg(&self) -> Self {
        LinearForm {
            coeffs: std::array::from_fn(|i| -self.coeffs[i].clone()),
            basis: self.basis,
        }
    }

    /// `Some(λ)` with `self = λ·other` (other converted to this basis).
    pub fn ratio_to(&self, other: &LinearForm) -> Option<Rational> {
        let other = other.in_basis(self.basis);
        proportionality(&self.coeffs, &other.coeffs)
    }

    pub fn same_line(&self, other: &LinearForm) -> bool {
        self.ratio_to(other).is_some()
    }

    /// Canonical coefficients of the line (first nonzero made +1).
    pub fn line_key(&self) -> Triple {
        normalize_triple(&self.coeffs)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_linear(&self.coeffs, vars(self.basis)))
    }
}

pub fn incident(p: &ProjPoint, f: &LinearForm) -> bool {
    f.eval(p).is_zero()
}

/// Line through two distinct points, in the basis of `p`.
pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> Result<LinearForm> {
    let q = q.in_basis(p.basis);
    let c = cross(&p.coords, &q.coords);
    if is_zero_triple(&c) {
        return Err(Error::Degenerate(format!("points {p} and {q} coincide")));
    }
    Ok(LinearForm { coeffs: c, basis: p.basis })
}

/// Intersection of two distinct lines, in the basis of `f`.
pub fn meet(f: &LinearForm, g: &LinearForm) -> Result<ProjPoint> {
    let g = g.in_basis(f.basis);
    let c = cross(&f.coeffs, &g.coeffs);
    if is_zero_triple(&c) {
        return Err(Error::Degenerate(format!("lines {f} and {g} coincide")));
    }
    Ok(ProjPoint { coords: c, basis: f.basis })
}

/// Permutation of the universal parameters `(α, β, γ)`: the coordinate in
/// slot `i` moves to slot `images[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm3([usize; 3]);

impl Perm3 {
    pub fn new(images: [usize; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &i in &images {
            if i > 2 || seen[i] {
                return Err(Error::Parse(format!("{images:?} is not a permutation of 3 symbols")));
            }
            seen[i] = true;
        }
        Ok(Perm3(images))
    }

    pub const IDENTITY: Perm3 = Perm3([0, 1, 2]);
    /// α ↔ β
    pub const SWAP_AB: Perm3 = Perm3([1, 0, 2]);
    /// β ↔ γ
    pub const SWAP_BG: Perm3 = Perm3([0, 2, 1]);
    /// α ↔ γ
    pub const SWAP_AG: Perm3 = Perm3([2, 1, 0]);
    /// α → β → γ → α
    pub const CYCLE_ABG: Perm3 = Perm3([1, 2, 0]);
    /// α → γ → β → α
    pub const CYCLE_AGB: Perm3 = Perm3([2, 0, 1]);

    pub fn all() -> [Perm3; 6] {
        [
            Perm3::IDENTITY,
            Perm3::SWAP_AB,
            Perm3::SWAP_BG,
            Perm3::SWAP_AG,
            Perm3::CYCLE_ABG,
            Perm3::CYCLE_AGB,
        ]
    }

    /// The two transpositions generating S₃.
    pub fn generators() -> [Perm3; 2] {
        [Perm3::SWAP_AB, Perm3::SWAP_BG]
    }

    pub fn images(&self) -> [usize; 3] {
        self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm3) -> Perm3 {
        Perm3(std::array::from_fn(|i| self.0[other.0[i]]))
    }

    pub fn inverse(&self) -> Perm3 {
        let mut inv = [0; 3];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm3(inv)
    }

    pub fn permute(&self, t: &Triple) -> Triple {
        let mut out: Triple = std::array::from_fn(|_| Rational::zero());
        for i in 0..3 {
            out[self.0[i]] = t[i].clone();
        }
        out
    }

    pub fn short_name(&self) -> &'static str {
        match self.0 {
            [0, 1, 2] => "id",
            [1, 0, 2] => "ab",
            [0, 2, 1] => "bg",
            [2, 1, 0] => "ag",
            [1, 2, 0] => "abg",
            [2, 0, 1] => "agb",
            _ => unreachable!("Perm3 holds a permutation"),
        }
    }

    /// Matrix of the induced point map in primed coordinates.
    pub fn primed_point_matrix(&self) -> [[Rational; 3]; 3] {
        let cols: Vec<Triple> = (0..3)
            .map(|j| {
                let mut e: Triple = std::array::from_fn(|_| Rational::zero());
                e[j] = Rational::one();
                let p = ProjPoint::new(e, Basis::Primed).expect("basis vector");
                p.act(self).coords().clone()
            })
            .collect();
        std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()))
    }
}

impl fmt::Display for Perm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// Classical series and the exceptional line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sl,
    So,
    Sp,
    Exc,
}

impl Family {
    pub fn all() -> [Family; 4] {
        [Family::Sl, Family::So, Family::Sp, Family::Exc]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Sl => "sl",
            Family::So => "so",
            Family::Sp => "sp",
            Family::Exc => "exc",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sl" => Ok(Family::Sl),
            "so" => Ok(Family::So),
            "sp" => Ok(Family::Sp),
            "exc" => Ok(Family::Exc),
            other => Err(Error::Parse(format!("unknown algebra family {other:?}"))),
        }
    }

    /// The family's line in unprimed coordinates.
    pub fn line(&self) -> LinearForm {
        LinearForm::unprimed(match self {
            Family::Sl => [1, 1, 0],
            Family::So => [2, 1, 0],
            Family::Sp => [1, 2, 0],
            Family::Exc => [-2, -2, 1],
        })
    }

    /// Table coordinates as `base + param·direction`.
    pub fn affine_parametrization(&self) -> (Triple, Triple) {
        let (base, dir) = match self {
            Family::Sl => ([-2, 2, 0], [0, 0, 1]),
            Family::So => ([-2, 4, -4], [0, 0, 1]),
            Family::Sp => ([-2, 1, 2], [0, 0, 1]),
            Family::Exc => ([-2, 4, 4], [0, 1, 2]),
        };
        (base.map(int), dir.map(int))
    }

    /// Whether `param` names an actual simple Lie algebra of the family.
    pub fn is_algebra_param(&self, param: &Rational) -> bool {
        match self {
            Family::Exc => {
                [int(0), int(1), int(2), int(4), int(8)].contains(param)
                    || *param == crate::rational::rat(-2, 3)
            }
            _ if !param.is_integer() => false,
            Family::Sl => *param >= int(2),
            Family::So => *param >= int(5),
            Family::Sp => *param >= int(1),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A row of the Vogel table evaluated at a parameter value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraPoint {
    pub family: Family,
    #[serde(with = "crate::rational::serde_rational")]
    pub param: Rational,
    pub point: ProjPoint,
    #[serde(with = "crate::rational::serde_rational")]
    pub t: Rational,
    /// True when `param` corresponds to an actual simple Lie algebra.
    pub is_algebra: bool,
}

/// Table coordinates for `family` at `param` (N for the classical series,
/// n for the exceptional line). Any rational is accepted.
pub fn vogel_point(family: Family, param: Rational) -> AlgebraPoint {
    let (base, dir) = family.affine_parametrization();
    let coords: Triple = std::array::from_fn(|i| &base[i] + &dir[i] * &param);
    let t = coords.iter().sum();
    let is_algebra = family.is_algebra_param(&param);
    AlgebraPoint {
        family,
        point: ProjPoint::new(coords, Basis::Unprimed).expect("α = −2 is never zero"),
        param,
        t,
        is_algebra,
    }
}

/// One of the twelve lines on which a non-uniqueness factor should be 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistinguishedLine {
    pub label: String,
    pub form: LinearForm,
}

/// Base lines `sl`, `so`, `exc` and the unprimed listing of their images,
/// in a fixed order.
const UNPRIMED_LINES: [[i64; 3]; 12] = [
    [1, 1, 0],
    [2, 1, 0],
    [-2, -2, 1],
    [1, 0, 1],
    [0, 1, 1],
    [1, 2, 0],
    [1, 0, 2],
    [0, 1, 2],
    [2, 0, 1],
    [0, 2, 1],
    [-2, 1, -2],
    [1, -2, -2],
];

fn line_label(form: &LinearForm) -> String {
    if form.same_line(&Family::Sp.line()) {
        return "sp".into();
    }
    for base in [Family::Sl, Family::So, Family::Exc] {
        for perm in Perm3::all() {
            if base.line().act(&perm).same_line(form) {
                return if perm == Perm3::IDENTITY {
                    base.name().to_string()
                } else {
                    format!("{}.{}", base.name(), perm.short_name())
                };
            }
        }
    }
    unreachable!("every listed line is an image of a base line")
}

/// The twelve distinguished lines, labeled, in the requested basis.
pub fn distinguished_lines(basis: Basis) -> Vec<DistinguishedLine> {
    UNPRIMED_LINES
        .iter()
        .map(|c| {
            let form = LinearForm::unprimed(*c);
            DistinguishedLine {
                label: line_label(&form),
                form: form.in_basis(basis),
            }
        })
        .collect()
}

/// Looks a distinguished line up by label (`sl`, `so`, `sp`, `exc`,
/// `sl.bg`, …).
pub fn distinguished_line(label: &str, basis: Basis) -> Result<LinearForm> {
    distinguished_lines(basis)
        .into_iter()
        .find(|l| l.label == label.trim())
        .map(|l| l.form)
        .ok_or_else(|| Error::Parse(format!("unknown distinguished line {label:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{random_nonzero, rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_point(rng: &mut ChaCha8Rng, basis: Basis) -> ProjPoint {
        ProjPoint::new(std::array::from_fn(|_| random_nonzero(rng, 50)), basis).unwrap()
    }

    #[test]
    fn sl_point_becomes_alpha_prime_zero() {
        // (−2, 2, N) ↦ (0, −2, N)
        let p = ProjPoint::new([int(-2), int(2), rat(7, 3)], Basis::Unprimed).unwrap();
        let q = p.to_primed().unwrap();
        assert_eq!(q.coords(), &[int(0), int(-2), rat(7, 3)]);
    }

    #[test]
    fn sl_form_becomes_alpha_prime() {
        let f = Family::Sl.line().to_primed().unwrap();
        assert_eq!(f.coeffs(), &[int(1), int(0), int(0)]);
    }

    #[test]
    fn inverse_map_examples() {
        let p = ProjPoint::primed([1, 0, 0]).to_unprimed().unwrap();
        assert_eq!(p.coords(), &[int(-1), int(2), int(2)]);
        let f = LinearForm::primed([3, -1, 0]).to_unprimed().unwrap();
        assert_eq!(f.coeffs(), &[int(1), int(2), int(0)]);
    }

    #[test]
    fn converting_twice_in_same_direction_fails() {
        let p = ProjPoint::primed([1, 2, 3]);
        assert!(matches!(p.to_primed(), Err(Error::BasisMismatch { .. })));
        let f = LinearForm::unprimed([1, 2, 3]);
        assert!(matches!(f.to_unprimed(), Err(Error::BasisMismatch { .. })));
    }

    #[test]
    fn basis_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let p = random_point(&mut rng, Basis::Unprimed);
            let back = p.to_primed().unwrap().to_unprimed().unwrap();
            assert_eq!(back.coords(), p.coords());
            let f = LinearForm::new(p.coords().clone(), Basis::Primed).unwrap();
            let back = f.to_unprimed().unwrap().to_primed().unwrap();
            assert_eq!(back, f);
        }
    }

    #[test]
    fn transposition_maps_so_to_sp() {
        let f = Family::So.line().act(&Perm3::SWAP_AB);
        assert_eq!(f, Family::Sp.line());
        let g = LinearForm::unprimed([2, 1, 0]).act(&Perm3::IDENTITY);
        assert_eq!(g, Family::So.line());
    }

    #[test]
    fn primed_generator_matrices() {
        // α↔β: (α′, β′, γ′) ↦ (α′, 3α′ − β′, γ′)
        let m = Perm3::SWAP_AB.primed_point_matrix();
        let expect = [[1, 0, 0], [3, -1, 0], [0, 0, 1]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m[i][j], int(expect[i][j]));
            }
        }
        // β↔γ: (α′, β′, γ′) ↦ (α′+β′+γ′, 2β′+γ′, −3β′−2γ′)
        let m = Perm3::SWAP_BG.primed_point_matrix();
        let expect = [[1, 1, 1], [0, 2, 1], [0, -3, -2]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m[i][j], int(expect[i][j]));
            }
        }
    }

    #[test]
    fn table_rows() {
        let a = vogel_point(Family::Sl, int(5));
        assert_eq!(a.point.coords(), &[int(-2), int(2), int(5)]);
        assert_eq!(a.t, int(5));
        let a = vogel_point(Family::So, int(7));
        assert_eq!(a.point.coords(), &[int(-2), int(4), int(3)]);
        assert_eq!(a.t, int(5));
        let a = vogel_point(Family::Sp, int(3));
        assert_eq!(a.point.coords(), &[int(-2), int(1), int(5)]);
        assert_eq!(a.t, int(4));
        let a = vogel_point(Family::Exc, int(8));
        assert_eq!(a.point.coords(), &[int(-2), int(12), int(20)]);
        assert_eq!(a.t, int(30));
        assert!(a.is_algebra);
        assert!(vogel_point(Family::Exc, rat(-2, 3)).is_algebra);
        assert!(!vogel_point(Family::Sl, rat(5, 2)).is_algebra);
    }

    #[test]
    fn table_points_lie_on_their_lines_and_t_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for fam in Family::all() {
            for _ in 0..20 {
                let param = random_nonzero(&mut rng, 40);
                let a = vogel_point(fam, param.clone());
                assert!(incident(&a.point, &fam.line()), "{fam} at {param}");
                let t_formula = match fam {
                    Family::Sl => param.clone(),
                    Family::So => &param - int(2),
                    Family::Sp => &param + int(1),
                    Family::Exc => &param * int(3) + int(6),
                };
                assert_eq!(a.t, t_formula);
            }
        }
    }

    #[test]
    fn incidence_primitives() {
        assert!(incident(&ProjPoint::unprimed([-2, 2, 5]), &Family::Sl.line()));
        let m = meet(&LinearForm::primed([1, 0, 0]), &LinearForm::primed([0, 1, 0])).unwrap();
        assert_eq!(m, ProjPoint::primed([0, 0, 1]));
        let l = line_through(&ProjPoint::unprimed([1, 0, 0]), &ProjPoint::unprimed([0, 1, 0])).unwrap();
        assert!(l.same_line(&LinearForm::unprimed([0, 0, 1])));
        assert!(line_through(&ProjPoint::unprimed([1, 2, 3]), &ProjPoint::unprimed([2, 4, 6])).is_err());
        assert!(meet(&LinearForm::unprimed([1, 2, 3]), &LinearForm::unprimed([-1, -2, -3])).is_err());
    }

    #[test]
    fn twelve_lines_closed_under_s3() {
        let lines = distinguished_lines(Basis::Unprimed);
        assert_eq!(lines.len(), 12);
        for (i, a) in lines.iter().enumerate() {
            for b in &lines[i + 1..] {
                assert!(!a.form.same_line(&b.form));
            }
        }
        for perm in Perm3::all() {
            for l in &lines {
                let img = l.form.act(&perm);
                assert!(lines.iter().any(|m| m.form.same_line(&img)));
            }
        }
        let labels: Vec<&str> = lines.iter().map(|l| l.label.as_str()).collect();
        assert_eq!(&labels[..3], &["sl", "so", "exc"]);
        assert!(labels.contains(&"sp"));
    }

    #[test]
    fn primed_listing_contains_sp() {
        let sp = distinguished_line("sp", Basis::Primed).unwrap();
        assert_eq!(sp.coeffs(), &[int(3), int(-1), int(0)]);
    }

    #[test]
    fn points_equal_up_to_scale() {
        let p = ProjPoint::unprimed([1, 2, 3]);
        let q = ProjPoint::unprimed([-2, -4, -6]);
        assert_eq!(p, q);
        assert_eq!(p, q.to_primed().unwrap());
    }

    #[test]
    fn json_shape() {
        let f = LinearForm::new([rat(1, 4), int(-2), int(0)], Basis::Primed).unwrap();
        let js = serde_json::to_value(&f).unwrap();
        assert_eq!(
            js,
            serde_json::json!({"coeffs": [["1", "4"], ["-2", "1"], ["0", "1"]], "basis": "primed"})
        );
        let back: LinearForm = serde_json::from_value(js).unwrap();
        assert_eq!(back, f);
        let zero = serde_json::json!({"coeffs": [["0","1"],["0","1"],["0","1"]], "basis": "primed"});
        assert!(serde_json::from_value::<ProjPoint>(zero).is_err());
    }
}
