//! The two closed-form non-uniqueness factors, the parameter relations that
//! produce the four-line one, and helpers that recognize them inside search
//! output.

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::perm::{Perm, PermTriple};
use super::solve::SolutionFamily;
use super::system::{LineSet, MultiplierAssignment, Unknowns};
use crate::error::{Error, Result};
use crate::formula::FactorProduct;
use crate::linalg::rref;
use crate::rational::{int, random_nonzero, serde_rational, Rational};
use crate::vogelplane::{Basis, LinearForm};

fn primed(c: [Rational; 3]) -> Result<LinearForm> {
    LinearForm::new(c, Basis::Primed)
}

/// Three-line factor with parameters `(c₁, c₂, x, y)`:
///
/// `(α′+xβ′+yγ′)(c₁c₂α′+c₂xβ′+yγ′)(c₁α′+c₁c₂xβ′+yγ′) /
///  (c₁α′+xβ′+yγ′)(α′+c₂xβ′+yγ′)(c₁c₂α′+c₁c₂xβ′+yγ′)`
pub fn builtin_q33(c1: &Rational, c2: &Rational, x: &Rational, y: &Rational, quantum: bool) -> Result<FactorProduct> {
    let one = Rational::one();
    let c12 = c1 * c2;
    let num = vec![
        primed([one.clone(), x.clone(), y.clone()])?,
        primed([c12.clone(), c2 * x, y.clone()])?,
        primed([c1.clone(), &c12 * x, y.clone()])?,
    ];
    let den = vec![
        primed([c1.clone(), x.clone(), y.clone()])?,
        primed([one, c2 * x, y.clone()])?,
        primed([c12.clone(), &c12 * x, y.clone()])?,
    ];
    FactorProduct::new(quantum, Basis::Primed, num, den)
}

/// Four-line factor with parameters `(n, x, x′, y)` and
/// `n′ = −(n + 3x + 3x′)`; the denominator is the numerator with `n ↔ n′`.
pub fn builtin_q_prop4(n: &Rational, x: &Rational, xp: &Rational, y: &Rational, quantum: bool) -> Result<FactorProduct> {
    let three = int(3);
    let np = -(n + &three * x + &three * xp);
    let f = |a: &Rational, b: &Rational, c: Rational| primed([a.clone(), b.clone(), c]);
    let num = vec![f(n, x, -y)?, f(&np, xp, -y)?, f(n, xp, y.clone())?, f(&np, x, y.clone())?];
    let den = vec![f(&np, x, -y)?, f(n, xp, -y)?, f(&np, xp, y.clone())?, f(n, x, y.clone())?];
    FactorProduct::new(quantum, Basis::Primed, num, den)
}

/// `s(i) = i+1`, `p(i) = i+2` (mod 3).
pub fn q33_perms() -> PermTriple {
    PermTriple { s: Perm::shift(3, 1), p: Perm::shift(3, 2), v: None }
}

/// `s = (12)(34)`, `p = (14)(23)`, `v = (13)(24)`.
pub fn prop4_perms() -> PermTriple {
    PermTriple {
        s: Perm::from_one_based(&[2, 1, 4, 3]).expect("valid"),
        p: Perm::from_one_based(&[4, 3, 2, 1]).expect("valid"),
        v: Some(Perm::from_one_based(&[3, 4, 1, 2]).expect("valid")),
    }
}

/// Free parameters of the four-line solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop4Free {
    #[serde(with = "serde_rational")]
    pub k1: Rational,
    #[serde(with = "serde_rational")]
    pub k3: Rational,
    #[serde(with = "serde_rational")]
    pub c2: Rational,
    #[serde(with = "serde_rational")]
    pub x1: Rational,
    #[serde(with = "serde_rational")]
    pub x2: Rational,
    #[serde(with = "serde_rational")]
    pub y3: Rational,
    #[serde(with = "serde_rational")]
    pub n1: Rational,
}

impl Prop4Free {
    pub fn random<R: Rng>(rng: &mut R, bound: i64) -> Prop4Free {
        let mut r = || random_nonzero(rng, bound);
        Prop4Free { k1: r(), k3: r(), c2: r(), x1: r(), x2: r(), y3: r(), n1: r() }
    }
}

/// Sign choice in `r₁ = ∓c₂k₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `r₁ = −c₂k₁`
    Minus,
    /// `r₁ = +c₂k₁`
    Plus,
}

pub fn prop4_multipliers(f: &Prop4Free, branch: Branch) -> MultiplierAssignment {
    let one = Rational::one();
    let c1 = &f.c2 * &f.k1 * &f.k3;
    let r1 = match branch {
        Branch::Minus => -(&f.c2 * &f.k1),
        Branch::Plus => &f.c2 * &f.k1,
    };
    MultiplierAssignment {
        c: vec![c1.clone(), f.c2.clone(), &one / &f.c2, &one / &c1],
        kmul: vec![f.k1.clone(), &one / &f.k1, f.k3.clone(), &one / &f.k3],
        r: Some(vec![
            r1.clone(),
            &r1 * &f.k3 / &f.k1,
            &one / &r1,
            &f.k1 / (&r1 * &f.k3),
        ]),
    }
}

/// Values of all unknowns on the minus branch.
pub fn prop4_values(f: &Prop4Free) -> Unknowns {
    let three = int(3);
    let r1 = -(&f.c2 * &f.k1);
    let x3 = &f.x2 / &f.c2;
    let x4 = &f.x1 / (&f.c2 * &f.k1 * &f.k3);
    let y4 = &f.y3 / &f.k3;
    let y1 = &r1 * &f.y3;
    let y2 = &y1 / &f.k1;
    let n2 = -(&f.n1 + &three * &f.x1 + &three * &f.k1 * &f.x2) / &f.k1;
    let n4 = &n2 / (&f.c2 * &f.k3);
    let n3 = &f.n1 / (&f.k1 * &f.c2);
    Unknowns {
        n: vec![f.n1.clone(), n2, n3, n4],
        x: vec![f.x1.clone(), f.x2.clone(), x3, x4],
        y: vec![y1, y2, f.y3.clone(), y4],
    }
}

/// Pairings under which the factors of [`builtin_q33`], in their printed
/// order, solve the three-line system: `s(i) = i+2`, `p(i) = i+1`.
pub fn q33_builtin_perms() -> PermTriple {
    PermTriple { s: Perm::shift(3, 2), p: Perm::shift(3, 1), v: None }
}

/// The normalized solution for `s(i) = i+1`, `p(i) = i+2`: `nᵢ = 1`,
/// `kᵢ = cᵢ`, `x₂ = c₂x₁`, `x₃ = c₂c₃x₁`, `y₂ = c₂c₃y₁`, `y₃ = c₃y₁`.
pub fn q33_printed_assignment(c1: &Rational, c2: &Rational, x: &Rational, y: &Rational) -> (MultiplierAssignment, Unknowns) {
    let one = Rational::one();
    let c3 = &one / (c1 * c2);
    let c = vec![c1.clone(), c2.clone(), c3.clone()];
    let mult = MultiplierAssignment { c: c.clone(), kmul: c, r: None };
    let vals = Unknowns {
        n: vec![one.clone(), one.clone(), one],
        x: vec![x.clone(), c2 * x, c2 * &c3 * x],
        y: vec![y.clone(), c2 * &c3 * y, &c3 * y],
    };
    (mult, vals)
}

/// Reads the multipliers and unknowns of a product whose factors are
/// already paired on sl as `denᵢ|sl = numᵢ|sl`, using the given pairings on
/// the other lines.
pub fn assignment_from_q(f: &FactorProduct, perms: &PermTriple, lines: LineSet) -> Result<(MultiplierAssignment, Unknowns)> {
    let f = f.in_basis(Basis::Primed);
    let k = f.k();
    if perms.k() != k {
        return Err(Error::InvalidSystem(format!("permutations act on {} indices, product has {k}", perms.k())));
    }
    let num: Vec<&[Rational; 3]> = f.num().iter().map(|g| g.coeffs()).collect();
    let den: Vec<&[Rational; 3]> = f.den().iter().map(|g| g.coeffs()).collect();
    for i in 0..k {
        if num[i][1] != den[i][1] || num[i][2] != den[i][2] {
            return Err(Error::InvalidSystem(format!("factor {} is not paired with itself on sl", i + 1)));
        }
    }
    // ratio den_i / num_j restricted to a line given as two coefficient maps
    let ratio = |i: usize, j: usize, proj: &dyn Fn(&[Rational; 3]) -> [Rational; 2]| -> Result<Rational> {
        let (a, b) = (proj(den[i]), proj(num[j]));
        let lambda = if !b[0].is_zero() { &a[0] / &b[0] } else if !b[1].is_zero() { &a[1] / &b[1] } else {
            return Err(Error::InvalidSystem(format!("numerator {} vanishes on a black line", j + 1)));
        };
        if a[0] != &lambda * &b[0] || a[1] != &lambda * &b[1] {
            return Err(Error::InvalidSystem(format!("denominator {} is not proportional to numerator {} on a black line", i + 1, j + 1)));
        }
        Ok(lambda)
    };
    let so = |c: &[Rational; 3]| [c[0].clone(), c[2].clone()];
    let exc = |c: &[Rational; 3]| [c[0].clone(), c[1].clone()];
    let sp = |c: &[Rational; 3]| [&c[0] + int(3) * &c[1], c[2].clone()];
    let kmul = (0..k).map(|i| ratio(i, perms.s.apply(i), &so)).collect::<Result<Vec<_>>>()?;
    let c = (0..k).map(|i| ratio(i, perms.p.apply(i), &exc)).collect::<Result<Vec<_>>>()?;
    let r = match (lines, &perms.v) {
        (LineSet::Four, Some(v)) => Some((0..k).map(|i| ratio(i, v.apply(i), &sp)).collect::<Result<Vec<_>>>()?),
        (LineSet::Three, _) => None,
        (LineSet::Four, None) => return Err(Error::InvalidSystem("v missing for four lines".into())),
    };
    let vals = Unknowns {
        n: num.iter().map(|c| c[0].clone()).collect(),
        x: num.iter().map(|c| c[1].clone()).collect(),
        y: num.iter().map(|c| c[2].clone()).collect(),
    };
    Ok((MultiplierAssignment { c, kmul, r }, vals))
}

/// If `f` equals `builtin_q33(c₁, c₂, x, y)` (or its inverse) as a rational
/// function for some parameters, returns them.
pub fn match_q33(f: &FactorProduct) -> Option<[Rational; 4]> {
    if f.k() != 3 {
        return None;
    }
    let f = f.in_basis(Basis::Primed).as_classical();
    for g in [f.clone(), f.inverse()] {
        for a in 0..3 {
            for b in 0..3 {
                if a == b {
                    continue;
                }
                let Some(params) = q33_params_from(g.num()[a].coeffs(), g.num()[b].coeffs()) else { continue };
                let [c1, c2, x, y] = &params;
                let Ok(q) = builtin_q33(c1, c2, x, y, false) else { continue };
                if g.ratio(&q).map(|r| r.is_trivial()).unwrap_or(false) {
                    return Some(params);
                }
            }
        }
    }
    None
}

/// Reads `(c₁, c₂, x, y)` assuming `a ∝ (1, x, y)` and `b ∝ (c₁c₂, c₂x, y)`.
fn q33_params_from(a: &[Rational; 3], b: &[Rational; 3]) -> Option<[Rational; 4]> {
    if a[0].is_zero() || a[1].is_zero() || a[2].is_zero() || b[2].is_zero() {
        return None;
    }
    let x = &a[1] / &a[0];
    let y = &a[2] / &a[0];
    let lambda = &b[2] / &y;
    let c12 = &b[0] / &lambda;
    let c2 = &b[1] / &lambda / &x;
    if c2.is_zero() || c12.is_zero() {
        return None;
    }
    let c1 = &c12 / &c2;
    Some([c1, c2, x, y])
}

/// Looks for parameters of `family` that reproduce `target` factor by
/// factor up to sign, then confirms the whole products agree as quantum
/// functions.
pub fn match_family_to(family: &SolutionFamily, target: &FactorProduct) -> Option<Vec<Rational>> {
    let k = family.system.k;
    if target.k() != k {
        return None;
    }
    let target = target.in_basis(Basis::Primed);
    let d = family.dim();
    for sigma in Perm::all(k) {
        for signs in 0u32..(1 << k) {
            // rows: for each i and coordinate, Σ θ_j·basis_j[col] = ε_i·target_num[σ(i)][coord]
            let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(3 * k);
            for i in 0..k {
                let eps = if signs >> i & 1 == 1 { -Rational::one() } else { Rational::one() };
                let t = target.num()[sigma.apply(i)].coeffs();
                for (coord, col) in [i, k + i, 2 * k + i].into_iter().enumerate() {
                    let mut row: Vec<Rational> = family.basis.iter().map(|b| b[col].clone()).collect();
                    row.push(&eps * &t[coord]);
                    rows.push(row);
                }
            }
            let pivots = rref(&mut rows, d + 1);
            if pivots.contains(&d) {
                continue;
            }
            let mut theta = vec![Rational::zero(); d];
            for (r, &pc) in pivots.iter().enumerate() {
                theta[pc] = rows[r][d].clone();
            }
            let Ok(inst) = family.factor_product(&theta) else { continue };
            let Ok(q) = inst.as_quantum() else { continue };
            let Ok(tq) = target.as_quantum() else { continue };
            if q.ratio(&tq).map(|r| r.is_trivial()).unwrap_or(false) {
                return Some(theta);
            }
        }
    }
    None
}
