//! Nullspace solutions of a constraint system as parametric families.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::system::{unknown_name, ConstraintSystem, Unknowns};
use crate::error::{Error, Result};
use crate::formula::FactorProduct;
use crate::identity::{FactorRef, Side};
use crate::linalg::nullspace_with_free;
use crate::rational::{fmt_rational, int, serde_rational_matrix, Rational};

/// Solutions `Σ θⱼ·basisⱼ` of a system, with the free unknowns `θ` named
/// after the columns they came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFamily {
    pub system: ConstraintSystem,
    pub quantum: bool,
    pub params: Vec<String>,
    #[serde(with = "serde_rational_matrix")]
    pub basis: Vec<Vec<Rational>>,
    pub nontrivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum SolveOutcome {
    Family(SolutionFamily),
    Trivial(SolutionFamily),
    Infeasible { reason: String },
}

impl SolveOutcome {
    pub fn family(&self) -> Option<&SolutionFamily> {
        match self {
            SolveOutcome::Family(f) | SolveOutcome::Trivial(f) => Some(f),
            SolveOutcome::Infeasible { .. } => None,
        }
    }

    pub fn is_nontrivial(&self) -> bool {
        matches!(self, SolveOutcome::Family(_))
    }
}

/// Bound for random instantiation parameters.
const PARAM_BOUND: i64 = 1000;

impl SolutionFamily {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn values(&self, theta: &[Rational]) -> Unknowns {
        let mut flat = vec![Rational::zero(); 3 * self.system.k];
        for (t, b) in theta.iter().zip(&self.basis) {
            for (f, bv) in flat.iter_mut().zip(b) {
                *f += t * bv;
            }
        }
        Unknowns::from_flat(&flat)
    }

    pub fn factor_product(&self, theta: &[Rational]) -> Result<FactorProduct> {
        self.system.factor_product(&self.values(theta), self.quantum)
    }

    /// Forms that vanish for every parameter value.
    pub fn identically_zero_forms(&self) -> Vec<FactorRef> {
        let k = self.system.k;
        let mut out = Vec::new();
        for i in 0..k {
            let cols = [i, k + i, 2 * k + i];
            if self.basis.iter().all(|b| cols.iter().all(|&j| b[j].is_zero())) {
                out.push(FactorRef { side: Side::Num, index: i });
            }
            let pi = self.system.perms.p.apply(i);
            let den_zero = self.basis.iter().all(|b| {
                (&self.system.mult.c[i] * &b[pi]).is_zero() && b[k + i].is_zero() && b[2 * k + i].is_zero()
            });
            if den_zero {
                out.push(FactorRef { side: Side::Den, index: i });
            }
        }
        out
    }

    /// A random parameter vector whose forms are all nonzero.
    pub fn random_instance<R: Rng>(&self, rng: &mut R) -> Result<(Vec<Rational>, FactorProduct)> {
        for _ in 0..100 {
            let theta: Vec<Rational> = (0..self.dim()).map(|_| int(rng.gen_range(-PARAM_BOUND..=PARAM_BOUND))).collect();
            if let Ok(f) = self.factor_product(&theta) {
                return Ok((theta, f));
            }
        }
        Err(Error::DegenerateFamily("no instantiation with all forms nonzero after 100 draws".into()))
    }

    /// Human-readable `nᵢ, xᵢ, yᵢ` as linear expressions in the parameters.
    pub fn expressions(&self) -> Vec<(String, String)> {
        let k = self.system.k;
        (0..3 * k)
            .map(|j| {
                let terms: Vec<String> = self
                    .basis
                    .iter()
                    .zip(&self.params)
                    .filter(|(b, _)| !b[j].is_zero())
                    .map(|(b, name)| {
                        if b[j].is_one() {
                            name.clone()
                        } else if b[j] == -Rational::one() {
                            format!("-{name}")
                        } else {
                            format!("{}·{name}", fmt_rational(&b[j]))
                        }
                    })
                    .collect();
                let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ").replace("+ -", "- ") };
                (unknown_name(j, k), rhs)
            })
            .collect()
    }
}

/// True iff two independent random instantiations both survive
/// cancellation with factors left over.
pub fn is_nontrivial(family: &SolutionFamily, seed: u64) -> Result<bool> {
    if family.dim() == 0 {
        return Err(Error::DegenerateFamily("family has no free parameters".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..2 {
        let (_, f) = family.random_instance(&mut rng)?;
        if f.cancel().is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Solves a system with fixed multipliers. Quantum families may only
/// cancel pairs equal up to sign.
pub fn solve(sys: &ConstraintSystem, quantum: bool, seed: u64) -> SolveOutcome {
    let k = sys.k;
    let rows: Vec<Vec<Rational>> = sys.equations.iter().map(|e| e.coeffs.clone()).collect();
    let (free, basis) = nullspace_with_free(&rows, 3 * k);
    family_from_basis(sys.clone(), quantum, free, basis, seed)
}

pub(crate) fn family_from_basis(
    system: ConstraintSystem,
    quantum: bool,
    free: Vec<usize>,
    basis: Vec<Vec<Rational>>,
    seed: u64,
) -> SolveOutcome {
    if basis.is_empty() {
        return SolveOutcome::Infeasible { reason: "only the zero solution".into() };
    }
    let k = system.k;
    let params = free.iter().map(|&col| unknown_name(col, k)).collect();
    let mut fam = SolutionFamily { system, quantum, params, basis, nontrivial: false };
    let zero = fam.identically_zero_forms();
    if !zero.is_empty() {
        let names: Vec<String> = zero.iter().map(|f| format!("{:?} {}", f.side, f.index + 1).to_lowercase()).collect();
        return SolveOutcome::Infeasible { reason: format!("forms vanish identically: {}", names.join(", ")) };
    }
    match is_nontrivial(&fam, seed) {
        Ok(true) => {
            fam.nontrivial = true;
            SolveOutcome::Family(fam)
        }
        Ok(false) => SolveOutcome::Trivial(fam),
        Err(e) => SolveOutcome::Infeasible { reason: e.to_string() },
    }
}

/// Quantum solve: multipliers must all be ±1.
pub fn solve_quantum(sys: &ConstraintSystem, seed: u64) -> Result<SolveOutcome> {
    if !sys.mult.is_signs() {
        return Err(Error::InvalidMultiplier("quantum systems take ±1 multipliers only".into()));
    }
    Ok(solve(sys, true, seed))
}
