//! Permutations of factor indices `{0, …, k−1}`, printed 1-based in cycle
//! notation.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(k: usize) -> Perm {
        Perm((0..k).collect())
    }

    /// From 0-based images; fails unless they form a bijection.
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &i in &images {
            if i >= k || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidSystem(format!("not a permutation: {images:?}")));
            }
        }
        Ok(Perm(images))
    }

    /// From 1-based images, as written in the text (`s(1)=2, …`).
    pub fn from_one_based(images: &[usize]) -> Result<Perm> {
        if images.contains(&0) {
            return Err(Error::InvalidSystem("1-based images must be positive".into()));
        }
        Perm::new(images.iter().map(|i| i - 1).collect())
    }

    /// Shift `i ↦ i + by (mod k)`.
    pub fn shift(k: usize, by: usize) -> Perm {
        Perm((0..k).map(|i| (i + by) % k).collect())
    }

    /// Parses cycle notation `"(12)(34)"` / `"(1,2)(3,4)"` or a comma list
    /// of 1-based images `"2,1,4,3"`.
    pub fn parse(text: &str, k: usize) -> Result<Perm> {
        let t = text.trim();
        let bad = || Error::Parse(format!("bad permutation {text:?}"));
        if t.is_empty() || t == "id" || t == "()" {
            return Ok(Perm::identity(k));
        }
        if !t.starts_with('(') {
            let imgs: Vec<usize> = t
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            if imgs.len() != k {
                return Err(Error::Parse(format!("{text:?} has {} images, expected {k}", imgs.len())));
            }
            return Perm::from_one_based(&imgs);
        }
        let mut images: Vec<usize> = (0..k).collect();
        for cyc in t.split(')').map(str::trim).filter(|c| !c.is_empty()) {
            let body = cyc.strip_prefix('(').ok_or_else(bad)?;
            let elems: Vec<usize> = if body.contains(',') {
                body.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
            } else {
                body.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
            };
            if elems.iter().any(|&e| e == 0 || e > k) {
                return Err(bad());
            }
            for (a, b) in elems.iter().zip(elems.iter().cycle().skip(1)) {
                images[a - 1] = b - 1;
            }
        }
        Perm::new(images)
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.k()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// `τ ∘ self ∘ τ⁻¹`, i.e. the same permutation after relabeling `i ↦ τ(i)`.
    pub fn conjugate_by(&self, tau: &Perm) -> Perm {
        tau.compose(self).compose(&tau.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i != j)
    }

    /// Cycles including fixed points, each starting at its smallest element,
    /// ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.k()];
        let mut out = Vec::new();
        for start in 0..self.k() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.0[i];
            }
            out.push(cyc);
        }
        out
    }

    /// All permutations of `k` elements in lexicographic order of images.
    pub fn all(k: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("()");
        }
        let sep = if self.k() >= 10 { "," } else { "" };
        for cyc in self.cycles().into_iter().filter(|c| c.len() > 1) {
            let body: Vec<String> = cyc.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", body.join(sep))?;
        }
        Ok(())
    }
}

/// Serialized as 1-based images.
impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.iter().map(|i| i + 1).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Perm::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

/// Pairing permutations read off the black lines after the first one:
/// `s` (so), `p` (exc) and, with four lines, `v` (sp).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PermTriple {
    pub s: Perm,
    pub p: Perm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Perm>,
}

impl PermTriple {
    pub fn k(&self) -> usize {
        self.s.k()
    }

    pub fn conjugate_by(&self, tau: &Perm) -> PermTriple {
        PermTriple {
            s: self.s.conjugate_by(tau),
            p: self.p.conjugate_by(tau),
            v: self.v.as_ref().map(|v| v.conjugate_by(tau)),
        }
    }
}

impl fmt::Display for PermTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={} p={}", self.s, self.p)?;
        if let Some(v) = &self.v {
            write!(f, " v={v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_round_trip() {
        let s = Perm::from_one_based(&[2, 1, 4, 3]).unwrap();
        assert_eq!(s.to_string(), "(12)(34)");
        assert_eq!(Perm::parse("(12)(34)", 4).unwrap(), s);
        assert_eq!(Perm::parse("2,1,4,3", 4).unwrap(), s);
        assert_eq!(Perm::parse("(1,2)(3,4)", 4).unwrap(), s);
        assert_eq!(Perm::identity(3).to_string(), "()");
        assert_eq!(Perm::shift(3, 1).to_string(), "(123)");
    }

    #[test]
    fn counts_and_order() {
        let all = Perm::all(4);
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Perm::all(1).len(), 1);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::new(vec![0, 0]).is_err());
        assert!(Perm::parse("(15)", 4).is_err());
    }

    #[test]
    fn conjugation_relabels() {
        let s = Perm::shift(3, 1);
        let tau = Perm::from_one_based(&[2, 1, 3]).unwrap();
        let c = s.conjugate_by(&tau);
        for i in 0..3 {
            assert_eq!(c.apply(tau.apply(i)), tau.apply(s.apply(i)));
        }
        assert_eq!(s.compose(&s.inverse()), Perm::identity(3));
    }
}
