//! Exact point-line pictures of non-uniqueness factors.
//!
//! Numerator forms are drawn red, denominator forms green, and the
//! distinguished lines black. A factor equal to 1 on every black line shows
//! up as `k` red-green meets on each black line.

use serde::{Deserialize, Serialize};

use super::coloring::{Coloring, LineColor};
use super::table::ConfigurationTable;
use crate::error::{Error, Result};
use crate::formula::FactorProduct;
use crate::vogelplane::{incident, meet, Basis, LinearForm, PlaneObject, ProjPoint};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SketchLine {
    pub label: String,
    pub color: LineColor,
    pub form: LinearForm,
}

/// A red line and a green line meeting on a black line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriplePoint {
    pub point: usize,
    pub red: usize,
    pub green: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IncidenceSketch {
    /// Primed coordinates; point `i` has label `i + 1`.
    pub points: Vec<ProjPoint>,
    /// Black lines first, then red (numerator) and green (denominator).
    pub lines: Vec<SketchLine>,
    /// For each black line, its triple points ordered by red index.
    pub triple_points: Vec<Vec<TriplePoint>>,
}

impl IncidenceSketch {
    pub fn black_count(&self) -> usize {
        self.triple_points.len()
    }

    pub fn k(&self) -> usize {
        self.lines.iter().filter(|l| l.color == LineColor::Red).count()
    }

    /// Column `j` of the table lists the points on line `j`.
    pub fn table(&self) -> ConfigurationTable {
        let columns: Vec<Vec<usize>> = self
            .lines
            .iter()
            .map(|l| (0..self.points.len()).filter(|&i| incident(&self.points[i], &l.form)).map(|i| i + 1).collect())
            .collect();
        let pi = columns.first().map_or(0, Vec::len);
        ConfigurationTable::new(self.points.len(), self.lines.len(), 3, pi, columns)
    }

    /// The coloring the construction comes with.
    pub fn coloring(&self) -> Coloring {
        let class = |c: LineColor| (0..self.lines.len()).filter(|&j| self.lines[j].color == c).collect();
        Coloring { black: class(LineColor::Black), red: class(LineColor::Red), green: class(LineColor::Green) }
    }

    /// Every recorded incidence holds exactly and every black line carries
    /// `k` triple points.
    pub fn check(&self) -> Result<()> {
        let k = self.k();
        for (b, tps) in self.triple_points.iter().enumerate() {
            if tps.len() != k {
                return Err(Error::NotAQPicture(format!("black line {} carries {} triple points, expected {k}", b + 1, tps.len())));
            }
            let nb = self.black_count();
            for tp in tps {
                let p = &self.points[tp.point];
                for j in [b, nb + tp.red, nb + k + tp.green] {
                    if !incident(p, &self.lines[j].form) {
                        return Err(Error::NotAQPicture(format!("point {} is off line {}", tp.point + 1, self.lines[j].label)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds the picture of `f` against `black`. Every red-green meet lying on
/// a black line is kept; each black line must carry exactly `k` of them.
pub fn sketch_from_q(f: &FactorProduct, black: &[LinearForm]) -> Result<(IncidenceSketch, ConfigurationTable)> {
    let f = f.in_basis(Basis::Primed);
    let k = f.k();
    let black: Vec<LinearForm> = black.iter().map(|l| l.in_basis(Basis::Primed)).collect();
    let nb = black.len();
    let mut lines: Vec<SketchLine> = Vec::with_capacity(nb + 2 * k);
    lines.extend(black.iter().enumerate().map(|(i, form)| SketchLine {
        label: format!("b{}", i + 1),
        color: LineColor::Black,
        form: form.clone(),
    }));
    lines.extend(f.num().iter().enumerate().map(|(i, form)| SketchLine {
        label: format!("r{}", i + 1),
        color: LineColor::Red,
        form: form.clone(),
    }));
    lines.extend(f.den().iter().enumerate().map(|(i, form)| SketchLine {
        label: format!("g{}", i + 1),
        color: LineColor::Green,
        form: form.clone(),
    }));
    for a in 0..lines.len() {
        for b in a + 1..lines.len() {
            if lines[a].form.same_line(&lines[b].form) {
                return Err(Error::Degenerate(format!("lines {} and {} coincide", lines[a].label, lines[b].label)));
            }
        }
    }

    let mut on_black: Vec<Vec<(usize, usize, ProjPoint)>> = vec![Vec::new(); nb];
    for (i, r) in f.num().iter().enumerate() {
        for (j, g) in f.den().iter().enumerate() {
            let p = meet(r, g)?;
            let hits: Vec<usize> = (0..nb).filter(|&b| incident(&p, &black[b])).collect();
            match hits.as_slice() {
                [] => {}
                [b] => on_black[*b].push((i, j, p)),
                _ => {
                    return Err(Error::NotAQPicture(format!(
                        "r{} and g{} meet where black lines {} cross",
                        i + 1,
                        j + 1,
                        hits.iter().map(|b| (b + 1).to_string()).collect::<Vec<_>>().join(", ")
                    )))
                }
            }
        }
    }
    if nb != k {
        return Err(Error::NotAQPicture(format!("{k} factors on {nb} black lines do not form a (p_γ l_π) configuration")));
    }

    let mut points: Vec<ProjPoint> = Vec::new();
    let mut triple_points = Vec::with_capacity(nb);
    for (b, hits) in on_black.iter().enumerate() {
        let reds: std::collections::BTreeSet<usize> = hits.iter().map(|h| h.0).collect();
        let greens: std::collections::BTreeSet<usize> = hits.iter().map(|h| h.1).collect();
        if hits.len() != k || reds.len() != k || greens.len() != k {
            return Err(Error::NotAQPicture(format!(
                "black line b{} ({}) carries {} red-green meets, expected {k} pairing all factors",
                b + 1,
                black[b],
                hits.len()
            )));
        }
        let mut tps = Vec::with_capacity(k);
        for (i, j, p) in hits {
            if points.contains(p) {
                return Err(Error::NotAQPicture(format!("more than one red-green pair meets at {p}")));
            }
            points.push(p.clone());
            tps.push(TriplePoint { point: points.len() - 1, red: *i, green: *j });
        }
        triple_points.push(tps);
    }
    let sketch = IncidenceSketch { points, lines, triple_points };
    sketch.check()?;
    let table = sketch.table();
    Ok((sketch, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::coloring::{extract_permutations, find_coloring};
    use crate::configs::enumerate::enumerate_n3;
    use crate::configs::table::isomorphic;
    use crate::identity::basic_lines;
    use crate::qsearch::builtins::{builtin_q33, builtin_q_prop4, prop4_perms};
    use crate::rational::int;

    #[test]
    fn q33_sketch_is_pappus() {
        let q = builtin_q33(&int(2), &int(3), &int(1), &int(1), false).unwrap();
        let (sk, t) = sketch_from_q(&q, &basic_lines(false)).unwrap();
        assert_eq!(sk.points.len(), 9);
        assert!(sk.triple_points.iter().all(|tp| tp.len() == 3));
        assert!(t.is_valid());
        let colorable: Vec<_> = enumerate_n3(9).unwrap().into_iter().filter(|c| find_coloring(c, 3).unwrap().is_some()).collect();
        assert!(isomorphic(&t, &colorable[0]));
    }

    #[test]
    fn prop4_sketch_gives_sixteen_twelve() {
        let q = builtin_q_prop4(&int(2), &int(5), &int(-3), &int(7), false).unwrap();
        let (sk, t) = sketch_from_q(&q, &basic_lines(true)).unwrap();
        assert_eq!((t.p, t.gamma, t.l, t.pi), (16, 3, 12, 4));
        assert!(t.is_valid());
        let c = sk.coloring();
        c.validate(&t).unwrap();
        assert_eq!(extract_permutations(&t, &c).unwrap(), prop4_perms());
    }

    #[test]
    fn random_factor_is_not_a_picture() {
        let num = vec![LinearForm::primed([1, 2, 3]), LinearForm::primed([2, -1, 5]), LinearForm::primed([3, 7, -2])];
        let den = vec![LinearForm::primed([4, 1, 1]), LinearForm::primed([-1, 3, 8]), LinearForm::primed([5, -4, 9])];
        let q = FactorProduct::new(false, Basis::Primed, num, den).unwrap();
        assert!(matches!(sketch_from_q(&q, &basic_lines(false)), Err(Error::NotAQPicture(_))));
    }
}
