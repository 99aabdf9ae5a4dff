//! Black/red/green line colorings and the permutations they encode.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::table::ConfigurationTable;
use crate::error::{Error, Result};
use crate::qsearch::perm::{Perm, PermTriple};

/// Partition of the columns into three classes. Indices are 0-based in
/// memory and 1-based in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    #[serde(with = "one_based")]
    pub black: Vec<usize>,
    #[serde(with = "one_based")]
    pub red: Vec<usize>,
    #[serde(with = "one_based")]
    pub green: Vec<usize>,
}

mod one_based {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(|i| i + 1).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<usize>, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if v.contains(&0) {
            return Err(serde::de::Error::custom("column indices are 1-based"));
        }
        Ok(v.into_iter().map(|i| i - 1).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineColor {
    Black,
    Red,
    Green,
}

impl LineColor {
    pub const ALL: [LineColor; 3] = [LineColor::Black, LineColor::Red, LineColor::Green];

    pub fn name(self) -> &'static str {
        match self {
            LineColor::Black => "black",
            LineColor::Red => "red",
            LineColor::Green => "green",
        }
    }
}

impl Coloring {
    pub fn class(&self, c: LineColor) -> &[usize] {
        match c {
            LineColor::Black => &self.black,
            LineColor::Red => &self.red,
            LineColor::Green => &self.green,
        }
    }

    pub fn color_of(&self, column: usize) -> Option<LineColor> {
        LineColor::ALL.into_iter().find(|&c| self.class(c).contains(&column))
    }

    /// Every column colored once, equal class sizes, and every point on
    /// exactly one line of each color.
    pub fn validate(&self, t: &ConfigurationTable) -> Result<()> {
        let k = self.black.len();
        if self.red.len() != k || self.green.len() != k {
            return Err(Error::MalformedColoring(format!(
                "class sizes {}/{}/{} differ",
                self.black.len(),
                self.red.len(),
                self.green.len()
            )));
        }
        let mut seen = vec![false; t.columns.len()];
        for &j in self.black.iter().chain(&self.red).chain(&self.green) {
            if j >= t.columns.len() || std::mem::replace(&mut seen[j], true) {
                return Err(Error::MalformedColoring(format!("column {} missing or repeated", j + 1)));
            }
        }
        if let Some(j) = seen.iter().position(|s| !s) {
            return Err(Error::MalformedColoring(format!("column {} has no color", j + 1)));
        }
        for point in 1..=t.p {
            for c in LineColor::ALL {
                let n = self.class(c).iter().filter(|&&j| t.columns[j].contains(&point)).count();
                if n != 1 {
                    return Err(Error::MalformedColoring(format!("point {point} lies on {n} {} lines", c.name())));
                }
            }
        }
        Ok(())
    }
}

fn check_colorable_shape(t: &ConfigurationTable, k: usize) -> Result<()> {
    if let Err(v) = t.validate() {
        return Err(Error::InvalidTable(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")));
    }
    if t.gamma != 3 || t.l != 3 * k {
        return Err(Error::InvalidTable(format!("coloring needs gamma = 3 and l = 3k, got gamma = {}, l = {}, k = {k}", t.gamma, t.l)));
    }
    Ok(())
}

/// First coloring found by backtracking, with columns visited in the order
/// of their sorted label lists (so the column order of the input does not
/// matter) and colors tried black, red, green. The first column is black.
pub fn find_coloring(t: &ConfigurationTable, k: usize) -> Result<Option<Coloring>> {
    check_colorable_shape(t, k)?;
    let order: Vec<usize> = t.sorted_columns().into_iter().map(|(_, j)| j).collect();
    let mut used = vec![0u8; t.p + 1];
    let mut assign = vec![usize::MAX; t.l];
    let mut sizes = [0usize; 3];
    if !color_dfs(t, k, &order, 0, &mut used, &mut assign, &mut sizes) {
        return Ok(None);
    }
    let class = |c: usize| order.iter().copied().filter(|&j| assign[j] == c).collect();
    Ok(Some(Coloring { black: class(0), red: class(1), green: class(2) }))
}

fn color_dfs(
    t: &ConfigurationTable,
    k: usize,
    order: &[usize],
    depth: usize,
    used: &mut [u8],
    assign: &mut [usize],
    sizes: &mut [usize; 3],
) -> bool {
    let Some(&j) = order.get(depth) else { return true };
    let colors = if depth == 0 { 0..1 } else { 0..3 };
    for c in colors {
        let bit = 1u8 << c;
        if sizes[c] == k || t.columns[j].iter().any(|&x| used[x] & bit != 0) {
            continue;
        }
        t.columns[j].iter().for_each(|&x| used[x] |= bit);
        assign[j] = c;
        sizes[c] += 1;
        if color_dfs(t, k, order, depth + 1, used, assign, sizes) {
            return true;
        }
        sizes[c] -= 1;
        assign[j] = usize::MAX;
        t.columns[j].iter().for_each(|&x| used[x] &= !bit);
    }
    false
}

/// Number of colorings with the first column (in sorted order) black.
pub fn count_colorings(t: &ConfigurationTable, k: usize) -> Result<usize> {
    check_colorable_shape(t, k)?;
    let order: Vec<usize> = t.sorted_columns().into_iter().map(|(_, j)| j).collect();
    let mut used = vec![0u8; t.p + 1];
    let mut sizes = [0usize; 3];
    Ok(count_dfs(t, k, &order, 0, &mut used, &mut sizes))
}

fn count_dfs(t: &ConfigurationTable, k: usize, order: &[usize], depth: usize, used: &mut [u8], sizes: &mut [usize; 3]) -> usize {
    let Some(&j) = order.get(depth) else { return 1 };
    let colors = if depth == 0 { 0..1 } else { 0..3 };
    let mut total = 0;
    for c in colors {
        let bit = 1u8 << c;
        if sizes[c] == k || t.columns[j].iter().any(|&x| used[x] & bit != 0) {
            continue;
        }
        t.columns[j].iter().for_each(|&x| used[x] |= bit);
        sizes[c] += 1;
        total += count_dfs(t, k, order, depth + 1, used, sizes);
        sizes[c] -= 1;
        t.columns[j].iter().for_each(|&x| used[x] &= !bit);
    }
    total
}

/// Reads the pairing permutations off a colored table. On each black line
/// every point joins one red and one green line; green lines are relabeled
/// so that the first black line pairs green `i` with red `i`. On the other
/// black lines, in the given order, green `i` meets red `perm(i)`; these
/// are returned as `s`, `p` and (with four black lines) `v`.
pub fn extract_permutations(t: &ConfigurationTable, coloring: &Coloring) -> Result<PermTriple> {
    coloring.validate(t)?;
    let nb = coloring.black.len();
    if !(3..=4).contains(&nb) {
        return Err(Error::MalformedColoring(format!("expected 3 or 4 black lines, got {nb}")));
    }
    let k = coloring.red.len();
    let find = |class: &[usize], point: usize| class.iter().position(|&j| t.columns[j].contains(&point));
    let mut pairings = Vec::with_capacity(nb);
    for (b, &line) in coloring.black.iter().enumerate() {
        let mut green_to_red = vec![usize::MAX; k];
        for &point in &t.columns[line] {
            let (Some(r), Some(g)) = (find(&coloring.red, point), find(&coloring.green, point)) else {
                return Err(Error::MalformedColoring(format!("point {point} on black line {} misses a color", b + 1)));
            };
            if green_to_red[g] != usize::MAX {
                return Err(Error::MalformedColoring(format!("black line {} meets green line {} twice", b + 1, g + 1)));
            }
            green_to_red[g] = r;
        }
        let perm = Perm::new(green_to_red)
            .map_err(|_| Error::MalformedColoring(format!("pairing on black line {} is not a bijection", b + 1)))?;
        pairings.push(perm);
    }
    // relabel green j as pairings[0](j)
    let relabel = pairings[0].inverse();
    let rel: Vec<Perm> = pairings.iter().map(|q| q.compose(&relabel)).collect();
    debug_assert!(rel[0].is_identity());
    Ok(PermTriple { s: rel[1].clone(), p: rel[2].clone(), v: rel.get(3).cloned() })
}
