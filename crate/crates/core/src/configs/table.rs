//! Configuration tables `(p_γ l_π)` and their canonical form.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Incidence table: `columns[j]` lists the (1-based) point labels on line `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConfigurationTable {
    pub p: usize,
    pub l: usize,
    pub gamma: usize,
    pub pi: usize,
    pub columns: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    IncidenceCount { p: usize, gamma: usize, l: usize, pi: usize },
    ColumnCount { expected: usize, found: usize },
    ColumnSize { column: usize, expected: usize, found: usize },
    LabelOutOfRange { column: usize, label: usize },
    DuplicateLabel { column: usize, label: usize },
    PointDegree { label: usize, expected: usize, found: usize },
    SharedPair { columns: [usize; 2], labels: [usize; 2] },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IncidenceCount { p, gamma, l, pi } => {
                write!(f, "p·gamma = {p}·{gamma} differs from l·pi = {l}·{pi}")
            }
            Violation::ColumnCount { expected, found } => write!(f, "expected {expected} columns, found {found}"),
            Violation::ColumnSize { column, expected, found } => {
                write!(f, "column {} has {found} labels, expected {expected}", column + 1)
            }
            Violation::LabelOutOfRange { column, label } => write!(f, "column {} has label {label} out of range", column + 1),
            Violation::DuplicateLabel { column, label } => write!(f, "column {} repeats label {label}", column + 1),
            Violation::PointDegree { label, expected, found } => {
                write!(f, "point {label} lies in {found} columns, expected {expected}")
            }
            Violation::SharedPair { columns, labels } => write!(
                f,
                "columns {} and {} share labels {} and {}",
                columns[0] + 1,
                columns[1] + 1,
                labels[0],
                labels[1]
            ),
        }
    }
}

impl ConfigurationTable {
    pub fn new(p: usize, l: usize, gamma: usize, pi: usize, columns: Vec<Vec<usize>>) -> ConfigurationTable {
        ConfigurationTable { p, l, gamma, pi, columns }
    }

    /// Infers `p`, `l`, `γ` and `π` from the columns (`p` is the largest
    /// label, `π` the first column's size, `γ` the degree of point 1).
    pub fn from_columns(columns: Vec<Vec<usize>>) -> ConfigurationTable {
        let p = columns.iter().flatten().copied().max().unwrap_or(0);
        let pi = columns.first().map_or(0, Vec::len);
        let gamma = columns.iter().filter(|c| c.contains(&1)).count();
        ConfigurationTable { p, l: columns.len(), gamma, pi, columns }
    }

    /// Parses compact columns such as `"123 456 789"` (single-digit labels)
    /// or `"1,2,3;4,5,6"`.
    pub fn parse_columns(text: &str) -> Result<ConfigurationTable> {
        let bad = |s: &str| Error::Parse(format!("bad column {s:?}"));
        let cols: Vec<Vec<usize>> = if text.contains(';') || text.contains(',') {
            text.split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|c| c.split(',').map(|x| x.trim().parse().map_err(|_| bad(c))).collect())
                .collect::<Result<_>>()?
        } else {
            text.split_whitespace()
                .map(|c| c.chars().map(|ch| ch.to_digit(10).map(|d| d as usize).ok_or_else(|| bad(c))).collect())
                .collect::<Result<_>>()?
        };
        Ok(ConfigurationTable::from_columns(cols))
    }

    /// Checks the incidence count, column sizes, point degrees and that no
    /// two columns share two labels.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut v = Vec::new();
        if self.p * self.gamma != self.l * self.pi {
            v.push(Violation::IncidenceCount { p: self.p, gamma: self.gamma, l: self.l, pi: self.pi });
        }
        if self.columns.len() != self.l {
            v.push(Violation::ColumnCount { expected: self.l, found: self.columns.len() });
        }
        let mut degree = vec![0usize; self.p + 1];
        for (j, col) in self.columns.iter().enumerate() {
            if col.len() != self.pi {
                v.push(Violation::ColumnSize { column: j, expected: self.pi, found: col.len() });
            }
            let mut seen = BTreeSet::new();
            for &label in col {
                if label == 0 || label > self.p {
                    v.push(Violation::LabelOutOfRange { column: j, label });
                    continue;
                }
                if !seen.insert(label) {
                    v.push(Violation::DuplicateLabel { column: j, label });
                    continue;
                }
                degree[label] += 1;
            }
        }
        for (label, &d) in degree.iter().enumerate().skip(1) {
            if d != self.gamma {
                v.push(Violation::PointDegree { label, expected: self.gamma, found: d });
            }
        }
        for a in 0..self.columns.len() {
            for b in a + 1..self.columns.len() {
                let common: BTreeSet<usize> = self.columns[a].iter().filter(|x| self.columns[b].contains(x)).copied().collect();
                if common.len() > 1 {
                    let mut it = common.into_iter();
                    let labels = [it.next().expect("two labels"), it.next().expect("two labels")];
                    v.push(Violation::SharedPair { columns: [a, b], labels });
                }
            }
        }
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Two points lie on at most one common line. Implied by the column
    /// condition; kept as a separate check.
    pub fn satisfies_dual_axiom(&self) -> bool {
        let mut pairs = BTreeSet::new();
        for col in &self.columns {
            for (i, a) in col.iter().enumerate() {
                for b in &col[i + 1..] {
                    if !pairs.insert((*a.min(b), *a.max(b))) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Columns with each label list sorted, in increasing order.
    pub fn sorted_columns(&self) -> Vec<(Vec<usize>, usize)> {
        let mut cols: Vec<(Vec<usize>, usize)> = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let mut c = c.clone();
                c.sort_unstable();
                (c, j)
            })
            .collect();
        cols.sort();
        cols
    }

    /// Relabels points by `perm[old − 1] = new` (both 1-based) and reorders
    /// columns by `order`.
    pub fn relabeled(&self, perm: &[usize], order: &[usize]) -> ConfigurationTable {
        let columns = order.iter().map(|&j| self.columns[j].iter().map(|&x| perm[x - 1]).collect()).collect();
        ConfigurationTable { columns, ..self.clone() }
    }

    /// Point labels grouped as one string per column (`123 456 …` when all
    /// labels are single digits).
    pub fn compact(&self) -> String {
        let single = self.p < 10;
        self.columns
            .iter()
            .map(|c| {
                let parts: Vec<String> = c.iter().map(usize::to_string).collect();
                if single {
                    parts.concat()
                } else {
                    parts.join(",")
                }
            })
            .collect::<Vec<_>>()
            .join(if single { " " } else { "; " })
    }
}

impl fmt::Display for ConfigurationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}_{} {}_{}) {}", self.p, self.gamma, self.l, self.pi, self.compact())
    }
}

/// Point-line incidence graph: points are vertices `0..p`, lines `p..p+l`.
struct Graph {
    p: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    fn new(t: &ConfigurationTable) -> Graph {
        let mut adj = vec![Vec::new(); t.p + t.columns.len()];
        for (j, col) in t.columns.iter().enumerate() {
            for &x in col {
                adj[x - 1].push(t.p + j);
                adj[t.p + j].push(x - 1);
            }
        }
        Graph { p: t.p, adj }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    /// Equitable refinement; colors are re-ranked so that the result only
    /// depends on the input coloring up to isomorphism.
    fn refine(&self, col: &mut Vec<usize>) {
        let mut ncolors = rerank(col, |v, c| (c[v], Vec::<usize>::new()));
        loop {
            let next = rerank(col, |v, c| {
                let mut nb: Vec<usize> = self.adj[v].iter().map(|&u| c[u]).collect();
                nb.sort_unstable();
                (c[v], nb)
            });
            if next == ncolors {
                return;
            }
            ncolors = next;
        }
    }

    fn certificate(&self, col: &[usize]) -> Vec<Vec<usize>> {
        let mut lines: Vec<(usize, Vec<usize>)> = (self.p..self.n())
            .map(|v| {
                let mut pts: Vec<usize> = self.adj[v].iter().map(|&u| col[u]).collect();
                pts.sort_unstable();
                (col[v], pts)
            })
            .collect();
        lines.sort();
        lines.into_iter().map(|(_, pts)| pts).collect()
    }
}

/// Replaces colors by ranks of `key`; returns the number of colors.
fn rerank<K: Ord + Clone>(col: &mut [usize], key: impl Fn(usize, &[usize]) -> K) -> usize {
    let keys: Vec<K> = (0..col.len()).map(|v| key(v, col)).collect();
    let mut sorted: Vec<K> = keys.clone();
    sorted.sort();
    sorted.dedup();
    for (c, k) in col.iter_mut().zip(&keys) {
        *c = sorted.binary_search(k).expect("present");
    }
    sorted.len()
}

struct Best {
    cert: Vec<Vec<usize>>,
    labels: Vec<usize>,
}

fn search(g: &Graph, mut col: Vec<usize>, best: &mut Option<Best>) {
    g.refine(&mut col);
    let n = g.n();
    let mut counts = vec![0usize; n];
    col.iter().for_each(|&c| counts[c] += 1);
    let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
        let cert = g.certificate(&col);
        if best.as_ref().is_none_or(|b| cert < b.cert) {
            *best = Some(Best { cert, labels: col });
        }
        return;
    };
    for v in (0..n).filter(|&v| col[v] == target) {
        let mut next: Vec<usize> = col.iter().map(|&c| 2 * c + 1).collect();
        next[v] = 2 * target;
        search(g, next, best);
    }
}

/// Canonical relabeling: points renumbered `1..p`, columns reordered, each
/// column sorted. Isomorphic tables have identical canonical forms.
pub fn canonical_form(t: &ConfigurationTable) -> ConfigurationTable {
    let g = Graph::new(t);
    let col: Vec<usize> = (0..g.n()).map(|v| usize::from(v >= g.p)).collect();
    let mut best = None;
    search(&g, col, &mut best);
    let best = best.expect("search reaches a leaf");
    let columns = best.cert.into_iter().map(|c| c.into_iter().map(|x| x + 1).collect()).collect();
    ConfigurationTable { columns, ..t.clone() }
}

pub fn isomorphic(a: &ConfigurationTable, b: &ConfigurationTable) -> bool {
    (a.p, a.l, a.gamma, a.pi) == (b.p, b.l, b.gamma, b.pi) && canonical_form(a) == canonical_form(b)
}

/// Point relabeling and column order taking `t` to its canonical form:
/// `perm[old − 1] = new`, and `order[new column] = old column`.
pub fn canonical_labeling(t: &ConfigurationTable) -> (Vec<usize>, Vec<usize>) {
    let g = Graph::new(t);
    let col: Vec<usize> = (0..g.n()).map(|v| usize::from(v >= g.p)).collect();
    let mut best = None;
    search(&g, col, &mut best);
    let labels = best.expect("search reaches a leaf").labels;
    let perm = labels[..g.p].iter().map(|&c| c + 1).collect();
    let mut order: Vec<usize> = (0..t.columns.len()).collect();
    order.sort_by_key(|&j| labels[g.p + j]);
    (perm, order)
}
