//! The diagram of noncompact positive roots: heights, edges labelled by
//! compact simple roots, the α_j^i grid, cones and split-rank sequences.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{q, Q};
use crate::root_system::{pair, Root, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// Index `k` of the compact simple root `μ_k` labelling the edge.
    pub mu: usize,
}

/// Nodes are `rs.noncompact`, indexed identically.
#[derive(Clone, Debug)]
pub struct JakobsenDiagram<'a> {
    pub rs: &'a RootSystem,
    pub heights: Vec<i64>,
    pub edges: Vec<Edge>,
    /// `(j, i)` for the node `α_j^i`.
    pub grid: Vec<(i64, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cones {
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeightCheck {
    pub root: Root,
    pub height: i64,
    #[serde(with = "crate::rational::as_str")]
    pub pairing: Q,
    #[serde(with = "crate::rational::as_str")]
    pub expected: Q,
    pub ok: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Dot,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "dot" => Ok(Format::Dot),
            other => Err(Error::UnknownFormat(other.into())),
        }
    }
}

/// Orders the roots of one height so that index 1 sits on the branch reached
/// through the lowest-numbered compact simple roots: descending lexicographic
/// order of the compact coefficients.
fn grid_order(rs: &RootSystem, nodes: &mut [usize]) {
    nodes.sort_by_cached_key(|&i| {
        let c = rs.int_coefficients(&rs.noncompact[i]).expect("integral");
        std::cmp::Reverse(c[1..].to_vec())
    });
}

pub fn build_diagram(rs: &RootSystem) -> JakobsenDiagram<'_> {
    let heights: Vec<i64> = rs.noncompact.iter().map(|r| rs.height(r)).collect();
    let mut edges = Vec::new();
    for (from, a) in rs.noncompact.iter().enumerate() {
        for (k, m) in &rs.compact_simple {
            if let Some(to) = rs.noncompact_index(&(a + m)) {
                edges.push(Edge { from, to, mu: *k });
            }
        }
    }
    let mut by_height: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, h) in heights.iter().enumerate() {
        by_height.entry(*h).or_default().push(i);
    }
    let mut grid = vec![(0, 0); heights.len()];
    for (h, mut nodes) in by_height {
        grid_order(rs, &mut nodes);
        for (pos, n) in nodes.into_iter().enumerate() {
            grid[n] = (h, pos + 1);
        }
    }
    JakobsenDiagram {
        rs,
        heights,
        edges,
        grid,
    }
}

impl<'a> JakobsenDiagram<'a> {
    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    pub fn node(&self, i: usize) -> &'a Root {
        &self.rs.noncompact[i]
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.rs.noncompact_index(r)
    }

    pub fn out_edges(&self, i: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.from == i)
    }

    pub fn in_edges(&self, i: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.to == i)
    }

    pub fn label(&self, i: usize) -> String {
        let (j, k) = self.grid[i];
        format!("α_{j}^{k}")
    }

    /// `<R,α>` against the height formula: `height` when simply laced;
    /// for sp(n,R) `height+1` (short) or `(height+1)/2` (long); otherwise
    /// the coroot height `Σ c_s (s,s)/(α,α)`.
    pub fn heights_pairing_check(&self) -> Vec<HeightCheck> {
        let rs = self.rs;
        let simples = rs.simple_roots();
        rs.noncompact
            .iter()
            .zip(&self.heights)
            .map(|(a, &h)| {
                let pairing = pair(&rs.rho, a);
                let expected = match rs.family {
                    f if f.is_simply_laced() => q(h),
                    crate::Family::Sp { .. } if rs.is_long(a) => q(h + 1) / q(2),
                    crate::Family::Sp { .. } => q(h + 1),
                    _ => rs
                        .coefficients(a)
                        .iter()
                        .zip(&simples)
                        .fold(Q::zero(), |acc, (c, (_, s))| acc + c * s.norm2() / a.norm2()),
                };
                HeightCheck {
                    root: a.clone(),
                    height: h,
                    ok: pairing == expected,
                    pairing,
                    expected,
                }
            })
            .collect()
    }

    /// Forward and backward cones of `alpha0` under the root order.
    pub fn cones(&self, alpha0: &Root) -> Result<Cones> {
        if self.index_of(alpha0).is_none() {
            return Err(Error::NotNoncompact(alpha0.to_string()));
        }
        let rs = self.rs;
        let forward = (0..self.len()).filter(|&i| rs.geq(self.node(i), alpha0)).collect();
        let backward = (0..self.len()).filter(|&i| rs.geq(alpha0, self.node(i))).collect();
        Ok(Cones { forward, backward })
    }

    /// `(j, i)` indices of the forward cone of `alpha0`, numbered within the
    /// cone with the same orientation as the global grid.
    pub fn cone_grid(&self, alpha0: &Root) -> Result<BTreeMap<usize, (i64, usize)>> {
        let cones = self.cones(alpha0)?;
        let mut by_height: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for &i in &cones.forward {
            by_height.entry(self.heights[i]).or_default().push(i);
        }
        let mut out = BTreeMap::new();
        for (h, mut nodes) in by_height {
            grid_order(self.rs, &mut nodes);
            for (pos, n) in nodes.into_iter().enumerate() {
                out.insert(n, (h, pos + 1));
            }
        }
        Ok(out)
    }

    /// Greedy sequence of mutually orthogonal noncompact roots starting at β,
    /// each the lowest (height, then coordinates) root orthogonal to the rest.
    pub fn split_rank_sequence(&self) -> Vec<Root> {
        let nodes = &self.rs.noncompact;
        let mut seq: Vec<Root> = vec![self.rs.beta.clone()];
        // `noncompact` is already sorted by (height, coordinates).
        while let Some(next) = nodes
            .iter()
            .find(|a| seq.iter().all(|g| a.dot(g).is_zero()))
        {
            seq.push(next.clone());
        }
        seq
    }

    pub fn render(&self, format: Format, marked: &[Root]) -> String {
        match format {
            Format::Ascii => self.render_ascii(marked),
            Format::Dot => self.render_dot(marked),
        }
    }

    fn rows(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut rows: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for i in 0..self.len() {
            rows.entry(self.heights[i]).or_default().push(i);
        }
        // Index 1 is drawn rightmost.
        for nodes in rows.values_mut() {
            nodes.sort_by_key(|&i| std::cmp::Reverse(self.grid[i].1));
        }
        rows
    }

    fn render_ascii(&self, marked: &[Root]) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} noncompact positive roots: {}", self.rs.family, self.len());
        for (h, nodes) in self.rows().iter().rev() {
            let cells: Vec<String> = nodes
                .iter()
                .map(|&i| {
                    let star = if marked.contains(self.node(i)) { "*" } else { "" };
                    format!("{}{star}", self.label(i))
                })
                .collect();
            let _ = writeln!(s, "h={h:>3} | {}", cells.join("  "));
        }
        let _ = writeln!(s, "edges:");
        for e in &self.edges {
            let _ = writeln!(s, "  {} -μ{}-> {}", self.label(e.from), e.mu, self.label(e.to));
        }
        let _ = writeln!(s, "roots:");
        for i in 0..self.len() {
            let _ = writeln!(s, "  {} = {}", self.label(i), self.node(i));
        }
        s
    }

    fn render_dot(&self, marked: &[Root]) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph jakobsen {{");
        let _ = writeln!(s, "  label=\"{}\";", self.rs.family);
        let _ = writeln!(s, "  rankdir=BT;");
        let _ = writeln!(s, "  node [shape=box, fontname=\"monospace\"];");
        for i in 0..self.len() {
            let extra = if marked.contains(self.node(i)) {
                ", style=filled, fillcolor=lightgrey"
            } else {
                ""
            };
            let _ = writeln!(
                s,
                "  n{i} [label=\"{}\\nh={}\\n{}\"{extra}];",
                self.label(i),
                self.heights[i],
                self.node(i)
            );
        }
        for nodes in self.rows().values() {
            let ids: Vec<String> = nodes.iter().map(|i| format!("n{i};")).collect();
            let _ = writeln!(s, "  {{ rank=same; {} }}", ids.join(" "));
        }
        for e in &self.edges {
            let _ = writeln!(s, "  n{} -> n{} [label=\"μ{}\"];", e.from, e.to, e.mu);
        }
        let _ = writeln!(s, "}}");
        s
    }
}

/// Compact positive roots whose projection onto the span of `seq` is
/// `(γ_j - γ_i)/2` for some `i < j`, counted for each `j`.
pub fn c_counts(rs: &RootSystem, seq: &[Root]) -> Vec<usize> {
    let project = |m: &Root| {
        let mut p = crate::Vector::zero(rs.dim);
        for g in seq {
            p += &g.scale(&(m.dot(g) / g.norm2()));
        }
        p
    };
    let half = crate::rational::frac(1, 2);
    let projections: Vec<_> = rs.compact_positive.iter().map(project).collect();
    (0..seq.len())
        .map(|j| {
            projections
                .iter()
                .filter(|p| (0..j).any(|i| **p == (&seq[j] - &seq[i]).scale(&half)))
                .count()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Family;

    #[test]
    fn su22_diamond() {
        let rs = RootSystem::build(Family::Su { p: 2, q: 2 }).unwrap();
        let d = build_diagram(&rs);
        assert_eq!(d.len(), 4);
        assert_eq!(d.edges.len(), 4);
        let cones = d.cones(&rs.beta).unwrap();
        assert_eq!(cones.forward.len(), 4);
        assert_eq!(cones.backward, vec![0]);
    }

    #[test]
    fn unknown_format() {
        assert_eq!("svg".parse::<Format>(), Err(Error::UnknownFormat("svg".into())));
    }

    #[test]
    fn sp10_grid_orientation() {
        let rs = RootSystem::build(Family::Sp { n: 10 }).unwrap();
        let d = build_diagram(&rs);
        let two_e5 = {
            let mut v = crate::Vector::zero(10);
            v.0[4] = q(2);
            v
        };
        let grid = d.cone_grid(&two_e5).unwrap();
        let at = |a: usize, b: usize| {
            let mut v = crate::Vector::zero(10);
            v.0[a - 1] += q(1);
            v.0[b - 1] += q(1);
            grid[&d.index_of(&v).unwrap()]
        };
        assert_eq!(at(1, 5), (15, 1));
        assert_eq!(at(2, 4), (15, 2));
        assert_eq!(at(3, 3), (15, 3));
        assert_eq!(at(3, 5), (13, 1));
        assert_eq!(at(4, 4), (13, 2));
    }
}
