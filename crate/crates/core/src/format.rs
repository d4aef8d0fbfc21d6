//! Line-oriented ASCII formats for every instance and certificate type.
//!
//! Blank lines and lines starting with `#` are ignored by every parser.
//! Writers emit the canonical layout, so `parse(write(x)) == x`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, Graph, Jdm, SodsTarget, XyTarget};
use crate::reductions::{Basket, BasketAssignment, BasketFillingInstance, ThreePartitionInstance, TriplePartition};

/// Numeric tokens with the line they came from.
struct Tokens {
    items: Vec<(usize, i64)>,
    lines: Vec<(usize, Vec<i64>)>,
    pos: usize,
}

impl Tokens {
    fn new(text: &str) -> Result<Self> {
        let mut lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let numbers = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<i64>()
                        .map_err(|_| Error::Parse { line: idx + 1, msg: format!("not an integer: {tok:?}") })
                })
                .collect::<Result<Vec<_>>>()?;
            lines.push((idx + 1, numbers));
        }
        let items = lines.iter().flat_map(|(l, nums)| nums.iter().map(move |&x| (*l, x))).collect();
        Ok(Tokens { items, lines, pos: 0 })
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(0, |l| l.0)
    }

    fn next_signed(&mut self, what: &str) -> Result<(usize, i64)> {
        let tok = self.items.get(self.pos).copied().ok_or_else(|| Error::Parse {
            line: self.last_line(),
            msg: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(tok)
    }

    fn next(&mut self, what: &str) -> Result<usize> {
        let (line, value) = self.next_signed(what)?;
        usize::try_from(value).map_err(|_| Error::Parse { line, msg: format!("{what} must be nonnegative") })
    }

    fn finish(&self) -> Result<()> {
        match self.items.get(self.pos) {
            Some(&(line, _)) => Err(Error::Parse { line, msg: "trailing data".into() }),
            None => Ok(()),
        }
    }
}

fn invalid_at(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { .. } => e,
        other => Error::Parse { line, msg: other.to_string() },
    }
}

/// `n m`, then `m` lines `u v`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut t = Tokens::new(text)?;
    let n = t.next("vertex count")?;
    let m = t.next("edge count")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        edges.push((t.next("edge endpoint")?, t.next("edge endpoint")?));
    }
    t.finish()?;
    Graph::from_edges(n, &edges).map_err(invalid_at(t.last_line()))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// `n`, then a line of `n` integers.
pub fn parse_degree_sequence(text: &str) -> Result<DegreeSequence> {
    let mut t = Tokens::new(text)?;
    let n = t.next("length")?;
    let degrees = (0..n).map(|_| t.next("degree")).collect::<Result<Vec<_>>>()?;
    t.finish()?;
    Ok(DegreeSequence(degrees))
}

pub fn write_degree_sequence(seq: &DegreeSequence) -> String {
    format!("{}\n{}\n", seq.len(), join(&seq.0))
}

/// `delta`, then `delta` rows of `delta` integers.
pub fn parse_jdm(text: &str) -> Result<Jdm> {
    let mut t = Tokens::new(text)?;
    let delta = t.next("dimension")?;
    let mut rows = vec![Vec::with_capacity(delta); delta];
    for row in &mut rows {
        for _ in 0..delta {
            row.push(t.next_signed("matrix entry")?.1);
        }
    }
    t.finish()?;
    Jdm::from_rows(&rows).map_err(invalid_at(t.last_line()))
}

pub fn write_jdm(jdm: &Jdm) -> String {
    let mut out = format!("{}\n", jdm.delta());
    for row in jdm.rows() {
        let _ = writeln!(out, "{}", join(&row));
    }
    out
}

/// `m W`, then `3m` integers.
pub fn parse_three_partition(text: &str) -> Result<ThreePartitionInstance> {
    let mut t = Tokens::new(text)?;
    let m = t.next("m")?;
    let w = t.next("W")?;
    let alphas = (0..3 * m).map(|_| t.next("number")).collect::<Result<Vec<_>>>()?;
    t.finish()?;
    ThreePartitionInstance::new(m, w, alphas).map_err(invalid_at(t.last_line()))
}

pub fn write_three_partition(tp: &ThreePartitionInstance) -> String {
    format!("{} {}\n{}\n", tp.m(), tp.target(), join(tp.alphas()))
}

/// `n k`, a line of `n` weights, then `k` lines `c s`.
pub fn parse_basket_filling(text: &str) -> Result<BasketFillingInstance> {
    let mut t = Tokens::new(text)?;
    let n = t.next("item count")?;
    let k = t.next("basket count")?;
    let weights = (0..n).map(|_| t.next("weight")).collect::<Result<Vec<_>>>()?;
    let baskets = (0..k)
        .map(|_| Ok(Basket { count: t.next("basket count")?, weight: t.next("basket weight")? }))
        .collect::<Result<Vec<_>>>()?;
    t.finish()?;
    BasketFillingInstance::new(weights, baskets).map_err(invalid_at(t.last_line()))
}

pub fn write_basket_filling(bf: &BasketFillingInstance) -> String {
    let mut out = format!("{} {}\n{}\n", bf.item_count(), bf.basket_count(), join(bf.weights()));
    for b in bf.baskets() {
        let _ = writeln!(out, "{} {}", b.count, b.weight);
    }
    out
}

/// `n`, then `n` lines of two integers.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut t = Tokens::new(text)?;
    let n = t.next("length")?;
    let pairs = (0..n).map(|_| Ok((t.next("first value")?, t.next("second value")?))).collect::<Result<Vec<_>>>()?;
    t.finish()?;
    Ok(pairs)
}

pub fn write_pairs(pairs: &[(usize, usize)]) -> String {
    let mut out = format!("{}\n", pairs.len());
    for (a, b) in pairs {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

pub fn parse_sods_target(text: &str) -> Result<SodsTarget> {
    parse_pairs(text).map(|pairs| SodsTarget { pairs })
}

pub fn parse_xy_target(text: &str) -> Result<XyTarget> {
    parse_pairs(text).map(|pairs| XyTarget { pairs })
}

/// One `item basket` line per item, in any order; every item of `0..n`
/// must appear exactly once.
pub fn parse_assignment(text: &str, items: usize) -> Result<BasketAssignment> {
    let t = Tokens::new(text)?;
    let mut basket_of = vec![None; items];
    for (line, nums) in &t.lines {
        let &[item, basket] = nums.as_slice() else {
            return Err(Error::Parse { line: *line, msg: "expected `item basket`".into() });
        };
        let (Ok(item), Ok(basket)) = (usize::try_from(item), usize::try_from(basket)) else {
            return Err(Error::Parse { line: *line, msg: "indices must be nonnegative".into() });
        };
        match basket_of.get_mut(item) {
            Some(slot @ None) => *slot = Some(basket),
            Some(Some(_)) => return Err(Error::Parse { line: *line, msg: format!("item {item} assigned twice") }),
            None => return Err(Error::Parse { line: *line, msg: format!("item {item} out of range") }),
        }
    }
    let basket_of = basket_of
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::Parse { line: t.last_line(), msg: format!("item {i} unassigned") }))
        .collect::<Result<Vec<_>>>()?;
    Ok(BasketAssignment { basket_of })
}

pub fn write_assignment(sol: &BasketAssignment) -> String {
    sol.basket_of.iter().enumerate().map(|(i, b)| format!("{i} {b}\n")).collect()
}

/// One line of three item indices per triple.
pub fn parse_triples(text: &str) -> Result<TriplePartition> {
    let t = Tokens::new(text)?;
    let mut triples = Vec::with_capacity(t.lines.len());
    for (line, nums) in &t.lines {
        let triple: Vec<usize> = nums.iter().filter_map(|&x| usize::try_from(x).ok()).collect();
        let [a, b, c] = triple[..] else {
            return Err(Error::Parse { line: *line, msg: "expected three nonnegative item indices".into() });
        };
        triples.push([a, b, c]);
    }
    Ok(TriplePartition { triples })
}

pub fn write_triples(partition: &TriplePartition) -> String {
    partition.triples.iter().map(|t| format!("{} {} {}\n", t[0], t[1], t[2])).collect()
}

/// Per-degree-class aggregates: `delta`, a line of class sizes `|V_i|`,
/// then a line of neighbor-degree totals `D(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JdmAggregates {
    pub sizes: Vec<u64>,
    pub totals: Vec<u64>,
}

pub fn parse_jdm_aggregates(text: &str) -> Result<JdmAggregates> {
    let mut t = Tokens::new(text)?;
    let delta = t.next("dimension")?;
    let sizes = (0..delta).map(|_| t.next("class size").map(|x| x as u64)).collect::<Result<Vec<_>>>()?;
    let totals = (0..delta).map(|_| t.next("class total").map(|x| x as u64)).collect::<Result<Vec<_>>>()?;
    t.finish()?;
    Ok(JdmAggregates { sizes, totals })
}

pub fn write_jdm_aggregates(agg: &JdmAggregates) -> String {
    format!("{}\n{}\n{}\n", agg.sizes.len(), join(&agg.sizes), join(&agg.totals))
}

fn join<T: std::fmt::Display>(values: &[T]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
