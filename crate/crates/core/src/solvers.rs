//! Exact search procedures for every decision problem in the crate, and the
//! polynomial-time verifiers that check their certificates.
//!
//! All searches are single-threaded and deterministic: the same input and
//! node budget always produce the same outcome, certificate and node count.
//! Wall-clock limits can only turn an answer into [`SolveOutcome::Unknown`].

use std::collections::HashMap;
use std::time::Instant;

use crate::graph::DegreeSequence;
use crate::graph::{bipartition, neighbor_degree_sum, second_order_profile, Graph, Jdm, SodsTarget, XyTarget};
use crate::graphicality::{erdos_gallai, jdm_graphical, sods_d1_necessary, xy_necessary};
use crate::reductions::{
    canonical_basket_of, tp_to_bf, BasketAssignment, BasketFillingInstance, ThreePartitionInstance, TriplePartition,
};

/// Search limits. `None` means unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_millis: Option<u64>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }

    /// Zero stands for unlimited, matching the command-line flags.
    pub fn new(max_nodes: u64, max_millis: u64) -> Self {
        SearchBudget {
            max_nodes: (max_nodes > 0).then_some(max_nodes),
            max_millis: (max_millis > 0).then_some(max_millis),
        }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget::new(max_nodes, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome<C> {
    Solved(C),
    /// The whole search space was exhausted.
    Infeasible,
    /// The budget ran out first.
    Unknown,
}

impl<C> SolveOutcome<C> {
    pub fn is_solved(&self) -> bool {
        matches!(self, SolveOutcome::Solved(_))
    }

    pub fn verdict(&self) -> Verdict {
        match self {
            SolveOutcome::Solved(_) => Verdict::Solved,
            SolveOutcome::Infeasible => Verdict::Infeasible,
            SolveOutcome::Unknown => Verdict::Unknown,
        }
    }

    pub fn certificate(&self) -> Option<&C> {
        match self {
            SolveOutcome::Solved(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Solved,
    Infeasible,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Solved => "solved",
            Verdict::Infeasible => "infeasible",
            Verdict::Unknown => "unknown",
        })
    }
}

/// An outcome together with the number of search nodes expanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport<C> {
    pub outcome: SolveOutcome<C>,
    pub nodes: u64,
}

struct Meter {
    budget: SearchBudget,
    nodes: u64,
    start: Instant,
    exhausted: bool,
}

impl Meter {
    fn new(budget: SearchBudget) -> Self {
        Meter { budget, nodes: 0, start: Instant::now(), exhausted: false }
    }

    /// Counts one node; `false` once the budget is gone.
    fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        if self.budget.max_nodes.is_some_and(|max| self.nodes >= max) {
            self.exhausted = true;
            return false;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(256) {
            if let Some(ms) = self.budget.max_millis {
                if self.start.elapsed().as_millis() as u64 >= ms {
                    self.exhausted = true;
                    return false;
                }
            }
        }
        true
    }

    fn finish<C>(self, found: Option<C>) -> SolveReport<C> {
        let outcome = match found {
            Some(c) => SolveOutcome::Solved(c),
            None if self.exhausted => SolveOutcome::Unknown,
            None => SolveOutcome::Infeasible,
        };
        SolveReport { outcome, nodes: self.nodes }
    }
}

pub fn verify_sods(g: &Graph, target: &SodsTarget) -> bool {
    &second_order_profile(g) == target
}

pub fn verify_xy(g: &Graph, target: &XyTarget) -> bool {
    &neighbor_degree_sum(g) == target
}

pub fn verify_bf(bf: &BasketFillingInstance, sol: &BasketAssignment) -> bool {
    bf.verify(sol)
}

pub fn verify_tp(tp: &ThreePartitionInstance, partition: &TriplePartition) -> bool {
    tp.verify(partition)
}

/// Triples by backtracking: the largest unused number is always completed
/// first, and equal values are tried once per position.
pub fn solve_tp(tp: &ThreePartitionInstance, budget: SearchBudget) -> SolveReport<TriplePartition> {
    let alphas = tp.alphas();
    let mut order: Vec<usize> = (0..alphas.len()).collect();
    order.sort_by(|&a, &b| alphas[b].cmp(&alphas[a]).then(a.cmp(&b)));
    let values: Vec<usize> = order.iter().map(|&i| alphas[i]).collect();
    let mut used = vec![false; values.len()];
    let mut triples = Vec::with_capacity(tp.m());
    let mut meter = Meter::new(budget);

    fn rec(
        values: &[usize],
        target: usize,
        used: &mut [bool],
        triples: &mut Vec<[usize; 3]>,
        meter: &mut Meter,
    ) -> bool {
        if !meter.tick() {
            return false;
        }
        let Some(a) = used.iter().position(|u| !u) else { return true };
        used[a] = true;
        let mut last_b = None;
        for b in a + 1..values.len() {
            if used[b] || last_b == Some(values[b]) || values[a] + values[b] >= target {
                continue;
            }
            last_b = Some(values[b]);
            let need = target - values[a] - values[b];
            let Some(c) = (b + 1..values.len()).find(|&c| !used[c] && values[c] == need) else {
                continue;
            };
            used[b] = true;
            used[c] = true;
            triples.push([a, b, c]);
            if rec(values, target, used, triples, meter) {
                return true;
            }
            triples.pop();
            used[b] = false;
            used[c] = false;
            if meter.exhausted {
                break;
            }
        }
        used[a] = false;
        false
    }

    let found = rec(&values, tp.target(), &mut used, &mut triples, &mut meter).then(|| {
        let mut basket_of = vec![0; values.len()];
        for (t, triple) in triples.iter().enumerate() {
            for &p in triple {
                basket_of[order[p]] = t;
            }
        }
        canonical_triples(tp, &basket_of)
    });
    meter.finish(found)
}

fn canonical_triples(tp: &ThreePartitionInstance, basket_of: &[usize]) -> TriplePartition {
    let bf = tp_to_bf(tp);
    let canonical = canonical_basket_of(bf.weights(), bf.baskets(), basket_of);
    let mut triples = vec![Vec::with_capacity(3); tp.m()];
    for (item, &b) in canonical.iter().enumerate() {
        triples[b].push(item);
    }
    TriplePartition { triples: triples.into_iter().map(|t| [t[0], t[1], t[2]]).collect() }
}

/// Items in decreasing weight order are placed into baskets. A basket is
/// pruned when its residual weight cannot be met by its residual count of
/// the remaining items, and baskets in identical residual states are tried
/// only once.
pub fn solve_bf(bf: &BasketFillingInstance, budget: SearchBudget) -> SolveReport<BasketAssignment> {
    let weights = bf.weights();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    let sorted: Vec<usize> = order.iter().map(|&i| weights[i]).collect();
    let mut count_left: Vec<usize> = bf.baskets().iter().map(|b| b.count).collect();
    let mut weight_left: Vec<usize> = bf.baskets().iter().map(|b| b.weight).collect();
    let mut placed = vec![0; sorted.len()];
    let mut meter = Meter::new(budget);

    struct Ctx<'a> {
        sorted: &'a [usize],
        count_left: Vec<usize>,
        weight_left: Vec<usize>,
        placed: Vec<usize>,
    }

    fn residual_ok(ctx: &Ctx, next: usize) -> bool {
        let rest = &ctx.sorted[next..];
        let (Some(&max), Some(&min)) = (rest.first(), rest.last()) else {
            return ctx.weight_left.iter().all(|&w| w == 0);
        };
        ctx.count_left.iter().zip(&ctx.weight_left).all(|(&c, &w)| c * min <= w && w <= c * max)
    }

    fn rec(ctx: &mut Ctx, t: usize, meter: &mut Meter) -> bool {
        if !meter.tick() {
            return false;
        }
        if t == ctx.sorted.len() {
            return ctx.weight_left.iter().all(|&w| w == 0);
        }
        let w = ctx.sorted[t];
        let mut tried: Vec<(usize, usize)> = Vec::new();
        for b in 0..ctx.count_left.len() {
            let state = (ctx.count_left[b], ctx.weight_left[b]);
            if state.0 == 0 || state.1 < w || tried.contains(&state) {
                continue;
            }
            tried.push(state);
            ctx.count_left[b] -= 1;
            ctx.weight_left[b] -= w;
            ctx.placed[t] = b;
            if residual_ok(ctx, t + 1) && rec(ctx, t + 1, meter) {
                return true;
            }
            ctx.count_left[b] += 1;
            ctx.weight_left[b] += w;
            if meter.exhausted {
                return false;
            }
        }
        false
    }

    let mut ctx = Ctx {
        sorted: &sorted,
        count_left: std::mem::take(&mut count_left),
        weight_left: std::mem::take(&mut weight_left),
        placed: std::mem::take(&mut placed),
    };
    let found = (residual_ok(&ctx, 0) && rec(&mut ctx, 0, &mut meter)).then(|| {
        let mut basket_of = vec![0; sorted.len()];
        for (t, &b) in ctx.placed.iter().enumerate() {
            basket_of[order[t]] = b;
        }
        BasketAssignment { basket_of: canonical_basket_of(weights, bf.baskets(), &basket_of) }
    });
    meter.finish(found)
}

/// Partial graph shared by the realization searches.
struct State {
    n: usize,
    adj: Vec<Vec<usize>>,
    bits: Vec<Vec<u64>>,
    residual: Vec<usize>,
    stamp: Vec<usize>,
    epoch: usize,
}

impl State {
    fn new(degrees: &[usize]) -> Self {
        let n = degrees.len();
        let words = n.div_ceil(64);
        State {
            n,
            adj: vec![Vec::new(); n],
            bits: vec![vec![0; words]; n],
            residual: degrees.to_vec(),
            stamp: vec![0; n],
            epoch: 0,
        }
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.bits[u][v / 64] >> (v % 64) & 1 == 1
    }

    fn link(&mut self, u: usize, v: usize) {
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.bits[u][v / 64] |= 1 << (v % 64);
        self.bits[v][u / 64] |= 1 << (u % 64);
        self.residual[u] -= 1;
        self.residual[v] -= 1;
    }

    fn unlink_last(&mut self, u: usize, v: usize) {
        let popped = self.adj[v].pop();
        debug_assert_eq!(popped, Some(u));
        if let Some(pos) = self.adj[u].iter().rposition(|&w| w == v) {
            self.adj[u].remove(pos);
        }
        self.bits[u][v / 64] &= !(1 << (v % 64));
        self.bits[v][u / 64] &= !(1 << (u % 64));
        self.residual[u] += 1;
        self.residual[v] += 1;
    }

    /// Current number of vertices at distance exactly two from `x`.
    fn second_count(&mut self, x: usize) -> usize {
        self.epoch += 1;
        let e = self.epoch;
        self.stamp[x] = e;
        for &u in &self.adj[x] {
            self.stamp[u] = e;
        }
        let mut count = 0;
        for i in 0..self.adj[x].len() {
            let u = self.adj[x][i];
            for j in 0..self.adj[u].len() {
                let w = self.adj[u][j];
                if self.stamp[w] != e {
                    self.stamp[w] = e;
                    count += 1;
                }
            }
        }
        count
    }

    fn candidates(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| u != v && self.residual[u] > 0 && !self.adjacent(u, v))
    }

    fn graph(&self) -> Graph {
        Graph::from_adjacency_unchecked(self.adj.clone())
    }

    fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        stack.push(w);
                    } else if color[w] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Residual degrees must stay graphical, and no vertex may need more
    /// partners than remain available to it.
    fn degrees_feasible(&self) -> bool {
        for v in 0..self.n {
            let r = self.residual[v];
            if r > 0 && self.candidates(v).take(r).count() < r {
                return false;
            }
        }
        erdos_gallai(&DegreeSequence(self.residual.clone()))
    }
}

/// Per-vertex pruning rule of one realization problem.
trait Rule {
    fn pairs(&self) -> &[(usize, usize)];
    /// `false` when vertex `x` can no longer meet its target.
    fn vertex_ok(&self, st: &mut State, x: usize) -> bool;
    fn accepts(&self, g: &Graph) -> bool;
    /// Whether a change at a vertex can affect pruning two hops away.
    fn two_hop(&self) -> bool;
}

struct SodsRule<'a> {
    target: &'a SodsTarget,
    max_fanout: usize,
}

impl Rule for SodsRule<'_> {
    fn pairs(&self) -> &[(usize, usize)] {
        &self.target.pairs
    }

    fn vertex_ok(&self, st: &mut State, x: usize) -> bool {
        let want = self.target.pairs[x].1;
        let have = st.second_count(x);
        let slack: usize = st.adj[x].iter().map(|&u| st.residual[u]).sum();
        if st.residual[x] == 0 {
            // The second neighborhood only grows from here on.
            have <= want && want <= have + slack
        } else {
            want <= have + slack + st.residual[x] * self.max_fanout
        }
    }

    fn accepts(&self, g: &Graph) -> bool {
        verify_sods(g, self.target)
    }

    fn two_hop(&self) -> bool {
        true
    }
}

struct XyRule<'a> {
    target: &'a XyTarget,
}

impl Rule for XyRule<'_> {
    fn pairs(&self) -> &[(usize, usize)] {
        &self.target.pairs
    }

    fn vertex_ok(&self, st: &mut State, x: usize) -> bool {
        let pairs = &self.target.pairs;
        let want = pairs[x].1;
        let have: usize = st.adj[x].iter().map(|&u| pairs[u].0).sum();
        let r = st.residual[x];
        if r == 0 {
            return have == want;
        }
        let mut degrees: Vec<usize> = st.candidates(x).map(|u| pairs[u].0).collect();
        if degrees.len() < r {
            return false;
        }
        degrees.sort_unstable();
        let low: usize = degrees[..r].iter().sum();
        let high: usize = degrees[degrees.len() - r..].iter().sum();
        have + low <= want && want <= have + high
    }

    fn accepts(&self, g: &Graph) -> bool {
        verify_xy(g, self.target)
    }

    fn two_hop(&self) -> bool {
        false
    }
}

/// Vertex-by-vertex branching: the vertex with the largest residual degree
/// (lowest index on ties) picks all its remaining neighbors at once.
/// Candidates that are twins in the partial graph (same target pair, same
/// residual degree, same neighborhood) are interchangeable, so only the
/// lowest-indexed ones of each twin class are ever chosen.
struct Realizer<'a, R: Rule> {
    rule: &'a R,
    st: State,
    meter: Meter,
    bipartite: bool,
}

impl<R: Rule> Realizer<'_, R> {
    fn all_ok(&mut self) -> bool {
        (0..self.st.n).all(|x| self.rule.vertex_ok(&mut self.st, x))
    }

    fn touched_ok(&mut self, changed: &[usize]) -> bool {
        let mut seen = vec![false; self.st.n];
        let mut check = Vec::new();
        for &c in changed {
            if !std::mem::replace(&mut seen[c], true) {
                check.push(c);
            }
            if self.rule.two_hop() {
                for &u in &self.st.adj[c] {
                    if !std::mem::replace(&mut seen[u], true) {
                        check.push(u);
                    }
                }
            }
        }
        check.into_iter().all(|x| self.rule.vertex_ok(&mut self.st, x))
    }

    fn search(&mut self) -> Option<Graph> {
        if !self.meter.tick() {
            return None;
        }
        let st = &self.st;
        let v = match (0..st.n)
            .filter(|&u| st.residual[u] > 0)
            .max_by(|&a, &b| st.residual[a].cmp(&st.residual[b]).then(b.cmp(&a)))
        {
            None => {
                let g = st.graph();
                return self.rule.accepts(&g).then_some(g);
            }
            Some(v) => v,
        };
        let need = st.residual[v];

        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut index: HashMap<((usize, usize), usize, &[u64]), usize> = HashMap::new();
        let pairs = self.rule.pairs();
        for u in st.candidates(v) {
            let key = (pairs[u], st.residual[u], st.bits[u].as_slice());
            match index.get(&key) {
                Some(&c) => classes[c].push(u),
                None => {
                    index.insert(key, classes.len());
                    classes.push(vec![u]);
                }
            }
        }
        drop(index);
        classes.sort_by(|a, b| st.residual[b[0]].cmp(&st.residual[a[0]]).then(a[0].cmp(&b[0])));
        let available: usize = classes.iter().map(Vec::len).sum();
        if available < need {
            return None;
        }
        let mut suffix = vec![0; classes.len() + 1];
        for c in (0..classes.len()).rev() {
            suffix[c] = suffix[c + 1] + classes[c].len();
        }
        let mut chosen = Vec::with_capacity(need);
        self.pick(v, need, 0, &classes, &suffix, &mut chosen)
    }

    fn pick(
        &mut self,
        v: usize,
        need: usize,
        class: usize,
        classes: &[Vec<usize>],
        suffix: &[usize],
        chosen: &mut Vec<usize>,
    ) -> Option<Graph> {
        if need == 0 {
            return self.descend(v, chosen);
        }
        if class == classes.len() || suffix[class] < need {
            return None;
        }
        let members = &classes[class];
        let most = need.min(members.len());
        let least = need.saturating_sub(suffix[class + 1]);
        for take in (least..=most).rev() {
            let before = chosen.len();
            chosen.extend_from_slice(&members[..take]);
            let found = self.pick(v, need - take, class + 1, classes, suffix, chosen);
            chosen.truncate(before);
            if found.is_some() || self.meter.exhausted {
                return found;
            }
        }
        None
    }

    fn descend(&mut self, v: usize, chosen: &[usize]) -> Option<Graph> {
        for &u in chosen {
            self.st.link(v, u);
        }
        let mut changed = chosen.to_vec();
        changed.push(v);
        let ok = (!self.bipartite || self.st.is_bipartite()) && self.st.degrees_feasible() && self.touched_ok(&changed);
        let found = if ok { self.search() } else { None };
        for &u in chosen.iter().rev() {
            self.st.unlink_last(v, u);
        }
        found
    }
}

fn realize<R: Rule>(rule: &R, budget: SearchBudget, bipartite: bool) -> SolveReport<Graph> {
    let degrees: Vec<usize> = rule.pairs().iter().map(|p| p.0).collect();
    let mut realizer = Realizer { rule, st: State::new(&degrees), meter: Meter::new(budget), bipartite };
    let found = if realizer.all_ok() { realizer.search() } else { None };
    realizer.meter.finish(found)
}

/// Finds a graph whose second-order profile is exactly `target`.
pub fn realize_sods(target: &SodsTarget, budget: SearchBudget) -> SolveReport<Graph> {
    realize_sods_inner(target, budget, false)
}

/// As [`realize_sods`], restricted to bipartite graphs.
pub fn realize_sods_bipartite(target: &SodsTarget, budget: SearchBudget) -> SolveReport<Graph> {
    realize_sods_inner(target, budget, true)
}

fn realize_sods_inner(target: &SodsTarget, budget: SearchBudget, bipartite: bool) -> SolveReport<Graph> {
    if !sods_d1_necessary(target) {
        return SolveReport { outcome: SolveOutcome::Infeasible, nodes: 0 };
    }
    let max_fanout = target.pairs.iter().map(|p| p.0.saturating_sub(1)).max().unwrap_or(0);
    let report = realize(&SodsRule { target, max_fanout }, budget, bipartite);
    debug_assert!(report.outcome.certificate().is_none_or(|g| !bipartite || bipartition(g).is_some()));
    report
}

/// Finds a graph whose `(degree, neighbor degree sum)` profile is exactly
/// `target`.
pub fn realize_xy(target: &XyTarget, budget: SearchBudget) -> SolveReport<Graph> {
    if !xy_necessary(target) {
        return SolveReport { outcome: SolveOutcome::Infeasible, nodes: 0 };
    }
    realize(&XyRule { target }, budget, false)
}

/// How the per-class edge-end equation of the aggregate system is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RowEquation {
    /// `J_ii + sum_j J_ij = i |V_i|`: diagonal edges have both ends in the
    /// class, matching the class-size formula of the JDM graphicality test.
    #[default]
    CountDiagonalTwice,
    /// `sum_j J_ij = i |V_i|` as literally displayed with the system.
    Literal,
}

/// Searches symmetric nonnegative matrices `J` with, for every class `i`,
/// the chosen row equation, `sum_j j J_ij + i J_ii = D(i)`, the bounds
/// `J_ij <= |V_i| |V_j|` and `J_ii <= C(|V_i|, 2)`, and a graphical verdict.
/// Upper-triangle entries are enumerated row by row in increasing order, so
/// the first matrix found is the lexicographically least.
pub fn jdm_feasible_from_aggregates(
    sizes: &[u64],
    neighbor_degree_totals: &[u64],
    budget: SearchBudget,
    mode: RowEquation,
) -> SolveReport<Jdm> {
    let delta = sizes.len();
    let mut meter = Meter::new(budget);
    if neighbor_degree_totals.len() != delta || delta == 0 {
        return meter.finish(None);
    }
    let cells: Vec<(usize, usize)> = (1..=delta).flat_map(|i| (i..=delta).map(move |j| (i, j))).collect();
    let ends: Vec<u64> = (1..=delta).map(|i| i as u64 * sizes[i - 1]).collect();

    struct Search<'a> {
        sizes: &'a [u64],
        totals: &'a [u64],
        ends: Vec<u64>,
        cells: Vec<(usize, usize)>,
        mode: RowEquation,
        // Per class: edge ends used so far and neighbor-degree sum so far.
        used: Vec<u64>,
        degree_sum: Vec<u64>,
        jdm: Jdm,
    }

    impl Search<'_> {
        fn bound(&self, i: usize, j: usize) -> u64 {
            let (a, b) = (self.sizes[i - 1], self.sizes[j - 1]);
            if i == j {
                a * a.saturating_sub(1) / 2
            } else {
                a * b
            }
        }

        /// Contribution of one unit of `J_ij` to class `i`'s row equation.
        fn row_weight(&self, i: usize, j: usize) -> u64 {
            match (i == j, self.mode) {
                (true, RowEquation::CountDiagonalTwice) => 2,
                _ => 1,
            }
        }

        fn row_done(&self, i: usize) -> bool {
            self.used[i - 1] == self.ends[i - 1] && self.degree_sum[i - 1] == self.totals[i - 1]
        }

        fn rec(&mut self, cell: usize, meter: &mut Meter) -> bool {
            if !meter.tick() {
                return false;
            }
            let Some(&(i, j)) = self.cells.get(cell) else {
                return jdm_graphical(&self.jdm).is_graphical();
            };
            let (wi, wj) = (self.row_weight(i, j), self.row_weight(j, i));
            let (di, dj) = if i == j { (2 * i as u64, 0) } else { (j as u64, i as u64) };
            let room_i = (self.ends[i - 1] - self.used[i - 1]) / wi;
            let room_j = if i == j { room_i } else { (self.ends[j - 1] - self.used[j - 1]) / wj };
            let top = self.bound(i, j).min(room_i).min(room_j);
            let last_in_row = cell + 1 == self.cells.len() || self.cells[cell + 1].0 != i;
            for value in 0..=top {
                self.apply(i, j, value, wi, wj, di, dj, true);
                let over = self.degree_sum[i - 1] > self.totals[i - 1]
                    || (i != j && self.degree_sum[j - 1] > self.totals[j - 1]);
                if !over && (!last_in_row || self.row_done(i)) {
                    self.jdm.set(i, j, value);
                    if self.rec(cell + 1, meter) {
                        return true;
                    }
                    self.jdm.set(i, j, 0);
                }
                self.apply(i, j, value, wi, wj, di, dj, false);
                if over || meter.exhausted {
                    return false;
                }
            }
            false
        }

        #[allow(clippy::too_many_arguments)]
        fn apply(&mut self, i: usize, j: usize, value: u64, wi: u64, wj: u64, di: u64, dj: u64, add: bool) {
            let delta_i = (wi * value, di * value);
            let delta_j = (wj * value, dj * value);
            let sign = |a: &mut u64, d: u64| if add { *a += d } else { *a -= d };
            sign(&mut self.used[i - 1], delta_i.0);
            sign(&mut self.degree_sum[i - 1], delta_i.1);
            if i != j {
                sign(&mut self.used[j - 1], delta_j.0);
                sign(&mut self.degree_sum[j - 1], delta_j.1);
            }
        }
    }

    let mut search = Search {
        sizes,
        totals: neighbor_degree_totals,
        ends,
        cells,
        mode,
        used: vec![0; delta],
        degree_sum: vec![0; delta],
        jdm: Jdm::zero(delta),
    };
    let found = search.rec(0, &mut meter).then(|| search.jdm.clone());
    meter.finish(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;
    use crate::reductions::Basket;

    fn sods(pairs: &[(usize, usize)]) -> SodsTarget {
        SodsTarget { pairs: pairs.to_vec() }
    }

    fn tp(m: usize, w: usize, alphas: &[usize]) -> ThreePartitionInstance {
        ThreePartitionInstance::new(m, w, alphas.to_vec()).unwrap()
    }

    fn bf(weights: &[usize], baskets: &[(usize, usize)]) -> BasketFillingInstance {
        let baskets = baskets.iter().map(|&(count, weight)| Basket { count, weight }).collect();
        BasketFillingInstance::new(weights.to_vec(), baskets).unwrap()
    }

    #[test]
    fn three_partition_examples() {
        let inst = tp(2, 10, &[3, 3, 4, 3, 3, 4]);
        let report = solve_tp(&inst, SearchBudget::unlimited());
        let partition = report.outcome.certificate().unwrap();
        assert!(verify_tp(&inst, partition));
        assert_eq!(partition.triples, vec![[0, 1, 2], [3, 4, 5]]);
        assert!(solve_tp(&tp(1, 10, &[3, 3, 4]), SearchBudget::unlimited()).outcome.is_solved());
        let inst = tp(2, 12, &[4; 6]);
        let partition = solve_tp(&inst, SearchBudget::unlimited()).outcome;
        assert_eq!(partition.certificate().unwrap().triples, vec![[0, 1, 2], [3, 4, 5]]);
    }

    #[test]
    fn three_partition_infeasible() {
        let inst = tp(2, 13, &[4, 4, 4, 4, 5, 5]);
        assert!(solve_tp(&inst, SearchBudget::unlimited()).outcome.is_solved());
        // Triple sums available: 12, 14, 16, 18.
        let inst = tp(2, 15, &[4, 4, 4, 6, 6, 6]);
        assert_eq!(solve_tp(&inst, SearchBudget::unlimited()).outcome, SolveOutcome::Infeasible);
    }

    #[test]
    fn basket_filling_examples() {
        let inst = bf(&[5, 4, 3, 3, 3, 2], &[(3, 10), (3, 10)]);
        let sol = solve_bf(&inst, SearchBudget::unlimited()).outcome.certificate().cloned().unwrap();
        assert!(verify_bf(&inst, &sol));
        assert_eq!(sol.basket_of, vec![0, 1, 0, 1, 1, 0]);
        let inst = bf(&[6, 2, 2, 2], &[(2, 8), (2, 4)]);
        let sol = solve_bf(&inst, SearchBudget::unlimited()).outcome.certificate().cloned().unwrap();
        assert_eq!(sol.basket_of, vec![0, 0, 1, 1]);
        let inst = bf(&[4, 4, 1, 1], &[(2, 6), (2, 4)]);
        assert_eq!(solve_bf(&inst, SearchBudget::unlimited()).outcome, SolveOutcome::Infeasible);
    }

    #[test]
    fn sods_realization_examples() {
        let path = realize_sods(&sods(&[(1, 1), (2, 0), (1, 1)]), SearchBudget::unlimited());
        assert_eq!(path.outcome.certificate(), Some(&fixtures::path(3)));
        let none = realize_sods(&sods(&[(1, 0), (1, 1)]), SearchBudget::unlimited());
        assert_eq!(none.outcome, SolveOutcome::Infeasible);
        // Degree sequence (2,2,2,2) with d2 = 0 everywhere forces two triangles on four vertices.
        let none = realize_sods(&sods(&[(2, 0); 4]), SearchBudget::unlimited());
        assert_eq!(none.outcome, SolveOutcome::Infeasible);
    }

    #[test]
    fn bipartite_realization_examples() {
        let c4 = realize_sods_bipartite(&sods(&[(2, 1); 4]), SearchBudget::unlimited());
        assert!(verify_sods(c4.outcome.certificate().unwrap(), &sods(&[(2, 1); 4])));
        let k3 = realize_sods_bipartite(&sods(&[(2, 0); 3]), SearchBudget::unlimited());
        assert_eq!(k3.outcome, SolveOutcome::Infeasible);
        assert!(realize_sods(&sods(&[(2, 0); 3]), SearchBudget::unlimited()).outcome.is_solved());
    }

    #[test]
    fn xy_realization_examples() {
        let k3 = XyTarget { pairs: vec![(2, 4); 3] };
        assert_eq!(realize_xy(&k3, SearchBudget::unlimited()).outcome.certificate(), Some(&fixtures::complete(3)));
        let k2 = XyTarget { pairs: vec![(1, 1); 2] };
        assert_eq!(realize_xy(&k2, SearchBudget::unlimited()).outcome.certificate(), Some(&fixtures::complete(2)));
        let bad = XyTarget { pairs: vec![(2, 3), (1, 2), (1, 2), (2, 5)] };
        assert!(!realize_xy(&bad, SearchBudget::unlimited()).outcome.is_solved());
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let inst = tp(2, 10, &[3, 3, 4, 3, 3, 4]);
        let report = solve_tp(&inst, SearchBudget::nodes(1));
        assert_eq!(report.outcome, SolveOutcome::Unknown);
        let c5 = sods(&[(2, 2); 5]);
        assert_eq!(realize_sods(&c5, SearchBudget::nodes(1)).outcome, SolveOutcome::Unknown);
        assert!(realize_sods(&c5, SearchBudget::nodes(1000)).outcome.is_solved());
    }

    #[test]
    fn jdm_aggregate_examples() {
        let k3 = jdm_feasible_from_aggregates(&[0, 3], &[0, 12], SearchBudget::unlimited(), RowEquation::default());
        let j = k3.outcome.certificate().unwrap();
        assert_eq!(j.rows(), vec![vec![0, 0], vec![0, 3]]);
        let k2 = jdm_feasible_from_aggregates(&[2], &[2], SearchBudget::unlimited(), RowEquation::default());
        assert_eq!(k2.outcome.certificate().unwrap().rows(), vec![vec![1]]);
        let odd = jdm_feasible_from_aggregates(&[2], &[3], SearchBudget::unlimited(), RowEquation::default());
        assert_eq!(odd.outcome, SolveOutcome::Infeasible);
    }

    #[test]
    fn jdm_aggregate_literal_mode() {
        // Literal row sums: J_22 = 2 * 3 = 6 would be needed, exceeding C(3, 2).
        let k3 = jdm_feasible_from_aggregates(&[0, 3], &[0, 12], SearchBudget::unlimited(), RowEquation::Literal);
        assert_eq!(k3.outcome, SolveOutcome::Infeasible);
        // Path on three vertices: |V_1| = 2, |V_2| = 1, D(1) = 4, D(2) = 2.
        let p3 = jdm_feasible_from_aggregates(&[2, 1], &[4, 2], SearchBudget::unlimited(), RowEquation::Literal);
        assert_eq!(p3.outcome.certificate().unwrap().rows(), vec![vec![0, 2], vec![2, 0]]);
    }
}
