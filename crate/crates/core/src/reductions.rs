//! Source problems (3-Partition, Basket Filling), the gadget targets they
//! reduce to, encoders that build the gadget graph from a known solution,
//! and decoders that read a solution back out of any realization.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{bipartition, neighbor_degree_sum, second_order_profile, Graph, SodsTarget, XyTarget};

/// 3-Partition: split `3m` integers, each strictly between `W/4` and `W/2`,
/// into `m` triples that each sum to `W`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThreePartitionInstance {
    m: usize,
    target: usize,
    alphas: Vec<usize>,
}

impl ThreePartitionInstance {
    pub fn new(m: usize, target: usize, alphas: Vec<usize>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInstance("m must be positive".into()));
        }
        if alphas.len() != 3 * m {
            return Err(Error::InvalidInstance(format!("expected {} numbers, got {}", 3 * m, alphas.len())));
        }
        if let Some(&a) = alphas.iter().find(|&&a| 4 * a <= target || 2 * a >= target) {
            return Err(Error::InvalidInstance(format!("{a} is not strictly between W/4 and W/2 for W = {target}")));
        }
        let sum: usize = alphas.iter().sum();
        if sum != m * target {
            return Err(Error::InvalidInstance(format!("sum {sum} differs from m*W = {}", m * target)));
        }
        Ok(ThreePartitionInstance { m, target, alphas })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The common triple sum `W`.
    pub fn target(&self) -> usize {
        self.target
    }

    pub fn alphas(&self) -> &[usize] {
        &self.alphas
    }

    /// Unary size `mW`.
    pub fn unary_size(&self) -> usize {
        self.m * self.target
    }

    pub fn verify(&self, partition: &TriplePartition) -> bool {
        let n = self.alphas.len();
        let mut seen = vec![false; n];
        partition.triples.len() == self.m
            && partition.triples.iter().all(|triple| {
                triple.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
                    && triple.iter().map(|&i| self.alphas[i]).sum::<usize>() == self.target
            })
    }
}

/// A solution to 3-Partition as triples of item indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePartition {
    pub triples: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basket {
    /// Number of items the basket takes.
    pub count: usize,
    /// Total weight the basket takes.
    pub weight: usize,
}

/// Basket Filling: place `n` weighted items into `k` baskets so that basket
/// `l` receives exactly `count` items of total weight exactly `weight`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasketFillingInstance {
    weights: Vec<usize>,
    baskets: Vec<Basket>,
}

impl BasketFillingInstance {
    /// Validates positive weights, positive basket counts and that the
    /// basket totals match the item totals.
    pub fn new(weights: Vec<usize>, baskets: Vec<Basket>) -> Result<Self> {
        if weights.contains(&0) {
            return Err(Error::InvalidInstance("weights must be positive".into()));
        }
        if baskets.iter().any(|b| b.count == 0) {
            return Err(Error::InvalidInstance("basket counts must be positive".into()));
        }
        let counts: usize = baskets.iter().map(|b| b.count).sum();
        if counts != weights.len() {
            return Err(Error::InvalidInstance(format!(
                "basket counts sum to {counts}, expected {} items",
                weights.len()
            )));
        }
        let capacity: usize = baskets.iter().map(|b| b.weight).sum();
        let total: usize = weights.iter().sum();
        if capacity != total {
            return Err(Error::InvalidInstance(format!("basket weights sum to {capacity}, items sum to {total}")));
        }
        Ok(BasketFillingInstance { weights, baskets })
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn baskets(&self) -> &[Basket] {
        &self.baskets
    }

    pub fn item_count(&self) -> usize {
        self.weights.len()
    }

    pub fn basket_count(&self) -> usize {
        self.baskets.len()
    }

    /// Total weight `M`.
    pub fn total_weight(&self) -> usize {
        self.weights.iter().sum()
    }

    pub fn verify(&self, sol: &BasketAssignment) -> bool {
        if sol.basket_of.len() != self.weights.len() {
            return false;
        }
        let mut filled = vec![Basket { count: 0, weight: 0 }; self.baskets.len()];
        for (&b, &w) in sol.basket_of.iter().zip(&self.weights) {
            let Some(slot) = filled.get_mut(b) else { return false };
            slot.count += 1;
            slot.weight += w;
        }
        filled == self.baskets
    }
}

/// Item index to basket index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasketAssignment {
    pub basket_of: Vec<usize>,
}

/// A Basket Filling instance with its single-item baskets filled and removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitBasketReduction {
    pub reduced: BasketFillingInstance,
    /// Original index of every item kept in `reduced`.
    pub kept_items: Vec<usize>,
    /// Original index of every basket kept in `reduced`.
    pub kept_baskets: Vec<usize>,
    /// `(item, basket)` pairs fixed by the pass.
    pub fixed: Vec<(usize, usize)>,
    original_items: usize,
}

impl UnitBasketReduction {
    /// Maps a solution of the reduced instance back to the original.
    pub fn lift(&self, sol: &BasketAssignment) -> BasketAssignment {
        let mut basket_of = vec![0; self.original_items];
        for &(item, basket) in &self.fixed {
            basket_of[item] = basket;
        }
        for (i, &b) in sol.basket_of.iter().enumerate() {
            basket_of[self.kept_items[i]] = self.kept_baskets[b];
        }
        BasketAssignment { basket_of }
    }
}

/// Fills every basket of count one with the lowest-index unused item of the
/// matching weight. Items of equal weight are interchangeable, so the greedy
/// choice loses nothing. Returns `None` when some such basket has no item.
pub fn eliminate_unit_baskets(bf: &BasketFillingInstance) -> Option<UnitBasketReduction> {
    let mut used = vec![false; bf.item_count()];
    let mut fixed = Vec::new();
    let mut kept_baskets = Vec::new();
    for (l, basket) in bf.baskets.iter().enumerate() {
        if basket.count != 1 {
            kept_baskets.push(l);
            continue;
        }
        let item = (0..bf.item_count()).find(|&i| !used[i] && bf.weights[i] == basket.weight)?;
        used[item] = true;
        fixed.push((item, l));
    }
    let kept_items: Vec<usize> = (0..bf.item_count()).filter(|&i| !used[i]).collect();
    let reduced = BasketFillingInstance {
        weights: kept_items.iter().map(|&i| bf.weights[i]).collect(),
        baskets: kept_baskets.iter().map(|&l| bf.baskets[l]).collect(),
    };
    Some(UnitBasketReduction { reduced, kept_items, kept_baskets, fixed, original_items: bf.item_count() })
}

/// Each triple becomes a basket taking three items of total weight `W`.
pub fn tp_to_bf(tp: &ThreePartitionInstance) -> BasketFillingInstance {
    BasketFillingInstance { weights: tp.alphas.clone(), baskets: vec![Basket { count: 3, weight: tp.target }; tp.m] }
}

/// Whether some `w_i + 1` equals a basket count or `n + k - 1`. Such
/// collisions let an atom's profile be met by a non-weight neighbor.
pub fn bf_needs_rescale(bf: &BasketFillingInstance) -> bool {
    let hub = (bf.item_count() + bf.basket_count()).checked_sub(1);
    bf.weights.iter().any(|&w| Some(w + 1) == hub || bf.baskets.iter().any(|b| b.count == w + 1))
}

/// The factor `(n + k) * max count`.
pub fn rescale_factor(bf: &BasketFillingInstance) -> usize {
    let max_count = bf.baskets.iter().map(|b| b.count).max().unwrap_or(1);
    (bf.item_count() + bf.basket_count()) * max_count
}

/// Multiplies every item weight and basket weight by [`rescale_factor`].
/// Solvability is unchanged and the result never needs rescaling.
pub fn bf_rescale(bf: &BasketFillingInstance) -> BasketFillingInstance {
    let f = rescale_factor(bf).max(1);
    BasketFillingInstance {
        weights: bf.weights.iter().map(|w| w * f).collect(),
        baskets: bf.baskets.iter().map(|b| Basket { count: b.count, weight: b.weight * f }).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Atom { item: usize },
    Weight { item: usize },
    Basket { index: usize },
    Master,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    /// Basket Filling to second-order degree sequence.
    Sods,
    /// 3-Partition to bipartite second-order degree sequence.
    BipartiteSods,
    /// 3-Partition to degree / neighbor-degree-sum pairs.
    Xy,
}

/// Role of every position of an emitted gadget target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoleMap {
    pub kind: GadgetKind,
    pub roles: Vec<Role>,
    /// Item weights of the source instance.
    pub weights: Vec<usize>,
    /// Basket capacities of the source instance.
    pub baskets: Vec<Basket>,
}

impl RoleMap {
    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    pub fn positions(&self, pred: impl Fn(Role) -> bool) -> Vec<usize> {
        (0..self.roles.len()).filter(|&p| pred(self.roles[p])).collect()
    }

    fn position_of(&self, role: Role) -> usize {
        self.roles.iter().position(|&r| r == role).expect("role present")
    }
}

fn gadget_roles(kind: GadgetKind, weights: &[usize], baskets: &[Basket], master: bool) -> RoleMap {
    let mut roles = Vec::with_capacity(weights.iter().sum::<usize>() + weights.len() + baskets.len() + 1);
    for (item, &w) in weights.iter().enumerate() {
        roles.extend(std::iter::repeat_n(Role::Atom { item }, w));
    }
    roles.extend((0..weights.len()).map(|item| Role::Weight { item }));
    roles.extend((0..baskets.len()).map(|index| Role::Basket { index }));
    if master {
        roles.push(Role::Master);
    }
    RoleMap { kind, roles, weights: weights.to_vec(), baskets: baskets.to_vec() }
}

fn sods_gadget(bf: &BasketFillingInstance) -> (SodsTarget, RoleMap) {
    let (n, k, total) = (bf.item_count(), bf.basket_count(), bf.total_weight());
    let roles = gadget_roles(GadgetKind::Sods, &bf.weights, &bf.baskets, true);
    let pairs = roles
        .roles
        .iter()
        .map(|&role| match role {
            Role::Atom { item } => (1, bf.weights[item] + 1),
            Role::Weight { item } => (bf.weights[item] + 2, (k - 1) + (n - 1)),
            Role::Basket { index } => {
                let b = bf.baskets[index];
                (b.count + 1, (k - 1) + (n - b.count) + b.weight)
            }
            Role::Master => (n + k, total),
        })
        .collect();
    (SodsTarget { pairs }, roles)
}

/// Second-order target of the Basket Filling gadget: `w_i` atoms per item,
/// one weight vertex per item, one vertex per basket and a master vertex.
///
/// Fails with [`Error::NeedsRescale`] when [`bf_needs_rescale`] holds, and
/// with [`Error::InvalidInstance`] when a basket takes a single item (run
/// [`eliminate_unit_baskets`] first) or there is no basket.
pub fn bf_to_sods(bf: &BasketFillingInstance) -> Result<(SodsTarget, RoleMap)> {
    if bf.baskets.is_empty() {
        return Err(Error::InvalidInstance("no baskets".into()));
    }
    if bf.baskets.iter().any(|b| b.count < 2) {
        return Err(Error::InvalidInstance("basket with count 1; eliminate unit baskets first".into()));
    }
    if bf_needs_rescale(bf) {
        return Err(Error::NeedsRescale);
    }
    Ok(sods_gadget(bf))
}

/// [`bf_to_sods`] after rescaling when needed. Returns the instance the
/// target was built from, which is what decoding must be run against.
pub fn bf_to_sods_auto_rescale(bf: &BasketFillingInstance) -> Result<(BasketFillingInstance, SodsTarget, RoleMap)> {
    let bf = if bf_needs_rescale(bf) { bf_rescale(bf) } else { bf.clone() };
    let (target, roles) = bf_to_sods(&bf)?;
    Ok((bf, target, roles))
}

/// Bipartite second-order target for 3-Partition: atoms `(1, a_i)`, weight
/// vertices `(a_i + 1, 2)` and baskets `(3, W)`. Requires `W > 8`.
pub fn tp_to_bipartite_sods(tp: &ThreePartitionInstance) -> Result<(SodsTarget, RoleMap)> {
    if tp.target <= 8 {
        return Err(Error::UnsupportedInstance(format!("W = {} but the gadget needs W > 8", tp.target)));
    }
    let baskets = vec![Basket { count: 3, weight: tp.target }; tp.m];
    let roles = gadget_roles(GadgetKind::BipartiteSods, &tp.alphas, &baskets, false);
    let pairs = roles
        .roles
        .iter()
        .map(|&role| match role {
            Role::Atom { item } => (1, tp.alphas[item]),
            Role::Weight { item } => (tp.alphas[item] + 1, 2),
            _ => (3, tp.target),
        })
        .collect();
    Ok((SodsTarget { pairs }, roles))
}

/// Degree / neighbor-degree-sum target for 3-Partition: atoms
/// `(1, a_i + 1)`, weight vertices `(a_i + 1, a_i + 3)` and baskets
/// `(3, W + 3)`.
pub fn tp_to_xy(tp: &ThreePartitionInstance) -> (XyTarget, RoleMap) {
    let baskets = vec![Basket { count: 3, weight: tp.target }; tp.m];
    let roles = gadget_roles(GadgetKind::Xy, &tp.alphas, &baskets, false);
    let pairs = roles
        .roles
        .iter()
        .map(|&role| match role {
            Role::Atom { item } => (1, tp.alphas[item] + 1),
            Role::Weight { item } => (tp.alphas[item] + 1, tp.alphas[item] + 3),
            _ => (3, tp.target + 3),
        })
        .collect();
    (XyTarget { pairs }, roles)
}

/// Builds the Basket Filling gadget graph for a known solution, with
/// vertices in the order of [`bf_to_sods`].
pub fn encode_bf_solution_as_graph(bf: &BasketFillingInstance, sol: &BasketAssignment) -> Result<Graph> {
    if !bf.verify(sol) {
        return Err(Error::InvalidSolution("assignment does not fill the baskets".into()));
    }
    let roles = gadget_roles(GadgetKind::Sods, &bf.weights, &bf.baskets, true);
    let master = roles.position_of(Role::Master);
    let mut edges = Vec::new();
    for (p, &role) in roles.roles.iter().enumerate() {
        match role {
            Role::Atom { item } => edges.push((p, roles.position_of(Role::Weight { item }))),
            Role::Weight { item } => {
                edges.push((p, master));
                edges.push((p, roles.position_of(Role::Basket { index: sol.basket_of[item] })));
            }
            Role::Basket { .. } => edges.push((p, master)),
            Role::Master => {}
        }
    }
    Graph::from_edges(roles.len(), &edges)
}

fn triple_gadget_graph(tp: &ThreePartitionInstance, partition: &TriplePartition) -> Result<Graph> {
    if !tp.verify(partition) {
        return Err(Error::InvalidSolution("triples do not partition the numbers into sums of W".into()));
    }
    let baskets = vec![Basket { count: 3, weight: tp.target }; tp.m];
    let roles = gadget_roles(GadgetKind::BipartiteSods, &tp.alphas, &baskets, false);
    let mut basket_of = vec![0; tp.alphas.len()];
    for (index, triple) in partition.triples.iter().enumerate() {
        for &i in triple {
            basket_of[i] = index;
        }
    }
    let mut edges = Vec::new();
    for (p, &role) in roles.roles.iter().enumerate() {
        match role {
            Role::Atom { item } => edges.push((p, roles.position_of(Role::Weight { item }))),
            Role::Weight { item } => edges.push((p, roles.position_of(Role::Basket { index: basket_of[item] }))),
            _ => {}
        }
    }
    Graph::from_edges(roles.len(), &edges)
}

/// Gadget graph for [`tp_to_bipartite_sods`] built from a known partition.
pub fn encode_tp_solution_as_bipartite_graph(
    tp: &ThreePartitionInstance,
    partition: &TriplePartition,
) -> Result<Graph> {
    triple_gadget_graph(tp, partition)
}

/// Gadget graph for [`tp_to_xy`] built from a known partition. It is the
/// same graph as the bipartite gadget; only the target differs.
pub fn encode_tp_solution_as_xy_graph(tp: &ThreePartitionInstance, partition: &TriplePartition) -> Result<Graph> {
    triple_gadget_graph(tp, partition)
}

fn check_profile(actual: &[(usize, usize)], expected: &[(usize, usize)]) -> Result<()> {
    if actual.len() != expected.len() {
        return Err(Error::ProfileMismatch { position: actual.len().min(expected.len()) });
    }
    match actual.iter().zip(expected).position(|(a, e)| a != e) {
        Some(position) => Err(Error::ProfileMismatch { position }),
        None => Ok(()),
    }
}

/// Hub role classes that positions with one target pair may take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum HubClass {
    Weight(usize),
    Basket(Basket),
    Master,
}

/// Calls `visit` with every distinct way of handing the multiset `classes`
/// out to `slots` positions; stops early when `visit` returns `Some`.
fn distinct_arrangements<T: Copy + Ord, R>(classes: &[T], visit: &mut dyn FnMut(&[T]) -> Option<R>) -> Option<R> {
    fn rec<T: Copy + Ord, R>(
        left: &mut BTreeMap<T, usize>,
        cur: &mut Vec<T>,
        total: usize,
        visit: &mut dyn FnMut(&[T]) -> Option<R>,
    ) -> Option<R> {
        if cur.len() == total {
            return visit(cur);
        }
        let keys: Vec<T> = left.iter().filter(|e| *e.1 > 0).map(|e| *e.0).collect();
        for key in keys {
            *left.get_mut(&key).unwrap() -= 1;
            cur.push(key);
            let found = rec(left, cur, total, visit);
            cur.pop();
            *left.get_mut(&key).unwrap() += 1;
            if found.is_some() {
                return found;
            }
        }
        None
    }
    let mut left = BTreeMap::new();
    for &c in classes {
        *left.entry(c).or_insert(0) += 1;
    }
    rec(&mut left, &mut Vec::with_capacity(classes.len()), classes.len(), visit)
}

/// Decodes a realization of the [`bf_to_sods`] target into a basket
/// assignment for `bf`.
///
/// Vertex `p` of `g` must carry the target pair of position `p`. Positions
/// whose pairs coincide are interchangeable, so when different roles share a
/// pair (say a basket and the master) every distribution of those roles over
/// the vertices is tried until one yields an assignment that verifies.
pub fn decode_sods_solution(g: &Graph, bf: &BasketFillingInstance, roles: &RoleMap) -> Result<BasketAssignment> {
    let (target, expected_roles) = sods_gadget(bf);
    if roles.roles != expected_roles.roles {
        return Err(Error::RoleIdentification("role map does not belong to this instance".into()));
    }
    check_profile(&second_order_profile(g).pairs, &target.pairs)?;

    let mut groups: BTreeMap<(usize, usize), (Vec<usize>, Vec<HubClass>)> = BTreeMap::new();
    for (p, &role) in roles.roles.iter().enumerate() {
        let class = match role {
            Role::Atom { .. } => continue,
            Role::Weight { item } => HubClass::Weight(bf.weights[item]),
            Role::Basket { index } => HubClass::Basket(bf.baskets[index]),
            Role::Master => HubClass::Master,
        };
        let entry = groups.entry(target.pairs[p]).or_default();
        entry.0.push(p);
        entry.1.push(class);
    }
    let groups: Vec<(Vec<usize>, Vec<HubClass>)> = groups.into_values().collect();
    let mut assigned: Vec<Option<HubClass>> = vec![None; g.vertex_count()];

    fn search(
        depth: usize,
        groups: &[(Vec<usize>, Vec<HubClass>)],
        assigned: &mut Vec<Option<HubClass>>,
        g: &Graph,
        bf: &BasketFillingInstance,
    ) -> Option<BasketAssignment> {
        let Some((vertices, classes)) = groups.get(depth) else {
            return read_assignment(g, bf, assigned);
        };
        distinct_arrangements(classes, &mut |arrangement| {
            for (&v, &c) in vertices.iter().zip(arrangement) {
                assigned[v] = Some(c);
            }
            search(depth + 1, groups, assigned, g, bf)
        })
    }

    search(0, &groups, &mut assigned, g, bf)
        .map(|sol| BasketAssignment { basket_of: canonical_basket_of(&bf.weights, &bf.baskets, &sol.basket_of) })
        .ok_or_else(|| Error::RoleIdentification("no role assignment yields a valid filling".into()))
}

/// Reads item-to-basket assignments off a role labeling: every weight
/// vertex has exactly one basket neighbor.
fn read_assignment(g: &Graph, bf: &BasketFillingInstance, assigned: &[Option<HubClass>]) -> Option<BasketAssignment> {
    let basket_index = label_baskets(&bf.baskets, assigned);
    let containers: Vec<(usize, usize)> = (0..g.vertex_count())
        .filter_map(|v| match assigned[v] {
            Some(HubClass::Weight(w)) => {
                let mut baskets = g.neighbors(v).iter().filter_map(|&u| basket_index[u]);
                let only = baskets.next()?;
                baskets.next().is_none().then_some((w, only))
            }
            _ => None,
        })
        .collect::<Vec<_>>();
    if containers.len() != bf.item_count() {
        return None;
    }
    let sol = assign_items(&bf.weights, &containers)?;
    bf.verify(&sol).then_some(sol)
}

/// Basket index for every vertex labeled as a basket. Identical baskets are
/// handed out in vertex order.
fn label_baskets(baskets: &[Basket], assigned: &[Option<HubClass>]) -> Vec<Option<usize>> {
    let mut free: BTreeMap<Basket, Vec<usize>> = BTreeMap::new();
    for (l, &b) in baskets.iter().enumerate().rev() {
        free.entry(b).or_default().push(l);
    }
    assigned
        .iter()
        .map(|class| match class {
            Some(HubClass::Basket(b)) => free.get_mut(b).and_then(Vec::pop),
            _ => None,
        })
        .collect()
}

/// Turns `(item weight, basket)` pairs into an item assignment, handing
/// items of equal weight out in index order.
fn assign_items(weights: &[usize], containers: &[(usize, usize)]) -> Option<BasketAssignment> {
    let mut by_weight: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &w) in weights.iter().enumerate().rev() {
        by_weight.entry(w).or_default().push(i);
    }
    let mut basket_of = vec![usize::MAX; weights.len()];
    for &(w, b) in containers {
        let item = by_weight.get_mut(&w)?.pop()?;
        basket_of[item] = b;
    }
    Some(BasketAssignment { basket_of })
}

fn decode_triples(
    g: &Graph,
    tp: &ThreePartitionInstance,
    target: &[(usize, usize)],
    actual: &[(usize, usize)],
    roles: &RoleMap,
) -> Result<TriplePartition> {
    check_profile(actual, target)?;
    let weight_pair: BTreeMap<(usize, usize), usize> = roles
        .positions(|r| matches!(r, Role::Weight { .. }))
        .into_iter()
        .map(|p| (target[p], tp.alphas[p - tp.unary_size()]))
        .collect();
    let basket_pair = target[target.len() - 1];
    let mut containers = Vec::with_capacity(tp.alphas.len());
    let mut basket = 0;
    for v in 0..g.vertex_count() {
        if target[v] != basket_pair || weight_pair.contains_key(&target[v]) {
            continue;
        }
        let members: Vec<usize> = g.neighbors(v).iter().filter_map(|&u| weight_pair.get(&target[u]).copied()).collect();
        if members.len() != 3 {
            return Err(Error::RoleIdentification(format!("basket vertex {v} has {} weight neighbors", members.len())));
        }
        containers.extend(members.into_iter().map(|w| (w, basket)));
        basket += 1;
    }
    let sol = assign_items(&tp.alphas, &containers)
        .filter(|sol| tp_to_bf(tp).verify(sol))
        .ok_or_else(|| Error::RoleIdentification("basket neighborhoods do not form a partition".into()))?;
    Ok(triples_from_assignment(tp, &sol.basket_of))
}

fn triples_from_assignment(tp: &ThreePartitionInstance, basket_of: &[usize]) -> TriplePartition {
    let bf = tp_to_bf(tp);
    let canonical = canonical_basket_of(&bf.weights, &bf.baskets, basket_of);
    let mut triples = vec![Vec::with_capacity(3); tp.m];
    for (item, &b) in canonical.iter().enumerate() {
        triples[b].push(item);
    }
    TriplePartition { triples: triples.into_iter().map(|t| [t[0], t[1], t[2]]).collect() }
}

/// Decodes a realization of the [`tp_to_bipartite_sods`] target: the three
/// weight neighbors of every basket vertex form one triple.
pub fn decode_bipartite_solution(g: &Graph, tp: &ThreePartitionInstance) -> Result<TriplePartition> {
    let (target, roles) = tp_to_bipartite_sods(tp)?;
    if bipartition(g).is_none() {
        return Err(Error::RoleIdentification("graph is not bipartite".into()));
    }
    decode_triples(g, tp, &target.pairs, &second_order_profile(g).pairs, &roles)
}

/// Decodes a realization of the [`tp_to_xy`] target.
pub fn decode_xy_solution(g: &Graph, tp: &ThreePartitionInstance) -> Result<TriplePartition> {
    let (target, roles) = tp_to_xy(tp);
    decode_triples(g, tp, &target.pairs, &neighbor_degree_sum(g).pairs, &roles)
}

/// Lexicographically least assignment among those obtained by permuting
/// items of equal weight and baskets with equal capacities.
///
/// Items are placed in index order, each into the lowest basket that still
/// admits a completion. A partial placement completes iff, inside every
/// group of identical baskets, the partial contents can be matched to
/// distinct target contents that contain them.
pub fn canonical_basket_of(weights: &[usize], baskets: &[Basket], basket_of: &[usize]) -> Vec<usize> {
    let k = baskets.len();
    let mut contents: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); k];
    for (&b, &w) in basket_of.iter().zip(weights) {
        *contents[b].entry(w).or_insert(0) += 1;
    }
    let mut groups: BTreeMap<Basket, Vec<usize>> = BTreeMap::new();
    for (l, &b) in baskets.iter().enumerate() {
        groups.entry(b).or_default().push(l);
    }
    let group_of: Vec<Vec<usize>> = baskets.iter().map(|b| groups[b].clone()).collect();

    let mut partial: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); k];
    let mut out = Vec::with_capacity(weights.len());
    for &w in weights {
        let chosen = (0..k)
            .find(|&b| {
                *partial[b].entry(w).or_insert(0) += 1;
                let ok = group_matchable(&group_of[b], &partial, &contents);
                let slot = partial[b].get_mut(&w).unwrap();
                *slot -= 1;
                if *slot == 0 {
                    partial[b].remove(&w);
                }
                ok
            })
            .expect("the original assignment is a completion");
        *partial[chosen].entry(w).or_insert(0) += 1;
        out.push(chosen);
    }
    out
}

fn contained(small: &BTreeMap<usize, usize>, big: &BTreeMap<usize, usize>) -> bool {
    small.iter().all(|(w, &c)| big.get(w).is_some_and(|&have| have >= c))
}

/// Perfect matching of basket labels to target contents within one group.
fn group_matchable(group: &[usize], partial: &[BTreeMap<usize, usize>], contents: &[BTreeMap<usize, usize>]) -> bool {
    fn augment(
        label: usize,
        group: &[usize],
        ok: &[Vec<bool>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for c in 0..group.len() {
            if ok[label][c] && !seen[c] {
                seen[c] = true;
                if owner[c].is_none_or(|o| augment(o, group, ok, seen, owner)) {
                    owner[c] = Some(label);
                    return true;
                }
            }
        }
        false
    }
    let ok: Vec<Vec<bool>> =
        group.iter().map(|&l| group.iter().map(|&c| contained(&partial[l], &contents[c])).collect()).collect();
    let mut owner = vec![None; group.len()];
    (0..group.len()).all(|label| augment(label, group, &ok, &mut vec![false; group.len()], &mut owner))
}
