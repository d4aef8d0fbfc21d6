//! Seeded instance generators. All randomness comes from ChaCha8 seeded with
//! a `u64`, so the output is identical across runs and platforms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reductions::{Basket, BasketAssignment, BasketFillingInstance, ThreePartitionInstance};

/// Every multiset `a <= b <= c` with `W/4 < a, b, c < W/2` and `a + b + c = W`.
pub fn valid_triples(w: usize) -> Vec<[usize; 3]> {
    let inside = |a: usize| 4 * a > w && 2 * a < w;
    let mut out = Vec::new();
    for a in (1..w).filter(|&a| inside(a)) {
        for b in (a..w).filter(|&b| inside(b)) {
            if a + b >= w {
                break;
            }
            let c = w - a - b;
            if c >= b && inside(c) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// A 3-Partition instance solvable by construction: `m` valid triples are
/// drawn uniformly with replacement, flattened and shuffled.
pub fn gen_tp_solvable(seed: u64, m: usize, w: usize) -> Result<ThreePartitionInstance> {
    if w <= 8 {
        return Err(Error::Generation(format!("W = {w}; generated instances need W > 8")));
    }
    if m == 0 {
        return Err(Error::Generation("m must be positive".into()));
    }
    let triples = valid_triples(w);
    if triples.is_empty() {
        return Err(Error::Generation(format!("no valid triple sums to W = {w}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut alphas = Vec::with_capacity(3 * m);
    for _ in 0..m {
        let pick = rng.gen_range(0..triples.len() as u64) as usize;
        alphas.extend_from_slice(&triples[pick]);
    }
    alphas.shuffle(&mut rng);
    ThreePartitionInstance::new(m, w, alphas).map_err(|e| Error::Generation(e.to_string()))
}

/// Erdős–Rényi `G(n, p)`: each pair, in lexicographic order, is an edge with
/// probability `p`.
pub fn gen_graph(seed: u64, n: usize, p: f64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Generation(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// A Basket Filling instance with a known solution and total weight at most
/// `max_total`. Baskets take two or three items each.
pub fn gen_bf_solvable(seed: u64, max_total: usize) -> Result<(BasketFillingInstance, BasketAssignment)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=3u64) as usize;
    let counts: Vec<usize> = (0..k).map(|_| rng.gen_range(2..=3u64) as usize).collect();
    let n: usize = counts.iter().sum();
    let max_weight = max_total / n;
    if max_weight == 0 {
        return Err(Error::Generation(format!("total {max_total} too small for {n} items")));
    }
    let mut basket_of: Vec<usize> = counts.iter().enumerate().flat_map(|(l, &c)| std::iter::repeat_n(l, c)).collect();
    basket_of.shuffle(&mut rng);
    let weights: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max_weight as u64) as usize).collect();
    let mut baskets: Vec<Basket> = counts.iter().map(|&count| Basket { count, weight: 0 }).collect();
    for (&b, &w) in basket_of.iter().zip(&weights) {
        baskets[b].weight += w;
    }
    let bf = BasketFillingInstance::new(weights, baskets).map_err(|e| Error::Generation(e.to_string()))?;
    Ok((bf, BasketAssignment { basket_of }))
}
