//! Polynomial-time graphicality tests.

use crate::graph::{DegreeSequence, Graph, Jdm, SodsTarget, XyTarget};

/// Greedy realization: the vertex with the largest residual degree is joined
/// to the vertices with the next largest residual degrees. Ties go to the
/// lowest index. Returns `None` when the sequence is not graphical.
pub fn havel_hakimi(seq: &DegreeSequence) -> Option<Graph> {
    let n = seq.len();
    let mut residual = seq.0.clone();
    let mut adj = vec![Vec::new(); n];
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        order.sort_by(|&a, &b| residual[b].cmp(&residual[a]).then(a.cmp(&b)));
        let Some(&v) = order.first() else { return Some(Graph::empty(0)) };
        let need = residual[v];
        if need == 0 {
            return Some(Graph::from_adjacency_unchecked(adj));
        }
        if need >= n || residual[order[need]] == 0 {
            return None;
        }
        residual[v] = 0;
        for &u in &order[1..=need] {
            residual[u] -= 1;
            adj[u].push(v);
            adj[v].push(u);
        }
    }
}

/// Erdős–Gallai inequalities on the nonincreasing rearrangement.
pub fn erdos_gallai(seq: &DegreeSequence) -> bool {
    let mut d = seq.0.clone();
    d.sort_unstable_by(|a, b| b.cmp(a));
    if d.iter().sum::<usize>() % 2 != 0 {
        return false;
    }
    let n = d.len();
    let mut prefix = 0;
    for k in 1..=n {
        prefix += d[k - 1];
        let tail: usize = d[k..].iter().map(|&x| x.min(k)).sum();
        if prefix > k * (k - 1) + tail {
            return false;
        }
    }
    true
}

/// Which condition a joint degree matrix fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JdmViolation {
    /// `(J_ii + row sum) / i` is not an integer.
    ClassSizeNotInteger { class: usize },
    /// `J_ii > C(n_i, 2)`.
    DiagonalTooLarge { class: usize },
    /// `J_ij > n_i * n_j`.
    OffDiagonalTooLarge { i: usize, j: usize },
}

impl std::fmt::Display for JdmViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JdmViolation::ClassSizeNotInteger { class } => write!(f, "n_{class} not integer"),
            JdmViolation::DiagonalTooLarge { class } => {
                write!(f, "J_{class}{class} exceeds C(n_{class}, 2)")
            }
            JdmViolation::OffDiagonalTooLarge { i, j } => write!(f, "J_{i}{j} exceeds n_{i} * n_{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JdmVerdict {
    /// `n_i` per degree class (index `i - 1`); `None` where not an integer.
    pub class_sizes: Vec<Option<u64>>,
    /// First violated condition, if any.
    pub violation: Option<JdmViolation>,
}

impl JdmVerdict {
    pub fn is_graphical(&self) -> bool {
        self.violation.is_none()
    }
}

/// Exact graphicality test for joint degree matrices. An all-zero row means
/// the degree class is empty.
pub fn jdm_graphical(jdm: &Jdm) -> JdmVerdict {
    let delta = jdm.delta();
    let class_sizes: Vec<Option<u64>> = (1..=delta)
        .map(|i| {
            let stubs = jdm.get(i, i) + (1..=delta).map(|j| jdm.get(i, j)).sum::<u64>();
            stubs.is_multiple_of(i as u64).then_some(stubs / i as u64)
        })
        .collect();
    let violation = (|| {
        for i in 1..=delta {
            if class_sizes[i - 1].is_none() {
                return Some(JdmViolation::ClassSizeNotInteger { class: i });
            }
        }
        let size = |i: usize| class_sizes[i - 1].unwrap_or(0);
        for i in 1..=delta {
            let ni = size(i);
            if jdm.get(i, i) > ni * ni.saturating_sub(1) / 2 {
                return Some(JdmViolation::DiagonalTooLarge { class: i });
            }
        }
        for i in 1..=delta {
            for j in i + 1..=delta {
                if jdm.get(i, j) > size(i) * size(j) {
                    return Some(JdmViolation::OffDiagonalTooLarge { i, j });
                }
            }
        }
        None
    })();
    JdmVerdict { class_sizes, violation }
}

/// Necessary conditions for a second-order target. `false` means no simple
/// graph realizes it; `true` decides nothing.
///
/// Rules:
/// - `d1 + d2 <= n - 1`: the vertex, its neighbors and its second neighbors
///   are distinct.
/// - the `d1` projection passes Erdős–Gallai.
/// - `d2` is at most the sum of `d1(u) - 1` over the `d1` best candidate
///   neighbors `u`, since every second neighbor hangs off some neighbor.
pub fn sods_d1_necessary(target: &SodsTarget) -> bool {
    let n = target.pairs.len();
    if target.pairs.iter().any(|&(d1, d2)| d1 + d2 > n.saturating_sub(1)) {
        return false;
    }
    let first = DegreeSequence(target.pairs.iter().map(|p| p.0).collect());
    if !erdos_gallai(&first) {
        return false;
    }
    let mut fanout: Vec<(usize, usize)> =
        target.pairs.iter().enumerate().map(|(v, p)| (p.0.saturating_sub(1), v)).collect();
    fanout.sort_unstable_by(|a, b| b.cmp(a));
    target.pairs.iter().enumerate().all(|(v, &(d1, d2))| {
        let reach: usize = fanout.iter().filter(|&&(_, u)| u != v).take(d1).map(|&(f, _)| f).sum();
        d2 <= reach
    })
}

/// Necessary conditions for a `(d, D2)` target: the degree projection is
/// graphical, the `D2` total equals the sum of squared degrees, and each
/// `D2(v)` lies between `d(v)` and `d(v) * max degree`.
pub fn xy_necessary(target: &XyTarget) -> bool {
    let degrees = DegreeSequence(target.pairs.iter().map(|p| p.0).collect());
    if !erdos_gallai(&degrees) {
        return false;
    }
    let max_degree = degrees.0.iter().copied().max().unwrap_or(0);
    let total: usize = target.pairs.iter().map(|p| p.1).sum();
    let squares: usize = degrees.0.iter().map(|d| d * d).sum();
    total == squares && target.pairs.iter().all(|&(d, sum)| d <= sum && sum <= d * max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{degree_sequence, fixtures};

    fn seq(v: &[usize]) -> DegreeSequence {
        DegreeSequence(v.to_vec())
    }

    #[test]
    fn havel_hakimi_examples() {
        assert_eq!(havel_hakimi(&seq(&[3, 3, 3, 3])), Some(fixtures::complete(4)));
        assert_eq!(havel_hakimi(&seq(&[3, 1])), None);
        assert_eq!(havel_hakimi(&seq(&[2, 2, 2])), Some(fixtures::complete(3)));
        assert_eq!(havel_hakimi(&seq(&[])), Some(Graph::empty(0)));
        let g = havel_hakimi(&seq(&[1, 2, 3, 2, 1, 1])).unwrap();
        assert_eq!(degree_sequence(&g).0, vec![1, 2, 3, 2, 1, 1]);
    }

    /// Every labeled graph on four vertices, for an independent check.
    fn four_vertex_degree_sequences() -> Vec<Vec<usize>> {
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        (0u32..1 << pairs.len())
            .map(|mask| {
                let mut d = vec![0; 4];
                for (bit, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        d[u] += 1;
                        d[v] += 1;
                    }
                }
                d
            })
            .collect()
    }

    #[test]
    fn erdos_gallai_examples() {
        assert!(erdos_gallai(&seq(&[2, 2, 2])));
        assert!(!erdos_gallai(&seq(&[1, 1, 1])));
        assert!(!four_vertex_degree_sequences().contains(&vec![3, 3, 1, 1]));
        assert!(!erdos_gallai(&seq(&[3, 3, 1, 1])));
    }

    #[test]
    fn jdm_examples() {
        let mut k3 = Jdm::zero(2);
        k3.set(2, 2, 3);
        let verdict = jdm_graphical(&k3);
        assert!(verdict.is_graphical());
        assert_eq!(verdict.class_sizes, vec![Some(0), Some(3)]);

        let mut half = Jdm::zero(2);
        half.set(1, 2, 1);
        let verdict = jdm_graphical(&half);
        assert_eq!(verdict.violation, Some(JdmViolation::ClassSizeNotInteger { class: 2 }));
        assert_eq!(verdict.violation.unwrap().to_string(), "n_2 not integer");

        let mut k2 = Jdm::zero(1);
        k2.set(1, 1, 1);
        let verdict = jdm_graphical(&k2);
        assert!(verdict.is_graphical());
        assert_eq!(verdict.class_sizes, vec![Some(2)]);
    }

    #[test]
    fn jdm_bound_violations() {
        // n_2 = (2 + 2) / 2 = 2 and C(2, 2) = 1.
        let mut dense = Jdm::zero(2);
        dense.set(2, 2, 2);
        assert_eq!(jdm_graphical(&dense).violation, Some(JdmViolation::DiagonalTooLarge { class: 2 }));
        // n_2 = 4 / 2 = 2 and n_4 = 4 / 4 = 1.
        let mut cross = Jdm::zero(4);
        cross.set(2, 4, 4);
        assert_eq!(jdm_graphical(&cross).violation, Some(JdmViolation::OffDiagonalTooLarge { i: 2, j: 4 }));
        // K_{2,3}: n_2 = 3, n_3 = 2.
        let mut k23 = Jdm::zero(3);
        k23.set(2, 3, 6);
        let verdict = jdm_graphical(&k23);
        assert!(verdict.is_graphical());
        assert_eq!(verdict.class_sizes, vec![Some(0), Some(3), Some(2)]);
    }

    #[test]
    fn sods_prefilter_examples() {
        assert!(!sods_d1_necessary(&SodsTarget { pairs: vec![(1, 0), (1, 1)] }));
        assert!(sods_d1_necessary(&SodsTarget { pairs: vec![(2, 0); 3] }));
        assert!(!sods_d1_necessary(&SodsTarget { pairs: vec![(1, 5), (1, 5)] }));
        assert!(!sods_d1_necessary(&SodsTarget { pairs: vec![(1, 1), (1, 1)] }));
    }

    #[test]
    fn xy_prefilter() {
        assert!(xy_necessary(&XyTarget { pairs: vec![(2, 4); 3] }));
        assert!(!xy_necessary(&XyTarget { pairs: vec![(2, 4), (2, 4), (2, 3)] }));
        assert!(!xy_necessary(&XyTarget { pairs: vec![(1, 2), (1, 0)] }));
    }
}
